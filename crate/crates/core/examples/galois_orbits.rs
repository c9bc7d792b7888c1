//! The group Γ of K = k((t)) over K₀ = k₀((t₀)), t₀ = t^e, acting on
//! points of the z-line, and the free orbits used as patching points.

use ppv::descent::{find_free_orbits, orbit_of, GaloisDatum};
use ppv::expr::parse_scalar;

fn main() -> ppv::Result<()> {
    for (e, k, k0) in [(2, 1, 1), (3, 3, 1), (1, 4, 1), (4, 4, 1)] {
        let gd = GaloisDatum::new(e, k, k0)?;
        let table: Vec<String> = gd.elements.iter().map(|s| format!("({}, {})", s.a, s.n)).collect();
        println!("e = {}, k = Q(ζ_{}), k₀ = Q(ζ_{}): |Γ| = {}, elements {}", e, k, k0, gd.order(), table.join(" "));
        for o in find_free_orbits(&gd, 2)? {
            let pts: Vec<String> = o.orbit.iter().map(|p| p.to_string()).collect();
            println!("  free orbit of {}: {{{}}}", o.representative, pts.join(", "));
        }
    }
    // z = 0 is fixed by σ(t) = ζt, so it is never a patching point
    let gd = GaloisDatum::new(2, 1, 1)?;
    let o = orbit_of(&gd, &parse_scalar("0")?)?;
    println!("orbit of 0 under e = 2 is free: {}", o.free);
    Ok(())
}
