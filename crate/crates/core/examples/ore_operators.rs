//! Skew-polynomial arithmetic in Q(t)[∂_t]: right division, GCRD,
//! Wronskian operators and kernels inside a monomial window.

use ppv::expr::{parse_list, parse_ore, parse_param};
use ppv::ore::{monomial_window, solve_in_window, OrePoly};

fn main() -> ppv::Result<()> {
    let a = parse_ore("t*Dt^3 + Dt")?;
    let b = parse_ore("t*Dt - 1")?;
    let (q, r) = a.right_divmod(&b)?;
    println!("A = {}\nB = {}\nQ = {}\nR = {}", a, b, q, r);
    assert_eq!(q.compose(&b) + r, a);

    // both annihilate t, so the GCRD is t·∂_t − 1 up to a unit
    let l1 = parse_ore("Dt^2")?.compose(&b);
    let l2 = parse_ore("Dt + 1")?.compose(&b);
    println!("gcrd({}, {}) = {}", l1, l2, l1.gcrd(&l2)?);

    let gens = parse_list("1, t^2, 1/t", parse_param)?;
    let w = OrePoly::wronskian_operator(&gens)?;
    println!("Wronskian operator of {{1, t^2, 1/t}}: {}", w);
    for g in &gens {
        println!("  W({}) = {}", g, w.apply(g)?);
    }
    let kernel = solve_in_window(&w, &monomial_window(-6, 6))?;
    let shown: Vec<String> = kernel.iter().map(|k| k.to_string()).collect();
    println!("kernel in t^-6..t^6: [{}]", shown.join(", "));
    Ok(())
}
