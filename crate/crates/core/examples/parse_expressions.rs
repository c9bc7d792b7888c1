//! The expression grammar: cyclotomic scalars, rational functions in t
//! and x, operators in Dt, and logarithms log(x - b).

use ppv::expr::{parse, parse_fx, parse_logext, parse_ore, parse_scalar};
use ppv::json::{ore_to_json, scalar_to_json};

fn main() -> ppv::Result<()> {
    let z = parse_scalar("zeta(3)^2 + zeta(3) + 1")?;
    println!("1 + ζ₃ + ζ₃² = {}", z);
    let i = parse_scalar("3/2*zeta(4) - 1")?;
    println!("{} as JSON: {}", i, serde_json::to_string(&scalar_to_json(&i))?);

    let f = parse_fx("(x^2 - t^2)/(x - t)")?;
    println!("(x² − t²)/(x − t) = {}", f);

    let l = parse_ore("(t^2 + 1)*Dt^2 - 2*t*Dt")?;
    println!("L = {}, order {:?}, JSON {}", l, l.order(), ore_to_json(&l));
    assert_eq!(parse_ore(&l.to_string())?, l);

    let m = parse_logext("t*log(x - 1) + 2/x")?;
    println!("model {}, ∂ = {}", m, m.del());

    for bad in ["Dt^-1", "log(x^2)", "1/(x - x)"] {
        match parse(bad) {
            Ok(v) => println!("{:?} parsed as {}", bad, v.kind()),
            Err(e) => println!("{:?}: {}", bad, e),
        }
    }
    Ok(())
}
