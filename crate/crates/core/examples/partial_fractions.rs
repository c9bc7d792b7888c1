//! Partial fractions over K = Q(t) in x, and the logarithmic part that
//! decides whether a ∂-antiderivative exists in K(x).

use ppv::expr::parse_fx;
use ppv::partial_fractions::{decompose, has_antiderivative, logarithmic_part, reassemble};

fn main() -> ppv::Result<()> {
    for src in ["(t*x + 1)/((x - 1)^2*(x + 2))", "t/(x - t)^2", "(x^3 + t)/(x^2 - 1)"] {
        let g = parse_fx(src)?;
        let d = decompose(&g)?;
        println!("g = {}", g);
        println!("  polynomial part {}", d.poly_part);
        for tm in &d.terms {
            println!("  ({}) / (x - ({}))^{}", tm.coeff, tm.pole, tm.multiplicity);
        }
        for (beta, gamma) in logarithmic_part(&d) {
            println!("  residue {} at x = {}", gamma, beta);
        }
        println!("  antiderivative in K(x): {}", has_antiderivative(&g)?);
        assert_eq!(reassemble(&d), g);
    }
    Ok(())
}
