//! Realizing the subgroups Gm^{L∘Δ} and Ga^L of Gm and Ga as
//! parameterized Picard-Vessiot groups over Q(t)(x), then re-deriving L
//! from the equation alone.

use ppv::expr::parse_ore;
use ppv::realization::{necessary_condition_report, realize_ga_search, realize_gm_search};
use ppv::report::render;

fn main() -> ppv::Result<()> {
    for src in ["Dt", "Dt^2", "t*Dt - 1"] {
        let l = parse_ore(src)?;
        for r in [realize_gm_search(&l, 12)?, realize_ga_search(&l, 12)?] {
            println!("{}", r.group);
            println!("  equation coefficient a = {}", r.a);
            println!("  model {}", r.model);
            print!("{}", render(&r.checks));
            let rep = necessary_condition_report(&r.a, r.kind, &l)?;
            print!("{}", render(&rep.checks()));
            assert!(r.passed() && rep.passed());
        }
        println!();
    }
    Ok(())
}
