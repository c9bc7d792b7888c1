//! Operators whose kernel inside a Laurent window is too small: the
//! realization is refused instead of guessed.

use ppv::expr::parse_ore;
use ppv::ore::{monomial_window, solve_in_window, OrePoly};
use ppv::realization::{realize_ga_search, realize_gm_search};

fn main() -> ppv::Result<()> {
    let window = monomial_window(-12, 12);

    let l = parse_ore("t*Dt + 1")?;
    let k = solve_in_window(&l.compose(&OrePoly::dt()), &window)?;
    println!("dim ker(({})∘∂_t) in t^-12..t^12 = {}", l, k.len());
    match realize_gm_search(&l, 12) {
        Ok(r) => println!("unexpected realization {}", r.group),
        Err(e) => println!("Gm^{{L∘Δ}} refused: {}", e),
    }

    let l = parse_ore("Dt^2 + (1/t)*Dt")?;
    let k = solve_in_window(&l, &window)?;
    println!("dim ker({}) in t^-12..t^12 = {}", l, k.len());
    match realize_ga_search(&l, 12) {
        Ok(r) => println!("unexpected realization {}", r.group),
        Err(e) => println!("Ga^L refused: {}", e),
    }
    Ok(())
}
