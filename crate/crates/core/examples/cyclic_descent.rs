//! Z/2 over Q((t₀)) with t₀ = t²: one Kummer block at a free orbit,
//! transported along Γ, checked for σ-equivariance.

use ppv::blocks::block_cyclic;
use ppv::descent::{run_criterion, transport, verify_equivariance, CriterionOptions, GaloisDatum};
use ppv::groups::GroupSpec;

fn main() -> ppv::Result<()> {
    let gd = GaloisDatum::new(2, 1, 1)?;
    let rep = block_cyclic(&ppv::fields::Scalar::int(1), 2, 2, (10, 10))?;
    let blocks = transport(&gd, &rep)?;
    for (s, b) in &blocks {
        println!("σ = ({}, {}): block at z = {}, checks pass: {}", s.a, s.n, b.q, b.passed());
    }
    let bs: Vec<_> = blocks.into_iter().map(|(_, b)| b).collect();
    let c = verify_equivariance(&gd, &bs)?;
    println!("{}: {}", c.name, c.passed);

    let cert = run_criterion(&GroupSpec::FiniteCyclic(2), &gd, &CriterionOptions::default())?;
    println!("certificate for Z/2 passes: {}", cert.passed);

    // a wrong root of unity breaks commutation of σ with ∂_{t₀}
    let wrong = gd.clone().with_twist(ppv::fields::Scalar::int(1));
    let c = ppv::descent::verify_sigma_commutes(&wrong, gd.elements[1], &ppv::fields::Scalar::int(1), 10, (8, 8), 7)?;
    println!("with ζ replaced by 1: {}", if c.passed { "still commutes" } else { "fails as expected" });
    Ok(())
}
