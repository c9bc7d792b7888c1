//! SL₂ from four one-parameter unipotent subgroups with h = 1, 1, t, 1/t,
//! patched at z = 1..4, written out as a JSON certificate.

use ppv::descent::{certificate_to_json, run_criterion, sl2_decomposition, CriterionOptions, GaloisDatum};
use ppv::report::render;

fn main() -> ppv::Result<()> {
    let g = sl2_decomposition();
    let cert = run_criterion(&g, &GaloisDatum::trivial(), &CriterionOptions::default())?;
    for b in &cert.blocks {
        println!("{} block at z = {}: {}", b.kind, b.point, b.group);
    }
    let checks: Vec<_> = cert.all_checks().cloned().collect();
    println!("{} exact checks, all pass: {}", checks.len(), cert.passed);
    print!("{}", render(&checks.iter().filter(|c| !c.passed).cloned().collect::<Vec<_>>()));
    for a in &cert.assumptions {
        println!("assumed: {}", a.name);
    }
    if let Some(path) = std::env::args().nth(1) {
        std::fs::write(&path, serde_json::to_string_pretty(&certificate_to_json(&cert))?)?;
        println!("certificate written to {}", path);
    }
    Ok(())
}
