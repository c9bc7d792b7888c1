//! Local building blocks at a point z = q over k((t))((z − q)): a cyclic
//! Kummer block, the Ga block y = h·log(1 + t/(z − q)), and exp(t/(z − q)).

use ppv::blocks::{block_cyclic_in, block_ga_closure, block_gm_const, block_to_json};
use ppv::expr::{parse_param, parse_scalar};
use ppv::report::render;

fn main() -> ppv::Result<()> {
    let q = parse_scalar("1")?;
    let trunc = (8, 8);
    let blocks = [
        // a cube root of 1 − t/(z − q) needs ζ₃ in k
        block_cyclic_in(3, &q, 3, 1, trunc)?,
        block_ga_closure(&q, &parse_param("t")?, 2, trunc)?,
        block_gm_const(&q, 1, trunc)?,
    ];
    for b in &blocks {
        println!("{} block at z = {} (e = {}), group {}", b.kind.name(), b.q, b.e, b.group);
        println!("  y = {}", b.y);
        print!("{}", render(&b.checks));
        assert!(b.passed());
    }
    let v = block_to_json(&blocks[0]);
    println!("JSON keys of a block: {:?}", v.as_object().map(|m| m.keys().collect::<Vec<_>>()));
    Ok(())
}
