//! The `ppv` command line. Every verb prints a human-readable report, or
//! JSON with `--json`; the exit code is 0 iff every check passed, 1 if a
//! check failed and 2 on errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::blocks::{block_cyclic_in, block_ga_closure, block_gm_const, block_to_json, DEFAULT_TRUNC};
use crate::descent::{certificate_to_json, find_free_orbits, galois_from_json, run_criterion, CriterionOptions};
use crate::error::{Error, Result};
use crate::expr::{parse_fx, parse_list, parse_logext, parse_ore, parse_param, parse_scalar};
use crate::groups::group_from_json;
use crate::json::ore_to_json;
use crate::ore::{monomial_window, solve_in_window, OrePoly};
use crate::partial_fractions::{decompose, logarithmic_part};
use crate::realization::{
    check_membership_ga, check_membership_gm, necessary_condition_report, realize_ga, realize_ga_generated,
    realize_ga_search, realize_gm, realize_gm_search, Kind, Realization,
};
use crate::report::render;
use crate::selftest::{self, Mutation, SelftestOptions};

#[derive(Parser, Debug)]
#[command(name = "ppv", version, about = "Exact differential algebra for parameterized Picard-Vessiot realizations")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Operator arithmetic in K[∂_t].
    Ore {
        #[command(subcommand)]
        op: OreCmd,
    },
    /// Partial fractions of an element of K(x).
    Decompose { g: String },
    /// Build an order-one equation realizing Gm^{L∘Δ} or Ga^L.
    Realize(RealizeArgs),
    /// Membership and necessary-condition tests.
    Check(CheckArgs),
    /// Build and verify a local building block.
    Block(BlockArgs),
    /// Free orbits of Γ on the z-line.
    Orbits {
        #[arg(long)]
        gd: PathBuf,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
    /// Run the descent pipeline and emit a certificate.
    Certify(CertifyArgs),
    /// Run the acceptance criteria.
    Selftest {
        /// Series truncation used by every criterion.
        #[arg(long)]
        trunc: Option<i64>,
        #[arg(long, value_enum)]
        mutate: Option<MutateArg>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OreCmd {
    /// Right division A = Q∘B + R.
    Divmod { a: String, b: String },
    /// Composition A∘B.
    Mul { a: String, b: String },
    /// Greatest common right divisor.
    Gcrd { a: String, b: String },
    /// L applied to an element of K, K(x) or K(x)(log).
    Apply { l: String, f: String },
    /// Monic operator with the given solutions, comma-separated.
    Wronskian { basis: String },
    /// Solutions of L spanned by t^j, |j| ≤ window.
    Solve {
        l: String,
        #[arg(long, default_value_t = 12)]
        window: i64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Gm,
    Ga,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Gm => Kind::Gm,
            KindArg::Ga => Kind::Ga,
        }
    }
}

#[derive(Args, Debug)]
pub struct RealizeArgs {
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    #[arg(long)]
    pub op: Option<String>,
    /// Solutions of L∘∂_t (Gm) or L (Ga), comma-separated; searched if absent.
    #[arg(long)]
    pub basis: Option<String>,
    /// Realize the group generated by these elements of K (Ga).
    #[arg(long, conflicts_with_all = ["op", "basis"])]
    pub elements: Option<String>,
    #[arg(long, default_value_t = 12)]
    pub window: i64,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// Test L(model) ∈ K(x).
    #[arg(long, conflicts_with = "necessary")]
    pub membership: bool,
    /// Residue annihilation and Wronskian-order minimality for `a`.
    #[arg(long)]
    pub necessary: bool,
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub op: String,
    /// f = ∂_t(y)/y (Gm) or y (Ga), in K(x)(log).
    #[arg(long)]
    pub model: Option<String>,
    /// The coefficient a of the equation.
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum BlockKindArg {
    Cyclic,
    Ga,
    Gmconst,
}

#[derive(Args, Debug)]
pub struct BlockArgs {
    #[arg(long, value_enum)]
    pub kind: BlockKindArg,
    #[arg(long, default_value = "0")]
    pub q: String,
    #[arg(long)]
    pub r: Option<u32>,
    #[arg(long)]
    pub h: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    /// Cyclotomic order of k; defaults to that of q.
    #[arg(long)]
    pub k_order: Option<u32>,
    /// `T` or `T,W`; overrides PPV_TRUNC.
    #[arg(long)]
    pub trunc: Option<String>,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub group: PathBuf,
    /// Galois datum; trivial if absent.
    #[arg(long)]
    pub galois: Option<PathBuf>,
    #[arg(long)]
    pub trunc: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub samples: usize,
    /// Write the certificate JSON here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MutateArg {
    Zeta,
    Dt0,
}

fn parse_trunc(s: &str) -> Result<(i64, i64)> {
    let bad = || Error::Format(format!("truncation must be T or T,W with positive integers, got {:?}", s));
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [t] if *t > 0 => Ok((*t, *t)),
        [t, w] if *t > 0 && *w > 0 => Ok((*t, *w)),
        _ => Err(bad()),
    }
}

/// `--trunc`, else `PPV_TRUNC`, else the default.
pub fn resolve_trunc(arg: Option<&str>) -> Result<(i64, i64)> {
    match arg {
        Some(s) => parse_trunc(s),
        None => match std::env::var("PPV_TRUNC") {
            Ok(s) if !s.trim().is_empty() => parse_trunc(&s),
            _ => Ok(DEFAULT_TRUNC),
        },
    }
}

fn read_json(path: &PathBuf) -> Result<Value> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

struct Output<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit(&mut self, text: impl AsRef<str>, value: Value) -> Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value)?)?;
        } else {
            write!(self.out, "{}", text.as_ref())?;
            if !text.as_ref().ends_with('\n') {
                writeln!(self.out)?;
            }
        }
        Ok(())
    }
}

fn realization_report(r: &Realization) -> (String, Value) {
    let text = format!(
        "group: {}\nequation: ∂(y) = {}\nmodel: {}\n{}",
        r.group,
        match r.kind {
            Kind::Gm => format!("({})·y", r.a),
            Kind::Ga => r.a.to_string(),
        },
        r.model,
        render(&r.checks)
    );
    (text, serde_json::to_value(r).expect("plain data"))
}

fn ore_cmd(cmd: OreCmd, o: &mut Output) -> Result<bool> {
    match cmd {
        OreCmd::Divmod { a, b } => {
            let (a, b) = (parse_ore(&a)?, parse_ore(&b)?);
            let (q, r) = a.right_divmod(&b)?;
            let ok = q.compose(&b) + r.clone() == a;
            o.emit(
                format!("Q = {}\nR = {}\n", q, r),
                json!({"quotient": ore_to_json(&q), "remainder": ore_to_json(&r), "identity_holds": ok}),
            )?;
            Ok(ok)
        }
        OreCmd::Mul { a, b } => {
            let p = parse_ore(&a)?.compose(&parse_ore(&b)?);
            o.emit(p.to_string(), json!({"product": ore_to_json(&p)}))?;
            Ok(true)
        }
        OreCmd::Gcrd { a, b } => {
            let g = parse_ore(&a)?.gcrd(&parse_ore(&b)?)?;
            o.emit(g.to_string(), json!({"gcrd": ore_to_json(&g)}))?;
            Ok(true)
        }
        OreCmd::Apply { l, f } => {
            let l = parse_ore(&l)?;
            let v = l.apply(&parse_logext(&f)?)?;
            o.emit(v.to_string(), json!({"value": v.to_string(), "in_base": v.in_base()}))?;
            Ok(true)
        }
        OreCmd::Wronskian { basis } => {
            let b = parse_list(&basis, parse_param)?;
            let w = OrePoly::wronskian_operator(&b)?;
            o.emit(w.to_string(), json!({"operator": ore_to_json(&w)}))?;
            Ok(true)
        }
        OreCmd::Solve { l, window } => {
            let l = parse_ore(&l)?;
            let sols = solve_in_window(&l, &monomial_window(-window, window))?;
            let strs: Vec<String> = sols.iter().map(|s| s.to_string()).collect();
            o.emit(
                format!("dimension {} in window |j| ≤ {}\n{}", sols.len(), window, strs.join("\n")),
                json!({"window": window, "dimension": sols.len(), "basis": strs}),
            )?;
            Ok(true)
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    let mut o = Output { json: cli.json, out };
    match cli.command {
        Command::Ore { op } => ore_cmd(op, &mut o),
        Command::Decompose { g } => {
            let d = decompose(&parse_fx(&g)?)?;
            let mut text = format!("polynomial part: {}\n", d.poly_part);
            for t in &d.terms {
                text.push_str(&format!("({}) / (x - ({}))^{}\n", t.coeff, t.pole, t.multiplicity));
            }
            let log: Vec<Value> = logarithmic_part(&d)
                .iter()
                .map(|(b, g)| json!({"pole": b.to_string(), "residue": g.to_string()}))
                .collect();
            let mut v = serde_json::to_value(&d)?;
            v["logarithmic_part"] = Value::Array(log);
            o.emit(text, v)?;
            Ok(true)
        }
        Command::Realize(a) => {
            let r = if let Some(els) = &a.elements {
                realize_ga_generated(&parse_list(els, parse_param)?)?
            } else {
                let kind = a
                    .kind
                    .ok_or_else(|| Error::Precondition("--kind is required with --op".into()))?;
                let op = a
                    .op
                    .as_deref()
                    .ok_or_else(|| Error::Precondition("--op or --elements is required".into()))?;
                let l = parse_ore(op)?;
                match (kind, &a.basis) {
                    (KindArg::Gm, Some(b)) => realize_gm(&l, &parse_list(b, parse_param)?)?,
                    (KindArg::Ga, Some(b)) => realize_ga(&l, &parse_list(b, parse_param)?)?,
                    (KindArg::Gm, None) => realize_gm_search(&l, a.window)?,
                    (KindArg::Ga, None) => realize_ga_search(&l, a.window)?,
                }
            };
            let (text, v) = realization_report(&r);
            o.emit(text, v)?;
            Ok(r.passed())
        }
        Command::Check(c) => {
            let l = parse_ore(&c.op)?;
            if c.necessary {
                let a = c
                    .a
                    .as_deref()
                    .ok_or_else(|| Error::Precondition("--necessary needs --a".into()))?;
                let rep = necessary_condition_report(&parse_fx(a)?, c.kind.into(), &l)?;
                let text = format!(
                    "residues: {}\ntargets: {}\nspan dimension {} vs order {}\n{}",
                    rep.residues
                        .iter()
                        .map(|(b, g)| format!("{} at x = {}", g, b))
                        .collect::<Vec<_>>()
                        .join(", "),
                    rep.targets.join(", "),
                    rep.span_dim,
                    rep.order,
                    render(&rep.checks())
                );
                o.emit(text, serde_json::to_value(&rep)?)?;
                Ok(rep.passed())
            } else if c.membership {
                let m = c
                    .model
                    .as_deref()
                    .ok_or_else(|| Error::Precondition("--membership needs --model".into()))?;
                let f = parse_logext(m)?;
                let ok = match c.kind {
                    KindArg::Gm => check_membership_gm(&f, &l)?,
                    KindArg::Ga => check_membership_ga(&f, &l)?,
                };
                o.emit(
                    format!("L(model) ∈ K(x): {}", ok),
                    json!({"op": l.to_string(), "model": f.to_string(), "member": ok}),
                )?;
                Ok(ok)
            } else {
                Err(Error::Precondition("choose --membership or --necessary".into()))
            }
        }
        Command::Block(b) => {
            let trunc = resolve_trunc(b.trunc.as_deref())?;
            let q = parse_scalar(&b.q)?;
            let blk = match b.kind {
                BlockKindArg::Cyclic => {
                    let r = b.r.ok_or_else(|| Error::Precondition("cyclic blocks need --r".into()))?;
                    block_cyclic_in(b.k_order.unwrap_or(q.order()), &q, r, b.e, trunc)?
                }
                BlockKindArg::Ga => {
                    let h = parse_param(b.h.as_deref().unwrap_or("1"))?;
                    block_ga_closure(&q, &h, b.e, trunc)?
                }
                BlockKindArg::Gmconst => block_gm_const(&q, b.e, trunc)?,
            };
            let text = format!(
                "block {} at z = {} (e = {}), group {}\ny = {}\n{}",
                blk.kind.name(),
                blk.q,
                blk.e,
                blk.group,
                blk.y,
                render(&blk.checks)
            );
            o.emit(text, block_to_json(&blk))?;
            Ok(blk.passed())
        }
        Command::Orbits { gd, count } => {
            let gd = galois_from_json(&read_json(&gd)?)?;
            let orbits = find_free_orbits(&gd, count)?;
            let text: String = orbits
                .iter()
                .map(|o| {
                    format!(
                        "{{{}}}\n",
                        o.orbit.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                    )
                })
                .collect();
            o.emit(format!("|Γ| = {}\n{}", gd.order(), text), serde_json::to_value(&orbits)?)?;
            Ok(orbits.len() == count && orbits.iter().all(|x| x.free))
        }
        Command::Certify(c) => {
            let g = group_from_json(&read_json(&c.group)?)?;
            let gd = match &c.galois {
                Some(p) => galois_from_json(&read_json(p)?)?,
                None => crate::descent::GaloisDatum::trivial(),
            };
            let opts = CriterionOptions {
                trunc: resolve_trunc(c.trunc.as_deref())?,
                samples: c.samples,
                ..CriterionOptions::default()
            };
            let cert = run_criterion(&g, &gd, &opts)?;
            let v = certificate_to_json(&cert);
            if let Some(p) = &c.out {
                std::fs::write(p, serde_json::to_string_pretty(&v)?)?;
            }
            let checks: Vec<_> = cert.all_checks().cloned().collect();
            let failed: Vec<_> = checks.iter().filter(|c| !c.passed).cloned().collect();
            let mut text = format!(
                "certificate for {} over |Γ| = {} ({} blocks, {} checks, {} failed)\n",
                g,
                gd.order(),
                cert.blocks.len(),
                checks.len(),
                failed.len()
            );
            text.push_str(&render(&failed));
            for a in &cert.assumptions {
                text.push_str(&format!("ASSUME  {}: {} [{}]\n", a.name, a.statement, a.citation));
            }
            text.push_str(if cert.passed { "certificate: PASS\n" } else { "certificate: FAIL\n" });
            o.emit(text, v)?;
            Ok(cert.passed)
        }
        Command::Selftest { trunc, mutate } => {
            let opts = SelftestOptions {
                trunc,
                mutate: mutate.map(|m| match m {
                    MutateArg::Zeta => Mutation::Zeta,
                    MutateArg::Dt0 => Mutation::Dt0,
                }),
                ..SelftestOptions::default()
            };
            let results = selftest::run(&opts);
            let text: String = results.iter().map(|r| r.line() + "\n").collect();
            o.emit(text, serde_json::to_value(&results)?)?;
            Ok(results.iter().all(|r| r.passed))
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {}", e);
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut buf = Vec::new();
        let code = run(std::iter::once("ppv").chain(args.iter().copied()), &mut buf);
        (code, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn ore_verbs() {
        let (c, out) = run_str(&["ore", "divmod", "Dt^2 + t", "Dt"]);
        assert_eq!(c, 0);
        assert_eq!(out, "Q = Dt\nR = t\n");
        assert_eq!(run_str(&["ore", "divmod", "t*Dt + ", "Dt"]).0, 2);
        let (c, out) = run_str(&["ore", "solve", "t*Dt - 1", "--window", "3"]);
        assert_eq!(c, 0);
        assert!(out.starts_with("dimension 1"));
    }

    #[test]
    fn realize_and_check() {
        assert_eq!(run_str(&["realize", "--kind", "gm", "--op", "Dt", "--basis", "1, t"]).0, 0);
        assert_eq!(run_str(&["realize", "--kind", "ga", "--op", "Dt^2 + (1/t)*Dt"]).0, 2);
        assert_eq!(run_str(&["check", "--membership", "--kind", "gm", "--op", "Dt", "--model", "log(x-2)"]).0, 0);
        assert_eq!(run_str(&["check", "--membership", "--kind", "gm", "--op", "1", "--model", "log(x-2)"]).0, 1);
        assert_eq!(
            run_str(&["check", "--necessary", "--kind", "ga", "--op", "Dt", "--a", "1/(x-1)"]).0,
            0
        );
    }

    #[test]
    fn block_verb() {
        let (c, out) = run_str(&["--json", "block", "--kind", "cyclic", "--q", "0", "--r", "2", "--trunc", "6"]);
        assert_eq!(c, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["passed"], json!(true));
        assert_eq!(run_str(&["block", "--kind", "cyclic", "--q", "0", "--r", "3"]).0, 2);
    }

    #[test]
    fn trunc_parsing() {
        assert_eq!(parse_trunc("8").unwrap(), (8, 8));
        assert_eq!(parse_trunc("8,6").unwrap(), (8, 6));
        assert!(parse_trunc("0").is_err());
        assert!(parse_trunc("a").is_err());
    }
}
