//! Finite descriptions of the linear differential algebraic groups in play:
//! `Ga^L`, `Gm^{L∘Δ}`, the constants `Gm^Δ`, finite cyclic groups, and lists
//! of such groups embedded in a common `GL_n`.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::expr;
use crate::fields::{DiffField, Field, Param};
use crate::json::{ore_from_json, ore_to_json};
use crate::ore::{monomial_window, solve_in_window, OrePoly};

pub type Op = OrePoly<Param>;

/// Square matrix over `K`, row-major.
pub type Mat = Vec<Vec<Param>>;

#[derive(Clone, Debug)]
pub enum GroupSpec {
    /// `Ga^L = {a : L(a) = 0}`.
    GaSub(Op),
    /// `Gm^{L∘Δ} = {λ : L(∂_t(λ)/λ) = 0}`.
    GmSub(Op),
    /// `Gm^Δ`, the constants; equal to `Gm^{∂_t⁰∘Δ}`.
    GmConst,
    /// `Z/rZ` as the `r`-th roots of unity.
    FiniteCyclic(u32),
    /// Subgroups embedded in a common `GL_n`, assumed to generate a
    /// Kolchin-dense subgroup of the target group.
    Generated { parts: Vec<Part>, density: String },
}

/// How a part sits inside `GL_n`.
#[derive(Clone, Debug, PartialEq)]
pub enum Rep {
    /// `a ↦ I + a·E₁₂` in `GL_2`.
    Upper,
    /// `a ↦ I + a·E₂₁` in `GL_2`.
    Lower,
    /// `a ↦ exp(a·N)` for a caller-supplied nilpotent `N`.
    Nilpotent(Mat),
    /// `GL_1`.
    Scalar,
}

impl Rep {
    pub fn dim(&self) -> usize {
        match self {
            Rep::Upper | Rep::Lower => 2,
            Rep::Nilpotent(n) => n.len(),
            Rep::Scalar => 1,
        }
    }

    /// The nilpotent direction for unipotent embeddings.
    pub fn direction(&self) -> Option<Mat> {
        let e = |i: usize, j: usize| {
            let mut m = vec![vec![Param::zero(); 2]; 2];
            m[i][j] = Param::one();
            m
        };
        match self {
            Rep::Upper => Some(e(0, 1)),
            Rep::Lower => Some(e(1, 0)),
            Rep::Nilpotent(n) => Some(n.clone()),
            Rep::Scalar => None,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Rep::Upper => "upper",
            Rep::Lower => "lower",
            Rep::Nilpotent(_) => "nilpotent",
            Rep::Scalar => "scalar",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub group: GroupSpec,
    pub rep: Rep,
    /// For `Ga` parts: the element whose closure the part is, if known.
    pub h: Option<Param>,
}

/// The Kolchin closure of the additive subgroup generated by `g`:
/// `Ga^L` with `L = g∂_t − ∂_t(g)`.
pub fn closure_of_additive(g: &Param) -> Result<GroupSpec> {
    if g.is_zero() {
        return Err(Error::Precondition(
            "the closure of 0 is the trivial group Ga^{1}".into(),
        ));
    }
    Ok(GroupSpec::GaSub(OrePoly::new(vec![-g.dt(), g.clone()])))
}

impl GroupSpec {
    fn validate(self) -> Result<Self> {
        match &self {
            GroupSpec::GaSub(l) | GroupSpec::GmSub(l) if l.is_zero() => {
                Err(Error::Precondition("the defining operator must be nonzero".into()))
            }
            GroupSpec::FiniteCyclic(0) => Err(Error::Precondition("cyclic order must be positive".into())),
            GroupSpec::Generated { parts, .. } => {
                if let Some(first) = parts.first() {
                    let n = first.rep.dim();
                    if parts.iter().any(|p| p.rep.dim() != n) {
                        return Err(Error::Precondition("parts embed into different GL_n".into()));
                    }
                }
                Ok(self)
            }
            _ => Ok(self),
        }
    }

    pub fn ga(l: Op) -> Result<Self> {
        GroupSpec::GaSub(l).validate()
    }

    pub fn gm(l: Op) -> Result<Self> {
        GroupSpec::GmSub(l).validate()
    }

    pub fn generated(parts: Vec<Part>, density: impl Into<String>) -> Result<Self> {
        GroupSpec::Generated {
            parts,
            density: density.into(),
        }
        .validate()
    }

    /// The operator `L` of a multiplicative group `Gm^{L∘Δ}`.
    fn gm_operator(&self) -> Option<Op> {
        match self {
            GroupSpec::GmSub(l) => Some(l.clone()),
            GroupSpec::GmConst => Some(OrePoly::one()),
            _ => None,
        }
    }

    /// Whether `b ⊆ self`. For `Ga^{L_A} ⊇ Ga^{L_B}` and the multiplicative
    /// analogue this is right divisibility of `L_A` by `L_B`.
    pub fn contains(&self, b: &GroupSpec) -> Result<bool> {
        match (self, b) {
            (GroupSpec::GaSub(la), GroupSpec::GaSub(lb)) => la.right_divisible_by(lb),
            (GroupSpec::FiniteCyclic(r), GroupSpec::FiniteCyclic(s)) => Ok(r % s == 0),
            (a, GroupSpec::FiniteCyclic(_)) if a.gm_operator().is_some() => Ok(true),
            (a, b) => match (a.gm_operator(), b.gm_operator()) {
                (Some(la), Some(lb)) => la.right_divisible_by(&lb),
                _ => Err(Error::Incomparable(format!("{} and {}", a, b))),
            },
        }
    }

    /// Whether the group has no non-trivial proper differential algebraic
    /// subgroups; decided for `Ga^L` with `L` of order at most one.
    pub fn no_proper_subgroups(&self) -> Result<bool> {
        match self {
            GroupSpec::GaSub(l) => Ok(l.order().unwrap_or(0) <= 1),
            other => Err(Error::Unsupported(format!(
                "subgroup lattice of {} is not decided",
                other
            ))),
        }
    }

    /// `Ga^L` with `L` of order one: a generator `h` of `ker L` found in the
    /// monomial window `t^j, |j| ≤ window`.
    pub fn ga_generator(&self, window: i64) -> Result<Param> {
        let GroupSpec::GaSub(l) = self else {
            return Err(Error::Unsupported(format!("{} is not a Ga subgroup", self)));
        };
        if l.order() != Some(1) {
            return Err(Error::Unsupported(format!("{} is not one-dimensional", self)));
        }
        let sols = solve_in_window(l, &monomial_window(-window, window))?;
        sols.into_iter().next().ok_or(Error::NoFundamentalSet {
            found: 0,
            needed: 1,
        })
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (GroupSpec::GaSub(a), GroupSpec::GaSub(b)) => a.monic() == b.monic(),
            (a, b) if a.gm_operator().is_some() && b.gm_operator().is_some() => {
                a.gm_operator().unwrap().monic() == b.gm_operator().unwrap().monic()
            }
            (GroupSpec::FiniteCyclic(r), GroupSpec::FiniteCyclic(s)) => r == s,
            (GroupSpec::Generated { parts: p, .. }, GroupSpec::Generated { parts: q, .. }) => p == q,
            _ => false,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::GaSub(l) => write!(f, "Ga^{{{}}}", l),
            GroupSpec::GmSub(l) => write!(f, "Gm^{{({})∘Δ}}", l),
            GroupSpec::GmConst => write!(f, "Gm^Δ"),
            GroupSpec::FiniteCyclic(r) => write!(f, "Z/{}", r),
            GroupSpec::Generated { parts, .. } => {
                let names: Vec<String> = parts
                    .iter()
                    .map(|p| format!("{} ({})", p.group, p.rep.name()))
                    .collect();
                write!(f, "<{}>", names.join(", "))
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum SpecJson {
    Ga {
        op: Value,
    },
    Gm {
        op: Value,
    },
    GmConst,
    Cyclic {
        r: u32,
    },
    GaClosure {
        g: String,
    },
    Generated {
        parts: Vec<PartJson>,
        #[serde(default)]
        density: String,
    },
}

#[derive(Serialize, Deserialize)]
struct PartJson {
    group: Value,
    rep: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<String>,
}

pub fn group_to_json(g: &GroupSpec) -> Value {
    match g {
        GroupSpec::GaSub(l) => json!({"kind": "ga", "op": ore_to_json(l)}),
        GroupSpec::GmSub(l) => json!({"kind": "gm", "op": ore_to_json(l)}),
        GroupSpec::GmConst => json!({"kind": "gm_const"}),
        GroupSpec::FiniteCyclic(r) => json!({"kind": "cyclic", "r": r}),
        GroupSpec::Generated { parts, density } => {
            let parts: Vec<Value> = parts
                .iter()
                .map(|p| {
                    let mut v = json!({"group": group_to_json(&p.group), "rep": p.rep.name()});
                    if let Rep::Nilpotent(m) = &p.rep {
                        v["matrix"] = json!(m
                            .iter()
                            .map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>())
                            .collect::<Vec<_>>());
                    }
                    if let Some(h) = &p.h {
                        v["h"] = json!(h.to_string());
                    }
                    v
                })
                .collect();
            json!({"kind": "generated", "parts": parts, "density": density})
        }
    }
}

pub fn group_from_json(v: &Value) -> Result<GroupSpec> {
    let s: SpecJson = serde_json::from_value(v.clone())?;
    match s {
        SpecJson::Ga { op } => GroupSpec::ga(ore_from_json(&op)?),
        SpecJson::Gm { op } => GroupSpec::gm(ore_from_json(&op)?),
        SpecJson::GmConst => Ok(GroupSpec::GmConst),
        SpecJson::Cyclic { r } => GroupSpec::FiniteCyclic(r).validate(),
        SpecJson::GaClosure { g } => closure_of_additive(&expr::parse_param(&g)?),
        SpecJson::Generated { parts, density } => {
            let parts = parts
                .into_iter()
                .map(|p| {
                    let rep = match (p.rep.as_str(), p.matrix) {
                        ("upper", _) => Rep::Upper,
                        ("lower", _) => Rep::Lower,
                        ("scalar", _) => Rep::Scalar,
                        ("nilpotent", Some(m)) => Rep::Nilpotent(
                            m.iter()
                                .map(|r| r.iter().map(|c| expr::parse_param(c)).collect::<Result<Vec<_>>>())
                                .collect::<Result<Vec<_>>>()?,
                        ),
                        (other, _) => {
                            return Err(Error::Format(format!(
                                "unknown representation {:?} (nilpotent needs \"matrix\")",
                                other
                            )))
                        }
                    };
                    Ok(Part {
                        group: group_from_json(&p.group)?,
                        rep,
                        h: p.h.as_deref().map(expr::parse_param).transpose()?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            GroupSpec::generated(parts, density)
        }
    }
}
