//! Scenario files: a field, an optional tower, named elements and one task.

use std::collections::BTreeMap;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use monogen_core::monorder::BaseRing;
use monogen_core::parse::parse_poly;
use monogen_core::tower::{AlgElem, Tower};
use monogen_core::{Fq, FqCtx, Place, PlaceSet};

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub description: Option<String>,
    pub field: FieldSpec,
    /// Levels `(label, defining polynomial)`, innermost first.
    #[serde(default)]
    pub tower: Vec<LevelSpec>,
    /// Accept a tower whose irreducibility could not be certified.
    #[serde(default)]
    pub assume_irreducible: bool,
    /// Finite places of `T`; empty means `O = F_q[x]`.
    #[serde(default)]
    pub places: Vec<String>,
    #[serde(default)]
    pub elements: BTreeMap<String, String>,
    pub task: Task,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
    /// Little-endian residues of a monic irreducible of degree `k`.
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
}

fn one() -> u32 {
    1
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LevelSpec {
    pub label: String,
    pub poly: String,
}

#[derive(Clone, Copy, Debug, Default, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    Tower,
    /// `F_q[x, y]` over `F_q[x+y, xy]`.
    Sym,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    Disc {
        element: String,
    },
    OrderEq {
        s: String,
        t: String,
    },
    Search {
        s: String,
        t: String,
        #[serde(default)]
        backend: Backend,
        m_max: u64,
        n_max: u64,
        #[serde(default)]
        ef_bound: Option<u64>,
    },
    UnitSolve {
        generators: Vec<String>,
        height_bound: u32,
        #[serde(default)]
        oracle_box: Option<i64>,
    },
    Ef {
        element: String,
        bound: u64,
    },
    VerifyA1 {
        m_max: u32,
    },
    #[serde(rename = "verify-33")]
    Verify33 {
        eta: String,
        m_max: u32,
    },
    VerifyB {
        i_max: u32,
        j_max: u32,
    },
    Bounds {
        d: u64,
        /// `q(K) = p^k_exp`.
        k_exp: u64,
        s_size: u64,
        #[serde(default)]
        lambda: Option<u64>,
        #[serde(default)]
        r: Option<u64>,
    },
    Addendum {
        s: String,
        t: String,
        bound: u64,
    },
}

impl Task {
    pub fn kind(&self) -> &'static str {
        match self {
            Task::Disc { .. } => "disc",
            Task::OrderEq { .. } => "order-eq",
            Task::Search { .. } => "search",
            Task::UnitSolve { .. } => "unit-solve",
            Task::Ef { .. } => "ef",
            Task::VerifyA1 { .. } => "verify-a1",
            Task::Verify33 { .. } => "verify-33",
            Task::VerifyB { .. } => "verify-b",
            Task::Bounds { .. } => "bounds",
            Task::Addendum { .. } => "addendum",
        }
    }
}

pub fn load(text: &str) -> Result<Scenario> {
    serde_json::from_str(text).context("scenario does not match the schema")
}

/// Field, tower and base ring built from a scenario.
pub struct Setup {
    pub field: Fq,
    pub tower: Arc<Tower>,
    pub ring: BaseRing,
}

impl Scenario {
    pub fn build(&self) -> Result<Setup> {
        let fs = &self.field;
        let field = match &fs.modulus {
            Some(m) => {
                if m.len() != fs.k as usize + 1 {
                    bail!("modulus has {} coefficients, expected {}", m.len(), fs.k + 1);
                }
                FqCtx::new(fs.p, m.clone())?
            }
            None => FqCtx::builtin(fs.p, fs.k)?,
        };
        let levels: Vec<(&str, &str)> = self.tower.iter().map(|l| (l.label.as_str(), l.poly.as_str())).collect();
        let tower = if levels.is_empty() { Tower::base(&field) } else { Tower::from_text(&field, &levels)? };
        if !tower.is_certified() && !self.assume_irreducible {
            bail!("tower irreducibility not certified; set assume_irreducible to proceed");
        }
        let ring = self.ring(&field)?;
        Ok(Setup { field, tower, ring })
    }

    fn ring(&self, field: &Fq) -> Result<BaseRing> {
        if self.places.is_empty() {
            return Ok(BaseRing::Poly);
        }
        let mut places = PlaceSet::infinity_only(field);
        for p in &self.places {
            let pi = parse_poly(field, p).with_context(|| format!("place {p}"))?;
            places.insert(Place::finite(pi)?);
        }
        Ok(BaseRing::TIntegers(places))
    }

    pub fn element_text(&self, name: &str) -> Result<&str> {
        self.elements.get(name).map(String::as_str).ok_or_else(|| anyhow!("no element named {name}"))
    }

    pub fn element(&self, ctx: &Setup, name: &str) -> Result<AlgElem> {
        let text = self.element_text(name)?;
        AlgElem::parse(&ctx.tower, text).with_context(|| format!("element {name} = {text}"))
    }
}
