//! The JSON document format shared by towers and compiled programs.
//! Described in `docs/tower-format.md`.

use crate::construction::arith::ArithProgram;
use crate::construction::geom::GeomProgram;
use crate::numeric::{from_decimal, to_decimal_exact};
use crate::residues::FermatParams;
use crate::splitting::{Half, LinearCombo, PartRef};
use crate::tower::{QuadraticNode, ScheduleKind, Split, Tower};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

pub const FORMAT: &str = "ngon-tower";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("not an {FORMAT} document (format {0:?})")]
    WrongFormat(String),
    #[error("unsupported version {0}")]
    UnsupportedVersion(u32),
    #[error("expected a {expected:?} document, found {found:?}")]
    WrongKind { expected: DocKind, found: DocKind },
    #[error("invalid document: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DocKind {
    Tower,
    Arith,
    Geom,
}

#[derive(Serialize, Deserialize)]
struct Envelope<T> {
    format: String,
    version: u32,
    kind: DocKind,
    body: T,
}

/// `num/den` with `den` 1 or 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rational {
    pub num: i64,
    pub den: i64,
}

impl From<Half> for Rational {
    fn from(h: Half) -> Self {
        match h.as_int() {
            Some(v) => Rational { num: v, den: 1 },
            None => Rational { num: h.0, den: 2 },
        }
    }
}

impl TryFrom<Rational> for Half {
    type Error = FormatError;

    fn try_from(r: Rational) -> Result<Self, FormatError> {
        match r.den {
            1 => Ok(Half::int(r.num)),
            2 => Ok(Half::halves(r.num)),
            d => Err(FormatError::Invalid(format!("denominator {d}"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct Term {
    coeff: Rational,
    part: PartRef,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ComboDoc {
    constant: Rational,
    linear: Vec<Term>,
    squares: Vec<Term>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct ValueDoc {
    decimal: String,
    bits: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct NodeDoc {
    id: usize,
    level: u32,
    split: Split,
    left: PartRef,
    right: PartRef,
    sum: PartRef,
    /// Node producing `sum`; absent for the root `S = -1`.
    sum_source: Option<usize>,
    product: ComboDoc,
    left_is_larger: Option<bool>,
    margin: Option<f64>,
    value_left: Option<ValueDoc>,
    value_right: Option<ValueDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TowerDoc {
    n: u32,
    factor: u64,
    schedule: ScheduleKind,
    precision: usize,
    nodes: Vec<NodeDoc>,
}

fn combo_doc(c: &LinearCombo) -> ComboDoc {
    let terms = |v: &[(Half, PartRef)]| {
        v.iter()
            .map(|&(h, p)| Term {
                coeff: h.into(),
                part: p,
            })
            .collect()
    };
    ComboDoc {
        constant: c.constant.into(),
        linear: terms(&c.linear),
        squares: terms(&c.squares),
    }
}

fn combo_from(d: &ComboDoc) -> Result<LinearCombo, FormatError> {
    let mut c = LinearCombo::constant(d.constant.try_into()?);
    for t in &d.linear {
        c.add_linear(t.coeff.try_into()?, t.part);
    }
    for t in &d.squares {
        c.add_square(t.coeff.try_into()?, t.part);
    }
    Ok(c)
}

fn envelope<T: Serialize>(kind: DocKind, body: T) -> String {
    let env = Envelope {
        format: FORMAT.to_string(),
        version: VERSION,
        kind,
        body,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("documents serialize");
    s.push('\n');
    s
}

/// Kind of a document, after checking format and version.
pub fn document_kind(s: &str) -> Result<DocKind, FormatError> {
    let env: Envelope<serde_json::Value> = serde_json::from_str(s)?;
    if env.format != FORMAT {
        return Err(FormatError::WrongFormat(env.format));
    }
    if env.version != VERSION {
        return Err(FormatError::UnsupportedVersion(env.version));
    }
    Ok(env.kind)
}

fn open<T: for<'de> Deserialize<'de>>(s: &str, expected: DocKind) -> Result<T, FormatError> {
    let found = document_kind(s)?;
    if found != expected {
        return Err(FormatError::WrongKind { expected, found });
    }
    let env: Envelope<T> = serde_json::from_str(s)?;
    Ok(env.body)
}

pub fn tower_to_json(t: &Tower) -> String {
    let mut producer: HashMap<PartRef, usize> = HashMap::new();
    let value = |v: &astro_float::BigFloat| ValueDoc {
        decimal: to_decimal_exact(v),
        bits: t.precision,
    };
    let nodes = t
        .nodes
        .iter()
        .map(|n| {
            let doc = NodeDoc {
                id: n.id,
                level: n.step,
                split: n.split,
                left: n.left,
                right: n.right,
                sum: n.parent,
                sum_source: producer.get(&n.parent).copied(),
                product: combo_doc(&n.product),
                left_is_larger: n.left_is_larger,
                margin: n.margin,
                value_left: n.values.as_ref().map(|v| value(&v.0)),
                value_right: n.values.as_ref().map(|v| value(&v.1)),
            };
            producer.insert(n.left, n.id);
            producer.insert(n.right, n.id);
            doc
        })
        .collect();
    envelope(
        DocKind::Tower,
        TowerDoc {
            n: t.params.n,
            factor: t.factor,
            schedule: t.kind,
            precision: t.precision,
            nodes,
        },
    )
}

/// Parses and checks a tower: ids in order, parts valid for `n`, every sum
/// and product reference produced by an earlier node.
pub fn tower_from_json(s: &str) -> Result<Tower, FormatError> {
    let doc: TowerDoc = open(s, DocKind::Tower)?;
    let invalid = |m: String| FormatError::Invalid(m);
    let params = FermatParams::new(doc.n as u64)
        .or_else(|_| FermatParams::assume_prime(doc.n as u64))
        .map_err(|e| invalid(e.to_string()))?;
    let mut producer: HashMap<PartRef, usize> = HashMap::new();
    let mut nodes = Vec::with_capacity(doc.nodes.len());
    for (i, d) in doc.nodes.iter().enumerate() {
        if d.id != i {
            return Err(invalid(format!("node {} out of order", d.id)));
        }
        for p in [d.left, d.right, d.sum] {
            p.validate(&params).map_err(|e| invalid(format!("node {i}: {e}")))?;
        }
        if d.sum_source != producer.get(&d.sum).copied() || (d.sum_source.is_none() && !d.sum.is_root()) {
            return Err(invalid(format!("node {i}: sum {} has no earlier source", d.sum)));
        }
        let product = combo_from(&d.product)?;
        for p in product.parts() {
            if !p.is_root() && !producer.contains_key(p) {
                return Err(invalid(format!("node {i}: product uses {p} before it is produced")));
            }
        }
        let values = match (&d.value_left, &d.value_right) {
            (Some(l), Some(r)) => {
                let parse = |v: &ValueDoc| {
                    from_decimal(&v.decimal, v.bits).map_err(|e| invalid(format!("node {i}: {e}")))
                };
                Some((parse(l)?, parse(r)?))
            }
            (None, None) => None,
            _ => return Err(invalid(format!("node {i}: only one value present"))),
        };
        producer.insert(d.left, i);
        producer.insert(d.right, i);
        nodes.push(QuadraticNode {
            id: i,
            step: d.level,
            split: d.split,
            parent: d.sum,
            left: d.left,
            right: d.right,
            product,
            left_is_larger: d.left_is_larger,
            margin: d.margin,
            values,
        });
    }
    Ok(Tower {
        params,
        factor: doc.factor,
        kind: doc.schedule,
        precision: doc.precision,
        nodes,
    })
}

pub fn arith_to_json(p: &ArithProgram) -> String {
    envelope(DocKind::Arith, p)
}

pub fn arith_from_json(s: &str) -> Result<ArithProgram, FormatError> {
    let p: ArithProgram = open(s, DocKind::Arith)?;
    p.validate().map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(p)
}

pub fn geom_to_json(p: &GeomProgram) -> String {
    envelope(DocKind::Geom, p)
}

pub fn geom_from_json(s: &str) -> Result<GeomProgram, FormatError> {
    open(s, DocKind::Geom)
}
