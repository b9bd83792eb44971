//! Straight-line field arithmetic compiled from an evaluated tower.

use super::ConstructionError;
use crate::numeric::{close, cmp, int, to_f64, RM};
use crate::splitting::{Half, LinearCombo, PartRef};
use crate::tower::Tower;
use astro_float::BigFloat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

/// One SSA instruction; operands are earlier register numbers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum ArithOp {
    Const { value: Half },
    Neg { a: usize },
    Add { a: usize, b: usize },
    Sub { a: usize, b: usize },
    Mul { a: usize, b: usize },
    Div { a: usize, b: usize },
    Sqrt { a: usize },
    Half { a: usize },
}

impl ArithOp {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            ArithOp::Const { .. } => vec![],
            ArithOp::Neg { a } | ArithOp::Sqrt { a } | ArithOp::Half { a } => vec![a],
            ArithOp::Add { a, b } | ArithOp::Sub { a, b } | ArithOp::Mul { a, b } | ArithOp::Div { a, b } => {
                vec![a, b]
            }
        }
    }

    fn remap(&self, f: impl Fn(usize) -> usize) -> ArithOp {
        match *self {
            ArithOp::Const { value } => ArithOp::Const { value },
            ArithOp::Neg { a } => ArithOp::Neg { a: f(a) },
            ArithOp::Sqrt { a } => ArithOp::Sqrt { a: f(a) },
            ArithOp::Half { a } => ArithOp::Half { a: f(a) },
            ArithOp::Add { a, b } => ArithOp::Add { a: f(a), b: f(b) },
            ArithOp::Sub { a, b } => ArithOp::Sub { a: f(a), b: f(b) },
            ArithOp::Mul { a, b } => ArithOp::Mul { a: f(a), b: f(b) },
            ArithOp::Div { a, b } => ArithOp::Div { a: f(a), b: f(b) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArithProgram {
    pub n: u32,
    pub ops: Vec<ArithOp>,
    /// `p1 = 2cos(2pi/n)`.
    pub p1: usize,
    pub cos: usize,
    pub sin: usize,
    /// Register holding each tower value, in node order.
    pub named: Vec<(PartRef, usize)>,
}

impl ArithProgram {
    pub fn sqrt_count(&self) -> usize {
        self.ops.iter().filter(|o| matches!(o, ArithOp::Sqrt { .. })).count()
    }

    /// Every operand refers to an earlier register and every output exists.
    pub fn validate(&self) -> Result<(), ConstructionError> {
        for (i, op) in self.ops.iter().enumerate() {
            if op.operands().iter().any(|&a| a >= i) {
                return Err(ConstructionError::Malformed { index: i });
            }
        }
        let len = self.ops.len();
        let outs = [self.p1, self.cos, self.sin].into_iter().chain(self.named.iter().map(|x| x.1));
        for r in outs {
            if r >= len {
                return Err(ConstructionError::Malformed { index: r });
            }
        }
        Ok(())
    }

    /// Evaluates every register at precision `p`.
    pub fn eval(&self, p: usize) -> Result<Vec<BigFloat>, ConstructionError> {
        self.validate()?;
        let mut v: Vec<BigFloat> = Vec::with_capacity(self.ops.len());
        let zero = int(0, p);
        for (i, op) in self.ops.iter().enumerate() {
            let x = match *op {
                ArithOp::Const { value } => int(value.0, p).div(&int(2, p), p, RM),
                ArithOp::Neg { a } => v[a].neg(),
                ArithOp::Add { a, b } => v[a].add(&v[b], p, RM),
                ArithOp::Sub { a, b } => v[a].sub(&v[b], p, RM),
                ArithOp::Mul { a, b } => v[a].mul(&v[b], p, RM),
                ArithOp::Div { a, b } => {
                    if v[b].is_zero() {
                        return Err(ConstructionError::DivisionByZero { index: i });
                    }
                    v[a].div(&v[b], p, RM)
                }
                ArithOp::Sqrt { a } => {
                    if cmp(&v[a], &zero) == Ordering::Less {
                        return Err(ConstructionError::NegativeRadicand {
                            index: i,
                            value: to_f64(&v[a]),
                        });
                    }
                    v[a].sqrt(p, RM)
                }
                ArithOp::Half { a } => v[a].div(&int(2, p), p, RM),
            };
            v.push(x);
        }
        Ok(v)
    }
}

/// Hash-consing emitter: identical instructions share a register.
#[derive(Default)]
pub(crate) struct Builder {
    pub ops: Vec<ArithOp>,
    seen: HashMap<ArithOp, usize>,
}

impl Builder {
    pub fn emit(&mut self, op: ArithOp) -> usize {
        let op = match op {
            ArithOp::Add { a, b } if b < a => ArithOp::Add { a: b, b: a },
            ArithOp::Mul { a, b } if b < a => ArithOp::Mul { a: b, b: a },
            o => o,
        };
        if let Some(&r) = self.seen.get(&op) {
            return r;
        }
        self.ops.push(op);
        self.seen.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    pub fn konst(&mut self, value: Half) -> usize {
        self.emit(ArithOp::Const { value })
    }

    /// `2 * c * x`, written without a multiplication when `|2c| = 1`.
    fn doubled_term(&mut self, c: Half, x: usize) -> usize {
        match c.0 {
            1 => x,
            -1 => self.emit(ArithOp::Neg { a: x }),
            k => {
                let k = self.konst(Half::int(k));
                self.emit(ArithOp::Mul { a: k, b: x })
            }
        }
    }

    /// Twice the value of a product expression.
    fn doubled_combo(&mut self, c: &LinearCombo, reg: &HashMap<PartRef, usize>) -> Result<usize, ConstructionError> {
        let get = |p: &PartRef| reg.get(p).copied().ok_or(ConstructionError::MissingValue(*p));
        let mut terms = Vec::new();
        for (h, p) in &c.linear {
            let x = get(p)?;
            terms.push(self.doubled_term(*h, x));
        }
        for (h, p) in &c.squares {
            let x = get(p)?;
            let sq = self.emit(ArithOp::Mul { a: x, b: x });
            terms.push(self.doubled_term(*h, sq));
        }
        let mut acc = if c.constant.is_zero() && !terms.is_empty() {
            None
        } else {
            Some(self.konst(Half::int(c.constant.0)))
        };
        for t in terms {
            acc = Some(match acc {
                None => t,
                Some(a) => self.emit(ArithOp::Add { a, b: t }),
            });
        }
        Ok(acc.expect("at least one term"))
    }
}

/// Removes registers unreachable from the outputs and renumbers the rest.
pub fn dead_code_elimination(prog: &ArithProgram) -> ArithProgram {
    let mut live = vec![false; prog.ops.len()];
    let mut stack: Vec<usize> = [prog.p1, prog.cos, prog.sin]
        .into_iter()
        .chain(prog.named.iter().map(|x| x.1))
        .collect();
    while let Some(r) = stack.pop() {
        if !live[r] {
            live[r] = true;
            stack.extend(prog.ops[r].operands());
        }
    }
    let mut map = vec![usize::MAX; prog.ops.len()];
    let mut ops = Vec::new();
    for (i, op) in prog.ops.iter().enumerate() {
        if live[i] {
            map[i] = ops.len();
            ops.push(op.remap(|a| map[a]));
        }
    }
    ArithProgram {
        n: prog.n,
        ops,
        p1: map[prog.p1],
        cos: map[prog.cos],
        sin: map[prog.sin],
        named: prog.named.iter().map(|&(p, r)| (p, map[r])).collect(),
    }
}

/// One square root per tower node plus one for the sine. Every tower value
/// stays a named output, so a full tower keeps all of its nodes.
pub fn compile_to_arith(tower: &Tower) -> Result<ArithProgram, ConstructionError> {
    let mut b = Builder::default();
    let mut reg: HashMap<PartRef, usize> = HashMap::new();
    reg.insert(PartRef::S, b.konst(Half::int(-1)));
    let mut named = Vec::new();
    for node in &tower.nodes {
        let larger = node.left_is_larger.ok_or(ConstructionError::Unevaluated)?;
        let sum = *reg.get(&node.parent).ok_or(ConstructionError::MissingValue(node.parent))?;
        let prod2 = b.doubled_combo(&node.product, &reg)?;
        let sq = b.emit(ArithOp::Mul { a: sum, b: sum });
        let four_prod = b.emit(ArithOp::Add { a: prod2, b: prod2 });
        let disc = b.emit(ArithOp::Sub { a: sq, b: four_prod });
        let root = b.emit(ArithOp::Sqrt { a: disc });
        let hi = b.emit(ArithOp::Add { a: sum, b: root });
        let lo = b.emit(ArithOp::Sub { a: sum, b: root });
        let hi = b.emit(ArithOp::Half { a: hi });
        let lo = b.emit(ArithOp::Half { a: lo });
        let (l, r) = if larger { (hi, lo) } else { (lo, hi) };
        reg.insert(node.left, l);
        reg.insert(node.right, r);
        named.push((node.left, l));
        named.push((node.right, r));
    }
    let p1 = if tower.params.np == 1 {
        reg[&PartRef::S]
    } else {
        *reg.get(&PartRef::Pair(1)).ok_or(ConstructionError::MissingValue(PartRef::Pair(1)))?
    };
    let cos = b.emit(ArithOp::Half { a: p1 });
    let one = b.konst(Half::int(1));
    let c2 = b.emit(ArithOp::Mul { a: cos, b: cos });
    let s2 = b.emit(ArithOp::Sub { a: one, b: c2 });
    let sin = b.emit(ArithOp::Sqrt { a: s2 });
    let prog = dead_code_elimination(&ArithProgram {
        n: tower.params.n,
        ops: b.ops,
        p1,
        cos,
        sin,
        named,
    });
    check_against_tower(&prog, tower)?;
    Ok(prog)
}

/// Evaluates the program at the tower's precision (rejecting negative
/// radicands) and compares every named register with the stored value.
fn check_against_tower(prog: &ArithProgram, tower: &Tower) -> Result<(), ConstructionError> {
    let p = tower.precision + 64;
    let vals = prog.eval(p)?;
    let stored = tower.values();
    let tol = -((tower.precision / 2) as i64);
    for (part, r) in &prog.named {
        if let Some(v) = stored.get(part) {
            if !close(&vals[*r], v, tol, p) {
                return Err(ConstructionError::ValueMismatch(*part));
            }
        }
    }
    Ok(())
}
