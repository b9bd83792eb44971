//! Straightedge-and-compass programs: lowering from arithmetic, macro
//! expansion to the three primitive intersections, and an exact-coordinate
//! interpreter.
//!
//! A signed length `v` is the point `(v, 0)` on the axis through the centre
//! `O = (0,0)` and the given unit point `U = (1,0)`.

use super::arith::{ArithOp, ArithProgram};
use super::ConstructionError;
use crate::numeric::{cmp, int, pow2, to_f64, word_precision, RM};
use astro_float::BigFloat;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::HashMap;

/// One instruction; operands are earlier object numbers.
///
/// Branches: on a line through `a` then `b`, branch 0 is the intersection
/// nearer `a`'s side (smaller parameter). For two circles, branch 0 lies to
/// the left of the directed line between their centres.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum GeomOp {
    /// The centre of the given circle, `(0,0)`.
    GivenCenter,
    /// The given unit point `(1,0)` on that circle.
    GivenUnit,
    Line { a: usize, b: usize },
    Circle { center: usize, through: usize },
    IntersectLl { l1: usize, l2: usize },
    IntersectLc { line: usize, circle: usize, branch: u8 },
    IntersectCc { c1: usize, c2: usize, branch: u8 },
    /// Macro.
    Midpoint { a: usize, b: usize },
    /// Macro: the perpendicular to `line` at a point on it, directed to the
    /// left of the line.
    PerpendicularAt { line: usize, point: usize },
    /// Macro: `at + (to - from)`, the reflection of `from` in the midpoint
    /// of `to` and `at`.
    TransferLength { from: usize, to: usize, at: usize },
    /// Steps the chord `start -> first` around the circle about the centre
    /// `count - 1` times, counterclockwise.
    StepChord { center: usize, start: usize, first: usize, count: u32 },
}

impl GeomOp {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            GeomOp::GivenCenter | GeomOp::GivenUnit => vec![],
            GeomOp::Line { a, b } | GeomOp::Midpoint { a, b } => vec![a, b],
            GeomOp::Circle { center, through } => vec![center, through],
            GeomOp::IntersectLl { l1, l2 } => vec![l1, l2],
            GeomOp::IntersectLc { line, circle, .. } => vec![line, circle],
            GeomOp::IntersectCc { c1, c2, .. } => vec![c1, c2],
            GeomOp::PerpendicularAt { line, point } => vec![line, point],
            GeomOp::TransferLength { from, to, at } => vec![from, to, at],
            GeomOp::StepChord { center, start, first, .. } => vec![center, start, first],
        }
    }

    pub fn is_macro(&self) -> bool {
        matches!(
            self,
            GeomOp::Midpoint { .. } | GeomOp::PerpendicularAt { .. } | GeomOp::TransferLength { .. }
        )
    }
}

/// Designated objects of a compiled program.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeomOutputs {
    /// `(p1, 0)`.
    pub p1: usize,
    /// `(cos, 0)` and `(sin, 0)`.
    pub cos: usize,
    pub sin: usize,
    /// The first vertex `(cos, sin)`.
    pub vertex: usize,
    /// All vertices, if the program steps the polygon.
    pub polygon: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeomProgram {
    pub n: u32,
    pub ops: Vec<GeomOp>,
    pub outputs: GeomOutputs,
    /// Arithmetic register -> axis point holding its value.
    pub axis_points: Vec<(usize, usize)>,
}

impl GeomProgram {
    pub fn count(&self, f: impl Fn(&GeomOp) -> bool) -> usize {
        self.ops.iter().filter(|o| f(o)).count()
    }
}

struct Lowering {
    ops: Vec<GeomOp>,
    seen: HashMap<GeomOp, usize>,
    o: usize,
    u: usize,
    xaxis: usize,
    yaxis: usize,
    unit: usize,
    y1: usize,
    w: usize,
}

impl Lowering {
    fn new() -> Self {
        let mut l = Lowering {
            ops: Vec::new(),
            seen: HashMap::new(),
            o: 0,
            u: 0,
            xaxis: 0,
            yaxis: 0,
            unit: 0,
            y1: 0,
            w: 0,
        };
        l.o = l.emit(GeomOp::GivenCenter);
        l.u = l.emit(GeomOp::GivenUnit);
        l.xaxis = l.emit(GeomOp::Line { a: l.o, b: l.u });
        l.unit = l.emit(GeomOp::Circle { center: l.o, through: l.u });
        l.yaxis = l.emit(GeomOp::PerpendicularAt { line: l.xaxis, point: l.o });
        l.y1 = l.emit(GeomOp::IntersectLc { line: l.yaxis, circle: l.unit, branch: 1 });
        l.w = l.neg(l.u);
        l
    }

    fn emit(&mut self, op: GeomOp) -> usize {
        if let Some(&i) = self.seen.get(&op) {
            return i;
        }
        self.ops.push(op);
        self.seen.insert(op, self.ops.len() - 1);
        self.ops.len() - 1
    }

    fn transfer(&mut self, from: usize, to: usize, at: usize) -> usize {
        self.emit(GeomOp::TransferLength { from, to, at })
    }

    fn neg(&mut self, x: usize) -> usize {
        self.transfer(x, self.o, self.o)
    }

    fn add(&mut self, x: usize, y: usize) -> usize {
        self.transfer(self.o, y, x)
    }

    fn sub(&mut self, x: usize, y: usize) -> usize {
        self.transfer(y, self.o, x)
    }

    fn half(&mut self, x: usize) -> usize {
        self.emit(GeomOp::Midpoint { a: self.o, b: x })
    }

    /// `k * x` by doubling and adding.
    fn scale(&mut self, x: usize, k: i64) -> usize {
        match k {
            0 => self.o,
            1 => x,
            _ if k < 0 => {
                let y = self.scale(x, -k);
                self.neg(y)
            }
            _ if k % 2 == 0 => {
                let y = self.scale(x, k / 2);
                self.transfer(self.o, y, y)
            }
            _ => {
                let y = self.scale(x, k - 1);
                self.add(y, x)
            }
        }
    }

    fn constant(&mut self, halves: i64) -> usize {
        if halves % 2 == 0 {
            self.scale(self.u, halves / 2)
        } else {
            let y = self.scale(self.u, halves);
            self.half(y)
        }
    }

    /// Moves an axis point onto the vertical axis (`sign` is the value's sign).
    fn onto_vertical(&mut self, x: usize, positive: bool) -> usize {
        let c = self.emit(GeomOp::Circle { center: self.o, through: x });
        self.emit(GeomOp::IntersectLc { line: self.yaxis, circle: c, branch: positive as u8 })
    }

    fn onto_horizontal(&mut self, y: usize, positive: bool) -> usize {
        let c = self.emit(GeomOp::Circle { center: self.o, through: y });
        self.emit(GeomOp::IntersectLc { line: self.xaxis, circle: c, branch: positive as u8 })
    }

    /// `a * b`: the parallel to `Y1 A` through `(0,b)` meets the axis at `ab`.
    fn intercept_mul(&mut self, a: usize, b: usize, b_positive: bool) -> usize {
        let bp = self.onto_vertical(b, b_positive);
        let q = self.transfer(self.y1, a, bp);
        let l = self.emit(GeomOp::Line { a: bp, b: q });
        self.emit(GeomOp::IntersectLl { l1: l, l2: self.xaxis })
    }

    /// `a / b`: the parallel to `B Y1` through `A` meets the vertical axis at `a/b`.
    fn intercept_div(&mut self, a: usize, b: usize, q_positive: bool) -> usize {
        let q = self.transfer(b, self.y1, a);
        let l = self.emit(GeomOp::Line { a, b: q });
        let y = self.emit(GeomOp::IntersectLl { l1: l, l2: self.yaxis });
        self.onto_horizontal(y, q_positive)
    }

    /// The semicircle on `W D` with `W = (-1,0)` meets the vertical axis at
    /// height `sqrt(d)`.
    fn sqrt(&mut self, d: usize) -> usize {
        let m = self.emit(GeomOp::Midpoint { a: self.w, b: d });
        let c = self.emit(GeomOp::Circle { center: m, through: d });
        let h = self.emit(GeomOp::IntersectLc { line: self.yaxis, circle: c, branch: 1 });
        self.onto_horizontal(h, true)
    }
}

const SMALL: i64 = 64;

fn small_const(op: &ArithOp) -> Option<i64> {
    match op {
        ArithOp::Const { value } if value.0.abs() <= 2 * SMALL => Some(value.0),
        _ => None,
    }
}

fn positive(x: &BigFloat) -> bool {
    x.is_positive() && !x.is_zero()
}

/// Lowers an arithmetic program. Branch selectors come from evaluating the
/// program at `precision`.
pub fn lower_to_geom(prog: &ArithProgram, precision: usize, polygon: bool) -> Result<GeomProgram, ConstructionError> {
    let vals = prog.eval(word_precision(precision))?;
    let mut l = Lowering::new();
    let mut pt: Vec<usize> = Vec::with_capacity(prog.ops.len());
    for (i, op) in prog.ops.iter().enumerate() {
        let x = match *op {
            ArithOp::Const { value } => l.constant(value.0),
            ArithOp::Neg { a } => l.neg(pt[a]),
            ArithOp::Add { a, b } => l.add(pt[a], pt[b]),
            ArithOp::Sub { a, b } => l.sub(pt[a], pt[b]),
            ArithOp::Half { a } => l.half(pt[a]),
            ArithOp::Sqrt { a } => l.sqrt(pt[a]),
            ArithOp::Div { a, b } => l.intercept_div(pt[a], pt[b], positive(&vals[i])),
            ArithOp::Mul { a, b } => {
                let (ka, kb) = (small_const(&prog.ops[a]), small_const(&prog.ops[b]));
                match (ka, kb) {
                    (_, Some(h)) | (Some(h), None) => {
                        let other = if kb.is_some() { pt[a] } else { pt[b] };
                        if h % 2 == 0 {
                            l.scale(other, h / 2)
                        } else {
                            let y = l.scale(other, h);
                            l.half(y)
                        }
                    }
                    (None, None) => l.intercept_mul(pt[a], pt[b], positive(&vals[b])),
                }
            }
        };
        pt.push(x);
    }
    let cos = pt[prog.cos];
    let perp = l.emit(GeomOp::PerpendicularAt { line: l.xaxis, point: cos });
    let vertex = l.emit(GeomOp::IntersectLc { line: perp, circle: l.unit, branch: 1 });
    let poly = polygon.then(|| {
        l.emit(GeomOp::StepChord {
            center: l.o,
            start: l.u,
            first: vertex,
            count: prog.n,
        })
    });
    let outputs = GeomOutputs {
        p1: pt[prog.p1],
        cos,
        sin: pt[prog.sin],
        vertex,
        polygon: poly,
    };
    Ok(GeomProgram {
        n: prog.n,
        ops: l.ops,
        outputs,
        axis_points: pt.into_iter().enumerate().collect(),
    })
}

/// Rewrites every macro into lines, circles and intersections.
pub fn expand_macros(prog: &GeomProgram) -> GeomProgram {
    let mut ops: Vec<GeomOp> = Vec::new();
    let mut map: Vec<usize> = Vec::with_capacity(prog.ops.len());
    let push = |ops: &mut Vec<GeomOp>, op: GeomOp| {
        ops.push(op);
        ops.len() - 1
    };
    fn midpoint(ops: &mut Vec<GeomOp>, a: usize, b: usize) -> usize {
        let mut p = |op| {
            ops.push(op);
            ops.len() - 1
        };
        let c1 = p(GeomOp::Circle { center: a, through: b });
        let c2 = p(GeomOp::Circle { center: b, through: a });
        let x = p(GeomOp::IntersectCc { c1, c2, branch: 0 });
        let y = p(GeomOp::IntersectCc { c1, c2, branch: 1 });
        let l1 = p(GeomOp::Line { a: x, b: y });
        let l2 = p(GeomOp::Line { a, b });
        p(GeomOp::IntersectLl { l1, l2 })
    }
    for op in &prog.ops {
        let m = |i: usize| map[i];
        let idx = match *op {
            GeomOp::Midpoint { a, b } => midpoint(&mut ops, m(a), m(b)),
            GeomOp::TransferLength { from, to, at } => {
                let mid = if to == at { m(to) } else { midpoint(&mut ops, m(to), m(at)) };
                let line = push(&mut ops, GeomOp::Line { a: m(from), b: mid });
                let c = push(&mut ops, GeomOp::Circle { center: mid, through: m(from) });
                push(&mut ops, GeomOp::IntersectLc { line, circle: c, branch: 1 })
            }
            GeomOp::PerpendicularAt { line, point } => {
                let GeomOp::Line { a, b } = prog.ops[line] else {
                    panic!("perpendicular to a non-line");
                };
                let other = if a == point { b } else { a };
                let c = push(&mut ops, GeomOp::Circle { center: m(point), through: m(other) });
                let x1 = push(&mut ops, GeomOp::IntersectLc { line: m(line), circle: c, branch: 0 });
                let x2 = push(&mut ops, GeomOp::IntersectLc { line: m(line), circle: c, branch: 1 });
                let c1 = push(&mut ops, GeomOp::Circle { center: x1, through: x2 });
                let c2 = push(&mut ops, GeomOp::Circle { center: x2, through: x1 });
                let left = push(&mut ops, GeomOp::IntersectCc { c1, c2, branch: 0 });
                let right = push(&mut ops, GeomOp::IntersectCc { c1, c2, branch: 1 });
                push(&mut ops, GeomOp::Line { a: right, b: left })
            }
            other => {
                let mut o = other;
                remap_in_place(&mut o, &map);
                push(&mut ops, o)
            }
        };
        map.push(idx);
    }
    let o = prog.outputs;
    GeomProgram {
        n: prog.n,
        ops,
        outputs: GeomOutputs {
            p1: map[o.p1],
            cos: map[o.cos],
            sin: map[o.sin],
            vertex: map[o.vertex],
            polygon: o.polygon.map(|p| map[p]),
        },
        axis_points: prog.axis_points.iter().map(|&(r, x)| (r, map[x])).collect(),
    }
}

fn remap_in_place(op: &mut GeomOp, map: &[usize]) {
    let m = |i: &mut usize| *i = map[*i];
    match op {
        GeomOp::GivenCenter | GeomOp::GivenUnit => {}
        GeomOp::Line { a, b } | GeomOp::Midpoint { a, b } => {
            m(a);
            m(b);
        }
        GeomOp::Circle { center, through } => {
            m(center);
            m(through);
        }
        GeomOp::IntersectLl { l1, l2 } => {
            m(l1);
            m(l2);
        }
        GeomOp::IntersectLc { line, circle, .. } => {
            m(line);
            m(circle);
        }
        GeomOp::IntersectCc { c1, c2, .. } => {
            m(c1);
            m(c2);
        }
        GeomOp::PerpendicularAt { line, point } => {
            m(line);
            m(point);
        }
        GeomOp::TransferLength { from, to, at } => {
            m(from);
            m(to);
            m(at);
        }
        GeomOp::StepChord { center, start, first, .. } => {
            m(center);
            m(start);
            m(first);
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    pub x: BigFloat,
    pub y: BigFloat,
}

#[derive(Debug, Clone)]
pub enum GeomObject {
    Point(Point),
    /// Through `a`, directed towards `b`.
    Line(Point, Point),
    Circle { center: Point, r2: BigFloat },
    Polygon(Vec<Point>),
}

pub struct GeomResult {
    pub objects: Vec<GeomObject>,
    pub precision: usize,
    /// For a stepped polygon: distance from the `count`-th step back to the start.
    pub closure_error: Option<BigFloat>,
}

impl GeomResult {
    pub fn point(&self, i: usize) -> &Point {
        match &self.objects[i] {
            GeomObject::Point(p) => p,
            other => panic!("object {i} is not a point: {other:?}"),
        }
    }

    /// The signed length an axis point stands for.
    pub fn length(&self, i: usize) -> &BigFloat {
        &self.point(i).x
    }

    pub fn polygon(&self, i: usize) -> &[Point] {
        match &self.objects[i] {
            GeomObject::Polygon(v) => v,
            other => panic!("object {i} is not a polygon: {other:?}"),
        }
    }
}

struct Exec {
    p: usize,
    tol: BigFloat,
}

impl Exec {
    fn sub(&self, a: &Point, b: &Point) -> Point {
        Point {
            x: a.x.sub(&b.x, self.p, RM),
            y: a.y.sub(&b.y, self.p, RM),
        }
    }

    fn add_scaled(&self, a: &Point, d: &Point, t: &BigFloat) -> Point {
        Point {
            x: a.x.add(&d.x.mul(t, self.p, RM), self.p, RM),
            y: a.y.add(&d.y.mul(t, self.p, RM), self.p, RM),
        }
    }

    fn dot(&self, a: &Point, b: &Point) -> BigFloat {
        a.x.mul(&b.x, self.p, RM).add(&a.y.mul(&b.y, self.p, RM), self.p, RM)
    }

    fn cross(&self, a: &Point, b: &Point) -> BigFloat {
        a.x.mul(&b.y, self.p, RM).sub(&a.y.mul(&b.x, self.p, RM), self.p, RM)
    }

    fn tiny(&self, x: &BigFloat) -> bool {
        cmp(&x.abs(), &self.tol) == Ordering::Less
    }

    fn ll(&self, i: usize, a: &Point, b: &Point, c: &Point, d: &Point) -> Result<Point, ConstructionError> {
        let d1 = self.sub(b, a);
        let d2 = self.sub(d, c);
        let det = self.cross(&d1, &d2);
        if self.tiny(&det) {
            return Err(ConstructionError::DegenerateIntersection { index: i });
        }
        let t = self.cross(&self.sub(c, a), &d2).div(&det, self.p, RM);
        Ok(self.add_scaled(a, &d1, &t))
    }

    fn lc(&self, i: usize, a: &Point, b: &Point, c: &Point, r2: &BigFloat, branch: u8) -> Result<Point, ConstructionError> {
        let p = self.p;
        let d = self.sub(b, a);
        let f = self.sub(a, c);
        let qa = self.dot(&d, &d);
        let qb = self.dot(&d, &f);
        let qc = self.dot(&f, &f).sub(r2, p, RM);
        // t = (-qb -+ sqrt(qb^2 - qa*qc)) / qa
        let disc = qb.mul(&qb, p, RM).sub(&qa.mul(&qc, p, RM), p, RM);
        if disc.is_negative() || self.tiny(&disc) || self.tiny(&qa) {
            return Err(ConstructionError::DegenerateIntersection { index: i });
        }
        let s = disc.sqrt(p, RM);
        let num = if branch == 0 { qb.neg().sub(&s, p, RM) } else { qb.neg().add(&s, p, RM) };
        Ok(self.add_scaled(a, &d, &num.div(&qa, p, RM)))
    }

    fn cc(&self, i: usize, c1: &Point, r1: &BigFloat, c2: &Point, r2: &BigFloat, branch: u8) -> Result<Point, ConstructionError> {
        let p = self.p;
        let d = self.sub(c2, c1);
        let dd = self.dot(&d, &d);
        if self.tiny(&dd) {
            return Err(ConstructionError::DegenerateIntersection { index: i });
        }
        // Along d: a = (r1 - r2 + dd) / (2 dd); across: h^2 = r1/dd - a^2.
        let a = r1.sub(r2, p, RM).add(&dd, p, RM).div(&dd.mul(&int(2, p), p, RM), p, RM);
        let h2 = r1.div(&dd, p, RM).sub(&a.mul(&a, p, RM), p, RM);
        if h2.is_negative() || self.tiny(&h2) {
            return Err(ConstructionError::DegenerateIntersection { index: i });
        }
        let h = h2.sqrt(p, RM);
        let h = if branch == 0 { h } else { h.neg() };
        let base = self.add_scaled(c1, &d, &a);
        let left = Point { x: d.y.neg(), y: d.x.clone() };
        Ok(self.add_scaled(&base, &left, &h))
    }

    fn dist2(&self, a: &Point, b: &Point) -> BigFloat {
        let d = self.sub(a, b);
        self.dot(&d, &d)
    }
}

/// Runs a program in exact analytic geometry at `precision` bits.
/// `max_vertices` caps how many polygon vertices are produced.
pub fn execute_geom(
    prog: &GeomProgram,
    precision: usize,
    max_vertices: Option<usize>,
) -> Result<GeomResult, ConstructionError> {
    let p = word_precision(precision) + 64;
    let ex = Exec {
        p,
        tol: pow2(-((precision / 2) as i64), p),
    };
    let mut objs: Vec<GeomObject> = Vec::with_capacity(prog.ops.len());
    let mut closure_error = None;
    let bad = |i: usize| ConstructionError::Malformed { index: i };
    for (i, op) in prog.ops.iter().enumerate() {
        if op.operands().iter().any(|&a| a >= i) {
            return Err(bad(i));
        }
        let point = |j: usize| match &objs[j] {
            GeomObject::Point(q) => Ok(q),
            _ => Err(bad(i)),
        };
        let line = |j: usize| match &objs[j] {
            GeomObject::Line(a, b) => Ok((a, b)),
            _ => Err(bad(i)),
        };
        let circle = |j: usize| match &objs[j] {
            GeomObject::Circle { center, r2 } => Ok((center, r2)),
            _ => Err(bad(i)),
        };
        let obj = match *op {
            GeomOp::GivenCenter => GeomObject::Point(Point { x: int(0, p), y: int(0, p) }),
            GeomOp::GivenUnit => GeomObject::Point(Point { x: int(1, p), y: int(0, p) }),
            GeomOp::Line { a, b } => {
                let (a, b) = (point(a)?, point(b)?);
                if ex.tiny(&ex.dist2(a, b)) {
                    return Err(ConstructionError::DegenerateIntersection { index: i });
                }
                GeomObject::Line(a.clone(), b.clone())
            }
            GeomOp::Circle { center, through } => {
                let (c, t) = (point(center)?, point(through)?);
                let r2 = ex.dist2(c, t);
                if ex.tiny(&r2) {
                    return Err(ConstructionError::DegenerateIntersection { index: i });
                }
                GeomObject::Circle { center: c.clone(), r2 }
            }
            GeomOp::IntersectLl { l1, l2 } => {
                let ((a, b), (c, d)) = (line(l1)?, line(l2)?);
                GeomObject::Point(ex.ll(i, a, b, c, d)?)
            }
            GeomOp::IntersectLc { line: l, circle: c, branch } => {
                let ((a, b), (c, r2)) = (line(l)?, circle(c)?);
                GeomObject::Point(ex.lc(i, a, b, c, r2, branch)?)
            }
            GeomOp::IntersectCc { c1, c2, branch } => {
                let ((c1, r1), (c2, r2)) = (circle(c1)?, circle(c2)?);
                GeomObject::Point(ex.cc(i, c1, r1, c2, r2, branch)?)
            }
            GeomOp::Midpoint { a, b } => {
                let (a, b) = (point(a)?, point(b)?);
                let two = int(2, p);
                GeomObject::Point(Point {
                    x: a.x.add(&b.x, p, RM).div(&two, p, RM),
                    y: a.y.add(&b.y, p, RM).div(&two, p, RM),
                })
            }
            GeomOp::PerpendicularAt { line: l, point: q } => {
                let ((a, b), q) = (line(l)?, point(q)?);
                let d = ex.sub(b, a);
                if !ex.tiny(&ex.cross(&d, &ex.sub(q, a))) {
                    return Err(ConstructionError::DegenerateIntersection { index: i });
                }
                let left = Point { x: d.y.neg(), y: d.x.clone() };
                let q2 = ex.add_scaled(q, &left, &int(1, p));
                GeomObject::Line(q.clone(), q2)
            }
            GeomOp::TransferLength { from, to, at } => {
                let (f, t, a) = (point(from)?, point(to)?, point(at)?);
                GeomObject::Point(ex.add_scaled(a, &ex.sub(t, f), &int(1, p)))
            }
            GeomOp::StepChord { center, start, first, count } => {
                let (c, s, f) = (point(center)?, point(start)?, point(first)?);
                let r2 = ex.dist2(c, s);
                let chord = ex.dist2(s, f);
                let want = max_vertices.map_or(count as usize, |m| m.min(count as usize));
                let mut verts = vec![s.clone()];
                if want > 1 {
                    verts.push(f.clone());
                }
                let mut cur = f.clone();
                // Counterclockwise: left of the ray from the centre.
                while verts.len() < want {
                    cur = ex.cc(i, c, &r2, &cur, &chord, 0)?;
                    verts.push(cur.clone());
                }
                if want == count as usize {
                    let back = ex.cc(i, c, &r2, &cur, &chord, 0)?;
                    closure_error = Some(ex.dist2(&back, s).sqrt(p, RM));
                }
                GeomObject::Polygon(verts)
            }
        };
        objs.push(obj);
    }
    Ok(GeomResult {
        objects: objs,
        precision,
        closure_error,
    })
}

/// Largest `|executed - arithmetic|` over every axis point, as `log2`.
pub fn max_axis_error(prog: &GeomProgram, res: &GeomResult, arith: &[BigFloat]) -> Option<f64> {
    let p = res.precision + 64;
    prog.axis_points
        .iter()
        .filter_map(|&(r, x)| {
            let d = res.length(x).sub(&arith[r], p, RM).abs();
            (!d.is_zero()).then(|| to_f64(&d).abs().log2())
        })
        .fold(None, |acc: Option<f64>, e| Some(acc.map_or(e, |a| a.max(e))))
}
