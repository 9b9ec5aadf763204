//! Minimal clockwise paths in the Farey graph and their continued fraction
//! blocks.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::slope::{cw_within, det, farey_adjacent, Slope, Unimodular};

/// A simple edge path in the Farey graph together with its partition into
/// maximal continued fraction blocks.
///
/// Blocks are stored as contiguous ranges of edge indices; edge `i` joins
/// `vertices[i]` and `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FareyPath {
    vertices: Vec<Slope>,
    blocks: Vec<Range<usize>>,
}

impl FareyPath {
    /// Validates adjacency and simplicity, then computes the block partition.
    pub fn from_vertices(vertices: Vec<Slope>) -> Result<FareyPath> {
        if vertices.len() < 2 {
            return Err(invalid("a path needs at least two vertices"));
        }
        for pair in vertices.windows(2) {
            if !farey_adjacent(pair[0], pair[1])? {
                return Err(invalid(format!("{} and {} are not Farey neighbors", pair[0], pair[1])));
            }
        }
        let mut seen = vertices.clone();
        seen.sort();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("path repeats a vertex"));
        }
        let blocks = partition_blocks(&vertices);
        Ok(FareyPath { vertices, blocks })
    }

    pub fn vertices(&self) -> &[Slope] {
        &self.vertices
    }

    pub fn blocks(&self) -> &[Range<usize>] {
        &self.blocks
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn first(&self) -> Slope {
        self.vertices[0]
    }

    pub fn last(&self) -> Slope {
        *self.vertices.last().expect("nonempty path")
    }

    /// Index of the block containing edge `e`.
    pub fn block_of_edge(&self, e: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&e))
            .expect("blocks partition the edges")
    }

    /// Block partition as explicit edge-index lists.
    pub fn block_lists(&self) -> Vec<Vec<usize>> {
        self.blocks.iter().map(|b| b.clone().collect()).collect()
    }

    /// Applies a change of coordinates to every vertex.
    pub fn transform(&self, m: &Unimodular) -> FareyPath {
        FareyPath::from_vertices(self.vertices.iter().map(|&s| m.apply(s)).collect())
            .expect("unimodular maps preserve adjacency")
    }
}

/// Wire form: `{"vertices": [...], "blocks": [[edge, ...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathRecord {
    pub vertices: Vec<Slope>,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&FareyPath> for PathRecord {
    fn from(path: &FareyPath) -> Self {
        PathRecord {
            vertices: path.vertices.clone(),
            blocks: path.block_lists(),
        }
    }
}

impl TryFrom<PathRecord> for FareyPath {
    type Error = Error;

    fn try_from(rec: PathRecord) -> Result<FareyPath> {
        let path = FareyPath::from_vertices(rec.vertices)?;
        if path.block_lists() != rec.blocks {
            return Err(invalid("recorded blocks disagree with the path"));
        }
        Ok(path)
    }
}

impl Serialize for FareyPath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathRecord::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FareyPath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FareyPath::try_from(PathRecord::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Signed turning number of a path `u → v → w` through Farey neighbors.
///
/// With representatives chosen so `det(u, v) = det(v, w) = ε`, the third
/// vector satisfies `w = k·v − u` for an integer `k`; the result is `ε·k`.
/// It is invariant under `SL(2,Z)`, and `±2` exactly on triples equivalent
/// to three consecutive integers (`+2` clockwise, `−2` anticlockwise).
pub fn turning_number(u: Slope, v: Slope, w: Slope) -> i64 {
    let (u, v, mut w) = (u.vector(), v.vector(), w.vector());
    let eps = det(u, v);
    debug_assert!(eps.abs() == 1);
    if det(v, w) != eps {
        w = [-w[0], -w[1]];
    }
    let sum = [w[0] + u[0], w[1] + u[1]];
    let k = if v[0] != 0 { sum[0] / v[0] } else { sum[1] / v[1] };
    debug_assert_eq!([k * v[0], k * v[1]], sum);
    eps * k
}

fn partition_blocks(vertices: &[Slope]) -> Vec<Range<usize>> {
    let edges = vertices.len() - 1;
    let mut blocks = Vec::new();
    let mut start = 0;
    let mut direction = 0;
    for e in 1..edges {
        let t = turning_number(vertices[e - 1], vertices[e], vertices[e + 1]);
        let joins = t.abs() == 2 && (direction == 0 || t == direction);
        if joins {
            direction = t;
        } else {
            blocks.push(start..e);
            start = e;
            direction = 0;
        }
    }
    blocks.push(start..edges);
    blocks
}

/// Maximal continued fraction block partition of `path`, as edge lists.
pub fn cf_blocks(path: &FareyPath) -> Vec<Vec<usize>> {
    path.block_lists()
}

/// The minimal clockwise path from `a` to `b`.
///
/// From the current vertex, step to its Farey neighbor lying furthest along
/// the clockwise arc toward `b`. In coordinates where the current vertex is
/// `∞`, that neighbor is the integer part of the image of `b`.
pub fn minimal_cw_path(a: Slope, b: Slope) -> Result<FareyPath> {
    if a == b {
        return Err(invalid(format!("path endpoints coincide ({a})")));
    }
    let mut vertices = vec![a];
    let mut cur = a;
    while cur != b {
        let next = if farey_adjacent(cur, b)? {
            b
        } else {
            let m = Unimodular::sending_to_infinity(cur);
            let target = m.apply(b);
            let n = target.floor().expect("b differs from the current vertex");
            m.inverse().apply(Slope::integer(n))
        };
        debug_assert!(cw_within(cur, next, b));
        vertices.push(next);
        cur = next;
        if vertices.len() > 4096 {
            return Err(Error::Invariant(format!(
                "clockwise path from {a} to {b} did not terminate"
            )));
        }
    }
    FareyPath::from_vertices(vertices)
}

/// Negative continued fraction `s = a₀ − 1/(a₁ − 1/(⋯ − 1/a_k))` of a
/// negative rational, with `a₀ = ⌊s⌋` and `aᵢ ≤ −2` for `i ≥ 1`.
pub fn negative_cf(s: Slope) -> Result<Vec<i64>> {
    if s.is_infinite() || s.numerator() >= 0 {
        return Err(invalid(format!(
            "negative continued fractions need a finite negative slope, got {s}"
        )));
    }
    let (mut p, mut q) = (s.numerator(), s.denominator());
    let mut out = Vec::new();
    loop {
        let a = p.div_euclid(q);
        out.push(a);
        let r = p - a * q;
        if r == 0 {
            return Ok(out);
        }
        // next = −1/(r/q) = −q/r
        (p, q) = (-q, r);
    }
}

/// Evaluates `[a₀, …, a_k]` as a negative continued fraction.
pub fn eval_negative_cf(terms: &[i64]) -> Result<Slope> {
    let (&last, rest) = terms.split_last().ok_or_else(|| invalid("empty continued fraction"))?;
    let mut acc = Slope::integer(last);
    for &a in rest.iter().rev() {
        // a − 1/acc
        acc = Slope::new(a * acc.numerator() - acc.denominator(), acc.numerator())?;
    }
    Ok(acc)
}

/// Farey neighbors of a slope inside a closed clockwise arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcNeighbors {
    /// Neighbors in clockwise order from the arc's start.
    pub slopes: Vec<Slope>,
    pub includes_start: bool,
    pub includes_end: bool,
    /// True when the arc contains the center, so the set is infinite and only
    /// slopes within the height bound were listed.
    pub truncated: bool,
}

/// All `t` adjacent to `center` with `t` in the closed clockwise arc
/// `[start, end]`.
///
/// When the arc avoids `center` the answer is finite and exact; otherwise it
/// is infinite and cut off at slopes of height `max(|p|, q) ≤ height_bound`.
pub fn neighbors_in_arc(center: Slope, start: Slope, end: Slope, height_bound: i64) -> Result<ArcNeighbors> {
    if start == end {
        return Err(invalid("degenerate arc: start equals end"));
    }
    if center == start || center == end {
        return Err(invalid("arc endpoints must differ from the center"));
    }
    let m = Unimodular::sending_to_infinity(center);
    let back = m.inverse();
    let (x, y) = (m.apply(start), m.apply(end));
    let ceil = |s: Slope| -(-s.numerator()).div_euclid(s.denominator());
    let (lo, hi) = (ceil(x), y.floor().expect("finite image"));
    let mut slopes = Vec::new();
    let truncated = x > y;
    if !truncated {
        slopes.extend((lo..=hi).map(|n| back.apply(Slope::integer(n))));
    } else {
        // Images of n are t + n·v(center); their height eventually exceeds
        // |n|·h(center) − h(t).
        let t = back.apply_vector([1, 0]);
        let reach = (height_bound + t[0].abs().max(t[1].abs())) / center.height() + 1;
        let keep = |n: &i64| back.apply(Slope::integer(*n)).height() <= height_bound;
        slopes.extend((lo..=lo.max(reach)).filter(keep).map(|n| back.apply(Slope::integer(n))));
        slopes.extend(
            (hi.min(-reach)..=hi)
                .filter(keep)
                .map(|n| back.apply(Slope::integer(n))),
        );
    }
    Ok(ArcNeighbors {
        includes_start: slopes.first() == Some(&start),
        includes_end: slopes.last() == Some(&end),
        slopes,
        truncated,
    })
}
