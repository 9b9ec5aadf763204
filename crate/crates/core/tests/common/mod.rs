//! Independent oracles used by the integration tests. Nothing here calls
//! into the library's path, block or counting code.

#![allow(dead_code)]

use std::cmp::Ordering;
use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_rational::Ratio;
use solidtori::Slope;

pub type Q = Ratio<i64>;

/// `(p, q)` with `q ≥ 0`; `(1, 0)` is infinity.
pub type Frac = (i64, i64);

pub fn frac(s: Slope) -> Frac {
    (s.numerator(), s.denominator())
}

pub fn slope(f: Frac) -> Slope {
    Slope::new(f.0, f.1).unwrap()
}

/// Value order on `Q ∪ {∞}` with `∞` last.
pub fn cmp_frac(a: Frac, b: Frac) -> Ordering {
    match (a.1 == 0, b.1 == 0) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Greater,
        (false, true) => Ordering::Less,
        _ => (i128::from(a.0) * i128::from(b.1)).cmp(&(i128::from(b.0) * i128::from(a.1))),
    }
}

/// Sort key for clockwise position measured from `a`.
pub fn cw_key(a: Frac, x: Frac) -> (u8, Frac) {
    let wrapped = cmp_frac(x, a) == Ordering::Less;
    (u8::from(wrapped), x)
}

pub fn cw_cmp(a: Frac, x: Frac, y: Frac) -> Ordering {
    let (kx, ky) = (cw_key(a, x), cw_key(a, y));
    kx.0.cmp(&ky.0).then_with(|| cmp_frac(kx.1, ky.1))
}

pub fn adjacent(a: Frac, b: Frac) -> bool {
    (i128::from(a.0) * i128::from(b.1) - i128::from(b.0) * i128::from(a.1)).abs() == 1
}

/// All slopes with `|p| ≤ n`, `1 ≤ q ≤ n`, plus infinity.
pub fn slopes_up_to(n: i64) -> Vec<Frac> {
    let mut out = vec![(1, 0)];
    for q in 1..=n {
        for p in -n..=n {
            if p.gcd(&q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Blocks by exhaustive search over SL(2,Z) with bounded entries.

pub struct UnimodularSearch {
    mats: Vec<[i64; 4]>,
}

impl UnimodularSearch {
    pub fn new(bound: i64) -> Self {
        let mut mats = Vec::new();
        for a in -bound..=bound {
            for b in -bound..=bound {
                for c in -bound..=bound {
                    for d in -bound..=bound {
                        if a * d - b * c == 1 {
                            mats.push([a, b, c, d]);
                        }
                    }
                }
            }
        }
        UnimodularSearch { mats }
    }

    fn image(m: &[i64; 4], f: Frac) -> Frac {
        // acts on (q, p)
        let (p, q) = f;
        let q2 = m[0] * q + m[1] * p;
        let p2 = m[2] * q + m[3] * p;
        (p2, q2)
    }

    /// Some matrix sends the triple to three consecutive integers, in
    /// either order.
    pub fn to_consecutive_integers(&self, t: [Frac; 3]) -> bool {
        self.mats.iter().any(|m| {
            let mut v = [0i64; 3];
            for i in 0..3 {
                let (p, q) = Self::image(m, t[i]);
                if q.abs() != 1 {
                    return false;
                }
                v[i] = p * q;
            }
            let step = v[1] - v[0];
            step.abs() == 1 && v[2] - v[1] == step
        })
    }

    /// Consecutive edges `i`, `i+1` share a block iff their vertex triple is
    /// equivalent to three consecutive integers.
    pub fn blocks(&self, path: &[Frac]) -> Vec<Vec<usize>> {
        let mut blocks = vec![vec![0]];
        for i in 1..path.len() - 1 {
            if self.to_consecutive_integers([path[i - 1], path[i], path[i + 1]]) {
                blocks.last_mut().unwrap().push(i);
            } else {
                blocks.push(vec![i]);
            }
        }
        blocks
    }
}

/// Distinct decorations up to shuffling: sign vectors over the signed
/// edges, keyed by the number of `+` signs in each block.
pub fn brute_force_classes(blocks: &[Vec<usize>], unsigned: Option<usize>) -> usize {
    let edges: Vec<usize> = blocks
        .iter()
        .flatten()
        .copied()
        .filter(|e| Some(*e) != unsigned)
        .collect();
    let mut keys = BTreeSet::new();
    for mask in 0u64..(1 << edges.len()) {
        let plus = |e: usize| edges.iter().position(|&x| x == e).is_some_and(|i| mask >> i & 1 == 1);
        let key: Vec<usize> = blocks.iter().map(|b| b.iter().filter(|&&e| plus(e)).count()).collect();
        keys.insert(key);
    }
    keys.len()
}

// ---------------------------------------------------------------------------
// Classical count through negative continued fractions.

pub fn negative_cf(x: Q) -> Vec<i64> {
    let mut out = Vec::new();
    let mut x = x;
    loop {
        let a = x.floor().to_integer();
        out.push(a);
        let r = x - Q::from_integer(a);
        if r == Q::from_integer(0) {
            return out;
        }
        x = -r.recip();
    }
}

/// `|(a₀+1)⋯(a_{k−1}+1)·a_k|` for the reciprocal of `s` shifted into `[−1, 0)`.
pub fn classical_count(s: Q) -> u64 {
    let shifted = s - Q::from_integer((s + Q::from_integer(1)).floor().to_integer());
    debug_assert!(shifted >= Q::from_integer(-1) && shifted < Q::from_integer(0));
    let cf = negative_cf(shifted.recip());
    let (last, init) = cf.split_last().unwrap();
    let prod: i64 = init.iter().map(|a| a + 1).product::<i64>() * last;
    prod.unsigned_abs()
}

// ---------------------------------------------------------------------------
// Bounded Farey graph.

pub struct BoundedFarey {
    pub bound: i64,
    /// Sorted by value, infinity last.
    pub verts: Vec<Frac>,
    offs: Vec<usize>,
    adj: Vec<u32>,
}

impl BoundedFarey {
    pub fn new(bound: i64) -> Self {
        let mut verts = slopes_up_to(bound);
        verts.sort_by(|a, b| cmp_frac(*a, *b));
        let mut g = BoundedFarey {
            bound,
            verts,
            offs: Vec::new(),
            adj: Vec::new(),
        };
        let mut edges: Vec<(u32, u32)> = Vec::new();
        let n = bound;
        let inf = g.index((1, 0)).unwrap();
        for p in -n..=n {
            let i = g.index((p, 1)).unwrap();
            edges.push((inf, i));
            if p < n {
                edges.push((i, g.index((p + 1, 1)).unwrap()));
            }
        }
        // Edges p/q to x/y with y > q, from p·y − q·x = ±1.
        for &(p, q) in &g.verts {
            if q == 0 {
                continue;
            }
            let i = g.index((p, q)).unwrap();
            for eps in [1i64, -1] {
                let y0 = if q == 1 {
                    2
                } else {
                    // y ≡ eps·p⁻¹ (mod q)
                    let e = p.rem_euclid(q).extended_gcd(&q);
                    (eps * e.x).rem_euclid(q) + q
                };
                let step = if q == 1 { 1 } else { q };
                let mut y = y0;
                while y <= n {
                    let num = p * y - eps;
                    if num % q == 0 {
                        let x = num / q;
                        if x.abs() <= n {
                            edges.push((i, g.index((x, y)).unwrap()));
                        }
                    }
                    y += step;
                }
            }
        }
        let mut deg = vec![0usize; g.verts.len() + 1];
        for &(a, b) in &edges {
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        let mut offs = vec![0usize; g.verts.len() + 1];
        for i in 0..g.verts.len() {
            offs[i + 1] = offs[i] + deg[i];
        }
        let mut fill = offs.clone();
        let mut adj = vec![0u32; offs[g.verts.len()]];
        for &(a, b) in &edges {
            adj[fill[a as usize]] = b;
            fill[a as usize] += 1;
            adj[fill[b as usize]] = a;
            fill[b as usize] += 1;
        }
        for i in 0..g.verts.len() {
            adj[offs[i]..offs[i + 1]].sort_unstable();
        }
        g.offs = offs;
        g.adj = adj;
        g
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() / 2
    }

    pub fn index(&self, f: Frac) -> Option<u32> {
        self.verts.binary_search_by(|v| cmp_frac(*v, f)).ok().map(|i| i as u32)
    }

    pub fn neighbors(&self, i: u32) -> &[u32] {
        &self.adj[self.offs[i as usize]..self.offs[i as usize + 1]]
    }

    /// Shortest clockwise-monotone path lengths from `src` to every vertex.
    pub fn sweep(&self, src: u32, dist: &mut [u8]) {
        let n = self.len();
        let s = src as usize;
        dist.fill(u8::MAX);
        dist[s] = 0;
        for t in 0..n {
            let i = (s + t) % n;
            let d = dist[i];
            if d == u8::MAX {
                continue;
            }
            let d = d + 1;
            let nb = self.neighbors(i as u32);
            let above = nb.partition_point(|&j| (j as usize) <= i);
            let below_src = nb.partition_point(|&j| (j as usize) < s);
            let mut relax = |range: &[u32]| {
                for &j in range {
                    let dj = &mut dist[j as usize];
                    if d < *dj {
                        *dj = d;
                    }
                }
            };
            if i >= s {
                relax(&nb[above..]);
                relax(&nb[..below_src]);
            } else if above < below_src {
                relax(&nb[above..below_src]);
            }
        }
    }

    /// Plain BFS on the subgraph induced by the closed clockwise arc
    /// `[a, b]`.
    pub fn arc_bfs(&self, a: u32, b: u32) -> Option<usize> {
        let (fa, fb) = (self.verts[a as usize], self.verts[b as usize]);
        let inside = |j: u32| cw_cmp(fa, self.verts[j as usize], fb) != Ordering::Greater;
        self.bfs_filtered(a, b, inside)
    }

    pub fn bfs(&self, a: u32, b: u32) -> Option<usize> {
        self.bfs_filtered(a, b, |_| true)
    }

    fn bfs_filtered(&self, a: u32, b: u32, inside: impl Fn(u32) -> bool) -> Option<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::from([a]);
        dist[a as usize] = 0;
        while let Some(u) = queue.pop_front() {
            if u == b {
                return Some(dist[u as usize]);
            }
            for &w in self.neighbors(u) {
                if dist[w as usize] == usize::MAX && inside(w) {
                    dist[w as usize] = dist[u as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Unrestricted distances from up to 64 sources at once to each target.
    /// Returns `out[source][target]`.
    pub fn multi_bfs(&self, sources: &[u32], targets: &[u32]) -> Vec<Vec<u8>> {
        assert!(sources.len() <= 64);
        let n = self.len();
        let mut visited = vec![0u64; n];
        let mut frontier = vec![0u64; n];
        let mut next = vec![0u64; n];
        for (k, &s) in sources.iter().enumerate() {
            visited[s as usize] |= 1 << k;
            frontier[s as usize] |= 1 << k;
        }
        let mut out = vec![vec![u8::MAX; targets.len()]; sources.len()];
        let record = |out: &mut Vec<Vec<u8>>, bits: &[u64], level: u8| {
            for (t, &j) in targets.iter().enumerate() {
                let mut m = bits[j as usize];
                while m != 0 {
                    let k = m.trailing_zeros() as usize;
                    out[k][t] = level;
                    m &= m - 1;
                }
            }
        };
        record(&mut out, &frontier, 0);
        let mut level = 0u8;
        loop {
            level += 1;
            let mut any = false;
            for v in 0..n {
                let mut acc = 0u64;
                for &u in self.neighbors(v as u32) {
                    acc |= frontier[u as usize];
                }
                let new = acc & !visited[v];
                next[v] = new;
                if new != 0 {
                    visited[v] |= new;
                    any = true;
                }
            }
            if !any {
                return out;
            }
            record(&mut out, &next, level);
            std::mem::swap(&mut frontier, &mut next);
        }
    }
}
