//! Slopes on a torus as vertices of the Farey graph.
//!
//! A slope `p/q` is carried by the primitive lattice vector `(q, p)`; the
//! slope `1/0` is the single, unsigned infinity with vector `(0, 1)`.
//! Everything here is exact integer arithmetic.
//!
//! Circular order: walking clockwise from a slope means increasing through
//! the finite values and wrapping `+∞ → ∞ → −∞`. [`Slope`]'s `Ord` is the
//! real order with `∞` placed after every finite value, which is the same
//! circle cut open at `∞`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};

/// Lattice vector `(q, p)` representing the slope `p/q`.
pub type LatticeVector = [i64; 2];

/// `det(u, w) = u₀·w₁ − u₁·w₀` for column vectors `u`, `w`.
pub fn det(u: LatticeVector, w: LatticeVector) -> i64 {
    narrow(i128::from(u[0]) * i128::from(w[1]) - i128::from(u[1]) * i128::from(w[0]))
}

pub(crate) fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("slope arithmetic overflowed i64")
}

/// A vertex of the Farey graph: an element of `Q ∪ {∞}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Slope {
    num: i64,
    den: i64,
}

impl Slope {
    pub const INFINITY: Slope = Slope { num: 1, den: 0 };
    pub const ZERO: Slope = Slope { num: 0, den: 1 };

    /// Canonical slope `p/q`: coprime, `q ≥ 0`, and `(±k, 0)` becomes `∞`.
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if p == 0 && q == 0 {
            return Err(invalid("no slope: (0, 0)"));
        }
        if q == 0 {
            return Ok(Slope::INFINITY);
        }
        let g = p.gcd(&q);
        let (mut p, mut q) = (p / g, q / g);
        if q < 0 {
            p = -p;
            q = -q;
        }
        Ok(Slope { num: p, den: q })
    }

    pub const fn integer(n: i64) -> Slope {
        Slope { num: n, den: 1 }
    }

    /// Slope of a nonzero lattice vector `(q, p)`.
    pub fn from_vector(v: LatticeVector) -> Result<Slope> {
        Slope::new(v[1], v[0])
    }

    pub fn numerator(&self) -> i64 {
        self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn is_infinite(&self) -> bool {
        self.den == 0
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    /// Canonical vector representative `(q, p)`.
    pub fn vector(&self) -> LatticeVector {
        [self.den, self.num]
    }

    /// `max(|p|, q)`, the size used for bounded enumerations.
    pub fn height(&self) -> i64 {
        self.num.abs().max(self.den)
    }

    /// `p/q ↦ q/p`, swapping between the cable/surgery slope convention and
    /// the reciprocal convention common in convex surface theory.
    pub fn invert(&self) -> Slope {
        Slope::new(self.den, self.num).expect("canonical slopes are nonzero")
    }

    /// Integer translate `s + n` (a Dehn twist along the meridian `∞`).
    pub fn shift(&self, n: i64) -> Slope {
        if self.is_infinite() {
            return *self;
        }
        Slope::new(self.num + n * self.den, self.den).expect("finite shift")
    }

    /// Largest integer `≤ s` for finite `s`.
    pub fn floor(&self) -> Option<i64> {
        (!self.is_infinite()).then(|| Integer::div_floor(&self.num, &self.den))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.is_infinite(), other.is_infinite()) {
            (true, true) => Ordering::Equal,
            (true, false) => Ordering::Greater,
            (false, true) => Ordering::Less,
            (false, false) => {
                (i128::from(self.num) * i128::from(other.den)).cmp(&(i128::from(other.num) * i128::from(self.den)))
            }
        }
    }
}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.den {
            0 => f.write_str("inf"),
            1 => write!(f, "{}", self.num),
            d => write!(f, "{}/{}", self.num, d),
        }
    }
}

impl fmt::Debug for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Slope({self})")
    }
}

impl FromStr for Slope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Slope> {
        let t = s.trim();
        if matches!(t, "inf" | "infinity" | "∞") {
            return Ok(Slope::INFINITY);
        }
        let parse = |x: &str| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("malformed slope {s:?}")))
        };
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (parse(p)?, parse(q)?),
            None => (parse(t)?, 1),
        };
        Slope::new(p, q).map_err(|_| Error::Parse(format!("malformed slope {s:?}")))
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Slope {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Slope, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Canonical slope from a pair, rejecting `(0, 0)`.
pub fn normalize(p: i64, q: i64) -> Result<Slope> {
    Slope::new(p, q)
}

/// Minimal geometric intersection number `|det(v(s), v(t))|`.
pub fn intersection_number(s: Slope, t: Slope) -> u64 {
    det(s.vector(), t.vector()).unsigned_abs()
}

/// Edge relation of the Farey graph.
pub fn farey_adjacent(s: Slope, t: Slope) -> Result<bool> {
    if s == t {
        return Err(invalid(format!("adjacency of a slope with itself ({s})")));
    }
    Ok(intersection_number(s, t) == 1)
}

/// Whether `z` lies strictly inside the clockwise arc from `x` to `y`.
///
/// When `x == y` the arc is the whole circle punctured at `x`.
pub fn cw_between(x: Slope, z: Slope, y: Slope) -> bool {
    if z == x || z == y {
        return false;
    }
    match x.cmp(&y) {
        Ordering::Less => x < z && z < y,
        Ordering::Greater => z > x || z < y,
        Ordering::Equal => true,
    }
}

/// Closed-arc membership: `z ∈ [x, y]` clockwise.
pub fn cw_within(x: Slope, z: Slope, y: Slope) -> bool {
    z == x || z == y || cw_between(x, z, y)
}

/// Applies `k` Dehn twists along `c`: `v ↦ v + k·det(v(c), v)·v(c)`.
///
/// With this sign, `k = −(n+1)` twists along `0` send `1` to `−1/n`.
pub fn dehn_twist(s: Slope, c: Slope, k: i64) -> Slope {
    let v = s.vector();
    let w = c.vector();
    let coeff = i128::from(k) * i128::from(det(w, v));
    let out = [
        narrow(i128::from(v[0]) + coeff * i128::from(w[0])),
        narrow(i128::from(v[1]) + coeff * i128::from(w[1])),
    ];
    Slope::from_vector(out).expect("twists are invertible")
}

/// Reciprocal convention change; an involution exchanging `∞` and `0`.
pub fn convention_invert(s: Slope) -> Slope {
    s.invert()
}

/// An element of `SL(2, Z)` acting on lattice vectors `(q, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Unimodular {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl Unimodular {
    pub const IDENTITY: Unimodular = Unimodular { a: 1, b: 0, c: 0, d: 1 };

    /// The matrix `[[a, b], [c, d]]`; its determinant must be exactly `+1`.
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Unimodular> {
        let det = i128::from(a) * i128::from(d) - i128::from(b) * i128::from(c);
        if det != 1 {
            return Err(invalid(format!("determinant {det} is not +1")));
        }
        Ok(Unimodular { a, b, c, d })
    }

    pub fn entries(&self) -> [i64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn inverse(&self) -> Unimodular {
        Unimodular {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    pub fn apply_vector(&self, v: LatticeVector) -> LatticeVector {
        let (q, p) = (i128::from(v[0]), i128::from(v[1]));
        [
            narrow(i128::from(self.a) * q + i128::from(self.b) * p),
            narrow(i128::from(self.c) * q + i128::from(self.d) * p),
        ]
    }

    pub fn apply(&self, s: Slope) -> Slope {
        Slope::from_vector(self.apply_vector(s.vector())).expect("unimodular maps are invertible")
    }

    /// A matrix sending `s` to `∞`.
    pub fn sending_to_infinity(s: Slope) -> Unimodular {
        let (q, p) = (s.den, s.num);
        // p·x + q·y = 1
        let e = p.extended_gcd(&q);
        let (x, y) = if e.gcd == 1 { (e.x, e.y) } else { (-e.x, -e.y) };
        Unimodular::new(p, -q, y, x).expect("Bezout coefficients give determinant one")
    }

    /// The translation `s ↦ s + n`.
    pub fn translation(n: i64) -> Unimodular {
        Unimodular { a: 1, b: 0, c: n, d: 1 }
    }
}

impl Mul for Unimodular {
    type Output = Unimodular;

    fn mul(self, rhs: Unimodular) -> Unimodular {
        let m = |x: i64, y: i64, z: i64, w: i64| narrow(i128::from(x) * i128::from(y) + i128::from(z) * i128::from(w));
        Unimodular {
            a: m(self.a, rhs.a, self.b, rhs.c),
            b: m(self.a, rhs.b, self.b, rhs.d),
            c: m(self.c, rhs.a, self.d, rhs.c),
            d: m(self.c, rhs.b, self.d, rhs.d),
        }
    }
}

/// Projective action of `m` on `s`.
pub fn apply_unimodular(m: &Unimodular, s: Slope) -> Slope {
    m.apply(s)
}
