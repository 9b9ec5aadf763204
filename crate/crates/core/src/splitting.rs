//! Mixed tori, their exceptional slopes, and the first-homology ledger of
//! splitting along them.
//!
//! The round-handle splitting of fillings is taken as given. What is
//! computed is its slope bookkeeping: for an exceptional slope `e` the two
//! closed pieces are a lens space (the knot's solid torus refilled along
//! `e`) and `e`-surgery on the knot, and a filling of `S³` rebuilt from the
//! two pieces needs exactly one of them to have infinite `H₁`.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::classify::Sign;
use crate::error::{invalid, Result};
use crate::farey::{neighbors_in_arc, ArcNeighbors};
use crate::rational::Rational;
use crate::slope::{cw_between, farey_adjacent, intersection_number, Slope};

/// Torus `T² × {0}` between basic slices of opposite signs on
/// `T² × [−1,0]` and `T² × [0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedTorusSpec {
    pub s_minus1: Slope,
    pub s0: Slope,
    pub s_plus1: Slope,
    /// Signs of the `[−1,0]` and `[0,1]` slices.
    pub signs: [Sign; 2],
}

impl MixedTorusSpec {
    /// `lower_sign` is the sign of the `[−1,0]` slice; the other is opposite.
    pub fn new(s_minus1: Slope, s0: Slope, s_plus1: Slope, lower_sign: Sign) -> Result<Self> {
        if !farey_adjacent(s_minus1, s0)? || !farey_adjacent(s0, s_plus1)? {
            return Err(invalid("consecutive mixed-torus slopes must be Farey neighbors"));
        }
        if s_minus1 == s_plus1 || !cw_between(s_minus1, s0, s_plus1) {
            return Err(invalid(format!(
                "{s0} is not strictly inside the clockwise arc from {s_minus1} to {s_plus1}"
            )));
        }
        Ok(MixedTorusSpec {
            s_minus1,
            s0,
            s_plus1,
            signs: [lower_sign, -lower_sign],
        })
    }
}

/// `E_T`: neighbors of `s₀` in the closed clockwise arc `[s₁, s₋₁]`.
pub fn exceptional_slopes(t: &MixedTorusSpec, height_bound: i64) -> Result<ArcNeighbors> {
    if t.signs[0] == t.signs[1] {
        return Err(invalid("basic slices of a mixed torus have opposite signs"));
    }
    neighbors_in_arc(t.s0, t.s_plus1, t.s_minus1, height_bound)
}

/// Order of a first homology group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum H1Order {
    Finite(u64),
    Infinite,
}

impl H1Order {
    pub fn is_infinite(&self) -> bool {
        matches!(self, H1Order::Infinite)
    }
}

impl fmt::Display for H1Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            H1Order::Finite(n) => write!(f, "{n}"),
            H1Order::Infinite => f.write_str("infinite"),
        }
    }
}

impl Serialize for H1Order {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            H1Order::Finite(n) => s.serialize_u64(*n),
            H1Order::Infinite => s.serialize_str("infinite"),
        }
    }
}

impl<'de> Deserialize<'de> for H1Order {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(H1Order::Finite(n)),
            Raw::S(s) if s == "infinite" => Ok(H1Order::Infinite),
            Raw::S(s) => Err(serde::de::Error::custom(format!("bad homology order {s:?}"))),
        }
    }
}

/// `|H₁|` of `p/q` surgery on a knot in `S³`: `|p|`, infinite for `0`.
pub fn h1_surgery_order(surgery_slope: Slope) -> H1Order {
    match surgery_slope.numerator().unsigned_abs() {
        0 => H1Order::Infinite,
        n => H1Order::Finite(n),
    }
}

/// `|H₁|` of the lens space glued from solid tori with these meridians.
pub fn lens_h1_order(meridian1: Slope, meridian2: Slope) -> Result<u64> {
    if meridian1 == meridian2 {
        return Err(invalid("lens space meridians must differ"));
    }
    Ok(intersection_number(meridian1, meridian2))
}

/// One `e`-splitting of `S³` along a mixed torus around a knot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitResult {
    pub exceptional_slope: Slope,
    /// The knot's solid torus refilled along `e`.
    pub lens_side_h1: H1Order,
    /// `e`-surgery on the knot.
    pub surgery_side_h1: H1Order,
    /// Exactly one side has infinite `H₁`, as rebuilding the filling of `S³`
    /// by a round one-handle requires.
    pub admissible: bool,
}

/// Homology ledger of every `e ∈ E_T` for a mixed torus around a knot in
/// `S³` with meridian `∞`.
pub fn split_ledger(t: &MixedTorusSpec, height_bound: i64) -> Result<Vec<SplitResult>> {
    let e_t = exceptional_slopes(t, height_bound)?;
    e_t.slopes
        .into_iter()
        .map(|e| {
            let lens = H1Order::Finite(lens_h1_order(Slope::INFINITY, e)?);
            let surgery = h1_surgery_order(e);
            Ok(SplitResult {
                exceptional_slope: e,
                lens_side_h1: lens,
                surgery_side_h1: surgery,
                admissible: lens.is_infinite() != surgery.is_infinite(),
            })
        })
        .collect()
}

/// The two Farey neighbors of a finite non-integral slope with smaller
/// denominator.
pub fn farey_parents(s: Slope) -> Option<[Slope; 2]> {
    let (p, q) = (s.numerator(), s.denominator());
    if q < 2 {
        return None;
    }
    // p·y ≡ 1 (mod q) gives the neighbor x/y with p·y − q·x = 1, 0 < y < q.
    let e = p.extended_gcd(&q);
    let y = e.x.rem_euclid(q);
    let x = (p * y - 1) / q;
    let a = Slope::new(x, y).ok()?;
    let b = Slope::new(p - x, q - y).ok()?;
    Some([a, b])
}

/// Center of the fan used for the continued fraction block through `s₀`:
/// `0` when adjacent, else the Farey parent of smaller denominator.
fn block_pivot(s0: Slope) -> Slope {
    if s0 != Slope::ZERO && intersection_number(s0, Slope::ZERO) == 1 {
        return Slope::ZERO;
    }
    let [a, b] = farey_parents(s0).expect("cable slopes have denominator at least two");
    match a.denominator().cmp(&b.denominator()) {
        std::cmp::Ordering::Less => a,
        std::cmp::Ordering::Greater => b,
        std::cmp::Ordering::Equal => a.max(b),
    }
}

/// The `2k`-edge fan around `pivot` centred at `s0`, in clockwise order.
fn centred_block(s0: Slope, pivot: Slope, k: i64) -> Result<Vec<Slope>> {
    let (v, c) = (s0.vector(), pivot.vector());
    let at = |j: i64| Slope::from_vector([v[0] + j * c[0], v[1] + j * c[1]]);
    let mut block = (-k..=k).map(at).collect::<Result<Vec<_>>>()?;
    if !cw_between(block[0], s0, block[block.len() - 1]) {
        block.reverse();
    }
    Ok(block)
}

/// Outcome of testing a hypothetical Legendrian `(p,q)`-cable with
/// `tb = pq + k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LargeCableVerdict {
    pub consistent: bool,
    /// `(n, −1)` when the slope stages pass.
    pub required_cable: Option<[i64; 2]>,
    pub width_lower_bound: Option<Rational>,
    pub requires_lagrangian_slice: bool,
    pub reasons: Vec<String>,
    pub mixed_torus: MixedTorusSpec,
    pub block: Vec<Slope>,
    pub splits: Vec<SplitResult>,
}

/// Runs the slope stages of the large-cable obstruction.
///
/// 1. A block of `2k` edges with `k` slices of each sign, shuffled so the
///    middle torus of slope `q/p` is mixed.
/// 2. Some `e ∈ E_T` must have exactly one infinite-homology side; only
///    `e = 0` does, so `0` must be adjacent to `q/p`, i.e. `|q| = 1`.
/// 3. `q/p = 1/n` with `n > 0` refills to a structure containing an
///    overtwisted disk, so `q = −1`.
/// 4. The cable is `(p, −1)`, the knot must be Lagrangian slice, the width
///    is at least `−1/(p+k)`, and `k < p`.
pub fn large_cable_obstruction(p: i64, q: i64, k: i64) -> Result<LargeCableVerdict> {
    if p < 2 {
        return Err(invalid(format!("cable needs p ≥ 2, got {p}")));
    }
    if q == 0 || p.gcd(&q) != 1 {
        return Err(invalid(format!("cable coefficients ({p}, {q}) are not coprime")));
    }
    if k < 1 {
        return Err(invalid(format!("excess tb k = {k} must be positive")));
    }
    let s0 = Slope::new(q, p)?;
    let pivot = block_pivot(s0);
    let block = centred_block(s0, pivot, k)?;
    let mid = k as usize;
    let torus = MixedTorusSpec::new(block[mid - 1], s0, block[mid + 1], Sign::Plus)?;
    let splits = split_ledger(&torus, 64)?;
    let mut reasons = vec![format!(
        "tb = pq + {k} puts a mixed torus of slope {s0} at the centre of a {}-edge continued fraction block",
        2 * k
    )];
    let mut verdict = LargeCableVerdict {
        consistent: false,
        required_cable: None,
        width_lower_bound: None,
        requires_lagrangian_slice: false,
        reasons: Vec::new(),
        mixed_torus: torus,
        block,
        splits,
    };

    let infinite: Vec<Slope> = verdict
        .splits
        .iter()
        .filter(|s| s.admissible)
        .map(|s| s.exceptional_slope)
        .collect();
    match infinite.as_slice() {
        [e] if *e == Slope::ZERO => reasons.push(format!(
            "the splitting must use e = 0, the only exceptional slope with S¹×S² homology surgery; 0 is adjacent to {s0}"
        )),
        _ => {
            reasons.push(format!(
                "impossible: 0 is not adjacent to {s0}, so no exceptional slope gives a homology S¹×S² surgery"
            ));
            verdict.reasons = reasons;
            return Ok(verdict);
        }
    }

    if q == 1 {
        reasons.push(format!(
            "impossible: q/p = 1/{p} with positive n; the lens-space side contains an overtwisted disk"
        ));
        verdict.reasons = reasons;
        return Ok(verdict);
    }

    verdict.required_cable = Some([p, -1]);
    verdict.requires_lagrangian_slice = true;
    reasons.push(format!(
        "q/p = -1/{p}: contact (+1) surgery on a max-tb representative is fillable, so the knot is Lagrangian slice"
    ));
    if k >= p {
        reasons.push(format!("inconsistent: the excess k = {k} must be less than n = {p}"));
        verdict.reasons = reasons;
        return Ok(verdict);
    }
    let bound = Rational::new(-1, p + k)?;
    reasons.push(format!("width is at least {bound}"));
    verdict.width_lower_bound = Some(bound);
    verdict.consistent = true;
    verdict.reasons = reasons;
    Ok(verdict)
}
