//! Tight contact structures on solid tori and thickened tori, encoded as
//! sign-decorated minimal Farey paths up to shuffling inside continued
//! fraction blocks.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::farey::{minimal_cw_path, FareyPath};
use crate::slope::{cw_between, det, farey_adjacent, LatticeVector, Slope};
use crate::splitting::MixedTorusSpec;

/// Sign of a basic slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Sign {
    pub fn factor(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

/// Which boundary component of `T² × [0,1]` is collapsed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MeridianSide {
    /// `S_m`: path runs from the meridian clockwise to the boundary slope,
    /// first edge unsigned.
    Lower,
    /// `S^m`: path runs from the boundary slope clockwise to the meridian,
    /// last edge unsigned.
    Upper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolidTorusSpec {
    pub meridian: Slope,
    pub boundary_slope: Slope,
    pub side: MeridianSide,
    pub dividing_curves: u32,
}

impl SolidTorusSpec {
    pub fn new(meridian: Slope, boundary_slope: Slope, side: MeridianSide, dividing_curves: u32) -> Result<Self> {
        if meridian == boundary_slope {
            return Err(invalid("meridian equals boundary slope"));
        }
        if dividing_curves == 0 || !dividing_curves.is_multiple_of(2) {
            return Err(invalid(format!(
                "dividing curve count {dividing_curves} is not a positive even number"
            )));
        }
        Ok(SolidTorusSpec {
            meridian,
            boundary_slope,
            side,
            dividing_curves,
        })
    }

    /// Lower meridian with two dividing curves.
    pub fn lower(meridian: Slope, boundary_slope: Slope) -> Result<Self> {
        Self::new(meridian, boundary_slope, MeridianSide::Lower, 2)
    }

    pub fn upper(meridian: Slope, boundary_slope: Slope) -> Result<Self> {
        Self::new(meridian, boundary_slope, MeridianSide::Upper, 2)
    }

    /// The minimal clockwise path and the index of its unsigned edge.
    pub fn decorated_path(&self) -> Result<(FareyPath, usize)> {
        match self.side {
            MeridianSide::Lower => Ok((minimal_cw_path(self.meridian, self.boundary_slope)?, 0)),
            MeridianSide::Upper => {
                let path = minimal_cw_path(self.boundary_slope, self.meridian)?;
                let last = path.edge_count() - 1;
                Ok((path, last))
            }
        }
    }

    fn require_classifiable(&self) -> Result<()> {
        if self.dividing_curves != 2 {
            return Err(invalid("classification is only available for two dividing curves"));
        }
        Ok(())
    }
}

/// A class of tight structures: a decorated path up to shuffling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusClass {
    path: FareyPath,
    signs: Vec<Option<Sign>>,
    plus_counts: Vec<usize>,
    signed_counts: Vec<usize>,
}

impl TorusClass {
    /// `signs[e]` is `None` exactly on unsigned edges.
    pub fn new(path: FareyPath, signs: Vec<Option<Sign>>) -> Result<TorusClass> {
        if signs.len() != path.edge_count() {
            return Err(invalid("one decoration per edge is required"));
        }
        let mut plus_counts = vec![0; path.blocks().len()];
        let mut signed_counts = vec![0; path.blocks().len()];
        for (e, s) in signs.iter().enumerate() {
            let b = path.block_of_edge(e);
            if let Some(s) = s {
                signed_counts[b] += 1;
                if *s == Sign::Plus {
                    plus_counts[b] += 1;
                }
            }
        }
        Ok(TorusClass {
            path,
            signs,
            plus_counts,
            signed_counts,
        })
    }

    pub fn path(&self) -> &FareyPath {
        &self.path
    }

    pub fn signs(&self) -> &[Option<Sign>] {
        &self.signs
    }

    /// Number of `+` signs in each block; two decorations give the same class
    /// iff these agree.
    pub fn canonical_form(&self) -> &[usize] {
        &self.plus_counts
    }

    pub fn signed_counts(&self) -> &[usize] {
        &self.signed_counts
    }

    pub fn same_class(&self, other: &TorusClass) -> bool {
        self.path == other.path && self.plus_counts == other.plus_counts
    }

    pub fn to_record(&self) -> ClassRecord {
        ClassRecord {
            path: self.path.vertices().to_vec(),
            blocks: self.path.block_lists(),
            plus_counts: self.plus_counts.clone(),
            signs: self
                .signs
                .iter()
                .map(|s| s.map_or_else(|| "0".to_string(), |s| s.to_string()))
                .collect(),
            universally_tight: is_universally_tight(self),
        }
    }
}

/// JSON form of a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub path: Vec<Slope>,
    pub blocks: Vec<Vec<usize>>,
    pub plus_counts: Vec<usize>,
    pub signs: Vec<String>,
    pub universally_tight: bool,
}

/// Representative decoration: inside each block, `+` signs first.
fn representative(path: &FareyPath, unsigned: Option<usize>, plus_counts: &[usize]) -> TorusClass {
    let mut signs = vec![None; path.edge_count()];
    for (b, range) in path.blocks().iter().enumerate() {
        let mut remaining = plus_counts[b];
        for e in range.clone() {
            if Some(e) == unsigned {
                continue;
            }
            signs[e] = Some(if remaining > 0 { Sign::Plus } else { Sign::Minus });
            remaining = remaining.saturating_sub(1);
        }
    }
    TorusClass::new(path.clone(), signs).expect("decoration matches path")
}

/// Cap on signed edges for brute-force enumeration.
pub const MAX_ENUMERATED_EDGES: usize = 24;

fn enumerate_decorations(path: &FareyPath, unsigned: Option<usize>) -> Result<Vec<TorusClass>> {
    let signed: Vec<usize> = (0..path.edge_count()).filter(|&e| Some(e) != unsigned).collect();
    if signed.len() > MAX_ENUMERATED_EDGES {
        return Err(invalid(format!(
            "{} signed edges exceed the enumeration cap {MAX_ENUMERATED_EDGES}",
            signed.len()
        )));
    }
    let mut forms = BTreeSet::new();
    for mask in 0u64..(1 << signed.len()) {
        let mut signs = vec![None; path.edge_count()];
        for (i, &e) in signed.iter().enumerate() {
            signs[e] = Some(if mask >> i & 1 == 1 { Sign::Plus } else { Sign::Minus });
        }
        let class = TorusClass::new(path.clone(), signs).expect("decoration matches path");
        forms.insert(class.plus_counts);
    }
    Ok(forms.into_iter().map(|f| representative(path, unsigned, &f)).collect())
}

fn closed_form_count(path: &FareyPath, unsigned: Option<usize>) -> u64 {
    path.blocks()
        .iter()
        .map(|r| r.clone().filter(|&e| Some(e) != unsigned).count() as u64 + 1)
        .product()
}

/// Brute force: every sign vector on the signed edges, quotiented by
/// shuffling. Output is sorted by canonical form.
pub fn enumerate_classes(spec: &SolidTorusSpec) -> Result<Vec<TorusClass>> {
    spec.require_classifiable()?;
    let (path, unsigned) = spec.decorated_path()?;
    enumerate_decorations(&path, Some(unsigned))
}

/// Product over blocks of `(signed edges in block + 1)`.
pub fn count_classes(spec: &SolidTorusSpec) -> Result<u64> {
    spec.require_classifiable()?;
    let (path, unsigned) = spec.decorated_path()?;
    Ok(closed_form_count(&path, Some(unsigned)))
}

/// Minimally twisting thickened tori from `back` clockwise to `front`: every
/// edge signed.
pub fn enumerate_stack_classes(back: Slope, front: Slope) -> Result<Vec<TorusClass>> {
    let path = minimal_cw_path(back, front)?;
    enumerate_decorations(&path, None)
}

pub fn count_stack_classes(back: Slope, front: Slope) -> Result<u64> {
    Ok(closed_form_count(&minimal_cw_path(back, front)?, None))
}

/// Every signed edge carries the same sign.
pub fn is_universally_tight(c: &TorusClass) -> bool {
    let mut signs = c.signs.iter().flatten();
    match signs.next() {
        Some(first) => signs.all(|s| s == first),
        None => true,
    }
}

/// A tight thickened torus between Farey-adjacent dividing slopes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicSlice {
    pub back: Slope,
    pub front: Slope,
    pub sign: Sign,
}

impl BasicSlice {
    pub fn new(back: Slope, front: Slope, sign: Sign) -> Result<BasicSlice> {
        if !farey_adjacent(back, front)? {
            return Err(invalid(format!(
                "basic slice slopes {back} and {front} are not adjacent"
            )));
        }
        Ok(BasicSlice { back, front, sign })
    }
}

/// Relative Euler class in the `(denominator, numerator)` basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EulerClass {
    pub vector: LatticeVector,
}

impl Add for EulerClass {
    type Output = EulerClass;

    fn add(self, rhs: EulerClass) -> EulerClass {
        EulerClass {
            vector: [self.vector[0] + rhs.vector[0], self.vector[1] + rhs.vector[1]],
        }
    }
}

impl Neg for EulerClass {
    type Output = EulerClass;

    fn neg(self) -> EulerClass {
        EulerClass {
            vector: [-self.vector[0], -self.vector[1]],
        }
    }
}

/// `sign · (v(front) − v(back))`, with the back vector canonical and the
/// front vector signed so that `det(v(back), v(front)) = +1`.
pub fn relative_euler_class(b: &BasicSlice) -> EulerClass {
    let back = b.back.vector();
    let mut front = b.front.vector();
    if det(back, front) < 0 {
        front = [-front[0], -front[1]];
    }
    let s = b.sign.factor();
    EulerClass {
        vector: [s * (front[0] - back[0]), s * (front[1] - back[1])],
    }
}

/// Evaluation on the annulus whose core has slope `annulus_core`:
/// `det(v(core), e)`.
pub fn euler_pairing(e: EulerClass, annulus_core: Slope) -> i64 {
    det(annulus_core.vector(), e.vector)
}

/// Result of stacking two basic slices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StackOutcome {
    /// Opposite signs: the middle torus is mixed.
    Mixed { torus: MixedTorusSpec },
    /// Equal signs.
    Plain { slices: [BasicSlice; 2] },
}

impl StackOutcome {
    pub fn is_mixed(&self) -> bool {
        matches!(self, StackOutcome::Mixed { .. })
    }
}

/// Stacks `back → mid` (sign1) on `mid → front` (sign2).
pub fn stack_slices(back: Slope, mid: Slope, front: Slope, sign1: Sign, sign2: Sign) -> Result<StackOutcome> {
    let lower = BasicSlice::new(back, mid, sign1)?;
    let upper = BasicSlice::new(mid, front, sign2)?;
    if back == front || !cw_between(back, mid, front) {
        return Err(invalid(format!(
            "{mid} is not strictly inside the clockwise arc from {back} to {front}"
        )));
    }
    if sign1 == sign2 {
        Ok(StackOutcome::Plain { slices: [lower, upper] })
    } else {
        Ok(StackOutcome::Mixed {
            torus: MixedTorusSpec::new(back, mid, front, sign1)?,
        })
    }
}

/// Upper bound `−(t + 1)` on contact twisting in the presence of Giroux
/// torsion `t`.
pub fn max_twisting_from_torsion(torsion: u64) -> i64 {
    -(torsion as i64) - 1
}
