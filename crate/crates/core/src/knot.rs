//! Knot records and the rule engine for widths, cables, virtually
//! overtwisted tori, Bennequin bounds and non-thickenable tori.
//!
//! Knot invariants are input data. Nothing here computes `tb`, genus or
//! L-space status from a diagram.

use std::fmt;
use std::path::Path;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::{invalid, Error, Result};
use crate::rational::Rational;
use crate::slope::Slope;
use crate::splitting::large_cable_obstruction;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monodromy {
    Trivial,
    Reducible,
    Irreducible,
    #[default]
    Unknown,
}

/// A Legendrian `(n, −1)`-cable with `tb = −n + k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CableWitness {
    pub n: i64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotRecord {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tb_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_lspace_knot: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_lagrangian_slice: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_fibered: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub is_uniformly_thick: Option<bool>,
    /// The knot is the binding of an open book supporting the ambient
    /// contact structure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supports_ambient_structure: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_tight: Option<bool>,
    /// The ambient manifold is `S³` with its tight structure, or `−K` is
    /// isotopic to `K`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s3_or_reversible: Option<bool>,
    #[serde(default)]
    pub monodromy: Monodromy,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub large_cable_witness: Option<CableWitness>,
    #[serde(default)]
    pub provenance: String,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl KnotRecord {
    pub fn named(name: &str) -> KnotRecord {
        KnotRecord {
            name: name.to_string(),
            genus: None,
            tb_max: None,
            is_lspace_knot: None,
            is_lagrangian_slice: None,
            is_fibered: None,
            is_uniformly_thick: None,
            supports_ambient_structure: None,
            ambient_tight: None,
            s3_or_reversible: None,
            monodromy: Monodromy::Unknown,
            large_cable_witness: None,
            provenance: String::new(),
            extra: Map::new(),
        }
    }

    pub fn is_unknot(&self) -> bool {
        self.genus == Some(0)
    }

    fn flag(v: Option<bool>) -> bool {
        v == Some(true)
    }

    pub fn validate(&self) -> Result<()> {
        if Self::flag(self.is_lagrangian_slice) && self.tb_max.is_some_and(|tb| tb != -1) {
            return Err(invalid(format!(
                "{}: a Lagrangian slice knot has tb_max = -1",
                self.name
            )));
        }
        if self.genus == Some(0) && self.name != "unknot" {
            return Err(invalid(format!("{}: only the unknot has genus 0", self.name)));
        }
        if self.name == "unknot" && self.genus.is_some_and(|g| g != 0) {
            return Err(invalid("unknot must have genus 0"));
        }
        if let Some(w) = self.large_cable_witness {
            if !large_cable_obstruction(w.n, -1, w.k)?.consistent {
                return Err(invalid(format!(
                    "{}: cable witness ({}, -1) with k = {} is impossible",
                    self.name, w.n, w.k
                )));
            }
        }
        Ok(())
    }
}

/// Torus knot `T(p,q)`, negative when `p` and `q` have opposite signs.
pub fn torus_knot(p: i64, q: i64) -> Result<KnotRecord> {
    let (a, b) = (p.abs().min(q.abs()), p.abs().max(q.abs()));
    if a < 2 || a.gcd(&b) != 1 {
        return Err(invalid(format!("T({p},{q}) is not a nontrivial torus knot")));
    }
    let positive = p.signum() == q.signum();
    let genus = u32::try_from((a - 1) * (b - 1) / 2).map_err(|_| invalid("torus knot genus overflows"))?;
    let mut k = KnotRecord::named(&format!("T({p},{q})"));
    k.genus = Some(genus);
    k.is_fibered = Some(true);
    k.is_lagrangian_slice = Some(false);
    k.ambient_tight = Some(true);
    k.s3_or_reversible = Some(true);
    k.monodromy = Monodromy::Irreducible;
    if positive {
        k.tb_max = Some(a * b - a - b);
        k.is_lspace_knot = Some(true);
        k.supports_ambient_structure = Some(true);
    } else {
        k.tb_max = Some(-a * b);
        k.is_lspace_knot = Some(false);
        k.is_uniformly_thick = Some(true);
        k.supports_ambient_structure = Some(false);
    }
    k.provenance = "generated: torus knot template".to_string();
    Ok(k)
}

fn parse_torus_name(name: &str) -> Option<(i64, i64)> {
    let inner = name.strip_prefix("T(")?.strip_suffix(')')?;
    let (p, q) = inner.split_once(',')?;
    Some((p.trim().parse().ok()?, q.trim().parse().ok()?))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KnotDatabase {
    pub schema_version: u32,
    /// Record generators; `"torus"` resolves names `T(p,q)`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub templates: Vec<String>,
    pub knots: Vec<KnotRecord>,
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl KnotDatabase {
    pub fn from_json(text: &str) -> Result<KnotDatabase> {
        let db: KnotDatabase = serde_json::from_str(text).map_err(|e| Error::Parse(format!("knot database: {e}")))?;
        if db.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!(
                "unsupported knot database schema_version {}",
                db.schema_version
            )));
        }
        for k in &db.knots {
            k.validate()?;
        }
        Ok(db)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<KnotDatabase> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::NotFound(format!("{}: {e}", path.display())))?;
        KnotDatabase::from_json(&text)
    }

    /// The bundled seed database.
    pub fn seed() -> KnotDatabase {
        KnotDatabase::from_json(SEED_JSON).expect("bundled seed database is valid")
    }

    pub fn get(&self, name: &str) -> Result<KnotRecord> {
        if let Some(k) = self.knots.iter().find(|k| k.name == name) {
            return Ok(k.clone());
        }
        if self.templates.iter().any(|t| t == "torus") {
            if let Some((p, q)) = parse_torus_name(name) {
                return torus_knot(p, q);
            }
        }
        Err(Error::NotFound(format!("no knot named {name:?}")))
    }
}

pub const SEED_JSON: &str = include_str!("../data/seed.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WidthKind {
    Exact,
    Interval,
    LowerBound,
    Conjectural,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthCertificate {
    pub kind: WidthKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower: Option<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper: Option<Rational>,
    pub rule: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reasons: Vec<String>,
}

impl WidthCertificate {
    fn exact(value: i64, rule: &str) -> WidthCertificate {
        WidthCertificate {
            kind: WidthKind::Exact,
            value: Some(Rational::integer(value)),
            lower: None,
            upper: None,
            rule: rule.to_string(),
            assumptions: Vec::new(),
            reasons: Vec::new(),
        }
    }

    fn interval(lower: Option<Rational>, upper: Option<Rational>, rule: &str) -> WidthCertificate {
        WidthCertificate {
            kind: WidthKind::Interval,
            value: None,
            lower,
            upper,
            rule: rule.to_string(),
            assumptions: Vec::new(),
            reasons: Vec::new(),
        }
    }

    /// Every width this certificate allows, as a closed range.
    pub fn range(&self) -> (Option<Rational>, Option<Rational>) {
        match self.kind {
            WidthKind::Exact => (self.value, self.value),
            _ => (self.lower, self.upper),
        }
    }
}

/// Width of a knot type.
///
/// The unknot is checked first. Then, in order: L-space knots with
/// `tb_max = 2g − 1`, uniformly thick knots, a large-cable witness, and
/// finally the bounds `[tb_max, tb_max + 1]`.
pub fn width_oracle(k: &KnotRecord) -> Result<WidthCertificate> {
    k.validate()?;
    let tb = k.tb_max;
    if k.is_unknot() {
        let tb = tb.unwrap_or(-1);
        return Ok(WidthCertificate {
            kind: WidthKind::Conjectural,
            value: Some(Rational::integer(tb + 1)),
            lower: Some(Rational::integer(tb)),
            upper: Some(Rational::integer(tb + 1)),
            rule: "Conjecture".to_string(),
            assumptions: vec!["the unknot has width tb_max + 1".to_string()],
            reasons: Vec::new(),
        });
    }
    if let (Some(true), Some(g), Some(tb)) = (k.is_lspace_knot, k.genus, tb) {
        if tb == 2 * i64::from(g) - 1 {
            return Ok(WidthCertificate::exact(tb, "Theorem lspace"));
        }
    }
    if let (Some(true), Some(tb)) = (k.is_uniformly_thick, tb) {
        return Ok(WidthCertificate::exact(tb, "uniform thickness"));
    }
    if let Some(w) = k.large_cable_witness {
        let tb = tb.unwrap_or(-1);
        let mut c = WidthCertificate {
            kind: WidthKind::LowerBound,
            value: None,
            lower: Some(Rational::new(-1, w.n + w.k)?),
            upper: Some(Rational::integer(tb + 1)),
            rule: "Theorem llc".to_string(),
            assumptions: Vec::new(),
            reasons: vec![format!("Legendrian ({}, -1)-cable with tb = {}", w.n, -w.n + w.k)],
        };
        if Rational::integer(tb) > c.lower.expect("set above") {
            c.lower = Some(Rational::integer(tb));
        }
        return Ok(c);
    }
    let Some(tb) = tb else {
        return Err(Error::NoRule(format!("{}: insufficient data, tb_max unknown", k.name)));
    };
    let mut c = WidthCertificate::interval(
        Some(Rational::integer(tb)),
        Some(Rational::integer(tb + 1)),
        "width bounds",
    );
    if k.is_lagrangian_slice == Some(true) {
        c.reasons.push("Lagrangian slice".to_string());
    }
    Ok(c)
}

fn check_cable(p: i64, q: i64) -> Result<()> {
    if p < 2 || q == 0 {
        return Err(invalid(format!("({p}, {q}) cable is trivial")));
    }
    if p.gcd(&q) != 1 {
        return Err(invalid(format!("({p}, {q}) cable coefficients are not coprime")));
    }
    Ok(())
}

/// Genus of the `(p,q)`-cable of a knot of genus `g`.
pub fn cable_genus(g: u32, p: i64, q: i64) -> Result<i64> {
    check_cable(p, q)?;
    Ok(p * i64::from(g) + (p - 1) * (q.abs() - 1) / 2)
}

/// Width of the `(p,q)`-cable of `k`.
pub fn cable_width(k: &KnotRecord, p: i64, q: i64) -> Result<WidthCertificate> {
    check_cable(p, q)?;
    let base = width_oracle(k)?;
    let slope = Rational::new(q, p)?;
    let (lo, _) = base.range();
    let lagrangian = k.is_lagrangian_slice == Some(true);
    let below_width = match lo {
        Some(lo) if lagrangian => slope <= lo && slope <= Rational::new(-1, 2)?,
        Some(lo) if base.kind == WidthKind::Exact => slope < lo,
        // A non-exact lower end may itself be the width.
        Some(lo) => slope < lo,
        None => false,
    };
    if below_width {
        let mut c = WidthCertificate::exact(p * q, "Theorem cableswetbb");
        c.reasons.push(format!("{slope} is below the width of {}", k.name));
        return Ok(c);
    }
    if let (Some(true), Some(g), Some(tb)) = (k.is_lspace_knot, k.genus, k.tb_max) {
        if tb == 2 * i64::from(g) - 1 && slope >= Rational::integer(tb) {
            let gc = cable_genus(g, p, q)?;
            let mut c = WidthCertificate::exact(2 * gc - 1, "Corollary lspace cables");
            c.reasons.push(format!("the cable is an L-space knot of genus {gc}"));
            return Ok(c);
        }
    }
    let mut c = WidthCertificate::interval(None, None, "no exact rule");
    if lagrangian && lo.is_some_and(|lo| slope <= lo) {
        c.reasons
            .push("Lagrangian slice exclusion: the slope must be at most -1/2".to_string());
    } else if lagrangian {
        c.reasons.push(format!(
            "Lagrangian slice exclusion: {slope} is not at most min(w, -1/2)"
        ));
    } else {
        c.reasons
            .push(format!("{slope} is not known to be below the width of {}", k.name));
    }
    Ok(c)
}

fn check_divide(w: i64, m: i64) -> Result<()> {
    if w < 1 || w.gcd(&m) != 1 {
        return Err(invalid(format!("divide parameters ({w}, {m}) need w ≥ 1 and gcd 1")));
    }
    Ok(())
}

/// `tb` of a Legendrian divide on a torus with dividing slope `m/w`.
pub fn divide_tb(w: i64, m: i64) -> Result<i64> {
    check_divide(w, m)?;
    Ok(w * m)
}

/// Smooth surgery coefficient `(wm − 1)/w²` of contact `(+1)` surgery on a
/// Legendrian divide of slope `m/w`.
pub fn divide_surgery_slope(w: i64, m: i64) -> Result<Slope> {
    check_divide(w, m)?;
    Slope::new(w * m - 1, w * w)
}

pub fn lspace_surgery_check(r: Slope, genus: u32) -> Result<bool> {
    if r.is_infinite() {
        return Err(invalid("surgery slope must be finite"));
    }
    Ok(r >= Slope::integer(2 * i64::from(genus) - 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definiteness {
    Positive,
    Negative,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Definiteness::Positive => "positive",
            Definiteness::Negative => "negative",
            Definiteness::Degenerate => "degenerate",
        })
    }
}

/// Intersection form of the filling by one 2-handle attached along a
/// Legendrian knot with this `tb`.
pub fn handle_definiteness(tb: i64) -> Definiteness {
    match (tb - 1).signum() {
        1 => Definiteness::Positive,
        -1 => Definiteness::Negative,
        _ => Definiteness::Degenerate,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LspaceContradiction {
    pub surgery_slope: Slope,
    pub lspace: bool,
    pub definiteness: Definiteness,
    /// A positive definite filling of an L-space: no such torus exists.
    pub fires: bool,
}

/// Tests a hypothetical convex torus of dividing slope `m/w` around an
/// L-space knot with `tb_max = 2g − 1`.
pub fn lspace_contradiction(k: &KnotRecord, w: i64, m: i64) -> Result<LspaceContradiction> {
    let (Some(true), Some(g)) = (k.is_lspace_knot, k.genus) else {
        return Err(Error::NoRule(format!("{} is not a known L-space knot", k.name)));
    };
    let surgery_slope = divide_surgery_slope(w, m)?;
    let lspace = lspace_surgery_check(surgery_slope, g)?;
    let definiteness = handle_definiteness(divide_tb(w, m)?);
    Ok(LspaceContradiction {
        surgery_slope,
        lspace,
        definiteness,
        fires: lspace && definiteness == Definiteness::Positive,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VotVerdict {
    pub possible: bool,
    pub reason: String,
}

/// Whether a solid torus representing `k` with dividing slope `s` can be
/// virtually overtwisted.
pub fn vot_possible(k: &KnotRecord, s: Slope) -> Result<VotVerdict> {
    if s.is_infinite() {
        return Err(invalid("dividing slope equals the meridian"));
    }
    let verdict = |possible: bool, reason: String| Ok(VotVerdict { possible, reason });
    if s.is_integer() {
        return verdict(
            false,
            format!("universally tight forced: no sign change at the integer slope {s}"),
        );
    }
    let inside = s > Slope::new(-1, 2)? && s < Slope::ZERO;
    if k.is_lagrangian_slice != Some(true) {
        return verdict(
            false,
            format!("universally tight forced: {} is not Lagrangian slice", k.name),
        );
    }
    if !inside {
        return verdict(false, format!("universally tight forced: {s} is outside (-1/2, 0)"));
    }
    verdict(true, format!("Lagrangian slice core with slope {s} in (-1/2, 0)"))
}

/// Bennequin inequality with the parity constraint.
pub fn bennequin_feasible(tb: i64, rot: i64, genus: u32) -> bool {
    tb + rot.abs() < 2 * i64::from(genus) && (tb + rot).rem_euclid(2) == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonThickenable {
    pub slope: Slope,
    pub dividing_curves: u64,
}

/// Slopes of non-thickenable solid tori around a fibered binding.
pub fn nonthickenable_slopes(k: &KnotRecord, n_max: i64) -> Result<Vec<NonThickenable>> {
    if n_max < 1 {
        return Err(invalid("n_max must be positive"));
    }
    let g = k
        .genus
        .ok_or_else(|| Error::NoRule(format!("{}: genus unknown", k.name)))?;
    let family = |top: i64| -> Result<Vec<NonThickenable>> {
        (1..=n_max)
            .map(|n| {
                Ok(NonThickenable {
                    slope: Slope::new(top, n)?,
                    dividing_curves: 2 * top.gcd(&n) as u64,
                })
            })
            .collect()
    };
    if g == 1 && k.is_fibered == Some(true) {
        return family(1);
    }
    if k.monodromy == Monodromy::Trivial && g >= 1 {
        return family(2 * i64::from(g) - 1);
    }
    Err(Error::NoRule(format!(
        "{}: needs a genus one fibered knot or trivial monodromy",
        k.name
    )))
}

/// `(a, b, l)` with `k/(2g−1) = a/b` in lowest terms and `k = la`.
pub fn cut_parameters(k: i64, genus: u32) -> Result<(i64, i64, i64)> {
    if k < 1 || genus < 1 {
        return Err(invalid("cut parameters need k ≥ 1 and genus ≥ 1"));
    }
    let top = 2 * i64::from(genus) - 1;
    let l = k.gcd(&top);
    Ok((k / l, top / l, l))
}

/// Dividing slope `−l′a/(2g − l′b)` on the cut-off solid torus.
pub fn prop52_cut_slope(l_prime: i64, a: i64, b: i64, genus: u32) -> Result<Slope> {
    let top = 2 * i64::from(genus) - 1;
    if a < 1 || b < 1 || genus < 1 || a.gcd(&b) != 1 || top % b != 0 {
        return Err(invalid(format!(
            "a/b = {a}/{b} is not k/(2g-1) in lowest terms for g = {genus}"
        )));
    }
    let l = top / b;
    if !(1..=l).contains(&l_prime) {
        return Err(invalid(format!("l' = {l_prime} must lie in [1, {l}]")));
    }
    Slope::new(-l_prime * a, 2 * i64::from(genus) - l_prime * b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">=")]
    AtLeast,
    #[serde(rename = "<=")]
    AtMost,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TbBound {
    pub relation: Relation,
    pub value: i64,
    pub rule: String,
}

/// Sharpest bound on `tb_max` of a fibered knot.
pub fn fibered_tb_bound(k: &KnotRecord) -> Result<TbBound> {
    let none = || Error::NoRule(format!("{}: no tb bound applies", k.name));
    if k.is_fibered != Some(true) {
        return Err(none());
    }
    let bound = |relation, value, rule: &str| {
        Ok(TbBound {
            relation,
            value,
            rule: rule.to_string(),
        })
    };
    let genus_one = k.genus == Some(1);
    match (k.supports_ambient_structure, k.ambient_tight) {
        (Some(true), Some(true)) if genus_one => bound(Relation::Equal, 1, "Corollary genus1c"),
        (Some(true), _) if k.genus.is_some_and(|g| g > 0) => bound(Relation::AtLeast, 0, "Theorem lowerbound"),
        (Some(false), Some(true)) if genus_one => {
            if k.s3_or_reversible == Some(true) {
                bound(Relation::AtMost, -1, "Corollary genus1c")
            } else {
                bound(Relation::AtMost, 0, "Corollary genus1c")
            }
        }
        _ => Err(none()),
    }
}
