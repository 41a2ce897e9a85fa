//! Torsion-group arithmetic and the combinatorial models of the (16₆) and
//! (16₁₀) designs on an abelian surface.
//!
//! Points of `A[2]` are modeled as even subsets of `{1..6}` modulo
//! complementation, curves as odd subsets modulo complementation. Incidence
//! is a threshold on the symmetric-difference weight: a curve passes through
//! a point exactly when `min(|Δ|, 6 − |Δ|)` equals 1 (sixteen-six) or 3
//! (sixteen-ten). The design axioms are verified by brute force rather than
//! assumed; see [`verify_design`].

use serde::Serialize;

use crate::{Error, Result};

const FULL_MASK: u8 = 0x3f; // {1,...,6}

/// Default cap on the torsion level for enumeration: A[N] with N ≤ 12,
/// i.e. at most 20736 points.
pub const DEFAULT_LEVEL_CAP: u32 = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Parity {
    Even,
    Odd,
}

/// A subset of `{1..6}` stored in canonical form modulo complementation:
/// even labels have size 0 or 2; odd labels have size 1, or size 3
/// containing the element 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetLabel(u8);

impl SubsetLabel {
    pub const EMPTY: SubsetLabel = SubsetLabel(0);

    pub fn new(elements: &[u8]) -> Result<Self> {
        let mut mask = 0u8;
        for &e in elements {
            if !(1..=6).contains(&e) {
                return Err(Error::InvalidSubsetElement(e));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Self::from_mask(mask))
    }

    fn from_mask(mask: u8) -> Self {
        SubsetLabel(Self::canonicalize(mask & FULL_MASK))
    }

    fn canonicalize(mask: u8) -> u8 {
        let complement = !mask & FULL_MASK;
        match mask.count_ones() {
            0 | 1 | 2 => mask,
            // odd size 3: the canonical representative contains 1
            3 => {
                if mask & 1 != 0 {
                    mask
                } else {
                    complement
                }
            }
            _ => complement,
        }
    }

    pub fn parity(self) -> Parity {
        if self.0.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn elements(self) -> Vec<u8> {
        (1..=6).filter(|e| self.0 & (1 << (e - 1)) != 0).collect()
    }

    /// Symmetric difference, re-canonicalized.
    pub fn sym_diff(self, other: SubsetLabel) -> SubsetLabel {
        Self::from_mask(self.0 ^ other.0)
    }

    /// `min(|Δ|, 6 − |Δ|)`; well defined modulo complementation of either side.
    pub fn delta_weight(self, other: SubsetLabel) -> u32 {
        let d = (self.0 ^ other.0).count_ones();
        d.min(6 - d)
    }

    /// The 16 even labels: ∅ and the 15 pairs.
    pub fn all_even() -> Vec<SubsetLabel> {
        let mut v: Vec<_> = (0u8..64)
            .filter(|m| m.count_ones() % 2 == 0)
            .map(Self::from_mask)
            .collect();
        v.sort();
        v.dedup();
        v
    }

    /// The 16 odd labels: 6 singletons and the 10 triples containing 1.
    pub fn all_odd() -> Vec<SubsetLabel> {
        let mut v: Vec<_> = (0u8..64)
            .filter(|m| m.count_ones() % 2 == 1)
            .map(Self::from_mask)
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

impl std::fmt::Display for SubsetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0 == 0 {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.elements().iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(""))
    }
}

/// Element of `A[N] ≅ (ℤ/N)⁴`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorsionPoint {
    level: u32,
    coords: [u32; 4],
}

impl TorsionPoint {
    pub fn new(level: u32, coords: [u32; 4]) -> Self {
        assert!(level >= 1);
        TorsionPoint {
            level,
            coords: coords.map(|c| c % level),
        }
    }

    pub fn zero(level: u32) -> Self {
        Self::new(level, [0; 4])
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn coords(&self) -> [u32; 4] {
        self.coords
    }

    pub fn add(&self, other: &TorsionPoint) -> Result<TorsionPoint> {
        if self.level != other.level {
            return Err(Error::LevelMismatch {
                expected: self.level,
                got: other.level,
            });
        }
        let mut coords = [0u32; 4];
        for i in 0..4 {
            coords[i] = (self.coords[i] + other.coords[i]) % self.level;
        }
        Ok(TorsionPoint {
            level: self.level,
            coords,
        })
    }

    pub fn negate(&self) -> TorsionPoint {
        let level = self.level;
        TorsionPoint {
            level,
            coords: self.coords.map(|c| (level - c) % level),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Reinterprets `n·x` in `A[2]`: each coordinate of `n·x` mod `2n` lies
    /// in `{0, n}` and is divided out by `n`. Requires `x.level = 2n`.
    pub fn reduce(&self, n: u32) -> Result<TorsionPoint> {
        if self.level != 2 * n {
            return Err(Error::LevelMismatch {
                expected: 2 * n,
                got: self.level,
            });
        }
        let coords = self.coords.map(|c| (n * c % (2 * n)) / n);
        Ok(TorsionPoint { level: 2, coords })
    }

    /// Embeds `A[2] ↪ A[2n]` by `c ↦ n·c` coordinatewise (the image is the
    /// 2-torsion of `(ℤ/2n)⁴`). Requires level 2.
    pub fn embed(&self, n: u32) -> Result<TorsionPoint> {
        if self.level != 2 {
            return Err(Error::LevelMismatch {
                expected: 2,
                got: self.level,
            });
        }
        Ok(TorsionPoint {
            level: 2 * n,
            coords: self.coords.map(|c| n * c),
        })
    }
}

/// The group `A[N] ≅ (ℤ/N)⁴`, with a cap guarding full enumeration.
#[derive(Debug, Clone, Copy)]
pub struct TorsionGroup {
    level: u32,
    cap: u32,
}

impl TorsionGroup {
    pub fn new(level: u32) -> Self {
        Self::with_cap(level, DEFAULT_LEVEL_CAP)
    }

    pub fn with_cap(level: u32, cap: u32) -> Self {
        assert!(level >= 1);
        TorsionGroup { level, cap }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn order(&self) -> u128 {
        (self.level as u128).pow(4)
    }

    pub fn enumerate(&self) -> Result<Vec<TorsionPoint>> {
        if self.level > self.cap {
            return Err(Error::EnumerationCapExceeded {
                level: self.level,
                cap: self.cap,
                points: self.order(),
            });
        }
        let n = self.level;
        let mut points = Vec::with_capacity(self.order() as usize);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        points.push(TorsionPoint {
                            level: n,
                            coords: [a, b, c, d],
                        });
                    }
                }
            }
        }
        Ok(points)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DesignKind {
    /// (16₆)-design of type 2: genus-2 theta translates.
    SixteenSix,
    /// (16₁₀)-design of type 6: genus-4 curves on a (1,3)-polarized surface.
    SixteenTen,
}

impl DesignKind {
    pub fn points_per_curve(self) -> u32 {
        match self {
            DesignKind::SixteenSix => 6,
            DesignKind::SixteenTen => 10,
        }
    }

    fn incidence_weight(self) -> u32 {
        match self {
            DesignKind::SixteenSix => 1,
            DesignKind::SixteenTen => 3,
        }
    }
}

/// Combinatorial model of the 16 two-torsion points and the 16 theta-translate
/// curves. The basis fixes the isomorphism `A[2] ≅ (ℤ/2)⁴ ≅ {even labels}`.
#[derive(Debug, Clone)]
pub struct KummerModel {
    kind: DesignKind,
    base_curve: SubsetLabel,
    basis: [SubsetLabel; 4],
}

impl KummerModel {
    /// Model with the recorded conventions: basis ({1,2},{1,3},{1,4},{1,5}),
    /// base curve {1} (sixteen-six) or {1,2,3} (sixteen-ten). Both base
    /// curves pass through the zero point (the empty even label).
    pub fn new(kind: DesignKind) -> Self {
        let basis = [
            SubsetLabel::new(&[1, 2]).unwrap(),
            SubsetLabel::new(&[1, 3]).unwrap(),
            SubsetLabel::new(&[1, 4]).unwrap(),
            SubsetLabel::new(&[1, 5]).unwrap(),
        ];
        let base_curve = match kind {
            DesignKind::SixteenSix => SubsetLabel::new(&[1]).unwrap(),
            DesignKind::SixteenTen => SubsetLabel::new(&[1, 2, 3]).unwrap(),
        };
        let model = KummerModel {
            kind,
            base_curve,
            basis,
        };
        debug_assert!(model.incident(model.base_curve, SubsetLabel::EMPTY));
        model
    }

    pub fn kind(&self) -> DesignKind {
        self.kind
    }

    pub fn base_curve(&self) -> SubsetLabel {
        self.base_curve
    }

    pub fn basis(&self) -> [SubsetLabel; 4] {
        self.basis
    }

    pub fn points(&self) -> Vec<SubsetLabel> {
        SubsetLabel::all_even()
    }

    pub fn curves(&self) -> Vec<SubsetLabel> {
        SubsetLabel::all_odd()
    }

    /// Threshold incidence between an odd (curve) and an even (point) label.
    pub fn incident(&self, curve: SubsetLabel, point: SubsetLabel) -> bool {
        curve.delta_weight(point) == self.kind.incidence_weight()
    }

    /// Image of a 2-torsion point under the basis isomorphism onto even
    /// labels: XOR of the basis labels selected by the coordinates.
    pub fn to_even_label(&self, p: &TorsionPoint) -> Result<SubsetLabel> {
        if p.level() != 2 {
            return Err(Error::LevelMismatch {
                expected: 2,
                got: p.level(),
            });
        }
        let mut label = SubsetLabel::EMPTY;
        for (i, &c) in p.coords().iter().enumerate() {
            if c == 1 {
                label = label.sym_diff(self.basis[i]);
            }
        }
        Ok(label)
    }

    /// Membership of `x ∈ A[2n]` in the pullback curve `D_t`: true iff
    /// `n·x + t` lies on the base curve.
    pub fn dt_contains(&self, t: &TorsionPoint, x: &TorsionPoint, n: u32) -> Result<bool> {
        if t.level() != 2 {
            return Err(Error::LevelMismatch {
                expected: 2,
                got: t.level(),
            });
        }
        let reduced = x.reduce(n)?;
        let shifted = reduced.add(t)?;
        Ok(self.incident(self.base_curve, self.to_even_label(&shifted)?))
    }

    /// Number of 2-torsion points (embedded in `A[2n]`) lying on `D_t`.
    /// Closed-form friendly: enumerates only the 16 points of `A[2]`.
    pub fn two_torsion_count_on_dt(&self, t: &TorsionPoint, n: u32) -> Result<u32> {
        let mut count = 0;
        for p in TorsionGroup::new(2).enumerate()? {
            if self.dt_contains(t, &p.embed(n)?, n)? {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Degrees of a configuration: `a` curves each through `n` points, `b` points
/// each on `m` curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConfigurationParams {
    pub curves: u64,
    pub points_per_curve: u64,
    pub points: u64,
    pub curves_per_point: u64,
}

/// Checks the (a_n, b_m)-configuration axioms over an explicit relation.
pub fn verify_configuration<C, P>(
    curves: &[C],
    points: &[P],
    incident: impl Fn(&C, &P) -> bool,
) -> Result<ConfigurationParams>
where
    C: std::fmt::Debug,
    P: std::fmt::Debug,
{
    if curves.is_empty() || points.is_empty() {
        return Err(Error::NotAConfiguration(
            "points and curves must be nonempty".into(),
        ));
    }
    let n = points.iter().filter(|p| incident(&curves[0], p)).count() as u64;
    for c in curves {
        let deg = points.iter().filter(|p| incident(c, p)).count() as u64;
        if deg != n {
            return Err(Error::NotAConfiguration(format!(
                "curve {c:?} meets {deg} points, expected {n}"
            )));
        }
    }
    let m = curves.iter().filter(|c| incident(c, &points[0])).count() as u64;
    for p in points {
        let deg = curves.iter().filter(|c| incident(c, p)).count() as u64;
        if deg != m {
            return Err(Error::NotAConfiguration(format!(
                "point {p:?} lies on {deg} curves, expected {m}"
            )));
        }
    }
    let params = ConfigurationParams {
        curves: curves.len() as u64,
        points_per_curve: n,
        points: points.len() as u64,
        curves_per_point: m,
    };
    // double count of the incidence relation
    if params.curves * n != params.points * m {
        return Err(Error::NotAConfiguration(format!(
            "a·n = {} but b·m = {}",
            params.curves * n,
            params.points * m
        )));
    }
    Ok(params)
}

/// Checks the design axiom on top of [`verify_configuration`]: every pair of
/// distinct curves shares exactly λ points; asserts `m(n−1) = λ(a−1)`.
pub fn verify_design<C, P>(
    curves: &[C],
    points: &[P],
    incident: impl Fn(&C, &P) -> bool,
) -> Result<u64>
where
    C: std::fmt::Debug,
    P: std::fmt::Debug,
{
    let rows: Vec<Vec<bool>> = curves
        .iter()
        .map(|c| points.iter().map(|p| incident(c, p)).collect())
        .collect();
    for (i, c) in curves.iter().enumerate() {
        for (j, c2) in curves.iter().enumerate().skip(i + 1) {
            if rows[i] == rows[j] {
                return Err(Error::NotADesign(format!(
                    "curves {c:?} and {c2:?} have identical incidence sets"
                )));
            }
        }
    }
    let params = verify_configuration(curves, points, &incident)?;
    let overlap = |i: usize, j: usize| -> u64 {
        rows[i]
            .iter()
            .zip(&rows[j])
            .filter(|(a, b)| **a && **b)
            .count() as u64
    };
    let lambda = overlap(0, 1);
    for i in 0..curves.len() {
        for j in (i + 1)..curves.len() {
            let o = overlap(i, j);
            if o != lambda {
                return Err(Error::NotADesign(format!(
                    "curves {:?} and {:?} share {o} points, expected {lambda}",
                    curves[i], curves[j]
                )));
            }
        }
    }
    let (a, n, m) = (params.curves, params.points_per_curve, params.curves_per_point);
    if m * (n - 1) != lambda * (a - 1) {
        return Err(Error::NotADesign(format!(
            "identity m(n-1) = λ(a-1) fails: {} ≠ {}",
            m * (n - 1),
            lambda * (a - 1)
        )));
    }
    Ok(lambda)
}
