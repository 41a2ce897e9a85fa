//! The Harbourne-constant calculus: local H over the singular set, the
//! closed-form global H, the H_{a,b,c} family, the Hadean constant, a
//! brute-force oracle, and the genus/multiplicity gap bound.
//!
//! Conventions: H(C,P) = (strict transform)²/|P|. The global H(C) is an
//! infimum and may be attained only asymptotically (the −1 limit from
//! loading smooth points of C); reports carry a witness that says whether
//! the value is attained by a finite point set.

use rayon::prelude::*;

use crate::rational::{rat, Rat};
use crate::{Error, Result};

/// Multiset of singular multiplicities with the numerical data needed for
/// every H computation. Multiplicities are stored as a (multiplicity, count)
/// distribution sorted in decreasing multiplicity, so that families with
/// `16n⁴` equal singular points stay O(1) in memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityProfile {
    total_self_int: Rat,
    mults: Vec<(u32, u64)>,
    ordinary: bool,
    component_self_ints: Option<Vec<Rat>>,
}

impl SingularityProfile {
    pub fn new(
        total_self_int: Rat,
        mults: &[u32],
        ordinary: bool,
        component_self_ints: Option<Vec<Rat>>,
    ) -> Result<Self> {
        let mut sorted = mults.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let mut dist: Vec<(u32, u64)> = Vec::new();
        for m in sorted {
            match dist.last_mut() {
                Some((mm, c)) if *mm == m => *c += 1,
                _ => dist.push((m, 1)),
            }
        }
        Self::from_distribution(total_self_int, dist, ordinary, component_self_ints)
    }

    /// `dist` holds (multiplicity, count) pairs; order is normalized here.
    pub fn from_distribution(
        total_self_int: Rat,
        mut dist: Vec<(u32, u64)>,
        ordinary: bool,
        component_self_ints: Option<Vec<Rat>>,
    ) -> Result<Self> {
        dist.retain(|&(_, c)| c > 0);
        dist.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        for &(m, _) in &dist {
            if m < 2 {
                return Err(Error::MultiplicityTooSmall(m));
            }
        }
        let profile = SingularityProfile {
            total_self_int,
            mults: dist,
            ordinary,
            component_self_ints,
        };
        // transversality accounting: C² = Σ C_j² + Σ m_p(m_p − 1)
        if profile.ordinary {
            if let Some(comps) = &profile.component_self_ints {
                let expected = comps.iter().sum::<Rat>()
                    + rat(profile
                        .mults
                        .iter()
                        .map(|&(m, c)| (m as i128) * (m as i128 - 1) * c as i128)
                        .sum::<i128>());
                if expected != profile.total_self_int {
                    return Err(Error::TransversalityMismatch {
                        expected: expected.to_string(),
                        declared: profile.total_self_int.to_string(),
                    });
                }
            }
        }
        Ok(profile)
    }

    pub fn smooth(total_self_int: Rat) -> Self {
        SingularityProfile {
            total_self_int,
            mults: Vec::new(),
            ordinary: true,
            component_self_ints: None,
        }
    }

    pub fn total_self_int(&self) -> Rat {
        self.total_self_int
    }

    pub fn distribution(&self) -> &[(u32, u64)] {
        &self.mults
    }

    pub fn is_ordinary(&self) -> bool {
        self.ordinary
    }

    pub fn component_self_ints(&self) -> Option<&[Rat]> {
        self.component_self_ints.as_deref()
    }

    /// s, the number of singular points.
    pub fn singular_count(&self) -> u64 {
        self.mults.iter().map(|&(_, c)| c).sum()
    }

    pub fn sum_mults(&self) -> i128 {
        self.mults
            .iter()
            .map(|&(m, c)| m as i128 * c as i128)
            .sum()
    }

    pub fn sum_mult_squares(&self) -> i128 {
        self.mults
            .iter()
            .map(|&(m, c)| (m as i128) * (m as i128) * c as i128)
            .sum()
    }

    fn expanded_mults(&self) -> Vec<u32> {
        self.mults
            .iter()
            .flat_map(|&(m, c)| std::iter::repeat(m).take(c as usize))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attainment {
    /// Attained by the finite point set described in the witness.
    Exact,
    /// Only approached: the −1 asymptote from b → ∞ smooth points.
    Asymptotic,
}

/// Composition of the minimizing point set: `a` singular points, `b` smooth
/// points of C, `c` points off C.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub singular_points: u64,
    pub smooth_points: u64,
    pub off_curve_points: u64,
    pub attainment: Attainment,
}

impl Witness {
    fn exact(a: u64, b: u64, c: u64) -> Self {
        Witness {
            singular_points: a,
            smooth_points: b,
            off_curve_points: c,
            attainment: Attainment::Exact,
        }
    }

    fn asymptotic() -> Self {
        Witness {
            singular_points: 0,
            smooth_points: 0,
            off_curve_points: 0,
            attainment: Attainment::Asymptotic,
        }
    }
}

/// Full Harbourne-constant breakdown of one curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HReport {
    /// H(C, Sing C); absent for smooth curves.
    pub h_local: Option<Rat>,
    /// H(C) = inf over all finite nonempty point sets.
    pub h_global: Rat,
    /// Minimum of H(C, P) over nonempty subsets P of Sing C.
    pub hadean: Option<Rat>,
    pub witness: Witness,
}

/// H(C, Sing C) = (C² − Σ m_p²)/s. When the profile carries ordinary
/// component data the second expression (Σ C_j² − Σ m_p)/s is
/// computed as well and must agree.
pub fn h_local(profile: &SingularityProfile) -> Result<Rat> {
    let (primary, alt) = h_local_expressions(profile)?;
    if let Some(alt) = alt {
        if alt != primary {
            return Err(Error::TransversalityMismatch {
                expected: alt.to_string(),
                declared: primary.to_string(),
            });
        }
    }
    Ok(primary)
}

/// The two expressions of the local H: `(C² − Σ m²)/s` always, and
/// `(Σ C_j² − Σ m)/s` when ordinary component data is present.
pub fn h_local_expressions(profile: &SingularityProfile) -> Result<(Rat, Option<Rat>)> {
    let s = profile.singular_count();
    if s == 0 {
        return Err(Error::EmptySingularSet);
    }
    let s_rat = rat(s as i128);
    let primary = (profile.total_self_int() - rat(profile.sum_mult_squares())) / s_rat;
    let alt = if profile.is_ordinary() {
        profile.component_self_ints().map(|comps| {
            (comps.iter().sum::<Rat>() - rat(profile.sum_mults())) / s_rat
        })
    } else {
        None
    };
    Ok((primary, alt))
}

/// H over a point set of `a` m-points, `b` smooth points and `c` points off
/// the curve: `(C² − a·m² − b)/(a+b+c)`.
pub fn h_abc(csq: Rat, m: u32, a: u64, b: u64, c: u64) -> Result<Rat> {
    let total = a + b + c;
    if total == 0 {
        return Err(Error::EmptyPointSet());
    }
    let m2 = rat(m as i128 * m as i128);
    Ok((csq - rat(a as i128) * m2 - rat(b as i128)) / rat(total as i128))
}

/// H-constant of a smooth curve: `min(−1, C² − 1)`.
pub fn h_smooth(csq: Rat) -> Rat {
    (csq - rat(1)).min(rat(-1))
}

/// Prefix-scan minimum of `(C² − Σ_{top-j} m²)/j` over j ∈ [1..s], taking
/// the j largest multiplicities first. Within a run of equal multiplicities
/// the value is monotone in j, so only block boundaries are inspected.
fn prefix_minimum(profile: &SingularityProfile) -> Option<(u64, Rat)> {
    let csq = profile.total_self_int();
    let mut best: Option<(u64, Rat)> = None;
    let mut j_done: u64 = 0;
    let mut sumsq_done: i128 = 0;
    for &(m, count) in profile.distribution() {
        let m2 = m as i128 * m as i128;
        for j in [j_done + 1, j_done + count] {
            let sumsq = sumsq_done + (j - j_done) as i128 * m2;
            let value = (csq - rat(sumsq)) / rat(j as i128);
            match &best {
                Some((_, b)) if *b <= value => {}
                _ => best = Some((j, value)),
            }
        }
        j_done += count;
        sumsq_done += count as i128 * m2;
    }
    best
}

/// Closed-form global H for a curve whose singularities all have the same
/// multiplicity m: `min(−1, C² − m², C²/s − m²)`.
pub fn h_constant_uniform(csq: Rat, m: u32, s: u64) -> Result<HReport> {
    if m < 2 {
        return Err(Error::MultiplicityTooSmall(m));
    }
    if s == 0 {
        return Err(Error::EmptySingularSet);
    }
    let m2 = rat(m as i128 * m as i128);
    let local = csq / rat(s as i128) - m2;
    let single = csq - m2;
    let (exact_min, a) = if single < local {
        (single, 1)
    } else {
        (local, s)
    };
    let (h_global, witness) = if exact_min <= rat(-1) {
        (exact_min, Witness::exact(a, 0, 0))
    } else {
        (rat(-1), Witness::asymptotic())
    };
    Ok(HReport {
        h_local: Some(local),
        h_global,
        hadean: Some(exact_min),
        witness,
    })
}

/// Global H for mixed multiplicities: `min(−1, min_j (C² − Σ_{top-j} m²)/j)`.
/// Falls back to the smooth formula when there are no singular points.
pub fn h_constant_general(profile: &SingularityProfile) -> HReport {
    let s = profile.singular_count();
    if s == 0 {
        let csq = profile.total_self_int();
        let smooth = h_smooth(csq);
        let witness = if csq - rat(1) <= rat(-1) {
            Witness::exact(0, 1, 0)
        } else {
            Witness::asymptotic()
        };
        return HReport {
            h_local: None,
            h_global: smooth,
            hadean: None,
            witness,
        };
    }
    let local = h_local(profile).expect("s >= 1");
    let (j, exact_min) = prefix_minimum(profile).expect("s >= 1");
    let (h_global, witness) = if exact_min <= rat(-1) {
        (exact_min, Witness::exact(j, 0, 0))
    } else {
        (rat(-1), Witness::asymptotic())
    };
    HReport {
        h_local: Some(local),
        h_global,
        hadean: Some(exact_min),
        witness,
    }
}

/// Hadean constant: minimum of H(C, P) over nonempty subsets of Sing C.
/// For a fixed subset size the minimum takes the largest multiplicities, so
/// the top-j prefix scan is exact.
pub fn hadean(profile: &SingularityProfile) -> Result<Rat> {
    prefix_minimum(profile)
        .map(|(_, v)| v)
        .ok_or(Error::EmptySingularSet)
}

/// Independent oracle: exhaustive minimum of `(C² − Σ_S m² − b)/(|S|+b+c)`
/// over all subsets S of the singular points and all `0 ≤ b ≤ b_cap`,
/// `0 ≤ c ≤ c_cap` with `|S|+b+c ≥ 1`. Exact arithmetic throughout;
/// subsets are scanned in parallel and reduced by an order-independent min.
pub fn h_bruteforce(profile: &SingularityProfile, b_cap: u64, c_cap: u64) -> Result<Rat> {
    let s = profile.singular_count();
    if s > 12 {
        return Err(Error::SubsetCapExceeded { s });
    }
    let mults = profile.expanded_mults();
    let csq = profile.total_self_int();
    let (p, q) = (*csq.numer(), *csq.denom());

    // candidate value for fixed (a, Σ_S m², b, c) as an unreduced fraction
    let best = (0u32..(1u32 << mults.len()))
        .into_par_iter()
        .map(|subset| {
            let mut a: i128 = 0;
            let mut sumsq: i128 = 0;
            for (i, &m) in mults.iter().enumerate() {
                if subset & (1 << i) != 0 {
                    a += 1;
                    sumsq += m as i128 * m as i128;
                }
            }
            let mut local_best: Option<(i128, i128)> = None;
            for b in 0..=b_cap as i128 {
                // num is independent of c and num/den is monotone in den for a
                // fixed sign of num, so only the extreme values of c can win
                for c in [0, c_cap as i128] {
                    if a + b + c == 0 {
                        continue;
                    }
                    let num = p - q * (sumsq + b);
                    let den = q * (a + b + c);
                    let better = match local_best {
                        None => true,
                        Some((bn, bd)) => num * bd < bn * den,
                    };
                    if better {
                        local_best = Some((num, den));
                    }
                }
            }
            local_best
        })
        .reduce(
            || None,
            |x, y| match (x, y) {
                (None, y) => y,
                (x, None) => x,
                (Some((xn, xd)), Some((yn, yd))) => {
                    if yn * xd < xn * yd {
                        Some((yn, yd))
                    } else {
                        Some((xn, xd))
                    }
                }
            },
        );
    let (num, den) = best.expect("caps allow at least one point set");
    Ok(Rat::new(num, den))
}

/// Evaluation of the genus/multiplicity gap inequality for an irreducible
/// curve of geometric genus g on an abelian surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenusGapBound {
    /// `(2g − 2 − Σ m_p)/s`; equals H(C, Sing C) when all singularities are
    /// ordinary, otherwise a lower estimate.
    pub bound: Rat,
    /// Self-intersection under the ordinary hypothesis:
    /// `2g − 2 + Σ m_p(m_p − 1)`.
    pub ordinary_self_int: Rat,
    /// Whether the bound drops below −4.
    pub below_minus_four: bool,
}

pub fn genus_gap_bound(g: u32, mults: &[u32]) -> Result<GenusGapBound> {
    if mults.is_empty() {
        return Err(Error::EmptySingularSet);
    }
    let s = mults.len() as i128;
    let sum: i128 = mults.iter().map(|&m| m as i128).sum();
    let crossings: i128 = mults.iter().map(|&m| m as i128 * (m as i128 - 1)).sum();
    let bound = rat(2 * g as i128 - 2 - sum) / rat(s);
    Ok(GenusGapBound {
        bound,
        ordinary_self_int: rat(2 * g as i128 - 2 + crossings),
        below_minus_four: bound < rat(-4),
    })
}
