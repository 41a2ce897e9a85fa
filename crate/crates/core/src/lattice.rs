//! Exact divisor-class arithmetic: intersection forms, pullback by the
//! multiplication-by-n map, blow-up strict transforms and the numerical
//! bookkeeping of the degree-2 Kummer quotient.

use std::sync::Arc;

use num_traits::Zero;

use crate::rational::{is_integer, rat, Rat};
use crate::{Error, Result};

/// A free module with named generators and a symmetric rational Gram matrix
/// of pairwise intersection numbers. Immutable; blow-ups return new lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceLattice {
    generators: Vec<String>,
    gram: Vec<Vec<Rat>>,
    exceptional_from: usize,
}

impl SurfaceLattice {
    pub fn new(generators: Vec<String>, gram: Vec<Vec<Rat>>) -> Result<Arc<Self>> {
        let d = generators.len();
        if gram.len() != d || gram.iter().any(|row| row.len() != d) {
            return Err(Error::BadGramMatrix);
        }
        for i in 0..d {
            for j in 0..d {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::BadGramMatrix);
                }
            }
        }
        Ok(Arc::new(SurfaceLattice {
            generators,
            gram,
            exceptional_from: d,
        }))
    }

    /// Rank-one lattice of an abelian surface generated by a polarization
    /// class with the given self-intersection.
    pub fn abelian(name: &str, self_int: i128) -> Arc<Self> {
        Self::new(vec![name.to_string()], vec![vec![rat(self_int)]]).unwrap()
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn has_exceptionals(&self) -> bool {
        self.exceptional_from < self.generators.len()
    }

    /// Appends one exceptional generator per name: self-intersection −1,
    /// orthogonal to everything existing.
    fn extend_by_exceptionals(self: &Arc<Self>, names: &[String]) -> Arc<Self> {
        let old = self.rank();
        let new = old + names.len();
        let mut generators = self.generators.clone();
        generators.extend_from_slice(names);
        let mut gram = vec![vec![Rat::zero(); new]; new];
        for i in 0..old {
            for j in 0..old {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for k in old..new {
            gram[k][k] = rat(-1);
        }
        Arc::new(SurfaceLattice {
            generators,
            gram,
            exceptional_from: self.exceptional_from.min(old),
        })
    }
}

/// A divisor class: a rational coefficient vector over a lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<SurfaceLattice>,
    coeffs: Vec<Rat>,
}

impl DivisorClass {
    pub fn new(lattice: Arc<SurfaceLattice>, coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() != lattice.rank() {
            return Err(Error::BadGramMatrix);
        }
        Ok(DivisorClass { lattice, coeffs })
    }

    /// The class of a single named generator.
    pub fn generator(lattice: &Arc<SurfaceLattice>, index: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); lattice.rank()];
        coeffs[index] = rat(1);
        DivisorClass {
            lattice: lattice.clone(),
            coeffs,
        }
    }

    pub fn zero(lattice: &Arc<SurfaceLattice>) -> Self {
        DivisorClass {
            lattice: lattice.clone(),
            coeffs: vec![Rat::zero(); lattice.rank()],
        }
    }

    pub fn lattice(&self) -> &Arc<SurfaceLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn scale(&self, k: Rat) -> Self {
        DivisorClass {
            lattice: self.lattice.clone(),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> Result<Self> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        Ok(DivisorClass {
            lattice: self.lattice.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Bilinear intersection number `aᵀ · gram · b`.
    pub fn intersect(&self, other: &DivisorClass) -> Result<Rat> {
        if self.lattice != other.lattice {
            return Err(Error::LatticeMismatch);
        }
        let gram = &self.lattice.gram;
        let mut acc = Rat::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    acc += a * &gram[i][j] * b;
                }
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> Rat {
        self.intersect(self).expect("same lattice")
    }
}

/// Pullback of a symmetric class under the multiplication-by-n isogeny:
/// `[n]* c = n² c`, so self-intersections scale by n⁴. Only valid on an
/// unblown abelian-surface lattice.
pub fn pullback_mult_n(c: &DivisorClass, n: i64) -> Result<DivisorClass> {
    if n < 1 {
        return Err(Error::BadPullbackFactor(n));
    }
    if c.lattice().has_exceptionals() {
        return Err(Error::BlownLattice);
    }
    Ok(c.scale(rat(n as i128 * n as i128)))
}

/// Strict transform of `c` under the blow-up at the marked points: the class
/// `f*c − Σ m_p E_p` on the lattice extended by one exceptional generator per
/// point id. Also returns its self-intersection `c² − Σ m_p²` computed
/// directly, so callers can confront the two routes.
pub fn strict_transform(
    c: &DivisorClass,
    marks: &[(String, u32)],
) -> Result<(DivisorClass, Rat)> {
    for (i, (id, _)) in marks.iter().enumerate() {
        if marks[i + 1..].iter().any(|(other, _)| other == id) {
            return Err(Error::DuplicatePointId(id.clone()));
        }
    }
    let names: Vec<String> = marks.iter().map(|(id, _)| format!("E_{id}")).collect();
    let extended = c.lattice().extend_by_exceptionals(&names);
    let mut coeffs = c.coeffs().to_vec();
    coeffs.extend(marks.iter().map(|(_, m)| rat(-(*m as i128))));
    let class = DivisorClass::new(extended, coeffs)?;
    let direct = c.self_intersection()
        - marks
            .iter()
            .map(|(_, m)| rat((*m as i128) * (*m as i128)))
            .sum::<Rat>();
    Ok((class, direct))
}

/// Self-intersection of the image of a [-1]-invariant curve on the Kummer
/// surface: the quotient map has degree 2, so the value halves. An odd
/// integer input signals a modeling mistake upstream.
pub fn kummer_quotient_selfint(strict_self_int: Rat) -> Result<Rat> {
    if is_integer(&strict_self_int) && strict_self_int.numer() % 2 != 0 {
        return Err(Error::OddSelfIntersection(*strict_self_int.numer()));
    }
    Ok(strict_self_int / rat(2))
}

/// Number of [-1]-orbits of singular points surviving on the Kummer surface:
/// the fixed 2-torsion points are blown up and removed, the rest pair up.
pub fn kummer_singular_orbit_count(total_points: u128, fixed_points: u128) -> Result<u128> {
    if total_points < fixed_points || (total_points - fixed_points) % 2 != 0 {
        return Err(Error::ParityViolation {
            total: total_points,
            fixed: fixed_points,
        });
    }
    Ok((total_points - fixed_points) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn genus2() -> (Arc<SurfaceLattice>, DivisorClass) {
        let lat = SurfaceLattice::abelian("C0", 2);
        let c0 = DivisorClass::generator(&lat, 0);
        (lat, c0)
    }

    #[test]
    fn intersect_examples() {
        let (lat, c0) = genus2();
        assert_eq!(c0.self_intersection(), rat(2));
        let lat4 = SurfaceLattice::abelian("C0", 6);
        let c = DivisorClass::generator(&lat4, 0);
        assert_eq!(c.self_intersection(), rat(6));
        assert_eq!(DivisorClass::zero(&lat).intersect(&c0).unwrap(), rat(0));
    }

    #[test]
    fn intersect_rejects_lattice_mismatch() {
        let (_, c0) = genus2();
        let other = DivisorClass::generator(&SurfaceLattice::abelian("M", 4), 0);
        assert!(matches!(c0.intersect(&other), Err(Error::LatticeMismatch)));
    }

    #[test]
    fn gram_must_be_symmetric() {
        let bad = SurfaceLattice::new(
            vec!["a".into(), "b".into()],
            vec![vec![rat(0), rat(1)], vec![rat(2), rat(0)]],
        );
        assert!(bad.is_err());
    }

    #[test]
    fn pullback_scaling() {
        let (_, c0) = genus2();
        let d = pullback_mult_n(&c0, 2).unwrap();
        assert_eq!(d.self_intersection(), rat(32));
        assert_eq!(pullback_mult_n(&c0, 1).unwrap(), c0);
        let lat4 = SurfaceLattice::abelian("C0", 6);
        let c = DivisorClass::generator(&lat4, 0);
        assert_eq!(pullback_mult_n(&c, 3).unwrap().self_intersection(), rat(486));
        assert!(pullback_mult_n(&c0, 0).is_err());
    }

    #[test]
    fn pullback_bilinear_scaling() {
        let (_, c0) = genus2();
        for n in 1..=4 {
            let d = pullback_mult_n(&c0, n).unwrap();
            let n4 = rat((n as i128).pow(4));
            assert_eq!(d.intersect(&d).unwrap(), n4 * c0.intersect(&c0).unwrap());
        }
    }

    #[test]
    fn strict_transform_two_routes_agree() {
        let lat = SurfaceLattice::abelian("T1", 32);
        let t1 = DivisorClass::generator(&lat, 0);
        let tn = pullback_mult_n(&t1, 3).unwrap();
        let (class, direct) = strict_transform(&tn, &[("origin".into(), 6)]).unwrap();
        assert_eq!(direct, rat(32 * 81 - 36));
        assert_eq!(class.self_intersection(), direct);
    }

    #[test]
    fn strict_transform_smooth_curve_marks() {
        let (_, c0) = genus2();
        let d = pullback_mult_n(&c0, 3).unwrap();
        let marks: Vec<(String, u32)> = (0..6).map(|i| (format!("p{i}"), 1)).collect();
        let (class, direct) = strict_transform(&d, &marks).unwrap();
        assert_eq!(direct, rat(2 * 81 - 6));
        assert_eq!(class.self_intersection(), direct);
    }

    #[test]
    fn strict_transform_no_marks() {
        let (_, c0) = genus2();
        let (class, direct) = strict_transform(&c0, &[]).unwrap();
        assert_eq!(direct, rat(2));
        assert_eq!(class.coeffs(), c0.coeffs());
    }

    #[test]
    fn strict_transform_rejects_duplicates() {
        let (_, c0) = genus2();
        let marks = vec![("p".to_string(), 2), ("p".to_string(), 3)];
        assert!(matches!(
            strict_transform(&c0, &marks),
            Err(Error::DuplicatePointId(_))
        ));
    }

    #[test]
    fn pullback_refuses_blown_lattice() {
        let (_, c0) = genus2();
        let (class, _) = strict_transform(&c0, &[("p".into(), 2)]).unwrap();
        assert!(matches!(pullback_mult_n(&class, 2), Err(Error::BlownLattice)));
    }

    #[test]
    fn quotient_selfint_examples() {
        assert_eq!(kummer_quotient_selfint(rat(2 * 81 - 6)).unwrap(), rat(78));
        assert_eq!(kummer_quotient_selfint(rat(6 * 16 - 16)).unwrap(), rat(40));
        assert_eq!(
            kummer_quotient_selfint(rat(32 * 81 - 36)).unwrap(),
            rat(16 * 81 - 18)
        );
        assert!(matches!(
            kummer_quotient_selfint(rat(7)),
            Err(Error::OddSelfIntersection(7))
        ));
    }

    #[test]
    fn orbit_count_examples() {
        assert_eq!(kummer_singular_orbit_count(16 * 16, 16).unwrap(), 120);
        assert_eq!(kummer_singular_orbit_count(81, 1).unwrap(), 40);
        assert_eq!(kummer_singular_orbit_count(16, 16).unwrap(), 0);
        assert!(kummer_singular_orbit_count(17, 16).is_err());
        assert!(kummer_singular_orbit_count(15, 16).is_err());
    }
}
