//! Sturm sequences and exact real-root counting and isolation.

use crate::arith::{Int, Rat, Sign};
use crate::error::{AlgebraError, Result};
use crate::upoly::{is_squarefree, UPolyQ, UPolyZ};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// A point of the extended real line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtendedPoint {
    MinusInfinity,
    Finite(Rat),
    PlusInfinity,
}

impl ExtendedPoint {
    pub fn finite(x: impl Into<Rat>) -> ExtendedPoint {
        ExtendedPoint::Finite(x.into())
    }
}

impl From<Rat> for ExtendedPoint {
    fn from(x: Rat) -> Self {
        ExtendedPoint::Finite(x)
    }
}

impl Ord for ExtendedPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedPoint::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (MinusInfinity, MinusInfinity) | (PlusInfinity, PlusInfinity) => Ordering::Equal,
            (MinusInfinity, _) | (_, PlusInfinity) => Ordering::Less,
            (_, MinusInfinity) | (PlusInfinity, _) => Ordering::Greater,
        }
    }
}

impl PartialOrd for ExtendedPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtendedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedPoint::MinusInfinity => f.write_str("-oo"),
            ExtendedPoint::Finite(x) => write!(f, "{x}"),
            ExtendedPoint::PlusInfinity => f.write_str("+oo"),
        }
    }
}

/// Sign of a polynomial at an extended point.
pub fn sign_at_point(p: &UPolyZ, x: &ExtendedPoint) -> Sign {
    match x {
        ExtendedPoint::Finite(r) => p.sign_at(r),
        ExtendedPoint::PlusInfinity => p.lc().sign(),
        ExtendedPoint::MinusInfinity => match p.degree() {
            None => Sign::Zero,
            Some(d) if d % 2 == 1 => -p.lc().sign(),
            Some(_) => p.lc().sign(),
        },
    }
}

/// Sturm sequence `p, p', -rem, ...`, each member reduced to its primitive
/// part by a positive scalar.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    polys: Vec<UPolyZ>,
}

impl SturmChain {
    pub fn new(p: &UPolyZ) -> Result<SturmChain> {
        if p.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut polys = vec![p.primitive()];
        let d = p.derivative();
        if !d.is_zero() {
            polys.push(d.primitive());
        }
        while polys.len() >= 2 {
            let n = polys.len();
            let r = polys[n - 2].positive_pseudo_rem(&polys[n - 1])?;
            if r.is_zero() {
                break;
            }
            polys.push(r.neg().primitive());
        }
        Ok(SturmChain { polys })
    }

    pub fn polys(&self) -> &[UPolyZ] {
        &self.polys
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Last member: a scalar multiple of `gcd(p, p')`.
    pub fn last(&self) -> &UPolyZ {
        self.polys.last().expect("chain is nonempty")
    }

    pub fn sign_variations(&self, x: &ExtendedPoint) -> usize {
        let mut count = 0;
        let mut prev = Sign::Zero;
        for p in &self.polys {
            let s = sign_at_point(p, x);
            if s == Sign::Zero {
                continue;
            }
            if prev != Sign::Zero && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Distinct real roots in the open interval `(lo, hi)`; finite endpoints
    /// must not be roots.
    pub fn count(&self, lo: &ExtendedPoint, hi: &ExtendedPoint) -> Result<usize> {
        if lo >= hi {
            return Err(AlgebraError::EmptyInterval);
        }
        for x in [lo, hi] {
            if let ExtendedPoint::Finite(r) = x {
                if self.polys[0].sign_at(r) == Sign::Zero {
                    return Err(AlgebraError::EndpointIsRoot(r.to_string()));
                }
            }
        }
        let (vl, vh) = (self.sign_variations(lo), self.sign_variations(hi));
        Ok(vl.checked_sub(vh).expect("Sturm variations are monotone"))
    }
}

pub fn sturm_chain(p: &UPolyZ) -> Result<SturmChain> {
    SturmChain::new(p)
}

pub fn sign_variations(c: &SturmChain, x: &ExtendedPoint) -> usize {
    c.sign_variations(x)
}

/// Inputs accepted by [`count_real_roots`].
pub trait RealRootInput {
    fn to_integer_form(&self) -> UPolyZ;
}

impl RealRootInput for UPolyZ {
    fn to_integer_form(&self) -> UPolyZ {
        self.clone()
    }
}

impl RealRootInput for UPolyQ {
    fn to_integer_form(&self) -> UPolyZ {
        self.clear_denominators().1
    }
}

/// Number of distinct real roots of `p` in `(lo, hi)`.
pub fn count_real_roots<P: RealRootInput>(
    p: &P,
    lo: &ExtendedPoint,
    hi: &ExtendedPoint,
) -> Result<usize> {
    sturm_chain(&p.to_integer_form())?.count(lo, hi)
}

/// `1 + max |a_i| / |a_n|`; every real root lies in `(-B, B)`.
pub fn cauchy_bound(p: &UPolyZ) -> Result<Rat> {
    let n = p.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    if n == 0 {
        return Err(AlgebraError::DegreeZero(p.var().to_string()));
    }
    let max = p.coeffs()[..n]
        .iter()
        .map(Int::abs)
        .max()
        .unwrap_or_else(Int::zero);
    Ok(Rat::one() + Rat::new(max, p.lc().abs())?)
}

/// An interval `(lo, hi)` holding `root_count` roots of some polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bracket {
    #[serde(with = "rat_string")]
    pub lo: Rat,
    #[serde(with = "rat_string")]
    pub hi: Rat,
    pub root_count: usize,
}

impl Bracket {
    /// Shrink by exact bisection until the width is at most `width`.
    pub fn refine(&self, chain: &SturmChain, width: &Rat) -> Result<Bracket> {
        let p = &chain.polys()[0];
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        while &(&hi - &lo) > width {
            let mid = nonroot_midpoint(p, &lo, &hi);
            let left = chain.count(&lo.clone().into(), &mid.clone().into())?;
            if left >= self.root_count {
                hi = mid;
            } else if left == 0 {
                lo = mid;
            } else {
                break;
            }
        }
        Ok(Bracket {
            lo,
            hi,
            root_count: self.root_count,
        })
    }

    pub fn disjoint(&self, other: &Bracket) -> bool {
        self.hi <= other.lo || other.hi <= self.lo
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lo, self.hi)
    }
}

/// The midpoint of `(lo, hi)`, nudged towards `lo` while it is a root.
fn nonroot_midpoint(p: &UPolyZ, lo: &Rat, hi: &Rat) -> Rat {
    let mut mid = lo.midpoint(hi);
    while p.sign_at(&mid) == Sign::Zero {
        mid = lo.midpoint(&mid);
    }
    mid
}

/// Isolate every positive root of a squarefree `p` with `p(0) != 0` into
/// disjoint brackets, sorted ascending.
pub fn isolate_positive_roots(p: &UPolyZ) -> Result<Vec<Bracket>> {
    if !is_squarefree(p) {
        return Err(AlgebraError::NotSquarefree);
    }
    if p.coeff(0).is_zero() {
        return Err(AlgebraError::ZeroIsRoot);
    }
    let chain = sturm_chain(p)?;
    let bound = cauchy_bound(p)?;
    let mut out = Vec::new();
    let mut stack = vec![(Rat::zero(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count(&lo.clone().into(), &hi.clone().into())?;
        match n {
            0 => {}
            1 => out.push(Bracket {
                lo,
                hi,
                root_count: 1,
            }),
            _ => {
                let mid = nonroot_midpoint(&chain.polys()[0], &lo, &hi);
                stack.push((mid.clone(), hi));
                stack.push((lo, mid));
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    Ok(out)
}

mod rat_string {
    use crate::arith::Rat;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(c: &[i64]) -> UPolyZ {
        UPolyZ::from_i64s("x", c)
    }

    fn fin(n: i64, d: i64) -> ExtendedPoint {
        ExtendedPoint::Finite(Rat::frac(n, d))
    }

    const NEG: ExtendedPoint = ExtendedPoint::MinusInfinity;
    const POS: ExtendedPoint = ExtendedPoint::PlusInfinity;

    fn from_roots(roots: &[i64]) -> UPolyZ {
        roots.iter().fold(z(&[1]), |acc, r| acc.mul(&z(&[-r, 1])))
    }

    #[test]
    fn chain_examples() {
        let c = sturm_chain(&z(&[-2, 0, 1])).unwrap();
        assert_eq!(c.polys(), &[z(&[-2, 0, 1]), z(&[0, 1]), z(&[1])]);
        assert_eq!(c.sign_variations(&NEG), 2);
        assert_eq!(c.sign_variations(&POS), 0);
        let c = sturm_chain(&z(&[1, 0, 1])).unwrap();
        assert_eq!(c.sign_variations(&NEG), c.sign_variations(&POS));
        let c = sturm_chain(&z(&[1, -2, 1])).unwrap();
        assert_eq!(c.last(), &z(&[-1, 1]));
        assert_eq!(c.count(&NEG, &POS).unwrap(), 1);
        assert_eq!(sturm_chain(&z(&[])), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn negative_content_keeps_signs() {
        let p = z(&[6, 0, -3]);
        let c = sturm_chain(&p).unwrap();
        assert_eq!(c.polys()[0], z(&[2, 0, -1]));
        assert_eq!(c.count(&NEG, &POS).unwrap(), 2);
    }

    #[test]
    fn count_errors() {
        let p = z(&[-2, 0, 1]);
        assert!(matches!(
            count_real_roots(&from_roots(&[1, 2]), &fin(1, 1), &POS),
            Err(AlgebraError::EndpointIsRoot(_))
        ));
        assert_eq!(
            count_real_roots(&p, &POS, &NEG),
            Err(AlgebraError::EmptyInterval)
        );
        assert_eq!(
            count_real_roots(&p, &fin(0, 1), &fin(0, 1)),
            Err(AlgebraError::EmptyInterval)
        );
    }

    #[test]
    fn rational_input() {
        let q = UPolyQ::new("x", vec![Rat::frac(-1, 4), Rat::zero(), Rat::one()]);
        assert_eq!(count_real_roots(&q, &NEG, &POS).unwrap(), 2);
        assert_eq!(count_real_roots(&q, &fin(0, 1), &POS).unwrap(), 1);
    }

    #[test]
    fn cauchy_examples() {
        assert_eq!(cauchy_bound(&z(&[-2, 0, 1])).unwrap(), Rat::from(3));
        assert_eq!(cauchy_bound(&z(&[-10, 1])).unwrap(), Rat::from(11));
        assert_eq!(cauchy_bound(&z(&[])), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn isolate_examples() {
        let b = isolate_positive_roots(&z(&[-2, 0, 1])).unwrap();
        assert_eq!(b.len(), 1);
        assert!(b[0].lo < Rat::frac(141, 100) && Rat::frac(142, 100) < b[0].hi);
        // roots 1 and 2 land on bisection midpoints of (0, 4)
        let b = isolate_positive_roots(&from_roots(&[1, 2, -3])).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].lo < Rat::one() && Rat::one() < b[0].hi && b[0].hi <= b[1].lo);
        assert_eq!(
            isolate_positive_roots(&from_roots(&[1, 1])),
            Err(AlgebraError::NotSquarefree)
        );
        assert_eq!(
            isolate_positive_roots(&from_roots(&[0, 1])),
            Err(AlgebraError::ZeroIsRoot)
        );
        let chain = sturm_chain(&z(&[-2, 0, 1])).unwrap();
        let r = b[0]
            .refine(
                &sturm_chain(&from_roots(&[1, 2, -3])).unwrap(),
                &Rat::frac(1, 64),
            )
            .unwrap();
        assert!(&r.hi - &r.lo <= Rat::frac(1, 64) && r.lo < Rat::one() && Rat::one() < r.hi);
        let s = isolate_positive_roots(&z(&[-2, 0, 1])).unwrap()[0]
            .refine(&chain, &Rat::frac(1, 1000))
            .unwrap();
        assert!(s.lo < Rat::frac(14143, 10000) && Rat::frac(14142, 10000) < s.hi);
    }

    fn rat_strategy() -> impl Strategy<Value = Rat> {
        (-45i64..=45, 1i64..=4).prop_map(|(n, d)| Rat::frac(2 * n + 1, 2 * d))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn counts_match_known_roots(
            roots in prop::collection::btree_set(-20i64..=20, 1..8),
            a in rat_strategy(),
            b in rat_strategy(),
        ) {
            let roots: Vec<i64> = roots.into_iter().collect();
            let p = from_roots(&roots);
            prop_assert_eq!(count_real_roots(&p, &NEG, &POS).unwrap(), roots.len());
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            prop_assume!(lo < hi);
            let expected = roots.iter().filter(|&&r| lo < Rat::from(r) && Rat::from(r) < hi).count();
            prop_assert_eq!(count_real_roots(&p, &lo.into(), &hi.into()).unwrap(), expected);
        }

        #[test]
        fn repeated_roots_counted_once(roots in prop::collection::vec(-6i64..=6, 1..7)) {
            let p = from_roots(&roots);
            let distinct: std::collections::BTreeSet<_> = roots.iter().collect();
            prop_assert_eq!(count_real_roots(&p, &NEG, &POS).unwrap(), distinct.len());
        }

        #[test]
        fn additive_over_cuts(roots in prop::collection::vec(-20i64..=20, 1..7), cut in rat_strategy(), k in 1i64..=5) {
            let p = from_roots(&roots).mul(&z(&[k, 0, 1]));
            let total = count_real_roots(&p, &NEG, &POS).unwrap();
            let c: ExtendedPoint = cut.into();
            prop_assert_eq!(
                count_real_roots(&p, &NEG, &c).unwrap() + count_real_roots(&p, &c, &POS).unwrap(),
                total
            );
        }

        #[test]
        fn positive_scaling_invariant(roots in prop::collection::vec(-20i64..=20, 1..7), k in 1i64..=50, a in rat_strategy()) {
            let p = from_roots(&roots);
            let q = p.scale(&Int::from(k));
            let x: ExtendedPoint = a.into();
            prop_assert_eq!(sturm_chain(&p).unwrap(), sturm_chain(&q).unwrap());
            prop_assert_eq!(count_real_roots(&p, &x, &POS).unwrap(), count_real_roots(&q, &x, &POS).unwrap());
        }

        #[test]
        fn isolation_brackets_certify(roots in prop::collection::btree_set(-12i64..=12, 1..7), extra in 1i64..=4) {
            prop_assume!(!roots.contains(&0));
            let roots: Vec<i64> = roots.into_iter().collect();
            let p = from_roots(&roots).mul(&z(&[-extra, 0, 5]));
            let brackets = isolate_positive_roots(&p).unwrap();
            let chain = sturm_chain(&p).unwrap();
            for (i, b) in brackets.iter().enumerate() {
                prop_assert!(b.lo < b.hi);
                prop_assert_eq!(chain.count(&b.lo.clone().into(), &b.hi.clone().into()).unwrap(), 1);
                for other in &brackets[i + 1..] {
                    prop_assert!(b.disjoint(other));
                }
            }
            let positive = chain.count(&fin(0, 1), &POS).unwrap();
            prop_assert_eq!(brackets.len(), positive);
            prop_assert_eq!(positive, roots.iter().filter(|&&r| r > 0).count() + 1);
        }
    }
}
