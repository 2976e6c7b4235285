//! Dense univariate polynomials over `Int` and `Rat`.
//!
//! Coefficients are stored ascending by exponent with trailing zeros trimmed,
//! so the zero polynomial is the empty vector and has no degree (`None`).

use crate::arith::{int_gcd, Int, Rat, Sign};
use crate::error::{AlgebraError, Result};
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Scalars a dense polynomial can be built over.
pub trait Coefficient:
    Clone + Eq + fmt::Debug + fmt::Display + Zero + One + Send + Sync + 'static
{
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// Division that must be exact in the coefficient ring.
    fn div_exact(&self, rhs: &Self) -> Result<Self>;
    fn sign(&self) -> Sign;
    fn to_rat(&self) -> Rat;
    fn from_int(v: &Int) -> Self;
}

impl Coefficient for Int {
    fn add_ref(&self, rhs: &Int) -> Int {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Int) -> Int {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Int) -> Int {
        self * rhs
    }
    fn neg_ref(&self) -> Int {
        -self
    }
    fn div_exact(&self, rhs: &Int) -> Result<Int> {
        self.exact_div(rhs)
    }
    fn sign(&self) -> Sign {
        Int::sign(self)
    }
    fn to_rat(&self) -> Rat {
        Rat::from(self.clone())
    }
    fn from_int(v: &Int) -> Int {
        v.clone()
    }
}

impl Coefficient for Rat {
    fn add_ref(&self, rhs: &Rat) -> Rat {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Rat) -> Rat {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Rat) -> Rat {
        self * rhs
    }
    fn neg_ref(&self) -> Rat {
        -self
    }
    fn div_exact(&self, rhs: &Rat) -> Result<Rat> {
        self.checked_div(rhs)
    }
    fn sign(&self) -> Sign {
        Rat::sign(self)
    }
    fn to_rat(&self) -> Rat {
        self.clone()
    }
    fn from_int(v: &Int) -> Rat {
        Rat::from(v.clone())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UPoly<T> {
    coeffs: Vec<T>,
    var: String,
}

pub type UPolyZ = UPoly<Int>;
pub type UPolyQ = UPoly<Rat>;

impl<T: Coefficient> UPoly<T> {
    /// Build from ascending coefficients; trailing zeros are trimmed.
    pub fn new(var: impl Into<String>, mut coeffs: Vec<T>) -> UPoly<T> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly {
            coeffs,
            var: var.into(),
        }
    }

    pub fn zero(var: impl Into<String>) -> UPoly<T> {
        UPoly::new(var, Vec::new())
    }

    pub fn constant(var: impl Into<String>, c: T) -> UPoly<T> {
        UPoly::new(var, vec![c])
    }

    pub fn one(var: impl Into<String>) -> UPoly<T> {
        UPoly::constant(var, T::one())
    }

    /// `c * var^k`.
    pub fn monomial(var: impl Into<String>, c: T, k: usize) -> UPoly<T> {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        UPoly::new(var, coeffs)
    }

    /// The polynomial `var`.
    pub fn x(var: impl Into<String>) -> UPoly<T> {
        UPoly::monomial(var, T::one(), 1)
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `var^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    /// Exponent of the lowest nonzero term.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn with_var(mut self, var: impl Into<String>) -> UPoly<T> {
        self.var = var.into();
        self
    }

    pub fn neg(&self) -> UPoly<T> {
        UPoly {
            coeffs: self.coeffs.iter().map(T::neg_ref).collect(),
            var: self.var.clone(),
        }
    }

    pub fn add(&self, rhs: &UPoly<T>) -> UPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add_ref(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        UPoly::new(self.var.clone(), coeffs)
    }

    pub fn sub(&self, rhs: &UPoly<T>) -> UPoly<T> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &UPoly<T>) -> UPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero(self.var.clone());
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        UPoly::new(self.var.clone(), out)
    }

    pub fn scale(&self, c: &T) -> UPoly<T> {
        UPoly::new(
            self.var.clone(),
            self.coeffs.iter().map(|a| a.mul_ref(c)).collect(),
        )
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> UPoly<T> {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UPoly::new(self.var.clone(), coeffs)
    }

    pub fn pow(&self, mut e: u32) -> UPoly<T> {
        let mut base = self.clone();
        let mut acc = UPoly::one(self.var.clone());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UPoly<T> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul_ref(&T::from_int(&Int::from(i))))
            .collect();
        UPoly::new(self.var.clone(), coeffs)
    }

    /// Exact Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| &acc * x + c.to_rat())
    }

    /// Quotient `q` with `self = q * divisor` exactly, computed in the
    /// coefficient ring.
    pub fn exact_div(&self, divisor: &UPoly<T>) -> Result<UPoly<T>> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let Some(nd) = self.degree() else {
            return Ok(UPoly::zero(self.var.clone()));
        };
        if nd < dd {
            return Err(AlgebraError::NotDivisible {
                remainder_degree: nd,
            });
        }
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let q = top.div_exact(&lc).map_err(|_| AlgebraError::NotDivisible {
                remainder_degree: k + dd,
            })?;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].sub_ref(&q.mul_ref(dc));
            }
            quot[k] = q;
        }
        if let Some(r) = rem.iter().rposition(|c| !c.is_zero()) {
            return Err(AlgebraError::NotDivisible {
                remainder_degree: r,
            });
        }
        Ok(UPoly::new(self.var.clone(), quot))
    }

    pub fn to_rat_poly(&self) -> UPolyQ {
        UPoly::new(
            self.var.clone(),
            self.coeffs.iter().map(Coefficient::to_rat).collect(),
        )
    }
}

/// Free-function forms of the core operations.
pub fn up_eval<T: Coefficient>(p: &UPoly<T>, x: &Rat) -> Rat {
    p.eval(x)
}

pub fn up_derivative<T: Coefficient>(p: &UPoly<T>) -> UPoly<T> {
    p.derivative()
}

pub fn up_exact_div<T: Coefficient>(f: &UPoly<T>, g: &UPoly<T>) -> Result<UPoly<T>> {
    f.exact_div(g)
}

impl UPolyZ {
    /// Build from small integer coefficients, ascending.
    pub fn from_i64s(var: impl Into<String>, coeffs: &[i64]) -> UPolyZ {
        UPoly::new(var, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// Positive content and the primitive part (which keeps the sign of `self`).
    pub fn content_primitive(&self) -> Result<(Int, UPolyZ)> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let content =
            self.coeffs.iter().fold(
                Int::zero(),
                |g, c| if g.is_one() { g } else { int_gcd(&g, c) },
            );
        if content.is_one() {
            return Ok((content, self.clone()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                c.exact_div(&content)
                    .expect("content divides every coefficient")
            })
            .collect();
        Ok((content, UPoly::new(self.var.clone(), coeffs)))
    }

    pub fn content(&self) -> Int {
        self.content_primitive()
            .map(|(c, _)| c)
            .unwrap_or_else(|_| Int::zero())
    }

    /// Primitive part (zero maps to zero).
    pub fn primitive(&self) -> UPolyZ {
        self.content_primitive()
            .map(|(_, p)| p)
            .unwrap_or_else(|_| self.clone())
    }

    /// Primitive part normalized to a positive leading coefficient.
    pub fn primitive_positive(&self) -> UPolyZ {
        let p = self.primitive();
        if p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// A strictly positive integer multiple of the remainder of `self` by
    /// `divisor` over Q. Positivity of the multiplier matters for Sturm chains.
    pub fn positive_pseudo_rem(&self, divisor: &UPolyZ) -> Result<UPolyZ> {
        let dd = divisor.degree().ok_or(AlgebraError::DivisionByZero)?;
        let lc = divisor.lc();
        let mut rem = self.coeffs.clone();
        let mut negated = false;
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let top = rem.last().expect("nonempty").clone();
            let g = int_gcd(&top, &lc);
            let mult = lc.exact_div(&g).expect("gcd divides");
            let q = top.exact_div(&g).expect("gcd divides");
            if mult.is_negative() {
                negated = !negated;
            }
            if !mult.is_one() {
                for c in rem.iter_mut() {
                    *c *= &mult;
                }
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * dc;
            }
            debug_assert!(rem.last().expect("nonempty").is_zero());
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        let r = UPoly::new(self.var.clone(), rem);
        Ok(if negated { r.neg() } else { r })
    }

    /// Sign of `self` at `num/den` (`den > 0`), via the homogenized integer
    /// form `sum a_i num^i den^(n-i)`.
    pub fn sign_at(&self, x: &Rat) -> Sign {
        self.homogeneous_value(x.numer(), x.denom()).sign()
    }

    /// `den^deg * p(num/den)`, an integer.
    pub fn homogeneous_value(&self, num: &Int, den: &Int) -> Int {
        let mut acc = Int::zero();
        let mut den_pow = Int::one();
        for c in self.coeffs.iter().rev() {
            acc *= num;
            acc += c * &den_pow;
            den_pow *= den;
        }
        acc
    }

    /// Divide out `factor` as many times as possible; returns the cofactor
    /// and the multiplicity.
    pub fn divide_out(&self, factor: &UPolyZ) -> Result<(UPolyZ, u32)> {
        if factor.is_constant() {
            return Err(AlgebraError::DegreeZero(factor.var.clone()));
        }
        let mut cur = self.clone();
        let mut mult = 0;
        loop {
            match cur.exact_div(factor) {
                Ok(q) if !cur.is_zero() => {
                    cur = q;
                    mult += 1;
                }
                _ => return Ok((cur, mult)),
            }
        }
    }

    /// Squarefree decomposition (Yun): `self = unit * prod f_i^i` with each
    /// `f_i` primitive, squarefree, pairwise coprime, positive leading
    /// coefficient. Only nonconstant parts are returned.
    pub fn squarefree_decomposition(&self) -> Result<(Int, Vec<(UPolyZ, u32)>)> {
        let (_, prim) = self.content_primitive()?;
        let mut parts = Vec::new();
        if prim.degree() > Some(0) {
            let deriv = prim.derivative();
            let b = up_gcd(&prim, &deriv);
            let mut c = prim.exact_div(&b)?;
            let mut d = deriv.exact_div(&b)?.sub(&c.derivative());
            let mut i = 1;
            while c.degree() > Some(0) {
                let a = up_gcd(&c, &d);
                if a.degree() > Some(0) {
                    parts.push((a.clone(), i));
                }
                c = c.exact_div(&a)?;
                d = d.exact_div(&a)?.sub(&c.derivative());
                i += 1;
            }
        }
        let mut product = UPoly::one(self.var.clone());
        for (f, e) in &parts {
            product = product.mul(&f.pow(*e));
        }
        let unit = self.exact_div(&product)?;
        debug_assert!(unit.is_constant());
        Ok((unit.lc(), parts))
    }
}

impl UPolyQ {
    /// `(m, m * self)` with `m` the positive lcm of denominators, so the
    /// integer polynomial has the same roots and signs.
    pub fn clear_denominators(&self) -> (Int, UPolyZ) {
        let m = self
            .coeffs
            .iter()
            .fold(Int::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                (c.numer() * &m)
                    .exact_div(c.denom())
                    .expect("lcm is a multiple of every denominator")
            })
            .collect();
        (m, UPoly::new(self.var.clone(), coeffs))
    }

    /// Integer coefficients, if all are integral.
    pub fn to_integer_poly(&self) -> Option<UPolyZ> {
        let coeffs = self
            .coeffs
            .iter()
            .map(Rat::to_int)
            .collect::<Option<Vec<_>>>()?;
        Some(UPoly::new(self.var.clone(), coeffs))
    }
}

/// Content and primitive part.
pub fn up_content_primitive(p: &UPolyZ) -> Result<(Int, UPolyZ)> {
    p.content_primitive()
}

/// Primitive gcd with positive leading coefficient (primitive PRS).
/// `gcd(0, 0)` is the zero polynomial.
pub fn up_gcd(f: &UPolyZ, g: &UPolyZ) -> UPolyZ {
    if f.is_zero() {
        return g.primitive_positive();
    }
    if g.is_zero() {
        return f.primitive_positive();
    }
    let (mut a, mut b) = (f.primitive(), g.primitive());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.is_constant() {
            return UPoly::one(f.var.clone());
        }
        let r = a.positive_pseudo_rem(&b).expect("b is nonzero");
        if r.is_zero() {
            return b.primitive_positive();
        }
        a = b;
        b = r.primitive();
    }
}

/// `p / gcd(p, p')`, primitive with positive leading coefficient.
pub fn up_squarefree_part(p: &UPolyZ) -> Result<UPolyZ> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let g = up_gcd(p, &p.derivative());
    Ok(p.primitive().exact_div(&g)?.primitive_positive())
}

/// `true` iff `gcd(p, p')` is constant.
pub fn is_squarefree(p: &UPolyZ) -> bool {
    !p.is_zero() && up_gcd(p, &p.derivative()).is_constant()
}

/// All rational roots, by the rational-root theorem with exact evaluation.
pub fn up_rational_roots(p: &UPolyZ) -> Result<BTreeSet<Rat>> {
    let Some(v) = p.valuation() else {
        return Err(AlgebraError::ZeroPolynomial);
    };
    let mut roots = BTreeSet::new();
    if v > 0 {
        roots.insert(Rat::zero());
    }
    let stripped = UPoly::new(p.var.clone(), p.coeffs[v..].to_vec());
    if stripped.is_constant() {
        return Ok(roots);
    }
    let numerators = stripped.coeffs[0].positive_divisors();
    let denominators = stripped.lc().positive_divisors();
    for d in &denominators {
        for n in &numerators {
            if !int_gcd(n, d).is_one() {
                continue;
            }
            for cand in [n.clone(), -n] {
                if stripped.homogeneous_value(&cand, d).is_zero() {
                    roots.insert(Rat::new(cand, d.clone())?);
                }
            }
        }
    }
    Ok(roots)
}

impl<T: Coefficient> fmt::Display for UPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.sign() == Sign::Negative;
            let mag = if negative { c.neg_ref() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "{}", self.var)?,
                (1, false) => write!(f, "{mag}*{}", self.var)?,
                (_, true) => write!(f, "{}^{k}", self.var)?,
                (_, false) => write!(f, "{mag}*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

impl<T: Coefficient> fmt::Debug for UPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
