//! Resultants and discriminants through Sylvester matrices.
//!
//! Two independent routes compute `Res_v(f, g)`:
//!
//! * [`ResultantMethod::Bareiss`] runs fraction-free elimination directly on
//!   the Sylvester matrix with polynomial entries.
//! * [`ResultantMethod::Interpolation`] evaluates the remaining variables on an
//!   integer grid whose size exceeds a degree bound read off the matrix,
//!   takes integer determinants and interpolates back.
//!
//! The grid evaluations are independent and run on a rayon pool of the
//! requested width; results are collected in grid order, so the output does
//! not depend on the width.
//!
//! Entries are specialized from the formal Sylvester matrix, not rebuilt from
//! the specialized polynomials, so abscissae where a leading coefficient
//! vanishes are still valid samples of the resultant polynomial.

use crate::arith::{Int, Rat};
use crate::error::{AlgebraError, Result};
use crate::mpoly::{Exponents, MPoly};
use crate::upoly::UPolyQ;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Entries of a matrix that fraction-free elimination can run on.
pub trait BareissRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn mul_elem(&self, rhs: &Self) -> Self;
    fn sub_elem(&self, rhs: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    fn exact_div_elem(&self, rhs: &Self) -> Result<Self>;
}

impl BareissRing for Int {
    fn zero_like(&self) -> Int {
        Int::zero()
    }
    fn one_like(&self) -> Int {
        Int::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, rhs: &Int) -> Int {
        self * rhs
    }
    fn sub_elem(&self, rhs: &Int) -> Int {
        self - rhs
    }
    fn neg_elem(&self) -> Int {
        -self
    }
    fn exact_div_elem(&self, rhs: &Int) -> Result<Int> {
        self.exact_div(rhs)
    }
}

impl BareissRing for MPoly {
    fn zero_like(&self) -> MPoly {
        MPoly::zero(self.vars())
    }
    fn one_like(&self) -> MPoly {
        MPoly::one(self.vars())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn mul_elem(&self, rhs: &MPoly) -> MPoly {
        self * rhs
    }
    fn sub_elem(&self, rhs: &MPoly) -> MPoly {
        self - rhs
    }
    fn neg_elem(&self) -> MPoly {
        self.neg()
    }
    fn exact_div_elem(&self, rhs: &MPoly) -> Result<MPoly> {
        self.exact_div(rhs)
    }
}

/// Fraction-free Gaussian elimination (Bareiss) over any integral domain.
/// Every division is exact; an inexact one is reported as an error.
pub fn bareiss_det_generic<T: BareissRing>(mut m: Vec<Vec<T>>, one: &T) -> Result<T> {
    let n = m.len();
    if n == 0 {
        return Ok(one.one_like());
    }
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    let mut negate = false;
    let mut prev = one.one_like();
    for k in 0..n - 1 {
        if m[k][k].is_zero_elem() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) else {
                return Ok(one.zero_like());
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in bottom.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let t = row[j]
                    .mul_elem(pivot)
                    .sub_elem(&lead.mul_elem(&pivot_row[j]));
                row[j] = t.exact_div_elem(&prev)?;
            }
            row[k] = lead.zero_like();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg_elem() } else { det })
}

/// Exact integer determinant.
pub fn bareiss_det(m: &[Vec<Int>]) -> Int {
    bareiss_det_generic(m.to_vec(), &Int::one()).expect("Bareiss divisions are exact over Z")
}

/// Sylvester matrix of `f` and `g` with respect to one variable. Entries are
/// polynomials in the remaining variables.
#[derive(Debug, Clone)]
pub struct SylvesterMatrix {
    var: String,
    /// Remaining variables, in the order of the inputs' variable list.
    vars: Vec<String>,
    /// Coefficients of `f` in `var`, ascending; length `deg_var f + 1`.
    f: Vec<MPoly>,
    g: Vec<MPoly>,
}

impl SylvesterMatrix {
    pub fn new(f: &MPoly, g: &MPoly, var: &str) -> Result<SylvesterMatrix> {
        if f.vars() != g.vars() {
            return Err(AlgebraError::VariableMismatch {
                left: f.vars().to_vec(),
                right: g.vars().to_vec(),
            });
        }
        let fc = f.coefficients_in(var)?;
        let gc = g.coefficients_in(var)?;
        if fc.len() < 2 {
            return Err(AlgebraError::DegreeZero(var.to_string()));
        }
        if gc.len() < 2 {
            return Err(AlgebraError::DegreeZero(var.to_string()));
        }
        let vars = fc[0].vars().to_vec();
        Ok(SylvesterMatrix {
            var: var.to_string(),
            vars,
            f: fc,
            g: gc,
        })
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// Variables of the entries (and of the resultant).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn deg_f(&self) -> usize {
        self.f.len() - 1
    }

    pub fn deg_g(&self) -> usize {
        self.g.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.deg_f() + self.deg_g()
    }

    /// Fill the banded layout from coefficient lists (ascending).
    fn layout<T: Clone>(&self, f: &[T], g: &[T], zero: &T) -> Vec<Vec<T>> {
        let (m, n) = (self.deg_f(), self.deg_g());
        let dim = m + n;
        let mut rows = vec![vec![zero.clone(); dim]; dim];
        for i in 0..n {
            for j in 0..=m {
                rows[i][i + j] = f[m - j].clone();
            }
        }
        for i in 0..m {
            for j in 0..=n {
                rows[n + i][i + j] = g[n - j].clone();
            }
        }
        rows
    }

    pub fn entries(&self) -> Vec<Vec<MPoly>> {
        self.layout(&self.f, &self.g, &MPoly::zero(&self.vars))
    }

    /// Integer matrix at a point of the remaining variables.
    pub fn specialize(&self, point: &[Int]) -> Vec<Vec<Int>> {
        let f: Vec<Int> = self.f.iter().map(|c| c.eval_int(point)).collect();
        let g: Vec<Int> = self.g.iter().map(|c| c.eval_int(point)).collect();
        self.layout(&f, &g, &Int::zero())
    }

    /// Upper bound on the degree of the determinant in each remaining
    /// variable: the smaller of the row-wise and column-wise sums of maximal
    /// entry degrees.
    pub fn degree_bounds(&self) -> Vec<usize> {
        let entries = self.entries();
        (0..self.vars.len())
            .map(|vi| {
                let deg = |p: &MPoly| -> usize {
                    p.terms().map(|(e, _)| e[vi] as usize).max().unwrap_or(0)
                };
                let row_sum: usize = entries
                    .iter()
                    .map(|row| row.iter().map(deg).max().unwrap_or(0))
                    .sum();
                let col_sum: usize = (0..self.dim())
                    .map(|j| entries.iter().map(|row| deg(&row[j])).max().unwrap_or(0))
                    .sum();
                row_sum.min(col_sum)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultantMethod {
    Bareiss,
    Interpolation,
}

#[derive(Debug, Clone, Copy)]
pub struct ElimOptions {
    pub method: ResultantMethod,
    /// Worker threads for the interpolation route.
    pub jobs: usize,
}

impl Default for ElimOptions {
    fn default() -> Self {
        ElimOptions {
            method: ResultantMethod::Bareiss,
            jobs: 1,
        }
    }
}

impl ElimOptions {
    pub fn interpolation(jobs: usize) -> ElimOptions {
        ElimOptions {
            method: ResultantMethod::Interpolation,
            jobs: jobs.max(1),
        }
    }
}

/// `Res_var(f, g)` by fraction-free Bareiss on the Sylvester matrix.
pub fn resultant(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    resultant_with(f, g, var, &ElimOptions::default())
}

pub fn resultant_with(f: &MPoly, g: &MPoly, var: &str, opts: &ElimOptions) -> Result<MPoly> {
    let syl = SylvesterMatrix::new(f, g, var)?;
    match opts.method {
        ResultantMethod::Bareiss => {
            let one = MPoly::one(syl.vars());
            bareiss_det_generic(syl.entries(), &one)
        }
        ResultantMethod::Interpolation => resultant_by_interpolation(&syl, opts.jobs),
    }
}

fn with_pool<R: Send>(jobs: usize, work: impl FnOnce() -> R + Send) -> R {
    match rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
    {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    }
}

fn resultant_by_interpolation(syl: &SylvesterMatrix, jobs: usize) -> Result<MPoly> {
    let dims: Vec<usize> = syl.degree_bounds().into_iter().map(|b| b + 1).collect();
    let total: usize = dims.iter().product();
    let points: Vec<Vec<Int>> = (0..total)
        .map(|mut idx| {
            let mut pt = vec![Int::zero(); dims.len()];
            for (k, d) in dims.iter().enumerate().rev() {
                pt[k] = Int::from(idx % d);
                idx /= d;
            }
            pt
        })
        .collect();
    let values: Vec<Int> = with_pool(jobs, || {
        points
            .par_iter()
            .map(|pt| bareiss_det(&syl.specialize(pt)))
            .collect()
    });
    let terms = interpolate_grid(&values, &dims)?;
    MPoly::from_terms(syl.vars(), terms)
}

/// Tensor-product interpolation of integer samples on the grid
/// `0..dims[0] x 0..dims[1] x ...` (row-major). Every intermediate
/// coefficient must be an integer.
fn interpolate_grid(values: &[Int], dims: &[usize]) -> Result<Vec<(Exponents, Int)>> {
    let Some((&first, rest)) = dims.split_first() else {
        return Ok(vec![(Vec::new(), values[0].clone())]);
    };
    let stride: usize = rest.iter().product();
    let abscissae: Vec<Rat> = (0..first).map(|i| Rat::from(i as i64)).collect();
    // coeffs[k][r] = coefficient of x^k at rest-index r
    let mut coeffs: Vec<Vec<Int>> = vec![vec![Int::zero(); stride]; first];
    for r in 0..stride {
        let pts: Vec<(Rat, Rat)> = (0..first)
            .map(|i| {
                (
                    abscissae[i].clone(),
                    Rat::from(values[i * stride + r].clone()),
                )
            })
            .collect();
        let poly = interpolate(&pts, first - 1)?;
        for (k, c) in poly.coeffs().iter().enumerate() {
            coeffs[k][r] = c
                .to_int()
                .ok_or_else(|| AlgebraError::NonIntegral(c.to_string()))?;
        }
    }
    let mut out = Vec::new();
    for (k, slice) in coeffs.iter().enumerate() {
        if slice.iter().all(Int::is_zero) {
            continue;
        }
        for (mut e, c) in interpolate_grid(slice, rest)? {
            e.insert(0, k as u32);
            out.push((e, c));
        }
    }
    Ok(out)
}

/// Newton interpolation over Q: the unique polynomial of degree at most
/// `degree_bound` through the points. Points beyond the first
/// `degree_bound + 1` must lie on that polynomial.
pub fn interpolate(points: &[(Rat, Rat)], degree_bound: usize) -> Result<UPolyQ> {
    let mut seen = std::collections::BTreeSet::new();
    for (x, _) in points {
        if !seen.insert(x) {
            return Err(AlgebraError::DuplicateAbscissa(x.to_string()));
        }
    }
    if points.len() < degree_bound + 1 {
        return Err(AlgebraError::DegreeExceeded(degree_bound));
    }
    let n = degree_bound + 1;
    let xs: Vec<&Rat> = points[..n].iter().map(|(x, _)| x).collect();
    let mut dd: Vec<Rat> = points[..n].iter().map(|(_, y)| y.clone()).collect();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = if num.is_zero() {
                num
            } else {
                num / (xs[i] - xs[i - j])
            };
        }
    }
    // Expand the Newton form by Horner in the monomial basis.
    let mut acc: Vec<Rat> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc <- acc * (x - xs[i]) + dd[i]
        let mut next = vec![Rat::zero(); acc.len() + 1];
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * xs[i];
        }
        next[0] += &dd[i];
        acc = next;
    }
    let poly = UPolyQ::new("x", acc);
    for (x, y) in &points[n..] {
        if &poly.eval(x) != y {
            return Err(AlgebraError::DegreeExceeded(degree_bound));
        }
    }
    Ok(poly)
}

/// `(-1)^(n(n-1)/2) Res_var(f, f') / lc_var(f)` with `n = deg_var f`.
pub fn discriminant(f: &MPoly, var: &str) -> Result<MPoly> {
    discriminant_with(f, var, &ElimOptions::default())
}

pub fn discriminant_with(f: &MPoly, var: &str, opts: &ElimOptions) -> Result<MPoly> {
    let coeffs = f.coefficients_in(var)?;
    let n = coeffs.len().saturating_sub(1);
    if n < 2 {
        return Err(AlgebraError::DegreeZero(var.to_string()));
    }
    let i = f.var_index(var)?;
    let deriv = MPoly::from_terms(
        f.vars(),
        f.terms().filter(|(e, _)| e[i] > 0).map(|(e, c)| {
            let mut e = e.clone();
            let k = e[i];
            e[i] -= 1;
            (e, c * &Int::from(k))
        }),
    )?;
    let res = resultant_with(f, &deriv, var, opts)?;
    let lc = coeffs[n].clone();
    let quotient = res.exact_div(&lc)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 {
        quotient.neg()
    } else {
        quotient
    })
}

/// Resultant of two univariate integer polynomials via one integer
/// determinant.
pub fn univariate_resultant(f: &crate::upoly::UPolyZ, g: &crate::upoly::UPolyZ) -> Result<Int> {
    let fm = MPoly::from_upoly(f);
    let gm = MPoly::from_upoly(&g.clone().with_var(f.var()));
    let syl = SylvesterMatrix::new(&fm, &gm, f.var())?;
    Ok(bareiss_det(&syl.specialize(&[])))
}

/// Discriminant of a univariate integer polynomial of degree >= 1.
pub fn univariate_discriminant(f: &crate::upoly::UPolyZ) -> Result<Int> {
    let n = f.degree().ok_or(AlgebraError::ZeroPolynomial)?;
    match n {
        0 => Err(AlgebraError::DegreeZero(f.var().to_string())),
        1 => Ok(Int::one()),
        _ => {
            let res = univariate_resultant(f, &f.derivative())?;
            let q = res.exact_div(&f.lc())?;
            Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
        }
    }
}

/// Map of per-variable degree bounds, for reports.
pub fn degree_bound_map(syl: &SylvesterMatrix) -> BTreeMap<String, usize> {
    syl.vars()
        .iter()
        .cloned()
        .zip(syl.degree_bounds())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::upoly::{up_gcd, UPolyZ};
    use proptest::prelude::*;

    fn p(vars: &[&str], s: &str) -> MPoly {
        MPoly::parse(vars, s).unwrap()
    }

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect()
    }

    /// Laplace expansion along the first row; the independent oracle.
    fn cofactor_det(a: &[Vec<i64>]) -> i128 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        if n == 1 {
            return a[0][0] as i128;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] as i128 * cofactor_det(&minor)
            })
            .sum()
    }

    #[test]
    fn bareiss_examples() {
        assert_eq!(bareiss_det(&m(&[&[1, 0], &[0, 1]])), Int::one());
        assert_eq!(bareiss_det(&m(&[&[2, 1], &[1, 1]])), Int::one());
        assert_eq!(bareiss_det(&m(&[&[0, 1], &[1, 0]])), Int::from(-1));
        assert_eq!(bareiss_det(&m(&[&[1, 2], &[2, 4]])), Int::zero());
        assert_eq!(bareiss_det(&[]), Int::one());
    }

    #[test]
    fn resultant_examples() {
        let v = ["x"];
        let r = resultant(&p(&v, "x - 2"), &p(&v, "x - 3"), "x").unwrap();
        assert_eq!(r.constant_term(), Int::from(-1));
        let r = resultant(&p(&v, "x^2 - 1"), &p(&v, "x - 1"), "x").unwrap();
        assert!(r.is_zero());
        assert!(matches!(
            resultant(&p(&v, "3"), &p(&v, "x"), "x"),
            Err(AlgebraError::DegreeZero(_))
        ));
    }

    #[test]
    fn discriminant_closed_forms() {
        let v = ["x", "b", "c"];
        let d = discriminant(&p(&v, "x^2 + b*x + c"), "x").unwrap();
        assert_eq!(d, p(&["b", "c"], "b^2 - 4*c"));
        let v = ["x", "p", "q"];
        let d = discriminant(&p(&v, "x^3 + p*x + q"), "x").unwrap();
        assert_eq!(d, p(&["p", "q"], "-4*p^3 - 27*q^2"));
        let d = discriminant_with(&p(&v, "x^3 + p*x + q"), "x", &ElimOptions::interpolation(2))
            .unwrap();
        assert_eq!(d, p(&["p", "q"], "-4*p^3 - 27*q^2"));
    }

    #[test]
    fn interpolation_examples() {
        let pts = [(0, 1), (1, 0), (-1, 0)].map(|(x, y)| (Rat::from(x), Rat::from(y)));
        let poly = interpolate(&pts, 2).unwrap();
        assert_eq!(poly.coeffs(), &[Rat::one(), Rat::zero(), Rat::from(-1)]);
        let poly = interpolate(&[(Rat::zero(), Rat::frac(7, 3))], 0).unwrap();
        assert_eq!(poly.coeffs(), &[Rat::frac(7, 3)]);
        let dup = [(Rat::one(), Rat::one()), (Rat::one(), Rat::zero())];
        assert!(matches!(
            interpolate(&dup, 1),
            Err(AlgebraError::DuplicateAbscissa(_))
        ));
        let cubic: Vec<_> = (0..5)
            .map(|x| (Rat::from(x), Rat::from(x * x * x)))
            .collect();
        assert!(matches!(
            interpolate(&cubic, 2),
            Err(AlgebraError::DegreeExceeded(2))
        ));
        assert!(matches!(
            interpolate(&cubic[..2], 2),
            Err(AlgebraError::DegreeExceeded(2))
        ));
    }

    /// The leading coefficient `s` vanishes at the abscissa s = 0; the formal
    /// Sylvester matrix still samples the resultant correctly there.
    #[test]
    fn degenerate_leading_coefficient_sample() {
        let v = ["x", "s"];
        let f = p(&v, "s*x^2 + 1");
        let g = p(&v, "x - s - 2");
        let direct = resultant(&f, &g, "x").unwrap();
        // Res_x(f, x - c) = f(c) for monic linear g of this layout.
        assert_eq!(direct, p(&["s"], "s*(s+2)^2 + 1"));
        let interp = resultant_with(&f, &g, "x", &ElimOptions::interpolation(1)).unwrap();
        assert_eq!(interp, direct);
        let syl = SylvesterMatrix::new(&f, &g, "x").unwrap();
        assert_eq!(bareiss_det(&syl.specialize(&[Int::zero()])), Int::one());
    }

    fn small_upoly(var: &'static str) -> impl Strategy<Value = UPolyZ> {
        (
            prop::collection::vec(-6i64..=6, 1..4),
            prop::sample::select(vec![-2i64, -1, 1, 3]),
        )
            .prop_map(move |(mut c, lead)| {
                c.push(lead);
                UPolyZ::from_i64s(var, &c)
            })
    }

    fn res(f: &UPolyZ, g: &UPolyZ) -> Int {
        univariate_resultant(f, g).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn bareiss_matches_cofactor(n in 1usize..=6, seed in prop::collection::vec(-9i64..=9, 36)) {
            let a: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 6..i * 6 + n].to_vec()).collect();
            let got = bareiss_det(&a.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect::<Vec<_>>());
            prop_assert_eq!(got, Int::from(cofactor_det(&a)));
        }

        #[test]
        fn resultant_multiplicative(f in small_upoly("x"), g in small_upoly("x"), h in small_upoly("x")) {
            prop_assert_eq!(res(&f, &g.mul(&h)), res(&f, &g) * res(&f, &h));
        }

        #[test]
        fn resultant_swap_sign(f in small_upoly("x"), g in small_upoly("x")) {
            let sign = if f.degree().unwrap() * g.degree().unwrap() % 2 == 1 { -1 } else { 1 };
            prop_assert_eq!(res(&f, &g), Int::from(sign) * res(&g, &f));
        }

        #[test]
        fn resultant_vanishes_iff_common_factor(f in small_upoly("x"), g in small_upoly("x"), k in small_upoly("x")) {
            let shared = k.degree() >= Some(1) && k.lc().is_one();
            let (ff, gg) = if shared { (f.mul(&k), g.mul(&k)) } else { (f, g) };
            let zero = res(&ff, &gg).is_zero();
            prop_assert_eq!(zero, !up_gcd(&ff, &gg).is_constant());
        }

        #[test]
        fn discriminant_of_split_polynomial(roots in prop::collection::btree_set(-8i64..=8, 2..6)) {
            let roots: Vec<i64> = roots.into_iter().collect();
            let mut f = UPolyZ::from_i64s("x", &[1]);
            for r in &roots {
                f = f.mul(&UPolyZ::from_i64s("x", &[-r, 1]));
            }
            let mut expected = Int::one();
            for i in 0..roots.len() {
                for j in i + 1..roots.len() {
                    expected *= Int::from((roots[i] - roots[j]).pow(2));
                }
            }
            prop_assert_eq!(univariate_discriminant(&f).unwrap(), expected.clone());
            let d = discriminant(&MPoly::from_upoly(&f), "x").unwrap();
            prop_assert_eq!(d.constant_term(), expected);
        }

        #[test]
        fn both_routes_agree(a in -3i64..=3, b in -3i64..=3, c in 1i64..=3) {
            let v = ["x", "t"];
            let f = p(&v, &format!("{c}*x^2 + ({a})*t*x + t^2 - 1"));
            let g = p(&v, &format!("x^2 - ({b})*t + 2*x"));
            let direct = resultant(&f, &g, "x").unwrap();
            let interp = resultant_with(&f, &g, "x", &ElimOptions::interpolation(2)).unwrap();
            prop_assert_eq!(direct, interp);
        }
    }
}
