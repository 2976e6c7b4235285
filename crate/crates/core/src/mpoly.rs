//! Sparse multivariate polynomials over `Int` with named variables.
//!
//! Terms live in a `BTreeMap` keyed by exponent vectors, so iteration order is
//! lexicographic in the order of `vars`. Printing and the file format use the
//! descending graded-lex order instead (see [`MPoly::terms_grlex_desc`]).
//!
//! Binary operations require identical variable lists. Use [`MPoly::align`] to
//! embed a polynomial into a different (usually larger) list first.

use crate::arith::{Int, Rat};
use crate::error::{AlgebraError, Result};
use crate::upoly::{UPolyQ, UPolyZ};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Exponents = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    vars: Vec<String>,
    terms: BTreeMap<Exponents, Int>,
}

fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl MPoly {
    pub fn zero<S: AsRef<str>>(vars: &[S]) -> MPoly {
        MPoly {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: impl Into<Int>) -> MPoly {
        let mut p = MPoly::zero(vars);
        let c = c.into();
        if !c.is_zero() {
            p.terms.insert(vec![0; p.vars.len()], c);
        }
        p
    }

    pub fn one<S: AsRef<str>>(vars: &[S]) -> MPoly {
        MPoly::constant(vars, 1)
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var<S: AsRef<str>>(vars: &[S], name: &str) -> Result<MPoly> {
        let mut p = MPoly::zero(vars);
        let i = p.var_index(name)?;
        let mut e = vec![0; p.vars.len()];
        e[i] = 1;
        p.terms.insert(e, Int::one());
        Ok(p)
    }

    /// Collect terms, summing duplicates and dropping zeros.
    pub fn from_terms<S: AsRef<str>>(
        vars: &[S],
        terms: impl IntoIterator<Item = (Exponents, Int)>,
    ) -> Result<MPoly> {
        let mut p = MPoly::zero(vars);
        for (e, c) in terms {
            if e.len() != p.vars.len() {
                return Err(AlgebraError::Parse(format!(
                    "exponent vector {e:?} does not match {} variables",
                    p.vars.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Embed a univariate polynomial.
    pub fn from_upoly(p: &UPolyZ) -> MPoly {
        let mut m = MPoly::zero(&[p.var()]);
        for (k, c) in p.coeffs().iter().enumerate() {
            m.add_term(vec![k as u32], c.clone());
        }
        m
    }

    fn add_term(&mut self, e: Exponents, c: Int) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))
    }

    /// Terms in lexicographic order (ascending).
    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Int)> {
        self.terms.iter()
    }

    /// Terms in descending graded-lex order.
    pub fn terms_grlex_desc(&self) -> Vec<(&Exponents, &Int)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| grlex_cmp(b.0, a.0));
        v
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of an exact exponent vector.
    pub fn coeff_of(&self, e: &[u32]) -> Int {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Int {
        self.coeff_of(&vec![0; self.vars.len()])
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Leading term under lex order with variables in list order.
    pub fn leading_lex(&self) -> Option<(&Exponents, &Int)> {
        self.terms.last_key_value()
    }

    /// Leading term under graded-lex order with variables in list order.
    pub fn leading_grlex(&self) -> Option<(&Exponents, &Int)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    fn check_same_vars(&self, rhs: &MPoly) -> Result<()> {
        if self.vars != rhs.vars {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.clone(),
                right: rhs.vars.clone(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, rhs: &MPoly) -> Result<MPoly> {
        self.check_same_vars(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &MPoly) -> Result<MPoly> {
        self.check_same_vars(rhs)?;
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &MPoly) -> Result<MPoly> {
        self.check_same_vars(rhs)?;
        let mut out = MPoly::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exponents = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiply by the monomial `var^k`.
    pub fn mul_monomial(&self, var: &str, k: u32) -> Result<MPoly> {
        let i = self.var_index(var)?;
        Ok(MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] += k;
                    (e, c.clone())
                })
                .collect(),
        })
    }

    /// Exact division by `var^k`; every term must carry at least `k`.
    pub fn div_monomial(&self, var: &str, k: u32) -> Result<MPoly> {
        let i = self.var_index(var)?;
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < k {
                return Err(AlgebraError::NotDivisible {
                    remainder_degree: e.iter().sum::<u32>() as usize,
                });
            }
            let mut e = e.clone();
            e[i] -= k;
            terms.insert(e, c.clone());
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms,
        })
    }

    /// Largest `k` with `var^k` dividing every term.
    pub fn monomial_valuation(&self, var: &str) -> Result<Option<u32>> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[i]).min())
    }

    /// Exact multivariate division (lex-leading-term reduction).
    pub fn exact_div(&self, divisor: &MPoly) -> Result<MPoly> {
        self.check_same_vars(divisor)?;
        let (dexp, dcoeff) = divisor
            .terms
            .last_key_value()
            .ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.terms.clone();
        let mut quot = BTreeMap::new();
        while let Some((e, c)) = rem.last_key_value() {
            let (e, c) = (e.clone(), c.clone());
            let not_divisible = || AlgebraError::NotDivisible {
                remainder_degree: e.iter().sum::<u32>() as usize,
            };
            if e.iter().zip(dexp).any(|(x, y)| x < y) {
                return Err(not_divisible());
            }
            let qc = c.exact_div(dcoeff).map_err(|_| not_divisible())?;
            let qe: Exponents = e.iter().zip(dexp).map(|(x, y)| x - y).collect();
            for (de, dc) in &divisor.terms {
                let te: Exponents = de.iter().zip(&qe).map(|(x, y)| x + y).collect();
                let entry = rem.entry(te.clone()).or_default();
                *entry -= &qc * dc;
                if entry.is_zero() {
                    rem.remove(&te);
                }
            }
            quot.insert(qe, qc);
        }
        Ok(MPoly {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Positive integer content and primitive part. The primitive part keeps
    /// the sign of the input.
    pub fn primitive(&self) -> Result<(Int, MPoly)> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        let mut g = Int::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                return Ok((g, self.clone()));
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.exact_div(&g).expect("content divides")))
            .collect();
        Ok((
            g,
            MPoly {
                vars: self.vars.clone(),
                terms,
            },
        ))
    }

    /// Maximum exponent of `var`, `None` for the zero polynomial.
    pub fn degree(&self, var: &str) -> Result<Option<u32>> {
        let i = self.var_index(var)?;
        Ok(self.terms.keys().map(|e| e[i]).max())
    }

    /// Coefficient of `var^k`, as a polynomial in the remaining variables.
    pub fn coeff_in(&self, var: &str, k: u32) -> Result<MPoly> {
        let i = self.var_index(var)?;
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = MPoly::zero(&vars);
        for (e, c) in &self.terms {
            if e[i] == k {
                let mut e = e.clone();
                e.remove(i);
                out.terms.insert(e, c.clone());
            }
        }
        Ok(out)
    }

    /// All coefficients in `var` (index = exponent), over the remaining
    /// variables. Empty for the zero polynomial.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MPoly>> {
        let i = self.var_index(var)?;
        let Some(deg) = self.degree(var)? else {
            return Ok(Vec::new());
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = vec![MPoly::zero(&vars); deg as usize + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e = e.clone();
            e.remove(i);
            out[k].terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Re-express over `vars`, which may add, drop or reorder variables.
    /// Dropping a variable that occurs is an error.
    pub fn align<S: AsRef<str>>(&self, vars: &[S]) -> Result<MPoly> {
        let target: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in self.vars.iter().enumerate() {
            if !target.contains(v) && self.terms.keys().any(|e| e[i] != 0) {
                return Err(AlgebraError::VariableMismatch {
                    left: self.vars.clone(),
                    right: target,
                });
            }
        }
        let map: Vec<Option<usize>> = target
            .iter()
            .map(|v| self.vars.iter().position(|w| w == v))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let ne = map.iter().map(|m| m.map_or(0, |j| e[j])).collect();
                (ne, c.clone())
            })
            .collect();
        Ok(MPoly {
            vars: target,
            terms,
        })
    }

    /// Rename one variable in place (the name must not already be used).
    pub fn rename(&self, old: &str, new: &str) -> Result<MPoly> {
        let i = self.var_index(old)?;
        if old != new && self.vars.iter().any(|v| v == new) {
            return Err(AlgebraError::VariableMismatch {
                left: self.vars.clone(),
                right: vec![new.to_string()],
            });
        }
        let mut out = self.clone();
        out.vars[i] = new.to_string();
        Ok(out)
    }

    /// Substitute `var <- repl` and expand. `repl` must use the same
    /// variable list; `var` stays in the list.
    pub fn substitute(&self, var: &str, repl: &MPoly) -> Result<MPoly> {
        self.check_same_vars(repl)?;
        let coeffs = self.coefficients_with_var_zeroed(var)?;
        let mut out = MPoly::zero(&self.vars);
        let mut power = MPoly::one(&self.vars);
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                power = &power * repl;
            }
            if !c.is_zero() {
                out = &out + &(c * &power);
            }
        }
        Ok(out)
    }

    /// `den^d * p(var = num/den)` with `d = deg_var p`: substitution of a
    /// fraction with the denominator cleared. Returns the cleared polynomial
    /// and `d`.
    pub fn substitute_fraction(&self, var: &str, num: &MPoly, den: &MPoly) -> Result<(MPoly, u32)> {
        self.check_same_vars(num)?;
        self.check_same_vars(den)?;
        let coeffs = self.coefficients_with_var_zeroed(var)?;
        let Some(d) = coeffs.len().checked_sub(1) else {
            return Ok((self.clone(), 0));
        };
        // sum_k c_k num^k den^(d-k)
        let mut den_pows = vec![MPoly::one(&self.vars)];
        for _ in 0..d {
            let next = den_pows.last().expect("nonempty") * den;
            den_pows.push(next);
        }
        let mut out = MPoly::zero(&self.vars);
        let mut num_pow = MPoly::one(&self.vars);
        for (k, c) in coeffs.iter().enumerate() {
            if k > 0 {
                num_pow = &num_pow * num;
            }
            if !c.is_zero() {
                out = &out + &(&(c * &num_pow) * &den_pows[d - k]);
            }
        }
        Ok((out, d as u32))
    }

    /// Coefficients in `var` kept over the full variable list (with `var`'s
    /// exponent set to zero).
    fn coefficients_with_var_zeroed(&self, var: &str) -> Result<Vec<MPoly>> {
        let i = self.var_index(var)?;
        let Some(deg) = self.degree(var)? else {
            return Ok(Vec::new());
        };
        let mut out = vec![MPoly::zero(&self.vars); deg as usize + 1];
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            let mut e = e.clone();
            e[i] = 0;
            out[k].terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Replace every `var^(2k)` by `newvar^k`. Fails on any odd exponent.
    pub fn halve_exponents(&self, var: &str, newvar: &str) -> Result<MPoly> {
        let i = self.var_index(var)?;
        for (e, c) in &self.terms {
            if e[i] % 2 == 1 {
                let single = MPoly {
                    vars: self.vars.clone(),
                    terms: BTreeMap::from([(e.clone(), c.clone())]),
                };
                return Err(AlgebraError::OddExponent {
                    var: var.to_string(),
                    term: single.to_string(),
                });
            }
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e[i] /= 2;
                (e, c.clone())
            })
            .collect();
        MPoly {
            vars: self.vars.clone(),
            terms,
        }
        .rename(var, newvar)
    }

    /// Evaluate at integer values for every variable (in list order).
    pub fn eval_int(&self, point: &[Int]) -> Int {
        assert_eq!(point.len(), self.vars.len(), "point dimension");
        let mut cache: Vec<Vec<Int>> = point.iter().map(|x| vec![Int::one(), x.clone()]).collect();
        let mut acc = Int::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let pows = &mut cache[i];
                while pows.len() <= k as usize {
                    let next = pows.last().expect("nonempty") * &point[i];
                    pows.push(next);
                }
                t *= &pows[k as usize];
            }
            acc += t;
        }
        acc
    }

    /// Fix every variable except `main` to a rational value and return the
    /// resulting univariate polynomial in `main`.
    pub fn specialize(&self, main: &str, values: &[(&str, Rat)]) -> Result<UPolyQ> {
        let mi = self.var_index(main)?;
        let mut point: Vec<Option<&Rat>> = vec![None; self.vars.len()];
        for (name, v) in values {
            point[self.var_index(name)?] = Some(v);
        }
        if let Some(i) = (0..self.vars.len()).find(|&i| i != mi && point[i].is_none()) {
            return Err(AlgebraError::UnknownVariable(format!(
                "no value for `{}`",
                self.vars[i]
            )));
        }
        let deg = self.degree(main)?.unwrap_or(0) as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut t = Rat::from(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if i != mi && k > 0 {
                    t *= point[i].expect("checked above").pow(k);
                }
            }
            coeffs[e[mi] as usize] += t;
        }
        Ok(UPolyQ::new(main, coeffs))
    }

    /// View a polynomial that only involves `var` as a dense univariate one.
    pub fn to_upoly(&self, var: &str) -> Result<UPolyZ> {
        let i = self.var_index(var)?;
        let deg = self.degree(var)?.unwrap_or(0) as usize;
        let mut coeffs = vec![Int::zero(); if self.is_zero() { 0 } else { deg + 1 }];
        for (e, c) in &self.terms {
            if e.iter().enumerate().any(|(j, &k)| j != i && k != 0) {
                return Err(AlgebraError::VariableMismatch {
                    left: self.vars.clone(),
                    right: vec![var.to_string()],
                });
            }
            coeffs[e[i] as usize] = c.clone();
        }
        Ok(UPolyZ::new(var, coeffs))
    }

    /// Sum of the terms whose total degree is exactly `d`.
    pub fn homogeneous_component(&self, d: u32) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// First term (descending graded-lex) where `self` and `other` differ.
    pub fn first_difference(&self, other: &MPoly) -> Result<Option<(Exponents, Int, Int)>> {
        let diff = self.checked_sub(other)?;
        Ok(diff
            .leading_grlex()
            .map(|(e, _)| (e.clone(), self.coeff_of(e), other.coeff_of(e))))
    }

    /// Render one exponent vector as a monomial, e.g. `a^4*r^5`.
    pub fn monomial_string(&self, e: &[u32]) -> String {
        let parts: Vec<String> = self
            .vars
            .iter()
            .zip(e)
            .filter(|(_, &k)| k > 0)
            .map(|(v, &k)| {
                if k == 1 {
                    v.clone()
                } else {
                    format!("{v}^{k}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Parse an expression such as `256*r^16*(-a + 3*r)^2 - 4*a*d**2`.
    /// Both `^` and `**` denote powers.
    pub fn parse<S: AsRef<str>>(vars: &[S], src: &str) -> Result<MPoly> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut parser = Parser {
            src: src.as_bytes(),
            pos: 0,
            vars: &vars,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("trailing input"));
        }
        Ok(p)
    }
}

macro_rules! mpoly_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics if the variable lists differ; use the `checked_*` form to
        /// get an error instead.
        impl<'a, 'b> std::ops::$tr<&'b MPoly> for &'a MPoly {
            type Output = MPoly;
            fn $m(self, rhs: &'b MPoly) -> MPoly {
                self.$checked(rhs).expect("MPoly variable lists must match")
            }
        }
    };
}
mpoly_op!(Add, add, checked_add);
mpoly_op!(Sub, sub, checked_sub);
mpoly_op!(Mul, mul, checked_mul);

/// Exact product; fails with `VariableMismatch` on differing variable lists.
pub fn mp_mul(p: &MPoly, q: &MPoly) -> Result<MPoly> {
    p.checked_mul(q)
}

pub fn mp_substitute(p: &MPoly, var: &str, repl: &MPoly) -> Result<MPoly> {
    p.substitute(var, repl)
}

pub fn mp_coeff_in(p: &MPoly, var: &str, k: u32) -> Result<MPoly> {
    p.coeff_in(var, k)
}

pub fn mp_degree(p: &MPoly, var: &str) -> Result<Option<u32>> {
    p.degree(var)
}

pub fn mp_primitive(p: &MPoly) -> Result<(Int, MPoly)> {
    p.primitive()
}

pub fn mp_halve_exponents(p: &MPoly, var: &str, newvar: &str) -> Result<MPoly> {
    p.halve_exponents(var, newvar)
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono = self.monomial_string(e);
            if mono == "1" {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly[{}]({self})", self.vars.join(","))
    }
}

/// The monic quintic `u^5 + a u^4 + b u^3 + c u^2 + d u + e` with symbolic
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuinticAnsatz {
    pub u: String,
    pub coeffs: [String; 5],
}

impl Default for QuinticAnsatz {
    fn default() -> Self {
        QuinticAnsatz {
            u: "u".into(),
            coeffs: ["a", "b", "c", "d", "e"].map(String::from),
        }
    }
}

impl QuinticAnsatz {
    /// `R(u)` over `vars`, which must contain `u` and all five coefficients.
    pub fn polynomial<S: AsRef<str>>(&self, vars: &[S]) -> Result<MPoly> {
        let u = MPoly::var(vars, &self.u)?;
        let mut r = u.pow(5);
        for (i, name) in self.coeffs.iter().enumerate() {
            let term = &MPoly::var(vars, name)? * &u.pow(4 - i as u32);
            r = &r + &term;
        }
        Ok(r)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl Parser<'_> {
    fn error(&self, what: &str) -> AlgebraError {
        AlgebraError::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = MPoly::zero(self.vars);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => sign = 1,
                Some(b'-') => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.factor()?;
        loop {
            self.skip_ws();
            let rest = &self.src[self.pos..];
            if rest.starts_with(b"*") && !rest.starts_with(b"**") {
                self.pos += 1;
                acc = &acc * &self.factor()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<MPoly> {
        let base = self.primary()?;
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let op_len = if rest.starts_with(b"**") {
            2
        } else if rest.starts_with(b"^") {
            1
        } else {
            return Ok(base);
        };
        self.pos += op_len;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.error("expected exponent"))?;
        Ok(base.pow(e))
    }

    fn primary(&mut self) -> Result<MPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Int = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .parse()?;
                Ok(MPoly::constant(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                MPoly::var(self.vars, name)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}
