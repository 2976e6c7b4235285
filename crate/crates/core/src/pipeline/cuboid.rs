use super::PipelineError;
use crate::arith::{Int, Rat};
use crate::mpoly::MPoly;

const QPQ: &str = "t^10 + (2*q^2 + p^2)*(3*q^2 - 2*p^2)*t^8 \
    + (q^8 + 10*p^2*q^6 + 4*p^4*q^4 - 14*p^6*q^2 + p^8)*t^6 \
    - p^2*q^2*(q^8 - 14*p^2*q^6 + 4*p^4*q^4 + 10*p^6*q^2 + p^8)*t^4 \
    - p^6*q^6*(q^2 + 2*p^2)*(-2*q^2 + 3*p^2)*t^2 \
    - p^10*q^10";

const QR: &str = "u^10 + (2 + r^2)*(3 - 2*r^2)*u^8 \
    + (1 + 10*r^2 + 4*r^4 - 14*r^6 + r^8)*u^6 \
    - r^2*(1 - 14*r^2 + 4*r^4 + 10*r^6 + r^8)*u^4 \
    - r^6*(1 + 2*r^2)*(-2 + 3*r^2)*u^2 \
    - r^10";

/// The second cuboid polynomial over `(p, q, t)`.
pub fn build_qpq() -> MPoly {
    MPoly::parse(&["p", "q", "t"], QPQ).expect("constant formula parses")
}

/// The normalized family `Q_r(u)` over `(r, u)`.
pub fn build_qr() -> MPoly {
    MPoly::parse(&["r", "u"], QR).expect("constant formula parses")
}

/// Coprime positive `p != q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuboidInstance {
    p: Int,
    q: Int,
}

impl CuboidInstance {
    pub fn new(p: impl Into<Int>, q: impl Into<Int>) -> Result<CuboidInstance, PipelineError> {
        let (p, q) = (p.into(), q.into());
        if !p.is_positive() || !q.is_positive() {
            return Err(PipelineError::InvalidInstance(format!(
                "p = {p} and q = {q} must be positive"
            )));
        }
        if p == q {
            return Err(PipelineError::InvalidInstance(format!("p = q = {p}")));
        }
        let g = p.gcd(&q);
        if !g.is_one() {
            return Err(PipelineError::InvalidInstance(format!(
                "gcd({p}, {q}) = {g}"
            )));
        }
        Ok(CuboidInstance { p, q })
    }

    pub fn p(&self) -> &Int {
        &self.p
    }

    pub fn q(&self) -> &Int {
        &self.q
    }

    /// `s0 = p^2 / q^2`.
    pub fn s0(&self) -> Rat {
        Rat::new(self.p.pow(2), self.q.pow(2)).expect("q > 0")
    }
}
