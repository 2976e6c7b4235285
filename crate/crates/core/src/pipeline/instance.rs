use super::cuboid::CuboidInstance;
use super::golden::GoldenData;
use super::report::{StageReport, Verdict};
use super::stages::Pipeline;
use super::{Config, PipelineError};
use crate::arith::{Int, Rat, Sign};
use crate::elimination::univariate_discriminant;
use crate::mpoly::MPoly;
use crate::realroots::{count_real_roots, ExtendedPoint};
use crate::upoly::UPolyZ;
use serde::{Deserialize, Serialize};

pub const NO_SPLITTING: &str = "Q_{p,q} admits no quintic 5+5 splitting";
pub const NOT_APPLICABLE: &str = "certificate does not apply";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub p: String,
    pub q: String,
    pub s0: String,
    pub real_roots: Option<usize>,
    pub verdict: Verdict,
    pub statement: String,
    pub report: StageReport,
}

/// Holds `f(s, y)` and the golden discriminant factors so that many
/// instances can be checked against one derivation.
pub struct InstanceChecker {
    f: MPoly,
    p6: UPolyZ,
    p28: UPolyZ,
}

impl InstanceChecker {
    /// Derive `f` through stages 1 to 3.
    pub fn new(config: &Config) -> Result<InstanceChecker, PipelineError> {
        let golden = GoldenData::load(&config.golden_dir)?;
        let (p6, p28) = (golden.p6.clone(), golden.p28.clone());
        let mut pipeline = Pipeline::new(golden, config.clone());
        let f = pipeline.small_f()?.clone();
        Ok(InstanceChecker { f, p6, p28 })
    }

    pub fn f(&self) -> &MPoly {
        &self.f
    }

    pub fn check(&self, inst: &CuboidInstance) -> InstanceReport {
        let s0 = inst.s0();
        let mut report =
            StageReport::new("instance", format!("p = {}, q = {}", inst.p(), inst.q()));
        report.observe("s0", &s0);
        let mut roots = None;
        match self.f.specialize("y", &[("s", s0.clone())]) {
            Err(e) => report.error("specialization", e),
            Ok(g) => {
                let gz = g.clear_denominators().1;
                report.check_eq("deg_y f(s0, y)", 16, g.degree().unwrap_or(0));
                match univariate_discriminant(&gz) {
                    Ok(d) => {
                        report.record(
                            "disc_y f(s0, y) != 0",
                            "nonzero",
                            if d.is_zero() { "zero" } else { "nonzero" },
                            !d.is_zero(),
                        );
                    }
                    Err(e) => report.error("disc_y f(s0, y)", e),
                }
                let off_factors = [Rat::zero(), Rat::one(), Rat::from(-1)]
                    .iter()
                    .all(|r| *r != s0)
                    && self.p6.sign_at(&s0) != Sign::Zero
                    && self.p28.sign_at(&s0) != Sign::Zero;
                report.check("s0 avoids the factored discriminant's roots", off_factors);
                match count_real_roots(
                    &g,
                    &ExtendedPoint::MinusInfinity,
                    &ExtendedPoint::PlusInfinity,
                ) {
                    Ok(n) => {
                        roots = Some(n);
                        report.check_eq("real roots of f(s0, y)", 0, n);
                    }
                    Err(e) => report.error("Sturm count", e),
                }
            }
        }
        let pass = report.passed();
        InstanceReport {
            p: inst.p().to_string(),
            q: inst.q().to_string(),
            s0: s0.to_string(),
            real_roots: roots,
            verdict: if pass { Verdict::Pass } else { Verdict::Fail },
            statement: if pass { NO_SPLITTING } else { NOT_APPLICABLE }.to_string(),
            report,
        }
    }
}

/// Validate `(p, q)` and check the instance.
pub fn instance_check(
    p: impl Into<Int>,
    q: impl Into<Int>,
    config: &Config,
) -> Result<InstanceReport, PipelineError> {
    let inst = CuboidInstance::new(p, q)?;
    Ok(InstanceChecker::new(config)?.check(&inst))
}
