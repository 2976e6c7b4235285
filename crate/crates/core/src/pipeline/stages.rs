use super::cuboid::{build_qpq, build_qr};
use super::format::{read_poly, write_poly, PolyFile};
use super::golden::{GoldenBracket, GoldenData};
use super::report::{Certificate, StageReport, Verdict};
use super::{Config, PipelineError, TOOL_VERSION};
use crate::arith::{Int, Rat, Sign};
use crate::elimination::{discriminant_with, resultant_with, ElimOptions};
use crate::error::AlgebraError;
use crate::mpoly::{MPoly, QuinticAnsatz};
use crate::realroots::{count_real_roots, isolate_positive_roots, Bracket, ExtendedPoint};
use crate::upoly::{is_squarefree, up_rational_roots, UPolyZ};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

const TITLES: [&str; 9] = [
    "weighted normalization",
    "coefficient comparison: E2, E3",
    "elimination resultant F",
    "quotient substitution f(s, y)",
    "discriminant factorization",
    "rational roots of P6, P28",
    "positive root isolation",
    "sample root counts",
    "fiber at s = 1",
];

/// Objects that `certify dump` can write.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DumpObject {
    E2,
    E3,
    BigF,
    SmallF,
    Disc,
    P6,
    P28,
}

impl FromStr for DumpObject {
    type Err = PipelineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "E2" => DumpObject::E2,
            "E3" => DumpObject::E3,
            "F" => DumpObject::BigF,
            "f" => DumpObject::SmallF,
            "disc" => DumpObject::Disc,
            "P6" => DumpObject::P6,
            "P28" => DumpObject::P28,
            other => {
                return Err(PipelineError::Unavailable(format!(
                    "unknown object `{other}`"
                )))
            }
        })
    }
}

impl fmt::Display for DumpObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DumpObject::E2 => "E2",
            DumpObject::E3 => "E3",
            DumpObject::BigF => "F",
            DumpObject::SmallF => "f",
            DumpObject::Disc => "disc",
            DumpObject::P6 => "P6",
            DumpObject::P28 => "P28",
        })
    }
}

fn parse(vars: &[&str], src: &str) -> MPoly {
    MPoly::parse(vars, src).expect("constant formula parses")
}

fn digest(p: &MPoly) -> String {
    hex::encode(Sha256::digest(PolyFile::from_mpoly(p).to_json().as_bytes()))
}

/// Record an exact polynomial identity, naming the first differing term.
fn check_poly(report: &mut StageReport, name: &str, expected: &MPoly, got: &MPoly) -> bool {
    if expected.vars() != got.vars() {
        return report.record(
            name,
            format!("polynomial over {:?}", expected.vars()),
            format!("polynomial over {:?}", got.vars()),
            false,
        );
    }
    match expected.first_difference(got).expect("same variables") {
        None => report.record(name, "identical", "identical", true),
        Some((e, want, have)) => report.record(
            name,
            format!("{want} at {}", expected.monomial_string(&e)),
            format!("{have} at {}", expected.monomial_string(&e)),
            false,
        ),
    }
}

/// `lambda > 0` with `golden = lambda * ours`, if one exists.
fn positive_scalar(ours: &MPoly, golden: &MPoly) -> Option<Rat> {
    let (_, lo) = ours.leading_lex()?;
    let (_, lg) = golden.leading_lex()?;
    let lambda = Rat::new(lg.clone(), lo.clone()).ok()?;
    if lambda.sign() != Sign::Positive {
        return None;
    }
    let lhs = golden.scale(lambda.denom());
    let rhs = ours.scale(lambda.numer());
    (lhs == rhs).then_some(lambda)
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

/// Stage 0 on explicit inputs, so that altered polynomials can be checked.
pub fn stage0_check(qpq: &MPoly, qr: &MPoly) -> StageReport {
    let mut report = StageReport::new("0", TITLES[0]);
    let run = |report: &mut StageReport| -> Result<(), AlgebraError> {
        let vars = ["p", "q", "t", "l"];
        let q4 = qpq.align(&vars)?;
        let l = MPoly::var(&vars, "l")?;
        let scaled = q4
            .substitute("p", &(&l * &MPoly::var(&vars, "p")?))?
            .substitute("q", &(&l * &MPoly::var(&vars, "q")?))?
            .substitute("t", &(&l.pow(2) * &MPoly::var(&vars, "t")?))?;
        check_poly(
            report,
            "Q(lp, lq, l^2 t) = l^20 Q(p, q, t)",
            &(&l.pow(20) * &q4),
            &scaled,
        );
        let at_q1 = qpq
            .substitute("q", &MPoly::one(qpq.vars()))?
            .rename("p", "r")?
            .rename("t", "u")?
            .align(&["r", "u"])?;
        check_poly(report, "Q_r(u) = Q(r, 1, u)", qr, &at_q1);
        report.check_eq("deg_t Q", 10, qpq.degree("t")?.unwrap_or(0));
        Ok(())
    };
    if let Err(e) = run(&mut report) {
        report.error("normalization", e);
    }
    report
}

struct FiberCheck {
    degree: Option<usize>,
    squarefree: bool,
    roots: usize,
}

/// Stage outputs and the driver that produces them.
pub struct Pipeline {
    golden: GoldenData,
    config: Config,
    e2: Option<MPoly>,
    e3: Option<MPoly>,
    big_f: Option<MPoly>,
    f: Option<MPoly>,
    disc: Option<UPolyZ>,
    p6: Option<UPolyZ>,
    p28: Option<UPolyZ>,
    isolated: Option<Vec<(String, Bracket)>>,
}

impl Pipeline {
    pub fn new(golden: GoldenData, config: Config) -> Pipeline {
        Pipeline {
            golden,
            config,
            e2: None,
            e3: None,
            big_f: None,
            f: None,
            disc: None,
            p6: None,
            p28: None,
            isolated: None,
        }
    }

    pub fn golden(&self) -> &GoldenData {
        &self.golden
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    /// Run the configured stages in order and assemble the certificate.
    pub fn run(&mut self) -> Certificate {
        let mut stages = Vec::new();
        let mut halted = false;
        let mut all_pass = true;
        for &n in &self.config.stages.clone() {
            if halted {
                stages.push(StageReport::skipped(
                    n.to_string(),
                    TITLES[n as usize],
                    "an earlier stage failed",
                ));
                all_pass = false;
                continue;
            }
            let report = self.run_stage(n);
            if !report.passed() {
                all_pass = false;
                halted = !self.config.keep_going;
            }
            stages.push(report);
        }
        Certificate {
            verdict: if all_pass {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
            tool_version: TOOL_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339(),
            golden_checksums: self.golden.checksums.clone(),
            stages,
        }
    }

    /// One timed stage, preparing its inputs first.
    pub fn run_stage(&mut self, n: u8) -> StageReport {
        let start = Instant::now();
        let mut report = match self.prepare(n) {
            Err(e) => {
                let mut r = StageReport::new(n.to_string(), TITLES[n as usize]);
                r.error("inputs", e);
                r
            }
            Ok(()) => match n {
                0 => self.stage0(),
                1 => self.stage1(),
                2 => self.stage2(),
                3 => self.stage3(),
                4 => self.stage4(),
                5 => self.stage5(),
                6 => self.stage6(),
                7 => self.stage7(),
                8 => self.stage8(),
                _ => panic!("no stage {n}"),
            },
        };
        report.wall_ms = start.elapsed().as_millis() as u64;
        report
    }

    fn prepare(&mut self, n: u8) -> Result<(), PipelineError> {
        match n {
            0 | 1 => Ok(()),
            2..=4 => self.require(n - 1),
            5 | 6 => self.require(4),
            7 | 8 => self.require(3),
            _ => Err(PipelineError::StageList(n.to_string())),
        }
    }

    fn has_outputs(&self, n: u8) -> bool {
        match n {
            1 => self.e2.is_some() && self.e3.is_some(),
            2 => self.big_f.is_some(),
            3 => self.f.is_some(),
            4 => self.disc.is_some() && self.p6.is_some() && self.p28.is_some(),
            _ => true,
        }
    }

    /// Make the outputs of stage `n` available: from memory, the cache, or
    /// an unreported run.
    fn require(&mut self, n: u8) -> Result<(), PipelineError> {
        if self.has_outputs(n) || self.load_cached(n) {
            return Ok(());
        }
        if n > 1 {
            self.require(if n == 4 { 3 } else { n - 1 })?;
        }
        let report = match n {
            1 => self.stage1(),
            2 => self.stage2(),
            3 => self.stage3(),
            4 => self.stage4(),
            _ => return Ok(()),
        };
        if self.has_outputs(n) {
            Ok(())
        } else {
            Err(PipelineError::Unavailable(format!(
                "stage {n} produced no output ({})",
                report.reason.unwrap_or_default()
            )))
        }
    }

    fn stage_cache_dir(&self) -> Option<PathBuf> {
        self.config
            .cache_dir
            .as_ref()
            .map(|d| d.join(format!("v{TOOL_VERSION}")))
    }

    fn store(&self, name: &str, p: &MPoly) {
        if let Some(dir) = self.stage_cache_dir() {
            if std::fs::create_dir_all(&dir).is_ok() {
                let _ = write_poly(&dir.join(format!("{name}.json")), p);
            }
        }
    }

    fn load(&self, name: &str) -> Option<MPoly> {
        let path = self.stage_cache_dir()?.join(format!("{name}.json"));
        if path.exists() {
            read_poly(&path).ok()
        } else {
            None
        }
    }

    fn load_cached(&mut self, n: u8) -> bool {
        match n {
            1 => {
                if let (Some(a), Some(b)) = (self.load("E2"), self.load("E3")) {
                    self.e2 = Some(a);
                    self.e3 = Some(b);
                }
            }
            2 => self.big_f = self.load("F"),
            3 => self.f = self.load("f"),
            _ => {}
        }
        self.has_outputs(n)
    }

    fn disc_cache_path(&self, f: &MPoly) -> Option<PathBuf> {
        self.config
            .cache_dir
            .as_ref()
            .map(|d| d.join(format!("disc-{}.json", digest(f))))
    }

    pub fn e2(&mut self) -> Result<&MPoly, PipelineError> {
        self.require(1)?;
        Ok(self.e2.as_ref().expect("required"))
    }

    pub fn e3(&mut self) -> Result<&MPoly, PipelineError> {
        self.require(1)?;
        Ok(self.e3.as_ref().expect("required"))
    }

    pub fn big_f(&mut self) -> Result<&MPoly, PipelineError> {
        self.require(2)?;
        Ok(self.big_f.as_ref().expect("required"))
    }

    pub fn small_f(&mut self) -> Result<&MPoly, PipelineError> {
        self.require(3)?;
        Ok(self.f.as_ref().expect("required"))
    }

    pub fn disc(&mut self) -> Result<&UPolyZ, PipelineError> {
        self.require(4)?;
        Ok(self.disc.as_ref().expect("required"))
    }

    pub fn p6(&mut self) -> Result<&UPolyZ, PipelineError> {
        self.require(4)?;
        Ok(self.p6.as_ref().expect("required"))
    }

    pub fn p28(&mut self) -> Result<&UPolyZ, PipelineError> {
        self.require(4)?;
        Ok(self.p28.as_ref().expect("required"))
    }

    /// Brackets isolating the positive roots of P6 and P28, after stage 6.
    pub fn isolated_brackets(&self) -> Option<&[(String, Bracket)]> {
        self.isolated.as_deref()
    }

    pub fn dump(&mut self, object: DumpObject) -> Result<MPoly, PipelineError> {
        Ok(match object {
            DumpObject::E2 => self.e2()?.clone(),
            DumpObject::E3 => self.e3()?.clone(),
            DumpObject::BigF => self.big_f()?.clone(),
            DumpObject::SmallF => self.small_f()?.clone(),
            DumpObject::Disc => MPoly::from_upoly(self.disc()?),
            DumpObject::P6 => MPoly::from_upoly(self.p6()?),
            DumpObject::P28 => MPoly::from_upoly(self.p28()?),
        })
    }

    pub fn stage0(&mut self) -> StageReport {
        stage0_check(&build_qpq(), &build_qr())
    }

    pub fn stage1(&mut self) -> StageReport {
        let mut report = StageReport::new("1", TITLES[1]);
        match derive_e2_e3(&mut report) {
            Err(e) => report.error("derivation", e),
            Ok((e2, e3)) => {
                for (name, ours, golden) in
                    [("E2", &e2, &self.golden.e2), ("E3", &e3, &self.golden.e3)]
                {
                    report.digests.insert(name.into(), digest(ours));
                    match positive_scalar(ours, golden) {
                        Some(l) => {
                            report.record(
                                &format!("{name} matches golden up to a positive scalar"),
                                "proportional",
                                "proportional",
                                true,
                            );
                            report.observe(&format!("{name} scalar"), l);
                        }
                        None => {
                            report.record(
                                &format!("{name} matches golden up to a positive scalar"),
                                "proportional",
                                "not proportional",
                                false,
                            );
                        }
                    }
                }
                self.store("E2", &e2);
                self.store("E3", &e3);
                self.e2 = Some(e2);
                self.e3 = Some(e3);
            }
        }
        report.observe(
            "branch e = -r^5",
            "equivalent under R(u) -> -R(-u); not recomputed",
        );
        report
    }

    pub fn stage2(&mut self) -> StageReport {
        let mut report = StageReport::new("2", TITLES[2]);
        let (Some(e2), Some(e3)) = (self.e2.clone(), self.e3.clone()) else {
            report.error("inputs", "E2, E3 unavailable");
            return report;
        };
        let jobs = self.config.jobs;
        let result = (|| -> Result<MPoly, AlgebraError> {
            let direct = resultant_with(&e2, &e3, "d", &ElimOptions::default())?;
            let interp = resultant_with(&e2, &e3, "d", &ElimOptions::interpolation(jobs))?;
            report.record(
                "Bareiss and interpolation resultants agree",
                "equal",
                if direct == interp {
                    "equal"
                } else {
                    "different"
                },
                direct == interp,
            );
            let val = direct.monomial_valuation("r")?.unwrap_or(0);
            report.observe("r-adic valuation of the resultant", val);
            report.check("r^20 divides the resultant", val >= 20);
            let shifted = direct.div_monomial("r", 20)?;
            let (content, prim) = shifted.primitive()?;
            report.observe("content of resultant / r^20", &content);
            let lead_negative = prim
                .align(&["r", "a"])?
                .leading_grlex()
                .map(|(_, c)| c.is_negative())
                .unwrap_or(false);
            let f = if lead_negative { prim.neg() } else { prim };
            f.align(&["r", "a"])
        })();
        let f = match result {
            Ok(f) => f,
            Err(e) => {
                report.error("resultant", e);
                return report;
            }
        };
        report.digests.insert("F".into(), digest(&f));
        let checks = (|| -> Result<(), AlgebraError> {
            report.check_eq("deg_r F", 24, f.degree("r")?.unwrap_or(0));
            report.check_eq("deg_a F", 16, f.degree("a")?.unwrap_or(0));
            let vars = ["r", "a"];
            let mirrored = f
                .substitute("r", &MPoly::var(&vars, "r")?.neg())?
                .substitute("a", &MPoly::var(&vars, "a")?.neg())?;
            check_poly(&mut report, "F(-r, -a) = F(r, a)", &f, &mirrored);
            check_poly(
                &mut report,
                "F matches golden term for term",
                &self.golden.big_f,
                &f,
            );
            let at = |r: i64| -> Result<MPoly, AlgebraError> {
                f.substitute("r", &MPoly::constant(&vars, r))?.align(&["a"])
            };
            check_poly(
                &mut report,
                "F(1, a) = (a-1)^6 (a^2-2a+17) (a^2+2a+5)^4",
                &parse(&["a"], "(a-1)^6*(a^2-2*a+17)*(a^2+2*a+5)^4"),
                &at(1)?,
            );
            check_poly(
                &mut report,
                "F(0, a) = (a^2+4)^4 (a^2+8)^4",
                &parse(&["a"], "(a^2+4)^4*(a^2+8)^4"),
                &at(0)?,
            );
            check_poly(
                &mut report,
                "H24 = 256 r^16 (a-3r)^2 (a-5r)^2 (a+3r)^2 (a+5r)^2",
                &parse(&vars, "256*r^16*(a-3*r)^2*(a-5*r)^2*(a+3*r)^2*(a+5*r)^2"),
                &f.homogeneous_component(24),
            );
            Ok(())
        })();
        if let Err(e) = checks {
            report.error("identities", e);
        }
        self.store("F", &f);
        self.big_f = Some(f);
        report
    }

    pub fn stage3(&mut self) -> StageReport {
        let mut report = StageReport::new("3", TITLES[3]);
        let Some(big_f) = self.big_f.clone() else {
            report.error("inputs", "F unavailable");
            return report;
        };
        let derived = (|| -> Result<MPoly, AlgebraError> {
            let vars = ["r", "a", "y"];
            let g = big_f.align(&vars)?;
            let ry = &MPoly::var(&vars, "r")? * &MPoly::var(&vars, "y")?;
            g.substitute("a", &ry)?
                .align(&["r", "y"])?
                .halve_exponents("r", "s")?
                .align(&["s", "y"])
        })();
        let f = match derived {
            Ok(f) => f,
            Err(e) => {
                report.error("substitution a = r y, s = r^2", e);
                return report;
            }
        };
        report.digests.insert("f".into(), digest(&f));
        let checks = (|| -> Result<(), AlgebraError> {
            report.check_eq("deg_s f", 12, f.degree("s")?.unwrap_or(0));
            report.check_eq("deg_y f", 16, f.degree("y")?.unwrap_or(0));
            let lc = f
                .coefficients_in("y")?
                .pop()
                .unwrap_or_else(|| MPoly::zero(&["s"]));
            let single = lc.num_terms() == 1;
            report.check_eq("terms in lc_y f", 1, lc.num_terms());
            if single {
                let (e, c) = lc.leading_lex().expect("one term");
                report.check_eq("s-degree of lc_y f", 8, e[0]);
                report.observe("lc_y f", lc.to_string());
                report.check("lc_y f has nonzero coefficient", !c.is_zero());
            }
            check_poly(
                &mut report,
                "f matches golden term for term",
                &self.golden.f,
                &f,
            );
            Ok(())
        })();
        if let Err(e) = checks {
            report.error("shape of f", e);
        }
        self.store("f", &f);
        self.f = Some(f);
        report
    }

    pub fn stage4(&mut self) -> StageReport {
        let mut report = StageReport::new("4", TITLES[4]);
        let Some(f) = self.f.clone() else {
            report.error("inputs", "f unavailable");
            return report;
        };
        let disc = match self.discriminant_of(&f) {
            Ok(d) => d,
            Err(e) => {
                report.error("discriminant", e);
                return report;
            }
        };
        report
            .digests
            .insert("disc".into(), digest(&MPoly::from_upoly(&disc)));
        report.check_eq("deg disc", 312, disc.degree().unwrap_or(0));
        let factored = (|| -> Result<(UPolyZ, UPolyZ, Int), AlgebraError> {
            let g = &self.golden;
            let mut rest = disc.clone();
            let linear = [
                ("s", UPolyZ::from_i64s("s", &[0, 1]), g.exponents.s),
                (
                    "s-1",
                    UPolyZ::from_i64s("s", &[-1, 1]),
                    g.exponents.s_minus_1,
                ),
                ("s+1", UPolyZ::from_i64s("s", &[1, 1]), g.exponents.s_plus_1),
            ];
            for (name, factor, want) in &linear {
                let (q, k) = rest.divide_out(factor)?;
                report.check_eq(&format!("multiplicity of {name}"), *want, k);
                rest = q;
            }
            let (unit, parts) = rest.squarefree_decomposition()?;
            let shape: Vec<String> = parts
                .iter()
                .map(|(p, k)| format!("deg {} ^{k}", p.degree().unwrap_or(0)))
                .collect();
            let mut want = [(g.exponents.p6, 6), (g.exponents.p28, 28)];
            want.sort();
            let want: Vec<String> = want.iter().map(|(k, d)| format!("deg {d} ^{k}")).collect();
            report.check_eq(
                "squarefree decomposition of the residual",
                want.join(", "),
                shape.join(", "),
            );
            let find = |k: u32| -> UPolyZ {
                parts
                    .iter()
                    .find(|(_, e)| *e == k)
                    .map(|(p, _)| p.clone())
                    .unwrap_or_else(|| UPolyZ::one("s"))
            };
            let p6 = find(g.exponents.p6);
            let p28 = find(g.exponents.p28);
            check_poly(
                &mut report,
                "P6 matches golden",
                &MPoly::from_upoly(&g.p6),
                &MPoly::from_upoly(&p6),
            );
            check_poly(
                &mut report,
                "P28 matches golden",
                &MPoly::from_upoly(&g.p28),
                &MPoly::from_upoly(&p28),
            );
            report.check_eq("constant factor C", g.disc_constant.clone(), unit.clone());
            report.check("P6 squarefree", is_squarefree(&p6));
            report.check("P28 squarefree", is_squarefree(&p28));
            let mut product = UPolyZ::constant("s", g.disc_constant.clone());
            for (factor, k) in [
                (UPolyZ::from_i64s("s", &[0, 1]), g.exponents.s),
                (UPolyZ::from_i64s("s", &[-1, 1]), g.exponents.s_minus_1),
                (UPolyZ::from_i64s("s", &[1, 1]), g.exponents.s_plus_1),
                (g.p6.clone(), g.exponents.p6),
                (g.p28.clone(), g.exponents.p28),
            ] {
                product = product.mul(&factor.pow(k));
            }
            check_poly(
                &mut report,
                "disc = C s^156 (s-1)^54 (s+1)^22 P6^4 P28^2 with golden factors",
                &MPoly::from_upoly(&product),
                &MPoly::from_upoly(&disc),
            );
            Ok((p6, p28, unit))
        })();
        match factored {
            Ok((p6, p28, _)) => {
                report
                    .digests
                    .insert("P6".into(), digest(&MPoly::from_upoly(&p6)));
                report
                    .digests
                    .insert("P28".into(), digest(&MPoly::from_upoly(&p28)));
                self.p6 = Some(p6);
                self.p28 = Some(p28);
                self.disc = Some(disc);
            }
            Err(e) => report.error("factorization", e),
        }
        report
    }

    /// `disc_y f` as a polynomial in `s`, from the cache when possible.
    fn discriminant_of(&self, f: &MPoly) -> Result<UPolyZ, PipelineError> {
        let cache = self.disc_cache_path(f);
        if let Some(path) = cache.as_ref().filter(|p| p.exists()) {
            if let Ok(d) = read_poly(path).and_then(|p| Ok(p.to_upoly("s")?)) {
                return Ok(d);
            }
        }
        let d = discriminant_with(f, "y", &ElimOptions::interpolation(self.config.jobs))?
            .to_upoly("s")?;
        if let Some(path) = cache {
            if let Some(dir) = path.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            let _ = write_poly(&path, &MPoly::from_upoly(&d));
        }
        Ok(d)
    }

    pub fn stage5(&mut self) -> StageReport {
        let mut report = StageReport::new("5", TITLES[5]);
        let (Some(p6), Some(p28)) = (self.p6.clone(), self.p28.clone()) else {
            report.error("inputs", "P6, P28 unavailable");
            return report;
        };
        let show = |roots: &std::collections::BTreeSet<Rat>| {
            let v: Vec<String> = roots.iter().map(Rat::to_string).collect();
            format!("{{{}}}", v.join(", "))
        };
        for (name, p) in [("P6", &p6), ("P28", &p28)] {
            match up_rational_roots(p) {
                Ok(roots) => {
                    report.check_eq(
                        &format!("rational roots of {name}"),
                        "{}".to_string(),
                        show(&roots),
                    );
                }
                Err(e) => report.error(&format!("rational roots of {name}"), e),
            }
        }
        report.check_eq("P6(1)", Rat::from(-86), p6.eval(&Rat::one()));
        report.check_eq("P6(-1)", Rat::from(-6250), p6.eval(&Rat::from(-1)));
        report
    }

    pub fn stage6(&mut self) -> StageReport {
        let mut report = StageReport::new("6", TITLES[6]);
        let (Some(p6), Some(p28), Some(disc)) =
            (self.p6.clone(), self.p28.clone(), self.disc.clone())
        else {
            report.error("inputs", "P6, P28, disc unavailable");
            return report;
        };
        let zero = ExtendedPoint::finite(Rat::zero());
        let plus = ExtendedPoint::PlusInfinity;
        let poly_of = |name: &str| match name {
            "P6" => Some(&p6),
            "P28" => Some(&p28),
            _ => None,
        };
        let mut totals = std::collections::BTreeMap::new();
        for (name, p, want) in [("P6", &p6, 2usize), ("P28", &p28, 3)] {
            match count_real_roots(p, &zero, &plus) {
                Ok(n) => {
                    report.check_eq(&format!("positive roots of {name}"), want, n);
                    totals.insert(name, n);
                }
                Err(e) => report.error(&format!("positive roots of {name}"), e),
            }
        }

        let brackets = self.golden.brackets.clone();
        let mut covered = std::collections::BTreeMap::new();
        for b in &brackets {
            let Some(p) = poly_of(&b.poly) else {
                report.record(
                    &format!("{} polynomial", b.label),
                    "P6 or P28",
                    &b.poly,
                    false,
                );
                continue;
            };
            let signs = [p.sign_at(&b.lo).value(), p.sign_at(&b.hi).value()];
            report.check_eq(
                &format!("{} signs at ({}, {})", b.label, b.lo, b.hi),
                format!("{:?}", b.signs),
                format!("{signs:?}"),
            );
            report.check(
                &format!("{} endpoint signs differ", b.label),
                signs[0] * signs[1] < 0,
            );
            match count_real_roots(p, &b.lo.clone().into(), &b.hi.clone().into()) {
                Ok(n) => {
                    report.check_eq(&format!("{} Sturm count", b.label), 1, n);
                    *covered.entry(b.poly.as_str()).or_insert(0) += n;
                }
                Err(e) => report.error(&format!("{} Sturm count", b.label), e),
            }
        }
        for (name, total) in &totals {
            report.check_eq(
                &format!("brackets cover every positive root of {name}"),
                *total,
                covered.get(name).copied().unwrap_or(0),
            );
        }

        let find = |label: &str| brackets.iter().find(|b| b.label == label);
        let order = ["alpha1", "beta1", "1", "beta2", "beta3", "alpha2"];
        let bounds = |label: &str| -> Option<(Rat, Rat)> {
            match label {
                "0" => Some((Rat::zero(), Rat::zero())),
                "1" => Some((Rat::one(), Rat::one())),
                l => find(l).map(|b: &GoldenBracket| (b.lo.clone(), b.hi.clone())),
            }
        };
        for w in order.windows(2) {
            let ok = match (bounds(w[0]), bounds(w[1])) {
                (Some((_, hi)), Some((lo, _))) => {
                    if w[0] == "1" || w[1] == "1" {
                        hi < lo
                    } else {
                        hi <= lo
                    }
                }
                _ => false,
            };
            report.check(&format!("{} < {}", w[0], w[1]), ok);
        }
        for (i, a) in brackets.iter().enumerate() {
            for b in &brackets[i + 1..] {
                let disjoint = a.hi <= b.lo || b.hi <= a.lo;
                report.check(&format!("{} and {} disjoint", a.label, b.label), disjoint);
            }
        }

        for sample in &self.golden.samples {
            let [left, right] = &sample.interval;
            let lower = match left.as_str() {
                "+oo" => None,
                l => bounds(l).map(|(_, hi)| hi),
            };
            let upper = match right.as_str() {
                "+oo" => Some(None),
                l => bounds(l).map(|(lo, _)| Some(lo)),
            };
            let inside = match (lower, upper) {
                (Some(lo), Some(hi)) => lo < sample.s && hi.map_or(true, |h| sample.s < h),
                _ => false,
            };
            report.check(
                &format!("s = {} inside ({left}, {right})", sample.s),
                inside,
            );
            report.check(
                &format!("disc({}) != 0", sample.s),
                disc.sign_at(&sample.s) != Sign::Zero,
            );
        }

        let mut isolated = Vec::new();
        for (name, p) in [("P6", &p6), ("P28", &p28)] {
            match isolate_positive_roots(p) {
                Ok(bs) => {
                    report.check_eq(
                        &format!("isolated positive roots of {name}"),
                        totals.get(name).copied().unwrap_or(0),
                        bs.len(),
                    );
                    let shown: Vec<String> = bs.iter().map(Bracket::to_string).collect();
                    report.observe(&format!("{name} isolating brackets"), shown.join(" "));
                    isolated.extend(bs.into_iter().map(|b| (name.to_string(), b)));
                }
                Err(e) => report.error(&format!("isolation of {name}"), e),
            }
        }
        self.isolated = Some(isolated);
        report
    }

    pub fn stage7(&mut self) -> StageReport {
        let mut report = StageReport::new("7", TITLES[7]);
        let Some(f) = self.f.clone() else {
            report.error("inputs", "f unavailable");
            return report;
        };
        let samples = self.golden.samples.clone();
        let results: Vec<Result<FiberCheck, AlgebraError>> = with_pool(self.config.jobs, || {
            samples
                .par_iter()
                .map(|sample| {
                    let g = f.specialize("y", &[("s", sample.s.clone())])?;
                    let gz = g.clear_denominators().1;
                    let count = count_real_roots(
                        &g,
                        &ExtendedPoint::MinusInfinity,
                        &ExtendedPoint::PlusInfinity,
                    )?;
                    Ok(FiberCheck {
                        degree: g.degree(),
                        squarefree: is_squarefree(&gz),
                        roots: count,
                    })
                })
                .collect()
        });
        for ((sample, expected), result) in samples
            .iter()
            .zip(&self.golden.expected_counts)
            .zip(results)
        {
            let s = &sample.s;
            match result {
                Ok(FiberCheck {
                    degree: deg,
                    squarefree,
                    roots: count,
                }) => {
                    report.check_eq(&format!("deg_y f({s}, y)"), 16, deg.unwrap_or(0));
                    report.check(&format!("f({s}, y) squarefree"), squarefree);
                    report.check_eq(&format!("real roots of f({s}, y)"), *expected, count);
                }
                Err(e) => report.error(&format!("sample {s}"), e),
            }
        }
        report
    }

    pub fn stage8(&mut self) -> StageReport {
        let mut report = StageReport::new("8", TITLES[8]);
        let Some(f) = self.f.clone() else {
            report.error("inputs", "f unavailable");
            return report;
        };
        let fiber = match f.specialize("y", &[("s", Rat::one())]) {
            Ok(g) => g,
            Err(e) => {
                report.error("specialization at s = 1", e);
                return report;
            }
        };
        match fiber.to_integer_poly() {
            None => {
                report.record("f(1, y) has integer coefficients", true, false, false);
            }
            Some(g) => {
                let mut product = UPolyZ::one("y");
                let mut shown = Vec::new();
                for (factor, k) in &self.golden.f1_factors {
                    product = product.mul(&factor.pow(*k));
                    shown.push(format!("({factor})^{k}"));
                }
                check_poly(
                    &mut report,
                    &format!("f(1, y) = {}", shown.join(" ")),
                    &MPoly::from_upoly(&product),
                    &MPoly::from_upoly(&g.clone().with_var("y")),
                );
                report.check_eq("f(1, 0)", Int::from(10625), g.coeff(0));
                report.check_eq("f(1, 1)", Rat::zero(), fiber.eval(&Rat::one()));
            }
        }
        report
    }
}

/// Coefficient comparison of `R(u) (-R(-u))` with `Q_r(u)`; returns the
/// cleared, primitive, lex-positive `(E2, E3)` over `(a, d, r)`.
fn derive_e2_e3(report: &mut StageReport) -> Result<(MPoly, MPoly), AlgebraError> {
    let vars = ["u", "r", "a", "b", "c", "d", "e"];
    let inner = ["r", "a", "b", "c", "d", "e"];
    let qr = build_qr().align(&vars)?;
    let big_r = QuinticAnsatz::default().polynomial(&vars)?;
    let u = MPoly::var(&vars, "u")?;
    let mirrored = big_r.substitute("u", &u.neg())?.neg();
    let diff = &(&big_r * &mirrored) - &qr;
    let coeff = |k: u32| diff.coeff_in("u", k);

    for k in [10, 9, 7, 5, 3, 1] {
        report.check(&format!("u^{k} coefficient vanishes"), coeff(k)?.is_zero());
    }
    check_poly(
        report,
        "u^0 coefficient: e^2 = r^10",
        &parse(&inner, "r^10 - e^2"),
        &coeff(0)?,
    );

    let r5 = parse(&inner, "r^5");
    // eq = alpha * var + beta with alpha free of var; returns (-beta, alpha)
    // with alpha lex-positive.
    let solve = |eq: &MPoly, var: &str| -> Result<(MPoly, MPoly), AlgebraError> {
        match eq.degree(var)? {
            Some(1) => {}
            Some(0) | None => return Err(AlgebraError::DegreeZero(var.to_string())),
            Some(_) => return Err(AlgebraError::DegreeExceeded(1)),
        }
        let alpha = eq.coeff_in(var, 1)?.align(&inner)?;
        let beta = eq.coeff_in(var, 0)?.align(&inner)?;
        let negative = alpha
            .leading_lex()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        Ok(if negative {
            (beta, alpha.neg())
        } else {
            (beta.neg(), alpha)
        })
    };
    let (b_num, b_den) = solve(&coeff(8)?.substitute("e", &r5)?, "b")?;
    let (c_num, c_den) = solve(&coeff(2)?.substitute("e", &r5)?, "c")?;
    report.observe("b", format!("({b_num}) / ({b_den})"));
    report.observe("c", format!("({c_num}) / ({c_den})"));
    check_poly(
        report,
        "u^8 coefficient solves b with denominator 2",
        &parse(&inner, "2"),
        &b_den,
    );
    check_poly(
        report,
        "u^2 coefficient solves c with denominator 2 r^5",
        &parse(&inner, "2*r^5"),
        &c_den,
    );

    let mut out = Vec::new();
    for (k, name) in [(6, "E2"), (4, "E3")] {
        let eq = coeff(k)?.substitute("e", &r5)?;
        let (eq, db) = eq.substitute_fraction("b", &b_num, &b_den)?;
        let (eq, dc) = eq.substitute_fraction("c", &c_num, &c_den)?;
        report.observe(
            &format!("{name} cleared by"),
            format!("(2)^{db} * (2*r^5)^{dc}"),
        );
        for v in ["b", "c", "e"] {
            report.check_eq(
                &format!("{name} free of {v}"),
                0,
                eq.degree(v)?.unwrap_or(0),
            );
        }
        let (_, prim) = eq.align(&["a", "d", "r"])?.primitive()?;
        let negative = prim
            .leading_lex()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        out.push(if negative { prim.neg() } else { prim });
    }
    let e3 = out.pop().expect("two equations");
    let e2 = out.pop().expect("two equations");
    Ok((e2, e3))
}
