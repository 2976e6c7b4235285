//! One line per acceptance criterion; exits nonzero if any fails.

use cuboid_core::elimination::{
    bareiss_det, discriminant, resultant_with, univariate_resultant, ElimOptions,
};
use cuboid_core::pipeline::{
    build_qpq, build_qr, run_all, stage0_check, Certificate, Config, CuboidInstance,
    InstanceChecker, Verdict,
};
use cuboid_core::realroots::{count_real_roots, ExtendedPoint};
use cuboid_core::upoly::up_gcd;
use cuboid_core::{Int, MPoly, Rat, UPolyZ};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config as PropConfig, TestRunner};
use std::collections::BTreeSet;
use std::path::Path;

struct Line {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn stage_ok(cert: &Certificate, id: &str, required: &[&str]) -> (bool, String) {
    let Some(stage) = cert.stage(id) else {
        return (false, format!("stage {id} missing"));
    };
    let missing: Vec<&str> = required
        .iter()
        .copied()
        .filter(|name| {
            !stage
                .assertions
                .iter()
                .any(|a| a.name.contains(name) && a.pass)
        })
        .collect();
    let pass = stage.passed() && missing.is_empty();
    let detail = if pass {
        format!(
            "{} assertions, {} ms",
            stage.assertions.len(),
            stage.wall_ms
        )
    } else if let Some(a) = stage.first_failure() {
        format!("`{}`: expected {}, got {}", a.name, a.expected, a.got)
    } else {
        format!("missing assertions {missing:?}")
    };
    (pass, detail)
}

fn copy_golden(src: &Path, dst: &Path) {
    for entry in std::fs::read_dir(src).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dst.join(entry.file_name())).unwrap();
    }
}

fn rewrite_checksums(dir: &Path) {
    use sha2::{Digest, Sha256};
    let mut out = String::new();
    for name in cuboid_core::pipeline::golden::GOLDEN_FILES {
        if name == "SHA256SUMS" {
            continue;
        }
        let bytes = std::fs::read(dir.join(name)).unwrap();
        out.push_str(&format!(
            "{}  {name}\n",
            hex::encode(Sha256::digest(&bytes))
        ));
    }
    std::fs::write(dir.join("SHA256SUMS"), out).unwrap();
}

/// Add one to the first coefficient of a polynomial file.
fn bump_first_coefficient(src: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(src).unwrap();
    let c = &mut v["terms"][0][1];
    let n: Int = c.as_str().unwrap().parse().unwrap();
    *c = serde_json::Value::String((n + Int::one()).to_string());
    serde_json::to_string(&v).unwrap()
}

fn replace_once(src: &str, from: &str, to: &str) -> String {
    assert!(src.contains(from), "{from} not found");
    src.replacen(from, to, 1)
}

/// Label, golden file, edit, owning stage.
type Mutation = (
    &'static str,
    &'static str,
    Box<dyn Fn(&str) -> String>,
    &'static str,
);

fn mutations() -> Vec<Mutation> {
    vec![
        ("E2", "E2.json", Box::new(bump_first_coefficient), "1"),
        ("E3", "E3.json", Box::new(bump_first_coefficient), "1"),
        ("F", "F.json", Box::new(bump_first_coefficient), "2"),
        ("f", "f.json", Box::new(bump_first_coefficient), "3"),
        ("P6", "P6.json", Box::new(bump_first_coefficient), "4"),
        ("P28", "P28.json", Box::new(bump_first_coefficient), "4"),
        (
            "C",
            "disc.json",
            Box::new(|s| replace_once(s, "89504\"", "89505\"")),
            "4",
        ),
        (
            "exponents",
            "disc.json",
            Box::new(|s| replace_once(s, "\"s\":156", "\"s\":157")),
            "4",
        ),
        (
            "brackets",
            "brackets.json",
            Box::new(|s| replace_once(s, "31/1000", "33/1000")),
            "6",
        ),
        (
            "samples",
            "samples.json",
            Box::new(|s| replace_once(s, "\"1/100\"", "\"1/10\"")),
            "6",
        ),
        (
            "expected_counts",
            "samples.json",
            Box::new(|s| replace_once(s, "\"expected_count\":0", "\"expected_count\":1")),
            "7",
        ),
        (
            "f1_factors",
            "f1_factors.json",
            Box::new(|s| replace_once(s, "\"17\"", "\"18\"")),
            "8",
        ),
    ]
}

fn small_upoly() -> impl Strategy<Value = UPolyZ> {
    (
        prop::collection::vec(-6i64..=6, 1..4),
        prop::sample::select(vec![-2i64, -1, 1, 3]),
    )
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            UPolyZ::from_i64s("x", &c)
        })
}

fn cofactor_det(a: &[Vec<i64>]) -> i128 {
    if a.is_empty() {
        return 1;
    }
    (0..a.len())
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

fn property_suites(cert: &Certificate) -> (bool, String) {
    let cfg = PropConfig {
        cases: 256,
        failure_persistence: None,
        ..PropConfig::default()
    };
    let mut failures = Vec::new();
    let res = |f: &UPolyZ, g: &UPolyZ| univariate_resultant(f, g).unwrap();

    let mut runner = TestRunner::new(cfg.clone());
    if let Err(e) = runner.run(
        &(small_upoly(), small_upoly(), small_upoly()),
        |(f, g, h)| {
            prop_assert_eq!(res(&f, &g.mul(&h)), res(&f, &g) * res(&f, &h));
            let sign = if f.degree().unwrap() * g.degree().unwrap() % 2 == 1 {
                -1
            } else {
                1
            };
            prop_assert_eq!(res(&f, &g), Int::from(sign) * res(&g, &f));
            let shared = (f.mul(&h), g.mul(&h));
            for (a, b) in [(&f, &g), (&shared.0, &shared.1)] {
                prop_assert_eq!(res(a, b).is_zero(), !up_gcd(a, b).is_constant());
            }
            Ok(())
        },
    ) {
        failures.push(format!("resultant: {e}"));
    }

    let mut runner = TestRunner::new(cfg.clone());
    if let Err(e) = runner.run(
        &(
            prop::collection::btree_set(-20i64..=20, 1..9),
            -40i64..=40,
            1i64..=40,
        ),
        |(roots, a, w)| {
            let p = roots.iter().fold(UPolyZ::from_i64s("x", &[1]), |acc, r| {
                acc.mul(&UPolyZ::from_i64s("x", &[-r, 1]))
            });
            let all = count_real_roots(
                &p,
                &ExtendedPoint::MinusInfinity,
                &ExtendedPoint::PlusInfinity,
            )
            .unwrap();
            prop_assert_eq!(all, roots.len());
            let lo = Rat::frac(2 * a + 1, 2);
            let hi = &lo + &Rat::from(w);
            let want = roots
                .iter()
                .filter(|&&r| lo < Rat::from(r) && Rat::from(r) < hi)
                .count();
            prop_assert_eq!(count_real_roots(&p, &lo.into(), &hi.into()).unwrap(), want);
            Ok(())
        },
    ) {
        failures.push(format!("Sturm: {e}"));
    }

    let mut runner = TestRunner::new(PropConfig { cases: 128, ..cfg });
    if let Err(e) = runner.run(
        &(1usize..=6, prop::collection::vec(-9i64..=9, 36)),
        |(n, seed)| {
            let a: Vec<Vec<i64>> = (0..n).map(|i| seed[i * 6..i * 6 + n].to_vec()).collect();
            let m: Vec<Vec<Int>> = a
                .iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect();
            prop_assert_eq!(bareiss_det(&m), Int::from(cofactor_det(&a)));
            Ok(())
        },
    ) {
        failures.push(format!("Bareiss: {e}"));
    }

    let quad = discriminant(
        &MPoly::parse(&["x", "b", "c"], "x^2 + b*x + c").unwrap(),
        "x",
    )
    .unwrap();
    if quad != MPoly::parse(&["b", "c"], "b^2 - 4*c").unwrap() {
        failures.push(format!("quadratic discriminant {quad}"));
    }
    let cubic = MPoly::parse(&["x", "p", "q"], "x^3 + p*x + q").unwrap();
    let want = MPoly::parse(&["p", "q"], "-4*p^3 - 27*q^2").unwrap();
    if discriminant(&cubic, "x").unwrap() != want {
        failures.push("cubic discriminant".into());
    }
    let (paths, _) = stage_ok(cert, "2", &["Bareiss and interpolation resultants agree"]);
    if !paths {
        failures.push("resultant routes disagree on the stage 2 instance".into());
    }
    let direct_check = {
        let e2 = MPoly::parse(&["x", "t"], "x^3 - t*x + 1").unwrap();
        let e3 = MPoly::parse(&["x", "t"], "t*x^2 + x - t^2").unwrap();
        resultant_with(&e2, &e3, "x", &ElimOptions::default()).unwrap()
            == resultant_with(&e2, &e3, "x", &ElimOptions::interpolation(2)).unwrap()
    };
    if !direct_check {
        failures.push("resultant routes disagree".into());
    }
    if failures.is_empty() {
        (
            true,
            "256 resultant, 256 Sturm, 128 Bareiss cases; closed forms; both routes".into(),
        )
    } else {
        (false, failures.join("; "))
    }
}

fn instances(config: &Config) -> (bool, String) {
    let checker = match InstanceChecker::new(config) {
        Ok(c) => c,
        Err(e) => return (false, e.to_string()),
    };
    let mut runner = TestRunner::deterministic();
    let strategy = (1i64..=50, 1i64..=50);
    let mut pairs = BTreeSet::new();
    while pairs.len() < 100 {
        let (p, q) = strategy.new_tree(&mut runner).unwrap().current();
        if p != q && Int::from(p).gcd(&Int::from(q)).is_one() {
            pairs.insert((p, q));
        }
    }
    let mut bad = Vec::new();
    for &(p, q) in &pairs {
        let r = checker.check(&CuboidInstance::new(p, q).unwrap());
        if r.verdict != Verdict::Pass || r.real_roots != Some(0) {
            bad.push(format!("({p}, {q})"));
        }
    }
    for (p, q) in [(2, 2), (4, 2), (0, 1)] {
        if CuboidInstance::new(p, q).is_ok() {
            bad.push(format!("({p}, {q}) accepted"));
        }
    }
    (
        bad.is_empty(),
        if bad.is_empty() {
            "100 pairs pass with 0 real roots; 3 invalid pairs rejected".into()
        } else {
            bad.join(", ")
        },
    )
}

fn negative_controls(cache: &Path) -> (bool, String) {
    let mut bad = Vec::new();
    let mut flipped = build_qpq();
    flipped = &flipped - &MPoly::parse(&["p", "q", "t"], "2*t^10").unwrap();
    let r = stage0_check(&flipped, &build_qr());
    if r.passed()
        || r.first_failure()
            .map(|a| !a.expected.contains(" at "))
            .unwrap_or(true)
    {
        bad.push("stage 0 accepted a sign-flipped Q".to_string());
    }
    for (label, file, mutate, owner) in mutations() {
        let dir = tempfile::tempdir().unwrap();
        copy_golden(&cuboid_core::pipeline::default_golden_dir(), dir.path());
        let path = dir.path().join(file);
        let src = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, mutate(&src)).unwrap();
        rewrite_checksums(dir.path());
        let cfg = Config {
            golden_dir: dir.path().to_path_buf(),
            cache_dir: Some(cache.to_path_buf()),
            keep_going: true,
            ..Config::default()
        };
        match run_all(&cfg) {
            Err(e) => bad.push(format!("{label}: {e}")),
            Ok(cert) => {
                let failed: Vec<&str> = cert
                    .stages
                    .iter()
                    .filter(|s| !s.passed())
                    .map(|s| s.stage.as_str())
                    .collect();
                if failed != [owner] {
                    bad.push(format!(
                        "{label}: failed stages {failed:?}, expected [{owner}]"
                    ));
                }
            }
        }
    }
    if bad.is_empty() {
        (
            true,
            format!(
                "{} golden mutations each fail only their stage; stage 0 locates a flipped sign",
                mutations().len()
            ),
        )
    } else {
        (false, bad.join("; "))
    }
}

fn main() {
    let cache = tempfile::tempdir().unwrap();
    let uncached = Config {
        keep_going: true,
        jobs: 1,
        ..Config::default()
    };
    let cert = run_all(&uncached).expect("golden data loads");
    let parallel = run_all(&Config {
        jobs: 2,
        cache_dir: Some(cache.path().to_path_buf()),
        ..uncached.clone()
    })
    .expect("golden data loads");

    let mut lines = Vec::new();
    let mut push = |id, title, (pass, detail): (bool, String)| {
        lines.push(Line {
            id,
            title,
            pass,
            detail,
        })
    };
    push(
        1,
        "stage 0: weight-20 homogeneity and q = 1 specialization",
        stage_ok(&cert, "0", &["l^20", "Q_r(u)"]),
    );
    push(
        2,
        "stage 1: E2, E3 up to a positive scalar; odd/top coefficients vanish",
        stage_ok(
            &cert,
            "1",
            &[
                "E2 matches",
                "E3 matches",
                "u^10",
                "u^9",
                "u^7",
                "u^5",
                "u^3",
                "u^1 ",
            ],
        ),
    );
    push(
        3,
        "stage 2: F degrees, symmetry, golden match, three identities",
        stage_ok(
            &cert,
            "2",
            &[
                "deg_r F",
                "deg_a F",
                "F(-r, -a)",
                "golden",
                "F(1, a)",
                "F(0, a)",
                "H24",
            ],
        ),
    );
    push(
        4,
        "stage 3: f degrees (12, 16), monomial lc of s-degree 8",
        stage_ok(
            &cert,
            "3",
            &[
                "deg_s f",
                "deg_y f",
                "terms in lc_y f",
                "s-degree of lc_y f",
            ],
        ),
    );
    push(
        5,
        "stage 4: discriminant factorization exact",
        stage_ok(
            &cert,
            "4",
            &[
                "multiplicity of s",
                "multiplicity of s-1",
                "multiplicity of s+1",
                "P6 matches",
                "P28 matches",
                "constant factor C",
                "P6 squarefree",
                "P28 squarefree",
                "disc = C",
            ],
        ),
    );
    push(
        6,
        "stage 5: no rational roots; P6(1) = -86, P6(-1) = -6250",
        stage_ok(
            &cert,
            "5",
            &[
                "rational roots of P6",
                "rational roots of P28",
                "P6(1)",
                "P6(-1)",
            ],
        ),
    );
    push(
        7,
        "stage 6: root counts, brackets, ordering, samples",
        stage_ok(
            &cert,
            "6",
            &[
                "positive roots of P6",
                "positive roots of P28",
                "alpha1 Sturm count",
                "beta3 Sturm count",
                "alpha1 < beta1",
                "beta3 < alpha2",
                "inside",
            ],
        ),
    );
    push(
        8,
        "stage 7: zero real roots at all seven samples",
        stage_ok(&cert, "7", &["real roots of f(1/100", "real roots of f(40"]),
    );
    push(
        9,
        "stage 8: f(1, y) factorization and f(1, 0) = 10625",
        stage_ok(&cert, "8", &["f(1, y) =", "f(1, 0)"]),
    );
    push(10, "property suites", property_suites(&cert));
    push(11, "instance checks", instances(&uncached));
    let (controls, detail) = negative_controls(cache.path());
    let same = cert.without_timing() == parallel.without_timing();
    push(
        12,
        "negative controls and determinism across --jobs",
        (
            controls && same,
            if same {
                detail
            } else {
                format!("{detail}; reports differ between jobs=1 and jobs=2")
            },
        ),
    );

    let mut all = cert.verdict == Verdict::Pass;
    for l in &lines {
        println!(
            "criterion {:>2} [{}] {}: {}",
            l.id,
            if l.pass { "PASS" } else { "FAIL" },
            l.title,
            l.detail
        );
        all &= l.pass;
    }
    println!(
        "acceptance: {}",
        if all { "all criteria pass" } else { "FAILED" }
    );
    if !all {
        std::process::exit(1);
    }
}
