//! Reference data the pipeline compares against, loaded from a directory of
//! checksummed JSON files.

use super::format::PolyFile;
use super::PipelineError;
use crate::arith::{Int, Rat};
use crate::mpoly::MPoly;
use crate::upoly::UPolyZ;
use serde::Deserialize;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

pub const GOLDEN_FILES: [&str; 11] = [
    "E2.json",
    "E3.json",
    "F.json",
    "f.json",
    "P6.json",
    "P28.json",
    "disc.json",
    "brackets.json",
    "samples.json",
    "f1_factors.json",
    "SHA256SUMS",
];

/// The directory shipped with this crate.
pub fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden")
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct DiscExponents {
    pub s: u32,
    #[serde(rename = "s-1")]
    pub s_minus_1: u32,
    #[serde(rename = "s+1")]
    pub s_plus_1: u32,
    #[serde(rename = "P6")]
    pub p6: u32,
    #[serde(rename = "P28")]
    pub p28: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenBracket {
    pub label: String,
    /// `"P6"` or `"P28"`.
    pub poly: String,
    pub lo: Rat,
    pub hi: Rat,
    /// Expected signs of the polynomial at `lo` and `hi`.
    pub signs: [i8; 2],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sample {
    /// Labels of the interval ends: `"0"`, `"1"`, `"+oo"` or a bracket label.
    pub interval: [String; 2],
    pub s: Rat,
}

#[derive(Debug, Clone)]
pub struct GoldenData {
    pub e2: MPoly,
    pub e3: MPoly,
    pub big_f: MPoly,
    pub f: MPoly,
    pub p6: UPolyZ,
    pub p28: UPolyZ,
    pub disc_constant: Int,
    pub exponents: DiscExponents,
    pub brackets: Vec<GoldenBracket>,
    pub samples: Vec<Sample>,
    pub expected_counts: Vec<usize>,
    pub f1_factors: Vec<(UPolyZ, u32)>,
    /// SHA-256 of every data file, by file name.
    pub checksums: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct DiscFile {
    constant: String,
    exponents: DiscExponents,
}

#[derive(Deserialize)]
struct RawBracket {
    label: String,
    poly: String,
    lo: String,
    hi: String,
    signs: [i8; 2],
}

#[derive(Deserialize)]
struct BracketFile {
    brackets: Vec<RawBracket>,
}

#[derive(Deserialize)]
struct RawSample {
    interval: [String; 2],
    s: String,
    expected_count: usize,
}

#[derive(Deserialize)]
struct SampleFile {
    samples: Vec<RawSample>,
}

#[derive(Deserialize)]
struct RawFactor {
    poly: PolyFile,
    exp: u32,
}

#[derive(Deserialize)]
struct FactorFile {
    factors: Vec<RawFactor>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn bad(file: &str, what: impl std::fmt::Display) -> PipelineError {
    PipelineError::Golden(format!("{file}: {what}"))
}

impl GoldenData {
    /// Load and checksum-verify every file in `dir`.
    pub fn load(dir: &Path) -> Result<GoldenData, PipelineError> {
        let manifest_path = dir.join("SHA256SUMS");
        let manifest = std::fs::read_to_string(&manifest_path)
            .map_err(|e| PipelineError::io(&manifest_path, e))?;
        let mut listed = BTreeMap::new();
        for line in manifest.lines().filter(|l| !l.trim().is_empty()) {
            let (hash, name) = line
                .split_once("  ")
                .ok_or_else(|| bad("SHA256SUMS", format!("malformed line `{line}`")))?;
            listed.insert(name.trim().to_string(), hash.trim().to_string());
        }
        let mut files = BTreeMap::new();
        let mut checksums = BTreeMap::new();
        for name in GOLDEN_FILES.iter().filter(|n| **n != "SHA256SUMS") {
            let path = dir.join(name);
            let bytes = std::fs::read(&path).map_err(|e| PipelineError::io(&path, e))?;
            let got = sha256_hex(&bytes);
            match listed.get(*name) {
                Some(want) if *want == got => {}
                Some(want) => {
                    return Err(PipelineError::Checksum {
                        file: name.to_string(),
                        expected: want.clone(),
                        got,
                    })
                }
                None => return Err(bad("SHA256SUMS", format!("no entry for {name}"))),
            }
            checksums.insert(name.to_string(), got);
            let text = String::from_utf8(bytes).map_err(|e| bad(name, e))?;
            files.insert(*name, text);
        }

        let poly = |name: &str| -> Result<MPoly, PipelineError> {
            PolyFile::from_json(&files[name])
                .and_then(|p| p.to_mpoly())
                .map_err(|e| bad(name, e))
        };
        let upoly = |name: &str| -> Result<UPolyZ, PipelineError> {
            PolyFile::from_json(&files[name])
                .and_then(|p| p.to_upoly())
                .map_err(|e| bad(name, e))
        };
        fn json<T: for<'de> Deserialize<'de>>(name: &str, src: &str) -> Result<T, PipelineError> {
            serde_json::from_str(src).map_err(|e| bad(name, e))
        }
        let rat = |name: &str, s: &str| -> Result<Rat, PipelineError> {
            s.parse().map_err(|e| bad(name, e))
        };

        let disc: DiscFile = json("disc.json", &files["disc.json"])?;
        let brackets: BracketFile = json("brackets.json", &files["brackets.json"])?;
        let samples: SampleFile = json("samples.json", &files["samples.json"])?;
        let factors: FactorFile = json("f1_factors.json", &files["f1_factors.json"])?;

        Ok(GoldenData {
            e2: poly("E2.json")?,
            e3: poly("E3.json")?,
            big_f: poly("F.json")?,
            f: poly("f.json")?,
            p6: upoly("P6.json")?,
            p28: upoly("P28.json")?,
            disc_constant: disc.constant.parse().map_err(|e| bad("disc.json", e))?,
            exponents: disc.exponents,
            brackets: brackets
                .brackets
                .into_iter()
                .map(|b| {
                    Ok(GoldenBracket {
                        lo: rat("brackets.json", &b.lo)?,
                        hi: rat("brackets.json", &b.hi)?,
                        label: b.label,
                        poly: b.poly,
                        signs: b.signs,
                    })
                })
                .collect::<Result<_, PipelineError>>()?,
            expected_counts: samples.samples.iter().map(|s| s.expected_count).collect(),
            samples: samples
                .samples
                .into_iter()
                .map(|s| {
                    Ok(Sample {
                        s: rat("samples.json", &s.s)?,
                        interval: s.interval,
                    })
                })
                .collect::<Result<_, PipelineError>>()?,
            f1_factors: factors
                .factors
                .into_iter()
                .map(|f| {
                    Ok((
                        f.poly.to_upoly().map_err(|e| bad("f1_factors.json", e))?,
                        f.exp,
                    ))
                })
                .collect::<Result<_, PipelineError>>()?,
            checksums,
        })
    }
}
