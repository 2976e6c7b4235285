//! The JSON polynomial file format:
//! `{"vars": [...], "terms": [[[exps...], "coeff"], ...]}` with terms in
//! descending graded-lex order and decimal-string coefficients.

use crate::arith::Int;
use crate::error::AlgebraError;
use crate::mpoly::MPoly;
use crate::upoly::UPolyZ;
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyFile {
    pub vars: Vec<String>,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl PolyFile {
    pub fn from_mpoly(p: &MPoly) -> PolyFile {
        PolyFile {
            vars: p.vars().to_vec(),
            terms: p
                .terms_grlex_desc()
                .into_iter()
                .map(|(e, c)| (e.clone(), c.to_string()))
                .collect(),
        }
    }

    pub fn from_upoly(p: &UPolyZ) -> PolyFile {
        PolyFile::from_mpoly(&MPoly::from_upoly(p))
    }

    pub fn to_mpoly(&self) -> Result<MPoly, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.clone(), c.parse::<Int>()?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        MPoly::from_terms(&self.vars, terms)
    }

    pub fn to_upoly(&self) -> Result<UPolyZ, AlgebraError> {
        match self.vars.as_slice() {
            [v] => self.to_mpoly()?.to_upoly(v),
            _ => Err(AlgebraError::Parse(format!(
                "expected one variable, found {:?}",
                self.vars
            ))),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial files always serialize")
    }

    pub fn from_json(src: &str) -> Result<PolyFile, AlgebraError> {
        serde_json::from_str(src).map_err(|e| AlgebraError::Parse(e.to_string()))
    }
}

pub fn write_poly(path: &Path, p: &MPoly) -> std::io::Result<()> {
    std::fs::write(path, PolyFile::from_mpoly(p).to_json())
}

pub fn read_poly(path: &Path) -> Result<MPoly, super::PipelineError> {
    let src = std::fs::read_to_string(path).map_err(|e| super::PipelineError::io(path, e))?;
    Ok(PolyFile::from_json(&src)?.to_mpoly()?)
}
