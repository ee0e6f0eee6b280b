//! CWS code records and their JSON form.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::clifford::AxisPerm;
use crate::error::{CwsError, Result};
use crate::error_model::ErrorSetKind;
use crate::pauli::PauliOperator;

/// A CWS code: word stabilizer generators plus word operators. The
/// `codewords` are the standard-form classical code, word operator `l`
/// being `Z^{codewords[l]}` before the local Clifford recorded by `perm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwsCode {
    pub n: usize,
    pub stabilizer: Vec<PauliOperator>,
    pub word_operators: Vec<PauliOperator>,
    pub codewords: Vec<u32>,
    pub perm: Option<AxisPerm>,
    pub error_set: Option<ErrorSetKind>,
    pub additive: bool,
    pub degenerate: bool,
}

impl CwsCode {
    pub fn dimension(&self) -> usize {
        self.word_operators.len()
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            n: self.n,
            k: Some(self.dimension()),
            stabilizer: self.stabilizer.clone(),
            word_operators: Some(self.word_operators.clone()),
            codewords: Some(
                self.codewords
                    .iter()
                    .map(|&c| format_bits(c, self.n))
                    .collect(),
            ),
            perm: self.perm.clone(),
            error_set: self.error_set,
            additive: Some(self.additive),
            degenerate: Some(self.degenerate),
        }
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_json())?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json_string()? + "\n")?;
        Ok(())
    }
}

/// On-disk code schema. A file with only `n` and `stabilizer` describes a
/// stabilizer code by its generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeJson {
    pub n: usize,
    #[serde(rename = "K", default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub stabilizer: Vec<PauliOperator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_operators: Option<Vec<PauliOperator>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub codewords: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perm: Option<AxisPerm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error_set: Option<ErrorSetKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub additive: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degenerate: Option<bool>,
}

/// What a code file turned out to contain.
#[derive(Clone, Debug)]
pub enum CodeFile {
    Cws(CwsCode),
    Stabilizer(Vec<PauliOperator>),
}

impl CodeJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_code_file(self) -> Result<CodeFile> {
        for p in &self.stabilizer {
            if p.num_qubits() != self.n {
                return Err(CwsError::LengthMismatch(self.n, p.num_qubits()));
            }
        }
        let Some(word_operators) = self.word_operators else {
            return Ok(CodeFile::Stabilizer(self.stabilizer));
        };
        for w in &word_operators {
            if w.num_qubits() != self.n {
                return Err(CwsError::LengthMismatch(self.n, w.num_qubits()));
            }
        }
        if let Some(k) = self.k {
            if k != word_operators.len() {
                return Err(CwsError::CodeDefect(format!(
                    "K = {k} but {} word operators listed",
                    word_operators.len()
                )));
            }
        }
        let codewords = self
            .codewords
            .unwrap_or_default()
            .iter()
            .map(|s| parse_bits(s, self.n))
            .collect::<Result<Vec<_>>>()?;
        Ok(CodeFile::Cws(CwsCode {
            n: self.n,
            stabilizer: self.stabilizer,
            word_operators,
            codewords,
            perm: self.perm,
            error_set: self.error_set,
            additive: self.additive.unwrap_or(false),
            degenerate: self.degenerate.unwrap_or(false),
        }))
    }
}

pub fn read_code_file(path: &Path) -> Result<CodeFile> {
    CodeJson::parse(&std::fs::read_to_string(path)?)?.into_code_file()
}

/// Bit string with qubit 1 leftmost.
pub fn format_bits(c: u32, n: usize) -> String {
    (0..n)
        .map(|j| if c >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bits(s: &str, n: usize) -> Result<u32> {
    if s.len() != n {
        return Err(CwsError::InvalidParameter(format!(
            "bit string {s:?} should have {n} characters"
        )));
    }
    s.chars()
        .enumerate()
        .try_fold(0u32, |acc, (j, ch)| match ch {
            '0' => Ok(acc),
            '1' => Ok(acc | 1 << j),
            _ => Err(CwsError::InvalidParameter(format!("bad bit string {s:?}"))),
        })
}
