use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::instance::{CenterSolution, StringInstance, SubstringInstance};
use crate::seq::Seq;

/// Symbols refused when an alphabet is inferred from FASTA: ambiguity and gap codes.
const INFERENCE_REJECTS: &[char] = &['N', '-', '.', '*', '?'];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    Json,
    Fasta,
}

impl InputFormat {
    /// Guesses from the extension; anything not `.json` is read as FASTA.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Fasta,
        }
    }
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(Self::Json),
            "fasta" | "fa" => Ok(Self::Fasta),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

/// Metadata of a planted instance. Offsets are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedMeta {
    pub center: String,
    pub d: usize,
    pub offsets: Vec<usize>,
}

/// On-disk instance:
/// `{"alphabet": "...", "strings": [...], "L": int?, "planted": {...}?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub alphabet: String,
    pub strings: Vec<String>,
    #[serde(rename = "L", default, skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted: Option<PlantedMeta>,
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        file.validate()?;
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes") + "\n"
    }

    /// Parses FASTA: `>` lines start a record, sequence lines are
    /// concatenated, symbols are upper-cased. Without `alphabet` the sorted
    /// set of distinct symbols is used.
    pub fn from_fasta(text: &str, alphabet: Option<&str>, window: Option<usize>) -> Result<Self> {
        let mut strings: Vec<String> = Vec::new();
        let mut open = false;
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with(';') {
                continue;
            }
            if line.starts_with('>') {
                strings.push(String::new());
                open = true;
                continue;
            }
            if !open {
                return Err(Error::Parse(format!("line {}: sequence data before the first '>' header", lineno + 1)));
            }
            let cur = strings.last_mut().expect("record is open");
            cur.extend(line.chars().filter(|c| !c.is_whitespace()).flat_map(char::to_uppercase));
        }
        if strings.is_empty() {
            return Err(Error::Parse("no FASTA records".into()));
        }
        let alphabet = match alphabet {
            Some(a) => a.to_uppercase(),
            None => {
                let mut symbols: Vec<char> = strings.iter().flat_map(|s| s.chars()).collect();
                symbols.sort_unstable();
                symbols.dedup();
                if let Some(&bad) = symbols.iter().find(|c| INFERENCE_REJECTS.contains(c)) {
                    return Err(Error::Parse(format!(
                        "symbol {bad:?} is an ambiguity or gap code; declare it in the alphabet to use it"
                    )));
                }
                symbols.into_iter().collect()
            }
        };
        let file = Self { alphabet, strings, window, planted: None };
        file.validate()?;
        Ok(file)
    }

    pub fn to_fasta(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.strings.iter().enumerate() {
            out.push_str(&format!(">s{}\n", i + 1));
            for chunk in s.as_bytes().chunks(60) {
                out.push_str(std::str::from_utf8(chunk).unwrap_or(s));
                out.push('\n');
            }
        }
        out
    }

    pub fn read(path: &Path, format: Option<InputFormat>, alphabet: Option<&str>, window: Option<usize>) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let mut file = match format.unwrap_or_else(|| InputFormat::from_path(path)) {
            InputFormat::Json => Self::from_json(&text)?,
            InputFormat::Fasta => Self::from_fasta(&text, alphabet, window)?,
        };
        if window.is_some() {
            file.window = window;
        }
        Ok(file)
    }

    fn validate(&self) -> Result<()> {
        let alphabet = Alphabet::parse(&self.alphabet)?;
        if self.strings.is_empty() {
            return Err(Error::EmptyInput);
        }
        for s in &self.strings {
            for c in s.chars() {
                alphabet.index(c)?;
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> Result<Arc<Alphabet>> {
        Ok(Arc::new(Alphabet::parse(&self.alphabet)?))
    }

    fn seqs(&self) -> Result<Vec<Seq>> {
        let a = self.alphabet()?;
        self.strings.iter().map(|s| Seq::parse(&a, s)).collect()
    }

    /// True when the file is a Closest String instance: no window, or a
    /// window equal to every string's length.
    pub fn is_string_problem(&self) -> bool {
        let first = self.strings.first().map_or(0, |s| s.chars().count());
        let equal = self.strings.iter().all(|s| s.chars().count() == first);
        equal && self.window.is_none_or(|l| l == first)
    }

    pub fn string_instance(&self) -> Result<StringInstance> {
        StringInstance::new(self.seqs()?)
    }

    pub fn substring_instance(&self) -> Result<SubstringInstance> {
        let window = self
            .window
            .ok_or_else(|| Error::Domain("Closest Substring needs a window length L".into()))?;
        SubstringInstance::new(self.seqs()?, window)
    }
}

/// Result record written by the CLI. Witness offsets are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub problem: String,
    pub algorithm: String,
    pub center: String,
    pub radius: usize,
    pub witnesses: Vec<usize>,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

impl SolutionReport {
    pub fn new(problem: &str, algorithm: &str, sol: &CenterSolution, params: serde_json::Value) -> Self {
        Self {
            problem: problem.into(),
            algorithm: algorithm.into(),
            center: sol.center.to_string(),
            radius: sol.radius,
            witnesses: sol.witnesses.iter().map(|w| w + 1).collect(),
            params,
        }
    }
}
