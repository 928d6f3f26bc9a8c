use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Ordered finite symbol set. The declared order is the lexicographic order
/// used by every tie-break in the crate.
#[derive(Clone)]
pub struct Alphabet {
    symbols: Vec<char>,
    index: HashMap<char, u8>,
}

impl Alphabet {
    pub const MAX_SIZE: usize = 256;

    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let symbols: Vec<char> = symbols.into_iter().collect();
        if symbols.len() > Self::MAX_SIZE {
            return Err(Error::Domain(format!(
                "alphabet of {} symbols exceeds the supported {}",
                symbols.len(),
                Self::MAX_SIZE
            )));
        }
        let mut index = HashMap::with_capacity(symbols.len());
        for (i, &c) in symbols.iter().enumerate() {
            if index.insert(c, i as u8).is_some() {
                return Err(Error::DuplicateSymbol(c));
            }
        }
        if symbols.len() < 2 {
            return Err(Error::AlphabetTooSmall(symbols.len()));
        }
        Ok(Self { symbols, index })
    }

    /// Parses an alphabet written as a string of symbols, e.g. `"ACGT"`.
    pub fn parse(spec: &str) -> Result<Self> {
        Self::new(spec.chars())
    }

    pub fn binary() -> Self {
        Self::parse("01").expect("valid alphabet")
    }

    pub fn dna() -> Self {
        Self::parse("ACGT").expect("valid alphabet")
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> Option<char> {
        self.symbols.get(i).copied()
    }

    pub fn index(&self, c: char) -> Result<u8> {
        self.index.get(&c).copied().ok_or_else(|| Error::UnknownSymbol {
            symbol: c,
            alphabet: self.to_string(),
        })
    }

    pub fn contains(&self, c: char) -> bool {
        self.index.contains_key(&c)
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Alphabet {}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}
