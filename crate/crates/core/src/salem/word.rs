//! Words in translations and their composite action on `NS(X)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fibration::{
    reduce_to_section, translation_isometry, FibrationName, StandardFibrations, Translation,
};
use crate::isometry::IsometryMatrix;
use crate::ns::{basis, DivisorClass, NSModel};

/// The four sections of the isotrivial fibration a letter can start from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseSection {
    O,
    Q,
    P,
    R,
}

impl BaseSection {
    pub fn index(self) -> usize {
        match self {
            BaseSection::O => basis::O,
            BaseSection::Q => basis::Q,
            BaseSection::P => basis::P,
            BaseSection::R => basis::R,
        }
    }

    fn symbol(self) -> char {
        match self {
            BaseSection::O => 'O',
            BaseSection::Q => 'Q',
            BaseSection::P => 'P',
            BaseSection::R => 'R',
        }
    }
}

/// A section name such as `P''`: the class of `P` in `NS(X)`, reduced to a
/// section of the fibration selected by the number of primes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub base: BaseSection,
    pub fibration: FibrationName,
}

impl Letter {
    pub fn new(base: BaseSection, fibration: FibrationName) -> Self {
        Letter { base, fibration }
    }

    /// The divisor class the letter's section is reduced from.
    pub fn base_class(&self, model: &NSModel) -> DivisorClass {
        model.unit(self.base.index())
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}",
            self.base.symbol(),
            "'".repeat(self.fibration.primes())
        )
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let base = match chars.next() {
            Some('O') => BaseSection::O,
            Some('Q') => BaseSection::Q,
            Some('P') => BaseSection::P,
            Some('R') => BaseSection::R,
            _ => return Err(Error::InvalidInput(format!("unknown section {s:?}"))),
        };
        let rest = chars.as_str();
        if !rest.chars().all(|c| c == '\'') {
            return Err(Error::InvalidInput(format!("unknown section {s:?}")));
        }
        let fibration = FibrationName::from_primes(rest.len())
            .map_err(|_| Error::InvalidInput(format!("unknown fibration tag in {s:?}")))?;
        Ok(Letter { base, fibration })
    }
}

/// A composite `(⊕S₁)∘(⊕S₂)∘…∘(⊕S_k)`, written left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    /// `(⊕R)∘(⊕P)∘(⊕P′)∘(⊕P″)`.
    pub fn standard() -> Self {
        "R,P,P',P''".parse().expect("valid word")
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Word::default());
        }
        s.split(',')
            .map(str::parse)
            .collect::<Result<_>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let parts: Vec<String> = self.0.iter().map(Letter::to_string).collect();
        parts.serialize(s)
    }
}

/// Resolves letters to translations, building each one once.
pub struct TranslationCache<'a> {
    model: &'a NSModel,
    fibrations: &'a StandardFibrations,
    built: HashMap<Letter, Translation>,
}

impl<'a> TranslationCache<'a> {
    pub fn new(model: &'a NSModel, fibrations: &'a StandardFibrations) -> Self {
        TranslationCache {
            model,
            fibrations,
            built: HashMap::new(),
        }
    }

    pub fn translation(&mut self, letter: Letter) -> Result<&Translation> {
        if !self.built.contains_key(&letter) {
            let f = self.fibrations.get(letter.fibration);
            let section = reduce_to_section(&letter.base_class(self.model), f).map_err(|e| {
                Error::InvalidInput(format!(
                    "{letter} does not resolve to a section of {}: {e}",
                    letter.fibration
                ))
            })?;
            let t = translation_isometry(&section, f)?;
            self.built.insert(letter, t);
        }
        Ok(&self.built[&letter])
    }
}

/// `f*` for `f = (⊕S₁)∘…∘(⊕S_k)`: the product `(⊕S_k)^*⋯(⊕S₁)^*`.
pub fn compose_word(
    word: &Word,
    model: &NSModel,
    fibrations: &StandardFibrations,
) -> Result<IsometryMatrix> {
    let mut cache = TranslationCache::new(model, fibrations);
    compose_word_cached(word, &mut cache)
}

pub fn compose_word_cached(
    word: &Word,
    cache: &mut TranslationCache<'_>,
) -> Result<IsometryMatrix> {
    let mut acc = IsometryMatrix::identity(cache.fibrations.pi.gram().clone());
    for &letter in word.letters() {
        acc = cache.translation(letter)?.pullback.compose(&acc)?;
    }
    Ok(acc)
}
