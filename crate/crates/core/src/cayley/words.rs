use std::collections::HashSet;

use super::index::{ElementIndex, Slot};
use super::{CayleyError, GeneratorSet};
use crate::field::Scalar;
use crate::symspace::GroupElement;

/// Splits word-list text into words: one per line, surrounding whitespace and
/// blank lines ignored. Letters must be ASCII `a–z` or `A–Z`.
pub fn import_words(text: &str) -> Result<Vec<String>, CayleyError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let word = line.trim();
        if word.is_empty() {
            continue;
        }
        if let Some(c) = word.chars().find(|c| !c.is_ascii_alphabetic()) {
            return Err(CayleyError::InvalidCharacter {
                line: i + 1,
                character: c,
            });
        }
        out.push(word.to_string());
    }
    Ok(out)
}

/// Distinct elements referenced by a set of word pairs.
#[derive(Debug, Clone)]
pub struct ImportedPairs<T: Scalar> {
    pub elements: Vec<GroupElement<T>>,
    /// First word seen for each element.
    pub words: Vec<String>,
    pub pairs: Vec<(usize, usize)>,
}

/// Splits each word of length `2k` at position `k` and maps the halves to
/// elements, identifying equal matrices and repeated pairs. Pairs keep the order
/// of their first occurrence.
pub fn words_to_pairs<T: Scalar>(
    gens: &GeneratorSet<T>,
    words: &[String],
    k: usize,
    grid: f64,
) -> Result<ImportedPairs<T>, CayleyError> {
    if !(grid > 0.0) || !grid.is_finite() {
        return Err(CayleyError::InvalidGrid(grid));
    }
    let mut index = ElementIndex::for_field::<T>(grid, gens.dim());
    let mut out = ImportedPairs {
        elements: Vec::new(),
        words: Vec::new(),
        pairs: Vec::new(),
    };
    let mut seen = HashSet::new();
    for word in words {
        let n = word.chars().count();
        if n != 2 * k {
            return Err(CayleyError::WrongLength {
                word: word.clone(),
                length: n,
                expected: 2 * k,
            });
        }
        gens.symbols(word)?;
        let split = word.char_indices().nth(k).map_or(word.len(), |(i, _)| i);
        let mut ids = [0usize; 2];
        for (slot, half) in ids.iter_mut().zip([&word[..split], &word[split..]]) {
            let g = gens.evaluate(half)?;
            *slot = match index.insert(g.matrix()) {
                Ok(Slot::Existing(i)) => i,
                Ok(Slot::New(i)) => {
                    out.elements.push(g);
                    out.words.push(half.to_string());
                    i
                }
                Err(c) => {
                    return Err(CayleyError::ToleranceCollision {
                        first: out.words[c.existing].clone(),
                        second: half.to_string(),
                        separation: c.separation,
                    })
                }
            };
        }
        if seen.insert((ids[0], ids[1])) {
            out.pairs.push((ids[0], ids[1]));
        }
    }
    Ok(out)
}
