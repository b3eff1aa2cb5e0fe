use nalgebra::DMatrix;

use super::CayleyError;
use crate::field::Scalar;
use crate::symspace::GroupElement;

/// Maximal deviation `‖g g⁻¹ − I‖` accepted for computed inverses.
const INVERSE_TOL: f64 = 1e-9;

/// Labelled generators closed under inverses. Lower-case letters are the
/// generators, the matching upper-case letters their inverses.
///
/// Symbols are numbered `0..m` for the generators in the order given and `m..2m`
/// for their inverses.
#[derive(Debug, Clone)]
pub struct GeneratorSet<T: Scalar> {
    letters: Vec<char>,
    elements: Vec<GroupElement<T>>,
    relators: Vec<String>,
}

impl<T: Scalar> GeneratorSet<T> {
    pub fn new(
        named: Vec<(char, GroupElement<T>)>,
        relators: Vec<String>,
    ) -> Result<Self, CayleyError> {
        if named.is_empty() {
            return Err(CayleyError::Generators("empty generator list".into()));
        }
        let dim = named[0].1.dim();
        let mut letters = Vec::with_capacity(named.len());
        let mut forward = Vec::with_capacity(named.len());
        let mut backward = Vec::with_capacity(named.len());
        for (letter, g) in named {
            if !letter.is_ascii_lowercase() {
                return Err(CayleyError::Generators(format!(
                    "generator name {letter:?} is not a letter a-z"
                )));
            }
            if letters.contains(&letter) {
                return Err(CayleyError::Generators(format!(
                    "duplicate generator {letter:?}"
                )));
            }
            if g.dim() != dim {
                return Err(CayleyError::Generators(format!(
                    "generator {letter:?} has dimension {} != {dim}",
                    g.dim()
                )));
            }
            let inv = g
                .inverse()
                .map_err(|e| CayleyError::Generators(format!("generator {letter:?}: {e}")))?;
            let dev = (g.matrix() * inv.matrix() - DMatrix::<T>::identity(dim, dim))
                .iter()
                .map(|z| z.modulus())
                .fold(0.0, f64::max);
            if dev > INVERSE_TOL {
                return Err(CayleyError::Generators(format!(
                    "generator {letter:?}: inverse check deviates by {dev:e}"
                )));
            }
            letters.push(letter);
            forward.push(g);
            backward.push(inv);
        }
        for r in &relators {
            if let Some(c) = r
                .chars()
                .find(|c| !letters.contains(&c.to_ascii_lowercase()))
            {
                return Err(CayleyError::UnknownLetter {
                    letter: c,
                    word: r.clone(),
                });
            }
        }
        forward.extend(backward);
        Ok(Self {
            letters,
            elements: forward,
            relators,
        })
    }

    pub fn dim(&self) -> usize {
        self.elements[0].dim()
    }

    /// Number of generators, not counting inverses.
    pub fn rank(&self) -> usize {
        self.letters.len()
    }

    pub fn symbol_count(&self) -> usize {
        self.elements.len()
    }

    pub fn relators(&self) -> &[String] {
        &self.relators
    }

    pub fn symbol(&self, letter: char) -> Option<usize> {
        let m = self.letters.len();
        if letter.is_ascii_lowercase() {
            self.letters.iter().position(|&c| c == letter)
        } else if letter.is_ascii_uppercase() {
            self.letters
                .iter()
                .position(|&c| c == letter.to_ascii_lowercase())
                .map(|i| i + m)
        } else {
            None
        }
    }

    pub fn letter(&self, symbol: usize) -> char {
        let m = self.letters.len();
        if symbol < m {
            self.letters[symbol]
        } else {
            self.letters[symbol - m].to_ascii_uppercase()
        }
    }

    pub fn element(&self, symbol: usize) -> &GroupElement<T> {
        &self.elements[symbol]
    }

    pub fn symbols(&self, word: &str) -> Result<Vec<usize>, CayleyError> {
        word.chars()
            .map(|c| {
                self.symbol(c).ok_or_else(|| CayleyError::UnknownLetter {
                    letter: c,
                    word: word.to_string(),
                })
            })
            .collect()
    }

    /// The product of the letters of `word`, left to right.
    pub fn evaluate(&self, word: &str) -> Result<GroupElement<T>, CayleyError> {
        let mut m = DMatrix::<T>::identity(self.dim(), self.dim());
        for s in self.symbols(word)? {
            m *= self.elements[s].matrix();
        }
        Ok(GroupElement::from_product(m))
    }
}
