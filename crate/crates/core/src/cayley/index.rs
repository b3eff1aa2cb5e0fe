use std::collections::HashMap;
use std::hash::{DefaultHasher, Hash, Hasher};

use nalgebra::DMatrix;

use crate::field::Scalar;
use crate::linalg::max_abs_part;

/// Relative tolerance under which two matrices are the same group element.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Largest number of near-boundary coordinates probed on lookup.
const MAX_AMBIGUOUS: usize = 16;

/// Outcome of [`ElementIndex::insert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Existing(usize),
    New(usize),
}

/// Two distinct elements share a cell of the deduplication grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Collision {
    pub existing: usize,
    pub separation: f64,
}

/// Hash index of matrices up to rounding.
///
/// Each matrix `m` is described by `ln s` and the real and imaginary parts of
/// `m / s`, where `s` is its largest entry part; these coordinates are binned into
/// cells of width `10 × grid`. Two
/// matrices are identified when every scaled coordinate agrees to
/// [`EQUALITY_TOL`]. A cell may hold at most one element: a second, unequal element
/// in the same cell is reported as a [`Collision`]. Coordinates within
/// `EQUALITY_TOL` of a cell boundary also probe the neighbouring cell, so rounding
/// never splits one element across two keys.
#[derive(Debug, Clone)]
pub struct ElementIndex {
    cell: f64,
    stride: usize,
    coords: Vec<f64>,
    heads: HashMap<u64, u32>,
    chain: Vec<u32>,
}

const END: u32 = u32::MAX;

impl ElementIndex {
    pub fn new(grid: f64, dim: usize, complex: bool) -> Self {
        let stride = dim * dim * if complex { 2 } else { 1 } + 1;
        Self {
            cell: 10.0 * grid,
            stride,
            coords: Vec::new(),
            heads: HashMap::new(),
            chain: Vec::new(),
        }
    }

    pub fn for_field<T: Scalar>(grid: f64, dim: usize) -> Self {
        Self::new(grid, dim, T::FIELD == crate::FieldTag::Complex)
    }

    pub fn len(&self) -> usize {
        self.coords.len() / self.stride
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Scaled coordinates of `m`, in the layout used by the index.
    pub fn coordinates<T: Scalar>(&self, m: &DMatrix<T>) -> Vec<f64> {
        let scale = max_abs_part(m);
        let scale = if scale > 0.0 { scale } else { 1.0 };
        let complex = self.stride == 2 * m.len() + 1;
        let mut out = Vec::with_capacity(self.stride);
        out.push(scale.ln());
        // Column-major, matching `DMatrix` storage.
        for z in m.iter() {
            let (re, im) = z.parts();
            out.push(re / scale);
            if complex {
                out.push(im / scale);
            }
        }
        out
    }

    fn cells(&self, coords: &[f64]) -> Vec<i64> {
        coords
            .iter()
            .map(|x| (x / self.cell).round() as i64)
            .collect()
    }

    fn hash(cells: &[i64]) -> u64 {
        let mut h = DefaultHasher::new();
        cells.hash(&mut h);
        h.finish()
    }

    fn bucket(&self, key: u64) -> impl Iterator<Item = usize> + '_ {
        let mut cur = self.heads.get(&key).copied().unwrap_or(END);
        std::iter::from_fn(move || {
            (cur != END).then(|| {
                let i = cur as usize;
                cur = self.chain[i];
                i
            })
        })
    }

    /// The stored matrix `idx`, rebuilt from its coordinates.
    pub fn matrix<T: Scalar>(&self, idx: usize, dim: usize) -> DMatrix<T> {
        let c = self.stored(idx);
        let scale = c[0].exp();
        let complex = self.stride == 2 * dim * dim + 1;
        DMatrix::from_fn(dim, dim, |i, j| {
            let k = j * dim + i;
            let (re, im) = if complex {
                (c[1 + 2 * k], c[2 + 2 * k])
            } else {
                (c[1 + k], 0.0)
            };
            T::from_parts(re * scale, im * scale).expect("real coordinates")
        })
    }

    fn stored(&self, idx: usize) -> &[f64] {
        &self.coords[idx * self.stride..(idx + 1) * self.stride]
    }

    fn separation(a: &[f64], b: &[f64]) -> f64 {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max)
    }

    /// Looks up precomputed coordinates.
    pub fn find_coords(&self, coords: &[f64]) -> Option<usize> {
        let home = self.cells(coords);
        let mut ambiguous = Vec::new();
        for (j, (&x, &c)) in coords.iter().zip(&home).enumerate() {
            let frac = x / self.cell - c as f64;
            if 0.5 - frac.abs() < EQUALITY_TOL / self.cell {
                ambiguous.push((j, if frac > 0.0 { 1 } else { -1 }));
            }
        }
        ambiguous.truncate(MAX_AMBIGUOUS);
        let mut probe = home.clone();
        for mask in 0u32..(1 << ambiguous.len()) {
            for (bit, &(j, step)) in ambiguous.iter().enumerate() {
                probe[j] = home[j] + if mask & (1 << bit) != 0 { step } else { 0 };
            }
            for i in self.bucket(Self::hash(&probe)) {
                if Self::separation(self.stored(i), coords) <= EQUALITY_TOL {
                    return Some(i);
                }
            }
        }
        None
    }

    pub fn find<T: Scalar>(&self, m: &DMatrix<T>) -> Option<usize> {
        self.find_coords(&self.coordinates(m))
    }

    /// Inserts precomputed coordinates unless an equal element exists.
    pub fn insert_coords(&mut self, coords: Vec<f64>) -> Result<Slot, Collision> {
        if let Some(i) = self.find_coords(&coords) {
            return Ok(Slot::Existing(i));
        }
        let home = self.cells(&coords);
        let key = Self::hash(&home);
        for i in self.bucket(key) {
            let other = self.stored(i);
            if self.cells(other) == home {
                return Err(Collision {
                    existing: i,
                    separation: Self::separation(other, &coords),
                });
            }
        }
        let idx = self.len();
        self.coords.extend_from_slice(&coords);
        let head = self.heads.insert(key, idx as u32).unwrap_or(END);
        self.chain.push(head);
        Ok(Slot::New(idx))
    }

    pub fn insert<T: Scalar>(&mut self, m: &DMatrix<T>) -> Result<Slot, Collision> {
        let coords = self.coordinates(m);
        self.insert_coords(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_values_are_identified() {
        let mut index = ElementIndex::new(1e-6, 2, false);
        // 0.5 cell widths (5e-6) sits on a rounding boundary.
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 5e-6 - 1e-13, 0.0, 1.0]);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 5e-6 + 1e-13, 0.0, 1.0]);
        assert_eq!(index.insert(&a).unwrap(), Slot::New(0));
        assert_eq!(index.insert(&b).unwrap(), Slot::Existing(0));
        assert_eq!(index.find(&b), Some(0));
        assert_eq!(index.find(&(b * 3.0)), None);
    }

    #[test]
    fn close_distinct_elements_collide() {
        let mut index = ElementIndex::new(1e-6, 2, false);
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, 1.0]);
        let b = DMatrix::from_row_slice(2, 2, &[1.0, 1e-6, 0.0, 1.0]);
        index.insert(&a).unwrap();
        let err = index.insert(&b).unwrap_err();
        assert_eq!(err.existing, 0);
        assert!((err.separation - 1e-6).abs() < 1e-15);
        let c = DMatrix::from_row_slice(2, 2, &[1.0, 1e-3, 0.0, 1.0]);
        assert_eq!(index.insert(&c).unwrap(), Slot::New(1));
    }

    #[test]
    fn scale_distinguishes_elements() {
        let mut index = ElementIndex::new(1e-6, 2, false);
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]);
        index.insert(&a).unwrap();
        assert_eq!(index.insert(&(a * 20.0)).unwrap(), Slot::New(1));
    }

    #[test]
    fn sign_distinguishes_elements() {
        let mut index = ElementIndex::new(1e-6, 2, false);
        let a = DMatrix::<f64>::identity(2, 2);
        index.insert(&a).unwrap();
        assert_eq!(index.insert(&(-a)).unwrap(), Slot::New(1));
    }
}
