use nalgebra::DMatrix;
use rayon::prelude::*;

use super::index::{ElementIndex, Slot};
use super::{CayleyError, GeneratorSet};
use crate::field::Scalar;
use crate::symspace::GroupElement;

const NONE: u32 = u32::MAX;

/// Parents expanded per parallel batch, bounding the memory held in products.
const EXPAND_CHUNK: usize = 1 << 14;

/// Group elements of the ball of radius `r` in the Cayley graph, one per element,
/// with their word lengths and a geodesic witness word.
#[derive(Debug, Clone)]
pub struct ElementTable<T: Scalar> {
    gens: GeneratorSet<T>,
    grid: f64,
    radius: usize,
    dim: usize,
    index: ElementIndex,
    length: Vec<u32>,
    parent: Vec<u32>,
    last: Vec<u8>,
    next: Vec<u32>,
    spheres: Vec<Vec<u32>>,
}

/// Breadth-first enumeration of the ball of radius `radius`, identifying matrices
/// that agree to the relative tolerance of the index with grid `grid`.
pub fn build_ball<T: Scalar>(
    gens: &GeneratorSet<T>,
    radius: usize,
    grid: f64,
) -> Result<ElementTable<T>, CayleyError> {
    if !(grid > 0.0) || !grid.is_finite() {
        return Err(CayleyError::InvalidGrid(grid));
    }
    let dim = gens.dim();
    let nsym = gens.symbol_count();
    if nsym > u8::MAX as usize {
        return Err(CayleyError::Generators("too many generators".into()));
    }
    let mut table = ElementTable {
        gens: gens.clone(),
        grid,
        radius,
        dim,
        index: ElementIndex::for_field::<T>(grid, dim),
        length: Vec::new(),
        parent: Vec::new(),
        last: Vec::new(),
        next: Vec::new(),
        spheres: vec![vec![0]],
    };
    let id = DMatrix::<T>::identity(dim, dim);
    table.index.insert(&id).expect("empty index");
    table.push(0, NONE, u8::MAX);

    for n in 1..=radius {
        let layer = table.spheres[n - 1].clone();
        let mut sphere = Vec::new();
        for chunk in layer.chunks(EXPAND_CHUNK) {
            let products: Vec<Vec<f64>> = chunk
                .par_iter()
                .flat_map_iter(|&x| {
                    let g = table.matrix(x as usize);
                    let index = &table.index;
                    (0..nsym).map(move |s| index.coordinates(&(&g * gens.element(s).matrix())))
                })
                .collect();
            for (k, coords) in products.into_iter().enumerate() {
                let from = chunk[k / nsym];
                let s = k % nsym;
                let idx = match table.index.insert_coords(coords) {
                    Ok(Slot::Existing(i)) => i as u32,
                    Ok(Slot::New(i)) => {
                        table.push(n as u32, from, s as u8);
                        sphere.push(i as u32);
                        i as u32
                    }
                    Err(c) => {
                        return Err(CayleyError::ToleranceCollision {
                            first: table.word(c.existing),
                            second: format!("{}{}", table.word(from as usize), gens.letter(s)),
                            separation: c.separation,
                        })
                    }
                };
                table.next[from as usize * nsym + s] = idx;
            }
        }
        table.spheres.push(sphere);
    }
    Ok(table)
}

impl<T: Scalar> ElementTable<T> {
    /// Elements are pushed in BFS order, so those with transitions form a prefix.
    fn push(&mut self, length: u32, parent: u32, last: u8) {
        self.length.push(length);
        self.parent.push(parent);
        self.last.push(last);
        if (length as usize) < self.radius {
            self.next
                .extend(std::iter::repeat_n(NONE, self.gens.symbol_count()));
        }
    }

    pub fn generators(&self) -> &GeneratorSet<T> {
        &self.gens
    }

    pub fn grid(&self) -> f64 {
        self.grid
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.length.len()
    }

    pub fn is_empty(&self) -> bool {
        self.length.is_empty()
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    /// Indices of the elements at Cayley distance `n`.
    pub fn sphere(&self, n: usize) -> &[u32] {
        self.spheres.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn matrix(&self, idx: usize) -> DMatrix<T> {
        self.index.matrix(idx, self.dim)
    }

    /// Index of a matrix equal to `m` up to the dedup tolerance.
    pub fn find(&self, m: &DMatrix<T>) -> Option<usize> {
        self.index.find(m)
    }

    pub fn element(&self, idx: usize) -> GroupElement<T> {
        GroupElement::from_product(self.matrix(idx))
    }

    pub fn length(&self, idx: usize) -> usize {
        self.length[idx] as usize
    }

    /// The element one edge closer to the identity on the witness path.
    pub fn parent(&self, idx: usize) -> Option<usize> {
        let p = self.parent[idx];
        (p != NONE).then_some(p as usize)
    }

    /// Symbols of the witness word, first letter first.
    pub fn symbols(&self, idx: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.length(idx));
        let mut cur = idx;
        while let Some(p) = self.parent(cur) {
            out.push(self.last[cur] as usize);
            cur = p;
        }
        out.reverse();
        out
    }

    /// A geodesic word representing the element.
    pub fn word(&self, idx: usize) -> String {
        self.symbols(idx)
            .into_iter()
            .map(|s| self.gens.letter(s))
            .collect()
    }

    /// The element `x·s`, when `x` lies strictly inside the ball.
    pub fn step(&self, idx: usize, symbol: usize) -> Option<usize> {
        let j = self
            .next
            .get(idx * self.gens.symbol_count() + symbol)
            .copied()
            .unwrap_or(NONE);
        (j != NONE).then_some(j as usize)
    }

    /// Cayley length of `x·w` for a word given by symbols, if it stays in the ball.
    pub fn length_after(&self, idx: usize, symbols: &[usize]) -> Option<usize> {
        let mut cur = idx;
        for &s in symbols {
            cur = self.step(cur, s)?;
        }
        Some(self.length(cur))
    }
}

/// All ordered pairs `(g1, g2)` of elements of length `k` with `ℓ(g1 g2) = 2k`.
///
/// Lengths of products are read from the table by walking from `g1` along the
/// witness word of `g2`; no matrix products are formed.
pub fn geodesic_pairs<T: Scalar>(
    table: &ElementTable<T>,
    k: usize,
) -> Result<Vec<(u32, u32)>, CayleyError> {
    if table.radius() < 2 * k {
        return Err(CayleyError::RadiusTooSmall {
            radius: table.radius(),
            needed: 2 * k,
        });
    }
    let sphere = table.sphere(k);
    let words: Vec<Vec<usize>> = sphere.iter().map(|&g| table.symbols(g as usize)).collect();
    Ok(sphere
        .par_iter()
        .flat_map_iter(|&g1| {
            let words = &words;
            sphere.iter().zip(words).filter_map(move |(&g2, w)| {
                let mut cur = g1 as usize;
                for (i, &s) in w.iter().enumerate() {
                    cur = table.step(cur, s)?;
                    if table.length(cur) != k + i + 1 {
                        return None;
                    }
                }
                Some((g1, g2))
            })
        })
        .collect())
}
