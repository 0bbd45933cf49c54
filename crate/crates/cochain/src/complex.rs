//! Finite simplicial pairs with exact-rational chains and cochains.
//!
//! Simplices are sorted vertex tuples, oriented by the sorted order, with
//! alternating boundary signs. A pair carries a subcomplex A closed under
//! faces; relative cochains vanish on A, relative chains are coordinates on
//! the simplices outside A (the quotient by chains in A).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

pub type Rat = BigRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    /// simplices[d]: sorted list of sorted vertex tuples of dimension d.
    simplices: Vec<Vec<Vec<usize>>>,
    /// Parallel to `simplices`: membership in the subcomplex A.
    in_a: Vec<Vec<bool>>,
    index: Vec<BTreeMap<Vec<usize>, usize>>,
}

fn face_closure(maximal: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for simplex in maximal {
        let mut sorted = simplex.clone();
        sorted.sort_unstable();
        sorted.dedup();
        let n = sorted.len();
        for mask in 1u32..(1 << n) {
            let face: Vec<usize> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| sorted[i])
                .collect();
            out.insert(face);
        }
    }
    out
}

impl SimplicialPair {
    /// Builds the pair from maximal simplices of X and of A, closing both
    /// under faces. Every A-simplex must be a simplex of X.
    pub fn new(maximal: &[Vec<usize>], a_maximal: &[Vec<usize>]) -> Result<Self> {
        let all = face_closure(maximal);
        let sub = face_closure(a_maximal);
        for s in &sub {
            if !all.contains(s) {
                return Err(Error::BadComplex(format!(
                    "relative simplex {s:?} is not a simplex of the complex"
                )));
            }
        }
        let top = all.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
        for s in all {
            simplices[s.len() - 1].push(s);
        }
        for level in simplices.iter_mut() {
            level.sort();
        }
        let in_a = simplices
            .iter()
            .map(|level| level.iter().map(|s| sub.contains(s)).collect())
            .collect();
        let index = simplices
            .iter()
            .map(|level| {
                level
                    .iter()
                    .enumerate()
                    .map(|(i, s)| (s.clone(), i))
                    .collect()
            })
            .collect();
        Ok(SimplicialPair {
            simplices,
            in_a,
            index,
        })
    }

    /// Highest simplex dimension present.
    pub fn top_dimension(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<usize>] {
        self.simplices.get(dim).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn count(&self, dim: usize) -> usize {
        self.simplices(dim).len()
    }

    pub fn is_relative(&self, dim: usize, idx: usize) -> bool {
        self.in_a
            .get(dim)
            .map(|v| v[idx])
            .unwrap_or(false)
    }

    /// Indices of simplices outside A in this dimension: the coordinates of
    /// the relative (co)chain groups.
    pub fn free_indices(&self, dim: usize) -> Vec<usize> {
        (0..self.count(dim))
            .filter(|&i| !self.is_relative(dim, i))
            .collect()
    }

    pub fn lookup(&self, simplex: &[usize]) -> Option<(usize, usize)> {
        let dim = simplex.len().checked_sub(1)?;
        self.index
            .get(dim)?
            .get(simplex)
            .map(|&i| (dim, i))
    }

    /// Faces of the simplex with alternating signs: (face index, sign).
    pub fn faces(&self, dim: usize, idx: usize) -> Vec<(usize, i8)> {
        if dim == 0 {
            return Vec::new();
        }
        let simplex = &self.simplices[dim][idx];
        let mut out = Vec::with_capacity(simplex.len());
        for (i, _) in simplex.iter().enumerate() {
            let mut face = simplex.clone();
            face.remove(i);
            let fidx = self.index[dim - 1][&face];
            out.push((fidx, if i % 2 == 0 { 1 } else { -1 }));
        }
        out
    }

    /// Cofaces with the sign the simplex carries inside each coface's
    /// boundary.
    pub fn cofaces(&self, dim: usize, idx: usize) -> Vec<(usize, i8)> {
        let mut out = Vec::new();
        for cidx in 0..self.count(dim + 1) {
            for (fidx, sign) in self.faces(dim + 1, cidx) {
                if fidx == idx {
                    out.push((cidx, sign));
                }
            }
        }
        out
    }
}

/// Exact-rational k-cochain, stored sparsely on simplex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub dim: usize,
    values: BTreeMap<usize, Rat>,
}

impl Cochain {
    pub fn zero(dim: usize) -> Self {
        Cochain {
            dim,
            values: BTreeMap::new(),
        }
    }

    pub fn from_values(dim: usize, values: impl IntoIterator<Item = (usize, Rat)>) -> Self {
        let mut c = Cochain::zero(dim);
        for (i, v) in values {
            c.set(i, v);
        }
        c
    }

    pub fn set(&mut self, idx: usize, value: Rat) {
        if value.is_zero() {
            self.values.remove(&idx);
        } else {
            self.values.insert(idx, value);
        }
    }

    pub fn get(&self, idx: usize) -> Rat {
        self.values.get(&idx).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&usize, &Rat)> {
        self.values.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> Rat {
        self.values
            .values()
            .map(|v| if v < &Rat::zero() { -v.clone() } else { v.clone() })
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Zero on every A-simplex of its dimension.
    pub fn is_relative(&self, pair: &SimplicialPair) -> bool {
        self.values
            .keys()
            .all(|&i| !pair.is_relative(self.dim, i))
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&i, v) in other.iter() {
            out.set(i, &out.get(i) + v);
        }
        out
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for (&i, v) in other.iter() {
            out.set(i, &out.get(i) - v);
        }
        out
    }
}

/// Chains share the representation; the distinction is which norm and which
/// boundary operator apply.
pub type Chain = Cochain;

/// δ: C^k → C^{k+1}, dual to the boundary with the same alternating signs.
pub fn coboundary(pair: &SimplicialPair, c: &Cochain) -> Cochain {
    let mut out = Cochain::zero(c.dim + 1);
    for idx in 0..pair.count(c.dim + 1) {
        let mut acc = Rat::zero();
        for (fidx, sign) in pair.faces(c.dim + 1, idx) {
            let v = c.get(fidx);
            acc = if sign > 0 { &acc + &v } else { &acc - &v };
        }
        out.set(idx, acc);
    }
    out
}

/// ∂: C_k → C_{k-1}.
pub fn boundary(pair: &SimplicialPair, c: &Chain) -> Chain {
    if c.dim == 0 {
        return Chain::zero(0);
    }
    let mut out = Chain::zero(c.dim - 1);
    for (&idx, v) in c.iter() {
        for (fidx, sign) in pair.faces(c.dim, idx) {
            let cur = out.get(fidx);
            out.set(fidx, if sign > 0 { &cur + v } else { &cur - v });
        }
    }
    out
}

/// Quotient mass of a relative chain: the l¹ norm over simplices outside A.
pub fn relative_mass(pair: &SimplicialPair, c: &Chain) -> Rat {
    let mut total = Rat::zero();
    for (&i, v) in c.iter() {
        if !pair.is_relative(c.dim, i) {
            total = &total + &(if v < &Rat::zero() { -v.clone() } else { v.clone() });
        }
    }
    total
}

/// Projection of a chain to relative coordinates (A entries dropped).
pub fn reduce_mod_a(pair: &SimplicialPair, c: &Chain) -> Chain {
    let mut out = Chain::zero(c.dim);
    for (&i, v) in c.iter() {
        if !pair.is_relative(c.dim, i) {
            out.set(i, v.clone());
        }
    }
    out
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .values
            .iter()
            .map(|(i, v)| format!("[{i}]={v}"))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}
