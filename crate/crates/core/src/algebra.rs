//! Free graded-commutative differential algebras over exact rationals.
//!
//! Values are sparse sums of sign-normalized monomials in a fixed, ordered
//! set of generators. Odd-degree generators square to zero; reordering a
//! product into canonical (declaration) order is absorbed into a Koszul sign
//! at construction time, so equal elements have equal representations.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Index of a generator within its signature's declaration order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GenId(pub u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    /// Optional Lipschitz exponent used by weight ledgers.
    pub weight: Option<i64>,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: None,
        }
    }

    pub fn with_weight(name: impl Into<String>, degree: u32, weight: i64) -> Self {
        Generator {
            name: name.into(),
            degree,
            weight: Some(weight),
        }
    }
}

/// The generator list of a free graded-commutative algebra, together with an
/// optional truncation degree above which all elements are identified with
/// zero (the quotient by the ideal of high-degree elements).
#[derive(Debug, PartialEq, Eq)]
pub struct Signature {
    generators: Vec<Generator>,
    top_degree: Option<u32>,
}

impl Signature {
    pub fn new(generators: Vec<Generator>) -> Result<Arc<Self>> {
        Self::with_top_degree(generators, None)
    }

    pub fn with_top_degree(generators: Vec<Generator>, top_degree: Option<u32>) -> Result<Arc<Self>> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree < 1 {
                return Err(Error::DegreeMismatch {
                    generator: g.name.clone(),
                    expected: 1,
                    found: Some(g.degree),
                });
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::UnknownGenerator(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
        }
        Ok(Arc::new(Signature {
            generators,
            top_degree,
        }))
    }

    /// New signature extending `self` by `extra` generators (appended).
    pub fn extend(self: &Arc<Self>, extra: Vec<Generator>) -> Result<Arc<Self>> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Self::with_top_degree(gens, self.top_degree)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn top_degree(&self) -> Option<u32> {
        self.top_degree
    }

    pub fn generator(&self, id: GenId) -> &Generator {
        &self.generators[id.0 as usize]
    }

    pub fn degree(&self, id: GenId) -> u32 {
        self.generator(id).degree
    }

    pub fn is_odd(&self, id: GenId) -> bool {
        self.degree(id) % 2 == 1
    }

    pub fn lookup(&self, name: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| GenId(i as u32))
    }

    pub fn ids(&self) -> impl Iterator<Item = GenId> + '_ {
        (0..self.generators.len() as u32).map(GenId)
    }

    /// True when `self`'s generators form a prefix of `other`'s.
    pub fn is_prefix_of(&self, other: &Signature) -> bool {
        self.top_degree == other.top_degree
            && self.generators.len() <= other.generators.len()
            && self
                .generators
                .iter()
                .zip(&other.generators)
                .all(|(a, b)| a == b)
    }
}

fn same_signature(a: &Arc<Signature>, b: &Arc<Signature>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Product of generator powers in canonical (declaration) order.
///
/// Exponents of odd-degree generators never exceed 1; monomials violating
/// this are zero and never constructed.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    factors: Vec<(GenId, u32)>,
    degree: u32,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial {
            factors: Vec::new(),
            degree: 0,
        }
    }

    pub fn generator(sig: &Signature, id: GenId) -> Self {
        Monomial {
            factors: vec![(id, 1)],
            degree: sig.degree(id),
        }
    }

    /// Builds a monomial from (generator, exponent) pairs; returns `None`
    /// when an odd generator appears with exponent > 1 (the zero monomial).
    pub fn from_factors(sig: &Signature, factors: &[(GenId, u32)]) -> Option<Self> {
        let mut map: BTreeMap<GenId, u32> = BTreeMap::new();
        for &(id, e) in factors {
            if e == 0 {
                continue;
            }
            *map.entry(id).or_insert(0) += e;
        }
        let mut degree = 0;
        let mut out = Vec::with_capacity(map.len());
        for (id, e) in map {
            if sig.is_odd(id) && e > 1 {
                return None;
            }
            degree += sig.degree(id) * e;
            out.push((id, e));
        }
        Some(Monomial {
            factors: out,
            degree,
        })
    }

    pub fn factors(&self) -> &[(GenId, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, id: GenId) -> u32 {
        self.factors
            .iter()
            .find(|(g, _)| *g == id)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    /// Number of generator factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    /// Merges two canonical monomials, computing the Koszul sign of the
    /// reordering. Returns `None` when the product vanishes.
    pub fn merge(sig: &Signature, a: &Monomial, b: &Monomial) -> Option<(Monomial, i8)> {
        // Count how many odd transpositions are needed to interleave b's
        // factors into a's. Walking b's factors left into position, each one
        // passes the odd factors of a that sit strictly to its right.
        let mut sign = 1i8;
        let odd_count = |m: &Monomial, from: usize| -> u32 {
            m.factors[from..]
                .iter()
                .filter(|(g, e)| sig.is_odd(*g) && e % 2 == 1)
                .count() as u32
        };
        let mut ai = 0;
        for &(gb, eb) in &b.factors {
            while ai < a.factors.len() && a.factors[ai].0 < gb {
                ai += 1;
            }
            if sig.is_odd(gb) && eb % 2 == 1 && odd_count(a, ai) % 2 == 1 {
                sign = -sign;
            }
        }
        let mut all = a.factors.clone();
        all.extend_from_slice(&b.factors);
        let merged = Monomial::from_factors(sig, &all)?;
        Some((merged, sign))
    }

    fn display(&self, sig: &Signature) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(id, e)| {
                let name = &sig.generator(id).name;
                if e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ^ ")
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic on the exponent vector in canonical
    /// generator order. Total and deterministic; used for element storage
    /// and printing.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| {
                let mut i = 0;
                let mut j = 0;
                loop {
                    match (self.factors.get(i), other.factors.get(j)) {
                        (None, None) => return std::cmp::Ordering::Equal,
                        (None, Some(_)) => return std::cmp::Ordering::Less,
                        (Some(_), None) => return std::cmp::Ordering::Greater,
                        (Some(&(ga, ea)), Some(&(gb, eb))) => {
                            if ga != gb {
                                // The smaller generator id has a positive
                                // exponent on one side and zero on the other.
                                return if ga < gb {
                                    std::cmp::Ordering::Greater
                                } else {
                                    std::cmp::Ordering::Less
                                };
                            }
                            if ea != eb {
                                return ea.cmp(&eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                }
            })
    }
}

/// Sparse exact-rational combination of monomials.
#[derive(Clone, Debug)]
pub struct Element {
    sig: Arc<Signature>,
    terms: BTreeMap<Monomial, Rat>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.terms == other.terms
    }
}

impl Eq for Element {}

impl Element {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        Element {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &Arc<Signature>) -> Self {
        Element::from_monomial(sig, Monomial::one(), Rat::one())
    }

    pub fn constant(sig: &Arc<Signature>, c: Rat) -> Self {
        Element::from_monomial(sig, Monomial::one(), c)
    }

    pub fn generator(sig: &Arc<Signature>, id: GenId) -> Self {
        Element::from_monomial(sig, Monomial::generator(sig, id), Rat::one())
    }

    pub fn from_monomial(sig: &Arc<Signature>, m: Monomial, c: Rat) -> Self {
        let mut e = Element::zero(sig);
        e.add_term(m, c);
        e
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn truncated(&self, m: &Monomial) -> bool {
        matches!(self.sig.top_degree(), Some(top) if m.degree() > top)
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() || self.truncated(&m) {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// Degree of a homogeneous element; `None` for 0 or mixed degrees.
    pub fn degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.degree();
        if it.all(|m| m.degree() == first) {
            Some(first)
        } else {
            None
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Splits into homogeneous parts, keyed by degree.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, Element> {
        let mut out: BTreeMap<u32, Element> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.degree())
                .or_insert_with(|| Element::zero(&self.sig))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero(&self.sig);
        }
        let mut out = Element::zero(&self.sig);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Checked graded-commutative product.
    pub fn try_mul(&self, other: &Element) -> Result<Element> {
        if !same_signature(&self.sig, &other.sig) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Element::zero(&self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some(top) = self.sig.top_degree() {
                    if ma.degree() + mb.degree() > top {
                        continue;
                    }
                }
                if let Some((m, sign)) = Monomial::merge(&self.sig, ma, mb) {
                    let mut c = ca * cb;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Element {
        let mut out = Element::one(&self.sig);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Reinterprets this element in an extension of its algebra. The target
    /// signature must extend this element's signature generator-for-generator.
    pub fn promote(&self, sig: &Arc<Signature>) -> Result<Element> {
        if same_signature(&self.sig, sig) {
            return Ok(self.clone());
        }
        if !self.sig.is_prefix_of(sig) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Element {
            sig: sig.clone(),
            terms: self.terms.clone(),
        })
    }

    /// The coefficients of single-generator monomials of degree `n`,
    /// indexed by generator. This is the projection onto indecomposables.
    pub fn linear_part(&self, n: u32) -> Vec<(GenId, Rat)> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            if m.degree() == n && m.factors().len() == 1 && m.factors()[0].1 == 1 {
                out.push((m.factors()[0].0, c.clone()));
            }
        }
        out
    }
}

impl std::ops::Add for &Element {
    type Output = Element;
    fn add(self, other: &Element) -> Element {
        assert!(
            same_signature(&self.sig, &other.sig),
            "algebra mismatch in +"
        );
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Element {
    type Output = Element;
    fn sub(self, other: &Element) -> Element {
        self + &(-other)
    }
}

impl std::ops::Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &Element {
    type Output = Element;
    fn mul(self, other: &Element) -> Element {
        self.try_mul(other).expect("algebra mismatch in *")
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sep, coeff) = if first {
                ("", c.clone())
            } else if c.is_negative() {
                (" - ", -c.clone())
            } else {
                (" + ", c.clone())
            };
            first = false;
            if m.is_one() {
                write!(f, "{sep}{coeff}")?;
            } else {
                write!(f, "{sep}{coeff} * {}", m.display(&self.sig))?;
            }
        }
        Ok(())
    }
}

/// Default cap on materialized graded bases.
pub const DEFAULT_BASIS_CAP: u32 = 24;

/// A finitely generated free graded-commutative differential algebra,
/// optionally truncated above a top degree.
///
/// Construction verifies that the differential raises degree by one and
/// squares to zero on every generator (hence everywhere, by the Leibniz
/// rule). Cloning is cheap; graded bases are cached behind a lock and
/// shared between clones.
#[derive(Clone, Debug)]
pub struct FreeCdga {
    sig: Arc<Signature>,
    diff: Arc<Vec<Element>>,
    minimal: bool,
    basis_cap: u32,
    cache: Arc<RwLock<BTreeMap<u32, Arc<Vec<Monomial>>>>>,
}

impl PartialEq for FreeCdga {
    fn eq(&self, other: &Self) -> bool {
        same_signature(&self.sig, &other.sig) && self.diff == other.diff
    }
}

impl Eq for FreeCdga {}

impl FreeCdga {
    /// Builds the algebra and verifies `d^2 = 0` and degree bookkeeping.
    /// Differentials absent from `diffs` default to zero.
    pub fn new(sig: Arc<Signature>, diffs: Vec<(GenId, Element)>) -> Result<Self> {
        let mut diff = vec![Element::zero(&sig); sig.len()];
        for (id, e) in diffs {
            let e = e.promote(&sig)?;
            diff[id.0 as usize] = e;
        }
        for id in sig.ids() {
            let g = sig.generator(id);
            let image = &diff[id.0 as usize];
            if image.is_zero() {
                continue;
            }
            match image.degree() {
                Some(d) if d == g.degree + 1 => {}
                found => {
                    return Err(Error::DegreeMismatch {
                        generator: g.name.clone(),
                        expected: g.degree + 1,
                        found,
                    })
                }
            }
        }
        let algebra = FreeCdga {
            sig: sig.clone(),
            diff: Arc::new(diff),
            minimal: false,
            basis_cap: DEFAULT_BASIS_CAP,
            cache: Arc::new(RwLock::new(BTreeMap::new())),
        };
        for id in sig.ids() {
            let dd = algebra.differentiate(&algebra.diff[id.0 as usize]);
            if !dd.is_zero() {
                return Err(Error::NonSquareZero {
                    generator: sig.generator(id).name.clone(),
                    d_squared: dd.to_string(),
                });
            }
        }
        let minimal = algebra.compute_minimality();
        Ok(FreeCdga { minimal, ..algebra })
    }

    /// Every generator sits in degree ≥ 2 and `d(v)` lies in the subalgebra
    /// generated by strictly lower degrees.
    fn compute_minimality(&self) -> bool {
        self.sig.ids().all(|id| {
            let deg = self.sig.degree(id);
            deg >= 2
                && self.diff[id.0 as usize].terms().all(|(m, _)| {
                    m.factors()
                        .iter()
                        .all(|&(g, _)| self.sig.degree(g) < deg)
                })
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn basis_cap(&self) -> u32 {
        self.basis_cap
    }

    pub fn with_basis_cap(mut self, cap: u32) -> Self {
        self.basis_cap = cap;
        self.cache = Arc::new(RwLock::new(BTreeMap::new()));
        self
    }

    pub fn generator_differential(&self, id: GenId) -> &Element {
        &self.diff[id.0 as usize]
    }

    pub fn gen_element(&self, id: GenId) -> Element {
        Element::generator(&self.sig, id)
    }

    pub fn by_name(&self, name: &str) -> Result<GenId> {
        self.sig
            .lookup(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn element(&self, name: &str) -> Result<Element> {
        Ok(self.gen_element(self.by_name(name)?))
    }

    /// The differential, extended to arbitrary elements by the graded
    /// Leibniz rule.
    pub fn differentiate(&self, a: &Element) -> Element {
        assert!(
            same_signature(&self.sig, a.signature()),
            "algebra mismatch in d"
        );
        let mut out = Element::zero(&self.sig);
        for (m, c) in a.terms() {
            out = &out + &self.differentiate_monomial(m).scale(c);
        }
        out
    }

    fn differentiate_monomial(&self, m: &Monomial) -> Element {
        // d(prefix · g^e · suffix) contributes
        //   (-1)^{deg prefix} · prefix ^ (e g^{e-1} dg) ^ suffix,
        // with the element product restoring canonical order and signs.
        let mut out = Element::zero(&self.sig);
        let factors = m.factors();
        let mut prefix_degree = 0u32;
        for (i, &(id, e)) in factors.iter().enumerate() {
            let dg = &self.diff[id.0 as usize];
            if !dg.is_zero() {
                let pref_m = Monomial::from_factors(&self.sig, &factors[..i])
                    .expect("prefix of a valid monomial is valid");
                let mut tail: Vec<(GenId, u32)> = Vec::new();
                if e > 1 {
                    tail.push((id, e - 1));
                }
                tail.extend_from_slice(&factors[i + 1..]);
                let tail_m = Monomial::from_factors(&self.sig, &tail)
                    .expect("tail of a valid monomial is valid");
                let pref_e = Element::from_monomial(&self.sig, pref_m, Rat::one());
                let tail_e = Element::from_monomial(&self.sig, tail_m, Rat::one());
                let mut piece = &(&pref_e * dg) * &tail_e;
                piece = piece.scale(&rat(i64::from(e)));
                if prefix_degree % 2 == 1 {
                    piece = -&piece;
                }
                out = &out + &piece;
            }
            prefix_degree += self.sig.degree(id) * e;
        }
        out
    }

    /// The complete monomial basis of the given degree.
    pub fn graded_basis(&self, degree: u32) -> Result<Arc<Vec<Monomial>>> {
        if degree > self.basis_cap {
            return Err(Error::DegreeCapExceeded {
                degree,
                cap: self.basis_cap,
            });
        }
        if let Some(top) = self.sig.top_degree() {
            if degree > top {
                return Ok(Arc::new(Vec::new()));
            }
        }
        if let Some(hit) = self.cache.read().unwrap().get(&degree) {
            return Ok(hit.clone());
        }
        let mut out = Vec::new();
        let mut stack: Vec<(GenId, u32)> = Vec::new();
        enumerate_monomials(&self.sig, degree, 0, &mut stack, &mut out);
        out.sort();
        let out = Arc::new(out);
        self.cache.write().unwrap().insert(degree, out.clone());
        Ok(out)
    }

    /// Coordinates of a homogeneous element in its graded basis.
    pub fn coordinates(&self, a: &Element, degree: u32) -> Result<Vec<Rat>> {
        let basis = self.graded_basis(degree)?;
        let mut coords = vec![Rat::zero(); basis.len()];
        for (m, c) in a.terms() {
            debug_assert_eq!(m.degree(), degree);
            let idx = basis
                .binary_search(m)
                .expect("monomial of correct degree is in the graded basis");
            coords[idx] = c.clone();
        }
        Ok(coords)
    }

    fn element_from_coordinates(&self, coords: &[Rat], degree: u32) -> Result<Element> {
        let basis = self.graded_basis(degree)?;
        let mut out = Element::zero(&self.sig);
        for (i, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                out.add_term(basis[i].clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Matrix of `d` from degree `k` to degree `k+1`, columns indexed by the
    /// degree-`k` basis.
    pub fn differential_matrix(&self, k: u32) -> Result<Matrix> {
        let dom = self.graded_basis(k)?;
        let cod_len = self.graded_basis(k + 1)?.len();
        let mut cols = Vec::with_capacity(dom.len());
        for m in dom.iter() {
            let image = self.differentiate(&Element::from_monomial(
                &self.sig,
                m.clone(),
                Rat::one(),
            ));
            cols.push(self.coordinates(&image, k + 1)?);
        }
        Ok(Matrix::from_columns(cod_len, &cols))
    }

    /// Finds `alpha` with `d(alpha) = target`, or `None` when `target` is not
    /// exact. Mixed-degree targets are solved per homogeneous part. The
    /// returned primitive is the canonical solution with free basis
    /// coefficients set to zero.
    pub fn solve_d(&self, target: &Element) -> Result<Option<Element>> {
        let mut out = Element::zero(&self.sig);
        for (degree, part) in target.homogeneous_parts() {
            if degree == 0 {
                return Ok(None);
            }
            let mat = self.differential_matrix(degree - 1)?;
            let rhs = self.coordinates(&part, degree)?;
            match mat.solve(&rhs) {
                Some(x) => out = &out + &self.element_from_coordinates(&x, degree - 1)?,
                None => return Ok(None),
            }
        }
        Ok(Some(out))
    }

    pub fn is_exact(&self, a: &Element) -> Result<bool> {
        Ok(self.solve_d(a)?.is_some())
    }

    /// Dimension of cohomology in the given degree, by exact rank
    /// computation.
    pub fn cohomology_dim(&self, degree: u32) -> Result<usize> {
        let dim = self.graded_basis(degree)?.len();
        let rank_out = self.differential_matrix(degree)?.rank();
        let rank_in = if degree == 0 {
            0
        } else {
            self.differential_matrix(degree - 1)?.rank()
        };
        Ok(dim - rank_out - rank_in)
    }

    /// Basis representatives of degree-`n` cocycles (the kernel of `d`).
    pub fn cocycle_basis(&self, n: u32) -> Result<Vec<Element>> {
        let mat = self.differential_matrix(n)?;
        let mut out = Vec::new();
        for v in mat.null_space() {
            out.push(self.element_from_coordinates(&v, n)?);
        }
        Ok(out)
    }

    /// Generator evaluation order: every generator appears after all
    /// generators occurring in its differential.
    pub fn dependency_order(&self) -> Result<Vec<GenId>> {
        let n = self.sig.len();
        let mut deps: Vec<Vec<GenId>> = vec![Vec::new(); n];
        let mut indegree = vec![0usize; n];
        for id in self.sig.ids() {
            let mut seen = std::collections::BTreeSet::new();
            for (m, _) in self.diff[id.0 as usize].terms() {
                for &(g, _) in m.factors() {
                    seen.insert(g);
                }
            }
            indegree[id.0 as usize] = seen.len();
            for g in seen {
                deps[g.0 as usize].push(id);
            }
        }
        let mut ready: std::collections::BTreeSet<(u32, GenId)> = self
            .sig
            .ids()
            .filter(|id| indegree[id.0 as usize] == 0)
            .map(|id| (self.sig.degree(id), id))
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(&(deg, id)) = ready.iter().next() {
            ready.remove(&(deg, id));
            order.push(id);
            for &next in &deps[id.0 as usize] {
                indegree[next.0 as usize] -= 1;
                if indegree[next.0 as usize] == 0 {
                    ready.insert((self.sig.degree(next), next));
                }
            }
        }
        if order.len() != n {
            return Err(Error::DependencyCycle);
        }
        Ok(order)
    }

    /// Restriction to the subalgebra generated by degrees `< degree`.
    /// Requires every kept differential to stay inside the kept generators
    /// (always true for minimal algebras).
    pub fn truncate_below(&self, degree: u32) -> Result<FreeCdga> {
        let kept: Vec<GenId> = self
            .sig
            .ids()
            .filter(|&id| self.sig.degree(id) < degree)
            .collect();
        self.restrict_to(&kept)
    }

    fn restrict_to(&self, kept: &[GenId]) -> Result<FreeCdga> {
        let gens: Vec<Generator> = kept
            .iter()
            .map(|&id| self.sig.generator(id).clone())
            .collect();
        let sig = Signature::with_top_degree(gens, self.sig.top_degree())?;
        let mut reindex: BTreeMap<GenId, GenId> = BTreeMap::new();
        for (new, &old) in kept.iter().enumerate() {
            reindex.insert(old, GenId(new as u32));
        }
        let mut diffs = Vec::new();
        for &old in kept {
            let image = &self.diff[old.0 as usize];
            let mut out = Element::zero(&sig);
            for (m, c) in image.terms() {
                let mut factors = Vec::new();
                for &(g, e) in m.factors() {
                    let Some(&ng) = reindex.get(&g) else {
                        return Err(Error::NotClosed {
                            generator: self.sig.generator(old).name.clone(),
                        });
                    };
                    factors.push((ng, e));
                }
                let m = Monomial::from_factors(&sig, &factors)
                    .expect("reindexed monomial stays valid");
                out = &out + &Element::from_monomial(&sig, m, c.clone());
            }
            diffs.push((reindex[&old], out));
        }
        FreeCdga::new(sig, diffs)
    }
}

fn enumerate_monomials(
    sig: &Signature,
    remaining: u32,
    from: usize,
    stack: &mut Vec<(GenId, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        out.push(
            Monomial::from_factors(sig, stack).expect("enumeration respects odd exponents"),
        );
        return;
    }
    for idx in from..sig.len() {
        let id = GenId(idx as u32);
        let d = sig.degree(id);
        if d > remaining {
            continue;
        }
        let max_e = if sig.is_odd(id) { 1 } else { remaining / d };
        for e in 1..=max_e {
            if d * e > remaining {
                break;
            }
            stack.push((id, e));
            enumerate_monomials(sig, remaining - d * e, idx + 1, stack, out);
            stack.pop();
        }
    }
}
