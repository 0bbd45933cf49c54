//! DGA homomorphisms, cylinder-valued homotopies between them, and the
//! derivation classes φ + η ⊗ e that form the group acting on homotopy sets.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{Element, FreeCdga, GenId, Monomial, Rat};
use crate::cylinder::{cyl_differentiate, integrate_0_1, CylinderElement};
use crate::error::{Error, Result};

/// A homomorphism of free CDGAs, stored by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: FreeCdga,
    target: FreeCdga,
    images: Vec<Element>,
}

impl Morphism {
    /// Builds and verifies the chain-map identity `d(f(v)) = f(dv)` on every
    /// generator.
    pub fn new(source: FreeCdga, target: FreeCdga, images: Vec<Element>) -> Result<Self> {
        let m = Morphism::new_unchecked(source, target, images)?;
        for id in m.source.signature().ids() {
            let gen = m.source.signature().generator(id);
            let image = &m.images[id.0 as usize];
            if !image.is_zero() && image.degree() != Some(gen.degree) {
                return Err(Error::DegreeMismatch {
                    generator: gen.name.clone(),
                    expected: gen.degree,
                    found: image.degree(),
                });
            }
            let lhs = m.target.differentiate(image);
            let rhs = m.apply(m.source.generator_differential(id))?;
            if lhs != rhs {
                return Err(Error::DiagramMismatch(format!(
                    "not a chain map at `{}`",
                    gen.name
                )));
            }
        }
        Ok(m)
    }

    pub fn new_unchecked(
        source: FreeCdga,
        target: FreeCdga,
        images: Vec<Element>,
    ) -> Result<Self> {
        if images.len() != source.signature().len() {
            return Err(Error::AlgebraMismatch);
        }
        let images = images
            .into_iter()
            .map(|e| e.promote(target.signature()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source,
            target,
            images,
        })
    }

    /// The zero morphism (every generator to 0). A chain map whenever the
    /// source has no constants in differentials, which is always.
    pub fn zero(source: FreeCdga, target: FreeCdga) -> Self {
        let images = vec![Element::zero(target.signature()); source.signature().len()];
        Morphism {
            source,
            target,
            images,
        }
    }

    pub fn identity(algebra: FreeCdga) -> Self {
        let images = algebra
            .signature()
            .ids()
            .map(|id| algebra.gen_element(id))
            .collect();
        Morphism {
            source: algebra.clone(),
            target: algebra,
            images,
        }
    }

    pub fn source(&self) -> &FreeCdga {
        &self.source
    }

    pub fn target(&self) -> &FreeCdga {
        &self.target
    }

    pub fn image(&self, id: GenId) -> &Element {
        &self.images[id.0 as usize]
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Multiplicative extension to arbitrary elements of the source.
    pub fn apply(&self, a: &Element) -> Result<Element> {
        if a.signature() != self.source.signature() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = Element::zero(self.target.signature());
        for (m, c) in a.terms() {
            out = &out + &self.apply_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    fn apply_monomial(&self, m: &Monomial) -> Result<Element> {
        let mut out = Element::one(self.target.signature());
        for &(id, e) in m.factors() {
            out = out.try_mul(&self.images[id.0 as usize].pow(e))?;
        }
        Ok(out)
    }

    /// Checks the chain-map identity without constructing errors.
    pub fn is_chain_map(&self) -> bool {
        self.source.signature().ids().all(|id| {
            let lhs = self.target.differentiate(&self.images[id.0 as usize]);
            match self.apply(self.source.generator_differential(id)) {
                Ok(rhs) => lhs == rhs,
                Err(_) => false,
            }
        })
    }

    /// Reinterprets the morphism into an extension of its target.
    pub fn promote_target(&self, target: &FreeCdga) -> Result<Morphism> {
        let images = self
            .images
            .iter()
            .map(|e| e.promote(target.signature()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: self.source.clone(),
            target: target.clone(),
            images,
        })
    }

    /// Composition `self ∘ inner`.
    pub fn compose(&self, inner: &Morphism) -> Result<Morphism> {
        if inner.target.signature() != self.source.signature() {
            return Err(Error::AlgebraMismatch);
        }
        let images = inner
            .images
            .iter()
            .map(|e| self.apply(e))
            .collect::<Result<Vec<_>>>()?;
        Ok(Morphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            images,
        })
    }
}

/// A homotopy of DGA homomorphisms: a map into the target's cylinder whose
/// endpoint evaluations are the two morphisms being connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    source: FreeCdga,
    target: FreeCdga,
    images: Vec<CylinderElement>,
}

impl Homotopy {
    /// Builds and verifies degree consistency and the chain-map identity
    /// into the cylinder: on a degree-n generator, every t-coefficient is
    /// homogeneous of degree n and every dt-coefficient of degree n − 1.
    pub fn new(source: FreeCdga, target: FreeCdga, images: Vec<CylinderElement>) -> Result<Self> {
        let h = Homotopy::new_unchecked(source, target, images)?;
        for id in h.source.signature().ids() {
            let gen = h.source.signature().generator(id);
            let image = &h.images[id.0 as usize];
            let t_ok = image
                .t_terms()
                .all(|(_, a)| a.degree() == Some(gen.degree));
            let dt_ok = image
                .dt_terms()
                .all(|(_, a)| a.degree() == Some(gen.degree - 1));
            if !t_ok || !dt_ok {
                return Err(Error::DegreeMismatch {
                    generator: gen.name.clone(),
                    expected: gen.degree,
                    found: None,
                });
            }
            if !h.chain_ok_at(id) {
                return Err(Error::DiagramMismatch(format!(
                    "homotopy is not a chain map at `{}`",
                    gen.name
                )));
            }
        }
        Ok(h)
    }

    pub fn new_unchecked(
        source: FreeCdga,
        target: FreeCdga,
        images: Vec<CylinderElement>,
    ) -> Result<Self> {
        if images.len() != source.signature().len() {
            return Err(Error::AlgebraMismatch);
        }
        let images = images
            .into_iter()
            .map(|u| u.promote(target.signature()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Homotopy {
            source,
            target,
            images,
        })
    }

    /// The constant homotopy at a morphism.
    pub fn constant(f: &Morphism) -> Self {
        let images = f
            .images()
            .iter()
            .map(CylinderElement::constant)
            .collect();
        Homotopy {
            source: f.source().clone(),
            target: f.target().clone(),
            images,
        }
    }

    pub fn source(&self) -> &FreeCdga {
        &self.source
    }

    pub fn target(&self) -> &FreeCdga {
        &self.target
    }

    pub fn image(&self, id: GenId) -> &CylinderElement {
        &self.images[id.0 as usize]
    }

    pub fn images(&self) -> &[CylinderElement] {
        &self.images
    }

    pub fn apply(&self, a: &Element) -> Result<CylinderElement> {
        if a.signature() != self.source.signature() {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = CylinderElement::zero(self.target.signature());
        for (m, c) in a.terms() {
            let mut term = CylinderElement::constant(&Element::one(self.target.signature()));
            for &(id, e) in m.factors() {
                term = term.try_mul(&self.images[id.0 as usize].pow(e))?;
            }
            out = &out + &term.scale(c);
        }
        Ok(out)
    }

    fn chain_ok_at(&self, id: GenId) -> bool {
        let lhs = cyl_differentiate(&self.target, &self.images[id.0 as usize]);
        match self.apply(self.source.generator_differential(id)) {
            Ok(rhs) => lhs == rhs,
            Err(_) => false,
        }
    }

    pub fn is_chain_map(&self) -> bool {
        self.source.signature().ids().all(|id| self.chain_ok_at(id))
    }

    /// Endpoint at t = 0.
    pub fn endpoint_start(&self) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().map(|u| u.at_zero()).collect(),
        }
    }

    /// Endpoint at t = 1.
    pub fn endpoint_end(&self) -> Morphism {
        Morphism {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().map(|u| u.at_one()).collect(),
        }
    }

    /// The morphism-shaped family of fiberwise integrals v ↦ ∫₀¹ H(v).
    pub fn integral_images(&self) -> Vec<Element> {
        self.images.iter().map(integrate_0_1).collect()
    }

    /// Orientation reversal t ↦ 1−t, dt ↦ −dt; swaps the endpoints and
    /// negates every fiberwise integral.
    pub fn reverse(&self) -> Homotopy {
        Homotopy {
            source: self.source.clone(),
            target: self.target.clone(),
            images: self.images.iter().map(|u| u.reverse()).collect(),
        }
    }

    pub fn promote_target(&self, target: &FreeCdga) -> Result<Homotopy> {
        let images = self
            .images
            .iter()
            .map(|u| u.promote(target.signature()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Homotopy {
            source: self.source.clone(),
            target: target.clone(),
            images,
        })
    }
}

/// True iff `h` is a chain map into the cylinder and its endpoints equal
/// `f` and `g` exactly.
pub fn validate_homotopy(h: &Homotopy, f: &Morphism, g: &Morphism) -> Result<bool> {
    if h.source.signature() != f.source().signature()
        || h.source.signature() != g.source().signature()
        || h.target.signature() != f.target().signature()
        || h.target.signature() != g.target().signature()
    {
        return Err(Error::AlgebraMismatch);
    }
    Ok(h.is_chain_map() && h.endpoint_start() == *f && h.endpoint_end() == *g)
}

/// A class φ + η ⊗ e in the group of maps into B ⊗ R⟨e⟩ over φ: the map η
/// lowers degree by one, commutes with d, and satisfies the twisted
/// derivation law
///   η(uv) = (-1)^{deg v} η(u) φ(v) + φ(u) η(v).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationClass {
    base: Morphism,
    eta: Vec<Element>,
}

impl DerivationClass {
    pub fn new(base: Morphism, eta: Vec<Element>) -> Result<Self> {
        if eta.len() != base.source().signature().len() {
            return Err(Error::AlgebraMismatch);
        }
        let eta = eta
            .into_iter()
            .map(|e| e.promote(base.target().signature()))
            .collect::<Result<Vec<_>>>()?;
        let dc = DerivationClass { base, eta };
        // dη = ηd on generators.
        for id in dc.base.source().signature().ids() {
            let lhs = dc.base.target().differentiate(&dc.eta[id.0 as usize]);
            let rhs = dc.apply_eta(dc.base.source().generator_differential(id))?;
            if lhs != rhs {
                return Err(Error::DiagramMismatch(format!(
                    "eta does not commute with d at `{}`",
                    dc.base.source().signature().generator(id).name
                )));
            }
        }
        Ok(dc)
    }

    pub fn base(&self) -> &Morphism {
        &self.base
    }

    pub fn eta(&self, id: GenId) -> &Element {
        &self.eta[id.0 as usize]
    }

    /// Extends η to arbitrary elements by the twisted derivation law.
    pub fn apply_eta(&self, a: &Element) -> Result<Element> {
        let target_sig = self.base.target().signature();
        let mut out = Element::zero(target_sig);
        for (m, c) in a.terms() {
            out = &out + &self.eta_monomial(m)?.scale(c);
        }
        Ok(out)
    }

    fn eta_monomial(&self, m: &Monomial) -> Result<Element> {
        // Unroll the monomial into single generator factors and apply the
        // derivation law left to right:
        // η(u · rest) = (-1)^{deg rest} η(u) φ(rest) + φ(u) η(rest).
        let mut factors: Vec<GenId> = Vec::new();
        for &(id, e) in m.factors() {
            for _ in 0..e {
                factors.push(id);
            }
        }
        self.eta_factors(&factors)
    }

    fn eta_factors(&self, factors: &[GenId]) -> Result<Element> {
        let target_sig = self.base.target().signature();
        let src_sig = self.base.source().signature();
        match factors {
            [] => Ok(Element::zero(target_sig)),
            [id] => Ok(self.eta[id.0 as usize].clone()),
            [head, rest @ ..] => {
                let rest_degree: u32 = rest.iter().map(|g| src_sig.degree(*g)).sum();
                let phi_rest = {
                    let mut p = Element::one(target_sig);
                    for g in rest {
                        p = p.try_mul(self.base.image(*g))?;
                    }
                    p
                };
                let mut first = self.eta[head.0 as usize].try_mul(&phi_rest)?;
                if rest_degree % 2 == 1 {
                    first = -&first;
                }
                let second = self
                    .base
                    .image(*head)
                    .try_mul(&self.eta_factors(rest)?)?;
                Ok(&first + &second)
            }
        }
    }

    /// The group law (φ + η₁ ⊗ e) ⊞ (φ + η₂ ⊗ e) = φ + (η₁ + η₂) ⊗ e.
    pub fn boxplus(&self, other: &DerivationClass) -> Result<DerivationClass> {
        if self.base != other.base {
            return Err(Error::AlgebraMismatch);
        }
        let eta = self
            .eta
            .iter()
            .zip(&other.eta)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DerivationClass {
            base: self.base.clone(),
            eta,
        })
    }

    /// The obstruction map η ∘ d restricted to the listed generators.
    pub fn obstruction(&self, new_generators: &[GenId]) -> Result<Vec<Element>> {
        new_generators
            .iter()
            .map(|&v| self.apply_eta(self.base.source().generator_differential(v)))
            .collect()
    }
}

/// Scalar ε-rescaling helper used in tests and examples.
pub fn scale_morphism(f: &Morphism, factors: &[(GenId, BigRational)]) -> Result<Morphism> {
    let map: BTreeMap<GenId, Rat> = factors.iter().cloned().collect();
    let images = f
        .source()
        .signature()
        .ids()
        .map(|id| {
            let c = map.get(&id).cloned().unwrap_or_else(Rat::one);
            f.image(id).scale(&c)
        })
        .collect();
    Morphism::new(f.source().clone(), f.target().clone(), images)
}
