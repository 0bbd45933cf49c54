//! Lipschitz-exponent bookkeeping for morphisms and homotopies.
//!
//! Every atom (pullback symbol, antiderivative symbol) carries an integer
//! exponent; a product's weight is the sum of its factors', a sum's weight
//! is the max of its terms', and rational coefficients are invisible. This
//! is O(·)-level arithmetic: multiplicative constants are intentionally
//! dropped. The interval direction contributes a rational exponent θ to dt
//! coefficients, modeling a formal interval of length L^{-θ}.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Element, GenId, Rat};
use crate::cylinder::CylinderElement;
use crate::error::{Error, Result};
use crate::morphism::{Homotopy, Morphism};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightLedger {
    weights: BTreeMap<GenId, i64>,
    dt_exponent: Rat,
}

impl WeightLedger {
    pub fn new() -> Self {
        WeightLedger {
            weights: BTreeMap::new(),
            dt_exponent: Rat::zero(),
        }
    }

    /// Registers every generator that declares its own weight.
    pub fn from_signature(sig: &crate::algebra::Signature) -> Self {
        let mut ledger = WeightLedger::new();
        for id in sig.ids() {
            if let Some(w) = sig.generator(id).weight {
                ledger.register(id, w);
            }
        }
        ledger
    }

    pub fn register(&mut self, id: GenId, weight: i64) {
        self.weights.insert(id, weight);
    }

    pub fn with_dt_exponent(mut self, theta: Rat) -> Self {
        self.dt_exponent = theta;
        self
    }

    pub fn dt_exponent(&self) -> &Rat {
        &self.dt_exponent
    }

    pub fn weight_of_atom(&self, id: GenId) -> Option<i64> {
        self.weights.get(&id).copied()
    }

    /// Ledger weight of an element: max over monomials of the sum of atom
    /// weights. `None` for the zero element.
    pub fn weight(&self, a: &Element) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for (m, _) in a.terms() {
            let mut total = 0i64;
            for &(g, e) in m.factors() {
                let w = self.weights.get(&g).ok_or_else(|| Error::UnregisteredAtom {
                    name: a.signature().generator(g).name.clone(),
                })?;
                total += w * i64::from(e);
            }
            best = Some(best.map_or(total, |b| b.max(total)));
        }
        Ok(best)
    }

    /// Weight with the zero-element convention pinned to 0.
    pub fn weight_or_zero(&self, a: &Element) -> Result<i64> {
        Ok(self.weight(a)?.unwrap_or(0))
    }

    /// Max weight over all coefficients of a cylinder element, with the dt
    /// exponent added on the dt side. `None` for zero.
    pub fn cylinder_weight(&self, u: &CylinderElement) -> Result<Option<Rat>> {
        let mut best: Option<Rat> = None;
        let push = |v: Rat, best: &mut Option<Rat>| {
            *best = Some(match best.take() {
                None => v,
                Some(b) => b.max(v),
            });
        };
        for (_, a) in u.t_terms() {
            if let Some(w) = self.weight(a)? {
                push(Rat::from_integer(w.into()), &mut best);
            }
        }
        for (_, a) in u.dt_terms() {
            if let Some(w) = self.weight(a)? {
                push(Rat::from_integer(w.into()) + self.dt_exponent.clone(), &mut best);
            }
        }
        Ok(best)
    }
}

/// Formal dilatation exponent of a morphism: the max over generators v of
/// weight(image(v)) / deg(v). A pullback by an L-Lipschitz map has exponent
/// at most 1.
pub fn dilatation_exponent(f: &Morphism, ledger: &WeightLedger) -> Result<Rat> {
    let mut best = Rat::zero();
    for id in f.source().signature().ids() {
        if let Some(w) = ledger.weight(f.image(id))? {
            let deg = f.source().signature().degree(id);
            let ratio = Rat::new(w.into(), i64::from(deg).into());
            best = best.max(ratio);
        }
    }
    Ok(best)
}

/// Dilatation exponent of a homotopy: dt-parts additionally pay the
/// interval exponent θ.
pub fn homotopy_dilatation_exponent(h: &Homotopy, ledger: &WeightLedger) -> Result<Rat> {
    let mut best = Rat::zero();
    for id in h.source().signature().ids() {
        if let Some(w) = ledger.cylinder_weight(h.image(id))? {
            let deg = h.source().signature().degree(id);
            let ratio = w / Rat::from_integer(i64::from(deg).into());
            best = best.max(ratio);
        }
    }
    Ok(best)
}

/// Formal length of a homotopy: the dilatation exponent of the family of
/// fiberwise integrals v ↦ ∫₀¹ Φ(v).
pub fn formal_length(h: &Homotopy, ledger: &WeightLedger) -> Result<Rat> {
    let mut best = Rat::zero();
    for (id, integral) in h
        .source()
        .signature()
        .ids()
        .zip(h.integral_images().iter())
    {
        if let Some(w) = ledger.weight(integral)? {
            let deg = h.source().signature().degree(id);
            best = best.max(Rat::new(w.into(), i64::from(deg).into()));
        }
    }
    Ok(best)
}

/// Per-generator formal-length contributions (weight of ∫₀¹ Φ(v) over
/// deg v), for reporting.
pub fn formal_length_profile(
    h: &Homotopy,
    ledger: &WeightLedger,
) -> Result<Vec<(GenId, BigRational)>> {
    let mut out = Vec::new();
    for (id, integral) in h
        .source()
        .signature()
        .ids()
        .zip(h.integral_images().iter())
    {
        if let Some(w) = ledger.weight(integral)? {
            let deg = h.source().signature().degree(id);
            out.push((id, Rat::new(w.into(), i64::from(deg).into())));
        }
    }
    Ok(out)
}
