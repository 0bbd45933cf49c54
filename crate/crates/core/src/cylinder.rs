//! The formal cylinder A ⊗ R⟨t,dt⟩ and the two-interval square
//! A ⊗ R⟨t,dt,s,ds⟩, with endpoint evaluation and the fiberwise-integration
//! operators.
//!
//! Conventions, fixed once for the whole crate:
//!   d(a ⊗ t^i)    = da ⊗ t^i + (-1)^{deg a} i a ⊗ t^{i-1} dt
//!   d(a ⊗ t^i dt) = da ⊗ t^i dt
//!   ∫₀ᵗ a ⊗ t^i = 0,      ∫₀ᵗ a ⊗ t^i dt = (-1)^{deg a} a ⊗ t^{i+1}/(i+1)
//!   ∫₀¹ a ⊗ t^i = 0,      ∫₀¹ a ⊗ t^i dt = (-1)^{deg a} a/(i+1)
//! These satisfy
//!   d(∫₀ᵗ u) + ∫₀ᵗ du = u − u|_{t=0,dt=0} ⊗ 1
//!   d(∫₀¹ u) + ∫₀¹ du = u|_{t=1} − u|_{t=0}.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::algebra::{rat, Element, FreeCdga, Rat, Signature};
use crate::error::{Error, Result};

/// Guardrail against runaway recursions producing unbounded t-powers.
pub const T_POWER_CAP: u32 = 64;

fn check_power(i: u32) {
    assert!(
        i <= T_POWER_CAP,
        "t-power {i} exceeds the cap {T_POWER_CAP}; runaway recursion?"
    );
}

/// Element of A ⊗ R⟨t,dt⟩: a polynomial part and a dt part, both sparse in
/// the t-power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderElement {
    sig: Arc<Signature>,
    t_part: BTreeMap<u32, Element>,
    dt_part: BTreeMap<u32, Element>,
}

impl CylinderElement {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        CylinderElement {
            sig: sig.clone(),
            t_part: BTreeMap::new(),
            dt_part: BTreeMap::new(),
        }
    }

    /// a ⊗ 1
    pub fn constant(a: &Element) -> Self {
        CylinderElement::t_term(a, 0)
    }

    /// a ⊗ t^i
    pub fn t_term(a: &Element, i: u32) -> Self {
        check_power(i);
        let mut out = CylinderElement::zero(a.signature());
        out.add_t(i, a.clone());
        out
    }

    /// a ⊗ t^i dt
    pub fn dt_term(a: &Element, i: u32) -> Self {
        check_power(i);
        let mut out = CylinderElement::zero(a.signature());
        out.add_dt(i, a.clone());
        out
    }

    /// The bare interval coordinate t.
    pub fn t(sig: &Arc<Signature>) -> Self {
        CylinderElement::t_term(&Element::one(sig), 1)
    }

    /// The bare interval form dt.
    pub fn dt(sig: &Arc<Signature>) -> Self {
        CylinderElement::dt_term(&Element::one(sig), 0)
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn t_coefficient(&self, i: u32) -> Element {
        self.t_part
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.sig))
    }

    pub fn dt_coefficient(&self, i: u32) -> Element {
        self.dt_part
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Element::zero(&self.sig))
    }

    pub fn t_terms(&self) -> impl Iterator<Item = (&u32, &Element)> {
        self.t_part.iter()
    }

    pub fn dt_terms(&self) -> impl Iterator<Item = (&u32, &Element)> {
        self.dt_part.iter()
    }

    pub fn has_dt_part(&self) -> bool {
        !self.dt_part.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.t_part.is_empty() && self.dt_part.is_empty()
    }

    fn add_t(&mut self, i: u32, a: Element) {
        if a.is_zero() {
            return;
        }
        check_power(i);
        let slot = self
            .t_part
            .entry(i)
            .or_insert_with(|| Element::zero(&self.sig));
        *slot = &*slot + &a;
        if slot.is_zero() {
            self.t_part.remove(&i);
        }
    }

    fn add_dt(&mut self, i: u32, a: Element) {
        if a.is_zero() {
            return;
        }
        check_power(i);
        let slot = self
            .dt_part
            .entry(i)
            .or_insert_with(|| Element::zero(&self.sig));
        *slot = &*slot + &a;
        if slot.is_zero() {
            self.dt_part.remove(&i);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = CylinderElement::zero(&self.sig);
        for (&i, a) in &self.t_part {
            out.add_t(i, a.scale(c));
        }
        for (&i, a) in &self.dt_part {
            out.add_dt(i, a.scale(c));
        }
        out
    }

    pub fn try_mul(&self, other: &CylinderElement) -> Result<CylinderElement> {
        if self.sig != other.sig && !Arc::ptr_eq(&self.sig, &other.sig) {
            return Err(Error::AlgebraMismatch);
        }
        let mut out = CylinderElement::zero(&self.sig);
        for (&i, a) in &self.t_part {
            for (&j, b) in &other.t_part {
                out.add_t(i + j, a.try_mul(b)?);
            }
            for (&j, b) in &other.dt_part {
                out.add_dt(i + j, a.try_mul(b)?);
            }
        }
        for (&i, a) in &self.dt_part {
            // (a ⊗ t^i dt)(b ⊗ t^j ...) moves dt past b: sign (-1)^{deg b}.
            for (&j, b) in &other.t_part {
                for (deg, part) in b.homogeneous_parts() {
                    let prod = a.try_mul(&part)?;
                    out.add_dt(i + j, if deg % 2 == 1 { -&prod } else { prod });
                }
            }
            // dt · dt = 0
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> CylinderElement {
        let mut out = CylinderElement::constant(&Element::one(&self.sig));
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Evaluation at an interval point: substitutes t := value, dt := 0.
    pub fn evaluate(&self, value: &Rat) -> Element {
        let mut out = Element::zero(&self.sig);
        for (&i, a) in &self.t_part {
            let mut power = Rat::one();
            for _ in 0..i {
                power = &power * value;
            }
            out = &out + &a.scale(&power);
        }
        out
    }

    pub fn at_zero(&self) -> Element {
        self.t_coefficient(0)
    }

    pub fn at_one(&self) -> Element {
        self.evaluate(&Rat::one())
    }

    /// Reverses the interval: t ↦ 1−t, dt ↦ −dt.
    pub fn reverse(&self) -> CylinderElement {
        let sig = &self.sig;
        let mut out = CylinderElement::zero(sig);
        let one_minus_t = {
            let mut u = CylinderElement::constant(&Element::one(sig));
            u.add_t(1, -&Element::one(sig));
            u
        };
        for (&i, a) in &self.t_part {
            out = &out + &(&CylinderElement::constant(a) * &one_minus_t.pow(i));
        }
        for (&i, a) in &self.dt_part {
            let term = &CylinderElement::dt_term(&-a, 0) * &one_minus_t.pow(i);
            out = &out + &term;
        }
        out
    }

    pub fn promote(&self, sig: &Arc<Signature>) -> Result<CylinderElement> {
        let mut out = CylinderElement::zero(sig);
        for (&i, a) in &self.t_part {
            out.add_t(i, a.promote(sig)?);
        }
        for (&i, a) in &self.dt_part {
            out.add_dt(i, a.promote(sig)?);
        }
        Ok(out)
    }
}

impl std::ops::Add for &CylinderElement {
    type Output = CylinderElement;
    fn add(self, other: &CylinderElement) -> CylinderElement {
        let mut out = self.clone();
        for (&i, a) in &other.t_part {
            out.add_t(i, a.clone());
        }
        for (&i, a) in &other.dt_part {
            out.add_dt(i, a.clone());
        }
        out
    }
}

impl std::ops::Sub for &CylinderElement {
    type Output = CylinderElement;
    fn sub(self, other: &CylinderElement) -> CylinderElement {
        self + &other.scale(&-Rat::one())
    }
}

impl std::ops::Neg for &CylinderElement {
    type Output = CylinderElement;
    fn neg(self) -> CylinderElement {
        self.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &CylinderElement {
    type Output = CylinderElement;
    fn mul(self, other: &CylinderElement) -> CylinderElement {
        self.try_mul(other).expect("algebra mismatch in cylinder *")
    }
}

impl fmt::Display for CylinderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut pieces = Vec::new();
        for (&i, a) in &self.t_part {
            let factor = match i {
                0 => String::new(),
                1 => " t".to_string(),
                _ => format!(" t^{i}"),
            };
            pieces.push(format!("({a}){factor}"));
        }
        for (&i, a) in &self.dt_part {
            let factor = match i {
                0 => " dt".to_string(),
                1 => " t dt".to_string(),
                _ => format!(" t^{i} dt"),
            };
            pieces.push(format!("({a}){factor}"));
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

/// d on the cylinder, using the ambient algebra's differential.
pub fn cyl_differentiate(algebra: &FreeCdga, u: &CylinderElement) -> CylinderElement {
    let mut out = CylinderElement::zero(u.signature());
    for (&i, a) in u.t_terms() {
        out = &out + &CylinderElement::t_term(&algebra.differentiate(a), i);
        if i > 0 {
            for (deg, part) in a.homogeneous_parts() {
                let coeff = part.scale(&rat(i64::from(i)));
                let signed = if deg % 2 == 1 { -&coeff } else { coeff };
                out = &out + &CylinderElement::dt_term(&signed, i - 1);
            }
        }
    }
    for (&i, a) in u.dt_terms() {
        out = &out + &CylinderElement::dt_term(&algebra.differentiate(a), i);
    }
    out
}

/// ∫₀ᵗ: kills polynomial terms, antidifferentiates dt terms in t.
pub fn integrate_0_t(u: &CylinderElement) -> CylinderElement {
    let mut out = CylinderElement::zero(u.signature());
    for (&i, a) in u.dt_terms() {
        for (deg, part) in a.homogeneous_parts() {
            let coeff = part.scale(&Rat::new(1.into(), (i64::from(i) + 1).into()));
            let signed = if deg % 2 == 1 { -&coeff } else { coeff };
            out = &out + &CylinderElement::t_term(&signed, i + 1);
        }
    }
    out
}

/// ∫₀¹: the full fiberwise integral, landing back in the algebra.
pub fn integrate_0_1(u: &CylinderElement) -> Element {
    let mut out = Element::zero(u.signature());
    for (&i, a) in u.dt_terms() {
        for (deg, part) in a.homogeneous_parts() {
            let coeff = part.scale(&Rat::new(1.into(), (i64::from(i) + 1).into()));
            out = if deg % 2 == 1 {
                &out - &coeff
            } else {
                &out + &coeff
            };
        }
    }
    out
}

/// Basis symbol of the square: t^i s^j dt^ε ds^δ, with dt before ds.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SquareKey {
    pub t_pow: u32,
    pub s_pow: u32,
    pub dt: bool,
    pub ds: bool,
}

/// Element of A ⊗ R⟨t,dt,s,ds⟩.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareElement {
    sig: Arc<Signature>,
    terms: BTreeMap<SquareKey, Element>,
}

impl SquareElement {
    pub fn zero(sig: &Arc<Signature>) -> Self {
        SquareElement {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn term(a: &Element, key: SquareKey) -> Self {
        let mut out = SquareElement::zero(a.signature());
        out.add_term_in(key, a.clone());
        out
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SquareKey, &Element)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term_in(&mut self, key: SquareKey, a: Element) {
        if a.is_zero() {
            return;
        }
        check_power(key.t_pow);
        check_power(key.s_pow);
        let slot = self
            .terms
            .entry(key)
            .or_insert_with(|| Element::zero(&self.sig));
        *slot = &*slot + &a;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = SquareElement::zero(&self.sig);
        for (&k, a) in &self.terms {
            out.add_term_in(k, a.scale(c));
        }
        out
    }

    /// Embeds a cylinder element along the t-direction.
    pub fn from_t_cylinder(u: &CylinderElement) -> Self {
        let mut out = SquareElement::zero(u.signature());
        for (&i, a) in u.t_terms() {
            out.add_term_in(
                SquareKey {
                    t_pow: i,
                    s_pow: 0,
                    dt: false,
                    ds: false,
                },
                a.clone(),
            );
        }
        for (&i, a) in u.dt_terms() {
            out.add_term_in(
                SquareKey {
                    t_pow: i,
                    s_pow: 0,
                    dt: true,
                    ds: false,
                },
                a.clone(),
            );
        }
        out
    }

    /// Embeds a cylinder element along the s-direction (t ↦ s, dt ↦ ds).
    pub fn from_s_cylinder(u: &CylinderElement) -> Self {
        let mut out = SquareElement::zero(u.signature());
        for (&i, a) in u.t_terms() {
            out.add_term_in(
                SquareKey {
                    t_pow: 0,
                    s_pow: i,
                    dt: false,
                    ds: false,
                },
                a.clone(),
            );
        }
        for (&i, a) in u.dt_terms() {
            out.add_term_in(
                SquareKey {
                    t_pow: 0,
                    s_pow: i,
                    dt: false,
                    ds: true,
                },
                a.clone(),
            );
        }
        out
    }

    pub fn try_mul(&self, other: &SquareElement) -> Result<SquareElement> {
        let mut out = SquareElement::zero(&self.sig);
        for (&k1, a) in &self.terms {
            for (&k2, b) in &other.terms {
                if (k1.dt && k2.dt) || (k1.ds && k2.ds) {
                    continue;
                }
                // Move the right factor's interval forms past the left
                // factor's and past b itself.
                let left_forms = k1.dt as u32 + k1.ds as u32;
                // b passes left's forms: (-1)^{deg b * left_forms};
                // right's dt passes left's ds: (-1)^{k2.dt * k1.ds}.
                let cross = (k2.dt && k1.ds) as u32;
                let key = SquareKey {
                    t_pow: k1.t_pow + k2.t_pow,
                    s_pow: k1.s_pow + k2.s_pow,
                    dt: k1.dt || k2.dt,
                    ds: k1.ds || k2.ds,
                };
                for (deg, part) in b.homogeneous_parts() {
                    let prod = a.try_mul(&part)?;
                    let sign = (deg * left_forms + cross) % 2;
                    out.add_term_in(key, if sign == 1 { -&prod } else { prod });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> SquareElement {
        let mut out = SquareElement::term(
            &Element::one(&self.sig),
            SquareKey {
                t_pow: 0,
                s_pow: 0,
                dt: false,
                ds: false,
            },
        );
        for _ in 0..e {
            out = out.try_mul(self).expect("same signature");
        }
        out
    }

    /// Restriction t := 1, dt := 0, leaving an expression in s, ds.
    pub fn restrict_t1(&self) -> SquareElement {
        let mut out = SquareElement::zero(&self.sig);
        for (&k, a) in &self.terms {
            if k.dt {
                continue;
            }
            out.add_term_in(
                SquareKey {
                    t_pow: 0,
                    s_pow: k.s_pow,
                    dt: false,
                    ds: k.ds,
                },
                a.clone(),
            );
        }
        out
    }

    /// Evaluation at a corner (t, s) := (t_val, s_val), dt := ds := 0.
    pub fn evaluate(&self, t_val: &Rat, s_val: &Rat) -> Element {
        let mut out = Element::zero(&self.sig);
        for (&k, a) in &self.terms {
            if k.dt || k.ds {
                continue;
            }
            let mut c = Rat::one();
            for _ in 0..k.t_pow {
                c = &c * t_val;
            }
            for _ in 0..k.s_pow {
                c = &c * s_val;
            }
            out = &out + &a.scale(&c);
        }
        out
    }
}

impl std::ops::Add for &SquareElement {
    type Output = SquareElement;
    fn add(self, other: &SquareElement) -> SquareElement {
        let mut out = self.clone();
        for (&k, a) in &other.terms {
            out.add_term_in(k, a.clone());
        }
        out
    }
}

impl std::ops::Sub for &SquareElement {
    type Output = SquareElement;
    fn sub(self, other: &SquareElement) -> SquareElement {
        self + &other.scale(&-Rat::one())
    }
}

impl std::ops::Mul for &SquareElement {
    type Output = SquareElement;
    fn mul(self, other: &SquareElement) -> SquareElement {
        self.try_mul(other).expect("algebra mismatch in square *")
    }
}

/// d on the square.
pub fn square_differentiate(algebra: &FreeCdga, u: &SquareElement) -> SquareElement {
    let mut out = SquareElement::zero(u.signature());
    for (&k, a) in u.terms() {
        out.add_assign_term(algebra, k, a);
    }
    out
}

impl SquareElement {
    fn add_assign_term(&mut self, algebra: &FreeCdga, k: SquareKey, a: &Element) {
        self.add_term_in(k, algebra.differentiate(a));
        for (deg, part) in a.homogeneous_parts() {
            // t-derivative: i a t^{i-1} dt, sign (-1)^{deg a}; dies on dt^2.
            if k.t_pow > 0 && !k.dt {
                let coeff = part.scale(&rat(i64::from(k.t_pow)));
                let signed = if deg % 2 == 1 { -&coeff } else { coeff };
                self.add_term_in(
                    SquareKey {
                        t_pow: k.t_pow - 1,
                        dt: true,
                        ..k
                    },
                    signed,
                );
            }
            // s-derivative: ds additionally passes dt^ε.
            if k.s_pow > 0 && !k.ds {
                let coeff = part.scale(&rat(i64::from(k.s_pow)));
                let sign = (deg + k.dt as u32) % 2;
                let signed = if sign == 1 { -&coeff } else { coeff };
                self.add_term_in(
                    SquareKey {
                        s_pow: k.s_pow - 1,
                        ds: true,
                        ..k
                    },
                    signed,
                );
            }
        }
    }
}

/// ∫₀ˢ on the square: the s-direction analog of ∫₀ᵗ. The ds coefficient is
/// treated as an element of degree (deg a + ε).
pub fn square_integrate_0_s(u: &SquareElement) -> SquareElement {
    let mut out = SquareElement::zero(u.signature());
    for (&k, a) in u.terms() {
        if !k.ds {
            continue;
        }
        for (deg, part) in a.homogeneous_parts() {
            let coeff = part.scale(&Rat::new(1.into(), (i64::from(k.s_pow) + 1).into()));
            let sign = (deg + k.dt as u32) % 2;
            let signed = if sign == 1 { -&coeff } else { coeff };
            out.add_term_in(
                SquareKey {
                    s_pow: k.s_pow + 1,
                    ds: false,
                    ..k
                },
                signed,
            );
        }
    }
    out
}

/// Restriction to the diagonal: s := t, ds := dt.
pub fn diagonal_restrict(u: &SquareElement) -> CylinderElement {
    let mut out = CylinderElement::zero(u.signature());
    for (&k, a) in u.terms() {
        if k.dt && k.ds {
            continue; // dt·dt = 0
        }
        let term = if k.dt || k.ds {
            CylinderElement::dt_term(a, k.t_pow + k.s_pow)
        } else {
            CylinderElement::t_term(a, k.t_pow + k.s_pow)
        };
        out = &out + &term;
    }
    out
}
