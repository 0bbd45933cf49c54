//! Stepwise nullhomotopies of pullback morphisms with formal antiderivative
//! symbols, terminal obstruction integrands (homotopy periods), weight
//! reduction of integrands, and positive-weight nullhomotopies.
//!
//! The target algebra is formal: it is generated by pullback symbols `w^v`
//! (one per model generator that survives the target's cell dimension) and
//! antiderivative symbols `c(·)` adjoined on demand with prescribed
//! differentials. A truncation degree models the vanishing of forms above
//! the mapping sphere's dimension and keeps every obstruction closed.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::algebra::{rat, Element, FreeCdga, GenId, Generator, Monomial, Rat, Signature};
use crate::cylinder::{integrate_0_1, integrate_0_t, CylinderElement};
use crate::error::{Error, Result};
use crate::ledger::WeightLedger;
use crate::linalg::Matrix;
use crate::morphism::{Homotopy, Morphism};
use crate::weights::WeightGrading;

/// One terminal obstruction: the integrand reported for a target-degree
/// generator, with its ledger weight.
#[derive(Clone, Debug)]
pub struct Period {
    pub generator: String,
    pub integrand: Element,
    pub weight: i64,
}

/// Everything produced by a nullhomotopy pipeline run.
#[derive(Clone, Debug)]
pub struct PeriodsRun {
    /// The model restricted to generators of degree ≤ the target degree.
    pub source: FreeCdga,
    /// Final formal target: pullback symbols plus adjoined antiderivatives.
    pub extension: FreeCdga,
    /// The pullback morphism on the homotopy's source.
    pub phi: Morphism,
    /// The pullback morphism on the full restricted source (zero in the
    /// target degree).
    pub phi_full: Morphism,
    /// The constructed nullhomotopy, from `phi` (t = 0) to zero (t = 1).
    pub homotopy: Homotopy,
    pub ledger: WeightLedger,
    pub periods: Vec<Period>,
}

/// Adjoins a formal antiderivative symbol with the prescribed differential
/// and ledger weight. The differential must be closed.
pub fn adjoin_antiderivative(
    algebra: &FreeCdga,
    name: &str,
    differential: &Element,
    weight: i64,
) -> Result<FreeCdga> {
    if !algebra.differentiate(differential).is_zero() {
        return Err(Error::UnresolvablePrimitive {
            generator: name.to_string(),
        });
    }
    let degree = differential
        .degree()
        .ok_or_else(|| Error::DegreeMismatch {
            generator: name.to_string(),
            expected: 0,
            found: None,
        })?
        - 1;
    let sig = algebra
        .signature()
        .extend(vec![Generator::with_weight(name, degree, weight)])?;
    let mut diffs = Vec::new();
    for id in algebra.signature().ids() {
        diffs.push((id, algebra.generator_differential(id).promote(&sig)?));
    }
    let new_id = GenId(algebra.signature().len() as u32);
    diffs.push((new_id, differential.promote(&sig)?));
    FreeCdga::new(sig, diffs)
}

/// Builds the formal pullback target of a model: one symbol `w^v` of ledger
/// weight deg v per generator of degree ≤ `dimension`, zero above, truncated
/// at `top_degree`. Returns the pullback morphism and the symbol ledger.
pub fn pullback_setup(
    model: &FreeCdga,
    dimension: u32,
    top_degree: u32,
) -> Result<(FreeCdga, Morphism, WeightLedger)> {
    pullback_setup_weighted(model, dimension, top_degree, &BTreeMap::new())
}

/// As `pullback_setup`, with per-generator ledger weight overrides (keyed by
/// model generator name); used to model pre-composition with a grading
/// automorphism at exponent level.
pub fn pullback_setup_weighted(
    model: &FreeCdga,
    dimension: u32,
    top_degree: u32,
    weight_overrides: &BTreeMap<String, i64>,
) -> Result<(FreeCdga, Morphism, WeightLedger)> {
    let source = model.truncate_below(top_degree + 1)?;
    let mut ext = FreeCdga::new(
        Signature::with_top_degree(Vec::new(), Some(top_degree))?,
        Vec::new(),
    )?;
    let n = source.signature().len();
    let mut images: Vec<Element> = vec![Element::zero(ext.signature()); n];
    for v in source.dependency_order()? {
        let deg = source.signature().degree(v);
        let name = &source.signature().generator(v).name;
        if deg <= dimension {
            let dv_image = apply_partial(&ext, &images, source.generator_differential(v))?;
            let weight = weight_overrides
                .get(name)
                .copied()
                .unwrap_or(i64::from(deg));
            ext = adjoin_generator(&ext, &format!("w^{name}"), deg, weight, &dv_image)?;
            for img in images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            let id = ext.by_name(&format!("w^{name}"))?;
            images[v.0 as usize] = ext.gen_element(id);
        }
    }
    let phi = Morphism::new(source, ext.clone(), images)?;
    let ledger = WeightLedger::from_signature(ext.signature());
    Ok((ext, phi, ledger))
}

fn adjoin_generator(
    algebra: &FreeCdga,
    name: &str,
    degree: u32,
    weight: i64,
    differential: &Element,
) -> Result<FreeCdga> {
    let sig = algebra
        .signature()
        .extend(vec![Generator::with_weight(name, degree, weight)])?;
    let mut diffs = Vec::new();
    for id in algebra.signature().ids() {
        diffs.push((id, algebra.generator_differential(id).promote(&sig)?));
    }
    let new_id = GenId(algebra.signature().len() as u32);
    diffs.push((new_id, differential.promote(&sig)?));
    FreeCdga::new(sig, diffs)
}

fn apply_partial(ext: &FreeCdga, images: &[Element], a: &Element) -> Result<Element> {
    let sig = ext.signature();
    let mut out = Element::zero(sig);
    for (m, c) in a.terms() {
        let mut term = Element::one(sig);
        for &(g, e) in m.factors() {
            term = term.try_mul(&images[g.0 as usize].promote(sig)?.pow(e))?;
        }
        out = &out + &term.scale(c);
    }
    Ok(out)
}

fn apply_partial_cyl(
    ext: &FreeCdga,
    images: &[CylinderElement],
    a: &Element,
) -> Result<CylinderElement> {
    let sig = ext.signature();
    let mut out = CylinderElement::zero(sig);
    for (m, c) in a.terms() {
        let mut term = CylinderElement::constant(&Element::one(sig));
        for &(g, e) in m.factors() {
            term = term.try_mul(&images[g.0 as usize].promote(sig)?.pow(e))?;
        }
        out = &out + &term.scale(c);
    }
    Ok(out)
}

/// Reinterprets an element of a prefix restriction of the source.
fn reinterpret(a: &Element, sig: &std::sync::Arc<Signature>) -> Element {
    let mut out = Element::zero(sig);
    for (m, c) in a.terms() {
        let mm = Monomial::from_factors(sig, m.factors())
            .expect("prefix reinterpretation preserves monomials");
        out = &out + &Element::from_monomial(sig, mm, c.clone());
    }
    out
}

/// Runs the stepwise nullhomotopy of the model's pullback and reports the
/// obstruction integrand for each generator of the target degree.
pub fn homotopy_periods(
    model: &FreeCdga,
    dimension: u32,
    target_degree: u32,
) -> Result<PeriodsRun> {
    pipeline(model, dimension, target_degree, false, &BTreeMap::new())
}

/// As `homotopy_periods`, with pullback-symbol ledger weights overridden.
pub fn homotopy_periods_weighted(
    model: &FreeCdga,
    dimension: u32,
    target_degree: u32,
    weight_overrides: &BTreeMap<String, i64>,
) -> Result<PeriodsRun> {
    pipeline(model, dimension, target_degree, false, weight_overrides)
}

/// Builds the nullhomotopy on every generator through the target degree
/// (antiderivatives are adjoined in the top degree too, rather than stopping
/// at the obstruction report).
pub fn full_nullhomotopy(
    model: &FreeCdga,
    dimension: u32,
    through_degree: u32,
) -> Result<PeriodsRun> {
    pipeline(model, dimension, through_degree, true, &BTreeMap::new())
}

fn pipeline(
    model: &FreeCdga,
    dimension: u32,
    top_degree: u32,
    extend_top: bool,
    weight_overrides: &BTreeMap<String, i64>,
) -> Result<PeriodsRun> {
    let (mut ext, phi0, _) =
        pullback_setup_weighted(model, dimension, top_degree, weight_overrides)?;
    let source = phi0.source().clone();
    let h_source = if extend_top {
        source.clone()
    } else {
        source.truncate_below(top_degree)?
    };
    if !h_source.signature().is_prefix_of(source.signature()) {
        return Err(Error::DiagramMismatch(
            "model generators must be declared in ascending degree".into(),
        ));
    }

    let mut phi_images: Vec<Element> = phi0.images().to_vec();
    let mut h_images: Vec<CylinderElement> = Vec::new();

    for v in h_source.dependency_order()? {
        while h_images.len() <= v.0 as usize {
            h_images.push(CylinderElement::zero(ext.signature()));
        }
        let k = h_source.signature().degree(v);
        let name = h_source.signature().generator(v).name.clone();
        let dv = h_source.generator_differential(v);
        let dv_image = apply_partial_cyl(&ext, &h_images, dv)?;
        let phi_v = phi_images[v.0 as usize].promote(ext.signature())?;
        let alpha = &phi_v + &integrate_0_1(&dv_image);
        if !ext.differentiate(&alpha).is_zero() {
            return Err(Error::UnresolvablePrimitive { generator: name });
        }
        let ledger = WeightLedger::from_signature(ext.signature());
        let c_elem = if alpha.is_zero() {
            Element::zero(ext.signature())
        } else {
            let weight = ledger.weight_or_zero(&alpha)?;
            let c_name = if phi_v.is_zero() {
                format!("c({name})")
            } else {
                format!("c(w^{name})")
            };
            ext = adjoin_antiderivative(&ext, &c_name, &alpha, weight)?;
            for img in phi_images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            for img in h_images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            ext.element(&c_name)?
        };
        // Φ(v) = φ(v) ⊗ 1 − α ⊗ t + (−1)^k c ⊗ dt + ∫₀ᵗ Φ(dv),
        // which is φ(v) + d((−c) ⊗ t) + ∫₀ᵗ Φ(dv) for d c = α.
        let sig = ext.signature();
        let alpha = alpha.promote(sig)?;
        let phi_v = phi_images[v.0 as usize].promote(sig)?;
        let dv_image = apply_partial_cyl(&ext, &h_images, dv)?;
        let mut image = CylinderElement::constant(&phi_v);
        image = &image - &CylinderElement::t_term(&alpha, 1);
        let signed_c = if k % 2 == 1 { -&c_elem } else { c_elem };
        image = &image + &CylinderElement::dt_term(&signed_c, 0);
        image = &image + &integrate_0_t(&dv_image);
        h_images[v.0 as usize] = image;
    }

    for img in phi_images.iter_mut() {
        *img = img.promote(ext.signature())?;
    }
    for img in h_images.iter_mut() {
        *img = img.promote(ext.signature())?;
    }
    let phi = Morphism::new(
        h_source.clone(),
        ext.clone(),
        phi_images[..h_source.signature().len()].to_vec(),
    )?;
    let homotopy = Homotopy::new(h_source.clone(), ext.clone(), h_images)?;
    debug_assert_eq!(homotopy.endpoint_start(), phi);
    debug_assert!(homotopy
        .endpoint_end()
        .images()
        .iter()
        .all(|e| e.is_zero()));
    let phi_full = Morphism::new(source.clone(), ext.clone(), phi_images.clone())?;

    let ledger = WeightLedger::from_signature(ext.signature());
    let mut periods = Vec::new();
    for v in source.signature().ids() {
        if source.signature().degree(v) != top_degree {
            continue;
        }
        let dv = reinterpret(source.generator_differential(v), h_source.signature());
        let integral = integrate_0_1(&homotopy.apply(&dv)?);
        let integrand = &phi_full.image(v).clone() + &integral;
        let weight = ledger.weight_or_zero(&integrand)?;
        periods.push(Period {
            generator: source.signature().generator(v).name.clone(),
            integrand,
            weight,
        });
    }

    Ok(PeriodsRun {
        source,
        extension: ext,
        phi,
        phi_full,
        homotopy,
        ledger,
        periods,
    })
}

/// True iff `a − b` is exact (both inputs must be closed).
pub fn cohomologous_check(algebra: &FreeCdga, a: &Element, b: &Element) -> Result<bool> {
    for (name, e) in [("first", a), ("second", b)] {
        if !algebra.differentiate(e).is_zero() {
            return Err(Error::NotClosed {
                generator: name.to_string(),
            });
        }
    }
    algebra.is_exact(&(a - b))
}

/// Outcome of the greedy top-weight reduction.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub element: Element,
    pub weight: i64,
    /// The exact corrections subtracted, one per successful round.
    pub corrections: Vec<Element>,
}

/// Iteratively cancels all terms of maximal ledger weight by subtracting
/// exact forms `d(β)` with β drawn from the monomials of one degree lower
/// and strictly smaller weight. Greedy: each round must clear the entire
/// top-weight layer or the search stops. The result is cohomologous to the
/// input and of no greater weight.
pub fn reduce_weight(
    algebra: &FreeCdga,
    ledger: &WeightLedger,
    integrand: &Element,
) -> Result<Reduction> {
    let mut current = integrand.clone();
    let mut corrections = Vec::new();
    loop {
        if current.is_zero() {
            return Ok(Reduction {
                element: current,
                weight: 0,
                corrections,
            });
        }
        let degree = current.degree().ok_or(Error::AlgebraMismatch)?;
        let weight = ledger.weight(&current)?.expect("nonzero element");
        // Top-weight layer to cancel.
        let mut top = Element::zero(algebra.signature());
        for (m, c) in current.terms() {
            let mono = Element::from_monomial(algebra.signature(), m.clone(), c.clone());
            if ledger.weight(&mono)? == Some(weight) {
                top = &top + &mono;
            }
        }
        // Candidate monomials β of degree-1 lower and weight ≤ weight-1.
        let pool: Vec<Monomial> = algebra
            .graded_basis(degree - 1)?
            .iter()
            .filter(|m| {
                let e = Element::from_monomial(algebra.signature(), (*m).clone(), Rat::one());
                matches!(ledger.weight(&e), Ok(Some(w)) if w < weight)
                    || matches!(ledger.weight(&e), Ok(None))
            })
            .cloned()
            .collect();
        if pool.is_empty() {
            return Ok(Reduction {
                element: current,
                weight,
                corrections,
            });
        }
        // Rows: coordinates on the top-weight monomials of this degree.
        let basis = algebra.graded_basis(degree)?;
        let top_rows: Vec<usize> = basis
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let e = Element::from_monomial(algebra.signature(), (*m).clone(), Rat::one());
                matches!(ledger.weight(&e), Ok(Some(w)) if w == weight)
            })
            .map(|(i, _)| i)
            .collect();
        let mut cols = Vec::with_capacity(pool.len());
        for beta in &pool {
            let image = algebra.differentiate(&Element::from_monomial(
                algebra.signature(),
                beta.clone(),
                Rat::one(),
            ));
            let coords = algebra.coordinates(&image, degree)?;
            cols.push(top_rows.iter().map(|&i| coords[i].clone()).collect::<Vec<_>>());
        }
        let mat = Matrix::from_columns(top_rows.len(), &cols);
        let rhs_full = algebra.coordinates(&top, degree)?;
        let rhs: Vec<Rat> = top_rows.iter().map(|&i| rhs_full[i].clone()).collect();
        let Some(solution) = mat.solve(&rhs) else {
            return Ok(Reduction {
                element: current,
                weight,
                corrections,
            });
        };
        let mut beta = Element::zero(algebra.signature());
        for (m, c) in pool.iter().zip(&solution) {
            if !c.is_zero() {
                beta = &beta + &Element::from_monomial(algebra.signature(), m.clone(), c.clone());
            }
        }
        let correction = algebra.differentiate(&beta);
        current = &current - &correction;
        corrections.push(correction);
        // The full top layer was cancelled, so the weight strictly drops.
        debug_assert!(matches!(ledger.weight(&current), Ok(w) if w < Some(weight)));
    }
}

/// Result of the positive-weight nullhomotopy construction.
#[derive(Clone, Debug)]
pub struct PositiveWeightRun {
    pub extension: FreeCdga,
    pub phi: Morphism,
    pub homotopy: Homotopy,
    pub ledger: WeightLedger,
    /// Antiderivative symbol (or zero) per source generator.
    pub antiderivatives: Vec<Element>,
}

/// Builds the one-shot nullhomotopy
///   Φ(v) = φ(v) ⊗ t^i + c(v) ⊗ i t^{i-1} dt,   i = weight(v),
/// where d c(v) = (−1)^{k+1} φ(v) + c(dv) and c(dv) is read off the already
/// built lower stages. Endpoints are the zero morphism (t = 0) and φ (t = 1).
pub fn positive_weight_nullhomotopy(
    grading: &WeightGrading,
    phi: &Morphism,
) -> Result<PositiveWeightRun> {
    let source = phi.source().clone();
    let grading = WeightGrading::new(&source, grading.weights().to_vec())
        .map_err(|_| Error::InvalidGrading("grading does not match the source".into()))?;
    let mut ext = phi.target().clone();
    let mut phi_images: Vec<Element> = phi.images().to_vec();
    let mut h_images: Vec<CylinderElement> = Vec::new();
    let mut c_images: Vec<Element> = Vec::new();

    for v in source.dependency_order()? {
        while h_images.len() <= v.0 as usize {
            h_images.push(CylinderElement::zero(ext.signature()));
            c_images.push(Element::zero(ext.signature()));
        }
        let k = source.signature().degree(v);
        let i = grading.weight(v);
        let name = source.signature().generator(v).name.clone();
        let dv = source.generator_differential(v);
        let dv_image = apply_partial_cyl(&ext, &h_images, dv)?;
        // Φ(dv) = φ(dv) ⊗ t^i + c(dv) ⊗ i t^{i-1} dt: read off c(dv).
        let c_dv = if dv.is_zero() {
            Element::zero(ext.signature())
        } else {
            let coeff = dv_image.dt_coefficient(i as u32 - 1);
            for (&p, a) in dv_image.dt_terms() {
                if p != i as u32 - 1 && !a.is_zero() {
                    return Err(Error::InvalidGrading(format!(
                        "dt-part of Φ(d {name}) is not concentrated at t^{}",
                        i - 1
                    )));
                }
            }
            coeff.scale(&(Rat::one() / rat(i as i64)))
        };
        let phi_v = phi_images[v.0 as usize].promote(ext.signature())?;
        let mut target_dc = c_dv;
        let signed_phi = if k.is_multiple_of(2) { -&phi_v } else { phi_v.clone() };
        target_dc = &target_dc + &signed_phi;
        let c_elem = if target_dc.is_zero() {
            Element::zero(ext.signature())
        } else {
            if !ext.differentiate(&target_dc).is_zero() {
                return Err(Error::UnresolvablePrimitive { generator: name });
            }
            let ledger = WeightLedger::from_signature(ext.signature());
            let weight = ledger.weight_or_zero(&target_dc)?;
            let c_name = format!("c(w^{name})");
            ext = adjoin_antiderivative(&ext, &c_name, &target_dc, weight)?;
            for img in phi_images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            for img in h_images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            for img in c_images.iter_mut() {
                *img = img.promote(ext.signature())?;
            }
            ext.element(&c_name)?
        };
        let phi_v = phi_images[v.0 as usize].promote(ext.signature())?;
        let mut image = CylinderElement::t_term(&phi_v, i as u32);
        image = &image + &CylinderElement::dt_term(&c_elem.scale(&rat(i as i64)), i as u32 - 1);
        h_images[v.0 as usize] = image;
        c_images[v.0 as usize] = c_elem;
    }

    for img in phi_images.iter_mut() {
        *img = img.promote(ext.signature())?;
    }
    for img in h_images.iter_mut() {
        *img = img.promote(ext.signature())?;
    }
    for img in c_images.iter_mut() {
        *img = img.promote(ext.signature())?;
    }
    let phi = Morphism::new(source.clone(), ext.clone(), phi_images)?;
    let homotopy = Homotopy::new(source, ext.clone(), h_images)?;
    let ledger = WeightLedger::from_signature(ext.signature());
    Ok(PositiveWeightRun {
        extension: ext,
        phi,
        homotopy,
        ledger,
        antiderivatives: c_images,
    })
}

/// Max plain coefficient weight of each homotopy image (no dt exponent),
/// for checking quadratic-in-degree coefficient bounds.
pub fn coefficient_weights(h: &Homotopy, ledger: &WeightLedger) -> Result<Vec<(String, u32, i64)>> {
    let mut out = Vec::new();
    for id in h.source().signature().ids() {
        let mut best = 0i64;
        let u = h.image(id);
        for (_, a) in u.t_terms() {
            if let Some(w) = ledger.weight(a)? {
                best = best.max(w);
            }
        }
        for (_, a) in u.dt_terms() {
            if let Some(w) = ledger.weight(a)? {
                best = best.max(w);
            }
        }
        out.push((
            h.source().signature().generator(id).name.clone(),
            h.source().signature().degree(id),
            best,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ratio;
    use crate::models::catalog;
    use crate::morphism::validate_homotopy;
    use crate::weights::detect_positive_weights;

    fn s2_run() -> PeriodsRun {
        homotopy_periods(&catalog("S2").unwrap(), 2, 3).unwrap()
    }

    #[test]
    fn hopf_integrand_exact_form() {
        let run = s2_run();
        assert_eq!(run.periods.len(), 1);
        let p = &run.periods[0];
        assert_eq!(p.generator, "y");
        let ext = &run.extension;
        let expected = -&(&ext.element("w^x").unwrap() * &ext.element("c(w^x)").unwrap());
        assert_eq!(p.integrand, expected);
        assert_eq!(p.weight, 4);
        assert!(cohomologous_check(ext, &p.integrand, &expected).unwrap());
    }

    #[test]
    fn hopf_first_stage_matches_classic_formula() {
        // Φ(x) = w^x ⊗ (1−t) + c(w^x) ⊗ dt with d c(w^x) = w^x.
        let run = s2_run();
        let ext = &run.extension;
        let x = run.homotopy.source().by_name("x").unwrap();
        let w = ext.element("w^x").unwrap();
        let c = ext.element("c(w^x)").unwrap();
        let expected = &(&CylinderElement::constant(&w) - &CylinderElement::t_term(&w, 1))
            + &CylinderElement::dt_term(&c, 0);
        assert_eq!(run.homotopy.image(x), &expected);
        assert_eq!(
            ext.generator_differential(ext.by_name("c(w^x)").unwrap()),
            &w
        );
    }

    #[test]
    fn pipeline_homotopy_validates_with_zero_end() {
        for (name, dim, top) in [("S2", 2, 3), ("S3vS3", 6, 7), ("NF", 8, 10)] {
            let run = homotopy_periods(&catalog(name).unwrap(), dim, top).unwrap();
            let zero = Morphism::zero(run.homotopy.source().clone(), run.extension.clone());
            assert!(validate_homotopy(&run.homotopy, &run.phi, &zero).unwrap(), "{name}");
        }
    }

    #[test]
    fn wedge_stage_matches_displayed_homotopy() {
        // Φ(y) = w^y ⊗ (1−t) + ½(w^x1 c(w^x2) − c(w^x1) w^x2) ⊗ (t−t²)
        //        − c(w^y) ⊗ dt.
        let run = homotopy_periods(&catalog("S3vS3").unwrap(), 6, 7).unwrap();
        let ext = &run.extension;
        let y = run.homotopy.source().by_name("y").unwrap();
        let wy = ext.element("w^y").unwrap();
        let wx1 = ext.element("w^x1").unwrap();
        let wx2 = ext.element("w^x2").unwrap();
        let cx1 = ext.element("c(w^x1)").unwrap();
        let cx2 = ext.element("c(w^x2)").unwrap();
        let cy = ext.element("c(w^y)").unwrap();
        let v = (&(&wx1 * &cx2) - &(&cx1 * &wx2)).scale(&ratio(1, 2));
        let expected = &(&(&CylinderElement::constant(&wy) - &CylinderElement::t_term(&wy, 1))
            + &(&CylinderElement::t_term(&v, 1) - &CylinderElement::t_term(&v, 2)))
            - &CylinderElement::dt_term(&cy, 0);
        assert_eq!(run.homotopy.image(y), &expected);
        // d c(w^y) = w^y + ½(w^x1 ∧ c(w^x2) − c(w^x1) ∧ w^x2).
        let dcy = ext.generator_differential(ext.by_name("c(w^y)").unwrap());
        assert_eq!(dcy, &(&wy + &v));
    }

    /// The displayed degree-7 obstruction for the wedge example:
    /// −c(w^xi) ∧ (½ w^y + 1/12 (w^x1 c(w^x2) − c(w^x1) w^x2)) + ½ w^xi ∧ c(w^y).
    fn wedge_expected(run: &PeriodsRun, i: usize) -> Element {
        let ext = &run.extension;
        let wy = ext.element("w^y").unwrap();
        let wx1 = ext.element("w^x1").unwrap();
        let wx2 = ext.element("w^x2").unwrap();
        let cx1 = ext.element("c(w^x1)").unwrap();
        let cx2 = ext.element("c(w^x2)").unwrap();
        let cy = ext.element("c(w^y)").unwrap();
        let wxi = if i == 1 { &wx1 } else { &wx2 };
        let cxi = if i == 1 { &cx1 } else { &cx2 };
        let inner = &wy.scale(&ratio(1, 2))
            + &(&(&wx1 * &cx2) - &(&cx1 * &wx2)).scale(&ratio(1, 12));
        &-&(cxi * &inner) + &(wxi * &cy).scale(&ratio(1, 2))
    }

    #[test]
    fn wedge_periods_match_displayed_formula() {
        let run = homotopy_periods(&catalog("S3vS3").unwrap(), 6, 7).unwrap();
        assert_eq!(run.periods.len(), 2);
        for (idx, p) in run.periods.iter().enumerate() {
            let expected = wedge_expected(&run, idx + 1);
            assert_eq!(p.integrand, expected, "z{}", idx + 1);
        }
    }

    #[test]
    fn nf_degree_ten_integrand_has_the_displayed_third_coefficients() {
        // α(T) = −⅓ (c(w^x) ∧ w^y w^z + c(w^y) ∧ w^z w^x + c(w^z) ∧ w^x w^y).
        let run = homotopy_periods(&catalog("NF").unwrap(), 8, 10).unwrap();
        let ext = &run.extension;
        let wx = ext.element("w^x").unwrap();
        let wy = ext.element("w^y").unwrap();
        let wz = ext.element("w^z").unwrap();
        let cx = ext.element("c(w^x)").unwrap();
        let cy = ext.element("c(w^y)").unwrap();
        let cz = ext.element("c(w^z)").unwrap();
        let third = ratio(-1, 3);
        let expected = &(&(&(&cx * &(&wy * &wz)) + &(&cy * &(&wz * &wx)))
            + &(&cz * &(&wx * &wy)))
            .scale(&third);
        assert_eq!(&run.periods[0].integrand, expected);
    }

    #[test]
    fn nf_reduction_finds_the_weight_eleven_form() {
        let run = homotopy_periods(&catalog("NF").unwrap(), 8, 10).unwrap();
        let p = &run.periods[0];
        assert_eq!(p.generator, "T");
        assert_eq!(p.weight, 12);
        let reduced = reduce_weight(&run.extension, &run.ledger, &p.integrand).unwrap();
        assert_eq!(reduced.weight, 11);
        assert!(cohomologous_check(&run.extension, &p.integrand, &reduced.element).unwrap());
        // The subtracted correction is a multiple of d(c(w^z) ∧ w^z).
        let ext = &run.extension;
        let cz = ext.element("c(w^z)").unwrap();
        let wz = ext.element("w^z").unwrap();
        let d_czwz = ext.differentiate(&(&cz * &wz));
        assert_eq!(reduced.corrections.len(), 1);
        let correction = &reduced.corrections[0];
        // correction = q · d(c(w^z) w^z) for a single rational q.
        let (m0, c0) = d_czwz.terms().next().unwrap();
        let q = &correction.coefficient(m0) / c0;
        assert_eq!(correction, &d_czwz.scale(&q));
        assert!(!q.is_zero());
    }

    #[test]
    fn hopf_integrand_is_already_minimal() {
        let run = s2_run();
        let p = &run.periods[0];
        let reduced = reduce_weight(&run.extension, &run.ledger, &p.integrand).unwrap();
        assert_eq!(reduced.weight, 4);
        assert_eq!(reduced.element, p.integrand);
        assert!(reduced.corrections.is_empty());
    }

    #[test]
    fn reduce_weight_zero_convention() {
        let run = s2_run();
        let zero = Element::zero(run.extension.signature());
        let reduced = reduce_weight(&run.extension, &run.ledger, &zero).unwrap();
        assert_eq!(reduced.weight, 0);
        assert!(reduced.element.is_zero());
    }

    #[test]
    fn cohomologous_check_examples() {
        let run = s2_run();
        let ext = &run.extension;
        let w = ext.element("w^x").unwrap();
        let c = ext.element("c(w^x)").unwrap();
        let integrand = -&(&w * &c);
        // a vs a + d(anything closed-degree-appropriate)
        let shifted = &integrand + &ext.differentiate(&(&c * &c));
        assert!(cohomologous_check(ext, &integrand, &shifted).unwrap());
        // w^x ∧ c(w^x) is not exact before adjoining a primitive for it.
        let zero = Element::zero(ext.signature());
        assert!(!cohomologous_check(ext, &(&w * &c), &zero).unwrap());
        // Non-closed input rejected.
        assert!(matches!(
            cohomologous_check(ext, &c, &zero),
            Err(Error::NotClosed { .. })
        ));
    }

    #[test]
    fn unresolvable_primitive_without_truncation() {
        // Without the top-degree truncation the degree-10 obstruction of the
        // four-generator model is not closed and the pipeline reports it.
        let nf = catalog("NF").unwrap();
        let err = pipeline(&nf, 8, 12, false, &BTreeMap::new());
        match err {
            Err(Error::UnresolvablePrimitive { .. }) => {}
            Err(Error::DiagramMismatch(_)) => {}
            other => panic!("expected a pipeline failure, got {other:?}"),
        }
    }

    #[test]
    fn positive_weight_nullhomotopy_sphere() {
        // Φ(x) = ω ⊗ t² + c ⊗ 2t dt with d c = −ω, for grading (2, 4).
        let m = catalog("S2").unwrap();
        let grading = WeightGrading::new(&m, vec![2, 4]).unwrap();
        let (_, phi, _) = pullback_setup(&m, 2, 3).unwrap();
        let run = positive_weight_nullhomotopy(&grading, &phi).unwrap();
        let ext = &run.extension;
        let x = run.homotopy.source().by_name("x").unwrap();
        let w = ext.element("w^x").unwrap();
        let c = ext.element("c(w^x)").unwrap();
        let expected = &CylinderElement::t_term(&w, 2)
            + &CylinderElement::dt_term(&c.scale(&rat(2)), 1);
        assert_eq!(run.homotopy.image(x), &expected);
        assert_eq!(
            ext.generator_differential(ext.by_name("c(w^x)").unwrap()),
            &-&w
        );
        // Endpoints: zero at t = 0, φ at t = 1.
        let zero = Morphism::zero(run.phi.source().clone(), ext.clone());
        assert!(validate_homotopy(&run.homotopy, &zero, &run.phi).unwrap());
    }

    #[test]
    fn positive_weight_nullhomotopy_zero_map() {
        let m = catalog("S2").unwrap();
        let grading = WeightGrading::new(&m, vec![1, 2]).unwrap();
        let target = FreeCdga::new(
            Signature::with_top_degree(Vec::new(), Some(3)).unwrap(),
            Vec::new(),
        )
        .unwrap();
        let phi = Morphism::zero(m, target);
        let run = positive_weight_nullhomotopy(&grading, &phi).unwrap();
        assert!(run.homotopy.images().iter().all(|u| u.is_zero()));
    }

    #[test]
    fn weighted_pullback_scales_integrand_weight() {
        // With pullback weights taken from a grading automorphism, the
        // integrand weight is the sum of the automorphism weights: for the
        // sphere grading (2, 4), the terminal integrand has weight 2+2 = 4;
        // for the primitive grading (1, 2) it has weight 1+1 = 2.
        let m = catalog("S2").unwrap();
        for (wx, expected) in [(2i64, 4i64), (1, 2)] {
            let mut overrides = BTreeMap::new();
            overrides.insert("x".to_string(), wx);
            let run = homotopy_periods_weighted(&m, 2, 3, &overrides).unwrap();
            assert_eq!(run.periods[0].weight, expected);
        }
        let detected = detect_positive_weights(&m).unwrap();
        assert_eq!(detected.weights(), &[1, 2]);
    }
}
