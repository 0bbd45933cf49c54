//! End-to-end acceptance suite. Each test is one numbered criterion and
//! prints as its own pass/fail line; timings are asserted where the
//! criterion sets a budget.

use std::collections::BTreeSet;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use rand::rngs::SmallRng;
use rand::{Rng, SeedableRng};

use sullivan_cochain as cochain;
use sullivan_core as core;
use sullivan_core::{CylinderElement, Element, FreeCdga, Homotopy, Morphism, Rat};

fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let owned: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    sullivan_cli::run(&owned)
}

/// Criterion 1: the terminal obstruction of the sphere pullback is
/// −ω ∧ c(ω) with ledger weight exactly 4, in under a second.
#[test]
fn criterion_01_hopf_period() {
    let start = Instant::now();
    let run = core::homotopy_periods(&core::catalog("S2").unwrap(), 2, 3).unwrap();
    assert_eq!(run.periods.len(), 1);
    let period = &run.periods[0];
    let ext = &run.extension;
    let omega = ext.element("w^x").unwrap();
    let c_omega = ext.element("c(w^x)").unwrap();
    let expected = -&(&omega * &c_omega);
    assert!(core::cohomologous_check(ext, &period.integrand, &expected).unwrap());
    assert_eq!(period.integrand, expected);
    assert_eq!(period.weight, 4);

    let (output, code) = run_cli(&["periods", "--model", "S2", "--degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(output, "y: integrand -1 * w^x ^ c(w^x), weight 4\n");
    assert!(start.elapsed().as_secs_f64() < 1.0, "took {:?}", start.elapsed());
}

/// The displayed degree-7 obstruction for the two wedge generators:
/// −c(w^xi) ∧ (½ w^y + 1/12 (w^x1 c(w^x2) − c(w^x1) w^x2)) + ½ w^xi ∧ c(w^y).
fn wedge_formula(ext: &FreeCdga, i: usize) -> Element {
    let wy = ext.element("w^y").unwrap();
    let wx1 = ext.element("w^x1").unwrap();
    let wx2 = ext.element("w^x2").unwrap();
    let cx1 = ext.element("c(w^x1)").unwrap();
    let cx2 = ext.element("c(w^x2)").unwrap();
    let cy = ext.element("c(w^y)").unwrap();
    let (wxi, cxi) = if i == 1 { (&wx1, &cx1) } else { (&wx2, &cx2) };
    let inner =
        &wy.scale(&ratio(1, 2)) + &(&(&wx1 * &cx2) - &(&cx1 * &wx2)).scale(&ratio(1, 12));
    &-&(cxi * &inner) + &(wxi * &cy).scale(&ratio(1, 2))
}

/// Criterion 2: degree-7 integrands of the wedge-of-spheres model match the
/// displayed formula with coefficients ½ and 1/12, exactly, after reduction.
#[test]
fn criterion_02_wedge_periods() {
    let start = Instant::now();
    let run = core::homotopy_periods(&core::catalog("S3vS3").unwrap(), 6, 7).unwrap();
    assert_eq!(run.periods.len(), 2);
    for (idx, period) in run.periods.iter().enumerate() {
        let expected = wedge_formula(&run.extension, idx + 1);
        assert!(core::cohomologous_check(&run.extension, &period.integrand, &expected).unwrap());
        let reduced =
            core::reduce_weight(&run.extension, &run.ledger, &period.integrand).unwrap();
        assert_eq!(reduced.element, expected, "z{}", idx + 1);
    }
    assert!(start.elapsed().as_secs_f64() < 10.0, "took {:?}", start.elapsed());
}

/// Criterion 3: the raw degree-10 integrand has weight 12 and reduces to 11
/// by subtracting a multiple of d(c(w^z) ∧ w^z).
#[test]
fn criterion_03_nf_reduction() {
    let run = core::homotopy_periods(&core::catalog("NF").unwrap(), 8, 10).unwrap();
    let period = &run.periods[0];
    assert_eq!(period.weight, 12);
    let reduced = core::reduce_weight(&run.extension, &run.ledger, &period.integrand).unwrap();
    assert_eq!(reduced.weight, 11);
    assert!(core::cohomologous_check(&run.extension, &period.integrand, &reduced.element).unwrap());
    let ext = &run.extension;
    let czwz = &ext.element("c(w^z)").unwrap() * &ext.element("w^z").unwrap();
    let d_czwz = ext.differentiate(&czwz);
    assert_eq!(reduced.corrections.len(), 1);
    let correction = &reduced.corrections[0];
    let (m0, c0) = d_czwz.terms().next().unwrap();
    let q = &correction.coefficient(m0) / c0;
    assert!(!q.is_zero());
    assert_eq!(correction, &d_czwz.scale(&q));
}

/// Criterion 4: the norm blow-up homotopy validates for ε ∈ {1, 1/10,
/// 1/1000} and the a-image integrates to (2ε)⁻¹ x exactly.
#[test]
fn criterion_04_blowup_homotopy() {
    let source = core::catalog("S4").unwrap();
    let target = core::catalog("RemarkF_target").unwrap();
    let x = target.element("x").unwrap();
    let y = target.element("y").unwrap();
    let z = target.element("z").unwrap();
    for eps in [ratio(1, 1), ratio(1, 10), ratio(1, 1000)] {
        let eps2 = &eps * &eps;
        let f = Morphism::new(
            source.clone(),
            target.clone(),
            vec![y.scale(&eps), z.scale(&eps2)],
        )
        .unwrap();
        let g = Morphism::new(
            source.clone(),
            target.clone(),
            vec![y.scale(&eps), &z.scale(&eps2) + &(&x * &y)],
        )
        .unwrap();
        let inv = Rat::one() / (&eps + &eps);
        let h = Homotopy::new_unchecked(
            source.clone(),
            target.clone(),
            vec![
                &CylinderElement::constant(&y.scale(&eps))
                    - &CylinderElement::dt_term(&x.scale(&inv), 0),
                &CylinderElement::constant(&z.scale(&eps2))
                    + &CylinderElement::t_term(&(&x * &y), 1),
            ],
        )
        .unwrap();
        assert!(core::validate_homotopy(&h, &f, &g).unwrap(), "eps = {eps}");

        // ∫₀¹ H(a) = (2ε)⁻¹ x: the exact value blowing up as ε → 0.
        let a = source.by_name("a").unwrap();
        let integral = &h.integral_images()[a.0 as usize];
        assert_eq!(integral, &x.scale(&inv));
        let coefficient = integral.terms().next().unwrap().1.clone();
        assert_eq!(coefficient.abs(), inv);
    }
}

fn random_cylinder(a: &FreeCdga, rng: &mut SmallRng) -> CylinderElement {
    let sig = a.signature();
    let mut out = CylinderElement::zero(sig);
    for _ in 0..rng.gen_range(1..=5) {
        let degree = rng.gen_range(0u32..=7);
        let basis = a.graded_basis(degree).unwrap();
        if basis.is_empty() {
            continue;
        }
        let m = basis[rng.gen_range(0..basis.len())].clone();
        let c = ratio(rng.gen_range(-5i64..=5), rng.gen_range(1i64..=4));
        let elem = Element::from_monomial(sig, m, c);
        let power = rng.gen_range(0u32..=4);
        if rng.gen_bool(0.5) {
            out = &out + &CylinderElement::t_term(&elem, power);
        } else {
            out = &out + &CylinderElement::dt_term(&elem, power);
        }
    }
    out
}

/// Criterion 5: the two fiberwise-integration identities hold exactly on at
/// least 1000 randomized cylinder elements.
#[test]
fn criterion_05_integration_identities() {
    let mut rng = SmallRng::seed_from_u64(505);
    let mut checked = 0usize;
    for name in ["S2", "S3vS3", "NF"] {
        let a = core::catalog(name).unwrap();
        for _ in 0..334 {
            let u = random_cylinder(&a, &mut rng);
            let lhs = &core::cyl_differentiate(&a, &core::integrate_0_t(&u))
                + &core::integrate_0_t(&core::cyl_differentiate(&a, &u));
            let rhs = &u - &CylinderElement::constant(&u.at_zero());
            assert_eq!(lhs, rhs, "interval identity failed on {name}");
            let lhs = &a.differentiate(&core::integrate_0_1(&u))
                + &core::integrate_0_1(&core::cyl_differentiate(&a, &u));
            let rhs = &u.at_one() - &u.at_zero();
            assert_eq!(lhs, rhs, "endpoint identity failed on {name}");
            checked += 1;
        }
    }
    assert!(checked >= 1000, "only {checked} cases");
}

/// Valid reparametrization t ↦ t^k of a homotopy: same endpoints, still a
/// chain map.
fn reparametrize(h: &Homotopy, k: u32) -> Homotopy {
    let sig = h.target().signature();
    let images = h
        .images()
        .iter()
        .map(|u| {
            let mut out = CylinderElement::zero(sig);
            for (&i, a) in u.t_terms() {
                out = &out + &CylinderElement::t_term(a, i * k);
            }
            for (&i, a) in u.dt_terms() {
                // a t^i dt ↦ a t^{ik} · k t^{k-1} dt
                out = &out
                    + &CylinderElement::dt_term(&a.scale(&rat(i64::from(k))), i * k + k - 1);
            }
            out
        })
        .collect();
    Homotopy::new(h.source().clone(), h.target().clone(), images).unwrap()
}

/// Criterion 6: concatenation is exactly additive on the fiberwise
/// integrals and preserves endpoints, across at least 100 randomized
/// compatible pairs.
#[test]
fn criterion_06_concatenation_additivity() {
    let mut rng = SmallRng::seed_from_u64(606);
    let mut pairs = 0usize;
    let runs: Vec<core::PeriodsRun> = [("S2", 2u32, 3u32), ("S4", 4, 7), ("S3vS3", 6, 7)]
        .iter()
        .map(|(name, dim, top)| {
            core::homotopy_periods(&core::catalog(name).unwrap(), *dim, *top).unwrap()
        })
        .collect();
    while pairs < 102 {
        let run = &runs[rng.gen_range(0..runs.len())];
        let phi = reparametrize(&run.homotopy, rng.gen_range(1..=3));
        let psi = if rng.gen_bool(0.2) {
            Homotopy::constant(&phi.endpoint_end())
        } else {
            reparametrize(&run.homotopy, rng.gen_range(1..=3)).reverse()
        };
        let joined = core::concatenate(&phi, &psi).unwrap();
        assert_eq!(joined.endpoint_start(), phi.endpoint_start());
        assert_eq!(joined.endpoint_end(), psi.endpoint_end());
        let ints = joined.integral_images();
        for ((j, a), b) in ints
            .iter()
            .zip(phi.integral_images())
            .zip(psi.integral_images())
        {
            assert_eq!(j, &(&a + &b));
        }
        pairs += 1;
    }
    assert!(pairs >= 100);
}

/// Criterion 7: nullhomotopy coefficients on a degree-k generator never
/// exceed ledger weight 2k − 2 for the canned targets through degree 10.
#[test]
fn criterion_07_quadratic_weight_bound() {
    for (name, dim, top) in [
        ("S2", 2u32, 3u32),
        ("S3", 3, 3),
        ("S4", 4, 7),
        ("S3vS3", 6, 7),
        ("NF", 8, 10),
    ] {
        let run = core::full_nullhomotopy(&core::catalog(name).unwrap(), dim, top).unwrap();
        for (gen, degree, weight) in
            core::coefficient_weights(&run.homotopy, &run.ledger).unwrap()
        {
            let bound = 2 * i64::from(degree) - 2;
            assert!(
                weight <= bound,
                "{name}: coefficient weight {weight} on {gen} (degree {degree}) exceeds {bound}"
            );
        }
    }
}

/// Criterion 8: positive-weight nullhomotopies for the sphere and the
/// four-generator model validate, run from the zero morphism to the
/// pullback, and obey the c-weight bound deg(v) + level − 1.
#[test]
fn criterion_08_positive_weight_nullhomotopy() {
    for (name, dim, top) in [("S2", 2u32, 3u32), ("NF", 8, 10)] {
        let model = core::catalog(name).unwrap();
        let grading = core::detect_positive_weights(&model).unwrap();
        let (_, phi, _) = core::pullback_setup(&model, dim, top).unwrap();
        let run = core::positive_weight_nullhomotopy(&grading, &phi).unwrap();
        let zero = Morphism::zero(run.phi.source().clone(), run.extension.clone());
        assert!(
            core::validate_homotopy(&run.homotopy, &zero, &run.phi).unwrap(),
            "{name}"
        );
        let filtration = core::weight_filtration(&model, top);
        for id in model.signature().ids() {
            let c = &run.antiderivatives[id.0 as usize];
            if let Some(w) = run.ledger.weight(c).unwrap() {
                let degree = i64::from(model.signature().degree(id));
                let level = filtration.level(id).unwrap() as i64;
                assert!(
                    w < degree + level,
                    "{name}: c({}) weight {w} exceeds {}",
                    model.signature().generator(id).name,
                    degree + level - 1
                );
            }
        }
    }
}

/// Criterion 9: the minimal-model construction reproduces the canned sphere
/// models from non-minimal quasi-isomorphic presentations, with cohomology
/// agreement through degree 9.
#[test]
fn criterion_09_minimal_models() {
    // S² model tensored with a contractible pair du = w.
    let inflated_s2 = core::build_algebra(
        &[("x", 2), ("y", 3), ("u", 3), ("w", 4)],
        |sig| {
            let x = Element::generator(sig, sig.lookup("x").unwrap());
            let w = Element::generator(sig, sig.lookup("w").unwrap());
            vec![("y", &x * &x), ("u", w)]
        },
    )
    .unwrap();
    // Even-sphere model (n = 4) tensored with a contractible pair.
    let inflated_s4 = core::build_algebra(
        &[("a", 4), ("b", 7), ("u", 5), ("w", 6)],
        |sig| {
            let a = Element::generator(sig, sig.lookup("a").unwrap());
            let w = Element::generator(sig, sig.lookup("w").unwrap());
            vec![("b", &a * &a), ("u", w)]
        },
    )
    .unwrap();
    for (input, canned) in [(inflated_s2, "S2"), (inflated_s4, "S4")] {
        let (model, comparison) = core::minimal_model_of(&input, 9).unwrap();
        assert!(model.is_minimal());
        assert!(comparison.is_chain_map());
        let reference = core::catalog(canned).unwrap();
        assert!(
            core::isomorphic_renaming(&model, &reference).is_some(),
            "{canned} not reproduced"
        );
        for k in 0..=9u32 {
            assert_eq!(
                model.cohomology_dim(k).unwrap(),
                input.cohomology_dim(k).unwrap(),
                "{canned} degree {k}"
            );
        }
    }
}

/// Criterion 10: predicted distortion exponents 1/2, 1/4, 1/11.
#[test]
fn criterion_10_distortion_exponents() {
    let s2 = core::catalog("S2").unwrap();
    assert_eq!(
        core::predict_distortion_exponent(&s2, 2, &[rat(1)]).unwrap(),
        (1, 2)
    );
    assert_eq!(
        core::predict_distortion_exponent(&s2, 3, &[rat(1)]).unwrap(),
        (1, 4)
    );
    let nf = core::catalog("NF").unwrap();
    assert_eq!(
        core::predict_distortion_exponent(&nf, 10, &[rat(1)]).unwrap(),
        (1, 11)
    );
    let (output, code) = run_cli(&["distortion", "--model", "NF", "--degree", "10"]);
    assert_eq!(code, 0);
    assert_eq!(output, "exponent: 1/11\n");
}

/// Random simplicial pair within the enumeration cap: a subset of the faces
/// of a 5-vertex simplex, with a random subcomplex.
fn random_pair(rng: &mut SmallRng) -> cochain::SimplicialPair {
    loop {
        let vertices = rng.gen_range(4..=5usize);
        let mut maximal: Vec<Vec<usize>> = Vec::new();
        // Random triangles.
        for a in 0..vertices {
            for b in (a + 1)..vertices {
                for c in (b + 1)..vertices {
                    if rng.gen_bool(0.35) {
                        maximal.push(vec![a, b, c]);
                    }
                }
            }
        }
        // Random extra edges.
        for a in 0..vertices {
            for b in (a + 1)..vertices {
                if rng.gen_bool(0.3) {
                    maximal.push(vec![a, b]);
                }
            }
        }
        if maximal.is_empty() {
            continue;
        }
        let pair = cochain::SimplicialPair::new(&maximal, &[]).unwrap();
        // Random subcomplex: each simplex of X independently seeds A.
        let mut a_max: Vec<Vec<usize>> = Vec::new();
        for dim in 0..=pair.top_dimension() {
            for s in pair.simplices(dim) {
                if rng.gen_bool(0.15) {
                    a_max.push(s.clone());
                }
            }
        }
        let pair = cochain::SimplicialPair::new(&maximal, &a_max).unwrap();
        let ok = (0..=2usize).all(|d| pair.free_indices(d).len() <= 12);
        if ok {
            return pair;
        }
    }
}

/// Criterion 11: the primitive-side and filling-side isoperimetric
/// constants agree exactly on at least 20 randomized pairs, each within the
/// time budget.
#[test]
fn criterion_11_isoperimetric_duality() {
    let mut rng = SmallRng::seed_from_u64(1111);
    let mut checked = 0usize;
    let mut seen: BTreeSet<String> = BTreeSet::new();
    while checked < 21 {
        let pair = random_pair(&mut rng);
        let k = if rng.gen_bool(0.3) && pair.count(2) > 0 {
            2
        } else {
            1
        };
        let start = Instant::now();
        let report = cochain::duality_check(&pair, k).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed.as_secs_f64() < 30.0, "duality run took {elapsed:?}");
        assert!(
            report.equal,
            "C1 = {} != C2 = {} on pair {pair:?} (k = {k})",
            report.c1, report.c2
        );
        seen.insert(format!("{pair:?}:{k}"));
        checked += 1;
    }
    assert!(checked >= 20);
    assert!(seen.len() >= 15, "instances insufficiently distinct");
}

/// Criterion 12: on 100+ randomized prism-complex instances the rounding
/// remainder obeys the per-cell half-face-count bound, and instances with
/// an integral witness round to zero remainder.
#[test]
fn criterion_12_guth_rounding() {
    let pair = cochain::samples::prism_complex();
    let n = pair.top_dimension();
    let mut rng = SmallRng::seed_from_u64(1212);
    let mut runs = 0usize;
    for case in 0..102usize {
        // Random integer relative cocycle in the top dimension.
        let mut c = cochain::Cochain::zero(n);
        for &idx in &pair.free_indices(n) {
            c.set(idx, rat(rng.gen_range(-3i64..=3)));
        }
        // Random relative primitive: integral on a third of the cases.
        let integral_case = case % 3 == 0;
        let mut b0 = cochain::Cochain::zero(n - 1);
        for &idx in &pair.free_indices(n - 1) {
            if integral_case {
                b0.set(idx, rat(rng.gen_range(-2i64..=2)));
            } else {
                b0.set(
                    idx,
                    ratio(rng.gen_range(-8i64..=8), rng.gen_range(1i64..=4)),
                );
            }
        }
        let w = c.add(&cochain::relative_coboundary(&pair, &b0));
        let result = if integral_case {
            // The integral witness is the chosen primitive; rounding it is
            // the identity and the remainder vanishes.
            let r = cochain::guth_round_with_primitive(&pair, n, &c, &w, &b0).unwrap();
            assert!(r.remainder.is_zero(), "case {case}");
            r
        } else {
            cochain::guth_round(&pair, n, &c, &w).unwrap()
        };
        // Per-cell bound: |r(p)| ≤ (free faces of p)/2.
        assert!(result.within_bounds, "case {case}");
        for (cell, bound) in &result.bounds {
            assert!(result.remainder.get(*cell).abs() <= bound.clone());
        }
        runs += 1;
    }
    assert!(runs >= 100);
}

/// Criterion 13: the recurrence profile reports the crossing exp(κ²) at
/// 7.2 × 10^10 for κ = 5, and the bound over L·ρ(L) is non-increasing for
/// the self-consistent κ.
#[test]
fn criterion_13_recurrence_numerics() {
    let (output, code) = run_cli(&["bounds", "--kappa", "5"]);
    assert_eq!(code, 0);
    assert!(output.starts_with("crossing: 7.20e10\n"), "{output}");
    let crossing = core::crossing_point(5.0);
    assert!((crossing - 7.2e10).abs() / 7.2e10 < 0.01);

    let c: f64 = 2.0;
    let c_prime = 2.0;
    let kappa = (2.0 * (2.0 * c * c_prime).ln()).sqrt();
    let params = core::RecurrenceParams {
        c,
        c_prime,
        n: 2,
        kappa,
        l_max: 1e12,
        samples: 0,
    };
    let base = 2.0 * c * c_prime.powf(4.0 / 3.0);
    let crossing = core::crossing_point(kappa);
    let mut prev = f64::INFINITY;
    let mut l: f64 = 1e4;
    while l <= 1e12 {
        let rho = (kappa * l.ln().sqrt()).exp();
        let ratio = core::gamma_bound(&params, base, crossing, l) / (l * rho);
        assert!(ratio <= prev * (1.0 + 1e-12), "ratio increased at L = {l}");
        prev = ratio;
        l *= 10.0_f64.powf(0.2);
    }
}
