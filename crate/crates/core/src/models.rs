//! Hirsch extensions, a canned model catalog, minimal-model construction,
//! and renaming isomorphism between presentations.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{Element, FreeCdga, GenId, Generator, Monomial, Rat, Signature};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::morphism::Morphism;

/// An elementary extension: new generators of one degree, with closed
/// differential images prescribed in the base.
#[derive(Clone, Debug)]
pub struct HirschExtension {
    pub degree: u32,
    pub generators: Vec<(String, Element)>,
}

impl HirschExtension {
    pub fn new(degree: u32, generators: Vec<(String, Element)>) -> Self {
        HirschExtension { degree, generators }
    }
}

/// Adjoins the extension's generators to the base algebra. Every prescribed
/// image must be closed in the base.
pub fn hirsch_extend(base: &FreeCdga, ext: &HirschExtension) -> Result<FreeCdga> {
    for (name, image) in &ext.generators {
        if !base.differentiate(image).is_zero() {
            return Err(Error::NotClosed {
                generator: name.clone(),
            });
        }
        if !image.is_zero() {
            match image.degree() {
                Some(d) if d == ext.degree + 1 => {}
                found => {
                    return Err(Error::DegreeMismatch {
                        generator: name.clone(),
                        expected: ext.degree + 1,
                        found,
                    })
                }
            }
        }
    }
    let extra: Vec<Generator> = ext
        .generators
        .iter()
        .map(|(name, _)| Generator::new(name.clone(), ext.degree))
        .collect();
    let sig = base.signature().extend(extra)?;
    let mut diffs: Vec<(GenId, Element)> = Vec::new();
    for id in base.signature().ids() {
        diffs.push((id, base.generator_differential(id).promote(&sig)?));
    }
    let offset = base.signature().len() as u32;
    for (i, (_, image)) in ext.generators.iter().enumerate() {
        diffs.push((GenId(offset + i as u32), image.promote(&sig)?));
    }
    FreeCdga::new(sig, diffs)
}

/// Builds an algebra from (name, degree) pairs and differentials given as
/// closures over the finished signature.
pub fn build_algebra(
    gens: &[(&str, u32)],
    diffs: impl FnOnce(&Arc<Signature>) -> Vec<(&'static str, Element)>,
) -> Result<FreeCdga> {
    let sig = Signature::new(
        gens.iter()
            .map(|(n, d)| Generator::new(*n, *d))
            .collect(),
    )?;
    let pairs = diffs(&sig)
        .into_iter()
        .map(|(name, e)| {
            let id = sig
                .lookup(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            Ok((id, e))
        })
        .collect::<Result<Vec<_>>>()?;
    FreeCdga::new(sig, pairs)
}

fn gen_product(sig: &Arc<Signature>, names: &[&str]) -> Element {
    let mut out = Element::one(sig);
    for n in names {
        let id = sig.lookup(n).expect("catalog generator");
        out = &out * &Element::generator(sig, id);
    }
    out
}

/// Formal cell dimension of a canned model's underlying space; it decides
/// which generators pull back to zero in period computations.
pub fn model_dimension(name: &str) -> Option<u32> {
    if let Some(n) = sphere_index(name) {
        return Some(n);
    }
    match name {
        "S3vS3" => Some(6),
        "NF" | "NF_alt" => Some(8),
        "RemarkF_target" => Some(7),
        _ => None,
    }
}

fn sphere_index(name: &str) -> Option<u32> {
    let rest = name.strip_prefix('S')?;
    let n: u32 = rest.parse().ok()?;
    if n >= 2 {
        Some(n)
    } else {
        None
    }
}

/// The canned model catalog, addressable by name.
///
/// - `S<n>`: sphere models, `⟨a⟩` for odd n and `⟨a, b | db = a²⟩` for even n
/// - `S2`: `⟨x:2, y:3 | dy = x²⟩`
/// - `S3vS3`: `⟨x1, x2:3, y:5, z1, z2:7 | dy = x1x2, dzi = xi y⟩`
/// - `NF`: `⟨x:3, y:3, z:5, T:10 | dz = xy, dT = xyz⟩`
/// - `NF_alt`: the same algebra presented as `x1, x2, y, T`
/// - `RemarkF_target`: `⟨x:3, y:4, z:7 | dz = y²⟩`
pub fn catalog(name: &str) -> Result<FreeCdga> {
    match name {
        "S2" => build_algebra(&[("x", 2), ("y", 3)], |sig| {
            vec![("y", gen_product(sig, &["x", "x"]))]
        }),
        "S3vS3" => build_algebra(
            &[("x1", 3), ("x2", 3), ("y", 5), ("z1", 7), ("z2", 7)],
            |sig| {
                vec![
                    ("y", gen_product(sig, &["x1", "x2"])),
                    ("z1", gen_product(sig, &["x1", "y"])),
                    ("z2", gen_product(sig, &["x2", "y"])),
                ]
            },
        ),
        "NF" => build_algebra(&[("x", 3), ("y", 3), ("z", 5), ("T", 10)], |sig| {
            vec![
                ("z", gen_product(sig, &["x", "y"])),
                ("T", gen_product(sig, &["x", "y", "z"])),
            ]
        }),
        "NF_alt" => build_algebra(&[("x1", 3), ("x2", 3), ("y", 5), ("T", 10)], |sig| {
            vec![
                ("y", gen_product(sig, &["x1", "x2"])),
                ("T", gen_product(sig, &["x1", "x2", "y"])),
            ]
        }),
        "RemarkF_target" => build_algebra(&[("x", 3), ("y", 4), ("z", 7)], |sig| {
            vec![("z", gen_product(sig, &["y", "y"]))]
        }),
        other => match sphere_index(other) {
            Some(n) if n % 2 == 1 => build_algebra(&[("a", n)], |_| vec![]),
            Some(n) => build_algebra(&[("a", n), ("b", 2 * n - 1)], |sig| {
                vec![("b", gen_product(sig, &["a", "a"]))]
            }),
            None => Err(Error::UnknownModel(other.to_string())),
        },
    }
}

pub fn catalog_names() -> Vec<&'static str> {
    vec!["S2", "S3", "S4", "S3vS3", "NF", "NF_alt", "RemarkF_target"]
}

type ClassCoords = Box<dyn Fn(&Element) -> Option<Vec<Rat>>>;

/// Cohomology bookkeeping for one degree of the comparison map m: M → A.
struct ComparisonStage {
    /// Representatives of a basis of H^n(A).
    target_classes: Vec<Element>,
    /// Coordinate map: class of a cocycle in the chosen basis.
    class_coords: ClassCoords,
}

fn cohomology_basis(a: &FreeCdga, n: u32) -> Result<ComparisonStage> {
    let cocycles = a.cocycle_basis(n)?;
    let boundary_rank_cols: Vec<Vec<Rat>> = if n == 0 {
        Vec::new()
    } else {
        let below = a.graded_basis(n - 1)?;
        below
            .iter()
            .map(|m| {
                let e = Element::from_monomial(a.signature(), m.clone(), Rat::one());
                a.coordinates(&a.differentiate(&e), n)
            })
            .collect::<Result<Vec<_>>>()?
    };
    let dim_n = a.graded_basis(n)?.len();

    // Select cocycles extending the boundary space to a basis of cocycles:
    // sweep in order, keep those raising the rank.
    let mut chosen: Vec<Element> = Vec::new();
    let mut cols: Vec<Vec<Rat>> = boundary_rank_cols.clone();
    let mut rank = Matrix::from_columns(dim_n, &cols).rank();
    for z in &cocycles {
        let c = a.coordinates(z, n)?;
        cols.push(c);
        let new_rank = Matrix::from_columns(dim_n, &cols).rank();
        if new_rank > rank {
            rank = new_rank;
            chosen.push(z.clone());
        } else {
            cols.pop();
        }
    }

    let reps = chosen.clone();
    let algebra = a.clone();
    let boundary_cols = boundary_rank_cols;
    let class_coords = Box::new(move |w: &Element| -> Option<Vec<Rat>> {
        // Solve w = Σ c_i rep_i + d(something) for the c_i.
        let mut cols: Vec<Vec<Rat>> = Vec::new();
        for r in &reps {
            cols.push(algebra.coordinates(r, n).ok()?);
        }
        let k = cols.len();
        cols.extend(boundary_cols.iter().cloned());
        let dim = algebra.graded_basis(n).ok()?.len();
        let mat = Matrix::from_columns(dim, &cols);
        let rhs = algebra.coordinates(w, n).ok()?;
        let sol = mat.solve(&rhs)?;
        Some(sol[..k].to_vec())
    });
    Ok(ComparisonStage {
        target_classes: chosen,
        class_coords,
    })
}

/// Builds a minimal model of `a` through the given degree, together with the
/// comparison morphism. The construction alternates two repairs per degree:
/// new closed generators hitting unreached classes of H^n(A), then
/// generators whose differentials kill the kernel of H^{n+1}(M) → H^{n+1}(A).
pub fn minimal_model_of(a: &FreeCdga, up_to_degree: u32) -> Result<(FreeCdga, Morphism)> {
    if a.cohomology_dim(1)? != 0 {
        return Err(Error::NotSimplyConnected);
    }
    if up_to_degree + 1 > a.basis_cap() {
        return Err(Error::DegreeCapExceeded {
            degree: up_to_degree + 1,
            cap: a.basis_cap(),
        });
    }

    let mut model = FreeCdga::new(Signature::new(Vec::new())?, Vec::new())?;
    let mut images: Vec<Element> = Vec::new();

    for n in 2..=up_to_degree {
        // Surjectivity in degree n: classes of A not reached by the model.
        let stage = cohomology_basis(a, n)?;
        let morphism = Morphism::new_unchecked(model.clone(), a.clone(), images.clone())?;
        let mut hit_cols: Vec<Vec<Rat>> = Vec::new();
        for z in model.cocycle_basis(n)? {
            let w = morphism.apply(&z)?;
            if let Some(coords) = (stage.class_coords)(&w) {
                hit_cols.push(coords);
            }
        }
        let k = stage.target_classes.len();
        let mut missing: Vec<Element> = Vec::new();
        {
            let mut cols = hit_cols.clone();
            let mut rank = Matrix::from_columns(k, &cols).rank();
            for (i, rep) in stage.target_classes.iter().enumerate() {
                let mut unit = vec![Rat::zero(); k];
                unit[i] = Rat::one();
                cols.push(unit);
                let new_rank = Matrix::from_columns(k, &cols).rank();
                if new_rank > rank {
                    rank = new_rank;
                    missing.push(rep.clone());
                } else {
                    cols.pop();
                }
            }
        }
        if !missing.is_empty() {
            let names: Vec<(String, Element)> = missing
                .iter()
                .enumerate()
                .map(|(i, _)| {
                    (
                        format!("v{n}_{}", model_count(&model, n) + i),
                        Element::zero(model.signature()),
                    )
                })
                .collect();
            let ext = HirschExtension::new(n, names);
            model = hirsch_extend(&model, &ext)?;
            for rep in missing {
                images.push(rep);
            }
        }

        // Injectivity in degree n+1: kernel classes of H^{n+1}(M) → H^{n+1}(A)
        // get a degree-n generator whose differential is the kernel cocycle.
        let morphism = Morphism::new_unchecked(model.clone(), a.clone(), images.clone())?;
        let stage_up = cohomology_basis(&model, n + 1)?;
        let mut kernel_reps: Vec<Element> = Vec::new();
        if !stage_up.target_classes.is_empty() {
            let a_stage = cohomology_basis(a, n + 1)?;
            let cols = stage_up
                .target_classes
                .iter()
                .map(|z| {
                    let w = morphism.apply(z)?;
                    (a_stage.class_coords)(&w).ok_or(Error::AlgebraMismatch)
                })
                .collect::<Result<Vec<_>>>()?;
            let map = Matrix::from_columns(a_stage.target_classes.len(), &cols);
            for v in map.null_space() {
                let mut rep = Element::zero(model.signature());
                for (z, c) in stage_up.target_classes.iter().zip(&v) {
                    rep = &rep + &z.scale(c);
                }
                kernel_reps.push(rep);
            }
        }
        if !kernel_reps.is_empty() {
            let names: Vec<(String, Element)> = kernel_reps
                .iter()
                .enumerate()
                .map(|(i, z)| (format!("v{n}_{}", model_count(&model, n) + i), z.clone()))
                .collect();
            let ext = HirschExtension::new(n, names);
            model = hirsch_extend(&model, &ext)?;
            for z in kernel_reps {
                let w = morphism.apply(&z)?;
                let primitive = a
                    .solve_d(&w)?
                    .ok_or_else(|| Error::DiagramMismatch("kernel class not exact".into()))?;
                images.push(primitive);
            }
        }
    }

    let morphism = Morphism::new(model.clone(), a.clone(), images)?;
    Ok((model, morphism))
}

fn model_count(model: &FreeCdga, degree: u32) -> usize {
    model
        .signature()
        .ids()
        .filter(|&id| model.signature().degree(id) == degree)
        .count()
}

/// Searches for a degree-preserving generator bijection σ with
/// σ(d_A v) = d_B(σ v). Returns the generator pairing when found.
pub fn isomorphic_renaming(a: &FreeCdga, b: &FreeCdga) -> Option<Vec<(String, String)>> {
    let sig_a = a.signature();
    let sig_b = b.signature();
    if sig_a.len() != sig_b.len() {
        return None;
    }
    let mut by_degree: BTreeMap<u32, (Vec<GenId>, Vec<GenId>)> = BTreeMap::new();
    for id in sig_a.ids() {
        by_degree
            .entry(sig_a.degree(id))
            .or_default()
            .0
            .push(id);
    }
    for id in sig_b.ids() {
        by_degree
            .entry(sig_b.degree(id))
            .or_default()
            .1
            .push(id);
    }
    for (left, right) in by_degree.values() {
        if left.len() != right.len() {
            return None;
        }
    }
    let degrees: Vec<u32> = by_degree.keys().cloned().collect();
    let mut assignment: BTreeMap<GenId, GenId> = BTreeMap::new();
    if search_renaming(a, b, &by_degree, &degrees, 0, &mut assignment) {
        let mut out: Vec<(String, String)> = assignment
            .iter()
            .map(|(x, y)| {
                (
                    sig_a.generator(*x).name.clone(),
                    sig_b.generator(*y).name.clone(),
                )
            })
            .collect();
        out.sort();
        Some(out)
    } else {
        None
    }
}

fn search_renaming(
    a: &FreeCdga,
    b: &FreeCdga,
    by_degree: &BTreeMap<u32, (Vec<GenId>, Vec<GenId>)>,
    degrees: &[u32],
    level: usize,
    assignment: &mut BTreeMap<GenId, GenId>,
) -> bool {
    if level == degrees.len() {
        return check_renaming(a, b, assignment);
    }
    let (left, right) = &by_degree[&degrees[level]];
    let mut perm: Vec<usize> = (0..right.len()).collect();
    permute_search(a, b, by_degree, degrees, level, left, right, &mut perm, 0, assignment)
}

#[allow(clippy::too_many_arguments)]
fn permute_search(
    a: &FreeCdga,
    b: &FreeCdga,
    by_degree: &BTreeMap<u32, (Vec<GenId>, Vec<GenId>)>,
    degrees: &[u32],
    level: usize,
    left: &[GenId],
    right: &[GenId],
    perm: &mut Vec<usize>,
    pos: usize,
    assignment: &mut BTreeMap<GenId, GenId>,
) -> bool {
    if pos == left.len() {
        return search_renaming(a, b, by_degree, degrees, level + 1, assignment);
    }
    for i in pos..perm.len() {
        perm.swap(pos, i);
        assignment.insert(left[pos], right[perm[pos]]);
        if permute_search(
            a, b, by_degree, degrees, level, left, right, perm, pos + 1, assignment,
        ) {
            return true;
        }
        assignment.remove(&left[pos]);
        perm.swap(pos, i);
    }
    false
}

fn check_renaming(a: &FreeCdga, b: &FreeCdga, assignment: &BTreeMap<GenId, GenId>) -> bool {
    for id in a.signature().ids() {
        let da = a.generator_differential(id);
        let mut mapped = Element::zero(b.signature());
        for (m, c) in da.terms() {
            let factors: Vec<(GenId, u32)> = m
                .factors()
                .iter()
                .map(|&(g, e)| (assignment[&g], e))
                .collect();
            match Monomial::from_factors(b.signature(), &factors) {
                Some(mm) => {
                    mapped = &mapped
                        + &Element::from_monomial(b.signature(), mm, c.clone());
                }
                None => return false,
            }
        }
        let expected = b.generator_differential(assignment[&id]);
        if &mapped != expected {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirsch_extension_builds_sphere_model() {
        let base = build_algebra(&[("x", 2)], |_| vec![]).unwrap();
        let x2 = base.element("x").unwrap().pow(2);
        let ext = HirschExtension::new(3, vec![("y".into(), x2)]);
        let extended = hirsch_extend(&base, &ext).unwrap();
        assert!(extended.is_minimal());
        assert!(isomorphic_renaming(&extended, &catalog("S2").unwrap()).is_some());
    }

    #[test]
    fn hirsch_extension_staged_wedge() {
        let base = build_algebra(&[("x1", 3), ("x2", 3)], |_| vec![]).unwrap();
        let x1x2 = &base.element("x1").unwrap() * &base.element("x2").unwrap();
        let stage1 = hirsch_extend(&base, &HirschExtension::new(5, vec![("y".into(), x1x2)]))
            .unwrap();
        let z_images: Vec<(String, Element)> = ["x1", "x2"]
            .iter()
            .enumerate()
            .map(|(i, x)| {
                (
                    format!("z{}", i + 1),
                    &stage1.element(x).unwrap() * &stage1.element("y").unwrap(),
                )
            })
            .collect();
        let stage2 = hirsch_extend(&stage1, &HirschExtension::new(7, z_images)).unwrap();
        assert!(isomorphic_renaming(&stage2, &catalog("S3vS3").unwrap()).is_some());
    }

    #[test]
    fn hirsch_extension_rejects_non_closed_image() {
        let base = catalog("S2").unwrap();
        let y = base.element("y").unwrap();
        let err =
            hirsch_extend(&base, &HirschExtension::new(2, vec![("v".into(), y)])).unwrap_err();
        assert!(matches!(err, Error::NotClosed { .. }));
    }

    #[test]
    fn canned_model_examples() {
        let s2 = catalog("S2").unwrap();
        assert_eq!(s2.signature().len(), 2);
        let nf = catalog("NF").unwrap();
        let z = nf.by_name("z").unwrap();
        let xy = &nf.element("x").unwrap() * &nf.element("y").unwrap();
        assert_eq!(*nf.generator_differential(z), xy);
        let rf = catalog("RemarkF_target").unwrap();
        let zz = rf.by_name("z").unwrap();
        assert_eq!(
            *rf.generator_differential(zz),
            rf.element("y").unwrap().pow(2)
        );
        assert!(matches!(catalog("S99x"), Err(Error::UnknownModel(_))));
    }

    #[test]
    fn nf_presentations_are_isomorphic() {
        let a = catalog("NF").unwrap();
        let b = catalog("NF_alt").unwrap();
        let pairing = isomorphic_renaming(&a, &b).unwrap();
        assert!(pairing.contains(&("T".to_string(), "T".to_string())));
    }

    #[test]
    fn minimal_model_fixed_points() {
        let odd = catalog("S3").unwrap();
        let (m, _) = minimal_model_of(&odd, 8).unwrap();
        assert!(isomorphic_renaming(&m, &odd).is_some());

        let even = catalog("S4").unwrap();
        let (m, cmp) = minimal_model_of(&even, 9).unwrap();
        assert!(isomorphic_renaming(&m, &even).is_some());
        assert!(cmp.is_chain_map());
        for k in 0..=9 {
            assert_eq!(
                m.cohomology_dim(k).unwrap(),
                even.cohomology_dim(k).unwrap(),
                "degree {k}"
            );
        }
    }

    #[test]
    fn minimal_model_strips_contractible_factor() {
        // S² model tensored with the contractible pair du = w.
        let a = build_algebra(
            &[("x", 2), ("y", 3), ("u", 3), ("w", 4)],
            |sig| {
                vec![
                    ("y", gen_product(sig, &["x", "x"])),
                    ("u", gen_product(sig, &["w"])),
                ]
            },
        )
        .unwrap();
        assert!(!a.is_minimal());
        let (m, cmp) = minimal_model_of(&a, 7).unwrap();
        assert!(m.is_minimal());
        assert!(isomorphic_renaming(&m, &catalog("S2").unwrap()).is_some());
        assert!(cmp.is_chain_map());
        let expected = [1usize, 0, 1, 0, 0, 0, 0, 0];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(m.cohomology_dim(k as u32).unwrap(), *want);
            assert_eq!(a.cohomology_dim(k as u32).unwrap(), *want);
        }
    }

    #[test]
    fn truncated_polynomial_model_is_a_fixed_point() {
        // ⟨x:2, q:5 | dq = x³⟩ is already minimal (its cohomology is the
        // truncated polynomial ring 1, x, x²), so the construction returns
        // an isomorphic copy.
        let a = build_algebra(&[("x", 2), ("q", 5)], |sig| {
            let x = Element::generator(sig, sig.lookup("x").unwrap());
            vec![("q", x.pow(3))]
        })
        .unwrap();
        assert!(a.is_minimal());
        let expected = [1usize, 0, 1, 0, 1, 0, 0, 0];
        for (k, want) in expected.iter().enumerate() {
            assert_eq!(a.cohomology_dim(k as u32).unwrap(), *want, "degree {k}");
        }
        let (model, comparison) = minimal_model_of(&a, 7).unwrap();
        assert!(isomorphic_renaming(&model, &a).is_some());
        assert!(comparison.is_chain_map());
    }

    #[test]
    fn minimal_model_respects_the_basis_cap() {
        let a = catalog("S2").unwrap().with_basis_cap(6);
        assert!(matches!(
            minimal_model_of(&a, 8),
            Err(Error::DegreeCapExceeded { .. })
        ));
    }

    #[test]
    fn algebras_share_across_threads() {
        // Values are immutable after construction; basis caches are behind a
        // lock, so concurrent graded queries agree.
        let a = catalog("NF").unwrap();
        let handles: Vec<_> = (0..4)
            .map(|_| {
                let algebra = a.clone();
                std::thread::spawn(move || {
                    (0..=10u32)
                        .map(|d| algebra.graded_basis(d).unwrap().len())
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        let results: Vec<Vec<usize>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for r in &results[1..] {
            assert_eq!(r, &results[0]);
        }
    }

    #[test]
    fn minimal_model_rejects_non_simply_connected() {
        let a = build_algebra(&[("e", 1)], |_| vec![]).unwrap();
        assert!(matches!(
            minimal_model_of(&a, 5),
            Err(Error::NotSimplyConnected)
        ));
    }

    mod randomized {
        use super::*;
        use crate::algebra::{ratio, Rat};
        use num_traits::Zero;
        use rand::rngs::SmallRng;
        use rand::{Rng, SeedableRng};

        /// A random minimal tower built by elementary extensions with
        /// differentials drawn from the cocycles of the stage below.
        fn random_tower(rng: &mut SmallRng) -> FreeCdga {
            let first_degree = rng.gen_range(2u32..=3);
            let mut tower = build_algebra(&[("g0", first_degree)], |_| vec![]).unwrap();
            let mut next_id = 1;
            let mut degree = first_degree + 1;
            while degree <= 5 {
                if rng.gen_bool(0.7) {
                    let cocycles = tower.cocycle_basis(degree + 1).unwrap();
                    let mut image = Element::zero(tower.signature());
                    for z in &cocycles {
                        if rng.gen_bool(0.6) {
                            image = &image + &z.scale(&ratio(rng.gen_range(-2i64..=2), 1));
                        }
                    }
                    let ext = HirschExtension::new(
                        degree,
                        vec![(format!("g{next_id}"), image)],
                    );
                    tower = hirsch_extend(&tower, &ext).unwrap();
                    next_id += 1;
                }
                degree += 1;
            }
            tower
        }

        /// Tensors in a contractible pair du = w by two elementary
        /// extensions, producing a non-minimal quasi-isomorphic algebra.
        fn inflate(tower: &FreeCdga, rng: &mut SmallRng) -> FreeCdga {
            let d = rng.gen_range(3u32..=5);
            let with_w = hirsch_extend(
                tower,
                &HirschExtension::new(d + 1, vec![("cw".into(), Element::zero(tower.signature()))]),
            )
            .unwrap();
            let w = with_w.element("cw").unwrap();
            hirsch_extend(&with_w, &HirschExtension::new(d, vec![("cu".into(), w)])).unwrap()
        }

        #[test]
        fn minimal_model_recovers_random_towers() {
            let mut rng = SmallRng::seed_from_u64(909);
            for round in 0..12 {
                let tower = random_tower(&mut rng);
                let inflated = inflate(&tower, &mut rng);
                assert!(!inflated.is_minimal());
                let (model, comparison) = minimal_model_of(&inflated, 6).unwrap();
                assert!(model.is_minimal(), "round {round}");
                assert!(comparison.is_chain_map(), "round {round}");
                for k in 0..=6u32 {
                    assert_eq!(
                        model.cohomology_dim(k).unwrap(),
                        inflated.cohomology_dim(k).unwrap(),
                        "round {round} degree {k}"
                    );
                    assert_eq!(
                        model.cohomology_dim(k).unwrap(),
                        tower.cohomology_dim(k).unwrap(),
                        "round {round} tower degree {k}"
                    );
                }
            }
        }

        #[test]
        fn detected_gradings_on_random_towers_commute_with_d() {
            let mut rng = SmallRng::seed_from_u64(910);
            let mut found = 0;
            for _ in 0..12 {
                let tower = random_tower(&mut rng);
                if let Some(grading) = crate::weights::detect_positive_weights(&tower) {
                    found += 1;
                    let auto = crate::weights::apply_grading_automorphism(
                        &tower,
                        &grading,
                        crate::weights::ScaleFactor::Exact(Rat::from_integer(2.into())),
                    )
                    .unwrap();
                    assert!(auto.as_morphism().unwrap().is_chain_map());
                    assert!(!grading.weights().iter().any(Zero::is_zero));
                }
            }
            assert!(found > 0, "no tower admitted a grading");
        }
    }
}
