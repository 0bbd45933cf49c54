//! Isoperimetric constants by exact extreme-point enumeration, and the
//! equality check between the primitive-side and filling-side constants.
//!
//! Both constants are maxima of convex value functions over unit-ball
//! sections of finite-dimensional subspaces, so they are attained at
//! extreme points. The sup-norm ball section is enumerated by row-subset
//! sign patterns; the mass-ball section by facet normals of the dual
//! zonotope.

use num_traits::{One, Signed, Zero};
use sullivan_lp::matrix::Matrix;

use crate::complex::{Chain, Cochain, Rat, SimplicialPair};
use crate::error::{Error, Result};
use crate::optimize::{min_linf_primitive, min_mass_filling, relative_coboundary};

/// Hard cap on the simplex count in the enumerated dimension.
pub const DEFAULT_ENUMERATION_CAP: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Sup-norm primitives of degree-k relative coboundaries.
    Forms,
    /// Mass fillings of (k−1)-boundaries of relative k-chains.
    Chains,
}

#[derive(Clone, Debug)]
pub struct IsoperimetricResult {
    pub constant: Rat,
    /// The extremal target realizing the constant, when nonzero.
    pub extremal: Option<Cochain>,
    /// The optimal primitive or filling for the extremal target.
    pub witness: Option<Cochain>,
}

/// The least constant C with: every relative coboundary w of degree k has a
/// primitive a, δa = w, with ‖a‖_∞ ≤ C‖w‖_∞ (side = Forms); or every
/// boundary ν = ∂S of a relative k-chain has a filling of mass ≤ C·mass ν
/// (side = Chains). Computed by exact enumeration of the extreme points of
/// the unit-ball section of the image subspace, with one inner LP per
/// extreme point.
pub fn iso_constant(pair: &SimplicialPair, k: usize, side: Side) -> Result<IsoperimetricResult> {
    iso_constant_capped(pair, k, side, DEFAULT_ENUMERATION_CAP)
}

pub fn iso_constant_capped(
    pair: &SimplicialPair,
    k: usize,
    side: Side,
    cap: usize,
) -> Result<IsoperimetricResult> {
    match side {
        Side::Forms => forms_constant(pair, k, cap),
        Side::Chains => chains_constant(pair, k, cap),
    }
}

/// Columns of the relative coboundary matrix δ: C^{k-1}(X,A) → C^k(X,A).
fn coboundary_columns(pair: &SimplicialPair, k: usize) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let rows = pair.free_indices(k);
    let mut cols = Vec::new();
    if k == 0 {
        return (rows, cols);
    }
    for &j in &pair.free_indices(k - 1) {
        let mut basis = Cochain::zero(k - 1);
        basis.set(j, Rat::one());
        let image = relative_coboundary(pair, &basis);
        cols.push(rows.iter().map(|&r| image.get(r)).collect());
    }
    (rows, cols)
}

/// An independent spanning subset of the given columns.
fn column_space_basis(rows: usize, cols: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut chosen: Vec<Vec<Rat>> = Vec::new();
    let mut rank = 0;
    for col in cols {
        chosen.push(col.clone());
        let r = Matrix::from_columns(rows, &chosen).rank();
        if r > rank {
            rank = r;
        } else {
            chosen.pop();
        }
    }
    chosen
}

fn forms_constant(pair: &SimplicialPair, k: usize, cap: usize) -> Result<IsoperimetricResult> {
    let (rows, cols) = coboundary_columns(pair, k);
    if rows.len() > cap {
        return Err(Error::TooLarge {
            count: rows.len(),
            cap,
        });
    }
    let basis = column_space_basis(rows.len(), &cols);
    let r = basis.len();
    if r == 0 {
        return Ok(IsoperimetricResult {
            constant: Rat::zero(),
            extremal: None,
            witness: None,
        });
    }
    // Extreme points of {w = Bx : ‖w‖_∞ ≤ 1}: pick r independent rows of B,
    // impose ±1 there, and keep the solutions with every coordinate in
    // [−1, 1]. One inversion per row subset serves all sign patterns; the
    // first sign is pinned to +1 and both ±w are recorded (the ball section
    // is centrally symmetric).
    let n = rows.len();
    let b_matrix = Matrix::from_columns(n, &basis);
    let mut seen: std::collections::BTreeSet<Vec<Rat>> = std::collections::BTreeSet::new();
    let mut subset = vec![0usize; r];
    enumerate_row_subsets(n, r, 0, &mut subset, &mut |chosen| {
        let sub_cols: Vec<Vec<Rat>> = basis
            .iter()
            .map(|col| chosen.iter().map(|&i| col[i].clone()).collect())
            .collect();
        let Some(inv) = Matrix::from_columns(r, &sub_cols).inverse() else {
            return;
        };
        let mut signs = vec![Rat::one(); r];
        loop {
            let x = inv.apply(&signs);
            let w = b_matrix.apply(&x);
            if w.iter().all(|v| v.abs() <= Rat::one()) {
                let neg: Vec<Rat> = w.iter().map(|v| -v.clone()).collect();
                seen.insert(w);
                seen.insert(neg);
            }
            // Next sign pattern, first coordinate fixed.
            let mut i = 1;
            loop {
                if i >= r {
                    return;
                }
                if signs[i].is_one() {
                    signs[i] = -Rat::one();
                    break;
                }
                signs[i] = Rat::one();
                i += 1;
            }
        }
    });
    let vertices: Vec<Vec<Rat>> = seen.into_iter().collect();

    let mut best = IsoperimetricResult {
        constant: Rat::zero(),
        extremal: None,
        witness: None,
    };
    for w_coords in vertices {
        let mut w = Cochain::zero(k);
        for (i, &row) in rows.iter().enumerate() {
            w.set(row, w_coords[i].clone());
        }
        let (a, value) = min_linf_primitive(pair, k, &w)?;
        if value > best.constant {
            best = IsoperimetricResult {
                constant: value,
                extremal: Some(w),
                witness: Some(a),
            };
        }
    }
    Ok(best)
}

fn enumerate_row_subsets(
    n: usize,
    r: usize,
    from: usize,
    subset: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]),
) {
    fn rec(
        n: usize,
        r: usize,
        from: usize,
        depth: usize,
        subset: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if depth == r {
            visit(subset);
            return;
        }
        for i in from..n {
            subset[depth] = i;
            rec(n, r, i + 1, depth + 1, subset, visit);
        }
    }
    rec(n, r, from, 0, subset, visit);
}

/// Columns of the relative boundary matrix ∂: C_k(X,A) → C_{k-1}(X,A).
fn boundary_columns(pair: &SimplicialPair, k: usize) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let rows = if k == 0 {
        Vec::new()
    } else {
        pair.free_indices(k - 1)
    };
    let mut cols = Vec::new();
    if k == 0 {
        return (rows, cols);
    }
    for &j in &pair.free_indices(k) {
        let mut col = vec![Rat::zero(); rows.len()];
        for (fidx, sign) in pair.faces(k, j) {
            if let Some(pos) = rows.iter().position(|&x| x == fidx) {
                col[pos] = if sign > 0 { Rat::one() } else { -Rat::one() };
            }
        }
        cols.push(col);
    }
    (rows, cols)
}

fn chains_constant(pair: &SimplicialPair, k: usize, cap: usize) -> Result<IsoperimetricResult> {
    if k == 0 {
        return Ok(IsoperimetricResult {
            constant: Rat::zero(),
            extremal: None,
            witness: None,
        });
    }
    let (rows, cols) = boundary_columns(pair, k);
    if pair.free_indices(k).len() > cap || rows.len() > cap {
        return Err(Error::TooLarge {
            count: pair.free_indices(k).len().max(rows.len()),
            cap,
        });
    }
    let basis = column_space_basis(rows.len(), &cols);
    let r = basis.len();
    if r == 0 {
        return Ok(IsoperimetricResult {
            constant: Rat::zero(),
            extremal: None,
            witness: None,
        });
    }
    // Extreme points of {ν = Gx : ‖ν‖₁ ≤ 1}: facet normals u of the dual
    // zonotope Σ [−g_i, g_i] (g_i the rows of G) come from (r−1)-subsets of
    // the generators; the extreme point is G·u / Σ|g_i·u|.
    let n = rows.len();
    let generators: Vec<Vec<Rat>> = (0..n)
        .map(|i| basis.iter().map(|col| col[i].clone()).collect())
        .collect();
    let mut seen: std::collections::BTreeSet<Vec<Rat>> = std::collections::BTreeSet::new();
    let mut subset = vec![0usize; r.saturating_sub(1)];
    enumerate_row_subsets(n, r - 1, 0, &mut subset, &mut |chosen| {
        // Null direction of the chosen generators.
        let cols_sub: Vec<Vec<Rat>> = (0..r)
            .map(|j| chosen.iter().map(|&i| generators[i][j].clone()).collect())
            .collect();
        let mat = Matrix::from_columns(chosen.len(), &cols_sub);
        for u in mat.null_space() {
            let dots: Vec<Rat> = generators
                .iter()
                .map(|g| {
                    g.iter()
                        .zip(&u)
                        .map(|(a, b)| a * b)
                        .fold(Rat::zero(), |acc, v| acc + v)
                })
                .collect();
            let h = dots
                .iter()
                .fold(Rat::zero(), |acc, d| acc + d.abs());
            if h.is_zero() {
                continue;
            }
            let nu: Vec<Rat> = dots.iter().map(|d| d / &h).collect();
            let neg: Vec<Rat> = nu.iter().map(|v| -v.clone()).collect();
            seen.insert(nu);
            seen.insert(neg);
        }
    });
    let vertices: Vec<Vec<Rat>> = seen.into_iter().collect();

    let mut best = IsoperimetricResult {
        constant: Rat::zero(),
        extremal: None,
        witness: None,
    };
    for nu_coords in vertices {
        let mut nu = Chain::zero(k - 1);
        for (i, &row) in rows.iter().enumerate() {
            nu.set(row, nu_coords[i].clone());
        }
        let (s, value) = min_mass_filling(pair, k - 1, &nu)?;
        if value > best.constant {
            best = IsoperimetricResult {
                constant: value,
                extremal: Some(nu),
                witness: Some(s),
            };
        }
    }
    Ok(best)
}

#[derive(Clone, Debug)]
pub struct DualityReport {
    pub c1: Rat,
    pub c2: Rat,
    pub equal: bool,
    pub forms: IsoperimetricResult,
    pub chains: IsoperimetricResult,
}

/// Computes the primitive-side constant for degree-k coboundaries and the
/// filling-side constant for the adjoint boundary map, independently, and
/// compares them exactly. When both are finite they agree.
pub fn duality_check(pair: &SimplicialPair, k: usize) -> Result<DualityReport> {
    duality_check_capped(pair, k, DEFAULT_ENUMERATION_CAP)
}

pub fn duality_check_capped(
    pair: &SimplicialPair,
    k: usize,
    cap: usize,
) -> Result<DualityReport> {
    let forms = iso_constant_capped(pair, k, Side::Forms, cap)?;
    let chains = iso_constant_capped(pair, k, Side::Chains, cap)?;
    Ok(DualityReport {
        c1: forms.constant.clone(),
        c2: chains.constant.clone(),
        equal: forms.constant == chains.constant,
        forms,
        chains,
    })
}
