//! Exact-LP solutions of the two isoperimetric optimization problems:
//! minimal sup-norm primitives of coboundaries and minimal-mass fillings of
//! boundaries, both relative to the subcomplex.

use num_traits::{One, Zero};
use sullivan_lp::{Outcome, Program};

use crate::complex::{boundary, coboundary, Chain, Cochain, Rat, SimplicialPair};
use crate::error::{Error, Result};

/// Minimizes ‖a‖_∞ over relative (k−1)-cochains with δa = w. The input must
/// be a relative k-cochain; infeasibility means it is not a coboundary.
pub fn min_linf_primitive(
    pair: &SimplicialPair,
    k: usize,
    w: &Cochain,
) -> Result<(Cochain, Rat)> {
    assert_eq!(w.dim, k, "dimension mismatch");
    if !w.is_relative(pair) {
        return Err(Error::BadComplex(
            "target cochain must vanish on the subcomplex".into(),
        ));
    }
    if k == 0 {
        return if w.is_zero() {
            Ok((Cochain::zero(0), Rat::zero()))
        } else {
            Err(Error::NotACoboundary)
        };
    }
    let dom = pair.free_indices(k - 1);
    let cod = pair.free_indices(k);
    // Substituted encoding: a_j = u_j − M with u_j ≥ 0 and u_j + s_j = 2M,
    // so |a_j| ≤ M exactly. Columns: u (n), s (n), M.
    let n = dom.len();
    let vars = 2 * n + 1;
    let m_col = 2 * n;
    let mut objective = vec![Rat::zero(); vars];
    objective[m_col] = Rat::one();
    let mut lp = Program::minimize(objective);
    // δa = w on simplices outside A: δu − M·δ(𝟙) = w.
    for &row in &cod {
        let mut coeffs = vec![Rat::zero(); vars];
        for (fidx, sign) in pair.faces(k, row) {
            if let Some(col) = dom.iter().position(|&d| d == fidx) {
                let s = if sign > 0 { Rat::one() } else { -Rat::one() };
                coeffs[col] = &coeffs[col] + &s;
                coeffs[m_col] = &coeffs[m_col] - &s;
            }
        }
        lp.equality(coeffs, w.get(row));
    }
    // u_j + s_j − 2M = 0.
    for j in 0..n {
        let mut bound = vec![Rat::zero(); vars];
        bound[j] = Rat::one();
        bound[n + j] = Rat::one();
        bound[m_col] = -(Rat::one() + Rat::one());
        lp.equality(bound, Rat::zero());
    }
    match lp.solve() {
        Outcome::Optimal { objective, point } => {
            let mut a = Cochain::zero(k - 1);
            for (j, &idx) in dom.iter().enumerate() {
                a.set(idx, &point[j] - &point[m_col]);
            }
            debug_assert_eq!(&relative_coboundary(pair, &a), w);
            Ok((a, objective))
        }
        Outcome::Infeasible => Err(Error::NotACoboundary),
        Outcome::Unbounded => unreachable!("sup-norm objective is bounded below"),
    }
}

/// δ restricted to relative cochains (values on A forced to zero).
pub fn relative_coboundary(pair: &SimplicialPair, a: &Cochain) -> Cochain {
    let full = coboundary(pair, a);
    let mut out = Cochain::zero(full.dim);
    for (&i, v) in full.iter() {
        if !pair.is_relative(full.dim, i) {
            out.set(i, v.clone());
        }
    }
    out
}

/// Minimizes the quotient mass of S over (k+1)-chains with ∂S = T in the
/// relative sense (the equation is imposed outside A only, and chain
/// components on A-simplices are free of charge).
pub fn min_mass_filling(pair: &SimplicialPair, k: usize, t: &Chain) -> Result<(Chain, Rat)> {
    assert_eq!(t.dim, k, "dimension mismatch");
    let cells = pair.count(k + 1);
    let rows = pair.free_indices(k);
    // S_σ = p_σ − q_σ with p, q ≥ 0 and cost 1 on both outside A; the
    // A-components are free of charge (the quotient norm).
    let vars = 2 * cells;
    let mut objective = vec![Rat::zero(); vars];
    for idx in 0..cells {
        if !pair.is_relative(k + 1, idx) {
            objective[2 * idx] = Rat::one();
            objective[2 * idx + 1] = Rat::one();
        }
    }
    let mut lp = Program::minimize(objective);
    for &row in &rows {
        let mut coeffs = vec![Rat::zero(); vars];
        for (cidx, sign) in pair.cofaces(k, row) {
            let s = if sign > 0 { Rat::one() } else { -Rat::one() };
            coeffs[2 * cidx] = s.clone();
            coeffs[2 * cidx + 1] = -s;
        }
        lp.equality(coeffs, t.get(row));
    }
    match lp.solve() {
        Outcome::Optimal { objective, point } => {
            let mut s = Chain::zero(k + 1);
            for idx in 0..cells {
                let v = &point[2 * idx] - &point[2 * idx + 1];
                s.set(idx, v);
            }
            debug_assert!({
                let bs = boundary(pair, &s);
                rows.iter().all(|&r| bs.get(r) == t.get(r))
            });
            Ok((s, objective))
        }
        Outcome::Infeasible => Err(Error::NotABoundary),
        Outcome::Unbounded => unreachable!("mass objective is bounded below"),
    }
}
