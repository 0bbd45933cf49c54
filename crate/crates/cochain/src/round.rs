//! Integer rounding of coboundary witnesses: replace the minimal sup-norm
//! primitive b of w − c by its nearest-integer cochain, leaving a remainder
//! bounded per cell by half its face count.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::complex::{Cochain, Rat, SimplicialPair};
use crate::error::{Error, Result};
use crate::optimize::{min_linf_primitive, relative_coboundary};

#[derive(Clone, Debug)]
pub struct RoundingResult {
    /// The minimal sup-norm primitive of w − c.
    pub primitive: Cochain,
    /// Its nearest-integer rounding.
    pub rounded: Cochain,
    /// w − c − δ⌊primitive⌉.
    pub remainder: Cochain,
    /// Per-cell bound: half the number of faces outside the subcomplex.
    pub bounds: Vec<(usize, Rat)>,
    pub within_bounds: bool,
}

/// Nearest integer, ties toward +∞.
pub fn nearest_integer(v: &Rat) -> Rat {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    (v + &half).floor()
}

/// Rounds a coboundary witness: finds the minimal sup-norm relative b with
/// δb = w − c, rounds it to the nearest-integer cochain, and certifies the
/// per-cell remainder bound |r(p)| ≤ (number of free faces of p)/2.
///
/// Both inputs must be relative n-cocycles; their difference must be a
/// relative coboundary.
pub fn guth_round(
    pair: &SimplicialPair,
    n: usize,
    c: &Cochain,
    w: &Cochain,
) -> Result<RoundingResult> {
    guth_round_impl(pair, n, c, w, None)
}

/// As `guth_round`, with a caller-chosen primitive instead of the minimal
/// sup-norm one. The choice must satisfy δb = w − c (relatively).
pub fn guth_round_with_primitive(
    pair: &SimplicialPair,
    n: usize,
    c: &Cochain,
    w: &Cochain,
    primitive: &Cochain,
) -> Result<RoundingResult> {
    guth_round_impl(pair, n, c, w, Some(primitive))
}

fn guth_round_impl(
    pair: &SimplicialPair,
    n: usize,
    c: &Cochain,
    w: &Cochain,
    chosen: Option<&Cochain>,
) -> Result<RoundingResult> {
    for (name, x) in [("integral", c), ("target", w)] {
        if x.dim != n {
            return Err(Error::BadComplex(format!("{name} cochain has wrong degree")));
        }
        if !x.is_relative(pair) {
            return Err(Error::BadComplex(format!(
                "{name} cochain must vanish on the subcomplex"
            )));
        }
        if !relative_coboundary(pair, x).is_zero() {
            return Err(Error::BadComplex(format!("{name} cochain is not a cocycle")));
        }
    }
    for (_, v) in c.iter() {
        if !v.is_integer() {
            return Err(Error::BadComplex("integral cocycle has a fractional value".into()));
        }
    }
    let difference = w.sub(c);
    let primitive = match chosen {
        Some(b) => {
            if b.dim != n - 1 || !b.is_relative(pair) {
                return Err(Error::BadComplex(
                    "supplied primitive must be a relative cochain one degree down".into(),
                ));
            }
            if relative_coboundary(pair, b) != difference {
                return Err(Error::BadComplex(
                    "supplied primitive does not cobound the target".into(),
                ));
            }
            b.clone()
        }
        None => min_linf_primitive(pair, n, &difference)?.0,
    };
    let mut rounded = Cochain::zero(primitive.dim);
    for (&i, v) in primitive.iter() {
        rounded.set(i, nearest_integer(v));
    }
    let remainder = difference.sub(&relative_coboundary(pair, &rounded));

    let mut bounds = Vec::new();
    let mut within = true;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    for &cell in &pair.free_indices(n) {
        let free_faces = pair
            .faces(n, cell)
            .iter()
            .filter(|(f, _)| !pair.is_relative(n - 1, *f))
            .count();
        let bound = &half * &Rat::from_integer(free_faces.into());
        if remainder.get(cell).abs() > bound {
            within = false;
        }
        bounds.push((cell, bound));
    }
    Ok(RoundingResult {
        primitive,
        rounded,
        remainder,
        bounds,
        within_bounds: within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples::prism_complex;

    fn rat(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn rounding_ties_go_up() {
        assert_eq!(nearest_integer(&Rat::new(1.into(), 2.into())), rat(1));
        assert_eq!(nearest_integer(&Rat::new((-1).into(), 2.into())), rat(0));
        assert_eq!(nearest_integer(&Rat::new(7.into(), 3.into())), rat(2));
        assert_eq!(nearest_integer(&rat(-3)), rat(-3));
    }

    #[test]
    fn equal_cocycles_round_to_zero() {
        let pair = prism_complex();
        let n = pair.top_dimension();
        let mut c = Cochain::zero(n);
        c.set(pair.free_indices(n)[0], rat(2));
        let result = guth_round(&pair, n, &c, &c).unwrap();
        assert!(result.primitive.is_zero());
        assert!(result.remainder.is_zero());
        assert!(result.within_bounds);
    }

    #[test]
    fn fractional_integral_cocycle_rejected() {
        let pair = prism_complex();
        let n = pair.top_dimension();
        let mut frac = Cochain::zero(n);
        frac.set(pair.free_indices(n)[0], Rat::new(1.into(), 2.into()));
        assert!(matches!(
            guth_round(&pair, n, &frac, &frac),
            Err(Error::BadComplex(_))
        ));
    }

    #[test]
    fn non_cocycle_rejected() {
        // In one dimension below the top, a single-simplex cochain fails the
        // cocycle test.
        let pair = prism_complex();
        let n = pair.top_dimension() - 1;
        let mut c = Cochain::zero(n);
        c.set(pair.free_indices(n)[0], rat(1));
        assert!(matches!(
            guth_round(&pair, n, &c, &c),
            Err(Error::BadComplex(_))
        ));
    }
}
