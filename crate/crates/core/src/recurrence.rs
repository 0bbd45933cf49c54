//! Numerical iteration of the nullhomotopy-size recurrence
//!   γ(L) ≤ 2C · max{ C'^{2n/(2n−1)} L ρ(L),  C' ρ(L) γ(L/ρ(L)) },
//! with ρ(L) = exp(κ √log L). This is the one floating-point computation in
//! the workspace; everything it reports is a bound profile, not a certified
//! value.

/// ρ(L) = exp(κ √log L).
pub fn rho(kappa: f64, l: f64) -> f64 {
    (kappa * l.ln().sqrt()).exp()
}

/// The scale where ρ(L) = L, namely exp(κ²). Below it the recurrence never
/// recurses and the bound is no better than the quadratic one.
pub fn crossing_point(kappa: f64) -> f64 {
    (kappa * kappa).exp()
}

#[derive(Clone, Debug)]
pub struct RecurrenceReport {
    pub kappa: f64,
    pub base_constant: f64,
    pub crossing: f64,
    /// (L, bound) pairs, log-spaced up to the requested maximum.
    pub table: Vec<(f64, f64)>,
}

pub struct RecurrenceParams {
    pub c: f64,
    pub c_prime: f64,
    pub n: u32,
    pub kappa: f64,
    pub l_max: f64,
    /// Number of log-spaced table rows.
    pub samples: usize,
}

/// Iterates the recurrence downward from each sample point, replacing
/// γ(L) by A·L·ρ(L) on the base interval L ≤ exp(κ²), with
/// A = 2C·C'^{2n/(2n−1)}.
pub fn weird_recurrence(params: &RecurrenceParams) -> RecurrenceReport {
    let crossing = crossing_point(params.kappa);
    let exponent = 2.0 * f64::from(params.n) / (2.0 * f64::from(params.n) - 1.0);
    let base_constant = 2.0 * params.c * params.c_prime.powf(exponent);
    let mut table = Vec::with_capacity(params.samples);
    if params.samples > 0 && params.l_max > 1.0 {
        let log_max = params.l_max.ln();
        for i in 0..params.samples {
            let frac = if params.samples == 1 {
                1.0
            } else {
                i as f64 / (params.samples - 1) as f64
            };
            let l = (frac * log_max).exp();
            table.push((l, gamma_bound(params, base_constant, crossing, l)));
        }
    }
    RecurrenceReport {
        kappa: params.kappa,
        base_constant,
        crossing,
        table,
    }
}

pub fn gamma_bound(params: &RecurrenceParams, base_constant: f64, crossing: f64, l: f64) -> f64 {
    if l <= crossing || l <= 1.0 {
        return base_constant * l * rho(params.kappa, l.max(1.0));
    }
    let r = rho(params.kappa, l);
    let recursive = gamma_bound(params, base_constant, crossing, l / r);
    let exponent = 2.0 * f64::from(params.n) / (2.0 * f64::from(params.n) - 1.0);
    let direct = params.c_prime.powf(exponent) * l * r;
    2.0 * params.c * (params.c_prime * r * recursive).max(direct)
}
