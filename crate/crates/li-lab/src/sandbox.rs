//! Analysis of off-axis sandbox runs: growth-rate fitting and onset
//! detection for the exponential oscillation injected by a hypothetical
//! zero pair.
//!
//! The injected footprint `lambda(synthetic) - lambda(base)` equals
//! `4 - 2 Re w^n - 2 Re w^-n` with `w = (tau + i/2)/(tau - i/2)` exactly
//! (table and tail cancel), so its envelope is clean enough to demodulate
//! at the known phase `arg w` and fit the log-amplitude line. The
//! deviation from the on-axis predictor carries the base table's own
//! counting oscillation on top and is reported but not used for the fit.

/// Results of a sandbox run analysis; plain f64, since the tolerances in
/// play are percent-level.
#[derive(Debug, Clone)]
pub struct SandboxAnalysis {
    /// Least-squares slope of the demodulated footprint log-amplitude over
    /// full-period windows of the top quartile.
    pub fitted_rate: f64,
    /// `log |(tau + i/2)/(tau - i/2)|`.
    pub theoretical_rate: f64,
    /// First index with `lambda_n < 0`, if any.
    pub first_negative: Option<u32>,
    /// First index where the off-axis excess (footprint minus its
    /// unit-modulus oscillation `4 - 4 cos(n arg w)`) exceeds 1.
    pub excess_onset: Option<u32>,
    /// `1 / |Im(1/tau)|`, the scale where the oscillation becomes
    /// appreciable.
    pub theoretical_onset: f64,
}

/// Analyze a sandbox run. `lambdas[i]` and `base_lambdas[i]` hold the
/// coefficients of the synthetic and base tables at `n = i + 1`.
pub fn analyze(lambdas: &[f64], base_lambdas: &[f64], tau: (f64, f64)) -> SandboxAnalysis {
    assert_eq!(lambdas.len(), base_lambdas.len());
    // w = (tau + i/2)/(tau - i/2)
    let (a, b) = (tau.0, tau.1 + 0.5);
    let (c, d) = (tau.0, tau.1 - 0.5);
    let den = c * c + d * d;
    let w_re = (a * c + b * d) / den;
    let w_im = (b * c - a * d) / den;
    let theoretical_rate = 0.5 * (w_re * w_re + w_im * w_im).ln();
    let phi = w_im.atan2(w_re);

    let n_max = lambdas.len();
    let footprint: Vec<f64> = lambdas
        .iter()
        .zip(base_lambdas)
        .map(|(l, b)| l - b)
        .collect();

    let period = ((2.0 * std::f64::consts::PI / phi.abs()).round() as usize).clamp(8, n_max.max(8));
    let start = 3 * n_max / 4;
    let mut centers: Vec<f64> = Vec::new();
    let mut log_amps: Vec<f64> = Vec::new();
    let mut n0 = start;
    while n0 + period <= n_max {
        let mut zr = 0.0;
        let mut zi = 0.0;
        for k in 0..period {
            let n = (n0 + k) as f64 + 1.0;
            let (s, c) = (-phi * n).sin_cos();
            zr += footprint[n0 + k] * c;
            zi += footprint[n0 + k] * s;
        }
        let amp = (zr.hypot(zi) / period as f64).max(1e-300);
        centers.push(n0 as f64 + period as f64 / 2.0);
        log_amps.push(amp.ln());
        n0 += (period / 4).max(1);
    }
    let fitted_rate = if centers.len() >= 2 {
        let n = centers.len() as f64;
        let sx: f64 = centers.iter().sum();
        let sy: f64 = log_amps.iter().sum();
        let sxx: f64 = centers.iter().map(|x| x * x).sum();
        let sxy: f64 = centers.iter().zip(&log_amps).map(|(x, y)| x * y).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    } else {
        f64::NAN
    };

    let first_negative = lambdas
        .iter()
        .position(|&l| l < 0.0)
        .map(|i| (i + 1) as u32);

    let excess_onset = footprint
        .iter()
        .enumerate()
        .position(|(i, f)| {
            let n = (i + 1) as f64;
            (f - (4.0 - 4.0 * (n * phi).cos())).abs() > 1.0
        })
        .map(|i| (i + 1) as u32);

    let im_inv_tau = -tau.1 / (tau.0 * tau.0 + tau.1 * tau.1);
    SandboxAnalysis {
        fitted_rate,
        theoretical_rate,
        first_negative,
        excess_onset,
        theoretical_onset: 1.0 / im_inv_tau.abs(),
    }
}
