//! Bulk generator for tables of Riemann-zero ordinates.
//!
//! Strategy: Gram points index the zeros (Rosser's rule has no exceptions
//! until far beyond the 100 000th zero, so each Gram block of length k
//! contains exactly k zeros). Candidate brackets come from a
//! Riemann–Siegel scan inside each block; every zero is then polished with
//! an f64 Euler–Maclaurin evaluation of the Hardy Z function, giving about
//! 1e-9 absolute accuracy. The run self-validates against the smooth
//! counting band, the bundled 30-digit table of the first hundred
//! ordinates, and a sparse set of externally computed anchors.
//!
//! Usage: gen-zeros [COUNT] [OUT_PREFIX]
//! Defaults: 100000 crates/li-lab/data/zeros-100k

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::f64::consts::PI;
use std::fmt::Write as _;

const TWO_PI: f64 = 2.0 * PI;

// ---------------------------------------------------------------------------
// Riemann–Siegel theta and Z
// ---------------------------------------------------------------------------

fn theta(t: f64) -> f64 {
    let u = t / TWO_PI;
    t / 2.0 * u.ln() - t / 2.0 - PI / 8.0 + 1.0 / (48.0 * t) + 7.0 / (5760.0 * t.powi(3))
        + 31.0 / (80640.0 * t.powi(5))
}

fn theta_deriv(t: f64) -> f64 {
    0.5 * (t / TWO_PI).ln() - 1.0 / (48.0 * t * t)
}

/// Riemann–Siegel main sum with the leading correction term: cheap scan
/// evaluator, absolute error of order 0.06 (t/2pi)^(-3/4).
fn rs_z(t: f64) -> f64 {
    let u = (t / TWO_PI).sqrt();
    let m = u as usize;
    let th = theta(t);
    let mut sum = 0.0f64;
    for k in 1..=m {
        let kf = k as f64;
        sum += (th - t * kf.ln()).cos() / kf.sqrt();
    }
    sum *= 2.0;
    // C0 term: psi(p) = cos(2 pi (p^2 - p - 1/16)) / cos(2 pi p)
    let p = u - m as f64;
    let psi = (TWO_PI * (p * p - p - 0.0625)).cos() / (TWO_PI * p).cos();
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    sum + sign * psi / u.sqrt()
}

// ---------------------------------------------------------------------------
// Euler–Maclaurin Hardy Z: the accurate evaluator
// ---------------------------------------------------------------------------

/// Per-q constants of the correction series: B_2q / (2q)!.
const B_OVER_FACT: [f64; 26] = [
    0.0, // unused q = 0
    8.333333333333333e-2,
    -1.3888888888888889e-3,
    3.306878306878307e-5,
    -8.267195767195768e-7,
    2.08767569878681e-8,
    -5.284190138687493e-10,
    1.3382536530684679e-11,
    -3.389680296322583e-13,
    8.586062056277845e-15,
    -2.174986694353492e-16,
    5.50900282836023e-18,
    -1.3954464685812522e-19,
    3.534707039629467e-21,
    -8.953517427037546e-23,
    2.267952452337683e-24,
    -5.744790668872202e-26,
    1.455172475614865e-27,
    -3.685994940665310e-29,
    9.336734257095045e-31,
    -2.36502241570063e-32,
    5.990671762482134e-34,
    -1.517454884468082e-35,
    3.84375812545419e-37,
    -9.73635307264669e-39,
    2.466014906644418e-40,
];

struct EmTables {
    ln_k: Vec<f64>,
    inv_sqrt_k: Vec<f64>,
}

impl EmTables {
    fn new(max_n: usize) -> Self {
        let mut ln_k = Vec::with_capacity(max_n + 1);
        let mut inv_sqrt_k = Vec::with_capacity(max_n + 1);
        ln_k.push(0.0);
        inv_sqrt_k.push(0.0);
        for k in 1..=max_n {
            ln_k.push((k as f64).ln());
            inv_sqrt_k.push(1.0 / (k as f64).sqrt());
        }
        Self { ln_k, inv_sqrt_k }
    }
}

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        Self { re, im }
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn scale(self, x: f64) -> C64 {
        C64::new(self.re * x, self.im * x)
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// zeta(1/2 + it) by Euler–Maclaurin with N ~ t/4 terms.
fn em_zeta_half(t: f64, tables: &EmTables) -> C64 {
    let n = ((t / 4.0).ceil() as usize).max(32);
    assert!(n < tables.ln_k.len(), "EM table too small for t = {t}");
    let mut acc_re = 0.0f64;
    let mut acc_im = 0.0f64;
    for k in 1..n {
        let phase = -t * tables.ln_k[k];
        let (s, c) = phase.sin_cos();
        let w = tables.inv_sqrt_k[k];
        acc_re += w * c;
        acc_im += w * s;
    }
    let mut acc = C64::new(acc_re, acc_im);

    let nf = n as f64;
    let ln_n = nf.ln();
    let (s_n, c_n) = (-t * ln_n).sin_cos();
    let n_pow_neg_s = C64::new(c_n, s_n).scale(1.0 / nf.sqrt()); // N^{-1/2 - it}
    // N^{-s}/2
    acc = acc.add(n_pow_neg_s.scale(0.5));
    // N^{1-s}/(s-1): s - 1 = -1/2 + it
    let n_pow_1_minus_s = n_pow_neg_s.scale(nf);
    acc = acc.add(n_pow_1_minus_s.div(C64::new(-0.5, t)));

    // corrections: B_2q/(2q)! (s)_{2q-1} N^{-s-2q+1}
    let s = C64::new(0.5, t);
    let inv_n2 = 1.0 / (nf * nf);
    let mut rising = s;
    let mut n_pow = n_pow_1_minus_s.scale(inv_n2); // N^{-s-1}
    let scale = acc.abs().max(1.0);
    for q in 1..B_OVER_FACT.len() {
        let term = rising.mul(n_pow).scale(B_OVER_FACT[q]);
        acc = acc.add(term);
        if term.abs() < 1e-17 * scale {
            break;
        }
        let two_q = 2.0 * q as f64;
        rising = rising
            .mul(C64::new(0.5 + two_q - 1.0, t))
            .mul(C64::new(0.5 + two_q, t));
        n_pow = n_pow.scale(inv_n2);
    }
    acc
}

/// Hardy Z(t) = e^(i theta(t)) zeta(1/2 + it), real-valued.
fn em_z(t: f64, tables: &EmTables) -> f64 {
    let zeta = em_zeta_half(t, tables);
    let (s, c) = theta(t).sin_cos();
    c * zeta.re - s * zeta.im
}

// ---------------------------------------------------------------------------
// Gram points
// ---------------------------------------------------------------------------

/// Gram point g_j: theta(g_j) = j pi, by Newton from a nearby seed.
fn gram_point(j: i64, seed: f64) -> f64 {
    let target = j as f64 * PI;
    let mut g = seed;
    for _ in 0..40 {
        let step = (theta(g) - target) / theta_deriv(g);
        g -= step;
        if step.abs() < 1e-11 * g.max(10.0) {
            break;
        }
    }
    g
}

// ---------------------------------------------------------------------------
// Zero hunting
// ---------------------------------------------------------------------------

struct Hunter<'a> {
    tables: &'a EmTables,
}

impl Hunter<'_> {
    /// Scan evaluator: Riemann–Siegel, escalating to Euler–Maclaurin when
    /// the value is too small to trust the scan error.
    fn z_scan(&self, t: f64) -> f64 {
        let v = rs_z(t);
        let rs_err = 0.08 * (t / TWO_PI).powf(-0.75);
        if v.abs() < rs_err.max(1e-2) || t < 50.0 {
            em_z(t, self.tables)
        } else {
            v
        }
    }

    /// Find exactly `k` zeros inside `(a, b)` (a Gram block); Rosser's rule
    /// guarantees they exist in this range of heights.
    fn hunt_block(&self, a: f64, b: f64, k: usize) -> Vec<(f64, f64)> {
        let mut points = (k + 1).max(8);
        for _ in 0..14 {
            let step = (b - a) / points as f64;
            let mut brackets = Vec::with_capacity(k);
            let mut t_prev = a;
            let mut z_prev = self.z_scan(a);
            for i in 1..=points {
                let t = a + step * i as f64;
                let z = self.z_scan(t);
                if z_prev.signum() != z.signum() {
                    brackets.push((t_prev, t));
                }
                t_prev = t;
                z_prev = z;
            }
            if brackets.len() >= k {
                if brackets.len() > k {
                    // spurious extra crossings would break the count; with
                    // the EM escalation this should never happen
                    eprintln!(
                        "warning: {} crossings where {k} expected in ({a}, {b}); refining",
                        brackets.len()
                    );
                    points *= 2;
                    continue;
                }
                return brackets;
            }
            points *= 2;
        }
        panic!("could not isolate {k} zeros in Gram block ({a}, {b})");
    }

    /// Polish a bracketed zero with the accurate evaluator: bisection to
    /// secure the bracket, then secant iterations.
    fn polish(&self, mut lo: f64, mut hi: f64) -> f64 {
        let mut f_lo = em_z(lo, self.tables);
        let mut f_hi = em_z(hi, self.tables);
        let mut widen = hi - lo;
        while f_lo.signum() == f_hi.signum() {
            // scan bracket came from the cheap evaluator; widen until the
            // accurate one agrees there is a crossing
            lo -= widen;
            hi += widen;
            widen *= 2.0;
            f_lo = em_z(lo, self.tables);
            f_hi = em_z(hi, self.tables);
        }
        for _ in 0..3 {
            let mid = 0.5 * (lo + hi);
            let f_mid = em_z(mid, self.tables);
            if f_mid.signum() == f_lo.signum() {
                lo = mid;
                f_lo = f_mid;
            } else {
                hi = mid;
                f_hi = f_mid;
            }
        }
        // secant with bracket fallback
        let (mut x0, mut f0, mut x1, mut f1) = (lo, f_lo, hi, f_hi);
        for _ in 0..60 {
            let dx = f1 * (x1 - x0) / (f1 - f0);
            let mut x2 = x1 - dx;
            if !(lo..=hi).contains(&x2) {
                x2 = 0.5 * (lo + hi);
            }
            let f2 = em_z(x2, self.tables);
            if f2.signum() == f_lo.signum() {
                lo = x2;
                f_lo = f2;
            } else {
                hi = x2;
                f_hi = f2;
            }
            x0 = x1;
            f0 = f1;
            x1 = x2;
            f1 = f2;
            if (x1 - x0).abs() < 5e-11 {
                return x1;
            }
            if (hi - lo).abs() < 5e-11 {
                break;
            }
        }
        0.5 * (lo + hi)
    }
}

// ---------------------------------------------------------------------------
// main
// ---------------------------------------------------------------------------

fn smooth_count(t: f64) -> f64 {
    let u = t / TWO_PI;
    u * u.ln() - u + 0.875
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let count: usize = args
        .get(1)
        .map(|s| s.parse().expect("COUNT must be an integer"))
        .unwrap_or(100_000);
    let prefix = args
        .get(2)
        .cloned()
        .unwrap_or_else(|| "crates/li-lab/data/zeros-100k".to_string());

    // Gram points g_{-1} .. g_{count+margin}
    eprintln!("locating Gram points ...");
    let margin = 64;
    let mut gram = Vec::with_capacity(count + margin + 2);
    let mut seed = 9.7;
    for j in -1..=(count as i64 + margin as i64) {
        let g = gram_point(j, seed);
        gram.push(g);
        seed = g + TWO_PI / (g / TWO_PI).ln().max(1.0);
    }

    let max_t = gram[gram.len() - 1] + 10.0;
    let tables = EmTables::new((max_t / 4.0).ceil() as usize + 64);
    let hunter = Hunter { tables: &tables };

    // classify Gram points: good when (-1)^j Z(g_j) > 0
    eprintln!("classifying Gram points ...");
    let good: Vec<bool> = gram
        .par_iter()
        .enumerate()
        .map(|(idx, &g)| {
            let j = idx as i64 - 1;
            let z = hunter.z_scan(g);
            let sign = if j.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            sign * z > 0.0
        })
        .collect();

    // Gram blocks: consecutive good points bracket blocks whose length
    // equals the number of zeros inside
    eprintln!("hunting zeros ...");
    let mut blocks: Vec<(usize, usize)> = Vec::new(); // index ranges into `gram`
    let mut start = 0usize;
    assert!(good[0], "g_-1 must be a good Gram point");
    for idx in 1..gram.len() {
        if good[idx] {
            blocks.push((start, idx));
            start = idx;
        }
    }

    let mut zeros: Vec<f64> = blocks
        .par_iter()
        .flat_map_iter(|&(s, e)| {
            let k = e - s;
            let brackets = hunter.hunt_block(gram[s], gram[e], k);
            brackets.into_iter().map(|(lo, hi)| hunter.polish(lo, hi))
        })
        .collect();
    zeros.sort_by(f64::total_cmp);
    assert!(
        zeros.len() >= count,
        "found only {} zeros, need {count}",
        zeros.len()
    );
    zeros.truncate(count);

    // ------------------------------------------------------------------
    // validation
    // ------------------------------------------------------------------
    eprintln!("validating ...");
    for (i, w) in zeros.windows(2).enumerate() {
        assert!(w[0] < w[1], "ordering violation at index {i}");
    }
    for (i, &t) in zeros.iter().enumerate() {
        let dev = ((i + 1) as f64 - smooth_count(t)).abs();
        let band = 3.0 + 0.5 * t.ln();
        assert!(
            dev < band,
            "counting deviation {dev} outside band {band} at zero {} (t = {t})",
            i + 1
        );
    }

    // anchors computed by an independent package (20+ digits)
    let refs_path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../tools/ref-zeros-sparse.txt");
    let mut max_anchor_dev = 0.0f64;
    if let Ok(text) = std::fs::read_to_string(&refs_path) {
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let k: usize = parts.next().unwrap().parse().unwrap();
            let t_ref: f64 = parts.next().unwrap().parse().unwrap();
            if k <= zeros.len() {
                let dev = (zeros[k - 1] - t_ref).abs();
                max_anchor_dev = max_anchor_dev.max(dev);
                assert!(
                    dev < 5e-8,
                    "zero #{k} = {} deviates from anchor {t_ref} by {dev}",
                    zeros[k - 1]
                );
            }
        }
        eprintln!("anchor check: max deviation {max_anchor_dev:.2e}");
    } else {
        eprintln!("warning: no anchor file at {}", refs_path.display());
    }

    // the bundled 30-digit table of the first hundred ordinates
    let bundled_path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../li-lab/data/zeros-first100.txt");
    if let Ok(text) = std::fs::read_to_string(&bundled_path) {
        for (i, line) in text
            .lines()
            .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .enumerate()
        {
            let t_ref: f64 = line.trim().parse().unwrap();
            let dev = (zeros[i] - t_ref).abs();
            assert!(dev < 5e-9, "zero #{} deviates from bundled table by {dev}", i + 1);
        }
        eprintln!("bundled first-100 check passed");
    }

    // ------------------------------------------------------------------
    // output
    // ------------------------------------------------------------------
    let mut body = String::with_capacity(count * 16);
    let _ = writeln!(
        body,
        "# first {count} nontrivial zeta zero ordinates (Riemann-Siegel scan, Euler-Maclaurin polish, 9 decimals)"
    );
    for &t in &zeros {
        let _ = writeln!(body, "{t:.9}");
    }
    let txt_path = format!("{prefix}.txt");
    std::fs::write(&txt_path, &body).expect("write table");

    let mut hasher = Sha256::new();
    hasher.update(body.as_bytes());
    let digest = hasher.finalize();
    let mut checksum = String::with_capacity(64);
    for b in digest {
        let _ = write!(checksum, "{b:02x}");
    }
    let meta = serde_json::json!({
        "source": "gen-zeros (Riemann-Siegel scan over Gram blocks, f64 Euler-Maclaurin polish)",
        "digits": 9,
        "count": count,
        "T": zeros[count - 1],
        "checksum_sha256": checksum,
    });
    std::fs::write(
        format!("{prefix}.json"),
        serde_json::to_string_pretty(&meta).unwrap() + "\n",
    )
    .expect("write metadata");

    println!(
        "wrote {count} ordinates to {txt_path}; T = {:.9}, checksum {}",
        zeros[count - 1],
        &checksum[..16]
    );
}
