//! Gauss–Legendre nodes and weights at arbitrary precision, cached per
//! (order, precision). Nodes are refined by Newton iteration on the
//! Legendre recurrence starting from the classical cosine seeds.

use rug::Float;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

type Rule = Arc<(Vec<Float>, Vec<Float>)>;

fn cache() -> &'static Mutex<HashMap<(usize, u32), Rule>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Rule>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
fn legendre_pair(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p0 = Float::with_val(prec, 1u32);
    let mut p1 = x.clone();
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let mut next = Float::with_val(prec, (2 * k + 1) as u64);
        next *= x;
        next *= &p1;
        next -= Float::with_val(prec, k as u64) * &p0;
        next /= (k as u32) + 1;
        p0 = std::mem::replace(&mut p1, next);
    }
    // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
    let mut num = x.clone() * &p1;
    num -= &p0;
    num *= n as u32;
    let mut den = x.clone().square();
    den -= 1u32;
    (p1, num / den)
}

/// Nodes and weights of the `order`-point rule on `[-1, 1]`.
pub fn gauss_legendre(order: usize, prec: u32) -> Rule {
    if let Some(rule) = cache().lock().unwrap().get(&(order, prec)) {
        return Arc::clone(rule);
    }
    let mut nodes = Vec::with_capacity(order);
    let mut weights = Vec::with_capacity(order);
    for i in 0..order {
        let seed = (std::f64::consts::PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        let mut x = Float::with_val(prec, seed);
        // quadratic convergence from the f64 seed
        let iters = (prec as f64 / 50.0).log2().ceil().max(1.0) as usize + 3;
        for _ in 0..iters {
            let (p, dp) = legendre_pair(order, &x, prec);
            x -= p / dp;
        }
        let (_, dp) = legendre_pair(order, &x, prec);
        let mut w = Float::with_val(prec, 1u32);
        w -= x.clone().square();
        w *= dp.clone().square();
        let weight = Float::with_val(prec, 2u32) / w;
        nodes.push(x);
        weights.push(weight);
    }
    nodes.reverse();
    weights.reverse();
    let rule: Rule = Arc::new((nodes, weights));
    cache()
        .lock()
        .unwrap()
        .insert((order, prec), Arc::clone(&rule));
    rule
}

/// Integrate `f` over `[a, b]` with the `order`-point rule.
pub fn integrate<F: FnMut(&Float) -> Float>(
    a: &Float,
    b: &Float,
    order: usize,
    prec: u32,
    mut f: F,
) -> Float {
    let rule = gauss_legendre(order, prec);
    let half_width = Float::with_val(prec, b - a) / 2u32;
    let center = Float::with_val(prec, a + b) / 2u32;
    let mut acc = Float::new(prec);
    for (x, w) in rule.0.iter().zip(rule.1.iter()) {
        let mut t = half_width.clone();
        t *= x;
        t += &center;
        acc += f(&t) * w;
    }
    acc * half_width
}
