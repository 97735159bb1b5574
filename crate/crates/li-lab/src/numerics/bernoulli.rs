use rug::{Integer, Rational};
use std::sync::Mutex;

// Tangent numbers T_1, T_2, ... (tan x = sum T_n x^(2n-1)/(2n-1)!),
// computed by the Knuth–Buckholtz triangle. Everything downstream
// (Euler–Maclaurin corrections, Stirling series) pulls Bernoulli numbers
// from this cache.
static TANGENT: Mutex<Vec<Integer>> = Mutex::new(Vec::new());

fn ensure_tangent(n: usize) {
    let mut cache = TANGENT.lock().unwrap();
    if cache.len() >= n {
        return;
    }
    let n = (n + n / 2).max(16);
    let mut t: Vec<Integer> = Vec::with_capacity(n);
    t.push(Integer::from(1));
    for k in 1..n {
        let prev = t[k - 1].clone();
        t.push(prev * k as u64);
    }
    for k in 1..n {
        for j in k..n {
            let a = Integer::from(&t[j - 1] * (j - k) as u64);
            let b = Integer::from(&t[j] * (j - k + 2) as u64);
            t[j] = a + b;
        }
    }
    *cache = t;
}

/// Bernoulli number `B_{2q}` as an exact rational (`q >= 1`).
pub fn bernoulli(q: usize) -> Rational {
    assert!(q >= 1);
    ensure_tangent(q);
    let tq = TANGENT.lock().unwrap()[q - 1].clone();
    // B_{2q} = (-1)^(q-1) * 2q * T_q / (4^q (4^q - 1))
    let four_q = Integer::from(1) << (2 * q as u32);
    let den = Integer::from(&four_q - 1) * four_q;
    let mut num = tq * (2 * q as u64);
    if q % 2 == 0 {
        num = -num;
    }
    Rational::from((num, den))
}

/// `B_{2q} / (2q)!` as an exact rational, the coefficient shape used by
/// Euler–Maclaurin corrections.
pub fn bernoulli_over_factorial(q: usize) -> Rational {
    let fact: Integer = Integer::factorial(2 * q as u32).into();
    bernoulli(q) / fact
}
