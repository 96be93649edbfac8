//! Exact zero test for sums of roots of unity.
//!
//! `Σ e^{2πi·t_k}` with rational turns `t_k` of common denominator `L`
//! vanishes iff the integer polynomial `Σ x^{t_k·L}` is divisible by the
//! cyclotomic polynomial `Φ_L`.

use crate::phase::Turn;
use num_integer::Integer;

/// Largest common denominator handled exactly.
pub const MAX_EXACT_ORDER: i64 = 1 << 14;

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_polynomial(n: usize) -> Vec<i64> {
    assert!(n >= 1);
    let divisors: Vec<usize> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    // numerator: product of (x^d - 1) over μ(n/d) = +1
    let mut poly = vec![1i64];
    let mut denominators = Vec::new();
    for &d in &divisors {
        match mobius(n / d) {
            1 => poly = mul_x_pow_minus_one(&poly, d),
            -1 => denominators.push(d),
            _ => {}
        }
    }
    for d in denominators {
        poly = div_x_pow_minus_one(&poly, d);
    }
    poly
}

fn mobius(mut n: usize) -> i32 {
    let mut result = 1;
    let mut f = 2;
    while f * f <= n {
        if n.is_multiple_of(f) {
            n /= f;
            if n.is_multiple_of(f) {
                return 0;
            }
            result = -result;
        }
        f += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn mul_x_pow_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; p.len() + d];
    for (i, &c) in p.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

// exact division by (x^d - 1); the caller guarantees divisibility
fn div_x_pow_minus_one(p: &[i64], d: usize) -> Vec<i64> {
    let deg = p.len() - 1;
    assert!(deg >= d);
    let mut rem = p.to_vec();
    let mut q = vec![0i64; deg - d + 1];
    for i in (d..=deg).rev() {
        let c = rem[i];
        q[i - d] = c;
        rem[i] = 0;
        rem[i - d] += c;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// `Some(true)` iff the sum of the given roots of unity is exactly zero.
///
/// Returns `None` when the common denominator exceeds [`MAX_EXACT_ORDER`].
pub fn sum_vanishes(turns: &[Turn]) -> Option<bool> {
    let order = turns.iter().fold(1i64, |acc, t| acc.lcm(&t.den()));
    if order > MAX_EXACT_ORDER {
        return None;
    }
    let n = order as usize;
    let mut counts = vec![0i64; n];
    for t in turns {
        let e = t.numerator_over(order).expect("order is a common multiple");
        counts[e as usize] += 1;
    }
    let phi = cyclotomic_polynomial(n);
    Some(remainder_is_zero(counts, &phi))
}

fn remainder_is_zero(mut p: Vec<i64>, monic: &[i64]) -> bool {
    let m = monic.len() - 1;
    for i in (m..p.len()).rev() {
        let c = p[i];
        if c == 0 {
            continue;
        }
        for (j, &a) in monic.iter().enumerate() {
            p[i - m + j] -= c * a;
        }
    }
    p.iter().all(|&c| c == 0)
}
