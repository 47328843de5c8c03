//! Hurwitz and Riemann zeta on the real line via Euler–Maclaurin summation.
//!
//! `ζ(s, a) = Σ_{k<N} (a+k)^{-s} + (a+N)^{1-s}/(s-1) + (a+N)^{-s}/2
//!          + Σ_{j=1}^{M} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · (a+N)^{-s-2j+1}`
//!
//! The tail formula is the analytic continuation, so the same expression is
//! valid for every real `s ≠ 1`.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::exact::{factorial, q_to_f64, qi, Q};

const DIRECT_TERMS: usize = 24;
const CORRECTION_TERMS: usize = 16;

/// `B_{2j} / (2j)!` for `j = 1..=CORRECTION_TERMS`, computed exactly once.
fn scaled_bernoulli() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = 2 * CORRECTION_TERMS;
        let b = bernoulli_numbers(n_max);
        (1..=CORRECTION_TERMS)
            .map(|j| q_to_f64(&(b[2 * j].clone() / Q::from_integer(factorial(2 * j as u64)))))
            .collect()
    })
}

/// Exact Bernoulli numbers `B_0..=B_n` (convention `B_1 = +1/2`) by the
/// Akiyama–Tanigawa recurrence.
pub fn bernoulli_numbers(n: usize) -> Vec<Q> {
    let mut out = Vec::with_capacity(n + 1);
    let mut row: Vec<Q> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        row.push(Q::new(1.into(), ((m + 1) as i64).into()));
        for j in (1..=m).rev() {
            let diff = row[j - 1].clone() - row[j].clone();
            row[j - 1] = qi(j as i64) * diff;
        }
        out.push(row[0].clone());
    }
    out
}

/// Hurwitz zeta `ζ(s, a)` for real `s ≠ 1`, `a > 0`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    hurwitz_zeta_with(s, a, DIRECT_TERMS)
}

/// Same as [`hurwitz_zeta`] with an explicit number of directly summed terms.
pub fn hurwitz_zeta_with(s: f64, a: f64, direct_terms: usize) -> Result<f64> {
    if s == 1.0 {
        return Err(Error::Domain("zeta has a pole at s = 1".into()));
    }
    if !(a > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("hurwitz zeta needs a > 0, got s={s}, a={a}")));
    }
    let n = direct_terms.max(s.abs().ceil() as usize / 2);
    let mut direct = 0.0;
    for k in (0..n).rev() {
        direct += (a + k as f64).powf(-s);
    }
    let x = a + n as f64;
    let mut tail = x.powf(1.0 - s) / (s - 1.0) + 0.5 * x.powf(-s);
    let mut rising = s; // s(s+1)…(s+2j-2)
    let mut power = x.powf(-s - 1.0);
    let inv_x2 = 1.0 / (x * x);
    for (j, c) in scaled_bernoulli().iter().enumerate() {
        let term = c * rising * power;
        tail += term;
        if term == 0.0 || term.abs() < 1e-18 * (direct + tail).abs() {
            break;
        }
        let j = j as f64 + 1.0;
        rising *= (s + 2.0 * j - 1.0) * (s + 2.0 * j);
        power *= inv_x2;
    }
    Ok(direct + tail)
}

/// Riemann zeta `ζ(s) = ζ(s, 1)`.
pub fn riemann_zeta(s: f64) -> Result<f64> {
    hurwitz_zeta(s, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use num_traits::Zero;
    use std::f64::consts::PI;

    #[test]
    fn bernoulli_table() {
        let b = bernoulli_numbers(12);
        assert_eq!(b[1], q(1, 2));
        assert_eq!(b[2], q(1, 6));
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[12], q(-691, 2730));
        assert!(b[3].is_zero() && b[11].is_zero());
    }

    #[test]
    fn zeta_two() {
        let z = riemann_zeta(2.0).unwrap();
        assert!((z - PI * PI / 6.0).abs() < 1e-14);
    }

    #[test]
    fn shift_recurrence() {
        let (s, a) = (2.5, 0.7);
        let lhs = hurwitz_zeta(s, a).unwrap() - hurwitz_zeta(s, a + 1.0).unwrap();
        assert!((lhs - a.powf(-s)).abs() < 1e-12);
    }

    #[test]
    fn continuation_regime() {
        // two independent truncations must agree; reference −1.4603545088095868
        let a = hurwitz_zeta_with(0.5, 1.0, 24).unwrap();
        let b = hurwitz_zeta_with(0.5, 1.0, 48).unwrap();
        assert!((a - b).abs() < 1e-13);
        assert!((a + 1.460_354_508_809_586_8).abs() < 1e-12);
        // ζ(-1) = -1/12, ζ(0) = -1/2
        assert!((riemann_zeta(-1.0).unwrap() + 1.0 / 12.0).abs() < 1e-13);
        assert!((riemann_zeta(0.0).unwrap() + 0.5).abs() < 1e-13);
    }

    #[test]
    fn pole_is_an_error() {
        assert!(riemann_zeta(1.0).is_err());
        assert!(hurwitz_zeta(2.0, 0.0).is_err());
    }

    #[test]
    fn large_argument() {
        let z = riemann_zeta(300.0).unwrap();
        assert_eq!(z, 1.0);
        let z = riemann_zeta(40.0).unwrap();
        assert!((z - 1.0 - 2f64.powi(-40) - 3f64.powi(-40)).abs() <= f64::EPSILON);
    }
}
