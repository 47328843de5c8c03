use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extrapolated {
    pub value: Complex64,
    /// Difference between the chosen diagonal entry and its predecessor.
    pub error_estimate: f64,
}

/// `lim_{h→0} g(h)` from the Richardson table over `h0 / 2^i`,
/// `i = 0..levels`, assuming an expansion in integer powers of `h`.
pub fn richardson_limit<G: Fn(f64) -> Complex64>(g: G, h0: f64, levels: usize) -> Result<Extrapolated> {
    if levels < 2 {
        return Err(Error::InvalidParameter("Richardson needs at least two levels".into()));
    }
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(levels);
    let mut best: Option<Extrapolated> = None;
    for i in 0..levels {
        let h = h0 / (1u64 << i) as f64;
        let mut row = vec![g(h)];
        for j in 1..=i {
            let factor = (1u64 << j) as f64 - 1.0;
            let next = row[j - 1] + (row[j - 1] - rows[i - 1][j - 1]) / factor;
            row.push(next);
        }
        if i > 0 {
            let diff = (row[i] - rows[i - 1][i - 1]).norm();
            if diff.is_finite() && best.is_none_or(|b| diff < b.error_estimate) {
                best = Some(Extrapolated { value: row[i], error_estimate: diff });
            }
        }
        rows.push(row);
    }
    best.ok_or_else(|| Error::NonConvergent("Richardson table has no finite entries".into()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EulerSum {
    pub value: f64,
    /// Difference between the chosen entry and the previous averaging level.
    pub stabilization: f64,
    pub depth: usize,
}

/// Euler (repeated averaging) transform of a sequence of partial sums.
///
/// Column `j` of the table averages neighbouring entries of column `j - 1`;
/// the returned value is the last entry of the column whose last entry moved
/// least from the previous column's.
pub fn euler_transform(partial_sums: &[f64]) -> Result<EulerSum> {
    if partial_sums.len() < 3 {
        return Err(Error::InvalidParameter("need at least three partial sums".into()));
    }
    let mut col = partial_sums.to_vec();
    let mut prev_last = *col.last().unwrap();
    let mut best: Option<EulerSum> = None;
    let mut depth = 0;
    while col.len() > 1 {
        col = col.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
        depth += 1;
        let last = *col.last().unwrap();
        let diff = (last - prev_last).abs();
        if diff.is_finite() && best.is_none_or(|b| diff < b.stabilization) {
            best = Some(EulerSum { value: last, stabilization: diff, depth });
        }
        prev_last = last;
    }
    let best = best.ok_or_else(|| Error::NonConvergent("no finite averaging level".into()))?;
    if best.stabilization > 1e-3 * best.value.abs().max(1.0) {
        return Err(Error::NonConvergent(format!(
            "Euler transform did not stabilize (last change {:.3e})",
            best.stabilization
        )));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn partial_sums(term: impl Fn(usize) -> f64, n: usize) -> Vec<f64> {
        let mut acc = 0.0;
        (0..n)
            .map(|k| {
                acc += term(k);
                acc
            })
            .collect()
    }

    fn sign(k: usize) -> f64 {
        if k.is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    #[test]
    fn grandi() {
        let s = euler_transform(&partial_sums(sign, 40)).unwrap();
        assert!((s.value - 0.5).abs() < 1e-15);
    }

    #[test]
    fn alternating_naturals() {
        let s = euler_transform(&partial_sums(|k| sign(k) * k as f64, 40)).unwrap();
        assert!((s.value + 0.25).abs() < 1e-14);
    }

    #[test]
    fn log_two() {
        let s = euler_transform(&partial_sums(|k| sign(k) / (k + 1) as f64, 60)).unwrap();
        assert!((s.value - std::f64::consts::LN_2).abs() < 1e-12, "{s:?}");
    }

    #[test]
    fn growing_terms_do_not_stabilize() {
        assert!(euler_transform(&partial_sums(|k| 3f64.powi(k as i32), 30)).is_err());
    }

    #[test]
    fn richardson_on_smooth_limits() {
        let r = richardson_limit(|h| Complex64::new((1.0 - (-h).exp()) / h, 0.0), 0.5, 12).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-12);
        let i = Complex64::i();
        let r = richardson_limit(|h| ((h + i).ln() - (h - i).ln()) / (2.0 * i), 0.25, 12).unwrap();
        assert!((r.value.re - std::f64::consts::FRAC_PI_2).abs() < 1e-12, "{r:?}");
    }
}
