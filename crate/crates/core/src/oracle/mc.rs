use super::rng::Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct McResult {
    pub estimate: f64,
    pub standard_error: f64,
    pub sample_count: usize,
    pub seed: u64,
    /// Set when a handful of samples dominate the second moment, which
    /// makes the standard error unreliable.
    pub warning: Option<String>,
}

impl McResult {
    /// `|estimate - truth| ≤ k σ`.
    pub fn within_sigmas(&self, truth: f64, k: f64) -> bool {
        (self.estimate - truth).abs() <= k * self.standard_error
    }
}

struct Moments {
    n: usize,
    mean: f64,
    m2: f64,
    max_sq: f64,
    sum_sq: f64,
}

impl Moments {
    fn new() -> Self {
        Moments { n: 0, mean: 0.0, m2: 0.0, max_sq: 0.0, sum_sq: 0.0 }
    }

    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
        self.max_sq = self.max_sq.max(x * x);
        self.sum_sq += x * x;
    }

    fn finish(self, scale: f64, seed: u64) -> McResult {
        let var = if self.n > 1 { self.m2 / (self.n - 1) as f64 } else { 0.0 };
        let warning = if self.n >= 100 && self.max_sq > 0.1 * self.sum_sq {
            Some("a single sample carries over 10% of the second moment; variance may be infinite".into())
        } else if !self.mean.is_finite() {
            Some("non-finite sample".into())
        } else {
            None
        };
        McResult {
            estimate: self.mean * scale,
            standard_error: (var / self.n.max(1) as f64).sqrt() * scale.abs(),
            sample_count: self.n,
            seed,
            warning,
        }
    }
}

/// Monte Carlo estimate of `∫_{S_n} f` over the standard simplex
/// `{x ≥ 0, Σ x ≤ 1}`.
///
/// Points are the first `n` coordinates of `(E_0, …, E_n) / Σ E_j` with
/// `E_j` standard exponential, which is uniform on `S_n`.
pub fn mc_simplex<F: Fn(&[f64]) -> f64>(f: F, n: usize, samples: usize, seed: u64) -> McResult {
    let mut rng = Rng::new(seed);
    let mut e = vec![0.0; n + 1];
    let mut m = Moments::new();
    for _ in 0..samples {
        let mut total = 0.0;
        for v in e.iter_mut() {
            *v = rng.exponential();
            total += *v;
        }
        for v in e.iter_mut() {
            *v /= total;
        }
        m.push(f(&e[..n]));
    }
    let volume = 1.0 / (1..=n).map(|k| k as f64).product::<f64>();
    m.finish(volume, seed)
}

/// Monte Carlo estimate of `∫_{[0,∞)^n} f(x) e^{-b·x} dx` by drawing
/// `x_k ~ Exp(b_k)`.
pub fn mc_orthant_exp<F: Fn(&[f64]) -> f64>(f: F, b: &[f64], samples: usize, seed: u64) -> McResult {
    let mut rng = Rng::new(seed);
    let mut x = vec![0.0; b.len()];
    let mut m = Moments::new();
    for _ in 0..samples {
        for (xk, bk) in x.iter_mut().zip(b) {
            *xk = rng.exponential() / bk;
        }
        m.push(f(&x));
    }
    m.finish(1.0 / b.iter().product::<f64>(), seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_volume() {
        let r = mc_simplex(|_| 1.0, 3, 1000, 1);
        assert_eq!(r.estimate, 1.0 / 6.0);
        assert_eq!(r.standard_error, 0.0);
    }

    #[test]
    fn simplex_linear() {
        let r = mc_simplex(|x| x[0] + x[1], 2, 200_000, 3);
        assert!(r.within_sigmas(1.0 / 3.0, 4.0), "{r:?}");
    }

    #[test]
    fn orthant_constant() {
        let r = mc_orthant_exp(|_| 1.0, &[2.0, 3.0], 100, 5);
        assert!((r.estimate - 1.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn deterministic() {
        let a = mc_orthant_exp(|x| 1.0 / (1.0 + x[0] + x[1]), &[1.0, 1.0], 10_000, 42);
        let b = mc_orthant_exp(|x| 1.0 / (1.0 + x[0] + x[1]), &[1.0, 1.0], 10_000, 42);
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.standard_error.to_bits(), b.standard_error.to_bits());
    }
}
