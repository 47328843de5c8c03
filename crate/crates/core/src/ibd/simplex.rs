use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::expr::{eval, Env, Expr};
use crate::oracle::{mc_simplex, quad_1d, quad_oscillatory, richardson_limit, McResult, QuadResult};
use crate::special::gamma;

/// Closest allowed spacing of the parameters (and distance from zero)
/// before the closed form hands over to the perturbed evaluation.
const DEGENERATE_GAP: f64 = 0.05;
const PERTURBATION_LEVELS: usize = 6;

/// Integration data on the standard simplex `S_n = {x ≥ 0, Σx ≤ 1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexSpec {
    /// Laplace parameters `a_1..a_n`.
    pub a: Vec<Complex64>,
    /// Weight exponents `α_i` of `Π x_i^{α_i - 1}`.
    pub alpha: Option<Vec<f64>>,
    /// Profile `f(t)` of the weighted form, a function of `t`.
    pub profile: Option<Expr>,
}

impl SimplexSpec {
    pub fn new(a: Vec<Complex64>) -> Self {
        SimplexSpec { a, alpha: None, profile: None }
    }

    pub fn real(a: &[f64]) -> Self {
        SimplexSpec::new(a.iter().map(|x| Complex64::new(*x, 0.0)).collect())
    }

    pub fn weighted(alpha: Vec<f64>, profile: Expr) -> Self {
        SimplexSpec { a: vec![Complex64::new(0.0, 0.0); alpha.len()], alpha: Some(alpha), profile: Some(profile) }
    }

    pub fn dimension(&self) -> usize {
        self.a.len()
    }

    pub fn laplace(&self) -> Result<Complex64> {
        simplex_laplace(&self.a)
    }

    pub fn laplace_via_heaviside(&self, tol: f64) -> Result<QuadResult> {
        let re: Vec<f64> = self.a.iter().map(|z| z.re).collect();
        if self.a.iter().any(|z| z.im != 0.0) {
            return Err(Error::InvalidParameter("Fourier route needs real parameters".into()));
        }
        simplex_laplace_via_heaviside(&re, tol)
    }

    pub fn weighted_reduce(&self, u: f64, samples: usize, seed: u64) -> Result<WeightedReport> {
        match (&self.alpha, &self.profile) {
            (Some(alpha), Some(f)) => simplex_weighted_reduce(alpha, f, "t", u, samples, seed),
            _ => Err(Error::InvalidParameter("weighted form needs exponents and a profile".into())),
        }
    }
}

fn sorted(a: &[Complex64]) -> Vec<Complex64> {
    let mut v = a.to_vec();
    v.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    v
}

fn is_degenerate(a: &[Complex64]) -> bool {
    a.iter()
        .enumerate()
        .any(|(k, ak)| ak.norm() < DEGENERATE_GAP || a[k + 1..].iter().any(|ai| (ai - ak).norm() < DEGENERATE_GAP))
}

fn closed_form(a: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (k, ak) in a.iter().enumerate() {
        let g = (1.0 - (-ak).exp()) / ak;
        let denom: Complex64 = a.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, ai)| ai - ak).product();
        acc += g / denom;
    }
    acc
}

/// `∫_{S_n} e^{-a·x} dx = Σ_k (e^{-a_k} - 1) / ((-a_k) Π_{i≠k} (a_i - a_k))`
/// for pairwise distinct, nonzero `a`.
pub fn simplex_laplace_closed_form(a: &[Complex64]) -> Result<Complex64> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
    }
    let a = sorted(a);
    for (k, ak) in a.iter().enumerate() {
        if *ak == Complex64::new(0.0, 0.0) || a[k + 1..].contains(ak) {
            return Err(Error::InvalidParameter("parameters must be distinct and nonzero".into()));
        }
    }
    Ok(closed_form(&a))
}

/// `∫_{S_n} e^{-a·x} dx` for any `a`.
///
/// Repeated, zero or nearly coincident parameters are moved apart as
/// `a_j + iε(j+1)` and the closed form is extrapolated to `ε = 0`.
pub fn simplex_laplace(a: &[Complex64]) -> Result<Complex64> {
    if a.is_empty() {
        return Err(Error::InvalidParameter("simplex dimension must be positive".into()));
    }
    let a = sorted(a);
    if !is_degenerate(&a) {
        return Ok(closed_form(&a));
    }
    let n = a.len();
    let perturbed = |eps: f64| {
        let b: Vec<Complex64> =
            a.iter().enumerate().map(|(j, aj)| aj + Complex64::new(0.0, eps * (j + 1) as f64)).collect();
        closed_form(&b)
    };
    Ok(richardson_limit(perturbed, 1.0 / n as f64, PERTURBATION_LEVELS)?.value)
}

/// The same integral from the Fourier representation of the step
/// function: `1/(2Πa) + (1/π) ∫_0^∞ Im(e^{iy} / Π(a_j + iy)) / y dy`.
pub fn simplex_laplace_via_heaviside(a: &[f64], tol: f64) -> Result<QuadResult> {
    if a.is_empty() || a.iter().any(|x| !(*x > 0.0)) {
        return Err(Error::InvalidParameter("Fourier route needs positive parameters".into()));
    }
    let prod: f64 = a.iter().product();
    let at_zero = (1.0 - a.iter().map(|x| 1.0 / x).sum::<f64>()) / prod;
    let f = |y: f64| {
        if y < 1e-8 {
            return at_zero;
        }
        let denom: Complex64 = a.iter().map(|aj| Complex64::new(*aj, y)).product();
        (Complex64::new(0.0, y).exp() / denom).im / y
    };
    let first_zero = if a.len() % 2 == 1 { PI / 2.0 } else { PI };
    let r = quad_oscillatory(f, first_zero, PI, tol * PI);
    if !r.converged {
        return Err(Error::NonConvergent(format!("oscillatory tail: {:.3e} ± {:.1e}", r.value, r.error_estimate)));
    }
    Ok(QuadResult { value: 0.5 / prod + r.value / PI, error_estimate: r.error_estimate / PI, ..r })
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedReport {
    /// `Π Γ(α_i) / Γ(Σα) ∫_0^1 f(t) e^{-u t} t^{Σα - 1} dt`.
    pub reduced: QuadResult,
    /// Monte Carlo estimate of `∫_{S_n} f(Σx) e^{-u Σx} Π x_i^{α_i - 1} dx`.
    pub direct: McResult,
}

fn real_profile<'a>(f: &'a Expr, var: &str) -> Result<impl Fn(f64) -> f64 + 'a> {
    for t in [0.0, 0.5, 1.0] {
        let v = eval(f, &Env::new().with(var, t))?;
        if v.im.abs() > 1e-12 * v.re.abs().max(1.0) {
            return Err(Error::InvalidParameter(format!("profile `{f}` is not real on [0, 1]")));
        }
    }
    let var = var.to_string();
    Ok(move |t: f64| eval(f, &Env::new().with(&var, t)).map(|v| v.re).unwrap_or(f64::NAN))
}

/// Both sides of the reduction of a Dirichlet-weighted simplex integral of
/// a function of `Σx` to a single integral over `[0, 1]`.
pub fn simplex_weighted_reduce(
    alpha: &[f64],
    f: &Expr,
    var: &str,
    u: f64,
    samples: usize,
    seed: u64,
) -> Result<WeightedReport> {
    if alpha.is_empty() || alpha.iter().any(|a| !(*a > 0.0)) {
        return Err(Error::InvalidParameter("weight exponents must be positive".into()));
    }
    if !(u >= 0.0) {
        return Err(Error::InvalidParameter("need u ≥ 0".into()));
    }
    let profile = real_profile(f, var)?;
    let total: f64 = alpha.iter().sum();
    let norm = alpha.iter().map(|a| gamma(*a)).product::<f64>() / gamma(total);
    let r = quad_1d(|t| profile(t) * (-u * t).exp() * t.powf(total - 1.0), 0.0, 1.0, 1e-13);
    if !r.converged {
        return Err(Error::NonConvergent(format!("profile integral: {:.3e} ± {:.1e}", r.value, r.error_estimate)));
    }
    let reduced = QuadResult { value: r.value * norm, error_estimate: r.error_estimate * norm, ..r };
    let direct = mc_simplex(
        |x: &[f64]| {
            let t: f64 = x.iter().sum();
            let w: f64 = x.iter().zip(alpha).map(|(x, a)| x.powf(a - 1.0)).product();
            profile(t) * (-u * t).exp() * w
        },
        alpha.len(),
        samples,
        seed,
    );
    Ok(WeightedReport { reduced, direct })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn real(a: &[f64]) -> Vec<Complex64> {
        a.iter().map(|x| Complex64::new(*x, 0.0)).collect()
    }

    #[test]
    fn low_dimensional_values() {
        let e1 = (-1.0f64).exp();
        let v = simplex_laplace(&real(&[1.0])).unwrap();
        assert!((v.re - (1.0 - e1)).abs() < 1e-15);
        let v = simplex_laplace(&real(&[1.0, 2.0])).unwrap();
        let want = (1.0 - e1) + ((-2.0f64).exp() - 1.0) / 2.0;
        assert!((v.re - want).abs() < 1e-15);
        assert!((want - 0.199_789).abs() < 1e-6);
    }

    #[test]
    fn degenerate_parameters() {
        let v = simplex_laplace(&real(&[0.0, 0.0, 0.0])).unwrap();
        assert!((v - Complex64::new(1.0 / 6.0, 0.0)).norm() < 1e-9, "{v}");
        // e^{-a} over S_2 with a = (1, 1): 1 - 2/e
        let v = simplex_laplace(&real(&[1.0, 1.0])).unwrap();
        assert!((v.re - (1.0 - 2.0 * (-1.0f64).exp())).abs() < 1e-9, "{v}");
        assert!(simplex_laplace_closed_form(&real(&[1.0, 1.0])).is_err());
    }

    #[test]
    fn permutation_invariance_is_exact() {
        let a = real(&[0.7, 2.5, 1.3, 4.0]);
        let base = simplex_laplace(&a).unwrap();
        let mut b = a.clone();
        b.reverse();
        assert_eq!(simplex_laplace(&b).unwrap(), base);
        b.swap(0, 2);
        assert_eq!(simplex_laplace(&b).unwrap(), base);
    }

    #[test]
    fn volume_limit() {
        for n in 1..=5usize {
            let a: Vec<f64> = (1..=n).map(|k| k as f64).collect();
            let r = richardson_limit(
                |h| simplex_laplace(&real(&a.iter().map(|x| x * h).collect::<Vec<_>>())).unwrap(),
                1.0 / n as f64,
                6,
            )
            .unwrap();
            let want = 1.0 / (1..=n).product::<usize>() as f64;
            assert!((r.value.re - want).abs() < 1e-6, "n={n}: {r:?}");
        }
    }

    #[test]
    fn fourier_route() {
        for a in [vec![1.0], vec![1.0, 2.0], vec![0.5, 1.5, 3.0], vec![50.0]] {
            let r = simplex_laplace_via_heaviside(&a, 1e-8).unwrap();
            let c = simplex_laplace(&real(&a)).unwrap().re;
            assert!((r.value - c).abs() < 1e-6, "{a:?}: {r:?} vs {c}");
        }
    }

    #[test]
    fn weighted_reduction() {
        let one = parse("1").unwrap();
        let r = simplex_weighted_reduce(&[1.0, 1.0, 1.0], &one, "t", 0.0, 100_000, 3).unwrap();
        assert!((r.reduced.value - 1.0 / 6.0).abs() < 1e-10);
        assert!((r.direct.estimate - 1.0 / 6.0).abs() < 1e-12, "{:?}", r.direct);
        let t = parse("t").unwrap();
        let r = simplex_weighted_reduce(&[1.0, 1.0], &t, "t", 0.0, 100_000, 3).unwrap();
        assert!((r.reduced.value - 1.0 / 3.0).abs() < 1e-12);
        assert!(r.direct.within_sigmas(1.0 / 3.0, 3.0), "{:?}", r.direct);
        let e = parse("exp(-t)").unwrap();
        let r = simplex_weighted_reduce(&[1.0, 2.0, 1.5], &e, "t", 0.0, 200_000, 5).unwrap();
        assert!(r.direct.within_sigmas(r.reduced.value, 3.0), "{r:?}");
    }
}
