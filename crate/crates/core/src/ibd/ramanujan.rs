use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::{cq_int, cq_real, factorial, gamma_half_integer, q, PiPoly, SqrtPiMonomial, Q};
use crate::expr::HeavisideConvention;
use crate::kernels::Kernel;
use crate::oracle::{quad_1d, quad_oscillatory, richardson_limit, Extrapolated, QuadResult};
use crate::psido::trig_power_expand;

/// Parameters of `I_{n,p} = ∫_0^∞ sin^{2n+1}(x) cos(2 p x) / x dx`.
#[derive(Debug, Clone, PartialEq)]
pub struct RamanujanParams {
    pub n: u32,
    pub p: Q,
}

impl RamanujanParams {
    pub fn new(n: u32, p: Q) -> Self {
        RamanujanParams { n, p }
    }

    /// True when some step `H(p + n + 1/2 - k)` sits exactly at its jump.
    pub fn at_jump(&self) -> bool {
        let t = self.p.clone() + Q::from_integer(self.n.into()) + q(1, 2);
        t.is_integer() && t >= Q::zero() && t <= Q::from_integer((2 * self.n + 1).into())
    }
}

/// `I_{n,p}` from the shift expansion of `sin^{2n+1}` acting on the step
/// kernel, evaluated exactly at `p`.
pub fn ramanujan_heaviside(params: &RamanujanParams, convention: HeavisideConvention) -> PiPoly {
    let op = trig_power_expand(2 * params.n + 1, &cq_real(q(1, 2))).expect("odd power");
    op.apply(&Kernel::heaviside())
        .scale_pi(&PiPoly::monomial(cq_int(1), 1))
        .eval_exact(&params.p, convention)
        .expect("steps evaluate exactly at rational points")
}

/// Values under both step conventions; they differ only at jumps.
#[derive(Debug, Clone, PartialEq)]
pub struct JumpValues {
    pub right_continuous: PiPoly,
    pub midpoint: PiPoly,
    pub at_jump: bool,
}

pub fn ramanujan_heaviside_both(params: &RamanujanParams) -> JumpValues {
    JumpValues {
        right_continuous: ramanujan_heaviside(params, HeavisideConvention::RightContinuous),
        midpoint: ramanujan_heaviside(params, HeavisideConvention::Midpoint),
        at_jump: params.at_jump(),
    }
}

/// `(-1)^p (√π/2) Γ(n+1) Γ(n+1/2) / (Γ(n-p+1) Γ(n+p+1))`, zero at the poles.
pub fn ramanujan_gamma(n: u32, p: i64) -> PiPoly {
    let n = n as i64;
    if n - p < 0 || n + p < 0 {
        return PiPoly::zero();
    }
    let sign = if p.rem_euclid(2) == 0 { Q::one() } else { -Q::one() };
    let ratio = Q::new(factorial(n as u64), factorial((n - p) as u64) * factorial((n + p) as u64));
    let lead = SqrtPiMonomial { coef: sign * ratio / Q::from_integer(2.into()), half_power: 1 };
    let half = gamma_half_integer(2 * n + 1).expect("positive half-integer");
    lead.mul(&half).to_pi_poly().expect("π power is integral")
}

/// Direct oscillatory quadrature of `I_{n,p}` for integer `p`, where the
/// integrand changes sign from one period `π` to the next.
pub fn ramanujan_oracle(n: u32, p: i64, tol: f64) -> QuadResult {
    let p = p as f64;
    let m = 2 * n as i32 + 1;
    let f = move |x: f64| {
        if x == 0.0 {
            return if n == 0 { 1.0 } else { 0.0 };
        }
        x.sin().powi(m) * (2.0 * p * x).cos() / x
    };
    let pi = std::f64::consts::PI;
    quad_oscillatory(f, pi, pi, tol)
}

/// Oracle for rational `p = r/s`: the numerator is periodic with period
/// `2sπ` and has zero mean, so the integral up to `K` periods has an
/// expansion in powers of `1/K`, which is extrapolated.
pub fn ramanujan_oracle_rational(n: u32, p: &Q, levels: usize) -> Result<Extrapolated> {
    const FIRST: usize = 2;
    let m = 2 * n as i32 + 1;
    let pf = crate::exact::q_to_f64(p);
    let period = 2.0 * std::f64::consts::PI * crate::exact::q_to_f64(&Q::from_integer(p.denom().clone()));
    let f = |x: f64| {
        if x == 0.0 {
            if n == 0 {
                1.0
            } else {
                0.0
            }
        } else {
            x.sin().powi(m) * (2.0 * pf * x).cos() / x
        }
    };
    let periods = FIRST << (levels.max(1) - 1);
    let mut cumulative = Vec::with_capacity(periods + 1);
    cumulative.push(0.0);
    for j in 0..periods {
        let a = j as f64 * period;
        let r = quad_1d(f, a, a + period, 1e-14);
        cumulative.push(cumulative[j] + r.value);
    }
    richardson_limit(
        |h| {
            let k = (1.0 / h).round() as usize;
            num_complex::Complex64::new(cumulative[k], 0.0)
        },
        1.0 / FIRST as f64,
        levels,
    )
}
