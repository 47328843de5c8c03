//! Exact scalars: rationals, Gaussian rationals, and Laurent polynomials in π.
//!
//! Results such as `π/2`, `-π/8` or `π^3` are carried as [`PiPoly`] values so
//! that identities between two symbolic routes can be checked with zero
//! tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = num_rational::BigRational;

/// Gaussian rational `a + b i` with `a, b ∈ Q`.
pub type CQ = Complex<Q>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Exact (dyadic) rational equal to `x`. Panics on non-finite input.
pub fn q_from_f64(x: f64) -> Q {
    Q::from_float(x).unwrap_or_else(|| panic!("non-finite value {x} has no rational form"))
}

pub fn q_to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn cq(re: Q, im: Q) -> CQ {
    Complex::new(re, im)
}

pub fn cq_real(re: Q) -> CQ {
    Complex::new(re, Q::zero())
}

pub fn cq_int(n: i64) -> CQ {
    cq_real(qi(n))
}

/// The imaginary unit as a Gaussian rational.
pub fn cq_i() -> CQ {
    Complex::new(Q::zero(), Q::one())
}

pub fn cq_from_c64(z: Complex64) -> CQ {
    Complex::new(q_from_f64(z.re), q_from_f64(z.im))
}

pub fn cq_to_c64(z: &CQ) -> Complex64 {
    Complex64::new(q_to_f64(&z.re), q_to_f64(&z.im))
}

pub fn cq_is_zero(z: &CQ) -> bool {
    z.re.is_zero() && z.im.is_zero()
}

/// Integer power of a Gaussian rational; `None` for `0^negative`.
pub fn cq_powi(z: &CQ, n: i32) -> Option<CQ> {
    if n < 0 {
        if cq_is_zero(z) {
            return None;
        }
        let inv = cq_int(1) / z.clone();
        return cq_powi(&inv, -n);
    }
    let mut acc = cq_int(1);
    let mut base = z.clone();
    let mut e = n as u32;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    Some(acc)
}

/// Lexicographic order on `(re, im)`; used for canonical term ordering.
pub fn cmp_cq(a: &CQ, b: &CQ) -> std::cmp::Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for j in 0..k {
        acc = acc * BigInt::from(n - j) / BigInt::from(j + 1);
    }
    acc
}

/// A value `coef · π^(half_power / 2)`; closed under products and quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPiMonomial {
    pub coef: Q,
    pub half_power: i32,
}

impl SqrtPiMonomial {
    pub fn rational(coef: Q) -> Self {
        Self { coef, half_power: 0 }
    }

    pub fn pi_pow_half(half_power: i32) -> Self {
        Self { coef: Q::one(), half_power }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self { coef: &self.coef * &other.coef, half_power: self.half_power + other.half_power }
    }

    /// `None` when dividing by zero.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if other.coef.is_zero() {
            return None;
        }
        Some(Self { coef: &self.coef / &other.coef, half_power: self.half_power - other.half_power })
    }

    /// Converts to a [`PiPoly`] when the power of π is integral.
    pub fn to_pi_poly(&self) -> Option<PiPoly> {
        if self.half_power % 2 != 0 {
            return None;
        }
        Some(PiPoly::monomial(cq_real(self.coef.clone()), self.half_power / 2))
    }

    pub fn to_f64(&self) -> f64 {
        q_to_f64(&self.coef) * std::f64::consts::PI.powf(self.half_power as f64 / 2.0)
    }
}

/// Γ(twice / 2) for integer or half-integer arguments, exactly.
///
/// Returns `None` at the poles (non-positive integers). Half-integer values
/// come out as rational multiples of √π via `Γ(k + 1/2) = (2k)! √π / (4^k k!)`
/// and its reflection `Γ(1/2 - j) = (-4)^j j! √π / (2j)!`.
pub fn gamma_half_integer(twice: i64) -> Option<SqrtPiMonomial> {
    if twice.is_even() {
        let m = twice / 2;
        if m <= 0 {
            return None;
        }
        return Some(SqrtPiMonomial::rational(Q::from_integer(factorial((m - 1) as u64))));
    }
    let k = (twice - 1) / 2;
    let coef = if k >= 0 {
        let k = k as u64;
        Q::new(factorial(2 * k), BigInt::from(4).pow(k as u32) * factorial(k))
    } else {
        let j = (-k) as u64;
        Q::new(BigInt::from(-4).pow(j as u32) * factorial(j), factorial(2 * j))
    };
    Some(SqrtPiMonomial { coef, half_power: 1 })
}

/// A finite sum `Σ_k c_k π^k` with Gaussian-rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PiPoly {
    terms: BTreeMap<i32, CQ>,
}

impl PiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(cq_int(1))
    }

    pub fn constant(c: CQ) -> Self {
        Self::monomial(c, 0)
    }

    pub fn rational(r: Q) -> Self {
        Self::constant(cq_real(r))
    }

    /// `c · π^power`.
    pub fn monomial(c: CQ, power: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !cq_is_zero(&c) {
            terms.insert(power, c);
        }
        Self { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &CQ)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    /// Coefficient of `π^power`.
    pub fn coefficient(&self, power: i32) -> CQ {
        self.terms.get(&power).cloned().unwrap_or_else(|| cq_int(0))
    }

    /// Coefficient when the value is a single monomial `c π^power`, else `None`.
    pub fn as_monomial(&self) -> Option<(CQ, i32)> {
        match self.terms.len() {
            0 => Some((cq_int(0), 0)),
            1 => self.terms.iter().next().map(|(k, c)| (c.clone(), *k)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &CQ) -> Self {
        if cq_is_zero(c) {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, v)| (*k, v.clone() * c.clone())).collect() }
    }

    pub fn re(&self) -> Self {
        self.map_coefficients(|c| cq_real(c.re.clone()))
    }

    pub fn im(&self) -> Self {
        self.map_coefficients(|c| cq_real(c.im.clone()))
    }

    fn map_coefficients(&self, f: impl Fn(&CQ) -> CQ) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, f(c));
        }
        out
    }

    fn add_term(&mut self, power: i32, c: CQ) {
        if cq_is_zero(&c) {
            return;
        }
        let entry = self.terms.entry(power).or_insert_with(|| cq_int(0));
        *entry = entry.clone() + c;
        if cq_is_zero(entry) {
            self.terms.remove(&power);
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        self.terms.iter().map(|(k, c)| cq_to_c64(c) * std::f64::consts::PI.powi(*k)).sum()
    }
}

impl Add for PiPoly {
    type Output = PiPoly;
    fn add(mut self, rhs: PiPoly) -> PiPoly {
        for (k, c) in rhs.terms {
            self.add_term(k, c);
        }
        self
    }
}

impl Sub for PiPoly {
    type Output = PiPoly;
    fn sub(self, rhs: PiPoly) -> PiPoly {
        self + (-rhs)
    }
}

impl Neg for PiPoly {
    type Output = PiPoly;
    fn neg(self) -> PiPoly {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for &PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: &PiPoly) -> PiPoly {
        let mut out = PiPoly::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                out.add_term(ka + kb, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Mul for PiPoly {
    type Output = PiPoly;
    fn mul(self, rhs: PiPoly) -> PiPoly {
        &self * &rhs
    }
}

/// Formats a rational in expression-language syntax (`p` or `p/q`).
pub fn format_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Formats a Gaussian rational as an expression-language atom.
pub fn format_cq(z: &CQ) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => paren_if_negative(&z.re),
        (true, false) if z.im.is_one() => "i".to_string(),
        (true, false) => format!("{}*i", paren_if_negative(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { '-' } else { '+' };
            format!("({} {} {}*i)", format_q(&z.re), sign, format_q(&z.im.abs()))
        }
    }
}

fn paren_if_negative(x: &Q) -> String {
    if x.is_negative() {
        format!("(-{})", format_q(&x.abs()))
    } else {
        format_q(x)
    }
}

impl fmt::Display for PiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| match *k {
                0 => format_cq(c),
                1 => format!("{}*pi", format_cq(c)),
                k if k > 0 => format!("{}*pi^{}", format_cq(c), k),
                k => format!("{}/pi^{}", format_cq(c), -k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_half_integers() {
        // Γ(1/2) = √π, Γ(3/2) = √π/2, Γ(5/2) = 3√π/4, Γ(-1/2) = -2√π
        assert_eq!(gamma_half_integer(1).unwrap(), SqrtPiMonomial { coef: qi(1), half_power: 1 });
        assert_eq!(gamma_half_integer(3).unwrap().coef, q(1, 2));
        assert_eq!(gamma_half_integer(5).unwrap().coef, q(3, 4));
        assert_eq!(gamma_half_integer(-1).unwrap().coef, qi(-2));
        assert_eq!(gamma_half_integer(-3).unwrap().coef, q(4, 3));
        assert_eq!(gamma_half_integer(10).unwrap().coef, qi(24));
        assert!(gamma_half_integer(0).is_none());
        assert!(gamma_half_integer(-4).is_none());
    }

    #[test]
    fn gamma_half_integers_match_floats() {
        for twice in -9..14 {
            if let Some(g) = gamma_half_integer(twice) {
                let x = twice as f64 / 2.0;
                let reference = crate::special::gamma(x);
                assert!((g.to_f64() - reference).abs() <= 1e-12 * reference.abs(), "{twice}");
            }
        }
    }

    #[test]
    fn pi_poly_arithmetic() {
        let half_pi = PiPoly::monomial(cq_real(q(1, 2)), 1);
        let sum = half_pi.clone() + half_pi.clone();
        assert_eq!(sum, PiPoly::monomial(cq_int(1), 1));
        assert!((half_pi.clone() - half_pi.clone()).is_zero());
        let sq = &half_pi * &half_pi;
        assert_eq!(sq, PiPoly::monomial(cq_real(q(1, 4)), 2));
        assert!((sq.to_c64().re - std::f64::consts::PI.powi(2) / 4.0).abs() < 1e-14);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(25, 12), BigInt::from(5_200_300));
        assert_eq!(binomial(3, 4), BigInt::zero());
    }

    #[test]
    fn dyadic_round_trip() {
        for x in [0.1, -3.75, 1e-300, 12345.678] {
            assert_eq!(q_to_f64(&q_from_f64(x)), x);
        }
    }
}
