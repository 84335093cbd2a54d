//! Exact combinatorial arithmetic: Pochhammer symbols, Gamma at
//! half-integers, terminating/Gauss evaluation of the classical ₂F₁ at 1,
//! the κ constant, the P_{a,b} polynomials, Mertens' b(r) coefficients,
//! and formal Rankin–Cohen brackets of truncated q-series.
//!
//! Everything is exact: the only irrational that appears in any identity in
//! scope is √π, carried as a formal tag on a big-rational coefficient. No
//! floating-point Gamma anywhere.

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type RationalScalar = BigRational;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// c or c·√π, with the tag tracked formally. Adding unlike tags or
/// multiplying two √π tags would leave the ring Q ∪ Q·√π; both panic,
/// because no formula in scope ever needs them — hitting one is a bug.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SqrtPiScalar {
    pub coeff: BigRational,
    pub sqrt_pi: bool,
}

impl SqrtPiScalar {
    pub fn rational(coeff: BigRational) -> Self {
        SqrtPiScalar { coeff, sqrt_pi: false }
    }

    pub fn sqrt_pi(coeff: BigRational) -> Self {
        let sqrt_pi = !coeff.is_zero();
        SqrtPiScalar { coeff, sqrt_pi }
    }

    pub fn zero() -> Self {
        Self::rational(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        assert_eq!(self.sqrt_pi, other.sqrt_pi, "adding unlike √π tags");
        SqrtPiScalar { coeff: &self.coeff + &other.coeff, sqrt_pi: self.sqrt_pi }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SqrtPiScalar { coeff: -self.coeff.clone(), sqrt_pi: self.sqrt_pi }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        assert!(!(self.sqrt_pi && other.sqrt_pi), "√π·√π leaves the scalar ring");
        SqrtPiScalar {
            coeff: &self.coeff * &other.coeff,
            sqrt_pi: self.sqrt_pi || other.sqrt_pi,
        }
    }

    /// Division cancels like tags, which is how Γ-ratios stay rational.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero scalar");
        if self.is_zero() {
            return Self::zero();
        }
        assert!(
            self.sqrt_pi == other.sqrt_pi || !other.sqrt_pi,
            "dividing a rational by √π leaves the scalar ring"
        );
        SqrtPiScalar {
            coeff: &self.coeff / &other.coeff,
            sqrt_pi: self.sqrt_pi && !other.sqrt_pi,
        }
    }

    pub fn scale(&self, by: &BigRational) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        SqrtPiScalar { coeff: &self.coeff * by, sqrt_pi: self.sqrt_pi }
    }

    pub fn expect_rational(&self) -> Result<&BigRational> {
        if self.sqrt_pi {
            return Err(Error::UnsupportedArguments("expected a π-free scalar".into()));
        }
        Ok(&self.coeff)
    }
}

impl std::fmt::Display for SqrtPiScalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.sqrt_pi {
            write!(f, "{}*sqrt(pi)", self.coeff)
        } else {
            write!(f, "{}", self.coeff)
        }
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// Ordinary integer binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// (α)_j = α(α+1)…(α+j−1), with (α)_0 = 1.
pub fn pochhammer(alpha: &BigRational, j: u32) -> BigRational {
    let mut acc = BigRational::one();
    for i in 0..j {
        acc *= alpha + int(i as i64);
    }
    acc
}

/// Generalized binomial C(x, k) = (x−k+1)_k / k! for rational x.
pub fn gen_binomial(x: &BigRational, k: u32) -> BigRational {
    pochhammer(&(x - int(k as i64) + BigRational::one()), k)
        / BigRational::from_integer(factorial(k as u64))
}

pub fn rat_pow(base: &BigRational, e: i64) -> BigRational {
    if e >= 0 {
        let n = base.numer().pow(e as u32);
        let d = base.denom().pow(e as u32);
        BigRational::new(n, d)
    } else {
        rat_pow(base, -e).recip()
    }
}

/// Γ at an integer or half-integer argument, by the recursion
/// Γ(z+1) = z·Γ(z) anchored at Γ(1) = 1 and Γ(1/2) = √π.
pub fn gamma_half(x: &BigRational) -> Result<SqrtPiScalar> {
    let two_x = x * int(2);
    if !two_x.is_integer() {
        return Err(Error::UnsupportedArguments(format!("Gamma({x}) is not half-integral")));
    }
    if x.is_integer() {
        let n = x.to_integer().to_i64().expect("half-integer arguments stay small");
        if n <= 0 {
            return Err(Error::PoleError(n));
        }
        return Ok(SqrtPiScalar::rational(BigRational::from_integer(factorial(n as u64 - 1))));
    }
    let mut z = rat(1, 2);
    let mut coeff = BigRational::one();
    while z < *x {
        coeff *= &z;
        z += BigRational::one();
    }
    while z > *x {
        z -= BigRational::one();
        coeff /= &z;
    }
    Ok(SqrtPiScalar::sqrt_pi(coeff))
}

/// ₂F₁(a, b; c | 1): direct Pochhammer sum when the series terminates,
/// otherwise Gauss's evaluation Γ(c)Γ(c−a−b)/(Γ(c−a)Γ(c−b)).
pub fn classical_2f1_at_1(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
) -> Result<SqrtPiScalar> {
    let nonpos_int = |x: &BigRational| -> Option<u32> {
        (x.is_integer() && !x.is_positive()).then(|| (-x.to_integer()).to_u32().unwrap())
    };
    let term = match (nonpos_int(a), nonpos_int(b)) {
        (Some(na), Some(nb)) => Some(na.min(nb)),
        (Some(na), None) => Some(na),
        (None, Some(nb)) => Some(nb),
        (None, None) => None,
    };
    if let Some(n) = term {
        let mut total = BigRational::zero();
        for j in 0..=n {
            let denom = pochhammer(c, j) * BigRational::from_integer(factorial(j as u64));
            if denom.is_zero() {
                return Err(Error::UnsupportedArguments(format!(
                    "pole in (c)_j before termination: c = {c}, j = {j}"
                )));
            }
            total += pochhammer(a, j) * pochhammer(b, j) / denom;
        }
        return Ok(SqrtPiScalar::rational(total));
    }

    let cab = c - a - b;
    if !cab.is_positive() {
        return Err(Error::UnsupportedArguments(
            "nonterminating series needs c - a - b > 0".into(),
        ));
    }
    let g = |z: &BigRational| gamma_half(z);
    let (t1, t2) = (g(c)?, g(&cab)?);
    let (t3, t4) = (g(&(c - a))?, g(&(c - b))?);
    let tags = t1.sqrt_pi as i32 + t2.sqrt_pi as i32 - t3.sqrt_pi as i32 - t4.sqrt_pi as i32;
    let coeff = &t1.coeff * &t2.coeff / (&t3.coeff * &t4.coeff);
    match tags {
        0 => Ok(SqrtPiScalar::rational(coeff)),
        1 => Ok(SqrtPiScalar::sqrt_pi(coeff)),
        _ => Err(Error::UnsupportedArguments(
            "Gauss evaluation leaves Q ∪ Q·√π".into(),
        )),
    }
}

/// Σ_{μ=0}^{ν−k} C(2ν+1, 2ν−2μ+1)·C(ν−μ, k).
pub fn lemma_binomsum_lhs(nu: u32, k: u32) -> Result<BigInt> {
    if k > nu {
        return Err(Error::BadRange(format!("need k <= nu, got k = {k}, nu = {nu}")));
    }
    let (nu, k) = (nu as u64, k as u64);
    let mut total = BigInt::zero();
    for mu in 0..=(nu - k) {
        total += binomial(2 * nu + 1, 2 * nu - 2 * mu + 1) * binomial(nu - mu, k);
    }
    Ok(total)
}

/// 4^{ν−k}·(2ν−k)! / (k!·(2ν−2k)!).
pub fn lemma_binomsum_rhs(nu: u32, k: u32) -> Result<BigRational> {
    if k > nu {
        return Err(Error::BadRange(format!("need k <= nu, got k = {k}, nu = {nu}")));
    }
    let (nu, k) = (nu as u64, k as u64);
    let num = BigInt::from(4).pow((nu - k) as u32) * factorial(2 * nu - k);
    Ok(BigRational::new(num, factorial(k) * factorial(2 * nu - 2 * k)))
}

/// κ(k, l, ν) = [Σ_μ Γ(2−k)Γ(l+2ν−μ)/Γ(2−k−μ) · C(k+ν−1, ν−μ)C(l+ν−1, μ)]
///              / ((k+l+2ν−2)!·(k−1)).
pub fn kappa(k: &BigRational, l: &BigRational, nu: u32) -> Result<SqrtPiScalar> {
    let fact_arg = k + l + int(2 * nu as i64 - 2);
    if !fact_arg.is_integer() || fact_arg.is_negative() {
        return Err(Error::UnsupportedArguments(format!(
            "(k+l+2ν−2)! undefined for k+l+2ν−2 = {fact_arg}"
        )));
    }
    let km1 = k - BigRational::one();
    if km1.is_zero() {
        return Err(Error::UnsupportedArguments("k = 1 divides by zero".into()));
    }
    let g2mk = gamma_half(&(int(2) - k))?;
    let mut total = SqrtPiScalar::zero();
    for mu in 0..=nu {
        let ratio = g2mk.div(&gamma_half(&(int(2) - k - int(mu as i64)))?);
        let gl = gamma_half(&(l + int(2 * nu as i64 - mu as i64)))?;
        let binoms = gen_binomial(&(k + int(nu as i64 - 1)), nu - mu)
            * gen_binomial(&(l + int(nu as i64 - 1)), mu);
        total = total.add(&ratio.mul(&gl).scale(&binoms));
    }
    let denom = BigRational::from_integer(factorial(fact_arg.to_integer().to_u64().unwrap()))
        * km1;
    Ok(total.scale(&denom.recip()))
}

/// √π·2^{−2ν−1}·C(2ν+2, ν+1).
pub fn kappa_closed(nu: u32) -> SqrtPiScalar {
    let c = BigRational::from_integer(binomial(2 * nu as u64 + 2, nu as u64 + 1));
    SqrtPiScalar::sqrt_pi(c * rat_pow(&rat(1, 2), 2 * nu as i64 + 1))
}

/// P_{a,b}(X, Y) = Σ_{j=0}^{a−2} C(j+b−2, j)·X^j·(X+Y)^{a−j−2}.
pub fn p_poly(a: u32, b: &BigRational, x: &BigRational, y: &BigRational) -> BigRational {
    assert!(a >= 2, "P_{{a,b}} needs a >= 2");
    let sum_xy = x + y;
    let mut total = BigRational::zero();
    for j in 0..=(a - 2) {
        total += gen_binomial(&(b + int(j as i64 - 2)), j)
            * rat_pow(x, j as i64)
            * rat_pow(&sum_xy, (a - 2 - j) as i64);
    }
    total
}

/// base^e for positive integer base and rational e with denominator 1 or 2;
/// half-integer exponents demand a perfect square.
pub fn pow_rational_exp(base: i64, e: &BigRational) -> Result<BigRational> {
    debug_assert!(base >= 1);
    if e.is_integer() {
        return Ok(rat_pow(&int(base), e.to_integer().to_i64().unwrap()));
    }
    let two_e = e * int(2);
    if !two_e.is_integer() {
        return Err(Error::UnsupportedArguments(format!("exponent {e} not half-integral")));
    }
    let num = two_e.to_integer().to_i64().unwrap();
    let root = base.sqrt();
    if root * root != base {
        return Err(Error::UnsupportedExponent { base, num });
    }
    Ok(rat_pow(&int(root), num))
}

/// Finitely supported rational coefficients n ↦ a(n), n starting at `start`.
#[derive(Debug, Clone)]
pub struct CoefficientSequence {
    pub start: i64,
    pub values: Vec<BigRational>,
}

impl CoefficientSequence {
    pub fn new(start: i64, values: Vec<BigRational>) -> Self {
        CoefficientSequence { start, values }
    }

    pub fn get(&self, n: i64) -> BigRational {
        if n < self.start {
            return BigRational::zero();
        }
        self.values.get((n - self.start) as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| (self.start + i as i64, v))
    }
}

/// b(r) = −Γ(1−k)·Σ_{m−n=r} a_g(m)·c̄⁻(n)·Σ_μ C(k+ν−1, ν−μ)C(l+ν−1, μ)
///        ·m^{ν−μ}·(m^{μ−2ν−l+1}·P_{k+l+2ν, 2−k−μ}(r, n) − n^{k+μ−1}),
/// over positive integers m, n. Coefficients here are real, so conjugation
/// is the identity.
pub fn mertens_b(
    r: i64,
    k: &BigRational,
    l: &BigRational,
    nu: u32,
    c_minus: &CoefficientSequence,
    a_g: &CoefficientSequence,
) -> Result<SqrtPiScalar> {
    let deg = k + l + int(2 * nu as i64);
    if !deg.is_integer() || deg < int(2) {
        return Err(Error::UnsupportedArguments(format!(
            "P-polynomial degree index k+l+2ν = {deg} is not an integer >= 2"
        )));
    }
    let deg = deg.to_integer().to_u32().unwrap();

    let mut outer = BigRational::zero();
    for (n, cv) in c_minus.support() {
        let m = n + r;
        if n < 1 || m < 1 {
            continue;
        }
        let av = a_g.get(m);
        if av.is_zero() {
            continue;
        }
        let mut inner = BigRational::zero();
        for mu in 0..=nu {
            let binoms = gen_binomial(&(k + int(nu as i64 - 1)), nu - mu)
                * gen_binomial(&(l + int(nu as i64 - 1)), mu);
            if binoms.is_zero() {
                continue;
            }
            let m_pow = pow_rational_exp(m, &(int(mu as i64 - 2 * nu as i64 + 1) - l))?;
            let n_pow = pow_rational_exp(n, &(k + int(mu as i64 - 1)))?;
            let p = p_poly(deg, &(int(2) - k - int(mu as i64)), &int(r), &int(n));
            inner += binoms
                * rat_pow(&int(m), nu as i64 - mu as i64)
                * (m_pow * p - n_pow);
        }
        outer += av * cv * inner;
    }
    Ok(gamma_half(&(BigRational::one() - k))?.neg().scale(&outer))
}

/// Σ_{k=0}^{n} (−1)^k·(2n−k)! / (k!·(n−k)!·(n+1−k)!); identically zero.
pub fn cohen_identity_sum(n: u32) -> BigRational {
    let n = n as u64;
    let mut total = BigRational::zero();
    for k in 0..=n {
        let term = BigRational::new(
            factorial(2 * n - k),
            factorial(k) * factorial(n - k) * factorial(n + 1 - k),
        );
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

/// A q-series truncated at index N, with its modular weight carried along.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalQSeries {
    pub weight: BigRational,
    pub coeffs: Vec<BigRational>,
}

pub const DEFAULT_TRUNCATION: usize = 200;

impl FormalQSeries {
    pub fn new(weight: BigRational, coeffs: Vec<BigRational>) -> Self {
        FormalQSeries { weight, coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

/// [f, g]_ν: coefficient n is Σ_{r+s=ν} (−1)^r C(k+ν−1, s)C(l+ν−1, r)
/// Σ_{n₁+n₂=n} n₁^r·a_f(n₁)·n₂^s·a_g(n₂); the weight becomes k+l+2ν.
pub fn rc_bracket(f: &FormalQSeries, g: &FormalQSeries, nu: u32) -> Result<FormalQSeries> {
    if f.coeffs.len() != g.coeffs.len() {
        return Err(Error::TruncationMismatch(f.truncation(), g.truncation()));
    }
    let len = f.coeffs.len();
    let mut weights = Vec::with_capacity(nu as usize + 1);
    for r in 0..=nu {
        let s = nu - r;
        let c = gen_binomial(&(&f.weight + int(nu as i64 - 1)), s)
            * gen_binomial(&(&g.weight + int(nu as i64 - 1)), r);
        weights.push(if r % 2 == 0 { c } else { -c });
    }
    let ipow = |n: usize, e: u32| BigRational::from_integer(BigInt::from(n).pow(e));
    let coeffs = (0..len)
        .map(|n| {
            let mut acc = BigRational::zero();
            for (r, w) in weights.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let s = nu - r as u32;
                let mut conv = BigRational::zero();
                for n1 in 0..=n {
                    let (af, ag) = (&f.coeffs[n1], &g.coeffs[n - n1]);
                    if af.is_zero() || ag.is_zero() {
                        continue;
                    }
                    conv += ipow(n1, r as u32) * af * ipow(n - n1, s) * ag;
                }
                acc += w * conv;
            }
            acc
        })
        .collect();
    Ok(FormalQSeries::new(&f.weight + &g.weight + int(2 * nu as i64), coeffs))
}
