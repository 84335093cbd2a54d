//! Moment computations on both sides of the trace identities: exact power
//! sums from the curve/character-sum side, Hurwitz-class-number sums from
//! the arithmetic side, supersingular tails, the semicircle distribution
//! statistics, and the bracket coefficient assemblies behind the
//! asymptotics.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::charsum::CycloContext;
use crate::classnum::{a_constant, hurwitz_h_star, legendre, prime_power, rat};
use crate::combin::{binomial, factorial, gen_binomial, rat_pow};
use crate::error::{Error, Result};
use crate::field::make_field;
use crate::hessian::{trace, trace_all, TraceTable};

pub fn catalan(n: u32) -> BigInt {
    let n = n as u64;
    factorial(2 * n) / (factorial(n) * factorial(n + 1))
}

/// m-th moment of the semicircle density (1/2π)√(4−t²) on [−2,2].
pub fn semicircle_moment(m: u32) -> BigRational {
    if m % 2 == 0 {
        BigRational::from_integer(catalan(m / 2))
    } else {
        BigRational::zero()
    }
}

pub fn semicircle_cdf(t: f64) -> Result<f64> {
    if !(-2.0..=2.0).contains(&t) {
        return Err(Error::DomainError(t));
    }
    let pi = std::f64::consts::PI;
    Ok(0.5 + t * (4.0 - t * t).sqrt() / (4.0 * pi) + (t / 2.0).asin() / pi)
}

/// Σ_{λ³≠27} a(λ)^m over the nonsingular fibers.
pub fn trace_moment_direct(tt: &TraceTable, m: u32) -> BigInt {
    tt.entries().map(|(_, a)| BigInt::from(a).pow(m)).sum()
}

/// T(q, m) = Σ_λ n(λ)^m over all of F_q.
pub fn f21_moment_direct(n_values: &[i64], m: u32) -> BigInt {
    n_values.iter().map(|&n| BigInt::from(n).pow(m)).sum()
}

/// total·q^{−m/2−1}, the normalization under which even moments approach
/// the Catalan numbers and odd moments approach 0.
pub fn scaled_moment(q: u64, total: &BigInt, m: u32) -> f64 {
    total.to_f64().unwrap_or(f64::NAN) / (q as f64).powf(m as f64 / 2.0 + 1.0)
}

/// Σ over s ∈ Z with s² ≤ 4q, p ∤ s, s ≡ q+1 (mod `modulus`), of s^m
/// weighted by H*((4q−s²)/9) when modulus = 9 and H*(4q−s²) when
/// modulus = 3.
fn hstar_weighted_sum(q: u64, p: u64, m: u32, modulus: u64) -> BigRational {
    let bound = (4 * q).sqrt() as i64;
    let target = ((q + 1) % modulus) as i64;
    let mut total = BigRational::zero();
    for s in -bound..=bound {
        if s.rem_euclid(p as i64) == 0 || s.rem_euclid(modulus as i64) != target {
            continue;
        }
        let d = 4 * q as i64 - s * s;
        let h = if modulus == 9 {
            if d % 9 != 0 {
                continue;
            }
            hurwitz_h_star(d / 9)
        } else {
            hurwitz_h_star(d)
        };
        if h.is_zero() {
            continue;
        }
        total += h * BigRational::from_integer(BigInt::from(s).pow(m));
    }
    total
}

/// The excluded trace ±2p^{r/2} of the r-even supersingular fibers; the
/// sign is pinned by s₀ ≡ q+1 (mod 9), and exactly one sign works for
/// p ≠ 3.
fn supersingular_s0(q: u64, p: u64, r: u32) -> Result<i64> {
    let base = 2 * (p as i64).pow(r / 2);
    [base, -base]
        .into_iter()
        .find(|s| (s - (q as i64 + 1)).rem_euclid(9) == 0)
        .ok_or(Error::Inconsistent)
}

/// Class-number side of the trace-moment identity. Case q ≡ 1 (mod 3),
/// r odd: 12·Σ H*((4q−s²)/9)s^m over p∤s, s ≡ q+1 (mod 9). Case r even:
/// the same plus R(q)·A(q)·s₀^m for the supersingular fibers the p∤s
/// condition drops. Case q ≡ 2 (mod 3): Σ H*(4q−s²)s^m over p∤s,
/// s ≡ q+1 (mod 3).
pub fn trace_moment_classnum(q: u64, m: u32, r_input: Option<u32>) -> Result<BigRational> {
    let (p, r) =
        prime_power(q).ok_or_else(|| Error::BadRange(format!("{q} is not a prime power")))?;
    if p < 5 {
        return Err(Error::SmallCharacteristic(p));
    }
    if q % 3 == 1 {
        let mut total = hstar_weighted_sum(q, p, m, 9) * rat(12, 1);
        if r % 2 == 0 {
            let rv = r_input.ok_or(Error::MissingR)?;
            if rv > 12 {
                return Err(Error::BadRange(format!("R = {rv} exceeds the fiber count 12")));
            }
            let s0 = supersingular_s0(q, p, r)?;
            total += rat(rv as i64, 1)
                * a_constant(p)
                * BigRational::from_integer(BigInt::from(s0).pow(m));
        }
        Ok(total)
    } else {
        Ok(hstar_weighted_sum(q, p, m, 3))
    }
}

/// Class-number side of the ₂F₁ moment identity:
/// (−1)^m·T(q, m) = 3 − a(0)^m + Σ_{λ³≠27} a(λ)^m, with the trace sum
/// expanded through trace_moment_classnum. The constant 3 counts the cube
/// roots of unity, where n(λ) = −1.
pub fn f21_moment_classnum(q: u64, m: u32, r_input: Option<u32>) -> Result<BigRational> {
    let (p, r) =
        prime_power(q).ok_or_else(|| Error::BadRange(format!("{q} is not a prime power")))?;
    let ft = make_field(p, r)?;
    if !ft.three_divides_group_order() {
        return Err(Error::NoCubicCharacter(q - 1));
    }
    let a0 = trace(&ft, 0)?;
    f21_classnum_with_a0(q, m, a0, r_input)
}

fn f21_classnum_with_a0(q: u64, m: u32, a0: i64, r_input: Option<u32>) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::BadRange("moment order must be at least 1".into()));
    }
    Ok(rat(3, 1) - BigRational::from_integer(BigInt::from(a0).pow(m))
        + trace_moment_classnum(q, m, r_input)?)
}

/// Solve the m = 2 trace-moment identity for the supersingular fiber count
/// R(q) (r even), then verify the solution at m = 4. R must come out an
/// integer in [0, 12] or the two sides are inconsistent.
pub fn estimate_r(q: u64) -> Result<u32> {
    let (p, r) =
        prime_power(q).ok_or_else(|| Error::BadRange(format!("{q} is not a prime power")))?;
    if r % 2 != 0 {
        return Err(Error::BadRange(format!(
            "R is defined only for even-degree fields, got degree {r}"
        )));
    }
    let ft = make_field(p, r)?;
    let tt = trace_all(&ft);
    let s0 = supersingular_s0(q, p, r)?;
    let a = a_constant(p);

    let gap = BigRational::from_integer(trace_moment_direct(&tt, 2))
        - hstar_weighted_sum(q, p, 2, 9) * rat(12, 1);
    let rv = gap / (&a * BigRational::from_integer(BigInt::from(s0).pow(2)));
    if !rv.is_integer() || rv.is_negative() || rv > rat(12, 1) {
        return Err(Error::Inconsistent);
    }
    let rv = rv.to_integer().to_u32().unwrap();

    let direct4 = BigRational::from_integer(trace_moment_direct(&tt, 4));
    let side4 = trace_moment_classnum(q, 4, Some(rv))?;
    if direct4 != side4 {
        return Err(Error::Inconsistent);
    }
    Ok(rv)
}

/// Ω_q (modulus 9) or Ω′_q (modulus 3): traces s with s² ≤ 4q, p | s,
/// s ≡ q+1 (mod modulus).
pub fn supersingular_set(q: u64, modulus: u64) -> Result<Vec<i64>> {
    let (p, _) =
        prime_power(q).ok_or_else(|| Error::BadRange(format!("{q} is not a prime power")))?;
    if modulus != 3 && modulus != 9 {
        return Err(Error::BadRange(format!("modulus must be 3 or 9, got {modulus}")));
    }
    let bound = (4 * q).sqrt() as i64;
    let target = ((q + 1) % modulus) as i64;
    Ok((-bound..=bound)
        .filter(|s| s.rem_euclid(p as i64) == 0 && s.rem_euclid(modulus as i64) == target)
        .collect())
}

#[derive(Debug, Clone)]
pub struct SupersingularSets {
    pub q: u64,
    pub mod9: Vec<i64>,
    pub mod3: Vec<i64>,
}

pub fn supersingular_sets(q: u64) -> Result<SupersingularSets> {
    Ok(SupersingularSets { q, mod9: supersingular_set(q, 9)?, mod3: supersingular_set(q, 3)? })
}

/// H*-weighted s^m sum over the supersingular set; the complement of the
/// p∤s sums above. For r = 1 only s = 0 can qualify, so every m ≥ 1 tail
/// vanishes.
pub fn supersingular_tail(q: u64, m: u32, modulus: u64) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for s in supersingular_set(q, modulus)? {
        let d = 4 * q as i64 - s * s;
        let h = if modulus == 9 {
            if d % 9 != 0 {
                continue;
            }
            hurwitz_h_star(d / 9)
        } else {
            hurwitz_h_star(d)
        };
        total += h * BigRational::from_integer(BigInt::from(s).pow(m));
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    Direct,
    Classnum,
    Both,
}

/// One row of a moment run. For the ₂F₁ family `direct` is T(q, m) and
/// `classnum_side` is the identity's right side folded by (−1)^m onto the
/// same normalization, so the two columns agree exactly whenever the
/// identity holds; for the trace family both columns are Σ a^m.
#[derive(Debug, Clone)]
pub struct MomentReport {
    pub q: u64,
    pub r: u32,
    pub m: u32,
    pub direct: Option<BigInt>,
    pub classnum_side: Option<BigRational>,
    pub scaled: Option<f64>,
    pub target: BigRational,
    pub abs_error: Option<f64>,
}

/// Moment rows for m = 1..=m_max. Fields with 3 | q−1 run the ₂F₁ family,
/// others the trace family. For even-degree fields the classnum side needs
/// R(q); it is estimated from the m = 2 identity when not supplied.
pub fn moment_reports(
    p: u64,
    r: u32,
    m_max: u32,
    method: MomentMethod,
    r_input: Option<u32>,
) -> Result<Vec<MomentReport>> {
    let ft = Arc::new(make_field(p, r)?);
    let q = ft.q() as u64;
    let f21_family = ft.three_divides_group_order();
    let need_direct = method != MomentMethod::Classnum;
    let need_class = method != MomentMethod::Direct;

    let n_values = if f21_family && need_direct {
        Some(CycloContext::new(ft.clone()).hess_2f1_all()?)
    } else {
        None
    };
    let tt = if !f21_family && need_direct { Some(trace_all(&ft)) } else { None };
    let a0 = if f21_family && need_class { Some(trace(&ft, 0)?) } else { None };
    let r_val = if need_class && r % 2 == 0 {
        Some(match r_input {
            Some(v) => v,
            None => estimate_r(q)?,
        })
    } else {
        r_input
    };

    (1..=m_max)
        .map(|m| {
            let direct = match (&n_values, &tt) {
                (Some(nv), _) => Some(f21_moment_direct(nv, m)),
                (_, Some(t)) => Some(trace_moment_direct(t, m)),
                _ => None,
            };
            let classnum_side = if need_class {
                Some(if f21_family {
                    let rhs = f21_classnum_with_a0(q, m, a0.unwrap(), r_val)?;
                    if m % 2 == 0 {
                        rhs
                    } else {
                        -rhs
                    }
                } else {
                    trace_moment_classnum(q, m, r_val)?
                })
            } else {
                None
            };
            let scaled = direct.as_ref().map(|t| scaled_moment(q, t, m));
            let target = semicircle_moment(m);
            let abs_error = scaled.map(|s| (s - target.to_f64().unwrap()).abs());
            Ok(MomentReport { q, r, m, direct, classnum_side, scaled, target, abs_error })
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BridgeRow {
    pub lam: u32,
    pub lifted: i64,
    pub trace: i64,
}

#[derive(Debug, Clone)]
pub struct BridgeReport {
    pub q: u64,
    pub rows: Vec<BridgeRow>,
    pub mismatches: usize,
}

/// For every λ with λ³ ∉ {0, 27}, check q·₂F₁(3/λ) = −a(λ).
pub fn bridge_check(p: u64, r: u32) -> Result<BridgeReport> {
    let ft = Arc::new(make_field(p, r)?);
    let n_values = CycloContext::new(ft.clone()).hess_2f1_all()?;
    let tt = trace_all(&ft);
    let three = ft.from_int(3);
    let mut rows = Vec::new();
    let mut mismatches = 0;
    for lam in 1..ft.q() {
        let Some(a) = tt.get(lam) else { continue };
        let lifted = n_values[ft.div(three, lam) as usize];
        if lifted != -a {
            mismatches += 1;
        }
        rows.push(BridgeRow { lam, lifted, trace: a });
    }
    Ok(BridgeReport { q: ft.q() as u64, rows, mismatches })
}

#[derive(Debug, Clone)]
pub struct DistributionRow {
    pub bin_lo: f64,
    pub bin_hi: f64,
    pub count: u64,
    pub ecdf: f64,
    pub scdf: f64,
}

#[derive(Debug, Clone)]
pub struct DistributionReport {
    pub q: u64,
    pub values: Vec<f64>,
    pub rows: Vec<DistributionRow>,
    pub ks: f64,
}

/// Normalized ₂F₁ lifts n(λ)/√q over all λ ∈ F_q when 3 | q−1, otherwise
/// normalized traces a(λ)/√q over the nonsingular fibers; binned over
/// [−2, 2] with the exact Kolmogorov–Smirnov distance to the semicircle
/// CDF.
pub fn distribution(p: u64, r: u32, bins: u32) -> Result<DistributionReport> {
    if bins == 0 {
        return Err(Error::BadRange("need at least one bin".into()));
    }
    let ft = Arc::new(make_field(p, r)?);
    let q = ft.q() as u64;
    let raw: Vec<i64> = if ft.three_divides_group_order() {
        CycloContext::new(ft).hess_2f1_all()?
    } else {
        trace_all(&ft).entries().map(|(_, a)| a).collect()
    };
    let sq = (q as f64).sqrt();
    let mut values: Vec<f64> = raw.iter().map(|&n| n as f64 / sq).collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());

    // The Hasse window |n| ≤ ⌊2√q⌋ lands every value in [−2, 2] exactly.
    let count = values.len() as f64;
    let mut ks = 0.0f64;
    for (i, &x) in values.iter().enumerate() {
        let f = semicircle_cdf(x)?;
        ks = ks.max(((i + 1) as f64 / count - f).max(f - i as f64 / count));
    }

    let width = 4.0 / bins as f64;
    let mut rows = Vec::with_capacity(bins as usize);
    let mut idx = 0usize;
    let mut cumulative = 0u64;
    for b in 0..bins {
        let bin_lo = -2.0 + b as f64 * width;
        let bin_hi = if b + 1 == bins { 2.0 } else { -2.0 + (b + 1) as f64 * width };
        let mut n_in = 0u64;
        while idx < values.len() && (values[idx] < bin_hi || b + 1 == bins) {
            n_in += 1;
            idx += 1;
        }
        cumulative += n_in;
        rows.push(DistributionRow {
            bin_lo,
            bin_hi,
            count: n_in,
            ecdf: cumulative as f64 / count,
            scdf: semicircle_cdf(bin_hi)?,
        });
    }
    Ok(DistributionReport { q, values, rows, ks })
}

pub fn c1(nu: u32) -> BigRational {
    rat(1, 3)
        * rat_pow(&rat(2, 1), -2 * nu as i64 - 1)
        * BigRational::from_integer(binomial(2 * nu as u64, nu as u64))
}

pub fn c2(nu: u32) -> BigRational {
    rat(1, 3)
        * rat_pow(&rat(2, 1), -2 * nu as i64)
        * BigRational::from_integer(binomial(2 * nu as u64, nu as u64))
}

pub fn c3(nu: u32) -> BigRational {
    rat(1, 3)
        * rat_pow(&rat(2, 1), -2 * nu as i64 - 3)
        * BigRational::from_integer(binomial(2 * nu as u64 + 2, nu as u64 + 1))
}

pub fn c4(nu: u32) -> BigRational {
    rat(1, 3)
        * rat_pow(&rat(2, 1), -2 * nu as i64 - 1)
        * BigRational::from_integer(binomial(2 * nu as u64 + 1, nu as u64 + 1))
}

fn exact_sqrt(m: u64) -> Option<u64> {
    let r = m.sqrt();
    (r * r == m).then_some(r)
}

/// Σ over t, ℓ ≥ 1 with t² − 9ℓ² = m of (t−3ℓ)^exponent, optionally
/// weighted by the Legendre symbol (t|3). Since t > 3ℓ forces
/// m ≥ 6ℓ + 1, ℓ runs up to (m−1)/6.
pub fn pell_divisor_sum(m: u64, exponent: u32, char3_weight: bool) -> BigRational {
    let mut total = BigInt::zero();
    for l in 1..=(m.saturating_sub(1) / 6) {
        let t2 = m + 9 * l * l;
        let Some(t) = exact_sqrt(t2) else { continue };
        let w = if char3_weight { legendre(t as i64, 3) } else { 1 };
        if w == 0 {
            continue;
        }
        total += w * BigInt::from(t - 3 * l).pow(exponent);
    }
    BigRational::from_integer(total)
}

/// m-th coefficient of the even assembly:
/// Σ_{μ=0}^{ν} (−1)^{ν−μ} C(ν+1/2, μ)C(ν−1/2, ν−μ)
///   · Σ_s s^{2μ}(m−s²)^{ν−μ}H*((m−s²)/9)
/// + C₁(ν)δ(m)m^{ν+1/2} + C₂(ν)Σ_{t²−9ℓ²=m}(t−3ℓ)^{2ν+1}.
/// H* vanishes off integers, so only s² ≡ m (mod 9) contributes, and
/// δ(m)m^{ν+1/2} = m^ν·√m is rational exactly when it is nonzero.
pub fn bracket_coeff_even(nu: u32, m: u64) -> BigRational {
    let bound = m.sqrt() as i64;
    let half = rat(1, 2);
    let nu_rat = rat(nu as i64, 1);
    let mut total = BigRational::zero();
    for mu in 0..=nu {
        let coef = gen_binomial(&(&nu_rat + &half), mu) * gen_binomial(&(&nu_rat - &half), nu - mu);
        if coef.is_zero() {
            continue;
        }
        let mut inner = BigRational::zero();
        for s in -bound..=bound {
            let d = m as i64 - s * s;
            if d % 9 != 0 {
                continue;
            }
            let h = hurwitz_h_star(d / 9);
            if h.is_zero() {
                continue;
            }
            inner += h * BigRational::from_integer(
                BigInt::from(s).pow(2 * mu) * BigInt::from(d).pow(nu - mu),
            );
        }
        total += if (nu - mu) % 2 == 0 { coef * inner } else { -coef * inner };
    }
    if let Some(root) = exact_sqrt(m) {
        total += c1(nu)
            * BigRational::from_integer(BigInt::from(m).pow(nu) * BigInt::from(root));
    }
    total + c2(nu) * pell_divisor_sum(m, 2 * nu + 1, false)
}

/// m-th coefficient of the odd assembly:
/// Σ_{μ=0}^{ν} (−1)^μ C(ν+1/2, μ)C(ν+1/2, ν−μ)
///   · Σ_s (s|3)s^{2ν−2μ+1}(m−s²)^μ H*((m−s²)/9)
/// + C₃(ν)δ(m)(√m|3)m^{ν+1} + C₄(ν)Σ_{t²−9ℓ²=m}(t|3)(t−3ℓ)^{2ν+2}.
pub fn bracket_coeff_odd(nu: u32, m: u64) -> BigRational {
    let bound = m.sqrt() as i64;
    let half_up = rat(nu as i64, 1) + rat(1, 2);
    let mut total = BigRational::zero();
    for mu in 0..=nu {
        let coef = gen_binomial(&half_up, mu) * gen_binomial(&half_up, nu - mu);
        if coef.is_zero() {
            continue;
        }
        let mut inner = BigRational::zero();
        for s in -bound..=bound {
            let w = legendre(s, 3);
            if w == 0 {
                continue;
            }
            let d = m as i64 - s * s;
            if d % 9 != 0 {
                continue;
            }
            let h = hurwitz_h_star(d / 9);
            if h.is_zero() {
                continue;
            }
            inner += h * BigRational::from_integer(
                w * BigInt::from(s).pow(2 * nu - 2 * mu + 1) * BigInt::from(d).pow(mu),
            );
        }
        total += if mu % 2 == 0 { coef * inner } else { -coef * inner };
    }
    if let Some(root) = exact_sqrt(m) {
        total += c3(nu)
            * BigRational::from_integer(
                legendre(root as i64, 3) * BigInt::from(m).pow(nu + 1),
            );
    }
    total + c4(nu) * pell_divisor_sum(m, 2 * nu + 2, true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AssemblyParity {
    Even,
    Odd,
}

#[derive(Debug, Clone)]
pub struct BracketCoefficientSeries {
    pub parity: AssemblyParity,
    pub nu: u32,
    /// (q, coefficient at index m = 4q).
    pub points: Vec<(u64, BigRational)>,
}

pub fn bracket_series(parity: AssemblyParity, nu: u32, qs: &[u64]) -> BracketCoefficientSeries {
    let points = qs
        .iter()
        .map(|&q| {
            let coeff = match parity {
                AssemblyParity::Even => bracket_coeff_even(nu, 4 * q),
                AssemblyParity::Odd => bracket_coeff_odd(nu, 4 * q),
            };
            (q, coeff)
        })
        .collect();
    BracketCoefficientSeries { parity, nu, points }
}

#[derive(Debug, Clone)]
pub struct GrowthReport {
    pub parity: AssemblyParity,
    pub nu: u32,
    pub exponent: f64,
    pub threshold: f64,
    /// (q, |coefficient| / q^exponent).
    pub ratios: Vec<(u64, f64)>,
    pub trending: bool,
}

/// Normalize each coefficient by q^exponent and report whether the ratios
/// trend to zero: last one no bigger than the first and below the
/// threshold.
pub fn growth_check(
    series: &BracketCoefficientSeries,
    exponent: f64,
    threshold: f64,
) -> GrowthReport {
    let ratios: Vec<(u64, f64)> = series
        .points
        .iter()
        .map(|(q, c)| (*q, c.to_f64().unwrap().abs() / (*q as f64).powf(exponent)))
        .collect();
    let trending = match (ratios.first(), ratios.last()) {
        (Some(first), Some(last)) => last.1 <= first.1 && last.1 <= threshold,
        _ => false,
    };
    GrowthReport { parity: series.parity, nu: series.nu, exponent, threshold, ratios, trending }
}
