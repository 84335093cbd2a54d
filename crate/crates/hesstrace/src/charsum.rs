//! Multiplicative characters, Jacobi sums, and the Hessian ₂F₁ family.
//!
//! All character arithmetic happens modulo one auxiliary prime `ell ≡ 1
//! (mod q−1)` with `ell > 8q`, where a fixed `zeta` of exact order q−1
//! stands in for a primitive complex root of unity. Rational-integer
//! outputs are recovered at the very end by lifting through the Hasse
//! window |n| ≤ 2√q; since 2·(2√q)+1 < ell that lift is unique. This keeps
//! every intermediate value exact without cyclotomic lattice arithmetic.

use std::sync::Arc;

use num_integer::Roots;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{prime_factors, FieldTable};

/// Index of a multiplicative character: χ_j(g^k) = ζ^{jk}, reduced mod q−1.
/// ε is j = 0; conjugation is j ↦ q−1−j.
pub type CharIndex = u32;

pub struct CycloContext {
    pub ft: Arc<FieldTable>,
    /// Auxiliary prime, ≡ 1 (mod q−1) and > 8q.
    pub ell: u64,
    /// Fixed residue of exact multiplicative order q−1 mod `ell`.
    pub zeta: u64,
    /// char_pows[k] = zeta^k mod ell for 0 ≤ k < q−1.
    char_pows: Vec<u64>,
}

/// Scaled binomial coefficients q·(ψ₃χ_j over χ_j) and q·(ψ̄₃χ_j over χ_j)
/// for every j, as residues mod ell. Precomputing these once turns the
/// all-λ evaluation into O(q²) total work instead of O(q³).
pub struct JacobiTable {
    pub t1: Vec<u64>,
    pub t2: Vec<u64>,
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn mod_inv(x: u64, ell: u64) -> u64 {
    mod_pow(x, ell - 2, ell)
}

impl CycloContext {
    pub fn new(ft: Arc<FieldTable>) -> Self {
        Self::with_min_aux_prime(ft, 0)
    }

    /// Same context but with the auxiliary prime forced above `lo`; used to
    /// cross-check that results do not depend on the embedding.
    pub fn with_min_aux_prime(ft: Arc<FieldTable>, lo: u64) -> Self {
        let q = ft.q() as u64;
        let qm1 = q - 1;
        // Smallest prime ≡ 1 (mod q−1) exceeding max(8q, lo).
        let floor = (8 * q).max(lo);
        let mut ell = (floor / qm1 + 1) * qm1 + 1;
        while !crate::field::is_prime(ell) {
            ell += qm1;
        }
        // zeta: power a small residue into the order-(q−1) subgroup and keep
        // the first candidate whose order is exactly q−1.
        let factors = prime_factors(qm1);
        let mut zeta = 0u64;
        for c in 2..ell {
            let z = mod_pow(c, (ell - 1) / qm1, ell);
            if z != 1 && factors.iter().all(|&f| mod_pow(z, qm1 / f, ell) != 1) {
                zeta = z;
                break;
            }
        }
        let mut char_pows = vec![1u64; qm1 as usize];
        for k in 1..qm1 as usize {
            char_pows[k] = char_pows[k - 1] * zeta % ell;
        }
        CycloContext { ft, ell, zeta, char_pows }
    }

    pub fn q(&self) -> u32 {
        self.ft.q()
    }

    fn qm1(&self) -> u32 {
        self.ft.q() - 1
    }

    /// Index of the cubic character ψ₃ (order 3), if it exists.
    pub fn psi3(&self) -> Result<CharIndex> {
        let qm1 = self.qm1();
        if qm1 % 3 != 0 {
            return Err(Error::NoCubicCharacter(qm1 as u64));
        }
        Ok(qm1 / 3)
    }

    /// χ_j(x) in the embedding; 0 at x = 0 for every j, including j = 0.
    pub fn char_eval(&self, j: CharIndex, x: u32) -> u64 {
        if x == 0 {
            return 0;
        }
        let qm1 = self.qm1() as u64;
        self.char_pows[((j as u64 % qm1) * self.ft.ind(x) as u64 % qm1) as usize]
    }

    /// J(A, B̄) = Σ_x A(x)·B̄(1−x) by direct summation, O(q).
    pub fn jacobi_sum(&self, a: CharIndex, b: CharIndex) -> u64 {
        let qm1 = self.qm1() as u64;
        let a = a as u64 % qm1;
        let bneg = (qm1 - b as u64 % qm1) % qm1;
        let mut acc = 0u64;
        for x in self.ft.elements() {
            if x == 0 || x == 1 {
                continue; // χ(0) = 0 kills both endpoints
            }
            let e = (a * self.ft.ind(x) as u64 + bneg * self.ft.ind(self.ft.sub(1, x)) as u64)
                % qm1;
            acc = (acc + self.char_pows[e as usize]) % self.ell;
        }
        acc
    }

    /// q·(A over B) = B(−1)·J(A, B̄), the scaled normalized Jacobi sum.
    pub fn greene_binomial_scaled(&self, a: CharIndex, b: CharIndex) -> u64 {
        let j = self.jacobi_sum(a, b);
        let sign = self.char_eval(b, self.ft.from_int(-1));
        sign * j % self.ell
    }

    /// Lift a residue to the unique integer with |n| ≤ ⌊2√q⌋.
    fn lift(&self, residue: u64) -> Result<i64> {
        let bound = (4 * self.ft.q() as u64).sqrt() as i64;
        if residue <= bound as u64 {
            Ok(residue as i64)
        } else if self.ell - residue <= bound as u64 {
            Ok(-((self.ell - residue) as i64))
        } else {
            Err(Error::LiftOutOfRange { residue, ell: self.ell, bound })
        }
    }

    /// n(λ) := q·₂F₁(ψ₃, ψ̄₃; ε | λ³)_q as a rational integer.
    ///
    /// S = Σ_j [q·(ψ₃χ_j over χ_j)]·[q·(ψ̄₃χ_j over χ_j)]·χ_j(λ³), and
    /// n = S/(q−1) lifted through the Hasse window.
    pub fn hess_2f1(&self, lam: u32) -> Result<i64> {
        let e3 = self.psi3()?;
        let qm1 = self.qm1();
        let cube = self.ft.cube(lam);
        let mut s = 0u64;
        for j in 0..qm1 {
            let t1 = self.greene_binomial_scaled((e3 + j) % qm1, j);
            let t2 = self.greene_binomial_scaled((2 * e3 + j) % qm1, j);
            s = (s + t1 * t2 % self.ell * self.char_eval(j, cube)) % self.ell;
        }
        self.lift(s * mod_inv(self.qm1() as u64, self.ell) % self.ell)
    }

    /// n(λ) for every λ ∈ F_q at once, indexed by the element encoding.
    ///
    /// Precomputes the JacobiTable, then needs one inner sum per *distinct*
    /// cube class k = ind(λ³) — only (q−1)/3 of them.
    pub fn hess_2f1_all(&self) -> Result<Vec<i64>> {
        let table = JacobiTable::build(self)?;
        self.hess_2f1_all_with(&table)
    }

    pub fn hess_2f1_all_with(&self, table: &JacobiTable) -> Result<Vec<i64>> {
        let qm1 = self.qm1() as usize;
        let ell = self.ell;
        let u: Vec<u64> = (0..qm1).map(|j| table.t1[j] * table.t2[j] % ell).collect();

        // S(k) = Σ_j u[j]·ζ^{jk} for k = ind(λ³); with 3 | q−1 the reachable
        // k are exactly the multiples of 3.
        let s_of_k: Vec<u64> = (0..qm1 / 3)
            .into_par_iter()
            .map(|kk| {
                let k = 3 * kk;
                let mut idx = 0usize;
                let mut acc = 0u64;
                for &uj in &u {
                    acc = (acc + uj * self.char_pows[idx]) % ell;
                    idx += k;
                    if idx >= qm1 {
                        idx -= qm1;
                    }
                }
                acc
            })
            .collect();

        let inv_qm1 = mod_inv(qm1 as u64, ell);
        let mut out = vec![0i64; self.ft.q() as usize];
        for lam in self.ft.elements() {
            if lam == 0 {
                continue; // every summand contains χ(0) = 0
            }
            let k = 3 * self.ft.ind(lam) as usize % qm1;
            out[lam as usize] = self.lift(s_of_k[k / 3] * inv_qm1 % ell)?;
        }
        Ok(out)
    }
}

impl JacobiTable {
    pub fn build(ctx: &CycloContext) -> Result<JacobiTable> {
        let e3 = ctx.psi3()?;
        let qm1 = ctx.qm1();
        let ell = ctx.ell;
        let ft = &ctx.ft;
        // ind(1−x) is shared across every j; hoist it out of the O(q²) loop.
        let ind1m: Vec<u32> = ft
            .elements()
            .map(|x| if x == 0 || x == 1 { 0 } else { ft.ind(ft.sub(1, x)) })
            .collect();
        let sign_of = |b: u32| ctx.char_eval(b, ft.from_int(-1));

        let pairs: Vec<(u64, u64)> = (0..qm1)
            .into_par_iter()
            .map(|j| {
                let row = |top: u32| {
                    let a = ((top + j) % qm1) as u64;
                    let bneg = ((qm1 - j) % qm1) as u64;
                    let mut acc = 0u64;
                    for x in ft.elements() {
                        if x == 0 || x == 1 {
                            continue;
                        }
                        let e = (a * ft.ind(x) as u64 + bneg * ind1m[x as usize] as u64)
                            % qm1 as u64;
                        acc = (acc + ctx.char_pows[e as usize]) % ell;
                    }
                    sign_of(j) * acc % ell
                };
                (row(e3), row(2 * e3))
            })
            .collect();
        let (t1, t2) = pairs.into_iter().unzip();
        Ok(JacobiTable { t1, t2 })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn ctx(p: u64, r: u32) -> CycloContext {
        CycloContext::new(Arc::new(make_field(p, r).unwrap()))
    }

    /// Hand-counted traces of x³+y³+1 = λxy over F_7 give, via the relation
    /// n(μ) = −a(3/μ) plus n(0) = 0 and n(1) = −1, this value vector.
    const N7: [i64; 7] = [0, -1, -1, 1, -1, 1, 1];

    #[test]
    fn aux_prime_and_zeta_shape() {
        let c = ctx(7, 1);
        assert!(c.ell > 56 && c.ell % 6 == 1 && crate::field::is_prime(c.ell));
        assert_eq!(mod_pow(c.zeta, 6, c.ell), 1);
        for d in [1u64, 2, 3] {
            assert_ne!(mod_pow(c.zeta, d, c.ell), 1);
        }
    }

    #[test]
    fn char_eval_values() {
        let c = ctx(7, 1);
        assert_eq!(c.char_eval(0, 5), 1);
        for j in 0..6 {
            assert_eq!(c.char_eval(j, 0), 0);
        }
        let e3 = c.psi3().unwrap();
        let v = c.char_eval(e3, c.ft.g);
        assert_ne!(v, 1);
        assert_eq!(mod_pow(v, 3, c.ell), 1);
    }

    #[test]
    fn jacobi_sum_small_cases() {
        let c = ctx(7, 1);
        let ell = c.ell;
        // J(ε, ε) = q − 2.
        assert_eq!(c.jacobi_sum(0, 0), 5);
        // J(χ, χ̄) = −χ(−1) for nontrivial χ.
        for j in 1..6 {
            let expected = (ell - c.char_eval(j, c.ft.from_int(-1))) % ell;
            assert_eq!(c.jacobi_sum(j, j), expected, "j = {j}");
        }
        // Σ_{x≠0,1} ψ₃(x) = −ψ₃(1) = −1.
        let e3 = c.psi3().unwrap();
        assert_eq!(c.jacobi_sum(e3, 0), ell - 1);
    }

    #[test]
    fn greene_binomial_epsilon_over_epsilon() {
        let c = ctx(7, 1);
        assert_eq!(c.greene_binomial_scaled(0, 0), 5);
        // ψ₃(−1) = 1 for q = 7, so the (ψ₃ over ψ₃) entry is J(ψ₃, ψ̄₃) as-is.
        let e3 = c.psi3().unwrap();
        assert_eq!(c.char_eval(e3, c.ft.from_int(-1)), 1);
        assert_eq!(c.greene_binomial_scaled(e3, e3), c.jacobi_sum(e3, e3));
    }

    #[test]
    fn no_cubic_character_when_q_is_2_mod_3() {
        let c = ctx(5, 1);
        assert_eq!(c.psi3().unwrap_err(), Error::NoCubicCharacter(4));
        assert!(c.hess_2f1(2).is_err());
    }

    #[test]
    fn f7_values_match_hand_counts() {
        let c = ctx(7, 1);
        for lam in 0..7u32 {
            assert_eq!(c.hess_2f1(lam).unwrap(), N7[lam as usize], "λ = {lam}");
        }
    }

    #[test]
    fn batch_matches_single_and_hand_counts() {
        let c = ctx(7, 1);
        assert_eq!(c.hess_2f1_all().unwrap(), N7.to_vec());
        let c13 = ctx(13, 1);
        let all = c13.hess_2f1_all().unwrap();
        for lam in 0..13u32 {
            assert_eq!(all[lam as usize], c13.hess_2f1(lam).unwrap());
        }
    }

    #[test]
    fn hasse_window_and_cube_invariance() {
        for (p, r) in [(13u64, 1u32), (19, 1), (5, 2)] {
            let c = ctx(p, r);
            let q = c.q();
            let bound = (4 * q as u64).sqrt() as i64;
            let all = c.hess_2f1_all().unwrap();
            assert!(all.iter().all(|n| n.abs() <= bound));
            assert_eq!(all[0], 0);
            // n depends only on λ³: multiply λ by each cube root of unity.
            let (roots, _) = c.ft.cube_data();
            for lam in c.ft.elements() {
                for &w in &roots {
                    assert_eq!(all[lam as usize], all[c.ft.mul(w, lam) as usize]);
                }
            }
            // λ³ = 1 forces the argument-1 value −1/q.
            for lam in c.ft.elements() {
                if c.ft.cube(lam) == 1 {
                    assert_eq!(all[lam as usize], -1);
                }
            }
        }
    }

    #[test]
    fn table_entries_match_direct_summation() {
        let c = ctx(13, 1);
        let e3 = c.psi3().unwrap();
        let table = JacobiTable::build(&c).unwrap();
        for j in [0u32, 1, 4, 7, 11] {
            assert_eq!(table.t1[j as usize], c.greene_binomial_scaled((e3 + j) % 12, j));
            assert_eq!(table.t2[j as usize], c.greene_binomial_scaled((2 * e3 + j) % 12, j));
        }
    }

    #[test]
    fn swapping_the_cubic_character_changes_nothing() {
        // The defining sum is symmetric in ψ₃ and ψ̄₃; rebuild the sum with
        // the roles swapped using only the public binomial evaluator.
        let c = ctx(13, 1);
        let e3 = c.psi3().unwrap();
        let qm1 = 12u32;
        let inv = mod_inv(qm1 as u64, c.ell);
        for lam in 0..13u32 {
            let cube = c.ft.cube(lam);
            let mut s = 0u64;
            for j in 0..qm1 {
                let t1 = c.greene_binomial_scaled((2 * e3 + j) % qm1, j);
                let t2 = c.greene_binomial_scaled((e3 + j) % qm1, j);
                s = (s + t1 * t2 % c.ell * c.char_eval(j, cube)) % c.ell;
            }
            assert_eq!(c.lift(s * inv % c.ell).unwrap(), c.hess_2f1(lam).unwrap());
        }
    }

    #[test]
    fn embedding_independence_across_aux_primes() {
        for (p, r) in [(7u64, 1u32), (13, 1)] {
            let ft = Arc::new(make_field(p, r).unwrap());
            let c1 = CycloContext::new(ft.clone());
            let c2 = CycloContext::with_min_aux_prime(ft, c1.ell);
            assert!(c2.ell > c1.ell);
            assert_eq!(c1.hess_2f1_all().unwrap(), c2.hess_2f1_all().unwrap());
        }
    }

    /// Independent floating-point channel: evaluate the same sum with
    /// complex roots of unity and check the lifted integers are what the
    /// rounded real parts say. Debug-only sanity; the modular path is the
    /// source of truth.
    #[test]
    fn float_channel_agrees() {
        use std::f64::consts::TAU;
        for (p, r) in [(7u64, 1u32), (13, 1)] {
            let c = ctx(p, r);
            let q = c.q() as f64;
            let qm1 = c.qm1();
            let e3 = c.psi3().unwrap();
            let chi = |j: u32, x: u32| -> (f64, f64) {
                if x == 0 {
                    return (0.0, 0.0);
                }
                let t = TAU * (j as u64 * c.ft.ind(x) as u64 % qm1 as u64) as f64 / qm1 as f64;
                (t.cos(), t.sin())
            };
            let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
            for lam in 0..c.q() {
                let cube = c.ft.cube(lam);
                let mut s = (0.0, 0.0);
                for j in 0..qm1 {
                    let mut t1 = (0.0, 0.0);
                    let mut t2 = (0.0, 0.0);
                    for x in c.ft.elements() {
                        if x == 0 || x == 1 {
                            continue;
                        }
                        let omx = c.ft.sub(1, x);
                        let a = mul(chi((e3 + j) % qm1, x), chi((qm1 - j) % qm1, omx));
                        let b = mul(chi((2 * e3 + j) % qm1, x), chi((qm1 - j) % qm1, omx));
                        t1 = (t1.0 + a.0, t1.1 + a.1);
                        t2 = (t2.0 + b.0, t2.1 + b.1);
                    }
                    let sign = chi(j, c.ft.from_int(-1));
                    let term = mul(mul(mul(t1, t2), mul(sign, sign)), chi(j, cube));
                    s = (s.0 + term.0, s.1 + term.1);
                }
                let val = s.0 / qm1 as f64;
                let n = c.hess_2f1(lam).unwrap();
                assert!((val - n as f64).abs() < 1e-6, "q={q} λ={lam}: {val} vs {n}");
                assert!(s.1.abs() / (qm1 as f64) < 1e-6);
            }
        }
    }
}
