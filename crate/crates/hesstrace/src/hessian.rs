//! The Hessian family x³+y³+1 = λxy: point counts, Frobenius traces,
//! isomorphism-class fingerprints, and a brute-force Weierstrass census
//! used as an independent oracle at tiny field sizes.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::FieldTable;

/// λ³ = 27 is exactly the singular locus of the family.
pub fn is_singular(ft: &FieldTable, lam: u32) -> bool {
    ft.cube(lam) == ft.from_int(27)
}

/// |E_λ(F_q)|: affine solutions plus the points (1 : −ω : 0), ω³ = 1.
/// Brute force over all (x, y), O(q²) per λ — fine for spot checks; use
/// `trace_all` for whole-family work.
pub fn count_points(ft: &FieldTable, lam: u32) -> Result<u64> {
    if is_singular(ft, lam) {
        return Err(Error::SingularCurve);
    }
    let cubes: Vec<u32> = ft.elements().map(|x| ft.cube(x)).collect();
    let mut affine = 0u64;
    for x in ft.elements() {
        for y in ft.elements() {
            let lhs = ft.add(ft.add(cubes[x as usize], cubes[y as usize]), 1);
            if lhs == ft.mul(lam, ft.mul(x, y)) {
                affine += 1;
            }
        }
    }
    let (roots, _) = ft.cube_data();
    Ok(affine + roots.len() as u64)
}

pub fn trace(ft: &FieldTable, lam: u32) -> Result<i64> {
    Ok(ft.q() as i64 + 1 - count_points(ft, lam)? as i64)
}

/// Traces for every nonsingular λ, indexed by the element encoding.
pub struct TraceTable {
    pub q: u32,
    a: Vec<Option<i64>>,
}

impl TraceTable {
    pub fn get(&self, lam: u32) -> Option<i64> {
        self.a[lam as usize]
    }

    /// (λ, a(λ)) over nonsingular λ in encoding order.
    pub fn entries(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.a.iter().enumerate().filter_map(|(l, a)| a.map(|a| (l as u32, a)))
    }
}

/// One O(q²) histogram pass: for xy ≠ 0 the curve equation says
/// λ = (x³+y³+1)/(xy), so bucketing that ratio counts the xy ≠ 0 points of
/// every curve at once. The xy = 0 solutions (x or y a cube root of −1) and
/// the points at infinity are λ-independent constants.
pub fn trace_all(ft: &FieldTable) -> TraceTable {
    let q = ft.q();
    let cubes: Vec<u32> = ft.elements().map(|x| ft.cube(x)).collect();
    let invs: Vec<u32> = std::iter::once(0)
        .chain((1..q).map(|x| ft.inv(x)))
        .collect();

    let hist = (1..q)
        .into_par_iter()
        .fold(
            || vec![0u32; q as usize],
            |mut bucket, x| {
                let cx1 = ft.add(cubes[x as usize], 1);
                let ix = invs[x as usize];
                for y in 1..q {
                    let num = ft.add(cx1, cubes[y as usize]);
                    let lam = ft.mul(num, ft.mul(ix, invs[y as usize]));
                    bucket[lam as usize] += 1;
                }
                bucket
            },
        )
        .reduce(
            || vec![0u32; q as usize],
            |mut a, b| {
                for (s, t) in a.iter_mut().zip(b) {
                    *s += t;
                }
                a
            },
        );

    let (roots, count) = ft.cube_data();
    let c = count(ft.from_int(-1)) as i64;
    let i = roots.len() as i64;
    let a = ft
        .elements()
        .map(|lam| {
            if is_singular(ft, lam) {
                None
            } else {
                Some(q as i64 + 1 - (hist[lam as usize] as i64 + 2 * c + i))
            }
        })
        .collect();
    TraceTable { q, a }
}

/// j(E_λ) = λ³(λ³+216)³ / (λ³−27)³.
pub fn j_invariant(ft: &FieldTable, lam: u32) -> Result<u32> {
    if is_singular(ft, lam) {
        return Err(Error::SingularCurve);
    }
    let c3 = ft.cube(lam);
    let num = ft.mul(c3, ft.cube(ft.add(c3, ft.from_int(216))));
    let den = ft.cube(ft.sub(c3, ft.from_int(27)));
    Ok(ft.div(num, den))
}

/// A_λ = λ(λ³+216); j(E_λ) = 0 exactly at its roots.
pub fn a_coeff(ft: &FieldTable, lam: u32) -> u32 {
    ft.mul(lam, ft.add(ft.cube(lam), ft.from_int(216)))
}

/// B_λ = λ⁶−540λ³−18³; j(E_λ) = 1728 exactly at its roots.
pub fn b_coeff(ft: &FieldTable, lam: u32) -> u32 {
    let c3 = ft.cube(lam);
    ft.sub(ft.sub(ft.mul(c3, c3), ft.mul(ft.from_int(540), c3)), ft.from_int(5832))
}

/// A block of the (j, trace) fingerprint partition of {λ : λ³ ≠ 27}.
/// Isomorphic curves necessarily land in the same block; the converse is
/// what the cardinality tests probe, so blocks carry everything needed to
/// judge their sizes.
pub struct FingerprintBlock {
    pub j: u32,
    pub trace: i64,
    pub members: Vec<u32>,
}

pub fn iso_fingerprint_partition(ft: &FieldTable) -> Vec<FingerprintBlock> {
    let tt = trace_all(ft);
    let mut blocks: BTreeMap<(u32, i64), Vec<u32>> = BTreeMap::new();
    for (lam, a) in tt.entries() {
        blocks
            .entry((j_invariant(ft, lam).expect("nonsingular by construction"), a))
            .or_default()
            .push(lam);
    }
    blocks
        .into_iter()
        .map(|((j, trace), members)| FingerprintBlock { j, trace, members })
        .collect()
}

/// One isomorphism class of y² = x³+ax+b curves.
#[derive(Debug)]
pub struct CensusClass {
    pub rep: (u32, u32),
    pub size: u32,
    pub j: u32,
    pub trace: i64,
    /// #E(F_q)[3] ∈ {1, 3, 9}.
    pub t3: u32,
}

#[derive(Debug)]
pub struct CurveCensus {
    pub q: u32,
    pub classes: Vec<CensusClass>,
}

impl CurveCensus {
    pub fn count_matching(&self, trace: i64, min_t3: u32) -> usize {
        self.classes.iter().filter(|c| c.trace == trace && c.t3 >= min_t3).count()
    }
}

/// Brute-force isomorphism census of all nonsingular y² = x³+ax+b over F_q,
/// classes formed by the twist rule (a, b) ~ (u⁴a, u⁶b). Refused above
/// q = 64: this is an oracle, and everything it checks is O(q³)-ish.
pub fn census(ft: &FieldTable) -> Result<CurveCensus> {
    let q = ft.q();
    if q as u64 > 64 {
        return Err(Error::OracleScaleExceeded(q as u64));
    }

    let mut orbits: BTreeMap<(u32, u32), Vec<(u32, u32)>> = BTreeMap::new();
    for a in ft.elements() {
        for b in ft.elements() {
            if discriminant_zero(ft, a, b) {
                continue;
            }
            let mut canon = (a, b);
            for u in 1..q {
                let cand = (ft.mul(ft.pow(u, 4), a), ft.mul(ft.pow(u, 6), b));
                if cand < canon {
                    canon = cand;
                }
            }
            orbits.entry(canon).or_default().push((a, b));
        }
    }

    let classes = orbits
        .into_par_iter()
        .map(|(rep, members)| {
            let (a, b) = rep;
            CensusClass {
                rep,
                size: members.len() as u32,
                j: weierstrass_j(ft, a, b),
                trace: weierstrass_trace(ft, a, b),
                t3: three_torsion_count(ft, a, b),
            }
        })
        .collect();
    Ok(CurveCensus { q, classes })
}

fn discriminant_zero(ft: &FieldTable, a: u32, b: u32) -> bool {
    let d = ft.add(
        ft.mul(ft.from_int(4), ft.cube(a)),
        ft.mul(ft.from_int(27), ft.mul(b, b)),
    );
    d == 0
}

fn weierstrass_j(ft: &FieldTable, a: u32, b: u32) -> u32 {
    let a3 = ft.mul(ft.from_int(4), ft.cube(a));
    let den = ft.add(a3, ft.mul(ft.from_int(27), ft.mul(b, b)));
    ft.div(ft.mul(ft.from_int(1728), a3), den)
}

/// χ₂ point count: |E| = q + 1 + Σ_x χ₂(x³+ax+b).
fn weierstrass_trace(ft: &FieldTable, a: u32, b: u32) -> i64 {
    let mut sum = 0i64;
    for x in ft.elements() {
        let v = ft.add(ft.add(ft.cube(x), ft.mul(a, x)), b);
        if v != 0 {
            sum += if ft.ind(v) % 2 == 0 { 1 } else { -1 };
        }
    }
    -sum
}

/// 3P = O for affine P = (x, y) iff 2P = −P, which for y ≠ 0 reduces to
/// ((3x²+a)/(2y))² = 3x; y = 0 points have order 2.
fn three_torsion_count(ft: &FieldTable, a: u32, b: u32) -> u32 {
    let mut t3 = 1; // the point at infinity
    for x in ft.elements() {
        let rhs = ft.add(ft.add(ft.cube(x), ft.mul(a, x)), b);
        for y in ft.elements() {
            if y != 0 && ft.mul(y, y) == rhs {
                let m = ft.div(
                    ft.add(ft.mul(ft.from_int(3), ft.mul(x, x)), a),
                    ft.mul(ft.from_int(2), y),
                );
                if ft.mul(m, m) == ft.mul(ft.from_int(3), x) {
                    t3 += 1;
                }
            }
        }
    }
    t3
}
