//! Arithmetic in F_p and F_{p^2} with exp/discrete-log tables.
//!
//! Elements are stored in a canonical integer encoding `c0 + p*c1` for
//! `c0 + c1*t`, where `t^2 = nonresidue` realizes F_{p^2} = F_p[t]/(t^2 - n).
//! The encoding makes the discrete-log table a single dense array, which is
//! what the O(q^2) batch loops elsewhere in the crate index in their inner
//! loops.

use crate::error::{Error, Result};

/// Hard ceiling on q = p^r. Every batch algorithm here is O(q^2) words, so
/// this bounds a single run to roughly 10^10 word operations.
pub const Q_CAP: u64 = 1 << 17;

/// Shape of the field: characteristic, degree, and the quadratic nonresidue
/// used to build the degree-2 extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub r: u32,
    pub q: u32,
    /// Smallest quadratic nonresidue mod p; 0 when r = 1 (unused).
    pub nonresidue: u32,
}

/// An element c0 + c1*t, components reduced mod p (c1 = 0 when r = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub c0: u32,
    pub c1: u32,
}

/// A fully tabulated field: generator, powers, and discrete logs.
#[derive(Debug)]
pub struct FieldTable {
    pub spec: FieldSpec,
    /// Generator of the multiplicative group, encoded.
    pub g: u32,
    /// exp[k] = g^k (encoded), k in 0..q-1.
    exp: Vec<u32>,
    /// log[enc(x)] = k with g^k = x; LOG_ZERO at the zero element.
    log: Vec<u32>,
}

const LOG_ZERO: u32 = u32::MAX;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn make_field(p: u64, r: u32) -> Result<FieldTable> {
    if !is_prime(p) {
        return Err(Error::NonPrime(p));
    }
    if p < 5 {
        return Err(Error::SmallCharacteristic(p));
    }
    if r != 1 && r != 2 {
        return Err(Error::UnsupportedDegree(r));
    }
    let q = p.pow(r);
    if q > Q_CAP {
        return Err(Error::CapExceeded { q, cap: Q_CAP });
    }
    let p32 = p as u32;
    let nonresidue = if r == 2 { smallest_nonresidue(p32) } else { 0 };
    let spec = FieldSpec { p: p32, r, q: q as u32, nonresidue };

    // Generator search in lexicographic (c0, c1) order; the first candidate
    // of order exactly q-1 wins, so tables are identical across runs.
    let factors = prime_factors(q - 1);
    let mut g = 0u32;
    'search: for c0 in 0..p32 {
        let c1_range = if r == 1 { 0..1 } else { 0..p32 };
        for c1 in c1_range {
            let cand = FieldElement { c0, c1 };
            if cand == (FieldElement { c0: 0, c1: 0 }) {
                continue;
            }
            if factors.iter().all(|&f| pow_el(&spec, cand, (q - 1) / f) != one()) {
                g = enc(&spec, cand);
                break 'search;
            }
        }
    }
    debug_assert!(g != 0, "F_q^x is cyclic; some candidate must generate");

    let size = q as usize;
    let mut exp = vec![0u32; size - 1];
    let mut log = vec![LOG_ZERO; size];
    let mut acc = one();
    let gel = dec(&spec, g);
    for (k, slot) in exp.iter_mut().enumerate() {
        let e = enc(&spec, acc);
        *slot = e;
        debug_assert_eq!(log[e as usize], LOG_ZERO, "generator order must be exactly q-1");
        log[e as usize] = k as u32;
        acc = mul_el(&spec, acc, gel);
    }
    debug_assert_eq!(acc, one());
    Ok(FieldTable { spec, g, exp, log })
}

fn smallest_nonresidue(p: u32) -> u32 {
    // Euler's criterion; the smallest nonresidue is always prime but scanning
    // every integer from 2 yields the same element deterministically.
    (2..p)
        .find(|&n| mod_pow(n as u64, (p as u64 - 1) / 2, p as u64) == p as u64 - 1)
        .expect("p >= 5 has a nonresidue")
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

fn one() -> FieldElement {
    FieldElement { c0: 1, c1: 0 }
}

fn enc(spec: &FieldSpec, x: FieldElement) -> u32 {
    x.c0 + spec.p * x.c1
}

fn dec(spec: &FieldSpec, e: u32) -> FieldElement {
    FieldElement { c0: e % spec.p, c1: e / spec.p }
}

fn add_el(spec: &FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = spec.p;
    FieldElement { c0: (a.c0 + b.c0) % p, c1: (a.c1 + b.c1) % p }
}

fn neg_el(spec: &FieldSpec, a: FieldElement) -> FieldElement {
    let p = spec.p;
    FieldElement { c0: (p - a.c0) % p, c1: (p - a.c1) % p }
}

fn mul_el(spec: &FieldSpec, a: FieldElement, b: FieldElement) -> FieldElement {
    let p = spec.p as u64;
    if spec.r == 1 {
        return FieldElement { c0: (a.c0 as u64 * b.c0 as u64 % p) as u32, c1: 0 };
    }
    // (a0 + a1 t)(b0 + b1 t) with t^2 = n.
    let n = spec.nonresidue as u64;
    let c0 = (a.c0 as u64 * b.c0 as u64 + n * (a.c1 as u64 * b.c1 as u64 % p)) % p;
    let c1 = (a.c0 as u64 * b.c1 as u64 + a.c1 as u64 * b.c0 as u64) % p;
    FieldElement { c0: c0 as u32, c1: c1 as u32 }
}

fn pow_el(spec: &FieldSpec, mut b: FieldElement, mut e: u64) -> FieldElement {
    let mut acc = one();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_el(spec, acc, b);
        }
        b = mul_el(spec, b, b);
        e >>= 1;
    }
    acc
}

impl FieldTable {
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn q(&self) -> u32 {
        self.spec.q
    }

    pub fn r(&self) -> u32 {
        self.spec.r
    }

    /// Encode an element given by components (reduced here for convenience).
    pub fn el(&self, c0: u64, c1: u64) -> u32 {
        let p = self.spec.p as u64;
        (c0 % p + p * (c1 % p)) as u32
    }

    /// Embed a signed integer (the image of Z in F_q).
    pub fn from_int(&self, n: i64) -> u32 {
        let p = self.spec.p as i64;
        (n.rem_euclid(p)) as u32
    }

    pub fn parts(&self, x: u32) -> FieldElement {
        dec(&self.spec, x)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        enc(&self.spec, add_el(&self.spec, dec(&self.spec, a), dec(&self.spec, b)))
    }

    pub fn neg(&self, a: u32) -> u32 {
        enc(&self.spec, neg_el(&self.spec, dec(&self.spec, a)))
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        enc(&self.spec, mul_el(&self.spec, dec(&self.spec, a), dec(&self.spec, b)))
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let qm1 = self.spec.q - 1;
        self.exp[((qm1 - self.log[a as usize]) % qm1) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let qm1 = (self.spec.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % qm1)) % qm1) as usize]
    }

    /// Discrete log of a nonzero element: g^ind(x) = x.
    pub fn ind(&self, x: u32) -> u32 {
        debug_assert!(x != 0, "zero has no discrete log");
        self.log[x as usize]
    }

    /// g^k for 0 <= k < q-1.
    pub fn exp(&self, k: u32) -> u32 {
        self.exp[k as usize]
    }

    pub fn cube(&self, x: u32) -> u32 {
        self.mul(self.mul(x, x), x)
    }

    /// All elements, encoded: 0..q.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.spec.q
    }

    pub fn three_divides_group_order(&self) -> bool {
        (self.spec.q - 1) % 3 == 0
    }

    /// The set {w : w^3 = 1} together with #{x : x^3 = v} as a lookup.
    pub fn cube_data(&self) -> (Vec<u32>, impl Fn(u32) -> u32 + '_) {
        let qm1 = self.spec.q - 1;
        let roots = if qm1 % 3 == 0 {
            vec![1, self.exp[(qm1 / 3) as usize], self.exp[(2 * qm1 / 3) as usize]]
        } else {
            vec![1]
        };
        let count = move |v: u32| -> u32 {
            if v == 0 {
                1
            } else if qm1 % 3 != 0 {
                1
            } else if self.log[v as usize] % 3 == 0 {
                3
            } else {
                0
            }
        };
        (roots, count)
    }
}
