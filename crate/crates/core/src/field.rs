//! Exact arithmetic in the tower GF(p) ⊆ GF(q) ⊆ GF(q²) ⊆ GF(q⁴), q = p^e.
//!
//! Elements are base-p packed coefficient integers ("codes", little-endian:
//! code = Σ aᵢ pⁱ). All arithmetic runs on discrete-log tables built from a
//! primitive modulus: mul/inv/pow/Frobenius are exponent arithmetic modulo
//! q⁴−1 and addition goes through a Zech-logarithm table, so every operation
//! is O(1) after construction. The construction walks the full cyclic group
//! once, which doubles as a primitivity proof of the modulus.

use crate::error::{Error, Result};

/// Marker for "no logarithm" (the zero element) in the log and Zech tables.
const NO_LOG: u64 = u64::MAX;

/// Largest table size built without an explicit override (2^24 entries
/// covers every q ≤ 49 of the built-in modulus table).
pub const DEFAULT_TABLE_LIMIT: u64 = 1 << 24;

/// Built-in primitive moduli over GF(p) of degree 4e, ascending
/// coefficients. Each is the lexicographically smallest primitive monic
/// polynomial for its (p, e); primitivity is re-proved on every field
/// construction by the table walk.
const BUILTIN_MODULI: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1, 0, 0, 1]),
    (2, 2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 3, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[2, 1, 0, 0, 1]),
    (3, 2, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 3, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, 1, &[2, 2, 1, 0, 1]),
    (5, 2, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
    (5, 3, &[3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, 1, &[5, 3, 1, 0, 1]),
    (7, 2, &[3, 1, 0, 0, 0, 0, 0, 0, 1]),
    (7, 3, &[3, 2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
];

/// An element of GF(q⁴), identified by its packed coefficient code.
///
/// A `Felt` is only meaningful relative to the [`FieldSpec`] that produced
/// it; codes are comparable and hashable so canonical sets sort bit-exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Felt(u64);

impl Felt {
    pub(crate) fn new(code: u64) -> Self {
        Felt(code)
    }

    pub fn code(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl std::fmt::Display for Felt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The tower GF(p) ⊆ GF(q) ⊆ GF(q²) ⊆ GF(q⁴) with its exp/log/Zech tables.
///
/// Immutable after construction; every operation is pure, so a `FieldSpec`
/// can be shared freely across threads.
pub struct FieldSpec {
    p: u64,
    e: u32,
    q: u64,
    q2: u64,
    q4: u64,
    /// Multiplicative group order q⁴ − 1.
    order: u64,
    modulus: Vec<u64>,
    /// exp[k] = code of g^k for k in [0, q⁴−1).
    exp: Vec<u64>,
    /// log[code] = k with g^k = code; NO_LOG at index 0.
    log: Vec<u64>,
    /// zech[k] = log(1 + g^k); NO_LOG where 1 + g^k = 0.
    zech: Vec<u64>,
    /// q^i mod (q⁴−1) for i in 0..4.
    q_pows: [u64; 4],
}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("q4", &self.q4)
            .field("modulus", &self.modulus)
            .finish()
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pack(coeffs: &[u64], p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl FieldSpec {
    /// Builds GF(p^{4e}) from the built-in modulus table.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        Self::with_options(p, e, None, DEFAULT_TABLE_LIMIT)
    }

    /// Builds GF(p^{4e}) with a caller-supplied modulus (ascending
    /// coefficients, length 4e+1, leading coefficient nonzero).
    pub fn with_modulus(p: u64, e: u32, modulus: &[u64]) -> Result<Self> {
        Self::with_options(p, e, Some(modulus.to_vec()), DEFAULT_TABLE_LIMIT)
    }

    pub fn with_options(
        p: u64,
        e: u32,
        modulus: Option<Vec<u64>>,
        table_limit: u64,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeCharacteristic(p));
        }
        if e == 0 {
            return Err(Error::BadModulus("e must be at least 1".into()));
        }
        let degree = 4 * e;
        let q = p.checked_pow(e).ok_or(Error::TableLimitExceeded {
            q4: u64::MAX,
            limit: table_limit,
        })?;
        let q4 = q
            .checked_pow(4)
            .filter(|&v| v <= table_limit)
            .ok_or(Error::TableLimitExceeded {
                q4: q.saturating_pow(4),
                limit: table_limit,
            })?;

        let mut modulus = match modulus {
            Some(m) => m,
            None => BUILTIN_MODULI
                .iter()
                .find(|&&(bp, be, _)| bp == p && be == e)
                .map(|&(_, _, m)| m.to_vec())
                .ok_or(Error::NoBuiltinModulus { p, e })?,
        };
        if modulus.len() != degree as usize + 1 {
            return Err(Error::BadModulus(format!(
                "expected {} coefficients, got {}",
                degree + 1,
                modulus.len()
            )));
        }
        for c in modulus.iter_mut() {
            *c %= p;
        }
        let lead = modulus[degree as usize];
        if lead == 0 {
            return Err(Error::BadModulus("leading coefficient is zero".into()));
        }
        if lead != 1 {
            // normalize monic
            let inv = mod_inverse(lead, p).expect("p prime, lead nonzero");
            for c in modulus.iter_mut() {
                *c = *c * inv % p;
            }
        }

        let (exp, log) = build_exp_log(p, degree as usize, &modulus, q4)?;
        let order = q4 - 1;
        let mut zech = vec![NO_LOG; order as usize];
        for (k, &code) in exp.iter().enumerate() {
            let d0 = code % p;
            let bumped = code - d0 + (d0 + 1) % p;
            zech[k] = if bumped == 0 {
                NO_LOG
            } else {
                log[bumped as usize]
            };
        }
        let mut q_pows = [1u64; 4];
        for i in 1..4 {
            q_pows[i] = mulmod(q_pows[i - 1], q % order, order);
        }

        Ok(FieldSpec {
            p,
            e,
            q,
            q2: q * q,
            q4,
            order,
            modulus,
            exp,
            log,
            zech,
            q_pows,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn q2(&self) -> u64 {
        self.q2
    }

    pub fn q4(&self) -> u64 {
        self.q4
    }

    /// Multiplicative group order q⁴ − 1.
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Felt {
        Felt(0)
    }

    pub fn one(&self) -> Felt {
        Felt(1)
    }

    /// The residue class of the indeterminate; a generator of GF(q⁴)*.
    pub fn generator(&self) -> Felt {
        Felt(self.exp[1 % self.order as usize])
    }

    /// g^k for any signed k (reduced modulo q⁴−1).
    pub fn g_pow(&self, k: i64) -> Felt {
        let k = k.rem_euclid(self.order as i64) as u64;
        Felt(self.exp[k as usize])
    }

    /// Validates an external element code.
    pub fn element(&self, code: u64) -> Result<Felt> {
        if code < self.q4 {
            Ok(Felt(code))
        } else {
            Err(Error::BadElementCode { code, q4: self.q4 })
        }
    }

    /// All q⁴ elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        (0..self.q4).map(Felt)
    }

    /// All q⁴ − 1 nonzero elements in code order.
    pub fn units(&self) -> impl Iterator<Item = Felt> + '_ {
        (1..self.q4).map(Felt)
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: Felt) -> Option<u64> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize])
        }
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let i = self.log[a.0 as usize];
        let j = self.log[b.0 as usize];
        // a + b = g^j (1 + g^(i-j))
        let d = (i + self.order - j) % self.order;
        let z = self.zech[d as usize];
        if z == NO_LOG {
            Felt(0)
        } else {
            Felt(self.exp[((j + z) % self.order) as usize])
        }
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if self.p == 2 || a.is_zero() {
            return a;
        }
        let k = self.log[a.0 as usize];
        Felt(self.exp[((k + self.order / 2) % self.order) as usize])
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt(0);
        }
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        Felt(self.exp[(k % self.order) as usize])
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::InversionOfZero);
        }
        let k = self.log[a.0 as usize];
        Ok(Felt(self.exp[((self.order - k) % self.order) as usize]))
    }

    /// a / b, erroring on b = 0.
    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// a^k for signed k; negative k inverts (erroring on zero base).
    pub fn pow(&self, a: Felt, k: i64) -> Result<Felt> {
        if a.is_zero() {
            return match k.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Felt(0)),
                std::cmp::Ordering::Equal => Ok(Felt(1)),
                std::cmp::Ordering::Less => Err(Error::InversionOfZero),
            };
        }
        let k = k.rem_euclid(self.order as i64) as u64;
        let e = mulmod(self.log[a.0 as usize], k, self.order);
        Ok(Felt(self.exp[e as usize]))
    }

    /// a^{q^i}; the Frobenius power over GF(q), i taken modulo 4.
    pub fn frobenius(&self, a: Felt, i: u32) -> Felt {
        if a.is_zero() {
            return a;
        }
        let e = mulmod(
            self.log[a.0 as usize],
            self.q_pows[(i % 4) as usize],
            self.order,
        );
        Felt(self.exp[e as usize])
    }

    /// a^{p^k}; the absolute Frobenius power, k taken modulo 4e.
    pub fn frobenius_p(&self, a: Felt, k: u32) -> Felt {
        if a.is_zero() {
            return a;
        }
        let k = k % (4 * self.e);
        let mut e = self.log[a.0 as usize];
        let p = self.p % self.order;
        for _ in 0..k {
            e = mulmod(e, p, self.order);
        }
        Felt(self.exp[e as usize])
    }

    /// N_{q⁴/q^s}(a) = a^{(q⁴−1)/(q^s−1)} for s in {1, 2}; lands in GF(q^s).
    pub fn norm(&self, a: Felt, s: u32) -> Felt {
        assert!(s == 1 || s == 2, "norm target must be GF(q) or GF(q^2)");
        if a.is_zero() {
            return a;
        }
        let exp_factor = if s == 1 {
            // q^3 + q^2 + q + 1
            self.q2 * self.q + self.q2 + self.q + 1
        } else {
            self.q2 + 1
        };
        let e = mulmod(self.log[a.0 as usize], exp_factor % self.order, self.order);
        Felt(self.exp[e as usize])
    }

    /// Tr_{q⁴/q}(a) = a + a^q + a^{q²} + a^{q³}; lands in GF(q).
    pub fn trace(&self, a: Felt) -> Felt {
        let mut acc = a;
        for i in 1..4 {
            acc = self.add(acc, self.frobenius(a, i));
        }
        acc
    }

    /// True iff a lies in GF(q^s), i.e. a^{q^s} = a. s must divide 4.
    pub fn in_subfield(&self, a: Felt, s: u32) -> bool {
        assert!(s == 1 || s == 2 || s == 4, "s must divide 4");
        if a.is_zero() || s == 4 {
            return true;
        }
        // a^{q^s} = a  <=>  (q^s − 1)·log a ≡ 0 (mod q⁴−1)
        let qs = if s == 1 { self.q } else { self.q2 };
        mulmod(self.log[a.0 as usize], (qs - 1) % self.order, self.order) == 0
    }

    /// Finds w with w^d = b by solving d·m ≡ log b (mod q⁴−1), or reports
    /// that no root exists. b must be nonzero.
    pub fn solve_power_root(&self, b: Felt, d: i64) -> Result<Option<Felt>> {
        if b.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = self.order;
        let d = d.rem_euclid(n as i64) as u64;
        let target = self.log[b.0 as usize];
        if d == 0 {
            // w^0 = 1: solvable only for b = 1
            return Ok(if target == 0 { Some(Felt(1)) } else { None });
        }
        let g = gcd(d, n);
        if !target.is_multiple_of(g) {
            return Ok(None);
        }
        let n_red = n / g;
        let d_red = (d / g) % n_red;
        let t_red = (target / g) % n_red;
        let inv = mod_inverse(d_red, n_red).expect("d/g coprime to n/g");
        let m = mulmod(t_red, inv, n_red);
        let w = Felt(self.exp[m as usize]);
        debug_assert_eq!(self.pow(w, d as i64).unwrap(), b);
        Ok(Some(w))
    }

    /// Unpacks a code into its base-p coefficient vector (length 4e).
    pub fn coeff_vector(&self, a: Felt) -> Vec<u64> {
        let mut c = a.0;
        (0..4 * self.e)
            .map(|_| {
                let d = c % self.p;
                c /= self.p;
                d
            })
            .collect()
    }

    /// Packs a base-p coefficient vector back into a code.
    pub fn from_coeff_vector(&self, coeffs: &[u64]) -> Result<Felt> {
        if coeffs.len() != (4 * self.e) as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::BadModulus("bad coefficient vector".into()));
        }
        Ok(Felt(pack(coeffs, self.p)))
    }
}

fn build_exp_log(p: u64, degree: usize, modulus: &[u64], q4: u64) -> Result<(Vec<u64>, Vec<u64>)> {
    let order = q4 - 1;
    let mut exp = vec![0u64; order as usize];
    let mut log = vec![NO_LOG; q4 as usize];
    let mut cur = vec![0u64; degree];
    cur[0] = 1;
    for k in 0..order {
        let code = pack(&cur, p);
        if code == 0 || log[code as usize] != NO_LOG {
            return Err(Error::NotPrimitive { p });
        }
        exp[k as usize] = code;
        log[code as usize] = k;
        // multiply by x and reduce by the monic modulus
        let carry = cur[degree - 1];
        for j in (1..degree).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if carry != 0 {
            for j in 0..degree {
                cur[j] = (cur[j] + p - carry * modulus[j] % p) % p;
            }
        }
    }
    if pack(&cur, p) != 1 {
        return Err(Error::NotPrimitive { p });
    }
    Ok((exp, log))
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Inverse of a modulo m for gcd(a, m) = 1.
fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let div = r0 / r1;
        (r0, r1) = (r1, r0 - div * r1);
        (s0, s1) = (s1, s0 - div * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}
