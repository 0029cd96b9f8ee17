//! Arithmetic in the finite field `F_q`, `q = p^n`, with a canonical
//! enumeration of elements.
//!
//! Elements are represented by their canonical index in `{0, ..., q-1}`,
//! the base-`p` evaluation of the polynomial-basis coefficient vector
//! (least-degree coefficient first). Index 0 is the additive identity and
//! index 1 the multiplicative identity. For extension fields the modulus
//! is the lexicographically smallest monic irreducible polynomial of
//! degree `n` over `F_p`, low-degree coefficients compared first, so the
//! whole construction is deterministic across runs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported extension degree (q <= 2^16 for n > 1, so n <= 16).
const MAX_DEG: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime power (or is < 2)")]
    NotPrimePower(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u64),
    #[error("field mismatch: element from F_{elem_q} used with F_{spec_q}")]
    FieldMismatch { spec_q: u64, elem_q: u64 },
    #[error("index {index} out of range for F_{q}")]
    IndexOutOfRange { index: u64, q: u64 },
    #[error("extension fields are only supported up to q = 2^16 (got q = {0})")]
    TooLarge(u64),
}

/// An element of `F_q`, identified by its canonical index.
///
/// The field cardinality is carried alongside the index so that mixing
/// elements of different fields is detectable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldElement {
    index: u64,
    q: u64,
}

impl FieldElement {
    pub fn index(&self) -> u64 {
        self.index
    }

    pub fn is_zero(&self) -> bool {
        self.index == 0
    }
}

/// Description of `F_q` together with its arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    p: u64,
    n: u32,
    q: u64,
    /// Low `n` coefficients of the monic modulus polynomial (the leading
    /// coefficient 1 is implicit). Unused when `n = 1`.
    modulus: Vec<u64>,
}

/// Factors `q` as `p^n`; `None` if `q` is not a prime power or `q < 2`.
fn factor_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0;
    for d in 2..=q {
        if d * d > q {
            p = q; // q itself is prime
            break;
        }
        if q.is_multiple_of(d) {
            p = d;
            break;
        }
    }
    let mut rest = q;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    if rest == 1 {
        Some((p, n))
    } else {
        None
    }
}

/// Builds `F_q` for a prime power `q`.
///
/// Extension fields (`n > 1`) are supported up to `q = 2^16`; prime fields
/// may be larger.
pub fn make_field(q: u64) -> Result<FieldSpec, FieldError> {
    let (p, n) = factor_prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
    if n > 1 && q > 1 << 16 {
        return Err(FieldError::TooLarge(q));
    }
    let modulus = if n == 1 {
        Vec::new()
    } else {
        smallest_irreducible(p, n as usize)
    };
    Ok(FieldSpec { p, n, q, modulus })
}

impl FieldSpec {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Full coefficient vector of the modulus, low degree first, length
    /// `n + 1` (the last entry is the leading 1). Empty for prime fields.
    pub fn modulus(&self) -> Vec<u64> {
        if self.n == 1 {
            Vec::new()
        } else {
            let mut m = self.modulus.clone();
            m.push(1);
            m
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { index: 0, q: self.q }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { index: 1, q: self.q }
    }

    /// The element with the given canonical index.
    pub fn element(&self, index: u64) -> Result<FieldElement, FieldError> {
        if index >= self.q {
            return Err(FieldError::IndexOutOfRange { index, q: self.q });
        }
        Ok(FieldElement { index, q: self.q })
    }

    /// All `q` elements in canonical-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let q = self.q;
        (0..q).map(move |index| FieldElement { index, q })
    }

    /// Coefficient vector (low degree first) of the element with the
    /// given canonical index.
    pub fn coeffs(&self, e: FieldElement) -> Vec<u64> {
        let mut v = e.index;
        let mut out = Vec::with_capacity(self.n as usize);
        for _ in 0..self.n {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn check(&self, e: FieldElement) -> Result<(), FieldError> {
        if e.q != self.q {
            return Err(FieldError::FieldMismatch { spec_q: self.q, elem_q: e.q });
        }
        Ok(())
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement { index: self.add_raw(a.index, b.index), q: self.q })
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement { index: self.add_raw(a.index, self.neg_raw(b.index)), q: self.q })
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(FieldElement { index: self.neg_raw(a.index), q: self.q })
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement { index: self.mul_raw(a.index, b.index), q: self.q })
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        if a.index == 0 {
            return Err(FieldError::DivisionByZero(self.q));
        }
        Ok(FieldElement { index: self.pow_raw(a.index, self.q - 2), q: self.q })
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> Result<FieldElement, FieldError> {
        self.check(a)?;
        Ok(FieldElement { index: self.pow_raw(a.index, e), q: self.q })
    }

    // Index-level arithmetic, used on hot paths once membership has been
    // established. Indices must be < q.

    pub(crate) fn add_raw(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            let s = a + b;
            if s >= self.q {
                s - self.q
            } else {
                s
            }
        } else {
            let (da, db) = (self.digits(a), self.digits(b));
            let mut out = [0u64; MAX_DEG];
            for i in 0..self.n as usize {
                let s = da[i] + db[i];
                out[i] = if s >= self.p { s - self.p } else { s };
            }
            self.index_of(&out)
        }
    }

    pub(crate) fn neg_raw(&self, a: u64) -> u64 {
        if self.n == 1 {
            if a == 0 {
                0
            } else {
                self.q - a
            }
        } else {
            let da = self.digits(a);
            let mut out = [0u64; MAX_DEG];
            for i in 0..self.n as usize {
                out[i] = if da[i] == 0 { 0 } else { self.p - da[i] };
            }
            self.index_of(&out)
        }
    }

    pub(crate) fn mul_raw(&self, a: u64, b: u64) -> u64 {
        if self.n == 1 {
            ((a as u128 * b as u128) % self.q as u128) as u64
        } else {
            let (da, db) = (self.digits(a), self.digits(b));
            let n = self.n as usize;
            let mut prod = [0u64; 2 * MAX_DEG];
            for i in 0..n {
                if da[i] == 0 {
                    continue;
                }
                for j in 0..n {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
                }
            }
            // reduce modulo the monic modulus
            for i in (n..2 * n - 1).rev() {
                let c = prod[i];
                if c == 0 {
                    continue;
                }
                prod[i] = 0;
                for j in 0..n {
                    let sub = (c * self.modulus[j]) % self.p;
                    prod[i - n + j] = (prod[i - n + j] + self.p - sub) % self.p;
                }
            }
            self.index_of(&prod[..MAX_DEG].try_into().unwrap())
        }
    }

    pub(crate) fn pow_raw(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    fn digits(&self, mut v: u64) -> [u64; MAX_DEG] {
        let mut out = [0u64; MAX_DEG];
        for d in out.iter_mut().take(self.n as usize) {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn index_of(&self, digits: &[u64; MAX_DEG]) -> u64 {
        let mut acc = 0u64;
        for i in (0..self.n as usize).rev() {
            acc = acc * self.p + digits[i];
        }
        acc
    }
}

/// Lexicographically smallest monic irreducible polynomial of degree `n`
/// over `F_p`, returned as its low `n` coefficients. Coefficients are
/// compared low degree first.
fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = p.pow(n as u32);
    for idx in 0..total {
        // idx encodes coefficients with c_0 as the most significant digit,
        // so increasing idx is lexicographic order on (c_0, ..., c_{n-1}).
        let mut coeffs = vec![0u64; n];
        let mut v = idx;
        for c in coeffs.iter_mut().rev() {
            *c = v % p;
            v /= p;
        }
        if is_irreducible(p, &coeffs) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial of degree {n} exists over F_{p}")
}

/// Irreducibility of the monic polynomial with the given low coefficients,
/// by trial division against every monic polynomial of degree 1..=n/2.
fn is_irreducible(p: u64, low: &[u64]) -> bool {
    let n = low.len();
    let mut poly = low.to_vec();
    poly.push(1);
    for d in 1..=n / 2 {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = vec![0u64; d + 1];
            div[d] = 1;
            let mut v = idx;
            for c in div.iter_mut().take(d) {
                *c = v % p;
                v /= p;
            }
            if poly_rem_is_zero(p, &poly, &div) {
                return false;
            }
        }
    }
    true
}

/// Whether `divisor` (monic) divides `poly` (monic) over `F_p`.
fn poly_rem_is_zero(p: u64, poly: &[u64], divisor: &[u64]) -> bool {
    let mut rem = poly.to_vec();
    let d = divisor.len() - 1;
    while rem.len() > d {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (j, &c) in divisor.iter().enumerate() {
                let k = deg - d + j;
                rem[k] = (rem[k] + p - (lead * c) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}
