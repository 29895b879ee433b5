//! Small finite fields `GF(p^k)`.
//!
//! Used to evaluate symbolic scalars at concrete roots of unity. Elements
//! are coefficient vectors modulo a monic irreducible polynomial.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(Vec<u64>);

impl FieldElem {
    pub fn coefficients(&self) -> &[u64] {
        &self.0
    }
}

#[derive(Debug, Clone)]
pub struct FiniteField {
    p: u64,
    k: usize,
    /// Monic, degree `k`, low coefficient first; the leading 1 is omitted.
    modulus: Vec<u64>,
    size: u64,
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Polynomials over `GF(p)` used only while searching for a modulus.
struct PolyRing {
    p: u64,
}

impl PolyRing {
    fn inv(&self, a: u64) -> u64 {
        powmod_u64(a, self.p - 2, self.p)
    }

    fn rem(&self, a: &[u64], m: &[u64]) -> Vec<u64> {
        let mut a = trim(a.to_vec());
        let m = trim(m.to_vec());
        let lead_inv = self.inv(*m.last().unwrap());
        while a.len() >= m.len() {
            let shift = a.len() - m.len();
            let c = a.last().unwrap() * lead_inv % self.p;
            for (i, mi) in m.iter().enumerate() {
                let t = c * mi % self.p;
                a[shift + i] = (a[shift + i] + self.p - t) % self.p;
            }
            a = trim(a);
        }
        a
    }

    fn mulmod(&self, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        self.rem(&out, m)
    }

    fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^e) mod m`.
    fn frobenius_x(&self, e: usize, m: &[u64]) -> Vec<u64> {
        let mut x = self.rem(&[0, 1], m);
        for _ in 0..e {
            let mut r = vec![1u64];
            let mut b = x.clone();
            let mut n = self.p;
            while n > 0 {
                if n & 1 == 1 {
                    r = self.mulmod(&r, &b, m);
                }
                b = self.mulmod(&b, &b, m);
                n >>= 1;
            }
            x = r;
        }
        x
    }

    fn sub_x(&self, a: &[u64]) -> Vec<u64> {
        let mut a = a.to_vec();
        if a.len() < 2 {
            a.resize(2, 0);
        }
        a[1] = (a[1] + self.p - 1) % self.p;
        trim(a)
    }

    /// Rabin's irreducibility test.
    fn is_irreducible(&self, f: &[u64], k: usize) -> bool {
        if !self.rem(&self.sub_x(&self.frobenius_x(k, f)), f).is_empty() {
            return false;
        }
        for r in prime_factors(k as u64) {
            let h = self.sub_x(&self.frobenius_x(k / r as usize, f));
            let g = self.gcd(f, &h);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

impl FiniteField {
    /// `GF(p^k)` with the lexicographically first monic irreducible modulus.
    ///
    /// Panics if `p` is not prime, `k == 0`, or `p^k` overflows `u64`.
    pub fn new(p: u64, k: usize) -> Self {
        assert!(p >= 2 && prime_factors(p) == vec![p], "p must be prime");
        assert!(k >= 1);
        let size = (0..k).try_fold(1u64, |acc, _| acc.checked_mul(p)).expect("field too large");
        let ring = PolyRing { p };
        let mut low = vec![0u64; k];
        loop {
            let mut f = low.clone();
            f.push(1);
            if k == 1 || (low[0] != 0 && ring.is_irreducible(&f, k)) {
                return FiniteField { p, k, modulus: low, size };
            }
            let mut i = 0;
            loop {
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
                i += 1;
                assert!(i < k, "no irreducible polynomial found");
            }
        }
    }

    /// Smallest extension of `GF(p)` containing a primitive `n`-th root of unity.
    /// Returns `None` when `p | n`.
    pub fn with_root_of_unity(p: u64, n: u64) -> Option<Self> {
        if n == 0 || n.is_multiple_of(p) {
            return None;
        }
        let mut k = 1usize;
        while powmod_u64(p, k as u64, n) != 1 % n {
            k += 1;
        }
        Some(FiniteField::new(p, k))
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![0; self.k])
    }

    pub fn one(&self) -> FieldElem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> FieldElem {
        let mut v = vec![0; self.k];
        v[0] = n.rem_euclid(self.p as i64) as u64;
        FieldElem(v)
    }

    pub fn is_zero(&self, a: &FieldElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| (self.p - x) % self.p).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let k = self.k;
        let mut out = vec![0u64; 2 * k];
        for (i, x) in a.0.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.0.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        for d in (k..2 * k).rev() {
            let c = out[d];
            if c == 0 {
                continue;
            }
            out[d] = 0;
            for (i, m) in self.modulus.iter().enumerate() {
                let t = c * m % self.p;
                out[d - k + i] = (out[d - k + i] + self.p - t) % self.p;
            }
        }
        out.truncate(k);
        FieldElem(out)
    }

    fn pow_u64(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut r = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        r
    }

    /// `a^e` for any integer `e`; panics on `0^e` with `e < 0`.
    pub fn pow(&self, a: &FieldElem, e: &BigInt) -> FieldElem {
        if self.is_zero(a) {
            assert!(e.sign() != num_bigint::Sign::Minus, "zero has no inverse");
            return if e.is_zero() { self.one() } else { self.zero() };
        }
        let e = e.mod_floor(&BigInt::from(self.size - 1)).to_u64().unwrap();
        self.pow_u64(a, e)
    }

    pub fn pow_i64(&self, a: &FieldElem, e: i64) -> FieldElem {
        self.pow(a, &BigInt::from(e))
    }

    pub fn inv(&self, a: &FieldElem) -> FieldElem {
        assert!(!self.is_zero(a), "zero has no inverse");
        self.pow_u64(a, self.size - 2)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: &FieldElem) -> u64 {
        assert!(!self.is_zero(a));
        let mut n = self.size - 1;
        for r in prime_factors(n) {
            while n.is_multiple_of(r) && self.pow_u64(a, n / r) == self.one() {
                n /= r;
            }
        }
        n
    }

    /// `prod images[k]^exps[k]`.
    pub fn eval_monomial(&self, images: &[FieldElem], exps: &[BigInt]) -> FieldElem {
        images.iter().zip(exps).fold(self.one(), |acc, (x, e)| self.mul(&acc, &self.pow(x, e)))
    }

    /// All elements of order exactly `n`, in a fixed order.
    pub fn primitive_nth_roots(&self, n: u64) -> Vec<FieldElem> {
        let m = self.size - 1;
        if n == 0 || !m.is_multiple_of(n) {
            return Vec::new();
        }
        let Some(g) = self.elements().skip(1).find(|x| self.mult_order(x) == m) else {
            return Vec::new();
        };
        let h = self.pow_u64(&g, m / n);
        (1..=n).filter(|j| j.gcd(&n) == 1).map(|j| self.pow_u64(&h, j)).collect()
    }

    /// Iterate over all field elements, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size).map(move |mut idx| {
            let mut v = vec![0; self.k];
            for c in v.iter_mut() {
                *c = idx % self.p;
                idx /= self.p;
            }
            FieldElem(v)
        })
    }
}
