//! Arithmetic in GF(q) = GF(p^k).
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits are the
//! coordinates with respect to the power basis of the canonical generator
//! (digit `i` is the coefficient of `generator^i`). The defining modulus is the
//! lexicographically smallest monic irreducible polynomial of degree `k` over
//! GF(p), with coefficients compared from the constant term upward.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{Poly, PolyRing};

/// Largest field size (including extension fields) this crate will build.
pub const FIELD_ENVELOPE: u64 = 1 << 31;

/// Fields up to this size get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{k} exceeds the operating envelope 2^31")]
    Envelope { p: u64, k: u64 },
    #[error("inversion of zero")]
    ZeroInverse,
    #[error("encoding {value} is outside the field of size {size}")]
    OutOfRange { value: u64, size: u64 },
}

/// An element of some `FieldCtx`, stored by its integer encoding.
#[derive(
    Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    k: u32,
    size: u64,
    modulus: Vec<u32>,
    pow_p: Vec<u64>,
    tables: Option<Tables>,
}

/// GF(p^k) with its canonical modulus. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldCtx(Arc<Inner>);

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}
impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.k)
    }
}

/// Serialized form of a context: `{p, k, modulus}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
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

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
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

/// If `q` is a prime power `p^k`, returns `(p, k)`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut k = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

fn context_cache() -> &'static Mutex<HashMap<(u32, u32), FieldCtx>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32), FieldCtx>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldCtx {
    /// Builds GF(p^k). Contexts are deterministic, so they are memoized.
    pub fn new(p: u64, k: u32) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let size = (p as u128).checked_pow(k).unwrap_or(u128::MAX);
        if size > FIELD_ENVELOPE as u128 {
            return Err(FieldError::Envelope { p, k: k as u64 });
        }
        let key = (p as u32, k);
        if let Some(ctx) = context_cache().lock().unwrap().get(&key) {
            return Ok(ctx.clone());
        }
        let ctx = Self::build(p as u32, k)?;
        context_cache().lock().unwrap().insert(key, ctx.clone());
        Ok(ctx)
    }

    fn build(p: u32, k: u32) -> Result<Self, FieldError> {
        let pow_p: Vec<u64> = (0..=k).map(|i| (p as u64).pow(i)).collect();
        let size = pow_p[k as usize];
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            canonical_modulus(p, k)?
        };
        let mut inner = Inner {
            p,
            k,
            size,
            modulus,
            pow_p,
            tables: None,
        };
        if k > 1 && size <= TABLE_LIMIT {
            let bare = FieldCtx(Arc::new(inner));
            let tables = bare.build_tables();
            inner = Arc::try_unwrap(bare.0).ok().expect("unshared");
            inner.tables = Some(tables);
        }
        Ok(FieldCtx(Arc::new(inner)))
    }

    fn build_tables(&self) -> Tables {
        let q = self.size();
        let order = q - 1;
        let factors = prime_factors(order);
        let mut g = 2u32;
        loop {
            let x = FieldElement(g);
            if factors
                .iter()
                .all(|r| self.pow_slow(x, (order / r) as u128) != FieldElement::ONE)
            {
                break;
            }
            g += 1;
        }
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = FieldElement::ONE;
        for i in 0..order as usize {
            exp[i] = cur.0;
            exp[i + order as usize] = cur.0;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, FieldElement(g));
        }
        Tables { exp, log }
    }

    pub fn p(&self) -> u64 {
        self.0.p as u64
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    /// The field size q.
    pub fn size(&self) -> u64 {
        self.0.size
    }

    /// Coefficients of the defining modulus, ascending, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn spec(&self) -> FieldSpec {
        FieldSpec {
            p: self.p(),
            k: self.k(),
            modulus: self.0.modulus.clone(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The canonical generator (a root of the modulus).
    pub fn generator(&self) -> FieldElement {
        if self.0.k == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.0.p)
        }
    }

    /// Validates an integer encoding.
    pub fn element(&self, v: u64) -> Result<FieldElement, FieldError> {
        if v >= self.size() {
            return Err(FieldError::OutOfRange {
                value: v,
                size: self.size(),
            });
        }
        Ok(FieldElement(v as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.size() as u32).map(FieldElement)
    }

    pub fn coords(&self, x: FieldElement) -> Vec<u32> {
        let p = self.0.p;
        let mut v = x.0;
        (0..self.0.k)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_coords(&self, c: &[u32]) -> FieldElement {
        let mut v = 0u64;
        for (i, &d) in c.iter().enumerate().take(self.0.k as usize) {
            v += (d % self.0.p) as u64 * self.0.pow_p[i];
        }
        FieldElement(v as u32)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.0.k == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        for i in 0..self.0.k as usize {
            let d = (x % p + y % p) % p;
            out += d as u64 * self.0.pow_p[i];
            x /= p;
            y /= p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        if p == 2 || a.0 == 0 {
            return a;
        }
        if self.0.k == 1 {
            return FieldElement(p - a.0);
        }
        let mut x = a.0;
        let mut out = 0u64;
        for i in 0..self.0.k as usize {
            let d = (p - x % p) % p;
            out += d as u64 * self.0.pow_p[i];
            x /= p;
        }
        FieldElement(out as u32)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.0.k == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.0.p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.0.tables {
            let i = t.log[a.0 as usize] + t.log[b.0 as usize];
            return FieldElement(t.exp[i as usize]);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let k = self.0.k as usize;
        let p = self.0.p;
        if p == 2 {
            let (a, b) = (a.0 as u64, b.0 as u64);
            let mut prod = 0u64;
            for i in 0..k {
                if (b >> i) & 1 == 1 {
                    prod ^= a << i;
                }
            }
            let mut m = 0u64;
            for (i, &c) in self.0.modulus.iter().enumerate() {
                m |= (c as u64) << i;
            }
            for i in (k..2 * k).rev() {
                if (prod >> i) & 1 == 1 {
                    prod ^= m << (i - k);
                }
            }
            return FieldElement(prod as u32);
        }
        let ca = self.coords(a);
        let cb = self.coords(b);
        let pp = p as u64;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % pp;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                let m = self.0.modulus[j] as u64;
                prod[i - k + j] = (prod[i - k + j] + (pp - c) * m) % pp;
            }
            prod[i] = 0;
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
        self.from_coords(&digits)
    }

    fn pow_slow(&self, x: FieldElement, mut e: u128) -> FieldElement {
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn pow(&self, x: FieldElement, e: u128) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if x.is_zero() {
            return FieldElement::ZERO;
        }
        let order = (self.size() - 1) as u128;
        if let Some(t) = &self.0.tables {
            let l = (t.log[x.0 as usize] as u128 * (e % order)) % order;
            return FieldElement(t.exp[l as usize]);
        }
        let mut e = e % order;
        if e == 0 {
            e = order;
        }
        let mut base = x;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        if let Some(t) = &self.0.tables {
            let order = self.size() as u32 - 1;
            let l = t.log[a.0 as usize];
            return Ok(FieldElement(t.exp[((order - l) % order) as usize]));
        }
        Ok(self.pow(a, (self.size() - 2) as u128))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x ↦ x^(p^i)`.
    pub fn frobenius(&self, x: FieldElement, i: u32) -> FieldElement {
        let i = i % self.0.k;
        if i == 0 {
            return x;
        }
        self.pow(x, self.0.pow_p[i as usize] as u128)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: FieldElement) -> u64 {
        assert!(!x.is_zero());
        let n = self.size() - 1;
        let mut ord = n;
        for r in prime_factors(n) {
            while ord.is_multiple_of(r) && self.pow(x, (ord / r) as u128) == FieldElement::ONE {
                ord /= r;
            }
        }
        ord
    }

    /// Whether `x` is a square (characteristic 2: always).
    pub fn is_square(&self, x: FieldElement) -> bool {
        if x.is_zero() || self.0.p == 2 {
            return true;
        }
        self.pow(x, ((self.size() - 1) / 2) as u128) == FieldElement::ONE
    }
}

fn canonical_modulus(p: u32, k: u32) -> Result<Vec<u32>, FieldError> {
    let base = FieldCtx::new(p as u64, 1)?;
    let ring = PolyRing::new(base);
    let total = (p as u64).pow(k);
    // c0 is the most significant digit of the scan; c0 = 0 is never irreducible.
    for idx in (p as u64).pow(k - 1)..total {
        let mut coeffs: Vec<u32> = (0..k)
            .map(|j| ((idx / (p as u64).pow(k - 1 - j)) % p as u64) as u32)
            .collect();
        coeffs.push(1);
        let f = Poly::new(coeffs.iter().map(|&c| FieldElement(c)).collect());
        if ring.is_irreducible(&f).unwrap_or(false) {
            return Ok(coeffs);
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// The injective homomorphism GF(q) → GF(q^d) that comes with an extension.
pub struct Embedding {
    base: FieldCtx,
    target: FieldCtx,
    gen_image: FieldElement,
    table: Vec<FieldElement>,
    inverse: HashMap<FieldElement, FieldElement>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.base, self.target)
    }
}

impl Embedding {
    pub fn base(&self) -> &FieldCtx {
        &self.base
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    /// Image of the base field's canonical generator.
    pub fn generator_image(&self) -> FieldElement {
        self.gen_image
    }

    pub fn embed(&self, x: FieldElement) -> FieldElement {
        if let Some(&y) = self.table.get(x.0 as usize) {
            return y;
        }
        self.embed_slow(x)
    }

    fn embed_slow(&self, x: FieldElement) -> FieldElement {
        if self.base.k() == 1 {
            return x;
        }
        let t = &self.target;
        let mut acc = FieldElement::ZERO;
        for &c in self.base.coords(x).iter().rev() {
            acc = t.add(t.mul(acc, self.gen_image), FieldElement(c));
        }
        acc
    }

    /// Preimage of `y`, if it lies in the image of the base field.
    pub fn pullback(&self, y: FieldElement) -> Option<FieldElement> {
        self.inverse.get(&y).copied()
    }
}

fn embedding_cache() -> &'static Mutex<HashMap<(u32, u32, u32), Arc<Embedding>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, u32, u32), Arc<Embedding>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// GF(q^d) together with the embedding of GF(q). The base generator is sent to
/// the smallest-encoded root of the base modulus in the extension.
pub fn extension_field(base: &FieldCtx, d: u32) -> Result<Arc<Embedding>, FieldError> {
    if d == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let key = (base.0.p, base.0.k, d);
    if let Some(e) = embedding_cache().lock().unwrap().get(&key) {
        return Ok(e.clone());
    }
    let kd = base
        .k()
        .checked_mul(d)
        .ok_or(FieldError::Envelope { p: base.p(), k: u64::MAX })?;
    let target = FieldCtx::new(base.p(), kd)?;
    let gen_image = if base.k() == 1 {
        FieldElement::ZERO
    } else {
        let ring = PolyRing::new(target.clone());
        let m = Poly::new(base.modulus().iter().map(|&c| FieldElement(c)).collect());
        *ring
            .roots(&m, 0)
            .first()
            .expect("the base modulus splits in the extension")
    };
    let mut emb = Embedding {
        base: base.clone(),
        target,
        gen_image,
        table: Vec::new(),
        inverse: HashMap::new(),
    };
    if base.size() <= TABLE_LIMIT {
        let table: Vec<FieldElement> = base.elements().map(|x| emb.embed_slow(x)).collect();
        emb.inverse = table
            .iter()
            .enumerate()
            .map(|(i, &y)| (y, FieldElement(i as u32)))
            .collect();
        emb.table = table;
    }
    let emb = Arc::new(emb);
    embedding_cache().lock().unwrap().insert(key, emb.clone());
    Ok(emb)
}
