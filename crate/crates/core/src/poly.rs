//! The ring A = F_q[T]: arithmetic, irreducibility, factorization, prime
//! enumeration and valuations.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElement, FieldError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operation needs a non-constant polynomial")]
    Constant,
    #[error("operation needs a nonzero polynomial")]
    Zero,
    #[error("{0} is not a monic irreducible polynomial")]
    NotPrime(String),
    #[error("cannot parse polynomial {0:?}")]
    Parse(String),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Polynomial over a finite field, ascending coefficients, no trailing zeros.
/// Serialises as its display string, e.g. `"2*T^2+1"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_u32s(c: &[u32]) -> Self {
        Poly::new(c.iter().map(|&x| FieldElement(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `T`.
    pub fn t() -> Self {
        Poly::from_u32s(&[0, 1])
    }

    /// `c * T^n`.
    pub fn monomial(c: FieldElement, n: usize) -> Self {
        let mut v = vec![FieldElement::ZERO; n + 1];
        v[n] = c;
        Poly::new(v)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FieldElement::ONE
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FieldElement::ONE
    }

    /// `|g| = q^deg g`, and `|0| = 0`.
    pub fn norm(&self, q: u64) -> u128 {
        match self.degree() {
            None => 0,
            Some(d) => (q as u128).pow(d as u32),
        }
    }

    /// Base-q integer with the constant term as least significant digit.
    pub fn encode(&self, q: u64) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * q as u128 + c.0 as u128)
    }

    pub fn decode(mut n: u128, q: u64) -> Self {
        let mut c = Vec::new();
        while n > 0 {
            c.push(FieldElement((n % q as u128) as u32));
            n /= q as u128;
        }
        Poly::new(c)
    }

    pub fn to_u32s(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.0).collect()
    }

    /// Parses `[1,0,3]` or a human string such as `1+3*T^2`.
    pub fn parse(s: &str) -> Result<Self, PolyError> {
        let s = s.trim();
        let bad = || PolyError::Parse(s.to_string());
        if let Some(inner) = s.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(bad)?;
            if inner.trim().is_empty() {
                return Ok(Poly::zero());
            }
            let c: Result<Vec<u32>, _> = inner.split(',').map(|t| t.trim().parse()).collect();
            return Ok(Poly::from_u32s(&c.map_err(|_| bad())?));
        }
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut coeffs: Vec<u32> = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(bad());
            }
            let (c, e) = if let Some(pos) = term.find('T') {
                let cpart = &term[..pos];
                let c: u32 = if cpart.is_empty() {
                    1
                } else {
                    cpart.strip_suffix('*').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                let rest = &term[pos + 1..];
                let e: usize = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                };
                (c, e)
            } else {
                (term.parse().map_err(|_| bad())?, 0)
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            if coeffs[e] != 0 {
                return Err(bad());
            }
            coeffs[e] = c;
        }
        Ok(Poly::from_u32s(&coeffs))
    }
}

impl Ord for Poly {
    /// Degree first, then the base-q integer encoding.
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Poly::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c.0) {
                (0, v) => write!(f, "{v}")?,
                (1, 1) => write!(f, "T")?,
                (1, v) => write!(f, "{v}*T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (e, v) => write!(f, "{v}*T^{e}")?,
            }
        }
        Ok(())
    }
}

/// A monic irreducible polynomial, standing for the prime ideal it generates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PrimeIdeal {
    gen: Poly,
}

impl PrimeIdeal {
    pub fn new(ring: &PolyRing, gen: Poly) -> Result<Self, PolyError> {
        if !gen.is_monic() || gen.degree().unwrap_or(0) == 0 || !ring.is_irreducible(&gen)? {
            return Err(PolyError::NotPrime(gen.to_string()));
        }
        Ok(PrimeIdeal { gen })
    }

    /// Skips the irreducibility check; callers must guarantee it.
    pub(crate) fn new_unchecked(gen: Poly) -> Self {
        PrimeIdeal { gen }
    }

    /// The prime `(T)`.
    pub fn t() -> Self {
        PrimeIdeal { gen: Poly::t() }
    }

    pub fn gen(&self) -> &Poly {
        &self.gen
    }

    pub fn degree(&self) -> usize {
        self.gen.degree().unwrap_or(0)
    }

    pub fn is_t(&self) -> bool {
        self.gen == Poly::t()
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.gen.fmt(f)
    }
}

/// A discrete valuation; `Infinite` is the valuation of zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Valuation {
    Finite(u32),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<u32> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Valuation::Finite(0)
    }
}

/// `unit * prod gen^mult`, primes sorted canonically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(PrimeIdeal, u32)>,
}

/// Arithmetic in F_q[T] for a fixed field context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    ctx: FieldCtx,
}

impl PolyRing {
    pub fn new(ctx: FieldCtx) -> Self {
        PolyRing { ctx }
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn q(&self) -> u64 {
        self.ctx.size()
    }

    /// Checks every coefficient is a valid encoding for this field.
    pub fn validate(&self, f: &Poly) -> Result<(), PolyError> {
        for c in f.coeffs() {
            self.ctx.element(c.0 as u64)?;
        }
        Ok(())
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        let n = f.coeffs.len().max(g.coeffs.len());
        Poly::new(
            (0..n)
                .map(|i| self.ctx.add(f.coeff(i), g.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, f: &Poly) -> Poly {
        Poly::new(f.coeffs.iter().map(|&c| self.ctx.neg(c)).collect())
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.add(f, &self.neg(g))
    }

    pub fn scale(&self, f: &Poly, c: FieldElement) -> Poly {
        Poly::new(f.coeffs.iter().map(|&x| self.ctx.mul(x, c)).collect())
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let ctx = &self.ctx;
        let mut out = vec![FieldElement::ZERO; f.coeffs.len() + g.coeffs.len() - 1];
        for (i, &a) in f.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                out[i + j] = ctx.add(out[i + j], ctx.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, f: &Poly, mut e: u64) -> Poly {
        let mut base = f.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Returns `(s, t)` with `f = s*g + t` and `deg t < deg g`.
    pub fn divmod(&self, f: &Poly, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        let dg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let ctx = &self.ctx;
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let inv = ctx.inv(g.lc())?;
        let mut quo = vec![FieldElement::ZERO; r.len() - dg];
        for i in (dg..r.len()).rev() {
            let c = r[i];
            if c.is_zero() {
                continue;
            }
            let m = ctx.mul(c, inv);
            quo[i - dg] = m;
            for (j, &b) in g.coeffs.iter().enumerate() {
                r[i - dg + j] = ctx.sub(r[i - dg + j], ctx.mul(m, b));
            }
        }
        r.truncate(dg);
        Ok((Poly::new(quo), Poly::new(r)))
    }

    pub fn rem(&self, f: &Poly, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divmod(f, g)?.1)
    }

    /// Exact quotient; panics if `g` does not divide `f`.
    pub fn div_exact(&self, f: &Poly, g: &Poly) -> Poly {
        let (q, r) = self.divmod(f, g).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact division");
        q
    }

    pub fn monic(&self, f: &Poly) -> Poly {
        if f.is_zero() {
            return Poly::zero();
        }
        let inv = self.ctx.inv(f.lc()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, f: &Poly, g: &Poly) -> Poly {
        let (mut a, mut b) = (f.clone(), g.clone());
        while !b.is_zero() {
            let r = self.rem(&a, &b).expect("nonzero");
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    pub fn eval(&self, f: &Poly, x: FieldElement) -> FieldElement {
        f.coeffs
            .iter()
            .rev()
            .fold(FieldElement::ZERO, |acc, &c| self.ctx.add(self.ctx.mul(acc, x), c))
    }

    pub fn derivative(&self, f: &Poly) -> Poly {
        Poly::new(
            f.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.ctx.mul(c, self.ctx.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn mulmod(&self, f: &Poly, g: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(f, g), m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, f: &Poly, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = self.rem(&Poly::one(), m).expect("nonzero modulus");
        let base = self.rem(f, m).expect("nonzero modulus");
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }

    fn pow_mod_u64(&self, f: &Poly, e: u64, m: &Poly) -> Poly {
        self.pow_mod(f, &BigUint::from(e), m)
    }

    /// Ben-Or: `f` of degree n is irreducible iff `gcd(f, T^{q^i} - T) = 1` for
    /// all `1 <= i <= n/2`.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool, PolyError> {
        let n = f.degree().ok_or(PolyError::Constant)?;
        if n == 0 {
            return Err(PolyError::Constant);
        }
        if n == 1 {
            return Ok(true);
        }
        let t = Poly::t();
        let mut h = self.rem(&t, f)?;
        for _ in 1..=n / 2 {
            h = self.pow_mod_u64(&h, self.q(), f);
            if !self.gcd(f, &self.sub(&h, &t)).is_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f^{1/p}` for a polynomial in `T^p`.
    fn pth_root(&self, f: &Poly) -> Poly {
        let p = self.ctx.p() as usize;
        let k = self.ctx.k();
        Poly::new(
            f.coeffs
                .iter()
                .step_by(p)
                .map(|&c| self.ctx.frobenius(c, k - 1))
                .collect(),
        )
    }

    /// Squarefree decomposition of a monic polynomial: `(factor, multiplicity)`.
    pub fn squarefree(&self, f: &Poly) -> Vec<(Poly, u32)> {
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = self.derivative(f);
        let mut c = self.gcd(f, &df);
        let mut w = self.div_exact(f, &c);
        let mut i = 1;
        while !w.is_one() {
            let y = self.gcd(&w, &c);
            let fac = self.div_exact(&w, &y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = self.div_exact(&c, &w);
            i += 1;
        }
        if !c.is_one() {
            let p = self.ctx.p() as u32;
            for (g, m) in self.squarefree(&self.pth_root(&c)) {
                out.push((g, m * p));
            }
        }
        out
    }

    /// Distinct-degree split of a squarefree monic polynomial.
    pub fn distinct_degree(&self, f: &Poly) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let t = Poly::t();
        let mut h = t.clone();
        let mut i = 1;
        while f.degree().unwrap_or(0) >= 2 * i {
            h = self.pow_mod_u64(&h, self.q(), &f);
            let g = self.gcd(&f, &self.sub(&h, &t));
            if !g.is_one() {
                f = self.div_exact(&f, &g);
                h = self.rem(&h, &f).expect("nonzero");
                out.push((g, i));
            }
            i += 1;
        }
        if let Some(d) = f.degree().filter(|&d| d > 0) {
            out.push((f, d));
        }
        out
    }

    fn random_poly(&self, deg_below: usize, rng: &mut ChaCha8Rng) -> Poly {
        let q = self.q();
        Poly::new(
            (0..deg_below)
                .map(|_| FieldElement(rng.gen_range(0..q) as u32))
                .collect(),
        )
    }

    /// Cantor–Zassenhaus equal-degree splitting into monic irreducibles of degree `d`.
    pub fn equal_degree(&self, f: &Poly, d: usize, rng: &mut ChaCha8Rng) -> Vec<Poly> {
        let n = f.degree().unwrap_or(0);
        if n == d {
            return vec![f.clone()];
        }
        if n == 0 {
            return vec![];
        }
        let p = self.ctx.p();
        loop {
            let a = self.random_poly(n, rng);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = if p == 2 {
                // trace map to GF(2): sum of a^(2^j), j < k*d
                let steps = self.ctx.k() as usize * d;
                let mut acc = Poly::zero();
                let mut cur = self.rem(&a, f).expect("nonzero");
                for _ in 0..steps {
                    acc = self.add(&acc, &cur);
                    cur = self.mulmod(&cur, &cur, f);
                }
                acc
            } else {
                let e = (BigUint::from(self.q()).pow(d as u32) - BigUint::one()) >> 1;
                self.sub(&self.pow_mod(&a, &e, f), &Poly::one())
            };
            let g = self.gcd(f, &b);
            let dg = g.degree().unwrap_or(0);
            if dg > 0 && dg < n {
                let h = self.div_exact(f, &g);
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&h, d, rng));
                return out;
            }
        }
    }

    fn rng_for(&self, f: &Poly, seed: u64) -> ChaCha8Rng {
        // FNV-1a over the coefficients
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for c in f.coeffs() {
            for b in c.0.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100_0000_01b3);
            }
        }
        ChaCha8Rng::seed_from_u64(seed ^ h)
    }

    /// Complete factorization. The seed only influences running time.
    pub fn factor(&self, f: &Poly, seed: u64) -> Result<Factorization, PolyError> {
        if f.is_zero() {
            return Err(PolyError::Zero);
        }
        let unit = f.lc();
        let monic = self.monic(f);
        let mut rng = self.rng_for(&monic, seed);
        let mut factors: Vec<(PrimeIdeal, u32)> = Vec::new();
        for (sq, mult) in self.squarefree(&monic) {
            for (part, d) in self.distinct_degree(&sq) {
                for g in self.equal_degree(&part, d, &mut rng) {
                    factors.push((PrimeIdeal::new_unchecked(g), mult));
                }
            }
        }
        factors.sort();
        // distinct squarefree parts never share a prime, but merge defensively
        let mut merged: Vec<(PrimeIdeal, u32)> = Vec::with_capacity(factors.len());
        for (p, m) in factors {
            match merged.last_mut() {
                Some((lp, lm)) if *lp == p => *lm += m,
                _ => merged.push((p, m)),
            }
        }
        Ok(Factorization {
            unit,
            factors: merged,
        })
    }

    pub fn reassemble(&self, fac: &Factorization) -> Poly {
        fac.factors.iter().fold(Poly::constant(fac.unit), |acc, (p, m)| {
            self.mul(&acc, &self.pow(p.gen(), *m as u64))
        })
    }

    /// Distinct roots in the coefficient field, ascending.
    pub fn roots(&self, f: &Poly, seed: u64) -> Vec<FieldElement> {
        if f.is_zero() {
            return vec![];
        }
        let monic = self.monic(f);
        let t = Poly::t();
        let xq = self.pow_mod_u64(&t, self.q(), &monic);
        let g = self.gcd(&monic, &self.sub(&xq, &t));
        if g.degree().unwrap_or(0) == 0 {
            return vec![];
        }
        let mut rng = self.rng_for(&g, seed);
        let mut roots: Vec<FieldElement> = self
            .equal_degree(&g, 1, &mut rng)
            .into_iter()
            .map(|l| self.ctx.neg(l.coeff(0)))
            .collect();
        roots.sort();
        roots
    }

    /// Largest `e` with `gen(l)^e | f`; `Infinite` for `f = 0`.
    pub fn valuation(&self, f: &Poly, l: &PrimeIdeal) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinite;
        }
        let mut v = 0;
        let mut cur = f.clone();
        loop {
            let (q, r) = self.divmod(&cur, l.gen()).expect("nonzero");
            if !r.is_zero() {
                return Valuation::Finite(v);
            }
            v += 1;
            cur = q;
        }
    }

    /// Monic irreducibles of degree `1..=maxdeg`, by degree then encoding.
    pub fn primes_up_to(&self, maxdeg: usize, exclude: &[PrimeIdeal]) -> PrimeIter<'_> {
        PrimeIter {
            ring: self,
            maxdeg,
            deg: 1,
            idx: 0,
            exclude: exclude.to_vec(),
        }
    }

    /// The monic polynomial of degree `deg` whose lower coefficients encode `idx`.
    pub fn monic_from_index(&self, deg: usize, idx: u128) -> Poly {
        let mut c = Poly::decode(idx, self.q()).coeffs;
        c.resize(deg, FieldElement::ZERO);
        c.push(FieldElement::ONE);
        Poly::new(c)
    }
}

/// Stateless-in-spirit prime stream: position is `(deg, idx)`.
pub struct PrimeIter<'a> {
    ring: &'a PolyRing,
    maxdeg: usize,
    deg: usize,
    idx: u128,
    exclude: Vec<PrimeIdeal>,
}

impl Iterator for PrimeIter<'_> {
    type Item = PrimeIdeal;

    fn next(&mut self) -> Option<PrimeIdeal> {
        let q = self.ring.q() as u128;
        while self.deg <= self.maxdeg {
            let count = q.pow(self.deg as u32);
            while self.idx < count {
                let f = self.ring.monic_from_index(self.deg, self.idx);
                self.idx += 1;
                if self.ring.is_irreducible(&f).unwrap_or(false) {
                    let p = PrimeIdeal::new_unchecked(f);
                    if !self.exclude.contains(&p) {
                        return Some(p);
                    }
                }
            }
            self.deg += 1;
            self.idx = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_uses_display_strings() {
        for c in [vec![], vec![1], vec![0, 1], vec![3, 0, 2], vec![1, 1, 0, 1]] {
            let f = Poly::from_u32s(&c);
            let json = serde_json::to_string(&f).unwrap();
            assert_eq!(json, format!("\"{f}\""));
            assert_eq!(serde_json::from_str::<Poly>(&json).unwrap(), f);
        }
    }


    fn ring(p: u64, k: u32) -> PolyRing {
        PolyRing::new(FieldCtx::new(p, k).unwrap())
    }

    fn pl(c: &[u32]) -> Poly {
        Poly::from_u32s(c)
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(2, 1);
        assert_eq!(r.mul(&pl(&[1, 1]), &pl(&[1, 1])), pl(&[1, 0, 1]));
        let r11 = ring(11, 1);
        assert_eq!(r11.eval(&pl(&[0, 2, 1]), FieldElement(3)), FieldElement(4));
        let f = pl(&[2, 0, 4]);
        assert_eq!(r11.gcd(&f, &Poly::zero()), r11.monic(&f));
        assert_eq!(r11.divmod(&f, &Poly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn irreducibility_examples() {
        let r = ring(2, 1);
        assert!(r.is_irreducible(&Poly::t()).unwrap());
        assert!(!r.is_irreducible(&pl(&[1, 0, 1])).unwrap());
        assert!(r.is_irreducible(&pl(&[1, 1, 0, 1])).unwrap());
        assert_eq!(r.is_irreducible(&pl(&[1])), Err(PolyError::Constant));
    }

    #[test]
    fn factor_examples() {
        let r = ring(2, 1);
        let f = r.factor(&pl(&[1, 0, 1]), 0).unwrap();
        assert_eq!(f.factors, vec![(PrimeIdeal::new_unchecked(pl(&[1, 1])), 2)]);
        let r3 = ring(3, 1);
        // T^3 - T
        let f = r3.factor(&pl(&[0, 2, 0, 1]), 7).unwrap();
        let gens: Vec<_> = f.factors.iter().map(|(p, m)| (p.gen().clone(), *m)).collect();
        assert_eq!(
            gens,
            vec![(pl(&[0, 1]), 1), (pl(&[1, 1]), 1), (pl(&[2, 1]), 1)]
        );
        let r11 = ring(11, 1);
        let irr = pl(&[1, 1, 0, 3]);
        if r11.is_irreducible(&irr).unwrap() {
            let f = r11.factor(&irr, 1).unwrap();
            assert_eq!(f.unit, FieldElement(3));
            assert_eq!(f.factors.len(), 1);
            assert_eq!(f.factors[0].0.gen(), &r11.monic(&irr));
        }
        assert_eq!(r.factor(&Poly::zero(), 0), Err(PolyError::Zero));
    }

    #[test]
    fn valuations() {
        let r = ring(2, 1);
        let l = PrimeIdeal::new(&r, pl(&[1, 1])).unwrap();
        let f = r.mul(&Poly::t(), &r.pow(&pl(&[1, 1]), 2));
        assert_eq!(r.valuation(&f, &l), Valuation::Finite(2));
        assert_eq!(r.valuation(&pl(&[1, 0, 1]), &l), Valuation::Finite(2));
        assert_eq!(r.valuation(&pl(&[1, 1, 1]), &PrimeIdeal::t()), Valuation::Finite(0));
        assert_eq!(r.valuation(&Poly::zero(), &l), Valuation::Infinite);
    }

    #[test]
    fn prime_enumeration() {
        let r = ring(2, 1);
        let v: Vec<_> = r.primes_up_to(1, &[PrimeIdeal::t()]).collect();
        assert_eq!(v, vec![PrimeIdeal::new_unchecked(pl(&[1, 1]))]);
        let v: Vec<String> = r.primes_up_to(2, &[]).map(|p| p.to_string()).collect();
        assert_eq!(v, vec!["T", "T+1", "T^2+T+1"]);
        for q in [2u64, 3, 4, 5] {
            let (p, k) = crate::field::prime_power(q).unwrap();
            let r = ring(p, k);
            let deg2 = r.primes_up_to(2, &[]).filter(|l| l.degree() == 2).count() as u64;
            assert_eq!(deg2, (q * q - q) / 2);
        }
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(Poly::parse("[1,0,3]").unwrap(), pl(&[1, 0, 3]));
        assert_eq!(Poly::parse("1+3*T^2").unwrap(), pl(&[1, 0, 3]));
        assert_eq!(Poly::parse("T^2 + T + 1").unwrap(), pl(&[1, 1, 1]));
        assert_eq!(Poly::parse("[]").unwrap(), Poly::zero());
        assert!(Poly::parse("1+*T").is_err());
        assert!(Poly::parse("T+T").is_err());
        assert_eq!(pl(&[1, 0, 3]).to_string(), "3*T^2+1");
        assert_eq!(pl(&[1, 1]).to_string(), "T+1");
    }

    #[test]
    fn ordering_is_degree_then_encoding() {
        let mut v = vec![pl(&[1, 1, 1]), pl(&[0, 1, 1]), pl(&[1, 1]), pl(&[3])];
        v.sort();
        assert_eq!(v, vec![pl(&[3]), pl(&[1, 1]), pl(&[0, 1, 1]), pl(&[1, 1, 1])]);
    }
}
