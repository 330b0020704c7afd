//! Twisted polynomials R{τ} with `(aτ^i)(bτ^j) = a b^{q^i} τ^{i+j}`, and the
//! linearized polynomials they define.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::field::{FieldCtx, FieldElement, FieldError};
use crate::poly::{Poly, PolyRing};

/// What a coefficient ring must provide: ring operations and the q-power map.
pub trait CoeffRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `a^{q^i}`.
    fn frob(&self, a: &Self::Elem, i: u32) -> Self::Elem;
    fn q(&self) -> u64;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// A = F_q[T]. Since F_q is fixed by the q-power map, `f^q = f(T^q)`.
impl CoeffRing for PolyRing {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn is_zero(&self, x: &Poly) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::add(self, a, b)
    }
    fn neg(&self, a: &Poly) -> Poly {
        PolyRing::neg(self, a)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        PolyRing::mul(self, a, b)
    }
    fn frob(&self, a: &Poly, i: u32) -> Poly {
        if i == 0 || a.is_zero() {
            return a.clone();
        }
        let step = (self.q() as usize).pow(i);
        let mut c = vec![FieldElement::ZERO; (a.coeffs().len() - 1) * step + 1];
        for (j, &x) in a.coeffs().iter().enumerate() {
            c[j * step] = x;
        }
        Poly::new(c)
    }
    fn q(&self) -> u64 {
        PolyRing::q(self)
    }
}

/// A finite field GF(q^d) twisted by the q-power map of a subfield GF(q).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldTwist {
    ctx: FieldCtx,
    base_k: u32,
}

impl FieldTwist {
    /// `q` must be the size of a subfield of `ctx`.
    pub fn new(ctx: FieldCtx, q: u64) -> Result<Self, FieldError> {
        let base_k = (1..=ctx.k())
            .find(|&j| ctx.p().pow(j) == q && ctx.k().is_multiple_of(j))
            .ok_or(FieldError::OutOfRange {
                value: q,
                size: ctx.size(),
            })?;
        Ok(FieldTwist { ctx, base_k })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    /// Degree of the field over GF(q).
    pub fn degree(&self) -> u32 {
        self.ctx.k() / self.base_k
    }
}

impl CoeffRing for FieldTwist {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn is_zero(&self, x: &FieldElement) -> bool {
        x.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.ctx.add(*a, *b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.ctx.neg(*a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.ctx.mul(*a, *b)
    }
    fn frob(&self, a: &FieldElement, i: u32) -> FieldElement {
        let j = ((i as u64 * self.base_k as u64) % self.ctx.k() as u64) as u32;
        self.ctx.frobenius(*a, j)
    }
    fn q(&self) -> u64 {
        self.ctx.p().pow(self.base_k)
    }
}

/// `Σ coeffs[i] τ^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedPoly<E> {
    coeffs: Vec<E>,
}

impl<E: Clone + PartialEq + fmt::Debug> TwistedPoly<E> {
    pub fn new<R: CoeffRing<Elem = E>>(ring: &R, mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| ring.is_zero(c)) {
            coeffs.pop();
        }
        TwistedPoly { coeffs }
    }

    pub fn zero() -> Self {
        TwistedPoly { coeffs: Vec::new() }
    }

    pub fn constant<R: CoeffRing<Elem = E>>(ring: &R, c: E) -> Self {
        Self::new(ring, vec![c])
    }

    /// `c τ^i`.
    pub fn monomial<R: CoeffRing<Elem = E>>(ring: &R, c: E, i: usize) -> Self {
        let mut v = vec![ring.zero(); i + 1];
        v[i] = c;
        Self::new(ring, v)
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff<R: CoeffRing<Elem = E>>(&self, ring: &R, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `deg_τ`; `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `ht_τ`: least index with a nonzero coefficient; `None` for zero.
    pub fn ht<R: CoeffRing<Elem = E>>(&self, ring: &R) -> Option<usize> {
        self.coeffs.iter().position(|c| !ring.is_zero(c))
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn add<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            ring,
            (0..n)
                .map(|i| ring.add(&self.coeff(ring, i), &other.coeff(ring, i)))
                .collect(),
        )
    }

    pub fn sub<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            ring,
            (0..n)
                .map(|i| ring.sub(&self.coeff(ring, i), &other.coeff(ring, i)))
                .collect(),
        )
    }

    pub fn mul<R: CoeffRing<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if ring.is_zero(b) {
                    continue;
                }
                let term = ring.mul(a, &ring.frob(b, i as u32));
                out[i + j] = ring.add(&out[i + j], &term);
            }
        }
        Self::new(ring, out)
    }

    /// Applies a coefficient map (e.g. reduction modulo a prime).
    pub fn map<F, R2>(&self, ring: &R2, f: F) -> TwistedPoly<R2::Elem>
    where
        F: Fn(&E) -> R2::Elem,
        R2: CoeffRing,
    {
        TwistedPoly::new(ring, self.coeffs.iter().map(f).collect())
    }

    /// `τ^i ↦ x^{q^i}`.
    pub fn linearized<R: CoeffRing<Elem = E>>(&self, ring: &R) -> LinearizedPoly<E> {
        LinearizedPoly {
            q: ring.q(),
            terms: self
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !ring.is_zero(c))
                .map(|(i, c)| (i as u32, c.clone()))
                .collect(),
        }
    }

    /// Evaluates the associated linearized polynomial at `x`.
    pub fn eval<R: CoeffRing<Elem = E>>(&self, ring: &R, x: &E) -> E {
        let mut acc = ring.zero();
        let mut xi = x.clone();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                xi = ring.frob(&xi, 1);
            }
            if !ring.is_zero(c) {
                acc = ring.add(&acc, &ring.mul(c, &xi));
            }
        }
        acc
    }
}

impl TwistedPoly<FieldElement> {
    /// Right division: `f = s·g + t` with `deg t < deg g`.
    pub fn right_divrem(&self, ring: &FieldTwist, g: &Self) -> Option<(Self, Self)> {
        let r = g.deg()?;
        let c = *g.lc()?;
        let ctx = ring.ctx();
        let mut rem = self.clone();
        let mut quo = vec![FieldElement::ZERO; self.coeffs.len().saturating_sub(r)];
        while let Some(n) = rem.deg().filter(|&n| n >= r) {
            let a = *rem.lc().expect("nonzero");
            let b = ctx
                .div(a, ring.frob(&c, (n - r) as u32))
                .expect("nonzero leading coefficient");
            quo[n - r] = b;
            let step = TwistedPoly::monomial(ring, b, n - r).mul(ring, g);
            rem = rem.sub(ring, &step);
        }
        Some((TwistedPoly::new(ring, quo), rem))
    }

    pub fn right_rem(&self, ring: &FieldTwist, g: &Self) -> Option<Self> {
        self.right_divrem(ring, g).map(|(_, t)| t)
    }
}

/// Sparse `Σ a_i x^{q^i}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearizedPoly<E> {
    pub q: u64,
    /// `(i, a_i)` with `a_i ≠ 0`, ascending in `i`.
    pub terms: Vec<(u32, E)>,
}

impl<E> LinearizedPoly<E> {
    /// Degree in `x`, i.e. `q^i` for the top term; `None` for zero.
    pub fn degree(&self) -> Option<BigUint> {
        self.terms
            .last()
            .map(|(i, _)| BigUint::from(self.q).pow(*i))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<E: fmt::Display> fmt::Display for LinearizedPoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let cs = c.to_string();
            match cs.as_str() {
                "1" => {}
                s if s.contains('+') => write!(f, "({s})*")?,
                s => write!(f, "{s}*")?,
            }
            if *i == 0 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{}", BigUint::from(self.q).pow(*i))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> PolyRing {
        PolyRing::new(FieldCtx::new(2, 1).unwrap())
    }

    fn pl(c: &[u32]) -> Poly {
        Poly::from_u32s(c)
    }

    #[test]
    fn tau_times_g() {
        let r = a2();
        let g = pl(&[1, 1]);
        let tau = TwistedPoly::monomial(&r, Poly::one(), 1);
        let gtau = TwistedPoly::monomial(&r, g.clone(), 1);
        let prod = tau.mul(&r, &gtau);
        // g^2 = T^2 + 1 over GF(2)
        assert_eq!(prod, TwistedPoly::monomial(&r, pl(&[1, 0, 1]), 2));
    }

    #[test]
    fn square_of_t_plus_tau() {
        let r = a2();
        let f = TwistedPoly::new(&r, vec![Poly::t(), Poly::one()]);
        let sq = f.mul(&r, &f);
        // T·T + (T·1 + 1·T^2)τ + τ^2
        assert_eq!(
            sq,
            TwistedPoly::new(&r, vec![pl(&[0, 0, 1]), pl(&[0, 1, 1]), Poly::one()])
        );
        assert_eq!(f.mul(&r, &TwistedPoly::constant(&r, Poly::one())), f);
    }

    #[test]
    fn linearized_display() {
        let r = a2();
        let f = TwistedPoly::new(&r, vec![Poly::t(), Poly::one(), Poly::one()]);
        assert_eq!(f.linearized(&r).to_string(), "T*x + x^2 + x^4");
        let z: TwistedPoly<Poly> = TwistedPoly::zero();
        assert_eq!(z.linearized(&r).to_string(), "0");
        assert_eq!(z.deg(), None);
    }

    #[test]
    fn right_division_reconstructs() {
        let l = FieldTwist::new(FieldCtx::new(3, 4).unwrap(), 9).unwrap();
        let f = TwistedPoly::new(&l, (1..7).map(FieldElement).collect());
        let g = TwistedPoly::new(&l, vec![FieldElement(5), FieldElement(0), FieldElement(11)]);
        let (s, t) = f.right_divrem(&l, &g).unwrap();
        assert!(t.deg().is_none_or(|d| d < 2));
        assert_eq!(s.mul(&l, &g).add(&l, &t), f);
    }

    fn field_poly(max: u32, len: usize) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..max, 0..len)
    }

    proptest! {
        #[test]
        fn field_ring_laws(a in field_poly(81, 5), b in field_poly(81, 5), c in field_poly(81, 5)) {
            let l = FieldTwist::new(FieldCtx::new(3, 4).unwrap(), 3).unwrap();
            let mk = |v: &Vec<u32>| TwistedPoly::new(&l, v.iter().map(|&x| FieldElement(x)).collect());
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.mul(&l, &b).mul(&l, &c), a.mul(&l, &b.mul(&l, &c)));
            prop_assert_eq!(a.mul(&l, &b.add(&l, &c)), a.mul(&l, &b).add(&l, &a.mul(&l, &c)));
            prop_assert_eq!(a.add(&l, &b).mul(&l, &c), a.mul(&l, &c).add(&l, &b.mul(&l, &c)));
            if !a.is_zero() && !b.is_zero() {
                let ab = a.mul(&l, &b);
                prop_assert_eq!(ab.ht(&l), Some(a.ht(&l).unwrap() + b.ht(&l).unwrap()));
                prop_assert_eq!(ab.deg(), Some(a.deg().unwrap() + b.deg().unwrap()));
            }
        }

        #[test]
        fn poly_ring_laws(a in prop::collection::vec(field_poly(3, 3), 0..3),
                          b in prop::collection::vec(field_poly(3, 3), 0..3),
                          c in prop::collection::vec(field_poly(3, 3), 0..3)) {
            let r = PolyRing::new(FieldCtx::new(3, 1).unwrap());
            let mk = |v: &Vec<Vec<u32>>| TwistedPoly::new(&r, v.iter().map(|x| Poly::from_u32s(x)).collect());
            let (a, b, c) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(a.mul(&r, &b).mul(&r, &c), a.mul(&r, &b.mul(&r, &c)));
            prop_assert_eq!(a.mul(&r, &b.add(&r, &c)), a.mul(&r, &b).add(&r, &a.mul(&r, &c)));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(a.mul(&r, &b).ht(&r), Some(a.ht(&r).unwrap() + b.ht(&r).unwrap()));
            }
        }

        #[test]
        fn evaluation_is_linear_and_composes(a in field_poly(64, 4), b in field_poly(64, 4),
                                             x in 0u32..64, y in 0u32..64) {
            let l = FieldTwist::new(FieldCtx::new(2, 6).unwrap(), 4).unwrap();
            let mk = |v: &Vec<u32>| TwistedPoly::new(&l, v.iter().map(|&x| FieldElement(x)).collect());
            let (f, g) = (mk(&a), mk(&b));
            let (x, y) = (FieldElement(x), FieldElement(y));
            let sum = l.add(&x, &y);
            prop_assert_eq!(f.eval(&l, &sum), l.add(&f.eval(&l, &x), &f.eval(&l, &y)));
            prop_assert_eq!(f.mul(&l, &g).eval(&l, &x), f.eval(&l, &g.eval(&l, &x)));
            // GF(4)-linearity: an element of order 3 lies in the subfield
            let c = l.ctx().pow(l.ctx().generator(), 21);
            prop_assert_eq!(l.frob(&c, 1), c);
            prop_assert_eq!(f.eval(&l, &l.mul(&c, &x)), l.mul(&c, &f.eval(&l, &x)));
        }
    }
}
