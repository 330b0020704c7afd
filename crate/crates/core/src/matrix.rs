//! Small square matrices over F_q and over A/(T²) = F_q[T]/T².

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{FieldCtx, FieldElement};
use crate::poly::{Poly, PolyRing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("matrix is singular")]
    Singular,
    #[error("generator list is empty")]
    Empty,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("group closure exceeds the envelope of {0} elements")]
    Envelope(u64),
    #[error("{0}")]
    Gate(String),
}

#[derive(Serialize, Deserialize)]
struct Rows {
    rows: Vec<Vec<FieldElement>>,
}

/// Row-major n×n matrix over F_q. The field context is passed to each operation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Rows", try_from = "Rows")]
pub struct MatrixGF {
    n: usize,
    data: Vec<FieldElement>,
}

impl From<MatrixGF> for Rows {
    fn from(m: MatrixGF) -> Rows {
        Rows {
            rows: m.data.chunks(m.n.max(1)).map(|r| r.to_vec()).collect(),
        }
    }
}

impl TryFrom<Rows> for MatrixGF {
    type Error = MatrixError;
    fn try_from(r: Rows) -> Result<Self, MatrixError> {
        MatrixGF::from_rows(r.rows)
    }
}

impl MatrixGF {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, MatrixError> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(MatrixError::Dimension {
                expected: n,
                got: bad.len(),
            });
        }
        Ok(MatrixGF {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_u32(rows: &[&[u32]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| FieldElement(x)).collect())
                .collect(),
        )
        .expect("square")
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, FieldElement::ONE)
    }

    pub fn scalar(n: usize, c: FieldElement) -> Self {
        let mut data = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            data[i * n + i] = c;
        }
        MatrixGF { n, data }
    }

    pub fn zero(n: usize) -> Self {
        MatrixGF {
            n,
            data: vec![FieldElement::ZERO; n * n],
        }
    }

    /// Companion matrix of a monic polynomial: `e_i ↦ e_{i+1}`, last column `-c`.
    pub fn companion(ctx: &FieldCtx, f: &Poly) -> Self {
        let n = f.degree().expect("nonconstant");
        let mut m = Self::zero(n);
        for i in 0..n {
            if i + 1 < n {
                m.set(i + 1, i, FieldElement::ONE);
            }
            m.set(i, n - 1, ctx.neg(f.coeff(i)));
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Self) -> Self {
        let n = self.n;
        let mut data = vec![FieldElement::ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    data[idx] = ctx.add(data[idx], ctx.mul(a, other.data[k * n + j]));
                }
            }
        }
        MatrixGF { n, data }
    }

    pub fn add(&self, ctx: &FieldCtx, other: &Self) -> Self {
        MatrixGF {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ctx.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, ctx: &FieldCtx, other: &Self) -> Self {
        MatrixGF {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ctx.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, ctx: &FieldCtx, c: FieldElement) -> Self {
        MatrixGF {
            n: self.n,
            data: self.data.iter().map(|&a| ctx.mul(a, c)).collect(),
        }
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(FieldElement::ZERO, |acc, j| {
                    ctx.add(acc, ctx.mul(self.get(i, j), v[j]))
                })
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut m = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc
    }

    pub fn trace(&self, ctx: &FieldCtx) -> FieldElement {
        (0..self.n).fold(FieldElement::ZERO, |acc, i| ctx.add(acc, self.get(i, i)))
    }

    /// Row-echelon reduction; returns `(det, inverse)`.
    fn gauss(&self, ctx: &FieldCtx) -> (FieldElement, Option<Self>) {
        let n = self.n;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut det = FieldElement::ONE;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return (FieldElement::ZERO, None);
            };
            if piv != col {
                for j in 0..n {
                    a.data.swap(piv * n + j, col * n + j);
                    inv.data.swap(piv * n + j, col * n + j);
                }
                det = ctx.neg(det);
            }
            let p = a.get(col, col);
            det = ctx.mul(det, p);
            let pinv = ctx.inv(p).expect("nonzero pivot");
            for j in 0..n {
                a.set(col, j, ctx.mul(a.get(col, j), pinv));
                inv.set(col, j, ctx.mul(inv.get(col, j), pinv));
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, ctx.sub(a.get(r, j), ctx.mul(f, a.get(col, j))));
                    inv.set(r, j, ctx.sub(inv.get(r, j), ctx.mul(f, inv.get(col, j))));
                }
            }
        }
        (det, Some(inv))
    }

    pub fn det(&self, ctx: &FieldCtx) -> FieldElement {
        self.gauss(ctx).0
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Self> {
        self.gauss(ctx).1
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.get(0, 0);
        *self == Self::scalar(self.n, c)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    /// `f(M)` by Horner.
    pub fn eval_poly(&self, ctx: &FieldCtx, f: &Poly) -> Self {
        f.coeffs().iter().rev().fold(Self::zero(self.n), |acc, &c| {
            acc.mul(ctx, self).add(ctx, &Self::scalar(self.n, c))
        })
    }

    /// Monic characteristic polynomial `det(xI - M)`.
    pub fn charpoly(&self, ctx: &FieldCtx) -> Poly {
        let n = self.n;
        let g = |i, j| self.get(i, j);
        let neg = |x| ctx.neg(x);
        match n {
            1 => Poly::new(vec![neg(g(0, 0)), FieldElement::ONE]),
            2 => Poly::new(vec![self.det(ctx), neg(self.trace(ctx)), FieldElement::ONE]),
            3 => {
                let m = |a, b| ctx.mul(a, b);
                let s2 = [(0, 1), (0, 2), (1, 2)]
                    .iter()
                    .fold(FieldElement::ZERO, |acc, &(i, j)| {
                        ctx.add(acc, ctx.sub(m(g(i, i), g(j, j)), m(g(i, j), g(j, i))))
                    });
                Poly::new(vec![
                    neg(self.det(ctx)),
                    s2,
                    neg(self.trace(ctx)),
                    FieldElement::ONE,
                ])
            }
            _ => self.charpoly_general(ctx),
        }
    }

    /// Signed sums of principal minors; exponential in n, fine for tiny n.
    fn charpoly_general(&self, ctx: &FieldCtx) -> Poly {
        let n = self.n;
        // e_k = sum of principal k×k minors; charpoly = Σ (-1)^k e_k x^{n-k}
        let mut coeffs = vec![FieldElement::ZERO; n + 1];
        coeffs[n] = FieldElement::ONE;
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let k = idx.len();
            let sub = MatrixGF {
                n: k,
                data: idx
                    .iter()
                    .flat_map(|&i| idx.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| self.get(i, j))
                    .collect(),
            };
            let mut e = sub.det(ctx);
            if k % 2 == 1 {
                e = ctx.neg(e);
            }
            coeffs[n - k] = ctx.add(coeffs[n - k], e);
        }
        Poly::new(coeffs)
    }

    /// Minimal polynomial: first linear dependence among `I, M, M², …`.
    pub fn minpoly(&self, ctx: &FieldCtx) -> Poly {
        let n = self.n;
        let mut powers: Vec<Vec<FieldElement>> = vec![Self::identity(n).data];
        let mut cur = Self::identity(n);
        for _ in 1..=n {
            cur = cur.mul(ctx, self);
            powers.push(cur.data.clone());
            if let Some(rel) = dependency(ctx, &powers) {
                return Poly::new(rel);
            }
        }
        unreachable!("Cayley–Hamilton")
    }

    /// Smallest `k ≥ 1` with `M^k` scalar, searched up to `limit`.
    pub fn projective_order(&self, ctx: &FieldCtx, limit: u64) -> Option<u64> {
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur.is_scalar() {
                return Some(k);
            }
            cur = cur.mul(ctx, self);
        }
        None
    }

    /// Multiplicative order, searched up to `limit`.
    pub fn order(&self, ctx: &FieldCtx, limit: u64) -> Option<u64> {
        let mut cur = self.clone();
        for k in 1..=limit {
            if cur.is_identity() {
                return Some(k);
            }
            cur = cur.mul(ctx, self);
        }
        None
    }
}

/// If the last vector is a combination of the earlier ones (assumed
/// independent), returns the monic relation `[c_0, …, c_{d-1}, 1]` with
/// `Σ c_i v_i + v_d = 0`.
fn dependency(ctx: &FieldCtx, vs: &[Vec<FieldElement>]) -> Option<Vec<FieldElement>> {
    let d = vs.len() - 1;
    let len = vs[0].len();
    // solve Σ x_i v_i = -v_d by elimination on the len × d system
    let mut rows: Vec<Vec<FieldElement>> = (0..len)
        .map(|r| {
            let mut row: Vec<FieldElement> = (0..d).map(|i| vs[i][r]).collect();
            row.push(ctx.neg(vs[d][r]));
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..d {
        let Some(p) = (rank..len).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = ctx.inv(rows[rank][col]).expect("pivot");
        for x in rows[rank].iter_mut() {
            *x = ctx.mul(*x, inv);
        }
        for r in 0..len {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col];
                for c in 0..=d {
                    rows[r][c] = ctx.sub(rows[r][c], ctx.mul(f, rows[rank][c]));
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[d].is_zero()) {
        return None;
    }
    let mut sol = vec![FieldElement::ZERO; d + 1];
    for (r, &col) in pivots.iter().enumerate() {
        sol[col] = rows[r][d];
    }
    sol[d] = FieldElement::ONE;
    Some(sol)
}

/// Vector ↔ index `Σ v_i q^i`.
pub fn vector_index(v: &[FieldElement], q: u64) -> usize {
    v.iter().rev().fold(0usize, |acc, c| acc * q as usize + c.0 as usize)
}

pub fn index_vector(mut idx: usize, q: u64, n: usize) -> Vec<FieldElement> {
    (0..n)
        .map(|_| {
            let c = FieldElement((idx % q as usize) as u32);
            idx /= q as usize;
            c
        })
        .collect()
}

/// Rational canonical form for n ≤ 3, determined by the characteristic and
/// minimal polynomials: the invariant factors are `charpoly/minpoly` (split
/// further into equal linear factors when it has degree 2) and `minpoly`.
pub fn rational_canonical_form(ctx: &FieldCtx, charpoly: &Poly, minpoly: &Poly) -> MatrixGF {
    let ring = PolyRing::new(ctx.clone());
    let n = charpoly.degree().expect("nonconstant");
    assert!(n <= 3, "rational canonical form only for n <= 3");
    let m = minpoly.degree().expect("nonconstant");
    let blocks: Vec<Poly> = if m == n {
        vec![minpoly.clone()]
    } else if m == 1 {
        vec![minpoly.clone(); n]
    } else {
        vec![ring.div_exact(charpoly, minpoly), minpoly.clone()]
    };
    let mut out = MatrixGF::zero(n);
    let mut off = 0;
    for b in &blocks {
        let c = MatrixGF::companion(ctx, b);
        for i in 0..c.n {
            for j in 0..c.n {
                out.set(off + i, off + j, c.get(i, j));
            }
        }
        off += c.n;
    }
    assert_eq!(off, n);
    out
}

/// Whether no proper nonzero subspace is invariant under every generator.
/// Lines are scanned for the group and its transpose (the latter detects
/// invariant hyperplanes), which is exhaustive for n ≤ 3.
pub fn action_irreducible(ctx: &FieldCtx, gens: &[MatrixGF]) -> Result<bool, MatrixError> {
    let n = gens.first().ok_or(MatrixError::Empty)?.n;
    if n > 3 {
        return Err(MatrixError::Gate("subspace scan supports n <= 3".into()));
    }
    let transposed: Vec<MatrixGF> = gens.iter().map(|g| g.transpose()).collect();
    let fixes_a_line = |gs: &[MatrixGF]| {
        projective_points(ctx, n).any(|v| gs.iter().all(|g| in_span(ctx, &g.mul_vec(ctx, &v), &v)))
    };
    if fixes_a_line(gens) {
        return Ok(false);
    }
    if n == 3 && fixes_a_line(&transposed) {
        return Ok(false);
    }
    Ok(true)
}

/// Normalised representatives (last nonzero coordinate 1) of the lines in F_q^n.
pub fn projective_points(ctx: &FieldCtx, n: usize) -> impl Iterator<Item = Vec<FieldElement>> + '_ {
    let q = ctx.size();
    let total = (q as usize).pow(n as u32);
    (1..total)
        .map(move |i| index_vector(i, q, n))
        .filter(|v| v.iter().rev().find(|c| !c.is_zero()) == Some(&FieldElement::ONE))
}

fn in_span(ctx: &FieldCtx, w: &[FieldElement], v: &[FieldElement]) -> bool {
    // v is normalised with a 1 at its last nonzero position k
    let k = v.iter().rposition(|c| !c.is_zero()).expect("nonzero");
    let lambda = w[k];
    w.iter().zip(v).all(|(&a, &b)| a == ctx.mul(lambda, b))
}

/// `a_0 + a_1 T` entrywise, modulo T².
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatrixModT2 {
    pub a0: MatrixGF,
    pub a1: MatrixGF,
}

impl MatrixModT2 {
    pub fn new(a0: MatrixGF, a1: MatrixGF) -> Self {
        assert_eq!(a0.n, a1.n);
        MatrixModT2 { a0, a1 }
    }

    pub fn identity(n: usize) -> Self {
        MatrixModT2::new(MatrixGF::identity(n), MatrixGF::zero(n))
    }

    pub fn n(&self) -> usize {
        self.a0.n
    }

    pub fn mul(&self, ctx: &FieldCtx, o: &Self) -> Self {
        MatrixModT2 {
            a0: self.a0.mul(ctx, &o.a0),
            a1: self.a0.mul(ctx, &o.a1).add(ctx, &self.a1.mul(ctx, &o.a0)),
        }
    }

    pub fn inverse(&self, ctx: &FieldCtx) -> Option<Self> {
        // (A + TB)^{-1} = A^{-1} - T A^{-1} B A^{-1}
        let ai = self.a0.inverse(ctx)?;
        let b = ai.mul(ctx, &self.a1).mul(ctx, &ai);
        Some(MatrixModT2 {
            a0: ai,
            a1: MatrixGF::zero(self.n()).sub(ctx, &b),
        })
    }

    pub fn pow(&self, ctx: &FieldCtx, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(ctx, &base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(ctx, &base);
            }
        }
        acc
    }

    pub fn reduce(&self) -> &MatrixGF {
        &self.a0
    }

    /// Scalar in `A/(T²)`: both parts scalar.
    pub fn is_scalar(&self) -> bool {
        self.a0.is_scalar() && self.a1.is_scalar()
    }

    pub fn is_identity_mod_t(&self) -> bool {
        self.a0.is_identity()
    }
}

/// Searches the kernel of reduction mod T in the generated group for a
/// non-scalar element. That kernel is `{I + TN}` with N ranging over an
/// additive group, and by Schreier's lemma it is generated by
/// `lift(x)·s·lift(xs̄)^{-1}` for x in the image mod T; it contains a non-scalar
/// element iff one of these generators is non-scalar.
pub fn nonscalar_identity_mod_t(
    ctx: &FieldCtx,
    gens: &[MatrixModT2],
    envelope: u64,
) -> Result<Option<MatrixModT2>, MatrixError> {
    let Some(first) = gens.first() else {
        return Ok(None);
    };
    let n = first.n();
    let inverses: Vec<MatrixModT2> = gens
        .iter()
        .map(|g| g.inverse(ctx).ok_or(MatrixError::Singular))
        .collect::<Result<_, _>>()?;
    let mut lifts: HashMap<MatrixGF, MatrixModT2> = HashMap::new();
    lifts.insert(MatrixGF::identity(n), MatrixModT2::identity(n));
    let mut queue = vec![MatrixGF::identity(n)];
    while let Some(x) = queue.pop() {
        let lx = lifts[&x].clone();
        for (s, _) in gens.iter().zip(&inverses) {
            let prod = lx.mul(ctx, s);
            let y = prod.a0.clone();
            match lifts.get(&y) {
                Some(ly) => {
                    let k = prod.mul(ctx, &ly.inverse(ctx).expect("invertible"));
                    if !k.is_scalar() {
                        return Ok(Some(k));
                    }
                }
                None => {
                    if lifts.len() as u64 >= envelope {
                        return Err(MatrixError::Envelope(envelope));
                    }
                    lifts.insert(y.clone(), prod);
                    queue.push(y);
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64, k: u32) -> FieldCtx {
        FieldCtx::new(p, k).unwrap()
    }

    #[test]
    fn basic_ops() {
        let c = f(5, 1);
        let m = MatrixGF::from_u32(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.det(&c), FieldElement(3)); // 4 - 6 = -2
        let mi = m.inverse(&c).unwrap();
        assert!(m.mul(&c, &mi).is_identity());
        assert_eq!(m.charpoly(&c), Poly::from_u32s(&[3, 0, 1]));
        assert!(MatrixGF::from_u32(&[&[1, 2], &[2, 4]]).inverse(&c).is_none());
    }

    #[test]
    fn charpoly_and_minpoly_3x3() {
        let c = f(7, 1);
        let m = MatrixGF::from_u32(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        assert_eq!(m.charpoly(&c), Poly::from_u32s(&[6, 5, 1, 1])); // (x-2)^3
        assert_eq!(m.minpoly(&c), Poly::from_u32s(&[4, 3, 1])); // (x-2)^2
        assert!(m.eval_poly(&c, &m.charpoly(&c)) == MatrixGF::zero(3));
        let s = MatrixGF::scalar(3, FieldElement(3));
        assert_eq!(s.minpoly(&c), Poly::from_u32s(&[4, 1]));
    }

    #[test]
    fn charpoly_general_matches_small_formula() {
        let c = f(11, 1);
        let m = MatrixGF::from_u32(&[&[1, 5, 7], &[2, 0, 3], &[9, 4, 6]]);
        assert_eq!(m.charpoly(&c), m.charpoly_general(&c));
    }

    #[test]
    fn rcf_is_similar_invariant() {
        let c = f(3, 1);
        let cp = Poly::from_u32s(&[1, 0, 1]); // x^2+1 irreducible over GF(3)
        let r = rational_canonical_form(&c, &cp, &cp);
        assert_eq!(r, MatrixGF::from_u32(&[&[0, 2], &[1, 0]]));
        // (x-1)^2 (x-2), minpoly (x-1)(x-2)
        let ring = PolyRing::new(c.clone());
        let l1 = Poly::from_u32s(&[2, 1]);
        let l2 = Poly::from_u32s(&[1, 1]);
        let cp = ring.mul(&ring.mul(&l1, &l1), &l2);
        let mp = ring.mul(&l1, &l2);
        let r = rational_canonical_form(&c, &cp, &mp);
        assert_eq!(r.charpoly(&c), cp);
        assert_eq!(r.minpoly(&c), mp);
        let s = rational_canonical_form(&c, &ring.pow(&l1, 3), &l1);
        assert_eq!(s, MatrixGF::identity(3));
    }

    #[test]
    fn irreducible_action_examples() {
        let c = f(2, 2);
        assert!(!action_irreducible(&c, &[MatrixGF::identity(2)]).unwrap());
        // companion of x^2 + x + 2 (irreducible over GF(4): 2 = a, no roots)
        let ring = PolyRing::new(c.clone());
        let p = Poly::from_u32s(&[2, 1, 1]);
        assert!(ring.is_irreducible(&p).unwrap());
        let comp = MatrixGF::companion(&c, &p);
        assert!(action_irreducible(&c, &[comp]).unwrap());
        let borel = MatrixGF::from_u32(&[&[1, 1], &[0, 1]]);
        assert!(!action_irreducible(&c, &[borel]).unwrap());
        assert_eq!(action_irreducible(&c, &[]), Err(MatrixError::Empty));
    }

    #[test]
    fn plane_stabilizer_detected() {
        let c = f(3, 1);
        // stabilises the plane spanned by e1, e2 but no line
        let a = MatrixGF::from_u32(&[&[0, 2, 1], &[1, 0, 1], &[0, 0, 1]]);
        assert!(!action_irreducible(&c, std::slice::from_ref(&a)).unwrap());
        let ring = PolyRing::new(c.clone());
        let cubic = Poly::from_u32s(&[1, 2, 0, 1]);
        assert!(ring.is_irreducible(&cubic).unwrap());
        assert!(action_irreducible(&c, &[MatrixGF::companion(&c, &cubic)]).unwrap());
    }

    #[test]
    fn kernel_witness_search() {
        let c = f(3, 1);
        let mut e13 = MatrixGF::zero(3);
        e13.set(0, 2, FieldElement::ONE);
        let w = MatrixModT2::new(MatrixGF::identity(3), e13);
        let got = nonscalar_identity_mod_t(&c, std::slice::from_ref(&w), 1 << 24).unwrap();
        assert_eq!(got, Some(w));

        let scalar = MatrixModT2::new(MatrixGF::scalar(3, FieldElement(2)), MatrixGF::scalar(3, FieldElement(1)));
        assert_eq!(nonscalar_identity_mod_t(&c, &[scalar], 1 << 24).unwrap(), None);

        // g = P + T·B with P an involution; g² = I + T(PB + BP)
        let mut b = MatrixGF::zero(3);
        b.set(0, 2, FieldElement(1));
        b.set(1, 2, FieldElement(1));
        let g = MatrixModT2::new(MatrixGF::from_u32(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), b);
        let k = nonscalar_identity_mod_t(&c, &[g], 1 << 24).unwrap().unwrap();
        assert!(k.is_identity_mod_t() && !k.a1.is_zero_matrix());
    }

    impl MatrixGF {
        fn is_zero_matrix(&self) -> bool {
            self.data.iter().all(|c| c.is_zero())
        }
    }

    #[test]
    fn mod_t2_inverse() {
        let c = f(5, 1);
        let g = MatrixModT2::new(
            MatrixGF::from_u32(&[&[1, 2], &[3, 4]]),
            MatrixGF::from_u32(&[&[0, 1], &[4, 2]]),
        );
        let gi = g.inverse(&c).unwrap();
        assert_eq!(g.mul(&c, &gi), MatrixModT2::identity(2));
    }

    #[test]
    fn serde_rows() {
        let m = MatrixGF::from_u32(&[&[0, 1], &[1, 1]]);
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"{"rows":[[0,1],[1,1]]}"#);
        let back: MatrixGF = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
    }
}
