//! Frobenius at a good prime l acting on the reduced torsion φ̄[T] and φ̄[T²].
//!
//! Two routes. The roots route builds the splitting field, collects the
//! torsion points and writes the matrix of `x ↦ x^{|F_l|}` in a basis of
//! roots; it is exact but the field grows quickly. The motive route works in
//! `M = L{τ}/L{τ}φ̄_T` over the residue field L: left multiplication by
//! `τ^{deg l}` is L-linear and, through the pairing `(h, α) ↦ h(α)`, is the
//! transpose of the Frobenius on φ̄[T]. Its characteristic and minimal
//! polynomials therefore lie in F_q[x] and fix the conjugacy class.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::drinfeld::{DrinfeldError, DrinfeldModule, ResidueField};
use crate::field::{extension_field, FieldCtx, FieldElement, FieldError};
use crate::matrix::{rational_canonical_form, MatrixGF, MatrixModT2};
use crate::poly::{Poly, PrimeIdeal};
use crate::rational::Q;
use crate::twisted::{FieldTwist, TwistedPoly};

/// Largest q for the mod-T² sampler.
pub const T2_MAX_Q: u64 = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FrobeniusError {
    #[error("reduction at {0} is not good")]
    BadReduction(String),
    #[error("reduction at {0} needs a ramified twist")]
    RamifiedTwist(String),
    #[error("the prime T is excluded")]
    PrimeT,
    #[error("{0}")]
    Envelope(String),
    #[error("Frobenius data is not defined over F_q (internal inconsistency)")]
    NotRational,
    #[error(transparent)]
    Drinfeld(#[from] DrinfeldError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Motive,
    Roots,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrobeniusSample {
    pub prime: PrimeIdeal,
    pub matrix: MatrixGF,
    /// Order of the Frobenius on φ̄[T]: the torsion splits over GF(|F_l|^d).
    pub splitting_degree: u64,
    pub char_poly: Poly,
    pub route: Route,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FrobeniusSampleT2 {
    pub prime: PrimeIdeal,
    pub matrix: MatrixModT2,
    pub route: Route,
}

/// A good prime where the reduced module is defined over the residue field.
pub struct GoodReduction {
    pub residue: ResidueField,
    pub phi_t: TwistedPoly<FieldElement>,
}

pub fn good_reduction(m: &DrinfeldModule, l: &PrimeIdeal) -> Result<GoodReduction, FrobeniusError> {
    if l.is_t() {
        return Err(FrobeniusError::PrimeT);
    }
    let (slope, stable) = m.twist_slope(l);
    if stable != m.rank() {
        return Err(FrobeniusError::BadReduction(l.to_string()));
    }
    if !slope.is_integer() {
        return Err(FrobeniusError::RamifiedTwist(l.to_string()));
    }
    let residue = ResidueField::new(m.ring(), l)?;
    let phi_t = m.reduced_phi_t(&residue);
    Ok(GoodReduction { residue, phi_t })
}

/// `τ^k mod g` on the right, as coefficient vector of length `deg g`.
fn tau_power_mod(tw: &FieldTwist, k: usize, g: &TwistedPoly<FieldElement>) -> Vec<FieldElement> {
    let r = g.deg().expect("nonzero");
    let rem = TwistedPoly::monomial(tw, FieldElement::ONE, k)
        .right_rem(tw, g)
        .expect("nonzero modulus");
    (0..r).map(|i| rem.coeff(tw, i)).collect()
}

fn pull(emb: &crate::field::Embedding, p: &Poly) -> Result<Poly, FrobeniusError> {
    p.coeffs()
        .iter()
        .map(|&c| emb.pullback(c).ok_or(FrobeniusError::NotRational))
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

/// The L-matrix of left multiplication by `τ^{deg l}` on `L{τ}/L{τ}φ̄_T`.
pub fn motive_matrix(red: &GoodReduction) -> MatrixGF {
    let tw = red.residue.twist();
    let r = red.phi_t.deg().expect("nonzero");
    let d = red.residue.prime().degree();
    let cols: Vec<Vec<FieldElement>> = (0..r).map(|j| tau_power_mod(tw, d + j, &red.phi_t)).collect();
    let mut m = MatrixGF::zero(r);
    for (j, col) in cols.iter().enumerate() {
        for (i, &v) in col.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

fn base_ctx(m: &DrinfeldModule) -> &FieldCtx {
    m.ctx()
}

/// Frobenius class on φ̄[T] via the motive, as a rational canonical form over F_q.
pub fn frobenius_mod_t_motive(m: &DrinfeldModule, l: &PrimeIdeal) -> Result<FrobeniusSample, FrobeniusError> {
    if m.rank() > 3 {
        return Err(FrobeniusError::Envelope(
            "motive route determines the class only for rank <= 3".into(),
        ));
    }
    let red = good_reduction(m, l)?;
    let lctx = red.residue.ctx().clone();
    let pi = motive_matrix(&red);
    let emb = red.residue.embedding();
    let char_poly = pull(emb, &pi.charpoly(&lctx))?;
    let minpoly = pull(emb, &pi.minpoly(&lctx))?;
    let matrix = rational_canonical_form(base_ctx(m), &char_poly, &minpoly);
    let splitting_degree = matrix_order(base_ctx(m), &matrix);
    Ok(FrobeniusSample {
        prime: l.clone(),
        matrix,
        splitting_degree,
        char_poly,
        route: Route::Motive,
    })
}

/// Multiplicative order of an invertible matrix over F_q (bounded by |GL_n|).
pub fn matrix_order(ctx: &FieldCtx, m: &MatrixGF) -> u64 {
    let bound = crate::group::gl_order(ctx.size(), m.n());
    let mut e = bound;
    let mut factors = Vec::new();
    let mut x = bound;
    let mut f = 2u128;
    while f * f <= x {
        if x.is_multiple_of(f) {
            factors.push(f);
            while x.is_multiple_of(f) {
                x /= f;
            }
        }
        f += 1;
    }
    if x > 1 {
        factors.push(x);
    }
    for p in factors {
        while e.is_multiple_of(p) && m.pow(ctx, e / p).is_identity() {
            e /= p;
        }
    }
    e as u64
}

/// Everything the roots route needs: the splitting field and the torsion space.
struct RootSpace {
    big: FieldCtx,
    tw: FieldTwist,
    /// all roots of φ̄_{T^k}, ascending
    roots: Vec<FieldElement>,
    /// `|F_l|`-power exponent in terms of p-power Frobenius steps
    frob_steps: u32,
    /// embedding of F_q into the big field
    scalars: Vec<FieldElement>,
}

fn fp_kernel(big: &FieldCtx, f: impl Fn(FieldElement) -> FieldElement) -> Vec<FieldElement> {
    // F_p-linear map on GF(p^K); columns are images of p^i
    let p = big.p() as u32;
    let kk = big.k() as usize;
    let basis: Vec<FieldElement> = (0..kk)
        .map(|i| {
            let mut c = vec![0u32; kk];
            c[i] = 1;
            big.from_coords(&c)
        })
        .collect();
    let cols: Vec<Vec<u32>> = basis.iter().map(|&b| big.coords(f(b))).collect();
    // rows = coordinates, cols = basis vectors
    let mut a: Vec<Vec<u32>> = (0..kk).map(|i| (0..kk).map(|j| cols[j][i]).collect()).collect();
    let inv = |x: u32| (1..p).find(|&y| (x as u64 * y as u64) % p as u64 == 1).unwrap();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..kk {
        let Some(pr) = (row..kk).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(row, pr);
        let iv = inv(a[row][col]);
        for x in a[row].iter_mut() {
            *x = (*x as u64 * iv as u64 % p as u64) as u32;
        }
        for r in 0..kk {
            if r != row && a[r][col] != 0 {
                let fct = a[r][col] as u64;
                for c in 0..kk {
                    a[r][c] = ((a[r][c] as u64 + (p as u64 - fct) * a[row][c] as u64) % p as u64) as u32;
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free: Vec<usize> = (0..kk).filter(|c| !pivot_cols.contains(c)).collect();
    let kernel_basis: Vec<FieldElement> = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u32; kk];
            v[fc] = 1;
            for (r, &pc) in pivot_cols.iter().enumerate() {
                v[pc] = (p - a[r][fc] % p) % p;
            }
            big.from_coords(&v)
        })
        .collect();
    // all F_p-combinations
    let mut out = vec![FieldElement::ZERO];
    for b in kernel_basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for &x in &out {
            let mut acc = x;
            for _ in 0..p {
                next.push(acc);
                acc = big.add(acc, b);
            }
        }
        out = next;
    }
    out.sort();
    out
}

fn root_space(
    m: &DrinfeldModule,
    red: &GoodReduction,
    level: usize,
    order: u64,
) -> Result<RootSpace, FrobeniusError> {
    let lctx = red.residue.ctx().clone();
    let ext = extension_field(&lctx, order as u32)?;
    let big = ext.target().clone();
    let tw = FieldTwist::new(big.clone(), m.q())?;
    let phi = red.phi_t.map(&tw, |&c| ext.embed(c));
    let mut phi_level = TwistedPoly::constant(&tw, FieldElement::ONE);
    for _ in 0..level {
        phi_level = phi_level.mul(&tw, &phi);
    }
    let roots = fp_kernel(&big, |x| phi_level.eval(&tw, &x));
    let base_emb = extension_field(base_ctx(m), big.k() / base_ctx(m).k())?;
    let scalars = base_ctx(m).elements().map(|c| base_emb.embed(c)).collect();
    Ok(RootSpace {
        frob_steps: lctx.k(),
        big,
        tw,
        roots,
        scalars,
    })
}

/// F_q-span of `basis` with coordinates.
fn span(rs: &RootSpace, basis: &[FieldElement]) -> HashMap<FieldElement, Vec<FieldElement>> {
    let mut out: HashMap<FieldElement, Vec<FieldElement>> = HashMap::from([(FieldElement::ZERO, vec![])]);
    for &b in basis {
        let mut next = HashMap::with_capacity(out.len() * rs.scalars.len());
        for (x, coords) in &out {
            for (ci, &c) in rs.scalars.iter().enumerate() {
                let mut cs = coords.clone();
                cs.push(FieldElement(ci as u32));
                next.insert(rs.big.add(*x, rs.big.mul(c, b)), cs);
            }
        }
        out = next;
    }
    out
}

fn greedy_basis(rs: &RootSpace, candidates: &[FieldElement], dim: usize) -> Vec<FieldElement> {
    let mut basis = Vec::new();
    let mut covered: HashSet<FieldElement> = HashSet::from([FieldElement::ZERO]);
    for &x in candidates {
        if basis.len() == dim {
            break;
        }
        if !covered.contains(&x) {
            basis.push(x);
            covered = span(rs, &basis).into_keys().collect();
        }
    }
    basis
}

/// Frobenius on φ̄[T] in a basis of roots. `shuffle` permutes the root
/// enumeration before the greedy basis choice (for basis-independence tests).
pub fn frobenius_mod_t_roots(
    m: &DrinfeldModule,
    l: &PrimeIdeal,
    shuffle: Option<u64>,
) -> Result<FrobeniusSample, FrobeniusError> {
    let red = good_reduction(m, l)?;
    let order = if m.rank() <= 3 {
        frobenius_mod_t_motive(m, l)?.splitting_degree
    } else {
        return Err(FrobeniusError::Envelope("roots route needs rank <= 3".into()));
    };
    check_envelope(red.residue.ctx(), order)?;
    let rs = root_space(m, &red, 1, order)?;
    let r = m.rank();
    if rs.roots.len() as u64 != m.q().pow(r as u32) {
        return Err(FrobeniusError::NotRational);
    }
    let mut cands: Vec<FieldElement> = rs.roots[1..].to_vec();
    if let Some(seed) = shuffle {
        cands.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let basis = greedy_basis(&rs, &cands, r);
    let matrix = frobenius_in_basis(&rs, &basis);
    let ctx = base_ctx(m);
    Ok(FrobeniusSample {
        prime: l.clone(),
        char_poly: matrix.charpoly(ctx),
        splitting_degree: order,
        matrix,
        route: Route::Roots,
    })
}

fn check_envelope(lctx: &FieldCtx, order: u64) -> Result<(), FrobeniusError> {
    let k = lctx.k() as u64 * order;
    if (lctx.p() as f64).powf(k as f64) > crate::field::FIELD_ENVELOPE as f64 {
        return Err(FrobeniusError::Envelope(format!(
            "splitting field GF({}^{k}) exceeds 2^31",
            lctx.p()
        )));
    }
    Ok(())
}

fn frobenius_in_basis(rs: &RootSpace, basis: &[FieldElement]) -> MatrixGF {
    let coords = span(rs, basis);
    let n = basis.len();
    let mut mat = MatrixGF::zero(n);
    for (j, &b) in basis.iter().enumerate() {
        let img = rs.big.frobenius(b, rs.frob_steps);
        let c = &coords[&img];
        for i in 0..n {
            mat.set(i, j, c[i]);
        }
    }
    mat
}

/// Checks the sample against every root: `M · coords(α) = coords(α^{|F_l|})`.
/// Returns the number of roots checked.
pub fn verify_root_action(m: &DrinfeldModule, sample: &FrobeniusSample, basis: &[FieldElement], l: &PrimeIdeal) -> Result<usize, FrobeniusError> {
    let red = good_reduction(m, l)?;
    let rs = root_space(m, &red, 1, sample.splitting_degree)?;
    let coords = span(&rs, basis);
    let ctx = base_ctx(m);
    for &root in &rs.roots {
        let c = coords.get(&root).ok_or(FrobeniusError::NotRational)?;
        let img = rs.big.frobenius(root, rs.frob_steps);
        let want = coords.get(&img).ok_or(FrobeniusError::NotRational)?;
        if &sample.matrix.mul_vec(ctx, c) != want {
            return Err(FrobeniusError::NotRational);
        }
    }
    Ok(rs.roots.len())
}

/// Roots-route sample together with its basis and all roots.
pub fn frobenius_mod_t_roots_detailed(
    m: &DrinfeldModule,
    l: &PrimeIdeal,
) -> Result<(FrobeniusSample, Vec<FieldElement>, Vec<FieldElement>, FieldCtx), FrobeniusError> {
    let red = good_reduction(m, l)?;
    let order = frobenius_mod_t_motive(m, l)?.splitting_degree;
    check_envelope(red.residue.ctx(), order)?;
    let rs = root_space(m, &red, 1, order)?;
    let basis = greedy_basis(&rs, &rs.roots[1..], m.rank());
    let matrix = frobenius_in_basis(&rs, &basis);
    let sample = FrobeniusSample {
        prime: l.clone(),
        char_poly: matrix.charpoly(base_ctx(m)),
        splitting_degree: order,
        matrix,
        route: Route::Roots,
    };
    Ok((sample, basis, rs.roots, rs.big))
}

fn t2_gate(m: &DrinfeldModule) -> Result<(), FrobeniusError> {
    if m.rank() != 2 || m.q() > T2_MAX_Q {
        return Err(FrobeniusError::Envelope(format!(
            "mod-T² sampling covers rank 2 with q <= {T2_MAX_Q}; got rank {} q {}",
            m.rank(),
            m.q()
        )));
    }
    Ok(())
}

/// Frobenius on φ̄[T²] via the motive `L{τ}/L{τ}φ̄_{T²}`, a free module of
/// rank 2 over `L[t]/t²` with t acting by right multiplication by φ̄_T.
/// Returned as a conjugacy-class representative over `F_q[t]/t²`: the
/// companion matrix of the characteristic polynomial when the reduction is
/// not scalar, and `λI + t·RCF(N)` when it is `λI + tN`.
pub fn frobenius_mod_t2_motive(m: &DrinfeldModule, l: &PrimeIdeal) -> Result<FrobeniusSampleT2, FrobeniusError> {
    t2_gate(m)?;
    let red = good_reduction(m, l)?;
    let (a0, a1) = motive_matrix_t2(&red);
    let lctx = red.residue.ctx().clone();
    let emb = red.residue.embedding();
    let qctx = base_ctx(m);
    let pb = |x: FieldElement| emb.pullback(x).ok_or(FrobeniusError::NotRational);
    let matrix = if a0.is_scalar() {
        let lambda = pb(a0.get(0, 0))?;
        let cp = pull(emb, &a1.charpoly(&lctx))?;
        let mp = pull(emb, &a1.minpoly(&lctx))?;
        MatrixModT2::new(
            MatrixGF::scalar(2, lambda),
            rational_canonical_form(qctx, &cp, &mp),
        )
    } else {
        // x² − (tr0 + t·tr1) x + (det0 + t·det1)
        let tr0 = a0.trace(&lctx);
        let tr1 = a1.trace(&lctx);
        let det0 = a0.det(&lctx);
        let adj = MatrixGF::from_rows(vec![
            vec![a0.get(1, 1), lctx.neg(a0.get(0, 1))],
            vec![lctx.neg(a0.get(1, 0)), a0.get(0, 0)],
        ])
        .expect("2x2");
        let det1 = adj.mul(&lctx, &a1).trace(&lctx);
        let (tr0, tr1, det0, det1) = (pb(tr0)?, pb(tr1)?, pb(det0)?, pb(det1)?);
        let c = |d: FieldElement, t: FieldElement| {
            MatrixGF::from_rows(vec![
                vec![FieldElement::ZERO, qctx.neg(d)],
                vec![FieldElement::ONE, t],
            ])
            .expect("2x2")
        };
        let mut part1 = c(det1, tr1);
        part1.set(1, 0, FieldElement::ZERO);
        MatrixModT2::new(c(det0, tr0), part1)
    };
    Ok(FrobeniusSampleT2 {
        prime: l.clone(),
        matrix,
        route: Route::Motive,
    })
}

/// `(A0, A1)` with `π = A0 + t·A1` in the `L[t]/t²`-basis `1, τ` of the T²-motive.
fn motive_matrix_t2(red: &GoodReduction) -> (MatrixGF, MatrixGF) {
    let tw = red.residue.twist();
    let lctx = tw.ctx().clone();
    let phi = &red.phi_t;
    let r = phi.deg().expect("nonzero");
    let phi2 = phi.mul(tw, phi);
    let n = 2 * r;
    let d = red.residue.prime().degree();
    let coords = |f: &TwistedPoly<FieldElement>| -> Vec<FieldElement> {
        let rem = f.right_rem(tw, &phi2).expect("nonzero");
        (0..n).map(|i| rem.coeff(tw, i)).collect()
    };
    // L-basis e_0..e_{r-1}, t e_0..t e_{r-1} with e_j = τ^j and t e_j = τ^j φ̄_T
    let mut b = MatrixGF::zero(n);
    for j in 0..r {
        let ej = TwistedPoly::monomial(tw, FieldElement::ONE, j);
        for (i, v) in coords(&ej).into_iter().enumerate() {
            b.set(i, j, v);
        }
        for (i, v) in coords(&ej.mul(tw, phi)).into_iter().enumerate() {
            b.set(i, r + j, v);
        }
    }
    let binv = b.inverse(&lctx).expect("basis");
    let mut a0 = MatrixGF::zero(r);
    let mut a1 = MatrixGF::zero(r);
    for j in 0..r {
        let img = coords(&TwistedPoly::monomial(tw, FieldElement::ONE, d + j));
        let sol = binv.mul_vec(&lctx, &img);
        for i in 0..r {
            a0.set(i, j, sol[i]);
            a1.set(i, j, sol[r + i]);
        }
    }
    (a0, a1)
}

/// Frobenius on φ̄[T²] in a root basis `u_1, u_2` with `φ̄_T(u_i)` the mod-T
/// basis; the matrix of `σ` on `(u, φ̄_T u)` splits as `A0 + t·A1`.
pub fn frobenius_mod_t2_roots(m: &DrinfeldModule, l: &PrimeIdeal) -> Result<FrobeniusSampleT2, FrobeniusError> {
    t2_gate(m)?;
    let red = good_reduction(m, l)?;
    let motive = frobenius_mod_t2_motive(m, l)?;
    let qctx = base_ctx(m);
    // order of the T²-level Frobenius divides p · order mod T
    let order = matrix_order(qctx, &motive.matrix.a0) * qctx.p();
    check_envelope(red.residue.ctx(), order)?;
    let rs = root_space(m, &red, 2, order)?;
    let r = m.rank();
    if rs.roots.len() as u64 != m.q().pow(2 * r as u32) {
        return Err(FrobeniusError::NotRational);
    }
    let phi = red.phi_t.map(&rs.tw, |&c| {
        extension_field(red.residue.ctx(), rs.big.k() / red.residue.ctx().k())
            .expect("built above")
            .embed(c)
    });
    let level1: Vec<FieldElement> = rs
        .roots
        .iter()
        .copied()
        .filter(|x| phi.eval(&rs.tw, x).is_zero())
        .collect();
    let v_sub = RootSpace {
        big: rs.big.clone(),
        tw: rs.tw.clone(),
        roots: level1,
        frob_steps: rs.frob_steps,
        scalars: rs.scalars.clone(),
    };
    let v = greedy_basis(&v_sub, &v_sub.roots[1..], r);
    // u_i: smallest root with φ̄_T(u_i) = v_i
    let u: Vec<FieldElement> = v
        .iter()
        .map(|&vi| {
            *rs.roots
                .iter()
                .find(|x| phi.eval(&rs.tw, x) == vi)
                .expect("φ̄_T is onto φ̄[T] from φ̄[T²]")
        })
        .collect();
    let mut full_basis = u.clone();
    full_basis.extend(&v);
    let coords = span(&rs, &full_basis);
    let mut a0 = MatrixGF::zero(r);
    let mut a1 = MatrixGF::zero(r);
    for (j, &uj) in u.iter().enumerate() {
        let img = rs.big.frobenius(uj, rs.frob_steps);
        let c = &coords[&img];
        for i in 0..r {
            a0.set(i, j, c[i]);
            a1.set(i, j, c[r + i]);
        }
    }
    Ok(FrobeniusSampleT2 {
        prime: l.clone(),
        matrix: MatrixModT2::new(a0, a1),
        route: Route::Roots,
    })
}

/// `g^k = I + tN` for `k` the order of `g` mod T; returns `N` when non-scalar.
pub fn kernel_witness(ctx: &FieldCtx, g: &MatrixModT2) -> Option<MatrixModT2> {
    let k = matrix_order(ctx, &g.a0);
    let h = g.pow(ctx, k as u128);
    debug_assert!(h.is_identity_mod_t());
    (!h.is_scalar()).then_some(h)
}

/// Whether two samples over F_q[t]/t² are conjugate-compatible: same
/// characteristic polynomial over F_q[t]/t² (for n = 2).
pub fn charpoly_t2(ctx: &FieldCtx, g: &MatrixModT2) -> (Poly, Poly) {
    let tr1 = g.a1.trace(ctx);
    let a0 = &g.a0;
    let adj = MatrixGF::from_rows(vec![
        vec![a0.get(1, 1), ctx.neg(a0.get(0, 1))],
        vec![ctx.neg(a0.get(1, 0)), a0.get(0, 0)],
    ])
    .expect("2x2");
    let det1 = adj.mul(ctx, &g.a1).trace(ctx);
    (
        a0.charpoly(ctx),
        Poly::new(vec![det1, ctx.neg(tr1)]),
    )
}

/// Slope check used when deciding whether a prime can be sampled.
pub fn integral_twist(m: &DrinfeldModule, l: &PrimeIdeal) -> bool {
    let (s, _): (Q, usize) = m.twist_slope(l);
    s.is_integer()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::prime_power;

    fn module(q: u64, g: &[&[u32]]) -> DrinfeldModule {
        let (p, k) = prime_power(q).unwrap();
        DrinfeldModule::new(
            FieldCtx::new(p, k).unwrap(),
            g.iter().map(|c| Poly::from_u32s(c)).collect(),
        )
        .unwrap()
    }

    fn primes(m: &DrinfeldModule, maxdeg: usize) -> Vec<PrimeIdeal> {
        m.ring().primes_up_to(maxdeg, &[PrimeIdeal::t()]).collect()
    }

    #[test]
    fn small_example_matrix() {
        let m = module(2, &[&[1], &[1]]);
        let l = PrimeIdeal::new(m.ring(), Poly::from_u32s(&[1, 1])).unwrap();
        let (s, basis, roots, big) = frobenius_mod_t_roots_detailed(&m, &l).unwrap();
        assert_eq!(big.size(), 8);
        assert_eq!(roots.len(), 4);
        assert_eq!(s.matrix.charpoly(m.ctx()), Poly::from_u32s(&[1, 1, 1]));
        assert_eq!(s.splitting_degree, 3);
        // in the basis (α, α²) the matrix is [[0,1],[1,1]]
        let alpha = basis[0];
        let alt = vec![alpha, big.mul(alpha, alpha)];
        let rs_check = FrobeniusSample {
            matrix: MatrixGF::from_u32(&[&[0, 1], &[1, 1]]),
            ..s.clone()
        };
        assert_eq!(verify_root_action(&m, &rs_check, &alt, &l).unwrap(), 4);
        assert_eq!(verify_root_action(&m, &s, &basis, &l).unwrap(), 4);
        let motive = frobenius_mod_t_motive(&m, &l).unwrap();
        assert_eq!(motive.char_poly, s.char_poly);
    }

    #[test]
    fn routes_agree_on_classes() {
        for (q, g) in [
            (4u64, vec![&[1u32][..], &[1, 1]]),
            (3, vec![&[2, 1], &[1, 0, 1]]),
            (5, vec![&[1], &[2, 1]]),
        ] {
            let m = module(q, &g);
            let ctx = m.ctx().clone();
            let mut compared = 0;
            for l in primes(&m, 2) {
                let Ok(mo) = frobenius_mod_t_motive(&m, &l) else {
                    continue;
                };
                match frobenius_mod_t_roots(&m, &l, None) {
                    Ok(ro) => {
                        assert_eq!(mo.char_poly, ro.char_poly, "q={q} l={l}");
                        assert_eq!(mo.matrix.minpoly(&ctx), ro.matrix.minpoly(&ctx));
                        assert_eq!(mo.splitting_degree, matrix_order(&ctx, &ro.matrix));
                        compared += 1;
                    }
                    Err(FrobeniusError::Envelope(_)) => {}
                    Err(e) => panic!("{e}"),
                }
            }
            assert!(compared >= 3, "q={q}: only {compared} primes compared");
        }
    }

    #[test]
    fn rank_three_routes_agree() {
        let m = module(3, &[&[1], &[1], &[1, 1]]);
        let mut checked = 0;
        for l in primes(&m, 1) {
            let Ok(mo) = frobenius_mod_t_motive(&m, &l) else {
                continue;
            };
            if let Ok(ro) = frobenius_mod_t_roots(&m, &l, None) {
                assert_eq!(mo.char_poly, ro.char_poly);
                checked += 1;
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn basis_choice_does_not_change_class() {
        let m = module(4, &[&[1], &[1, 1]]);
        let l = primes(&m, 1)[1].clone();
        let a = frobenius_mod_t_roots(&m, &l, None).unwrap();
        for seed in 0..5 {
            let b = frobenius_mod_t_roots(&m, &l, Some(seed)).unwrap();
            assert_eq!(a.char_poly, b.char_poly);
        }
    }

    #[test]
    fn bad_primes_rejected() {
        let m = module(4, &[&[1], &[1, 1]]);
        let l = PrimeIdeal::new(m.ring(), Poly::from_u32s(&[1, 1])).unwrap();
        assert!(matches!(frobenius_mod_t_motive(&m, &l), Err(FrobeniusError::BadReduction(_))));
        assert!(matches!(frobenius_mod_t_motive(&m, &PrimeIdeal::t()), Err(FrobeniusError::PrimeT)));
    }

    #[test]
    fn t2_routes_agree_and_reduce() {
        let m = module(4, &[&[1], &[1, 1]]);
        let ctx = m.ctx().clone();
        let mut compared = 0;
        for l in primes(&m, 2) {
            let Ok(mo) = frobenius_mod_t2_motive(&m, &l) else {
                continue;
            };
            let mod_t = frobenius_mod_t_motive(&m, &l).unwrap();
            assert_eq!(mo.matrix.a0, mod_t.matrix);
            assert!(!mo.matrix.a0.det(&ctx).is_zero());
            match frobenius_mod_t2_roots(&m, &l) {
                Ok(ro) => {
                    assert_eq!(charpoly_t2(&ctx, &ro.matrix), charpoly_t2(&ctx, &mo.matrix), "l={l}");
                    assert_eq!(
                        kernel_witness(&ctx, &ro.matrix).is_some(),
                        kernel_witness(&ctx, &mo.matrix).is_some()
                    );
                    compared += 1;
                }
                Err(FrobeniusError::Envelope(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
        assert!(compared > 0);
    }

    #[test]
    fn t2_envelope() {
        let m = module(7, &[&[1], &[1, 1]]);
        let l = primes(&m, 1)[1].clone();
        assert!(matches!(frobenius_mod_t2_motive(&m, &l), Err(FrobeniusError::Envelope(_))));
    }

    #[test]
    fn orders() {
        let c = FieldCtx::new(2, 1).unwrap();
        assert_eq!(matrix_order(&c, &MatrixGF::from_u32(&[&[0, 1], &[1, 1]])), 3);
        let c = FieldCtx::new(5, 1).unwrap();
        assert_eq!(matrix_order(&c, &MatrixGF::from_u32(&[&[1, 1], &[0, 1]])), 5);
    }
}
