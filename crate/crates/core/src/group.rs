//! Exact orders of matrix groups over F_q via an incremental Schreier–Sims
//! stabilizer chain on the nonzero vectors of F_q^n, with base e_1, …, e_n.

use std::collections::{HashSet, VecDeque};

use crate::field::FieldCtx;
use crate::matrix::{vector_index, MatrixError, MatrixGF};

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    gens: Vec<(MatrixGF, MatrixGF)>,
    /// point index → position in `reps`
    orbit: Vec<u32>,
    /// `(u, u^{-1})` with `u·e_i` the orbit point
    reps: Vec<(MatrixGF, MatrixGF)>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    ctx: FieldCtx,
    n: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(ctx: &FieldCtx, n: usize) -> Self {
        let points = (ctx.size() as usize).pow(n as u32);
        let levels = (0..n)
            .map(|i| {
                let mut orbit = vec![NONE; points];
                orbit[base_point(ctx, i)] = 0;
                Level {
                    gens: Vec::new(),
                    orbit,
                    reps: vec![(MatrixGF::identity(n), MatrixGF::identity(n))],
                }
            })
            .collect();
        StabChain {
            ctx: ctx.clone(),
            n,
            levels,
        }
    }

    pub fn from_generators(ctx: &FieldCtx, n: usize, gens: &[MatrixGF]) -> Result<Self, MatrixError> {
        let mut chain = Self::new(ctx, n);
        for g in gens {
            chain.add_generator(g)?;
        }
        Ok(chain)
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.reps.len() as u128).product()
    }

    pub fn contains(&self, g: &MatrixGF) -> bool {
        self.sift(g, 0).1 == self.n
    }

    /// Adds a generator; returns whether the group grew.
    pub fn add_generator(&mut self, g: &MatrixGF) -> Result<bool, MatrixError> {
        if g.n() != self.n {
            return Err(MatrixError::Dimension {
                expected: self.n,
                got: g.n(),
            });
        }
        if g.inverse(&self.ctx).is_none() {
            return Err(MatrixError::Singular);
        }
        let (h, j) = self.sift(g, 0);
        if j == self.n {
            return Ok(false);
        }
        self.extend(0, j, h);
        Ok(true)
    }

    fn point(&self, v: &[crate::field::FieldElement]) -> usize {
        vector_index(v, self.ctx.size())
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// where it stopped (`n` when it sifted to the identity).
    fn sift(&self, g: &MatrixGF, from: usize) -> (MatrixGF, usize) {
        let mut h = g.clone();
        for j in from..self.n {
            let b = self.point(&h.column(j));
            let k = self.levels[j].orbit[b];
            if k == NONE {
                return (h, j);
            }
            h = self.levels[j].reps[k as usize].1.mul(&self.ctx, &h);
        }
        debug_assert!(h.is_identity());
        (h, self.n)
    }

    /// Adds `s` (which fixes e_1..e_{hi}) as a strong generator on levels `lo..=hi`.
    fn extend(&mut self, lo: usize, hi: usize, s: MatrixGF) {
        for k in (lo..=hi).rev() {
            self.extend_level(k, s.clone());
        }
    }

    fn extend_level(&mut self, i: usize, s: MatrixGF) {
        let sinv = s.inverse(&self.ctx).expect("invertible");
        self.levels[i].gens.push((s, sinv));
        let new_gen = self.levels[i].gens.len() - 1;
        let mut queue: VecDeque<(usize, usize)> =
            (0..self.levels[i].reps.len()).map(|k| (k, new_gen)).collect();
        while let Some((k, gi)) = queue.pop_front() {
            let (s, sinv) = self.levels[i].gens[gi].clone();
            let (u, uinv) = self.levels[i].reps[k].clone();
            let img = s.mul(&self.ctx, &u);
            let gamma = self.point(&img.column(i));
            let pos = self.levels[i].orbit[gamma];
            if pos == NONE {
                let inv = uinv.mul(&self.ctx, &sinv);
                let lvl = &mut self.levels[i];
                lvl.orbit[gamma] = lvl.reps.len() as u32;
                lvl.reps.push((img, inv));
                let nk = lvl.reps.len() - 1;
                queue.extend((0..lvl.gens.len()).map(|g| (nk, g)));
            } else {
                let schreier = self.levels[i].reps[pos as usize].1.mul(&self.ctx, &img);
                let (r, j) = self.sift(&schreier, i + 1);
                if j < self.n {
                    self.extend(i + 1, j, r);
                }
            }
        }
    }
}

/// Index of `e_i`.
fn base_point(ctx: &FieldCtx, i: usize) -> usize {
    (ctx.size() as usize).pow(i as u32)
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)`.
pub fn gl_order(q: u64, n: usize) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// Exact order of the group generated by `gens`.
pub fn group_order(ctx: &FieldCtx, gens: &[MatrixGF]) -> Result<u128, MatrixError> {
    let Some(first) = gens.first() else {
        return Ok(1);
    };
    Ok(StabChain::from_generators(ctx, first.n(), gens)?.order())
}

/// Breadth-first closure; only for cross-checking on tiny groups.
pub fn closure_order(ctx: &FieldCtx, gens: &[MatrixGF], limit: usize) -> Option<usize> {
    let Some(first) = gens.first() else {
        return Some(1);
    };
    let id = MatrixGF::identity(first.n());
    let mut seen: HashSet<MatrixGF> = HashSet::from([id.clone()]);
    let mut queue = vec![id];
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = x.mul(ctx, g);
            if seen.insert(y.clone()) {
                if seen.len() > limit {
                    return None;
                }
                queue.push(y);
            }
        }
    }
    Some(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldElement;
    use proptest::prelude::*;

    #[test]
    fn gl2_f2() {
        let c = FieldCtx::new(2, 1).unwrap();
        let gens = [
            MatrixGF::from_u32(&[&[1, 1], &[0, 1]]),
            MatrixGF::from_u32(&[&[0, 1], &[1, 0]]),
        ];
        assert_eq!(group_order(&c, &gens).unwrap(), 6);
        assert_eq!(group_order(&c, &[]).unwrap(), 1);
        assert_eq!(gl_order(2, 2), 6);
    }

    #[test]
    fn orders_of_gl_and_sl() {
        assert_eq!(gl_order(4, 2), 180);
        assert_eq!(gl_order(11, 3), 2_124_276_000);
        let c = FieldCtx::new(11, 1).unwrap();
        // elementary transvections generate SL_3; add a determinant generator
        let mut gens = Vec::new();
        for (i, j) in [(0, 1), (1, 0), (1, 2), (2, 1)] {
            let mut m = MatrixGF::identity(3);
            m.set(i, j, FieldElement::ONE);
            gens.push(m);
        }
        let sl = group_order(&c, &gens).unwrap();
        assert_eq!(sl, gl_order(11, 3) / 10);
        let mut d = MatrixGF::identity(3);
        d.set(0, 0, FieldElement(2)); // 2 generates GF(11)^×
        gens.push(d);
        assert_eq!(group_order(&c, &gens).unwrap(), gl_order(11, 3));
    }

    #[test]
    fn singular_rejected() {
        let c = FieldCtx::new(3, 1).unwrap();
        let s = MatrixGF::from_u32(&[&[1, 1], &[1, 1]]);
        assert_eq!(group_order(&c, &[s]), Err(MatrixError::Singular));
    }

    fn invertible(q: u32) -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0..q, 4).prop_filter("invertible", move |v| {
            let c = FieldCtx::new(q as u64, 1).unwrap();
            !MatrixGF::from_u32(&[&v[0..2], &v[2..4]]).det(&c).is_zero()
        })
    }

    proptest! {
        #[test]
        fn chain_matches_closure_gf2(a in invertible(2), b in invertible(2)) {
            let c = FieldCtx::new(2, 1).unwrap();
            let gens = [MatrixGF::from_u32(&[&a[0..2], &a[2..4]]), MatrixGF::from_u32(&[&b[0..2], &b[2..4]])];
            let want = closure_order(&c, &gens, 100).unwrap() as u128;
            prop_assert_eq!(group_order(&c, &gens).unwrap(), want);
            prop_assert_eq!(gl_order(2, 2) % want, 0);
        }

        #[test]
        fn chain_matches_closure_gf3(a in invertible(3), b in invertible(3)) {
            let c = FieldCtx::new(3, 1).unwrap();
            let gens = [MatrixGF::from_u32(&[&a[0..2], &a[2..4]]), MatrixGF::from_u32(&[&b[0..2], &b[2..4]])];
            let want = closure_order(&c, &gens, 100).unwrap() as u128;
            let chain = StabChain::from_generators(&c, 2, &gens).unwrap();
            prop_assert_eq!(chain.order(), want);
            prop_assert_eq!(gl_order(3, 2) % want, 0);
            for g in &gens {
                prop_assert!(chain.contains(g));
            }
        }
    }
}
