//! Drinfeld modules `φ_T = T + g_1 τ + … + g_r τ^r` over A = F_q[T]:
//! the map a ↦ φ_a, torsion polynomials, reduction and Newton polygons.

use std::sync::Arc;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{extension_field, Embedding, FieldCtx, FieldElement, FieldError};
use crate::poly::{Poly, PolyError, PolyRing, PrimeIdeal, Valuation};
use crate::rational::{self, Q};
use crate::twisted::{FieldTwist, LinearizedPoly, TwistedPoly};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrinfeldError {
    #[error("rank must be at least 1")]
    EmptyRank,
    #[error("leading coefficient g_r must be nonzero")]
    ZeroLeading,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("exponent q^{0} exceeds the 64-bit range")]
    TooLarge(u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldModule {
    ring: PolyRing,
    g: Vec<Poly>,
}

/// A/l realised as GF(q^{deg l}), with T sent to the smallest root of l.
#[derive(Clone, Debug)]
pub struct ResidueField {
    prime: PrimeIdeal,
    emb: Arc<Embedding>,
    twist: FieldTwist,
    root: FieldElement,
}

impl ResidueField {
    pub fn new(ring: &PolyRing, prime: &PrimeIdeal) -> Result<Self, DrinfeldError> {
        let emb = extension_field(ring.ctx(), prime.degree() as u32)?;
        let target = emb.target().clone();
        let lifted = Poly::new(prime.gen().coeffs().iter().map(|&c| emb.embed(c)).collect());
        let root = *PolyRing::new(target.clone())
            .roots(&lifted, 0)
            .first()
            .expect("a prime splits in its residue field");
        let twist = FieldTwist::new(target, ring.q())?;
        Ok(ResidueField {
            prime: prime.clone(),
            emb,
            twist,
            root,
        })
    }

    pub fn prime(&self) -> &PrimeIdeal {
        &self.prime
    }

    pub fn twist(&self) -> &FieldTwist {
        &self.twist
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.twist.ctx()
    }

    pub fn embedding(&self) -> &Arc<Embedding> {
        &self.emb
    }

    /// Image of T.
    pub fn root(&self) -> FieldElement {
        self.root
    }

    pub fn reduce(&self, f: &Poly) -> FieldElement {
        let ctx = self.ctx();
        f.coeffs().iter().rev().fold(FieldElement::ZERO, |acc, &c| {
            ctx.add(ctx.mul(acc, self.root), self.emb.embed(c))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReductionReport {
    pub prime: PrimeIdeal,
    pub stable_rank: usize,
    pub good: bool,
    #[serde(with = "rational::option")]
    pub height_if_good: Option<Q>,
    #[serde(with = "rational")]
    pub twist_slope: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPoint {
    pub x: u64,
    #[serde(with = "rational")]
    pub y: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Segment {
    #[serde(with = "rational")]
    pub slope: Q,
    pub horizontal_length: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonPolygon {
    pub points: Vec<NewtonPoint>,
    pub segments: Vec<Segment>,
}

impl NewtonPolygon {
    /// Lower convex hull of the given points, which must have distinct x.
    pub fn from_points(mut points: Vec<NewtonPoint>) -> Self {
        points.sort_by_key(|p| p.x);
        let mut hull: Vec<&NewtonPoint> = Vec::new();
        for p in &points {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // drop b unless it lies strictly below the chord a -> p
                let lhs = (b.y - a.y) * Q::from((p.x - a.x) as i64);
                let rhs = (p.y - a.y) * Q::from((b.x - a.x) as i64);
                if lhs >= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        let segments = hull
            .windows(2)
            .map(|w| {
                let dx = w[1].x - w[0].x;
                Segment {
                    slope: (w[1].y - w[0].y) / Q::from(dx as i64),
                    horizontal_length: dx,
                }
            })
            .collect();
        NewtonPolygon { points, segments }
    }

    /// Reduced slope denominators, one per segment.
    pub fn ramification_denominators(&self) -> Vec<i64> {
        self.segments.iter().map(|s| *s.slope.denom()).collect()
    }
}

fn checked_qpow(q: u64, i: usize) -> Result<u64, DrinfeldError> {
    q.checked_pow(i as u32)
        .filter(|&v| v <= i64::MAX as u64)
        .ok_or(DrinfeldError::TooLarge(i as u64))
}

impl DrinfeldModule {
    pub fn new(ctx: FieldCtx, g: Vec<Poly>) -> Result<Self, DrinfeldError> {
        let ring = PolyRing::new(ctx);
        let last = g.last().ok_or(DrinfeldError::EmptyRank)?;
        if last.is_zero() {
            return Err(DrinfeldError::ZeroLeading);
        }
        for c in &g {
            ring.validate(c)?;
        }
        checked_qpow(ring.q(), g.len())?;
        Ok(DrinfeldModule { ring, g })
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ring.ctx()
    }

    pub fn q(&self) -> u64 {
        self.ring.q()
    }

    pub fn rank(&self) -> usize {
        self.g.len()
    }

    pub fn g(&self) -> &[Poly] {
        &self.g
    }

    pub fn phi_t(&self) -> TwistedPoly<Poly> {
        let mut c = vec![Poly::t()];
        c.extend(self.g.iter().cloned());
        TwistedPoly::new(&self.ring, c)
    }

    /// `a(φ_T)` by Horner.
    pub fn phi_a(&self, a: &Poly) -> TwistedPoly<Poly> {
        let phi_t = self.phi_t();
        let r = &self.ring;
        a.coeffs().iter().rev().fold(TwistedPoly::zero(), |acc, &c| {
            acc.mul(r, &phi_t)
                .add(r, &TwistedPoly::constant(r, Poly::constant(c)))
        })
    }

    pub fn torsion_poly(&self, a: &Poly) -> Result<LinearizedPoly<Poly>, DrinfeldError> {
        if a.is_zero() {
            return Err(DrinfeldError::ZeroArgument);
        }
        Ok(self.phi_a(a).linearized(&self.ring))
    }

    fn valuations(&self, l: &PrimeIdeal) -> Vec<Valuation> {
        self.g.iter().map(|g| self.ring.valuation(g, l)).collect()
    }

    /// `min_i ν_l(g_i)/(q^i - 1)` and the largest index attaining it.
    pub fn twist_slope(&self, l: &PrimeIdeal) -> (Q, usize) {
        let mut best: Option<(Q, usize)> = None;
        for (i, v) in self.valuations(l).into_iter().enumerate() {
            if let Valuation::Finite(v) = v {
                let d = (self.q() as i64).pow(i as u32 + 1) - 1;
                let s = Q::new(v as i64, d);
                if best.is_none_or(|(b, _)| s <= b) {
                    best = Some((s, i + 1));
                }
            }
        }
        best.expect("g_r is nonzero")
    }

    /// Coefficients `φ̄_T = T̄ + Σ c_i τ^i` of the stable reduction at `l`:
    /// `c_i` is the residue of `g_i / l^{ν(g_i)}` when index i attains the
    /// twist slope, otherwise 0.
    pub fn reduced_phi_t(&self, res: &ResidueField) -> TwistedPoly<FieldElement> {
        let l = res.prime();
        let (slope, _) = self.twist_slope(l);
        let mut c = vec![res.root()];
        for (i, g) in self.g.iter().enumerate() {
            let v = self.ring.valuation(g, l);
            let attains = matches!(v, Valuation::Finite(v)
                if Q::new(v as i64, (self.q() as i64).pow(i as u32 + 1) - 1) == slope);
            if attains {
                let unit = self
                    .ring
                    .div_exact(g, &self.ring.pow(l.gen(), v.finite().unwrap() as u64));
                c.push(res.reduce(&unit));
            } else {
                c.push(FieldElement::ZERO);
            }
        }
        TwistedPoly::new(res.twist(), c)
    }

    /// `a(φ̄_T)` in `L{τ}`.
    pub fn reduced_phi_a(&self, res: &ResidueField, a: &Poly) -> TwistedPoly<FieldElement> {
        let phi = self.reduced_phi_t(res);
        let tw = res.twist();
        a.coeffs().iter().rev().fold(TwistedPoly::zero(), |acc, &c| {
            acc.mul(tw, &phi)
                .add(tw, &TwistedPoly::constant(tw, res.embedding().embed(c)))
        })
    }

    pub fn reduction_at(&self, l: &PrimeIdeal) -> Result<ReductionReport, DrinfeldError> {
        let (twist_slope, stable_rank) = self.twist_slope(l);
        let good = stable_rank == self.rank();
        let height_if_good = if good {
            let res = ResidueField::new(&self.ring, l)?;
            let ht = self
                .reduced_phi_a(&res, l.gen())
                .ht(res.twist())
                .expect("φ̄_l is nonzero");
            Some(Q::new(ht as i64, l.degree() as i64))
        } else {
            None
        };
        Ok(ReductionReport {
            prime: l.clone(),
            stable_rank,
            good,
            height_if_good,
            twist_slope,
        })
    }

    /// Newton polygon of `φ_a(x)/x` at `l`.
    pub fn newton_polygon(&self, a: &Poly, l: &PrimeIdeal) -> Result<NewtonPolygon, DrinfeldError> {
        if a.is_zero() {
            return Err(DrinfeldError::ZeroArgument);
        }
        let phi = self.phi_a(a);
        let mut points = Vec::new();
        for (i, c) in phi.coeffs().iter().enumerate() {
            if let Valuation::Finite(v) = self.ring.valuation(c, l) {
                let x = checked_qpow(self.q(), i)? - 1;
                points.push(NewtonPoint {
                    x,
                    y: Q::from(v as i64),
                });
            }
        }
        Ok(NewtonPolygon::from_points(points))
    }
}

/// `gcd`-reduced denominator of `num / den`.
pub fn reduced_denominator(num: i64, den: i64) -> i64 {
    den / num.gcd(&den)
}
