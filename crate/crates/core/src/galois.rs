//! Accumulates Frobenius samples into evidence about the mod-T and mod-T²
//! Galois images. Sampling only ever certifies subgroups, so a negative
//! outcome is reported as "not reached within budget".

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classes::{class_certificate, verdict_full_gl, MatrixGroupEvidence, ReasonStep, Verdict};
use crate::drinfeld::DrinfeldModule;
use crate::field::FieldCtx;
use crate::frobenius::{
    frobenius_mod_t2_motive, frobenius_mod_t_motive, frobenius_mod_t_roots, kernel_witness, FrobeniusError,
    FrobeniusSample, Route, T2_MAX_Q,
};
use crate::group::{gl_order, StabChain};
use crate::matrix::{action_irreducible, MatrixModT2};
use crate::poly::{Poly, PrimeIdeal};

pub const DEFAULT_MAX_PRIMES: usize = 200;
pub const DEFAULT_MAX_DEG: usize = 3;
/// Primes sampled concurrently between early-stop checks.
const BATCH: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ImageOptions {
    pub max_primes: usize,
    pub max_deg: usize,
    pub route: Route,
    /// Search for the mod-T² witness when the module is inside its envelope.
    pub mod_t2: bool,
    pub stop_early: bool,
}

impl Default for ImageOptions {
    fn default() -> Self {
        ImageOptions {
            max_primes: DEFAULT_MAX_PRIMES,
            max_deg: DEFAULT_MAX_DEG,
            route: Route::Motive,
            mod_t2: true,
            stop_early: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub q: u64,
    pub g: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedPrime {
    pub prime: PrimeIdeal,
    pub reason: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Pass,
    NotReached,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct T2Search {
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<MatrixModT2>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness_prime: Option<PrimeIdeal>,
    pub samples_checked: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChecklistItem {
    pub hypothesis: String,
    pub status: CheckStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GaloisImageReport {
    pub module: ModuleSpec,
    pub primes_used: usize,
    pub order: u128,
    #[serde(rename = "fullGL")]
    pub full_gl: bool,
    pub det_image_index: u64,
    pub irreducible: bool,
    pub stopping_prime: Option<PrimeIdeal>,
    pub samples: Vec<FrobeniusSample>,
    pub skipped: Vec<SkippedPrime>,
    pub evidence: MatrixGroupEvidence,
    pub verdict: Verdict,
    /// "full" or "not reached within budget".
    pub label: String,
    pub t2: T2Search,
    pub checklist: Vec<ChecklistItem>,
}

struct PrimeOutcome {
    prime: PrimeIdeal,
    sample: Result<FrobeniusSample, FrobeniusError>,
    t2: Option<Result<MatrixModT2, FrobeniusError>>,
}

fn sample_prime(m: &DrinfeldModule, l: PrimeIdeal, opts: &ImageOptions, want_t2: bool) -> PrimeOutcome {
    let sample = match opts.route {
        Route::Motive => frobenius_mod_t_motive(m, &l),
        Route::Roots => frobenius_mod_t_roots(m, &l, None),
    };
    let t2 = (want_t2 && sample.is_ok()).then(|| frobenius_mod_t2_motive(m, &l).map(|s| s.matrix));
    PrimeOutcome { prime: l, sample, t2 }
}

fn det_image_order(ctx: &FieldCtx, samples: &[FrobeniusSample]) -> u64 {
    samples.iter().fold(1u64, |acc, s| {
        let o = ctx.order(s.matrix.det(ctx));
        num_integer::lcm(acc, o)
    })
}

fn t2_applicable(m: &DrinfeldModule) -> Result<(), String> {
    if m.rank() != 2 || m.q() > T2_MAX_Q {
        Err(format!(
            "skipped: mod-T² sampling envelope is rank 2 with q <= {T2_MAX_Q}; got rank {}, q = {}",
            m.rank(),
            m.q()
        ))
    } else {
        Ok(())
    }
}

/// Sweeps good primes of degree ≤ `max_deg` in canonical order.
pub fn accumulate_image(m: &DrinfeldModule, opts: &ImageOptions) -> GaloisImageReport {
    let ctx = m.ctx().clone();
    let n = m.rank();
    let q = m.q();
    let full_order = gl_order(q, n);
    let t2_gate = t2_applicable(m);
    let want_t2 = opts.mod_t2 && t2_gate.is_ok();

    let mut chain = StabChain::new(&ctx, n);
    let mut samples: Vec<FrobeniusSample> = Vec::new();
    let mut skipped = Vec::new();
    let mut trail = Vec::new();
    let mut t2 = T2Search {
        status: if want_t2 { CheckStatus::NotReached } else { CheckStatus::Skipped },
        witness: None,
        witness_prime: None,
        samples_checked: 0,
        note: match (&t2_gate, opts.mod_t2) {
            (Err(e), _) => Some(e.clone()),
            (Ok(()), false) => Some("disabled".into()),
            _ => None,
        },
    };
    let mut stopping_prime = None;

    let mut primes = m.ring().primes_up_to(opts.max_deg, &[PrimeIdeal::t()]);
    'sweep: loop {
        let batch: Vec<PrimeIdeal> = primes.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            break;
        }
        let outcomes: Vec<PrimeOutcome> = batch
            .into_par_iter()
            .map(|l| sample_prime(m, l, opts, want_t2))
            .collect();
        for out in outcomes {
            if samples.len() >= opts.max_primes {
                break 'sweep;
            }
            let s = match out.sample {
                Ok(s) => s,
                Err(e) => {
                    skipped.push(SkippedPrime {
                        prime: out.prime,
                        reason: e.to_string(),
                    });
                    continue;
                }
            };
            if chain.add_generator(&s.matrix).expect("Frobenius is invertible") {
                trail.push(ReasonStep {
                    matrix: s.matrix.clone(),
                    source_prime: s.prime.to_string(),
                    order_after: chain.order(),
                });
            }
            match out.t2 {
                Some(Ok(g)) => {
                    t2.samples_checked += 1;
                    if t2.witness.is_none() {
                        if let Some(w) = kernel_witness(&ctx, &g) {
                            t2.witness = Some(w);
                            t2.witness_prime = Some(s.prime.clone());
                            t2.status = CheckStatus::Pass;
                        }
                    }
                }
                Some(Err(e)) => t2.note = Some(e.to_string()),
                None => {}
            }
            let prime = s.prime.clone();
            samples.push(s);
            if opts.stop_early
                && chain.order() == full_order
                && (!want_t2 || t2.witness.is_some())
                && verdict_for(&ctx, n, &samples, &chain, &trail, &t2).full
            {
                stopping_prime = Some(prime);
                break 'sweep;
            }
        }
    }

    let evidence = evidence_for(&ctx, n, &samples, &chain, &trail, &t2);
    let verdict = verdict_full_gl(&evidence, q, n);
    let det_order = evidence.det_image;
    let mod_t_full = verdict.full;
    let det_full = det_order == q - 1;
    let checklist = vec![
        ChecklistItem {
            hypothesis: "mod-T image is all of GL_r(F_q)".into(),
            status: if mod_t_full { CheckStatus::Pass } else { CheckStatus::NotReached },
        },
        ChecklistItem {
            hypothesis: "determinant image is all of F_q^×".into(),
            status: if det_full { CheckStatus::Pass } else { CheckStatus::NotReached },
        },
        ChecklistItem {
            hypothesis: "mod-T² image has a non-scalar element ≡ I mod T".into(),
            status: t2.status,
        },
    ];
    GaloisImageReport {
        module: ModuleSpec {
            q,
            g: m.g().to_vec(),
        },
        primes_used: samples.len(),
        order: chain.order(),
        full_gl: chain.order() == full_order,
        det_image_index: (q - 1) / det_order,
        irreducible: evidence.irreducible,
        stopping_prime,
        samples,
        skipped,
        label: if verdict.full { "full" } else { "not reached within budget" }.into(),
        evidence,
        verdict,
        t2,
        checklist,
    }
}

fn evidence_for(
    ctx: &FieldCtx,
    n: usize,
    samples: &[FrobeniusSample],
    chain: &StabChain,
    trail: &[ReasonStep],
    t2: &T2Search,
) -> MatrixGroupEvidence {
    let generators: Vec<_> = trail.iter().map(|s| s.matrix.clone()).collect();
    let order = chain.order();
    let matrices: Vec<_> = samples.iter().map(|s| s.matrix.clone()).collect();
    MatrixGroupEvidence {
        n,
        irreducible: generators.is_empty() && n == 1
            || !generators.is_empty() && action_irreducible(ctx, &generators).unwrap_or(false),
        contains_full_gl: order == gl_order(ctx.size(), n),
        generators,
        order,
        det_image: det_image_order(ctx, samples),
        unipotent_witness: t2.witness.clone(),
        reason_trail: trail.to_vec(),
        certificate: Some(class_certificate(ctx, n, &matrices)),
    }
}

fn verdict_for(
    ctx: &FieldCtx,
    n: usize,
    samples: &[FrobeniusSample],
    chain: &StabChain,
    trail: &[ReasonStep],
    t2: &T2Search,
) -> Verdict {
    verdict_full_gl(&evidence_for(ctx, n, samples, chain, trail, t2), ctx.size(), n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::irreducible_charpoly_fraction;
    use crate::field::prime_power;
    use crate::poly::PolyRing;

    fn module(q: u64, g: &[&[u32]]) -> DrinfeldModule {
        let (p, k) = prime_power(q).unwrap();
        DrinfeldModule::new(
            FieldCtx::new(p, k).unwrap(),
            g.iter().map(|c| Poly::from_u32s(c)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_two_over_gf4_is_full() {
        let m = module(4, &[&[1], &[1, 1, 1]]);
        let rep = accumulate_image(&m, &ImageOptions::default());
        assert_eq!(rep.order, 180);
        assert!(rep.full_gl);
        assert_eq!(rep.det_image_index, 1);
        assert!(rep.irreducible);
        assert_eq!(rep.t2.status, CheckStatus::Pass);
        assert!(rep.stopping_prime.is_some());
        assert_eq!(rep.label, "full");
        assert!(rep.checklist.iter().all(|c| c.status == CheckStatus::Pass));
    }

    #[test]
    fn rational_torsion_point_blocks_fullness() {
        // g1 + g2 = -T makes x = 1 a T-torsion point over F_q(T); every
        // Frobenius fixes it, so the mod-T image sits in a vector stabilizer
        let m = module(4, &[&[1], &[1, 1]]);
        let phi = m.phi_t();
        let one = Poly::one();
        assert!(phi.eval(m.ring(), &one).is_zero());
        let rep = accumulate_image(&m, &ImageOptions::default());
        assert_eq!(rep.order, 12);
        assert!(!rep.irreducible);
        assert_eq!(rep.label, "not reached within budget");
        // the bad prime T+1 is recorded as skipped
        assert!(rep.skipped.iter().any(|s| s.prime.gen() == &Poly::from_u32s(&[1, 1])));
        let ctx = m.ctx();
        for s in &rep.samples {
            // each sample has eigenvalue 1
            let ev = s.matrix.sub(ctx, &crate::matrix::MatrixGF::identity(2)).det(ctx);
            assert!(ev.is_zero());
        }
    }

    #[test]
    fn degenerate_module_not_reached() {
        let m = module(4, &[&[0], &[1]]);
        let rep = accumulate_image(&m, &ImageOptions::default());
        assert!(!rep.verdict.full);
        assert_eq!(rep.label, "not reached within budget");
        assert!(rep.stopping_prime.is_none());
    }

    #[test]
    fn gate_skips_t2_outside_envelope() {
        let m = module(7, &[&[1], &[1, 1]]);
        let rep = accumulate_image(
            &m,
            &ImageOptions {
                max_primes: 30,
                max_deg: 2,
                ..Default::default()
            },
        );
        assert_eq!(rep.t2.status, CheckStatus::Skipped);
        assert!(rep.t2.note.as_deref().unwrap().contains("envelope"));
    }

    #[test]
    fn roots_route_gives_same_group() {
        let m = module(3, &[&[1], &[1, 1]]);
        let mut opts = ImageOptions {
            max_deg: 2,
            stop_early: false,
            mod_t2: false,
            ..Default::default()
        };
        let motive = accumulate_image(&m, &opts);
        opts.route = Route::Roots;
        let roots = accumulate_image(&m, &opts);
        let cp = |r: &GaloisImageReport| r.samples.iter().map(|s| s.char_poly.clone()).collect::<Vec<_>>();
        assert_eq!(cp(&motive), cp(&roots));
        assert_eq!(motive.det_image_index, roots.det_image_index);
    }

    #[test]
    fn chebotarev_irreducible_fraction() {
        let m = module(5, &[&[1], &[1, 1]]);
        let ring = PolyRing::new(m.ctx().clone());
        let primes: Vec<_> = ring.primes_up_to(5, &[PrimeIdeal::t()]).collect();
        assert!(primes.len() >= 200);
        let samples: Vec<_> = primes
            .into_par_iter()
            .filter_map(|l| frobenius_mod_t_motive(&m, &l).ok())
            .collect();
        assert!(samples.len() >= 200);
        let irr = samples
            .iter()
            .filter(|s| ring.is_irreducible(&s.char_poly).unwrap())
            .count() as f64
            / samples.len() as f64;
        let want = irreducible_charpoly_fraction(m.ctx(), 2);
        let want = *want.numer() as f64 / *want.denom() as f64;
        assert!((irr - want).abs() <= 0.15, "observed {irr}, expected {want}");
    }
}
