//! Counts of the coefficient families inside 𝒲^r(N): tuples `(g_1, …, g_r)`
//! with `deg g_i < N` and `g_r ≠ 0`. 𝒮^r₁ asks every `g_i` to be a T-unit;
//! 𝒮^r₂ asks for a witness prime l ≠ T with `ν_l(g_{r−1}) = 0` and
//! `p ∤ ν_l(g_r)`; 𝒮^r is their intersection.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::FieldCtx;
use crate::poly::{Poly, PolyRing, PrimeIdeal};

/// Exhaustive enumeration is allowed while `q^{rN} ≤ 2^26`.
pub const EXHAUSTIVE_ENVELOPE: u128 = 1 << 26;
pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DensityError {
    #[error("N must be at least 1")]
    ZeroN,
    #[error("rank must be at least 2")]
    Rank,
    #[error("q^(rN) = {0} exceeds the exhaustive envelope 2^26")]
    Envelope(u128),
    #[error("Monte Carlo needs at least {MIN_SAMPLES} samples")]
    TooFewSamples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityMode {
    ClosedForm,
    Exhaustive,
    MonteCarlo,
}

/// Serialises big integers and rationals as decimal strings (`"num/den"`).
pub mod bigfmt {
    use super::*;
    use serde::{de::Error, Deserializer, Serializer};

    pub fn ser_int<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn de_int<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }

    pub fn ser_opt_int<S: Serializer>(x: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn de_opt_int<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }

    pub fn ratio_string(x: &BigRational) -> String {
        format!("{}/{}", x.numer(), x.denom())
    }

    pub fn ser_ratio<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&ratio_string(x))
    }

    pub fn de_ratio<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        let (n, m) = s.split_once('/').ok_or_else(|| D::Error::custom("expected num/den"))?;
        let n = n.parse().map_err(D::Error::custom)?;
        let m = m.parse().map_err(D::Error::custom)?;
        Ok(BigRational::new(n, m))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MonteCarloEstimate {
    pub sample_size: usize,
    pub seed: u64,
    pub s1_estimate: f64,
    pub s1_stderr: f64,
    pub s_estimate: f64,
    pub s_stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DensityReport {
    pub q: u64,
    pub r: usize,
    #[serde(rename = "N")]
    pub n: u32,
    pub mode: DensityMode,
    #[serde(serialize_with = "bigfmt::ser_int", deserialize_with = "bigfmt::de_int")]
    pub w_count: BigUint,
    #[serde(serialize_with = "bigfmt::ser_int", deserialize_with = "bigfmt::de_int")]
    pub s1_count: BigUint,
    /// Exhaustive mode only.
    #[serde(serialize_with = "bigfmt::ser_opt_int", deserialize_with = "bigfmt::de_opt_int")]
    pub s_count: Option<BigUint>,
    /// Exhaustive mode only: enumerated 𝒮^r₁ count, to compare with `s1Count`.
    #[serde(serialize_with = "bigfmt::ser_opt_int", deserialize_with = "bigfmt::de_opt_int")]
    pub s1_enumerated: Option<BigUint>,
    #[serde(serialize_with = "bigfmt::ser_ratio", deserialize_with = "bigfmt::de_ratio")]
    pub ratio_s1: BigRational,
    #[serde(serialize_with = "bigfmt::ser_ratio", deserialize_with = "bigfmt::de_ratio")]
    pub limit: BigRational,
    pub monte_carlo: Option<MonteCarloEstimate>,
}

impl DensityReport {
    pub const CSV_HEADER: &'static str =
        "q,r,N,mode,wCount,s1Count,s1Enumerated,sCount,ratioS1,limit,sEstimate,sStderr,sampleSize";

    pub fn csv_row(&self) -> String {
        let opt = |x: &Option<BigUint>| x.as_ref().map(|v| v.to_string()).unwrap_or_default();
        let mode = match self.mode {
            DensityMode::ClosedForm => "closed-form",
            DensityMode::Exhaustive => "exhaustive",
            DensityMode::MonteCarlo => "monte-carlo",
        };
        let (est, se, n) = match &self.monte_carlo {
            Some(mc) => (mc.s_estimate.to_string(), mc.s_stderr.to_string(), mc.sample_size.to_string()),
            None => Default::default(),
        };
        format!(
            "{},{},{},{mode},{},{},{},{},{},{},{est},{se},{n}",
            self.q,
            self.r,
            self.n,
            self.w_count,
            self.s1_count,
            opt(&self.s1_enumerated),
            opt(&self.s_count),
            bigfmt::ratio_string(&self.ratio_s1),
            bigfmt::ratio_string(&self.limit),
        )
    }

    /// `sCount / wCount` as a float, when counted.
    pub fn s_fraction(&self) -> Option<f64> {
        let s = self.s_count.as_ref()?;
        Some(s.to_f64()? / self.w_count.to_f64()?)
    }
}

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// Closed forms only; no enumeration.
pub fn exact_counts(q: u64, r: usize, n: u32) -> Result<DensityReport, DensityError> {
    if n == 0 {
        return Err(DensityError::ZeroN);
    }
    if r < 2 {
        return Err(DensityError::Rank);
    }
    let qn: BigUint = Pow::pow(big(q), n);
    let qn1: BigUint = Pow::pow(big(q), n - 1);
    let w_count = Pow::pow(qn.clone(), (r - 1) as u32) * (&qn - 1u32);
    let s1_count = Pow::pow(&qn - &qn1, r as u32);
    let ratio_s1 = BigRational::new(s1_count.clone().into(), w_count.clone().into());
    let base = BigRational::new((q - 1).into(), q.into());
    let limit = Pow::pow(base, r as u32);
    Ok(DensityReport {
        q,
        r,
        n,
        mode: DensityMode::ClosedForm,
        w_count,
        s1_count,
        s_count: None,
        s1_enumerated: None,
        ratio_s1,
        limit,
        monte_carlo: None,
    })
}

/// Per-polynomial data used by the witness clause.
#[derive(Clone, Debug, Default)]
struct PolyData {
    t_unit: bool,
    /// prime factors other than T (indices into a global prime table), sorted
    primes: Vec<u32>,
    /// those with exponent prime to p
    witness_primes: Vec<u32>,
}

struct Table {
    data: Vec<PolyData>,
}

impl Table {
    fn build(ring: &PolyRing, n: u32) -> Table {
        let q = ring.q();
        let count = q.pow(n) as usize;
        let p = ring.ctx().p() as u32;
        let mut prime_ids: std::collections::HashMap<PrimeIdeal, u32> = Default::default();
        let facs: Vec<Option<crate::poly::Factorization>> = (0..count)
            .into_par_iter()
            .map(|i| {
                let f = Poly::decode(i as u128, q);
                (!f.is_zero()).then(|| ring.factor(&f, 0).expect("nonzero"))
            })
            .collect();
        let mut data = Vec::with_capacity(count);
        for (i, fac) in facs.into_iter().enumerate() {
            let f = Poly::decode(i as u128, q);
            let mut d = PolyData {
                t_unit: !f.is_zero() && !f.coeff(0).is_zero(),
                ..Default::default()
            };
            if let Some(fac) = fac {
                for (l, e) in fac.factors {
                    if l.is_t() {
                        continue;
                    }
                    let next = prime_ids.len() as u32;
                    let id = *prime_ids.entry(l).or_insert(next);
                    d.primes.push(id);
                    if e % p != 0 {
                        d.witness_primes.push(id);
                    }
                }
            }
            d.primes.sort_unstable();
            data.push(d);
        }
        Table { data }
    }

    /// Witness clause for `(g_{r−1}, g_r)` given as base-q indices.
    fn witness(&self, a: usize, b: usize) -> bool {
        if a == 0 {
            return false; // ν_l(0) is infinite
        }
        let pa = &self.data[a].primes;
        self.data[b]
            .witness_primes
            .iter()
            .any(|l| pa.binary_search(l).is_err())
    }
}

/// Enumerates all of 𝒲^r(N) and counts 𝒮^r₁ and 𝒮^r.
pub fn exhaustive_density(ctx: &FieldCtx, r: usize, n: u32) -> Result<DensityReport, DensityError> {
    let mut report = exact_counts(ctx.size(), r, n)?;
    let q = ctx.size();
    let total = (q as u128).checked_pow(r as u32 * n).unwrap_or(u128::MAX);
    if total > EXHAUSTIVE_ENVELOPE {
        return Err(DensityError::Envelope(total));
    }
    let ring = PolyRing::new(ctx.clone());
    let table = Table::build(&ring, n);
    let m = q.pow(n) as usize;
    let units: Vec<bool> = table.data.iter().map(|d| d.t_unit).collect();
    // the inner coordinates g_1..g_{r−2} only enter through the T-unit clause
    let inner = r - 2;
    let inner_total = m.pow(inner as u32);
    // pairs (g_{r−1}, g_r), sharded by g_r
    let (s1, s): (u64, u64) = (1..m)
        .into_par_iter()
        .map(|b| {
            let mut s1 = 0u64;
            let mut s = 0u64;
            for a in 0..m {
                let pair_unit = units[a] && units[b];
                let wit = table.witness(a, b);
                for idx in 0..inner_total {
                    let mut x = idx;
                    let mut all = pair_unit;
                    for _ in 0..inner {
                        all &= units[x % m];
                        x /= m;
                    }
                    if all {
                        s1 += 1;
                        if wit {
                            s += 1;
                        }
                    }
                }
            }
            (s1, s)
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    report.mode = DensityMode::Exhaustive;
    report.s1_enumerated = Some(big(s1));
    report.s_count = Some(big(s));
    Ok(report)
}

fn binomial(hits: usize, n: usize) -> (f64, f64) {
    let p = hits as f64 / n as f64;
    (p, (p * (1.0 - p) / n as f64).sqrt())
}

/// Uniform sampling of 𝒲^r(N) (rejecting `g_r = 0`); deterministic per seed.
pub fn monte_carlo_density(
    ctx: &FieldCtx,
    r: usize,
    n: u32,
    samples: usize,
    seed: u64,
) -> Result<DensityReport, DensityError> {
    if samples < MIN_SAMPLES {
        return Err(DensityError::TooFewSamples);
    }
    let mut report = exact_counts(ctx.size(), r, n)?;
    let q = ctx.size();
    let ring = PolyRing::new(ctx.clone());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = |nonzero: bool| loop {
        let coeffs: Vec<u32> = (0..n).map(|_| rng.gen_range(0..q as u32)).collect();
        let f = Poly::from_u32s(&coeffs);
        if !nonzero || !f.is_zero() {
            return f;
        }
    };
    let tuples: Vec<Vec<Poly>> = (0..samples)
        .map(|_| (0..r).map(|i| draw(i == r - 1)).collect())
        .collect();
    let (s1, s) = tuples
        .par_iter()
        .map(|g| {
            let unit = g.iter().all(|f| !f.is_zero() && !f.coeff(0).is_zero());
            if !unit {
                return (0usize, 0usize);
            }
            (1, usize::from(witness_direct(&ring, &g[r - 2], &g[r - 1])))
        })
        .reduce(|| (0, 0), |x, y| (x.0 + y.0, x.1 + y.1));
    let (s1_estimate, s1_stderr) = binomial(s1, samples);
    let (s_estimate, s_stderr) = binomial(s, samples);
    report.mode = DensityMode::MonteCarlo;
    report.monte_carlo = Some(MonteCarloEstimate {
        sample_size: samples,
        seed,
        s1_estimate,
        s1_stderr,
        s_estimate,
        s_stderr,
    });
    Ok(report)
}

/// Witness clause by factoring `g_r` and testing divisibility of `g_{r−1}`.
fn witness_direct(ring: &PolyRing, a: &Poly, b: &Poly) -> bool {
    if a.is_zero() {
        return false;
    }
    let p = ring.ctx().p() as u32;
    let fac = ring.factor(b, 0).expect("nonzero");
    fac.factors.iter().any(|(l, e)| {
        !l.is_t() && e % p != 0 && !ring.rem(a, l.gen()).expect("nonzero").is_zero()
    })
}

/// `ratioS1` by its closed form `(1−1/q)^r / (1−q^{−N})`.
pub fn ratio_s1_closed_form(q: u64, r: usize, n: u32) -> BigRational {
    let one = BigRational::one();
    let qq = BigRational::from_integer(q.into());
    let num = Pow::pow(&one - one.clone() / &qq, r as u32);
    let den = &one - one.clone() / Pow::pow(qq, n);
    num / den
}

/// Closed-form reports for `N = 1..=n_max`, exhaustive where the envelope allows.
pub fn density_table(ctx: &FieldCtx, r: usize, n_max: u32, mode: DensityMode) -> Result<Vec<DensityReport>, DensityError> {
    (1..=n_max)
        .map(|n| match mode {
            DensityMode::ClosedForm => exact_counts(ctx.size(), r, n),
            DensityMode::Exhaustive => exhaustive_density(ctx, r, n),
            DensityMode::MonteCarlo => unreachable!("use monte_carlo_density"),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criteria::s_r_membership;
    use crate::drinfeld::DrinfeldModule;
    use crate::field::prime_power;

    fn ctx(q: u64) -> FieldCtx {
        let (p, k) = prime_power(q).unwrap();
        FieldCtx::new(p, k).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let r = exact_counts(4, 2, 1).unwrap();
        assert_eq!(r.w_count, big(12));
        assert_eq!(r.s1_count, big(9));
        assert_eq!(bigfmt::ratio_string(&r.ratio_s1), "3/4");
        assert_eq!(bigfmt::ratio_string(&r.limit), "9/16");
        assert_eq!(bigfmt::ratio_string(&exact_counts(11, 3, 2).unwrap().limit), "1000/1331");
        assert_eq!(exact_counts(4, 2, 0), Err(DensityError::ZeroN));
        for (q, r, n) in [(2, 2, 3), (3, 3, 2), (4, 2, 5), (11, 3, 4)] {
            assert_eq!(exact_counts(q, r, n).unwrap().ratio_s1, ratio_s1_closed_form(q, r, n));
        }
    }

    #[test]
    fn small_exhaustive_examples() {
        let rep = exhaustive_density(&ctx(2), 2, 2).unwrap();
        assert_eq!(rep.s1_enumerated, Some(big(4)));
        assert_eq!(rep.s1_count, big(4));
        let rep = exhaustive_density(&ctx(4), 2, 3).unwrap();
        assert_eq!(rep.s1_enumerated.as_ref(), Some(&rep.s1_count));
        // the witness clause still bites at N = 3; the gap to 9/16 closes from N = 4
        assert_eq!(rep.s_count, Some(big(1539)));
        let frac = exhaustive_density(&ctx(4), 2, 4).unwrap().s_fraction().unwrap();
        assert!((frac - 9.0 / 16.0).abs() <= 0.08, "{frac}");
        assert!(matches!(exhaustive_density(&ctx(4), 3, 5), Err(DensityError::Envelope(_))));
    }

    /// Independent oracle: run the membership test on every tuple.
    #[test]
    fn exhaustive_matches_membership_test() {
        for (q, r, n) in [(2u64, 2usize, 3u32), (3, 2, 2), (2, 3, 2), (4, 2, 2), (4, 2, 3)] {
            let c = ctx(q);
            let m = q.pow(n) as u128;
            let mut s = 0u64;
            let mut s1 = 0u64;
            let total = m.pow(r as u32);
            for idx in 0..total {
                let mut x = idx;
                let g: Vec<Poly> = (0..r)
                    .map(|_| {
                        let f = Poly::decode(x % m, q);
                        x /= m;
                        f
                    })
                    .collect();
                if g[r - 1].is_zero() {
                    continue;
                }
                if g.iter().all(|f| !f.is_zero() && !f.coeff(0).is_zero()) {
                    s1 += 1;
                }
                let module = DrinfeldModule::new(c.clone(), g).unwrap();
                if s_r_membership(&module).unwrap().member {
                    s += 1;
                }
            }
            let rep = exhaustive_density(&c, r, n).unwrap();
            assert_eq!(rep.s_count, Some(big(s)), "q={q} r={r} N={n}");
            assert_eq!(rep.s1_enumerated, Some(big(s1)));
        }
    }

    #[test]
    fn witness_share_grows_with_n() {
        let c = ctx(4);
        let shares: Vec<f64> = (1..=5)
            .map(|n| {
                let r = exhaustive_density(&c, 2, n).unwrap();
                r.s_count.unwrap().to_f64().unwrap() / r.s1_count.to_f64().unwrap()
            })
            .collect();
        assert!(shares.windows(2).all(|w| w[0] <= w[1]), "{shares:?}");
    }

    #[test]
    fn s_never_exceeds_s1() {
        for n in 1..=3 {
            let rep = exhaustive_density(&ctx(3), 3, n).unwrap();
            assert!(rep.s_count.unwrap() <= rep.s1_count);
        }
    }

    #[test]
    fn monte_carlo_is_deterministic_and_close() {
        let c = ctx(4);
        let a = monte_carlo_density(&c, 2, 8, 20_000, 7).unwrap();
        let b = monte_carlo_density(&c, 2, 8, 20_000, 7).unwrap();
        assert_eq!(a, b);
        let mc = a.monte_carlo.unwrap();
        let exact = ratio_s1_closed_form(4, 2, 8).to_f64().unwrap();
        assert!((mc.s1_estimate - exact).abs() <= 3.0 * mc.s1_stderr, "{} vs {exact}", mc.s1_estimate);
        assert!(mc.s_estimate <= mc.s1_estimate);
        assert_eq!(monte_carlo_density(&c, 2, 8, 10, 7), Err(DensityError::TooFewSamples));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let rep = exhaustive_density(&ctx(2), 2, 3).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        let back: DensityReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rep);
        let row = rep.csv_row();
        assert_eq!(row.split(',').count(), DensityReport::CSV_HEADER.split(',').count());
        assert!(row.contains("exhaustive"));
    }
}
