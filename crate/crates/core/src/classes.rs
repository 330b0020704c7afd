//! Conjugation-invariant evidence that a matrix group is all of GL_n(F_q),
//! the order-divisibility obstructions for maximal subgroups of GL_3(F_q),
//! and the full-GL verdict.
//!
//! Frobenius samples at different primes come in unrelated bases, so only
//! conjugacy-class data (characteristic and minimal polynomials, orders,
//! determinants) is trusted when deciding which maximal subgroups are ruled out.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::field::{prime_power, FieldCtx, FieldElement};
use crate::group::gl_order;
use crate::matrix::{MatrixError, MatrixGF, MatrixModT2};
use crate::poly::{Poly, PolyRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Exclusion {
    pub class: String,
    pub excluded: bool,
    /// Index of the sample that rules the class out.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCertificate {
    /// Order of the subgroup of F_q^× generated by the sampled determinants.
    pub det_image_order: u64,
    pub exclusions: Vec<Exclusion>,
    /// Every maximal class not containing SL_n is excluded.
    pub contains_sl: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Invariants {
    charpoly: Poly,
    minpoly: Poly,
    det: FieldElement,
    trace: FieldElement,
    irreducible: bool,
    semisimple: bool,
}

fn invariants(ctx: &FieldCtx, ring: &PolyRing, m: &MatrixGF) -> Invariants {
    let charpoly = m.charpoly(ctx);
    let minpoly = m.minpoly(ctx);
    let irreducible = ring.is_irreducible(&charpoly).unwrap_or(false);
    let semisimple = ring.gcd(&minpoly, &ring.derivative(&minpoly)).is_one();
    Invariants {
        det: m.det(ctx),
        trace: m.trace(ctx),
        charpoly,
        minpoly,
        irreducible,
        semisimple,
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / num_integer::gcd(a, b) * b
}

/// Sizes `q0` of the maximal proper subfields of GF(q).
fn maximal_subfields(ctx: &FieldCtx) -> Vec<u64> {
    crate::field::prime_factors(ctx.k() as u64)
        .into_iter()
        .map(|l| ctx.p().pow(ctx.k() / l as u32))
        .collect()
}

fn in_subfield(ctx: &FieldCtx, x: FieldElement, q0: u64) -> bool {
    ctx.pow(x, q0 as u128) == x
}

fn first<F: Fn(&Invariants) -> bool>(inv: &[Invariants], f: F) -> Option<usize> {
    inv.iter().position(f)
}

fn exclusion(class: &str, witness: Option<usize>) -> Exclusion {
    Exclusion {
        class: class.to_string(),
        excluded: witness.is_some(),
        witness,
        note: None,
    }
}

fn noted(class: &str, excluded: bool, note: &str) -> Exclusion {
    Exclusion {
        class: class.to_string(),
        excluded,
        witness: None,
        note: Some(note.to_string()),
    }
}

/// Builds the certificate from class representatives of elements of a group G.
pub fn class_certificate(ctx: &FieldCtx, n: usize, samples: &[MatrixGF]) -> ClassCertificate {
    let ring = PolyRing::new(ctx.clone());
    let inv: Vec<Invariants> = samples.iter().map(|m| invariants(ctx, &ring, m)).collect();
    let det_image_order = inv
        .iter()
        .filter(|i| !i.det.is_zero())
        .fold(1u64, |acc, i| lcm(acc, ctx.order(i.det)));
    let exclusions = match n {
        2 => exclusions_dim2(ctx, samples, &inv),
        3 => exclusions_dim3(ctx, &ring, &inv),
        _ => vec![noted("ALL", false, "certificate implemented for n = 2, 3 only")],
    };
    let contains_sl = exclusions.iter().all(|e| e.excluded);
    ClassCertificate {
        det_image_order,
        exclusions,
        contains_sl,
    }
}

/// Dickson: a subgroup of PGL_2(F_q), q ≥ 4, not containing PSL_2(F_q) lies in
/// a Borel subgroup, the normaliser of a split or nonsplit torus, an
/// exceptional A4/S4/A5, or PGL_2 of a proper subfield. For q ≥ 4 SL_2 is
/// perfect, so a projective image containing PSL_2 forces G ⊇ SL_2.
fn exclusions_dim2(ctx: &FieldCtx, samples: &[MatrixGF], inv: &[Invariants]) -> Vec<Exclusion> {
    let q = ctx.size();
    if q < 4 {
        return vec![noted("ALL", false, "SL_2 is not perfect for q < 4")];
    }
    let ring = PolyRing::new(ctx.clone());
    let mut out = vec![
        exclusion("C1_BOREL", first(inv, |i| i.irreducible)),
        exclusion(
            "C2_SPLIT_TORUS_NORMALIZER",
            first(inv, |i| i.irreducible && !i.trace.is_zero()),
        ),
        exclusion(
            "C3_NONSPLIT_TORUS_NORMALIZER",
            first(inv, |i| {
                !i.trace.is_zero() && ring.roots(&i.charpoly, 0).len() == 2
            }),
        ),
    ];
    // projective orders ≤ q + 1 in PGL_2(F_q)
    let orders: Vec<u64> = samples
        .iter()
        .map(|m| m.projective_order(ctx, q + 1).expect("bounded by q + 1"))
        .collect();
    let allowed: &[&[u64]] = if q == 4 {
        // PGL_2(F_4) ≅ A5, whose only exceptional proper subgroup is A4
        &[&[1, 2, 3]]
    } else {
        &[&[1, 2, 3], &[1, 2, 3, 4], &[1, 2, 3, 5]]
    };
    let exceptional = allowed
        .iter()
        .map(|set| orders.iter().position(|o| !set.contains(o)))
        .collect::<Option<Vec<usize>>>()
        .map(|w| *w.iter().max().expect("nonempty"));
    out.push(exclusion("EXCEPTIONAL_A4_S4_A5", exceptional));
    for q0 in maximal_subfields(ctx) {
        let w = first(inv, |i| {
            let t2 = ctx.mul(i.trace, i.trace);
            !i.det.is_zero() && !in_subfield(ctx, ctx.div(t2, i.det).expect("unit"), q0)
        });
        out.push(exclusion(&format!("SUBFIELD_GF{q0}"), w));
    }
    out
}

/// Aschbacher classes of GL_3(F_q); C4 and C7 are empty in prime dimension.
fn exclusions_dim3(ctx: &FieldCtx, ring: &PolyRing, inv: &[Invariants]) -> Vec<Exclusion> {
    let q = ctx.size();
    let p = ctx.p();
    let irreducible = first(inv, |i| i.irreducible);
    let unipotent_part = first(inv, |i| !i.semisimple);
    let mut out = vec![
        exclusion("C1_REDUCIBLE", irreducible),
        if p >= 5 {
            exclusion("C2_IMPRIMITIVE", unipotent_part)
        } else {
            noted("C2_IMPRIMITIVE", false, "order test needs p >= 5")
        },
        if p != 3 {
            exclusion("C3_SEMILINEAR", unipotent_part)
        } else {
            noted("C3_SEMILINEAR", false, "order test needs p != 3")
        },
        noted("C4_TENSOR", true, "empty in prime dimension"),
    ];
    for q0 in maximal_subfields(ctx) {
        let w = first(inv, |i| {
            let c = |k| i.charpoly.coeff(k);
            let (a, b, d) = (c(2), c(1), c(0));
            let a3 = ctx.pow(a, 3);
            let b3 = ctx.pow(b, 3);
            let d2 = ctx.mul(d, d);
            let ab = ctx.mul(a, b);
            let ratios = [
                ctx.div(a3, d).expect("unit"),
                ctx.div(b3, d2).expect("unit"),
                ctx.div(ab, d).expect("unit"),
            ];
            ratios.iter().any(|&x| !in_subfield(ctx, x, q0))
        });
        out.push(exclusion(&format!("C5_SUBFIELD_GF{q0}"), w));
    }
    out.push(if !(q - 1).is_multiple_of(3) {
        noted("C6_EXTRASPECIAL", true, "absent unless 3 | q - 1")
    } else if p >= 5 {
        exclusion("C6_EXTRASPECIAL", unipotent_part)
    } else {
        noted("C6_EXTRASPECIAL", false, "order test needs p >= 5")
    });
    out.push(noted("C7_TENSOR_INDUCED", true, "empty in prime dimension"));
    if let Some(q0) = integer_sqrt(q) {
        // irreducible elements of GU_3(q0)·Z have (q−1)(q0²−q0+1)-torsion eigenvalues
        let e = BigUint::from(q - 1) * BigUint::from(q0 * q0 - q0 + 1);
        let w = first(inv, |i| {
            i.irreducible && !ring.pow_mod(&Poly::t(), &e, &i.charpoly).is_one()
        });
        out.push(exclusion("C8_UNITARY", w));
    }
    if p != 2 {
        out.push(exclusion("C8_ORTHOGONAL", irreducible));
    }
    out.push(if ![2, 3, 5, 7].contains(&p) {
        exclusion("S_ALMOST_SIMPLE", unipotent_part)
    } else {
        noted("S_ALMOST_SIMPLE", false, "order test needs p not in {2,3,5,7}")
    });
    out
}

fn integer_sqrt(q: u64) -> Option<u64> {
    let r = (q as f64).sqrt().round() as u64;
    (r * r == q).then_some(r)
}

/// Integer `d`-th root when exact.
fn integer_root(q: u64, d: u32) -> Option<u64> {
    let r = (q as f64).powf(1.0 / d as f64).round() as u64;
    (r.saturating_sub(1)..=r + 1).find(|&c| c.checked_pow(d) == Some(q))
}

/// Fraction of GL_n(F_q) whose characteristic polynomial is irreducible,
/// from the regular elliptic classes: one class per irreducible monic
/// polynomial with nonzero constant term, each of size |GL_n|/(q^n − 1).
pub fn irreducible_charpoly_fraction(ctx: &FieldCtx, n: usize) -> num_rational::Ratio<u128> {
    let ring = PolyRing::new(ctx.clone());
    let q = ctx.size();
    let count = (0..(q as u128).pow(n as u32))
        .map(|idx| ring.monic_from_index(n, idx))
        .filter(|f| !f.coeff(0).is_zero() && ring.is_irreducible(f).unwrap_or(false))
        .count() as u128;
    num_rational::Ratio::new(count, (q as u128).pow(n as u32) - 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassCheck {
    pub class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q0: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<u128>,
    pub q_squared_divides: bool,
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AschbacherReport {
    pub q: u64,
    pub checks: Vec<ClassCheck>,
    pub all_obstructed: bool,
}

/// For each maximal class of GL_3(F_q), the order bound used to show that a
/// group of order divisible by q² cannot lie in it.
pub fn aschbacher_obstructions(q: u64) -> Result<AschbacherReport, MatrixError> {
    prime_power(q).ok_or_else(|| MatrixError::Gate(format!("{q} is not a prime power")))?;
    if q <= 9 || q.is_multiple_of(2) || q > 10_000 {
        return Err(MatrixError::Gate(format!(
            "q = {q} outside odd 9 < q <= 10000"
        )));
    }
    let q2 = (q as u128) * (q as u128);
    let qq = q as u128;
    let check = |class: &str, q0: Option<u64>, order: u128| ClassCheck {
        class: class.to_string(),
        q0,
        order: Some(order),
        q_squared_divides: order.is_multiple_of(q2),
        obstructed: !order.is_multiple_of(q2),
        note: None,
    };
    let structural = |class: &str| ClassCheck {
        class: class.to_string(),
        q0: None,
        order: None,
        q_squared_divides: false,
        obstructed: true,
        note: Some("excluded structurally".to_string()),
    };
    let mut checks = vec![
        structural("C1"),
        check("C2", None, (qq - 1).pow(3) * 6),
        check("C3", None, qq.pow(3) - 1),
        structural("C4"),
    ];
    for d in 2..=q.ilog2() {
        if let Some(q0) = integer_root(q, d) {
            let q0 = q0 as u128;
            checks.push(check(
                "C5",
                Some(q0 as u64),
                q0.pow(3) * (qq - 1) * (q0.pow(3) - 1) * (q0.pow(2) - 1),
            ));
        }
    }
    if prime_power(q) == Some((q, 1)) && q % 3 == 1 {
        checks.push(check("C6", None, 8 * 81));
    }
    checks.push(structural("C7"));
    if let Some(q0) = integer_sqrt(q) {
        let r = q0 as u128;
        checks.push(check(
            "C8_UNITARY",
            Some(q0),
            r.pow(3) * (r + 1) * (r * r - 1) * (r.pow(3) + 1),
        ));
    }
    checks.push(check("C8_ORTHOGONAL", None, 2 * qq * (qq * qq - 1)));
    for s in [168u128, 504, 1080, 2160, 7560] {
        checks.push(check("S", None, s));
    }
    let all_obstructed = checks.iter().all(|c| c.obstructed);
    Ok(AschbacherReport {
        q,
        checks,
        all_obstructed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ReasonStep {
    pub matrix: MatrixGF,
    pub source_prime: String,
    pub order_after: u128,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MatrixGroupEvidence {
    pub n: usize,
    pub generators: Vec<MatrixGF>,
    pub order: u128,
    /// Order of the determinant image, a divisor of q − 1.
    pub det_image: u64,
    pub irreducible: bool,
    pub contains_full_gl: bool,
    pub unipotent_witness: Option<MatrixModT2>,
    pub reason_trail: Vec<ReasonStep>,
    /// Present when generators come from independent conjugacy classes.
    pub certificate: Option<ClassCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub full: bool,
    pub reasons: Vec<String>,
}

pub fn verdict_full_gl(ev: &MatrixGroupEvidence, q: u64, n: usize) -> Verdict {
    let mut reasons = Vec::new();
    let full_order = gl_order(q, n);
    let mut full = match n {
        2 => {
            let sylow = ev.order.is_multiple_of(q as u128);
            reasons.push(format!("sylow p-part q divides order: {sylow}"));
            reasons.push(format!("irreducible: {}", ev.irreducible));
            reasons.push(format!("det image {} of {}", ev.det_image, q - 1));
            sylow && ev.irreducible && ev.det_image == q - 1
        }
        _ => {
            reasons.push(format!("order {} of {}", ev.order, full_order));
            ev.order == full_order
        }
    };
    if let Some(cert) = &ev.certificate {
        let open: Vec<&str> = cert
            .exclusions
            .iter()
            .filter(|e| !e.excluded)
            .map(|e| e.class.as_str())
            .collect();
        if open.is_empty() {
            reasons.push("class certificate: every maximal class excluded".into());
        } else {
            reasons.push(format!("class certificate: not excluded {}", open.join(",")));
        }
        let det_ok = cert.det_image_order == q - 1;
        if !det_ok {
            reasons.push(format!("class certificate: det image {} of {}", cert.det_image_order, q - 1));
        }
        full = full && cert.contains_sl && det_ok;
    }
    Verdict { full, reasons }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::group_order;

    fn ctx(q: u64) -> FieldCtx {
        let (p, k) = prime_power(q).unwrap();
        FieldCtx::new(p, k).unwrap()
    }

    #[test]
    fn aschbacher_examples() {
        let r = aschbacher_obstructions(11).unwrap();
        let c2 = r.checks.iter().find(|c| c.class == "C2").unwrap();
        assert_eq!(c2.order, Some(6000));
        assert!(c2.obstructed);
        let o = r.checks.iter().find(|c| c.class == "C8_ORTHOGONAL").unwrap();
        assert_eq!(o.order, Some(2640));
        assert!(r.all_obstructed);
        let r = aschbacher_obstructions(25).unwrap();
        let u = r.checks.iter().find(|c| c.class == "C8_UNITARY").unwrap();
        assert_eq!(u.order, Some(2_268_000));
        assert!(u.obstructed);
        assert!(aschbacher_obstructions(9).is_err());
        assert!(aschbacher_obstructions(16).is_err());
        assert!(aschbacher_obstructions(15).is_err());
        assert!(aschbacher_obstructions(10_007).is_err());
    }

    #[test]
    fn aschbacher_all_odd_q_up_to_97() {
        for q in (11..=97).step_by(2).filter(|&q| prime_power(q).is_some()) {
            assert!(aschbacher_obstructions(q).unwrap().all_obstructed, "q = {q}");
        }
    }

    #[test]
    fn subfield_classes_enumerated() {
        let r = aschbacher_obstructions(81).unwrap();
        let q0s: Vec<u64> = r.checks.iter().filter(|c| c.class == "C5").filter_map(|c| c.q0).collect();
        assert_eq!(q0s, vec![9, 3]);
        let r = aschbacher_obstructions(13).unwrap();
        assert!(r.checks.iter().any(|c| c.class == "C6"));
    }

    #[test]
    fn irreducible_fractions() {
        // q/(2(q+1)) for n = 2
        assert_eq!(irreducible_charpoly_fraction(&ctx(4), 2), num_rational::Ratio::new(2, 5));
        let f = irreducible_charpoly_fraction(&ctx(3), 2);
        // brute force over GL_2(F_3)
        let c = ctx(3);
        let ring = PolyRing::new(c.clone());
        let mut hits = 0u128;
        let mut total = 0u128;
        for v in 0..81u32 {
            let e: Vec<u32> = (0..4).map(|i| (v / 3u32.pow(i)) % 3).collect();
            let m = MatrixGF::from_u32(&[&e[0..2], &e[2..4]]);
            if m.det(&c).is_zero() {
                continue;
            }
            total += 1;
            if ring.is_irreducible(&m.charpoly(&c)).unwrap() {
                hits += 1;
            }
        }
        assert_eq!(f, num_rational::Ratio::new(hits, total));
        // (q^3 - q)/3 classes over q^3 - 1
        assert_eq!(irreducible_charpoly_fraction(&ctx(2), 3), num_rational::Ratio::new(2, 7));
    }

    fn full_gl2_gens(c: &FieldCtx) -> Vec<MatrixGF> {
        let g = c.generator();
        let mut d = MatrixGF::identity(2);
        d.set(0, 0, g);
        vec![MatrixGF::from_u32(&[&[1, 1], &[0, 1]]), MatrixGF::from_u32(&[&[0, 1], &[1, 0]]), d]
    }

    #[test]
    fn verdict_examples() {
        let c = ctx(4);
        let gens = full_gl2_gens(&c);
        let order = group_order(&c, &gens).unwrap();
        assert_eq!(order, 180);
        let mut ev = MatrixGroupEvidence {
            n: 2,
            generators: gens.clone(),
            order,
            det_image: 3,
            irreducible: crate::matrix::action_irreducible(&c, &gens).unwrap(),
            contains_full_gl: true,
            unipotent_witness: None,
            reason_trail: vec![],
            certificate: None,
        };
        assert!(verdict_full_gl(&ev, 4, 2).full);
        // Borel
        let borel = vec![MatrixGF::from_u32(&[&[1, 1], &[0, 1]]), MatrixGF::from_u32(&[&[2, 0], &[0, 1]])];
        ev.order = group_order(&c, &borel).unwrap();
        ev.irreducible = crate::matrix::action_irreducible(&c, &borel).unwrap();
        assert!(!verdict_full_gl(&ev, 4, 2).full);
        // SL_2 only
        ev.order = 60;
        ev.irreducible = true;
        ev.det_image = 1;
        assert!(!verdict_full_gl(&ev, 4, 2).full);
    }

    /// Every element of GL_2(F_q) as a sample set certifies; a nonsplit torus
    /// normaliser does not.
    #[test]
    fn certificate_dim2() {
        let c = ctx(4);
        let all: Vec<MatrixGF> = (0..256u32)
            .map(|v| {
                let e: Vec<u32> = (0..4).map(|i| (v >> (2 * i)) & 3).collect();
                MatrixGF::from_u32(&[&e[0..2], &e[2..4]])
            })
            .filter(|m| !m.det(&c).is_zero())
            .collect();
        let cert = class_certificate(&c, 2, &all);
        assert!(cert.contains_sl, "{cert:?}");
        assert_eq!(cert.det_image_order, 3);

        // F_16^× acting on F_4^2 together with the Frobenius: N(C_ns)
        let ring = PolyRing::new(c.clone());
        let irr = Poly::from_u32s(&[2, 1, 1]);
        assert!(ring.is_irreducible(&irr).unwrap());
        let s = MatrixGF::companion(&c, &irr);
        let mut torus = vec![MatrixGF::identity(2)];
        for _ in 0..14 {
            torus.push(torus.last().unwrap().mul(&c, &s));
        }
        let cert = class_certificate(&c, 2, &torus);
        assert!(!cert.contains_sl);
        let ns = cert.exclusions.iter().find(|e| e.class == "C3_NONSPLIT_TORUS_NORMALIZER").unwrap();
        assert!(!ns.excluded);
    }

    #[test]
    fn certificate_dim3() {
        let c = ctx(11);
        let ring = PolyRing::new(c.clone());
        let cubic = (0..1331u128)
            .map(|i| ring.monic_from_index(3, i))
            .find(|f| !f.coeff(2).is_zero() && ring.is_irreducible(f).unwrap())
            .unwrap();
        let comp = MatrixGF::companion(&c, &cubic);
        let mut trans = MatrixGF::identity(3);
        trans.set(0, 1, FieldElement::ONE);
        let mut d = MatrixGF::identity(3);
        d.set(0, 0, FieldElement(2));
        let cert = class_certificate(&c, 3, &[comp.clone(), trans.clone(), d.clone()]);
        assert!(cert.contains_sl, "{cert:?}");
        assert_eq!(cert.det_image_order, 10);
        // without a unipotent part, C2/C3/S stay open
        let cert = class_certificate(&c, 3, &[comp, d]);
        assert!(!cert.contains_sl);
    }
}
