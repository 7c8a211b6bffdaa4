//! Brute-force verification engine: group-ring products against the closed
//! forms, the rank-1 support ring, negative controls and the full suite.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::chars::verify_chars;
use crate::error::{Error, Result};
use crate::gf::{prime_power, FieldElem, GaloisField};
use crate::groupring::{brute_force_constants, GroupKind, MatrixGroup};
use crate::idempotents::{
    embedding_relations_check, expected_trace, fusion_constants, projector_trace,
    subalgebra_system, verify_structure, SubalgebraKind,
};
use crate::report::{Check, Checks, VerificationReport};
use crate::schemes::{
    beta_system, build_scheme, compare_displayed, corrupt_missing_pair, verify_axioms,
    verify_beta_on_matrices, SchemeVariant,
};
use crate::scring::{
    interpolate_constants, scaled_variant_check, structure_table, QPolynomial, StructureTable,
};
use crate::sl2::{enumerate_gl2, enumerate_sl2, support_of, Gl2Classes, Mat2, SupportClass};

/// Default cap on q for group-ring work.
pub const DEFAULT_MAX_Q: u32 = 9;
/// Default cap on q for explicit scheme matrices.
pub const DEFAULT_SCHEME_MAX_Q: u32 = 7;
/// Samples per q in the seeded conjugation spot-check.
const SPOT_SAMPLES: usize = 64;

/// Deliberately broken fixtures for negative controls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Corruption {
    /// One wrong structure constant.
    Table,
    /// One missing adjacency pair in a scheme.
    Adjacency,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    pub qs: Vec<u32>,
    pub seed: u64,
    pub max_q: u32,
    pub scheme_max_q: u32,
    pub corrupt: Option<Corruption>,
    /// Every module's battery; otherwise only the group-ring oracle,
    /// interpolation, spot-checks and negative controls.
    pub full: bool,
}

impl SuiteConfig {
    /// Config with caps from `SC_MAX_Q` (the scheme cap never exceeds it).
    pub fn from_env(qs: Vec<u32>, seed: u64) -> Result<Self> {
        let max_q = match std::env::var("SC_MAX_Q") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("SC_MAX_Q={v:?} is not an integer")))?,
            Err(_) => DEFAULT_MAX_Q,
        };
        Ok(SuiteConfig {
            qs,
            seed,
            max_q,
            scheme_max_q: DEFAULT_SCHEME_MAX_Q.min(max_q),
            corrupt: None,
            full: true,
        })
    }

    pub fn validate(&self) -> Result<()> {
        if self.qs.is_empty() {
            return Err(Error::Config("no q values given".into()));
        }
        for &q in &self.qs {
            if prime_power(q as u64).is_none() {
                return Err(Error::Config(format!("q = {q} is not a prime power")));
            }
            if q <= 2 {
                return Err(Error::Config(format!(
                    "q = {q}: the support-class ring needs q > 2"
                )));
            }
            if q > self.max_q {
                return Err(Error::Config(format!(
                    "q = {q} exceeds the cap {} (raise SC_MAX_Q)",
                    self.max_q
                )));
            }
        }
        Ok(())
    }
}

/// The structure table with `B*C` on `C` off by `q - 1` (negative control).
pub fn corrupted_structure_table() -> StructureTable {
    let mut t = structure_table();
    let e = &mut t.0[SupportClass::B.index()][SupportClass::C.index()].0[SupportClass::C.index()];
    *e = e.add(&QPolynomial::linear(1));
    t
}

/// All 49 brute-force products in Z[SL2(F_q)] against the closed forms.
pub fn verify_theorem1(q: u32) -> Result<Checks> {
    verify_theorem1_against(q, &structure_table())
}

/// As [`verify_theorem1`] against an arbitrary table.
pub fn verify_theorem1_against(q: u32, table: &StructureTable) -> Result<Checks> {
    let consts = table.evaluate(q)?;
    let group = MatrixGroup::new(GroupKind::Sl2, q)?;
    let mut checks = Checks::new();
    match brute_force_constants(&group) {
        Ok(brute) => {
            for x in SupportClass::ALL {
                for y in SupportClass::ALL {
                    let got = brute[x.index()][y.index()];
                    let want = consts.product(x, y);
                    checks.expect(format!("{x}*{y}"), got == want, || {
                        json!({"pair": [x.label(), y.label()], "brute_force": got.0, "table": want.0})
                    });
                }
            }
        }
        Err(e) => checks.push(Check::fail(
            "products lie in the span of support classes",
            json!(e.to_string()),
        )),
    }
    Ok(checks)
}

type RowMat = Vec<FieldElem>;

fn code(m: &[FieldElem], q: u32) -> u64 {
    m.iter()
        .fold(0u64, |acc, x| acc * q as u64 + x.index() as u64)
}

fn matmul(a: &[FieldElem], b: &[FieldElem], n: usize, f: &GaloisField) -> RowMat {
    let mut out = vec![FieldElem::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = FieldElem::ZERO;
            for k in 0..n {
                s = f.add(s, f.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = s;
        }
    }
    out
}

fn support_mask(m: &[FieldElem]) -> u32 {
    m.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .fold(0, |acc, (i, _)| acc | 1 << i)
}

/// Rank-1 `n x n` matrices over GF(q) grouped by support `(rows, cols)`.
fn rank1_classes(n: usize, f: &GaloisField) -> BTreeMap<(u32, u32), Vec<RowMat>> {
    let q = f.q();
    let vectors: Vec<Vec<FieldElem>> = (1..(q as u64).pow(n as u32))
        .map(|mut c| {
            (0..n)
                .map(|_| {
                    let x = f
                        .elements()
                        .nth((c % q as u64) as usize)
                        .expect("digit below q");
                    c /= q as u64;
                    x
                })
                .collect()
        })
        .collect();
    let mask = |v: &[FieldElem]| {
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .fold(0u32, |a, (i, _)| a | 1 << i)
    };
    let mut seen = BTreeSet::new();
    let mut out: BTreeMap<(u32, u32), Vec<RowMat>> = BTreeMap::new();
    for u in &vectors {
        for v in &vectors {
            let m: RowMat = u
                .iter()
                .flat_map(|&a| v.iter().map(move |&b| f.mul(a, b)))
                .collect();
            if seen.insert(code(&m, q)) {
                out.entry((mask(u), mask(v))).or_default().push(m);
            }
        }
    }
    out
}

/// Closure of the rank-1 support sums under the matrix product, with the
/// zero matrix identified with 0.
pub fn rank1_support_ring_check(n: usize, q: u32) -> Result<Checks> {
    if !(1..=3).contains(&n) {
        return Err(Error::Config(format!("matrix size {n} is outside 1..=3")));
    }
    let f = GaloisField::new(q as u64)?;
    let classes = rank1_classes(n, &f);
    let class_of: HashMap<u64, (u32, u32)> = classes
        .iter()
        .flat_map(|(k, ms)| ms.iter().map(move |m| (code(m, q), *k)))
        .collect();
    let mut checks = Checks::new();
    let want = (1u64 << n) - 1;
    checks.expect_eq(
        format!("n={n}, q={q}: number of support classes"),
        want * want,
        classes.len() as u64,
    );
    let keys: Vec<&(u32, u32)> = classes.keys().collect();
    let failures: Vec<serde_json::Value> = keys
        .par_iter()
        .flat_map_iter(|k1| keys.iter().map(move |k2| (*k1, *k2)))
        .filter_map(|(k1, k2)| {
            let mut coeff: HashMap<u64, i64> = HashMap::new();
            for a in &classes[k1] {
                for b in &classes[k2] {
                    let p = matmul(a, b, n, &f);
                    if support_mask(&p) != 0 {
                        *coeff.entry(code(&p, q)).or_default() += 1;
                    }
                }
            }
            let mut per_class: BTreeMap<(u32, u32), i64> = BTreeMap::new();
            for (c, k) in &coeff {
                let Some(cls) = class_of.get(c) else {
                    return Some(json!({"pair": [k1, k2], "reason": "product is not rank 1"}));
                };
                if let Some(prev) = per_class.insert(*cls, *k) {
                    if prev != *k {
                        return Some(json!({"pair": [k1, k2], "class": cls, "coefficients": [prev, k]}));
                    }
                }
            }
            for (cls, &k) in &per_class {
                let hit = classes[cls].iter().filter(|m| coeff.contains_key(&code(m, q))).count();
                if hit != classes[cls].len() || k < 0 {
                    return Some(json!({"pair": [k1, k2], "class": cls, "covered": hit, "size": classes[cls].len()}));
                }
            }
            None
        })
        .collect();
    checks.expect(
        format!("n={n}, q={q}: products of support sums are nonnegative integer combinations"),
        failures.is_empty(),
        || json!(failures.iter().take(5).collect::<Vec<_>>()),
    );
    Ok(checks)
}

/// Outcome of the 2x2 counterexample product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub q: u32,
    pub distinct_terms: u64,
    pub coefficients: Vec<i64>,
    pub augmentation: i64,
}

/// `(F* 0; F* 0)(F* F*; 0 0)` equals `(q-1)` times the sum of all rank-1
/// matrices with four nonzero entries, which no span of invertible support
/// classes contains.
pub fn gl2_rank1_counterexample(q: u32) -> Result<(Counterexample, Checks)> {
    if q <= 2 {
        return Err(Error::Config(format!(
            "q = {q}: the counterexample needs q > 2"
        )));
    }
    let f = GaloisField::new(q as u64)?;
    let z = FieldElem::ZERO;
    let units: Vec<FieldElem> = f.units().collect();
    let left: Vec<Mat2> = units
        .iter()
        .flat_map(|&x| units.iter().map(move |&y| Mat2::new(x, z, y, z)))
        .collect();
    let right: Vec<Mat2> = units
        .iter()
        .flat_map(|&u| units.iter().map(move |&v| Mat2::new(u, v, z, z)))
        .collect();
    let mut coeff: BTreeMap<u32, i64> = BTreeMap::new();
    for a in &left {
        for b in &right {
            *coeff.entry(a.mul(b, &f).code(q)).or_default() += 1;
        }
    }
    let qm = q as i64 - 1;
    let mut full_rank1: BTreeSet<u32> = BTreeSet::new();
    for &a in &units {
        for &b in &units {
            for &c in &units {
                let d = f.mul(f.mul(b, c), f.inv(a)?);
                full_rank1.insert(Mat2::new(a, b, c, d).code(q));
            }
        }
    }
    let values: BTreeSet<i64> = coeff.values().copied().collect();
    let cx = Counterexample {
        q,
        distinct_terms: coeff.len() as u64,
        coefficients: values.iter().copied().collect(),
        augmentation: coeff.values().sum(),
    };
    let mut checks = Checks::new();
    checks.expect_eq(
        format!("q={q}: (q-1)^3 distinct rank-1 terms"),
        (qm * qm * qm) as u64,
        cx.distinct_terms,
    );
    checks.expect_eq(
        format!("q={q}: every coefficient is q-1"),
        vec![qm],
        cx.coefficients.clone(),
    );
    checks.expect(
        format!("q={q}: terms are exactly the full-support rank-1 matrices"),
        coeff.keys().copied().collect::<BTreeSet<_>>() == full_rank1,
        || json!(null),
    );
    checks.expect_eq(
        format!("q={q}: augmentation (q-1)^4"),
        qm.pow(4),
        cx.augmentation,
    );
    let singular = coeff
        .keys()
        .all(|&c| Mat2::from_code(c, q).det(&f).is_zero());
    let invertible_full = enumerate_gl2(&f).iter().any(|g| {
        [g.a, g.b, g.c, g.d].iter().all(|x| !x.is_zero()) && !coeff.contains_key(&g.code(q))
    });
    checks.expect(
        format!("q={q}: product is not constant on the full-support class of 2x2 matrices"),
        singular && invertible_full,
        || json!({"all_singular": singular, "invertible_full_support_missing": invertible_full}),
    );
    Ok((cx, checks))
}

/// Seeded spot-checks: GL2 conjugation preserves class types, and
/// conjugation by `(0 1; -1 0)` acts on supports as `σ∘τ`.
pub fn conjugation_spot_check(q: u32, seed: u64) -> Result<Checks> {
    let f = GaloisField::new(q as u64)?;
    let classes = Gl2Classes::new(&f);
    let gl2 = enumerate_gl2(&f);
    let sl2 = enumerate_sl2(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ q as u64);
    let one = FieldElem::ONE;
    let w = Mat2::new(FieldElem::ZERO, one, f.neg(one), FieldElem::ZERO);
    let w_inv = w.inverse(&f)?;
    let mut bad_class = Vec::new();
    let mut bad_support = Vec::new();
    for _ in 0..SPOT_SAMPLES {
        let g = gl2[rng.random_range(0..gl2.len())];
        let x = sl2[rng.random_range(0..sl2.len())];
        let y = g.mul(&x, &f).mul(&g.inverse(&f)?, &f);
        if classes.class_of(&y) != classes.class_of(&x) {
            bad_class.push(json!([g.code(q), x.code(q)]));
        }
        let s = w.mul(&x, &f).mul(&w_inv, &f);
        if support_of(&s)? != support_of(&x)?.sigma_tau() {
            bad_support.push(json!(x.code(q)));
        }
    }
    let mut checks = Checks::new();
    checks.expect(
        format!("q={q}: conjugation preserves GL2 class"),
        bad_class.is_empty(),
        || json!(bad_class),
    );
    checks.expect(
        format!("q={q}: conjugation by w acts as sigma-tau on supports"),
        bad_support.is_empty(),
        || json!(bad_support),
    );
    Ok(checks)
}

/// Least prime not dividing `2(q^2-1)`.
fn coprime_modulus(q: u32) -> u64 {
    let bound = 2 * (q as u64 * q as u64 - 1);
    (3u64..)
        .find(|&r| (2..r).all(|d| r % d != 0) && bound % r != 0)
        .expect("primes are unbounded")
}

/// Axioms, closed forms and the β table for all four scheme variants.
pub fn scheme_battery(q: u32) -> Result<Checks> {
    let mut checks = Checks::new();
    for v in [
        SchemeVariant::D5,
        SchemeVariant::Merged45,
        SchemeVariant::Merged1245,
        SchemeVariant::Tilde,
    ] {
        let scheme = build_scheme(q, v)?;
        let st = verify_axioms(&scheme);
        checks.extend_prefixed(&format!("{}: ", v.name()), st.axioms.clone());
        checks.extend_prefixed(&format!("{}: ", v.name()), compare_displayed(&st, v, q));
        if v == SchemeVariant::Tilde {
            let beta = beta_system(q)?;
            checks.extend_prefixed("beta: ", beta.verify());
            checks.extend_prefixed(
                "beta on matrices: ",
                verify_beta_on_matrices(&scheme, &beta),
            );
        }
    }
    Ok(checks)
}

/// Idempotents, traces, the mod-r embedding, subalgebras and fusion.
pub fn idempotent_battery(q: u32) -> Result<Checks> {
    let mut checks = verify_structure(q)?;
    let traces: Vec<_> = (1..=4)
        .map(|i| projector_trace(i, q))
        .collect::<Result<_>>()?;
    let want: Vec<_> = (1..=4).map(|i| expected_trace(i, q)).collect();
    checks.expect_eq("projector traces", want, traces);
    checks.extend_prefixed("mod r: ", embedding_relations_check(q, coprime_modulus(q))?);
    for kind in [
        SubalgebraKind::Rank5,
        SubalgebraKind::Rank4,
        SubalgebraKind::Rank3,
    ] {
        checks.extend_prefixed(
            &format!("{kind:?}: "),
            subalgebra_system(kind, q)?.verify()?,
        );
    }
    checks.extend_prefixed("fusion: ", fusion_constants(q)?.verify()?);
    Ok(checks)
}

/// Variant groups whose constants are scaled SL2 constants.
pub fn variant_battery(q: u32) -> Result<Checks> {
    let mut kinds = Vec::new();
    if q % 2 == 1 {
        kinds.push(GroupKind::Psl2);
        kinds.push(GroupKind::DetSubgroup(2));
    }
    if q <= 5 {
        kinds.push(GroupKind::Gl2);
    }
    let mut checks = Checks::new();
    for kind in kinds {
        let name = format!("{kind} constants scale by the index factor");
        match scaled_variant_check(q, kind) {
            Ok(r) => checks.push(Check {
                witness: json!({"factor": crate::rational::to_text(&r.factor)}),
                ..Check::pass(name)
            }),
            Err(e) => checks.push(Check::fail(name, json!(e.to_string()))),
        }
    }
    Ok(checks)
}

type Job = (String, Box<dyn Fn() -> Result<Checks> + Send + Sync>);

/// Every verification battery over the configured q values.
pub fn run_full_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    cfg.validate()?;
    let start = Instant::now();
    let mut qs = cfg.qs.clone();
    qs.sort_unstable();
    qs.dedup();
    let mut jobs: Vec<Job> = Vec::new();
    for &q in &qs {
        jobs.push((
            format!("q={q} theorem1: "),
            Box::new(move || verify_theorem1(q)),
        ));
        let seed = cfg.seed;
        jobs.push((
            format!("q={q} spot: "),
            Box::new(move || conjugation_spot_check(q, seed)),
        ));
        if !cfg.full {
            continue;
        }
        jobs.push((
            format!("q={q} idempotents: "),
            Box::new(move || idempotent_battery(q)),
        ));
        jobs.push((format!("q={q} chars: "), Box::new(move || verify_chars(q))));
        jobs.push((
            format!("q={q} variants: "),
            Box::new(move || variant_battery(q)),
        ));
        if q >= 4 && q <= cfg.scheme_max_q {
            jobs.push((
                format!("q={q} schemes: "),
                Box::new(move || scheme_battery(q)),
            ));
        }
        if q <= 5 {
            jobs.push((
                format!("q={q} counterexample: "),
                Box::new(move || gl2_rank1_counterexample(q).map(|r| r.1)),
            ));
        }
    }
    jobs.push((
        "interpolation: ".into(),
        Box::new(|| {
            let mut c = Checks::new();
            match interpolate_constants(&[3, 4, 5]) {
                Ok(t) => c.expect_eq(
                    "refit from q=3,4,5 reproduces the table",
                    structure_table(),
                    t,
                ),
                Err(e) => c.push(Check::fail(
                    "refit from q=3,4,5 reproduces the table",
                    json!(e.to_string()),
                )),
            }
            Ok(c)
        }),
    ));
    for (n, q) in [(2, 2), (2, 3), (3, 2)].into_iter().filter(|_| cfg.full) {
        jobs.push((
            "rank1: ".into(),
            Box::new(move || rank1_support_ring_check(n, q)),
        ));
    }
    let first = qs[0];
    match cfg.corrupt {
        Some(Corruption::Table) => jobs.push((
            "corrupt table: ".into(),
            Box::new(move || verify_theorem1_against(first, &corrupted_structure_table())),
        )),
        Some(Corruption::Adjacency) => {
            let q = qs
                .iter()
                .copied()
                .find(|&q| q >= 4)
                .unwrap_or(4)
                .min(cfg.scheme_max_q.max(4));
            jobs.push((
                "corrupt adjacency: ".into(),
                Box::new(move || {
                    let mut s = build_scheme(q, SchemeVariant::D5)?;
                    corrupt_missing_pair(&mut s);
                    Ok(verify_axioms(&s).axioms)
                }),
            ))
        }
        None => {}
    }
    let results: Vec<Checks> = jobs
        .par_iter()
        .map(|(prefix, job)| {
            let mut c = Checks::new();
            match job() {
                Ok(checks) => c.extend_prefixed(prefix, checks),
                Err(e) => c.push(Check::fail(
                    format!("{prefix}battery ran"),
                    json!(e.to_string()),
                )),
            }
            c
        })
        .collect();
    let mut checks = Checks::new();
    for c in results {
        checks.extend(c);
    }
    Ok(VerificationReport {
        qs,
        variants: ["SL2", "PSL2", "GL2", "det-subgroup"]
            .map(String::from)
            .to_vec(),
        checks,
        seed: cfg.seed,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(qs: Vec<u32>) -> SuiteConfig {
        SuiteConfig {
            qs,
            seed: 7,
            max_q: DEFAULT_MAX_Q,
            scheme_max_q: DEFAULT_SCHEME_MAX_Q,
            corrupt: None,
            full: true,
        }
    }

    #[test]
    fn theorem1_small_q() {
        for q in [3, 4, 5] {
            let c = verify_theorem1(q).unwrap();
            assert_eq!(c.len(), 49);
            assert!(c.all_passed(), "q={q}");
        }
    }

    #[test]
    fn corrupted_table_is_caught() {
        let c = verify_theorem1_against(5, &corrupted_structure_table()).unwrap();
        let fails: Vec<_> = c.failures().collect();
        assert_eq!(fails.len(), 1);
        assert_eq!(fails[0].name, "B*C");
        assert_eq!(fails[0].witness["pair"], json!(["B", "C"]));
    }

    #[test]
    fn rank1_closure() {
        for (n, q, classes) in [(2, 2, 9u64), (2, 3, 9), (3, 2, 49)] {
            let c = rank1_support_ring_check(n, q).unwrap();
            assert!(c.all_passed(), "{:?}", c.failures().collect::<Vec<_>>());
            let f = GaloisField::new(q as u64).unwrap();
            assert_eq!(rank1_classes(n, &f).len() as u64, classes);
        }
    }

    #[test]
    fn counterexample_counts() {
        let (c3, ch) = gl2_rank1_counterexample(3).unwrap();
        assert!(ch.all_passed());
        assert_eq!((c3.distinct_terms, c3.coefficients.clone()), (8, vec![2]));
        let (c4, ch) = gl2_rank1_counterexample(4).unwrap();
        assert!(ch.all_passed());
        assert_eq!(
            (c4.distinct_terms, c4.coefficients.clone(), c4.augmentation),
            (27, vec![3], 81)
        );
    }

    #[test]
    fn spot_check_is_seeded() {
        let a = conjugation_spot_check(5, 1).unwrap();
        assert!(a.all_passed());
        assert_eq!(a, conjugation_spot_check(5, 1).unwrap());
    }

    #[test]
    fn config_errors() {
        assert!(matches!(
            run_full_suite(&cfg(vec![2])),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_full_suite(&cfg(vec![6])),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_full_suite(&cfg(vec![11])),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            run_full_suite(&cfg(vec![])),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn suite_passes_and_controls_fail() {
        let r = run_full_suite(&cfg(vec![3, 4])).unwrap();
        assert!(r.passed(), "{:?}", r.checks.failures().collect::<Vec<_>>());
        assert_eq!(r.seed, 7);
        let mut bad = cfg(vec![3]);
        bad.corrupt = Some(Corruption::Table);
        let r = run_full_suite(&bad).unwrap();
        assert_eq!(
            r.checks
                .failures()
                .map(|c| c.name.as_str())
                .collect::<Vec<_>>(),
            vec!["corrupt table: B*C"]
        );
        bad.corrupt = Some(Corruption::Adjacency);
        let r = run_full_suite(&bad).unwrap();
        assert!(r
            .checks
            .failures()
            .all(|c| c.name.starts_with("corrupt adjacency: ")));
        assert!(!r.passed());
    }
}
