//! One function per subcommand, each producing a report.

use serde_json::{json, Map, Value};
use supclass_core::chars::{chars_battery, decomposition_report, CharContext};
use supclass_core::groupring::{class_sum, convolve, decompose_support};
use supclass_core::idempotents::{
    central_character_table, displayed_character_table, fusion_constants, matrix_unit, pi,
    projector_trace, SubalgebraKind,
};
use supclass_core::oracle::{
    idempotent_battery, run_full_suite, verify_theorem1, Corruption, SuiteConfig,
    DEFAULT_SCHEME_MAX_Q,
};
use supclass_core::rational::{parse, to_text};
use supclass_core::report::approx;
use supclass_core::schemes::{
    beta_system, build_scheme, compare_displayed, verify_axioms, verify_beta_on_matrices,
    SchemeVariant,
};
use supclass_core::scring::{sc_mul, structure_table, Constants};
use supclass_core::sl2::{class_sizes, Gl2Classes};
use supclass_core::{
    Check, Checks, Error, GaloisField, GroupKind, MatrixGroup, Rational, Report, SupportClass,
    SupportVector,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                Error::Config(_)
                | Error::NotPrimePower(_)
                | Error::UnsupportedField { .. }
                | Error::InvalidSpec(_)
                | Error::EvenCharacteristic(_),
            ) => 2,
            CliError::Core(_) => 1,
        }
    }
}

type Out = Result<Report, CliError>;

fn max_q() -> Result<u32, CliError> {
    Ok(SuiteConfig::from_env(vec![], 0)?.max_q)
}

/// Rejects non-prime-powers and q <= 2; `cap` bounds brute-force work.
fn check_q(q: u32, cap: Option<u32>) -> Result<(), CliError> {
    GaloisField::new(q as u64)?;
    if q <= 2 {
        return Err(CliError::Usage(format!(
            "q = {q}: the support-class ring needs q > 2"
        )));
    }
    if let Some(cap) = cap {
        if q > cap {
            return Err(CliError::Usage(format!(
                "q = {q} exceeds the cap {cap} (raise SC_MAX_Q)"
            )));
        }
    }
    Ok(())
}

fn report(command: &str, q: u32, results: Value, checks: Checks, seed: u64) -> Report {
    Report {
        command: command.into(),
        q,
        results,
        checks: checks.0,
        seed,
        version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Integers as numbers, other rationals as "p/q" strings.
fn rational_json(x: &Rational) -> Value {
    if x.is_integer() {
        json!(*x.numer() as i64)
    } else {
        json!(to_text(x))
    }
}

fn vector_json<T>(v: &SupportVector<T>, f: impl Fn(&T) -> Option<Value>) -> Value {
    Value::Object(
        v.iter()
            .filter_map(|(c, x)| f(x).map(|j| (c.label().to_string(), j)))
            .collect(),
    )
}

fn nonzero_int(v: &SupportVector<i64>) -> Value {
    vector_json(v, |&x| (x != 0).then(|| json!(x)))
}

fn nonzero_rational(v: &SupportVector<Rational>) -> Value {
    vector_json(v, |x| {
        (*x != Rational::from_integer(0)).then(|| rational_json(x))
    })
}

/// Parses `X` or a comma list of `[k*]X` terms into a support vector.
fn parse_vector(s: &str) -> Result<SupportVector<Rational>, CliError> {
    let mut v = SupportVector([Rational::from_integer(0); 7]);
    for term in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, label) = match term.rsplit_once('*') {
            Some((k, l)) => (
                parse(k).ok_or_else(|| CliError::Usage(format!("bad coefficient {k:?}")))?,
                l,
            ),
            None => match term.strip_prefix('-') {
                Some(l) => (Rational::from_integer(-1), l),
                None => (Rational::from_integer(1), term),
            },
        };
        let c = SupportClass::parse(label.trim()).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown support class {label:?} (use A, B, C, D+, D-, E+, E-)"
            ))
        })?;
        v.0[c.index()] += k;
    }
    Ok(v)
}

pub fn classes(q: u32, seed: u64) -> Out {
    check_q(q, Some(max_q()?))?;
    let sizes = class_sizes(q)?;
    let sl2 = MatrixGroup::new(GroupKind::Sl2, q)?;
    let mut checks = Checks::new();
    for (c, &n) in &sizes {
        checks.expect_eq(
            format!("|{c}| by enumeration"),
            n as usize,
            sl2.class_members(*c).len(),
        );
    }
    checks.expect_eq(
        "sizes sum to |SL2|",
        sl2.order() as u64,
        sizes.values().sum::<u64>(),
    );
    let gl2 = Gl2Classes::new(sl2.field());
    let mut types = Map::new();
    for (t, (count, size)) in gl2.counts_by_type() {
        checks.expect_eq(
            format!("GL2 type {t}: count and size"),
            (
                t.expected_count_and_size(q).0,
                Some(t.expected_count_and_size(q).1),
            ),
            (count, size),
        );
        types.insert(t.label().into(), json!({"count": count, "size": size}));
    }
    let results = json!({
        "sl2_order": sl2.order(),
        "support_class_sizes": Value::Object(sizes.iter().map(|(c, n)| (c.label().to_string(), json!(n))).collect()),
        "gl2_class_types": types,
    });
    Ok(report("classes", q, results, checks, seed))
}

pub fn mul(q: u32, x: &str, y: &str, seed: u64) -> Out {
    check_q(q, None)?;
    let (u, v) = (parse_vector(x)?, parse_vector(y)?);
    let product = sc_mul(&u, &v, q)?;
    let mut checks = Checks::new();
    let single = |w: &SupportVector<Rational>| {
        let nz: Vec<_> = w
            .iter()
            .filter(|(_, k)| **k != Rational::from_integer(0))
            .collect();
        (nz.len() == 1 && *nz[0].1 == Rational::from_integer(1)).then_some(nz[0].0)
    };
    // brute-force cross-check for single classes within the cap
    if let (Some(a), Some(b)) = (single(&u), single(&v)) {
        if q <= max_q()? {
            let g = MatrixGroup::new(GroupKind::Sl2, q)?;
            match convolve(&class_sum(&g, a)?, &class_sum(&g, b)?)
                .and_then(|p| decompose_support(&p))
            {
                Ok(brute) => {
                    checks.expect_eq("group-ring product agrees", brute.to_rational(), product)
                }
                Err(e) => checks.push(Check::fail(
                    "group-ring product agrees",
                    json!(e.to_string()),
                )),
            }
        }
    }
    Ok(report("mul", q, nonzero_rational(&product), checks, seed))
}

pub fn table(q: u32, seed: u64) -> Out {
    check_q(q, None)?;
    let consts = Constants::at(q)?;
    let st = structure_table();
    let mut values = Map::new();
    let mut polys = Map::new();
    for x in SupportClass::ALL {
        for y in SupportClass::ALL {
            let key = format!("{x}*{y}");
            values.insert(key.clone(), nonzero_int(&consts.product(x, y)));
            polys.insert(
                key,
                vector_json(st.entry(x, y), |p| {
                    (!p.is_zero()).then(|| json!(p.to_string()))
                }),
            );
        }
    }
    let mut checks = Checks::new();
    if q <= max_q()? {
        checks.extend_prefixed("group ring: ", verify_theorem1(q)?);
    }
    Ok(report(
        "table",
        q,
        json!({"constants": values, "polynomials": polys}),
        checks,
        seed,
    ))
}

pub fn idempotents(q: u32, seed: u64) -> Out {
    check_q(q, None)?;
    let mut pis = Map::new();
    let mut traces = Map::new();
    for i in 1..=4u8 {
        pis.insert(format!("pi{i}"), nonzero_rational(&pi(i, q)?));
        traces.insert(format!("pi{i}"), rational_json(&projector_trace(i, q)?));
    }
    let mut units = Map::new();
    for i in 1..=2u8 {
        for j in 1..=2u8 {
            units.insert(format!("M{i}{j}"), nonzero_rational(&matrix_unit(i, j, q)?));
        }
    }
    let mut tables = Map::new();
    for kind in [
        SubalgebraKind::Rank5,
        SubalgebraKind::Rank4,
        SubalgebraKind::Rank3,
    ] {
        tables.insert(
            format!("{kind:?}").to_lowercase(),
            json!(displayed_character_table(kind, q)?),
        );
    }
    let results = json!({
        "pi": pis,
        "matrix_units": units,
        "traces": traces,
        "central_characters": central_character_table(q)?,
        "subalgebra_character_tables": tables,
    });
    Ok(report(
        "idempotents",
        q,
        results,
        idempotent_battery(q)?,
        seed,
    ))
}

pub fn scheme(q: u32, variant: &str, seed: u64) -> Out {
    check_q(q, Some(DEFAULT_SCHEME_MAX_Q.min(max_q()?)))?;
    let v = SchemeVariant::parse(variant).ok_or_else(|| {
        CliError::Usage(format!(
            "unknown variant {variant:?} (use d5, merged45, merged12_45, tilde)"
        ))
    })?;
    let s = build_scheme(q, v)?;
    let st = verify_axioms(&s);
    let mut checks = st.axioms.clone();
    checks.extend(compare_displayed(&st, v, q));
    let mut consts = Map::new();
    for (i, row) in st.p.iter().enumerate() {
        for (j, p) in row.iter().enumerate() {
            let val = match p {
                Ok(c) => json!(c),
                Err(w) => json!({"not_closed": w}),
            };
            consts.insert(format!("{}*{}", st.labels[i], st.labels[j]), val);
        }
    }
    let mut results = json!({
        "variant": v.name(),
        "n": s.n(),
        "classes": s.classes.iter().map(|c| json!({"label": c.label, "valency": c.valency()})).collect::<Vec<_>>(),
        "constants": consts,
    });
    if v == SchemeVariant::Tilde {
        let beta = beta_system(q)?;
        results["beta"] = json!(beta
            .members
            .iter()
            .zip(&beta.table)
            .map(|((name, _), (dim, eig))| json!({"name": name, "dim": rational_json(dim), "eigenvalues": eig}))
            .collect::<Vec<_>>());
        checks.extend_prefixed("beta: ", beta.verify());
        checks.extend_prefixed("beta on matrices: ", verify_beta_on_matrices(&s, &beta));
    }
    Ok(report("scheme", q, results, checks, seed))
}

pub fn chars(q: u32, seed: u64) -> Out {
    check_q(q, Some(max_q()?))?;
    let ctx = CharContext::new(q)?;
    let mut fx = Map::new();
    for x in SupportClass::ALL {
        let p = ctx.fx_profile(x)?;
        fx.insert(
            format!("F{x}"),
            Value::Object(
                p.iter()
                    .map(|(t, v)| (t.label().to_string(), json!(v)))
                    .collect(),
            ),
        );
    }
    let mut pit = Map::new();
    for i in 1..=4u8 {
        let p = ctx.class_profile_coefficients(i)?;
        pit.insert(
            format!("pi~{i}"),
            Value::Object(
                p.iter()
                    .map(|(t, v)| (t.label().to_string(), json!(to_text(v))))
                    .collect(),
            ),
        );
    }
    let (dec, _) = decomposition_report(&ctx)?;
    let results = json!({
        "fx_profiles": fx,
        "pi_tilde_class_sums": pit,
        "involved": serde_json::to_value(&dec.involved).expect("serializable"),
        "family_totals": serde_json::to_value(&dec.family_totals).expect("serializable"),
    });
    Ok(report("chars", q, results, chars_battery(&ctx)?, seed))
}

pub fn fusion(q: u32, seed: u64) -> Out {
    check_q(q, None)?;
    let t = fusion_constants(q)?;
    let names = ["I", "C", "F"];
    let mut n = Map::new();
    let mut sq = Map::new();
    for x in 0..3 {
        for y in 0..3 {
            for z in 0..3 {
                let key = format!("{}{}{}", names[x], names[y], names[z]);
                n.insert(key.clone(), approx(t.n[x][y][z]));
                sq.insert(key, json!(to_text(&t.signed_squares[x][y][z])));
            }
        }
    }
    let results = json!({"n_approx": n, "n_signed_squares": sq});
    Ok(report("fusion", q, results, t.verify()?, seed))
}

pub fn verify(qs: &[u32], all: bool, corrupt: Option<Corruption>, seed: u64) -> Out {
    let mut cfg = SuiteConfig::from_env(qs.to_vec(), seed)?;
    cfg.full = all;
    cfg.corrupt = corrupt;
    let r = run_full_suite(&cfg)?;
    let failed = r.checks.failures().count();
    let results = json!({
        "qs": r.qs,
        "scope": if all { "all" } else { "oracle" },
        "corrupt": corrupt,
        "passed": r.checks.len() - failed,
        "failed": failed,
        "max_q": cfg.max_q,
    });
    Ok(report("verify", r.qs[0], results, r.checks, seed))
}
