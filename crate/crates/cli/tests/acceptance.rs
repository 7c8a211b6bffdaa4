//! Acceptance criteria, one pass/fail line each.

use std::process::Command;
use std::time::Instant;

use supclass_core::chars::verify_chars;
use supclass_core::idempotents::{
    expected_trace, fusion_constants, projector_trace, subalgebra_system, verify_structure,
    SubalgebraKind,
};
use supclass_core::oracle::{
    gl2_rank1_counterexample, rank1_support_ring_check, scheme_battery, verify_theorem1,
};
use supclass_core::rational::{int, rat};
use supclass_core::schemes::beta_system;
use supclass_core::scring::{interpolate_constants, scaled_variant_check, structure_table};
use supclass_core::{Checks, GroupKind, Rational, Report};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn all_pass(label: &str, c: Checks) -> Result<usize, String> {
    match c.failures().next() {
        None => Ok(c.len()),
        Some(f) => Err(format!("{label}: {} failed ({})", f.name, f.witness)),
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn c1() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for q in [3, 4, 5, 7, 8, 9] {
        n += all_pass(&format!("q={q}"), verify_theorem1(q).map_err(err)?)?;
    }
    let secs = start.elapsed().as_secs_f64();
    if n != 294 || secs >= 60.0 {
        return Err(format!("{n} identities in {secs:.1}s"));
    }
    Ok(format!("{n} identities in {secs:.2}s"))
}

fn c2() -> Outcome {
    let t = interpolate_constants(&[3, 4, 5]).map_err(err)?;
    (t == structure_table())
        .then(|| "refit from q=3,4,5 equals the table".into())
        .ok_or("refit differs".into())
}

fn c3() -> Outcome {
    let mut n = 0;
    for q in [3, 4, 5, 7, 9] {
        n += all_pass(&format!("q={q}"), verify_structure(q).map_err(err)?)?;
    }
    Ok(format!("{n} checks"))
}

fn c4() -> Outcome {
    for q in [3u32, 5, 7, 8] {
        let qq = q as i128;
        let closed = [
            int(1),
            rat((qq + 1) * (qq - 2), 2),
            rat(qq * (qq - 1), 2),
            int(2 * qq),
        ];
        let mut total = Rational::from_integer(0);
        for i in 1..=4u8 {
            let t = projector_trace(i, q).map_err(err)?;
            if t != closed[i as usize - 1] || t != expected_trace(i, q) {
                return Err(format!("q={q}: trace of pi{i} is {t}"));
            }
            total += t;
        }
        if total != int(qq * (qq + 1)) {
            return Err(format!("q={q}: traces sum to {total}"));
        }
    }
    Ok("traces (1, (q+1)(q-2)/2, q(q-1)/2, 2q) sum to q(q+1)".into())
}

fn c5() -> Outcome {
    let mut n = 0;
    for q in [3, 5, 7] {
        for kind in [
            SubalgebraKind::Rank5,
            SubalgebraKind::Rank4,
            SubalgebraKind::Rank3,
        ] {
            n += all_pass(
                &format!("q={q} {kind:?}"),
                subalgebra_system(kind, q)
                    .and_then(|s| s.verify())
                    .map_err(err)?,
            )?;
        }
        let f = fusion_constants(q).map_err(err)?;
        n += all_pass(&format!("q={q} fusion"), f.verify().map_err(err)?)?;
        if q == 3 {
            let ok = f
                .signed_squares
                .iter()
                .flatten()
                .flatten()
                .all(|s| *s == int(0) || *s == int(1));
            if !ok {
                return Err("q=3: some N^2 outside {0, 1}".into());
            }
        }
    }
    Ok(format!("{n} checks"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for q in [4, 5] {
        n += all_pass(&format!("q={q}"), scheme_battery(q).map_err(err)?)?;
    }
    let dims: Vec<Rational> = beta_system(5)
        .map_err(err)?
        .table
        .iter()
        .map(|(d, _)| *d)
        .collect();
    if dims != [int(1), int(9), int(105), int(5)] {
        return Err(format!("beta dimensions at q=5: {dims:?}"));
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 120.0 {
        return Err(format!("took {secs:.1}s"));
    }
    Ok(format!("{n} checks, dims 1+9+105+5 = 120, {secs:.2}s"))
}

fn c7() -> Outcome {
    let mut n = 0;
    for q in [3, 4, 5, 7] {
        n += all_pass(&format!("q={q}"), verify_chars(q).map_err(err)?)?;
    }
    Ok(format!("{n} checks"))
}

fn c8() -> Outcome {
    let cases = [
        (GroupKind::Psl2, 3),
        (GroupKind::Psl2, 5),
        (GroupKind::Gl2, 3),
        (GroupKind::Gl2, 4),
        (GroupKind::DetSubgroup(2), 5),
    ];
    for (kind, q) in cases {
        scaled_variant_check(q, kind).map_err(err)?;
    }
    Ok("PSL2 x1/2, GL2 x(q-1), det-subgroup x m".into())
}

fn c9() -> Outcome {
    let mut n = 0;
    for (dim, q) in [(2, 2), (2, 3), (3, 2)] {
        n += all_pass(
            &format!("n={dim} q={q}"),
            rank1_support_ring_check(dim, q).map_err(err)?,
        )?;
    }
    for q in [3, 4] {
        let (cx, checks) = gl2_rank1_counterexample(q).map_err(err)?;
        n += all_pass(&format!("q={q}"), checks)?;
        let l = q as i64 - 1;
        if cx.distinct_terms != (l * l * l) as u64 || cx.coefficients != [l] {
            return Err(format!("q={q}: {cx:?}"));
        }
    }
    Ok(format!("{n} checks"))
}

fn c10() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_supclass");
    let mut notes = Vec::new();
    for (q, fixture) in [("5", "table"), ("4", "adjacency")] {
        let out = Command::new(bin)
            .args(["verify", "--q", q, "--corrupt", fixture, "--format", "json"])
            .env_remove("SC_MAX_Q")
            .output()
            .map_err(err)?;
        if out.status.code() != Some(1) {
            return Err(format!("{fixture}: exit {:?}", out.status.code()));
        }
        let r: Report = serde_json::from_slice(&out.stdout).map_err(err)?;
        let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed()).collect();
        if failed.is_empty()
            || failed
                .iter()
                .any(|c| c.witness.is_null() || !c.name.starts_with("corrupt"))
        {
            return Err(format!(
                "{fixture}: failures {:?}",
                failed.iter().map(|c| &c.name).collect::<Vec<_>>()
            ));
        }
        notes.push(format!("{fixture} -> {}", failed[0].name));
    }
    Ok(notes.join("; "))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 oracle equivalence", c1),
        ("2 interpolation", c2),
        ("3 idempotent structure", c3),
        ("4 trace table", c4),
        ("5 subalgebra tables and fusion", c5),
        ("6 association schemes", c6),
        ("7 GL2 character suite", c7),
        ("8 variant groups", c8),
        ("9 rank-1 remark", c9),
        ("10 negative controls", c10),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
