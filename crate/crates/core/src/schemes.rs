//! Association schemes on SL2(F_q) built from unions of support classes.

use std::fmt;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{FiniteAlgebra, Vector};
use crate::error::{Error, Result};
use crate::groupring::{GroupKind, MatrixGroup};
use crate::rational::{int, rat, to_text, Rational};
use crate::report::Checks;
use crate::sl2::SupportClass;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SchemeVariant {
    /// `Id, A-Id, B, C, D+ + D-, E+ + E-`.
    D5,
    /// `D5` with the last two classes merged.
    Merged45,
    /// `D5` with classes 1, 2 and classes 4, 5 merged.
    #[serde(rename = "merged12_45")]
    Merged1245,
    /// Same classes as `Merged1245`, with the four-class closed forms.
    Tilde,
}

impl SchemeVariant {
    pub const ALL: [SchemeVariant; 4] = [
        SchemeVariant::D5,
        SchemeVariant::Merged45,
        SchemeVariant::Merged1245,
        SchemeVariant::Tilde,
    ];

    pub fn parse(s: &str) -> Option<Self> {
        match s.to_ascii_lowercase().as_str() {
            "d5" => Some(SchemeVariant::D5),
            "merged45" => Some(SchemeVariant::Merged45),
            "merged12_45" | "merged1245" => Some(SchemeVariant::Merged1245),
            "tilde" => Some(SchemeVariant::Tilde),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SchemeVariant::D5 => "d5",
            SchemeVariant::Merged45 => "merged45",
            SchemeVariant::Merged1245 => "merged12_45",
            SchemeVariant::Tilde => "tilde",
        }
    }

    /// Each class as a union of pieces of the `D5` partition.
    fn groups(self) -> Vec<(&'static str, Vec<usize>)> {
        match self {
            SchemeVariant::D5 => vec![
                ("C0", vec![0]),
                ("C1", vec![1]),
                ("C2", vec![2]),
                ("C3", vec![3]),
                ("C4", vec![4]),
                ("C5", vec![5]),
            ],
            SchemeVariant::Merged45 => {
                vec![
                    ("C0", vec![0]),
                    ("C1", vec![1]),
                    ("C2", vec![2]),
                    ("C3", vec![3]),
                    ("C4+C5", vec![4, 5]),
                ]
            }
            SchemeVariant::Merged1245 | SchemeVariant::Tilde => {
                vec![
                    ("C0", vec![0]),
                    ("C1+C2", vec![1, 2]),
                    ("C3", vec![3]),
                    ("C4+C5", vec![4, 5]),
                ]
            }
        }
    }
}

impl fmt::Display for SchemeVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Index of the `D5` class containing a group element.
fn d5_piece(group: &MatrixGroup, g: u32) -> usize {
    use SupportClass::*;
    let m = group.element(g);
    match crate::sl2::support_of(m).expect("unimodular matrices have a valid support") {
        A if *m == crate::sl2::Mat2::identity() => 0,
        A => 1,
        B => 2,
        C => 3,
        DPlus | DMinus => 4,
        EPlus | EMinus => 5,
    }
}

/// A 0/1 matrix stored as sorted column lists per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeClass {
    pub label: String,
    pub rows: Vec<Vec<u32>>,
}

impl SchemeClass {
    pub fn contains(&self, u: usize, v: u32) -> bool {
        self.rows[u].binary_search(&v).is_ok()
    }

    pub fn valency(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }
}

/// Explicit adjacency matrices on the elements of SL2(F_q).
#[derive(Debug, Clone)]
pub struct AssociationScheme {
    pub q: u32,
    pub variant: SchemeVariant,
    pub group: Arc<MatrixGroup>,
    pub classes: Vec<SchemeClass>,
}

impl AssociationScheme {
    pub fn n(&self) -> usize {
        self.group.order()
    }
}

/// Adjacency matrices with `(u, v) = 1` iff `u v^-1` lies in the class.
pub fn build_scheme(q: u32, variant: SchemeVariant) -> Result<AssociationScheme> {
    if q < 4 {
        return Err(Error::UnsupportedField {
            q,
            reason: "the schemes need q >= 4",
        });
    }
    let group = MatrixGroup::new(GroupKind::Sl2, q)?;
    let n = group.order();
    let inverse: Vec<u32> = (0..n as u32)
        .map(|g| {
            let inv = group
                .element(g)
                .inverse(group.field())
                .expect("group elements are invertible");
            group.index_of(&inv).expect("closed under inversion")
        })
        .collect();
    let piece: Vec<usize> = (0..n as u32).map(|g| d5_piece(&group, g)).collect();
    let classes = variant
        .groups()
        .into_iter()
        .map(|(label, pieces)| {
            let members: Vec<u32> = (0..n as u32)
                .filter(|&g| pieces.contains(&piece[g as usize]))
                .collect();
            // u v^-1 = s  <=>  v = s^-1 u
            let rows = (0..n as u32)
                .map(|u| {
                    let mut row: Vec<u32> = members
                        .iter()
                        .map(|&s| group.mul_idx(inverse[s as usize], u))
                        .collect();
                    row.sort_unstable();
                    row
                })
                .collect();
            SchemeClass {
                label: label.to_string(),
                rows,
            }
        })
        .collect();
    Ok(AssociationScheme {
        q,
        variant,
        group,
        classes,
    })
}

/// Removes one pair from class 1 (negative-control fixture).
pub fn corrupt_missing_pair(scheme: &mut AssociationScheme) -> (usize, u32) {
    let row = &mut scheme.classes[1].rows[0];
    let v = row.remove(0);
    (0, v)
}

const NONE: u8 = u8::MAX;
const MANY: u8 = u8::MAX - 1;

/// Structure constants read off explicit matrix products.
#[derive(Debug, Clone)]
pub struct SchemeStructure {
    pub labels: Vec<String>,
    /// `p[i][j]` is the coefficient list of `C_i C_j`, or a witness.
    pub p: Vec<Vec<std::result::Result<Vec<i64>, String>>>,
    pub axioms: Checks,
}

impl SchemeStructure {
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Option<i64> {
        self.p[i][j].as_ref().ok().map(|v| v[k])
    }

    /// The structure constants as an algebra, if all products closed.
    pub fn algebra(&self) -> Option<FiniteAlgebra> {
        if self.p.iter().flatten().any(|r| r.is_err()) {
            return None;
        }
        Some(FiniteAlgebra::from_fn(self.labels.clone(), |i, j, k| {
            int(self.constant(i, j, k).expect("checked above") as i128)
        }))
    }
}

/// Extracts structure constants and checks every scheme axiom.
pub fn verify_axioms(s: &AssociationScheme) -> SchemeStructure {
    let n = s.n();
    let d = s.classes.len();
    let mut checks = Checks::new();

    let identity_ok = (0..n).all(|u| s.classes[0].rows[u] == [u as u32]);
    checks.expect("C0 is the identity", identity_ok, || {
        serde_json::Value::Null
    });

    let mut owner = vec![NONE; n * n];
    for (k, c) in s.classes.iter().enumerate() {
        for (u, row) in c.rows.iter().enumerate() {
            for &v in row {
                let o = &mut owner[u * n + v as usize];
                *o = if *o == NONE { k as u8 } else { MANY };
            }
        }
    }
    let bad = owner.iter().position(|&o| o == NONE || o == MANY);
    checks.expect(
        "classes partition the all-ones matrix",
        bad.is_none(),
        || {
            let i = bad.unwrap_or(0);
            let why = if owner[i] == NONE {
                "uncovered"
            } else {
                "covered twice"
            };
            serde_json::json!({"row": i / n, "col": i % n, "problem": why})
        },
    );

    for c in &s.classes {
        let asym = (0..n).find_map(|u| {
            c.rows[u]
                .iter()
                .find(|&&v| !c.contains(v as usize, u as u32))
                .map(|&v| (u, v))
        });
        checks.expect(format!("{} symmetric", c.label), asym.is_none(), || {
            let (u, v) = asym.unwrap_or_default();
            serde_json::json!({"row": u, "col": v})
        });
    }

    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).collect();
    let results: Vec<std::result::Result<Vec<i64>, String>> = pairs
        .par_iter()
        .map(|&(i, j)| product_constants(s, &owner, i, j))
        .collect();
    let mut p: Vec<Vec<std::result::Result<Vec<i64>, String>>> = vec![Vec::with_capacity(d); d];
    for (&(i, _), r) in pairs.iter().zip(results) {
        p[i].push(r);
    }
    for i in 0..d {
        for j in 0..d {
            let name = format!(
                "{} {} closed with integral constants",
                s.classes[i].label, s.classes[j].label
            );
            match &p[i][j] {
                Ok(_) => checks.push(crate::report::Check::pass(name)),
                Err(w) => checks.push(crate::report::Check::fail(name, w.clone())),
            }
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            if let (Ok(a), Ok(b)) = (&p[i][j], &p[j][i]) {
                checks.expect_eq(format!("p[{i}][{j}] = p[{j}][{i}]"), a.clone(), b.clone());
            }
        }
    }
    SchemeStructure {
        labels: s.classes.iter().map(|c| c.label.clone()).collect(),
        p,
        axioms: checks,
    }
}

fn product_constants(
    s: &AssociationScheme,
    owner: &[u8],
    i: usize,
    j: usize,
) -> std::result::Result<Vec<i64>, String> {
    let n = s.n();
    let d = s.classes.len();
    let mut prod = vec![0u32; n * n];
    for u in 0..n {
        let out = &mut prod[u * n..(u + 1) * n];
        for &w in &s.classes[i].rows[u] {
            for &v in &s.classes[j].rows[w as usize] {
                out[v as usize] += 1;
            }
        }
    }
    let mut coeffs: Vec<Option<i64>> = vec![None; d];
    for (idx, &o) in owner.iter().enumerate() {
        if (o as usize) < d && coeffs[o as usize].is_none() {
            coeffs[o as usize] = Some(prod[idx] as i64);
        }
    }
    for (idx, &o) in owner.iter().enumerate() {
        let expected = if (o as usize) < d {
            coeffs[o as usize].unwrap_or(0)
        } else {
            -1
        };
        if prod[idx] as i64 != expected {
            return Err(format!(
                "entry ({}, {}) of {}*{} is {}, not constant on its class",
                idx / n,
                idx % n,
                s.classes[i].label,
                s.classes[j].label,
                prod[idx]
            ));
        }
    }
    Ok(coeffs.into_iter().map(|c| c.unwrap_or(0)).collect())
}

/// Closed-form constants of the `D5` and tilde schemes.
pub fn displayed_constants(variant: SchemeVariant, q: u32) -> Option<Vec<Vec<Vec<i64>>>> {
    let q = q as i64;
    let l = q - 1;
    match variant {
        SchemeVariant::D5 => {
            let mut p = vec![vec![vec![0i64; 6]; 6]; 6];
            for x in 0..6 {
                p[0][x][x] = 1;
                p[x][0][x] = 1;
            }
            p[1][1] = vec![q - 2, q - 3, 0, 0, 0, 0];
            for y in 2..6 {
                p[1][y][y] = q - 2;
                p[y][1][y] = q - 2;
            }
            let mut sym = |i: usize, j: usize, v: Vec<i64>| {
                p[i][j] = v.clone();
                p[j][i] = v;
            };
            sym(2, 2, vec![l, l, 0, 0, 0, 0]);
            sym(2, 3, vec![0, 0, 0, l, 0, 0]);
            sym(2, 4, vec![0, 0, 0, 0, 0, l]);
            sym(2, 5, vec![0, 0, 0, 0, l, 0]);
            let c3 = l * l * (q - 2);
            sym(
                3,
                3,
                vec![
                    c3,
                    c3,
                    c3,
                    l * (q - 3) * (q - 4),
                    l * (q - 2) * (q - 3),
                    l * (q - 2) * (q - 3),
                ],
            );
            sym(
                3,
                4,
                vec![0, 0, 0, 2 * l * (q - 3), l * (q - 2), l * (q - 2)],
            );
            sym(
                3,
                5,
                vec![0, 0, 0, 2 * l * (q - 3), l * (q - 2), l * (q - 2)],
            );
            sym(4, 4, vec![2 * l * l, 2 * l * l, 0, 2 * l, l * (q - 2), l]);
            sym(4, 5, vec![0, 0, 2 * l * l, 2 * l, l, l * (q - 2)]);
            sym(5, 5, vec![2 * l * l, 2 * l * l, 0, 2 * l, l * (q - 2), l]);
            Some(p)
        }
        SchemeVariant::Tilde => {
            let m = tilde_mult_matrices(q as u32);
            // column j of M_i holds C_i C_j
            Some(
                (0..4)
                    .map(|i| {
                        (0..4)
                            .map(|j| (0..4).map(|k| m[i][k][j]).collect())
                            .collect()
                    })
                    .collect(),
            )
        }
        _ => None,
    }
}

/// Displayed matrices of multiplication by the tilde classes; column `j`
/// of `M_i` is `C_i C_j`.
pub fn tilde_mult_matrices(q: u32) -> [[[i64; 4]; 4]; 4] {
    let q = q as i64;
    let l = q - 1;
    let t = 2 * q - 3;
    [
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [
            [0, t, 0, 0],
            [1, 2 * (q - 2), 0, 0],
            [0, 0, t, 0],
            [0, 0, 0, t],
        ],
        [
            [0, 0, l * l * (q - 2), 0],
            [0, 0, l * l * (q - 2), 0],
            [1, t, l * (q - 3) * (q - 4), 4 * l * (q - 3)],
            [0, 0, l * (q - 2) * (q - 3), 2 * l * (q - 2)],
        ],
        [
            [0, 0, 0, 4 * l * l],
            [0, 0, 0, 4 * l * l],
            [0, 0, 4 * l * (q - 3), 8 * l],
            [1, t, 2 * l * (q - 2), 2 * l * l],
        ],
    ]
}

/// The tilde product list written out term by term.
pub fn tilde_displayed_products(q: u32) -> Vec<Vec<Vec<i64>>> {
    let q = q as i64;
    let l = q - 1;
    let t = 2 * q - 3;
    let mut p = vec![vec![vec![0i64; 4]; 4]; 4];
    for x in 0..4 {
        p[0][x][x] = 1;
        p[x][0][x] = 1;
    }
    let mut sym = |i: usize, j: usize, v: Vec<i64>| {
        p[i][j] = v.clone();
        p[j][i] = v;
    };
    sym(1, 1, vec![t, 2 * (q - 2), 0, 0]);
    sym(1, 2, vec![0, 0, t, 0]);
    sym(1, 3, vec![0, 0, 0, t]);
    let c = l * l * (q - 2);
    sym(
        2,
        2,
        vec![c, c, l * (q - 3) * (q - 4), l * (q - 2) * (q - 3)],
    );
    sym(2, 3, vec![0, 0, 4 * l * (q - 3), 2 * l * (q - 2)]);
    sym(3, 3, vec![4 * l * l, 4 * l * l, 8 * l, 2 * l * l]);
    p
}

/// Minimal idempotents of the tilde algebra with their displayed data.
#[derive(Debug, Clone)]
pub struct BetaSystem {
    pub q: u32,
    pub algebra: FiniteAlgebra,
    pub members: Vec<(String, Vector)>,
    /// `(dim, eigenvalues on C0..C3)` per member, as displayed.
    pub table: Vec<(Rational, [i64; 4])>,
}

pub fn beta_system(q: u32) -> Result<BetaSystem> {
    if q < 4 {
        return Err(Error::UnsupportedField {
            q,
            reason: "the schemes need q >= 4",
        });
    }
    let p = tilde_displayed_products(q);
    let names = ["C0", "C1", "C2", "C3"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let algebra = FiniteAlgebra::from_fn(names, |i, j, k| int(p[i][j][k] as i128));
    let qq = q as i128;
    let l = qq - 1;
    let b1 = rat(qq - 2, 2 * (qq * qq - qq));
    let b3 = rat(1, qq * qq - 1);
    let members = vec![
        ("beta0".to_string(), vec![rat(1, qq * qq * qq - qq); 4]),
        (
            "beta1".to_string(),
            vec![b1, b1, rat(1, qq * l * l), rat(-(qq - 2), 2 * qq * l * l)],
        ),
        (
            "beta2".to_string(),
            vec![rat(2 * qq - 3, 2 * l), rat(-1, 2 * l), int(0), int(0)],
        ),
        (
            "beta3".to_string(),
            vec![
                b3,
                b3,
                rat(-2, l * l * (qq + 1)),
                rat(qq - 3, 2 * l * l * (qq + 1)),
            ],
        ),
    ];
    let (q, l) = (q as i64, l as i64);
    let t = 2 * q - 3;
    let table = vec![
        (int(1), [1, t, l * l * (q - 2), 4 * l * l]),
        (rat((qq + 1) * (qq - 2), 2), [1, t, 2 * l, -4 * l]),
        (rat(qq * (2 * qq - 3) * (qq + 1), 2), [1, -1, 0, 0]),
        (int(qq), [1, t, -2 * l * (q - 2), 2 * l * (q - 3)]),
    ];
    Ok(BetaSystem {
        q: q as u32,
        algebra,
        members,
        table,
    })
}

impl BetaSystem {
    /// Idempotency, orthogonality, eigenvalues and dimensions in the abstract algebra.
    pub fn verify(&self) -> Checks {
        let mut checks = Checks::new();
        let alg = &self.algebra;
        let qq = self.q as i128;
        let mut total = vec![Rational::zero(); 4];
        for (i, (name, v)) in self.members.iter().enumerate() {
            checks.expect(format!("{name} idempotent"), alg.mul(v, v) == *v, || {
                serde_json::Value::Null
            });
            for (name2, w) in self.members.iter().skip(i + 1) {
                let z = alg.mul(v, w);
                checks.expect(
                    format!("{name} {name2} = 0"),
                    crate::algebra::is_zero(&z),
                    || serde_json::json!(crate::algebra::text(&z)),
                );
            }
            total = crate::algebra::add(&total, v);
            let (dim, eig) = &self.table[i];
            let d = int(qq * qq * qq - qq) * v[0];
            checks.expect_eq(format!("{name} dimension"), to_text(dim), to_text(&d));
            let vals: Vec<String> = (0..4)
                .map(|k| {
                    alg.character_value(v, k)
                        .map(|x| to_text(&x))
                        .unwrap_or_else(|e| e.to_string())
                })
                .collect();
            checks.expect_eq(
                format!("{name} eigenvalues"),
                eig.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                vals,
            );
        }
        checks.expect("betas sum to C0", total == alg.basis(0), || {
            serde_json::json!(crate::algebra::text(&total))
        });
        let dims: Rational = self.table.iter().map(|(d, _)| *d).sum();
        checks.expect_eq(
            "dimensions sum to q^3 - q",
            to_text(&int(qq * qq * qq - qq)),
            to_text(&dims),
        );
        checks
    }
}

/// Verifies the eigenvalue table on the explicit matrices: each
/// `E = Σ b_k C_k` is idempotent with trace `dim`, and `C_k E = λ_k E`.
pub fn verify_beta_on_matrices(scheme: &AssociationScheme, beta: &BetaSystem) -> Checks {
    let mut checks = Checks::new();
    let n = scheme.n();
    let mut trace_total = Rational::zero();
    for (i, (name, coeffs)) in beta.members.iter().enumerate() {
        let den = coeffs.iter().fold(1i128, |acc, c| acc.lcm(c.denom()));
        let w: Vec<i64> = coeffs
            .iter()
            .map(|c| (c * int(den)).to_integer() as i64)
            .collect();
        // dense D·E
        let mut e = vec![0i64; n * n];
        for (k, class) in scheme.classes.iter().enumerate() {
            for (u, row) in class.rows.iter().enumerate() {
                for &v in row {
                    e[u * n + v as usize] += w[k];
                }
            }
        }
        // (D E)^2 = D (D E)
        let mut sq_ok = true;
        for u in 0..n {
            let ru = &e[u * n..(u + 1) * n];
            let mut acc = vec![0i128; n];
            for (k, &a) in ru.iter().enumerate() {
                if a != 0 {
                    for (v, &b) in e[k * n..(k + 1) * n].iter().enumerate() {
                        acc[v] += a as i128 * b as i128;
                    }
                }
            }
            if acc.iter().zip(ru).any(|(&x, &y)| x != den * y as i128) {
                sq_ok = false;
                break;
            }
        }
        checks.expect(format!("{name} matrix idempotent"), sq_ok, || {
            serde_json::Value::Null
        });
        let tr: i128 = (0..n).map(|u| e[u * n + u] as i128).sum();
        let tr = Rational::new(tr, den);
        trace_total += tr;
        checks.expect_eq(
            format!("{name} trace"),
            to_text(&beta.table[i].0),
            to_text(&tr),
        );
        for (k, class) in scheme.classes.iter().enumerate() {
            let lambda = beta.table[i].1[k];
            let mut ok = true;
            'rows: for u in 0..n {
                for v in 0..n {
                    let s: i64 = class.rows[u].iter().map(|&x| e[x as usize * n + v]).sum();
                    if s != lambda * e[u * n + v] {
                        ok = false;
                        break 'rows;
                    }
                }
            }
            checks.expect(
                format!("{} acts as {lambda} on {name}", class.label),
                ok,
                || serde_json::Value::Null,
            );
        }
    }
    checks.expect_eq(
        "traces sum to n",
        to_text(&int(n as i128)),
        to_text(&trace_total),
    );
    checks
}

/// Compares extracted constants with the closed forms where they exist.
pub fn compare_displayed(s: &SchemeStructure, variant: SchemeVariant, q: u32) -> Checks {
    let mut checks = Checks::new();
    let Some(shown) = displayed_constants(variant, q) else {
        return checks;
    };
    for i in 0..shown.len() {
        for j in 0..shown.len() {
            let got = s.p[i][j].clone().unwrap_or_default();
            checks.expect_eq(
                format!("{} {} closed form", s.labels[i], s.labels[j]),
                shown[i][j].clone(),
                got,
            );
        }
    }
    if variant == SchemeVariant::Tilde {
        checks.expect_eq(
            "tilde matrices agree with product list",
            tilde_displayed_products(q),
            shown,
        );
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d5_partition_and_axioms() {
        let s = build_scheme(4, SchemeVariant::D5).unwrap();
        assert_eq!(s.classes.len(), 6);
        assert_eq!(s.n(), 60);
        let st = verify_axioms(&s);
        assert!(
            st.axioms.all_passed(),
            "{:?}",
            st.axioms.failures().collect::<Vec<_>>()
        );
        assert!(compare_displayed(&st, SchemeVariant::D5, 4).all_passed());
        assert!(build_scheme(3, SchemeVariant::D5).is_err());
    }

    #[test]
    fn d5_at_five() {
        let s = build_scheme(5, SchemeVariant::D5).unwrap();
        let st = verify_axioms(&s);
        assert!(st.axioms.all_passed());
        assert_eq!(st.p[2][2].as_ref().unwrap(), &vec![4, 4, 0, 0, 0, 0]);
        assert_eq!(st.p[1][1].as_ref().unwrap(), &vec![3, 2, 0, 0, 0, 0]);
        // C1 is not (q-2) C0: C1^2 differs from (q-2)^2 C0
        assert_ne!(st.p[1][1].as_ref().unwrap(), &vec![9, 0, 0, 0, 0, 0]);
        let cmp = compare_displayed(&st, SchemeVariant::D5, 5);
        assert!(cmp.all_passed(), "{:?}", cmp.failures().collect::<Vec<_>>());
    }

    #[test]
    fn merged_variants() {
        for q in [4, 5] {
            for v in [SchemeVariant::Merged45, SchemeVariant::Merged1245] {
                let st = verify_axioms(&build_scheme(q, v).unwrap());
                assert!(st.axioms.all_passed(), "q={q} {v}");
            }
        }
    }

    #[test]
    fn tilde_scheme() {
        let s = build_scheme(5, SchemeVariant::Tilde).unwrap();
        let st = verify_axioms(&s);
        assert!(st.axioms.all_passed());
        assert_eq!(st.p[3][3].as_ref().unwrap(), &vec![64, 64, 32, 32]);
        assert!(compare_displayed(&st, SchemeVariant::Tilde, 5).all_passed());
        let m = tilde_mult_matrices(5);
        assert_eq!(m[1][1][1], 6);
        assert_eq!(m[2][2][2], 8);
        assert_eq!(
            m[0],
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        );
    }

    #[test]
    fn beta() {
        for q in [4, 5, 7, 8, 9] {
            let b = beta_system(q).unwrap();
            let c = b.verify();
            assert!(
                c.all_passed(),
                "q={q} {:?}",
                c.failures().collect::<Vec<_>>()
            );
        }
        let b5 = beta_system(5).unwrap();
        assert_eq!(
            b5.algebra.character_value(&b5.members[2].1, 1).unwrap(),
            int(-1)
        );
        assert_eq!(b5.table[2].0, int(105));
        assert_eq!(
            b5.algebra.character_value(&b5.members[1].1, 3).unwrap(),
            int(-16)
        );
        let dims: Vec<Rational> = b5.table.iter().map(|t| t.0).collect();
        assert_eq!(dims, vec![int(1), int(9), int(105), int(5)]);
    }

    #[test]
    fn beta_on_explicit_matrices() {
        for q in [4, 5] {
            let s = build_scheme(q, SchemeVariant::Tilde).unwrap();
            let c = verify_beta_on_matrices(&s, &beta_system(q).unwrap());
            assert!(
                c.all_passed(),
                "q={q} {:?}",
                c.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn missing_pair_is_detected() {
        let mut s = build_scheme(4, SchemeVariant::D5).unwrap();
        let (u, v) = corrupt_missing_pair(&mut s);
        let st = verify_axioms(&s);
        let fail = st
            .axioms
            .failures()
            .find(|c| c.name.contains("partition"))
            .expect("partition failure");
        assert_eq!(fail.witness["row"], u);
        assert_eq!(fail.witness["col"], v);
    }
}
