//! GL2(F_q) characters, class profiles of `FX` and of the lifted idempotents
//! `π̃_i = π_i F / (q-1)`, and their ranks in each irreducible representation.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::gf::{ExtElem, FieldElem, GaloisField};
use crate::groupring::{
    class_sum, convolve, diagonal_f, map_into, GroupAlgebraElement, GroupKind, MatrixGroup,
};
use crate::idempotents::{pi, projector_trace};
use crate::rational::{int, rat, to_text, Rational};
use crate::report::{approx, Checks};
use crate::sl2::{ConjClassType, Gl2Classes, RefinedType, SupportClass};

const TOL: f64 = 1e-9;
const SNAP: f64 = 1e-6;

/// `χ(g^k) = exp(2πi e k / n)` on a cyclic group of order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiplicativeCharacter {
    pub n: u32,
    pub e: u32,
}

impl MultiplicativeCharacter {
    pub fn new(n: u32, e: u32) -> Self {
        MultiplicativeCharacter { n, e: e % n }
    }

    /// Value on `g^k`.
    pub fn at_log(&self, k: u32) -> Complex64 {
        let t = (self.e as u64 * k as u64) % self.n as u64;
        Complex64::from_polar(1.0, 2.0 * PI * t as f64 / self.n as f64)
    }

    pub fn pow(&self, m: u32) -> Self {
        Self::new(self.n, ((self.e as u64 * m as u64) % self.n as u64) as u32)
    }

    pub fn is_trivial(&self) -> bool {
        self.e == 0
    }
}

/// An irreducible representation of GL2(F_q) by exponents: `α, β` against
/// the generator of GF(q)^*, `φ` against the generator of GF(q^2)^*.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum IrrepSpec {
    U { alpha: u32 },
    V { alpha: u32 },
    W { alpha: u32, beta: u32 },
    X { phi: u32 },
}

/// The four families, in table order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    U,
    V,
    W,
    X,
}

impl IrrepSpec {
    pub fn family(&self) -> Family {
        match self {
            IrrepSpec::U { .. } => Family::U,
            IrrepSpec::V { .. } => Family::V,
            IrrepSpec::W { .. } => Family::W,
            IrrepSpec::X { .. } => Family::X,
        }
    }

    pub fn dim(&self, q: u32) -> u64 {
        let q = q as u64;
        match self {
            IrrepSpec::U { .. } => 1,
            IrrepSpec::V { .. } => q,
            IrrepSpec::W { .. } => q + 1,
            IrrepSpec::X { .. } => q - 1,
        }
    }

    pub fn label(&self) -> String {
        match self {
            IrrepSpec::U { alpha } => format!("U[{alpha}]"),
            IrrepSpec::V { alpha } => format!("V[{alpha}]"),
            IrrepSpec::W { alpha, beta } => format!("W[{alpha},{beta}]"),
            IrrepSpec::X { phi } => format!("X[{phi}]"),
        }
    }

    /// Representative of the isomorphism class: `W` with `α < β`, `X` with
    /// the smaller of `φ` and `φ^q`.
    pub fn canonical(&self, q: u32) -> IrrepSpec {
        match *self {
            IrrepSpec::W { alpha, beta } => IrrepSpec::W {
                alpha: alpha.min(beta),
                beta: alpha.max(beta),
            },
            IrrepSpec::X { phi } => {
                let n = q * q - 1;
                IrrepSpec::X {
                    phi: phi.min(((phi as u64 * q as u64) % n as u64) as u32),
                }
            }
            s => s,
        }
    }
}

/// Character values of GL2(F_q) on its conjugacy classes.
#[derive(Debug, Clone)]
pub struct CharacterTable {
    pub q: u32,
    pub classes: Gl2Classes,
    log_base: Vec<u32>,
    log_ext: Vec<u32>,
}

impl CharacterTable {
    pub fn new(q: u32) -> Result<Self> {
        let f = GaloisField::new(q as u64)?;
        if q < 3 {
            return Err(Error::UnsupportedField {
                q,
                reason: "character bookkeeping needs q >= 3",
            });
        }
        let classes = Gl2Classes::new(&f);
        let log_base = f.log_table(f.units_generator());
        let log_ext = classes.ext.log_table(classes.ext.units_generator());
        Ok(CharacterTable {
            q,
            classes,
            log_base,
            log_ext,
        })
    }

    fn field(&self) -> &GaloisField {
        &self.classes.field
    }

    fn alpha(&self, e: u32) -> MultiplicativeCharacter {
        MultiplicativeCharacter::new(self.q - 1, e)
    }

    fn phi(&self, e: u32) -> MultiplicativeCharacter {
        MultiplicativeCharacter::new(self.q * self.q - 1, e)
    }

    fn a(&self, e: u32, x: FieldElem) -> Complex64 {
        self.alpha(e).at_log(self.log_base[x.index()])
    }

    fn p(&self, e: u32, x: ExtElem) -> Complex64 {
        self.phi(e).at_log(self.log_ext[x.0 as usize])
    }

    pub fn validate(&self, spec: &IrrepSpec) -> Result<()> {
        let (m, n) = (self.q - 1, self.q * self.q - 1);
        match *spec {
            IrrepSpec::U { alpha } | IrrepSpec::V { alpha } if alpha >= m => Err(
                Error::InvalidSpec(format!("exponent {alpha} is not below {m}")),
            ),
            IrrepSpec::W { alpha, beta } if alpha >= m || beta >= m => Err(Error::InvalidSpec(
                format!("exponents {alpha},{beta} are not below {m}"),
            )),
            IrrepSpec::W { alpha, beta } if alpha == beta => Err(Error::InvalidSpec(format!(
                "W needs distinct characters, got {alpha} twice"
            ))),
            IrrepSpec::X { phi } if phi >= n => Err(Error::InvalidSpec(format!(
                "exponent {phi} is not below {n}"
            ))),
            IrrepSpec::X { phi } if self.phi(phi).pow(self.q - 1).is_trivial() => Err(
                Error::InvalidSpec(format!("phi^(q-1) is trivial for exponent {phi}")),
            ),
            _ => Ok(()),
        }
    }

    /// Table entry of `spec` on a class.
    pub fn char_value(&self, spec: &IrrepSpec, cls: &ConjClassType) -> Result<Complex64> {
        self.validate(spec)?;
        let f = self.field();
        let ext = &self.classes.ext;
        let q = self.q as f64;
        let c = |x: f64| Complex64::new(x, 0.0);
        Ok(match (*spec, *cls) {
            (
                IrrepSpec::U { alpha },
                ConjClassType::Central(x) | ConjClassType::NonSemisimple(x),
            ) => self.a(alpha, f.mul(x, x)),
            (IrrepSpec::U { alpha }, ConjClassType::Split(x, y)) => self.a(alpha, f.mul(x, y)),
            (IrrepSpec::U { alpha }, ConjClassType::Elliptic(xi)) => self.a(alpha, ext.norm(xi)),
            (IrrepSpec::V { alpha }, ConjClassType::Central(x)) => {
                c(q) * self.a(alpha, f.mul(x, x))
            }
            (IrrepSpec::V { .. }, ConjClassType::NonSemisimple(_)) => c(0.0),
            (IrrepSpec::V { alpha }, ConjClassType::Split(x, y)) => self.a(alpha, f.mul(x, y)),
            (IrrepSpec::V { alpha }, ConjClassType::Elliptic(xi)) => -self.a(alpha, ext.norm(xi)),
            (IrrepSpec::W { alpha, beta }, ConjClassType::Central(x)) => {
                c(q + 1.0) * self.a(alpha, x) * self.a(beta, x)
            }
            (IrrepSpec::W { alpha, beta }, ConjClassType::NonSemisimple(x)) => {
                self.a(alpha, x) * self.a(beta, x)
            }
            (IrrepSpec::W { alpha, beta }, ConjClassType::Split(x, y)) => {
                self.a(alpha, x) * self.a(beta, y) + self.a(alpha, y) * self.a(beta, x)
            }
            (IrrepSpec::W { .. }, ConjClassType::Elliptic(_)) => c(0.0),
            (IrrepSpec::X { phi }, ConjClassType::Central(x)) => {
                c(q - 1.0) * self.p(phi, ext.embed(x))
            }
            (IrrepSpec::X { phi }, ConjClassType::NonSemisimple(x)) => -self.p(phi, ext.embed(x)),
            (IrrepSpec::X { .. }, ConjClassType::Split(..)) => c(0.0),
            (IrrepSpec::X { phi }, ConjClassType::Elliptic(xi)) => {
                -(self.p(phi, xi) + self.p(phi, ext.frobenius(xi)))
            }
        })
    }

    /// Value on the class with the given index.
    pub fn value(&self, spec: &IrrepSpec, class: usize) -> Result<Complex64> {
        self.char_value(spec, &self.classes.classes[class].kind)
    }

    /// One representative per isomorphism class of irreducibles.
    pub fn irreps(&self) -> Vec<IrrepSpec> {
        let (m, n) = (self.q - 1, self.q * self.q - 1);
        let mut out: Vec<IrrepSpec> = (0..m).map(|alpha| IrrepSpec::U { alpha }).collect();
        out.extend((0..m).map(|alpha| IrrepSpec::V { alpha }));
        for alpha in 0..m {
            out.extend((alpha + 1..m).map(|beta| IrrepSpec::W { alpha, beta }));
        }
        for phi in 0..n {
            let s = IrrepSpec::X { phi };
            if self.validate(&s).is_ok() && s.canonical(self.q) == s {
                out.push(s);
            }
        }
        out
    }

    pub fn group_order(&self) -> u64 {
        self.classes.classes.iter().map(|c| c.size).sum()
    }

    /// `(1/|G|) Σ_g χ(g) conj(ψ(g))`.
    pub fn inner_product(&self, s: &IrrepSpec, t: &IrrepSpec) -> Result<Complex64> {
        let mut acc = Complex64::zero();
        for (i, c) in self.classes.classes.iter().enumerate() {
            acc += self.value(s, i)? * self.value(t, i)?.conj() * c.size as f64;
        }
        Ok(acc / self.group_order() as f64)
    }

    /// `Σ_classes sums[c] χ(c)`, snapped to a nonnegative integer.
    pub fn rank_from_class_sums(&self, sums: &[Rational], spec: &IrrepSpec) -> Result<u64> {
        let mut acc = Complex64::zero();
        for (i, s) in sums.iter().enumerate() {
            if !s.is_zero() {
                acc += self.value(spec, i)? * s.to_f64().expect("finite rational");
            }
        }
        snap(acc)
    }

    /// Rank of a rational combination `Σ (num_g / den) g` of GL2 elements.
    pub fn rank_in_irrep(
        &self,
        e: &GroupAlgebraElement,
        den: i128,
        spec: &IrrepSpec,
    ) -> Result<u64> {
        let sums: Vec<Rational> = class_sums(e, &self.classes)?
            .into_iter()
            .map(|s| rat(s as i128, den))
            .collect();
        self.rank_from_class_sums(&sums, spec)
    }

    /// Orthonormality of the full list of irreducibles and `Σ dim^2 = |GL2|`.
    pub fn orthogonality(&self) -> Result<Checks> {
        let irreps = self.irreps();
        let mut checks = Checks::new();
        checks.expect_eq(
            "irreducible count equals class count",
            self.classes.classes.len(),
            irreps.len(),
        );
        let dims: u64 = irreps.iter().map(|s| s.dim(self.q).pow(2)).sum();
        checks.expect_eq(
            "sum of squared dimensions equals |GL2|",
            self.group_order(),
            dims,
        );
        let bad: Vec<(String, String, Complex64)> = irreps
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, s)| {
                irreps[i..].iter().filter_map(move |t| {
                    let ip = self.inner_product(s, t).ok()?;
                    let want = if s == t { 1.0 } else { 0.0 };
                    ((ip - want).norm() > TOL).then(|| (s.label(), t.label(), ip))
                })
            })
            .collect();
        checks.expect("characters are orthonormal", bad.is_empty(), || {
            json!(bad
                .iter()
                .take(5)
                .map(|(s, t, v)| json!([s, t, approx(v.re), approx(v.im)]))
                .collect::<Vec<_>>())
        });
        let w = self.inner_product(
            &IrrepSpec::W { alpha: 0, beta: 1 },
            &IrrepSpec::W { alpha: 1, beta: 0 },
        )?;
        checks.expect("<W[a,b], W[b,a]> = 1", (w - 1.0).norm() < TOL, || {
            json!([approx(w.re), approx(w.im)])
        });
        let uv = self.inner_product(&IrrepSpec::U { alpha: 0 }, &IrrepSpec::V { alpha: 0 })?;
        checks.expect("<U[0], V[0]> = 0", uv.norm() < TOL, || {
            json!([approx(uv.re), approx(uv.im)])
        });
        if let Some(x) = irreps.iter().find(|s| s.family() == Family::X) {
            let IrrepSpec::X { phi } = *x else {
                unreachable!()
            };
            let twin = IrrepSpec::X {
                phi: (phi * self.q) % (self.q * self.q - 1),
            };
            let v = self.inner_product(x, &twin)?;
            checks.expect("<X[phi], X[phi^q]> = 1", (v - 1.0).norm() < TOL, || {
                json!([approx(v.re), approx(v.im)])
            });
        }
        Ok(checks)
    }
}

fn snap(z: Complex64) -> Result<u64> {
    let r = z.re.round();
    if (z - r).norm() > SNAP || r < 0.0 {
        return Err(Error::NotNearInteger { re: z.re, im: z.im });
    }
    Ok(r as u64)
}

/// Coefficient sum of `e` over each GL2 conjugacy class.
pub fn class_sums(e: &GroupAlgebraElement, classes: &Gl2Classes) -> Result<Vec<i64>> {
    let g = e.group();
    if g.kind() != GroupKind::Gl2 || g.field() != &classes.field {
        return Err(Error::GroupMismatch {
            left: format!("{:?}", g.kind()),
            right: "GL2".into(),
        });
    }
    let mut out = vec![0i64; classes.classes.len()];
    for (i, c) in e.terms() {
        let k = classes.class_of(g.element(i));
        out[k] = out[k].checked_add(c).ok_or(Error::IntegerOverflow)?;
    }
    Ok(out)
}

/// Collapses per-class values to per-type values, failing if two classes of
/// one type disagree.
pub fn by_type<T: Clone + PartialEq + std::fmt::Debug>(
    values: &[T],
    classes: &Gl2Classes,
) -> Result<BTreeMap<RefinedType, T>> {
    let mut out: BTreeMap<RefinedType, (usize, T)> = BTreeMap::new();
    for (i, (v, c)) in values.iter().zip(&classes.classes).enumerate() {
        match out.get(&c.refined) {
            None => {
                out.insert(c.refined, (i, v.clone()));
            }
            Some((j, w)) if w != v => {
                return Err(Error::NotTypeConstant {
                    kind: c.refined.label().into(),
                    first: format!("{:?} = {w:?}", classes.classes[*j].kind),
                    second: format!("{:?} = {v:?}", c.kind),
                });
            }
            _ => {}
        }
    }
    Ok(out.into_iter().map(|(k, (_, v))| (k, v)).collect())
}

/// Per-type class sums of an integer element of Z[GL2].
pub fn class_profile_sum(
    e: &GroupAlgebraElement,
    classes: &Gl2Classes,
) -> Result<BTreeMap<RefinedType, i64>> {
    by_type(&class_sums(e, classes)?, classes)
}

/// Everything needed for the decomposition bookkeeping at one q.
#[derive(Debug, Clone)]
pub struct CharContext {
    pub table: CharacterTable,
    pub gl2: Arc<MatrixGroup>,
    /// Per-class sums of `F X` for the seven support classes.
    pub fx: Vec<Vec<i64>>,
}

impl CharContext {
    pub fn new(q: u32) -> Result<Self> {
        let table = CharacterTable::new(q)?;
        let gl2 = MatrixGroup::over(GroupKind::Gl2, &table.classes.field)?;
        let sl2 = MatrixGroup::over(GroupKind::Sl2, &table.classes.field)?;
        let f = diagonal_f(&gl2)?;
        let fx = SupportClass::ALL
            .par_iter()
            .map(|&x| {
                let xs = map_into(&class_sum(&sl2, x)?, &gl2)?;
                class_sums(&convolve(&f, &xs)?, &table.classes)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CharContext { table, gl2, fx })
    }

    pub fn q(&self) -> u32 {
        self.table.q
    }

    /// Per-type profile of `F X`.
    pub fn fx_profile(&self, x: SupportClass) -> Result<BTreeMap<RefinedType, i64>> {
        by_type(&self.fx[x.index()], &self.table.classes)
    }

    /// Per-class sums of `π̃_i = (1/(q-1)) Σ_X π_i[X] F X`.
    pub fn pi_tilde_sums(&self, i: u8) -> Result<Vec<Rational>> {
        let p = pi(i, self.q())?;
        let scale = rat(1, self.q() as i128 - 1);
        let mut out = vec![Rational::zero(); self.table.classes.classes.len()];
        for x in SupportClass::ALL {
            for (o, &s) in out.iter_mut().zip(&self.fx[x.index()]) {
                *o += p[x] * scale * int(s as i128);
            }
        }
        Ok(out)
    }

    /// Per-type class sums of `π̃_i`.
    pub fn class_profile_coefficients(&self, i: u8) -> Result<BTreeMap<RefinedType, Rational>> {
        by_type(&self.pi_tilde_sums(i)?, &self.table.classes)
    }

    /// Ranks of `π̃_1..π̃_4` in every irreducible.
    pub fn ranks(&self) -> Result<Vec<(IrrepSpec, [u64; 4])>> {
        let sums = (1..=4)
            .map(|i| self.pi_tilde_sums(i))
            .collect::<Result<Vec<_>>>()?;
        self.table
            .irreps()
            .into_par_iter()
            .map(|s| {
                let mut r = [0u64; 4];
                for (k, v) in sums.iter().enumerate() {
                    r[k] = self.table.rank_from_class_sums(v, &s)?;
                }
                Ok((s, r))
            })
            .collect()
    }

    /// Exponent `e(q-1)` restricted-trivial X characters with `φ^(q-1)`
    /// nontrivial, one per isomorphism class.
    pub fn relevant_x(&self) -> Vec<IrrepSpec> {
        let q = self.q();
        (0..q + 1)
            .map(|e| IrrepSpec::X { phi: e * (q - 1) })
            .filter(|s| self.table.validate(s).is_ok())
            .map(|s| s.canonical(q))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// `W[α, ᾱ]` with `α ≠ ᾱ`.
    pub fn relevant_w(&self) -> Vec<IrrepSpec> {
        let m = self.q() - 1;
        (1..m)
            .filter(|&a| a < m - a)
            .map(|a| IrrepSpec::W {
                alpha: a,
                beta: m - a,
            })
            .collect()
    }

    /// `φ(ξ)` for a nonzero trace-zero `ξ` outside GF(q); `±1` on relevant X.
    pub fn sigma(&self, spec: &IrrepSpec) -> Result<i64> {
        let IrrepSpec::X { phi } = *spec else {
            return Err(Error::InvalidSpec(format!(
                "sigma is defined on X only, got {}",
                spec.label()
            )));
        };
        let ext = &self.table.classes.ext;
        let xi = ext
            .elements()
            .find(|&x| ext.restrict(x).is_none() && ext.trace(x).is_zero())
            .ok_or(Error::UnsupportedField {
                q: self.q(),
                reason: "no trace-zero element outside GF(q)",
            })?;
        let v = self.table.p(phi, xi);
        let r = v.re.round();
        if (v - r).norm() > TOL {
            return Err(Error::NotNearInteger { re: v.re, im: v.im });
        }
        Ok(r as i64)
    }
}

/// Transcribed `F X` profiles over the class types that occur at this q.
pub fn displayed_fx_profile(x: SupportClass, q: u32) -> BTreeMap<RefinedType, i64> {
    use RefinedType::*;
    use SupportClass as S;
    let q = q as i64;
    let row: Vec<i64> = if q % 2 == 0 {
        match x {
            S::A => vec![1, 0, 2, 0],
            S::B => vec![0, q - 1, 0, 0],
            S::C => vec![0, (q - 1) * (q - 2), (q - 1) * (q - 4), (q - 1) * (q - 2)],
            S::DPlus | S::DMinus => vec![0, q - 1, 2 * (q - 1), 0],
            S::EPlus | S::EMinus => vec![0, 0, q - 1, q - 1],
        }
    } else {
        match x {
            S::A => vec![1, 0, 2, 2, 0, 0],
            S::B => vec![0, 0, q - 1, 0, q - 1, 0],
            S::C => vec![
                0,
                (q - 1) * (q - 3),
                (q - 1) * (q - 3),
                (q - 1) * (q - 4),
                (q - 1) * (q - 1),
                (q - 1) * (q - 2),
            ],
            S::DPlus | S::DMinus => vec![0, q - 1, 2 * (q - 1), 2 * (q - 1), 0, 0],
            S::EPlus | S::EMinus => vec![0, q - 1, 0, q - 1, 0, q - 1],
        }
    };
    let types = if q % 2 == 0 {
        vec![Central, NonSemisimple, SplitGeneric, EllipticGeneric]
    } else {
        RefinedType::ALL.to_vec()
    };
    types
        .into_iter()
        .zip(row)
        .filter(|(t, _)| t.expected_count_and_size(q as u32).0 > 0)
        .collect()
}

/// Transcribed class-sum coefficients of `π̃_i` for odd q, over the class
/// types that occur.
pub fn displayed_pi_tilde(i: u8, q: u32) -> Result<BTreeMap<RefinedType, Rational>> {
    if q % 2 == 0 || q < 3 {
        return Err(Error::UnsupportedField {
            q,
            reason: "the lifted idempotent table is for odd q",
        });
    }
    let q = q as i128;
    let (qm, qp) = (q - 1, q + 1);
    let row = match i {
        1 => [
            rat(1, qm * qm * q * qp),
            rat(1, q * qm),
            rat(1, qm * qm),
            rat(1, qm * qm),
            rat(1, q * q - 1),
            rat(1, q * q - 1),
        ],
        2 => [
            rat(q - 2, 2 * q * qm * qm),
            rat(-1, q * qm),
            rat(q - 3, 2 * qm * qm),
            rat(-1, qm * qm),
            rat(1, 2 * qm),
            int(0),
        ],
        3 => [
            rat(1, 2 * (q * q - 1)),
            int(0),
            rat(-1, 2 * qm),
            int(0),
            rat(-1, 2 * qp),
            rat(1, q * q - 1),
        ],
        4 => [
            rat(2, qm * qm * qp),
            int(0),
            rat(2, qm * qm),
            rat(2, qm * qm),
            rat(-2, q * q - 1),
            rat(-2, q * q - 1),
        ],
        _ => {
            return Err(Error::Config(format!(
                "idempotent index {i} is not in 1..=4"
            )))
        }
    };
    Ok(RefinedType::ALL
        .into_iter()
        .zip(row)
        .filter(|(t, _)| t.expected_count_and_size(q as u32).0 > 0)
        .collect())
}

fn profile_json<T>(
    m: &BTreeMap<RefinedType, T>,
    f: impl Fn(&T) -> serde_json::Value,
) -> serde_json::Value {
    serde_json::Value::Object(
        m.iter()
            .map(|(k, v)| (k.label().to_string(), f(v)))
            .collect(),
    )
}

/// Brute-force `F X` profiles against the transcribed tables, plus the
/// margin identity (column sums equal class sizes).
pub fn fx_profile_checks(ctx: &CharContext) -> Result<Checks> {
    let q = ctx.q();
    let mut checks = Checks::new();
    for x in SupportClass::ALL {
        match ctx.fx_profile(x) {
            Ok(got) => {
                let want = displayed_fx_profile(x, q);
                checks.expect(format!("F{} profile matches the table", x.label()), got == want, || {
                    json!({"expected": profile_json(&want, |v| json!(v)), "actual": profile_json(&got, |v| json!(v))})
                });
            }
            Err(e) => checks.expect(
                format!("F{} profile is type-constant", x.label()),
                false,
                || json!(e.to_string()),
            ),
        }
    }
    let bad: Vec<usize> = (0..ctx.table.classes.classes.len())
        .filter(|&k| {
            let total: i64 = ctx.fx.iter().map(|v| v[k]).sum();
            total as u64 != ctx.table.classes.classes[k].size
        })
        .collect();
    checks.expect("F X column sums equal class sizes", bad.is_empty(), || {
        json!(bad)
    });
    Ok(checks)
}

/// Brute-force `π̃_i` class sums against the transcribed odd-q table.
pub fn pi_tilde_checks(ctx: &CharContext) -> Result<Checks> {
    let mut checks = Checks::new();
    for i in 1..=4u8 {
        let got = ctx.class_profile_coefficients(i)?;
        let want = displayed_pi_tilde(i, ctx.q())?;
        checks.expect(format!("pi~{i} class sums match the table"), got == want, || {
            json!({"expected": profile_json(&want, |v| json!(to_text(v))), "actual": profile_json(&got, |v| json!(to_text(v)))})
        });
    }
    Ok(checks)
}

/// Result of the decomposition bookkeeping.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub q: u32,
    /// Nonzero ranks of `π̃_1..π̃_4` per irreducible.
    pub involved: Vec<InvolvedIrrep>,
    /// `Σ dim · rank` per family.
    pub family_totals: BTreeMap<Family, u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InvolvedIrrep {
    pub spec: IrrepSpec,
    pub dim: u64,
    pub ranks: [u64; 4],
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sigma: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha_at_minus_one: Option<i64>,
}

/// Ranks of the lifted idempotents in all irreducibles, with every count and
/// multiplicity statement for the parity and residue of q mod 4.
pub fn decomposition_report(ctx: &CharContext) -> Result<(Decomposition, Checks)> {
    let q = ctx.q();
    let qi = q as u64;
    let m = q - 1;
    let mut checks = Checks::new();
    let ranks = ctx.ranks();
    let ranks = match ranks {
        Ok(r) => r,
        Err(e) => {
            checks.expect("ranks are nonnegative integers", false, || {
                json!(e.to_string())
            });
            return Ok((
                Decomposition {
                    q,
                    involved: vec![],
                    family_totals: BTreeMap::new(),
                },
                checks,
            ));
        }
    };
    checks.push(crate::report::Check::pass("ranks are nonnegative integers"));

    let mut involved = Vec::new();
    let mut family_totals: BTreeMap<Family, u64> = [Family::U, Family::V, Family::W, Family::X]
        .map(|f| (f, 0))
        .into();
    for (s, r) in &ranks {
        if r.iter().all(|&x| x == 0) {
            continue;
        }
        let dim = s.dim(q);
        *family_totals.entry(s.family()).or_default() += dim * r.iter().sum::<u64>();
        let sigma = (q % 2 == 1 && matches!(s, IrrepSpec::X { .. }))
            .then(|| ctx.sigma(s))
            .transpose()?;
        let alpha_at_minus_one = match *s {
            IrrepSpec::W { alpha, .. } if q % 2 == 1 => Some(if alpha % 2 == 0 { 1 } else { -1 }),
            _ => None,
        };
        involved.push(InvolvedIrrep {
            spec: *s,
            dim,
            ranks: *r,
            sigma,
            alpha_at_minus_one,
        });
    }

    for i in 1..=4u8 {
        let got: u64 = ranks
            .iter()
            .map(|(s, r)| s.dim(q) * r[i as usize - 1])
            .sum();
        let want = projector_trace(i, q)?;
        checks.expect_eq(
            format!("pi~{i}: sum of dim*rank equals trace"),
            want,
            int(got as i128),
        );
    }
    let total: u64 = family_totals.values().sum();
    checks.expect_eq("total regular trace is q(q+1)", qi * (qi + 1), total);
    let want_totals: [u64; 4] = if q % 2 == 1 {
        [1, 3 * qi, (qi + 1) * (qi - 3) / 2, (qi - 1) * (qi - 1) / 2]
    } else {
        [1, 2 * qi, (qi + 1) * (qi - 2) / 2, (qi - 1) * qi / 2]
    };
    checks.expect_eq(
        "family totals (U, V, W, X)",
        want_totals.to_vec(),
        family_totals.values().copied().collect(),
    );

    let rank_of = |s: &IrrepSpec| {
        ranks
            .iter()
            .find(|(t, _)| t == s)
            .map(|(_, r)| *r)
            .unwrap_or([0; 4])
    };
    let only = |k: usize, s: IrrepSpec, r: u64| {
        ranks
            .iter()
            .all(|(t, rs)| if *t == s { rs[k] == r } else { rs[k] == 0 })
    };
    let u0 = IrrepSpec::U { alpha: 0 };
    let v0 = IrrepSpec::V { alpha: 0 };
    checks.expect("pi~1 only in U[0], rank 1", only(0, u0, 1), || {
        json!(rank_of(&u0))
    });
    checks.expect(
        "pi~4 only in V[0], rank 2 (contribution 2q)",
        only(3, v0, 2),
        || json!(rank_of(&v0)),
    );

    let ws = ctx.relevant_w();
    let xs = ctx.relevant_x();
    let vl = (q % 2 == 1).then_some(IrrepSpec::V { alpha: m / 2 });
    let mut expected: BTreeMap<IrrepSpec, [u64; 4]> = BTreeMap::new();
    expected.insert(u0, [1, 0, 0, 0]);
    expected.insert(v0, [0, 0, 0, 2]);
    if q % 2 == 0 {
        checks.expect_eq("even q: (q-2)/2 relevant W", (qi - 2) / 2, ws.len() as u64);
        checks.expect_eq(
            "even q: q/2 relevant X (truncated family name read as X)",
            qi / 2,
            xs.len() as u64,
        );
        for w in &ws {
            expected.insert(*w, [0, 1, 0, 0]);
        }
        for x in &xs {
            expected.insert(*x, [0, 0, 1, 0]);
        }
    } else {
        let vl = vl.expect("odd q");
        let one_mod_4 = q % 4 == 1;
        expected.insert(
            vl,
            if one_mod_4 {
                [0, 1, 0, 0]
            } else {
                [0, 0, 1, 0]
            },
        );
        checks.expect(
            format!(
                "V_L carries {} with contribution q",
                if one_mod_4 { "pi~2" } else { "pi~3" }
            ),
            rank_of(&vl) == expected[&vl],
            || json!(rank_of(&vl)),
        );
        let (mut plus, mut minus) = (0u64, 0u64);
        for w in &ws {
            let IrrepSpec::W { alpha, .. } = *w else {
                unreachable!()
            };
            if alpha % 2 == 0 {
                plus += 1;
                expected.insert(*w, [0, 1, 0, 0]);
            } else {
                minus += 1;
                expected.insert(*w, [0, 0, 1, 0]);
            }
        }
        let want_w = if one_mod_4 {
            ((qi - 5) / 4, (qi - 1) / 4)
        } else {
            ((qi - 3) / 4, (qi - 3) / 4)
        };
        checks.expect_eq(
            "W[a,-a] counts with alpha(-1) = +1, -1",
            want_w,
            (plus, minus),
        );
        let (mut s_plus, mut s_minus) = (0u64, 0u64);
        for x in &xs {
            match ctx.sigma(x)? {
                1 => {
                    s_plus += 1;
                    expected.insert(*x, [0, 0, 1, 0]);
                }
                _ => {
                    s_minus += 1;
                    expected.insert(*x, [0, 1, 0, 0]);
                }
            }
        }
        let want_x = if one_mod_4 {
            ((qi - 1) / 4, (qi - 1) / 4)
        } else {
            ((qi - 3) / 4, (qi + 1) / 4)
        };
        checks.expect_eq("X counts with sigma = +1, -1", want_x, (s_plus, s_minus));
    }
    let actual: BTreeMap<IrrepSpec, [u64; 4]> =
        involved.iter().map(|i| (i.spec, i.ranks)).collect();
    checks.expect("involved irreducibles and ranks match the multiplicity statements", actual == expected, || {
        let diff: Vec<_> = expected
            .keys()
            .chain(actual.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .filter(|s| expected.get(s) != actual.get(s))
            .map(|s| json!({"irrep": s.label(), "expected": expected.get(s), "actual": actual.get(s)}))
            .collect();
        json!(diff)
    });
    Ok((
        Decomposition {
            q,
            involved,
            family_totals,
        },
        checks,
    ))
}

/// Class-type averages of `V_L`, `W[α,ᾱ]` and relevant `X` against the
/// transcribed mean-value rows (odd q ≥ 5).
pub fn mean_values_check(ctx: &CharContext) -> Result<Checks> {
    let q = ctx.q();
    if q % 2 == 0 || q < 5 {
        return Err(Error::UnsupportedField {
            q,
            reason: "mean values are tabulated for odd q >= 5",
        });
    }
    let qf = q as f64;
    let leg = if q % 4 == 1 { 1.0 } else { -1.0 };
    let mut checks = Checks::new();
    let mut compare = |name: String, spec: &IrrepSpec, row: [f64; 6]| -> Result<()> {
        let mut sums: BTreeMap<RefinedType, (Complex64, f64)> = BTreeMap::new();
        for (i, c) in ctx.table.classes.classes.iter().enumerate() {
            let e = sums.entry(c.refined).or_insert((Complex64::zero(), 0.0));
            e.0 += ctx.table.value(spec, i)?;
            e.1 += 1.0;
        }
        let bad: Vec<_> = RefinedType::ALL
            .iter()
            .zip(row)
            .filter_map(|(t, want)| {
                let (s, n) = sums[t];
                let mean = s / n;
                ((mean - want).norm() > TOL).then(|| json!({"type": t.label(), "expected": approx(want), "actual": [approx(mean.re), approx(mean.im)]}))
            })
            .collect();
        checks.expect(name, bad.is_empty(), || json!(bad));
        Ok(())
    };
    compare(
        "V_L mean values".into(),
        &IrrepSpec::V { alpha: (q - 1) / 2 },
        [
            qf,
            0.0,
            leg,
            -(1.0 + leg) / (qf - 3.0),
            leg,
            (1.0 - leg) / (qf - 1.0),
        ],
    )?;
    for w in ctx.relevant_w() {
        let IrrepSpec::W { alpha, .. } = w else {
            unreachable!()
        };
        let a = if alpha % 2 == 0 { 1.0 } else { -1.0 };
        compare(
            format!("{} mean values", w.label()),
            &w,
            [
                qf + 1.0,
                1.0,
                2.0 * a,
                -2.0 * (1.0 + a) / (qf - 3.0),
                0.0,
                0.0,
            ],
        )?;
    }
    for x in ctx.relevant_x() {
        let s = ctx.sigma(&x)? as f64;
        compare(
            format!("{} mean values", x.label()),
            &x,
            [
                qf - 1.0,
                -1.0,
                0.0,
                0.0,
                -2.0 * s,
                2.0 * (1.0 + s) / (qf - 1.0),
            ],
        )?;
    }
    Ok(checks)
}

/// All character-side checks at one q.
pub fn verify_chars(q: u32) -> Result<Checks> {
    chars_battery(&CharContext::new(q)?)
}

/// As [`verify_chars`] on a prepared context.
pub fn chars_battery(ctx: &CharContext) -> Result<Checks> {
    let q = ctx.q();
    let mut checks = Checks::new();
    checks.extend_prefixed("orthogonality: ", ctx.table.orthogonality()?);
    checks.extend_prefixed("FX: ", fx_profile_checks(ctx)?);
    if q % 2 == 1 {
        checks.extend_prefixed("pi~: ", pi_tilde_checks(ctx)?);
    }
    checks.extend_prefixed("decomposition: ", decomposition_report(ctx)?.1);
    if q % 2 == 1 && q >= 5 {
        checks.extend_prefixed("mean values: ", mean_values_check(ctx)?);
    }
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn failures(c: &Checks) -> Vec<String> {
        c.failures()
            .map(|f| format!("{}: {}", f.name, f.witness))
            .collect()
    }

    #[test]
    fn spec_validation() {
        let t = CharacterTable::new(5).unwrap();
        assert!(matches!(
            t.validate(&IrrepSpec::W { alpha: 1, beta: 1 }),
            Err(Error::InvalidSpec(_))
        ));
        // φ = ψ∘N has trivial φ^(q-1): exponents divisible by q+1.
        assert!(matches!(
            t.validate(&IrrepSpec::X { phi: 6 }),
            Err(Error::InvalidSpec(_))
        ));
        assert!(t.validate(&IrrepSpec::X { phi: 4 }).is_ok());
        assert!(matches!(
            t.validate(&IrrepSpec::U { alpha: 4 }),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn table_entries() {
        let t = CharacterTable::new(5).unwrap();
        let f = &t.classes.field;
        let x = f.from_int(2);
        let w = IrrepSpec::W { alpha: 1, beta: 2 };
        let v = t.char_value(&w, &ConjClassType::Central(x)).unwrap();
        let want = t.a(1, x) * t.a(2, x) * 6.0;
        assert!((v - want).norm() < TOL);
        let xs = IrrepSpec::X { phi: 1 };
        let v = t.char_value(&xs, &ConjClassType::NonSemisimple(x)).unwrap();
        assert!((v + t.p(1, t.classes.ext.embed(x))).norm() < TOL);
        let v = t
            .char_value(&IrrepSpec::V { alpha: 3 }, &ConjClassType::NonSemisimple(x))
            .unwrap();
        assert_eq!(v, Complex64::zero());
    }

    #[test]
    fn orthogonality_small_q() {
        for q in [3, 4, 5] {
            let t = CharacterTable::new(q).unwrap();
            let c = t.orthogonality().unwrap();
            assert!(c.all_passed(), "q={q}: {:?}", failures(&c));
        }
        let t = CharacterTable::new(3).unwrap();
        assert_eq!(t.irreps().iter().map(|s| s.dim(3).pow(2)).sum::<u64>(), 48);
    }

    #[test]
    fn fx_examples() {
        let ctx = CharContext::new(5).unwrap();
        let fb = ctx.fx_profile(SupportClass::B).unwrap();
        assert_eq!(
            fb.values().copied().collect::<Vec<_>>(),
            vec![0, 0, 4, 0, 4, 0]
        );
        let ctx = CharContext::new(4).unwrap();
        let fa = ctx.fx_profile(SupportClass::A).unwrap();
        assert_eq!(fa.values().copied().collect::<Vec<_>>(), vec![1, 0, 2, 0]);
        let fc = ctx.fx_profile(SupportClass::C).unwrap();
        assert_eq!(fc.values().copied().collect::<Vec<_>>(), vec![0, 6, 0, 6]);
    }

    #[test]
    fn fx_tables_match() {
        for q in [3, 4, 5, 7, 8] {
            let ctx = CharContext::new(q).unwrap();
            let c = fx_profile_checks(&ctx).unwrap();
            assert!(c.all_passed(), "q={q}: {:?}", failures(&c));
        }
    }

    #[test]
    fn pi_tilde_table_matches() {
        for q in [3, 5, 7] {
            let ctx = CharContext::new(q).unwrap();
            let c = pi_tilde_checks(&ctx).unwrap();
            assert!(c.all_passed(), "q={q}: {:?}", failures(&c));
        }
        let p = displayed_pi_tilde(1, 5).unwrap();
        assert_eq!(p[&RefinedType::Central], rat(1, 480));
        assert_eq!(
            displayed_pi_tilde(4, 5).unwrap()[&RefinedType::EllipticGeneric],
            rat(-2, 24)
        );
    }

    #[test]
    fn not_type_constant() {
        let ctx = CharContext::new(3).unwrap();
        let g = ctx.gl2.index_of(&crate::sl2::Mat2::identity()).unwrap();
        let e = GroupAlgebraElement::from_terms(&ctx.gl2, [(g, 1)]);
        assert!(matches!(
            class_profile_sum(&e, &ctx.table.classes),
            Err(Error::NotTypeConstant { .. })
        ));
    }

    #[test]
    fn rank_of_pi_in_trivial_and_v() {
        let ctx = CharContext::new(4).unwrap();
        let f = diagonal_f(&ctx.gl2).unwrap();
        let sl2 = MatrixGroup::over(GroupKind::Sl2, &ctx.table.classes.field).unwrap();
        let a = map_into(&class_sum(&sl2, SupportClass::A).unwrap(), &ctx.gl2).unwrap();
        let fa = convolve(&f, &a).unwrap();
        let den = 9;
        assert_eq!(
            ctx.table
                .rank_in_irrep(&fa, den, &IrrepSpec::U { alpha: 0 })
                .unwrap(),
            1
        );
        assert_eq!(
            ctx.table
                .rank_in_irrep(&fa, den, &IrrepSpec::V { alpha: 0 })
                .unwrap(),
            2
        );
        assert!(matches!(
            ctx.table
                .rank_in_irrep(&fa, 2 * den, &IrrepSpec::U { alpha: 0 }),
            Err(Error::NotNearInteger { .. })
        ));
    }

    #[test]
    fn decomposition_statements() {
        for q in [3, 4, 5, 7, 8] {
            let ctx = CharContext::new(q).unwrap();
            let (d, c) = decomposition_report(&ctx).unwrap();
            assert!(c.all_passed(), "q={q}: {:?}", failures(&c));
            assert_eq!(d.family_totals.values().sum::<u64>(), (q * (q + 1)) as u64);
        }
        let ctx = CharContext::new(4).unwrap();
        let (d, _) = decomposition_report(&ctx).unwrap();
        assert_eq!(
            d.family_totals.values().copied().collect::<Vec<_>>(),
            vec![1, 8, 5, 6]
        );
        let ctx = CharContext::new(7).unwrap();
        let minus = ctx
            .relevant_x()
            .iter()
            .filter(|x| ctx.sigma(x).unwrap() == -1)
            .count();
        assert_eq!(minus, 2);
        let ctx = CharContext::new(5).unwrap();
        let (d, _) = decomposition_report(&ctx).unwrap();
        let vl = d
            .involved
            .iter()
            .find(|i| i.spec == IrrepSpec::V { alpha: 2 })
            .unwrap();
        assert_eq!(vl.ranks, [0, 1, 0, 0]);
        assert_eq!(vl.dim * vl.ranks[1], 5);
    }

    #[test]
    fn mean_values() {
        for q in [5, 7, 9] {
            let ctx = CharContext::new(q).unwrap();
            let c = mean_values_check(&ctx).unwrap();
            assert!(c.all_passed(), "q={q}: {:?}", failures(&c));
        }
        assert!(mean_values_check(&CharContext::new(3).unwrap()).is_err());
    }
}
