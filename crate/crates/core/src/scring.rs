//! The seven-dimensional ring spanned by support-class sums, with
//! structure constants given as polynomials in q.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groupring::{brute_force_constants, GroupKind, MatrixGroup};
use crate::rational::{int, Rational};
use crate::sl2::SupportClass;

/// Integer polynomial of degree at most 3 in q; `self.0[k]` is the q^k coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash, Serialize, Deserialize)]
pub struct QPolynomial(pub [i64; 4]);

impl QPolynomial {
    pub const ZERO: QPolynomial = QPolynomial([0; 4]);

    pub fn constant(c: i64) -> Self {
        QPolynomial([c, 0, 0, 0])
    }

    /// `q - r`.
    pub fn linear(r: i64) -> Self {
        QPolynomial([-r, 1, 0, 0])
    }

    /// Product of `q - r` over the given roots.
    pub fn from_roots(roots: &[i64]) -> Self {
        roots.iter().fold(Self::constant(1), |acc, &r| {
            acc.mul(&Self::linear(r)).expect("at most three roots")
        })
    }

    pub fn is_zero(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn degree(&self) -> Option<usize> {
        (0..4).rev().find(|&k| self.0[k] != 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        QPolynomial(std::array::from_fn(|k| self.0[k] + other.0[k]))
    }

    pub fn scale(&self, k: i64) -> Self {
        QPolynomial(self.0.map(|c| c * k))
    }

    /// Product, or `None` if the degree would exceed 3.
    pub fn mul(&self, other: &Self) -> Option<Self> {
        let mut out = [0i64; 4];
        for i in 0..4 {
            for j in 0..4 {
                let t = self.0[i] * other.0[j];
                if t != 0 {
                    *out.get_mut(i + j)? += t;
                }
            }
        }
        Some(QPolynomial(out))
    }

    pub fn eval(&self, q: i64) -> i64 {
        self.0.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// Divisible by `q - 1` iff the value at 1 vanishes.
    pub fn divisible_by_q_minus_1(&self) -> bool {
        self.eval(1) == 0
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..4).rev() {
            let c = self.0[k];
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (_, 1) => {}
                _ => write!(f, "{a}")?,
            }
            match k {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{k}")?,
            }
        }
        Ok(())
    }
}

/// Coefficients on the basis `A, B, C, D+, D-, E+, E-`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportVector<T>(pub [T; 7]);

impl<T: Zero + Copy> SupportVector<T> {
    pub fn zero() -> Self {
        SupportVector([T::zero(); 7])
    }

    pub fn basis(x: SupportClass) -> Self
    where
        T: num_traits::One,
    {
        let mut v = Self::zero();
        v[x] = T::one();
        v
    }
}

impl<T> SupportVector<T> {
    pub fn iter(&self) -> impl Iterator<Item = (SupportClass, &T)> {
        SupportClass::ALL.into_iter().zip(self.0.iter())
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> SupportVector<U> {
        SupportVector(self.0.each_ref().map(f))
    }
}

impl<T> Index<SupportClass> for SupportVector<T> {
    type Output = T;
    fn index(&self, i: SupportClass) -> &T {
        &self.0[i.index()]
    }
}

impl<T> IndexMut<SupportClass> for SupportVector<T> {
    fn index_mut(&mut self, i: SupportClass) -> &mut T {
        &mut self.0[i.index()]
    }
}

impl SupportVector<i64> {
    pub fn to_rational(&self) -> SupportVector<Rational> {
        self.map(|&c| int(c as i128))
    }
}

impl SupportVector<Rational> {
    pub fn add(&self, o: &Self) -> Self {
        SupportVector(std::array::from_fn(|k| self.0[k] + o.0[k]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        SupportVector(std::array::from_fn(|k| self.0[k] - o.0[k]))
    }

    pub fn scale(&self, s: Rational) -> Self {
        self.map(|&c| c * s)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

/// Swaps the `D+/D-` and `E+/E-` coordinates: inversion followed by transposition.
pub fn sigma_tau<T: Copy>(u: &SupportVector<T>) -> SupportVector<T> {
    permute(u, SupportClass::sigma_tau)
}

/// Swaps only `E+/E-`: the image of inversion, an antiautomorphism.
pub fn inverse_star<T: Copy>(u: &SupportVector<T>) -> SupportVector<T> {
    permute(u, SupportClass::inverse)
}

fn permute<T: Copy>(u: &SupportVector<T>, p: fn(SupportClass) -> SupportClass) -> SupportVector<T> {
    let mut out = *u;
    for x in SupportClass::ALL {
        out[p(x)] = u[x];
    }
    out
}

/// `table[X][Y]` = product `X·Y` on the basis, with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureTable(pub [[SupportVector<QPolynomial>; 7]; 7]);

impl StructureTable {
    pub fn entry(&self, x: SupportClass, y: SupportClass) -> &SupportVector<QPolynomial> {
        &self.0[x.index()][y.index()]
    }

    pub fn evaluate(&self, q: u32) -> Result<Constants> {
        check_q(q)?;
        let mut c = [[[0i64; 7]; 7]; 7];
        for i in 0..7 {
            for j in 0..7 {
                for k in 0..7 {
                    c[i][j][k] = self.0[i][j].0[k].eval(q as i64);
                }
            }
        }
        Ok(Constants { q, c })
    }
}

fn check_q(q: u32) -> Result<()> {
    if q <= 2 {
        return Err(Error::UnsupportedField {
            q,
            reason: "the support-class ring needs q > 2",
        });
    }
    Ok(())
}

/// The closed-form product table.
pub fn structure_table() -> StructureTable {
    use SupportClass::*;
    let l = QPolynomial::from_roots(&[1]);
    let ll = QPolynomial::from_roots(&[1, 1]);
    let l2 = QPolynomial::from_roots(&[1, 2]);
    let l3 = QPolynomial::from_roots(&[1, 3]);

    let mut t = [[SupportVector([QPolynomial::ZERO; 7]); 7]; 7];
    let mut filled = [[false; 7]; 7];
    let mut set = |pairs: &[(SupportClass, SupportClass)],
                   terms: &[(QPolynomial, &[SupportClass])]| {
        let mut v = SupportVector([QPolynomial::ZERO; 7]);
        for (p, xs) in terms {
            for &x in *xs {
                v[x] = v[x].add(p);
            }
        }
        for &(x, y) in pairs {
            assert!(!filled[x.index()][y.index()], "{x}{y} set twice");
            filled[x.index()][y.index()] = true;
            t[x.index()][y.index()] = v;
        }
    };

    for x in SupportClass::ALL {
        if x == A {
            set(&[(A, A)], &[(l, &[A])]);
        } else {
            set(&[(A, x), (x, A)], &[(l, &[x])]);
        }
    }
    set(&[(B, B)], &[(l, &[A])]);
    set(&[(B, C), (C, B)], &[(l, &[C])]);
    set(&[(B, DPlus), (DMinus, B)], &[(l, &[EMinus])]);
    set(&[(B, DMinus), (DPlus, B)], &[(l, &[EPlus])]);
    set(&[(B, EPlus), (EMinus, B)], &[(l, &[DMinus])]);
    set(&[(B, EMinus), (EPlus, B)], &[(l, &[DPlus])]);
    set(
        &[(C, C)],
        &[
            (QPolynomial::from_roots(&[1, 1, 2]), &[A, B]),
            (QPolynomial::from_roots(&[1, 3, 4]), &[C]),
            (
                QPolynomial::from_roots(&[1, 2, 3]),
                &[DPlus, DMinus, EPlus, EMinus],
            ),
        ],
    );
    set(
        &[(C, DPlus), (C, EMinus)],
        &[(l3, &[C]), (l2, &[DMinus, EPlus])],
    );
    set(
        &[(C, DMinus), (C, EPlus)],
        &[(l3, &[C]), (l2, &[DPlus, EMinus])],
    );
    set(
        &[(DPlus, C), (EPlus, C)],
        &[(l3, &[C]), (l2, &[DMinus, EMinus])],
    );
    set(
        &[(DMinus, C), (EMinus, C)],
        &[(l3, &[C]), (l2, &[DPlus, EPlus])],
    );
    set(
        &[(DPlus, DPlus), (EPlus, EMinus)],
        &[(ll, &[A]), (l2, &[DPlus])],
    );
    set(&[(DPlus, DMinus), (EPlus, EPlus)], &[(l, &[C, EMinus])]);
    set(&[(DMinus, DPlus), (EMinus, EMinus)], &[(l, &[C, EPlus])]);
    set(
        &[(DPlus, EPlus), (EPlus, DMinus)],
        &[(ll, &[B]), (l2, &[EPlus])],
    );
    set(&[(EPlus, DPlus), (DPlus, EMinus)], &[(l, &[C, DMinus])]);
    set(
        &[(EMinus, DPlus), (DMinus, EMinus)],
        &[(ll, &[B]), (l2, &[EMinus])],
    );
    set(
        &[(DMinus, DMinus), (EMinus, EPlus)],
        &[(ll, &[A]), (l2, &[DMinus])],
    );
    set(&[(DMinus, EPlus), (EMinus, DMinus)], &[(l, &[C, DPlus])]);

    assert!(
        filled.iter().flatten().all(|&b| b),
        "every ordered pair is covered"
    );
    StructureTable(t)
}

/// Structure constants evaluated at one q: `c[X][Y][Z]` is the coefficient
/// of `Z` in `X·Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constants {
    pub q: u32,
    pub c: [[[i64; 7]; 7]; 7],
}

impl Constants {
    pub fn at(q: u32) -> Result<Self> {
        structure_table().evaluate(q)
    }

    pub fn product(&self, x: SupportClass, y: SupportClass) -> SupportVector<i64> {
        SupportVector(self.c[x.index()][y.index()])
    }

    pub fn mul(
        &self,
        u: &SupportVector<Rational>,
        v: &SupportVector<Rational>,
    ) -> SupportVector<Rational> {
        let mut out = SupportVector::<Rational>::zero();
        for i in 0..7 {
            if u.0[i].is_zero() {
                continue;
            }
            for j in 0..7 {
                if v.0[j].is_zero() {
                    continue;
                }
                let s = u.0[i] * v.0[j];
                for k in 0..7 {
                    let c = self.c[i][j][k];
                    if c != 0 {
                        out.0[k] += s * int(c as i128);
                    }
                }
            }
        }
        out
    }

    pub fn mul_int(
        &self,
        u: &SupportVector<i64>,
        v: &SupportVector<i64>,
    ) -> Result<SupportVector<i64>> {
        let mut out = SupportVector::<i64>::zero();
        for i in 0..7 {
            for j in 0..7 {
                let s = u.0[i].checked_mul(v.0[j]).ok_or(Error::IntegerOverflow)?;
                if s == 0 {
                    continue;
                }
                for k in 0..7 {
                    let t = s
                        .checked_mul(self.c[i][j][k])
                        .ok_or(Error::IntegerOverflow)?;
                    out.0[k] = out.0[k].checked_add(t).ok_or(Error::IntegerOverflow)?;
                }
            }
        }
        Ok(out)
    }

    /// Column `j` is `X·e_j`.
    pub fn left_mult_matrix(&self, x: SupportClass) -> [[i64; 7]; 7] {
        let mut m = [[0i64; 7]; 7];
        for j in 0..7 {
            for k in 0..7 {
                m[k][j] = self.c[x.index()][j][k];
            }
        }
        m
    }
}

pub fn sc_mul(
    u: &SupportVector<Rational>,
    v: &SupportVector<Rational>,
    q: u32,
) -> Result<SupportVector<Rational>> {
    Ok(Constants::at(q)?.mul(u, v))
}

pub fn left_mult_matrix(x: SupportClass, q: u32) -> Result<[[i64; 7]; 7]> {
    Ok(Constants::at(q)?.left_mult_matrix(x))
}

pub type Mat7 = [[i64; 7]; 7];

pub fn mat7_mul(a: &Mat7, b: &Mat7) -> Mat7 {
    let mut out = [[0i64; 7]; 7];
    for i in 0..7 {
        for k in 0..7 {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..7 {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Permutation matrix of the involution swapping `D+/D-` and `E+/E-`.
pub fn alpha_matrix() -> Mat7 {
    let mut m = [[0i64; 7]; 7];
    for x in SupportClass::ALL {
        m[x.sigma_tau().index()][x.index()] = 1;
    }
    m
}

/// The explicitly printed left-multiplication matrices (`B`, `C`, `D+`,
/// `E+`) and those obtained from them by the stated derivation rules.
pub fn displayed_left_mult_matrix(x: SupportClass, q: u32) -> Result<Mat7> {
    use SupportClass::*;
    check_q(q)?;
    let q = q as i64;
    let l = q - 1;
    let scale = |rows: [[i64; 7]; 7]| rows.map(|r| r.map(|v| v * l));
    Ok(match x {
        B => scale([
            [0, 1, 0, 0, 0, 0, 0],
            [1, 0, 0, 0, 0, 0, 0],
            [0, 0, 1, 0, 0, 0, 0],
            [0, 0, 0, 0, 0, 0, 1],
            [0, 0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 1, 0, 0],
            [0, 0, 0, 1, 0, 0, 0],
        ]),
        C => {
            let (a, b, c) = ((q - 1) * (q - 2), (q - 3) * (q - 4), (q - 2) * (q - 3));
            let (s, t) = (q - 3, q - 2);
            scale([
                [0, 0, a, 0, 0, 0, 0],
                [0, 0, a, 0, 0, 0, 0],
                [1, 1, b, s, s, s, s],
                [0, 0, c, 0, t, t, 0],
                [0, 0, c, t, 0, 0, t],
                [0, 0, c, t, 0, 0, t],
                [0, 0, c, 0, t, t, 0],
            ])
        }
        DPlus => scale([
            [0, 0, 0, q - 1, 0, 0, 0],
            [0, 0, 0, 0, 0, q - 1, 0],
            [0, 0, q - 3, 0, 1, 0, 1],
            [1, 0, 0, q - 2, 0, 0, 0],
            [0, 0, q - 2, 0, 0, 0, 1],
            [0, 1, 0, 0, 0, q - 2, 0],
            [0, 0, q - 2, 0, 1, 0, 0],
        ]),
        EPlus => scale([
            [0, 0, 0, 0, 0, 0, q - 1],
            [0, 0, 0, 0, q - 1, 0, 0],
            [0, 0, q - 3, 1, 0, 1, 0],
            [0, 1, 0, 0, 0, 0, q - 2],
            [0, 0, q - 2, 1, 0, 0, 0],
            [1, 0, 0, 0, q - 2, 0, 0],
            [0, 0, q - 2, 0, 0, 1, 0],
        ]),
        A => {
            let b2 = mat7_mul(
                &displayed_left_mult_matrix(B, q as u32)?,
                &displayed_left_mult_matrix(B, q as u32)?,
            );
            b2.map(|r| r.map(|v| v / l))
        }
        DMinus | EMinus => {
            let base = displayed_left_mult_matrix(x.sigma_tau(), q as u32)?;
            let a = alpha_matrix();
            mat7_mul(&mat7_mul(&a, &base), &a)
        }
    })
}

/// Entries where the displayed matrices disagree with the product table.
pub fn left_mult_discrepancies(q: u32) -> Result<Vec<String>> {
    let consts = Constants::at(q)?;
    let mut out = Vec::new();
    for x in SupportClass::ALL {
        let shown = displayed_left_mult_matrix(x, q)?;
        let table = consts.left_mult_matrix(x);
        for r in 0..7 {
            for c in 0..7 {
                if shown[r][c] != table[r][c] {
                    out.push(format!(
                        "M_{x}[{},{}] at q={q}: displayed {}, table {}",
                        SupportClass::from_index(r),
                        SupportClass::from_index(c),
                        shown[r][c],
                        table[r][c]
                    ));
                }
            }
        }
    }
    Ok(out)
}

/// Brute-force constants for one q, as produced by the group-ring oracle.
pub type OracleTable = [[SupportVector<i64>; 7]; 7];

/// Refits the table from brute-force products in SL2(F_q) at the sample q's.
pub fn interpolate_constants(samples: &[u32]) -> Result<StructureTable> {
    interpolate_with(samples, |q| {
        brute_force_constants(&MatrixGroup::new(GroupKind::Sl2, q)?)
    })
}

/// As [`interpolate_constants`] with an arbitrary source of sample data.
pub fn interpolate_with<F>(samples: &[u32], oracle: F) -> Result<StructureTable>
where
    F: Fn(u32) -> Result<OracleTable> + Sync,
{
    let mut qs: Vec<u32> = samples.to_vec();
    qs.sort_unstable();
    qs.dedup();
    if qs.len() < 3 || qs.iter().any(|&q| q <= 2) {
        return Err(Error::Underdetermined(samples.to_vec()));
    }
    let data: Vec<OracleTable> = qs.par_iter().map(|&q| oracle(q)).collect::<Result<_>>()?;
    let reference = structure_table();
    let mut out = [[SupportVector([QPolynomial::ZERO; 7]); 7]; 7];
    for x in SupportClass::ALL {
        for y in SupportClass::ALL {
            for z in SupportClass::ALL {
                let names = (x.label(), y.label(), z.label());
                let mut points = Vec::with_capacity(qs.len());
                for (s, &q) in qs.iter().enumerate() {
                    let v = data[s][x.index()][y.index()][z] as i128;
                    let d = q as i128 - 1;
                    if v % d != 0 {
                        return Err(Error::NonIntegerFit {
                            left: names.0,
                            right: names.1,
                            basis: names.2,
                            detail: format!("{v} at q={q} is not divisible by {d}"),
                        });
                    }
                    points.push((int(q as i128), int(v / d)));
                }
                let fit = lagrange(&points);
                if fit.iter().skip(3).any(|c| !c.is_zero()) || fit.iter().any(|c| !c.is_integer()) {
                    return Err(Error::NonIntegerFit {
                        left: names.0,
                        right: names.1,
                        basis: names.2,
                        detail: format!(
                            "fitted coefficients {:?}",
                            fit.iter().map(crate::rational::to_text).collect::<Vec<_>>()
                        ),
                    });
                }
                let mut g = QPolynomial::ZERO;
                for (k, c) in fit.iter().take(3).enumerate() {
                    g.0[k] = c.to_integer() as i64;
                }
                let full = g.mul(&QPolynomial::linear(1)).expect("degree <= 3");
                let expected = reference.entry(x, y)[z];
                if full != expected {
                    return Err(Error::InterpolationMismatch {
                        left: names.0,
                        right: names.1,
                        basis: names.2,
                        fitted: full.to_string(),
                        table: expected.to_string(),
                    });
                }
                out[x.index()][y.index()][z] = full;
            }
        }
    }
    Ok(StructureTable(out))
}

/// Coefficients (low degree first) of the interpolating polynomial.
fn lagrange(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let n = points.len();
    let mut coeffs = vec![Rational::zero(); n];
    for (s, &(xs, ys)) in points.iter().enumerate() {
        let mut basis = vec![Rational::zero(); n];
        basis[0] = int(1);
        let mut denom = int(1);
        for (t, &(xt, _)) in points.iter().enumerate() {
            if t == s {
                continue;
            }
            // basis *= (X - xt)
            for k in (0..n).rev() {
                let prev = if k > 0 {
                    basis[k - 1]
                } else {
                    Rational::zero()
                };
                basis[k] = prev - basis[k] * xt;
            }
            denom *= xs - xt;
        }
        let w = ys / denom;
        for k in 0..n {
            coeffs[k] += basis[k] * w;
        }
    }
    coeffs
}

/// Constants of a variant group compared with the SL2 constants times its factor.
#[derive(Debug, Clone)]
pub struct VariantReport {
    pub kind: GroupKind,
    pub q: u32,
    pub factor: Rational,
    pub pairs_checked: usize,
}

pub fn variant_factor(kind: GroupKind, q: u32) -> Rational {
    match kind {
        GroupKind::Sl2 => int(1),
        GroupKind::Psl2 => Rational::new(1, 2),
        GroupKind::Gl2 => int(q as i128 - 1),
        GroupKind::DetSubgroup(m) => int(m as i128),
    }
}

pub fn scaled_variant_check(q: u32, kind: GroupKind) -> Result<VariantReport> {
    check_q(q)?;
    let group = MatrixGroup::new(kind, q)?;
    let brute = brute_force_constants(&group)?;
    scaled_variant_compare(q, kind, &brute)
}

/// Compares given variant constants against the scaled closed forms.
pub fn scaled_variant_compare(
    q: u32,
    kind: GroupKind,
    brute: &OracleTable,
) -> Result<VariantReport> {
    let consts = Constants::at(q)?;
    let factor = variant_factor(kind, q);
    for x in SupportClass::ALL {
        for y in SupportClass::ALL {
            let got = brute[x.index()][y.index()];
            let want = consts.product(x, y).to_rational().scale(factor);
            if got.to_rational() != want {
                return Err(Error::VariantMismatch(format!(
                    "{kind}({q}) {x}*{y}: observed {:?}, expected {:?}",
                    got.0,
                    want.0.map(|c| crate::rational::to_text(&c))
                )));
            }
        }
    }
    Ok(VariantReport {
        kind,
        q,
        factor,
        pairs_checked: 49,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;
    use SupportClass::*;

    fn e(x: SupportClass) -> SupportVector<Rational> {
        SupportVector::basis(x)
    }

    #[test]
    fn polynomial_basics() {
        let p = QPolynomial::from_roots(&[1, 3, 4]);
        assert_eq!(p, QPolynomial([-12, 19, -8, 1]));
        assert_eq!(p.eval(5), 8);
        assert!(p.divisible_by_q_minus_1());
        assert_eq!(p.to_string(), "q^3 - 8q^2 + 19q - 12");
        assert_eq!(QPolynomial::linear(1).to_string(), "q - 1");
        assert!(QPolynomial([0, 0, 1, 0])
            .mul(&QPolynomial([0, 0, 1, 0]))
            .is_none());
    }

    #[test]
    fn table_examples() {
        let t = structure_table();
        let l = QPolynomial::linear(1);
        let bc = t.entry(B, C);
        assert_eq!(bc[C], l);
        assert!(bc.iter().filter(|(x, _)| *x != C).all(|(_, p)| p.is_zero()));
        let de = t.entry(DPlus, EPlus);
        assert_eq!(de[B], QPolynomial::from_roots(&[1, 1]));
        assert_eq!(de[EPlus], QPolynomial::from_roots(&[1, 2]));
        assert_eq!(t.entry(C, C)[A], QPolynomial::from_roots(&[1, 1, 2]));
    }

    #[test]
    fn every_entry_divisible_by_q_minus_1() {
        let t = structure_table();
        for row in t.0.iter() {
            for v in row {
                for p in v.0 {
                    assert!(p.divisible_by_q_minus_1(), "{p}");
                    assert!(p.degree().unwrap_or(0) <= 3);
                }
            }
        }
    }

    #[test]
    fn products() {
        assert_eq!(sc_mul(&e(B), &e(B), 5).unwrap(), e(A).scale(int(4)));
        assert_eq!(
            sc_mul(&e(C), &e(C), 3).unwrap(),
            e(A).add(&e(B)).scale(int(4))
        );
        let v = SupportVector([
            rat(1, 2),
            int(3),
            int(-1),
            int(0),
            rat(2, 3),
            int(5),
            int(7),
        ]);
        for q in [3, 4, 5] {
            assert_eq!(sc_mul(&e(A), &v, q).unwrap(), v.scale(int(q as i128 - 1)));
            assert_eq!(sc_mul(&v, &e(A), q).unwrap(), v.scale(int(q as i128 - 1)));
        }
        assert!(matches!(
            sc_mul(&e(B), &e(C), 2),
            Err(Error::UnsupportedField { .. })
        ));
    }

    #[test]
    fn left_mult_matrices() {
        let mb = left_mult_matrix(B, 3).unwrap();
        assert_eq!(mb, displayed_left_mult_matrix(B, 3).unwrap());
        assert_eq!(mb[2][2], 2);
        // (q-1)(q-3)(q-4) vanishes at q = 4
        assert_eq!(left_mult_matrix(C, 4).unwrap()[2][2], 0);
        for q in [3, 4, 5, 7] {
            let ma = left_mult_matrix(A, q).unwrap();
            for (i, row) in ma.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    assert_eq!(v, if i == j { q as i64 - 1 } else { 0 });
                }
            }
            assert_eq!(left_mult_discrepancies(q).unwrap(), Vec::<String>::new());
        }
        // column D+ of M_B carries (q-1) in row E-
        assert_eq!(mb[EMinus.index()][DPlus.index()], 2);
    }

    #[test]
    fn left_mult_is_multiplicative() {
        for q in [3, 4, 5] {
            let c = Constants::at(q).unwrap();
            for x in SupportClass::ALL {
                for y in SupportClass::ALL {
                    let lhs = mat7_mul(&c.left_mult_matrix(x), &c.left_mult_matrix(y));
                    let xy = c.product(x, y);
                    let mut rhs = [[0i64; 7]; 7];
                    for z in SupportClass::ALL {
                        let mz = c.left_mult_matrix(z);
                        for r in 0..7 {
                            for s in 0..7 {
                                rhs[r][s] += xy[z] * mz[r][s];
                            }
                        }
                    }
                    assert_eq!(lhs, rhs, "q={q} {x}{y}");
                }
            }
        }
    }

    #[test]
    fn involutions() {
        assert_eq!(sigma_tau(&e(DPlus)), e(DMinus));
        assert_eq!(sigma_tau(&e(A)), e(A));
        assert_eq!(inverse_star(&e(EPlus)), e(EMinus));
        assert_eq!(inverse_star(&e(DPlus)), e(DPlus));
        for q in [3, 4, 5, 8] {
            let c = Constants::at(q).unwrap();
            for x in SupportClass::ALL {
                for y in SupportClass::ALL {
                    let (ex, ey) = (e(x), e(y));
                    let xy = c.mul(&ex, &ey);
                    assert_eq!(sigma_tau(&xy), c.mul(&sigma_tau(&ex), &sigma_tau(&ey)));
                    assert_eq!(
                        inverse_star(&xy),
                        c.mul(&inverse_star(&ey), &inverse_star(&ex))
                    );
                }
            }
        }
    }

    #[test]
    fn associativity_on_basis_triples() {
        for q in [3, 5, 8] {
            let c = Constants::at(q).unwrap();
            for x in SupportClass::ALL {
                for y in SupportClass::ALL {
                    for z in SupportClass::ALL {
                        let l = c
                            .mul_int(&c.product(x, y), &SupportVector::basis(z))
                            .unwrap();
                        let r = c
                            .mul_int(&SupportVector::basis(x), &c.product(y, z))
                            .unwrap();
                        assert_eq!(l, r, "q={q} ({x}{y}){z}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_element() {
        for q in [3, 4, 7] {
            let id = e(A).scale(rat(1, q as i128 - 1));
            for x in SupportClass::ALL {
                assert_eq!(sc_mul(&id, &e(x), q).unwrap(), e(x));
                assert_eq!(sc_mul(&e(x), &id, q).unwrap(), e(x));
            }
        }
    }

    #[test]
    fn interpolation() {
        assert_eq!(
            interpolate_constants(&[3, 4, 5]).unwrap(),
            structure_table()
        );
        assert_eq!(
            interpolate_constants(&[3, 4]).unwrap_err(),
            Error::Underdetermined(vec![3, 4])
        );
        assert!(matches!(
            interpolate_constants(&[2, 3, 4]),
            Err(Error::Underdetermined(_))
        ));
    }

    #[test]
    fn interpolation_detects_corruption() {
        let oracle = |q: u32| -> Result<OracleTable> {
            let c = Constants::at(q)?;
            let mut t = [[SupportVector::<i64>::zero(); 7]; 7];
            for x in SupportClass::ALL {
                for y in SupportClass::ALL {
                    t[x.index()][y.index()] = c.product(x, y);
                }
            }
            if q == 5 {
                t[B.index()][B.index()][A] += 4;
            }
            Ok(t)
        };
        match interpolate_with(&[3, 4, 5, 7], oracle) {
            Err(Error::NonIntegerFit {
                left: "B",
                right: "B",
                basis: "A",
                ..
            })
            | Err(Error::InterpolationMismatch {
                left: "B",
                right: "B",
                basis: "A",
                ..
            }) => {}
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn lagrange_recovers_quadratic() {
        let pts: Vec<_> = [3, 4, 5]
            .iter()
            .map(|&x| (int(x), int(2 * x * x - 3 * x + 1)))
            .collect();
        assert_eq!(lagrange(&pts), vec![int(1), int(-3), int(2)]);
    }

    #[test]
    fn variants() {
        let p = scaled_variant_check(3, GroupKind::Psl2).unwrap();
        assert_eq!(p.factor, rat(1, 2));
        scaled_variant_check(3, GroupKind::Gl2).unwrap();
        scaled_variant_check(5, GroupKind::DetSubgroup(2)).unwrap();
        let g = MatrixGroup::new(GroupKind::Gl2, 3).unwrap();
        let mut brute = brute_force_constants(&g).unwrap();
        assert_eq!(brute[B.index()][B.index()][A], 4);
        brute[B.index()][B.index()][A] = 3;
        assert!(matches!(
            scaled_variant_compare(3, GroupKind::Gl2, &brute),
            Err(Error::VariantMismatch(_))
        ));
    }

    proptest! {
        #[test]
        fn sigma_tau_is_an_involution(v in prop::array::uniform7(-50i64..50)) {
            let v = SupportVector(v);
            prop_assert_eq!(sigma_tau(&sigma_tau(&v)), v);
        }

        #[test]
        fn sc_mul_is_associative(
            u in prop::array::uniform7(-4i64..=4),
            v in prop::array::uniform7(-4i64..=4),
            w in prop::array::uniform7(-4i64..=4),
            q in prop::sample::select(vec![3u32, 4, 5, 7, 8, 9]),
        ) {
            let c = Constants::at(q).unwrap();
            let (u, v, w) = (SupportVector(u), SupportVector(v), SupportVector(w));
            let l = c.mul_int(&c.mul_int(&u, &v).unwrap(), &w).unwrap();
            let r = c.mul_int(&u, &c.mul_int(&v, &w).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }
    }
}
