//! 2x2 matrix groups over GF(q): enumeration, support patterns and GL2
//! conjugacy-class types.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{ExtElem, FieldElem, GaloisField, QuadraticExtension};

/// The matrix `(a b / c d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mat2 {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Mat2 {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::new(
            FieldElem::ONE,
            FieldElem::ZERO,
            FieldElem::ZERO,
            FieldElem::ONE,
        )
    }

    pub fn scalar(x: FieldElem) -> Self {
        Mat2::new(x, FieldElem::ZERO, FieldElem::ZERO, x)
    }

    /// Lexicographic code in `(a, b, c, d)`; numeric order equals element order.
    #[inline]
    pub fn code(&self, q: u32) -> u32 {
        ((self.a.0 as u32 * q + self.b.0 as u32) * q + self.c.0 as u32) * q + self.d.0 as u32
    }

    pub fn from_code(code: u32, q: u32) -> Self {
        let d = code % q;
        let c = (code / q) % q;
        let b = (code / (q * q)) % q;
        let a = code / (q * q * q);
        Mat2::new(
            FieldElem(a as u16),
            FieldElem(b as u16),
            FieldElem(c as u16),
            FieldElem(d as u16),
        )
    }

    pub fn det(&self, f: &GaloisField) -> FieldElem {
        f.sub(f.mul(self.a, self.d), f.mul(self.b, self.c))
    }

    pub fn trace(&self, f: &GaloisField) -> FieldElem {
        f.add(self.a, self.d)
    }

    #[inline]
    pub fn mul(&self, rhs: &Mat2, f: &GaloisField) -> Mat2 {
        Mat2::new(
            f.add(f.mul(self.a, rhs.a), f.mul(self.b, rhs.c)),
            f.add(f.mul(self.a, rhs.b), f.mul(self.b, rhs.d)),
            f.add(f.mul(self.c, rhs.a), f.mul(self.d, rhs.c)),
            f.add(f.mul(self.c, rhs.b), f.mul(self.d, rhs.d)),
        )
    }

    pub fn inverse(&self, f: &GaloisField) -> Result<Mat2> {
        let s = f.inv(self.det(f))?;
        Ok(Mat2::new(
            f.mul(s, self.d),
            f.mul(s, f.neg(self.b)),
            f.mul(s, f.neg(self.c)),
            f.mul(s, self.a),
        ))
    }

    pub fn negate(&self, f: &GaloisField) -> Mat2 {
        Mat2::new(f.neg(self.a), f.neg(self.b), f.neg(self.c), f.neg(self.d))
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2::new(self.a, self.c, self.b, self.d)
    }
}

/// The seven support patterns of invertible 2x2 matrices, in basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SupportClass {
    A,
    B,
    C,
    #[serde(rename = "D+")]
    DPlus,
    #[serde(rename = "D-")]
    DMinus,
    #[serde(rename = "E+")]
    EPlus,
    #[serde(rename = "E-")]
    EMinus,
}

impl SupportClass {
    pub const ALL: [SupportClass; 7] = [
        SupportClass::A,
        SupportClass::B,
        SupportClass::C,
        SupportClass::DPlus,
        SupportClass::DMinus,
        SupportClass::EPlus,
        SupportClass::EMinus,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> SupportClass {
        Self::ALL[i]
    }

    pub fn label(self) -> &'static str {
        match self {
            SupportClass::A => "A",
            SupportClass::B => "B",
            SupportClass::C => "C",
            SupportClass::DPlus => "D+",
            SupportClass::DMinus => "D-",
            SupportClass::EPlus => "E+",
            SupportClass::EMinus => "E-",
        }
    }

    pub fn parse(s: &str) -> Option<SupportClass> {
        let norm = s
            .trim()
            .replace(['₊', 'p', 'P'], "+")
            .replace(['₋', 'm', 'M'], "-");
        Self::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(&norm))
    }

    /// Image under inversion: only `E+` and `E-` are swapped.
    pub fn inverse(self) -> SupportClass {
        match self {
            SupportClass::EPlus => SupportClass::EMinus,
            SupportClass::EMinus => SupportClass::EPlus,
            other => other,
        }
    }

    /// Image under inversion composed with transposition.
    pub fn sigma_tau(self) -> SupportClass {
        match self {
            SupportClass::DPlus => SupportClass::DMinus,
            SupportClass::DMinus => SupportClass::DPlus,
            SupportClass::EPlus => SupportClass::EMinus,
            SupportClass::EMinus => SupportClass::EPlus,
            other => other,
        }
    }
}

impl fmt::Display for SupportClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Support pattern of an invertible matrix.
pub fn support_of(g: &Mat2) -> Result<SupportClass> {
    use SupportClass::*;
    let nz = (
        !g.a.is_zero(),
        !g.b.is_zero(),
        !g.c.is_zero(),
        !g.d.is_zero(),
    );
    Ok(match nz {
        (true, false, false, true) => A,
        (false, true, true, false) => B,
        (true, true, true, true) => C,
        (true, true, false, true) => DPlus,
        (true, false, true, true) => DMinus,
        (true, true, true, false) => EPlus,
        (false, true, true, true) => EMinus,
        _ => return Err(Error::UnreachablePattern),
    })
}

pub fn enumerate_sl2(f: &GaloisField) -> Vec<Mat2> {
    enumerate_with_det(f, |d| d == FieldElem::ONE)
}

pub fn enumerate_gl2(f: &GaloisField) -> Vec<Mat2> {
    enumerate_with_det(f, |d| !d.is_zero())
}

/// All matrices whose determinant satisfies `keep`, in lexicographic order.
pub fn enumerate_with_det(f: &GaloisField, keep: impl Fn(FieldElem) -> bool) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in f.elements() {
        for b in f.elements() {
            for c in f.elements() {
                for d in f.elements() {
                    let m = Mat2::new(a, b, c, d);
                    if keep(m.det(f)) {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

/// Closed-form sizes of the seven support classes of SL2(F_q).
pub fn class_sizes(q: u32) -> Result<BTreeMap<SupportClass, u64>> {
    if q <= 2 {
        return Err(Error::UnsupportedField {
            q,
            reason: "support classes need q > 2",
        });
    }
    let q = q as u64;
    let s = (q - 1) * (q - 1);
    Ok(SupportClass::ALL
        .into_iter()
        .map(|c| {
            let n = match c {
                SupportClass::A | SupportClass::B => q - 1,
                SupportClass::C => s * (q - 2),
                _ => s,
            };
            (c, n)
        })
        .collect())
}

/// GL2 conjugacy-class type with its parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConjClassType {
    /// `x Id`.
    Central(FieldElem),
    /// Double eigenvalue `x`, not scalar.
    NonSemisimple(FieldElem),
    /// Distinct eigenvalues in GF(q), smaller one first.
    Split(FieldElem, FieldElem),
    /// Conjugate eigenvalues in GF(q^2) \ GF(q); the smaller of the pair.
    Elliptic(ExtElem),
}

/// Class types with the odd-q refinements (`c_{x,-x}` and trace-zero `d`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RefinedType {
    #[serde(rename = "a")]
    Central,
    #[serde(rename = "b")]
    NonSemisimple,
    #[serde(rename = "c_x,-x")]
    SplitOpposite,
    #[serde(rename = "c_x,y")]
    SplitGeneric,
    #[serde(rename = "d_tr=0")]
    EllipticTraceZero,
    #[serde(rename = "d_tr!=0")]
    EllipticGeneric,
}

impl RefinedType {
    pub const ALL: [RefinedType; 6] = [
        RefinedType::Central,
        RefinedType::NonSemisimple,
        RefinedType::SplitOpposite,
        RefinedType::SplitGeneric,
        RefinedType::EllipticTraceZero,
        RefinedType::EllipticGeneric,
    ];

    /// Types that occur for the given parity of q.
    pub fn present(q: u32) -> &'static [RefinedType] {
        if q % 2 == 0 {
            &[
                RefinedType::Central,
                RefinedType::NonSemisimple,
                RefinedType::SplitGeneric,
                RefinedType::EllipticGeneric,
            ]
        } else {
            &Self::ALL
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RefinedType::Central => "a",
            RefinedType::NonSemisimple => "b",
            RefinedType::SplitOpposite => "c_x,-x",
            RefinedType::SplitGeneric => "c_x,y",
            RefinedType::EllipticTraceZero => "d_tr=0",
            RefinedType::EllipticGeneric => "d_tr!=0",
        }
    }

    /// Closed-form number of classes and common class size.
    pub fn expected_count_and_size(self, q: u32) -> (u64, u64) {
        let q = q as u64;
        let odd = q % 2 == 1;
        match self {
            RefinedType::Central => (q - 1, 1),
            RefinedType::NonSemisimple => (q - 1, q * q - 1),
            RefinedType::SplitOpposite => (if odd { (q - 1) / 2 } else { 0 }, q * q + q),
            RefinedType::SplitGeneric => (
                if odd {
                    (q - 1) * (q - 3) / 2
                } else {
                    (q - 1) * (q - 2) / 2
                },
                q * q + q,
            ),
            RefinedType::EllipticTraceZero => (if odd { (q - 1) / 2 } else { 0 }, q * q - q),
            RefinedType::EllipticGeneric => (
                if odd {
                    (q - 1) * (q - 1) / 2
                } else {
                    q * (q - 1) / 2
                },
                q * q - q,
            ),
        }
    }
}

impl fmt::Display for RefinedType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl ConjClassType {
    pub fn refined(&self, f: &GaloisField, ext: &QuadraticExtension) -> RefinedType {
        match *self {
            ConjClassType::Central(_) => RefinedType::Central,
            ConjClassType::NonSemisimple(_) => RefinedType::NonSemisimple,
            ConjClassType::Split(x, y) => {
                if f.p() != 2 && y == f.neg(x) {
                    RefinedType::SplitOpposite
                } else {
                    RefinedType::SplitGeneric
                }
            }
            ConjClassType::Elliptic(xi) => {
                if ext.trace(xi).is_zero() {
                    RefinedType::EllipticTraceZero
                } else {
                    RefinedType::EllipticGeneric
                }
            }
        }
    }
}

/// Conjugacy-class type of an invertible matrix.
pub fn conj_type_of(g: &Mat2, f: &GaloisField, ext: &QuadraticExtension) -> ConjClassType {
    if g.b.is_zero() && g.c.is_zero() && g.a == g.d {
        return ConjClassType::Central(g.a);
    }
    let (tr, det) = (g.trace(f), g.det(f));
    let roots: Vec<FieldElem> = f
        .elements()
        .filter(|&t| f.add(f.sub(f.mul(t, t), f.mul(tr, t)), det).is_zero())
        .collect();
    match roots.as_slice() {
        [x] => ConjClassType::NonSemisimple(*x),
        [x, y] => ConjClassType::Split(*x.min(y), *x.max(y)),
        [] => {
            let xi = ext.roots_of_quadratic(tr, det);
            ConjClassType::Elliptic(
                *xi.iter()
                    .min()
                    .expect("irreducible quadratic splits in GF(q^2)"),
            )
        }
        _ => unreachable!("a quadratic has at most two roots"),
    }
}

/// One GL2 conjugacy class.
#[derive(Debug, Clone)]
pub struct ConjClass {
    pub kind: ConjClassType,
    pub refined: RefinedType,
    pub size: u64,
}

/// The conjugacy classes of GL2(F_q) with an element-to-class lookup.
#[derive(Debug, Clone)]
pub struct Gl2Classes {
    pub field: GaloisField,
    pub ext: QuadraticExtension,
    pub classes: Vec<ConjClass>,
    /// Class index by matrix code; `u32::MAX` for singular codes.
    class_of_code: Vec<u32>,
}

impl Gl2Classes {
    pub fn new(f: &GaloisField) -> Self {
        let ext = QuadraticExtension::new(f);
        let q = f.q();
        let mut by_type: BTreeMap<ConjClassType, usize> = BTreeMap::new();
        let mut classes: Vec<ConjClass> = Vec::new();
        let mut class_of_code = vec![u32::MAX; (q as usize).pow(4)];
        for g in enumerate_gl2(f) {
            let kind = conj_type_of(&g, f, &ext);
            let idx = *by_type.entry(kind).or_insert_with(|| {
                classes.push(ConjClass {
                    kind,
                    refined: kind.refined(f, &ext),
                    size: 0,
                });
                classes.len() - 1
            });
            classes[idx].size += 1;
            class_of_code[g.code(q) as usize] = idx as u32;
        }
        Gl2Classes {
            field: f.clone(),
            ext,
            classes,
            class_of_code,
        }
    }

    pub fn class_of(&self, g: &Mat2) -> usize {
        self.class_of_code[g.code(self.field.q()) as usize] as usize
    }

    /// Observed `(number of classes, class size)` per refined type; `None`
    /// size if sizes within a type disagree.
    pub fn counts_by_type(&self) -> BTreeMap<RefinedType, (u64, Option<u64>)> {
        let mut out: BTreeMap<RefinedType, (u64, Option<u64>)> = BTreeMap::new();
        for c in &self.classes {
            let e = out.entry(c.refined).or_insert((0, Some(c.size)));
            e.0 += 1;
            if e.1 != Some(c.size) {
                e.1 = None;
            }
        }
        out
    }
}

/// Brute-force class counts by type for GL2(F_q).
pub fn class_counts_by_type(q: u32) -> Result<BTreeMap<RefinedType, (u64, Option<u64>)>> {
    if q < 3 {
        return Err(Error::UnsupportedField {
            q,
            reason: "class bookkeeping needs q >= 3",
        });
    }
    let f = GaloisField::new(q as u64)?;
    Ok(Gl2Classes::new(&f).counts_by_type())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(x: u16) -> FieldElem {
        FieldElem(x)
    }

    #[test]
    fn group_orders() {
        for (q, sl, gl) in [(3u64, 24usize, 48usize), (4, 60, 180), (5, 120, 480)] {
            let f = GaloisField::new(q).unwrap();
            assert_eq!(enumerate_sl2(&f).len(), sl);
            assert_eq!(enumerate_gl2(&f).len(), gl);
        }
        let f2 = GaloisField::new(2).unwrap();
        assert_eq!(enumerate_sl2(&f2).len(), 6);
    }

    #[test]
    fn support_labels() {
        let f3 = GaloisField::new(3).unwrap();
        assert_eq!(support_of(&Mat2::identity()), Ok(SupportClass::A));
        let w = Mat2::new(fe(0), fe(1), f3.neg(fe(1)), fe(0));
        assert_eq!(support_of(&w), Ok(SupportClass::B));
        assert_eq!(
            support_of(&Mat2::new(fe(1), fe(1), fe(1), fe(2))),
            Ok(SupportClass::C)
        );
        assert_eq!(
            support_of(&Mat2::new(fe(1), fe(0), fe(0), fe(0))),
            Err(Error::UnreachablePattern)
        );
        assert_eq!(SupportClass::parse("D+"), Some(SupportClass::DPlus));
        assert_eq!(SupportClass::parse("em"), Some(SupportClass::EMinus));
    }

    #[test]
    fn support_partition_matches_closed_form() {
        for q in [3u64, 4, 5, 7, 8, 9] {
            let f = GaloisField::new(q).unwrap();
            let mut counts: BTreeMap<SupportClass, u64> = BTreeMap::new();
            for g in enumerate_sl2(&f) {
                *counts.entry(support_of(&g).unwrap()).or_default() += 1;
            }
            assert_eq!(counts, class_sizes(q as u32).unwrap(), "q = {q}");
            assert_eq!(counts.values().sum::<u64>(), q * q * q - q);
        }
        let s4 = class_sizes(4).unwrap();
        assert_eq!(
            (
                s4[&SupportClass::A],
                s4[&SupportClass::C],
                s4[&SupportClass::EMinus]
            ),
            (3, 18, 9)
        );
        assert_eq!(class_sizes(3).unwrap()[&SupportClass::C], 4);
        assert!(class_sizes(2).is_err());
    }

    #[test]
    fn inverse_closure_of_support_classes() {
        for q in [3u64, 4, 5, 8] {
            let f = GaloisField::new(q).unwrap();
            for g in enumerate_sl2(&f) {
                let s = support_of(&g).unwrap();
                let si = support_of(&g.inverse(&f).unwrap()).unwrap();
                assert_eq!(si, s.inverse());
                let st = support_of(&g.inverse(&f).unwrap().transpose()).unwrap();
                assert_eq!(st, s.sigma_tau());
            }
        }
    }

    #[test]
    fn conj_types() {
        let f5 = GaloisField::new(5).unwrap();
        let e5 = QuadraticExtension::new(&f5);
        let u = Mat2::new(fe(1), fe(1), fe(0), fe(1));
        assert_eq!(
            conj_type_of(&u, &f5, &e5),
            ConjClassType::NonSemisimple(fe(1))
        );
        let w5 = Mat2::new(fe(0), fe(1), f5.neg(fe(1)), fe(0));
        assert_eq!(
            conj_type_of(&w5, &f5, &e5),
            ConjClassType::Split(fe(2), fe(3))
        );
        let f7 = GaloisField::new(7).unwrap();
        let e7 = QuadraticExtension::new(&f7);
        let w7 = Mat2::new(fe(0), fe(1), f7.neg(fe(1)), fe(0));
        let t = conj_type_of(&w7, &f7, &e7);
        assert!(matches!(t, ConjClassType::Elliptic(_)));
        assert_eq!(t.refined(&f7, &e7), RefinedType::EllipticTraceZero);
    }

    #[test]
    fn class_counts_match_closed_form() {
        for q in [3u32, 4, 5, 7, 8, 9] {
            let counts = class_counts_by_type(q).unwrap();
            let q64 = q as u64;
            let mut total = 0;
            for &t in RefinedType::present(q) {
                let (n, size) = counts.get(&t).copied().unwrap_or((0, None));
                let (en, esize) = t.expected_count_and_size(q);
                assert_eq!(n, en, "q={q} {t}");
                if en > 0 {
                    assert_eq!(size, Some(esize), "q={q} {t}");
                }
                total += n * esize;
            }
            assert_eq!(total, (q64 * q64 - 1) * (q64 * q64 - q64));
        }
        let c5 = class_counts_by_type(5).unwrap();
        assert_eq!(c5[&RefinedType::SplitOpposite], (2, Some(30)));
        assert_eq!(
            c5[&RefinedType::SplitOpposite].0 + c5[&RefinedType::SplitGeneric].0,
            6
        );
    }

    #[test]
    fn conj_type_constant_on_orbits() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for q in [4u64, 5, 7] {
            let f = GaloisField::new(q).unwrap();
            let e = QuadraticExtension::new(&f);
            let gl = enumerate_gl2(&f);
            for _ in 0..20 {
                let g = gl[rng.random_range(0..gl.len())];
                let t = conj_type_of(&g, &f, &e);
                for _ in 0..100 {
                    let h = gl[rng.random_range(0..gl.len())];
                    let c = h.mul(&g, &f).mul(&h.inverse(&f).unwrap(), &f);
                    assert_eq!(conj_type_of(&c, &f, &e), t);
                }
            }
        }
    }
}
