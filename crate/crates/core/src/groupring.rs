//! Sparse integer group algebras of SL2, PSL2 and GL2 over GF(q).

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FieldElem, GaloisField};
use crate::scring::SupportVector;
use crate::sl2::{enumerate_gl2, enumerate_with_det, support_of, Mat2, SupportClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupKind {
    Sl2,
    /// Odd q only; each coset `{g, -g}` is stored once.
    Psl2,
    Gl2,
    /// Matrices whose determinant lies in the subgroup of order `m` of GF(q)*.
    DetSubgroup(u32),
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Sl2 => f.write_str("SL2"),
            GroupKind::Psl2 => f.write_str("PSL2"),
            GroupKind::Gl2 => f.write_str("GL2"),
            GroupKind::DetSubgroup(m) => write!(f, "GL2[det^{m}=1]"),
        }
    }
}

/// A finite matrix group with index lookup by matrix code.
pub struct MatrixGroup {
    kind: GroupKind,
    field: GaloisField,
    elements: Vec<Mat2>,
    index: Vec<u32>,
    identity: u32,
    classes: [Vec<u32>; 7],
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.field.q())
    }
}

const MISSING: u32 = u32::MAX;

impl MatrixGroup {
    pub fn new(kind: GroupKind, q: u32) -> Result<Arc<Self>> {
        let field = GaloisField::new(q as u64)?;
        Self::over(kind, &field)
    }

    pub fn over(kind: GroupKind, field: &GaloisField) -> Result<Arc<Self>> {
        let q = field.q();
        let elements = match kind {
            GroupKind::Sl2 => enumerate_with_det(field, |d| d == FieldElem::ONE),
            GroupKind::Gl2 => enumerate_gl2(field),
            GroupKind::Psl2 => {
                if q % 2 == 0 {
                    return Err(Error::UnsupportedField {
                        q,
                        reason: "PSL2 differs from SL2 only for odd q",
                    });
                }
                enumerate_with_det(field, |d| d == FieldElem::ONE)
                    .into_iter()
                    .filter(|g| g.code(q) < g.negate(field).code(q))
                    .collect()
            }
            GroupKind::DetSubgroup(m) => {
                if m == 0 || (q - 1) % m != 0 {
                    return Err(Error::Config(format!(
                        "{m} does not divide q - 1 = {}",
                        q - 1
                    )));
                }
                // determinants in the order-m subgroup of GF(q)^*
                enumerate_with_det(field, |d| {
                    !d.is_zero() && field.pow(d, m as u64) == FieldElem::ONE
                })
            }
        };
        let mut index = vec![MISSING; (q as usize).pow(4)];
        for (i, g) in elements.iter().enumerate() {
            index[g.code(q) as usize] = i as u32;
            if kind == GroupKind::Psl2 {
                index[g.negate(field).code(q) as usize] = i as u32;
            }
        }
        let identity = index[Mat2::identity().code(q) as usize];
        let mut classes: [Vec<u32>; 7] = Default::default();
        if q > 2 {
            for (i, g) in elements.iter().enumerate() {
                classes[support_of(g)?.index()].push(i as u32);
            }
        }
        Ok(Arc::new(MatrixGroup {
            kind,
            field: field.clone(),
            elements,
            index,
            identity,
            classes,
        }))
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.q()
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: u32) -> &Mat2 {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn index_of(&self, g: &Mat2) -> Option<u32> {
        let i = self.index[g.code(self.q()) as usize];
        (i != MISSING).then_some(i)
    }

    #[inline]
    pub fn mul_idx(&self, x: u32, y: u32) -> u32 {
        let g = self.elements[x as usize].mul(&self.elements[y as usize], &self.field);
        self.index[g.code(self.q()) as usize]
    }

    pub fn class_members(&self, label: SupportClass) -> &[u32] {
        &self.classes[label.index()]
    }

    fn same(&self, other: &MatrixGroup) -> bool {
        self.kind == other.kind && self.field == other.field
    }

    fn tag(&self) -> String {
        format!("{self:?}")
    }
}

/// Finite formal sum `Σ c_g g` with `i64` coefficients.
#[derive(Clone)]
pub struct GroupAlgebraElement {
    group: Arc<MatrixGroup>,
    coeffs: BTreeMap<u32, i64>,
}

impl fmt::Debug for GroupAlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{{{} terms}}", self.group, self.coeffs.len())
    }
}

impl PartialEq for GroupAlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.same(&other.group) && self.coeffs == other.coeffs
    }
}

impl GroupAlgebraElement {
    pub fn zero(group: &Arc<MatrixGroup>) -> Self {
        GroupAlgebraElement {
            group: group.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(group: &Arc<MatrixGroup>) -> Self {
        Self::from_terms(group, [(group.identity, 1)])
    }

    /// Builds from `(element index, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        group: &Arc<MatrixGroup>,
        terms: impl IntoIterator<Item = (u32, i64)>,
    ) -> Self {
        let mut coeffs = BTreeMap::new();
        for (g, c) in terms {
            *coeffs.entry(g).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        GroupAlgebraElement {
            group: group.clone(),
            coeffs,
        }
    }

    /// Single matrix; `None` if it is not in the group.
    pub fn from_matrix(group: &Arc<MatrixGroup>, g: &Mat2) -> Option<Self> {
        group.index_of(g).map(|i| Self::from_terms(group, [(i, 1)]))
    }

    pub fn group(&self) -> &Arc<MatrixGroup> {
        &self.group
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, i64)> + '_ {
        self.coeffs.iter().map(|(&g, &c)| (g, c))
    }

    pub fn coeff(&self, g: u32) -> i64 {
        self.coeffs.get(&g).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (&g, &c) in &self.coeffs {
            let v = c.checked_mul(k).ok_or(Error::IntegerOverflow)?;
            if v != 0 {
                out.insert(g, v);
            }
        }
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: out,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(&self.group, &other.group)?;
        let mut out = self.coeffs.clone();
        for (&g, &c) in &other.coeffs {
            let e = out.entry(g).or_insert(0);
            *e = e.checked_add(c).ok_or(Error::IntegerOverflow)?;
        }
        out.retain(|_, c| *c != 0);
        Ok(GroupAlgebraElement {
            group: self.group.clone(),
            coeffs: out,
        })
    }
}

fn check_same(a: &MatrixGroup, b: &MatrixGroup) -> Result<()> {
    if a.same(b) {
        Ok(())
    } else {
        Err(Error::GroupMismatch {
            left: a.tag(),
            right: b.tag(),
        })
    }
}

fn support_ops_allowed(group: &MatrixGroup) -> Result<()> {
    if group.q() <= 2 {
        return Err(Error::UnsupportedField {
            q: group.q(),
            reason: "support classes need q > 2",
        });
    }
    Ok(())
}

/// Sum of all group elements with the given support pattern.
pub fn class_sum(group: &Arc<MatrixGroup>, label: SupportClass) -> Result<GroupAlgebraElement> {
    support_ops_allowed(group)?;
    Ok(GroupAlgebraElement::from_terms(
        group,
        group.class_members(label).iter().map(|&g| (g, 1)),
    ))
}

/// Product in the group algebra with overflow checks.
pub fn convolve(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    check_same(&x.group, &y.group)?;
    let group = &x.group;
    let mut acc = vec![0i64; group.order()];
    let mut touched = vec![false; group.order()];
    for (&h, &a) in &x.coeffs {
        for (&k, &b) in &y.coeffs {
            let g = group.mul_idx(h, k) as usize;
            let t = a.checked_mul(b).ok_or(Error::IntegerOverflow)?;
            acc[g] = acc[g].checked_add(t).ok_or(Error::IntegerOverflow)?;
            touched[g] = true;
        }
    }
    let coeffs = acc
        .into_iter()
        .enumerate()
        .filter(|&(g, c)| touched[g] && c != 0)
        .map(|(g, c)| (g as u32, c))
        .collect();
    Ok(GroupAlgebraElement {
        group: group.clone(),
        coeffs,
    })
}

/// Coefficients on the seven class sums, if `x` is constant on every class.
pub fn decompose_support(x: &GroupAlgebraElement) -> Result<SupportVector<i64>> {
    support_ops_allowed(&x.group)?;
    let mut out = SupportVector::zero();
    for label in SupportClass::ALL {
        let members = x.group.class_members(label);
        let first = x.coeff(members[0]);
        if let Some(&other) = members.iter().find(|&&g| x.coeff(g) != first) {
            let fmt = |g: u32| {
                let m = x.group.element(g);
                format!("[{},{};{},{}]", m.a.0, m.b.0, m.c.0, m.d.0)
            };
            return Err(Error::NotInSpan {
                class: label.label(),
                witness: format!(
                    "{} has coefficient {first}, {} has {}",
                    fmt(members[0]),
                    fmt(other),
                    x.coeff(other)
                ),
            });
        }
        out[label] = first;
    }
    Ok(out)
}

/// `Σ_{λ ≠ 0} diag(1, λ)` in GL2.
pub fn diagonal_f(group: &Arc<MatrixGroup>) -> Result<GroupAlgebraElement> {
    if group.kind != GroupKind::Gl2 {
        return Err(Error::GroupMismatch {
            left: group.tag(),
            right: "GL2".into(),
        });
    }
    let f = &group.field;
    let terms = f.units().map(|l| {
        (
            group
                .index_of(&Mat2::new(
                    FieldElem::ONE,
                    FieldElem::ZERO,
                    FieldElem::ZERO,
                    l,
                ))
                .expect("diagonal is invertible"),
            1,
        )
    });
    Ok(GroupAlgebraElement::from_terms(group, terms))
}

pub fn augmentation(x: &GroupAlgebraElement) -> Result<i64> {
    x.coeffs
        .values()
        .try_fold(0i64, |s, &c| s.checked_add(c).ok_or(Error::IntegerOverflow))
}

/// Image under the map induced by matrix identity (inclusion SL2 -> GL2,
/// projection SL2 -> PSL2); fails if some matrix is not in `target`.
pub fn map_into(x: &GroupAlgebraElement, target: &Arc<MatrixGroup>) -> Result<GroupAlgebraElement> {
    if x.group.field != target.field {
        return Err(Error::GroupMismatch {
            left: x.group.tag(),
            right: target.tag(),
        });
    }
    let mut terms = Vec::with_capacity(x.coeffs.len());
    for (&g, &c) in &x.coeffs {
        let i = target
            .index_of(x.group.element(g))
            .ok_or_else(|| Error::GroupMismatch {
                left: x.group.tag(),
                right: target.tag(),
            })?;
        terms.push((i, c));
    }
    let mut out = GroupAlgebraElement::zero(target);
    for (i, c) in terms {
        let e = out.coeffs.entry(i).or_insert(0);
        *e = e.checked_add(c).ok_or(Error::IntegerOverflow)?;
    }
    out.coeffs.retain(|_, c| *c != 0);
    Ok(out)
}

/// Outcome of multiplying two class sums by brute force.
#[derive(Debug, Clone)]
pub struct PairProduct {
    pub left: SupportClass,
    pub right: SupportClass,
    pub outcome: std::result::Result<SupportVector<i64>, Error>,
}

/// All 49 products of class sums, computed in parallel.
pub fn class_sum_products(group: &Arc<MatrixGroup>) -> Result<Vec<PairProduct>> {
    support_ops_allowed(group)?;
    let sums: Vec<GroupAlgebraElement> = SupportClass::ALL
        .iter()
        .map(|&l| class_sum(group, l))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..7).flat_map(|i| (0..7).map(move |j| (i, j))).collect();
    Ok(pairs
        .into_par_iter()
        .map(|(i, j)| PairProduct {
            left: SupportClass::from_index(i),
            right: SupportClass::from_index(j),
            outcome: convolve(&sums[i], &sums[j]).and_then(|p| decompose_support(&p)),
        })
        .collect())
}

/// Brute-force structure constants `[X][Y] -> SupportVector`; fails on the
/// first product that leaves the span.
pub fn brute_force_constants(group: &Arc<MatrixGroup>) -> Result<[[SupportVector<i64>; 7]; 7]> {
    let mut out = [[SupportVector::zero(); 7]; 7];
    for p in class_sum_products(group)? {
        out[p.left.index()][p.right.index()] = p.outcome?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use SupportClass::*;

    fn sl2(q: u32) -> Arc<MatrixGroup> {
        MatrixGroup::new(GroupKind::Sl2, q).unwrap()
    }

    fn sv(v: [i64; 7]) -> SupportVector<i64> {
        SupportVector(v)
    }

    #[test]
    fn class_sum_sizes() {
        let g4 = sl2(4);
        assert_eq!(class_sum(&g4, C).unwrap().len(), 18);
        assert_eq!(class_sum(&g4, A).unwrap().len(), 3);
        let p3 = MatrixGroup::new(GroupKind::Psl2, 3).unwrap();
        assert_eq!(p3.order(), 12);
        assert_eq!(class_sum(&p3, B).unwrap().len(), 1);
        assert!(class_sum(&sl2(2), A).is_err());
        assert!(MatrixGroup::new(GroupKind::Psl2, 4).is_err());
    }

    #[test]
    fn products_from_the_table() {
        let g3 = sl2(3);
        let b = class_sum(&g3, B).unwrap();
        let bb = convolve(&b, &b).unwrap();
        assert_eq!(bb, class_sum(&g3, A).unwrap().scale(2).unwrap());
        let id = GroupAlgebraElement::identity(&g3);
        assert_eq!(convolve(&b, &id).unwrap(), b);

        let g4 = sl2(4);
        let dd = convolve(
            &class_sum(&g4, DPlus).unwrap(),
            &class_sum(&g4, DMinus).unwrap(),
        )
        .unwrap();
        assert_eq!(decompose_support(&dd).unwrap(), sv([0, 0, 3, 0, 0, 0, 3]));
    }

    #[test]
    fn decomposition() {
        let g5 = sl2(5);
        let c = class_sum(&g5, C).unwrap();
        assert_eq!(decompose_support(&c).unwrap(), sv([0, 0, 1, 0, 0, 0, 0]));
        // (q-1)^2(q-2)(A+B) + (q-1)(q-3)(q-4)C + (q-1)(q-2)(D+E) at q = 5
        let cc = convolve(&c, &c).unwrap();
        assert_eq!(
            decompose_support(&cc).unwrap(),
            sv([48, 48, 8, 24, 24, 24, 24])
        );
        let single = GroupAlgebraElement::identity(&g5);
        match decompose_support(&single) {
            Err(Error::NotInSpan { class, .. }) => assert_eq!(class, "A"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn diagonal_element() {
        let gl4 = MatrixGroup::new(GroupKind::Gl2, 4).unwrap();
        let f = diagonal_f(&gl4).unwrap();
        assert_eq!(convolve(&f, &f).unwrap(), f.scale(3).unwrap());
        assert!(diagonal_f(&sl2(4)).is_err());

        let g3 = sl2(3);
        let gl3 = MatrixGroup::new(GroupKind::Gl2, 3).unwrap();
        let f3 = diagonal_f(&gl3).unwrap();
        let b = map_into(&class_sum(&g3, B).unwrap(), &gl3).unwrap();
        assert_eq!(convolve(&f3, &b).unwrap(), convolve(&b, &f3).unwrap());
    }

    #[test]
    fn augmentation_values() {
        let g4 = sl2(4);
        let c = class_sum(&g4, C).unwrap();
        assert_eq!(augmentation(&c).unwrap(), 18);
        assert_eq!(augmentation(&convolve(&c, &c).unwrap()).unwrap(), 324);
    }

    #[test]
    fn mismatched_groups() {
        let a = GroupAlgebraElement::identity(&sl2(3));
        let b = GroupAlgebraElement::identity(&sl2(5));
        assert!(matches!(convolve(&a, &b), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn overflow_is_reported() {
        let g3 = sl2(3);
        let big = GroupAlgebraElement::from_terms(&g3, [(0, i64::MAX / 2 + 1)]);
        let two = GroupAlgebraElement::from_terms(&g3, [(g3.identity, 2)]);
        assert_eq!(convolve(&big, &two).unwrap_err(), Error::IntegerOverflow);
    }

    #[test]
    fn every_product_stays_in_the_span() {
        for q in [3, 4, 5, 7, 8, 9] {
            for p in class_sum_products(&sl2(q)).unwrap() {
                assert!(
                    p.outcome.is_ok(),
                    "q={q} {}*{}: {:?}",
                    p.left,
                    p.right,
                    p.outcome
                );
            }
        }
    }

    #[test]
    fn variant_groups() {
        assert_eq!(
            MatrixGroup::new(GroupKind::DetSubgroup(2), 5)
                .unwrap()
                .order(),
            240
        );
        assert!(MatrixGroup::new(GroupKind::DetSubgroup(3), 5).is_err());
        assert_eq!(
            MatrixGroup::new(GroupKind::DetSubgroup(2), 7)
                .unwrap()
                .order(),
            672
        );
        assert_eq!(
            MatrixGroup::new(GroupKind::DetSubgroup(2), 3)
                .unwrap()
                .order(),
            48
        );
        let p5 = MatrixGroup::new(GroupKind::Psl2, 5).unwrap();
        let proj = map_into(&class_sum(&sl2(5), C).unwrap(), &p5).unwrap();
        assert_eq!(proj, class_sum(&p5, C).unwrap().scale(2).unwrap());
    }

    fn element(q: u32) -> impl Strategy<Value = Vec<(u32, i64)>> {
        let n = q * q * q - q;
        prop::collection::vec((0..n, -5i64..=5), 0..6)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn convolution_is_associative_and_bilinear(x in element(3), y in element(3), z in element(3), k in -3i64..=3) {
            let g = sl2(3);
            let (x, y, z) = (
                GroupAlgebraElement::from_terms(&g, x),
                GroupAlgebraElement::from_terms(&g, y),
                GroupAlgebraElement::from_terms(&g, z),
            );
            let l = convolve(&convolve(&x, &y).unwrap(), &z).unwrap();
            let r = convolve(&x, &convolve(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            let lin = convolve(&x.scale(k).unwrap().add(&y).unwrap(), &z).unwrap();
            let split = convolve(&x, &z).unwrap().scale(k).unwrap().add(&convolve(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(lin, split);
            let ax = augmentation(&x).unwrap();
            let ay = augmentation(&y).unwrap();
            prop_assert_eq!(augmentation(&convolve(&x, &y).unwrap()).unwrap(), ax * ay);
        }
    }
}
