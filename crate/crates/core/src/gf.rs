//! Finite fields GF(p^k) and their quadratic extensions.
//!
//! Elements are stored by their canonical index: the coefficient tuple
//! `(c_0, .., c_{k-1})` of the reduced polynomial representative read as the
//! base-`p` integer `c_0 + c_1 p + .. + c_{k-1} p^{k-1}`. Enumerating indices
//! `0..q` is the canonical element order, and every "least element with
//! property X" choice in the crate refers to it.
//!
//! The defining modulus is the least monic irreducible polynomial of degree
//! `k` under the same encoding of its non-leading coefficients, so tables are
//! bit-reproducible.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, identified by its canonical index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElem(pub u16);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Splits `q` as `p^k`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let (mut rest, mut k) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p as u32, k))
}

#[derive(Debug)]
struct Tables {
    p: u32,
    k: u32,
    q: u32,
    /// Non-leading coefficients `m_0..m_{k-1}` of the monic modulus.
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// Descriptor of GF(q); cheap to clone and shareable across threads.
#[derive(Clone)]
pub struct GaloisField(Arc<Tables>);

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}) [p={}, k={}, modulus={:?}]",
            self.q(),
            self.p(),
            self.k(),
            self.0.modulus
        )
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.q == other.0.q && self.0.modulus == other.0.modulus)
    }
}
impl Eq for GaloisField {}

fn digits(mut n: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = n % p;
            n /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over GF(p); coefficient
/// vectors are lowest degree first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r.pop().unwrap();
        if lead != 0 {
            let off = r.len() - dm;
            for (i, &c) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + p - (lead * c) % p) % p;
            }
        }
    }
    r
}

fn is_irreducible(non_leading: &[u32], p: u32) -> bool {
    let k = non_leading.len() as u32;
    let mut f = non_leading.to_vec();
    f.push(1);
    for d in 1..=k / 2 {
        for code in 0..p.pow(d) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(&f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl GaloisField {
    /// Builds GF(q) with the least monic irreducible modulus.
    pub fn new(q: u64) -> Result<Self> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        if q > u16::MAX as u64 {
            return Err(Error::UnsupportedField {
                q: q as u32,
                reason: "field too large for table arithmetic",
            });
        }
        let q = q as u32;
        let modulus = (0..p.pow(k))
            .map(|code| digits(code, p, k))
            .find(|m| is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");

        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        let mut full_mod = modulus.clone();
        full_mod.push(1);
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&sum, p) as u16;
                let mut prod = vec![0u32; (2 * k - 1) as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut red = poly_rem(&prod, &full_mod, p);
                red.resize(k as usize, 0);
                mul[(a * q + b) as usize] = undigits(&red, p) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[(a * q + b) as usize] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| {
                if a == 0 {
                    0
                } else {
                    (1..q).find(|&b| mul[(a * q + b) as usize] == 1).unwrap() as u16
                }
            })
            .collect();
        Ok(GaloisField(Arc::new(Tables {
            p,
            k,
            q,
            modulus,
            add,
            mul,
            neg,
            inv,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    /// Non-leading coefficients of the monic modulus, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.add[a.index() * self.0.q as usize + b.index()])
    }
    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.0.mul[a.index() * self.0.q as usize + b.index()])
    }
    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.0.neg[a.index()])
    }
    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            Err(Error::ZeroInverse)
        } else {
            Ok(FieldElem(self.0.inv[a.index()]))
        }
    }
    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }
    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let (mut base, mut acc) = (a, FieldElem::ONE);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u16)
    }

    /// Coefficients of the polynomial representative, lowest degree first.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        digits(a.0 as u32, self.0.p, self.0.k)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.0.q as u16).map(FieldElem)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.0.q as u16).map(FieldElem)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Option<u32> {
        if a.is_zero() {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != FieldElem::ONE {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// Least element of multiplicative order `q - 1`.
    pub fn units_generator(&self) -> FieldElem {
        self.units()
            .find(|&a| self.order(a) == Some(self.q() - 1))
            .expect("GF(q)^* is cyclic")
    }

    /// Quadratic character: `+1` on nonzero squares, `-1` on non-squares, `0` at zero.
    pub fn legendre(&self, a: FieldElem) -> Result<i8> {
        if self.0.p == 2 {
            return Err(Error::EvenCharacteristic(self.q()));
        }
        if a.is_zero() {
            return Ok(0);
        }
        let e = self.pow(a, ((self.q() - 1) / 2) as u64);
        Ok(if e == FieldElem::ONE { 1 } else { -1 })
    }

    /// Discrete logarithms base `gen`; entry 0 is unused.
    pub fn log_table(&self, gen: FieldElem) -> Vec<u32> {
        let mut table = vec![0u32; self.q() as usize];
        let mut x = FieldElem::ONE;
        for e in 0..self.q() - 1 {
            table[x.index()] = e;
            x = self.mul(x, gen);
        }
        table
    }

    /// Unique square root in characteristic 2 (Frobenius is bijective).
    pub fn sqrt_char2(&self, a: FieldElem) -> Option<FieldElem> {
        self.elements().find(|&x| self.mul(x, x) == a)
    }

    pub fn scalar(&self, value: FieldElem) -> FieldScalar {
        FieldScalar {
            field: self.clone(),
            value,
        }
    }
}

/// Field element bundled with its descriptor, for the checked arithmetic API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldScalar {
    pub field: GaloisField,
    pub value: FieldElem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// Checked arithmetic on descriptor-carrying scalars.
pub fn arith(op: ArithOp, x: &FieldScalar, y: Option<&FieldScalar>) -> Result<FieldScalar> {
    let f = &x.field;
    let other = |y: Option<&FieldScalar>| -> Result<FieldElem> {
        let y = y.ok_or(Error::Config("binary operation needs two operands".into()))?;
        if &y.field != f {
            return Err(Error::DescriptorMismatch {
                left: f.q(),
                right: y.field.q(),
            });
        }
        Ok(y.value)
    };
    let value = match op {
        ArithOp::Add => f.add(x.value, other(y)?),
        ArithOp::Mul => f.mul(x.value, other(y)?),
        ArithOp::Neg => f.neg(x.value),
        ArithOp::Inv => f.inv(x.value)?,
    };
    Ok(f.scalar(value))
}

/// Element of GF(q^2) = GF(q)[t]/(t^2 + m_1 t + m_0), index `c_0 + q c_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExtElem(pub u32);

/// The quadratic extension of a base field, with its own tables.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    base: GaloisField,
    /// `(m_0, m_1)` of the monic modulus.
    modulus: (FieldElem, FieldElem),
    mul: Arc<Vec<u32>>,
}

impl QuadraticExtension {
    pub fn new(base: &GaloisField) -> Self {
        let q = base.q();
        // least (m_0 + q m_1) such that t^2 + m_1 t + m_0 has no root
        let modulus = (0..q * q)
            .map(|code| (FieldElem((code % q) as u16), FieldElem((code / q) as u16)))
            .find(|&(m0, m1)| {
                base.elements().all(|t| {
                    let v = base.add(base.add(base.mul(t, t), base.mul(m1, t)), m0);
                    !v.is_zero()
                })
            })
            .expect("irreducible quadratic exists");
        let n = (q * q) as usize;
        let mut mul = vec![0u32; n * n];
        let (m0, m1) = modulus;
        for a in 0..n {
            let (a0, a1) = (
                FieldElem((a as u32 % q) as u16),
                FieldElem((a as u32 / q) as u16),
            );
            for b in 0..n {
                let (b0, b1) = (
                    FieldElem((b as u32 % q) as u16),
                    FieldElem((b as u32 / q) as u16),
                );
                // t^2 = -m_1 t - m_0
                let hi = base.mul(a1, b1);
                let c0 = base.sub(base.mul(a0, b0), base.mul(hi, m0));
                let c1 = base.sub(
                    base.add(base.mul(a0, b1), base.mul(a1, b0)),
                    base.mul(hi, m1),
                );
                mul[a * n + b] = c0.0 as u32 + q * c1.0 as u32;
            }
        }
        QuadraticExtension {
            base: base.clone(),
            modulus,
            mul: Arc::new(mul),
        }
    }

    pub fn base(&self) -> &GaloisField {
        &self.base
    }
    pub fn modulus(&self) -> (FieldElem, FieldElem) {
        self.modulus
    }
    pub fn order(&self) -> u32 {
        self.base.q() * self.base.q()
    }

    pub fn parts(&self, x: ExtElem) -> (FieldElem, FieldElem) {
        let q = self.base.q();
        (FieldElem((x.0 % q) as u16), FieldElem((x.0 / q) as u16))
    }
    pub fn from_parts(&self, c0: FieldElem, c1: FieldElem) -> ExtElem {
        ExtElem(c0.0 as u32 + self.base.q() * c1.0 as u32)
    }

    pub fn embed(&self, x: FieldElem) -> ExtElem {
        ExtElem(x.0 as u32)
    }
    /// Inverse of [`embed`](Self::embed) on the image.
    pub fn restrict(&self, x: ExtElem) -> Option<FieldElem> {
        let (c0, c1) = self.parts(x);
        c1.is_zero().then_some(c0)
    }

    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let ((a0, a1), (b0, b1)) = (self.parts(a), self.parts(b));
        self.from_parts(self.base.add(a0, b0), self.base.add(a1, b1))
    }
    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let n = self.order() as usize;
        ExtElem(self.mul[a.0 as usize * n + b.0 as usize])
    }
    pub fn pow(&self, a: ExtElem, mut e: u64) -> ExtElem {
        let (mut base, mut acc) = (a, ExtElem(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = ExtElem> {
        (0..self.order()).map(ExtElem)
    }

    pub fn frobenius(&self, x: ExtElem) -> ExtElem {
        self.pow(x, self.base.q() as u64)
    }
    /// `x^(q+1)`, which lies in the base field.
    pub fn norm(&self, x: ExtElem) -> FieldElem {
        self.restrict(self.mul(x, self.frobenius(x)))
            .expect("norm lies in the base field")
    }
    /// `x + x^q`, which lies in the base field.
    pub fn trace(&self, x: ExtElem) -> FieldElem {
        self.restrict(self.add(x, self.frobenius(x)))
            .expect("trace lies in the base field")
    }

    pub fn multiplicative_order(&self, a: ExtElem) -> Option<u32> {
        if a.0 == 0 {
            return None;
        }
        let mut x = a;
        let mut n = 1;
        while x != ExtElem(1) {
            x = self.mul(x, a);
            n += 1;
        }
        Some(n)
    }

    /// Least element of order `q^2 - 1`.
    pub fn units_generator(&self) -> ExtElem {
        let n = self.order() - 1;
        (1..self.order())
            .map(ExtElem)
            .find(|&a| self.multiplicative_order(a) == Some(n))
            .unwrap()
    }

    /// Discrete logarithms base `gen`; entry 0 is unused.
    pub fn log_table(&self, gen: ExtElem) -> Vec<u32> {
        let mut table = vec![0u32; self.order() as usize];
        let mut x = ExtElem(1);
        for e in 0..self.order() - 1 {
            table[x.0 as usize] = e;
            x = self.mul(x, gen);
        }
        table
    }

    /// Roots of `t^2 - tr t + det` in the extension.
    pub fn roots_of_quadratic(&self, tr: FieldElem, det: FieldElem) -> Vec<ExtElem> {
        let (mtr, d) = (self.embed(self.base.neg(tr)), self.embed(det));
        self.elements()
            .filter(|&t| self.add(self.add(self.mul(t, t), self.mul(mtr, t)), d).0 == 0)
            .collect()
    }
}
