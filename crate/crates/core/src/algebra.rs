//! Finite-dimensional algebras over Q given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::solve_in_span;
use crate::rational::{int, to_text, Rational};
use crate::scring::Constants;
use crate::sl2::SupportClass;

pub type Vector = Vec<Rational>;

/// `e_i e_j = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteAlgebra {
    pub names: Vec<String>,
    c: Vec<Rational>,
}

impl FiniteAlgebra {
    pub fn from_fn(names: Vec<String>, f: impl Fn(usize, usize, usize) -> Rational) -> Self {
        let n = names.len();
        let mut c = Vec::with_capacity(n * n * n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    c.push(f(i, j, k));
                }
            }
        }
        FiniteAlgebra { names, c }
    }

    /// The support-class ring at one q.
    pub fn support_ring(q: u32) -> Result<Self> {
        let consts = Constants::at(q)?;
        let names = SupportClass::ALL
            .iter()
            .map(|x| x.label().to_string())
            .collect();
        Ok(Self::from_fn(names, |i, j, k| {
            int(consts.c[i][j][k] as i128)
        }))
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        let n = self.dim();
        self.c[(i * n + j) * n + k]
    }

    pub fn basis(&self, i: usize) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = int(1);
        v
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn mul(&self, u: &[Rational], v: &[Rational]) -> Vector {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let s = u[i] * v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c[(i * n + j) * n + k];
                    if !c.is_zero() {
                        *o += s * c;
                    }
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.constant(i, j, k) == self.constant(j, i, k)))
        })
    }

    pub fn is_associative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    let (ei, ej, ek) = (self.basis(i), self.basis(j), self.basis(k));
                    self.mul(&self.mul(&ei, &ej), &ek) == self.mul(&ei, &self.mul(&ej, &ek))
                })
            })
        })
    }

    /// Subalgebra spanned by `basis` (coordinates in `self`), with its own
    /// structure constants; fails if the span is not closed.
    pub fn restrict(&self, names: &[&str], basis: &[Vector]) -> Result<FiniteAlgebra> {
        let m = basis.len();
        let mut c = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                let p = self.mul(&basis[i], &basis[j]);
                let coords = solve_in_span(basis, &p).ok_or_else(|| {
                    Error::NotClosed(format!("{}*{} leaves the span", names[i], names[j]))
                })?;
                c.extend(coords);
            }
        }
        Ok(FiniteAlgebra {
            names: names.iter().map(|s| s.to_string()).collect(),
            c,
        })
    }

    /// The scalar `λ` with `idem · e_i = λ idem`.
    pub fn character_value(&self, idem: &[Rational], i: usize) -> Result<Rational> {
        let p = self.mul(idem, &self.basis(i));
        let Some(k) = idem.iter().position(|c| !c.is_zero()) else {
            return Err(Error::NotRankOne("zero idempotent".into()));
        };
        let lambda = p[k] / idem[k];
        if p.iter().zip(idem).all(|(a, b)| *a == *b * lambda) {
            Ok(lambda)
        } else {
            Err(Error::NotRankOne(format!(
                "multiplication by {} gives [{}]",
                self.names[i],
                p.iter().map(to_text).collect::<Vec<_>>().join(", ")
            )))
        }
    }

    /// Sum of `k · e_i` over the given pairs.
    pub fn combo(&self, terms: &[(usize, Rational)]) -> Vector {
        let mut v = vec![Rational::zero(); self.dim()];
        for &(i, k) in terms {
            v[i] += k;
        }
        v
    }
}

pub fn add(u: &[Rational], v: &[Rational]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

pub fn sub(u: &[Rational], v: &[Rational]) -> Vector {
    u.iter().zip(v).map(|(a, b)| a - b).collect()
}

pub fn scale(u: &[Rational], s: Rational) -> Vector {
    u.iter().map(|a| a * s).collect()
}

pub fn is_zero(u: &[Rational]) -> bool {
    u.iter().all(Zero::is_zero)
}

pub fn text(u: &[Rational]) -> Vec<String> {
    u.iter().map(to_text).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn support_ring_is_associative_with_identity() {
        for q in [3, 4, 5] {
            let alg = FiniteAlgebra::support_ring(q).unwrap();
            assert!(alg.is_associative());
            assert!(!alg.is_commutative());
            let id = scale(&alg.basis(0), rat(1, q as i128 - 1));
            for i in 0..7 {
                assert_eq!(alg.mul(&id, &alg.basis(i)), alg.basis(i));
            }
        }
    }

    #[test]
    fn restriction() {
        let alg = FiniteAlgebra::support_ring(5).unwrap();
        let d = alg.combo(&[(3, int(1)), (4, int(1))]);
        let e = alg.combo(&[(5, int(1)), (6, int(1))]);
        let sub = alg
            .restrict(
                &["A", "B", "C", "D", "E"],
                &[alg.basis(0), alg.basis(1), alg.basis(2), d, e],
            )
            .unwrap();
        assert!(sub.is_commutative());
        assert!(sub.is_associative());
        let err = alg
            .restrict(
                &["A", "B", "D+"],
                &[alg.basis(0), alg.basis(1), alg.basis(3)],
            )
            .unwrap_err();
        assert!(matches!(err, Error::NotClosed(_)));
    }

    #[test]
    fn character_value_requires_rank_one() {
        let alg = FiniteAlgebra::support_ring(3).unwrap();
        let a = alg.basis(0);
        assert_eq!(alg.character_value(&a, 0).unwrap(), int(2));
        assert!(matches!(
            alg.character_value(&a, 1),
            Err(Error::NotRankOne(_))
        ));
    }
}
