//! Small exact linear algebra over the rationals.

use num_traits::Zero;

use crate::rational::Rational;

/// Rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c] / pivot;
                for k in c..cols {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Coordinates of `target` in the span of `basis`, if it lies there.
pub fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let n = basis.len();
    let len = target.len();
    // augmented system: columns are basis vectors, last column the target
    let mut m: Vec<Vec<Rational>> = (0..len)
        .map(|k| {
            basis
                .iter()
                .map(|b| b[k])
                .chain(std::iter::once(target[k]))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..len).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c];
        for k in c..=n {
            m[r][k] /= pivot;
        }
        for i in 0..len {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for k in c..=n {
                    let t = m[r][k] * f;
                    m[i][k] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[n].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = m[row][n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn v(xs: &[i128]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rank_and_solve() {
        let rows = vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1])];
        assert_eq!(rank(&rows), 2);
        let basis = vec![v(&[1, 0, 1]), v(&[0, 1, 1])];
        assert_eq!(solve_in_span(&basis, &v(&[2, 3, 5])), Some(v(&[2, 3])));
        assert_eq!(solve_in_span(&basis, &v(&[2, 3, 4])), None);
    }
}
