//! Rational scalars and small vectors of them.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Renders `p/q` in lowest terms, or just `p` for integers.
pub fn fmt_rat(q: &Rational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p`, `p/q`, or `-p/q`.
pub fn parse_rat(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(n))
    }
}

/// Dense rational vector.
pub type QVec = Vec<Rational>;

pub fn qvec_zero(r: usize) -> QVec {
    vec![Rational::zero(); r]
}

pub fn qvec_add(a: &[Rational], b: &[Rational]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn qvec_sub(a: &[Rational], b: &[Rational]) -> QVec {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn qvec_scale(c: &Rational, a: &[Rational]) -> QVec {
    a.iter().map(|x| c * x).collect()
}

pub fn qvec_is_zero(a: &[Rational]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Rational>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, a: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<QVec>) -> Self {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            a.extend(row);
        }
        QMat { rows: r, cols: c, a }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: Vec<QVec>) -> Self {
        let c = cols.len();
        let r = if c == 0 { 0 } else { cols[0].len() };
        let mut m = QMat::zero(r, c);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), r);
            for i in 0..r {
                *m.at_mut(i, j) = col[i].clone();
            }
        }
        m
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.a[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.a[i * self.cols + j]
    }

    pub fn mul_vec(&self, v: &[Rational]) -> QVec {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for j in 0..self.cols {
                    s += self.at(i, j) * &v[j];
                }
                s
            })
            .collect()
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.at(i, k).clone();
                if aik.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = &aik * other.at(k, j);
                    *m.at_mut(i, j) += prod;
                }
            }
        }
        m
    }

    /// Rank via fraction-free-ish Gaussian elimination (exact).
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let pivot = (row..m.rows).find(|&i| !m.at(i, col).is_zero());
            let Some(p) = pivot else { continue };
            m.swap_rows(row, p);
            let inv = m.at(row, col).clone();
            for i in (row + 1)..m.rows {
                if m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col) / &inv;
                for j in col..m.cols {
                    let sub = &f * m.at(row, j);
                    *m.at_mut(i, j) -= sub;
                }
            }
            rank += 1;
            row += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.a.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn det(&self) -> Rational {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m.at(i, col).is_zero());
            let Some(p) = pivot else { return Rational::zero() };
            if p != col {
                m.swap_rows(col, p);
                det = -det;
            }
            let piv = m.at(col, col).clone();
            det *= &piv;
            for i in (col + 1)..n {
                if m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col) / &piv;
                for j in col..n {
                    let sub = &f * m.at(col, j);
                    *m.at_mut(i, j) -= sub;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&i| !m.at(i, col).is_zero())?;
            m.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let piv = m.at(col, col).clone();
            for j in 0..n {
                *m.at_mut(col, j) /= &piv;
                *inv.at_mut(col, j) /= &piv;
            }
            for i in 0..n {
                if i == col || m.at(i, col).is_zero() {
                    continue;
                }
                let f = m.at(i, col).clone();
                for j in 0..n {
                    let s1 = &f * m.at(col, j);
                    *m.at_mut(i, j) -= s1;
                    let s2 = &f * inv.at(col, j);
                    *inv.at_mut(i, j) -= s2;
                }
            }
        }
        Some(inv)
    }

    /// Solves `A x = b` when `A` is square and invertible.
    pub fn solve(&self, b: &[Rational]) -> Option<QVec> {
        Some(self.inverse()?.mul_vec(b))
    }

    pub fn det_sign(&self) -> i8 {
        let d = self.det();
        if d.is_zero() {
            0
        } else if d.is_positive() {
            1
        } else {
            -1
        }
    }
}
