//! Small dense matrices over the cyclotomic scalar, used for group
//! representations, module actions and braiding matrices.

use crate::cyclotomic::CycScalar;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<CycScalar>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![CycScalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zero(n, n);
        for k in 0..n {
            *m.at_mut(k, k) = CycScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<CycScalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &CycScalar {
        &self.data[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut CycScalar {
        &mut self.data[r * self.cols + c]
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let mut t = a.clone();
                    t.mul_assign_ref(b);
                    *out.at_mut(r, c) += t;
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// `Some(c)` when the matrix is `c * identity`.
    pub fn as_scalar(&self) -> Option<CycScalar> {
        if self.rows != self.cols || self.rows == 0 {
            return None;
        }
        let c = self.at(0, 0).clone();
        for r in 0..self.rows {
            for k in 0..self.cols {
                if r == k {
                    if *self.at(r, k) != c {
                        return None;
                    }
                } else if !self.at(r, k).is_zero() {
                    return None;
                }
            }
        }
        Some(c)
    }

    /// For a monomial matrix returns, per column `c`, the unique `(row, value)`
    /// with nonzero value.
    pub fn as_monomial(&self) -> Option<Vec<(usize, CycScalar)>> {
        let mut out = Vec::with_capacity(self.cols);
        for c in 0..self.cols {
            let mut hit = None;
            for r in 0..self.rows {
                if !self.at(r, c).is_zero() {
                    if hit.is_some() {
                        return None;
                    }
                    hit = Some((r, self.at(r, c).clone()));
                }
            }
            out.push(hit?);
        }
        Some(out)
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
