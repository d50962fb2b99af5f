//! Exact rational linear algebra.
//!
//! Everything here is plain Gauss-Jordan elimination over `BigRational`.
//! The reduced row echelon form of a matrix is unique, so the particular
//! solution (free variables set to zero) and the kernel basis returned below
//! do not depend on pivot order; the column scan is still fixed left to right.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::{Error, Rational};

/// Sparse rational matrix. Absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Builds a matrix from dense rows. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = QMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, v.clone());
            }
        }
        Ok(m)
    }

    /// Convenience constructor from small integers, used mostly in tests.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        QMatrix::from_rows(&dense).expect("rows of equal length")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.entries
            .get(&(r, c))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Sets an entry; storing zero removes it.
    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r}, {c}) out of range"
        );
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    /// Adds `v` to an entry.
    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        if v.is_zero() {
            return;
        }
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows];
        for (&(r, c), a) in &self.entries {
            if !v[c].is_zero() {
                out[r] += a * &v[c];
            }
        }
        Ok(out)
    }

    fn dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            d[r][c] = v.clone();
        }
        d
    }
}

/// Result of [`solve_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSolution {
    /// `None` when the system is inconsistent.
    pub particular: Option<Vec<Rational>>,
    pub kernel: Vec<Vec<Rational>>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }
}

struct Reduced {
    /// Rows of the reduced augmented matrix, only the first `rank` are nonzero
    /// in the coefficient part.
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

/// Gauss-Jordan on `[m | rhs...]`, pivoting only on the first `ncols` columns.
fn reduce(mut a: Vec<Vec<Rational>>, ncols: usize) -> Reduced {
    let nrows = a.len();
    let width = a.first().map_or(ncols, Vec::len);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..ncols {
        if prow == nrows {
            break;
        }
        let Some(found) = (prow..nrows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, prow);
        let inv = a[prow][col].recip();
        if !inv.is_one() {
            for v in a[prow][col..width].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
        }
        let pivot_row = a[prow].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == prow || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for j in col..width {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(col);
        prow += 1;
    }
    Reduced { rows: a, pivots }
}

fn kernel_from(red: &Reduced, ncols: usize) -> Vec<Vec<Rational>> {
    let mut is_pivot = vec![false; ncols];
    for &p in &red.pivots {
        is_pivot[p] = true;
    }
    (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -red.rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// Solves `m · x = b` exactly. Free variables of the particular solution are
/// zero; the kernel basis has one vector per free column, in ascending order.
pub fn solve_linear(m: &QMatrix, b: &[Rational]) -> Result<LinearSolution, Error> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: b.len(),
        });
    }
    let ncols = m.cols();
    let mut aug = m.dense();
    for (row, rhs) in aug.iter_mut().zip(b) {
        row.push(rhs.clone());
    }
    let red = reduce(aug, ncols);
    let rank = red.pivots.len();
    let consistent = red.rows[rank..].iter().all(|row| row[ncols].is_zero());
    let particular = consistent.then(|| {
        let mut x = vec![Rational::zero(); ncols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.rows[i][ncols].clone();
        }
        x
    });
    Ok(LinearSolution {
        particular,
        kernel: kernel_from(&red, ncols),
    })
}

/// Exact null space basis of `m`.
pub fn kernel_basis(m: &QMatrix) -> Vec<Vec<Rational>> {
    let red = reduce(m.dense(), m.cols());
    kernel_from(&red, m.cols())
}

pub fn rank(m: &QMatrix) -> usize {
    reduce(m.dense(), m.cols()).pivots.len()
}
