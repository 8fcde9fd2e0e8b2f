//! Dense exact linear algebra over `FieldElem`: reduced row echelon form,
//! rank, kernel bases, linear solves, and subspace dimension arithmetic.
//!
//! Elimination picks the first nonzero entry as pivot, never a "numerically
//! best" one, so every result is deterministic and reproducible.

use crate::error::AlgebraError;
use crate::scalars::{Field, FieldElem};

#[derive(Debug, Clone, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: Field,
    entries: Vec<FieldElem>, // row-major
}

impl ExactMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> ExactMatrix {
        ExactMatrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> ExactMatrix {
        let mut m = ExactMatrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FieldElem>>, cols: usize, field: Field) -> ExactMatrix {
        let mut m = ExactMatrix::zero(rows.len(), cols, field);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<FieldElem>], ambient: usize, field: Field) -> ExactMatrix {
        let mut m = ExactMatrix::zero(ambient, cols.len(), field);
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), ambient, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &FieldElem {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElem) {
        debug_assert_eq!(v.field(), self.field, "entry from a different field");
        self.entries[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut t = ExactMatrix::zero(self.cols, self.rows, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    pub fn column(&self, c: usize) -> Vec<FieldElem> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn mul_vec(&self, x: &[FieldElem]) -> Vec<FieldElem> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for c in 0..self.cols {
                    let e = self.at(r, c);
                    if !e.is_zero() && !x[c].is_zero() {
                        acc = acc.add(&e.mul(&x[c]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_mat(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = ExactMatrix::zero(self.rows, other.cols, self.field);
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
                    let v = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut out = ExactMatrix::zero(self.rows + other.rows, self.cols, self.field);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.at(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..self.cols {
                out.set(self.rows + r, c, other.at(r, c).clone());
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self).rank
    }
}

#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Reduced row echelon form by fraction-exact Gaussian elimination.
pub fn rref(m: &ExactMatrix) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..a.cols {
        if pivot_row >= a.rows {
            break;
        }
        let found = (pivot_row..a.rows).find(|&r| !a.at(r, col).is_zero());
        let r0 = match found {
            None => continue,
            Some(r) => r,
        };
        if r0 != pivot_row {
            for c in 0..a.cols {
                let x = a.at(r0, c).clone();
                let y = a.at(pivot_row, c).clone();
                a.set(r0, c, y);
                a.set(pivot_row, c, x);
            }
        }
        let inv = a.at(pivot_row, col).inv().expect("pivot nonzero");
        for c in col..a.cols {
            let v = a.at(pivot_row, c).mul(&inv);
            a.set(pivot_row, c, v);
        }
        for r in 0..a.rows {
            if r == pivot_row || a.at(r, col).is_zero() {
                continue;
            }
            let factor = a.at(r, col).clone();
            for c in col..a.cols {
                let v = a.at(r, c).sub(&factor.mul(a.at(pivot_row, c)));
                a.set(r, c, v);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    let rank = pivots.len();
    Rref {
        matrix: a,
        pivots,
        rank,
    }
}

/// Basis of the right null space; empty for injective matrices.
pub fn kernel_basis(m: &ExactMatrix) -> Vec<Vec<FieldElem>> {
    let field = m.field();
    let r = rref(m);
    let pivot_of_col: Vec<Option<usize>> = {
        let mut v = vec![None; m.cols()];
        for (i, &c) in r.pivots.iter().enumerate() {
            v[c] = Some(i);
        }
        v
    };
    let mut out = Vec::new();
    for free in 0..m.cols() {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut vec = vec![field.zero(); m.cols()];
        vec[free] = field.one();
        for (i, &pc) in r.pivots.iter().enumerate() {
            vec[pc] = r.matrix.at(i, free).neg();
        }
        out.push(vec);
    }
    out
}

/// Some solution of `M x = b` (free variables set to zero under rref
/// pivoting), or `None` when the system is inconsistent.
pub fn solve(m: &ExactMatrix, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
    Solver::new(m).solve(b)
}

/// Precomputed elimination record for solving `M x = b` against many right
/// hand sides: row-reduces `[M | I]` once.
#[derive(Debug, Clone)]
pub struct Solver {
    field: Field,
    cols: usize,
    rows: usize,
    pivots: Vec<usize>,
    reduced: ExactMatrix,   // rref of M
    transform: ExactMatrix, // E with E * M = reduced
}

impl Solver {
    pub fn new(m: &ExactMatrix) -> Solver {
        let field = m.field();
        let aug = {
            let mut a = ExactMatrix::zero(m.rows(), m.cols() + m.rows(), field);
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    a.set(r, c, m.at(r, c).clone());
                }
                a.set(r, m.cols() + r, field.one());
            }
            a
        };
        // eliminate by the M-columns only
        let mut a = aug;
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols() {
            if pivot_row >= a.rows() {
                break;
            }
            let found = (pivot_row..a.rows()).find(|&r| !a.at(r, col).is_zero());
            let r0 = match found {
                None => continue,
                Some(r) => r,
            };
            if r0 != pivot_row {
                for c in 0..a.cols() {
                    let x = a.at(r0, c).clone();
                    let y = a.at(pivot_row, c).clone();
                    a.set(r0, c, y);
                    a.set(pivot_row, c, x);
                }
            }
            let inv = a.at(pivot_row, col).inv().expect("pivot nonzero");
            for c in 0..a.cols() {
                let v = a.at(pivot_row, c).mul(&inv);
                a.set(pivot_row, c, v);
            }
            for r in 0..a.rows() {
                if r == pivot_row || a.at(r, col).is_zero() {
                    continue;
                }
                let factor = a.at(r, col).clone();
                for c in 0..a.cols() {
                    let v = a.at(r, c).sub(&factor.mul(a.at(pivot_row, c)));
                    a.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let mut reduced = ExactMatrix::zero(m.rows(), m.cols(), field);
        let mut transform = ExactMatrix::zero(m.rows(), m.rows(), field);
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                reduced.set(r, c, a.at(r, c).clone());
            }
            for c in 0..m.rows() {
                transform.set(r, c, a.at(r, m.cols() + c).clone());
            }
        }
        Solver {
            field,
            cols: m.cols(),
            rows: m.rows(),
            pivots,
            reduced,
            transform,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn solve(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        assert_eq!(b.len(), self.rows);
        let c = self.transform.mul_vec(b);
        // consistency: rows beyond the rank must vanish
        if c.iter().skip(self.rank()).any(|v| !v.is_zero()) {
            return None;
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (i, &pc) in self.pivots.iter().enumerate() {
            x[pc] = c[i].clone();
        }
        Some(x)
    }

    /// Coordinates of `b` over the pivot columns of the original matrix,
    /// i.e. the solution restricted to pivot positions.
    pub fn coords(&self, b: &[FieldElem]) -> Option<Vec<FieldElem>> {
        let x = self.solve(b)?;
        Some(self.pivots.iter().map(|&c| x[c].clone()).collect())
    }

    /// Right null space basis read off the stored echelon form.
    pub fn kernel_basis(&self) -> Vec<Vec<FieldElem>> {
        let mut pivot_of_col = vec![None; self.cols];
        for (i, &c) in self.pivots.iter().enumerate() {
            pivot_of_col[c] = Some(i);
        }
        let mut out = Vec::new();
        for free in 0..self.cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut vec = vec![self.field.zero(); self.cols];
            vec[free] = self.field.one();
            for (i, &pc) in self.pivots.iter().enumerate() {
                vec[pc] = self.reduced.at(i, free).neg();
            }
            out.push(vec);
        }
        out
    }
}

/// Dimension of the span of a vector list.
pub fn span_rank(vectors: &[Vec<FieldElem>], ambient: usize, field: Field) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    ExactMatrix::from_cols(vectors, ambient, field).rank()
}

/// `(dim U, dim V, dim(U+V), dim(U∩V))` for spans inside one ambient space.
pub fn subspace_dims(
    u: &[Vec<FieldElem>],
    v: &[Vec<FieldElem>],
    ambient: usize,
    field: Field,
) -> Result<(usize, usize, usize, usize), AlgebraError> {
    for w in u.iter().chain(v) {
        if w.len() != ambient {
            return Err(AlgebraError::AmbientMismatch(format!(
                "vector of length {} in ambient dimension {ambient}",
                w.len()
            )));
        }
    }
    let du = span_rank(u, ambient, field);
    let dv = span_rank(v, ambient, field);
    let mut all = u.to_vec();
    all.extend(v.iter().cloned());
    let dsum = span_rank(&all, ambient, field);
    Ok((du, dv, dsum, du + dv - dsum))
}
