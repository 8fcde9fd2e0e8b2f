//! A coordinate-level view of a graded Artinian algebra, shared by inverse
//! systems and the structural fibered products / connected sums, so that
//! Lefschetz and Jordan-type analysis can run on any of them.

use crate::hilbert::HilbertFunction;
use crate::inverse_system::InverseSystem;
use crate::linalg::{self, ExactMatrix};
use crate::poly::{Side, SparsePoly};
use crate::scalars::{Field, FieldElem};

/// Graded Artinian algebra with fixed per-degree bases.  Elements of degree
/// `i` are coordinate vectors of length `dim(i)`.
pub trait GradedArtinian {
    fn field(&self) -> Field;
    fn socle_degree(&self) -> u32;
    fn dim(&self, i: u32) -> usize;

    /// Size of the coefficient family used to describe linear forms: the
    /// weight-one variables for a quotient of `Q`, the degree-one basis for
    /// structural products.
    fn linear_family_size(&self) -> usize;

    /// Degree-one class of a coefficient vector over the linear family.
    fn linear_class(&self, coeffs: &[FieldElem]) -> Vec<FieldElem>;

    /// Product of two coordinate vectors; the result has degree `i + j`
    /// (empty above the socle degree).
    fn multiply_coords(&self, i: u32, a: &[FieldElem], j: u32, b: &[FieldElem]) -> Vec<FieldElem>;

    fn hilbert(&self) -> HilbertFunction {
        HilbertFunction::new((0..=self.socle_degree()).map(|i| self.dim(i)).collect())
    }

    fn total_dim(&self) -> usize {
        self.hilbert().total()
    }

    /// Matrix of multiplication by a linear form from degree `i` to `i + 1`.
    fn mult_linear_matrix(&self, ell: &[FieldElem], i: u32) -> ExactMatrix {
        let field = self.field();
        let cols = self.dim(i);
        let rows = self.dim(i + 1);
        let mut out = ExactMatrix::zero(rows, cols, field);
        if rows == 0 || cols == 0 {
            return out;
        }
        let ell_class = self.linear_class(ell);
        for c in 0..cols {
            let mut unit = vec![field.zero(); cols];
            unit[c] = field.one();
            let prod = self.multiply_coords(1, &ell_class, i, &unit);
            for (r, v) in prod.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        out
    }

    /// Whether the algebra is generated in degree one.
    fn is_standard_graded(&self) -> bool {
        let field = self.field();
        for j in 2..=self.socle_degree() {
            let target = self.dim(j);
            if target == 0 {
                continue;
            }
            let mut products = Vec::new();
            for u in unit_vectors(field, self.dim(1)) {
                for v in unit_vectors(field, self.dim(j - 1)) {
                    products.push(self.multiply_coords(1, &u, j - 1, &v));
                }
            }
            if linalg::span_rank(&products, target, field) != target {
                return false;
            }
        }
        true
    }
}

pub(crate) fn unit_vectors(field: Field, n: usize) -> Vec<Vec<FieldElem>> {
    (0..n)
        .map(|c| {
            let mut v = vec![field.zero(); n];
            v[c] = field.one();
            v
        })
        .collect()
}

/// A degreewise algebra generating set: coordinates of classes spanning a
/// complement of the decomposables `Σ A_w · A_{j-w}` in each degree.
pub fn algebra_generators(alg: &dyn GradedArtinian) -> Vec<(u32, Vec<FieldElem>)> {
    let field = alg.field();
    let mut out = Vec::new();
    for j in 1..=alg.socle_degree() {
        let dim_j = alg.dim(j);
        if dim_j == 0 {
            continue;
        }
        let mut decomposable = Vec::new();
        for w in 1..j {
            for u in unit_vectors(field, alg.dim(w)) {
                for v in unit_vectors(field, alg.dim(j - w)) {
                    decomposable.push(alg.multiply_coords(w, &u, j - w, &v));
                }
            }
        }
        let offset = decomposable.len();
        let mut cols = decomposable;
        cols.extend(unit_vectors(field, dim_j));
        let reduced = linalg::rref(&ExactMatrix::from_cols(&cols, dim_j, field));
        for &p in &reduced.pivots {
            if p >= offset {
                out.push((j, cols[p].clone()));
            }
        }
    }
    out
}

/// Per-degree socle dimensions `(0 : m_A)_i`, computed against a degreewise
/// generating set of the maximal ideal.
pub fn socle_dims(alg: &dyn GradedArtinian) -> Vec<usize> {
    let field = alg.field();
    let d = alg.socle_degree();
    let gens = algebra_generators(alg);
    (0..=d)
        .map(|i| {
            let dim_i = alg.dim(i);
            if dim_i == 0 {
                return 0;
            }
            let mut stacked: Option<ExactMatrix> = None;
            for (j, g) in &gens {
                if i + j > d {
                    continue;
                }
                let rows = alg.dim(i + j);
                let mut mat = ExactMatrix::zero(rows, dim_i, field);
                for (c, u) in unit_vectors(field, dim_i).iter().enumerate() {
                    let prod = alg.multiply_coords(i, u, *j, g);
                    for (r, v) in prod.into_iter().enumerate() {
                        mat.set(r, c, v);
                    }
                }
                stacked = Some(match stacked {
                    None => mat,
                    Some(s) => s.vstack(&mat),
                });
            }
            match stacked {
                None => dim_i,
                Some(s) => linalg::kernel_basis(&s).len(),
            }
        })
        .collect()
}

impl GradedArtinian for InverseSystem {
    fn field(&self) -> Field {
        InverseSystem::field(self)
    }

    fn socle_degree(&self) -> u32 {
        InverseSystem::socle_degree(self)
    }

    fn dim(&self, i: u32) -> usize {
        InverseSystem::dim(self, i)
    }

    fn linear_family_size(&self) -> usize {
        self.grading().weight_one_vars().len()
    }

    fn linear_class(&self, coeffs: &[FieldElem]) -> Vec<FieldElem> {
        let vars = self.grading().weight_one_vars();
        assert_eq!(coeffs.len(), vars.len());
        let poly = SparsePoly::from_terms(
            vars.iter()
                .zip(coeffs)
                .map(|(&v, c)| (crate::poly::Monomial::var(self.grading().n(), v), c.clone())),
            Side::Ring,
        );
        if poly.is_zero() {
            return vec![InverseSystem::field(self).zero(); InverseSystem::dim(self, 1)];
        }
        let el = self
            .element_from_poly(&poly)
            .expect("linear form is homogeneous");
        self.coords(&el)
    }

    fn multiply_coords(&self, i: u32, a: &[FieldElem], j: u32, b: &[FieldElem]) -> Vec<FieldElem> {
        let x = self.element_from_coords(i, a);
        let y = self.element_from_coords(j, b);
        let prod = self.multiply(&x, &y);
        if prod.degree() > self.socle_degree() {
            return Vec::new();
        }
        self.coords(&prod)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, WeightedGrading};

    fn q() -> Field {
        Field::Rational
    }

    fn build(weights: Vec<u32>, terms: &[(&[u32], i64)]) -> InverseSystem {
        let f = SparsePoly::from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), q().from_i64(*c))),
            Side::Dual,
        );
        InverseSystem::build(q(), WeightedGrading::new(weights), vec![f]).unwrap()
    }

    #[test]
    fn socle_of_gorenstein_quotient() {
        let a = build(vec![1, 1, 1], &[(&[2, 1, 0], 1), (&[0, 2, 1], -1)]);
        assert_eq!(socle_dims(&a), vec![0, 0, 0, 1]);
    }

    #[test]
    fn generators_of_nonstandard_algebra() {
        // weights (1,2), dual Z1^2 Z2 + Z2^2: generated by z1 and the
        // degree-2 class of z2
        let a = build(vec![1, 2], &[(&[2, 1], 1), (&[0, 2], 1)]);
        let gens = algebra_generators(&a);
        let degrees: Vec<u32> = gens.iter().map(|(d, _)| *d).collect();
        assert_eq!(degrees, vec![1, 2]);
        assert!(!a.is_standard_graded());
    }

    #[test]
    fn mult_matrix_matches_variable_action() {
        let a = build(vec![1, 1], &[(&[2, 2], 1)]);
        // ell = x: compare against the dedicated variable-multiplication matrix
        let ell = vec![q().one(), q().zero()];
        for i in 0..=3 {
            assert_eq!(a.mult_linear_matrix(&ell, i), a.mult_var_matrix(0, i));
        }
    }
}
