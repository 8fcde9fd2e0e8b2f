//! Fibered products and connected sums built structurally inside `A ⊕ B`.
//!
//! The fibered product keeps explicit per-degree bases of the pullback
//! `{(a,b) : π_A(a) = π_B(b)}`; the connected sum quotients by the principal
//! ideal on the pair of Thom classes.  Both constructions verify their
//! defining short exact sequences degreewise as they are built: the Hilbert
//! identities are assertions here, not outputs.

use crate::algebra::{socle_dims, unit_vectors, GradedArtinian};
use crate::error::AlgebraError;
use crate::hilbert::HilbertFunction;
use crate::inverse_system::{AlgebraElement, InverseSystem};
use crate::linalg::{self, ExactMatrix, Solver};
use crate::scalars::{Field, FieldElem};
use crate::surjection::OrientedSurjection;
use std::sync::Arc;

fn same_target(pi_a: &OrientedSurjection, pi_b: &OrientedSurjection) -> bool {
    let ta = pi_a.target();
    let tb = pi_b.target();
    ta.field() == tb.field() && ta.grading() == tb.grading() && ta.duals() == tb.duals()
}

/// The pullback `A ×_T B` with explicit per-degree bases.
#[derive(Debug, Clone)]
pub struct FiberedProduct {
    pi_a: OrientedSurjection,
    pi_b: OrientedSurjection,
    socle_degree: u32,
    /// per degree: basis vectors in stacked `A_i ⊕ B_i` coordinates
    basis: Vec<Vec<Vec<FieldElem>>>,
    solvers: Vec<Solver>,
}

impl FiberedProduct {
    pub fn new(
        pi_a: OrientedSurjection,
        pi_b: OrientedSurjection,
    ) -> Result<FiberedProduct, AlgebraError> {
        if !same_target(&pi_a, &pi_b) {
            return Err(AlgebraError::AmbientMismatch(
                "surjections have different targets".into(),
            ));
        }
        let a = pi_a.source();
        let b = pi_b.source();
        if a.socle_degree() != b.socle_degree() {
            return Err(AlgebraError::DegreeMismatch(format!(
                "socle degrees {} and {} differ",
                a.socle_degree(),
                b.socle_degree()
            )));
        }
        let d = a.socle_degree();
        let t = pi_a.target();
        let field = a.field();
        let mut basis = Vec::new();
        let mut solvers = Vec::new();
        for i in 0..=d {
            let da = a.dim(i);
            let db = b.dim(i);
            let dt = t.dim(i);
            let vectors: Vec<Vec<FieldElem>> = if dt == 0 {
                unit_vectors(field, da + db)
            } else {
                // kernel of (pi_a, -pi_b) on A_i ⊕ B_i
                let mut mat = ExactMatrix::zero(dt, da + db, field);
                for (c, u) in unit_vectors(field, da).into_iter().enumerate() {
                    let img = t.coords(&pi_a.apply(&a.element_from_coords(i, &u)));
                    for (r, v) in img.into_iter().enumerate() {
                        mat.set(r, c, v);
                    }
                }
                for (c, u) in unit_vectors(field, db).into_iter().enumerate() {
                    let img = t.coords(&pi_b.apply(&b.element_from_coords(i, &u)));
                    for (r, v) in img.into_iter().enumerate() {
                        mat.set(r, da + c, v.neg());
                    }
                }
                linalg::kernel_basis(&mat)
            };
            // exactness of 0 -> A×_TB -> A⊕B -> T -> 0, degree by degree
            if vectors.len() != da + db - dt {
                return Err(AlgebraError::Internal(format!(
                    "fibered product dimension {} in degree {i}, expected {}",
                    vectors.len(),
                    da + db - dt
                )));
            }
            let solver = Solver::new(&ExactMatrix::from_cols(&vectors, da + db, field));
            basis.push(vectors);
            solvers.push(solver);
        }
        Ok(FiberedProduct {
            pi_a,
            pi_b,
            socle_degree: d,
            basis,
            solvers,
        })
    }

    pub fn a(&self) -> &Arc<InverseSystem> {
        self.pi_a.source()
    }

    pub fn b(&self) -> &Arc<InverseSystem> {
        self.pi_b.source()
    }

    pub fn t(&self) -> &Arc<InverseSystem> {
        self.pi_a.target()
    }

    pub fn pi_a(&self) -> &OrientedSurjection {
        &self.pi_a
    }

    pub fn pi_b(&self) -> &OrientedSurjection {
        &self.pi_b
    }

    /// Splits a fiber coordinate vector into its `A` and `B` components.
    pub fn components(&self, i: u32, coords: &[FieldElem]) -> (AlgebraElement, AlgebraElement) {
        let a = self.a();
        let b = self.b();
        let da = a.dim(i);
        let db = b.dim(i);
        let field = self.field();
        let mut stacked = vec![field.zero(); da + db];
        for (c, v) in coords.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            for (r, w) in self.basis[i as usize][c].iter().enumerate() {
                stacked[r] = stacked[r].add(&w.mul(v));
            }
        }
        (
            a.element_from_coords(i, &stacked[..da]),
            b.element_from_coords(i, &stacked[da..]),
        )
    }

    /// Fiber coordinates of a compatible pair, or `None` when
    /// `π_A(a) ≠ π_B(b)`.
    pub fn element_from_pair(
        &self,
        a_el: &AlgebraElement,
        b_el: &AlgebraElement,
    ) -> Option<Vec<FieldElem>> {
        let i = a_el.degree();
        assert_eq!(i, b_el.degree());
        if i > self.socle_degree {
            return Some(Vec::new());
        }
        let mut stacked = self.a().coords(a_el);
        stacked.extend(self.b().coords(b_el));
        self.solvers[i as usize].solve(&stacked)
    }

    /// The diagonal lift of a ring-side polynomial: the pair of its classes
    /// in `A` and `B`, which lies in the fiber whenever both surjections are
    /// substitutions of the same ambient ring.
    pub fn diagonal_class(
        &self,
        f: &crate::poly::SparsePoly,
    ) -> Result<Option<Vec<FieldElem>>, AlgebraError> {
        let a_el = self.a().element_from_poly(f)?;
        let b_el = self.b().element_from_poly(f)?;
        Ok(self.element_from_pair(&a_el, &b_el))
    }

    /// The pair of Thom classes `(τ_A, τ_B)` in fiber coordinates; errors when
    /// `π_A(τ_A) ≠ π_B(τ_B)`, the failure mode that rules out a connected sum.
    pub fn total_thom_class(&self) -> Result<Vec<FieldElem>, AlgebraError> {
        let tau_a = self.pi_a.thom_class();
        let tau_b = self.pi_b.thom_class();
        match self.element_from_pair(tau_a, tau_b) {
            Some(coords) => Ok(coords),
            None => {
                let t = self.t();
                let left = self.pi_a.apply(tau_a);
                let right = self.pi_b.apply(tau_b);
                Err(AlgebraError::NoTotalThomClass {
                    left: t.lift(&left).display(t.grading()),
                    right: t.lift(&right).display(t.grading()),
                })
            }
        }
    }
}

impl GradedArtinian for FiberedProduct {
    fn field(&self) -> Field {
        self.a().field()
    }

    fn socle_degree(&self) -> u32 {
        self.socle_degree
    }

    fn dim(&self, i: u32) -> usize {
        match self.basis.get(i as usize) {
            Some(b) => b.len(),
            None => 0,
        }
    }

    fn linear_family_size(&self) -> usize {
        self.dim(1)
    }

    fn linear_class(&self, coeffs: &[FieldElem]) -> Vec<FieldElem> {
        coeffs.to_vec()
    }

    fn multiply_coords(&self, i: u32, x: &[FieldElem], j: u32, y: &[FieldElem]) -> Vec<FieldElem> {
        let target = i + j;
        if target > self.socle_degree {
            return Vec::new();
        }
        let (a1, b1) = self.components(i, x);
        let (a2, b2) = self.components(j, y);
        let pa = self.a().multiply(&a1, &a2);
        let pb = self.b().multiply(&b1, &b2);
        self.element_from_pair(&pa, &pb)
            .expect("products of fiber elements stay in the fiber")
    }
}

/// The quotient `A #_T B = (A ×_T B) / ⟨(τ_A, τ_B)⟩` with per-degree quotient
/// bases.
#[derive(Debug, Clone)]
pub struct ConnectedSum {
    fiber: FiberedProduct,
    shift: u32, // d - k
    /// per degree: spanning vectors of the principal ideal, in fiber coords
    ideal: Vec<Vec<Vec<FieldElem>>>,
    /// per degree: fiber-basis indices representing the quotient basis
    reps: Vec<Vec<usize>>,
    /// per degree: solver over [ideal basis | representative units]
    solvers: Vec<Solver>,
}

impl ConnectedSum {
    pub fn new(fiber: FiberedProduct) -> Result<ConnectedSum, AlgebraError> {
        let d = fiber.socle_degree();
        let k = fiber.t().socle_degree();
        if k >= d {
            return Err(AlgebraError::HypothesisNotMet(format!(
                "connected sum needs socle degree of T below that of A and B ({k} >= {d})"
            )));
        }
        let tau = fiber.total_thom_class()?;
        let shift = d - k;
        let field = fiber.field();
        let mut ideal = Vec::new();
        let mut reps = Vec::new();
        let mut solvers = Vec::new();
        for i in 0..=d {
            let dim_i = fiber.dim(i);
            let ideal_i: Vec<Vec<FieldElem>> = if i < shift {
                Vec::new()
            } else {
                unit_vectors(field, fiber.dim(i - shift))
                    .into_iter()
                    .map(|u| fiber.multiply_coords(shift, &tau, i - shift, &u))
                    .collect()
            };
            // pick quotient representatives among the fiber basis vectors
            let offset = ideal_i.len();
            let mut cols = ideal_i.clone();
            cols.extend(unit_vectors(field, dim_i));
            let reduced = linalg::rref(&ExactMatrix::from_cols(&cols, dim_i, field));
            let ideal_rank = reduced.pivots.iter().filter(|&&p| p < offset).count();
            let rep_indices: Vec<usize> = reduced
                .pivots
                .iter()
                .filter(|&&p| p >= offset)
                .map(|&p| p - offset)
                .collect();
            // exactness of 0 -> T(k-d) -> A×_TB -> A#_TB -> 0: the Gysin pair
            // is injective, so the ideal has dimension dim T_{i-shift}
            let expected_ideal = if i < shift {
                0
            } else {
                fiber.t().dim(i - shift)
            };
            if ideal_rank != expected_ideal {
                return Err(AlgebraError::Internal(format!(
                    "principal ideal has dimension {ideal_rank} in degree {i}, expected {expected_ideal}"
                )));
            }
            let mut span_cols: Vec<Vec<FieldElem>> = ideal_i.clone();
            for &r in &rep_indices {
                let mut u = vec![field.zero(); dim_i];
                u[r] = field.one();
                span_cols.push(u);
            }
            let solver = Solver::new(&ExactMatrix::from_cols(&span_cols, dim_i, field));
            ideal.push(ideal_i);
            reps.push(rep_indices);
            solvers.push(solver);
        }
        let cs = ConnectedSum {
            fiber,
            shift,
            ideal,
            reps,
            solvers,
        };
        // Gorenstein check: socle is one-dimensional, concentrated in degree d
        let soc = socle_dims(&cs);
        let expected: Vec<usize> = (0..=d).map(|i| usize::from(i == d)).collect();
        if soc != expected {
            return Err(AlgebraError::Internal(format!(
                "connected sum socle dimensions {soc:?}"
            )));
        }
        Ok(cs)
    }

    pub fn fiber(&self) -> &FiberedProduct {
        &self.fiber
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// Image of a fiber coordinate vector in the quotient.
    pub fn project(&self, i: u32, fiber_coords: &[FieldElem]) -> Vec<FieldElem> {
        if i > self.fiber.socle_degree() {
            return Vec::new();
        }
        let sol = self.solvers[i as usize]
            .solve(fiber_coords)
            .expect("ideal and representatives span the fiber");
        sol[self.ideal[i as usize].len()..].to_vec()
    }

    /// Lift of a quotient coordinate vector back into the fiber.
    pub fn lift_to_fiber(&self, i: u32, coords: &[FieldElem]) -> Vec<FieldElem> {
        let field = self.field();
        let dim_fiber = self.fiber.dim(i);
        let mut out = vec![field.zero(); dim_fiber];
        for (c, v) in coords.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let idx = self.reps[i as usize][c];
            out[idx] = out[idx].add(v);
        }
        out
    }
}

impl GradedArtinian for ConnectedSum {
    fn field(&self) -> Field {
        self.fiber.field()
    }

    fn socle_degree(&self) -> u32 {
        self.fiber.socle_degree()
    }

    fn dim(&self, i: u32) -> usize {
        match self.reps.get(i as usize) {
            Some(r) => r.len(),
            None => 0,
        }
    }

    fn linear_family_size(&self) -> usize {
        self.dim(1)
    }

    fn linear_class(&self, coeffs: &[FieldElem]) -> Vec<FieldElem> {
        coeffs.to_vec()
    }

    fn multiply_coords(&self, i: u32, x: &[FieldElem], j: u32, y: &[FieldElem]) -> Vec<FieldElem> {
        let target = i + j;
        if target > self.socle_degree() {
            return Vec::new();
        }
        let fx = self.lift_to_fiber(i, x);
        let fy = self.lift_to_fiber(j, y);
        let prod = self.fiber.multiply_coords(i, &fx, j, &fy);
        self.project(target, &prod)
    }
}

/// Builds the fibered product of `A` and `B` over a common target.
pub fn fibered_product_structural(
    pi_a: OrientedSurjection,
    pi_b: OrientedSurjection,
) -> Result<FiberedProduct, AlgebraError> {
    let fp = FiberedProduct::new(pi_a, pi_b)?;
    debug_assert_eq!(
        fp.hilbert(),
        fp.a()
            .hilbert()
            .add(&fp.b().hilbert())
            .checked_sub(&fp.t().hilbert())
            .expect("exact sequence"),
    );
    Ok(fp)
}

/// Builds the connected sum of a fibered product, verifying the total Thom
/// class, the Hilbert identity, and the Gorenstein socle.
pub fn connected_sum_structural(fiber: FiberedProduct) -> Result<ConnectedSum, AlgebraError> {
    let cs = ConnectedSum::new(fiber)?;
    let d = cs.socle_degree();
    let k = cs.fiber().t().socle_degree();
    let ht = cs.fiber().t().hilbert();
    let expected = cs
        .fiber()
        .hilbert()
        .checked_sub(&ht.shift((d - k) as usize))
        .ok_or_else(|| AlgebraError::Internal("connected sum Hilbert identity".into()))?;
    if cs.hilbert() != expected {
        return Err(AlgebraError::Internal(format!(
            "connected sum Hilbert function {} differs from {}",
            cs.hilbert(),
            expected
        )));
    }
    Ok(cs)
}

/// Hilbert function predicted by the fibered-product identity.
pub fn fiber_hilbert_formula(
    a: &HilbertFunction,
    b: &HilbertFunction,
    t: &HilbertFunction,
) -> Option<HilbertFunction> {
    a.add(b).checked_sub(t)
}

/// Hilbert function predicted by the connected-sum identity
/// `H(A) + H(B) - H(T) - H(T)[d-k]`.
pub fn cs_hilbert_formula(
    a: &HilbertFunction,
    b: &HilbertFunction,
    t: &HilbertFunction,
    shift: usize,
) -> Option<HilbertFunction> {
    a.add(b).checked_sub(t)?.checked_sub(&t.shift(shift))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Monomial, Side, SparsePoly, WeightedGrading};

    fn q() -> Field {
        Field::Rational
    }

    fn dual(n: usize, terms: &[(&[u32], i64)]) -> SparsePoly {
        assert!(terms.iter().all(|(e, _)| e.len() == n));
        SparsePoly::from_terms(
            terms
                .iter()
                .map(|(e, c)| (Monomial::new(e.to_vec()), q().from_i64(*c))),
            Side::Dual,
        )
    }

    fn system(weights: Vec<u32>, duals: Vec<SparsePoly>) -> Arc<InverseSystem> {
        Arc::new(InverseSystem::build(q(), WeightedGrading::new(weights), duals).unwrap())
    }

    fn var_image(n: usize, v: usize) -> SparsePoly {
        SparsePoly::monomial(Monomial::var(n, v), q().one(), Side::Ring)
    }

    /// A = F[x,y]/(x^2,y^4), B = F[u,v]/(u^3,v^3), T = F[z]/(z^2).
    fn fpex() -> FiberedProduct {
        let a = system(vec![1, 1], vec![dual(2, &[(&[1, 3], 1)])]);
        let b = system(vec![1, 1], vec![dual(2, &[(&[2, 2], 1)])]);
        let t = system(vec![1], vec![dual(1, &[(&[1], 1)])]);
        // pi_A: x -> z, y -> 0 ; pi_B: u -> z, v -> 0
        let pi_a = OrientedSurjection::new(
            a,
            t.clone(),
            vec![var_image(1, 0), SparsePoly::zero(Side::Ring)],
        )
        .unwrap();
        let pi_b = OrientedSurjection::new(
            b,
            t,
            vec![var_image(1, 0), SparsePoly::zero(Side::Ring)],
        )
        .unwrap();
        fibered_product_structural(pi_a, pi_b).unwrap()
    }

    #[test]
    fn fpex_fiber_and_sum_hilbert() {
        let fp = fpex();
        assert_eq!(fp.hilbert(), HilbertFunction::new(vec![1, 3, 5, 4, 2]));
        // Thom classes: tau_A = y^3, tau_B = u v^2
        let ya = fp
            .a()
            .element_from_poly(&dual(2, &[(&[0, 3], 1)]).with_side(Side::Ring))
            .unwrap();
        assert_eq!(fp.pi_a().thom_class(), &ya);
        let uv2 = fp
            .b()
            .element_from_poly(&dual(2, &[(&[1, 2], 1)]).with_side(Side::Ring))
            .unwrap();
        assert_eq!(fp.pi_b().thom_class(), &uv2);
        let cs = connected_sum_structural(fp).unwrap();
        assert_eq!(cs.hilbert(), HilbertFunction::new(vec![1, 3, 5, 3, 1]));
    }

    #[test]
    fn fiber_socle_has_type_two() {
        let fp = fpex();
        let soc = socle_dims(&fp);
        assert_eq!(soc, vec![0, 0, 0, 0, 2]);
    }

    #[test]
    fn tony_example_has_no_total_thom_class() {
        // A = Q/Ann(X^2 Y), B = Q/Ann(X Y^2), T = Q/Ann(XY) with identity maps:
        // pi_A(tau_A) = x differs from pi_B(tau_B) = y.
        let g = vec![1, 1];
        let a = system(g.clone(), vec![dual(2, &[(&[2, 1], 1)])]);
        let b = system(g.clone(), vec![dual(2, &[(&[1, 2], 1)])]);
        let t = system(g, vec![dual(2, &[(&[1, 1], 1)])]);
        let ident = vec![var_image(2, 0), var_image(2, 1)];
        let pi_a = OrientedSurjection::new(a, t.clone(), ident.clone()).unwrap();
        let pi_b = OrientedSurjection::new(b, t, ident).unwrap();
        let fp = fibered_product_structural(pi_a, pi_b).unwrap();
        assert_eq!(fp.hilbert(), HilbertFunction::new(vec![1, 2, 3, 2]));
        match connected_sum_structural(fp) {
            Err(AlgebraError::NoTotalThomClass { left, right }) => {
                assert_eq!(left, "x1");
                assert_eq!(right, "x2");
            }
            other => panic!("expected missing total Thom class, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_targets_are_rejected() {
        let a = system(vec![1, 1], vec![dual(2, &[(&[1, 3], 1)])]);
        let b = system(vec![1, 1], vec![dual(2, &[(&[2, 2], 1)])]);
        let t1 = system(vec![1], vec![dual(1, &[(&[1], 1)])]);
        let t2 = system(vec![1], vec![dual(1, &[(&[2], 1)])]);
        let pi_a =
            OrientedSurjection::new(a, t1, vec![var_image(1, 0), SparsePoly::zero(Side::Ring)])
                .unwrap();
        let pi_b =
            OrientedSurjection::new(b, t2, vec![var_image(1, 0), SparsePoly::zero(Side::Ring)])
                .unwrap();
        assert!(matches!(
            FiberedProduct::new(pi_a, pi_b),
            Err(AlgebraError::AmbientMismatch(_))
        ));
    }

    #[test]
    fn fiber_over_the_field() {
        // T = F (k = 0): H(A x_F B) = H(A) + H(B) - (1, 0, ...)
        let a = system(vec![1], vec![dual(1, &[(&[2], 1)])]);
        let b = system(vec![1], vec![dual(1, &[(&[2], 1)])]);
        let t = system(vec![1], vec![dual(1, &[(&[0], 1)])]);
        let zero = vec![SparsePoly::zero(Side::Ring)];
        let pi_a = OrientedSurjection::new(a, t.clone(), zero.clone()).unwrap();
        let pi_b = OrientedSurjection::new(b, t, zero).unwrap();
        let fp = fibered_product_structural(pi_a, pi_b).unwrap();
        assert_eq!(fp.hilbert(), HilbertFunction::new(vec![1, 2, 2]));
        let cs = connected_sum_structural(fp).unwrap();
        assert_eq!(cs.hilbert(), HilbertFunction::new(vec![1, 2, 1]));
    }
}
