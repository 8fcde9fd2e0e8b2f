//! Oriented surjections between Gorenstein inverse systems: well-definedness
//! and surjectivity checks, Thom classes, and Gysin maps.
//!
//! A Thom class can be reached two ways.  Structurally, `τ` is the unique
//! element of `A_{d-k}` with `∫_A τ·a = ∫_T π(a)` for all `a`.  Through
//! Macaulay duality, `τ` is any solution of `τ∘F = H` in `Q_{d-k}`, unique
//! modulo `Ann(F)_{d-k}`.  Both are implemented and cross-checked in tests.

use crate::error::AlgebraError;
use crate::inverse_system::{AlgebraElement, InverseSystem};
use crate::linalg::{self, ExactMatrix, Solver};
use crate::poly::{contract, Side, SparsePoly, WeightedGrading};
use crate::scalars::{Field, FieldElem};
use std::sync::Arc;

/// A graded algebra map `A -> T` given by polynomial images of the source
/// ring variables.  Unmentioned variables map to zero.
#[derive(Debug, Clone)]
pub struct AlgebraMap {
    /// image of each source variable as a polynomial in the target ring
    images: Vec<SparsePoly>,
}

impl AlgebraMap {
    pub fn images(&self) -> &[SparsePoly] {
        &self.images
    }

    /// Substitute into a source-ring polynomial.
    pub fn apply_poly(&self, f: &SparsePoly, target: &InverseSystem) -> SparsePoly {
        f.substitute(
            &self.images,
            target.grading().n(),
            target.field(),
            Side::Ring,
        )
    }
}

/// A verified surjection `π: A -> T` of oriented Gorenstein inverse systems,
/// with its Thom class.
#[derive(Debug, Clone)]
pub struct OrientedSurjection {
    source: Arc<InverseSystem>,
    target: Arc<InverseSystem>,
    map: AlgebraMap,
    /// matrices of `π: A_i -> T_i` in canonical bases, for `i <= k`
    matrices: Vec<ExactMatrix>,
    solvers: Vec<Solver>,
    thom: AlgebraElement,
}

impl OrientedSurjection {
    /// Builds and verifies a surjection from variable images.
    ///
    /// Checks, in order: image degrees match variable weights, the map kills
    /// `Ann(F)` degreewise (well-definedness), and `π` hits every graded piece
    /// of `T` (surjectivity).  The Thom class is then solved from
    /// `∫_A τ·a = ∫_T π(a)` over the degree-`k` basis of `A`.
    pub fn new(
        source: Arc<InverseSystem>,
        target: Arc<InverseSystem>,
        images: Vec<SparsePoly>,
    ) -> Result<OrientedSurjection, AlgebraError> {
        if !source.is_gorenstein() || !target.is_gorenstein() {
            return Err(AlgebraError::HypothesisNotMet(
                "oriented surjections are between Gorenstein algebras".into(),
            ));
        }
        if images.len() != source.grading().n() {
            return Err(AlgebraError::AmbientMismatch(format!(
                "{} variable images for {} variables",
                images.len(),
                source.grading().n()
            )));
        }
        let d = source.socle_degree();
        let k = target.socle_degree();
        if k > d {
            return Err(AlgebraError::DegreeMismatch(format!(
                "target socle degree {k} exceeds source {d}"
            )));
        }
        for (v, img) in images.iter().enumerate() {
            let w = source.grading().weight(v);
            match img.homogeneous_degree(target.grading())? {
                None => {}
                Some(deg) if deg == w => {}
                Some(deg) => {
                    return Err(AlgebraError::DegreeMismatch(format!(
                        "variable {} has weight {w} but its image has degree {deg}",
                        source.grading().name(v)
                    )))
                }
            }
        }
        let map = AlgebraMap { images };

        // well-definedness: Ann(F)_j must land in Ann(H)_j; only degrees up to
        // k matter since T vanishes above its socle degree
        for j in 0..=k {
            for g in source.ann_component(j) {
                let image = map.apply_poly(&g, &target);
                let class = target.element_from_poly(&image)?;
                if !class.is_zero() {
                    return Err(AlgebraError::IllDefinedMap(format!(
                        "annihilator element of degree {j} maps to a nonzero class"
                    )));
                }
            }
        }

        // per-degree matrices and surjectivity
        let mut matrices = Vec::new();
        let mut solvers = Vec::new();
        for i in 0..=k {
            let src_basis = source.basis_monomials(i);
            let rows = target.dim(i);
            let mut mat = ExactMatrix::zero(rows, src_basis.len(), source.field());
            for (c, u) in src_basis.iter().enumerate() {
                let f = SparsePoly::monomial(u.clone(), source.field().one(), Side::Ring);
                let image = map.apply_poly(&f, &target);
                let class = target.element_from_poly(&image)?;
                for (r, v) in target.coords(&class).into_iter().enumerate() {
                    mat.set(r, c, v);
                }
            }
            let solver = Solver::new(&mat);
            if solver.rank() != rows {
                return Err(AlgebraError::NotSurjective(format!(
                    "image has dimension {} in degree {i}, expected {rows}",
                    solver.rank()
                )));
            }
            matrices.push(mat);
            solvers.push(solver);
        }

        let thom = solve_thom_element(&source, &target, &matrices)?;
        Ok(OrientedSurjection {
            source,
            target,
            map,
            matrices,
            solvers,
            thom,
        })
    }

    pub fn source(&self) -> &Arc<InverseSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<InverseSystem> {
        &self.target
    }

    pub fn map(&self) -> &AlgebraMap {
        &self.map
    }

    /// The Thom class `τ_π ∈ A_{d-k}`.
    pub fn thom_class(&self) -> &AlgebraElement {
        &self.thom
    }

    /// `π` applied to a class of `A`.
    pub fn apply(&self, a: &AlgebraElement) -> AlgebraElement {
        let i = a.degree();
        if i > self.target.socle_degree() {
            return self.target.zero_element(i);
        }
        let coords = self.source.coords(a);
        let out = self.matrices[i as usize].mul_vec(&coords);
        self.target.element_from_coords(i, &out)
    }

    /// Some `π`-preimage of a class of `T`.
    pub fn preimage(&self, t: &AlgebraElement) -> AlgebraElement {
        let i = t.degree();
        assert!(i <= self.target.socle_degree());
        let coords = self.target.coords(t);
        let x = self.solvers[i as usize]
            .solve(&coords)
            .expect("surjective map");
        self.source.element_from_coords(i, &x)
    }

    /// The Gysin map `ι(t) = τ · (any lift of t)`, raising degree by `d-k`.
    pub fn gysin_apply(&self, t: &AlgebraElement) -> AlgebraElement {
        let lift = self.preimage(t);
        self.source.multiply(&self.thom, &lift)
    }

    /// Basis of `ker(π)_j` as elements of `A`.
    pub fn kernel_basis(&self, j: u32) -> Vec<AlgebraElement> {
        if j > self.target.socle_degree() {
            return self.source.basis(j);
        }
        linalg::kernel_basis(&self.matrices[j as usize])
            .into_iter()
            .map(|v| self.source.element_from_coords(j, &v))
            .collect()
    }

    /// Basis of the degree-`i` piece of the annihilator `(0 :_A ker π)`.
    pub fn colon_kernel_basis(&self, i: u32) -> Vec<AlgebraElement> {
        let a = &self.source;
        let d = a.socle_degree();
        let dim_i = a.dim(i);
        if dim_i == 0 {
            return Vec::new();
        }
        let mut stacked: Option<ExactMatrix> = None;
        for j in 0..=d.saturating_sub(i) {
            for kappa in self.kernel_basis(j) {
                let target_dim = a.dim(i + j);
                let mut mat = ExactMatrix::zero(target_dim, dim_i, a.field());
                for (c, u) in a.basis(i).iter().enumerate() {
                    let prod = a.multiply(u, &kappa);
                    for (r, v) in a.coords(&prod).into_iter().enumerate() {
                        mat.set(r, c, v);
                    }
                }
                stacked = Some(match stacked {
                    None => mat,
                    Some(s) => s.vstack(&mat),
                });
            }
        }
        match stacked {
            None => a.basis(i),
            Some(s) => linalg::kernel_basis(&s)
                .into_iter()
                .map(|v| a.element_from_coords(i, &v))
                .collect(),
        }
    }
}

/// Solves `∫_A τ·a = ∫_T π(a)` for `τ ∈ A_{d-k}` over the degree-`k` basis.
fn solve_thom_element(
    source: &InverseSystem,
    target: &InverseSystem,
    pi_matrices: &[ExactMatrix],
) -> Result<AlgebraElement, AlgebraError> {
    let d = source.socle_degree();
    let k = target.socle_degree();
    let field = source.field();
    let a_k = source.basis(k);
    let tau_basis = source.basis(d - k);
    let mut mat = ExactMatrix::zero(a_k.len(), tau_basis.len(), field);
    let mut rhs = Vec::with_capacity(a_k.len());
    for (r, a) in a_k.iter().enumerate() {
        for (c, u) in tau_basis.iter().enumerate() {
            let val = source.orientation(&source.multiply(u, a));
            mat.set(r, c, val[0].clone());
        }
        let coords = source.coords(a);
        let image = pi_matrices[k as usize].mul_vec(&coords);
        let t_class = target.element_from_coords(k, &image);
        rhs.push(target.orientation(&t_class)[0].clone());
    }
    let x = linalg::solve(&mat, &rhs).ok_or_else(|| {
        AlgebraError::Internal("Thom class system is inconsistent for a valid surjection".into())
    })?;
    Ok(source.element_from_coords(d - k, &x))
}

/// Solution set of `τ∘F = H` in `Q_{d-k}`: the rref-deterministic particular
/// solution together with a basis of `Ann(F)_{d-k}` (the full coset).
#[derive(Debug, Clone)]
pub struct ThomSolution {
    pub particular: SparsePoly,
    pub ann_basis: Vec<SparsePoly>,
}

/// Dual-generator route to the Thom class: solves `τ∘F = H` by linear algebra
/// on the degree-`(d-k)` catalecticant of `F`.  Returns `None` when no
/// solution exists, which happens exactly when `Q/Ann(F) -> Q/Ann(H)` fails to
/// be well defined and surjective.
pub fn thom_class(
    field: Field,
    grading: &WeightedGrading,
    f: &SparsePoly,
    h: &SparsePoly,
) -> Result<Option<ThomSolution>, AlgebraError> {
    if f.is_zero() || h.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let d = f.homogeneous_degree(grading)?.expect("nonzero");
    let k = h.homogeneous_degree(grading)?.expect("nonzero");
    if k > d {
        return Err(AlgebraError::DegreeMismatch(format!(
            "deg H = {k} exceeds deg F = {d}"
        )));
    }
    let monomials = grading.monomials_of_degree(d - k);
    let dual_monomials = grading.monomials_of_degree(k);
    let mut mat = ExactMatrix::zero(dual_monomials.len(), monomials.len(), field);
    for (c, u) in monomials.iter().enumerate() {
        let image = contract(
            &SparsePoly::monomial(u.clone(), field.one(), Side::Ring),
            f,
        );
        for (m, v) in image.terms() {
            let r = dual_monomials
                .iter()
                .position(|x| x == m)
                .expect("contraction degree");
            mat.set(r, c, v.clone());
        }
    }
    let rhs = h.coords(&dual_monomials, field);
    let solver = Solver::new(&mat);
    let particular = match solver.solve(&rhs) {
        None => return Ok(None),
        Some(x) => SparsePoly::from_coords(&monomials, &x, Side::Ring),
    };
    let ann_basis = solver
        .kernel_basis()
        .into_iter()
        .map(|v| SparsePoly::from_coords(&monomials, &v, Side::Ring))
        .collect();
    Ok(Some(ThomSolution {
        particular,
        ann_basis,
    }))
}

/// Checks that `(ψ, τ)` is a generalized Thom class for a map from the level
/// algebra `L` onto the Gorenstein algebra `K`: the dual of `K` must equal
/// `Σ ψ_i · (τ∘G_i)` up to the leading-coefficient normalization.
pub fn verify_generalized_thom(
    level: &InverseSystem,
    gorenstein: &InverseSystem,
    psi: &[FieldElem],
    tau: &SparsePoly,
) -> Result<bool, AlgebraError> {
    if psi.len() != level.num_duals() {
        return Err(AlgebraError::AmbientMismatch(format!(
            "{} weights for {} dual generators",
            psi.len(),
            level.num_duals()
        )));
    }
    let d = level.socle_degree();
    let k = gorenstein.socle_degree();
    let tau_deg = tau.homogeneous_degree(level.grading())?.unwrap_or(d - k);
    if tau_deg != d - k {
        return Err(AlgebraError::DegreeMismatch(format!(
            "tau has degree {tau_deg}, expected {}",
            d - k
        )));
    }
    let mut sum = SparsePoly::zero(Side::Dual);
    for (a, g) in psi.iter().zip(level.duals()) {
        sum = sum.add(&contract(tau, g).scale(a));
    }
    if sum.is_zero() {
        return Ok(false);
    }
    Ok(sum.normalized() == gorenstein.duals()[0].normalized())
}
