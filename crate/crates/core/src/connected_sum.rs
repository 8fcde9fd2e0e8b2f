//! Connected sums through Macaulay dual generators: the two-condition
//! certificate (`τ∘F = τ∘G ≠ 0` and `Ann(τ∘F) = Ann(F) + Ann(G)`), the
//! resulting fibered products `Q/Ann(F,G)` and connected sums `Q/Ann(F-G)`,
//! the monomial factorization criterion, decomposability probing, quadratic
//! diagonalization, and presentations of products over the ground field.

use crate::error::AlgebraError;
use crate::hilbert::HilbertFunction;
use crate::inverse_system::InverseSystem;
use crate::linalg::{self, ExactMatrix};
use crate::poly::{contract, Monomial, Side, SparsePoly, WeightedGrading};
use crate::scalars::{Field, FieldElem};
use crate::structural::cs_hilbert_formula;
use crate::surjection::thom_class;

/// Kernel of the joint catalecticant of `duals` at degree `j`, i.e. a basis
/// of `Ann(duals)_j` in `Q_j` coordinates.
pub(crate) fn ann_kernel(
    field: Field,
    grading: &WeightedGrading,
    duals: &[&SparsePoly],
    j: u32,
) -> (Vec<Monomial>, Vec<Vec<FieldElem>>) {
    let monomials = grading.monomials_of_degree(j);
    let mut rows_per_dual = Vec::with_capacity(duals.len());
    let mut total_rows = 0;
    for g in duals {
        let d = grading.monomial_degree(g.leading_monomial().expect("nonzero dual"));
        let dm = grading.monomials_of_degree(d.saturating_sub(j));
        total_rows += dm.len();
        rows_per_dual.push(dm);
    }
    let mut mat = ExactMatrix::zero(total_rows, monomials.len(), field);
    for (c, u) in monomials.iter().enumerate() {
        let f = SparsePoly::monomial(u.clone(), field.one(), Side::Ring);
        let mut row_offset = 0;
        for (g, dm) in duals.iter().zip(&rows_per_dual) {
            let image = contract(&f, g);
            for (m, v) in image.terms() {
                if let Some(r) = dm.iter().position(|x| x == m) {
                    mat.set(row_offset + r, c, v.clone());
                }
            }
            row_offset += dm.len();
        }
    }
    (monomials, linalg::kernel_basis(&mat))
}

/// Spanning vectors of the degree-`j` component of the ideal generated by
/// homogeneous `gens`, in `Q_j` coordinates.
pub(crate) fn ideal_component(
    field: Field,
    grading: &WeightedGrading,
    gens: &[(u32, SparsePoly)],
    j: u32,
) -> Vec<Vec<FieldElem>> {
    let monomials = grading.monomials_of_degree(j);
    let mut out = Vec::new();
    for (deg, g) in gens {
        if *deg > j {
            continue;
        }
        for u in grading.monomials_of_degree(j - deg) {
            let prod = g.mul(&SparsePoly::monomial(u, field.one(), Side::Ring));
            out.push(prod.coords(&monomials, field));
        }
    }
    out
}

/// Outcome of the two-condition connected-sum test for `(F, G, τ)`.
#[derive(Debug, Clone)]
pub struct CsCertificate {
    pub verdict: bool,
    pub tau: SparsePoly,
    pub condition_a: bool,
    pub condition_b: bool,
    /// first degree at which `Ann(F)_j + Ann(G)_j` falls short of `Ann(τ∘F)_j`
    pub failing_degree: Option<u32>,
    /// `τ∘F` when condition (a) holds: the dual generator of `T`
    pub t_dual: Option<SparsePoly>,
    /// socle degree of `T` (`deg F - deg τ`)
    pub k: u32,
    /// Hilbert function of `Q/Ann(F-G)`
    pub hilbert_difference: HilbertFunction,
    /// `H(A) + H(B) - H(T) - H(T)[d-k]`, when `T` is defined
    pub hilbert_formula: Option<HilbertFunction>,
}

/// Tests conditions (a) and (b) for `F, G, τ`: `τ∘F = τ∘G ≠ 0` and
/// `Ann(τ∘F) = Ann(F) + Ann(G)` degreewise up to `deg F`.  On a positive
/// verdict also verifies `Ann(F-G) = Ann(F,G) + (τ)` degreewise, reporting
/// any violation as an internal-consistency error.
pub fn check_connected_sum(
    field: Field,
    grading: &WeightedGrading,
    f: &SparsePoly,
    g: &SparsePoly,
    tau: &SparsePoly,
) -> Result<CsCertificate, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let d = f.homogeneous_degree(grading)?.expect("nonzero");
    let dg = g.homogeneous_degree(grading)?.expect("nonzero");
    if d != dg {
        return Err(AlgebraError::DegreeMismatch(format!(
            "F has degree {d}, G has degree {dg}"
        )));
    }
    let top = grading.monomials_of_degree(d);
    let pair = vec![f.coords(&top, field), g.coords(&top, field)];
    if linalg::span_rank(&pair, top.len(), field) != 2 {
        return Err(AlgebraError::DependentDuals);
    }
    let tau_deg = match tau.homogeneous_degree(grading)? {
        None => return Err(AlgebraError::ZeroPolynomial),
        Some(t) => t,
    };
    if tau_deg == 0 || tau_deg > d {
        return Err(AlgebraError::DegreeMismatch(format!(
            "tau has degree {tau_deg}; need 0 < deg tau <= {d}"
        )));
    }
    let k = d - tau_deg;

    let tf = contract(tau, f);
    let tg = contract(tau, g);
    let condition_a = tf == tg && !tf.is_zero();

    let mut condition_b = true;
    let mut failing_degree = None;
    if tf != tg || tf.is_zero() {
        condition_b = false;
    } else {
        for j in 0..=d {
            let (monomials, kf) = ann_kernel(field, grading, &[f], j);
            let (_, kg) = ann_kernel(field, grading, &[g], j);
            let (_, kh) = ann_kernel(field, grading, &[&tf], j);
            let mut sum = kf;
            sum.extend(kg);
            let dim_sum = linalg::span_rank(&sum, monomials.len(), field);
            if dim_sum != kh.len() {
                condition_b = false;
                failing_degree = Some(j);
                break;
            }
        }
    }
    let verdict = condition_a && condition_b;

    let difference = f.sub(g);
    let diff_sys = InverseSystem::build(field, grading.clone(), vec![difference.clone()])?;
    let hilbert_difference = diff_sys.hilbert();

    let (t_dual, hilbert_formula) = if tf.is_zero() {
        (None, None)
    } else {
        let ha = InverseSystem::build(field, grading.clone(), vec![f.clone()])?.hilbert();
        let hb = InverseSystem::build(field, grading.clone(), vec![g.clone()])?.hilbert();
        let ht = InverseSystem::build(field, grading.clone(), vec![tf.clone()])?.hilbert();
        let formula = cs_hilbert_formula(&ha, &hb, &ht, (d - k) as usize);
        (Some(tf.clone()), formula)
    };

    if verdict {
        // Theorem-1 conclusion: Ann(F-G) = Ann(F,G) + (tau), degree by degree
        let tau_gens = [(tau_deg, tau.clone())];
        for j in 0..=d {
            let (monomials, mut rhs) = ann_kernel(field, grading, &[f, g], j);
            rhs.extend(ideal_component(field, grading, &tau_gens, j));
            let (_, lhs) = ann_kernel(field, grading, &[&difference], j);
            if linalg::span_rank(&rhs, monomials.len(), field) != lhs.len() {
                return Err(AlgebraError::Internal(format!(
                    "Ann(F-G) and Ann(F,G)+(tau) differ in degree {j}"
                )));
            }
        }
    }

    Ok(CsCertificate {
        verdict,
        tau: tau.clone(),
        condition_a,
        condition_b,
        failing_degree,
        t_dual,
        k,
        hilbert_difference,
        hilbert_formula,
    })
}

/// The level algebra `Q/Ann(F, G)`, the dual-generator route to `A ×_T B`.
pub fn fibered_product_dual(
    field: Field,
    grading: &WeightedGrading,
    f: &SparsePoly,
    g: &SparsePoly,
) -> Result<InverseSystem, AlgebraError> {
    InverseSystem::build(field, grading.clone(), vec![f.clone(), g.clone()])
}

/// The Gorenstein algebra `Q/Ann(F - G)`, labeled a connected sum only when
/// the certificate accepts `(F, G, τ)`.
pub fn connected_sum_dual(
    field: Field,
    grading: &WeightedGrading,
    f: &SparsePoly,
    g: &SparsePoly,
    tau: &SparsePoly,
) -> Result<(InverseSystem, CsCertificate), AlgebraError> {
    let cert = check_connected_sum(field, grading, f, g, tau)?;
    if !cert.verdict {
        let reason = if !cert.condition_a {
            "condition (a) fails: tau∘F and tau∘G differ or vanish".to_string()
        } else {
            format!(
                "condition (b) fails at degree {}",
                cert.failing_degree.unwrap_or(0)
            )
        };
        return Err(AlgebraError::NotAConnectedSum(reason));
    }
    let sys = InverseSystem::build(field, grading.clone(), vec![f.sub(g)])?;
    Ok((sys, cert))
}

/// Witness produced by the monomial criterion: `F = M_F · M_0`,
/// `G = M_G · M_0` with disjoint supports and neither factor dividing `M_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialCsWitness {
    pub m0: Monomial,
    pub m_f: Monomial,
    pub m_g: Monomial,
    /// `τ = M_F* + M_G*`
    pub tau: SparsePoly,
}

/// Searches the common divisors `M_0` of two distinct equal-degree monomials,
/// largest degree first, for a factorization satisfying the two combinatorial
/// conditions; `None` when no factorization qualifies.
pub fn monomial_cs_criterion(
    field: Field,
    grading: &WeightedGrading,
    f: &Monomial,
    g: &Monomial,
) -> Result<Option<MonomialCsWitness>, AlgebraError> {
    if f == g {
        return Err(AlgebraError::DependentDuals);
    }
    if grading.monomial_degree(f) != grading.monomial_degree(g) {
        return Err(AlgebraError::DegreeMismatch(format!(
            "monomials of degrees {} and {}",
            grading.monomial_degree(f),
            grading.monomial_degree(g)
        )));
    }
    let bound = f.gcd(g);
    // all divisors of gcd(F, G), largest weighted degree first, then the
    // canonical monomial order for determinism
    let mut divisors = Vec::new();
    enumerate_divisors(bound.exponents(), &mut vec![], &mut divisors);
    divisors.sort_by(|a, b| {
        grading
            .monomial_degree(b)
            .cmp(&grading.monomial_degree(a))
            .then_with(|| b.cmp(a))
    });
    for m0 in divisors {
        let m_f = f.div(&m0).expect("divisor of gcd");
        let m_g = g.div(&m0).expect("divisor of gcd");
        let disjoint = m_f.support().iter().all(|v| !m_g.support().contains(v));
        if !disjoint {
            continue;
        }
        if m_f.divides(&m0) || m_g.divides(&m0) {
            continue;
        }
        let tau = SparsePoly::from_terms(
            [(m_f.dual(), field.one()), (m_g.dual(), field.one())],
            Side::Ring,
        );
        return Ok(Some(MonomialCsWitness { m0, m_f, m_g, tau }));
    }
    Ok(None)
}

fn enumerate_divisors(bound: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    if prefix.len() == bound.len() {
        out.push(Monomial::new(prefix.clone()));
        return;
    }
    for e in 0..=bound[prefix.len()] {
        prefix.push(e);
        enumerate_divisors(bound, prefix, out);
        prefix.pop();
    }
}

/// A constructive decomposition found for a binomial dual generator.
#[derive(Debug, Clone)]
pub struct BinomialDecomposition {
    pub f: SparsePoly,
    pub g: SparsePoly,
    pub tau: SparsePoly,
    pub m0: Monomial,
    pub k: u32,
}

/// Decomposability report for a Gorenstein dual generator.
#[derive(Debug, Clone)]
pub struct DecomposabilityReport {
    pub socle_degree: u32,
    pub generator_degrees: Vec<u32>,
    /// candidate socle degrees `k = d - j` surviving every obstruction
    pub candidates: Vec<u32>,
    /// excluded candidates with the reason
    pub ruled_out: Vec<(u32, String)>,
    /// the candidate list is empty: the generator-degree obstruction rules
    /// out every base `T`
    pub totally_indecomposable: bool,
    pub binomial_decomposition: Option<BinomialDecomposition>,
}

impl DecomposabilityReport {
    /// A negative search is coordinate-relative: it never certifies
    /// indecomposability after a change of coordinates.
    pub const COORDINATE_CAVEAT: &'static str =
        "negative binomial search is relative to the given coordinates";
}

/// Applies the generator-degree obstruction to every possible base socle
/// degree and, for binomial duals, runs the constructive monomial search.
pub fn probe_decomposability(sys: &InverseSystem) -> Result<DecomposabilityReport, AlgebraError> {
    if !sys.is_gorenstein() {
        return Err(AlgebraError::HypothesisNotMet(
            "decomposability probing needs a Gorenstein algebra".into(),
        ));
    }
    let d = sys.socle_degree();
    let field = sys.field();
    let grading = sys.grading();
    let generator_degrees = sys.min_generator_degrees()?;
    let mut raw: Vec<u32> = generator_degrees
        .iter()
        .filter(|&&j| j <= d)
        .map(|&j| d - j)
        .collect();
    raw.sort_unstable();
    raw.dedup();
    let mut candidates = Vec::new();
    let mut ruled_out = Vec::new();
    for k in raw {
        if k == 0 && d >= 2 && sys.dim(1) < 2 {
            ruled_out.push((
                0,
                "a connected sum over the field needs at least two independent linear classes"
                    .to_string(),
            ));
            continue;
        }
        candidates.push(k);
    }

    let dual = &sys.duals()[0];
    let binomial_decomposition = if dual.num_terms() == 2 {
        let terms: Vec<(Monomial, FieldElem)> =
            dual.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        let (m1, c1) = &terms[0];
        let (m2, c2) = &terms[1];
        match monomial_cs_criterion(field, grading, m1, m2)? {
            None => None,
            Some(w) => {
                // F = c1 M1, G = -c2 M2, tau = (1/c1) m_F - (1/c2) m_G
                let f = SparsePoly::monomial(m1.clone(), c1.clone(), Side::Dual);
                let g = SparsePoly::monomial(m2.clone(), c2.neg(), Side::Dual);
                let tau = SparsePoly::from_terms(
                    [(w.m_f.dual(), c1.inv()?), (w.m_g.dual(), c2.inv()?.neg())],
                    Side::Ring,
                );
                let cert = check_connected_sum(field, grading, &f, &g, &tau)?;
                if !cert.verdict {
                    return Err(AlgebraError::Internal(
                        "monomial witness fails the certificate".into(),
                    ));
                }
                let k = grading.monomial_degree(&w.m0);
                Some(BinomialDecomposition {
                    f,
                    g,
                    tau,
                    m0: w.m0,
                    k,
                })
            }
        }
    } else {
        None
    };

    let totally_indecomposable = candidates.is_empty();
    Ok(DecomposabilityReport {
        socle_degree: d,
        generator_degrees,
        candidates,
        ruled_out,
        totally_indecomposable,
        binomial_decomposition,
    })
}

/// Diagonalization of a quadratic dual generator by an invertible linear
/// substitution.
#[derive(Debug, Clone)]
pub struct QuadraticDiagonalization {
    /// substitution `X_i = Σ_j P[i][j] Z_j` taking `F` to `Σ a_i Z_i^2`
    pub substitution: ExactMatrix,
    pub diagonal: Vec<FieldElem>,
    /// number of nonzero diagonal entries
    pub blocks: usize,
}

impl QuadraticDiagonalization {
    /// `Q/Ann(F)` splits as a connected sum of `F[z]/Ann(Z^2)` factors over
    /// the working field exactly when two or more blocks appear.
    pub fn decomposable_over_field(&self) -> bool {
        self.blocks >= 2
    }
}

/// Diagonalizes a quadratic form over a field of characteristic not two,
/// standard grading only.
pub fn diagonalize_quadratic(
    field: Field,
    grading: &WeightedGrading,
    f: &SparsePoly,
) -> Result<QuadraticDiagonalization, AlgebraError> {
    if field.characteristic() == 2 {
        return Err(AlgebraError::CharacteristicTwo);
    }
    if !grading.is_standard() {
        return Err(AlgebraError::HypothesisNotMet(
            "quadratic diagonalization assumes the standard grading".into(),
        ));
    }
    if f.homogeneous_degree(grading)? != Some(2) {
        return Err(AlgebraError::DegreeMismatch(
            "expected a nonzero quadratic form".into(),
        ));
    }
    let n = grading.n();
    let two_inv = field.from_i64(2).inv()?;
    let mut s = ExactMatrix::zero(n, n, field);
    for (m, c) in f.terms() {
        let sup = m.support();
        match sup.len() {
            1 => {
                let i = sup[0];
                if m.exponents()[i] == 2 {
                    s.set(i, i, c.clone());
                }
            }
            2 => {
                let (i, j) = (sup[0], sup[1]);
                let half = c.mul(&two_inv);
                s.set(i, j, half.clone());
                s.set(j, i, half);
            }
            _ => unreachable!("quadratic support"),
        }
    }
    let mut p = ExactMatrix::identity(n, field);
    for i in 0..n {
        if s.at(i, i).is_zero() {
            if let Some(j) = ((i + 1)..n).find(|&j| !s.at(j, j).is_zero()) {
                swap_sym(&mut s, &mut p, i, j);
            } else if let Some(j) = ((i + 1)..n).find(|&j| !s.at(i, j).is_zero()) {
                // col_i += col_j, row_i += row_j makes the pivot 2*S[i][j]
                add_sym(&mut s, &mut p, i, j, &field.one());
            } else {
                continue;
            }
        }
        let pivot = s.at(i, i).clone();
        for j in (i + 1)..n {
            if s.at(i, j).is_zero() {
                continue;
            }
            let factor = s.at(i, j).div(&pivot)?;
            add_sym(&mut s, &mut p, j, i, &factor.neg());
        }
    }
    let diagonal: Vec<FieldElem> = (0..n).map(|i| s.at(i, i).clone()).collect();
    let blocks = diagonal.iter().filter(|x| !x.is_zero()).count();
    Ok(QuadraticDiagonalization {
        substitution: p,
        diagonal,
        blocks,
    })
}

fn swap_sym(s: &mut ExactMatrix, p: &mut ExactMatrix, i: usize, j: usize) {
    let n = s.rows();
    for c in 0..n {
        let (x, y) = (s.at(i, c).clone(), s.at(j, c).clone());
        s.set(i, c, y);
        s.set(j, c, x);
    }
    for r in 0..n {
        let (x, y) = (s.at(r, i).clone(), s.at(r, j).clone());
        s.set(r, i, y);
        s.set(r, j, x);
    }
    for r in 0..n {
        let (x, y) = (p.at(r, i).clone(), p.at(r, j).clone());
        p.set(r, i, y);
        p.set(r, j, x);
    }
}

/// `col_i += c * col_j` and `row_i += c * row_j` on the Gram matrix, with the
/// matching column operation on the substitution.
fn add_sym(s: &mut ExactMatrix, p: &mut ExactMatrix, i: usize, j: usize, c: &FieldElem) {
    let n = s.rows();
    for col in 0..n {
        let v = s.at(i, col).add(&c.mul(s.at(j, col)));
        s.set(i, col, v);
    }
    for row in 0..n {
        let v = s.at(row, i).add(&c.mul(s.at(row, j)));
        s.set(row, i, v);
    }
    for row in 0..n {
        let v = p.at(row, i).add(&c.mul(p.at(row, j)));
        p.set(row, i, v);
    }
}

/// Applies the substitution `X_i = Σ_j P[i][j] Z_j` to a dual-side polynomial.
pub fn substitute_linear(f: &SparsePoly, p: &ExactMatrix, field: Field) -> SparsePoly {
    let images: Vec<SparsePoly> = (0..p.rows())
        .map(|i| {
            SparsePoly::from_terms(
                (0..p.cols()).map(|j| (Monomial::var(p.cols(), j), p.at(i, j).clone())),
                Side::Dual,
            )
        })
        .collect();
    f.substitute(&images, p.cols(), field, Side::Dual)
}

/// Presentation data for `A ×_F B` and `A #_F B` in the juxtaposed variable
/// set, verified degreewise by dimension counts.
#[derive(Debug, Clone)]
pub struct ProductOverField {
    pub grading: WeightedGrading,
    pub fiber: InverseSystem,
    pub sum: InverseSystem,
    pub fiber_generator_degrees: Vec<u32>,
    pub sum_generator_degrees: Vec<u32>,
    /// `τ = τ_A + τ_B`, the degree-`d` generator cutting out the sum
    pub tau: SparsePoly,
    /// set when both inputs are standard graded: outputs verified standard
    pub standard_graded: Option<bool>,
}

/// Builds `A ×_F B` and `A #_F B` for Gorenstein `A`, `B` in disjoint
/// variables and verifies the tensor-style presentation by dimension counts:
/// the ideal generated by `Ann(F_A)`, `Ann(G_B)`, and the cross products of
/// variables matches `Ann(F̂, Ĝ)` degreewise, and adding `τ_A + τ_B` matches
/// `Ann(F̂ - Ĝ)`.
pub fn product_presentation_over_field(
    a: &InverseSystem,
    b: &InverseSystem,
) -> Result<ProductOverField, AlgebraError> {
    if !a.is_gorenstein() || !b.is_gorenstein() {
        return Err(AlgebraError::HypothesisNotMet(
            "products over the field take Gorenstein factors".into(),
        ));
    }
    if a.socle_degree() != b.socle_degree() {
        return Err(AlgebraError::DegreeMismatch(format!(
            "socle degrees {} and {} differ",
            a.socle_degree(),
            b.socle_degree()
        )));
    }
    if a.field() != b.field() {
        return Err(AlgebraError::FieldMismatch);
    }
    let field = a.field();
    let d = a.socle_degree();
    let grading = a.grading().concat(b.grading())?;
    let na = a.grading().n();
    let n = grading.n();
    let f_hat = a.duals()[0].embed(n, 0);
    let g_hat = b.duals()[0].embed(n, na);

    let fiber = InverseSystem::build(field, grading.clone(), vec![f_hat.clone(), g_hat.clone()])?;
    let sum = InverseSystem::build(field, grading.clone(), vec![f_hat.sub(&g_hat)])?;

    // Hilbert identities over T = F
    let one = HilbertFunction::new(vec![1]);
    let fiber_expected = a
        .hilbert()
        .add(&b.hilbert())
        .checked_sub(&one)
        .expect("connected algebras");
    if fiber.hilbert() != fiber_expected {
        return Err(AlgebraError::Internal(
            "fibered product over F fails its Hilbert identity".into(),
        ));
    }
    let sum_expected = fiber_expected
        .checked_sub(&one.shift(d as usize))
        .expect("top degree is two-dimensional in the fiber");
    if sum.hilbert() != sum_expected {
        return Err(AlgebraError::Internal(
            "connected sum over F fails its Hilbert identity".into(),
        ));
    }

    // presentation generators: relocated annihilator generators plus all
    // cross products of variables
    let mut gens: Vec<(u32, SparsePoly)> = Vec::new();
    for (deg, g) in a.min_generators()? {
        gens.push((deg, g.embed(n, 0)));
    }
    for (deg, g) in b.min_generators()? {
        gens.push((deg, g.embed(n, na)));
    }
    for i in 0..na {
        for j in na..n {
            let m = Monomial::var(n, i).mul(&Monomial::var(n, j));
            gens.push((
                grading.monomial_degree(&m),
                SparsePoly::monomial(m, field.one(), Side::Ring),
            ));
        }
    }
    verify_presentation_dims(field, &grading, &gens, &fiber, "fibered product over F")?;

    // Thom classes over F solve tau ∘ dual = 1
    let one_dual = SparsePoly::monomial(Monomial::one(n), field.one(), Side::Dual);
    let tau_a = thom_class(field, &grading, &f_hat, &one_dual)?
        .ok_or_else(|| AlgebraError::Internal("socle Thom class must exist".into()))?
        .particular;
    let tau_b = thom_class(field, &grading, &g_hat, &one_dual)?
        .ok_or_else(|| AlgebraError::Internal("socle Thom class must exist".into()))?
        .particular;
    let tau = tau_a.add(&tau_b);
    let mut sum_gens = gens.clone();
    sum_gens.push((d, tau.clone()));
    verify_presentation_dims(field, &grading, &sum_gens, &sum, "connected sum over F")?;

    let standard_graded = if a.is_standard_graded_algebra() && b.is_standard_graded_algebra() {
        if !fiber.is_standard_graded_algebra() || !sum.is_standard_graded_algebra() {
            return Err(AlgebraError::Internal(
                "products of standard graded algebras must stay standard graded".into(),
            ));
        }
        Some(true)
    } else {
        None
    };

    let fiber_generator_degrees = fiber.min_generator_degrees()?;
    let sum_generator_degrees = sum.min_generator_degrees()?;
    Ok(ProductOverField {
        grading,
        fiber,
        sum,
        fiber_generator_degrees,
        sum_generator_degrees,
        tau,
        standard_graded,
    })
}

fn verify_presentation_dims(
    field: Field,
    grading: &WeightedGrading,
    gens: &[(u32, SparsePoly)],
    sys: &InverseSystem,
    what: &str,
) -> Result<(), AlgebraError> {
    for j in 0..=sys.socle_degree() + 1 {
        let monomials = grading.monomials_of_degree(j);
        let span = ideal_component(field, grading, gens, j);
        let have = linalg::span_rank(&span, monomials.len(), field);
        let want = monomials.len() - sys.dim(j);
        if have != want {
            return Err(AlgebraError::Internal(format!(
                "{what}: presentation ideal has dimension {have} in degree {j}, expected {want}"
            )));
        }
    }
    Ok(())
}
