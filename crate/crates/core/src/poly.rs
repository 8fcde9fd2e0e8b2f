//! Weighted-graded polynomial ring `Q = F[x_1..x_n]`, its divided-power dual
//! `R = F[X_1..X_n]`, and the contraction action of `Q` on `R`.
//!
//! Contraction, not differentiation, is the primitive: `x_i` lowers the
//! `X_i`-exponent by one with coefficient one, so annihilators and ranks are
//! identical in every characteristic.  The fixed monomial order is
//! graded-reverse-lexicographic, which makes every enumerated basis, matrix,
//! and normal form reproducible bit for bit.

use crate::error::AlgebraError;
use crate::scalars::{Field, FieldElem};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// Which ring a polynomial lives in: the acting ring `Q` or its dual `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Ring,
    Dual,
}

/// Variable count, positive integer weights, and display names.
/// Standard grading means all weights are one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGrading {
    weights: Vec<u32>,
    names: Vec<String>,
}

impl WeightedGrading {
    pub fn new(weights: Vec<u32>) -> WeightedGrading {
        let names = (1..=weights.len()).map(|i| format!("x{i}")).collect();
        WeightedGrading::with_names(weights, names)
    }

    pub fn standard(n: usize) -> WeightedGrading {
        WeightedGrading::new(vec![1; n])
    }

    pub fn with_names(weights: Vec<u32>, names: Vec<String>) -> WeightedGrading {
        assert!(!weights.is_empty(), "at least one variable is required");
        assert!(weights.iter().all(|&w| w >= 1), "weights must be positive");
        assert_eq!(weights.len(), names.len());
        WeightedGrading { weights, names }
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, var: usize) -> u32 {
        self.weights[var]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Indices of the weight-one variables (the span of `Q_1`).
    pub fn weight_one_vars(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.weights[i] == 1).collect()
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u32 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e * w)
            .sum()
    }

    /// All monomials of weighted degree `d`, in descending graded-revlex order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut exps = vec![0u32; self.n()];
        self.enumerate(0, d, &mut exps, &mut out);
        out.sort_by(|a, b| cmp_revlex(b, a));
        out
    }

    fn enumerate(&self, var: usize, remaining: u32, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if var == self.n() {
            if remaining == 0 {
                out.push(Monomial::new(exps.clone()));
            }
            return;
        }
        let w = self.weights[var];
        let max = remaining / w;
        for e in 0..=max {
            exps[var] = e;
            self.enumerate(var + 1, remaining - e * w, exps, out);
        }
        exps[var] = 0;
    }

    /// Extends this grading with the variables of `other`; names must stay distinct.
    pub fn concat(&self, other: &WeightedGrading) -> Result<WeightedGrading, AlgebraError> {
        let mut weights = self.weights.clone();
        let mut names = self.names.clone();
        for (w, name) in other.weights.iter().zip(&other.names) {
            if names.iter().any(|n| n.eq_ignore_ascii_case(name)) {
                return Err(AlgebraError::AmbientMismatch(format!(
                    "variable name {name} appears on both sides"
                )));
            }
            weights.push(*w);
            names.push(name.clone());
        }
        Ok(WeightedGrading::with_names(weights, names))
    }

    /// Adds a fresh weight-one variable, picking the first unused name among
    /// `x`, `w`, `x0`, `x1`, ...
    pub fn extend_fresh_var(&self) -> WeightedGrading {
        let mut candidates: Vec<String> = vec!["x".into(), "w".into()];
        candidates.extend((0..).take(self.n() + 2).map(|i| format!("x{i}")));
        let name = candidates
            .into_iter()
            .find(|c| !self.names.iter().any(|n| n.eq_ignore_ascii_case(c)))
            .expect("fresh name");
        let mut weights = self.weights.clone();
        let mut names = self.names.clone();
        weights.push(1);
        names.push(name);
        WeightedGrading { weights, names }
    }
}

/// Exponent vector of a monomial; the grading supplies weighted degrees.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

/// Reverse-lexicographic comparison: larger means earlier in the canonical
/// basis listing of a fixed degree.
fn cmp_revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            // last differing exponent smaller => revlex-larger
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let da: u32 = self.0.iter().sum();
        let db: u32 = other.0.iter().sum();
        da.cmp(&db).then_with(|| cmp_revlex(self, other))
    }
}

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Monomial {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Monomial {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    /// Contraction of the dual monomial `target` by `self`:
    /// `target / self` when the exponents allow it, zero otherwise.
    pub fn contract(&self, target: &Monomial) -> Option<Monomial> {
        target.div(self)
    }

    /// The same exponent vector read in the other ring.
    pub fn dual(&self) -> Monomial {
        self.clone()
    }

    fn display(&self, grading: &WeightedGrading, side: Side) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = match side {
                Side::Ring => grading.name(i).to_string(),
                Side::Dual => {
                    let mut s = grading.name(i).to_string();
                    if let Some(first) = s.get_mut(0..1) {
                        first.make_ascii_uppercase();
                    }
                    s
                }
            };
            if e == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{e}"));
            }
        }
        parts.join("*")
    }
}

/// Sparse scalar combination of monomials.  Zero coefficients are never
/// stored; the `side` tag records whether the polynomial acts (Q) or is acted
/// upon (R).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    terms: BTreeMap<Monomial, FieldElem>,
    side: Side,
}

impl SparsePoly {
    pub fn zero(side: Side) -> SparsePoly {
        SparsePoly {
            terms: BTreeMap::new(),
            side,
        }
    }

    pub fn monomial(m: Monomial, c: FieldElem, side: Side) -> SparsePoly {
        let mut p = SparsePoly::zero(side);
        p.add_term(m, c);
        p
    }

    pub fn from_terms<I>(terms: I, side: Side) -> SparsePoly
    where
        I: IntoIterator<Item = (Monomial, FieldElem)>,
    {
        let mut p = SparsePoly::zero(side);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn with_side(mut self, side: Side) -> SparsePoly {
        self.side = side;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElem> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> SparsePoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
            side: self.side,
        }
    }

    pub fn scale(&self, c: &FieldElem) -> SparsePoly {
        if c.is_zero() {
            return SparsePoly::zero(self.side);
        }
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, k)| (m.clone(), k.mul(c)))
                .collect(),
            side: self.side,
        }
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero(self.side);
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c.mul(d));
            }
        }
        out
    }

    pub fn pow(&self, e: u32, n: usize, field: Field) -> SparsePoly {
        let mut out = SparsePoly::monomial(Monomial::one(n), field.one(), self.side);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Weighted degree when homogeneous; `Err` otherwise, `Ok(None)` for zero.
    pub fn homogeneous_degree(
        &self,
        grading: &WeightedGrading,
    ) -> Result<Option<u32>, AlgebraError> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = grading.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => {
                    return Err(AlgebraError::Inhomogeneous(format!(
                        "terms of weighted degrees {d0} and {d}"
                    )))
                }
                _ => {}
            }
        }
        Ok(deg)
    }

    /// Leading monomial in the canonical (graded-revlex) order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().max_by(|a, b| a.cmp(b))
    }

    /// Scales so the leading coefficient is one (display normalization).
    pub fn normalized(&self) -> SparsePoly {
        match self.leading_monomial() {
            None => self.clone(),
            Some(m) => {
                let c = self.terms[m].clone();
                self.scale(&c.inv().expect("leading coefficient nonzero"))
            }
        }
    }

    /// The constant coefficient: evaluation at `X_1 = ... = X_n = 0`.
    pub fn eval_at_zero(&self, field: Field) -> FieldElem {
        for (m, c) in &self.terms {
            if m.is_one() {
                return c.clone();
            }
        }
        field.zero()
    }

    /// Coordinates over an ordered monomial basis; terms outside the basis are
    /// an error in the caller's bookkeeping, so they panic.
    pub fn coords(&self, basis: &[Monomial], field: Field) -> Vec<FieldElem> {
        let index: BTreeMap<&Monomial, usize> =
            basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = *index
                .get(m)
                .unwrap_or_else(|| panic!("monomial outside basis"));
            v[i] = c.clone();
        }
        v
    }

    pub fn from_coords(basis: &[Monomial], coords: &[FieldElem], side: Side) -> SparsePoly {
        SparsePoly::from_terms(
            basis
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
            side,
        )
    }

    /// Substitutes `var_images[i]` for variable `i`; the images live in a ring
    /// with `target_n` variables.
    pub fn substitute(
        &self,
        var_images: &[SparsePoly],
        target_n: usize,
        field: Field,
        side: Side,
    ) -> SparsePoly {
        let mut out = SparsePoly::zero(side);
        for (m, c) in &self.terms {
            let mut term = SparsePoly::monomial(Monomial::one(target_n), field.one(), side);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&var_images[i]);
                }
            }
            out = out.add(&term.scale(c));
        }
        out
    }

    /// Re-embeds into a larger variable set, mapping old variable `i` to
    /// `offset + i`.
    pub fn embed(&self, total_vars: usize, offset: usize) -> SparsePoly {
        SparsePoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = vec![0u32; total_vars];
                    for (i, &x) in m.exponents().iter().enumerate() {
                        e[offset + i] = x;
                    }
                    (Monomial::new(e), c.clone())
                })
                .collect(),
            side: self.side,
        }
    }

    pub fn display(&self, grading: &WeightedGrading) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        // descending canonical order
        let mut terms: Vec<(&Monomial, &FieldElem)> = self.terms.iter().collect();
        terms.sort_by(|a, b| b.0.cmp(a.0));
        let mut s = String::new();
        for (idx, (m, c)) in terms.iter().enumerate() {
            let mstr = m.display(grading, self.side);
            let (sign, mag) = if c.is_display_negative() {
                ("-", c.neg())
            } else {
                ("+", (*c).clone())
            };
            if idx == 0 {
                if sign == "-" {
                    s.push('-');
                }
            } else {
                s.push_str(if sign == "-" { " - " } else { " + " });
            }
            if m.is_one() {
                s.push_str(&format!("{mag}"));
            } else if mag.is_one() {
                s.push_str(&mstr);
            } else {
                s.push_str(&format!("{mag}*{mstr}"));
            }
        }
        s
    }
}

/// The contraction action `f ∘ F` of `Q` on `R`, extended bilinearly.
/// If `f` is homogeneous of degree `a` and `F` of degree `b`, the result is
/// homogeneous of degree `b - a` (zero when `a > b`).
pub fn contract(f: &SparsePoly, target: &SparsePoly) -> SparsePoly {
    let mut out = SparsePoly::zero(Side::Dual);
    for (m, c) in f.terms() {
        for (bigm, bigc) in target.terms() {
            if let Some(q) = m.contract(bigm) {
                out.add_term(q, c.mul(bigc));
            }
        }
    }
    out
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Ring => write!(f, "Q"),
            Side::Dual => write!(f, "R"),
        }
    }
}
