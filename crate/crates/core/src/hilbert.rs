//! Hilbert functions as coefficient sequences, with the shift and pointwise
//! arithmetic used by the fibered-product and connected-sum identities.

use std::fmt;

/// Coefficients `h_0..h_d` of a Hilbert series.  Equality ignores trailing
/// zeros, so formula results and catalecticant ranks compare directly.
#[derive(Debug, Clone, Eq)]
pub struct HilbertFunction(Vec<usize>);

impl PartialEq for HilbertFunction {
    fn eq(&self, other: &Self) -> bool {
        let len = self.0.len().max(other.0.len());
        (0..len).all(|i| self.get(i) == other.get(i))
    }
}

impl HilbertFunction {
    pub fn new(coeffs: Vec<usize>) -> HilbertFunction {
        HilbertFunction(coeffs)
    }

    pub fn coeffs(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Largest degree with a nonzero coefficient (zero for the zero sequence).
    pub fn top_degree(&self) -> usize {
        self.0.iter().rposition(|&x| x > 0).unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// `H[n]`: the coefficient sequence of `t^n * H(t)`.
    pub fn shift(&self, n: usize) -> HilbertFunction {
        let mut v = vec![0; n];
        v.extend_from_slice(&self.0);
        HilbertFunction::new(v)
    }

    pub fn add(&self, other: &HilbertFunction) -> HilbertFunction {
        let len = self.0.len().max(other.0.len());
        HilbertFunction::new((0..len).map(|i| self.get(i) + other.get(i)).collect())
    }

    /// Pointwise difference; `None` if any coefficient would go negative.
    pub fn checked_sub(&self, other: &HilbertFunction) -> Option<HilbertFunction> {
        let len = self.0.len().max(other.0.len());
        let mut v = Vec::with_capacity(len);
        for i in 0..len {
            let (a, b) = (self.get(i), other.get(i));
            if b > a {
                return None;
            }
            v.push(a - b);
        }
        Some(HilbertFunction::new(v))
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.top_degree();
        (0..=d).all(|i| self.get(i) == self.get(d - i))
    }

    /// Coefficients sorted decreasingly, viewed as a partition of `dim A`.
    pub fn sorted_partition(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.0.iter().copied().filter(|&x| x > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }
}

/// Conjugate (transpose) of a weakly decreasing partition.
pub fn conjugate_partition(parts: &[usize]) -> Vec<usize> {
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|s| parts.iter().filter(|&&p| p >= s).count())
        .collect()
}

/// The symmetric sequence `W(k,d) = (0,1,..,k,k+1,..,k+1,k,..,1,0)` on
/// degrees `0..=d`, added to Hilbert functions by the closure construction.
/// Requires `2k < d`.
pub fn closure_w(k: usize, d: usize) -> HilbertFunction {
    assert!(2 * k < d, "closure sequence needs 2k < d");
    HilbertFunction::new((0..=d).map(|i| i.min(d - i).min(k + 1)).collect())
}

impl fmt::Display for HilbertFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top = self.top_degree();
        let strs: Vec<String> = (0..=top).map(|i| self.get(i).to_string()).collect();
        write!(f, "{}", strs.join(" "))
    }
}
