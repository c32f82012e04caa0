use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

/// 2x² + y₁² + y₂² = 4xy₁y₂ as weights of the squares and the product
/// coefficient.
pub const WEIGHTS: [u128; 3] = [2, 1, 1];
pub const PRODUCT: u128 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MarkoffTriple {
    pub x: u64,
    pub y1: u64,
    pub y2: u64,
}

impl MarkoffTriple {
    pub fn as_array(&self) -> [u64; 3] {
        [self.x, self.y1, self.y2]
    }

    fn from_array(v: [u64; 3]) -> Self {
        MarkoffTriple { x: v[0], y1: v[1], y2: v[2] }
    }

    pub fn satisfies(&self) -> bool {
        satisfies(self.as_array())
    }

    /// Vieta flip in slot i. Fixing the other two coordinates the equation
    /// reads wᵢv² − (kΠ_{j≠i}vⱼ)v + const = 0, so the second root is
    /// kΠ_{j≠i}vⱼ/wᵢ − vᵢ.
    pub fn flip(&self, i: usize) -> Option<Self> {
        let v = self.as_array();
        let prod: u128 = (0..3).filter(|&j| j != i).map(|j| v[j] as u128).product();
        let lin = PRODUCT.checked_mul(prod)?;
        if lin % WEIGHTS[i] != 0 {
            return None;
        }
        let other = (lin / WEIGHTS[i]).checked_sub(v[i] as u128)?;
        if other == 0 {
            return None;
        }
        let mut w = v;
        w[i] = u64::try_from(other).ok()?;
        Some(Self::from_array(w))
    }
}

pub fn satisfies(v: [u64; 3]) -> bool {
    let lhs: Option<u128> = (0..3).try_fold(0u128, |s, i| s.checked_add(WEIGHTS[i] * (v[i] as u128).checked_mul(v[i] as u128)?));
    let rhs = (v[0] as u128).checked_mul(v[1] as u128).and_then(|p| p.checked_mul(v[2] as u128)).and_then(|p| p.checked_mul(PRODUCT));
    matches!((lhs, rhs), (Some(a), Some(b)) if a == b)
}

/// All positive solutions with every component ≤ bound, reached from
/// (1, 1, 1) by Vieta flips, sorted.
pub fn markoff_tree(bound: u64) -> Vec<MarkoffTriple> {
    let root = MarkoffTriple { x: 1, y1: 1, y2: 1 };
    debug_assert!(root.satisfies());
    let mut seen = BTreeSet::new();
    if bound == 0 {
        return Vec::new();
    }
    seen.insert(root);
    let mut queue = VecDeque::from([root]);
    while let Some(t) = queue.pop_front() {
        for i in 0..3 {
            if let Some(n) = t.flip(i) {
                if n.as_array().iter().all(|&c| c <= bound) && seen.insert(n) {
                    debug_assert!(n.satisfies());
                    queue.push_back(n);
                }
            }
        }
    }
    seen.into_iter().collect()
}

/// Distinct x components of solutions with all components ≤ bound.
pub fn x_values(bound: u64) -> Vec<u64> {
    markoff_tree(bound).iter().map(|t| t.x).collect::<BTreeSet<_>>().into_iter().collect()
}

/// Distinct y components (either slot) of solutions with all components ≤ bound.
pub fn y_values(bound: u64) -> Vec<u64> {
    markoff_tree(bound).iter().flat_map(|t| [t.y1, t.y2]).collect::<BTreeSet<_>>().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: u64, y1: u64, y2: u64) -> MarkoffTriple {
        MarkoffTriple { x, y1, y2 }
    }

    #[test]
    fn small_bounds() {
        assert_eq!(markoff_tree(1), vec![t(1, 1, 1)]);
        let v = markoff_tree(20);
        assert!(v.contains(&t(5, 1, 3)) && v.contains(&t(5, 1, 17)));
        assert!(v.iter().all(MarkoffTriple::satisfies));
    }

    #[test]
    fn flips_are_involutions() {
        for s in markoff_tree(1000) {
            for i in 0..3 {
                if let Some(f) = s.flip(i) {
                    assert!(f.satisfies());
                    assert_eq!(f.flip(i), Some(s));
                }
            }
        }
    }

    #[test]
    fn value_lists() {
        assert_eq!(y_values(20), vec![1, 3, 11, 17]);
        // The solutions of the equation have x ∈ {1, 5, 29, 65, 169, …}.
        assert_eq!(x_values(30), vec![1, 5, 29]);
        assert_eq!(x_values(200), vec![1, 5, 29, 65, 169]);
    }
}
