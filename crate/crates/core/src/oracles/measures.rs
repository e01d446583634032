use super::naive::{count_runs, naive_factorize, naive_maximal_repeats};
use super::suffix_tree::{NodeIdx, OracleSuffixTree};
use super::{bwt_from_suffix_array, SuffixArrayBundle};
use crate::textio::Text;

/// Repetitiveness measures of one text.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MeasureReport {
    pub n: usize,
    pub sigma: usize,
    /// Maximal repeats, the empty string counted.
    pub n_maximal_repeats: usize,
    /// Right extensions of maximal repeats (`|E^r| + |F^r|`).
    pub e: usize,
    /// Left extensions of maximal repeats, i.e. `e` of the reversed text.
    pub e_left: usize,
    pub r: usize,
    pub r_rev: usize,
    pub z: usize,
    pub z_rev: usize,
}

/// Suffix-tree edges leaving maximal-repeat nodes, split by whether the
/// destination is also a maximal repeat.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeClasses {
    pub e_r: usize,
    pub f_r: usize,
}

impl EdgeClasses {
    pub fn total(&self) -> usize {
        self.e_r + self.f_r
    }
}

pub fn classify_edges(st: &OracleSuffixTree) -> EdgeClasses {
    let mut out = EdgeClasses::default();
    for v in st.internal_nodes().filter(|&v| st.is_maximal_repeat(v)) {
        for &w in &st.node(v).children {
            if st.is_maximal_repeat(w) {
                out.e_r += 1;
            } else {
                out.f_r += 1;
            }
        }
    }
    out
}

/// Maximal repeats `W` such that no `WV`, `V` nonempty, is left-maximal.
pub fn rightmost_maximal_repeats(st: &OracleSuffixTree) -> Vec<NodeIdx> {
    st.internal_nodes()
        .filter(|&v| st.is_maximal_repeat(v))
        .filter(|&v| st.node(v).children.iter().all(|&w| st.left_symbols(w).len() == 1))
        .collect()
}

/// Left-hand side of the run-count sandwich over rightmost maximal repeats.
pub fn run_lower_bound(t: &Text, st: &OracleSuffixTree) -> usize {
    let rightmost = rightmost_maximal_repeats(st);
    let mut union = vec![false; t.sigma() + 1];
    let mut sum = 0;
    for &v in &rightmost {
        let left = st.left_symbols(v);
        sum += left.len();
        for c in left {
            union[c as usize] = true;
        }
    }
    let uncovered = union.iter().filter(|&&b| !b).count();
    uncovered + sum + 1 - rightmost.len()
}

/// Every measure by the most direct route: brute-force maximal repeats and
/// LZ parse, run counts off the suffix-array BWT, and edge classes off the
/// oracle tree.
pub fn naive_measures(t: &Text) -> MeasureReport {
    let rev = t.reversed();
    let one_side = |t: &Text| {
        let b = SuffixArrayBundle::build(t);
        let st = OracleSuffixTree::build(t, &b);
        let r = count_runs(&bwt_from_suffix_array(t, &b));
        let e = classify_edges(&st).total();
        let z = naive_factorize(t).len();
        (r, e, z)
    };
    let (r, e, z) = one_side(t);
    let (r_rev, e_left, z_rev) = one_side(&rev);
    MeasureReport {
        n: t.len(),
        sigma: t.sigma(),
        n_maximal_repeats: naive_maximal_repeats(t).len(),
        e,
        e_left,
        r,
        r_rev,
        z,
        z_rev,
    }
}
