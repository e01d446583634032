//! Desk-scale ground truth.
//!
//! Everything here favors clarity over speed. The suffix array is built by
//! prefix doubling, the suffix tree is read off the LCP intervals, and the
//! remaining helpers are brute force. Composite structures elsewhere in the
//! crate are tested against these.

mod measures;
mod naive;
mod suffix_tree;

pub use measures::{
    classify_edges, naive_measures, rightmost_maximal_repeats, run_lower_bound, EdgeClasses, MeasureReport,
};
pub use naive::{
    count_runs, naive_factorize, naive_matching_statistics, naive_maximal_repeats, naive_occurrences,
    right_maximal_substrings,
};
pub use suffix_tree::{enumerate_weiner_links, NodeIdx, OracleSuffixTree, StNode, WeinerLinkSets};

use crate::textio::{Symbol, Text};

/// Suffix array with inverse and LCP. Storage is 0-based; stored values
/// (text positions and rows) are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuffixArrayBundle {
    /// `sa[r - 1]` is the text position of the `r`-th smallest suffix.
    pub sa: Vec<usize>,
    /// `isa[p - 1]` is the row of the suffix starting at `p`.
    pub isa: Vec<usize>,
    /// `lcp[r - 1]` is the LCP of the suffixes at rows `r - 1` and `r`; `lcp[0] = 0`.
    pub lcp: Vec<usize>,
}

impl SuffixArrayBundle {
    pub fn build(t: &Text) -> Self {
        let sa = suffix_array(t.symbols());
        let n = sa.len();
        let mut isa = vec![0; n];
        for (r, &p) in sa.iter().enumerate() {
            isa[p - 1] = r + 1;
        }
        let lcp = kasai(t.symbols(), &sa, &isa);
        SuffixArrayBundle { sa, isa, lcp }
    }

    #[inline]
    pub fn sa(&self, row: usize) -> usize {
        self.sa[row - 1]
    }

    #[inline]
    pub fn isa(&self, pos: usize) -> usize {
        self.isa[pos - 1]
    }

    #[inline]
    pub fn lcp(&self, row: usize) -> usize {
        self.lcp[row - 1]
    }

    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }
}

/// Prefix doubling over the terminated text. Returns 1-based positions.
fn suffix_array(s: &[Symbol]) -> Vec<usize> {
    let n = s.len();
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut sa: Vec<usize> = (0..n).collect();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    loop {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) != key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa.iter().map(|&i| i + 1).collect()
}

fn kasai(s: &[Symbol], sa: &[usize], isa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut lcp = vec![0; n];
    let mut h = 0usize;
    for p in 0..n {
        let r = isa[p] - 1;
        if r == 0 {
            h = 0;
            continue;
        }
        let q = sa[r - 1] - 1;
        while p + h < n && q + h < n && s[p + h] == s[q + h] {
            h += 1;
        }
        lcp[r] = h;
        h = h.saturating_sub(1);
    }
    lcp
}

/// `BWT[r] = T[SA[r] - 1]`, with `T[0] := T[n]`. Returned 0-based.
pub fn bwt_from_suffix_array(t: &Text, b: &SuffixArrayBundle) -> Vec<Symbol> {
    let n = t.len();
    b.sa.iter().map(|&p| if p == 1 { t.at(n) } else { t.at(p - 1) }).collect()
}

/// Shorthand for building the suffix array and reading off the BWT.
pub fn bwt(t: &Text) -> Vec<Symbol> {
    bwt_from_suffix_array(t, &SuffixArrayBundle::build(t))
}
