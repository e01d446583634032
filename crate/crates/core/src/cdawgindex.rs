//! CDAWG + RLBWT index.
//!
//! The RLBWT decides whether the pattern occurs. If it does, a blind descent
//! from the source follows arcs by their first symbol only, accumulating
//! `i` (pattern symbols consumed, the sum of `right`) and `j` (one plus the
//! sum of `left`, the offset of the pattern inside the current maximal
//! repeat). A sink arc reports `pos + j - 1`; a node reached with `i >= m`
//! reports every sink arc below it the same way.

use crate::cdawg::{Cdawg, SOURCE};
use crate::error::Result;
use crate::oracles::{bwt_from_suffix_array, OracleSuffixTree, SuffixArrayBundle};
use crate::rlbwt::RunLengthBwt;
use crate::serial::IndexFile;
use crate::textio::{Symbol, Text};

/// Work done by one locate call.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LocateStats {
    /// Arcs taken by the blind descent.
    pub descent_arcs: usize,
    /// Arcs visited while reporting.
    pub report_arcs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdawgRlbwtIndex {
    fwd: RunLengthBwt,
    cdawg: Cdawg,
}

impl CdawgRlbwtIndex {
    pub fn build(t: &Text) -> Self {
        let fb = SuffixArrayBundle::build(t);
        let rb = SuffixArrayBundle::build(&t.reversed());
        let st = OracleSuffixTree::build(t, &fb);
        let fwd = RunLengthBwt::from_bwt(&bwt_from_suffix_array(t, &fb));
        let cdawg = Cdawg::from_suffix_tree(&st, &fb, &rb, &fwd);
        CdawgRlbwtIndex { fwd, cdawg }
    }

    pub fn from_parts(fwd: RunLengthBwt, cdawg: Cdawg) -> Self {
        CdawgRlbwtIndex { fwd, cdawg }
    }

    pub fn rlbwt(&self) -> &RunLengthBwt {
        &self.fwd
    }

    pub fn cdawg(&self) -> &Cdawg {
        &self.cdawg
    }

    pub fn count(&self, p: &[Symbol]) -> usize {
        self.fwd.count(p)
    }

    pub fn locate(&self, p: &[Symbol]) -> Vec<usize> {
        self.locate_with_stats(p).0
    }

    /// Sorted occurrences of `p` and the work spent finding them.
    pub fn locate_with_stats(&self, p: &[Symbol]) -> (Vec<usize>, LocateStats) {
        blind_locate(&self.fwd, &self.cdawg, p)
    }

    pub fn save(&self, f: &mut IndexFile) {
        f.put("CDWG/rlbwt", &self.fwd);
        self.cdawg.save(f, "CDWG/graph");
    }

    pub fn load(f: &IndexFile) -> Result<Self> {
        Ok(CdawgRlbwtIndex {
            fwd: f.take("CDWG/rlbwt")?,
            cdawg: Cdawg::load(f, "CDWG/graph")?,
        })
    }
}

/// Blind-search locate over any CDAWG paired with the BWT of its text.
pub fn blind_locate(fwd: &RunLengthBwt, g: &Cdawg, p: &[Symbol]) -> (Vec<usize>, LocateStats) {
    let mut stats = LocateStats::default();
    if fwd.count(p) == 0 {
        return (Vec::new(), stats);
    }
    let sink = g.sink();
    let m = p.len();
    let (mut v, mut i, mut j) = (SOURCE, 0, 1);
    let mut out = Vec::new();
    loop {
        if i >= m {
            let (seeds, visited) = g.dfs_reachable_sink_arcs(v, j);
            stats.report_arcs = visited;
            out.extend(seeds.into_iter().map(|(pos, j)| pos + j - 1));
            break;
        }
        let a = g.arc_by_symbol(v, p[i]).expect("pattern occurs");
        let arc = g.arc(a);
        stats.descent_arcs += 1;
        if arc.target == sink {
            out.push(arc.pos + j - 1);
            break;
        }
        i += arc.right;
        j += arc.left;
        v = arc.target;
    }
    out.sort_unstable();
    (out, stats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_pattern;
    use crate::oracles::{classify_edges, naive_occurrences};
    use crate::testutil::{random_text, rng};

    #[test]
    fn small_examples() {
        let t = Text::from_plain(b"banana").unwrap();
        let ix = CdawgRlbwtIndex::build(&t);
        assert_eq!(ix.locate(&t.encode_pattern(b"an").unwrap()), vec![2, 4]);
        assert_eq!(ix.locate(&t.encode_pattern(b"banana").unwrap()), vec![1]);
        assert!(ix.locate(&[2, 2]).is_empty());
        let t = Text::from_plain(b"0000").unwrap();
        let ix = CdawgRlbwtIndex::build(&t);
        assert_eq!(ix.rlbwt().run_count(), 2);
        assert_eq!(ix.cdawg().arc_count(), 8);
        assert_eq!(ix.locate(&[1, 1, 1, 1]), vec![1]);
        assert_eq!(ix.locate(&[1, 1]), vec![1, 2, 3]);
        assert_eq!(ix.locate(&[]), vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn matches_oracle_with_bounded_reporting() {
        let mut rng = rng(73);
        for case in 0..300 {
            let t = random_text(&mut rng, 300, 1 + case % 4);
            let ix = CdawgRlbwtIndex::build(&t);
            let st = OracleSuffixTree::build(&t, &SuffixArrayBundle::build(&t));
            // runs never exceed the edges into non-maximal-repeat nodes
            assert!(ix.rlbwt().run_count() <= classify_edges(&st).f_r);
            for _ in 0..5 {
                let p = t.encode_pattern(&random_pattern(&mut rng, &t, 16)).unwrap();
                let (got, stats) = ix.locate_with_stats(&p);
                let want = naive_occurrences(&t, &p);
                assert_eq!(got, want);
                assert!(stats.report_arcs <= 2 * want.len());
                assert!(stats.descent_arcs <= p.len());
            }
        }
    }

    #[test]
    fn round_trip() {
        let t = Text::from_plain(b"banana").unwrap();
        let ix = CdawgRlbwtIndex::build(&t);
        let mut f = IndexFile::new();
        ix.save(&mut f);
        let back = CdawgRlbwtIndex::load(&IndexFile::from_bytes(&f.to_bytes()).unwrap()).unwrap();
        assert_eq!(back, ix);
    }
}
