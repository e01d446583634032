//! LZ77 + RLBWT index.
//!
//! Occurrences that contain a factor start (primary) are found by splitting
//! the pattern at its rightmost contained factor start: `P[k..m]` must be a
//! prefix of the factor starting there and `P[1..k-1]` must end right before
//! it. The first condition is an `x` range over the sorted distinct factors,
//! the second a `y` range over the reversed text prefixes that end at factor
//! boundaries, both read off backward searches. All other occurrences lie
//! strictly inside a copy factor and are recovered by following sources.
//!
//! The boundary before factor `j` (start `p_j`) is marked at the `BWT_rev`
//! row of the suffix of `rev(T) = rev(S)·#` starting at `n - p_j + 1`, which
//! spells `rev(T[1..p_j-1])·#`.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::intervalmap::FactorIntervalMap;
use crate::lz77::LzFactorization;
use crate::oracles::{bwt_from_suffix_array, SuffixArrayBundle};
use crate::rangerep::{Grid, GridPoint, SourceEntry, SourceSet};
use crate::rlbwt::{linear_pattern, RunLengthBwt};
use crate::serial::{IndexFile, Reader, Writer};
use crate::textio::{Symbol, Text};

/// Sorted, disjoint occurrence sets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Occurrences {
    pub primary: Vec<usize>,
    pub secondary: Vec<usize>,
}

impl Occurrences {
    pub fn len(&self) -> usize {
        self.primary.len() + self.secondary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every occurrence, sorted.
    pub fn all(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.primary.iter().chain(&self.secondary).copied().collect();
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LzRlbwtIndex {
    fwd: RunLengthBwt,
    rev: RunLengthBwt,
    parse: LzFactorization,
    /// `BWT_rev` rows of the marked reversed prefixes, increasing.
    marks: Vec<usize>,
    factor_map: FactorIntervalMap,
    grid: Grid,
    sources: SourceSet,
}

impl LzRlbwtIndex {
    pub fn build(t: &Text) -> Self {
        let n = t.len();
        let rev_text = t.reversed();
        let fb = SuffixArrayBundle::build(t);
        let rb = SuffixArrayBundle::build(&rev_text);
        let fwd = RunLengthBwt::from_bwt(&bwt_from_suffix_array(t, &fb));
        let rev = RunLengthBwt::from_bwt(&bwt_from_suffix_array(&rev_text, &rb));
        let parse = LzFactorization::factorize_with(t, &fb);
        let s = t.symbols();

        let mut marks: Vec<usize> = parse.factors().iter().map(|f| rb.isa(n - f.start + 1)).collect();
        marks.sort_unstable();

        let labels: Vec<(Interval, usize)> = parse
            .distinct_factors(t)
            .iter()
            .map(|d| (fwd.interval_of(&s[d.start - 1..d.start - 1 + d.len]), d.len))
            .collect();
        let factor_map = FactorIntervalMap::build(&labels, n).expect("distinct factors have distinct labels");

        let mut points = Vec::with_capacity(parse.z());
        let mut sources = Vec::new();
        for f in parse.factors() {
            let iv = fwd.interval_of(&s[f.start - 1..f.end()]);
            let x = factor_map.rank_of(iv, f.len).expect("every factor is labeled");
            let row = rb.isa(n - f.start + 1);
            let y = marks.binary_search(&row).unwrap() + 1;
            points.push(GridPoint { x, y, payload: f.start });
            if let Some(src) = f.source() {
                sources.push(SourceEntry {
                    src_start: src,
                    src_end: src + f.len - 1,
                    factor_start: f.start,
                });
            }
        }
        LzRlbwtIndex {
            fwd,
            rev,
            parse,
            marks,
            factor_map,
            grid: Grid::build(points).expect("y ranks are distinct"),
            sources: SourceSet::build(sources).expect("sources precede their factors"),
        }
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn z(&self) -> usize {
        self.parse.z()
    }

    pub fn parse(&self) -> &LzFactorization {
        &self.parse
    }

    pub fn rlbwt(&self) -> &RunLengthBwt {
        &self.fwd
    }

    pub fn rlbwt_rev(&self) -> &RunLengthBwt {
        &self.rev
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn factor_map(&self) -> &FactorIntervalMap {
        &self.factor_map
    }

    pub fn marks(&self) -> &[usize] {
        &self.marks
    }

    pub fn count(&self, p: &[Symbol]) -> usize {
        self.fwd.count(p)
    }

    fn mark_rank(&self, row: usize) -> usize {
        self.marks.partition_point(|&r| r <= row)
    }

    pub fn locate(&self, p: &[Symbol]) -> Occurrences {
        let m = p.len();
        if m == 0 {
            return Occurrences {
                primary: (1..=self.len()).collect(),
                secondary: Vec::new(),
            };
        }
        if !linear_pattern(p) {
            return Occurrences::default();
        }
        // suffix_iv[k - 1] = interval of p[k..m]
        let mut suffix_iv = vec![Interval::EMPTY; m];
        let mut iv = self.fwd.full();
        for k in (1..=m).rev() {
            iv = self.fwd.backward_step(iv, p[k - 1]);
            if iv.is_empty() {
                return Occurrences::default();
            }
            suffix_iv[k - 1] = iv;
        }

        let mut primary = Vec::new();
        let mut rev_iv = self.rev.full();
        for k in 1..=m {
            if k > 1 {
                rev_iv = self.rev.backward_step(rev_iv, p[k - 2]);
                if rev_iv.is_empty() {
                    break;
                }
            }
            let xs = self.factor_map.query(suffix_iv[k - 1], m - k + 1);
            if xs.is_empty() {
                continue;
            }
            let ys = Interval::new(self.mark_rank(rev_iv.sp - 1) + 1, self.mark_rank(rev_iv.ep));
            let found = self.grid.query(xs, ys);
            primary.extend(found.into_iter().map(|pj| pj - (k - 1)));
        }

        let mut seen: HashSet<usize> = primary.iter().copied().collect();
        let mut queue: VecDeque<usize> = primary.iter().copied().collect();
        let mut secondary = Vec::new();
        while let Some(s) = queue.pop_front() {
            for (factor_start, delta) in self.sources.query(s, s + m - 1) {
                // delta 0 lands on the factor start, which is primary
                if delta == 0 {
                    continue;
                }
                let q = factor_start + delta;
                if seen.insert(q) {
                    secondary.push(q);
                    queue.push_back(q);
                }
            }
        }
        primary.sort_unstable();
        secondary.sort_unstable();
        Occurrences { primary, secondary }
    }

    pub fn save(&self, f: &mut IndexFile) {
        f.put("LZRL/rlbwt", &self.fwd);
        f.put("LZRL/rlbwt_rev", &self.rev);
        f.put("LZRL/parse", &self.parse);
        let mut w = Writer::default();
        w.put_usizes(&self.marks);
        f.push("LZRL/marks", w.into_inner());
        f.put("LZRL/factors", &self.factor_map);
        f.put("LZRL/grid", &self.grid);
        f.put("LZRL/sources", &self.sources);
    }

    pub fn load(f: &IndexFile) -> Result<Self> {
        let fwd: RunLengthBwt = f.take("LZRL/rlbwt")?;
        let rev: RunLengthBwt = f.take("LZRL/rlbwt_rev")?;
        let parse: LzFactorization = f.take("LZRL/parse")?;
        let body = f.get("LZRL/marks").ok_or_else(|| Error::MissingSection("LZRL/marks".into()))?;
        let mut r = Reader::new(body);
        let marks = r.get_usizes()?;
        r.finish()?;
        let ix = LzRlbwtIndex {
            fwd,
            rev,
            parse,
            marks,
            factor_map: f.take("LZRL/factors")?,
            grid: f.take("LZRL/grid")?,
            sources: f.take("LZRL/sources")?,
        };
        let n = ix.fwd.len();
        if ix.rev.len() != n || ix.parse.text_len() != n || ix.marks.len() != ix.parse.z() || ix.grid.len() != ix.parse.z()
        {
            return Err(Error::Format("LZRL sections disagree".into()));
        }
        Ok(ix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::random_pattern;
    use crate::oracles::naive_occurrences;
    use crate::testutil::{random_text, rng};

    fn contains_factor_start(ix: &LzRlbwtIndex, s: usize, m: usize) -> bool {
        ix.parse().factors().iter().any(|f| s <= f.start && f.start < s + m)
    }

    #[test]
    fn unary_text() {
        let t = Text::from_plain(b"0000").unwrap();
        let ix = LzRlbwtIndex::build(&t);
        assert_eq!(ix.z(), 3);
        assert_eq!(ix.grid().len(), 3);
        let occ = ix.locate(&[1, 1]);
        assert_eq!(occ.primary, vec![1, 2]);
        assert_eq!(occ.secondary, vec![3]);
    }

    #[test]
    fn block_family() {
        let t = Text::from_plain(b"010010001").unwrap();
        let ix = LzRlbwtIndex::build(&t);
        assert_eq!(ix.z(), 6);
        assert_eq!(ix.factor_map().len(), 5);
        assert_eq!(ix.locate(&[1, 2]).all(), vec![1, 4, 8]);
    }

    #[test]
    fn whole_text_is_one_primary() {
        let t = Text::from_plain(b"abracadabra").unwrap();
        let ix = LzRlbwtIndex::build(&t);
        let occ = ix.locate(t.symbols());
        assert_eq!(occ.primary, vec![1]);
        assert!(occ.secondary.is_empty());
        assert_eq!(ix.count(&t.encode_pattern(b"abra").unwrap()), 2);
        assert!(ix.locate(&[1, 0, 1]).is_empty());
    }

    #[test]
    fn matches_oracle_and_partition() {
        let mut rng = rng(53);
        for case in 0..400 {
            let t = random_text(&mut rng, 200, 1 + case % 4);
            let ix = LzRlbwtIndex::build(&t);
            for _ in 0..5 {
                let p = t.encode_pattern(&random_pattern(&mut rng, &t, 12)).unwrap();
                let want = naive_occurrences(&t, &p);
                let occ = ix.locate(&p);
                assert_eq!(occ.all(), want, "case {case}");
                assert_eq!(ix.count(&p), want.len());
                for &s in &occ.primary {
                    assert!(contains_factor_start(&ix, s, p.len()));
                }
                for &s in &occ.secondary {
                    assert!(!contains_factor_start(&ix, s, p.len()));
                }
                if let Some(&first) = want.first() {
                    assert!(occ.primary.contains(&first));
                }
            }
        }
    }

    #[test]
    fn round_trip() {
        let t = Text::from_plain(b"mississippi").unwrap();
        let ix = LzRlbwtIndex::build(&t);
        let mut f = IndexFile::new();
        ix.save(&mut f);
        let g = IndexFile::from_bytes(&f.to_bytes()).unwrap();
        let back = LzRlbwtIndex::load(&g).unwrap();
        assert_eq!(back, ix);
        let mut h = IndexFile::new();
        back.save(&mut h);
        assert_eq!(h.to_bytes(), f.to_bytes());
    }
}
