//! Run-length encoded BWT.
//!
//! The transform is kept as its maximal runs `(c, i, j)`. For every symbol
//! the start rows of its runs are stored in increasing order together with
//! the number of occurrences of the symbol before each run, so `rank` and
//! `select` are one predecessor search each. Space is `O(r)` words plus the
//! `sigma + 2` entries of `C`.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::serial::{Persist, Reader, Writer};
use crate::textio::{Symbol, TERMINATOR};

/// A maximal run `BWT[start..=end] = symbol`, rows 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Run {
    pub symbol: Symbol,
    pub start: usize,
    pub end: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct SymbolRuns {
    starts: Vec<usize>,
    ends: Vec<usize>,
    /// Occurrences of the symbol in `BWT[1..start)` for each run.
    before: Vec<usize>,
}

impl SymbolRuns {
    fn total(&self) -> usize {
        match (self.before.last(), self.starts.last(), self.ends.last()) {
            (Some(b), Some(s), Some(e)) => b + e - s + 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunLengthBwt {
    n: usize,
    sigma: usize,
    runs: Vec<Run>,
    run_starts: Vec<usize>,
    per_symbol: Vec<SymbolRuns>,
    /// `c[x]` = number of symbols smaller than `x`; length `sigma + 2`.
    c: Vec<usize>,
}

impl RunLengthBwt {
    /// Builds from a plain BWT given 0-based.
    pub fn from_bwt(bwt: &[Symbol]) -> Self {
        assert!(!bwt.is_empty(), "BWT must be nonempty");
        let mut runs: Vec<Run> = Vec::new();
        for (i, &c) in bwt.iter().enumerate() {
            match runs.last_mut() {
                Some(run) if run.symbol == c => run.end = i + 1,
                _ => runs.push(Run {
                    symbol: c,
                    start: i + 1,
                    end: i + 1,
                }),
            }
        }
        Self::from_runs(runs)
    }

    fn from_runs(runs: Vec<Run>) -> Self {
        let sigma = runs.iter().map(|r| r.symbol as usize).max().unwrap_or(0);
        let n = runs.last().map_or(0, |r| r.end);
        let mut per_symbol = vec![SymbolRuns::default(); sigma + 1];
        let mut counts = vec![0usize; sigma + 1];
        for run in &runs {
            let s = &mut per_symbol[run.symbol as usize];
            s.starts.push(run.start);
            s.ends.push(run.end);
            s.before.push(counts[run.symbol as usize]);
            counts[run.symbol as usize] += run.len();
        }
        let mut c = vec![0usize; sigma + 2];
        for x in 0..=sigma {
            c[x + 1] = c[x] + counts[x];
        }
        let run_starts = runs.iter().map(|r| r.start).collect();
        RunLengthBwt {
            n,
            sigma,
            runs,
            run_starts,
            per_symbol,
            c,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Largest symbol present.
    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn run_count(&self) -> usize {
        self.runs.len()
    }

    /// Number of symbols smaller than `c` in the text.
    pub fn c_array(&self, c: Symbol) -> usize {
        self.c[(c as usize).min(self.sigma + 1)]
    }

    /// Occurrences of `c` in the whole BWT.
    pub fn occurrences(&self, c: Symbol) -> usize {
        self.per_symbol.get(c as usize).map_or(0, SymbolRuns::total)
    }

    /// Occurrences of `c` in `BWT[1..=i]`.
    pub fn rank(&self, c: Symbol, i: usize) -> usize {
        let Some(s) = self.per_symbol.get(c as usize) else {
            return 0;
        };
        let k = s.starts.partition_point(|&start| start <= i);
        if k == 0 {
            return 0;
        }
        let k = k - 1;
        s.before[k] + i.min(s.ends[k]) - s.starts[k] + 1
    }

    /// Row of the `k`-th occurrence of `c` (`k` 1-based).
    pub fn select(&self, c: Symbol, k: usize) -> Result<usize> {
        let total = self.occurrences(c);
        if k == 0 || k > total {
            return Err(Error::SelectOutOfRange { symbol: c, k, total });
        }
        let s = &self.per_symbol[c as usize];
        let idx = s.before.partition_point(|&b| b < k) - 1;
        Ok(s.starts[idx] + (k - s.before[idx] - 1))
    }

    /// `BWT[i]`.
    pub fn char_at(&self, i: usize) -> Symbol {
        let k = self.run_starts.partition_point(|&start| start <= i) - 1;
        self.runs[k].symbol
    }

    /// The run covering row `i`.
    pub fn run_at(&self, i: usize) -> &Run {
        let k = self.run_starts.partition_point(|&start| start <= i) - 1;
        &self.runs[k]
    }

    /// Interval of `c·W` given the interval of `W`; empty when `c·W` does not occur.
    pub fn backward_step(&self, iv: Interval, c: Symbol) -> Interval {
        if iv.is_empty() || c as usize > self.sigma {
            return Interval::EMPTY;
        }
        let base = self.c[c as usize];
        let sp = base + self.rank(c, iv.sp - 1) + 1;
        let ep = base + self.rank(c, iv.ep);
        if sp > ep {
            Interval::EMPTY
        } else {
            Interval::new(sp, ep)
        }
    }

    pub fn full(&self) -> Interval {
        Interval::new(1, self.n)
    }

    /// Interval of `p` by backward search. A terminator anywhere but last
    /// cannot occur in the linear text.
    pub fn interval_of(&self, p: &[Symbol]) -> Interval {
        if !linear_pattern(p) {
            return Interval::EMPTY;
        }
        let mut iv = self.full();
        for &c in p.iter().rev() {
            iv = self.backward_step(iv, c);
            if iv.is_empty() {
                break;
            }
        }
        iv
    }

    pub fn count(&self, p: &[Symbol]) -> usize {
        self.interval_of(p).width()
    }

    /// First symbol of the suffix at row `p`, i.e. the `c` with `C[c] < p <= C[c+1]`.
    pub fn first_symbol(&self, p: usize) -> Symbol {
        (self.c.partition_point(|&x| x < p) - 1) as Symbol
    }

    /// LF mapping.
    pub fn lf(&self, p: usize) -> usize {
        let c = self.char_at(p);
        self.c[c as usize] + self.rank(c, p)
    }

    /// Inverse of LF: row of the suffix one position to the right.
    pub fn inverse_lf(&self, p: usize) -> usize {
        let c = self.first_symbol(p);
        self.select(c, p - self.c[c as usize]).expect("row within C range")
    }

    /// Occurrences of symbols smaller than `c` inside `iv`.
    pub fn count_smaller_in(&self, iv: Interval, c: Symbol) -> usize {
        if iv.is_empty() {
            return 0;
        }
        (0..(c as usize).min(self.sigma + 1))
            .map(|x| self.rank(x as Symbol, iv.ep) - self.rank(x as Symbol, iv.sp - 1))
            .sum()
    }

    /// The single symbol of a constant interval, `None` if `iv` spans more than one run.
    pub fn constant_symbol(&self, iv: Interval) -> Option<Symbol> {
        if iv.is_empty() {
            return None;
        }
        let run = self.run_at(iv.sp);
        (run.end >= iv.ep).then_some(run.symbol)
    }

    /// Distinct symbols inside `iv`, ascending.
    pub fn distinct_in(&self, iv: Interval) -> Vec<Symbol> {
        if iv.is_empty() {
            return Vec::new();
        }
        let first = self.run_starts.partition_point(|&start| start <= iv.sp) - 1;
        let mut out: Vec<Symbol> = self.runs[first..]
            .iter()
            .take_while(|r| r.start <= iv.ep)
            .map(|r| r.symbol)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// False when the terminator appears before the last position of `p`.
pub fn linear_pattern(p: &[Symbol]) -> bool {
    p.split_last().is_none_or(|(_, init)| !init.contains(&TERMINATOR))
}

impl Persist for RunLengthBwt {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.runs.len());
        for run in &self.runs {
            w.put_u8(run.symbol);
            w.put_usize(run.len());
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let count = r.get_usize()?;
        let mut runs = Vec::with_capacity(count.min(1 << 20));
        let mut next = 1;
        for _ in 0..count {
            let symbol = r.get_u8()?;
            let len = r.get_usize()?;
            if len == 0 || runs.last().is_some_and(|p: &Run| p.symbol == symbol) {
                return Err(Error::Format("runs must be nonempty and maximal".into()));
            }
            runs.push(Run {
                symbol,
                start: next,
                end: next + len - 1,
            });
            next += len;
        }
        if runs.is_empty() {
            return Err(Error::Format("empty BWT".into()));
        }
        Ok(Self::from_runs(runs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::{bwt, count_runs};
    use crate::testutil::{random_text, rng};
    use crate::textio::Text;

    fn plain_rank(b: &[Symbol], c: Symbol, i: usize) -> usize {
        b[..i].iter().filter(|&&x| x == c).count()
    }

    #[test]
    fn unary_bwt_runs() {
        let x = RunLengthBwt::from_bwt(&[1, 1, 1, 1, 0]);
        assert_eq!(
            x.runs(),
            &[Run { symbol: 1, start: 1, end: 4 }, Run { symbol: 0, start: 5, end: 5 }]
        );
        assert_eq!(x.rank(1, 3), 3);
        assert_eq!(x.rank(1, 0), 0);
        assert_eq!([x.char_at(1), x.char_at(4), x.char_at(5)], [1, 1, 0]);
    }

    #[test]
    fn distinct_symbols_make_distinct_runs() {
        let x = RunLengthBwt::from_bwt(&[3, 0, 2, 1]);
        assert_eq!(x.run_count(), 4);
        assert_eq!(RunLengthBwt::from_bwt(&[2]).char_at(1), 2);
    }

    #[test]
    fn banana() {
        // annb#aa
        let b = [1, 3, 3, 2, 0, 1, 1];
        let x = RunLengthBwt::from_bwt(&b);
        assert_eq!(x.run_count(), 5);
        assert_eq!(x.select(1, 3).unwrap(), 7);
        assert!(x.select(1, 4).is_err());
        assert!(x.select(1, 0).is_err());
        let an = x.backward_step(x.backward_step(x.full(), 3), 1);
        assert_eq!(an.width(), 2);
        assert_eq!(x.count(&[1, 3]), 2);
        assert_eq!(x.count(&[]), 7);
        assert_eq!(x.backward_step(x.full(), 3).width(), 2);
        assert!(x.backward_step(x.full(), 9).is_empty());
    }

    #[test]
    fn exhaustive_against_plain_arrays() {
        let mut rng = rng(17);
        for _ in 0..100 {
            let t = random_text(&mut rng, 512, 4);
            let b = bwt(&t);
            let x = RunLengthBwt::from_bwt(&b);
            assert_eq!(x.run_count(), count_runs(&b));
            for c in 0..=t.sigma() as Symbol {
                for i in 0..=b.len() {
                    assert_eq!(x.rank(c, i), plain_rank(&b, c, i));
                }
                for k in 1..=x.occurrences(c) {
                    let p = x.select(c, k).unwrap();
                    assert_eq!(b[p - 1], c);
                    assert_eq!(x.rank(c, p), k);
                }
            }
            for i in 1..=b.len() {
                assert_eq!(x.char_at(i), b[i - 1]);
                let c = b[i - 1];
                assert_eq!(x.select(c, x.rank(c, i)).unwrap(), i);
            }
        }
    }

    #[test]
    fn lf_is_a_permutation_with_inverse() {
        let mut rng = rng(19);
        for _ in 0..50 {
            let t = random_text(&mut rng, 300, 3);
            let x = RunLengthBwt::from_bwt(&bwt(&t));
            let n = x.len();
            let mut seen = vec![false; n + 1];
            for p in 1..=n {
                let q = x.lf(p);
                assert!(!seen[q]);
                seen[q] = true;
                assert_eq!(x.inverse_lf(q), p);
            }
        }
    }

    #[test]
    fn lf_walk_spells_text_backwards() {
        let t = Text::from_plain(b"mississippi").unwrap();
        let x = RunLengthBwt::from_bwt(&bwt(&t));
        // row 1 is the terminator suffix; LF walks leftwards through the text
        let mut row = 1;
        let mut out = Vec::new();
        for _ in 0..t.len() - 1 {
            out.push(x.char_at(row));
            row = x.lf(row);
        }
        out.reverse();
        assert_eq!(out, t.payload());
    }
}
