//! Lexicographic rank ranges from BWT intervals.
//!
//! Given a set of strings, each known only by its BWT interval and length,
//! [`FactorIntervalMap::query`] turns the interval of a string `W` into the
//! range of ranks, in the sorted list of the set, of the strings having `W`
//! as a prefix. Nothing is materialized beyond the intervals.
//!
//! Intervals of substrings are laminar, and a string sorts before every
//! string it is a proper prefix of, so the sort key is
//! `(sp ascending, ep descending, length ascending)`. Two strings may share
//! an interval only when one is a prefix of the other; this happens for
//! factors that are not right-maximal, so lengths are part of the key.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::serial::{Persist, Reader, Writer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    sp: usize,
    neg_ep: std::cmp::Reverse<usize>,
    len: usize,
}

impl Key {
    fn new(iv: Interval, len: usize) -> Self {
        Key {
            sp: iv.sp,
            neg_ep: std::cmp::Reverse(iv.ep),
            len,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorIntervalMap {
    n: usize,
    /// Sorted labels.
    keys: Vec<Key>,
    /// Distinct start positions, increasing.
    starts: Vec<usize>,
    /// `first_ps[i]` = number of labels starting before `starts[i]`.
    first_ps: Vec<usize>,
}

impl FactorIntervalMap {
    pub fn build(labels: &[(Interval, usize)], n: usize) -> Result<Self> {
        let mut keys = Vec::with_capacity(labels.len());
        for &(iv, len) in labels {
            if iv.is_empty() || iv.sp == 0 || iv.ep > n {
                return Err(Error::BadInterval { sp: iv.sp, ep: iv.ep, n });
            }
            keys.push(Key::new(iv, len));
        }
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateInterval {
                sp: w[0].sp,
                ep: w[0].neg_ep.0,
                len: w[0].len,
            });
        }
        let mut starts = Vec::new();
        let mut first_ps = Vec::new();
        for (i, k) in keys.iter().enumerate() {
            if starts.last() != Some(&k.sp) {
                starts.push(k.sp);
                first_ps.push(i);
            }
        }
        Ok(FactorIntervalMap { n, keys, starts, first_ps })
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// 1-based rank of a label, if present.
    pub fn rank_of(&self, iv: Interval, len: usize) -> Option<usize> {
        self.keys.binary_search(&Key::new(iv, len)).ok().map(|i| i + 1)
    }

    /// Labels starting strictly before row `i`.
    fn before(&self, i: usize) -> usize {
        let k = self.starts.partition_point(|&s| s < i);
        self.first_ps.get(k).copied().unwrap_or(self.keys.len())
    }

    /// Labels whose interval starts at `iv.sp` and ends beyond `iv.ep`, i.e.
    /// strict ancestors of the query that share its left edge.
    pub fn delta(&self, iv: Interval) -> usize {
        let lo = self.before(iv.sp);
        let hi = self.before(iv.sp + 1);
        self.keys[lo..hi].partition_point(|k| k.neg_ep.0 > iv.ep)
    }

    /// Rank range of the labels having `W` as a prefix, where `iv` is the
    /// interval of `W` and `len = |W|`. Empty when there are none.
    pub fn query(&self, iv: Interval, len: usize) -> Interval {
        if iv.is_empty() {
            return Interval::EMPTY;
        }
        let lo = self.before(iv.sp);
        let group_end = self.before(iv.sp + 1);
        let delta = self.delta(iv);
        // same interval, shorter: proper prefixes of W
        let shorter = self.keys[lo + delta..group_end]
            .iter()
            .take_while(|k| k.neg_ep.0 == iv.ep)
            .take_while(|k| k.len < len)
            .count();
        let inside = self.before(iv.ep + 1) - lo;
        let count = inside - delta - shorter;
        if count == 0 {
            return Interval::EMPTY;
        }
        let x = 1 + lo + delta + shorter;
        Interval::new(x, x + count - 1)
    }
}

impl Persist for FactorIntervalMap {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.n);
        w.put_usize(self.keys.len());
        for k in &self.keys {
            w.put_usize(k.sp);
            w.put_usize(k.neg_ep.0);
            w.put_usize(k.len);
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let n = r.get_usize()?;
        let k = r.get_usize()?;
        let mut labels = Vec::new();
        for _ in 0..k {
            let sp = r.get_usize()?;
            let ep = r.get_usize()?;
            let len = r.get_usize()?;
            labels.push((Interval::new(sp, ep), len));
        }
        Self::build(&labels, n)
    }
}
