//! Greedy self-referential LZ77.
//!
//! A symbol with no earlier occurrence in the text starts a length-1 novel
//! factor. Every other factor is the longest prefix of the unparsed suffix
//! that also starts at some earlier position; the source may overlap the
//! factor itself. The longest previous match is found among the nearest
//! suffix-array neighbours with a smaller text position.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::oracles::SuffixArrayBundle;
use crate::serial::{Persist, Reader, Writer};
use crate::textio::{Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    Copy { source: usize },
    Novel { symbol: Symbol },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Factor {
    pub start: usize,
    pub len: usize,
    pub kind: FactorKind,
}

impl Factor {
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    pub fn source(&self) -> Option<usize> {
        match self.kind {
            FactorKind::Copy { source } => Some(source),
            FactorKind::Novel { .. } => None,
        }
    }
}

/// A distinct factor string, identified by its first use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinctFactor {
    pub start: usize,
    pub len: usize,
    /// 1-based indices of the factors spelling this string.
    pub uses: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LzFactorization {
    factors: Vec<Factor>,
}

impl LzFactorization {
    pub fn factorize(t: &Text) -> Self {
        Self::factorize_with(t, &SuffixArrayBundle::build(t))
    }

    pub fn factorize_with(t: &Text, b: &SuffixArrayBundle) -> Self {
        let s = t.symbols();
        let n = s.len();
        // nearest rows above and below with a smaller text position
        let mut psv = vec![0usize; n];
        let mut nsv = vec![0usize; n];
        let mut stack: Vec<usize> = Vec::new();
        for (r, slot) in psv.iter_mut().enumerate() {
            while stack.last().is_some_and(|&q| b.sa[q] > b.sa[r]) {
                stack.pop();
            }
            *slot = stack.last().map_or(0, |&q| b.sa[q]);
            stack.push(r);
        }
        stack.clear();
        for r in (0..n).rev() {
            while stack.last().is_some_and(|&q| b.sa[q] > b.sa[r]) {
                stack.pop();
            }
            nsv[r] = stack.last().map_or(0, |&q| b.sa[q]);
            stack.push(r);
        }

        let common = |j: usize, k: usize| (0..n - k + 1).take_while(|&d| s[j - 1 + d] == s[k - 1 + d]).count();
        let mut factors = Vec::new();
        let mut k = 1;
        while k <= n {
            let row = b.isa(k) - 1;
            let mut best = (0usize, 0usize);
            for j in [psv[row], nsv[row]] {
                if j == 0 {
                    continue;
                }
                let l = common(j, k);
                if l > best.0 || (l == best.0 && l > 0 && j < best.1) {
                    best = (l, j);
                }
            }
            let factor = if best.0 == 0 {
                Factor {
                    start: k,
                    len: 1,
                    kind: FactorKind::Novel { symbol: s[k - 1] },
                }
            } else {
                Factor {
                    start: k,
                    len: best.0,
                    kind: FactorKind::Copy { source: best.1 },
                }
            };
            k += factor.len;
            factors.push(factor);
        }
        LzFactorization { factors }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn z(&self) -> usize {
        self.factors.len()
    }

    /// Factor start positions, increasing.
    pub fn boundaries(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.start).collect()
    }

    pub fn text_len(&self) -> usize {
        self.factors.last().map_or(0, |f| f.end())
    }

    /// Replays the factors left to right, copying symbol by symbol so that
    /// overlapping sources work.
    pub fn decompress(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = Vec::with_capacity(self.text_len());
        for f in &self.factors {
            match f.kind {
                FactorKind::Novel { symbol } => out.push(symbol),
                FactorKind::Copy { source } => {
                    for d in 0..f.len {
                        out.push(out[source - 1 + d]);
                    }
                }
            }
        }
        out
    }

    /// Distinct factor strings in lexicographic order.
    pub fn distinct_factors(&self, t: &Text) -> Vec<DistinctFactor> {
        let mut groups: BTreeMap<&[Symbol], DistinctFactor> = BTreeMap::new();
        for (i, f) in self.factors.iter().enumerate() {
            let key = &t.symbols()[f.start - 1..f.end()];
            groups
                .entry(key)
                .or_insert_with(|| DistinctFactor {
                    start: f.start,
                    len: f.len,
                    uses: Vec::new(),
                })
                .uses
                .push(i + 1);
        }
        groups.into_values().collect()
    }

    /// One line per factor: index, start, length, kind, source (or symbol).
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("factor\tstart\tlength\tkind\tsource\n");
        for (i, f) in self.factors.iter().enumerate() {
            let (kind, src) = match f.kind {
                FactorKind::Copy { source } => ("copy", source.to_string()),
                FactorKind::Novel { symbol } => ("novel", format!("sym:{symbol}")),
            };
            out.push_str(&format!("{}\t{}\t{}\t{}\t{}\n", i + 1, f.start, f.len, kind, src));
        }
        out
    }
}

impl Persist for LzFactorization {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.factors.len());
        for f in &self.factors {
            w.put_usize(f.len);
            match f.kind {
                FactorKind::Copy { source } => {
                    w.put_u8(0);
                    w.put_usize(source);
                }
                FactorKind::Novel { symbol } => {
                    w.put_u8(1);
                    w.put_usize(symbol as usize);
                }
            }
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let count = r.get_usize()?;
        let mut factors = Vec::new();
        let mut start = 1;
        for _ in 0..count {
            let len = r.get_usize()?;
            let kind = match r.get_u8()? {
                0 => {
                    let source = r.get_usize()?;
                    if source == 0 || source >= start {
                        return Err(Error::Format("copy source must precede the factor".into()));
                    }
                    FactorKind::Copy { source }
                }
                1 => FactorKind::Novel {
                    symbol: u8::try_from(r.get_usize()?).map_err(|_| Error::Format("bad symbol".into()))?,
                },
                _ => return Err(Error::Format("bad factor kind".into())),
            };
            if len == 0 {
                return Err(Error::Format("empty factor".into()));
            }
            factors.push(Factor { start, len, kind });
            start += len;
        }
        Ok(LzFactorization { factors })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracles::naive_factorize;
    use crate::testutil::{random_text, rng};

    fn lens(f: &LzFactorization) -> Vec<usize> {
        f.factors().iter().map(|f| f.len).collect()
    }

    #[test]
    fn unary_text() {
        let t = Text::from_plain(b"0000").unwrap();
        let f = LzFactorization::factorize(&t);
        assert_eq!(
            f.factors(),
            &[
                Factor { start: 1, len: 1, kind: FactorKind::Novel { symbol: 1 } },
                Factor { start: 2, len: 3, kind: FactorKind::Copy { source: 1 } },
                Factor { start: 5, len: 1, kind: FactorKind::Novel { symbol: 0 } },
            ]
        );
        assert_eq!(f.distinct_factors(&t).len(), 3);
    }

    #[test]
    fn block_family_parse() {
        let t = Text::from_plain(b"010010001").unwrap();
        let f = LzFactorization::factorize(&t);
        assert_eq!(f.z(), 6);
        assert_eq!(lens(&f), vec![1, 1, 1, 4, 2, 1]);
        let d = f.distinct_factors(&t);
        let strings: Vec<&[Symbol]> = d.iter().map(|d| &t.symbols()[d.start - 1..d.start - 1 + d.len]).collect();
        // #, 0, 01, 0100, 1
        assert_eq!(strings, vec![&[0][..], &[1], &[1, 2], &[1, 2, 1, 1], &[2]]);
        assert_eq!(d[1].uses, vec![1, 3]);
    }

    #[test]
    fn all_novel() {
        let t = Text::from_plain(b"abcdef").unwrap();
        let f = LzFactorization::factorize(&t);
        assert_eq!(f.z(), 7);
        assert!(f.factors().iter().all(|f| matches!(f.kind, FactorKind::Novel { .. })));
        assert_eq!(f.distinct_factors(&t).len(), 7);
    }

    #[test]
    fn matches_quadratic_parse_and_decompresses() {
        let mut rng = rng(23);
        for _ in 0..200 {
            let t = random_text(&mut rng, 300, 3);
            let f = LzFactorization::factorize(&t);
            let naive: Vec<usize> = naive_factorize(&t).iter().map(|f| f.1).collect();
            assert_eq!(lens(&f), naive);
            assert_eq!(f.decompress(), t.symbols());
            let s = t.symbols();
            for (i, x) in f.factors().iter().enumerate() {
                if let Some(src) = x.source() {
                    assert!(src < x.start);
                    // greedy: one more symbol has no earlier source
                    if x.end() < t.len() {
                        let ext = &s[x.start - 1..x.end() + 1];
                        assert!((1..x.start).all(|j| s[j - 1..].get(..ext.len()) != Some(ext)), "factor {i}");
                    }
                }
            }
        }
    }

    #[test]
    fn serialization_round_trip() {
        let t = Text::from_plain(b"abracadabra").unwrap();
        let f = LzFactorization::factorize(&t);
        assert_eq!(LzFactorization::from_bytes(&f.to_bytes()).unwrap(), f);
    }
}
