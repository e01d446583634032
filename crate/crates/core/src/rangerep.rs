//! Range reporting for the LZ index.
//!
//! [`Grid`] answers orthogonal rectangle queries over points in rank space
//! with a merge-sort tree: level `l` holds the points sorted by `x`, cut into
//! blocks of `2^l` consecutive points, each block sorted by `y`. A query
//! decomposes its `x` range into `O(log z)` blocks and binary searches `y`
//! in each.
//!
//! [`SourceSet`] reports the copy sources that contain a text range. Sources
//! are sorted by start; a max segment tree over their ends prunes the search.

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::serial::{Persist, Reader, Writer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPoint {
    pub x: usize,
    pub y: usize,
    pub payload: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    /// Points sorted by `(x, y)`.
    points: Vec<GridPoint>,
    /// `levels[l]`: `(y, payload)` pairs, blocks of `2^l` sorted by `y`.
    levels: Vec<Vec<(usize, usize)>>,
}

impl Grid {
    pub fn build(mut points: Vec<GridPoint>) -> Result<Self> {
        points.sort_unstable();
        if let Some(w) = points.windows(2).find(|w| (w[0].x, w[0].y) == (w[1].x, w[1].y)) {
            return Err(Error::DuplicatePoint { x: w[0].x, y: w[0].y });
        }
        let mut levels = vec![points.iter().map(|p| (p.y, p.payload)).collect::<Vec<_>>()];
        let mut block = 1;
        while block < points.len() {
            let prev = levels.last().unwrap();
            let mut next = Vec::with_capacity(prev.len());
            for chunk in prev.chunks(2 * block) {
                let (a, b) = chunk.split_at(block.min(chunk.len()));
                let (mut i, mut j) = (0, 0);
                while i < a.len() || j < b.len() {
                    if j == b.len() || (i < a.len() && a[i] <= b[j]) {
                        next.push(a[i]);
                        i += 1;
                    } else {
                        next.push(b[j]);
                        j += 1;
                    }
                }
            }
            levels.push(next);
            block *= 2;
        }
        Ok(Grid { points, levels })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[GridPoint] {
        &self.points
    }

    /// Payloads of the points in `xs × ys`, in no particular order.
    pub fn query(&self, xs: Interval, ys: Interval) -> Vec<usize> {
        let mut out = Vec::new();
        self.query_into(xs, ys, &mut out);
        out
    }

    pub fn query_into(&self, xs: Interval, ys: Interval, out: &mut Vec<usize>) {
        if xs.is_empty() || ys.is_empty() {
            return;
        }
        let mut lo = self.points.partition_point(|p| p.x < xs.sp);
        let mut hi = self.points.partition_point(|p| p.x <= xs.ep);
        let mut level = 0;
        while lo < hi {
            if lo & 1 == 1 {
                self.report(level, lo, ys, out);
                lo += 1;
            }
            if hi & 1 == 1 {
                hi -= 1;
                self.report(level, hi, ys, out);
            }
            lo >>= 1;
            hi >>= 1;
            level += 1;
        }
    }

    fn report(&self, level: usize, block: usize, ys: Interval, out: &mut Vec<usize>) {
        let data = &self.levels[level];
        let start = block << level;
        let end = ((block + 1) << level).min(data.len());
        let slice = &data[start..end];
        let a = slice.partition_point(|&(y, _)| y < ys.sp);
        out.extend(slice[a..].iter().take_while(|&&(y, _)| y <= ys.ep).map(|&(_, p)| p));
    }
}

impl Persist for Grid {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.points.len());
        for p in &self.points {
            w.put_usize(p.x);
            w.put_usize(p.y);
            w.put_usize(p.payload);
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let k = r.get_usize()?;
        let mut points = Vec::new();
        for _ in 0..k {
            points.push(GridPoint {
                x: r.get_usize()?,
                y: r.get_usize()?,
                payload: r.get_usize()?,
            });
        }
        Grid::build(points)
    }
}

/// Source of one copy factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SourceEntry {
    pub src_start: usize,
    pub src_end: usize,
    pub factor_start: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SourceSet {
    entries: Vec<SourceEntry>,
    /// Max of `src_end` over each segment-tree node, 1-based heap layout.
    max_end: Vec<usize>,
    size: usize,
}

impl SourceSet {
    pub fn build(mut entries: Vec<SourceEntry>) -> Result<Self> {
        for e in &entries {
            if e.src_start == 0 || e.src_start > e.src_end || e.src_start >= e.factor_start {
                return Err(Error::Format(format!(
                    "bad source [{}..{}] for factor at {}",
                    e.src_start, e.src_end, e.factor_start
                )));
            }
        }
        entries.sort_unstable();
        let size = entries.len().next_power_of_two();
        let mut max_end = vec![0; 2 * size];
        for (i, e) in entries.iter().enumerate() {
            max_end[size + i] = e.src_end;
        }
        for v in (1..size).rev() {
            max_end[v] = max_end[2 * v].max(max_end[2 * v + 1]);
        }
        Ok(SourceSet { entries, max_end, size })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[SourceEntry] {
        &self.entries
    }

    /// Sources containing `[occ_start..occ_end]`, as `(factor_start, offset)`
    /// pairs; the copied occurrence starts at `factor_start + offset`.
    pub fn query(&self, occ_start: usize, occ_end: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let limit = self.entries.partition_point(|e| e.src_start <= occ_start);
        if limit > 0 {
            self.collect(1, 0, self.size, limit, occ_start, occ_end, &mut out);
        }
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn collect(&self, v: usize, lo: usize, hi: usize, limit: usize, s: usize, e: usize, out: &mut Vec<(usize, usize)>) {
        if lo >= limit || self.max_end[v] < e {
            return;
        }
        if hi - lo == 1 {
            let entry = &self.entries[lo];
            out.push((entry.factor_start, s - entry.src_start));
            return;
        }
        let mid = (lo + hi) / 2;
        self.collect(2 * v, lo, mid, limit, s, e, out);
        self.collect(2 * v + 1, mid, hi, limit, s, e, out);
    }
}

impl Persist for SourceSet {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.entries.len());
        for e in &self.entries {
            w.put_usize(e.src_start);
            w.put_usize(e.src_end);
            w.put_usize(e.factor_start);
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let k = r.get_usize()?;
        let mut entries = Vec::new();
        for _ in 0..k {
            entries.push(SourceEntry {
                src_start: r.get_usize()?,
                src_end: r.get_usize()?,
                factor_start: r.get_usize()?,
            });
        }
        SourceSet::build(entries)
    }
}
