//! Suffix tree represented by a CDAWG and the RLBWTs of the text and of its
//! reverse.
//!
//! A suffix-tree node is identified by the CDAWG class containing it and its
//! string depth, which selects the member; the full id also carries the BWT
//! interval. Leaves are members of the sink: the leaf of the suffix starting
//! at `s` has depth `n - s + 1` and a one-row interval.
//!
//! Every member of a class has the same out-edges as the representative,
//! with the same labels and the child interval at the same offset from the
//! parent interval. Parents are found through the in-arc that covers the
//! member's offset. Moving between members of one class is an LF step
//! (left) or an inverse LF step (right). Edge labels are read off the
//! reversed BWT starting from the interval of the reversed parent
//! representative.

use crate::cdawg::{ArcId, Cdawg, NodeId, SOURCE};
use crate::cdawgindex::blind_locate;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::oracles::{bwt_from_suffix_array, OracleSuffixTree, SuffixArrayBundle};
use crate::rlbwt::RunLengthBwt;
use crate::serial::IndexFile;
use crate::textio::{Symbol, Text};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StNodeId {
    pub node: NodeId,
    pub depth: usize,
    pub interval: Interval,
}

impl StNodeId {
    pub fn light(&self) -> LightStNodeId {
        LightStNodeId {
            node: self.node,
            depth: self.depth,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LightStNodeId {
    pub node: NodeId,
    pub depth: usize,
}

/// Intervals of a string in the BWTs of the text and of its reverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BidirectionalState {
    pub fwd: Interval,
    pub rev: Interval,
    pub len: usize,
}

impl BidirectionalState {
    pub fn is_empty(&self) -> bool {
        self.fwd.is_empty()
    }

    pub fn count(&self) -> usize {
        self.fwd.width()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdawgSuffixTree {
    fwd: RunLengthBwt,
    rev: RunLengthBwt,
    cdawg: Cdawg,
}

/// Position inside an edge: `h` symbols of arc `arc` read, `iv` the interval
/// of the reversed string read so far.
#[derive(Clone, Copy)]
struct EdgeCursor {
    arc: ArcId,
    h: usize,
    iv: Interval,
}

impl CdawgSuffixTree {
    pub fn build(t: &Text) -> Self {
        let rev_text = t.reversed();
        let fb = SuffixArrayBundle::build(t);
        let rb = SuffixArrayBundle::build(&rev_text);
        let st = OracleSuffixTree::build(t, &fb);
        let fwd = RunLengthBwt::from_bwt(&bwt_from_suffix_array(t, &fb));
        let rev = RunLengthBwt::from_bwt(&bwt_from_suffix_array(&rev_text, &rb));
        let cdawg = Cdawg::from_suffix_tree(&st, &fb, &rb, &fwd);
        CdawgSuffixTree { fwd, rev, cdawg }
    }

    pub fn len(&self) -> usize {
        self.fwd.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cdawg(&self) -> &Cdawg {
        &self.cdawg
    }

    pub fn rlbwt(&self) -> &RunLengthBwt {
        &self.fwd
    }

    pub fn rlbwt_rev(&self) -> &RunLengthBwt {
        &self.rev
    }

    pub fn count(&self, p: &[Symbol]) -> usize {
        self.fwd.count(p)
    }

    pub fn locate(&self, p: &[Symbol]) -> Vec<usize> {
        blind_locate(&self.fwd, &self.cdawg, p).0
    }

    pub fn root(&self) -> StNodeId {
        StNodeId {
            node: SOURCE,
            depth: 0,
            interval: self.fwd.full(),
        }
    }

    pub fn string_depth(&self, v: StNodeId) -> usize {
        v.depth
    }

    pub fn n_leaves(&self, v: StNodeId) -> usize {
        v.interval.width()
    }

    pub fn is_leaf(&self, v: LightStNodeId) -> bool {
        v.node == self.cdawg.sink()
    }

    pub fn locate_leaf(&self, v: StNodeId) -> Result<usize> {
        if !self.is_leaf(v.light()) {
            return Err(Error::NotALeaf);
        }
        Ok(self.len() - v.depth + 1)
    }

    pub fn is_ancestor(&self, u: StNodeId, v: StNodeId) -> bool {
        u.interval.contains(&v.interval) && u.depth <= v.depth
    }

    pub fn child(&self, v: StNodeId, c: Symbol) -> Result<StNodeId> {
        let a = self.cdawg.arc_by_symbol(v.node, c).ok_or(Error::NoSuchChild(c))?;
        Ok(self.child_by_arc(v, a))
    }

    fn child_by_arc(&self, v: StNodeId, a: ArcId) -> StNodeId {
        let arc = self.cdawg.arc(a);
        let sp = v.interval.sp + arc.child_delta_start;
        StNodeId {
            node: arc.target,
            depth: v.depth + arc.right,
            interval: Interval::new(sp, sp + arc.child_width - 1),
        }
    }

    pub fn first_child(&self, v: StNodeId) -> Option<StNodeId> {
        let a = self.cdawg.out_arcs(v.node).next()?;
        Some(self.child_by_arc(v, a))
    }

    /// The in-arc that is `v`'s parent edge.
    fn parent_arc(&self, v: LightStNodeId) -> Option<ArcId> {
        if v.depth == 0 {
            return None;
        }
        let offset = self.cdawg.node(v.node).length - v.depth + 1;
        self.cdawg.in_arc_for_offset(v.node, offset)
    }

    pub fn parent(&self, v: StNodeId) -> Result<StNodeId> {
        let a = self.parent_arc(v.light()).ok_or(Error::RootHasNoParent)?;
        Ok(self.parent_via(v, a))
    }

    fn parent_via(&self, v: StNodeId, a: ArcId) -> StNodeId {
        let arc = self.cdawg.arc(a);
        let sp = v.interval.sp - arc.child_delta_start;
        StNodeId {
            node: arc.source,
            depth: v.depth - arc.right,
            interval: Interval::new(sp, sp + self.cdawg.node(arc.source).interval.width() - 1),
        }
    }

    pub fn next_sibling(&self, v: StNodeId) -> Option<StNodeId> {
        let a = self.parent_arc(v.light())?;
        let p = self.parent_via(v, a);
        let next = a + 1;
        self.cdawg.out_arcs(p.node).contains(&next).then(|| self.child_by_arc(p, next))
    }

    pub fn suffix_link(&self, v: StNodeId) -> Result<StNodeId> {
        if v.depth == 0 {
            return Err(Error::RootHasNoSuffixLink);
        }
        let node = self.cdawg.node(v.node);
        if v.depth == node.min_length() {
            let w = node.suffix_link.expect("non-source class");
            let target = self.cdawg.node(w);
            debug_assert_eq!(target.length, v.depth - 1);
            return Ok(StNodeId {
                node: w,
                depth: v.depth - 1,
                interval: target.interval,
            });
        }
        let sp = self.fwd.inverse_lf(v.interval.sp);
        Ok(StNodeId {
            node: v.node,
            depth: v.depth - 1,
            interval: Interval::new(sp, sp + v.interval.width() - 1),
        })
    }

    /// Node labeled `c·label(v)`, or `None` when that string does not occur
    /// or ends inside an edge.
    pub fn weiner_link(&self, v: StNodeId, c: Symbol) -> Option<StNodeId> {
        let node = self.cdawg.node(v.node);
        let target = if v.depth == node.length {
            self.cdawg.weiner_link(v.node, c)?
        } else if self.fwd.char_at(v.interval.sp) == c {
            v.node
        } else {
            return None;
        };
        let iv = self.fwd.backward_step(v.interval, c);
        Some(StNodeId {
            node: target,
            depth: v.depth + 1,
            interval: iv,
        })
    }

    /// The `t`-th symbol (1-based) of the edge entering `v`.
    pub fn edge_char(&self, v: StNodeId, t: usize) -> Result<Symbol> {
        self.edge_char_light(v.light(), t)
    }

    pub fn edge_char_light(&self, v: LightStNodeId, t: usize) -> Result<Symbol> {
        let a = self.parent_arc(v).ok_or(Error::RootHasNoParent)?;
        let len = self.cdawg.arc(a).right;
        if t == 0 || t > len {
            return Err(Error::EdgeOffset { offset: t, len });
        }
        let cur = self.cursor_at(a, t - 1);
        Ok(self.cursor_symbol(&cur))
    }

    /// Cursor after reading `h` symbols of arc `a`.
    fn cursor_at(&self, a: ArcId, h: usize) -> EdgeCursor {
        let arc = self.cdawg.arc(a);
        let mut cur = EdgeCursor {
            arc: a,
            h: 0,
            iv: self.cdawg.node(arc.source).rev_interval,
        };
        while cur.h < h {
            self.advance(&mut cur);
        }
        cur
    }

    /// Symbol at position `h + 1` of the edge.
    fn cursor_symbol(&self, cur: &EdgeCursor) -> Symbol {
        if cur.h == 0 {
            return self.cdawg.arc(cur.arc).ch;
        }
        debug_assert!(self.rev.constant_symbol(cur.iv).is_some(), "edge interior is unary");
        self.rev.char_at(cur.iv.sp)
    }

    fn advance(&self, cur: &mut EdgeCursor) {
        let c = self.cursor_symbol(cur);
        cur.iv = self.rev.backward_step(cur.iv, c);
        cur.h += 1;
    }

    pub fn light_root(&self) -> LightStNodeId {
        self.root().light()
    }

    pub fn light_child(&self, v: LightStNodeId, c: Symbol) -> Result<LightStNodeId> {
        let a = self.cdawg.arc_by_symbol(v.node, c).ok_or(Error::NoSuchChild(c))?;
        let arc = self.cdawg.arc(a);
        Ok(LightStNodeId {
            node: arc.target,
            depth: v.depth + arc.right,
        })
    }

    pub fn light_first_child(&self, v: LightStNodeId) -> Option<LightStNodeId> {
        let a = self.cdawg.out_arcs(v.node).next()?;
        let arc = self.cdawg.arc(a);
        Some(LightStNodeId {
            node: arc.target,
            depth: v.depth + arc.right,
        })
    }

    pub fn light_parent(&self, v: LightStNodeId) -> Result<LightStNodeId> {
        let a = self.parent_arc(v).ok_or(Error::RootHasNoParent)?;
        let arc = self.cdawg.arc(a);
        Ok(LightStNodeId {
            node: arc.source,
            depth: v.depth - arc.right,
        })
    }

    pub fn light_next_sibling(&self, v: LightStNodeId) -> Option<LightStNodeId> {
        let a = self.parent_arc(v)?;
        let arc = self.cdawg.arc(a);
        let next = a + 1;
        if !self.cdawg.out_arcs(arc.source).contains(&next) {
            return None;
        }
        let sib = self.cdawg.arc(next);
        Some(LightStNodeId {
            node: sib.target,
            depth: v.depth - arc.right + sib.right,
        })
    }

    pub fn light_suffix_link(&self, v: LightStNodeId) -> Result<LightStNodeId> {
        if v.depth == 0 {
            return Err(Error::RootHasNoSuffixLink);
        }
        let node = self.cdawg.node(v.node);
        let target = if v.depth == node.min_length() {
            node.suffix_link.expect("non-source class")
        } else {
            v.node
        };
        Ok(LightStNodeId {
            node: target,
            depth: v.depth - 1,
        })
    }

    /// Preorder over every node, leaves included, using only first-child,
    /// next-sibling and parent moves.
    pub fn traverse(&self) -> Traversal<'_> {
        Traversal {
            tree: self,
            next: Some(self.light_root()),
        }
    }

    /// The node labeled exactly `label`, if any.
    pub fn find_node(&self, label: &[Symbol]) -> Option<StNodeId> {
        let iv = self.fwd.interval_of(label);
        if iv.is_empty() {
            return None;
        }
        let mut v = self.root();
        while v.depth < label.len() {
            v = self.child(v, label[v.depth]).ok()?;
        }
        (v.depth == label.len() && v.interval == iv).then_some(v)
    }

    /// `ms[i]`: length of the longest prefix of `q[i..]` occurring in the text.
    pub fn matching_statistics(&self, q: &[Symbol]) -> Vec<usize> {
        let m = q.len();
        let mut ms = vec![0; m];
        let mut v = self.light_root();
        // symbols matched on the edge below v, chosen by q[i + depth(v)]
        let mut h = 0;
        let mut cursor: Option<EdgeCursor> = None;
        for i in 0..m {
            loop {
                let len = v.depth + h;
                if i + len >= m {
                    break;
                }
                let Some(a) = self.cdawg.arc_by_symbol(v.node, q[i + v.depth]) else {
                    break;
                };
                let edge_len = self.cdawg.arc(a).right;
                let mut cur = match cursor {
                    Some(c) if c.arc == a && c.h == h => c,
                    _ => self.cursor_at(a, h),
                };
                if self.cursor_symbol(&cur) != q[i + len] {
                    cursor = Some(cur);
                    break;
                }
                self.advance(&mut cur);
                h += 1;
                cursor = Some(cur);
                if h == edge_len {
                    v = LightStNodeId {
                        node: self.cdawg.arc(a).target,
                        depth: v.depth + edge_len,
                    };
                    h = 0;
                    cursor = None;
                }
            }
            ms[i] = v.depth + h;
            if i + 1 == m {
                break;
            }
            let mut rem = if v.depth == 0 {
                h.saturating_sub(1)
            } else {
                v = self.light_suffix_link(v).expect("depth > 0");
                h
            };
            h = 0;
            while rem > 0 {
                let a = self.cdawg.arc_by_symbol(v.node, q[i + 1 + v.depth]).expect("rescanned string occurs");
                let edge_len = self.cdawg.arc(a).right;
                if edge_len <= rem {
                    v = LightStNodeId {
                        node: self.cdawg.arc(a).target,
                        depth: v.depth + edge_len,
                    };
                    rem -= edge_len;
                } else {
                    h = rem;
                    rem = 0;
                }
            }
        }
        ms
    }

    pub fn empty_state(&self) -> BidirectionalState {
        BidirectionalState {
            fwd: self.fwd.full(),
            rev: self.rev.full(),
            len: 0,
        }
    }

    /// State of `c·W` from the state of `W`.
    pub fn extend_left(&self, s: BidirectionalState, c: Symbol) -> BidirectionalState {
        let fwd = self.fwd.backward_step(s.fwd, c);
        let rev = if fwd.is_empty() {
            Interval::EMPTY
        } else {
            let sp = s.rev.sp + self.fwd.count_smaller_in(s.fwd, c);
            Interval::new(sp, sp + fwd.width() - 1)
        };
        BidirectionalState { fwd, rev, len: s.len + 1 }
    }

    /// State of `W·c` from the state of `W`.
    pub fn extend_right(&self, s: BidirectionalState, c: Symbol) -> BidirectionalState {
        let rev = self.rev.backward_step(s.rev, c);
        let fwd = if rev.is_empty() {
            Interval::EMPTY
        } else {
            let sp = s.fwd.sp + self.rev.count_smaller_in(s.rev, c);
            Interval::new(sp, sp + rev.width() - 1)
        };
        BidirectionalState { fwd, rev, len: s.len + 1 }
    }

    pub fn save(&self, f: &mut IndexFile) {
        f.put("ST/rlbwt", &self.fwd);
        f.put("ST/rlbwt_rev", &self.rev);
        self.cdawg.save(f, "ST/graph");
    }

    pub fn load(f: &IndexFile) -> Result<Self> {
        let ix = CdawgSuffixTree {
            fwd: f.take("ST/rlbwt")?,
            rev: f.take("ST/rlbwt_rev")?,
            cdawg: Cdawg::load(f, "ST/graph")?,
        };
        if ix.rev.len() != ix.fwd.len() || ix.cdawg.text_len() != ix.fwd.len() {
            return Err(Error::Format("ST sections disagree".into()));
        }
        Ok(ix)
    }
}

/// Preorder walk holding a single node id.
pub struct Traversal<'a> {
    tree: &'a CdawgSuffixTree,
    next: Option<LightStNodeId>,
}

impl Iterator for Traversal<'_> {
    type Item = LightStNodeId;

    fn next(&mut self) -> Option<LightStNodeId> {
        let cur = self.next?;
        let t = self.tree;
        self.next = t.light_first_child(cur).or_else(|| {
            let mut v = cur;
            loop {
                if let Some(s) = t.light_next_sibling(v) {
                    return Some(s);
                }
                v = t.light_parent(v).ok()?;
            }
        });
        Some(cur)
    }
}
