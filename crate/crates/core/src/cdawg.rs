//! Compact directed acyclic word graph.
//!
//! Built by collapsing the suffix tree: an internal node that is not
//! left-maximal has a single left symbol `c` and an explicit Weiner link by
//! `c`, and is merged into the class of the link target. Each class is
//! represented by its longest member, which is a maximal repeat; the leaves
//! all collapse into the sink, whose representative is the whole text.
//!
//! A class with representative `W` and size `k` has members
//! `W[1..], W[2..], ..., W[k..]`; member offset `o` (1-based) is
//! `W[o..]`. For the sink, member offset `s` is the suffix starting at `s`.
//!
//! Arcs are the suffix-tree edges leaving representatives. Besides the
//! first label symbol and the label length (`right`), an arc records how
//! many symbols the target prepends (`left`), where the child interval sits
//! inside the source interval, and, for sink arcs, the text position of the
//! leaf. The in-arcs of a class partition its members: the arc with
//! `left = x` from a class of size `s` is the parent edge of members
//! `x+1 ..= x+s`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::oracles::{bwt_from_suffix_array, NodeIdx, OracleSuffixTree, SuffixArrayBundle};
use crate::rlbwt::RunLengthBwt;
use crate::serial::{IndexFile, Persist, Reader, Writer};
use crate::textio::{Symbol, Text};

pub type NodeId = usize;
pub type ArcId = usize;

/// The class of the empty string.
pub const SOURCE: NodeId = 0;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CdawgNode {
    /// Length of the representative.
    pub length: usize,
    /// Number of members.
    pub size: usize,
    /// BWT interval of the representative (shared width by every member).
    pub interval: Interval,
    /// Interval of the reversed representative in the BWT of the reversed
    /// text. Empty for the sink.
    pub rev_interval: Interval,
    pub suffix_link: Option<NodeId>,
    /// Explicit Weiner links of the representative, by symbol.
    pub weiner: Vec<(Symbol, NodeId)>,
    /// `(left, arc)` for every in-arc, sorted by `left`.
    pub boundaries: Vec<(usize, ArcId)>,
    arcs_start: usize,
    arcs_end: usize,
}

impl CdawgNode {
    /// Length of the shortest member.
    pub fn min_length(&self) -> usize {
        self.length + 1 - self.size
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CdawgArc {
    pub source: NodeId,
    pub target: NodeId,
    pub ch: Symbol,
    pub right: usize,
    pub left: usize,
    /// Start of the leaf reached by a sink arc; 0 otherwise.
    pub pos: usize,
    pub child_delta_start: usize,
    pub child_width: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cdawg {
    n: usize,
    nodes: Vec<CdawgNode>,
    /// Grouped by source, by symbol within a source.
    arcs: Vec<CdawgArc>,
    arc_index: HashMap<(NodeId, Symbol), ArcId>,
}

/// Class of every suffix-tree node: internal nodes map to their class,
/// leaves to the sink. Classes are numbered by (representative length,
/// interval start); the sink is last.
pub(crate) struct ClassAssignment {
    pub class_of: Vec<NodeId>,
    /// Representative suffix-tree node of each non-sink class.
    pub reps: Vec<NodeIdx>,
    pub sizes: Vec<usize>,
}

pub(crate) fn assign_classes(st: &OracleSuffixTree, fwd: &RunLengthBwt) -> ClassAssignment {
    let mut internal: Vec<NodeIdx> = st.internal_nodes().collect();
    internal.sort_unstable_by_key(|&v| std::cmp::Reverse(st.node(v).depth));
    // representative node of each internal node
    let mut rep: Vec<NodeIdx> = (0..st.len()).collect();
    for &v in &internal {
        let node = st.node(v);
        if v == st.root {
            continue;
        }
        if let Some(c) = fwd.constant_symbol(node.interval) {
            let iv = fwd.backward_step(node.interval, c);
            let w = st.internal_with_interval(iv).expect("single left symbol keeps right-maximality");
            debug_assert_eq!(st.node(w).depth, node.depth + 1);
            rep[v] = rep[w];
        }
    }
    let mut reps: Vec<NodeIdx> = internal.iter().copied().filter(|&v| rep[v] == v).collect();
    reps.sort_unstable_by_key(|&v| (st.node(v).depth, st.node(v).interval.sp));
    let sink = reps.len();
    let mut id_of_rep = HashMap::new();
    for (i, &v) in reps.iter().enumerate() {
        id_of_rep.insert(v, i);
    }
    let mut class_of = vec![sink; st.len()];
    let mut sizes = vec![0; sink + 1];
    for &v in &internal {
        class_of[v] = id_of_rep[&rep[v]];
        sizes[class_of[v]] += 1;
    }
    sizes[sink] = st.n();
    ClassAssignment { class_of, reps, sizes }
}

impl Cdawg {
    pub fn build(t: &Text) -> Self {
        let fb = SuffixArrayBundle::build(t);
        let rev_text = t.reversed();
        let rb = SuffixArrayBundle::build(&rev_text);
        let st = OracleSuffixTree::build(t, &fb);
        let fwd = RunLengthBwt::from_bwt(&bwt_from_suffix_array(t, &fb));
        Self::from_suffix_tree(&st, &fb, &rb, &fwd)
    }

    /// `fb`/`rb` are the suffix arrays of the text and of its reverse; `fwd`
    /// the RLBWT of the text.
    pub fn from_suffix_tree(
        st: &OracleSuffixTree,
        fb: &SuffixArrayBundle,
        rb: &SuffixArrayBundle,
        fwd: &RunLengthBwt,
    ) -> Self {
        let n = st.n();
        let classes = assign_classes(st, fwd);
        let sink = classes.reps.len();
        let mut nodes: Vec<CdawgNode> = classes
            .reps
            .iter()
            .enumerate()
            .map(|(id, &v)| {
                let node = st.node(v);
                CdawgNode {
                    length: node.depth,
                    size: classes.sizes[id],
                    interval: node.interval,
                    rev_interval: rev_interval(fb, rb, node.interval, node.depth),
                    suffix_link: None,
                    weiner: Vec::new(),
                    boundaries: Vec::new(),
                    arcs_start: 0,
                    arcs_end: 0,
                }
            })
            .collect();
        let whole = fb.isa(1);
        nodes.push(CdawgNode {
            length: n,
            size: n,
            interval: Interval::new(whole, whole),
            rev_interval: Interval::EMPTY,
            suffix_link: Some(SOURCE),
            weiner: Vec::new(),
            boundaries: Vec::new(),
            arcs_start: 0,
            arcs_end: 0,
        });

        let mut arcs = Vec::new();
        for (id, &v) in classes.reps.iter().enumerate() {
            let node = st.node(v);
            nodes[id].arcs_start = arcs.len();
            for &w in &node.children {
                let child = st.node(w);
                let target = classes.class_of[w];
                let target_len = if target == sink { n } else { nodes[target].length };
                arcs.push(CdawgArc {
                    source: id,
                    target,
                    ch: st.label_symbol(w, node.depth),
                    right: child.depth - node.depth,
                    left: target_len - child.depth,
                    pos: child.leaf.unwrap_or(0),
                    child_delta_start: child.interval.sp - node.interval.sp,
                    child_width: child.interval.width(),
                });
            }
            nodes[id].arcs_end = arcs.len();

            // members are the suffix-link chain below the representative
            if id != SOURCE {
                let mut shortest = v;
                for _ in 1..nodes[id].size {
                    shortest = st.node(shortest).suffix_link.unwrap();
                }
                let link = st.node(shortest).suffix_link.expect("non-root node");
                nodes[id].suffix_link = Some(classes.class_of[link]);
            }

            for c in fwd.distinct_in(node.interval) {
                let iv = fwd.backward_step(node.interval, c);
                if let Some(w) = st.node_with(iv, node.depth + 1) {
                    nodes[id].weiner.push((c, classes.class_of[w]));
                }
            }
        }
        nodes[sink].arcs_start = arcs.len();
        nodes[sink].arcs_end = arcs.len();
        Self::assemble(n, nodes, arcs)
    }

    /// Fills the derived lookups: in-arc boundaries and the arc index.
    fn assemble(n: usize, mut nodes: Vec<CdawgNode>, arcs: Vec<CdawgArc>) -> Self {
        let mut arc_index = HashMap::with_capacity(arcs.len());
        for node in &mut nodes {
            node.boundaries.clear();
        }
        for (a, arc) in arcs.iter().enumerate() {
            arc_index.insert((arc.source, arc.ch), a);
            nodes[arc.target].boundaries.push((arc.left, a));
        }
        for node in &mut nodes {
            node.boundaries.sort_unstable();
        }
        Cdawg { n, nodes, arcs, arc_index }
    }

    pub fn text_len(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn sink(&self) -> NodeId {
        self.nodes.len() - 1
    }

    pub fn node(&self, v: NodeId) -> &CdawgNode {
        &self.nodes[v]
    }

    pub fn nodes(&self) -> &[CdawgNode] {
        &self.nodes
    }

    pub fn arc(&self, a: ArcId) -> &CdawgArc {
        &self.arcs[a]
    }

    pub fn arcs(&self) -> &[CdawgArc] {
        &self.arcs
    }

    /// Out-arc ids of `v`, in symbol order.
    pub fn out_arcs(&self, v: NodeId) -> std::ops::Range<ArcId> {
        self.nodes[v].arcs_start..self.nodes[v].arcs_end
    }

    pub fn arc_by_symbol(&self, v: NodeId, c: Symbol) -> Option<ArcId> {
        self.arc_index.get(&(v, c)).copied()
    }

    pub fn weiner_link(&self, v: NodeId, c: Symbol) -> Option<NodeId> {
        let w = &self.nodes[v].weiner;
        w.binary_search_by_key(&c, |&(s, _)| s).ok().map(|i| w[i].1)
    }

    /// In-arc that is the parent edge of member offset `offset` (1-based).
    pub fn in_arc_for_offset(&self, v: NodeId, offset: usize) -> Option<ArcId> {
        let b = &self.nodes[v].boundaries;
        let k = b.partition_point(|&(x, _)| x < offset);
        (k > 0).then(|| b[k - 1].1)
    }

    /// Sink arcs reachable from `v`, as `(pos, j)` seeds where `j` is `start`
    /// plus the `left` values of the non-sink arcs on the path. Also returns
    /// the number of arcs visited.
    pub fn dfs_reachable_sink_arcs(&self, v: NodeId, start: usize) -> (Vec<(usize, usize)>, usize) {
        let sink = self.sink();
        let mut seeds = Vec::new();
        let mut visited = 0;
        let mut stack = vec![(v, start)];
        while let Some((u, j)) = stack.pop() {
            for a in self.out_arcs(u) {
                let arc = &self.arcs[a];
                visited += 1;
                if arc.target == sink {
                    seeds.push((arc.pos, j));
                } else {
                    stack.push((arc.target, j + arc.left));
                }
            }
        }
        (seeds, visited)
    }

    pub fn nodes_tsv(&self) -> String {
        let mut out = String::from("node\tlength\tsize\tfirst\tlast\trev_first\trev_last\tsuffix_link\n");
        for (id, v) in self.nodes.iter().enumerate() {
            let link = v.suffix_link.map_or("-".to_string(), |l| l.to_string());
            out.push_str(&format!(
                "{id}\t{}\t{}\t{}\t{}\t{}\t{}\t{link}\n",
                v.length, v.size, v.interval.sp, v.interval.ep, v.rev_interval.sp, v.rev_interval.ep
            ));
        }
        out
    }

    pub fn arcs_tsv(&self) -> String {
        let mut out = String::from("source\ttarget\tchar\tright\tleft\tpos\tchild_delta\tchild_width\n");
        for a in &self.arcs {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                a.source, a.target, a.ch, a.right, a.left, a.pos, a.child_delta_start, a.child_width
            ));
        }
        out
    }

    pub fn save(&self, f: &mut IndexFile, section: &str) {
        f.put(section, self);
    }

    pub fn load(f: &IndexFile, section: &str) -> Result<Self> {
        f.take(section)
    }
}

/// Interval of `rev(W)` in the BWT of the reversed text, where `W` has
/// interval `iv` and length `len` in the forward text.
fn rev_interval(fb: &SuffixArrayBundle, rb: &SuffixArrayBundle, iv: Interval, len: usize) -> Interval {
    let n = fb.len();
    if len == 0 {
        return Interval::new(1, n);
    }
    // W = T[q..q+len-1] sits at n-q-len+1 in rev(S)·#
    let q = fb.sa(iv.sp);
    let row = rb.isa(n - q - len + 1);
    let mut sp = row;
    while sp > 1 && rb.lcp(sp) >= len {
        sp -= 1;
    }
    Interval::new(sp, sp + iv.width() - 1)
}

impl Persist for Cdawg {
    fn write(&self, w: &mut Writer) {
        w.put_usize(self.n);
        w.put_usize(self.nodes.len());
        for v in &self.nodes {
            w.put_usize(v.length);
            w.put_usize(v.size);
            w.put_usize(v.interval.sp);
            w.put_usize(v.interval.ep);
            w.put_usize(v.rev_interval.sp);
            w.put_usize(v.rev_interval.ep);
            w.put_usize(v.suffix_link.map_or(0, |l| l + 1));
            w.put_usize(v.weiner.len());
            for &(c, t) in &v.weiner {
                w.put_u8(c);
                w.put_usize(t);
            }
            w.put_usize(v.arcs_end - v.arcs_start);
        }
        w.put_usize(self.arcs.len());
        for a in &self.arcs {
            w.put_usize(a.source);
            w.put_usize(a.target);
            w.put_u8(a.ch);
            w.put_usize(a.right);
            w.put_usize(a.left);
            w.put_usize(a.pos);
            w.put_usize(a.child_delta_start);
            w.put_usize(a.child_width);
        }
    }

    fn read(r: &mut Reader) -> Result<Self> {
        let n = r.get_usize()?;
        let count = r.get_usize()?;
        let bad = |what: &str| Error::Format(format!("CDAWG: {what}"));
        let mut nodes = Vec::new();
        let mut next_arc = 0;
        for _ in 0..count {
            let length = r.get_usize()?;
            let size = r.get_usize()?;
            let interval = Interval::new(r.get_usize()?, r.get_usize()?);
            let rev_interval = Interval::new(r.get_usize()?, r.get_usize()?);
            let link = r.get_usize()?;
            let k = r.get_usize()?;
            let mut weiner = Vec::new();
            for _ in 0..k {
                weiner.push((r.get_u8()?, r.get_usize()?));
            }
            let out = r.get_usize()?;
            if size == 0 || size > length + 1 || interval.is_empty() || interval.ep > n {
                return Err(bad("node fields out of range"));
            }
            nodes.push(CdawgNode {
                length,
                size,
                interval,
                rev_interval,
                suffix_link: link.checked_sub(1),
                weiner,
                boundaries: Vec::new(),
                arcs_start: next_arc,
                arcs_end: next_arc + out,
            });
            next_arc += out;
        }
        let k = r.get_usize()?;
        if k != next_arc || nodes.is_empty() {
            return Err(bad("arc count disagrees with nodes"));
        }
        let mut arcs = Vec::with_capacity(k);
        for _ in 0..k {
            let arc = CdawgArc {
                source: r.get_usize()?,
                target: r.get_usize()?,
                ch: r.get_u8()?,
                right: r.get_usize()?,
                left: r.get_usize()?,
                pos: r.get_usize()?,
                child_delta_start: r.get_usize()?,
                child_width: r.get_usize()?,
            };
            if arc.source >= count || arc.target >= count {
                return Err(bad("arc endpoint out of range"));
            }
            arcs.push(arc);
        }
        for (id, v) in nodes.iter().enumerate() {
            if arcs[v.arcs_start..v.arcs_end].iter().any(|a| a.source != id)
                || v.suffix_link.is_some_and(|l| l >= count)
                || v.weiner.iter().any(|&(_, t)| t >= count)
            {
                return Err(bad("link out of range"));
            }
        }
        Ok(Self::assemble(n, nodes, arcs))
    }
}
