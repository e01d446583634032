use std::collections::HashMap;

use super::SuffixArrayBundle;
use crate::interval::Interval;
use crate::textio::{Symbol, Text};

pub type NodeIdx = usize;

#[derive(Clone, Debug)]
pub struct StNode {
    pub depth: usize,
    pub interval: Interval,
    pub parent: Option<NodeIdx>,
    /// Ordered by first edge symbol, which is also interval order.
    pub children: Vec<NodeIdx>,
    pub suffix_link: Option<NodeIdx>,
    /// Text position of the suffix, for leaves.
    pub leaf: Option<usize>,
}

impl StNode {
    pub fn is_leaf(&self) -> bool {
        self.leaf.is_some()
    }
}

/// Pointer-based suffix tree read off the LCP intervals.
#[derive(Clone, Debug)]
pub struct OracleSuffixTree {
    pub nodes: Vec<StNode>,
    pub root: NodeIdx,
    /// Leaf node of each text position (0-based storage).
    pub leaf_of: Vec<NodeIdx>,
    internal_by_interval: HashMap<(usize, usize), NodeIdx>,
    text: Vec<Symbol>,
    sa: Vec<usize>,
    isa: Vec<usize>,
}

impl OracleSuffixTree {
    pub fn build(t: &Text, b: &SuffixArrayBundle) -> Self {
        let n = t.len();
        let mut nodes = vec![StNode {
            depth: 0,
            interval: Interval::new(1, n),
            parent: None,
            children: Vec::new(),
            suffix_link: None,
            leaf: None,
        }];
        let mut leaf_of = vec![0; n];
        // rightmost path, root first
        let mut stack: Vec<NodeIdx> = vec![0];
        for row in 1..=n {
            let h = b.lcp(row);
            let mut last = None;
            while nodes[*stack.last().unwrap()].depth > h {
                last = stack.pop();
            }
            let top = *stack.last().unwrap();
            let attach = if nodes[top].depth == h {
                top
            } else {
                let last = last.expect("deeper node popped");
                let fresh = nodes.len();
                nodes.push(StNode {
                    depth: h,
                    interval: Interval::EMPTY,
                    parent: Some(top),
                    children: vec![last],
                    suffix_link: None,
                    leaf: None,
                });
                let slot = nodes[top].children.iter().position(|&c| c == last).unwrap();
                nodes[top].children[slot] = fresh;
                nodes[last].parent = Some(fresh);
                stack.push(fresh);
                fresh
            };
            let pos = b.sa(row);
            let leaf = nodes.len();
            nodes.push(StNode {
                depth: n - pos + 1,
                interval: Interval::new(row, row),
                parent: Some(attach),
                children: Vec::new(),
                suffix_link: None,
                leaf: Some(pos),
            });
            nodes[attach].children.push(leaf);
            leaf_of[pos - 1] = leaf;
            stack.push(leaf);
        }

        // intervals bottom-up: children always have larger indices than their
        // parent except where an internal node was spliced in above a leaf,
        // so compute by explicit post-order
        let mut order = Vec::with_capacity(nodes.len());
        let mut todo = vec![0];
        while let Some(v) = todo.pop() {
            order.push(v);
            todo.extend(nodes[v].children.iter().copied());
        }
        for &v in order.iter().rev() {
            if nodes[v].is_leaf() {
                continue;
            }
            let first = nodes[v].children[0];
            let last = *nodes[v].children.last().unwrap();
            nodes[v].interval = Interval::new(nodes[first].interval.sp, nodes[last].interval.ep);
        }

        let mut internal_by_interval = HashMap::new();
        for (v, node) in nodes.iter().enumerate() {
            if !node.is_leaf() {
                internal_by_interval.insert((node.interval.sp, node.interval.ep), v);
            }
        }

        let mut tree = OracleSuffixTree {
            nodes,
            root: 0,
            leaf_of,
            internal_by_interval,
            text: t.symbols().to_vec(),
            sa: b.sa.clone(),
            isa: b.isa.clone(),
        };
        tree.link_suffixes();
        tree
    }

    fn link_suffixes(&mut self) {
        let n = self.text.len();
        for v in 0..self.nodes.len() {
            let node = &self.nodes[v];
            if node.depth == 0 {
                continue;
            }
            let link = if let Some(pos) = node.leaf {
                if pos == n {
                    self.root
                } else {
                    self.leaf_of[pos]
                }
            } else {
                // climb from the leaf of the shifted suffix
                let pos = self.sa[node.interval.sp - 1];
                let target_depth = node.depth - 1;
                let mut w = self.leaf_of[pos];
                while self.nodes[w].depth > target_depth {
                    w = self.nodes[w].parent.unwrap();
                }
                assert_eq!(self.nodes[w].depth, target_depth, "suffix link target must be explicit");
                w
            };
            self.nodes[v].suffix_link = Some(link);
        }
    }

    pub fn n(&self) -> usize {
        self.text.len()
    }

    pub fn node(&self, v: NodeIdx) -> &StNode {
        &self.nodes[v]
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_internal(&self, v: NodeIdx) -> bool {
        !self.nodes[v].is_leaf()
    }

    pub fn internal_nodes(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        (0..self.nodes.len()).filter(move |&v| !self.nodes[v].is_leaf())
    }

    pub fn leaves(&self) -> impl Iterator<Item = NodeIdx> + '_ {
        (0..self.nodes.len()).filter(move |&v| self.nodes[v].is_leaf())
    }

    /// Internal node whose BWT interval is exactly `iv`.
    pub fn internal_with_interval(&self, iv: Interval) -> Option<NodeIdx> {
        self.internal_by_interval.get(&(iv.sp, iv.ep)).copied()
    }

    /// Any node (leaf or internal) labeled by a string with interval `iv` and length `depth`.
    pub fn node_with(&self, iv: Interval, depth: usize) -> Option<NodeIdx> {
        if iv.is_empty() {
            return None;
        }
        if let Some(v) = self.internal_with_interval(iv) {
            if self.nodes[v].depth == depth {
                return Some(v);
            }
        }
        if iv.width() == 1 {
            let leaf = self.leaf_of[self.sa[iv.sp - 1] - 1];
            if self.nodes[leaf].depth == depth {
                return Some(leaf);
            }
        }
        None
    }

    /// Label of node `v`.
    pub fn label(&self, v: NodeIdx) -> &[Symbol] {
        let node = &self.nodes[v];
        let start = self.sa[node.interval.sp - 1] - 1;
        &self.text[start..start + node.depth]
    }

    /// Symbol following the first `offset` symbols of `v`'s label in every
    /// suffix below `v`. Requires `offset < depth(v)`.
    pub fn label_symbol(&self, v: NodeIdx, offset: usize) -> Symbol {
        let start = self.sa[self.nodes[v].interval.sp - 1] - 1;
        self.text[start + offset]
    }

    /// First symbol of the edge entering `v`.
    pub fn edge_first_symbol(&self, v: NodeIdx) -> Symbol {
        let parent = self.nodes[v].parent.expect("root has no incoming edge");
        self.label_symbol(v, self.nodes[parent].depth)
    }

    pub fn edge_label(&self, v: NodeIdx) -> &[Symbol] {
        let parent = self.nodes[v].parent.expect("root has no incoming edge");
        &self.label(v)[self.nodes[parent].depth..]
    }

    pub fn child(&self, v: NodeIdx, c: Symbol) -> Option<NodeIdx> {
        let d = self.nodes[v].depth;
        self.nodes[v].children.iter().copied().find(|&w| self.label_symbol(w, d) == c)
    }

    /// Distinct symbols preceding the occurrences of `v`'s label (circularly).
    pub fn left_symbols(&self, v: NodeIdx) -> Vec<Symbol> {
        let n = self.text.len();
        let iv = self.nodes[v].interval;
        let mut out: Vec<Symbol> = (iv.sp..=iv.ep)
            .map(|r| {
                let p = self.sa[r - 1];
                if p == 1 {
                    self.text[n - 1]
                } else {
                    self.text[p - 2]
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn is_left_maximal(&self, v: NodeIdx) -> bool {
        self.left_symbols(v).len() > 1
    }

    /// Internal node whose label is a maximal repeat.
    pub fn is_maximal_repeat(&self, v: NodeIdx) -> bool {
        self.is_internal(v) && self.nodes[v].children.len() > 1 && self.is_left_maximal(v)
    }

    /// Interval of `c·label(v)`, computed from the suffix array.
    pub fn left_extension_interval(&self, v: NodeIdx, c: Symbol) -> Interval {
        let n = self.text.len();
        let iv = self.nodes[v].interval;
        let mut lo = usize::MAX;
        let mut hi = 0;
        for r in iv.sp..=iv.ep {
            let p = self.sa[r - 1];
            let prev = if p == 1 { n } else { p - 1 };
            if self.text[prev - 1] == c {
                let row = self.isa[prev - 1];
                lo = lo.min(row);
                hi = hi.max(row);
            }
        }
        if hi == 0 {
            Interval::EMPTY
        } else {
            Interval::new(lo, hi)
        }
    }

    /// Node labeled `c·label(v)`, if that string labels a node.
    pub fn weiner_link(&self, v: NodeIdx, c: Symbol) -> Option<NodeIdx> {
        let iv = self.left_extension_interval(v, c);
        self.node_with(iv, self.nodes[v].depth + 1)
    }

    pub fn is_ancestor(&self, u: NodeIdx, v: NodeIdx) -> bool {
        let mut w = Some(v);
        while let Some(x) = w {
            if x == u {
                return true;
            }
            w = self.nodes[x].parent;
        }
        false
    }

    pub fn next_sibling(&self, v: NodeIdx) -> Option<NodeIdx> {
        let p = self.nodes[v].parent?;
        let siblings = &self.nodes[p].children;
        let i = siblings.iter().position(|&w| w == v).unwrap();
        siblings.get(i + 1).copied()
    }
}

/// Explicit and implicit Weiner links out of internal nodes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeinerLinkSets {
    pub explicit: Vec<(NodeIdx, Symbol, NodeIdx)>,
    pub implicit: Vec<(NodeIdx, Symbol)>,
}

impl WeinerLinkSets {
    pub fn explicit_from<'a>(&'a self, v: NodeIdx) -> impl Iterator<Item = &'a (NodeIdx, Symbol, NodeIdx)> + 'a {
        self.explicit.iter().filter(move |l| l.0 == v)
    }

    pub fn implicit_from<'a>(&'a self, v: NodeIdx) -> impl Iterator<Item = &'a (NodeIdx, Symbol)> + 'a {
        self.implicit.iter().filter(move |l| l.0 == v)
    }
}

/// Classifies every left extension `a·label(v)` of every internal node as
/// explicit (right-maximal) or implicit.
pub fn enumerate_weiner_links(st: &OracleSuffixTree) -> WeinerLinkSets {
    let mut out = WeinerLinkSets::default();
    for v in st.internal_nodes() {
        for a in st.left_symbols(v) {
            let iv = st.left_extension_interval(v, a);
            match st.internal_with_interval(iv) {
                Some(w) if st.nodes[w].depth == st.nodes[v].depth + 1 => out.explicit.push((v, a, w)),
                _ => out.implicit.push((v, a)),
            }
        }
    }
    out
}
