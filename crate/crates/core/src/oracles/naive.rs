use std::collections::HashMap;

use crate::textio::{Symbol, Text};

/// All 1-based start positions of `p` in `t`. The empty pattern occurs everywhere.
pub fn naive_occurrences(t: &Text, p: &[Symbol]) -> Vec<usize> {
    let s = t.symbols();
    if p.is_empty() {
        return (1..=s.len()).collect();
    }
    if p.len() > s.len() {
        return Vec::new();
    }
    s.windows(p.len())
        .enumerate()
        .filter(|(_, w)| *w == p)
        .map(|(i, _)| i + 1)
        .collect()
}

pub fn count_runs(seq: &[Symbol]) -> usize {
    if seq.is_empty() {
        return 0;
    }
    1 + seq.windows(2).filter(|w| w[0] != w[1]).count()
}

#[derive(Clone, Debug, Default)]
struct Context {
    first: usize,
    count: usize,
    left: [u64; 4],
    right: [u64; 4],
}

fn mark(set: &mut [u64; 4], c: Symbol) {
    set[c as usize / 64] |= 1 << (c as usize % 64);
}

fn popcount(set: &[u64; 4]) -> u32 {
    set.iter().map(|w| w.count_ones()).sum()
}

/// Walks every distinct substring without the terminator, length by length,
/// refining equivalence classes of start positions. `visit` receives a
/// representative start, the length, the occurrence count and the left and
/// right context sets (circular on the left).
fn for_each_substring(t: &Text, mut visit: impl FnMut(usize, usize, &Context)) {
    let s = t.symbols();
    let n = s.len();
    let prev = |p: usize| if p == 0 { s[n - 1] } else { s[p - 1] };
    // class id of the substring of current length starting at each 0-based position
    let mut class: Vec<usize> = vec![0; n - 1];
    let mut live: Vec<usize> = (0..n - 1).collect();
    for len in 1..n {
        let mut ids: HashMap<(usize, Symbol), usize> = HashMap::new();
        let mut contexts: Vec<Context> = Vec::new();
        let mut next_live = Vec::with_capacity(live.len());
        for &p in &live {
            if p + len > n - 1 {
                continue;
            }
            let key = (class[p], s[p + len - 1]);
            let id = *ids.entry(key).or_insert_with(|| {
                contexts.push(Context {
                    first: p,
                    ..Context::default()
                });
                contexts.len() - 1
            });
            class[p] = id;
            let ctx = &mut contexts[id];
            ctx.count += 1;
            mark(&mut ctx.left, prev(p));
            mark(&mut ctx.right, s[p + len]);
            next_live.push(p);
        }
        for ctx in &contexts {
            visit(ctx.first, len, ctx);
        }
        // only repeated substrings can extend to repeated substrings
        next_live.retain(|&p| contexts[class[p]].count > 1);
        live = next_live;
        if live.is_empty() {
            break;
        }
    }
}

/// Maximal repeats by brute force. The empty string is included whenever it
/// is both left- and right-maximal, i.e. whenever `n > 1`.
pub fn naive_maximal_repeats(t: &Text) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    if t.len() < 2 {
        return out;
    }
    out.push(Vec::new());
    let s = t.symbols();
    for_each_substring(t, |start, len, ctx| {
        if ctx.count > 1 && popcount(&ctx.left) > 1 && popcount(&ctx.right) > 1 {
            out.push(s[start..start + len].to_vec());
        }
    });
    out.sort();
    out
}

/// Right-maximal substrings by brute force, the empty string included when `n > 1`.
pub fn right_maximal_substrings(t: &Text) -> Vec<Vec<Symbol>> {
    let mut out = Vec::new();
    if t.len() < 2 {
        return out;
    }
    out.push(Vec::new());
    let s = t.symbols();
    for_each_substring(t, |start, len, ctx| {
        if popcount(&ctx.right) > 1 {
            out.push(s[start..start + len].to_vec());
        }
    });
    out.sort();
    out
}

/// `ms[i]` is the length of the longest prefix of `q[i..]` occurring in `t`.
pub fn naive_matching_statistics(t: &Text, q: &[Symbol]) -> Vec<usize> {
    let s = t.symbols();
    (0..q.len())
        .map(|i| {
            (0..s.len())
                .map(|p| s[p..].iter().zip(&q[i..]).take_while(|(a, b)| a == b).count())
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Greedy LZ77 by quadratic scan: `(start, length, source)`, source `None` for
/// a novel symbol. Sources may overlap the factor; ties go to the leftmost source.
pub fn naive_factorize(t: &Text) -> Vec<(usize, usize, Option<usize>)> {
    let s = t.symbols();
    let n = s.len();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let mut best = (0, 0);
        for j in 0..k {
            let l = (0..n - k).take_while(|&d| s[j + d] == s[k + d]).count();
            if l > best.0 {
                best = (l, j);
            }
        }
        if best.0 == 0 {
            out.push((k + 1, 1, None));
            k += 1;
        } else {
            out.push((k + 1, best.0, Some(best.1 + 1)));
            k += best.0;
        }
    }
    out
}
