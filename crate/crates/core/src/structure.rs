//! Graph structure of a nonnegative matrix.
//!
//! The digraph of `A` has an edge `i -> j` exactly when `a_ij > 0` (no
//! tolerance). Irreducibility is strong connectivity of that graph, and the
//! Frobenius normal form orders its strongly connected components so that
//! `P^T A P` is block upper triangular with irreducible diagonal blocks.
//!
//! Every `1x1` matrix, including `[0]`, counts as irreducible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::ops::Range;

use crate::matcore::{NonNegMatrix, Permutation};
use crate::perron::{perron_irreducible, DEFAULT_MAX_ITER, DEFAULT_TOL};

/// Symmetric permutation plus block partition of `P^T A P`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusNormalForm {
    pub perm: Permutation,
    /// Contiguous ranges of positions in the permuted matrix.
    pub blocks: Vec<Range<usize>>,
    /// Diagonal blocks of `P^T A P`, one per entry of `blocks`.
    pub block_matrices: Vec<NonNegMatrix>,
}

impl FrobeniusNormalForm {
    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(|r| r.len()).collect()
    }

    /// Original indices of `A` that make up block `b`.
    pub fn block_indices(&self, b: usize) -> &[usize] {
        &self.perm.as_slice()[self.blocks[b].clone()]
    }

    /// Index of the block containing permuted position `pos`.
    pub fn block_of_position(&self, pos: usize) -> usize {
        self.blocks
            .iter()
            .position(|r| r.contains(&pos))
            .expect("position inside the partition")
    }

    /// True when `m` (already permuted) has only zeros below the block
    /// diagonal defined by `self.blocks`.
    pub fn is_block_upper_triangular(&self, m: &NonNegMatrix) -> bool {
        let n = m.n();
        let owner: Vec<usize> = (0..n).map(|p| self.block_of_position(p)).collect();
        (0..n).all(|i| (0..n).all(|j| owner[i] <= owner[j] || m.get(i, j) == 0.0))
    }
}

fn successors(a: &NonNegMatrix, v: usize) -> impl Iterator<Item = usize> + '_ {
    a.row(v)
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0.0)
        .map(|(j, _)| j)
}

fn reaches_all(n: usize, start: usize, edge: impl Fn(usize, usize) -> bool) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![start];
    seen[start] = true;
    let mut count = 1;
    while let Some(v) = stack.pop() {
        for (w, s) in seen.iter_mut().enumerate() {
            if !*s && edge(v, w) {
                *s = true;
                count += 1;
                stack.push(w);
            }
        }
    }
    count == n
}

/// Strong connectivity of the digraph of `a`, checked by a forward and a
/// backward search from vertex 0.
pub fn is_irreducible(a: &NonNegMatrix) -> bool {
    let n = a.n();
    if n == 1 {
        return true;
    }
    reaches_all(n, 0, |v, w| a.get(v, w) > 0.0) && reaches_all(n, 0, |v, w| a.get(w, v) > 0.0)
}

/// Strongly connected components (Tarjan, iterative). Returns the component
/// id of every vertex; ids are assigned in reverse topological order.
fn tarjan_scc(a: &NonNegMatrix) -> (Vec<usize>, usize) {
    const UNSEEN: usize = usize::MAX;
    let n = a.n();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| successors(a, v).collect()).collect();

    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comp = vec![UNSEEN; n];
    let mut ncomp = 0;
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        // (vertex, position in its adjacency list)
        let mut calls = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = calls.last_mut() {
            if let Some(&w) = adj[v].get(*pos) {
                *pos += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    calls.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            calls.pop();
            if let Some(&(parent, _)) = calls.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    on_stack[w] = false;
                    comp[w] = ncomp;
                    if w == v {
                        break;
                    }
                }
                ncomp += 1;
            }
        }
    }
    (comp, ncomp)
}

/// Frobenius normal form of `a`.
///
/// Components are ordered topologically (edges only run from earlier to
/// later blocks); among the components available at each step the one with
/// the smallest original index goes first, and indices inside a block are
/// ascending. The output is therefore a deterministic function of `a`, and
/// a matrix that is already block upper triangular keeps the identity
/// permutation.
pub fn frobenius_normal_form(a: &NonNegMatrix) -> FrobeniusNormalForm {
    let n = a.n();
    let (comp, ncomp) = tarjan_scc(a);

    let mut members: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for v in 0..n {
        members[comp[v]].push(v);
    }

    let mut indegree = vec![0usize; ncomp];
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for v in 0..n {
        for w in successors(a, v) {
            let (cv, cw) = (comp[v], comp[w]);
            if cv != cw && !out[cv].contains(&cw) {
                out[cv].push(cw);
                indegree[cw] += 1;
            }
        }
    }

    let mut ready: BinaryHeap<Reverse<(usize, usize)>> = (0..ncomp)
        .filter(|&c| indegree[c] == 0)
        .map(|c| Reverse((members[c][0], c)))
        .collect();
    let mut map = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(ncomp);
    while let Some(Reverse((_, c))) = ready.pop() {
        let start = map.len();
        map.extend_from_slice(&members[c]);
        blocks.push(start..map.len());
        for &d in &out[c] {
            indegree[d] -= 1;
            if indegree[d] == 0 {
                ready.push(Reverse((members[d][0], d)));
            }
        }
    }
    debug_assert_eq!(map.len(), n);

    let block_matrices = blocks
        .iter()
        .map(|r| a.principal_submatrix(&map[r.clone()]))
        .collect();
    FrobeniusNormalForm {
        perm: Permutation::new(map).expect("components partition the vertices"),
        blocks,
        block_matrices,
    }
}

/// Smallest `p` with `A^p = 0`, or `None` when `A` is not nilpotent.
///
/// `A` is nilpotent exactly when every FNF block is a `1x1` zero. The index
/// is found by repeatedly multiplying the zero pattern of `A`; for a
/// nonnegative matrix the pattern of `A^k` is the boolean power of the
/// pattern, so underflow in the real entries cannot shorten the count.
pub fn nilpotency_index(a: &NonNegMatrix) -> Option<usize> {
    let fnf = frobenius_normal_form(a);
    let nilpotent = fnf
        .block_matrices
        .iter()
        .all(|b| b.n() == 1 && b.get(0, 0) == 0.0);
    if !nilpotent {
        return None;
    }
    let n = a.n();
    let pattern: Vec<bool> = (0..n * n).map(|k| a.get(k / n, k % n) > 0.0).collect();
    let mut power = pattern.clone();
    let mut p = 1;
    while power.iter().any(|&b| b) {
        let mut next = vec![false; n * n];
        for i in 0..n {
            for k in 0..n {
                if power[i * n + k] {
                    for j in 0..n {
                        next[i * n + j] |= pattern[k * n + j];
                    }
                }
            }
        }
        power = next;
        p += 1;
        debug_assert!(p <= n);
    }
    Some(p)
}

pub fn is_nilpotent(a: &NonNegMatrix) -> bool {
    nilpotency_index(a).is_some()
}

/// Index (in FNF block order) of the diagonal block whose certified Perron
/// interval has the largest midpoint; ties go to the lowest index.
pub fn spectral_block_of(fnf: &FrobeniusNormalForm, tol: f64, max_iter: usize) -> usize {
    let mut best = 0;
    let mut best_mid = f64::NEG_INFINITY;
    for (b, m) in fnf.block_matrices.iter().enumerate() {
        let cert = perron_irreducible(m, tol, max_iter).expect("FNF blocks are irreducible");
        if cert.mid() > best_mid {
            best_mid = cert.mid();
            best = b;
        }
    }
    best
}

/// [`spectral_block_of`] on the FNF of `a` with default solver settings.
pub fn spectral_block(a: &NonNegMatrix) -> usize {
    spectral_block_of(&frobenius_normal_form(a), DEFAULT_TOL, DEFAULT_MAX_ITER)
}
