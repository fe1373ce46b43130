//! Folded, based, edge-labelled graphs (Stallings core graphs).

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::word::{Alphabet, Letter, Word};

pub(crate) const NONE: u32 = u32::MAX;

/// A deterministic based graph over a ranked alphabet. Vertex `0` is the
/// basepoint and vertices are numbered in canonical BFS order, so two
/// `CoreGraph`s describe the same based labelled graph iff they are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoreGraph {
    rank: usize,
    out: Vec<u32>,
    inn: Vec<u32>,
}

impl CoreGraph {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.out.len() / self.rank
    }

    pub fn basepoint(&self) -> usize {
        0
    }

    pub fn edge_count(&self) -> usize {
        self.out.iter().filter(|&&t| t != NONE).count()
    }

    /// Every vertex has an outgoing and an incoming edge for every generator.
    pub fn is_complete(&self) -> bool {
        self.out.iter().chain(self.inn.iter()).all(|&t| t != NONE)
    }

    /// Target of the `gen`-labelled edge leaving `v`.
    pub fn out_edge(&self, v: usize, gen: u32) -> Option<usize> {
        let t = self.out[v * self.rank + gen as usize];
        (t != NONE).then_some(t as usize)
    }

    /// Source of the `gen`-labelled edge entering `v`.
    pub fn in_edge(&self, v: usize, gen: u32) -> Option<usize> {
        let t = self.inn[v * self.rank + gen as usize];
        (t != NONE).then_some(t as usize)
    }

    /// Follows one letter from `v`.
    #[inline]
    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        if l.inverse {
            self.in_edge(v, l.gen)
        } else {
            self.out_edge(v, l.gen)
        }
    }

    /// End vertex of the path reading `w` from `start`, if it exists.
    pub fn read_from(&self, start: usize, w: &Word) -> Option<usize> {
        w.letters().iter().try_fold(start, |v, &l| self.step(v, l))
    }

    /// Edges `(source, generator, target)` in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        let rank = self.rank;
        self.out
            .iter()
            .enumerate()
            .filter(|&(_, &t)| t != NONE)
            .map(move |(slot, &t)| (slot / rank, (slot % rank) as u32, t as usize))
    }

    pub(crate) fn out_slots(&self) -> &[u32] {
        &self.out
    }

    /// Graphviz rendering. Vertices carry their BFS number and the basepoint
    /// is double-circled; output is byte-stable.
    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        let mut s = String::from("digraph core {\n  rankdir=LR;\n");
        for v in 0..self.vertex_count() {
            let shape = if v == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  {v} [shape={shape}];");
        }
        for (u, g, v) in self.edges() {
            let _ = writeln!(s, "  {u} -> {v} [label=\"{}\"];", alphabet.name(g));
        }
        s.push_str("}\n");
        s
    }

    /// Builds the canonical core graph from a deterministic edge list over
    /// vertices `0..n`. Only the basepoint component survives, hanging trees
    /// away from the basepoint are pruned, and vertices are renumbered in
    /// BFS order. Returns the graph and, for every input edge, its canonical
    /// forward slot (`source * rank + generator`) if it was kept.
    pub(crate) fn canonical(
        rank: usize,
        n: usize,
        base: usize,
        edges: &[(u32, u32, u32)],
    ) -> (CoreGraph, Vec<Option<usize>>) {
        assert!(rank > 0, "rank must be positive");
        let mut out = vec![NONE; n * rank];
        let mut inn = vec![NONE; n * rank];
        let mut degree = vec![0u32; n];
        for &(s, g, t) in edges {
            let (s, g, t) = (s as usize, g as usize, t as usize);
            debug_assert_eq!(out[s * rank + g], NONE, "input not folded");
            debug_assert_eq!(inn[t * rank + g], NONE, "input not folded");
            out[s * rank + g] = t as u32;
            inn[t * rank + g] = s as u32;
            degree[s] += 1;
            degree[t] += 1;
        }

        // basepoint component
        let mut alive = vec![false; n];
        alive[base] = true;
        let mut queue = VecDeque::from([base]);
        while let Some(v) = queue.pop_front() {
            for slot in v * rank..(v + 1) * rank {
                for t in [out[slot], inn[slot]] {
                    if t != NONE && !alive[t as usize] {
                        alive[t as usize] = true;
                        queue.push_back(t as usize);
                    }
                }
            }
        }

        // prune leaves other than the basepoint
        let mut leaves: Vec<usize> = (0..n)
            .filter(|&v| alive[v] && v != base && degree[v] <= 1)
            .collect();
        while let Some(v) = leaves.pop() {
            if !alive[v] {
                continue;
            }
            alive[v] = false;
            for slot in v * rank..(v + 1) * rank {
                for t in [out[slot], inn[slot]] {
                    if t != NONE && t as usize != v {
                        let t = t as usize;
                        degree[t] -= 1;
                        if alive[t] && t != base && degree[t] <= 1 {
                            leaves.push(t);
                        }
                    }
                }
            }
        }

        // BFS renumbering: generators ascending, outgoing before incoming
        let mut number = vec![NONE; n];
        let mut order = Vec::new();
        number[base] = 0;
        order.push(base);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for g in 0..rank {
                for t in [out[v * rank + g], inn[v * rank + g]] {
                    if t != NONE && alive[t as usize] && number[t as usize] == NONE {
                        number[t as usize] = order.len() as u32;
                        order.push(t as usize);
                    }
                }
            }
        }

        let m = order.len();
        let mut new_out = vec![NONE; m * rank];
        let mut new_inn = vec![NONE; m * rank];
        let mut placement = Vec::with_capacity(edges.len());
        for &(s, g, t) in edges {
            let (ns, nt) = (number[s as usize], number[t as usize]);
            if ns == NONE || nt == NONE {
                placement.push(None);
                continue;
            }
            let slot = ns as usize * rank + g as usize;
            new_out[slot] = nt;
            new_inn[nt as usize * rank + g as usize] = ns;
            placement.push(Some(slot));
        }
        (
            CoreGraph {
                rank,
                out: new_out,
                inn: new_inn,
            },
            placement,
        )
    }

    /// The one-vertex graph with no edges.
    pub(crate) fn point(rank: usize) -> CoreGraph {
        CoreGraph {
            rank,
            out: vec![NONE; rank],
            inn: vec![NONE; rank],
        }
    }
}
