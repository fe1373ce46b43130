//! Finitely generated subgroups of a free group, represented by their
//! Stallings core graphs.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fold::{fold_with_witnesses, PreAutomaton};
use crate::graph::{CoreGraph, NONE};
use crate::word::{Alphabet, Letter, Word};

/// Index of a subgroup in its ambient free group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Index {
    Finite(usize),
    Infinite,
}

impl Index {
    pub fn finite(self) -> Option<usize> {
        match self {
            Index::Finite(n) => Some(n),
            Index::Infinite => None,
        }
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Index::Finite(n) => write!(f, "{n}"),
            Index::Infinite => f.write_str("infinite"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeRole {
    Absent,
    Tree,
    /// Non-tree edge carrying basis element `index`; `reversed` when the
    /// basis element crosses the edge against its direction.
    Basis {
        index: u32,
        reversed: bool,
    },
}

/// A finitely generated subgroup with its core graph and canonical basis.
///
/// The canonical basis comes from the BFS spanning tree rooted at the
/// basepoint (generators ascending, outgoing before incoming). Non-tree
/// edges are listed in the order they are first met during a scan of the
/// vertices in BFS order, and each basis element crosses its edge in the
/// direction it was first met.
#[derive(Clone)]
pub struct Subgroup {
    graph: CoreGraph,
    basis: Vec<Word>,
    roles: Vec<EdgeRole>,
    paths: Vec<Word>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.graph == other.graph
    }
}

impl Eq for Subgroup {}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Subgroup")
            .field("ambient_rank", &self.ambient_rank())
            .field("vertices", &self.graph.vertex_count())
            .field("index", &self.index())
            .field("rank", &self.rank())
            .finish()
    }
}

impl Subgroup {
    /// The subgroup generated by `gens`.
    pub fn from_generators(ambient_rank: usize, gens: &[Word]) -> Result<Subgroup> {
        let pre = PreAutomaton::wedge(ambient_rank, gens)?;
        Ok(Subgroup::from_core(pre.fold()))
    }

    /// The subgroup generated by the images of a homomorphism given on a
    /// basis; same as [`Subgroup::from_generators`].
    pub fn image_subgroup(ambient_rank: usize, images: &[Word]) -> Result<Subgroup> {
        Subgroup::from_generators(ambient_rank, images)
    }

    pub fn whole(ambient_rank: usize) -> Subgroup {
        let gens: Vec<Word> = (0..ambient_rank as u32).map(Word::generator).collect();
        Subgroup::from_generators(ambient_rank, &gens).expect("generators in range")
    }

    pub fn trivial(ambient_rank: usize) -> Subgroup {
        Subgroup::from_core(CoreGraph::point(ambient_rank))
    }

    /// Stabilizer of `point` for the action of the free group on
    /// `0..degree` in which generator `i` acts by `perms[i]` (on the right:
    /// reading generator `i` at `p` moves to `perms[i][p]`).
    pub fn stabilizer(perms: &[Vec<usize>], point: usize) -> Result<Subgroup> {
        let rank = perms.len();
        if rank == 0 {
            return Err(Error::Malformed("need at least one generator".into()));
        }
        let degree = perms[0].len();
        if point >= degree {
            return Err(Error::Malformed(format!("point {point} out of range")));
        }
        let mut edges = Vec::with_capacity(rank * degree);
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; degree];
            if p.len() != degree
                || p.iter()
                    .any(|&t| t >= degree || std::mem::replace(&mut seen[t], true))
            {
                return Err(Error::Malformed(format!(
                    "generator {g} does not act by a permutation"
                )));
            }
            edges.extend(
                p.iter()
                    .enumerate()
                    .map(|(s, &t)| (s as u32, g as u32, t as u32)),
            );
        }
        let (graph, _) = CoreGraph::canonical(rank, degree, point, &edges);
        Ok(Subgroup::from_core(graph))
    }

    /// Wraps a canonical core graph and extracts the canonical basis.
    pub fn from_core(graph: CoreGraph) -> Subgroup {
        let rank = graph.rank();
        let n = graph.vertex_count();
        let mut roles = vec![EdgeRole::Absent; n * rank];
        for (s, g, _) in graph.edges() {
            roles[s * rank + g as usize] = EdgeRole::Basis {
                index: u32::MAX,
                reversed: false,
            };
        }

        // spanning tree; BFS order coincides with vertex numbering
        let mut paths: Vec<Option<Word>> = vec![None; n];
        paths[0] = Some(Word::empty());
        let mut order = vec![0usize];
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for g in 0..rank as u32 {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    if let Some(t) = graph.step(v, l) {
                        if paths[t].is_none() {
                            let mut p = paths[v].clone().unwrap();
                            p.push(l);
                            paths[t] = Some(p);
                            order.push(t);
                            let slot = if l.inverse {
                                t * rank + g as usize
                            } else {
                                v * rank + g as usize
                            };
                            roles[slot] = EdgeRole::Tree;
                        }
                    }
                }
            }
        }
        let paths: Vec<Word> = paths.into_iter().map(|p| p.expect("connected")).collect();

        let mut basis = Vec::new();
        for v in 0..n {
            for g in 0..rank as u32 {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    let Some(t) = graph.step(v, l) else { continue };
                    let slot = if l.inverse {
                        t * rank + g as usize
                    } else {
                        v * rank + g as usize
                    };
                    if let EdgeRole::Basis {
                        index: u32::MAX, ..
                    } = roles[slot]
                    {
                        roles[slot] = EdgeRole::Basis {
                            index: basis.len() as u32,
                            reversed: l.inverse,
                        };
                        let mut b = paths[v].clone();
                        b.push(l);
                        b.append_inverse(&paths[t]);
                        basis.push(b);
                    }
                }
            }
        }
        Subgroup {
            graph,
            basis,
            roles,
            paths,
        }
    }

    pub fn graph(&self) -> &CoreGraph {
        &self.graph
    }

    pub fn ambient_rank(&self) -> usize {
        self.graph.rank()
    }

    /// Canonical free basis.
    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    /// Rank of the subgroup as a free group.
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_complete(&self) -> bool {
        self.graph.is_complete()
    }

    pub fn index(&self) -> Index {
        if self.is_complete() {
            Index::Finite(self.graph.vertex_count())
        } else {
            Index::Infinite
        }
    }

    /// Tree path from the basepoint to `v`.
    pub fn tree_path(&self, v: usize) -> &Word {
        &self.paths[v]
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.graph.read_from(0, w) == Some(0)
    }

    /// Every canonical basis element of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient_rank() == other.ambient_rank() && self.basis.iter().all(|b| other.contains(b))
    }

    /// Rewrites a member as a word in the canonical basis (generator `i` of
    /// the result stands for `basis()[i]`).
    pub fn express_in_basis(&self, w: &Word) -> Result<Word> {
        let rank = self.graph.rank();
        let mut v = 0usize;
        let mut out = Word::empty();
        for &l in w.letters() {
            if l.gen as usize >= rank {
                return Err(Error::NotAMember);
            }
            let (next, slot) = if l.inverse {
                let s = self.graph.in_edge(v, l.gen).ok_or(Error::NotAMember)?;
                (s, s * rank + l.gen as usize)
            } else {
                let t = self.graph.out_edge(v, l.gen).ok_or(Error::NotAMember)?;
                (t, v * rank + l.gen as usize)
            };
            if let EdgeRole::Basis { index, reversed } = self.roles[slot] {
                out.push(Letter {
                    gen: index,
                    inverse: reversed != l.inverse,
                });
            }
            v = next;
        }
        if v != 0 {
            return Err(Error::NotAMember);
        }
        Ok(out)
    }

    /// Intersection via the basepoint component of the product automaton.
    pub fn intersect(&self, other: &Subgroup) -> Result<Subgroup> {
        let rank = self.ambient_rank();
        if rank != other.ambient_rank() {
            return Err(Error::RankMismatch(rank, other.ambient_rank()));
        }
        let (a, b) = (&self.graph, &other.graph);
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut pairs = vec![(0u32, 0u32)];
        ids.insert((0, 0), 0);
        let mut edges = Vec::new();
        let mut head = 0;
        while head < pairs.len() {
            let (u, v) = pairs[head];
            let id = head as u32;
            head += 1;
            for g in 0..rank as u32 {
                for l in [Letter::pos(g), Letter::neg(g)] {
                    let (Some(s), Some(t)) = (a.step(u as usize, l), b.step(v as usize, l)) else {
                        continue;
                    };
                    let key = (s as u32, t as u32);
                    let next = *ids.entry(key).or_insert_with(|| {
                        pairs.push(key);
                        (pairs.len() - 1) as u32
                    });
                    if !l.inverse {
                        edges.push((id, g, next));
                    }
                }
            }
        }
        let (graph, _) = CoreGraph::canonical(rank, pairs.len(), 0, &edges);
        Ok(Subgroup::from_core(graph))
    }

    pub fn to_dot(&self, alphabet: &Alphabet) -> String {
        self.graph.to_dot(alphabet)
    }
}

/// Rewrites members of `<gens>` as words in `gens`, where `gens` is a free
/// basis of the subgroup it generates.
#[derive(Clone)]
pub struct GeneratorRewriter {
    graph: Arc<CoreGraph>,
    witness: Arc<Vec<Word>>,
    relabel: Option<Arc<Vec<u32>>>,
    len: usize,
}

impl fmt::Debug for GeneratorRewriter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GeneratorRewriter")
            .field("generators", &self.len)
            .finish()
    }
}

impl GeneratorRewriter {
    pub fn new(ambient_rank: usize, gens: &[Word]) -> Result<Self> {
        let (graph, witness) = fold_with_witnesses(ambient_rank, gens)?;
        let rank = graph.edge_count() + 1 - graph.vertex_count();
        if rank != gens.len() {
            return Err(Error::NotABasis {
                rank,
                len: gens.len(),
            });
        }
        Ok(GeneratorRewriter {
            graph: Arc::new(graph),
            witness: Arc::new(witness),
            relabel: None,
            len: gens.len(),
        })
    }

    /// Rewriter for a permuted generating list: if this rewriter was built
    /// for `gens`, the result rewrites over `new` where `gens[i] = new[map[i]]`.
    pub fn relabeled(&self, map: &[u32]) -> Self {
        assert_eq!(map.len(), self.len);
        let composed = match &self.relabel {
            Some(old) => old.iter().map(|&i| map[i as usize]).collect(),
            None => map.to_vec(),
        };
        GeneratorRewriter {
            relabel: Some(Arc::new(composed)),
            ..self.clone()
        }
    }

    pub fn generator_count(&self) -> usize {
        self.len
    }

    /// Core graph of the subgroup the generators span.
    pub fn graph(&self) -> &CoreGraph {
        &self.graph
    }

    pub fn express(&self, w: &Word) -> Result<Word> {
        let rank = self.graph.rank();
        let mut v = 0usize;
        let mut out = Word::empty();
        for &l in w.letters() {
            if l.gen as usize >= rank {
                return Err(Error::NotAMember);
            }
            if l.inverse {
                let s = self.graph.in_edge(v, l.gen).ok_or(Error::NotAMember)?;
                out.append_inverse(&self.witness[s * rank + l.gen as usize]);
                v = s;
            } else {
                let slot = v * rank + l.gen as usize;
                let t = self.graph.out_slots()[slot];
                if t == NONE {
                    return Err(Error::NotAMember);
                }
                out.append(&self.witness[slot]);
                v = t as usize;
            }
        }
        if v != 0 {
            return Err(Error::NotAMember);
        }
        Ok(match &self.relabel {
            Some(map) => out.relabel(map),
            None => out,
        })
    }
}

/// Expresses `w` as a word in `gens` (generator `i` stands for `gens[i]`).
pub fn express_in_generators(ambient_rank: usize, gens: &[Word], w: &Word) -> Result<Word> {
    GeneratorRewriter::new(ambient_rank, gens)?.express(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(list: &[&str]) -> Vec<Word> {
        let a = Alphabet::free2();
        list.iter().map(|s| a.parse(s).unwrap()).collect()
    }

    fn w(s: &str) -> Word {
        Alphabet::free2().parse(s).unwrap()
    }

    fn h0() -> Subgroup {
        Subgroup::from_generators(2, &words(&["x.x.x", "y", "x.y.x^-1", "x.x.y.x^-1.x^-1"]))
            .unwrap()
    }

    #[test]
    fn h0_shape() {
        let h = h0();
        assert_eq!(h.index(), Index::Finite(3));
        assert_eq!(h.rank(), 4);
        assert!(h.contains(&w("y")));
        assert!(!h.contains(&w("x")));
        assert!(h.contains(&Word::empty()));
        assert_eq!(
            h.basis(),
            &words(&["y", "x.x.x", "x.y.x^-1", "x^-1.y.x"])[..]
        );
    }

    #[test]
    fn free_factor_and_whole_group() {
        let hx = Subgroup::from_generators(2, &words(&["x"])).unwrap();
        assert_eq!(hx.graph().vertex_count(), 1);
        assert_eq!(hx.graph().edge_count(), 1);
        assert_eq!(hx.index(), Index::Infinite);
        let whole = Subgroup::from_generators(2, &words(&["x", "y"])).unwrap();
        assert_eq!(whole.index(), Index::Finite(1));
        assert_eq!(whole, Subgroup::whole(2));
    }

    #[test]
    fn trivial_subgroup() {
        let t = Subgroup::from_generators(2, &[]).unwrap();
        assert_eq!(t, Subgroup::trivial(2));
        assert_eq!(t.index(), Index::Infinite);
        assert_eq!(t.rank(), 0);
        assert!(t.contains(&Word::empty()));
        assert!(!t.contains(&w("x")));
    }

    #[test]
    fn out_of_range_generator() {
        assert!(matches!(
            Subgroup::from_generators(2, &[Word::generator(2)]),
            Err(Error::GeneratorOutOfRange { index: 2, rank: 2 })
        ));
    }

    #[test]
    fn express_in_basis_examples() {
        let h = h0();
        for (i, b) in h.basis().iter().enumerate() {
            assert_eq!(h.express_in_basis(b).unwrap(), Word::generator(i as u32));
        }
        let e = h.express_in_basis(&w("y.x.x.x")).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.substitute(h.basis()).unwrap(), w("y.x.x.x"));
        assert_eq!(h.express_in_basis(&w("x")), Err(Error::NotAMember));
    }

    #[test]
    fn express_in_generators_examples() {
        let gens = words(&["x.x", "y"]);
        assert_eq!(
            express_in_generators(2, &gens, &w("x.x.y.x.x")).unwrap(),
            Word::from_pairs(&[(0, 1), (1, 1), (0, 1)])
        );
        assert_eq!(
            express_in_generators(2, &words(&["x"]), &w("x.x.x.x.x")).unwrap(),
            Word::generator(0).pow(5)
        );
        assert_eq!(
            express_in_generators(2, &words(&["x", "x^-1.y"]), &w("y")).unwrap(),
            Word::from_pairs(&[(0, 1), (1, 1)])
        );
        assert_eq!(
            express_in_generators(2, &gens, &w("x")),
            Err(Error::NotAMember)
        );
        assert!(matches!(
            express_in_generators(2, &words(&["x", "x.x"]), &w("x")),
            Err(Error::NotABasis { rank: 1, len: 2 })
        ));
    }

    #[test]
    fn relabeled_rewriter() {
        let gens = words(&["x.x", "y"]);
        let r = GeneratorRewriter::new(2, &gens).unwrap();
        let swapped = r.relabeled(&[1, 0]);
        let e = swapped.express(&w("x.x.y")).unwrap();
        assert_eq!(e, Word::from_pairs(&[(1, 1), (0, 1)]));
        assert_eq!(e.substitute(&words(&["y", "x.x"])).unwrap(), w("x.x.y"));
    }

    #[test]
    fn intersection_examples() {
        let h = h0();
        assert_eq!(h.intersect(&h).unwrap(), h);
        assert_eq!(Subgroup::whole(2).intersect(&h).unwrap(), h);
        let k = Subgroup::stabilizer(&[vec![1, 0], vec![1, 0]], 0).unwrap();
        assert_eq!(k.index(), Index::Finite(2));
        assert_eq!(k.intersect(&h).unwrap().index(), Index::Finite(6));
    }

    #[test]
    fn redundant_generators_same_canonical_form() {
        let a = h0();
        let b = Subgroup::from_generators(
            2,
            &words(&[
                "x.x.x",
                "y",
                "x.y.x^-1",
                "x.x.y.x^-1.x^-1",
                "y.x.x.x.y",
                "x^-1.y.x",
            ]),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn dot_export() {
        let dot = h0().to_dot(&Alphabet::free2());
        assert!(dot.contains("0 [shape=doublecircle];"));
        assert_eq!(dot.matches("->").count(), 6);
    }
}
