//! Stallings folding.
//!
//! Folding runs on a union-find over vertices. Each vertex keeps a small
//! table from `(generator, direction)` slots to edge ids; merging two
//! vertices moves the smaller table into the larger one and every slot
//! collision becomes another pending fold.
//!
//! When witnesses are tracked, every edge carries a word over an auxiliary
//! alphabet and every absorbed vertex records an offset word. The effective
//! witness of an edge `s -> t` with raw witness `w` is
//! `offset*(s) . w . offset*(t)^-1`, where `offset*` is the product of
//! offsets up to the root. The product of effective witnesses along any
//! closed path at the basepoint is invariant under folding.

use crate::error::{Error, Result};
use crate::graph::CoreGraph;
use crate::word::{Letter, Word};

/// A labelled based graph that need not be deterministic.
#[derive(Debug, Clone)]
pub struct PreAutomaton {
    rank: usize,
    vertex_count: usize,
    basepoint: usize,
    edges: Vec<(u32, u32, u32)>,
}

impl PreAutomaton {
    /// A single basepoint vertex and no edges.
    pub fn new(rank: usize) -> Self {
        assert!(rank > 0, "rank must be positive");
        PreAutomaton {
            rank,
            vertex_count: 1,
            basepoint: 0,
            edges: Vec::new(),
        }
    }

    /// The wedge of one petal per word, all attached at the basepoint.
    pub fn wedge(rank: usize, words: &[Word]) -> Result<Self> {
        let mut pre = PreAutomaton::new(rank);
        for w in words {
            pre.add_petal(w)?;
        }
        Ok(pre)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn edges(&self) -> &[(u32, u32, u32)] {
        &self.edges
    }

    pub fn set_basepoint(&mut self, v: usize) -> Result<()> {
        self.check_vertex(v)?;
        self.basepoint = v;
        Ok(())
    }

    pub fn add_vertex(&mut self) -> usize {
        self.vertex_count += 1;
        self.vertex_count - 1
    }

    pub fn add_edge(&mut self, src: usize, gen: u32, dst: usize) -> Result<()> {
        self.check_vertex(src)?;
        self.check_vertex(dst)?;
        if gen as usize >= self.rank {
            return Err(Error::GeneratorOutOfRange {
                index: gen as usize,
                rank: self.rank,
            });
        }
        self.edges.push((src as u32, gen, dst as u32));
        Ok(())
    }

    /// Adds a path from `from` to `to` spelling `w`. Returns the ids of the
    /// edges created, in path order.
    pub fn add_path(&mut self, from: usize, w: &Word, to: usize) -> Result<Vec<usize>> {
        self.check_vertex(from)?;
        self.check_vertex(to)?;
        let letters = w.letters();
        if let Some(l) = letters.iter().find(|l| l.gen as usize >= self.rank) {
            return Err(Error::GeneratorOutOfRange {
                index: l.gen as usize,
                rank: self.rank,
            });
        }
        if letters.is_empty() {
            // an empty path glues its endpoints
            if from != to {
                return Err(Error::Malformed(
                    "empty path between distinct vertices".into(),
                ));
            }
            return Ok(Vec::new());
        }
        let mut ids = Vec::with_capacity(letters.len());
        let mut cur = from;
        for (i, l) in letters.iter().enumerate() {
            let next = if i + 1 == letters.len() {
                to
            } else {
                self.add_vertex()
            };
            ids.push(self.edges.len());
            if l.inverse {
                self.edges.push((next as u32, l.gen, cur as u32));
            } else {
                self.edges.push((cur as u32, l.gen, next as u32));
            }
            cur = next;
        }
        Ok(ids)
    }

    pub fn add_petal(&mut self, w: &Word) -> Result<Vec<usize>> {
        let b = self.basepoint;
        self.add_path(b, w, b)
    }

    /// Folds to the canonical core graph.
    pub fn fold(&self) -> CoreGraph {
        let mut folder = Folder::new(self, None);
        folder.run();
        folder.finish().0
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::Malformed(format!("vertex {v} does not exist")));
        }
        Ok(())
    }
}

/// Folds the wedge of `gens`, tracking which generator each edge came from.
/// Returns the core graph together with the effective witness of the edge
/// in every forward slot (empty words for absent slots).
pub(crate) fn fold_with_witnesses(rank: usize, gens: &[Word]) -> Result<(CoreGraph, Vec<Word>)> {
    let mut pre = PreAutomaton::new(rank);
    let mut witnesses = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        let ids = pre.add_petal(g)?;
        witnesses.resize(pre.edges.len(), Word::empty());
        if let Some(&first) = ids.first() {
            // a petal read backwards traverses its first edge against the
            // edge direction when the first letter is inverted
            let l = g.letters()[0];
            witnesses[first] = Word::from_letters([Letter {
                gen: i as u32,
                inverse: l.inverse,
            }]);
        }
    }
    let mut folder = Folder::new(&pre, Some(witnesses));
    folder.run();
    let (graph, slot_witness) = folder.finish();
    Ok((graph, slot_witness.expect("witnesses tracked")))
}

const PLUS: u32 = 0;
const MINUS: u32 = 1;

struct Folder {
    rank: usize,
    base: u32,
    parent: Vec<u32>,
    offset: Option<Vec<Word>>,
    edges: Vec<(u32, u32, u32)>,
    witness: Option<Vec<Word>>,
    repl: Vec<u32>,
    adj: Vec<Vec<(u32, u32)>>,
    pending: Vec<(u32, u32, u32)>,
    path_buf: Vec<u32>,
}

impl Folder {
    fn new(pre: &PreAutomaton, witness: Option<Vec<Word>>) -> Self {
        let n = pre.vertex_count;
        let tracked = witness.is_some();
        Folder {
            rank: pre.rank,
            base: pre.basepoint as u32,
            parent: (0..n as u32).collect(),
            offset: tracked.then(|| vec![Word::empty(); n]),
            edges: pre.edges.clone(),
            witness,
            repl: (0..pre.edges.len() as u32).collect(),
            adj: vec![Vec::new(); n],
            pending: Vec::new(),
            path_buf: Vec::new(),
        }
    }

    fn find(&mut self, v: u32) -> u32 {
        let mut r = v;
        self.path_buf.clear();
        while self.parent[r as usize] != r {
            self.path_buf.push(r);
            r = self.parent[r as usize];
        }
        for i in (0..self.path_buf.len()).rev() {
            let u = self.path_buf[i] as usize;
            let p = self.parent[u];
            if p != r {
                if let Some(off) = self.offset.as_mut() {
                    off[u] = off[p as usize].concat(&off[u]);
                }
                self.parent[u] = r;
            }
        }
        r
    }

    /// Offset of `v` relative to its root; call after `find(v)`.
    fn offset_of(&self, v: u32) -> Word {
        match &self.offset {
            Some(off) if self.parent[v as usize] != v => off[v as usize].clone(),
            _ => Word::empty(),
        }
    }

    fn effective_witness(&mut self, e: u32) -> Word {
        let (s, _, t) = self.edges[e as usize];
        self.find(s);
        self.find(t);
        let mut w = self.offset_of(s);
        w.append(&self.witness.as_ref().expect("tracked")[e as usize]);
        w.append_inverse(&self.offset_of(t));
        w
    }

    fn resolve(&mut self, mut e: u32) -> u32 {
        while self.repl[e as usize] != e {
            let next = self.repl[e as usize];
            self.repl[e as usize] = self.repl[next as usize];
            e = next;
        }
        e
    }

    fn slot_of(gen: u32, dir: u32) -> u32 {
        gen * 2 + dir
    }

    fn lookup(&self, v: u32, slot: u32) -> Option<usize> {
        self.adj[v as usize].iter().position(|&(s, _)| s == slot)
    }

    fn attach(&mut self, v: u32, slot: u32, e: u32) {
        match self.lookup(v, slot) {
            Some(i) => {
                let existing = self.adj[v as usize][i].1;
                let existing = self.resolve(existing);
                self.adj[v as usize][i].1 = existing;
                if existing != e {
                    self.pending.push((slot, existing, e));
                }
            }
            None => self.adj[v as usize].push((slot, e)),
        }
    }

    fn run(&mut self) {
        for e in 0..self.edges.len() as u32 {
            let (s, g, t) = self.edges[e as usize];
            let (s, t) = (self.find(s), self.find(t));
            self.attach(s, Self::slot_of(g, PLUS), e);
            self.attach(t, Self::slot_of(g, MINUS), e);
        }
        while let Some((slot, a, b)) = self.pending.pop() {
            let (e1, e2) = (self.resolve(a), self.resolve(b));
            if e1 == e2 {
                continue;
            }
            let dir = slot % 2;
            let (s1, _, t1) = self.edges[e1 as usize];
            let (s2, _, t2) = self.edges[e2 as usize];
            // far endpoints as seen from the shared vertex
            let (f1, f2) = if dir == PLUS { (t1, t2) } else { (s1, s2) };
            let (r1, r2) = (self.find(f1), self.find(f2));
            if r1 != r2 {
                self.merge(e1, r1, e2, r2, dir);
            }
            self.kill(e2, e1);
        }
    }

    fn traversal_witness(&mut self, e: u32, dir: u32) -> Word {
        let w = self.effective_witness(e);
        if dir == PLUS {
            w
        } else {
            w.inverse()
        }
    }

    fn merge(&mut self, e1: u32, r1: u32, e2: u32, r2: u32, dir: u32) {
        let keep_first = if r1 == self.base {
            true
        } else if r2 == self.base {
            false
        } else {
            self.adj[r1 as usize].len() >= self.adj[r2 as usize].len()
        };
        let (survivor, absorbed, e_s, e_a) = if keep_first {
            (r1, r2, e1, e2)
        } else {
            (r2, r1, e2, e1)
        };
        if self.offset.is_some() {
            let ts = self.traversal_witness(e_s, dir);
            let ta = self.traversal_witness(e_a, dir);
            let mut delta = ts.inverse();
            delta.append(&ta);
            self.offset.as_mut().unwrap()[absorbed as usize] = delta;
        }
        self.parent[absorbed as usize] = survivor;
        let moved = std::mem::take(&mut self.adj[absorbed as usize]);
        for (slot, e) in moved {
            let e = self.resolve(e);
            self.attach(survivor, slot, e);
        }
    }

    /// Retires `dead` in favour of the parallel edge `keep`.
    fn kill(&mut self, dead: u32, keep: u32) {
        self.repl[dead as usize] = keep;
        let (s, g, t) = self.edges[dead as usize];
        let (s, t) = (self.find(s), self.find(t));
        for (v, slot) in [(s, Self::slot_of(g, PLUS)), (t, Self::slot_of(g, MINUS))] {
            if let Some(i) = self.lookup(v, slot) {
                if self.adj[v as usize][i].1 == dead {
                    self.adj[v as usize][i].1 = keep;
                }
            }
        }
    }

    fn finish(mut self) -> (CoreGraph, Option<Vec<Word>>) {
        let n = self.parent.len();
        let base = self.find(self.base);
        debug_assert_eq!(base, self.base);
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for e in 0..self.edges.len() as u32 {
            if self.repl[e as usize] != e {
                continue;
            }
            let (s, g, t) = self.edges[e as usize];
            edges.push((self.find(s), g, self.find(t)));
            ids.push(e);
        }
        let (graph, placement) = CoreGraph::canonical(self.rank, n, base as usize, &edges);
        let witnesses = if self.witness.is_some() {
            let mut slots = vec![Word::empty(); graph.out_slots().len()];
            for (i, &e) in ids.iter().enumerate() {
                if let Some(slot) = placement[i] {
                    slots[slot] = self.effective_witness(e);
                }
            }
            Some(slots)
        } else {
            None
        };
        (graph, witnesses)
    }
}
