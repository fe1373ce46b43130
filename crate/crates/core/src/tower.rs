//! The iterated symmetric-group tower `G_0 = Z/3`, `G_{k+1} = Sym(G_k)`,
//! the left-regular embeddings between its levels, and the free-group
//! maps that realize each level inside the commensurator of `F_2`.
//!
//! Elements of `G_k` are enumerated once per level: level 0 as `0 < 1 < 2`,
//! higher levels lexicographically by one-line notation, so a level-`k+1`
//! element is a permutation of the indices `0..|G_k|`. The rose `R(G_k)` has
//! one generator `a_x` per element (index = enumeration index) followed by
//! the extra generator `a_*`.

use std::fmt;
use std::sync::OnceLock;

use crate::commensuration::VirtualAut;
use crate::config::{TowerConfig, MATERIALIZABLE_LEVEL};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::subgroup::{GeneratorRewriter, Subgroup};
use crate::word::{Alphabet, Word};

/// Highest level whose elements can be represented (permutations of the
/// enumerated `G_{MATERIALIZABLE_LEVEL}`).
pub const ELEMENT_LEVEL: usize = MATERIALIZABLE_LEVEL + 1;

const BASE_ORDER: usize = 3;

/// An element of some level of the tower.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Element {
    /// Residue mod 3, for level 0.
    Residue(u32),
    /// Permutation of the enumerated previous level, for levels 1 and up.
    Perm(Perm),
}

impl Element {
    pub fn as_perm(&self) -> Option<&Perm> {
        match self {
            Element::Perm(p) => Some(p),
            Element::Residue(_) => None,
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Residue(r) => write!(f, "{r}"),
            Element::Perm(p) => write!(f, "{p}"),
        }
    }
}

/// A homomorphism between free groups of finite rank given on a basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Injection {
    pub source_rank: usize,
    pub target_rank: usize,
    pub images: Vec<Word>,
}

impl Injection {
    pub fn new(source_rank: usize, target_rank: usize, images: Vec<Word>) -> Result<Injection> {
        if images.len() != source_rank {
            return Err(Error::ArityMismatch {
                expected: source_rank,
                found: images.len(),
            });
        }
        let target = Alphabet::new(target_rank);
        for w in &images {
            target.check(w)?;
        }
        Ok(Injection {
            source_rank,
            target_rank,
            images,
        })
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        w.substitute(&self.images)
    }

    /// `outer ∘ inner`.
    pub fn compose(outer: &Injection, inner: &Injection) -> Result<Injection> {
        if inner.target_rank != outer.source_rank {
            return Err(Error::RankMismatch(inner.target_rank, outer.source_rank));
        }
        let images = inner
            .images
            .iter()
            .map(|w| w.substitute_unchecked(&outer.images))
            .collect();
        Ok(Injection {
            source_rank: inner.source_rank,
            target_rank: outer.target_rank,
            images,
        })
    }

    pub fn image_subgroup(&self) -> Subgroup {
        Subgroup::from_generators(self.target_rank, &self.images)
            .expect("images checked at construction")
    }

    /// The images freely generate their span.
    pub fn is_injective(&self) -> bool {
        self.image_subgroup().rank() == self.source_rank
    }

    /// One `source -> image` line per generator.
    pub fn table(&self, source: &Alphabet, target: &Alphabet) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(i, w)| format!("{} -> {}\n", source.name(i as u32), target.format(w)))
            .collect()
    }
}

struct LevelData {
    order: usize,
    /// right coset representatives of ℓ(G_{k-1}) in G_k, empty at level 0
    transversal: Vec<Perm>,
    /// element index -> (h index, j) with element = ℓ(h) ∘ c_j
    decomposition: Vec<(u32, u32)>,
}

struct EmbedData {
    big_j: Injection,
    subgroup: Subgroup,
    rewriter: GeneratorRewriter,
    /// canonical basis of H_k written in the generators of R(G_k)
    coords: Vec<Word>,
}

/// The tower together with its configured choices.
pub struct Tower {
    config: TowerConfig,
    levels: Vec<LevelData>,
    j0: Injection,
    embeds: Vec<OnceLock<EmbedData>>,
}

impl Tower {
    pub fn new(config: TowerConfig) -> Result<Tower> {
        config.validate()?;
        let j0_words = match &config.j0 {
            Some(list) => {
                let a = Alphabet::free2();
                list.iter()
                    .map(|s| a.parse(s))
                    .collect::<Result<Vec<_>>>()?
            }
            None => default_j0(),
        };
        let j0 = Injection::new(BASE_ORDER + 1, 2, j0_words)
            .map_err(|e| Error::Config(format!("j0: {e}")))?;
        let h0 = j0.image_subgroup();
        if h0.rank() != BASE_ORDER + 1 || !h0.is_complete() {
            return Err(Error::Config(format!(
                "j0 images must freely generate a finite-index subgroup (rank {}, index {})",
                h0.rank(),
                h0.index()
            )));
        }

        let mut tower = Tower {
            levels: Vec::new(),
            j0,
            embeds: (0..=config.max_level).map(|_| OnceLock::new()).collect(),
            config,
        };
        tower.levels.push(LevelData {
            order: BASE_ORDER,
            transversal: Vec::new(),
            decomposition: Vec::new(),
        });
        for k in 1..=MATERIALIZABLE_LEVEL {
            let data = tower.build_level(k)?;
            tower.levels.push(data);
        }
        Ok(tower)
    }

    pub fn config(&self) -> &TowerConfig {
        &self.config
    }

    pub fn max_level(&self) -> usize {
        self.config.max_level
    }

    /// `|G_k|` for enumerated levels.
    pub fn order(&self, k: usize) -> Option<usize> {
        self.levels.get(k).map(|l| l.order)
    }

    fn enumerated(&self, k: usize) -> Result<usize> {
        self.order(k).ok_or(Error::LevelTooLarge {
            level: k,
            max: MATERIALIZABLE_LEVEL,
        })
    }

    /// `[G_k : ℓ(G_{k-1})]`.
    pub fn coset_count(&self, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::InvalidElement("level 0 has no parent level".into()));
        }
        self.enumerated(k)?;
        Ok(self.levels[k].transversal.len())
    }

    pub fn check_element(&self, k: usize, g: &Element) -> Result<()> {
        match (k, g) {
            (0, Element::Residue(r)) if (*r as usize) < BASE_ORDER => Ok(()),
            (k, Element::Perm(p)) if (1..=ELEMENT_LEVEL).contains(&k) => {
                let degree = self.levels[k - 1].order;
                if p.degree() == degree {
                    Ok(())
                } else {
                    Err(Error::InvalidElement(format!(
                        "level {k} elements permute {degree} points, got {}",
                        p.degree()
                    )))
                }
            }
            (k, _) if k > ELEMENT_LEVEL => Err(Error::LevelTooLarge {
                level: k,
                max: ELEMENT_LEVEL,
            }),
            (k, g) => Err(Error::InvalidElement(format!(
                "{g} is not an element of level {k}"
            ))),
        }
    }

    /// Parses an integer at level 0 and cycle notation above.
    pub fn parse_element(&self, k: usize, text: &str) -> Result<Element> {
        let g = if k == 0 {
            let r: u32 = text
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {text:?}")))?;
            Element::Residue(r)
        } else if k <= ELEMENT_LEVEL {
            Element::Perm(Perm::parse_cycles(text, self.levels[k - 1].order)?)
        } else {
            return Err(Error::LevelTooLarge {
                level: k,
                max: ELEMENT_LEVEL,
            });
        };
        self.check_element(k, &g)?;
        Ok(g)
    }

    pub fn identity(&self, k: usize) -> Result<Element> {
        match k {
            0 => Ok(Element::Residue(0)),
            k if k <= ELEMENT_LEVEL => Ok(Element::Perm(Perm::identity(self.levels[k - 1].order))),
            _ => Err(Error::LevelTooLarge {
                level: k,
                max: ELEMENT_LEVEL,
            }),
        }
    }

    /// The `i`-th element of the enumeration of `G_k`.
    pub fn element(&self, k: usize, i: usize) -> Result<Element> {
        let order = self.enumerated(k)?;
        if i >= order {
            return Err(Error::InvalidElement(format!(
                "index {i} out of range for level {k}"
            )));
        }
        Ok(if k == 0 {
            Element::Residue(i as u32)
        } else {
            Element::Perm(Perm::from_lex_rank(self.levels[k - 1].order, i))
        })
    }

    /// All elements of `G_k` in enumeration order.
    pub fn elements(&self, k: usize) -> Result<Vec<Element>> {
        let order = self.enumerated(k)?;
        (0..order).map(|i| self.element(k, i)).collect()
    }

    /// Enumeration index of a valid element of an enumerated level.
    pub fn index_of(&self, k: usize, g: &Element) -> Result<usize> {
        self.enumerated(k)?;
        self.check_element(k, g)?;
        Ok(match g {
            Element::Residue(r) => *r as usize,
            Element::Perm(p) => p.lex_rank(),
        })
    }

    pub fn multiply(&self, k: usize, a: &Element, b: &Element) -> Result<Element> {
        self.check_element(k, a)?;
        self.check_element(k, b)?;
        Ok(mul(a, b))
    }

    pub fn inverse(&self, k: usize, a: &Element) -> Result<Element> {
        self.check_element(k, a)?;
        Ok(match a {
            Element::Residue(r) => Element::Residue((BASE_ORDER as u32 - r) % BASE_ORDER as u32),
            Element::Perm(p) => Element::Perm(p.inverse()),
        })
    }

    /// Left-regular embedding: the permutation `x ↦ g·x` of the enumerated
    /// `G_k`, an element of `G_{k+1}`.
    pub fn ell(&self, k: usize, g: &Element) -> Result<Perm> {
        let order = self.enumerated(k)?;
        self.check_element(k, g)?;
        let map = (0..order)
            .map(|x| {
                let y = mul(g, &self.element(k, x).expect("in range"));
                self.index_of(k, &y).expect("closed") as u32
            })
            .collect();
        Ok(Perm::from_u32(map))
    }

    /// The `h` with `σ = ℓ(h)`, if `σ ∈ G_{k+1}` is a left translation of `G_k`.
    pub fn is_translation(&self, k: usize, sigma: &Perm) -> Option<Element> {
        let order = self.order(k)?;
        if sigma.degree() != order {
            return None;
        }
        // identity has index 0 at every level
        let h = self.element(k, sigma.apply(0)).ok()?;
        let ell_h = self.ell(k, &h).ok()?;
        (&ell_h == sigma).then_some(h)
    }

    /// Right coset representatives `c_0 = id, c_1, ...` of `ℓ(G_{k-1})` in `G_k`.
    pub fn transversal(&self, k: usize) -> Result<&[Perm]> {
        self.coset_count(k)?;
        Ok(&self.levels[k].transversal)
    }

    /// Writes `σ ∈ G_k` as `ℓ(h) ∘ c_j`, returning `(h, j)`.
    pub fn coset_decompose(&self, k: usize, sigma: &Perm) -> Result<(Element, usize)> {
        self.coset_count(k)?;
        self.check_element(k, &Element::Perm(sigma.clone()))?;
        let (h, j) = self.levels[k].decomposition[sigma.lex_rank()];
        Ok((self.element(k - 1, h as usize)?, j as usize))
    }

    /// Display names for the rose `R(G_k)`: `a_<element>` then `a_*`.
    pub fn rose_alphabet(&self, k: usize) -> Result<Alphabet> {
        let mut names: Vec<String> = self.elements(k)?.iter().map(|g| format!("a_{g}")).collect();
        names.push("a_*".into());
        Alphabet::with_names(names)
    }

    /// Index of the `a_*` generator of `R(G_k)`.
    pub fn star(&self, k: usize) -> Result<u32> {
        Ok(self.enumerated(k)? as u32)
    }

    /// The automorphism of `π_1(R(G_k))` induced by the action of `g`:
    /// `a_h ↦ a_{gh}` and `a_* ↦ a_*`.
    pub fn alpha(&self, k: usize, g: &Element) -> Result<Injection> {
        let perm = self.action_permutation(k, g)?;
        let images = perm.iter().map(|&t| Word::generator(t)).collect();
        Ok(Injection {
            source_rank: perm.len(),
            target_rank: perm.len(),
            images,
        })
    }

    fn action_permutation(&self, k: usize, g: &Element) -> Result<Vec<u32>> {
        let ell = self.ell(k, g)?;
        let mut map: Vec<u32> = ell.one_line().into_iter().map(|t| t as u32).collect();
        map.push(ell.degree() as u32);
        Ok(map)
    }

    /// The map `π_1(R(G_k)) → π_1(R(G_{k-1}))` sending `a_σ` with
    /// `σ = ℓ(h) c_j` to `a_*^j a_h a_*^-j` and `a_*` to `a_*^n`, where `n`
    /// is the number of cosets.
    pub fn m_map(&self, k: usize) -> Result<Injection> {
        let n = self.coset_count(k)?;
        let star = self.star(k - 1)?;
        let star_word = Word::generator(star);
        let mut images: Vec<Word> = self.levels[k]
            .decomposition
            .iter()
            .map(|&(h, j)| Word::generator(h).conjugate_by(&star_word.pow(j as i64)))
            .collect();
        images.push(star_word.pow(n as i64));
        Injection::new(images.len(), star as usize + 1, images)
    }

    /// `m_map(k)` as a table whose rows are labelled `a_{ℓ(h)c_j}` and
    /// ordered by `(j, h)`, ending with `a_*`.
    pub fn m_map_coset_table(&self, k: usize) -> Result<String> {
        let m = self.m_map(k)?;
        let target = self.rose_alphabet(k - 1)?;
        let transversal = self.transversal(k)?;
        let mut out = String::new();
        for (j, c) in transversal.iter().enumerate() {
            for h in self.elements(k - 1)? {
                let ell_h = self.ell(k - 1, &h)?;
                let sigma = ell_h.compose_unchecked(c);
                let label = if j == 0 {
                    ell_h.to_string()
                } else {
                    format!("{ell_h}{c}")
                };
                let image = &m.images[sigma.lex_rank()];
                out.push_str(&format!("a_{label} -> {}\n", target.format(image)));
            }
        }
        let star = self.star(k)? as usize;
        out.push_str(&format!("a_* -> {}\n", target.format(&m.images[star])));
        Ok(out)
    }

    /// The base injection `π_1(R(G_0)) → F_2`.
    pub fn j0(&self) -> &Injection {
        &self.j0
    }

    fn check_materializable(&self, k: usize) -> Result<()> {
        if k > self.config.max_level {
            return Err(Error::LevelTooLarge {
                level: k,
                max: self.config.max_level,
            });
        }
        Ok(())
    }

    fn embed_data(&self, k: usize) -> Result<&EmbedData> {
        self.check_materializable(k)?;
        if let Some(d) = self.embeds[k].get() {
            return Ok(d);
        }
        let big_j = if k == 0 {
            self.j0.clone()
        } else {
            Injection::compose(&self.embed_data(k - 1)?.big_j, &self.m_map(k)?)?
        };
        let rewriter = GeneratorRewriter::new(2, &big_j.images)?;
        let subgroup = Subgroup::from_core(rewriter.graph().clone());
        let coords = subgroup
            .basis()
            .iter()
            .map(|c| rewriter.express(c))
            .collect::<Result<Vec<_>>>()?;
        let data = EmbedData {
            big_j,
            subgroup,
            rewriter,
            coords,
        };
        Ok(self.embeds[k].get_or_init(|| data))
    }

    /// `J_k = j0 ∘ m_1 ∘ ... ∘ m_k : π_1(R(G_k)) → F_2`.
    pub fn big_j(&self, k: usize) -> Result<&Injection> {
        Ok(&self.embed_data(k)?.big_j)
    }

    /// `H_k`, the image of `J_k`.
    pub fn h_subgroup(&self, k: usize) -> Result<&Subgroup> {
        Ok(&self.embed_data(k)?.subgroup)
    }

    /// The commensuration `J_k ∘ α_k(g) ∘ J_k^-1` with domain `H_k`.
    pub fn embed(&self, k: usize, g: &Element) -> Result<VirtualAut> {
        self.check_materializable(k)?;
        let perm = self.action_permutation(k, g)?;
        let data = self.embed_data(k)?;
        let basis = &data.big_j.images;
        let images: Vec<Word> = perm.iter().map(|&t| basis[t as usize].clone()).collect();
        let canonical_images = data
            .coords
            .iter()
            .map(|c| c.relabel(&perm).substitute_unchecked(basis))
            .collect();
        let mut inverse = vec![0u32; perm.len()];
        for (i, &t) in perm.iter().enumerate() {
            inverse[t as usize] = i as u32;
        }
        Ok(VirtualAut::from_parts(
            data.subgroup.clone(),
            basis.clone(),
            images,
            canonical_images,
            data.subgroup.clone(),
            Some(data.rewriter.relabeled(&inverse)),
        ))
    }

    fn build_level(&self, k: usize) -> Result<LevelData> {
        let parent = &self.levels[k - 1];
        let degree = parent.order;
        let order = factorial(degree);
        let lefts: Vec<Perm> = (0..degree)
            .map(|h| self.ell(k - 1, &self.element(k - 1, h).expect("in range")))
            .collect::<Result<_>>()?;

        let transversal = match self.config.transversal.get(&k) {
            Some(list) => list
                .iter()
                .map(|s| Perm::parse_cycles(s, degree))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| Error::Config(format!("transversal {k}: {e}")))?,
            None => {
                // greedy: keep each element whose coset is new
                let mut seen = vec![false; order];
                let mut reps = Vec::new();
                for i in 0..order {
                    if seen[i] {
                        continue;
                    }
                    let sigma = Perm::from_lex_rank(degree, i);
                    for l in &lefts {
                        seen[l.compose_unchecked(&sigma).lex_rank()] = true;
                    }
                    reps.push(sigma);
                }
                reps
            }
        };

        if transversal.len() * degree != order {
            return Err(Error::Config(format!(
                "transversal {k} has {} elements, expected {}",
                transversal.len(),
                order / degree
            )));
        }
        if !transversal[0].is_identity() {
            return Err(Error::Config(format!(
                "transversal {k} must start with the identity"
            )));
        }
        let mut decomposition = vec![(u32::MAX, u32::MAX); order];
        for (j, c) in transversal.iter().enumerate() {
            for (h, l) in lefts.iter().enumerate() {
                let slot = &mut decomposition[l.compose_unchecked(c).lex_rank()];
                if slot.0 != u32::MAX {
                    return Err(Error::Config(format!(
                        "transversal {k} repeats a coset at {c}"
                    )));
                }
                *slot = (h as u32, j as u32);
            }
        }
        Ok(LevelData {
            order,
            transversal,
            decomposition,
        })
    }
}

impl Default for Tower {
    fn default() -> Self {
        Tower::new(TowerConfig::default()).expect("default configuration is valid")
    }
}

/// `a0 ↦ y, a1 ↦ x y x^-1, a2 ↦ x^2 y x^-2, a* ↦ x^3`.
pub fn default_j0() -> Vec<Word> {
    let (x, y) = (Word::generator(0), Word::generator(1));
    let mut images: Vec<Word> = (0..BASE_ORDER as i64)
        .map(|i| y.conjugate_by(&x.pow(i)))
        .collect();
    images.push(x.pow(BASE_ORDER as i64));
    images
}

pub(crate) fn mul(a: &Element, b: &Element) -> Element {
    match (a, b) {
        (Element::Residue(x), Element::Residue(y)) => Element::Residue((x + y) % BASE_ORDER as u32),
        (Element::Perm(p), Element::Perm(q)) => Element::Perm(p.compose_unchecked(q)),
        _ => unreachable!("elements checked to share a level"),
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tower() -> Tower {
        Tower::new(TowerConfig::figure()).unwrap()
    }

    fn p3(s: &str) -> Perm {
        Perm::parse_cycles(s, 3).unwrap()
    }

    #[test]
    fn sizes() {
        let t = tower();
        assert_eq!(t.order(0), Some(3));
        assert_eq!(t.order(1), Some(6));
        assert_eq!(t.order(2), Some(720));
        assert_eq!(t.order(3), None);
        assert_eq!(t.coset_count(1).unwrap(), 2);
        assert_eq!(t.coset_count(2).unwrap(), 120);
    }

    #[test]
    fn ell_examples() {
        let t = tower();
        assert_eq!(t.ell(0, &Element::Residue(1)).unwrap(), p3("(012)"));
        assert!(t.ell(0, &Element::Residue(0)).unwrap().is_identity());
        let sq = t
            .ell(0, &Element::Residue(1))
            .unwrap()
            .compose(&t.ell(0, &Element::Residue(1)).unwrap());
        assert_eq!(sq.unwrap(), p3("(021)"));
        let l = t.ell(1, &Element::Perm(p3("(01)"))).unwrap();
        assert_eq!(l.cycles().len(), 3);
        assert!(l.cycles().iter().all(|c| c.len() == 2));
        assert!(t.ell(3, &t.identity(3).unwrap()).is_err());
    }

    #[test]
    fn translations() {
        let t = tower();
        assert_eq!(t.is_translation(0, &p3("(012)")), Some(Element::Residue(1)));
        assert_eq!(
            t.is_translation(0, &Perm::identity(3)),
            Some(Element::Residue(0))
        );
        assert_eq!(t.is_translation(0, &p3("(01)")), None);
        assert_eq!(t.is_translation(0, &Perm::identity(4)), None);
    }

    #[test]
    fn default_transversal_is_greedy() {
        let t = Tower::default();
        assert_eq!(t.transversal(1).unwrap(), &[Perm::identity(3), p3("(12)")]);
    }

    #[test]
    fn coset_decompose_examples() {
        let t = tower();
        assert_eq!(
            t.coset_decompose(1, &p3("(012)")).unwrap(),
            (Element::Residue(1), 0)
        );
        assert_eq!(
            t.coset_decompose(1, &Perm::identity(3)).unwrap(),
            (Element::Residue(0), 0)
        );
        assert_eq!(
            t.coset_decompose(1, &p3("(021)(01)")).unwrap(),
            (Element::Residue(2), 1)
        );
        assert!(t.coset_decompose(0, &p3("(01)")).is_err());
    }

    #[test]
    fn bad_transversal_overrides() {
        let mut cfg = TowerConfig::default();
        cfg.transversal.insert(1, vec!["()".into(), "(012)".into()]);
        assert!(matches!(Tower::new(cfg), Err(Error::Config(_))));
        let mut cfg = TowerConfig::default();
        cfg.transversal.insert(1, vec!["(01)".into(), "()".into()]);
        assert!(matches!(Tower::new(cfg), Err(Error::Config(_))));
        let mut cfg = TowerConfig::default();
        cfg.transversal.insert(1, vec!["()".into()]);
        assert!(matches!(Tower::new(cfg), Err(Error::Config(_))));
    }

    #[test]
    fn bad_j0_rejected() {
        let cfg = TowerConfig {
            j0: Some(vec!["x".into(), "y".into(), "x.y".into(), "y.x".into()]),
            ..TowerConfig::default()
        };
        assert!(matches!(Tower::new(cfg), Err(Error::Config(_))));
    }

    #[test]
    fn alpha_examples() {
        let t = tower();
        let a = t.alpha(0, &Element::Residue(1)).unwrap();
        assert_eq!(
            a.images,
            vec![
                Word::generator(1),
                Word::generator(2),
                Word::generator(0),
                Word::generator(3)
            ]
        );
        let id = t.alpha(1, &t.identity(1).unwrap()).unwrap();
        assert!(id
            .images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i as u32)));
    }

    #[test]
    fn m_map_examples() {
        let t = tower();
        let m = t.m_map(1).unwrap();
        let star = Word::generator(3);
        assert_eq!(m.images[p3("(012)").lex_rank()], Word::generator(1));
        assert_eq!(
            m.images[p3("(021)(01)").lex_rank()],
            Word::generator(2).conjugate_by(&star)
        );
        assert_eq!(m.images[6], star.pow(2));
    }

    #[test]
    fn j0_examples() {
        let t = tower();
        let h0 = t.j0().image_subgroup();
        assert_eq!(h0.index().finite(), Some(3));
        assert_eq!(h0.rank(), 4);
        let w = Word::from_pairs(&[(0, 1), (3, 1)]);
        let x3y = Alphabet::free2().parse("y.x.x.x").unwrap();
        assert_eq!(t.j0().apply(&w).unwrap(), x3y);
    }

    #[test]
    fn big_j_level_one() {
        let t = tower();
        let j1 = t.big_j(1).unwrap();
        let a = Alphabet::free2();
        assert_eq!(
            j1.images[p3("(012)").lex_rank()],
            a.parse("x.y.x^-1").unwrap()
        );
        let h1 = t.h_subgroup(1).unwrap();
        assert_eq!(h1.index().finite(), Some(6));
        assert_eq!(h1.rank(), 7);
    }

    #[test]
    fn embed_level_zero() {
        let t = tower();
        let e = t.embed(0, &Element::Residue(1)).unwrap();
        let a = Alphabet::free2();
        let fmt: Vec<String> = e.images().iter().map(|w| a.format(w)).collect();
        assert_eq!(fmt, ["x.y.x^-1", "x.x.y.x^-1.x^-1", "y", "x.x.x"]);
        let y = a.parse("y").unwrap();
        assert_eq!(e.apply(&y).unwrap(), a.parse("x.y.x^-1").unwrap());
        assert!(t.embed(0, &Element::Residue(0)).unwrap().is_identity());
        assert!(!e.is_identity());
        let cfg = TowerConfig {
            max_level: 1,
            ..TowerConfig::default()
        };
        let small = Tower::new(cfg).unwrap();
        assert!(matches!(
            small.embed(2, &small.identity(2).unwrap()),
            Err(Error::LevelTooLarge { level: 2, max: 1 })
        ));
    }

    #[test]
    fn parse_elements() {
        let t = tower();
        assert_eq!(t.parse_element(0, "2").unwrap(), Element::Residue(2));
        assert!(t.parse_element(0, "3").is_err());
        assert_eq!(
            t.parse_element(1, "(012)").unwrap(),
            Element::Perm(p3("(012)"))
        );
        assert!(t.parse_element(4, "()").is_err());
        let big = t.parse_element(3, "(0,719)").unwrap();
        assert_eq!(big.as_perm().unwrap().degree(), 720);
    }
}
