//! Virtual automorphisms of a free group of finite rank: isomorphisms
//! between finite-index subgroups, compared up to agreement on a common
//! finite-index subgroup.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::subgroup::{GeneratorRewriter, Index, Subgroup};
use crate::word::{Alphabet, Word};

/// A representative of an element of the abstract commensurator.
///
/// The map is given on a free basis of the domain (`domain_basis`, which
/// need not be the canonical one) and is also cached on the canonical
/// basis of the domain, which is what evaluation and exact equality use.
#[derive(Clone)]
pub struct VirtualAut {
    domain: Subgroup,
    domain_basis: Vec<Word>,
    images: Vec<Word>,
    canonical_images: Vec<Word>,
    image: Subgroup,
    image_rewriter: OnceLock<GeneratorRewriter>,
}

impl fmt::Debug for VirtualAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = Alphabet::for_rank(self.ambient_rank());
        f.debug_struct("VirtualAut")
            .field("domain_index", &self.domain.index())
            .field("image_index", &self.image.index())
            .field(
                "domain_basis",
                &self
                    .domain_basis
                    .iter()
                    .map(|w| a.format(w))
                    .collect::<Vec<_>>(),
            )
            .field(
                "images",
                &self.images.iter().map(|w| a.format(w)).collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// Exact equality: same domain and same values on it. Use
/// [`VirtualAut::comm_equal`] for equality in the commensurator.
impl PartialEq for VirtualAut {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.canonical_images == other.canonical_images
    }
}

impl VirtualAut {
    /// Validates a map given on the canonical basis of `domain`.
    pub fn make(domain: Subgroup, images: Vec<Word>) -> Result<VirtualAut> {
        if !domain.is_complete() {
            return Err(Error::InfiniteIndexDomain);
        }
        if images.len() != domain.rank() {
            return Err(Error::ArityMismatch {
                expected: domain.rank(),
                found: images.len(),
            });
        }
        let image = validated_image(domain.ambient_rank(), &images)?;
        Ok(VirtualAut {
            domain_basis: domain.basis().to_vec(),
            canonical_images: images.clone(),
            images,
            domain,
            image,
            image_rewriter: OnceLock::new(),
        })
    }

    /// Validates a map given on an arbitrary free basis of a finite-index
    /// subgroup.
    pub fn from_basis(
        ambient_rank: usize,
        domain_basis: Vec<Word>,
        images: Vec<Word>,
    ) -> Result<VirtualAut> {
        if images.len() != domain_basis.len() {
            return Err(Error::ArityMismatch {
                expected: domain_basis.len(),
                found: images.len(),
            });
        }
        let domain = Subgroup::from_generators(ambient_rank, &domain_basis)?;
        if domain.rank() != domain_basis.len() {
            return Err(Error::NotABasis {
                rank: domain.rank(),
                len: domain_basis.len(),
            });
        }
        if !domain.is_complete() {
            return Err(Error::InfiniteIndexDomain);
        }
        for w in &images {
            Alphabet::new(ambient_rank).check(w)?;
        }
        let image = validated_image(ambient_rank, &images)?;
        let rewriter = GeneratorRewriter::new(ambient_rank, &domain_basis)?;
        let canonical_images = domain
            .basis()
            .iter()
            .map(|c| Ok(rewriter.express(c)?.substitute_unchecked(&images)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VirtualAut {
            domain,
            domain_basis,
            images,
            canonical_images,
            image,
            image_rewriter: OnceLock::new(),
        })
    }

    /// Assembles a virtual automorphism whose invariants are known to hold.
    pub(crate) fn from_parts(
        domain: Subgroup,
        domain_basis: Vec<Word>,
        images: Vec<Word>,
        canonical_images: Vec<Word>,
        image: Subgroup,
        image_rewriter: Option<GeneratorRewriter>,
    ) -> VirtualAut {
        debug_assert_eq!(domain_basis.len(), images.len());
        debug_assert_eq!(domain.rank(), canonical_images.len());
        let cell = OnceLock::new();
        if let Some(r) = image_rewriter {
            let _ = cell.set(r);
        }
        VirtualAut {
            domain,
            domain_basis,
            images,
            canonical_images,
            image,
            image_rewriter: cell,
        }
    }

    pub fn identity(ambient_rank: usize) -> VirtualAut {
        let whole = Subgroup::whole(ambient_rank);
        let basis = whole.basis().to_vec();
        VirtualAut::make(whole, basis).expect("identity is valid")
    }

    /// An automorphism of the whole free group, given by generator images.
    pub fn automorphism(ambient_rank: usize, images: Vec<Word>) -> Result<VirtualAut> {
        let basis: Vec<Word> = (0..ambient_rank as u32).map(Word::generator).collect();
        VirtualAut::from_basis(ambient_rank, basis, images)
    }

    pub fn ambient_rank(&self) -> usize {
        self.domain.ambient_rank()
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn image_subgroup(&self) -> &Subgroup {
        &self.image
    }

    /// The basis the map was specified on.
    pub fn domain_basis(&self) -> &[Word] {
        &self.domain_basis
    }

    /// Images of [`VirtualAut::domain_basis`].
    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Images of the canonical basis of the domain.
    pub fn canonical_images(&self) -> &[Word] {
        &self.canonical_images
    }

    pub fn domain_index(&self) -> Index {
        self.domain.index()
    }

    pub fn image_index(&self) -> Index {
        self.image.index()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        let coords = self
            .domain
            .express_in_basis(w)
            .map_err(|_| Error::NotInDomain)?;
        Ok(coords.substitute_unchecked(&self.canonical_images))
    }

    fn image_rewriter(&self) -> &GeneratorRewriter {
        self.image_rewriter.get_or_init(|| {
            GeneratorRewriter::new(self.ambient_rank(), &self.images)
                .expect("images of a virtual automorphism form a basis")
        })
    }

    /// Preimage of a word in the image subgroup.
    pub fn apply_inverse(&self, w: &Word) -> Result<Word> {
        let coords = self
            .image_rewriter()
            .express(w)
            .map_err(|_| Error::NotInDomain)?;
        Ok(coords.substitute_unchecked(&self.domain_basis))
    }

    pub fn invert(&self) -> VirtualAut {
        let basis = self.image.basis().to_vec();
        let images: Vec<Word> = basis
            .iter()
            .map(|c| {
                self.apply_inverse(c)
                    .expect("basis of the image lies in the image")
            })
            .collect();
        VirtualAut::from_parts(
            self.image.clone(),
            basis,
            images.clone(),
            images,
            self.domain.clone(),
            None,
        )
    }

    /// `outer ∘ inner`, defined on the preimage under `inner` of
    /// `inner(domain) ∩ outer.domain`.
    pub fn compose(outer: &VirtualAut, inner: &VirtualAut) -> Result<VirtualAut> {
        if outer.ambient_rank() != inner.ambient_rank() {
            return Err(Error::RankMismatch(
                outer.ambient_rank(),
                inner.ambient_rank(),
            ));
        }
        let common = inner.image.intersect(&outer.domain)?;
        let domain = if common == inner.image {
            inner.domain.clone()
        } else {
            let preimages = common
                .basis()
                .iter()
                .map(|d| inner.apply_inverse(d))
                .collect::<Result<Vec<_>>>()?;
            Subgroup::from_generators(inner.ambient_rank(), &preimages)?
        };
        let images = domain
            .basis()
            .iter()
            .map(|c| outer.apply(&inner.apply(c)?))
            .collect::<Result<Vec<_>>>()?;
        VirtualAut::make(domain, images)
    }

    /// Convenience for `compose(self, inner)`.
    pub fn after(&self, inner: &VirtualAut) -> Result<VirtualAut> {
        VirtualAut::compose(self, inner)
    }

    /// Restriction to a finite-index subgroup of the domain.
    pub fn restrict(&self, sub: &Subgroup) -> Result<VirtualAut> {
        if !sub.is_complete() {
            return Err(Error::InfiniteIndexDomain);
        }
        if !sub.is_subgroup_of(&self.domain) {
            return Err(Error::NotASubgroupOfDomain);
        }
        let images = sub
            .basis()
            .iter()
            .map(|c| self.apply(c))
            .collect::<Result<Vec<_>>>()?;
        VirtualAut::make(sub.clone(), images)
    }

    /// Equality in the commensurator: agreement on the intersection of the
    /// two domains. Representatives over different ambient ranks are never
    /// equal.
    pub fn comm_equal(&self, other: &VirtualAut) -> bool {
        if self.ambient_rank() != other.ambient_rank() {
            return false;
        }
        let common = if self.domain == other.domain {
            self.domain.clone()
        } else {
            self.domain.intersect(&other.domain).expect("ranks agree")
        };
        common.basis().iter().all(|c| {
            let a = self.apply(c).expect("common subgroup lies in both domains");
            let b = other
                .apply(c)
                .expect("common subgroup lies in both domains");
            a == b
        })
    }

    /// Fixes every element of its domain.
    pub fn is_identity(&self) -> bool {
        self.canonical_images.as_slice() == self.domain.basis()
    }

    pub fn to_record(&self) -> VirtualAutRecord {
        let a = Alphabet::for_rank(self.ambient_rank());
        VirtualAutRecord {
            ambient_rank: self.ambient_rank(),
            domain_basis: self.domain_basis.iter().map(|w| a.format(w)).collect(),
            images: self.images.iter().map(|w| a.format(w)).collect(),
        }
    }

    pub fn from_record(record: &VirtualAutRecord) -> Result<VirtualAut> {
        if record.ambient_rank == 0 {
            return Err(Error::Malformed("ambient rank must be positive".into()));
        }
        let a = Alphabet::for_rank(record.ambient_rank);
        let parse = |list: &[String]| list.iter().map(|s| a.parse(s)).collect::<Result<Vec<_>>>();
        VirtualAut::from_basis(
            record.ambient_rank,
            parse(&record.domain_basis)?,
            parse(&record.images)?,
        )
    }

    /// Pretty JSON with a trailing newline; field order is fixed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_record()).expect("record serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<VirtualAut> {
        let record: VirtualAutRecord =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        VirtualAut::from_record(&record)
    }
}

/// On-disk form of a [`VirtualAut`]: words in the dotted text grammar.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VirtualAutRecord {
    pub ambient_rank: usize,
    pub domain_basis: Vec<String>,
    pub images: Vec<String>,
}

fn validated_image(ambient_rank: usize, images: &[Word]) -> Result<Subgroup> {
    let image = Subgroup::from_generators(ambient_rank, images)?;
    if image.rank() < images.len() {
        return Err(Error::NotInjective {
            domain_rank: images.len(),
            image_rank: image.rank(),
        });
    }
    if !image.is_complete() {
        return Err(Error::InfiniteIndexImage);
    }
    Ok(image)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Alphabet::free2().parse(s).unwrap()
    }

    fn swap() -> VirtualAut {
        VirtualAut::automorphism(2, vec![w("y"), w("x")]).unwrap()
    }

    fn h0() -> Subgroup {
        Subgroup::from_generators(
            2,
            &[w("y"), w("x.y.x^-1"), w("x.x.y.x^-1.x^-1"), w("x.x.x")],
        )
        .unwrap()
    }

    #[test]
    fn make_examples() {
        let id = VirtualAut::make(Subgroup::whole(2), vec![w("x"), w("y")]).unwrap();
        assert!(id.is_identity());
        assert_eq!(id, VirtualAut::identity(2));
        let s = VirtualAut::make(Subgroup::whole(2), vec![w("y"), w("x")]).unwrap();
        assert!(!s.is_identity());
        assert_eq!(
            VirtualAut::make(Subgroup::whole(2), vec![w("x"), w("x")]).unwrap_err(),
            Error::NotInjective {
                domain_rank: 2,
                image_rank: 1
            }
        );
        assert_eq!(
            VirtualAut::make(Subgroup::whole(2), vec![w("x.x"), w("y")]).unwrap_err(),
            Error::InfiniteIndexImage
        );
        assert!(matches!(
            VirtualAut::make(Subgroup::whole(2), vec![w("x")]),
            Err(Error::ArityMismatch { .. })
        ));
        let hx = Subgroup::from_generators(2, &[w("x")]).unwrap();
        assert_eq!(
            VirtualAut::make(hx, vec![w("x")]).unwrap_err(),
            Error::InfiniteIndexDomain
        );
    }

    #[test]
    fn apply_examples() {
        assert_eq!(VirtualAut::identity(2).apply(&w("x.y")).unwrap(), w("x.y"));
        assert_eq!(swap().apply(&w("x.y.x^-1")).unwrap(), w("y.x.y^-1"));
        let r = VirtualAut::identity(2).restrict(&h0()).unwrap();
        assert_eq!(r.apply(&w("x")), Err(Error::NotInDomain));
    }

    #[test]
    fn invert_examples() {
        assert!(VirtualAut::identity(2).invert().is_identity());
        assert!(swap().invert().comm_equal(&swap()));
        let nielsen = VirtualAut::automorphism(2, vec![w("x.y"), w("y")]).unwrap();
        let inv = nielsen.invert();
        assert_eq!(inv.apply(&w("x")).unwrap(), w("x.y^-1"));
        assert!(VirtualAut::compose(&inv, &nielsen).unwrap().is_identity());
    }

    #[test]
    fn compose_examples() {
        let s = swap();
        assert!(VirtualAut::compose(&VirtualAut::identity(2), &s)
            .unwrap()
            .comm_equal(&s));
        assert!(VirtualAut::compose(&s, &s.invert())
            .unwrap()
            .comm_equal(&VirtualAut::identity(2)));
        // domains that only partially overlap
        let a = VirtualAut::identity(2).restrict(&h0()).unwrap();
        let b = s.restrict(&h0()).unwrap();
        let c = VirtualAut::compose(&a, &b).unwrap();
        assert!(c.comm_equal(&s));
        assert_eq!(c.domain_index(), Index::Finite(9));
    }

    #[test]
    fn restrict_examples() {
        let id = VirtualAut::identity(2);
        let r = id.restrict(&h0()).unwrap();
        assert!(r.comm_equal(&id));
        assert!(r.is_identity());
        assert_eq!(id.restrict(id.domain()).unwrap(), id);
        let hx = Subgroup::from_generators(2, &[w("x")]).unwrap();
        assert_eq!(id.restrict(&hx).unwrap_err(), Error::InfiniteIndexDomain);
        let k = Subgroup::stabilizer(&[vec![1, 0], vec![0, 1]], 0).unwrap();
        assert_eq!(r.restrict(&k).unwrap_err(), Error::NotASubgroupOfDomain);
    }

    #[test]
    fn comm_equal_examples() {
        let id = VirtualAut::identity(2);
        assert!(id.comm_equal(&id.restrict(&h0()).unwrap()));
        assert!(!swap().comm_equal(&id));
        assert!(!id.comm_equal(&VirtualAut::identity(3)));
    }

    #[test]
    fn json_round_trip() {
        let va = VirtualAut::from_basis(
            2,
            h0().basis().to_vec(),
            vec![w("y"), w("x.x.x"), w("x^-1.y.x"), w("x.y.x^-1")],
        )
        .unwrap();
        let text = va.to_json();
        let back = VirtualAut::from_json(&text).unwrap();
        assert_eq!(back, va);
        assert_eq!(back.to_json(), text);
        assert!(VirtualAut::from_json("{\"ambient_rank\":2}").is_err());
        let bad = text.replace("x^-1.y.x", "y");
        assert!(VirtualAut::from_json(&bad).is_err());
    }

    #[test]
    fn from_basis_rejects_non_basis() {
        assert!(matches!(
            VirtualAut::from_basis(
                2,
                vec![w("x"), w("x.x"), w("y")],
                vec![w("x"), w("x"), w("y")]
            ),
            Err(Error::NotABasis { .. })
        ));
    }
}
