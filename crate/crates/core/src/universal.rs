//! Arithmetic in the colimit `U` of the tower along the left-regular
//! embeddings, plus the two desk-scale Hall properties: finite groups embed,
//! and isomorphic finite subgroups become conjugate one level up.

use std::collections::HashMap;
use std::fmt;

use crate::config::MATERIALIZABLE_LEVEL;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::tower::{mul, Element, Tower, ELEMENT_LEVEL};

/// An element of `U`, stored at the lowest level that contains it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UElement {
    pub level: usize,
    pub element: Element,
}

impl UElement {
    pub fn new(level: usize, element: Element) -> UElement {
        UElement { level, element }
    }
}

impl fmt::Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.element)
    }
}

/// Largest order accepted by [`Tower::embed_finite_group`].
pub const MAX_EMBED_ORDER: usize = 6;

/// Level into which finite groups are embedded: permutations of `U(G_1)`.
const EMBED_LEVEL: usize = 2;

impl Tower {
    /// Pushes `e` down while it is a left translation.
    pub fn u_normalize(&self, e: &UElement) -> Result<UElement> {
        self.check_element(e.level, &e.element)?;
        let mut cur = e.clone();
        while cur.level > 0 {
            let sigma = cur
                .element
                .as_perm()
                .expect("levels above 0 hold permutations");
            match self.is_translation(cur.level - 1, sigma) {
                Some(h) => cur = UElement::new(cur.level - 1, h),
                None => break,
            }
        }
        Ok(cur)
    }

    /// `e` as an element of a higher level, via repeated `ℓ`.
    pub fn u_lift(&self, e: &UElement, level: usize) -> Result<Element> {
        self.check_element(e.level, &e.element)?;
        if level > ELEMENT_LEVEL {
            return Err(Error::LevelTooLarge {
                level,
                max: ELEMENT_LEVEL,
            });
        }
        if level < e.level {
            return Err(Error::InvalidElement(format!(
                "cannot lift {e} down to level {level}"
            )));
        }
        let mut g = e.element.clone();
        for k in e.level..level {
            g = Element::Perm(self.ell(k, &g)?);
        }
        Ok(g)
    }

    pub fn u_multiply(&self, a: &UElement, b: &UElement) -> Result<UElement> {
        let level = a.level.max(b.level);
        let g = mul(&self.u_lift(a, level)?, &self.u_lift(b, level)?);
        self.u_normalize(&UElement::new(level, g))
    }

    pub fn u_inverse(&self, a: &UElement) -> Result<UElement> {
        let g = self.inverse(a.level, &a.element)?;
        self.u_normalize(&UElement::new(a.level, g))
    }

    /// Embeds the group with multiplication table `table` (`table[a][b]` is
    /// the index of `a·b`) by its left-regular action on the first `|H|`
    /// points of `U(G_1)`. Returns one normalized element per table row.
    pub fn embed_finite_group(&self, table: &[Vec<usize>]) -> Result<Vec<UElement>> {
        let n = table.len();
        if n > MAX_EMBED_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        check_group_table(table)?;
        let degree = self.order(EMBED_LEVEL - 1).expect("level 1 is enumerated");
        table
            .iter()
            .map(|row| {
                let mut map: Vec<usize> = (0..degree).collect();
                map[..n].copy_from_slice(row);
                let e = UElement::new(EMBED_LEVEL, Element::Perm(Perm::new(map)?));
                self.u_normalize(&e)
            })
            .collect()
    }

    /// Given generators `a_gens` of `A ≤ G_k` and `b_gens` of `B ≤ G_k`
    /// such that `a_gens[i] ↦ b_gens[i]` extends to an isomorphism `ι`,
    /// returns `s ∈ G_{k+1}` with `s ℓ(a) s⁻¹ = ℓ(ι(a))` for all `a ∈ A`.
    pub fn hall_conjugator(
        &self,
        k: usize,
        a_gens: &[Element],
        b_gens: &[Element],
    ) -> Result<Perm> {
        let points = self.order(k).ok_or(Error::LevelTooLarge {
            level: k,
            max: MATERIALIZABLE_LEVEL,
        })?;
        if a_gens.len() != b_gens.len() {
            return Err(Error::NotSubgroups(format!(
                "{} generators for A but {} for B",
                a_gens.len(),
                b_gens.len()
            )));
        }
        for g in a_gens.iter().chain(b_gens) {
            self.check_element(k, g)
                .map_err(|e| Error::NotSubgroups(e.to_string()))?;
        }
        let index = |g: &Element| self.index_of(k, g).expect("checked");

        // close A under right multiplication by generators, carrying ι along
        let identity = self.identity(k)?;
        let mut iota: HashMap<usize, Element> = HashMap::new();
        let mut a_elems = vec![identity.clone()];
        iota.insert(index(&identity), identity);
        let mut i = 0;
        while i < a_elems.len() {
            let a = a_elems[i].clone();
            let ia = iota[&index(&a)].clone();
            for (g, h) in a_gens.iter().zip(b_gens) {
                let next = mul(&a, g);
                let image = mul(&ia, h);
                match iota.get(&index(&next)) {
                    Some(prev) if *prev != image => {
                        return Err(Error::NotIsomorphic(format!(
                            "generator correspondence sends {next} to both {prev} and {image}"
                        )))
                    }
                    Some(_) => {}
                    None => {
                        iota.insert(index(&next), image);
                        a_elems.push(next);
                    }
                }
            }
            i += 1;
        }
        let mut b_indices: Vec<usize> = iota.values().map(index).collect();
        b_indices.sort_unstable();
        b_indices.dedup();
        if b_indices.len() != a_elems.len() {
            return Err(Error::NotIsomorphic(
                "generator correspondence is not injective".into(),
            ));
        }

        // both ℓ(A) and ℓ(B) act freely; match orbit representatives in order
        let orbit_reps = |elems: &[Element]| -> Vec<usize> {
            let mut seen = vec![false; points];
            let mut reps = Vec::new();
            for x in 0..points {
                if seen[x] {
                    continue;
                }
                reps.push(x);
                let xe = self.element(k, x).expect("in range");
                for a in elems {
                    seen[index(&mul(a, &xe))] = true;
                }
            }
            reps
        };
        let b_elems: Vec<Element> = a_elems.iter().map(|a| iota[&index(a)].clone()).collect();
        let x_reps = orbit_reps(&a_elems);
        let y_reps = orbit_reps(&b_elems);
        debug_assert_eq!(x_reps.len(), y_reps.len());

        let mut map = vec![usize::MAX; points];
        for (&xr, &yr) in x_reps.iter().zip(&y_reps) {
            let x = self.element(k, xr)?;
            let y = self.element(k, yr)?;
            for (a, b) in a_elems.iter().zip(&b_elems) {
                map[index(&mul(a, &x))] = index(&mul(b, &y));
            }
        }
        let s = Perm::new(map)?;

        let s_inv = s.inverse();
        for (g, h) in a_gens.iter().zip(b_gens) {
            let lhs = s
                .compose_unchecked(&self.ell(k, g)?)
                .compose_unchecked(&s_inv);
            if lhs != self.ell(k, h)? {
                return Err(Error::NotIsomorphic(format!(
                    "conjugation fails on generator {g}"
                )));
            }
        }
        Ok(s)
    }
}

/// Checks that `table` is the multiplication table of a group on `0..n`.
pub fn check_group_table(table: &[Vec<usize>]) -> Result<()> {
    let n = table.len();
    if n == 0 {
        return Err(Error::InvalidTable("empty table".into()));
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::InvalidTable(format!(
                "row {a} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&c| c >= n) {
            return Err(Error::InvalidTable(format!(
                "entry {bad} out of range in row {a}"
            )));
        }
    }
    let e = (0..n)
        .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
        .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
    for (a, row) in table.iter().enumerate() {
        if !(0..n).any(|b| row[b] == e && table[b][a] == e) {
            return Err(Error::InvalidTable(format!("element {a} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidTable(format!(
                        "not associative at ({a}, {b}, {c})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Multiplication tables of every group of order at most 6, up to
/// isomorphism: trivial, Z2, Z3, Z4, Z2×Z2, Z5, Z6, S3.
pub fn small_group_tables() -> Vec<(&'static str, Vec<Vec<usize>>)> {
    let cyclic = |n: usize| {
        (0..n)
            .map(|a| (0..n).map(|b| (a + b) % n).collect())
            .collect()
    };
    let klein = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
    let s3: Vec<Perm> = (0..6).map(|r| Perm::from_lex_rank(3, r)).collect();
    let s3_table = s3
        .iter()
        .map(|p| {
            s3.iter()
                .map(|q| p.compose_unchecked(q).lex_rank())
                .collect()
        })
        .collect();
    vec![
        ("trivial", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", klein),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", s3_table),
    ]
}
