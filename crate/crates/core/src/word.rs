//! Freely reduced words over a finite ranked alphabet.
//!
//! Words carry no alphabet of their own. Range checks happen where a word
//! meets an alphabet: [`Word::reduce`], [`Alphabet::parse`],
//! [`Alphabet::check`] and subgroup construction.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: u32) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub const fn neg(gen: u32) -> Self {
        Letter { gen, inverse: true }
    }

    /// Builds a letter from a generator index and a sign of `+1` or `-1`.
    pub fn with_sign(gen: u32, sign: i8) -> Self {
        debug_assert!(sign == 1 || sign == -1);
        Letter {
            gen,
            inverse: sign < 0,
        }
    }

    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn invert(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    #[inline]
    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word. Every stored `Word` is reduced, so equality of
/// group elements is equality of letter sequences.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn generator(gen: u32) -> Self {
        Word {
            letters: vec![Letter::pos(gen)],
        }
    }

    /// Freely reduces a raw letter sequence, rejecting generator indices
    /// outside `0..rank`.
    pub fn reduce<I>(raw: I, rank: usize) -> Result<Word>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out = Word::empty();
        for l in raw {
            if l.gen as usize >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: l.gen as usize,
                    rank,
                });
            }
            out.push(l);
        }
        Ok(out)
    }

    /// Freely reduces a raw letter sequence without range checks.
    pub fn from_letters<I>(raw: I) -> Word
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut out = Word::empty();
        out.extend(raw);
        out
    }

    /// Reduces a sequence of `(generator, sign)` pairs.
    pub fn from_pairs(pairs: &[(u32, i8)]) -> Word {
        Word::from_letters(pairs.iter().map(|&(g, s)| Letter::with_sign(g, s)))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_generator(&self) -> Option<u32> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Appends one letter, cancelling against the current last letter.
    #[inline]
    pub fn push(&mut self, l: Letter) {
        match self.letters.last() {
            Some(&last) if last.cancels(l) => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn extend<I: IntoIterator<Item = Letter>>(&mut self, iter: I) {
        for l in iter {
            self.push(l);
        }
    }

    /// Right-multiplies in place by `other`.
    pub fn append(&mut self, other: &Word) {
        let mut skip = 0;
        while skip < other.letters.len() {
            match self.letters.last() {
                Some(&last) if last.cancels(other.letters[skip]) => {
                    self.letters.pop();
                    skip += 1;
                }
                _ => break,
            }
        }
        self.letters.extend_from_slice(&other.letters[skip..]);
    }

    /// Right-multiplies in place by the inverse of `other`.
    pub fn append_inverse(&mut self, other: &Word) {
        self.extend(other.letters.iter().rev().map(|l| l.invert()));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut out = self.clone();
        out.append(other);
        out
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.invert()).collect(),
        }
    }

    /// `n`-th power, negative exponents allowed.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::empty();
        for _ in 0..n.unsigned_abs() {
            out.append(&base);
        }
        out
    }

    /// `self * other * self^-1`.
    pub fn conjugate_by(&self, conjugator: &Word) -> Word {
        let mut out = conjugator.clone();
        out.append(self);
        out.append_inverse(conjugator);
        out
    }

    /// Image under the homomorphism sending generator `i` to `images[i]`.
    pub fn substitute(&self, images: &[Word]) -> Result<Word> {
        if let Some(max) = self.max_generator() {
            if max as usize >= images.len() {
                return Err(Error::ArityMismatch {
                    expected: max as usize + 1,
                    found: images.len(),
                });
            }
        }
        Ok(self.substitute_unchecked(images))
    }

    pub(crate) fn substitute_unchecked(&self, images: &[Word]) -> Word {
        let mut out = Word::empty();
        for l in &self.letters {
            let img = &images[l.gen as usize];
            if l.inverse {
                out.append_inverse(img);
            } else {
                out.append(img);
            }
        }
        out
    }

    /// Renames generators through `map` (generator `i` becomes `map[i]`).
    pub fn relabel(&self, map: &[u32]) -> Word {
        Word::from_letters(self.letters.iter().map(|l| Letter {
            gen: map[l.gen as usize],
            inverse: l.inverse,
        }))
    }

    pub fn exponent_sum(&self, gen: u32) -> i64 {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .map(|l| l.sign() as i64)
            .sum()
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word::from_letters(iter)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Alphabet::new(usize::MAX).format(self))
    }
}

/// A ranked alphabet with optional display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    rank: usize,
    names: Option<Vec<String>>,
    lookup: HashMap<String, u32>,
}

impl Alphabet {
    /// Plain alphabet; generators print as `g<i>`.
    pub fn new(rank: usize) -> Self {
        Alphabet {
            rank,
            names: None,
            lookup: HashMap::new(),
        }
    }

    /// The rank-2 alphabet with generators `x` and `y`.
    pub fn free2() -> Self {
        Alphabet::with_names(vec!["x".into(), "y".into()]).expect("valid names")
    }

    pub fn with_names(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Malformed("alphabet rank must be at least 1".into()));
        }
        let mut lookup = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if n.is_empty()
                || n == "1"
                || n.contains('.')
                || n.contains('^')
                || n.contains(char::is_whitespace)
            {
                return Err(Error::Malformed(format!("invalid generator name {n:?}")));
            }
            if let Some(j) = plain_index(n) {
                if j != i {
                    return Err(Error::Malformed(format!(
                        "name {n:?} shadows generator g{j}"
                    )));
                }
            }
            if lookup.insert(n.clone(), i as u32).is_some() {
                return Err(Error::Malformed(format!("duplicate generator name {n:?}")));
            }
        }
        Ok(Alphabet {
            rank: names.len(),
            names: Some(names),
            lookup,
        })
    }

    /// Default alphabet for an ambient rank: `x, y` for rank 2, plain otherwise.
    pub fn for_rank(rank: usize) -> Self {
        if rank == 2 {
            Alphabet::free2()
        } else {
            Alphabet::new(rank)
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self, gen: u32) -> String {
        match &self.names {
            Some(names) => names[gen as usize].clone(),
            None => format!("g{gen}"),
        }
    }

    pub fn check(&self, w: &Word) -> Result<()> {
        match w.max_generator() {
            Some(g) if g as usize >= self.rank => Err(Error::GeneratorOutOfRange {
                index: g as usize,
                rank: self.rank,
            }),
            _ => Ok(()),
        }
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            out.push_str(&self.name(l.gen));
            if l.inverse {
                out.push_str("^-1");
            }
        }
        out
    }

    /// Parses the dotted text form (`x.y^-1.x`, `g0.g1`, or `1` for the
    /// empty word) and freely reduces the result.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let s = s.trim();
        if s == "1" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word text (use `1`)".into()));
        }
        let mut out = Word::empty();
        for tok in s.split('.') {
            let tok = tok.trim();
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(n) => (n.trim_end(), true),
                None => (tok, false),
            };
            let gen = self
                .lookup
                .get(name)
                .copied()
                .or_else(|| plain_index(name).map(|i| i as u32))
                .ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
            if gen as usize >= self.rank {
                return Err(Error::GeneratorOutOfRange {
                    index: gen as usize,
                    rank: self.rank,
                });
            }
            out.push(Letter { gen, inverse });
        }
        Ok(out)
    }
}

fn plain_index(name: &str) -> Option<usize> {
    let digits = name.strip_prefix('g')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    if digits.len() > 1 && digits.starts_with('0') {
        return None;
    }
    digits.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: u32 = 0;
    const Y: u32 = 1;

    fn w(s: &str) -> Word {
        Alphabet::free2().parse(s).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(Word::reduce(vec![], 2).unwrap(), Word::empty());
        assert_eq!(
            Word::reduce(vec![Letter::pos(X), Letter::neg(X)], 2).unwrap(),
            Word::empty()
        );
        let raw = vec![
            Letter::pos(X),
            Letter::neg(Y),
            Letter::pos(Y),
            Letter::pos(X),
        ];
        assert_eq!(
            Word::reduce(raw, 2).unwrap().letters(),
            &[Letter::pos(X), Letter::pos(X)]
        );
        assert_eq!(
            Word::reduce(vec![Letter::pos(2)], 2),
            Err(Error::GeneratorOutOfRange { index: 2, rank: 2 })
        );
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("x").concat(&w("x^-1")), Word::empty());
        assert_eq!(w("x.y").concat(&w("y^-1.x")), w("x.x"));
        assert_eq!(Word::empty().concat(&w("x.y")), w("x.y"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(Word::empty().inverse(), Word::empty());
        assert_eq!(w("x.y.x^-1").inverse(), w("x.y^-1.x^-1"));
        assert_eq!(w("x.x.x").inverse(), w("x^-1.x^-1.x^-1"));
    }

    #[test]
    fn substitute_examples() {
        let images = [w("x.y"), w("y")];
        assert_eq!(Word::empty().substitute(&images).unwrap(), Word::empty());
        assert_eq!(
            Word::from_pairs(&[(0, 1), (0, -1)])
                .substitute(&images)
                .unwrap(),
            Word::empty()
        );
        assert_eq!(w("x.y^-1").substitute(&images).unwrap(), w("x"));
        assert_eq!(
            w("x.y").substitute(&images[..1]),
            Err(Error::ArityMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn text_form() {
        let a = Alphabet::free2();
        assert_eq!(a.format(&Word::empty()), "1");
        assert_eq!(a.format(&w("x.y^-1")), "x.y^-1");
        assert_eq!(a.parse("g0 . g1^-1").unwrap(), w("x.y^-1"));
        assert_eq!(
            Word::from_pairs(&[(3, 1), (10, -1)]).to_string(),
            "g3.g10^-1"
        );
        assert!(a.parse("").is_err());
        assert!(a.parse("z").is_err());
        assert!(a.parse("x..y").is_err());
        assert!(matches!(
            a.parse("g2"),
            Err(Error::GeneratorOutOfRange { .. })
        ));
    }

    #[test]
    fn alphabet_names_validated() {
        assert!(Alphabet::with_names(vec!["a".into(), "a".into()]).is_err());
        assert!(Alphabet::with_names(vec!["g1".into(), "b".into()]).is_err());
        assert!(Alphabet::with_names(vec!["a*".into(), "a(01)".into()]).is_ok());
    }

    #[test]
    fn pow_and_conjugate() {
        assert_eq!(w("x").pow(3), w("x.x.x"));
        assert_eq!(w("x.y").pow(-2), w("y^-1.x^-1.y^-1.x^-1"));
        assert_eq!(w("y").conjugate_by(&w("x")), w("x.y.x^-1"));
        assert_eq!(w("x.y.x^-1.y").exponent_sum(X), 0);
    }
}
