use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `0..degree` in one-line notation.
///
/// Composition follows function notation: `a.compose(&b)` is `a ∘ b`,
/// i.e. apply `b` first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    map: Vec<u32>,
}

impl Perm {
    pub fn new(map: Vec<usize>) -> Result<Perm> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &t in &map {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidElement(format!(
                    "{map:?} is not a permutation"
                )));
            }
        }
        Ok(Perm {
            map: map.into_iter().map(|t| t as u32).collect(),
        })
    }

    pub fn identity(degree: usize) -> Perm {
        Perm {
            map: (0..degree as u32).collect(),
        }
    }

    pub(crate) fn from_u32(map: Vec<u32>) -> Perm {
        debug_assert!(Perm::new(map.iter().map(|&t| t as usize).collect()).is_ok());
        Perm { map }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.map[point] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.map.iter().map(|&t| t as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(i, &t)| i as u32 == t)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Perm) -> Perm {
        Perm {
            map: other.map.iter().map(|&x| self.map[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.map.len()];
        for (i, &t) in self.map.iter().enumerate() {
            inv[t as usize] = i as u32;
        }
        Perm { map: inv }
    }

    /// Nontrivial cycles, each starting at its smallest point, ordered by
    /// that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.map.len()];
        let mut out = Vec::new();
        for start in 0..self.map.len() {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle notation; `()` for the identity. Points are written without
    /// separators when the degree is at most 10, comma-separated otherwise.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".into();
        }
        let sep = if self.degree() <= 10 { "" } else { "," };
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                format!("({})", pts.join(sep))
            })
            .collect()
    }

    /// Parses juxtaposed cycles, composing left to right as functions
    /// (`(021)(01)` applies `(01)` first). Inside a cycle, points are split
    /// on commas if present, otherwise on whitespace if present, otherwise
    /// every digit is its own point.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Perm> {
        let mut result = Perm::identity(degree);
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(Error::Parse("empty cycle notation".into()));
        }
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {text:?}")))?;
            let close = body_start
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {text:?}")))?;
            let body = body_start[..close].trim();
            rest = body_start[close + 1..].trim_start();
            let points: Vec<&str> = if body.contains(',') {
                body.split(',').map(str::trim).collect()
            } else if body.contains(char::is_whitespace) {
                body.split_whitespace().collect()
            } else {
                body.char_indices()
                    .map(|(i, c)| &body[i..i + c.len_utf8()])
                    .collect()
            };
            let mut cycle = Vec::with_capacity(points.len());
            for p in points {
                let v: usize = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad point {p:?} in {text:?}")))?;
                if v >= degree {
                    return Err(Error::Parse(format!(
                        "point {v} out of range for degree {degree}"
                    )));
                }
                if cycle.contains(&v) {
                    return Err(Error::Parse(format!("point {v} repeated in a cycle")));
                }
                cycle.push(v);
            }
            let mut map: Vec<u32> = (0..degree as u32).collect();
            for (i, &p) in cycle.iter().enumerate() {
                map[p] = cycle[(i + 1) % cycle.len()] as u32;
            }
            result = result.compose_unchecked(&Perm { map });
        }
        Ok(result)
    }

    /// Position in the lexicographic order of one-line notations.
    pub fn lex_rank(&self) -> usize {
        let n = self.map.len();
        let mut rank = 0usize;
        let mut used = vec![false; n];
        for (i, &t) in self.map.iter().enumerate() {
            let smaller = (0..t as usize).filter(|&s| !used[s]).count();
            rank = rank * (n - i) + smaller;
            used[t as usize] = true;
        }
        rank
    }

    pub fn from_lex_rank(degree: usize, mut rank: usize) -> Perm {
        let mut digits = vec![0usize; degree];
        for i in (0..degree).rev() {
            let base = degree - i;
            digits[i] = rank % base;
            rank /= base;
        }
        let mut free: Vec<u32> = (0..degree as u32).collect();
        let map = digits.into_iter().map(|d| free.remove(d)).collect();
        Perm { map }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Perm {
        Perm::parse_cycles(s, 3).unwrap()
    }

    #[test]
    fn compose_examples() {
        assert!(c("(01)").compose(&c("(01)")).unwrap().is_identity());
        assert_eq!(c("(012)").compose(&c("(012)")).unwrap(), c("(021)"));
        assert_eq!(c("(12)").compose(&Perm::identity(3)).unwrap(), c("(12)"));
        assert_eq!(
            c("(01)").compose(&Perm::identity(4)),
            Err(Error::DegreeMismatch(3, 4))
        );
        // (012)∘(01): 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
        assert_eq!(c("(012)(01)").one_line(), vec![2, 1, 0]);
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(c("(012)").one_line(), vec![1, 2, 0]);
        assert_eq!(c("()").cycle_string(), "()");
        assert_eq!(c("(021)(01)").cycle_string(), "(12)");
        assert_eq!(c(" ( 0 2 ) ").cycle_string(), "(02)");
        let big = Perm::parse_cycles("(0,1,719)", 720).unwrap();
        assert_eq!(big.cycle_string(), "(0,1,719)");
        assert!(Perm::parse_cycles("(03)", 3).is_err());
        assert!(Perm::parse_cycles("(011)", 3).is_err());
        assert!(Perm::parse_cycles("(01", 3).is_err());
        assert!(Perm::parse_cycles("01", 3).is_err());
    }

    #[test]
    fn lex_rank_enumerates_in_order() {
        let all: Vec<Perm> = (0..6).map(|r| Perm::from_lex_rank(3, r)).collect();
        let lines: Vec<Vec<usize>> = all.iter().map(Perm::one_line).collect();
        assert_eq!(
            lines,
            vec![
                vec![0, 1, 2],
                vec![0, 2, 1],
                vec![1, 0, 2],
                vec![1, 2, 0],
                vec![2, 0, 1],
                vec![2, 1, 0]
            ]
        );
        for r in 0..720 {
            assert_eq!(Perm::from_lex_rank(6, r).lex_rank(), r);
        }
    }

    #[test]
    fn inverse_and_validation() {
        let p = c("(012)");
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
        assert!(Perm::new(vec![0, 0, 1]).is_err());
        assert!(Perm::new(vec![0, 3, 1]).is_err());
    }
}
