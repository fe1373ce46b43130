//! Seeded verification suites over the tower and the commensuration
//! calculus. Each suite returns a [`RunReport`]; failures are listed in a
//! deterministic order.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::commensuration::VirtualAut;
use crate::error::{Error, Result};
use crate::subgroup::Subgroup;
use crate::tower::{default_j0, Element, Tower};
use crate::universal::small_group_tables;
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Homomorphism,
    Injectivity,
    Compat,
    Stallings,
    Hall,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Homomorphism,
        Suite::Injectivity,
        Suite::Compat,
        Suite::Stallings,
        Suite::Hall,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Homomorphism => "homomorphism",
            Suite::Injectivity => "injectivity",
            Suite::Compat => "compat",
            Suite::Stallings => "stallings",
            Suite::Hall => "hall",
        }
    }

    /// Sample count used when none is given.
    pub fn default_samples(self) -> usize {
        match self {
            Suite::Homomorphism => 50,
            Suite::Injectivity => 100,
            Suite::Stallings => 10_000,
            Suite::Compat | Suite::Hall => 0,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub suite: String,
    pub attempted: usize,
    pub passed: usize,
    pub wall_time: Duration,
    pub config_digest: String,
    pub failures: Vec<String>,
}

impl RunReport {
    pub fn new(suite: impl Into<String>, config_digest: impl Into<String>) -> RunReport {
        RunReport {
            suite: suite.into(),
            attempted: 0,
            passed: 0,
            wall_time: Duration::ZERO,
            config_digest: config_digest.into(),
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, label: impl FnOnce() -> String) {
        self.attempted += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(label());
        }
    }

    pub fn success(&self) -> bool {
        self.passed == self.attempted
    }

    pub fn exit_code(&self) -> i32 {
        if self.success() {
            0
        } else {
            1
        }
    }

    /// The deterministic summary line (no timing).
    pub fn summary(&self) -> String {
        format!(
            "{}: {}/{} passed (config {})",
            self.suite, self.passed, self.attempted, self.config_digest
        )
    }
}

/// Runs `suite`. `level` selects the tower level for the tower suites and
/// is ignored by `stallings` and `hall`.
pub fn run_suite(
    tower: &Tower,
    suite: Suite,
    level: usize,
    samples: Option<usize>,
    seed: u64,
) -> Result<RunReport> {
    let start = Instant::now();
    let samples = samples.unwrap_or(suite.default_samples());
    let mut report = RunReport::new(suite.name(), tower.config().digest());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match suite {
        Suite::Homomorphism => homomorphism(tower, level, samples, &mut rng, &mut report)?,
        Suite::Injectivity => injectivity(tower, level, samples, &mut rng, &mut report)?,
        Suite::Compat => compat(tower, level, &mut report)?,
        Suite::Stallings => stallings(samples, &mut rng, &mut report)?,
        Suite::Hall => hall(tower, &mut report)?,
    }
    report.wall_time = start.elapsed();
    Ok(report)
}

fn homomorphism(
    tower: &Tower,
    level: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    report: &mut RunReport,
) -> Result<()> {
    let order = tower.order(level).ok_or(Error::LevelTooLarge {
        level,
        max: tower.max_level(),
    })?;
    let pairs: Vec<(Element, Element)> = if order <= 6 {
        let all = tower.elements(level)?;
        all.iter()
            .flat_map(|a| all.iter().map(move |b| (a.clone(), b.clone())))
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                Ok((
                    tower.element(level, rng.gen_range(0..order))?,
                    tower.element(level, rng.gen_range(0..order))?,
                ))
            })
            .collect::<Result<_>>()?
    };
    for (a, b) in pairs {
        let composite = VirtualAut::compose(&tower.embed(level, &a)?, &tower.embed(level, &b)?)?;
        let direct = tower.embed(level, &tower.multiply(level, &a, &b)?)?;
        report.record(composite.comm_equal(&direct), || {
            format!("embed({a})∘embed({b}) != embed({a}·{b})")
        });
    }
    Ok(())
}

fn injectivity(
    tower: &Tower,
    level: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    report: &mut RunReport,
) -> Result<()> {
    let order = tower.order(level).ok_or(Error::LevelTooLarge {
        level,
        max: tower.max_level(),
    })?;
    let identity = tower.identity(level)?;
    let elements: Vec<Element> = if order <= 6 {
        tower
            .elements(level)?
            .into_iter()
            .filter(|g| *g != identity)
            .collect()
    } else {
        (0..samples)
            .map(|_| tower.element(level, rng.gen_range(1..order)))
            .collect::<Result<_>>()?
    };
    for g in elements {
        report.record(!tower.embed(level, &g)?.is_identity(), || {
            format!("embed({g}) is the identity")
        });
    }
    Ok(())
}

/// Checks level `level - 1` against level `level` for every element below.
fn compat(tower: &Tower, level: usize, report: &mut RunReport) -> Result<()> {
    if level == 0 {
        return Err(Error::InvalidElement(
            "compat compares a level with the one below; use level >= 1".into(),
        ));
    }
    let k = level - 1;
    let h_next = tower.h_subgroup(level)?;
    for g in tower.elements(k)? {
        let lower = tower.embed(k, &g)?;
        let upper = tower.embed(level, &Element::Perm(tower.ell(k, &g)?))?;
        let ok = upper.domain().is_subgroup_of(lower.domain())
            && lower.restrict(h_next)? == upper
            && upper.comm_equal(&lower);
        report.record(ok, || {
            format!("embed({level}, ℓ({g})) disagrees with embed({k}, {g})")
        });
    }
    Ok(())
}

fn x_exponent_oracle(w: &Word) -> bool {
    w.exponent_sum(0).rem_euclid(3) == 0
}

fn y_exponent_oracle(w: &Word) -> bool {
    w.exponent_sum(1).rem_euclid(2) == 0
}

/// Membership in the base subgroup and in its intersection with the
/// even-`y` subgroup, against exponent-sum oracles.
fn stallings(samples: usize, rng: &mut ChaCha8Rng, report: &mut RunReport) -> Result<()> {
    let h0 = Subgroup::from_generators(2, &default_j0())?;
    let even_y = Subgroup::from_generators(
        2,
        &[
            Word::generator(0),
            Word::generator(1).pow(2),
            Word::generator(0).conjugate_by(&Word::generator(1)),
        ],
    )?;
    let both = h0.intersect(&even_y)?;
    let mut check = |w: &Word| {
        let ok = h0.contains(w) == x_exponent_oracle(w)
            && both.contains(w) == (x_exponent_oracle(w) && y_exponent_oracle(w));
        report.record(ok, || {
            format!("membership of {w} disagrees with the oracle")
        });
    };
    for w in reduced_words(2, 8) {
        check(&w);
    }
    for _ in 0..samples {
        let len = rng.gen_range(0..=20);
        check(&random_reduced_word(rng, 2, len));
    }
    Ok(())
}

fn hall(tower: &Tower, report: &mut RunReport) -> Result<()> {
    for (name, table) in small_group_tables() {
        let images = tower.embed_finite_group(&table)?;
        let mut ok = true;
        for (a, row) in table.iter().enumerate() {
            for (b, &c) in row.iter().enumerate() {
                ok &= tower.u_multiply(&images[a], &images[b])? == images[c];
            }
        }
        let distinct: std::collections::HashSet<_> = images.iter().collect();
        ok &= distinct.len() == table.len();
        report.record(ok, || format!("{name} does not embed"));
    }
    let parse = |k, s: &str| tower.parse_element(k, s);
    let cases = [
        (1, vec![parse(1, "(01)")?], vec![parse(1, "(12)")?]),
        (0, vec![parse(0, "1")?], vec![parse(0, "2")?]),
        (0, vec![parse(0, "1")?], vec![parse(0, "1")?]),
    ];
    for (k, a, b) in cases {
        let ok = match tower.hall_conjugator(k, &a, &b) {
            Ok(s) => a.iter().zip(&b).all(|(g, h)| {
                let lhs = s
                    .compose(&tower.ell(k, g).unwrap())
                    .unwrap()
                    .compose(&s.inverse())
                    .unwrap();
                lhs == tower.ell(k, h).unwrap()
            }),
            Err(_) => false,
        };
        report.record(ok, || {
            format!("no conjugator at level {k} for {a:?} -> {b:?}")
        });
    }
    Ok(())
}

/// Every freely reduced word of length at most `max_len`.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..rank as u32)
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut layer = vec![Vec::<Letter>::new()];
    let mut out = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&p| p == l.invert()) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| Word::from_letters(v.clone())));
        layer = next;
    }
    out
}

/// A uniformly chosen freely reduced word of exactly `len` letters.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::with_sign(
            rng.gen_range(0..rank as u32),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        if letters.last().is_some_and(|&p| p == l.invert()) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_enumeration_counts() {
        // 1 + 4 + 4·3 + 4·9
        assert_eq!(reduced_words(2, 3).len(), 1 + 4 + 12 + 36);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_reduced_word(&mut rng, 2, 17).len(), 17);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("speed".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let t = Tower::default();
        let r = run_suite(&t, Suite::Homomorphism, 1, None, 0).unwrap();
        assert_eq!((r.passed, r.attempted), (36, 36));
        let r = run_suite(&t, Suite::Injectivity, 1, None, 0).unwrap();
        assert_eq!((r.passed, r.attempted), (5, 5));
        let r = run_suite(&t, Suite::Compat, 1, None, 0).unwrap();
        assert_eq!((r.passed, r.attempted), (3, 3));
        let r = run_suite(&t, Suite::Hall, 0, None, 0).unwrap();
        assert!(r.success(), "{:?}", r.failures);
        let r = run_suite(&t, Suite::Stallings, 0, Some(200), 0).unwrap();
        assert!(r.success(), "{:?}", r.failures);
    }
}
