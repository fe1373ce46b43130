//! Python bindings. Words cross the boundary as strings in the dotted text
//! grammar (`x.y^-1`, `1` for the empty word); rank-2 words use `x`, `y`.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use hallcomm::verify::{run_suite, Suite};
use hallcomm::{Alphabet, Element, TowerConfig, UElement, Word};

fn err(e: hallcomm::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_words(alphabet: &Alphabet, words: &[String]) -> PyResult<Vec<Word>> {
    words
        .iter()
        .map(|s| alphabet.parse(s).map_err(err))
        .collect()
}

fn format_words(alphabet: &Alphabet, words: &[Word]) -> Vec<String> {
    words.iter().map(|w| alphabet.format(w)).collect()
}

/// Freely reduces a word over the given rank.
#[pyfunction]
#[pyo3(signature = (word, rank = 2))]
fn reduce(word: &str, rank: usize) -> PyResult<String> {
    let a = Alphabet::for_rank(rank);
    Ok(a.format(&a.parse(word).map_err(err)?))
}

/// A subgroup of the free group, held as its folded core graph.
#[pyclass(name = "Subgroup", module = "pyhallcomm", frozen)]
struct PySubgroup {
    inner: hallcomm::Subgroup,
}

#[pymethods]
impl PySubgroup {
    #[new]
    #[pyo3(signature = (generators, rank = 2))]
    fn new(generators: Vec<String>, rank: usize) -> PyResult<Self> {
        let gens = parse_words(&Alphabet::for_rank(rank), &generators)?;
        Ok(PySubgroup {
            inner: hallcomm::Subgroup::from_generators(rank, &gens).map_err(err)?,
        })
    }

    /// Index in the free group, or None when infinite.
    fn index(&self) -> Option<usize> {
        self.inner.index().finite()
    }

    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn basis(&self) -> Vec<String> {
        format_words(&self.alphabet(), self.inner.basis())
    }

    fn contains(&self, word: &str) -> PyResult<bool> {
        Ok(self
            .inner
            .contains(&self.alphabet().parse(word).map_err(err)?))
    }

    /// Coordinates of a member in the canonical basis, over `g0, g1, ...`.
    fn express(&self, word: &str) -> PyResult<String> {
        let coords = self
            .inner
            .express_in_basis(&self.alphabet().parse(word).map_err(err)?)
            .map_err(err)?;
        Ok(Alphabet::new(self.inner.rank().max(1)).format(&coords))
    }

    fn intersect(&self, other: &PySubgroup) -> PyResult<PySubgroup> {
        Ok(PySubgroup {
            inner: self.inner.intersect(&other.inner).map_err(err)?,
        })
    }

    fn is_subgroup_of(&self, other: &PySubgroup) -> bool {
        self.inner.is_subgroup_of(&other.inner)
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot(&self.alphabet())
    }

    fn __eq__(&self, other: &PySubgroup) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Subgroup(index={}, rank={})",
            self.inner.index(),
            self.inner.rank()
        )
    }
}

impl PySubgroup {
    fn alphabet(&self) -> Alphabet {
        Alphabet::for_rank(self.inner.ambient_rank())
    }
}

/// An isomorphism between finite-index subgroups of the free group.
#[pyclass(name = "VirtualAut", module = "pyhallcomm", frozen)]
struct PyVirtualAut {
    inner: hallcomm::VirtualAut,
}

#[pymethods]
impl PyVirtualAut {
    /// The map sending `domain_basis[i]` to `images[i]`.
    #[new]
    #[pyo3(signature = (domain_basis, images, rank = 2))]
    fn new(domain_basis: Vec<String>, images: Vec<String>, rank: usize) -> PyResult<Self> {
        let a = Alphabet::for_rank(rank);
        let inner = hallcomm::VirtualAut::from_basis(
            rank,
            parse_words(&a, &domain_basis)?,
            parse_words(&a, &images)?,
        )
        .map_err(err)?;
        Ok(PyVirtualAut { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (rank = 2))]
    fn identity(rank: usize) -> Self {
        PyVirtualAut {
            inner: hallcomm::VirtualAut::identity(rank),
        }
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyVirtualAut {
            inner: hallcomm::VirtualAut::from_json(text).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn apply(&self, word: &str) -> PyResult<String> {
        let a = self.alphabet();
        Ok(a.format(
            &self
                .inner
                .apply(&a.parse(word).map_err(err)?)
                .map_err(err)?,
        ))
    }

    /// `self ∘ inner`.
    fn compose(&self, inner: &PyVirtualAut) -> PyResult<PyVirtualAut> {
        Ok(PyVirtualAut {
            inner: hallcomm::VirtualAut::compose(&self.inner, &inner.inner).map_err(err)?,
        })
    }

    fn invert(&self) -> PyVirtualAut {
        PyVirtualAut {
            inner: self.inner.invert(),
        }
    }

    fn restrict(&self, sub: &PySubgroup) -> PyResult<PyVirtualAut> {
        Ok(PyVirtualAut {
            inner: self.inner.restrict(&sub.inner).map_err(err)?,
        })
    }

    fn comm_equal(&self, other: &PyVirtualAut) -> bool {
        self.inner.comm_equal(&other.inner)
    }

    fn is_identity(&self) -> bool {
        self.inner.is_identity()
    }

    fn domain(&self) -> PySubgroup {
        PySubgroup {
            inner: self.inner.domain().clone(),
        }
    }

    fn image(&self) -> PySubgroup {
        PySubgroup {
            inner: self.inner.image_subgroup().clone(),
        }
    }

    fn domain_basis(&self) -> Vec<String> {
        format_words(&self.alphabet(), self.inner.domain_basis())
    }

    fn images(&self) -> Vec<String> {
        format_words(&self.alphabet(), self.inner.images())
    }

    /// Exact equality: same domain and same values on it.
    fn __eq__(&self, other: &PyVirtualAut) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "VirtualAut(domain_index={}, image_index={})",
            self.inner.domain_index(),
            self.inner.image_index()
        )
    }
}

impl PyVirtualAut {
    fn alphabet(&self) -> Alphabet {
        Alphabet::for_rank(self.inner.ambient_rank())
    }
}

/// The symmetric-group tower over Z/3 and its embedding into the
/// commensurator. Elements are strings: integers at level 0, cycle
/// notation above.
#[pyclass(name = "Tower", module = "pyhallcomm", frozen)]
struct PyTower {
    inner: hallcomm::Tower,
}

#[pymethods]
impl PyTower {
    /// `config` is TOML text; `figure=True` selects the transversal
    /// `{(), (01)}` at level 1.
    #[new]
    #[pyo3(signature = (config = None, figure = false))]
    fn new(config: Option<&str>, figure: bool) -> PyResult<Self> {
        let cfg = match (config, figure) {
            (Some(text), _) => TowerConfig::from_toml(text).map_err(err)?,
            (None, true) => TowerConfig::figure(),
            (None, false) => TowerConfig::default(),
        };
        Ok(PyTower {
            inner: hallcomm::Tower::new(cfg).map_err(err)?,
        })
    }

    fn order(&self, level: usize) -> Option<usize> {
        self.inner.order(level)
    }

    fn elements(&self, level: usize) -> PyResult<Vec<String>> {
        Ok(self
            .inner
            .elements(level)
            .map_err(err)?
            .iter()
            .map(|g| g.to_string())
            .collect())
    }

    fn multiply(&self, level: usize, a: &str, b: &str) -> PyResult<String> {
        let (a, b) = (self.element(level, a)?, self.element(level, b)?);
        Ok(self.inner.multiply(level, &a, &b).map_err(err)?.to_string())
    }

    /// Left-regular image of `elem` one level up, in cycle notation.
    fn ell(&self, level: usize, elem: &str) -> PyResult<String> {
        Ok(self
            .inner
            .ell(level, &self.element(level, elem)?)
            .map_err(err)?
            .to_string())
    }

    fn embed(&self, level: usize, elem: &str) -> PyResult<PyVirtualAut> {
        let g = self.element(level, elem)?;
        Ok(PyVirtualAut {
            inner: self.inner.embed(level, &g).map_err(err)?,
        })
    }

    fn h_subgroup(&self, level: usize) -> PyResult<PySubgroup> {
        Ok(PySubgroup {
            inner: self.inner.h_subgroup(level).map_err(err)?.clone(),
        })
    }

    /// The level map as `a_label -> image` lines.
    fn m_map_table(&self, level: usize) -> PyResult<String> {
        self.inner.m_map_coset_table(level).map_err(err)
    }

    /// Normalized product in the colimit of `(level, element)` pairs.
    fn u_multiply(&self, a: (usize, String), b: (usize, String)) -> PyResult<(usize, String)> {
        let a = UElement::new(a.0, self.element(a.0, &a.1)?);
        let b = UElement::new(b.0, self.element(b.0, &b.1)?);
        let p = self.inner.u_multiply(&a, &b).map_err(err)?;
        Ok((p.level, p.element.to_string()))
    }

    /// Images of a group given by its multiplication table.
    fn embed_finite_group(&self, table: Vec<Vec<usize>>) -> PyResult<Vec<(usize, String)>> {
        let images = self.inner.embed_finite_group(&table).map_err(err)?;
        Ok(images
            .into_iter()
            .map(|u| (u.level, u.element.to_string()))
            .collect())
    }

    fn hall_conjugator(&self, level: usize, a: Vec<String>, b: Vec<String>) -> PyResult<String> {
        let parse = |v: &[String]| {
            v.iter()
                .map(|s| self.element(level, s))
                .collect::<PyResult<Vec<_>>>()
        };
        Ok(self
            .inner
            .hall_conjugator(level, &parse(&a)?, &parse(&b)?)
            .map_err(err)?
            .to_string())
    }

    /// Runs a verification suite; returns `(passed, attempted, failures)`.
    #[pyo3(signature = (suite, level = 1, samples = None, seed = 0))]
    fn verify(
        &self,
        suite: &str,
        level: usize,
        samples: Option<usize>,
        seed: u64,
    ) -> PyResult<(usize, usize, Vec<String>)> {
        let suite: Suite = suite.parse().map_err(err)?;
        let r = run_suite(&self.inner, suite, level, samples, seed).map_err(err)?;
        Ok((r.passed, r.attempted, r.failures))
    }

    fn config_digest(&self) -> String {
        self.inner.config().digest()
    }
}

impl PyTower {
    fn element(&self, level: usize, text: &str) -> PyResult<Element> {
        self.inner.parse_element(level, text).map_err(err)
    }
}

#[pymodule]
fn pyhallcomm(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_class::<PySubgroup>()?;
    m.add_class::<PyVirtualAut>()?;
    m.add_class::<PyTower>()?;
    Ok(())
}
