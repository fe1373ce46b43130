//! Tower configuration, read from a small TOML file:
//!
//! ```toml
//! g0 = "Z3"
//! max_level = 2
//! j0 = ["y", "x.y.x^-1", "x.x.y.x^-1.x^-1", "x.x.x"]
//!
//! [transversal]
//! 1 = ["()", "(01)"]
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Largest level at which embeddings can be materialized.
pub const MATERIALIZABLE_LEVEL: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TowerConfig {
    /// Base group; only `Z3` is supported.
    pub g0: String,
    pub max_level: usize,
    /// Transversal overrides keyed by level, as cycle-notation strings.
    #[serde(with = "level_keys")]
    pub transversal: BTreeMap<usize, Vec<String>>,
    /// Basis images of the base injection into the rank-2 free group.
    pub j0: Option<Vec<String>>,
}

impl Default for TowerConfig {
    fn default() -> Self {
        TowerConfig {
            g0: "Z3".into(),
            max_level: MATERIALIZABLE_LEVEL,
            transversal: BTreeMap::new(),
            j0: None,
        }
    }
}

impl TowerConfig {
    /// The choices drawn in the worked level-1 example: transversal
    /// `{(), (01)}` for `Sym(Z/3)` over the left-regular copy of `Z/3`.
    pub fn figure() -> Self {
        let mut cfg = TowerConfig::default();
        cfg.transversal.insert(1, vec!["()".into(), "(01)".into()]);
        cfg
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: TowerConfig = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.g0 != "Z3" {
            return Err(Error::Config(format!(
                "unsupported base group {:?} (only Z3)",
                self.g0
            )));
        }
        if self.max_level > MATERIALIZABLE_LEVEL {
            return Err(Error::Config(format!(
                "max_level {} exceeds the materializable level {MATERIALIZABLE_LEVEL}",
                self.max_level
            )));
        }
        if let Some(&level) = self
            .transversal
            .keys()
            .find(|&&k| k == 0 || k > MATERIALIZABLE_LEVEL)
        {
            return Err(Error::Config(format!("no transversal at level {level}")));
        }
        Ok(())
    }

    /// Hex SHA-256 of the canonical TOML rendering.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_toml().as_bytes()))
    }
}

// TOML table keys are strings.
mod level_keys {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<usize, Vec<String>>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<usize, Vec<String>>, D::Error> {
        BTreeMap::<String, Vec<String>>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse()
                    .map(|k| (k, v))
                    .map_err(|_| D::Error::custom(format!("level key {k:?} is not an integer")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let cfg = TowerConfig::from_toml("max_level = 1\n[transversal]\n1 = [\"()\", \"(01)\"]\n")
            .unwrap();
        assert_eq!(cfg.max_level, 1);
        assert_eq!(cfg.transversal[&1], vec!["()", "(01)"]);
        assert_eq!(cfg.g0, "Z3");
    }

    #[test]
    fn rejects_bad_values() {
        assert!(TowerConfig::from_toml("g0 = \"S3\"").is_err());
        assert!(TowerConfig::from_toml("max_level = 3").is_err());
        assert!(TowerConfig::from_toml("[transversal]\n3 = []").is_err());
        assert!(TowerConfig::from_toml("colour = 1").is_err());
    }

    #[test]
    fn digest_is_stable() {
        let a = TowerConfig::figure();
        let b = TowerConfig::from_toml(&a.to_toml()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.digest(), b.digest());
        assert_ne!(a.digest(), TowerConfig::default().digest());
    }
}
