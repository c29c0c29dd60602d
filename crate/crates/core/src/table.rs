//! Ordinary character tables imported from JSON.
//!
//! ```json
//! {
//!   "p_hint": 3,
//!   "classes": [
//!     {"name": "1a", "order": 1, "centralizer": 24, "power": {"2": 0}, "central": {"1": 1}}
//!   ],
//!   "chars": [[[1, {"0": "1"}]]],
//!   "automorphisms": [[0]]
//! }
//! ```
//!
//! Class indices are 0-based. `power` maps a prime to the class of the
//! power; `central` maps the index of a central class `z` to the class of
//! `z x`. Centralizer orders may be numbers or decimal strings.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub name: String,
    pub order: u64,
    #[serde(with = "big_number")]
    pub centralizer: u128,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub power: BTreeMap<u64, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub central: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbstractTable {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_hint: Option<u64>,
    pub classes: Vec<ClassRecord>,
    pub chars: Vec<Vec<Cyclotomic>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub automorphisms: Vec<Vec<usize>>,
}

/// Integers up to `2^53` as JSON numbers, larger ones as strings.
pub mod big_number {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    const EXACT: u128 = 1 << 53;

    pub fn serialize<S: Serializer>(v: &u128, s: S) -> Result<S::Ok, S::Error> {
        if *v < EXACT {
            s.serialize_u64(*v as u64)
        } else {
            s.serialize_str(&v.to_string())
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u128, D::Error> {
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => n
                .as_u64()
                .map(u128::from)
                .ok_or_else(|| D::Error::custom(format!("bad integer {n}"))),
            serde_json::Value::String(s) => s
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer {s:?}"))),
            v => Err(D::Error::custom(format!("expected an integer, got {v}"))),
        }
    }
}

impl AbstractTable {
    pub fn from_json(text: &str) -> Result<Self> {
        let t: AbstractTable = serde_json::from_str(text)?;
        t.validate()?;
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serialisable");
        s.push('\n');
        s
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn group_order(&self) -> u128 {
        self.classes
            .iter()
            .find(|c| c.order == 1)
            .map_or(0, |c| c.centralizer)
    }

    /// Indices of the classes of elements of order prime to `p`.
    pub fn p_regular(&self, p: u64) -> Vec<usize> {
        (0..self.classes.len())
            .filter(|&i| self.classes[i].order.gcd(&p) == 1)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.classes.len();
        if n == 0 {
            return Err(Error::Schema("no classes".into()));
        }
        if self.chars.is_empty() {
            return Err(Error::Schema("no characters".into()));
        }
        if self.chars.len() != n {
            return Err(Error::Schema(format!("{} characters for {n} classes", self.chars.len())));
        }
        if let Some(i) = self.chars.iter().position(|c| c.len() != n) {
            return Err(Error::Schema(format!("character {i} has {} values", self.chars[i].len())));
        }
        let ones: Vec<usize> = (0..n).filter(|&i| self.classes[i].order == 1).collect();
        if ones.len() != 1 {
            return Err(Error::Schema("exactly one class must have order 1".into()));
        }
        let g = self.group_order();
        for c in &self.classes {
            if c.order == 0 || c.centralizer == 0 || g % c.centralizer != 0 {
                return Err(Error::Schema(format!(
                    "class {} has centralizer order {} not dividing {g}",
                    c.name, c.centralizer
                )));
            }
            for (&r, &j) in &c.power {
                if j >= n {
                    return Err(Error::Schema(format!("power map of {} leaves the table", c.name)));
                }
                let expect = c.order / c.order.gcd(&r);
                if self.classes[j].order != expect {
                    return Err(Error::InconsistentPowerMap(format!(
                        "{}^{r} lands in {} of order {}, expected order {expect}",
                        c.name, self.classes[j].name, self.classes[j].order
                    )));
                }
            }
            for (&z, &j) in &c.central {
                if z >= n || j >= n {
                    return Err(Error::Schema(format!("central map of {} leaves the table", c.name)));
                }
            }
        }
        for a in &self.automorphisms {
            let mut seen = vec![false; n];
            if a.len() != n || a.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
                return Err(Error::Schema("automorphism is not a permutation of the classes".into()));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// SL(2,3) with classes 1a 2a 4a 3a 3b 6a 6b.
    pub(crate) const SL23: &str = r#"{
  "p_hint": 3,
  "classes": [
    {"name": "1a", "order": 1, "centralizer": 24, "power": {"2": 0, "3": 0}, "central": {"1": 1}},
    {"name": "2a", "order": 2, "centralizer": 24, "power": {"2": 0, "3": 1}, "central": {"1": 0}},
    {"name": "4a", "order": 4, "centralizer": 4, "power": {"2": 1, "3": 2}, "central": {"1": 2}},
    {"name": "3a", "order": 3, "centralizer": 6, "power": {"2": 4, "3": 0}, "central": {"1": 5}},
    {"name": "3b", "order": 3, "centralizer": 6, "power": {"2": 3, "3": 0}, "central": {"1": 6}},
    {"name": "6a", "order": 6, "centralizer": 6, "power": {"2": 4, "3": 1}, "central": {"1": 3}},
    {"name": "6b", "order": 6, "centralizer": 6, "power": {"2": 3, "3": 1}, "central": {"1": 4}}
  ],
  "chars": [
    [1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, [3, {"1": 1}], [3, {"2": 1}], [3, {"1": 1}], [3, {"2": 1}]],
    [1, 1, 1, [3, {"2": 1}], [3, {"1": 1}], [3, {"2": 1}], [3, {"1": 1}]],
    [2, -2, 0, -1, -1, 1, 1],
    [2, -2, 0, [3, {"1": -1}], [3, {"2": -1}], [3, {"1": 1}], [3, {"2": 1}]],
    [2, -2, 0, [3, {"2": -1}], [3, {"1": -1}], [3, {"2": 1}], [3, {"1": 1}]],
    [3, 3, -1, 0, 0, 0, 0]
  ]
}"#;

    #[test]
    fn sl23_imports() {
        let t = AbstractTable::from_json(SL23).unwrap();
        assert_eq!(t.len(), 7);
        assert_eq!(t.p_regular(3), vec![0, 1, 2]);
        assert_eq!(t.group_order(), 24);
    }

    #[test]
    fn validation_errors() {
        let mut t = AbstractTable::from_json(SL23).unwrap();
        t.chars.clear();
        assert!(matches!(t.validate(), Err(Error::Schema(_))));
        let mut t = AbstractTable::from_json(SL23).unwrap();
        t.classes[2].power.insert(2, 3);
        assert!(matches!(t.validate(), Err(Error::InconsistentPowerMap(_))));
    }
}
