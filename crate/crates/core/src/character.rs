//! Dominant characters: weight multiplicities recorded on dominant weights
//! only, with the arithmetic needed to tensor and decompose modules.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::matrix::Rat;
use crate::orbit::{orbit_length, orbit_of_dominant};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DominantCharacter {
    entries: BTreeMap<Weight, u64>,
    label: Option<Weight>,
}

impl DominantCharacter {
    /// Builds a character from `(weight, multiplicity)` pairs. Zero
    /// multiplicities are dropped; repeated keys add up.
    pub fn new(entries: impl IntoIterator<Item = (Weight, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (w, m) in entries {
            if !w.is_dominant() {
                return Err(Error::NotDominant(w.to_string()));
            }
            if m > 0 {
                *map.entry(w).or_insert(0) += m;
            }
        }
        Ok(DominantCharacter {
            entries: map,
            label: None,
        })
    }

    /// The character `{0 -> 1}` of the trivial module.
    pub fn trivial(rank: usize) -> Self {
        DominantCharacter {
            entries: BTreeMap::from([(Weight::zero(rank), 1)]),
            label: Some(Weight::zero(rank)),
        }
    }

    /// Attaches a highest-weight label; it must be a key and dominate every
    /// other key.
    pub fn with_label(mut self, datum: &RootDatum, label: Weight) -> Result<Self> {
        if !self.entries.contains_key(&label) {
            return Err(Error::MissingIrreducible(format!(
                "label {label} is not a weight of the character"
            )));
        }
        if let Some(bad) = self.entries.keys().find(|k| !datum.dominates(&label, k)) {
            return Err(Error::NotDominant(format!(
                "{bad} is not below the label {label}"
            )));
        }
        self.label = Some(label);
        Ok(self)
    }

    /// Sets the label without the dominance check; callers re-validate.
    pub(crate) fn with_label_unchecked(mut self, label: Weight) -> Self {
        self.label = Some(label);
        self
    }

    pub fn label(&self) -> Option<&Weight> {
        self.label.as_ref()
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, w: &Weight) -> u64 {
        self.entries.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_mu m_mu |mu^W|`.
    pub fn dimension(&self, datum: &RootDatum) -> u128 {
        self.entries
            .iter()
            .map(|(w, &m)| u128::from(m) * u128::from(orbit_length(datum, w).unwrap()))
            .sum()
    }

    /// Keys in decomposition order: descending height in the root basis,
    /// ties broken by descending coordinates.
    pub fn sorted_keys(&self, datum: &RootDatum) -> Vec<Weight> {
        let mut keys: Vec<(Rat, Weight)> = self
            .entries
            .keys()
            .map(|w| (datum.height(w), w.clone()))
            .collect();
        keys.sort_by(|a, b| b.cmp(a));
        keys.into_iter().map(|(_, w)| w).collect()
    }

    /// Every weight of the module with its multiplicity.
    pub fn all_weights(&self, datum: &RootDatum) -> Vec<(Vec<i64>, u64)> {
        self.entries
            .iter()
            .flat_map(|(w, &m)| {
                orbit_of_dominant(datum, w)
                    .into_iter()
                    .map(move |v| (v, m))
            })
            .collect()
    }
}

/// `i`-th Frobenius twist: every weight multiplied by `p^i`.
pub fn frobenius_twist(ch: &DominantCharacter, p: u64, i: u32) -> DominantCharacter {
    let f = i64::try_from(p.pow(i)).expect("twist factor overflow");
    DominantCharacter {
        entries: ch.entries.iter().map(|(w, &m)| (w.scale(f), m)).collect(),
        label: ch.label.as_ref().map(|l| l.scale(f)),
    }
}

/// Character of the tensor product. Every ordered pair of weights from the
/// two orbit expansions with dominant sum contributes once; the result is
/// checked against `dim(a) * dim(b)`.
pub fn tensor_product(
    datum: &RootDatum,
    a: &DominantCharacter,
    b: &DominantCharacter,
) -> Result<DominantCharacter> {
    let expand = |c: &DominantCharacter| -> Vec<(Vec<Vec<i64>>, u64)> {
        c.entries
            .iter()
            .map(|(w, &m)| (orbit_of_dominant(datum, w), m))
            .collect()
    };
    let oa = expand(a);
    let ob = expand(b);
    let pairs: Vec<(usize, usize)> = (0..oa.len())
        .flat_map(|i| (0..ob.len()).map(move |j| (i, j)))
        .collect();
    let l = datum.rank();
    let acc = pairs
        .par_iter()
        .fold(HashMap::<Vec<i64>, u64>::new, |mut acc, &(i, j)| {
            let (xs, ma) = &oa[i];
            let (ys, mb) = &ob[j];
            let m = ma * mb;
            let mut s = vec![0i64; l];
            for x in xs {
                'y: for y in ys {
                    for k in 0..l {
                        let v = x[k] + y[k];
                        if v < 0 {
                            continue 'y;
                        }
                        s[k] = v;
                    }
                    *acc.entry(s.clone()).or_insert(0) += m;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });
    let out = DominantCharacter::new(acc.into_iter().map(|(k, v)| (Weight::new(k), v)))?;
    let expected = a.dimension(datum) * b.dimension(datum);
    let got = out.dimension(datum);
    if expected != got {
        return Err(Error::DimensionMismatch {
            expected: expected.to_string(),
            got: got.to_string(),
        });
    }
    Ok(out)
}

/// Source of irreducible characters for [`decompose`].
pub trait IrreducibleSource {
    fn irreducible(&self, datum: &RootDatum, highest: &Weight) -> Result<DominantCharacter>;
}

/// Composition factors of a module as `(highest weight, multiplicity)`,
/// in the order they are peeled off.
pub fn decompose(
    datum: &RootDatum,
    ch: &DominantCharacter,
    source: &impl IrreducibleSource,
) -> Result<Vec<(Weight, u64)>> {
    let mut rest: BTreeMap<Weight, u64> = ch.entries.clone();
    let mut factors = Vec::new();
    while !rest.is_empty() {
        // greatest remaining weight under the refined order
        let top = rest
            .keys()
            .map(|w| (datum.height(w), w))
            .max()
            .map(|(_, w)| w.clone())
            .unwrap();
        let m = rest[&top];
        let irr = source.irreducible(datum, &top)?;
        for (w, &k) in &irr.entries {
            let have = rest.get(w).copied().unwrap_or(0);
            let need = k * m;
            if have < need {
                return Err(Error::NegativeMultiplicity(w.to_string(), top.to_string()));
            }
            if have == need {
                rest.remove(w);
            } else {
                rest.insert(w.clone(), have - need);
            }
        }
        factors.push((top, m));
    }
    Ok(factors)
}

/// Re-sums composition factors into a character.
pub fn recompose(
    datum: &RootDatum,
    factors: &[(Weight, u64)],
    source: &impl IrreducibleSource,
) -> Result<DominantCharacter> {
    let mut acc: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in factors {
        let irr = source.irreducible(datum, w)?;
        for (k, &v) in irr.entries() {
            *acc.entry(k.clone()).or_insert(0) += v * m;
        }
    }
    DominantCharacter::new(acc)
}
