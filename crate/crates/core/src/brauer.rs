//! Brauer character values on semisimple class representatives.

use num_integer::Integer;
use rayon::prelude::*;

use crate::character::{DominantCharacter, IrreducibleSource};
use crate::classes::ClassList;
use crate::cyclotomic::Cyclotomic;
use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::modular::{rank_mod, root_fields};
use crate::steinberg::{q_restricted_character, restricted_weights};
use crate::torus::TorusElement;

pub use crate::torus::weight_value;

/// Every weight of a character with multiplicity, for repeated evaluation.
#[derive(Debug, Clone)]
pub struct ExpandedCharacter {
    weights: Vec<(Vec<i64>, i64)>,
}

impl ExpandedCharacter {
    pub fn new(datum: &RootDatum, ch: &DominantCharacter) -> Self {
        ExpandedCharacter {
            weights: ch
                .all_weights(datum)
                .into_iter()
                .map(|(w, m)| (w, m as i64))
                .collect(),
        }
    }

    pub fn value(&self, t: &TorusElement, p: u64) -> Result<Cyclotomic> {
        let n = t.order();
        if n.gcd(&p) != 1 {
            return Err(Error::BadOrder { p });
        }
        let num = t.numerators_at(n);
        let mut counts = vec![0i64; n as usize];
        for (w, m) in &self.weights {
            let e: i64 = w.iter().zip(&num).map(|(a, b)| a * b).sum();
            counts[e.rem_euclid(n as i64) as usize] += m;
        }
        Ok(Cyclotomic::from_counts(n, &counts))
    }
}

/// `sum_mu m_mu exp(2 pi i mu(t))` over all weights of the module.
pub fn brauer_value(datum: &RootDatum, ch: &DominantCharacter, t: &TorusElement, p: u64) -> Result<Cyclotomic> {
    ExpandedCharacter::new(datum, ch).value(t, p)
}

/// Applies `z -> z^k` to every value.
pub fn galois_twist(values: &[Cyclotomic], k: i64) -> Result<Vec<Cyclotomic>> {
    values.iter().map(|v| v.galois(k)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrauerTable {
    pub datum_type: String,
    pub twist: Vec<usize>,
    pub p: u64,
    pub q: u64,
    pub class_reps: Vec<TorusElement>,
    /// `q`-restricted highest weights, in lexicographic order.
    pub labels: Vec<Weight>,
    pub values: Vec<Vec<Cyclotomic>>,
}

impl BrauerTable {
    pub fn degrees(&self) -> Vec<Cyclotomic> {
        self.values.iter().map(|r| r[0].clone()).collect()
    }

    /// `lcm` of the class orders.
    pub fn exponent(&self) -> u64 {
        self.class_reps.iter().fold(1, |a, t| a.lcm(&t.order()))
    }
}

/// One row per `q`-restricted weight, one column per class.
pub fn brauer_table(
    datum: &RootDatum,
    source: &(impl IrreducibleSource + Sync),
    classes: &ClassList,
) -> Result<BrauerTable> {
    let labels: Vec<Weight> = restricted_weights(datum.rank(), classes.q).collect();
    let reps: Vec<TorusElement> = classes.classes.iter().map(|c| c.rep.clone()).collect();
    let values = labels
        .par_iter()
        .map(|lam| {
            let ch = q_restricted_character(datum, lam, classes.q, classes.p, source)?;
            let ex = ExpandedCharacter::new(datum, &ch);
            reps.par_iter().map(|t| ex.value(t, classes.p)).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BrauerTable {
        datum_type: classes.datum_type.clone(),
        twist: classes.twist.clone(),
        p: classes.p,
        q: classes.q,
        class_reps: reps,
        labels,
        values,
    })
}

/// Lower bound for the rank of a matrix of cyclotomics, from its image in
/// `F_l` for a prime `l = 1 mod N`; equal to the true rank when full.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub prime: u64,
    pub full: bool,
}

pub fn modular_rank(rows: &[Vec<Cyclotomic>], exponent: u64) -> RankCertificate {
    let ncols = rows.first().map_or(0, Vec::len);
    let full_rank = rows.len().min(ncols);
    let mut best = RankCertificate {
        rank: 0,
        prime: 0,
        full: full_rank == 0,
    };
    for f in root_fields(exponent, 1 << 40, 3) {
        let reduced: Option<Vec<Vec<u64>>> = rows
            .iter()
            .map(|r| r.iter().map(|x| x.reduce_mod(f.l, f.n, f.g)).collect())
            .collect();
        let Some(reduced) = reduced else { continue };
        let rank = rank_mod(reduced, f.l);
        if rank > best.rank {
            best = RankCertificate {
                rank,
                prime: f.l,
                full: rank == full_rank,
            };
        }
        if best.full {
            break;
        }
    }
    best
}

/// Rank by exact Gaussian elimination over the cyclotomic numbers.
pub fn exact_rank(rows: &[Vec<Cyclotomic>]) -> usize {
    let mut m: Vec<Vec<Cyclotomic>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        let inv = m[rank][c].inverse().unwrap();
        let pivot: Vec<Cyclotomic> = m[rank].iter().map(|x| x * &inv).collect();
        for r in rank + 1..m.len() {
            if m[r][c].is_zero() {
                continue;
            }
            let f = m[r][c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot).skip(c) {
                *x = &*x - &(&f * y);
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::{frobenius_twist, tensor_product};
    use crate::classes::semisimple_classes;
    use crate::library::CharacterLibrary;
    use crate::weyl::weyl_character;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    fn t(s: &str) -> TorusElement {
        s.parse().unwrap()
    }

    fn int(k: i64) -> Cyclotomic {
        Cyclotomic::from_integer(k)
    }

    #[test]
    fn a1_values() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let l1 = weyl_character(&a1, &w(&[1])).unwrap();
        let l2 = weyl_character(&a1, &w(&[2])).unwrap();
        assert_eq!(brauer_value(&a1, &l1, &t("1/4"), 3).unwrap(), int(0));
        assert_eq!(brauer_value(&a1, &l1, &t("1/2"), 3).unwrap(), int(-2));
        assert_eq!(brauer_value(&a1, &l2, &t("1/4"), 3).unwrap(), int(-1));
        assert_eq!(brauer_value(&a1, &l2, &t("1/2"), 3).unwrap(), int(3));
        assert_eq!(brauer_value(&a1, &l2, &t("0"), 3).unwrap(), int(3));
        assert!(matches!(brauer_value(&a1, &l2, &t("1/3"), 3), Err(Error::BadOrder { p: 3 })));
    }

    #[test]
    fn a1_table() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let lib = CharacterLibrary::all_weyl_modules(&a1, 3).unwrap();
        let classes = semisimple_classes(&a1, 3, 3).unwrap();
        let table = brauer_table(&a1, &lib, &classes).unwrap();
        // classes come out as 0, 1/2, 1/4
        let expect = [[1, 1, 1], [2, -2, 0], [3, 3, -1]];
        for (row, e) in table.values.iter().zip(expect) {
            assert_eq!(row, &e.map(int).to_vec());
        }
        assert_eq!(exact_rank(&table.values), 3);
        assert!(modular_rank(&table.values, table.exponent()).full);
        let twisted = galois_twist(&table.values[1], 3).unwrap();
        assert_eq!(twisted, table.values[1]);
        assert_eq!(galois_twist(&table.values[1], 1).unwrap(), table.values[1]);
    }

    #[test]
    fn frobenius_and_tensor_compatibility() {
        let d = RootDatum::from_type("D4", Some(vec![2, 1, 3, 4])).unwrap();
        let classes = semisimple_classes(&d, 3, 3).unwrap();
        let a = weyl_character(&d, &w(&[0, 1, 0, 0])).unwrap();
        let b = weyl_character(&d, &w(&[0, 0, 0, 1])).unwrap();
        let ab = tensor_product(&d, &a, &b).unwrap();
        let fa = frobenius_twist(&a, 3, 1);
        for c in classes.classes.iter().step_by(8) {
            let va = brauer_value(&d, &a, &c.rep, 3).unwrap();
            let vb = brauer_value(&d, &b, &c.rep, 3).unwrap();
            assert_eq!(brauer_value(&d, &ab, &c.rep, 3).unwrap(), &va * &vb);
            assert_eq!(
                brauer_value(&d, &fa, &c.rep, 3).unwrap(),
                brauer_value(&d, &a, &c.rep.scale(3), 3).unwrap()
            );
            assert!(va.is_integral());
        }
        assert_eq!(brauer_value(&d, &ab, &TorusElement::zero(4), 3).unwrap(), int(64));
    }
}
