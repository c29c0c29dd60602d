//! Characteristic-zero characters of Weyl modules (Freudenthal's formula)
//! and the Weyl dimension formula.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use crate::character::DominantCharacter;
use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::orbit::dominant_representative;

/// Integer multiple of the Gram matrix of the fundamental weights.
fn scaled_gram(datum: &RootDatum) -> Vec<Vec<i128>> {
    let l = datum.rank();
    let inv = datum.simple_roots().inverse_rational().unwrap();
    let lens = &datum.classification().root_lengths;
    // (omega_i, omega_j) = (A^-1 D)_ij with D_jj = |alpha_j|^2 / 2
    let g: Vec<Vec<_>> = (0..l)
        .map(|i| {
            (0..l)
                .map(|j| inv[i][j] * crate::matrix::Rat::new(lens[j], 2))
                .collect()
        })
        .collect();
    let den = g
        .iter()
        .flatten()
        .fold(1i64, |acc, x: &crate::matrix::Rat| acc.lcm(x.denom()));
    g.iter()
        .map(|row| {
            row.iter()
                .map(|x| i128::from((x * den).to_integer()))
                .collect()
        })
        .collect()
}

fn form(g: &[Vec<i128>], x: &[i64], y: &[i64]) -> i128 {
    let mut s = 0i128;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            s += i128::from(xi) * g[i][j] * i128::from(yj);
        }
    }
    s
}

/// Dominant weights `mu <= lambda`, highest first.
pub fn dominant_weights_below(datum: &RootDatum, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut out = vec![lambda.clone()];
    let mut k = 0;
    while k < out.len() {
        let mu = out[k].clone();
        for a in datum.positive_roots() {
            let nu = mu.sub(a);
            if nu.is_dominant() && seen.insert(nu.clone()) {
                out.push(nu);
            }
        }
        k += 1;
    }
    out.sort_by_key(|w| std::cmp::Reverse((datum.height(w), w.clone())));
    out
}

/// Dominant character of the Weyl module with highest weight `lambda`.
pub fn weyl_character(datum: &RootDatum, lambda: &Weight) -> Result<DominantCharacter> {
    if !lambda.is_dominant() || lambda.rank() != datum.rank() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let g = scaled_gram(datum);
    let rho = vec![1i64; datum.rank()];
    let shift = |w: &Weight| -> Vec<i64> { w.coeffs().iter().zip(&rho).map(|(a, b)| a + b).collect() };
    let lr = shift(lambda);
    let top = form(&g, &lr, &lr);
    let doms = dominant_weights_below(datum, lambda);
    let mut mult: HashMap<Weight, i128> = HashMap::new();
    mult.insert(lambda.clone(), 1);
    for mu in doms.iter().skip(1) {
        let mr = shift(mu);
        let denom = top - form(&g, &mr, &mr);
        let mut num = 0i128;
        for a in datum.positive_roots() {
            let mut k = 1i64;
            loop {
                let nu = mu.add(&a.scale(k));
                let m = mult
                    .get(&dominant_representative(datum, &nu))
                    .copied()
                    .unwrap_or(0);
                if m == 0 {
                    break;
                }
                num += m * form(&g, nu.coeffs(), a.coeffs());
                k += 1;
            }
        }
        num *= 2;
        assert!(denom > 0 && num % denom == 0, "Freudenthal recursion is not integral");
        let m = num / denom;
        if m > 0 {
            mult.insert(mu.clone(), m);
        }
    }
    let ch = DominantCharacter::new(
        mult.into_iter()
            .map(|(w, m)| (w, u64::try_from(m).expect("multiplicity overflow"))),
    )?
    .with_label(datum, lambda.clone())?;
    let dim = weyl_dimension(datum, lambda)?;
    if ch.dimension(datum) != dim {
        return Err(Error::DimensionMismatch {
            expected: dim.to_string(),
            got: ch.dimension(datum).to_string(),
        });
    }
    Ok(ch)
}

/// `prod_{alpha > 0} <lambda + rho, alpha^vee> / <rho, alpha^vee>`.
pub fn weyl_dimension(datum: &RootDatum, lambda: &Weight) -> Result<u128> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for c in datum.positive_coroots() {
        let a: i64 = lambda.coeffs().iter().zip(c).map(|(x, y)| (x + 1) * y).sum();
        let b: i64 = c.iter().sum();
        num *= BigUint::from(a as u64);
        den *= BigUint::from(b as u64);
    }
    let (q, r) = num.div_rem(&den);
    assert!(r == BigUint::ZERO, "Weyl dimension formula is not integral");
    q.to_u128().ok_or_else(|| Error::DimensionMismatch {
        expected: "a dimension below 2^128".into(),
        got: q.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(v: &[i64]) -> Weight {
        Weight::new(v.to_vec())
    }

    #[test]
    fn d4_small_dimensions() {
        let d = RootDatum::from_type("D4", None).unwrap();
        let cases = [
            (vec![0, 0, 0, 0], 1),
            (vec![0, 0, 0, 1], 8),
            (vec![1, 0, 0, 0], 8),
            (vec![0, 0, 1, 0], 28),
            (vec![2, 0, 0, 0], 35),
            (vec![0, 0, 0, 2], 35),
            (vec![1, 1, 0, 0], 56),
            (vec![2, 2, 2, 2], 531_441),
        ];
        for (lam, dim) in cases {
            let lam = Weight::new(lam);
            assert_eq!(weyl_dimension(&d, &lam).unwrap(), dim, "{lam}");
            assert_eq!(weyl_character(&d, &lam).unwrap().dimension(&d), dim, "{lam}");
        }
        let trivial = weyl_character(&d, &Weight::zero(4)).unwrap();
        assert_eq!(trivial, DominantCharacter::trivial(4));
    }

    #[test]
    fn a1_and_rank_two() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let c = weyl_character(&a1, &w(&[4])).unwrap();
        assert_eq!(c.multiplicity(&w(&[4])), 1);
        assert_eq!(c.multiplicity(&w(&[2])), 1);
        assert_eq!(c.multiplicity(&w(&[0])), 1);
        let g2 = RootDatum::from_type("G2", None).unwrap();
        // the adjoint module of G2 has dimension 14 with zero weight space 2
        let adj = weyl_character(&g2, &w(&[0, 1])).unwrap();
        assert_eq!(adj.dimension(&g2), 14);
        assert_eq!(adj.multiplicity(&Weight::zero(2)), 2);
        let b2 = RootDatum::from_type("B2", None).unwrap();
        assert_eq!(weyl_dimension(&b2, &w(&[1, 1])).unwrap(), 16);
    }

    #[test]
    fn f4_minuscule_like() {
        let f4 = RootDatum::from_type("F4", None).unwrap();
        // F4 modules of dimension 26 and 52 (adjoint)
        assert_eq!(weyl_character(&f4, &w(&[0, 0, 0, 1])).unwrap().dimension(&f4), 26);
        assert_eq!(weyl_character(&f4, &w(&[1, 0, 0, 0])).unwrap().dimension(&f4), 52);
    }

    #[test]
    fn rejects_non_dominant() {
        let d = RootDatum::from_type("A2", None).unwrap();
        assert!(matches!(weyl_character(&d, &w(&[1, -1])), Err(Error::NotDominant(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(20))]
        #[test]
        fn freudenthal_agrees_with_dimension_formula(v in proptest::collection::vec(0i64..4, 4)) {
            let d = RootDatum::from_type("D4", None).unwrap();
            let lam = Weight::new(v);
            let ch = weyl_character(&d, &lam).unwrap();
            prop_assert_eq!(ch.dimension(&d), weyl_dimension(&d, &lam).unwrap());
        }
    }
}
