//! Steinberg tensor-product bookkeeping: base-`p` digits, `q`-restricted
//! characters, restriction of `L(lambda)` to `G(q)` and tensor products
//! over `G(q)`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::character::{decompose, frobenius_twist, tensor_product, DominantCharacter, IrreducibleSource};
use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Recursion guard for [`gq_tensor_decompose`].
pub const MAX_DEPTH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitBase {
    Prime(u64),
    /// The `F4`, `p = 2` endomorphism `(w1,w2,w3,w4) -> (2w4,2w3,w2,w1)`.
    F4Special,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinbergFactorization {
    pub digits: Vec<Weight>,
    pub base: DigitBase,
    /// Power of `F0` applied to each digit (empty when unused).
    pub twist_applied: Vec<u32>,
}

impl SteinbergFactorization {
    /// Re-sums the digits.
    pub fn reconstruct(&self) -> Weight {
        let rank = self.digits.first().map_or(0, Weight::rank);
        let mut acc = Weight::zero(rank);
        for d in self.digits.iter().rev() {
            acc = match self.base {
                DigitBase::Prime(p) => acc.scale(p as i64),
                DigitBase::F4Special => f4_endomorphism(&acc),
            }
            .add(d);
        }
        acc
    }
}

/// Coordinatewise base-`p` digits, trailing zero digits removed.
pub fn base_p_digits(lambda: &Weight, p: u64) -> Result<SteinbergFactorization> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if p < 2 {
        return Err(Error::BadPrimePower { q: p, p });
    }
    let p = p as i64;
    let mut rest = lambda.coeffs().to_vec();
    let mut digits = vec![];
    loop {
        digits.push(Weight::new(rest.iter().map(|a| a % p).collect()));
        rest.iter_mut().for_each(|a| *a /= p);
        if rest.iter().all(|&a| a == 0) {
            break;
        }
    }
    Ok(SteinbergFactorization {
        digits,
        base: DigitBase::Prime(p as u64),
        twist_applied: vec![],
    })
}

/// Exponent `e` with `q = p^e`.
pub fn prime_power_exponent(q: u64, p: u64) -> Result<u32> {
    if p < 2 || q < p {
        return Err(Error::BadPrimePower { q, p });
    }
    let mut e = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    if r != 1 {
        return Err(Error::BadPrimePower { q, p });
    }
    Ok(e)
}

/// All weights with coordinates in `[0, b)`, lexicographically.
pub fn restricted_weights(rank: usize, b: u64) -> impl Iterator<Item = Weight> {
    let b = b as i64;
    let total = (b as u64).pow(rank as u32);
    (0..total).map(move |mut k| {
        let mut v = vec![0i64; rank];
        for slot in v.iter_mut().rev() {
            *slot = (k % b as u64) as i64;
            k /= b as u64;
        }
        Weight::new(v)
    })
}

/// `L(lambda)` for any dominant `lambda`, as the tensor product of the
/// Frobenius twists of its `p`-restricted digits.
pub fn steinberg_character(
    datum: &RootDatum,
    lambda: &Weight,
    p: u64,
    source: &impl IrreducibleSource,
) -> Result<DominantCharacter> {
    let fact = base_p_digits(lambda, p)?;
    let mut acc: Option<DominantCharacter> = None;
    for (i, d) in fact.digits.iter().enumerate() {
        if d.is_zero() {
            continue;
        }
        let c = frobenius_twist(&source.irreducible(datum, d)?, p, i as u32);
        acc = Some(match acc {
            None => c,
            Some(a) => tensor_product(datum, &a, &c)?,
        });
    }
    let ch = acc.unwrap_or_else(|| DominantCharacter::trivial(datum.rank()));
    Ok(ch.with_label_unchecked(lambda.clone()))
}

/// Character of `L(lambda)` for `q`-restricted `lambda`.
pub fn q_restricted_character(
    datum: &RootDatum,
    lambda: &Weight,
    q: u64,
    p: u64,
    source: &impl IrreducibleSource,
) -> Result<DominantCharacter> {
    prime_power_exponent(q, p)?;
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    if !lambda.is_restricted(q as i64) {
        return Err(Error::Schema(format!("{lambda} is not {q}-restricted")));
    }
    steinberg_character(datum, lambda, p, source)
}

/// `q`-restricted weights whose tensor product restricts to `G(q)` as
/// `L(lambda)` does: with base-`q` digits `mu_i`, the factors are
/// `mu_i F0^{-i}`. Zero digits are dropped; `lambda = 0` gives `{0}`.
pub fn restriction_factors(lambda: &Weight, q: u64, f0: &IntMatrix) -> Result<Vec<Weight>> {
    let fact = base_p_digits(lambda, q)?;
    let inv = f0.transpose();
    if !(&inv * f0).is_identity() {
        return Err(Error::TwistIncompatible("F0 is not a permutation matrix".into()));
    }
    let mut out = vec![];
    let mut power = IntMatrix::identity(lambda.rank());
    for d in &fact.digits {
        if !d.is_zero() {
            out.push(d.apply(&power));
        }
        power = &power * &inv;
    }
    if out.is_empty() {
        out.push(Weight::zero(lambda.rank()));
    }
    Ok(out)
}

/// Composition factors over `G(q)` of `L(lambda1) (x) L(lambda2)`, as a
/// multiset of `q`-restricted weights.
pub fn gq_tensor_decompose(
    datum: &RootDatum,
    lambda1: &Weight,
    lambda2: &Weight,
    q: u64,
    p: u64,
    source: &(impl IrreducibleSource + Sync),
) -> Result<BTreeMap<Weight, u64>> {
    gq_tensor(datum, lambda1, lambda2, q, p, source, 0)
}

fn gq_tensor(
    datum: &RootDatum,
    a: &Weight,
    b: &Weight,
    q: u64,
    p: u64,
    source: &(impl IrreducibleSource + Sync),
    depth: usize,
) -> Result<BTreeMap<Weight, u64>> {
    if depth > MAX_DEPTH {
        return Err(Error::DepthExceeded);
    }
    if b.is_zero() || a.is_zero() {
        let w = if b.is_zero() { a } else { b };
        q_restricted_character(datum, w, q, p, source)?;
        return Ok(BTreeMap::from([(w.clone(), 1)]));
    }
    let ca = q_restricted_character(datum, a, q, p, source)?;
    let cb = q_restricted_character(datum, b, q, p, source)?;
    let t = tensor_product(datum, &ca, &cb)?;
    let mut out = BTreeMap::new();
    for (nu, m) in decompose(datum, &t, source)? {
        let factors = restriction_factors(&nu, q, datum.twist())?;
        for (w, k) in gq_product(datum, &factors, q, p, source, depth + 1)? {
            *out.entry(w).or_insert(0) += m * k;
        }
    }
    Ok(out)
}

fn gq_product(
    datum: &RootDatum,
    factors: &[Weight],
    q: u64,
    p: u64,
    source: &(impl IrreducibleSource + Sync),
    depth: usize,
) -> Result<BTreeMap<Weight, u64>> {
    let mut acc = BTreeMap::from([(factors[0].clone(), 1u64)]);
    for f in &factors[1..] {
        let mut next = BTreeMap::new();
        for (x, m) in acc {
            for (y, k) in gq_tensor(datum, &x, f, q, p, source, depth)? {
                *next.entry(y).or_insert(0) += m * k;
            }
        }
        acc = next;
    }
    Ok(acc)
}

/// Degree of every `q`-restricted irreducible: the product of the
/// dimensions of its base-`p` digits.
pub fn irreducible_degrees(
    rank: usize,
    q: u64,
    p: u64,
    restricted_dims: &BTreeMap<Weight, u128>,
) -> Result<BTreeMap<Weight, u128>> {
    prime_power_exponent(q, p)?;
    let weights: Vec<Weight> = restricted_weights(rank, q).collect();
    weights
        .into_par_iter()
        .map(|w| {
            let fact = base_p_digits(&w, p)?;
            let mut d = 1u128;
            for digit in &fact.digits {
                d *= restricted_dims
                    .get(digit)
                    .ok_or_else(|| Error::MissingIrreducible(digit.to_string()))?;
            }
            Ok((w, d))
        })
        .collect()
}

/// Image of a weight under `(w1,w2,w3,w4) -> (2w4,2w3,w2,w1)`.
pub fn f4_endomorphism(w: &Weight) -> Weight {
    let a = w.coeffs();
    Weight::new(vec![a[3], a[2], 2 * a[1], 2 * a[0]])
}

/// Digits of `lambda = sum lambda_i F^i` with every `lambda_i` in
/// `{0, w4, w3, w3 + w4}`.
pub fn f4_special_digits(datum: &RootDatum, p: u64, lambda: &Weight) -> Result<SteinbergFactorization> {
    if datum.type_name() != "F4" || p != 2 {
        return Err(Error::WrongType(format!(
            "special digits need F4 with p = 2, got {} with p = {p}",
            datum.type_name()
        )));
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let mut rest = lambda.coeffs().to_vec();
    let mut digits = vec![];
    loop {
        let (x, y) = (rest[2] % 2, rest[3] % 2);
        digits.push(Weight::new(vec![0, 0, x, y]));
        rest = vec![(rest[3] - y) / 2, (rest[2] - x) / 2, rest[1], rest[0]];
        if rest.iter().all(|&a| a == 0) {
            break;
        }
    }
    let fact = SteinbergFactorization {
        digits,
        base: DigitBase::F4Special,
        twist_applied: vec![],
    };
    assert_eq!(&fact.reconstruct(), lambda, "special digit expansion does not re-sum");
    Ok(fact)
}
