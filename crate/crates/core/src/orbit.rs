//! Weyl group orbits on `X`.

use std::collections::HashSet;

use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitRecord {
    pub dominant_rep: Weight,
    pub length: u64,
    pub elements: Option<Vec<Weight>>,
}

/// The unique dominant weight in the orbit: apply `s_i` while some
/// coordinate is negative.
pub fn dominant_representative(datum: &RootDatum, weight: &Weight) -> Weight {
    let mut v = weight.coeffs().to_vec();
    while let Some(i) = v.iter().position(|&a| a < 0) {
        datum.reflect(&mut v, i);
    }
    Weight::new(v)
}

/// Bitmask of zero coordinates.
pub fn zero_pattern(weight: &Weight) -> usize {
    weight
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &a)| a == 0)
        .fold(0, |m, (i, _)| m | 1 << i)
}

/// `|W| / |W_J|` with `J` the zero coordinates; never enumerates the orbit.
pub fn orbit_length(datum: &RootDatum, dominant: &Weight) -> Result<u64> {
    if !dominant.is_dominant() {
        return Err(Error::NotDominant(dominant.to_string()));
    }
    Ok(datum.weyl_order() / datum.parabolic_order(zero_pattern(dominant)))
}

/// All weights in the orbit of a dominant weight, found by descending
/// through `s_i` for positive coordinates. Starts at the dominant weight.
pub fn orbit_of_dominant(datum: &RootDatum, dominant: &Weight) -> Vec<Vec<i64>> {
    let start = dominant.coeffs().to_vec();
    let mut seen: HashSet<Vec<i64>> = HashSet::from([start.clone()]);
    let mut out = vec![start];
    let mut k = 0;
    while k < out.len() {
        let v = out[k].clone();
        for i in 0..datum.rank() {
            // s_i lowers the weight exactly when the coordinate is positive;
            // every orbit element is reached from the top this way
            if v[i] > 0 {
                let mut u = v.clone();
                datum.reflect(&mut u, i);
                if seen.insert(u.clone()) {
                    out.push(u);
                }
            }
        }
        k += 1;
    }
    out
}

/// The complete orbit of any weight.
pub fn orbit(datum: &RootDatum, weight: &Weight) -> OrbitRecord {
    let dom = dominant_representative(datum, weight);
    let elements: Vec<Weight> = orbit_of_dominant(datum, &dom)
        .into_iter()
        .map(Weight::new)
        .collect();
    OrbitRecord {
        length: elements.len() as u64,
        dominant_rep: dom,
        elements: Some(elements),
    }
}
