//! Elements of the maximal torus modelled as `(Q/Z)^l` in coroot
//! coordinates, and the fixed points of twisted Frobenius maps.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use crate::datum::{RootDatum, Weight, WeylElement};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Rat};
use crate::snf::smith_normal_form;

/// A torus element `num / den` with `den` the exact order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TorusElement {
    den: u64,
    num: Vec<u64>,
}

impl TorusElement {
    pub fn zero(rank: usize) -> Self {
        TorusElement {
            den: 1,
            num: vec![0; rank],
        }
    }

    /// `nums / den` reduced mod 1 and to the exact order.
    pub fn new(den: u64, nums: &[i64]) -> Self {
        assert!(den > 0);
        let mut num: Vec<u64> = nums
            .iter()
            .map(|&a| a.rem_euclid(den as i64) as u64)
            .collect();
        let g = num.iter().fold(den, |g, &a| g.gcd(&a));
        num.iter_mut().for_each(|a| *a /= g);
        TorusElement { den: den / g, num }
    }

    pub fn from_rationals(coords: &[Rat]) -> Self {
        let den = coords.iter().fold(1i64, |d, c| d.lcm(c.denom()));
        let nums: Vec<i64> = coords.iter().map(|c| (c * den).to_integer()).collect();
        Self::new(den as u64, &nums)
    }

    pub fn rank(&self) -> usize {
        self.num.len()
    }

    /// Element order: the common denominator.
    pub fn order(&self) -> u64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.den == 1
    }

    pub fn coords(&self) -> Vec<Rat> {
        self.num
            .iter()
            .map(|&a| Rat::new(a as i64, self.den as i64))
            .collect()
    }

    /// Numerators over a multiple `d` of the order.
    pub fn numerators_at(&self, d: u64) -> Vec<i64> {
        assert_eq!(d % self.den, 0, "{d} is not a multiple of {}", self.den);
        let s = d / self.den;
        self.num.iter().map(|&a| (a * s) as i64).collect()
    }

    pub fn add(&self, other: &TorusElement) -> TorusElement {
        let d = self.den.lcm(&other.den);
        let a = self.numerators_at(d);
        let b = other.numerators_at(d);
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        Self::new(d, &s)
    }

    pub fn scale(&self, k: i64) -> TorusElement {
        let s: Vec<i64> = self
            .num
            .iter()
            .map(|&a| (a as i128 * k as i128).rem_euclid(self.den as i128) as i64)
            .collect();
        Self::new(self.den, &s)
    }

    /// `t M` for an integer matrix acting on `Y` from the right.
    pub fn apply(&self, m: &IntMatrix) -> TorusElement {
        let v = m.apply_mod(&self.numerators_at(self.den), self.den as i64);
        Self::new(self.den, &v)
    }

    /// Coordinates as strings, `"1/4"` or `"0"`.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords().iter().map(Rat::to_string).collect()
    }

    pub fn parse_coords<S: AsRef<str>>(coords: &[S]) -> Result<Self> {
        let rats = coords
            .iter()
            .map(|s| {
                let s = s.as_ref().trim();
                let bad = || Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("bad torus coordinate {s:?}"),
                };
                match s.split_once('/') {
                    Some((a, b)) => {
                        let (a, b): (i64, i64) =
                            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
                        if b <= 0 {
                            return Err(bad());
                        }
                        Ok(Rat::new(a, b))
                    }
                    None => s.parse::<i64>().map(Rat::from_integer).map_err(|_| bad()),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rationals(&rats))
    }
}

impl Ord for TorusElement {
    /// Coordinatewise comparison of the representatives in `[0, 1)`.
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.num.iter().zip(&other.num) {
            let x = *a as u128 * other.den as u128;
            let y = *b as u128 * self.den as u128;
            match x.cmp(&y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.num.len().cmp(&other.num.len())
    }
}

impl PartialOrd for TorusElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl FromStr for TorusElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = s.split(',').collect();
        Self::parse_coords(&parts)
    }
}

/// `mu(t)` in `[0, 1)`: the pairing of `omega`-coordinates with coroot
/// coordinates.
pub fn weight_value(mu: &Weight, t: &TorusElement) -> Rat {
    let d = t.order() as i64;
    let s: i64 = mu
        .coeffs()
        .iter()
        .zip(t.numerators_at(t.order()))
        .map(|(a, b)| a * b)
        .sum();
    Rat::new(s.rem_euclid(d), d)
}

/// The twist on `Y` followed by `w`: `t -> t F0^T w_Y`.
pub fn twisted_element(datum: &RootDatum, w: &WeylElement) -> IntMatrix {
    &datum.twist().transpose() * &w.on_y()
}

/// `q F0^T w_Y - I`, the matrix of the fixed point equation on `Y`.
pub fn equation_matrix(datum: &RootDatum, w: &WeylElement, q: u64) -> IntMatrix {
    twisted_element(datum, w)
        .scale(q as i64)
        .sub(&IntMatrix::identity(datum.rank()))
}

/// Frobenius image `t q F0^T`.
pub fn frobenius(datum: &RootDatum, t: &TorusElement, q: u64) -> TorusElement {
    t.apply(&datum.twist().transpose()).scale(q as i64)
}

/// All `t` with `t (q F0 w - 1) = 0`, found from the Smith form
/// `L M R = diag(d)`: the solutions are `s L` with `s_i in (1/d_i) Z`.
pub fn torus_fixed_points(datum: &RootDatum, w: &WeylElement, q: u64) -> Result<Vec<TorusElement>> {
    let m = equation_matrix(datum, w, q);
    let snf = smith_normal_form(&m);
    if snf.diag.iter().any(|&d| d == 0) {
        return Err(Error::SingularEquation);
    }
    let big_d = snf.diag.iter().fold(1i64, |a, &d| a.lcm(&d)) as u64;
    let l = datum.rank();
    let count: u64 = snf.diag.iter().map(|&d| d as u64).product();
    let mut out = Vec::with_capacity(count as usize);
    let mut idx = vec![0i64; l];
    loop {
        let mut v = vec![0i64; l];
        for (i, &k) in idx.iter().enumerate() {
            if k != 0 {
                let s = k * (big_d as i64 / snf.diag[i]);
                for (x, &r) in v.iter_mut().zip(snf.left.row(i)) {
                    *x += s * r;
                }
            }
        }
        out.push(TorusElement::new(big_d, &v));
        // odometer over 0 <= idx_i < d_i
        let mut i = 0;
        loop {
            if i == l {
                out.sort();
                return Ok(out);
            }
            idx[i] += 1;
            if idx[i] < snf.diag[i] {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}
