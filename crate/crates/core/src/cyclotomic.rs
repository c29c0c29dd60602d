//! Exact arithmetic in cyclotomic fields.
//!
//! An element is stored at its minimal conductor `n` as rational
//! coefficients of `1, z, ..., z^(phi(n)-1)` with `z = exp(2 pi i / n)`,
//! reduced modulo the `n`-th cyclotomic polynomial. Equal numbers have
//! equal representations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = vec![];
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    prime_factors(n).iter().fold(n, |acc, p| acc / p * (p - 1))
}

fn poly_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<i64>> {
    if let Some(p) = poly_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    let arc = Arc::new(num);
    poly_cache().lock().unwrap().insert(n, arc.clone());
    arc
}

/// Quotient of integer polynomials when the divisor is monic and divides.
fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![0i64; num.len() - dd];
    for k in (0..q.len()).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (i, &b) in den.iter().enumerate() {
            rem[k + i] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// Reduces a coefficient vector in powers of `z_n` modulo `Phi_n`.
fn reduce(n: u64, mut v: Vec<BigRational>) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    for top in (deg..v.len()).rev() {
        if v[top].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut v[top], BigRational::zero());
        for (i, &b) in phi[..deg].iter().enumerate() {
            if b != 0 {
                v[top - deg + i] -= &c * BigRational::from_integer(BigInt::from(b));
            }
        }
    }
    v.truncate(deg);
    v.resize(deg, BigRational::zero());
    v
}

fn modinv(a: u64, m: u64) -> u64 {
    let e = (a as i64).extended_gcd(&(m as i64));
    debug_assert_eq!(e.gcd, 1);
    e.x.rem_euclid(m as i64) as u64
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    n: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Cyclotomic {
            n: 1,
            coeffs: vec![BigRational::zero()],
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(k: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Cyclotomic { n: 1, coeffs: vec![r] }
    }

    /// `z_n^e`.
    pub fn zeta(n: u64, e: i64) -> Self {
        assert!(n > 0);
        let mut v = vec![BigRational::zero(); n as usize];
        v[e.rem_euclid(n as i64) as usize] = BigRational::one();
        Self::from_power_vector(n, v)
    }

    /// `sum_e v[e] z_n^e` for a vector of length `n`.
    pub fn from_power_vector(n: u64, v: Vec<BigRational>) -> Self {
        assert_eq!(v.len() as u64, n);
        let coeffs = reduce(n, v);
        Self::canonical(n, coeffs)
    }

    /// `sum c z_n^e` over `(e, c)` pairs; exponents taken mod `n`.
    pub fn from_exponents(n: u64, terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut v = vec![BigRational::zero(); n as usize];
        for (e, c) in terms {
            v[e.rem_euclid(n as i64) as usize] += c;
        }
        Self::from_power_vector(n, v)
    }

    /// Integer counts of each power of `z_n`.
    pub fn from_counts(n: u64, counts: &[i64]) -> Self {
        assert_eq!(counts.len() as u64, n);
        Self::from_power_vector(
            n,
            counts
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    fn canonical(mut n: u64, mut coeffs: Vec<BigRational>) -> Self {
        if coeffs.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        while let Some((m, c)) = descend(n, &coeffs) {
            n = m;
            coeffs = c;
        }
        Cyclotomic { n, coeffs }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    /// Canonical coefficients of `1, z, ..., z^(phi(n)-1)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Nonzero coefficients keyed by exponent.
    pub fn terms(&self) -> BTreeMap<u64, BigRational> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as u64, c.clone()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.n == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.n == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        self.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    /// Algebraic integer test (the power basis is an integral basis).
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Coefficients as a length-`m` power vector, `n | m`.
    fn embed(&self, m: u64) -> Vec<BigRational> {
        assert_eq!(m % self.n, 0);
        let s = (m / self.n) as usize;
        let mut v = vec![BigRational::zero(); m as usize];
        for (e, c) in self.coeffs.iter().enumerate() {
            v[e * s] = c.clone();
        }
        v
    }

    /// `z_n -> z_n^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.n as i64;
        if k.gcd(&n) != 1 {
            return Err(Error::NotCoprime { k, n: self.n });
        }
        Ok(Self::from_exponents(
            self.n,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as i64 * k, c.clone())),
        ))
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        self.galois(-1).unwrap()
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.to_rational() {
            return Some(Self::from_rational(r.recip()));
        }
        // x^-1 = (product of the other conjugates) / norm
        let n = self.n as i64;
        let mut others = Self::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = &others * &self.galois(k).unwrap();
            }
        }
        let norm = (self * &others)
            .to_rational()
            .expect("norm is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Image under `z_N -> g` in `F_l`, where `g` has order `N` and the
    /// conductor divides `N`. `None` if a denominator vanishes mod `l`.
    pub fn reduce_mod(&self, l: u64, big_n: u64, g: u64) -> Option<u64> {
        assert_eq!(big_n % self.n, 0);
        let lb = BigInt::from(l);
        let step = crate::modular::pow_mod(g, big_n / self.n, l);
        let mut acc = 0u64;
        let mut z = 1u64;
        for c in &self.coeffs {
            if !c.is_zero() {
                let num = c.numer().mod_floor(&lb).to_u64().unwrap();
                let den = c.denom().mod_floor(&lb).to_u64().unwrap();
                if den == 0 {
                    return None;
                }
                let v = crate::modular::mul_mod(num, crate::modular::inv_mod(den, l), l);
                acc = (acc + crate::modular::mul_mod(v, z, l)) % l;
            }
            z = crate::modular::mul_mod(z, step, l);
        }
        Some(acc)
    }

    /// Text form `c0 + c1*z(n)^1 + ...`; rationals print bare.
    pub fn to_text(&self) -> String {
        if self.is_rational() {
            return self.coeffs[0].to_string();
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let term = if e == 0 {
                c.abs().to_string()
            } else if c.abs().is_one() {
                format!("z({})^{e}", self.n)
            } else {
                format!("{}*z({})^{e}", c.abs(), self.n)
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }
}

/// One step towards the minimal conductor, if possible.
fn descend(n: u64, coeffs: &[BigRational]) -> Option<(u64, Vec<BigRational>)> {
    for r in prime_factors(n) {
        let m = n / r;
        if m % r == 0 {
            // Phi_n(x) = Phi_m(x^r): the subfield is spanned by powers z^(r a)
            if coeffs.iter().enumerate().all(|(e, c)| e as u64 % r == 0 || c.is_zero()) {
                return Some((m, coeffs.iter().step_by(r as usize).cloned().collect()));
            }
            continue;
        }
        // r exactly divides n: project with the normalised relative trace
        let u = if m == 1 { 0 } else { modinv(r % m, m) };
        let off = BigRational::new(BigInt::from(-1), BigInt::from(r - 1));
        let mut proj = vec![BigRational::zero(); m as usize];
        for (e, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let a = if m == 1 { 0 } else { (e as u64 * u % m) as usize };
            if e as u64 % r == 0 {
                proj[a] += c;
            } else {
                proj[a] += c * &off;
            }
        }
        let y = reduce(m, proj);
        let mut back = vec![BigRational::zero(); n as usize];
        for (a, c) in y.iter().enumerate() {
            back[a * r as usize] = c.clone();
        }
        if reduce(n, back) == coeffs {
            return Some((m, y));
        }
    }
    None
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({})", self.to_text())
    }
}

impl Default for Cyclotomic {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for Cyclotomic {
    fn from(k: i64) -> Self {
        Self::from_integer(k)
    }
}

fn combine(a: &Cyclotomic, b: &Cyclotomic, sign: i32) -> Cyclotomic {
    let m = a.n.lcm(&b.n);
    let mut v = a.embed(m);
    let s = (m / b.n) as usize;
    for (e, c) in b.coeffs.iter().enumerate() {
        if sign > 0 {
            v[e * s] += c;
        } else {
            v[e * s] -= c;
        }
    }
    Cyclotomic::from_power_vector(m, v)
}

impl Add for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        combine(self, rhs, 1)
    }
}

impl Sub for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        combine(self, rhs, -1)
    }
}

impl Mul for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.is_rational() {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.is_rational() {
            return self.scale(&rhs.coeffs[0]);
        }
        let m = self.n.lcm(&rhs.n);
        let (sa, sb) = ((m / self.n) as usize, (m / rhs.n) as usize);
        let mut v = vec![BigRational::zero(); m as usize];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    v[(i * sa + j * sb) % m as usize] += x * y;
                }
            }
        }
        Cyclotomic::from_power_vector(m, v)
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Cyclotomic>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| &a + &b)
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let d: BigInt = b.trim().parse().ok()?;
            let a: BigInt = a.trim().parse().ok()?;
            (!d.is_zero()).then(|| BigRational::new(a, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Machine form `[n, {"e": "c", ...}]`.
impl Serialize for Cyclotomic {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: BTreeMap<u64, String> = self
            .terms()
            .into_iter()
            .map(|(e, c)| (e, c.to_string()))
            .collect();
        (self.n, terms).serialize(s)
    }
}

/// Accepts the machine form, and plain integers or rational strings as
/// shorthand for rational values.
impl<'de> Deserialize<'de> for Cyclotomic {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let coeff = |v: &serde_json::Value| -> Option<BigRational> {
            match v {
                serde_json::Value::String(s) => parse_rational(s),
                serde_json::Value::Number(x) => x.as_i64().map(|k| BigRational::from_integer(k.into())),
                _ => None,
            }
        };
        let v = serde_json::Value::deserialize(d)?;
        let serde_json::Value::Array(parts) = &v else {
            return coeff(&v)
                .map(Cyclotomic::from_rational)
                .ok_or_else(|| D::Error::custom(format!("bad cyclotomic number {v}")));
        };
        let (n, terms) = match parts.as_slice() {
            [serde_json::Value::Number(n), serde_json::Value::Object(terms)] => (n, terms),
            _ => return Err(D::Error::custom(format!("bad cyclotomic number {v}"))),
        };
        let n = n
            .as_u64()
            .filter(|&n| n > 0)
            .ok_or_else(|| D::Error::custom("conductor must be a positive integer"))?;
        let mut parsed = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent {e:?}")))?;
            let c = coeff(c).ok_or_else(|| D::Error::custom(format!("bad coefficient {c}")))?;
            parsed.push((e, c));
        }
        Ok(Cyclotomic::from_exponents(n, parsed))
    }
}
