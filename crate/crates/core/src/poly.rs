//! Integer polynomials in one variable, constant term first.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::cyclotomic::{cyclotomic_polynomial, euler_phi};
use crate::matrix::{IntMatrix, Rat};

pub type Poly = Vec<BigInt>;

pub fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(BigInt::zero());
    }
    p
}

pub fn from_i64(c: &[i64]) -> Poly {
    trim(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn degree(p: &Poly) -> usize {
    trim(p.clone()).len() - 1
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    trim(out)
}

pub fn scale(a: &Poly, s: &BigInt) -> Poly {
    trim(a.iter().map(|x| x * s).collect())
}

/// Quotient and remainder by a divisor whose leading coefficient divides
/// every step; `None` when the division leaves the integers.
pub fn div_rem(num: &Poly, den: &Poly) -> Option<(Poly, Poly)> {
    let den = trim(den.clone());
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero(), "division by the zero polynomial");
    let mut rem = trim(num.clone());
    if rem.len() <= dd {
        return Some((vec![BigInt::zero()], rem));
    }
    let mut q = vec![BigInt::zero(); rem.len() - dd];
    for k in (0..q.len()).rev() {
        let c = &rem[k + dd];
        if c.is_zero() {
            continue;
        }
        let (qc, r) = c.div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (i, b) in den.iter().enumerate() {
            rem[k + i] -= &qc * b;
        }
        q[k] = qc;
    }
    Some((trim(q), trim(rem)))
}

/// Exact quotient, or `None` if `den` does not divide `num` over `Z`.
pub fn div_exact(num: &Poly, den: &Poly) -> Option<Poly> {
    let (q, r) = div_rem(num, den)?;
    r.iter().all(Zero::is_zero).then_some(q)
}

pub fn eval(p: &Poly, x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `q^deg(p) * p(1/q)`: the coefficients read in reverse at `q`.
pub fn eval_reversed(p: &Poly, q: &BigInt) -> BigInt {
    let p = trim(p.clone());
    p.iter().fold(BigInt::zero(), |acc, c| acc * q + c)
}

/// Characteristic polynomial `det(x I - A)` by Faddeev-LeVerrier.
pub fn charpoly(a: &IntMatrix) -> Poly {
    let n = a.nrows();
    let big = |m: &IntMatrix| -> Vec<Vec<BigInt>> {
        m.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect()
    };
    let am = big(a);
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = BigInt::zero();
                for t in 0..n {
                    s += &am[i][t] * &m[t][j];
                }
                next[i][j] = s;
            }
            next[i][i] += &c[n - k + 1];
        }
        m = next;
        let mut tr = BigInt::zero();
        for i in 0..n {
            for t in 0..n {
                tr += &am[i][t] * &m[t][i];
            }
        }
        c[n - k] = -(tr / BigInt::from(k));
    }
    c
}

/// Characteristic polynomial of a rational matrix, monic, by the same
/// recursion.
pub fn charpoly_rational(a: &[Vec<Rat>]) -> Vec<Rat> {
    let n = a.len();
    let mut c = vec![Rat::from_integer(0); n + 1];
    c[n] = Rat::from_integer(1);
    let mut m = vec![vec![Rat::from_integer(0); n]; n];
    for k in 1..=n {
        let mut next = vec![vec![Rat::from_integer(0); n]; n];
        for i in 0..n {
            for j in 0..n {
                next[i][j] = (0..n).map(|t| a[i][t] * m[t][j]).sum();
            }
            next[i][i] += c[n - k + 1];
        }
        m = next;
        let tr: Rat = (0..n).map(|i| (0..n).map(|t| a[i][t] * m[t][i]).sum::<Rat>()).sum();
        c[n - k] = -tr / Rat::from_integer(k as i64);
    }
    c
}

/// `det(I - t A)`: the characteristic polynomial with reversed coefficients.
pub fn det_one_minus(a: &IntMatrix) -> Poly {
    let mut c = charpoly(a);
    c.reverse();
    trim(c)
}

/// `1 - t` for `k = 1`, otherwise `Phi_k(t)`; each has constant term 1.
pub fn unit_cyclotomic(k: u64) -> Poly {
    if k == 1 {
        from_i64(&[1, -1])
    } else {
        from_i64(&cyclotomic_polynomial(k))
    }
}

/// Factors a product of cyclotomic polynomials with constant term 1 as
/// exponents of [`unit_cyclotomic`]. `None` if something is left over.
pub fn cyclotomic_factors(p: &Poly) -> Option<Vec<(u64, u32)>> {
    let mut rest = trim(p.clone());
    let d = degree(&rest) as u64;
    let mut out = vec![];
    // phi(k) >= sqrt(k / 2), so no factor of degree <= d has k > 2 d^2
    for k in 1..=2 * d * d + 2 {
        if euler_phi(k) > degree(&rest) as u64 {
            continue;
        }
        let f = unit_cyclotomic(k);
        let mut e = 0;
        while let Some(q) = div_exact(&rest, &f) {
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((k, e));
        }
    }
    (rest == vec![BigInt::one()]).then_some(out)
}

/// Product of unit cyclotomic factors.
pub fn from_factors(f: &[(u64, u32)]) -> Poly {
    f.iter().fold(vec![BigInt::one()], |acc, &(k, e)| {
        (0..e).fold(acc, |a, _| mul(&a, &unit_cyclotomic(k)))
    })
}

/// Human-readable `Phi_k(q)`.
pub fn cyclotomic_in_q(k: u64) -> String {
    match k {
        1 => "q-1".into(),
        2 => "q+1".into(),
        3 => "q^2+q+1".into(),
        4 => "q^2+1".into(),
        6 => "q^2-q+1".into(),
        _ => {
            let c = cyclotomic_polynomial(k);
            let mut terms = vec![];
            for (i, &x) in c.iter().enumerate().rev() {
                if x == 0 {
                    continue;
                }
                let mono = match i {
                    0 => String::new(),
                    1 => "q".into(),
                    _ => format!("q^{i}"),
                };
                let mag = x.abs();
                let body = if mono.is_empty() {
                    mag.to_string()
                } else if mag == 1 {
                    mono
                } else {
                    format!("{mag}{mono}")
                };
                let sign = if x < 0 { "-" } else if terms.is_empty() { "" } else { "+" };
                terms.push(format!("{sign}{body}"));
            }
            terms.concat()
        }
    }
}
