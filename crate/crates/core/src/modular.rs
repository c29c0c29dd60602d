//! Arithmetic and linear algebra over prime fields `F_l`, used for rank
//! certificates and for solving linear systems with cyclotomic entries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Inverse modulo a prime.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A prime field with a fixed element of exact order `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RootField {
    pub l: u64,
    pub n: u64,
    pub g: u64,
}

/// The first `count` primes `l > lower` with `l = 1 mod n`, each with an
/// element of order `n`.
pub fn root_fields(n: u64, lower: u64, count: usize) -> Vec<RootField> {
    let factors = crate::cyclotomic::prime_factors(n);
    let mut out = vec![];
    let mut k = lower / n + 1;
    while out.len() < count {
        let l = k * n + 1;
        k += 1;
        if !is_prime(l) {
            continue;
        }
        let g = (2..l)
            .map(|a| pow_mod(a, (l - 1) / n, l))
            .find(|&g| factors.iter().all(|&r| pow_mod(g, n / r, l) != 1))
            .expect("a primitive root exists");
        out.push(RootField { l, n, g });
    }
    out
}

/// Rank of a matrix over `F_l`.
pub fn rank_mod(mut rows: Vec<Vec<u64>>, l: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][c], l);
        let pivot_row: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, l)).collect();
        for r in rank + 1..rows.len() {
            let f = rows[r][c];
            if f != 0 {
                for (x, &y) in rows[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x = (*x + l - mul_mod(f, y, l)) % l;
                }
            }
        }
        rows[rank] = pivot_row;
        rank += 1;
    }
    rank
}

/// Inverse of a square matrix over `F_l`.
pub fn inverse_mod(m: &[Vec<u64>], l: u64) -> Option<Vec<Vec<u64>>> {
    let n = m.len();
    let mut a: Vec<Vec<u64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| a[r][c] != 0)?;
        a.swap(c, piv);
        let inv = inv_mod(a[c][c], l);
        for x in a[c].iter_mut() {
            *x = mul_mod(*x, inv, l);
        }
        let pivot_row = a[c].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != c && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + l - mul_mod(f, y, l)) % l;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn mat_mul_mod(a: &[Vec<u64>], b: &[Vec<u64>], l: u64) -> Vec<Vec<u64>> {
    let k = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..k)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0u64, |s, (&x, br)| (s + mul_mod(x, br[j], l)) % l)
                })
                .collect()
        })
        .collect()
}

/// Solves `D B = X` over `F_l` for square invertible `B`.
pub fn solve_right_mod(x: &[Vec<u64>], b: &[Vec<u64>], l: u64) -> Option<Vec<Vec<u64>>> {
    Some(mat_mul_mod(x, &inverse_mod(b, l)?, l))
}

/// The fraction `a/b` with `|a|, b <= sqrt(m/2)` congruent to `r` mod `m`.
pub fn rational_reconstruction(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Chinese remaindering of residues modulo pairwise coprime moduli.
pub fn crt(residues: &[(u64, u64)]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for &(r, l) in residues {
        let lb = BigInt::from(l);
        // x + m * k = r (mod l)
        let mm = (&m).mod_floor(&lb);
        let mm = u64::try_from(&mm).unwrap();
        let xr = u64::try_from(&x.mod_floor(&lb)).unwrap();
        let k = mul_mod((r + l - xr) % l, inv_mod(mm, l), l);
        x += &m * BigInt::from(k);
        m *= lb;
    }
    (x, m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..50).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751));
        assert!(is_prime((1 << 61) - 1));
    }

    #[test]
    fn fields_with_roots() {
        for f in root_fields(80, 1000, 3) {
            assert_eq!(f.l % 80, 1);
            assert_eq!(pow_mod(f.g, 80, f.l), 1);
            assert_ne!(pow_mod(f.g, 40, f.l), 1);
            assert_ne!(pow_mod(f.g, 16, f.l), 1);
        }
    }

    #[test]
    fn rank_and_solve() {
        let l = 101;
        assert_eq!(rank_mod(vec![vec![1, 2], vec![2, 4]], l), 1);
        assert_eq!(rank_mod(vec![vec![1, 2], vec![3, 4]], l), 2);
        let b = vec![vec![1, 1], vec![0, 1]];
        let d = vec![vec![2, 3], vec![5, 7]];
        let x = mat_mul_mod(&d, &b, l);
        assert_eq!(solve_right_mod(&x, &b, l).unwrap(), d);
        assert!(inverse_mod(&[vec![1, 2], vec![2, 4]], l).is_none());
    }

    #[test]
    fn reconstruction() {
        let (x, m) = crt(&[(2, 7), (3, 11)]);
        assert_eq!(m, BigInt::from(77));
        assert_eq!(x, BigInt::from(58));
        let m = BigInt::from(1_000_000_007u64);
        let r = BigInt::from(3) * BigInt::from(inv_mod(7, 1_000_000_007));
        assert_eq!(
            rational_reconstruction(&r, &m),
            Some(BigRational::new(3.into(), 7.into()))
        );
        let neg = (&m - BigInt::from(5)).mod_floor(&m);
        assert_eq!(rational_reconstruction(&neg, &m), Some(BigRational::from_integer((-5).into())));
    }
}
