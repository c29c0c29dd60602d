//! Cartan matrices of finite type: construction by Dynkin type and
//! classification of arbitrary matrices.
//!
//! Convention: entry `(i, j)` is `<alpha_j, alpha_i^vee>`. Node numbering
//! follows CHEVIE: `D_n` has nodes 1 and 2 attached to node 3 and the chain
//! `3 - 4 - ... - n`; `F4` is `1 - 2 => 3 - 4` with nodes 1, 2 long.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple component `X_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::NotFiniteType(format!("{family:?}{rank}")))
        }
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Squared root lengths (short roots have length 2) and edges of the
    /// diagram in standard numbering.
    fn diagram(&self) -> (Vec<i64>, Vec<(usize, usize)>) {
        let n = self.rank;
        let chain = |k: usize| (0..k.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
        match self.family {
            Family::A => (vec![2; n], chain(n)),
            Family::B => {
                let mut len = vec![4; n];
                len[n - 1] = 2;
                (len, chain(n))
            }
            Family::C => {
                let mut len = vec![2; n];
                len[n - 1] = 4;
                (len, chain(n))
            }
            Family::D => {
                let mut edges = vec![(0, 2), (1, 2)];
                edges.extend((2..n - 1).map(|i| (i, i + 1)));
                (vec![2; n], edges)
            }
            Family::E => {
                let mut edges = vec![(0, 2), (1, 3), (2, 3)];
                edges.extend((3..n - 1).map(|i| (i, i + 1)));
                (vec![2; n], edges)
            }
            Family::F => (vec![4, 4, 2, 2], chain(4)),
            Family::G => (vec![2, 6], chain(2)),
        }
    }

    pub fn cartan(&self) -> IntMatrix {
        let (len, edges) = self.diagram();
        let n = self.rank;
        let mut c = IntMatrix::scalar(n, 2);
        for &(i, j) in &edges {
            // (alpha_i, alpha_j) = -max(|alpha_i|^2, |alpha_j|^2) / 2
            let ip = -len[i].max(len[j]) / 2;
            c.set(i, j, 2 * ip / len[i]);
            c.set(j, i, 2 * ip / len[j]);
        }
        c
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(Error::NotFiniteType(s.to_string())),
        };
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::NotFiniteType(s.to_string()))?;
        SimpleType::new(family, rank)
    }
}

/// Parses `"D4"` or `"A2+A1"` into the block-diagonal Cartan matrix.
pub fn cartan_from_type(name: &str) -> Result<IntMatrix> {
    let parts: Vec<SimpleType> = name.split('+').map(str::parse).collect::<Result<_>>()?;
    let n: usize = parts.iter().map(|t| t.rank).sum();
    let mut c = IntMatrix::zeros(n, n);
    let mut off = 0;
    for t in parts {
        let block = t.cartan();
        for i in 0..t.rank {
            for j in 0..t.rank {
                c.set(off + i, off + j, block.get(i, j));
            }
        }
        off += t.rank;
    }
    Ok(c)
}

/// Result of classifying a Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    /// Components in order of their smallest node index.
    pub components: Vec<(SimpleType, Vec<usize>)>,
    /// Squared root lengths, scaled so the shortest root in each
    /// component has length 2.
    pub root_lengths: Vec<i64>,
}

impl Classification {
    pub fn weyl_order(&self) -> u64 {
        self.components.iter().map(|(t, _)| t.weyl_order()).product()
    }

    /// Type string with components sorted, e.g. `"A1+A3"`; empty for rank 0.
    pub fn type_name(&self) -> String {
        let mut names: Vec<SimpleType> = self.components.iter().map(|(t, _)| *t).collect();
        names.sort();
        names.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
    }
}

fn symmetrizer(c: &IntMatrix, comp: &[usize]) -> Result<Vec<Rat>> {
    // C_ij L_i = C_ji L_j
    let n = c.nrows();
    let mut len: Vec<Option<Rat>> = vec![None; n];
    len[comp[0]] = Some(Rat::from_integer(1));
    let mut stack = vec![comp[0]];
    while let Some(i) = stack.pop() {
        let li = len[i].unwrap();
        for &j in comp {
            if i == j || c.get(i, j) == 0 {
                continue;
            }
            let lj = li * Rat::new(c.get(i, j), c.get(j, i));
            match len[j] {
                None => {
                    len[j] = Some(lj);
                    stack.push(j);
                }
                Some(old) if old != lj => {
                    return Err(Error::NotFiniteType("matrix is not symmetrizable".into()));
                }
                Some(_) => {}
            }
        }
    }
    Ok(comp.iter().map(|&i| len[i].unwrap()).collect())
}

fn positive_definite(m: &[Vec<Rat>]) -> bool {
    let n = m.len();
    let mut a = m.to_vec();
    for k in 0..n {
        if !a[k][k].is_positive() {
            return false;
        }
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            for j in k..n {
                let v = a[k][j];
                a[i][j] -= f * v;
            }
        }
    }
    true
}

fn identify(c: &IntMatrix, comp: &[usize], len: &[Rat]) -> Result<SimpleType> {
    let n = comp.len();
    let fail = || Error::NotFiniteType(format!("unrecognised component on nodes {comp:?}"));
    let mut degree = vec![0usize; n];
    let mut multi = Vec::new();
    let mut edges = 0;
    for a in 0..n {
        for b in a + 1..n {
            let prod = c.get(comp[a], comp[b]) * c.get(comp[b], comp[a]);
            if prod != 0 {
                edges += 1;
                degree[a] += 1;
                degree[b] += 1;
                if prod > 1 {
                    multi.push((a, b, prod));
                }
            }
        }
    }
    if edges != n - 1 {
        return Err(fail());
    }
    let family;
    match multi.as_slice() {
        [] => {
            let branch: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();
            match branch.as_slice() {
                [] => family = Family::A,
                [b] if degree[*b] == 3 => {
                    // arm lengths from the branch node
                    let mut arms = Vec::new();
                    for start in (0..n).filter(|&j| c.get(comp[*b], comp[j]) != 0 && j != *b) {
                        let (mut prev, mut cur, mut l) = (*b, start, 1);
                        loop {
                            let next = (0..n).find(|&k| {
                                k != prev && k != cur && c.get(comp[cur], comp[k]) != 0
                            });
                            match next {
                                Some(k) => {
                                    prev = cur;
                                    cur = k;
                                    l += 1;
                                }
                                None => break,
                            }
                        }
                        arms.push(l);
                    }
                    arms.sort_unstable();
                    family = match arms.as_slice() {
                        [1, 1, _] => Family::D,
                        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Family::E,
                        _ => return Err(fail()),
                    };
                }
                _ => return Err(fail()),
            }
        }
        [(a, b, prod)] => {
            if degree.iter().any(|&d| d > 2) {
                return Err(fail());
            }
            match (prod, n) {
                (3, 2) => family = Family::G,
                (2, 2) => family = Family::B,
                (2, _) => {
                    let (a, b) = (*a, *b);
                    if degree[a] == 1 || degree[b] == 1 {
                        let (end, other) = if degree[a] == 1 { (a, b) } else { (b, a) };
                        family = if len[end] < len[other] {
                            Family::B
                        } else {
                            Family::C
                        };
                    } else if n == 4 {
                        family = Family::F;
                    } else {
                        return Err(fail());
                    }
                }
                _ => return Err(fail()),
            }
        }
        _ => return Err(fail()),
    }
    SimpleType::new(family, n)
}

/// Validates `c` as a Cartan matrix of finite type and classifies it.
pub fn classify(c: &IntMatrix) -> Result<Classification> {
    if !c.is_square() {
        return Err(Error::NotFiniteType("matrix is not square".into()));
    }
    let n = c.nrows();
    for i in 0..n {
        if c.get(i, i) != 2 {
            return Err(Error::NotFiniteType(format!("diagonal entry {i} is not 2")));
        }
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (c.get(i, j), c.get(j, i));
            if a > 0 || (a == 0) != (b == 0) || !(0..=3).contains(&(a * b)) {
                return Err(Error::NotFiniteType(format!(
                    "entries ({i},{j}) and ({j},{i}) are not admissible"
                )));
            }
        }
    }
    // connected components
    let mut comp_of = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut nodes = vec![s];
        comp_of[s] = id;
        let mut k = 0;
        while k < nodes.len() {
            let i = nodes[k];
            for j in 0..n {
                if comp_of[j] == usize::MAX && c.get(i, j) != 0 {
                    comp_of[j] = id;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        nodes.sort_unstable();
        comps.push(nodes);
    }
    let mut root_lengths = vec![0i64; n];
    let mut components = Vec::new();
    for comp in comps {
        let len = symmetrizer(c, &comp)?;
        // symmetrised form B_ij = L_i C_ij / 2 must be positive definite
        let sym: Vec<Vec<Rat>> = comp
            .iter()
            .enumerate()
            .map(|(a, &i)| {
                comp.iter()
                    .map(|&j| len[a] * Rat::from_integer(c.get(i, j)))
                    .collect()
            })
            .collect();
        if !positive_definite(&sym) {
            return Err(Error::NotFiniteType("form is not positive definite".into()));
        }
        let min = *len.iter().min().unwrap();
        for (a, &i) in comp.iter().enumerate() {
            let l = len[a] / min * Rat::from_integer(2);
            if !l.is_integer() || l.is_zero() {
                return Err(Error::NotFiniteType("root lengths are not integral".into()));
            }
            root_lengths[i] = l.to_integer();
        }
        let t = identify(c, &comp, &len)?;
        components.push((t, comp));
    }
    Ok(Classification {
        components,
        root_lengths,
    })
}
