//! Simply-connected root data.
//!
//! Weights live in `X` and are written in the basis of fundamental weights;
//! cocharacters live in `Y` and are written in the basis of simple coroots.
//! Everything uses row vectors: a group element `M` acting on `X` sends `x`
//! to `x * M`, and the same element acts on `Y` by the transpose.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};

use crate::cartan::{self, Classification};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Rat};

/// Default bound on `|W|` for explicit enumeration.
pub const DEFAULT_WEYL_BOUND: usize = 1_000_000;

/// An element of `X` in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coeffs: Vec<i64>) -> Self {
        Weight(coeffs)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&a| a >= 0)
    }

    /// Dominant with every coordinate below `b`.
    pub fn is_restricted(&self, b: i64) -> bool {
        self.0.iter().all(|&a| (0..b).contains(&a))
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * s).collect())
    }

    pub fn apply(&self, m: &IntMatrix) -> Weight {
        Weight(m.apply(&self.0))
    }

    /// Comma separated coordinates, as used on the command line and in files.
    pub fn to_csv(&self) -> String {
        self.0.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_csv())
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let coeffs = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>().map_err(|_| Error::Parse {
                    line: 1,
                    column: 1,
                    message: format!("bad weight coordinate {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight(coeffs))
    }
}

/// An element of `W` as a matrix acting on `X`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct WeylElement {
    pub matrix: IntMatrix,
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            matrix: IntMatrix::identity(rank),
        }
    }

    /// The matrix of the same element acting on `Y`.
    pub fn on_y(&self) -> IntMatrix {
        self.matrix.transpose()
    }

    pub fn act(&self, w: &Weight) -> Weight {
        w.apply(&self.matrix)
    }

    /// `self` followed by `other` (right action).
    pub fn then(&self, other: &WeylElement) -> WeylElement {
        WeylElement {
            matrix: &self.matrix * &other.matrix,
        }
    }
}

/// A Frobenius twist given by a permutation of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TwistSpec {
    /// 1-based images of the simple roots.
    Permutation(Vec<usize>),
    Matrix(IntMatrix),
}

#[derive(Clone)]
pub struct RootDatum {
    rank: usize,
    cartan: IntMatrix,
    /// Rows are the simple roots in the fundamental-weight basis.
    simple_roots: IntMatrix,
    classification: Classification,
    /// 0-based image of each simple root under the twist.
    twist_perm: Vec<usize>,
    twist: IntMatrix,
    reflections: Vec<IntMatrix>,
    positive_roots: Vec<Weight>,
    /// Positive coroots in the simple-coroot basis, paired with `positive_roots`.
    positive_coroots: Vec<Vec<i64>>,
    root_index: HashMap<Weight, usize>,
    cartan_inverse: Vec<Vec<Rat>>,
    weyl_order: u64,
    /// `|W_J|` for every subset `J` of nodes, indexed by bitmask.
    parabolic_orders: Vec<u64>,
}

impl fmt::Debug for RootDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RootDatum")
            .field("type", &self.type_name())
            .field("twist", &self.twist_perm)
            .finish()
    }
}

impl RootDatum {
    /// Builds the datum for a Cartan matrix (entry `(i, j)` equal to
    /// `<alpha_j, alpha_i^vee>`) and a twist.
    pub fn new(cartan: IntMatrix, twist: &TwistSpec) -> Result<Self> {
        let classification = cartan::classify(&cartan)?;
        let rank = cartan.nrows();
        let simple_roots = cartan.transpose();
        let twist_perm = match twist {
            TwistSpec::Permutation(p) => {
                if p.len() != rank {
                    return Err(Error::TwistIncompatible(format!(
                        "permutation has length {}, rank is {rank}",
                        p.len()
                    )));
                }
                let perm: Vec<usize> = p.iter().map(|&i| i.wrapping_sub(1)).collect();
                let mut seen = vec![false; rank];
                for &i in &perm {
                    if i >= rank || std::mem::replace(&mut seen[i], true) {
                        return Err(Error::TwistIncompatible(format!("{p:?} is not a permutation")));
                    }
                }
                perm
            }
            TwistSpec::Matrix(m) => perm_of_matrix(m, rank)?,
        };
        for i in 0..rank {
            for j in 0..rank {
                if cartan.get(twist_perm[i], twist_perm[j]) != cartan.get(i, j) {
                    return Err(Error::TwistIncompatible(
                        "twist does not preserve the Cartan matrix".into(),
                    ));
                }
            }
        }
        let mut twist_m = IntMatrix::zeros(rank, rank);
        for (i, &j) in twist_perm.iter().enumerate() {
            twist_m.set(i, j, 1);
        }
        let reflections: Vec<IntMatrix> = (0..rank)
            .map(|i| {
                let mut s = IntMatrix::identity(rank);
                for j in 0..rank {
                    s.set(i, j, i64::from(i == j) - simple_roots.get(i, j));
                }
                s
            })
            .collect();
        let cartan_inverse = simple_roots
            .inverse_rational()
            .ok_or_else(|| Error::NotFiniteType("singular Cartan matrix".into()))?;

        let mut datum = RootDatum {
            rank,
            cartan,
            simple_roots,
            classification,
            twist_perm,
            twist: twist_m,
            reflections,
            positive_roots: Vec::new(),
            positive_coroots: Vec::new(),
            root_index: HashMap::new(),
            cartan_inverse,
            weyl_order: 0,
            parabolic_orders: Vec::new(),
        };
        datum.weyl_order = datum.classification.weyl_order();
        datum.close_roots();
        datum.parabolic_orders = (0..1usize << rank)
            .map(|mask| datum.parabolic_order_by_type(mask))
            .collect();
        Ok(datum)
    }

    /// Datum of a named type (`"D4"`, `"A2+A1"`) with a 1-based permutation twist.
    pub fn from_type(name: &str, twist: Option<Vec<usize>>) -> Result<Self> {
        let cartan = cartan::cartan_from_type(name)?;
        let n = cartan.nrows();
        let perm = twist.unwrap_or_else(|| (1..=n).collect());
        Self::new(cartan, &TwistSpec::Permutation(perm))
    }

    fn close_roots(&mut self) {
        let l = self.rank;
        let mut roots: Vec<(Weight, Vec<i64>)> = Vec::new();
        let mut seen: HashSet<Weight> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            let r = Weight(self.simple_roots.row(i).to_vec());
            let mut co = vec![0; l];
            co[i] = 1;
            if seen.insert(r.clone()) {
                queue.push_back((r, co));
            }
        }
        while let Some((r, co)) = queue.pop_front() {
            for (i, s) in self.reflections.iter().enumerate() {
                let r2 = r.apply(s);
                if seen.contains(&r2) {
                    continue;
                }
                // s_i^vee on Y: y - <alpha_i, y> alpha_i^vee
                let pairing: i64 = (0..l).map(|j| self.simple_roots.get(i, j) * co[j]).sum();
                let mut co2 = co.clone();
                co2[i] -= pairing;
                seen.insert(r2.clone());
                queue.push_back((r2, co2));
            }
            roots.push((r, co));
        }
        let mut positive: Vec<(Weight, Vec<i64>)> = roots
            .into_iter()
            .filter(|(r, _)| {
                let c = self.weight_to_root_basis(r);
                c.iter().all(|x| !x.is_negative()) && c.iter().any(|x| !x.is_zero())
            })
            .collect();
        positive.sort_by_key(|(r, _)| {
            let h: Rat = self.weight_to_root_basis(r).into_iter().sum();
            (h, std::cmp::Reverse(r.clone()))
        });
        self.root_index = positive
            .iter()
            .enumerate()
            .flat_map(|(k, (r, _))| [(r.clone(), 2 * k), (r.scale(-1), 2 * k + 1)])
            .collect();
        self.positive_coroots = positive.iter().map(|(_, c)| c.clone()).collect();
        self.positive_roots = positive.into_iter().map(|(r, _)| r).collect();
    }

    fn parabolic_order_by_type(&self, mask: usize) -> u64 {
        let nodes: Vec<usize> = (0..self.rank).filter(|i| mask >> i & 1 == 1).collect();
        if nodes.is_empty() {
            return 1;
        }
        let sub = IntMatrix::from_rows(
            &nodes
                .iter()
                .map(|&i| nodes.iter().map(|&j| self.cartan.get(i, j)).collect())
                .collect::<Vec<_>>(),
        );
        cartan::classify(&sub)
            .expect("principal submatrix of a finite-type Cartan matrix")
            .weyl_order()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    /// Matrix whose rows are the simple roots in the fundamental-weight basis.
    pub fn simple_roots(&self) -> &IntMatrix {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        Weight(self.simple_roots.row(i).to_vec())
    }

    /// The coroot matrix, always the identity for simply-connected data.
    pub fn coroot_matrix(&self) -> IntMatrix {
        IntMatrix::identity(self.rank)
    }

    pub fn classification(&self) -> &Classification {
        &self.classification
    }

    pub fn type_name(&self) -> String {
        self.classification.type_name()
    }

    /// Twist matrix acting on `X`: `omega_i -> omega_{pi(i)}`.
    pub fn twist(&self) -> &IntMatrix {
        &self.twist
    }

    /// 0-based twist permutation.
    pub fn twist_perm(&self) -> &[usize] {
        &self.twist_perm
    }

    pub fn twist_is_trivial(&self) -> bool {
        self.twist_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// The twist as a 1-based comma separated permutation.
    pub fn twist_csv(&self) -> String {
        self.twist_perm
            .iter()
            .map(|i| (i + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn reflections(&self) -> &[IntMatrix] {
        &self.reflections
    }

    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[Vec<i64>] {
        &self.positive_coroots
    }

    /// All roots, positive ones first then their negatives.
    pub fn roots(&self) -> Vec<Weight> {
        let mut all = self.positive_roots.clone();
        all.extend(self.positive_roots.iter().map(|r| r.scale(-1)));
        all
    }

    pub fn is_root(&self, w: &Weight) -> bool {
        self.root_index.contains_key(w)
    }

    /// Coroot (in the simple-coroot basis) of any root.
    pub fn coroot_of(&self, root: &Weight) -> Option<Vec<i64>> {
        self.root_index.get(root).map(|&k| {
            let c = &self.positive_coroots[k / 2];
            if k % 2 == 0 {
                c.clone()
            } else {
                c.iter().map(|x| -x).collect()
            }
        })
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn weyl_order(&self) -> u64 {
        self.weyl_order
    }

    /// `|W_J|` for the parabolic subgroup generated by the nodes in `mask`.
    pub fn parabolic_order(&self, mask: usize) -> u64 {
        self.parabolic_orders[mask]
    }

    /// Coordinates `c` with `weight = sum_i c_i alpha_i`.
    pub fn weight_to_root_basis(&self, weight: &Weight) -> Vec<Rat> {
        let l = self.rank;
        (0..l)
            .map(|j| {
                (0..l)
                    .map(|i| Rat::from_integer(weight.0[i]) * self.cartan_inverse[i][j])
                    .sum()
            })
            .collect()
    }

    /// Inverse of [`weight_to_root_basis`](Self::weight_to_root_basis) for
    /// integral root-basis coordinates.
    pub fn root_basis_to_weight(&self, coords: &[i64]) -> Weight {
        Weight(self.simple_roots.apply(coords))
    }

    /// `lambda >= mu` in the dominance order.
    pub fn dominates(&self, lambda: &Weight, mu: &Weight) -> bool {
        self.weight_to_root_basis(&lambda.sub(mu))
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Sum of root-basis coordinates.
    pub fn height(&self, weight: &Weight) -> Rat {
        self.weight_to_root_basis(weight).into_iter().sum()
    }

    /// Applies `s_i` to a weight without building matrices.
    pub fn reflect(&self, weight: &mut [i64], i: usize) {
        let a = weight[i];
        if a != 0 {
            for (x, &r) in weight.iter_mut().zip(self.simple_roots.row(i)) {
                *x -= a * r;
            }
        }
    }

    /// Applies `s_i^vee` to a vector of rationals over a common denominator
    /// `n`: only coordinate `i` changes.
    pub fn reflect_y_mod(&self, y: &mut [i64], i: usize, n: i64) {
        let pairing: i64 = self
            .simple_roots
            .row(i)
            .iter()
            .zip(y.iter())
            .map(|(a, b)| a * b)
            .sum();
        y[i] = (y[i] - pairing).rem_euclid(n);
    }

    /// Complete enumeration of `W` as matrices on `X`.
    pub fn weyl_elements(&self, bound: usize) -> Result<Vec<WeylElement>> {
        if self.weyl_order > bound as u64 {
            return Err(Error::GroupTooLarge { bound });
        }
        Ok(closure(&self.reflections, self.rank, bound)?
            .into_iter()
            .map(|matrix| WeylElement { matrix })
            .collect())
    }

    /// The Weyl element of a word `s_{i1} s_{i2} ...` (1-based indices),
    /// multiplied in word order in the row convention.
    pub fn word_element(&self, word: &[usize]) -> WeylElement {
        let mut m = IntMatrix::identity(self.rank);
        for &i in word {
            m = &m * &self.reflections[i - 1];
        }
        WeylElement { matrix: m }
    }
}

fn perm_of_matrix(m: &IntMatrix, rank: usize) -> Result<Vec<usize>> {
    if m.nrows() != rank || m.ncols() != rank {
        return Err(Error::TwistIncompatible("twist matrix has the wrong shape".into()));
    }
    let mut perm = Vec::with_capacity(rank);
    let mut seen = vec![false; rank];
    for i in 0..rank {
        let row = m.row(i);
        let ones: Vec<usize> = (0..rank).filter(|&j| row[j] == 1).collect();
        if ones.len() != 1 || row.iter().any(|&x| x != 0 && x != 1) {
            return Err(Error::TwistIncompatible(
                "twist matrix must permute the simple roots".into(),
            ));
        }
        if std::mem::replace(&mut seen[ones[0]], true) {
            return Err(Error::TwistIncompatible("twist matrix is singular".into()));
        }
        perm.push(ones[0]);
    }
    Ok(perm)
}

/// Breadth-first closure of the group generated by `gens`.
pub fn closure(gens: &[IntMatrix], n: usize, bound: usize) -> Result<Vec<IntMatrix>> {
    let id = IntMatrix::identity(n);
    let mut seen: HashSet<IntMatrix> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() {
        let g = out[k].clone();
        for s in gens {
            let h = &g * s;
            if seen.insert(h.clone()) {
                if out.len() >= bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                out.push(h);
            }
        }
        k += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d4() -> RootDatum {
        RootDatum::from_type("D4", None).unwrap()
    }

    #[test]
    fn d4_reflections_match_printed() {
        let d = d4();
        let printed = [
            [[-1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, -1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, -1, 1], [0, 0, 0, 1]],
            [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, -1]],
        ];
        for (s, p) in d.reflections().iter().zip(printed) {
            let rows: Vec<Vec<i64>> = p.iter().map(|r| r.to_vec()).collect();
            assert_eq!(*s, IntMatrix::from_rows(&rows));
        }
    }

    #[test]
    fn d4_roots_and_group() {
        let d = d4();
        assert_eq!(d.num_positive_roots(), 12);
        assert_eq!(d.roots().len(), 24);
        assert_eq!(d.weyl_order(), 192);
        let w = d.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        assert_eq!(w.len(), 192);
        for s in d.reflections() {
            assert!((s * s).is_identity());
        }
        // roots are permuted by every element and by the twist
        let roots: HashSet<Weight> = d.roots().into_iter().collect();
        for g in &w {
            assert!(roots.iter().all(|r| roots.contains(&g.act(r))));
            assert!(g.matrix.det().abs() == 1);
        }
        let tw = RootDatum::from_type("D4", Some(vec![2, 4, 3, 1])).unwrap();
        assert!(roots.iter().all(|r| roots.contains(&r.apply(tw.twist()))));
    }

    #[test]
    fn a1_datum() {
        let d = RootDatum::from_type("A1", None).unwrap();
        assert_eq!(d.reflections()[0], IntMatrix::from_rows(&[vec![-1]]));
        assert_eq!(d.weyl_order(), 2);
        assert_eq!(d.num_positive_roots(), 1);
        let w = d.weyl_elements(10).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w[0].matrix.is_identity());
        assert_eq!(w[1].matrix, d.reflections()[0]);
    }

    #[test]
    fn f4_group_closure() {
        let d = RootDatum::from_type("F4", None).unwrap();
        assert_eq!(d.num_positive_roots(), 24);
        assert_eq!(d.weyl_elements(DEFAULT_WEYL_BOUND).unwrap().len(), 1152);
        assert_eq!(d.weyl_order(), 2 * 6 * 8 * 12);
        // coroot pairing <alpha, alpha^vee> = 2
        for (r, c) in d.positive_roots().iter().zip(d.positive_coroots()) {
            let p: i64 = r.coeffs().iter().zip(c).map(|(a, b)| a * b).sum();
            assert_eq!(p, 2);
        }
    }

    #[test]
    fn e6_passes_bound_e8_fails() {
        let e6 = RootDatum::from_type("E6", None).unwrap();
        assert_eq!(e6.num_positive_roots(), 36);
        assert_eq!(e6.weyl_order(), 51_840);
        let e8 = RootDatum::from_type("E8", None).unwrap();
        assert_eq!(e8.num_positive_roots(), 120);
        assert_eq!(
            e8.weyl_elements(DEFAULT_WEYL_BOUND),
            Err(Error::GroupTooLarge {
                bound: DEFAULT_WEYL_BOUND
            })
        );
    }

    #[test]
    fn root_basis_examples() {
        let d = d4();
        assert!(d.weight_to_root_basis(&Weight::zero(4)).iter().all(Zero::is_zero));
        let a1 = Weight::new(vec![2, 0, -1, 0]);
        assert_eq!(
            d.weight_to_root_basis(&a1),
            vec![Rat::from_integer(1), Rat::zero(), Rat::zero(), Rat::zero()]
        );
        let diff = Weight::new(vec![0, 1, 0, 4]).sub(&Weight::new(vec![0, 1, 0, 2]));
        let c = d.weight_to_root_basis(&diff);
        assert!(c.iter().all(|x| !x.is_negative()));
        assert!(d.dominates(&Weight::new(vec![0, 1, 0, 4]), &Weight::new(vec![0, 1, 0, 2])));
        assert!(!d.dominates(&Weight::new(vec![0, 1, 0, 2]), &Weight::new(vec![0, 1, 0, 4])));
    }

    #[test]
    fn twists() {
        assert!(RootDatum::from_type("D4", Some(vec![2, 1, 3, 4])).is_ok());
        assert!(matches!(
            RootDatum::from_type("D4", Some(vec![3, 2, 1, 4])),
            Err(Error::TwistIncompatible(_))
        ));
        assert!(matches!(
            RootDatum::from_type("D4", Some(vec![1, 1, 3, 4])),
            Err(Error::TwistIncompatible(_))
        ));
        let m = IntMatrix::from_rows(&[
            vec![0, 1, 0, 0],
            vec![1, 0, 0, 0],
            vec![0, 0, 1, 0],
            vec![0, 0, 0, 1],
        ]);
        let d = RootDatum::new(cartan::cartan_from_type("D4").unwrap(), &TwistSpec::Matrix(m))
            .unwrap();
        assert_eq!(d.twist_csv(), "2,1,3,4");
    }

    #[test]
    fn parabolic_orders_match_closure() {
        let d = d4();
        for mask in 0..16usize {
            let gens: Vec<IntMatrix> = (0..4)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| d.reflections()[i].clone())
                .collect();
            let sub = closure(&gens, 4, 1000).unwrap();
            assert_eq!(sub.len() as u64, d.parabolic_order(mask), "mask {mask}");
        }
    }

    #[test]
    fn word_matches_section_example() {
        let d = d4();
        let w = d.word_element(&[4, 3, 2, 1, 3, 4, 1, 3, 1]);
        let on_y = IntMatrix::from_rows(&[
            vec![0, 0, -1, 0],
            vec![1, 1, 1, 0],
            vec![0, -1, 0, 0],
            vec![-1, 0, -1, -1],
        ]);
        assert_eq!(w.on_y(), on_y);
    }
}
