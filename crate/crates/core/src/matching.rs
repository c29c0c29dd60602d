//! Identifying computed semisimple classes with the `p`-regular classes of
//! an ordinary character table, and the resulting decomposition matrices.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::brauer::BrauerTable;
use crate::classes::ClassList;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::modular::{crt, rational_reconstruction, root_fields, solve_right_mod, RootField};
use crate::table::AbstractTable;

pub const DEFAULT_CAP: usize = 100_000;

/// Tables up to this size are also solved by exact elimination.
const EXACT_SOLVE_LIMIT: usize = 24;

/// `ident[i]` is the table class of computed class `i`.
pub type Identification = Vec<usize>;

struct Problem<'a> {
    classes: &'a ClassList,
    table: &'a AbstractTable,
    domains: Vec<Vec<usize>>,
    /// Primes whose power maps are known on both sides.
    primes: Vec<u64>,
    /// For each class `i`, the `(k, prime)` with `k^prime = i`.
    preimages: Vec<Vec<(usize, u64)>>,
}

impl Problem<'_> {
    /// Whether `i -> a` agrees with every assigned class it is tied to.
    fn consistent(&self, ident: &[Option<usize>], i: usize, a: usize) -> bool {
        let ci = &self.classes.classes[i];
        let ta = &self.table.classes[a];
        for &r in &self.primes {
            if let (Some(&j), Some(&b)) = (ci.power_map.get(&r), ta.power.get(&r)) {
                let target = if j == i { Some(a) } else { ident[j] };
                if target.is_some_and(|t| t != b) {
                    return false;
                }
            }
        }
        for &(k, r) in &self.preimages[i] {
            if let Some(b) = ident[k] {
                if self.table.classes[b].power.get(&r).is_some_and(|&img| img != a) {
                    return false;
                }
            }
        }
        // central translates: i -> z i and the reverse direction
        for (&z, &j) in &ci.central_translates {
            let zt = if z == i { Some(a) } else { ident[z] };
            let jt = if j == i { Some(a) } else { ident[j] };
            if let (Some(zt), Some(jt)) = (zt, jt) {
                if ta.central.get(&zt).is_some_and(|&img| img != jt) {
                    return false;
                }
            }
        }
        for (k, ck) in self.classes.classes.iter().enumerate() {
            let Some(b) = ident[k] else { continue };
            for (&z, &j) in &ck.central_translates {
                if z != i && j != i {
                    continue;
                }
                let zt = if z == i { Some(a) } else { ident[z] };
                let jt = if j == i { Some(a) } else { ident[j] };
                if let (Some(zt), Some(jt)) = (zt, jt) {
                    if self.table.classes[b].central.get(&zt).is_some_and(|&img| img != jt) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(
        &self,
        ident: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        out: &mut Vec<Identification>,
        cap: usize,
    ) -> Result<()> {
        // most constrained unassigned class first
        let mut best: Option<(usize, Vec<usize>)> = None;
        for i in 0..ident.len() {
            if ident[i].is_some() {
                continue;
            }
            let cands: Vec<usize> = self.domains[i]
                .iter()
                .copied()
                .filter(|&a| !used[a] && self.consistent(ident, i, a))
                .collect();
            if cands.is_empty() {
                return Ok(());
            }
            if best.as_ref().map_or(true, |b| cands.len() < b.1.len()) {
                best = Some((i, cands));
            }
        }
        let Some((i, cands)) = best else {
            if out.len() >= cap {
                return Err(Error::CapExceeded { cap, found: out.len() });
            }
            out.push(ident.iter().map(|x| x.unwrap()).collect());
            return Ok(());
        };
        for a in cands {
            ident[i] = Some(a);
            used[a] = true;
            self.search(ident, used, out, cap)?;
            used[a] = false;
            ident[i] = None;
        }
        Ok(())
    }
}

/// Checks every invariant of an identification.
pub fn verify_identification(classes: &ClassList, table: &AbstractTable, ident: &[usize]) -> bool {
    let regular: BTreeSet<usize> = table.p_regular(classes.p).into_iter().collect();
    let image: HashSet<usize> = ident.iter().copied().collect();
    if ident.len() != classes.classes.len() || image.len() != ident.len() || !image.is_subset(&regular.iter().copied().collect()) {
        return false;
    }
    classes.classes.iter().enumerate().all(|(i, c)| {
        let t = &table.classes[ident[i]];
        t.order == c.order
            && t.centralizer == c.centralizer_order
            && c.power_map
                .iter()
                .all(|(r, &j)| t.power.get(r).map_or(true, |&b| b == ident[j]))
            && c.central_translates
                .iter()
                .all(|(&z, &j)| t.central.get(&ident[z]).map_or(true, |&b| b == ident[j]))
    })
}

/// All bijections between computed classes and `p`-regular table classes
/// respecting orders, centralizer orders, power maps, central translates
/// and the pins `(computed, table)`.
pub fn candidate_identifications(
    classes: &ClassList,
    table: &AbstractTable,
    pins: &[(usize, usize)],
    cap: usize,
) -> Result<Vec<Identification>> {
    let regular = table.p_regular(classes.p);
    let n = classes.classes.len();
    if regular.len() != n {
        return Err(Error::RankMismatch {
            expected: regular.len(),
            got: n,
        });
    }
    let mut domains: Vec<Vec<usize>> = classes
        .classes
        .iter()
        .map(|c| {
            regular
                .iter()
                .copied()
                .filter(|&a| table.classes[a].order == c.order && table.classes[a].centralizer == c.centralizer_order)
                .collect()
        })
        .collect();
    for &(i, a) in pins {
        if i >= n {
            return Err(Error::Schema(format!("pin refers to class {i} of {n}")));
        }
        domains[i].retain(|&b| b == a);
    }
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    for c in &table.classes {
        primes.extend(c.power.keys());
    }
    let primes: Vec<u64> = primes.into_iter().collect();
    let mut preimages = vec![vec![]; n];
    for (k, c) in classes.classes.iter().enumerate() {
        for (&r, &j) in &c.power_map {
            if j != k {
                preimages[j].push((k, r));
            }
        }
    }
    let problem = Problem {
        classes,
        table,
        domains,
        primes,
        preimages,
    };
    let mut out = vec![];
    problem.search(&mut vec![None; n], &mut vec![false; table.len()], &mut out, cap)?;
    out.retain(|id| verify_identification(classes, table, id));
    if out.is_empty() {
        return Err(Error::NoIdentification);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionMatrix {
    /// Rows are ordinary characters, columns Brauer characters; `None`
    /// when no exact solution was found.
    pub entries: Option<Vec<Vec<Cyclotomic>>>,
    /// Every entry is a non-negative integer.
    pub valid: bool,
}

impl DecompositionMatrix {
    pub fn integer_entries(&self) -> Option<Vec<Vec<u64>>> {
        if !self.valid {
            return None;
        }
        self.entries.as_ref().map(|rows| {
            rows.iter()
                .map(|r| r.iter().map(|x| x.to_integer().unwrap().to_u64().unwrap()).collect())
                .collect()
        })
    }
}

/// Ordinary characters restricted to the identified classes.
fn restricted_table(table: &AbstractTable, ident: &[usize]) -> Vec<Vec<Cyclotomic>> {
    table
        .chars
        .iter()
        .map(|chi| ident.iter().map(|&a| chi[a].clone()).collect())
        .collect()
}

fn reduce_matrix(m: &[Vec<Cyclotomic>], f: &RootField) -> Option<Vec<Vec<u64>>> {
    m.iter()
        .map(|r| r.iter().map(|x| x.reduce_mod(f.l, f.n, f.g)).collect())
        .collect()
}

fn product_equals(d: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>], x: &[Vec<Cyclotomic>]) -> bool {
    d.par_iter().zip(x).all(|(drow, xrow)| {
        (0..xrow.len()).all(|j| {
            let s: Cyclotomic = drow
                .iter()
                .zip(b)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, brow)| c * &brow[j])
                .sum();
            s == xrow[j]
        })
    })
}

/// Solves `X = D B` with `X` the ordinary table on the identified classes
/// and `B` the Brauer table.
pub fn decomposition_matrix(
    table: &AbstractTable,
    btable: &BrauerTable,
    ident: &[usize],
) -> Result<DecompositionMatrix> {
    let x = restricted_table(table, ident);
    let b = &btable.values;
    let k = b.len();
    if k != ident.len() {
        return Err(Error::RankMismatch {
            expected: ident.len(),
            got: k,
        });
    }
    let degrees: Vec<BigInt> = x
        .iter()
        .map(|r| r[0].to_integer().ok_or_else(|| Error::Schema("character degree is not an integer".into())))
        .collect::<Result<_>>()?;
    let max_deg = degrees.iter().max().cloned().unwrap_or_default();
    let lower = (&max_deg * 2u32).to_u64().unwrap_or(u64::MAX / 4).max(1 << 40);
    let exponent = btable.exponent();
    let mut residues: Vec<(RootField, Vec<Vec<u64>>)> = vec![];
    for f in root_fields(exponent, lower, 4) {
        let (Some(bm), Some(xm)) = (reduce_matrix(b, &f), reduce_matrix(&x, &f)) else {
            continue;
        };
        let Some(dm) = solve_right_mod(&xm, &bm, f.l) else {
            continue;
        };
        if residues.is_empty() {
            // the unique solution is valid iff its lift to [0, deg] works
            let lifted: Option<Vec<Vec<Cyclotomic>>> = dm
                .iter()
                .zip(&degrees)
                .map(|(row, deg)| {
                    row.iter()
                        .map(|&v| (BigInt::from(v) <= *deg).then(|| Cyclotomic::from_integer(v as i64)))
                        .collect()
                })
                .collect();
            if let Some(d) = lifted {
                if product_equals(&d, b, &x) {
                    return Ok(DecompositionMatrix {
                        entries: Some(d),
                        valid: true,
                    });
                }
            }
        }
        residues.push((f, dm));
    }
    if residues.is_empty() {
        return Err(Error::SingularBrauerMatrix);
    }
    if k <= EXACT_SOLVE_LIMIT {
        let d = exact_solve(&x, b).ok_or(Error::SingularBrauerMatrix)?;
        return Ok(DecompositionMatrix {
            entries: Some(d),
            valid: false,
        });
    }
    // rational entries by reconstruction from several primes
    let rows = x.len();
    let mut d = vec![vec![Cyclotomic::zero(); k]; rows];
    for i in 0..rows {
        for j in 0..k {
            let rs: Vec<(u64, u64)> = residues.iter().map(|(f, dm)| (dm[i][j], f.l)).collect();
            let (v, m) = crt(&rs);
            match rational_reconstruction(&v, &m) {
                Some(r) => d[i][j] = Cyclotomic::from_rational(r),
                None => {
                    return Ok(DecompositionMatrix {
                        entries: None,
                        valid: false,
                    })
                }
            }
        }
    }
    let ok = product_equals(&d, b, &x);
    Ok(DecompositionMatrix {
        entries: ok.then_some(d),
        valid: false,
    })
}

/// `D` with `D B = X` by elimination over the cyclotomic numbers.
fn exact_solve(x: &[Vec<Cyclotomic>], b: &[Vec<Cyclotomic>]) -> Option<Vec<Vec<Cyclotomic>>> {
    // transpose to B^T D^T = X^T and reduce [B^T | X^T]
    let k = b.len();
    let r = x.len();
    let mut aug: Vec<Vec<Cyclotomic>> = (0..k)
        .map(|i| {
            let mut row: Vec<Cyclotomic> = (0..k).map(|j| b[j][i].clone()).collect();
            row.extend((0..r).map(|j| x[j][i].clone()));
            row
        })
        .collect();
    for c in 0..k {
        let piv = (c..k).find(|&i| !aug[i][c].is_zero())?;
        aug.swap(c, piv);
        let inv = aug[c][c].inverse().unwrap();
        aug[c] = aug[c].iter().map(|v| v * &inv).collect();
        let pivot = aug[c].clone();
        for (i, row) in aug.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    if !p.is_zero() {
                        *v = &*v - &(&f * p);
                    }
                }
            }
        }
    }
    Some((0..r).map(|j| (0..k).map(|i| aug[i][k + j].clone()).collect()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilterReport {
    pub candidates: usize,
    pub survivors: Vec<(Identification, DecompositionMatrix)>,
    /// Indices into `survivors`, one per orbit of the table automorphisms.
    pub representatives: Vec<usize>,
}

/// Closure of a set of permutations, capped.
fn permutation_group(gens: &[Vec<usize>], n: usize, cap: usize) -> Vec<Vec<usize>> {
    let id: Vec<usize> = (0..n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut k = 0;
    while k < out.len() && out.len() < cap {
        let g = out[k].clone();
        for s in gens {
            let h: Vec<usize> = g.iter().map(|&x| s[x]).collect();
            if seen.insert(h.clone()) {
                out.push(h);
            }
        }
        k += 1;
    }
    out
}

/// Keeps identifications with valid decomposition matrices and picks one
/// per orbit of the supplied table automorphisms.
pub fn filter_identifications(
    idents: &[Identification],
    table: &AbstractTable,
    btable: &BrauerTable,
) -> Result<FilterReport> {
    let mats: Vec<DecompositionMatrix> = idents
        .par_iter()
        .map(|id| decomposition_matrix(table, btable, id))
        .collect::<Result<_>>()?;
    let survivors: Vec<(Identification, DecompositionMatrix)> = idents
        .iter()
        .cloned()
        .zip(mats)
        .filter(|(_, m)| m.valid)
        .collect();
    let group = permutation_group(&table.automorphisms, table.len(), DEFAULT_CAP);
    let mut canon: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for (k, (id, _)) in survivors.iter().enumerate() {
        let key = group
            .iter()
            .map(|g| id.iter().map(|&a| g[a]).collect::<Vec<usize>>())
            .min()
            .unwrap();
        canon.entry(key).or_insert(k);
    }
    let mut representatives: Vec<usize> = canon.into_values().collect();
    representatives.sort();
    Ok(FilterReport {
        candidates: idents.len(),
        survivors,
        representatives,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brauer::brauer_table;
    use crate::classes::semisimple_classes;
    use crate::datum::RootDatum;
    use crate::library::CharacterLibrary;
    use crate::table::tests::SL23;
    use crate::table::ClassRecord;

    fn a1_setup() -> (ClassList, BrauerTable, AbstractTable) {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let lib = CharacterLibrary::all_weyl_modules(&a1, 3).unwrap();
        let classes = semisimple_classes(&a1, 3, 3).unwrap();
        let bt = brauer_table(&a1, &lib, &classes).unwrap();
        (classes, bt, AbstractTable::from_json(SL23).unwrap())
    }

    #[test]
    fn sl23_end_to_end() {
        let (classes, bt, table) = a1_setup();
        let ids = candidate_identifications(&classes, &table, &[], DEFAULT_CAP).unwrap();
        assert_eq!(ids, vec![vec![0, 1, 2]]);
        let d = decomposition_matrix(&table, &bt, &ids[0]).unwrap();
        assert!(d.valid);
        let ints = d.integer_entries().unwrap();
        assert_eq!(
            ints,
            vec![vec![1, 0, 0], vec![1, 0, 0], vec![1, 0, 0], vec![0, 1, 0], vec![0, 1, 0], vec![0, 1, 0], vec![0, 0, 1]]
        );
        let report = filter_identifications(&ids, &table, &bt).unwrap();
        assert_eq!(report.survivors.len(), 1);
        assert_eq!(report.representatives, vec![0]);
    }

    #[test]
    fn wrong_pin_and_wrong_identification() {
        let (classes, bt, table) = a1_setup();
        assert!(matches!(
            candidate_identifications(&classes, &table, &[(0, 1)], DEFAULT_CAP),
            Err(Error::NoIdentification)
        ));
        let bad = vec![0, 2, 1];
        assert!(!verify_identification(&classes, &table, &bad));
        let d = decomposition_matrix(&table, &bt, &bad).unwrap();
        assert!(!d.valid);
        // the exact solution still reproduces the restricted table
        let entries = d.entries.unwrap();
        assert!(product_equals(&entries, &bt.values, &restricted_table(&table, &bad)));
        let report = filter_identifications(&[bad, vec![0, 1, 2]], &table, &bt).unwrap();
        assert_eq!(report.candidates, 2);
        assert_eq!(report.survivors.len(), 1);
        assert_eq!(report.survivors[0].0, vec![0, 1, 2]);
    }

    #[test]
    fn self_matching_recovers_a_permutation() {
        let d = RootDatum::from_type("A2", None).unwrap();
        let classes = semisimple_classes(&d, 2, 2).unwrap();
        let n = classes.classes.len();
        // a table built from the computed invariants, classes reversed
        let perm: Vec<usize> = (0..n).rev().collect();
        let mut records = vec![None; n];
        for (i, c) in classes.classes.iter().enumerate() {
            records[perm[i]] = Some(ClassRecord {
                name: format!("c{i}"),
                order: c.order,
                centralizer: c.centralizer_order,
                power: c.power_map.iter().map(|(&r, &j)| (r, perm[j])).collect(),
                central: c.central_translates.iter().map(|(&z, &j)| (perm[z], perm[j])).collect(),
            });
        }
        let table = AbstractTable {
            p_hint: Some(2),
            classes: records.into_iter().map(Option::unwrap).collect(),
            chars: vec![vec![Cyclotomic::one(); n]; n],
            automorphisms: vec![],
        };
        table.validate().unwrap();
        let ids = candidate_identifications(&classes, &table, &[], DEFAULT_CAP).unwrap();
        assert!(ids.contains(&perm));
        assert!(ids.iter().all(|id| verify_identification(&classes, &table, id)));
        assert!(matches!(
            candidate_identifications(&classes, &table, &[], 0),
            Err(Error::CapExceeded { cap: 0, .. })
        ));
    }

    #[test]
    fn automorphism_orbits() {
        let g = permutation_group(&[vec![1, 0, 2], vec![0, 2, 1]], 3, 100);
        assert_eq!(g.len(), 6);
    }
}
