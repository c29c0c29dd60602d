//! Semisimple classes of `G(q)`: minimal torus representatives, their
//! centralizers and orders, power maps and central translations.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::cartan::classify;
use crate::cyclotomic::prime_factors;
use crate::datum::{closure, RootDatum, Weight, WeylElement, DEFAULT_WEYL_BOUND};
use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Rat};
use crate::poly::{self, Poly};
use crate::steinberg::prime_power_exponent;
use crate::torus::{frobenius, torus_fixed_points, twisted_element, weight_value, TorusElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedWeylClassRep {
    pub w: WeylElement,
    pub class_size: u64,
}

/// Representatives of the classes of `W` under `F0 w -> v^-1 F0 w v`.
pub fn twisted_weyl_class_reps(datum: &RootDatum) -> Result<Vec<TwistedWeylClassRep>> {
    let elements = datum.weyl_elements(DEFAULT_WEYL_BOUND)?;
    let f0 = datum.twist().transpose();
    let f0_inv = datum.twist().clone();
    let index: HashMap<IntMatrix, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w.on_y(), i))
        .collect();
    let gens: Vec<IntMatrix> = datum.reflections().iter().map(IntMatrix::transpose).collect();
    let mut seen = vec![false; elements.len()];
    let mut out = vec![];
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0u64;
        while let Some(i) = stack.pop() {
            size += 1;
            let phi = &f0 * &elements[i].on_y();
            for s in &gens {
                // s phi s = F0 (F0^-1 s F0 w s)
                let conj = &(&(&f0_inv * s) * &phi) * s;
                let j = index[&conj];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push(TwistedWeylClassRep {
            w: elements[start].clone(),
            class_size: size,
        });
    }
    Ok(out)
}

/// The lexicographically least element of a `W`-orbit on the torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalRep {
    pub rep: TorusElement,
    /// `Y`-matrix `v` of a Weyl element with `t v = rep`.
    pub witness: IntMatrix,
    pub orbit_size: u64,
    pub orbit: Vec<TorusElement>,
}

pub fn minimal_class_rep(datum: &RootDatum, t: &TorusElement) -> MinimalRep {
    let n = t.order();
    let l = datum.rank();
    let start = t.numerators_at(n);
    let mut index: HashMap<Vec<i64>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut nodes: Vec<(Vec<i64>, usize, usize)> = vec![(start, usize::MAX, 0)];
    let mut k = 0;
    while k < nodes.len() {
        for i in 0..l {
            let mut y = nodes[k].0.clone();
            datum.reflect_y_mod(&mut y, i, n as i64);
            if !index.contains_key(&y) {
                index.insert(y.clone(), nodes.len());
                nodes.push((y, k, i));
            }
        }
        k += 1;
    }
    let orbit: Vec<TorusElement> = nodes.iter().map(|(y, _, _)| TorusElement::new(n, y)).collect();
    let best = (0..orbit.len()).min_by(|&a, &b| orbit[a].cmp(&orbit[b])).unwrap();
    let mut path = vec![];
    let mut cur = best;
    while cur != 0 {
        path.push(nodes[cur].2);
        cur = nodes[cur].1;
    }
    let mut witness = IntMatrix::identity(l);
    for &i in path.iter().rev() {
        witness = &witness * &datum.reflections()[i].transpose();
    }
    let mut sorted = orbit.clone();
    sorted.sort();
    MinimalRep {
        rep: orbit[best].clone(),
        witness,
        orbit_size: orbit.len() as u64,
        orbit: sorted,
    }
}

/// `|C^F| = q^{N_C} q^{deg R} R(1/q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderFactorization {
    pub q_power: u32,
    pub reciprocal_molien: Poly,
}

impl OrderFactorization {
    pub fn order_at(&self, q: u64) -> BigInt {
        let qb = BigInt::from(q);
        num_traits::pow(qb.clone(), self.q_power as usize) * poly::eval_reversed(&self.reciprocal_molien, &qb)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralizerData {
    /// Positive roots vanishing on `t`.
    pub subsystem: Vec<Weight>,
    pub subsystem_type: String,
    /// Components with their Frobenius orbits, plus the central torus.
    pub centralizer_type: String,
    pub factorization: OrderFactorization,
    pub order: u128,
}

/// Reflection in a root acting on `Y`: `y -> y - <alpha, y> alpha^vee`.
fn reflection_on_y(alpha: &Weight, coroot: &[i64]) -> IntMatrix {
    let l = coroot.len();
    let mut m = IntMatrix::identity(l);
    for j in 0..l {
        for k in 0..l {
            m.set(j, k, m.get(j, k) - alpha.coeffs()[j] * coroot[k]);
        }
    }
    m
}

/// Simple roots of the positive system `roots`.
fn simple_system(roots: &[Weight]) -> Vec<Weight> {
    let set: HashSet<&Weight> = roots.iter().collect();
    roots
        .iter()
        .filter(|a| !roots.iter().any(|b| b != *a && set.contains(&a.sub(b))))
        .cloned()
        .collect()
}

/// Subsystem, type and order of the centralizer of `t`, where `w` is a
/// Weyl element with `w(F(t)) = t`.
pub fn centralizer_data(
    datum: &RootDatum,
    t: &TorusElement,
    w: &WeylElement,
    q: u64,
) -> Result<CentralizerData> {
    let phi = twisted_element(datum, w);
    if &frobenius(datum, t, q).apply(&w.on_y()) != t {
        return Err(Error::NotStabilized);
    }
    let l = datum.rank();
    let subsystem: Vec<Weight> = datum
        .positive_roots()
        .iter()
        .filter(|a| weight_value(a, t) == Rat::from_integer(0))
        .cloned()
        .collect();
    let simple = simple_system(&subsystem);
    let coroots: Vec<Vec<i64>> = simple.iter().map(|a| datum.coroot_of(a).unwrap()).collect();
    let gens: Vec<IntMatrix> = simple
        .iter()
        .zip(&coroots)
        .map(|(a, c)| reflection_on_y(a, c))
        .collect();
    let wc = closure(&gens, l, datum.weyl_order() as usize + 1)?;

    // Molien series of the twisted reflection group: sum over W_C of
    // 1 / det(1 - t phi v) = N / (|W_C| D) with D a common denominator.
    let dets: Vec<Poly> = wc.par_iter().map(|v| poly::det_one_minus(&(&phi * v))).collect();
    let mut exps: BTreeMap<u64, u32> = BTreeMap::new();
    let factored: Vec<Vec<(u64, u32)>> = dets
        .iter()
        .map(|p| poly::cyclotomic_factors(p).expect("finite order element"))
        .collect();
    for f in &factored {
        for &(k, e) in f {
            let x = exps.entry(k).or_insert(0);
            *x = (*x).max(e);
        }
    }
    let lcm: Vec<(u64, u32)> = exps.into_iter().collect();
    let big_d = poly::from_factors(&lcm);
    let mut num: Poly = vec![BigInt::zero()];
    for f in &factored {
        let cof: Vec<(u64, u32)> = lcm
            .iter()
            .map(|&(k, e)| (k, e - f.iter().find(|x| x.0 == k).map_or(0, |x| x.1)))
            .collect();
        num = poly::add(&num, &poly::from_factors(&cof));
    }
    let scaled = poly::scale(&big_d, &BigInt::from(wc.len()));
    let r = poly::div_exact(&scaled, &num).expect("Molien series inverts to a polynomial");
    let factorization = OrderFactorization {
        q_power: subsystem.len() as u32,
        reciprocal_molien: r,
    };
    let order = factorization
        .order_at(q)
        .to_u128()
        .ok_or(Error::GroupTooLarge { bound: usize::MAX })?;

    let cartan = IntMatrix::from_rows(
        &(0..simple.len())
            .map(|i| {
                (0..simple.len())
                    .map(|j| simple[j].coeffs().iter().zip(&coroots[i]).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect::<Vec<_>>(),
    );
    let (subsystem_type, centralizer_type) = if simple.is_empty() {
        (String::new(), torus_name(&poly::det_one_minus(&phi)))
    } else {
        let cls = classify(&cartan)?;
        let ss = cls.type_name();
        let parts = component_names(&phi, &wc, &coroots, &cls.components);
        let torus = torus_part(&phi, &coroots);
        let mut name = parts.join("+");
        if poly::degree(&torus) > 0 {
            name.push('+');
            name.push_str(&torus_name(&torus));
        }
        (ss, name)
    };
    Ok(CentralizerData {
        subsystem,
        subsystem_type,
        centralizer_type,
        factorization,
        order,
    })
}

/// Names like `2A3(q)` or `A1(q^2)` for the Frobenius orbits of components.
fn component_names(
    phi: &IntMatrix,
    wc: &[IntMatrix],
    coroots: &[Vec<i64>],
    components: &[(crate::cartan::SimpleType, Vec<usize>)],
) -> Vec<String> {
    let pos: HashMap<&Vec<i64>, usize> = coroots.iter().enumerate().map(|(i, c)| (c, i)).collect();
    // some phi v permutes the simple coroots
    let perm: Vec<usize> = wc
        .iter()
        .find_map(|v| {
            let m = phi * v;
            coroots
                .iter()
                .map(|c| pos.get(&m.apply(c)).copied())
                .collect::<Option<Vec<usize>>>()
        })
        .expect("phi normalises the subsystem");
    let comp_of: Vec<usize> = {
        let mut c = vec![0; coroots.len()];
        for (k, (_, nodes)) in components.iter().enumerate() {
            for &n in nodes {
                c[n] = k;
            }
        }
        c
    };
    let mut done = vec![false; components.len()];
    let mut names = vec![];
    for k in 0..components.len() {
        if done[k] {
            continue;
        }
        let mut len = 0;
        let mut cur = k;
        loop {
            done[cur] = true;
            len += 1;
            cur = comp_of[perm[components[cur].1[0]]];
            if cur == k {
                break;
            }
        }
        // order of perm^len on the nodes of component k
        let nodes = &components[k].1;
        let step = |n: usize| (0..len).fold(n, |x, _| perm[x]);
        let mut twist_order = 1;
        let mut cur: Vec<usize> = nodes.iter().map(|&n| step(n)).collect();
        while cur != *nodes {
            cur = cur.iter().map(|&n| step(n)).collect();
            twist_order += 1;
        }
        let prefix = if twist_order > 1 { twist_order.to_string() } else { String::new() };
        let field = if len > 1 { format!("(q^{len})") } else { "(q)".into() };
        names.push(format!("{prefix}{}{field}", components[k].0));
    }
    names.sort();
    names
}

/// `det(1 - t phi)` on the quotient of `Y` by the span of the coroots.
fn torus_part(phi: &IntMatrix, coroots: &[Vec<i64>]) -> Poly {
    let r = coroots.len();
    let b = IntMatrix::from_rows(coroots);
    let bt = b.transpose();
    let gram_inv = (&b * &bt).inverse_rational().unwrap();
    let bphibt = &(&b * phi) * &bt;
    let k: Vec<Vec<Rat>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| (0..r).map(|m| Rat::from_integer(bphibt.get(i, m)) * gram_inv[m][j]).sum())
                .collect()
        })
        .collect();
    let mut sub: Poly = poly::charpoly_rational(&k)
        .into_iter()
        .map(|c| {
            assert!(c.is_integer());
            BigInt::from(c.to_integer())
        })
        .collect();
    sub.reverse();
    poly::div_exact(&poly::det_one_minus(phi), &poly::trim(sub)).expect("subspace is stable")
}

fn torus_name(p: &Poly) -> String {
    let f = poly::cyclotomic_factors(p).expect("finite order torus");
    if f.len() == 1 && f[0].1 == 1 {
        return format!("T({})", poly::cyclotomic_in_q(f[0].0));
    }
    let body: String = f
        .iter()
        .map(|&(k, e)| {
            let base = format!("({})", poly::cyclotomic_in_q(k));
            if e > 1 {
                format!("{base}^{e}")
            } else {
                base
            }
        })
        .collect();
    format!("T({body})")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemisimpleClass {
    pub rep: TorusElement,
    pub order: u64,
    pub orbit_size: u64,
    pub stab_w: WeylElement,
    pub subsystem: Vec<Weight>,
    pub subsystem_type: String,
    pub centralizer_type: String,
    pub factorization: OrderFactorization,
    pub centralizer_order: u128,
    /// Prime `k` to the class of `k t`.
    pub power_map: BTreeMap<u64, usize>,
    /// Central class index to the class of `t + c`.
    pub central_translates: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassList {
    pub datum_type: String,
    pub twist: Vec<usize>,
    pub q: u64,
    pub p: u64,
    pub classes: Vec<SemisimpleClass>,
    pub center: Vec<usize>,
    pub group_order: u128,
}

impl ClassList {
    pub fn index_of(&self, rep: &TorusElement) -> Option<usize> {
        self.classes.binary_search_by(|c| class_key(&c.rep).cmp(&class_key(rep))).ok()
    }

    /// `lcm` of the element orders.
    pub fn exponent(&self) -> u64 {
        self.classes.iter().fold(1, |a, c| a.lcm(&c.order))
    }
}

fn class_key(t: &TorusElement) -> (u64, TorusElement) {
    (t.order(), t.clone())
}

/// Minimal representative of `k t`.
pub fn power_map(datum: &RootDatum, t: &TorusElement, k: u64) -> TorusElement {
    minimal_class_rep(datum, &t.scale(k as i64)).rep
}

/// Every semisimple class of `G(q)`, sorted by element order and then by
/// representative.
pub fn semisimple_classes(datum: &RootDatum, q: u64, p: u64) -> Result<ClassList> {
    prime_power_exponent(q, p)?;
    let reps = twisted_weyl_class_reps(datum)?;
    let f0_inv_y = datum.twist().clone();
    let f0_y = datum.twist().transpose();
    // (minimal rep, stabilising element on Y, orbit size)
    let mut found: Vec<(TorusElement, IntMatrix, u64)> = vec![];
    let mut covered: HashSet<TorusElement> = HashSet::new();
    for r in &reps {
        let w_y = r.w.on_y();
        for t in torus_fixed_points(datum, &r.w, q)? {
            if covered.contains(&t) {
                continue;
            }
            let m = minimal_class_rep(datum, &t);
            // t v = rep and t q F0 w = t give rep q F0 u = rep for
            // u = F0^-1 v^-1 F0 w v
            let v_inv = m.witness.inverse_unimodular().expect("Weyl elements are invertible");
            let u = &(&(&(&f0_inv_y * &v_inv) * &f0_y) * &w_y) * &m.witness;
            covered.extend(m.orbit.iter().cloned());
            found.push((m.rep, u, m.orbit_size));
        }
    }
    found.sort_by(|a, b| class_key(&a.0).cmp(&class_key(&b.0)));
    let mut classes: Vec<SemisimpleClass> = found
        .into_par_iter()
        .map(|(rep, u, orbit_size)| {
            let stab_w = WeylElement { matrix: u.transpose() };
            let c = centralizer_data(datum, &rep, &stab_w, q)?;
            Ok(SemisimpleClass {
                order: rep.order(),
                rep,
                orbit_size,
                stab_w,
                subsystem: c.subsystem,
                subsystem_type: c.subsystem_type,
                centralizer_type: c.centralizer_type,
                factorization: c.factorization,
                centralizer_order: c.order,
                power_map: BTreeMap::new(),
                central_translates: BTreeMap::new(),
            })
        })
        .collect::<Result<_>>()?;
    let group_order = classes[0].centralizer_order;
    let n_pos = datum.num_positive_roots();
    let center: Vec<usize> = (0..classes.len())
        .filter(|&i| classes[i].subsystem.len() == n_pos)
        .collect();
    let mut list = ClassList {
        datum_type: datum.type_name(),
        twist: datum.twist_perm().iter().map(|i| i + 1).collect(),
        q,
        p,
        classes: vec![],
        center,
        group_order,
    };
    let lookup: HashMap<TorusElement, usize> = classes
        .iter()
        .enumerate()
        .map(|(i, c)| (c.rep.clone(), i))
        .collect();
    let primes = order_primes(&classes[0].factorization, q, p);
    let maps: Vec<(BTreeMap<u64, usize>, BTreeMap<usize, usize>)> = classes
        .par_iter()
        .map(|c| {
            let power = primes
                .iter()
                .map(|&k| (k, lookup[&power_map(datum, &c.rep, k)]))
                .collect();
            let central = list
                .center
                .iter()
                .map(|&z| (z, lookup[&minimal_class_rep(datum, &c.rep.add(&classes[z].rep)).rep]))
                .collect();
            (power, central)
        })
        .collect();
    for (c, (power, central)) in classes.iter_mut().zip(maps) {
        c.power_map = power;
        c.central_translates = central;
    }
    list.classes = classes;
    Ok(list)
}

/// Primes dividing `q^N prod Phi_k(q)^e`.
fn order_primes(f: &OrderFactorization, q: u64, p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = vec![p];
    let qb = BigInt::from(q);
    for (k, _) in poly::cyclotomic_factors(&f.reciprocal_molien).expect("cyclotomic order polynomial") {
        let v = poly::eval(&poly::unit_cyclotomic(k), &qb);
        let v = v.magnitude().to_u64().expect("cyclotomic value below 2^64");
        out.extend(prime_factors(v));
    }
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> TorusElement {
        s.parse().unwrap()
    }

    fn twisted_d4() -> RootDatum {
        RootDatum::from_type("D4", Some(vec![2, 1, 3, 4])).unwrap()
    }

    /// Brute-force partition of `W` into twisted classes.
    fn brute_force_twisted_classes(datum: &RootDatum) -> Vec<u64> {
        let all = datum.weyl_elements(DEFAULT_WEYL_BOUND).unwrap();
        let f0 = datum.twist().transpose();
        let phis: Vec<IntMatrix> = all.iter().map(|w| &f0 * &w.on_y()).collect();
        let ys: Vec<IntMatrix> = all.iter().map(WeylElement::on_y).collect();
        let mut seen: HashSet<IntMatrix> = HashSet::new();
        let mut sizes = vec![];
        for phi in &phis {
            if seen.contains(phi) {
                continue;
            }
            let orbit: HashSet<IntMatrix> = ys
                .iter()
                .map(|v| &(&v.inverse_unimodular().unwrap() * phi) * v)
                .collect();
            sizes.push(orbit.len() as u64);
            seen.extend(orbit);
        }
        sizes.sort();
        sizes
    }

    #[test]
    fn twisted_class_counts() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let reps = twisted_weyl_class_reps(&a1).unwrap();
        assert_eq!(reps.len(), 2);
        let d4 = RootDatum::from_type("D4", None).unwrap();
        let reps = twisted_weyl_class_reps(&d4).unwrap();
        assert_eq!(reps.len(), 13);
        for d in [d4, twisted_d4()] {
            let reps = twisted_weyl_class_reps(&d).unwrap();
            let mut sizes: Vec<u64> = reps.iter().map(|r| r.class_size).collect();
            sizes.sort();
            assert_eq!(sizes, brute_force_twisted_classes(&d));
            assert_eq!(sizes.iter().sum::<u64>(), 192);
        }
    }

    #[test]
    fn worked_example_class() {
        let d = twisted_d4();
        let tp = t("1/4,1/4,1/2,1/2");
        let m = minimal_class_rep(&d, &tp);
        assert_eq!(m.rep, t("1/4,1/4,0,0"));
        assert_eq!(m.orbit_size, 8);
        assert_eq!(tp.apply(&m.witness), m.rep);
        assert_eq!(minimal_class_rep(&d, &TorusElement::zero(4)).rep, TorusElement::zero(4));

        let w = d.word_element(&[4, 3, 2, 1, 3, 4, 1, 3, 1]);
        let c = centralizer_data(&d, &tp, &w, 3).unwrap();
        assert_eq!(c.subsystem_type, "A3");
        assert_eq!(c.order, 48_522_240);
        assert_eq!(c.centralizer_type, "A3(q)+T(q+1)");
        assert_eq!(power_map(&d, &tp, 2), t("1/2,1/2,0,0"));
        assert_eq!(power_map(&d, &tp, 4), TorusElement::zero(4));
        assert_eq!(power_map(&d, &tp, 1), m.rep);
        assert!(matches!(
            centralizer_data(&d, &tp, &WeylElement::identity(4), 3),
            Err(Error::NotStabilized)
        ));
    }

    #[test]
    fn group_orders() {
        let d = twisted_d4();
        let id = WeylElement::identity(4);
        let full = centralizer_data(&d, &TorusElement::zero(4), &id, 3).unwrap();
        let q: u128 = 3;
        let formula = q.pow(12) * (q * q - 1) * (q.pow(4) - 1) * (q.pow(6) - 1) * (q.pow(4) + 1);
        assert_eq!(full.order, 20_303_937_239_040);
        assert_eq!(full.order, formula);
        assert_eq!(full.subsystem_type, "D4");
        assert_eq!(full.centralizer_type, "2D4(q)");
        let split = RootDatum::from_type("D4", None).unwrap();
        let c = centralizer_data(&split, &TorusElement::zero(4), &id, 3).unwrap();
        assert_eq!(c.order, 19_808_719_257_600);
    }

    #[test]
    fn regular_torus_orders() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let s = WeylElement { matrix: a1.reflections()[0].clone() };
        let c = centralizer_data(&a1, &t("1/4"), &s, 3).unwrap();
        assert_eq!(c.order, 4);
        assert_eq!(c.centralizer_type, "T(q+1)");
        // with the subsystem removed the Molien route gives |det(q phi - 1)|
        let d = twisted_d4();
        let w = d.word_element(&[4, 3, 2, 1, 3, 4, 1, 3, 1]);
        for sol in torus_fixed_points(&d, &w, 3).unwrap() {
            let c = centralizer_data(&d, &sol, &w, 3).unwrap();
            if c.subsystem.is_empty() {
                assert_eq!(c.order, 64);
            }
        }
    }

    #[test]
    fn a1_classes() {
        let a1 = RootDatum::from_type("A1", None).unwrap();
        let list = semisimple_classes(&a1, 3, 3).unwrap();
        let reps: Vec<TorusElement> = list.classes.iter().map(|c| c.rep.clone()).collect();
        assert_eq!(reps, vec![t("0"), t("1/2"), t("1/4")]);
        let orders: Vec<u64> = list.classes.iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 4]);
        let cents: Vec<u128> = list.classes.iter().map(|c| c.centralizer_order).collect();
        assert_eq!(cents, vec![24, 24, 4]);
        assert_eq!(list.center, vec![0, 1]);
        assert_eq!(list.group_order, 24);
        assert_eq!(list.classes[2].power_map[&2], 1);
        assert_eq!(list.classes[2].central_translates[&1], 2);
    }

    #[test]
    fn twisted_d4_classes() {
        let d = twisted_d4();
        let list = semisimple_classes(&d, 3, 3).unwrap();
        assert_eq!(list.classes.len(), 81);
        assert_eq!(list.group_order, 20_303_937_239_040);
        let c = t("1/2,1/2,0,0");
        let reps: Vec<TorusElement> = list.center.iter().map(|&i| list.classes[i].rep.clone()).collect();
        assert_eq!(reps, vec![TorusElement::zero(4), c.clone()]);
        let k = list.index_of(&t("1/4,1/4,0,0")).unwrap();
        let cls = &list.classes[k];
        assert_eq!((cls.order, cls.orbit_size, cls.centralizer_order), (4, 8, 48_522_240));
        assert_eq!(list.classes[cls.power_map[&2]].rep, c);
        let zc = list.index_of(&c).unwrap();
        assert_eq!(cls.central_translates[&zc], k);
        for (i, cl) in list.classes.iter().enumerate() {
            assert_eq!(cl.order, cl.rep.order());
            assert_eq!(list.group_order % cl.centralizer_order, 0);
            assert_eq!(&frobenius(&d, &cl.rep, 3).apply(&cl.stab_w.on_y()), &cl.rep);
            for (&k, &j) in &cl.power_map {
                assert_eq!(list.classes[j].order, cl.order / cl.order.gcd(&k));
            }
            // translation by the central involution is an involution
            let j = cl.central_translates[&zc];
            assert_eq!(list.classes[j].central_translates[&zc], i);
        }
        let sum: u128 = list.classes.iter().map(|c| list.group_order / c.centralizer_order).sum();
        assert!(sum <= list.group_order);
    }

    #[test]
    fn split_d4_small_q() {
        let d = RootDatum::from_type("D4", None).unwrap();
        let list = semisimple_classes(&d, 2, 2).unwrap();
        assert_eq!(list.classes.len(), 16);
        let list = semisimple_classes(&d, 3, 3).unwrap();
        assert_eq!(list.center.len(), 4);
    }
}
