//! Acceptance criteria 1-14, one PASS/FAIL line each.
//!
//! Criteria 13 and 14 need the D4, p = 3 weight multiplicities of the
//! irreducible modules (a library directory) and, for 13, the ordinary
//! character table of 2.O8-(3) exported to the table JSON schema:
//!
//! - `LIECHAR_D4P3_LIB`: library directory for D4, twist 2,1,3,4, p = 3
//! - `LIECHAR_D4P3_TABLE`: ordinary table JSON
//! - `LIECHAR_D4P3_PINS`: optional pins `i=j,k=l` for the funnel
//! - `LIECHAR_D4P3_AUTOMORPHISMS`: optional JSON list of extra automorphisms
//!
//! Without them the two criteria report FAIL with the reason and the test
//! still runs the stand-in checks.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use liechar::brauer::{brauer_table, brauer_value, modular_rank};
use liechar::character::{decompose, frobenius_twist, tensor_product, DominantCharacter, IrreducibleSource};
use liechar::classes::{centralizer_data, minimal_class_rep, power_map, semisimple_classes};
use liechar::cyclotomic::Cyclotomic;
use liechar::library::CharacterLibrary;
use liechar::matching::{candidate_identifications, filter_identifications, DEFAULT_CAP};
use liechar::matrix::IntMatrix;
use liechar::orbit::{orbit, orbit_length};
use liechar::snf::smith_normal_form;
use liechar::steinberg::irreducible_degrees;
use liechar::table::AbstractTable;
use liechar::torus::{equation_matrix, torus_fixed_points, TorusElement};
use liechar::weyl::{weyl_character, weyl_dimension};
use liechar::{RootDatum, Weight};

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec())
}

fn t(s: &str) -> TorusElement {
    s.parse().unwrap()
}

fn d4() -> RootDatum {
    RootDatum::from_type("D4", None).unwrap()
}

fn twisted_d4() -> RootDatum {
    RootDatum::from_type("D4", Some(vec![2, 1, 3, 4])).unwrap()
}

fn section_word(d: &RootDatum) -> liechar::WeylElement {
    d.word_element(&[4, 3, 2, 1, 3, 4, 1, 3, 1])
}

/// The highest weight (0,1,0,2) module for p = 3.
fn l0102() -> DominantCharacter {
    DominantCharacter::new([(w(&[0, 1, 0, 2]), 1), (w(&[0, 1, 1, 0]), 1), (w(&[1, 0, 0, 1]), 3), (w(&[0, 1, 0, 0]), 6)])
        .unwrap()
}

fn int(k: i64) -> Cyclotomic {
    Cyclotomic::from_integer(k)
}

fn c1_reflections() -> Check {
    let d = d4();
    let printed = [
        [[-1, 0, 1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, -1, 1, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [1, 1, -1, 1], [0, 0, 0, 1]],
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 1, -1]],
    ];
    for (i, (s, p)) in d.reflections().iter().zip(printed).enumerate() {
        let rows: Vec<Vec<i64>> = p.iter().map(|r| r.to_vec()).collect();
        ensure!(*s == IntMatrix::from_rows(&rows), "s{} = {:?}", i + 1, s.to_rows());
    }
    let elements = d.weyl_elements(10_000).map_err(|e| e.to_string())?;
    ensure!(d.weyl_order() == 192 && elements.len() == 192, "|W| = {}", elements.len());
    Ok("4 reflections match, |W| = 192".into())
}

fn c2_orbits() -> Check {
    let d = d4();
    let listed: BTreeSet<Weight> = [
        [0, 1, 0, 0],
        [0, -1, 1, 0],
        [1, 0, -1, 1],
        [-1, 0, 0, 1],
        [1, 0, 0, -1],
        [-1, 0, 1, -1],
        [0, 1, -1, 0],
        [0, -1, 0, 0],
    ]
    .iter()
    .map(|v| w(v))
    .collect();
    let rec = orbit(&d, &w(&[0, 1, 0, 0]));
    let got: BTreeSet<Weight> = rec.elements.unwrap_or_default().into_iter().collect();
    ensure!(got == listed, "orbit {got:?}");
    let lengths: Vec<u64> = [[0, 1, 0, 2], [0, 1, 1, 0], [1, 0, 0, 1], [0, 1, 0, 0]]
        .iter()
        .map(|v| orbit_length(&d, &w(v)).unwrap())
        .collect();
    ensure!(lengths == [32, 48, 32, 8], "orbit lengths {lengths:?}");
    Ok("8 listed weights, lengths (32, 48, 32, 8)".into())
}

fn c3_dimensions() -> Check {
    let d = d4();
    let a = l0102();
    let b = weyl_character(&d, &w(&[0, 0, 0, 2])).map_err(|e| e.to_string())?;
    let ab = tensor_product(&d, &a, &b).map_err(|e| e.to_string())?;
    let (da, db, dab) = (a.dimension(&d), b.dimension(&d), ab.dimension(&d));
    ensure!(da == 224 && db == 35 && dab == 7840 && dab == da * db, "dims {da} {db} {dab}");
    Ok("224, 7840 = 224 x 35".into())
}

fn c4_tensor_table() -> Check {
    let d = d4();
    let b = weyl_character(&d, &w(&[0, 0, 0, 2])).map_err(|e| e.to_string())?;
    let ab = tensor_product(&d, &l0102(), &b).map_err(|e| e.to_string())?;
    let table: [([i64; 4], u64, u64); 12] = [
        ([0, 1, 0, 4], 1, 32),
        ([0, 1, 1, 2], 2, 96),
        ([0, 1, 2, 0], 3, 48),
        ([1, 2, 0, 1], 4, 96),
        ([1, 0, 0, 3], 6, 32),
        ([1, 0, 1, 1], 11, 96),
        ([2, 1, 0, 0], 15, 32),
        ([0, 3, 0, 0], 6, 8),
        ([0, 1, 0, 2], 24, 32),
        ([0, 1, 1, 0], 34, 48),
        ([1, 0, 0, 1], 63, 32),
        ([0, 1, 0, 0], 112, 8),
    ];
    ensure!(ab.len() == 12, "{} dominant weights", ab.len());
    for (mu, m, len) in table {
        let mu = w(&mu);
        ensure!(ab.multiplicity(&mu) == m, "m{mu} = {}", ab.multiplicity(&mu));
        let l = orbit_length(&d, &mu).map_err(|e| e.to_string())?;
        ensure!(l == len, "|{mu}^W| = {l}");
    }
    Ok("12 rows match".into())
}

fn c5_decompositions() -> Check {
    let d = d4();
    let small = [
        ([0, 0, 0, 0], 1),
        ([1, 0, 0, 0], 8),
        ([0, 1, 0, 0], 8),
        ([0, 0, 0, 1], 8),
        ([0, 0, 1, 0], 28),
        ([2, 0, 0, 0], 35),
        ([1, 1, 0, 0], 56),
    ];
    for (lam, dim) in small {
        let lam = w(&lam);
        let a = weyl_dimension(&d, &lam).map_err(|e| e.to_string())?;
        let b = weyl_character(&d, &lam).map_err(|e| e.to_string())?.dimension(&d);
        ensure!(a == dim && b == dim, "dim L{lam}: formula {a}, Freudenthal {b}");
    }
    let weights: Vec<Weight> = small.iter().map(|(l, _)| w(l)).collect();
    let lib = CharacterLibrary::from_weyl_modules(&d, 3, &weights).map_err(|e| e.to_string())?;
    let get = |v: &[i64]| lib.irreducible(&d, &w(v)).unwrap();
    let factors = |a: &[i64], b: &[i64]| -> std::result::Result<BTreeMap<Weight, u64>, String> {
        let ch = tensor_product(&d, &get(a), &get(b)).map_err(|e| e.to_string())?;
        Ok(decompose(&d, &ch, &lib).map_err(|e| e.to_string())?.into_iter().collect())
    };
    let first = factors(&[1, 0, 0, 0], &[0, 1, 0, 0])?;
    let expect: BTreeMap<Weight, u64> = [(w(&[1, 1, 0, 0]), 1), (w(&[0, 0, 0, 1]), 1)].into();
    ensure!(first == expect, "(1,0,0,0) x (0,1,0,0) = {first:?}");
    let second = factors(&[1, 0, 0, 0], &[1, 0, 0, 0])?;
    let expect: BTreeMap<Weight, u64> = [(w(&[2, 0, 0, 0]), 1), (w(&[0, 0, 1, 0]), 1), (w(&[0, 0, 0, 0]), 1)].into();
    ensure!(second == expect, "(1,0,0,0) x (1,0,0,0) = {second:?}");
    Ok("both identities reproduced".into())
}

fn c6_fixed_points() -> Check {
    let d = twisted_d4();
    let wd = section_word(&d);
    let m = equation_matrix(&d, &wd, 3);
    let printed = IntMatrix::from_rows(&[vec![2, 3, 3, 0], vec![0, -1, -3, 0], vec![0, -3, -1, 0], vec![-3, 0, -3, -4]]);
    ensure!(m == printed, "M = {:?}", m.to_rows());
    let det = m.det().abs();
    let sols = torus_fixed_points(&d, &wd, 3).map_err(|e| e.to_string())?;
    ensure!(det == 64 && sols.len() == 64, "|det M| = {det}, {} solutions", sols.len());
    ensure!(sols.contains(&t("1/4,1/4,1/2,1/2")), "t' missing");
    let snf = smith_normal_form(&m);
    let prod: i64 = snf.diag.iter().product();
    ensure!(prod == 64, "invariant factors {:?}", snf.diag);
    Ok(format!(
        "M matches, 64 solutions incl. t', invariant factors {:?} (printed diag(0,0,8,8) not matched)",
        snf.diag
    ))
}

fn c7_worked_class() -> Check {
    let d = twisted_d4();
    let tp = t("1/4,1/4,1/2,1/2");
    let m = minimal_class_rep(&d, &tp);
    ensure!(m.rep == t("1/4,1/4,0,0"), "rep {}", m.rep);
    ensure!(m.orbit_size == 8 && tp.order() == 4, "orbit {} order {}", m.orbit_size, tp.order());
    let c = centralizer_data(&d, &tp, &section_word(&d), 3).map_err(|e| e.to_string())?;
    ensure!(c.subsystem_type == "A3", "subsystem {}", c.subsystem_type);
    ensure!(c.order == 48_522_240, "centralizer order {}", c.order);
    let center = t("1/2,1/2,0,0");
    ensure!(power_map(&d, &tp, 2) == center, "2t' -> {}", power_map(&d, &tp, 2));
    let list = semisimple_classes(&d, 3, 3).map_err(|e| e.to_string())?;
    ensure!(list.center.iter().any(|&i| list.classes[i].rep == center), "(1/2,1/2,0,0) not central");
    ensure!(minimal_class_rep(&d, &tp.add(&center)).rep == m.rep, "t' + c in another class");
    Ok(format!("rep (1/4,1/4,0,0), orbit 8, order 4, A3, |C| = 48522240, type {}", c.centralizer_type))
}

fn c8_class_counts() -> Check {
    let n1 = semisimple_classes(&twisted_d4(), 3, 3).map_err(|e| e.to_string())?.classes.len();
    let n2 = semisimple_classes(&d4(), 2, 2).map_err(|e| e.to_string())?.classes.len();
    let a1 = semisimple_classes(&RootDatum::from_type("A1", None).unwrap(), 3, 3).map_err(|e| e.to_string())?;
    let orders: BTreeSet<u64> = a1.classes.iter().map(|c| c.order).collect();
    ensure!(n1 == 81 && n2 == 16, "counts {n1}, {n2}");
    ensure!(a1.classes.len() == 3 && orders == BTreeSet::from([1, 2, 4]), "A1: {:?}", orders);
    Ok("81, 16, 3 with orders {1,2,4}".into())
}

fn c9_centers() -> Check {
    let tw = semisimple_classes(&twisted_d4(), 3, 3).map_err(|e| e.to_string())?;
    let reps: Vec<TorusElement> = tw.center.iter().map(|&i| tw.classes[i].rep.clone()).collect();
    ensure!(reps == [TorusElement::zero(4), t("1/2,1/2,0,0")], "twisted centre {reps:?}");
    let split = semisimple_classes(&d4(), 3, 3).map_err(|e| e.to_string())?;
    ensure!(split.center.len() == 4, "split centre order {}", split.center.len());
    Ok("2 (with (1/2,1/2,0,0)) and 4".into())
}

fn c10_group_order() -> Check {
    let d = twisted_d4();
    let id = liechar::WeylElement::identity(4);
    let c = centralizer_data(&d, &TorusElement::zero(4), &id, 3).map_err(|e| e.to_string())?;
    let q: u128 = 3;
    let formula = q.pow(12) * (q * q - 1) * (q.pow(4) - 1) * (q.pow(6) - 1) * (q.pow(4) + 1);
    ensure!(c.order == 20_303_937_239_040 && c.order == formula, "Molien {} formula {formula}", c.order);
    Ok("20303937239040 by both routes".into())
}

fn c11_brauer_properties() -> Check {
    let d = twisted_d4();
    let lib = CharacterLibrary::all_weyl_modules(&d, 3).map_err(|e| e.to_string())?;
    let zero = TorusElement::zero(4);
    for (lam, ch) in lib.entries() {
        let v = brauer_value(&d, ch, &zero, 3).map_err(|e| e.to_string())?;
        ensure!(v == int(ch.dimension(&d) as i64), "value at 1 of L{lam} is {v}");
    }
    ensure!(brauer_value(&d, &l0102(), &zero, 3).unwrap() == int(224), "L(0,1,0,2) at 1");
    let list = semisimple_classes(&d, 3, 3).map_err(|e| e.to_string())?;
    let chars = [lib.get(&w(&[0, 1, 0, 0])).unwrap().clone(), lib.get(&w(&[1, 0, 0, 1])).unwrap().clone(), l0102()];
    for ch in &chars {
        let tw = frobenius_twist(ch, 3, 1);
        for c in &list.classes {
            let lhs = brauer_value(&d, &tw, &c.rep, 3).map_err(|e| e.to_string())?;
            let rhs = brauer_value(&d, ch, &c.rep.scale(3), 3).map_err(|e| e.to_string())?;
            ensure!(lhs == rhs, "Frobenius compatibility fails at {}", c.rep);
            ensure!(brauer_value(&d, ch, &c.rep, 3).unwrap().galois(3).unwrap() == rhs, "Galois twist at {}", c.rep);
        }
    }
    let b = weyl_character(&d, &w(&[0, 0, 0, 2])).map_err(|e| e.to_string())?;
    let ab = tensor_product(&d, &l0102(), &b).map_err(|e| e.to_string())?;
    let step = list.classes.len() / 10;
    for c in list.classes.iter().step_by(step).take(10) {
        let lhs = brauer_value(&d, &ab, &c.rep, 3).unwrap();
        let rhs = &brauer_value(&d, &l0102(), &c.rep, 3).unwrap() * &brauer_value(&d, &b, &c.rep, 3).unwrap();
        ensure!(lhs == rhs, "tensor multiplicativity fails at {}", c.rep);
    }
    Ok(format!("{} degrees, Frobenius/Galois on 81 classes, tensor at 10 classes", lib.len() + 1))
}

fn c12_sl23() -> Check {
    let a1 = RootDatum::from_type("A1", None).unwrap();
    let lib = CharacterLibrary::all_weyl_modules(&a1, 3).map_err(|e| e.to_string())?;
    let classes = semisimple_classes(&a1, 3, 3).map_err(|e| e.to_string())?;
    let bt = brauer_table(&a1, &lib, &classes).map_err(|e| e.to_string())?;
    let cols: Vec<usize> = ["0", "1/4", "1/2"].iter().map(|s| classes.index_of(&t(s)).unwrap()).collect();
    let shown: Vec<Vec<Cyclotomic>> = bt.values.iter().map(|r| cols.iter().map(|&j| r[j].clone()).collect()).collect();
    let expect: Vec<Vec<Cyclotomic>> = [[1, 1, 1], [2, 0, -2], [3, -1, 3]].iter().map(|r| r.map(int).to_vec()).collect();
    ensure!(shown == expect, "Brauer table {shown:?}");
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/sl2_3.json");
    let table = AbstractTable::from_json(&std::fs::read_to_string(path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let ids = candidate_identifications(&classes, &table, &[], DEFAULT_CAP).map_err(|e| e.to_string())?;
    let report = filter_identifications(&ids, &table, &bt).map_err(|e| e.to_string())?;
    ensure!(report.survivors.len() == 1, "{} identifications survive", report.survivors.len());
    let dm = report.survivors[0].1.integer_entries().ok_or("decomposition matrix not integral")?;
    ensure!(dm.len() == 7 && dm.iter().all(|r| r.len() == 3), "shape {}x{}", dm.len(), dm[0].len());
    ensure!(dm.contains(&vec![0, 0, 1]), "no Steinberg row in {dm:?}");
    Ok(format!("table matches, 1 identification, D = {dm:?}"))
}

fn env_path(name: &str) -> Option<PathBuf> {
    std::env::var_os(name).map(PathBuf::from)
}

fn parse_pins(s: &str) -> Vec<(usize, usize)> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let (a, b) = p.split_once('=').expect("pins are i=j");
            (a.trim().parse().unwrap(), b.trim().parse().unwrap())
        })
        .collect()
}

fn c13_funnel() -> Check {
    let (Some(lib_dir), Some(table_path)) = (env_path("LIECHAR_D4P3_LIB"), env_path("LIECHAR_D4P3_TABLE")) else {
        return Err("external data not supplied (LIECHAR_D4P3_LIB, LIECHAR_D4P3_TABLE)".into());
    };
    let d = twisted_d4();
    let lib = CharacterLibrary::read_dir(&d, &lib_dir).map_err(|e| e.to_string())?;
    let mut table = AbstractTable::from_json(&std::fs::read_to_string(table_path).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    if let Ok(extra) = std::env::var("LIECHAR_D4P3_AUTOMORPHISMS") {
        let more: Vec<Vec<usize>> = serde_json::from_str(&extra).map_err(|e| e.to_string())?;
        table.automorphisms.extend(more);
    }
    let pins = std::env::var("LIECHAR_D4P3_PINS").map(|s| parse_pins(&s)).unwrap_or_default();
    let classes = semisimple_classes(&d, 3, 3).map_err(|e| e.to_string())?;
    let bt = brauer_table(&d, &lib, &classes).map_err(|e| e.to_string())?;
    let ids = candidate_identifications(&classes, &table, &pins, DEFAULT_CAP).map_err(|e| e.to_string())?;
    let report = filter_identifications(&ids, &table, &bt).map_err(|e| e.to_string())?;
    let counts = (report.candidates, report.survivors.len(), report.representatives.len());
    ensure!(counts == (64, 4, 2), "funnel {counts:?}, expected (64, 4, 2)");
    Ok("64 -> 4 -> 2".into())
}

/// Assembles the 81x81 table and checks it; returns a description.
fn full_table(lib: &CharacterLibrary) -> Check {
    let d = twisted_d4();
    let classes = semisimple_classes(&d, 3, 3).map_err(|e| e.to_string())?;
    let bt = brauer_table(&d, lib, &classes).map_err(|e| e.to_string())?;
    ensure!(bt.values.len() == 81 && bt.values.iter().all(|r| r.len() == 81), "table is not 81x81");
    let degrees = irreducible_degrees(4, 3, 3, &lib.dimensions(&d)).map_err(|e| e.to_string())?;
    for (label, row) in bt.labels.iter().zip(&bt.values) {
        let deg = degrees[label];
        ensure!(row[0] == int(deg as i64), "identity column at {label}: {} vs {deg}", row[0]);
    }
    let cert = modular_rank(&bt.values, bt.exponent());
    ensure!(cert.full && cert.rank == 81, "rank {} (mod {})", cert.rank, cert.prime);
    Ok(format!("81x81, identity column = degrees, rank 81 (mod {})", cert.prime))
}

fn c14_full_table() -> Check {
    match env_path("LIECHAR_D4P3_LIB") {
        Some(dir) => {
            let lib = CharacterLibrary::read_dir(&twisted_d4(), &dir).map_err(|e| e.to_string())?;
            full_table(&lib)
        }
        None => {
            let stand_in = CharacterLibrary::all_weyl_modules(&twisted_d4(), 3).map_err(|e| e.to_string())?;
            let detail = full_table(&stand_in).map_err(|e| format!("stand-in run failed: {e}"))?;
            Err(format!("external data not supplied (LIECHAR_D4P3_LIB); Weyl-module stand-in: {detail}"))
        }
    }
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
    /// Whether the criterion depends on data outside the repository.
    external: bool,
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { id: 1, name: "D4 reflections and |W|", budget: secs(1), run: c1_reflections, external: false },
        Criterion { id: 2, name: "orbits and orbit lengths", budget: secs(1), run: c2_orbits, external: false },
        Criterion { id: 3, name: "dimensions 224 and 7840", budget: secs(1), run: c3_dimensions, external: false },
        Criterion { id: 4, name: "tensor product table", budget: secs(10), run: c4_tensor_table, external: false },
        Criterion { id: 5, name: "decomposition identities", budget: secs(5), run: c5_decompositions, external: false },
        Criterion { id: 6, name: "torus fixed points", budget: secs(1), run: c6_fixed_points, external: false },
        Criterion { id: 7, name: "worked class t'", budget: secs(1), run: c7_worked_class, external: false },
        Criterion { id: 8, name: "semisimple class counts", budget: secs(30), run: c8_class_counts, external: false },
        Criterion { id: 9, name: "centre orders", budget: secs(1), run: c9_centers, external: false },
        Criterion { id: 10, name: "group order via Molien", budget: secs(60), run: c10_group_order, external: false },
        Criterion { id: 11, name: "Brauer property suite", budget: secs(60), run: c11_brauer_properties, external: false },
        Criterion { id: 12, name: "A1 / SL2(3) end to end", budget: secs(1), run: c12_sl23, external: false },
        Criterion { id: 13, name: "identification funnel", budget: secs(3600), run: c13_funnel, external: true },
        Criterion { id: 14, name: "full 81x81 table", budget: secs(600), run: c14_full_table, external: true },
    ];
    let mut failures = vec![];
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = match result {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; took {elapsed:.2?}, budget {:?}", c.budget)),
            other => other,
        };
        match &result {
            Ok(detail) => println!("PASS {:>2} {}: {detail} ({elapsed:.2?}, budget {:?})", c.id, c.name, c.budget),
            Err(reason) => {
                println!("FAIL {:>2} {}: {reason} ({elapsed:.2?})", c.id, c.name);
                let missing_data = c.external && reason.starts_with("external data not supplied");
                if !missing_data {
                    failures.push(c.id);
                }
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
