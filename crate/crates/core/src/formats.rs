//! Canonical on-disk forms of the computed artifacts.
//!
//! JSON artifacts are written with keys in alphabetical order and one list
//! item per line, so that files diff cleanly. Reading a file and writing it
//! back yields its canonical form; canonical files are fixed points.
//!
//! Class lists are reordered by `(order, representative)` on write, with
//! every class index (power maps, central translates, centre) remapped.
//! Brauer tables are reordered the same way by column and by label
//! (lexicographic) by row.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::brauer::BrauerTable;
use crate::classes::{ClassList, OrderFactorization, SemisimpleClass};
use crate::cyclotomic::Cyclotomic;
use crate::datum::{Weight, WeylElement};
use crate::error::{Error, Result};
use crate::library::{datum_from_header, format_entry, parse_entry};
use crate::matrix::IntMatrix;
use crate::table::{big_number, AbstractTable};
use crate::torus::TorusElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArtifactKind {
    LibraryEntry,
    Classes,
    BrauerTable,
    OrdinaryTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassEntry {
    rep: Vec<String>,
    order: u64,
    orbit_size: u64,
    #[serde(with = "big_number")]
    centralizer_order: u128,
    subsystem_type: String,
    centralizer_type: String,
    q_power: u32,
    reciprocal_molien: Vec<i64>,
    stab_w: Vec<Vec<i64>>,
    subsystem: Vec<Vec<i64>>,
    power: BTreeMap<u64, usize>,
    central: BTreeMap<usize, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassesFile {
    datum: String,
    twist: Vec<usize>,
    q: u64,
    p: u64,
    group_order: String,
    center: Vec<usize>,
    classes: Vec<ClassEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BrauerFile {
    datum: String,
    twist: Vec<usize>,
    q: u64,
    p: u64,
    class_reps: Vec<Vec<String>>,
    labels: Vec<Vec<i64>>,
    values: Vec<Vec<Cyclotomic>>,
}

fn schema(msg: impl Into<String>) -> Error {
    Error::Schema(msg.into())
}

fn class_order_key(t: &TorusElement) -> (u64, TorusElement) {
    (t.order(), t.clone())
}

fn to_entry(c: &SemisimpleClass) -> Result<ClassEntry> {
    let molien = c
        .factorization
        .reciprocal_molien
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| schema("Molien coefficient out of range")))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassEntry {
        rep: c.rep.to_strings(),
        order: c.order,
        orbit_size: c.orbit_size,
        centralizer_order: c.centralizer_order,
        subsystem_type: c.subsystem_type.clone(),
        centralizer_type: c.centralizer_type.clone(),
        q_power: c.factorization.q_power,
        reciprocal_molien: molien,
        stab_w: c.stab_w.matrix.to_rows(),
        subsystem: c.subsystem.iter().map(|w| w.coeffs().to_vec()).collect(),
        power: c.power_map.clone(),
        central: c.central_translates.clone(),
    })
}

fn from_entry(e: &ClassEntry, rank: usize) -> Result<SemisimpleClass> {
    if e.rep.len() != rank || e.stab_w.len() != rank || e.stab_w.iter().any(|r| r.len() != rank) {
        return Err(schema(format!("class {:?} has the wrong rank", e.rep)));
    }
    let rep = TorusElement::parse_coords(&e.rep)?;
    if rep.order() != e.order {
        return Err(schema(format!("class {rep} has order {}, not {}", rep.order(), e.order)));
    }
    Ok(SemisimpleClass {
        rep,
        order: e.order,
        orbit_size: e.orbit_size,
        stab_w: WeylElement {
            matrix: IntMatrix::from_rows(&e.stab_w),
        },
        subsystem: e.subsystem.iter().map(|w| Weight::new(w.clone())).collect(),
        subsystem_type: e.subsystem_type.clone(),
        centralizer_type: e.centralizer_type.clone(),
        factorization: OrderFactorization {
            q_power: e.q_power,
            reciprocal_molien: e.reciprocal_molien.iter().map(|&x| BigInt::from(x)).collect(),
        },
        centralizer_order: e.centralizer_order,
        power_map: e.power.clone(),
        central_translates: e.central.clone(),
    })
}

/// Sorts the classes into canonical order, remapping every index.
pub fn canonicalize_classes(list: &mut ClassList) -> Result<()> {
    let n = list.classes.len();
    let check = |i: usize| {
        if i < n {
            Ok(i)
        } else {
            Err(schema(format!("class index {i} out of range")))
        }
    };
    let mut perm: Vec<usize> = (0..n).collect();
    perm.sort_by_key(|&i| class_order_key(&list.classes[i].rep));
    if perm.windows(2).any(|w| list.classes[w[0]].rep == list.classes[w[1]].rep) {
        return Err(schema("duplicate class representative"));
    }
    let mut new_index = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        new_index[old] = new;
    }
    let mut classes = Vec::with_capacity(n);
    for &old in &perm {
        let mut c = list.classes[old].clone();
        c.power_map = c
            .power_map
            .iter()
            .map(|(&r, &j)| Ok((r, new_index[check(j)?])))
            .collect::<Result<_>>()?;
        c.central_translates = c
            .central_translates
            .iter()
            .map(|(&z, &j)| Ok((new_index[check(z)?], new_index[check(j)?])))
            .collect::<Result<_>>()?;
        classes.push(c);
    }
    list.classes = classes;
    list.center = list
        .center
        .iter()
        .map(|&z| Ok(new_index[check(z)?]))
        .collect::<Result<Vec<_>>>()?;
    list.center.sort_unstable();
    Ok(())
}

pub fn classes_to_json(list: &ClassList) -> Result<String> {
    let mut list = list.clone();
    canonicalize_classes(&mut list)?;
    let file = ClassesFile {
        datum: list.datum_type.clone(),
        twist: list.twist.clone(),
        q: list.q,
        p: list.p,
        group_order: list.group_order.to_string(),
        center: list.center.clone(),
        classes: list.classes.iter().map(to_entry).collect::<Result<_>>()?,
    };
    Ok(write_canonical(&serde_json::to_value(file)?))
}

pub fn classes_from_json(text: &str) -> Result<ClassList> {
    let file: ClassesFile = serde_json::from_str(text)?;
    let rank = file.twist.len();
    let group_order = file
        .group_order
        .trim()
        .parse()
        .map_err(|_| schema(format!("bad group order {:?}", file.group_order)))?;
    let mut list = ClassList {
        datum_type: file.datum,
        twist: file.twist,
        q: file.q,
        p: file.p,
        classes: file.classes.iter().map(|e| from_entry(e, rank)).collect::<Result<_>>()?,
        center: file.center,
        group_order,
    };
    canonicalize_classes(&mut list)?;
    Ok(list)
}

/// Rows by label, columns by class order.
pub fn canonicalize_brauer(table: &mut BrauerTable) {
    let mut cols: Vec<usize> = (0..table.class_reps.len()).collect();
    cols.sort_by_key(|&i| class_order_key(&table.class_reps[i]));
    let mut rows: Vec<usize> = (0..table.labels.len()).collect();
    rows.sort_by(|&a, &b| table.labels[a].cmp(&table.labels[b]));
    table.class_reps = cols.iter().map(|&i| table.class_reps[i].clone()).collect();
    table.labels = rows.iter().map(|&i| table.labels[i].clone()).collect();
    table.values = rows
        .iter()
        .map(|&r| cols.iter().map(|&c| table.values[r][c].clone()).collect())
        .collect();
}

pub fn brauer_to_json(table: &BrauerTable) -> Result<String> {
    let mut t = table.clone();
    canonicalize_brauer(&mut t);
    let file = BrauerFile {
        datum: t.datum_type,
        twist: t.twist,
        q: t.q,
        p: t.p,
        class_reps: t.class_reps.iter().map(TorusElement::to_strings).collect(),
        labels: t.labels.into_iter().map(Weight::into_coeffs).collect(),
        values: t.values,
    };
    Ok(write_canonical(&serde_json::to_value(file)?))
}

pub fn brauer_from_json(text: &str) -> Result<BrauerTable> {
    let file: BrauerFile = serde_json::from_str(text)?;
    let ncols = file.class_reps.len();
    if file.values.len() != file.labels.len() || file.values.iter().any(|r| r.len() != ncols) {
        return Err(schema("Brauer table values do not match labels and classes"));
    }
    let mut t = BrauerTable {
        datum_type: file.datum,
        twist: file.twist,
        p: file.p,
        q: file.q,
        class_reps: file
            .class_reps
            .iter()
            .map(|r| TorusElement::parse_coords(r))
            .collect::<Result<_>>()?,
        labels: file.labels.into_iter().map(Weight::new).collect(),
        values: file.values,
    };
    canonicalize_brauer(&mut t);
    Ok(t)
}

pub fn table_to_json(table: &AbstractTable) -> Result<String> {
    Ok(write_canonical(&serde_json::to_value(table)?))
}

/// Canonical layout: alphabetical keys, one item per line for top-level
/// lists, everything else compact.
pub fn write_canonical(v: &Value) -> String {
    let Value::Object(map) = v else {
        return format!("{v}\n");
    };
    let mut out = String::from("{\n");
    let n = map.len();
    for (k, (key, val)) in map.iter().enumerate() {
        out.push_str(&format!("  {}: ", Value::String(key.clone())));
        match val {
            Value::Array(items) if !items.is_empty() => {
                out.push_str("[\n");
                for (i, item) in items.iter().enumerate() {
                    let sep = if i + 1 < items.len() { "," } else { "" };
                    out.push_str(&format!("    {item}{sep}\n"));
                }
                out.push_str("  ]");
            }
            _ => out.push_str(&val.to_string()),
        }
        out.push_str(if k + 1 < n { ",\n" } else { "\n" });
    }
    out.push_str("}\n");
    out
}

pub fn detect_kind(text: &str) -> Result<ArtifactKind> {
    if text.trim_start().starts_with("# datum") {
        return Ok(ArtifactKind::LibraryEntry);
    }
    let v: Value = serde_json::from_str(text)?;
    let Value::Object(map) = v else {
        return Err(schema("expected a JSON object or a library entry"));
    };
    if map.contains_key("chars") {
        Ok(ArtifactKind::OrdinaryTable)
    } else if map.contains_key("labels") {
        Ok(ArtifactKind::BrauerTable)
    } else if map.contains_key("center") {
        Ok(ArtifactKind::Classes)
    } else {
        Err(schema("unrecognised artifact"))
    }
}

/// Parses a library entry and re-formats it against its own datum.
pub fn canonical_library_entry(text: &str) -> Result<String> {
    let e = parse_entry(text)?;
    let datum = datum_from_header(&e.datum_type, &e.twist)?;
    let label = e.character.label().cloned().expect("parsed entries carry a label");
    let ch = e.character.clone().with_label(&datum, label)?;
    Ok(format_entry(&datum, &e.datum_type, &e.twist, e.p, &ch))
}

/// Parse then serialise any artifact.
pub fn roundtrip(text: &str) -> Result<(ArtifactKind, String)> {
    let kind = detect_kind(text)?;
    let out = match kind {
        ArtifactKind::LibraryEntry => canonical_library_entry(text)?,
        ArtifactKind::Classes => classes_to_json(&classes_from_json(text)?)?,
        ArtifactKind::BrauerTable => brauer_to_json(&brauer_from_json(text)?)?,
        ArtifactKind::OrdinaryTable => table_to_json(&AbstractTable::from_json(text)?)?,
    };
    Ok((kind, out))
}
