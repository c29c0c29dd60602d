//! Libraries of irreducible dominant characters for `p`-restricted highest
//! weights, and their on-disk text format.
//!
//! One file per highest weight:
//!
//! ```text
//! # datum D4 twist 1,2,3,4
//! # p 3
//! # highest 0,1,0,2
//! 0 1 0 2 : 1
//! 0 1 1 0 : 1
//! ```
//!
//! Weight lines are in decomposition order. A directory holds the files
//! plus `index.txt` listing them, one per line.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use crate::character::{DominantCharacter, IrreducibleSource};
use crate::datum::{RootDatum, Weight};
use crate::error::{Error, Result};
use crate::steinberg;
use crate::weyl::weyl_character;

pub const INDEX_FILE: &str = "index.txt";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterLibrary {
    datum_type: String,
    twist: String,
    p: u64,
    entries: BTreeMap<Weight, DominantCharacter>,
}

impl CharacterLibrary {
    pub fn new(datum: &RootDatum, p: u64) -> Self {
        CharacterLibrary {
            datum_type: datum.type_name(),
            twist: datum.twist_csv(),
            p,
            entries: BTreeMap::new(),
        }
    }

    /// Library whose entries are Weyl-module characters for the given
    /// highest weights. Only correct where the Weyl module is irreducible
    /// in characteristic `p`.
    pub fn from_weyl_modules<'a>(
        datum: &RootDatum,
        p: u64,
        weights: impl IntoIterator<Item = &'a Weight>,
    ) -> Result<Self> {
        let mut lib = Self::new(datum, p);
        for w in weights {
            lib.insert(datum, weyl_character(datum, w)?)?;
        }
        Ok(lib)
    }

    /// Weyl-module characters for every `p`-restricted weight.
    pub fn all_weyl_modules(datum: &RootDatum, p: u64) -> Result<Self> {
        let weights: Vec<Weight> = steinberg::restricted_weights(datum.rank(), p).collect();
        Self::from_weyl_modules(datum, p, &weights)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn datum_type(&self) -> &str {
        &self.datum_type
    }

    pub fn twist(&self) -> &str {
        &self.twist
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, w: &Weight) -> Option<&DominantCharacter> {
        self.entries.get(w)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, DominantCharacter> {
        &self.entries
    }

    /// Inserts a labelled character. The label must be `p`-restricted and
    /// an existing entry under the same label must be identical.
    pub fn insert(&mut self, datum: &RootDatum, ch: DominantCharacter) -> Result<()> {
        let label = ch
            .label()
            .cloned()
            .ok_or_else(|| Error::Schema("library characters must carry a label".into()))?;
        if label.rank() != datum.rank() || !label.is_restricted(self.p as i64) {
            return Err(Error::Schema(format!(
                "label {label} is not {}-restricted",
                self.p
            )));
        }
        // validates the dominance condition
        let ch = ch.with_label(datum, label.clone())?;
        match self.entries.get(&label) {
            Some(old) if *old != ch => Err(Error::LibraryConflict(label.to_string())),
            Some(_) => Ok(()),
            None => {
                self.entries.insert(label, ch);
                Ok(())
            }
        }
    }

    /// Checks the header data against a datum.
    pub fn check_datum(&self, datum: &RootDatum) -> Result<()> {
        if self.datum_type != datum.type_name() {
            return Err(Error::WrongType(format!(
                "library is for {}, datum is {}",
                self.datum_type,
                datum.type_name()
            )));
        }
        Ok(())
    }

    /// Dimensions of all entries.
    pub fn dimensions(&self, datum: &RootDatum) -> BTreeMap<Weight, u128> {
        self.entries
            .iter()
            .map(|(w, c)| (w.clone(), c.dimension(datum)))
            .collect()
    }

    pub fn file_name(w: &Weight) -> String {
        let parts: Vec<String> = w.coeffs().iter().map(i64::to_string).collect();
        format!("L_{}.txt", parts.join("_"))
    }

    pub fn write_dir(&self, datum: &RootDatum, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut index = String::new();
        for (w, ch) in &self.entries {
            let name = Self::file_name(w);
            fs::write(
                dir.join(&name),
                format_entry(datum, &self.datum_type, &self.twist, self.p, ch),
            )?;
            index.push_str(&name);
            index.push('\n');
        }
        fs::write(dir.join(INDEX_FILE), index)?;
        Ok(())
    }

    pub fn read_dir(datum: &RootDatum, dir: &Path) -> Result<Self> {
        let index = fs::read_to_string(dir.join(INDEX_FILE))?;
        let mut lib: Option<CharacterLibrary> = None;
        for name in index.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let text = fs::read_to_string(dir.join(name))?;
            let entry = parse_entry(&text)?;
            let lib = lib.get_or_insert_with(|| CharacterLibrary {
                datum_type: entry.datum_type.clone(),
                twist: entry.twist.clone(),
                p: entry.p,
                entries: BTreeMap::new(),
            });
            if entry.p != lib.p || entry.datum_type != lib.datum_type {
                return Err(Error::Schema(format!("{name}: header disagrees with the library")));
            }
            lib.insert(datum, entry.character)?;
        }
        let lib = lib.ok_or_else(|| Error::Schema("empty library index".into()))?;
        lib.check_datum(datum)?;
        Ok(lib)
    }
    /// Opens a library directory, or a single entry file, building the
    /// datum from the header.
    pub fn open(path: &Path) -> Result<(RootDatum, Self)> {
        let first = if path.is_dir() {
            let index = fs::read_to_string(path.join(INDEX_FILE))?;
            let name = index
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty())
                .ok_or_else(|| Error::Schema("empty library index".into()))?
                .to_string();
            fs::read_to_string(path.join(name))?
        } else {
            fs::read_to_string(path)?
        };
        let entry = parse_entry(&first)?;
        let datum = datum_from_header(&entry.datum_type, &entry.twist)?;
        if path.is_dir() {
            let lib = Self::read_dir(&datum, path)?;
            return Ok((datum, lib));
        }
        let mut lib = CharacterLibrary {
            datum_type: entry.datum_type,
            twist: entry.twist,
            p: entry.p,
            entries: BTreeMap::new(),
        };
        lib.insert(&datum, entry.character)?;
        Ok((datum, lib))
    }
}

/// The datum named in a library header.
pub fn datum_from_header(datum_type: &str, twist: &str) -> Result<RootDatum> {
    let perm = if twist.trim().is_empty() {
        None
    } else {
        Some(
            twist
                .split(',')
                .map(|s| {
                    s.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::TwistIncompatible(format!("bad twist {twist:?}")))
                })
                .collect::<Result<Vec<_>>>()?,
        )
    };
    RootDatum::from_type(datum_type, perm)
}

impl IrreducibleSource for CharacterLibrary {
    /// `p`-restricted weights come from the stored entries; any other
    /// dominant weight is assembled from its base-`p` digits.
    fn irreducible(&self, datum: &RootDatum, highest: &Weight) -> Result<DominantCharacter> {
        if highest.is_restricted(self.p as i64) {
            return self
                .entries
                .get(highest)
                .cloned()
                .ok_or_else(|| Error::MissingIrreducible(highest.to_string()));
        }
        steinberg::steinberg_character(datum, highest, self.p, self)
    }
}

/// One parsed library file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LibraryEntry {
    pub datum_type: String,
    pub twist: String,
    pub p: u64,
    pub character: DominantCharacter,
}

pub fn format_entry(
    datum: &RootDatum,
    datum_type: &str,
    twist: &str,
    p: u64,
    ch: &DominantCharacter,
) -> String {
    let mut out = format!("# datum {datum_type} twist {twist}\n# p {p}\n");
    if let Some(l) = ch.label() {
        out.push_str(&format!("# highest {}\n", l.to_csv()));
    }
    for w in ch.sorted_keys(datum) {
        let coords: Vec<String> = w.coeffs().iter().map(i64::to_string).collect();
        out.push_str(&format!("{} : {}\n", coords.join(" "), ch.multiplicity(&w)));
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses one library file. Dominance of the label over the other keys is
/// checked on insertion into a library, where the datum is known.
pub fn parse_entry(text: &str) -> Result<LibraryEntry> {
    let mut lines = text.lines().enumerate();
    let mut header = |tag: &str| -> Result<String> {
        let (i, line) = lines
            .next()
            .ok_or_else(|| perr(0, 1, format!("missing '# {tag}' header")))?;
        line.strip_prefix(&format!("# {tag} "))
            .map(str::to_string)
            .ok_or_else(|| perr(i + 1, 1, format!("expected '# {tag} ...'")))
    };
    let datum_line = header("datum")?;
    let (datum_type, twist) = datum_line
        .split_once(" twist ")
        .ok_or_else(|| perr(1, 9, "expected '# datum TYPE twist PERM'"))?;
    let p: u64 = header("p")?
        .trim()
        .parse()
        .map_err(|_| perr(2, 5, "bad characteristic"))?;
    let highest: Weight = header("highest")?.parse().map_err(|_| perr(3, 11, "bad highest weight"))?;
    let mut entries = Vec::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| perr(i + 1, 1, "expected 'a1 a2 ... : mult'"))?;
        let coeffs = lhs
            .split_whitespace()
            .enumerate()
            .map(|(k, t)| {
                t.parse::<i64>()
                    .map_err(|_| perr(i + 1, 1 + k, format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let key = Weight::new(coeffs);
        if key.rank() != highest.rank() {
            return Err(perr(i + 1, 1, format!("weight {key} has the wrong length")));
        }
        if !key.is_dominant() {
            return Err(perr(i + 1, 1, format!("weight {key} is not dominant")));
        }
        let m: u64 = rhs
            .trim()
            .parse()
            .map_err(|_| perr(i + 1, lhs.len() + 2, "bad multiplicity"))?;
        if m == 0 {
            return Err(perr(i + 1, lhs.len() + 2, format!("zero multiplicity at {key}")));
        }
        entries.push((key, m));
    }
    let character = DominantCharacter::new(entries)?;
    if character.multiplicity(&highest) == 0 {
        return Err(perr(3, 11, format!("highest weight {highest} has no weight line")));
    }
    Ok(LibraryEntry {
        datum_type: datum_type.trim().to_string(),
        twist: twist.trim().to_string(),
        p,
        character: character.with_label_unchecked(highest),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const L0102: &str = "# datum D4 twist 1,2,3,4\n# p 3\n# highest 0,1,0,2\n0 1 0 2 : 1\n0 1 1 0 : 1\n1 0 0 1 : 3\n0 1 0 0 : 6\n";

    #[test]
    fn parse_and_format_round_trip() {
        let d = RootDatum::from_type("D4", None).unwrap();
        let e = parse_entry(L0102).unwrap();
        assert_eq!(e.p, 3);
        assert_eq!(e.datum_type, "D4");
        assert_eq!(e.character.dimension(&d), 224);
        assert_eq!(format_entry(&d, "D4", "1,2,3,4", 3, &e.character), L0102);
    }

    #[test]
    fn non_dominant_key_is_named() {
        let bad = L0102.replace("0 1 1 0 : 1", "0 1 -1 0 : 1");
        match parse_entry(&bad) {
            Err(Error::Parse { line, message, .. }) => {
                assert_eq!(line, 5);
                assert!(message.contains("(0,1,-1,0)"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn conflicting_insert() {
        let d = RootDatum::from_type("D4", None).unwrap();
        let mut lib = CharacterLibrary::new(&d, 3);
        let e = parse_entry(L0102).unwrap();
        lib.insert(&d, e.character.clone()).unwrap();
        lib.insert(&d, e.character).unwrap();
        let other = parse_entry(&L0102.replace("0 1 0 0 : 6", "0 1 0 0 : 5")).unwrap();
        assert!(matches!(lib.insert(&d, other.character), Err(Error::LibraryConflict(_))));
    }

    #[test]
    fn directory_round_trip() {
        let d = RootDatum::from_type("A2", None).unwrap();
        let lib = CharacterLibrary::all_weyl_modules(&d, 2).unwrap();
        assert_eq!(lib.len(), 4);
        let dir = std::env::temp_dir().join(format!("liechar-lib-{}", std::process::id()));
        lib.write_dir(&d, &dir).unwrap();
        let back = CharacterLibrary::read_dir(&d, &dir).unwrap();
        assert_eq!(back, lib);
        std::fs::remove_dir_all(&dir).unwrap();
    }
}
