mod config;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use liechar::brauer::{brauer_table, BrauerTable};
use liechar::cartan::cartan_from_type;
use liechar::character::{decompose, frobenius_twist, tensor_product, DominantCharacter, IrreducibleSource};
use liechar::classes::{semisimple_classes, ClassList};
use liechar::formats::{
    brauer_from_json, brauer_to_json, classes_from_json, classes_to_json, roundtrip, write_canonical,
};
use liechar::library::{datum_from_header, format_entry, CharacterLibrary};
use liechar::matching::{candidate_identifications, filter_identifications, FilterReport, DEFAULT_CAP};
use liechar::matrix::IntMatrix;
use liechar::orbit::orbit;
use liechar::steinberg::{
    base_p_digits, gq_tensor_decompose, irreducible_degrees, prime_power_exponent, restriction_factors,
};
use liechar::table::AbstractTable;
use liechar::weyl::weyl_character;
use liechar::{Error, Result, RootDatum, TwistSpec, Weight};

use config::{characteristic_of, PipelineConfig};

#[derive(Parser, Debug)]
#[command(name = "liechar", version, about = "Brauer characters of finite groups of Lie type")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct DatumArgs {
    /// Cartan type such as D4 or A2+A1.
    #[arg(long = "type", value_parser = parse_type, conflicts_with = "cartan")]
    datum_type: Option<String>,
    /// Cartan matrix, rows separated by ';'.
    #[arg(long, value_parser = parse_matrix)]
    cartan: Option<IntMatrix>,
    /// 1-based images of the simple roots under the twist.
    #[arg(long, value_parser = parse_perm)]
    twist: Option<Perm>,
}

#[derive(Debug, Clone)]
struct Perm(Vec<usize>);

#[derive(Args, Debug, Clone)]
struct LibArg {
    /// Library directory or single entry file.
    #[arg(long, env = "LIECHAR_LIB")]
    lib: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cartan matrix, Weyl group order and reflections.
    Datum(DatumArgs),
    /// Weyl orbit of a weight.
    Orbit {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        /// Also list the orbit elements.
        #[arg(long)]
        list: bool,
    },
    /// Dominant characters.
    #[command(subcommand)]
    Char(CharCommand),
    /// Steinberg tensor-product operations.
    #[command(subcommand)]
    Steinberg(SteinbergCommand),
    /// Semisimple classes of G(q).
    Ssclasses {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Brauer character table on the semisimple classes.
    Brauer {
        #[command(flatten)]
        lib: LibArg,
        /// Classes file; computed from the library datum and --q otherwise.
        #[arg(long)]
        classes: Option<PathBuf>,
        #[arg(long, required_unless_present = "classes")]
        q: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Identify classes with an ordinary table and compute decomposition matrices.
    Match {
        #[arg(long)]
        classes: PathBuf,
        #[arg(long)]
        btable: PathBuf,
        #[arg(long)]
        table: PathBuf,
        /// Fix computed class i to table class j.
        #[arg(long = "pin", value_parser = parse_pin)]
        pins: Vec<(usize, usize)>,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Datum, classes, Brauer table and matching from a config file.
    Pipeline {
        #[arg(long)]
        config: PathBuf,
    },
    /// Rewrite an artifact in canonical form.
    Roundtrip {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit 1 unless the file is already canonical.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Subcommand, Debug)]
enum CharCommand {
    /// Dimension of a library character.
    Dim {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
    },
    /// Frobenius twist by p^power.
    Twist {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Tensor product of two irreducibles.
    Tensor {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long = "weight", value_parser = parse_weight, required = true)]
        weights: Vec<Weight>,
    },
    /// Composition factors of a tensor product of irreducibles.
    Decompose {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long = "weight", value_parser = parse_weight, required = true)]
        weights: Vec<Weight>,
    },
    /// Weyl-module character from the Freudenthal formula.
    Weyl {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Library of Weyl-module characters for every p-restricted weight.
    Library {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SteinbergCommand {
    /// Base-p digits of a dominant weight.
    Digits {
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        #[arg(long)]
        p: u64,
    },
    /// Tensor factors of L(lambda) restricted to G(q).
    Restrict {
        #[command(flatten)]
        datum: DatumArgs,
        #[arg(long, value_parser = parse_weight)]
        weight: Weight,
        #[arg(long)]
        q: u64,
    },
    /// Degrees of the q-restricted irreducibles.
    Degrees {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long)]
        q: u64,
    },
    /// Composition factors over G(q) of a tensor product.
    Gqtensor {
        #[command(flatten)]
        lib: LibArg,
        #[arg(long)]
        q: u64,
        #[arg(long = "weight", value_parser = parse_weight, required = true)]
        weights: Vec<Weight>,
    },
}

fn parse_type(s: &str) -> std::result::Result<String, String> {
    cartan_from_type(s).map(|_| s.to_string()).map_err(|e| e.to_string())
}

fn parse_perm(s: &str) -> std::result::Result<Perm, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad permutation entry {t:?}")))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map(Perm)
}

fn parse_matrix(s: &str) -> std::result::Result<IntMatrix, String> {
    let rows = s
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| format!("bad matrix entry {t:?}")))
                .collect::<std::result::Result<Vec<_>, _>>()
        })
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if rows.iter().any(|r| r.len() != rows.len()) {
        return Err("matrix must be square".into());
    }
    Ok(IntMatrix::from_rows(&rows))
}

fn parse_weight(s: &str) -> std::result::Result<Weight, String> {
    s.parse::<Weight>().map_err(|e| e.to_string())
}

fn parse_pin(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once('=').ok_or_else(|| format!("expected i=j, got {s:?}"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad class index {t:?}"));
    Ok((n(a)?, n(b)?))
}

fn expect_weights(ws: &[Weight], range: std::ops::RangeInclusive<usize>) {
    if !range.contains(&ws.len()) {
        let msg = if range.start() == range.end() {
            format!("--weight must be given {} times", range.start())
        } else {
            format!("--weight must be given {} to {} times", range.start(), range.end())
        };
        usage_error(&msg);
    }
}

fn usage_error(msg: &str) -> ! {
    Cli::command().error(clap::error::ErrorKind::ArgumentConflict, msg).exit()
}

impl DatumArgs {
    fn build(&self) -> Result<RootDatum> {
        match (&self.datum_type, &self.cartan) {
            (Some(t), _) => RootDatum::from_type(t, self.twist.clone().map(|p| p.0)),
            (None, Some(c)) => {
                let twist = self.twist.clone().map_or_else(|| (1..=c.nrows()).collect(), |p| p.0);
                RootDatum::new(c.clone(), &TwistSpec::Permutation(twist))
            }
            (None, None) => usage_error("one of --type or --cartan is required"),
        }
    }
}

fn open_library(path: &Path) -> Result<(RootDatum, CharacterLibrary)> {
    CharacterLibrary::open(path)
}

fn weight_json(w: &Weight) -> Value {
    json!(w.coeffs())
}

fn character_json(datum: &RootDatum, ch: &DominantCharacter) -> Value {
    let rows: Vec<Value> = ch
        .sorted_keys(datum)
        .iter()
        .map(|w| {
            json!({
                "weight": w.coeffs(),
                "multiplicity": ch.multiplicity(w),
                "orbit_length": liechar::orbit::orbit_length(datum, w).unwrap_or(0),
            })
        })
        .collect();
    json!({ "dimension": ch.dimension(datum).to_string(), "weights": rows })
}

fn character_text(datum: &RootDatum, ch: &DominantCharacter) -> String {
    let mut out = String::new();
    for w in ch.sorted_keys(datum) {
        let len = liechar::orbit::orbit_length(datum, &w).unwrap_or(0);
        out.push_str(&format!("{w} : {} [{len}]\n", ch.multiplicity(&w)));
    }
    out.push_str(&format!("dim {}\n", ch.dimension(datum)));
    out
}

fn factors_json(factors: &[(Weight, u64)]) -> Value {
    Value::Array(
        factors
            .iter()
            .map(|(w, m)| json!({"weight": w.coeffs(), "multiplicity": m}))
            .collect(),
    )
}

fn factors_text(factors: &[(Weight, u64)]) -> String {
    factors.iter().map(|(w, m)| format!("{w} x {m}\n")).collect()
}

struct Output {
    format: Format,
}

impl Output {
    fn emit(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
        match self.format {
            Format::Text => print!("{}", text()),
            Format::Json => print!("{}", write_canonical(&json())),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, contents)?;
    Ok(())
}

fn resolve_p(q: u64, p: Option<u64>) -> Result<u64> {
    let p = p.unwrap_or_else(|| characteristic_of(q));
    prime_power_exponent(q, p)?;
    Ok(p)
}

fn classes_text(list: &ClassList) -> String {
    let mut out = format!(
        "{} twist {:?} q {} p {}: {} classes, |G| = {}, centre {:?}\n",
        list.datum_type,
        list.twist,
        list.q,
        list.p,
        list.classes.len(),
        list.group_order,
        list.center
    );
    for (i, c) in list.classes.iter().enumerate() {
        out.push_str(&format!(
            "{i:>4} {} order {} orbit {} |C| {} {} {}\n",
            c.rep,
            c.order,
            c.orbit_size,
            c.centralizer_order,
            if c.subsystem_type.is_empty() { "-" } else { &c.subsystem_type },
            c.centralizer_type
        ));
    }
    out
}

fn btable_text(t: &BrauerTable) -> String {
    let mut out = String::new();
    for (label, row) in t.labels.iter().zip(&t.values) {
        let vals: Vec<String> = row.iter().map(|v| v.to_text()).collect();
        out.push_str(&format!("{label}: {}\n", vals.join(" | ")));
    }
    out
}

fn report_json(report: &FilterReport, all: &[Vec<usize>]) -> Value {
    let survivors: Vec<Value> = report
        .survivors
        .iter()
        .map(|(id, d)| {
            json!({
                "identification": id,
                "decomposition": d.integer_entries(),
            })
        })
        .collect();
    json!({
        "candidates": report.candidates,
        "identifications": all,
        "survivors": survivors,
        "representatives": report.representatives,
    })
}

fn report_text(report: &FilterReport) -> String {
    let mut out = format!(
        "{} candidates, {} valid, {} up to automorphisms\n",
        report.candidates,
        report.survivors.len(),
        report.representatives.len()
    );
    for &k in &report.representatives {
        let (id, d) = &report.survivors[k];
        out.push_str(&format!("identification {id:?}\n"));
        for row in d.integer_entries().unwrap_or_default() {
            let r: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&format!("  {}\n", r.join(" ")));
        }
    }
    out
}

fn classes_datum(list: &ClassList) -> Result<RootDatum> {
    let twist: Vec<String> = list.twist.iter().map(usize::to_string).collect();
    datum_from_header(&list.datum_type, &twist.join(","))
}

fn compute_brauer(datum: &RootDatum, lib: &CharacterLibrary, classes: &ClassList) -> Result<BrauerTable> {
    lib.check_datum(datum)?;
    if lib.p() != classes.p {
        return Err(Error::WrongType(format!("library is for p = {}, classes for p = {}", lib.p(), classes.p)));
    }
    brauer_table(datum, lib, classes)
}

fn run_match(
    classes: &ClassList,
    btable: &BrauerTable,
    table: &AbstractTable,
    pins: &[(usize, usize)],
    cap: usize,
) -> Result<(Vec<Vec<usize>>, FilterReport)> {
    let ids = candidate_identifications(classes, table, pins, cap)?;
    let report = filter_identifications(&ids, table, btable)?;
    Ok((ids, report))
}

fn run(cli: Cli) -> Result<()> {
    let out = Output { format: cli.format };
    match cli.command {
        Command::Datum(args) => {
            let d = args.build()?;
            out.emit(
                || {
                    let mut s = format!(
                        "type {}\nrank {}\ntwist {}\n|W| {}\npositive roots {}\ncartan\n",
                        d.type_name(),
                        d.rank(),
                        d.twist_csv(),
                        d.weyl_order(),
                        d.num_positive_roots()
                    );
                    for r in d.cartan().to_rows() {
                        let r: Vec<String> = r.iter().map(|x| format!("{x:>3}")).collect();
                        s.push_str(&format!("{}\n", r.join("")));
                    }
                    s
                },
                || {
                    json!({
                        "type": d.type_name(),
                        "rank": d.rank(),
                        "twist": d.twist_perm().iter().map(|i| i + 1).collect::<Vec<_>>(),
                        "weyl_order": d.weyl_order(),
                        "positive_roots": d.positive_roots().iter().map(weight_json).collect::<Vec<_>>(),
                        "cartan": d.cartan().to_rows(),
                        "reflections": d.reflections().iter().map(IntMatrix::to_rows).collect::<Vec<_>>(),
                    })
                },
            );
        }
        Command::Orbit { datum, weight, list } => {
            let d = datum.build()?;
            if weight.rank() != d.rank() {
                return Err(Error::RankMismatch { expected: d.rank(), got: weight.rank() });
            }
            let rec = orbit(&d, &weight);
            let mut elements: Vec<Weight> = if list { rec.elements.clone().unwrap_or_default() } else { vec![] };
            elements.sort_by(|a, b| b.cmp(a));
            out.emit(
                || {
                    let mut s = format!("dominant {}\nlength {}\n", rec.dominant_rep, rec.length);
                    for e in &elements {
                        s.push_str(&format!("{e}\n"));
                    }
                    s
                },
                || {
                    json!({
                        "dominant": rec.dominant_rep.coeffs(),
                        "length": rec.length,
                        "elements": elements.iter().map(weight_json).collect::<Vec<_>>(),
                    })
                },
            );
        }
        Command::Char(c) => run_char(c, &out)?,
        Command::Steinberg(c) => run_steinberg(c, &out)?,
        Command::Ssclasses { datum, q, p, out: path } => {
            let d = datum.build()?;
            let p = resolve_p(q, p)?;
            let list = semisimple_classes(&d, q, p)?;
            if let Some(path) = path {
                write_file(&path, &classes_to_json(&list)?)?;
            }
            out.emit(
                || classes_text(&list),
                || {
                    json!({
                        "classes": list.classes.len(),
                        "group_order": list.group_order.to_string(),
                        "center": list.center,
                    })
                },
            );
        }
        Command::Brauer { lib, classes, q, out: path } => {
            let (d, lib) = open_library(&lib.lib)?;
            let list = match (classes, q) {
                (Some(c), _) => {
                    let list = classes_from_json(&fs::read_to_string(c)?)?;
                    let cd = classes_datum(&list)?;
                    if cd.type_name() != d.type_name() {
                        return Err(Error::WrongType(format!(
                            "classes are for {}, library for {}",
                            cd.type_name(),
                            d.type_name()
                        )));
                    }
                    list
                }
                (None, Some(q)) => semisimple_classes(&d, q, resolve_p(q, Some(lib.p()))?)?,
                (None, None) => usage_error("one of --classes or --q is required"),
            };
            let d = classes_datum(&list)?;
            let table = compute_brauer(&d, &lib, &list)?;
            if let Some(path) = path {
                write_file(&path, &brauer_to_json(&table)?)?;
            }
            out.emit(
                || btable_text(&table),
                || serde_json::from_str(&brauer_to_json(&table).unwrap()).unwrap(),
            );
        }
        Command::Match { classes, btable, table, pins, cap, out: path } => {
            let list = classes_from_json(&fs::read_to_string(classes)?)?;
            let bt = brauer_from_json(&fs::read_to_string(btable)?)?;
            let table = AbstractTable::from_json(&fs::read_to_string(table)?)?;
            let (ids, report) = run_match(&list, &bt, &table, &pins, cap)?;
            if let Some(path) = path {
                write_file(&path, &write_canonical(&report_json(&report, &ids)))?;
            }
            out.emit(|| report_text(&report), || report_json(&report, &ids));
        }
        Command::Pipeline { config } => {
            let cfg = PipelineConfig::load(&config, std::env::var_os("LIECHAR_LIB").map(PathBuf::from))?;
            let d = cfg.datum()?;
            let (_, lib) = open_library(cfg.library.as_ref().expect("validated"))?;
            let table = cfg
                .table
                .as_ref()
                .map(|t| fs::read_to_string(t).map_err(Error::from).and_then(|s| AbstractTable::from_json(&s)))
                .transpose()?;
            let list = semisimple_classes(&d, cfg.q, cfg.p())?;
            if cfg.verbosity > 0 {
                eprintln!("{} classes", list.classes.len());
            }
            if let Some(p) = &cfg.outputs.classes {
                write_file(p, &classes_to_json(&list)?)?;
            }
            let bt = compute_brauer(&d, &lib, &list)?;
            if cfg.verbosity > 0 {
                eprintln!("Brauer table {}x{}", bt.labels.len(), bt.class_reps.len());
            }
            if let Some(p) = &cfg.outputs.btable {
                write_file(p, &brauer_to_json(&bt)?)?;
            }
            let mut summary = json!({
                "classes": list.classes.len(),
                "group_order": list.group_order.to_string(),
                "btable_rows": bt.labels.len(),
            });
            let mut text = format!("{} classes, |G| = {}\n", list.classes.len(), list.group_order);
            if let Some(table) = &table {
                let (ids, report) = run_match(&list, &bt, table, &cfg.pins, cfg.cap())?;
                if let Some(p) = &cfg.outputs.matches {
                    write_file(p, &write_canonical(&report_json(&report, &ids)))?;
                }
                summary["match"] = report_json(&report, &ids);
                text.push_str(&report_text(&report));
            }
            out.emit(|| text, || summary);
        }
        Command::Roundtrip { file, out: path, check } => {
            let text = fs::read_to_string(&file)?;
            let (_, canon) = roundtrip(&text)?;
            if check {
                if canon != text {
                    return Err(Error::Schema(format!("{} is not in canonical form", file.display())));
                }
                return Ok(());
            }
            match path {
                Some(p) => write_file(&p, &canon)?,
                None => print!("{canon}"),
            }
        }
    }
    Ok(())
}

fn run_char(c: CharCommand, out: &Output) -> Result<()> {
    match c {
        CharCommand::Dim { lib, weight } => {
            let (d, lib) = open_library(&lib.lib)?;
            let ch = lib.irreducible(&d, &weight)?;
            let dim = ch.dimension(&d);
            out.emit(|| format!("{dim}\n"), || json!({"weight": weight.coeffs(), "dimension": dim.to_string()}));
        }
        CharCommand::Twist { lib, weight, power } => {
            let (d, lib) = open_library(&lib.lib)?;
            let ch = frobenius_twist(&lib.irreducible(&d, &weight)?, lib.p(), power);
            out.emit(|| character_text(&d, &ch), || character_json(&d, &ch));
        }
        CharCommand::Tensor { lib, weights } => {
            expect_weights(&weights, 2..=2);
            let (d, lib) = open_library(&lib.lib)?;
            let a = lib.irreducible(&d, &weights[0])?;
            let b = lib.irreducible(&d, &weights[1])?;
            let ch = tensor_product(&d, &a, &b)?;
            out.emit(|| character_text(&d, &ch), || character_json(&d, &ch));
        }
        CharCommand::Decompose { lib, weights } => {
            expect_weights(&weights, 1..=2);
            let (d, lib) = open_library(&lib.lib)?;
            let mut ch = lib.irreducible(&d, &weights[0])?;
            if let Some(w) = weights.get(1) {
                ch = tensor_product(&d, &ch, &lib.irreducible(&d, w)?)?;
            }
            let factors = decompose(&d, &ch, &lib)?;
            out.emit(|| factors_text(&factors), || factors_json(&factors));
        }
        CharCommand::Weyl { datum, weight, p } => {
            let d = datum.build()?;
            let ch = weyl_character(&d, &weight)?;
            out.emit(
                || format_entry(&d, &d.type_name(), &d.twist_csv(), p, &ch),
                || character_json(&d, &ch),
            );
        }
        CharCommand::Library { datum, p, out: dir } => {
            let d = datum.build()?;
            let lib = CharacterLibrary::all_weyl_modules(&d, p)?;
            lib.write_dir(&d, &dir)?;
            out.emit(
                || format!("{} entries written to {}\n", lib.len(), dir.display()),
                || json!({"entries": lib.len(), "dir": dir.display().to_string()}),
            );
        }
    }
    Ok(())
}

fn run_steinberg(c: SteinbergCommand, out: &Output) -> Result<()> {
    match c {
        SteinbergCommand::Digits { weight, p } => {
            let f = base_p_digits(&weight, p)?;
            out.emit(
                || f.digits.iter().enumerate().map(|(i, w)| format!("{i}: {w}\n")).collect(),
                || json!({"p": p, "digits": f.digits.iter().map(weight_json).collect::<Vec<_>>()}),
            );
        }
        SteinbergCommand::Restrict { datum, weight, q } => {
            let d = datum.build()?;
            let factors = restriction_factors(&weight, q, d.twist())?;
            out.emit(
                || factors.iter().map(|w| format!("{w}\n")).collect(),
                || json!(factors.iter().map(weight_json).collect::<Vec<_>>()),
            );
        }
        SteinbergCommand::Degrees { lib, q } => {
            let (d, lib) = open_library(&lib.lib)?;
            let degrees = irreducible_degrees(d.rank(), q, lib.p(), &lib.dimensions(&d))?;
            out.emit(
                || degrees.iter().map(|(w, n)| format!("{}\t{n}\n", w.to_csv())).collect(),
                || {
                    let m: BTreeMap<String, String> =
                        degrees.iter().map(|(w, n)| (w.to_csv(), n.to_string())).collect();
                    json!(m)
                },
            );
        }
        SteinbergCommand::Gqtensor { lib, q, weights } => {
            expect_weights(&weights, 2..=2);
            let (d, lib) = open_library(&lib.lib)?;
            let m = gq_tensor_decompose(&d, &weights[0], &weights[1], q, lib.p(), &lib)?;
            let factors: Vec<(Weight, u64)> = m.into_iter().collect();
            out.emit(|| factors_text(&factors), || factors_json(&factors));
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
