//! Task configs, execution, and report assembly.
//!
//! Every subcommand is reified as a [`RunConfig`] value that lands in the
//! report next to the result, so `rerun` can replay any report file and
//! check that the result still comes out identical.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;
use wordmap_core::compact::{
    rank_metric_density, root_sl2c, solve_word_equation, sqrt_sl2r, thom_decay, CMat, Complex,
    DensityConfig, LengthNorm, RMat2, SolveConfig, ThomDecayConfig, ZMat2,
};
use wordmap_core::fingroups::{build_group, cache, FiniteGroup, GroupSpec};
use wordmap_core::imaging::{
    chirality, fibers, image, surjectivity_scan, waring_check, width, EvalMode, GroupSummary,
    WidthOutcome,
};
use wordmap_core::liebracket::{bracket_image, LieSpace};
use wordmap_core::symbolic::{
    trace_polynomial, unipotent_certificate, DerivedClass, ExactScalar, RationalMatrix2,
};
use wordmap_core::words::{parse as parse_word, Word};

#[derive(Debug)]
pub enum CliError {
    /// Malformed invocation; exits 2.
    Usage(String),
    /// The engines rejected the input or the run failed; exits 1.
    Domain(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Domain(m) => f.write_str(m),
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}

domain_from!(
    wordmap_core::words::WordError,
    wordmap_core::fingroups::GroupError,
    wordmap_core::imaging::ImagingError,
    wordmap_core::symbolic::SymbolicError,
    wordmap_core::compact::CompactError,
    wordmap_core::liebracket::BracketError
);

/// Complex matrix as JSON-friendly nested rows of [re, im].
pub type MatrixRows = Vec<Vec<[f64; 2]>>;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RootField {
    Real,
    Complex,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case")]
pub enum RunConfig {
    Parse { word: String },
    Group { group: GroupSpec },
    Image { group: GroupSpec, word: String, mode: EvalMode },
    Fibers { group: GroupSpec, word: String, mode: EvalMode },
    Width { group: GroupSpec, word: String, mode: EvalMode, cap: u32 },
    Chirality { group: GroupSpec, word: String, mode: EvalMode },
    Waring { group: GroupSpec, factors: Vec<String>, mode: EvalMode },
    Scan { word: String, primes: Vec<u32>, mode: EvalMode },
    TracePoly { word: String, constants: Vec<[[String; 2]; 2]> },
    Magnus { word: String },
    Thom { dim: usize, kmax: u32, samples: usize, seed: u64, norm: LengthNorm },
    Solve { word: String, dim: usize, target: MatrixRows, seed: u64, budget: u64, tol: f64 },
    Density { word: String, dim: usize, samples: usize, targets: usize, epsilon: f64, seed: u64 },
    Root { field: RootField, k: u32, matrix: MatrixRows },
    Bracket { p: u32, space: LieSpace },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Meta {
    pub tool: String,
    pub version: String,
    pub threads: usize,
    pub timing_ms: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub config: RunConfig,
    pub result: Value,
    pub meta: Meta,
}

pub struct Execution {
    pub result: Value,
    pub summary: String,
    /// Tabular projection, present for row-shaped results.
    pub csv: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct ParseReport {
    input: String,
    canonical: String,
    rank: u32,
    length: usize,
    exponent_sums: Vec<i64>,
    support: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proper_power: Option<ProperPower>,
}

#[derive(Serialize, Deserialize)]
struct ProperPower {
    root: String,
    exponent: u32,
}

#[derive(Serialize, Deserialize)]
struct GroupReport {
    group: GroupSummary,
    class_count: usize,
    center_size: usize,
    classes: Vec<ClassRow>,
}

#[derive(Serialize, Deserialize)]
struct ClassRow {
    class_id: u32,
    element_order: u32,
    class_size: usize,
    inverse_class: u32,
}

#[derive(Serialize, Deserialize)]
struct TraceReport {
    word: String,
    constants: Vec<[[String; 2]; 2]>,
    phi: String,
    origin_value: String,
    nonconstant: bool,
}

/// Group specs come in as shorthand like `psl2:7` or as a path to a JSON
/// descriptor (needed for permutation groups).
pub fn resolve_group_spec(arg: &str) -> Result<GroupSpec, CliError> {
    let path = PathBuf::from(arg);
    if path.exists() || arg.ends_with(".json") {
        let text = std::fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read group file {arg}: {e}")))?;
        return serde_json::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad group descriptor {arg}: {e}")));
    }
    GroupSpec::parse_shorthand(arg).map_err(|e| CliError::Usage(e.to_string()))
}

/// Build a group, going through the on-disk cache when WORDMAP_CACHE_DIR
/// is set.
pub fn obtain_group(spec: &GroupSpec) -> Result<FiniteGroup, CliError> {
    let dir = match std::env::var("WORDMAP_CACHE_DIR") {
        Ok(d) if !d.is_empty() => PathBuf::from(d),
        _ => return Ok(build_group(spec)?),
    };
    let path = cache::cache_path(&dir, spec, cache::CacheFormat::Binary);
    if path.exists() {
        match cache::load(&path) {
            Ok(g) if g.spec() == spec => {
                eprintln!("group cache: loaded {}", path.display());
                return Ok(g);
            }
            Ok(_) => {
                eprintln!("group cache: {} holds a different group, rebuilding", path.display())
            }
            Err(e) => eprintln!("group cache: ignoring {} ({e})", path.display()),
        }
    }
    let g = build_group(spec)?;
    if let Err(e) = std::fs::create_dir_all(&dir)
        .map_err(wordmap_core::fingroups::GroupError::from)
        .and_then(|_| cache::save(&g, &path, cache::CacheFormat::Binary))
    {
        eprintln!("group cache: could not save {} ({e})", path.display());
    } else {
        eprintln!("group cache: saved {}", path.display());
    }
    Ok(g)
}

fn word(text: &str) -> Result<Word, CliError> {
    Ok(parse_word(text, None)?)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Accepts entries as plain numbers (imaginary part 0) or [re, im] pairs.
pub fn parse_matrix_rows(text: &str) -> Result<MatrixRows, CliError> {
    let bad = |m: &str| CliError::Usage(format!("bad matrix '{text}': {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let rows = v.as_array().ok_or_else(|| bad("expected an array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| bad("expected rows to be arrays"))?;
        let mut r = Vec::with_capacity(row.len());
        for entry in row {
            let pair = match entry {
                Value::Number(n) => [n.as_f64().ok_or_else(|| bad("bad number"))?, 0.0],
                Value::Array(p) if p.len() == 2 => {
                    let re = p[0].as_f64().ok_or_else(|| bad("bad real part"))?;
                    let im = p[1].as_f64().ok_or_else(|| bad("bad imaginary part"))?;
                    [re, im]
                }
                _ => return Err(bad("entries must be numbers or [re, im] pairs")),
            };
            r.push(pair);
        }
        out.push(r);
    }
    if out.is_empty() || out.iter().any(|r| r.len() != out.len()) {
        return Err(bad("matrix must be square and nonempty"));
    }
    Ok(out)
}

/// `identity`, `minus-identity`, `@file.json`, or inline JSON rows.
pub fn parse_target(arg: &str, dim: usize) -> Result<MatrixRows, CliError> {
    let named = |diag: f64| -> MatrixRows {
        (0..dim)
            .map(|i| (0..dim).map(|j| [if i == j { diag } else { 0.0 }, 0.0]).collect())
            .collect()
    };
    let rows = match arg {
        "identity" => named(1.0),
        "minus-identity" => named(-1.0),
        _ if arg.starts_with('@') => {
            let text = std::fs::read_to_string(&arg[1..])
                .map_err(|e| CliError::Usage(format!("cannot read target file: {e}")))?;
            parse_matrix_rows(&text)?
        }
        _ => parse_matrix_rows(arg)?,
    };
    if rows.len() != dim {
        return Err(CliError::Usage(format!(
            "target is {}x{} but --dim is {dim}",
            rows.len(),
            rows.len()
        )));
    }
    Ok(rows)
}

fn rows_to_cmat(rows: &MatrixRows) -> CMat {
    let n = rows.len();
    CMat::from_fn(n, n, |i, j| complex(rows[i][j]))
}

fn complex(p: [f64; 2]) -> Complex<f64> {
    Complex::new(p[0], p[1])
}

/// Canonicalize a rational matrix argument like `[[0,1],["-1/2",0]]`.
pub fn parse_rational_matrix(text: &str) -> Result<[[String; 2]; 2], CliError> {
    let bad = |m: &str| CliError::Usage(format!("bad constant '{text}': {m}"));
    let v: Value = serde_json::from_str(text).map_err(|e| bad(&e.to_string()))?;
    let rows = v.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("need 2 rows"))?;
    let mut out = [[String::new(), String::new()], [String::new(), String::new()]];
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().filter(|r| r.len() == 2).ok_or_else(|| bad("need 2 columns"))?;
        for (j, entry) in row.iter().enumerate() {
            let s = match entry {
                Value::Number(n) if n.is_i64() => n.to_string(),
                Value::String(s) => s.clone(),
                _ => return Err(bad("entries must be integers or rational strings like \"1/2\"")),
            };
            let r = ExactScalar::from_str(&s).map_err(|e| bad(&format!("{s}: {e}")))?;
            out[i][j] = r.to_string();
        }
    }
    Ok(out)
}

fn rational_matrix(rows: &[[String; 2]; 2]) -> Result<RationalMatrix2, CliError> {
    let mut e = Vec::with_capacity(4);
    for row in rows {
        for s in row {
            e.push(
                ExactScalar::from_str(s)
                    .map_err(|err| CliError::Usage(format!("bad rational {s}: {err}")))?,
            );
        }
    }
    Ok(RationalMatrix2::new([e[0].clone(), e[1].clone(), e[2].clone(), e[3].clone()]))
}

/// Waring factors may reuse variables across factors; shift each factor
/// onto fresh generators so the product uses disjoint variables.
pub fn shift_factors(factors: &[Word]) -> Vec<Word> {
    let mut next = 1u32;
    factors
        .iter()
        .map(|f| {
            let support = f.support();
            let images: Vec<Word> = (1..=f.rank())
                .map(|g| {
                    if support.contains(&g) {
                        let w = Word::generator(next);
                        next += 1;
                        w
                    } else {
                        Word::generator(1)
                    }
                })
                .collect();
            f.substitute(&images).expect("arity matches rank")
        })
        .collect()
}

fn fmt_f(x: f64) -> String {
    format!("{x:.3e}")
}

fn ordinal(k: u32) -> String {
    let suffix = match (k % 10, k % 100) {
        (_, 11..=13) => "th",
        (1, _) => "st",
        (2, _) => "nd",
        (3, _) => "rd",
        _ => "th",
    };
    format!("{k}{suffix}")
}

pub fn execute(config: &RunConfig) -> Result<Execution, CliError> {
    match config {
        RunConfig::Parse { word: text } => {
            let w = word(text)?;
            let proper_power = if w.is_identity() {
                None
            } else {
                let (root, e) = w.proper_power_root()?;
                (e > 1).then(|| ProperPower { root: root.render(), exponent: e })
            };
            let rep = ParseReport {
                input: text.clone(),
                canonical: w.render(),
                rank: w.rank(),
                length: w.len(),
                exponent_sums: w.exponent_sums(),
                support: w.support(),
                proper_power,
            };
            let mut s = format!(
                "word: {}\nrank {}, length {}, exponent sums {:?}",
                rep.canonical, rep.rank, rep.length, rep.exponent_sums
            );
            if let Some(p) = &rep.proper_power {
                let _ = write!(s, "\nproper power: ({})^{}", p.root, p.exponent);
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Group { group } => {
            let g = obtain_group(group)?;
            let ct = g.classes();
            let classes: Vec<ClassRow> = (0..ct.count() as u32)
                .map(|c| ClassRow {
                    class_id: c,
                    element_order: ct.element_order(c),
                    class_size: ct.size(c),
                    inverse_class: ct.inverse_class(c),
                })
                .collect();
            let rep = GroupReport {
                group: GroupSummary::new(&g),
                class_count: classes.len(),
                center_size: g.center().len(),
                classes,
            };
            let mut s = format!(
                "{}: order {}, {} conjugacy classes, center of size {}",
                group, rep.group.order, rep.class_count, rep.center_size
            );
            for c in &rep.classes {
                let _ = write!(
                    s,
                    "\n  class {:>3}: element order {:>3}, size {:>6}, inverse class {}",
                    c.class_id, c.element_order, c.class_size, c.inverse_class
                );
            }
            let csv = {
                let mut t = String::from("class_id,element_order,class_size,inverse_class\n");
                for c in &rep.classes {
                    let _ = writeln!(
                        t,
                        "{},{},{},{}",
                        c.class_id, c.element_order, c.class_size, c.inverse_class
                    );
                }
                t
            };
            Ok(Execution { result: to_value(&rep), summary: s, csv: Some(csv) })
        }
        RunConfig::Image { group, word: text, mode } => {
            let g = obtain_group(group)?;
            let rep = image(&g, &word(text)?, *mode)?;
            let s = format!(
                "image of {} on {}: {} of {} elements in {} of {} classes; surjective: {}",
                rep.word,
                group,
                rep.image_count,
                rep.group.order,
                rep.image_classes.len(),
                rep.image_classes.len() + rep.missed_classes.len(),
                rep.surjective
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Fibers { group, word: text, mode } => {
            let g = obtain_group(group)?;
            let rep = fibers(&g, &word(text)?, *mode)?;
            let mut s =
                format!("fibers of {} on {} (per-element counts by class):", rep.word, group);
            for f in &rep.fibers {
                let _ = write!(
                    s,
                    "\n  class {:>3} (order {:>3}, size {:>6}): {}",
                    f.class.class_id, f.class.element_order, f.class.class_size, f.value
                );
            }
            let mut csv = String::from("class_id,element_order,class_size,fiber\n");
            for f in &rep.fibers {
                let _ = writeln!(
                    csv,
                    "{},{},{},{}",
                    f.class.class_id, f.class.element_order, f.class.class_size, f.value
                );
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: Some(csv) })
        }
        RunConfig::Width { group, word: text, mode, cap } => {
            let g = obtain_group(group)?;
            let rep = width(&g, &word(text)?, *mode, *cap)?;
            let outcome = match &rep.outcome {
                WidthOutcome::Finite { width } => format!("covers at k = {width}"),
                WidthOutcome::Infinite { stabilized_at, subgroup_order } => format!(
                    "never covers; powers stabilize at k = {stabilized_at} on a subgroup of order {subgroup_order}"
                ),
                WidthOutcome::ExceedsCap { cap } => format!("undecided within cap {cap}"),
            };
            let s = format!(
                "width of {} on {}: {}; image power sizes {:?}",
                rep.word, group, outcome, rep.power_sizes
            );
            let mut csv = String::from("k,power_size\n");
            for (i, sz) in rep.power_sizes.iter().enumerate() {
                let _ = writeln!(csv, "{},{}", i + 1, sz);
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: Some(csv) })
        }
        RunConfig::Chirality { group, word: text, mode } => {
            let g = obtain_group(group)?;
            let rep = chirality(&g, &word(text)?, *mode)?;
            let mut s = format!("{} on {}: weakly chiral: {}", rep.word, group, rep.weakly_chiral);
            for wtn in &rep.witnesses {
                let _ = write!(
                    s,
                    "\n  class {} has fiber {}, its inverse class {} has fiber {}",
                    wtn.class.class_id, wtn.fiber, wtn.inverse_class.class_id, wtn.inverse_fiber
                );
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Waring { group, factors, mode } => {
            let g = obtain_group(group)?;
            let parsed: Vec<Word> = factors.iter().map(|f| word(f)).collect::<Result<_, _>>()?;
            let shifted = shift_factors(&parsed);
            let rep = waring_check(&g, &shifted, *mode)?;
            let s = format!(
                "waring product of {:?} on {}: sizes {:?}; covers group: {}; covers noncentral: {}",
                factors, group, rep.product_sizes, rep.covers_group, rep.covers_noncentral
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Scan { word: text, primes, mode } => {
            if primes.is_empty() {
                return Err(CliError::Usage("scan needs at least one prime".into()));
            }
            let rep = surjectivity_scan(&word(text)?, primes, *mode);
            let mut s = format!("surjectivity of {} over PSL(2,p):", rep.word);
            for row in &rep.rows {
                let verdict = match (row.surjective, &row.error) {
                    (Some(true), _) => "surjective".to_string(),
                    (Some(false), _) => {
                        let n = row.missed_classes.len();
                        let noun = if n == 1 { "class" } else { "classes" };
                        format!("NOT surjective (misses {n} {noun})")
                    }
                    (None, Some(e)) => format!("error: {e}"),
                    (None, None) => "unknown".to_string(),
                };
                let _ = write!(s, "\n  p = {:>3}: {}", row.p, verdict);
            }
            let mut csv = String::from("p,order,surjective,missed_classes,error\n");
            for row in &rep.rows {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{}",
                    row.p,
                    row.order.map_or(String::new(), |o| o.to_string()),
                    row.surjective.map_or(String::new(), |b| b.to_string()),
                    row.missed_classes.len(),
                    row.error.clone().unwrap_or_default()
                );
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: Some(csv) })
        }
        RunConfig::TracePoly { word: text, constants } => {
            let w = word(text)?;
            let mats: Vec<RationalMatrix2> =
                constants.iter().map(rational_matrix).collect::<Result<_, _>>()?;
            let res = trace_polynomial(&w, &mats)?;
            let rep = TraceReport {
                word: w.render(),
                constants: constants.clone(),
                phi: res.phi.render(),
                origin_value: res.origin_value.to_string(),
                nonconstant: res.nonconstant,
            };
            let s = format!(
                "trace polynomial of {}: {}\nvalue at the origin: {}; nonconstant: {}",
                rep.word, rep.phi, rep.origin_value, rep.nonconstant
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Magnus { word: text } => {
            let rep = unipotent_certificate(&word(text)?)?;
            let class = match rep.class {
                DerivedClass::NotInDerived => "not in the derived subgroup",
                DerivedClass::InDerivedNotSecond => {
                    "in the derived subgroup, outside the second derived subgroup"
                }
                DerivedClass::InSecondDerived => "in the second derived subgroup",
            };
            let s = format!(
                "{}: {class}; nontrivial on unitriangular matrices: {}\ncorner polynomial: {}",
                rep.word, rep.nontrivial, rep.corner
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Thom { dim, kmax, samples, seed, norm } => {
            let rep = thom_decay(&ThomDecayConfig {
                dim: *dim,
                kmax: *kmax,
                samples: *samples,
                seed: *seed,
                norm: *norm,
            })?;
            let mut s =
                format!("length of the self-commutator tower on SU({dim}), {samples} samples:",);
            for r in &rep.rows {
                let _ = write!(
                    s,
                    "\n  k = {:>2}: min {} median {} max {}",
                    r.k,
                    fmt_f(r.min),
                    fmt_f(r.median),
                    fmt_f(r.max)
                );
            }
            let _ = write!(s, "\nshrink bound held: {}", rep.shrink_bound_ok);
            let mut csv = String::from("k,min,median,max\n");
            for r in &rep.rows {
                let _ = writeln!(csv, "{},{},{},{}", r.k, r.min, r.median, r.max);
            }
            Ok(Execution { result: to_value(&rep), summary: s, csv: Some(csv) })
        }
        RunConfig::Solve { word: text, dim, target, seed, budget, tol } => {
            let w = word(text)?;
            let t = rows_to_cmat(target);
            let cfg = SolveConfig { dim: *dim, seed: *seed, budget: *budget, tol: *tol };
            let rep = solve_word_equation(&w, &t, &cfg)?;
            let s = format!(
                "solve {} = target on SU({dim}): converged: {}; residual {}; {} evaluations, {} restarts",
                rep.word,
                rep.converged,
                fmt_f(rep.residual),
                rep.evaluations,
                rep.restarts
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Density { word: text, dim, samples, targets, epsilon, seed } => {
            let w = word(text)?;
            let cfg = DensityConfig {
                dim: *dim,
                samples: *samples,
                targets: *targets,
                epsilon: *epsilon,
                seed: *seed,
            };
            let rep = rank_metric_density(&w, &cfg)?;
            let s = format!(
                "rank-metric coverage of {} on SU({dim}): {:.1}% of {} targets within {} of {} image samples (min distance {})",
                rep.word,
                100.0 * rep.covered_fraction,
                rep.targets,
                rep.epsilon,
                rep.samples,
                rep.min_distance
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
        RunConfig::Root { field, k, matrix } => match field {
            RootField::Real => {
                if *k != 2 {
                    return Err(CliError::Usage(
                        "only square roots are decided over the reals; use --field complex for higher k"
                            .into(),
                    ));
                }
                if matrix.len() != 2 {
                    return Err(CliError::Usage("the real case is for 2x2 matrices".into()));
                }
                if matrix.iter().flatten().any(|e| e[1] != 0.0) {
                    return Err(CliError::Usage("--field real requires real entries".into()));
                }
                let g =
                    RMat2::new(matrix[0][0][0], matrix[0][1][0], matrix[1][0][0], matrix[1][1][0]);
                let rep = sqrt_sl2r(&g)?;
                let mut s = format!(
                    "square root in SL(2,R): exists: {} (trace {:.6})",
                    rep.exists, rep.trace
                );
                if rep.boundary {
                    let _ = write!(s, "\nwarning: trace is within 1e-9 of -2; verdict is fragile");
                }
                if let Some(wit) = &rep.witness {
                    let _ = write!(
                        s,
                        "\nwitness [[{:.6}, {:.6}], [{:.6}, {:.6}]], verified: {}",
                        wit[0][0], wit[0][1], wit[1][0], wit[1][1], rep.verified
                    );
                }
                Ok(Execution { result: to_value(&rep), summary: s, csv: None })
            }
            RootField::Complex => {
                if matrix.len() != 2 {
                    return Err(CliError::Usage("root decisions run on 2x2 matrices".into()));
                }
                let g = ZMat2::new(
                    complex(matrix[0][0]),
                    complex(matrix[0][1]),
                    complex(matrix[1][0]),
                    complex(matrix[1][1]),
                );
                let rep = root_sl2c(&g, *k)?;
                let k = ordinal(*k);
                let s = if rep.exists {
                    format!("{k} root in SL(2,C): exists; witness verified: {}", rep.verified)
                } else {
                    format!("{k} root in SL(2,C): does not exist")
                };
                Ok(Execution { result: to_value(&rep), summary: s, csv: None })
            }
        },
        RunConfig::Bracket { p, space } => {
            let rep = bracket_image(*p, *space)?;
            let s = format!(
                "bracket image on {}(F_{}): {} of {} traceless matrices; covers: {}; width: {}",
                space,
                p,
                rep.image_size,
                rep.traceless_count,
                rep.covers_traceless,
                match rep.width {
                    wordmap_core::liebracket::BracketWidth::Covers { width } => format!("{width}"),
                    wordmap_core::liebracket::BracketWidth::Stalls { stabilized_at, span_size } =>
                        format!("stalls at step {stabilized_at} on {span_size} elements"),
                }
            );
            Ok(Execution { result: to_value(&rep), summary: s, csv: None })
        }
    }
}

/// Drop per-run volatile fields before comparing results.
pub fn strip_volatile(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("timing_ms");
            map.remove("threads");
            for (_, child) in map.iter_mut() {
                strip_volatile(child);
            }
        }
        Value::Array(items) => {
            for item in items {
                strip_volatile(item);
            }
        }
        _ => {}
    }
}

pub fn rerun(path: &std::path::Path) -> Result<(Report, Execution, bool), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Domain(format!("cannot read report {}: {e}", path.display())))?;
    let report: Report = serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(format!("{} is not a wordmap-lab report: {e}", path.display()))
    })?;
    let exec = execute(&report.config)?;
    let mut old = report.result.clone();
    let mut new = exec.result.clone();
    strip_volatile(&mut old);
    strip_volatile(&mut new);
    let matches = old == new;
    Ok((report, exec, matches))
}

pub fn report_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn group_spec_resolution() {
        let s = resolve_group_spec("psl2:7").unwrap();
        assert_eq!(s, GroupSpec::Psl { n: 2, p: 7 });
        assert!(matches!(resolve_group_spec("psl2_7"), Err(CliError::Usage(_))));
    }

    #[test]
    fn matrix_rows_accept_numbers_and_pairs() {
        let m = parse_matrix_rows("[[1, [0, -1]], [0, -1]]").unwrap();
        assert_eq!(m[0][1], [0.0, -1.0]);
        assert_eq!(m[1][1], [-1.0, 0.0]);
        assert!(parse_matrix_rows("[[1,2],[3]]").is_err());
        assert!(parse_matrix_rows("[]").is_err());
    }

    #[test]
    fn named_targets_expand() {
        let t = parse_target("minus-identity", 3).unwrap();
        assert_eq!(t[2][2], [-1.0, 0.0]);
        assert_eq!(t[0][1], [0.0, 0.0]);
        assert!(parse_target("[[1,0],[0,1]]", 3).is_err());
    }

    #[test]
    fn rational_matrices_canonicalize() {
        let m = parse_rational_matrix("[[0, 1], [\"-2/4\", 3]]").unwrap();
        assert_eq!(m[1][0], "-1/2");
        assert_eq!(m[0][1], "1");
        assert!(parse_rational_matrix("[[0.5, 1], [0, 1]]").is_err());
    }

    #[test]
    fn factor_shifting_separates_repeated_variables() {
        let a = parse_word("x^5", None).unwrap();
        let b = parse_word("x^5", None).unwrap();
        let shifted = shift_factors(&[a, b]);
        assert_eq!(shifted[0].render(), "x^5");
        assert_eq!(shifted[1].render(), "y^5");
        let c = parse_word("[x,y]", None).unwrap();
        let d = parse_word("x*y", None).unwrap();
        let shifted = shift_factors(&[c, d]);
        assert_eq!(shifted[0].render(), "x*y*x^-1*y^-1");
        assert_eq!(shifted[1].render(), "z*u");
    }

    #[test]
    fn volatile_fields_are_stripped_recursively() {
        let mut v = json!({
            "timing_ms": 5,
            "threads": 8,
            "rows": [{"timing_ms": 2, "p": 5}],
            "keep": 1
        });
        strip_volatile(&mut v);
        assert_eq!(v, json!({"rows": [{"p": 5}], "keep": 1}));
    }

    #[test]
    fn execute_parse_reports_power_structure() {
        let exec = execute(&RunConfig::Parse { word: "(x*y)^6".into() }).unwrap();
        let rep: ParseReport = serde_json::from_value(exec.result).unwrap();
        assert_eq!(rep.rank, 2);
        assert_eq!(rep.length, 12);
        let p = rep.proper_power.unwrap();
        assert_eq!(p.root, "x*y");
        assert_eq!(p.exponent, 6);
    }
}
