//! Command-line front end. [`run`] is pure apart from file and cache I/O and
//! returns everything it would print, so it can be driven from tests.
//!
//! Every flag can also be set through an environment variable with the
//! prefix `SUBSHIFT_K_` (for example `SUBSHIFT_K_LMAX=8`).
//!
//! Exit codes: `0` success, `1` a check failed or `compare` found a
//! distinguishing invariant, `2` `compare` was inconclusive, `3` an error.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::abelian::{
    compare_triples, dimension_triple, k_groups, FgAbelianGroup, IntMatrix, LevelReport,
    StationarySystem, Verdict,
};
use crate::error::{Error, Result};
use crate::model::{
    verify_monomial_closure, verify_prop_structure, verify_representation, verify_structure,
    FiniteModel, VerifyReport,
};
use crate::past::{ChainExport, PartitionChain, Stabilization};
use crate::shift::io::{canonical_json, content_hash, load_presentation};
use crate::shift::{Caps, ShiftPresentation};
use crate::transforms::{apply_move, Move};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "subshift-k", version, about = "K-theory invariants of one-sided shift spaces")]
struct Cli {
    #[command(flatten)]
    config: ConfigArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct ConfigArgs {
    /// Deepest past-equivalence level computed.
    #[arg(long, global = true, default_value_t = 12, env = "SUBSHIFT_K_LMAX",
          value_parser = clap::value_parser!(u32).range(1..))]
    lmax: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table, env = "SUBSHIFT_K_FORMAT")]
    format: Format,
    /// Directory for cached invariant records; nothing is cached without it.
    #[arg(long, global = true, env = "SUBSHIFT_K_CACHE_DIR")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, env = "SUBSHIFT_K_NO_CACHE")]
    no_cache: bool,
    #[arg(long, global = true, env = "SUBSHIFT_K_MAX_CONTEXTS")]
    max_contexts: Option<usize>,
    /// Words kept per printed class signature.
    #[arg(long, global = true, env = "SUBSHIFT_K_MAX_SIGNATURE_WORDS")]
    max_signature_words: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full pipeline: classes, K-groups and dimension triple.
    Invariants { file: PathBuf },
    /// The past-equivalence classes level by level.
    Classes { file: PathBuf },
    /// I, A, ΣA and B for every level.
    Matrices { file: PathBuf },
    Kgroups { file: PathBuf },
    Triple { file: PathBuf },
    /// Apply a move and write the resulting presentation.
    Transform {
        file: PathBuf,
        /// Move descriptor JSON, or `@path` to read it from a file.
        #[arg(long = "move")]
        descriptor: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare the invariants of two presentations.
    Compare {
        a: PathBuf,
        b: PathBuf,
        /// Powers of the core examined and largest lag searched.
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Operator checks on a finite shift space.
    Model {
        #[command(subcommand)]
        command: ModelCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ModelCommand {
    Verify {
        file: PathBuf,
        /// Longest word length checked.
        #[arg(long = "L", default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
        l: u32,
    },
}

/// Resolved configuration of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub lmax: usize,
    pub caps: Caps,
    pub format: Format,
    pub cache_dir: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> RunConfig {
        let mut caps = Caps::default();
        if let Some(n) = self.max_contexts {
            caps.max_contexts = n.max(1);
        }
        if let Some(n) = self.max_signature_words {
            caps.max_signature_words = n.max(1);
        }
        let cache_dir = if self.no_cache { None } else { self.cache_dir.clone() };
        RunConfig {
            lmax: self.lmax as usize,
            caps,
            format: self.format,
            cache_dir,
        }
    }
}

/// What a command printed and its exit status.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }
}

/// Chain summary, K-groups and dimension triple of one presentation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    pub tool_version: String,
    pub presentation_hash: String,
    pub lmax: usize,
    pub m: Vec<usize>,
    pub stabilization: Stabilization,
    pub k0: FgAbelianGroup,
    pub k1: FgAbelianGroup,
    pub k0_canonical: String,
    pub k1_canonical: String,
    pub b: IntMatrix,
    pub triple: StationarySystem,
}

pub fn compute_record(p: &ShiftPresentation, lmax: usize, caps: &Caps) -> Result<InvariantRecord> {
    let chain = PartitionChain::build(p, lmax, caps)?;
    let k = k_groups(&chain)?;
    let triple = dimension_triple(&chain)?;
    Ok(InvariantRecord {
        tool_version: TOOL_VERSION.to_string(),
        presentation_hash: content_hash(p),
        lmax,
        m: chain.m_sequence(),
        stabilization: chain.stabilization(),
        k0_canonical: k.k0.to_string(),
        k1_canonical: k.k1.to_string(),
        k0: k.k0,
        k1: k.k1,
        b: k.b,
        triple,
    })
}

fn cache_key(p: &ShiftPresentation, config: &RunConfig) -> String {
    let caps = serde_json::to_string(&config.caps).expect("serializable");
    let material = format!("{}\n{}\n{}\n{}", canonical_json(p), config.lmax, caps, TOOL_VERSION);
    hex::encode(Sha256::digest(material.as_bytes()))
}

fn read_cached(path: &Path) -> Option<InvariantRecord> {
    let text = std::fs::read_to_string(path).ok()?;
    let record: InvariantRecord = serde_json::from_str(&text).ok()?;
    (record.tool_version == TOOL_VERSION).then_some(record)
}

fn write_cached(dir: &Path, key: &str, record: &InvariantRecord) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let tmp = dir.join(format!(".{key}.{}.tmp", std::process::id()));
    std::fs::write(&tmp, serde_json::to_string(record).expect("serializable"))?;
    std::fs::rename(&tmp, dir.join(format!("{key}.json")))
}

/// The invariant record, from the cache when a valid entry exists.
pub fn invariants_cached(p: &ShiftPresentation, config: &RunConfig, warnings: &mut String) -> Result<InvariantRecord> {
    let Some(dir) = &config.cache_dir else {
        return compute_record(p, config.lmax, &config.caps);
    };
    let key = cache_key(p, config);
    if let Some(record) = read_cached(&dir.join(format!("{key}.json"))) {
        return Ok(record);
    }
    let record = compute_record(p, config.lmax, &config.caps)?;
    if let Err(e) = write_cached(dir, &key, &record) {
        let _ = writeln!(warnings, "warning: could not write cache in {}: {e}", dir.display());
    }
    Ok(record)
}

fn load(path: &Path) -> Result<ShiftPresentation> {
    load_presentation(path).map_err(|e| match e {
        Error::Io(io) => Error::Io(std::io::Error::new(io.kind(), format!("{}: {io}", path.display()))),
        other => other,
    })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn render_stabilization(s: Stabilization) -> String {
    match s {
        Stabilization::StableAt(l) => format!("stable at level {l}"),
        Stabilization::NotStableWithin(l) => format!("not stable within {l} levels"),
    }
}

fn render_mask(mask: &[bool]) -> String {
    mask.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn record_table(r: &InvariantRecord) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "presentation   {}", r.presentation_hash);
    let _ = writeln!(s, "m(l), l=0..    {}", join(&r.m));
    let _ = writeln!(s, "stabilization  {}", render_stabilization(r.stabilization));
    let _ = writeln!(s, "K0             {}", r.k0_canonical);
    let _ = writeln!(s, "K1             {}", r.k1_canonical);
    let _ = writeln!(s, "B              {}", r.b);
    let _ = write!(s, "{}", triple_table(&r.triple));
    s
}

fn triple_table(t: &StationarySystem) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "rank           {}", t.rank);
    let _ = writeln!(s, "step map       {}", t.step_map);
    let _ = writeln!(s, "positive cone  coordinatewise, generators e0..e{}", t.rank.saturating_sub(1));
    let _ = writeln!(s, "delta mask     {}", render_mask(&t.delta_mask));
    s
}

fn partial_table(lmax: usize, partial: &[LevelReport]) -> String {
    let mut s = format!("no stabilisation within lmax = {lmax}; per-level data:\n");
    for r in partial {
        let _ = writeln!(
            s,
            "  level {}: coker(B) = {}, rank ker(B) = {}, B = {}",
            r.level, r.cokernel, r.kernel_rank, r.b
        );
    }
    s
}

fn error_outcome(e: &Error) -> Outcome {
    let mut stderr = format!("error: {e}\n");
    if let Error::NotStabilized { lmax, partial } = e {
        stderr.push_str(&partial_table(*lmax, partial));
    }
    Outcome {
        stdout: String::new(),
        stderr,
        code: 3,
    }
}

fn classes_table(chain: &ChainExport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "m(l), l=0..    {}", join(&chain.m));
    let _ = writeln!(s, "stabilization  {}", render_stabilization(chain.stabilization));
    let word = |w: &String| if w.is_empty() { "-".to_string() } else { w.clone() };
    for level in &chain.levels {
        let _ = writeln!(s, "level {} (m = {})", level.level, level.m);
        for (i, class) in level.classes.iter().enumerate() {
            let sig = match &class.signature {
                Some(sig) => sig
                    .iter()
                    .map(|ws| format!("{{{}}}", ws.iter().map(word).collect::<Vec<_>>().join(",")))
                    .collect::<Vec<_>>()
                    .join(" "),
                None => "(elided at cap)".to_string(),
            };
            let _ = writeln!(s, "  E{i}  contexts [{}]  P_0..P_{}: {sig}", class.contexts.join(" "), level.level);
        }
        for (k, set) in level.m_sets.iter().enumerate() {
            let _ = writeln!(s, "  M_{k} = {{{}}}", set.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
        }
    }
    s
}

fn matrices_table(chain: &ChainExport) -> String {
    let mut s = String::new();
    for step in &chain.steps {
        let _ = writeln!(s, "level {} -> {}", step.level, step.level + 1);
        let _ = writeln!(s, "  I    {}", step.i);
        for (a, m) in chain.alphabet.iter().zip(&step.a) {
            let _ = writeln!(s, "  A[{a}] {m}");
        }
        let _ = writeln!(s, "  sumA {}", step.a_sum);
        let _ = writeln!(s, "  B    {}", step.b);
    }
    s
}

fn verify_table(report: &VerifyReport) -> String {
    let mut s = String::new();
    for item in &report.items {
        let status = if item.failed == 0 { "pass" } else { "FAIL" };
        let _ = writeln!(s, "{status}  {:>6} checked  {:>4} failed  {}", item.checked, item.failed, item.name);
        if let Some(c) = &item.first_counterexample {
            let _ = writeln!(s, "      first counterexample: {c}");
        }
    }
    s
}

#[derive(Serialize)]
struct CompareOutput<'a> {
    a: &'a InvariantRecord,
    b: &'a InvariantRecord,
    verdict: &'a Verdict,
}

#[derive(Serialize)]
struct ModelOutput<'a> {
    basis: Vec<String>,
    passed: bool,
    reports: &'a [VerifyReport],
}

fn execute(cli: Cli) -> Result<Outcome> {
    let config = cli.config.resolve();
    let mut warnings = String::new();
    let mut out = match cli.command {
        Command::Invariants { file } => {
            let record = invariants_cached(&load(&file)?, &config, &mut warnings)?;
            Outcome::ok(match config.format {
                Format::Json => json(&record),
                Format::Table => record_table(&record),
            })
        }
        Command::Kgroups { file } => {
            let record = invariants_cached(&load(&file)?, &config, &mut warnings)?;
            Outcome::ok(match config.format {
                Format::Json => json(&serde_json::json!({
                    "k0": record.k0, "k1": record.k1,
                    "k0_canonical": record.k0_canonical, "k1_canonical": record.k1_canonical,
                    "b": record.b, "stabilization": record.stabilization,
                })),
                Format::Table => format!(
                    "K0  {}\nK1  {}\nB   {}\n{}\n",
                    record.k0_canonical,
                    record.k1_canonical,
                    record.b,
                    render_stabilization(record.stabilization)
                ),
            })
        }
        Command::Triple { file } => {
            let record = invariants_cached(&load(&file)?, &config, &mut warnings)?;
            Outcome::ok(match config.format {
                Format::Json => json(&record.triple),
                Format::Table => triple_table(&record.triple),
            })
        }
        Command::Classes { file } => {
            let chain = PartitionChain::build(&load(&file)?, config.lmax, &config.caps)?.export()?;
            Outcome::ok(match config.format {
                Format::Json => json(&serde_json::json!({
                    "alphabet": chain.alphabet, "m": chain.m,
                    "stabilization": chain.stabilization, "levels": chain.levels,
                })),
                Format::Table => classes_table(&chain),
            })
        }
        Command::Matrices { file } => {
            let chain = PartitionChain::build(&load(&file)?, config.lmax, &config.caps)?.export()?;
            Outcome::ok(match config.format {
                Format::Json => json(&serde_json::json!({
                    "alphabet": chain.alphabet, "steps": chain.steps,
                })),
                Format::Table => matrices_table(&chain),
            })
        }
        Command::Transform { file, descriptor, out } => {
            let text = match descriptor.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path)?,
                None => descriptor,
            };
            let mv: Move = serde_json::from_str(&text)?;
            let t = apply_move(&load(&file)?, &mv, &config.caps)?;
            std::fs::write(&out, canonical_json(&t.presentation))?;
            Outcome::ok(match config.format {
                Format::Json => json(&t.report),
                Format::Table => {
                    let mut s = format!(
                        "input   {}\noutput  {}\nwritten {}\nsymbols\n",
                        t.report.input_hash,
                        t.report.output_hash,
                        out.display()
                    );
                    for (k, v) in &t.report.symbol_map {
                        let _ = writeln!(s, "  {k} <- {}", v.join(" "));
                    }
                    s
                }
            })
        }
        Command::Compare { a, b, depth } => {
            let ra = invariants_cached(&load(&a)?, &config, &mut warnings)?;
            let rb = invariants_cached(&load(&b)?, &config, &mut warnings)?;
            let verdict = compare_triples(&ra.triple, &rb.triple, depth);
            let code = match verdict {
                Verdict::EquivalentCertificate { .. } => 0,
                Verdict::Distinguished { .. } => 1,
                Verdict::Inconclusive { .. } => 2,
            };
            let stdout = match config.format {
                Format::Json => json(&CompareOutput {
                    a: &ra,
                    b: &rb,
                    verdict: &verdict,
                }),
                Format::Table => {
                    let mut s = String::new();
                    let row = |s: &mut String, name: &str, x: String, y: String| {
                        let _ = writeln!(s, "{name:<10} {x:<24} {y}");
                    };
                    row(&mut s, "", a.display().to_string(), b.display().to_string());
                    row(&mut s, "K0", ra.k0_canonical.clone(), rb.k0_canonical.clone());
                    row(&mut s, "K1", ra.k1_canonical.clone(), rb.k1_canonical.clone());
                    row(&mut s, "step map", ra.triple.step_map.to_string(), rb.triple.step_map.to_string());
                    row(&mut s, "delta mask", render_mask(&ra.triple.delta_mask), render_mask(&rb.triple.delta_mask));
                    let _ = writeln!(
                        s,
                        "verdict    {}",
                        match &verdict {
                            Verdict::EquivalentCertificate { certificate } => format!(
                                "no invariant distinguishes them; certificate {}",
                                serde_json::to_string(certificate).expect("serializable")
                            ),
                            Verdict::Distinguished { witness } => format!("distinguished by {witness}"),
                            Verdict::Inconclusive { reason } => format!("inconclusive: {reason}"),
                        }
                    );
                    s
                }
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code,
            }
        }
        Command::Model {
            command: ModelCommand::Verify { file, l },
        } => {
            let p = load(&file)?;
            let m = FiniteModel::new(&p)?;
            let l = l as usize;
            let reports = vec![
                verify_representation(&m, l),
                verify_structure(&m, l),
                verify_prop_structure(&m, l)?,
                verify_monomial_closure(&m, l.min(2))?,
            ];
            let passed = reports.iter().all(VerifyReport::passed);
            let stdout = match config.format {
                Format::Json => json(&ModelOutput {
                    basis: m
                        .basis()
                        .iter()
                        .map(|x| {
                            let w = |v: &crate::shift::Word| m.alphabet().names(v).join("");
                            format!("{}({})^inf", w(x.preperiod()), w(x.period()))
                        })
                        .collect(),
                    passed,
                    reports: &reports,
                }),
                Format::Table => reports.iter().map(verify_table).collect(),
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: if passed { 0 } else { 1 },
            }
        }
    };
    out.stderr.insert_str(0, &warnings);
    Ok(out)
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli).unwrap_or_else(|e| error_outcome(&e)),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: 3,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
        let path = dir.join(name);
        std::fs::write(&path, text).unwrap();
        path
    }

    fn go(args: &[&str]) -> Outcome {
        run(std::iter::once("subshift-k").chain(args.iter().copied()))
    }

    #[test]
    fn invariants_of_the_golden_mean_shift() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(dir.path(), "g.json", r#"{"type":"sft_matrix","adjacency":[[1,1],[1,0]]}"#);
        let out = go(&["invariants", f.to_str().unwrap(), "--no-cache", "--format", "json"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let record: InvariantRecord = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(record.k0_canonical, "0");
        assert_eq!(record.k1_canonical, "0");
        assert_eq!(record.triple.step_map, IntMatrix::from_rows(&[vec![1, 1], vec![1, 0]]));
    }

    #[test]
    fn cached_record_matches_fresh_computation() {
        let dir = tempfile::tempdir().unwrap();
        let cache = dir.path().join("cache");
        let f = write(dir.path(), "f3.json", r#"{"type":"sft","alphabet":["0","1","2"],"forbidden":[]}"#);
        let args = ["invariants", f.to_str().unwrap(), "--cache-dir", cache.to_str().unwrap()];
        let first = go(&args);
        assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);
        let second = go(&args);
        assert_eq!(first, second);
        assert!(first.stdout.contains("K0             Z/2"));
    }

    #[test]
    fn malformed_input_exits_with_a_diagnostic() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(dir.path(), "bad.json", "{\"type\":\"sft\",\n \"alphabet\": [");
        let out = go(&["kgroups", f.to_str().unwrap(), "--no-cache"]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("line 2"), "{}", out.stderr);
    }

    #[test]
    fn compare_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let f2 = write(dir.path(), "f2.json", r#"{"type":"sft","alphabet":["0","1"],"forbidden":[]}"#);
        let f3 = write(dir.path(), "f3.json", r#"{"type":"sft","alphabet":["0","1","2"],"forbidden":[]}"#);
        let out = go(&["compare", f2.to_str().unwrap(), f3.to_str().unwrap(), "--no-cache"]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("K0: 0 vs Z/2"));
        let same = go(&["compare", f2.to_str().unwrap(), f2.to_str().unwrap(), "--no-cache"]);
        assert_eq!(same.code, 0);
    }

    #[test]
    fn model_verify_refuses_infinite_shifts() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(dir.path(), "f2.json", r#"{"type":"sft","alphabet":["0","1"],"forbidden":[]}"#);
        assert_eq!(go(&["model", "verify", f.to_str().unwrap()]).code, 3);
        let g = write(
            dir.path(),
            "two.json",
            r#"{"type":"finite","alphabet":["0","1"],"points":[{"pre":["1"],"per":["0"]}]}"#,
        );
        let out = go(&["model", "verify", g.to_str().unwrap(), "--L", "3"]);
        assert_eq!(out.code, 0, "{}{}", out.stdout, out.stderr);
    }

    #[test]
    fn not_stabilised_reports_partial_levels() {
        let dir = tempfile::tempdir().unwrap();
        let f = write(dir.path(), "g.json", r#"{"type":"sft_matrix","adjacency":[[1,1],[1,0]]}"#);
        let out = go(&["kgroups", f.to_str().unwrap(), "--no-cache", "--lmax", "1"]);
        assert_eq!(out.code, 3);
        assert!(out.stderr.contains("level 0: coker(B)"), "{}", out.stderr);
    }
}
