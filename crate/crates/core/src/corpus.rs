//! The executable example corpus.
//!
//! A manifest lists entries; each names a model file and the expectations
//! checked against the pipeline's report:
//!
//! ```text
//! entry M2
//! model M2.model
//! expect total = 6 [PAPER: "dim H = 6"]
//! end
//! ```
//!
//! Further directives inside an entry: `certificate <file>` verifies an
//! extension and feeds it to the rank bounds, `member <file> <poly>` tests
//! membership in the pure ideal of that extension, `gottlieb` and
//! `wang <generator>` run the optional computations, and `annotation <text>`
//! records a remark. Every expectation carries a provenance tag.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::cohomology::{self, CohomologyError, CohomologyOptions};
use crate::format::{self, parse_model};
use crate::par;
use crate::purity;
use crate::rank::{self, BoundsOptions, RankError};
use crate::report::Report;
use crate::structure::{self, StructureError};

pub const DEFAULT_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");
pub const MANIFEST: &str = "MANIFEST";

const TAGS: [&str; 3] = ["PAPER", "DERIVED", "TRIVIAL"];

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("manifest line {line}: {message}")]
    Manifest { line: usize, message: String },
    #[error("invalid glob `{0}`")]
    Glob(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expectation {
    pub key: String,
    pub value: String,
    pub provenance: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub model: PathBuf,
    pub certificates: Vec<PathBuf>,
    pub members: Vec<(PathBuf, String)>,
    pub gottlieb: bool,
    pub wang: Vec<String>,
    pub annotations: Vec<String>,
    pub expectations: Vec<Expectation>,
}

fn manifest_error(line: usize, message: impl Into<String>) -> CorpusError {
    CorpusError::Manifest {
        line,
        message: message.into(),
    }
}

fn parse_expectation(line: usize, rest: &str) -> Result<Expectation, CorpusError> {
    let (body, tag) = match (rest.rfind(" ["), rest.ends_with(']')) {
        (Some(open), true) => (&rest[..open], &rest[open + 1..]),
        _ => return Err(manifest_error(line, "expectation without provenance tag")),
    };
    if !TAGS.iter().any(|t| tag[1..].starts_with(t)) {
        return Err(manifest_error(line, format!("unknown provenance tag {tag}")));
    }
    let (key, value) = body
        .split_once('=')
        .ok_or_else(|| manifest_error(line, "expected `key = value`"))?;
    Ok(Expectation {
        key: key.trim().to_string(),
        value: value.trim().to_string(),
        provenance: tag.to_string(),
    })
}

/// Parses a manifest; relative file names resolve against `dir`.
pub fn parse_manifest(text: &str, dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let mut entries = Vec::new();
    let mut current: Option<CorpusEntry> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split_once('#').map_or(raw, |(b, _)| b).trim();
        if body.is_empty() {
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        if keyword == "entry" {
            if current.is_some() {
                return Err(manifest_error(line, "nested entry"));
            }
            current = Some(CorpusEntry {
                name: rest.to_string(),
                ..Default::default()
            });
            continue;
        }
        let entry = current
            .as_mut()
            .ok_or_else(|| manifest_error(line, format!("`{keyword}` outside an entry")))?;
        match keyword {
            "model" => entry.model = dir.join(rest),
            "certificate" => entry.certificates.push(dir.join(rest)),
            "member" => {
                let (file, poly) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| manifest_error(line, "expected `member <file> <polynomial>`"))?;
                entry.members.push((dir.join(file), poly.trim().to_string()));
            }
            "gottlieb" => entry.gottlieb = true,
            "wang" => entry.wang.push(rest.to_string()),
            "annotation" => entry.annotations.push(rest.to_string()),
            "expect" => entry.expectations.push(parse_expectation(line, rest)?),
            "end" => {
                let done = current.take().expect("inside an entry");
                if done.model.as_os_str().is_empty() {
                    return Err(manifest_error(line, format!("entry `{}` has no model", done.name)));
                }
                entries.push(done);
            }
            other => return Err(manifest_error(line, format!("unknown directive `{other}`"))),
        }
    }
    if current.is_some() {
        return Err(manifest_error(text.lines().count(), "missing `end`"));
    }
    Ok(entries)
}

pub fn load_manifest(dir: &Path) -> Result<Vec<CorpusEntry>, CorpusError> {
    let path = dir.join(MANIFEST);
    let text = fs::read_to_string(&path).map_err(|source| CorpusError::Io { path, source })?;
    parse_manifest(&text, dir)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub key: String,
    pub expected: String,
    pub computed: Option<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryResult {
    pub name: String,
    pub computed: Report,
    pub mismatches: Vec<Mismatch>,
    pub checked: usize,
    pub error: Option<String>,
    pub cap_hit: bool,
    pub wall: Duration,
}

impl EntryResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunReport {
    pub entries: Vec<EntryResult>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryResult::passed)
    }

    pub fn cap_hit(&self) -> bool {
        self.entries.iter().any(|e| e.cap_hit)
    }

    pub fn get(&self, name: &str) -> Option<&EntryResult> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// The report without timings, for reproducibility comparisons.
    pub fn canonical(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("entry {}\n{}", e.name, e.computed));
            for m in &e.mismatches {
                out.push_str(&format!("mismatch {} {:?}\n", m.key, m.computed));
            }
        }
        out
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let verdict = if e.passed() { "PASS" } else { "FAIL" };
            writeln!(
                f,
                "{verdict} {} ({} expectations, {:.1} ms)",
                e.name,
                e.checked,
                e.wall.as_secs_f64() * 1e3
            )?;
            if let Some(err) = &e.error {
                writeln!(f, "  error: {err}")?;
            }
            for m in &e.mismatches {
                writeln!(
                    f,
                    "  {}: expected {}, computed {} {}",
                    m.key,
                    m.expected,
                    m.computed.as_deref().unwrap_or("<missing>"),
                    m.provenance
                )?;
            }
        }
        let passed = self.entries.iter().filter(|e| e.passed()).count();
        writeln!(f, "{passed}/{} entries passed", self.entries.len())
    }
}

#[derive(Debug, Error)]
enum PipelineError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Rank(#[from] RankError),
    #[error(transparent)]
    Purity(#[from] purity::PurityError),
}

impl PipelineError {
    fn cap_hit(&self) -> bool {
        matches!(
            self,
            PipelineError::Cohomology(CohomologyError::CapExceeded { .. })
                | PipelineError::Rank(RankError::Cohomology(CohomologyError::CapExceeded { .. }))
                | PipelineError::Structure(StructureError::Cohomology(CohomologyError::CapExceeded { .. }))
        )
    }
}

fn read(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|e| PipelineError::Input(format!("{}: {e}", path.display())))
}

fn file_key(path: &Path) -> String {
    path.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned())
}

/// parse → check → ellipticity → split → maximality → hypotheses →
/// certificates → bounds → Betti numbers → optional extras.
fn pipeline(entry: &CorpusEntry, opts: &CohomologyOptions, r: &mut Report) -> Result<(), PipelineError> {
    let m = parse_model(&read(&entry.model)?).map_err(|e| PipelineError::Input(e.to_string()))?;
    let t = m.table();
    let check = m.check();
    r.push("generators", m.len());
    r.push("d_squared_zero", check.d_squared_zero);
    r.push("minimal", check.minimal);
    r.push("nilpotent", check.nilpotent);

    let evidence = purity::is_elliptic(&m)?;
    r.extend(evidence.report());

    match structure::two_stage_split(&m) {
        Ok(decomp) => {
            r.extend(decomp.report());
            let maximality = structure::maximality(&m, &decomp)?;
            r.extend(maximality.report());
            if structure::is_quadratic(&m, &decomp) {
                r.extend(structure::quadratic_block_matrix(&m, &decomp)?.report());
            }
            r.extend(structure::hypothesis_check(&m, &decomp).report());
        }
        Err(StructureError::NotTwoStage { .. }) => {
            r.push("two_stage", false);
        }
        Err(e) => return Err(e.into()),
    }

    let mut specs = Vec::new();
    for path in &entry.certificates {
        let spec = rank::parse_extension(&read(path)?)?;
        let cert = rank::verify_extension(&spec);
        let key = file_key(path);
        for (k, v) in cert.report().entries() {
            r.push(format!("cert[{key}].{}", k.trim_start_matches("certificate.")), v);
        }
        if let Some(e) = &cert.ellipticity {
            r.push(format!("cert[{key}].pure_ideal"), e.report().get("pure_ideal").unwrap_or_default());
            r.push(format!("cert[{key}].quotient_dim"), e.quotient_dimension);
        }
        specs.push(spec);
    }
    for (path, poly) in &entry.members {
        let spec = rank::parse_extension(&read(path)?)?;
        let total = spec.total().map_err(RankError::from)?;
        let p = format::parse_polynomial(total.table(), poly).map_err(|e| PipelineError::Input(e.to_string()))?;
        let basis = purity::pure_ideal(&total)?.groebner();
        r.push(format!("cert[{}].member[{poly}]", file_key(path)), basis.contains(&p));
    }

    if evidence.elliptic {
        let bounds = rank::rank_bounds(
            &m,
            &specs,
            &BoundsOptions {
                cohomology: *opts,
                ..Default::default()
            },
        )?;
        r.extend(bounds.report());
        for note in &bounds.notes {
            r.push("note", note);
        }
        let table = cohomology::full_betti_table(&m, &evidence, opts)?;
        r.extend(table.report());
        r.push("formal_dim", table.max_degree);
        let duality = cohomology::poincare_duality_check(&m, &evidence, opts)?;
        r.push("poincare_duality", duality.holds);
    }
    for a in &entry.annotations {
        r.push("annotation", a);
    }

    if entry.gottlieb {
        r.extend(structure::gottlieb_report(&m, opts.execution).report());
    }
    for name in &entry.wang {
        let u0 = t
            .id(name)
            .ok_or_else(|| PipelineError::Input(format!("unknown generator `{name}`")))?;
        r.extend(structure::wang(&m, u0, opts)?.report());
    }
    Ok(())
}

pub fn run_entry(entry: &CorpusEntry, opts: &CohomologyOptions) -> EntryResult {
    let start = Instant::now();
    let mut computed = Report::new();
    let outcome = pipeline(entry, opts, &mut computed);
    let cap_hit = outcome.as_ref().err().is_some_and(PipelineError::cap_hit);
    let mismatches = entry
        .expectations
        .iter()
        .filter_map(|e| {
            let got = computed.get(&e.key);
            (got != Some(e.value.as_str())).then(|| Mismatch {
                key: e.key.clone(),
                expected: e.value.clone(),
                computed: got.map(str::to_string),
                provenance: e.provenance.clone(),
            })
        })
        .collect();
    EntryResult {
        name: entry.name.clone(),
        computed,
        mismatches,
        checked: entry.expectations.len(),
        error: outcome.err().map(|e| e.to_string()),
        cap_hit,
        wall: start.elapsed(),
    }
}

/// Runs every entry whose name matches the glob `filter`, concurrently,
/// reporting in manifest order.
pub fn run_corpus_in(dir: &Path, filter: &str, opts: &CohomologyOptions) -> Result<RunReport, CorpusError> {
    let pattern = glob::Pattern::new(filter).map_err(|_| CorpusError::Glob(filter.to_string()))?;
    let entries: Vec<CorpusEntry> = load_manifest(dir)?
        .into_iter()
        .filter(|e| pattern.matches(&e.name))
        .collect();
    Ok(RunReport {
        entries: par::map(opts.execution, &entries, |e| run_entry(e, opts)),
    })
}

pub fn run_corpus(filter: &str) -> Result<RunReport, CorpusError> {
    run_corpus_in(Path::new(DEFAULT_DIR), filter, &CohomologyOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let text = "entry a # comment\nmodel a.model\nexpect total = 6 [PAPER: \"six\"]\ngottlieb\nend\n";
        let entries = parse_manifest(text, Path::new("/x")).unwrap();
        assert_eq!(entries.len(), 1);
        assert_eq!(entries[0].model, Path::new("/x/a.model"));
        assert_eq!(entries[0].expectations[0].value, "6");
        assert!(entries[0].gottlieb);
    }

    #[test]
    fn manifest_errors() {
        let untagged = "entry a\nmodel a\nexpect total = 6\nend\n";
        assert!(matches!(
            parse_manifest(untagged, Path::new(".")),
            Err(CorpusError::Manifest { line: 3, .. })
        ));
        assert!(parse_manifest("entry a\nmodel a\n", Path::new(".")).is_err());
        assert!(parse_manifest("model a\n", Path::new(".")).is_err());
    }
}
