//! Per-q sweeps over three-dimensional spin lens spaces.
//!
//! Each `q` is one unit of work: classes are enumerated, certified prefixes
//! computed once per class, and every unordered pair (self-pairs included)
//! receives isospectrality, spin-isometry, equation and η verdicts. Records
//! are written to `q_<q>.json` atomically; an existing valid file is reused.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac_spectrum::{certification_bound, compare_prefixes, multiplicity_prefix, Method, PrefixMode};
use crate::error::{invariant, Error, Result};
use crate::eta_invariant::{eta_exact, EtaRelation, EtaVariant};
use crate::lens_geometry::{enumerate_classes_3d, is_epsilon_spin_isometric_3d, ClassMode, Sign, SpinLensSpace};
use crate::residue_analysis::EquationFingerprint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub q_min: i64,
    pub q_max: i64,
    pub prefix: PrefixMode,
    /// Worker count; 0 lets the pool decide.
    pub jobs: usize,
    pub eta_variant: EtaVariant,
    pub output_dir: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(q_min: i64, q_max: i64) -> Self {
        SweepConfig {
            q_min,
            q_max,
            prefix: PrefixMode::Certified,
            jobs: 0,
            eta_variant: EtaVariant::default(),
            output_dir: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.q_min < 2 || self.q_min > self.q_max {
            return Err(Error::Unsupported(format!(
                "sweep range {}..={} must satisfy 2 <= q_min <= q_max",
                self.q_min, self.q_max
            )));
        }
        if self.prefix == PrefixMode::Quick(0) {
            return Err(Error::Unsupported("quick prefix length must be at least 1".into()));
        }
        Ok(())
    }

    fn prefix_len(&self, q: i64) -> usize {
        match self.prefix {
            PrefixMode::Quick(k) => k,
            PrefixMode::Certified => certification_bound(q, 2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpsFlags {
    pub plus: bool,
    pub minus: bool,
}

impl EpsFlags {
    fn from_fn(mut f: impl FnMut(Sign) -> Result<bool>) -> Result<Self> {
        Ok(EpsFlags { plus: f(Sign::Plus)?, minus: f(Sign::Minus)? })
    }

    pub fn get(&self, eps: Sign) -> bool {
        match eps {
            Sign::Plus => self.plus,
            Sign::Minus => self.minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub p: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u8>,
    /// Exact η as `a/b`.
    pub eta: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaRecord {
    pub rel: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub p: i64,
    pub s: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<u8>,
    /// ε-isospectrality.
    pub iso: EpsFlags,
    pub spin_iso: EpsFlags,
    /// `null` when either space has `p ≡ ±1`.
    pub eqs47: Option<EpsFlags>,
    pub eta: EtaRecord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub q: i64,
    pub prefix_len: usize,
    pub certified: bool,
    pub classes: Vec<ClassRecord>,
    pub pairs: Vec<PairRecord>,
    pub conjecture_holds: bool,
    pub eta_variant: EtaVariant,
    pub wall_ms: u64,
}

impl SweepRecord {
    /// Pairs that are ε-isospectral without being ε-spin-isometric.
    pub fn counterexamples(&self) -> impl Iterator<Item = (&PairRecord, Sign)> {
        self.pairs.iter().flat_map(|pair| {
            Sign::BOTH
                .into_iter()
                .filter(move |&eps| pair.iso.get(eps) && !pair.spin_iso.get(eps))
                .map(move |eps| (pair, eps))
        })
    }

    /// Equal to `other` ignoring the timing field.
    pub fn same_content(&self, other: &Self) -> bool {
        SweepRecord { wall_ms: 0, ..self.clone() } == SweepRecord { wall_ms: 0, ..other.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct AbortedRecord {
    pub q: i64,
    pub error: String,
    pub invariant_violation: bool,
}

#[derive(Clone, Debug, Default)]
pub struct SweepOutcome {
    /// Records in ascending `q`.
    pub records: Vec<SweepRecord>,
    pub aborted: Vec<AbortedRecord>,
    /// `q` values loaded from existing files instead of recomputed.
    pub resumed: Vec<i64>,
}

impl SweepOutcome {
    pub fn conjecture_holds(&self) -> bool {
        self.aborted.is_empty() && self.records.iter().all(|r| r.conjecture_holds)
    }
}

fn relation_name(r: EtaRelation) -> &'static str {
    match r {
        EtaRelation::PlusMatch => "plus_match",
        EtaRelation::MinusMatch => "minus_match",
        EtaRelation::Both => "both",
        EtaRelation::None => "none",
    }
}

fn class_p(s: &SpinLensSpace) -> i64 {
    s.space().reps()[1]
}

/// Computes the record for one `q` without touching the file system.
pub fn sweep_q(q: i64, cfg: &SweepConfig) -> Result<SweepRecord> {
    let start = Instant::now();
    let len = cfg.prefix_len(q);
    let bound = certification_bound(q, 2);
    let classes = enumerate_classes_3d(q, ClassMode::Oriented)?;
    let prefixes = classes
        .iter()
        .map(|c| multiplicity_prefix(c, len, Method::CharacterCount))
        .collect::<Result<Vec<_>>>()?;
    let etas = classes
        .iter()
        .map(|c| eta_exact(c, cfg.eta_variant).map(|e| e.value))
        .collect::<Result<Vec<_>>>()?;
    let prints = classes.iter().map(EquationFingerprint::new).collect::<Result<Vec<_>>>()?;

    let mut pairs = Vec::new();
    for i in 0..classes.len() {
        for j in i..classes.len() {
            let (a, b) = (&classes[i], &classes[j]);
            let verdict = compare_prefixes(&prefixes[i], &prefixes[j], bound);
            let iso = EpsFlags { plus: verdict.plus_one, minus: verdict.minus_one };
            let spin_iso = EpsFlags::from_fn(|eps| is_epsilon_spin_isometric_3d(a, b, eps))?;
            let eqs47 = match (&prints[i], &prints[j]) {
                (Some(x), Some(y)) => Some(EpsFlags { plus: x.matches(y, Sign::Plus), minus: x.matches(y, Sign::Minus) }),
                _ => None,
            };
            let rel = EtaRelation::from_values(&etas[i], &etas[j]);
            for eps in Sign::BOTH {
                if spin_iso.get(eps) && !iso.get(eps) {
                    return Err(invariant(format!("{a} and {b} are {eps}-spin-isometric but not isospectral")));
                }
                if spin_iso.get(eps) && cfg.eta_variant == EtaVariant::Unstarred && !rel.allows(eps) {
                    return Err(invariant(format!("eta of {a} and {b} breaks {eps}-spin-isometry")));
                }
                if verdict.certified && iso.get(eps) && eqs47.is_some_and(|e| !e.get(eps)) {
                    return Err(invariant(format!("{a} and {b} are {eps}-isospectral but fail the residue equations")));
                }
            }
            pairs.push(PairRecord {
                p: class_p(a),
                s: class_p(b),
                h: a.h(),
                h2: b.h(),
                iso,
                spin_iso,
                eqs47,
                eta: EtaRecord { rel: relation_name(rel).to_string() },
            });
        }
    }

    let class_records = classes
        .iter()
        .zip(&etas)
        .map(|(c, e)| ClassRecord { p: class_p(c), h: c.h(), eta: e.to_string() })
        .collect();
    let mut record = SweepRecord {
        q,
        prefix_len: len,
        certified: len >= bound,
        classes: class_records,
        pairs,
        conjecture_holds: true,
        eta_variant: cfg.eta_variant,
        wall_ms: start.elapsed().as_millis() as u64,
    };
    let holds = record.counterexamples().next().is_none();
    record.conjecture_holds = holds;
    Ok(record)
}

pub fn record_path(dir: &Path, q: i64) -> PathBuf {
    dir.join(format!("q_{q}.json"))
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io { path: path.to_path_buf(), source }
}

/// Writes via a temporary file and a rename, so readers never see partial output.
pub fn write_record(dir: &Path, record: &SweepRecord) -> Result<PathBuf> {
    let path = record_path(dir, record.q);
    let tmp = dir.join(format!(".q_{}.json.tmp", record.q));
    let json = serde_json::to_string_pretty(record).map_err(|source| Error::Json { path: path.clone(), source })?;
    let mut file = fs::File::create(&tmp).map_err(io_err(&tmp))?;
    file.write_all(json.as_bytes()).map_err(io_err(&tmp))?;
    file.write_all(b"\n").map_err(io_err(&tmp))?;
    file.sync_all().map_err(io_err(&tmp))?;
    fs::rename(&tmp, &path).map_err(io_err(&path))?;
    Ok(path)
}

/// A previously written record compatible with `cfg`, if any.
pub fn load_record(dir: &Path, q: i64, cfg: &SweepConfig) -> Option<SweepRecord> {
    let text = fs::read_to_string(record_path(dir, q)).ok()?;
    let record: SweepRecord = serde_json::from_str(&text).ok()?;
    (record.q == q && record.prefix_len == cfg.prefix_len(q) && record.eta_variant == cfg.eta_variant).then_some(record)
}

pub const CSV_HEADER: [&str; 13] = [
    "q", "p", "h", "s", "h2", "iso_plus", "iso_minus", "spin_iso_plus", "spin_iso_minus", "eqs47_plus", "eqs47_minus",
    "eta_rel", "conjecture_holds",
];

/// One row per pair.
pub fn write_csv<W: std::io::Write>(out: W, records: &[SweepRecord]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    let opt = |v: Option<u8>| v.map(|h| h.to_string()).unwrap_or_default();
    let flag = |v: Option<bool>| v.map(|b| b.to_string()).unwrap_or_default();
    for r in records {
        for pair in &r.pairs {
            w.write_record([
                r.q.to_string(),
                pair.p.to_string(),
                opt(pair.h),
                pair.s.to_string(),
                opt(pair.h2),
                pair.iso.plus.to_string(),
                pair.iso.minus.to_string(),
                pair.spin_iso.plus.to_string(),
                pair.spin_iso.minus.to_string(),
                flag(pair.eqs47.map(|e| e.plus)),
                flag(pair.eqs47.map(|e| e.minus)),
                pair.eta.rel.clone(),
                r.conjecture_holds.to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    cfg.validate()?;
    if let Some(dir) = &cfg.output_dir {
        fs::create_dir_all(dir).map_err(io_err(dir))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
    let qs: Vec<i64> = (cfg.q_min..=cfg.q_max).collect();
    // (record or abort, resumed?)
    let results: Vec<Result<(std::result::Result<SweepRecord, AbortedRecord>, bool)>> = pool.install(|| {
        qs.par_iter()
            .map(|&q| {
                if let Some(dir) = &cfg.output_dir {
                    if let Some(r) = load_record(dir, q, cfg) {
                        return Ok((Ok(r), true));
                    }
                }
                match sweep_q(q, cfg) {
                    Ok(record) => {
                        if let Some(dir) = &cfg.output_dir {
                            write_record(dir, &record)?;
                        }
                        Ok((Ok(record), false))
                    }
                    Err(e) => Ok((
                        Err(AbortedRecord { q, error: e.to_string(), invariant_violation: e.is_invariant_violation() }),
                        false,
                    )),
                }
            })
            .collect()
    });

    let mut outcome = SweepOutcome::default();
    for result in results {
        let (record, resumed) = result?;
        match record {
            Ok(r) => {
                if resumed {
                    outcome.resumed.push(r.q);
                }
                if !r.conjecture_holds {
                    for (pair, eps) in r.counterexamples() {
                        eprintln!(
                            "CONJECTURE FAILS at q={}: p={} s={} eps={eps} isospectral but not spin-isometric",
                            r.q, pair.p, pair.s
                        );
                    }
                }
                outcome.records.push(r);
            }
            Err(a) => {
                eprintln!("record q={} aborted: {}", a.q, a.error);
                outcome.aborted.push(a);
            }
        }
    }
    if let Some(dir) = &cfg.output_dir {
        let path = dir.join("summary.csv");
        let file = fs::File::create(&path).map_err(io_err(&path))?;
        write_csv(file, &outcome.records).map_err(|source| Error::Csv { path, source })?;
    }
    Ok(outcome)
}
