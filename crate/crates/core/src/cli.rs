//! Command-line front end: `lens-spectra <subcommand> [flags]`.
//!
//! Exit codes: 0 on success, 1 on bad input or usage, 2 when an exact
//! identity fails (a bug, never bad input).

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::dirac_spectrum::{certify_isospectral, multiplicity_prefix, Method, PrefixMode};
use crate::error::{Error, Result};
use crate::eta_invariant::{eta_classify, eta_exact, EtaVariant};
use crate::lambda_adic::{g3_closed_form, rigidity_digits, spectral_rigidity};
use crate::lens_geometry::{
    enumerate_classes_3d, is_epsilon_isometric, is_epsilon_spin_isometric_3d, ClassMode, LensSpace, Sign,
    SpinLensSpace,
};
use crate::residue_analysis::isospectral_equations_hold;
use crate::sweep::{run_sweep, write_csv, SweepConfig};

#[derive(Parser, Debug)]
#[command(name = "lens-spectra", version, about = "Exact Dirac spectra and eta invariants of lens spaces")]
struct Cli {
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Emit CSV where a table is produced.
    #[arg(long, global = true)]
    csv: bool,
    /// Output directory for sweep records.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, default_value = "unstarred", value_parser = parse_variant)]
    eta_variant: EtaVariant,
    #[command(subcommand)]
    command: Command,
}

fn parse_variant(s: &str) -> std::result::Result<EtaVariant, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_sign(s: &str) -> std::result::Result<Sign, String> {
    match s {
        "1" | "+1" | "+" => Ok(Sign::Plus),
        "-1" | "-" => Ok(Sign::Minus),
        _ => Err(format!("expected +1 or -1, got {s:?}")),
    }
}

#[derive(Args, Debug)]
struct Space {
    #[arg(long)]
    q: i64,
    #[arg(long)]
    p: i64,
    /// Spin label, required for even q.
    #[arg(long)]
    h: Option<u8>,
}

impl Space {
    fn build(&self) -> Result<SpinLensSpace> {
        SpinLensSpace::new(LensSpace::three_dim(self.q, self.p)?, self.h)
    }
}

#[derive(Args, Debug)]
struct Pair {
    #[arg(long)]
    q: i64,
    #[arg(long)]
    p: i64,
    #[arg(long)]
    s: i64,
    #[arg(long)]
    h: Option<u8>,
    #[arg(long)]
    h2: Option<u8>,
    /// Restrict to one orientation behaviour.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    eps: Option<Sign>,
}

impl Pair {
    fn build(&self) -> Result<(SpinLensSpace, SpinLensSpace)> {
        Ok((
            SpinLensSpace::new(LensSpace::three_dim(self.q, self.p)?, self.h)?,
            SpinLensSpace::new(LensSpace::three_dim(self.q, self.s)?, self.h2.or(self.h))?,
        ))
    }

    fn signs(&self) -> Vec<Sign> {
        self.eps.map_or(Sign::BOTH.to_vec(), |e| vec![e])
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplicities m_k^± of the Dirac eigenvalues ±(3/2 + k).
    Spectrum {
        #[command(flatten)]
        space: Space,
        /// Number of coefficients.
        #[arg(long = "K", default_value_t = 20)]
        k: usize,
        #[arg(long, default_value = "character-count")]
        method: String,
    },
    /// Exact η-invariant of one space, or of every class with --all.
    Eta {
        #[arg(long)]
        q: i64,
        #[arg(long, required_unless_present = "all")]
        p: Option<i64>,
        #[arg(long)]
        h: Option<u8>,
        #[arg(long)]
        all: bool,
    },
    /// Spin-isometry, certified isospectrality and η relation of two spaces.
    Classify(Pair),
    /// Isometry witnesses between the underlying lens spaces.
    Isometry(Pair),
    /// The residue equations for a pair.
    Equations(Pair),
    /// λ-adic digits of the rigidity element (prime q).
    Digits {
        #[arg(long)]
        q: i64,
        #[arg(long)]
        p: i64,
        #[arg(long, default_value_t = 6)]
        len: usize,
        /// Compare against a second parameter.
        #[arg(long)]
        s: Option<i64>,
    },
    /// Conjecture sweep over a range of q.
    Sweep {
        #[arg(long, default_value_t = 2)]
        q_min: i64,
        #[arg(long)]
        q_max: i64,
        /// Uncertified prefix length instead of the certified bound.
        #[arg(long)]
        quick: Option<usize>,
    },
}

enum Format {
    Text,
    Json,
    Csv,
}

struct Output<'a> {
    format: Format,
    out: &'a mut dyn Write,
}

impl Output<'_> {
    fn emit(&mut self, text: &str, value: Value, rows: Option<(Vec<&str>, Vec<Vec<String>>)>) -> Result<()> {
        let io = |source| Error::Io { path: "<stdout>".into(), source };
        match (&self.format, rows) {
            (Format::Json, _) => {
                writeln!(self.out, "{}", serde_json::to_string_pretty(&value).expect("serializable")).map_err(io)
            }
            (Format::Csv, Some((header, rows))) => {
                let mut w = csv::Writer::from_writer(&mut *self.out);
                let err = |source| Error::Csv { path: "<stdout>".into(), source };
                w.write_record(&header).map_err(err)?;
                for r in rows {
                    w.write_record(&r).map_err(err)?;
                }
                w.flush().map_err(io)
            }
            _ => writeln!(self.out, "{text}").map_err(io),
        }
    }
}

/// Parses `argv` (program name first) and runs it, returning the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_invariant_violation() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let mut o = Output { format, out };
    let variant = cli.eta_variant;
    match cli.command {
        Command::Spectrum { space, k, method } => {
            let method = match method.as_str() {
                "character-count" => Method::CharacterCount,
                "cyclotomic" => Method::Cyclotomic,
                other => return Err(Error::Unsupported(format!("unknown method {other:?}"))),
            };
            let s = space.build()?;
            let pre = multiplicity_prefix(&s, k, method)?;
            let rows: Vec<Vec<String>> = (0..k)
                .map(|i| vec![i.to_string(), pre.plus[i].to_string(), pre.minus[i].to_string()])
                .collect();
            let text = std::iter::once(format!("{s}, eigenvalues ±(3/2 + k)\n{:>5} {:>12} {:>12}", "k", "m+", "m-"))
                .chain(rows.iter().map(|r| format!("{:>5} {:>12} {:>12}", r[0], r[1], r[2])))
                .collect::<Vec<_>>()
                .join("\n");
            let value = json!({
                "q": s.q(), "p": space.p, "h": s.h(), "K": k,
                "pairs": (0..k).map(|i| [pre.plus[i], pre.minus[i]]).collect::<Vec<_>>(),
            });
            o.emit(&text, value, Some((vec!["k", "m_plus", "m_minus"], rows)))?;
        }
        Command::Eta { q, p, h, all } => {
            let spaces = match (all, p) {
                (true, _) => enumerate_classes_3d(q, ClassMode::Unoriented)?,
                (false, Some(p)) => vec![SpinLensSpace::new(LensSpace::three_dim(q, p)?, h)?],
                (false, None) => unreachable!("clap requires --p without --all"),
            };
            let mut rows = Vec::new();
            for s in &spaces {
                let e = eta_exact(s, variant)?;
                rows.push(vec![s.space().reps()[1].to_string(), s.h().map(|h| h.to_string()).unwrap_or_default(), e.value.to_string()]);
            }
            let text = spaces
                .iter()
                .zip(&rows)
                .map(|(s, r)| format!("{s}  eta = {}", r[2]))
                .chain(std::iter::once(format!("({variant} variant)")))
                .collect::<Vec<_>>()
                .join("\n");
            let value = json!({
                "q": q,
                "eta_variant": variant,
                "classes": spaces.iter().zip(&rows).map(|(s, r)| json!({"p": s.space().reps()[1], "h": s.h(), "eta": r[2]})).collect::<Vec<_>>(),
            });
            o.emit(&text, value, Some((vec!["p", "h", "eta"], rows)))?;
        }
        Command::Classify(pair) => {
            let (a, b) = pair.build()?;
            let verdict = certify_isospectral(&a, &b, PrefixMode::Certified)?;
            let rel = eta_classify(&a, &b, variant)?;
            let mut lines = Vec::new();
            let mut per_eps = serde_json::Map::new();
            for eps in pair.signs() {
                let spin = is_epsilon_spin_isometric_3d(&a, &b, eps)?;
                let iso = verdict.holds(eps);
                lines.push(format!("eps={eps}: spin-isometric: {spin}, isospectral (certified): {iso}"));
                per_eps.insert(eps.to_string(), json!({"spin_isometric": spin, "isospectral": iso}));
            }
            lines.push(format!("eta relation: {rel:?} ({variant})"));
            let text = format!("{a} vs {b}\n{}", lines.join("\n"));
            o.emit(&text, json!({"a": a.to_string(), "b": b.to_string(), "eps": per_eps, "eta": rel}), None)?;
        }
        Command::Isometry(pair) => {
            let (a, b) = pair.build()?;
            let mut lines = Vec::new();
            let mut per_eps = serde_json::Map::new();
            for eps in pair.signs() {
                let w = is_epsilon_isometric(a.space(), b.space(), eps);
                lines.push(match &w {
                    Some(w) => format!("eps={eps}: isometric via ell={} sigma={:?} signs={:?}", w.ell, w.sigma, w.signs),
                    None => format!("eps={eps}: not isometric"),
                });
                per_eps.insert(eps.to_string(), serde_json::to_value(&w).expect("serializable"));
            }
            let text = format!("{} vs {}\n{}", a.space(), b.space(), lines.join("\n"));
            o.emit(&text, Value::Object(per_eps), None)?;
        }
        Command::Equations(pair) => {
            let (a, b) = pair.build()?;
            let mut lines = Vec::new();
            let mut per_eps = serde_json::Map::new();
            for eps in pair.signs() {
                let ev = isospectral_equations_hold(&a, &b, eps)?;
                lines.push(format!(
                    "eps={eps}: hold: {} (checked {} indices, failed {:?})",
                    ev.holds,
                    ev.checked.len(),
                    ev.failed
                ));
                per_eps.insert(eps.to_string(), serde_json::to_value(&ev).expect("serializable"));
            }
            let text = format!("{a} vs {b}\n{}", lines.join("\n"));
            o.emit(&text, Value::Object(per_eps), None)?;
        }
        Command::Digits { q, p, len, s } => {
            let d = rigidity_digits(q, p, len)?;
            let g3 = g3_closed_form(q, p).ok();
            let mut text = format!("q={q} p={p} digits={:?}", d.digits);
            if let Some(g3) = g3 {
                text.push_str(&format!("\ng3 closed form: {g3}"));
            }
            let decision = s.map(|s| spectral_rigidity(q, p, s)).transpose()?;
            if let Some(dec) = decision {
                text.push_str(&format!("\nversus s={}: {dec:?}", s.unwrap_or_default()));
            }
            o.emit(&text, json!({"q": q, "p": p, "digits": d.digits, "g3_closed_form": g3, "decision": decision}), None)?;
        }
        Command::Sweep { q_min, q_max, quick } => {
            let cfg = SweepConfig {
                q_min,
                q_max,
                prefix: quick.map_or(PrefixMode::Certified, PrefixMode::Quick),
                jobs: cli.jobs,
                eta_variant: variant,
                output_dir: cli.out.clone(),
            };
            let outcome = run_sweep(&cfg)?;
            match o.format {
                Format::Csv => {
                    write_csv(&mut *o.out, &outcome.records).map_err(|source| Error::Csv { path: "<stdout>".into(), source })?
                }
                _ => {
                    let text = outcome
                        .records
                        .iter()
                        .map(|r| {
                            format!("q={} classes={} conjecture_holds={}", r.q, r.classes.len(), r.conjecture_holds)
                        })
                        .chain(outcome.aborted.iter().map(|a| format!("q={} ABORTED: {}", a.q, a.error)))
                        .collect::<Vec<_>>()
                        .join("\n");
                    let value = serde_json::to_value(&outcome.records).expect("serializable");
                    o.emit(&text, value, None)?;
                }
            }
            if outcome.aborted.iter().any(|a| a.invariant_violation) {
                return Ok(2);
            }
            if !outcome.aborted.is_empty() {
                return Ok(1);
            }
        }
    }
    Ok(0)
}
