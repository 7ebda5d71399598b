//! Runs the conjecture sweep over a range of q and writes per-q records.
//!
//! ```text
//! cargo run --release --example sweep -- 2 60 out
//! ```

use std::path::PathBuf;

use lens_spectra::sweep::{run_sweep, SweepConfig};

fn main() -> lens_spectra::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let q_min = args.first().and_then(|a| a.parse().ok()).unwrap_or(2);
    let q_max = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(40);
    let cfg = SweepConfig { output_dir: args.get(2).map(PathBuf::from), ..SweepConfig::new(q_min, q_max) };
    let outcome = run_sweep(&cfg)?;
    for r in &outcome.records {
        let iso_pairs = r.pairs.iter().filter(|p| p.p != p.s && (p.iso.plus || p.iso.minus)).count();
        println!(
            "q={:>4} classes={:>4} pairs={:>6} isospectral_pairs={:>3} holds={} {}ms",
            r.q,
            r.classes.len(),
            r.pairs.len(),
            iso_pairs,
            r.conjecture_holds,
            r.wall_ms
        );
    }
    println!("conjecture holds on the whole range: {}", outcome.conjecture_holds());
    Ok(())
}
