//! Command-line driver for `knotfield`: argument handling, run configuration
//! and the CSV, OBJ, PGM and JSON outputs.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;

use args::{Cli, Command, Format};
use config::{RunConfig, DEFAULT_EXTRACTION_RES};
pub use error::CliError;

const DEFAULT_QUADRATURE_CELLS: usize = 100;
const DEFAULT_SLICE_PIXELS: usize = 201;

fn print(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Presets => print(&commands::presets_listing()),
        Command::Sample { field, event, format } => {
            let cfg = RunConfig::resolve(&field, None, None, None, DEFAULT_EXTRACTION_RES)?;
            if format.contains(&Format::Json) {
                print(&output::json_text(&commands::sample_json(&cfg, &event)));
            } else {
                print(&commands::sample_text(&cfg, &event));
            }
        }
        Command::Vortex { field, grid, trace, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), Some(&trace), Some(&out), DEFAULT_EXTRACTION_RES)?;
            let (set, _) = commands::cmd_vortex(&cfg)?;
            print(&format!(
                "{} curve(s): {} closed, {} open; {} diagnostic(s)\n",
                set.curves.len(),
                set.closed_count(),
                set.open_count(),
                set.diagnostics.len()
            ));
        }
        Command::Topology { field, grid, trace, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), Some(&trace), Some(&out), DEFAULT_EXTRACTION_RES)?;
            let (report, _) = commands::cmd_topology(&cfg)?;
            let sig = report.signature();
            print(&format!(
                "components {}, open {}, linking {:?}, windings {:?}, certified {}\n",
                sig.components,
                sig.open,
                sig.linking,
                sig.windings,
                report.is_certified()
            ));
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
        Command::Verify { field, out, seed } => {
            let cfg = RunConfig::resolve(&field, None, None, Some(&out), DEFAULT_EXTRACTION_RES)?;
            let (checks, text) = commands::cmd_verify(&cfg, seed)?;
            print(&text);
            let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
            if !failed.is_empty() {
                return Err(CliError::Verification(failed.join(", ")));
            }
        }
        Command::Slice { field, grid, plane, offset, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), None, Some(&out), DEFAULT_SLICE_PIXELS)?;
            let (s, _) = commands::cmd_slice(&cfg, plane, offset)?;
            print(&format!(
                "slice {} at {}: {}x{} pixels, log10(u) in [{}, {}]\n",
                plane.name(),
                offset,
                s.width,
                s.height,
                s.log_min,
                s.log_max
            ));
        }
        Command::Energy { field, grid, radii, hopf, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), None, Some(&out), DEFAULT_QUADRATURE_CELLS)?;
            let (results, _) = commands::cmd_energy(&cfg, &radii.radii, hopf)?;
            for q in results {
                print(&format!(
                    "R {} energy {} tail {} (decay exponent {:.3})\n",
                    q.box_radius,
                    output::fmt17(q.value),
                    output::fmt17(q.tail_estimate),
                    q.decay_exponent
                ));
            }
        }
        Command::Helicity { field, grid, radii, convergence, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), None, Some(&out), DEFAULT_QUADRATURE_CELLS)?;
            let doc = commands::cmd_helicity(&cfg, &radii.radii, convergence)?;
            for row in doc["results"].as_array().into_iter().flatten() {
                print(&format!("Hm {} He {}\n", row["magnetic"], row["electric"]));
            }
        }
        Command::Scan { field, grid, trace, epsilons, out } => {
            let cfg = RunConfig::resolve(&field, Some(&grid), Some(&trace), Some(&out), DEFAULT_EXTRACTION_RES)?;
            let doc = commands::cmd_scan(&cfg, &epsilons)?;
            for (eps, row) in epsilons.iter().zip(doc["rows"].as_array().into_iter().flatten()) {
                print(&format!(
                    "epsilon {eps}: components {}, windings {}, certified {}\n",
                    row["componentCount"], row["windings"], row["certified"]
                ));
            }
            print(&format!("stable from {}\n", doc["stableFrom"]));
        }
    }
    Ok(())
}
