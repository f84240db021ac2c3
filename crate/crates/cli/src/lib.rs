//! Command-line front end: argument parsing, bundled reference data and
//! JSON reports.

pub mod args;
pub mod commands;
pub mod reference;
pub mod report;

use anyhow::Result;

use args::{Cli, Command};

/// Exit status for a completed run: 0 when every result matched, 2 when a
/// mathematical check came out differently. Errors map to 1 in `main`.
pub fn run(cli: Cli) -> Result<i32> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    let output = cli.output.as_deref();
    let conductor = cli.field_conductor;
    match &cli.command {
        Command::Build(src) => {
            let (a, json) = commands::build(src, conductor)?;
            commands::write_output(output, &json)?;
            eprintln!("{} lines over Q(ζ_{})", a.len(), a.field().conductor());
            Ok(0)
        }
        Command::Singular(args) => {
            let out = commands::singular(args, conductor)?;
            commands::write_output(output, &out.json)?;
            if let Some(csv) = &out.csv {
                match &args.csv {
                    Some(path) => std::fs::write(path, csv)?,
                    None => print!("{csv}"),
                }
            }
            eprintln!("{}", out.profile_line);
            match &out.comparison {
                Some(c) => {
                    eprintln!("{}", commands::comparison_line(c));
                    Ok(if c.matches() { 0 } else { 2 })
                }
                None => Ok(0),
            }
        }
        Command::Check(args) => {
            let (report, ok) = commands::check(args, conductor)?;
            commands::write_output(output, &report.to_json())?;
            let w = &report.witnesses[0];
            eprintln!(
                "verdict {} (symbolic membership {}, in (I^{})_{} {}, expected {})",
                w.verdict, w.symbolic_membership, w.r, w.degree, w.ordinary_membership, args.expect
            );
            Ok(if ok { 0 } else { 2 })
        }
        Command::WitnessSearch(args) => {
            let report = commands::search(args, conductor)?;
            commands::write_output(output, &report.to_json())?;
            if let Some(d) = &report.details {
                eprintln!("complement dimension {}", d["complement_dim"]);
            }
            Ok(0)
        }
        Command::VerifyPaper(args) => {
            let report = commands::verify_paper(args)?;
            commands::write_output(output, &report.to_json())?;
            for c in &report.checks {
                let mark = if c.pass { "ok  " } else if c.informative { "info" } else { "FAIL" };
                eprintln!("{mark} {:<34} expected {:<18} actual {}", c.name, c.expected, c.actual);
            }
            if report.passed() {
                eprintln!("status pass");
                Ok(0)
            } else {
                eprintln!("status fail: {}", report.failed_checks().join(", "));
                Ok(2)
            }
        }
    }
}
