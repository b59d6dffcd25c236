use clap::error::ErrorKind;
use clap::Parser;

use ohmic_probe::cli::run::{run, Cli};

fn main() {
    // OHMIC_PROBE_THREADS caps the rayon worker count; results are identical
    // for any value because parallel maps collect in task order.
    if let Ok(text) = std::env::var("OHMIC_PROBE_THREADS") {
        match text.parse::<usize>() {
            Ok(n) if n >= 1 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: OHMIC_PROBE_THREADS must be a positive integer, got '{text}'");
                std::process::exit(1);
            }
        }
    }
    // Exit codes: 0 clean, 1 configuration errors (including usage errors),
    // 2 partial row-level failures.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            std::process::exit(0);
        }
        Err(e) => {
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    std::process::exit(run(cli).0);
}
