use clap::Parser;
use mcgauge_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if let Some(err) = outcome.report.as_ref().and_then(|r| r.error.as_ref()) {
        eprintln!("mcgauge: {err}");
    }
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &outcome.output) {
                eprintln!("mcgauge: cannot write {}: {e}", path.display());
                std::process::exit(mcgauge_cli::ExitCode::InvalidInput.code());
            }
        }
        None => print!("{}", outcome.output),
    }
    std::process::exit(outcome.exit.code());
}
