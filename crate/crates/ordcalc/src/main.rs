use clap::Parser;
use ordcalc::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = run(cli, &mut out) {
        eprintln!("ordcalc: {e}");
        std::process::exit(e.exit_code());
    }
}
