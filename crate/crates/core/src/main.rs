use clap::Parser;

use qmatrix_pairs::cli::{run, Cli};

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let code = run(&cli.command, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
