use std::io::Write;

use clap::Parser;

fn main() {
    let config = adinkra::cli::RunConfig::parse();
    let outcome = adinkra::cli::run(&config);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(outcome.code);
}
