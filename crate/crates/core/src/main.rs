use clap::Parser;

use regcoef::cli::{args::Cli, run, RunConfig};

fn main() {
    let config = RunConfig::from(Cli::parse());
    std::process::exit(run(&config));
}
