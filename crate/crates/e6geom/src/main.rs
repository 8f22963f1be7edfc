use clap::Parser;
use e6geom::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
