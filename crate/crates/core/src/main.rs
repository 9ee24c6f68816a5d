use catelem::pipeline::{run_pipeline, Cli};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let outcome = run_pipeline(&cli.command);
    print!("{}", outcome.report);
    std::process::exit(outcome.exit_code);
}
