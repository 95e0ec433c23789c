use std::io;
use std::process::ExitCode;

use clap::Parser;
use monoclosure_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(&cli, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code)
}
