use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use repverify_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = execute(cli.command);
    // Ignore broken pipes so `repverify build | head` exits quietly.
    let _ = std::io::stdout().write_all(output.stdout.as_bytes());
    let _ = std::io::stderr().write_all(output.stderr.as_bytes());
    ExitCode::from(output.exit_code)
}
