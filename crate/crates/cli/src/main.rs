use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use permmind_cli::{max_states_from_env, run, Cli, Status};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() {
                Status::Usage.code()
            } else {
                0
            });
        }
    };
    let max_states = match max_states_from_env() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::Usage.code());
        }
    };
    let stdin = io::stdin();
    let mut input = stdin.lock();
    let mut out = io::stdout().lock();
    let mut err = io::stderr().lock();
    let status = match run(&cli, max_states, &mut input, &mut out, &mut err) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            Status::Usage
        }
    };
    let _ = out.flush();
    ExitCode::from(status.code())
}
