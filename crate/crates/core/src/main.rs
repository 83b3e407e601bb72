use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use vcat::cli::{error_exit_code, render_error, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let code = match run(&cli) {
        Ok(out) => {
            print!("{}", out.render(cli.machine));
            out.exit_code()
        }
        Err(e) => {
            if cli.machine {
                print!("{}", render_error(&e, true));
            } else {
                eprint!("{}", render_error(&e, false));
            }
            error_exit_code(&e)
        }
    };
    let _ = std::io::stdout().flush();
    ExitCode::from(code as u8)
}
