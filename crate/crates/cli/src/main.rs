use std::io::Write;
use std::process::ExitCode;

use clj_smell::{parse_args, run, Environment};

fn main() -> ExitCode {
    let cmd = match parse_args(std::env::args_os()) {
        Ok(cmd) => cmd,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout.lock());
    let mut err = std::io::stderr().lock();
    let code = run(&cmd, &Environment::from_process(), &mut out, &mut err);
    let _ = out.flush();
    ExitCode::from(code as u8)
}
