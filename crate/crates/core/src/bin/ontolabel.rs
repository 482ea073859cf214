use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, code) = ontolabel::cli::run_cli(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(output.as_bytes());
    let _ = stdout.flush();
    ExitCode::from(u8::try_from(code).unwrap_or(2))
}
