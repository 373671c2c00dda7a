use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let seed = std::env::var(symcx::cli::SEED_ENV).ok();
    let (code, text) = symcx::cli::run(std::env::args_os(), seed.as_deref());
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
    ExitCode::from(code as u8)
}
