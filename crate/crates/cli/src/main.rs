use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (output, status) = semitorsor_cli::run(std::env::args());
    // usage and schema errors go to stderr
    if status == 2 {
        let _ = std::io::stderr().write_all(output.as_bytes());
    } else {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(output.as_bytes());
        let _ = out.flush();
    }
    ExitCode::from(status as u8)
}
