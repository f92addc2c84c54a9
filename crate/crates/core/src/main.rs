use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let start = Instant::now();
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = semigeom::cli::run(std::env::args_os(), &mut out, &mut err);
    let _ = out.flush();
    let _ = writeln!(err, "elapsed: {:.3}s", start.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}
