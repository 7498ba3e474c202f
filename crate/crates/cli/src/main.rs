use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use gausscap_cli::args::Cli;
use gausscap_cli::error::exit;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = match gausscap_cli::run(&cli, &mut out, &mut err) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "gausscap: {e}");
            e.exit_code()
        }
    };
    let _ = out.flush();
    ExitCode::from(code as u8)
}
