use std::io::{self, Write};
use std::process::ExitCode;

use bergman_csym::cli::{self, Cli};
use clap::Parser;

fn main() -> ExitCode {
    let args = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match cli::run(&args, &mut lock) {
        Ok(()) => {
            let _ = lock.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            let _ = lock.flush();
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code as u8)
        }
    }
}
