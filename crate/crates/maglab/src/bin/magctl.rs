use std::process::ExitCode;

use clap::Parser;
use maglab::cli::{run, Cli, Format};
use maglab::codec::to_canonical_string;
use maglab::error::EXIT_CHECK_FAILED;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("MAGLAB_CONDUCTOR_CAP") {
        match v.parse::<u64>() {
            Ok(cap) => maglab_core::exact::cyclotomic::set_conductor_cap(cap),
            Err(_) => {
                let e = maglab::CliError::Input(format!("MAGLAB_CONDUCTOR_CAP is not an integer: {v}"));
                eprint!("{}", to_canonical_string(&e.to_json()));
                return ExitCode::from(e.exit_code() as u8);
            }
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => print!("{}", to_canonical_string(&out.value)),
                Format::Text => print!("{}", out.text),
            }
            if out.pass { ExitCode::SUCCESS } else { ExitCode::from(EXIT_CHECK_FAILED as u8) }
        }
        Err(e) => {
            eprint!("{}", to_canonical_string(&e.to_json()));
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
