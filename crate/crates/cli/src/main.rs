use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(fracloci_cli::run(std::env::args_os()))
}
