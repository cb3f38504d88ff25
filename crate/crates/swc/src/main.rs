use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(swc::cli::main_with(std::env::args_os()))
}
