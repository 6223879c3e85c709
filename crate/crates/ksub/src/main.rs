use std::process::ExitCode;

fn main() -> ExitCode {
    ksub::cli::main_with(std::env::args_os())
}
