use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(aknn::cli::run())
}
