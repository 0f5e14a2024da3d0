use std::process::ExitCode;

fn main() -> ExitCode {
    recurflow::run(std::env::args_os())
}
