use std::process::ExitCode;

fn main() -> ExitCode {
    l1deform::cli::main()
}
