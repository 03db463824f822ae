use std::process::ExitCode;

fn main() -> ExitCode {
    distinctseq::cli::main()
}
