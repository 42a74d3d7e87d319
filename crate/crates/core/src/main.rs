use std::process::ExitCode;

fn main() -> ExitCode {
    kspace_sampler::cli::main_with_args(std::env::args_os())
}
