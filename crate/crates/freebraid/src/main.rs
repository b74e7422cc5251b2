use std::process;

fn main() {
    process::exit(freebraid::cli::run(std::env::args_os()));
}
