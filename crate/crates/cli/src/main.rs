use clap::Parser;

fn main() {
    std::process::exit(filippov_cli::run(filippov_cli::Cli::parse()));
}
