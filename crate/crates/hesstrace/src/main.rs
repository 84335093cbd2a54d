use clap::Parser;

fn main() {
    let cli = hesstrace::cli::Cli::parse();
    std::process::exit(hesstrace::cli::run(cli));
}
