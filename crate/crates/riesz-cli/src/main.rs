use clap::Parser;

fn main() {
    // clap exits with 2 on usage errors and 0 for --help/--version,
    // matching the taxonomy (0 ok, 2 validation, 3 numeric).
    let cli = riesz_cli::Cli::parse();
    std::process::exit(riesz_cli::run(cli));
}
