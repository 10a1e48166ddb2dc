use clap::Parser;

fn main() {
    let cli = updown::cli::Cli::parse();
    if let Err(err) = updown::cli::run(cli) {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
