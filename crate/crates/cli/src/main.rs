use clap::Parser;

fn main() {
    let cli = asymfree_cli::Cli::parse();
    if let Err(e) = asymfree_cli::run(&cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
