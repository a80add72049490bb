use clap::Parser;

use sawtooth_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("sawtooth: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
