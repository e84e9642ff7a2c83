use clap::Parser;

use varpi::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(stdout) => print!("{stdout}"),
        Err(err) => {
            if let Some(report) = err.stdout() {
                print!("{report}");
            }
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
