use std::process::ExitCode;

use clap::Parser;
use wreath_powers::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = run(&cli);
    if out.code == 0 {
        print!("{}", out.text);
    } else {
        let (body, last) = match out.text.rfind("error:") {
            Some(i) => out.text.split_at(i),
            None => (out.text.as_str(), ""),
        };
        print!("{body}");
        eprint!("{last}");
    }
    ExitCode::from(out.code as u8)
}
