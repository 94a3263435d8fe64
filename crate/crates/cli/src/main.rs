use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use vogan_cli::run::Options;
use vogan_cli::{parse_mode, run_document, Format};

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Parser)]
#[command(name = "vogan", version, about = "Sign calculus for selfdual and conjugate-dual parameters")]
struct Args {
    /// JSON document to load.
    #[arg(long)]
    input: PathBuf,
    /// Run only queries of this kind (derived from the document when none are listed).
    #[arg(long)]
    query: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// `linear` or `metaplectic`; overrides the mode of multiplicity queries.
    #[arg(long)]
    mode: Option<String>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    let input = match std::fs::read(&args.input) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.input.display());
            return ExitCode::from(1);
        }
    };
    let mode = match args.mode.as_deref().map(parse_mode).transpose() {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match args.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    let out = run_document(&input, args.query.as_deref(), Options { mode }, format);
    print!("{}", out.stdout);
    ExitCode::from(out.code as u8)
}
