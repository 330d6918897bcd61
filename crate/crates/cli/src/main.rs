use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use raygroup::verify::{Fault, Size};
use raygroup_cli::{execute, render_text, Options};

/// Run a raygroup session script.
#[derive(Parser, Debug)]
#[command(name = "raygroup", version)]
struct Cli {
    /// Script file, or `-` for stdin.
    script: PathBuf,
    /// Print the full JSON report.
    #[arg(long)]
    json: bool,
    /// Seed for the verify suites.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sweep size for the verify suites.
    #[arg(long, default_value = "small", value_parser = ["small", "full"])]
    size: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("RAYGROUP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        raygroup::par::set_thread_limit(n);
    }
    let fault = match std::env::var("RAYGROUP_FAULT").as_deref() {
        Ok("tame-sign") => Fault::FlipTameSign,
        _ => Fault::None,
    };
    let src = if cli.script.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(&cli.script)
    };
    let src = match src {
        Ok(s) => s,
        Err(e) => {
            eprintln!("raygroup: cannot read {}: {e}", cli.script.display());
            return ExitCode::from(2);
        }
    };
    let opts = Options { seed: cli.seed, size: Size::parse(&cli.size).unwrap_or_default(), fault };
    let out = execute(&src, &opts);
    if cli.json {
        println!("{}", serde_json::to_string_pretty(&out.report).expect("reports serialize"));
    } else if out.report.get("error").is_some() {
        eprint!("{}", render_text(&out.report));
    } else {
        print!("{}", render_text(&out.report));
    }
    ExitCode::from(out.code as u8)
}
