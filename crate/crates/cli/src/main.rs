use std::io::{self, BufRead, IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::Parser;
use surreal_cli::{Options, Record, Session, Step, MAX_RANK_BOUND};

/// Exact arithmetic on surreal numbers, with initiality checks for subgroups and subdomains.
#[derive(Parser)]
#[command(name = "surreal", version)]
struct Args {
    /// Run the commands in FILE (`-` for stdin) instead of starting a prompt.
    #[arg(long, value_name = "FILE")]
    batch: Option<PathBuf>,
    /// Print one JSON object per command.
    #[arg(long)]
    json: bool,
    /// Search budget for sign expansions and structure checks.
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u32).range(1..=4096))]
    fuel: u32,
    /// Largest birthday the genetic oracle enumerates.
    #[arg(long, default_value_t = 7)]
    rank_bound: usize,
    /// Stop at the first failing command.
    #[arg(long)]
    fail_fast: bool,
    /// Print w as ω.
    #[arg(long)]
    unicode: bool,
    /// Echo each command before its result (text mode).
    #[arg(long)]
    echo: bool,
}

fn emit(out: &mut impl Write, record: &Record, args: &Args) -> io::Result<()> {
    if args.json {
        writeln!(out, "{}", record.json())
    } else {
        if args.echo {
            writeln!(out, "> {}", record.input)?;
        }
        writeln!(out, "{}", record.text())
    }
}

fn run(session: &mut Session, input: impl BufRead, args: &Args, prompt: bool) -> io::Result<bool> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut clean = true;
    let mut lines = input.lines();
    loop {
        if prompt {
            write!(out, "surreal> ")?;
            out.flush()?;
        }
        let Some(line) = lines.next() else { break };
        match session.execute(&line?) {
            Step::Skip => {}
            Step::Quit => break,
            Step::Record(r) => {
                emit(&mut out, &r, args)?;
                if !r.ok() {
                    clean = false;
                    if args.fail_fast {
                        break;
                    }
                }
            }
        }
    }
    out.flush()?;
    Ok(clean)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.rank_bound > MAX_RANK_BOUND {
        eprintln!("error: --rank-bound must be at most {MAX_RANK_BOUND}");
        return ExitCode::from(2);
    }
    let opts = Options {
        fuel: args.fuel as usize,
        rank_bound: args.rank_bound,
        unicode: args.unicode,
    };
    let mut session = Session::new(opts);
    let result = match &args.batch {
        Some(path) if path.as_os_str() == "-" => {
            run(&mut session, io::stdin().lock(), &args, false)
        }
        Some(path) => {
            let file = match std::fs::File::open(path) {
                Ok(f) => f,
                Err(e) => {
                    eprintln!("error: cannot open {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            };
            let dir = path
                .parent()
                .filter(|p| !p.as_os_str().is_empty())
                .unwrap_or(Path::new("."));
            session = session.with_base_dir(dir);
            run(&mut session, io::BufReader::new(file), &args, false)
        }
        None => {
            let stdin = io::stdin();
            let prompt = stdin.is_terminal() && !args.json;
            run(&mut session, stdin.lock(), &args, prompt)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
