use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hitkit::verify::{self, Profile, Theorem, VerificationReport, VerifyParams};
use hitkit::{limits, steenrod2, Error};

#[derive(Parser, Debug)]
#[command(name = "hitkit", version, about = "Exact checks around the Steenrod hit problem")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Emit the report as JSON (same as --format json).
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest coordinate space a single degree may use.
    #[arg(long, global = true)]
    max_dim: Option<usize>,
    /// Largest group that may be enumerated element by element.
    #[arg(long, global = true)]
    max_group_order: Option<usize>,
    /// Report elapsed_ms as 0 so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of Quot^m(F_q[x_1..x_n]) over a degree range.
    Quot {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        deg_from: u32,
        #[arg(long)]
        deg_to: u32,
    },
    /// Run one verification target.
    Verify {
        /// main1, cuspidal, decomposition, lemma-vn, ideal-rel, dickson,
        /// matroid, hvector, chi-trick or spike.
        theorem: String,
        #[arg(long)]
        q: Option<u32>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        m: Option<u32>,
        /// Coordinates of a linear form, e.g. 0,1.
        #[arg(long, value_delimiter = ',')]
        y: Option<Vec<u32>>,
        #[arg(long)]
        cases: Option<usize>,
    },
    /// Run the whole battery.
    Suite {
        /// fast or full.
        #[arg(long)]
        profile: String,
    },
}

fn run(cli: &Cli) -> hitkit::Result<VerificationReport> {
    let body = || match &cli.command {
        Command::Quot { q, n, deg_from, deg_to } => verify::quot_table(*n, *q, *deg_from, *deg_to),
        Command::Verify {
            theorem,
            q,
            n,
            k,
            s,
            r,
            m,
            y,
            cases,
        } => {
            let t: Theorem = theorem.parse()?;
            let p = VerifyParams {
                q: *q,
                n: *n,
                k: *k,
                s: *s,
                r: *r,
                m: *m,
                y: y.clone(),
                cases: *cases,
            };
            verify::run_theorem(t, &p)
        }
        Command::Suite { profile } => verify::suite(profile.parse::<Profile>()?),
    };
    let mut report = verify::timed(body)?;
    if cli.global.no_timing {
        report.elapsed_ms = 0;
    }
    Ok(report)
}

fn csv_tables(r: &VerificationReport) -> String {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for t in &r.tables {
        let mut header = vec!["table".to_string()];
        header.extend(t.columns.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for row in &t.rows {
            let mut rec = vec![t.title.clone()];
            rec.extend(row.iter().map(|v| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            }));
            w.write_record(&rec).expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Usage(_) => 2,
        Error::Resource(_) => 3,
        Error::Domain(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if t == 0 {
            eprintln!("--threads must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().ok();
    }
    if let Some(v) = cli.global.max_dim {
        limits::set_max_rows(v);
    }
    if let Some(v) = cli.global.max_group_order {
        limits::set_max_group_order(v);
    }
    let cache = std::env::var_os("HITKIT_CACHE_DIR").map(PathBuf::from);
    if let Some(dir) = &cache {
        if let Err(e) = steenrod2::load_memo(dir) {
            eprintln!("warning: ignoring cache in {}: {e}", dir.display());
        }
    }

    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hitkit: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    if let Some(dir) = &cache {
        if let Err(e) = steenrod2::save_memo(dir) {
            eprintln!("warning: could not write cache to {}: {e}", dir.display());
        }
    }

    let format = if cli.global.json { Format::Json } else { cli.global.format };
    let out = match format {
        Format::Text => verify::render_text(&report),
        Format::Json => report.to_json() + "\n",
        Format::Csv => csv_tables(&report),
    };
    let mut stdout = std::io::stdout().lock();
    if stdout.write_all(out.as_bytes()).is_err() {
        return ExitCode::from(1);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
