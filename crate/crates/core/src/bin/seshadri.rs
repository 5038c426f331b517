use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use seshadri::cli::{
    cmd_abelian, cmd_reproduce_paper, cmd_scan_floor, cmd_scan_violation, cmd_surface,
    render_pretty, verify_document, AbelianKind, CertificateDocument, CliError, DEFAULT_SCAN_CAP,
};

#[derive(Parser)]
#[command(
    name = "seshadri",
    version,
    about = "Exact Seshadri constant bounds and certificates"
)]
struct Cli {
    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,

    /// Write output to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Lower-bound certificate and two-sided bounds on a Picard-rank-one surface.
    Surface {
        #[arg(long)]
        l2: u64,
        /// Defaults to floor(sqrt(L^2)).
        #[arg(long)]
        alpha: Option<u64>,
    },
    /// Upper bounds on principally polarized abelian varieties.
    Abelian {
        #[arg(long)]
        g: u32,
        #[arg(long, value_enum)]
        kind: AbelianKind,
    },
    /// Brute-force scans.
    Scan {
        #[command(subcommand)]
        kind: ScanKind,
    },
    /// Table of the headline values, each with its verification status.
    ReproducePaper,
    /// Re-verify a certificate document (`-` reads stdin).
    Verify { path: PathBuf },
}

#[derive(Args)]
struct CapArg {
    /// Largest number of cases a scan may enumerate.
    #[arg(long, default_value_t = DEFAULT_SCAN_CAP)]
    cap: u128,
}

#[derive(Subcommand)]
enum ScanKind {
    /// nu*4/3 against floor(nu*sqrt(2)) for nu in [from, to].
    Floor {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[command(flatten)]
        cap: CapArg,
    },
    /// Pairs (d, m) that would violate epsilon >= alpha on a rank-one surface.
    Violation {
        #[arg(long)]
        l2: u64,
        #[arg(long)]
        alpha: u64,
        #[arg(long)]
        dmax: u64,
        #[arg(long)]
        mmax: u64,
        #[command(flatten)]
        cap: CapArg,
    },
}

fn read_document(path: &PathBuf) -> Result<CertificateDocument, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path)?
    };
    Ok(serde_json::from_str(&text)?)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let doc = match &cli.command {
        Command::Surface { l2, alpha } => cmd_surface(*l2, *alpha)?,
        Command::Abelian { g, kind } => cmd_abelian(*g, *kind)?,
        Command::Scan { kind } => match kind {
            ScanKind::Floor { from, to, cap } => cmd_scan_floor(*from, *to, cap.cap)?,
            ScanKind::Violation {
                l2,
                alpha,
                dmax,
                mmax,
                cap,
            } => cmd_scan_violation(*l2, *alpha, *dmax, *mmax, cap.cap)?,
        },
        Command::ReproducePaper => cmd_reproduce_paper()?,
        Command::Verify { path } => {
            let doc = read_document(path)?;
            verify_document(&doc)?;
            let text = if cli.pretty {
                format!("{}: verified\n", doc.command)
            } else {
                let mut s = serde_json::to_string_pretty(&serde_json::json!({
                    "command": doc.command,
                    "verified": true,
                }))?;
                s.push('\n');
                s
            };
            return emit(&text, cli.out.as_ref());
        }
    };
    let doc = doc.require_verified()?;
    let text = if cli.pretty {
        render_pretty(&doc)
    } else {
        doc.to_json_string()?
    };
    emit(&text, cli.out.as_ref())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&e.to_json()).expect("error JSON serializes")
            );
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
