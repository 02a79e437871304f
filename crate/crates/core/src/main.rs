use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use faultwave::cli;

#[derive(Parser)]
#[command(name = "faultwave", version, about = "Fault detection on three-phase voltage records")]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Synthesize a record into a trace CSV plus sidecar JSON.
    Generate {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the configured detector; writes a report JSON and an index CSV.
    Detect {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Energy table over a scenario suite.
    EnergyTable {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Paired voltage and index CSVs for plotting.
    PlotData {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_INPUT as u8 } else { 0 });
        }
    };
    let result = match &args.command {
        Command::Generate { config, out } => cli::cmd_generate(config.as_deref(), out).map(|_| ()),
        Command::Detect { input, config, out } => cli::cmd_detect(input, config.as_deref(), out).map(|r| {
            match r.onset_time_s {
                Some(t) => println!("{}: detected at {t:.4} s", r.method.name()),
                None => println!("{}: no fault detected", r.method.name()),
            }
        }),
        Command::EnergyTable { config, out } => cli::cmd_energy_table(config, out, &mut std::io::stdout()).map(|_| ()),
        Command::PlotData { input, config, out } => cli::cmd_plot_data(input, config.as_deref(), out).map(|_| ()),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("faultwave: {e}");
            ExitCode::from(e.code as u8)
        }
    }
}
