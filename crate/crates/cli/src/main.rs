//! `sotmram`: command-line frontend of the SOT-MRAM DTCO engine.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use sotmram_core::arraysim::SelectorKind;
use sotmram_core::config::{RunConfig, CONFIG_ENV};
use sotmram_core::devices::Corner;
use sotmram_core::techmodel::ConfigId;

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "sotmram",
    version,
    about = "SOT-MRAM bitcell design-technology co-optimization"
)]
pub struct Cli {
    /// Run configuration (JSON).
    #[arg(long, global = true, env = CONFIG_ENV)]
    pub config: Option<PathBuf>,
    /// Output directory; tables go to stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Worker threads for sweeps (all cores by default).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Bitcell footprints and the down-routing via aspect ratios.
    Area,
    /// Cross-node SRAM area budget in CPP×MP tiles.
    Profile {
        /// Roadmap file (JSON list of nodes) replacing the configured one.
        #[arg(long)]
        roadmap: Option<PathBuf>,
    },
    /// Thermal stability factor per retention target.
    Retention,
    /// Critical switching current versus pulse width.
    Switching {
        #[arg(long, default_value_t = 0.1)]
        tau_min: f64,
        #[arg(long, default_value_t = 1000.0)]
        tau_max: f64,
        #[arg(long, default_value_t = 61)]
        points: usize,
    },
    /// Write cell current per configuration and array size.
    Write {
        /// Array sizes (repeatable).
        #[arg(long)]
        rows: Vec<u32>,
        #[arg(long, default_value = "ss")]
        corner: Corner,
        /// Configurations (repeatable); all when absent.
        #[arg(long)]
        cell: Vec<ConfigId>,
    },
    /// One precharge-and-discharge sense run with waveforms.
    Read {
        #[arg(long, default_value = "1T1D1R")]
        cell: ConfigId,
        #[arg(long)]
        selector: Option<SelectorKind>,
        #[arg(long)]
        vread: Option<f64>,
        #[arg(long)]
        ra: Option<f64>,
        #[arg(long)]
        tmr: Option<f64>,
        #[arg(long)]
        vt_shift: Option<f64>,
        #[arg(long)]
        rows: Option<u32>,
        /// Keep every n-th waveform sample.
        #[arg(long, default_value_t = 1)]
        stride: usize,
    },
    /// Read design-space sweep and the power-performance-area summary.
    Sweep {
        /// Array size override for every grid point.
        #[arg(long)]
        rows: Option<u32>,
    },
    /// Refit every calibrated parameter and write the fitted model file.
    Calibrate,
    /// Device-level utilities.
    Devices {
        #[command(subcommand)]
        cmd: DevicesCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum DevicesCmd {
    /// Current-voltage curves of every selector and the write transistor.
    DumpIv {
        #[arg(long, default_value_t = 121)]
        points: usize,
    },
}

fn load(cli: &Cli) -> anyhow::Result<RunConfig> {
    Ok(match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    })
}

fn run(cli: &Cli) -> anyhow::Result<()> {
    let cfg = load(cli)?;
    let art = commands::run(cli, &cfg)?;
    art.emit(cli.out.as_deref(), cli.format)
}

fn error_document(e: &anyhow::Error) -> serde_json::Value {
    let kind = e
        .downcast_ref::<sotmram_core::Error>()
        .map(|c| c.kind())
        .unwrap_or("cli");
    let chain: Vec<String> = e.chain().skip(1).map(|c| c.to_string()).collect();
    serde_json::json!({ "error": { "kind": kind, "message": e.to_string(), "causes": chain } })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let doc =
                serde_json::json!({ "error": { "kind": "usage", "message": e.to_string().trim(), "causes": [] } });
            eprintln!("{doc}");
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_document(&e));
            ExitCode::from(1)
        }
    }
}
