//! clap definitions mapped onto [`RunConfig`].

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use super::{Command, OutputFormat, RunConfig};
use crate::theorems::{GammaRange, DEFAULT_TOLERANCE};

#[derive(Debug, Parser)]
#[command(
    name = "regcoef",
    version,
    about = "Fit OLS regressions and check residualized-predictor coefficient identities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Sub,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input CSV: header row of column names, numeric rows.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Sub {
    /// Multiple regression of the response on the predictors.
    Fit {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        response: String,
        #[arg(long, value_delimiter = ',', required = true)]
        predictors: Vec<String>,
    },
    /// Remove from the target its linear dependence on the controls.
    Residualize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        target: String,
        #[arg(long, value_delimiter = ',', required = true)]
        controls: Vec<String>,
    },
    /// Slope of the response on x1 - gamma*x2 over a gamma grid.
    Sweep {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        response: String,
        #[arg(long)]
        x1: String,
        #[arg(long)]
        x2: String,
        #[arg(long, allow_hyphen_values = true)]
        gamma_min: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma_max: f64,
        #[arg(long, allow_hyphen_values = true)]
        gamma_step: f64,
    },
    /// Slope of the response on x1 - g2*x2 - g3*x3 over a 2-D grid.
    Surface {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        response: String,
        #[arg(long)]
        x1: String,
        #[arg(long, value_delimiter = ',', required = true)]
        controls: Vec<String>,
        /// min:max:step
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        gamma2_range: GammaRange,
        /// min:max:step
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range)]
        gamma3_range: GammaRange,
    },
    /// Check every coefficient identity; exit 1 if any fails.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        response: String,
        #[arg(long)]
        x1: String,
        #[arg(long, value_delimiter = ',', required = true)]
        controls: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
    /// Human-readable summary: fits, residualization, roots and checks.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        response: String,
        #[arg(long)]
        x1: String,
        #[arg(long, value_delimiter = ',', required = true)]
        controls: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tolerance: f64,
    },
}

fn parse_range(s: &str) -> Result<GammaRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, step] = parts.as_slice() else {
        return Err(format!("expected min:max:step, got `{s}`"));
    };
    let p = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("`{v}`: {e}"));
    GammaRange::new(p(min)?, p(max)?, p(step)?).map_err(|e| e.to_string())
}

impl From<Cli> for RunConfig {
    fn from(cli: Cli) -> RunConfig {
        let (command, common, tolerance) = match cli.command {
            Sub::Fit {
                common,
                response,
                predictors,
            } => (
                Command::Fit {
                    response,
                    predictors,
                },
                common,
                DEFAULT_TOLERANCE,
            ),
            Sub::Residualize {
                common,
                target,
                controls,
            } => (
                Command::Residualize { target, controls },
                common,
                DEFAULT_TOLERANCE,
            ),
            Sub::Sweep {
                common,
                response,
                x1,
                x2,
                gamma_min,
                gamma_max,
                gamma_step,
            } => (
                Command::Sweep {
                    response,
                    x1,
                    x2,
                    range: GammaRange {
                        min: gamma_min,
                        max: gamma_max,
                        step: gamma_step,
                    },
                },
                common,
                DEFAULT_TOLERANCE,
            ),
            Sub::Surface {
                common,
                response,
                x1,
                controls,
                gamma2_range,
                gamma3_range,
            } => (
                Command::Surface {
                    response,
                    x1,
                    controls,
                    range2: gamma2_range,
                    range3: gamma3_range,
                },
                common,
                DEFAULT_TOLERANCE,
            ),
            Sub::Verify {
                common,
                response,
                x1,
                controls,
                tolerance,
            } => (
                Command::Verify {
                    response,
                    x1,
                    controls,
                },
                common,
                tolerance,
            ),
            Sub::Report {
                common,
                response,
                x1,
                controls,
                tolerance,
            } => (
                Command::Report {
                    response,
                    x1,
                    controls,
                },
                common,
                tolerance,
            ),
        };
        RunConfig {
            command,
            input_path: common.input,
            tolerance,
            output_format: common.format,
            output_path: common.output,
        }
    }
}
