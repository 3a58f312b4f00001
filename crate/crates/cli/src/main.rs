use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use toric_dmod::{CliError, Format};

#[derive(Parser)]
#[command(name = "toric-dmod", version, about = "Graded D-modules on smooth toric varieties")]
struct Cli {
    #[arg(long, value_enum, default_value_t = FormatArg::Plain, global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Class group, degrees, irrelevant ideal and Euler operators of a fan.
    FanInfo { fan: PathBuf },
    /// Module document for D_L(b), b given as comma-separated class coordinates.
    Dl {
        fan: PathBuf,
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// Module document for D_R(a).
    Dr {
        fan: PathBuf,
        #[arg(allow_hyphen_values = true)]
        class: String,
    },
    /// Theta-condition verdict for a module document.
    Check { fan: PathBuf, module: PathBuf },
    /// Characteristic ideal and dimensions.
    Charvar {
        fan: PathBuf,
        module: PathBuf,
        /// Also compute the ideal on each affine chart.
        #[arg(long)]
        charts: bool,
        /// Print the b-saturated characteristic ideal.
        #[arg(long)]
        saturate: bool,
    },
    /// Left/right swap of a module document.
    Swap { fan: PathBuf, module: PathBuf },
    /// Local data h_p, rho(h_p), I(p) on a maximal cone.
    Local {
        fan: PathBuf,
        /// 1-based ray indices, comma separated.
        #[arg(long)]
        cone: String,
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        /// Polynomial in th1..thd whose image is computed.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
    },
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, CliError> {
    let format = match cli.format {
        FormatArg::Plain => Format::Plain,
        FormatArg::Machine => Format::Machine,
    };
    match cli.command {
        Command::FanInfo { fan } => Ok(toric_dmod::cmd_fan_info(&read(&fan)?)?.render(format)),
        Command::Dl { fan, class } => toric_dmod::cmd_dl(&read(&fan)?, &class),
        Command::Dr { fan, class } => toric_dmod::cmd_dr(&read(&fan)?, &class),
        Command::Check { fan, module } => Ok(toric_dmod::cmd_check(&read(&fan)?, &read(&module)?)?.render(format)),
        Command::Charvar { fan, module, charts, saturate } => {
            Ok(toric_dmod::cmd_charvar(&read(&fan)?, &read(&module)?, charts, saturate)?.render(format))
        }
        Command::Swap { fan, module } => toric_dmod::cmd_swap(&read(&fan)?, &read(&module)?),
        Command::Local { fan, cone, p, g } => {
            Ok(toric_dmod::cmd_local(&read(&fan)?, &cone, &p, g.as_deref())?.render(format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
