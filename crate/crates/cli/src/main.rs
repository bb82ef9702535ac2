use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use pals_cli::commands::{self, hex_bits, parse_message_key, CliError, EXIT_USAGE};

#[derive(Parser)]
#[command(
    name = "pals",
    version,
    about = "PALS stream cipher: key generation, encryption and self-audit",
    after_help = "Exit status: 0 success, 1 I/O or internal error, 2 usage error, \
                  3 malformed key file or ciphertext, 4 message keys exhausted (rekey required)."
)]
struct Cli {
    /// Key file (main key, message-key seed and counter)
    #[arg(long, global = true, value_name = "PATH")]
    key: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a new random key file
    Keygen {
        /// Overwrite an existing file
        #[arg(long)]
        force: bool,
    },
    /// Encrypt a file under the next message key
    Encrypt {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long = "out", value_name = "PATH")]
        output: PathBuf,
    },
    /// Decrypt a ciphertext file
    Decrypt {
        #[arg(long = "in", value_name = "PATH")]
        input: PathBuf,
        #[arg(long = "out", value_name = "PATH")]
        output: PathBuf,
    },
    /// Print keystream bits as hex
    Keystream {
        #[arg(long)]
        bits: usize,
        /// Message key in hex; defaults to the one the next encryption uses
        #[arg(long, value_parser = parse_message_key)]
        message_key: Option<u32>,
    },
    /// Statistical and cost audit of the keystream
    Audit {
        #[arg(long)]
        bits: usize,
        #[arg(long, value_parser = parse_message_key)]
        message_key: Option<u32>,
        /// Emit comma-separated values instead of aligned text
        #[arg(long)]
        csv: bool,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let key = cli
        .key
        .ok_or_else(|| CliError::Usage("--key <PATH> is required".into()))?;
    match cli.command {
        Command::Keygen { force } => {
            commands::keygen(&key, force)?;
            eprintln!("wrote {}", key.display());
        }
        Command::Encrypt { input, output } => {
            let mk = commands::encrypt(&key, &input, &output)?;
            eprintln!("message key {:08x}", mk.0);
        }
        Command::Decrypt { input, output } => commands::decrypt(&key, &input, &output)?,
        Command::Keystream { bits, message_key } => {
            let (mk, bytes) = commands::keystream(&key, bits, message_key)?;
            eprintln!("message key {:08x}", mk.0);
            println!("{}", hex_bits(&bytes, bits));
        }
        Command::Audit {
            bits,
            message_key,
            csv,
        } => {
            let (mk, report) = commands::audit(&key, bits, message_key)?;
            if csv {
                print!("{}", report.to_csv());
            } else {
                println!("message key {:08x}", mk.0);
                print!("{report}");
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pals: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
