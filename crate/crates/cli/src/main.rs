use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod report;

use report::Status;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "amitsur", version, about = "Amitsur groups and torsor obstructions of finite group actions")]
struct Cli {
    #[arg(long, value_enum, default_value = "text", global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariant factors of H^n(G, M).
    Cohomology {
        /// Builtin group (klein, m16, cyclic:4) or a group file.
        #[arg(long)]
        group: String,
        /// trivialZ, trivial:N, or a module file.
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
        /// `auto` or a resolution file.
        #[arg(long, default_value = "auto")]
        resolution: String,
    },
    /// Amitsur groups: images of H^{n-2}(G, Pic ⊗ X) → H^n(G, k^× ⊗ X).
    Amitsur {
        /// Example name (klein-p1, klein-p1-enlarged, toric-klein, cyclic:m=4,b=2) or a presentation file.
        #[arg(long)]
        presentation: String,
        /// `Gm` or a module file for the cocharacter lattice.
        #[arg(long, default_value = "Gm")]
        torus: String,
        /// `divisible`, `fg:<file>`, or `default` for the presentation's own model.
        #[arg(long, default_value = "default")]
        model: String,
        #[arg(long, default_value = "2..6")]
        degrees: String,
    },
    /// The equivariant universal torsor obstruction.
    Beta {
        #[arg(long)]
        presentation: String,
        #[arg(long, default_value = "default")]
        model: String,
        /// Exit with status 1 unless the verdict matches.
        #[arg(long, value_enum)]
        expect: Option<commands::Expect>,
    },
    /// Checks that a resolution file is an exact complex over Z.
    VerifyResolution {
        /// A resolution file; defaults to the bundled one for M16.
        #[arg(long)]
        file: Option<String>,
    },
    /// Re-verifies the degree-2 del Pezzo cocycle and its restrictions.
    Dp2Verify {
        /// A dataset file; defaults to the bundled one.
        #[arg(long)]
        dataset: Option<String>,
    },
    /// Kernel of restriction to all maximal abelian subgroups.
    BogomolovKernel {
        #[arg(long, default_value = "m16")]
        group: String,
        #[arg(long, value_enum, default_value = "trivial-z")]
        coeff: commands::Coeff,
        #[arg(long, default_value = "2..5")]
        degrees: String,
    },
}

fn run(cli: &Cli) -> amitsur::Result<report::Report> {
    match &cli.command {
        Command::Cohomology { group, module, degree, resolution } => {
            commands::cohomology(group, module, *degree, resolution)
        }
        Command::Amitsur { presentation, torus, model, degrees } => {
            commands::amitsur(presentation, torus, model, degrees)
        }
        Command::Beta { presentation, model, expect } => commands::beta(presentation, model, *expect),
        Command::VerifyResolution { file } => commands::verify_resolution(file.as_deref()),
        Command::Dp2Verify { dataset } => commands::dp2_verify(dataset.as_deref()),
        Command::BogomolovKernel { group, coeff, degrees } => commands::bogomolov(group, *coeff, degrees),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            match cli.format {
                Format::Text => print!("{}", r.render_text()),
                Format::Json => println!("{}", r.render_json()),
            }
            match r.status {
                Status::Pass => ExitCode::SUCCESS,
                Status::Fail => ExitCode::from(1),
                Status::Rejected => ExitCode::from(2),
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {}", e),
                Format::Json => println!("{}", serde_json::json!({ "status": "invalid", "error": e.to_string() })),
            }
            ExitCode::from(2)
        }
    }
}
