use clap::{Args, Parser, Subcommand};

use hhlab::report::{
    build_params, cmd_center, cmd_cup, cmd_dual_print, cmd_hh_dims, cmd_koszul_check,
    cmd_resolution_check, Format, Report,
};

#[derive(Parser)]
#[command(name = "hhlab", about = "Exact invariants of quiver algebra families")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Family name: lambda_q, gamma_q, lambda_mn, gamma_mn
    #[arg(long)]
    family: String,
    /// Cycle length (the second torus index)
    #[arg(long)]
    m: usize,
    /// First torus index (torus families only)
    #[arg(long)]
    n: Option<usize>,
    /// Field: Q, F<p>, C<d>, or Q(t)
    #[arg(long)]
    field: String,
    /// Comma-separated parameters, or `generic`, or `ones`
    #[arg(long)]
    q: String,
    /// Cohomological degree bound
    #[arg(long, default_value_t = 8)]
    max_degree: usize,
    /// Length / homological degree bound
    #[arg(long, default_value_t = 6)]
    max_length: usize,
    /// Output format: table or machine
    #[arg(long, default_value = "table")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Certify the family and its dual by overlap completion
    KoszulCheck(Common),
    /// Print the quadratic dual relations and verify the involution
    DualPrint(Common),
    /// Cohomology dimension table with closed-form cross-check
    HhDims(Common),
    /// Cup products of the degree-one classes
    Cup(Common),
    /// Graded center of the dual, matched against the predicted model
    Center(Common),
    /// Resolution oracles: d^2, span, recursion, minimality, exactness
    ResolutionCheck(Common),
}

fn run(common: &Common, f: impl FnOnce(&hhlab::families::FamilyParams) -> Result<Report, hhlab::Error>) -> i32 {
    let format = match Format::parse(&common.format) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let fp = match build_params(&common.family, common.m, common.n, &common.field, &common.q) {
        Ok(fp) => fp,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    match f(&fp) {
        Ok(report) => {
            print!("{}", report.render(format));
            if report.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::KoszulCheck(c) => run(c, cmd_koszul_check),
        Command::DualPrint(c) => run(c, cmd_dual_print),
        Command::HhDims(c) => run(c, |fp| cmd_hh_dims(fp, c.max_degree)),
        Command::Cup(c) => run(c, cmd_cup),
        Command::Center(c) => run(c, |fp| cmd_center(fp, c.max_length)),
        Command::ResolutionCheck(c) => run(c, |fp| cmd_resolution_check(fp, c.max_length)),
    };
    std::process::exit(code);
}
