//! Command-line driver: single-ion runs, table sweeps, solver dumps,
//! and constants reports.
//!
//! Exit codes: 0 success, 1 usage error, 2 invalid input, 3 numerical
//! failure. Errors are emitted as JSON on stderr.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hcipnc_core::constants::{default_constants, ConstantsSet};
use hcipnc_core::dirac::{
    default_grid, solve_bound_state_on_grid, RadialPotential, SolverParams,
};
use hcipnc_core::electroweak::weak_charge_report;
use hcipnc_core::isotopes::BENCHMARK_ISOTOPES;
use hcipnc_core::nuclear::{parse_isotope_csv, NuclearModel};
use hcipnc_core::numerics::make_grid;
use hcipnc_core::pnc::{
    compute_pnc_with_corrections, compute_table, full_csv, table1_csv, table2_csv, PncError,
    PncSettings,
};
use hcipnc_core::uehling::{uehling_table_for, UehlingSource};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hcipnc",
    about = "Parity-nonconserving 2s-2p1/2 matrix elements for hydrogenlike ions \
             with the Uehling vacuum-polarization correction",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceArg {
    /// Point-charge Z/r source for the vacuum-polarization integral.
    Point,
    /// Source folded with the uniform nuclear charge density.
    Folded,
}

impl From<SourceArg> for UehlingSource {
    fn from(s: SourceArg) -> Self {
        match s {
            SourceArg::Point => UehlingSource::PointCharge,
            SourceArg::Folded => UehlingSource::FoldedUniform,
        }
    }
}

#[derive(Args)]
struct CommonOpts {
    /// Path to a key = value constants override file (also via the
    /// HCIPNC_CONSTANTS environment variable)
    #[arg(long = "constants-file", global = true)]
    constants_file: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: OutputFormat,
    /// Output path (stdout when omitted)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GridOpts {
    /// Number of radial grid points
    #[arg(long = "grid-points", default_value_t = 6001)]
    grid_points: usize,
    /// Outer grid radius in fm (chosen automatically when omitted)
    #[arg(long = "rmax")]
    r_max_fm: Option<f64>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one bound state and dump (r_fm, g, f) as CSV
    Solve {
        /// Proton number
        #[arg(long = "Z")]
        z: u32,
        /// Atomic weight (amu)
        #[arg(long = "A")]
        a: f64,
        /// Principal quantum number
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Relativistic angular quantum number (-1 = s_1/2, +1 = p_1/2)
        #[arg(long, default_value_t = -1, allow_hyphen_values = true)]
        kappa: i32,
        /// Use a point nucleus instead of the uniform sphere
        #[arg(long = "point-nucleus")]
        point_nucleus: bool,
        /// Include the Uehling potential in the Dirac equation
        #[arg(long = "with-uehling")]
        with_uehling: bool,
        /// Charge distribution sourcing the Uehling potential
        #[arg(long = "uehling-source", value_enum, default_value = "folded")]
        uehling_source: SourceArg,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Emit the Uehling potential on a radial grid as (r_fm, V_ev) CSV
    Uehling {
        /// Proton number
        #[arg(long = "Z")]
        z: u32,
        /// Atomic weight (amu); sets the grid scale and the folding radius
        #[arg(long = "A")]
        a: f64,
        /// Charge distribution sourcing the potential (point reproduces the
        /// bare vacuum-polarization integral)
        #[arg(long = "uehling-source", value_enum, default_value = "point")]
        uehling_source: SourceArg,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Matrix elements and loop correction for one ion
    Pnc {
        /// Proton number
        #[arg(long = "Z")]
        z: u32,
        /// Atomic weight (amu)
        #[arg(long = "A")]
        a: f64,
        /// Principal quantum number of the s_1/2 state
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Principal quantum number of the p_1/2 state
        #[arg(long = "nprime", default_value_t = 2)]
        n_prime: u32,
        /// Charge distribution sourcing the Uehling potential
        #[arg(long = "uehling-source", value_enum, default_value = "folded")]
        uehling_source: SourceArg,
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Matrix-element sweep (columns Z,A,R_fm,PNC_eV,PNC_Uehling_eV)
    Table1 {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Loop-correction sweep (columns Z,A,R_fm,delta_loop_wf)
    Table2 {
        #[command(flatten)]
        sweep: SweepOpts,
        #[command(flatten)]
        common: CommonOpts,
    },
    /// Print the constants set, plus the weak-charge report for (Z, A)
    Constants {
        /// Proton number (optional; constants-only listing without it)
        #[arg(long = "Z")]
        z: Option<u32>,
        /// Atomic weight (amu); required with --Z
        #[arg(long = "A")]
        a: Option<f64>,
        #[command(flatten)]
        common: CommonOpts,
    },
}

#[derive(Args)]
struct SweepOpts {
    /// Isotope list CSV (Z,A per line); built-in 21-isotope benchmark list
    /// when omitted
    #[arg(long)]
    isotopes: Option<PathBuf>,
    /// Charge distribution sourcing the Uehling potential
    #[arg(long = "uehling-source", value_enum, default_value = "folded")]
    uehling_source: SourceArg,
    #[command(flatten)]
    grid: GridOpts,
}

enum CliError {
    Input(String),
    Numeric(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 3,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "input",
            CliError::Numeric(_) => "numeric",
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Numeric(m) => m,
        }
    }
}

impl From<PncError> for CliError {
    fn from(e: PncError) -> Self {
        match e {
            PncError::Nuclear(_) => CliError::Input(e.to_string()),
            other => CliError::Numeric(other.to_string()),
        }
    }
}

fn load_constants(path: Option<&PathBuf>) -> Result<ConstantsSet, CliError> {
    let base = default_constants();
    let chosen = path
        .cloned()
        .or_else(|| std::env::var_os("HCIPNC_CONSTANTS").map(PathBuf::from));
    match chosen {
        Some(p) => base
            .with_overrides_from_file(&p)
            .map_err(|e| CliError::Input(e.to_string())),
        None => Ok(base),
    }
}

fn emit(common: &CommonOpts, text: &str) -> Result<(), CliError> {
    match &common.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn settings_for(grid: &GridOpts, source: SourceArg) -> PncSettings {
    PncSettings {
        uehling_source: source.into(),
        grid_points: grid.grid_points,
        r_max_fm: grid.r_max_fm,
        ..Default::default()
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            z,
            a,
            n,
            kappa,
            point_nucleus,
            with_uehling,
            uehling_source,
            grid,
            common,
        } => {
            let consts = load_constants(common.constants_file.as_ref())?;
            let model = if point_nucleus {
                NuclearModel::point(z, a)
            } else {
                NuclearModel::uniform_sphere(z, a)
            }
            .map_err(|e| CliError::Input(e.to_string()))?;
            let mut mesh = default_grid(&model, n.max(1), &consts, grid.grid_points)
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            if let Some(r_max) = grid.r_max_fm {
                mesh = make_grid(mesh.r_min(), r_max, grid.grid_points)
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            let table;
            let extra: Option<&dyn RadialPotential> = if with_uehling {
                table = uehling_table_for(&model, &mesh, &consts, uehling_source.into())
                    .map_err(|e| CliError::Numeric(e.to_string()))?;
                Some(&table)
            } else {
                None
            };
            let state = solve_bound_state_on_grid(
                &model,
                extra,
                n,
                kappa,
                &consts,
                &mesh,
                &SolverParams::default(),
            )
            .map_err(|e| CliError::Numeric(e.to_string()))?;
            let mut text = format!(
                "# Z={z} A={a} n={n} kappa={kappa} energy_ev={:.12e} binding_ev={:.12e}\n\
                 r_fm,g,f\n",
                state.energy_ev(),
                state.binding_energy_ev(&consts)
            );
            for (i, &r) in state.grid().points().iter().enumerate() {
                text.push_str(&format!(
                    "{r:.8e},{:.10e},{:.10e}\n",
                    state.g()[i],
                    state.f()[i]
                ));
            }
            emit(&common, &text)
        }
        Command::Uehling {
            z,
            a,
            uehling_source,
            grid,
            common,
        } => {
            let consts = load_constants(common.constants_file.as_ref())?;
            let model =
                NuclearModel::uniform_sphere(z, a).map_err(|e| CliError::Input(e.to_string()))?;
            let mut mesh = default_grid(&model, 2, &consts, grid.grid_points)
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            if let Some(r_max) = grid.r_max_fm {
                mesh = make_grid(mesh.r_min(), r_max, grid.grid_points)
                    .map_err(|e| CliError::Input(e.to_string()))?;
            }
            let table = uehling_table_for(&model, &mesh, &consts, uehling_source.into())
                .map_err(|e| CliError::Numeric(e.to_string()))?;
            let mut text = String::from("r_fm,V_uehling_ev\n");
            for (&r, &v) in mesh.points().iter().zip(table.values_ev()) {
                text.push_str(&format!("{r:.8e},{v:.10e}\n"));
            }
            emit(&common, &text)
        }
        Command::Pnc {
            z,
            a,
            n,
            n_prime,
            uehling_source,
            grid,
            common,
        } => {
            let consts = load_constants(common.constants_file.as_ref())?;
            let settings = settings_for(&grid, uehling_source);
            let result = compute_pnc_with_corrections(z, a, n, n_prime, &consts, &settings)?;
            let text = match common.format {
                OutputFormat::Csv => full_csv(std::slice::from_ref(&result)),
                OutputFormat::Json => serde_json::to_string_pretty(&result).unwrap() + "\n",
            };
            emit(&common, &text)
        }
        Command::Table1 { sweep, common } => sweep_command(sweep, common, table1_csv),
        Command::Table2 { sweep, common } => sweep_command(sweep, common, table2_csv),
        Command::Constants { z, a, common } => {
            let consts = load_constants(common.constants_file.as_ref())?;
            let text = match z {
                None => serde_json::to_string_pretty(&serde_json::json!({
                    "constants": consts,
                    "delta_p_m": consts.delta_p_m(),
                }))
                .unwrap(),
                Some(z) => {
                    let a = a.ok_or_else(|| {
                        CliError::Input("--A is required together with --Z".into())
                    })?;
                    let model = NuclearModel::uniform_sphere(z, a)
                        .map_err(|e| CliError::Input(e.to_string()))?;
                    let report = weak_charge_report(z, model.neutrons(), &consts);
                    serde_json::to_string_pretty(&serde_json::json!({
                        "constants": consts,
                        "nucleus": model,
                        "weak_charge": report,
                    }))
                    .unwrap()
                }
            };
            emit(&common, &(text + "\n"))
        }
    }
}

fn sweep_command(
    sweep: SweepOpts,
    common: CommonOpts,
    to_csv: fn(&hcipnc_core::pnc::PncTable) -> String,
) -> Result<(), CliError> {
    let consts = load_constants(common.constants_file.as_ref())?;
    let isotopes: Vec<(u32, f64)> = match &sweep.isotopes {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
            parse_isotope_csv(&text).map_err(|e| CliError::Input(e.to_string()))?
        }
        None => BENCHMARK_ISOTOPES.to_vec(),
    };
    let settings = settings_for(&sweep.grid, sweep.uehling_source);
    let table = compute_table(&isotopes, &consts, &settings);
    for failure in &table.failures {
        eprintln!(
            "{}",
            serde_json::json!({"kind": "row-failure", "z": failure.z, "a": failure.a,
                               "error": failure.error})
        );
    }
    let text = match common.format {
        OutputFormat::Csv => to_csv(&table),
        OutputFormat::Json => serde_json::to_string_pretty(&table).unwrap() + "\n",
    };
    emit(&common, &text)
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version go to stdout with success
            if e.use_stderr() {
                eprintln!(
                    "{}",
                    serde_json::json!({"kind": "usage", "error": e.to_string()})
                );
                std::process::exit(1);
            }
            print!("{e}");
            std::process::exit(0);
        }
    };
    if let Err(e) = run(cli) {
        eprintln!(
            "{}",
            serde_json::json!({"kind": e.kind(), "error": e.message()})
        );
        std::process::exit(e.exit_code());
    }
}
