use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use weiltorus::chern::{
    eta_class, eta_expected, eta_identity_check, point_ideal_class, resolution_contradiction,
    whitney_inverse, ChernTotal, Verdict,
};
use weiltorus::deform::{cup_omega_rank, joint_kernel, support_checks};
use weiltorus::exterior::{Covector, Subset};
use weiltorus::hodge::{hodge_class_space_with, KahlerCandidate, SolveMode, SolverOptions};
use weiltorus::scalars::rational;
use weiltorus::torus::{CmAction, WeilTorusModel};
use weiltorus::weil::{verify_weil_hodge, weil_classes};
use weiltorus::{Assignment, Scalar};
use weiltorus_cli::example::{gen_example, ExampleMode};
use weiltorus_cli::instance::{Instance, Model};
use weiltorus_cli::pipeline::{multivector_json, run_verify, Options, DEFAULT_SPECIALIZATIONS};

#[derive(Parser)]
#[command(
    name = "weiltorus",
    version,
    about = "Exact checks on Weil-type complex 4-tori"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Solver {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Point budget for specialized kernels.
    #[arg(long, default_value_t = DEFAULT_SPECIALIZATIONS)]
    specializations: usize,
    /// Solve symbolically instead of at sampled points.
    #[arg(long, conflicts_with = "sampled")]
    symbolic: bool,
    /// Evaluate at sampled points and certify (the default).
    #[arg(long)]
    sampled: bool,
}

impl Solver {
    fn mode(&self) -> SolveMode {
        if self.symbolic {
            SolveMode::Symbolic
        } else {
            SolveMode::Certify
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline and emit a certificate.
    Verify {
        #[arg(long)]
        instance: String,
        #[arg(long)]
        out: Option<String>,
        #[command(flatten)]
        solver: Solver,
        /// Record per-step milliseconds (not reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write an example instance: the generic chart, or a sampled point of it.
    GenExample {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<String>,
        #[arg(long, conflicts_with = "sampled")]
        symbolic: bool,
        #[arg(long)]
        sampled: bool,
    },
    /// Rational Hodge classes of degree 2p.
    Hdg {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        p: u8,
        #[arg(long)]
        instance: String,
        #[command(flatten)]
        solver: Solver,
    },
    /// Weil classes of the standard action, or of an instance.
    Weil {
        #[arg(long)]
        instance: Option<String>,
    },
    /// First-order deformation checks.
    Deform {
        #[arg(long)]
        instance: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Chern-class identities and the free-resolution argument.
    ChernDemo,
}

fn read_model(path: &str) -> Result<Model> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(Instance::parse(&text)?.model()?)
}

fn write_or_print(out: Option<&str>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {path}")),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn hdg<S: Scalar>(model: &WeilTorusModel<S>, p: usize, solver: &Solver) -> Result<bool> {
    let opts = SolverOptions {
        seed: solver.seed,
        max_points: solver.specializations,
        mode: solver.mode(),
    };
    let space = hodge_class_space_with(model, p, &opts)?;
    println!("rank Hdg^{} = {}", 2 * p, space.rank);
    println!("provenance: {:?}", space.provenance);
    for b in &space.basis {
        println!("{}", serde_json::to_string(&multivector_json(b))?);
    }
    Ok(space.provenance.is_certified())
}

fn deform<S: Scalar>(model: &WeilTorusModel<S>, seed: u64) -> Result<bool> {
    let k = joint_kernel(model)?;
    println!(
        "joint kernel: {} rows, rank {}, dim {}",
        k.rows,
        k.rank,
        k.dim()
    );
    let mut ok = k.dim() == 0;
    for c in support_checks() {
        println!(
            "{:<32} {}",
            c.statement,
            if c.holds { "holds" } else { "FAILS" }
        );
        ok &= c.holds;
    }
    let omega = KahlerCandidate::<S>::standard();
    let variables = model.domain().variable_count();
    let point = weiltorus::hodge::sample_point(
        &mut <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed),
        variables,
    );
    match cup_omega_rank(model, &omega, &point) {
        Ok(r) => {
            println!(
                "cup with omega_0 on H^2(O): rank {r} at {}",
                format_point(&point)
            );
            ok &= r == 6;
        }
        Err(e) => {
            println!("cup with omega_0: {e}");
            ok = false;
        }
    }
    Ok(ok)
}

fn format_point(p: &Assignment) -> String {
    let coords: Vec<String> = p.0.iter().map(|x| x.to_string()).collect();
    format!("({})", coords.join(", "))
}

fn chern_demo() -> bool {
    println!("eta class: {}", eta_class());
    println!("expected:  {}", eta_expected());
    let eta = eta_identity_check();
    println!("identity:  {eta}");
    let a = [[0, 1], [2, 3], [4, 5], [6, 7]]
        .iter()
        .fold(Covector::zero(2), |acc, ix| {
            acc.add(&Covector::basis(Subset::from_indices(ix)))
        });
    let inverse = whitney_inverse(&ChernTotal::new(&[a]).expect("degree 2")).expect("unit");
    println!(
        "(1 + a)^-1 for a = e12 + e34 + e56 + e78: top term {}",
        serde_json::to_string(&multivector_json(&inverse.c(4).0)).expect("strings")
    );
    let c_iz = point_ideal_class(&rational(1, 1));
    let verdict = resolution_contradiction(&c_iz, &vec![ChernTotal::one(); 5]);
    println!("point ideal with a trivial resolution: {verdict:?}");
    eta && verdict == Verdict::Contradiction
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify {
            instance,
            out,
            solver,
            timings,
        } => {
            let opts = Options {
                seed: solver.seed,
                specializations: solver.specializations,
                mode: solver.mode(),
                timings,
            };
            let cert = run_verify(&instance, &opts, out.as_deref())?;
            if out.is_none() {
                print!("{}", cert.to_json());
            } else {
                eprintln!("{}", if cert.passed() { "PASS" } else { "FAILED" });
            }
            Ok(cert.passed())
        }
        Command::GenExample {
            seed,
            out,
            symbolic: _,
            sampled,
        } => {
            let mode = if sampled {
                ExampleMode::Rational
            } else {
                ExampleMode::Symbolic
            };
            let instance = gen_example(seed, mode)?;
            write_or_print(out.as_deref(), &instance.to_json())?;
            Ok(true)
        }
        Command::Hdg {
            p,
            instance,
            solver,
        } => match read_model(&instance)? {
            Model::Symbolic(m) => hdg(&m, p as usize, &solver),
            Model::Gaussian(m) => hdg(&m, p as usize, &solver),
        },
        Command::Weil { instance } => {
            let (action, check) = match instance {
                None => (CmAction::standard(), None),
                Some(path) => match read_model(&path)? {
                    Model::Symbolic(m) => (
                        m.action().clone(),
                        Some(verify_weil_hodge(&m, &weil_classes(m.action())?)?),
                    ),
                    Model::Gaussian(m) => (
                        m.action().clone(),
                        Some(verify_weil_hodge(&m, &weil_classes(m.action())?)?),
                    ),
                },
            };
            let w = weil_classes(&action)?;
            println!("dim = {}", w.dim());
            for g in &w.generators {
                println!("{}", serde_json::to_string(&multivector_json(g))?);
            }
            if let Some(h) = check {
                println!("of type (2,2): {h}");
            }
            Ok(w.dim() == 2 && check != Some(false))
        }
        Command::Deform { instance, seed } => match read_model(&instance)? {
            Model::Symbolic(m) => deform(&m, seed),
            Model::Gaussian(m) => deform(&m, seed),
        },
        Command::ChernDemo => Ok(chern_demo()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
