//! The verification pipeline and its certificate.

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use sha2::{Digest, Sha256};
use weiltorus::chern::{
    eta_identity_check, point_ideal_class, resolution_contradiction, ChernTotal, Verdict,
};
use weiltorus::deform::{cup_omega_rank, joint_kernel, support_checks};
use weiltorus::exterior::{Matrix, Multivector};
use weiltorus::hodge::{
    hodge_class_space_with, is_positive, sample_point, HodgeClassSpace, KahlerCandidate,
    Provenance, SolveMode, SolverOptions,
};
use weiltorus::scalars::{rational, ScalarDomain};
use weiltorus::torus::WeilTorusModel;
use weiltorus::weil::{
    verify_perpendicular_symbolic, verify_weil_hodge, weil_classes, WeilClassSpace,
};
use weiltorus::{Assignment, BigRational, RatFunc, Scalar};

use crate::instance::{Instance, InstanceError, Model};

pub const TOOL_VERSION: &str = concat!("weiltorus ", env!("CARGO_PKG_VERSION"));

/// Hypotheses the certificate relies on without checking them.
pub const ASSUMED: [&str; 4] = [
    "simplicity of X — analytic, out of scope",
    "Hodge-loci theory: a zero joint kernel implies NS(X) = 0 and rank Hdg^4 = 2 for general X (cited, not derived)",
    "existence of Hermite-Einstein metrics on stable reflexive sheaves (Bando-Siu): analytic, out of scope",
    "vanishing in the limit of the curvature-form integrals against forms on X: analytic, out of scope",
];

/// Point budget for the upper-bound kernels.
pub const DEFAULT_SPECIALIZATIONS: usize = 8;

/// Tries for a positivity point before giving up.
const POSITIVITY_TRIES: usize = 64;

/// Multiple of the point class in the free-resolution demo. Any nonzero
/// value gives the same verdict.
const POINT_MULTIPLE: i64 = 1;

/// Length of the trivial resolution in the demo.
const RESOLUTION_LENGTH: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Options {
    pub seed: u64,
    pub specializations: usize,
    pub mode: SolveMode,
    pub timings: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            seed: 1,
            specializations: DEFAULT_SPECIALIZATIONS,
            mode: SolveMode::Certify,
            timings: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAILED")]
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Checks {
    pub model_valid: bool,
    pub weil_dim: Option<usize>,
    pub weil_in_h22: bool,
    pub ns_rank: Option<usize>,
    pub hdg4_rank: Option<usize>,
    pub hdg4_equals_weil: bool,
    pub perp_symbolic: bool,
    pub joint_kernel_dim: Option<usize>,
    pub support_statements: bool,
    pub cup_omega_rank: Option<usize>,
    pub eta_identity: bool,
    pub free_resolution_obstructed: bool,
    pub positivity_point: Vec<String>,
    pub positivity_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SpaceEvidence {
    pub provenance: String,
    pub points: Vec<Vec<String>>,
    pub basis: Vec<BTreeMap<String, String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct Evidence {
    pub validation: BTreeMap<String, bool>,
    pub adapted_determinant: Option<String>,
    pub weil_generators: Vec<BTreeMap<String, String>>,
    pub ns: SpaceEvidence,
    pub hdg4: SpaceEvidence,
    pub weil_in_hdg4: bool,
    pub hdg4_in_weil: bool,
    pub support: BTreeMap<String, bool>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub instance_hash: String,
    pub tool_version: String,
    pub seed: u64,
    pub status: Status,
    pub failed: Vec<String>,
    pub checks: Checks,
    pub evidence: Evidence,
    pub assumed: Vec<String>,
    /// Milliseconds per step; only with `Options::timings`, since it breaks
    /// byte-for-byte reproducibility.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u128>>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub fn instance_hash(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Sparse text form `{"e1256": "3/2", ...}` with 1-based lattice indices.
pub fn multivector_json(x: &Multivector<BigRational>) -> BTreeMap<String, String> {
    x.terms()
        .map(|(s, c)| {
            let name: String = s.indices().map(|i| char::from(b'1' + i as u8)).collect();
            (
                format!("e{name}"),
                weiltorus::scalars::rational_to_string(c),
            )
        })
        .collect()
}

fn point_json(p: &Assignment) -> Vec<String> {
    p.0.iter().map(|x| x.to_string()).collect()
}

fn provenance_name(p: &Provenance) -> &'static str {
    match p {
        Provenance::Exact => "exact",
        Provenance::Symbolic => "symbolic",
        Provenance::Certified { .. } => "certified",
        Provenance::Specialized { .. } => "specialized-upper-bound",
    }
}

fn space_evidence(space: &HodgeClassSpace) -> SpaceEvidence {
    SpaceEvidence {
        provenance: provenance_name(&space.provenance).to_string(),
        points: space.provenance.points().iter().map(point_json).collect(),
        basis: space.basis.iter().map(multivector_json).collect(),
    }
}

struct Clock {
    enabled: bool,
    laps: BTreeMap<String, u128>,
}

impl Clock {
    fn time<T>(&mut self, name: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        if self.enabled {
            self.laps
                .insert(name.to_string(), start.elapsed().as_millis());
        }
        out
    }
}

/// Whether the Hdg⁴ space and the Weil span contain each other.
fn mutual_containment(space: &HodgeClassSpace, weil: &WeilClassSpace) -> (bool, bool) {
    let weil_in = weil.generators.iter().all(|g| space.contains(g));
    let mut rows: Vec<Vec<BigRational>> = weil.generators.iter().map(|g| g.to_dense()).collect();
    rows.extend(space.basis.iter().map(|b| b.to_dense()));
    let hdg_in = Matrix::from_rows(rows).rank() == weil.dim();
    (weil_in, hdg_in)
}

/// The model over `ℚ(i)(t)`, so that symbolic Kähler variables can be
/// appended.
fn to_function_field<S: Scalar>(model: &WeilTorusModel<S>) -> WeilTorusModel<RatFunc> {
    let lift = |b: &[Vec<S>; 2]| [0, 1].map(|k| b[k].iter().map(|x| x.to_func()).collect());
    let domain = ScalarDomain::FunctionField {
        variables: model.domain().variables().to_vec(),
    };
    WeilTorusModel::new(
        model.action().clone(),
        domain,
        lift(model.wi()),
        lift(model.wmi()),
    )
}

/// First sampled point where the chart is defined and `ω₀` is positive.
pub fn positivity_point<S: Scalar>(
    model: &WeilTorusModel<S>,
    omega: &KahlerCandidate<S>,
    seed: u64,
) -> Option<Assignment> {
    let variables = model.domain().variable_count();
    let tries = if variables == 0 { 1 } else { POSITIVITY_TRIES };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(1);
    (0..tries)
        .map(|_| sample_point(&mut rng, variables))
        .find(|p| is_positive(model, omega, p).unwrap_or(false))
}

fn chern_checks(checks: &mut Checks) {
    checks.eta_identity = eta_identity_check();
    let c_iz = point_ideal_class(&rational(POINT_MULTIPLE, 1));
    let resolution = vec![ChernTotal::one(); RESOLUTION_LENGTH];
    checks.free_resolution_obstructed =
        resolution_contradiction(&c_iz, &resolution) == Verdict::Contradiction;
}

fn run_model<S: Scalar>(
    model: &WeilTorusModel<S>,
    opts: &Options,
    clock: &mut Clock,
) -> (Checks, Evidence) {
    let mut checks = Checks::default();
    let mut ev = Evidence::default();
    let report = clock.time("validate_model", || model.validate());
    ev.validation = report
        .checks
        .iter()
        .map(|c| (c.name.to_string(), c.passed))
        .collect();
    ev.adapted_determinant = report.determinant.clone();
    checks.model_valid = report.passed();
    clock.time("eta_identity_check", || chern_checks(&mut checks));
    if !checks.model_valid {
        return (checks, ev);
    }

    let weil = match clock.time("weil_classes", || weil_classes(model.action())) {
        Ok(w) => w,
        Err(e) => {
            ev.errors.push(format!("weil_classes: {e}"));
            return (checks, ev);
        }
    };
    checks.weil_dim = Some(weil.dim());
    ev.weil_generators = weil.generators.iter().map(multivector_json).collect();
    match clock.time("verify_weil_hodge", || verify_weil_hodge(model, &weil)) {
        Ok(b) => checks.weil_in_h22 = b,
        Err(e) => ev.errors.push(format!("verify_weil_hodge: {e}")),
    }

    let solver = SolverOptions {
        seed: opts.seed,
        max_points: opts.specializations,
        mode: opts.mode,
    };
    match clock.time("hodge_class_space_p1", || {
        hodge_class_space_with(model, 1, &solver)
    }) {
        Ok(ns) => {
            checks.ns_rank = Some(ns.rank);
            ev.ns = space_evidence(&ns);
        }
        Err(e) => ev.errors.push(format!("hodge_class_space(1): {e}")),
    }
    match clock.time("hodge_class_space_p2", || {
        hodge_class_space_with(model, 2, &solver)
    }) {
        Ok(hdg) => {
            checks.hdg4_rank = Some(hdg.rank);
            ev.hdg4 = space_evidence(&hdg);
            let (a, b) = mutual_containment(&hdg, &weil);
            ev.weil_in_hdg4 = a;
            ev.hdg4_in_weil = b;
            checks.hdg4_equals_weil = checks.weil_in_h22 && hdg.rank == weil.dim() && a && b;
        }
        Err(e) => ev.errors.push(format!("hodge_class_space(2): {e}")),
    }

    let lifted = to_function_field(model);
    match clock.time("verify_perpendicular_symbolic", || {
        verify_perpendicular_symbolic(&lifted, &weil)
    }) {
        Ok(b) => checks.perp_symbolic = b,
        Err(e) => ev.errors.push(format!("verify_perpendicular: {e}")),
    }

    match clock.time("joint_kernel", || joint_kernel(model)) {
        Ok(k) => checks.joint_kernel_dim = Some(k.dim()),
        Err(e) => ev.errors.push(format!("joint_kernel: {e}")),
    }
    let support = support_checks();
    checks.support_statements = support.iter().all(|c| c.holds);
    ev.support = support
        .into_iter()
        .map(|c| (c.statement.to_string(), c.holds))
        .collect();

    let omega = KahlerCandidate::<S>::standard();
    match clock.time("positivity", || positivity_point(model, &omega, opts.seed)) {
        Some(point) => {
            checks.positivity_ok = true;
            checks.positivity_point = point_json(&point);
            match clock.time("cup_omega_rank", || cup_omega_rank(model, &omega, &point)) {
                Ok(r) => checks.cup_omega_rank = Some(r),
                Err(e) => ev.errors.push(format!("cup_omega_rank: {e}")),
            }
        }
        None => ev
            .errors
            .push("no positivity point for the standard candidate".to_string()),
    }
    (checks, ev)
}

/// Names of the checks that do not meet the theorem's hypotheses.
pub fn failed_checks(c: &Checks) -> Vec<String> {
    let mut failed = Vec::new();
    let mut need = |ok: bool, name: &str| {
        if !ok {
            failed.push(name.to_string());
        }
    };
    need(c.model_valid, "model_valid");
    need(c.weil_dim == Some(2), "weil_dim");
    need(c.weil_in_h22, "weil_in_h22");
    need(c.ns_rank == Some(0), "ns_rank");
    need(
        c.hdg4_rank.is_some() && c.hdg4_rank == c.weil_dim,
        "hdg4_rank",
    );
    need(c.hdg4_equals_weil, "hdg4_equals_weil");
    need(c.perp_symbolic, "perp_symbolic");
    need(c.joint_kernel_dim == Some(0), "joint_kernel_dim");
    need(c.support_statements, "support_statements");
    need(c.cup_omega_rank == Some(6), "cup_omega_rank");
    need(c.eta_identity, "eta_identity");
    need(c.free_resolution_obstructed, "free_resolution_obstructed");
    need(c.positivity_ok, "positivity_ok");
    failed
}

/// Runs every check on the instance text. Parse errors are returned;
/// validation failures are recorded in the certificate.
pub fn verify_bytes(bytes: &[u8], opts: &Options) -> Result<Certificate, InstanceError> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| InstanceError::Shape(format!("instance is not UTF-8: {e}")))?;
    let instance = Instance::parse(text)?;
    let mut clock = Clock {
        enabled: opts.timings,
        laps: BTreeMap::new(),
    };
    let (checks, evidence) = match instance.model()? {
        Model::Symbolic(m) => run_model(&m, opts, &mut clock),
        Model::Gaussian(m) => run_model(&m, opts, &mut clock),
    };
    let failed = failed_checks(&checks);
    Ok(Certificate {
        instance_hash: instance_hash(bytes),
        tool_version: TOOL_VERSION.to_string(),
        seed: opts.seed,
        status: if failed.is_empty() {
            Status::Pass
        } else {
            Status::Failed
        },
        failed,
        checks,
        evidence,
        assumed: ASSUMED.iter().map(|s| s.to_string()).collect(),
        timings: opts.timings.then_some(clock.laps),
    })
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

/// Reads the instance, runs the pipeline and writes the certificate to
/// `out` if given.
pub fn run_verify(
    instance_path: &str,
    opts: &Options,
    out: Option<&str>,
) -> Result<Certificate, VerifyError> {
    let bytes = std::fs::read(instance_path).map_err(|source| VerifyError::Io {
        path: instance_path.to_string(),
        source,
    })?;
    let cert = verify_bytes(&bytes, opts)?;
    if let Some(out) = out {
        std::fs::write(out, cert.to_json()).map_err(|source| VerifyError::Io {
            path: out.to_string(),
            source,
        })?;
    }
    Ok(cert)
}
