use std::path::PathBuf;
use std::process::Command;

use weiltorus_cli::example::{gen_example, ExampleMode};
use weiltorus_cli::instance::{Instance, Model};
use weiltorus_cli::pipeline::{verify_bytes, Options, Status, ASSUMED};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("examples")
        .join(name)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_weiltorus"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("weiltorus-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn shipped_generic_instance_is_the_canonical_chart() {
    let shipped = std::fs::read_to_string(example("generic8.json")).unwrap();
    assert_eq!(
        gen_example(1, ExampleMode::Symbolic).unwrap().to_json(),
        shipped
    );
    assert_eq!(
        gen_example(7, ExampleMode::Symbolic).unwrap().to_json(),
        shipped
    );
    assert!(matches!(
        Instance::parse(&shipped).unwrap().model().unwrap(),
        Model::Symbolic(_)
    ));
}

#[test]
fn rational_examples_are_deterministic_and_valid() {
    let a = gen_example(1, ExampleMode::Rational).unwrap().to_json();
    let b = gen_example(1, ExampleMode::Rational).unwrap().to_json();
    assert_eq!(a, b);
    assert_eq!(
        a,
        std::fs::read_to_string(example("rational-1.json")).unwrap()
    );
    for seed in [2, 3, 11] {
        let inst = gen_example(seed, ExampleMode::Rational).unwrap();
        let Model::Gaussian(m) = inst.model().unwrap() else {
            panic!("rational example is over Q(i)")
        };
        assert!(m.validate().passed());
    }
    assert_ne!(gen_example(2, ExampleMode::Rational).unwrap().to_json(), a);
}

#[test]
fn instance_round_trip() {
    let text = std::fs::read_to_string(example("rational-1.json")).unwrap();
    let inst = Instance::parse(&text).unwrap();
    let Model::Gaussian(m) = inst.model().unwrap() else {
        panic!()
    };
    assert_eq!(Instance::from_model(&m, &inst.description).to_json(), text);
}

#[test]
fn rational_instance_fails_only_on_the_generic_ranks() {
    // Periods in Q(i) make the torus special: its NS and Hdg⁴ are large.
    let bytes = std::fs::read(example("rational-1.json")).unwrap();
    let cert = verify_bytes(&bytes, &Options::default()).unwrap();
    assert_eq!(cert.status, Status::Failed);
    assert_eq!(
        cert.failed,
        vec!["ns_rank", "hdg4_rank", "hdg4_equals_weil"]
    );
    assert_eq!(
        (cert.checks.ns_rank, cert.checks.hdg4_rank),
        (Some(16), Some(36))
    );
    assert!(cert.checks.weil_in_h22 && cert.checks.perp_symbolic);
    assert_eq!(cert.checks.joint_kernel_dim, Some(0));
    assert_eq!(cert.checks.cup_omega_rank, Some(6));
    assert!(cert.evidence.weil_in_hdg4 && !cert.evidence.hdg4_in_weil);
}

#[test]
fn corrupted_instance_fails_validation() {
    let mut inst = gen_example(1, ExampleMode::Rational).unwrap();
    inst.wi[1] = inst.wi[0].clone();
    let path = tmp("dependent.json");
    std::fs::write(&path, inst.to_json()).unwrap();
    let out = tmp("dependent.cert.json");
    let status = bin()
        .args([
            "verify",
            "--instance",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap()
        .status;
    assert_eq!(status.code(), Some(1));
    let cert: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(cert["status"], "FAILED");
    assert_eq!(cert["checks"]["model_valid"], false);
    assert_eq!(
        cert["evidence"]["validation"]["W_i basis independent"],
        false
    );
    assert!(cert["checks"]["ns_rank"].is_null());
}

#[test]
fn bad_action_is_a_validation_failure() {
    let mut inst = gen_example(1, ExampleMode::Rational).unwrap();
    inst.j[0][1] = 1;
    let cert = verify_bytes(inst.to_json().as_bytes(), &Options::default()).unwrap();
    assert_eq!(cert.status, Status::Failed);
    assert_eq!(cert.evidence.validation["J^2 = -1"], false);
}

#[test]
fn parse_errors_exit_without_certificate() {
    let path = tmp("broken.json");
    std::fs::write(&path, "{\"J\": [[0]]").unwrap();
    let out = tmp("broken.cert.json");
    let run = bin()
        .args([
            "verify",
            "--instance",
            path.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(run.status.code(), Some(2));
    assert!(!out.exists());
    assert!(verify_bytes(
        b"{\"J\": [[0]], \"domain\": \"Qi\", \"Wi\": [], \"Wmi\": []}",
        &Options::default()
    )
    .is_err());
    let mut inst = gen_example(1, ExampleMode::Rational).unwrap();
    inst.wmi[0][2] = "1/0".into();
    assert!(verify_bytes(inst.to_json().as_bytes(), &Options::default()).is_err());
    inst.domain = "Q".into();
    assert!(verify_bytes(inst.to_json().as_bytes(), &Options::default()).is_err());
}

#[test]
fn certificate_shape() {
    let bytes = std::fs::read(example("generic8.json")).unwrap();
    let cert = verify_bytes(&bytes, &Options::default()).unwrap();
    assert!(cert.passed(), "{:?}", cert.failed);
    let c = &cert.checks;
    assert_eq!(
        (c.ns_rank, c.hdg4_rank, c.weil_dim, c.joint_kernel_dim),
        (Some(0), Some(2), Some(2), Some(0))
    );
    // hdg4_equals_weil is the conjunction of its parts.
    let e = &cert.evidence;
    assert_eq!(
        c.hdg4_equals_weil,
        c.weil_in_h22 && c.hdg4_rank == c.weil_dim && e.weil_in_hdg4 && e.hdg4_in_weil
    );
    assert_eq!(c.positivity_point.len(), 8);
    assert!(cert
        .assumed
        .iter()
        .any(|a| a == "simplicity of X — analytic, out of scope"));
    assert_eq!(cert.assumed.len(), ASSUMED.len());
    assert!(cert.instance_hash.starts_with("sha256:") && cert.instance_hash.len() == 7 + 64);
    assert!(cert.timings.is_none());
    let json: serde_json::Value = serde_json::from_str(&cert.to_json()).unwrap();
    for key in ["instanceHash", "toolVersion", "seed", "checks", "assumed"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert!(json.get("timings").is_none());
}

#[test]
fn timings_are_opt_in() {
    let bytes = std::fs::read(example("rational-1.json")).unwrap();
    let opts = Options {
        timings: true,
        ..Options::default()
    };
    let cert = verify_bytes(&bytes, &opts).unwrap();
    let t = cert.timings.unwrap();
    assert!(t.contains_key("joint_kernel") && t.contains_key("hodge_class_space_p2"));
}

#[test]
fn seed_changes_the_points_not_the_verdict() {
    let bytes = std::fs::read(example("generic8.json")).unwrap();
    let a = verify_bytes(&bytes, &Options::default()).unwrap();
    let b = verify_bytes(
        &bytes,
        &Options {
            seed: 5,
            ..Options::default()
        },
    )
    .unwrap();
    assert!(b.passed());
    assert_eq!(a.checks.ns_rank, b.checks.ns_rank);
    assert_ne!(a.checks.positivity_point, b.checks.positivity_point);
    assert_ne!(a.to_json(), b.to_json());
}

#[test]
fn subcommands_run() {
    let generic = example("generic8.json");
    let g = generic.to_str().unwrap();
    let ok = |args: &[&str]| {
        let out = bin().args(args).output().unwrap();
        assert!(
            out.status.success(),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(ok(&["weil"]).starts_with("dim = 2"));
    assert!(ok(&["weil", "--instance", g]).contains("of type (2,2): true"));
    assert!(ok(&["hdg", "--p", "2", "--instance", g]).starts_with("rank Hdg^4 = 2"));
    assert!(ok(&["deform", "--instance", g]).contains("dim 0"));
    assert!(ok(&["chern-demo"]).contains("Contradiction"));
    let printed = ok(&["gen-example", "--symbolic"]);
    assert_eq!(printed, std::fs::read_to_string(&generic).unwrap());
    let bad = bin()
        .args(["hdg", "--p", "3", "--instance", g])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
