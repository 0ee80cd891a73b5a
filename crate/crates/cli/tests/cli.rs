use proptest::prelude::*;
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tlsrelax::theory::n_static;
use tlsrelax_cli::config::{Method, RunConfig, Scenario};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tlsrelax"))
}

fn run(args: &[&str], config: Option<&str>, dir: &Path) -> Output {
    let mut cmd = bin();
    cmd.args(args).arg("--out").arg(dir);
    if let Some(text) = config {
        let path = dir.join("input.toml");
        std::fs::create_dir_all(dir).unwrap();
        std::fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

struct Csv {
    header: BTreeMap<String, String>,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl Csv {
    fn col(&self, name: &str) -> Vec<f64> {
        let k = self.columns.iter().position(|c| c == name).unwrap();
        self.rows.iter().map(|r| r[k]).collect()
    }
}

fn read_csv(path: &Path) -> Csv {
    let text = std::fs::read_to_string(path).unwrap();
    let mut header = BTreeMap::new();
    let mut lines = text.lines();
    let mut columns = Vec::new();
    for line in lines.by_ref() {
        if let Some(kv) = line.strip_prefix("# ") {
            let (k, v) = kv.split_once('=').unwrap();
            header.insert(k.to_string(), v.to_string());
        } else {
            columns = line.split(',').map(String::from).collect();
            break;
        }
    }
    let rows = lines
        .map(|l| {
            l.split(',')
                .map(|x| x.parse().unwrap())
                .collect::<Vec<f64>>()
        })
        .collect();
    Csv {
        header,
        columns,
        rows,
    }
}

fn csv_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "csv"))
        .collect();
    v.sort();
    v
}

fn check_schema(path: &Path) -> Csv {
    let c = read_csv(path);
    assert!(c.header.contains_key("units"), "{}", path.display());
    assert!(c.header["units"].contains("Omega0"));
    assert!(c.columns == ["t", "value"] || c.columns == ["t", "value", "stderr"]);
    for r in &c.rows {
        assert_eq!(r.len(), c.columns.len());
    }
    let t = c.col("t");
    assert!(
        t.windows(2).all(|w| w[1] > w[0]),
        "{} times not increasing",
        path.display()
    );
    c
}

const SMALL_FIG1: &str = "
[params]
nu = [0.0, 1.0]

[mc]
n_traj = 4000
records = 10

[time]
t_max = 4.0
points = 81
";

#[test]
fn default_config_round_trips() {
    let cfg = RunConfig::default();
    let back: RunConfig = cfg.to_toml().parse().unwrap();
    assert_eq!(back, cfg);
}

#[test]
fn unknown_keys_are_rejected() {
    assert!("bogus = 1".parse::<RunConfig>().is_err());
    assert!("[mc]\nntraj = 5".parse::<RunConfig>().is_err());
    assert!("[extra]\nx = 1".parse::<RunConfig>().is_err());
    assert!("[mc]\nn_traj = 5".parse::<RunConfig>().is_ok());
}

#[test]
fn invalid_values_are_rejected() {
    assert!("[params]\nnu = []".parse::<RunConfig>().is_err());
    assert!("[params]\nnu = [-0.1]".parse::<RunConfig>().is_err());
    assert!("[pde]\ndt = 0.0".parse::<RunConfig>().is_err());
    assert!("method = \"fast\"".parse::<RunConfig>().is_err());
    assert!(RunConfig {
        seed: u64::MAX,
        ..RunConfig::default()
    }
    .check()
    .is_err());
}

#[test]
fn fig1_outputs_follow_the_schema_and_static_overlay() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["fig1"], Some(SMALL_FIG1), dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = dir.path().join("fig1");
    let files = csv_files(&out);
    assert!(files.iter().any(|p| p.ends_with("n_pde_nu1.csv")));
    assert!(files.iter().any(|p| p.ends_with("n_mc_nu1.csv")));
    for f in &files {
        check_schema(f);
    }
    let svg = std::fs::read_to_string(out.join("fig1.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    // config copy round-trips
    let saved: RunConfig = std::fs::read_to_string(out.join("config.toml"))
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(saved.scenario, Some(Scenario::Fig1));
    assert_eq!(saved.mc.n_traj, 4000);

    let zero = read_csv(&out.join("n_pde_nu0.csv"));
    for (t, v) in zero.col("t").iter().zip(zero.col("value")) {
        assert!((v - n_static(*t)).abs() <= 1e-3, "t={t}");
    }

    let pde = read_csv(&out.join("n_pde_nu1.csv"));
    let mc = read_csv(&out.join("n_mc_nu1.csv"));
    let (pt, pv) = (pde.col("t"), pde.col("value"));
    for row in mc.rows.iter().skip(1) {
        let (t, v, e) = (row[0], row[1], row[2]);
        let j = pt
            .iter()
            .position(|&x| (x - t).abs() < 1e-9)
            .expect("shared time");
        assert!((v - pv[j]).abs() <= 3.0 * e, "t={t}: {v} vs {}", pv[j]);
    }
}

#[test]
fn identical_seed_gives_identical_bytes() {
    let (a, b, c) = (
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
        tempfile::tempdir().unwrap(),
    );
    for d in [&a, &b] {
        assert!(run(&["fig1", "--seed", "7"], Some(SMALL_FIG1), d.path())
            .status
            .success());
    }
    assert!(run(&["fig1", "--seed", "8"], Some(SMALL_FIG1), c.path())
        .status
        .success());
    let fa = csv_files(&a.path().join("fig1"));
    assert!(!fa.is_empty());
    for f in &fa {
        let name = f.file_name().unwrap();
        let x = std::fs::read(f).unwrap();
        assert_eq!(
            x,
            std::fs::read(b.path().join("fig1").join(name)).unwrap(),
            "{name:?}"
        );
        let y = std::fs::read(c.path().join("fig1").join(name)).unwrap();
        if name.to_string_lossy().contains("_mc_") {
            assert_ne!(x, y, "{name:?} ignores the seed");
        }
    }
}

#[test]
fn fig2_j_starts_at_one_and_rejects_bad_requests() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["fig2", "--nu", "0.01"],
        Some("[time]\nt_max = 1.0\n"),
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let j = check_schema(&dir.path().join("fig2/j_pde_nu0.01.csv"));
    assert!(j.header["units"].contains("alpha t"));
    assert!((j.col("value")[0] - 1.0).abs() < 1e-8);
    let short = read_csv(&dir.path().join("fig2/j_short_time.csv"));
    assert_eq!(short.col("value")[0], 1.0);

    let o = run(&["fig2", "--method", "mc"], None, dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fig2", "--nu", "0.5"], None, dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("strong coupling"));
}

#[test]
fn fig3_tiny_rate_curves_coincide_with_plateau() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "[params]\nnu = [0.0001]\n\n[pde]\ncoarse_factor = 100\n\n[time]\nt_max = 30000.0\npoints = 200\n";
    let o = run(&["fig3"], Some(cfg), dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let pde = check_schema(&dir.path().join("fig3/r_pde_nu0.0001.csv"));
    let th = check_schema(&dir.path().join("fig3/r_theory_nu0.0001.csv"));
    assert!((pde.col("value")[0] - 1.0).abs() < 1e-9);
    assert!((th.col("value")[0] - 1.0).abs() < 1e-12);
    let (tt, tv) = (th.col("t"), th.col("value"));
    let alpha = 1e-4f64.powf(1.0 / 3.0);
    for (t, v) in pde.col("t").iter().zip(pde.col("value")) {
        if let Some(j) = tt.iter().position(|&x| (x - t).abs() <= 1e-6 * t.max(1.0)) {
            assert!((v - tv[j]).abs() <= 0.01, "t={t}");
        }
        if *t >= 3.0 / alpha && *t <= 0.01 / 1e-4 {
            assert!((v - 0.5).abs() < 0.05, "plateau at t={t}: {v}");
        }
    }
}

#[test]
fn pointer_starts_exactly_and_relaxes_to_half() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "method = \"mc\"\n[params]\nnu = [0.3]\n[mc]\nn_traj = 4000\nrecords = 20\n[pointer]\nt_lo = 40.0\nt_hi = 80.0\n";
    let o = run(&["pointer"], Some(cfg), dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("pointer nu=0.3 method=mc"));
    let off = check_schema(&dir.path().join("pointer/offdiag_mc_nu0.3.csv"));
    let diag = check_schema(&dir.path().join("pointer/diag_mc_nu0.3.csv"));
    // pointer basis of phi' = 0.6 with n0 = 0.1: rho+- starts at n0/2
    assert!((off.col("value")[0] - 0.05).abs() < 1e-12);
    assert!(diag.col("value")[0].abs() < 1e-12);
    let last = diag.rows.last().unwrap();
    // rho++(0) = 0.99, so the drift tends to -0.49
    assert!((last[1] + 0.49).abs() <= 3.0 * last[2] + 1e-3, "{last:?}");
    let last = off.rows.last().unwrap();
    assert!(last[1] <= 4.0 * last[2] + 1e-3, "{last:?}");
}

#[test]
fn validate_passes_and_reports_one_line_per_check() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["validate"], None, dir.path());
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    let lines: Vec<&str> = text.lines().filter(|l| l.starts_with("check=")).collect();
    for name in [
        "dawson_vs_quadrature",
        "field_correlation",
        "propagator_accuracy",
        "negative_control_dt_x10",
        "forward_backward",
        "mc_vs_pde_nu0.1",
        "mc_vs_pde_nu1",
    ] {
        let line = lines
            .iter()
            .find(|l| l.starts_with(&format!("check={name} ")))
            .expect(name);
        assert!(line.contains("status=PASS"), "{line}");
        assert!(line.contains("measured=") && line.contains("tolerance="));
    }
    assert!(text.contains("summary passed=") && text.contains("failed=0"));
}

#[test]
fn validate_flags_a_step_ten_times_too_large() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["validate"],
        Some("[validate]\ndt_scale = 10.0\n"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(
        text.lines()
            .any(|l| l.starts_with("check=propagator_accuracy status=FAIL")),
        "{text}"
    );
}

#[test]
fn conflicting_requests_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(
        &["fig1", "--method", "pde"],
        Some("[params]\ndelta0 = 0.5\n"),
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("delta0"));
    let o = run(&["fig1"], Some("scenario = \"fig3\"\n"), dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fig1"], Some("[params]\nunknown = 1\n"), dir.path());
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["fig1", "--nu", "0.1,x"], None, dir.path());
    assert!(!o.status.success());
}

#[test]
fn detuned_monte_carlo_is_allowed() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = "method = \"mc\"\n[params]\nnu = [1.0]\ndelta0 = 0.5\n[mc]\nn_traj = 200\n[time]\nt_max = 1.0\n";
    let o = run(&["fig1"], Some(cfg), dir.path());
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let c = read_csv(&dir.path().join("fig1/n_mc_nu1.csv"));
    assert_eq!(c.header["delta0"], "0.5");
}

fn arb_method() -> impl Strategy<Value = Method> {
    prop_oneof![
        Just(Method::Mc),
        Just(Method::Pde),
        Just(Method::Theory),
        Just(Method::All)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn populated_config_round_trips(
        seed in 0..=i64::MAX as u64,
        method in arb_method(),
        nu in proptest::option::of(proptest::collection::vec(0.0f64..20.0, 1..5)),
        n_traj in 2usize..1_000_000,
        dt in proptest::option::of(1e-4f64..0.1),
        t_max in proptest::option::of(0.1f64..1e5),
        phi in -10.0f64..10.0,
        scale in 0.1f64..100.0,
    ) {
        let mut cfg = RunConfig { seed, method, ..RunConfig::default() };
        cfg.params.nu = nu;
        cfg.mc.n_traj = n_traj;
        cfg.mc.dt = dt;
        cfg.time.t_max = t_max;
        cfg.pointer.phi_prime = phi;
        cfg.validate.dt_scale = scale;
        let back: RunConfig = cfg.to_toml().parse().unwrap();
        prop_assert_eq!(back, cfg);
    }
}
