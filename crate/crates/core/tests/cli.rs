use std::path::Path;
use std::process::{Command, Output};

use longmem::table::{Table, SCHEMA};

fn longmem(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_longmem"))
        .args(args)
        .output()
        .unwrap()
}

fn read_table(path: &Path) -> Table {
    Table::read_from(std::fs::File::open(path).unwrap()).unwrap()
}

#[test]
fn help_and_version_succeed() {
    assert_eq!(longmem(&["--help"]).status.code(), Some(0));
    assert_eq!(longmem(&["--version"]).status.code(), Some(0));
    assert_eq!(longmem(&[]).status.code(), Some(1));
}

#[test]
fn invalid_config_exits_with_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        longmem(&["fit", "--d", "0.5", "--out", out]).status.code(),
        Some(1)
    );
    assert_eq!(
        longmem(&["fit", "--k", "0", "--out", out]).status.code(),
        Some(1)
    );
    assert_eq!(
        longmem(&["fit", "--config", "/nonexistent/run.cfg"])
            .status
            .code(),
        Some(1)
    );
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "model = farima\nar = 1.5\n").unwrap();
    let o = longmem(&["coeffs", "--config", cfg.to_str().unwrap(), "--out", out]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn uncertifiable_simulation_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "sim_method = ma\nma_order = 2048\n").unwrap();
    let o = longmem(&[
        "montecarlo",
        "--config",
        cfg.to_str().unwrap(),
        "--reps",
        "50",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn config_file_and_flags_combine() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("res");
    std::fs::write(
        &cfg,
        format!(
            "# fit run\nd = 0.2\nk = 12\nh = 2\nout = {}\n",
            out.display()
        ),
    )
    .unwrap();
    let o = longmem(&["fit", "--config", cfg.to_str().unwrap(), "--k", "6"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let w = read_table(&out.join("weights.csv"));
    assert_eq!(w.rows.len(), 6);
    let mse = std::fs::read_to_string(out.join("mse.csv")).unwrap();
    assert!(mse.starts_with(SCHEMA));
    assert!(mse.contains("d=0.2"));
}

#[test]
fn coeffs_csv_has_full_precision() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        longmem(&["coeffs", "--d", "0.25", "--out", out])
            .status
            .code(),
        Some(0)
    );
    let ma = read_table(&dir.path().join("coeffs_ma.csv"));
    let b = ma.column_f64(&ma.header[1]).unwrap();
    assert_eq!(b.len(), 201);
    assert!((b[3] - 0.1171875).abs() < 1e-15);
    let text = std::fs::read_to_string(dir.path().join("coeffs_ar.csv")).unwrap();
    let row = text.lines().find(|l| l.starts_with("1,")).unwrap();
    let digits: String = row[2..]
        .chars()
        .take_while(|c| *c != 'e')
        .filter(|c| c.is_ascii_digit())
        .collect();
    assert_eq!(digits.len(), 17);
}

#[test]
fn figure1_is_monotone_and_quadratic_near_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    assert_eq!(
        longmem(&["figure1", "--svg", "--out", out]).status.code(),
        Some(0)
    );
    let t = read_table(&dir.path().join("figure1.csv"));
    let c = t.column_f64("c").unwrap();
    assert_eq!(c.len(), 50);
    assert!(c.windows(2).all(|w| w[1] > w[0]));
    let svg = std::fs::read_to_string(dir.path().join("figure1.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
}

#[test]
fn figure2_subset() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "d_grid = 0.1, 0.4\nk_grid = 8, 24, 600\n").unwrap();
    let o = longmem(&[
        "figure2",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let t = read_table(&dir.path().join("figure2.csv"));
    let r = t.column_f64("r").unwrap();
    assert_eq!(r.len(), 6);
    assert!(r.iter().all(|x| (0.0..=1.0).contains(x)));
    // k = 600 lies past the subtraction cut-off
    assert_eq!(t.rows[2][3], "");
    assert_eq!(t.rows[4][4], "true");
}

#[test]
fn montecarlo_rejects_too_few_replications() {
    let dir = tempfile::tempdir().unwrap();
    let o = longmem(&[
        "montecarlo",
        "--reps",
        "10",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn montecarlo_is_seed_dependent_and_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let run = |seed: &str, sub: &str| {
        let out = dir.path().join(sub);
        let o = longmem(&[
            "montecarlo",
            "--reps",
            "200",
            "--seed",
            seed,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0));
        std::fs::read(out.join("montecarlo.csv")).unwrap()
    };
    let a = run("1", "a");
    assert_eq!(a, run("1", "b"));
    assert_ne!(a, run("2", "c"));
}
