use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn qgraph(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qgraph"))
        .args(args)
        .output()
        .expect("failed to run qgraph")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn ring_sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig3.csv");
    let res = qgraph(&[
        "sweep",
        "--l1",
        "1",
        "--l2",
        "2.1",
        "--points",
        "10000",
        "--out",
        path_str(&out),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "param,re_t,im_t,T,re_r,im_r,R");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 10_000);
    for row in rows.iter().step_by(97) {
        let cols: Vec<f64> = row.split(',').map(|c| c.parse().unwrap()).collect();
        assert_eq!(cols.len(), 7);
        assert!((cols[3] + cols[6] - 1.0).abs() < 1e-10);
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let args = |p: &Path| {
        vec![
            "sweep".to_string(),
            "--subject".into(),
            "parallel-wells".into(),
            "--n-wells".into(),
            "20".into(),
            "--points".into(),
            "3000".into(),
            "--out".into(),
            path_str(p).into(),
        ]
    };
    for p in [&a, &b] {
        let argv = args(p);
        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
        assert!(qgraph(&argv).status.success());
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("out.csv");
    fs::write(
        &cfg,
        format!("# ab ring sweep\nsubject = ab_ring\nalpha = 3\nl2 = 2\npoints = 5\nk_min = 1\nk_max = 2\nout = {}\n", path_str(&out)),
    )
    .unwrap();
    let res = qgraph(&["sweep", "--config", path_str(&cfg), "--points", "7"]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("1.0000000000000000e0,"));
}

#[test]
fn bad_config_exits_with_2() {
    let res = qgraph(&["sweep", "--k-min", "2", "--k-max", "2"]);
    assert_eq!(res.status.code(), Some(2));
    let res = qgraph(&["sweep", "--points", "1"]);
    assert_eq!(res.status.code(), Some(2));
    let res = qgraph(&[
        "sweep",
        "--subject",
        "ring",
        "--swept",
        "alpha",
        "--from",
        "0",
        "--to",
        "1",
    ]);
    assert_eq!(res.status.code(), Some(2));
    let res = qgraph(&["sweep", "--bogus"]);
    assert_eq!(res.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "l3 = 1\n").unwrap();
    assert_eq!(
        qgraph(&["sweep", "--config", path_str(&cfg)]).status.code(),
        Some(2)
    );
}

#[test]
fn all_singular_exits_with_3_and_logs() {
    let dir = tempfile::tempdir().unwrap();
    let log = dir.path().join("skipped.csv");
    let out = dir.path().join("out.csv");
    let pi = std::f64::consts::PI;
    let (lo, hi) = (pi.to_string(), (2.0 * pi).to_string());
    let res = qgraph(&[
        "sweep",
        "--l2",
        "1",
        "--k-min",
        &lo,
        "--k-max",
        &hi,
        "--points",
        "2",
        "--skip-log",
        path_str(&log),
        "--out",
        path_str(&out),
    ]);
    assert_eq!(res.status.code(), Some(3));
    let text = fs::read_to_string(&log).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("resonance"));
}

#[test]
fn resonance_table_is_json() {
    let res = qgraph(&[
        "resonances",
        "--l1",
        "1",
        "--l2",
        "1.1",
        "--k-min",
        "0",
        "--k-max",
        "40",
    ]);
    assert!(res.status.success());
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    let rows = v.as_array().unwrap();
    let ftrs = rows.iter().filter(|r| r["kind"] == "FTR").count();
    assert_eq!(ftrs, (40.0 * 2.1 / (2.0 * std::f64::consts::PI)) as usize);
    assert!(rows
        .iter()
        .filter(|r| r["kind"] == "FTR")
        .all(|r| r["omega_im"].is_f64()));

    let res = qgraph(&["resonances", "--k-min", "3", "--k-max", "3"]);
    assert!(res.status.success());
    assert_eq!(
        serde_json::from_slice::<serde_json::Value>(&res.stdout).unwrap(),
        serde_json::json!([])
    );
}

#[test]
fn bound_states_for_wells() {
    let res = qgraph(&[
        "bound-states",
        "--subject",
        "parallel-wells",
        "--n-wells",
        "20",
        "--format",
        "csv",
    ]);
    assert!(res.status.success());
    let text = String::from_utf8(res.stdout).unwrap();
    let kappas: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(kappas.len(), 20);
    assert!(kappas.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn tabulated_potential_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let pot = dir.path().join("well.dat");
    let mut text = String::from("# x_nm V_eV\n");
    for i in 0..=100 {
        text.push_str(&format!("{} -2.0\n", i as f64 * 0.01));
    }
    fs::write(&pot, text).unwrap();
    let res = qgraph(&[
        "bound-states",
        "--subject",
        "finite-support",
        "--potential-file",
        path_str(&pot),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 3);

    let res = qgraph(&[
        "sweep",
        "--subject",
        "finite-support",
        "--potential-file",
        path_str(&pot),
        "--points",
        "20",
    ]);
    assert!(res.status.success());
    assert_eq!(String::from_utf8(res.stdout).unwrap().lines().count(), 21);
}

#[test]
fn cascade_with_links() {
    let res = qgraph(&[
        "cascade",
        "--n-rings",
        "3",
        "--l1",
        "1",
        "--l2",
        "2",
        "--links",
        "0.5,0.5",
        "--points",
        "200",
        "--format",
        "json",
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    let v: serde_json::Value = serde_json::from_slice(&res.stdout).unwrap();
    assert_eq!(
        v["rows"].as_array().unwrap().len() + v["skipped"].as_array().unwrap().len(),
        200
    );
    let res = qgraph(&["cascade", "--n-rings", "2", "--links", "0.5,0.5"]);
    assert_eq!(res.status.code(), Some(2));
}
