use std::process::{Command, Output};

use rpi_meter::cli::{execute, parse_args, Command as Sub};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rpi-meter"))
        .args(args)
        .env_remove("RPI_METER_THREADS")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp(name: &str, body: &str) -> std::path::PathBuf {
    let p = std::env::temp_dir().join(format!("rpi-meter-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn regime_reports_minimum() {
    let o = bin(&["regime", "--l", "1", "--tau", "1", "--dE", "0.001"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("delta_min=2.00000000\n"));
    assert!(s.contains("regime_E=quantum\n"));
}

#[test]
fn exit_codes() {
    assert_eq!(bin(&["limit", "--l", "-1", "--tau", "1"]).status.code(), Some(2));
    assert_eq!(bin(&["limit", "--l", "1"]).status.code(), Some(1));
    assert_eq!(bin(&["limit", "--l", "1", "--tau", "1", "--wat"]).status.code(), Some(1));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(bin(&["probe", "--m", "1", "--tau", "1", "--Omega", "2", "--omega", "2", "--Q", "1"]).status.code(), Some(2));
    assert_eq!(
        bin(&["engine", "--l", "1", "--tau", "0.1", "--steps", "256", "--modes", "16"]).status.code(),
        Some(3)
    );
    assert_eq!(bin(&["--help"]).status.code(), Some(0));
}

#[test]
fn config_file_and_precedence() {
    let cfg = temp("a.conf", "l=1\ntau=1\n");
    let c = cfg.to_str().unwrap();
    let a = parse_args(["rpi-meter", "limit", "--config", c]).unwrap();
    assert_eq!(a.command, Sub::Limit { l: 1.0, tau: 1.0, dx: None, quantization: true });
    let b = parse_args(["rpi-meter", "limit", "--config", c, "--tau", "137"]).unwrap();
    assert_eq!(b.command, Sub::Limit { l: 1.0, tau: 137.0, dx: None, quantization: true });

    let bad = temp("b.conf", "l=abc\n");
    let e = parse_args(["rpi-meter", "limit", "--config", bad.to_str().unwrap()]).unwrap_err();
    assert!(e.to_string().contains("line 1"));
    assert_eq!(e.exit_code(), 1);

    let empty = temp("c.conf", "");
    let f = parse_args(["rpi-meter", "limit", "--config", empty.to_str().unwrap(), "--l", "2", "--tau", "3"]).unwrap();
    assert_eq!(f.command, Sub::Limit { l: 2.0, tau: 3.0, dx: None, quantization: true });

    let cgs = temp("d.conf", "units=cgs\nalpha=codata\n");
    let g = parse_args(["rpi-meter", "limit", "--config", cgs.to_str().unwrap(), "--l", "1", "--tau", "1", "--units", "natural"]).unwrap();
    assert_eq!(g.units, rpi_meter::units::UnitKind::Natural);
    assert_eq!(g.alpha, rpi_meter::units::AlphaMode::Codata);
    for p in [cfg, bad, empty, cgs] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn limit_csv_row_matches_map_header() {
    let o = bin(&["limit", "--l", "1", "--tau", "1", "--format", "csv"]);
    let s = stdout(&o);
    let mut lines = s.lines();
    assert_eq!(lines.next().unwrap(), "l,tau,rho,regime,delta_E_abs,Q_opt,lambda,subregions");
    assert_eq!(lines.next().unwrap().split(',').count(), 8);
}

#[test]
fn out_flag_writes_file() {
    let p = std::env::temp_dir().join(format!("rpi-meter-{}-out.txt", std::process::id()));
    let o = bin(&["limit", "--l", "1", "--tau", "1", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&p).unwrap().contains("regime=Acausal"));
    let _ = std::fs::remove_file(p);
    let bad = bin(&["limit", "--l", "1", "--tau", "1", "--out", "/nonexistent-dir/x/y"]);
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn sample_output_is_reproducible_across_worker_counts() {
    let args = ["sample", "--l", "1", "--tau", "1", "--dE", "1.4142135623730951", "--n", "4000", "--seed", "9"];
    let one = Command::new(env!("CARGO_BIN_EXE_rpi-meter")).args(args).env("RPI_METER_THREADS", "1").output().unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_rpi-meter")).args(args).env("RPI_METER_THREADS", "6").output().unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
    let s = stdout(&one);
    assert!(s.starts_with("sample,cell,Ex,Ey,Ez,Hx,Hy,Hz\n"));
    assert_eq!(s.lines().filter(|l| !l.starts_with('#')).count(), 4001);

    let stats = bin(&["sample", "--l", "1", "--tau", "1", "--dE", "1.4142135623730951", "--n", "4000", "--seed", "9", "--stats-only"]);
    assert!(stdout(&stats).lines().all(|l| l.starts_with('#')));
    let bad = Command::new(env!("CARGO_BIN_EXE_rpi-meter")).args(args).env("RPI_METER_THREADS", "zero").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn engine_table_and_summary() {
    let o = bin(&["engine", "--l", "1", "--tau", "0.01", "--modes", "4", "--steps", "32", "--sweep", "4", "--points", "9"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let s = stdout(&o);
    assert!(s.starts_with("delta,variance,fit_C,fit_p\n"));
    assert_eq!(s.lines().filter(|l| !l.starts_with('#')).count(), 10);
    let p: f64 = s.lines().find_map(|l| l.strip_prefix("# fit_p=")).unwrap().parse().unwrap();
    assert!((p - 2.0).abs() < 1e-6);
    // too short a sweep cannot be fitted
    let short = bin(&["engine", "--l", "1", "--tau", "0.01", "--modes", "2", "--steps", "8", "--sweep", "1"]);
    assert_eq!(short.status.code(), Some(1));
}

#[test]
fn probe_and_units() {
    let s = stdout(&bin(&["probe", "--m", "1", "--tau", "1", "--Omega", "2", "--omega", "0", "--Q", "1"]));
    assert!(s.contains("delta_x=0.500000000\n") && s.contains("delta_F=2.00000000\n"));
    let c = stdout(&bin(&["regime", "--units", "cgs", "--l", "1", "--tau", "1", "--dE", "1e-13"]));
    let line = c.lines().find(|l| l.starts_with("delta_min=")).unwrap();
    let v: f64 = line["delta_min=".len()..].parse().unwrap();
    assert!(((v - 2.0 * 1.054571817e-27f64.sqrt()) / v).abs() < 1e-8);
}

#[test]
fn runs_are_pure() {
    let cfg = parse_args(["rpi-meter", "map", "--l-min", "0.1", "--l-max", "10", "--tau-min", "0.1", "--tau-max", "1000", "--grid", "7"]).unwrap();
    assert_eq!(execute(&cfg).unwrap(), execute(&cfg).unwrap());
    let empty = parse_args(["rpi-meter", "map", "--l-min", "1", "--l-max", "1", "--tau-min", "1", "--tau-max", "1", "--grid", "0"]).unwrap();
    assert_eq!(execute(&empty).unwrap(), "l,tau,rho,regime,delta_E_abs,Q_opt,lambda,subregions\n");
}
