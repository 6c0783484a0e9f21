use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn omegaforge(args: &[&str], env_dir: Option<&Path>) -> Output {
    let mut c = Command::new(env!("CARGO_BIN_EXE_omegaforge"));
    c.args(args).env_remove("OMEGAFORGE_CHECKPOINT_DIR");
    if let Some(d) = env_dir {
        c.env("OMEGAFORGE_CHECKPOINT_DIR", d);
    }
    c.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).expect("valid JSON");
    assert_eq!(v["schema_version"], 1);
    v
}

#[test]
fn vm_run_reports() {
    let v = json(&omegaforge(&["vm", "run", "000"], None));
    assert_eq!((v["kind"].as_str(), v["output"].as_str(), v["steps"].as_u64()), (Some("HALTED"), Some(""), Some(1)));
    let v = json(&omegaforge(&["vm", "run", "111"], None));
    assert_eq!(v["kind"], "INVALID");
    let v = json(&omegaforge(&["vm", "run", "10001010001"], None));
    assert_eq!(v["kind"], "DIVERGES");
}

#[test]
fn exit_codes() {
    assert_eq!(omegaforge(&["frobnicate"], None).status.code(), Some(2));
    assert_eq!(omegaforge(&["vm", "run", "012"], None).status.code(), Some(2));
    assert_eq!(omegaforge(&["invariance", "--guest", "10", "--bound", "3"], None).status.code(), Some(2));
    let o = omegaforge(&["complexity", "exact", "0", "--bound", "40"], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    assert_eq!(omegaforge(&["--help"], None).status.code(), Some(0));
}

#[test]
fn explore_is_deterministic_and_resumable() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let args = |name: &str, threads: &str| {
        vec![
            "explore".to_string(),
            "--max-len".into(),
            "14".into(),
            "--max-steps".into(),
            "10000".into(),
            "--threads".into(),
            threads.into(),
            "--checkpoint".into(),
            d.join(name).display().to_string(),
        ]
    };
    let run = |a: Vec<String>| {
        let refs: Vec<&str> = a.iter().map(String::as_str).collect();
        json(&omegaforge(&refs, None))
    };
    let a = run(args("a.ckpt", "1"));
    let b = run(args("b.ckpt", "3"));
    assert_eq!(a["checksum"], b["checksum"]);
    assert_eq!(fs::read(d.join("a.ckpt")).unwrap(), fs::read(d.join("b.ckpt")).unwrap());

    let mut partial = args("c.ckpt", "2");
    partial.extend(["--stop-after".to_string(), "5".into()]);
    let p = run(partial);
    assert_eq!(p["complete"], false);
    let mut resumed = args("c.ckpt", "2");
    resumed.push("--resume".into());
    let r = run(resumed);
    assert_eq!(r["complete"], true);
    assert_eq!(fs::read(d.join("a.ckpt")).unwrap(), fs::read(d.join("c.ckpt")).unwrap());

    // the environment supplies the default checkpoint directory
    let e = json(&omegaforge(&["explore", "--max-len", "6", "--max-steps", "100"], Some(d)));
    assert!(d.join("explore-L6-S100.ckpt").exists(), "{}", e);

    let v = json(&omegaforge(&["omega", "bits", "--checkpoint", d.join("a.ckpt").to_str().unwrap()], None));
    assert!(v["lower"].as_str().unwrap().contains("/2^"));
    assert!(v["certified_bits"].as_str().unwrap().starts_with("0."));

    let v = json(&omegaforge(
        &["omega", "progress", d.join("explore-L6-S100.ckpt").to_str().unwrap(), d.join("a.ckpt").to_str().unwrap()],
        None,
    ));
    assert_eq!(v["monotone"], true);
    assert_eq!(v["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn corrupt_checkpoint_is_a_domain_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.ckpt");
    let p = path.to_str().unwrap();
    json(&omegaforge(&["explore", "--max-len", "8", "--max-steps", "100", "--checkpoint", p], None));
    let text = fs::read_to_string(&path).unwrap().replacen(" HALT ", " INVALID ", 1);
    fs::write(&path, text).unwrap();
    let o = omegaforge(&["omega", "bits", "--checkpoint", p], None);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("forge.conf");
    fs::write(&cfg, "format = csv\nmax_steps = 5\n").unwrap();
    let c = cfg.to_str().unwrap();
    let o = omegaforge(&["--config", c, "vm", "run", "000"], None);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("bits_consumed,kind,output,program,report,schema_version,steps\n"), "{}", text);
    // the flag beats the file
    let v = json(&omegaforge(&["--config", c, "--format", "json", "vm", "run", "10001010001", "--max-steps", "3"], None));
    assert_eq!(v["kind"], "UNKNOWN");
    fs::write(&cfg, "max_steps = 0\n").unwrap();
    assert_eq!(omegaforge(&["--config", c, "vm", "run", "000"], None).status.code(), Some(2));
}

#[test]
fn complexity_commands() {
    let v = json(&omegaforge(&["complexity", "of", "0000"], None));
    assert_eq!((v["kind"].as_str(), v["value"].as_u64()), (Some("UPPER"), Some(12)));
    let v = json(&omegaforge(&["complexity", "exact", "0000", "--bound", "12"], None));
    assert_eq!(v["kind"], "EXACT_WITHIN");
    assert_eq!(v["witness_bits"], "001001011000");
    let v = json(&omegaforge(&["complexity", "exact", "1", "--bound", "3"], None));
    assert_eq!(v["kind"], "ABOVE_BOUND");
    let v = json(&omegaforge(&["invariance", "--guest", "01", "--bound", "6"], None));
    assert_eq!(v["holds"], true);
    let v = json(&omegaforge(&["counting", "--n", "4", "--m", "3"], None));
    assert_eq!((v["count"].as_u64(), v["bound"].as_u64()), (Some(0), Some(15)));
    let v = json(&omegaforge(&["complexity", "irreducibility", "--omega-bits", "011", "--bound", "12"], None));
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
}

#[test]
fn theory_and_law_commands() {
    let dir = tempfile::tempdir().unwrap();
    let conv = json(&omegaforge(&["theory", "converse", "--omega-bits", "0111"], None));
    let file = dir.path().join("t.bits");
    fs::write(&file, format!("{}\n", conv["carrier_bits"].as_str().unwrap())).unwrap();
    let v = json(&omegaforge(&["theory", "audit", file.to_str().unwrap(), "--omega-bits", "0111"], None));
    assert_eq!((v["sound"].as_bool(), v["assertions"].as_u64()), (Some(true), Some(4)));
    let v = json(&omegaforge(&["theory", "audit", file.to_str().unwrap(), "--omega-bits", "1111"], None));
    assert_eq!(v["sound"], false);
    fs::write(&file, "0010").unwrap();
    assert_eq!(omegaforge(&["theory", "audit", file.to_str().unwrap(), "--omega-bits", "0"], None).status.code(), Some(1));

    let csv = dir.path().join("p.csv");
    fs::write(&csv, "x,y\n0,0\n1,1\n2,0\n").unwrap();
    let samples = dir.path().join("curve.dat");
    let v = json(&omegaforge(
        &["law", "interpolate", csv.to_str().unwrap(), "--samples-out", samples.to_str().unwrap(), "--samples", "11"],
        None,
    ));
    assert_eq!(v["points"], 3);
    assert!(v["max_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(fs::read_to_string(&samples).unwrap().lines().count(), 12);

    let zeros = "0".repeat(1024);
    let v = json(&omegaforge(&["law", "classify", &zeros], None));
    assert_eq!(v["verdict"], "LAWFUL");
    let v = json(&omegaforge(&["law", "classify", "0"], None));
    assert_eq!(v["verdict"], "LAWLESS_AT_BUDGET");
}
