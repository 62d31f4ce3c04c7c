use std::path::Path;
use std::process::{Command, Output};

fn fracnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fracnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit status")
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_writes_csv_with_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "n=64\ngamma=0.55\n").unwrap();
    let net = dir.path().join("net.csv");
    let runs = dir.path().join("run");
    let out = fracnet(&[
        "generate",
        "--config",
        arg(&cfg),
        "--out",
        arg(&net),
        "--out-dir",
        arg(&runs),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&net).unwrap();
    assert!(text.starts_with("id,x1,y1,x2,y2,aperture,kind,hub_id\n"));
    assert!(text.lines().count() > 1);
    assert!(runs.join("manifest.txt").exists());
}

#[test]
fn seed_flag_overrides_config() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "n=64\nseed=3\n").unwrap();
    let run = |seed: &str, name: &str| {
        let d = dir.path().join(name);
        let out = fracnet(&[
            "generate",
            "--config",
            arg(&cfg),
            "--seed",
            seed,
            "--out-dir",
            arg(&d),
        ]);
        assert_eq!(code(&out), 0);
        (
            std::fs::read_to_string(d.join("network.csv")).unwrap(),
            std::fs::read_to_string(d.join("manifest.txt")).unwrap(),
        )
    };
    let (a, ma) = run("9", "a");
    let (b, _) = run("9", "b");
    let (c, _) = run("10", "c");
    assert_eq!(a, b);
    assert_ne!(a, c);
    assert!(ma.lines().any(|l| l == "seed=9"), "{ma}");
}

#[test]
fn invalid_gamma_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "gamma=-1\n").unwrap();
    let out = fracnet(&[
        "generate",
        "--config",
        arg(&cfg),
        "--out-dir",
        arg(&dir.path().join("r")),
    ]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma"));
}

#[test]
fn parse_error_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "# comment\nn=64\nbogus\n").unwrap();
    let out = fracnet(&["graph", "--config", arg(&cfg)]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
}

#[test]
fn unknown_subcommand_exits_one_with_usage() {
    let out = fracnet(&["frobnicate"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(code(&fracnet(&["--help"])), 0);
}

#[test]
fn non_percolating_mask_gives_zero_permeability() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("blocked.pgm");
    // fluid on the left half only
    let mut text = String::from("P2\n32 16\n255\n");
    for _ in 0..16 {
        let row: Vec<&str> = (0..32).map(|x| if x < 16 { "255" } else { "0" }).collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    std::fs::write(&pgm, text).unwrap();
    let runs = dir.path().join("r");
    let out = fracnet(&["lbm", "--mask", arg(&pgm), "--out-dir", arg(&runs)]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(runs.join("permeability.csv")).unwrap();
    let mut lines = csv.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let k = header.iter().position(|h| *h == "K").unwrap();
    assert_eq!(row[k].parse::<f64>().unwrap(), 0.0);
}

#[test]
fn full_pipeline_at_128() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "n=128\nseed=7\nlbm_tol=1e-7\n").unwrap();
    let runs = dir.path().join("runs");
    let net = runs.join("gen").join("network.csv");
    let steps: [(&str, &[&str]); 5] = [
        ("generate", &[]),
        ("graph", &["--network"]),
        ("metrics", &["--network"]),
        ("advect", &["--network"]),
        ("lbm", &["--network"]),
    ];
    for (cmd, extra) in steps {
        let out_dir = runs.join(if cmd == "generate" { "gen" } else { cmd });
        let mut args = vec![cmd, "--config", arg(&cfg), "--out-dir", arg(&out_dir)];
        if !extra.is_empty() {
            args.push(extra[0]);
            args.push(arg(&net));
        }
        let out = fracnet(&args);
        assert_eq!(code(&out), 0, "{cmd}: {}", String::from_utf8_lossy(&out.stderr));

        let manifest = std::fs::read_to_string(out_dir.join("manifest.txt")).unwrap();
        assert!(manifest.contains(&format!("# command={cmd}")));
        assert!(manifest.contains("# version="));
        assert!(manifest.contains("# wall_clock_secs="));
        assert!(manifest.lines().any(|l| l == "n=128"));
        assert!(manifest.lines().any(|l| l == "seed=7"));
        let outputs: Vec<&str> = manifest
            .lines()
            .filter_map(|l| l.strip_prefix("# output="))
            .collect();
        assert!(!outputs.is_empty(), "{cmd}");
        for p in outputs {
            assert!(Path::new(p).exists(), "{cmd}: {p}");
        }
        // the manifest reproduces the run when fed back as a config
        let again = dir.path().join(format!("again_{cmd}"));
        let manifest_path = out_dir.join("manifest.txt");
        let mut args = vec![cmd, "--config", arg(&manifest_path), "--out-dir", arg(&again)];
        if !extra.is_empty() {
            args.push(extra[0]);
            args.push(arg(&net));
        }
        assert_eq!(code(&fracnet(&args)), 0, "{cmd} from manifest");
    }

    let a = std::fs::read_to_string(net).unwrap();
    let b = std::fs::read_to_string(dir.path().join("again_generate/network.csv")).unwrap();
    assert_eq!(a, b);
    for f in ["degree_hist.csv", "ck.csv", "census.csv", "distances.csv", "summary.csv"] {
        assert!(runs.join("metrics/metrics").join(f).exists(), "{f}");
    }
    for f in ["steady.csv", "node_values.csv", "edge_flux.csv"] {
        assert!(runs.join("advect").join(f).exists(), "{f}");
    }
    assert!(runs.join("lbm/mask.pgm").exists());
    assert!(runs.join("lbm/permeability.csv").exists());
    assert!(runs.join("graph/edges.csv").exists());
}

#[test]
fn small_sweep_writes_ensemble_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "n=64\nmode=fixed\nn_g=60\n").unwrap();
    let runs = dir.path().join("s");
    let out = fracnet(&[
        "sweep",
        "--config",
        arg(&cfg),
        "--out-dir",
        arg(&runs),
        "--vary",
        "gamma",
        "--values",
        "0.55,0.85",
        "--realizations",
        "2",
        "--metrics",
        "--advect",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    for f in ["sweep.csv", "points.csv", "report.txt", "manifest.txt"] {
        assert!(runs.join(f).exists(), "{f}");
    }
    let rows = std::fs::read_to_string(runs.join("sweep.csv")).unwrap();
    assert_eq!(rows.lines().count(), 5);
}

#[test]
fn unconverged_lbm_exits_two_and_keeps_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("open.pgm");
    let mut text = String::from("P2\n32 16\n255\n");
    for _ in 0..16 {
        text.push_str(&vec!["255"; 32].join(" "));
        text.push('\n');
    }
    std::fs::write(&pgm, text).unwrap();
    let cfg = dir.path().join("c.txt");
    std::fs::write(&cfg, "lbm_max_iters=100\n").unwrap();
    let runs = dir.path().join("r");
    let out = fracnet(&[
        "lbm",
        "--mask",
        arg(&pgm),
        "--config",
        arg(&cfg),
        "--out-dir",
        arg(&runs),
    ]);
    assert_eq!(code(&out), 2);
    let csv = std::fs::read_to_string(runs.join("permeability.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().ends_with(",false"), "{csv}");
    assert!(runs.join("manifest.txt").exists());
}
