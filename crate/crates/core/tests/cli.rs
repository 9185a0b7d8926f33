use std::path::PathBuf;
use std::process::{Command, Output};

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alteration-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> serde_json::Value {
    let out = lab(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("alteration-lab-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

#[test]
fn density_of_named_patterns() {
    assert_eq!(json(&["density", "--pattern", "K4"])["value"], "5/2");
    assert_eq!(json(&["density", "--pattern", "K1,3"])["strictly_balanced"], false);
    let fam = json(&["density", "--pattern", "K4^3", "--family", "S2^3"]);
    assert_eq!(fam[0]["report"]["value"], "3");
    assert_eq!(fam[1]["report"]["value"], "1");
}

#[test]
fn csv_format() {
    let out = lab(&["density", "--pattern", "C5", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("value,4/3\n"));
}

#[test]
fn copies_alpha_and_alter_on_a_host_file() {
    let dir = scratch("host");
    std::fs::create_dir_all(&dir).unwrap();
    let host = dir.join("host.txt");
    // K4 plus a pendant vertex.
    std::fs::write(&host, "5 7\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n").unwrap();
    let host = host.to_str().unwrap();
    let copies = json(&["copies", "--pattern", "K3", "--host", host, "--k-set", "0,1,4"]);
    assert_eq!(copies["summary"]["copies"], 4);
    assert_eq!(copies["k_set"]["x_k"], 1);
    assert_eq!(copies["packing"]["h_star_k"], 2);
    assert_eq!(json(&["alpha", "--host", host])["lower"], 2);
    let altered = json(&["alter", "--pattern", "K3", "--host", host, "--method", "refined"]);
    assert_eq!(altered["output"]["edges"], serde_json::json!([[3, 4]]));
}

#[test]
fn ramsey_search_finds_the_five_cycle() {
    let s = json(&[
        "ramsey-search", "--pattern", "K3", "--k", "3", "--C-grid", "1.0,1.365,1.7", "--c-grid",
        "0.55,0.7,0.75,0.81", "--trials", "100",
    ]);
    assert_eq!(s["best"]["n"], 5);
    assert_eq!(s["best"]["alpha"], 2);
}

#[test]
fn small_k_is_rejected() {
    let out = lab(&["ramsey-search", "--pattern", "K3", "--k", "2"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("k must be at least 3"));
}

#[test]
fn summaries_do_not_depend_on_worker_count() {
    let run = |workers: &str, name: &str| {
        let dir = scratch(name);
        let out = Command::new(env!("CARGO_BIN_EXE_alteration-lab"))
            .env("ALTERATION_LAB_WORKERS", workers)
            .args(["concentration", "--k", "10", "--C", "2", "--c", "1", "--trials", "12", "--k-samples", "5"])
            .arg("--out")
            .arg(&dir)
            .output()
            .unwrap();
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        let read = |f: &str| std::fs::read(dir.join(f)).unwrap();
        (read("summary.json"), read("summary.csv"), read("plot.csv"), read("trials.jsonl"))
    };
    let one = run("1", "w1");
    let four = run("4", "w4");
    assert_eq!(one.0, four.0);
    assert_eq!(one.1, four.1);
    assert_eq!(one.2, four.2);
    assert_eq!(String::from_utf8(one.3).unwrap().lines().count(), 12);
}

#[test]
fn config_file_and_flag_override() {
    let dir = scratch("config");
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("params.json");
    std::fs::write(&cfg, r#"{"pattern": "K3", "k": 12, "C": 2.0, "c": 1.0, "trials": 4, "seed": 7}"#).unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = json(&["lemma5", "--config", cfg]);
    assert_eq!(a["params"]["k"], 12);
    assert_eq!(a["identity_violations"], 0);
    let b = json(&["lemma5", "--config", cfg, "--k", "14"]);
    assert_eq!(b["params"]["k"], 14);
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"kay": 3}"#).unwrap();
    assert!(!lab(&["lemma5", "--config", bad.to_str().unwrap()]).status.success());
}

#[test]
fn games_tail_and_witness() {
    let rps = json(&[
        "rps", "--pattern", "K3", "--k", "10", "--C", "4", "--c", "2", "--trials", "10", "--decider", "always-reject",
    ]);
    assert_eq!(rps["proposer_win_frequency"], 1.0);
    let builder = json(&["builder-game", "--pattern", "K3", "--k", "9", "--n", "20", "--trials", "10"]);
    assert_eq!(builder["red_core_violations"], 0);
    let tail = json(&["tail", "--trials", "2000"]);
    assert_eq!(tail["s_size"], 36);
    assert_eq!(tail["all_hold"], true);
    let w = json(&["witness", "--pattern", "K3", "--k", "10", "--n", "20", "--p", "0.3", "--delta", "0.5"]);
    assert_eq!(w["t"], 2);
    assert_eq!(w["chain_holds"], true);
}
