use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn senticite(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_senticite"))
        .args(args)
        .env_remove("SENTICITE_RESOURCES")
        .env("RUST_LOG", "info")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn core_data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn well_formed(html: &str) -> roxmltree::Document<'_> {
    let opt = roxmltree::ParsingOptions {
        allow_dtd: true,
        ..Default::default()
    };
    roxmltree::Document::parse_with_options(html, opt).expect("well-formed report")
}

#[test]
fn train_writes_models_and_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a"), dir.path().join("b"));
    for out in [&a, &b] {
        let o = senticite(&["train", "--task", "sentiment", "--features", "only-pos", "--seed", "9", "--out", p(out)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        assert!(stdout(&o).contains("positive 18, neutral 30, negative 12"));
    }
    for name in ["sentiment-svm.model.json", "sentiment-paum.model.json"] {
        let x = std::fs::read(a.join(name)).unwrap();
        assert_eq!(x, std::fs::read(b.join(name)).unwrap(), "{name} differs between runs");
    }
}

#[test]
fn shortage_exits_with_usage_code() {
    let dir = tempfile::tempdir().unwrap();
    let o = senticite(&["train", "--task", "sentiment", "--per-class", "50", "--out", p(dir.path())]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("required"), "{}", stderr(&o));
}

#[test]
fn evaluate_prints_three_systems_and_rejects_mismatches() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path();
    let o = senticite(&["train", "--task", "sentiment", "--per-class", "8", "--out", p(m)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let svm = m.join("sentiment-svm.model.json");
    let paum = m.join("sentiment-paum.model.json");
    let test = m.join("sentiment-test.jsonl");

    let o = senticite(&["evaluate", "--model", p(&svm), "--model", p(&paum), "--corpus", p(&test)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    for row in ["svm ", "paum ", "fusion ", "Correct values", "Overall micro-F1"] {
        assert!(out.contains(row), "missing {row}: {out}");
    }

    let nature = core_data("corpus/nature.jsonl");
    let o = senticite(&["evaluate", "--model", p(&svm), "--corpus", p(&nature)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("task mismatch"));

    let empty = m.join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    let o = senticite(&["evaluate", "--model", p(&svm), "--corpus", p(&empty)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("empty"), "{}", stderr(&o));

    let o = senticite(&["evaluate", "--model", p(&m.join("nope.json"))]);
    assert_eq!(code(&o), 2);
}

#[test]
fn evaluate_json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let o = senticite(&["train", "--task", "nature", "--alg", "paum", "--out", p(dir.path())]);
    assert_eq!(code(&o), 0);
    let o = senticite(&["--json", "evaluate", "--model", p(&dir.path().join("nature-paum.model.json"))]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["task"], "nature");
    for line in stderr(&o).lines() {
        let log: serde_json::Value = serde_json::from_str(line).expect("JSON log line");
        assert!(log["level"].is_string());
    }
}

#[test]
fn crossval_prints_runs_and_mean() {
    let o = senticite(&["crossval", "--task", "sentiment", "--runs", "10", "--alg", "svm"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("F10") && out.contains("Overall"), "{out}");
    assert!(stderr(&o).contains("not balanced"));

    let o = senticite(&["--json", "crossval", "--task", "sentiment", "--runs", "1"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v[0]["scores"].as_array().unwrap().len(), 1);

    assert_eq!(code(&senticite(&["crossval", "--task", "sentiment", "--runs", "0"])), 2);
}

#[test]
fn sweep_modes() {
    let o = senticite(&["sweep", "--task", "nature", "--mode", "documents", "--values", "1,2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("2 documents"));
    let o = senticite(&["sweep", "--task", "nature", "--mode", "train-size", "--values", "10,20"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stdout(&o).contains("20 examples"));
    let o = senticite(&["sweep", "--task", "nature", "--mode", "documents", "--values", "999"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn analyze_sample_writes_well_formed_report() {
    let dir = tempfile::tempdir().unwrap();
    let sample = core_data("sample/sample.txt");
    let before = std::fs::read(&sample).unwrap();
    let o = senticite(&["analyze", p(&sample), "--out", p(dir.path())]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let html = std::fs::read_to_string(dir.path().join("sample.report.html")).unwrap();
    let doc = well_formed(&html);
    let refs = doc
        .descendants()
        .filter(|n| n.attribute("class").is_some_and(|c| c.contains("ref-node")))
        .count();
    assert_eq!(refs, 10);
    let json: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sample.analysis.json")).unwrap()).unwrap();
    assert_eq!(json["references"].as_array().unwrap().len(), 10);
    assert_eq!(std::fs::read(&sample).unwrap(), before);
}

#[test]
fn analyze_directory_in_batch_with_saved_models() {
    let dir = tempfile::tempdir().unwrap();
    let models = dir.path().join("models");
    for task in ["sentiment", "nature"] {
        let o = senticite(&["train", "--task", task, "--out", p(&models)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let docs = dir.path().join("docs");
    std::fs::create_dir(&docs).unwrap();
    std::fs::copy(core_data("sample/sample.txt"), docs.join("one.txt")).unwrap();
    std::fs::copy(core_data("sample/sample.txt"), docs.join("two.txt")).unwrap();
    std::fs::write(docs.join("empty.txt"), "").unwrap();
    std::fs::write(docs.join("notes.md"), "ignored").unwrap();
    let out = dir.path().join("out");
    let o = senticite(&["analyze", p(&docs), "--models", p(&models), "--jobs", "2", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(stderr(&o).contains("document is empty"));
    for stem in ["one", "two", "empty"] {
        let html = std::fs::read_to_string(out.join(format!("{stem}.report.html"))).unwrap();
        well_formed(&html);
    }
    assert!(!out.join("notes.report.html").exists());
    assert_eq!(
        std::fs::read(out.join("one.analysis.json")).unwrap().len(),
        std::fs::read(out.join("two.analysis.json")).unwrap().len()
    );

    std::fs::remove_file(models.join("nature-paum.model.json")).unwrap();
    let o = senticite(&["analyze", p(&docs), "--models", p(&models), "--out", p(&out)]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("nature-paum.model.json"));
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("run.toml");
    std::fs::write(&config, "epochs = 3\nseed = 5\nfeatures = \"only-pos\"\n").unwrap();
    let out = dir.path().join("m");
    let o = senticite(&["--config", p(&config), "train", "--task", "sentiment", "--alg", "svm", "--epochs", "4", "--out", p(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let model: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(out.join("sentiment-svm.model.json")).unwrap()).unwrap();
    let meta = &model["model"]["meta"];
    assert_eq!(meta["train_config"]["epochs"], 4);
    assert_eq!(meta["train_config"]["shuffle_seed"], 5);
    assert_eq!(meta["features"]["use_token_strings"], false);

    std::fs::write(&config, "epoch = 3\n").unwrap();
    assert_eq!(code(&senticite(&["--config", p(&config), "train", "--task", "sentiment"])), 2);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&senticite(&["train", "--task", "mood"])), 2);
    assert_eq!(code(&senticite(&["train"])), 2);
    assert_eq!(code(&senticite(&["train", "--task", "sentiment", "--lr", "0"])), 2);
    assert_eq!(code(&senticite(&["train", "--task", "sentiment", "--margins", "1"])), 2);
    assert_eq!(code(&senticite(&["frobnicate"])), 2);
}

#[test]
fn resource_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let run = |res: &Path| {
        Command::new(env!("CARGO_BIN_EXE_senticite"))
            .args(["crossval", "--task", "sentiment", "--runs", "1", "--alg", "svm"])
            .env("SENTICITE_RESOURCES", res)
            .output()
            .unwrap()
    };
    assert_eq!(code(&run(&dir.path().join("missing"))), 2);
    std::fs::write(dir.path().join("synonyms.tsv"), "").unwrap();
    assert_eq!(code(&run(dir.path())), 0);
}
