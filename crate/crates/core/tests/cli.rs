use std::process::{Command, Output};

fn effsim(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_effsim")).args(args).env_remove("EFFSIM_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn queens_json_shape() {
    let o = effsim(&["queens", "--n", "4", "--pipeline", "naive", "--output", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"n\":4,\"solutions\":[[2,4,1,3],[3,1,4,2]],\"count\":2}\n");
}

#[test]
fn queens_text() {
    let o = effsim(&["queens", "--n", "4", "--pipeline", "globalT"]);
    assert_eq!(stdout(&o), "2 4 1 3\n3 1 4 2\ncount: 2\n");
}

#[test]
fn usage_errors() {
    for args in [
        &["queens", "--n", "0", "--pipeline", "naive"][..],
        &["queens", "--n", "4", "--pipeline", "nope"],
        &["difftest", "--suite", "T-nope"],
        &["difftest", "--trials", "0"],
        &["lemmas", "--depth", "11"],
        &["frobnicate"],
        &[],
    ] {
        let o = effsim(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn suite_json_is_reproducible() {
    let args = ["difftest", "--suite", "T-trail", "--trials", "100", "--seed", "9", "--output", "json"];
    let (a, b) = (effsim(&args), effsim(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("{\"suite\":\"T-trail\",\"seed\":9,\"trials\":100,"));
}

#[test]
fn seed_falls_back_to_environment() {
    let run = |env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_effsim"));
        c.args(["laws", "--suite", "state", "--trials", "5", "--output", "json"]);
        match env {
            Some(v) => c.env("EFFSIM_SEED", v),
            None => c.env_remove("EFFSIM_SEED"),
        };
        stdout(&c.output().unwrap())
    };
    assert!(run(Some("77")).contains("\"seed\":77"));
    assert!(run(None).contains("\"seed\":42"));
}

#[test]
fn caught_mutant_exits_1() {
    let o = effsim(&["difftest", "--suite", "unmarked-branch", "--trials", "300", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("unmarked-branch: FAILED"));
}

#[test]
fn bench_names_each_pipeline_once() {
    let o = effsim(&["bench", "--n", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("agreement: all 10 pipelines return the same 10 solutions"));
    for p in ["naive", "local", "global", "sim", "fusedF", "localM", "globalM", "globalT", "simT", "fusedTF"] {
        let n = out.lines().filter(|l| l.split_whitespace().next() == Some(p)).count();
        assert_eq!(n, 1, "{p}");
    }
}

#[test]
fn trace_json_lists_steps() {
    let o = effsim(&["trace", "--pipeline", "fusedTF", "--n", "4", "--output", "json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("{\"n\":4,\"pipeline\":\"fusedTF\",\"count\":2,\"steps\":[{"), "{}", &out[..80]);
}

#[test]
fn all_lemmas_pass_by_default() {
    let o = effsim(&["lemmas", "--trials", "20"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().filter(|l| l.contains(": ok")).count(), 8);
}
