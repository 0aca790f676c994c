//! Drives the command-line front end in-process.

use subshift_k::cli::run;

fn main() {
    let dir = std::env::temp_dir().join("subshift-k-example");
    std::fs::create_dir_all(&dir).unwrap();
    let full3 = dir.join("full3.json");
    std::fs::write(&full3, r#"{"type":"sft","alphabet":["0","1","2"],"forbidden":[]}"#).unwrap();
    let full3 = full3.to_str().unwrap();
    let expanded = dir.join("full3-expanded.json");
    let expanded = expanded.to_str().unwrap();
    for args in [
        vec!["invariants", full3],
        vec!["transform", full3, "--move", r#"{"move":"expand","a0":"0","star":"*"}"#, "--out", expanded],
        vec!["compare", full3, expanded],
    ] {
        let out = run(["subshift-k"].into_iter().chain(args.iter().copied()).chain(["--no-cache"]));
        println!("$ subshift-k {}\n{}{}[exit {}]\n", args.join(" "), out.stdout, out.stderr, out.code);
    }
}
