//! Drive the command-line front end in-process: dissect, report, match.

use discourse_dissect::cli::main_with_args;

fn run(args: &[&str]) -> i32 {
    let mut stdout = Vec::new();
    let mut stderr = Vec::new();
    let code = main_with_args(args.iter().map(|s| s.to_string()), &mut stdout, &mut stderr);
    print!("{}", String::from_utf8_lossy(&stdout));
    eprint!("{}", String::from_utf8_lossy(&stderr));
    println!("  -> exit {code}");
    code
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join("discourse-cli-session");
    let out = dir.to_string_lossy().to_string();
    let corpus = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/tsunami.txt");
    let inv = format!("{out}/inventory.json");

    run(&["discourse", "dissect", corpus, "--out", &out]);
    run(&["discourse", "report", "--inventory", &inv, "--out", &out]);
    run(&[
        "discourse",
        "match",
        "--inventory",
        &inv,
        "Children are playing game",
    ]);
    run(&[
        "discourse",
        "match",
        "--inventory",
        &inv,
        "--policy",
        "reject",
        "Of Thailand in",
    ]);

    for entry in std::fs::read_dir(&dir)? {
        println!("{}", entry?.file_name().to_string_lossy());
    }
    Ok(())
}
