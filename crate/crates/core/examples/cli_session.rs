// Drive the command line in-process: generate a graph file, then verify
// and enumerate on it.

use std::error::Error;

use cga::cli;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = std::env::temp_dir().join(format!("cga-cli-session-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let graph = dir.join("g.el");
    let graph = graph.to_str().ok_or("non-UTF-8 temp path")?;

    let runs: [&[&str]; 3] = [
        &["generate", "--b", "2", "--height", "5", "--c", "2", "--seed", "1", "--out", graph],
        &["enumerate", "--graph", graph, "--alpha", "0.5", "--beta", "0.5", "--height", "1"],
        &["verify", "--graph", graph, "--alpha", "0.5", "--beta", "0.5", "--set", "0,1", "--hstar", "3"],
    ];
    for args in runs {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(std::iter::once("cga").chain(args.iter().copied()), &mut out, &mut err);
        println!("$ cga {}  -> exit {code}", args.join(" "));
        print!("{}", String::from_utf8_lossy(&out));
        eprint!("{}", String::from_utf8_lossy(&err));
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}

fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
