//! Drives the command-line front end in-process and lists the artifacts it
//! writes. Equivalent to running the `elastica-lab` binary with the same
//! arguments.
//!
//! ```text
//! cargo run --release --example export_artifacts -- /tmp/elastica
//! ```

use std::path::PathBuf;

use elastica_lab::cli;

fn main() {
    let dir: PathBuf = std::env::args_os()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("elastica-lab-artifacts"));
    let dir_arg = dir.to_string_lossy().into_owned();

    let runs: [&[&str]; 4] = [
        &["drop", "solve"],
        &["critical", "--periods", "2"],
        &["counterexample", "dumbbell", "--sweep", "5,20"],
        &["minimize", "--init", "fourier", "--nodes", "256", "--seed", "3"],
    ];
    for args in runs {
        let argv = ["elastica-lab"]
            .iter()
            .chain(args)
            .copied()
            .chain(["--output-dir", &dir_arg, "--grid-n", "512"]);
        let mut sink = Vec::new();
        let code = cli::run_with(argv, &mut sink, &mut std::io::stderr());
        println!("{:<50} exit {code}, {} bytes of JSON", args.join(" "), sink.len());
    }

    let mut files: Vec<_> = std::fs::read_dir(&dir)
        .expect("output directory")
        .flatten()
        .map(|e| e.path())
        .collect();
    files.sort();
    for f in files {
        println!("{}", f.display());
    }
}
