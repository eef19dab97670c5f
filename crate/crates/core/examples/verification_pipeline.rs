//! The end-to-end pipeline on the bundled scenario files.

use eicat::cli::{run_pipeline, PipelineOptions};

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    for name in ["z2orb", "kron", "diamond", "collapse"] {
        let text = std::fs::read_to_string(format!("{dir}/{name}.cat")).unwrap();
        let report = run_pipeline(&text, &PipelineOptions::default()).unwrap();
        println!("== {name}\n{}", report.to_text());
    }
}
