//! Run CLI jobs in-process.

use cmbkf::cli::{run, Command, Format, JobSpec, Options};
use serde_json::json;

fn main() {
    let options = Options { format: Format::Text, ..Options::default() };
    let jobs = [
        (Command::Classify, json!({"field": {"p": 3, "f": 2, "eisenstein": [-3, 1]}, "range": [0, 1]})),
        (Command::Hom, json!([{"field": "Qp", "phi": [1]}, {"field": "Qp", "phi": [2]}])),
    ];
    for (command, input) in jobs {
        let (code, out) = run(&JobSpec { command, input, options: options.clone() });
        println!("{} -> exit {code}\n{out}", command.name());
    }
}
