//! The JSON report printed by `dslice bound`, built through the library.

use dslice::cli::{run, EXIT_COMPLETE};

fn main() {
    let knot = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "2b(9/4)^2".into());
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(["dslice", "bound", knot.as_str()], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));
    eprint!("{}", String::from_utf8_lossy(&err));
    if code != EXIT_COMPLETE {
        eprintln!("exit code {code}");
    }
}
