//! Run a reduced version of the built-in verification batch in-process and
//! print the per-suite summary (the CLI command `verify paper-suite` runs
//! the full counts).
//!
//! Run with `cargo run --example verify_suite`.

use noether_qds::harness::{paper_suite_recipes, verify_equivalences};
use noether_qds::ToleranceConfig;

fn main() -> noether_qds::Result<()> {
    let recipes = paper_suite_recipes(7, Some(5));
    let summary = verify_equivalences(&recipes, &ToleranceConfig::default())?;
    print!("{}", summary.render_text());
    std::process::exit(if summary.all_pass() { 0 } else { 1 });
}
