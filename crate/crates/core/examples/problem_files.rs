//! Write the bundled cases as problem files and run each through the CLI
//! dispatcher. `cargo run --example problem_files -- DIR` keeps the files.

use logfree::cli::run;
use logfree::fixtures::{check_fixture, corpus};
use logfree::problem::Options;

fn main() -> std::io::Result<()> {
    let dir = std::env::args().nth(1);
    for f in corpus() {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d)?;
            std::fs::write(format!("{d}/{}.json", f.name), f.problem.to_json() + "\n")?;
        }
        let out = run(f.command, &f.problem, &Options::default());
        let bad = check_fixture(&f, &out);
        println!("{:45} {:15} exit {} {}", f.name, f.command.name(), out.exit_code, if bad.is_empty() { "ok" } else { "FAIL" });
    }
    Ok(())
}
