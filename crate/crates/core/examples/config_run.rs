//! Drive a full sweep the way the command-line tool does: parse a config,
//! run it, and list the artifacts.  The same text format works with
//! `chaplygin-piston solve --config <file>`.
//!
//! Run with: cargo run -p chaplygin-piston --example config_run

use chaplygin_piston::driver::{parse_config_str, run, Task};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out_dir = std::env::temp_dir().join("chaplygin-piston-config-run");
    let config_text = format!(
        "# sweep both sides of the critical curve at gamma = 1\n\
         gamma = 1.0\n\
         mach = 0.6,0.9,1.0,1.5\n\
         direction = advance\n\
         t_samples = 0.5\n\
         x_samples = -1.5:0:31\n\
         seed = 42\n\
         output = {}\n",
        out_dir.display()
    );

    let cfg = parse_config_str(&config_text)?;
    let outcome = run(&cfg, Task::Solve)?;
    println!("wrote {} artifacts:", outcome.artifacts.len());
    for path in &outcome.artifacts {
        println!("  {}", path.display());
    }

    // summaries are plain JSON tagged by branch
    let summary = std::fs::read_to_string(out_dir.join("solution_g1_m0.6_advance.json"))?;
    println!("\nsolution_g1_m0.6_advance.json:\n{summary}");
    let summary = std::fs::read_to_string(out_dir.join("solution_g1_m1.5_advance.json"))?;
    println!("solution_g1_m1.5_advance.json:\n{summary}");
    Ok(())
}
