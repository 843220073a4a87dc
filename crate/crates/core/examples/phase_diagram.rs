//! Classification map over the (gamma, mach) plane: the critical curve
//! mach = sqrt(2/(1+gamma)) separates the shock and concentration
//! regimes for an advancing piston.
//!
//! Run with: cargo run -p chaplygin-piston --example phase_diagram

use chaplygin_piston::driver::{linspace, phase_diagram, phase_diagram_csv};
use chaplygin_piston::{critical_mach, Direction, SolutionKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gammas = linspace(0.1, 1.0, 10);
    let machs = linspace(0.2, 1.6, 8);

    // text rendering: S = shock, M = measure
    println!("advancing piston ('S' shock, 'M' mass concentration):");
    print!("  mach\\gamma");
    for g in &gammas {
        print!(" {g:4.1}");
    }
    println!();
    for &m in machs.iter().rev() {
        print!("  {m:9.2}");
        for &g in &gammas {
            let rows = phase_diagram(&[g], &[m], Direction::Advance)?;
            let mark = match rows[0].2 {
                SolutionKind::Shock => 'S',
                SolutionKind::Measure => 'M',
                SolutionKind::Rarefaction => 'R',
            };
            print!("    {mark}");
        }
        println!();
    }
    println!("\ncritical mach at gamma 0.1, 0.5, 1.0:");
    for &g in &[0.1, 0.5, 1.0] {
        println!("  gamma {g}: {:.6}", critical_mach(g)?);
    }

    // CSV contract, same as the `phase-diagram` subcommand output
    let csv = phase_diagram_csv(&[0.5, 1.0], &[0.9, 1.0, 1.1], Direction::Advance)?;
    println!("\nCSV sample:\n{csv}");
    Ok(())
}
