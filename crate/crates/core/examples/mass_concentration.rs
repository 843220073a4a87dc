//! Supercritical advancing piston: no bounded weak solution exists, and
//! the gas concentrates on the wall as a weighted Dirac measure.
//!
//! Run with: cargo run -p chaplygin-piston --example mass_concentration

use chaplygin_piston::{
    classify, critical_mach, sample, solve, solve_measure, solve_shock, Direction, Error,
    PistonScenario, SamplePoint,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 1.0;
    let crit = critical_mach(gamma)?;

    // the shock family exists only below the critical Mach number
    let supercritical = PistonScenario::new(gamma, 2.0, Direction::Advance)?;
    match solve_shock(&supercritical) {
        Err(Error::NoIntegralSolution { mach, critical }) => {
            println!("no shock at mach {mach} (critical {critical}); switching branch")
        }
        other => panic!("expected the measure branch, got {other:?}"),
    }

    let sol = solve_measure(&supercritical)?;
    println!(
        "branch = {}, wall force weight w_p = {:.12}",
        classify(&supercritical),
        sol.w_p
    );
    println!("wall mass w_rho(t) grows linearly: w_rho(2) = {}", sol.w_rho(2.0));

    // w_p vanishes exactly at the threshold and saturates at 1/2
    println!("\n  mach       w_p");
    for &mach in &[crit, 1.2, 1.5, 2.0, 5.0, 1e3] {
        let m = solve_measure(&PistonScenario::new(gamma, mach, Direction::Advance)?)?;
        println!("{mach:8.3}  {:.12}", m.w_p);
    }

    // sampling: interior is the unperturbed stream, the wall carries the atom
    let full = solve(&supercritical)?;
    match sample(&full, 1.5, 0.0)? {
        SamplePoint::BoundaryAtom { w_rho, w_p } => {
            println!("\nat (t = 1.5, x = 0): wall atom with mass {w_rho}, force weight {w_p:.6}")
        }
        SamplePoint::Flow(st) => panic!("expected the wall atom, got {st:?}"),
    }
    let st = sample(&full, 1.5, -0.75)?.flow().unwrap();
    println!("at (t = 1.5, x = -0.75): flow state ({}, {})", st.rho, st.u);
    Ok(())
}
