//! Subcritical advancing piston: construct the shock, check the jump
//! conditions and the entropy condition, and print a profile.
//!
//! Run with: cargo run -p chaplygin-piston --example shock_wave

use chaplygin_piston::weak::entropy_check;
use chaplygin_piston::{
    classify, critical_mach, sample, solve, solve_shock, Direction, PistonScenario,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = 0.5;
    let mach = 0.8;
    let sc = PistonScenario::new(gamma, mach, Direction::Advance)?;

    println!(
        "gamma = {gamma}, mach = {mach} (critical = {:.6}) -> {}",
        critical_mach(gamma)?,
        classify(&sc)
    );

    let shock = solve_shock(&sc)?;
    println!("downstream density rho1 = {:.12}", shock.rho1);
    println!("shock speed       sigma = {:.12}", shock.sigma);

    let (mass_res, mom_res) = shock.rh_residuals();
    println!("jump-condition residuals: mass {mass_res:.3e}, momentum {mom_res:.3e}");

    let entropy = entropy_check(&shock)?;
    println!(
        "entropy condition: family 1 {:?} (lambda1 {:.4} > sigma {:.4} > {:.4}), admissible = {}",
        entropy.family1,
        entropy.lambda1_upstream,
        entropy.sigma,
        entropy.lambda1_downstream,
        entropy.admissible
    );

    // self-similar profile at t = 1
    let sol = solve(&sc)?;
    let t = 1.0;
    println!("\n  x        rho        u");
    let mut x = -1.0;
    while x <= 0.0 {
        let st = sample(&sol, t, x)?.flow().expect("function solution");
        println!("{x:+.2}  {:9.6}  {:+9.6}", st.rho, st.u);
        x += 0.125;
    }
    Ok(())
}
