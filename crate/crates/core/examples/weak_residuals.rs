//! Verify all three solution families against the distributional form of
//! the equations, and show that perturbed solutions light up the
//! residuals.
//!
//! Run with: cargo run -p chaplygin-piston --release --example weak_residuals

use chaplygin_piston::weak::{
    integral_weak_residual, measure_weak_residual_with, verify_solution, TestFunction,
    VerifyOptions,
};
use chaplygin_piston::{solve, solve_measure, solve_shock, Direction, PistonScenario, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let opts = VerifyOptions {
        n_test_functions: 20,
        quadrature: 256,
        ..VerifyOptions::default()
    };

    for (gamma, mach, direction) in [
        (1.0, 0.6, Direction::Advance),  // shock
        (1.0, 2.0, Direction::Advance),  // mass concentration
        (0.5, 1.0, Direction::Recede),   // rarefaction fan
    ] {
        let sc = PistonScenario::new(gamma, mach, direction)?;
        let report = verify_solution(&solve(&sc)?, &opts)?;
        println!(
            "{:11} gamma={gamma} mach={mach}: max residuals mass {:.3e}, momentum {:.3e}, \
             refinement ratio {:.3}",
            report.branch.to_string(),
            report.max_mass_res,
            report.max_mom_res,
            report.refinement_ratio
        );
        println!("{}", serde_json::to_string(&report)?);
    }

    // negatives: wrong solutions do not satisfy the identities
    let phi = TestFunction::new(0.3, -0.25, 0.35, 0.35)?;

    let sc = PistonScenario::new(1.0, 0.6, Direction::Advance)?;
    let good = solve_shock(&sc)?;
    let base = integral_weak_residual(&good, &phi, 512, opts.rule);
    let mut wrong = good;
    wrong.rho1 *= 1.01;
    wrong.downstream = State::new(wrong.rho1, 0.0);
    let off = integral_weak_residual(&wrong, &phi, 512, opts.rule);
    println!(
        "\nshock with rho1 off by 1%: residuals ({:.3e}, {:.3e}) vs exact ({:.3e}, {:.3e})",
        off.mass, off.momentum, base.mass, base.momentum
    );

    let sc = PistonScenario::new(1.0, 2.0, Direction::Advance)?;
    let measure = solve_measure(&sc)?;
    let off = measure_weak_residual_with(&sc, |t| 0.9 * t, measure.w_p, &phi, 512, opts.rule)?;
    println!(
        "measure with w_rho = 0.9t: mass residual {:.3e} (exact weight gives ~1e-11)",
        off.mass
    );
    Ok(())
}
