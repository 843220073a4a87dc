//! A piston problem posed in physical units, reduced to the normalized
//! piston frame, solved there, and mapped back to the lab frame, where
//! the jump conditions are re-checked with the physical gas model.
//!
//! Run with: cargo run -p chaplygin-piston --example physical_units

use chaplygin_piston::{solve_shock, PhysicalScenario, State};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // dense gas, piston pushing in at 0.75 length/time
    let phys = PhysicalScenario::new(1.8, -0.75, 3.0, 0.6)?;
    println!(
        "physical scenario: rho0 = {}, v0 = {}, s = {}, gamma = {}",
        phys.rho0(),
        phys.v0(),
        phys.s_coeff(),
        phys.gamma()
    );
    println!("undisturbed sound speed c0 = {:.6}", phys.sound_speed0());

    let sc = phys.normalize()?;
    println!(
        "normalized: mach = {:.6}, direction = {}, P0 = {:.6}",
        sc.mach(),
        sc.direction(),
        sc.initial_pressure()
    );

    let shock = solve_shock(&sc)?;
    println!(
        "piston-frame solution: rho1 = {:.9}, sigma = {:.9}",
        shock.rho1, shock.sigma
    );

    // back to the lab frame: scale the states, then undo the Galilean shift
    let up_piston = phys.denormalize_state(shock.upstream);
    let down_piston = phys.denormalize_state(shock.downstream);
    let (up_lab, _, _) = phys.to_lab_frame(up_piston, 0.0, 0.0);
    let (down_lab, _, _) = phys.to_lab_frame(down_piston, 0.0, 0.0);
    let sigma_lab = phys.v0() + phys.v0().abs() * shock.sigma;
    println!(
        "lab frame: upstream ({:.4}, {:+.4}), downstream ({:.4}, {:+.4}), shock speed {:.6}",
        up_lab.rho, up_lab.u, down_lab.rho, down_lab.u, sigma_lab
    );

    // the physical-units jump conditions close on the lab-frame states
    let gas = phys.gas();
    let flux = |st: State| {
        (
            st.rho * st.u,
            0.5 * st.u * st.u - gas.a() * st.rho.powf(-gas.alpha()),
        )
    };
    let (f0, g0) = flux(up_lab);
    let (f1, g1) = flux(down_lab);
    let rh_mass = sigma_lab * (down_lab.rho - up_lab.rho) - (f1 - f0);
    let rh_mom = sigma_lab * (down_lab.u - up_lab.u) - (g1 - g0);
    println!("lab-frame jump residuals: mass {rh_mass:.3e}, momentum {rh_mom:.3e}");
    Ok(())
}
