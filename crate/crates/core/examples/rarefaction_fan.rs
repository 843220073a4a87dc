//! Receding piston: the first-family rarefaction fan, its characteristic
//! identities, the vacuum limit at high Mach number, and why the
//! second-family wave is rejected.
//!
//! Run with: cargo run -p chaplygin-piston --example rarefaction_fan

use chaplygin_piston::exact::SecondFamilyRejection;
use chaplygin_piston::{
    high_mach_limits, second_family_diagnostic, solve_rarefaction, Direction, PistonScenario,
    State,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sc = PistonScenario::new(0.5, 1.0, Direction::Recede)?;
    let fan = solve_rarefaction(&sc)?;
    println!(
        "fan: head slope {} tail slope {} face density rho1 = {:.9}",
        fan.eta_head, fan.eta_tail, fan.rho1
    );

    // inside the fan, eta equals the first characteristic speed and the
    // first Riemann invariant is frozen
    let gas = sc.gas();
    let invariant = gas.first_riemann_invariant(State::new(1.0, -1.0))?;
    println!("\n  eta        rho        u          eta-lambda1   invariant drift");
    for i in 0..=8 {
        let eta = fan.eta_head + (fan.eta_tail - fan.eta_head) * i as f64 / 8.0;
        let st = fan.fan_state(eta);
        let (l1, _) = gas.eigenvalues(st)?;
        let drift = gas.first_riemann_invariant(st)? - invariant;
        println!(
            "{eta:+.4}  {:9.6}  {:+9.6}  {:+.3e}    {:+.3e}",
            st.rho,
            st.u,
            eta - l1,
            drift
        );
    }

    // vacuum forms ahead of the piston as the Mach number grows
    let limits = high_mach_limits(0.5, &[1e2, 1e4, 1e6])?;
    println!("\nhigh-Mach limits (gamma = 0.5):");
    for p in &limits.probes {
        println!(
            "  mach {:8.0e}: eta_head {:+.8} eta_tail {:+.8} rho(face) {:.3e} P0 {:+.3e}",
            p.mach, p.eta_head, p.eta_tail, p.rho_tail, p.p0
        );
    }
    println!(
        "  limits: eta_head -> {}, eta_tail -> {}, face density monotone: {}",
        limits.eta_head_limit, limits.eta_tail_limit, limits.rho_tail_decreasing
    );

    // the second characteristic family never yields a physical wave here
    println!("\nsecond-family candidate (gamma = 0.5):");
    for &mach in &[1.0, 4.0 / 3.0, 3.0] {
        let rep = second_family_diagnostic(&PistonScenario::new(0.5, mach, Direction::Recede)?)?;
        let why = match rep.rejection {
            SecondFamilyRejection::ExceedsUpstreamDensity { rho1 } => {
                format!("face density {rho1:.4} exceeds the upstream density 1")
            }
            SecondFamilyRejection::Diverges => "face density diverges".to_string(),
            SecondFamilyRejection::NegativeBase { base } => {
                format!("negative base {base:.4}, no real density")
            }
        };
        println!("  mach {mach:.4}: rejected, {why}");
    }
    Ok(())
}
