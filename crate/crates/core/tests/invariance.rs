//! Operational checks that the Galilean shift and the nondimensional
//! rescaling leave the flow equations invariant: a solution computed in
//! the normalized piston frame, mapped back to physical units, satisfies
//! the physical-units equations pointwise and across jumps.

use chaplygin_piston::{
    sample, solve, solve_rarefaction, solve_shock, PhysicalScenario, SamplePoint, State,
};

/// Physical flux of the system in (ρ, u) variables.
fn flux(phys: &PhysicalScenario, st: State) -> (f64, f64) {
    let gas = phys.gas();
    (
        st.rho * st.u,
        0.5 * st.u * st.u - gas.a() * st.rho.powf(-gas.alpha()),
    )
}

/// Sample the lab-frame solution of a physical scenario at (t, x) via the
/// normalize -> solve -> denormalize pipeline.
fn lab_sample(phys: &PhysicalScenario, t: f64, x: f64) -> State {
    let sc = phys.normalize().unwrap();
    let sol = solve(&sc).unwrap();
    // piston frame, then rescale lengths by |v0| (time scale T = 1)
    let (_, tp, xp) = phys.to_piston_frame(State::new(0.0, 0.0), t, x);
    let norm = sample(&sol, tp, xp / phys.v0().abs())
        .unwrap()
        .flow()
        .expect("function solution");
    let piston_frame = phys.denormalize_state(norm);
    let (lab, _, _) = phys.to_lab_frame(piston_frame, tp, xp);
    lab
}

#[test]
fn shock_solution_is_frame_invariant() {
    // an advancing piston in stretched units (normalizes to mach ~0.85)
    let phys = PhysicalScenario::new(2.0, -0.8, 5.0, 0.5).unwrap();
    let sc = phys.normalize().unwrap();
    let shock = solve_shock(&sc).unwrap();

    // lab-frame wave speed and states across the jump
    let sigma_lab = phys.v0() + phys.v0().abs() * shock.sigma;
    let up_lab = State::new(phys.rho0(), 0.0);
    let down_lab = State::new(phys.rho0() * shock.rho1, phys.v0());

    // Rankine-Hugoniot closes in physical units
    let (f0, g0) = flux(&phys, up_lab);
    let (f1, g1) = flux(&phys, down_lab);
    let rm = sigma_lab * (down_lab.rho - up_lab.rho) - (f1 - f0);
    let rq = sigma_lab * (down_lab.u - up_lab.u) - (g1 - g0);
    assert!(rm.abs() < 1e-12 * down_lab.rho, "lab mass residual {rm:.2e}");
    assert!(rq.abs() < 1e-12 * down_lab.u.abs().max(1.0), "lab momentum residual {rq:.2e}");

    // the mapped solution equals the directly constructed lab solution
    for &t in &[0.4, 1.0, 2.5] {
        for frac in [-1.8, -1.2, -0.6, -0.2, -0.05] {
            // points on both sides of the lab shock x = v0 t + |v0| sigma t
            let x = phys.v0() * t + phys.v0().abs() * shock.sigma * t + frac;
            if x - phys.v0() * t >= 0.0 {
                continue; // outside the gas domain
            }
            let mapped = lab_sample(&phys, t, x);
            let direct = if x < sigma_lab * t { up_lab } else { down_lab };
            assert!(
                (mapped.rho - direct.rho).abs() <= 1e-12 * direct.rho,
                "rho mismatch at (t={t}, x={x}): {} vs {}",
                mapped.rho,
                direct.rho
            );
            assert!(
                (mapped.u - direct.u).abs() <= 1e-12 * direct.u.abs().max(1.0),
                "u mismatch at (t={t}, x={x}): {} vs {}",
                mapped.u,
                direct.u
            );
        }
    }
}

#[test]
fn fan_characteristics_are_frame_invariant() {
    // a receding piston in stretched units: inside the fan, the physical
    // slope (x - v0 t)/t equals the physical first characteristic speed
    let phys = PhysicalScenario::new(0.7, 1.6, 2.5, 0.4).unwrap();
    let sc = phys.normalize().unwrap();
    let fan = solve_rarefaction(&sc).unwrap();
    let gas = phys.gas();

    let t = 1.3;
    for i in 0..=32 {
        let eta_norm = fan.eta_head + (fan.eta_tail - fan.eta_head) * i as f64 / 32.0;
        // physical piston-frame position of this fan ray at time t
        let xp = eta_norm * phys.v0().abs() * t;
        let state_piston = phys.denormalize_state(fan.fan_state(eta_norm));
        let (l1, _) = gas.eigenvalues(state_piston).unwrap();
        assert!(
            (xp / t - l1).abs() < 1e-12 * l1.abs().max(1.0),
            "eta != lambda1 in physical units at ray {i}: {} vs {l1}",
            xp / t
        );
    }

    // and the lab-frame sampling pipeline reproduces the far state ahead
    // of the fan head
    let x_head_lab = phys.v0() * t + fan.eta_head * phys.v0().abs() * t;
    let ahead = lab_sample(&phys, t, x_head_lab - 0.3);
    assert!((ahead.rho - phys.rho0()).abs() < 1e-12);
    assert!(ahead.u.abs() < 1e-12);
}

#[test]
fn measure_branch_maps_to_wall_atom() {
    let phys = PhysicalScenario::new(1.5, -2.0, 0.25, 1.0).unwrap();
    let sc = phys.normalize().unwrap();
    let sol = solve(&sc).unwrap();
    // the piston path in the lab frame is x = v0 t; the atom rides it
    let t = 0.8;
    let (_, tp, xp) = phys.to_piston_frame(State::new(0.0, 0.0), t, phys.v0() * t);
    match sample(&sol, tp, xp / phys.v0().abs()).unwrap() {
        SamplePoint::BoundaryAtom { w_rho, .. } => assert_eq!(w_rho, t),
        other => panic!("expected the wall atom on the piston path, got {other:?}"),
    }
}
