//! Equation of state and characteristic structure of the gas model.
//!
//! The gas obeys the negative pressure law P(ρ) = −s·ρ^(−γ) with
//! 0 < γ ≤ 1 and s > 0 (a generalized Chaplygin gas).  In conservative
//! variables (ρ, u) the flux is (ρu, u²/2 − A·ρ^(−α)) with
//! A = sγ/(1+γ) and α = γ+1.

use crate::error::{Error, Result};

/// Primitive flow state: density and velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State {
    /// Density, ρ ≥ 0.  ρ = 0 marks vacuum; the equation of state is
    /// undefined there.
    pub rho: f64,
    /// Velocity.
    pub u: f64,
}

impl State {
    pub fn new(rho: f64, u: f64) -> Self {
        State { rho, u }
    }
}

/// Gas model parameters: exponent γ ∈ (0, 1] and coefficient s > 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel {
    gamma: f64,
    s: f64,
}

impl GasModel {
    /// Build a gas model, validating 0 < γ ≤ 1 and s > 0.
    pub fn new(gamma: f64, s: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma <= 1.0) || !gamma.is_finite() {
            return Err(Error::OutOfRange {
                name: "gamma",
                value: gamma,
                range: "(0, 1]",
            });
        }
        if !(s > 0.0) || !s.is_finite() {
            return Err(Error::OutOfRange {
                name: "s",
                value: s,
                range: "(0, inf)",
            });
        }
        Ok(GasModel { gamma, s })
    }

    /// Gas model in piston-frame units, where the far state has ρ₀ = 1,
    /// |u₀| = 1 and the coefficient is fixed by the Mach number:
    /// s = 1/(γ·M₀²), so that the far sound speed is 1/M₀.
    pub fn normalized(gamma: f64, mach: f64) -> Result<Self> {
        if !(mach > 0.0) || !mach.is_finite() {
            return Err(Error::OutOfRange {
                name: "mach",
                value: mach,
                range: "(0, inf)",
            });
        }
        GasModel::new(gamma, 1.0 / (gamma * mach * mach))
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    /// Flux coefficient A = sγ/(1+γ).
    pub fn a(&self) -> f64 {
        self.s * self.gamma / (1.0 + self.gamma)
    }

    /// Flux exponent α = γ+1.
    pub fn alpha(&self) -> f64 {
        self.gamma + 1.0
    }

    /// Pressure P(ρ) = −s·ρ^(−γ); strictly negative and strictly
    /// increasing in ρ.
    pub fn pressure(&self, rho: f64) -> Result<f64> {
        self.require_positive(rho)?;
        Ok(-self.s * rho.powf(-self.gamma))
    }

    /// dP/dρ = sγ·ρ^(−γ−1) > 0.
    pub fn pressure_derivative(&self, rho: f64) -> Result<f64> {
        self.require_positive(rho)?;
        Ok(self.s * self.gamma * rho.powf(-self.gamma - 1.0))
    }

    /// Sound speed c(ρ) = √(sγ)·ρ^(−(γ+1)/2).
    pub fn sound_speed(&self, rho: f64) -> Result<f64> {
        self.require_positive(rho)?;
        Ok(self.sound_speed_pos(rho))
    }

    /// Characteristic speeds λ₁ = u − c, λ₂ = u + c.  The coefficient
    /// √(Aα)·ρ^(−α/2) equals the sound speed since A·α = sγ.
    pub fn eigenvalues(&self, st: State) -> Result<(f64, f64)> {
        self.require_positive(st.rho)?;
        let c = self.sound_speed_pos(st.rho);
        Ok((st.u - c, st.u + c))
    }

    /// Directional derivatives ∇λᵢ·rᵢ = ∓(2−α)/2·√(Aα·ρ^(−(α+1))) of the
    /// characteristic speeds along their own eigenvector fields.  Both
    /// vanish identically iff γ = 1, where every field is linearly
    /// degenerate.
    pub fn genuine_nonlinearity_indicator(&self, st: State) -> Result<(f64, f64)> {
        self.require_positive(st.rho)?;
        let alpha = self.alpha();
        let magnitude =
            0.5 * (2.0 - alpha) * (self.a() * alpha * st.rho.powf(-(alpha + 1.0))).sqrt();
        Ok((-magnitude, magnitude))
    }

    /// First Riemann invariant u − (2/α)·c(ρ), constant across a
    /// first-family rarefaction fan.
    pub fn first_riemann_invariant(&self, st: State) -> Result<f64> {
        self.require_positive(st.rho)?;
        Ok(st.u - 2.0 / self.alpha() * self.sound_speed_pos(st.rho))
    }

    /// Sound speed without the vacuum check; callers guarantee ρ > 0.
    pub(crate) fn sound_speed_pos(&self, rho: f64) -> f64 {
        debug_assert!(rho > 0.0);
        (self.s * self.gamma).sqrt() * rho.powf(-0.5 * (self.gamma + 1.0))
    }

    fn require_positive(&self, rho: f64) -> Result<()> {
        if rho > 0.0 && rho.is_finite() {
            Ok(())
        } else {
            Err(Error::Vacuum { rho })
        }
    }
}

/// Mach number |v|/c₀ of a speed v against a reference sound speed c₀ > 0.
pub fn mach_number(v: f64, c0: f64) -> Result<f64> {
    if !(c0 > 0.0) || !c0.is_finite() {
        return Err(Error::NonPositiveSoundSpeed { c0 });
    }
    Ok(v.abs() / c0)
}

/// Critical Mach number √(2/(1+γ)) separating the shock regime from the
/// mass-concentration regime for an advancing piston.  Lies in [1, √2)
/// for γ ∈ (0, 1].
pub fn critical_mach(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma <= 1.0) || !gamma.is_finite() {
        return Err(Error::OutOfRange {
            name: "gamma",
            value: gamma,
            range: "(0, 1]",
        });
    }
    Ok((2.0 / (1.0 + gamma)).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn pressure_unit_state() {
        let g = GasModel::new(1.0, 1.0).unwrap();
        assert_eq!(g.pressure(1.0).unwrap(), -1.0);
        assert_eq!(g.pressure(2.0).unwrap(), -0.5);
    }

    #[test]
    fn pressure_fractional_exponent() {
        // -2 * 4^(-1/2) = -1
        let g = GasModel::new(0.5, 2.0).unwrap();
        assert_relative_eq!(g.pressure(4.0).unwrap(), -1.0, max_relative = 1e-15);
    }

    #[test]
    fn pressure_rejects_vacuum() {
        let g = GasModel::new(0.5, 1.0).unwrap();
        assert!(matches!(g.pressure(0.0), Err(Error::Vacuum { .. })));
        assert!(matches!(g.pressure(-1.0), Err(Error::Vacuum { .. })));
    }

    #[test]
    fn sound_speed_values() {
        let g = GasModel::new(1.0, 1.0).unwrap();
        assert_eq!(g.sound_speed(1.0).unwrap(), 1.0);

        // sqrt(4) * 2^(-1) = 1
        let g = GasModel::new(1.0, 4.0).unwrap();
        assert_relative_eq!(g.sound_speed(2.0).unwrap(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn normalized_far_sound_speed_is_inverse_mach() {
        for &(gamma, mach) in &[(1.0, 1.0), (0.5, 2.0), (0.3, 0.7)] {
            let g = GasModel::normalized(gamma, mach).unwrap();
            assert_relative_eq!(
                g.sound_speed(1.0).unwrap(),
                1.0 / mach,
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn mach_number_values() {
        assert_eq!(mach_number(-1.0, 1.0).unwrap(), 1.0);
        assert_eq!(mach_number(2.0, 0.5).unwrap(), 4.0);
        assert_eq!(mach_number(0.0, 3.0).unwrap(), 0.0);
        assert!(matches!(
            mach_number(1.0, 0.0),
            Err(Error::NonPositiveSoundSpeed { .. })
        ));
    }

    #[test]
    fn critical_mach_values() {
        assert_eq!(critical_mach(1.0).unwrap(), 1.0);
        assert_relative_eq!(
            critical_mach(0.5).unwrap(),
            (4.0f64 / 3.0).sqrt(),
            max_relative = 1e-15
        );
        // approaches sqrt(2) as gamma -> 0+
        assert_relative_eq!(
            critical_mach(1e-12).unwrap(),
            2.0f64.sqrt(),
            max_relative = 1e-9
        );
        assert!(critical_mach(0.0).is_err());
        assert!(critical_mach(1.5).is_err());
    }

    #[test]
    fn eigenvalue_examples() {
        let g = GasModel::new(1.0, 1.0).unwrap();
        let (l1, l2) = g.eigenvalues(State::new(1.0, 0.0)).unwrap();
        assert_eq!((l1, l2), (-1.0, 1.0));

        let g = GasModel::normalized(1.0, 1.0).unwrap();
        let (l1, l2) = g.eigenvalues(State::new(1.0, -1.0)).unwrap();
        assert_relative_eq!(l1, -2.0, max_relative = 1e-14);
        assert!(l2.abs() < 1e-14);

        let g = GasModel::new(1.0, 1.0).unwrap();
        let (l1, l2) = g.eigenvalues(State::new(2.0, 3.0)).unwrap();
        assert_relative_eq!(l1, 2.5, max_relative = 1e-14);
        assert_relative_eq!(l2, 3.5, max_relative = 1e-14);
    }

    #[test]
    fn genuine_nonlinearity_vanishes_only_at_gamma_one() {
        let g = GasModel::new(1.0, 1.0).unwrap();
        let (g1, g2) = g
            .genuine_nonlinearity_indicator(State::new(0.7, 0.3))
            .unwrap();
        assert_eq!((g1, g2), (0.0, 0.0));

        let g = GasModel::normalized(0.5, 1.0).unwrap();
        for &rho in &[0.5, 1.0, 4.0] {
            let (g1, g2) = g
                .genuine_nonlinearity_indicator(State::new(rho, 0.0))
                .unwrap();
            assert!(g1 < 0.0 && g2 > 0.0);
            assert_eq!(g1, -g2);
        }
        // direct substitution at rho = 1: (2-alpha)/2 * sqrt(A*alpha) = 0.25
        let (_, g2) = g
            .genuine_nonlinearity_indicator(State::new(1.0, 0.0))
            .unwrap();
        assert_relative_eq!(g2, 0.25, max_relative = 1e-14);
        // and at rho = 4: 0.25 * sqrt(4^(-2.5)) = 2^(-4.5)
        let (_, g2) = g
            .genuine_nonlinearity_indicator(State::new(4.0, 0.0))
            .unwrap();
        assert_relative_eq!(g2, 2.0f64.powf(-4.5), max_relative = 1e-14);
    }

    proptest! {
        #[test]
        fn pressure_strictly_increasing(
            gamma in 0.01f64..=1.0,
            s in 0.01f64..100.0,
            rho in 0.01f64..100.0,
            bump in 1e-3f64..10.0,
        ) {
            let g = GasModel::new(gamma, s).unwrap();
            let p_lo = g.pressure(rho).unwrap();
            let p_hi = g.pressure(rho + bump).unwrap();
            prop_assert!(p_hi > p_lo);
            prop_assert!(p_lo < 0.0);
        }

        #[test]
        fn sound_speed_squared_matches_pressure_slope(
            gamma in 0.01f64..=1.0,
            s in 0.01f64..100.0,
            rho in 0.05f64..50.0,
        ) {
            let g = GasModel::new(gamma, s).unwrap();
            let c = g.sound_speed(rho).unwrap();
            let dp = g.pressure_derivative(rho).unwrap();
            // analytic: c^2 = dP/drho to near machine precision
            prop_assert!((c * c - dp).abs() <= 1e-12 * dp.abs());
            // central finite difference cross-check
            let h = 1e-6 * rho;
            let fd = (g.pressure(rho + h).unwrap() - g.pressure(rho - h).unwrap()) / (2.0 * h);
            prop_assert!((fd - dp).abs() <= 1e-6 * dp.abs());
        }

        #[test]
        fn eigenvalue_gap_positive(
            gamma in 0.01f64..=1.0,
            s in 0.01f64..100.0,
            rho in 0.01f64..100.0,
            u in -10.0f64..10.0,
        ) {
            let g = GasModel::new(gamma, s).unwrap();
            let (l1, l2) = g.eigenvalues(State::new(rho, u)).unwrap();
            let c = g.sound_speed(rho).unwrap();
            prop_assert!(l1 < l2);
            prop_assert!((l2 - l1 - 2.0 * c).abs() <= 1e-12 * (l2 - l1).abs().max(1.0));
        }

        #[test]
        fn nonlinearity_indicator_nonzero_below_gamma_one(
            gamma in 0.01f64..0.999,
            s in 0.01f64..100.0,
            rho in 0.01f64..100.0,
        ) {
            let g = GasModel::new(gamma, s).unwrap();
            let (g1, g2) = g.genuine_nonlinearity_indicator(State::new(rho, 0.0)).unwrap();
            prop_assert!(g1 < 0.0 && g2 > 0.0);
        }
    }
}
