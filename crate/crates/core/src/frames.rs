//! Frame changes between a physical piston scenario and its normalized
//! piston-frame form.
//!
//! A physical scenario has a uniform gas at density ρ₀ filling x < 0 and a
//! piston starting at the origin with constant speed v₀ (v₀ < 0 pushes into
//! the gas).  A Galilean shift moves the observer onto the piston, and a
//! linear rescaling sets ρ₀ = 1 and |v₀| = 1, leaving only γ, the Mach
//! number M₀ = |v₀|/c₀, and the direction of motion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gas::{mach_number, GasModel, State};

/// Whether the piston moves into the gas or away from it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Piston advances into the gas; in the piston frame the gas streams
    /// toward the wall with u₀ = +1.
    Advance,
    /// Piston recedes from the gas; piston-frame initial velocity u₀ = −1.
    Recede,
}

impl std::str::FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "advance" => Ok(Direction::Advance),
            "recede" => Ok(Direction::Recede),
            other => Err(format!(
                "unknown direction '{other}' (expected 'advance' or 'recede')"
            )),
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Advance => write!(f, "advance"),
            Direction::Recede => write!(f, "recede"),
        }
    }
}

/// Piston problem in physical units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalScenario {
    rho0: f64,
    v0: f64,
    s_coeff: f64,
    gamma: f64,
}

impl PhysicalScenario {
    /// Validates ρ₀ > 0, s > 0, γ ∈ (0, 1] and v₀ ≠ 0.
    pub fn new(rho0: f64, v0: f64, s_coeff: f64, gamma: f64) -> Result<Self> {
        if !(rho0 > 0.0) || !rho0.is_finite() {
            return Err(Error::OutOfRange {
                name: "rho0",
                value: rho0,
                range: "(0, inf)",
            });
        }
        if v0 == 0.0 || !v0.is_finite() {
            return Err(Error::DegenerateScenario);
        }
        // delegate gamma/s validation
        GasModel::new(gamma, s_coeff)?;
        Ok(PhysicalScenario {
            rho0,
            v0,
            s_coeff,
            gamma,
        })
    }

    pub fn rho0(&self) -> f64 {
        self.rho0
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn s_coeff(&self) -> f64 {
        self.s_coeff
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Gas model in physical units.
    pub fn gas(&self) -> GasModel {
        GasModel::new(self.gamma, self.s_coeff).expect("validated at construction")
    }

    /// Undisturbed sound speed c₀ = √(sγ)·ρ₀^(−(γ+1)/2).
    pub fn sound_speed0(&self) -> f64 {
        self.gas().sound_speed_pos(self.rho0)
    }

    /// Galilean shift of a lab-frame sample onto the piston frame.
    pub fn to_piston_frame(&self, st: State, t: f64, x: f64) -> (State, f64, f64) {
        galilean_shift(self.v0, st, t, x)
    }

    /// Inverse Galilean shift back to the lab frame.
    pub fn to_lab_frame(&self, st: State, t: f64, x: f64) -> (State, f64, f64) {
        galilean_shift(-self.v0, st, t, x)
    }

    /// Reduce to the dimensionless piston-frame problem (γ, M₀, direction).
    pub fn normalize(&self) -> Result<PistonScenario> {
        let c0 = self.sound_speed0();
        let mach = mach_number(self.v0, c0)?;
        let direction = if self.v0 < 0.0 {
            Direction::Advance
        } else {
            Direction::Recede
        };
        PistonScenario::new(self.gamma, mach, direction)
    }

    /// Piston-frame state in normalized units: ρ → ρ/ρ₀, u → u/|v₀|.
    pub fn normalize_state(&self, st: State) -> State {
        State::new(st.rho / self.rho0, st.u / self.v0.abs())
    }

    /// Inverse of [`normalize_state`]: back to physical piston-frame units.
    ///
    /// [`normalize_state`]: PhysicalScenario::normalize_state
    pub fn denormalize_state(&self, st_norm: State) -> State {
        State::new(self.rho0 * st_norm.rho, self.v0.abs() * st_norm.u)
    }
}

/// Galilean change of variables: t' = t, x' = x − v₀t, u' = u − v₀, ρ' = ρ.
/// The piston trajectory x = v₀t maps to x' = 0.
pub fn galilean_shift(v0: f64, st: State, t: f64, x: f64) -> (State, f64, f64) {
    (State::new(st.rho, st.u - v0), t, x - v0 * t)
}

/// Normalized piston problem: exponent γ, Mach number M₀ and direction.
///
/// The implied initial data is ρ₀ = 1, u₀ = ±1 (sign by direction), with
/// EOS coefficient s = 1/(γM₀²) so that P₀ = −1/(γM₀²) and c₀ = 1/M₀.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PistonScenario {
    gamma: f64,
    mach: f64,
    direction: Direction,
}

impl PistonScenario {
    pub fn new(gamma: f64, mach: f64, direction: Direction) -> Result<Self> {
        // validates gamma and mach
        GasModel::normalized(gamma, mach)?;
        Ok(PistonScenario {
            gamma,
            mach,
            direction,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn mach(&self) -> f64 {
        self.mach
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Normalized gas model with s = 1/(γM₀²).
    pub fn gas(&self) -> GasModel {
        GasModel::normalized(self.gamma, self.mach).expect("validated at construction")
    }

    /// Piston-frame initial velocity: +1 when advancing, −1 when receding.
    pub fn initial_velocity(&self) -> f64 {
        match self.direction {
            Direction::Advance => 1.0,
            Direction::Recede => -1.0,
        }
    }

    /// Piston-frame initial state (1, ±1).
    pub fn initial_state(&self) -> State {
        State::new(1.0, self.initial_velocity())
    }

    /// Normalized initial pressure P₀ = −1/(γM₀²).
    pub fn initial_pressure(&self) -> f64 {
        -1.0 / (self.gamma * self.mach * self.mach)
    }

    /// The canonical physical scenario reproducing this normalized problem:
    /// ρ₀ = 1, v₀ = ∓1, s = 1/(γM₀²).
    pub fn canonical_physical(&self) -> PhysicalScenario {
        let v0 = match self.direction {
            Direction::Advance => -1.0,
            Direction::Recede => 1.0,
        };
        PhysicalScenario::new(1.0, v0, 1.0 / (self.gamma * self.mach * self.mach), self.gamma)
            .expect("canonical parameters are valid")
    }
}
