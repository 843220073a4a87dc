use crate::exact::SolutionKind;

/// Errors produced by solvers, verifiers and the configuration layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Density was zero or negative where the equation of state needs ρ > 0.
    #[error("vacuum state: density {rho} is not strictly positive")]
    Vacuum { rho: f64 },

    /// A reference sound speed must be strictly positive.
    #[error("reference sound speed {c0} is not strictly positive")]
    NonPositiveSoundSpeed { c0: f64 },

    /// Parameter outside its admissible range (e.g. γ ∉ (0, 1], M₀ ≤ 0, t ≤ 0).
    #[error("{name} = {value} outside admissible range {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    /// A physical scenario with zero piston speed has no Mach number.
    #[error("degenerate scenario: piston speed is zero")]
    DegenerateScenario,

    /// No bounded integral weak solution exists at this Mach number; the
    /// mass-concentration branch applies instead.
    #[error(
        "no integral weak solution: mach {mach} >= critical {critical}; \
         use the measure branch"
    )]
    NoIntegralSolution { mach: f64, critical: f64 },

    /// A branch-specific constructor was called on a scenario that
    /// classifies differently.
    #[error("wrong branch: scenario classifies as {actual:?}, not {requested:?}")]
    WrongBranch {
        requested: SolutionKind,
        actual: SolutionKind,
    },

    /// The rarefaction-fan formulas are singular at γ = 1, where both
    /// characteristic fields are linearly degenerate and the wave is a
    /// contact discontinuity.
    #[error("degenerate field: fan construction is singular at gamma = 1")]
    DegenerateField,

    /// A sample point lies outside the closure of the flow domain.
    #[error("sample point (t={t}, x={x}) outside the domain t > 0, x <= 0")]
    OutsideDomain { t: f64, x: f64 },

    /// A Dirac weight evaluated to NaN or infinity.
    #[error("non-finite Dirac weight {value} at t = {t}")]
    NonFiniteWeight { t: f64, value: f64 },

    /// A weak-form residual evaluated to NaN or infinity.
    #[error("non-finite {identity} residual for test function at ({t_center}, {x_center})")]
    NonFiniteResidual {
        identity: &'static str,
        t_center: f64,
        x_center: f64,
    },

    /// The finite-volume update produced a non-positive density.
    #[error("positivity loss in cell {cell} at t = {time}: rho = {rho}")]
    PositivityLoss { cell: usize, time: f64, rho: f64 },

    /// The finite-volume run produced a non-finite value.
    #[error("non-finite state in cell {cell} at t = {time}")]
    NonFiniteState { cell: usize, time: f64 },

    /// Root bracketing failed (should not happen for admissible inputs).
    #[error("root bracketing failed: {context}")]
    Bracketing { context: String },

    /// Configuration file problem, with the offending line when known.
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
