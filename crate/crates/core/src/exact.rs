//! Exact self-similar solutions of the normalized piston problem.
//!
//! An advancing piston produces a left-running shock when the Mach number
//! is below √(2/(1+γ)); at or above that threshold no bounded weak
//! solution exists and the gas concentrates on the wall as a weighted
//! Dirac measure.  A receding piston always produces a first-family
//! rarefaction fan (for γ < 1; at γ = 1 the field is linearly degenerate
//! and the fan formulas are singular).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::{Direction, PistonScenario};
use crate::gas::{critical_mach, State};

/// Which of the three solution families a scenario falls into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolutionKind {
    Shock,
    Measure,
    Rarefaction,
}

impl std::fmt::Display for SolutionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SolutionKind::Shock => write!(f, "shock"),
            SolutionKind::Measure => write!(f, "measure"),
            SolutionKind::Rarefaction => write!(f, "rarefaction"),
        }
    }
}

/// Classify a scenario: advancing below the critical Mach number gives a
/// shock, at or above it a mass concentration; receding always gives a
/// rarefaction.
pub fn classify(sc: &PistonScenario) -> SolutionKind {
    match sc.direction() {
        Direction::Recede => SolutionKind::Rarefaction,
        Direction::Advance => {
            let crit = critical_mach(sc.gamma()).expect("scenario gamma is validated");
            if sc.mach() < crit {
                SolutionKind::Shock
            } else {
                SolutionKind::Measure
            }
        }
    }
}

/// Hugoniot function f(ρ) = (ρ−1)(1−ρ^(−γ−1))/(ρ+1).
///
/// f(1) = 0, f(ρ) → 1 as ρ → ∞, and f is strictly increasing for ρ > 1,
/// so f(ρ₁) = (1+γ)M₀²/2 has a unique downstream density root ρ₁ > 1
/// exactly when M₀ is subcritical.
pub fn hugoniot_f(gamma: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Vacuum { rho });
    }
    Ok((rho - 1.0) * (1.0 - rho.powf(-gamma - 1.0)) / (rho + 1.0))
}

/// Derivative of [`hugoniot_f`] in ρ:
/// f'(ρ) = [2(1−ρ^(−α)) + α(ρ²−1)ρ^(−α−1)] / (ρ+1)², α = γ+1.
/// Both numerator terms are positive for ρ > 1.
pub fn hugoniot_f_prime(gamma: f64, rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::Vacuum { rho });
    }
    let alpha = gamma + 1.0;
    let num = 2.0 * (1.0 - rho.powf(-alpha)) + alpha * (rho * rho - 1.0) * rho.powf(-alpha - 1.0);
    Ok(num / ((rho + 1.0) * (rho + 1.0)))
}

/// Shock connecting the oncoming state (1, 1) to the wall state (ρ₁, 0).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShockSolution {
    pub scenario: PistonScenario,
    /// Downstream density, ρ₁ > 1.
    pub rho1: f64,
    /// Shock speed σ = −1/(ρ₁−1) < 0.
    pub sigma: f64,
    /// State ahead of the shock (piston frame): (1, 1).
    pub upstream: State,
    /// State between shock and wall: (ρ₁, 0).
    pub downstream: State,
}

impl ShockSolution {
    /// Self-similar profile: upstream for η < σ, downstream for η ≥ σ
    /// (points on the discontinuity take the piston-side state).
    pub fn state_at(&self, eta: f64) -> State {
        if eta < self.sigma {
            self.upstream
        } else {
            self.downstream
        }
    }

    /// Residuals of the two jump conditions
    /// σ·(ρ₁−ρ₀) − (ρ₁u₁−ρ₀u₀) and σ·(u₁−u₀) − (F(V₁)−F(V₀)) with
    /// F = u²/2 − Aρ^(−α); both vanish for an exact shock.
    pub fn rh_residuals(&self) -> (f64, f64) {
        let g = self.scenario.gas();
        let (a, alpha) = (g.a(), g.alpha());
        let (v0, v1) = (self.upstream, self.downstream);
        let mass = self.sigma * (v1.rho - v0.rho) - (v1.rho * v1.u - v0.rho * v0.u);
        let flux0 = 0.5 * v0.u * v0.u - a * v0.rho.powf(-alpha);
        let flux1 = 0.5 * v1.u * v1.u - a * v1.rho.powf(-alpha);
        let momentum = self.sigma * (v1.u - v0.u) - (flux1 - flux0);
        (mass, momentum)
    }
}

/// Construct the shock for a subcritical advancing scenario.
///
/// ρ₁ is the unique root > 1 of f(ρ₁) = (1+γ)M₀²/2, found by geometric
/// bracketing, bisection, and a short Newton polish.
pub fn solve_shock(sc: &PistonScenario) -> Result<ShockSolution> {
    match classify(sc) {
        SolutionKind::Shock => {}
        SolutionKind::Measure => {
            return Err(Error::NoIntegralSolution {
                mach: sc.mach(),
                critical: critical_mach(sc.gamma())?,
            });
        }
        actual => {
            return Err(Error::WrongBranch {
                requested: SolutionKind::Shock,
                actual,
            });
        }
    }
    let gamma = sc.gamma();
    let target = 0.5 * (1.0 + gamma) * sc.mach() * sc.mach();
    let rho1 = shock_density_root(gamma, target)?;
    let sigma = -1.0 / (rho1 - 1.0);
    Ok(ShockSolution {
        scenario: *sc,
        rho1,
        sigma,
        upstream: State::new(1.0, 1.0),
        downstream: State::new(rho1, 0.0),
    })
}

fn shock_density_root(gamma: f64, target: f64) -> Result<f64> {
    let f = |rho: f64| (rho - 1.0) * (1.0 - rho.powf(-gamma - 1.0)) / (rho + 1.0);

    // Geometric expansion until the target is bracketed; f < 1 always and
    // target < 1 for subcritical data, so this terminates.
    let mut lo = 1.0 + 1e-12;
    let mut hi = 2.0;
    let mut rounds = 0;
    while f(hi) <= target {
        lo = hi;
        hi *= 2.0;
        rounds += 1;
        if rounds > 1000 {
            return Err(Error::Bracketing {
                context: format!("hugoniot target {target} not bracketed (gamma = {gamma})"),
            });
        }
    }

    let mut iters = 0;
    while hi - lo > 1e-14 * hi.max(1.0) && iters < 200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        iters += 1;
    }

    // Newton polish restores the last couple of digits.
    let mut x = 0.5 * (lo + hi);
    for _ in 0..3 {
        let fp = hugoniot_f_prime(gamma, x)?;
        if !(fp > 0.0) || !fp.is_finite() {
            break;
        }
        let next = x - (f(x) - target) / fp;
        if next.is_finite() && next > 1.0 {
            x = next;
        } else {
            break;
        }
    }
    Ok(x)
}

/// Mass concentration on the piston: density carries the Dirac weight
/// w_ρ(t) = t on {x = 0}, and the wall feels the constant inertial-force
/// weight w_p = 1/2 − 1/((1+γ)M₀²) ≥ 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasureConcentrationSolution {
    pub scenario: PistonScenario,
    /// Boundary-force weight, zero exactly at the critical Mach number.
    pub w_p: f64,
}

impl MeasureConcentrationSolution {
    /// Dirac mass accumulated on the wall by time t: w_ρ(t) = t.
    pub fn w_rho(&self, t: f64) -> f64 {
        debug_assert!(t >= 0.0);
        t
    }

    /// The flow field away from the wall is the unperturbed state (1, 1).
    pub fn interior_state(&self) -> State {
        State::new(1.0, 1.0)
    }
}

/// Construct the measure solution for a supercritical advancing scenario.
pub fn solve_measure(sc: &PistonScenario) -> Result<MeasureConcentrationSolution> {
    let actual = classify(sc);
    if actual != SolutionKind::Measure {
        return Err(Error::WrongBranch {
            requested: SolutionKind::Measure,
            actual,
        });
    }
    let w_p = 0.5 - 1.0 / ((1.0 + sc.gamma()) * sc.mach() * sc.mach());
    Ok(MeasureConcentrationSolution { scenario: *sc, w_p })
}

/// First-family rarefaction fan for a receding piston (γ < 1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RarefactionFanSolution {
    pub scenario: PistonScenario,
    /// Head slope η = λ₁(1, −1) = −1 − 1/M₀.
    pub eta_head: f64,
    /// Tail slope η = −(γ+1)/2 − 1/M₀ where the velocity reaches zero.
    pub eta_tail: f64,
    /// Boundary density at the piston, ρ₁ = [(M₀(γ+1)+2)/2]^(−2/(γ+1)).
    pub rho1: f64,
}

impl RarefactionFanSolution {
    /// Fan interior state at slope η; η is clamped to [eta_head, eta_tail].
    ///
    /// Inside the fan, ρ(η) = [((η+1)(1+γ)M₀+2)/(1−γ)]^(−2/(1+γ)) and
    /// u(η) = −1 + 2(η+1)/(1−γ) + 2/((1−γ)M₀), so that η = λ₁(ρ, u)
    /// pointwise and the first Riemann invariant is constant.
    pub fn fan_state(&self, eta: f64) -> State {
        let eta = eta.clamp(self.eta_head, self.eta_tail);
        let gamma = self.scenario.gamma();
        let m = self.scenario.mach();
        let base = ((eta + 1.0) * (1.0 + gamma) * m + 2.0) / (1.0 - gamma);
        let rho = base.powf(-2.0 / (1.0 + gamma));
        let u = -1.0 + 2.0 * (eta + 1.0) / (1.0 - gamma) + 2.0 / ((1.0 - gamma) * m);
        State::new(rho, u)
    }

    /// Full self-similar profile: (1, −1) ahead of the head, the fan in
    /// between, and the wall state (ρ₁, 0) behind the tail.
    pub fn state_at(&self, eta: f64) -> State {
        if eta < self.eta_head {
            State::new(1.0, -1.0)
        } else if eta <= self.eta_tail {
            self.fan_state(eta)
        } else {
            State::new(self.rho1, 0.0)
        }
    }
}

/// Construct the first-family fan for a receding scenario with γ < 1.
pub fn solve_rarefaction(sc: &PistonScenario) -> Result<RarefactionFanSolution> {
    let actual = classify(sc);
    if actual != SolutionKind::Rarefaction {
        return Err(Error::WrongBranch {
            requested: SolutionKind::Rarefaction,
            actual,
        });
    }
    if sc.gamma() >= 1.0 {
        return Err(Error::DegenerateField);
    }
    let gamma = sc.gamma();
    let m = sc.mach();
    let eta_head = -1.0 - 1.0 / m;
    let eta_tail = -0.5 * (gamma + 1.0) - 1.0 / m;
    let rho1 = (0.5 * (m * (gamma + 1.0) + 2.0)).powf(-2.0 / (gamma + 1.0));
    Ok(RarefactionFanSolution {
        scenario: *sc,
        eta_head,
        eta_tail,
        rho1,
    })
}

/// Fan behaviour at one probed Mach number.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HighMachProbe {
    pub mach: f64,
    pub eta_head: f64,
    pub eta_tail: f64,
    /// Density at the piston face.
    pub rho_tail: f64,
    /// Initial pressure −1/(γM₀²).
    pub p0: f64,
}

/// Numerical record of the receding-piston vacuum limit: as M₀ grows the
/// fan narrows to (−1, −(1+γ)/2], the face density and the pressure both
/// drain to zero.
#[derive(Debug, Clone, Serialize)]
pub struct HighMachLimitReport {
    pub gamma: f64,
    pub probes: Vec<HighMachProbe>,
    pub eta_head_limit: f64,
    pub eta_tail_limit: f64,
    pub rho_tail_limit: f64,
    pub p0_limit: f64,
    /// Face density strictly decreasing across the probed Mach numbers.
    pub rho_tail_decreasing: bool,
}

/// Probe the fan at the given Mach numbers (γ < 1) and report the limits.
pub fn high_mach_limits(gamma: f64, machs: &[f64]) -> Result<HighMachLimitReport> {
    let mut probes = Vec::with_capacity(machs.len());
    for &mach in machs {
        let sc = PistonScenario::new(gamma, mach, Direction::Recede)?;
        let fan = solve_rarefaction(&sc)?;
        probes.push(HighMachProbe {
            mach,
            eta_head: fan.eta_head,
            eta_tail: fan.eta_tail,
            rho_tail: fan.rho1,
            p0: sc.initial_pressure(),
        });
    }
    let rho_tail_decreasing = probes.windows(2).all(|w| w[1].rho_tail < w[0].rho_tail);
    Ok(HighMachLimitReport {
        gamma,
        probes,
        eta_head_limit: -1.0,
        eta_tail_limit: -0.5 * (1.0 + gamma),
        rho_tail_limit: 0.0,
        p0_limit: 0.0,
        rho_tail_decreasing,
    })
}

/// Why the second-family fan candidate fails for a receding piston.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case", tag = "reason")]
pub enum SecondFamilyRejection {
    /// M₀ < 2/(1+γ): the candidate face density exceeds the upstream
    /// density, contradicting ρ₁ < ρ₀ = 1 behind a receding piston.
    ExceedsUpstreamDensity { rho1: f64 },
    /// M₀ = 2/(1+γ): the candidate density diverges.
    Diverges,
    /// M₀ > 2/(1+γ): the base 1 − (1+γ)M₀/2 is negative, so the formula
    /// yields no nonnegative density at all.
    NegativeBase { base: f64 },
}

/// Diagnostic for the rejected second-family wave.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SecondFamilyReport {
    pub gamma: f64,
    pub mach: f64,
    /// Mach number 2/(1+γ) at which the candidate density diverges.
    pub divergence_mach: f64,
    #[serde(flatten)]
    pub rejection: SecondFamilyRejection,
}

/// Evaluate the second-family candidate ρ₁ = (1 − (1+γ)M₀/2)^(−2/(1+γ))
/// for a receding scenario and report why it is not a physical solution.
pub fn second_family_diagnostic(sc: &PistonScenario) -> Result<SecondFamilyReport> {
    if sc.direction() != Direction::Recede {
        return Err(Error::WrongBranch {
            requested: SolutionKind::Rarefaction,
            actual: classify(sc),
        });
    }
    if sc.gamma() >= 1.0 {
        return Err(Error::DegenerateField);
    }
    let gamma = sc.gamma();
    let m = sc.mach();
    let divergence_mach = 2.0 / (1.0 + gamma);
    let base = 1.0 - 0.5 * (1.0 + gamma) * m;
    let rejection = if (m - divergence_mach).abs() <= 1e-6 {
        SecondFamilyRejection::Diverges
    } else if base > 0.0 {
        SecondFamilyRejection::ExceedsUpstreamDensity {
            rho1: base.powf(-2.0 / (1.0 + gamma)),
        }
    } else {
        SecondFamilyRejection::NegativeBase { base }
    };
    Ok(SecondFamilyReport {
        gamma,
        mach: m,
        divergence_mach,
        rejection,
    })
}

/// Exact solution of a scenario, tagged by family.
#[derive(Debug, Clone, PartialEq)]
pub enum SelfSimilarSolution {
    Shock(ShockSolution),
    Measure(MeasureConcentrationSolution),
    Rarefaction(RarefactionFanSolution),
}

impl SelfSimilarSolution {
    pub fn scenario(&self) -> &PistonScenario {
        match self {
            SelfSimilarSolution::Shock(s) => &s.scenario,
            SelfSimilarSolution::Measure(m) => &m.scenario,
            SelfSimilarSolution::Rarefaction(r) => &r.scenario,
        }
    }

    pub fn kind(&self) -> SolutionKind {
        match self {
            SelfSimilarSolution::Shock(_) => SolutionKind::Shock,
            SelfSimilarSolution::Measure(_) => SolutionKind::Measure,
            SelfSimilarSolution::Rarefaction(_) => SolutionKind::Rarefaction,
        }
    }
}

/// Solve a scenario on the branch selected by [`classify`].
pub fn solve(sc: &PistonScenario) -> Result<SelfSimilarSolution> {
    Ok(match classify(sc) {
        SolutionKind::Shock => SelfSimilarSolution::Shock(solve_shock(sc)?),
        SolutionKind::Measure => SelfSimilarSolution::Measure(solve_measure(sc)?),
        SolutionKind::Rarefaction => SelfSimilarSolution::Rarefaction(solve_rarefaction(sc)?),
    })
}

/// Pointwise sample of a solution: either a flow state or, on the wall of
/// a measure solution, the Dirac data carried there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplePoint {
    Flow(State),
    /// Accumulated wall mass w_ρ(t) and force weight w_p at x = 0.
    BoundaryAtom { w_rho: f64, w_p: f64 },
}

impl SamplePoint {
    /// The flow state, if this sample is not a wall atom.
    pub fn flow(&self) -> Option<State> {
        match self {
            SamplePoint::Flow(st) => Some(*st),
            SamplePoint::BoundaryAtom { .. } => None,
        }
    }
}

/// Evaluate U(x, t) = V(x/t) at a point of the domain t > 0, x ≤ 0.
///
/// Points on a discontinuity take the piston-side (right) limit.  For the
/// measure branch, x = 0 returns the wall atom and x < 0 the unperturbed
/// state.
pub fn sample(sol: &SelfSimilarSolution, t: f64, x: f64) -> Result<SamplePoint> {
    if !(t > 0.0) || !t.is_finite() || x > 0.0 || !x.is_finite() {
        return Err(Error::OutsideDomain { t, x });
    }
    let eta = x / t;
    Ok(match sol {
        SelfSimilarSolution::Shock(s) => SamplePoint::Flow(s.state_at(eta)),
        SelfSimilarSolution::Rarefaction(r) => SamplePoint::Flow(r.state_at(eta)),
        SelfSimilarSolution::Measure(m) => {
            if x == 0.0 {
                SamplePoint::BoundaryAtom {
                    w_rho: m.w_rho(t),
                    w_p: m.w_p,
                }
            } else {
                SamplePoint::Flow(m.interior_state())
            }
        }
    })
}

/// A solution that is an ordinary function of η = x/t, as the weak-form
/// verifier needs: a profile, its discontinuity/kink slopes, and its
/// traces on the wall and the initial line.
pub trait SelfSimilarProfile {
    /// The scenario this profile solves (supplies the gas model).
    fn scenario(&self) -> &PistonScenario;
    /// State at slope η = x/t.
    fn profile_state(&self, eta: f64) -> State;
    /// Slopes of lines x = ηt across which the profile is not smooth.
    fn wave_slopes(&self) -> Vec<f64>;
    /// Trace at the wall x = 0⁻.
    fn wall_state(&self) -> State;
    /// State on the initial line t = 0 (x < 0).
    fn far_state(&self) -> State;
}

impl SelfSimilarProfile for ShockSolution {
    fn scenario(&self) -> &PistonScenario {
        &self.scenario
    }

    fn profile_state(&self, eta: f64) -> State {
        self.state_at(eta)
    }

    fn wave_slopes(&self) -> Vec<f64> {
        vec![self.sigma]
    }

    fn wall_state(&self) -> State {
        self.downstream
    }

    fn far_state(&self) -> State {
        self.upstream
    }
}

impl SelfSimilarProfile for RarefactionFanSolution {
    fn scenario(&self) -> &PistonScenario {
        &self.scenario
    }

    fn profile_state(&self, eta: f64) -> State {
        self.state_at(eta)
    }

    fn wave_slopes(&self) -> Vec<f64> {
        vec![self.eta_head, self.eta_tail]
    }

    fn wall_state(&self) -> State {
        State::new(self.rho1, 0.0)
    }

    fn far_state(&self) -> State {
        State::new(1.0, -1.0)
    }
}
