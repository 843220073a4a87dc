//! Numerical verification of candidate solutions against the
//! distributional form of the flow equations.
//!
//! Function solutions (shock, fan) are checked against the integral
//! identities with boundary and initial terms; measure solutions are
//! checked against the Radon-measure identities, whose Dirac parts pair
//! along the wall through [`dirac_pairing`].  All residuals vanish under
//! quadrature refinement exactly when the candidate solves the problem.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{
    MeasureConcentrationSolution, SelfSimilarProfile, SelfSimilarSolution, ShockSolution,
    SolutionKind,
};
use crate::frames::PistonScenario;
use crate::quad::{adaptive_simpson, line_integral2, rect_integral2, CellRule};

/// C¹ bump profile (1−s²)² on |s| < 1, zero outside.
fn bump(s: f64) -> f64 {
    if s.abs() < 1.0 {
        let q = 1.0 - s * s;
        q * q
    } else {
        0.0
    }
}

fn bump_deriv(s: f64) -> f64 {
    if s.abs() < 1.0 {
        -4.0 * s * (1.0 - s * s)
    } else {
        0.0
    }
}

/// Tensor-product polynomial bump test function centered at (t̄, x̄) with
/// radii (r_t, r_x); φ and both partials vanish outside the support
/// rectangle and max |φ| = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub t_center: f64,
    pub x_center: f64,
    pub t_radius: f64,
    pub x_radius: f64,
}

impl TestFunction {
    pub fn new(t_center: f64, x_center: f64, t_radius: f64, x_radius: f64) -> Result<Self> {
        for (name, r) in [("t_radius", t_radius), ("x_radius", x_radius)] {
            if !(r > 0.0) || !r.is_finite() {
                return Err(Error::OutOfRange {
                    name,
                    value: r,
                    range: "(0, inf)",
                });
            }
        }
        Ok(TestFunction {
            t_center,
            x_center,
            t_radius,
            x_radius,
        })
    }

    pub fn value(&self, t: f64, x: f64) -> f64 {
        bump((t - self.t_center) / self.t_radius) * bump((x - self.x_center) / self.x_radius)
    }

    pub fn dt(&self, t: f64, x: f64) -> f64 {
        bump_deriv((t - self.t_center) / self.t_radius) / self.t_radius
            * bump((x - self.x_center) / self.x_radius)
    }

    pub fn dx(&self, t: f64, x: f64) -> f64 {
        bump((t - self.t_center) / self.t_radius)
            * bump_deriv((x - self.x_center) / self.x_radius)
            / self.x_radius
    }

    pub fn support_t(&self) -> (f64, f64) {
        (self.t_center - self.t_radius, self.t_center + self.t_radius)
    }

    pub fn support_x(&self) -> (f64, f64) {
        (self.x_center - self.x_radius, self.x_center + self.x_radius)
    }

    /// Seeded family of test functions whose supports straddle the waves,
    /// the wall, and the initial line of a normalized scenario.
    pub fn random_family(seed: u64, count: usize) -> Vec<TestFunction> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| TestFunction {
                t_center: rng.random_range(0.05..1.0),
                x_center: rng.random_range(-1.2..0.05),
                t_radius: rng.random_range(0.2..0.55),
                x_radius: rng.random_range(0.2..0.55),
            })
            .collect()
    }
}

/// Dirac measure w·δ supported on a Lipschitz curve x = x(t), t ∈ [0, T).
/// Pairing with a test function carries the arclength factor √(x'(t)²+1);
/// for a wall-aligned curve x(t) = const the factor is exactly 1.
pub struct DiracOnCurve {
    curve: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    curve_slope: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    weight: Box<dyn Fn(f64) -> f64 + Send + Sync>,
    t_end: f64,
}

impl DiracOnCurve {
    pub fn new(
        curve: impl Fn(f64) -> f64 + Send + Sync + 'static,
        curve_slope: impl Fn(f64) -> f64 + Send + Sync + 'static,
        weight: impl Fn(f64) -> f64 + Send + Sync + 'static,
        t_end: f64,
    ) -> Self {
        DiracOnCurve {
            curve: Box::new(curve),
            curve_slope: Box::new(curve_slope),
            weight: Box::new(weight),
            t_end,
        }
    }

    /// Curve pinned to the vertical line x = x0 for all time.
    pub fn vertical_line(x0: f64, weight: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        DiracOnCurve::new(move |_| x0, |_| 0.0, weight, f64::INFINITY)
    }

    pub fn weight_at(&self, t: f64) -> f64 {
        (self.weight)(t)
    }

    pub fn curve_at(&self, t: f64) -> f64 {
        (self.curve)(t)
    }
}

/// ⟨w·δ, φ⟩ = ∫ φ(t, x(t))·w(t)·√(x'(t)²+1) dt over [0, T) by adaptive
/// quadrature (absolute tolerance 1e−10).
pub fn dirac_pairing(d: &DiracOnCurve, phi: &TestFunction) -> Result<f64> {
    dirac_pair_with(d, phi.support_t(), |t, x| phi.value(t, x))
}

/// Pairing of the Dirac measure against an arbitrary smooth integrand
/// (used for the ∂tφ pairings of the mass identity).
pub(crate) fn dirac_pair_with(
    d: &DiracOnCurve,
    t_support: (f64, f64),
    g: impl Fn(f64, f64) -> f64,
) -> Result<f64> {
    let a = t_support.0.max(0.0);
    let b = t_support.1.min(d.t_end);
    if !(b > a) {
        return Ok(0.0);
    }
    let bad = std::cell::Cell::new(None);
    let integrand = |t: f64| {
        let w = (d.weight)(t);
        if !w.is_finite() {
            bad.set(Some((t, w)));
            return 0.0;
        }
        let slope = (d.curve_slope)(t);
        w * g(t, (d.curve)(t)) * (slope * slope + 1.0).sqrt()
    };
    let value = adaptive_simpson(a, b, 1e-10, integrand);
    if let Some((t, w)) = bad.get() {
        return Err(Error::NonFiniteWeight { t, value: w });
    }
    Ok(value)
}

/// Signed residuals of the mass and momentum identities for one test
/// function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeakResidual {
    pub mass: f64,
    pub momentum: f64,
}

/// Residuals of the integral weak identities for a function solution
/// (shock or fan).
///
/// The interior term is a tensor quadrature over supp φ ∩ Ω split along
/// the wave rays; the momentum identity carries the wall integral of the
/// pressure potential −Aρ^(−α) (trace taken from the piston side) and
/// both identities carry the initial-line integral.  `n_points` counts
/// quadrature samples per dimension.
pub fn integral_weak_residual<P: SelfSimilarProfile>(
    sol: &P,
    phi: &TestFunction,
    n_points: usize,
    rule: CellRule,
) -> WeakResidual {
    let gas = sol.scenario().gas();
    let (a_coef, alpha) = (gas.a(), gas.alpha());
    let far = sol.far_state();
    let slopes = sol.wave_slopes();

    let (t_lo, t_hi) = phi.support_t();
    let (x_lo, x_hi) = phi.support_x();
    let t0 = t_lo.max(0.0);
    let x1 = x_hi.min(0.0);

    let (mut mass, mut momentum) = rect_integral2(
        (t0, t_hi),
        (x_lo, x1),
        &slopes,
        n_points,
        rule,
        |t, x| {
            let st = sol.profile_state(x / t);
            let (pt, px) = (phi.dt(t, x), phi.dx(t, x));
            let flux_potential = 0.5 * st.u * st.u - a_coef * st.rho.powf(-alpha);
            (
                st.rho * pt + st.rho * st.u * px,
                st.u * pt + flux_potential * px,
            )
        },
    );

    // wall integral of the pressure potential, piston-side trace
    if x_lo < 0.0 && x_hi > 0.0 && t_hi > t0 {
        let q_wall = -a_coef * sol.wall_state().rho.powf(-alpha);
        let (wall, _) = line_integral2(t0, t_hi, &[], n_points, rule, |t| {
            (q_wall * phi.value(t, 0.0), 0.0)
        });
        momentum -= wall;
    }

    // initial-line data
    if t_lo < 0.0 && t_hi > 0.0 && x1 > x_lo {
        let (m0, q0) = line_integral2(x_lo, x1, &[], n_points, rule, |x| {
            let v = phi.value(0.0, x);
            (far.rho * v, far.u * v)
        });
        mass += m0;
        momentum += q0;
    }

    WeakResidual { mass, momentum }
}

/// Residuals of the measure identities for the wall-concentration ansatz
/// with the solution's own weights w_ρ(t) = t and w_p.
pub fn measure_weak_residual(
    sol: &MeasureConcentrationSolution,
    phi: &TestFunction,
    n_points: usize,
    rule: CellRule,
) -> Result<WeakResidual> {
    measure_weak_residual_with(&sol.scenario, |t| t, sol.w_p, phi, n_points, rule)
}

/// Measure-identity residuals with explicit weights, so perturbed weights
/// can be probed.  The Lebesgue parts use tensor quadrature; the Dirac
/// parts pair along the wall via adaptive quadrature.
pub fn measure_weak_residual_with(
    scenario: &PistonScenario,
    w_rho: impl Fn(f64) -> f64 + Send + Sync + 'static,
    w_p: f64,
    phi: &TestFunction,
    n_points: usize,
    rule: CellRule,
) -> Result<WeakResidual> {
    let gas = scenario.gas();
    let a_coef = gas.a();
    let u0 = scenario.initial_velocity();

    let (t_lo, t_hi) = phi.support_t();
    let (x_lo, x_hi) = phi.support_x();
    let t0 = t_lo.max(0.0);
    let x1 = x_hi.min(0.0);

    // Lebesgue parts: the interior flow is the unperturbed state (1, 1),
    // with velocity measure 1, kinetic measure 1/2 and pressure-potential
    // measure −A.
    let (mut mass, mut momentum) =
        rect_integral2((t0, t_hi), (x_lo, x1), &[], n_points, rule, |t, x| {
            let (pt, px) = (phi.dt(t, x), phi.dx(t, x));
            (pt + px, pt + (0.5 - a_coef) * px)
        });

    // Dirac parts on the wall
    if x_lo < 0.0 && x_hi > 0.0 && t_hi > t0 {
        let atom = DiracOnCurve::vertical_line(0.0, w_rho);
        mass += dirac_pair_with(&atom, (t0, t_hi), |t, x| phi.dt(t, x))?;
        let force = DiracOnCurve::vertical_line(0.0, move |_| w_p);
        momentum -= dirac_pairing(&force, phi)?;
    }

    // initial-line data (ρ₀, u₀) = (1, u₀)
    if t_lo < 0.0 && t_hi > 0.0 && x1 > x_lo {
        let (m0, q0) = line_integral2(x_lo, x1, &[], n_points, rule, |x| {
            let v = phi.value(0.0, x);
            (v, u0 * v)
        });
        mass += m0;
        momentum += q0;
    }

    Ok(WeakResidual { mass, momentum })
}

/// Outcome of the Lax inequality check for one characteristic family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LaxStatus {
    /// λ(upstream) > σ > λ(downstream) holds strictly.
    Strict,
    /// Both comparisons are equalities within tolerance (linearly
    /// degenerate contact, the γ = 1 case).
    Degenerate,
    /// At least one inequality fails outright.
    Violated,
}

/// Lax admissibility report for a shock, covering both characteristic
/// families.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct EntropyReport {
    pub sigma: f64,
    pub lambda1_upstream: f64,
    pub lambda1_downstream: f64,
    pub lambda2_upstream: f64,
    pub lambda2_downstream: f64,
    pub family1: LaxStatus,
    pub family2: LaxStatus,
    /// The discontinuity is admissible when its own (first) family
    /// satisfies the Lax condition strictly or degenerately.
    pub admissible: bool,
}

const LAX_TOL: f64 = 1e-12;

fn lax_status(lambda_up: f64, sigma: f64, lambda_down: f64) -> LaxStatus {
    if lambda_up > sigma + LAX_TOL && sigma > lambda_down + LAX_TOL {
        LaxStatus::Strict
    } else if lambda_up >= sigma - LAX_TOL && sigma >= lambda_down - LAX_TOL {
        LaxStatus::Degenerate
    } else {
        LaxStatus::Violated
    }
}

/// Evaluate the classical entropy condition at the discontinuity of a
/// shock candidate.
pub fn entropy_check(sol: &ShockSolution) -> Result<EntropyReport> {
    let gas = sol.scenario.gas();
    let (l1_up, l2_up) = gas.eigenvalues(sol.upstream)?;
    let (l1_down, l2_down) = gas.eigenvalues(sol.downstream)?;
    let family1 = lax_status(l1_up, sol.sigma, l1_down);
    let family2 = lax_status(l2_up, sol.sigma, l2_down);
    Ok(EntropyReport {
        sigma: sol.sigma,
        lambda1_upstream: l1_up,
        lambda1_downstream: l1_down,
        lambda2_upstream: l2_up,
        lambda2_downstream: l2_down,
        family1,
        family2,
        admissible: family1 != LaxStatus::Violated,
    })
}

/// Options for a residual sweep over a family of test functions.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub n_test_functions: usize,
    /// Quadrature samples per dimension; the sweep also runs at double
    /// this resolution to measure refinement.
    pub quadrature: usize,
    pub seed: u64,
    pub rule: CellRule,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            n_test_functions: 50,
            quadrature: 512,
            seed: 42,
            // two Gauss points per cell at the same per-dimension sample
            // budget; the midpoint rule needs ~2x more points to clear
            // the same residual tolerance on the fan branch
            rule: CellRule::GaussTwo,
        }
    }
}

/// Residuals below this are considered converged regardless of the
/// refinement ratio (quadrature noise floor).
pub const RESIDUAL_FLOOR: f64 = 1e-10;

/// Residual sweep summary; serializes to the report schema
/// {branch, gamma, mach, n_test_functions, quadrature, max_mass_res,
/// max_mom_res, refinement_ratio, seed}.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualReport {
    pub branch: SolutionKind,
    pub gamma: f64,
    pub mach: f64,
    pub n_test_functions: usize,
    pub quadrature: usize,
    pub max_mass_res: f64,
    pub max_mom_res: f64,
    /// Max residual at 2n quadrature points over max residual at n.
    pub refinement_ratio: f64,
    pub seed: u64,
    #[serde(skip)]
    pub mass_residuals: Vec<f64>,
    #[serde(skip)]
    pub momentum_residuals: Vec<f64>,
    #[serde(skip)]
    pub rms_mass_res: f64,
    #[serde(skip)]
    pub rms_mom_res: f64,
    #[serde(skip)]
    pub max_mass_res_refined: f64,
    #[serde(skip)]
    pub max_mom_res_refined: f64,
    #[serde(skip)]
    pub converged: bool,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, r| m.max(r.abs()))
}

fn rms(v: &[f64]) -> f64 {
    if v.is_empty() {
        0.0
    } else {
        (v.iter().map(|r| r * r).sum::<f64>() / v.len() as f64).sqrt()
    }
}

/// Run the seeded residual sweep for a solution at n and 2n quadrature
/// points and summarize.
pub fn verify_solution(sol: &SelfSimilarSolution, opts: &VerifyOptions) -> Result<ResidualReport> {
    let family = TestFunction::random_family(opts.seed, opts.n_test_functions);
    let n = opts.quadrature;

    let eval = |phi: &TestFunction, pts: usize| -> Result<WeakResidual> {
        Ok(match sol {
            SelfSimilarSolution::Shock(s) => integral_weak_residual(s, phi, pts, opts.rule),
            SelfSimilarSolution::Rarefaction(r) => integral_weak_residual(r, phi, pts, opts.rule),
            SelfSimilarSolution::Measure(m) => measure_weak_residual(m, phi, pts, opts.rule)?,
        })
    };

    let mut mass = Vec::with_capacity(family.len());
    let mut momentum = Vec::with_capacity(family.len());
    let mut mass_refined = Vec::with_capacity(family.len());
    let mut momentum_refined = Vec::with_capacity(family.len());
    for phi in &family {
        let base = eval(phi, n)?;
        let fine = eval(phi, 2 * n)?;
        for (identity, value) in [
            ("mass", base.mass),
            ("momentum", base.momentum),
            ("mass", fine.mass),
            ("momentum", fine.momentum),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFiniteResidual {
                    identity,
                    t_center: phi.t_center,
                    x_center: phi.x_center,
                });
            }
        }
        mass.push(base.mass);
        momentum.push(base.momentum);
        mass_refined.push(fine.mass);
        momentum_refined.push(fine.momentum);
    }

    let max_mass_res = max_abs(&mass);
    let max_mom_res = max_abs(&momentum);
    let max_mass_res_refined = max_abs(&mass_refined);
    let max_mom_res_refined = max_abs(&momentum_refined);

    let mut ratio: f64 = 0.0;
    for (base, fine) in [
        (max_mass_res, max_mass_res_refined),
        (max_mom_res, max_mom_res_refined),
    ] {
        if base > RESIDUAL_FLOOR {
            ratio = ratio.max(fine / base);
        }
    }

    let scenario = sol.scenario();
    Ok(ResidualReport {
        branch: sol.kind(),
        gamma: scenario.gamma(),
        mach: scenario.mach(),
        n_test_functions: family.len(),
        quadrature: n,
        max_mass_res,
        max_mom_res,
        refinement_ratio: ratio,
        seed: opts.seed,
        rms_mass_res: rms(&mass),
        rms_mom_res: rms(&momentum),
        mass_residuals: mass,
        momentum_residuals: momentum,
        max_mass_res_refined,
        max_mom_res_refined,
        converged: ratio <= 0.9,
    })
}
