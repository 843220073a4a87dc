//! Configuration files, scenario sweeps, and artifact output for the
//! command-line front end.
//!
//! Configuration is a flat key-value text file, one `key = value`
//! assignment per line, `#` starting a comment.  Numeric lists accept a
//! single value, a comma list, or an inclusive range `a:b:n`.  All
//! floating-point output uses the shortest round-trip decimal form, so
//! reruns with the same config and seed are byte-identical.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{sample, solve, SamplePoint, SelfSimilarSolution, SolutionKind};
use crate::frames::{Direction, PistonScenario};
use crate::fvm;
use crate::weak::{self, VerifyOptions};

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub gammas: Vec<f64>,
    pub machs: Vec<f64>,
    pub direction: Direction,
    pub t_samples: Vec<f64>,
    pub x_samples: Vec<f64>,
    pub verify_weak: bool,
    pub verify_fvm: bool,
    pub weak_tol: f64,
    pub n_test_functions: usize,
    pub quadrature: usize,
    pub seed: u64,
    pub fvm_n_cells: usize,
    pub fvm_cfl: f64,
    pub fvm_t_end: f64,
    pub fvm_delta_cells: usize,
    pub output: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            gammas: vec![1.0],
            machs: vec![0.6],
            direction: Direction::Advance,
            t_samples: vec![0.5],
            x_samples: linspace(-2.0, 0.0, 201),
            verify_weak: true,
            verify_fvm: false,
            weak_tol: 5e-6,
            n_test_functions: 50,
            quadrature: 512,
            seed: 42,
            fvm_n_cells: 400,
            fvm_cfl: 0.9,
            fvm_t_end: 0.5,
            fvm_delta_cells: 5,
            output: PathBuf::from("out"),
        }
    }
}

/// Inclusive linear grid with n points (n = 1 gives just `a`).
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n <= 1 {
        return vec![a];
    }
    (0..n)
        .map(|i| a + (b - a) * i as f64 / (n - 1) as f64)
        .collect()
}

/// Parse `a:b:n`, a comma list, or a single number into a value list.
pub fn parse_value_list(text: &str) -> std::result::Result<Vec<f64>, String> {
    let text = text.trim();
    if text.is_empty() {
        return Err("empty value list".into());
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("range '{text}' must have the form a:b:n"));
        }
        let a: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| format!("bad range start '{}'", parts[0]))?;
        let b: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad range end '{}'", parts[1]))?;
        let n: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| format!("bad range count '{}'", parts[2]))?;
        if n == 0 {
            return Err("range count must be at least 1".into());
        }
        return Ok(linspace(a, b, n));
    }
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{}'", p.trim()))
        })
        .collect()
}

fn config_err(line: usize, message: impl Into<String>) -> Error {
    Error::Config {
        line,
        message: message.into(),
    }
}

/// Parse and validate a configuration file.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_config_str(&text)
}

/// Parse and validate configuration text.
pub fn parse_config_str(text: &str) -> Result<RunConfig> {
    let mut cfg = RunConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| config_err(line_no, format!("expected 'key = value', got '{line}'")))?;
        let key = key.trim();
        let value = value.trim();
        let bad = |msg: String| config_err(line_no, format!("{key}: {msg}"));

        match key {
            "gamma" => {
                cfg.gammas = parse_value_list(value).map_err(bad)?;
                for &g in &cfg.gammas {
                    if !(g > 0.0 && g <= 1.0) {
                        return Err(config_err(
                            line_no,
                            format!("gamma = {g} must lie in (0, 1]"),
                        ));
                    }
                }
            }
            "mach" => {
                cfg.machs = parse_value_list(value).map_err(bad)?;
                for &m in &cfg.machs {
                    if !(m > 0.0) || !m.is_finite() {
                        return Err(config_err(line_no, format!("mach = {m} must be > 0")));
                    }
                }
            }
            "direction" => {
                cfg.direction = value.parse().map_err(|e: String| bad(e))?;
            }
            "t_samples" => {
                cfg.t_samples = parse_value_list(value).map_err(bad)?;
                for &t in &cfg.t_samples {
                    if !(t > 0.0) || !t.is_finite() {
                        return Err(config_err(line_no, format!("t_samples entry {t} must be > 0")));
                    }
                }
            }
            "x_samples" => {
                cfg.x_samples = parse_value_list(value).map_err(bad)?;
                if cfg.x_samples.iter().any(|&x| x > 0.0 || !x.is_finite()) {
                    return Err(config_err(line_no, "x_samples must lie in x <= 0".to_string()));
                }
            }
            "verify_weak" => cfg.verify_weak = parse_bool(value).map_err(bad)?,
            "verify_fvm" => cfg.verify_fvm = parse_bool(value).map_err(bad)?,
            "weak_tol" => {
                cfg.weak_tol = value.parse().map_err(|_| bad(format!("bad number '{value}'")))?;
                if !(cfg.weak_tol > 0.0) {
                    return Err(config_err(line_no, "weak_tol must be > 0".to_string()));
                }
            }
            "n_test_functions" => {
                cfg.n_test_functions =
                    value.parse().map_err(|_| bad(format!("bad count '{value}'")))?;
                if cfg.n_test_functions == 0 {
                    return Err(config_err(line_no, "n_test_functions must be >= 1".to_string()));
                }
            }
            "quadrature" => {
                cfg.quadrature = value.parse().map_err(|_| bad(format!("bad count '{value}'")))?;
                if cfg.quadrature < 16 {
                    return Err(config_err(line_no, "quadrature must be >= 16".to_string()));
                }
            }
            "seed" => {
                cfg.seed = value.parse().map_err(|_| bad(format!("bad seed '{value}'")))?;
            }
            "fvm_n_cells" => {
                cfg.fvm_n_cells = value.parse().map_err(|_| bad(format!("bad count '{value}'")))?;
                if cfg.fvm_n_cells < 16 {
                    return Err(config_err(line_no, "fvm_n_cells must be >= 16".to_string()));
                }
            }
            "fvm_cfl" => {
                cfg.fvm_cfl = value.parse().map_err(|_| bad(format!("bad number '{value}'")))?;
                if !(cfg.fvm_cfl > 0.0 && cfg.fvm_cfl < 1.0) {
                    return Err(config_err(line_no, "fvm_cfl must lie in (0, 1)".to_string()));
                }
            }
            "fvm_t_end" => {
                cfg.fvm_t_end = value.parse().map_err(|_| bad(format!("bad number '{value}'")))?;
                if !(cfg.fvm_t_end > 0.0) {
                    return Err(config_err(line_no, "fvm_t_end must be > 0".to_string()));
                }
            }
            "fvm_delta_cells" => {
                cfg.fvm_delta_cells =
                    value.parse().map_err(|_| bad(format!("bad count '{value}'")))?;
                if cfg.fvm_delta_cells == 0 {
                    return Err(config_err(line_no, "fvm_delta_cells must be >= 1".to_string()));
                }
            }
            "output" => cfg.output = PathBuf::from(value),
            other => {
                return Err(config_err(line_no, format!("unknown key '{other}'")));
            }
        }
    }
    if cfg.gammas.is_empty() || cfg.machs.is_empty() {
        return Err(config_err(0, "gamma and mach sweeps must be non-empty"));
    }
    Ok(cfg)
}

fn parse_bool(value: &str) -> std::result::Result<bool, String> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("bad boolean '{other}'")),
    }
}

/// What the front end asked for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    /// Summaries and profiles only.
    Solve,
    /// Summaries, profiles, and the verifications enabled in the config.
    Verify,
    /// Summaries plus the finite-volume comparison.
    Fvm,
}

/// Per-scenario summary, serialized with the branch tag.
#[derive(Debug, Clone, Serialize)]
#[serde(tag = "branch", rename_all = "lowercase")]
pub enum SolutionSummary {
    Shock {
        gamma: f64,
        mach: f64,
        rho1: f64,
        sigma: f64,
    },
    Measure {
        gamma: f64,
        mach: f64,
        w_p: f64,
    },
    Rarefaction {
        gamma: f64,
        mach: f64,
        eta_head: f64,
        eta_tail: f64,
        rho1: f64,
    },
}

impl SolutionSummary {
    pub fn of(sol: &SelfSimilarSolution) -> Self {
        let sc = sol.scenario();
        match sol {
            SelfSimilarSolution::Shock(s) => SolutionSummary::Shock {
                gamma: sc.gamma(),
                mach: sc.mach(),
                rho1: s.rho1,
                sigma: s.sigma,
            },
            SelfSimilarSolution::Measure(m) => SolutionSummary::Measure {
                gamma: sc.gamma(),
                mach: sc.mach(),
                w_p: m.w_p,
            },
            SelfSimilarSolution::Rarefaction(r) => SolutionSummary::Rarefaction {
                gamma: sc.gamma(),
                mach: sc.mach(),
                eta_head: r.eta_head,
                eta_tail: r.eta_tail,
                rho1: r.rho1,
            },
        }
    }
}

/// Result of a run: files written and verification failures, if any.
#[derive(Debug, Default)]
pub struct RunOutcome {
    pub artifacts: Vec<PathBuf>,
    pub failures: Vec<String>,
}

impl RunOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Write a file atomically (temp file in the same directory + rename).
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, contents)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn scenario_slug(sc: &PistonScenario) -> String {
    format!("g{}_m{}_{}", sc.gamma(), sc.mach(), sc.direction())
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// Profile CSV (`eta,x,t,rho,u,p`) for one sample time.  For the measure
/// branch the wall atom at x = 0 is not a function value and is skipped;
/// its weights live in the summary.
fn profile_csv(sol: &SelfSimilarSolution, t: f64, xs: &[f64]) -> Result<String> {
    let gas = sol.scenario().gas();
    let mut out = String::from("eta,x,t,rho,u,p\n");
    for &x in xs {
        match sample(sol, t, x)? {
            SamplePoint::Flow(st) => {
                let p = gas.pressure(st.rho)?;
                writeln!(out, "{},{},{},{},{},{}", x / t, x, t, st.rho, st.u, p)
                    .expect("write to string");
            }
            SamplePoint::BoundaryAtom { .. } => continue,
        }
    }
    Ok(out)
}

fn fvm_profile_csv(run: &fvm::ResolutionRun) -> String {
    let mut out = String::from("x,rho,u,rho_exact,u_exact\n");
    for i in 0..run.x.len() {
        writeln!(
            out,
            "{},{},{},{},{}",
            run.x[i], run.rho[i], run.u[i], run.rho_exact[i], run.u_exact[i]
        )
        .expect("write to string");
    }
    out
}

/// Execute a task for every (γ, M₀) pair of the sweep.
pub fn run(cfg: &RunConfig, task: Task) -> Result<RunOutcome> {
    let mut outcome = RunOutcome::default();
    for &gamma in &cfg.gammas {
        for &mach in &cfg.machs {
            let sc = PistonScenario::new(gamma, mach, cfg.direction)?;
            run_scenario(cfg, task, &sc, &mut outcome)?;
        }
    }
    Ok(outcome)
}

fn run_scenario(
    cfg: &RunConfig,
    task: Task,
    sc: &PistonScenario,
    outcome: &mut RunOutcome,
) -> Result<()> {
    let slug = scenario_slug(sc);
    let sol = solve(sc)?;

    let summary_path = cfg.output.join(format!("solution_{slug}.json"));
    write_atomic(&summary_path, &to_pretty_json(&SolutionSummary::of(&sol))?)?;
    outcome.artifacts.push(summary_path);

    if task == Task::Solve || task == Task::Verify {
        for &t in &cfg.t_samples {
            let path = cfg.output.join(format!("profile_{slug}_t{t}.csv"));
            write_atomic(&path, &profile_csv(&sol, t, &cfg.x_samples)?)?;
            outcome.artifacts.push(path);
        }
    }

    if task == Task::Verify && cfg.verify_weak {
        let opts = VerifyOptions {
            n_test_functions: cfg.n_test_functions,
            quadrature: cfg.quadrature,
            seed: cfg.seed,
            ..VerifyOptions::default()
        };
        let report = weak::verify_solution(&sol, &opts)?;
        let path = cfg.output.join(format!("weak_{slug}.json"));
        write_atomic(&path, &to_pretty_json(&report)?)?;
        if report.max_mass_res > cfg.weak_tol || report.max_mom_res > cfg.weak_tol {
            outcome.failures.push(format!(
                "{slug}: weak residuals (mass {}, momentum {}) exceed {} [{}]",
                report.max_mass_res,
                report.max_mom_res,
                cfg.weak_tol,
                path.display()
            ));
        }
        if !report.converged {
            outcome.failures.push(format!(
                "{slug}: weak residuals do not shrink under refinement (ratio {}) [{}]",
                report.refinement_ratio,
                path.display()
            ));
        }
        outcome.artifacts.push(path);
    }

    if (task == Task::Verify && cfg.verify_fvm) || task == Task::Fvm {
        if sol.kind() == SolutionKind::Measure {
            // no function solution to compare against; probe the wall
            // accumulation rate instead
            let opts = fvm::ProbeOptions {
                n_cells: cfg.fvm_n_cells,
                cfl: cfg.fvm_cfl,
                t_end: cfg.fvm_t_end.max(0.8),
                delta_cells: cfg.fvm_delta_cells,
                ..fvm::ProbeOptions::default()
            };
            let report = fvm::supercritical_probe(sc, &opts)?;
            let path = cfg.output.join(format!("fvm_probe_{slug}.json"));
            write_atomic(&path, &to_pretty_json(&report)?)?;
            outcome.artifacts.push(path);
        } else {
            let report = fvm::run_and_compare(sc, cfg.fvm_t_end, cfg.fvm_n_cells, cfg.fvm_cfl)?;
            let path = cfg.output.join(format!("fvm_{slug}.json"));
            write_atomic(&path, &to_pretty_json(&report)?)?;
            if report.failed {
                outcome.failures.push(format!(
                    "{slug}: fvm run unstable: {} [{}]",
                    report.failure.as_deref().unwrap_or("unknown"),
                    path.display()
                ));
            } else {
                let monotone = report
                    .runs
                    .windows(2)
                    .all(|w| w[1].l1_total <= w[0].l1_total);
                if !monotone {
                    outcome.failures.push(format!(
                        "{slug}: fvm L1 error not decreasing under refinement [{}]",
                        path.display()
                    ));
                }
            }
            for run in &report.runs {
                let cpath = cfg
                    .output
                    .join(format!("fvm_{slug}_n{}.csv", run.n_cells));
                write_atomic(&cpath, &fvm_profile_csv(run))?;
                outcome.artifacts.push(cpath);
            }
            outcome.artifacts.push(path);
        }
    }

    Ok(())
}

/// Classification map over a (γ, M₀) grid for one piston direction.
pub fn phase_diagram(
    gammas: &[f64],
    machs: &[f64],
    direction: Direction,
) -> Result<Vec<(f64, f64, SolutionKind)>> {
    let mut rows = Vec::with_capacity(gammas.len() * machs.len());
    for &gamma in gammas {
        for &mach in machs {
            let sc = PistonScenario::new(gamma, mach, direction)?;
            rows.push((gamma, mach, crate::exact::classify(&sc)));
        }
    }
    Ok(rows)
}

/// CSV form of [`phase_diagram`] with header `gamma,mach,branch`.
pub fn phase_diagram_csv(
    gammas: &[f64],
    machs: &[f64],
    direction: Direction,
) -> Result<String> {
    let mut out = String::from("gamma,mach,branch\n");
    for (gamma, mach, kind) in phase_diagram(gammas, machs, direction)? {
        writeln!(out, "{gamma},{mach},{kind}").expect("write to string");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_config() {
        let cfg = parse_config_str("gamma = 1.0\nmach = 0.6\ndirection = advance\n").unwrap();
        assert_eq!(cfg.gammas, vec![1.0]);
        assert_eq!(cfg.machs, vec![0.6]);
        assert_eq!(cfg.direction, Direction::Advance);
        assert_eq!(cfg.seed, 42);
    }

    #[test]
    fn parse_lists_and_ranges() {
        let cfg = parse_config_str(
            "gamma = 0.2,0.5,0.8\nmach = 0.5:2.5:5\n# comment\nseed = 7\n",
        )
        .unwrap();
        assert_eq!(cfg.gammas.len(), 3);
        assert_eq!(cfg.machs, vec![0.5, 1.0, 1.5, 2.0, 2.5]);
        assert_eq!(cfg.seed, 7);
    }

    #[test]
    fn gamma_out_of_range_names_the_constraint() {
        let err = parse_config_str("gamma = 1.5\n").unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains("(0, 1]"), "message: {message}");
            }
            other => panic!("expected config error, got {other}"),
        }
    }

    #[test]
    fn bad_lines_are_reported_with_numbers() {
        let err = parse_config_str("gamma = 1.0\nnot a line\n").unwrap_err();
        match err {
            Error::Config { line, .. } => assert_eq!(line, 2),
            other => panic!("expected config error, got {other}"),
        }
        let err = parse_config_str("mach = -1\n").unwrap_err();
        match err {
            Error::Config { line, message } => {
                assert_eq!(line, 1);
                assert!(message.contains("> 0"));
            }
            other => panic!("expected config error, got {other}"),
        }
        assert!(parse_config_str("fvm_n_cells = 8\n").is_err());
        assert!(parse_config_str("mystery = 3\n").is_err());
    }

    #[test]
    fn phase_diagram_rows_and_threshold() {
        let gammas = [0.5, 1.0];
        let machs = [0.5, 0.999, 1.0, 1.3];
        let rows = phase_diagram(&gammas, &machs, Direction::Advance).unwrap();
        assert_eq!(rows.len(), 8);
        let lookup = |g: f64, m: f64| {
            rows.iter()
                .find(|r| r.0 == g && r.1 == m)
                .map(|r| r.2)
                .unwrap()
        };
        assert_eq!(lookup(1.0, 0.999), SolutionKind::Shock);
        assert_eq!(lookup(1.0, 1.0), SolutionKind::Measure);
        assert_eq!(lookup(0.5, 1.3), SolutionKind::Measure); // crit ~ 1.1547

        let rows = phase_diagram(&gammas, &machs, Direction::Recede).unwrap();
        assert!(rows.iter().all(|r| r.2 == SolutionKind::Rarefaction));
    }

    #[test]
    fn summary_round_trips_shock_relation() {
        let sc = PistonScenario::new(1.0, 0.6, Direction::Advance).unwrap();
        let sol = solve(&sc).unwrap();
        let json = to_pretty_json(&SolutionSummary::of(&sol)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["branch"], "shock");
        let rho1 = value["rho1"].as_f64().unwrap();
        let sigma = value["sigma"].as_f64().unwrap();
        assert!((sigma + 1.0 / (rho1 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn summary_measure_weight_value() {
        let sc = PistonScenario::new(1.0, 1.5, Direction::Advance).unwrap();
        let json = to_pretty_json(&SolutionSummary::of(&solve(&sc).unwrap())).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["branch"], "measure");
        // 1/2 - 1/(2 * 1.5^2)
        assert!((value["w_p"].as_f64().unwrap() - 0.2777777777777778).abs() < 1e-15);
    }

    #[test]
    fn profile_csv_has_contract_header() {
        let sc = PistonScenario::new(1.0, 0.6, Direction::Advance).unwrap();
        let sol = solve(&sc).unwrap();
        let csv = profile_csv(&sol, 0.5, &[-1.0, -0.5, 0.0]).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "eta,x,t,rho,u,p");
        assert_eq!(lines.count(), 3);

        // measure branch: the wall atom row is skipped
        let sc = PistonScenario::new(1.0, 2.0, Direction::Advance).unwrap();
        let sol = solve(&sc).unwrap();
        let csv = profile_csv(&sol, 0.5, &[-1.0, -0.5, 0.0]).unwrap();
        assert_eq!(csv.lines().count(), 3); // header + 2 rows
    }
}
