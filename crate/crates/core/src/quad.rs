//! Quadrature used by the weak-form verifier.
//!
//! Residual integrands are piecewise smooth: the solutions jump or kink
//! only across rays x = η·t and along the wall x = 0.  The tensor rule
//! therefore splits every row at the known rays before applying a fixed
//! per-cell rule, which keeps the composite error second order (or better)
//! instead of stalling on the jumps.

/// Fixed rule applied on each quadrature cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellRule {
    /// One midpoint sample per cell.
    Midpoint,
    /// Two-point Gauss–Legendre per cell; same sample budget is counted
    /// as two points.
    GaussTwo,
}

impl CellRule {
    /// Sample positions (as a fraction of the cell) and weight fractions.
    fn nodes(&self) -> &'static [(f64, f64)] {
        // 0.5 +/- 1/(2*sqrt(3))
        const G: f64 = 0.288_675_134_594_812_9;
        match self {
            CellRule::Midpoint => &[(0.5, 1.0)],
            CellRule::GaussTwo => &[(0.5 - G, 0.5), (0.5 + G, 0.5)],
        }
    }

    fn points_per_cell(&self) -> usize {
        self.nodes().len()
    }
}

/// Split [a, b] at the interior breakpoints, dropping duplicates.
fn segments(a: f64, b: f64, breaks: &[f64]) -> Vec<(f64, f64)> {
    let mut cuts: Vec<f64> = breaks
        .iter()
        .copied()
        .filter(|&c| c > a && c < b)
        .collect();
    cuts.sort_by(|p, q| p.partial_cmp(q).expect("finite breakpoints"));
    cuts.dedup_by(|p, q| (*p - *q).abs() <= 1e-15 * (b - a));
    let mut segs = Vec::with_capacity(cuts.len() + 1);
    let mut lo = a;
    for c in cuts {
        if c - lo > 0.0 {
            segs.push((lo, c));
            lo = c;
        }
    }
    if b - lo > 0.0 {
        segs.push((lo, b));
    }
    segs
}

/// Composite integral of a pair of integrands over [a, b], split at the
/// given interior breakpoints, with roughly `n_points` samples spread
/// uniformly so every segment sees the same cell width.
pub fn line_integral2(
    a: f64,
    b: f64,
    breaks: &[f64],
    n_points: usize,
    rule: CellRule,
    f: impl Fn(f64) -> (f64, f64),
) -> (f64, f64) {
    if !(b > a) {
        return (0.0, 0.0);
    }
    let total = b - a;
    let n_cells = (n_points / rule.points_per_cell()).max(1);
    let mut sum0 = 0.0;
    let mut sum1 = 0.0;
    for (sa, sb) in segments(a, b, breaks) {
        let m = ((n_cells as f64) * (sb - sa) / total).ceil().max(1.0) as usize;
        let h = (sb - sa) / m as f64;
        for i in 0..m {
            let left = sa + i as f64 * h;
            for &(pos, w) in rule.nodes() {
                let (v0, v1) = f(left + pos * h);
                sum0 += v0 * w * h;
                sum1 += v1 * w * h;
            }
        }
    }
    (sum0, sum1)
}

/// Scalar variant of [`line_integral2`].
pub fn line_integral(
    a: f64,
    b: f64,
    breaks: &[f64],
    n_points: usize,
    rule: CellRule,
    f: impl Fn(f64) -> f64,
) -> f64 {
    line_integral2(a, b, breaks, n_points, rule, |t| (f(t), 0.0)).0
}

/// Tensor integral of a pair of integrands over the rectangle
/// [t0, t1] × [x0, x1], with cell splitting along the rays x = s·t for
/// each slope s (s = 0 is the line x = 0).  `n_points` counts samples per
/// dimension.
pub fn rect_integral2(
    t_range: (f64, f64),
    x_range: (f64, f64),
    ray_slopes: &[f64],
    n_points: usize,
    rule: CellRule,
    f: impl Fn(f64, f64) -> (f64, f64),
) -> (f64, f64) {
    let (t0, t1) = t_range;
    let (x0, x1) = x_range;
    if !(t1 > t0) || !(x1 > x0) {
        return (0.0, 0.0);
    }

    // Rows are smooth in t except where a ray crosses an x-edge of the
    // rectangle; split the t-axis there.
    let mut t_breaks = Vec::new();
    for &s in ray_slopes {
        if s != 0.0 {
            for &xe in &[x0, x1] {
                let tc = xe / s;
                if tc > t0 && tc < t1 {
                    t_breaks.push(tc);
                }
            }
        }
    }

    line_integral2(t0, t1, &t_breaks, n_points, rule, |t| {
        let mut x_breaks: Vec<f64> = Vec::with_capacity(ray_slopes.len());
        for &s in ray_slopes {
            x_breaks.push(if s == 0.0 { 0.0 } else { s * t });
        }
        line_integral2(x0, x1, &x_breaks, n_points, rule, |x| f(t, x))
    })
}

/// Adaptive Simpson integration to an absolute tolerance.
///
/// The interval is pre-split into panels so narrow features are not
/// missed by the first probe; each panel is then refined recursively.
pub fn adaptive_simpson(a: f64, b: f64, tol: f64, f: impl Fn(f64) -> f64) -> f64 {
    if !(b > a) {
        return 0.0;
    }
    const PANELS: usize = 16;
    let h = (b - a) / PANELS as f64;
    let mut total = 0.0;
    for i in 0..PANELS {
        let pa = a + i as f64 * h;
        let pb = pa + h;
        let fa = f(pa);
        let fb = f(pb);
        let fm = f(0.5 * (pa + pb));
        let whole = simpson(fa, fm, fb, pb - pa);
        total += adapt(&f, pa, pb, fa, fm, fb, whole, tol / PANELS as f64, 40);
    }
    total
}

fn simpson(fa: f64, fm: f64, fb: f64, h: f64) -> f64 {
    h / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(fa, flm, fm, m - a);
    let right = simpson(fm, frm, fb, b - m);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn line_integral_polynomial() {
        // integral of x^2 over [0, 3] = 9; gauss-2 is exact for cubics
        let v = line_integral(0.0, 3.0, &[], 64, CellRule::GaussTwo, |x| x * x);
        assert_relative_eq!(v, 9.0, max_relative = 1e-13);
        let v = line_integral(0.0, 3.0, &[1.0, 2.0], 64, CellRule::Midpoint, |x| x * x);
        assert_relative_eq!(v, 9.0, max_relative = 1e-3);
    }

    #[test]
    fn line_integral_split_handles_jump() {
        // step function with a jump at 1/3: exact with the breakpoint
        let f = |x: f64| if x < 1.0 / 3.0 { 2.0 } else { 5.0 };
        let exact = 2.0 / 3.0 + 5.0 * 2.0 / 3.0;
        let v = line_integral(0.0, 1.0, &[1.0 / 3.0], 128, CellRule::Midpoint, f);
        assert_relative_eq!(v, exact, max_relative = 1e-14);
    }

    #[test]
    fn rect_integral_separable() {
        // integral of t*x over [0,2]x[-1,0] = (2)(-1/2) = -1
        let (v, w) = rect_integral2((0.0, 2.0), (-1.0, 0.0), &[], 64, CellRule::GaussTwo, |t, x| {
            (t * x, 1.0)
        });
        assert_relative_eq!(v, -1.0, max_relative = 1e-13);
        assert_relative_eq!(w, 2.0, max_relative = 1e-13);
    }

    #[test]
    fn rect_integral_with_ray_jump() {
        // density 1 below the ray x = -t/2, 3 above it, over [0,1]x[-1,0].
        // Area above the ray (x > -t/2) is 1/4, below it 3/4.
        let f = |t: f64, x: f64| if x < -0.5 * t { (1.0, 0.0) } else { (3.0, 0.0) };
        let (v, _) = rect_integral2((0.0, 1.0), (-1.0, 0.0), &[-0.5], 256, CellRule::Midpoint, f);
        assert_relative_eq!(v, 1.0 * 0.75 + 3.0 * 0.25, max_relative = 1e-10);
    }

    #[test]
    fn adaptive_simpson_matches_closed_forms() {
        let v = adaptive_simpson(0.0, 1.0, 1e-12, |x| x.exp());
        assert_relative_eq!(v, 1.0f64.exp() - 1.0, max_relative = 1e-11);

        // narrow bump inside a wide interval
        let bump = |x: f64| {
            let s = (x - 0.3) / 0.05;
            if s.abs() < 1.0 {
                (1.0 - s * s).powi(2)
            } else {
                0.0
            }
        };
        let v = adaptive_simpson(0.0, 5.0, 1e-11, bump);
        assert_relative_eq!(v, 16.0 / 15.0 * 0.05, max_relative = 1e-8);
    }

    #[test]
    fn empty_ranges_integrate_to_zero() {
        assert_eq!(line_integral(1.0, 1.0, &[], 8, CellRule::Midpoint, |_| 1.0), 0.0);
        assert_eq!(
            rect_integral2((0.0, 1.0), (0.0, 0.0), &[], 8, CellRule::Midpoint, |_, _| (1.0, 1.0)),
            (0.0, 0.0)
        );
        assert_eq!(adaptive_simpson(2.0, 1.0, 1e-10, |_| 1.0), 0.0);
    }
}
