//! Minimization over Bloch-sphere directions: a coarse `(theta, phi)` grid
//! followed by Nelder-Mead refinement from the best grid points.

use alloc::vec::Vec;
use core::f64::consts::PI;

/// Search settings for the measurement optimizer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimizerConfig {
    /// Grid points along `theta in [0, pi]`, poles included.
    pub grid_theta: usize,
    /// Grid points along `phi in [0, 2 pi)`.
    pub grid_phi: usize,
    /// Number of best grid points refined by the simplex.
    pub starts: usize,
    pub max_iterations: usize,
    /// Required spread of objective values across the simplex.
    pub f_tolerance: f64,
    /// Required simplex diameter in `(theta, phi)`.
    pub x_tolerance: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            grid_theta: 64,
            grid_phi: 128,
            starts: 3,
            max_iterations: 500,
            f_tolerance: 1e-10,
            x_tolerance: 1e-7,
        }
    }
}

impl OptimizerConfig {
    /// Coarser grid for quick sweeps; same refinement tolerances.
    pub fn quick() -> Self {
        OptimizerConfig { grid_theta: 16, grid_phi: 32, ..Self::default() }
    }
}

/// Best point found on the sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereMinimum {
    pub theta: f64,
    pub phi: f64,
    pub value: f64,
    pub converged: bool,
    pub evaluations: usize,
}

/// Minimizes `f(theta, phi)` over the unit sphere.
///
/// Deterministic: grid order is theta-major, ties keep the first point found,
/// and among refined starts the earliest wins on equal values.
pub fn minimize_on_sphere<F>(mut f: F, cfg: &OptimizerConfig) -> SphereMinimum
where
    F: FnMut(f64, f64) -> f64,
{
    let nt = cfg.grid_theta.max(2);
    let np = cfg.grid_phi.max(1);
    let dtheta = PI / (nt - 1) as f64;
    let dphi = 2.0 * PI / np as f64;

    let mut grid: Vec<(f64, f64, f64)> = Vec::with_capacity(nt * np);
    for i in 0..nt {
        let theta = i as f64 * dtheta;
        // the poles are a single point each
        let phis = if i == 0 || i == nt - 1 { 1 } else { np };
        for j in 0..phis {
            let phi = j as f64 * dphi;
            grid.push((f(theta, phi), theta, phi));
        }
    }
    let mut evaluations = grid.len();
    // stable sort keeps first-found order among ties
    grid.sort_by(|a, b| a.0.total_cmp(&b.0));

    let step = dtheta.min(dphi);
    let mut best: Option<SphereMinimum> = None;
    for &(value, theta, phi) in grid.iter().take(cfg.starts.max(1)) {
        let run = nelder_mead_2d(&mut f, [theta, phi], value, step, cfg);
        evaluations += run.evaluations;
        if best.is_none_or(|b| run.value < b.value) {
            best = Some(run);
        }
    }
    let mut best = best.expect("at least one start");
    best.evaluations = evaluations;
    best
}

fn nelder_mead_2d<F>(f: &mut F, start: [f64; 2], start_value: f64, step: f64, cfg: &OptimizerConfig) -> SphereMinimum
where
    F: FnMut(f64, f64) -> f64,
{
    const REFLECT: f64 = 1.0;
    const EXPAND: f64 = 2.0;
    const CONTRACT: f64 = 0.5;
    const SHRINK: f64 = 0.5;

    let mut evaluations = 0usize;
    let mut eval = |p: [f64; 2], evaluations: &mut usize| {
        *evaluations += 1;
        f(p[0], p[1])
    };

    let mut simplex: [([f64; 2], f64); 3] =
        [(start, start_value), ([start[0] + step, start[1]], 0.0), ([start[0], start[1] + step], 0.0)];
    for vertex in simplex.iter_mut().skip(1) {
        vertex.1 = eval(vertex.0, &mut evaluations);
    }

    let mut converged = false;
    for _ in 0..cfg.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[2].1 - simplex[0].1;
        let diameter = simplex
            .iter()
            .skip(1)
            .map(|(p, _)| libm::hypot(p[0] - simplex[0].0[0], p[1] - simplex[0].0[1]))
            .fold(0.0, f64::max);
        if spread <= cfg.f_tolerance && diameter <= cfg.x_tolerance {
            converged = true;
            break;
        }

        let centroid = [(simplex[0].0[0] + simplex[1].0[0]) / 2.0, (simplex[0].0[1] + simplex[1].0[1]) / 2.0];
        let worst = simplex[2];
        let along =
            |t: f64| [centroid[0] + t * (worst.0[0] - centroid[0]), centroid[1] + t * (worst.0[1] - centroid[1])];

        let reflected = along(-REFLECT);
        let fr = eval(reflected, &mut evaluations);
        if fr < simplex[0].1 {
            let expanded = along(-EXPAND);
            let fe = eval(expanded, &mut evaluations);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let p = along(-CONTRACT);
            (p, eval(p, &mut evaluations))
        } else {
            let p = along(CONTRACT);
            (p, eval(p, &mut evaluations))
        };
        if fc < worst.1.min(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        let best = simplex[0].0;
        for vertex in simplex.iter_mut().skip(1) {
            vertex.0 = [best[0] + SHRINK * (vertex.0[0] - best[0]), best[1] + SHRINK * (vertex.0[1] - best[1])];
            vertex.1 = eval(vertex.0, &mut evaluations);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (p, value) = simplex[0];
    SphereMinimum { theta: p[0], phi: p[1], value, converged, evaluations }
}
