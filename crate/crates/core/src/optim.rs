//! Nelder–Mead simplex minimization.
//!
//! Derivative-free and deterministic: the same objective, start point and
//! settings always produce the same sequence of evaluations.

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadSettings {
    /// Maximum number of simplex iterations.
    pub max_iters: usize,
    /// Offset of the initial simplex vertices along each coordinate.
    pub initial_step: f64,
    /// Stop once the spread of objective values over the simplex is below
    /// `f_tol` and every vertex is within `x_tol` of the best one.
    pub f_tol: f64,
    pub x_tol: f64,
}

impl Default for NelderMeadSettings {
    fn default() -> Self {
        Self { max_iters: 500, initial_step: 0.1, f_tol: 1e-10, x_tol: 1e-10 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub fx: f64,
    pub iterations: usize,
    pub evaluations: usize,
    /// Best objective value after each iteration.
    pub trace: Vec<f64>,
    pub converged: bool,
}

/// Minimizes `f` from `x0` with the standard reflection (1), expansion (2),
/// contraction (1/2) and shrink (1/2) coefficients.
pub fn nelder_mead<E>(
    mut f: impl FnMut(&[f64]) -> Result<f64, E>,
    x0: &[f64],
    settings: &NelderMeadSettings,
) -> Result<Minimum, E> {
    let n = x0.len();
    let mut evaluations = 0;
    let mut eval = |x: &[f64]| -> Result<f64, E> {
        evaluations += 1;
        let v = f(x)?;
        Ok(if v.is_nan() { f64::INFINITY } else { v })
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)?));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += settings.initial_step;
        let fx = eval(&x)?;
        simplex.push((x, fx));
    }
    let mut trace = Vec::new();
    let mut converged = false;
    let mut iterations = 0;
    while iterations < settings.max_iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let spread = simplex[n].1 - simplex[0].1;
        let size = simplex[1..]
            .iter()
            .map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
            .fold(0.0, f64::max);
        if n == 0 || (spread.abs() <= settings.f_tol && size <= settings.x_tol) {
            converged = true;
            break;
        }
        iterations += 1;
        let centroid: Vec<f64> =
            (0..n).map(|j| simplex[..n].iter().map(|(x, _)| x[j]).sum::<f64>() / n as f64).collect();
        let worst = simplex[n].clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst.0).map(|(c, w)| c + t * (c - w)).collect() };

        let xr = along(1.0);
        let fr = eval(&xr)?;
        if fr < simplex[0].1 {
            let xe = along(2.0);
            let fe = eval(&xe)?;
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < worst.1 {
                let xc = along(0.5);
                let fc = eval(&xc)?;
                (xc, fc)
            } else {
                let xc = along(-0.5);
                let fc = eval(&xc)?;
                (xc, fc)
            };
            if fc < fr.min(worst.1) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for vertex in simplex.iter_mut().skip(1) {
                    let x: Vec<f64> = best.iter().zip(&vertex.0).map(|(b, v)| b + 0.5 * (v - b)).collect();
                    let fx = eval(&x)?;
                    *vertex = (x, fx);
                }
            }
        }
        trace.push(simplex.iter().map(|v| v.1).fold(f64::INFINITY, f64::min));
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, fx) = simplex.swap_remove(0);
    Ok(Minimum { x, fx, iterations, evaluations, trace, converged })
}
