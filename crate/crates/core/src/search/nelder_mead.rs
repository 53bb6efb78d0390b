//! Nelder–Mead simplex minimization with the standard coefficients.

/// Reflection coefficient.
pub const REFLECTION: f64 = 1.0;
/// Expansion coefficient.
pub const EXPANSION: f64 = 2.0;
/// Contraction coefficient.
pub const CONTRACTION: f64 = 0.5;
/// Shrink coefficient.
pub const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub max_iterations: usize,
    /// Stop once every vertex is within this Euclidean distance of the best one.
    pub diameter_tol: f64,
    /// Edge length of the initial axis-aligned simplex.
    pub initial_step: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
    pub converged: bool,
    /// Best value after each iteration.
    pub history: Vec<f64>,
}

impl NelderMead {
    pub fn minimize<F>(&self, mut f: F, start: &[f64]) -> Minimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let n = start.len();
        let mut evaluations = 0;
        let mut eval = |x: &[f64]| {
            evaluations += 1;
            f(x)
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((start.to_vec(), eval(start)));
        for i in 0..n {
            let mut x = start.to_vec();
            x[i] += self.initial_step;
            let fx = eval(&x);
            simplex.push((x, fx));
        }

        let mut history = Vec::new();
        let mut converged = false;
        let mut iterations = 0;
        while iterations < self.max_iterations {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            if diameter(&simplex) < self.diameter_tol {
                converged = true;
                break;
            }
            iterations += 1;

            let worst = simplex[n].clone();
            let centroid = centroid(&simplex[..n]);
            let reflected = along(&centroid, &worst.0, -REFLECTION);
            let f_reflected = eval(&reflected);

            if f_reflected < simplex[0].1 {
                let expanded = along(&centroid, &reflected, EXPANSION);
                let f_expanded = eval(&expanded);
                simplex[n] = if f_expanded < f_reflected {
                    (expanded, f_expanded)
                } else {
                    (reflected, f_reflected)
                };
            } else if f_reflected < simplex[n - 1].1 {
                simplex[n] = (reflected, f_reflected);
            } else {
                let outside = f_reflected < worst.1;
                let target = if outside { &reflected } else { &worst.0 };
                let contracted = along(&centroid, target, CONTRACTION);
                let f_contracted = eval(&contracted);
                let accept = if outside {
                    f_contracted <= f_reflected
                } else {
                    f_contracted < worst.1
                };
                if accept {
                    simplex[n] = (contracted, f_contracted);
                } else {
                    let best = simplex[0].0.clone();
                    for vertex in simplex.iter_mut().skip(1) {
                        let x = along(&best, &vertex.0, SHRINK);
                        let fx = eval(&x);
                        *vertex = (x, fx);
                    }
                }
            }
            history.push(simplex.iter().map(|v| v.1).fold(f64::INFINITY, f64::min));
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (point, value) = simplex.swap_remove(0);
        if !converged {
            converged = diameter_of(&point, &simplex) < self.diameter_tol;
        }
        Minimum {
            point,
            value,
            evaluations,
            iterations,
            converged,
            history,
        }
    }
}

// origin + t·(target − origin)
fn along(origin: &[f64], target: &[f64], t: f64) -> Vec<f64> {
    origin.iter().zip(target).map(|(o, x)| o + t * (x - o)).collect()
}

fn centroid(vertices: &[(Vec<f64>, f64)]) -> Vec<f64> {
    let n = vertices.len() as f64;
    let mut c = vec![0.0; vertices[0].0.len()];
    for (x, _) in vertices {
        for (ci, xi) in c.iter_mut().zip(x) {
            *ci += xi / n;
        }
    }
    c
}

fn distance(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn diameter(simplex: &[(Vec<f64>, f64)]) -> f64 {
    diameter_of(&simplex[0].0, &simplex[1..])
}

fn diameter_of(best: &[f64], rest: &[(Vec<f64>, f64)]) -> f64 {
    rest.iter().map(|(x, _)| distance(best, x)).fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn solver() -> NelderMead {
        NelderMead {
            max_iterations: 5000,
            diameter_tol: 1e-10,
            initial_step: 0.5,
        }
    }

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = solver().minimize(f, &[-1.2, 1.0]);
        assert!(m.converged);
        assert!((m.point[0] - 1.0).abs() < 1e-6 && (m.point[1] - 1.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn kinked_objective() {
        let f = |x: &[f64]| (x[0] - 0.3).abs() + 2.0 * (x[1] + 0.1).abs() + (x[2]).abs();
        let m = solver().minimize(f, &[1.0, 1.0, 1.0]);
        assert!(m.value < 1e-8, "{m:?}");
    }

    #[test]
    fn flat_objective_shrinks_to_convergence() {
        let m = solver().minimize(|_| 0.0, &[0.0, 0.0]);
        assert!(m.converged);
        assert!(m.iterations < 100);
    }

    #[test]
    fn history_is_non_increasing() {
        let f = |x: &[f64]| x.iter().map(|v| (v - 2.0).powi(4)).sum::<f64>();
        let m = solver().minimize(f, &[0.0, 5.0, -3.0]);
        assert!(m.history.windows(2).all(|w| w[1] <= w[0]));
    }
}
