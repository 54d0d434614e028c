//! Small derivative-free maximizers used by the inequality lab.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
///
/// Returns `(x_max, f_max)`. `f` is assumed unimodal on the bracket; the
/// best of the final probes and the bracket midpoint is returned.
pub fn golden_section_max<F>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64)
where
    F: FnMut(f64) -> f64,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        // bracket stopped shrinking in floating point
        if x1 >= x2 {
            break;
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordinateDescent {
    /// Half-width of the bracket searched around the current value of each coordinate.
    pub radius: f64,
    /// Golden-section tolerance on each line search.
    pub line_tol: f64,
    /// Stop once a full sweep moves every coordinate by less than this.
    pub step_tol: f64,
    pub max_sweeps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub point: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

impl CoordinateDescent {
    /// Maximizes `f` starting from `start`, one coordinate at a time.
    pub fn maximize<F>(&self, mut f: F, start: &[f64]) -> Optimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let mut x = start.to_vec();
        let mut value = f(&x);
        for sweep in 1..=self.max_sweeps {
            let mut largest_move = 0.0f64;
            for i in 0..x.len() {
                let centre = x[i];
                let mut probe = x.clone();
                let (xi, fi) = golden_section_max(
                    |t| {
                        probe[i] = t;
                        f(&probe)
                    },
                    centre - self.radius,
                    centre + self.radius,
                    self.line_tol,
                );
                // only accept strict improvements so the value never decreases
                if fi > value {
                    largest_move = largest_move.max((xi - centre).abs());
                    x[i] = xi;
                    value = fi;
                }
            }
            if largest_move < self.step_tol {
                return Optimum { point: x, value, iterations: sweep, converged: true };
            }
        }
        Optimum { point: x, value, iterations: self.max_sweeps, converged: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NelderMead {
    pub initial_step: f64,
    pub max_evals: usize,
    /// Stop when the spread of simplex values drops below this.
    pub f_tol: f64,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead { initial_step: 0.3, max_evals: 20_000, f_tol: 1e-15 }
    }
}

impl NelderMead {
    /// Standard Nelder–Mead (reflection 1, expansion 2, contraction ½, shrink ½), maximizing.
    pub fn maximize<F>(&self, mut f: F, start: &[f64]) -> Optimum
    where
        F: FnMut(&[f64]) -> f64,
    {
        let dim = start.len();
        let mut evals = 0usize;
        let mut eval = |p: &[f64], evals: &mut usize| {
            *evals += 1;
            // minimize the negation
            -f(p)
        };
        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(dim + 1);
        simplex.push((start.to_vec(), eval(start, &mut evals)));
        for i in 0..dim {
            let mut p = start.to_vec();
            p[i] += self.initial_step;
            let v = eval(&p, &mut evals);
            simplex.push((p, v));
        }
        let mut converged = false;
        while evals < self.max_evals {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let (best, worst) = (simplex[0].1, simplex[dim].1);
            if (worst - best).abs() <= self.f_tol {
                converged = true;
                break;
            }
            let centroid: Vec<f64> = (0..dim)
                .map(|j| simplex[..dim].iter().map(|(p, _)| p[j]).sum::<f64>() / dim as f64)
                .collect();
            let along = |t: f64| -> Vec<f64> {
                centroid.iter().zip(&simplex[dim].0).map(|(c, w)| c + t * (w - c)).collect()
            };
            let reflected = along(-1.0);
            let fr = eval(&reflected, &mut evals);
            if fr < simplex[0].1 {
                let expanded = along(-2.0);
                let fe = eval(&expanded, &mut evals);
                simplex[dim] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
                continue;
            }
            if fr < simplex[dim - 1].1 {
                simplex[dim] = (reflected, fr);
                continue;
            }
            let (contracted, fc) = if fr < simplex[dim].1 {
                let c = along(-0.5);
                let v = eval(&c, &mut evals);
                (c, v)
            } else {
                let c = along(0.5);
                let v = eval(&c, &mut evals);
                (c, v)
            };
            if fc < simplex[dim].1.min(fr) {
                simplex[dim] = (contracted, fc);
                continue;
            }
            let anchor = simplex[0].0.clone();
            for (p, v) in simplex.iter_mut().skip(1) {
                for (x, a) in p.iter_mut().zip(&anchor) {
                    *x = a + 0.5 * (*x - a);
                }
                *v = eval(p, &mut evals);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (point, v) = simplex.swap_remove(0);
        Optimum { point, value: -v, iterations: evals, converged }
    }
}
