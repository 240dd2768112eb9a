//! Levenberg–Marquardt least squares with a forward-difference Jacobian.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop when the relative cost decrease of an accepted step falls below this.
    pub ftol: f64,
    /// Stop when the relative parameter step falls below this.
    pub xtol: f64,
    /// Relative finite-difference step.
    pub fd_step: f64,
    pub lambda0: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        Self {
            max_iter: 200,
            ftol: 1e-12,
            xtol: 1e-10,
            fd_step: 1e-6,
            lambda0: 1e-3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LmResult {
    pub params: Vec<f64>,
    pub residuals: Vec<f64>,
    /// Half the sum of squared residuals.
    pub cost: f64,
    pub iterations: usize,
    pub evaluations: usize,
}

fn cost(r: &[f64]) -> f64 {
    0.5 * r.iter().map(|x| x * x).sum::<f64>()
}

/// Minimizes ½·Σ rᵢ(p)². A residual evaluation that fails or returns
/// non-finite values is treated as an infinitely bad trial point.
pub fn levenberg_marquardt<F>(mut f: F, p0: &[f64], opts: &LmOptions) -> Result<LmResult>
where
    F: FnMut(&[f64]) -> Result<Vec<f64>>,
{
    let n = p0.len();
    let mut p = p0.to_vec();
    let mut r = f(&p)?;
    let mut evals = 1;
    if r.iter().any(|x| !x.is_finite()) {
        return Err(Error::Calibration {
            fit: "lm",
            reason: "residuals are not finite at the initial point".into(),
        });
    }
    let m = r.len();
    let mut c = cost(&r);
    let mut lambda = opts.lambda0;
    let mut it = 0;
    'outer: while it < opts.max_iter {
        it += 1;
        let mut j = DMatrix::zeros(m, n);
        for k in 0..n {
            let h = opts.fd_step * p[k].abs().max(1e-3);
            let mut q = p.clone();
            q[k] += h;
            evals += 1;
            let (rq, h) = match f(&q) {
                Ok(rq) if rq.iter().all(|x| x.is_finite()) => (rq, h),
                _ => {
                    // Parameter bound on the forward side: difference backwards.
                    q[k] = p[k] - h;
                    evals += 1;
                    (f(&q)?, -h)
                }
            };
            for i in 0..m {
                j[(i, k)] = (rq[i] - r[i]) / h;
            }
        }
        let rv = DVector::from_column_slice(&r);
        let jtj = j.transpose() * &j;
        let g = j.transpose() * &rv;
        if g.amax() == 0.0 {
            break;
        }
        loop {
            let mut a = jtj.clone();
            for k in 0..n {
                a[(k, k)] += lambda * jtj[(k, k)].max(1e-12);
            }
            let Some(step) = a.lu().solve(&(-&g)) else {
                lambda *= 10.0;
                if lambda > 1e16 {
                    break 'outer;
                }
                continue;
            };
            let q: Vec<f64> = p.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let trial = f(&q);
            evals += 1;
            let ok = match &trial {
                Ok(rq) if rq.iter().all(|x| x.is_finite()) => cost(rq) < c,
                _ => false,
            };
            if ok {
                let rq = trial.expect("checked");
                let cq = cost(&rq);
                let small_f = (c - cq) <= opts.ftol * c;
                let pn = p.iter().map(|x| x * x).sum::<f64>().sqrt();
                let small_x = step.norm() <= opts.xtol * (pn + opts.xtol);
                p = q;
                r = rq;
                c = cq;
                lambda = (lambda / 10.0).max(1e-15);
                if small_f || small_x || c == 0.0 {
                    break 'outer;
                }
                break;
            }
            lambda *= 10.0;
            if lambda > 1e16 {
                break 'outer;
            }
        }
    }
    Ok(LmResult {
        params: p,
        residuals: r,
        cost: c,
        iterations: it,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn rosenbrock() {
        let f = |p: &[f64]| Ok(vec![10.0 * (p[1] - p[0] * p[0]), 1.0 - p[0]]);
        let r = levenberg_marquardt(f, &[-1.2, 1.0], &LmOptions::default()).unwrap();
        assert_relative_eq!(r.params[0], 1.0, epsilon = 1e-6);
        assert_relative_eq!(r.params[1], 1.0, epsilon = 1e-6);
    }

    #[test]
    fn exponential_fit_recovers_parameters() {
        let xs: Vec<f64> = (0..20).map(|k| k as f64 * 0.25).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * (-0.7 * x).exp()).collect();
        let f = |p: &[f64]| Ok(xs.iter().zip(&ys).map(|(x, y)| p[0] * (-p[1] * x).exp() - y).collect());
        let r = levenberg_marquardt(f, &[1.0, 0.2], &LmOptions::default()).unwrap();
        assert_relative_eq!(r.params[0], 2.5, max_relative = 1e-7);
        assert_relative_eq!(r.params[1], 0.7, max_relative = 1e-7);
    }

    #[test]
    fn deterministic() {
        let f = |p: &[f64]| Ok(vec![p[0].sin() - 0.3, p[0] * p[1] - 1.0, p[1] - 2.0]);
        let a = levenberg_marquardt(f, &[0.1, 0.1], &LmOptions::default()).unwrap();
        let b = levenberg_marquardt(f, &[0.1, 0.1], &LmOptions::default()).unwrap();
        assert_eq!(a, b);
    }
}
