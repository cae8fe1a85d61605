//! Parallel parameter sweeps with results kept in input order.

use rayon::prelude::*;

use crate::error::Result;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub param: f64,
    pub outcome: Result<T>,
}

/// `points` evenly spaced values from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![start],
        _ => {
            let h = (stop - start) / (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        stop
                    } else {
                        start + h * i as f64
                    }
                })
                .collect()
        }
    }
}

/// Evaluate `f` at every parameter on the rayon pool.
pub fn sweep<T, F>(params: &[f64], f: F) -> Vec<SweepPoint<T>>
where
    T: Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    params
        .par_iter()
        .map(|&p| SweepPoint {
            param: p,
            outcome: f(p),
        })
        .collect()
}
