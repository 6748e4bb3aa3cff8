//! Derivative kernels along one grid axis of a row-major array.
//!
//! Spectral derivatives multiply by (ik)^order in Fourier space with the
//! grid wavenumbers k ∈ 2π/L · {0, 1, …, n/2, −n/2+1, …, −1}; the Nyquist
//! mode is zeroed for odd derivative orders (it carries no sign information).

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::{DerivMethod, GridSpec};

thread_local! {
    static PLANS: RefCell<PlanCache> = RefCell::new(PlanCache::default());
}

#[derive(Default)]
struct PlanCache {
    planner: Option<FftPlanner<f64>>,
    forward: HashMap<usize, Arc<dyn Fft<f64>>>,
    inverse: HashMap<usize, Arc<dyn Fft<f64>>>,
}

impl PlanCache {
    fn get(&mut self, n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
        let planner = self.planner.get_or_insert_with(FftPlanner::new);
        let f = self
            .forward
            .entry(n)
            .or_insert_with(|| planner.plan_fft_forward(n))
            .clone();
        let i = self
            .inverse
            .entry(n)
            .or_insert_with(|| planner.plan_fft_inverse(n))
            .clone();
        (f, i)
    }
}

pub(crate) fn fft_plans(n: usize) -> (Arc<dyn Fft<f64>>, Arc<dyn Fft<f64>>) {
    PLANS.with(|c| c.borrow_mut().get(n))
}

/// Signed wavenumbers 2π m / L for an n-point axis.
pub(crate) fn wavenumbers(n: usize, length: f64) -> Vec<f64> {
    let dk = 2.0 * std::f64::consts::PI / length;
    (0..n)
        .map(|i| {
            let m = if i <= n / 2 { i as i64 } else { i as i64 - n as i64 };
            m as f64 * dk
        })
        .collect()
}

/// Iterate over all 1-D lines along `axis`, calling `f` with (base, stride).
fn for_each_line(grid: &GridSpec, axis: usize, mut f: impl FnMut(usize, usize)) {
    let n = grid.n();
    let strides = [n[1] * n[2], n[2], 1];
    let stride = strides[axis];
    let (oa, ob) = match axis {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    for ia in 0..n[oa] {
        for ib in 0..n[ob] {
            let mut idx = [0usize; 3];
            idx[oa] = ia;
            idx[ob] = ib;
            f(grid.index(idx), stride);
        }
    }
}

/// Derivative of order 1 or 2 along one grid axis of a complex array.
pub(crate) fn derivative_axis_complex(
    grid: &GridSpec,
    values: &[Complex64],
    axis: usize,
    order: u32,
    method: DerivMethod,
) -> Vec<Complex64> {
    match method {
        DerivMethod::Spectral => spectral_axis(grid, values, axis, order),
        DerivMethod::Central2 => central_axis(grid, values, axis, order),
    }
}

/// Derivative of order 1 or 2 along one grid axis of a real array.
pub(crate) fn derivative_axis_real(
    grid: &GridSpec,
    values: &[f64],
    axis: usize,
    order: u32,
    method: DerivMethod,
) -> Vec<f64> {
    match method {
        DerivMethod::Spectral => {
            let complex: Vec<Complex64> = values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
            spectral_axis(grid, &complex, axis, order)
                .into_iter()
                .map(|v| v.re)
                .collect()
        }
        DerivMethod::Central2 => {
            let n = grid.n()[axis];
            let dx = grid.spacing(axis);
            let mut out = vec![0.0f64; values.len()];
            for_each_line(grid, axis, |base, stride| {
                for i in 0..n {
                    let prev = values[base + ((i + n - 1) % n) * stride];
                    let next = values[base + ((i + 1) % n) * stride];
                    let here = values[base + i * stride];
                    out[base + i * stride] = match order {
                        1 => (next - prev) / (2.0 * dx),
                        _ => (next - 2.0 * here + prev) / (dx * dx),
                    };
                }
            });
            out
        }
    }
}

fn spectral_axis(grid: &GridSpec, values: &[Complex64], axis: usize, order: u32) -> Vec<Complex64> {
    let n = grid.n()[axis];
    let ks = wavenumbers(n, grid.length(axis));
    // multiplier (ik)^order; Nyquist zeroed for odd orders
    let mult: Vec<Complex64> = ks
        .iter()
        .enumerate()
        .map(|(i, &k)| match order {
            1 => {
                if n % 2 == 0 && i == n / 2 {
                    Complex64::new(0.0, 0.0)
                } else {
                    Complex64::new(0.0, k)
                }
            }
            _ => Complex64::new(-k * k, 0.0),
        })
        .collect();

    let (fwd, inv) = fft_plans(n);
    let scale = 1.0 / n as f64;
    let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for_each_line(grid, axis, |base, stride| {
        for i in 0..n {
            line[i] = values[base + i * stride];
        }
        fwd.process(&mut line);
        for (v, m) in line.iter_mut().zip(&mult) {
            *v *= m;
        }
        inv.process(&mut line);
        for i in 0..n {
            out[base + i * stride] = line[i] * scale;
        }
    });
    out
}

fn central_axis(grid: &GridSpec, values: &[Complex64], axis: usize, order: u32) -> Vec<Complex64> {
    let n = grid.n()[axis];
    let dx = grid.spacing(axis);
    let mut out = vec![Complex64::new(0.0, 0.0); values.len()];
    for_each_line(grid, axis, |base, stride| {
        for i in 0..n {
            let prev = values[base + ((i + n - 1) % n) * stride];
            let next = values[base + ((i + 1) % n) * stride];
            let here = values[base + i * stride];
            out[base + i * stride] = match order {
                1 => (next - prev) / (2.0 * dx),
                _ => (next - 2.0 * here + prev) / (dx * dx),
            };
        }
    });
    out
}

/// In-place FFT along one axis (used by the split-step propagators).
pub(crate) fn fft_axis(grid: &GridSpec, values: &mut [Complex64], axis: usize, forward: bool) {
    let n = grid.n()[axis];
    let (fwd, inv) = fft_plans(n);
    let plan = if forward { fwd } else { inv };
    let scale = if forward { 1.0 } else { 1.0 / n as f64 };
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for_each_line(grid, axis, |base, stride| {
        for i in 0..n {
            line[i] = values[base + i * stride];
        }
        plan.process(&mut line);
        for i in 0..n {
            values[base + i * stride] = line[i] * scale;
        }
    });
}
