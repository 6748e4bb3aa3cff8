use num_complex::Complex64;

use super::spectral;
use super::{neumaier_sum, DerivMethod, GridSpec};
use crate::error::{QsimError, Result};

/// Real scalar field on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    pub grid: GridSpec,
    pub values: Vec<f64>,
}

/// Complex scalar field on a grid (wave functions and intermediates).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexField {
    pub grid: GridSpec,
    pub values: Vec<Complex64>,
}

/// Vector field stored as three physical (x, y, z) component fields sharing
/// one grid, even when dim < 3.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub components: [ScalarField; 3],
}

/// Two-component spinor field (spin-up and spin-down amplitudes per point).
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    pub grid: GridSpec,
    pub up: Vec<Complex64>,
    pub down: Vec<Complex64>,
}

/// Validity mask; `true` marks points where a derived quantity is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Mask {
    pub grid: GridSpec,
    pub valid: Vec<bool>,
}

/// A field together with the mask on which it is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Masked<T> {
    pub field: T,
    pub mask: Mask,
}

impl ScalarField {
    pub fn zeros(grid: &GridSpec) -> Self {
        ScalarField {
            grid: grid.clone(),
            values: vec![0.0; grid.point_count()],
        }
    }

    pub fn constant(grid: &GridSpec, c: f64) -> Self {
        ScalarField {
            grid: grid.clone(),
            values: vec![c; grid.point_count()],
        }
    }

    pub fn from_fn(grid: &GridSpec, mut f: impl FnMut([f64; 3]) -> f64) -> Self {
        let values = (0..grid.point_count()).map(|i| f(grid.position(i))).collect();
        ScalarField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn check_finite(&self, context: &str) -> Result<()> {
        if self.values.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(QsimError::NonFinite {
                context: context.to_string(),
            })
        }
    }

    /// ∇f as a physical vector field; components along unused dims are zero.
    pub fn gradient(&self, method: DerivMethod) -> Result<VectorField> {
        self.check_finite("gradient input")?;
        let mut out = VectorField::zeros(&self.grid);
        for a in 0..self.grid.dim() {
            let d = spectral::derivative_axis_real(&self.grid, &self.values, a, 1, method);
            out.components[self.grid.physical_axis(a)].values = d;
        }
        Ok(out)
    }

    /// ∇²f summed over active axes.
    pub fn laplacian(&self, method: DerivMethod) -> Result<ScalarField> {
        self.check_finite("laplacian input")?;
        let mut acc = vec![0.0f64; self.values.len()];
        for a in 0..self.grid.dim() {
            let d = spectral::derivative_axis_real(&self.grid, &self.values, a, 2, method);
            for (s, v) in acc.iter_mut().zip(d) {
                *s += v;
            }
        }
        Ok(ScalarField {
            grid: self.grid.clone(),
            values: acc,
        })
    }

    /// Riemann sum × cell volume; exact for band-limited periodic integrands.
    pub fn integrate(&self) -> f64 {
        neumaier_sum(self.values.iter().copied()) * self.grid.cell_volume()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

impl ComplexField {
    pub fn zeros(grid: &GridSpec) -> Self {
        ComplexField {
            grid: grid.clone(),
            values: vec![Complex64::new(0.0, 0.0); grid.point_count()],
        }
    }

    pub fn from_fn(grid: &GridSpec, mut f: impl FnMut([f64; 3]) -> Complex64) -> Self {
        let values = (0..grid.point_count()).map(|i| f(grid.position(i))).collect();
        ComplexField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn check_finite(&self, context: &str) -> Result<()> {
        if self.values.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            Ok(())
        } else {
            Err(QsimError::NonFinite {
                context: context.to_string(),
            })
        }
    }

    /// Per-axis first derivatives as physical components (complex).
    pub fn gradient(&self, method: DerivMethod) -> Result<[ComplexField; 3]> {
        self.check_finite("gradient input")?;
        let mut out = [Self::zeros(&self.grid), Self::zeros(&self.grid), Self::zeros(&self.grid)];
        for a in 0..self.grid.dim() {
            let d = spectral::derivative_axis_complex(&self.grid, &self.values, a, 1, method);
            out[self.grid.physical_axis(a)].values = d;
        }
        Ok(out)
    }

    pub fn laplacian(&self, method: DerivMethod) -> Result<ComplexField> {
        self.check_finite("laplacian input")?;
        let mut acc = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for a in 0..self.grid.dim() {
            let d = spectral::derivative_axis_complex(&self.grid, &self.values, a, 2, method);
            for (s, v) in acc.iter_mut().zip(d) {
                *s += v;
            }
        }
        Ok(ComplexField {
            grid: self.grid.clone(),
            values: acc,
        })
    }

    pub fn integrate(&self) -> Complex64 {
        let re = neumaier_sum(self.values.iter().map(|v| v.re));
        let im = neumaier_sum(self.values.iter().map(|v| v.im));
        Complex64::new(re, im) * self.grid.cell_volume()
    }

    /// |ψ|² as a scalar field.
    pub fn abs_sq(&self) -> ScalarField {
        ScalarField {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| v.norm_sqr()).collect(),
        }
    }

    /// ∫|ψ|² dV.
    pub fn norm_sq(&self) -> f64 {
        neumaier_sum(self.values.iter().map(|v| v.norm_sqr())) * self.grid.cell_volume()
    }

    pub fn scale(&mut self, c: Complex64) {
        for v in &mut self.values {
            *v *= c;
        }
    }
}

impl VectorField {
    pub fn zeros(grid: &GridSpec) -> Self {
        VectorField {
            components: [
                ScalarField::zeros(grid),
                ScalarField::zeros(grid),
                ScalarField::zeros(grid),
            ],
        }
    }

    pub fn from_fn(grid: &GridSpec, mut f: impl FnMut([f64; 3]) -> [f64; 3]) -> Self {
        let mut out = Self::zeros(grid);
        for i in 0..grid.point_count() {
            let v = f(grid.position(i));
            for c in 0..3 {
                out.components[c].values[i] = v[c];
            }
        }
        out
    }

    pub fn grid(&self) -> &GridSpec {
        &self.components[0].grid
    }

    pub fn at(&self, idx: usize) -> [f64; 3] {
        [
            self.components[0].values[idx],
            self.components[1].values[idx],
            self.components[2].values[idx],
        ]
    }

    pub fn set(&mut self, idx: usize, v: [f64; 3]) {
        for c in 0..3 {
            self.components[c].values[idx] = v[c];
        }
    }

    /// ∇·v over active axes (physical components mapped back to grid axes).
    pub fn divergence(&self, method: DerivMethod) -> Result<ScalarField> {
        let grid = self.grid().clone();
        let mut acc = vec![0.0f64; grid.point_count()];
        for a in 0..grid.dim() {
            let comp = &self.components[grid.physical_axis(a)];
            comp.check_finite("divergence input")?;
            let d = spectral::derivative_axis_real(&grid, &comp.values, a, 1, method);
            for (s, v) in acc.iter_mut().zip(d) {
                *s += v;
            }
        }
        Ok(ScalarField { grid, values: acc })
    }

    pub fn max_norm(&self) -> f64 {
        (0..self.grid().point_count()).fold(0.0f64, |m, i| {
            let v = self.at(i);
            m.max((v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt())
        })
    }
}

impl SpinorField {
    pub fn zeros(grid: &GridSpec) -> Self {
        let n = grid.point_count();
        SpinorField {
            grid: grid.clone(),
            up: vec![Complex64::new(0.0, 0.0); n],
            down: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_fn(grid: &GridSpec, mut f: impl FnMut([f64; 3]) -> (Complex64, Complex64)) -> Self {
        let mut s = Self::zeros(grid);
        for i in 0..grid.point_count() {
            let (u, d) = f(grid.position(i));
            s.up[i] = u;
            s.down[i] = d;
        }
        s
    }

    /// Build from a shared spatial envelope and a constant normalized spinor.
    pub fn from_envelope(envelope: &ComplexField, spinor: [Complex64; 2]) -> Self {
        SpinorField {
            grid: envelope.grid.clone(),
            up: envelope.values.iter().map(|v| v * spinor[0]).collect(),
            down: envelope.values.iter().map(|v| v * spinor[1]).collect(),
        }
    }

    pub fn check_finite(&self, context: &str) -> Result<()> {
        let ok = self
            .up
            .iter()
            .chain(self.down.iter())
            .all(|v| v.re.is_finite() && v.im.is_finite());
        if ok {
            Ok(())
        } else {
            Err(QsimError::NonFinite {
                context: context.to_string(),
            })
        }
    }

    pub fn component(&self, c: usize) -> ComplexField {
        ComplexField {
            grid: self.grid.clone(),
            values: if c == 0 { self.up.clone() } else { self.down.clone() },
        }
    }

    /// ρ_p = ψ†ψ pointwise.
    pub fn density(&self) -> ScalarField {
        ScalarField {
            grid: self.grid.clone(),
            values: self
                .up
                .iter()
                .zip(&self.down)
                .map(|(u, d)| u.norm_sqr() + d.norm_sqr())
                .collect(),
        }
    }

    /// ∫ψ†ψ dV.
    pub fn norm_sq(&self) -> f64 {
        neumaier_sum(
            self.up
                .iter()
                .zip(&self.down)
                .map(|(u, d)| u.norm_sqr() + d.norm_sqr()),
        ) * self.grid.cell_volume()
    }

    pub fn scale(&mut self, c: f64) {
        for v in self.up.iter_mut().chain(self.down.iter_mut()) {
            *v *= c;
        }
    }
}

impl Mask {
    pub fn all_valid(grid: &GridSpec) -> Self {
        Mask {
            grid: grid.clone(),
            valid: vec![true; grid.point_count()],
        }
    }

    /// Mask from a density floor: valid where ρ ≥ threshold.
    pub fn from_floor(rho: &ScalarField, threshold: f64) -> Self {
        Mask {
            grid: rho.grid.clone(),
            valid: rho.values.iter().map(|&r| r >= threshold).collect(),
        }
    }

    pub fn and(&self, other: &Mask) -> Mask {
        Mask {
            grid: self.grid.clone(),
            valid: self
                .valid
                .iter()
                .zip(&other.valid)
                .map(|(a, b)| *a && *b)
                .collect(),
        }
    }

    pub fn count_valid(&self) -> usize {
        self.valid.iter().filter(|v| **v).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn grid_1d(n: usize, len: f64) -> GridSpec {
        GridSpec::new(1, &[n], &[len], &[0.0]).unwrap()
    }

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = grid_1d(64, 10.0);
        let f = ScalarField::constant(&g, 5.0);
        for method in [DerivMethod::Spectral, DerivMethod::Central2] {
            let grad = f.gradient(method).unwrap();
            assert!(grad.components.iter().all(|c| c.max_abs() < 1e-12));
        }
    }

    #[test]
    fn spectral_gradient_of_sine_1d() {
        // f = sin(2πx/L) → f' = (2π/L) cos(2πx/L), max error ≤ 1e−10
        let l = 7.0;
        let g = grid_1d(64, l);
        let k = 2.0 * PI / l;
        let f = ScalarField::from_fn(&g, |p| (k * p[0]).sin());
        let grad = f.gradient(DerivMethod::Spectral).unwrap();
        for (i, p) in g.positions() {
            assert_abs_diff_eq!(grad.components[0].values[i], k * (k * p[0]).cos(), epsilon = 1e-10);
        }
        assert!(grad.components[1].max_abs() == 0.0);
        assert!(grad.components[2].max_abs() == 0.0);
    }

    #[test]
    fn spectral_gradient_of_product_2d() {
        let (lx, ly) = (5.0, 3.0);
        let g = GridSpec::new(2, &[64, 48], &[lx, ly], &[0.0, 0.0]).unwrap();
        let (kx, ky) = (2.0 * PI / lx, 2.0 * PI / ly);
        let f = ScalarField::from_fn(&g, |p| (kx * p[0]).sin() * (ky * p[1]).sin());
        let grad = f.gradient(DerivMethod::Spectral).unwrap();
        for (i, p) in g.positions() {
            let dx = kx * (kx * p[0]).cos() * (ky * p[1]).sin();
            let dy = ky * (kx * p[0]).sin() * (ky * p[1]).cos();
            assert_abs_diff_eq!(grad.components[0].values[i], dx, epsilon = 1e-10);
            assert_abs_diff_eq!(grad.components[1].values[i], dy, epsilon = 1e-10);
        }
    }

    #[test]
    fn spectral_laplacian_of_sine() {
        let l = 4.0;
        let g = grid_1d(64, l);
        let k = 2.0 * PI / l;
        let f = ScalarField::from_fn(&g, |p| (k * p[0]).sin());
        let lap = f.laplacian(DerivMethod::Spectral).unwrap();
        for (i, p) in g.positions() {
            assert_abs_diff_eq!(lap.values[i], -k * k * (k * p[0]).sin(), epsilon = 1e-10);
        }
    }

    #[test]
    fn laplacian_of_gaussian_matches_closed_form() {
        // f = exp(−x²/2σ²) → ∇²f = (x²/σ⁴ − 1/σ²) f, 1e−8 RMS on a wide box
        let sigma = 0.8;
        let g = GridSpec::new(1, &[256], &[24.0], &[-12.0]).unwrap();
        let f = ScalarField::from_fn(&g, |p| (-p[0] * p[0] / (2.0 * sigma * sigma)).exp());
        assert!(f.values[0] < 1e-12, "boundary value not negligible");
        let lap = f.laplacian(DerivMethod::Spectral).unwrap();
        let mut sq = 0.0;
        for (i, p) in g.positions() {
            let x = p[0];
            let expect = (x * x / sigma.powi(4) - 1.0 / (sigma * sigma)) * f.values[i];
            sq += (lap.values[i] - expect).powi(2);
        }
        assert!((sq / g.point_count() as f64).sqrt() < 1e-8);
    }

    #[test]
    fn integrate_examples() {
        let g = GridSpec::new(2, &[32, 16], &[2.0, 3.0], &[0.0, 0.0]).unwrap();
        // f ≡ 1 → total volume
        assert_abs_diff_eq!(ScalarField::constant(&g, 1.0).integrate(), 6.0, epsilon = 1e-12);
        // periodic mean of sine is 0
        let k = 2.0 * PI / 2.0;
        let f = ScalarField::from_fn(&g, |p| (k * p[0]).sin());
        assert!(f.integrate().abs() < 1e-12);
        // normalized Gaussian integrates to 1
        let gg = GridSpec::new(1, &[256], &[20.0], &[-10.0]).unwrap();
        let sigma = 0.7;
        let norm = 1.0 / (2.0 * PI * sigma * sigma).sqrt().sqrt().powi(2);
        let f = ScalarField::from_fn(&gg, |p| norm * (-p[0] * p[0] / (2.0 * sigma * sigma)).exp());
        assert_abs_diff_eq!(f.integrate(), 1.0, epsilon = 1e-10);
    }

    #[test]
    fn integral_of_gradient_vanishes_on_periodic_grid() {
        let g = grid_1d(64, 5.0);
        let f = ScalarField::from_fn(&g, |p| (2.0 * PI * p[0] / 5.0).sin().exp());
        for method in [DerivMethod::Spectral, DerivMethod::Central2] {
            let grad = f.gradient(method).unwrap();
            assert!(grad.components[0].integrate().abs() < 1e-10);
        }
    }

    #[test]
    fn laplacian_equals_div_grad() {
        let g = GridSpec::new(2, &[48, 48], &[5.0, 5.0], &[0.0, 0.0]).unwrap();
        let f = ScalarField::from_fn(&g, |p| {
            (2.0 * PI * p[0] / 5.0).sin() * (4.0 * PI * p[1] / 5.0).cos()
        });
        let lap = f.laplacian(DerivMethod::Spectral).unwrap();
        let divgrad = f
            .gradient(DerivMethod::Spectral)
            .unwrap()
            .divergence(DerivMethod::Spectral)
            .unwrap();
        let mut sq = 0.0;
        for i in 0..g.point_count() {
            sq += (lap.values[i] - divgrad.values[i]).powi(2);
        }
        assert!((sq / g.point_count() as f64).sqrt() < 1e-9);
    }

    #[test]
    fn central2_converges_at_second_order() {
        let l = 2.0 * PI;
        let err = |n: usize| {
            let g = grid_1d(n, l);
            let f = ScalarField::from_fn(&g, |p| (3.0 * p[0]).sin());
            let grad = f.gradient(DerivMethod::Central2).unwrap();
            g.positions().fold(0.0f64, |m, (i, p)| {
                m.max((grad.components[0].values[i] - 3.0 * (3.0 * p[0]).cos()).abs())
            })
        };
        let ratio = err(64) / err(128);
        assert!(ratio > 3.5 && ratio < 4.5, "central2 order wrong: {ratio}");
    }

    #[test]
    fn rejects_non_finite_input() {
        let g = grid_1d(8, 1.0);
        let mut f = ScalarField::constant(&g, 1.0);
        f.values[3] = f64::NAN;
        assert!(f.gradient(DerivMethod::Spectral).is_err());
        assert!(f.laplacian(DerivMethod::Central2).is_err());
    }

    #[test]
    fn gradient_respects_axis_map() {
        // grid axes simulate the physical (y, z) plane
        let g = GridSpec::with_axes(2, &[32, 32], &[4.0, 4.0], &[0.0, 0.0], [1, 2, 0]).unwrap();
        let k = 2.0 * PI / 4.0;
        let f = ScalarField::from_fn(&g, |p| (k * p[1]).sin());
        let grad = f.gradient(DerivMethod::Spectral).unwrap();
        assert!(grad.components[0].max_abs() == 0.0); // physical x unused
        assert!(grad.components[1].max_abs() > 1.0); // d/dy lives in slot 1
        assert!(grad.components[2].max_abs() < 1e-10);
    }
}
