//! Uniform periodic Cartesian grids (1–3D) and the fields that live on them.
//!
//! Values are stored row-major with the last active axis fastest. Vector
//! quantities always carry three physical (x, y, z) components even when
//! dim < 3; each grid axis is mapped onto a physical axis by [`GridSpec::axes`]
//! so that, e.g., a Stern-Gerlach run can simulate the (y, z) plane.

mod field;
mod snapshot;
pub(crate) mod spectral;

pub use field::{ComplexField, Mask, Masked, ScalarField, SpinorField, VectorField};
pub use snapshot::{read_snapshot, write_snapshot, ElementKind, SnapshotData, SnapshotHeader};

use crate::error::{QsimError, Result};

/// Hard cap on total point count (2^28) accepted by the constructor.
pub const MAX_POINTS: usize = 1 << 28;

/// Derivative backend. Spectral is the default; 2nd-order central differences
/// exist for convergence-order tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DerivMethod {
    #[default]
    Spectral,
    Central2,
}

/// Uniform periodic Cartesian grid.
///
/// Inactive axes (grid axis index ≥ dim) have n = 1 and unit length; `axes`
/// maps grid axes to physical axes (identity by default).
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    dim: usize,
    n: [usize; 3],
    length: [f64; 3],
    origin: [f64; 3],
    axes: [usize; 3],
}

impl GridSpec {
    pub fn new(dim: usize, n: &[usize], length: &[f64], origin: &[f64]) -> Result<Self> {
        Self::with_axes(dim, n, length, origin, [0, 1, 2])
    }

    /// Construct with an explicit grid-axis → physical-axis map (a permutation
    /// of {0, 1, 2}).
    pub fn with_axes(
        dim: usize,
        n: &[usize],
        length: &[f64],
        origin: &[f64],
        axes: [usize; 3],
    ) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(QsimError::InvalidGrid(format!("dim must be 1–3, got {dim}")));
        }
        if n.len() < dim || length.len() < dim || origin.len() < dim {
            return Err(QsimError::InvalidGrid(format!(
                "n/length/origin need at least {dim} entries"
            )));
        }
        let mut seen = [false; 3];
        for &a in &axes {
            if a > 2 || seen[a] {
                return Err(QsimError::InvalidGrid(format!(
                    "axes must be a permutation of 0..3, got {axes:?}"
                )));
            }
            seen[a] = true;
        }
        let mut nn = [1usize; 3];
        let mut ll = [1.0f64; 3];
        let mut oo = [0.0f64; 3];
        let mut total: usize = 1;
        for i in 0..dim {
            if n[i] < 8 {
                return Err(QsimError::InvalidGrid(format!(
                    "axis {i}: need at least 8 points, got {}",
                    n[i]
                )));
            }
            if !(length[i] > 0.0) || !length[i].is_finite() {
                return Err(QsimError::InvalidGrid(format!(
                    "axis {i}: length must be positive and finite, got {}",
                    length[i]
                )));
            }
            if !origin[i].is_finite() {
                return Err(QsimError::InvalidGrid(format!("axis {i}: origin not finite")));
            }
            nn[i] = n[i];
            ll[i] = length[i];
            oo[i] = origin[i];
            total = total
                .checked_mul(n[i])
                .ok_or_else(|| QsimError::InvalidGrid("point count overflow".into()))?;
        }
        if total > MAX_POINTS {
            return Err(QsimError::InvalidGrid(format!(
                "total point count {total} exceeds 2^28"
            )));
        }
        Ok(GridSpec {
            dim,
            n: nn,
            length: ll,
            origin: oo,
            axes,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Points per grid axis (1 on inactive axes).
    pub fn n(&self) -> [usize; 3] {
        self.n
    }

    pub fn length(&self, grid_axis: usize) -> f64 {
        self.length[grid_axis]
    }

    pub fn origin(&self, grid_axis: usize) -> f64 {
        self.origin[grid_axis]
    }

    /// Grid-axis → physical-axis map.
    pub fn axes(&self) -> [usize; 3] {
        self.axes
    }

    /// Physical axis for a grid axis.
    pub fn physical_axis(&self, grid_axis: usize) -> usize {
        self.axes[grid_axis]
    }

    /// Grid axis carrying a physical axis, if that axis is active.
    pub fn grid_axis_of(&self, physical_axis: usize) -> Option<usize> {
        (0..self.dim).find(|&g| self.axes[g] == physical_axis)
    }

    pub fn spacing(&self, grid_axis: usize) -> f64 {
        self.length[grid_axis] / self.n[grid_axis] as f64
    }

    pub fn point_count(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    /// Volume of one cell (product of active spacings).
    pub fn cell_volume(&self) -> f64 {
        (0..self.dim).map(|i| self.spacing(i)).product()
    }

    pub fn total_volume(&self) -> f64 {
        (0..self.dim).map(|i| self.length[i]).product()
    }

    /// Coordinate of point `idx` along `grid_axis`.
    pub fn coord(&self, grid_axis: usize, idx: usize) -> f64 {
        self.origin[grid_axis] + idx as f64 * self.spacing(grid_axis)
    }

    /// Row-major linear index (last axis fastest).
    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.n[1] + i[1]) * self.n[2] + i[2]
    }

    /// Multi-index from a linear index.
    pub fn multi_index(&self, mut idx: usize) -> [usize; 3] {
        let i2 = idx % self.n[2];
        idx /= self.n[2];
        let i1 = idx % self.n[1];
        let i0 = idx / self.n[1];
        [i0, i1, i2]
    }

    /// Physical-space position of a grid point; inactive physical axes sit at 0.
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let mi = self.multi_index(idx);
        let mut p = [0.0; 3];
        for g in 0..self.dim {
            p[self.axes[g]] = self.coord(g, mi[g]);
        }
        p
    }

    /// Map a physical point into fractional grid coordinates (active axes only).
    pub fn to_grid_coords(&self, p: [f64; 3]) -> [f64; 3] {
        let mut g = [0.0; 3];
        for a in 0..self.dim {
            g[a] = (p[self.axes[a]] - self.origin[a]) / self.spacing(a);
        }
        g
    }

    /// Whether a physical point lies inside the box on all active axes.
    pub fn contains(&self, p: [f64; 3]) -> bool {
        (0..self.dim).all(|a| {
            let u = p[self.axes[a]];
            u >= self.origin[a] && u < self.origin[a] + self.length[a]
        })
    }

    /// Iterate linear indices together with physical positions.
    pub fn positions(&self) -> impl Iterator<Item = (usize, [f64; 3])> + '_ {
        (0..self.point_count()).map(move |i| (i, self.position(i)))
    }
}

/// Compensated (Neumaier) summation; deterministic and accurate enough for
/// the 1e−12-level quadrature tolerances used throughout.
pub(crate) fn neumaier_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    sum + comp
}
