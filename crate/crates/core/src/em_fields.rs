//! Analytic electromagnetic potential/field configurations, gauge
//! transformations, and divergence checks.
//!
//! B and E are defined from the potentials in the standard way, B = ∇×A and
//! E = −∂ₜA − ∇φ; built-in kinds carry closed forms for A, φ, B, E and the
//! Jacobian ∂ᵢBⱼ. The ideal Stern-Gerlach kind is deliberately non-Maxwellian
//! (no vector potential produces it) and is flagged as such by
//! [`FieldConfig::maxwell_check`].

use std::fmt;
use std::sync::Arc;

use crate::constants::Constants;
use crate::error::{QsimError, Result};
use crate::grid::GridSpec;
use crate::vec3;

type PointFn = Arc<dyn Fn([f64; 3], f64) -> f64 + Send + Sync>;
type VectorFn = Arc<dyn Fn([f64; 3], f64) -> [f64; 3] + Send + Sync>;

/// Gauge for the uniform-B built-in: symmetric A = ½B×r, or Landau
/// (single component, linear in one transverse coordinate).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MagneticGauge {
    #[default]
    Symmetric,
    Landau,
}

/// Smooth envelope for the Stern-Gerlach gradient along the beam axis:
/// w(u) = ½[tanh((u−(c−hw))/edge) − tanh((u−(c+hw))/edge)].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamWindow {
    /// Physical axis of the beam coordinate.
    pub axis: usize,
    pub center: f64,
    pub half_width: f64,
    pub edge: f64,
}

impl BeamWindow {
    pub fn value(&self, p: [f64; 3]) -> f64 {
        let u = p[self.axis];
        0.5 * (((u - (self.center - self.half_width)) / self.edge).tanh()
            - ((u - (self.center + self.half_width)) / self.edge).tanh())
    }

    pub fn derivative(&self, p: [f64; 3]) -> f64 {
        let u = p[self.axis];
        let sech2 = |x: f64| 1.0 / x.cosh().powi(2);
        0.5 / self.edge
            * (sech2((u - (self.center - self.half_width)) / self.edge)
                - sech2((u - (self.center + self.half_width)) / self.edge))
    }
}

/// Analytic gauge function Λ(x, t) with its analytic gradient and time
/// derivative.
#[derive(Clone)]
pub struct GaugeFunction {
    lambda: PointFn,
    grad: VectorFn,
    dt: PointFn,
}

impl fmt::Debug for GaugeFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GaugeFunction")
    }
}

impl GaugeFunction {
    pub fn new(
        lambda: impl Fn([f64; 3], f64) -> f64 + Send + Sync + 'static,
        grad: impl Fn([f64; 3], f64) -> [f64; 3] + Send + Sync + 'static,
        dt: impl Fn([f64; 3], f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        GaugeFunction {
            lambda: Arc::new(lambda),
            grad: Arc::new(grad),
            dt: Arc::new(dt),
        }
    }

    /// Λ ≡ c (A and φ unchanged).
    pub fn constant(c: f64) -> Self {
        Self::new(move |_, _| c, |_, _| [0.0; 3], |_, _| 0.0)
    }

    /// Λ = c·t (shifts φ by −c, fields unchanged).
    pub fn linear_time(c: f64) -> Self {
        Self::new(move |_, t| c * t, |_, _| [0.0; 3], move |_, _| c)
    }

    /// 1-D cubic Λ(u) = c3 u³ + c2 u² + c1 u along a physical axis.
    pub fn cubic_axis(axis: usize, c3: f64, c2: f64, c1: f64) -> Self {
        Self::new(
            move |p, _| {
                let u = p[axis];
                ((c3 * u + c2) * u + c1) * u
            },
            move |p, _| {
                let u = p[axis];
                let mut g = [0.0; 3];
                g[axis] = (3.0 * c3 * u + 2.0 * c2) * u + c1;
                g
            },
            |_, _| 0.0,
        )
    }

    /// Λ = c·u·v on two physical axes (e.g. B0·x·y/2 turns the symmetric
    /// gauge into the Landau gauge).
    pub fn bilinear(axis_u: usize, axis_v: usize, c: f64) -> Self {
        Self::new(
            move |p, _| c * p[axis_u] * p[axis_v],
            move |p, _| {
                let mut g = [0.0; 3];
                g[axis_u] = c * p[axis_v];
                g[axis_v] = c * p[axis_u];
                g
            },
            |_, _| 0.0,
        )
    }

    pub fn lambda(&self, p: [f64; 3], t: f64) -> f64 {
        (self.lambda)(p, t)
    }

    pub fn grad(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        (self.grad)(p, t)
    }

    pub fn dt(&self, p: [f64; 3], t: f64) -> f64 {
        (self.dt)(p, t)
    }
}

/// The analytic field configuration kinds.
#[derive(Clone)]
pub enum FieldKind {
    Zero,
    UniformE {
        e0: [f64; 3],
    },
    UniformB {
        b0: f64,
        /// Physical axis of B.
        axis: usize,
        gauge: MagneticGauge,
    },
    SternGerlachIdeal {
        b0: f64,
        beta: f64,
        window: Option<BeamWindow>,
    },
    SternGerlachPhysical {
        b0: f64,
        beta: f64,
        window: Option<BeamWindow>,
    },
    Custom {
        a: VectorFn,
        phi: PointFn,
        /// Step for numerical differentiation of the potentials.
        diff_step: f64,
    },
    Gauged {
        inner: Box<FieldKind>,
        gauge: GaugeFunction,
    },
}

impl fmt::Debug for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Zero => write!(f, "Zero"),
            FieldKind::UniformE { e0 } => write!(f, "UniformE({e0:?})"),
            FieldKind::UniformB { b0, axis, gauge } => {
                write!(f, "UniformB(b0={b0}, axis={axis}, gauge={gauge:?})")
            }
            FieldKind::SternGerlachIdeal { b0, beta, window } => {
                write!(f, "SternGerlachIdeal(b0={b0}, beta={beta}, windowed={})", window.is_some())
            }
            FieldKind::SternGerlachPhysical { b0, beta, window } => {
                write!(f, "SternGerlachPhysical(b0={b0}, beta={beta}, windowed={})", window.is_some())
            }
            FieldKind::Custom { diff_step, .. } => write!(f, "Custom(diff_step={diff_step})"),
            FieldKind::Gauged { inner, .. } => write!(f, "Gauged({inner:?})"),
        }
    }
}

/// Stern-Gerlach variant selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SgVariant {
    /// Paper-faithful B = (0, 0, B0 + βz); not divergence-free.
    Ideal,
    /// Divergence-free B = (−βx, 0, B0 + βz).
    Physical,
}

/// Electromagnetic configuration: field kind plus the run constants.
#[derive(Debug, Clone)]
pub struct FieldConfig {
    pub kind: FieldKind,
    pub constants: Constants,
}

/// Result of a divergence check over sample points.
#[derive(Debug, Clone)]
pub struct MaxwellReport {
    pub max_abs_div_b: f64,
    /// True for the ideal Stern-Gerlach kind: the stated B is not derivable
    /// from any vector potential, so the check is advisory only.
    pub idealized: bool,
    pub message: String,
}

impl FieldConfig {
    pub fn new(kind: FieldKind, constants: Constants) -> Self {
        FieldConfig { kind, constants }
    }

    pub fn zero(constants: Constants) -> Self {
        Self::new(FieldKind::Zero, constants)
    }

    pub fn uniform_e(e0: [f64; 3], constants: Constants) -> Self {
        Self::new(FieldKind::UniformE { e0 }, constants)
    }

    pub fn uniform_b(b0: f64, axis: usize, gauge: MagneticGauge, constants: Constants) -> Self {
        Self::new(FieldKind::UniformB { b0, axis, gauge }, constants)
    }

    pub fn custom(
        a: impl Fn([f64; 3], f64) -> [f64; 3] + Send + Sync + 'static,
        phi: impl Fn([f64; 3], f64) -> f64 + Send + Sync + 'static,
        diff_step: f64,
        constants: Constants,
    ) -> Self {
        Self::new(
            FieldKind::Custom {
                a: Arc::new(a),
                phi: Arc::new(phi),
                diff_step,
            },
            constants,
        )
    }

    /// Vector potential A(x, t).
    pub fn vector_potential(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        Self::kind_a(&self.kind, p, t)
    }

    fn kind_a(kind: &FieldKind, p: [f64; 3], t: f64) -> [f64; 3] {
        match kind {
            FieldKind::Zero | FieldKind::UniformE { .. } | FieldKind::SternGerlachIdeal { .. } => {
                [0.0; 3]
            }
            FieldKind::UniformB { b0, axis, gauge } => match gauge {
                MagneticGauge::Symmetric => {
                    let mut b = [0.0; 3];
                    b[*axis] = *b0;
                    vec3::scale(vec3::cross(b, p), 0.5)
                }
                MagneticGauge::Landau => {
                    let comp = (*axis + 1) % 3;
                    let dep = (*axis + 2) % 3;
                    let mut a = [0.0; 3];
                    a[comp] = -b0 * p[dep];
                    a
                }
            },
            FieldKind::SternGerlachPhysical { b0, beta, window } => {
                if window.is_some() {
                    // The windowed field is specified directly through B; no
                    // closed-form A exists for it.
                    [0.0; 3]
                } else {
                    [0.0, b0 * p[0] + beta * p[0] * p[2], 0.0]
                }
            }
            FieldKind::Custom { a, .. } => a(p, t),
            FieldKind::Gauged { inner, gauge } => {
                vec3::add(Self::kind_a(inner, p, t), gauge.grad(p, t))
            }
        }
    }

    /// Scalar potential φ(x, t).
    pub fn scalar_potential(&self, p: [f64; 3], t: f64) -> f64 {
        Self::kind_phi(&self.kind, p, t)
    }

    fn kind_phi(kind: &FieldKind, p: [f64; 3], t: f64) -> f64 {
        match kind {
            FieldKind::Zero
            | FieldKind::UniformB { .. }
            | FieldKind::SternGerlachIdeal { .. }
            | FieldKind::SternGerlachPhysical { .. } => 0.0,
            FieldKind::UniformE { e0 } => -vec3::dot(*e0, p),
            FieldKind::Custom { phi, .. } => phi(p, t),
            FieldKind::Gauged { inner, gauge } => Self::kind_phi(inner, p, t) - gauge.dt(p, t),
        }
    }

    /// Closed-form B(x, t) (numerical curl for custom kinds).
    pub fn magnetic_field(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        Self::kind_b(&self.kind, p, t)
    }

    fn kind_b(kind: &FieldKind, p: [f64; 3], t: f64) -> [f64; 3] {
        match kind {
            FieldKind::Zero | FieldKind::UniformE { .. } => [0.0; 3],
            FieldKind::UniformB { b0, axis, .. } => {
                let mut b = [0.0; 3];
                b[*axis] = *b0;
                b
            }
            FieldKind::SternGerlachIdeal { b0, beta, window } => {
                let w = window.map_or(1.0, |w| w.value(p));
                [0.0, 0.0, b0 + beta * w * p[2]]
            }
            FieldKind::SternGerlachPhysical { b0, beta, window } => {
                let w = window.map_or(1.0, |w| w.value(p));
                [-beta * w * p[0], 0.0, b0 + beta * w * p[2]]
            }
            FieldKind::Custom { a, diff_step, .. } => {
                let h = *diff_step;
                let d = |axis: usize, comp: usize| {
                    let mut pp = p;
                    pp[axis] += h;
                    let mut pm = p;
                    pm[axis] -= h;
                    (a(pp, t)[comp] - a(pm, t)[comp]) / (2.0 * h)
                };
                [
                    d(1, 2) - d(2, 1),
                    d(2, 0) - d(0, 2),
                    d(0, 1) - d(1, 0),
                ]
            }
            // ∇×(A + ∇Λ) = ∇×A
            FieldKind::Gauged { inner, .. } => Self::kind_b(inner, p, t),
        }
    }

    /// Closed-form E(x, t) (numerical differentiation for custom kinds).
    pub fn electric_field(&self, p: [f64; 3], t: f64) -> [f64; 3] {
        Self::kind_e(&self.kind, p, t)
    }

    fn kind_e(kind: &FieldKind, p: [f64; 3], t: f64) -> [f64; 3] {
        match kind {
            FieldKind::Zero
            | FieldKind::UniformB { .. }
            | FieldKind::SternGerlachIdeal { .. }
            | FieldKind::SternGerlachPhysical { .. } => [0.0; 3],
            FieldKind::UniformE { e0 } => *e0,
            FieldKind::Custom { a, phi, diff_step } => {
                let h = *diff_step;
                let mut e = [0.0; 3];
                for axis in 0..3 {
                    let mut pp = p;
                    pp[axis] += h;
                    let mut pm = p;
                    pm[axis] -= h;
                    e[axis] = -(phi(pp, t) - phi(pm, t)) / (2.0 * h);
                }
                let da_dt = [
                    (a(p, t + h)[0] - a(p, t - h)[0]) / (2.0 * h),
                    (a(p, t + h)[1] - a(p, t - h)[1]) / (2.0 * h),
                    (a(p, t + h)[2] - a(p, t - h)[2]) / (2.0 * h),
                ];
                vec3::sub(e, da_dt)
            }
            // −∂ₜ(A+∇Λ) − ∇(φ−∂ₜΛ) = E (the mixed derivatives cancel)
            FieldKind::Gauged { inner, .. } => Self::kind_e(inner, p, t),
        }
    }

    /// The Jacobian ∂ᵢBⱼ, indexed `[i][j]`.
    pub fn b_jacobian(&self, p: [f64; 3], t: f64) -> [[f64; 3]; 3] {
        match &self.kind {
            FieldKind::SternGerlachIdeal { beta, window, .. } => {
                let mut j = [[0.0; 3]; 3];
                match window {
                    None => j[2][2] = *beta,
                    Some(w) => {
                        j[2][2] = beta * w.value(p);
                        j[w.axis][2] += beta * w.derivative(p) * p[2];
                    }
                }
                j
            }
            FieldKind::SternGerlachPhysical { beta, window, .. } => {
                let mut j = [[0.0; 3]; 3];
                match window {
                    None => {
                        j[0][0] = -*beta;
                        j[2][2] = *beta;
                    }
                    Some(w) => {
                        let wv = w.value(p);
                        let wd = w.derivative(p);
                        j[0][0] = -beta * wv;
                        j[2][2] = beta * wv;
                        j[w.axis][0] += -beta * wd * p[0];
                        j[w.axis][2] += beta * wd * p[2];
                    }
                }
                j
            }
            FieldKind::Zero | FieldKind::UniformE { .. } | FieldKind::UniformB { .. } => {
                [[0.0; 3]; 3]
            }
            FieldKind::Gauged { inner, .. } => FieldConfig {
                kind: (**inner).clone(),
                constants: self.constants,
            }
            .b_jacobian(p, t),
            FieldKind::Custom { diff_step, .. } => {
                let h = *diff_step;
                let mut j = [[0.0; 3]; 3];
                for i in 0..3 {
                    let mut pp = p;
                    pp[i] += h;
                    let mut pm = p;
                    pm[i] -= h;
                    let bp = self.magnetic_field(pp, t);
                    let bm = self.magnetic_field(pm, t);
                    for c in 0..3 {
                        j[i][c] = (bp[c] - bm[c]) / (2.0 * h);
                    }
                }
                j
            }
        }
    }

    /// B = ∇×A, E = −∂ₜA − ∇φ, closed-form for built-ins.
    pub fn fields_from_potentials(&self, p: [f64; 3], t: f64) -> Result<([f64; 3], [f64; 3])> {
        if !vec3::is_finite(p) || !t.is_finite() {
            return Err(QsimError::FieldConfig(format!(
                "field evaluation at non-finite point {p:?}, t = {t}"
            )));
        }
        Ok((self.magnetic_field(p, t), self.electric_field(p, t)))
    }

    /// B and E by central finite differences of the potentials; the
    /// independent route used by the gauge-invariance property tests.
    pub fn fields_by_numeric_diff(&self, p: [f64; 3], t: f64, h: f64) -> ([f64; 3], [f64; 3]) {
        let d_a = |axis: usize, comp: usize| {
            let mut pp = p;
            pp[axis] += h;
            let mut pm = p;
            pm[axis] -= h;
            (self.vector_potential(pp, t)[comp] - self.vector_potential(pm, t)[comp]) / (2.0 * h)
        };
        let b = [
            d_a(1, 2) - d_a(2, 1),
            d_a(2, 0) - d_a(0, 2),
            d_a(0, 1) - d_a(1, 0),
        ];
        let mut e = [0.0; 3];
        for axis in 0..3 {
            let mut pp = p;
            pp[axis] += h;
            let mut pm = p;
            pm[axis] -= h;
            e[axis] = -(self.scalar_potential(pp, t) - self.scalar_potential(pm, t)) / (2.0 * h);
        }
        let ap = self.vector_potential(p, t + h);
        let am = self.vector_potential(p, t - h);
        for axis in 0..3 {
            e[axis] -= (ap[axis] - am[axis]) / (2.0 * h);
        }
        (b, e)
    }

    /// A′ = A + ∇Λ, φ′ = φ − ∂ₜΛ; the fields are unchanged.
    pub fn gauge_transform(&self, gauge: GaugeFunction) -> FieldConfig {
        FieldConfig {
            kind: FieldKind::Gauged {
                inner: Box::new(self.kind.clone()),
                gauge,
            },
            constants: self.constants,
        }
    }

    /// ∫ A·dl along the straight segment p0 → p1, by 3-point Gauss–Legendre
    /// (exact for polynomial integrands up to degree 5, which covers every
    /// built-in gauge and polynomial Λ of degree ≤ 3).
    pub fn line_integral_a(&self, p0: [f64; 3], p1: [f64; 3], t: f64) -> f64 {
        const NODES: [f64; 3] = [
            0.5 - 0.387_298_334_620_741_7, // (1 − √(3/5))/2
            0.5,
            0.5 + 0.387_298_334_620_741_7,
        ];
        const WEIGHTS: [f64; 3] = [5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0];
        let d = vec3::sub(p1, p0);
        let mut acc = 0.0;
        for (s, w) in NODES.iter().zip(WEIGHTS) {
            let p = vec3::add(p0, vec3::scale(d, *s));
            acc += w * vec3::dot(self.vector_potential(p, t), d);
        }
        acc
    }

    /// Whether the configured A is identically zero.
    pub fn has_vector_potential(&self) -> bool {
        fn kind_has_a(kind: &FieldKind) -> bool {
            match kind {
                FieldKind::Zero | FieldKind::UniformE { .. } | FieldKind::SternGerlachIdeal { .. } => false,
                FieldKind::UniformB { b0, .. } => *b0 != 0.0,
                FieldKind::SternGerlachPhysical { window, .. } => window.is_none(),
                FieldKind::Custom { .. } => true,
                FieldKind::Gauged { .. } => true,
            }
        }
        kind_has_a(&self.kind)
    }

    /// Whether potentials depend on time (built-ins are static).
    pub fn time_dependent(&self) -> bool {
        fn kind_td(kind: &FieldKind) -> bool {
            match kind {
                FieldKind::Custom { .. } | FieldKind::Gauged { .. } => true,
                _ => false,
            }
        }
        kind_td(&self.kind)
    }

    /// Landau-split profile: Some((component grid axis, dependence grid axis,
    /// A values indexed by the dependence coordinate)) when A has a single
    /// component depending on exactly one other active grid coordinate and
    /// φ ≡ 0. Holds for the uniform-B kind in the Landau gauge.
    pub fn landau_profile(&self, grid: &GridSpec) -> Option<(usize, usize, Vec<f64>)> {
        match &self.kind {
            FieldKind::UniformB {
                b0,
                axis,
                gauge: MagneticGauge::Landau,
            } => {
                let comp_phys = (*axis + 1) % 3;
                let dep_phys = (*axis + 2) % 3;
                let comp_axis = grid.grid_axis_of(comp_phys)?;
                let dep_axis = grid.grid_axis_of(dep_phys)?;
                let vals = (0..grid.n()[dep_axis])
                    .map(|j| -b0 * grid.coord(dep_axis, j))
                    .collect();
                Some((comp_axis, dep_axis, vals))
            }
            _ => None,
        }
    }

    /// Sample |∇·B| by central differences over a lattice of points spanning
    /// `cube` (half-extent per axis, centered on the origin).
    pub fn maxwell_check(&self, cube: f64, samples_per_axis: usize, t: f64) -> MaxwellReport {
        let idealized = matches!(self.kind, FieldKind::SternGerlachIdeal { .. });
        let h = 1e-5 * cube.max(1e-6);
        let mut max_div: f64 = 0.0;
        let m = samples_per_axis.max(2);
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let f = |idx: usize| -> f64 { -cube + 2.0 * cube * idx as f64 / (m - 1) as f64 };
                    let p = [f(i), f(j), f(k)];
                    let mut div = 0.0;
                    for axis in 0..3 {
                        let mut pp = p;
                        pp[axis] += h;
                        let mut pm = p;
                        pm[axis] -= h;
                        div += (self.magnetic_field(pp, t)[axis]
                            - self.magnetic_field(pm, t)[axis])
                            / (2.0 * h);
                    }
                    max_div = max_div.max(div.abs());
                }
            }
        }
        let message = if idealized {
            "idealized field: B is not derivable from a vector potential; divergence check is advisory".to_string()
        } else {
            format!("max |div B| = {max_div:.3e} over {m}^3 samples")
        };
        MaxwellReport {
            max_abs_div_b: max_div,
            idealized,
            message,
        }
    }
}

/// The Stern-Gerlach built-ins: ideal B = (0, 0, B0 + βz) (non-Maxwellian,
/// paper-faithful) and physical B = (−βx, 0, B0 + βz) (divergence-free).
pub fn stern_gerlach_field(
    b0: f64,
    beta: f64,
    variant: SgVariant,
    window: Option<BeamWindow>,
    constants: Constants,
) -> Result<FieldConfig> {
    if !b0.is_finite() || !beta.is_finite() || beta == 0.0 {
        return Err(QsimError::FieldConfig(format!(
            "stern_gerlach requires finite B0 and nonzero beta (got B0 = {b0}, beta = {beta})"
        )));
    }
    let kind = match variant {
        SgVariant::Ideal => FieldKind::SternGerlachIdeal { b0, beta, window },
        SgVariant::Physical => FieldKind::SternGerlachPhysical { b0, beta, window },
    };
    Ok(FieldConfig::new(kind, constants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn consts() -> Constants {
        Constants::default()
    }

    #[test]
    fn zero_config_is_zero_everywhere() {
        let cfg = FieldConfig::zero(consts());
        let (b, e) = cfg.fields_from_potentials([0.3, -0.7, 2.0], 1.5).unwrap();
        assert_eq!(b, [0.0; 3]);
        assert_eq!(e, [0.0; 3]);
    }

    #[test]
    fn symmetric_gauge_gives_uniform_b() {
        // A = (−B0 y/2, B0 x/2, 0) → B = (0, 0, B0), E = 0, checked against
        // finite differences of the potentials
        let b0 = 2.5;
        let cfg = FieldConfig::uniform_b(b0, 2, MagneticGauge::Symmetric, consts());
        let p = [0.4, -1.2, 0.9];
        let a = cfg.vector_potential(p, 0.0);
        assert_abs_diff_eq!(a[0], -b0 * p[1] / 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a[1], b0 * p[0] / 2.0, epsilon = 1e-14);
        let (b, e) = cfg.fields_from_potentials(p, 0.0).unwrap();
        assert_eq!(b, [0.0, 0.0, b0]);
        assert_eq!(e, [0.0; 3]);
        let (bn, en) = cfg.fields_by_numeric_diff(p, 0.0, 1e-5);
        for c in 0..3 {
            assert_abs_diff_eq!(b[c], bn[c], epsilon = 1e-9);
            assert_abs_diff_eq!(e[c], en[c], epsilon = 1e-9);
        }
    }

    #[test]
    fn uniform_e_from_scalar_potential() {
        // φ = −E0·x → E = E0, B = 0
        let e0 = [1.5, 0.0, -0.25];
        let cfg = FieldConfig::uniform_e(e0, consts());
        let p = [2.0, 1.0, -3.0];
        let (b, e) = cfg.fields_from_potentials(p, 0.0).unwrap();
        assert_eq!(e, e0);
        assert_eq!(b, [0.0; 3]);
        let (bn, en) = cfg.fields_by_numeric_diff(p, 0.0, 1e-5);
        for c in 0..3 {
            assert_abs_diff_eq!(en[c], e0[c], epsilon = 1e-9);
            assert_abs_diff_eq!(bn[c], 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn gauge_transform_preserves_fields() {
        // symmetric → Landau via Λ = B0 x y / 2
        let b0 = 1.75;
        let cfg = FieldConfig::uniform_b(b0, 2, MagneticGauge::Symmetric, consts());
        let gauged = cfg.gauge_transform(GaugeFunction::bilinear(0, 1, b0 / 2.0));
        let p = [0.8, -0.3, 0.1];
        let a = gauged.vector_potential(p, 0.0);
        assert_abs_diff_eq!(a[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a[1], b0 * p[0], epsilon = 1e-14);
        let (b, _) = gauged.fields_from_potentials(p, 0.0).unwrap();
        assert_abs_diff_eq!(b[2], b0, epsilon = 1e-12);
        // independent numeric route agrees
        let (bn, _) = gauged.fields_by_numeric_diff(p, 0.0, 1e-5);
        assert_abs_diff_eq!(bn[2], b0, epsilon = 1e-8);

        // Λ ≡ const leaves the potentials untouched
        let same = cfg.gauge_transform(GaugeFunction::constant(4.2));
        assert_eq!(same.vector_potential(p, 0.0), cfg.vector_potential(p, 0.0));
        assert_eq!(same.scalar_potential(p, 0.0), cfg.scalar_potential(p, 0.0));

        // Λ = c t shifts φ by −c and leaves E unchanged
        let shifted = FieldConfig::uniform_e([1.0, 0.0, 0.0], consts())
            .gauge_transform(GaugeFunction::linear_time(3.0));
        assert_abs_diff_eq!(
            shifted.scalar_potential(p, 2.0),
            -p[0] - 3.0,
            epsilon = 1e-14
        );
        let (_, e) = shifted.fields_by_numeric_diff(p, 2.0, 1e-5);
        assert_abs_diff_eq!(e[0], 1.0, epsilon = 1e-9);
    }

    #[test]
    fn stern_gerlach_point_values() {
        // ideal: B(z=0.2) = (0, 0, 1 + 10·0.2) = (0,0,3)
        let ideal = stern_gerlach_field(1.0, 10.0, SgVariant::Ideal, None, consts()).unwrap();
        assert_eq!(ideal.magnetic_field([0.0, 0.0, 0.2], 0.0), [0.0, 0.0, 3.0]);
        // physical at x = 0.1: (−1, 0, 3)
        let phys = stern_gerlach_field(1.0, 10.0, SgVariant::Physical, None, consts()).unwrap();
        assert_eq!(
            phys.magnetic_field([0.1, 0.0, 0.2], 0.0),
            [-1.0, 0.0, 3.0]
        );
        assert!(stern_gerlach_field(1.0, 0.0, SgVariant::Ideal, None, consts()).is_err());
    }

    #[test]
    fn physical_sg_is_divergence_free_ideal_is_flagged() {
        let phys = stern_gerlach_field(1.0, 0.5, SgVariant::Physical, None, consts()).unwrap();
        let rep = phys.maxwell_check(2.0, 16, 0.0);
        assert!(!rep.idealized);
        assert!(rep.max_abs_div_b <= 1e-10, "div B = {}", rep.max_abs_div_b);

        let ideal = stern_gerlach_field(1.0, 0.5, SgVariant::Ideal, None, consts()).unwrap();
        let rep = ideal.maxwell_check(2.0, 8, 0.0);
        assert!(rep.idealized);
        assert!(rep.message.contains("idealized"));
        assert!(rep.max_abs_div_b > 0.1); // genuinely non-Maxwellian

        // windowed physical variant stays divergence-free
        let window = BeamWindow {
            axis: 1,
            center: 0.0,
            half_width: 1.0,
            edge: 0.3,
        };
        let wphys =
            stern_gerlach_field(1.0, 0.5, SgVariant::Physical, Some(window), consts()).unwrap();
        let rep = wphys.maxwell_check(2.0, 12, 0.0);
        assert!(rep.max_abs_div_b <= 1e-9, "div B = {}", rep.max_abs_div_b);
    }

    #[test]
    fn unwindowed_physical_sg_has_consistent_potential() {
        let phys = stern_gerlach_field(0.8, 0.4, SgVariant::Physical, None, consts()).unwrap();
        let p = [0.3, 0.0, -0.6];
        let (b_closed, _) = phys.fields_from_potentials(p, 0.0).unwrap();
        let (b_numeric, _) = phys.fields_by_numeric_diff(p, 0.0, 1e-6);
        for c in 0..3 {
            assert_abs_diff_eq!(b_closed[c], b_numeric[c], epsilon = 1e-7);
        }
    }

    #[test]
    fn landau_profile_detection() {
        let g = GridSpec::new(2, &[16, 16], &[4.0, 4.0], &[-2.0, -2.0]).unwrap();
        let cfg = FieldConfig::uniform_b(1.5, 2, MagneticGauge::Landau, consts());
        let (comp, dep, vals) = cfg.landau_profile(&g).unwrap();
        assert_eq!(comp, 0); // A_x
        assert_eq!(dep, 1); // depends on y
        assert_abs_diff_eq!(vals[0], -1.5 * -2.0, epsilon = 1e-14);
        // symmetric gauge does not qualify
        let sym = FieldConfig::uniform_b(1.5, 2, MagneticGauge::Symmetric, consts());
        assert!(sym.landau_profile(&g).is_none());
        // B along x needs grid axes y and z
        let bx = FieldConfig::uniform_b(1.0, 0, MagneticGauge::Landau, consts());
        assert!(bx.landau_profile(&g).is_none());
    }

    #[test]
    fn custom_fields_by_numeric_diff() {
        // A = (0, B0 x, 0), φ = 0 (Landau) via the custom kind
        let b0 = 1.2;
        let cfg = FieldConfig::custom(
            move |p, _| [0.0, b0 * p[0], 0.0],
            |_, _| 0.0,
            1e-5,
            consts(),
        );
        let (b, e) = cfg.fields_from_potentials([0.5, 0.5, 0.5], 0.0).unwrap();
        assert_abs_diff_eq!(b[2], b0, epsilon = 1e-8);
        assert_abs_diff_eq!(e[0], 0.0, epsilon = 1e-10);
    }

    #[test]
    fn line_integral_exact_for_polynomial_a() {
        // A_y = B0 x + β x z is quadratic; Gauss-3 is exact
        let phys = stern_gerlach_field(0.8, 0.4, SgVariant::Physical, None, consts()).unwrap();
        let p0 = [0.2, -0.1, 0.7];
        let p1 = [0.5, 0.4, -0.3];
        // dense-midpoint reference
        let n = 20_000;
        let mut reference = 0.0;
        for i in 0..n {
            let s = (i as f64 + 0.5) / n as f64;
            let p = vec3::add(p0, vec3::scale(vec3::sub(p1, p0), s));
            reference += vec3::dot(phys.vector_potential(p, 0.0), vec3::sub(p1, p0)) / n as f64;
        }
        assert_abs_diff_eq!(phys.line_integral_a(p0, p1, 0.0), reference, epsilon = 1e-9);
    }
}
