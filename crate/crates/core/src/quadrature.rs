//! Composite Gauss–Legendre quadrature on intervals and tensor-product
//! quadrature on rectangles.
//!
//! Nodes and weights are generated once per [`Integrator`] by Newton
//! iteration on the Legendre polynomial `P_n`, using the three-term
//! recurrence for `P_n` and `P_n'`. The composite rule splits each axis into
//! `panels_per_axis` equal panels and applies the `nodes_per_panel`-point rule
//! on each, so a single panel integrates polynomials of degree
//! `2 * nodes_per_panel - 1` exactly.

use crate::domain::Rectangle;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::surfaces::Surface;

/// Resolution of the composite rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureSpec {
    nodes_per_panel: usize,
    panels_per_axis: usize,
    use_oracles: bool,
}

impl QuadratureSpec {
    pub const DEFAULT_NODES: usize = 16;
    pub const DEFAULT_PANELS: usize = 8;

    pub fn new(nodes_per_panel: usize, panels_per_axis: usize) -> Result<Self> {
        if nodes_per_panel < 2 {
            return Err(Error::InvalidQuadrature(format!(
                "nodes_per_panel must be at least 2, got {nodes_per_panel}"
            )));
        }
        if panels_per_axis < 1 {
            return Err(Error::InvalidQuadrature(
                "panels_per_axis must be at least 1".into(),
            ));
        }
        Ok(Self {
            nodes_per_panel,
            panels_per_axis,
            use_oracles: false,
        })
    }

    /// Prefer a surface's closed-form integrals over quadrature when it has them.
    pub fn with_oracles(mut self, on: bool) -> Self {
        self.use_oracles = on;
        self
    }

    pub fn nodes_per_panel(&self) -> usize {
        self.nodes_per_panel
    }

    pub fn panels_per_axis(&self) -> usize {
        self.panels_per_axis
    }

    pub fn use_oracles(&self) -> bool {
        self.use_oracles
    }
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            nodes_per_panel: Self::DEFAULT_NODES,
            panels_per_axis: Self::DEFAULT_PANELS,
            use_oracles: false,
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    let mut nodes = vec![T::zero(); n];
    let mut weights = vec![T::zero(); n];
    let nf = T::from_usize_lossy(n);
    let half = T::lit(0.5);
    let tol = T::tol_floor(1e-15);
    let m = n.div_ceil(2);

    for i in 0..m {
        // Tricomi's initial guess for the i-th largest root.
        let mut z = (T::PI() * (T::from_usize_lossy(i) + T::lit(0.75)) / (nf + half)).cos();
        let mut deriv = T::one();
        for iter in 0..100 {
            let (p, dp) = legendre_with_derivative(n, z);
            deriv = dp;
            let dz = p / dp;
            z -= dz;
            if dz.abs() <= tol || iter == 99 {
                let (_, dp) = legendre_with_derivative(n, z);
                deriv = dp;
                break;
            }
        }
        let w = T::lit(2.0) / ((T::one() - z * z) * deriv * deriv);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = T::zero();
    }
    (nodes, weights)
}

/// `(P_n(z), P_n'(z))` by the Bonnet recurrence.
fn legendre_with_derivative<T: Real>(n: usize, z: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = z;
    for k in 2..=n {
        let kf = T::from_usize_lossy(k);
        let p2 = ((T::lit(2.0) * kf - T::one()) * z * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = T::from_usize_lossy(n);
    let dp = nf * (z * p1 - p0) / (z * z - T::one());
    (p1, dp)
}

/// A composite rule with its node/weight table built once.
#[derive(Debug, Clone)]
pub struct Integrator<T> {
    spec: QuadratureSpec,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> Integrator<T> {
    pub fn new(spec: QuadratureSpec) -> Self {
        let (nodes, weights) = gauss_legendre(spec.nodes_per_panel);
        Self {
            spec,
            nodes,
            weights,
        }
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// Absolute abscissae and weights of the composite rule on `[lo, hi]`.
    pub fn points(&self, lo: T, hi: T) -> Result<Vec<(T, T)>> {
        check_interval(lo, hi)?;
        let panels = self.spec.panels_per_axis;
        let h = (hi - lo) / T::from_usize_lossy(panels);
        let half = h * T::lit(0.5);
        let mut out = Vec::with_capacity(panels * self.nodes.len());
        for k in 0..panels {
            let left = lo + h * T::from_usize_lossy(k);
            let centre = left + half;
            for (&z, &w) in self.nodes.iter().zip(&self.weights) {
                out.push((centre + half * z, half * w));
            }
        }
        Ok(out)
    }

    pub fn integrate_1d<F>(&self, g: F, lo: T, hi: T) -> Result<T>
    where
        F: Fn(T) -> T,
    {
        let pts = self.points(lo, hi)?;
        Ok(pts.iter().fold(T::zero(), |acc, &(u, w)| acc + w * g(u)))
    }

    pub fn integrate_2d<F>(&self, f: F, rect: &Rectangle<T>) -> Result<T>
    where
        F: Fn(T, T) -> T,
    {
        self.integrate_box(f, rect.a(), rect.b(), rect.c(), rect.d())
    }

    /// Tensor-product rule over `[0, 1]^2`, used for the kernel integrals.
    pub fn integrate_unit_square<F>(&self, f: F) -> Result<T>
    where
        F: Fn(T, T) -> T,
    {
        self.integrate_box(f, T::zero(), T::one(), T::zero(), T::one())
    }

    fn integrate_box<F>(&self, f: F, a: T, b: T, c: T, d: T) -> Result<T>
    where
        F: Fn(T, T) -> T,
    {
        let us = self.points(a, b)?;
        let vs = self.points(c, d)?;
        let mut total = T::zero();
        for &(u, wu) in &us {
            let mut inner = T::zero();
            for &(v, wv) in &vs {
                inner += wv * f(u, v);
            }
            total += wu * inner;
        }
        Ok(total)
    }

    /// `∫∫ f` over `rect`, from the surface's closed form when allowed.
    pub fn double_integral(&self, surface: &Surface<T>, rect: &Rectangle<T>) -> Result<T> {
        if self.spec.use_oracles {
            if let Some(exact) = surface.exact() {
                return Ok(exact.double(rect));
            }
        }
        self.integrate_2d(|u, v| surface.eval(u, v), rect)
    }

    /// The four edge integrals of `surface` over `rect`.
    pub fn edge_integrals(
        &self,
        surface: &Surface<T>,
        rect: &Rectangle<T>,
    ) -> Result<EdgeIntegrals<T>> {
        let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
        if self.spec.use_oracles {
            if let Some(exact) = surface.exact() {
                return Ok(EdgeIntegrals {
                    left: exact.along_v(a, c, d),
                    right: exact.along_v(b, c, d),
                    bottom: exact.along_u(c, a, b),
                    top: exact.along_u(d, a, b),
                });
            }
        }
        Ok(EdgeIntegrals {
            left: self.integrate_1d(|v| surface.eval(a, v), c, d)?,
            right: self.integrate_1d(|v| surface.eval(b, v), c, d)?,
            bottom: self.integrate_1d(|u| surface.eval(u, c), a, b)?,
            top: self.integrate_1d(|u| surface.eval(u, d), a, b)?,
        })
    }
}

impl<T: Real> Default for Integrator<T> {
    fn default() -> Self {
        Self::new(QuadratureSpec::default())
    }
}

fn check_interval<T: Real>(lo: T, hi: T) -> Result<()> {
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(Error::DegenerateInterval {
            lo: lo.to_f64_lossy(),
            hi: hi.to_f64_lossy(),
        });
    }
    Ok(())
}

/// Integrals of `f` along the four sides of a rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeIntegrals<T> {
    /// `∫_c^d f(a, v) dv`
    pub left: T,
    /// `∫_c^d f(b, v) dv`
    pub right: T,
    /// `∫_a^b f(u, c) du`
    pub bottom: T,
    /// `∫_a^b f(u, d) du`
    pub top: T,
}

impl<T: Real> EdgeIntegrals<T> {
    /// Ordered as (left, right, bottom, top).
    pub fn as_array(&self) -> [T; 4] {
        [self.left, self.right, self.bottom, self.top]
    }
}

/// One-shot 1-D integration. Builds the node table on every call.
pub fn integrate_1d<T: Real, F: Fn(T) -> T>(g: F, lo: T, hi: T, spec: QuadratureSpec) -> Result<T> {
    Integrator::new(spec).integrate_1d(g, lo, hi)
}

/// One-shot 2-D integration. Builds the node table on every call.
pub fn integrate_2d<T: Real, F: Fn(T, T) -> T>(
    f: F,
    rect: &Rectangle<T>,
    spec: QuadratureSpec,
) -> Result<T> {
    Integrator::new(spec).integrate_2d(f, rect)
}

pub fn edge_integrals<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    spec: QuadratureSpec,
) -> Result<EdgeIntegrals<T>> {
    Integrator::new(spec).edge_integrals(surface, rect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::catalog_lookup;
    use proptest::prelude::*;

    fn rel_err(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs().max(1e-300)
    }

    #[test]
    fn nodes_and_weights() {
        let (x, w) = gauss_legendre::<f64>(2);
        assert!((x[1] - 1.0 / 3f64.sqrt()).abs() < 1e-15);
        assert!((w[0] - 1.0).abs() < 1e-15);
        let (x, w) = gauss_legendre::<f64>(3);
        assert_eq!(x[1], 0.0);
        assert!((w[1] - 8.0 / 9.0).abs() < 1e-15);
        assert!((x[2] - 0.6f64.sqrt()).abs() < 1e-15);
        for n in 2..=40 {
            let (x, w) = gauss_legendre::<f64>(n);
            let s: f64 = w.iter().sum();
            assert!((s - 2.0).abs() < 1e-13, "n={n} sum={s}");
            assert!(x.windows(2).all(|p| p[0] < p[1]));
        }
    }

    #[test]
    fn one_dimensional_examples() {
        let spec = QuadratureSpec::default();
        assert!((integrate_1d(|v: f64| v, 0.0, 1.0, spec).unwrap() - 0.5).abs() < 1e-15);
        assert!((integrate_1d(|v: f64| v * v, 0.0, 1.0, spec).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let e = integrate_1d(|v: f64| v.exp(), 0.0, 1.0, spec).unwrap();
        assert!((e - (std::f64::consts::E - 1.0)).abs() < 1e-12);
        assert!(matches!(
            integrate_1d(|v: f64| v, 1.0, 1.0, spec),
            Err(Error::DegenerateInterval { .. })
        ));
    }

    #[test]
    fn two_dimensional_examples() {
        let spec = QuadratureSpec::default();
        let unit = Rectangle::<f64>::unit();
        assert!((integrate_2d(|u, v| u * v, &unit, spec).unwrap() - 0.25).abs() < 1e-15);
        assert!(
            (integrate_2d(|u, v| u * u * v * v, &unit, spec).unwrap() - 1.0 / 9.0).abs() < 1e-15
        );
        let r = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
        assert!((integrate_2d(|_, _| 1.0_f64, &r, spec).unwrap() - 9.0).abs() < 1e-13);
    }

    #[test]
    fn edge_examples() {
        let unit = Rectangle::<f64>::unit();
        for oracle in [false, true] {
            let spec = QuadratureSpec::default().with_oracles(oracle);
            let cases: [(&str, [f64; 4]); 3] = [
                ("product", [0.0, 0.5, 0.0, 0.5]),
                ("sqproduct", [0.0, 1.0 / 3.0, 0.0, 1.0 / 3.0]),
                ("constant", [1.0, 1.0, 1.0, 1.0]),
            ];
            for (name, want) in cases {
                let s = catalog_lookup::<f64>(name).unwrap().surface;
                let got = edge_integrals(&s, &unit, spec).unwrap().as_array();
                for (g, w) in got.iter().zip(want) {
                    assert!((g - w).abs() < 1e-14, "{name} oracle={oracle}: {got:?}");
                }
            }
        }
    }

    #[test]
    fn monomial_exactness() {
        let spec = QuadratureSpec::default();
        let integ = Integrator::<f64>::new(spec);
        let r = Rectangle::new(-1.0, 2.0, 0.5, 1.5).unwrap();
        let axis = |k: i32, lo: f64, hi: f64| (hi.powi(k + 1) - lo.powi(k + 1)) / (k as f64 + 1.0);
        for i in 0..=7 {
            for j in 0..=7 {
                let got = integ
                    .integrate_2d(|u, v| u.powi(i) * v.powi(j), &r)
                    .unwrap();
                let want = axis(i, r.a(), r.b()) * axis(j, r.c(), r.d());
                assert!(
                    (got - want).abs() <= 1e-12 * want.abs().max(1e-12),
                    "u^{i} v^{j}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn single_panel_degree_limit() {
        // n nodes integrate degree 2n-1 exactly but not degree 2n.
        let integ = Integrator::<f64>::new(QuadratureSpec::new(3, 1).unwrap());
        let d5 = integ.integrate_1d(|x| x.powi(5), 0.0, 1.0).unwrap();
        assert!((d5 - 1.0 / 6.0).abs() < 1e-15);
        let d6 = integ.integrate_1d(|x| x.powi(6), 0.0, 1.0).unwrap();
        assert!((d6 - 1.0 / 7.0).abs() > 1e-6);
    }

    #[test]
    fn refinement_does_not_increase_error() {
        let rects = [
            Rectangle::<f64>::unit(),
            Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap(),
        ];
        for name in crate::surfaces::catalog_names() {
            let s = catalog_lookup::<f64>(name).unwrap().surface;
            let exact = s.exact().unwrap();
            for r in &rects {
                let want = exact.double(r);
                let mut prev = f64::INFINITY;
                // Start coarse so there is something to refine.
                for panels in [1, 2, 4, 8] {
                    let integ = Integrator::new(QuadratureSpec::new(2, panels).unwrap());
                    let err = (integ.double_integral(&s, r).unwrap() - want).abs();
                    assert!(
                        err <= prev + 1e-13,
                        "{name} panels={panels}: {err} > {prev}"
                    );
                    prev = err;
                }
            }
        }
    }

    #[test]
    fn single_precision_rule() {
        let integ = Integrator::<f32>::default();
        let e = integ.integrate_1d(|v| v.exp(), 0.0, 1.0).unwrap();
        assert!(rel_err(e as f64, std::f64::consts::E - 1.0) < 1e-5);
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(1, 4).is_err());
        assert!(QuadratureSpec::new(4, 0).is_err());
        let d = QuadratureSpec::default();
        assert_eq!((d.nodes_per_panel(), d.panels_per_axis()), (16, 8));
    }

    proptest! {
        #[test]
        fn linearity(alpha in -5.0f64..5.0, beta in -5.0f64..5.0) {
            let integ = Integrator::<f64>::default();
            let r = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
            let f = |u: f64, v: f64| (u + 0.3 * v).sin() + u * v * v;
            let g = |u: f64, v: f64| (0.2 * u - v).exp();
            let lhs = integ.integrate_2d(|u, v| alpha * f(u, v) + beta * g(u, v), &r).unwrap();
            let rhs = alpha * integ.integrate_2d(f, &r).unwrap()
                + beta * integ.integrate_2d(g, &r).unwrap();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs().max(rhs.abs())));
        }

        #[test]
        fn symmetric_integrand_axis_order(lo in -3.0f64..0.0, w in 0.1f64..3.0) {
            let integ = Integrator::<f64>::default();
            let r = Rectangle::new(lo, lo + w, lo, lo + w).unwrap();
            let f = |u: f64, v: f64| (u * v).cos() + u * u * v * v;
            let direct = integ.integrate_2d(f, &r).unwrap();
            let swapped = integ.integrate_2d(|u, v| f(v, u), &r).unwrap();
            prop_assert!((direct - swapped).abs() <= 1e-13 * (1.0 + direct.abs()));
        }
    }
}
