//! The function under test: a bivariate map `f`, its mixed second partial
//! `D = ∂²f/∂u∂v`, optional closed-form integrals, and the built-in catalog.

use std::fmt;
use std::sync::Arc;

use crate::domain::Rectangle;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Shared, thread-safe bivariate map.
pub type ScalarFn<T> = Arc<dyn Fn(T, T) -> T + Send + Sync>;

/// Closed-form integrals of a surface, expressed through antiderivatives.
///
/// * `double`: `F` with `∂²F/∂u∂v = f`
/// * `along_u`: `G` with `∂G/∂u = f`
/// * `along_v`: `H` with `∂H/∂v = f`
#[derive(Clone)]
pub struct ExactIntegrals<T> {
    double: ScalarFn<T>,
    along_u: ScalarFn<T>,
    along_v: ScalarFn<T>,
}

impl<T: Real> ExactIntegrals<T> {
    pub fn new(double: ScalarFn<T>, along_u: ScalarFn<T>, along_v: ScalarFn<T>) -> Self {
        Self {
            double,
            along_u,
            along_v,
        }
    }

    /// `∫_a^b ∫_c^d f(u, v) dv du`
    pub fn double(&self, rect: &Rectangle<T>) -> T {
        let f = &self.double;
        let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
        f(b, d) - f(a, d) - f(b, c) + f(a, c)
    }

    /// `∫_lo^hi f(u, v) dv` at fixed `u`.
    pub fn along_v(&self, u: T, lo: T, hi: T) -> T {
        (self.along_v)(u, hi) - (self.along_v)(u, lo)
    }

    /// `∫_lo^hi f(u, v) du` at fixed `v`.
    pub fn along_u(&self, v: T, lo: T, hi: T) -> T {
        (self.along_u)(hi, v) - (self.along_u)(lo, v)
    }
}

/// Where a value of `D` came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeSource {
    Analytic,
    FiniteDifference,
}

/// A bivariate function with its mixed second partial.
#[derive(Clone)]
pub struct Surface<T> {
    name: String,
    eval: ScalarFn<T>,
    mixed: Option<ScalarFn<T>>,
    exact: Option<ExactIntegrals<T>>,
    notes: String,
}

impl<T: Real> Surface<T> {
    pub fn new<F>(name: impl Into<String>, eval: F) -> Self
    where
        F: Fn(T, T) -> T + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(eval),
            mixed: None,
            exact: None,
            notes: String::new(),
        }
    }

    pub fn with_mixed<F>(mut self, mixed: F) -> Self
    where
        F: Fn(T, T) -> T + Send + Sync + 'static,
    {
        self.mixed = Some(Arc::new(mixed));
        self
    }

    pub fn with_exact(mut self, exact: ExactIntegrals<T>) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_notes(mut self, notes: impl Into<String>) -> Self {
        self.notes = notes.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn notes(&self) -> &str {
        &self.notes
    }

    #[inline]
    pub fn eval(&self, u: T, v: T) -> T {
        (self.eval)(u, v)
    }

    pub fn has_analytic_mixed(&self) -> bool {
        self.mixed.is_some()
    }

    pub fn exact(&self) -> Option<&ExactIntegrals<T>> {
        self.exact.as_ref()
    }

    pub fn derivative_source(&self) -> DerivativeSource {
        if self.mixed.is_some() {
            DerivativeSource::Analytic
        } else {
            DerivativeSource::FiniteDifference
        }
    }

    /// Cross central difference of `f` at `(u, v)` with half-width `h`.
    pub fn cross_difference(&self, u: T, v: T, h: T) -> T {
        let f = &self.eval;
        (f(u + h, v + h) - f(u + h, v - h) - f(u - h, v + h) + f(u - h, v - h))
            / (T::lit(4.0) * h * h)
    }

    /// `D(u, v)` for use inside `rect`. Falls back to the cross difference
    /// with the default step, moving the stencil centre inward when it
    /// would cross the boundary.
    pub fn mixed_in(&self, rect: &Rectangle<T>, u: T, v: T) -> T {
        if let Some(m) = &self.mixed {
            return m(u, v);
        }
        let h = default_step(u, v);
        let uc = clamp_centre(u, rect.a(), rect.b(), h);
        let vc = clamp_centre(v, rect.c(), rect.d(), h);
        self.cross_difference(uc, vc, h)
    }

    /// The derived surface `|D|`.
    pub fn abs_mixed(&self) -> Surface<T> {
        self.abs_mixed_pow(None)
    }

    /// The derived surface `|D|^q`, or `|D|` when `q` is `None`.
    ///
    /// Without an analytic `D` the derived surface evaluates the cross
    /// difference at the default step around each point.
    pub fn abs_mixed_pow(&self, q: Option<T>) -> Surface<T> {
        let label = match q {
            Some(q) => format!("|D[{}]|^{}", self.name, q),
            None => format!("|D[{}]|", self.name),
        };
        let power = move |d: T| match q {
            Some(q) => d.abs().powf(q),
            None => d.abs(),
        };
        match &self.mixed {
            Some(m) => {
                let m = Arc::clone(m);
                Surface::new(label, move |u, v| power(m(u, v)))
            }
            None => {
                let base = self.clone();
                Surface::new(label, move |u, v| {
                    power(base.cross_difference(u, v, default_step(u, v)))
                })
            }
        }
    }
}

impl<T> fmt::Debug for Surface<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Surface")
            .field("name", &self.name)
            .field("analytic_mixed", &self.mixed.is_some())
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

/// Default finite-difference half-width `1e-4 * max(1, |u|, |v|)`.
pub fn default_step<T: Real>(u: T, v: T) -> T {
    T::lit(1e-4) * T::one().max(u.abs()).max(v.abs())
}

fn clamp_centre<T: Real>(x: T, lo: T, hi: T, h: T) -> T {
    if hi - lo <= h + h {
        (lo + hi) / T::lit(2.0)
    } else {
        x.max(lo + h).min(hi - h)
    }
}

/// `D(u, v)`: the analytic mixed partial when present, otherwise the cross
/// central difference with half-width `step` (default step when `None`).
///
/// The finite-difference route fails with `StencilOutsideDomain` when the
/// 4-point stencil leaves `rect`.
pub fn mixed_partial<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    u: T,
    v: T,
    step: Option<T>,
) -> Result<T> {
    if let Some(m) = &surface.mixed {
        return Ok(m(u, v));
    }
    let h = step.unwrap_or_else(|| default_step(u, v));
    if !(rect.contains(u - h, v - h) && rect.contains(u + h, v + h)) {
        return Err(Error::StencilOutsideDomain {
            u: u.to_f64_lossy(),
            v: v.to_f64_lossy(),
            step: h.to_f64_lossy(),
        });
    }
    Ok(surface.cross_difference(u, v, h))
}

/// Facts a catalog entry declares about itself on its default rectangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeclaredFact {
    FullyConvex,
    NotFullyConvex,
    CoordinateConvex,
    /// `|D|` is co-ordinated convex.
    AbsMixedCoordinateConvex,
    /// `|D|^q` is co-ordinated convex for the given `q`.
    AbsMixedPowCoordinateConvex(f64),
}

impl fmt::Display for DeclaredFact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DeclaredFact::FullyConvex => f.write_str("convex"),
            DeclaredFact::NotFullyConvex => f.write_str("not-convex"),
            DeclaredFact::CoordinateConvex => f.write_str("coordinate-convex"),
            DeclaredFact::AbsMixedCoordinateConvex => f.write_str("|D|-coordinate-convex"),
            DeclaredFact::AbsMixedPowCoordinateConvex(q) => {
                write!(f, "|D|^{q}-coordinate-convex")
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry<T> {
    pub surface: Surface<T>,
    pub default_rect: Rectangle<T>,
    pub expected_properties: Vec<DeclaredFact>,
}

/// Catalog identifiers with a one-line formula, in listing order.
pub const CATALOG: [(&str, &str); 6] = [
    ("product", "u*v"),
    ("sqproduct", "u^2*v^2"),
    ("constant", "1"),
    ("exp", "exp(u+v)"),
    ("quartic", "u^4+v^4+u^2*v^2"),
    ("affine", "2u+3v+1"),
];

pub fn catalog_names() -> impl Iterator<Item = &'static str> {
    CATALOG.iter().map(|(n, _)| *n)
}

fn arc<T, F>(f: F) -> ScalarFn<T>
where
    F: Fn(T, T) -> T + Send + Sync + 'static,
{
    Arc::new(f)
}

pub fn catalog_lookup<T: Real>(name: &str) -> Result<CatalogEntry<T>> {
    use DeclaredFact::*;
    let l = T::lit;
    let q_facts = [
        AbsMixedPowCoordinateConvex(1.5),
        AbsMixedPowCoordinateConvex(2.0),
        AbsMixedPowCoordinateConvex(3.0),
    ];
    let (surface, facts): (Surface<T>, Vec<DeclaredFact>) = match name {
        "product" => (
            Surface::new("product", |u, v| u * v)
                .with_mixed(|_, _| T::one())
                .with_exact(ExactIntegrals::new(
                    arc(move |u: T, v: T| u * u * v * v / l(4.0)),
                    arc(move |u: T, v: T| u * u * v / l(2.0)),
                    arc(move |u: T, v: T| u * v * v / l(2.0)),
                ))
                .with_notes("bilinear; co-ordinated convex but not jointly convex; D = 1"),
            vec![NotFullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        "sqproduct" => (
            Surface::new("sqproduct", |u, v| u * u * v * v)
                .with_mixed(move |u, v| l(4.0) * u * v)
                .with_exact(ExactIntegrals::new(
                    arc(move |u: T, v: T| (u * v).powi(3) / l(9.0)),
                    arc(move |u: T, v: T| u.powi(3) * v * v / l(3.0)),
                    arc(move |u: T, v: T| u * u * v.powi(3) / l(3.0)),
                ))
                .with_notes("co-ordinated convex, not jointly convex; D = 4uv"),
            vec![NotFullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        "constant" => (
            Surface::new("constant", |_, _| T::one())
                .with_mixed(|_, _| T::zero())
                .with_exact(ExactIntegrals::new(
                    arc(|u: T, v: T| u * v),
                    arc(|u: T, _| u),
                    arc(|_, v: T| v),
                ))
                .with_notes("constant 1; D = 0"),
            vec![FullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        "exp" => (
            Surface::new("exp", |u: T, v: T| (u + v).exp())
                .with_mixed(|u: T, v: T| (u + v).exp())
                .with_exact(ExactIntegrals::new(
                    arc(|u: T, v: T| (u + v).exp()),
                    arc(|u: T, v: T| (u + v).exp()),
                    arc(|u: T, v: T| (u + v).exp()),
                ))
                .with_notes("jointly convex; D = exp(u+v)"),
            vec![FullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        "quartic" => (
            Surface::new("quartic", |u: T, v: T| {
                u.powi(4) + v.powi(4) + u * u * v * v
            })
            .with_mixed(move |u, v| l(4.0) * u * v)
            .with_exact(ExactIntegrals::new(
                arc(move |u: T, v: T| {
                    u.powi(5) * v / l(5.0) + u * v.powi(5) / l(5.0) + (u * v).powi(3) / l(9.0)
                }),
                arc(move |u: T, v: T| {
                    u.powi(5) / l(5.0) + u * v.powi(4) + u.powi(3) * v * v / l(3.0)
                }),
                arc(move |u: T, v: T| {
                    u.powi(4) * v + v.powi(5) / l(5.0) + u * u * v.powi(3) / l(3.0)
                }),
            ))
            .with_notes("jointly convex; D = 4uv"),
            vec![FullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        "affine" => (
            Surface::new("affine", move |u, v| l(2.0) * u + l(3.0) * v + T::one())
                .with_mixed(|_, _| T::zero())
                .with_exact(ExactIntegrals::new(
                    arc(move |u: T, v: T| u * u * v + l(1.5) * u * v * v + u * v),
                    arc(move |u: T, v: T| u * u + l(3.0) * u * v + u),
                    arc(move |u: T, v: T| l(2.0) * u * v + l(1.5) * v * v + v),
                ))
                .with_notes("affine; D = 0"),
            vec![FullyConvex, CoordinateConvex, AbsMixedCoordinateConvex],
        ),
        other => {
            return Err(Error::UnknownSurface {
                name: other.to_string(),
                valid: catalog_names().map(String::from).collect(),
            })
        }
    };
    let mut expected_properties = facts;
    expected_properties.extend(q_facts);
    Ok(CatalogEntry {
        surface,
        default_rect: Rectangle::unit(),
        expected_properties,
    })
}

/// Every catalog entry, in listing order.
pub fn catalog<T: Real>() -> Vec<CatalogEntry<T>> {
    catalog_names()
        .map(|n| catalog_lookup(n).expect("catalog names resolve"))
        .collect()
}
