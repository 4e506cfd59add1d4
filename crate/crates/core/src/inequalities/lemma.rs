use crate::domain::{EvalPoint, Rectangle, Tolerances};
use crate::error::Result;
use crate::quadrature::{EdgeIntegrals, Integrator};
use crate::scalar::Real;
use crate::surfaces::{DerivativeSource, Surface};

use super::{CoefficientForm, Corner, CornerCell};

/// Integrals of `f` that depend on the rectangle but not on `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectIntegrals<T> {
    pub edges: EdgeIntegrals<T>,
    /// `∫_a^b ∫_c^d f(u, v) dv du`
    pub double: T,
}

impl<T: Real> RectIntegrals<T> {
    pub fn compute(
        surface: &Surface<T>,
        rect: &Rectangle<T>,
        integ: &Integrator<T>,
    ) -> Result<Self> {
        Ok(Self {
            edges: integ.edge_integrals(surface, rect)?,
            double: integ.double_integral(surface, rect)?,
        })
    }

    pub fn mean(&self, rect: &Rectangle<T>) -> T {
        self.double / rect.area()
    }
}

/// The corner functional `A` from precomputed edge integrals.
pub fn corner_functional_from<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integrals: &RectIntegrals<T>,
) -> T {
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let (x, y) = (point.x(), point.y());
    let (xa, bx, yc, dy) = (x - a, b - x, y - c, d - y);
    let e = &integrals.edges;
    let corners = xa * yc * surface.eval(a, c)
        + xa * dy * surface.eval(a, d)
        + bx * yc * surface.eval(b, c)
        + bx * dy * surface.eval(b, d);
    let edges = xa * e.left + bx * e.right + dy * e.top + yc * e.bottom;
    (corners - edges) / rect.area()
}

pub fn corner_functional_a<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integ: &Integrator<T>,
) -> Result<T> {
    let integrals = RectIntegrals::compute(surface, rect, integ)?;
    Ok(corner_functional_from(surface, rect, point, &integrals))
}

/// `A + (1/area) ∫∫ f`, signed.
pub fn lemma_lhs_from<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integrals: &RectIntegrals<T>,
) -> T {
    corner_functional_from(surface, rect, point, integrals) + integrals.mean(rect)
}

pub fn lemma_lhs<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integ: &Integrator<T>,
) -> Result<T> {
    let integrals = RectIntegrals::compute(surface, rect, integ)?;
    Ok(lemma_lhs_from(surface, rect, point, &integrals))
}

/// `coefficient * ∫∫_[0,1]² kernel(t, s) D(transform(t, s)) ds dt`.
pub fn kernel_term<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    cell: &CornerCell<T>,
    integ: &Integrator<T>,
) -> Result<T> {
    if cell.coefficient() == T::zero() {
        return Ok(T::zero());
    }
    let integral = integ.integrate_unit_square(|t, s| {
        let (u, v) = cell.transform(t, s);
        cell.kernel(t, s) * surface.mixed_in(rect, u, v)
    })?;
    Ok(cell.coefficient() * integral)
}

/// The four kernel terms, in `AC, AD, BC, BD` order.
pub fn kernel_terms<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    form: CoefficientForm,
    integ: &Integrator<T>,
) -> Result<[T; 4]> {
    let mut out = [T::zero(); 4];
    for (slot, corner) in out.iter_mut().zip(Corner::ALL) {
        let cell = CornerCell::with_form(corner, rect, point, form);
        *slot = kernel_term(surface, rect, &cell, integ)?;
    }
    Ok(out)
}

/// Sum of the four kernel terms.
pub fn kernel_sum<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    form: CoefficientForm,
    integ: &Integrator<T>,
) -> Result<T> {
    let terms = kernel_terms(surface, rect, point, form, integ)?;
    Ok(terms.iter().fold(T::zero(), |acc, &t| acc + t))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityReport<T> {
    /// `A + mean double integral`
    pub lhs: T,
    /// `I_AC + I_AD + I_BC + I_BD`
    pub kernel_sum: T,
    pub terms: [T; 4],
    pub residual: T,
    /// Largest residual that passes.
    pub allowance: T,
    pub passed: bool,
    pub source: DerivativeSource,
}

/// Residual between the two sides of the corner/edge identity.
///
/// With finite-difference derivatives the tolerance is widened to `1e-5`.
pub fn verify_identity<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integ: &Integrator<T>,
    tol: &Tolerances<T>,
) -> Result<IdentityReport<T>> {
    let integrals = RectIntegrals::compute(surface, rect, integ)?;
    verify_identity_with(surface, rect, point, &integrals, integ, tol)
}

pub(crate) fn verify_identity_with<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integrals: &RectIntegrals<T>,
    integ: &Integrator<T>,
    tol: &Tolerances<T>,
) -> Result<IdentityReport<T>> {
    let lhs = lemma_lhs_from(surface, rect, point, integrals);
    let terms = kernel_terms(surface, rect, point, CoefficientForm::Squared, integ)?;
    let kernel_sum = terms.iter().fold(T::zero(), |acc, &t| acc + t);
    let source = surface.derivative_source();
    let tol = match source {
        DerivativeSource::Analytic => *tol,
        DerivativeSource::FiniteDifference => {
            let loose = T::lit(1e-5);
            Tolerances::new(tol.abs_tol().max(loose), tol.rel_tol().max(loose))?
        }
    };
    let residual = (lhs - kernel_sum).abs();
    let allowance = tol.allowance(lhs, kernel_sum);
    Ok(IdentityReport {
        lhs,
        kernel_sum,
        terms,
        residual,
        allowance,
        passed: residual <= allowance,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::catalog_lookup;

    fn entry(name: &str) -> Surface<f64> {
        catalog_lookup(name).unwrap().surface
    }

    #[test]
    fn corner_functional_examples() {
        let integ = Integrator::default();
        let r = Rectangle::<f64>::unit();
        let c = entry("constant");
        for (x, y) in [(0.5, 0.5), (0.1, 0.9), (0.0, 1.0)] {
            let a = corner_functional_a(&c, &r, &r.point(x, y).unwrap(), &integ).unwrap();
            assert!((a + 1.0).abs() < 1e-14);
        }
        let p = entry("product");
        for (x, y) in [(0.5, 0.5), (0.2, 0.7)] {
            let a = corner_functional_a(&p, &r, &r.point(x, y).unwrap(), &integ).unwrap();
            let want = (1.0 - x) * (1.0 - y) - (1.0 - x) / 2.0 - (1.0 - y) / 2.0;
            assert!((a - want).abs() < 1e-14);
        }
        let s = entry("sqproduct");
        let a = corner_functional_a(&s, &r, &r.midpoint(), &integ).unwrap();
        assert!((a + 1.0 / 12.0).abs() < 1e-14);
    }

    #[test]
    fn lemma_lhs_examples() {
        let integ = Integrator::default();
        let r = Rectangle::<f64>::unit();
        let c = lemma_lhs(&entry("constant"), &r, &r.point(0.3, 0.8).unwrap(), &integ).unwrap();
        assert!(c.abs() < 1e-14);
        let p = lemma_lhs(&entry("product"), &r, &r.point(0.25, 0.25).unwrap(), &integ).unwrap();
        assert!((p - 0.0625).abs() < 1e-14);
        let s = lemma_lhs(&entry("sqproduct"), &r, &r.midpoint(), &integ).unwrap();
        assert!((s - 1.0 / 36.0).abs() < 1e-14);
    }

    #[test]
    fn kernel_term_examples() {
        let integ = Integrator::default();
        let r = Rectangle::<f64>::unit();
        let mid = r.midpoint();
        let p = entry("product");
        let ac = kernel_term(&p, &r, &CornerCell::new(Corner::AC, &r, &mid), &integ).unwrap();
        assert!((ac - 1.0 / 64.0).abs() < 1e-15);
        let ad = kernel_term(&p, &r, &CornerCell::new(Corner::AD, &r, &mid), &integ).unwrap();
        assert!((ad + 1.0 / 64.0).abs() < 1e-15);
        let zero = entry("affine");
        for cell in CornerCell::all(&r, &mid) {
            assert_eq!(kernel_term(&zero, &r, &cell, &integ).unwrap(), 0.0);
        }
    }

    #[test]
    fn identity_examples() {
        let integ = Integrator::default();
        let tol = Tolerances::default();
        let r = Rectangle::<f64>::unit();
        let rep = verify_identity(
            &entry("product"),
            &r,
            &r.point(0.25, 0.25).unwrap(),
            &integ,
            &tol,
        )
        .unwrap();
        assert!(rep.passed);
        assert!((rep.kernel_sum - 0.0625).abs() < 1e-14);
        let other = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
        let rep = verify_identity(
            &entry("constant"),
            &other,
            &other.point(0.0, 1.0).unwrap(),
            &integ,
            &tol,
        )
        .unwrap();
        assert!(rep.lhs.abs() < 1e-13 && rep.kernel_sum == 0.0);
        let rep = verify_identity(&entry("sqproduct"), &r, &r.midpoint(), &integ, &tol).unwrap();
        assert!((rep.lhs - 1.0 / 36.0).abs() < 1e-10);
        assert!((rep.kernel_sum - 1.0 / 36.0).abs() < 1e-10);
    }

    #[test]
    fn identity_on_boundary_points() {
        let integ = Integrator::default();
        let tol = Tolerances::default();
        let r = Rectangle::new(0.5, 1.5, -0.5, 0.5).unwrap();
        for name in ["exp", "quartic", "sqproduct"] {
            for (x, y) in [(0.5, -0.5), (1.5, 0.5), (0.5, 0.1), (1.0, 0.5)] {
                let rep = verify_identity(&entry(name), &r, &r.point(x, y).unwrap(), &integ, &tol)
                    .unwrap();
                assert!(rep.passed, "{name} ({x},{y}): {rep:?}");
            }
        }
    }

    #[test]
    fn identity_with_finite_differences() {
        let integ = Integrator::default();
        let tol = Tolerances::default();
        let r = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
        let bare = Surface::new("sin-exp", |u: f64, v: f64| {
            (0.7 * u).sin() * (0.3 * v).exp()
        });
        let rep = verify_identity(&bare, &r, &r.point(0.4, 1.1).unwrap(), &integ, &tol).unwrap();
        assert_eq!(rep.source, DerivativeSource::FiniteDifference);
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn first_power_variant_breaks_identity() {
        let integ = Integrator::default();
        let r = Rectangle::<f64>::unit();
        let p = r.point(0.25, 0.25).unwrap();
        let s = entry("product");
        let squared = kernel_sum(&s, &r, &p, CoefficientForm::Squared, &integ).unwrap();
        let first = kernel_sum(&s, &r, &p, CoefficientForm::FirstPowerRight, &integ).unwrap();
        // (1 - 9 - 48 + 144) / 1024
        assert!((first - 88.0 / 1024.0).abs() < 1e-14);
        assert!((first - squared).abs() > 1e-2);
    }
}
