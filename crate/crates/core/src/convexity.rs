//! Sampled checks of joint convexity and co-ordinated convexity.
//!
//! Every check is the secant inequality
//! `f(λp + (1-λ)q) <= λ f(p) + (1-λ) f(q)` evaluated over a uniform grid of
//! point pairs and a fixed set of λ. A verdict that holds means "not
//! falsified at this resolution", nothing stronger.

use std::cmp::Ordering;

use crate::domain::{closed_nodes, Rectangle};
use crate::scalar::Real;
use crate::surfaces::{default_step, DerivativeSource, Surface};

/// λ values used when the caller does not supply any.
pub const DEFAULT_LAMBDAS: [f64; 5] = [0.25, 1.0 / 3.0, 0.5, 2.0 / 3.0, 0.75];

/// Grid resolution used when a bound checks its own hypothesis.
pub const DEFAULT_HYPOTHESIS_GRID: usize = 9;

/// Widening of the default tolerance when `D` comes from finite differences.
pub const FD_TOLERANCE_FACTOR: f64 = 1e4;

pub fn default_lambdas<T: Real>() -> Vec<T> {
    DEFAULT_LAMBDAS.iter().map(|&l| T::lit(l)).collect()
}

/// The sample achieving the worst violation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness<T> {
    pub first: (T, T),
    pub second: (T, T),
    pub lambda: T,
}

impl<T: Real> Witness<T> {
    fn lex_cmp(&self, other: &Self) -> Ordering {
        let key = |w: &Self| [w.first.0, w.first.1, w.second.0, w.second.1, w.lambda];
        key(self)
            .iter()
            .zip(key(other).iter())
            .map(|(a, b)| a.partial_cmp(b).unwrap_or(Ordering::Equal))
            .find(|o| *o != Ordering::Equal)
            .unwrap_or(Ordering::Equal)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityVerdict<T> {
    pub holds: bool,
    /// Max over samples of `f(combination) - combination of f`, in units of `f`.
    pub worst_violation: T,
    pub witness: Option<Witness<T>>,
    pub tolerance: T,
    /// Points per axis of the sampling grid.
    pub resolution: usize,
    /// Inward shift of the grid when the check ran on finite differences.
    pub inset: Option<T>,
}

#[derive(Debug, Clone, Copy)]
struct Worst<T> {
    violation: T,
    witness: Option<Witness<T>>,
}

impl<T: Real> Worst<T> {
    fn new() -> Self {
        Self {
            violation: T::neg_infinity(),
            witness: None,
        }
    }

    fn offer(&mut self, violation: T, witness: Witness<T>) {
        let better = match self.witness {
            None => true,
            Some(current) => {
                violation > self.violation
                    || (violation == self.violation && witness.lex_cmp(&current) == Ordering::Less)
            }
        };
        if better {
            self.violation = violation;
            self.witness = Some(witness);
        }
    }

    fn merge(mut self, other: Self) -> Self {
        if let Some(w) = other.witness {
            self.offer(other.violation, w);
        }
        self
    }
}

fn finish<T: Real>(
    worst: Worst<T>,
    max_abs: T,
    tol: Option<T>,
    resolution: usize,
) -> ConvexityVerdict<T> {
    let tolerance = tol.unwrap_or_else(|| T::lit(1e-10) * (T::one() + max_abs));
    let worst_violation = if worst.witness.is_some() {
        worst.violation
    } else {
        T::zero()
    };
    ConvexityVerdict {
        holds: worst_violation <= tolerance,
        worst_violation,
        witness: worst.witness,
        tolerance,
        resolution,
        inset: None,
    }
}

/// Joint convexity over all pairs of grid points and all λ.
pub fn check_full_convexity<T, F>(
    f: F,
    rect: &Rectangle<T>,
    grid: usize,
    lambdas: &[T],
    tol: Option<T>,
) -> ConvexityVerdict<T>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let xs = closed_nodes(rect.a(), rect.b(), grid.max(2));
    let ys = closed_nodes(rect.c(), rect.d(), grid.max(2));
    // Points in lexicographic (x, y) order so the first maximum found is
    // also the lexicographically smallest witness.
    let mut pts = Vec::with_capacity(xs.len() * ys.len());
    for &x in &xs {
        for &y in &ys {
            pts.push((x, y, f(x, y)));
        }
    }
    let max_abs = pts.iter().fold(T::zero(), |m, p| m.max(p.2.abs()));
    let mut worst = Worst::new();
    for &(x, y, fp) in &pts {
        for &(z, w, fq) in &pts {
            for &lam in lambdas {
                let mu = T::one() - lam;
                let mid = f(lam * x + mu * z, lam * y + mu * w);
                let violation = mid - (lam * fp + mu * fq);
                worst.offer(
                    violation,
                    Witness {
                        first: (x, y),
                        second: (z, w),
                        lambda: lam,
                    },
                );
            }
        }
    }
    finish(worst, max_abs, tol, grid.max(2))
}

/// Convexity of every partial map `u -> f(u, y)` and `v -> f(x, v)` on grid
/// lines, via the 1-D secant inequality.
pub fn check_coordinate_convexity<T, F>(
    f: F,
    rect: &Rectangle<T>,
    grid: usize,
    lambdas: &[T],
    tol: Option<T>,
) -> ConvexityVerdict<T>
where
    T: Real,
    F: Fn(T, T) -> T,
{
    let g = grid.max(2);
    let xs = closed_nodes(rect.a(), rect.b(), g);
    let ys = closed_nodes(rect.c(), rect.d(), g);
    let mut max_abs = T::zero();
    let mut worst = Worst::new();

    // Horizontal lines: frozen y, pairs along x.
    for &y in &ys {
        let line: Vec<(T, T)> = xs.iter().map(|&x| (x, f(x, y))).collect();
        let mut slice = Worst::new();
        for &(x1, f1) in &line {
            max_abs = max_abs.max(f1.abs());
            for &(x2, f2) in &line {
                for &lam in lambdas {
                    let mu = T::one() - lam;
                    let violation = f(lam * x1 + mu * x2, y) - (lam * f1 + mu * f2);
                    slice.offer(
                        violation,
                        Witness {
                            first: (x1, y),
                            second: (x2, y),
                            lambda: lam,
                        },
                    );
                }
            }
        }
        worst = worst.merge(slice);
    }
    // Vertical lines: frozen x, pairs along y.
    for &x in &xs {
        let line: Vec<(T, T)> = ys.iter().map(|&y| (y, f(x, y))).collect();
        let mut slice = Worst::new();
        for &(y1, f1) in &line {
            for &(y2, f2) in &line {
                for &lam in lambdas {
                    let mu = T::one() - lam;
                    let violation = f(x, lam * y1 + mu * y2) - (lam * f1 + mu * f2);
                    slice.offer(
                        violation,
                        Witness {
                            first: (x, y1),
                            second: (x, y2),
                            lambda: lam,
                        },
                    );
                }
            }
        }
        worst = worst.merge(slice);
    }
    finish(worst, max_abs, tol, g)
}

/// Co-ordinated convexity of `|D|` (`q = None`) or `|D|^q`.
///
/// Surfaces without an analytic `D` are checked on a grid pulled inward by
/// one finite-difference step, recorded in `inset`, and the default
/// tolerance is multiplied by [`FD_TOLERANCE_FACTOR`].
pub fn check_hypothesis<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    q: Option<T>,
    grid: usize,
    tol: Option<T>,
) -> ConvexityVerdict<T> {
    let derived = surface.abs_mixed_pow(q);
    let lambdas = default_lambdas::<T>();
    match surface.derivative_source() {
        DerivativeSource::Analytic => {
            check_coordinate_convexity(|u, v| derived.eval(u, v), rect, grid, &lambdas, tol)
        }
        DerivativeSource::FiniteDifference => {
            let corner_scale = rect
                .a()
                .abs()
                .max(rect.b().abs())
                .max(rect.c().abs())
                .max(rect.d().abs());
            let step = default_step(corner_scale, T::zero());
            let inner = rect.shrink(step).unwrap_or(*rect);
            let mut verdict =
                check_coordinate_convexity(|u, v| derived.eval(u, v), &inner, grid, &lambdas, tol);
            verdict.inset = Some(step);
            if tol.is_none() {
                // Cross differences carry roughly eps·|f|/h² of rounding noise.
                verdict.tolerance *= T::lit(FD_TOLERANCE_FACTOR);
                verdict.holds = verdict.worst_violation <= verdict.tolerance;
            }
            verdict
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::{catalog, catalog_lookup, DeclaredFact};

    fn unit() -> Rectangle<f64> {
        Rectangle::unit()
    }

    fn three() -> Vec<f64> {
        vec![0.25, 0.5, 0.75]
    }

    #[test]
    fn full_convexity_examples() {
        let v = check_full_convexity(|u, v| u * u + v * v, &unit(), 5, &three(), None);
        assert!(v.holds, "{v:?}");

        let v = check_full_convexity(|u, v| u * v, &unit(), 5, &three(), None);
        assert!(!v.holds);
        assert!((v.worst_violation - 0.25).abs() < 1e-15);
        let w = v.witness.unwrap();
        assert_eq!((w.first, w.second, w.lambda), ((0.0, 1.0), (1.0, 0.0), 0.5));

        let v = check_full_convexity(|_, _| 1.0, &unit(), 5, &three(), None);
        assert!(v.holds);
        assert_eq!(v.worst_violation, 0.0);
    }

    #[test]
    fn coordinate_convexity_examples() {
        assert!(check_coordinate_convexity(|u, v| u * v, &unit(), 5, &three(), None).holds);
        assert!(check_coordinate_convexity(|u, v| u * u * v * v, &unit(), 5, &three(), None).holds);
        let v = check_coordinate_convexity(|u, _| -u * u, &unit(), 5, &three(), None);
        assert!(!v.holds);
        let w = v.witness.unwrap();
        // Violation lives on a horizontal line.
        assert_eq!(w.first.1, w.second.1);
    }

    #[test]
    fn hypothesis_examples() {
        let r = unit();
        let product = catalog_lookup::<f64>("product").unwrap().surface;
        assert!(check_hypothesis(&product, &r, None, 9, None).holds);
        let sq = catalog_lookup::<f64>("sqproduct").unwrap().surface;
        assert!(check_hypothesis(&sq, &r, Some(2.0), 9, None).holds);
        assert!(check_hypothesis(&sq, &r, None, 9, None).holds);
    }

    #[test]
    fn hypothesis_can_fail() {
        // D = cos(u) cos(v): |D| is concave along each axis near the origin.
        let s = crate::surfaces::Surface::new("sincos", |u: f64, v: f64| u.sin() * v.sin())
            .with_mixed(|u, v| u.cos() * v.cos());
        let r = Rectangle::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert!(!check_hypothesis(&s, &r, None, 9, None).holds);
    }

    #[test]
    fn finite_difference_hypothesis_insets() {
        let bare = crate::surfaces::Surface::new("bare", |u: f64, v: f64| u * u * v * v);
        let v = check_hypothesis(&bare, &unit(), Some(2.0), 9, None);
        assert!(v.inset.is_some());
        // 16 u^2 v^2 from differences carries O(h^2) noise but stays convex per axis.
        assert!(v.holds, "{v:?}");
    }

    #[test]
    fn declared_facts_hold_on_default_rects() {
        let lambdas = default_lambdas::<f64>();
        for entry in catalog::<f64>() {
            let s = &entry.surface;
            let r = &entry.default_rect;
            for fact in &entry.expected_properties {
                let ok = match *fact {
                    DeclaredFact::FullyConvex => {
                        check_full_convexity(|u, v| s.eval(u, v), r, 9, &lambdas, None).holds
                    }
                    DeclaredFact::NotFullyConvex => {
                        !check_full_convexity(|u, v| s.eval(u, v), r, 9, &lambdas, None).holds
                    }
                    DeclaredFact::CoordinateConvex => {
                        check_coordinate_convexity(|u, v| s.eval(u, v), r, 9, &lambdas, None).holds
                    }
                    DeclaredFact::AbsMixedCoordinateConvex => {
                        check_hypothesis(s, r, None, 9, None).holds
                    }
                    DeclaredFact::AbsMixedPowCoordinateConvex(q) => {
                        check_hypothesis(s, r, Some(q), 9, None).holds
                    }
                };
                assert!(ok, "{} fails declared {fact:?}", s.name());
            }
        }
    }

    #[test]
    fn full_implies_coordinate() {
        let lambdas = default_lambdas::<f64>();
        let rects = [
            unit(),
            Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap(),
            Rectangle::new(0.5, 1.5, -0.5, 0.5).unwrap(),
        ];
        for entry in catalog::<f64>() {
            let s = &entry.surface;
            for r in &rects {
                let full = check_full_convexity(|u, v| s.eval(u, v), r, 7, &lambdas, None);
                let coord = check_coordinate_convexity(|u, v| s.eval(u, v), r, 7, &lambdas, None);
                if full.holds {
                    assert!(coord.holds, "{} on {r}", s.name());
                }
            }
        }
    }

    #[test]
    fn deterministic_witness() {
        let lambdas = default_lambdas::<f64>();
        let a = check_full_convexity(|u, v| u * v, &unit(), 9, &lambdas, None);
        let b = check_full_convexity(|u, v| u * v, &unit(), 9, &lambdas, None);
        assert_eq!(a, b);
    }
}
