use crate::convexity::{check_coordinate_convexity, default_lambdas, DEFAULT_HYPOTHESIS_GRID};
use crate::domain::{Rectangle, Tolerances};
use crate::error::Result;
use crate::quadrature::Integrator;
use crate::scalar::Real;
use crate::surfaces::Surface;

use super::HypothesisStatus;

/// Names of the five levels, smallest first.
pub const CHAIN_LEVELS: [&str; 5] = ["midpoint", "midlines", "mean", "edges", "corners"];

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport<T> {
    /// `f` at the centre, mean of the two mid-line means, mean over `Δ`,
    /// mean of the four edge means, mean of the four corner values.
    pub values: [T; 5],
    /// `ordered[i]` is `values[i] <= values[i + 1]` up to tolerance.
    pub ordered: [bool; 4],
    pub hypothesis: HypothesisStatus,
}

impl<T: Real> ChainReport<T> {
    pub fn all_ordered(&self) -> bool {
        self.ordered.iter().all(|&o| o)
    }
}

/// The five-level Hadamard chain for a co-ordinated convex `f` on `rect`.
pub fn chain_1_1<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    integ: &Integrator<T>,
    tol: &Tolerances<T>,
) -> Result<ChainReport<T>> {
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let mid = rect.midpoint();
    let (w, h) = (rect.width(), rect.height());
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);

    let centre = surface.eval(mid.x(), mid.y());
    let across = integ.integrate_1d(|u| surface.eval(u, mid.y()), a, b)? / w;
    let down = integ.integrate_1d(|v| surface.eval(mid.x(), v), c, d)? / h;
    let midlines = half * (across + down);
    let mean = integ.double_integral(surface, rect)? / rect.area();
    let e = integ.edge_integrals(surface, rect)?;
    let edges = quarter * ((e.bottom + e.top) / w + (e.left + e.right) / h);
    let corners = quarter
        * (surface.eval(a, c) + surface.eval(a, d) + surface.eval(b, c) + surface.eval(b, d));

    let values = [centre, midlines, mean, edges, corners];
    let mut ordered = [true; 4];
    for (i, slot) in ordered.iter_mut().enumerate() {
        *slot = tol.le(values[i], values[i + 1]);
    }
    let verdict = check_coordinate_convexity(
        |u, v| surface.eval(u, v),
        rect,
        DEFAULT_HYPOTHESIS_GRID,
        &default_lambdas::<T>(),
        None,
    );
    Ok(ChainReport {
        values,
        ordered,
        hypothesis: HypothesisStatus::from_holds(verdict.holds),
    })
}
