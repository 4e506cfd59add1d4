use crate::convexity::{check_hypothesis, DEFAULT_HYPOTHESIS_GRID};
use crate::domain::{EvalPoint, HolderExponents, Rectangle};
use crate::error::{Error, Result};
use crate::quadrature::Integrator;
use crate::scalar::Real;
use crate::surfaces::Surface;

use super::lemma::lemma_lhs;
use super::{BoundInputs, BoundReport, CornerCell, HypothesisStatus, Theorem};

/// `|D|` at the four points a cell's estimate uses: `(x, y)`, `(x, η)`,
/// `(ξ, y)`, `(ξ, η)`.
fn cell_samples<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    cell: &CornerCell<T>,
) -> [T; 4] {
    let (x, y) = (point.x(), point.y());
    let (xi, eta) = cell.anchor();
    let d = |u, v| surface.mixed_in(rect, u, v).abs();
    [d(x, y), d(x, eta), d(xi, y), d(xi, eta)]
}

/// Weights and sample points of the nine-point bound, in the order
/// `(x,y), (a,y), (b,y), (x,c), (x,d), (a,c), (a,d), (b,c), (b,d)`.
/// The bound is `Σ weight * |D(point)|`.
pub fn t1_terms<T: Real>(rect: &Rectangle<T>, point: &EvalPoint<T>) -> [(T, (T, T)); 9] {
    let (a, b, c, d) = (rect.a(), rect.b(), rect.c(), rect.d());
    let (x, y) = (point.x(), point.y());
    let (xa2, bx2) = ((x - a).powi(2), (b - x).powi(2));
    let (yc2, dy2) = ((y - c).powi(2), (d - y).powi(2));
    let sx = xa2 + bx2;
    let sy = yc2 + dy2;
    let two = T::lit(2.0);
    let scale = (T::lit(9.0) * rect.area()).recip();
    [
        (sx * sy / T::lit(4.0), (x, y)),
        (xa2 * sy / two, (a, y)),
        (bx2 * sy / two, (b, y)),
        (yc2 * sx / two, (x, c)),
        (dy2 * sx / two, (x, d)),
        (xa2 * yc2, (a, c)),
        (xa2 * dy2, (a, d)),
        (bx2 * yc2, (b, c)),
        (bx2 * dy2, (b, d)),
    ]
    .map(|(w, p)| (w * scale, p))
}

/// Nine-point bound under co-ordinated convexity of `|D|`.
pub fn t1_bound<T: Real>(surface: &Surface<T>, rect: &Rectangle<T>, point: &EvalPoint<T>) -> T {
    t1_terms(rect, point)
        .iter()
        .fold(T::zero(), |acc, &(w, (u, v))| {
            acc + w * surface.mixed_in(rect, u, v).abs()
        })
}

/// Hölder bound under co-ordinated convexity of `|D|^q`.
pub fn t2_bound<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    exps: &HolderExponents<T>,
) -> T {
    let (p, q) = (exps.p(), exps.q());
    let two = T::lit(2.0);
    let constant = (two.powf(two / q) * (p + T::one()).powf(two / p)).recip();
    let total = CornerCell::all(rect, point)
        .iter()
        .fold(T::zero(), |acc, cell| {
            let bracket = cell_samples(surface, rect, point, cell)
                .iter()
                .fold(T::zero(), |s, &m| s + m.powf(q));
            acc + cell.coefficient() * bracket.powf(q.recip())
        });
    constant * total
}

/// Power-mean bound under co-ordinated convexity of `|D|^q`, `q >= 1`.
pub fn t3_bound<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    q: T,
) -> Result<T> {
    check_power_mean_q(q)?;
    let weights = [
        T::lit(1.0 / 36.0),
        T::lit(1.0 / 18.0),
        T::lit(1.0 / 18.0),
        T::lit(1.0 / 9.0),
    ];
    let prefactor = T::lit(0.25).powf(T::one() - q.recip());
    let total = CornerCell::all(rect, point)
        .iter()
        .fold(T::zero(), |acc, cell| {
            let samples = cell_samples(surface, rect, point, cell);
            let weighted = samples
                .iter()
                .zip(weights)
                .fold(T::zero(), |s, (&m, w)| s + w * m.powf(q));
            acc + cell.coefficient() * weighted.powf(q.recip())
        });
    Ok(prefactor * total)
}

fn check_power_mean_q<T: Real>(q: T) -> Result<()> {
    if !q.is_finite() || q < T::one() {
        return Err(Error::ExponentOutOfRange(format!(
            "power-mean exponent q must satisfy q >= 1, got {q}"
        )));
    }
    Ok(())
}

/// Sampled co-ordinated convexity of `|D|` (`q = None`) or `|D|^q`.
pub fn hypothesis_status<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    q: Option<T>,
) -> HypothesisStatus {
    let q = q.filter(|&q| q != T::one());
    HypothesisStatus::from_holds(
        check_hypothesis(surface, rect, q, DEFAULT_HYPOTHESIS_GRID, None).holds,
    )
}

fn inputs<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    q: Option<T>,
) -> BoundInputs<T> {
    BoundInputs {
        surface: surface.name().to_string(),
        rect: *rect,
        point: *point,
        q,
    }
}

pub fn bound_t1<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    integ: &Integrator<T>,
) -> Result<BoundReport<T>> {
    let lhs = lemma_lhs(surface, rect, point, integ)?;
    Ok(BoundReport::new(
        Theorem::T1,
        lhs,
        t1_bound(surface, rect, point),
        hypothesis_status(surface, rect, None),
        inputs(surface, rect, point, None),
    ))
}

pub fn bound_t2<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    exps: &HolderExponents<T>,
    integ: &Integrator<T>,
) -> Result<BoundReport<T>> {
    let lhs = lemma_lhs(surface, rect, point, integ)?;
    Ok(BoundReport::new(
        Theorem::T2,
        lhs,
        t2_bound(surface, rect, point, exps),
        hypothesis_status(surface, rect, Some(exps.q())),
        inputs(surface, rect, point, Some(exps.q())),
    ))
}

pub fn bound_t3<T: Real>(
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    point: &EvalPoint<T>,
    q: T,
    integ: &Integrator<T>,
) -> Result<BoundReport<T>> {
    let bound = t3_bound(surface, rect, point, q)?;
    let lhs = lemma_lhs(surface, rect, point, integ)?;
    Ok(BoundReport::new(
        Theorem::T3,
        lhs,
        bound,
        hypothesis_status(surface, rect, Some(q)),
        inputs(surface, rect, point, Some(q)),
    ))
}

/// A corollary, evaluated by substituting its point into the general bound.
pub fn corollary<T: Real>(
    id: Theorem,
    surface: &Surface<T>,
    rect: &Rectangle<T>,
    q: Option<T>,
    integ: &Integrator<T>,
) -> Result<BoundReport<T>> {
    let Some(point) = id.substituted_point(rect) else {
        return Err(Error::ExponentOutOfRange(format!(
            "{id} is a general bound, not a corollary"
        )));
    };
    let mut report = match id.delegate() {
        Theorem::T1 => bound_t1(surface, rect, &point, integ)?,
        _ => {
            let q = q.ok_or_else(|| {
                Error::ExponentOutOfRange(format!("{id} needs an exponent q > 1"))
            })?;
            bound_t2(surface, rect, &point, &HolderExponents::from_q(q)?, integ)?
        }
    };
    report.theorem = id;
    Ok(report)
}
