//! Validated value types: the rectangle, the free point, Hölder exponents and
//! comparison tolerances.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// The closed rectangle `[a, b] x [c, d]` with `a < b` and `c < d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rectangle<T> {
    a: T,
    b: T,
    c: T,
    d: T,
}

impl<T: Real> Rectangle<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite() && d.is_finite()) {
            return Err(Error::NonFinite(format!(
                "rectangle bounds ({a}, {b}, {c}, {d})"
            )));
        }
        if a >= b || c >= d {
            return Err(Error::DegenerateDomain {
                a: a.to_f64_lossy(),
                b: b.to_f64_lossy(),
                c: c.to_f64_lossy(),
                d: d.to_f64_lossy(),
            });
        }
        Ok(Self { a, b, c, d })
    }

    pub fn unit() -> Self {
        Self {
            a: T::zero(),
            b: T::one(),
            c: T::zero(),
            d: T::one(),
        }
    }

    #[inline]
    pub fn a(&self) -> T {
        self.a
    }
    #[inline]
    pub fn b(&self) -> T {
        self.b
    }
    #[inline]
    pub fn c(&self) -> T {
        self.c
    }
    #[inline]
    pub fn d(&self) -> T {
        self.d
    }

    #[inline]
    pub fn width(&self) -> T {
        self.b - self.a
    }

    #[inline]
    pub fn height(&self) -> T {
        self.d - self.c
    }

    #[inline]
    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn midpoint(&self) -> EvalPoint<T> {
        let two = T::lit(2.0);
        EvalPoint {
            x: (self.a + self.b) / two,
            y: (self.c + self.d) / two,
        }
    }

    pub fn contains(&self, x: T, y: T) -> bool {
        self.a <= x && x <= self.b && self.c <= y && y <= self.d
    }

    pub fn point(&self, x: T, y: T) -> Result<EvalPoint<T>> {
        EvalPoint::new(self, x, y)
    }

    /// `g` points per axis strictly inside the rectangle, evenly spaced:
    /// `a + (i + 1)(b - a)/(g + 1)`. A single point is the centroid.
    pub fn interior_grid(&self, g: usize) -> Vec<EvalPoint<T>> {
        let xs = interior_nodes(self.a, self.b, g);
        let ys = interior_nodes(self.c, self.d, g);
        let mut out = Vec::with_capacity(g * g);
        for &x in &xs {
            for &y in &ys {
                out.push(EvalPoint { x, y });
            }
        }
        out
    }

    /// Sub-rectangle shrunk by `inset` on every side, if anything remains.
    pub fn shrink(&self, inset: T) -> Result<Self> {
        Self::new(
            self.a + inset,
            self.b - inset,
            self.c + inset,
            self.d - inset,
        )
    }

    pub fn to_f64(&self) -> [f64; 4] {
        [
            self.a.to_f64_lossy(),
            self.b.to_f64_lossy(),
            self.c.to_f64_lossy(),
            self.d.to_f64_lossy(),
        ]
    }
}

impl<T: Real> fmt::Display for Rectangle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] x [{}, {}]", self.a, self.b, self.c, self.d)
    }
}

fn interior_nodes<T: Real>(lo: T, hi: T, g: usize) -> Vec<T> {
    let step = (hi - lo) / T::from_usize_lossy(g + 1);
    (1..=g)
        .map(|i| lo + step * T::from_usize_lossy(i))
        .collect()
}

/// Evenly spaced nodes including both endpoints; a single node is the midpoint.
pub(crate) fn closed_nodes<T: Real>(lo: T, hi: T, g: usize) -> Vec<T> {
    match g {
        0 => Vec::new(),
        1 => vec![(lo + hi) / T::lit(2.0)],
        _ => {
            let step = (hi - lo) / T::from_usize_lossy(g - 1);
            (0..g)
                .map(|i| {
                    if i == g - 1 {
                        hi
                    } else {
                        lo + step * T::from_usize_lossy(i)
                    }
                })
                .collect()
        }
    }
}

/// A point `(x, y)` of a rectangle. Boundary points are allowed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint<T> {
    x: T,
    y: T,
}

impl<T: Real> EvalPoint<T> {
    pub fn new(rect: &Rectangle<T>, x: T, y: T) -> Result<Self> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::NonFinite(format!("point ({x}, {y})")));
        }
        if !rect.contains(x, y) {
            let [a, b, c, d] = rect.to_f64();
            return Err(Error::PointOutsideDomain {
                x: x.to_f64_lossy(),
                y: y.to_f64_lossy(),
                a,
                b,
                c,
                d,
            });
        }
        Ok(Self { x, y })
    }

    #[inline]
    pub fn x(&self) -> T {
        self.x
    }

    #[inline]
    pub fn y(&self) -> T {
        self.y
    }
}

/// Conjugate exponents with `1/p + 1/q = 1`, both greater than one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolderExponents<T> {
    p: T,
    q: T,
}

impl<T: Real> HolderExponents<T> {
    pub fn from_q(q: T) -> Result<Self> {
        if !q.is_finite() || q <= T::one() {
            return Err(Error::ExponentOutOfRange(format!(
                "Hölder exponent q must satisfy q > 1, got {q}"
            )));
        }
        Self::new(q / (q - T::one()), q)
    }

    pub fn new(p: T, q: T) -> Result<Self> {
        if !(p.is_finite() && q.is_finite()) || p <= T::one() || q <= T::one() {
            return Err(Error::ExponentOutOfRange(format!(
                "Hölder exponents must both exceed 1, got p = {p}, q = {q}"
            )));
        }
        let defect = (p.recip() + q.recip() - T::one()).abs();
        if defect > T::tol_floor(1e-12) {
            return Err(Error::ExponentOutOfRange(format!(
                "p = {p} and q = {q} are not conjugate (1/p + 1/q - 1 = {defect})"
            )));
        }
        Ok(Self { p, q })
    }

    #[inline]
    pub fn p(&self) -> T {
        self.p
    }

    #[inline]
    pub fn q(&self) -> T {
        self.q
    }
}

/// Mixed absolute/relative comparison: `|u - v| <= abs_tol + rel_tol * max(|u|, |v|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    abs_tol: T,
    rel_tol: T,
}

impl<T: Real> Tolerances<T> {
    pub fn new(abs_tol: T, rel_tol: T) -> Result<Self> {
        if !(abs_tol.is_finite() && rel_tol.is_finite())
            || abs_tol <= T::zero()
            || rel_tol <= T::zero()
        {
            return Err(Error::InvalidTolerance(format!(
                "abs_tol and rel_tol must be positive and finite, got {abs_tol} and {rel_tol}"
            )));
        }
        Ok(Self { abs_tol, rel_tol })
    }

    #[inline]
    pub fn abs_tol(&self) -> T {
        self.abs_tol
    }

    #[inline]
    pub fn rel_tol(&self) -> T {
        self.rel_tol
    }

    /// Allowed deviation between `u` and `v`.
    #[inline]
    pub fn allowance(&self, u: T, v: T) -> T {
        self.abs_tol + self.rel_tol * u.abs().max(v.abs())
    }

    #[inline]
    pub fn close(&self, u: T, v: T) -> bool {
        (u - v).abs() <= self.allowance(u, v)
    }

    /// `u <= v` up to the tolerance.
    #[inline]
    pub fn le(&self, u: T, v: T) -> bool {
        u <= v + self.allowance(u, v)
    }
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            abs_tol: T::lit(1e-9),
            rel_tol: T::lit(1e-9),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn unit_square() {
        let r = Rectangle::new(0.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(r.area(), 1.0);
        assert_eq!(r, Rectangle::unit());
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            Rectangle::new(0.0, 1.0, 1.0, 1.0),
            Err(Error::DegenerateDomain { .. })
        ));
        assert!(matches!(
            Rectangle::new(2.0, 1.0, 0.0, 1.0),
            Err(Error::DegenerateDomain { .. })
        ));
        assert!(matches!(
            Rectangle::new(0.0, f64::NAN, 0.0, 1.0),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn shifted_area() {
        let r = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
        assert_eq!(r.area(), 9.0);
    }

    #[test]
    fn points() {
        let r = Rectangle::<f64>::unit();
        let mid = r.point(0.5, 0.5).unwrap();
        assert_eq!(mid, r.midpoint());
        let corner = r.point(0.0, 0.0).unwrap();
        assert_eq!((corner.x(), corner.y()), (r.a(), r.c()));
        assert!(matches!(
            r.point(1.5, 0.5),
            Err(Error::PointOutsideDomain { .. })
        ));
    }

    #[test]
    fn holder_pairs() {
        let h = HolderExponents::from_q(2.0).unwrap();
        assert_eq!(h.p(), 2.0);
        let h = HolderExponents::from_q(3.0).unwrap();
        assert!((h.p() - 1.5_f64).abs() < 1e-15);
        assert!(matches!(
            HolderExponents::from_q(1.0),
            Err(Error::ExponentOutOfRange(_))
        ));
        assert!(HolderExponents::new(2.0, 3.0).is_err());
    }

    #[test]
    fn interior_grid_is_inside() {
        let r = Rectangle::new(-1.0, 2.0, 0.0, 3.0).unwrap();
        let g = r.interior_grid(5);
        assert_eq!(g.len(), 25);
        assert_eq!(g[0].x(), -0.5);
        assert_eq!(g[24].y(), 2.5);
        assert_eq!(r.interior_grid(1), vec![r.midpoint()]);
    }

    #[test]
    fn tolerance_rule() {
        let t = Tolerances::<f64>::default();
        assert!(t.close(1.0, 1.0 + 1e-10));
        assert!(!t.close(1.0, 1.0 + 1e-8));
        assert!(t.le(1.0, 0.9999999999));
        assert!(Tolerances::new(0.0, 1e-9).is_err());
    }

    proptest! {
        #[test]
        fn conjugate_from_q(q in 1.0001f64..=64.0) {
            let h = HolderExponents::from_q(q).unwrap();
            prop_assert!((h.p() * (q - 1.0) - q).abs() <= 1e-12 * q.max(1.0));
            prop_assert!(HolderExponents::new(h.p(), h.q()).is_ok());
        }

        #[test]
        fn accepted_values_revalidate(
            a in -10.0f64..10.0, w in 1e-3f64..10.0,
            c in -10.0f64..10.0, h in 1e-3f64..10.0,
            sx in 0.0f64..=1.0, sy in 0.0f64..=1.0,
        ) {
            let r = Rectangle::new(a, a + w, c, c + h).unwrap();
            let again = Rectangle::new(r.a(), r.b(), r.c(), r.d()).unwrap();
            prop_assert_eq!(r, again);
            prop_assert!(r.area() > 0.0);
            let x = r.a() + sx * r.width();
            let y = r.c() + sy * r.height();
            let x = x.min(r.b());
            let y = y.min(r.d());
            let p = r.point(x, y).unwrap();
            prop_assert!(EvalPoint::new(&r, p.x(), p.y()).is_ok());
        }
    }
}
