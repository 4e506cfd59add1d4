//! The corner/edge identity, its three derivative bounds, the corner and
//! midpoint specialisations, and the Hadamard chain for co-ordinated convex
//! functions.
//!
//! Notation used throughout: `Δ = [a, b] x [c, d]`, free point `(x, y) ∈ Δ`,
//! `D = ∂²f/∂u∂v`, `Sx = (x-a)² + (b-x)²`, `Sy = (y-c)² + (d-y)²`.

use std::fmt;
use std::str::FromStr;

use crate::domain::{EvalPoint, Rectangle};
use crate::scalar::Real;

mod bounds;
mod chain;
mod lemma;

pub use bounds::{
    bound_t1, bound_t2, bound_t3, corollary, hypothesis_status, t1_bound, t1_terms, t2_bound,
    t3_bound,
};
pub use chain::{chain_1_1, ChainReport, CHAIN_LEVELS};
pub use lemma::{
    corner_functional_a, corner_functional_from, kernel_sum, kernel_term, lemma_lhs,
    lemma_lhs_from, verify_identity, IdentityReport, RectIntegrals,
};

/// Which corner of `Δ` anchors a kernel cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    /// `(a, c)`
    AC,
    /// `(a, d)`
    AD,
    /// `(b, c)`
    BC,
    /// `(b, d)`
    BD,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::AC, Corner::AD, Corner::BC, Corner::BD];

    pub fn anchor<T: Real>(self, rect: &Rectangle<T>) -> (T, T) {
        match self {
            Corner::AC => (rect.a(), rect.c()),
            Corner::AD => (rect.a(), rect.d()),
            Corner::BC => (rect.b(), rect.c()),
            Corner::BD => (rect.b(), rect.d()),
        }
    }

    /// Sign of the kernel relative to `(1-t)(1-s)`.
    fn kernel_sign<T: Real>(self) -> T {
        match self {
            Corner::AC | Corner::BD => T::one(),
            Corner::AD | Corner::BC => -T::one(),
        }
    }
}

/// How the prefactor of each kernel cell is formed.
///
/// `Squared` is the correct identity. `FirstPowerRight` keeps squared
/// prefactors on the `a`-anchored cells but uses `(b-x)|y-η|/area` on the
/// `b`-anchored ones; it does not satisfy the identity and exists only as a
/// regression foil.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientForm {
    #[default]
    Squared,
    FirstPowerRight,
}

/// One of the four kernel integrals pulled back to `[0, 1]²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerCell<T> {
    pub corner: Corner,
    anchor: (T, T),
    point: (T, T),
    sign: T,
    coefficient: T,
}

impl<T: Real> CornerCell<T> {
    pub fn new(corner: Corner, rect: &Rectangle<T>, point: &EvalPoint<T>) -> Self {
        Self::with_form(corner, rect, point, CoefficientForm::Squared)
    }

    pub fn with_form(
        corner: Corner,
        rect: &Rectangle<T>,
        point: &EvalPoint<T>,
        form: CoefficientForm,
    ) -> Self {
        let anchor = corner.anchor(rect);
        let dx = (point.x() - anchor.0).abs();
        let dy = (point.y() - anchor.1).abs();
        let first_power =
            form == CoefficientForm::FirstPowerRight && matches!(corner, Corner::BC | Corner::BD);
        let coefficient = if first_power {
            dx * dy / rect.area()
        } else {
            dx * dx * dy * dy / rect.area()
        };
        Self {
            corner,
            anchor,
            point: (point.x(), point.y()),
            sign: corner.kernel_sign(),
            coefficient,
        }
    }

    pub fn all(rect: &Rectangle<T>, point: &EvalPoint<T>) -> [Self; 4] {
        Corner::ALL.map(|c| Self::new(c, rect, point))
    }

    pub fn anchor(&self) -> (T, T) {
        self.anchor
    }

    pub fn coefficient(&self) -> T {
        self.coefficient
    }

    /// `(t, s) -> (t x + (1-t) ξ, s y + (1-s) η)`
    #[inline]
    pub fn transform(&self, t: T, s: T) -> (T, T) {
        let (xi, eta) = self.anchor;
        (
            t * self.point.0 + (T::one() - t) * xi,
            s * self.point.1 + (T::one() - s) * eta,
        )
    }

    /// Signed kernel: `(t-1)(s-1)`, `(t-1)(1-s)`, `(1-t)(s-1)` or `(1-t)(1-s)`.
    #[inline]
    pub fn kernel(&self, t: T, s: T) -> T {
        self.sign * (T::one() - t) * (T::one() - s)
    }
}

/// The prefactors `K, L, M, N` of the `(a,c)`, `(a,d)`, `(b,c)`, `(b,d)` cells.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellWeights<T> {
    pub k: T,
    pub l: T,
    pub m: T,
    pub n: T,
}

impl<T: Real> CellWeights<T> {
    pub fn new(rect: &Rectangle<T>, point: &EvalPoint<T>) -> Self {
        let [k, l, m, n] = CornerCell::all(rect, point).map(|c| c.coefficient);
        Self { k, l, m, n }
    }

    pub fn sum(&self) -> T {
        self.k + self.l + self.m + self.n
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.k, self.l, self.m, self.n]
    }
}

/// Which inequality a report instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Theorem {
    /// Bound from co-ordinated convexity of `|D|`.
    T1,
    /// Hölder bound from co-ordinated convexity of `|D|^q`, `q > 1`.
    T2,
    /// Power-mean bound from co-ordinated convexity of `|D|^q`, `q >= 1`.
    T3,
    C1Part1,
    C1Part2,
    C1Part3,
    C2Part1,
    C2Part2,
    C2Part3,
    C2Part4,
    C2Part5,
}

impl Theorem {
    pub const ALL: [Theorem; 11] = [
        Theorem::T1,
        Theorem::T2,
        Theorem::T3,
        Theorem::C1Part1,
        Theorem::C1Part2,
        Theorem::C1Part3,
        Theorem::C2Part1,
        Theorem::C2Part2,
        Theorem::C2Part3,
        Theorem::C2Part4,
        Theorem::C2Part5,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::C1Part1 => "C1-1",
            Theorem::C1Part2 => "C1-2",
            Theorem::C1Part3 => "C1-3",
            Theorem::C2Part1 => "C2-1",
            Theorem::C2Part2 => "C2-2",
            Theorem::C2Part3 => "C2-3",
            Theorem::C2Part4 => "C2-4",
            Theorem::C2Part5 => "C2-5",
        }
    }

    pub fn is_corollary(self) -> bool {
        !matches!(self, Theorem::T1 | Theorem::T2 | Theorem::T3)
    }

    /// The general bound a corollary substitutes into.
    pub fn delegate(self) -> Theorem {
        match self {
            Theorem::C1Part1 | Theorem::C1Part2 | Theorem::C1Part3 => Theorem::T1,
            Theorem::C2Part1
            | Theorem::C2Part2
            | Theorem::C2Part3
            | Theorem::C2Part4
            | Theorem::C2Part5 => Theorem::T2,
            t => t,
        }
    }

    /// Whether the bound takes an exponent `q`.
    pub fn needs_q(self) -> bool {
        matches!(self.delegate(), Theorem::T2 | Theorem::T3)
    }

    /// The point a corollary fixes, `None` for the general theorems.
    pub fn substituted_point<T: Real>(self, rect: &Rectangle<T>) -> Option<EvalPoint<T>> {
        let at = |x: T, y: T| rect.point(x, y).expect("corner lies in its rectangle");
        match self {
            Theorem::C1Part1 | Theorem::C2Part1 => Some(at(rect.a(), rect.c())),
            Theorem::C1Part2 | Theorem::C2Part2 => Some(at(rect.b(), rect.d())),
            Theorem::C2Part3 => Some(at(rect.a(), rect.d())),
            Theorem::C2Part4 => Some(at(rect.b(), rect.c())),
            Theorem::C1Part3 | Theorem::C2Part5 => Some(rect.midpoint()),
            Theorem::T1 | Theorem::T2 | Theorem::T3 => None,
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Theorem {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = s.trim().to_ascii_uppercase().replace(['_', '.'], "-");
        Theorem::ALL
            .into_iter()
            .find(|t| t.label() == norm)
            .ok_or_else(|| {
                let valid: Vec<_> = Theorem::ALL.iter().map(|t| t.label()).collect();
                format!("unknown theorem `{s}`; valid: {}", valid.join(", "))
            })
    }
}

/// Outcome of the sampled hypothesis check attached to a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HypothesisStatus {
    Holds,
    NotVerified,
}

impl HypothesisStatus {
    pub fn from_holds(holds: bool) -> Self {
        if holds {
            HypothesisStatus::Holds
        } else {
            HypothesisStatus::NotVerified
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HypothesisStatus::Holds => "holds",
            HypothesisStatus::NotVerified => "not-verified",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundInputs<T> {
    pub surface: String,
    pub rect: Rectangle<T>,
    pub point: EvalPoint<T>,
    pub q: Option<T>,
}

/// One evaluated instance of a bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport<T> {
    pub theorem: Theorem,
    /// `|A + mean double integral|`
    pub lhs: T,
    pub bound: T,
    pub slack: T,
    /// `lhs / bound`, or 0 when the bound is 0.
    pub tightness: T,
    pub hypothesis: HypothesisStatus,
    pub inputs: BoundInputs<T>,
}

impl<T: Real> BoundReport<T> {
    pub fn new(
        theorem: Theorem,
        lhs: T,
        bound: T,
        hypothesis: HypothesisStatus,
        inputs: BoundInputs<T>,
    ) -> Self {
        let lhs = lhs.abs();
        let tightness = if bound == T::zero() {
            T::zero()
        } else {
            lhs / bound
        };
        Self {
            theorem,
            lhs,
            bound,
            slack: bound - lhs,
            tightness,
            hypothesis,
            inputs,
        }
    }

    /// `lhs <= bound + abs_tol`.
    pub fn within(&self, abs_tol: T) -> bool {
        self.lhs <= self.bound + abs_tol
    }
}
