//! Checks of midpoint/endpoint style bounds on rectangles, for functions
//! that are convex along each axis.
//!
//! For `f` on `Δ = [a, b] x [c, d]` and a free point `(x, y) ∈ Δ`, the crate
//! evaluates the corner/edge functional `A + (1/area) ∫∫ f`, checks that it
//! equals the sum of four kernel-weighted integrals of the mixed partial
//! `D = ∂²f/∂u∂v`, and bounds it by point samples of `|D|` under three
//! convexity hypotheses (plain, Hölder, power mean). Read the other way,
//! the bounds are a priori error certificates for the corner/edge cubature
//! rule `-A` as an estimate of the mean of `f`.
//!
//! # Modules
//!
//! - [`domain`]: validated rectangles, points, exponents and tolerances.
//! - [`surfaces`]: functions under test and the built-in catalog.
//! - [`quadrature`]: composite Gauss–Legendre rules.
//! - [`convexity`]: sampled convexity checks.
//! - [`inequalities`]: the identity, the bounds and the Hadamard chain.
//!
//! All numerics are generic over [`Real`] (`f32` or `f64`); the aliases at
//! the crate root fix the scalar to `f64`.
//!
//! ```
//! use hadamard_coord::{catalog_lookup, bound_t1, Integrator, Rectangle};
//!
//! let product = catalog_lookup::<f64>("product").unwrap().surface;
//! let unit = Rectangle::unit();
//! let corner = unit.point(0.0, 0.0).unwrap();
//! let report = bound_t1(&product, &unit, &corner, &Integrator::default()).unwrap();
//! assert!((report.lhs - 0.25).abs() < 1e-12);
//! assert!((report.bound - 0.25).abs() < 1e-12);
//! ```

pub mod convexity;
pub mod domain;
pub mod error;
pub mod inequalities;
pub mod quadrature;
pub mod scalar;
pub mod surfaces;

pub use convexity::{
    check_coordinate_convexity, check_full_convexity, check_hypothesis, default_lambdas,
    ConvexityVerdict, Witness, DEFAULT_HYPOTHESIS_GRID,
};
pub use domain::{EvalPoint, HolderExponents, Rectangle, Tolerances};
pub use error::{Error, Result};
pub use inequalities::{
    bound_t1, bound_t2, bound_t3, chain_1_1, corner_functional_a, corollary, kernel_sum,
    kernel_term, lemma_lhs, t1_bound, t2_bound, t3_bound, verify_identity, BoundReport,
    CellWeights, ChainReport, CoefficientForm, Corner, CornerCell, HypothesisStatus,
    IdentityReport, Theorem,
};
pub use quadrature::{EdgeIntegrals, Integrator, QuadratureSpec};
pub use scalar::Real;
pub use surfaces::{
    catalog, catalog_lookup, catalog_names, mixed_partial, CatalogEntry, DeclaredFact, Surface,
    CATALOG,
};

pub type RectangleF64 = domain::Rectangle<f64>;
pub type EvalPointF64 = domain::EvalPoint<f64>;
pub type HolderExponentsF64 = domain::HolderExponents<f64>;
pub type TolerancesF64 = domain::Tolerances<f64>;
pub type SurfaceF64 = surfaces::Surface<f64>;
pub type CatalogEntryF64 = surfaces::CatalogEntry<f64>;
pub type IntegratorF64 = quadrature::Integrator<f64>;
pub type ConvexityVerdictF64 = convexity::ConvexityVerdict<f64>;
pub type BoundReportF64 = inequalities::BoundReport<f64>;
pub type IdentityReportF64 = inequalities::IdentityReport<f64>;
pub type ChainReportF64 = inequalities::ChainReport<f64>;

pub type RectangleF32 = domain::Rectangle<f32>;
pub type SurfaceF32 = surfaces::Surface<f32>;
pub type IntegratorF32 = quadrature::Integrator<f32>;
