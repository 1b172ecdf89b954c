//! Degenerate principal series of conformal groups of non-unital symmetric
//! R-spaces: structure constants, K-type lattice, spherical expansion
//! coefficients, composition series, unitarity and Gelfand-Kirillov dimension.
//!
//! Numeric kernels are generic over [`Scalar`]; structural results are exact
//! over [`Rational`].

pub mod coeffs;
pub mod error;
pub mod gk;
pub mod identity;
pub mod ktype;
pub mod root_data;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod unitarity;
pub mod verify;

pub use coeffs::{c_zero_locus, coeff_a, coeff_b, coeff_c_closed, coeff_c_direct, coeff_triple, CoeffTriple, ZeroLocus};
pub use error::{Error, Result};
pub use gk::{associated_variety_verdict, AssociatedVariety, degree_count, gk_dimension, minimal_orbit_dim, RepKind, Verdict};
pub use identity::{d_bruteforce, d_closed, lagrange_vanishing, IdentityInstance};
pub use ktype::{enumerate_box, pi, KType, LatticeBox};
pub use root_data::{make_case, rho, CaseSpec, Family};
pub use scalar::{Rational, Scalar};
pub use series::{
    build_graph, composition_series_closed, composition_series_graph, reducibility, reducibility_points, CompositionSeries,
    ReducibilityReport, SpectralParam, TransitionGraph,
};
pub use unitarity::{
    spectrum_by_recurrence, spectrum_closed_form, unitarity_obstruction, unitary_constituents, GammaRatio,
    IntertwinerSpectrum, ObstructionReport, UnitaryVerdict,
};
pub use verify::{run_verification, VerifyReport};

/// Coefficients over exact rationals.
pub type CoeffTripleQ = CoeffTriple<Rational>;
/// Coefficients in double precision.
pub type CoeffTripleF64 = CoeffTriple<f64>;
/// Identity instance over exact rationals.
pub type IdentityInstanceQ = IdentityInstance<Rational>;
/// Identity instance in double precision.
pub type IdentityInstanceF64 = IdentityInstance<f64>;
