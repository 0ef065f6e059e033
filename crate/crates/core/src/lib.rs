//! Exact computations around plane Cremona transformations that fix a curve
//! pointwise.
//!
//! The crate is organised bottom-up:
//!
//! - [`algebra`]: rationals, univariate polynomials, rational functions,
//!   homogeneous trivariate polynomials and 2x2 matrices over `Q(x)`.
//! - [`curve`]: plane curves given by degree and ordinary singularities.
//! - [`linsys`]: numerical linear systems, adjoints, fixed components,
//!   pencil decomposition and the successive-adjoint chain.
//! - [`cremona`]: birational maps as coprime homogeneous triples.
//! - [`jonquieres`]: the torus `T_h` of de Jonquieres maps fixing `y^2 = h(x)`.
//! - [`pencil`]: numerical conditions on rational pencils and the sextic
//!   free-intersection bound.

pub mod algebra;
pub mod cremona;
pub mod curve;
pub mod jonquieres;
pub mod linsys;
pub mod pencil;

pub use algebra::{
    is_squarefree, parse_rational, rational_to_string, tri_content_gcd, tri_divides, uni_gcd,
    AlgebraError, Mat2RF, RatFunc, Rational, TriHomPoly, UniPoly,
};
pub use cremona::{CremonaError, CremonaMap, HElement, LinearG};
pub use curve::{
    genus_of, multiplicity_at, CurveData, CurveError, PlaneCurveModel, PointSpec,
    SingularityData, ValidationReport,
};
pub use jonquieres::{JonqElement, JonqError, LemmaReport, PglOrder};
pub use linsys::{ChainReport, ChainStep, Classification, LinSys, LinSysError, RemovedComponent};
pub use pencil::{PencilError, PencilReport, PencilType};
