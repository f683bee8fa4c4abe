//! Bryant frames and cmc-1 surfaces in hyperbolic 3-space.
//!
//! A holomorphic `SL(2, C)`-valued map `A(z)` with `det A = 1` and
//! `det A' = 0` produces a surface `f = A·A*` of constant mean curvature one
//! in the Hermitian model of hyperbolic space. This crate verifies such
//! frames exactly, evaluates and samples the surfaces numerically, computes
//! holonomy of the associated flat connections, analyses punctured-disk ends
//! and evaluates the parabolic-bundle arithmetic behind the existence bounds.
//!
//! | module | contents |
//! |--------|----------|
//! | [`series`] | exact Laurent polynomials over `Q(i)` and 2×2 matrices of them |
//! | [`frames`] | special/Bryant checks, branch points, example catalog |
//! | [`hyperbolic`] | Hermitian and hyperboloid models, immersion, curvature, meshes |
//! | [`connection`] | Higgs fields, parallel transport, holonomy, period problem |
//! | [`ends`] | singular connection `∇_α`, `Ω_α`, pole bounds, local parabolic data |
//! | [`parabolic`] | parabolic degree, stability, dimension counts |
//! | [`jobs`] | the command-line jobs behind the `bryantlab` binary |
//! | [`mat2`], [`roots`], [`sampling`] | numeric 2×2 matrices, polynomial roots, random test data |

pub mod connection;
pub mod ends;
pub mod frames;
pub mod hyperbolic;
pub mod jobs;
pub mod mat2;
pub mod parabolic;
pub mod roots;
pub mod sampling;
pub mod series;

pub use mat2::Mat2;
pub use num_complex::Complex64;
