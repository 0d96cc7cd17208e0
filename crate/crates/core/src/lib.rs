//! Exact computation of the orbifold K-theory ring of a weighted projective
//! space `P(b_0, ..., b_n)`, presented over `Z[u, u^-1]`.
//!
//! - [`laurent`]: integer Laurent polynomials, parsing, monic division.
//! - [`sectors`]: stabilizer sectors, logweights, obstruction exponents,
//!   structure coefficients and Kirwan-kernel generators.
//! - [`ring`]: sector quotient rings, normal forms, the twisted product,
//!   the presentation, torsion and ring-axiom checks.
//! - [`cli`]: text, JSON and LaTeX renderings behind the `korb` binary.

pub mod cli;
pub mod laurent;
pub mod ring;
pub mod sectors;

pub use laurent::{divmod_monic, parse_laurent, LaurentError, LaurentPoly, MonicPoly, Normalization};
pub use ring::{
    build_sector_rings, torsion_report, total_rank, verify, KOrbElement, KOrbRing, KernelRelation,
    KorbError, Presentation, ProductRelation, SectorRing, TorsionReport, VerifyReport,
};
pub use sectors::{build_wps, WeightError, WeightVector, WpsData};
