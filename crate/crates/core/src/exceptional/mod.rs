//! Explicit exceptional sets of plane curves via monomial substitution and resultants.

pub mod curves;
pub mod normalize;
pub mod substitution;
pub mod witness;

pub use curves::{build_w, delta_lines, exact_relation, CurveKind, CurveSpec, ExceptionalSet, Locus, Provenance};
pub use normalize::{canonical_pairs, normalize_pair, NormalizedPair};
pub use substitution::{beta_loci, substitute, validate_plane_curve, BetaLoci, SubstitutionResult};
pub use witness::{witnesses, WitnessOutcome};
