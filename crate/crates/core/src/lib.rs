//! Exact computation with semifree noncommutative DGAs over ℤ, ℚ and ℤ/n.

pub mod certify;
pub mod coeff;
pub mod dga;
pub mod error;
pub mod format;
pub mod ideal;
pub mod reduce;
pub mod syntax;
pub mod tame;
pub mod tensor;

pub use certify::{
    certify_trivial_algebra, certify_trivial_group, verify_certificate, AlgebraCertificate, Certificate,
    TrivialityCertificate, VerificationReport,
};
pub use coeff::{Coefficient, RingSpec};
pub use dga::{Augmentation, SemifreeDga, ValidationReport, LEIBNIZ_CONVENTION};
pub use error::Error;
pub use ideal::{
    acyclicity_witness, member_with_cofactors, verify_cofactors, CofactorRep, MembershipEngine, SearchBound, SearchLimits,
    Triple,
};
pub use reduce::{algebra_to_dgas, canonical_augmentations, group_to_dgas, AlgebraPresentation, GroupPresentation};
pub use syntax::{parse_poly, parse_presentation, ParseError, Presentation};
pub use tame::{verify_dga_map, verify_stable_tame, ElementaryAuto, MapReport, StableTameCertificate, TameIso};
pub use tensor::{Generator, Homogeneity, NcPoly, Signature, Word};
