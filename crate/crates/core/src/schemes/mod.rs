//! Algebras of a schematizable type and the schemes built from them.

pub mod algebra;
pub mod scheme;
pub mod sheaf;
pub mod types;

pub use algebra::{Algebra, AlgebraKind, FinMonoid, FinRing};
pub use scheme::{
    adjunction_check, adjunction_check_scheme, eta, morphisms_over, patching_check, spec_morphism,
    spec_scheme, tau_scheme, AScheme, AdjunctionReport, PatchReport, SchemeCheck, SchemeMorphism,
    SpecScheme,
};
pub use sheaf::{sheaf_check, sheafify, Presheaf, SheafCheck, Sheafified};
pub use types::{alpha1, alpha1_map, gamma_check, Alpha1, GammaCheck, SchematizableType};
