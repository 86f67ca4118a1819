//! Modular forms: eta quotients, Eisenstein-type divisor sums, derived
//! expressions and the named registry.

pub mod dt;
pub mod eisenstein;
pub mod eta;
pub mod expr;
pub mod identities;
pub mod registry;

pub use eisenstein::{DivisorSum, WeightFn};
pub use eta::{eta_expansion, eta_quotient_expansion, eta_quotient_value, eta_value, EtaQuotient};
pub use expr::FormExpr;
pub use identities::{identity_catalogue, identity_check, IdentityReport};
pub use registry::{FormRecipe, FormRegistry};
