//! Super modular tensor categories with fermionic symmetry actions.
//!
//! The crate stores skeletal, multiplicity-free category data (fusion rules,
//! F-symbols and R-symbols), verifies the coherence and symmetry consistency
//! equations, and evaluates closed-form anomaly indicators for fermionic
//! topological orders with time-reversal and Lie-group symmetries.
//!
//! ```
//! use smtc::{catalog, indicators};
//!
//! let (cat, action) = catalog::so33_z4();
//! let result = indicators::indicator_epin(&cat, &action, 1e-9).unwrap();
//! assert_eq!(result.nu, Some(indicators::Nu::Class(3)));
//! ```

pub mod abelian;
pub mod algebra;
pub mod axioms;
pub mod catalog;
pub mod category;
pub mod extension;
pub mod indicators;
pub mod linalg;
pub mod report;
pub mod symmetry;

pub use category::{Category, FusionRules, LoadError};
pub use num_complex::Complex64 as C64;
pub use report::Report;
pub use symmetry::{FermionicSymmetry, SymmetryAction};

/// Default absolute tolerance for comparing complex symbols.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `e^{iθ}`.
pub fn cis(theta: f64) -> C64 {
    C64::from_polar(1.0, theta)
}

/// Complex conjugation applied when `antiunitary` is set.
pub fn conj_if(z: C64, antiunitary: bool) -> C64 {
    if antiunitary {
        z.conj()
    } else {
        z
    }
}
