//! Exact computations with finite F_q-shtukas, local shtukas over Artinian
//! local F_q-algebras, their Drinfeld group schemes and the towers of
//! truncations that form local Anderson modules.
//!
//! ```
//! use shtuka_core::anderson::build_tower;
//! use shtuka_core::doc::expr::parse_series;
//! use shtuka_core::shtuka::LocalShtuka;
//! use shtuka_core::zseries::ZMatrix;
//! use shtuka_core::{FdAlgebra, FqField};
//!
//! # fn main() -> shtuka_core::Result<()> {
//! let alg = FdAlgebra::base_field(&FqField::new(2)?)?;
//! let m = ZMatrix::from_rows(vec![vec![parse_series(&alg, "z", 12)?]]);
//! let sh = LocalShtuka::new(&alg, m, 0)?;
//! let tower = build_tower(&sh, 3, 4)?;
//! assert_eq!(tower.orders, vec![2, 4, 8]);
//! # Ok(())
//! # }
//! ```

pub mod algebra;
pub mod anderson;
pub mod amatrix;
pub mod doc;
pub mod drinfeld;
pub mod error;
pub mod fq;
pub mod hopf;
pub mod modules;
pub mod random;
pub mod rewrite;
pub mod shtuka;
pub mod suite;
pub mod zseries;

pub use algebra::{AlgElem, AlgebraHom, FdAlgebra};
pub use amatrix::AMatrix;
pub use error::{Error, Result};
pub use fq::FqField;
