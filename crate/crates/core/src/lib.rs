//! Exact computations in the Brown–Thompson groups `F(n)` and the four
//! n-adic Lodha–Moore groups acting on the Cantor set `{0,…,n-1}^ω`.
//!
//! Composition convention everywhere: a product `fg` applies `f` first.
//!
//! - [`seq`]: addresses, eventually periodic points, Y-address classes
//! - [`treepair`]: `F(n)` as reduced tree-pair diagrams
//! - [`ymap`]: the recursive map `y` as an exact transducer
//! - [`word`]: letters and words over `X(n) ∪ Y(n)`, and their grammar
//! - [`calculus`]: standard forms, identity testing, relation families
//! - [`abelian`]: abelianization maps and rank certificates
//! - [`hnn`]: the nine strictly ascending HNN decompositions
//! - [`cluster`]: special words, admissible arrangements and clusters

pub mod abelian;
pub mod calculus;
pub mod cluster;
pub mod error;
pub mod hnn;
pub mod sample;
pub mod seq;
pub mod treepair;
pub mod word;
pub mod ymap;

pub use error::{Error, Result};
pub use seq::{Addr, Seq, Variant};
pub use treepair::TreePair;
pub use word::{GroupWord, Letter};
