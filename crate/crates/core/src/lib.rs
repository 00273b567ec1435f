//! Coherent configurations and their adjacency algebras.
//!
//! A [`Configuration`] is built from a color matrix, certified regular, and
//! carries its intersection tensor. From there the crate computes the
//! discriminant of the standard trace form, the Wedderburn data of the complex
//! algebra, the Frame number, and the Jacobson radical over prime fields.
//!
//! ```
//! use cellular::{decompose, frame_number, generators::rank2, Configuration};
//!
//! let k3 = Configuration::new(rank2(3).unwrap()).unwrap();
//! let wd = decompose(&k3, 0, cellular::wedderburn::DEFAULT_TOLERANCE).unwrap();
//! assert_eq!(wd.pairs(), vec![(1, 1), (1, 2)]);
//! assert_eq!(frame_number(&k3, &wd).unwrap().frame, 9.into());
//! assert!(!cellular::radical::is_semisimple(&k3, 3).unwrap());
//! ```

#![allow(clippy::needless_range_loop)]

pub mod corpus;
pub mod discriminant;
pub mod generators;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod radical;
pub mod scheme;
pub mod wedderburn;

pub use corpus::{Corpus, CorpusEntry, SchemeSpec, SpecError};
pub use discriminant::{discriminant_standard, gram_standard, Discriminant};
pub use harness::{verify_corpus, verify_scheme, Summary, VerificationReport, VerifyOptions};
pub use radical::{radical_chain, radical_oracle, ModularAlgebra, RadicalError, RadicalResult};
pub use scheme::{Configuration, IntersectionTensor, Scheme, SchemeError};
pub use wedderburn::{decompose, frame_number, FrameNumber, WedderburnData};
