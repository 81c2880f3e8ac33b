//! Exact, desk-scale toolkit for string-attractor-based repetitiveness
//! analysis of classic infinite words.
//!
//! The crate generates prefixes of word families (morphic fixed points,
//! characteristic Sturmian words, Toeplitz words, the Holub word, the
//! powers-of-two characteristic sequence, de Bruijn words), computes exact
//! attractor measures (smallest attractor size gamma*, span, leftmost
//! value) alongside classical ones (factor complexity, appearance,
//! recurrence estimate, LZ phrase count), and runs verification suites
//! that mechanically check the underlying theorems on concrete prefixes.
//!
//! All operations are pure functions of immutable inputs and safe to call
//! concurrently.

pub mod attractor;
pub mod complexity;
pub mod config;
mod cover;
pub mod error;
pub mod generators;
pub mod genspec;
pub mod index;
pub mod lz;
pub mod morphism;
pub mod oracle;
pub mod profile;
pub mod sampling;
pub mod sequences;
pub mod theorems;
pub mod word;

pub use attractor::{
    attractor_report, gamma_star, gamma_star_size, is_attractor, is_interval_attractor, lm, span,
    Analysis, AttractorReport, PositionSet,
};
pub use complexity::{
    appearance, factor_complexity, growth_classify, recurrence_estimate, GrowthClass,
};
pub use config::Config;
pub use error::{Error, Result};
pub use genspec::GeneratorSpec;
pub use index::FactorIndex;
pub use lz::{lz_parse, lz_upper_bound, LzParse};
pub use morphism::{iterate_morphism, morphic_prefix, Morphism};
pub use profile::{profile, MeasureSet, ProfileRow, ProfileTable, SampleGrid};
pub use sequences::{DirectiveSequence, IntSequence};
pub use word::{Alphabet, Word};
