//! Law-checked convolution algebras: power series from finite partial
//! semigroups into quantales.
//!
//! The crate builds finite carriers (relations, languages, traces,
//! intervals, resource monoids), lifts them into function spaces by
//! convolution, and checks the lifted laws exhaustively or by seeded
//! sampling. On top of the lifting sit predicate transformers with the
//! frame rule, two-dimensional bi-convolution, futuristic (unbounded)
//! carriers, and a Hoare-logic rule suite.

pub mod algebra;
pub mod biquantale;
pub mod error;
pub mod futuristic;
pub mod hoare;
pub mod instances;
pub mod matrix;
pub mod report;
pub mod series;
pub mod transformers;
pub mod value;

pub use algebra::{Boundedness, Carrier, CarrierBuilder, Element, PartialProduct};
pub use biquantale::{
    BiSeries, InterchangeLaw, InterchangeWitness, SplitMode, StreamModel, StreamPredicate,
};
pub use error::AlgebraError;
pub use futuristic::{
    check_futuristic_invariants, check_futuristic_laws, classify_bounded, futuristic_convolve,
    make_futuristic_intervals, make_infinite_words,
};
pub use hoare::{triple_valid, HoareSuite, Validity};
pub use instances::{BoolInstance, TropInstance, VectorInstance};
pub use matrix::MatrixSeries;
pub use transformers::{PredicateTransformer, StateTransformer, TransformerSpace};
pub use report::{CheckMode, LawReport, LawStatus};
pub use series::{PowerSeries, SuiteConfig};
pub use value::{BoolQ, LangQ, OptionQ, PowersetQ, Quantale, Trop, TropicalQ, VectorQ};
