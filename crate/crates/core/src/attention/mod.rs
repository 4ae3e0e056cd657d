//! Fixed-precision transformer forward pass.
//!
//! A string `w` is processed with an EOS token appended, positions `1..=N+1`
//! being the columns of a `d × (N+1)` stream. Every arithmetic primitive is
//! rounded into an [`FpFormat`]; sums run left to right by increasing
//! position, which fixes the otherwise order-dependent result.

mod fp;
mod head;
mod mask;
mod matrix;
mod model;

pub use fp::FpFormat;
pub use head::{attention_forward, attention_weights, multi_head, project, Head};
pub use mask::Mask;
pub use matrix::{Matrix, Num};
pub use model::{
    model_run, Classifier, Encoder, Ffn, Forward, Gate, GateExpr, Layer, LayerTrace, LnMode,
    TransformerModel, LN_EPS,
};
