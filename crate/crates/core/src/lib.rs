//! Exact constructions and checks for finite metric spaces: Hamming-cube and
//! l1 embeddings, Euclideanness (conditional negative definiteness) tests,
//! entropy-cone feasibility proofs with exact certificates, and scale
//! embeddings into binary strings whose distances are estimated by a
//! built-in compressor.

pub mod cube;
pub mod codec;
pub mod entropic;
pub mod euclid;
pub mod l1embed;
pub mod lp;
pub mod metric;
pub mod num;
pub mod scale;
pub mod suite;
