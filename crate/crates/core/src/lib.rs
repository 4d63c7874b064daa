pub mod numkit;
pub mod partitions;
pub mod scalar;
pub mod tensor;
pub mod ket;
pub mod catalog;
pub mod phi;
pub mod config;
pub mod diagnostics;
pub mod classifier;
pub mod fuzz;

pub use classifier::{classify, classify_with, compare, genuine_entanglement, Classification, ClassifyError, Confidence};
pub use config::RunConfig;
pub use partitions::{JordanLabel, Partition, SpectrumSignature};
pub use tensor::{QubitSplit, StateVector};
