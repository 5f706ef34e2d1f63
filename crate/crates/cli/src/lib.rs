//! Instance files, example generation and the certificate pipeline behind
//! the `weiltorus` binary.

pub mod example;
pub mod instance;
pub mod pipeline;
