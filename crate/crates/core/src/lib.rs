pub mod error;
pub mod linmap;
pub mod scalar;
pub mod tensor;

pub use error::{Error, Result};
pub use linmap::LinearMap;
pub use scalar::{EpsScalar, Ring, Scalar};
pub use tensor::SparseTensor;
