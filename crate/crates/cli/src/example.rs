//! Example instance generation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;
use weiltorus::hodge::{is_positive, sample_point, KahlerCandidate};
use weiltorus::torus::generic_model;
use weiltorus::RatFunc;

use crate::instance::{generic_instance, Instance};

/// Sampling attempts before [`ExampleError::RetryCap`].
pub const RETRY_CAP: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExampleMode {
    Symbolic,
    Rational,
}

#[derive(Debug, Error)]
pub enum ExampleError {
    #[error("no valid point in {RETRY_CAP} samples")]
    RetryCap,
}

/// Symbolic mode ignores the seed. Rational mode samples the generic chart
/// at Gaussian-integer points until the model validates and `ω₀` is
/// positive.
pub fn gen_example(seed: u64, mode: ExampleMode) -> Result<Instance, ExampleError> {
    match mode {
        ExampleMode::Symbolic => Ok(generic_instance()),
        ExampleMode::Rational => {
            let generic = generic_model();
            let omega = KahlerCandidate::<RatFunc>::standard();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RETRY_CAP {
                let point = sample_point(&mut rng, 8);
                let Ok(model) = generic.specialize(&point) else {
                    continue;
                };
                if !model.validate().passed()
                    || !is_positive(&generic, &omega, &point).unwrap_or(false)
                {
                    continue;
                }
                let coords: Vec<String> = point.0.iter().map(|x| x.to_string()).collect();
                let description = format!(
                    "generic chart at (t1..t8) = ({}), seed {seed}",
                    coords.join(", ")
                );
                return Ok(Instance::from_model(&model, &description));
            }
            Err(ExampleError::RetryCap)
        }
    }
}
