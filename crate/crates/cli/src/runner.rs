use mvfunc_core::DerivMethod;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::HarnessConfig;
use crate::identities::{catalog, Ctx, Identity};
use crate::report::{IdentityResult, Witness};
use crate::HarnessError;

/// 64-bit FNV-1a.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Random stream for one identity, independent of scheduling order.
pub fn stream_rng(seed: u64, key: &str) -> ChaCha8Rng {
    let mut bytes = [0u8; 32];
    bytes[..8].copy_from_slice(&seed.to_le_bytes());
    bytes[8..16].copy_from_slice(&fnv1a(key).to_le_bytes());
    ChaCha8Rng::from_seed(bytes)
}

/// Runs every identity selected by `config.suite`, in parallel, results in catalog order.
pub fn run_suite(config: &HarnessConfig) -> Result<Vec<IdentityResult>, HarnessError> {
    let metric = config.validate()?;
    let selected: Vec<Identity> = catalog()
        .into_iter()
        .filter(|i| config.suite.includes(i.suite))
        .collect();
    Ok(selected
        .par_iter()
        .map(|identity| {
            let ctx = Ctx {
                metric: metric.clone(),
                n: config.dim,
                method: if identity.finite_difference {
                    DerivMethod::CentralDifference { step: config.fd_step }
                } else {
                    DerivMethod::Exact
                },
                fd_step: config.fd_step,
            };
            run_identity(identity, &ctx, config)
        })
        .collect())
}

fn run_identity(identity: &Identity, ctx: &Ctx, config: &HarnessConfig) -> IdentityResult {
    let tol = identity.tolerance.value(config);
    let mut rng = stream_rng(config.seed, &identity.stream);
    let mut max_dev: f64 = 0.0;
    let mut worst: Option<(f64, Witness)> = None;
    let mut error = None;
    for _ in 0..config.trials {
        match identity.run_trial(ctx, &mut rng) {
            Ok(trial) => {
                // Non-finite deviations count as failures and stay representable in JSON.
                let dev = if trial.dev.is_finite() { trial.dev } else { f64::MAX };
                max_dev = max_dev.max(dev);
                if dev > tol && worst.as_ref().is_none_or(|(d, _)| dev > *d) {
                    worst = Some((dev, trial.witness));
                }
            }
            Err(e) => {
                max_dev = f64::MAX;
                error.get_or_insert_with(|| e.to_string());
            }
        }
    }
    IdentityResult {
        id: identity.id.clone(),
        trials: config.trials,
        max_dev,
        pass: max_dev <= tol && error.is_none(),
        witness: worst.map(|(_, w)| w),
        error,
    }
}
