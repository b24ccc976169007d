//! Reference decompositions by Weyl-group folding, independent of the
//! closed-form rules.
//!
//! Tensor products use the Racah-Speiser algorithm over a weight system;
//! level-k fusion folds the tensor product coefficients by the affine Weyl
//! group at shifted level `k + h`, where `h` is the dual Coxeter number.
//! Only the adjoint weight system (roots plus `r` zero weights) is built here.

use std::collections::BTreeMap;

use crate::adjoint_rules::FusionDecomposition;
use crate::algebra::RootSystem;
use crate::error::{Error, Result};
use crate::weights::{AffineWeight, Weight};

/// A folded weight with the sign of the Weyl element that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedWeight {
    pub weight: Weight,
    pub sign: i8,
    pub multiplicity: u64,
}

fn fold_bound(rs: &RootSystem) -> usize {
    10 * rs.positive_roots().len()
}

fn most_negative(x: &Weight) -> Option<usize> {
    x.labels()
        .iter()
        .enumerate()
        .filter(|(_, &l)| l < 0)
        .min_by_key(|(_, &l)| l)
        .map(|(i, _)| i)
}

/// Folds a rho-shifted point into the dominant chamber. `None` when the
/// point lies on a wall (some label becomes zero).
pub fn finite_fold(rs: &RootSystem, x: &Weight) -> Result<Option<SignedWeight>> {
    let mut x = x.clone();
    let mut sign = 1i8;
    for _ in 0..=fold_bound(rs) {
        if x.labels().contains(&0) {
            return Ok(None);
        }
        match most_negative(&x) {
            Some(i) => {
                x = rs.reflect(i, &x);
                sign = -sign;
            }
            None => {
                return Ok(Some(SignedWeight {
                    weight: x,
                    sign,
                    multiplicity: 1,
                }))
            }
        }
    }
    Err(Error::FoldDiverged(fold_bound(rs)))
}

/// Folds a rho-shifted point into the fundamental alcove at shifted level
/// `shifted_level`. The affine wall reflection is
/// `x -> x - ((x, theta) - shifted_level) theta`.
pub fn affine_fold(
    rs: &RootSystem,
    x: &Weight,
    shifted_level: i64,
) -> Result<Option<SignedWeight>> {
    let theta = rs.highest_root().labels().to_vec();
    let mut x = x.clone();
    let mut sign = 1i8;
    for _ in 0..=fold_bound(rs) {
        if x.labels().contains(&0) {
            return Ok(None);
        }
        let pairing = rs.theta_pairing(&x);
        if pairing == shifted_level {
            return Ok(None);
        }
        if let Some(i) = most_negative(&x) {
            x = rs.reflect(i, &x);
        } else if pairing > shifted_level {
            let t = pairing - shifted_level;
            x = Weight::new(
                x.labels()
                    .iter()
                    .zip(&theta)
                    .map(|(a, b)| a - t * b)
                    .collect(),
            );
        } else {
            return Ok(Some(SignedWeight {
                weight: x,
                sign,
                multiplicity: 1,
            }));
        }
        sign = -sign;
    }
    Err(Error::FoldDiverged(fold_bound(rs)))
}

/// Weights of the adjoint representation: each root once, zero `r` times.
pub fn adjoint_weight_system(rs: &RootSystem) -> Vec<(Weight, u64)> {
    rs.roots()
        .iter()
        .map(|root| (root.to_weight(), 1))
        .chain(std::iter::once((Weight::zero(rs.rank()), rs.rank() as u64)))
        .collect()
}

fn finish(
    rs: &RootSystem,
    level: Option<u64>,
    acc: BTreeMap<Weight, i64>,
) -> Result<FusionDecomposition> {
    let mut out = FusionDecomposition::new(rs.algebra(), level);
    for (weight, m) in acc {
        if m < 0 {
            return Err(Error::NegativeMultiplicity {
                weight: weight.to_string(),
                multiplicity: m,
            });
        }
        out.add(weight, m as u64);
    }
    Ok(out)
}

/// Racah-Speiser: `L(lambda) (x) L(mu)` given the weight system of `L(lambda)`.
pub fn racah_speiser(
    rs: &RootSystem,
    weight_system: &[(Weight, u64)],
    mu: &Weight,
) -> Result<FusionDecomposition> {
    if mu.rank() != rs.rank() {
        return Err(Error::AlgebraMismatch {
            algebra: rs.algebra(),
            expected: rs.rank(),
            found: mu.rank(),
        });
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let rho = rs.weyl_vector();
    let shifted = mu.add(rho);
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (xi, m) in weight_system {
        if let Some(folded) = finite_fold(rs, &shifted.add(xi))? {
            *acc.entry(folded.weight.sub(rho)).or_insert(0) += i64::from(folded.sign) * *m as i64;
        }
    }
    finish(rs, None, acc)
}

/// `L(theta) (x) L(mu)` by Racah-Speiser.
pub fn racah_speiser_tensor(rs: &RootSystem, mu: &Weight) -> Result<FusionDecomposition> {
    racah_speiser(rs, &adjoint_weight_system(rs), mu)
}

/// Kac-Walton: folds a tensor product decomposition to level `level`.
pub fn kac_walton(
    rs: &RootSystem,
    tensor: &FusionDecomposition,
    level: u64,
) -> Result<FusionDecomposition> {
    let rho = rs.weyl_vector();
    let shifted_level = level as i64 + rs.dual_coxeter();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, c) in tensor.iter() {
        if let Some(folded) = affine_fold(rs, &nu.add(rho), shifted_level)? {
            *acc.entry(folded.weight.sub(rho)).or_insert(0) += i64::from(folded.sign) * c as i64;
        }
    }
    finish(rs, Some(level), acc)
}

/// `L(theta) (x)_k L(mu)` by Kac-Walton folding of the Racah-Speiser product.
pub fn kac_walton_fusion(rs: &RootSystem, mu: &AffineWeight) -> Result<FusionDecomposition> {
    if mu.labels().len() != rs.rank() + 1 {
        return Err(Error::AlgebraMismatch {
            algebra: rs.algebra(),
            expected: rs.rank() + 1,
            found: mu.labels().len(),
        });
    }
    if mu.level() < 2 {
        return Err(Error::LevelTooSmall {
            level: mu.level() as i64,
            constraint: "adjoint fusion needs level >= 2 so that theta is integrable".into(),
        });
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let tensor = racah_speiser_tensor(rs, &mu.finite())?;
    kac_walton(rs, &tensor, mu.level())
}
