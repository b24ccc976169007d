//! Closed-form rules for tensor products and level-k fusion with the adjoint
//! representation `L(theta)`.
//!
//! Diagonal coefficients count nonzero Dynkin labels (affine labels for
//! fusion, minus one). Off-diagonal coefficients are 0 or 1: nonzero only when
//! `nu - mu` is a root `beta`, and then decided by alpha-string depths of
//! `beta`. Fusion and tensor product agree off the diagonal.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::algebra::{AlgebraId, Root, RootSystem};
use crate::error::{Error, Result};
use crate::weights::{AffineWeight, Weight};

/// Support of an adjoint tensor or fusion product: dominant weight to multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionDecomposition {
    algebra: AlgebraId,
    /// `None` for tensor products.
    level: Option<u64>,
    entries: BTreeMap<Weight, u64>,
}

impl FusionDecomposition {
    pub fn new(algebra: AlgebraId, level: Option<u64>) -> Self {
        Self {
            algebra,
            level,
            entries: BTreeMap::new(),
        }
    }

    /// Adds `multiplicity` to `weight`; zero multiplicities are not stored.
    pub fn add(&mut self, weight: Weight, multiplicity: u64) {
        if multiplicity > 0 {
            *self.entries.entry(weight).or_insert(0) += multiplicity;
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn level(&self) -> Option<u64> {
        self.level
    }

    pub fn get(&self, weight: &Weight) -> u64 {
        self.entries.get(weight).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<Weight, u64> {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, u64)> {
        self.entries.iter().map(|(w, &m)| (w, m))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only weights with `(theta, nu) <= level`, relabelled as a level-`level` product.
    pub fn truncated(&self, rs: &RootSystem, level: u64) -> FusionDecomposition {
        FusionDecomposition {
            algebra: self.algebra,
            level: Some(level),
            entries: self
                .entries
                .iter()
                .filter(|(w, _)| rs.theta_pairing(w) <= level as i64)
                .map(|(w, &m)| (w.clone(), m))
                .collect(),
        }
    }
}

impl fmt::Display for FusionDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, (w, m)) in self.entries.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if *m == 1 {
                write!(f, "[{w}]")?;
            } else {
                write!(f, "{m}[{w}]")?;
            }
        }
        Ok(())
    }
}

/// A positive root `beta` and the simple-root index whose depth condition on
/// `mu` is not implied by dominance of `mu` and `nu`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NontrivialCondition {
    pub root: Root,
    pub index: usize,
    /// `mu_i >= d_i[beta]` when `nu - mu = beta`.
    pub threshold_plus: u32,
    /// `mu_i >= h_i[beta]` when `nu - mu = -beta`.
    pub threshold_minus: u32,
}

fn level_too_small(level: u64) -> Error {
    Error::LevelTooSmall {
        level: level as i64,
        constraint: "adjoint fusion needs level >= 2 so that theta is integrable".into(),
    }
}

fn check_affine(rs: &RootSystem, w: &AffineWeight) -> Result<()> {
    if w.labels().len() != rs.rank() + 1 {
        return Err(Error::AlgebraMismatch {
            algebra: rs.algebra(),
            expected: rs.rank() + 1,
            found: w.labels().len(),
        });
    }
    Ok(())
}

/// Diagonal fusion coefficient: nonzero affine labels of `mu` minus one.
pub fn diag_fusion(mu: &AffineWeight) -> Result<u64> {
    if mu.level() < 2 {
        return Err(level_too_small(mu.level()));
    }
    Ok(mu.nonzero_labels() as u64 - 1)
}

/// Diagonal tensor-product coefficient: nonzero finite labels of `mu`.
pub fn diag_tensor(mu: &Weight) -> u64 {
    mu.nonzero_labels() as u64
}

fn in_roots_or_zero(rs: &RootSystem, coords: &[i64]) -> bool {
    coords.iter().all(|&c| c == 0) || rs.root_by_coords(coords).is_some()
}

fn plus_simple(beta: &Root, i: usize, times: i64) -> Vec<i64> {
    let mut c = beta.coords().to_vec();
    c[i] += times;
    c
}

fn offdiag_root<'a>(rs: &'a RootSystem, mu: &Weight, nu: &Weight) -> Option<&'a Root> {
    if mu == nu || !mu.is_dominant() || !nu.is_dominant() {
        return None;
    }
    rs.root_between(mu, nu)
}

/// Off-diagonal tensor coefficient, split by the sign of `beta = nu - mu`:
/// for positive `beta` every `beta + (mu_i + 1) alpha_i` must leave the
/// positive roots, for negative `beta` every `beta - (nu_i + 1) alpha_i` must
/// leave the negative roots.
pub fn offdiag_tensor(rs: &RootSystem, mu: &Weight, nu: &Weight) -> u8 {
    let Some(beta) = offdiag_root(rs, mu, nu) else {
        return 0;
    };
    let ok = if beta.is_positive() {
        (0..rs.rank()).all(|i| {
            let shifted = plus_simple(beta, i, mu.labels()[i] + 1);
            !rs.root_by_coords(&shifted).is_some_and(Root::is_positive)
        })
    } else {
        (0..rs.rank()).all(|i| {
            let shifted = plus_simple(beta, i, -(nu.labels()[i] + 1));
            !rs.root_by_coords(&shifted)
                .is_some_and(|r| !r.is_positive())
        })
    };
    u8::from(ok)
}

/// Sign-free form: `beta + (mu_i + 1) alpha_i` is neither a root nor zero for every `i`.
pub fn offdiag_tensor_two_case(rs: &RootSystem, mu: &Weight, nu: &Weight) -> u8 {
    let Some(beta) = offdiag_root(rs, mu, nu) else {
        return 0;
    };
    u8::from(
        (0..rs.rank()).all(|i| !in_roots_or_zero(rs, &plus_simple(beta, i, mu.labels()[i] + 1))),
    )
}

/// Depth-weight form: `mu - delta[nu - mu]` is dominant.
pub fn offdiag_tensor_depth(rs: &RootSystem, mu: &Weight, nu: &Weight) -> u8 {
    let Some(beta) = offdiag_root(rs, mu, nu) else {
        return 0;
    };
    let delta = rs.depth_weight(beta).expect("beta is a root");
    u8::from(mu.sub(&delta).is_dominant())
}

/// Off-diagonal fusion coefficient at level `k`. Equal to the tensor
/// coefficient of the finite projections whenever both weights lie in the
/// level-k alcove.
pub fn offdiag_fusion(rs: &RootSystem, mu: &AffineWeight, nu: &AffineWeight) -> Result<u8> {
    check_affine(rs, mu)?;
    check_affine(rs, nu)?;
    if mu.level() != nu.level() {
        return Err(Error::LevelMismatch(mu.level(), nu.level()));
    }
    if !mu.is_dominant() || !nu.is_dominant() {
        return Ok(0);
    }
    let value = offdiag_tensor(rs, &mu.finite(), &nu.finite());
    // The affine (i = 0) clause is redundant for dominant level-k inputs.
    debug_assert_eq!(Ok(value), offdiag_fusion_universal(rs, mu, nu));
    Ok(value)
}

/// The universal rule over all affine nodes: `nu - r_i . mu` is neither a
/// root nor zero for every `i = 0..=r`, where `r_0 . mu = mu + (mu_0 + 1) theta`.
pub fn offdiag_fusion_universal(
    rs: &RootSystem,
    mu: &AffineWeight,
    nu: &AffineWeight,
) -> Result<u8> {
    check_affine(rs, mu)?;
    check_affine(rs, nu)?;
    if mu.level() != nu.level() {
        return Err(Error::LevelMismatch(mu.level(), nu.level()));
    }
    let (mu_f, nu_f) = (mu.finite(), nu.finite());
    let Some(beta) = offdiag_root(rs, &mu_f, &nu_f) else {
        return Ok(0);
    };
    if !mu.is_dominant() || !nu.is_dominant() {
        return Ok(0);
    }
    let finite_ok =
        (0..rs.rank()).all(|i| !in_roots_or_zero(rs, &plus_simple(beta, i, mu_f.labels()[i] + 1)));
    let times = mu.label0() + 1;
    let affine: Vec<i64> = beta
        .coords()
        .iter()
        .zip(rs.highest_root().coords())
        .map(|(b, t)| b - times * t)
        .collect();
    Ok(u8::from(finite_ok && !in_roots_or_zero(rs, &affine)))
}

/// Every `(beta, i)` with `beta` positive and `d_i[beta] > max(0, -beta_i)`.
pub fn nontrivial_conditions(rs: &RootSystem) -> Vec<NontrivialCondition> {
    let mut out = Vec::new();
    for beta in rs.positive_roots() {
        for i in 0..rs.rank() {
            let d = rs.alpha_string_depth(beta, i).expect("root");
            if i64::from(d) > 0.max(-beta.labels()[i]) {
                out.push(NontrivialCondition {
                    root: beta.clone(),
                    index: i,
                    threshold_plus: d,
                    threshold_minus: rs.alpha_string_height(beta, i).expect("root"),
                });
            }
        }
    }
    out
}

/// Lookup table over [`nontrivial_conditions`]: off-diagonal coefficients
/// without scanning alpha-strings.
#[derive(Debug, Clone)]
pub struct ConditionTable {
    by_root: HashMap<Vec<i64>, (usize, u32)>,
}

impl ConditionTable {
    pub fn new(rs: &RootSystem) -> Self {
        let mut by_root = HashMap::new();
        for c in nontrivial_conditions(rs) {
            let neg = c.root.negated().coords().to_vec();
            by_root.insert(c.root.coords().to_vec(), (c.index, c.threshold_plus));
            by_root.insert(neg, (c.index, c.threshold_minus));
        }
        Self { by_root }
    }

    pub fn offdiag(&self, rs: &RootSystem, mu: &Weight, nu: &Weight) -> u8 {
        let Some(beta) = offdiag_root(rs, mu, nu) else {
            return 0;
        };
        match self.by_root.get(beta.coords()) {
            Some(&(i, threshold)) => u8::from(mu.labels()[i] >= i64::from(threshold)),
            None => 1,
        }
    }
}

/// `L(theta) (x)_k L(mu)` from the closed-form rules.
pub fn decompose(rs: &RootSystem, mu: &AffineWeight) -> Result<FusionDecomposition> {
    check_affine(rs, mu)?;
    let k = mu.level();
    if k < 2 {
        return Err(level_too_small(k));
    }
    if !mu.is_dominant() {
        return Err(Error::NotDominant(mu.to_string()));
    }
    let mu_f = mu.finite();
    let mut out = FusionDecomposition::new(rs.algebra(), Some(k));
    out.add(mu_f.clone(), diag_fusion(mu)?);
    for beta in rs.roots() {
        let nu = mu_f.add_labels(beta.labels());
        if !nu.is_dominant() || rs.theta_pairing(&nu) > k as i64 {
            continue;
        }
        let mut labels = vec![k as i64 - rs.theta_pairing(&nu)];
        labels.extend_from_slice(nu.labels());
        let nu_hat = AffineWeight::from_labels(rs, labels)?;
        out.add(nu, u64::from(offdiag_fusion(rs, mu, &nu_hat)?));
    }
    Ok(out)
}

/// `L(theta) (x) L(mu)` from the closed-form rules.
pub fn decompose_tensor(rs: &RootSystem, mu: &Weight) -> Result<FusionDecomposition> {
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
    let mut out = FusionDecomposition::new(rs.algebra(), None);
    out.add(mu.clone(), diag_tensor(mu));
    for beta in rs.roots() {
        let nu = mu.add_labels(beta.labels());
        let c = offdiag_tensor(rs, mu, &nu);
        out.add(nu, u64::from(c));
    }
    Ok(out)
}

/// Which implementation computes a decomposition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Engine {
    /// Closed-form rules.
    Rule,
    /// Racah-Speiser and Kac-Walton folding.
    Oracle,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Rule => "rule",
            Engine::Oracle => "oracle",
        }
    }
}

/// Level-k adjoint fusion of `mu` with the chosen engine.
pub fn fuse(rs: &RootSystem, mu: &AffineWeight, engine: Engine) -> Result<FusionDecomposition> {
    match engine {
        Engine::Rule => decompose(rs, mu),
        Engine::Oracle => crate::oracle::kac_walton_fusion(rs, mu),
    }
}

/// Adjoint tensor product of `mu` with the chosen engine.
pub fn fuse_tensor(rs: &RootSystem, mu: &Weight, engine: Engine) -> Result<FusionDecomposition> {
    match engine {
        Engine::Rule => decompose_tensor(rs, mu),
        Engine::Oracle => crate::oracle::racah_speiser_tensor(rs, mu),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::{affinize, enumerate_level};

    fn rs(name: &str) -> RootSystem {
        RootSystem::build(name.parse().unwrap()).unwrap()
    }

    fn aff(rs: &RootSystem, labels: &[i64]) -> AffineWeight {
        AffineWeight::from_labels(rs, labels.to_vec()).unwrap()
    }

    fn w(labels: &[i64]) -> Weight {
        Weight::new(labels.to_vec())
    }

    #[test]
    fn diagonal_examples() {
        let a1 = rs("A1");
        assert_eq!(diag_fusion(&aff(&a1, &[1, 1])).unwrap(), 1);
        assert_eq!(diag_fusion(&aff(&a1, &[0, 2])).unwrap(), 0);
        assert!(matches!(
            diag_fusion(&aff(&a1, &[0, 1])),
            Err(Error::LevelTooSmall { .. })
        ));
        let b3 = rs("B3");
        assert_eq!(diag_fusion(&aff(&b3, &[1, 1, 1, 1])).unwrap(), 3);
        assert_eq!(diag_tensor(&w(&[0, 0])), 0);
        assert_eq!(diag_tensor(&w(&[1, 1, 1])), 3);
    }

    #[test]
    fn diagonal_large_level_limit() {
        let c3 = rs("C3");
        for mu in enumerate_level(&c3, 5) {
            if mu.label0() > 0 {
                assert_eq!(diag_fusion(&mu).unwrap(), diag_tensor(&mu.finite()));
            }
        }
    }

    #[test]
    fn g2_offdiag_examples() {
        let g2 = rs("G2");
        // mu = (1; 0, 2) at k = 3, nu = mu + alpha_1 + alpha_2 = (0; 1, 1)
        let mu = aff(&g2, &[1, 0, 2]);
        let nu = aff(&g2, &[0, 1, 1]);
        assert_eq!(offdiag_fusion(&g2, &mu, &nu).unwrap(), 1);
        // mu = (0, 1), nu = (1, 0): beta = alpha_1 + alpha_2 needs mu_2 >= 2
        assert_eq!(
            g2.root_between(&w(&[0, 1]), &w(&[1, 0])).unwrap().coords(),
            &[1, 1]
        );
        assert_eq!(offdiag_tensor(&g2, &w(&[0, 1]), &w(&[1, 0])), 0);
        assert_eq!(offdiag_tensor_depth(&g2, &w(&[0, 1]), &w(&[1, 0])), 0);
        assert_eq!(offdiag_tensor(&g2, &w(&[0, 1]), &w(&[5, 5])), 0);
        // theta row: mu_0 >= 2
        let mu = aff(&g2, &[2, 0, 1]);
        let nu = aff(&g2, &[0, 1, 1]);
        assert_eq!(offdiag_fusion(&g2, &mu, &nu).unwrap(), 1);
        assert!(matches!(
            offdiag_fusion(&g2, &mu, &aff(&g2, &[0, 1, 0])),
            Err(Error::LevelMismatch(3, 2))
        ));
    }

    #[test]
    fn a1_level_two() {
        let a1 = rs("A1");
        let mu = aff(&a1, &[0, 2]);
        assert_eq!(offdiag_fusion(&a1, &mu, &aff(&a1, &[2, 0])).unwrap(), 1);
        let d = decompose(&a1, &mu).unwrap();
        assert_eq!(d.entries().len(), 1);
        assert_eq!(d.get(&w(&[0])), 1);
        let d = decompose(&a1, &aff(&a1, &[1, 2])).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!((d.get(&w(&[0])), d.get(&w(&[2]))), (1, 1));
        let t = decompose_tensor(&a1, &w(&[2])).unwrap();
        assert_eq!(t.to_string(), "[0] + [2] + [4]");
        assert!(matches!(
            decompose(&a1, &aff(&a1, &[1, 0])),
            Err(Error::LevelTooSmall { .. })
        ));
    }

    #[test]
    fn simply_laced_offdiag_is_root_test() {
        let d4 = rs("D4");
        for k in 2..=4 {
            let alcove: Vec<_> = enumerate_level(&d4, k).collect();
            for mu in &alcove {
                for nu in &alcove {
                    if mu == nu {
                        continue;
                    }
                    let is_root = d4.root_between(&mu.finite(), &nu.finite()).is_some();
                    assert_eq!(offdiag_fusion(&d4, mu, nu).unwrap(), u8::from(is_root));
                }
            }
        }
    }

    #[test]
    fn nontrivial_condition_examples() {
        assert!(nontrivial_conditions(&rs("A5")).is_empty());
        let b4 = nontrivial_conditions(&rs("B4"));
        assert_eq!(b4.len(), 3);
        assert!(b4
            .iter()
            .all(|c| c.index == 3 && c.threshold_plus == 1 && c.threshold_minus == 1));
        let g2: Vec<_> = nontrivial_conditions(&rs("G2"))
            .into_iter()
            .map(|c| {
                (
                    c.root.coords().to_vec(),
                    c.index,
                    c.threshold_plus,
                    c.threshold_minus,
                )
            })
            .collect();
        assert_eq!(g2, vec![(vec![1, 1], 1, 2, 1), (vec![1, 2], 1, 1, 2)]);
    }

    #[test]
    fn last_c_condition_is_needed() {
        // C2: beta = alpha_1 + alpha_2 has d_1 = 1 and beta_1 = 0.
        let c2 = rs("C2");
        let beta = c2.root_by_coords(&[1, 1]).unwrap();
        assert_eq!(beta.labels()[0], 0);
        let mu = Weight::zero(2);
        let nu = beta.to_weight();
        assert!(nu.is_dominant());
        assert_eq!(offdiag_tensor(&c2, &mu, &nu), 0);
        let rs_tensor = crate::oracle::racah_speiser_tensor(&c2, &mu).unwrap();
        assert_eq!(rs_tensor.get(&nu), 0);
    }

    #[test]
    fn decompose_requires_matching_rank() {
        let a2 = rs("A2");
        let a1 = rs("A1");
        let mu = affinize(&a1, &w(&[1]), 3).unwrap();
        assert!(matches!(
            decompose(&a2, &mu),
            Err(Error::AlgebraMismatch { .. })
        ));
    }
}
