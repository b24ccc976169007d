//! Finite and affine weights, and the level-k lattice polytope of affine
//! dominant weights.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::algebra::RootSystem;
use crate::error::{Error, Result};

/// A finite weight given by its Dynkin labels. No sign restriction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(labels: Vec<i64>) -> Self {
        Self(labels)
    }

    pub fn zero(rank: usize) -> Self {
        Self(vec![0; rank])
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&l| l >= 0)
    }

    pub fn nonzero_labels(&self) -> usize {
        self.0.iter().filter(|&&l| l != 0).count()
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn add_labels(&self, other: &[i64]) -> Weight {
        Weight(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_labels(f, &self.0)
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::WeightParse(s.to_string()));
        }
        s.split(',')
            .map(|part| part.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| Error::WeightParse(s.to_string()))
    }
}

fn write_labels(f: &mut fmt::Formatter<'_>, labels: &[i64]) -> fmt::Result {
    for (n, l) in labels.iter().enumerate() {
        if n > 0 {
            write!(f, ",")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// A level-k affine weight `(l0; l1, ..., lr)` with `sum_j m_j l_j = k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineWeight {
    level: u64,
    labels: Vec<i64>,
}

impl AffineWeight {
    /// Builds an affine weight from all `r + 1` labels, checking the level constraint.
    pub fn from_labels(rs: &RootSystem, labels: Vec<i64>) -> Result<Self> {
        if labels.len() != rs.rank() + 1 {
            return Err(Error::AlgebraMismatch {
                algebra: rs.algebra(),
                expected: rs.rank() + 1,
                found: labels.len(),
            });
        }
        let level: i64 = labels.iter().zip(rs.comarks()).map(|(l, m)| l * m).sum();
        if level < 0 {
            return Err(Error::LevelTooSmall {
                level,
                constraint: "affine level must be nonnegative".into(),
            });
        }
        Ok(Self {
            level: level as u64,
            labels,
        })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// All affine labels, `l0` first.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn label0(&self) -> i64 {
        self.labels[0]
    }

    /// Projection onto the finite labels.
    pub fn finite(&self) -> Weight {
        Weight(self.labels[1..].to_vec())
    }

    pub fn is_dominant(&self) -> bool {
        self.labels.iter().all(|&l| l >= 0)
    }

    /// Number of nonzero affine labels.
    pub fn nonzero_labels(&self) -> usize {
        self.labels.iter().filter(|&&l| l != 0).count()
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; ", self.labels[0])?;
        write_labels(f, &self.labels[1..])?;
        write!(f, ")")
    }
}

/// Level-k affinization: `l0 = k - (theta, lambda)`.
pub fn affinize(rs: &RootSystem, lambda: &Weight, level: u64) -> Result<AffineWeight> {
    if lambda.rank() != rs.rank() {
        return Err(Error::AlgebraMismatch {
            algebra: rs.algebra(),
            expected: rs.rank(),
            found: lambda.rank(),
        });
    }
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    let pairing = rs.theta_pairing(lambda);
    let label0 = level as i64 - pairing;
    if label0 < 0 {
        return Err(Error::LevelTooSmall {
            level: level as i64,
            constraint: format!(
                "(theta, lambda) = {pairing} exceeds the level for lambda = {lambda}"
            ),
        });
    }
    let mut labels = Vec::with_capacity(rs.rank() + 1);
    labels.push(label0);
    labels.extend_from_slice(lambda.labels());
    Ok(AffineWeight { level, labels })
}

pub fn nonzero_affine_labels(weight: &AffineWeight) -> usize {
    weight.nonzero_labels()
}

/// Streams the level-`k` affine dominant weights, lexicographically on the
/// finite labels.
#[derive(Debug, Clone)]
pub struct LevelIter {
    comarks: Vec<i64>,
    level: i64,
    current: Vec<i64>,
    used: i64,
    done: bool,
}

impl LevelIter {
    /// `comarks` are the finite comarks `(m_1, ..., m_r)`; `m_0 = 1` is implicit.
    pub fn new(comarks: &[i64], level: u64) -> Self {
        Self {
            comarks: comarks.to_vec(),
            level: level as i64,
            current: vec![0; comarks.len()],
            used: 0,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.current.len()).rev() {
            if self.used + self.comarks[i] <= self.level {
                self.current[i] += 1;
                self.used += self.comarks[i];
                return true;
            }
            self.used -= self.comarks[i] * self.current[i];
            self.current[i] = 0;
        }
        false
    }
}

impl Iterator for LevelIter {
    /// `(l0, finite labels)`.
    type Item = (i64, Vec<i64>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        let item = (self.level - self.used, self.current.clone());
        if !self.advance() {
            self.done = true;
        }
        Some(item)
    }
}

/// Every element of the level-`k` affine alcove of `rs`.
pub fn enumerate_level(rs: &RootSystem, level: u64) -> impl Iterator<Item = AffineWeight> + '_ {
    LevelIter::new(rs.finite_comarks(), level).map(move |(l0, finite)| {
        let mut labels = Vec::with_capacity(finite.len() + 1);
        labels.push(l0);
        labels.extend(finite);
        AffineWeight { level, labels }
    })
}

/// Aggregates over a level polytope gathered in one pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LevelStats {
    /// Number of points, `|P_+^k|`.
    pub count: u128,
    /// Sum over points of the number of nonzero affine labels.
    pub nonzero_sum: u128,
}

impl LevelStats {
    pub fn merge(self, other: LevelStats) -> Result<LevelStats> {
        Ok(LevelStats {
            count: self
                .count
                .checked_add(other.count)
                .ok_or(Error::Overflow("level polytope count"))?,
            nonzero_sum: self
                .nonzero_sum
                .checked_add(other.nonzero_sum)
                .ok_or(Error::Overflow("nonzero label sum"))?,
        })
    }
}

/// Walks the labels `comarks[from..]` with `budget` left, where `nonzero`
/// labels have already been fixed nonzero.
fn walk(comarks: &[i64], budget: i64, nonzero: u128, acc: &mut LevelStats) -> Result<()> {
    match comarks.split_first() {
        None => {
            let total = nonzero + u128::from(budget > 0);
            acc.count = acc
                .count
                .checked_add(1)
                .ok_or(Error::Overflow("level polytope count"))?;
            acc.nonzero_sum = acc
                .nonzero_sum
                .checked_add(total)
                .ok_or(Error::Overflow("nonzero label sum"))?;
            Ok(())
        }
        Some((&m, rest)) => {
            let mut value = 0;
            while value * m <= budget {
                walk(
                    rest,
                    budget - value * m,
                    nonzero + u128::from(value > 0),
                    acc,
                )?;
                value += 1;
            }
            Ok(())
        }
    }
}

/// Count and nonzero-label sum of the level-`k` polytope for finite comarks
/// `(m_1, ..., m_r)`; an empty slice describes the single label `l0 = k`.
pub fn level_stats(comarks: &[i64], level: u64) -> Result<LevelStats> {
    let mut acc = LevelStats::default();
    walk(comarks, level as i64, 0, &mut acc)?;
    Ok(acc)
}

/// As [`level_stats`], partitioned on the first finite label and reduced in
/// parallel. The reduction is exact, so the totals match the serial pass.
pub fn level_stats_parallel(comarks: &[i64], level: u64) -> Result<LevelStats> {
    let Some((&m, rest)) = comarks.split_first() else {
        return level_stats(comarks, level);
    };
    let budget = level as i64;
    let parts: Vec<i64> = (0..=budget / m).collect();
    parts
        .into_par_iter()
        .map(|value| {
            let mut acc = LevelStats::default();
            walk(rest, budget - value * m, u128::from(value > 0), &mut acc)?;
            Ok(acc)
        })
        .try_reduce(LevelStats::default, LevelStats::merge)
}
