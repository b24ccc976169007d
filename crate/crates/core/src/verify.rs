//! Cross-method verification suites.
//!
//! Each suite sweeps a bounded grid and stops at the first disagreement,
//! reported with enough context to reproduce it. Sweeps run in parallel but
//! the reported counterexample is the canonical first one (ordered by
//! algebra, level, weight), so output does not depend on scheduling.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::adjoint_rules::{
    decompose, offdiag_fusion, offdiag_fusion_universal, offdiag_tensor, offdiag_tensor_depth,
    offdiag_tensor_two_case, ConditionTable,
};
use crate::algebra::{AlgebraId, Family, RootSystem};
use crate::error::{Error, Result};
use crate::oracle::kac_walton_fusion;
use crate::tables;
use crate::tadpole::{adjoint_formula, tadpole_stats, zero_formula, PiecewisePolynomial};
use crate::weights::{enumerate_level, AffineWeight};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    /// Closed-form rules against the Kac-Walton oracle.
    Rules,
    /// Closed-form tadpoles against enumeration.
    Tadpole,
    /// Table regeneration against golden copies.
    Tables,
    /// Root-string invariants.
    Structure,
}

impl Suite {
    pub const ALL: [Suite; 4] = [
        Suite::Rules,
        Suite::Tadpole,
        Suite::Tables,
        Suite::Structure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rules => "rules",
            Suite::Tadpole => "tadpole",
            Suite::Tables => "tables",
            Suite::Structure => "structure",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                format!("unknown suite {s:?} (expected rules, tadpole, tables or structure)")
            })
    }
}

/// First counterexample found by a suite.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub algebra: AlgebraId,
    pub level: Option<u64>,
    pub detail: String,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(k) => write!(f, "{} k={}: {}", self.algebra, k, self.detail),
            None => write!(f, "{}: {}", self.algebra, self.detail),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: u64,
    pub mismatch: Option<Mismatch>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.mismatch {
            None => write!(f, "{}: pass ({} checks)", self.suite, self.checks),
            Some(m) => write!(
                f,
                "{}: FAIL after {} checks: {}",
                self.suite, self.checks, m
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    pub max_rank: usize,
    pub max_level: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_rank: 4,
            max_level: 6,
        }
    }
}

/// Checks done and the first mismatch.
type Outcome = (u64, Option<Mismatch>);

fn merge(outcomes: impl IntoIterator<Item = Outcome>) -> Outcome {
    let mut checks = 0;
    for (n, m) in outcomes {
        checks += n;
        if m.is_some() {
            return (checks, m);
        }
    }
    (checks, None)
}

fn mismatch(algebra: AlgebraId, level: Option<u64>, detail: String) -> Option<Mismatch> {
    Some(Mismatch {
        algebra,
        level,
        detail,
    })
}

/// All forms of the off-diagonal rule for `mu -> nu`, tensor and fusion.
fn offdiag_forms(
    rs: &RootSystem,
    table: &ConditionTable,
    mu: &AffineWeight,
    nu: &AffineWeight,
) -> Result<Vec<(&'static str, u8)>> {
    let (mf, nf) = (mu.finite(), nu.finite());
    Ok(vec![
        ("fusion", offdiag_fusion(rs, mu, nu)?),
        ("universal", offdiag_fusion_universal(rs, mu, nu)?),
        ("signed", offdiag_tensor(rs, &mf, &nf)),
        ("two-case", offdiag_tensor_two_case(rs, &mf, &nf)),
        ("depth", offdiag_tensor_depth(rs, &mf, &nf)),
        ("table", table.offdiag(rs, &mf, &nf)),
    ])
}

fn rules_at(
    rs: &RootSystem,
    table: &ConditionTable,
    mu: &AffineWeight,
    alcove: &[AffineWeight],
) -> Result<Outcome> {
    let algebra = rs.algebra();
    let k = mu.level();
    let rule = decompose(rs, mu)?;
    let oracle = kac_walton_fusion(rs, mu)?;
    let mut checks = 1;
    if rule != oracle {
        return Ok((
            checks,
            mismatch(
                algebra,
                Some(k),
                format!("mu=({mu}): rule {rule}, oracle {oracle}"),
            ),
        ));
    }
    for nu in alcove {
        if nu == mu || rs.root_between(&mu.finite(), &nu.finite()).is_none() {
            continue;
        }
        checks += 1;
        let forms = offdiag_forms(rs, table, mu, nu)?;
        let expected = oracle.get(&nu.finite());
        if forms.iter().any(|&(_, v)| u64::from(v) != expected) {
            let detail = forms
                .iter()
                .map(|(n, v)| format!("{n} {v}"))
                .collect::<Vec<_>>()
                .join(", ");
            return Ok((
                checks,
                mismatch(
                    algebra,
                    Some(k),
                    format!("mu=({mu}) nu=({nu}): oracle {expected}, {detail}"),
                ),
            ));
        }
    }
    Ok((checks, None))
}

/// Rule-engine decompositions and every off-diagonal form against the oracle.
pub fn rules_suite(
    algebras: &[AlgebraId],
    levels: impl Iterator<Item = u64> + Clone,
) -> Result<SuiteReport> {
    let mut outcomes = Vec::new();
    for &id in algebras {
        let rs = RootSystem::shared(id)?;
        let table = ConditionTable::new(&rs);
        for k in levels.clone().filter(|&k| k >= 2) {
            let alcove: Vec<AffineWeight> = enumerate_level(&rs, k).collect();
            let per_mu: Vec<Outcome> = alcove
                .par_iter()
                .map(|mu| rules_at(&rs, &table, mu, &alcove))
                .collect::<Result<_>>()?;
            let outcome = merge(per_mu);
            let stop = outcome.1.is_some();
            outcomes.push(outcome);
            if stop {
                break;
            }
        }
        if outcomes.last().is_some_and(|o| o.1.is_some()) {
            break;
        }
    }
    let (checks, mismatch) = merge(outcomes);
    Ok(SuiteReport {
        suite: Suite::Rules,
        checks,
        mismatch,
    })
}

/// Algebras with closed-form tadpoles up to `max_rank`.
pub fn closed_form_algebras(max_rank: usize) -> Vec<AlgebraId> {
    AlgebraId::all_up_to(max_rank)
        .into_iter()
        .filter(|id| {
            matches!(id.family(), Family::A | Family::B | Family::C | Family::D)
                || id.to_string() == "E6"
        })
        .collect()
}

/// Closed-form tadpoles against enumeration. `adjoint` supplies the
/// `T_theta` closed form so a test fixture can substitute a faulty one.
pub fn tadpole_suite_with(
    algebras: &[AlgebraId],
    max_level: u64,
    adjoint: &dyn Fn(AlgebraId) -> Result<PiecewisePolynomial>,
) -> Result<SuiteReport> {
    let mut checks = 0;
    for &id in algebras {
        let rs = RootSystem::shared(id)?;
        let adj = adjoint(id)?;
        let zero = zero_formula(id)?;
        for k in 0..=max_level {
            let stats = tadpole_stats(&rs, k)?;
            checks += 1;
            let z = zero.eval(k)?;
            if z != stats.count {
                let detail = format!(
                    "T0 branch {}: formula {z}, enum {}",
                    zero.branch_name(k),
                    stats.count
                );
                return Ok(SuiteReport {
                    suite: Suite::Tadpole,
                    checks,
                    mismatch: mismatch(id, Some(k), detail),
                });
            }
            if k < 2 {
                continue;
            }
            checks += 1;
            let t = stats.nonzero_sum - stats.count;
            let value = adj.eval(k);
            if value.as_ref() != Ok(&t) {
                let shown = match value {
                    Ok(v) => v.to_string(),
                    Err(e) => e.to_string(),
                };
                let detail = format!(
                    "T_theta branch {}: formula {shown}, enum {t}",
                    adj.branch_name(k)
                );
                return Ok(SuiteReport {
                    suite: Suite::Tadpole,
                    checks,
                    mismatch: mismatch(id, Some(k), detail),
                });
            }
        }
    }
    Ok(SuiteReport {
        suite: Suite::Tadpole,
        checks,
        mismatch: None,
    })
}

pub fn tadpole_suite(algebras: &[AlgebraId], max_level: u64) -> Result<SuiteReport> {
    tadpole_suite_with(algebras, max_level, &adjoint_formula)
}

/// Regenerates every table and compares with the golden copies.
pub fn tables_suite(algebras: &[AlgebraId]) -> Result<SuiteReport> {
    let mut checks = 0;
    let mut first: Option<Mismatch> = None;
    let mut absorb = |algebra: AlgebraId, check: tables::TableCheck| {
        checks += check.cells as u64;
        if first.is_none() {
            if let Some(m) = check.mismatches.first() {
                first = mismatch(algebra, None, m.clone());
            }
        }
    };
    let b3: AlgebraId = "B3".parse()?;
    absorb(b3, tables::check_b_tadpoles(&tables::b_tadpole_table()?));
    let g2: AlgebraId = "G2".parse()?;
    absorb(
        g2,
        tables::check_g2_offdiag(&tables::g2_offdiag_table(8, crate::Engine::Rule)?),
    );
    for &id in algebras {
        let rs = RootSystem::shared(id)?;
        absorb(
            id,
            tables::check_nontrivial(id, &tables::nontrivial_table(&rs)),
        );
    }
    absorb(
        "F4".parse()?,
        tables::check_f4_strings(&tables::f4_strings_table()?),
    );
    Ok(SuiteReport {
        suite: Suite::Tables,
        checks,
        mismatch: first,
    })
}

/// For every root `beta` and index `i`: `h_i - d_i = beta_i`, the string has at
/// most 4 roots, and at most one index per positive root is nontrivial.
pub fn structure_check(rs: &RootSystem) -> Result<(u64, Option<Mismatch>)> {
    let id = rs.algebra();
    let mut checks = 0;
    for beta in rs.roots() {
        let mut nontrivial = 0;
        for i in 0..rs.rank() {
            checks += 1;
            let d = i64::from(rs.alpha_string_depth(beta, i)?);
            let h = i64::from(rs.alpha_string_height(beta, i)?);
            let b = beta.labels()[i];
            if h - d != b {
                return Ok((
                    checks,
                    mismatch(
                        id,
                        None,
                        format!("{beta} i={}: h={h}, d={d}, label {b}", i + 1),
                    ),
                ));
            }
            let len = rs.alpha_string(beta, i)?.len();
            if len > 4 {
                return Ok((
                    checks,
                    mismatch(
                        id,
                        None,
                        format!("{beta} i={}: string of {len} roots", i + 1),
                    ),
                ));
            }
            if beta.is_positive() && d > 0.max(-b) {
                nontrivial += 1;
            }
        }
        if nontrivial > 1 {
            return Ok((
                checks,
                mismatch(id, None, format!("{beta}: {nontrivial} nontrivial indices")),
            ));
        }
    }
    Ok((checks, None))
}

pub fn structure_suite(algebras: &[AlgebraId]) -> Result<SuiteReport> {
    let outcomes = algebras
        .iter()
        .map(|&id| structure_check(&*RootSystem::shared(id)?))
        .collect::<Result<Vec<_>>>()?;
    let (checks, mismatch) = merge(outcomes);
    Ok(SuiteReport {
        suite: Suite::Structure,
        checks,
        mismatch,
    })
}

/// Runs the requested suites over all algebras within `bounds`.
pub fn run(bounds: Bounds, suites: &[Suite]) -> Result<Vec<SuiteReport>> {
    if bounds.max_rank == 0 {
        return Err(Error::InvalidRank {
            family: '*',
            rank: 0,
            constraint: "max rank must be at least 1",
        });
    }
    let algebras = AlgebraId::all_up_to(bounds.max_rank);
    suites
        .iter()
        .map(|suite| match suite {
            Suite::Rules => rules_suite(&algebras, 2..=bounds.max_level),
            Suite::Tadpole => {
                tadpole_suite(&closed_form_algebras(bounds.max_rank), bounds.max_level)
            }
            Suite::Tables => tables_suite(&algebras),
            Suite::Structure => structure_suite(&algebras),
        })
        .collect()
}

/// Adds 1 to the odd-level branch of every B_r closed form; a test fixture
/// for the mismatch path.
pub fn faulty_b_odd_formula(id: AlgebraId) -> Result<PiecewisePolynomial> {
    let f = adjoint_formula(id)?;
    if id.family() != Family::B {
        return Ok(f);
    }
    let bumped = f.branch(1).add(&crate::Polynomial::constant(1.into()))?;
    Ok(f.with_branch(1, bumped))
}
