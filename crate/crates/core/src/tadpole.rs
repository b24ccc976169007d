//! Adjoint and zero fusion tadpoles.
//!
//! `T_0 = |P_+^k|` and `T_theta = sum over P_+^k of (nonzero affine labels - 1)`,
//! computed three ways: by streaming enumeration of the level-k alcove, by
//! closed-form piecewise polynomials in `J` (with `k = period * J + residue`)
//! for A, B, C, D and E6, and by summing Kac-Walton diagonal coefficients.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::algebra::{AlgebraId, Family, RootSystem};
use crate::error::{Error, Result};
use crate::oracle::kac_walton_fusion;
use crate::weights::{enumerate_level, level_stats_parallel, LevelStats};

pub type Q = Ratio<i128>;

fn q(n: i128) -> Q {
    Q::from_integer(n)
}

fn frac(n: i128, d: i128) -> Q {
    Q::new(n, d)
}

fn checked_mul(a: &Q, b: &Q, what: &'static str) -> Result<Q> {
    a.checked_mul(b).ok_or(Error::Overflow(what))
}

fn checked_add(a: &Q, b: &Q, what: &'static str) -> Result<Q> {
    a.checked_add(b).ok_or(Error::Overflow(what))
}

/// `x (x-1) ... (x-m+1)`; `1` for `m = 0`.
pub fn falling_power(x: Q, m: u32) -> Result<Q> {
    let mut acc = Q::one();
    for t in 0..m {
        let factor = x
            .checked_sub(&q(i128::from(t)))
            .ok_or(Error::Overflow("falling power"))?;
        acc = checked_mul(&acc, &factor, "falling power")?;
    }
    Ok(acc)
}

fn factorial(n: u32) -> Result<i128> {
    (1..=i128::from(n)).try_fold(1i128, |acc, t| {
        acc.checked_mul(t).ok_or(Error::Overflow("factorial"))
    })
}

/// Polynomial in `J` with exact rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Q>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<Q>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// `J`.
    pub fn var() -> Self {
        Self::new(vec![Q::zero(), Q::one()])
    }

    /// `(J + shift)^{falling m}`.
    pub fn falling(shift: i64, m: u32) -> Result<Self> {
        let mut p = Self::constant(Q::one());
        for t in 0..i64::from(m) {
            let factor = Polynomial::new(vec![q(i128::from(shift - t)), Q::one()]);
            p = p.mul(&factor)?;
        }
        Ok(p)
    }

    /// `(J + shift)^{falling m} / m!`, the binomial `C(J + shift, m)`.
    pub fn binomial(shift: i64, m: u32) -> Result<Self> {
        Self::falling(shift, m)?.scale(frac(1, factorial(m)?))
    }

    fn trim(&mut self) {
        while self.coeffs.len() > 1 && self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.coeffs.push(Q::zero());
        }
    }

    pub fn coefficients(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn scale(&self, c: Q) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| checked_mul(a, &c, "polynomial scale"))
            .collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn add(&self, other: &Polynomial) -> Result<Self> {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Q::zero();
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).unwrap_or(&zero);
                let b = other.coeffs.get(i).unwrap_or(&zero);
                checked_add(a, b, "polynomial add")
            })
            .collect::<Result<_>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Self> {
        self.add(&other.scale(-Q::one())?)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Self> {
        let mut coeffs = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = checked_mul(a, b, "polynomial mul")?;
                coeffs[i + j] = checked_add(&coeffs[i + j], &term, "polynomial mul")?;
            }
        }
        Ok(Self::new(coeffs))
    }

    pub fn eval(&self, x: Q) -> Result<Q> {
        self.coeffs.iter().rev().try_fold(Q::zero(), |acc, c| {
            checked_add(
                &checked_mul(&acc, &x, "polynomial eval")?,
                c,
                "polynomial eval",
            )
        })
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() && !(first && i == 0) {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match i {
                0 => write!(f, "{a}")?,
                _ if a.is_one() => {}
                _ => write!(f, "{a} ")?,
            }
            match i {
                0 => {}
                1 => write!(f, "J")?,
                _ => write!(f, "J^{i}")?,
            }
        }
        Ok(())
    }
}

/// One polynomial in `J` per residue of `k` modulo `period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    algebra: AlgebraId,
    period: u64,
    branches: Vec<Polynomial>,
}

impl PiecewisePolynomial {
    pub fn new(algebra: AlgebraId, branches: Vec<Polynomial>) -> Self {
        assert!(!branches.is_empty(), "at least one branch");
        PiecewisePolynomial {
            algebra,
            period: branches.len() as u64,
            branches,
        }
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn branches(&self) -> &[Polynomial] {
        &self.branches
    }

    pub fn branch(&self, residue: u64) -> &Polynomial {
        &self.branches[residue as usize]
    }

    /// Replaces one branch, e.g. to inject a fault in a test fixture.
    pub fn with_branch(mut self, residue: u64, poly: Polynomial) -> Self {
        self.branches[residue as usize] = poly;
        self
    }

    /// `(J, residue)` with `k = period * J + residue`.
    pub fn split(&self, level: u64) -> (u64, u64) {
        level.div_rem(&self.period)
    }

    /// Human name of the branch used at `level`, e.g. `B4 k=2J+1`.
    pub fn branch_name(&self, level: u64) -> String {
        let (_, residue) = self.split(level);
        let p = if self.period == 1 {
            "J".to_string()
        } else {
            format!("{}J", self.period)
        };
        if residue == 0 {
            format!("{} k={p}", self.algebra)
        } else {
            format!("{} k={p}+{residue}", self.algebra)
        }
    }

    pub fn eval_rational(&self, level: u64) -> Result<Q> {
        let (j, residue) = self.split(level);
        self.branch(residue).eval(q(i128::from(j)))
    }

    /// Evaluates at `level`; the value must be a nonnegative integer.
    pub fn eval(&self, level: u64) -> Result<u128> {
        let value = self.eval_rational(level)?;
        if !value.is_integer() || value.is_negative() {
            return Err(Error::NonIntegral {
                algebra: self.algebra,
                level,
                value: value.to_string(),
            });
        }
        value
            .to_integer()
            .to_u128()
            .ok_or(Error::Overflow("tadpole value"))
    }
}

/// Lcm of the finite comarks: the number of branches of a closed form.
pub fn comark_period(rs: &RootSystem) -> u64 {
    rs.finite_comarks()
        .iter()
        .fold(1u64, |acc, &m| acc.lcm(&(m as u64)))
}

fn lin(terms: &[(Q, Polynomial)]) -> Result<Polynomial> {
    terms
        .iter()
        .try_fold(Polynomial::constant(Q::zero()), |acc, (c, p)| {
            acc.add(&p.scale(*c)?)
        })
}

/// `c * (J + shift)^{falling m} / d!`
fn term(c: Q, shift: i64, m: u32, d: u32) -> Result<(Q, Polynomial)> {
    Ok((c / q(factorial(d)?), Polynomial::falling(shift, m)?))
}

fn e6_branch(coeffs: [(i128, i128); 7]) -> Polynomial {
    Polynomial::new(coeffs.iter().rev().map(|&(n, d)| frac(n, d)).collect())
}

/// The D_r odd-level adjoint branch with a given coefficient on the
/// `(J+r-2)^{falling r-1}/(r-1)!` term.
pub(crate) fn d_odd_adjoint_branch(r: i64, second: i128) -> Result<Polynomial> {
    let ru = r as u32;
    lin(&[
        term(q(8), r - 2, ru, ru - 1)?,
        term(q(second), r - 2, ru - 1, ru - 1)?,
    ])
}

/// Closed form of `T_theta[X_{r,k}]`, valid for `k >= 2`.
pub fn adjoint_formula(algebra: AlgebraId) -> Result<PiecewisePolynomial> {
    let r = algebra.rank() as i64;
    let ru = algebra.rank() as u32;
    let ri = i128::from(r);
    let branches = match algebra.family() {
        Family::A | Family::C => {
            let p = Polynomial::binomial(r - 1, ru - 1)?.mul(&Polynomial::falling(-1, 1)?)?;
            vec![p]
        }
        Family::B => vec![
            lin(&[
                term(q(4), r - 1, ru, ru - 1)?,
                term(q(-3 * (ri - 1)), r - 2, ru - 1, ru - 1)?,
                term(q(-1), r - 1, ru - 1, ru - 1)?,
            ])?,
            lin(&[
                term(q(4), r - 1, ru, ru - 1)?,
                term(q(-(ri - 2)), r - 2, ru - 1, ru - 1)?,
            ])?,
        ],
        Family::D => vec![
            lin(&[
                (
                    Q::one(),
                    Polynomial::var()
                        .mul(&Polynomial::binomial(r - 2, ru - 1)?)?
                        .scale(q(8))?,
                ),
                term(q(ri - 4), r - 3, ru - 2, ru - 2)?,
                term(q(-1), r - 3, ru - 3, ru - 3)?,
            ])?,
            d_odd_adjoint_branch(r, 4 * ri + 8)?,
        ],
        Family::E if r == 6 => vec![
            e6_branch([
                (81, 5),
                (324, 5),
                (189, 2),
                (117, 2),
                (54, 5),
                (-14, 5),
                (-1, 1),
            ]),
            e6_branch([
                (81, 5),
                (81, 1),
                (621, 4),
                (141, 1),
                (1191, 20),
                (9, 1),
                (0, 1),
            ]),
            e6_branch([
                (81, 5),
                (486, 5),
                (459, 2),
                (537, 2),
                (1593, 10),
                (423, 10),
                (3, 1),
            ]),
            e6_branch([
                (81, 5),
                (567, 5),
                (1269, 4),
                (450, 1),
                (6741, 20),
                (1241, 10),
                (17, 1),
            ]),
            e6_branch([
                (81, 5),
                (648, 5),
                (837, 2),
                (1389, 2),
                (3099, 5),
                (1392, 5),
                (48, 1),
            ]),
            e6_branch([
                (81, 5),
                (729, 5),
                (2133, 4),
                (1011, 1),
                (20871, 20),
                (2766, 5),
                (117, 1),
            ]),
        ],
        _ => return Err(Error::NoClosedForm(algebra)),
    };
    Ok(PiecewisePolynomial::new(algebra, branches))
}

/// Closed form of `T_0[X_{r,k}] = |P_+^k|`, valid for `k >= 0`.
pub fn zero_formula(algebra: AlgebraId) -> Result<PiecewisePolynomial> {
    let r = algebra.rank() as i64;
    let ru = algebra.rank() as u32;
    let branches = match algebra.family() {
        Family::A | Family::C => vec![Polynomial::binomial(r, ru)?],
        Family::B => vec![
            lin(&[term(q(1), r, ru, ru)?, term(q(3), r - 1, ru, ru)?])?,
            lin(&[term(q(3), r, ru, ru)?, term(q(1), r - 1, ru, ru)?])?,
        ],
        Family::D => vec![
            lin(&[
                term(q(8), r - 1, ru, ru)?,
                term(q(1), r - 2, ru - 2, ru - 2)?,
            ])?,
            lin(&[
                term(q(8), r - 1, ru, ru)?,
                term(q(4), r - 1, ru - 1, ru - 1)?,
            ])?,
        ],
        Family::E if r == 6 => vec![
            e6_branch([
                (27, 10),
                (81, 5),
                (153, 4),
                (45, 1),
                (551, 20),
                (83, 10),
                (1, 1),
            ]),
            e6_branch([
                (27, 10),
                (189, 10),
                (423, 8),
                (301, 4),
                (2277, 40),
                (427, 20),
                (3, 1),
            ]),
            e6_branch([
                (27, 10),
                (108, 5),
                (279, 4),
                (116, 1),
                (2091, 20),
                (242, 5),
                (9, 1),
            ]),
            e6_branch([
                (27, 10),
                (243, 10),
                (711, 8),
                (675, 4),
                (6997, 40),
                (1869, 20),
                (20, 1),
            ]),
            e6_branch([
                (27, 10),
                (27, 1),
                (441, 4),
                (235, 1),
                (5511, 20),
                (337, 2),
                (42, 1),
            ]),
            e6_branch([
                (27, 10),
                (297, 10),
                (1071, 8),
                (1265, 4),
                (16497, 40),
                (5621, 20),
                (78, 1),
            ]),
        ],
        _ => return Err(Error::NoClosedForm(algebra)),
    };
    Ok(PiecewisePolynomial::new(algebra, branches))
}

fn require_adjoint_level(level: u64) -> Result<()> {
    if level < 2 {
        return Err(Error::LevelTooSmall {
            level: level as i64,
            constraint: "the adjoint tadpole needs level >= 2".into(),
        });
    }
    Ok(())
}

/// One streaming pass over `P_+^k`: count and nonzero-label sum.
pub fn tadpole_stats(rs: &RootSystem, level: u64) -> Result<LevelStats> {
    level_stats_parallel(rs.finite_comarks(), level)
}

/// `T_0 = |P_+^k|` by enumeration.
pub fn zero_tadpole_enum(rs: &RootSystem, level: u64) -> Result<u128> {
    Ok(tadpole_stats(rs, level)?.count)
}

/// `T_theta + T_0`: the sum of nonzero affine labels over `P_+^k`.
pub fn theta_plus_zero(rs: &RootSystem, level: u64) -> Result<u128> {
    require_adjoint_level(level)?;
    Ok(tadpole_stats(rs, level)?.nonzero_sum)
}

/// `T_theta` by enumeration.
pub fn adjoint_tadpole_enum(rs: &RootSystem, level: u64) -> Result<u128> {
    require_adjoint_level(level)?;
    let stats = tadpole_stats(rs, level)?;
    Ok(stats.nonzero_sum - stats.count)
}

/// `T_theta` from the closed form.
pub fn adjoint_tadpole_formula(algebra: AlgebraId, level: u64) -> Result<u128> {
    let formula = adjoint_formula(algebra)?;
    require_adjoint_level(level)?;
    formula.eval(level)
}

/// `T_0` from the closed form.
pub fn zero_tadpole_formula(algebra: AlgebraId, level: u64) -> Result<u128> {
    zero_formula(algebra)?.eval(level)
}

/// `T_theta` as the trace of the adjoint fusion matrix computed by the oracle.
pub fn adjoint_tadpole_oracle(rs: &RootSystem, level: u64) -> Result<u128> {
    require_adjoint_level(level)?;
    enumerate_level(rs, level).try_fold(0u128, |acc, mu| {
        let fused = kac_walton_fusion(rs, &mu)?;
        Ok(acc + u128::from(fused.get(&mu.finite())))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TadpoleMethod {
    Enumeration,
    Formula,
    Oracle,
}

impl TadpoleMethod {
    pub fn name(self) -> &'static str {
        match self {
            TadpoleMethod::Enumeration => "enum",
            TadpoleMethod::Formula => "formula",
            TadpoleMethod::Oracle => "oracle",
        }
    }
}

impl fmt::Display for TadpoleMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TadpoleReport {
    pub algebra: AlgebraId,
    pub level: u64,
    pub value: u128,
    pub method: TadpoleMethod,
    /// `true` for `T_0`, `false` for `T_theta`.
    pub zero: bool,
}

/// Adjoint (or, with `zero`, zero) tadpole by the chosen method. The oracle
/// only computes adjoint tadpoles; for `T_0` it falls back to enumeration.
pub fn tadpole(
    algebra: AlgebraId,
    level: u64,
    method: TadpoleMethod,
    zero: bool,
) -> Result<TadpoleReport> {
    let value = match (method, zero) {
        (TadpoleMethod::Formula, false) => adjoint_tadpole_formula(algebra, level)?,
        (TadpoleMethod::Formula, true) => zero_tadpole_formula(algebra, level)?,
        (TadpoleMethod::Enumeration, false) => {
            adjoint_tadpole_enum(&*RootSystem::shared(algebra)?, level)?
        }
        (TadpoleMethod::Enumeration | TadpoleMethod::Oracle, true) => {
            zero_tadpole_enum(&*RootSystem::shared(algebra)?, level)?
        }
        (TadpoleMethod::Oracle, false) => {
            adjoint_tadpole_oracle(&*RootSystem::shared(algebra)?, level)?
        }
    };
    Ok(TadpoleReport {
        algebra,
        level,
        value,
        method,
        zero,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::level_stats;
    use proptest::prelude::*;

    fn id(name: &str) -> AlgebraId {
        name.parse().unwrap()
    }

    fn rs(name: &str) -> RootSystem {
        RootSystem::build(id(name)).unwrap()
    }

    #[test]
    fn falling_power_examples() {
        assert_eq!(falling_power(q(5), 3).unwrap(), q(60));
        assert_eq!(falling_power(frac(7, 3), 0).unwrap(), q(1));
        assert_eq!(falling_power(q(2), 3).unwrap(), q(0));
        assert_eq!(falling_power(frac(1, 2), 2).unwrap(), frac(-1, 4));
        let sum: Q = (0..=4).map(|l| falling_power(q(l), 2).unwrap()).sum();
        assert_eq!(sum, q(20));
        assert_eq!(falling_power(q(5), 3).unwrap() / q(3), q(20));
    }

    #[test]
    fn falling_power_overflow_is_an_error() {
        assert_eq!(
            falling_power(q(i128::MAX / 2), 3),
            Err(Error::Overflow("falling power"))
        );
    }

    #[test]
    fn polynomial_arithmetic() {
        let p = Polynomial::falling(2, 3).unwrap();
        assert_eq!(p.degree(), 3);
        for j in 0..6 {
            assert_eq!(p.eval(q(j)).unwrap(), falling_power(q(j + 2), 3).unwrap());
        }
        assert_eq!(
            Polynomial::binomial(4, 2).unwrap().eval(q(1)).unwrap(),
            q(10)
        );
        assert_eq!(p.sub(&p).unwrap(), Polynomial::constant(q(0)));
        assert_eq!(
            Polynomial::var()
                .mul(&Polynomial::var())
                .unwrap()
                .to_string(),
            "J^2"
        );
        assert_eq!(Polynomial::falling(0, 2).unwrap().to_string(), "J^2 - J");
    }

    #[test]
    fn worked_examples() {
        assert_eq!(adjoint_tadpole_enum(&rs("B3"), 2).unwrap(), 3);
        assert_eq!(adjoint_tadpole_enum(&rs("B4"), 7).unwrap(), 220);
        assert_eq!(adjoint_tadpole_enum(&rs("A1"), 3).unwrap(), 2);
        assert_eq!(zero_tadpole_enum(&rs("A2"), 3).unwrap(), 10);
        assert_eq!(zero_tadpole_enum(&rs("B3"), 2).unwrap(), 7);
        assert_eq!(adjoint_tadpole_formula(id("B3"), 5).unwrap(), 45);
        assert_eq!(adjoint_tadpole_formula(id("E6"), 2).unwrap(), 3);
        assert_eq!(adjoint_tadpole_formula(id("A2"), 2).unwrap(), 3);
        assert_eq!(zero_tadpole_formula(id("B3"), 3).unwrap(), 13);
        assert_eq!(zero_tadpole_formula(id("E6"), 0).unwrap(), 1);
        assert_eq!(theta_plus_zero(&rs("B3"), 2).unwrap(), 10);
        assert_eq!(theta_plus_zero(&rs("A1"), 2).unwrap(), 4);
        for name in ["A1", "B3", "E8", "G2"] {
            assert_eq!(zero_tadpole_enum(&rs(name), 0).unwrap(), 1);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(
            adjoint_tadpole_enum(&rs("A2"), 1),
            Err(Error::LevelTooSmall { .. })
        ));
        assert!(matches!(
            adjoint_tadpole_formula(id("B3"), 1),
            Err(Error::LevelTooSmall { .. })
        ));
        for name in ["E7", "E8", "F4", "G2"] {
            assert_eq!(
                adjoint_formula(id(name)),
                Err(Error::NoClosedForm(id(name)))
            );
            assert_eq!(
                zero_tadpole_formula(id(name), 4),
                Err(Error::NoClosedForm(id(name)))
            );
        }
        assert_eq!(
            adjoint_tadpole_formula(id("G2"), 1),
            Err(Error::NoClosedForm(id("G2")))
        );
    }

    #[test]
    fn e6_adjoint_branch_zero_is_negative_at_level_zero() {
        let f = adjoint_formula(id("E6")).unwrap();
        assert_eq!(f.eval_rational(0).unwrap(), q(-1));
        assert!(matches!(f.eval(0), Err(Error::NonIntegral { .. })));
    }

    #[test]
    fn period_is_lcm_of_comarks() {
        for name in ["A1", "A5", "B3", "B6", "C2", "C5", "D4", "D7", "E6"] {
            let period = comark_period(&rs(name));
            assert_eq!(
                adjoint_formula(id(name)).unwrap().period(),
                period,
                "{name}"
            );
            assert_eq!(zero_formula(id(name)).unwrap().period(), period, "{name}");
        }
        assert_eq!(comark_period(&rs("A3")), 1);
        assert_eq!(comark_period(&rs("B4")), 2);
        assert_eq!(comark_period(&rs("E6")), 6);
        assert_eq!(comark_period(&rs("E7")), 12);
        assert_eq!(comark_period(&rs("E8")), 60);
    }

    /// Every branch checked at 5 values of `J` against enumeration.
    #[test]
    fn transcription_five_points_per_branch() {
        for name in ["A1", "A3", "B3", "B5", "C2", "C4", "D4", "D5", "D6", "E6"] {
            let rs = rs(name);
            let adj = adjoint_formula(rs.algebra()).unwrap();
            let zero = zero_formula(rs.algebra()).unwrap();
            for residue in 0..adj.period() {
                let first_j = 2u64.saturating_sub(residue).div_ceil(adj.period());
                for j in first_j..first_j + 5 {
                    let k = adj.period() * j + residue;
                    assert_eq!(
                        adj.eval(k).unwrap(),
                        adjoint_tadpole_enum(&rs, k).unwrap(),
                        "{}",
                        adj.branch_name(k)
                    );
                    assert_eq!(
                        zero.eval(k).unwrap(),
                        zero_tadpole_enum(&rs, k).unwrap(),
                        "{}",
                        zero.branch_name(k)
                    );
                }
            }
        }
    }

    #[test]
    fn d_odd_printed_coefficient_disagrees_with_enumeration() {
        for r in 4..=7i64 {
            let rs = rs(&format!("D{r}"));
            let printed = d_odd_adjoint_branch(r, 4 * i128::from(r)).unwrap();
            for j in 1..4u64 {
                let k = 2 * j + 1;
                let value = printed.eval(q(i128::from(j))).unwrap();
                assert_ne!(
                    value,
                    q(adjoint_tadpole_enum(&rs, k).unwrap() as i128),
                    "D{r} k={k}"
                );
            }
        }
        let printed = d_odd_adjoint_branch(4, 16).unwrap();
        assert_eq!(printed.eval(q(1)).unwrap(), q(16));
        assert_eq!(adjoint_tadpole_enum(&rs("D4"), 3).unwrap(), 24);
    }

    #[test]
    fn b_odd_difference_needs_plus_zero_tadpole() {
        for r in 4..=6 {
            let (b, b1) = (rs(&format!("B{r}")), rs(&format!("B{}", r - 1)));
            for j in 1..5u64 {
                let (k, k_next) = (2 * j + 1, 2 * j + 3);
                let delta = adjoint_tadpole_enum(&b, k_next).unwrap() as i128
                    - adjoint_tadpole_enum(&b, k).unwrap() as i128;
                let next = adjoint_tadpole_enum(&b1, k_next).unwrap() as i128;
                let zero = zero_tadpole_enum(&b1, k).unwrap() as i128;
                assert_eq!(delta, next + zero, "B{r} J={j}");
                assert_ne!(delta, next - zero, "B{r} J={j}");
            }
        }
    }

    #[test]
    fn branch_names() {
        let b = adjoint_formula(id("B4")).unwrap();
        assert_eq!(b.branch_name(7), "B4 k=2J+1");
        assert_eq!(b.branch_name(6), "B4 k=2J");
        assert_eq!(adjoint_formula(id("A2")).unwrap().branch_name(3), "A2 k=J");
        assert_eq!(
            adjoint_formula(id("E6")).unwrap().branch_name(9),
            "E6 k=6J+3"
        );
    }

    #[test]
    fn a_and_c_coincide() {
        for r in 2..=5 {
            for k in 2..=8 {
                let a = rs(&format!("A{r}"));
                let c = rs(&format!("C{r}"));
                assert_eq!(tadpole_stats(&a, k).unwrap(), tadpole_stats(&c, k).unwrap());
            }
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        for name in ["B5", "E6", "F4"] {
            let rs = rs(name);
            for k in [0, 3, 9] {
                assert_eq!(
                    level_stats(rs.finite_comarks(), k).unwrap(),
                    tadpole_stats(&rs, k).unwrap()
                );
            }
        }
    }

    #[test]
    fn oracle_tadpole_matches_enumeration() {
        for name in ["A2", "B3", "C3", "G2"] {
            let rs = rs(name);
            for k in 2..=4 {
                assert_eq!(
                    adjoint_tadpole_oracle(&rs, k).unwrap(),
                    adjoint_tadpole_enum(&rs, k).unwrap(),
                    "{name} {k}"
                );
            }
        }
    }

    #[test]
    fn reports() {
        let r = tadpole(id("B3"), 5, TadpoleMethod::Formula, false).unwrap();
        assert_eq!((r.value, r.method.name()), (45, "formula"));
        assert_eq!(
            tadpole(id("B3"), 5, TadpoleMethod::Oracle, false)
                .unwrap()
                .value,
            45
        );
        assert_eq!(
            tadpole(id("B3"), 2, TadpoleMethod::Enumeration, true)
                .unwrap()
                .value,
            7
        );
    }

    proptest! {
        #[test]
        fn sum_identity(c_num in -20i128..20, c_den in 1i128..5, m in 0u32..6, l1 in 0i128..10, len in 0i128..10) {
            let c = frac(c_num, c_den);
            let l2 = l1 + len;
            let lhs: Q = (l1..=l2).map(|l| falling_power(q(l) + c, m).unwrap()).sum();
            let m1 = q(i128::from(m + 1));
            let rhs = falling_power(q(l2 + 1) + c, m + 1).unwrap() / m1 - falling_power(q(l1) + c, m + 1).unwrap() / m1;
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn forward_difference(c_num in -20i128..20, c_den in 1i128..5, m in 1u32..7, l in -10i128..10) {
            let x = q(l) + frac(c_num, c_den);
            let diff = falling_power(x + q(1), m).unwrap() - falling_power(x, m).unwrap();
            prop_assert_eq!(diff, q(i128::from(m)) * falling_power(x, m - 1).unwrap());
        }
    }
}
