//! Cartan data and root systems of the simple Lie algebras.
//!
//! Conventions used throughout the crate:
//!
//! * Simple roots are indexed `0..rank`; index `i` is the simple root
//!   `alpha_{i+1}` of Bourbaki numbering. The affine node, where it appears,
//!   is stored in front (affine labels are `(l0, l1, ..., lr)`).
//! * The Cartan matrix is `A[i][j] = (alpha_i, alpha_j^vee)`, so row `i` holds
//!   the Dynkin labels of `alpha_i`, and a root `beta = sum_j c_j alpha_j` has
//!   labels `beta_i = sum_j c_j A[j][i]`.
//! * Inner products are normalized so that long roots (and the highest root)
//!   have squared length 2.
//! * G2 takes `alpha_1` long, so that `theta = 2 alpha_1 + 3 alpha_2`.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn from_letter(c: char) -> Option<Self> {
        Some(match c.to_ascii_uppercase() {
            'A' => Family::A,
            'B' => Family::B,
            'C' => Family::C,
            'D' => Family::D,
            'E' => Family::E,
            'F' => Family::F,
            'G' => Family::G,
            _ => return None,
        })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A simple Lie algebra `X_r`: family tag plus rank.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId {
    family: Family,
    rank: usize,
}

impl AlgebraId {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let constraint = match family {
            Family::A if rank < 1 => Some("A_r requires r >= 1"),
            Family::B if rank < 3 => Some("B_r requires r >= 3"),
            Family::C if rank < 2 => Some("C_r requires r >= 2"),
            Family::D if rank < 4 => Some("D_r requires r >= 4"),
            Family::E if !(6..=8).contains(&rank) => Some("E_r requires r in {6, 7, 8}"),
            Family::F if rank != 4 => Some("F only exists at rank 4"),
            Family::G if rank != 2 => Some("G only exists at rank 2"),
            _ => None,
        };
        match constraint {
            Some(constraint) => Err(Error::InvalidRank {
                family: family.letter(),
                rank,
                constraint,
            }),
            None => Ok(Self { family, rank }),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Every valid algebra of rank at most `max_rank`, ordered by family then rank.
    pub fn all_up_to(max_rank: usize) -> Vec<AlgebraId> {
        let families = [
            Family::A,
            Family::B,
            Family::C,
            Family::D,
            Family::E,
            Family::F,
            Family::G,
        ];
        let mut out = Vec::new();
        for family in families {
            for rank in 1..=max_rank {
                if let Ok(id) = AlgebraId::new(family, rank) {
                    out.push(id);
                }
            }
        }
        out
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for AlgebraId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars
            .next()
            .and_then(Family::from_letter)
            .ok_or_else(|| Error::UnknownAlgebra(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::UnknownAlgebra(s.to_string()))?;
        AlgebraId::new(family, rank)
    }
}

/// Cartan matrix, simple-root norms and the quadratic form on weights.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanData {
    cartan: Vec<Vec<i64>>,
    norms: Vec<Rational64>,
    quadratic_form: Vec<Vec<Rational64>>,
    /// `fundamental_in_roots[i][j]`: coefficient of `alpha_j` in `Lambda^i`.
    fundamental_in_roots: Vec<Vec<Rational64>>,
}

impl CartanData {
    pub fn new(algebra: AlgebraId) -> Self {
        let (cartan, norms) = cartan_and_norms(algebra);
        let r = cartan.len();
        let as_rational: Vec<Vec<Rational64>> = cartan
            .iter()
            .map(|row| row.iter().map(|&a| Rational64::from_integer(a)).collect())
            .collect();
        // Row i of A is alpha_i in the Lambda basis, so Lambda = A^{-1} alpha.
        let inverse = invert(&as_rational).expect("Cartan matrices are nonsingular");
        let two = Rational64::from_integer(2);
        let quadratic_form = (0..r)
            .map(|i| (0..r).map(|j| inverse[i][j] * norms[j] / two).collect())
            .collect();
        Self {
            cartan,
            norms,
            quadratic_form,
            fundamental_in_roots: inverse,
        }
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `A[i][j] = (alpha_i, alpha_j^vee)`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Squared lengths `(alpha_i, alpha_i)`, each in {2, 1, 2/3}.
    pub fn norms(&self) -> &[Rational64] {
        &self.norms
    }

    /// `d_j = (alpha_j, alpha_j) / 2`; `A[i][j] * d_j` is symmetric.
    pub fn symmetrizer(&self) -> Vec<Rational64> {
        let two = Rational64::from_integer(2);
        self.norms.iter().map(|n| n / two).collect()
    }

    /// `(Lambda^i, Lambda^j)`.
    pub fn quadratic_form(&self) -> &[Vec<Rational64>] {
        &self.quadratic_form
    }

    /// `(alpha_i, alpha_j)`.
    pub fn root_inner_product(&self, i: usize, j: usize) -> Rational64 {
        Rational64::from_integer(self.cartan[i][j]) * self.norms[j] / Rational64::from_integer(2)
    }

    /// Dynkin labels of `sum_j coords[j] alpha_j`.
    pub fn labels_from_coords(&self, coords: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|i| (0..r).map(|j| coords[j] * self.cartan[j][i]).sum())
            .collect()
    }

    /// Simple-root coordinates of the weight with the given labels (rational in general).
    pub fn coords_from_labels(&self, labels: &[i64]) -> Vec<Rational64> {
        let r = self.rank();
        (0..r)
            .map(|j| {
                (0..r)
                    .map(|i| Rational64::from_integer(labels[i]) * self.fundamental_in_roots[i][j])
                    .sum()
            })
            .collect()
    }

    pub fn inner_product_labels(&self, x: &[i64], y: &[i64]) -> Rational64 {
        let mut acc = Rational64::zero();
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj != 0 {
                    acc += self.quadratic_form[i][j] * Rational64::from_integer(xi * yj);
                }
            }
        }
        acc
    }
}

/// An element of the root system, in simple-root coordinates and Dynkin labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    coords: Vec<i64>,
    labels: Vec<i64>,
}

impl Root {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    pub fn is_positive(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    pub fn to_weight(&self) -> Weight {
        Weight::new(self.labels.clone())
    }

    pub fn negated(&self) -> Root {
        Root {
            coords: self.coords.iter().map(|c| -c).collect(),
            labels: self.labels.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let negative = !self.is_positive();
        if negative {
            write!(f, "-(")?;
        }
        for (i, &c) in self.coords.iter().enumerate() {
            let c = c.abs();
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c == 1 {
                write!(f, "a{}", i + 1)?;
            } else {
                write!(f, "{}a{}", c, i + 1)?;
            }
        }
        if negative {
            write!(f, ")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    algebra: AlgebraId,
    cartan: CartanData,
    positive_roots: Vec<Root>,
    /// Positive roots followed by their negatives, in the same order.
    roots: Vec<Root>,
    highest_root: Root,
    /// `(m_0, m_1, ..., m_r)` with `m_0 = 1`.
    comarks: Vec<i64>,
    weyl_vector: Weight,
    dual_coxeter: i64,
    by_coords: HashMap<Vec<i64>, usize>,
    by_labels: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn build(algebra: AlgebraId) -> Result<Self> {
        let algebra = AlgebraId::new(algebra.family, algebra.rank)?;
        let cartan = CartanData::new(algebra);
        let r = algebra.rank;

        let mut positive_coords = match algebra.family {
            Family::B | Family::C | Family::D => {
                classical_positive_roots(algebra.family, r).expect("classical family")
            }
            _ => reflection_closure(cartan.cartan())
                .into_iter()
                .filter(|c| c.iter().all(|&x| x >= 0))
                .collect(),
        };
        positive_coords.sort();
        positive_coords.dedup();

        let positive_roots: Vec<Root> = positive_coords
            .into_iter()
            .map(|coords| {
                let labels = cartan.labels_from_coords(&coords);
                Root { coords, labels }
            })
            .collect();
        let roots: Vec<Root> = positive_roots
            .iter()
            .cloned()
            .chain(positive_roots.iter().map(Root::negated))
            .collect();

        let by_coords = roots
            .iter()
            .enumerate()
            .map(|(n, root)| (root.coords.clone(), n))
            .collect();
        let by_labels = roots
            .iter()
            .enumerate()
            .map(|(n, root)| (root.labels.clone(), n))
            .collect();

        let highest_root = positive_roots
            .iter()
            .max_by_key(|root| root.height())
            .expect("nonempty root system")
            .clone();

        // theta = sum_i m_i alpha_i^vee = sum_i m_i (2 / |alpha_i|^2) alpha_i.
        let two = Rational64::from_integer(2);
        let mut comarks = vec![1];
        for i in 0..r {
            let m = Rational64::from_integer(highest_root.coords[i]) * cartan.norms()[i] / two;
            assert!(
                m.is_integer(),
                "comark of {algebra} at node {i} is not integral"
            );
            comarks.push(m.to_integer());
        }
        let dual_coxeter = comarks.iter().sum();

        Ok(Self {
            algebra,
            cartan,
            positive_roots,
            roots,
            highest_root,
            comarks,
            weyl_vector: Weight::new(vec![1; r]),
            dual_coxeter,
            by_coords,
            by_labels,
        })
    }

    /// Process-wide cached instance.
    pub fn shared(algebra: AlgebraId) -> Result<Arc<RootSystem>> {
        static CACHE: OnceLock<Mutex<HashMap<AlgebraId, Arc<RootSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(rs) = cache.lock().expect("cache poisoned").get(&algebra) {
            return Ok(Arc::clone(rs));
        }
        let rs = Arc::new(RootSystem::build(algebra)?);
        cache
            .lock()
            .expect("cache poisoned")
            .entry(algebra)
            .or_insert_with(|| Arc::clone(&rs));
        Ok(rs)
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank
    }

    pub fn cartan(&self) -> &CartanData {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive_roots
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn highest_root(&self) -> &Root {
        &self.highest_root
    }

    /// Affine comarks `(m_0 = 1, m_1, ..., m_r)`.
    pub fn comarks(&self) -> &[i64] {
        &self.comarks
    }

    /// Comarks of the finite nodes, `(m_1, ..., m_r)`.
    pub fn finite_comarks(&self) -> &[i64] {
        &self.comarks[1..]
    }

    pub fn weyl_vector(&self) -> &Weight {
        &self.weyl_vector
    }

    pub fn dual_coxeter(&self) -> i64 {
        self.dual_coxeter
    }

    /// Dimension of the adjoint representation, `|roots| + rank`.
    pub fn dimension(&self) -> usize {
        self.roots.len() + self.rank()
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        let mut coords = vec![0; self.rank()];
        coords[i] = 1;
        self.root_by_coords(&coords)
            .expect("simple roots are roots")
    }

    pub fn root_by_coords(&self, coords: &[i64]) -> Option<&Root> {
        self.by_coords.get(coords).map(|&n| &self.roots[n])
    }

    pub fn root_by_labels(&self, labels: &[i64]) -> Option<&Root> {
        self.by_labels.get(labels).map(|&n| &self.roots[n])
    }

    /// Look up the root equal to `nu - mu`, if any.
    pub fn root_between(&self, mu: &Weight, nu: &Weight) -> Option<&Root> {
        let diff: Vec<i64> = nu
            .labels()
            .iter()
            .zip(mu.labels())
            .map(|(a, b)| a - b)
            .collect();
        self.root_by_labels(&diff)
    }

    fn check_weight(&self, x: &Weight) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::AlgebraMismatch {
                algebra: self.algebra,
                expected: self.rank(),
                found: x.rank(),
            });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.rank(),
            });
        }
        Ok(())
    }

    fn check_root(&self, beta: &Root) -> Result<()> {
        match self.root_by_coords(&beta.coords) {
            Some(known) if known.labels == beta.labels => Ok(()),
            _ => Err(Error::NotARoot(beta.coords.clone())),
        }
    }

    pub fn inner_product(&self, x: &Weight, y: &Weight) -> Result<Rational64> {
        self.check_weight(x)?;
        self.check_weight(y)?;
        Ok(self.cartan.inner_product_labels(x.labels(), y.labels()))
    }

    /// `(theta, lambda) = sum_i m_i lambda_i`, exact in integers.
    pub fn theta_pairing(&self, x: &Weight) -> i64 {
        x.labels()
            .iter()
            .zip(self.finite_comarks())
            .map(|(l, m)| l * m)
            .sum()
    }

    fn shifted_coords(&self, beta: &Root, i: usize, step: i64) -> Vec<i64> {
        let mut coords = beta.coords.clone();
        coords[i] += step;
        coords
    }

    /// Largest `u >= 0` with `beta + u alpha_i` a root. The scan passes over
    /// zero, so `d_i[-alpha_i] = 2`.
    pub fn alpha_string_depth(&self, beta: &Root, i: usize) -> Result<u32> {
        self.check_root(beta)?;
        self.check_index(i)?;
        Ok((1..=4)
            .filter(|&u| {
                self.by_coords
                    .contains_key(&self.shifted_coords(beta, i, u as i64))
            })
            .max()
            .unwrap_or(0))
    }

    /// Largest `v >= 0` with `beta - v alpha_i` a root.
    pub fn alpha_string_height(&self, beta: &Root, i: usize) -> Result<u32> {
        self.check_root(beta)?;
        self.check_index(i)?;
        Ok((1..=4)
            .filter(|&v| {
                self.by_coords
                    .contains_key(&self.shifted_coords(beta, i, -(v as i64)))
            })
            .max()
            .unwrap_or(0))
    }

    /// Roots of the alpha_i-string through `beta`, lowest first. The zero
    /// weight of a degenerate string `{alpha_i, 0, -alpha_i}` is skipped.
    pub fn alpha_string(&self, beta: &Root, i: usize) -> Result<Vec<Root>> {
        let down = self.alpha_string_height(beta, i)? as i64;
        let up = self.alpha_string_depth(beta, i)? as i64;
        Ok((-down..=up)
            .filter_map(|s| self.root_by_coords(&self.shifted_coords(beta, i, s)))
            .cloned()
            .collect())
    }

    /// The depth weight: labels `d_j[beta]`.
    pub fn depth_weight(&self, beta: &Root) -> Result<Weight> {
        self.check_root(beta)?;
        let labels = (0..self.rank())
            .map(|j| self.alpha_string_depth(beta, j).map(i64::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(Weight::new(labels))
    }

    /// `r_i lambda = lambda - lambda_i alpha_i`.
    pub fn reflect(&self, i: usize, x: &Weight) -> Weight {
        self.reflect_by(i, x, x.labels()[i])
    }

    /// Shifted action `r_i . lambda = lambda - (lambda_i + 1) alpha_i`.
    pub fn shifted_reflect(&self, i: usize, x: &Weight) -> Weight {
        self.reflect_by(i, x, x.labels()[i] + 1)
    }

    fn reflect_by(&self, i: usize, x: &Weight, times: i64) -> Weight {
        let alpha = &self.cartan.cartan()[i];
        Weight::new(
            x.labels()
                .iter()
                .zip(alpha)
                .map(|(l, a)| l - times * a)
                .collect(),
        )
    }
}

fn cartan_and_norms(algebra: AlgebraId) -> (Vec<Vec<i64>>, Vec<Rational64>) {
    let r = algebra.rank;
    let mut a = vec![vec![0i64; r]; r];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let two = Rational64::from_integer(2);
    let one = Rational64::one();
    let link = |a: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    let norms = match algebra.family {
        Family::A => {
            for i in 1..r {
                link(&mut a, i - 1, i);
            }
            vec![two; r]
        }
        Family::B => {
            for i in 1..r {
                link(&mut a, i - 1, i);
            }
            // alpha_r short: (alpha_{r-1}, alpha_r^vee) = -2
            a[r - 2][r - 1] = -2;
            let mut n = vec![two; r];
            n[r - 1] = one;
            n
        }
        Family::C => {
            for i in 1..r {
                link(&mut a, i - 1, i);
            }
            // alpha_r long: (alpha_r, alpha_{r-1}^vee) = -2
            a[r - 1][r - 2] = -2;
            let mut n = vec![one; r];
            n[r - 1] = two;
            n
        }
        Family::D => {
            for i in 1..r - 1 {
                link(&mut a, i - 1, i);
            }
            link(&mut a, r - 3, r - 1);
            vec![two; r]
        }
        Family::E => {
            // Bourbaki: chain 1-3-4-5-...-r with 2 attached to 4.
            link(&mut a, 0, 2);
            link(&mut a, 1, 3);
            for i in 3..r {
                link(&mut a, i - 1, i);
            }
            vec![two; r]
        }
        Family::F => {
            link(&mut a, 0, 1);
            link(&mut a, 1, 2);
            link(&mut a, 2, 3);
            a[1][2] = -2;
            vec![two, two, one, one]
        }
        Family::G => {
            a[0][1] = -3;
            a[1][0] = -1;
            vec![two, Rational64::new(2, 3)]
        }
    };
    (a, norms)
}

/// Gauss-Jordan inverse over the rationals.
fn invert(m: &[Vec<Rational64>]) -> Option<Vec<Vec<Rational64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational64>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut row = row.clone();
            row.extend((0..n).map(|j| {
                if i == j {
                    Rational64::one()
                } else {
                    Rational64::zero()
                }
            }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col];
                let pivot_row = a[col].clone();
                for (x, v) in a[row].iter_mut().zip(pivot_row) {
                    *x -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// All roots (both signs) as the orbit of the simple roots under the simple
/// reflections, in simple-root coordinates.
pub fn reflection_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let r = cartan.len();
    let labels = |c: &[i64]| -> Vec<i64> {
        (0..r)
            .map(|i| (0..r).map(|j| c[j] * cartan[j][i]).sum())
            .collect()
    };
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let mut c = vec![0; r];
        c[i] = 1;
        seen.insert(c.clone());
        queue.push_back(c);
    }
    while let Some(c) = queue.pop_front() {
        let l = labels(&c);
        for i in 0..r {
            let mut next = c.clone();
            next[i] -= l[i];
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Explicit positive-root families for the classical series, in simple-root
/// coordinates. `None` for the exceptional families.
pub fn classical_positive_roots(family: Family, r: usize) -> Option<Vec<Vec<i64>>> {
    // sum of alpha_l for l in [from, to) with the given coefficient, 1-based
    let add = |c: &mut Vec<i64>, from: usize, to: usize, k: i64| {
        for l in from..to {
            c[l - 1] += k;
        }
    };
    let mut out = Vec::new();
    match family {
        Family::A => {
            // L_{m,n} = alpha_m + ... + alpha_n
            for m in 1..=r {
                for n in m..=r {
                    let mut c = vec![0; r];
                    add(&mut c, m, n + 1, 1);
                    out.push(c);
                }
            }
        }
        Family::B => {
            for m in 1..=r {
                // L_m = alpha_m + ... + alpha_r
                let mut c = vec![0; r];
                add(&mut c, m, r + 1, 1);
                out.push(c);
                for n in m + 1..=r {
                    // M_{m,n} = alpha_m + ... + alpha_{n-1}
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    out.push(c);
                    // N_{m,n} = M_{m,n} + 2(alpha_n + ... + alpha_r)
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    add(&mut c, n, r + 1, 2);
                    out.push(c);
                }
            }
        }
        Family::C => {
            for m in 1..=r {
                // L_m = alpha_m + ... + alpha_r
                let mut c = vec![0; r];
                add(&mut c, m, r + 1, 1);
                out.push(c);
                for n in m + 1..=r {
                    // M_{m,n} = alpha_m + ... + alpha_{n-1}
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    out.push(c);
                }
                for n in m..r {
                    // N_{m,n} = alpha_m..alpha_{n-1} + 2(alpha_n..alpha_{r-1}) + alpha_r
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    add(&mut c, n, r, 2);
                    c[r - 1] += 1;
                    out.push(c);
                }
            }
        }
        Family::D => {
            for m in 1..r {
                // L_m = alpha_m + ... + alpha_{r-2} + alpha_r
                let mut c = vec![0; r];
                add(&mut c, m, r - 1, 1);
                c[r - 1] += 1;
                out.push(c);
                for n in m + 1..=r {
                    // M_{m,n} = alpha_m + ... + alpha_{n-1}
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    out.push(c);
                }
                for n in m + 1..r {
                    // N_{m,n} = alpha_m..alpha_{n-1} + 2(alpha_n..alpha_{r-2}) + alpha_{r-1} + alpha_r
                    let mut c = vec![0; r];
                    add(&mut c, m, n, 1);
                    add(&mut c, n, r - 1, 2);
                    c[r - 2] += 1;
                    c[r - 1] += 1;
                    out.push(c);
                }
            }
        }
        _ => return None,
    }
    out.sort();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(name: &str) -> RootSystem {
        RootSystem::build(name.parse().unwrap()).unwrap()
    }

    fn root<'a>(rs: &'a RootSystem, coords: &[i64]) -> &'a Root {
        rs.root_by_coords(coords).unwrap()
    }

    #[test]
    fn parses_names() {
        assert_eq!("a3".parse::<AlgebraId>().unwrap().to_string(), "A3");
        assert_eq!(" E6 ".parse::<AlgebraId>().unwrap().rank(), 6);
        assert!(matches!(
            "B2".parse::<AlgebraId>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            "E9".parse::<AlgebraId>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            "G3".parse::<AlgebraId>(),
            Err(Error::InvalidRank { .. })
        ));
        assert!(matches!(
            "X2".parse::<AlgebraId>(),
            Err(Error::UnknownAlgebra(_))
        ));
        assert!(matches!(
            "A".parse::<AlgebraId>(),
            Err(Error::UnknownAlgebra(_))
        ));
    }

    #[test]
    fn a2_roots() {
        let a2 = rs("A2");
        let coords: Vec<_> = a2
            .positive_roots()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(a2.highest_root().labels(), &[1, 1]);
    }

    #[test]
    fn g2_conventions() {
        let g2 = rs("G2");
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.highest_root().coords(), &[2, 3]);
        assert_eq!(g2.highest_root().labels(), &[1, 0]);
        // alpha_1 long
        assert_eq!(g2.cartan().norms()[0], Rational64::from_integer(2));
        assert_eq!(g2.cartan().norms()[1], Rational64::new(2, 3));
        assert_eq!(g2.comarks(), &[1, 2, 1]);
        assert_eq!(g2.dual_coxeter(), 4);
    }

    #[test]
    fn comarks_and_dual_coxeter() {
        assert_eq!(rs("B3").comarks(), &[1, 1, 2, 1]);
        assert_eq!(rs("C3").comarks(), &[1, 1, 1, 1]);
        assert_eq!(rs("D5").comarks(), &[1, 1, 2, 2, 1, 1]);
        assert_eq!(rs("E6").comarks(), &[1, 1, 2, 2, 3, 2, 1]);
        assert_eq!(rs("F4").comarks(), &[1, 2, 3, 2, 1]);
        for (name, h) in [
            ("A4", 5),
            ("G2", 4),
            ("F4", 9),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("B4", 7),
            ("C4", 5),
            ("D6", 10),
        ] {
            assert_eq!(rs(name).dual_coxeter(), h, "{name}");
        }
    }

    #[test]
    fn inner_products() {
        let a1 = rs("A1");
        let l = Weight::new(vec![1]);
        assert_eq!(a1.inner_product(&l, &l).unwrap(), Rational64::new(1, 2));
        let g2 = rs("G2");
        let theta = g2.highest_root().to_weight();
        assert_eq!(
            g2.inner_product(&theta, &Weight::new(vec![1, 0])).unwrap(),
            Rational64::from_integer(2)
        );
        assert!(matches!(
            g2.inner_product(&theta, &Weight::new(vec![1])),
            Err(Error::AlgebraMismatch { .. })
        ));
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn quadratic_form_is_symmetric() {
        for id in AlgebraId::all_up_to(8) {
            let rs = RootSystem::build(id).unwrap();
            let q = rs.cartan().quadratic_form();
            for i in 0..rs.rank() {
                for j in 0..rs.rank() {
                    assert_eq!(q[i][j], q[j][i], "{id}");
                    assert_eq!(
                        rs.cartan().root_inner_product(i, j),
                        rs.cartan().root_inner_product(j, i),
                        "{id}"
                    );
                }
            }
        }
    }

    #[test]
    fn strings_g2() {
        let g2 = rs("G2");
        let b = root(&g2, &[1, 1]).clone();
        assert_eq!(g2.alpha_string_depth(&b, 1).unwrap(), 2);
        assert_eq!(g2.alpha_string_height(&b, 1).unwrap(), 1);
        assert_eq!(g2.alpha_string_depth(&b, 0).unwrap(), 0);
        assert_eq!(g2.depth_weight(&b).unwrap().labels(), &[0, 2]);
        let string: Vec<_> = g2
            .alpha_string(&b, 1)
            .unwrap()
            .iter()
            .map(|r| r.coords().to_vec())
            .collect();
        assert_eq!(string, vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]);
    }

    #[test]
    fn strings_through_simple_roots() {
        let b3 = rs("B3");
        for i in 0..3 {
            let a = b3.simple_root(i).clone();
            assert_eq!(b3.alpha_string_height(&a, i).unwrap(), 2);
            assert_eq!(b3.alpha_string_depth(&a.negated(), i).unwrap(), 2);
        }
        let a2 = rs("A2");
        assert_eq!(
            a2.depth_weight(a2.simple_root(0)).unwrap().labels(),
            &[0, 1]
        );
        assert_eq!(
            a2.depth_weight(a2.highest_root()).unwrap().labels(),
            &[0, 0]
        );
    }

    #[test]
    fn not_a_root() {
        let a2 = rs("A2");
        let fake = Root {
            coords: vec![2, 1],
            labels: vec![3, 0],
        };
        assert!(matches!(
            a2.alpha_string_depth(&fake, 0),
            Err(Error::NotARoot(_))
        ));
        assert!(matches!(a2.depth_weight(&fake), Err(Error::NotARoot(_))));
    }

    #[test]
    fn shifted_reflections() {
        let a1 = rs("A1");
        assert_eq!(a1.shifted_reflect(0, &Weight::new(vec![2])).labels(), &[-4]);
        let a3 = rs("A3");
        let w = Weight::new(vec![3, -1, 2]);
        assert_eq!(a3.shifted_reflect(1, &w), w);
        let g2 = rs("G2");
        let mu = Weight::new(vec![0, 1]);
        // mu - 2 alpha_2, alpha_2 = (-1, 2)
        assert_eq!(g2.shifted_reflect(1, &mu).labels(), &[2, -3]);
    }

    #[test]
    fn classical_families_match_closure() {
        for family in [Family::A, Family::B, Family::C, Family::D] {
            for r in 1..=8 {
                let Ok(id) = AlgebraId::new(family, r) else {
                    continue;
                };
                let cartan = CartanData::new(id);
                let closure: Vec<_> = reflection_closure(cartan.cartan())
                    .into_iter()
                    .filter(|c| c.iter().all(|&x| x >= 0))
                    .collect();
                let families = classical_positive_roots(family, r).unwrap();
                assert_eq!(families, closure, "{id}");
            }
        }
    }

    #[test]
    fn root_counts() {
        let expected = |id: AlgebraId| -> usize {
            let r = id.rank();
            match id.family() {
                Family::A => r * (r + 1) / 2,
                Family::B | Family::C => r * r,
                Family::D => r * (r - 1),
                Family::E => [36, 63, 120][r - 6],
                Family::F => 24,
                Family::G => 6,
            }
        };
        for id in AlgebraId::all_up_to(8) {
            let rs = RootSystem::build(id).unwrap();
            assert_eq!(rs.positive_roots().len(), expected(id), "{id}");
            assert_eq!(rs.roots().len(), 2 * rs.positive_roots().len());
        }
        assert_eq!(rs("E8").dimension(), 248);
        assert_eq!(rs("B3").dimension(), 21);
    }

    #[test]
    fn shared_cache_returns_same_instance() {
        let id: AlgebraId = "F4".parse().unwrap();
        let a = RootSystem::shared(id).unwrap();
        let b = RootSystem::shared(id).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
    }
}
