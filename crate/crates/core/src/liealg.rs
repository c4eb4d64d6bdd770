//! Finite-dimensional simple Lie algebras: Cartan data, roots, Weyl groups,
//! the center, and Dynkin diagram automorphisms.
//!
//! Conventions: `cartan[i][j] = <alpha_i^vee, alpha_j>`, so the Dynkin labels
//! of the simple root `alpha_j` form column `j`. Weights are stored in the
//! Dynkin (fundamental weight) basis, roots in the simple-root basis.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, q, Q};

pub const DEFAULT_WEYL_CAP: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LieError {
    #[error("invalid algebra {series}{rank}: {reason}")]
    InvalidAlgebra {
        series: char,
        rank: usize,
        reason: &'static str,
    },
    #[error("cannot parse algebra spec {0:?} (expected e.g. \"A1\" or \"D4\")")]
    Parse(String),
    #[error("Weyl group exceeds cap {cap} (enumerated {partial} elements before stopping)")]
    WeylCap { cap: usize, partial: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Series {
    pub fn letter(self) -> char {
        match self {
            Series::A => 'A',
            Series::B => 'B',
            Series::C => 'C',
            Series::D => 'D',
            Series::E => 'E',
            Series::F => 'F',
            Series::G => 'G',
        }
    }

    pub fn from_letter(c: char) -> Option<Series> {
        Some(match c.to_ascii_uppercase() {
            'A' => Series::A,
            'B' => Series::B,
            'C' => Series::C,
            'D' => Series::D,
            'E' => Series::E,
            'F' => Series::F,
            'G' => Series::G,
            _ => return None,
        })
    }

    pub const ALL: [Series; 7] = [
        Series::A,
        Series::B,
        Series::C,
        Series::D,
        Series::E,
        Series::F,
        Series::G,
    ];
}

/// A `(series, rank)` pair such as `A1` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub series: Series,
    pub rank: usize,
}

impl AlgebraSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self, LieError> {
        let reason = match series {
            Series::A if rank < 1 => Some("A needs rank >= 1"),
            Series::B if rank < 2 => Some("B needs rank >= 2"),
            Series::C if rank < 2 => Some("C needs rank >= 2"),
            Series::D if rank < 3 => Some("D needs rank >= 3"),
            Series::E if !(6..=8).contains(&rank) => Some("E needs rank 6, 7 or 8"),
            Series::F if rank != 4 => Some("F needs rank 4"),
            Series::G if rank != 2 => Some("G needs rank 2"),
            _ => None,
        };
        match reason {
            Some(reason) => Err(LieError::InvalidAlgebra {
                series: series.letter(),
                rank,
                reason,
            }),
            None => Ok(AlgebraSpec { series, rank }),
        }
    }

    pub fn dimension(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n + 2),
            Series::B | Series::C => n * (2 * n + 1),
            Series::D => n * (2 * n - 1),
            Series::E => match n {
                6 => 78,
                7 => 133,
                _ => 248,
            },
            Series::F => 52,
            Series::G => 14,
        }
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.series.letter(), self.rank)
    }
}

impl FromStr for AlgebraSpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut chars = s.chars();
        let series = chars
            .next()
            .and_then(Series::from_letter)
            .ok_or_else(|| LieError::Parse(s.to_string()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| LieError::Parse(s.to_string()))?;
        AlgebraSpec::new(series, rank)
    }
}

fn cartan_matrix(spec: AlgebraSpec) -> Vec<Vec<i64>> {
    let n = spec.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    match spec.series {
        Series::A => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1, -1, -1);
            }
        }
        Series::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
        }
        Series::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
        }
        Series::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Series::E => {
            // Bourbaki: 1-3-4-5-6(-7-8), node 2 attached to 4
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Series::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
        }
        Series::G => {
            link(0, 1, -3, -1);
        }
    }
    a
}

/// Smallest positive integers `d` with `d_i a_ij = d_j a_ji`.
pub fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::one());
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let di = d[i].unwrap();
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && d[j].is_none() {
                    d[j] = Some(di * q(cartan[i][j]) / q(cartan[j][i]));
                    queue.push_back(j);
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let lcm = d
        .iter()
        .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (*x * q(lcm)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
    ints.into_iter().map(|x| x / g).collect()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleLieAlgebra {
    pub spec: AlgebraSpec,
    pub cartan: Vec<Vec<i64>>,
    pub symmetrizer: Vec<i64>,
    /// `(alpha_i, alpha_i) / 2`, equal to 1 on long roots.
    pub half_root_lengths: Vec<Q>,
    /// Inner product on weights in the Dynkin basis.
    pub metric: Vec<Vec<Q>>,
    pub dual_coxeter: i64,
    pub coxeter: i64,
    pub weyl_vector: Vec<i64>,
    /// Positive roots in the simple-root basis, sorted by height then
    /// lexicographically.
    pub positive_roots: Vec<Vec<i64>>,
    pub highest_root: Vec<i64>,
    pub marks: Vec<i64>,
    pub comarks: Vec<i64>,
}

/// Builds the Cartan data of a simple Lie algebra.
pub fn build_algebra(series: Series, rank: usize) -> Result<SimpleLieAlgebra, LieError> {
    let spec = AlgebraSpec::new(series, rank)?;
    Ok(SimpleLieAlgebra::new(spec))
}

impl SimpleLieAlgebra {
    pub fn new(spec: AlgebraSpec) -> SimpleLieAlgebra {
        let cartan = cartan_matrix(spec);
        let n = spec.rank;
        let symmetrizer = symmetrizer(&cartan);
        let dmax = *symmetrizer.iter().max().unwrap();
        let half_root_lengths: Vec<Q> = symmetrizer.iter().map(|&d| Q::new(d, dmax)).collect();
        let inv = exact::inverse(&exact::int_to_q(&cartan)).expect("Cartan matrix is invertible");
        // (w_i, w_l) = D_i (A^-1)_{il}
        let metric: Vec<Vec<Q>> = (0..n)
            .map(|i| (0..n).map(|l| half_root_lengths[i] * inv[i][l]).collect())
            .collect();
        let positive_roots = root_closure(&cartan);
        let highest_root = positive_roots.last().unwrap().clone();
        let marks = highest_root.clone();
        let comarks: Vec<i64> = (0..n)
            .map(|i| {
                let c = q(marks[i]) * half_root_lengths[i];
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        let dual_coxeter = 1 + comarks.iter().sum::<i64>();
        let coxeter = 1 + marks.iter().sum::<i64>();
        SimpleLieAlgebra {
            spec,
            cartan,
            symmetrizer,
            half_root_lengths,
            metric,
            dual_coxeter,
            coxeter,
            weyl_vector: vec![1; n],
            positive_roots,
            highest_root,
            marks,
            comarks,
        }
    }

    pub fn rank(&self) -> usize {
        self.spec.rank
    }

    pub fn dimension(&self) -> usize {
        self.spec.dimension()
    }

    /// Dynkin labels of a root given in the simple-root basis.
    pub fn root_to_weight(&self, root: &[i64]) -> Vec<i64> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.cartan[i][j] * root[j]).sum())
            .collect()
    }

    pub fn inner(&self, a: &[Q], b: &[Q]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.metric[i][j] * b[j];
            }
        }
        s
    }

    pub fn inner_int(&self, a: &[i64], b: &[i64]) -> Q {
        let a: Vec<Q> = a.iter().map(|&x| q(x)).collect();
        let b: Vec<Q> = b.iter().map(|&x| q(x)).collect();
        self.inner(&a, &b)
    }

    /// Inner product of two roots given in the simple-root basis.
    pub fn root_inner(&self, a: &[i64], b: &[i64]) -> Q {
        let n = self.rank();
        let mut s = Q::zero();
        for i in 0..n {
            for j in 0..n {
                if a[i] != 0 && b[j] != 0 {
                    // (alpha_i, alpha_j) = D_i a_ij
                    s += q(a[i] * b[j] * self.cartan[i][j]) * self.half_root_lengths[i];
                }
            }
        }
        s
    }

    /// `(lambda, theta^vee)`, the level needed to integrate `lambda`.
    pub fn level_of(&self, lambda: &[i64]) -> i64 {
        lambda.iter().zip(&self.comarks).map(|(l, a)| l * a).sum()
    }

    /// Acts with the simple reflection `s_i` on Dynkin labels.
    pub fn reflect_weight(&self, i: usize, lambda: &mut [i64]) {
        let li = lambda[i];
        if li == 0 {
            return;
        }
        for (j, x) in lambda.iter_mut().enumerate() {
            *x -= li * self.cartan[j][i];
        }
    }

    /// Untwisted affine Cartan matrix with the affine node at index 0.
    pub fn affine_cartan(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let theta_labels = self.root_to_weight(&self.highest_root);
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        a[0][0] = 2;
        for j in 0..n {
            a[j + 1][0] = -theta_labels[j];
            let a0j = -q(theta_labels[j]) * self.half_root_lengths[j];
            assert!(a0j.is_integer());
            a[0][j + 1] = a0j.to_integer();
            for i in 0..n {
                a[i + 1][j + 1] = self.cartan[i][j];
            }
        }
        a
    }

    /// Affine comarks `a_0^vee = 1, a_i^vee`.
    pub fn affine_comarks(&self) -> Vec<i64> {
        let mut v = vec![1];
        v.extend_from_slice(&self.comarks);
        v
    }

    /// Affine Dynkin labels `(k - (lambda, theta^vee), lambda_1, ..)`.
    pub fn affine_labels(&self, k: i64, lambda: &[i64]) -> Vec<i64> {
        let mut v = vec![k - self.level_of(lambda)];
        v.extend_from_slice(lambda);
        v
    }
}

fn root_closure(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cartan.len();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        for i in 0..n {
            let label: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
            let mut r = beta.clone();
            r[i] -= label;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
            }
        }
    }
    let mut roots: Vec<Vec<i64>> = seen.into_iter().collect();
    roots.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    roots
}

/// A Weyl group element: a reduced word (applied right to left), its sign,
/// and its matrix acting on Dynkin labels (`new = matrix * old`).
#[derive(Debug, Clone)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub sign: i64,
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn act(&self, lambda: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(lambda).map(|(a, b)| a * b).sum())
            .collect()
    }
}

/// Breadth-first enumeration of the Weyl group over reduced words.
pub struct WeylTraversal<'a> {
    alg: &'a SimpleLieAlgebra,
    cap: usize,
    seen: HashSet<Vec<i64>>,
    queue: VecDeque<WeylElement>,
    emitted: usize,
    failed: bool,
}

impl Iterator for WeylTraversal<'_> {
    type Item = Result<WeylElement, LieError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        let w = self.queue.pop_front()?;
        if self.emitted == self.cap {
            self.failed = true;
            return Some(Err(LieError::WeylCap {
                cap: self.cap,
                partial: self.emitted,
            }));
        }
        let n = self.alg.rank();
        for i in 0..n {
            // s_i * w: apply the reflection to every column image
            let mut m = w.matrix.clone();
            for col in 0..n {
                let mut v: Vec<i64> = (0..n).map(|r| m[r][col]).collect();
                self.alg.reflect_weight(i, &mut v);
                for r in 0..n {
                    m[r][col] = v[r];
                }
            }
            let key = apply(&m, &self.alg.weyl_vector);
            if self.seen.insert(key) {
                let mut word = vec![i];
                word.extend_from_slice(&w.word);
                self.queue.push_back(WeylElement {
                    word,
                    sign: -w.sign,
                    matrix: m,
                });
            }
        }
        self.emitted += 1;
        Some(Ok(w))
    }
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn weyl_traverse(alg: &SimpleLieAlgebra, cap: usize) -> WeylTraversal<'_> {
    assert!(cap >= 1, "Weyl cap must be positive");
    let n = alg.rank();
    let id: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut seen = HashSet::new();
    seen.insert(alg.weyl_vector.clone());
    WeylTraversal {
        alg,
        cap,
        seen,
        queue: VecDeque::from([WeylElement {
            word: vec![],
            sign: 1,
            matrix: id,
        }]),
        emitted: 0,
        failed: false,
    }
}

/// Collects the whole Weyl group, failing if it exceeds `cap`.
pub fn weyl_group(alg: &SimpleLieAlgebra, cap: usize) -> Result<Vec<WeylElement>, LieError> {
    weyl_traverse(alg, cap).collect()
}

/// Order of the Weyl group by the product of `(1 + exponent)` over the
/// degrees, used to reject oversized groups before enumerating them.
pub fn weyl_order(spec: AlgebraSpec) -> u128 {
    let n = spec.rank as u128;
    let fact = |m: u128| (1..=m).product::<u128>();
    match spec.series {
        Series::A => fact(n + 1),
        Series::B | Series::C => (1u128 << n) * fact(n),
        Series::D => (1u128 << (n - 1)) * fact(n),
        Series::E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        Series::F => 1152,
        Series::G => 12,
    }
}

/// `L_w^vee / L^vee` as a product of cyclic groups.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CenterGroup {
    /// Orders of the cyclic factors (all > 1), each dividing the next.
    pub factors: Vec<i64>,
    /// One coweight-lattice representative per factor, in the fundamental
    /// coweight basis.
    pub generators: Vec<Vec<i64>>,
}

impl CenterGroup {
    pub fn order(&self) -> i64 {
        self.factors.iter().product()
    }
}

/// Smith normal form decomposition of the coweight lattice modulo the
/// coroot lattice. Row `j` of the Cartan matrix is `alpha_j^vee` in the
/// fundamental coweight basis.
pub fn center_group(alg: &SimpleLieAlgebra) -> CenterGroup {
    let smith = exact::smith_normal_form(&alg.cartan);
    // U A V = D, so Z^n / rowspace(A) is Z^n / Z^n D after x -> x V.
    let vinv = exact::unimodular_inverse(&smith.v);
    let mut factors = Vec::new();
    let mut generators = Vec::new();
    for (i, &d) in smith.diagonal.iter().enumerate() {
        if d > 1 {
            factors.push(d);
            generators.push(vinv[i].clone());
        }
    }
    CenterGroup {
        factors,
        generators,
    }
}

/// Number of elements `g` with `g^m = 1`, for all `m` up to `up_to`; two
/// finite abelian groups are isomorphic iff these counts agree.
pub fn cyclic_signature(factors: &[i64], up_to: i64) -> Vec<i64> {
    (1..=up_to)
        .map(|m| factors.iter().map(|&d| num_integer::gcd(d, m)).product())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramAutomorphism {
    /// Node `i` is sent to `perm[i]`; node 0 is the affine node when
    /// `affine` is set.
    pub perm: Vec<usize>,
    pub order: usize,
    pub affine: bool,
}

impl DiagramAutomorphism {
    pub fn new(perm: Vec<usize>, affine: bool) -> Self {
        let order = permutation_order(&perm);
        DiagramAutomorphism {
            perm,
            order,
            affine,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn preserves(&self, cartan: &[Vec<i64>]) -> bool {
        let n = cartan.len();
        self.perm.len() == n
            && (0..n).all(|i| (0..n).all(|j| cartan[self.perm[i]][self.perm[j]] == cartan[i][j]))
    }

    pub fn compose(&self, other: &DiagramAutomorphism) -> DiagramAutomorphism {
        // (self o other)(i) = self(other(i))
        DiagramAutomorphism::new(
            other.perm.iter().map(|&i| self.perm[i]).collect(),
            self.affine,
        )
    }

    pub fn power(&self, m: usize) -> DiagramAutomorphism {
        let n = self.perm.len();
        let mut p: Vec<usize> = (0..n).collect();
        for _ in 0..m {
            p = p.iter().map(|&i| self.perm[i]).collect();
        }
        DiagramAutomorphism::new(p, self.affine)
    }

    /// Node orbits, each listed as `i, w(i), w^2(i), ...` starting from its
    /// smallest element; orbits sorted by that element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.perm.len();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for i in 0..n {
            if done[i] {
                continue;
            }
            let mut orbit = vec![i];
            done[i] = true;
            let mut j = self.perm[i];
            while j != i {
                done[j] = true;
                orbit.push(j);
                j = self.perm[j];
            }
            out.push(orbit);
        }
        out
    }
}

pub fn permutation_order(perm: &[usize]) -> usize {
    let n = perm.len();
    let mut order = 1usize;
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !done[j] {
            done[j] = true;
            j = perm[j];
            len += 1;
        }
        order = num_integer::lcm(order, len);
    }
    order
}

/// All node permutations preserving the Cartan matrix.
pub fn cartan_automorphisms(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn extend(
        cartan: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = cartan.len();
        let i = perm.len();
        if i == n {
            out.push(perm.clone());
            return;
        }
        for t in 0..n {
            if used[t] || cartan[t][t] != cartan[i][i] {
                continue;
            }
            let ok = (0..i).all(|j| {
                cartan[t][perm[j]] == cartan[i][j] && cartan[perm[j]][t] == cartan[j][i]
            });
            if ok {
                used[t] = true;
                perm.push(t);
                extend(cartan, perm, used, out);
                perm.pop();
                used[t] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(
        cartan,
        &mut Vec::new(),
        &mut vec![false; cartan.len()],
        &mut out,
    );
    out
}

/// Diagram automorphisms of the finite or untwisted affine Dynkin diagram.
pub fn diagram_automorphisms(alg: &SimpleLieAlgebra, affine: bool) -> Vec<DiagramAutomorphism> {
    let cartan = if affine {
        alg.affine_cartan()
    } else {
        alg.cartan.clone()
    };
    cartan_automorphisms(&cartan)
        .into_iter()
        .map(|p| DiagramAutomorphism::new(p, affine))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(s: &str) -> SimpleLieAlgebra {
        SimpleLieAlgebra::new(s.parse().unwrap())
    }

    #[test]
    fn a1_basics() {
        let a = alg("A1");
        assert_eq!(a.cartan, vec![vec![2]]);
        assert_eq!(a.dual_coxeter, 2);
        assert_eq!(a.positive_roots.len(), 1);
        assert_eq!(a.metric[0][0], Q::new(1, 2));
    }

    #[test]
    fn dual_coxeter_numbers() {
        let expect = [
            ("A3", 4),
            ("B3", 5),
            ("C3", 4),
            ("D4", 6),
            ("E6", 12),
            ("E7", 18),
            ("E8", 30),
            ("F4", 9),
            ("G2", 4),
        ];
        for (s, h) in expect {
            assert_eq!(alg(s).dual_coxeter, h, "{s}");
        }
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!("E9".parse::<AlgebraSpec>().is_err());
        assert!("B1".parse::<AlgebraSpec>().is_err());
        assert!("X3".parse::<AlgebraSpec>().is_err());
        assert!(build_algebra(Series::B, 17).is_ok());
    }

    #[test]
    fn symmetrizer_condition() {
        for s in ["B3", "C4", "F4", "G2", "E7"] {
            let a = alg(s);
            let n = a.rank();
            for i in 0..n {
                for j in 0..n {
                    assert_eq!(
                        a.symmetrizer[i] * a.cartan[i][j],
                        a.symmetrizer[j] * a.cartan[j][i]
                    );
                }
            }
        }
    }

    #[test]
    fn highest_root_has_length_two() {
        for s in ["A4", "B4", "C3", "D5", "E6", "F4", "G2"] {
            let a = alg(s);
            assert_eq!(a.root_inner(&a.highest_root, &a.highest_root), q(2), "{s}");
        }
    }

    #[test]
    fn weyl_orders() {
        for (s, n) in [("A2", 6), ("B2", 8), ("G2", 12), ("B4", 384), ("F4", 1152)] {
            let a = alg(s);
            let w = weyl_group(&a, DEFAULT_WEYL_CAP).unwrap();
            assert_eq!(w.len(), n, "{s}");
            assert_eq!(w.len() as u128, weyl_order(a.spec));
            assert_eq!(w.iter().map(|e| e.sign).sum::<i64>(), 0);
        }
    }

    #[test]
    fn weyl_cap_reports_partial_count() {
        let a = alg("A3");
        let err = weyl_group(&a, 10).unwrap_err();
        assert_eq!(err, LieError::WeylCap { cap: 10, partial: 10 });
    }

    #[test]
    fn centers() {
        assert_eq!(center_group(&alg("A1")).factors, vec![2]);
        assert_eq!(center_group(&alg("A2")).factors, vec![3]);
        assert_eq!(center_group(&alg("D4")).factors, vec![2, 2]);
        assert_eq!(center_group(&alg("D5")).factors, vec![4]);
        assert!(center_group(&alg("E8")).factors.is_empty());
    }

    #[test]
    fn finite_automorphism_counts() {
        assert_eq!(diagram_automorphisms(&alg("A1"), false).len(), 1);
        assert_eq!(diagram_automorphisms(&alg("A2"), false).len(), 2);
        assert_eq!(diagram_automorphisms(&alg("D4"), false).len(), 6);
        assert_eq!(diagram_automorphisms(&alg("E6"), false).len(), 2);
    }

    #[test]
    fn affine_automorphism_counts() {
        // dihedral group of the (n+1)-cycle for A_n, n >= 2
        assert_eq!(diagram_automorphisms(&alg("A1"), true).len(), 2);
        assert_eq!(diagram_automorphisms(&alg("A3"), true).len(), 8);
        assert_eq!(diagram_automorphisms(&alg("D4"), true).len(), 24);
        assert_eq!(diagram_automorphisms(&alg("E6"), true).len(), 6);
        assert_eq!(diagram_automorphisms(&alg("E8"), true).len(), 1);
    }
}
