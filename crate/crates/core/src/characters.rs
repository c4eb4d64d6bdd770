//! Truncated q-series characters: Verma characters, twining characters of
//! Verma modules under affine diagram automorphisms, and specialized
//! irreducible characters from the Weyl–Kac formula.
//!
//! Twining characters are computed from the Lie algebra itself: the
//! negative part of the affine algebra is generated inside a loop algebra
//! (simply-laced algebras in the Frenkel–Kac basis) and the automorphism's
//! trace is taken on each graded piece. Orbit-algebra Verma characters come
//! from counting affine roots, so the two sides share no code.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{self, OrbitAlgebraDescriptor, OrbitKind};
use crate::exact::{self, q, Q};
use crate::liealg::{DiagramAutomorphism, SimpleLieAlgebra};
use crate::modular::{Label, ModularData, C64};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CharacterError {
    #[error("{0} is not simply laced; the loop-algebra model needs the Frenkel–Kac basis")]
    NotSimplyLaced(String),
    #[error("the automorphism does not fix the weight {0:?}")]
    NotFixed(Vec<i64>),
    #[error("automorphism {0:?} is not a symmetry of the affine diagram")]
    NotAnAutomorphism(Vec<usize>),
    #[error("orbit algebra of kind {0} has no Verma character model")]
    Unsupported(String),
    #[error("coefficient at grade {grade} is not an integer: {value}")]
    NonIntegral { grade: usize, value: String },
}

/// How grades are assigned to the negative generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Grading {
    /// `L_0` grading: modes `x t^{-n}` have grade `n`; the grade-0 finite
    /// lowering operators are not counted.
    Homogeneous,
    /// Every simple root has degree 1; invariant under all diagram
    /// automorphisms of the affine diagram.
    Principal,
}

/// `q^leading * sum_n coeffs[n] q^n`, truncated at grade `coeffs.len() - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QSeries {
    #[serde(with = "rational_string")]
    pub leading: Q,
    pub coeffs: Vec<i64>,
}

mod rational_string {
    use super::Q;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl QSeries {
    pub fn truncation(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// Value at `q = exp(2 pi i tau)` for `tau = i * y`.
    pub fn evaluate(&self, y: f64) -> f64 {
        let two_pi = 2.0 * std::f64::consts::PI;
        let l = exact::to_f64(self.leading);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(n, &c)| c as f64 * (-two_pi * y * (n as f64 + l)).exp())
            .sum()
    }
}

fn to_integers(series: &[Q]) -> Result<Vec<i64>, CharacterError> {
    series
        .iter()
        .enumerate()
        .map(|(grade, v)| {
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(CharacterError::NonIntegral {
                    grade,
                    value: v.to_string(),
                })
            }
        })
        .collect()
}

/// `exp(f)` for a power series with `f(0) = 0`, truncated at `n`.
fn series_exp(f: &[Q], n: usize) -> Vec<Q> {
    // g' = f' g
    let mut g = vec![Q::zero(); n + 1];
    g[0] = Q::one();
    for m in 1..=n {
        let mut acc = Q::zero();
        for k in 1..=m {
            if k < f.len() && !f[k].is_zero() {
                acc += q(k as i64) * f[k] * g[m - k];
            }
        }
        g[m] = acc / q(m as i64);
    }
    g
}

/// `prod_d (1 - q^d)^{-mult[d]}` up to grade `n`.
fn product_series(mult: &BTreeMap<usize, i64>, n: usize) -> Vec<Q> {
    // log = sum_d mult_d sum_j q^{dj} / j
    let mut log = vec![Q::zero(); n + 1];
    for (&d, &m) in mult {
        if d == 0 || m == 0 {
            continue;
        }
        let mut j = 1;
        while d * j <= n {
            log[d * j] += Q::new(m, j as i64);
            j += 1;
        }
    }
    series_exp(&log, n)
}

/// Positive affine roots of `X^(1)` with multiplicity, keyed by their
/// coefficients on the affine simple roots, up to `max_delta` copies of
/// `delta`.
fn affine_positive_roots(alg: &SimpleLieAlgebra, max_delta: i64) -> Vec<(Vec<i64>, i64)> {
    let r = alg.rank();
    let mut delta = vec![1];
    delta.extend(alg.marks.iter().copied());
    let mut out = Vec::new();
    for m in 0..=max_delta {
        for root in &alg.positive_roots {
            let mut c = vec![m];
            c.extend((0..r).map(|i| m * delta[i + 1] + root[i]));
            out.push((c, 1));
            if m >= 1 {
                let mut c = vec![m];
                c.extend((0..r).map(|i| m * delta[i + 1] - root[i]));
                out.push((c, 1));
            }
        }
        if m >= 1 {
            out.push((delta.iter().map(|d| d * m).collect(), r as i64));
        }
    }
    out
}

/// Verma module character `prod_{beta > 0} (1 - q^{deg beta})^{-mult beta}`.
/// Only the grading enters; the highest weight sets the leading exponent
/// (`Delta_lambda - c/24` for the homogeneous grading, 0 for the principal).
pub fn verma_character(
    alg: &SimpleLieAlgebra,
    k: i64,
    lambda: &[i64],
    n: usize,
    grading: Grading,
) -> QSeries {
    let degrees: Vec<i64> = match grading {
        Grading::Homogeneous => {
            let mut d = vec![1];
            d.extend(std::iter::repeat(0).take(alg.rank()));
            d
        }
        Grading::Principal => vec![1; alg.rank() + 1],
    };
    let coeffs = root_count_character(alg, &degrees, n);
    let leading = match grading {
        Grading::Homogeneous => {
            affine::conformal_weight(alg, k, lambda) - affine::central_charge(alg, k) / q(24)
        }
        Grading::Principal => Q::zero(),
    };
    QSeries { leading, coeffs }
}

/// PBW count over positive affine roots whose degree (with node degrees
/// `degrees`) lies in `1..=n`; roots of degree 0 are skipped.
fn root_count_character(alg: &SimpleLieAlgebra, degrees: &[i64], n: usize) -> Vec<i64> {
    // Each copy of delta has degree >= 1 (node 0 has positive degree).
    let delta_degree: i64 = degrees[0] + (0..alg.rank()).map(|i| alg.marks[i] * degrees[i + 1]).sum::<i64>();
    let max_delta = n as i64 / delta_degree.max(1) + 1;
    let mut mult: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, m) in affine_positive_roots(alg, max_delta) {
        let d: i64 = c.iter().zip(degrees).map(|(a, b)| a * b).sum();
        if d >= 1 && d as usize <= n {
            *mult.entry(d as usize).or_insert(0) += m;
        }
    }
    to_integers(&product_series(&mult, n)).expect("products of (1-q^d)^-1 are integral")
}

/// A simply-laced Lie algebra in the Frenkel–Kac basis `{E_alpha, h_i}`:
/// `[E_a, E_b] = eps(a, b) E_{a+b}`, `[E_a, E_{-a}] = -a`, `[h, E_a] = (h, a) E_a`.
struct FrenkelKac {
    rank: usize,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    form: Vec<Vec<i64>>,
}

impl FrenkelKac {
    fn new(alg: &SimpleLieAlgebra) -> Result<FrenkelKac, CharacterError> {
        let r = alg.rank();
        let symmetric = (0..r).all(|i| (0..r).all(|j| alg.cartan[i][j] == alg.cartan[j][i]));
        if !symmetric {
            return Err(CharacterError::NotSimplyLaced(alg.spec.to_string()));
        }
        let mut roots = alg.positive_roots.clone();
        roots.extend(alg.positive_roots.iter().map(|a| a.iter().map(|x| -x).collect::<Vec<_>>()));
        let index = roots.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        Ok(FrenkelKac {
            rank: r,
            roots,
            index,
            form: alg.cartan.clone(),
        })
    }

    fn dim(&self) -> usize {
        self.roots.len() + self.rank
    }

    fn pair(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    /// Bimultiplicative sign with `eps(a_i, a_i) = -1`, `eps(a_i, a_j) = -1`
    /// for linked `i < j`, and 1 otherwise.
    fn eps(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut e = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                if i == j || (i < j && self.form[i][j] == -1) {
                    e += a[i] * b[j];
                }
            }
        }
        if e.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// Bracket of two basis elements as a sparse combination.
    fn bracket(&self, x: usize, y: usize) -> Vec<(usize, i64)> {
        let nr = self.roots.len();
        match (x < nr, y < nr) {
            (true, true) => {
                let (a, b) = (&self.roots[x], &self.roots[y]);
                let sum: Vec<i64> = a.iter().zip(b).map(|(u, v)| u + v).collect();
                if sum.iter().all(|&s| s == 0) {
                    (0..self.rank)
                        .filter(|&i| a[i] != 0)
                        .map(|i| (nr + i, -a[i]))
                        .collect()
                } else if let Some(&z) = self.index.get(&sum) {
                    vec![(z, self.eps(a, b))]
                } else {
                    vec![]
                }
            }
            (false, true) => {
                let mut e = vec![0; self.rank];
                e[x - nr] = 1;
                let c = self.pair(&e, &self.roots[y]);
                if c == 0 {
                    vec![]
                } else {
                    vec![(y, c)]
                }
            }
            (true, false) => self.bracket(y, x).into_iter().map(|(z, c)| (z, -c)).collect(),
            (false, false) => vec![],
        }
    }
}

/// Element of the loop algebra `g (x) C[t, t^-1]`: (basis index, power) -> coefficient.
type LoopVec = BTreeMap<(usize, i64), Q>;

fn loop_bracket(fk: &FrenkelKac, x: &LoopVec, y: &LoopVec) -> LoopVec {
    let mut out = LoopVec::new();
    for (&(a, m), cx) in x {
        for (&(b, n), cy) in y {
            for (z, c) in fk.bracket(a, b) {
                let e = out.entry((z, m + n)).or_insert_with(Q::zero);
                *e += *cx * *cy * q(c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// A growing basis with an echelon form that expresses vectors in it.
struct Span {
    basis: Vec<LoopVec>,
    /// Echelon rows: pivot key, reduced vector, combination of basis vectors.
    rows: Vec<((usize, i64), LoopVec, Vec<Q>)>,
}

impl Span {
    fn new() -> Span {
        Span {
            basis: Vec::new(),
            rows: Vec::new(),
        }
    }

    /// Reduces `v`; returns the remainder and the combination `c` with
    /// `v = remainder + sum_j c_j basis_j`.
    fn reduce(&self, v: &LoopVec) -> (LoopVec, Vec<Q>) {
        let mut rem = v.clone();
        let mut comb = vec![Q::zero(); self.basis.len()];
        for (pivot, row, rc) in &self.rows {
            let Some(c) = rem.get(pivot).copied() else { continue };
            let f = c / row[pivot];
            for (key, val) in row {
                let e = rem.entry(*key).or_insert_with(Q::zero);
                *e -= f * *val;
            }
            rem.retain(|_, x| !x.is_zero());
            for (j, x) in rc.iter().enumerate() {
                comb[j] += f * *x;
            }
        }
        (rem, comb)
    }

    /// Adds `v` if independent; returns whether it was added.
    fn insert(&mut self, v: LoopVec) -> bool {
        let (rem, comb) = self.reduce(&v);
        if rem.is_empty() {
            return false;
        }
        self.basis.push(v);
        for (_, _, rc) in self.rows.iter_mut() {
            rc.push(Q::zero());
        }
        // rem = v - sum comb_j basis_j
        let mut rc: Vec<Q> = comb.iter().map(|x| -*x).collect();
        rc.push(Q::one());
        let pivot = *rem.keys().next().unwrap();
        self.rows.push((pivot, rem, rc));
        true
    }

    fn coordinates(&self, v: &LoopVec) -> Vec<Q> {
        let (rem, comb) = self.reduce(v);
        assert!(rem.is_empty(), "vector outside the span");
        comb
    }
}

/// Traces of powers of a diagram automorphism on the principal-degree-`m`
/// pieces of the negative part of the affine algebra, for `m = 1..=n`.
/// `traces[m][j]` is the trace of `omega^j`, `j = 1..=n/m`.
fn negative_part_traces(
    alg: &SimpleLieAlgebra,
    omega: &DiagramAutomorphism,
    n: usize,
) -> Result<Vec<Vec<Q>>, CharacterError> {
    let fk = FrenkelKac::new(alg)?;
    let r = alg.rank();
    let nr = fk.roots.len();
    debug_assert_eq!(fk.dim(), nr + r);
    // f_i = E_{-alpha_i}, f_0 = E_theta t^{-1}
    let mut gens: Vec<LoopVec> = Vec::with_capacity(r + 1);
    gens.push(LoopVec::from([((fk.index[&alg.highest_root], -1), Q::one())]));
    for i in 0..r {
        let mut a = vec![0; r];
        a[i] = -1;
        gens.push(LoopVec::from([((fk.index[&a], 0), Q::one())]));
    }
    let mut traces = vec![Vec::new(); n + 1];
    // Degree-1 piece: the generators themselves, permuted by omega.
    let mut span = Span::new();
    for g in &gens {
        assert!(span.insert(g.clone()));
    }
    let mut action: Vec<Vec<Q>> = (0..=r)
        .map(|i| {
            let mut col = vec![Q::zero(); r + 1];
            col[omega.perm[i]] = Q::one();
            col
        })
        .collect();
    for m in 1..=n {
        traces[m] = power_traces(&action, n / m);
        if m == n {
            break;
        }
        let mut next = Span::new();
        let mut next_origin = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            for (v, b) in span.basis.iter().enumerate() {
                if next.insert(loop_bracket(&fk, g, b)) {
                    next_origin.push((i, v));
                }
            }
        }
        // omega [f_i, b_v] = [f_{omega i}, omega b_v]
        let next_action: Vec<Vec<Q>> = next_origin
            .iter()
            .map(|&(i, v)| {
                let mut img = LoopVec::new();
                for (l, c) in action[v].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (key, val) in loop_bracket(&fk, &gens[omega.perm[i]], &span.basis[l]) {
                        *img.entry(key).or_insert_with(Q::zero) += *c * val;
                    }
                }
                img.retain(|_, x| !x.is_zero());
                next.coordinates(&img)
            })
            .collect();
        span = next;
        action = next_action;
    }
    Ok(traces)
}

/// Traces of `A^1 .. A^p` for a matrix given by columns.
fn power_traces(cols: &[Vec<Q>], p: usize) -> Vec<Q> {
    let d = cols.len();
    let a = |i: usize, j: usize| cols[j][i];
    let mut pow: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| a(i, j)).collect()).collect();
    let mut out = vec![Q::zero()];
    for j in 1..=p {
        out.push((0..d).map(|i| pow[i][i]).sum());
        if j < p {
            pow = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|l| (0..d).map(|x| pow[i][x] * a(x, l)).sum())
                        .collect()
                })
                .collect();
        }
    }
    out
}

/// Twining character of the Verma module `M(lambda)` under an affine diagram
/// automorphism, in the principal grading:
/// `prod_m det(1 - omega q^m | n_-[m])^{-1}`, from exact traces on the graded
/// pieces of the negative part.
pub fn twining_verma_character(
    alg: &SimpleLieAlgebra,
    k: i64,
    lambda: &[i64],
    omega: &DiagramAutomorphism,
    n: usize,
) -> Result<QSeries, CharacterError> {
    if !omega.affine || !omega.preserves(&alg.affine_cartan()) {
        return Err(CharacterError::NotAnAutomorphism(omega.perm.clone()));
    }
    if affine::act_on_weight(alg, k, omega, lambda) != lambda {
        return Err(CharacterError::NotFixed(lambda.to_vec()));
    }
    let traces = negative_part_traces(alg, omega, n)?;
    // log prod det(1 - omega q^m)^{-1} = sum_m sum_j tr(omega^j) q^{mj} / j
    let mut log = vec![Q::zero(); n + 1];
    for (m, tr) in traces.iter().enumerate().skip(1) {
        for (j, t) in tr.iter().enumerate().skip(1) {
            if m * j <= n {
                log[m * j] += *t / q(j as i64);
            }
        }
    }
    Ok(QSeries {
        leading: Q::zero(),
        coeffs: to_integers(&series_exp(&log, n))?,
    })
}

/// Principal-grading Verma character of the orbit Lie algebra at a mapped
/// weight: folded node `a` carries degree `|orbit a|`, so each orbit-algebra
/// generator matches an orbit of generators of the parent algebra.
pub fn orbit_verma_character(desc: &OrbitAlgebraDescriptor, n: usize) -> Result<QSeries, CharacterError> {
    let OrbitKind::Untwisted { spec, node_map, .. } = &desc.kind else {
        return Err(CharacterError::Unsupported(format!("{:?}", desc.kind)));
    };
    let orbit_alg = SimpleLieAlgebra::new(*spec);
    let mut degrees = vec![0; orbit_alg.rank() + 1];
    for (a, &std_node) in node_map.iter().enumerate() {
        degrees[std_node] = desc.orbits[a].len() as i64;
    }
    Ok(QSeries {
        leading: Q::zero(),
        coeffs: root_count_character(&orbit_alg, &degrees, n),
    })
}

/// One twining-character comparison.
#[derive(Debug, Clone, Serialize)]
pub struct TwiningComparison {
    pub algebra: String,
    pub level: i64,
    pub automorphism: Vec<usize>,
    pub weight: Vec<i64>,
    pub orbit_weight: Vec<i64>,
    pub twining: Vec<i64>,
    pub orbit: Vec<i64>,
    pub equal: bool,
}

/// Compares twining characters of the Verma modules on the fixed points of
/// `desc` with the orbit-algebra Verma characters, to grade `n`.
pub fn twining_validator(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    desc: &OrbitAlgebraDescriptor,
    n: usize,
) -> Result<Vec<TwiningComparison>, CharacterError> {
    let orbit = orbit_verma_character(desc, n)?;
    desc.fixed_points
        .iter()
        .zip(&desc.label_map)
        .map(|(&mu, mapped)| {
            let Label::Weight(w) = &md.labels[mu] else { unreachable!() };
            let tw = twining_verma_character(alg, k, w, &desc.automorphism, n)?;
            Ok(TwiningComparison {
                algebra: alg.spec.to_string(),
                level: k,
                automorphism: desc.automorphism.perm.clone(),
                weight: w.clone(),
                orbit_weight: mapped.clone(),
                equal: tw.coeffs == orbit.coeffs,
                twining: tw.coeffs,
                orbit: orbit.coeffs.clone(),
            })
        })
        .collect()
}

/// `prod_{alpha > 0} (mu, alpha) / (rho, alpha)`.
fn weyl_dimension(alg: &SimpleLieAlgebra, mu: &[Q]) -> Q {
    let rho: Vec<Q> = vec![Q::one(); alg.rank()];
    alg.positive_roots
        .iter()
        .map(|root| {
            let a: Vec<Q> = alg.root_to_weight(root).into_iter().map(q).collect();
            alg.inner(mu, &a) / alg.inner(&rho, &a)
        })
        .product()
}

/// Specialized irreducible character of the level-`k` integrable module
/// `lambda`:
/// `eta^{-dim g} sum_{gamma in Q^vee} d(lambda + rho + kappa gamma) q^{|lambda + rho + kappa gamma|^2 / 2 kappa}`
/// with `kappa = k + h^vee` and `d` the Weyl dimension polynomial.
pub fn weyl_kac_character(alg: &SimpleLieAlgebra, k: i64, lambda: &[i64], n: usize) -> QSeries {
    let r = alg.rank();
    let kappa = q(k + alg.dual_coxeter);
    let base: Vec<Q> = lambda.iter().map(|&x| q(x + 1)).collect();
    // Coroots in Dynkin labels: (alpha_j^vee)_i = a_ij / D_j.
    let coroots: Vec<Vec<Q>> = (0..r)
        .map(|j| (0..r).map(|i| q(alg.cartan[i][j]) / alg.half_root_lengths[j]).collect())
        .collect();
    let e0 = alg.inner(&base, &base) / (q(2) * kappa);
    let bound = ((2.0 * (n as f64 + 2.0) * r as f64).sqrt()).ceil() as i64 + 2;
    let mut numerator = vec![Q::zero(); n + 1];
    let mut digits = vec![-bound; r];
    loop {
        let mut mu = base.clone();
        for (j, &d) in digits.iter().enumerate() {
            for i in 0..r {
                mu[i] += kappa * q(d) * coroots[j][i];
            }
        }
        let shift = alg.inner(&mu, &mu) / (q(2) * kappa) - e0;
        assert!(shift.is_integer() && !shift.is_negative(), "exponent shift {shift}");
        let s = shift.to_integer() as usize;
        if s <= n {
            numerator[s] += weyl_dimension(alg, &mu);
        }
        let mut i = 0;
        loop {
            if i == r {
                let dim = alg.dimension() as i64;
                let mult = BTreeMap::from_iter((1..=n).map(|d| (d, dim)));
                let eta = product_series(&mult, n);
                let coeffs: Vec<Q> = (0..=n)
                    .map(|m| (0..=m).map(|j| numerator[j] * eta[m - j]).sum())
                    .collect();
                let leading = e0 - q(alg.dimension() as i64) / q(24);
                debug_assert_eq!(
                    leading,
                    affine::conformal_weight(alg, k, lambda) - affine::central_charge(alg, k) / q(24)
                );
                return QSeries {
                    leading,
                    coeffs: to_integers(&coeffs).expect("Weyl–Kac coefficients are integral"),
                };
            }
            digits[i] += 1;
            if digits[i] <= bound {
                break;
            }
            digits[i] = -bound;
            i += 1;
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ModularCheckReport {
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// Size of the first omitted term of the slowest-decaying character.
    pub tail_estimate: f64,
}

/// `|chi_mu(i) - sum_nu S_{mu nu} chi_nu(i)|` from truncated series at the
/// self-dual point `tau = i`.
pub fn numeric_modular_check(md: &ModularData, chars: &[QSeries]) -> ModularCheckReport {
    let values: Vec<f64> = chars.iter().map(|c| c.evaluate(1.0)).collect();
    let residuals: Vec<f64> = (0..md.len())
        .map(|mu| {
            let rhs: C64 = (0..md.len()).map(|nu| md.s[(mu, nu)] * values[nu]).sum();
            (C64::new(values[mu], 0.0) - rhs).norm()
        })
        .collect();
    let tail_estimate = chars
        .iter()
        .map(|c| {
            let n = c.coeffs.len() as f64;
            let last = c.coeffs.last().copied().unwrap_or(0).unsigned_abs() as f64;
            last * (-2.0 * std::f64::consts::PI * (n + exact::to_f64(c.leading))).exp()
        })
        .fold(0.0, f64::max);
    ModularCheckReport {
        max_residual: residuals.iter().copied().fold(0.0, f64::max),
        residuals,
        tail_estimate,
    }
}

/// Weyl–Kac characters for every sector of a WZW theory.
pub fn wzw_characters(alg: &SimpleLieAlgebra, k: i64, md: &ModularData, n: usize) -> Vec<QSeries> {
    md.labels
        .iter()
        .map(|l| match l {
            Label::Weight(w) => weyl_kac_character(alg, k, w, n),
            _ => unreachable!("WZW labels are weights"),
        })
        .collect()
}

/// Orbit-algebra descriptors for all simple currents of a theory whose
/// folding is of untwisted type.
pub fn current_foldings(alg: &SimpleLieAlgebra, k: i64, md: &ModularData) -> Vec<OrbitAlgebraDescriptor> {
    affine::center_currents(alg, k, md)
        .into_iter()
        .filter(|&j| j != md.vacuum)
        .filter_map(|j| {
            let pi = affine::current_automorphism(alg, k, md, j).ok()?;
            let desc = affine::orbit_algebra(alg, k, md, &pi).ok()?;
            matches!(desc.kind, OrbitKind::Untwisted { .. }).then_some(desc)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;

    fn alg(s: &str) -> SimpleLieAlgebra {
        SimpleLieAlgebra::new(s.parse().unwrap())
    }

    #[test]
    fn verma_su2_first_grades() {
        let a = alg("A1");
        let v = verma_character(&a, 3, &[0], 3, Grading::Homogeneous);
        // prod (1 - q^n)^{-3}
        assert_eq!(v.coeffs, vec![1, 3, 9, 22]);
        let p = verma_character(&a, 3, &[0], 0, Grading::Principal);
        assert_eq!(p.coeffs, vec![1]);
    }

    #[test]
    fn frenkel_kac_satisfies_jacobi() {
        for s in ["A2", "D4"] {
            let fk = FrenkelKac::new(&alg(s)).unwrap();
            let d = fk.dim();
            let br = |x: &[(usize, i64)], y: usize| -> BTreeMap<usize, i64> {
                let mut out = BTreeMap::new();
                for &(a, c) in x {
                    for (z, e) in fk.bracket(a, y) {
                        *out.entry(z).or_insert(0) += c * e;
                    }
                }
                out
            };
            for x in 0..d {
                for y in 0..d {
                    for z in 0..d {
                        let mut total: BTreeMap<usize, i64> = BTreeMap::new();
                        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                            let ab = fk.bracket(a, b);
                            for (key, v) in br(&ab, c) {
                                *total.entry(key).or_insert(0) += v;
                            }
                        }
                        assert!(total.values().all(|&v| v == 0), "{s}: {x} {y} {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_twining_is_principal_verma() {
        for s in ["A1", "A2", "D4"] {
            let a = alg(s);
            let id = DiagramAutomorphism::new((0..=a.rank()).collect(), true);
            let lambda = vec![0; a.rank()];
            let tw = twining_verma_character(&a, 1, &lambda, &id, 6).unwrap();
            let v = verma_character(&a, 1, &lambda, 6, Grading::Principal);
            assert_eq!(tw.coeffs, v.coeffs, "{s}");
        }
    }

    #[test]
    fn a3_square_current_twining() {
        let a = alg("A3");
        let md = affine::kac_peterson(&a, 2, DEFAULT_WEYL_CAP).unwrap();
        let descs = current_foldings(&a, 2, &md);
        assert!(!descs.is_empty());
        for d in &descs {
            for c in twining_validator(&a, 2, &md, d, 6).unwrap() {
                assert!(c.equal, "{c:?}");
            }
        }
    }

    #[test]
    fn su2_characters_transform() {
        let a = alg("A1");
        for k in 1..=4 {
            let md = affine::kac_peterson(&a, k, DEFAULT_WEYL_CAP).unwrap();
            let chars = wzw_characters(&a, k, &md, 40);
            assert_eq!(chars[0].coeffs[1], 3);
            let rep = numeric_modular_check(&md, &chars);
            assert!(rep.max_residual < 1e-4, "k={k}: {rep:?}");
        }
    }
}
