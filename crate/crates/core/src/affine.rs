//! Untwisted affine modular data at level k (Kac–Peterson), orbit Lie
//! algebras from diagram folding, and the fixed-point matrices `S^J`.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{q, Q};
use crate::liealg::{
    self, cartan_automorphisms, AlgebraSpec, DiagramAutomorphism, LieError, Series,
    SimpleLieAlgebra,
};
use crate::modular::{self, CMat, InvariantViolation, Label, ModularData, C64};

/// Tolerance used when certifying freshly computed modular data.
pub const MODULAR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AffineError {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error("internal consistency: {0}")]
    Invariant(#[from] InvariantViolation),
    #[error("not implemented: {0}")]
    NotImplemented(String),
    #[error("{0} is not a simple current of this theory")]
    NotSimpleCurrent(String),
    #[error("phase fixing for S^J of {current} failed: best residual {residual:.3e}")]
    PhaseFixing { current: String, residual: f64 },
}

/// Level-`k` integrable highest weights, lexicographic with the vacuum first.
pub fn integrable_weights(alg: &SimpleLieAlgebra, k: i64) -> Vec<Vec<i64>> {
    fn rec(alg: &SimpleLieAlgebra, k: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if i == alg.rank() {
            out.push(cur.clone());
            return;
        }
        let used: i64 = cur.iter().zip(&alg.comarks).map(|(l, a)| l * a).sum();
        let mut x = 0;
        while used + x * alg.comarks[i] <= k {
            cur.push(x);
            rec(alg, k, i + 1, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    rec(alg, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Sugawara weight `(lambda, lambda + 2 rho) / (2 (k + h^vee))`.
pub fn conformal_weight(alg: &SimpleLieAlgebra, k: i64, lambda: &[i64]) -> Q {
    let shifted: Vec<i64> = lambda.iter().map(|x| x + 2).collect();
    alg.inner_int(lambda, &shifted) / q(2 * (k + alg.dual_coxeter))
}

pub fn central_charge(alg: &SimpleLieAlgebra, k: i64) -> Q {
    q(k * alg.dimension() as i64) / q(k + alg.dual_coxeter)
}

pub fn theory_name(spec: AlgebraSpec, k: i64) -> String {
    format!("{spec}_k{k}")
}

/// Modular data of the WZW model of `alg` at level `k` from the Kac–Peterson
/// Weyl sum. Exponents are reduced exactly before going to floating point.
pub fn kac_peterson(
    alg: &SimpleLieAlgebra,
    k: i64,
    weyl_cap: usize,
) -> Result<ModularData, AffineError> {
    assert!(k >= 0, "level must be non-negative");
    let name = theory_name(alg.spec, k);
    if k == 0 {
        let mut md = ModularData::trivial(&name);
        md.labels = vec![Label::Weight(vec![0; alg.rank()])];
        return Ok(md);
    }
    let weyl = liealg::weyl_group(alg, weyl_cap)?;
    let weights = integrable_weights(alg, k);
    let n = alg.rank();
    let kk = k + alg.dual_coxeter;
    // integer Gram matrix: metric = gram / denom
    let denom = alg
        .metric
        .iter()
        .flatten()
        .fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let gram: Vec<Vec<i64>> = alg
        .metric
        .iter()
        .map(|r| r.iter().map(|x| (*x * q(denom)).to_integer()).collect())
        .collect();
    let modulus = denom * kk;
    let roots: Vec<C64> = (0..modulus)
        .map(|r| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * r as f64 / modulus as f64))
        .collect();
    let shifted: Vec<Vec<i64>> = weights
        .iter()
        .map(|w| w.iter().map(|x| x + 1).collect())
        .collect();
    // G (mu + rho) per column label
    let paired: Vec<Vec<i64>> = shifted
        .iter()
        .map(|m| (0..n).map(|i| (0..n).map(|j| gram[i][j] * m[j]).sum()).collect())
        .collect();
    let images: Vec<Vec<(Vec<i64>, i64)>> = shifted
        .iter()
        .map(|l| weyl.iter().map(|w| (w.act(l), w.sign)).collect())
        .collect();
    let size = weights.len();
    let rows: Vec<Vec<C64>> = (0..size)
        .into_par_iter()
        .map(|a| {
            (0..size)
                .map(|b| {
                    let mut acc = C64::zero();
                    for (v, sign) in &images[a] {
                        let x: i64 = v.iter().zip(&paired[b]).map(|(p, g)| p * g).sum();
                        let z = roots[x.rem_euclid(modulus) as usize];
                        if *sign > 0 {
                            acc += z;
                        } else {
                            acc -= z;
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    let mut s = CMat::from_fn(size, size, |a, b| rows[a][b]);
    let norm = (0..size).map(|b| s[(0, b)].norm_sqr()).sum::<f64>().sqrt();
    let phase = s[(0, 0)] / s[(0, 0)].norm();
    let scale = phase.conj() / norm;
    s *= scale;
    let md = ModularData {
        name,
        labels: weights.iter().map(|w| Label::Weight(w.clone())).collect(),
        vacuum: 0,
        delta: weights.iter().map(|w| conformal_weight(alg, k, w)).collect(),
        c: central_charge(alg, k),
        s,
    };
    md.check(MODULAR_TOLERANCE)?;
    Ok(md)
}

/// Acts with an affine diagram automorphism on a level-`k` weight given by
/// its finite Dynkin labels: `(pi lambda)_{pi(i)} = lambda_i` on affine labels.
pub fn act_on_weight(
    alg: &SimpleLieAlgebra,
    k: i64,
    pi: &DiagramAutomorphism,
    lambda: &[i64],
) -> Vec<i64> {
    let aff = alg.affine_labels(k, lambda);
    let mut out = vec![0; aff.len()];
    for (i, &x) in aff.iter().enumerate() {
        out[pi.perm[i]] = x;
    }
    out[1..].to_vec()
}

/// The permutation of the label set induced by an affine automorphism.
pub fn label_permutation(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    pi: &DiagramAutomorphism,
) -> Vec<usize> {
    md.labels
        .iter()
        .map(|l| match l {
            Label::Weight(w) => md
                .index_of(&Label::Weight(act_on_weight(alg, k, pi, w)))
                .expect("automorphism preserves integrability"),
            _ => unreachable!("WZW labels are weights"),
        })
        .collect()
}

/// The affine diagram automorphism implementing fusion with the simple
/// current `current` (a label index of `md`). Among the automorphisms moving
/// node 0 to the right node, the one obeying
/// `S_{pi lambda, mu} = (S_{pi Omega, mu} / S_{Omega, mu}) S_{lambda mu}` is chosen.
pub fn current_automorphism(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    current: usize,
) -> Result<DiagramAutomorphism, AffineError> {
    let Label::Weight(w) = &md.labels[current] else {
        unreachable!()
    };
    let n = alg.rank();
    if w.iter().all(|&x| x == 0) {
        return Ok(DiagramAutomorphism::new((0..=n).collect(), true));
    }
    let not_current = || AffineError::NotSimpleCurrent(md.labels[current].to_string());
    let nonzero: Vec<usize> = (0..n).filter(|&i| w[i] != 0).collect();
    if nonzero.len() != 1 || w[nonzero[0]] != k || alg.comarks[nonzero[0]] != 1 {
        return Err(not_current());
    }
    let target = nonzero[0] + 1;
    for perm in cartan_automorphisms(&alg.affine_cartan()) {
        if perm[0] != target {
            continue;
        }
        let pi = DiagramAutomorphism::new(perm, true);
        let p = label_permutation(alg, k, md, &pi);
        let ok = (0..md.len()).all(|l| {
            (0..md.len()).all(|m| {
                let ratio = md.s[(p[md.vacuum], m)] / md.s[(md.vacuum, m)];
                (md.s[(p[l], m)] - ratio * md.s[(l, m)]).norm() < 1e-8
            })
        });
        if ok {
            return Ok(pi);
        }
    }
    Err(not_current())
}

/// What the folded diagram turned out to be.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum OrbitKind {
    /// An untwisted affine algebra `X^(1)` at level `level`; `node_map[a]` is
    /// the standard affine node of folded node `a`.
    Untwisted {
        spec: AlgebraSpec,
        level: i64,
        node_map: Vec<usize>,
    },
    /// A single orbit folding to the 1x1 zero matrix (e.g. the full rotation
    /// of the affine `A_n` diagram); at most one fixed weight.
    Trivial,
    /// Not of untwisted affine type.
    Twisted,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbitAlgebraDescriptor {
    pub automorphism: DiagramAutomorphism,
    pub folded_cartan: Vec<Vec<i64>>,
    /// Orbit index of each affine node.
    pub node_orbit: Vec<usize>,
    /// Node orbits, each starting with its representative (smallest node).
    pub orbits: Vec<Vec<usize>>,
    pub kind: OrbitKind,
    /// Fixed points of the automorphism, as label indices of the theory.
    pub fixed_points: Vec<usize>,
    /// Orbit-algebra weight (finite Dynkin labels) of each fixed point, when
    /// the folding is of untwisted type; empty weights for the trivial kind.
    pub label_map: Vec<Vec<i64>>,
}

/// Folds a generalized Cartan matrix along a node permutation:
/// `A'_{ab} = s_a sum_l A_{r_a, w^l r_b}` with
/// `s_a = 1 - sum_{l=1}^{N_a - 1} A_{w^l r_a, r_a}`, where `r_a` is the
/// representative of orbit `a` and `N_a` its length.
pub fn fold_cartan(cartan: &[Vec<i64>], orbits: &[Vec<usize>]) -> Vec<Vec<i64>> {
    let m = orbits.len();
    let s: Vec<i64> = orbits
        .iter()
        .map(|o| 1 - o[1..].iter().map(|&x| cartan[x][o[0]]).sum::<i64>())
        .collect();
    (0..m)
        .map(|a| {
            (0..m)
                .map(|b| s[a] * orbits[b].iter().map(|&x| cartan[orbits[a][0]][x]).sum::<i64>())
                .collect()
        })
        .collect()
}

/// Finds an untwisted affine algebra whose affine Cartan matrix equals `m`
/// up to a node relabeling, preferring relabelings fixing node 0.
pub fn recognize_untwisted(m: &[Vec<i64>]) -> Option<(AlgebraSpec, Vec<usize>)> {
    let size = m.len();
    if size < 2 {
        return None;
    }
    let rank = size - 1;
    for series in Series::ALL {
        let Ok(spec) = AlgebraSpec::new(series, rank) else {
            continue;
        };
        let aff = SimpleLieAlgebra::new(spec).affine_cartan();
        let mut best: Option<Vec<usize>> = None;
        for p in all_bijections(m, &aff) {
            if p[0] == 0 {
                return Some((spec, p));
            }
            best.get_or_insert(p);
        }
        if let Some(p) = best {
            return Some((spec, p));
        }
    }
    None
}

fn all_bijections(m: &[Vec<i64>], target: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn rec(
        m: &[Vec<i64>],
        t: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let i = perm.len();
        if i == m.len() {
            out.push(perm.clone());
            return;
        }
        for c in 0..m.len() {
            if used[c] || t[c][c] != m[i][i] {
                continue;
            }
            if (0..i).all(|j| t[c][perm[j]] == m[i][j] && t[perm[j]][c] == m[j][i]) {
                used[c] = true;
                perm.push(c);
                rec(m, t, perm, used, out);
                perm.pop();
                used[c] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(m, target, &mut Vec::new(), &mut vec![false; m.len()], &mut out);
    out
}

/// Folds the affine diagram of `alg` along `pi` and, when the result is of
/// untwisted type, maps the `pi`-fixed level-`k` weights to orbit-algebra
/// weights.
pub fn orbit_algebra(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    pi: &DiagramAutomorphism,
) -> Result<OrbitAlgebraDescriptor, AffineError> {
    let aff = alg.affine_cartan();
    if !pi.affine || !pi.preserves(&aff) {
        return Err(AffineError::NotImplemented(format!(
            "permutation {:?} is not an automorphism of the affine {} diagram",
            pi.perm, alg.spec
        )));
    }
    let orbits = pi.orbits();
    let mut node_orbit = vec![0; aff.len()];
    for (a, o) in orbits.iter().enumerate() {
        for &x in o {
            node_orbit[x] = a;
        }
    }
    let folded = fold_cartan(&aff, &orbits);
    let perm = label_permutation(alg, k, md, pi);
    let fixed_points: Vec<usize> = (0..md.len()).filter(|&i| perm[i] == i).collect();
    let affine_of = |i: usize| -> Vec<i64> {
        let Label::Weight(w) = &md.labels[i] else {
            unreachable!()
        };
        alg.affine_labels(k, w)
    };
    let (kind, label_map) = if folded.len() == 1 && folded[0][0] == 0 {
        (OrbitKind::Trivial, vec![vec![]; fixed_points.len()])
    } else if let Some((spec, node_map)) = recognize_untwisted(&folded) {
        let orbit_alg = SimpleLieAlgebra::new(spec);
        let comarks = orbit_alg.affine_comarks();
        let mut level = None;
        let mut map = Vec::new();
        for &f in &fixed_points {
            let lam = affine_of(f);
            let mut folded_labels = vec![0; orbits.len()];
            for (a, o) in orbits.iter().enumerate() {
                folded_labels[node_map[a]] = lam[o[0]];
            }
            let lvl: i64 = folded_labels.iter().zip(&comarks).map(|(x, c)| x * c).sum();
            if *level.get_or_insert(lvl) != lvl {
                return Err(AffineError::NotImplemented(format!(
                    "fixed points of {:?} land at different orbit-algebra levels",
                    pi.perm
                )));
            }
            map.push(folded_labels[1..].to_vec());
        }
        let level = level.unwrap_or(0);
        if !fixed_points.is_empty() {
            let count = integrable_weights(&orbit_alg, level).len();
            let mut sorted = map.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != map.len() || count != map.len() {
                return Err(AffineError::NotImplemented(format!(
                    "folding {:?} of {}: {} fixed points vs {} integrable weights of {}^(1) at level {}",
                    pi.perm, alg.spec, map.len(), count, spec, level
                )));
            }
        }
        (
            OrbitKind::Untwisted {
                spec,
                level,
                node_map,
            },
            map,
        )
    } else {
        (OrbitKind::Twisted, Vec::new())
    };
    Ok(OrbitAlgebraDescriptor {
        automorphism: pi.clone(),
        folded_cartan: folded,
        node_orbit,
        orbits,
        kind,
        fixed_points,
        label_map,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PhaseConvention {
    /// `J = Omega`: the full S matrix.
    Identity,
    /// Global phase fixed by `(S^J T_f)^3 = (S^J)^2` on the fixed points.
    Modular,
    /// Largest-modulus entry of the first row made real positive.
    RealPositive,
    /// Product of the factor conventions of a tensor-product theory.
    Product,
}

/// `S^J` over the fixed points of the simple current `J`.
#[derive(Debug, Clone)]
pub struct SJMatrix {
    pub current: usize,
    pub fixed: Vec<usize>,
    pub matrix: CMat,
    pub convention: PhaseConvention,
}

impl SJMatrix {
    pub fn identity_current(md: &ModularData) -> SJMatrix {
        SJMatrix {
            current: md.vacuum,
            fixed: (0..md.len()).collect(),
            matrix: md.s.clone(),
            convention: PhaseConvention::Identity,
        }
    }

    /// Entry `S^J_{lambda, mu}` for label indices, zero off the fixed points.
    pub fn entry(&self, lambda: usize, mu: usize) -> C64 {
        match (self.position(lambda), self.position(mu)) {
            (Some(a), Some(b)) => self.matrix[(a, b)],
            _ => C64::zero(),
        }
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.fixed.binary_search(&label).ok()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let n = self.matrix.nrows();
        modular::max_abs(&(&self.matrix * self.matrix.adjoint() - modular::identity(n)))
    }
}

/// Multiplies `m` by the global phase fixed by `(phi M T)^3 = (phi M)^2`,
/// returning the residual of that relation after fixing.
pub fn modular_phase(m: &CMat, t: &[C64]) -> (C64, f64) {
    let n = m.nrows();
    if n == 0 {
        return (C64::new(1.0, 0.0), 0.0);
    }
    let mt = m * modular::diag(t);
    let cube = &mt * &mt * &mt;
    let sq = m * m;
    let (mut best, mut idx) = (-1.0, (0, 0));
    for i in 0..n {
        for j in 0..n {
            if cube[(i, j)].norm() > best {
                best = cube[(i, j)].norm();
                idx = (i, j);
            }
        }
    }
    let phi = sq[idx] / cube[idx];
    let phi = phi / phi.norm();
    let residual = modular::max_abs(&(cube * phi.powi(3) - sq * phi.powi(2)));
    (phi, residual)
}

fn real_positive_phase(m: &CMat) -> C64 {
    if m.nrows() == 0 {
        return C64::new(1.0, 0.0);
    }
    let (mut best, mut z) = (-1.0, C64::new(1.0, 0.0));
    for j in 0..m.ncols() {
        if m[(0, j)].norm() > best + 1e-12 {
            best = m[(0, j)].norm();
            z = m[(0, j)];
        }
    }
    z.conj() / z.norm()
}

/// Cache of orbit-algebra modular data keyed by `(spec, level)`.
pub type OrbitCache = HashMap<(AlgebraSpec, i64), ModularData>;

/// `S^J` as the orbit-algebra Kac–Peterson matrix times a global phase.
/// Currents of integral conformal weight get the phase from the modular
/// relation on the fixed points; the others keep the real-positive
/// normalization.
pub fn sj_matrix(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    current: usize,
    weyl_cap: usize,
    cache: &mut OrbitCache,
) -> Result<SJMatrix, AffineError> {
    if current == md.vacuum {
        return Ok(SJMatrix::identity_current(md));
    }
    let pi = current_automorphism(alg, k, md, current)?;
    let desc = orbit_algebra(alg, k, md, &pi)?;
    let fixed = desc.fixed_points.clone();
    let f = fixed.len();
    let base = match &desc.kind {
        _ if f == 0 => CMat::zeros(0, 0),
        OrbitKind::Trivial => CMat::from_element(1, 1, C64::new(1.0, 0.0)),
        OrbitKind::Twisted => {
            return Err(AffineError::NotImplemented(format!(
                "orbit algebra of {} for current {} is twisted",
                alg.spec, md.labels[current]
            )))
        }
        OrbitKind::Untwisted { spec, level, .. } => {
            let orb = match cache.get(&(*spec, *level)) {
                Some(m) => m.clone(),
                None => {
                    let m = kac_peterson(&SimpleLieAlgebra::new(*spec), *level, weyl_cap)?;
                    cache.insert((*spec, *level), m.clone());
                    m
                }
            };
            let idx: Vec<usize> = desc
                .label_map
                .iter()
                .map(|w| orb.index_of(&Label::Weight(w.clone())).unwrap())
                .collect();
            CMat::from_fn(f, f, |a, b| orb.s[(idx[a], idx[b])])
        }
    };
    let t_all = md.t();
    let t: Vec<C64> = fixed.iter().map(|&i| t_all[i]).collect();
    let (phase, convention) = if md.delta[current].is_integer() {
        let (phi, residual) = modular_phase(&base, &t);
        if residual > 1e-8 {
            return Err(AffineError::PhaseFixing {
                current: md.labels[current].to_string(),
                residual,
            });
        }
        (phi, PhaseConvention::Modular)
    } else {
        (real_positive_phase(&base), PhaseConvention::RealPositive)
    };
    let sj = SJMatrix {
        current,
        fixed,
        matrix: base * phase,
        convention,
    };
    let r = sj.unitarity_residual();
    if r > 1e-9 {
        return Err(InvariantViolation {
            relation: format!("unitarity of S^J for {}", md.labels[current]),
            residual: r,
            tolerance: 1e-9,
        }
        .into());
    }
    Ok(sj)
}

/// Residual of `(S^J)^t = S^{J^-1}` on the shared fixed-point set.
pub fn transpose_residual(sj: &SJMatrix, sj_inv: &SJMatrix) -> f64 {
    if sj.fixed != sj_inv.fixed {
        return f64::INFINITY;
    }
    modular::max_abs(&(sj.matrix.transpose() - &sj_inv.matrix))
}

/// Simple currents `k w_j` (comark 1) of the WZW model, as label indices.
pub fn center_currents(alg: &SimpleLieAlgebra, k: i64, md: &ModularData) -> Vec<usize> {
    let mut out = vec![md.vacuum];
    if k == 0 {
        return out;
    }
    for j in 0..alg.rank() {
        if alg.comarks[j] == 1 {
            let mut w = vec![0; alg.rank()];
            w[j] = k;
            out.push(md.index_of(&Label::Weight(w)).unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;

    fn alg(s: &str) -> SimpleLieAlgebra {
        SimpleLieAlgebra::new(s.parse().unwrap())
    }

    fn su2_s(k: i64) -> Vec<Vec<f64>> {
        let n = (k + 1) as usize;
        let kk = (k + 2) as f64;
        (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        (2.0 / kk).sqrt()
                            * (std::f64::consts::PI * ((a + 1) * (b + 1)) as f64 / kk).sin()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn integrable_weight_counts() {
        assert_eq!(integrable_weights(&alg("A1"), 2).len(), 3);
        assert_eq!(integrable_weights(&alg("A2"), 1).len(), 3);
        assert_eq!(integrable_weights(&alg("E8"), 0), vec![vec![0; 8]]);
        assert_eq!(integrable_weights(&alg("A1"), 2)[0], vec![0]);
    }

    #[test]
    fn sugawara_weights() {
        let a = alg("A1");
        assert_eq!(conformal_weight(&a, 2, &[1]), Q::new(3, 16));
        assert_eq!(conformal_weight(&a, 4, &[4]), q(1));
        assert_eq!(conformal_weight(&a, 4, &[0]), q(0));
    }

    #[test]
    fn su2_matches_closed_form() {
        for k in 1..=6 {
            let md = kac_peterson(&alg("A1"), k, DEFAULT_WEYL_CAP).unwrap();
            let exact = su2_s(k);
            for (a, row) in exact.iter().enumerate() {
                for (b, x) in row.iter().enumerate() {
                    assert!((md.s[(a, b)] - C64::new(*x, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn level_zero_is_trivial() {
        let md = kac_peterson(&alg("G2"), 0, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(md.len(), 1);
    }

    #[test]
    fn a1_current_automorphism_is_the_swap() {
        let a = alg("A1");
        let md = kac_peterson(&a, 3, DEFAULT_WEYL_CAP).unwrap();
        let pi = current_automorphism(&a, 3, &md, 3).unwrap();
        assert_eq!(pi.perm, vec![1, 0]);
        assert!(current_automorphism(&a, 3, &md, 1).is_err());
    }

    #[test]
    fn su2_level_four_fixed_point() {
        let a = alg("A1");
        let md = kac_peterson(&a, 4, DEFAULT_WEYL_CAP).unwrap();
        let mut cache = OrbitCache::new();
        let sj = sj_matrix(&a, 4, &md, 4, DEFAULT_WEYL_CAP, &mut cache).unwrap();
        assert_eq!(sj.fixed, vec![2]);
        assert_eq!(sj.convention, PhaseConvention::Modular);
        assert!((sj.matrix[(0, 0)] - C64::new(0.0, 1.0)).norm() < 1e-12);
        let odd = kac_peterson(&a, 3, DEFAULT_WEYL_CAP).unwrap();
        let sj = sj_matrix(&a, 3, &odd, 3, DEFAULT_WEYL_CAP, &mut cache).unwrap();
        assert!(sj.fixed.is_empty());
    }

    #[test]
    fn folding_a3_by_order_two_rotation() {
        let a = alg("A3");
        let md = kac_peterson(&a, 2, DEFAULT_WEYL_CAP).unwrap();
        let pi = DiagramAutomorphism::new(vec![2, 3, 0, 1], true);
        let d = orbit_algebra(&a, 2, &md, &pi).unwrap();
        assert_eq!(d.folded_cartan, vec![vec![2, -2], vec![-2, 2]]);
        match d.kind {
            OrbitKind::Untwisted { spec, level, .. } => {
                assert_eq!(spec.to_string(), "A1");
                assert_eq!(level, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(d.fixed_points.len(), 2);
    }

    #[test]
    fn folding_d4_vector_current_gives_c2() {
        let a = alg("D4");
        let md = kac_peterson(&a, 2, DEFAULT_WEYL_CAP).unwrap();
        let cur = md.index_of(&Label::Weight(vec![2, 0, 0, 0])).unwrap();
        let pi = current_automorphism(&a, 2, &md, cur).unwrap();
        let d = orbit_algebra(&a, 2, &md, &pi).unwrap();
        match &d.kind {
            OrbitKind::Untwisted { spec, level, .. } => {
                // B2 and C2 coincide
                assert!(["B2", "C2"].contains(&spec.to_string().as_str()));
                assert_eq!(*level, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
        let mut cache = OrbitCache::new();
        let sj = sj_matrix(&a, 2, &md, cur, DEFAULT_WEYL_CAP, &mut cache).unwrap();
        assert_eq!(sj.fixed.len(), 3);
    }

    #[test]
    fn flip_fixing_affine_node_of_a3_is_twisted() {
        let a = alg("A3");
        let md = kac_peterson(&a, 1, DEFAULT_WEYL_CAP).unwrap();
        let pi = DiagramAutomorphism::new(vec![0, 3, 2, 1], true);
        let d = orbit_algebra(&a, 1, &md, &pi).unwrap();
        assert_eq!(d.kind, OrbitKind::Twisted);
        assert_eq!(d.fixed_points.len(), 2);
    }
}
