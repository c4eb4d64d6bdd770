//! Chiral-block ranks, outer automorphism tuples of simple currents, traces
//! of the induced maps on blocks, and a truncated check of the multi-shift
//! automorphisms of the loop algebra.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineError, SJMatrix};
use crate::exact::{self, q, Q};
use crate::fusion::SimpleCurrentGroup;
use crate::liealg::SimpleLieAlgebra;
use crate::modular::{ModularData, C64};
use crate::simplecurrent::{self, SJProvider, SimpleCurrentOrbitData};

pub const RANK_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BlocksError {
    #[error("genus {genus} with {insertions} insertions is not a valid block space")]
    Degenerate { genus: u32, insertions: usize },
    #[error("block rank {value:.6} is not a non-negative integer (residual {residual:.3e})")]
    Integrality { value: f64, residual: f64 },
    #[error("tuple {tuple:?} is not admissible: {reason}")]
    NotAdmissible { tuple: Vec<usize>, reason: String },
    #[error("tuple length {got} does not match {expected} insertions")]
    Length { got: usize, expected: usize },
    #[error("coweights do not sum to zero")]
    NotBalanced,
    #[error("evaluation points are not pairwise distinct")]
    CoincidentPoints,
    #[error(transparent)]
    Affine(#[from] AffineError),
}

fn weight(md: &ModularData, nu: usize, genus: u32) -> f64 {
    md.s[(md.vacuum, nu)].norm().powi(2 - 2 * genus as i32)
}

/// Unrounded Verlinde sum `sum_nu |S_{Omega nu}|^{2-2g} prod_s S_{mu_s nu} / S_{Omega nu}`.
pub fn rank_raw(genus: u32, insertions: &[usize], md: &ModularData) -> C64 {
    (0..md.len())
        .map(|nu| {
            let s0 = md.s[(md.vacuum, nu)];
            insertions
                .iter()
                .fold(C64::new(weight(md, nu, genus), 0.0), |acc, &m| acc * md.s[(m, nu)] / s0)
        })
        .sum()
}

pub fn round_rank(z: C64) -> Result<u64, BlocksError> {
    let r = z.re.round();
    let residual = ((z.re - r).powi(2) + z.im.powi(2)).sqrt();
    if residual > RANK_TOLERANCE || r < 0.0 {
        return Err(BlocksError::Integrality {
            value: z.re,
            residual,
        });
    }
    Ok(r as u64)
}

/// Rank of the bundle of genus-`g` chiral blocks with the given insertions.
pub fn rank(genus: u32, insertions: &[usize], md: &ModularData) -> Result<u64, BlocksError> {
    if insertions.is_empty() && genus == 0 {
        return Err(BlocksError::Degenerate {
            genus,
            insertions: 0,
        });
    }
    round_rank(rank_raw(genus, insertions, md))
}

/// All `m`-tuples of group positions whose product is the identity,
/// lexicographic with the identity tuple first.
pub fn gamma_out(group: &SimpleCurrentGroup, m: usize) -> Vec<Vec<usize>> {
    assert!(m >= 1);
    let n = group.order();
    let free = m - 1;
    let total = n.pow(free as u32);
    (0..total)
        .map(|idx| {
            let mut t = crate::modular::mixed_radix(idx, &vec![n; free]);
            let prod = group.product_of(&t);
            t.push(group.inverse(prod));
            t
        })
        .collect()
}

/// `F_mu(t, t') = prod_s F_{mu_s}(t_s, t'_s)`; `None` if some `t_s` is not
/// in the stabilizer of `mu_s`.
pub fn tuple_cocycle(
    data: &SimpleCurrentOrbitData,
    insertions: &[usize],
    t: &[usize],
    u: &[usize],
) -> Option<C64> {
    let mut acc = C64::one();
    for ((&mu, &a), &b) in insertions.iter().zip(t).zip(u) {
        acc *= data.f(mu, a, b)?;
    }
    Some(acc)
}

/// Tuples in `Gamma_out` stabilizing every insertion, and among them the
/// central ones `U_mu` on which the product cocycle is trivial.
pub fn admissible_tuples(
    data: &SimpleCurrentOrbitData,
    insertions: &[usize],
) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let stab: Vec<Vec<usize>> = gamma_out(&data.group, insertions.len())
        .into_iter()
        .filter(|t| {
            t.iter()
                .zip(insertions)
                .all(|(&a, &mu)| data.stabilizers[mu].binary_search(&a).is_ok())
        })
        .collect();
    let central = stab
        .iter()
        .filter(|t| {
            stab.iter().all(|u| {
                let f = tuple_cocycle(data, insertions, t, u).unwrap();
                (f - C64::one()).norm() < 1e-7
            })
        })
        .cloned()
        .collect();
    (stab, central)
}

/// `sum_nu |S_{Omega nu}|^{2-2g} prod_s S^{J_s}_{mu_s nu} / S_{Omega nu}`
/// with `S^J` zero outside the fixed points of `J`; each handle current
/// restricts the sum to its fixed points.
pub fn trace_with_handles(
    genus: u32,
    insertions: &[usize],
    currents: &[&SJMatrix],
    handles: &[&SJMatrix],
    md: &ModularData,
) -> C64 {
    (0..md.len())
        .filter(|&nu| handles.iter().all(|h| h.position(nu).is_some()))
        .map(|nu| {
            let s0 = md.s[(md.vacuum, nu)];
            insertions
                .iter()
                .zip(currents)
                .fold(C64::new(weight(md, nu, genus), 0.0), |acc, (&m, sj)| {
                    acc * sj.entry(m, nu) / s0
                })
        })
        .sum()
}

/// Trace of the map induced on blocks by a central current tuple.
pub fn conjecture1_trace(
    genus: u32,
    insertions: &[usize],
    tuple: &[usize],
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    sj: &mut dyn SJProvider,
) -> Result<C64, BlocksError> {
    if tuple.len() != insertions.len() {
        return Err(BlocksError::Length {
            got: tuple.len(),
            expected: insertions.len(),
        });
    }
    let g = &data.group;
    if g.product_of(tuple) != 0 {
        return Err(BlocksError::NotAdmissible {
            tuple: tuple.to_vec(),
            reason: "currents do not multiply to the vacuum".into(),
        });
    }
    for (s, (&a, &mu)) in tuple.iter().zip(insertions).enumerate() {
        if data.stabilizers[mu].binary_search(&a).is_err() {
            return Err(BlocksError::NotAdmissible {
                tuple: tuple.to_vec(),
                reason: format!("current at position {s} does not fix {}", md.labels[mu]),
            });
        }
    }
    let (_, central) = admissible_tuples(data, insertions);
    if !central.iter().any(|t| t == tuple) {
        return Err(BlocksError::NotAdmissible {
            tuple: tuple.to_vec(),
            reason: "product cocycle is nontrivial on this tuple".into(),
        });
    }
    let mats: Vec<SJMatrix> = tuple
        .iter()
        .map(|&a| sj.sj(g.elements[a]))
        .collect::<Result<_, _>>()?;
    let refs: Vec<&SJMatrix> = mats.iter().collect();
    Ok(trace_with_handles(genus, insertions, &refs, &[], md))
}

/// Fourier transform of traces over the group of central tuples:
/// `dim_psi = |U|^{-1} sum_t psi(t)^* tr(t)`, characters in the order
/// produced by [`simplecurrent::characters`].
pub fn fourier_eigendims(group: &SimpleCurrentGroup, tuples: &[Vec<usize>], traces: &[C64]) -> Vec<C64> {
    let index: HashMap<&Vec<usize>, usize> = tuples.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mul = |a: usize, b: usize| -> usize {
        let prod: Vec<usize> = tuples[a]
            .iter()
            .zip(&tuples[b])
            .map(|(&x, &y)| group.table[x][y])
            .collect();
        index[&prod]
    };
    let order = |a: usize| -> usize {
        tuples[a]
            .iter()
            .fold(1, |acc, &x| num_integer::lcm(acc, group.orders[x]))
    };
    let elements: Vec<usize> = (0..tuples.len()).collect();
    let chars = simplecurrent::characters(&elements, mul, order);
    let n = tuples.len() as f64;
    chars
        .iter()
        .map(|ch| {
            (0..tuples.len())
                .map(|i| exact::root_of_unity(-ch[&i]) * traces[i])
                .sum::<C64>()
                / n
        })
        .collect()
}

pub fn is_integer(z: C64, tol: f64) -> bool {
    (z.re - z.re.round()).abs() < tol && z.im.abs() < tol
}

/// Traces over all central tuples for one insertion list.
#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub genus: u32,
    pub insertions: Vec<usize>,
    pub rank: u64,
    /// Current tuples as label indices.
    pub tuples: Vec<Vec<usize>>,
    pub traces: Vec<(f64, f64)>,
    pub dims: Vec<(f64, f64)>,
    pub traces_integral: bool,
    pub dims_valid: bool,
    /// The identity tuple reproduces the rank.
    pub identity_matches_rank: bool,
}

pub fn trace_report(
    genus: u32,
    insertions: &[usize],
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    sj: &mut dyn SJProvider,
) -> Result<TraceReport, BlocksError> {
    let r = rank(genus, insertions, md)?;
    let (_, central) = admissible_tuples(data, insertions);
    let g = &data.group;
    let mut traces = Vec::with_capacity(central.len());
    for t in &central {
        let mats: Vec<SJMatrix> = t
            .iter()
            .map(|&a| sj.sj(g.elements[a]))
            .collect::<Result<_, _>>()?;
        let refs: Vec<&SJMatrix> = mats.iter().collect();
        traces.push(trace_with_handles(genus, insertions, &refs, &[], md));
    }
    let dims = fourier_eigendims(g, &central, &traces);
    let dims_valid = dims
        .iter()
        .all(|d| is_integer(*d, RANK_TOLERANCE) && d.re > -RANK_TOLERANCE)
        && (dims.iter().map(|d| d.re).sum::<f64>() - r as f64).abs() < RANK_TOLERANCE;
    Ok(TraceReport {
        genus,
        insertions: insertions.to_vec(),
        rank: r,
        tuples: central
            .iter()
            .map(|t| t.iter().map(|&a| g.elements[a]).collect())
            .collect(),
        traces_integral: traces.iter().all(|z| is_integer(*z, RANK_TOLERANCE)),
        identity_matches_rank: (traces[0] - C64::new(r as f64, 0.0)).norm() < RANK_TOLERANCE,
        traces: traces.iter().map(|z| (z.re, z.im)).collect(),
        dims: dims.iter().map(|z| (z.re, z.im)).collect(),
        dims_valid,
    })
}

/// Non-decreasing insertion lists of length `m` over `n` labels.
pub fn insertion_multisets(n: usize, m: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            rec(n, m, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, m, 0, &mut Vec::new(), &mut out);
    out
}

/// Outcome of the genus-adding identities for one insertion list.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct FactorizationCheck {
    /// `sum_nu rank(0, (mu, nu, nu+)) - rank(1, mu)`, exact.
    pub rank_difference: i64,
    /// Handle factor `eps_J`: `sum_nu S^J_{nu k} S^{J^-1}_{nu+ k'} = eps_J delta_{k k'}`.
    pub handle_phase: (f64, f64),
    /// Distance of that handle matrix from `eps_J` times the identity.
    pub handle_residual: f64,
    /// `|sum_nu tr(0, (mu, nu, nu+), (t, J, J^-1)) - eps_J tr_J(1, mu, t)|`,
    /// where `tr_J` sums over the fixed points of `J` only.
    pub trace_residual: f64,
}

/// Genus-adding identities: `sum_nu rank(0, (mu, nu, nu+)) = rank(1, mu)`
/// and, for a central tuple `t` and a handle current `J`,
/// `sum_nu tr(0, (mu, nu, nu+), (t, J, J^-1)) = eps_J tr_J(1, mu, t)`.
pub fn factorization_check(
    insertions: &[usize],
    tuple: &[usize],
    handle: usize,
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    sj: &mut dyn SJProvider,
) -> Result<FactorizationCheck, BlocksError> {
    let conj = md.conjugation();
    let mut sum: i64 = 0;
    for nu in 0..md.len() {
        let mut ins = insertions.to_vec();
        ins.extend([nu, conj[nu]]);
        sum += rank(0, &ins, md)? as i64;
    }
    let rank_difference = sum - rank(1, insertions, md)? as i64;
    let g = &data.group;
    let mats: Vec<SJMatrix> = tuple
        .iter()
        .map(|&a| sj.sj(g.elements[a]))
        .collect::<Result<_, _>>()?;
    let j = sj.sj(g.elements[handle])?;
    let j_inv = sj.sj(g.elements[g.inverse(handle)])?;
    let handle_matrix = |k: usize, l: usize| -> C64 {
        j.fixed
            .iter()
            .map(|&nu| j.entry(nu, k) * j_inv.entry(conj[nu], l))
            .sum()
    };
    let eps = j.fixed.first().map_or(C64::one(), |&k| handle_matrix(k, k));
    let mut handle_residual: f64 = 0.0;
    for &k in &j.fixed {
        for &l in &j.fixed {
            let target = if k == l { eps } else { C64::zero() };
            handle_residual = handle_residual.max((handle_matrix(k, l) - target).norm());
        }
    }
    let mut lhs = C64::zero();
    for &nu in &j.fixed {
        let mut ins = insertions.to_vec();
        ins.extend([nu, conj[nu]]);
        let mut refs: Vec<&SJMatrix> = mats.iter().collect();
        refs.push(&j);
        refs.push(&j_inv);
        lhs += trace_with_handles(0, &ins, &refs, &[], md);
    }
    let refs: Vec<&SJMatrix> = mats.iter().collect();
    let rhs = eps * trace_with_handles(1, insertions, &refs, &[&j], md);
    Ok(FactorizationCheck {
        rank_difference,
        handle_phase: (eps.re, eps.im),
        handle_residual,
        trace_residual: (lhs - rhs).norm(),
    })
}

/// Truncated Laurent series with exact coefficients, known on the exponent
/// window `[lo, valid)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Laurent {
    pub lo: i64,
    pub coeffs: Vec<Q>,
    pub valid: i64,
}

impl Laurent {
    pub fn monomial(c: Q, e: i64, valid: i64) -> Laurent {
        let mut s = Laurent::zero(e.min(valid), valid);
        if e < valid {
            s.coeffs[(e - s.lo) as usize] = c;
        }
        s
    }

    pub fn zero(lo: i64, valid: i64) -> Laurent {
        Laurent {
            lo,
            coeffs: vec![Q::zero(); (valid - lo).max(0) as usize],
            valid,
        }
    }

    pub fn coeff(&self, e: i64) -> Q {
        if e < self.lo || e >= self.valid {
            Q::zero()
        } else {
            self.coeffs[(e - self.lo) as usize]
        }
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let lo = self.lo + other.lo;
        let valid = (self.lo + other.valid).min(other.lo + self.valid);
        let mut out = Laurent::zero(lo, valid.max(lo));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let e = lo + (i + j) as i64;
                if e < out.valid {
                    out.coeffs[(e - lo) as usize] += a * b;
                }
            }
        }
        out
    }

    pub fn scale(&self, c: Q) -> Laurent {
        Laurent {
            lo: self.lo,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            valid: self.valid,
        }
    }

    pub fn derivative(&self) -> Laurent {
        let mut out = Laurent::zero(self.lo - 1, self.valid - 1);
        for (i, a) in self.coeffs.iter().enumerate() {
            let e = self.lo + i as i64;
            if e != 0 {
                out.coeffs[(e - 1 - out.lo) as usize] = a * q(e);
            }
        }
        out
    }

    /// Coefficient of `t^-1`, if known.
    pub fn residue(&self) -> Option<Q> {
        (self.valid > -1).then(|| self.coeff(-1))
    }

    /// `(t + a)^p` expanded around `t = 0` (`a != 0`), or `t^p` when `a = 0`.
    pub fn shifted_power(a: Q, p: i64, valid: i64) -> Laurent {
        if a.is_zero() {
            return Laurent::monomial(Q::one(), p, valid);
        }
        let mut out = Laurent::zero(0, valid.max(0));
        let mut binom = Q::one();
        for n in 0..out.coeffs.len() as i64 {
            if p >= 0 && n > p {
                break;
            }
            out.coeffs[n as usize] = binom * pow_q(a, p - n);
            binom = binom * q(p - n) / q(n + 1);
        }
        out
    }

    /// Differences on the common window.
    pub fn max_difference(&self, other: &Laurent) -> (Q, i64, i64) {
        let lo = self.lo.min(other.lo);
        let hi = self.valid.min(other.valid);
        let diff = (lo..hi)
            .map(|e| exact::abs_q(self.coeff(e) - other.coeff(e)))
            .fold(Q::zero(), |a, b| if b > a { b } else { a });
        (diff, lo, hi)
    }
}

fn pow_q(a: Q, e: i64) -> Q {
    if e >= 0 {
        (0..e).fold(Q::one(), |acc, _| acc * a)
    } else {
        Q::one() / pow_q(a, -e)
    }
}

/// Element of the truncated loop algebra: Cartan part (vectors in the
/// simple-root basis times series), root parts, and the central term.
#[derive(Debug, Clone)]
enum LoopTerm {
    Cartan(Vec<i64>, Laurent),
    Root(Vec<i64>, Laurent),
}

#[derive(Debug, Clone, Serialize)]
pub struct MultishiftReport {
    pub pairs_checked: usize,
    /// Largest coefficient discrepancy, exact.
    pub max_residual: String,
    pub residual_is_zero: bool,
    /// Smallest window on which all comparisons were made.
    pub window: (i64, i64),
}

/// Checks that the multi-shift map `sigma_nu` (coweights `nu_s` in
/// fundamental-coweight coordinates, points `z_s`) preserves the bracket
/// on pairs `(h (x) t^a, E^beta (x) t^b)`, `(E^beta (x) t^a, E^-beta (x) t^b)`,
/// `(E^beta (x) t^a, E^gamma (x) t^b)` and `(h (x) t^a, h' (x) t^b)` with
/// `|a|, |b| <= truncation`, in exact rational Laurent arithmetic.
pub fn multishift_validate(
    alg: &SimpleLieAlgebra,
    coweights: &[Vec<i64>],
    points: &[Q],
    truncation: i64,
) -> Result<MultishiftReport, BlocksError> {
    let m = coweights.len();
    assert_eq!(points.len(), m);
    let rank = alg.rank();
    if (0..rank).any(|i| coweights.iter().map(|c| c[i]).sum::<i64>() != 0) {
        return Err(BlocksError::NotBalanced);
    }
    for i in 0..m {
        for j in 0..i {
            if points[i] == points[j] {
                return Err(BlocksError::CoincidentPoints);
            }
        }
    }
    // internal precision: enough terms so that shifted powers stay exact on
    // the comparison window
    let max_shift: i64 = coweights
        .iter()
        .flat_map(|c| c.iter())
        .map(|x| x.abs())
        .sum::<i64>()
        * alg.marks.iter().sum::<i64>().max(1)
        + 2;
    let valid = truncation + 2 * max_shift + 4;
    // (nu_s, beta) for beta in the simple-root basis
    let pair = |s: usize, beta: &[i64]| -> i64 { coweights[s].iter().zip(beta).map(|(c, b)| c * b).sum() };
    let phi = |s: usize, p: i64| -> Laurent {
        // phi_{1,s}^{-p} = (t + z_1 - z_s)^p
        Laurent::shifted_power(points[0] - points[s], p, valid)
    };
    let factor = |beta: &[i64]| -> Laurent {
        (0..m).fold(Laurent::monomial(Q::one(), 0, valid), |acc, s| acc.mul(&phi(s, pair(s, beta))))
    };
    // central shift sum_s (nu_s, h) Res(phi_{1,s} f)
    let central_shift = |h: &[i64], f: &Laurent| -> Option<Q> {
        let mut acc = Q::zero();
        for s in 0..m {
            let r = phi(s, -1).mul(f).residue()?;
            acc += q(pair(s, h)) * r;
        }
        Some(acc)
    };
    let sigma = |x: &LoopTerm| -> (LoopTerm, Option<Q>) {
        match x {
            LoopTerm::Cartan(h, f) => (x.clone(), central_shift(h, f)),
            LoopTerm::Root(b, f) => (LoopTerm::Root(b.clone(), f.mul(&factor(b))), Some(Q::zero())),
        }
    };
    let roots: Vec<Vec<i64>> = alg
        .positive_roots
        .iter()
        .cloned()
        .chain(alg.positive_roots.iter().map(|r| r.iter().map(|x| -x).collect()))
        .collect();
    let is_root = |v: &[i64]| roots.iter().any(|r| r == v);
    // bracket of two terms: (optional loop part, central coefficient)
    let bracket = |x: &LoopTerm, y: &LoopTerm| -> Option<(Option<LoopTerm>, Option<Q>)> {
        match (x, y) {
            (LoopTerm::Cartan(h, f), LoopTerm::Cartan(k, g)) => Some((
                None,
                f.derivative().mul(g).residue().map(|r| r * alg.root_inner(h, k)),
            )),
            (LoopTerm::Cartan(h, f), LoopTerm::Root(b, g)) => Some((
                Some(LoopTerm::Root(b.clone(), f.mul(g).scale(alg.root_inner(h, b)))),
                Some(Q::zero()),
            )),
            (LoopTerm::Root(b, f), LoopTerm::Root(c, g)) => {
                let sum: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    // [E^b, E^-b] = h_b, (E^b, E^-b) = 1
                    Some((
                        Some(LoopTerm::Cartan(b.clone(), f.mul(g))),
                        f.derivative().mul(g).residue(),
                    ))
                } else if is_root(&sum) {
                    // structure constant normalized to one; the map is linear
                    Some((Some(LoopTerm::Root(sum, f.mul(g))), Some(Q::zero())))
                } else {
                    None
                }
            }
            _ => None,
        }
    };
    let mut worst = Q::zero();
    let mut window = (i64::MIN, i64::MAX);
    let mut checked = 0;
    let mut compare = |lhs: &(LoopTerm, Option<Q>), rhs: &(Option<LoopTerm>, Option<Q>)| {
        let (lt, lc) = lhs;
        let (rt, rc) = rhs;
        if let (Some(a), Some(b)) = (lc, rc) {
            worst = worst.max(exact::abs_q(*a - *b));
        }
        if let Some(rt) = rt {
            let (d, lo, hi) = match (lt, rt) {
                (LoopTerm::Cartan(h, f), LoopTerm::Cartan(k, g)) if h == k => f.max_difference(g),
                (LoopTerm::Root(b, f), LoopTerm::Root(c, g)) if b == c => f.max_difference(g),
                _ => (Q::one(), 0, 0),
            };
            worst = worst.max(d);
            window = (window.0.max(lo), window.1.min(hi));
        }
        checked += 1;
    };
    let mut failures = 0usize;
    let series = |a: i64| Laurent::monomial(Q::one(), a, valid);
    let cartan: Vec<Vec<i64>> = (0..rank)
        .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
        .collect();
    for a in -truncation..=truncation {
        for b in -truncation..=truncation {
            let mut pairs: Vec<(LoopTerm, LoopTerm)> = Vec::new();
            for h in &cartan {
                for k in &cartan {
                    pairs.push((LoopTerm::Cartan(h.clone(), series(a)), LoopTerm::Cartan(k.clone(), series(b))));
                }
                for beta in &roots {
                    pairs.push((LoopTerm::Cartan(h.clone(), series(a)), LoopTerm::Root(beta.clone(), series(b))));
                }
            }
            for beta in &roots {
                for gamma in &roots {
                    pairs.push((LoopTerm::Root(beta.clone(), series(a)), LoopTerm::Root(gamma.clone(), series(b))));
                }
            }
            for (x, y) in &pairs {
                let Some((loop_part, central)) = bracket(x, y) else {
                    continue;
                };
                // sigma([x, y]) with the central part untouched
                let lhs = match &loop_part {
                    Some(t) => {
                        let (st, sc) = sigma(t);
                        (st, match (central, sc) {
                            (Some(c), Some(s)) => Some(c + s),
                            _ => None,
                        })
                    }
                    None => (LoopTerm::Cartan(vec![0; rank], Laurent::zero(0, 0)), central),
                };
                // [sigma x, sigma y]; central shifts of sigma x, sigma y drop out
                let (sx, _) = sigma(x);
                let (sy, _) = sigma(y);
                let Some(rhs) = bracket(&sx, &sy) else {
                    failures += 1;
                    continue;
                };
                compare(&lhs, &rhs);
            }
        }
    }
    if failures > 0 {
        worst = worst.max(Q::one());
    }
    Ok(MultishiftReport {
        pairs_checked: checked,
        max_residual: worst.to_string(),
        residual_is_zero: worst.is_zero(),
        window,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion;
    use crate::liealg::DEFAULT_WEYL_CAP;
    use crate::simplecurrent::TheorySJ;
    use crate::theory::Theory;

    fn theory(s: &str) -> Theory {
        Theory::new(&s.parse().unwrap(), DEFAULT_WEYL_CAP).unwrap()
    }

    #[test]
    fn three_point_ranks_are_fusion_coefficients() {
        let th = theory("A2_k2");
        let ring = fusion::verlinde(&th.md).unwrap();
        let conj = th.md.conjugation();
        for l in 0..th.md.len() {
            for m in 0..th.md.len() {
                for n in 0..th.md.len() {
                    assert_eq!(rank(0, &[l, m, conj[n]], &th.md).unwrap(), ring.n(l, m, n) as u64);
                }
            }
        }
        assert_eq!(rank(1, &[], &th.md).unwrap(), th.md.len() as u64);
    }

    #[test]
    fn gamma_out_for_z2() {
        let th = theory("A1_k3");
        let ring = fusion::verlinde(&th.md).unwrap();
        let g = fusion::simple_currents(&th.md, &ring).unwrap();
        let t = gamma_out(&g, 3);
        assert_eq!(t, vec![vec![0, 0, 0], vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert_eq!(gamma_out(&g, 2), vec![vec![0, 0], vec![1, 1]]);
    }

    #[test]
    fn su2_level_four_fixed_point_trace() {
        let th = theory("A1_k4");
        let ring = fusion::verlinde(&th.md).unwrap();
        let g = fusion::simple_currents(&th.md, &ring).unwrap();
        let mut sj = TheorySJ::new(&th);
        let data = simplecurrent::orbit_data(&th.md, &g, &mut sj).unwrap();
        let tr = conjecture1_trace(0, &[2, 2, 2], &[1, 1, 0], &th.md, &data, &mut sj).unwrap();
        assert!((tr.norm() - 1.0).abs() < 1e-9);
        let rep = trace_report(0, &[2, 2, 2], &th.md, &data, &mut sj).unwrap();
        assert_eq!(rep.rank, 1);
        assert!(rep.dims_valid && rep.traces_integral);
    }

    #[test]
    fn z2_fourier() {
        let th = theory("A1_k1");
        let ring = fusion::verlinde(&th.md).unwrap();
        let g = fusion::simple_currents(&th.md, &ring).unwrap();
        let tuples = vec![vec![0, 0], vec![1, 1]];
        let d = fourier_eigendims(&g, &tuples, &[C64::new(5.0, 0.0), C64::new(3.0, 0.0)]);
        assert!((d[0] - C64::new(4.0, 0.0)).norm() < 1e-12);
        assert!((d[1] - C64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn laurent_shifted_power_inverts() {
        let a = Q::new(1, 2);
        let p = Laurent::shifted_power(a, 3, 6);
        let m = Laurent::shifted_power(a, -3, 6);
        let one = p.mul(&m);
        assert_eq!(one.coeff(0), Q::one());
        for e in 1..6 {
            assert_eq!(one.coeff(e), Q::zero());
        }
    }

    #[test]
    fn multishift_su2() {
        let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
        let pts = [q(0), q(1), q(3)];
        let r = multishift_validate(&alg, &[vec![1], vec![-1]], &pts[..2], 4).unwrap();
        assert!(r.residual_is_zero, "{r:?}");
        let r = multishift_validate(&alg, &[vec![1], vec![1], vec![-2]], &pts, 4).unwrap();
        assert!(r.residual_is_zero, "{r:?}");
        assert!(matches!(
            multishift_validate(&alg, &[vec![1], vec![0]], &pts[..2], 4),
            Err(BlocksError::NotBalanced)
        ));
    }
}
