//! Z2 orbifolds: sector bookkeeping, the orbifold `S` and `T` matrices, the
//! `P` matrix, WZW inputs for inner automorphisms, and the twisted trace
//! formula for chiral blocks.

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::affine::{self, AffineError, OrbitKind};
use crate::blocks::{self, BlocksError};
use crate::exact::{self, q, Q};
use crate::fusion::{self, FusionError, FusionRing};
use crate::liealg::{DiagramAutomorphism, Series, SimpleLieAlgebra};
use crate::modular::{self, CMat, InvariantViolation, Label, ModularData, ModularResiduals, C64};

pub const ORBIFOLD_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OrbifoldError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Blocks(#[from] BlocksError),
    #[error("orbifold precondition failed: {0}")]
    Precondition(String),
    #[error("orbifold assembly failed: {0}")]
    Assembly(#[from] InvariantViolation),
    #[error("square root of T^(1) on {label} is ambiguous: {detail}")]
    Branch { label: String, detail: String },
    #[error("insertion {label} is not a fixed point of the orbifold action")]
    NotFixed { label: String },
    #[error("eigenspace dimensions {dims:?} are not non-negative integers")]
    ConjectureViolation { dims: Vec<(f64, f64)> },
}

/// Everything the orbifold assembly needs from the parent theory.
#[derive(Debug, Clone)]
pub struct OrbifoldInput {
    pub base: ModularData,
    /// Involutive permutation of the base labels.
    pub sigma: Vec<usize>,
    /// Fixed points of `sigma`, increasing.
    pub fixed: Vec<usize>,
    /// `eta_mu = exp(2 pi i eta[i])` for `mu = fixed[i]`.
    pub eta: Vec<Q>,
    pub twisted_labels: Vec<Label>,
    /// Rows: fixed points; columns: twisted labels.
    pub s0: CMat,
    /// Exponents of `T^(1)` in `[0, 1)`, one per twisted label.
    pub t1: Vec<Q>,
    /// Twisted labels are canonically identified with fixed points
    /// (`twisted_labels[i]` belongs to `fixed[i]`).
    pub canonical: bool,
    /// The charge-conjugation automorphism of `A_{2n}`.
    pub exceptional: bool,
    /// Coweight coordinates of the shift vector, when one was used.
    pub shift: Option<Vec<Q>>,
}

impl OrbifoldInput {
    pub fn eta(&self, i: usize) -> C64 {
        exact::root_of_unity(self.eta[i])
    }

    pub fn check(&self) -> Result<(), OrbifoldError> {
        let n = self.base.len();
        if self.sigma.len() != n || (0..n).any(|m| self.sigma[self.sigma[m]] != m) {
            return Err(OrbifoldError::Precondition("sigma* is not an involution".into()));
        }
        if self.sigma[self.base.vacuum] != self.base.vacuum {
            return Err(OrbifoldError::Precondition("sigma* moves the vacuum".into()));
        }
        let f = self.fixed.len();
        if self.s0.nrows() != f || self.s0.ncols() != f || self.t1.len() != f {
            return Err(OrbifoldError::Precondition(format!(
                "{f} fixed points but S^(0) is {}x{}",
                self.s0.nrows(),
                self.s0.ncols()
            )));
        }
        let u = max_unitarity(&self.s0);
        if u > ORBIFOLD_TOLERANCE {
            return Err(InvariantViolation {
                relation: "S^(0) unitary".into(),
                residual: u,
                tolerance: ORBIFOLD_TOLERANCE,
            }
            .into());
        }
        Ok(())
    }
}

fn max_unitarity(m: &CMat) -> f64 {
    modular::max_abs(&(m * m.adjoint() - modular::identity(m.nrows())))
}

/// `(s, mu)` for a shift in fundamental-coweight coordinates `c` and a weight
/// in Dynkin labels, using `(w_i^vee, w_j) = G_ij / D_i`.
pub fn shift_pairing(alg: &SimpleLieAlgebra, c: &[Q], mu: &[i64]) -> Q {
    let n = alg.rank();
    let mut s = Q::zero();
    for i in 0..n {
        for j in 0..n {
            s += c[i] * q(mu[j]) * alg.metric[i][j] / alg.half_root_lengths[i];
        }
    }
    s
}

/// `(s, s)` for a shift in fundamental-coweight coordinates.
pub fn shift_norm(alg: &SimpleLieAlgebra, c: &[Q]) -> Q {
    let n = alg.rank();
    let mut s = Q::zero();
    for i in 0..n {
        for j in 0..n {
            s += c[i] * c[j] * alg.metric[i][j] / (alg.half_root_lengths[i] * alg.half_root_lengths[j]);
        }
    }
    s
}

/// Inner Z2 orbifold of `alg` at level `k` by `exp(2 pi i ad H_s)`, with
/// `s = sum_i c_i w_i^vee`.
///
/// The automorphism `sigma_s` must square to the identity, which requires
/// `2 c_i` integral. Shifts in the coroot lattice give the identity on
/// every module and are rejected.
pub fn inner_orbifold_input(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    c: &[Q],
) -> Result<OrbifoldInput, OrbifoldError> {
    let n = alg.rank();
    if c.len() != n {
        return Err(OrbifoldError::Precondition(format!(
            "shift has {} coordinates, rank is {n}",
            c.len()
        )));
    }
    if let Some(x) = c.iter().find(|x| !(**x * q(2)).is_integer()) {
        return Err(OrbifoldError::Precondition(format!(
            "2 (s, alpha) = {} is not an integer; exp(2 pi i ad H_s) does not have order 2",
            *x * q(2)
        )));
    }
    // s lies in the coroot lattice iff (s, w_j) is integral for all j.
    let in_coroot_lattice = (0..n).all(|j| {
        let mut w = vec![0; n];
        w[j] = 1;
        shift_pairing(alg, c, &w).is_integer()
    });
    if in_coroot_lattice {
        return Err(OrbifoldError::Precondition(
            "shift lies in the coroot lattice; the automorphism is trivial".into(),
        ));
    }
    let weights: Vec<Vec<i64>> = md
        .labels
        .iter()
        .map(|l| match l {
            Label::Weight(w) => Ok(w.clone()),
            other => Err(OrbifoldError::Precondition(format!("{other} is not a WZW label"))),
        })
        .collect::<Result<_, _>>()?;
    let ss = shift_norm(alg, c);
    let size = md.len();
    let eta: Vec<Q> = weights
        .iter()
        .map(|w| exact::frac(shift_pairing(alg, c, w)))
        .collect();
    let t1: Vec<Q> = (0..size)
        .map(|m| {
            let p = shift_pairing(alg, c, &weights[m]);
            exact::frac(q(k) * ss + q(2) * p + q(2) * (md.delta[m] - md.c / q(24)))
        })
        .collect();
    let twisted_labels = md
        .labels
        .iter()
        .map(|l| Label::Tag(format!("{l}'")))
        .collect();
    Ok(OrbifoldInput {
        base: md.clone(),
        sigma: (0..size).collect(),
        fixed: (0..size).collect(),
        eta,
        twisted_labels,
        s0: md.s.clone(),
        t1,
        canonical: true,
        exceptional: false,
        shift: Some(c.to_vec()),
    })
}

/// The label permutation induced by a finite diagram automorphism (given on
/// the finite nodes `0..rank`), extended to the affine diagram by fixing
/// node 0.
pub fn outer_label_action(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    sigma0: &[usize],
) -> Result<(DiagramAutomorphism, Vec<usize>), OrbifoldError> {
    let n = alg.rank();
    let finite = DiagramAutomorphism::new(sigma0.to_vec(), false);
    if sigma0.len() != n || !finite.preserves(&alg.cartan) {
        return Err(OrbifoldError::Precondition(format!(
            "{sigma0:?} is not a diagram automorphism of {}",
            alg.spec
        )));
    }
    if finite.order != 2 {
        return Err(OrbifoldError::Precondition(format!(
            "diagram automorphism {sigma0:?} has order {}, not 2",
            finite.order
        )));
    }
    let mut perm = vec![0];
    perm.extend(sigma0.iter().map(|&i| i + 1));
    let pi = DiagramAutomorphism::new(perm, true);
    let star = affine::label_permutation(alg, k, md, &pi);
    Ok((pi, star))
}

/// Outer Z2 orbifold by `sigma0` composed with a shift. The induced label
/// action is computed; the twisted-sector matrix `S^(0)` requires the
/// Kac–Peterson matrix of a twisted orbit Lie algebra, which is not
/// implemented, so this reports `NotImplemented` with the fixed-point count.
pub fn outer_orbifold_input(
    alg: &SimpleLieAlgebra,
    k: i64,
    md: &ModularData,
    sigma0: &[usize],
    c: &[Q],
) -> Result<OrbifoldInput, OrbifoldError> {
    if c.len() != alg.rank() || c.iter().any(|x| !(*x * q(2)).is_integer()) {
        return Err(OrbifoldError::Precondition("shift must have half-integral coordinates".into()));
    }
    let (pi, star) = outer_label_action(alg, k, md, sigma0)?;
    let fixed = (0..md.len()).filter(|&m| star[m] == m).count();
    let desc = affine::orbit_algebra(alg, k, md, &pi)?;
    let exceptional = alg.spec.series == Series::A && alg.rank() % 2 == 0;
    let kind = match desc.kind {
        OrbitKind::Twisted => "a twisted affine algebra",
        OrbitKind::Trivial => "a degenerate diagram",
        OrbitKind::Untwisted { .. } => "an unexpected untwisted algebra",
    };
    Err(AffineError::NotImplemented(format!(
        "outer orbifold of {} level {k} by {sigma0:?}: sigma* has {fixed} fixed points, the orbit Lie algebra is {kind}{}",
        alg.spec,
        if exceptional { " (A_2n exceptional branch)" } else { "" }
    ))
    .into())
}

/// The three kinds of orbifold sectors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sector {
    /// `(mu, 0, 0)` for a length-2 orbit `{mu, sigma* mu}`.
    Orbit { rep: usize },
    /// `(mu, psi, 0)` for a fixed point `fixed[index]`.
    Fixed { index: usize, psi: i8 },
    /// `(mu', psi, 1)` for the twisted label `index`.
    Twisted { index: usize, psi: i8 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OrbifoldChecks {
    pub residuals: ModularResiduals,
    pub fusion_rounding: f64,
    /// `S^(0) S^(0)` as a signed permutation, when square.
    pub s0_squared: Option<SignedPermutation>,
    pub p_squared: SignedPermutation,
    /// `|P^2|` and `|S^(0) S^(0)|` agree.
    pub p_matches_s0: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SignedPermutation {
    pub perm: Vec<usize>,
    pub signs: Vec<f64>,
    pub residual: f64,
}

impl SignedPermutation {
    fn of(m: &CMat) -> SignedPermutation {
        let (perm, signs, residual) = modular::nearest_signed_permutation(m);
        SignedPermutation { perm, signs, residual }
    }
}

#[derive(Debug, Clone)]
pub struct OrbifoldModularData {
    pub sectors: Vec<Sector>,
    pub md: ModularData,
    pub p: CMat,
    /// `sqrt(T^(1))` exponents used, `exp(pi i x)` with `x` in `[0, 1)`.
    pub t1_half: Vec<Q>,
    pub ring: FusionRing,
    /// The current `(Omega, -, 0)` dual to the orbifold group.
    pub dual_current: usize,
    pub checks: OrbifoldChecks,
}

fn psi_tag(psi: i8) -> &'static str {
    match psi {
        1 => "+",
        -1 => "-",
        _ => "0",
    }
}

/// `P = sqrt(T^(1)) S0^T diag(T / eta^2) S0 sqrt(T^(1))`, where `T / eta^2`
/// is `(eta^{-1} T^(0))^2` restricted to fixed points.
pub fn p_matrix(input: &OrbifoldInput) -> CMat {
    let t = input.base.t();
    let f = input.fixed.len();
    let mid: Vec<C64> = (0..f)
        .map(|i| t[input.fixed[i]] / (input.eta(i) * input.eta(i)))
        .collect();
    let half: Vec<C64> = input
        .t1
        .iter()
        .map(|x| exact::root_of_unity(*x / q(2)))
        .collect();
    let h = modular::diag(&half);
    &h * input.s0.transpose() * modular::diag(&mid) * &input.s0 * &h
}

/// Orbifold modular data from the six-case formula.
pub fn assemble_orbifold(input: &OrbifoldInput) -> Result<OrbifoldModularData, OrbifoldError> {
    input.check()?;
    let base = &input.base;
    let n = base.len();
    let mut sectors = Vec::new();
    for m in 0..n {
        if input.sigma[m] > m {
            sectors.push(Sector::Orbit { rep: m });
        }
    }
    for index in 0..input.fixed.len() {
        for psi in [1, -1] {
            sectors.push(Sector::Fixed { index, psi });
        }
    }
    for index in 0..input.twisted_labels.len() {
        for psi in [1, -1] {
            sectors.push(Sector::Twisted { index, psi });
        }
    }
    // The base vacuum is a fixed point; (Omega, +, 0) is the orbifold vacuum.
    let vac_fixed = input
        .fixed
        .iter()
        .position(|&m| m == base.vacuum)
        .ok_or_else(|| OrbifoldError::Precondition("vacuum is not fixed".into()))?;
    let vacuum = sectors
        .iter()
        .position(|s| *s == Sector::Fixed { index: vac_fixed, psi: 1 })
        .unwrap();
    let dual_current = sectors
        .iter()
        .position(|s| *s == Sector::Fixed { index: vac_fixed, psi: -1 })
        .unwrap();

    let p = p_matrix(input);
    let t1_half: Vec<Q> = input.t1.iter().map(|x| *x / q(2)).collect();
    let s = &base.s;
    let half = 0.5;
    let entry = |a: Sector, b: Sector| -> C64 {
        use Sector::*;
        match (a, b) {
            (Orbit { rep: l }, Orbit { rep: m }) => s[(l, m)] + s[(l, input.sigma[m])],
            (Orbit { rep: l }, Fixed { index, .. }) => s[(l, input.fixed[index])],
            (Fixed { index, .. }, Orbit { rep: m }) => s[(input.fixed[index], m)],
            (Orbit { .. }, Twisted { .. }) | (Twisted { .. }, Orbit { .. }) => C64::zero(),
            (Fixed { index: i, .. }, Fixed { index: j, .. }) => {
                s[(input.fixed[i], input.fixed[j])] * half
            }
            (Fixed { index: i, psi }, Twisted { index: j, .. }) => {
                input.s0[(i, j)] * (f64::from(psi) * half) / input.eta(i)
            }
            (Twisted { index: i, .. }, Fixed { index: j, psi }) => {
                input.s0[(j, i)] * (f64::from(psi) * half) / input.eta(j)
            }
            (Twisted { index: i, psi }, Twisted { index: j, psi: psi2 }) => {
                p[(i, j)] * (f64::from(psi) * f64::from(psi2) * half)
            }
        }
    };
    let size = sectors.len();
    let rows: Vec<Vec<C64>> = (0..size)
        .into_par_iter()
        .map(|a| (0..size).map(|b| entry(sectors[a], sectors[b])).collect())
        .collect();
    let so = CMat::from_fn(size, size, |a, b| rows[a][b]);

    let mut delta = Vec::with_capacity(size);
    let mut labels = Vec::with_capacity(size);
    for sec in &sectors {
        match *sec {
            Sector::Orbit { rep } => {
                delta.push(base.delta[rep]);
                labels.push(sector_label(&base.labels[rep], 0, 0));
            }
            Sector::Fixed { index, psi } => {
                let m = input.fixed[index];
                delta.push(base.delta[m]);
                labels.push(sector_label(&base.labels[m], psi, 0));
            }
            Sector::Twisted { index, psi } => {
                // T^O = psi exp(pi i t1), so Delta - c/24 = t1/2 (+ 1/2 if psi = -1).
                let mut d = t1_half[index] + base.c / q(24);
                if psi < 0 {
                    d += exact::qr(1, 2);
                }
                delta.push(d);
                labels.push(sector_label(&input.twisted_labels[index], psi, 1));
            }
        }
    }
    let md = ModularData {
        name: format!("{}/Z2", base.name),
        labels,
        vacuum,
        s: so,
        delta,
        c: base.c,
    };
    let residuals = md.check(ORBIFOLD_TOLERANCE)?;
    let (ring, report) = fusion::verlinde_with_report(&md, fusion::INTEGRALITY_TOLERANCE)?;
    if !ring.is_simple_current(dual_current) {
        return Err(InvariantViolation {
            relation: "(Omega, -, 0) is a simple current".into(),
            residual: 1.0,
            tolerance: 0.0,
        }
        .into());
    }

    let p2 = SignedPermutation::of(&(&p * &p));
    if p2.residual > ORBIFOLD_TOLERANCE {
        return Err(InvariantViolation {
            relation: "P^2 is a signed permutation".into(),
            residual: p2.residual,
            tolerance: ORBIFOLD_TOLERANCE,
        }
        .into());
    }
    let (s0_squared, p_matches_s0) = if input.canonical {
        let sq = SignedPermutation::of(&(&input.s0 * &input.s0));
        if sq.residual > ORBIFOLD_TOLERANCE {
            return Err(InvariantViolation {
                relation: "S^(0) S^(0) is a signed permutation".into(),
                residual: sq.residual,
                tolerance: ORBIFOLD_TOLERANCE,
            }
            .into());
        }
        let agree = sq.perm == p2.perm;
        if !agree {
            return Err(InvariantViolation {
                relation: "P^2 = S^(0) S^(0) up to signs".into(),
                residual: 1.0,
                tolerance: ORBIFOLD_TOLERANCE,
            }
            .into());
        }
        (Some(sq), Some(agree))
    } else {
        (None, None)
    };

    Ok(OrbifoldModularData {
        sectors,
        md,
        p,
        t1_half,
        ring,
        dual_current,
        checks: OrbifoldChecks {
            residuals,
            fusion_rounding: report.max_residual,
            s0_squared,
            p_squared: p2,
            p_matches_s0,
        },
    })
}

fn sector_label(base: &Label, psi: i8, twist: u8) -> Label {
    Label::Tuple(vec![
        base.clone(),
        Label::Tag(psi_tag(psi).into()),
        Label::Tag(twist.to_string()),
    ])
}

/// Which index of `S^(0)` carries the twisted label in the trace formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
pub enum Orientation {
    /// `S^(0)_{mu, kappa'}`: fixed-point row, twisted column.
    FixedRow,
    /// `S^(0)_{kappa, mu'}` with `mu'` the label paired with `mu`; needs the
    /// canonical correspondence.
    TwistedRow,
}

#[derive(Debug, Clone, Serialize)]
pub struct Conjecture2Report {
    pub insertions: Vec<usize>,
    pub orientation: Orientation,
    pub rank: u64,
    pub trace: (f64, f64),
    pub dims: [(f64, f64); 2],
    pub integral: bool,
}

/// `sum_k |S0_{k Omega}|^2 prod_i S0_{k mu_i} / S0_{k Omega}` at genus 0,
/// with the eigenspace dimensions `(rank +- trace) / 2`.
pub fn conjecture2_trace(
    insertions: &[usize],
    input: &OrbifoldInput,
    orientation: Orientation,
) -> Result<Conjecture2Report, OrbifoldError> {
    let pos = |m: usize| -> Result<usize, OrbifoldError> {
        input.fixed.binary_search(&m).map_err(|_| OrbifoldError::NotFixed {
            label: input.base.labels[m].to_string(),
        })
    };
    let idx: Vec<usize> = insertions.iter().map(|&m| pos(m)).collect::<Result<_, _>>()?;
    let omega = pos(input.base.vacuum)?;
    if orientation == Orientation::TwistedRow && !input.canonical {
        return Err(OrbifoldError::Precondition(
            "the twisted-row orientation needs the canonical label correspondence".into(),
        ));
    }
    let entry = |kappa: usize, mu: usize| -> C64 {
        match orientation {
            Orientation::FixedRow => input.s0[(mu, kappa)],
            Orientation::TwistedRow => input.s0[(kappa, mu)],
        }
    };
    let trace: C64 = (0..input.twisted_labels.len())
        .map(|kappa| {
            let v = entry(kappa, omega);
            idx.iter().fold(C64::new(v.norm_sqr(), 0.0), |acc, &m| acc * entry(kappa, m) / v)
        })
        .sum();
    let rank = blocks::rank(0, insertions, &input.base)?;
    let r = rank as f64;
    let dims = [(r + trace) / 2.0, (r - trace) / 2.0];
    let integral = dims.iter().all(|d| {
        blocks::is_integer(*d, fusion::INTEGRALITY_TOLERANCE) && d.re > -fusion::INTEGRALITY_TOLERANCE
    });
    Ok(Conjecture2Report {
        insertions: insertions.to_vec(),
        orientation,
        rank,
        trace: (trace.re, trace.im),
        dims: [(dims[0].re, dims[0].im), (dims[1].re, dims[1].im)],
        integral,
    })
}

/// Runs the trace formula on every fixed-point multiset of size `m` under
/// both orientations; returns the reports per orientation.
pub fn conjecture2_sweep(
    input: &OrbifoldInput,
    m: usize,
) -> Result<Vec<(Orientation, Vec<Conjecture2Report>)>, OrbifoldError> {
    let mut out = Vec::new();
    let orientations: &[Orientation] = if input.canonical {
        &[Orientation::FixedRow, Orientation::TwistedRow]
    } else {
        &[Orientation::FixedRow]
    };
    for &o in orientations {
        let reports = blocks::insertion_multisets(input.fixed.len(), m)
            .into_iter()
            .map(|ins| {
                let labels: Vec<usize> = ins.iter().map(|&i| input.fixed[i]).collect();
                conjecture2_trace(&labels, input, o)
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push((o, reports));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;

    fn su2(k: i64) -> (SimpleLieAlgebra, ModularData) {
        let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
        let md = affine::kac_peterson(&alg, k, DEFAULT_WEYL_CAP).unwrap();
        (alg, md)
    }

    #[test]
    fn zero_shift_rejected() {
        let (alg, md) = su2(2);
        assert!(matches!(
            inner_orbifold_input(&alg, 2, &md, &[q(0)]),
            Err(OrbifoldError::Precondition(_))
        ));
        assert!(inner_orbifold_input(&alg, 2, &md, &[q(2)]).is_err());
        assert!(inner_orbifold_input(&alg, 2, &md, &[exact::qr(1, 3)]).is_err());
    }

    #[test]
    fn su2_eta_alternates() {
        let (alg, md) = su2(4);
        let input = inner_orbifold_input(&alg, 4, &md, &[q(1)]).unwrap();
        for (m, l) in md.labels.iter().enumerate() {
            let Label::Weight(w) = l else { unreachable!() };
            assert_eq!(input.eta[m], exact::qr(w[0] % 2, 2));
        }
        assert_eq!(input.fixed.len(), md.len());
    }

    #[test]
    fn su2_orbifolds_are_modular() {
        for k in 1..=4 {
            let (alg, md) = su2(k);
            let input = inner_orbifold_input(&alg, k, &md, &[q(1)]).unwrap();
            let orb = assemble_orbifold(&input).unwrap();
            assert_eq!(orb.md.len(), 4 * md.len());
            assert!(orb.checks.residuals.max() < 1e-10, "k={k}");
            assert_eq!(orb.checks.p_matches_s0, Some(true));
        }
    }

    #[test]
    fn input_must_fix_vacuum() {
        let (alg, md) = su2(2);
        let mut input = inner_orbifold_input(&alg, 2, &md, &[q(1)]).unwrap();
        input.sigma = vec![2, 1, 0];
        assert!(input.check().is_err());
    }

    #[test]
    fn omega_insertions_give_unit_trace() {
        let (alg, md) = su2(3);
        let input = inner_orbifold_input(&alg, 3, &md, &[q(1)]).unwrap();
        let r = conjecture2_trace(&[0, 0, 0], &input, Orientation::FixedRow).unwrap();
        assert!((r.trace.0 - 1.0).abs() < 1e-12);
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn a3_flip_has_two_fixed_points() {
        let alg = SimpleLieAlgebra::new("A3".parse().unwrap());
        let md = affine::kac_peterson(&alg, 1, DEFAULT_WEYL_CAP).unwrap();
        let (_, star) = outer_label_action(&alg, 1, &md, &[2, 1, 0]).unwrap();
        let fixed: Vec<usize> = (0..md.len()).filter(|&m| star[m] == m).collect();
        assert_eq!(fixed.len(), 2);
        let err = outer_orbifold_input(&alg, 1, &md, &[2, 1, 0], &[q(0); 3]).unwrap_err();
        assert!(matches!(err, OrbifoldError::Affine(AffineError::NotImplemented(_))));
    }

    #[test]
    fn double_orbifold_returns_original_size() {
        use crate::affine::SJMatrix;
        use crate::fusion::SimpleCurrentGroup;
        use crate::simplecurrent::{self, ExplicitSJ};
        use std::collections::HashMap;
        let (alg, md) = su2(2);
        let input = inner_orbifold_input(&alg, 2, &md, &[q(1)]).unwrap();
        let orb = assemble_orbifold(&input).unwrap();
        let group = SimpleCurrentGroup::generated(&orb.ring, &[orb.dual_current]).unwrap();
        // J moves every sector, so no fixed-point matrix is needed.
        let mut matrices = HashMap::new();
        matrices.insert(
            orb.dual_current,
            SJMatrix {
                current: orb.dual_current,
                fixed: vec![],
                matrix: CMat::zeros(0, 0),
                convention: affine::PhaseConvention::Identity,
            },
        );
        let mut sj = ExplicitSJ { md: orb.md.clone(), matrices };
        let data = simplecurrent::orbit_data(&orb.md, &group, &mut sj).unwrap();
        let ext = simplecurrent::extended_smatrix(&orb.md, &data, &mut sj).unwrap();
        assert_eq!(ext.classes.len(), md.len());
        assert!(modular::match_modular_data(&ext.md, &md, 1e-8).is_some());
    }

    #[test]
    fn conjecture2_dims_integral() {
        for k in [2, 4] {
            let (alg, md) = su2(k);
            let input = inner_orbifold_input(&alg, k, &md, &[q(1)]).unwrap();
            for (_, reports) in conjecture2_sweep(&input, 3).unwrap() {
                assert!(reports.iter().all(|r| r.integral));
            }
        }
    }
}
