//! Classifying algebras for boundary conditions that preserve an orbifold
//! subalgebra: bulk labels, boundary labels, the diagonalizing matrix,
//! reflection coefficients and structure constants.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineError, PhaseConvention, SJMatrix};
use crate::exact::{self, Q};
use crate::fusion::{self, FusionRing, SimpleCurrentGroup};
use crate::modular::{CMat, Label, ModularData, C64};
use crate::orbifold::{OrbifoldInput, OrbifoldModularData, Sector};
use crate::simplecurrent::{self, ExplicitSJ, SJProvider, SimpleCurrentError, SimpleCurrentOrbitData};

pub const BOUNDARY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundaryError {
    #[error(transparent)]
    SimpleCurrent(#[from] SimpleCurrentError),
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error("{hat} bulk labels but {boundary} boundary labels")]
    CountMismatch { hat: usize, boundary: usize },
    #[error("the boundary diagonalizing matrix is singular")]
    Singular,
    #[error("boundary label {label} has vanishing vacuum entry")]
    DegenerateBoundary { label: String },
    #[error("{relation} fails: residual {residual:.3e}")]
    Check { relation: String, residual: f64 },
}

/// A bulk label `(mu, psi)`: an untwisted sector with a character of its
/// full stabilizer.
#[derive(Debug, Clone, Serialize)]
pub struct HatLabel {
    pub sector: usize,
    pub psi: usize,
    pub label: Label,
}

/// A boundary label `[rho, psi]`: an orbit of the current group on any
/// sector, with a character of the central stabilizer.
#[derive(Debug, Clone, Serialize)]
pub struct BoundaryLabel {
    pub rep: usize,
    pub orbit: usize,
    pub psi: usize,
    /// The representative has non-vanishing monodromy charge.
    pub twisted: bool,
    pub label: Label,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyingAlgebra {
    pub hat: Vec<HatLabel>,
    pub boundary: Vec<BoundaryLabel>,
    #[serde(skip)]
    pub s_hat: CMat,
    /// `N[l][m][n]` with the last index raised.
    #[serde(skip)]
    pub n: Vec<Vec<Vec<C64>>>,
    pub unit: usize,
    pub unit_residual: f64,
    pub associativity_residual: f64,
}

impl ClassifyingAlgebra {
    pub fn len(&self) -> usize {
        self.hat.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hat.is_empty()
    }

    /// Product of two elements given in the hat-label basis.
    pub fn multiply(&self, x: &[C64], y: &[C64]) -> Vec<C64> {
        let h = self.len();
        let mut out = vec![C64::zero(); h];
        for l in 0..h {
            if x[l].norm() == 0.0 {
                continue;
            }
            for m in 0..h {
                if y[m].norm() == 0.0 {
                    continue;
                }
                let c = x[l] * y[m];
                for (nu, o) in out.iter_mut().enumerate() {
                    *o += c * self.n[l][m][nu];
                }
            }
        }
        out
    }

    /// Rounds the structure constants to integers; `None` if any entry is
    /// not an integer within `tol`.
    pub fn integer_constants(&self, tol: f64) -> Option<Vec<Vec<Vec<i64>>>> {
        let round = |z: &C64| {
            let r = z.re.round();
            ((z.re - r).abs() < tol && z.im.abs() < tol).then_some(r as i64)
        };
        self.n
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(round).collect()).collect())
            .collect()
    }
}

fn character_tag(ch: &HashMap<usize, Q>, count: usize) -> Option<Label> {
    if count == 1 {
        return None;
    }
    let trivial = ch.values().all(|v| v.is_zero());
    let tag = if count == 2 {
        if trivial { "+" } else { "-" }.to_string()
    } else {
        let mut keys: Vec<_> = ch.keys().copied().collect();
        keys.sort_unstable();
        let parts: Vec<String> = keys.iter().map(|k| ch[k].to_string()).collect();
        format!("psi({})", parts.join(","))
    };
    Some(Label::Tag(tag))
}

fn with_psi(base: &Label, tag: Option<Label>) -> Label {
    match tag {
        None => base.clone(),
        Some(t) => Label::Tuple(vec![base.clone(), t]),
    }
}

fn untwisted(md: &ModularData, g: &SimpleCurrentGroup, mu: usize) -> bool {
    (0..g.order()).all(|a| fusion::monodromy_charge(md, g, a, mu).is_zero())
}

/// Bulk labels (untwisted sector, character of the full stabilizer) and
/// boundary labels (orbit, character of the central stabilizer).
pub fn classifying_labels(
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
) -> Result<(Vec<HatLabel>, Vec<BoundaryLabel>), BoundaryError> {
    let g = &data.group;
    let mut hat = Vec::new();
    for mu in 0..md.len() {
        if !untwisted(md, g, mu) {
            continue;
        }
        let chars = simplecurrent::subgroup_characters(g, &data.stabilizers[mu]);
        for (p, ch) in chars.iter().enumerate() {
            hat.push(HatLabel {
                sector: mu,
                psi: p,
                label: with_psi(&md.labels[mu], character_tag(ch, chars.len())),
            });
        }
    }
    let mut boundary = Vec::new();
    for (o, orbit) in data.orbits.iter().enumerate() {
        let rep = orbit[0];
        let chars = simplecurrent::subgroup_characters(g, &data.central[rep]);
        for (p, ch) in chars.iter().enumerate() {
            let base = if orbit.len() == 1 {
                md.labels[rep].clone()
            } else {
                Label::Tuple(orbit.iter().map(|&m| md.labels[m].clone()).collect())
            };
            boundary.push(BoundaryLabel {
                rep,
                orbit: o,
                psi: p,
                twisted: !untwisted(md, g, rep),
                label: with_psi(&base, character_tag(ch, chars.len())),
            });
        }
    }
    if hat.len() != boundary.len() {
        return Err(BoundaryError::CountMismatch {
            hat: hat.len(),
            boundary: boundary.len(),
        });
    }
    Ok((hat, boundary))
}

/// `S^_{(mu, psi), [rho, psi']} = |G| / sqrt(|S_mu||U_mu||S_rho||U_rho|)
///  sum_{J in S_mu cap U_rho} psi(J) psi'(J)^* S^J_{mu rho}`.
pub fn hat_smatrix(
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    hat: &[HatLabel],
    boundary: &[BoundaryLabel],
    sj: &mut dyn SJProvider,
) -> Result<CMat, BoundaryError> {
    let g = &data.group;
    let mut needed: Vec<usize> = hat
        .iter()
        .flat_map(|h| data.stabilizers[h.sector].iter().copied())
        .collect();
    needed.sort_unstable();
    needed.dedup();
    let mut matrices = HashMap::new();
    for a in needed {
        let m = if a == 0 {
            SJMatrix::identity_current(md)
        } else {
            sj.sj(g.elements[a])?
        };
        matrices.insert(a, m);
    }
    let full: HashMap<usize, Vec<HashMap<usize, Q>>> = hat
        .iter()
        .map(|h| (h.sector, simplecurrent::subgroup_characters(g, &data.stabilizers[h.sector])))
        .collect();
    let central: HashMap<usize, Vec<HashMap<usize, Q>>> = boundary
        .iter()
        .map(|b| (b.rep, simplecurrent::subgroup_characters(g, &data.central[b.rep])))
        .collect();
    let size = |x: usize| -> f64 { (data.stabilizers[x].len() * data.central[x].len()) as f64 };
    Ok(CMat::from_fn(hat.len(), boundary.len(), |x, y| {
        let (h, b) = (&hat[x], &boundary[y]);
        let (mu, rho) = (h.sector, b.rep);
        let pref = g.order() as f64 / (size(mu) * size(rho)).sqrt();
        let mut acc = C64::zero();
        for &a in &data.stabilizers[mu] {
            if data.central[rho].binary_search(&a).is_err() {
                continue;
            }
            let psi = exact::root_of_unity(full[&mu][h.psi][&a]);
            let psi2 = exact::root_of_unity(central[&rho][b.psi][&a]);
            acc += psi * psi2.conj() * matrices[&a].entry(mu, rho);
        }
        acc * pref
    }))
}

/// Lower-index structure constants `sum_a S^_la S^_ma S^_na / S^_{Omega a}`,
/// raised with the inverse of `C_lm = N_{l m Omega}`.
fn structure_constants(s_hat: &CMat, unit: usize, labels: &[BoundaryLabel]) -> Result<Vec<Vec<Vec<C64>>>, BoundaryError> {
    let h = s_hat.nrows();
    for (a, b) in labels.iter().enumerate() {
        if s_hat[(unit, a)].norm() < BOUNDARY_TOLERANCE {
            return Err(BoundaryError::DegenerateBoundary {
                label: b.label.to_string(),
            });
        }
    }
    let lower = |l: usize, m: usize, n: usize| -> C64 {
        (0..h)
            .map(|a| s_hat[(l, a)] * s_hat[(m, a)] * s_hat[(n, a)] / s_hat[(unit, a)])
            .sum()
    };
    let c = CMat::from_fn(h, h, |l, m| lower(l, m, unit));
    let cinv = c.try_inverse().ok_or(BoundaryError::Singular)?;
    Ok((0..h)
        .into_par_iter()
        .map(|l| {
            (0..h)
                .map(|m| {
                    let low: Vec<C64> = (0..h).map(|r| lower(l, m, r)).collect();
                    (0..h)
                        .map(|n| (0..h).map(|r| low[r] * cinv[(r, n)]).sum())
                        .collect()
                })
                .collect()
        })
        .collect())
}

/// Builds the classifying algebra of `md` for the current group of `data`.
pub fn classifying_algebra(
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    sj: &mut dyn SJProvider,
) -> Result<ClassifyingAlgebra, BoundaryError> {
    let (hat, boundary) = classifying_labels(md, data)?;
    let s_hat = hat_smatrix(md, data, &hat, &boundary, sj)?;
    if s_hat.clone().try_inverse().is_none() {
        return Err(BoundaryError::Singular);
    }
    let unit = hat
        .iter()
        .position(|h| h.sector == md.vacuum && h.psi == 0)
        .expect("vacuum is untwisted");
    let n = structure_constants(&s_hat, unit, &boundary)?;
    let h = hat.len();
    let mut unit_residual: f64 = 0.0;
    for m in 0..h {
        for nu in 0..h {
            let d = if m == nu { 1.0 } else { 0.0 };
            unit_residual = unit_residual.max((n[unit][m][nu] - d).norm());
        }
    }
    let mut associativity_residual: f64 = 0.0;
    for l in 0..h {
        for m in 0..h {
            for r in 0..h {
                for nu in 0..h {
                    let left: C64 = (0..h).map(|x| n[l][m][x] * n[x][r][nu]).sum();
                    let right: C64 = (0..h).map(|x| n[m][r][x] * n[l][x][nu]).sum();
                    associativity_residual = associativity_residual.max((left - right).norm());
                }
            }
        }
    }
    Ok(ClassifyingAlgebra {
        hat,
        boundary,
        s_hat,
        n,
        unit,
        unit_residual,
        associativity_residual,
    })
}

/// `R^a_mu = S^_{mu a} / S^_{Omega a}`, one column per boundary label.
pub fn reflection_coefficients(alg: &ClassifyingAlgebra) -> Result<CMat, BoundaryError> {
    let h = alg.len();
    for a in 0..h {
        if alg.s_hat[(alg.unit, a)].norm() < BOUNDARY_TOLERANCE {
            return Err(BoundaryError::DegenerateBoundary {
                label: alg.boundary[a].label.to_string(),
            });
        }
    }
    Ok(CMat::from_fn(h, h, |mu, a| alg.s_hat[(mu, a)] / alg.s_hat[(alg.unit, a)]))
}

/// Worst violation of `R_l R_m = sum_n N_lm^n R_n` over all boundary labels.
pub fn representation_residual(alg: &ClassifyingAlgebra, r: &CMat) -> Vec<f64> {
    let h = alg.len();
    (0..h)
        .into_par_iter()
        .map(|a| {
            let mut worst: f64 = 0.0;
            for l in 0..h {
                for m in 0..h {
                    let rhs: C64 = (0..h).map(|nu| alg.n[l][m][nu] * r[(nu, a)]).sum();
                    worst = worst.max((r[(l, a)] * r[(m, a)] - rhs).norm());
                }
            }
            worst
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealDecomposition {
    /// Boundary labels of trivial automorphism type, then of type `sigma`.
    pub parts: [Vec<usize>; 2],
    /// Max of `|E_a E_b|` for `a != b`, `|E_a^2 - E_a|` and `|E_0 + E_1 - 1|`.
    pub residual: f64,
}

/// Splits the boundary labels by automorphism type (untwisted or twisted
/// representative) and checks that the two idempotent sums are orthogonal
/// and add up to the unit.
pub fn automorphism_type_decomposition(alg: &ClassifyingAlgebra) -> Result<IdealDecomposition, BoundaryError> {
    let h = alg.len();
    let r = reflection_coefficients(alg)?;
    // Primitive idempotent e_a has coordinates given by the rows of R^{-1}.
    let rinv = r.try_inverse().ok_or(BoundaryError::Singular)?;
    let mut parts = [Vec::new(), Vec::new()];
    for (a, b) in alg.boundary.iter().enumerate() {
        parts[usize::from(b.twisted)].push(a);
    }
    let sum = |part: &[usize]| -> Vec<C64> {
        (0..h).map(|mu| part.iter().map(|&a| rinv[(a, mu)]).sum()).collect()
    };
    let e = [sum(&parts[0]), sum(&parts[1])];
    let dist = |x: &[C64], y: &[C64]| x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    let zero = vec![C64::zero(); h];
    let mut one = zero.clone();
    one[alg.unit] = C64::new(1.0, 0.0);
    let total: Vec<C64> = e[0].iter().zip(&e[1]).map(|(a, b)| a + b).collect();
    let residual = [
        dist(&alg.multiply(&e[0], &e[1]), &zero),
        dist(&alg.multiply(&e[0], &e[0]), &e[0]),
        dist(&alg.multiply(&e[1], &e[1]), &e[1]),
        dist(&total, &one),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Ok(IdealDecomposition { parts, residual })
}

/// The orbifold theory's dual current together with its orbit data. `S^J`
/// matrices must be supplied when the current has fixed points; a current
/// without fixed points needs none.
pub fn orbifold_current_data(
    orb: &OrbifoldModularData,
    supplied: Option<SJMatrix>,
) -> Result<(SimpleCurrentOrbitData, ExplicitSJ), BoundaryError> {
    let group = SimpleCurrentGroup::generated(&orb.ring, &[orb.dual_current])
        .map_err(SimpleCurrentError::from)?;
    let j = orb.dual_current;
    let action = orb.ring.current_action(j);
    let fixed: Vec<usize> = (0..orb.md.len()).filter(|&m| action[m] == m).collect();
    let matrix = match supplied {
        Some(m) => m,
        None if fixed.is_empty() => SJMatrix {
            current: j,
            fixed,
            matrix: CMat::zeros(0, 0),
            convention: PhaseConvention::Identity,
        },
        None => {
            return Err(AffineError::NotImplemented(format!(
                "S^J of the orbifold current on {} fixed sectors must be supplied",
                fixed.len()
            ))
            .into())
        }
    };
    let mut sj = ExplicitSJ {
        md: orb.md.clone(),
        matrices: HashMap::from([(j, matrix)]),
    };
    let data = simplecurrent::orbit_data(&orb.md, &group, &mut sj)?;
    Ok((data, sj))
}

/// Classifying algebra for boundary conditions preserving the Z2-orbifold
/// subalgebra.
pub fn orbifold_classifying_algebra(
    orb: &OrbifoldModularData,
    supplied: Option<SJMatrix>,
) -> Result<ClassifyingAlgebra, BoundaryError> {
    let (data, mut sj) = orbifold_current_data(orb, supplied)?;
    classifying_algebra(&orb.md, &data, &mut sj)
}

/// With the trivial current group the classifying algebra is the fusion
/// ring; returns the largest deviation from `N_lm^n`.
pub fn trivial_group_algebra(md: &ModularData, ring: &FusionRing) -> Result<(ClassifyingAlgebra, f64), BoundaryError> {
    let group = SimpleCurrentGroup::generated(ring, &[]).map_err(SimpleCurrentError::from)?;
    let mut sj = ExplicitSJ {
        md: md.clone(),
        matrices: HashMap::new(),
    };
    let data = simplecurrent::orbit_data(md, &group, &mut sj)?;
    let alg = classifying_algebra(md, &data, &mut sj)?;
    let mut worst: f64 = 0.0;
    for (l, hl) in alg.hat.iter().enumerate() {
        for (m, hm) in alg.hat.iter().enumerate() {
            for (nu, hn) in alg.hat.iter().enumerate() {
                let want = ring.n(hl.sector, hm.sector, hn.sector) as f64;
                worst = worst.max((alg.n[l][m][nu] - want).norm());
            }
        }
    }
    Ok((alg, worst))
}

/// Comparison of the classifying algebra with the closed-form tables for
/// the Z2 orbifold of a WZW model.
#[derive(Debug, Clone, Serialize)]
pub struct Z2TableCheck {
    /// `S^` against the table, after matching the `psi` labels of each
    /// fixed point.
    pub s_hat_residual: f64,
    /// Lower structure constants against `N + psi psi psi / (eta eta eta) N^(0)`.
    pub structure_residual: f64,
    /// Raised structure constants against the orbifold fusion rules.
    pub orbifold_fusion_residual: f64,
    /// Bulk/boundary label counts: fixed-point pairs, length-2 orbits,
    /// untwisted boundary orbits, twisted boundary orbits.
    pub counts: [usize; 4],
}

/// Checks the classifying algebra of an inner (all points fixed) Z2 orbifold
/// against the explicit tables written in terms of the parent theory.
pub fn z2_table_check(
    input: &OrbifoldInput,
    orb: &OrbifoldModularData,
    alg: &ClassifyingAlgebra,
) -> Result<Z2TableCheck, BoundaryError> {
    let base = &input.base;
    let ring = fusion::verlinde(base).map_err(SimpleCurrentError::from)?;
    let h = alg.len();
    let sector = |x: usize| orb.sectors[x];
    // Bulk labels of the table: (lambda, psi) for fixed lambda, lambda for orbits.
    let mut counts = [0usize; 4];
    for hl in &alg.hat {
        match sector(hl.sector) {
            Sector::Fixed { .. } => counts[0] += 1,
            Sector::Orbit { .. } => counts[1] += 1,
            Sector::Twisted { .. } => {}
        }
    }
    for b in &alg.boundary {
        counts[2 + usize::from(b.twisted)] += 1;
    }
    let table = |hl: &HatLabel, b: &BoundaryLabel, psi_flip: f64| -> C64 {
        match (sector(hl.sector), sector(b.rep)) {
            (Sector::Fixed { index: l, .. }, Sector::Fixed { index: m, .. }) => {
                base.s[(input.fixed[l], input.fixed[m])]
            }
            (Sector::Fixed { index: l, psi }, Sector::Twisted { index: m, .. }) => {
                input.s0[(l, m)] * (f64::from(psi) * psi_flip) / input.eta(l)
            }
            (Sector::Orbit { rep: l }, Sector::Fixed { index: m, .. }) => base.s[(l, input.fixed[m])],
            (Sector::Orbit { .. }, Sector::Twisted { .. }) => C64::zero(),
            (Sector::Orbit { rep: l }, Sector::Orbit { rep: m }) => base.s[(l, m)],
            (Sector::Fixed { index: l, .. }, Sector::Orbit { rep: m }) => base.s[(input.fixed[l], m)],
            _ => C64::new(f64::NAN, 0.0),
        }
    };
    // The boundary representative of a twisted pair may carry psi = -1,
    // which flips the sign of the whole column.
    let mut s_hat_residual: f64 = 0.0;
    for (a, b) in alg.boundary.iter().enumerate() {
        let flip = match sector(b.rep) {
            Sector::Twisted { psi, .. } => f64::from(psi),
            _ => 1.0,
        };
        for (x, hl) in alg.hat.iter().enumerate() {
            s_hat_residual = s_hat_residual.max((alg.s_hat[(x, a)] - table(hl, b, flip)).norm());
        }
    }
    let s0 = &input.s0;
    let omega = input.fixed.iter().position(|&m| m == base.vacuum).unwrap();
    let n0 = |l1: usize, l2: usize, l3: usize| -> C64 {
        (0..s0.ncols())
            .map(|d| s0[(l1, d)] * s0[(l2, d)] * s0[(l3, d)] / s0[(omega, d)])
            .sum()
    };
    let conj = ring.conjugation.clone();
    let fixed_psi = |x: usize| match sector(alg.hat[x].sector) {
        Sector::Fixed { index, psi } => Some((index, psi)),
        _ => None,
    };
    let lower = |l: usize, m: usize, n: usize| -> C64 {
        (0..h)
            .map(|a| alg.s_hat[(l, a)] * alg.s_hat[(m, a)] * alg.s_hat[(n, a)] / alg.s_hat[(alg.unit, a)])
            .sum()
    };
    let mut structure_residual: f64 = 0.0;
    let mut orbifold_fusion_residual: f64 = 0.0;
    for x in 0..h {
        for y in 0..h {
            for z in 0..h {
                if let (Some((l1, p1)), Some((l2, p2)), Some((l3, p3))) = (fixed_psi(x), fixed_psi(y), fixed_psi(z)) {
                    let (m1, m2, m3) = (input.fixed[l1], input.fixed[l2], input.fixed[l3]);
                    let n = ring.n(m1, m2, conj[m3]) as f64;
                    let sign = f64::from(p1 * p2 * p3);
                    let eta = input.eta(l1) * input.eta(l2) * input.eta(l3);
                    let want = n + n0(l1, l2, l3) * sign / eta;
                    structure_residual = structure_residual.max((lower(x, y, z) - want).norm());
                }
                let (a, b, c) = (alg.hat[x].sector, alg.hat[y].sector, alg.hat[z].sector);
                let want = orb.ring.n(a, b, c) as f64;
                orbifold_fusion_residual = orbifold_fusion_residual.max((alg.n[x][y][z] - want).norm());
            }
        }
    }
    Ok(Z2TableCheck {
        s_hat_residual,
        structure_residual,
        orbifold_fusion_residual,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine;
    use crate::exact::q;
    use crate::liealg::{SimpleLieAlgebra, DEFAULT_WEYL_CAP};
    use crate::orbifold::{assemble_orbifold, inner_orbifold_input};

    fn su2(k: i64) -> ModularData {
        let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
        affine::kac_peterson(&alg, k, DEFAULT_WEYL_CAP).unwrap()
    }

    #[test]
    fn trivial_group_gives_fusion_ring() {
        for (s, k) in [("A1", 3), ("A2", 2), ("B2", 1)] {
            let alg = SimpleLieAlgebra::new(s.parse().unwrap());
            let md = affine::kac_peterson(&alg, k, DEFAULT_WEYL_CAP).unwrap();
            let ring = fusion::verlinde(&md).unwrap();
            let (ca, worst) = trivial_group_algebra(&md, &ring).unwrap();
            assert_eq!(ca.len(), md.len());
            assert!(worst < 1e-9, "{s} {k}: {worst}");
        }
    }

    #[test]
    fn su2_inner_orbifold_boundaries() {
        for k in [2, 4] {
            let md = su2(k);
            let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
            let input = inner_orbifold_input(&alg, k, &md, &[q(1)]).unwrap();
            let orb = assemble_orbifold(&input).unwrap();
            let ca = orbifold_classifying_algebra(&orb, None).unwrap();
            assert_eq!(ca.len(), 2 * md.len());
            assert!(ca.unit_residual < 1e-9);
            assert!(ca.associativity_residual < 1e-9);
            let r = reflection_coefficients(&ca).unwrap();
            assert!(representation_residual(&ca, &r).iter().all(|x| *x < 1e-8));
            let dec = automorphism_type_decomposition(&ca).unwrap();
            assert_eq!(dec.parts[0].len(), md.len());
            assert_eq!(dec.parts[1].len(), md.len());
            assert!(dec.residual < 1e-8);
            let check = z2_table_check(&input, &orb, &ca).unwrap();
            assert!(check.s_hat_residual < 1e-9, "{check:?}");
            assert!(check.structure_residual < 1e-9, "{check:?}");
            assert!(check.orbifold_fusion_residual < 1e-9, "{check:?}");
            assert_eq!(check.counts, [2 * md.len(), 0, md.len(), md.len()]);
        }
    }
}
