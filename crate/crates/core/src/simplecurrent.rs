//! Simple-current extensions: orbits, stabilizers, the cocycle `F_mu`,
//! central stabilizers, extended S matrices and the modular invariant `Z`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::affine::{AffineError, OrbitCache, SJMatrix};
use crate::exact::{self, Q};
use crate::fusion::{self, FusionError, FusionRing, SimpleCurrentGroup};
use crate::modular::{self, CMat, InvariantViolation, Label, ModularData, ModularResiduals, C64};
use crate::theory::Theory;

pub const EXTENSION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimpleCurrentError {
    #[error(transparent)]
    Affine(#[from] AffineError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Invariant(#[from] InvariantViolation),
    #[error("cannot determine F_mu on {label}: all S^J entries in column vanish")]
    UnderdeterminedCocycle { label: String },
    #[error("cocycle on {label} is not a well-defined alternating form (residual {residual:.3e})")]
    Cocycle { label: String, residual: f64 },
    #[error("|S|/|U| = {stabilizer}/{central} on {label} is not a perfect square")]
    NonSquareIndex {
        label: String,
        stabilizer: usize,
        central: usize,
    },
    #[error("simple current {label} has half-integral conformal weight; discrete torsion is not supported")]
    HalfIntegerCurrent { label: String },
    #[error("simple current {label} has non-integral conformal weight {delta}")]
    NonIntegerCurrent { label: String, delta: String },
    #[error("extension fails its invariants for every admissible S^J phase; best residual {residual:.3e}")]
    ExtensionFailed { residual: f64 },
}

/// Supplies `S^J` matrices by current label.
pub trait SJProvider {
    fn sj(&mut self, current: usize) -> Result<SJMatrix, AffineError>;
}

/// `S^J` of a WZW (product) theory, memoized.
pub struct TheorySJ<'a> {
    pub theory: &'a Theory,
    pub cache: OrbitCache,
    memo: HashMap<usize, SJMatrix>,
}

impl<'a> TheorySJ<'a> {
    pub fn new(theory: &'a Theory) -> Self {
        TheorySJ {
            theory,
            cache: OrbitCache::new(),
            memo: HashMap::new(),
        }
    }
}

impl SJProvider for TheorySJ<'_> {
    fn sj(&mut self, current: usize) -> Result<SJMatrix, AffineError> {
        if let Some(m) = self.memo.get(&current) {
            return Ok(m.clone());
        }
        let m = self.theory.sj_matrix(current, &mut self.cache)?;
        self.memo.insert(current, m.clone());
        Ok(m)
    }
}

/// Explicitly supplied `S^J` matrices; the vacuum always maps to `S`.
pub struct ExplicitSJ {
    pub md: ModularData,
    pub matrices: HashMap<usize, SJMatrix>,
}

impl SJProvider for ExplicitSJ {
    fn sj(&mut self, current: usize) -> Result<SJMatrix, AffineError> {
        if current == self.md.vacuum {
            return Ok(SJMatrix::identity_current(&self.md));
        }
        self.matrices.get(&current).cloned().ok_or_else(|| {
            AffineError::NotImplemented(format!(
                "no S^J supplied for current {}",
                self.md.labels[current]
            ))
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SimpleCurrentOrbitData {
    pub group: SimpleCurrentGroup,
    pub orbit_of: Vec<usize>,
    /// Orbits as sorted label lists; the first entry is the representative.
    pub orbits: Vec<Vec<usize>>,
    /// Stabilizer of each label, as group positions (increasing).
    pub stabilizers: Vec<Vec<usize>>,
    /// `cocycle[mu][a][b] = F_mu(J_a, J_b)` over stabilizer positions.
    #[serde(skip)]
    pub cocycle: Vec<Vec<Vec<C64>>>,
    /// Central stabilizer `U_mu` as group positions.
    pub central: Vec<Vec<usize>>,
    /// `sqrt(|S_mu| / |U_mu|)`; `None` where a current of non-integral
    /// weight fixes `mu` and the index need not be a square.
    pub d: Vec<Option<usize>>,
}

impl SimpleCurrentOrbitData {
    pub fn length(&self, mu: usize) -> usize {
        self.group.order() / self.stabilizers[mu].len()
    }

    /// `F_mu(J, K)` for group positions in the stabilizer of `mu`.
    pub fn f(&self, mu: usize, a: usize, b: usize) -> Option<C64> {
        let st = &self.stabilizers[mu];
        let i = st.binary_search(&a).ok()?;
        let j = st.binary_search(&b).ok()?;
        Some(self.cocycle[mu][i][j])
    }
}

/// Orbits, stabilizers and `F_mu(J,K) = e^{-2 pi i Q_K(mu)} S^J_{K lambda, mu} / S^J_{lambda mu}`
/// read off from any fixed point `lambda` of `J` with nonvanishing entry.
/// On orbits of vanishing monodromy charge this is the ratio of `S^J` rows.
pub fn orbit_data(
    md: &ModularData,
    group: &SimpleCurrentGroup,
    sj: &mut dyn SJProvider,
) -> Result<SimpleCurrentOrbitData, SimpleCurrentError> {
    let n = md.len();
    let g = group.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for mu in 0..n {
        if orbit_of[mu] != usize::MAX {
            continue;
        }
        let mut orbit: Vec<usize> = (0..g).map(|a| group.action[a][mu]).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &x in &orbit {
            orbit_of[x] = orbits.len();
        }
        orbits.push(orbit);
    }
    let stabilizers: Vec<Vec<usize>> = (0..n)
        .map(|mu| (0..g).filter(|&a| group.action[a][mu] == mu).collect())
        .collect();
    let mut matrices: HashMap<usize, SJMatrix> = HashMap::new();
    for a in 0..g {
        if stabilizers.iter().any(|s| s.contains(&a)) {
            matrices.insert(a, sj.sj(group.elements[a])?);
        }
    }
    let mut cocycle = Vec::with_capacity(n);
    let mut central = Vec::with_capacity(n);
    let mut d = Vec::with_capacity(n);
    for mu in 0..n {
        let st = &stabilizers[mu];
        let label = md.labels[mu].to_string();
        let mut f = vec![vec![C64::one(); st.len()]; st.len()];
        for (i, &a) in st.iter().enumerate() {
            let m = &matrices[&a];
            let col = m.position(mu).expect("mu is fixed by J");
            let (mut best, mut row) = (0.0, None);
            for (r, _) in m.fixed.iter().enumerate() {
                let v = m.matrix[(r, col)].norm();
                if v > best + 1e-12 {
                    best = v;
                    row = Some(r);
                }
            }
            let Some(row) = row.filter(|_| best > 1e-9) else {
                return Err(SimpleCurrentError::UnderdeterminedCocycle { label });
            };
            let lambda = m.fixed[row];
            for (j, &b) in st.iter().enumerate() {
                let moved = group.action[b][lambda];
                let charge = fusion::monodromy_charge(md, group, b, mu);
                f[i][j] = m.entry(moved, mu) / m.matrix[(row, col)] * exact::root_of_unity(-charge);
            }
            // any other row with a nonvanishing entry must agree
            for (r, &lam) in m.fixed.iter().enumerate() {
                if m.matrix[(r, col)].norm() < 1e-6 {
                    continue;
                }
                for (j, &b) in st.iter().enumerate() {
                    let charge = fusion::monodromy_charge(md, group, b, mu);
                    let other = m.entry(group.action[b][lam], mu) / m.matrix[(r, col)]
                        * exact::root_of_unity(-charge);
                    let res = (other - f[i][j]).norm();
                    if res > 1e-7 {
                        return Err(SimpleCurrentError::Cocycle { label, residual: res });
                    }
                }
            }
        }
        // currents of non-integral weight carry discrete-torsion-like
        // phases; F_mu is then not a commutator cocycle and is kept as is
        let integral = st.iter().all(|&a| md.delta[group.elements[a]].is_integer());
        let mut worst: f64 = 0.0;
        for i in 0..st.len() {
            worst = worst.max((f[i][i] - C64::one()).norm());
            for j in 0..st.len() {
                worst = worst.max((f[i][j] * f[j][i] - C64::one()).norm());
            }
        }
        if integral && worst > 1e-7 {
            return Err(SimpleCurrentError::Cocycle { label, residual: worst });
        }
        let u: Vec<usize> = st
            .iter()
            .enumerate()
            .filter(|(i, _)| f[*i].iter().all(|z| (z - C64::one()).norm() < 1e-7))
            .map(|(_, &a)| a)
            .collect();
        let ratio = st.len() / u.len().max(1);
        let root = (ratio as f64).sqrt().round() as usize;
        let square = !u.is_empty() && root * root == ratio && ratio * u.len() == st.len();
        if integral && !square {
            return Err(SimpleCurrentError::NonSquareIndex {
                label,
                stabilizer: st.len(),
                central: u.len(),
            });
        }
        cocycle.push(f);
        central.push(u);
        d.push(square.then_some(root));
    }
    Ok(SimpleCurrentOrbitData {
        group: group.clone(),
        orbit_of,
        orbits,
        stabilizers,
        cocycle,
        central,
        d,
    })
}

/// Characters of the subgroup `elements` of `group`, in cyclic-factor
/// lexicographic order; each character maps a group position to its value
/// as an element of `Q/Z`.
pub fn subgroup_characters(group: &SimpleCurrentGroup, elements: &[usize]) -> Vec<HashMap<usize, Q>> {
    characters(elements, |a, b| group.table[a][b], |a| group.orders[a])
}

/// Characters of a finite abelian group given by its elements (identity
/// `0` included), multiplication and element orders.
pub fn characters(
    elements: &[usize],
    mul: impl Fn(usize, usize) -> usize,
    order: impl Fn(usize) -> usize,
) -> Vec<HashMap<usize, Q>> {
    // greedy generating set, largest order first
    let mut sorted = elements.to_vec();
    sorted.sort_by_key(|&a| (std::cmp::Reverse(order(a)), a));
    let mut gens: Vec<usize> = Vec::new();
    let mut span: Vec<usize> = vec![0];
    for &a in &sorted {
        if span.contains(&a) {
            continue;
        }
        gens.push(a);
        span = close(&mul, &gens);
    }
    let mut out = Vec::new();
    let mut exps = vec![0i64; gens.len()];
    loop {
        if let Some(ch) = try_character(&mul, &order, &gens, &exps) {
            out.push(ch);
        }
        let mut i = gens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < order(gens[i]) as i64 {
                break;
            }
            exps[i] = 0;
        }
    }
}

fn close(mul: &impl Fn(usize, usize) -> usize, gens: &[usize]) -> Vec<usize> {
    let mut span = vec![0];
    let mut i = 0;
    while i < span.len() {
        for &g in gens {
            let y = mul(span[i], g);
            if !span.contains(&y) {
                span.push(y);
            }
        }
        i += 1;
    }
    span
}

fn try_character(
    mul: &impl Fn(usize, usize) -> usize,
    order: &impl Fn(usize) -> usize,
    gens: &[usize],
    exps: &[i64],
) -> Option<HashMap<usize, Q>> {
    let mut val: HashMap<usize, Q> = HashMap::from([(0, Q::zero())]);
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for (k, &g) in gens.iter().enumerate() {
            let y = mul(x, g);
            let v = exact::frac(val[&x] + Q::new(exps[k], order(g) as i64));
            match val.get(&y) {
                Some(w) if *w != v => return None,
                Some(_) => {}
                None => {
                    val.insert(y, v);
                    queue.push(y);
                }
            }
        }
    }
    Some(val)
}

/// An extended sector `[mu, psi]`.
#[derive(Debug, Clone, Serialize)]
pub struct ExtendedClass {
    /// Orbit representative (smallest label of the orbit).
    pub rep: usize,
    pub orbit: usize,
    /// Index into the character list of `U_rep`.
    pub psi: usize,
    pub label: Label,
}

/// Surviving orbits paired with characters of their central stabilizer.
/// The identification `(mu, psi) ~ (J mu, F_mu(J, .)^* psi)` is trivial on
/// `U_mu` (the alternating form vanishes there), so classes are indexed by
/// orbit representative and character.
pub fn extended_labels(md: &ModularData, data: &SimpleCurrentOrbitData) -> Vec<ExtendedClass> {
    let g = &data.group;
    let mut out = Vec::new();
    for (o, orbit) in data.orbits.iter().enumerate() {
        let rep = orbit[0];
        let survives = (0..g.order()).all(|a| fusion::monodromy_charge(md, g, a, rep).is_zero());
        if !survives {
            continue;
        }
        let chars = subgroup_characters(g, &data.central[rep]);
        for (p, ch) in chars.iter().enumerate() {
            let label = if chars.len() == 1 {
                md.labels[rep].clone()
            } else {
                Label::Tuple(vec![md.labels[rep].clone(), Label::Tag(psi_tag(ch, chars.len()))])
            };
            out.push(ExtendedClass {
                rep,
                orbit: o,
                psi: p,
                label,
            });
        }
    }
    out
}

fn psi_tag(ch: &HashMap<usize, Q>, size: usize) -> String {
    if size == 2 {
        return if ch.values().all(|v| v.is_zero()) { "+" } else { "-" }.to_string();
    }
    let mut keys: Vec<_> = ch.keys().copied().collect();
    keys.sort_unstable();
    let parts: Vec<String> = keys.iter().map(|k| ch[k].to_string()).collect();
    format!("psi({})", parts.join(","))
}

#[derive(Debug, Clone, Serialize)]
pub struct ExtensionChecks {
    pub residuals: ModularResiduals,
    pub fusion_rounding: f64,
    /// Phase multipliers applied to the `S^J` (group position, exponent as a
    /// fraction of a full turn); empty when the input phases passed.
    pub phase_adjustments: Vec<(usize, String)>,
}

#[derive(Debug, Clone)]
pub struct ExtendedModularData {
    pub classes: Vec<ExtendedClass>,
    pub md: ModularData,
    pub ring: FusionRing,
    /// `d_mu` per class.
    pub d: Vec<usize>,
    pub checks: ExtensionChecks,
}

/// `S^xt` from the sandwich formula
/// `|G| / sqrt(|S_l||U_l||S_m||U_m|) sum_{J in U_l cap U_m} psi_l(J) S^J_{lm} psi_m(J)^*`.
pub fn extended_smatrix(
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
    sj: &mut dyn SJProvider,
) -> Result<ExtendedModularData, SimpleCurrentError> {
    let g = &data.group;
    for a in 1..g.order() {
        let j = g.elements[a];
        let delta = md.delta[j];
        if !delta.is_integer() {
            let label = md.labels[j].to_string();
            return Err(if (delta * Q::from_integer(2)).is_integer() {
                SimpleCurrentError::HalfIntegerCurrent { label }
            } else {
                SimpleCurrentError::NonIntegerCurrent {
                    label,
                    delta: delta.to_string(),
                }
            });
        }
    }
    let classes = extended_labels(md, data);
    let mut needed: Vec<usize> = classes
        .iter()
        .flat_map(|c| data.central[c.rep].iter().copied())
        .filter(|&a| a != 0)
        .collect();
    needed.sort_unstable();
    needed.dedup();
    let mut matrices: HashMap<usize, SJMatrix> = HashMap::new();
    for &a in &needed {
        matrices.insert(a, sj.sj(g.elements[a])?);
    }
    matrices.insert(0, SJMatrix::identity_current(md));
    let chars: HashMap<usize, Vec<HashMap<usize, Q>>> = classes
        .iter()
        .map(|c| (c.rep, subgroup_characters(g, &data.central[c.rep])))
        .collect();
    let build = |phases: &HashMap<usize, Q>| -> ModularData {
        let n = classes.len();
        let s = CMat::from_fn(n, n, |x, y| {
            let (cx, cy) = (&classes[x], &classes[y]);
            let (l, m) = (cx.rep, cy.rep);
            let pref = g.order() as f64
                / ((data.stabilizers[l].len()
                    * data.central[l].len()
                    * data.stabilizers[m].len()
                    * data.central[m].len()) as f64)
                    .sqrt();
            let mut acc = C64::zero();
            for &a in &data.central[l] {
                if data.central[m].binary_search(&a).is_err() {
                    continue;
                }
                let phase = phases.get(&a).copied().unwrap_or_else(Q::zero);
                let psi_l = exact::root_of_unity(chars[&l][cx.psi][&a]);
                let psi_m = exact::root_of_unity(chars[&m][cy.psi][&a]);
                acc += psi_l * matrices[&a].entry(l, m) * psi_m.conj() * exact::root_of_unity(phase);
            }
            acc * pref
        });
        ModularData {
            name: format!("{}/ext", md.name),
            labels: classes.iter().map(|c| c.label.clone()).collect(),
            vacuum: 0,
            s,
            delta: classes.iter().map(|c| md.delta[c.rep]).collect(),
            c: md.c,
        }
    };
    let attempt = |phases: &HashMap<usize, Q>| -> (ModularData, f64, Option<(FusionRing, f64)>) {
        let ext = build(phases);
        let r = ext.residuals().max();
        let ring = if r < EXTENSION_TOLERANCE {
            fusion::verlinde_with_report(&ext, fusion::INTEGRALITY_TOLERANCE)
                .ok()
                .map(|(ring, rep)| (ring, rep.max_residual))
        } else {
            None
        };
        (ext, r, ring)
    };
    let mut best = f64::INFINITY;
    let candidates = phase_candidates(g, &needed);
    for phases in candidates {
        let (ext, r, ring) = attempt(&phases);
        best = best.min(r);
        if let Some((ring, rounding)) = ring {
            let residuals = ext.check(EXTENSION_TOLERANCE)?;
            let mut adj: Vec<(usize, String)> = phases
                .iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(a, v)| (g.elements[*a], v.to_string()))
                .collect();
            adj.sort();
            return Ok(ExtendedModularData {
                d: classes.iter().map(|c| data.d[c.rep].unwrap_or(0)).collect(),
                classes,
                md: ext,
                ring,
                checks: ExtensionChecks {
                    residuals,
                    fusion_rounding: rounding,
                    phase_adjustments: adj,
                },
            });
        }
    }
    Err(SimpleCurrentError::ExtensionFailed { residual: best })
}

/// Phase choices for the `S^J` in the search: the supplied phases first,
/// then multiples by roots of unity of order `2|G|`, at most 4096 in total.
/// `S^{J^-1}` is tied to `S^J` through the transpose relation.
fn phase_candidates(g: &SimpleCurrentGroup, needed: &[usize]) -> Vec<HashMap<usize, Q>> {
    let root = 2 * g.order() as i64;
    let mut free: Vec<usize> = Vec::new();
    for &a in needed {
        let inv = g.inverse(a);
        if !free.contains(&inv) || inv == a {
            if !free.contains(&a) {
                free.push(a);
            }
        }
    }
    let mut out = vec![HashMap::new()];
    let total = (root as usize).saturating_pow(free.len() as u32);
    if total > 4096 {
        return out;
    }
    for idx in 1..total {
        let mut m = HashMap::new();
        let mut x = idx;
        for &a in &free {
            let e = Q::new((x % root as usize) as i64, root);
            x /= root as usize;
            m.insert(a, e);
            let inv = g.inverse(a);
            if inv != a {
                m.insert(inv, e);
            }
        }
        out.push(m);
    }
    out
}

/// Diagonal-type modular invariant of the extension:
/// `Z_{lm} = |S_l|` when `l`, `m` lie in the same surviving orbit.
pub fn z_matrix(
    md: &ModularData,
    data: &SimpleCurrentOrbitData,
) -> Result<Vec<Vec<u32>>, SimpleCurrentError> {
    let n = md.len();
    let g = &data.group;
    let mut z = vec![vec![0u32; n]; n];
    for orbit in &data.orbits {
        let rep = orbit[0];
        if !(0..g.order()).all(|a| fusion::monodromy_charge(md, g, a, rep).is_zero()) {
            continue;
        }
        let weight = data.stabilizers[rep].len() as u32;
        for &l in orbit {
            for &m in orbit {
                z[l][m] += weight;
            }
        }
    }
    let zm = CMat::from_fn(n, n, |i, j| C64::new(z[i][j] as f64, 0.0));
    let t = modular::diag(&md.t());
    let rs = modular::max_abs(&(&zm * &md.s - &md.s * &zm));
    let rt = modular::max_abs(&(&zm * &t - &t * &zm));
    let r = rs.max(rt);
    if r > 1e-9 {
        return Err(InvariantViolation {
            relation: "[Z, S] = [Z, T] = 0".into(),
            residual: r,
            tolerance: 1e-9,
        }
        .into());
    }
    Ok(z)
}

/// `sum over classes of d^2 * orbit length`, which must equal `Tr Z`.
pub fn class_trace(data: &SimpleCurrentOrbitData, classes: &[ExtendedClass]) -> u64 {
    classes
        .iter()
        .map(|c| {
            let d = data.d[c.rep].unwrap_or(0);
            (d * d * data.orbits[c.orbit].len()) as u64
        })
        .sum()
}

/// Orbit data, extension and `Z` for a theory and a group of currents
/// (all currents when `generators` is `None`).
pub struct Extension {
    pub ring: FusionRing,
    pub data: SimpleCurrentOrbitData,
    pub extended: ExtendedModularData,
    pub z: Vec<Vec<u32>>,
}

pub fn extend(theory: &Theory, generators: Option<&[usize]>) -> Result<Extension, SimpleCurrentError> {
    let md = &theory.md;
    let ring = fusion::verlinde(md)?;
    let group = match generators {
        None => fusion::simple_currents(md, &ring)?,
        Some(gs) => SimpleCurrentGroup::generated(&ring, gs)?,
    };
    let mut provider = TheorySJ::new(theory);
    let data = orbit_data(md, &group, &mut provider)?;
    let extended = extended_smatrix(md, &data, &mut provider)?;
    let z = z_matrix(md, &data)?;
    let trace: u64 = (0..md.len()).map(|i| z[i][i] as u64).sum();
    let accounted = class_trace(&data, &extended.classes);
    if trace != accounted {
        return Err(InvariantViolation {
            relation: "Tr Z = sum d^2 |orbit|".into(),
            residual: (trace as f64 - accounted as f64).abs(),
            tolerance: 0.0,
        }
        .into());
    }
    Ok(Extension {
        ring,
        data,
        extended,
        z,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;
    use crate::theory::TheorySpec;

    fn theory(s: &str) -> Theory {
        Theory::new(&s.parse().unwrap(), DEFAULT_WEYL_CAP).unwrap()
    }

    #[test]
    fn trivial_group_reproduces_s() {
        let th = theory("A2_k2");
        let ext = extend(&th, Some(&[])).unwrap();
        assert_eq!(ext.extended.classes.len(), th.md.len());
        assert!(modular::max_abs(&(&ext.extended.md.s - &th.md.s)) < 1e-14);
        assert!(ext.data.d.iter().all(|&d| d == Some(1)));
    }

    #[test]
    fn su2_level_four_d_type() {
        let th = theory("A1_k4");
        let ext = extend(&th, None).unwrap();
        assert_eq!(ext.extended.classes.len(), 3);
        assert_eq!(ext.data.stabilizers[2].len(), 2);
        assert_eq!(ext.data.d[2], Some(1));
        assert_eq!(ext.z[2][2], 2);
        assert_eq!(ext.z[0][4], 1);
        assert_eq!(ext.z[1][1], 0);
        let ring = &ext.extended.ring;
        assert!((0..3).all(|j| ring.is_simple_current(j)));
    }

    #[test]
    fn half_integer_currents_rejected() {
        let th = theory("A1_k2");
        match extend(&th, None) {
            Err(SimpleCurrentError::HalfIntegerCurrent { .. }) => {}
            other => panic!("unexpected {:?}", other.err()),
        }
    }

    #[test]
    fn characters_of_klein_group() {
        let th = Theory::new(
            &TheorySpec::Product(vec!["A1_k1".parse().unwrap(), "A1_k1".parse().unwrap()]),
            DEFAULT_WEYL_CAP,
        )
        .unwrap();
        let ring = fusion::verlinde(&th.md).unwrap();
        let g = fusion::simple_currents(&th.md, &ring).unwrap();
        let all: Vec<usize> = (0..4).collect();
        let chars = subgroup_characters(&g, &all);
        assert_eq!(chars.len(), 4);
    }
}
