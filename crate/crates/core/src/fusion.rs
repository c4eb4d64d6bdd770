//! Verlinde fusion rings, simple currents and their monodromy charges.

use std::collections::HashMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{self, Q};
use crate::modular::{ModularData, C64};

pub use crate::modular::{tensor_product, tensor_product_many};

pub const INTEGRALITY_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FusionError {
    #[error("fusion coefficient N_({lambda},{mu})^{nu} = {value} is not a non-negative integer (residual {residual:.3e})")]
    Integrality {
        lambda: usize,
        mu: usize,
        nu: usize,
        value: String,
        residual: f64,
    },
    #[error("fusion ring axiom violated: {0}")]
    Axiom(String),
    #[error("simple-current characterizations disagree on label {0}")]
    Inconsistent(usize),
    #[error("labels {0:?} do not generate a group of simple currents")]
    NotAGroup(Vec<usize>),
}

/// Structure constants `N_{lambda mu}^nu` of a commutative fusion ring.
#[derive(Debug, Clone, Serialize)]
pub struct FusionRing {
    pub size: usize,
    pub vacuum: usize,
    pub conjugation: Vec<usize>,
    /// Dense tensor, index `(l * size + m) * size + n`.
    coefficients: Vec<u32>,
    /// Nonzero `(nu, N)` per `(lambda, mu)`.
    #[serde(skip)]
    products: Vec<Vec<(usize, u32)>>,
}

/// Largest distance from an integer seen while rounding, and its location.
#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct RoundingReport {
    pub max_residual: f64,
    pub worst: (usize, usize, usize),
}

impl FusionRing {
    pub fn from_coefficients(
        size: usize,
        vacuum: usize,
        coefficients: Vec<u32>,
    ) -> Result<FusionRing, FusionError> {
        assert_eq!(coefficients.len(), size * size * size);
        let products = (0..size * size)
            .map(|lm| {
                (0..size)
                    .filter_map(|n| {
                        let c = coefficients[lm * size + n];
                        (c != 0).then_some((n, c))
                    })
                    .collect()
            })
            .collect();
        let mut ring = FusionRing {
            size,
            vacuum,
            conjugation: Vec::new(),
            coefficients,
            products,
        };
        let mut conj = vec![usize::MAX; size];
        for l in 0..size {
            for m in 0..size {
                match ring.n(l, m, vacuum) {
                    0 => {}
                    1 if conj[l] == usize::MAX => conj[l] = m,
                    _ => return Err(FusionError::Axiom(format!("vacuum appears twice in {l} * {m}"))),
                }
            }
            if conj[l] == usize::MAX {
                return Err(FusionError::Axiom(format!("{l} has no conjugate")));
            }
        }
        ring.conjugation = conj;
        ring.check_axioms()?;
        Ok(ring)
    }

    pub fn n(&self, lambda: usize, mu: usize, nu: usize) -> u32 {
        self.coefficients[(lambda * self.size + mu) * self.size + nu]
    }

    /// Nonzero terms of `lambda * mu`.
    pub fn product(&self, lambda: usize, mu: usize) -> &[(usize, u32)] {
        &self.products[lambda * self.size + mu]
    }

    /// Unit, commutativity, conjugation and associativity, all exact.
    pub fn check_axioms(&self) -> Result<(), FusionError> {
        let n = self.size;
        for m in 0..n {
            if self.product(self.vacuum, m) != [(m, 1)] {
                return Err(FusionError::Axiom(format!("vacuum is not a unit on {m}")));
            }
            if self.conjugation[self.conjugation[m]] != m {
                return Err(FusionError::Axiom("conjugation is not an involution".into()));
            }
        }
        for l in 0..n {
            for m in 0..n {
                if self.product(l, m) != self.product(m, l) {
                    return Err(FusionError::Axiom(format!("{l} * {m} is not commutative")));
                }
            }
        }
        let bad = (0..n).into_par_iter().find_map_any(|l| {
            let mut lhs: HashMap<usize, u64> = HashMap::new();
            let mut rhs: HashMap<usize, u64> = HashMap::new();
            for m in l..n {
                for nu in m..n {
                    lhs.clear();
                    rhs.clear();
                    for &(s, a) in self.product(l, m) {
                        for &(r, b) in self.product(s, nu) {
                            *lhs.entry(r).or_default() += u64::from(a * b);
                        }
                    }
                    for &(s, a) in self.product(m, nu) {
                        for &(r, b) in self.product(l, s) {
                            *rhs.entry(r).or_default() += u64::from(a * b);
                        }
                    }
                    if lhs != rhs {
                        return Some((l, m, nu));
                    }
                }
            }
            None
        });
        if let Some((l, m, nu)) = bad {
            return Err(FusionError::Axiom(format!("({l} * {m}) * {nu} != {l} * ({m} * {nu})")));
        }
        Ok(())
    }

    /// Quantum dimension-free test: `J` is a simple current iff every
    /// product with `J` has a single term of multiplicity one.
    pub fn is_simple_current(&self, j: usize) -> bool {
        (0..self.size).all(|l| self.product(l, j).iter().map(|t| t.1).sum::<u32>() == 1)
    }

    /// `mu -> J mu` for a simple current `J`.
    pub fn current_action(&self, j: usize) -> Vec<usize> {
        (0..self.size).map(|l| self.product(j, l)[0].0).collect()
    }

    /// Sparse `(l, m, n, N)` triples in index order.
    pub fn triples(&self) -> Vec<(usize, usize, usize, u32)> {
        let mut out = Vec::new();
        for l in 0..self.size {
            for m in 0..self.size {
                for &(n, c) in self.product(l, m) {
                    out.push((l, m, n, c));
                }
            }
        }
        out
    }
}

/// Rounds a complex tensor entry, returning the integer and its residual.
fn round_entry(z: C64) -> (i64, f64) {
    let r = z.re.round();
    (r as i64, ((z.re - r).powi(2) + z.im.powi(2)).sqrt())
}

/// Fusion coefficients from a general matrix diagonalizing the ring:
/// `N_{lm}^n = sum_k A_{lk} A_{mk} B_{kn} / A_{0k}` with `A` the eigenvalue
/// columns and `B` the inverse, as used for both ordinary and Verlinde-like sums.
pub fn verlinde_sum(
    left: &nalgebra::DMatrix<C64>,
    inverse: &nalgebra::DMatrix<C64>,
    vacuum: usize,
) -> (Vec<C64>, usize) {
    let n = left.nrows();
    let weight: Vec<Vec<C64>> = (0..n)
        .map(|l| (0..n).map(|k| left[(l, k)] / left[(vacuum, k)]).collect())
        .collect();
    let out: Vec<C64> = (0..n * n)
        .into_par_iter()
        .flat_map_iter(|lm| {
            let (l, m) = (lm / n, lm % n);
            let coeff: Vec<C64> = (0..n).map(|k| weight[l][k] * left[(m, k)]).collect();
            (0..n).map(move |nu| {
                let mut acc = C64::zero();
                for (k, c) in coeff.iter().enumerate() {
                    acc += c * inverse[(k, nu)];
                }
                acc
            })
        })
        .collect();
    (out, n)
}

/// Rounds a tensor of complex coefficients, failing on any entry off the
/// non-negative integers by more than `tol`.
pub fn round_tensor(
    raw: &[C64],
    n: usize,
    tol: f64,
) -> Result<(Vec<u32>, RoundingReport), FusionError> {
    let mut report = RoundingReport {
        max_residual: 0.0,
        worst: (0, 0, 0),
    };
    let mut out = Vec::with_capacity(raw.len());
    for (idx, z) in raw.iter().enumerate() {
        let (v, r) = round_entry(*z);
        let loc = (idx / (n * n), (idx / n) % n, idx % n);
        if r > report.max_residual {
            report.max_residual = r;
            report.worst = loc;
        }
        if r > tol || v < 0 {
            return Err(FusionError::Integrality {
                lambda: loc.0,
                mu: loc.1,
                nu: loc.2,
                value: format!("{:.6}{:+.6}i", z.re, z.im),
                residual: r,
            });
        }
        out.push(v as u32);
    }
    Ok((out, report))
}

/// The Verlinde formula `N_{lm}^n = sum_k S_{kl} S_{km} S*_{kn} / S_{k Omega}`.
pub fn verlinde(md: &ModularData) -> Result<FusionRing, FusionError> {
    verlinde_with_report(md, INTEGRALITY_TOLERANCE).map(|x| x.0)
}

pub fn verlinde_with_report(
    md: &ModularData,
    tol: f64,
) -> Result<(FusionRing, RoundingReport), FusionError> {
    let (raw, n) = verlinde_sum(&md.s, &md.s.adjoint(), md.vacuum);
    let (coeffs, report) = round_tensor(&raw, n, tol)?;
    Ok((FusionRing::from_coefficients(n, md.vacuum, coeffs)?, report))
}

/// An abelian group of simple currents with its multiplication table.
#[derive(Debug, Clone, Serialize)]
pub struct SimpleCurrentGroup {
    /// Label indices, vacuum first, otherwise increasing.
    pub elements: Vec<usize>,
    /// `table[a][b]` is the position of `elements[a] * elements[b]`.
    pub table: Vec<Vec<usize>>,
    pub orders: Vec<usize>,
    /// `action[a][mu]` is the label `elements[a] * mu`.
    pub action: Vec<Vec<usize>>,
}

impl SimpleCurrentGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, label: usize) -> Option<usize> {
        self.elements.iter().position(|&e| e == label)
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn power(&self, a: usize, m: usize) -> usize {
        (0..m).fold(0, |acc, _| self.table[acc][a])
    }

    /// `#{g : g^m = 1}` for `m = 1..=up_to`; equal sequences for all
    /// `m` up to the exponent characterize a finite abelian group.
    pub fn signature(&self, up_to: i64) -> Vec<i64> {
        (1..=up_to)
            .map(|m| {
                (0..self.order())
                    .filter(|&a| self.power(a, m as usize) == 0)
                    .count() as i64
            })
            .collect()
    }

    /// Position of the product of a list of group positions.
    pub fn product_of(&self, items: &[usize]) -> usize {
        items.iter().fold(0, |acc, &a| self.table[acc][a])
    }

    /// The subgroup generated by the given labels.
    pub fn generated(ring: &FusionRing, generators: &[usize]) -> Result<Self, FusionError> {
        let mut elements = vec![ring.vacuum];
        for &g in generators {
            if !ring.is_simple_current(g) {
                return Err(FusionError::NotAGroup(generators.to_vec()));
            }
        }
        let mut frontier = vec![ring.vacuum];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = ring.product(g, x)[0].0;
                if !elements.contains(&y) {
                    elements.push(y);
                    frontier.push(y);
                }
            }
        }
        elements[1..].sort_unstable();
        Self::from_elements(ring, elements)
    }

    fn from_elements(ring: &FusionRing, elements: Vec<usize>) -> Result<Self, FusionError> {
        let pos: HashMap<usize, usize> = elements.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for &a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in &elements {
                let p = ring.product(a, b);
                match pos.get(&p[0].0) {
                    Some(&c) if p.len() == 1 => row.push(c),
                    _ => return Err(FusionError::NotAGroup(elements.clone())),
                }
            }
            table.push(row);
        }
        let action = elements.iter().map(|&j| ring.current_action(j)).collect();
        let mut group = SimpleCurrentGroup {
            orders: vec![0; elements.len()],
            elements,
            table,
            action,
        };
        group.orders = (0..group.order())
            .map(|a| (1..=group.order()).find(|&m| group.power(a, m) == 0).unwrap())
            .collect();
        Ok(group)
    }
}

/// All simple currents, detected by `S_{J,Omega} = S_{Omega,Omega}` and
/// cross-checked against the fusion rules.
pub fn simple_currents(md: &ModularData, ring: &FusionRing) -> Result<SimpleCurrentGroup, FusionError> {
    let s00 = md.s[(md.vacuum, md.vacuum)];
    let mut elements = vec![md.vacuum];
    for j in 0..md.len() {
        let by_s = (md.s[(j, md.vacuum)] - s00).norm() < 1e-9;
        if by_s != ring.is_simple_current(j) {
            return Err(FusionError::Inconsistent(j));
        }
        if by_s && j != md.vacuum {
            elements.push(j);
        }
    }
    SimpleCurrentGroup::from_elements(ring, elements)
}

/// Monodromy charge `Q_J(mu) = Delta_J + Delta_mu - Delta_{J mu} mod 1`.
pub fn monodromy_charge(md: &ModularData, group: &SimpleCurrentGroup, a: usize, mu: usize) -> Q {
    let j = group.elements[a];
    exact::frac(md.delta[j] + md.delta[mu] - md.delta[group.action[a][mu]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::kac_peterson;
    use crate::liealg::{SimpleLieAlgebra, DEFAULT_WEYL_CAP};

    fn wzw(s: &str, k: i64) -> ModularData {
        kac_peterson(&SimpleLieAlgebra::new(s.parse().unwrap()), k, DEFAULT_WEYL_CAP).unwrap()
    }

    #[test]
    fn su2_level_one_is_z2() {
        let ring = verlinde(&wzw("A1", 1)).unwrap();
        assert_eq!(ring.product(1, 1), &[(0, 1)]);
    }

    #[test]
    fn su2_level_two_spin_half_squared() {
        let ring = verlinde(&wzw("A1", 2)).unwrap();
        assert_eq!(ring.product(1, 1), &[(0, 1), (2, 1)]);
    }

    #[test]
    fn su3_currents_form_z3() {
        let md = wzw("A2", 2);
        let ring = verlinde(&md).unwrap();
        let g = simple_currents(&md, &ring).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.signature(3), vec![1, 1, 3]);
        // Q_J(mu) is the triality of mu over 3
        let mu = md.index_of(&crate::modular::Label::Weight(vec![1, 0])).unwrap();
        let q: Vec<Q> = (1..3).map(|a| monodromy_charge(&md, &g, a, mu)).collect();
        assert!(q.iter().all(|x| *x.denom() == 3));
    }

    #[test]
    fn product_ring_of_two_ising_like_factors() {
        let a = wzw("A1", 1);
        let p = tensor_product(&a, &a);
        let ring = verlinde(&p).unwrap();
        let g = simple_currents(&p, &ring).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.signature(2), vec![1, 4]);
        let sub = SimpleCurrentGroup::generated(&ring, &[3]).unwrap();
        assert_eq!(sub.elements, vec![0, 3]);
    }

    #[test]
    fn conjugation_matches_s_squared() {
        let md = wzw("A2", 3);
        let ring = verlinde(&md).unwrap();
        assert_eq!(ring.conjugation, md.conjugation());
    }
}
