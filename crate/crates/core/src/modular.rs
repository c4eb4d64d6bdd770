//! Modular data containers and the shared invariant checker.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, Q};

pub type C64 = Complex64;
pub type CMat = DMatrix<C64>;

/// A sector label. WZW sectors carry Dynkin labels; derived theories use
/// tuples or tagged names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Weight(Vec<i64>),
    Tuple(Vec<Label>),
    Tag(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Weight(w) => {
                let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            Label::Tuple(ls) => {
                let parts: Vec<String> = ls.iter().map(|x| x.to_string()).collect();
                write!(f, "[{}]", parts.join("|"))
            }
            Label::Tag(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{relation} violated: residual {residual:.3e} exceeds tolerance {tolerance:.1e}")]
pub struct InvariantViolation {
    pub relation: String,
    pub residual: f64,
    pub tolerance: f64,
}

/// Max-entry residuals of the modular relations.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModularResiduals {
    pub unitarity: f64,
    pub symmetry: f64,
    pub s_fourth_power: f64,
    pub st_cubed: f64,
    /// Distance of `S^2` from the nearest permutation matrix.
    pub charge_conjugation: f64,
    /// Largest `|Im S_{Omega,mu}|` or negative real part seen in the vacuum row.
    pub vacuum_row: f64,
}

impl ModularResiduals {
    pub fn max(&self) -> f64 {
        [
            self.unitarity,
            self.symmetry,
            self.s_fourth_power,
            self.st_cubed,
            self.charge_conjugation,
            self.vacuum_row,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }

    pub fn named(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("unitarity", self.unitarity),
            ("symmetry", self.symmetry),
            ("S^4 = 1", self.s_fourth_power),
            ("(ST)^3 = S^2", self.st_cubed),
            ("S^2 permutation", self.charge_conjugation),
            ("S_{Omega,mu} > 0", self.vacuum_row),
        ]
    }

    pub fn check(&self, tolerance: f64) -> Result<(), InvariantViolation> {
        for (name, r) in self.named() {
            if !(r < tolerance) {
                return Err(InvariantViolation {
                    relation: name.to_string(),
                    residual: r,
                    tolerance,
                });
            }
        }
        Ok(())
    }
}

/// Label set, S matrix, conformal weights and central charge.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularData {
    pub name: String,
    pub labels: Vec<Label>,
    pub vacuum: usize,
    pub s: CMat,
    /// Conformal weights; only their classes mod 1 enter `T`.
    pub delta: Vec<Q>,
    pub c: Q,
}

impl ModularData {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The one-sector theory.
    pub fn trivial(name: &str) -> ModularData {
        ModularData {
            name: name.to_string(),
            labels: vec![Label::Weight(vec![])],
            vacuum: 0,
            s: CMat::from_element(1, 1, C64::new(1.0, 0.0)),
            delta: vec![Q::from_integer(0)],
            c: Q::from_integer(0),
        }
    }

    /// `Delta_mu - c/24` reduced into `[0, 1)`.
    pub fn t_exponent(&self, mu: usize) -> Q {
        exact::frac(self.delta[mu] - self.c / Q::from_integer(24))
    }

    pub fn t(&self) -> Vec<C64> {
        (0..self.len())
            .map(|m| exact::root_of_unity(self.t_exponent(m)))
            .collect()
    }

    pub fn index_of(&self, label: &Label) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn residuals(&self) -> ModularResiduals {
        modular_residuals(&self.s, &self.t(), self.vacuum)
    }

    pub fn check(&self, tolerance: f64) -> Result<ModularResiduals, InvariantViolation> {
        let r = self.residuals();
        r.check(tolerance)?;
        Ok(r)
    }

    /// Charge conjugation read off from `S^2`.
    pub fn conjugation(&self) -> Vec<usize> {
        let s2 = &self.s * &self.s;
        nearest_permutation(&s2).0
    }
}

pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn diag(v: &[C64]) -> CMat {
    CMat::from_diagonal(&nalgebra::DVector::from_column_slice(v))
}

/// Permutation `p` with `m[i][p(i)]` the dominant entry of row `i`, and the
/// max deviation of `m` from that permutation matrix (entries must be 0/1).
pub fn nearest_permutation(m: &CMat) -> (Vec<usize>, f64) {
    signed_permutation(m, |z| (z - C64::new(1.0, 0.0)).norm())
}

/// Like [`nearest_permutation`] but allowing each nonzero entry to be any
/// sign `+-1`; `residual` measures the worst deviation.
pub fn nearest_signed_permutation(m: &CMat) -> (Vec<usize>, Vec<f64>, f64) {
    let (p, r) = signed_permutation(m, |z| (z.norm() - 1.0).abs() + z.im.abs());
    let signs = (0..m.nrows()).map(|i| m[(i, p[i])].re.signum()).collect();
    (p, signs, r)
}

fn signed_permutation(m: &CMat, dev: impl Fn(C64) -> f64) -> (Vec<usize>, f64) {
    let n = m.nrows();
    let mut perm = Vec::with_capacity(n);
    let mut residual: f64 = 0.0;
    for i in 0..n {
        let (j, _) = (0..n)
            .map(|j| (j, m[(i, j)].norm()))
            .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        perm.push(j);
        for jj in 0..n {
            let r = if jj == j {
                dev(m[(i, jj)])
            } else {
                m[(i, jj)].norm()
            };
            residual = residual.max(r);
        }
    }
    let mut seen = vec![false; n];
    for &j in &perm {
        if std::mem::replace(&mut seen[j], true) {
            residual = residual.max(1.0);
        }
    }
    (perm, residual)
}

pub fn modular_residuals(s: &CMat, t: &[C64], vacuum: usize) -> ModularResiduals {
    let n = s.nrows();
    let id = identity(n);
    let s_adj = s.adjoint();
    let unitarity = max_abs(&(s * &s_adj - &id));
    let symmetry = max_abs(&(s - s.transpose()));
    let s2 = s * s;
    let s_fourth_power = max_abs(&(&s2 * &s2 - &id));
    let st = s * diag(t);
    let st_cubed = max_abs(&(&st * &st * &st - &s2));
    let (_, charge_conjugation) = nearest_permutation(&s2);
    let vacuum_row = (0..n)
        .map(|m| {
            let z = s[(vacuum, m)];
            let neg = if z.re > 0.0 { 0.0 } else { 1.0 + z.re.abs() };
            z.im.abs().max(neg)
        })
        .fold(0.0, f64::max);
    ModularResiduals {
        unitarity,
        symmetry,
        s_fourth_power,
        st_cubed,
        charge_conjugation,
        vacuum_row,
    }
}

/// Kronecker product of two theories: labels are pairs, `S` the Kronecker
/// product, weights and central charges add.
pub fn tensor_product(a: &ModularData, b: &ModularData) -> ModularData {
    tensor_product_many(&[a, b])
}

/// Tensor product of several theories with flat tuple labels, ordered
/// lexicographically (last factor fastest).
pub fn tensor_product_many(factors: &[&ModularData]) -> ModularData {
    assert!(!factors.is_empty());
    let sizes: Vec<usize> = factors.iter().map(|f| f.len()).collect();
    let total: usize = sizes.iter().product();
    let mut labels = Vec::with_capacity(total);
    let mut delta = Vec::with_capacity(total);
    for idx in 0..total {
        let digits = mixed_radix(idx, &sizes);
        labels.push(Label::Tuple(
            digits
                .iter()
                .zip(factors)
                .map(|(&d, f)| f.labels[d].clone())
                .collect(),
        ));
        delta.push(
            digits
                .iter()
                .zip(factors)
                .map(|(&d, f)| f.delta[d])
                .sum(),
        );
    }
    let mut s = factors[0].s.clone();
    for f in &factors[1..] {
        s = s.kronecker(&f.s);
    }
    let vacuum_digits: Vec<usize> = factors.iter().map(|f| f.vacuum).collect();
    ModularData {
        name: factors
            .iter()
            .map(|f| f.name.as_str())
            .collect::<Vec<_>>()
            .join("*"),
        labels,
        vacuum: from_mixed_radix(&vacuum_digits, &sizes),
        s,
        delta,
        c: factors.iter().map(|f| f.c).sum(),
    }
}

/// Digits of `idx` with the last position varying fastest.
pub fn mixed_radix(mut idx: usize, sizes: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; sizes.len()];
    for (d, &n) in digits.iter_mut().zip(sizes).rev() {
        *d = idx % n;
        idx /= n;
    }
    digits
}

pub fn from_mixed_radix(digits: &[usize], sizes: &[usize]) -> usize {
    digits.iter().zip(sizes).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Finds a label bijection `p` (vacuum to vacuum) with equal `T` and
/// `S_{p(i),p(j)} = S'_{ij}` within `tol`.
pub fn match_modular_data(a: &ModularData, b: &ModularData, tol: f64) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let ta = a.t();
    let tb = b.t();
    // candidates: same T and same vacuum-row entry
    let cand: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&j| {
                    (ta[i] - tb[j]).norm() < tol
                        && (a.s[(a.vacuum, i)] - b.s[(b.vacuum, j)]).norm() < tol
                })
                .collect()
        })
        .collect();
    fn go(
        i: usize,
        a: &ModularData,
        b: &ModularData,
        cand: &[Vec<usize>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        tol: f64,
    ) -> bool {
        if i == cand.len() {
            return true;
        }
        for &j in &cand[i] {
            if used[j] {
                continue;
            }
            let ok = (0..i).all(|k| (a.s[(i, k)] - b.s[(j, perm[k])]).norm() < tol)
                && (a.s[(i, i)] - b.s[(j, j)]).norm() < tol;
            if ok {
                used[j] = true;
                perm.push(j);
                if go(i + 1, a, b, cand, perm, used, tol) {
                    return true;
                }
                perm.pop();
                used[j] = false;
            }
        }
        false
    }
    let mut perm = Vec::new();
    let mut used = vec![false; n];
    if go(0, a, b, &cand, &mut perm, &mut used, tol) && perm[a.vacuum] == b.vacuum {
        Some(perm)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ising_like() -> ModularData {
        let h = 0.5f64.sqrt();
        ModularData {
            name: "x".into(),
            labels: vec![Label::Weight(vec![0]), Label::Weight(vec![1])],
            vacuum: 0,
            s: CMat::from_row_slice(
                2,
                2,
                &[
                    C64::new(h, 0.0),
                    C64::new(h, 0.0),
                    C64::new(h, 0.0),
                    C64::new(-h, 0.0),
                ],
            ),
            delta: vec![Q::from_integer(0), Q::new(1, 4)],
            c: Q::from_integer(1),
        }
    }

    #[test]
    fn su2_level_one_passes() {
        let md = ising_like();
        assert!(md.check(1e-12).is_ok());
    }

    #[test]
    fn product_with_trivial_is_identity() {
        let md = ising_like();
        let p = tensor_product(&md, &ModularData::trivial("1"));
        assert_eq!(p.len(), 2);
        assert!(max_abs(&(&p.s - &md.s)) < 1e-15);
        assert!(match_modular_data(&md, &p, 1e-12).is_some());
    }

    #[test]
    fn signed_permutation_detection() {
        let m = CMat::from_row_slice(
            2,
            2,
            &[
                C64::new(0.0, 0.0),
                C64::new(-1.0, 0.0),
                C64::new(1.0, 0.0),
                C64::new(0.0, 0.0),
            ],
        );
        let (p, signs, r) = nearest_signed_permutation(&m);
        assert_eq!(p, vec![1, 0]);
        assert_eq!(signs, vec![-1.0, 1.0]);
        assert!(r < 1e-15);
        assert!(nearest_permutation(&m).1 > 1.0);
    }
}
