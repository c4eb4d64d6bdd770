//! Small exact linear algebra over `i64` and `Rational64`.

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

pub type Q = Rational64;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qr(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Fractional part in `[0, 1)`.
pub fn frac(x: Q) -> Q {
    x - x.floor()
}

pub fn is_integer(x: Q) -> bool {
    x.is_integer()
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// `exp(2 pi i x)` for rational `x`, reducing mod 1 exactly first.
pub fn root_of_unity(x: Q) -> num_complex::Complex64 {
    let f = frac(x);
    num_complex::Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * to_f64(f))
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn int_to_q(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn determinant(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    let mut a = int_to_q(m);
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return 0;
        };
        if piv != col {
            a.swap(col, piv);
            det = -det;
        }
        let p = a[col][col];
        det *= p;
        for r in col + 1..n {
            let f = a[r][col] / p;
            if !f.is_zero() {
                for c in col..n {
                    let v = a[col][c];
                    a[r][c] -= f * v;
                }
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Smith normal form `u * m * v = diag(d)` with unimodular `u`, `v`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<i64>,
    pub u: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity_i(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Smith normal form of a square integer matrix. Entries are assumed small
/// (Cartan-sized), so plain `i64` arithmetic is used.
pub fn smith_normal_form(m: &[Vec<i64>]) -> Smith {
    let n = m.len();
    let mut a = m.to_vec();
    let mut u = identity_i(n);
    let mut v = identity_i(n);
    for t in 0..n {
        loop {
            // pivot: smallest nonzero |entry| in the remaining block
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..n {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                let f = Integer::div_floor(&a[i][t], &a[t][t]);
                if f != 0 {
                    for c in 0..n {
                        a[i][c] -= f * a[t][c];
                        u[i][c] -= f * u[t][c];
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let f = Integer::div_floor(&a[t][j], &a[t][t]);
                if f != 0 {
                    for r in 0..n {
                        a[r][j] -= f * a[r][t];
                        v[r][j] -= f * v[r][t];
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold any non-multiple into the pivot row
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| a[i][j] % a[t][t] != 0);
            match bad {
                Some((i, _)) => {
                    for c in 0..n {
                        a[t][c] += a[i][c];
                        u[t][c] += u[i][c];
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for c in 0..n {
                a[t][c] = -a[t][c];
                u[t][c] = -u[t][c];
            }
        }
    }
    Smith {
        diagonal: (0..n).map(|i| a[i][i]).collect(),
        u,
        v,
    }
}

pub fn mat_mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| a[i][l] * b[l][j]).sum()).collect())
        .collect()
}

/// Inverse of a unimodular integer matrix.
pub fn unimodular_inverse(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let inv = inverse(&int_to_q(m)).expect("unimodular matrix is invertible");
    inv.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.is_integer(), "matrix is not unimodular");
                    x.to_integer()
                })
                .collect()
        })
        .collect()
}

pub fn abs_q(x: Q) -> Q {
    x.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smith_of_a2_cartan() {
        let s = smith_normal_form(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(s.diagonal, vec![1, 3]);
    }

    #[test]
    fn smith_reconstructs() {
        let m = vec![vec![2, 0, 0], vec![0, 4, 2], vec![0, 2, 6]];
        let s = smith_normal_form(&m);
        let d = mat_mul_i(&mat_mul_i(&s.u, &m), &s.v);
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(d[i][j], 0);
                }
            }
            assert_eq!(d[i][i], s.diagonal[i]);
        }
        for w in s.diagonal.windows(2) {
            assert_eq!(w[1] % w[0], 0);
        }
        assert_eq!(s.diagonal.iter().product::<i64>(), determinant(&m).abs());
    }

    #[test]
    fn rational_inverse_roundtrip() {
        let m = int_to_q(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(inv[0][0], qr(3, 4));
        assert_eq!(inv[1][1], q(1));
    }

    #[test]
    fn frac_is_in_unit_interval() {
        assert_eq!(frac(qr(-1, 3)), qr(2, 3));
        assert_eq!(frac(qr(7, 2)), qr(1, 2));
    }
}
