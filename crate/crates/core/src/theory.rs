//! WZW theories and their tensor products, with modular data and `S^J`
//! matrices assembled factor by factor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::affine::{self, AffineError, OrbitCache, PhaseConvention, SJMatrix};
use crate::liealg::{AlgebraSpec, LieError, Series, SimpleLieAlgebra};
use crate::modular::{self, ModularData};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheorySpec {
    Wzw { algebra: AlgebraSpec, level: i64 },
    Product(Vec<TheorySpec>),
}

impl TheorySpec {
    pub fn wzw(algebra: &str, level: i64) -> Result<TheorySpec, LieError> {
        Ok(TheorySpec::Wzw {
            algebra: algebra.parse()?,
            level,
        })
    }

    /// `so(n)` at level 1 for odd `n >= 3`; `so(3)_1` is `su(2)_2`.
    pub fn so_odd_level_one(n: usize) -> Result<TheorySpec, LieError> {
        if n < 3 || n % 2 == 0 {
            return Err(LieError::Parse(format!("so({n}) is not an odd orthogonal algebra")));
        }
        if n == 3 {
            return Ok(TheorySpec::Wzw {
                algebra: AlgebraSpec::new(Series::A, 1)?,
                level: 2,
            });
        }
        Ok(TheorySpec::Wzw {
            algebra: AlgebraSpec::new(Series::B, (n - 1) / 2)?,
            level: 1,
        })
    }

    /// Flattened list of simple factors.
    pub fn factors(&self) -> Vec<(AlgebraSpec, i64)> {
        match self {
            TheorySpec::Wzw { algebra, level } => vec![(*algebra, *level)],
            TheorySpec::Product(fs) => fs.iter().flat_map(|f| f.factors()).collect(),
        }
    }
}

impl fmt::Display for TheorySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors()
            .iter()
            .map(|(a, k)| affine::theory_name(*a, *k))
            .collect();
        f.write_str(&parts.join("*"))
    }
}

/// Parses `"A1_k2"` or products such as `"A1_k2*A1_k2"`.
impl FromStr for TheorySpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_one = |p: &str| -> Result<TheorySpec, LieError> {
            let (alg, lvl) = p
                .split_once("_k")
                .ok_or_else(|| LieError::Parse(format!("expected X<rank>_k<level>, got {p:?}")))?;
            let level = lvl
                .parse::<i64>()
                .ok()
                .filter(|k| *k >= 0)
                .ok_or_else(|| LieError::Parse(format!("bad level in {p:?}")))?;
            TheorySpec::wzw(alg, level)
        };
        let parts: Vec<&str> = s.split('*').map(str::trim).collect();
        if parts.len() == 1 {
            parse_one(parts[0])
        } else {
            Ok(TheorySpec::Product(
                parts.into_iter().map(parse_one).collect::<Result<_, _>>()?,
            ))
        }
    }
}

/// Source of WZW modular data; lets callers plug in a disk cache.
pub trait ModularSource {
    fn wzw(&mut self, alg: &SimpleLieAlgebra, level: i64) -> Result<ModularData, AffineError>;
}

/// Computes everything from scratch.
pub struct Direct {
    pub weyl_cap: usize,
}

impl ModularSource for Direct {
    fn wzw(&mut self, alg: &SimpleLieAlgebra, level: i64) -> Result<ModularData, AffineError> {
        affine::kac_peterson(alg, level, self.weyl_cap)
    }
}

#[derive(Debug, Clone)]
struct Factor {
    alg: SimpleLieAlgebra,
    level: i64,
    md: ModularData,
}

/// A (product of) WZW theories with its modular data.
#[derive(Debug, Clone)]
pub struct Theory {
    pub spec: TheorySpec,
    pub md: ModularData,
    factors: Vec<Factor>,
    pub weyl_cap: usize,
}

impl Theory {
    pub fn build(
        spec: &TheorySpec,
        weyl_cap: usize,
        source: &mut dyn ModularSource,
    ) -> Result<Theory, AffineError> {
        let mut factors = Vec::new();
        for (a, k) in spec.factors() {
            let alg = SimpleLieAlgebra::new(a);
            let md = source.wzw(&alg, k)?;
            factors.push(Factor { alg, level: k, md });
        }
        let md = if factors.len() == 1 {
            factors[0].md.clone()
        } else {
            let refs: Vec<&ModularData> = factors.iter().map(|f| &f.md).collect();
            modular::tensor_product_many(&refs)
        };
        Ok(Theory {
            spec: spec.clone(),
            md,
            factors,
            weyl_cap,
        })
    }

    pub fn new(spec: &TheorySpec, weyl_cap: usize) -> Result<Theory, AffineError> {
        Self::build(spec, weyl_cap, &mut Direct { weyl_cap })
    }

    pub fn is_simple(&self) -> bool {
        self.factors.len() == 1
    }

    /// Algebra and level of a single-factor theory.
    pub fn simple_factor(&self) -> Option<(&SimpleLieAlgebra, i64)> {
        self.is_simple()
            .then(|| (&self.factors[0].alg, self.factors[0].level))
    }

    fn sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.md.len()).collect()
    }

    /// `S^J` for a simple current given as a label index. For products the
    /// fixed-point set and matrix factorize.
    pub fn sj_matrix(&self, current: usize, cache: &mut OrbitCache) -> Result<SJMatrix, AffineError> {
        if current == self.md.vacuum {
            return Ok(SJMatrix::identity_current(&self.md));
        }
        if self.is_simple() {
            let f = &self.factors[0];
            return affine::sj_matrix(&f.alg, f.level, &f.md, current, self.weyl_cap, cache);
        }
        let sizes = self.sizes();
        let digits = modular::mixed_radix(current, &sizes);
        let parts: Vec<SJMatrix> = self
            .factors
            .iter()
            .zip(&digits)
            .map(|(f, &d)| affine::sj_matrix(&f.alg, f.level, &f.md, d, self.weyl_cap, cache))
            .collect::<Result<_, _>>()?;
        let mut fixed = vec![Vec::<usize>::new()];
        for p in &parts {
            fixed = fixed
                .into_iter()
                .flat_map(|prefix| {
                    p.fixed.iter().map(move |&x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        let fixed: Vec<usize> = fixed
            .iter()
            .map(|d| modular::from_mixed_radix(d, &sizes))
            .collect();
        let mut matrix = parts[0].matrix.clone();
        for p in &parts[1..] {
            matrix = matrix.kronecker(&p.matrix);
        }
        Ok(SJMatrix {
            current,
            fixed,
            matrix,
            convention: PhaseConvention::Product,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::DEFAULT_WEYL_CAP;

    #[test]
    fn parse_and_print_products() {
        let t: TheorySpec = "A1_k2*B2_k1".parse().unwrap();
        assert_eq!(t.factors().len(), 2);
        assert_eq!(t.to_string(), "A1_k2*B2_k1");
        assert!("A1".parse::<TheorySpec>().is_err());
    }

    #[test]
    fn so3_cubed_fixed_point() {
        let so3 = TheorySpec::so_odd_level_one(3).unwrap();
        let spec = TheorySpec::Product(vec![so3.clone(), so3.clone(), so3]);
        let th = Theory::new(&spec, DEFAULT_WEYL_CAP).unwrap();
        assert_eq!(th.md.len(), 27);
        let j = modular::from_mixed_radix(&[2, 2, 0], &[3, 3, 3]);
        let sj = th.sj_matrix(j, &mut OrbitCache::new()).unwrap();
        assert_eq!(sj.fixed.len(), 3);
        assert!(sj.unitarity_residual() < 1e-12);
    }
}
