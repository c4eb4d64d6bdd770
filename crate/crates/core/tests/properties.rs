use proptest::prelude::*;

use modwzw::affine;
use modwzw::blocks;
use modwzw::cli::{self, cache};
use modwzw::exact::{self, Q};
use modwzw::fusion;
use modwzw::liealg::{SimpleLieAlgebra, DEFAULT_WEYL_CAP};
use modwzw::modular::{ModularData, C64};
use modwzw::orbifold;

const THEORIES: &[(&str, i64)] = &[
    ("A1", 1),
    ("A1", 3),
    ("A1", 6),
    ("A2", 2),
    ("A2", 3),
    ("A3", 2),
    ("B2", 2),
    ("C3", 1),
    ("G2", 2),
    ("D4", 1),
    ("B3", 2),
];

fn theory(i: usize) -> (SimpleLieAlgebra, i64, ModularData) {
    let (name, k) = THEORIES[i % THEORIES.len()];
    let alg = SimpleLieAlgebra::new(name.parse().unwrap());
    let md = affine::kac_peterson(&alg, k, DEFAULT_WEYL_CAP).unwrap();
    (alg, k, md)
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn fusion_rules_are_symmetric_under_conjugation(t in 0usize..64, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let (_, _, md) = theory(t);
        let n = md.len();
        let (l, m, nu) = (a % n, b % n, c % n);
        let ring = fusion::verlinde(&md).unwrap();
        let conj = &ring.conjugation;
        prop_assert_eq!(ring.n(l, m, nu), ring.n(m, l, nu));
        prop_assert_eq!(ring.n(l, m, nu), ring.n(l, conj[nu], conj[m]));
        prop_assert_eq!(ring.n(md.vacuum, m, nu), u32::from(m == nu));
    }

    #[test]
    fn simple_currents_shift_rows_by_monodromy(t in 0usize..64, a in 0usize..64, b in 0usize..64) {
        let (_, _, md) = theory(t);
        let n = md.len();
        let ring = fusion::verlinde(&md).unwrap();
        let g = fusion::simple_currents(&md, &ring).unwrap();
        let j = a % g.order();
        let (l, mu) = (b % n, (a + b) % n);
        let jl = g.action[j][l];
        let charge = fusion::monodromy_charge(&md, &g, j, mu);
        let lhs = md.s[(jl, mu)];
        let rhs = exact::root_of_unity(charge) * md.s[(l, mu)];
        prop_assert!((lhs - rhs).norm() < 1e-9, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn cache_encoding_is_lossless(t in 0usize..64) {
        let (alg, k, md) = theory(t);
        let back = cache::decode(&cache::encode(alg.spec, k, &md), alg.spec, k).unwrap();
        prop_assert_eq!(back, md);
    }

    #[test]
    fn labels_parse_back(t in 0usize..64, a in 0usize..64) {
        let (_, _, md) = theory(t);
        let i = a % md.len();
        let text = format!("{},{i}", md.labels[i]);
        prop_assert_eq!(cli::parse_labels(&text, &md).unwrap(), vec![i, i]);
    }

    #[test]
    fn shifts_parse_back(v in prop::collection::vec((-20i64..20, 1i64..9), 1..5)) {
        let qs: Vec<Q> = v.iter().map(|&(p, d)| Q::new(p, d)).collect();
        let text = qs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        prop_assert_eq!(cli::parse_shift(&text).unwrap(), qs);
    }

    #[test]
    fn multiset_counts(n in 1usize..7, m in 1usize..5) {
        let sets = blocks::insertion_multisets(n, m);
        prop_assert_eq!(sets.len(), binomial(n + m - 1, m));
        prop_assert!(sets.windows(2).all(|w| w[0] < w[1]));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn su2_inner_orbifolds_are_modular(k in 1i64..7) {
        let alg = SimpleLieAlgebra::new("A1".parse().unwrap());
        let md = affine::kac_peterson(&alg, k, DEFAULT_WEYL_CAP).unwrap();
        let input = orbifold::inner_orbifold_input(&alg, k, &md, &[Q::from_integer(1)]).unwrap();
        let orb = orbifold::assemble_orbifold(&input).unwrap();
        prop_assert!(orb.checks.residuals.max() < 1e-8);
        prop_assert_eq!(orb.md.len(), 4 * (k as usize + 1));
        // The dual current has order two and weight in Z.
        let j = orb.dual_current;
        prop_assert_eq!(orb.ring.product(j, j), &[(orb.md.vacuum, 1)][..]);
        prop_assert!(orb.md.delta[j].is_integer());
        let total: C64 = (0..orb.md.len()).map(|m| orb.md.s[(orb.md.vacuum, m)].powi(2)).sum();
        prop_assert!((total - C64::new(1.0, 0.0)).norm() < 1e-9);
    }
}
