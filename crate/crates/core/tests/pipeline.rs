//! End-to-end exercises of the construction pipeline on seeded random
//! instances, with oracle cross-checks on the small ones.

use vflame_core::bubble::largeness_check;
use vflame_core::flame::{construct_large_flame, is_flame, lovasz_trim};
use vflame_core::generate::{gen_figure6, random_digraph_density};
use vflame_core::menger::local_connectivity;
use vflame_core::oracle::{self, OracleLimits};

#[test]
fn construct_on_small_random_corpus_with_oracle() {
    let lim = OracleLimits::default();
    for seed in 0..40u64 {
        let n = 3 + (seed % 5) as usize; // 3..=7 vertices
        let density = 0.15 + 0.1 * ((seed % 7) as f64);
        let d = random_digraph_density(n, density, 0xbeef ^ seed).unwrap();
        let out = construct_large_flame(&d, None)
            .unwrap_or_else(|e| panic!("seed {seed}: {e}"));
        assert!(
            oracle::brute_is_flame(&out.flame, &lim).unwrap(),
            "seed {seed}: output is not a flame by enumeration"
        );
        assert!(
            oracle::brute_largeness(&out.flame, &d, &lim).unwrap(),
            "seed {seed}: output is not large by enumeration"
        );
    }
}

#[test]
fn construct_on_medium_random_instances() {
    for seed in 0..8u64 {
        let n = 10 + 3 * (seed as usize);
        let density = 0.1 + 0.05 * ((seed % 4) as f64);
        let d = random_digraph_density(n, density, 0xc0de ^ seed).unwrap();
        let out = construct_large_flame(&d, None)
            .unwrap_or_else(|e| panic!("seed {seed} (n={n}): {e}"));
        assert!(is_flame(&out.flame).unwrap().is_flame());
        assert!(largeness_check(&out.flame, &d).unwrap().large);
    }
}

#[test]
fn construct_on_figure6_truncations() {
    for k in 1..=2 {
        let d = gen_figure6(k, true).unwrap();
        let out = construct_large_flame(&d, None).unwrap();
        assert!(is_flame(&out.flame).unwrap().is_flame());
        assert!(largeness_check(&out.flame, &d).unwrap().large);
    }
}

#[test]
fn trim_meets_the_lower_bound_on_random_instances() {
    for seed in 0..20u64 {
        let n = 6 + (seed % 10) as usize;
        let d = random_digraph_density(n, 0.25, 0xfeed ^ seed).unwrap();
        let e = lovasz_trim(&d, None).unwrap();
        let mut kappa_sum = 0;
        for v in d.non_root_vertices() {
            let kd = local_connectivity(&d, v).unwrap();
            assert_eq!(local_connectivity(&e, v).unwrap(), kd, "seed {seed}");
            assert_eq!(e.in_degree(v), kd, "seed {seed}");
            kappa_sum += kd;
        }
        assert_eq!(e.edge_count(), kappa_sum, "seed {seed}");
    }
}
