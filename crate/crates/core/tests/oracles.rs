mod common;

use num_integer::Integer;
use proptest::prelude::*;
use solidtori::classify::{count_classes, enumerate_classes, is_universally_tight, Sign, SolidTorusSpec};
use solidtori::farey::{cf_blocks, minimal_cw_path, FareyPath};
use solidtori::splitting::{exceptional_slopes, MixedTorusSpec};
use solidtori::{Slope, Unimodular};

use common::*;

fn neg_slopes(max: i64) -> Vec<Slope> {
    let mut v = Vec::new();
    for p in 2..=max {
        for q in 1..p {
            if p.gcd(&q) == 1 {
                v.push(Slope::new(-p, q).unwrap());
            }
        }
    }
    v
}

fn path_fracs(path: &FareyPath) -> Vec<Frac> {
    path.vertices().iter().map(|&v| frac(v)).collect()
}

#[test]
fn blocks_match_unimodular_search() {
    let search = UnimodularSearch::new(10);
    for s in neg_slopes(12) {
        let path = minimal_cw_path(Slope::INFINITY, s).unwrap();
        assert_eq!(cf_blocks(&path), search.blocks(&path_fracs(&path)), "{s}");
        assert_eq!(path.block_lists(), cf_blocks(&path));
    }
}

#[test]
fn blocks_match_search_between_arbitrary_endpoints() {
    let search = UnimodularSearch::new(10);
    let ends: Vec<Slope> = slopes_up_to(5).into_iter().map(slope).collect();
    for &a in &ends {
        for &b in &ends {
            if a != b {
                let path = minimal_cw_path(a, b).unwrap();
                assert_eq!(path.block_lists(), search.blocks(&path_fracs(&path)), "{a} -> {b}");
            }
        }
    }
}

#[test]
fn path_is_truncations_of_negative_cf() {
    for s in neg_slopes(40).into_iter().filter(|s| *s < Slope::integer(-1)) {
        let cf = negative_cf(Q::new(s.numerator(), s.denominator()));
        let mut expect = vec![Slope::INFINITY];
        for k in 1..=cf.len() {
            let mut x = Q::from_integer(cf[k - 1]);
            for &a in cf[..k - 1].iter().rev() {
                x = Q::from_integer(a) - x.recip();
            }
            expect.push(Slope::new(*x.numer(), *x.denom()).unwrap());
        }
        assert_eq!(
            minimal_cw_path(Slope::INFINITY, s).unwrap().vertices(),
            &expect[..],
            "{s}"
        );
    }
}

#[test]
fn blocks_follow_runs_of_minus_two() {
    for s in neg_slopes(40).into_iter().filter(|s| *s < Slope::integer(-1)) {
        let cf = negative_cf(Q::new(s.numerator(), s.denominator()));
        // Edges i−1 and i share a block exactly when a_i = −2.
        let mut blocks = vec![vec![0]];
        for (i, &a) in cf.iter().enumerate().skip(1) {
            if a == -2 {
                blocks.last_mut().unwrap().push(i);
            } else {
                blocks.push(vec![i]);
            }
        }
        let path = minimal_cw_path(Slope::INFINITY, s).unwrap();
        assert_eq!(path.block_lists(), blocks, "{s} = {cf:?}");
    }
}

#[test]
fn exceptional_slopes_stable_in_block_interiors() {
    let ends: Vec<Slope> = slopes_up_to(10).into_iter().map(slope).collect();
    let mut tested = 0;
    for &s0 in &ends {
        for &back in &ends {
            if back == s0 || !adjacent(frac(back), frac(s0)) {
                continue;
            }
            // Continue the fan around a common neighbour: back, s0, 2·s0 − back.
            let (v, u) = (s0.vector(), back.vector());
            let front = Slope::from_vector([2 * v[0] - u[0], 2 * v[1] - u[1]]).unwrap();
            let Ok(t) = MixedTorusSpec::new(back, s0, front, Sign::Plus) else {
                continue;
            };
            let small = exceptional_slopes(&t, 50).unwrap();
            let large = exceptional_slopes(&t, 5000).unwrap();
            assert!(!small.truncated, "{back} {s0} {front}");
            assert_eq!(small, large);
            assert!(small.slopes.iter().all(|&e| adjacent(frac(e), frac(s0))));
            tested += 1;
        }
    }
    assert!(tested > 100);
}

#[test]
fn universally_tight_iff_blocks_are_monochrome() {
    for s in neg_slopes(12) {
        let spec = SolidTorusSpec::lower(Slope::INFINITY, s).unwrap();
        for c in enumerate_classes(&spec).unwrap() {
            let path = c.path();
            let signed = c.signed_counts();
            let plus = c.canonical_form();
            let all_plus = plus.iter().zip(signed).all(|(p, n)| p == n);
            let all_minus = plus.iter().all(|&p| p == 0);
            assert_eq!(
                is_universally_tight(&c),
                all_plus || all_minus,
                "{s} {:?}",
                path.vertices()
            );
        }
    }
}

fn arb_negative_slope() -> impl Strategy<Value = Slope> {
    (2i64..400, 1i64..400)
        .prop_filter("coprime, below -1", |(p, q)| q < p && p.gcd(q) == 1)
        .prop_map(|(p, q)| Slope::new(-p, q).unwrap())
}

proptest! {
    #[test]
    fn count_matches_classical(s in arb_negative_slope()) {
        let spec = SolidTorusSpec::lower(Slope::INFINITY, s).unwrap();
        prop_assert_eq!(count_classes(&spec).unwrap(), classical_count(Q::new(s.numerator(), s.denominator())));
    }

    #[test]
    fn count_is_invariant_under_change_of_coordinates(s in arb_negative_slope(), a in -6i64..6, b in -6i64..6) {
        let m = Unimodular::translation(a) * Unimodular::new(1, b, 0, 1).unwrap();
        let spec = SolidTorusSpec::lower(Slope::INFINITY, s).unwrap();
        let moved = SolidTorusSpec::lower(m.apply(Slope::INFINITY), m.apply(s)).unwrap();
        prop_assert_eq!(count_classes(&spec).unwrap(), count_classes(&moved).unwrap());
    }

    #[test]
    fn small_paths_brute_force(s in arb_negative_slope()) {
        let path = minimal_cw_path(Slope::INFINITY, s).unwrap();
        prop_assume!(path.edge_count() <= 14);
        let spec = SolidTorusSpec::lower(Slope::INFINITY, s).unwrap();
        let brute = brute_force_classes(&path.block_lists(), Some(0)) as u64;
        prop_assert_eq!(count_classes(&spec).unwrap(), brute);
    }
}
