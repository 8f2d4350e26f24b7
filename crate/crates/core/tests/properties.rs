use std::sync::OnceLock;

use engel_core::automorphism::enumerate_automorphisms;
use engel_core::catalog;
use engel_core::engel::{self, Scope, Side};
use engel_core::{FiniteGroup, Group, Perm};
use proptest::prelude::*;

// Catalog groups of order at most 60.
fn groups() -> &'static [FiniteGroup] {
    static GROUPS: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        catalog::tier(Some(1))
            .map(|e| e.build().unwrap())
            .filter(|g| g.order() <= 60)
            .collect()
    })
}

fn pick() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    (0..groups().len(), any::<usize>(), any::<usize>(), any::<usize>())
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn group_axioms((k, a, b, c) in pick()) {
        let g = &groups()[k];
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
        prop_assert_eq!(g.mul(a, 0), a);
        prop_assert_eq!(g.mul(0, a), a);
        prop_assert_eq!(g.mul(a, g.inv(a)), 0);
    }

    #[test]
    fn commutator_identities((k, a, b, c) in pick()) {
        let g = &groups()[k];
        let n = g.order();
        let (a, b, c) = (a % n, b % n, c % n);
        prop_assert_eq!(g.inv(g.commutator(a, b)), g.commutator(b, a));
        // Conjugation is an automorphism.
        prop_assert_eq!(g.conjugate(g.mul(a, b), c), g.mul(g.conjugate(a, c), g.conjugate(b, c)));
        // [ab, c] = [a, c]^b [b, c].
        prop_assert_eq!(
            g.commutator(g.mul(a, b), c),
            g.mul(g.conjugate(g.commutator(a, c), b), g.commutator(b, c))
        );
    }

    #[test]
    fn lagrange((k, a, b, _) in pick()) {
        let g = &groups()[k];
        let n = g.order();
        let (a, b) = (a % n, b % n);
        let h = g.subgroup_generated(&[a, b]);
        prop_assert_eq!(n % h.order(), 0);
        prop_assert_eq!(n % g.element_order(a), 0);
        prop_assert_eq!(g.pow(a, g.element_order(a)), 0);
        prop_assert_eq!(n % g.normal_closure(&[a]).order(), 0);
    }

    #[test]
    fn perm_inverse_and_composition(p in perm_strategy(7), q in perm_strategy(7)) {
        let pq = p.multiply(&q).unwrap();
        for i in 0..7 {
            prop_assert_eq!(pq.apply(i), q.apply(p.apply(i)));
        }
        prop_assert!(p.multiply(&p.inverse()).unwrap().is_identity());
        let c = p.commutator(&q).unwrap();
        prop_assert!(c.inverse() == q.commutator(&p).unwrap());
        let back = Perm::parse_cycles(&p.to_string(), 7).unwrap();
        prop_assert!(back == p);
    }

    #[test]
    fn sink_structure((k, h, y, _) in pick()) {
        let g = &groups()[k];
        let n = g.order();
        let (h, y) = (h % n, y % n);
        let whole = g.whole();
        let k_sub = g.normal_closure(&[y]);
        for side in [Side::Left, Side::Right] {
            let big = engel::sink(g, h, &whole, side).unwrap();
            // Members are exactly the identity and the limit cycles.
            let mut from_cycles: Vec<usize> = big.cycles.iter().flat_map(|c| c.elements.clone()).collect();
            from_cycles.push(0);
            from_cycles.sort_unstable();
            from_cycles.dedup();
            prop_assert_eq!(&from_cycles, &big.members);
            // Monotone in the scope.
            let small = engel::sink(g, h, &k_sub, side).unwrap();
            prop_assert!(small.is_subset_of(&big));
            // Stable under conjugation by h.
            for &x in &big.members {
                prop_assert!(big.contains(g.conjugate(x, h)));
            }
            // Each cycle lies inside or outside each normal subgroup.
            for c in &big.cycles {
                let inside = c.elements.iter().filter(|&&x| k_sub.contains(x)).count();
                prop_assert!(inside == 0 || inside == c.elements.len());
            }
        }
    }
}

// Every automorphism of every catalog group of order at most 60.
#[test]
fn automorphism_sink_invariants() {
    for g in groups() {
        for aut in enumerate_automorphisms(g).unwrap() {
            let lb = engel::aut_left_sink(&aut, Scope::Base).unwrap();
            let le = engel::aut_left_sink(&aut, Scope::Extension).unwrap();
            assert_eq!(lb.members, le.members, "{} {}", g.name(), aut.describe());
            for sink in [
                lb,
                engel::aut_right_sink(&aut, Scope::Base).unwrap(),
                engel::aut_right_sink(&aut, Scope::Extension).unwrap(),
            ] {
                // Conjugation by the embedded φ acts on G as φ itself.
                for &x in &sink.members {
                    assert!(sink.contains(aut.apply(x)), "{} {} {:?}", g.name(), aut.describe(), sink.side);
                }
            }
        }
    }
}

#[test]
fn inner_automorphisms_match_element_sinks() {
    for g in groups() {
        let whole = g.whole();
        for h in 0..g.order() {
            let aut = engel_core::Automorphism::inner_by_index(g, h);
            for side in [Side::Left, Side::Right] {
                let elem = engel::sink(g, h, &whole, side).unwrap();
                for scope in [Scope::Base, Scope::Extension] {
                    let a = engel::aut_sink_in(&aut, scope, side).unwrap();
                    assert_eq!(a.members, elem.members, "{} {}", g.name(), g.label(h));
                }
            }
        }
    }
}

#[test]
fn catalog_audit() {
    for e in catalog::entries() {
        let g = e.build().unwrap();
        // Closure: products of generators stay inside the element list.
        for &s in g.generators() {
            for x in 0..g.order() {
                assert!(g.mul(x, s) < g.order());
            }
        }
        for c in g.conjugacy_classes() {
            assert_eq!(g.order() % c.len(), 0, "{}", g.name());
        }
        let r = catalog::describe(&g, e.tier);
        assert!(!r.abelian || r.nilpotent);
        if e.tier == 1 {
            assert!(g.order() <= 200, "{}", g.name());
        } else {
            assert!(g.order() <= 2520, "{}", g.name());
        }
    }
}
