use distlat::oracle::{brute_independent_sets, brute_terminal_sets};
use distlat::text::{parse_digraph, write_digraph};
use distlat::{Digraph, Poset, VertexSet};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.25), n * n).prop_map(move |bits| {
            let arcs = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
            Digraph::from_arcs(n, arcs).unwrap()
        })
    })
}

/// Path existence by explicit walks of bounded length.
fn walk_reach(d: &Digraph, u: usize, v: usize) -> bool {
    let n = d.vertex_count();
    let mut frontier = vec![u];
    for _ in 0..n {
        let next: Vec<usize> = frontier
            .iter()
            .flat_map(|&x| (0..n).filter(move |&y| d.has_arc(x, y)))
            .collect();
        if next.contains(&v) {
            return true;
        }
        frontier = next;
        frontier.sort_unstable();
        frontier.dedup();
    }
    false
}

proptest! {
    #[test]
    fn closure_is_idempotent_and_monotone(d in digraph(8), extra in digraph(8)) {
        let c = d.transitive_closure();
        prop_assert!(c.is_transitive());
        prop_assert!(d.is_spanning_subgraph_of(&c));
        prop_assert_eq!(c.transitive_closure(), c.clone());
        if extra.vertex_count() == d.vertex_count() {
            let bigger = d.union(&extra);
            prop_assert!(c.is_spanning_subgraph_of(&bigger.transitive_closure()));
        }
    }

    #[test]
    fn reachability_matches_closure(d in digraph(7)) {
        let c = d.transitive_closure();
        for u in 0..d.vertex_count() {
            for v in 0..d.vertex_count() {
                prop_assert_eq!(d.reachable(u, v, false).unwrap(), u == v || c.has_arc(u, v));
                prop_assert_eq!(d.reachable(u, v, true).unwrap(), c.has_arc(u, v));
                prop_assert_eq!(c.has_arc(u, v), walk_reach(&d, u, v));
            }
        }
    }

    #[test]
    fn condensation_is_a_poset_quotient(d in digraph(7)) {
        let pre = d.transitive_closure().reflexive_closure();
        let (p, q) = pre.condensation().unwrap();
        prop_assert!(p.graph().is_preorder());
        for u in 0..pre.vertex_count() {
            for v in 0..pre.vertex_count() {
                prop_assert_eq!(pre.has_arc(u, v), p.le(q.class_of(v), q.class_of(u)));
            }
        }
        let classes: Vec<usize> = (0..pre.vertex_count()).map(|v| q.class_of(v)).collect();
        prop_assert!((0..q.class_count()).all(|c| classes.contains(&c)));
    }

    #[test]
    fn acyclicity_predicates_agree_with_walks(d in digraph(6)) {
        let n = d.vertex_count();
        let two_cycle = (0..n).any(|u| (0..n).any(|v| u != v && walk_reach(&d, u, v) && walk_reach(&d, v, u)));
        let any_cycle = (0..n).any(|u| walk_reach(&d, u, u));
        prop_assert_eq!(d.is_acyclic(), !two_cycle);
        prop_assert_eq!(d.is_strongly_acyclic(), !any_cycle);
    }

    #[test]
    fn width_is_the_largest_independent_set(d in digraph(7)) {
        let w = d.width();
        let sets = brute_independent_sets(&d, w).unwrap();
        prop_assert!(!sets.is_empty() || w == 0);
        prop_assert!(brute_independent_sets(&d, w + 1).unwrap().is_empty());
        prop_assert_eq!(d.transitive_closure().width(), w);
        let mut fast = d.independent_sets_of_size(w).unwrap();
        let mut slow = sets;
        fast.sort();
        slow.sort();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn terminal_sets_match_powerset_filter(d in digraph(9)) {
        prop_assert_eq!(d.terminal_sets().unwrap(), brute_terminal_sets(&d).unwrap());
    }

    #[test]
    fn text_round_trip(d in digraph(9)) {
        prop_assert_eq!(parse_digraph(&write_digraph(&d)).unwrap(), d);
    }

    #[test]
    fn isomorphism_survives_relabelling(d in digraph(6), seed in any::<u64>()) {
        let n = d.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for k in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (s >> 33) as usize % (k + 1));
        }
        let relabelled = Digraph::from_arcs(n, d.arcs().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        let iso = d.isomorphism(&relabelled).unwrap();
        for (u, v) in d.arcs() {
            prop_assert!(relabelled.has_arc(iso[u], iso[v]));
        }
    }
}

#[test]
fn two_cycle_closure_adds_loops() {
    let d = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
    let c = d.transitive_closure();
    for u in 0..2 {
        for v in 0..2 {
            assert_eq!(c.has_arc(u, v), walk_reach(&d, u, v));
        }
    }
    assert!(c.has_loop(0) && c.has_loop(1));
}

#[test]
fn five_element_condensation() {
    // 0, 1e1, 2e1, 1e2, 2e2, inf with 2e1 <-> 2e2
    let mut d = Digraph::new(6);
    for v in 0..6 {
        d.add_arc(v, 0);
        d.add_arc(5, v);
    }
    for (u, v) in [(2, 1), (4, 3), (2, 4), (4, 2)] {
        d.add_arc(u, v);
    }
    let pre = d.reflexive_closure().transitive_closure();
    let (p, q) = pre.condensation().unwrap();
    assert_eq!(q.class_count(), 5);
    assert_eq!(q.members(q.class_of(2)), VertexSet::from_iter([2, 4]));
    assert!(!p.comparable(q.class_of(1), q.class_of(3)));
}

#[test]
fn width_of_two_tournaments() {
    let p = distlat::ChainProduct::new(vec![4, 5]).unwrap();
    let t = p.tournaments();
    assert_eq!(t.width(), 2);
    assert_eq!(brute_independent_sets(&t, 3).unwrap().len(), 0);
    assert_eq!(brute_independent_sets(&t, 2).unwrap().len(), 30);
}

#[test]
fn poset_width_ignores_loops() {
    assert_eq!(Poset::antichain(4).width(), 4);
    assert_eq!(Poset::chain(4).width(), 1);
}
