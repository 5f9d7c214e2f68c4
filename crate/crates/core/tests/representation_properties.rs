use distlat::intervals::{close_family, construct_a, construct_d, remove, rival_extract};
use distlat::oracle::{
    brute_independent_sets, brute_terminal_sets, enumerate_sublattices, random_digraph,
    random_pointed_preorder, rng,
};
use distlat::representations::{
    condensation_map, duality_map, independent_quotient_map, independent_sets_d, map_t,
    map_t_inverse, max_independent_lattice, terminal_lattice,
};
use distlat::{ChainProduct, IntervalFamily, Sublattice};

fn product(sizes: &[usize]) -> ChainProduct {
    ChainProduct::new(sizes.to_vec()).unwrap()
}

fn sublattices() -> Vec<Sublattice> {
    [&[2, 2][..], &[2, 3], &[1, 1, 1]]
        .iter()
        .flat_map(|s| enumerate_sublattices(&product(s)).unwrap())
        .collect()
}

#[test]
fn map_t_round_trips_every_point() {
    let p = product(&[2, 3, 1]);
    for x in p.points() {
        let t = map_t(&p, &x).unwrap();
        assert_eq!(map_t_inverse(&p, t).unwrap(), x);
        // T_x holds 0 plus the levels at or below x on each chain
        assert_eq!(t.len(), 1 + x.iter().sum::<usize>());
    }
}

#[test]
fn terminal_and_independent_counts_equal_sublattice_size() {
    for l in sublattices() {
        let fam = rival_extract(&l);
        let d = construct_d(&fam);
        let proper = brute_terminal_sets(&d)
            .unwrap()
            .into_iter()
            .filter(|t| !t.is_empty() && t.len() < d.vertex_count())
            .count();
        assert_eq!(proper, l.len());
        let a = construct_a(&fam);
        assert_eq!(
            brute_independent_sets(&a, fam.product().dim())
                .unwrap()
                .len(),
            l.len()
        );
        let dual = duality_map(&fam).unwrap();
        assert!(dual
            .independent
            .lattice()
            .unwrap()
            .isomorphism(&l.lattice().lattice)
            .is_some());
    }
}

#[test]
fn duality_holds_for_unclosed_families() {
    let p = product(&[1, 1, 1]);
    let opt: Vec<_> = p
        .all_intervals()
        .filter(|iv| !iv.is_mandatory_empty())
        .collect();
    let mut r = rng(5);
    for _ in 0..300 {
        let chosen = opt
            .iter()
            .copied()
            .filter(|_| rand::Rng::random_bool(&mut r, 0.15));
        let fam = IntervalFamily::from_intervals(p.clone(), chosen).unwrap();
        if let Ok(l) = remove(&fam) {
            let dual = duality_map(&fam).unwrap();
            assert_eq!(dual.independent.len(), l.len());
            assert_eq!(
                duality_map(&close_family(&fam)).unwrap().independent.len(),
                l.len()
            );
        }
    }
}

#[test]
fn closing_a_keeps_its_independent_lattice() {
    for l in sublattices() {
        let a = construct_a(&rival_extract(&l));
        let d = l.product().dim();
        let plain = independent_sets_d(&a, d).unwrap();
        let closed = independent_sets_d(&a.transitive_closure(), d).unwrap();
        let mut p = plain.sets.clone();
        let mut c = closed.sets.clone();
        p.sort();
        c.sort();
        assert_eq!(p, c);
        assert!(plain.order.isomorphism(&closed.order).is_some());
    }
}

#[test]
fn maximum_independent_sets_form_a_distributive_lattice() {
    let mut r = rng(17);
    for n in 1..=8 {
        for _ in 0..40 {
            let a = random_digraph(n, 0.3, &mut r);
            let Ok(m) = max_independent_lattice(&a) else {
                assert_eq!(a.width(), 0);
                continue;
            };
            assert!(m.lattice.is_distributive());
            let w = a.width();
            let mut brute = brute_independent_sets(&a, w).unwrap();
            let mut sets = m.sets.clone();
            brute.sort();
            sets.sort();
            assert_eq!(sets, brute);
        }
    }
}

#[test]
fn condensation_preserves_terminal_lattices() {
    let mut r = rng(23);
    for _ in 0..200 {
        let d = random_pointed_preorder(&mut r);
        let c = condensation_map(&d).unwrap();
        let brute = brute_terminal_sets(&d).unwrap();
        assert_eq!(c.source.len() + 2, brute.len());
        assert_eq!(
            terminal_lattice(c.poset.graph()).unwrap().len(),
            c.target.len()
        );
        assert!(c.source.lattice.isomorphism(&c.target.lattice).is_some());
    }
}

#[test]
fn independent_sets_survive_condensation() {
    for l in sublattices() {
        let a = construct_a(&rival_extract(&l));
        let (source, target, forward) = independent_quotient_map(&a, l.product().dim()).unwrap();
        assert_eq!(source.len(), l.len());
        assert_eq!(target.len(), l.len());
        assert_eq!(forward.len(), l.len());
    }
}

#[test]
fn quotient_keeps_cycles_dependent() {
    let mut r = rng(29);
    for n in 1..=7 {
        for _ in 0..30 {
            let a = random_digraph(n, 0.3, &mut r);
            let w = a.width();
            if w == 0 {
                continue;
            }
            let (source, target, _) = independent_quotient_map(&a, w).unwrap();
            assert_eq!(source.len(), brute_independent_sets(&a, w).unwrap().len());
            assert_eq!(target.len(), source.len());
        }
    }
}
