use distlat::intervals::{
    close_family, construct_a, construct_d, interval_members, intervals_from_a, koh_k,
    koh_k_inverse, path_covered, remove, rival_extract,
};
use distlat::oracle::enumerate_sublattices;
use distlat::representations::terminal_lattice;
use distlat::{ChainProduct, Error, Interval, IntervalFamily, Sublattice};
use proptest::prelude::*;

fn product(sizes: &[usize]) -> ChainProduct {
    ChainProduct::new(sizes.to_vec()).unwrap()
}

fn optional_intervals(p: &ChainProduct) -> Vec<Interval> {
    p.all_intervals()
        .filter(|iv| !iv.is_mandatory_empty())
        .collect()
}

/// Every family over (1,1): 14 optional intervals, 16384 families.
fn families_b2() -> Vec<IntervalFamily> {
    let p = product(&[1, 1]);
    let opt = optional_intervals(&p);
    (0u32..1 << opt.len())
        .map(|mask| {
            let chosen = (0..opt.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| opt[k]);
            IntervalFamily::from_intervals(p.clone(), chosen).unwrap()
        })
        .collect()
}

fn family(sizes: &'static [usize], max: usize) -> impl Strategy<Value = IntervalFamily> {
    let p = product(sizes);
    let opt = optional_intervals(&p);
    proptest::sample::subsequence(opt.clone(), 0..=max.min(opt.len()))
        .prop_map(move |ivs| IntervalFamily::from_intervals(p.clone(), ivs).unwrap())
}

fn union_covers(fam: &IntervalFamily, iv: &Interval) -> bool {
    interval_members(fam.product(), iv)
        .unwrap()
        .iter()
        .all(|x| fam.covers_point(x))
}

fn check_family(fam: &IntervalFamily) {
    let closed = close_family(fam);
    let d = construct_d(fam);
    // intervals that reach 0 or inf can share an arc, so D only sees the closure up to that
    assert_eq!(d == construct_d(&closed), d.is_transitive(), "{fam:?}");
    if fam.is_closed() {
        assert!(d.is_transitive());
    }
    assert_eq!(close_family(&closed), closed);
    let Ok(l) = remove(fam) else { return };
    assert_eq!(remove(&closed).unwrap(), l);
    assert_eq!(rival_extract(&l), closed);
    let dl = terminal_lattice(&d).unwrap();
    let dc = terminal_lattice(&construct_d(&closed)).unwrap();
    assert!(dl.lattice.isomorphism(&dc.lattice).is_some());
    assert_eq!(dl.len(), l.len());

    let p = fam.product();
    let a = construct_a(fam);
    assert_eq!(koh_k(p, &a).unwrap(), d);
    assert_eq!(intervals_from_a(p, &a).unwrap(), *fam);
    if fam.is_closed() {
        let ac = construct_a(&closed);
        assert!(ac.is_transitive());
        assert_eq!(koh_k_inverse(p, &construct_d(&closed)).unwrap(), ac);
    }

    for q in p.all_intervals() {
        let result = path_covered(fam, q).unwrap();
        let covered = union_covers(fam, &q);
        let implication = l
            .elements()
            .all(|x| x[q.i - 1] < q.alpha || x[q.j - 1] > q.beta);
        assert_eq!(result.covered, covered, "{q} in {fam:?}");
        assert_eq!(covered, implication);
        if let Some(w) = result.witness {
            assert!(l.contains(&w) && q.contains(&w));
        }
    }
}

#[test]
fn every_family_over_b2() {
    for fam in families_b2() {
        check_family(&fam);
    }
}

#[test]
fn extracted_families_over_small_products() {
    for sizes in [&[2, 2][..], &[1, 1, 1], &[2, 3]] {
        let p = product(sizes);
        for l in enumerate_sublattices(&p).unwrap() {
            let fam = rival_extract(&l);
            assert!(fam.is_closed());
            assert_eq!(remove(&fam).unwrap(), l);
            check_family(&fam);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn random_families_over_square(fam in family(&[2, 2], 6)) {
        check_family(&fam);
    }

    #[test]
    fn random_families_over_1_1_1(fam in family(&[1, 1, 1], 6)) {
        check_family(&fam);
    }

    #[test]
    fn random_families_over_4_5(fam in family(&[4, 5], 3)) {
        let closed = close_family(&fam);
        match remove(&fam) {
            Ok(l) => {
                prop_assert_eq!(remove(&closed).unwrap(), l.clone());
                let a = terminal_lattice(&construct_d(&fam)).unwrap();
                let b = terminal_lattice(&construct_d(&closed)).unwrap();
                prop_assert!(a.lattice.isomorphism(&b.lattice).is_some());
            }
            Err(e) => prop_assert_eq!(e, Error::EmptySublattice),
        }
        let d = construct_d(&fam);
        prop_assert_eq!(d == construct_d(&closed), d.is_transitive());
    }

    #[test]
    fn path_lemma_on_2_3(fam in family(&[2, 3], 5)) {
        if let Ok(l) = remove(&fam) {
            for q in fam.product().all_intervals() {
                let covered = union_covers(&fam, &q);
                prop_assert_eq!(path_covered(&fam, q).unwrap().covered, covered);
                prop_assert_eq!(covered, l.elements().all(|x| x[q.i - 1] < q.alpha || x[q.j - 1] > q.beta));
            }
        }
    }
}

#[test]
fn closure_adds_siblings_of_zero_intervals() {
    let p = product(&[2, 2]);
    let fam = IntervalFamily::from_intervals(p, [Interval::new(1, 2, 0, 1)]).unwrap();
    let closed = close_family(&fam);
    assert!(closed.contains(&Interval::new(2, 2, 0, 1)));
    assert!(closed.contains(&Interval::new(1, 2, 0, 1)));
}

#[test]
fn rival_identities_over_square() {
    let p = product(&[2, 2]);
    for l in enumerate_sublattices(&p).unwrap() {
        assert_eq!(remove(&rival_extract(&l)).unwrap(), l);
    }
    assert_eq!(
        rival_extract(&Sublattice::full(p.clone())),
        IntervalFamily::new(p)
    );
}

#[test]
fn grid_cut_koh_round_trip() {
    let p = product(&[4, 5]);
    let fam = IntervalFamily::from_intervals(p.clone(), [Interval::new(2, 1, 3, 2)]).unwrap();
    let a = construct_a(&fam);
    let k = koh_k(&p, &a).unwrap();
    assert!(k.has_arc(p.inf_vertex(2, 3), p.inf_vertex(1, 3)));
    assert_eq!(koh_k_inverse(&p, &k).unwrap(), a);
    let closed = close_family(&fam);
    assert_eq!(
        closed.non_mandatory().count(),
        9,
        "the removed block holds nine intervals"
    );
}
