use distlat::lattice::{are_isomorphic, birkhoff_map, downset_lattice};
use distlat::oracle::{enumerate_labeled_posets, enumerate_sublattices, random_sublattice, rng};
use distlat::text::{parse_lattice, write_lattice};
use distlat::{ChainProduct, LabeledLattice, Lattice, Poset, VertexSet};

fn all_posets(max: usize) -> Vec<Poset> {
    (0..=max)
        .flat_map(|n| enumerate_labeled_posets(n).unwrap())
        .collect()
}

/// Lattice isomorphism by trying every permutation.
fn brute_isomorphic(a: &Lattice, b: &Lattice) -> bool {
    fn go(a: &Lattice, b: &Lattice, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == a.len() {
            return (0..k).all(|x| {
                (0..k).all(|y| {
                    b.join(map[x], map[y]) == map[a.join(x, y)]
                        && b.meet(map[x], map[y]) == map[a.meet(x, y)]
                })
            });
        }
        for w in 0..b.len() {
            if !used[w] {
                used[w] = true;
                map.push(w);
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[w] = false;
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

#[test]
fn downset_lattices_are_distributive_with_original_irreducibles() {
    for p in all_posets(5) {
        let d = downset_lattice(&p).unwrap();
        assert!(d.lattice.is_distributive());
        let j = d.lattice.join_irreducibles();
        assert!(j.carrier.isomorphism(&p).is_some(), "{p:?}");
    }
}

#[test]
fn irreducible_downsets_have_one_maximal_element() {
    for p in all_posets(5) {
        let d = downset_lattice(&p).unwrap();
        let j = d.lattice.join_irreducibles();
        for (k, s) in d.labels.iter().enumerate() {
            let maximal = s
                .iter()
                .filter(|&x| s.iter().all(|y| y == x || !p.le(x, y)))
                .count();
            assert_eq!(j.label.contains(&k), maximal == 1, "{p:?} {s:?}");
        }
    }
}

#[test]
fn birkhoff_map_round_trips() {
    for p in all_posets(4) {
        let l = downset_lattice(&p).unwrap().lattice;
        let map = birkhoff_map(&l).unwrap();
        for x in 0..l.len() {
            assert_eq!(map.element_of(&l, map.set_of(x)), x);
            for y in 0..l.len() {
                assert_eq!(
                    map.set_of(l.meet(x, y)),
                    map.set_of(x).intersection(map.set_of(y))
                );
                assert_eq!(map.set_of(l.join(x, y)), map.set_of(x).union(map.set_of(y)));
            }
        }
    }
}

#[test]
fn isomorphism_agrees_with_permutation_search() {
    let mut lattices: Vec<Lattice> = Vec::new();
    for p in all_posets(3) {
        let l = downset_lattice(&p).unwrap().lattice;
        if l.len() <= 8 {
            lattices.push(l);
        }
    }
    let b2 = ChainProduct::new(vec![1, 1]).unwrap();
    for s in enumerate_sublattices(&b2).unwrap() {
        lattices.push(s.lattice().lattice);
    }
    for a in &lattices {
        assert_eq!(
            are_isomorphic(a, a).unwrap(),
            (0..a.len()).collect::<Vec<_>>()
        );
        for b in &lattices {
            let fast = are_isomorphic(a, b);
            assert_eq!(fast.is_some(), brute_isomorphic(a, b));
            if let Some(m) = fast {
                assert!(a.is_homomorphism(b, &m));
            }
        }
    }
}

#[test]
fn antichain_downsets_match_cube() {
    let d = downset_lattice(&Poset::antichain(3)).unwrap();
    let cube = ChainProduct::new(vec![1, 1, 1]).unwrap().lattice();
    assert!(are_isomorphic(&d.lattice, &cube.lattice).is_some());
    let j = d.lattice.join_irreducibles();
    assert_eq!(j.len(), 3);
    assert_eq!(j.carrier.width(), 3);
}

#[test]
fn join_irreducibles_of_square_are_axis_points() {
    let grid = ChainProduct::new(vec![2, 2]).unwrap().lattice();
    let mut j: Vec<Vec<usize>> = grid
        .lattice
        .join_irreducibles()
        .label
        .iter()
        .map(|&e| grid.label(e).clone())
        .collect();
    j.sort();
    assert_eq!(j, vec![vec![0, 1], vec![0, 2], vec![1, 0], vec![2, 0]]);
    let m = grid.lattice.meet_irreducibles();
    assert_eq!(m.len(), 4);
    let map = birkhoff_map(&grid.lattice).unwrap();
    let one_one = grid.position(&vec![1, 1]).unwrap();
    let set: Vec<Vec<usize>> = map
        .set_of(one_one)
        .iter()
        .map(|k| grid.label(map.irreducibles.label[k]).clone())
        .collect();
    assert_eq!(set, vec![vec![0, 1], vec![1, 0]]);
}

#[test]
fn heights_of_products_and_five_element_lattice() {
    let p45 = ChainProduct::new(vec![4, 5]).unwrap();
    assert_eq!(p45.lattice().lattice.height(), 9);
    let five_element = LabeledLattice::from_points(vec![
        vec![0, 0],
        vec![0, 1],
        vec![1, 0],
        vec![1, 1],
        vec![2, 2],
    ])
    .unwrap();
    assert_eq!(five_element.lattice.height(), 3);
}

#[test]
fn sublattices_are_distributive_and_text_round_trips() {
    let p = ChainProduct::new(vec![3, 3]).unwrap();
    let mut r = rng(11);
    for _ in 0..50 {
        let l = random_sublattice(&p, &mut r).lattice().lattice;
        assert!(l.is_distributive());
        assert_eq!(parse_lattice(&write_lattice(&l)).unwrap(), l);
    }
}

#[test]
fn set_family_lattice_falls_back_to_order_search() {
    // {a}, {b}, {a,b,c}: the union of {a} and {b} is missing but a lub exists
    let sets = vec![
        VertexSet::empty(),
        VertexSet::from_iter([0]),
        VertexSet::from_iter([1]),
        VertexSet::from_iter([0, 1, 2]),
    ];
    let l = LabeledLattice::from_sets(sets).unwrap();
    assert_eq!(l.lattice.join(1, 2), 3);
    assert!(l.lattice.is_distributive());
}
