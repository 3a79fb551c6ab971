use num_bigint::BigInt;
use num_traits::One;

use crate::error::Error;
use crate::poly::IntPoly;

use super::*;

fn rank_profile(lat: &FlatLattice) -> Vec<usize> {
    let mut counts = vec![0; lat.rank() + 1];
    for f in lat.flats() {
        counts[lat.rank_of(&f).unwrap()] += 1;
    }
    counts
}

/// The Fano plane: all seven nonzero vectors of GF(2)^3 as columns.
fn fano() -> MatroidSpec {
    MatroidSpec::Matrix {
        p: 2,
        rows: 3,
        cols: 7,
        entries: vec![
            0, 0, 0, 1, 1, 1, 1, //
            0, 1, 1, 0, 0, 1, 1, //
            1, 0, 1, 0, 1, 0, 1,
        ],
    }
}

#[test]
fn boolean_lattice_shape() {
    let lat = MatroidSpec::Boolean { n: 2 }.build().unwrap();
    assert_eq!(lat.flat_count(), 4);
    assert_eq!(rank_profile(&lat), vec![1, 2, 1]);
    assert_eq!(lat.rank(), 2);
}

#[test]
fn braid4_lattice_counts_flats_by_block_number() {
    let lat = MatroidSpec::Braid { n: 4 }.build().unwrap();
    assert_eq!(lat.flat_count(), 15); // Bell(4)
    assert_eq!(rank_profile(&lat), vec![1, 6, 7, 1]);
    assert_eq!(lat.ground_size(), 6);
}

#[test]
fn identity_matrix_gives_the_boolean_lattice() {
    let spec = MatroidSpec::Matrix {
        p: 2,
        rows: 3,
        cols: 3,
        entries: vec![1, 0, 0, 0, 1, 0, 0, 0, 1],
    };
    let lat = spec.build().unwrap();
    assert_eq!(lat, MatroidSpec::Boolean { n: 3 }.build().unwrap());
    assert_eq!(lat.flat_count(), 8);
}

#[test]
fn loops_are_rejected() {
    // zero column
    let spec = MatroidSpec::Matrix {
        p: 3,
        rows: 2,
        cols: 2,
        entries: vec![1, 0, 2, 0],
    };
    assert!(matches!(spec.build(), Err(Error::LoopsPresent(1))));
    // self-loop edge
    let spec = MatroidSpec::Graph {
        vertices: 3,
        edges: vec![(0, 1), (2, 2)],
    };
    assert!(matches!(spec.build(), Err(Error::LoopsPresent(1))));
    // rank 0 on a nonempty ground set
    assert!(matches!(
        MatroidSpec::Uniform { m: 2, d: 0 }.build(),
        Err(Error::LoopsPresent(_))
    ));
}

#[test]
fn parallel_elements_merge_into_one_flat() {
    // two parallel columns and one independent one
    let spec = MatroidSpec::Matrix {
        p: 3,
        rows: 2,
        cols: 3,
        entries: vec![1, 2, 0, 0, 0, 1],
    };
    let lat = spec.build().unwrap();
    assert_eq!(rank_profile(&lat), vec![1, 2, 1]);
    assert!(lat.contains_flat(&Flat::from_elems([0, 1])));
}

#[test]
fn flat_cap_is_enforced() {
    assert!(matches!(
        MatroidSpec::Boolean { n: 10 }.build_with_cap(100),
        Err(Error::TooLarge { cap: 100, .. })
    ));
    assert!(matches!(
        MatroidSpec::Braid { n: 14 }.build(),
        Err(Error::TooLarge { .. })
    ));
    // the 128-element bitset limit fires before any enumeration
    assert!(matches!(
        MatroidSpec::Braid { n: 30 }.build(),
        Err(Error::GroundSetTooLarge(435))
    ));
}

#[test]
fn mobius_values() {
    let boolean = MatroidSpec::Boolean { n: 2 }.build().unwrap();
    let top = boolean.top();
    assert_eq!(
        boolean.mobius(&Flat::empty(), &top).unwrap(),
        BigInt::one()
    );
    let u12 = MatroidSpec::Uniform { m: 1, d: 2 }.build().unwrap();
    assert_eq!(
        u12.mobius(&Flat::empty(), &u12.top()).unwrap(),
        BigInt::from(2)
    );
    for f in u12.flats() {
        assert_eq!(u12.mobius(&f, &f).unwrap(), BigInt::one());
    }
    // incomparable pair
    let a = Flat::from_elems([0]);
    let b = Flat::from_elems([1]);
    assert!(matches!(u12.mobius(&a, &b), Err(Error::NotComparable)));
}

#[test]
fn mobius_defining_identity() {
    let lat = MatroidSpec::Braid { n: 4 }.build().unwrap();
    for e in lat.flats() {
        for f in lat.flats() {
            if !lat.leq(&e, &f) || e == f {
                continue;
            }
            let mut sum = BigInt::from(0);
            for g in lat.flats() {
                if lat.leq(&e, &g) && lat.leq(&g, &f) {
                    sum += lat.mobius(&e, &g).unwrap();
                }
            }
            assert_eq!(sum, BigInt::from(0), "interval [{e}, {f}]");
        }
    }
}

#[test]
fn characteristic_polynomials() {
    for n in 0..=5 {
        let lat = MatroidSpec::Boolean { n }.build().unwrap();
        assert_eq!(lat.char_poly(), IntPoly::from(vec![-1, 1]).pow(n));
    }
    let u12 = MatroidSpec::Uniform { m: 1, d: 2 }.build().unwrap();
    assert_eq!(u12.char_poly(), IntPoly::from(vec![2, -3, 1]));
    // chi evaluated at 1 vanishes in positive rank
    let braid5 = MatroidSpec::Braid { n: 5 }.build().unwrap();
    assert_eq!(braid5.char_poly().eval(&BigInt::one()), BigInt::from(0));
}

#[test]
fn braid_localization_at_a_two_two_flat() {
    let lat = MatroidSpec::Braid { n: 4 }.build().unwrap();
    let f = braid_flat_from_blocks(4, &[vec![0, 1], vec![2, 3]]);
    let loc = lat.localization(&f).unwrap();
    // characteristic polynomial (t-1)^2, lattice isomorphic to Boolean(2)
    assert_eq!(loc.char_poly(), IntPoly::from(vec![1, -2, 1]));
    assert_eq!(loc.flat_count(), 4);
    assert_eq!(rank_profile(&loc), vec![1, 2, 1]);
}

#[test]
fn trivial_intervals() {
    let lat = MatroidSpec::Uniform { m: 2, d: 3 }.build().unwrap();
    let bottom_loc = lat.localization(&lat.bottom()).unwrap();
    assert_eq!(bottom_loc.flat_count(), 1);
    assert_eq!(bottom_loc.rank(), 0);
    let top_res = lat.restriction(&lat.top()).unwrap();
    assert_eq!(top_res.flat_count(), 1);
    // localization at the top reproduces the whole lattice
    let top_loc = lat.localization(&lat.top()).unwrap();
    assert_eq!(top_loc, lat);
}

#[test]
fn uniform_restriction_drops_the_rank() {
    let lat = MatroidSpec::Uniform { m: 1, d: 3 }.build().unwrap();
    let res = lat.restriction(&Flat::from_elems([0])).unwrap();
    assert_eq!(res, MatroidSpec::Uniform { m: 1, d: 2 }.build().unwrap());
    assert_eq!(res.family(), Some(Family::Uniform { m: 1, d: 2 }));
}

#[test]
fn braid_restriction_is_a_smaller_braid() {
    let lat = MatroidSpec::Braid { n: 5 }.build().unwrap();
    let f = braid_flat_from_blocks(5, &[vec![0, 1], vec![2], vec![3], vec![4]]);
    let res = lat.restriction(&f).unwrap();
    let braid4 = MatroidSpec::Braid { n: 4 }.build().unwrap();
    assert_eq!(res.family(), Some(Family::Braid { n: 4 }));
    assert_eq!(rank_profile(&res), rank_profile(&braid4));
    assert_eq!(res.char_poly(), braid4.char_poly());
}

#[test]
fn interval_of_incomparable_flats_fails() {
    let lat = MatroidSpec::Boolean { n: 2 }.build().unwrap();
    let a = Flat::from_elems([0]);
    let b = Flat::from_elems([1]);
    assert!(matches!(lat.interval(&a, &b), Err(Error::NotComparable)));
    let outsider = Flat::from_elems([7]);
    assert!(matches!(
        lat.localization(&outsider),
        Err(Error::FlatNotInLattice(_))
    ));
}

#[test]
fn direct_sums() {
    let rank0 = MatroidSpec::Boolean { n: 0 }.build().unwrap();
    let u12 = MatroidSpec::Uniform { m: 1, d: 2 }.build().unwrap();
    assert_eq!(rank0.direct_sum(&u12).unwrap(), u12);

    let b1 = MatroidSpec::Boolean { n: 1 }.build().unwrap();
    let sum = b1.direct_sum(&b1).unwrap();
    assert_eq!(sum, MatroidSpec::Boolean { n: 2 }.build().unwrap());
    assert_eq!(sum.family(), Some(Family::Boolean { n: 2 }));

    let squared = u12.direct_sum(&u12).unwrap();
    assert_eq!(squared.flat_count(), 25);
    assert_eq!(squared.rank(), 4);
    assert_eq!(
        squared.char_poly(),
        &u12.char_poly() * &u12.char_poly()
    );

    let b5 = MatroidSpec::Boolean { n: 5 }.build().unwrap();
    assert!(matches!(
        b5.direct_sum_with_cap(&b5, 1000),
        Err(Error::TooLarge { cap: 1000, .. })
    ));
}

#[test]
fn whitney_numbers() {
    let braid4 = MatroidSpec::Braid { n: 4 }.build().unwrap();
    assert_eq!(
        braid4.whitney(WhitneyKind::Second, 0, 2).unwrap(),
        BigInt::from(7)
    );
    assert_eq!(
        braid4.whitney(WhitneyKind::Second, 0, 0).unwrap(),
        BigInt::one()
    );
    assert_eq!(
        braid4.whitney(WhitneyKind::First, 0, 1).unwrap(),
        BigInt::from(-6)
    );
    assert!(matches!(
        braid4.whitney(WhitneyKind::First, 0, 4),
        Err(Error::RankOutOfRange)
    ));
}

#[test]
fn modularity() {
    for n in 0..=4 {
        assert!(MatroidSpec::Boolean { n }.build().unwrap().is_modular());
    }
    let u13 = MatroidSpec::Uniform { m: 1, d: 3 }.build().unwrap();
    assert!(!u13.is_modular());
    let fano = fano().build().unwrap();
    assert_eq!(fano.rank(), 3);
    assert_eq!(rank_profile(&fano), vec![1, 7, 7, 1]);
    assert!(fano.is_modular());
}

#[test]
fn graph_spec_matches_braid() {
    // K4 as an explicit edge list
    let spec = MatroidSpec::Graph {
        vertices: 4,
        edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)],
    };
    let lat = spec.build().unwrap();
    let braid = MatroidSpec::Braid { n: 4 }.build().unwrap();
    assert_eq!(lat, braid);
}

#[test]
fn explicit_flats_round_trip_and_validation() {
    // the uniform(1,2) lattice listed explicitly
    let good = MatroidSpec::ExplicitFlats {
        flats: vec![
            (vec![], 0),
            (vec![0], 1),
            (vec![1], 1),
            (vec![2], 1),
            (vec![0, 1, 2], 2),
        ],
    };
    assert_eq!(
        good.build().unwrap(),
        MatroidSpec::Uniform { m: 1, d: 2 }.build().unwrap()
    );

    // missing atom: element 2 only appears in the top flat
    let bad = MatroidSpec::ExplicitFlats {
        flats: vec![
            (vec![], 0),
            (vec![0], 1),
            (vec![1], 1),
            (vec![0, 1, 2], 2),
        ],
    };
    assert!(matches!(bad.build(), Err(Error::InvalidLattice(_))));

    // not intersection-closed: two rank-2 flats meeting in a non-flat
    let bad = MatroidSpec::ExplicitFlats {
        flats: vec![
            (vec![], 0),
            (vec![0], 1),
            (vec![1], 1),
            (vec![2], 1),
            (vec![0, 1], 2),
            (vec![0, 2], 2),
            (vec![1, 2], 2),
            (vec![0, 1, 2], 3),
        ],
    };
    assert!(bad.build().is_ok(), "boolean(3) written out is fine");
    let bad = MatroidSpec::ExplicitFlats {
        flats: vec![
            (vec![], 0),
            (vec![0, 1], 1),
            (vec![1, 2], 1),
            (vec![0, 1, 2], 2),
        ],
    };
    assert!(matches!(bad.build(), Err(Error::InvalidLattice(_))));

    // nonempty bottom flat means loops
    let bad = MatroidSpec::ExplicitFlats {
        flats: vec![(vec![0], 0), (vec![0, 1], 1)],
    };
    assert!(matches!(bad.build(), Err(Error::LoopsPresent(0))));
}

#[test]
fn braid_flat_block_round_trip() {
    let blocks = vec![vec![0, 3], vec![1, 2], vec![4]];
    let f = braid_flat_from_blocks(5, &blocks);
    assert_eq!(f.len(), 2); // two edges: (0,3) and (1,2)
    assert_eq!(braid_blocks_of_flat(5, &f), blocks);
}

#[test]
fn matrix_invariants_enforced_on_build() {
    let bad_p = MatroidSpec::Matrix {
        p: 6,
        rows: 1,
        cols: 1,
        entries: vec![1],
    };
    assert!(matches!(bad_p.build(), Err(Error::SpecParse(_))));
    let bad_entry = MatroidSpec::Matrix {
        p: 3,
        rows: 1,
        cols: 2,
        entries: vec![1, 5],
    };
    assert!(matches!(bad_entry.build(), Err(Error::SpecParse(_))));
}

#[test]
fn spec_parsing() {
    assert_eq!(
        MatroidSpec::parse("uniform:1,8").unwrap(),
        MatroidSpec::Uniform { m: 1, d: 8 }
    );
    assert_eq!(
        MatroidSpec::parse("boolean:5").unwrap(),
        MatroidSpec::Boolean { n: 5 }
    );
    assert_eq!(
        MatroidSpec::parse("braid:13").unwrap(),
        MatroidSpec::Braid { n: 13 }
    );
    assert!(MatroidSpec::parse("uniform:1").is_err());
    assert!(MatroidSpec::parse("frobnicate:3").is_err());
    assert!(MatroidSpec::parse("graph:nofile").is_err());
    assert!(matches!(
        MatroidSpec::parse("graph:@/nonexistent/file"),
        Err(Error::Io(_))
    ));
}

#[test]
fn lattices_are_shareable_across_threads() {
    let lat = std::sync::Arc::new(MatroidSpec::Braid { n: 5 }.build().unwrap());
    let chi = lat.char_poly();
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let lat = std::sync::Arc::clone(&lat);
            std::thread::spawn(move || {
                // concurrent Möbius traffic hits the shared memo
                let mut values = Vec::new();
                for e in lat.flats() {
                    for f in lat.flats() {
                        if lat.leq(&e, &f) {
                            values.push(lat.mobius(&e, &f).unwrap());
                        }
                    }
                }
                (values, lat.char_poly())
            })
        })
        .collect();
    let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (values, c) in &results {
        assert_eq!(values, &results[0].0);
        assert_eq!(c, &chi);
    }
}

#[test]
fn join_and_meet() {
    let lat = MatroidSpec::Uniform { m: 1, d: 3 }.build().unwrap();
    let a = Flat::from_elems([0]);
    let b = Flat::from_elems([1]);
    assert_eq!(lat.join(&a, &b).unwrap(), Flat::from_elems([0, 1]));
    assert_eq!(lat.meet(&a, &b).unwrap(), Flat::empty());
    // joining two rank-2 flats overflows to the top
    let c = Flat::from_elems([0, 1]);
    let d = Flat::from_elems([2, 3]);
    assert_eq!(lat.join(&c, &d).unwrap(), lat.top());
}
