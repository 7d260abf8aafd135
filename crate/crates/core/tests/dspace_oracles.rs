mod common;

use common::*;
use orbitcat::dspace::*;
use orbitcat::fincat::FinCategory;
use orbitcat::finspace::{self, FinSpace};
use proptest::prelude::*;

fn pool(shape: &FinCategory, max_points: usize) -> Vec<DSpace> {
    enumerate_dspaces(shape, max_points, false)
}

fn categories() -> Vec<FinCategory> {
    vec![j(), c2(), FinCategory::cospan()]
}

#[test]
fn map_search_matches_brute_force() {
    for shape in categories() {
        let xs = pool(&shape, 2);
        let step = (xs.len() / 12).max(1);
        for x in xs.iter().step_by(step) {
            for y in xs.iter().step_by(step) {
                let found: Vec<Vec<Vec<usize>>> = enumerate_equivariant_maps(x, y)
                    .unwrap()
                    .into_iter()
                    .map(|m| m.components().to_vec())
                    .collect();
                assert_eq!(found, brute_maps(x, y));
                assert_eq!(count_equivariant_maps(x, y).unwrap(), found.len());
            }
        }
    }
}

#[test]
fn isomorphism_search_matches_brute_force() {
    for shape in [j(), c2()] {
        let xs = pool(&shape, 2);
        for x in &xs {
            for y in &xs {
                let brute = x.sizes() == y.sizes()
                    && brute_maps(x, y).iter().any(|c| {
                        shape
                            .objects()
                            .all(|d| finspace::is_order_isomorphism(x.space(d), y.space(d), &c[d]))
                    });
                assert_eq!(find_isomorphism(x, y).unwrap().is_some(), brute);
            }
        }
    }
}

#[test]
fn enumeration_counts_functors() {
    // Over J with discrete spaces: pairs (a, b) with b^a maps.
    let n = enumerate_dspaces(&j(), 2, true).len();
    let expected: usize = (0..=2u32).flat_map(|a| (0..=2usize).map(move |b| b.pow(a))).sum();
    assert_eq!(n, expected);
    // Over C2 with discrete spaces: involutions on 0, 1, 2 points.
    assert_eq!(enumerate_dspaces(&c2(), 2, true).len(), 1 + 1 + 2);
}

#[test]
fn colimit_universal_property() {
    let probes = [FinSpace::point(), FinSpace::discrete(2), FinSpace::chain(2)];
    for shape in categories() {
        for x in pool(&shape, 2).iter().step_by(5) {
            let c = colim_dspace(x);
            for t in &probes {
                let constant = DSpace::constant(&shape, t);
                assert_eq!(brute_maps(x, &constant).len(), monotone(&c.space, t).len());
            }
        }
    }
}

#[test]
fn products_and_coproducts_are_universal() {
    let shape = j();
    let xs = pool(&shape, 1);
    let probes = pool(&shape, 2);
    for x in &xs {
        for y in &xs {
            let p = product(x, y).unwrap();
            let c = coproduct(x, y).unwrap();
            for t in probes.iter().step_by(7) {
                assert_eq!(brute_maps(t, &p).len(), brute_maps(t, x).len() * brute_maps(t, y).len());
                assert_eq!(brute_maps(&c, t).len(), brute_maps(x, t).len() * brute_maps(y, t).len());
            }
        }
    }
}

#[test]
fn pushout_is_universal() {
    let shape = j();
    let xs = pool(&shape, 1);
    let probes: Vec<DSpace> = pool(&shape, 2).into_iter().step_by(9).collect();
    for w in &xs {
        for y in &xs {
            for z in &xs {
                for f in enumerate_equivariant_maps(w, y).unwrap() {
                    for g in enumerate_equivariant_maps(w, z).unwrap() {
                        let p = pushout_dspace(&f, &g).unwrap();
                        for t in &probes {
                            let mut cocones = 0;
                            for a in brute_maps(y, t) {
                                for b in brute_maps(z, t) {
                                    if compose(&a, f.components()) == compose(&b, g.components()) {
                                        cocones += 1;
                                    }
                                }
                            }
                            assert_eq!(brute_maps(&p.space, t).len(), cocones);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn hom_as_space_lists_every_map() {
    for shape in [j(), c2()] {
        let xs = pool(&shape, 2);
        for x in xs.iter().step_by(4) {
            for y in xs.iter().step_by(3) {
                let h = hom_as_space(x, y).unwrap();
                let listed: Vec<Vec<Vec<usize>>> = h.maps.iter().map(|m| m.components().to_vec()).collect();
                assert_eq!(listed, brute_maps(x, y));
                for (a, ma) in listed.iter().enumerate() {
                    for (b, mb) in listed.iter().enumerate() {
                        let pointwise = shape.objects().all(|d| {
                            x.space(d).points().all(|p| y.space(d).leq(ma[d][p], mb[d][p]))
                        });
                        assert_eq!(h.space.leq(a, b), pointwise);
                    }
                }
            }
        }
    }
}

#[test]
fn tensor_hom_transposes_over_the_arrow() {
    let xs = pool(&j(), 1);
    let ys = pool(&j(), 2);
    for y in ys.iter().step_by(3) {
        for z in ys.iter().step_by(5) {
            let eh = enriched_hom(y, z).unwrap();
            for x in &xs {
                let forward = enumerate_equivariant_maps(&product(x, y).unwrap(), z).unwrap();
                let backward = enumerate_equivariant_maps(x, &eh.dspace).unwrap();
                assert_eq!(forward.len(), backward.len());
                for a in &forward {
                    let b = tensor_hom_forward(a, x, &eh).unwrap();
                    assert_eq!(&tensor_hom_backward(&b, &eh).unwrap(), a);
                }
                for b in &backward {
                    let a = tensor_hom_backward(b, &eh).unwrap();
                    assert_eq!(&tensor_hom_forward(&a, x, &eh).unwrap(), b);
                }
            }
        }
    }
}

#[test]
fn free_orbit_fixed_points_preserve_pushouts() {
    let shape = j();
    let xs = pool(&shape, 1);
    let mut instances = Vec::new();
    for w in &xs {
        for y in &xs {
            instances.push(PreservationInstance::Coproduct(w.clone(), y.clone()));
            instances.push(PreservationInstance::Product(w.clone(), y.clone()));
            for z in &xs {
                for f in enumerate_equivariant_maps(w, y).unwrap() {
                    for g in enumerate_equivariant_maps(w, z).unwrap() {
                        instances.push(PreservationInstance::Pushout(f.clone(), g));
                    }
                }
            }
        }
    }
    for d in shape.objects() {
        let free = DSpace::representable(&shape, d).unwrap();
        for r in check_fixed_point_preservation(&free, &instances).unwrap() {
            assert!(r.comparison_is_iso, "{r:?}");
        }
    }
}

#[test]
fn non_free_orbit_fixed_points_can_miss_pushouts() {
    // Over C2 with O = C2/C2: W = C2/e mapped onto two points; the pushout
    // is a point, whose fixed points are a point, but the fixed points of
    // Y and Z glue along the empty W^O into two points.
    let c = c2();
    let w = DSpace::representable(&c, 0).unwrap();
    let y = DSpace::terminal(&c);
    let f = enumerate_equivariant_maps(&w, &y).unwrap().remove(0);
    let r = check_fixed_point_preservation(&DSpace::terminal(&c), &[PreservationInstance::Pushout(f.clone(), f)])
        .unwrap()
        .remove(0);
    assert_eq!((r.of_fixed_points, r.fixed_points_of), (2, 1));
    assert!(!r.comparison_is_iso);
}

#[test]
fn non_orbits_are_rejected() {
    let two = coproduct(&DSpace::terminal(&j()), &DSpace::terminal(&j())).unwrap();
    assert!(matches!(
        check_fixed_point_preservation(&two, &[]),
        Err(orbitcat::Error::NotAnOrbit(_))
    ));
}

proptest! {
    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let xs = pool(&j(), 2);
        let pick = |k: u64| xs[(k % xs.len() as u64) as usize].clone();
        let (a, b, c, d) = (pick(seed), pick(seed >> 8), pick(seed >> 16), pick(seed >> 24));
        let (Some(f), Some(g), Some(h)) = (
            random_equivariant_map(&a, &b, &mut rng).unwrap(),
            random_equivariant_map(&b, &c, &mut rng).unwrap(),
            random_equivariant_map(&c, &d, &mut rng).unwrap(),
        ) else {
            return Ok(());
        };
        prop_assert_eq!(h.after(&g.after(&f).unwrap()).unwrap(), h.after(&g).unwrap().after(&f).unwrap());
        prop_assert_eq!(f.after(&EquivariantMap::identity(&a)).unwrap(), f.clone());
    }

    #[test]
    fn relabeling_preserves_isomorphism_class(seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let xs = pool(&c2(), 3);
        let x = xs[(seed % xs.len() as u64) as usize].clone();
        let perms: Vec<Vec<usize>> = x
            .sizes()
            .into_iter()
            .map(|n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let y = x.relabel(&perms);
        prop_assert!(find_isomorphism(&x, &y).unwrap().is_some());
    }
}
