mod common;

use common::*;
use orbitcat::dspace::{self, enumerate_dspaces, pi0_functor, DSpace};
use orbitcat::fincat::{equivalence_witness, FinCategory, DEFAULT_SEARCH_BUDGET};
use orbitcat::finspace::FinSpace;
use orbitcat::orbits::*;
use proptest::prelude::*;
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Orbit test by brute force: exactly one class under the relation
/// generated by `x ~ X_f(x)`.
fn brute_is_orbit(x: &DSpace) -> bool {
    let pts = x.flat_points();
    if pts.is_empty() {
        return false;
    }
    let shape = x.shape();
    let mut seen = vec![false; pts.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for (j, q) in pts.iter().enumerate() {
            if seen[j] {
                continue;
            }
            let p = pts[i];
            let linked = shape.morphisms().any(|m| {
                (shape.source(m) == p.0 && shape.target(m) == q.0 && x.act(m, p.1) == q.1)
                    || (shape.source(m) == q.0 && shape.target(m) == p.0 && x.act(m, q.1) == p.1)
            });
            if linked {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

#[test]
fn orbit_test_matches_brute_force() {
    for shape in [j(), c2(), FinCategory::cospan()] {
        for x in enumerate_dspaces(&shape, 2, false) {
            assert_eq!(is_orbit(&x).is_orbit(), brute_is_orbit(&x));
        }
    }
}

#[test]
fn free_orbits_are_orbits() {
    for shape in [j(), c2(), FinCategory::cospan(), FinCategory::span()] {
        for d in shape.objects() {
            let f = free_orbit(&shape, d).unwrap();
            assert!(brute_is_orbit(f.underlying()));
        }
    }
}

#[test]
fn canonical_forms_detect_isomorphism() {
    for shape in [j(), c2()] {
        let xs = enumerate_dspaces(&shape, 2, false);
        for a in &xs {
            for b in &xs {
                let iso = dspace::find_isomorphism(a, b).unwrap().is_some();
                assert_eq!(canonical_form(a).unwrap() == canonical_form(b).unwrap(), iso);
            }
        }
    }
}

#[test]
fn discrete_orbit_censuses() {
    let sizes = |shape: &FinCategory, k| -> Vec<Vec<usize>> {
        enumerate_discrete_orbits(shape, k)
            .unwrap()
            .iter()
            .map(|o| o.underlying().sizes())
            .collect()
    };
    assert_eq!(sizes(&j(), 4), vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1]]);
    assert_eq!(sizes(&c2(), 2), vec![vec![1], vec![2]]);
}

fn random_dset(shape: &FinCategory, max_total: usize, rng: &mut ChaCha8Rng) -> DSpace {
    loop {
        let sizes: Vec<usize> = shape.objects().map(|_| rand::Rng::gen_range(rng, 0..=max_total)).collect();
        if sizes.iter().sum::<usize>() > max_total {
            continue;
        }
        let spaces: Vec<FinSpace> = sizes.iter().map(|&k| FinSpace::discrete(k)).collect();
        let actions = dspace::enumerate_actions(shape, &spaces);
        if let Some(a) = actions.choose(rng) {
            return DSpace::new(shape.clone(), spaces, a.clone()).unwrap();
        }
    }
}

proptest! {
    #[test]
    fn decomposition_is_invariant_under_relabeling(seed in any::<u64>(), which in 0usize..3) {
        let shape = [j(), c2(), FinCategory::cospan()][which].clone();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_dset(&shape, 5, &mut rng);
        let perms: Vec<Vec<usize>> = t
            .sizes()
            .into_iter()
            .map(|n| {
                let mut p: Vec<usize> = (0..n).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let a = decompose_dset(&t).unwrap();
        let b = decompose_dset(&t.relabel(&perms)).unwrap();
        prop_assert_eq!(a.label_multiset(), b.label_multiset());
        // Parts partition the points and are orbits.
        let mut covered: Vec<Vec<usize>> = shape.objects().map(|_| Vec::new()).collect();
        for part in &a.parts {
            prop_assert!(brute_is_orbit(part.orbit.underlying()));
            for d in shape.objects() {
                covered[d].extend(&part.points[d]);
            }
        }
        for (d, c) in covered.iter_mut().enumerate() {
            c.sort();
            prop_assert_eq!(c.clone(), (0..t.space(d).len()).collect::<Vec<_>>());
        }
    }
}

#[test]
fn decomposition_example() {
    // T_s = {a}, T_t = {x, y}, a ↦ x.
    let t = DSpace::from_partial(j(), vec![FinSpace::discrete(1), FinSpace::discrete(2)], [(2, vec![0])]).unwrap();
    let dec = decompose_dset(&t).unwrap();
    assert_eq!(dec.parts.len(), 2);
    assert_eq!(dec.parts[0].points, vec![vec![0], vec![0]]);
    assert_eq!(dec.labels[0], canonical_form(&bracket(1)).unwrap());
    assert_eq!(dec.parts[1].points, vec![vec![], vec![1]]);
    assert_eq!(dec.labels[1], canonical_form(&bracket(0)).unwrap());
}

#[test]
fn orbit_category_counts_maps() {
    for (shape, family) in [(j(), j_family()), (c2(), c2_family()), (FinCategory::cospan(), cospan_family())] {
        let oc = orbit_category(&shape, &family).unwrap();
        let m = oc.hom_matrix();
        for (a, (_, x)) in family.iter().enumerate() {
            for (b, (_, y)) in family.iter().enumerate() {
                assert_eq!(m[a][b], brute_maps(x, y).len());
            }
        }
    }
    // [1] → [0] has no maps; [0] → [2] has one; [2] → [2] is any self-map at s.
    let m = j_oc().hom_matrix();
    assert_eq!((m[1][0], m[0][2], m[2][2]), (0, 1, 4));
}

#[test]
fn classifiers_send_identity_to_the_point() {
    for oc in [j_oc(), c2_oc()] {
        let shape = oc.shape().clone();
        for i in 0..oc.orbits().len() {
            for d in shape.objects() {
                let id = dspace::hom_position(&shape, d, d, shape.identity(d));
                for o in oc.orbit(i).underlying().space(d).points() {
                    let m = oc.map(oc.classifier(i, d, o));
                    assert_eq!(m.apply(d, id), o);
                }
            }
        }
    }
}

#[test]
fn missing_free_orbit_is_reported() {
    let family = vec![("[1]".to_string(), bracket(1))];
    assert!(matches!(
        orbit_category(&j(), &family),
        Err(orbitcat::Error::MissingFreeOrbit(_))
    ));
}

#[test]
fn translation_categories() {
    let c = c2();
    let fixed = translation_category(&DSpace::terminal(&c)).unwrap();
    assert!(orbitcat::fincat::find_isomorphism(&fixed.category, &c, DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .is_some());
    let free = translation_category(&DSpace::representable(&c, 0).unwrap()).unwrap();
    assert!(equivalence_witness(&free.category, &FinCategory::terminal(), DEFAULT_SEARCH_BUDGET)
        .unwrap()
        .is_some());
    for shape in [j(), c2(), FinCategory::cospan()] {
        for d in shape.objects() {
            let t = translation_category(&DSpace::representable(&shape, d).unwrap()).unwrap();
            let id = dspace::hom_position(&shape, d, d, shape.identity(d));
            let o = t.elements.iter().position(|&e| e == (d, id)).unwrap();
            assert!(t.category.is_initial(o));
        }
    }
}

#[test]
fn pi0_of_constant_and_split_diagrams() {
    let oc = orbit_category(&j(), &j_family()[..2]).unwrap();
    for space in [FinSpace::point(), FinSpace::discrete(2), FinSpace::chain(2)] {
        let p = pi0_functor(&DSpace::constant(&j(), &space), &oc).unwrap();
        let n = components(&space);
        assert!(p.components.iter().all(|c| c.count() == n));
        for sigma in oc.category().morphisms() {
            let mut image = p.induced(sigma).to_vec();
            image.sort();
            assert_eq!(image, (0..n).collect::<Vec<_>>());
        }
    }
    let x = DSpace::from_partial(j(), vec![FinSpace::discrete(2), FinSpace::point()], [(2, vec![0, 0])]).unwrap();
    let p = pi0_functor(&x, &oc).unwrap();
    let counts: Vec<usize> = p.components.iter().map(|c| c.count()).collect();
    assert_eq!(counts, vec![1, 2]);
}
