//! Properties of G-sets, 1- and 2-cells, el and the SIm-factorization on sampled instances.

use std::sync::Arc;

use proptest::prelude::*;
use rand::Rng;

use spanmack::cell::{bipullback, find_twocell, OneCell, TwoCell};
use spanmack::factorization::{is_stab_surjective, sim_factorize};
use spanmack::group::{subgroup_group, subgroup_lattice};
use spanmack::groupoid::{el, el1};
use spanmack::gset::{gset_isomorphism, induce};
use spanmack::sample::Sampler;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cases(48))]

    #[test]
    fn induction_counts_and_unions(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.group(12);
        let lattice = subgroup_lattice(&g).unwrap();
        let k = s.rng().gen_range(0..lattice.subgroups.len());
        let (h, iota) = subgroup_group(&g, &lattice.subgroups[k]);
        let x = s.gset(&h, 4);
        let y = s.gset(&h, 3);
        let (ind, _) = induce(&iota, &x).unwrap();
        prop_assert_eq!(ind.size() * h.order(), g.order() * x.size());
        let whole = induce(&iota, &x.disjoint_union(&y).unwrap()).unwrap().0;
        let parts = ind.disjoint_union(&induce(&iota, &y).unwrap().0).unwrap();
        prop_assert!(gset_isomorphism(&whole, &parts).is_some());
    }

    #[test]
    fn orbit_stabilizer(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let x = s.zerocell(12, 8);
        let total: usize = x.orbits().iter().map(|o| o.points.len()).sum();
        prop_assert_eq!(total, x.size());
        for o in x.orbits() {
            prop_assert_eq!(o.points.len() * o.stabilizer.len(), x.group().order());
        }
    }

    #[test]
    fn twocells_form_an_equivalence_relation(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(8, 4);
        let b = s.twocell(&a).dst;
        let c = s.twocell(&b).dst;
        prop_assert!(find_twocell(&a, &a).is_some());
        let ab = find_twocell(&a, &b).unwrap();
        ab.validate().unwrap();
        ab.inverse().validate().unwrap();
        let bc = find_twocell(&b, &c).unwrap();
        ab.then(&bc).validate().unwrap();
        prop_assert!(find_twocell(&c, &a).is_some());
    }

    #[test]
    fn whiskering_gives_twocells(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(6, 3);
        let z = s.zerocell(6, 3);
        let Some(b) = s.onecell(&a.dst, &z) else { return Ok(()) };
        let e = s.twocell(&a);
        let r = s.twocell(&b);
        TwoCell::whisker_left(&b, &e).validate().unwrap();
        TwoCell::whisker_right(&r, &a).validate().unwrap();
    }

    #[test]
    fn el_is_functorial(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(6, 4);
        let z = s.zerocell(6, 4);
        let Some(b) = s.onecell(&a.dst, &z) else { return Ok(()) };
        let (ex, ey, ez) = (Arc::new(el(&a.src)), Arc::new(el(&a.dst)), Arc::new(el(&z)));
        let ba = b.compose(&a).unwrap();
        prop_assert_eq!(el1(&ba, &ex, &ez), el1(&b, &ey, &ez).compose(&el1(&a, &ex, &ey)));
    }

    #[test]
    fn bipullback_mediates_cones(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let z = s.zerocell(6, 3);
        let x = s.zerocell(4, 2);
        let y = s.zerocell(4, 2);
        let (Some(a), Some(b)) = (s.onecell(&x, &z), s.onecell(&y, &z)) else { return Ok(()) };
        let p = bipullback(&a, &b).unwrap();
        // a cone through the apex, moved by 2-cells on both sides
        let w = s.zerocell(4, 2);
        let Some(m0) = s.onecell(&w, &p.apex) else { return Ok(()) };
        let c = s.twocell(&p.proj_left.compose(&m0).unwrap()).dst;
        let d = s.twocell(&p.proj_right.compose(&m0).unwrap()).dst;
        let eps = find_twocell(&a.compose(&c).unwrap(), &b.compose(&d).unwrap()).expect("the cone commutes up to a 2-cell");
        // mediator w ↦ (c(w), d(w), ε_w)
        let h = y.group();
        let alpha: Vec<usize> = (0..w.size())
            .map(|q| p.triples.iter().position(|&t| t == (c.alpha[q], d.alpha[q], eps.eps[q])).expect("triple"))
            .collect();
        let theta: Vec<usize> = (0..w.size())
            .flat_map(|q| w.group().elements().map(move |t| (q, t)))
            .map(|(q, t)| spanmack::group::pair(h.order(), c.th(q, t), d.th(q, t)))
            .collect();
        let m = OneCell::new(&w, &p.apex, alpha, theta).unwrap();
        prop_assert!(find_twocell(&p.proj_left.compose(&m).unwrap(), &c).is_some());
        prop_assert!(find_twocell(&p.proj_right.compose(&m).unwrap(), &d).is_some());
    }

    #[test]
    fn sim_factorization_shape(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(8, 4);
        let f = sim_factorize(&a);
        prop_assert!(is_stab_surjective(&f.upsilon));
        prop_assert!(f.alpha_tilde.is_equivariant());
        prop_assert!(find_twocell(&f.alpha_tilde.compose(&f.upsilon).unwrap(), &a).is_some());
        // |SIm| need not divide |H|·|X| once X has several orbits; per orbit the class
        // count divides |H|
        let nx = a.src.size();
        let nh = a.dst.group().order();
        let mut total = 0;
        for o in a.src.orbits() {
            let mut classes: Vec<usize> = (0..nh).flat_map(|eta| o.points.iter().map(move |&p| eta * nx + p)).map(|i| f.class_map[i]).collect();
            classes.sort_unstable();
            classes.dedup();
            prop_assert_eq!(nh % classes.len(), 0);
            total += classes.len();
        }
        prop_assert_eq!(total, f.sim.size());
    }

    #[test]
    fn stab_surjective_closed_under_composition_and_pullback(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(6, 3);
        let u = sim_factorize(&a).upsilon;
        let z = s.zerocell(6, 3);
        let Some(b) = s.onecell(&u.dst, &z) else { return Ok(()) };
        let v = sim_factorize(&b).upsilon;
        prop_assert!(is_stab_surjective(&v.compose(&u).unwrap()));
        let w = s.zerocell(4, 2);
        let Some(c) = s.onecell(&w, &u.dst) else { return Ok(()) };
        let p = bipullback(&u, &c).unwrap();
        prop_assert!(is_stab_surjective(&p.proj_right));
    }
}
