//! Span composition, Ω and span evaluation on sampled instances.

use proptest::prelude::*;

use spanmack::burnside::{omega_pull, omega_push, BurnsideBasis};
use spanmack::cell::{bipullback, coproduct_same_group, ZeroCell};
use spanmack::factorization::sim_factorize;
use spanmack::group::{cyclic, direct_product, subgroup_group, symmetric};
use spanmack::linalg::Matrix;
use spanmack::mackey::{evaluate_span, Burnside, Cardinality, MackeyFunctor};
use spanmack::sample::Sampler;
use spanmack::span::{compose_spans, double_coset_oracle, lift_r, lift_t, spans_isomorphic, Span, SpanLinComb};

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

fn functors() -> Vec<Box<dyn MackeyFunctor>> {
    vec![Box::new(Burnside), Box::new(Cardinality)]
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn composition_is_associative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let xs: Vec<ZeroCell> = (0..4).map(|_| s.zerocell(3, 2)).collect();
        let a = s.span(&xs[0], &xs[1], 2, 2);
        let b = s.span(&xs[1], &xs[2], 2, 2);
        let c = s.span(&xs[2], &xs[3], 2, 2);
        let left = compose_spans(&compose_spans(&c, &b).unwrap(), &a).unwrap();
        let right = compose_spans(&c, &compose_spans(&b, &a).unwrap()).unwrap();
        prop_assert!(spans_isomorphic(&left, &right).is_some());
    }

    #[test]
    fn composition_respects_isomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.zerocell(4, 2), s.zerocell(4, 2), s.zerocell(4, 2));
        let a = s.span(&x, &y, 3, 2);
        let b = s.span(&y, &z, 3, 2);
        // the same span with its legs moved by 2-cells, and with a unit composed on
        let moved = Span::new(s.twocell(&a.left).dst, s.twocell(&a.right).dst).unwrap();
        let padded = compose_spans(&a, &Span::identity(&x)).unwrap();
        prop_assert!(spans_isomorphic(&a, &moved).is_some());
        prop_assert!(spans_isomorphic(&a, &padded).is_some());
        let ba = compose_spans(&b, &a).unwrap();
        prop_assert!(spans_isomorphic(&ba, &compose_spans(&b, &moved).unwrap()).is_some());
        prop_assert!(spans_isomorphic(&ba, &compose_spans(&b, &padded).unwrap()).is_some());
    }

    #[test]
    fn composite_does_not_depend_on_the_bipullback(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.zerocell(4, 2), s.zerocell(4, 2), s.zerocell(4, 2));
        let a = s.span(&x, &y, 3, 2);
        let b = s.span(&y, &z, 3, 2);
        // the bipullback taken in the other order labels its apex differently
        let p = bipullback(&b.right, &a.left).unwrap();
        let other = Span::new(b.left.compose(&p.proj_left).unwrap(), a.right.compose(&p.proj_right).unwrap()).unwrap();
        prop_assert!(spans_isomorphic(&compose_spans(&b, &a).unwrap(), &other).is_some());
    }

    #[test]
    fn coproduct_is_a_product_of_spans(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.group(6);
        let (x, y) = (ZeroCell::new(s.gset(&g, 2)), ZeroCell::new(s.gset(&g, 2)));
        let w = ZeroCell::new(s.gset(&g, 2));
        let cp = coproduct_same_group(&x, &y);
        // projections X ⊔ Y → X are the reversed injections
        let (p1, p2) = (lift_r(&cp.inl), lift_r(&cp.inr));
        let f = s.span(&w, &x, 3, 2);
        let h = s.span(&w, &y, 3, 2);
        let pairing = lift_t(&cp.inl).compose(&SpanLinComb::from_span(&f)).unwrap()
            .add(&lift_t(&cp.inr).compose(&SpanLinComb::from_span(&h)).unwrap()).unwrap();
        prop_assert!(p1.compose(&pairing).unwrap().equals(&SpanLinComb::from_span(&f)));
        prop_assert!(p2.compose(&pairing).unwrap().equals(&SpanLinComb::from_span(&h)));
    }

    #[test]
    fn omega_is_additive(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.group(8);
        let (x, y) = (ZeroCell::new(s.gset(&g, 3)), ZeroCell::new(s.gset(&g, 3)));
        let cp = coproduct_same_group(&x, &y);
        let (l, r) = (omega_pull(&cp.inl).unwrap(), omega_pull(&cp.inr).unwrap());
        let n = BurnsideBasis::of(&cp.object).unwrap().rank();
        prop_assert_eq!(l.rows() + r.rows(), n);
        let mut stacked = Matrix::zeros(n, n);
        stacked.place(0, 0, &l);
        stacked.place(l.rows(), 0, &r);
        prop_assert_eq!(stacked.rank(), n);
        // and the pushes split it
        let split = omega_push(&cp.inl).unwrap().mul(&l).add(&omega_push(&cp.inr).unwrap().mul(&r));
        prop_assert!(split.is_identity());
    }

    #[test]
    fn omega_is_deflative_on_stab_surjective_cells(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let u = sim_factorize(&s.any_onecell(8, 4)).upsilon;
        prop_assert!(omega_push(&u).unwrap().mul(&omega_pull(&u).unwrap()).is_identity());
        let span = SpanLinComb::from_span(&Span::new(u.clone(), u).unwrap());
        prop_assert!(evaluate_span(&Burnside, &span).unwrap().is_identity());
    }

    #[test]
    fn evaluation_is_functorial_and_additive(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (x, y, z) = (s.zerocell(4, 2), s.zerocell(4, 2), s.zerocell(4, 2));
        let a = SpanLinComb::from_span(&s.span(&x, &y, 3, 2));
        let a2 = SpanLinComb::from_span(&s.span(&x, &y, 3, 2));
        let b = SpanLinComb::from_span(&s.span(&y, &z, 3, 2));
        for m in functors() {
            let (ma, mb) = (evaluate_span(m.as_ref(), &a).unwrap(), evaluate_span(m.as_ref(), &b).unwrap());
            prop_assert_eq!(evaluate_span(m.as_ref(), &b.compose(&a).unwrap()).unwrap(), mb.mul(&ma));
            let sum = evaluate_span(m.as_ref(), &a.add(&a2).unwrap()).unwrap();
            prop_assert_eq!(sum, ma.add(&evaluate_span(m.as_ref(), &a2).unwrap()));
        }
    }
}

#[test]
fn res_ind_is_a_sum_over_double_cosets() {
    let v4 = direct_product(&cyclic(2), &cyclic(2));
    let s3 = symmetric(3);
    let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    for (g, h, cosets) in [(s3.clone(), vec![0, t], 2), (cyclic(4), vec![0, 2], 2), (v4, vec![0, 1], 2)] {
        let (_, incl) = subgroup_group(&g, &h);
        let iota = spanmack::cell::OneCell::from_hom(&incl);
        let composite = lift_r(&iota).compose(&lift_t(&iota)).unwrap();
        let (oracle, reps) = double_coset_oracle(&g, &h);
        assert!(composite.equals(&oracle), "{}", g.label());
        assert_eq!(reps.len(), cosets);
    }
}
