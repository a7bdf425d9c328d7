//! Biset composition and its span image; left Kan extensions along el of sampled 1-cells.

use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use spanmack::biset::{biset_compose, biset_iso, phi_act, span_of_biset, Biset};
use spanmack::cell::ZeroCell;
use spanmack::derivator::{
    diagram_coproduct, find_diagram_iso, gset_to_diagram, is_natural, left_kan, natural_transformations, restrict, Diagram,
};
use spanmack::groupoid::{el, el1, FiniteGroupoid};
use spanmack::gset::GSet;
use spanmack::mackey::Burnside;
use spanmack::sample::Sampler;
use spanmack::span::spans_isomorphic;

fn cases(n: u32) -> ProptestConfig {
    ProptestConfig { cases: n, ..ProptestConfig::default() }
}

/// The same biset with its points renamed by a random permutation.
fn relabel(s: &mut Sampler, u: &Biset) -> Biset {
    let mut perm: Vec<usize> = (0..u.size()).collect();
    perm.shuffle(s.rng());
    let (l, r) = (u.lact_rows(), u.ract_rows());
    let mut lact = l.clone();
    for (h, row) in l.iter().enumerate() {
        for (p, &v) in row.iter().enumerate() {
            lact[h][perm[p]] = perm[v];
        }
    }
    let mut ract = r.clone();
    for (p, row) in r.iter().enumerate() {
        ract[perm[p]] = row.iter().map(|&v| perm[v]).collect();
    }
    Biset::new(u.left_group(), u.right_group(), &lact, &ract).unwrap()
}

/// The fibers of X × T → X for a random G-set T.
fn diagram_over(s: &mut Sampler, x: &ZeroCell, shape: &Arc<FiniteGroupoid>, max: usize) -> Diagram {
    let t = s.gset(x.group(), max);
    let nt = t.size();
    let a = GSet::from_fn(x.group(), x.size() * nt, |g, p| x.act(g, p / nt) * nt + t.act(g, p % nt));
    let f: Vec<usize> = (0..a.size()).map(|p| p / nt).collect();
    gset_to_diagram(x, shape, &a, &f)
}

proptest! {
    #![proptest_config(cases(32))]

    #[test]
    fn biset_composition_is_associative(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let gs: Vec<_> = (0..4).map(|_| s.group(4)).collect();
        let u = s.biset(&gs[1], &gs[0], 6);
        let v = s.biset(&gs[2], &gs[1], 6);
        let w = s.biset(&gs[3], &gs[2], 6);
        let left = biset_compose(&w, &biset_compose(&v, &u).unwrap()).unwrap();
        let right = biset_compose(&biset_compose(&w, &v).unwrap(), &u).unwrap();
        prop_assert!(biset_iso(&left, &right));
    }

    #[test]
    fn span_of_biset_detects_isomorphism(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let (h, g) = (s.group(4), s.group(4));
        let u = s.biset(&h, &g, 6);
        let same = relabel(&mut s, &u);
        let other = s.biset(&h, &g, 6);
        prop_assert!(spans_isomorphic(&span_of_biset(&u), &span_of_biset(&same)).is_some());
        prop_assert_eq!(biset_iso(&u, &other), spans_isomorphic(&span_of_biset(&u), &span_of_biset(&other)).is_some());
    }

    #[test]
    fn phi_fixes_identity_bisets(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let g = s.group(12);
        prop_assert!(phi_act(&Burnside, &Biset::identity(&g)).unwrap().is_identity());
    }

    #[test]
    fn kan_extension_is_left_adjoint(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(4, 2);
        let (ex, ey) = (Arc::new(el(&a.src)), Arc::new(el(&a.dst)));
        let u = el1(&a, &ex, &ey);
        let d = diagram_over(&mut s, &a.src, &ex, 2);
        let e = diagram_over(&mut s, &a.dst, &ey, 2);
        let k = left_kan(&u, &d).unwrap();
        let ue = restrict(&u, &e).unwrap();
        let (Ok(up), Ok(down)) = (natural_transformations(&k.diagram, &e, 4096), natural_transformations(&d, &ue, 4096)) else {
            return Ok(());
        };
        prop_assert_eq!(up.len(), down.len());
        for alpha in &up {
            let beta = k.transpose_down(alpha);
            prop_assert!(is_natural(&d, &ue, &beta));
            prop_assert_eq!(&k.transpose_up(&e, &beta), alpha);
        }
        for beta in &down {
            prop_assert_eq!(&k.transpose_down(&k.transpose_up(&e, beta)), beta);
        }
    }

    #[test]
    fn kan_extension_preserves_coproducts(seed in any::<u64>()) {
        let mut s = Sampler::new(seed);
        let a = s.any_onecell(6, 3);
        let (ex, ey) = (Arc::new(el(&a.src)), Arc::new(el(&a.dst)));
        let u = el1(&a, &ex, &ey);
        let d1 = diagram_over(&mut s, &a.src, &ex, 3);
        let d2 = diagram_over(&mut s, &a.src, &ex, 3);
        let whole = left_kan(&u, &diagram_coproduct(&d1, &d2).unwrap()).unwrap().diagram;
        let parts = diagram_coproduct(&left_kan(&u, &d1).unwrap().diagram, &left_kan(&u, &d2).unwrap().diagram).unwrap();
        prop_assert!(find_diagram_iso(&whole, &parts).is_some());
    }
}
