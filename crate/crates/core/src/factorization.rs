//! Stab-surjectivity and the stabilizerwise-image factorization of 1-cells.

use crate::cell::{el_essentially_surjective, el_full, find_twocell, OneCell, ZeroCell};
use crate::error::{Error, Result};
use crate::group::GroupHom;
use crate::gset::GSet;

/// (i) every point of Y is hα(x); (ii) every t with tα(x) = α(x′) is θ_x(g) for some g with gx = x′.
pub fn is_stab_surjective(a: &OneCell) -> bool {
    let y = &a.dst;
    let h = y.group();
    let mut hit = vec![false; y.size()];
    for &p in &a.alpha {
        for t in h.elements() {
            hit[y.act(t, p)] = true;
        }
    }
    hit.iter().all(|&b| b) && el_full(a)
}

#[derive(Clone, Debug)]
pub struct SImFactorization {
    pub source: OneCell,
    /// SIm(α) as a 0-cell over H.
    pub sim: ZeroCell,
    pub upsilon: OneCell,
    pub alpha_tilde: OneCell,
    /// (η, x) ↦ class, indexed η·|X| + x.
    pub class_map: Vec<usize>,
    /// Least member (η, x) of each class.
    pub labels: Vec<(usize, usize)>,
}

pub fn sim_factorize(a: &OneCell) -> SImFactorization {
    let (x, y) = (&a.src, &a.dst);
    let (g, h) = (x.group(), y.group());
    let nx = x.size();
    let mut class_map = vec![usize::MAX; h.order() * nx];
    let mut labels = Vec::new();
    for eta in h.elements() {
        for p in 0..nx {
            if class_map[eta * nx + p] != usize::MAX {
                continue;
            }
            let c = labels.len();
            labels.push((eta, p));
            // (η, x) ~ (η θ_x(g)^{-1}, gx)
            for s in g.elements() {
                let e2 = h.mul(eta, h.inv(a.th(p, s)));
                class_map[e2 * nx + x.act(s, p)] = c;
            }
        }
    }
    let cm = class_map.clone();
    let lab = labels.clone();
    let set = GSet::from_fn(h, labels.len(), |t, c| {
        let (eta, p) = lab[c];
        cm[h.mul(t, eta) * nx + p]
    });
    let sim = ZeroCell::new(set);
    let upsilon = OneCell::new_unchecked(x, &sim, (0..nx).map(|p| class_map[p]).collect(), a.theta.clone());
    let id = GroupHom::identity(h);
    let alpha_tilde =
        OneCell::equivariant_unchecked(&sim, y, labels.iter().map(|&(eta, p)| y.act(eta, a.alpha[p])).collect(), &id);
    SImFactorization { source: a.clone(), sim, upsilon, alpha_tilde, class_map, labels }
}

/// Finds an H-equivariant equivalence ω: SIm(α) → S′ with ω∘υ_α ≅ υ′ and α̃′∘ω ≅ α̃.
pub fn verify_factorization_uniqueness(a: &OneCell, alt_upsilon: &OneCell, alt_tilde: &OneCell) -> Result<OneCell> {
    let f = sim_factorize(a);
    let s = &f.sim;
    let s2 = &alt_upsilon.dst;
    if !alt_tilde.src.same(s2) || !alt_upsilon.src.same(&a.src) || !alt_tilde.dst.same(&a.dst) {
        return Err(Error::EndpointMismatch("alternative factorization does not chain".into()));
    }
    if !is_stab_surjective(alt_upsilon) || !alt_tilde.is_equivariant() || s.size() != s2.size() {
        return Err(Error::NoMediator);
    }
    let h = s.group();
    let id = GroupHom::identity(h);
    // each orbit rep of S goes to a point of S′ with the same stabilizer, orbits used once
    let orbits = s.orbits();
    let mut choice = vec![0usize; orbits.len()];
    let cands: Vec<Vec<usize>> = orbits
        .iter()
        .map(|o| (0..s2.size()).filter(|&q| s2.stabilizer_of(q) == o.stabilizer).collect())
        .collect();
    fn rec(
        i: usize,
        cands: &[Vec<usize>],
        choice: &mut Vec<usize>,
        used: &mut Vec<bool>,
        s2: &ZeroCell,
        done: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if i == cands.len() {
            return done(choice);
        }
        for &q in &cands[i] {
            let o = s2.orbit_index(q);
            if used[o] {
                continue;
            }
            used[o] = true;
            choice[i] = q;
            if rec(i + 1, cands, choice, used, s2, done) {
                return true;
            }
            used[o] = false;
        }
        false
    }
    let mut found = None;
    let mut used = vec![false; s2.orbits().len()];
    rec(0, &cands, &mut choice, &mut used, s2, &mut |ch: &[usize]| {
        let mut map = vec![0; s.size()];
        for (i, o) in orbits.iter().enumerate() {
            for &p in &o.points {
                map[p] = s2.act(s.transporter(p), ch[i]);
            }
        }
        let om = OneCell::equivariant_unchecked(s, s2, map, &id);
        if find_twocell(&om.compose_unchecked(&f.upsilon), alt_upsilon).is_some()
            && find_twocell(&alt_tilde.compose_unchecked(&om), &f.alpha_tilde).is_some()
        {
            found = Some(om);
            true
        } else {
            false
        }
    });
    let om = found.ok_or(Error::NoMediator)?;
    debug_assert!(el_essentially_surjective(&om));
    Ok(om)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::is_equivalence;
    use crate::group::*;

    #[test]
    fn stab_surjective_examples() {
        let (e, c2) = (trivial(), cyclic(2));
        let a = OneCell::from_hom(&GroupHom::trivial(&e, &c2));
        assert!(!is_stab_surjective(&a));
        let f = sim_factorize(&a);
        assert_eq!(f.sim.size(), 2);
        assert_eq!(f.sim.orbits().len(), 1);
        assert!(is_stab_surjective(&f.upsilon));
        assert!(f.alpha_tilde.is_equivariant());
        assert!(find_twocell(&f.alpha_tilde.compose_unchecked(&f.upsilon), &a).is_some());
        assert!(is_stab_surjective(&OneCell::identity(&ZeroCell::pt(&c2))));
    }

    #[test]
    fn surjection_factorizes_trivially() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let q = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        let a = OneCell::from_hom(&q);
        assert!(is_stab_surjective(&a));
        let f = sim_factorize(&a);
        assert_eq!(f.sim.size(), 1);
        assert_eq!(f.alpha_tilde.alpha, vec![0]);
        assert!(is_equivalence(&f.alpha_tilde).is_some());
    }

    #[test]
    fn uniqueness_on_canonical_factorization() {
        let s3 = symmetric(3);
        let c2 = cyclic(2);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let a = OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t]).unwrap());
        let f = sim_factorize(&a);
        assert_eq!(f.sim.size(), 3);
        let om = verify_factorization_uniqueness(&a, &f.upsilon, &f.alpha_tilde).unwrap();
        assert_eq!(om.alpha, (0..3).collect::<Vec<_>>());
    }
}
