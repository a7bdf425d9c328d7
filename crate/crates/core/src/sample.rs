//! Seeded random instances: groups, G-sets, 1-cells, 2-cells, spans and bisets.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::biset::Biset;
use crate::cell::{OneCell, TwoCell, ZeroCell};
use crate::group::{direct_product, generated, homomorphisms, small_groups_up_to_12, subgroup_group, subgroup_lattice, Group, GroupHom};
use crate::gset::GSet;
use crate::span::Span;

pub struct Sampler {
    rng: ChaCha8Rng,
    groups: Vec<Group>,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), groups: small_groups_up_to_12() }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn group(&mut self, max_order: usize) -> Group {
        let cands: Vec<&Group> = self.groups.iter().filter(|g| g.order() <= max_order).collect();
        (*cands.choose(&mut self.rng).expect("the trivial group is always available")).clone()
    }

    /// A random G-set with between 1 and `max_size` points.
    pub fn gset(&mut self, g: &Group, max_size: usize) -> GSet {
        let lattice = subgroup_lattice(g).expect("catalog groups are small");
        let n = g.order();
        let mut set: Option<GSet> = None;
        let orbits = self.rng.gen_range(1..=3);
        for _ in 0..orbits {
            let room = max_size - set.as_ref().map_or(0, |s| s.size());
            let fits: Vec<&Vec<usize>> = lattice.subgroups.iter().filter(|k| n / k.len() <= room).collect();
            let Some(k) = fits.choose(&mut self.rng) else { break };
            let piece = GSet::cosets(g, k).0;
            set = Some(match set {
                None => piece,
                Some(s) => s.disjoint_union(&piece).expect("same group"),
            });
        }
        set.unwrap_or_else(|| GSet::point(g))
    }

    pub fn zerocell(&mut self, max_order: usize, max_size: usize) -> ZeroCell {
        let g = self.group(max_order);
        ZeroCell::new(self.gset(&g, max_size))
    }

    pub fn hom(&mut self, src: &Group, dst: &Group) -> GroupHom {
        homomorphisms(src, dst).choose(&mut self.rng).expect("the trivial hom exists").clone()
    }

    /// A random 1-cell X/G → Y/H. Per orbit of X a target point y and a hom G_x → H_y are
    /// chosen, then spread over the orbit with random twists h_p.
    pub fn onecell(&mut self, x: &ZeroCell, y: &ZeroCell) -> Option<OneCell> {
        if y.size() == 0 && x.size() > 0 {
            return None;
        }
        let (g, h) = (x.group(), y.group());
        let ng = g.order();
        let mut alpha = vec![0; x.size()];
        let mut theta = vec![0; x.size() * ng];
        for (i, o) in x.orbits().iter().enumerate() {
            let (gx, gx_incl) = x.stabilizer_group(i).clone();
            let target = self.rng.gen_range(0..y.size());
            let (hy, hy_incl) = subgroup_group(h, &y.stabilizer_of(target));
            let phi = self.hom(&gx, &hy);
            let mut pos = vec![usize::MAX; ng];
            for (k, &e) in gx_incl.map.iter().enumerate() {
                pos[e] = k;
            }
            let twist: Vec<usize> = (0..x.size()).map(|_| self.rng.gen_range(0..h.order())).collect();
            for &p in &o.points {
                alpha[p] = y.act(twist[p], target);
                let tp = x.transporter(p);
                for a in g.elements() {
                    let q = x.act(a, p);
                    let inner = g.mul(g.mul(g.inv(x.transporter(q)), a), tp);
                    let core = hy_incl.apply(phi.apply(pos[inner]));
                    theta[p * ng + a] = h.mul(h.mul(twist[q], core), h.inv(twist[p]));
                }
            }
        }
        Some(OneCell::new(x, y, alpha, theta).expect("sampled 1-cell is valid"))
    }

    /// A random 1-cell between freshly sampled 0-cells.
    pub fn any_onecell(&mut self, max_order: usize, max_size: usize) -> OneCell {
        loop {
            let x = self.zerocell(max_order, max_size);
            let y = self.zerocell(max_order, max_size);
            if let Some(a) = self.onecell(&x, &y) {
                return a;
            }
        }
    }

    /// A 2-cell out of `a` with random components; its target is determined by them.
    pub fn twocell(&mut self, a: &OneCell) -> TwoCell {
        let (x, h) = (&a.src, a.dst.group());
        let g = x.group();
        let eps: Vec<usize> = (0..x.size()).map(|_| self.rng.gen_range(0..h.order())).collect();
        let alpha = (0..x.size()).map(|p| a.dst.act(eps[p], a.alpha[p])).collect();
        let mut theta = Vec::with_capacity(a.theta.len());
        for p in 0..x.size() {
            for s in g.elements() {
                theta.push(h.mul(h.mul(eps[x.act(s, p)], a.th(p, s)), h.inv(eps[p])));
            }
        }
        let b = OneCell::new(&a.src, &a.dst, alpha, theta).expect("conjugated 1-cell is valid");
        TwoCell::new(a, &b, eps).expect("sampled 2-cell is valid")
    }

    /// A span dom ← W → cod with a random apex.
    pub fn span(&mut self, dom: &ZeroCell, cod: &ZeroCell, max_order: usize, max_size: usize) -> Span {
        loop {
            let w = self.zerocell(max_order, max_size);
            if let (Some(l), Some(r)) = (self.onecell(&w, cod), self.onecell(&w, dom)) {
                return Span::new(l, r).expect("legs share the apex");
            }
        }
    }

    /// A random H-G-biset with at most `max_size` elements, as a union of transitive pieces.
    pub fn biset(&mut self, h: &Group, g: &Group, max_size: usize) -> Biset {
        let hg = direct_product(h, g);
        let n = hg.order();
        let mut out: Option<Biset> = None;
        let pieces = self.rng.gen_range(1..=2);
        for _ in 0..pieces {
            let room = max_size - out.as_ref().map_or(0, |b| b.size());
            let mut piece = None;
            for _ in 0..50 {
                let k = self.rng.gen_range(1..=3);
                let gens: Vec<usize> = (0..k).map(|_| self.rng.gen_range(0..n)).collect();
                let l = generated(&hg, &gens);
                if n / l.len() <= room {
                    piece = Some(Biset::transitive(h, g, &l));
                    break;
                }
            }
            let Some(p) = piece else { break };
            out = Some(match out {
                None => p,
                Some(b) => b.disjoint_union(&p).expect("same groups"),
            });
        }
        out.unwrap_or_else(|| Biset::transitive(h, g, &(0..n).collect::<Vec<_>>()))
    }
}

/// Every G-set with 1..=`max_size` points up to isomorphism, as unions of coset spaces of
/// conjugacy class representatives taken in non-decreasing class order.
pub fn gsets_up_to_iso(g: &Group, max_size: usize) -> Vec<GSet> {
    let lattice = subgroup_lattice(g).expect("catalog groups are small");
    let types: Vec<GSet> = (0..lattice.num_classes())
        .map(|c| GSet::cosets(g, lattice.class_rep(c)).0)
        .filter(|t| t.size() <= max_size)
        .collect();
    fn go(types: &[GSet], from: usize, cur: Option<GSet>, room: usize, out: &mut Vec<GSet>) {
        for (i, t) in types.iter().enumerate().skip(from) {
            if t.size() > room {
                continue;
            }
            let next = match &cur {
                None => t.clone(),
                Some(c) => c.disjoint_union(t).expect("same group"),
            };
            out.push(next.clone());
            go(types, i, Some(next), room - t.size(), out);
        }
    }
    let mut out = Vec::new();
    go(&types, 0, None, max_size, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_are_valid_and_reproducible() {
        let mut s = Sampler::new(7);
        let mut t = Sampler::new(7);
        for _ in 0..30 {
            let a = s.any_onecell(8, 5);
            let b = t.any_onecell(8, 5);
            assert_eq!((a.alpha.clone(), a.theta.clone()), (b.alpha, b.theta));
        }
        for _ in 0..30 {
            let a = s.any_onecell(8, 5);
            s.twocell(&a).validate().unwrap();
            let (h, g) = (s.group(6), s.group(6));
            let u = s.biset(&h, &g, 8);
            assert!(u.size() <= 8);
            u.validate().unwrap();
        }
    }

    #[test]
    fn gset_counts() {
        // C2-sets of size 1..=3: 1, 1+1, C2, 1+1+1, 1+C2
        assert_eq!(gsets_up_to_iso(&crate::group::cyclic(2), 3).len(), 5);
        // S3-sets of size ≤ 3: 1, 2·1, S3/C3, 3·1, 1+S3/C3, S3/C2
        assert_eq!(gsets_up_to_iso(&crate::group::symmetric(3), 3).len(), 6);
    }
}
