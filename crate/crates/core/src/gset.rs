//! Finite left G-sets, orbits, equivariant maps and induction.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::group::{same_group, subgroup_group, Group, GroupHom};

#[derive(Clone, Debug)]
pub struct Orbit {
    /// Minimum point of the orbit.
    pub rep: usize,
    pub points: Vec<usize>,
    /// Stabilizer of `rep`, sorted.
    pub stabilizer: Vec<usize>,
}

#[derive(Clone)]
pub struct GSet {
    group: Group,
    size: usize,
    act: Vec<usize>,
    orbits: Arc<OnceLock<OrbitData>>,
}

#[derive(Clone, Debug)]
struct OrbitData {
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    /// Least g with g·rep = x.
    transporter: Vec<usize>,
    stab_groups: Vec<OnceLock<(Group, GroupHom)>>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet({} on {} points)", self.group.label(), self.size)
    }
}

impl PartialEq for GSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.act == other.act && same_group(&self.group, &other.group)
    }
}

impl GSet {
    /// `rows[g][x]` = g·x.
    pub fn new(group: &Group, size: usize, rows: &[Vec<usize>]) -> Result<Self> {
        if rows.len() != group.order() || rows.iter().any(|r| r.len() != size || r.iter().any(|&v| v >= size)) {
            return Err(Error::InvalidAction("table has wrong shape".into()));
        }
        let act: Vec<usize> = rows.iter().flatten().copied().collect();
        let s = GSet::from_flat(group, size, act);
        s.validate()?;
        Ok(s)
    }

    pub fn from_flat(group: &Group, size: usize, act: Vec<usize>) -> Self {
        debug_assert_eq!(act.len(), group.order() * size);
        GSet { group: group.clone(), size, act, orbits: Arc::new(OnceLock::new()) }
    }

    pub fn from_fn(group: &Group, size: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let mut act = Vec::with_capacity(group.order() * size);
        for g in group.elements() {
            for x in 0..size {
                act.push(f(g, x));
            }
        }
        GSet::from_flat(group, size, act)
    }

    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        for x in 0..self.size {
            if self.act(0, x) != x {
                return Err(Error::InvalidAction(format!("identity moves point {x}")));
            }
        }
        for a in g.elements() {
            let mut seen = vec![false; self.size];
            for x in 0..self.size {
                let y = self.act(a, x);
                if seen[y] {
                    return Err(Error::InvalidAction(format!("element {a} is not a bijection")));
                }
                seen[y] = true;
            }
            for b in g.elements() {
                for x in 0..self.size {
                    if self.act(g.mul(a, b), x) != self.act(a, self.act(b, x)) {
                        return Err(Error::InvalidAction(format!("not a left action at ({a},{b},{x})")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: &Group, size: usize) -> Self {
        GSet::from_fn(group, size, |_, x| x)
    }

    pub fn point(group: &Group) -> Self {
        GSet::trivial(group, 1)
    }

    pub fn regular(group: &Group) -> Self {
        let g = group.clone();
        GSet::from_fn(group, group.order(), move |a, x| g.mul(a, x))
    }

    /// Left cosets of `sub`, ordered by least element; returns the set and coset minima.
    pub fn cosets(group: &Group, sub: &[usize]) -> (Self, Vec<usize>) {
        let mut coset_of = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for x in group.elements() {
            if coset_of[x] == usize::MAX {
                for &s in sub {
                    coset_of[group.mul(x, s)] = reps.len();
                }
                reps.push(x);
            }
        }
        let g = group.clone();
        let r = reps.clone();
        (GSet::from_fn(group, reps.len(), move |a, c| coset_of[g.mul(a, r[c])]), reps)
    }

    /// Restriction along f: K → G.
    pub fn restrict(&self, f: &GroupHom) -> Self {
        GSet::from_fn(&f.src, self.size, |k, x| self.act(f.map[k], x))
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.group.order()).map(|g| self.act[g * self.size..(g + 1) * self.size].to_vec()).collect()
    }

    pub fn flat(&self) -> &[usize] {
        &self.act
    }

    pub fn disjoint_union(&self, other: &GSet) -> Result<GSet> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::GroupMismatch("disjoint union over different groups".into()));
        }
        let n = self.size;
        Ok(GSet::from_fn(&self.group, n + other.size, |g, x| if x < n { self.act(g, x) } else { n + other.act(g, x - n) }))
    }

    fn data(&self) -> &OrbitData {
        self.orbits.get_or_init(|| {
            let mut orbit_of = vec![usize::MAX; self.size];
            let mut transporter = vec![usize::MAX; self.size];
            let mut orbits = Vec::new();
            for x in 0..self.size {
                if orbit_of[x] != usize::MAX {
                    continue;
                }
                let idx = orbits.len();
                let mut stabilizer = Vec::new();
                let mut points = Vec::new();
                for g in self.group.elements() {
                    let y = self.act(g, x);
                    if y == x {
                        stabilizer.push(g);
                    }
                    if orbit_of[y] == usize::MAX {
                        orbit_of[y] = idx;
                        transporter[y] = g;
                        points.push(y);
                    }
                }
                points.sort_unstable();
                orbits.push(Orbit { rep: x, points, stabilizer });
            }
            let stab_groups = (0..orbits.len()).map(|_| OnceLock::new()).collect();
            OrbitData { orbits, orbit_of, transporter, stab_groups }
        })
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.data().orbits
    }

    pub fn orbit_index(&self, x: usize) -> usize {
        self.data().orbit_of[x]
    }

    /// Least group element carrying the orbit representative to x.
    pub fn transporter(&self, x: usize) -> usize {
        self.data().transporter[x]
    }

    pub fn orbit_rep(&self, x: usize) -> usize {
        self.orbits()[self.orbit_index(x)].rep
    }

    /// Stabilizer of the i-th orbit representative as a group with its inclusion.
    pub fn stabilizer_group(&self, i: usize) -> &(Group, GroupHom) {
        let d = self.data();
        d.stab_groups[i].get_or_init(|| subgroup_group(&self.group, &d.orbits[i].stabilizer))
    }

    pub fn stabilizer_of(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&g| self.act(g, x) == x).collect()
    }

    pub fn fixed_points(&self, sub: &[usize]) -> Vec<usize> {
        (0..self.size).filter(|&x| sub.iter().all(|&g| self.act(g, x) == x)).collect()
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() == 1
    }
}

#[derive(Clone, Debug)]
pub struct EquivariantMap {
    pub src: GSet,
    pub dst: GSet,
    pub map: Vec<usize>,
}

impl EquivariantMap {
    pub fn new(src: &GSet, dst: &GSet, map: Vec<usize>) -> Result<Self> {
        if !same_group(src.group(), dst.group()) {
            return Err(Error::GroupMismatch("equivariant map between different groups".into()));
        }
        if map.len() != src.size() || map.iter().any(|&y| y >= dst.size()) {
            return Err(Error::InvalidAction("map table has wrong shape".into()));
        }
        for g in src.group().elements() {
            for x in 0..src.size() {
                if map[src.act(g, x)] != dst.act(g, map[x]) {
                    return Err(Error::InvalidAction(format!("not equivariant at ({g},{x})")));
                }
            }
        }
        Ok(EquivariantMap { src: src.clone(), dst: dst.clone(), map })
    }
}

/// Induction along an injective hom; the class map is indexed by (ξ, x) ↦ ξ·|X| + x.
pub fn induce(iota: &GroupHom, x: &GSet) -> Result<(GSet, Vec<usize>)> {
    if !iota.is_injective() {
        return Err(Error::NonInjectiveHom);
    }
    if !same_group(&iota.src, x.group()) {
        return Err(Error::GroupMismatch("induction source group differs from the set's group".into()));
    }
    let g = &iota.dst;
    let h = &iota.src;
    let n = x.size();
    let mut class = vec![usize::MAX; g.order() * n];
    let mut reps: Vec<(usize, usize)> = Vec::new();
    for xi in g.elements() {
        for p in 0..n {
            if class[xi * n + p] != usize::MAX {
                continue;
            }
            let c = reps.len();
            for k in h.elements() {
                // (ξ ι(k)^{-1}, k x)
                let xi2 = g.mul(xi, g.inv(iota.map[k]));
                class[xi2 * n + x.act(k, p)] = c;
            }
            reps.push((xi, p));
        }
    }
    let cls = class.clone();
    let act = GSet::from_fn(g, reps.len(), |a, c| {
        let (xi, p) = reps[c];
        cls[g.mul(a, xi) * n + p]
    });
    Ok((act, class))
}

/// Equivariant bijection A → B over the same group, if one exists.
pub fn gset_isomorphism(a: &GSet, b: &GSet) -> Option<Vec<usize>> {
    if a.size() != b.size() || !same_group(a.group(), b.group()) {
        return None;
    }
    let g = a.group();
    let mut used = vec![false; b.orbits().len()];
    let mut map = vec![usize::MAX; a.size()];
    for oa in a.orbits() {
        let mut done = false;
        for (j, ob) in b.orbits().iter().enumerate() {
            if used[j] || ob.points.len() != oa.points.len() {
                continue;
            }
            // find y in ob with Stab(y) = Stab(rep_a)
            let target = ob.points.iter().copied().find(|&y| oa.stabilizer.iter().all(|&s| b.act(s, y) == y));
            if let Some(y) = target {
                for gg in g.elements() {
                    map[a.act(gg, oa.rep)] = b.act(gg, y);
                }
                used[j] = true;
                done = true;
                break;
            }
        }
        if !done {
            return None;
        }
    }
    Some(map)
}

/// Stabilizer-class signature of a G-set: counts of orbits keyed by the canonical class label.
pub fn orbit_signature(a: &GSet, lattice: &crate::group::SubgroupLattice) -> Vec<usize> {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for o in a.orbits() {
        let idx = lattice.index_of(&o.stabilizer).expect("stabilizer is a subgroup");
        *counts.entry(lattice.class_of[idx]).or_insert(0) += 1;
    }
    let mut v = vec![0; lattice.num_classes()];
    for (c, k) in counts {
        v[c] = k;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    #[test]
    fn orbit_examples() {
        let c2 = cyclic(2);
        let r = GSet::regular(&c2);
        assert_eq!(r.orbits().len(), 1);
        assert_eq!(r.orbits()[0].stabilizer, vec![0]);
        let t = GSet::trivial(&c2, 3);
        assert_eq!(t.orbits().len(), 3);
        assert!(t.orbits().iter().all(|o| o.stabilizer.len() == 2));
        let s3 = symmetric(3);
        let stab0: Vec<usize> = {
            let l = subgroup_lattice(&s3).unwrap();
            l.subgroups.iter().find(|s| s.len() == 2).unwrap().clone()
        };
        let (cos, _) = GSet::cosets(&s3, &stab0);
        assert_eq!(cos.orbits().len(), 1);
        assert_eq!(cos.orbits()[0].stabilizer.len(), 2);
    }

    #[test]
    fn induce_examples() {
        let s3 = symmetric(3);
        let l = subgroup_lattice(&s3).unwrap();
        let c2sub = l.subgroups.iter().find(|s| s.len() == 2).unwrap().clone();
        let (c2, incl) = subgroup_group(&s3, &c2sub);
        let (ind, _) = induce(&incl, &GSet::point(&c2)).unwrap();
        assert_eq!(ind.size(), 3);
        let (cos, _) = GSet::cosets(&s3, &c2sub);
        assert!(gset_isomorphism(&ind, &cos).is_some());

        let c2g = cyclic(2);
        let e = trivial();
        let iota = GroupHom::new(&e, &c2g, vec![0]).unwrap();
        let (reg, _) = induce(&iota, &GSet::point(&e)).unwrap();
        assert!(gset_isomorphism(&reg, &GSet::regular(&c2g)).is_some());

        let x = GSet::regular(&s3).disjoint_union(&cos).unwrap();
        let (same, _) = induce(&GroupHom::identity(&s3), &x).unwrap();
        assert!(gset_isomorphism(&same, &x).is_some());
    }

    #[test]
    fn induce_rejects_non_injective() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let f = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(induce(&f, &GSet::point(&c4)).unwrap_err(), Error::NonInjectiveHom);
    }

    #[test]
    fn iso_distinguishes_free_from_trivial() {
        let c2 = cyclic(2);
        assert!(gset_isomorphism(&GSet::regular(&c2), &GSet::trivial(&c2, 2)).is_none());
    }
}
