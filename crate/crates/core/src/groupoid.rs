//! Finite groupoids, functors, natural transformations and the el realization.

use std::sync::Arc;

use crate::cell::{OneCell, TwoCell, ZeroCell};
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteGroup, Group};
use crate::gset::GSet;

/// A finite groupoid with explicit morphisms.
///
/// Composition is stored per morphism f as the list of g∘f for g in out(dst f), indexed by
/// g's position in that list.
#[derive(Clone, Debug)]
pub struct FiniteGroupoid {
    n_obj: usize,
    src: Vec<usize>,
    dst: Vec<usize>,
    ident: Vec<usize>,
    inv: Vec<usize>,
    out: Vec<Vec<usize>>,
    pos_in_out: Vec<usize>,
    comp: Vec<Vec<usize>>,
}

impl PartialEq for FiniteGroupoid {
    fn eq(&self, o: &Self) -> bool {
        self.n_obj == o.n_obj && self.src == o.src && self.dst == o.dst && self.comp == o.comp && self.ident == o.ident
    }
}

impl FiniteGroupoid {
    /// Builds from endpoints, identities and a composition function `compose(g, f) = g∘f`.
    /// Validates identities, associativity and invertibility.
    pub fn new(
        n_obj: usize,
        ends: Vec<(usize, usize)>,
        ident: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let g = Self::build(n_obj, ends, ident, compose)?;
        g.validate()?;
        Ok(g)
    }

    fn build(
        n_obj: usize,
        ends: Vec<(usize, usize)>,
        ident: Vec<usize>,
        compose: impl Fn(usize, usize) -> Option<usize>,
    ) -> Result<Self> {
        let m = ends.len();
        if ident.len() != n_obj || ends.iter().any(|&(a, b)| a >= n_obj || b >= n_obj) || ident.iter().any(|&i| i >= m) {
            return Err(Error::NotAGroupoid("endpoint or identity out of range".into()));
        }
        let src: Vec<usize> = ends.iter().map(|e| e.0).collect();
        let dst: Vec<usize> = ends.iter().map(|e| e.1).collect();
        let mut out = vec![Vec::new(); n_obj];
        let mut pos_in_out = vec![0; m];
        for f in 0..m {
            pos_in_out[f] = out[src[f]].len();
            out[src[f]].push(f);
        }
        let mut comp = Vec::with_capacity(m);
        for f in 0..m {
            let mut row = Vec::with_capacity(out[dst[f]].len());
            for &g in &out[dst[f]] {
                let h = compose(g, f).ok_or_else(|| Error::NotAGroupoid(format!("missing composite {g}∘{f}")))?;
                if h >= m || src[h] != src[f] || dst[h] != dst[g] {
                    return Err(Error::NotAGroupoid(format!("composite {g}∘{f} has wrong endpoints")));
                }
                row.push(h);
            }
            comp.push(row);
        }
        let mut gp = FiniteGroupoid { n_obj, src, dst, ident, inv: vec![usize::MAX; m], out, pos_in_out, comp };
        for f in 0..m {
            let a = gp.src[f];
            if let Some(&g) = gp.out[gp.dst[f]].iter().find(|&&g| gp.dst[g] == a && gp.compose(g, f) == gp.ident[a]) {
                gp.inv[f] = g;
            } else {
                return Err(Error::NotAGroupoid(format!("morphism {f} is not invertible")));
            }
        }
        Ok(gp)
    }

    /// From a JSON-style composition list of triples (g, f, g∘f).
    pub fn from_table(n_obj: usize, ends: Vec<(usize, usize)>, ident: Vec<usize>, table: &[(usize, usize, usize)]) -> Result<Self> {
        let map: std::collections::HashMap<(usize, usize), usize> = table.iter().map(|&(g, f, h)| ((g, f), h)).collect();
        Self::new(n_obj, ends, ident, |g, f| map.get(&(g, f)).copied())
    }

    pub fn validate(&self) -> Result<()> {
        for a in 0..self.n_obj {
            let i = self.ident[a];
            if self.src[i] != a || self.dst[i] != a {
                return Err(Error::NotAGroupoid(format!("identity of {a} has wrong endpoints")));
            }
        }
        for f in 0..self.morphisms() {
            if self.compose(self.ident[self.dst[f]], f) != f || self.compose(f, self.ident[self.src[f]]) != f {
                return Err(Error::NotAGroupoid(format!("identity law fails at {f}")));
            }
        }
        for f in 0..self.morphisms() {
            for &g in &self.out[self.dst[f]] {
                let gf = self.compose(g, f);
                for &h in &self.out[self.dst[g]] {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(Error::NotAGroupoid(format!("associativity fails at ({h},{g},{f})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// One object with the group as automorphisms.
    pub fn from_group(g: &FiniteGroup) -> Self {
        let n = g.order();
        Self::build(1, vec![(0, 0); n], vec![0], |a, b| Some(g.mul(a, b))).expect("group")
    }

    /// Disjoint union; morphisms of `other` are shifted after those of `self`.
    pub fn coproduct(&self, other: &FiniteGroupoid) -> Self {
        let (n, m) = (self.n_obj, self.morphisms());
        let mut ends: Vec<(usize, usize)> = (0..m).map(|f| (self.src[f], self.dst[f])).collect();
        ends.extend((0..other.morphisms()).map(|f| (other.src[f] + n, other.dst[f] + n)));
        let mut ident = self.ident.clone();
        ident.extend(other.ident.iter().map(|&i| i + m));
        Self::build(n + other.n_obj, ends, ident, |g, f| match (g < m, f < m) {
            (true, true) => Some(self.compose(g, f)),
            (false, false) => Some(other.compose(g - m, f - m) + m),
            _ => None,
        })
        .expect("coproduct of groupoids")
    }

    pub fn objects(&self) -> usize {
        self.n_obj
    }

    pub fn morphisms(&self) -> usize {
        self.src.len()
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn dst(&self, f: usize) -> usize {
        self.dst[f]
    }

    pub fn id(&self, a: usize) -> usize {
        self.ident[a]
    }

    pub fn inv(&self, f: usize) -> usize {
        self.inv[f]
    }

    pub fn out(&self, a: usize) -> &[usize] {
        &self.out[a]
    }

    /// g∘f; panics when not composable.
    #[inline]
    pub fn compose(&self, g: usize, f: usize) -> usize {
        assert_eq!(self.src[g], self.dst[f], "morphisms are not composable");
        self.comp[f][self.pos_in_out[g]]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.out[a].iter().copied().filter(|&f| self.dst[f] == b).collect()
    }

    /// Connected components, each sorted; ordered by least object.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp_of = vec![usize::MAX; self.n_obj];
        let mut out = Vec::new();
        for a in 0..self.n_obj {
            if comp_of[a] != usize::MAX {
                continue;
            }
            let c = out.len();
            let mut members = vec![a];
            comp_of[a] = c;
            let mut i = 0;
            while i < members.len() {
                for &f in &self.out[members[i]] {
                    let b = self.dst[f];
                    if comp_of[b] == usize::MAX {
                        comp_of[b] = c;
                        members.push(b);
                    }
                }
                i += 1;
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Aut(a) as a group, with the list of morphisms giving its elements (identity first).
    pub fn automorphism_group(&self, a: usize) -> (Group, Vec<usize>) {
        let mut elems = vec![self.ident[a]];
        elems.extend(self.hom(a, a).into_iter().filter(|&f| f != self.ident[a]));
        let pos: std::collections::HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let table: Vec<Vec<usize>> =
            elems.iter().map(|&f| elems.iter().map(|&g| pos[&self.compose(f, g)]).collect()).collect();
        (FiniteGroup::from_table(table).expect("automorphism group"), elems)
    }
}

/// A functor between finite groupoids.
#[derive(Clone, Debug, PartialEq)]
pub struct Functor {
    pub src: Arc<FiniteGroupoid>,
    pub dst: Arc<FiniteGroupoid>,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

impl Functor {
    pub fn new(src: &Arc<FiniteGroupoid>, dst: &Arc<FiniteGroupoid>, obj: Vec<usize>, mor: Vec<usize>) -> Result<Self> {
        let f = Functor { src: src.clone(), dst: dst.clone(), obj, mor };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let (i, j) = (&self.src, &self.dst);
        if self.obj.len() != i.objects() || self.mor.len() != i.morphisms() {
            return Err(Error::ShapeMismatch("functor tables have wrong length".into()));
        }
        if self.obj.iter().any(|&b| b >= j.objects()) || self.mor.iter().any(|&m| m >= j.morphisms()) {
            return Err(Error::ShapeMismatch("functor image out of range".into()));
        }
        for f in 0..i.morphisms() {
            let m = self.mor[f];
            if j.src(m) != self.obj[i.src(f)] || j.dst(m) != self.obj[i.dst(f)] {
                return Err(Error::ShapeMismatch(format!("morphism {f} sent to wrong endpoints")));
            }
            for &g in i.out(i.dst(f)) {
                if self.mor[i.compose(g, f)] != j.compose(self.mor[g], m) {
                    return Err(Error::ShapeMismatch(format!("composition not preserved at ({g},{f})")));
                }
            }
        }
        for a in 0..i.objects() {
            if self.mor[i.id(a)] != j.id(self.obj[a]) {
                return Err(Error::ShapeMismatch(format!("identity of {a} not preserved")));
            }
        }
        Ok(())
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        Functor { src: g.clone(), dst: g.clone(), obj: (0..g.objects()).collect(), mor: (0..g.morphisms()).collect() }
    }

    /// self ∘ other
    pub fn compose(&self, other: &Functor) -> Functor {
        Functor {
            src: other.src.clone(),
            dst: self.dst.clone(),
            obj: other.obj.iter().map(|&b| self.obj[b]).collect(),
            mor: other.mor.iter().map(|&m| self.mor[m]).collect(),
        }
    }
}

/// A natural transformation F ⇒ F′ with components F(a) → F′(a).
#[derive(Clone, Debug, PartialEq)]
pub struct NatTrans {
    pub src: Functor,
    pub dst: Functor,
    pub comp: Vec<usize>,
}

impl NatTrans {
    pub fn validate(&self) -> Result<()> {
        let (f, f2) = (&self.src, &self.dst);
        let (i, j) = (&f.src, &f.dst);
        for a in 0..i.objects() {
            let c = self.comp[a];
            if j.src(c) != f.obj[a] || j.dst(c) != f2.obj[a] {
                return Err(Error::ShapeMismatch(format!("component at {a} has wrong endpoints")));
            }
        }
        for m in 0..i.morphisms() {
            let (a, b) = (i.src(m), i.dst(m));
            if j.compose(self.comp[b], f.mor[m]) != j.compose(f2.mor[m], self.comp[a]) {
                return Err(Error::ShapeMismatch(format!("naturality fails at morphism {m}")));
            }
        }
        Ok(())
    }
}

/// Natural isomorphism F ≅ F′ between parallel functors, if one exists.
pub fn find_natural_iso(f: &Functor, f2: &Functor) -> Option<NatTrans> {
    let (i, j) = (&f.src, &f.dst);
    let mut comp = vec![usize::MAX; i.objects()];
    for members in i.components() {
        let a0 = members[0];
        // spanning arrows a0 → a
        let mut reach = vec![usize::MAX; i.objects()];
        reach[a0] = i.id(a0);
        for &a in &members {
            if a != a0 {
                reach[a] = i.hom(a0, a)[0];
            }
        }
        let auts = i.hom(a0, a0);
        let mut found = false;
        for c0 in j.hom(f.obj[a0], f2.obj[a0]) {
            if auts.iter().all(|&s| j.compose(c0, f.mor[s]) == j.compose(f2.mor[s], c0)) {
                for &a in &members {
                    let r = reach[a];
                    comp[a] = j.compose(j.compose(f2.mor[r], c0), j.inv(f.mor[r]));
                }
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    let t = NatTrans { src: f.clone(), dst: f2.clone(), comp };
    debug_assert!(t.validate().is_ok());
    Some(t)
}

/// el(X/G): objects are points, the morphism (x,g): x → gx has index x·|G| + g.
pub fn el(x: &ZeroCell) -> FiniteGroupoid {
    let g = x.group();
    let n = g.order();
    let ends = (0..x.size()).flat_map(|p| g.elements().map(move |s| (p, s))).map(|(p, s)| (p, x.act(s, p))).collect();
    let ident = (0..x.size()).map(|p| p * n).collect();
    // out(gx) is listed as (gx, s) for s in G, so composites are computed directly
    FiniteGroupoid::build(x.size(), ends, ident, |b, a| {
        let (p, s) = (a / n, a % n);
        let t = b % n;
        Some(p * n + g.mul(t, s))
    })
    .expect("el of a G-set")
}

pub fn el1(a: &OneCell, src: &Arc<FiniteGroupoid>, dst: &Arc<FiniteGroupoid>) -> Functor {
    let nh = a.dst.group().order();
    let ng = a.src.group().order();
    let mor = (0..a.src.size() * ng).map(|m| a.alpha[m / ng] * nh + a.theta[m]).collect();
    Functor { src: src.clone(), dst: dst.clone(), obj: a.alpha.clone(), mor }
}

/// Inverse of `el1`: reads α from objects and θ from the group component of morphisms.
pub fn el1_inverse(f: &Functor, x: &ZeroCell, y: &ZeroCell) -> Result<OneCell> {
    let nh = y.group().order();
    OneCell::new(x, y, f.obj.clone(), f.mor.iter().map(|&m| m % nh).collect())
}

pub fn el2(e: &TwoCell, fa: &Functor, fb: &Functor) -> NatTrans {
    let nh = e.src.dst.group().order();
    NatTrans { src: fa.clone(), dst: fb.clone(), comp: e.eps.iter().enumerate().map(|(p, &k)| e.src.alpha[p] * nh + k).collect() }
}

pub fn el2_inverse(t: &NatTrans, a: &OneCell, b: &OneCell) -> Result<TwoCell> {
    let nh = a.dst.group().order();
    TwoCell::new(a, b, t.comp.iter().map(|&m| m % nh).collect())
}

/// A 0-cell equivalent to a groupoid, with functors el(X) → 𝒢 and 𝒢 → el(X).
#[derive(Clone, Debug)]
pub struct Realization {
    pub cell: ZeroCell,
    pub el: Arc<FiniteGroupoid>,
    pub to_groupoid: Functor,
    pub from_groupoid: Functor,
}

/// For components with base objects x_i, the group is ∏ Aut(x_i) acting on ⊔ of the cosets
/// of the factor subgroups; each orbit is then pt/Aut(x_i).
pub fn groupoid_to_zerocell(gp: &Arc<FiniteGroupoid>) -> Result<Realization> {
    gp.validate()?;
    let comps = gp.components();
    let auts: Vec<(Group, Vec<usize>)> = comps.iter().map(|c| gp.automorphism_group(c[0])).collect();
    let mut big: Group = crate::group::trivial();
    for (a, _) in &auts {
        big = direct_product(&big, a);
    }
    let k = auts.len();
    // coordinate of component i in an element of the product
    let orders: Vec<usize> = auts.iter().map(|(a, _)| a.order()).collect();
    let coords = |e: usize| -> Vec<usize> {
        let mut v = vec![0; k];
        let mut r = e;
        for i in (0..k).rev() {
            v[i] = r % orders[i];
            r /= orders[i];
        }
        v
    };
    let cofactor: Vec<usize> = (0..k).map(|i| orders.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &o)| o).product()).collect();
    // points of component i: index into the product of the other factors
    let mut offset = vec![0; k + 1];
    for i in 0..k {
        offset[i + 1] = offset[i] + cofactor[i];
    }
    let point_of = |i: usize, c: &[usize]| -> usize {
        let mut idx = 0;
        for j in 0..k {
            if j != i {
                idx = idx * orders[j] + c[j];
            }
        }
        offset[i] + idx
    };
    let total = offset[k];
    let mut comp_of_point = vec![0; total];
    let mut point_coords = vec![Vec::new(); total];
    for i in 0..k {
        for e in big.elements() {
            let mut c = coords(e);
            c[i] = 0;
            let p = point_of(i, &c);
            comp_of_point[p] = i;
            point_coords[p] = c;
        }
    }
    let set = GSet::from_fn(&big, total, |e, p| {
        let i = comp_of_point[p];
        let ce = coords(e);
        let c: Vec<usize> = (0..k).map(|j| if j == i { 0 } else { auts[j].0.mul(ce[j], point_coords[p][j]) }).collect();
        point_of(i, &c)
    });
    let cell = ZeroCell::new(set);
    let elg = Arc::new(el(&cell));
    // el(X) → 𝒢: point p ↦ base object; (p, e) ↦ the automorphism e_i
    let n = big.order();
    let to_obj: Vec<usize> = (0..total).map(|p| comps[comp_of_point[p]][0]).collect();
    let to_mor: Vec<usize> = (0..total * n).map(|m| {
        let (p, e) = (m / n, m % n);
        let i = comp_of_point[p];
        auts[i].1[coords(e)[i]]
    }).collect();
    let to_groupoid = Functor { src: elg.clone(), dst: gp.clone(), obj: to_obj, mor: to_mor };
    // 𝒢 → el(X): object a ↦ base point of its component; f: a → b ↦ r_b^{-1} f r_a
    let mut comp_index = vec![0; gp.objects()];
    let mut reach = vec![usize::MAX; gp.objects()];
    for (i, c) in comps.iter().enumerate() {
        for &a in c {
            comp_index[a] = i;
            reach[a] = if a == c[0] { gp.id(a) } else { gp.hom(c[0], a)[0] };
        }
    }
    let base_point: Vec<usize> = (0..k).map(|i| point_of(i, &vec![0; k])).collect();
    let from_obj: Vec<usize> = (0..gp.objects()).map(|a| base_point[comp_index[a]]).collect();
    let auto_pos: Vec<std::collections::HashMap<usize, usize>> =
        auts.iter().map(|(_, els)| els.iter().enumerate().map(|(j, &f)| (f, j)).collect()).collect();
    let from_mor: Vec<usize> = (0..gp.morphisms())
        .map(|f| {
            let (a, b) = (gp.src(f), gp.dst(f));
            let i = comp_index[a];
            let aut = gp.compose(gp.inv(reach[b]), gp.compose(f, reach[a]));
            let mut c = vec![0; k];
            c[i] = auto_pos[i][&aut];
            let mut e = 0;
            for j in 0..k {
                e = e * orders[j] + c[j];
            }
            base_point[i] * n + e
        })
        .collect();
    let from_groupoid = Functor { src: gp.clone(), dst: elg.clone(), obj: from_obj, mor: from_mor };
    Ok(Realization { cell, el: elg, to_groupoid, from_groupoid })
}

/// Checks that two functors form an equivalence by exhibiting natural isomorphisms to identities.
pub fn is_equivalence_pair(f: &Functor, g: &Functor) -> bool {
    let gf = g.compose(f);
    let fg = f.compose(g);
    find_natural_iso(&gf, &Functor::identity(&f.src)).is_some() && find_natural_iso(&fg, &Functor::identity(&f.dst)).is_some()
}

/// (component size, |Aut| of its least object) per component.
pub fn component_sizes(gp: &FiniteGroupoid) -> Vec<(usize, usize)> {
    gp.components().iter().map(|c| (c.len(), gp.hom(c[0], c[0]).len())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cell::{bicoproduct, find_twocell, orbit_decompose};
    use crate::group::*;

    #[test]
    fn el_examples() {
        let s3 = symmetric(3);
        let g = el(&ZeroCell::pt(&s3));
        assert_eq!((g.objects(), g.morphisms()), (1, 6));
        let c2 = cyclic(2);
        let r = el(&ZeroCell::new(GSet::regular(&c2)));
        assert_eq!(r.objects(), 2);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(r.hom(a, b).len(), 1);
            }
        }
        r.validate().unwrap();
    }

    #[test]
    fn el_functorial_and_round_trips() {
        let c2 = cyclic(2);
        let r = ZeroCell::new(GSet::regular(&c2));
        let a = OneCell::from_rows(&r, &r, vec![1, 0], &[vec![0, 1], vec![0, 1]]).unwrap();
        let er = Arc::new(el(&r));
        let fa = el1(&a, &er, &er);
        fa.validate().unwrap();
        assert_eq!(el1_inverse(&fa, &r, &r).unwrap(), a);
        let aa = a.compose(&a).unwrap();
        assert_eq!(el1(&aa, &er, &er), fa.compose(&fa));
        let w = find_twocell(&a, &a).unwrap();
        let t = el2(&w, &fa, &fa);
        t.validate().unwrap();
        assert_eq!(el2_inverse(&t, &a, &a).unwrap().eps, w.eps);
    }

    #[test]
    fn el_sends_bicoproduct_to_coproduct() {
        let (c2, c3) = (cyclic(2), cyclic(3));
        let (x, y) = (ZeroCell::pt(&c2), ZeroCell::new(GSet::regular(&c3)));
        let b = bicoproduct(&x, &y);
        let lhs = Arc::new(el(&b.object));
        let rhs = Arc::new(el(&x).coproduct(&el(&y)));
        let l = groupoid_to_zerocell(&lhs).unwrap();
        let r = groupoid_to_zerocell(&rhs).unwrap();
        assert_eq!(component_sizes(&lhs).len(), component_sizes(&rhs).len());
        let mut ls: Vec<usize> = orbit_decompose(&l.cell).iter().map(|p| p.stabilizer.order()).collect();
        let mut rs: Vec<usize> = orbit_decompose(&r.cell).iter().map(|p| p.stabilizer.order()).collect();
        ls.sort();
        rs.sort();
        assert_eq!(ls, rs);
    }

    #[test]
    fn realization_examples() {
        let s3 = symmetric(3);
        let g = Arc::new(FiniteGroupoid::from_group(&s3));
        let r = groupoid_to_zerocell(&g).unwrap();
        assert_eq!((r.cell.size(), r.cell.group().order()), (1, 6));
        r.to_groupoid.validate().unwrap();
        r.from_groupoid.validate().unwrap();
        assert!(is_equivalence_pair(&r.to_groupoid, &r.from_groupoid));

        let c2 = cyclic(2);
        let contractible = Arc::new(el(&ZeroCell::new(GSet::regular(&c2))));
        let r = groupoid_to_zerocell(&contractible).unwrap();
        assert_eq!((r.cell.size(), r.cell.group().order()), (1, 1));
        assert!(is_equivalence_pair(&r.to_groupoid, &r.from_groupoid));

        let l = subgroup_lattice(&s3).unwrap();
        let c2sub = l.subgroups.iter().find(|s| s.len() == 2).unwrap().clone();
        let x = ZeroCell::new(GSet::cosets(&s3, &c2sub).0.disjoint_union(&GSet::point(&s3)).unwrap());
        let eg = Arc::new(el(&x));
        let r = groupoid_to_zerocell(&eg).unwrap();
        r.to_groupoid.validate().unwrap();
        r.from_groupoid.validate().unwrap();
        assert!(is_equivalence_pair(&r.to_groupoid, &r.from_groupoid));
        let mut ours: Vec<usize> = orbit_decompose(&r.cell).iter().map(|p| p.stabilizer.order()).collect();
        ours.sort();
        assert_eq!(ours, vec![2, 6]);
    }

    #[test]
    fn rejects_non_groupoid() {
        // a single non-identity endomorphism e with e∘e = e is not invertible
        let r = FiniteGroupoid::from_table(1, vec![(0, 0), (0, 0)], vec![0], &[(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)]);
        assert!(matches!(r, Err(Error::NotAGroupoid(_))));
    }
}
