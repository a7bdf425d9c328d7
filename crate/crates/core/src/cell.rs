//! 0-, 1- and 2-cells of the 2-category of group actions.

use std::ops::Deref;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{direct_product, pair, same_group, unpair, Group, GroupHom};
use crate::gset::{induce, GSet};

/// A finite group together with a finite left action, written X/G.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroCell(Arc<GSet>);

impl Deref for ZeroCell {
    type Target = GSet;
    fn deref(&self) -> &GSet {
        &self.0
    }
}

impl ZeroCell {
    pub fn new(set: GSet) -> Self {
        ZeroCell(Arc::new(set))
    }

    pub fn pt(group: &Group) -> Self {
        ZeroCell::new(GSet::point(group))
    }

    pub fn empty(group: &Group) -> Self {
        ZeroCell::new(GSet::trivial(group, 0))
    }

    pub fn set(&self) -> &GSet {
        &self.0
    }

    pub fn same(&self, other: &ZeroCell) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// Product X×Y over G×H with points (x,y) at x·|Y| + y.
    pub fn product(&self, other: &ZeroCell) -> ZeroCell {
        let g = direct_product(self.group(), other.group());
        let (m, ny) = (other.group().order(), other.size());
        ZeroCell::new(GSet::from_fn(&g, self.size() * ny, |e, p| {
            let (a, b) = unpair(m, e);
            let (x, y) = unpair(ny, p);
            self.act(a, x) * ny + other.act(b, y)
        }))
    }
}

/// A 1-cell (α, θ): X/G → Y/H; θ is stored as θ[x·|G| + g].
#[derive(Clone, Debug)]
pub struct OneCell {
    pub src: ZeroCell,
    pub dst: ZeroCell,
    pub alpha: Vec<usize>,
    pub theta: Vec<usize>,
}

impl PartialEq for OneCell {
    fn eq(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.theta == other.theta && self.src.same(&other.src) && self.dst.same(&other.dst)
    }
}

impl OneCell {
    pub fn new(src: &ZeroCell, dst: &ZeroCell, alpha: Vec<usize>, theta: Vec<usize>) -> Result<Self> {
        let c = OneCell { src: src.clone(), dst: dst.clone(), alpha, theta };
        c.validate()?;
        Ok(c)
    }

    pub fn new_unchecked(src: &ZeroCell, dst: &ZeroCell, alpha: Vec<usize>, theta: Vec<usize>) -> Self {
        OneCell { src: src.clone(), dst: dst.clone(), alpha, theta }
    }

    /// `theta_rows[x][g]`.
    pub fn from_rows(src: &ZeroCell, dst: &ZeroCell, alpha: Vec<usize>, theta_rows: &[Vec<usize>]) -> Result<Self> {
        if theta_rows.len() != src.size() || theta_rows.iter().any(|r| r.len() != src.group().order()) {
            return Err(Error::InvalidOneCell("theta has wrong shape".into()));
        }
        OneCell::new(src, dst, alpha, theta_rows.iter().flatten().copied().collect())
    }

    pub fn validate(&self) -> Result<()> {
        let (x, y) = (&self.src, &self.dst);
        let (g, h) = (x.group(), y.group());
        let ng = g.order();
        if self.alpha.len() != x.size() || self.alpha.iter().any(|&v| v >= y.size()) {
            return Err(Error::InvalidOneCell("alpha has wrong shape".into()));
        }
        if self.theta.len() != x.size() * ng || self.theta.iter().any(|&v| v >= h.order()) {
            return Err(Error::InvalidOneCell("theta has wrong shape".into()));
        }
        for p in 0..x.size() {
            for a in g.elements() {
                if self.alpha[x.act(a, p)] != y.act(self.th(p, a), self.alpha[p]) {
                    return Err(Error::InvalidOneCell(format!("condition (i) fails at x={p}, g={a}")));
                }
                for b in g.elements() {
                    let lhs = self.th(p, g.mul(a, b));
                    let rhs = h.mul(self.th(x.act(b, p), a), self.th(p, b));
                    if lhs != rhs {
                        return Err(Error::InvalidOneCell(format!("condition (ii) fails at x={p}, g={a}, g'={b}")));
                    }
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn th(&self, x: usize, g: usize) -> usize {
        self.theta[x * self.src.group().order() + g]
    }

    pub fn theta_rows(&self) -> Vec<Vec<usize>> {
        let n = self.src.group().order();
        self.theta.chunks(n.max(1)).map(|c| c.to_vec()).take(self.src.size()).collect()
    }

    pub fn identity(x: &ZeroCell) -> Self {
        let n = x.group().order();
        let theta = (0..x.size()).flat_map(|_| 0..n).collect();
        OneCell { src: x.clone(), dst: x.clone(), alpha: (0..x.size()).collect(), theta }
    }

    /// An f-equivariant map (θ_x = f for every x).
    pub fn equivariant(src: &ZeroCell, dst: &ZeroCell, alpha: Vec<usize>, f: &GroupHom) -> Result<Self> {
        let theta = (0..src.size()).flat_map(|_| f.map.iter().copied()).collect();
        OneCell::new(src, dst, alpha, theta)
    }

    pub fn equivariant_unchecked(src: &ZeroCell, dst: &ZeroCell, alpha: Vec<usize>, f: &GroupHom) -> Self {
        let theta = (0..src.size()).flat_map(|_| f.map.iter().copied()).collect();
        OneCell { src: src.clone(), dst: dst.clone(), alpha, theta }
    }

    /// pt/L → pt/H given by a homomorphism.
    pub fn from_hom(f: &GroupHom) -> Self {
        OneCell { src: ZeroCell::pt(&f.src), dst: ZeroCell::pt(&f.dst), alpha: vec![0], theta: f.map.clone() }
    }

    /// pt/K → X/G at point x with θ = f (f must land in the stabilizer of x).
    pub fn point_leg(k: &ZeroCell, dst: &ZeroCell, x: usize, f: &[usize]) -> Self {
        debug_assert_eq!(k.size(), 1);
        OneCell { src: k.clone(), dst: dst.clone(), alpha: vec![x], theta: f.to_vec() }
    }

    /// self ∘ a
    pub fn compose(&self, a: &OneCell) -> Result<OneCell> {
        if !a.dst.same(&self.src) {
            return Err(Error::EndpointMismatch("codomain of the first 1-cell is not the domain of the second".into()));
        }
        Ok(self.compose_unchecked(a))
    }

    pub fn compose_unchecked(&self, a: &OneCell) -> OneCell {
        let ng = a.src.group().order();
        let mut theta = Vec::with_capacity(a.theta.len());
        for x in 0..a.src.size() {
            let y = a.alpha[x];
            for g in 0..ng {
                theta.push(self.th(y, a.th(x, g)));
            }
        }
        OneCell { src: a.src.clone(), dst: self.dst.clone(), alpha: a.alpha.iter().map(|&y| self.alpha[y]).collect(), theta }
    }

    /// The homomorphism θ_x restricted to the stabilizer of x is what a point leg records.
    pub fn theta_hom_at(&self, x: usize) -> Vec<usize> {
        let ng = self.src.group().order();
        self.theta[x * ng..(x + 1) * ng].to_vec()
    }

    pub fn is_equivariant(&self) -> bool {
        let ng = self.src.group().order();
        (1..self.src.size()).all(|x| self.theta[x * ng..(x + 1) * ng] == self.theta[0..ng])
    }
}

/// A 2-cell ε: (α,θ) ⇒ (α′,θ′).
#[derive(Clone, Debug)]
pub struct TwoCell {
    pub src: OneCell,
    pub dst: OneCell,
    pub eps: Vec<usize>,
}

impl TwoCell {
    pub fn new(src: &OneCell, dst: &OneCell, eps: Vec<usize>) -> Result<Self> {
        let c = TwoCell { src: src.clone(), dst: dst.clone(), eps };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&self.src, &self.dst);
        if !a.src.same(&b.src) || !a.dst.same(&b.dst) {
            return Err(Error::InvalidTwoCell("1-cells are not parallel".into()));
        }
        let x = &a.src;
        let h = a.dst.group();
        if self.eps.len() != x.size() || self.eps.iter().any(|&e| e >= h.order()) {
            return Err(Error::InvalidTwoCell("eps has wrong shape".into()));
        }
        for p in 0..x.size() {
            if b.alpha[p] != a.dst.act(self.eps[p], a.alpha[p]) {
                return Err(Error::InvalidTwoCell(format!("condition (i) fails at x={p}")));
            }
            for g in x.group().elements() {
                let lhs = h.mul(h.mul(self.eps[x.act(g, p)], a.th(p, g)), h.inv(self.eps[p]));
                if lhs != b.th(p, g) {
                    return Err(Error::InvalidTwoCell(format!("condition (ii) fails at x={p}, g={g}")));
                }
            }
        }
        Ok(())
    }

    pub fn identity(a: &OneCell) -> Self {
        TwoCell { src: a.clone(), dst: a.clone(), eps: vec![0; a.src.size()] }
    }

    pub fn inverse(&self) -> Self {
        let h = self.src.dst.group();
        TwoCell { src: self.dst.clone(), dst: self.src.clone(), eps: self.eps.iter().map(|&e| h.inv(e)).collect() }
    }

    /// other · self (vertical).
    pub fn then(&self, other: &TwoCell) -> Self {
        let h = self.src.dst.group();
        TwoCell {
            src: self.src.clone(),
            dst: other.dst.clone(),
            eps: self.eps.iter().zip(&other.eps).map(|(&e, &f)| h.mul(f, e)).collect(),
        }
    }

    /// (β,τ) ∘ ε : β∘α ⇒ β∘α′.
    pub fn whisker_left(b: &OneCell, e: &TwoCell) -> Self {
        TwoCell {
            src: b.compose_unchecked(&e.src),
            dst: b.compose_unchecked(&e.dst),
            eps: e.eps.iter().enumerate().map(|(x, &k)| b.th(e.src.alpha[x], k)).collect(),
        }
    }

    /// ρ ∘ α : β∘α ⇒ β′∘α.
    pub fn whisker_right(r: &TwoCell, a: &OneCell) -> Self {
        TwoCell {
            src: r.src.compose_unchecked(a),
            dst: r.dst.compose_unchecked(a),
            eps: a.alpha.iter().map(|&y| r.eps[y]).collect(),
        }
    }
}

/// Lexicographically first 2-cell a ⇒ b, searching ε on orbit representatives.
pub fn find_twocell(a: &OneCell, b: &OneCell) -> Option<TwoCell> {
    if !a.src.same(&b.src) || !a.dst.same(&b.dst) {
        return None;
    }
    let x = &a.src;
    let (g, h) = (x.group(), a.dst.group());
    let y = &a.dst;
    let mut eps = vec![usize::MAX; x.size()];
    for orbit in x.orbits() {
        let r = orbit.rep;
        let mut ok_any = false;
        'cand: for e0 in h.elements() {
            if y.act(e0, a.alpha[r]) != b.alpha[r] {
                continue;
            }
            // ε_{g r} = θ′_r(g) ε_r θ_r(g)^{-1}
            let mut local = vec![usize::MAX; x.size()];
            for s in g.elements() {
                let p = x.act(s, r);
                let v = h.mul(h.mul(b.th(r, s), e0), h.inv(a.th(r, s)));
                if local[p] == usize::MAX {
                    local[p] = v;
                } else if local[p] != v {
                    continue 'cand;
                }
            }
            for &p in &orbit.points {
                if y.act(local[p], a.alpha[p]) != b.alpha[p] {
                    continue 'cand;
                }
                for s in g.elements() {
                    let q = x.act(s, p);
                    if h.mul(h.mul(local[q], a.th(p, s)), h.inv(local[p])) != b.th(p, s) {
                        continue 'cand;
                    }
                }
            }
            for &p in &orbit.points {
                eps[p] = local[p];
            }
            ok_any = true;
            break;
        }
        if !ok_any {
            return None;
        }
    }
    Some(TwoCell { src: a.clone(), dst: b.clone(), eps })
}

pub fn isomorphic_in_c(a: &OneCell, b: &OneCell) -> bool {
    find_twocell(a, b).is_some()
}

/// Essential surjectivity of el(a): every point of Y lies in H·α(X).
pub fn el_essentially_surjective(a: &OneCell) -> bool {
    let y = &a.dst;
    let mut hit = vec![false; y.size()];
    for &p in &a.alpha {
        hit[y.orbit_index(p)] = true;
    }
    (0..y.size()).all(|q| hit[y.orbit_index(q)])
}

/// Full faithfulness of el(a): each θ_x restricts to bijections hom(x,x′) → hom(α x, α x′).
pub fn el_fully_faithful(a: &OneCell) -> bool {
    el_hom_maps(a, true)
}

/// Fullness of el(a) alone.
pub fn el_full(a: &OneCell) -> bool {
    el_hom_maps(a, false)
}

fn el_hom_maps(a: &OneCell, require_injective: bool) -> bool {
    let (x, y) = (&a.src, &a.dst);
    let (g, h) = (x.group(), y.group());
    for p in 0..x.size() {
        for q in 0..x.size() {
            let src_hom: Vec<usize> = g.elements().filter(|&s| x.act(s, p) == q).collect();
            let mut images: Vec<usize> = src_hom.iter().map(|&s| a.th(p, s)).collect();
            images.sort_unstable();
            let before = images.len();
            images.dedup();
            if require_injective && images.len() != before {
                return false;
            }
            let tgt = h.elements().filter(|&t| y.act(t, a.alpha[p]) == a.alpha[q]).count();
            if images.len() != tgt {
                return false;
            }
        }
    }
    true
}

/// Decides equivalence through el and returns a verified quasi-inverse.
pub fn is_equivalence(a: &OneCell) -> Option<OneCell> {
    if !el_essentially_surjective(a) || !el_fully_faithful(a) {
        return None;
    }
    let (x, y) = (&a.src, &a.dst);
    let (g, h) = (x.group(), y.group());
    // choose (x_y, h_y) with y = h_y α(x_y)
    let mut xs = vec![usize::MAX; y.size()];
    let mut hs = vec![usize::MAX; y.size()];
    for q in 0..y.size() {
        'found: for p in 0..x.size() {
            for t in h.elements() {
                if y.act(t, a.alpha[p]) == q {
                    xs[q] = p;
                    hs[q] = t;
                    break 'found;
                }
            }
        }
    }
    // lookup (p, target point, θ value) -> g
    let ng = g.order();
    let mut lookup = std::collections::HashMap::new();
    for p in 0..x.size() {
        for s in 0..ng {
            lookup.insert((p, x.act(s, p), a.th(p, s)), s);
        }
    }
    let nh = h.order();
    let mut theta = vec![0; y.size() * nh];
    for q in 0..y.size() {
        for t in h.elements() {
            let q2 = y.act(t, q);
            let want = h.mul(h.mul(h.inv(hs[q2]), t), hs[q]);
            theta[q * nh + t] = *lookup.get(&(xs[q], xs[q2], want))?;
        }
    }
    let b = OneCell::new(y, x, xs, theta).ok()?;
    let ba = b.compose_unchecked(a);
    let ab = a.compose_unchecked(&b);
    find_twocell(&ba, &OneCell::identity(x))?;
    find_twocell(&ab, &OneCell::identity(y))?;
    Some(b)
}

/// Bicoproduct with its two injections.
#[derive(Clone, Debug)]
pub struct Bicoproduct {
    pub object: ZeroCell,
    pub inl: OneCell,
    pub inr: OneCell,
}

/// Plain disjoint union when both summands share the same group object, otherwise the
/// induced construction over G×H. Left summand points come first.
pub fn bicoproduct(x: &ZeroCell, y: &ZeroCell) -> Bicoproduct {
    if Arc::ptr_eq(x.group(), y.group()) {
        coproduct_same_group(x, y)
    } else {
        bicoproduct_induced(x, y)
    }
}

pub fn coproduct_same_group(x: &ZeroCell, y: &ZeroCell) -> Bicoproduct {
    assert!(same_group(x.group(), y.group()));
    let u = ZeroCell::new(x.disjoint_union(y).expect("same group"));
    let id = GroupHom::identity(x.group());
    let n = x.size();
    let inl = OneCell::equivariant_unchecked(x, &u, (0..n).collect(), &id);
    let inr = OneCell::equivariant_unchecked(y, &u, (n..n + y.size()).collect(), &id);
    Bicoproduct { object: u, inl, inr }
}

pub fn bicoproduct_induced(x: &ZeroCell, y: &ZeroCell) -> Bicoproduct {
    let (g, h) = (x.group(), y.group());
    let gh = direct_product(g, h);
    let m = h.order();
    let iota_g = GroupHom::new_unchecked(g, &gh, g.elements().map(|a| pair(m, a, 0)).collect());
    let iota_h = GroupHom::new_unchecked(h, &gh, h.elements().map(|b| pair(m, 0, b)).collect());
    let (ix, cx) = induce(&iota_g, x).expect("injective");
    let (iy, cy) = induce(&iota_h, y).expect("injective");
    let u = ZeroCell::new(ix.disjoint_union(&iy).expect("same group"));
    let n = ix.size();
    let inl = OneCell::equivariant_unchecked(x, &u, (0..x.size()).map(|p| cx[p]).collect(), &iota_g);
    let inr = OneCell::equivariant_unchecked(y, &u, (0..y.size()).map(|p| n + cy[p]).collect(), &iota_h);
    Bicoproduct { object: u, inl, inr }
}

/// The bipullback of a: X/G → Z/K and b: Y/H → Z/K.
#[derive(Clone, Debug)]
pub struct Bipullback {
    pub apex: ZeroCell,
    pub triples: Vec<(usize, usize, usize)>,
    pub proj_left: OneCell,
    pub proj_right: OneCell,
    /// κ: a∘proj_left ⇒ b∘proj_right with κ_(x,y,k) = k.
    pub kappa: TwoCell,
}

pub fn bipullback(a: &OneCell, b: &OneCell) -> Result<Bipullback> {
    if !a.dst.same(&b.dst) {
        return Err(Error::CodomainMismatch);
    }
    let (x, y, z) = (&a.src, &b.src, &a.dst);
    let (g, h, k) = (x.group(), y.group(), z.group());
    let mut triples = Vec::new();
    let (ny, nk) = (y.size(), k.order());
    let mut index = vec![usize::MAX; x.size() * ny * nk];
    for p in 0..x.size() {
        for q in 0..ny {
            for c in k.elements() {
                if b.alpha[q] == z.act(c, a.alpha[p]) {
                    index[(p * ny + q) * nk + c] = triples.len();
                    triples.push((p, q, c));
                }
            }
        }
    }
    let gh = direct_product(g, h);
    let m = h.order();
    let t = triples.clone();
    let set = GSet::from_fn(&gh, triples.len(), |e, i| {
        let (s, u) = unpair(m, e);
        let (p, q, c) = t[i];
        let c2 = k.mul(k.mul(b.th(q, u), c), k.inv(a.th(p, s)));
        index[(x.act(s, p) * ny + y.act(u, q)) * nk + c2]
    });
    let apex = ZeroCell::new(set);
    let pr_g = GroupHom::new_unchecked(&gh, g, gh.elements().map(|e| unpair(m, e).0).collect());
    let pr_h = GroupHom::new_unchecked(&gh, h, gh.elements().map(|e| unpair(m, e).1).collect());
    let proj_left = OneCell::equivariant_unchecked(&apex, x, triples.iter().map(|t| t.0).collect(), &pr_g);
    let proj_right = OneCell::equivariant_unchecked(&apex, y, triples.iter().map(|t| t.1).collect(), &pr_h);
    let kappa = TwoCell {
        src: a.compose_unchecked(&proj_left),
        dst: b.compose_unchecked(&proj_right),
        eps: triples.iter().map(|t| t.2).collect(),
    };
    Ok(Bipullback { apex, triples, proj_left, proj_right, kappa })
}

/// One orbit of X/G with its collapse equivalence onto pt/G_x.
#[derive(Clone, Debug)]
pub struct OrbitPiece {
    pub rep: usize,
    pub points: Vec<usize>,
    /// The orbit as a G-set, points relabeled in increasing order.
    pub component: ZeroCell,
    pub stabilizer: Group,
    pub point: ZeroCell,
    pub collapse: OneCell,
    /// pt/G_x → X/G at the representative.
    pub section: OneCell,
}

pub fn orbit_decompose(x: &ZeroCell) -> Vec<OrbitPiece> {
    let g = x.group();
    let mut out = Vec::new();
    for (i, o) in x.orbits().iter().enumerate() {
        let (stab, incl) = x.stabilizer_group(i).clone();
        let mut pos_in_stab = vec![usize::MAX; g.order()];
        for (j, &e) in incl.map.iter().enumerate() {
            pos_in_stab[e] = j;
        }
        let points = o.points.clone();
        let mut local = vec![usize::MAX; x.size()];
        for (j, &p) in points.iter().enumerate() {
            local[p] = j;
        }
        let component = ZeroCell::new(GSet::from_fn(g, points.len(), |s, j| local[x.act(s, points[j])]));
        let point = ZeroCell::pt(&stab);
        let ng = g.order();
        let mut theta = vec![0; points.len() * ng];
        for (j, &p) in points.iter().enumerate() {
            let cp = x.transporter(p);
            for s in g.elements() {
                let q = x.act(s, p);
                let v = g.mul(g.mul(g.inv(x.transporter(q)), s), cp);
                theta[j * ng + s] = pos_in_stab[v];
            }
        }
        let collapse = OneCell::new_unchecked(&component, &point, vec![0; points.len()], theta);
        let section = OneCell::point_leg(&point, x, o.rep, &incl.map);
        out.push(OrbitPiece { rep: o.rep, points, component, stabilizer: stab, point, collapse, section });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;

    fn s3_transpositions() -> (Group, Vec<usize>) {
        let s3 = symmetric(3);
        let t: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) == 2).collect();
        (s3, t)
    }

    #[test]
    fn composition_and_identity() {
        let c2 = cyclic(2);
        let r = ZeroCell::new(GSet::regular(&c2));
        let id = OneCell::identity(&r);
        // non-equivariant cell on the regular C2-set: swap with twisted theta
        let a = OneCell::from_rows(&r, &r, vec![1, 0], &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(id.compose(&a).unwrap(), a);
        assert_eq!(a.compose(&id).unwrap(), a);
        let aa = a.compose(&a).unwrap();
        // table oracle: alpha = identity, theta_x(g) = θ_{α x}(θ_x(g))
        assert_eq!(aa.alpha, vec![0, 1]);
        assert_eq!(aa.theta_rows(), vec![vec![0, 1], vec![0, 1]]);
        aa.validate().unwrap();
    }

    #[test]
    fn invalid_cells_rejected() {
        let c2 = cyclic(2);
        let pt = ZeroCell::pt(&c2);
        let r = ZeroCell::new(GSet::regular(&c2));
        // into the regular C2-set only the trivial theta is compatible with (i)
        assert!(OneCell::from_rows(&pt, &r, vec![0], &[vec![0, 0]]).is_ok());
        assert!(OneCell::from_rows(&pt, &r, vec![0], &[vec![0, 1]]).is_err());
        assert!(OneCell::from_rows(&r, &pt, vec![0, 0], &[vec![0, 1], vec![0, 1]]).is_ok());
    }

    #[test]
    fn twocells_between_conjugate_homs() {
        let (s3, t) = s3_transpositions();
        let c2 = cyclic(2);
        let f = OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[0]]).unwrap());
        let f2 = OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[1]]).unwrap());
        let triv = OneCell::from_hom(&GroupHom::trivial(&c2, &s3));
        let w = find_twocell(&f, &f2).expect("transpositions are conjugate");
        w.validate().unwrap();
        assert!(find_twocell(&f, &triv).is_none());
        let id = find_twocell(&f, &f).unwrap();
        assert_eq!(id.eps, vec![0]);
    }

    #[test]
    fn bicoproduct_examples() {
        let e = trivial();
        let b = bicoproduct(&ZeroCell::pt(&e), &ZeroCell::pt(&e));
        assert_eq!(b.object.size(), 2);
        assert_eq!(b.object.group().order(), 1);

        let c2a = cyclic(2);
        let c2b = cyclic(2);
        let b = bicoproduct(&ZeroCell::pt(&c2a), &ZeroCell::pt(&c2b));
        assert_eq!(b.object.size(), 4);
        assert_eq!(b.object.orbits().iter().map(|o| o.points.len()).collect::<Vec<_>>(), vec![2, 2]);
        b.inl.validate().unwrap();
        b.inr.validate().unwrap();

        let b = bicoproduct(&ZeroCell::pt(&e), &ZeroCell::pt(&c2a));
        assert_eq!(b.object.size(), 3);
        let mut sizes: Vec<usize> = b.object.orbits().iter().map(|o| o.points.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 2]);
        assert!(is_equivalence(&b.inl).is_none());
    }

    #[test]
    fn bipullback_examples() {
        let g = cyclic(2);
        let h = cyclic(3);
        let e = trivial();
        let ptg = OneCell::from_hom(&GroupHom::trivial(&g, &e));
        let pth = OneCell::from_hom(&GroupHom::trivial(&h, &e));
        let pth = OneCell { dst: ptg.dst.clone(), ..pth };
        let bp = bipullback(&ptg, &pth).unwrap();
        assert_eq!(bp.apex.size(), 1);
        assert_eq!(bp.apex.group().order(), 6);
        bp.kappa.validate().unwrap();

        let s3 = symmetric(3);
        let x = ZeroCell::new(GSet::regular(&s3));
        let id = OneCell::identity(&x);
        let bp = bipullback(&id, &id).unwrap();
        assert_eq!(bp.apex.size(), 6 * 6);

        let (s3, t) = s3_transpositions();
        let c2 = cyclic(2);
        let i1 = OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[0]]).unwrap());
        let i2 = OneCell { dst: i1.dst.clone(), ..OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[0]]).unwrap()) };
        let bp = bipullback(&i1, &i2).unwrap();
        assert_eq!(bp.apex.size(), 6);
        let mut sizes: Vec<usize> = bp.apex.orbits().iter().map(|o| o.points.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![2, 4]);
        bp.proj_left.validate().unwrap();
        bp.proj_right.validate().unwrap();
        bp.kappa.validate().unwrap();
    }

    #[test]
    fn orbit_collapse_is_equivalence() {
        let s3 = symmetric(3);
        let l = subgroup_lattice(&s3).unwrap();
        let c2sub = l.subgroups.iter().find(|s| s.len() == 2).unwrap().clone();
        let (cos, _) = GSet::cosets(&s3, &c2sub);
        let x = ZeroCell::new(cos.disjoint_union(&GSet::point(&s3)).unwrap());
        let pieces = orbit_decompose(&x);
        assert_eq!(pieces.iter().map(|p| p.stabilizer.order()).collect::<Vec<_>>(), vec![2, 6]);
        for p in &pieces {
            p.collapse.validate().unwrap();
            p.section.validate().unwrap();
            assert!(is_equivalence(&p.collapse).is_some());
        }
        let c2 = cyclic(2);
        let reg = ZeroCell::new(GSet::regular(&c2));
        let pieces = orbit_decompose(&reg);
        assert_eq!(pieces.len(), 1);
        assert_eq!(pieces[0].stabilizer.order(), 1);
    }

    #[test]
    fn induction_unit_is_equivalence() {
        let s3 = symmetric(3);
        let l = subgroup_lattice(&s3).unwrap();
        let c3sub = l.subgroups.iter().find(|s| s.len() == 3).unwrap().clone();
        let (c3, incl) = subgroup_group(&s3, &c3sub);
        let x = ZeroCell::new(GSet::regular(&c3).disjoint_union(&GSet::point(&c3)).unwrap());
        let (ind, cls) = induce(&incl, &x).unwrap();
        let ind = ZeroCell::new(ind);
        let ups = OneCell::equivariant(&x, &ind, (0..x.size()).map(|p| cls[p]).collect(), &incl).unwrap();
        assert!(is_equivalence(&ups).is_some());
        assert!(is_equivalence(&OneCell::identity(&x)).is_some());
    }

    #[test]
    fn whiskering_gives_valid_twocells() {
        let (s3, t) = s3_transpositions();
        let c2 = cyclic(2);
        let f = OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[0]]).unwrap());
        let f2 = OneCell { dst: f.dst.clone(), ..OneCell::from_hom(&GroupHom::new(&c2, &s3, vec![0, t[1]]).unwrap()) };
        let w = find_twocell(&f, &f2).unwrap();
        let sgn: Vec<usize> = s3.elements().map(|x| if s3.element_order(x) == 2 { 1 } else { 0 }).collect();
        let b = OneCell { src: f.dst.clone(), ..OneCell::from_hom(&GroupHom::new(&s3, &c2, sgn).unwrap()) };
        TwoCell::whisker_left(&b, &w).validate().unwrap();
        let inner = TwoCell::new(&OneCell::identity(&f.dst), &OneCell::identity(&f.dst), vec![0]).unwrap();
        TwoCell::whisker_right(&inner, &f).validate().unwrap();
        w.then(&w.inverse()).validate().unwrap();
    }
}
