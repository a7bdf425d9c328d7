//! Group universes, tabulated presentations by ind/res/inf/def/conj, and the deflative reflection.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{is_deflative, MackeyFunctor};
use crate::error::{Error, Result};
use crate::group::{
    automorphisms, find_isomorphism, is_normal, quotient_group, subgroup_group, subgroup_lattice, FiniteGroup,
    Group, GroupHom,
};
use crate::linalg::{Matrix, RowSpace};

/// σ: R_rep → R, an injective hom with image `elems`.
#[derive(Clone, Debug)]
pub struct SubEntry {
    pub elems: Vec<usize>,
    pub rep: usize,
    pub sigma: GroupHom,
}

/// π: R → R_rep, surjective with kernel `kernel`.
#[derive(Clone, Debug)]
pub struct QuotEntry {
    pub kernel: Vec<usize>,
    pub rep: usize,
    pub pi: GroupHom,
}

#[derive(Default)]
struct Catalog {
    subs: OnceLock<Vec<SubEntry>>,
    quots: OnceLock<Vec<QuotEntry>>,
    auts: OnceLock<Vec<GroupHom>>,
}

/// Representatives of finitely many isomorphism types, closed under subgroups and quotients.
pub struct GroupUniverse {
    reps: Vec<Group>,
    catalogs: Vec<Catalog>,
    cache: Mutex<HashMap<Vec<usize>, (usize, Vec<usize>)>>,
}

impl std::fmt::Debug for GroupUniverse {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.reps.iter().map(|g| g.label())).finish()
    }
}

fn flat_table(g: &FiniteGroup) -> Vec<usize> {
    let mut v = Vec::with_capacity(g.order() * g.order() + 1);
    v.push(g.order());
    for a in g.elements() {
        for b in g.elements() {
            v.push(g.mul(a, b));
        }
    }
    v
}

fn find_rep(reps: &[Group], h: &Group) -> Option<(usize, GroupHom)> {
    reps.iter().enumerate().find_map(|(i, r)| find_isomorphism(h, r).map(|f| (i, f)))
}

/// Subgroup class representatives and quotients of g, as groups.
fn neighbours(g: &Group) -> Result<Vec<Group>> {
    let lat = subgroup_lattice(g)?;
    let mut out = Vec::new();
    for &r in &lat.reps {
        out.push(subgroup_group(g, &lat.subgroups[r]).0);
    }
    for s in &lat.subgroups {
        if is_normal(g, s) {
            out.push(quotient_group(g, s).0);
        }
    }
    Ok(out)
}

impl GroupUniverse {
    /// Closure of `gens` under subgroups and quotients, representatives sorted by order.
    pub fn generated_by(gens: &[Group]) -> Result<Self> {
        let mut reps: Vec<Group> = Vec::new();
        let mut work: Vec<Group> = gens.to_vec();
        while let Some(g) = work.pop() {
            if find_rep(&reps, &g).is_some() {
                continue;
            }
            work.extend(neighbours(&g)?);
            reps.push(g);
        }
        reps.sort_by_key(|g| g.order());
        Ok(Self::unchecked(reps))
    }

    /// Uses the given representatives verbatim; fails if they are not closed or not pairwise non-isomorphic.
    pub fn from_reps(reps: Vec<Group>) -> Result<Self> {
        for (i, g) in reps.iter().enumerate() {
            if let Some((j, _)) = find_rep(&reps[..i], g) {
                return Err(Error::InvalidGroup(format!("representatives {j} and {i} are isomorphic")));
            }
        }
        for g in &reps {
            for h in neighbours(g)? {
                if find_rep(&reps, &h).is_none() {
                    return Err(Error::UniverseExceeded(format!("{} (from {})", h.label(), g.label())));
                }
            }
        }
        Ok(Self::unchecked(reps))
    }

    fn unchecked(reps: Vec<Group>) -> Self {
        let catalogs = reps.iter().map(|_| Catalog::default()).collect();
        GroupUniverse { reps, catalogs, cache: Mutex::new(HashMap::new()) }
    }

    pub fn reps(&self) -> &[Group] {
        &self.reps
    }

    /// Representative index and an isomorphism ψ: H → R.
    pub fn identify(&self, h: &Group) -> Result<(usize, GroupHom)> {
        let key = flat_table(h);
        if let Some((i, m)) = self.cache.lock().unwrap().get(&key) {
            return Ok((*i, GroupHom::new_unchecked(h, &self.reps[*i], m.clone())));
        }
        let (i, f) = self
            .reps
            .iter()
            .enumerate()
            .filter(|(_, r)| r.order() == h.order())
            .find_map(|(i, r)| find_isomorphism(h, r).map(|f| (i, f)))
            .ok_or_else(|| Error::UniverseExceeded(h.label()))?;
        self.cache.lock().unwrap().insert(key, (i, f.map.clone()));
        Ok((i, f))
    }

    /// Every subgroup of R_r, in subgroup-lattice order.
    pub fn subgroups(&self, r: usize) -> &[SubEntry] {
        self.catalogs[r].subs.get_or_init(|| {
            let g = &self.reps[r];
            let lat = subgroup_lattice(g).expect("checked at construction");
            lat.subgroups
                .iter()
                .map(|s| {
                    let (sg, incl) = subgroup_group(g, s);
                    let (rep, psi) = self.identify(&sg).expect("closed universe");
                    let sigma = incl.compose(&psi.inverse().expect("isomorphism"));
                    SubEntry { elems: s.clone(), rep, sigma }
                })
                .collect()
        })
    }

    /// Every quotient of R_r by a normal subgroup, in subgroup-lattice order.
    pub fn quotients(&self, r: usize) -> &[QuotEntry] {
        self.catalogs[r].quots.get_or_init(|| {
            let g = &self.reps[r];
            let lat = subgroup_lattice(g).expect("checked at construction");
            lat.subgroups
                .iter()
                .filter(|s| is_normal(g, s))
                .map(|s| {
                    let (qg, hom) = quotient_group(g, s);
                    let (rep, psi) = self.identify(&qg).expect("closed universe");
                    QuotEntry { kernel: s.clone(), rep, pi: psi.compose(&hom) }
                })
                .collect()
        })
    }

    pub fn automorphisms(&self, r: usize) -> &[GroupHom] {
        self.catalogs[r].auts.get_or_init(|| automorphisms(&self.reps[r]))
    }

    /// f′ = ψ_H∘f∘ψ_L⁻¹ between representatives, factored as σ_s∘χ∘π_n.
    fn factor(&self, f: &GroupHom) -> Result<Factored> {
        let (l, psi_l) = self.identify(&f.src)?;
        let (h, psi_h) = self.identify(&f.dst)?;
        let inv_l = psi_l.inverse().expect("isomorphism");
        let fp = psi_h.compose(f).compose(&inv_l);
        let kernel = fp.kernel();
        let image = fp.image();
        let n = self.quotients(l).iter().position(|q| q.kernel == kernel).expect("kernel is normal");
        let s = self.subgroups(h).iter().position(|e| e.elems == image).expect("image is a subgroup");
        let (q, e) = (&self.quotients(l)[n], &self.subgroups(h)[s]);
        let t = q.rep;
        debug_assert_eq!(t, e.rep);
        let rt = &self.reps[t];
        let mut section = vec![usize::MAX; rt.order()];
        for x in self.reps[l].elements() {
            if section[q.pi.map[x]] == usize::MAX {
                section[q.pi.map[x]] = x;
            }
        }
        let mut sigma_inv = HashMap::new();
        for (a, &b) in e.sigma.map.iter().enumerate() {
            sigma_inv.insert(b, a);
        }
        let chi: Vec<usize> = rt.elements().map(|x| sigma_inv[&fp.map[section[x]]]).collect();
        let auts = self.automorphisms(t);
        let a = auts.iter().position(|c| c.map == chi).expect("automorphism");
        let chi_hom = &auts[a];
        let inv = chi_hom.inverse().expect("automorphism");
        let a_inv = auts.iter().position(|c| c.map == inv.map).expect("automorphism");
        Ok(Factored { l, h, n, s, t, aut: a, aut_inv: a_inv })
    }
}

struct Factored {
    l: usize,
    h: usize,
    n: usize,
    s: usize,
    t: usize,
    aut: usize,
    aut_inv: usize,
}

/// A Mackey functor stored by its generator matrices over a universe, in catalog order.
#[derive(Clone)]
pub struct MackeyPresentation {
    pub universe: Arc<GroupUniverse>,
    pub name: String,
    pub ranks: Vec<usize>,
    pub res: Vec<Vec<Matrix>>,
    pub ind: Vec<Vec<Matrix>>,
    pub inf: Vec<Vec<Matrix>>,
    pub def: Vec<Vec<Matrix>>,
    /// conj[t][a] = M_!(χ_a)
    pub conj: Vec<Vec<Matrix>>,
}

impl std::fmt::Debug for MackeyPresentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MackeyPresentation({}, ranks {:?})", self.name, self.ranks)
    }
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    order: usize,
    mul: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct RepMapsJson {
    subgroups: Vec<Vec<usize>>,
    res: Vec<Matrix>,
    ind: Vec<Matrix>,
    kernels: Vec<Vec<usize>>,
    inf: Vec<Matrix>,
    def: Vec<Matrix>,
    automorphisms: Vec<Vec<usize>>,
    conj: Vec<Matrix>,
}

#[derive(Serialize, Deserialize)]
struct PresentationJson {
    name: String,
    universe: Vec<GroupJson>,
    ranks: Vec<usize>,
    maps: Vec<RepMapsJson>,
}

impl MackeyPresentation {
    pub fn tabulate(m: &dyn MackeyFunctor, universe: Arc<GroupUniverse>) -> Result<Self> {
        let u = universe.as_ref();
        let n = u.reps().len();
        let mut p = MackeyPresentation {
            universe: universe.clone(),
            name: m.label(),
            ranks: Vec::with_capacity(n),
            res: Vec::new(),
            ind: Vec::new(),
            inf: Vec::new(),
            def: Vec::new(),
            conj: Vec::new(),
        };
        for r in 0..n {
            p.ranks.push(m.rank(&u.reps()[r])?);
            let subs = u.subgroups(r);
            p.res.push(subs.iter().map(|s| m.pull(&s.sigma)).collect::<Result<_>>()?);
            p.ind.push(subs.iter().map(|s| m.push(&s.sigma)).collect::<Result<_>>()?);
            let quots = u.quotients(r);
            p.inf.push(quots.iter().map(|q| m.pull(&q.pi)).collect::<Result<_>>()?);
            p.def.push(quots.iter().map(|q| m.push(&q.pi)).collect::<Result<_>>()?);
            p.conj.push(u.automorphisms(r).iter().map(|a| m.push(a)).collect::<Result<_>>()?);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let u = &self.universe;
        let pj = PresentationJson {
            name: self.name.clone(),
            universe: u.reps().iter().map(|g| GroupJson { name: g.name().map(String::from), order: g.order(), mul: g.table() }).collect(),
            ranks: self.ranks.clone(),
            maps: (0..u.reps().len())
                .map(|r| RepMapsJson {
                    subgroups: u.subgroups(r).iter().map(|s| s.elems.clone()).collect(),
                    res: self.res[r].clone(),
                    ind: self.ind[r].clone(),
                    kernels: u.quotients(r).iter().map(|q| q.kernel.clone()).collect(),
                    inf: self.inf[r].clone(),
                    def: self.def[r].clone(),
                    automorphisms: u.automorphisms(r).iter().map(|a| a.map.clone()).collect(),
                    conj: self.conj[r].clone(),
                })
                .collect(),
        };
        serde_json::to_value(pj).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pj: PresentationJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let reps = pj
            .universe
            .iter()
            .map(|g| {
                if g.mul.len() != g.order {
                    return Err(Error::Parse(format!("universe group table has {} rows, order is {}", g.mul.len(), g.order)));
                }
                let t = FiniteGroup::from_table(g.mul.clone())?;
                Ok(match &g.name {
                    Some(n) => t.with_name(n),
                    None => t,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let u = Arc::new(GroupUniverse::from_reps(reps)?);
        let n = u.reps().len();
        if pj.ranks.len() != n || pj.maps.len() != n {
            return Err(Error::Parse("ranks/maps do not match the universe".into()));
        }
        let mut p = MackeyPresentation {
            universe: u.clone(),
            name: pj.name,
            ranks: pj.ranks,
            res: Vec::new(),
            ind: Vec::new(),
            inf: Vec::new(),
            def: Vec::new(),
            conj: Vec::new(),
        };
        for (r, m) in pj.maps.into_iter().enumerate() {
            let subs: Vec<Vec<usize>> = u.subgroups(r).iter().map(|s| s.elems.clone()).collect();
            let kers: Vec<Vec<usize>> = u.quotients(r).iter().map(|q| q.kernel.clone()).collect();
            let auts: Vec<Vec<usize>> = u.automorphisms(r).iter().map(|a| a.map.clone()).collect();
            if m.subgroups != subs || m.kernels != kers || m.automorphisms != auts {
                return Err(Error::Parse(format!("catalog of group {r} does not match the canonical enumeration")));
            }
            p.res.push(m.res);
            p.ind.push(m.ind);
            p.inf.push(m.inf);
            p.def.push(m.def);
            p.conj.push(m.conj);
        }
        p.check_shapes()?;
        Ok(p)
    }

    fn check_shapes(&self) -> Result<()> {
        let u = &self.universe;
        let bad = |what: &str, r: usize| Err(Error::InvalidPresentation(format!("{what} matrices of group {r} have wrong shape")));
        for r in 0..u.reps().len() {
            let rr = self.ranks[r];
            let subs = u.subgroups(r);
            if self.res[r].len() != subs.len() || self.ind[r].len() != subs.len() {
                return bad("res/ind", r);
            }
            for (i, s) in subs.iter().enumerate() {
                let rt = self.ranks[s.rep];
                if (self.res[r][i].rows(), self.res[r][i].cols()) != (rt, rr) || (self.ind[r][i].rows(), self.ind[r][i].cols()) != (rr, rt) {
                    return bad("res/ind", r);
                }
            }
            let quots = u.quotients(r);
            if self.inf[r].len() != quots.len() || self.def[r].len() != quots.len() {
                return bad("inf/def", r);
            }
            for (i, q) in quots.iter().enumerate() {
                let rt = self.ranks[q.rep];
                if (self.inf[r][i].rows(), self.inf[r][i].cols()) != (rr, rt) || (self.def[r][i].rows(), self.def[r][i].cols()) != (rt, rr) {
                    return bad("inf/def", r);
                }
            }
            if self.conj[r].len() != u.automorphisms(r).len() || self.conj[r].iter().any(|c| (c.rows(), c.cols()) != (rr, rr)) {
                return bad("conj", r);
            }
        }
        Ok(())
    }

    /// Generator checks: conj is an action trivial on inner automorphisms, composites of
    /// generators agree with the reduction, and res∘ind matches the double-coset span for
    /// every pair of subgroup class representatives. Returns the list of failures.
    pub fn validate(&self) -> Result<Vec<String>> {
        self.check_shapes()?;
        let u = self.universe.clone();
        let mut fails = Vec::new();
        for r in 0..u.reps().len() {
            let g = &u.reps()[r];
            let auts = u.automorphisms(r);
            for (i, a) in auts.iter().enumerate() {
                for (j, b) in auts.iter().enumerate() {
                    let ab = a.compose(b);
                    let k = auts.iter().position(|c| c.map == ab.map).expect("closed under composition");
                    if self.conj[r][i].mul(&self.conj[r][j]) != self.conj[r][k] {
                        fails.push(format!("conj not multiplicative on {}", g.label()));
                    }
                }
                if (0..g.order()).any(|x| GroupHom::inner(g, x).map == a.map) && !self.conj[r][i].is_identity() {
                    fails.push(format!("inner automorphism acts nontrivially on {}", g.label()));
                }
            }
            let lat = subgroup_lattice(g)?;
            let subs = u.subgroups(r);
            let class_reps: Vec<&SubEntry> =
                lat.reps.iter().map(|&i| subs.iter().find(|s| s.elems == lat.subgroups[i]).expect("catalogued")).collect();
            for q in u.quotients(r) {
                for q2 in u.quotients(q.rep) {
                    let comp = q2.pi.compose(&q.pi);
                    if self.pull(&comp)? != self.pull(&q.pi)?.mul(&self.pull(&q2.pi)?)
                        || self.push(&comp)? != self.push(&q2.pi)?.mul(&self.push(&q.pi)?)
                    {
                        fails.push(format!("inf/def not functorial on a chain in {}", g.label()));
                    }
                }
            }
            for s in &class_reps {
                // chains R ⊇ S ⊇ T through the subgroup's own catalog
                for t in u.subgroups(s.rep) {
                    let comp = s.sigma.compose(&t.sigma);
                    if self.pull(&comp)? != self.pull(&t.sigma)?.mul(&self.pull(&s.sigma)?)
                        || self.push(&comp)? != self.push(&s.sigma)?.mul(&self.push(&t.sigma)?)
                    {
                        fails.push(format!("res/ind not functorial on a chain in {}", g.label()));
                    }
                }
                for q in u.quotients(r) {
                    // subgroup followed by a quotient of R
                    let comp = q.pi.compose(&s.sigma);
                    if self.pull(&comp)? != self.pull(&s.sigma)?.mul(&self.pull(&q.pi)?)
                        || self.push(&comp)? != self.push(&q.pi)?.mul(&self.push(&s.sigma)?)
                    {
                        fails.push(format!("inf/res or def/ind not functorial in {}", g.label()));
                    }
                }
                for t in &class_reps {
                    let tg = GroupHom::new_unchecked(&t.sigma.src, &s.sigma.dst, t.sigma.map.clone());
                    if !super::mackey_formula_holds(self, &s.sigma, &tg)? {
                        fails.push(format!("double-coset formula fails in {}", g.label()));
                    }
                }
            }
        }
        fails.dedup();
        Ok(fails)
    }
}

impl MackeyFunctor for MackeyPresentation {
    fn rank(&self, h: &Group) -> Result<usize> {
        Ok(self.ranks[self.universe.identify(h)?.0])
    }

    fn pull(&self, f: &GroupHom) -> Result<Matrix> {
        let x = self.universe.factor(f)?;
        Ok(self.inf[x.l][x.n].mul(&self.conj[x.t][x.aut_inv]).mul(&self.res[x.h][x.s]))
    }

    fn push(&self, f: &GroupHom) -> Result<Matrix> {
        let x = self.universe.factor(f)?;
        Ok(self.ind[x.h][x.s].mul(&self.conj[x.t][x.aut]).mul(&self.def[x.l][x.n]))
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

/// The deflative quotient M̄ and the levelwise projections M(R) → M̄(R).
#[derive(Clone, Debug)]
pub struct Reflection {
    pub quotient: MackeyPresentation,
    pub projection: Vec<Matrix>,
}

/// Quotient by the sub-Mackey functor generated by the images of def(π)∘inf(π) − id.
pub fn reflect_deflative(m: &MackeyPresentation) -> Result<Reflection> {
    let u = m.universe.clone();
    let n = u.reps().len();
    // (from, to, matrix) for every generator
    let mut edges: Vec<(usize, usize, &Matrix)> = Vec::new();
    for r in 0..n {
        for (i, s) in u.subgroups(r).iter().enumerate() {
            edges.push((r, s.rep, &m.res[r][i]));
            edges.push((s.rep, r, &m.ind[r][i]));
        }
        for (i, q) in u.quotients(r).iter().enumerate() {
            edges.push((q.rep, r, &m.inf[r][i]));
            edges.push((r, q.rep, &m.def[r][i]));
        }
        for c in &m.conj[r] {
            edges.push((r, r, c));
        }
    }
    let mut spaces: Vec<RowSpace> = m.ranks.iter().map(|&k| RowSpace::new(k)).collect();
    let mut queue = Vec::new();
    for r in 0..n {
        for (i, q) in u.quotients(r).iter().enumerate() {
            let t = q.rep;
            let d = m.def[r][i].mul(&m.inf[r][i]).sub(&Matrix::identity(m.ranks[t]));
            for c in 0..d.cols() {
                let v = d.column(c);
                if spaces[t].insert(&v) {
                    queue.push((t, v));
                }
            }
        }
    }
    while let Some((r, v)) = queue.pop() {
        for &(from, to, a) in &edges {
            if from == r {
                let w = a.apply(&v);
                if spaces[to].insert(&w) {
                    queue.push((to, w));
                }
            }
        }
    }
    let proj: Vec<Matrix> = spaces.iter().map(|s| s.quotient_projection()).collect();
    let lift: Vec<Matrix> = spaces.iter().map(|s| s.quotient_lift()).collect();
    let map = |a: &Matrix, from: usize, to: usize| proj[to].mul(a).mul(&lift[from]);
    let mut q = MackeyPresentation {
        universe: u.clone(),
        name: format!("{}/defl", m.name),
        ranks: spaces.iter().map(|s| s.ambient() - s.dim()).collect(),
        res: Vec::new(),
        ind: Vec::new(),
        inf: Vec::new(),
        def: Vec::new(),
        conj: Vec::new(),
    };
    for r in 0..n {
        let subs = u.subgroups(r);
        q.res.push(subs.iter().enumerate().map(|(i, s)| map(&m.res[r][i], r, s.rep)).collect());
        q.ind.push(subs.iter().enumerate().map(|(i, s)| map(&m.ind[r][i], s.rep, r)).collect());
        let quots = u.quotients(r);
        q.inf.push(quots.iter().enumerate().map(|(i, qe)| map(&m.inf[r][i], qe.rep, r)).collect());
        q.def.push(quots.iter().enumerate().map(|(i, qe)| map(&m.def[r][i], r, qe.rep)).collect());
        q.conj.push(m.conj[r].iter().map(|c| map(c, r, r)).collect());
    }
    debug_assert!(is_deflative(&q, &u).map(|d| d.deflative).unwrap_or(false));
    Ok(Reflection { quotient: q, projection: proj })
}

/// Levelwise matrices φ_R: M(R) → N(R) commuting with every generator.
pub fn is_presentation_morphism(m: &MackeyPresentation, n: &MackeyPresentation, phi: &[Matrix]) -> bool {
    let u = &m.universe;
    if !Arc::ptr_eq(u, &n.universe) || phi.len() != u.reps().len() {
        return false;
    }
    (0..u.reps().len()).all(|r| {
        let subs = u.subgroups(r);
        let quots = u.quotients(r);
        subs.iter().enumerate().all(|(i, s)| {
            phi[s.rep].mul(&m.res[r][i]) == n.res[r][i].mul(&phi[r]) && phi[r].mul(&m.ind[r][i]) == n.ind[r][i].mul(&phi[s.rep])
        }) && quots.iter().enumerate().all(|(i, q)| {
            phi[r].mul(&m.inf[r][i]) == n.inf[r][i].mul(&phi[q.rep]) && phi[q.rep].mul(&m.def[r][i]) == n.def[r][i].mul(&phi[r])
        }) && m.conj[r].iter().zip(&n.conj[r]).all(|(a, b)| phi[r].mul(a) == b.mul(&phi[r]))
    })
}

/// Solves φ = ψ∘projection levelwise; None if φ does not factor.
pub fn factor_through_reflection(refl: &Reflection, phi: &[Matrix]) -> Option<Vec<Matrix>> {
    refl.projection.iter().zip(phi).map(|(p, f)| crate::linalg::solve_left(p, f)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::mackey::{Burnside, Cardinality, DirectSum};

    fn universe(gs: &[Group]) -> Arc<GroupUniverse> {
        Arc::new(GroupUniverse::generated_by(gs).unwrap())
    }

    #[test]
    fn universe_closure() {
        let u = universe(&[symmetric(3)]);
        let orders: Vec<usize> = u.reps().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        let u4 = universe(&[dihedral(4)]);
        assert_eq!(u4.reps().len(), 5); // e, C2, C4, V4, D8
        assert!(GroupUniverse::from_reps(vec![symmetric(3)]).is_err());
        assert!(matches!(u.identify(&cyclic(4)), Err(Error::UniverseExceeded(_))));
    }

    #[test]
    fn tabulated_burnside_matches_direct() {
        let u = universe(&[symmetric(3)]);
        let p = MackeyPresentation::tabulate(&Burnside, u.clone()).unwrap();
        assert!(p.validate().unwrap().is_empty());
        for h in u.reps() {
            for l in u.reps() {
                for f in homomorphisms(l, h) {
                    assert_eq!(p.pull(&f).unwrap(), Burnside.pull(&f).unwrap());
                    assert_eq!(p.push(&f).unwrap(), Burnside.push(&f).unwrap());
                }
            }
        }
        let back = MackeyPresentation::from_json(&p.to_json()).unwrap();
        assert_eq!(back.to_json(), p.to_json());
    }

    #[test]
    fn broken_presentation_fails_validation() {
        let u = universe(&[cyclic(2)]);
        let mut p = MackeyPresentation::tabulate(&Burnside, u.clone()).unwrap();
        let c2 = u.identify(&cyclic(2)).unwrap().0;
        let e = u.subgroups(c2).iter().position(|s| s.elems.len() == 1).unwrap();
        p.ind[c2][e] = p.ind[c2][e].scale(crate::linalg::q(2));
        assert!(!p.validate().unwrap().is_empty());
    }

    #[test]
    fn reflection_of_burnside_plus_cardinality() {
        let u = universe(&[cyclic(2)]);
        let sum = DirectSum(vec![Arc::new(Burnside), Arc::new(Cardinality)]);
        let m = MackeyPresentation::tabulate(&sum, u.clone()).unwrap();
        assert!(!is_deflative(&m, &u).unwrap().deflative);
        let refl = reflect_deflative(&m).unwrap();
        let omega = MackeyPresentation::tabulate(&Burnside, u.clone()).unwrap();
        assert_eq!(refl.quotient.ranks, omega.ranks);
        assert!(is_deflative(&refl.quotient, &u).unwrap().deflative);
        assert_eq!(refl.quotient.to_json()["maps"], omega.to_json()["maps"]);
        let again = reflect_deflative(&refl.quotient).unwrap();
        assert_eq!(again.quotient.to_json()["maps"], refl.quotient.to_json()["maps"]);
        assert!(again.projection.iter().all(|p| p.is_identity()));
        // the projection onto the Ω summand factors through the reflection
        let phi: Vec<Matrix> = (0..u.reps().len())
            .map(|r| {
                let k = omega.ranks[r];
                let mut a = Matrix::zeros(k, k + 1);
                a.place(0, 0, &Matrix::identity(k));
                a
            })
            .collect();
        assert!(is_presentation_morphism(&m, &omega, &phi));
        let psi = factor_through_reflection(&refl, &phi).unwrap();
        assert!(is_presentation_morphism(&refl.quotient, &omega, &psi));
    }
}
