//! The represented prederivator on finite groupoids: set-valued diagrams, restriction, left Kan
//! extension, comma squares, base change, and the semi-Mackey functor it induces.

use std::collections::HashMap;
use std::sync::Arc;

use crate::burnside::{omega_pull, omega_push, BurnsideBasis};
use crate::cell::{bipullback, Bipullback, OneCell, ZeroCell};
use crate::error::{Error, Result};
use crate::group::{generating_set, unpair, Group};
use crate::groupoid::{el, el1, FiniteGroupoid, Functor, NatTrans};
use crate::gset::{gset_isomorphism, GSet};
use crate::linalg::Q;

/// A functor from a finite groupoid to finite sets; `maps[f]` sends D(src f) to D(dst f).
#[derive(Clone, Debug)]
pub struct Diagram {
    pub shape: Arc<FiniteGroupoid>,
    pub sets: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl PartialEq for Diagram {
    fn eq(&self, o: &Self) -> bool {
        *self.shape == *o.shape && self.sets == o.sets && self.maps == o.maps
    }
}

impl Diagram {
    pub fn new(shape: &Arc<FiniteGroupoid>, sets: Vec<usize>, maps: Vec<Vec<usize>>) -> Result<Self> {
        let d = Diagram { shape: shape.clone(), sets, maps };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        let s = &self.shape;
        if self.sets.len() != s.objects() || self.maps.len() != s.morphisms() {
            return Err(Error::ShapeMismatch("diagram tables have wrong length".into()));
        }
        for f in 0..s.morphisms() {
            let (a, b) = (s.src(f), s.dst(f));
            if self.maps[f].len() != self.sets[a] || self.maps[f].iter().any(|&v| v >= self.sets[b]) {
                return Err(Error::ShapeMismatch(format!("map of morphism {f} has wrong shape")));
            }
        }
        for a in 0..s.objects() {
            if self.maps[s.id(a)].iter().enumerate().any(|(x, &y)| x != y) {
                return Err(Error::ShapeMismatch(format!("identity of {a} not sent to the identity")));
            }
        }
        for f in 0..s.morphisms() {
            for &g in s.out(s.dst(f)) {
                let gf = s.compose(g, f);
                if (0..self.sets[s.src(f)]).any(|x| self.maps[gf][x] != self.maps[g][self.maps[f][x]]) {
                    return Err(Error::ShapeMismatch(format!("composition not preserved at ({g},{f})")));
                }
            }
        }
        Ok(())
    }

    /// The constant diagram with value {0..n-1}.
    pub fn constant(shape: &Arc<FiniteGroupoid>, n: usize) -> Self {
        Diagram { shape: shape.clone(), sets: vec![n; shape.objects()], maps: vec![(0..n).collect(); shape.morphisms()] }
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().sum()
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().copied().max().unwrap_or(0)
    }
}

/// Objectwise disjoint union; elements of `b` come after those of `a`.
pub fn diagram_coproduct(a: &Diagram, b: &Diagram) -> Result<Diagram> {
    if *a.shape != *b.shape {
        return Err(Error::ShapeMismatch("coproduct of diagrams on different shapes".into()));
    }
    let s = &a.shape;
    let sets = a.sets.iter().zip(&b.sets).map(|(x, y)| x + y).collect();
    let maps = (0..s.morphisms())
        .map(|f| {
            let off = a.sets[s.dst(f)];
            a.maps[f].iter().copied().chain(b.maps[f].iter().map(|&y| y + off)).collect()
        })
        .collect();
    Ok(Diagram { shape: s.clone(), sets, maps })
}

/// u* D = D ∘ u.
pub fn restrict(u: &Functor, d: &Diagram) -> Result<Diagram> {
    if *u.dst != *d.shape {
        return Err(Error::ShapeMismatch("functor target is not the diagram's shape".into()));
    }
    Ok(Diagram {
        shape: u.src.clone(),
        sets: u.obj.iter().map(|&j| d.sets[j]).collect(),
        maps: u.mor.iter().map(|&m| d.maps[m].clone()).collect(),
    })
}

/// Components of a natural transformation between diagrams on the same shape.
pub type DiagramMap = Vec<Vec<usize>>;

pub fn is_natural(d: &Diagram, e: &Diagram, t: &DiagramMap) -> bool {
    let s = &d.shape;
    if *d.shape != *e.shape || t.len() != s.objects() {
        return false;
    }
    if (0..s.objects()).any(|a| t[a].len() != d.sets[a] || t[a].iter().any(|&y| y >= e.sets[a])) {
        return false;
    }
    (0..s.morphisms()).all(|f| {
        let (a, b) = (s.src(f), s.dst(f));
        (0..d.sets[a]).all(|x| t[b][d.maps[f][x]] == e.maps[f][t[a][x]])
    })
}

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// u_! D with its unit D ⇒ u* u_! D.
#[derive(Clone, Debug)]
pub struct KanExtension {
    pub functor: Functor,
    pub source: Diagram,
    pub diagram: Diagram,
    /// unit[i]: D(i) → u_!D(u i).
    pub unit: DiagramMap,
    /// A representative (i, φ: u(i) → j, x) for every class of u_!D(j).
    pub reps: Vec<Vec<(usize, usize, usize)>>,
    classes: Vec<HashMap<(usize, usize), Vec<usize>>>,
}

impl KanExtension {
    /// The class of (i, φ, x) in u_!D(j), where φ: u(i) → j.
    pub fn class_of(&self, i: usize, phi: usize, x: usize) -> usize {
        let j = self.functor.dst.dst(phi);
        self.classes[j][&(i, phi)][x]
    }

    /// Nat(u_!D, E) → Nat(D, u*E): α ↦ u*α ∘ η.
    pub fn transpose_down(&self, alpha: &DiagramMap) -> DiagramMap {
        let u = &self.functor;
        (0..u.src.objects()).map(|i| self.unit[i].iter().map(|&c| alpha[u.obj[i]][c]).collect()).collect()
    }

    /// Nat(D, u*E) → Nat(u_!D, E): β ↦ ([i, φ, x] ↦ E(φ)(β_i x)).
    pub fn transpose_up(&self, e: &Diagram, beta: &DiagramMap) -> DiagramMap {
        self.reps.iter().map(|rs| rs.iter().map(|&(i, phi, x)| e.maps[phi][beta[i][x]]).collect()).collect()
    }
}

/// Colimit over the comma category (u/j) at each j: the disjoint union of the values D(i) over
/// pairs (i, φ: u(i) → j), glued along the arrows of I.
pub fn left_kan(u: &Functor, d: &Diagram) -> Result<KanExtension> {
    if *u.src != *d.shape {
        return Err(Error::ShapeMismatch("functor source is not the diagram's shape".into()));
    }
    let (i_g, j_g) = (&u.src, &u.dst);
    let mut sets = vec![0; j_g.objects()];
    let mut reps = vec![Vec::new(); j_g.objects()];
    let mut classes = vec![HashMap::new(); j_g.objects()];
    for j in 0..j_g.objects() {
        let mut offset: HashMap<(usize, usize), usize> = HashMap::new();
        let mut elems = Vec::new();
        for i in 0..i_g.objects() {
            for phi in j_g.hom(u.obj[i], j) {
                offset.insert((i, phi), elems.len());
                elems.extend((0..d.sets[i]).map(|x| (i, phi, x)));
            }
        }
        let mut parent: Vec<usize> = (0..elems.len()).collect();
        for (&(i, phi), &off) in &offset {
            for &f in i_g.out(i) {
                let i2 = i_g.dst(f);
                let phi2 = j_g.compose(phi, j_g.inv(u.mor[f]));
                let off2 = offset[&(i2, phi2)];
                for x in 0..d.sets[i] {
                    let (ra, rb) = (union_find_root(&mut parent, off + x), union_find_root(&mut parent, off2 + d.maps[f][x]));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        // classes numbered by their least element
        let mut number = vec![usize::MAX; elems.len()];
        let mut cls = vec![0; elems.len()];
        for k in 0..elems.len() {
            let r = union_find_root(&mut parent, k);
            if number[r] == usize::MAX {
                number[r] = reps[j].len();
                reps[j].push(elems[k]);
            }
            cls[k] = number[r];
        }
        sets[j] = reps[j].len();
        for (&key, &off) in &offset {
            classes[j].insert(key, cls[off..off + d.sets[key.0]].to_vec());
        }
    }
    let maps = (0..j_g.morphisms())
        .map(|psi| {
            let j2 = j_g.dst(psi);
            reps[j_g.src(psi)].iter().map(|&(i, phi, x)| classes[j2][&(i, j_g.compose(psi, phi))][x]).collect()
        })
        .collect();
    let diagram = Diagram { shape: j_g.clone(), sets, maps };
    debug_assert!(diagram.validate().is_ok());
    let unit = (0..i_g.objects()).map(|i| classes[u.obj[i]][&(i, j_g.id(u.obj[i]))].clone()).collect();
    Ok(KanExtension { functor: u.clone(), source: d.clone(), diagram, unit, reps, classes })
}

/// Per component: base object, arrows from it, and its automorphism group.
struct ComponentData {
    members: Vec<usize>,
    base: usize,
    reach: Vec<usize>,
    aut: Group,
    aut_elems: Vec<usize>,
    aut_pos: HashMap<usize, usize>,
}

fn component_data(s: &FiniteGroupoid) -> Vec<ComponentData> {
    s.components()
        .into_iter()
        .map(|members| {
            let base = members[0];
            let reach = members.iter().map(|&a| if a == base { s.id(a) } else { s.hom(base, a)[0] }).collect();
            let (aut, aut_elems) = s.automorphism_group(base);
            let aut_pos = aut_elems.iter().enumerate().map(|(k, &f)| (f, k)).collect();
            ComponentData { members, base, reach, aut, aut_elems, aut_pos }
        })
        .collect()
}

/// The Aut(base)-set D(base) of one component.
fn base_action(d: &Diagram, c: &ComponentData) -> GSet {
    let n = d.sets[c.base];
    GSet::from_fn(&c.aut, n, |g, x| d.maps[c.aut_elems[g]][x])
}

/// Natural isomorphism D ≅ E, if one exists. On each component an equivariant bijection at the
/// base object is transported along the chosen arrows.
pub fn find_diagram_iso(d: &Diagram, e: &Diagram) -> Option<DiagramMap> {
    if *d.shape != *e.shape {
        return None;
    }
    let s = &d.shape;
    let mut comp = vec![Vec::new(); s.objects()];
    for c in component_data(s) {
        let theta = gset_isomorphism(&base_action(d, &c), &base_action(e, &c))?;
        for (&a, &r) in c.members.iter().zip(&c.reach) {
            let ri = s.inv(r);
            comp[a] = (0..d.sets[a]).map(|x| e.maps[r][theta[d.maps[ri][x]]]).collect();
        }
    }
    debug_assert!(is_natural(d, e, &comp));
    Some(comp)
}

/// All natural transformations D ⇒ E (brute force at base objects).
pub fn natural_transformations(d: &Diagram, e: &Diagram, limit: usize) -> Result<Vec<DiagramMap>> {
    if *d.shape != *e.shape {
        return Err(Error::ShapeMismatch("natural transformations between different shapes".into()));
    }
    let s = &d.shape;
    let mut per_comp: Vec<Vec<Vec<usize>>> = Vec::new();
    let comps = component_data(s);
    for c in &comps {
        let (n, m) = (d.sets[c.base], e.sets[c.base]);
        let total = (m as f64).powi(n as i32);
        if total > limit as f64 {
            return Err(Error::SizeBoundExceeded(format!("{m}^{n} candidate maps")));
        }
        let mut found = Vec::new();
        let mut f = vec![0; n];
        loop {
            if m > 0 || n == 0 {
                let ok = c.aut_elems.iter().all(|&g| (0..n).all(|x| f[d.maps[g][x]] == e.maps[g][f[x]]));
                if ok {
                    found.push(f.clone());
                }
            }
            // next tuple
            let mut k = 0;
            while k < n {
                f[k] += 1;
                if f[k] < m {
                    break;
                }
                f[k] = 0;
                k += 1;
            }
            if k == n || m == 0 {
                break;
            }
        }
        per_comp.push(found);
    }
    let mut out = vec![vec![Vec::new(); s.objects()]];
    for (c, found) in comps.iter().zip(&per_comp) {
        let mut next = Vec::new();
        for t in &out {
            for f in found {
                let mut t2 = t.clone();
                for (&a, &r) in c.members.iter().zip(&c.reach) {
                    let ri = s.inv(r);
                    t2[a] = (0..d.sets[a]).map(|x| e.maps[r][f[d.maps[ri][x]]]).collect();
                }
                next.push(t2);
            }
        }
        out = next;
        if out.len() > limit {
            return Err(Error::SizeBoundExceeded(format!("more than {limit} natural transformations")));
        }
    }
    Ok(out)
}

/// The comma groupoid (a/b) of I →a K ←b J with its projections and λ: a∘p_I ⇒ b∘p_J.
#[derive(Clone, Debug)]
pub struct CommaSquare {
    pub left: Functor,
    pub right: Functor,
    pub comma: Arc<FiniteGroupoid>,
    /// Objects (i, j, κ: a(i) → b(j)).
    pub objects: Vec<(usize, usize, usize)>,
    pub proj_left: Functor,
    pub proj_right: Functor,
    pub lambda: NatTrans,
    index: HashMap<(usize, usize, usize), usize>,
}

impl CommaSquare {
    /// The morphism (f, g) out of object o.
    pub fn morphism(&self, o: usize, f: usize, g: usize) -> Option<usize> {
        self.index.get(&(o, f, g)).copied()
    }
}

pub fn comma_square(a: &Functor, b: &Functor) -> Result<CommaSquare> {
    if *a.dst != *b.dst {
        return Err(Error::ShapeMismatch("comma square needs a common target".into()));
    }
    let (ig, jg, kg) = (&a.src, &b.src, &a.dst);
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for i in 0..ig.objects() {
        for j in 0..jg.objects() {
            for k in kg.hom(a.obj[i], b.obj[j]) {
                obj_index.insert((i, j, k), objects.len());
                objects.push((i, j, k));
            }
        }
    }
    let mut ends = Vec::new();
    let mut mors = Vec::new();
    let mut index = HashMap::new();
    for (o, &(i, j, k)) in objects.iter().enumerate() {
        for &f in ig.out(i) {
            for &g in jg.out(j) {
                let k2 = kg.compose(kg.compose(b.mor[g], k), kg.inv(a.mor[f]));
                let o2 = obj_index[&(ig.dst(f), jg.dst(g), k2)];
                index.insert((o, f, g), ends.len());
                ends.push((o, o2));
                mors.push((f, g));
            }
        }
    }
    let ident = (0..objects.len()).map(|o| index[&(o, ig.id(objects[o].0), jg.id(objects[o].1))]).collect();
    let comma = Arc::new(FiniteGroupoid::new(objects.len(), ends.clone(), ident, |m2, m1| {
        let (f1, g1) = mors[m1];
        let (f2, g2) = mors[m2];
        index.get(&(ends[m1].0, ig.compose(f2, f1), jg.compose(g2, g1))).copied()
    })?);
    let proj_left = Functor::new(&comma, ig, objects.iter().map(|o| o.0).collect(), mors.iter().map(|m| m.0).collect())?;
    let proj_right = Functor::new(&comma, jg, objects.iter().map(|o| o.1).collect(), mors.iter().map(|m| m.1).collect())?;
    let lambda = NatTrans { src: a.compose(&proj_left), dst: b.compose(&proj_right), comp: objects.iter().map(|o| o.2).collect() };
    lambda.validate()?;
    Ok(CommaSquare { left: a.clone(), right: b.clone(), comma, objects, proj_left, proj_right, lambda, index })
}

/// Both sides of base change on a diagram D over I, with the canonical comparison map
/// (p_J)_! p_I* D → b* a_! D.
#[derive(Clone, Debug)]
pub struct BaseChange {
    pub lhs: Diagram,
    pub rhs: Diagram,
    pub mate: DiagramMap,
    pub mate_well_defined: bool,
    pub mate_is_iso: bool,
    pub iso_exists: bool,
}

impl BaseChange {
    pub fn holds(&self) -> bool {
        self.mate_well_defined && self.mate_is_iso && self.iso_exists
    }
}

pub fn base_change(sq: &CommaSquare, d: &Diagram) -> Result<BaseChange> {
    let kan_a = left_kan(&sq.left, d)?;
    let rhs = restrict(&sq.right, &kan_a.diagram)?;
    let kan_p = left_kan(&sq.proj_right, &restrict(&sq.proj_left, d)?)?;
    let lhs = kan_p.diagram.clone();
    let (jg, kg) = (&sq.right.src, &sq.left.dst);
    let send = |o: usize, psi: usize, x: usize| {
        let (i, _, k) = sq.objects[o];
        kan_a.class_of(i, kg.compose(sq.right.mor[psi], k), x)
    };
    let mate: DiagramMap = kan_p.reps.iter().map(|rs| rs.iter().map(|&(o, psi, x)| send(o, psi, x)).collect()).collect();
    // every element of every class must land where its representative does
    let mut well = true;
    for j in 0..jg.objects() {
        for (o, _) in sq.objects.iter().enumerate() {
            for psi in jg.hom(sq.proj_right.obj[o], j) {
                for x in 0..d.sets[sq.objects[o].0] {
                    if mate[j][kan_p.class_of(o, psi, x)] != send(o, psi, x) {
                        well = false;
                    }
                }
            }
        }
    }
    let bijective = (0..jg.objects()).all(|j| {
        let mut seen = vec![false; rhs.sets[j]];
        lhs.sets[j] == rhs.sets[j] && mate[j].iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    });
    let mate_is_iso = bijective && is_natural(&lhs, &rhs, &mate);
    let iso_exists = find_diagram_iso(&lhs, &rhs).is_some();
    Ok(BaseChange { lhs, rhs, mate, mate_well_defined: well, mate_is_iso, iso_exists })
}

pub fn base_change_check(sq: &CommaSquare, d: &Diagram) -> Result<bool> {
    Ok(base_change(sq, d)?.holds())
}

/// el of a bipullback compared with the comma square of el(a), el(b).
#[derive(Clone, Debug)]
pub struct ElSquare {
    pub bipullback: Bipullback,
    pub el_apex: Arc<FiniteGroupoid>,
    pub square: CommaSquare,
    /// el(P) → (el a / el b), an isomorphism of groupoids when `is_iso`.
    pub comparison: Functor,
    pub is_iso: bool,
}

pub fn el_square(a: &OneCell, b: &OneCell) -> Result<ElSquare> {
    let bp = bipullback(a, b)?;
    let (elx, ely, elz) = (Arc::new(el(&a.src)), Arc::new(el(&b.src)), Arc::new(el(&a.dst)));
    let sq = comma_square(&el1(a, &elx, &elz), &el1(b, &ely, &elz))?;
    let el_apex = Arc::new(el(&bp.apex));
    let (ng, nh, nk) = (a.src.group().order(), b.src.group().order(), a.dst.group().order());
    let nprod = ng * nh;
    let obj_index: HashMap<(usize, usize, usize), usize> = sq.objects.iter().enumerate().map(|(o, &t)| (t, o)).collect();
    let mut obj = Vec::new();
    for &(p, q, c) in &bp.triples {
        obj.push(*obj_index.get(&(p, q, a.alpha[p] * nk + c)).ok_or_else(|| Error::ShapeMismatch("triple is not a comma object".into()))?);
    }
    let mut mor = Vec::new();
    for m in 0..el_apex.morphisms() {
        let (t, e) = (m / nprod, m % nprod);
        let (s, u) = unpair(nh, e);
        let (p, q, _) = bp.triples[t];
        mor.push(sq.morphism(obj[t], p * ng + s, q * nh + u).ok_or_else(|| Error::ShapeMismatch("missing comma morphism".into()))?);
    }
    let comparison = Functor::new(&el_apex, &sq.comma, obj, mor)?;
    let injective = |v: &[usize], n: usize| {
        let mut seen = vec![false; n];
        v.len() == n && v.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    };
    let is_iso = injective(&comparison.obj, sq.comma.objects()) && injective(&comparison.mor, sq.comma.morphisms());
    Ok(ElSquare { bipullback: bp, el_apex, square: sq, comparison, is_iso })
}

/// A G-set A with f: A → X as a diagram on el(X/G): the fibers.
pub fn gset_to_diagram(x: &ZeroCell, shape: &Arc<FiniteGroupoid>, a: &GSet, f: &[usize]) -> Diagram {
    let g = x.group();
    let mut fibers = vec![Vec::new(); x.size()];
    let mut pos = vec![0; a.size()];
    for (k, &p) in f.iter().enumerate() {
        pos[k] = fibers[p].len();
        fibers[p].push(k);
    }
    let n = g.order();
    let maps = (0..x.size() * n).map(|m| fibers[m / n].iter().map(|&k| pos[a.act(m % n, k)]).collect()).collect();
    Diagram { shape: shape.clone(), sets: fibers.iter().map(|v| v.len()).collect(), maps }
}

/// A diagram on el(X/G) as a G-set over X: the disjoint union of its values.
pub fn diagram_to_gset(x: &ZeroCell, d: &Diagram) -> (GSet, Vec<usize>) {
    let g = x.group();
    let n = g.order();
    let mut offset = vec![0; x.size() + 1];
    for p in 0..x.size() {
        offset[p + 1] = offset[p] + d.sets[p];
    }
    let mut owner = Vec::new();
    for p in 0..x.size() {
        owner.extend((0..d.sets[p]).map(|v| (p, v)));
    }
    let set = GSet::from_fn(g, owner.len(), |s, k| {
        let (p, v) = owner[k];
        offset[x.act(s, p)] + d.maps[p * n + s][v]
    });
    (set, owner.iter().map(|o| o.0).collect())
}

/// All permutations of 0..n in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// Every action of `g` on {0..n-1}, as rows[g][x], by assigning permutations to generators.
fn actions_on(g: &Group, n: usize) -> Vec<Vec<Vec<usize>>> {
    let gens = generating_set(g);
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut choice = vec![0; gens.len()];
    loop {
        let mut rows: Vec<Option<Vec<usize>>> = vec![None; g.order()];
        rows[0] = Some((0..n).collect());
        let mut queue = vec![0];
        let mut ok = true;
        while let Some(h) = queue.pop() {
            for (gi, &s) in gens.iter().enumerate() {
                let sh = g.mul(s, h);
                let p = &perms[choice[gi]];
                let img: Vec<usize> = rows[h].as_ref().unwrap().iter().map(|&x| p[x]).collect();
                match &rows[sh] {
                    Some(r) if *r != img => ok = false,
                    Some(_) => {}
                    None => {
                        rows[sh] = Some(img);
                        queue.push(sh);
                    }
                }
            }
        }
        if ok {
            let rows: Vec<Vec<usize>> = rows.into_iter().map(|r| r.expect("generators generate")).collect();
            let hom = g.elements().all(|a| g.elements().all(|b| (0..n).all(|x| rows[g.mul(a, b)][x] == rows[a][rows[b][x]])));
            if hom {
                out.push(rows);
            }
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < perms.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    out
}

/// Iso classes of diagrams on el(X/G) whose values have at most `bound` elements.
#[derive(Clone, Debug)]
pub struct ClassCatalog {
    pub cell: ZeroCell,
    pub shape: Arc<FiniteGroupoid>,
    pub classes: Vec<Diagram>,
}

impl ClassCatalog {
    pub fn find(&self, d: &Diagram) -> Option<usize> {
        self.classes.iter().position(|c| find_diagram_iso(c, d).is_some())
    }

    /// The monoid operation on classes, when the sum stays inside the catalog.
    pub fn sum(&self, k: usize, l: usize) -> Option<usize> {
        self.find(&diagram_coproduct(&self.classes[k], &self.classes[l]).ok()?)
    }

    /// The class of the empty diagram.
    pub fn zero(&self) -> usize {
        self.find(&Diagram::constant(&self.shape, 0)).expect("empty diagram is listed")
    }
}

const MAX_BOUND: usize = 4;
const MAX_CLASSES: usize = 20_000;

pub fn diagram_classes(x: &ZeroCell, bound: usize) -> Result<ClassCatalog> {
    if bound > MAX_BOUND {
        return Err(Error::SizeBoundExceeded(format!("value size bound {bound} exceeds {MAX_BOUND}")));
    }
    let shape = Arc::new(el(x));
    let s = &shape;
    let mut classes = vec![Diagram::constant(s, 0)];
    for c in component_data(s) {
        // iso classes of Aut(base)-sets of size ≤ bound, spread over the component
        let mut found: Vec<GSet> = Vec::new();
        let mut pieces = Vec::new();
        for n in 0..=bound {
            for rows in actions_on(&c.aut, n) {
                let set = GSet::new(&c.aut, n, &rows)?;
                if found.iter().any(|f| gset_isomorphism(f, &set).is_some()) {
                    continue;
                }
                found.push(set);
                let mut sets = vec![0; s.objects()];
                let mut maps = vec![Vec::new(); s.morphisms()];
                for &a in &c.members {
                    sets[a] = n;
                }
                let pos_of: HashMap<usize, usize> = c.members.iter().enumerate().map(|(k, &a)| (a, k)).collect();
                for &a in &c.members {
                    for &f in s.out(a) {
                        let b = s.dst(f);
                        let aut = s.compose(s.inv(c.reach[pos_of[&b]]), s.compose(f, c.reach[pos_of[&a]]));
                        maps[f] = rows[c.aut_pos[&aut]].clone();
                    }
                }
                pieces.push(Diagram { shape: s.clone(), sets, maps });
            }
        }
        let mut next = Vec::new();
        for d in &classes {
            for p in &pieces {
                next.push(diagram_coproduct(d, p)?);
            }
        }
        if next.len() > MAX_CLASSES {
            return Err(Error::SizeBoundExceeded(format!("more than {MAX_CLASSES} classes over {} points", x.size())));
        }
        classes = next;
    }
    Ok(ClassCatalog { cell: x.clone(), shape, classes })
}

/// Pushes and pulls of catalog classes along one 1-cell.
#[derive(Clone, Debug)]
pub struct InducedMaps {
    pub cell: OneCell,
    pub source: usize,
    pub target: usize,
    /// α_! of each source class.
    pub push: Vec<Diagram>,
    /// α* of each target class, as a source class index.
    pub pull: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SemiMackeyData {
    pub bound: usize,
    pub catalogs: Vec<ClassCatalog>,
    pub maps: Vec<InducedMaps>,
}

pub fn semi_mackey_from_prederivator(cells: &[OneCell], bound: usize) -> Result<SemiMackeyData> {
    let mut catalogs: Vec<ClassCatalog> = Vec::new();
    let catalog_of = |z: &ZeroCell, catalogs: &mut Vec<ClassCatalog>| -> Result<usize> {
        if let Some(k) = catalogs.iter().position(|c| c.cell.same(z)) {
            return Ok(k);
        }
        catalogs.push(diagram_classes(z, bound)?);
        Ok(catalogs.len() - 1)
    };
    let mut maps = Vec::new();
    for a in cells {
        let source = catalog_of(&a.src, &mut catalogs)?;
        let target = catalog_of(&a.dst, &mut catalogs)?;
        let (cs, ct) = (&catalogs[source], &catalogs[target]);
        let u = el1(a, &cs.shape, &ct.shape);
        let push = cs.classes.iter().map(|d| Ok(left_kan(&u, d)?.diagram)).collect::<Result<Vec<_>>>()?;
        let pull = ct
            .classes
            .iter()
            .map(|d| cs.find(&restrict(&u, d)?).ok_or_else(|| Error::SizeBoundExceeded("pullback left the catalog".into())))
            .collect::<Result<Vec<_>>>()?;
        maps.push(InducedMaps { cell: a.clone(), source, target, push, pull });
    }
    Ok(SemiMackeyData { bound, catalogs, maps })
}

/// Compares the extracted data with Ω through the fiber dictionary; returns the mismatches.
pub fn compare_with_burnside(data: &SemiMackeyData) -> Result<Vec<String>> {
    let mut fails = Vec::new();
    for (mi, m) in data.maps.iter().enumerate() {
        let (cs, ct) = (&data.catalogs[m.source], &data.catalogs[m.target]);
        let (bs, bt) = (BurnsideBasis::of(&cs.cell)?, BurnsideBasis::of(&ct.cell)?);
        let coords = |b: &BurnsideBasis, x: &ZeroCell, d: &Diagram| -> Vec<Q> {
            let (set, f) = diagram_to_gset(x, d);
            b.decompose(&set, &f)
        };
        let (push, pull) = (omega_push(&m.cell)?, omega_pull(&m.cell)?);
        for (k, d) in cs.classes.iter().enumerate() {
            if coords(&bt, &ct.cell, &m.push[k]) != push.apply(&coords(&bs, &cs.cell, d)) {
                fails.push(format!("cell {mi}: push of class {k}"));
            }
        }
        for (k, d) in ct.classes.iter().enumerate() {
            if coords(&bs, &cs.cell, &cs.classes[m.pull[k]]) != pull.apply(&coords(&bt, &ct.cell, d)) {
                fails.push(format!("cell {mi}: pull of class {k}"));
            }
        }
    }
    Ok(fails)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::gset::GSet;

    fn one_object(g: &Group) -> Arc<FiniteGroupoid> {
        Arc::new(FiniteGroupoid::from_group(g))
    }

    fn hom_functor(f: &GroupHom) -> Functor {
        Functor::new(&one_object(&f.src), &one_object(&f.dst), vec![0], f.map.clone()).unwrap()
    }

    fn from_gset(g: &Group, a: &GSet) -> Diagram {
        Diagram::new(&one_object(g), vec![a.size()], a.rows()).unwrap()
    }

    #[test]
    fn restriction_by_hand() {
        // two objects 0, 1 joined by t: 0 → 1 and its inverse; morphisms id0, t, id1, t⁻¹
        let s = Arc::new(el(&ZeroCell::new(GSet::regular(&cyclic(2)))));
        let d = Diagram::new(&s, vec![2, 2], vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]).unwrap();
        // swap the two objects
        let u = Functor::new(&s, &s, vec![1, 0], vec![2, 3, 0, 1]).unwrap();
        let r = restrict(&u, &d).unwrap();
        assert_eq!(r.maps, vec![vec![0, 1], vec![1, 0], vec![0, 1], vec![1, 0]]);
        let d3 = Diagram::new(&s, vec![1, 1], vec![vec![0]; 4]).unwrap();
        let shifted = Diagram::new(&s, vec![2, 2], vec![vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1]]).unwrap();
        assert_eq!(restrict(&u, &diagram_coproduct(&d3, &d3).unwrap()).unwrap(), shifted);
        assert_eq!(restrict(&Functor::identity(&s), &d).unwrap(), d);
        assert_eq!(restrict(&u, &Diagram::constant(&s, 3)).unwrap(), Diagram::constant(&s, 3));
    }

    #[test]
    fn kan_along_identity_and_from_trivial_group() {
        let g = symmetric(3);
        let s3 = one_object(&g);
        let d = from_gset(&g, &GSet::cosets(&g, &[0, 1]).0);
        let k = left_kan(&Functor::identity(&s3), &d).unwrap();
        assert!(find_diagram_iso(&k.diagram, &d).is_some());
        let e = trivial();
        let u = hom_functor(&GroupHom::trivial(&e, &g));
        let k = left_kan(&u, &Diagram::constant(&one_object(&e), 1)).unwrap();
        assert_eq!(k.diagram.sets, vec![6]);
        let reg = from_gset(&g, &GSet::regular(&g));
        assert!(find_diagram_iso(&k.diagram, &reg).is_some());
    }

    #[test]
    fn kan_along_fold() {
        let g = cyclic(3);
        let one = one_object(&g);
        let two = Arc::new(one.coproduct(&one));
        let n = g.order();
        let fold = Functor::new(&two, &one, vec![0, 0], (0..2 * n).map(|m| m % n).collect()).unwrap();
        let d1 = from_gset(&g, &GSet::regular(&g));
        let d2 = Diagram::constant(&one, 2);
        let d = Diagram::new(&two, vec![3, 2], d1.maps.iter().chain(&d2.maps).cloned().collect()).unwrap();
        let k = left_kan(&fold, &d).unwrap();
        assert!(find_diagram_iso(&k.diagram, &diagram_coproduct(&d1, &d2).unwrap()).is_some());
    }

    #[test]
    fn adjunction_round_trip() {
        let g = symmetric(3);
        let (h, incl) = subgroup_group(&g, &[0, 1]);
        let u = hom_functor(&incl);
        let d = from_gset(&h, &GSet::regular(&h));
        let k = left_kan(&u, &d).unwrap();
        for e in [from_gset(&g, &GSet::cosets(&g, &[0, 1]).0), from_gset(&g, &GSet::regular(&g)), Diagram::constant(&one_object(&g), 2)] {
            let down = natural_transformations(&k.diagram, &e, 100_000).unwrap();
            let ue = restrict(&u, &e).unwrap();
            let up = natural_transformations(&d, &ue, 100_000).unwrap();
            assert_eq!(down.len(), up.len());
            for a in &down {
                let b = k.transpose_down(a);
                assert!(is_natural(&d, &ue, &b));
                assert_eq!(&k.transpose_up(&e, &b), a);
            }
            for b in &up {
                let a = k.transpose_up(&e, b);
                assert!(is_natural(&k.diagram, &e, &a));
                assert_eq!(&k.transpose_down(&a), b);
            }
        }
    }

    #[test]
    fn kan_preserves_coproducts() {
        let g = dihedral(4);
        let (h, incl) = subgroup_group(&g, &generated(&g, &[1]));
        let u = hom_functor(&incl);
        let a = from_gset(&h, &GSet::regular(&h));
        let b = Diagram::constant(&one_object(&h), 1);
        let lhs = left_kan(&u, &diagram_coproduct(&a, &b).unwrap()).unwrap().diagram;
        let rhs = diagram_coproduct(&left_kan(&u, &a).unwrap().diagram, &left_kan(&u, &b).unwrap().diagram).unwrap();
        assert!(find_diagram_iso(&lhs, &rhs).is_some());
    }

    #[test]
    fn base_change_over_a_point() {
        let e = trivial();
        let pt = one_object(&e);
        let id = Functor::identity(&pt);
        let sq = comma_square(&id, &id).unwrap();
        assert_eq!(sq.comma.objects(), 1);
        let bc = base_change(&sq, &Diagram::constant(&pt, 3)).unwrap();
        assert_eq!((bc.lhs.sets.clone(), bc.rhs.sets.clone()), (vec![3], vec![3]));
        assert!(bc.holds());
    }

    #[test]
    fn base_change_c2_in_s3() {
        let g = symmetric(3);
        let (_, incl) = subgroup_group(&g, &[0, 1]);
        let u = hom_functor(&incl);
        let sq = comma_square(&u, &u).unwrap();
        // comma objects are the elements of S3: three components, automorphisms C2 ∩ C2^k
        assert_eq!(sq.comma.objects(), 6);
        let three = from_gset(&g, &GSet::cosets(&g, &[0, 1]).0);
        let d = restrict(&u, &three).unwrap();
        let bc = base_change(&sq, &d).unwrap();
        assert!(bc.holds());
        // a_! of the 3-letter C2-set has 9 points; restricted to C2 it is 1+2+2+2+2
        assert_eq!(bc.rhs.sets, vec![9]);
            }

    #[test]
    fn el_of_bipullback_is_a_comma_square() {
        let g = symmetric(3);
        let (h, incl) = subgroup_group(&g, &[0, 1]);
        let a = OneCell::from_hom(&incl);
        let es = el_square(&a, &a).unwrap();
        assert!(es.is_iso);
        let x = ZeroCell::pt(&h);
        let elx = es.square.left.src.clone();
        for d in [Diagram::constant(&elx, 1), gset_to_diagram(&x, &elx, &GSet::regular(&h), &[0, 0])] {
            assert!(base_change_check(&es.square, &d).unwrap());
        }
    }

    #[test]
    fn fiber_dictionary_round_trip() {
        let g = cyclic(4);
        let x = ZeroCell::new(GSet::cosets(&g, &generated(&g, &[2])).0);
        let shape = Arc::new(el(&x));
        let a = GSet::regular(&g);
        let f: Vec<usize> = (0..4).map(|k| x.act(k, 0)).collect();
        let d = gset_to_diagram(&x, &shape, &a, &f);
        d.validate().unwrap();
        let (b, f2) = diagram_to_gset(&x, &d);
        assert_eq!(f2.len(), 4);
        let d2 = gset_to_diagram(&x, &shape, &b, &f2);
        assert_eq!(d, d2);
    }

    #[test]
    fn class_counts() {
        let c2 = cyclic(2);
        // C2-sets of size ≤ 2: ∅, 1, 1+1, C2
        let cat = diagram_classes(&ZeroCell::pt(&c2), 2).unwrap();
        assert_eq!(cat.classes.len(), 4);
        // S3-sets of size ≤ 3: 1 + 1 + 2 + 3
        assert_eq!(diagram_classes(&ZeroCell::pt(&symmetric(3)), 3).unwrap().classes.len(), 7);
        for i in 0..cat.classes.len() {
            for j in 0..i {
                assert!(find_diagram_iso(&cat.classes[i], &cat.classes[j]).is_none());
            }
        }
        let z = cat.zero();
        assert!((0..cat.classes.len()).all(|k| cat.sum(k, z) == Some(k)));
        assert!(matches!(diagram_classes(&ZeroCell::pt(&c2), 9), Err(Error::SizeBoundExceeded(_))));
    }

    #[test]
    fn semi_mackey_matches_burnside_for_c2_in_s3() {
        let g = symmetric(3);
        let (_, incl) = subgroup_group(&g, &[0, 1]);
        let ind = OneCell::from_hom(&incl);
        let (q, pi) = quotient_group(&g, &generated(&g, &[3]));
        let def = OneCell::from_hom(&pi);
        let data = semi_mackey_from_prederivator(&[ind, def], 3).unwrap();
        assert_eq!(compare_with_burnside(&data).unwrap(), Vec::<String>::new());
        assert_eq!(q.order(), 2);
    }

    #[test]
    fn equivalence_gives_bijection_of_classes() {
        // X = C2/e collapsing onto pt/e
        let c2 = cyclic(2);
        let x = ZeroCell::new(GSet::regular(&c2));
        let e = trivial();
        let a = OneCell::new(&x, &ZeroCell::pt(&e), vec![0, 0], vec![0; 4]).unwrap();
        let data = semi_mackey_from_prederivator(&[a], 2).unwrap();
        let m = &data.maps[0];
        let tgt = &data.catalogs[m.target];
        let mut images: Vec<usize> = m.push.iter().map(|d| tgt.find(d).unwrap()).collect();
        images.sort_unstable();
        assert_eq!(images, (0..tgt.classes.len()).collect::<Vec<_>>());
    }
}
