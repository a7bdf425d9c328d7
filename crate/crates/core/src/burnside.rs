//! Burnside modules Ω_G(X), the big Burnside functor and the splitting i/p.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::cell::{OneCell, ZeroCell};
use crate::error::{Error, Result};
use crate::factorization::sim_factorize;
use crate::group::{conjugate_subgroup, normalizer, subgroup_group, subgroup_lattice, trivial, SubgroupLattice};
use crate::gset::GSet;
use crate::linalg::{Matrix, Q};
use crate::span::{lift_r, lift_t, PointSpan, SpanLinComb};

/// Canonical basis of Ω_G(X): pairs (subgroup class rep K, N_G(K)-orbit minimum of X^K).
#[derive(Debug)]
pub struct BurnsideBasis {
    pub base: ZeroCell,
    pub lattice: SubgroupLattice,
    /// (class index, target point)
    pub elems: Vec<(usize, usize)>,
    lookup: HashMap<(usize, usize), usize>,
    mult: OnceLock<Vec<Vec<Vec<Q>>>>,
}

type BasisKey = (usize, u64, usize, Vec<usize>);

fn basis_cache() -> &'static Mutex<HashMap<BasisKey, Arc<BurnsideBasis>>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<BurnsideBasis>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cell_key(x: &ZeroCell) -> BasisKey {
    (x.group().order(), x.group().fingerprint(), x.size(), x.flat().to_vec())
}

impl BurnsideBasis {
    pub fn of(x: &ZeroCell) -> Result<Arc<BurnsideBasis>> {
        let key = cell_key(x);
        if let Some(b) = basis_cache().lock().unwrap().get(&key) {
            return Ok(b.clone());
        }
        let b = Arc::new(Self::build(x)?);
        basis_cache().lock().unwrap().insert(key, b.clone());
        Ok(b)
    }

    fn build(x: &ZeroCell) -> Result<Self> {
        let g = x.group();
        let lattice = subgroup_lattice(g)?;
        let mut elems = Vec::new();
        let mut lookup = HashMap::new();
        for (c, members) in lattice.classes.iter().enumerate() {
            let r = lattice.reps[c];
            let k = &lattice.subgroups[r];
            let n = normalizer(g, k);
            for p in x.fixed_points(k) {
                if lookup.contains_key(&(r, p)) {
                    continue;
                }
                let idx = elems.len();
                elems.push((c, p));
                for &m in &n {
                    lookup.insert((r, x.act(m, p)), idx);
                }
            }
            for &s in members {
                if s == r {
                    continue;
                }
                // g K g⁻¹ = S, so y ∈ X^S corresponds to g⁻¹y ∈ X^K
                let gs = g.elements().find(|&a| conjugate_subgroup(g, k, a) == lattice.subgroups[s]).expect("conjugate");
                let gi = g.inv(gs);
                for p in x.fixed_points(&lattice.subgroups[s]) {
                    let idx = lookup[&(r, x.act(gi, p))];
                    lookup.insert((s, p), idx);
                }
            }
        }
        Ok(BurnsideBasis { base: x.clone(), lattice, elems, lookup, mult: OnceLock::new() })
    }

    pub fn rank(&self) -> usize {
        self.elems.len()
    }

    pub fn subgroup(&self, i: usize) -> &[usize] {
        self.lattice.class_rep(self.elems[i].0)
    }

    /// Basis index of the transitive G-set over X with point stabilizer `sub` (sorted) mapping to `point`.
    pub fn index(&self, sub: &[usize], point: usize) -> usize {
        let s = self.lattice.index_of(sub).expect("subgroup of G");
        self.lookup[&(s, point)]
    }

    /// Coordinates of a G-set A over X given by an equivariant map f.
    pub fn decompose(&self, a: &GSet, f: &[usize]) -> Vec<Q> {
        let mut v = vec![Q::zero(); self.rank()];
        for o in a.orbits() {
            v[self.index(&o.stabilizer, f[o.rep])] += Q::one();
        }
        v
    }

    /// G/K → X realizing basis element i.
    pub fn realize(&self, i: usize) -> (GSet, Vec<usize>) {
        let g = self.base.group();
        let (set, reps) = GSet::cosets(g, self.subgroup(i));
        let p = self.elems[i].1;
        let map = reps.iter().map(|&r| self.base.act(r, p)).collect();
        (set, map)
    }

    pub fn unit(&self) -> Vec<Q> {
        // X itself over X, identity map
        self.decompose(self.base.set(), &(0..self.base.size()).collect::<Vec<_>>())
    }

    fn structure_constants(&self) -> &Vec<Vec<Vec<Q>>> {
        self.mult.get_or_init(|| {
            let g = self.base.group();
            let real: Vec<(GSet, Vec<usize>)> = (0..self.rank()).map(|i| self.realize(i)).collect();
            let mut table = vec![vec![Vec::new(); self.rank()]; self.rank()];
            for i in 0..self.rank() {
                for j in i..self.rank() {
                    let (a, fa) = &real[i];
                    let (b, fb) = &real[j];
                    let pairs: Vec<(usize, usize)> =
                        (0..a.size()).flat_map(|u| (0..b.size()).map(move |v| (u, v))).filter(|&(u, v)| fa[u] == fb[v]).collect();
                    let idx: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(n, &p)| (p, n)).collect();
                    let set = GSet::from_fn(g, pairs.len(), |s, n| idx[&(a.act(s, pairs[n].0), b.act(s, pairs[n].1))]);
                    let map: Vec<usize> = pairs.iter().map(|&(u, _)| fa[u]).collect();
                    let v = self.decompose(&set, &map);
                    table[i][j] = v.clone();
                    table[j][i] = v;
                }
            }
            table
        })
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &[Q] {
        &self.structure_constants()[i][j]
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
        if a.len() != self.rank() || b.len() != self.rank() {
            return Err(Error::BasisMismatch);
        }
        let mut out = vec![Q::zero(); self.rank()];
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in self.mul_basis(i, j).iter().enumerate() {
                    out[k] += ai * bj * c;
                }
            }
        }
        Ok(out)
    }

    /// Human-readable label "[G/K → x]" using the subgroup order.
    pub fn label(&self, i: usize) -> String {
        let (c, p) = self.elems[i];
        let k = self.lattice.class_rep(c);
        if self.base.size() == 1 {
            format!("[{}/{}]", self.base.group().order(), k.len())
        } else {
            format!("[{}/{}->{}]", self.base.group().order(), k.len(), p)
        }
    }
}

pub fn pt_e() -> ZeroCell {
    ZeroCell::pt(&trivial())
}

/// Elements of the big Burnside group over X are span combinations pt/e → X (left leg = structure cell).
pub type BigBurnside = SpanLinComb;

/// The object [A/K → X/G] given by a transitive structure cell pt/K → X/G.
pub fn big_object(x: &ZeroCell, k: &crate::group::Group, point: usize, hom: &[usize]) -> BigBurnside {
    let e = pt_e();
    SpanLinComb::single(&e, x, PointSpan::new(k, &e, 0, &vec![0; k.order()], x, point, hom))
}

pub fn big_push(a: &OneCell, e: &BigBurnside) -> Result<BigBurnside> {
    if !e.cod.same(&a.src) {
        return Err(Error::EndpointMismatch("big Burnside element is not over the source".into()));
    }
    lift_t(a).compose(e)
}

pub fn big_pull(a: &OneCell, e: &BigBurnside) -> Result<BigBurnside> {
    if !e.cod.same(&a.dst) {
        return Err(Error::EndpointMismatch("big Burnside element is not over the target".into()));
    }
    lift_r(a).compose(e)
}

pub fn map_i(basis: &BurnsideBasis, v: &[Q]) -> Result<BigBurnside> {
    if v.len() != basis.rank() {
        return Err(Error::BaseMismatch);
    }
    let x = &basis.base;
    let e = pt_e();
    let mut out = SpanLinComb::zero(&e, x);
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let (k, incl) = subgroup_group(x.group(), basis.subgroup(i));
        let p = PointSpan::new(&k, &e, 0, &vec![0; k.order()], x, basis.elems[i].1, &incl.map);
        out.terms.push((*c, p));
    }
    out.canonicalize();
    Ok(out)
}

/// p applies the SIm-factorization to each structure cell and reads off [SIm → X].
pub fn map_p(basis: &BurnsideBasis, e: &BigBurnside) -> Result<Vec<Q>> {
    let x = &basis.base;
    if !e.cod.same(x) {
        return Err(Error::BaseMismatch);
    }
    let mut v = vec![Q::zero(); basis.rank()];
    for (c, p) in &e.terms {
        let apex = p.apex();
        let cell = OneCell::point_leg(&apex, x, p.left_point, &p.left);
        let f = sim_factorize(&cell);
        let d = basis.decompose(f.sim.set(), &f.alpha_tilde.alpha);
        for (vi, di) in v.iter_mut().zip(d) {
            *vi += c * di;
        }
    }
    Ok(v)
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct OmegaKey {
    push: bool,
    src: BasisKey,
    dst: BasisKey,
    alpha: Vec<usize>,
    theta: Vec<usize>,
}

fn omega_memo() -> &'static Mutex<HashMap<OmegaKey, Matrix>> {
    static MEMO: OnceLock<Mutex<HashMap<OmegaKey, Matrix>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

fn omega_map(a: &OneCell, push: bool) -> Result<Matrix> {
    let key = OmegaKey { push, src: cell_key(&a.src), dst: cell_key(&a.dst), alpha: a.alpha.clone(), theta: a.theta.clone() };
    if let Some(m) = omega_memo().lock().unwrap().get(&key) {
        return Ok(m.clone());
    }
    let (from, to) = if push { (&a.src, &a.dst) } else { (&a.dst, &a.src) };
    let bf = BurnsideBasis::of(from)?;
    let bt = BurnsideBasis::of(to)?;
    let mut cols = Vec::with_capacity(bf.rank());
    for i in 0..bf.rank() {
        let mut unit = vec![Q::zero(); bf.rank()];
        unit[i] = Q::one();
        let big = map_i(&bf, &unit)?;
        let moved = if push { big_push(a, &big)? } else { big_pull(a, &big)? };
        cols.push(map_p(&bt, &moved)?);
    }
    let m = Matrix::from_columns(bt.rank(), &cols);
    omega_memo().lock().unwrap().insert(key, m.clone());
    Ok(m)
}

/// Ω_!(α) = p ∘ Ω_big!(α) ∘ i in the canonical bases.
pub fn omega_push(a: &OneCell) -> Result<Matrix> {
    omega_map(a, true)
}

/// Ω*(α) = p ∘ Ω_big*(α) ∘ i in the canonical bases.
pub fn omega_pull(a: &OneCell) -> Result<Matrix> {
    omega_map(a, false)
}

/// p on a big element computed directly from the structure homomorphisms (independent of SIm).
pub fn map_p_direct(basis: &BurnsideBasis, e: &BigBurnside) -> Vec<Q> {
    let mut v = vec![Q::zero(); basis.rank()];
    for (c, p) in &e.terms {
        let mut img = p.left.clone();
        img.sort_unstable();
        img.dedup();
        v[basis.index(&img, p.left_point)] += c;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::linalg::q;

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(BurnsideBasis::of(&ZeroCell::pt(&cyclic(2))).unwrap().rank(), 2);
        assert_eq!(BurnsideBasis::of(&ZeroCell::pt(&symmetric(3))).unwrap().rank(), 4);
        assert_eq!(BurnsideBasis::of(&ZeroCell::empty(&symmetric(3))).unwrap().rank(), 0);
    }

    #[test]
    fn c2_multiplication() {
        let b = BurnsideBasis::of(&ZeroCell::pt(&cyclic(2))).unwrap();
        // basis order: [C2/e], [C2/C2]
        assert_eq!(b.subgroup(0).len(), 1);
        assert_eq!(b.mul_basis(0, 0), &qv(&[2, 0])[..]);
        assert_eq!(b.mul_basis(1, 0), &qv(&[1, 0])[..]);
        assert_eq!(b.unit(), qv(&[0, 1]));
    }

    #[test]
    fn s3_multiplication() {
        let b = BurnsideBasis::of(&ZeroCell::pt(&symmetric(3))).unwrap();
        let orders: Vec<usize> = (0..4).map(|i| b.subgroup(i).len()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        // [S3/C2]·[S3/C2] = [S3/C2] + [S3/e]
        assert_eq!(b.mul_basis(1, 1), &qv(&[1, 1, 0, 0])[..]);
    }

    #[test]
    fn splitting_and_examples() {
        for g in [cyclic(2), symmetric(3)] {
            let x = ZeroCell::pt(&g);
            let b = BurnsideBasis::of(&x).unwrap();
            for i in 0..b.rank() {
                let mut u = vec![Q::zero(); b.rank()];
                u[i] = Q::one();
                assert_eq!(map_p(&b, &map_i(&b, &u).unwrap()).unwrap(), u);
            }
        }
        let c2 = cyclic(2);
        let x = ZeroCell::pt(&c2);
        let b = BurnsideBasis::of(&x).unwrap();
        let big = big_object(&x, &trivial(), 0, &[0]);
        assert_eq!(map_p(&b, &big).unwrap(), qv(&[1, 0]));
    }

    #[test]
    fn induction_restriction_deflation() {
        let s3 = symmetric(3);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let c2 = generated(&s3, &[t]);
        let (_, incl) = subgroup_group(&s3, &c2);
        let iota = OneCell::from_hom(&incl);
        let push = omega_push(&iota).unwrap();
        // [C2/C2] ↦ [S3/C2]
        assert_eq!(push.column(1), qv(&[0, 1, 0, 0]));
        let pull = omega_pull(&iota).unwrap();
        // [S3/C3] ↦ [C2/e]
        assert_eq!(pull.column(2), qv(&[1, 0]));
        let c4 = cyclic(4);
        let c2b = cyclic(2);
        let qh = GroupHom::new(&c4, &c2b, vec![0, 1, 0, 1]).unwrap();
        let qc = OneCell::from_hom(&qh);
        assert!(omega_push(&qc).unwrap().mul(&omega_pull(&qc).unwrap()).is_identity());
    }
}
