//! The tensor coend over a finite window of ℂ/X, and the representable internal hom.

use num_traits::Zero;

use super::{evaluate_span, value_layout, value_rank, MackeyFunctor};
use crate::burnside::BurnsideBasis;
use crate::cell::ZeroCell;
use crate::error::{Error, Result};
use crate::group::{homomorphisms, small_groups_up_to_12, subgroup_group, Group, GroupHom};
use crate::linalg::{rank_of_rows, smith_invariants, Matrix, RowSpace, Q};
use crate::span::{point_spans_isomorphic, PointSpan, SpanLinComb};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationWindow {
    pub max_group_order: usize,
    pub max_set_size: usize,
    pub max_depth: usize,
}

impl TruncationWindow {
    pub fn new(max_group_order: usize, max_set_size: usize, max_depth: usize) -> Result<Self> {
        if max_group_order == 0 || max_set_size == 0 || max_depth == 0 {
            return Err(Error::WindowExceeded("window bounds must be positive".into()));
        }
        if max_group_order > 12 || max_set_size > 6 || max_depth > 2 {
            return Err(Error::WindowExceeded(format!(
                "supported: group order ≤ 12, set size ≤ 6, depth ≤ 2; got {max_group_order}/{max_set_size}/{max_depth}"
            )));
        }
        Ok(TruncationWindow { max_group_order, max_set_size, max_depth })
    }
}

/// (pt/K, θ) over X: θ is a homomorphism K → G landing in the stabilizer of the orbit representative `point`.
#[derive(Clone, Debug)]
pub struct TransitiveObject {
    pub group: Group,
    pub point: usize,
    pub orbit: usize,
    pub hom: Vec<usize>,
}

/// A morphism between window objects with its four value matrices.
#[derive(Clone, Debug)]
pub struct WindowMorphism {
    pub src: usize,
    pub dst: usize,
    pub kind: String,
    pub m_push: Matrix,
    pub m_pull: Matrix,
    pub n_push: Matrix,
    pub n_pull: Matrix,
}

/// ⊕ M(A)⊗N(A) over the window objects modulo the two relation families.
#[derive(Clone, Debug)]
pub struct TensorTruncation {
    pub base: ZeroCell,
    pub window: TruncationWindow,
    pub transitive: Vec<TransitiveObject>,
    /// Each object is a coproduct of one or two transitive objects.
    pub objects: Vec<Vec<usize>>,
    pub m_dims: Vec<usize>,
    pub n_dims: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total_dim: usize,
    pub morphisms: Vec<WindowMorphism>,
    /// Sparse relation vectors in the total space.
    pub relations: Vec<Vec<(usize, Q)>>,
}

impl TensorTruncation {
    pub fn dense_relations(&self) -> Vec<Vec<Q>> {
        self.relations
            .iter()
            .map(|r| {
                let mut v = vec![Q::zero(); self.total_dim];
                for &(i, c) in r {
                    v[i] += c;
                }
                v
            })
            .collect()
    }

    pub fn relation_rank(&self) -> usize {
        rank_of_rows(&self.dense_relations(), self.total_dim)
    }

    /// Rank of the quotient module.
    pub fn quotient_rank(&self) -> usize {
        self.total_dim - self.relation_rank()
    }

    /// Invariant factors of the relation matrix when it is integral.
    pub fn smith_invariants(&self) -> Option<Vec<num_bigint::BigInt>> {
        let rows = self.dense_relations();
        if rows.is_empty() {
            return Some(Vec::new());
        }
        smith_invariants(&Matrix::from_rows(&rows))
    }

    /// Dimension of the image of summand `obj` in the quotient.
    pub fn summand_image_rank(&self, obj: usize) -> usize {
        let mut space = RowSpace::new(self.total_dim);
        for r in self.dense_relations() {
            space.insert(&r);
        }
        let before = space.dim();
        let dim = self.m_dims[obj] * self.n_dims[obj];
        for i in 0..dim {
            let mut v = vec![Q::zero(); self.total_dim];
            v[self.offsets[obj] + i] = Q::from(1);
            space.insert(&v);
        }
        space.dim() - before
    }

    /// Index of the transitive object (pt/G_x, inclusion) for orbit i of the base, if in the window.
    pub fn base_orbit_object(&self, i: usize) -> Option<usize> {
        let (s, incl) = self.base.stabilizer_group(i);
        let target = self.point_span(&TransitiveObject { group: s.clone(), point: self.base.orbits()[i].rep, orbit: i, hom: incl.map.clone() });
        self.objects.iter().position(|o| {
            o.len() == 1 && {
                let t = &self.transitive[o[0]];
                t.orbit == i && point_spans_isomorphic(&self.point_span(t), &target, &pt_e(), &self.base).is_some()
            }
        })
    }

    fn point_span(&self, t: &TransitiveObject) -> PointSpan {
        PointSpan::new(&t.group, &pt_e(), 0, &vec![0; t.group.order()], &self.base, t.point, &t.hom)
    }
}

fn pt_e() -> ZeroCell {
    crate::burnside::pt_e()
}

fn tensor_index(m_dim: usize, n_dim: usize, p: usize, q: usize) -> usize {
    debug_assert!(p < m_dim && q < n_dim);
    p * n_dim + q
}

/// Window objects, morphisms and relation generators for (M⊗N)(X).
pub fn tensor_truncated(
    m: &dyn MackeyFunctor,
    n: &dyn MackeyFunctor,
    x: &ZeroCell,
    window: TruncationWindow,
) -> Result<TensorTruncation> {
    let g = x.group();
    let e = pt_e();
    let groups: Vec<Group> = small_groups_up_to_12().into_iter().filter(|k| k.order() <= window.max_group_order).collect();
    let mut transitive: Vec<TransitiveObject> = Vec::new();
    let mut spans: Vec<PointSpan> = Vec::new();
    for k in &groups {
        for (i, o) in x.orbits().iter().enumerate() {
            let (s, incl) = x.stabilizer_group(i);
            for f in homomorphisms(k, s) {
                let hom: Vec<usize> = f.map.iter().map(|&v| incl.map[v]).collect();
                let p = PointSpan::new(k, &e, 0, &vec![0; k.order()], x, o.rep, &hom);
                let dup = transitive
                    .iter()
                    .zip(&spans)
                    .any(|(t, q)| t.orbit == i && t.group.order() == k.order() && point_spans_isomorphic(&p, q, &e, x).is_some());
                if !dup {
                    transitive.push(TransitiveObject { group: k.clone(), point: o.rep, orbit: i, hom });
                    spans.push(p);
                }
            }
        }
    }
    let nt = transitive.len();
    let m_ranks = transitive.iter().map(|t| m.rank(&t.group)).collect::<Result<Vec<_>>>()?;
    let n_ranks = transitive.iter().map(|t| n.rank(&t.group)).collect::<Result<Vec<_>>>()?;
    let mut objects: Vec<Vec<usize>> = (0..nt).map(|i| vec![i]).collect();
    if window.max_set_size >= 2 {
        for i in 0..nt {
            for j in i..nt {
                objects.push(vec![i, j]);
            }
        }
    }
    let m_dims: Vec<usize> = objects.iter().map(|o| o.iter().map(|&i| m_ranks[i]).sum()).collect();
    let n_dims: Vec<usize> = objects.iter().map(|o| o.iter().map(|&i| n_ranks[i]).sum()).collect();
    let mut offsets = Vec::new();
    let mut total = 0;
    for (a, b) in m_dims.iter().zip(&n_dims) {
        offsets.push(total);
        total += a * b;
    }
    let mut morphisms: Vec<WindowMorphism> = Vec::new();
    // transitive homs f: K → K′ with θ′∘f conjugate to θ inside the stabilizer
    for (a, ta) in transitive.iter().enumerate() {
        for (b, tb) in transitive.iter().enumerate() {
            if ta.orbit != tb.orbit {
                continue;
            }
            let stab = &x.orbits()[ta.orbit].stabilizer;
            for f in homomorphisms(&ta.group, &tb.group) {
                if a == b && f.map.iter().enumerate().all(|(i, &v)| i == v) {
                    continue;
                }
                let over = stab.iter().any(|&eta| ta.group.elements().all(|k| g.conj(eta, tb.hom[f.map[k]]) == ta.hom[k]));
                if over {
                    morphisms.push(WindowMorphism {
                        src: a,
                        dst: b,
                        kind: format!("hom {:?}", f.map),
                        m_push: m.push(&f)?,
                        m_pull: m.pull(&f)?,
                        n_push: n.push(&f)?,
                        n_pull: n.pull(&f)?,
                    });
                }
            }
        }
    }
    if window.max_set_size >= 2 {
        for (o, pieces) in objects.iter().enumerate().skip(nt) {
            let (i, j) = (pieces[0], pieces[1]);
            let (mi, mj, ni, nj) = (m_ranks[i], m_ranks[j], n_ranks[i], n_ranks[j]);
            // inclusions of each summand
            for (slot, piece) in [(0usize, i), (1, j)] {
                let (mo, no) = if slot == 0 { (0, 0) } else { (mi, ni) };
                let inc = |rows: usize, r: usize, off: usize| {
                    let mut a = Matrix::zeros(rows, r);
                    a.place(off, 0, &Matrix::identity(r));
                    a
                };
                let (mp, np) = (m_ranks[piece], n_ranks[piece]);
                morphisms.push(WindowMorphism {
                    src: piece,
                    dst: o,
                    kind: format!("inclusion {slot}"),
                    m_push: inc(mi + mj, mp, mo),
                    m_pull: inc(mi + mj, mp, mo).transpose(),
                    n_push: inc(ni + nj, np, no),
                    n_pull: inc(ni + nj, np, no).transpose(),
                });
            }
            if i == j {
                let fold = |r: usize| {
                    let mut a = Matrix::zeros(r, 2 * r);
                    a.place(0, 0, &Matrix::identity(r));
                    a.place(0, r, &Matrix::identity(r));
                    a
                };
                morphisms.push(WindowMorphism {
                    src: o,
                    dst: i,
                    kind: "fold".into(),
                    m_push: fold(mi),
                    m_pull: fold(mi).transpose(),
                    n_push: fold(ni),
                    n_pull: fold(ni).transpose(),
                });
                let swap = |r: usize| {
                    let mut a = Matrix::zeros(2 * r, 2 * r);
                    a.place(0, r, &Matrix::identity(r));
                    a.place(r, 0, &Matrix::identity(r));
                    a
                };
                morphisms.push(WindowMorphism {
                    src: o,
                    dst: o,
                    kind: "swap".into(),
                    m_push: swap(mi),
                    m_pull: swap(mi),
                    n_push: swap(ni),
                    n_pull: swap(ni),
                });
            }
        }
    }
    if window.max_depth >= 2 {
        let base = morphisms.clone();
        for p in &base {
            for q in &base {
                if p.dst == q.src {
                    morphisms.push(WindowMorphism {
                        src: p.src,
                        dst: q.dst,
                        kind: format!("({})∘({})", q.kind, p.kind),
                        m_push: q.m_push.mul(&p.m_push),
                        m_pull: p.m_pull.mul(&q.m_pull),
                        n_push: q.n_push.mul(&p.n_push),
                        n_pull: p.n_pull.mul(&q.n_pull),
                    });
                }
            }
        }
    }
    let mut relations = Vec::new();
    for phi in &morphisms {
        let (a, b) = (phi.src, phi.dst);
        let (ma, na, mb, nb) = (m_dims[a], n_dims[a], m_dims[b], n_dims[b]);
        // M*(φ)m′ ⊗ n − m′ ⊗ N_!(φ)n
        for p in 0..mb {
            for q in 0..na {
                let mut r = Vec::new();
                for s in 0..ma {
                    let c = phi.m_pull.get(s, p);
                    if !c.is_zero() {
                        r.push((offsets[a] + tensor_index(ma, na, s, q), c));
                    }
                }
                for t in 0..nb {
                    let c = phi.n_push.get(t, q);
                    if !c.is_zero() {
                        r.push((offsets[b] + tensor_index(mb, nb, p, t), -c));
                    }
                }
                relations.push(r);
            }
        }
        // M_!(φ)m ⊗ n′ − m ⊗ N*(φ)n′
        for p in 0..ma {
            for q in 0..nb {
                let mut r = Vec::new();
                for s in 0..mb {
                    let c = phi.m_push.get(s, p);
                    if !c.is_zero() {
                        r.push((offsets[b] + tensor_index(mb, nb, s, q), c));
                    }
                }
                for t in 0..na {
                    let c = phi.n_pull.get(t, q);
                    if !c.is_zero() {
                        r.push((offsets[a] + tensor_index(ma, na, p, t), -c));
                    }
                }
                relations.push(r);
            }
        }
    }
    Ok(TensorTruncation {
        base: x.clone(),
        window,
        transitive,
        objects,
        m_dims,
        n_dims,
        offsets,
        total_dim: total,
        morphisms,
        relations,
    })
}

/// ℓ′ for Ω⊗N: ω⊗n at (A, a) ↦ N_!(a)(ω·n), the Ω-action being [K/L] ↦ ind∘res.
/// Requires the first factor of `t` to be Ω.
pub fn multiplication_functional(t: &TensorTruncation, n: &dyn MackeyFunctor) -> Result<Matrix> {
    let x = &t.base;
    let lay = value_layout(n, x)?;
    let mut out = Matrix::zeros(lay.total(), t.total_dim);
    for (o, pieces) in t.objects.iter().enumerate() {
        let (md, nd) = (t.m_dims[o], t.n_dims[o]);
        let (mut moff, mut noff) = (0, 0);
        for &pi in pieces {
            let tr = &t.transitive[pi];
            let k = &tr.group;
            let basis = BurnsideBasis::of(&ZeroCell::pt(k))?;
            let nk = n.rank(k)?;
            let (s, incl) = x.stabilizer_group(tr.orbit);
            let theta = GroupHom::new_unchecked(k, s, tr.hom.iter().map(|v| incl.map.binary_search(v).expect("in stabilizer")).collect());
            let push = n.push(&theta)?;
            for p in 0..basis.rank() {
                let (_, li) = subgroup_group(k, basis.subgroup(p));
                let act = n.push(&li)?.mul(&n.pull(&li)?);
                let img = push.mul(&act);
                for q in 0..nk {
                    let col = t.offsets[o] + tensor_index(md, nd, moff + p, noff + q);
                    for r in 0..img.rows() {
                        let v = img.get(r, q);
                        if !v.is_zero() {
                            out.add_at(lay.offsets[tr.orbit] + r, col, v);
                        }
                    }
                }
            }
            moff += basis.rank();
            noff += nk;
        }
    }
    Ok(out)
}

/// Rank of ℋ(M_W, N)(X) ≅ N(X × W) for M represented at W.
pub fn internal_hom_representable(w: &ZeroCell, n: &dyn MackeyFunctor, x: &ZeroCell) -> Result<usize> {
    value_rank(n, &x.product(w))
}

/// The span action N_(s × id_W): N(X × W) → N(Y × W).
pub fn internal_hom_act(w: &ZeroCell, n: &dyn MackeyFunctor, s: &SpanLinComb) -> Result<Matrix> {
    evaluate_span(n, &s.product(&SpanLinComb::identity(w)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::mackey::Burnside;

    #[test]
    fn single_object_window_has_no_relations() {
        let x = pt_e();
        let t = tensor_truncated(&Burnside, &Burnside, &x, TruncationWindow::new(1, 1, 1).unwrap()).unwrap();
        assert_eq!(t.objects.len(), 1);
        assert!(t.relations.is_empty());
        assert_eq!(t.quotient_rank(), 1);
    }

    #[test]
    fn fold_relations_collapse_to_rank_one() {
        let x = pt_e();
        let t = tensor_truncated(&Burnside, &Burnside, &x, TruncationWindow::new(1, 2, 1).unwrap()).unwrap();
        assert_eq!(t.total_dim, 5);
        assert_eq!(t.quotient_rank(), 1);
        let t2 = tensor_truncated(&Burnside, &Burnside, &x, TruncationWindow::new(1, 2, 2).unwrap()).unwrap();
        assert_eq!(t2.relation_rank(), t.relation_rank());
    }

    #[test]
    fn multiplication_kills_relations_over_c2() {
        let x = ZeroCell::pt(&cyclic(2));
        let t = tensor_truncated(&Burnside, &Burnside, &x, TruncationWindow::new(4, 2, 1).unwrap()).unwrap();
        let l = multiplication_functional(&t, &Burnside).unwrap();
        for r in &t.relations {
            let mut v = vec![Q::zero(); l.rows()];
            for &(i, c) in r {
                for (k, vk) in v.iter_mut().enumerate() {
                    *vk += l.get(k, i) * c;
                }
            }
            assert!(v.iter().all(|c| c.is_zero()));
        }
        let b = t.base_orbit_object(0).unwrap();
        assert!(t.summand_image_rank(b) <= 2);
    }

    #[test]
    fn internal_hom_values() {
        let c2 = cyclic(2);
        assert_eq!(internal_hom_representable(&ZeroCell::pt(&c2), &Burnside, &pt_e()).unwrap(), 2);
        let x = ZeroCell::pt(&symmetric(3));
        assert_eq!(internal_hom_representable(&pt_e(), &Burnside, &x).unwrap(), 4);
        let a = internal_hom_act(&ZeroCell::pt(&c2), &Burnside, &SpanLinComb::identity(&x)).unwrap();
        assert!(a.is_identity());
    }
}
