//! Mackey functors given on point objects pt/H by M_!(f) and M*(f) along homomorphisms,
//! extended additively over orbits and evaluated on span combinations.

mod green;
mod presentation;
mod tensor;

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::burnside::{omega_pull, omega_push, BurnsideBasis};
use crate::cell::{OneCell, ZeroCell};
use crate::error::{Error, Result};
use crate::group::{Group, GroupHom};
use crate::linalg::{Matrix, Q};
use crate::span::{lift_r, lift_t, Span, SpanLinComb};

pub use green::{
    unique_action, validate_green, validate_module_action, ActionTable, BurnsideGreen, Check, GreenReport, GreenStructure,
    ModuleReport,
};
pub use presentation::{
    factor_through_reflection, is_presentation_morphism, reflect_deflative, GroupUniverse, MackeyPresentation, QuotEntry,
    Reflection, SubEntry,
};
pub use tensor::{
    internal_hom_act, internal_hom_representable, multiplication_functional, tensor_truncated, TensorTruncation,
    TransitiveObject, TruncationWindow, WindowMorphism,
};

pub trait MackeyFunctor: Send + Sync {
    fn rank(&self, h: &Group) -> Result<usize>;
    /// M*(f): M(pt/H) → M(pt/L) for f: L → H.
    fn pull(&self, f: &GroupHom) -> Result<Matrix>;
    /// M_!(f): M(pt/L) → M(pt/H) for f: L → H.
    fn push(&self, f: &GroupHom) -> Result<Matrix>;
    fn label(&self) -> String;
}

/// M(X) = ⊕ over orbits of M(pt/G_x), x the orbit representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueLayout {
    pub offsets: Vec<usize>,
    pub ranks: Vec<usize>,
}

impl ValueLayout {
    pub fn total(&self) -> usize {
        self.ranks.iter().sum()
    }
}

pub fn value_layout(m: &dyn MackeyFunctor, x: &ZeroCell) -> Result<ValueLayout> {
    let mut offsets = Vec::new();
    let mut ranks = Vec::new();
    let mut at = 0;
    for i in 0..x.orbits().len() {
        let r = m.rank(&x.stabilizer_group(i).0)?;
        offsets.push(at);
        ranks.push(r);
        at += r;
    }
    Ok(ValueLayout { offsets, ranks })
}

pub fn value_rank(m: &dyn MackeyFunctor, x: &ZeroCell) -> Result<usize> {
    Ok(value_layout(m, x)?.total())
}

/// A point leg K → G at `point`, rewritten as a homomorphism into the stabilizer of its orbit representative.
fn stabilizer_hom(x: &ZeroCell, k: &Group, point: usize, hom: &[usize]) -> (usize, GroupHom) {
    let g = x.group();
    let i = x.orbit_index(point);
    let c = x.transporter(point);
    let ci = g.inv(c);
    let (s, incl) = x.stabilizer_group(i);
    let map = hom
        .iter()
        .map(|&v| incl.map.binary_search(&g.mul(g.mul(ci, v), c)).expect("leg lands in the stabilizer"))
        .collect();
    (i, GroupHom::new_unchecked(k, s, map))
}

/// Matrix of M(s): M(X) → M(Y); each transitive term contributes M_!(b)∘M*(a).
pub fn evaluate_span(m: &dyn MackeyFunctor, s: &SpanLinComb) -> Result<Matrix> {
    let dl = value_layout(m, &s.dom)?;
    let cl = value_layout(m, &s.cod)?;
    let mut out = Matrix::zeros(cl.total(), dl.total());
    for (c, p) in &s.terms {
        let (i, a) = stabilizer_hom(&s.dom, &p.group, p.right_point, &p.right);
        let (j, b) = stabilizer_hom(&s.cod, &p.group, p.left_point, &p.left);
        let block = m.push(&b)?.mul(&m.pull(&a)?);
        for r in 0..block.rows() {
            for col in 0..block.cols() {
                let v = block.get(r, col);
                if !v.is_zero() {
                    out.add_at(cl.offsets[j] + r, dl.offsets[i] + col, c * v);
                }
            }
        }
    }
    Ok(out)
}

/// M_!(α) for a 1-cell α.
pub fn push_cell(m: &dyn MackeyFunctor, a: &OneCell) -> Result<Matrix> {
    evaluate_span(m, &lift_t(a))
}

/// M*(α) for a 1-cell α.
pub fn pull_cell(m: &dyn MackeyFunctor, a: &OneCell) -> Result<Matrix> {
    evaluate_span(m, &lift_r(a))
}

type HomKey = (bool, usize, u64, usize, u64, Vec<usize>);

fn hom_key(push: bool, f: &GroupHom) -> HomKey {
    (push, f.src.order(), f.src.fingerprint(), f.dst.order(), f.dst.fingerprint(), f.map.clone())
}

/// The Burnside functor Ω in the subgroup-class bases.
#[derive(Clone, Copy, Debug, Default)]
pub struct Burnside;

impl MackeyFunctor for Burnside {
    fn rank(&self, h: &Group) -> Result<usize> {
        Ok(BurnsideBasis::of(&ZeroCell::pt(h))?.rank())
    }

    fn pull(&self, f: &GroupHom) -> Result<Matrix> {
        omega_pull(&OneCell::from_hom(f))
    }

    fn push(&self, f: &GroupHom) -> Result<Matrix> {
        omega_push(&OneCell::from_hom(f))
    }

    fn label(&self) -> String {
        "Omega".into()
    }
}

/// Rank one at every group, M* = 1 and M_!(f: L → H) = |H|/|L|. Not deflative.
#[derive(Clone, Copy, Debug, Default)]
pub struct Cardinality;

impl MackeyFunctor for Cardinality {
    fn rank(&self, _h: &Group) -> Result<usize> {
        Ok(1)
    }

    fn pull(&self, _f: &GroupHom) -> Result<Matrix> {
        Ok(Matrix::identity(1))
    }

    fn push(&self, f: &GroupHom) -> Result<Matrix> {
        Ok(Matrix::identity(1).scale(Q::new(f.dst.order() as i128, f.src.order() as i128)))
    }

    fn label(&self) -> String {
        "Card".into()
    }
}

pub struct DirectSum(pub Vec<Arc<dyn MackeyFunctor>>);

impl MackeyFunctor for DirectSum {
    fn rank(&self, h: &Group) -> Result<usize> {
        self.0.iter().map(|m| m.rank(h)).sum()
    }

    fn pull(&self, f: &GroupHom) -> Result<Matrix> {
        Ok(Matrix::direct_sum(&self.0.iter().map(|m| m.pull(f)).collect::<Result<Vec<_>>>()?))
    }

    fn push(&self, f: &GroupHom) -> Result<Matrix> {
        Ok(Matrix::direct_sum(&self.0.iter().map(|m| m.push(f)).collect::<Result<Vec<_>>>()?))
    }

    fn label(&self) -> String {
        self.0.iter().map(|m| m.label()).collect::<Vec<_>>().join("+")
    }
}

/// Dress construction M_W: pt/H ↦ M(pt/H × W), maps through f × id_W.
pub struct Dressed {
    inner: Arc<dyn MackeyFunctor>,
    w: ZeroCell,
    memo: Mutex<HashMap<HomKey, Matrix>>,
}

impl Dressed {
    pub fn new(inner: Arc<dyn MackeyFunctor>, w: &ZeroCell) -> Self {
        Dressed { inner, w: w.clone(), memo: Mutex::new(HashMap::new()) }
    }

    pub fn dressing_object(&self) -> &ZeroCell {
        &self.w
    }

    fn along(&self, f: &GroupHom, push: bool) -> Result<Matrix> {
        let key = hom_key(push, f);
        if let Some(m) = self.memo.lock().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let a = OneCell::from_hom(f);
        let base = if push { lift_t(&a) } else { lift_r(&a) };
        let m = evaluate_span(self.inner.as_ref(), &base.product(&SpanLinComb::identity(&self.w)))?;
        self.memo.lock().unwrap().insert(key, m.clone());
        Ok(m)
    }
}

impl MackeyFunctor for Dressed {
    fn rank(&self, h: &Group) -> Result<usize> {
        value_rank(self.inner.as_ref(), &ZeroCell::pt(h).product(&self.w))
    }

    fn pull(&self, f: &GroupHom) -> Result<Matrix> {
        self.along(f, false)
    }

    fn push(&self, f: &GroupHom) -> Result<Matrix> {
        self.along(f, true)
    }

    fn label(&self) -> String {
        format!("{}_{{{}/{}}}", self.inner.label(), self.w.size(), self.w.group().label())
    }
}

pub fn dress(m: Arc<dyn MackeyFunctor>, w: &ZeroCell) -> Dressed {
    Dressed::new(m, w)
}

/// Failure of def∘inf = id at a quotient map π: R → Q.
#[derive(Clone, Debug)]
pub struct DeflativityWitness {
    pub group: String,
    pub kernel_order: usize,
    pub quotient: String,
    /// [pt/Q ←π pt/R →π pt/Q]
    pub span: Span,
    /// def(π)∘inf(π) − id
    pub defect: Matrix,
}

#[derive(Clone, Debug)]
pub struct DeflativityReport {
    pub deflative: bool,
    pub checked: usize,
    pub witness: Option<DeflativityWitness>,
}

/// Checks def(π)∘inf(π) = id for every quotient map in the universe catalog.
pub fn is_deflative(m: &dyn MackeyFunctor, u: &GroupUniverse) -> Result<DeflativityReport> {
    let mut checked = 0;
    for r in 0..u.reps().len() {
        for q in u.quotients(r) {
            if q.kernel.len() == 1 {
                continue;
            }
            checked += 1;
            let d = m.push(&q.pi)?.mul(&m.pull(&q.pi)?);
            if !d.is_identity() {
                let a = OneCell::from_hom(&q.pi);
                let span = Span::new(a.clone(), a)?;
                let n = d.rows();
                return Ok(DeflativityReport {
                    deflative: false,
                    checked,
                    witness: Some(DeflativityWitness {
                        group: u.reps()[r].label(),
                        kernel_order: q.kernel.len(),
                        quotient: u.reps()[q.rep].label(),
                        span,
                        defect: d.sub(&Matrix::identity(n)),
                    }),
                });
            }
        }
    }
    Ok(DeflativityReport { deflative: true, checked, witness: None })
}

/// pull(g)∘push(f) against the evaluation of the composite span R_g∘T_f (a bipullback).
pub fn mackey_formula_holds(m: &dyn MackeyFunctor, f: &GroupHom, g: &GroupHom) -> Result<bool> {
    if !crate::group::same_group(&f.dst, &g.dst) {
        return Err(Error::CodomainMismatch);
    }
    let (a, b) = (OneCell::from_hom(f), OneCell::from_hom(g));
    let lhs = m.pull(g)?.mul(&m.push(f)?);
    let comp = lift_r(&b).compose(&lift_t(&a).with_endpoints(&a.src, &b.dst)?)?;
    Ok(lhs == evaluate_span(m, &comp)?)
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::linalg::q;
    use crate::span::double_coset_oracle;

    #[test]
    fn identity_span_is_identity() {
        let s3 = symmetric(3);
        let x = ZeroCell::new(crate::gset::GSet::cosets(&s3, &[0, 1]).0);
        let id = SpanLinComb::identity(&x);
        let m = evaluate_span(&Burnside, &id).unwrap();
        assert!(m.is_identity());
        assert_eq!(m.rows(), value_rank(&Burnside, &x).unwrap());
    }

    #[test]
    fn restriction_of_induction_s3() {
        let s3 = symmetric(3);
        let t = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let (c2, incl) = subgroup_group(&s3, &[0, t]);
        let a = OneCell::from_hom(&incl);
        let direct = omega_pull(&a).unwrap().mul(&omega_push(&a).unwrap());
        let comp = lift_r(&a).compose(&lift_t(&a).with_endpoints(&a.src, &a.dst).unwrap()).unwrap();
        assert_eq!(evaluate_span(&Burnside, &comp).unwrap(), direct);
        let (oracle, reps) = double_coset_oracle(&s3, &[0, t]);
        assert_eq!(reps.len(), 2);
        assert_eq!(evaluate_span(&Burnside, &oracle).unwrap(), direct);
        // id + [C2/e]: on the basis [C2/e, C2/C2]
        assert_eq!(direct, Matrix::from_int_rows(&[vec![3, 1], vec![0, 1]]));
        assert_eq!(c2.order(), 2);
    }

    #[test]
    fn cardinality_is_mackey_but_not_deflative() {
        let s3 = symmetric(3);
        let u = GroupUniverse::generated_by(&[s3.clone()]).unwrap();
        let subs: Vec<GroupHom> = u.subgroups(u.identify(&s3).unwrap().0).iter().map(|s| s.sigma.clone()).collect();
        for f in &subs {
            for g in &subs {
                let g2 = GroupHom::new_unchecked(&g.src, &f.dst, g.map.clone());
                assert!(mackey_formula_holds(&Cardinality, f, &g2).unwrap());
            }
        }
        let rep = is_deflative(&Cardinality, &u).unwrap();
        assert!(!rep.deflative);
        let w = rep.witness.unwrap();
        assert!(!w.defect.is_zero());
        assert!(is_deflative(&Burnside, &u).unwrap().deflative);
    }

    #[test]
    fn dress_ranks() {
        let c2 = cyclic(2);
        let om: Arc<dyn MackeyFunctor> = Arc::new(Burnside);
        let d = dress(om.clone(), &ZeroCell::pt(&c2));
        assert_eq!(d.rank(&trivial()).unwrap(), 2);
        assert_eq!(d.rank(&c2).unwrap(), 5);
        let de = dress(om, &ZeroCell::pt(&trivial()));
        for g in [trivial(), c2.clone(), symmetric(3)] {
            assert_eq!(de.rank(&g).unwrap(), Burnside.rank(&g).unwrap());
        }
        let f = GroupHom::trivial(&trivial(), &c2);
        assert_eq!(de.push(&f).unwrap(), Burnside.push(&f).unwrap());
        let p = d.push(&f).unwrap().mul(&d.pull(&f).unwrap());
        assert_eq!(p.rows(), 5);
        assert_eq!(Cardinality.push(&f).unwrap().get(0, 0), q(2));
    }
}
