//! Green structures on point values and Ω-module actions, with their validators.

use num_traits::Zero;

use super::{unit_vector, Burnside, MackeyFunctor};
use crate::burnside::{big_object, map_p, BurnsideBasis};
use crate::cell::ZeroCell;
use crate::error::Result;
use crate::group::{homomorphisms, same_group, subgroup_group, Group, GroupHom};
use crate::linalg::{Matrix, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default)]
pub struct GreenReport {
    pub checks: Vec<Check>,
}

impl GreenReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    fn record(&mut self, name: &str, passed: bool, detail: String) {
        if let Some(c) = self.checks.iter_mut().find(|c| c.name == name) {
            if c.passed && !passed {
                c.passed = false;
                c.detail = detail;
            }
        } else {
            self.checks.push(Check { name: name.into(), passed, detail: if passed { String::new() } else { detail } });
        }
    }
}

/// Levelwise multiplication and unit on M(pt/H).
pub trait GreenStructure {
    fn functor(&self) -> &dyn MackeyFunctor;
    fn mul(&self, h: &Group, a: &[Q], b: &[Q]) -> Result<Vec<Q>>;
    fn unit(&self, h: &Group) -> Result<Vec<Q>>;
    /// An independently computed unit, when one exists.
    fn unit_reference(&self, _h: &Group) -> Result<Option<Vec<Q>>> {
        Ok(None)
    }
}

/// Ω with the fibered-product multiplication; the variants exist to exercise the validator.
#[derive(Clone, Debug)]
pub struct BurnsideGreen {
    unit_scale: Q,
    twist: bool,
}

impl BurnsideGreen {
    pub fn standard() -> Self {
        BurnsideGreen { unit_scale: Q::from(1), twist: false }
    }

    pub fn doubled_unit() -> Self {
        BurnsideGreen { unit_scale: Q::from(2), twist: false }
    }

    /// At groups of order 2 the product gains −2·a₀b₀·[H/e], so [H/e]² = 0.
    pub fn twisted() -> Self {
        BurnsideGreen { unit_scale: Q::from(1), twist: true }
    }
}

impl GreenStructure for BurnsideGreen {
    fn functor(&self) -> &dyn MackeyFunctor {
        &Burnside
    }

    fn mul(&self, h: &Group, a: &[Q], b: &[Q]) -> Result<Vec<Q>> {
        let basis = BurnsideBasis::of(&ZeroCell::pt(h))?;
        let mut v = basis.mul(a, b)?;
        if self.twist && h.order() == 2 {
            v[0] -= Q::from(2) * a[0] * b[0];
        }
        Ok(v)
    }

    fn unit(&self, h: &Group) -> Result<Vec<Q>> {
        let basis = BurnsideBasis::of(&ZeroCell::pt(h))?;
        Ok(basis.unit().into_iter().map(|x| x * self.unit_scale).collect())
    }

    /// p applied to the big unit [pt/H = pt/H].
    fn unit_reference(&self, h: &Group) -> Result<Option<Vec<Q>>> {
        let x = ZeroCell::pt(h);
        let basis = BurnsideBasis::of(&x)?;
        let big = big_object(&x, h, 0, &h.elements().collect::<Vec<_>>());
        Ok(Some(map_p(&basis, &big)?))
    }
}

fn sample_homs(groups: &[Group]) -> Vec<GroupHom> {
    let mut out = Vec::new();
    for l in groups {
        for h in groups {
            out.extend(homomorphisms(l, h));
        }
    }
    out
}

/// Levelwise ring axioms, M*(f) a unital ring map and the Frobenius identity
/// M_!(f)(a·M*(f)b) = M_!(f)(a)·b for every hom between the given groups.
pub fn validate_green(g: &dyn GreenStructure, groups: &[Group]) -> Result<GreenReport> {
    let m = g.functor();
    let mut rep = GreenReport::default();
    for h in groups {
        let n = m.rank(h)?;
        let e: Vec<Vec<Q>> = (0..n).map(|i| unit_vector(n, i)).collect();
        let one = g.unit(h)?;
        let lab = h.label();
        for i in 0..n {
            let ok = g.mul(h, &one, &e[i])? == e[i] && g.mul(h, &e[i], &one)? == e[i];
            rep.record("unit", ok, format!("at {lab}"));
            for j in 0..n {
                let ij = g.mul(h, &e[i], &e[j])?;
                rep.record("commutativity", ij == g.mul(h, &e[j], &e[i])?, format!("at {lab}"));
                for k in 0..n {
                    let l = g.mul(h, &ij, &e[k])?;
                    let r = g.mul(h, &e[i], &g.mul(h, &e[j], &e[k])?)?;
                    rep.record("associativity", l == r, format!("at {lab}"));
                }
            }
        }
        if let Some(r) = g.unit_reference(h)? {
            rep.record("unit is p of the big unit", r == one, format!("at {lab}"));
        }
    }
    for f in sample_homs(groups) {
        let (l, h) = (&f.src, &f.dst);
        let (pull, push) = (m.pull(&f)?, m.push(&f)?);
        let (nl, nh) = (m.rank(l)?, m.rank(h)?);
        let desc = format!("{} -> {} {:?}", l.label(), h.label(), f.map);
        rep.record("restriction preserves unit", pull.apply(&g.unit(h)?) == g.unit(l)?, desc.clone());
        for i in 0..nh {
            for j in 0..nh {
                let (a, b) = (unit_vector(nh, i), unit_vector(nh, j));
                let lhs = pull.apply(&g.mul(h, &a, &b)?);
                let rhs = g.mul(l, &pull.apply(&a), &pull.apply(&b))?;
                rep.record("restriction is multiplicative", lhs == rhs, desc.clone());
            }
        }
        for i in 0..nl {
            for j in 0..nh {
                let (a, b) = (unit_vector(nl, i), unit_vector(nh, j));
                let lhs = push.apply(&g.mul(l, &a, &pull.apply(&b))?);
                let rhs = g.mul(h, &push.apply(&a), &b)?;
                rep.record("Frobenius", lhs == rhs, desc.clone());
            }
        }
    }
    Ok(rep)
}

/// act[g][i]: the endomorphism of M(pt/H_g) by which the basis element i of Ω(pt/H_g) acts.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub groups: Vec<Group>,
    pub act: Vec<Vec<Matrix>>,
}

impl PartialEq for ActionTable {
    fn eq(&self, o: &Self) -> bool {
        self.act == o.act && self.groups.len() == o.groups.len() && self.groups.iter().zip(&o.groups).all(|(a, b)| same_group(a, b))
    }
}

impl ActionTable {
    fn index(&self, h: &Group) -> Option<usize> {
        self.groups.iter().position(|g| same_group(g, h))
    }

    fn act_vec(&self, gi: usize, w: &[Q], n: usize) -> Matrix {
        let mut out = Matrix::zeros(n, n);
        for (k, c) in w.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            out = out.add(&self.act[gi][k].scale(*c));
        }
        out
    }
}

/// [H/K] acts by M_!(ι_K)∘M*(ι_K).
pub fn unique_action(m: &dyn MackeyFunctor, groups: &[Group]) -> Result<ActionTable> {
    let mut act = Vec::new();
    for h in groups {
        let basis = BurnsideBasis::of(&ZeroCell::pt(h))?;
        let mut row = Vec::new();
        for i in 0..basis.rank() {
            let (_, incl) = subgroup_group(h, basis.subgroup(i));
            row.push(m.push(&incl)?.mul(&m.pull(&incl)?));
        }
        act.push(row);
    }
    Ok(ActionTable { groups: groups.to_vec(), act })
}

#[derive(Clone, Debug, Default)]
pub struct ModuleReport {
    /// Named diagrams that failed, with the place of failure.
    pub failures: Vec<String>,
    pub matches_unique: bool,
}

impl ModuleReport {
    pub fn accepted(&self) -> bool {
        self.failures.is_empty() && self.matches_unique
    }
}

/// Module axioms for an Ω-action on M, compatibility with M* and M_! along every hom
/// between the table's groups, and agreement with `unique_action`.
pub fn validate_module_action(m: &dyn MackeyFunctor, cand: &ActionTable) -> Result<ModuleReport> {
    let mut fails: Vec<String> = Vec::new();
    fn note(fails: &mut Vec<String>, name: &str, at: String) {
        let s = format!("{name} at {at}");
        if !fails.contains(&s) {
            fails.push(s);
        }
    }
    for (gi, h) in cand.groups.iter().enumerate() {
        let basis = BurnsideBasis::of(&ZeroCell::pt(h))?;
        let n = m.rank(h)?;
        let acts = &cand.act[gi];
        if acts.len() != basis.rank() || acts.iter().any(|a| (a.rows(), a.cols()) != (n, n)) {
            note(&mut fails, "shape", h.label());
            continue;
        }
        if !cand.act_vec(gi, &basis.unit(), n).is_identity() {
            note(&mut fails, "unit", h.label());
        }
        for i in 0..basis.rank() {
            for j in 0..basis.rank() {
                if acts[i].mul(&acts[j]) != cand.act_vec(gi, basis.mul_basis(i, j), n) {
                    note(&mut fails, "associativity", h.label());
                }
            }
        }
    }
    if fails.iter().any(|f| f.starts_with("shape")) {
        return Ok(ModuleReport { failures: fails, matches_unique: false });
    }
    for f in sample_homs(&cand.groups) {
        let (Some(li), Some(hi)) = (cand.index(&f.src), cand.index(&f.dst)) else { continue };
        let (pull, push) = (m.pull(&f)?, m.push(&f)?);
        let (om_pull, om_push) = (Burnside.pull(&f)?, Burnside.push(&f)?);
        let (nl, nh) = (m.rank(&f.src)?, m.rank(&f.dst)?);
        let at = format!("{} -> {} {:?}", f.src.label(), f.dst.label(), f.map);
        for i in 0..cand.act[hi].len() {
            let w = om_pull.column(i);
            let act_l = cand.act_vec(li, &w, nl);
            if pull.mul(&cand.act[hi][i]) != act_l.mul(&pull) {
                note(&mut fails, "restriction square", at.clone());
            }
            if push.mul(&act_l) != cand.act[hi][i].mul(&push) {
                note(&mut fails, "induction square", at.clone());
            }
        }
        for j in 0..cand.act[li].len() {
            let w = om_push.column(j);
            if push.mul(&cand.act[li][j]).mul(&pull) != cand.act_vec(hi, &w, nh) {
                note(&mut fails, "Frobenius square", at.clone());
            }
        }
    }
    let matches_unique = unique_action(m, &cand.groups)? == *cand;
    Ok(ModuleReport { failures: fails, matches_unique })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::*;
    use crate::linalg::q;

    fn groups() -> Vec<Group> {
        vec![trivial(), cyclic(2), cyclic(3), symmetric(3)]
    }

    #[test]
    fn burnside_green_passes_and_variants_fail() {
        assert!(validate_green(&BurnsideGreen::standard(), &groups()).unwrap().passed());
        let d = validate_green(&BurnsideGreen::doubled_unit(), &groups()).unwrap();
        assert!(d.failures().contains(&"unit"));
        let t = validate_green(&BurnsideGreen::twisted(), &[trivial(), cyclic(2)]).unwrap();
        assert!(t.failures().contains(&"Frobenius"));
        assert!(!t.failures().contains(&"associativity"));
    }

    #[test]
    fn burnside_acts_on_itself_by_multiplication() {
        let gs = groups();
        let act = unique_action(&Burnside, &gs).unwrap();
        for (gi, h) in gs.iter().enumerate() {
            let basis = BurnsideBasis::of(&ZeroCell::pt(h)).unwrap();
            for i in 0..basis.rank() {
                for j in 0..basis.rank() {
                    assert_eq!(act.act[gi][i].column(j), basis.mul_basis(i, j));
                }
            }
        }
        // [C2/e] on Ω(pt/C2): [C2/C2] ↦ [C2/e], [C2/e] ↦ 2[C2/e]
        assert_eq!(act.act[1][0], Matrix::from_int_rows(&[vec![2, 1], vec![0, 0]]));
        assert!(validate_module_action(&Burnside, &act).unwrap().accepted());
    }

    #[test]
    fn perturbed_action_rejected() {
        let gs = vec![trivial(), cyclic(2)];
        let mut act = unique_action(&Burnside, &gs).unwrap();
        let mut off = Matrix::zeros(2, 2);
        off.set(0, 1, q(1));
        act.act[1][0] = act.act[1][0].add(&off);
        let r = validate_module_action(&Burnside, &act).unwrap();
        assert!(!r.accepted());
        assert!(!r.failures.is_empty());
    }
}
