//! The acceptance suite as named checks, and a deterministic JSON/text report.

use std::sync::Arc;

use num_traits::Zero;
use rand::Rng;
use serde::Serialize;

use crate::biset::{biset_compose, deflative_reduce, double_burnside_table, dress_compare, span_endomorphism_table, span_of_biset};
use crate::burnside::{big_object, big_pull, big_push, map_i, map_p, omega_pull, omega_push, pt_e, BigBurnside, BurnsideBasis};
use crate::cell::{bipullback, OneCell, ZeroCell};
use crate::config::Config;
use crate::derivator::{base_change_check, compare_with_burnside, el_square, gset_to_diagram, semi_mackey_from_prederivator, Diagram};
use crate::error::{Error, Result};
use crate::factorization::verify_factorization_uniqueness;
use crate::group::{cyclic, direct_product, quotient_group, small_groups_up_to_12, subgroup_group, symmetric, trivial, GroupHom};
use crate::groupoid::{el, el1, el1_inverse, el2, el2_inverse};
use crate::gset::GSet;
use crate::linalg::{q, Matrix, Q};
use crate::mackey::{
    dress, evaluate_span, is_deflative, multiplication_functional, reflect_deflative, tensor_truncated, unique_action,
    validate_green, validate_module_action, ActionTable, Burnside, BurnsideGreen, Cardinality, DirectSum, GroupUniverse,
    MackeyFunctor, MackeyPresentation, TruncationWindow,
};
use crate::sample::{gsets_up_to_iso, Sampler};
use crate::span::{compose_spans, double_coset_oracle, lift_r, lift_t, spans_isomorphic, PointSpan, SpanLinComb};

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub passed: bool,
    pub instances: usize,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, anchor: &str, passed: bool, instances: usize, detail: String) -> Self {
        CheckResult { name: name.into(), anchor: anchor.into(), passed, instances, detail }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        let v = serde_json::json!({
            "seed": self.seed,
            "checks": self.checks,
            "summary": { "total": self.checks.len(), "passed": self.checks.len() - failed, "failed": failed },
        });
        serde_json::to_string_pretty(&v).expect("serializable") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("report (seed {})\n", self.seed);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out += &format!("{status}  {:<32} [{}] n={}  {}\n", c.name, c.anchor, c.instances, c.detail);
        }
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        out += &format!("{} checks, {} failed\n", self.checks.len(), failed);
        out
    }
}

fn nonzero_coeff(s: &mut Sampler) -> Q {
    let c: i64 = s.rng().gen_range(1..=3);
    if s.rng().gen_bool(0.5) {
        q(-c)
    } else {
        q(c)
    }
}

/// A finitely supported element of the big Burnside group over X, with arbitrary structure homs.
fn big_element(s: &mut Sampler, x: &ZeroCell) -> Result<BigBurnside> {
    let g = x.group();
    let mut e = SpanLinComb::zero(&pt_e(), x);
    let terms = s.rng().gen_range(1..=3);
    for _ in 0..terms {
        let k = s.group(6);
        let p = s.rng().gen_range(0..x.size());
        let (stab, incl) = subgroup_group(g, &x.stabilizer_of(p));
        let f = s.hom(&k, &stab);
        let hom: Vec<usize> = f.map.iter().map(|&v| incl.map[v]).collect();
        let c = nonzero_coeff(s);
        e = e.add(&big_object(x, &k, p, &hom).scale(c))?;
    }
    Ok(e)
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = q(1);
    v
}

/// p∘i = id on Ω_G(X) for every G-set with at most 6 points over every group of order at most 8.
pub fn criterion_1() -> Result<CheckResult> {
    let mut pairs = 0;
    let mut fails = Vec::new();
    for g in small_groups_up_to_12().into_iter().filter(|g| g.order() <= 8) {
        for set in gsets_up_to_iso(&g, 6) {
            let x = ZeroCell::new(set);
            let b = BurnsideBasis::of(&x)?;
            pairs += 1;
            for i in 0..b.rank() {
                if map_p(&b, &map_i(&b, &unit(b.rank(), i))?)? != unit(b.rank(), i) {
                    fails.push(format!("{} on {} points, basis {}", g.label(), x.size(), b.label(i)));
                }
            }
        }
    }
    let detail = if fails.is_empty() { format!("{pairs} (G, X) iso types") } else { fails.join("; ") };
    Ok(CheckResult::new("c01-splitting", anchor("c01-splitting"), fails.is_empty(), pairs, detail))
}

/// p commutes with push and pull for sampled 1-cells on sampled big elements.
pub fn criterion_2(seed: u64, count: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let mut fails = Vec::new();
    for k in 0..count {
        let a = s.any_onecell(6, 4);
        let (bx, by) = (BurnsideBasis::of(&a.src)?, BurnsideBasis::of(&a.dst)?);
        let e = big_element(&mut s, &a.src)?;
        if map_p(&by, &big_push(&a, &e)?)? != omega_push(&a)?.apply(&map_p(&bx, &e)?) {
            fails.push(format!("push square at sample {k}"));
        }
        let f = big_element(&mut s, &a.dst)?;
        if map_p(&bx, &big_pull(&a, &f)?)? != omega_pull(&a)?.apply(&map_p(&by, &f)?) {
            fails.push(format!("pull square at sample {k}"));
        }
    }
    let detail = if fails.is_empty() { format!("{count} 1-cells, push and pull squares") } else { fails.join("; ") };
    Ok(CheckResult::new("c02-p-natural", anchor("c02-p-natural"), fails.is_empty(), count, detail))
}

/// b*∘a_! = (pr_Y)_!∘(pr_X)* for Ω on sampled bipullbacks, and the named res∘ind instance.
pub fn criterion_3(seed: u64, count: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let mut fails = Vec::new();
    let mut done = 0;
    while done < count {
        // the apex group is G × H
        let z = s.zerocell(6, 3);
        let x = s.zerocell(6, 3);
        let y = s.zerocell(24 / x.group().order(), 3);
        let (Some(a), Some(b)) = (s.onecell(&x, &z), s.onecell(&y, &z)) else { continue };
        let bp = bipullback(&a, &b)?;
        let lhs = omega_pull(&b)?.mul(&omega_push(&a)?);
        let rhs = omega_push(&bp.proj_right)?.mul(&omega_pull(&bp.proj_left)?);
        if lhs != rhs {
            fails.push(format!("bipullback {done}"));
        }
        done += 1;
    }
    // res∘ind over (S3, C2)
    let s3 = symmetric(3);
    let t = s3.elements().find(|&g| s3.element_order(g) == 2).expect("S3 has involutions");
    let (c2, incl) = subgroup_group(&s3, &[0, t]);
    let iota = OneCell::from_hom(&incl);
    let comp = lift_r(&iota).compose(&lift_t(&iota))?;
    let pt = ZeroCell::pt(&c2);
    let e = trivial();
    let expected = SpanLinComb::identity(&pt).add(&SpanLinComb::single(&pt, &pt, PointSpan::new(&e, &pt, 0, &[0], &pt, 0, &[0])))?;
    let (oracle, reps) = double_coset_oracle(&s3, &[0, t]);
    if !comp.equals(&expected) || !comp.equals(&oracle) || reps.len() != 2 {
        fails.push("res∘ind over (S3, C2) differs from id + [pt/C2 ← pt/e → pt/C2]".into());
    }
    if omega_pull(&iota)?.mul(&omega_push(&iota)?) != evaluate_span(&Burnside, &oracle)? {
        fails.push("res∘ind matrix differs from the double coset oracle".into());
    }
    let detail = if fails.is_empty() { format!("{count} bipullbacks and the (S3, C2) instance") } else { fails.join("; ") };
    Ok(CheckResult::new("c03-mackey-omega", anchor("c03-mackey-omega"), fails.is_empty(), count + 1, detail))
}

/// def∘inf = id for Ω at every quotient map between groups of order at most 12.
pub fn criterion_4() -> Result<CheckResult> {
    let u = GroupUniverse::generated_by(&small_groups_up_to_12())?;
    let mut n = 0;
    let mut fails = Vec::new();
    for r in 0..u.reps().len() {
        for qe in u.quotients(r) {
            n += 1;
            let a = OneCell::from_hom(&qe.pi);
            if !omega_push(&a)?.mul(&omega_pull(&a)?).is_identity() {
                fails.push(format!("{} by a kernel of order {}", u.reps()[r].label(), qe.kernel.len()));
            }
        }
    }
    let detail = if fails.is_empty() { format!("{n} quotient maps") } else { fails.join("; ") };
    Ok(CheckResult::new("c04-deflative-omega", anchor("c04-deflative-omega"), fails.is_empty(), n, detail))
}

/// Outcome of the biset/span comparison, split into the literal and reduced forms.
#[derive(Clone, Debug)]
pub struct BisetSpanOutcome {
    pub pairs: usize,
    pub literal_failures: usize,
    pub reduced_failures: usize,
    pub table_failures: Vec<String>,
}

pub fn biset_span_outcome(seed: u64, count: usize) -> Result<BisetSpanOutcome> {
    let mut s = Sampler::new(seed);
    let (mut literal, mut reduced) = (0, 0);
    for _ in 0..count {
        let (g, h, k) = (s.group(6), s.group(6), s.group(6));
        let u = s.biset(&h, &g, 8);
        let v = s.biset(&k, &h, 8);
        let direct = span_of_biset(&biset_compose(&v, &u)?);
        let composite = compose_spans(&span_of_biset(&v), &span_of_biset(&u))?;
        if spans_isomorphic(&direct, &composite).is_none() {
            literal += 1;
        }
        if !deflative_reduce(&direct.decompose()).equals(&deflative_reduce(&composite.decompose())) {
            reduced += 1;
        }
    }
    let mut tables = Vec::new();
    for g in [cyclic(2), cyclic(3), direct_product(&cyclic(2), &cyclic(2))] {
        let (basis, direct) = double_burnside_table(&g)?;
        match span_endomorphism_table(&basis)? {
            Some(t) if t == direct => {}
            _ => tables.push(g.label()),
        }
    }
    Ok(BisetSpanOutcome { pairs: count, literal_failures: literal, reduced_failures: reduced, table_failures: tables })
}

/// spans_isomorphic(s_(V×_H U), s_V∘s_U) and B(G,G) tables against span endomorphism tables.
pub fn criterion_5(seed: u64, count: usize) -> Result<(CheckResult, CheckResult)> {
    let o = biset_span_outcome(seed, count)?;
    let literal_ok = o.literal_failures == 0 && o.table_failures.is_empty();
    let detail = format!(
        "{} of {} pairs have non-isomorphic apexes; B(G,G) tables {}",
        o.literal_failures,
        o.pairs,
        if o.table_failures.is_empty() { "match after reduction".to_string() } else { format!("differ for {}", o.table_failures.join(", ")) }
    );
    let literal = CheckResult::new("c05-biset-span", anchor("c05-biset-span"), literal_ok, o.pairs, detail);
    let reduced = CheckResult::new("c05-biset-span-reduced", anchor("c05-biset-span-reduced"),
        o.reduced_failures == 0 && o.table_failures.is_empty(),
        o.pairs,
        format!("{} of {} pairs differ after reduction", o.reduced_failures, o.pairs),
    );
    Ok((literal, reduced))
}

/// el on 1- and 2-cells round-trips; el of bipullbacks are comma squares with base change.
pub fn criterion_6(seed: u64, cells: usize, squares: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let mut fails = Vec::new();
    for k in 0..cells {
        let a = s.any_onecell(6, 4);
        let (elx, ely) = (Arc::new(el(&a.src)), Arc::new(el(&a.dst)));
        let fa = el1(&a, &elx, &ely);
        if fa.validate().is_err() || el1_inverse(&fa, &a.src, &a.dst)? != a {
            fails.push(format!("1-cell {k}"));
            continue;
        }
        let e = s.twocell(&a);
        let fb = el1(&e.dst, &elx, &ely);
        let t = el2(&e, &fa, &fb);
        if t.validate().is_err() || el2_inverse(&t, &e.src, &e.dst)?.eps != e.eps {
            fails.push(format!("2-cell {k}"));
        }
    }
    let mut done = 0;
    while done < squares {
        let z = s.zerocell(6, 3);
        let x = s.zerocell(4, 2);
        let y = s.zerocell(4, 2);
        let (Some(a), Some(b)) = (s.onecell(&x, &z), s.onecell(&y, &z)) else { continue };
        let es = el_square(&a, &b)?;
        let elx = es.square.left.src.clone();
        let g = x.group();
        // G × X over X by (h, p) ↦ hp
        let n = x.size();
        let reg = GSet::from_fn(g, g.order() * n, |t, i| g.mul(t, i / n) * n + i % n);
        let f: Vec<usize> = (0..reg.size()).map(|i| x.act(i / n, i % n)).collect();
        let tests = [Diagram::constant(&elx, 1), gset_to_diagram(&x, &elx, &reg, &f)];
        let mut ok = es.is_iso;
        for d in &tests {
            ok &= base_change_check(&es.square, d)?;
        }
        if !ok {
            fails.push(format!("bipullback {done}"));
        }
        done += 1;
    }
    let detail = if fails.is_empty() { format!("{cells} cells, {squares} bipullback squares") } else { fails.join("; ") };
    Ok(CheckResult::new("c06-el-equivalence", anchor("c06-el-equivalence"), fails.is_empty(), cells + squares, detail))
}

/// Semi-Mackey data of the represented prederivator against Ω under the fiber dictionary.
pub fn criterion_7(seed: u64, sampled: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let s3 = symmetric(3);
    let t = s3.elements().find(|&g| s3.element_order(g) == 2).expect("S3 has involutions");
    let (_, incl) = subgroup_group(&s3, &[0, t]);
    let c3 = crate::group::generated(&s3, &[s3.elements().find(|&g| s3.element_order(g) == 3).expect("order 3")]);
    let (_, pi) = quotient_group(&s3, &c3);
    let mut cells = vec![OneCell::from_hom(&incl), OneCell::from_hom(&pi)];
    for _ in 0..sampled {
        cells.push(s.any_onecell(6, 2));
    }
    let data = semi_mackey_from_prederivator(&cells, 3)?;
    let fails = compare_with_burnside(&data)?;
    let classes: usize = data.catalogs.iter().map(|c| c.classes.len()).sum();
    let detail = if fails.is_empty() {
        format!("{} 1-cells including an induction and a deflation, {classes} classes", cells.len())
    } else {
        fails.join("; ")
    };
    Ok(CheckResult::new("c07-derivator-oracle", anchor("c07-derivator-oracle"), fails.is_empty(), cells.len(), detail))
}

/// An SIm-factorization built independently: classes of H × X by union-find, randomly
/// labelled, with the first map twisted by a random 2-cell.
fn alternative_factorization(s: &mut Sampler, a: &OneCell) -> (OneCell, OneCell) {
    use rand::seq::SliceRandom;
    let (x, y) = (&a.src, &a.dst);
    let (g, h) = (x.group(), y.group());
    let (nx, nh) = (x.size(), h.order());
    let mut parent: Vec<usize> = (0..nh * nx).collect();
    fn root(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    for eta in h.elements() {
        for p in 0..nx {
            for t in g.elements() {
                let j = h.mul(eta, h.inv(a.th(p, t))) * nx + x.act(t, p);
                let (r1, r2) = (root(&mut parent, eta * nx + p), root(&mut parent, j));
                parent[r1] = r2;
            }
        }
    }
    let mut roots: Vec<usize> = (0..nh * nx).filter(|&i| root(&mut parent, i) == i).collect();
    roots.shuffle(s.rng());
    let mut label = vec![0; nh * nx];
    for i in 0..nh * nx {
        let r = root(&mut parent, i);
        label[i] = roots.iter().position(|&q| q == r).expect("root is listed");
    }
    let mut rep = vec![0; roots.len()];
    for i in (0..nh * nx).rev() {
        rep[label[i]] = i;
    }
    let set = GSet::from_fn(h, roots.len(), |t, c| {
        let (eta, p) = (rep[c] / nx, rep[c] % nx);
        label[h.mul(t, eta) * nx + p]
    });
    let sim = ZeroCell::new(set);
    let upsilon = OneCell::new(x, &sim, (0..nx).map(|p| label[p]).collect(), a.theta.clone()).expect("first map of the factorization");
    let tilde = OneCell::equivariant(&sim, y, rep.iter().map(|&i| y.act(i / nx, a.alpha[i % nx])).collect(), &GroupHom::identity(h))
        .expect("second map of the factorization");
    let twisted = s.twocell(&upsilon).dst;
    (twisted, tilde)
}

pub fn criterion_8(seed: u64, count: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let mut fails = Vec::new();
    for k in 0..count {
        let a = s.any_onecell(8, 4);
        let (up, tilde) = alternative_factorization(&mut s, &a);
        if verify_factorization_uniqueness(&a, &up, &tilde).is_err() {
            fails.push(format!("1-cell {k}"));
        }
    }
    let detail = if fails.is_empty() { format!("{count} 1-cells with independent factorizations") } else { fails.join("; ") };
    Ok(CheckResult::new("c08-sim-uniqueness", anchor("c08-sim-uniqueness"), fails.is_empty(), count, detail))
}

/// ℓ′ kills every truncated-coend relation for Ω⊗Ω, and Ω⊕C is caught as non-deflative.
pub fn criterion_9(window: TruncationWindow) -> Result<CheckResult> {
    let mut fails = Vec::new();
    let mut relations = 0;
    let bases = [ZeroCell::pt(&trivial()), ZeroCell::pt(&cyclic(2)), ZeroCell::pt(&cyclic(3)), ZeroCell::pt(&symmetric(3))];
    for x in &bases {
        let t = tensor_truncated(&Burnside, &Burnside, x, window)?;
        let l = multiplication_functional(&t, &Burnside)?;
        for (ri, r) in t.relations.iter().enumerate() {
            relations += 1;
            let mut v = vec![Q::zero(); l.rows()];
            for &(i, c) in r {
                for (k, vk) in v.iter_mut().enumerate() {
                    *vk += l.get(k, i) * c;
                }
            }
            if v.iter().any(|c| !c.is_zero()) {
                fails.push(format!("relation {ri} over pt/{}", x.group().label()));
            }
        }
    }
    let u = GroupUniverse::generated_by(&small_groups_up_to_12().into_iter().filter(|g| g.order() <= 6).collect::<Vec<_>>())?;
    let sum = DirectSum(vec![Arc::new(Burnside), Arc::new(Cardinality)]);
    let rep = is_deflative(&sum, &u)?;
    let witness = match (&rep.deflative, &rep.witness) {
        (false, Some(w)) => format!("Ω⊕C fails at {} → {} (kernel order {})", w.group, w.quotient, w.kernel_order),
        _ => {
            fails.push("Ω⊕C not detected".into());
            String::new()
        }
    };
    let detail = if fails.is_empty() { format!("{relations} relations annihilated; {witness}") } else { fails.join("; ") };
    Ok(CheckResult::new("c09-tensor-deflative", anchor("c09-tensor-deflative"), fails.is_empty(), relations, detail))
}

/// Perturbations of an action table that must all be rejected.
fn perturbations(base: &ActionTable) -> Vec<(String, ActionTable)> {
    let mut out = Vec::new();
    // the group with the largest rank
    let gi = (0..base.groups.len()).max_by_key(|&i| base.act[i].len()).expect("nonempty table");
    let last = base.act[gi].len() - 1;
    let n = base.act[gi][0].rows();
    let mut p = base.clone();
    let mut off = Matrix::zeros(n, n);
    off.set(0, n - 1, q(1));
    p.act[gi][0] = p.act[gi][0].add(&off);
    out.push(("off-diagonal entry".into(), p));
    let mut p = base.clone();
    p.act[gi][0] = p.act[gi][0].scale(q(2));
    out.push(("doubled free orbit".into(), p));
    let mut p = base.clone();
    p.act[gi].swap(0, last);
    out.push(("swapped basis actions".into(), p));
    let mut p = base.clone();
    p.act[gi][0] = Matrix::identity(n);
    out.push(("trivial free orbit".into(), p));
    let mut p = base.clone();
    p.act[gi][0] = Matrix::zeros(n, n);
    out.push(("zero free orbit".into(), p));
    let mut p = base.clone();
    p.act[gi] = p.act[gi].iter().map(|m| m.transpose()).collect();
    out.push(("transposed actions".into(), p));
    out.retain(|(_, p)| p != base);
    out
}

/// unique_action is accepted and perturbations rejected, for Ω and for Ω dressed by pt/C2.
pub fn criterion_10() -> Result<CheckResult> {
    let groups = vec![trivial(), cyclic(2), cyclic(3), symmetric(3)];
    let omega: Arc<dyn MackeyFunctor> = Arc::new(Burnside);
    let dressed: Arc<dyn MackeyFunctor> = Arc::new(dress(omega.clone(), &ZeroCell::pt(&cyclic(2))));
    let mut fails = Vec::new();
    let mut rejected = 0;
    let u = GroupUniverse::generated_by(&groups)?;
    for (name, m) in [("Ω", omega), ("Ω dressed by pt/C2", dressed)] {
        if !is_deflative(m.as_ref(), &u)?.deflative {
            fails.push(format!("{name} is not deflative"));
        }
        let act = unique_action(m.as_ref(), &groups)?;
        if !validate_module_action(m.as_ref(), &act)?.accepted() {
            fails.push(format!("{name}: unique action rejected"));
        }
        let ps = perturbations(&act);
        if ps.len() < 5 {
            fails.push(format!("{name}: only {} perturbations", ps.len()));
        }
        for (label, p) in ps {
            if validate_module_action(m.as_ref(), &p)?.accepted() {
                fails.push(format!("{name}: {label} accepted"));
            } else {
                rejected += 1;
            }
        }
    }
    let detail = if fails.is_empty() { format!("2 functors, {rejected} perturbations rejected") } else { fails.join("; ") };
    Ok(CheckResult::new("c10-module-uniqueness", anchor("c10-module-uniqueness"), fails.is_empty(), rejected + 2, detail))
}

/// The Yoneda–Dress square for Ω over G ∈ {C2, C3} and sampled bisets.
pub fn criterion_11(seed: u64, count: usize) -> Result<CheckResult> {
    let mut s = Sampler::new(seed);
    let mut fails = Vec::new();
    let mut n = 0;
    for g in [cyclic(2), cyclic(3)] {
        for k in 0..count {
            // V × G is an (H2 × G)-(H1 × G)-biset
            let h1 = s.group(3);
            let h2 = s.group(24 / (h1.order() * g.order()));
            let v = s.biset(&h2, &h1, 4);
            n += 1;
            if !dress_compare(&Burnside, &g, &v)?.commutes() {
                fails.push(format!("{} biset {k}", g.label()));
            }
        }
    }
    let detail = if fails.is_empty() { format!("{n} bisets over C2 and C3") } else { fails.join("; ") };
    Ok(CheckResult::new("c11-yoneda-dress", anchor("c11-yoneda-dress"), fails.is_empty(), n, detail))
}

/// Ω as a Green functor, and failing variants.
pub fn green_check() -> Result<CheckResult> {
    let groups = vec![trivial(), cyclic(2), cyclic(3), symmetric(3)];
    let std = validate_green(&BurnsideGreen::standard(), &groups)?;
    let doubled = validate_green(&BurnsideGreen::doubled_unit(), &groups)?;
    let twisted = validate_green(&BurnsideGreen::twisted(), &[trivial(), cyclic(2)])?;
    let ok = std.passed() && !doubled.passed() && !twisted.passed();
    let detail = format!(
        "standard {}; doubled unit fails {:?}; twisted fails {:?}",
        if std.passed() { "passes" } else { "fails" },
        doubled.failures(),
        twisted.failures()
    );
    Ok(CheckResult::new("green-burnside", anchor("green-burnside"), ok, 3, detail))
}

/// −⊗Ω on presentations: Ω⊕C reflects to Ω.
pub fn reflection_check() -> Result<CheckResult> {
    let u = Arc::new(GroupUniverse::generated_by(&[cyclic(2), cyclic(3)])?);
    let sum = DirectSum(vec![Arc::new(Burnside), Arc::new(Cardinality)]);
    let m = MackeyPresentation::tabulate(&sum, u.clone())?;
    let refl = reflect_deflative(&m)?;
    let omega = MackeyPresentation::tabulate(&Burnside, u.clone())?;
    let ok = refl.quotient.to_json()["maps"] == omega.to_json()["maps"] && is_deflative(&refl.quotient, &u)?.deflative;
    Ok(CheckResult::new("reflection", anchor("reflection"), ok, 1, format!("ranks {:?}", refl.quotient.ranks)))
}

/// The statement each check certifies.
pub fn anchor(name: &str) -> &'static str {
    match name {
        "c01-splitting" => "p∘i = id on the ordinary Burnside group",
        "c02-p-natural" => "p is a morphism of Mackey functors",
        "c03-mackey-omega" => "Mackey condition for Ω",
        "c04-deflative-omega" => "def∘inf = id for Ω",
        "c05-biset-span" => "s_(V×_H U) ≅ s_V∘s_U as spans",
        "c06-el-equivalence" => "el round-trips and sends bipullbacks to comma squares",
        "c07-derivator-oracle" => "prederivator semi-Mackey functor matches Ω",
        "c08-sim-uniqueness" => "SIm-factorization unique up to equivalence",
        "c09-tensor-deflative" => "ℓ′ annihilates coend relations",
        "c10-module-uniqueness" => "Ω-module structure is unique",
        "c11-yoneda-dress" => "Φ(M_G)(V) ≅ Φ(M)(V × G) via ϖ",
        "green-burnside" => "Ω is a Green functor",
        "reflection" => "deflative reflection of Ω⊕C",
        "c05-biset-span-reduced" => "s_(V×_H U) = s_V∘s_U after deflative reduction",
        _ => "",
    }
}

fn catch(name: &str, r: Result<CheckResult>) -> CheckResult {
    r.unwrap_or_else(|e: Error| CheckResult::new(name, anchor(name), false, 0, format!("error: {e}")))
}

/// Every check at the configured bounds; checks are ordered by name.
pub fn run_all(config: &Config) -> Result<Report> {
    let seed = config.seed;
    let k = config.samples.max(1);
    let sub = |n: u64| seed.wrapping_mul(1000).wrapping_add(n);
    let window = TruncationWindow::new(config.window_max_group_order, config.window_max_set_size, config.window_max_depth)?;
    let mut checks = vec![
        catch("c01-splitting", criterion_1()),
        catch("c02-p-natural", criterion_2(sub(2), 50 * k)),
        catch("c03-mackey-omega", criterion_3(sub(3), 30 * k)),
        catch("c04-deflative-omega", criterion_4()),
        catch("c06-el-equivalence", criterion_6(sub(6), 100 * k, 20 * k)),
        catch("c07-derivator-oracle", criterion_7(sub(7), 10 * k)),
        catch("c08-sim-uniqueness", criterion_8(sub(8), 50 * k)),
        catch("c09-tensor-deflative", criterion_9(window)),
        catch("c10-module-uniqueness", criterion_10()),
        catch("c11-yoneda-dress", criterion_11(sub(11), 10 * k)),
        catch("green-burnside", green_check()),
        catch("reflection", reflection_check()),
    ];
    match criterion_5(sub(5), 100 * k) {
        Ok((a, b)) => checks.extend([a, b]),
        Err(e) => checks.push(CheckResult::new("c05-biset-span", anchor("c05-biset-span"), false, 0, format!("error: {e}"))),
    }
    checks.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(Report { seed, checks })
}
