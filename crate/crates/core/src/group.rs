//! Finite groups as multiplication tables, homomorphisms and subgroups.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

pub type Group = Arc<FiniteGroup>;

/// Products and subgroups larger than this are kept lazy instead of tabulated.
const TABLE_LIMIT: usize = 160;

enum Repr {
    Table { mul: Vec<u32>, inv: Vec<u32> },
    Product { left: Group, right: Group },
    Sub { parent: Group, elems: Vec<usize>, pos: Vec<u32> },
}

pub struct FiniteGroup {
    order: usize,
    repr: Repr,
    name: Option<String>,
    fingerprint: OnceLock<u64>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group({}, order {})", self.label(), self.order)
    }
}

impl FiniteGroup {
    /// Validates and wraps a Cayley table with identity at index 0.
    pub fn from_table(mul: Vec<Vec<usize>>) -> Result<Group> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for row in &mul {
            if row.len() != n || row.iter().any(|&v| v >= n) {
                return Err(Error::InvalidGroup("table is not square over 0..order".into()));
            }
        }
        for g in 0..n {
            if mul[0][g] != g || mul[g][0] != g {
                return Err(Error::InvalidGroup(format!("index 0 is not an identity (element {g})")));
            }
        }
        let mut inv = vec![u32::MAX; n];
        for g in 0..n {
            let Some(h) = (0..n).find(|&h| mul[g][h] == 0) else {
                return Err(Error::InvalidGroup(format!("element {g} has no inverse")));
            };
            if mul[h][g] != 0 {
                return Err(Error::InvalidGroup(format!("element {g} has no two-sided inverse")));
            }
            inv[g] = h as u32;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a][b];
                for c in 0..n {
                    if mul[ab][c] != mul[a][mul[b][c]] {
                        return Err(Error::InvalidGroup(format!("not associative at ({a},{b},{c})")));
                    }
                }
            }
        }
        let flat = mul.iter().flatten().map(|&v| v as u32).collect();
        Ok(Arc::new(FiniteGroup { order: n, repr: Repr::Table { mul: flat, inv }, name: None, fingerprint: OnceLock::new() }))
    }

    fn from_table_unchecked(n: usize, mul: Vec<u32>, name: Option<String>) -> Group {
        let mut inv = vec![0u32; n];
        for g in 0..n {
            for h in 0..n {
                if mul[g * n + h] == 0 {
                    inv[g] = h as u32;
                    break;
                }
            }
        }
        Arc::new(FiniteGroup { order: n, repr: Repr::Table { mul, inv }, name, fingerprint: OnceLock::new() })
    }

    fn tabulate(n: usize, f: impl Fn(usize, usize) -> usize, name: Option<String>) -> Group {
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                mul.push(f(a, b) as u32);
            }
        }
        Self::from_table_unchecked(n, mul, name)
    }

    pub fn with_name(self: &Group, name: &str) -> Group {
        let repr = match &self.repr {
            Repr::Table { mul, inv } => Repr::Table { mul: mul.clone(), inv: inv.clone() },
            Repr::Product { left, right } => Repr::Product { left: left.clone(), right: right.clone() },
            Repr::Sub { parent, elems, pos } => Repr::Sub { parent: parent.clone(), elems: elems.clone(), pos: pos.clone() },
        };
        Arc::new(FiniteGroup { order: self.order, repr, name: Some(name.to_string()), fingerprint: OnceLock::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("G{}", self.order))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.repr {
            Repr::Table { mul, .. } => mul[a * self.order + b] as usize,
            Repr::Product { left, right } => {
                let m = right.order;
                left.mul(a / m, b / m) * m + right.mul(a % m, b % m)
            }
            Repr::Sub { parent, elems, pos } => pos[parent.mul(elems[a], elems[b])] as usize,
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        match &self.repr {
            Repr::Table { inv, .. } => inv[a] as usize,
            Repr::Product { left, right } => {
                let m = right.order;
                left.inv(a / m) * m + right.inv(a % m)
            }
            Repr::Sub { parent, elems, pos } => pos[parent.inv(elems[a])] as usize,
        }
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Hash of the full multiplication table; equal tables give equal fingerprints.
    pub fn fingerprint(&self) -> u64 {
        *self.fingerprint.get_or_init(|| {
            let mut h = std::collections::hash_map::DefaultHasher::new();
            self.order.hash(&mut h);
            for a in 0..self.order {
                for b in 0..self.order {
                    self.mul(a, b).hash(&mut h);
                }
            }
            h.finish()
        })
    }

    /// Histogram of element orders, an isomorphism invariant.
    pub fn order_profile(&self) -> Vec<(usize, usize)> {
        let mut m = BTreeMap::new();
        for a in self.elements() {
            *m.entry(self.element_order(a)).or_insert(0) += 1;
        }
        m.into_iter().collect()
    }
}

/// Same multiplication table (identity of labelled groups).
pub fn same_group(a: &Group, b: &Group) -> bool {
    if Arc::ptr_eq(a, b) {
        return true;
    }
    if a.order != b.order || a.fingerprint() != b.fingerprint() {
        return false;
    }
    (0..a.order).all(|x| (0..a.order).all(|y| a.mul(x, y) == b.mul(x, y)))
}

pub fn trivial() -> Group {
    cyclic(1)
}

pub fn cyclic(n: usize) -> Group {
    assert!(n > 0);
    let name = if n == 1 { "e".to_string() } else { format!("C{n}") };
    FiniteGroup::tabulate(n, |a, b| (a + b) % n, Some(name))
}

/// Dihedral group of order 2n: elements r^k s^j as index k + n·j.
pub fn dihedral(n: usize) -> Group {
    assert!(n >= 1);
    FiniteGroup::tabulate(
        2 * n,
        |a, b| {
            let (k, j) = (a % n, a / n);
            let (l, m) = (b % n, b / n);
            let l2 = if j == 1 { (n - l) % n } else { l };
            (k + l2) % n + n * ((j + m) % 2)
        },
        Some(format!("D{}", 2 * n)),
    )
}

/// Dicyclic group of order 4n: a^{2n} = 1, x^2 = a^n, x a x^-1 = a^-1.
pub fn dicyclic(n: usize) -> Group {
    assert!(n >= 2);
    let m = 2 * n;
    let name = if n == 2 { "Q8".to_string() } else { format!("Dic{}", 4 * n) };
    FiniteGroup::tabulate(
        2 * m,
        |a, b| {
            let (k, j) = (a % m, a / m);
            let (l, t) = (b % m, b / m);
            let l2 = if j == 1 { (m - l) % m } else { l };
            let mut e = (k + l2) % m;
            let mut s = j + t;
            if s == 2 {
                e = (e + n) % m;
                s = 0;
            }
            e + m * s
        },
        Some(name),
    )
}

pub fn quaternion() -> Group {
    dicyclic(2)
}

/// Closure of permutation generators; elements sorted lexicographically as images.
pub fn from_perm_gens(gens: &[Vec<usize>], degree: usize) -> Result<Group> {
    for g in gens {
        if g.len() != degree {
            return Err(Error::InvalidGroup(format!("generator has length {} != degree {degree}", g.len())));
        }
        let mut seen = vec![false; degree];
        for &v in g {
            if v >= degree || seen[v] {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
            seen[v] = true;
        }
    }
    let id: Vec<usize> = (0..degree).collect();
    let mut all: HashSet<Vec<usize>> = HashSet::new();
    all.insert(id.clone());
    let mut queue = VecDeque::from([id]);
    let limit = crate::config::max_order().max(4096);
    while let Some(p) = queue.pop_front() {
        for g in gens {
            let q: Vec<usize> = (0..degree).map(|i| g[p[i]]).collect();
            if all.insert(q.clone()) {
                if all.len() > limit {
                    return Err(Error::OrderLimitExceeded { order: all.len(), limit });
                }
                queue.push_back(q);
            }
        }
    }
    let mut elems: Vec<Vec<usize>> = all.into_iter().collect();
    elems.sort();
    let index: HashMap<Vec<usize>, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let n = elems.len();
    // (a·b)(i) = a(b(i))
    Ok(FiniteGroup::tabulate(
        n,
        |a, b| {
            let p: Vec<usize> = (0..degree).map(|i| elems[a][elems[b][i]]).collect();
            index[&p]
        },
        None,
    ))
}

pub fn symmetric(n: usize) -> Group {
    if n <= 1 {
        return trivial();
    }
    let mut gens = vec![];
    let mut t: Vec<usize> = (0..n).collect();
    t.swap(0, 1);
    gens.push(t);
    if n > 2 {
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(c);
    }
    from_perm_gens(&gens, n).unwrap().with_name(&format!("S{n}"))
}

pub fn alternating(n: usize) -> Group {
    if n <= 2 {
        return trivial();
    }
    let gens: Vec<Vec<usize>> = (2..n)
        .map(|k| {
            let mut p: Vec<usize> = (0..n).collect();
            p[0] = 1;
            p[1] = k;
            p[k] = 0;
            p
        })
        .collect();
    from_perm_gens(&gens, n).unwrap().with_name(&format!("A{n}"))
}

/// Direct product with element (a,b) at index a·|right| + b.
pub fn direct_product(left: &Group, right: &Group) -> Group {
    let n = left.order * right.order;
    let name = Some(format!("{}x{}", left.label(), right.label()));
    if n <= TABLE_LIMIT {
        let m = right.order;
        FiniteGroup::tabulate(n, |a, b| left.mul(a / m, b / m) * m + right.mul(a % m, b % m), name)
    } else {
        Arc::new(FiniteGroup {
            order: n,
            repr: Repr::Product { left: left.clone(), right: right.clone() },
            name,
            fingerprint: OnceLock::new(),
        })
    }
}

pub fn pair(right_order: usize, a: usize, b: usize) -> usize {
    a * right_order + b
}

pub fn unpair(right_order: usize, x: usize) -> (usize, usize) {
    (x / right_order, x % right_order)
}

/// Named groups: e, Cn, Dn (order n), Q8, DicN, Sn, An, V4, and products joined by 'x'.
pub fn by_name(name: &str) -> Result<Group> {
    let name = name.trim();
    if name.contains('x') || name.contains('×') {
        let parts: Vec<&str> = name.split(['x', '×']).collect();
        let mut g = by_name(parts[0])?;
        for p in &parts[1..] {
            g = direct_product(&g, &by_name(p)?);
        }
        return Ok(g.with_name(name));
    }
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::UnknownGroup(name.to_string()));
    let g = match name {
        "e" | "1" | "C1" | "trivial" => trivial(),
        "V4" | "K4" => direct_product(&cyclic(2), &cyclic(2)).with_name("V4"),
        "Q8" => quaternion(),
        _ if name.starts_with("Dic") => {
            let n = num(&name[3..])?;
            if n % 4 != 0 || n < 8 {
                return Err(Error::UnknownGroup(name.to_string()));
            }
            dicyclic(n / 4)
        }
        _ if name.starts_with('C') => cyclic(num(&name[1..])?),
        _ if name.starts_with('D') => {
            let n = num(&name[1..])?;
            if n % 2 != 0 || n < 2 {
                return Err(Error::UnknownGroup(name.to_string()));
            }
            dihedral(n / 2)
        }
        _ if name.starts_with('S') => symmetric(num(&name[1..])?),
        _ if name.starts_with('A') => alternating(num(&name[1..])?),
        _ => return Err(Error::UnknownGroup(name.to_string())),
    };
    if g.order() > crate::config::max_order() {
        return Err(Error::OrderLimitExceeded { order: g.order(), limit: crate::config::max_order() });
    }
    Ok(g)
}

/// One representative of every isomorphism type of order at most 12.
pub fn small_groups_up_to_12() -> Vec<Group> {
    let names = [
        "e", "C2", "C3", "C4", "V4", "C5", "C6", "S3", "C7", "C8", "C4xC2", "C2xC2xC2", "D8", "Q8", "C9", "C3xC3",
        "C10", "D10", "C11", "C12", "C6xC2", "A4", "D12", "Dic12",
    ];
    names.iter().map(|n| by_name(n).unwrap()).collect()
}

// ---------------------------------------------------------------- subgroups

/// Sorted closure of a generating set.
pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order];
    seen[0] = true;
    let mut out = vec![0];
    let mut i = 0;
    while i < out.len() {
        let u = out[i];
        for &s in gens {
            let v = g.mul(u, s);
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
        i += 1;
    }
    out.sort_unstable();
    out
}

pub fn is_subgroup(g: &FiniteGroup, set: &[usize]) -> bool {
    if set.is_empty() || !set.contains(&0) {
        return false;
    }
    let mut mem = vec![false; g.order];
    for &x in set {
        mem[x] = true;
    }
    set.iter().all(|&a| set.iter().all(|&b| mem[g.mul(a, b)]))
}

pub fn conjugate_subgroup(g: &FiniteGroup, sub: &[usize], x: usize) -> Vec<usize> {
    let mut v: Vec<usize> = sub.iter().map(|&s| g.conj(x, s)).collect();
    v.sort_unstable();
    v
}

pub fn normalizer(g: &FiniteGroup, sub: &[usize]) -> Vec<usize> {
    g.elements().filter(|&x| conjugate_subgroup(g, sub, x) == sub).collect()
}

pub fn is_normal(g: &FiniteGroup, sub: &[usize]) -> bool {
    g.elements().all(|x| conjugate_subgroup(g, sub, x) == sub)
}

/// A small generating set, preferring elements of large order.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut cand: Vec<usize> = g.elements().skip(1).collect();
    cand.sort_by_key(|&a| (std::cmp::Reverse(g.element_order(a)), a));
    let mut gens = Vec::new();
    let mut cur = vec![0];
    for a in cand {
        if cur.len() == g.order {
            break;
        }
        if cur.binary_search(&a).is_err() {
            gens.push(a);
            cur = generated(g, &gens);
        }
    }
    gens
}

#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    /// All subgroups, sorted by (order, elements).
    pub subgroups: Vec<Vec<usize>>,
    /// Conjugacy classes as lists of subgroup indices, ordered by their representatives.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Representative (lexicographically least member) of each class.
    pub reps: Vec<usize>,
    index: HashMap<Vec<usize>, usize>,
}

impl SubgroupLattice {
    pub fn index_of(&self, sub: &[usize]) -> Option<usize> {
        self.index.get(sub).copied()
    }

    pub fn class_rep(&self, class: usize) -> &[usize] {
        &self.subgroups[self.reps[class]]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }
}

pub fn subgroup_lattice(g: &FiniteGroup) -> Result<SubgroupLattice> {
    subgroup_lattice_with_limit(g, crate::config::max_order())
}

pub fn subgroup_lattice_with_limit(g: &FiniteGroup, limit: usize) -> Result<SubgroupLattice> {
    if g.order > limit {
        return Err(Error::OrderLimitExceeded { order: g.order, limit });
    }
    let mut cyclics: Vec<Vec<usize>> = g.elements().map(|a| generated(g, &[a])).collect();
    cyclics.sort();
    cyclics.dedup();
    let mut found: HashSet<Vec<usize>> = HashSet::new();
    let triv = vec![0];
    found.insert(triv.clone());
    let mut queue = vec![triv];
    while let Some(s) = queue.pop() {
        for c in &cyclics {
            if c.iter().all(|x| s.binary_search(x).is_ok()) {
                continue;
            }
            let mut gens = s.clone();
            gens.extend_from_slice(c);
            let t = generated(g, &gens);
            if found.insert(t.clone()) {
                queue.push(t);
            }
        }
    }
    let mut subgroups: Vec<Vec<usize>> = found.into_iter().collect();
    subgroups.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let index: HashMap<Vec<usize>, usize> = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..subgroups.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = g.elements().map(|x| index[&conjugate_subgroup(g, &subgroups[i], x)]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            class_of[m] = classes.len();
        }
        classes.push(members);
    }
    let reps: Vec<usize> = classes
        .iter()
        .map(|c| *c.iter().min_by(|&&a, &&b| subgroups[a].cmp(&subgroups[b])).unwrap())
        .collect();
    Ok(SubgroupLattice { subgroups, classes, class_of, reps, index })
}

/// Subgroup as a group in its own right, with elements in increasing parent order.
pub fn subgroup_group(parent: &Group, elems: &[usize]) -> (Group, GroupHom) {
    debug_assert!(is_subgroup(parent, elems));
    let mut elems = elems.to_vec();
    elems.sort_unstable();
    if elems.len() == parent.order {
        return (parent.clone(), GroupHom::identity(parent));
    }
    let n = elems.len();
    let mut pos = vec![u32::MAX; parent.order];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i as u32;
    }
    let g = if n <= TABLE_LIMIT {
        FiniteGroup::tabulate(n, |a, b| pos[parent.mul(elems[a], elems[b])] as usize, None)
    } else {
        let (root, elems_root) = match &parent.repr {
            Repr::Sub { parent: pp, elems: pe, .. } => (pp.clone(), elems.iter().map(|&e| pe[e]).collect::<Vec<_>>()),
            _ => (parent.clone(), elems.clone()),
        };
        let mut rpos = vec![u32::MAX; root.order];
        for (i, &e) in elems_root.iter().enumerate() {
            rpos[e] = i as u32;
        }
        Arc::new(FiniteGroup {
            order: n,
            repr: Repr::Sub { parent: root, elems: elems_root, pos: rpos },
            name: None,
            fingerprint: OnceLock::new(),
        })
    };
    let incl = GroupHom { src: g.clone(), dst: parent.clone(), map: elems };
    (g, incl)
}

/// Quotient by a normal subgroup; cosets ordered by least element.
pub fn quotient_group(g: &Group, normal: &[usize]) -> (Group, GroupHom) {
    let mut coset_of = vec![usize::MAX; g.order];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &n in normal {
                coset_of[g.mul(x, n)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = FiniteGroup::tabulate(reps.len(), |a, b| coset_of[g.mul(reps[a], reps[b])], None);
    let hom = GroupHom { src: g.clone(), dst: q.clone(), map: coset_of };
    (q, hom)
}

// ---------------------------------------------------------------- homomorphisms

#[derive(Clone)]
pub struct GroupHom {
    pub src: Group,
    pub dst: Group,
    pub map: Vec<usize>,
}

impl std::fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Hom({} -> {}: {:?})", self.src.label(), self.dst.label(), self.map)
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_group(&self.src, &other.src) && same_group(&self.dst, &other.dst)
    }
}

impl GroupHom {
    pub fn new(src: &Group, dst: &Group, map: Vec<usize>) -> Result<Self> {
        if map.len() != src.order || map.iter().any(|&v| v >= dst.order) {
            return Err(Error::InvalidHom("table has wrong shape".into()));
        }
        for a in src.elements() {
            for b in src.elements() {
                if map[src.mul(a, b)] != dst.mul(map[a], map[b]) {
                    return Err(Error::InvalidHom(format!("not multiplicative at ({a},{b})")));
                }
            }
        }
        Ok(GroupHom { src: src.clone(), dst: dst.clone(), map })
    }

    pub fn new_unchecked(src: &Group, dst: &Group, map: Vec<usize>) -> Self {
        GroupHom { src: src.clone(), dst: dst.clone(), map }
    }

    pub fn identity(g: &Group) -> Self {
        GroupHom { src: g.clone(), dst: g.clone(), map: g.elements().collect() }
    }

    pub fn trivial(src: &Group, dst: &Group) -> Self {
        GroupHom { src: src.clone(), dst: dst.clone(), map: vec![0; src.order] }
    }

    pub fn inner(g: &Group, x: usize) -> Self {
        GroupHom { src: g.clone(), dst: g.clone(), map: g.elements().map(|a| g.conj(x, a)).collect() }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// self ∘ other
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        debug_assert!(same_group(&other.dst, &self.src));
        GroupHom { src: other.src.clone(), dst: self.dst.clone(), map: other.map.iter().map(|&a| self.map[a]).collect() }
    }

    /// c_x ∘ self
    pub fn then_conj(&self, x: usize) -> GroupHom {
        GroupHom { src: self.src.clone(), dst: self.dst.clone(), map: self.map.iter().map(|&a| self.dst.conj(x, a)).collect() }
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.src.elements().filter(|&a| self.map[a] == 0).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.dst.order
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !(self.is_injective() && self.is_surjective()) {
            return None;
        }
        let mut inv = vec![0; self.dst.order];
        for a in self.src.elements() {
            inv[self.map[a]] = a;
        }
        Some(GroupHom { src: self.dst.clone(), dst: self.src.clone(), map: inv })
    }

    pub fn pair_with(&self, other: &GroupHom, product: &Group) -> GroupHom {
        let m = other.dst.order;
        GroupHom {
            src: self.src.clone(),
            dst: product.clone(),
            map: self.src.elements().map(|a| pair(m, self.map[a], other.map[a])).collect(),
        }
    }
}

/// f = ι ∘ q with q onto the image and ι injective.
pub fn hom_image_factorization(f: &GroupHom) -> (GroupHom, GroupHom) {
    let img = f.image();
    let (im, incl) = subgroup_group(&f.dst, &img);
    let pos: HashMap<usize, usize> = img.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let q = GroupHom { src: f.src.clone(), dst: im, map: f.map.iter().map(|a| pos[a]).collect() };
    (q, incl)
}

/// Extends generator images to a homomorphism, if consistent.
pub fn extend_hom(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.order];
    map[0] = 0;
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let v = src.mul(u, s);
            let img = dst.mul(map[u], images[k]);
            if map[v] == usize::MAX {
                map[v] = img;
                queue.push(v);
            } else if map[v] != img {
                return None;
            }
        }
        i += 1;
    }
    if queue.len() != src.order {
        return None;
    }
    Some(map)
}

/// Depth-first search over generator images; `accept` filters complete maps.
pub fn search_homs(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    mut visit: impl FnMut(Vec<usize>) -> bool,
) {
    fn rec(
        src: &FiniteGroup,
        dst: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(Vec<usize>) -> bool,
    ) -> bool {
        if chosen.len() == gens.len() {
            if let Some(m) = extend_hom(src, dst, gens, chosen) {
                return visit(m);
            }
            return false;
        }
        let k = chosen.len();
        for &c in &candidates[k] {
            chosen.push(c);
            // partial consistency on the subgroup generated so far
            let ok = extend_partial(src, dst, &gens[..=k], chosen);
            if ok && rec(src, dst, gens, candidates, chosen, visit) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    let mut chosen = Vec::new();
    rec(src, dst, gens, candidates, &mut chosen, &mut visit);
}

fn extend_partial(src: &FiniteGroup, dst: &FiniteGroup, gens: &[usize], images: &[usize]) -> bool {
    let mut map: HashMap<usize, usize> = HashMap::new();
    map.insert(0, 0);
    let mut queue = vec![0];
    let mut i = 0;
    while i < queue.len() {
        let u = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let v = src.mul(u, s);
            let img = dst.mul(map[&u], images[k]);
            match map.get(&v) {
                None => {
                    map.insert(v, img);
                    queue.push(v);
                }
                Some(&w) if w != img => return false,
                _ => {}
            }
        }
        i += 1;
    }
    true
}

pub fn homomorphisms(src: &Group, dst: &Group) -> Vec<GroupHom> {
    let gens = generating_set(src);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = src.element_order(s);
            dst.elements().filter(|&t| o % dst.element_order(t) == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    search_homs(src, dst, &gens, &cands, |m| {
        out.push(GroupHom { src: src.clone(), dst: dst.clone(), map: m });
        false
    });
    out
}

/// First isomorphism in generator-image order (identity when tables agree).
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<GroupHom> {
    if a.order != b.order {
        return None;
    }
    if same_group(a, b) {
        return Some(GroupHom { src: a.clone(), dst: b.clone(), map: a.elements().collect() });
    }
    if a.order_profile() != b.order_profile() || a.is_abelian() != b.is_abelian() {
        return None;
    }
    let gens = generating_set(a);
    let cands: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = a.element_order(s);
            b.elements().filter(|&t| b.element_order(t) == o).collect()
        })
        .collect();
    let mut found = None;
    search_homs(a, b, &gens, &cands, |m| {
        let mut seen = vec![false; b.order];
        for &x in &m {
            if seen[x] {
                return false;
            }
            seen[x] = true;
        }
        found = Some(GroupHom { src: a.clone(), dst: b.clone(), map: m });
        true
    });
    found
}

pub fn automorphisms(g: &Group) -> Vec<GroupHom> {
    homomorphisms(g, g).into_iter().filter(|f| f.is_injective()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group(g: &FiniteGroup) {
        let n = g.order();
        for a in 0..n {
            assert_eq!(g.mul(0, a), a);
            assert_eq!(g.mul(a, g.inv(a)), 0);
            for b in 0..n {
                for c in 0..n {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn catalog_groups_are_groups() {
        for g in small_groups_up_to_12() {
            check_group(&g);
        }
        check_group(&symmetric(4));
        check_group(&dicyclic(3));
    }

    #[test]
    fn catalog_is_pairwise_non_isomorphic() {
        let gs = small_groups_up_to_12();
        for i in 0..gs.len() {
            for j in 0..i {
                assert!(find_isomorphism(&gs[i], &gs[j]).is_none(), "{:?} ~ {:?}", gs[i], gs[j]);
            }
        }
    }

    #[test]
    fn subgroup_counts() {
        let c = |n: &str| {
            let l = subgroup_lattice(&by_name(n).unwrap()).unwrap();
            (l.subgroups.len(), l.num_classes())
        };
        assert_eq!(c("C2"), (2, 2));
        assert_eq!(c("V4"), (5, 5));
        assert_eq!(c("S3"), (6, 4));
        assert_eq!(c("S4"), (30, 11));
        assert_eq!(c("A4"), (10, 5));
        assert_eq!(c("D8"), (10, 8));
        assert_eq!(c("Q8"), (6, 6));
    }

    #[test]
    fn subgroup_limit() {
        assert!(matches!(subgroup_lattice_with_limit(&symmetric(4), 12), Err(Error::OrderLimitExceeded { .. })));
    }

    #[test]
    fn image_factorization() {
        let c4 = cyclic(4);
        let c2 = cyclic(2);
        let f = GroupHom::new(&c4, &c2, vec![0, 1, 0, 1]).unwrap();
        let (q, i) = hom_image_factorization(&f);
        assert!(q.is_surjective());
        assert!(i.is_injective());
        assert_eq!(i.compose(&q).map, f.map);
        assert_eq!(q.dst.order(), 2);

        let s3 = symmetric(3);
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let f = GroupHom::new(&c2, &s3, vec![0, t]).unwrap();
        let (q, i) = hom_image_factorization(&f);
        assert_eq!(q.dst.order(), 2);
        assert_eq!(i.compose(&q).map, f.map);

        let id = GroupHom::identity(&s3);
        let (q, i) = hom_image_factorization(&id);
        assert_eq!(q.map, id.map);
        assert_eq!(i.map, id.map);
    }

    #[test]
    fn hom_counts() {
        // |Hom(C2, S3)| = 1 + 3, |Aut(V4)| = 6, |Aut(C2^3)| = 168, |Hom(S3, C2)| = 2
        assert_eq!(homomorphisms(&cyclic(2), &symmetric(3)).len(), 4);
        assert_eq!(automorphisms(&by_name("V4").unwrap()).len(), 6);
        assert_eq!(automorphisms(&by_name("C2xC2xC2").unwrap()).len(), 168);
        assert_eq!(homomorphisms(&symmetric(3), &cyclic(2)).len(), 2);
        assert_eq!(automorphisms(&quaternion()).len(), 24);
    }

    #[test]
    fn lazy_product_matches_tables() {
        let a = symmetric(4);
        let b = by_name("D12").unwrap();
        let p = direct_product(&a, &b);
        assert_eq!(p.order(), 288);
        for x in [0, 5, 17, 200, 287] {
            for y in [0, 3, 99, 250] {
                let (x1, x2) = unpair(12, x);
                let (y1, y2) = unpair(12, y);
                assert_eq!(p.mul(x, y), pair(12, a.mul(x1, y1), b.mul(x2, y2)));
            }
            assert_eq!(p.mul(x, p.inv(x)), 0);
        }
        let sub = generated(&p, &[pair(12, 1, 0), pair(12, 0, 1), pair(12, 2, 0)]);
        let (s, incl) = subgroup_group(&p, &sub);
        assert_eq!(s.order(), sub.len());
        for a in s.elements().step_by(7) {
            for b in s.elements().step_by(5) {
                assert_eq!(incl.apply(s.mul(a, b)), p.mul(incl.apply(a), incl.apply(b)));
            }
        }
    }

    #[test]
    fn perm_loader() {
        let g = from_perm_gens(&[vec![1, 0, 2], vec![1, 2, 0]], 3).unwrap();
        assert_eq!(g.order(), 6);
        assert!(find_isomorphism(&g, &symmetric(3)).is_some());
        assert!(from_perm_gens(&[vec![0, 0, 1]], 3).is_err());
    }

    #[test]
    fn quotient() {
        let c4 = cyclic(4);
        let (q, f) = quotient_group(&c4, &[0, 2]);
        assert_eq!(q.order(), 2);
        assert!(f.is_surjective());
        assert_eq!(f.kernel(), vec![0, 2]);
    }
}
