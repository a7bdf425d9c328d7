//! JSON formats for groups, G-sets, 1-cells, spans, bisets, groupoids and diagrams.

use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::biset::Biset;
use crate::cell::{OneCell, ZeroCell};
use crate::derivator::Diagram;
use crate::error::{Error, Result};
use crate::group::{by_name, from_perm_gens, same_group, FiniteGroup, Group};
use crate::groupoid::{el, FiniteGroupoid, Functor};
use crate::gset::GSet;
use crate::linalg::Matrix;
use crate::span::{Span, SpanLinComb};

/// A group by catalog name ("S3", "C2xC2", "Dic12"), by multiplication table, or by
/// permutation generators on `degree` points.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Name(String),
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        order: usize,
        mul: Vec<Vec<usize>>,
    },
    Perm {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        perm_gens: Vec<Vec<usize>>,
        degree: usize,
    },
}

/// `act[g][x]` = g·x.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GSetSpec {
    pub group: GroupSpec,
    pub size: usize,
    pub act: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SetBody {
    pub size: usize,
    pub act: Vec<Vec<usize>>,
}

/// `{"group": …, "set": {"size", "act"}}`; a flat G-set is accepted too.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ZeroCellSpec {
    Cell { group: GroupSpec, set: SetBody },
    GSet(GSetSpec),
}

/// A leg over a known source: α and θ rows `theta[x][g]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LegSpec {
    pub alpha: Vec<usize>,
    pub theta: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OneCellSpec {
    pub src: ZeroCellSpec,
    pub dst: ZeroCellSpec,
    pub alpha: Vec<usize>,
    pub theta: Vec<Vec<usize>>,
}

/// dom ← apex → cod, with `right` the leg to dom and `left` the leg to cod.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpanSpec {
    pub dom: ZeroCellSpec,
    pub cod: ZeroCellSpec,
    pub apex: ZeroCellSpec,
    pub left: LegSpec,
    pub right: LegSpec,
}

/// `lact[h][u]` = h·u and `ract[u][g]` = u·g.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BisetSpec {
    pub left: GroupSpec,
    pub right: GroupSpec,
    pub lact: Vec<Vec<usize>>,
    pub ract: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupoidSpec {
    /// One object with the group as automorphisms.
    Group { group: GroupSpec },
    /// The category of elements of a G-set.
    El { el: ZeroCellSpec },
    Explicit {
        objects: usize,
        morphisms: Vec<(usize, usize)>,
        identities: Vec<usize>,
        /// Triples (g, f, g∘f).
        compose: Vec<(usize, usize, usize)>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorSpec {
    pub src: GroupoidSpec,
    pub dst: GroupoidSpec,
    pub obj: Vec<usize>,
    pub mor: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramSpec {
    pub sets: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

/// A cospan I → K ← J of groupoid functors and a diagram on I.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SquareSpec {
    pub left: FunctorSpec,
    pub right: FunctorSpec,
    pub diagram: DiagramSpec,
}

/// Parses JSON text; syntax and shape errors carry line and column.
pub fn from_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn read_file<T: DeserializeOwned>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
    from_str(&text).map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{path}: {m}")),
        other => other,
    })
}

pub fn group(spec: &GroupSpec) -> Result<Group> {
    match spec {
        GroupSpec::Name(n) => by_name(n),
        GroupSpec::Table { name, order, mul } => {
            if mul.len() != *order {
                return Err(Error::Parse(format!("group table has {} rows, order is {order}", mul.len())));
            }
            let g = FiniteGroup::from_table(mul.clone())?;
            Ok(name.as_ref().map_or(g.clone(), |n| g.with_name(n)))
        }
        GroupSpec::Perm { name, perm_gens, degree } => {
            let g = from_perm_gens(perm_gens, *degree)?;
            Ok(name.as_ref().map_or(g.clone(), |n| g.with_name(n)))
        }
    }
}

pub fn group_spec(g: &Group) -> GroupSpec {
    match g.name() {
        Some(n) if by_name(n).map(|h| same_group(&h, g)).unwrap_or(false) => GroupSpec::Name(n.to_string()),
        name => GroupSpec::Table { name: name.map(String::from), order: g.order(), mul: g.table() },
    }
}

pub fn gset(spec: &GSetSpec) -> Result<GSet> {
    GSet::new(&group(&spec.group)?, spec.size, &spec.act)
}

pub fn gset_spec(x: &GSet) -> GSetSpec {
    GSetSpec { group: group_spec(x.group()), size: x.size(), act: x.rows() }
}

pub fn zerocell(spec: &ZeroCellSpec) -> Result<ZeroCell> {
    Ok(ZeroCell::new(match spec {
        ZeroCellSpec::Cell { group: g, set } => GSet::new(&group(g)?, set.size, &set.act)?,
        ZeroCellSpec::GSet(x) => gset(x)?,
    }))
}

pub fn zerocell_spec(x: &ZeroCell) -> ZeroCellSpec {
    ZeroCellSpec::Cell { group: group_spec(x.group()), set: SetBody { size: x.size(), act: x.set().rows() } }
}

fn leg(src: &ZeroCell, dst: &ZeroCell, l: &LegSpec) -> Result<OneCell> {
    OneCell::from_rows(src, dst, l.alpha.clone(), &l.theta)
}

fn leg_spec(a: &OneCell) -> LegSpec {
    LegSpec { alpha: a.alpha.clone(), theta: a.theta_rows() }
}

pub fn onecell(spec: &OneCellSpec) -> Result<OneCell> {
    let (x, y) = (zerocell(&spec.src)?, zerocell(&spec.dst)?);
    OneCell::from_rows(&x, &y, spec.alpha.clone(), &spec.theta)
}

pub fn onecell_spec(a: &OneCell) -> OneCellSpec {
    OneCellSpec { src: zerocell_spec(&a.src), dst: zerocell_spec(&a.dst), alpha: a.alpha.clone(), theta: a.theta_rows() }
}

pub fn span(spec: &SpanSpec) -> Result<Span> {
    let (dom, cod, apex) = (zerocell(&spec.dom)?, zerocell(&spec.cod)?, zerocell(&spec.apex)?);
    Span::new(leg(&apex, &cod, &spec.left)?, leg(&apex, &dom, &spec.right)?)
}

pub fn span_spec(s: &Span) -> SpanSpec {
    SpanSpec {
        dom: zerocell_spec(s.dom()),
        cod: zerocell_spec(s.cod()),
        apex: zerocell_spec(s.apex()),
        left: leg_spec(&s.left),
        right: leg_spec(&s.right),
    }
}

/// A combination of transitive spans as a list of terms.
pub fn lincomb_json(s: &SpanLinComb) -> Value {
    let terms: Vec<Value> = s
        .terms
        .iter()
        .map(|(c, p)| {
            json!({
                "coeff": c.to_string(),
                "apex_group": p.group.label(),
                "right_point": p.right_point,
                "right": p.right,
                "left_point": p.left_point,
                "left": p.left,
            })
        })
        .collect();
    json!({ "dom": zerocell_spec(&s.dom), "cod": zerocell_spec(&s.cod), "terms": terms })
}

pub fn biset(spec: &BisetSpec) -> Result<Biset> {
    Biset::new(&group(&spec.left)?, &group(&spec.right)?, &spec.lact, &spec.ract)
}

pub fn biset_spec(b: &Biset) -> BisetSpec {
    BisetSpec { left: group_spec(b.left_group()), right: group_spec(b.right_group()), lact: b.lact_rows(), ract: b.ract_rows() }
}

pub fn groupoid(spec: &GroupoidSpec) -> Result<FiniteGroupoid> {
    match spec {
        GroupoidSpec::Group { group: g } => Ok(FiniteGroupoid::from_group(&*group(g)?)),
        GroupoidSpec::El { el: x } => Ok(el(&zerocell(x)?)),
        GroupoidSpec::Explicit { objects, morphisms, identities, compose } => {
            FiniteGroupoid::from_table(*objects, morphisms.clone(), identities.clone(), compose)
        }
    }
}

pub fn functor(spec: &FunctorSpec) -> Result<Functor> {
    let src = Arc::new(groupoid(&spec.src)?);
    let dst = Arc::new(groupoid(&spec.dst)?);
    Functor::new(&src, &dst, spec.obj.clone(), spec.mor.clone())
}

pub fn diagram(shape: &Arc<FiniteGroupoid>, spec: &DiagramSpec) -> Result<Diagram> {
    Diagram::new(shape, spec.sets.clone(), spec.maps.clone())
}

pub fn diagram_spec(d: &Diagram) -> DiagramSpec {
    DiagramSpec { sets: d.sets.clone(), maps: d.maps.clone() }
}

pub fn matrix_json(m: &Matrix) -> Value {
    json!(m.to_string_rows())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric;

    #[test]
    fn round_trips() {
        let g = symmetric(3);
        let x = GSet::cosets(&g, &[0, 1]).0;
        let spec: GSetSpec = from_str(&serde_json::to_string(&gset_spec(&x)).unwrap()).unwrap();
        assert_eq!(gset(&spec).unwrap(), x);
        let b = Biset::identity(&g);
        let spec: BisetSpec = from_str(&serde_json::to_string(&biset_spec(&b)).unwrap()).unwrap();
        assert!(crate::biset::biset_iso(&biset(&spec).unwrap(), &b));
        let s = Span::identity(&ZeroCell::new(x));
        let t = span(&from_str(&serde_json::to_string(&span_spec(&s)).unwrap()).unwrap()).unwrap();
        assert!(crate::span::spans_isomorphic(&s, &t).is_some());
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = from_str::<GSetSpec>("{\"group\": \"S3\", \"size\": 1,\n \"act\": [1,}").unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");
        let bad = from_str::<GSetSpec>("{\"group\": \"S3\", \"size\": 1, \"act\": [[0]]}").unwrap();
        assert!(gset(&bad).is_err());
    }

    #[test]
    fn group_formats() {
        let t: GroupSpec = from_str("{\"order\": 2, \"mul\": [[0,1],[1,0]]}").unwrap();
        assert_eq!(group(&t).unwrap().order(), 2);
        let p: GroupSpec = from_str("{\"perm_gens\": [[1,0,2],[1,2,0]], \"degree\": 3}").unwrap();
        assert_eq!(group(&p).unwrap().order(), 6);
        let z: ZeroCellSpec = from_str("{\"group\": \"C2\", \"set\": {\"size\": 2, \"act\": [[0,1],[1,0]]}}").unwrap();
        assert_eq!(zerocell(&z).unwrap().size(), 2);
    }
}
