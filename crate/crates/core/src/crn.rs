//! Generalized mass-action reaction networks and the deficiency-zero criteria.
//!
//! Each vertex carries a stoichiometric complex `y` and a kinetic-order
//! complex `ỹ`. With `S = im(Y I_E)` and `S̃ = im(Ỹ I_E)`, the network has a
//! unique complex-balanced equilibrium in every stoichiometric class for all
//! rate constants when `δ = δ̃ = 0`, the graph is weakly reversible, and the
//! exponential map with `ker W = S`, `ker W̃ = S̃` is bijective for all `c`.

use std::collections::{BTreeMap, HashMap};

use num::{Signed, Zero};
use petgraph::algo::kosaraju_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analyzer::{analyze, RobustSelection};
use crate::error::{Error, Result};
use crate::json::{matrix_to_value, rational_from_value};
use crate::linalg::{kernel_basis, matrix_with_kernel, Rational, RationalMatrix, SubspaceBasis};
use crate::report::{Report, ToolInfo};
use crate::spec::{Caps, ExponentialMapSpec};
use crate::verdict::{Classification, Status};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDocument {
    species: Vec<String>,
    reactions: Vec<ReactionDocument>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReactionDocument {
    from: ComplexDocument,
    to: ComplexDocument,
    #[serde(default)]
    k: Option<Value>,
    #[serde(default)]
    k_reverse: Option<Value>,
    #[serde(default)]
    reversible: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComplexDocument {
    #[serde(default)]
    stoich: BTreeMap<String, Value>,
    #[serde(default)]
    kinetic: Option<BTreeMap<String, Value>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub stoich: Vec<Rational>,
    pub kinetic: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub k: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedNetwork {
    pub species: Vec<String>,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

fn complex(
    doc: &BTreeMap<String, Value>,
    index: &HashMap<&str, usize>,
    nonnegative: bool,
) -> Result<Vec<Rational>> {
    let mut out = vec![Rational::zero(); index.len()];
    for (name, value) in doc {
        let &i = index.get(name.as_str()).ok_or_else(|| Error::Network(format!("unknown species {name:?}")))?;
        let x = rational_from_value(value)?;
        if nonnegative && x.is_negative() {
            return Err(Error::Network(format!("negative stoichiometric coefficient for {name:?}")));
        }
        out[i] = x;
    }
    Ok(out)
}

fn rate(value: &Option<Value>) -> Result<Option<Rational>> {
    let Some(v) = value else { return Ok(None) };
    let k = rational_from_value(v)?;
    if !k.is_positive() {
        return Err(Error::Network(format!("rate constant {k} must be positive")));
    }
    Ok(Some(k))
}

impl GeneralizedNetwork {
    pub fn parse(text: &str) -> Result<Self> {
        let doc: NetworkDocument =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid network: {e}")))?;
        if doc.species.is_empty() {
            return Err(Error::Network("the network declares no species".into()));
        }
        let mut index = HashMap::new();
        for (i, s) in doc.species.iter().enumerate() {
            if index.insert(s.as_str(), i).is_some() {
                return Err(Error::Network(format!("species {s:?} is declared twice")));
            }
        }
        let mut net = GeneralizedNetwork { species: doc.species.clone(), vertices: Vec::new(), edges: Vec::new() };
        let vertex = |c: &ComplexDocument, net: &mut GeneralizedNetwork| -> Result<usize> {
            let stoich = complex(&c.stoich, &index, true)?;
            let kinetic = match &c.kinetic {
                Some(k) => complex(k, &index, false)?,
                None => stoich.clone(),
            };
            let v = Vertex { stoich, kinetic };
            Ok(match net.vertices.iter().position(|u| *u == v) {
                Some(i) => i,
                None => {
                    net.vertices.push(v);
                    net.vertices.len() - 1
                }
            })
        };
        for r in &doc.reactions {
            let a = vertex(&r.from, &mut net)?;
            let b = vertex(&r.to, &mut net)?;
            net.add_edge(a, b, rate(&r.k)?)?;
            if r.reversible {
                net.add_edge(b, a, rate(&r.k_reverse)?)?;
            } else if r.k_reverse.is_some() {
                return Err(Error::Network("k_reverse given for an irreversible reaction".into()));
            }
        }
        if net.edges.is_empty() {
            return Err(Error::Network("the network has no reactions".into()));
        }
        Ok(net)
    }

    fn add_edge(&mut self, from: usize, to: usize, k: Option<Rational>) -> Result<()> {
        if from == to {
            return Err(Error::Network(format!("reaction from vertex {} to itself", from + 1)));
        }
        if self.edges.iter().any(|e| e.from == from && e.to == to) {
            return Err(Error::Network(format!("duplicate reaction {} -> {}", from + 1, to + 1)));
        }
        self.edges.push(Edge { from, to, k });
        Ok(())
    }

    /// Kinetic-order complexes equal the stoichiometric ones.
    pub fn is_mass_action(&self) -> bool {
        self.vertices.iter().all(|v| v.stoich == v.kinetic)
    }

    fn digraph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<NodeIndex> = self.vertices.iter().map(|_| g.add_node(())).collect();
        for e in &self.edges {
            g.add_edge(nodes[e.from], nodes[e.to], ());
        }
        g
    }

    /// Every connected component of the graph is strongly connected.
    pub fn is_weakly_reversible(&self) -> bool {
        let components = self.weak_components().into_iter().max().map_or(0, |c| c + 1);
        kosaraju_scc(&self.digraph()).len() == components
    }

    pub fn structure(&self) -> Result<NetworkStructure> {
        let ns = self.species.len();
        let m = self.vertices.len();
        let ne = self.edges.len();
        let y = RationalMatrix::from_rows(
            (0..ns).map(|s| self.vertices.iter().map(|v| v.stoich[s].clone()).collect()).collect(),
        )?;
        let yt = RationalMatrix::from_rows(
            (0..ns).map(|s| self.vertices.iter().map(|v| v.kinetic[s].clone()).collect()).collect(),
        )?;
        let mut incidence = vec![vec![Rational::zero(); ne]; m];
        for (j, e) in self.edges.iter().enumerate() {
            incidence[e.from][j] -= Rational::from_integer(1.into());
            incidence[e.to][j] += Rational::from_integer(1.into());
        }
        let incidence = RationalMatrix::from_rows(incidence)?;
        let laplacian = if self.edges.iter().all(|e| e.k.is_some()) {
            let mut a = vec![vec![Rational::zero(); m]; m];
            for e in &self.edges {
                let k = e.k.clone().expect("checked");
                a[e.to][e.from] += &k;
                a[e.from][e.from] -= &k;
            }
            Some(RationalMatrix::from_rows(a)?)
        } else {
            None
        };
        let g = self.digraph();
        let sccs = kosaraju_scc(&g);
        let weak = self.weak_components();
        let linkage_classes = weak.iter().max().map_or(0, |c| c + 1);
        let strongly_connected: Vec<bool> = (0..linkage_classes)
            .map(|c| {
                let members: Vec<usize> = (0..m).filter(|&v| weak[v] == c).collect();
                sccs.iter().any(|scc| scc.len() == members.len() && scc.iter().all(|n| weak[n.index()] == c))
            })
            .collect();
        let span = |mat: &RationalMatrix| {
            let prod = mat.mul(&incidence).expect("conformable");
            let cols: Vec<Vec<Rational>> = (0..prod.cols()).map(|j| prod.column(j)).collect();
            SubspaceBasis::spanned_by(ns, &cols)
        };
        let stoichiometric = span(&y);
        let kinetic = span(&yt);
        let deficiency = (m - linkage_classes) as i64 - stoichiometric.dim() as i64;
        let kinetic_deficiency = (m - linkage_classes) as i64 - kinetic.dim() as i64;
        // dim(ker Y ∩ im I_E) = dim ker Y + dim im I_E − dim(ker Y + im I_E)
        let ker_y = kernel_basis(&y);
        let im_ie = SubspaceBasis::spanned_by(m, &(0..ne).map(|j| incidence.column(j)).collect::<Vec<_>>());
        let mut joint = ker_y.vectors().to_vec();
        joint.extend(im_ie.vectors().iter().cloned());
        let sum_dim = SubspaceBasis::spanned_by(m, &joint).dim();
        let deficiency_by_intersection = (ker_y.dim() + im_ie.dim() - sum_dim) as i64;
        if deficiency != deficiency_by_intersection {
            return Err(Error::Internal(format!(
                "deficiency {deficiency} disagrees with dim(ker Y ∩ im I_E) = {deficiency_by_intersection}"
            )));
        }
        Ok(NetworkStructure {
            y,
            kinetic_y: yt,
            incidence,
            laplacian,
            linkage_classes,
            strongly_connected,
            weakly_reversible: sccs.len() == linkage_classes,
            stoichiometric,
            kinetic,
            deficiency,
            kinetic_deficiency,
            deficiency_by_intersection,
        })
    }

    /// Component label of every vertex, numbered by first appearance.
    fn weak_components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.from, e.to);
        }
        let mut label = HashMap::new();
        uf.into_labeling()
            .into_iter()
            .map(|r| {
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkStructure {
    pub y: RationalMatrix,
    pub kinetic_y: RationalMatrix,
    pub incidence: RationalMatrix,
    pub laplacian: Option<RationalMatrix>,
    pub linkage_classes: usize,
    pub strongly_connected: Vec<bool>,
    pub weakly_reversible: bool,
    pub stoichiometric: SubspaceBasis,
    pub kinetic: SubspaceBasis,
    pub deficiency: i64,
    pub kinetic_deficiency: i64,
    pub deficiency_by_intersection: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriterionStatus {
    Holds,
    Fails,
    CriteriaNotApplicable,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionVerdict {
    pub status: CriterionStatus,
    pub tag: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reason: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NetworkReport {
    pub tool: ToolInfo,
    pub species: Vec<String>,
    pub vertices: usize,
    pub edges: usize,
    pub linkage_classes: usize,
    pub weakly_reversible: bool,
    pub mass_action: bool,
    pub stoichiometric_dim: usize,
    pub kinetic_dim: usize,
    pub deficiency: i64,
    pub kinetic_deficiency: i64,
    pub deficiency_by_intersection: i64,
    pub complex_matrix: Value,
    pub kinetic_complex_matrix: Value,
    pub incidence_matrix: Value,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub laplacian: Option<Value>,
    /// Existence of a complex-balanced equilibrium for all rate constants.
    pub existence: CriterionVerdict,
    /// Unique complex-balanced equilibrium in every class for all rate constants.
    pub unique_equilibrium: CriterionVerdict,
    /// The same under small perturbations of the kinetic orders.
    pub robust_kinetic_orders: CriterionVerdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub analysis: Option<Report>,
}

impl NetworkReport {
    pub fn to_canonical_json(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn is_inconclusive(&self) -> bool {
        [&self.unique_equilibrium, &self.robust_kinetic_orders]
            .iter()
            .any(|v| v.status == CriterionStatus::Inconclusive)
    }
}

fn criterion(status: CriterionStatus, tag: &str, reason: Option<String>) -> CriterionVerdict {
    CriterionVerdict { status, tag: tag.into(), reason }
}

/// Applies the deficiency-zero criteria, delegating bijectivity to the analyzer.
pub fn analyze_network(net: &GeneralizedNetwork, caps: Caps) -> Result<NetworkReport> {
    let st = net.structure()?;
    let ns = net.species.len();
    if net.is_mass_action() && !st.stoichiometric.same_span(&st.kinetic) {
        return Err(Error::Internal("mass-action network with different kinetic subspace".into()));
    }
    let existence_holds = st.kinetic_deficiency == 0 && st.weakly_reversible;
    let existence = criterion(
        if existence_holds { CriterionStatus::Holds } else { CriterionStatus::Fails },
        "thm-dt1",
        (!existence_holds).then(|| "requires kinetic deficiency 0 and weak reversibility".to_string()),
    );
    let mut structural = Vec::new();
    if st.deficiency != 0 {
        structural.push(format!("deficiency is {}", st.deficiency));
    }
    if st.kinetic_deficiency != 0 {
        structural.push(format!("kinetic deficiency is {}", st.kinetic_deficiency));
    }
    if !st.weakly_reversible {
        structural.push("the network is not weakly reversible".to_string());
    }
    let (s_dim, k_dim) = (st.stoichiometric.dim(), st.kinetic.dim());
    let mut analysis = None;
    let (unique, robust) = if s_dim != k_dim {
        let reason = format!(
            "dim S = {s_dim} differs from dim S̃ = {k_dim} (kinetic deficiency {})",
            st.kinetic_deficiency
        );
        let v = |tag| criterion(CriterionStatus::CriteriaNotApplicable, tag, Some(reason.clone()));
        (v("thm-generalized"), v("thm-generalized-robust"))
    } else if !structural.is_empty() {
        let reason = structural.join("; ");
        let v = |tag| criterion(CriterionStatus::Fails, tag, Some(reason.clone()));
        (v("thm-generalized"), v("thm-generalized-robust"))
    } else if s_dim == ns {
        // S = S̃ = ℝⁿ: the map acts on a zero-dimensional space
        let reason = Some("S = S̃ is the whole species space; the conditions hold trivially".to_string());
        (
            criterion(CriterionStatus::Holds, "thm-generalized", reason.clone()),
            criterion(CriterionStatus::Holds, "thm-generalized-robust", reason),
        )
    } else {
        let w = matrix_with_kernel(&st.stoichiometric)?;
        let wt = matrix_with_kernel(&st.kinetic)?;
        let spec = ExponentialMapSpec::new(w, wt)?;
        let a = analyze(&spec, caps, RobustSelection::none())?;
        let unique = match a.classification {
            Classification::BijectiveForAllC => criterion(CriterionStatus::Holds, "thm-generalized", None),
            Classification::Inconclusive => criterion(
                CriterionStatus::Inconclusive,
                "thm-generalized",
                Some("bijectivity analysis hit a cap".into()),
            ),
            other => criterion(
                CriterionStatus::Fails,
                "thm-generalized",
                Some(format!("the exponential map is {}", other.as_str())),
            ),
        };
        let robust = match a.status("cc") {
            Status::Holds => criterion(CriterionStatus::Holds, "thm-generalized-robust", None),
            Status::Fails => criterion(
                CriterionStatus::Fails,
                "thm-generalized-robust",
                Some("sign(S) is not contained in the closure of sign(S̃)".into()),
            ),
            _ => criterion(
                CriterionStatus::Inconclusive,
                "thm-generalized-robust",
                Some("closure condition hit a cap".into()),
            ),
        };
        analysis = Some(Report::new(&spec, &a));
        (unique, robust)
    };
    Ok(NetworkReport {
        tool: ToolInfo::default(),
        species: net.species.clone(),
        vertices: net.vertices.len(),
        edges: net.edges.len(),
        linkage_classes: st.linkage_classes,
        weakly_reversible: st.weakly_reversible,
        mass_action: net.is_mass_action(),
        stoichiometric_dim: s_dim,
        kinetic_dim: k_dim,
        deficiency: st.deficiency,
        kinetic_deficiency: st.kinetic_deficiency,
        deficiency_by_intersection: st.deficiency_by_intersection,
        complex_matrix: matrix_to_value(&st.y),
        kinetic_complex_matrix: matrix_to_value(&st.kinetic_y),
        incidence_matrix: matrix_to_value(&st.incidence),
        laplacian: st.laplacian.as_ref().map(matrix_to_value),
        existence,
        unique_equilibrium: unique,
        robust_kinetic_orders: robust,
        analysis,
    })
}
