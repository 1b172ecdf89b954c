//! Reducibility of `I(nu)`, the weighted K-type transition graph and the
//! composition series, read off either from the threshold formulas or from the
//! strongly connected components of the graph.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::{Signed, ToPrimitive, Zero};
use petgraph::algo::{condensation, toposort};
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::coeffs::{coeff_triple, CoeffTriple};
use crate::error::{Error, Result};
use crate::ktype::{enumerate_box, m_minus, m_plus, KType, LatticeBox};
use crate::root_data::CaseSpec;
use crate::scalar::{format_ratio, format_short, int, is_nonneg_integer, parse_rational, rat, serde_ratio, Rational};

/// The induction parameter `nu`. Serialized as `"num/den"`, `"i"` or `"complex"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpectralParam {
    RealRational(Rational),
    /// `nu` on the imaginary axis; the structure does not depend on which point.
    PureImaginary,
    /// `Re nu != 0` and `Im nu != 0`.
    GenericNonReal,
}

impl SpectralParam {
    pub fn real(q: Rational) -> Self {
        SpectralParam::RealRational(q)
    }

    pub fn as_real(&self) -> Result<&Rational> {
        match self {
            SpectralParam::RealRational(q) => Ok(q),
            _ => Err(Error::NotRealRational),
        }
    }
}

impl fmt::Display for SpectralParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralParam::RealRational(q) => write!(f, "{}", format_short(q)),
            SpectralParam::PureImaginary => write!(f, "i"),
            SpectralParam::GenericNonReal => write!(f, "complex"),
        }
    }
}

impl Serialize for SpectralParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SpectralParam::RealRational(q) => s.serialize_str(&format_ratio(q)),
            other => s.collect_str(other),
        }
    }
}

impl<'de> Deserialize<'de> for SpectralParam {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for SpectralParam {
    type Err = Error;

    /// A rational `p/q`, `i` for the imaginary axis or `complex`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "i" | "ir" | "imag" => Ok(SpectralParam::PureImaginary),
            "complex" | "z" => Ok(SpectralParam::GenericNonReal),
            _ => parse_rational(s).map(SpectralParam::RealRational),
        }
    }
}

/// Which threshold family a reducibility point belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainKind {
    /// `L_j(nu) = { m_j <= bound }`, at negative `nu`.
    Lower,
    /// `R_j(nu) = { m_j >= bound }`, at positive `nu`.
    Upper,
}

/// A witness `(j, offset)`: the threshold for index `j` hits the integer `offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub j: usize,
    pub offset: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducibilityReport {
    pub nu: SpectralParam,
    pub reducible: bool,
    pub kind: Option<ChainKind>,
    pub witnesses: Vec<Witness>,
}

/// `-nu - p/2 + (j-1) d/2`, the lower threshold for index `j`.
fn lower_offset(case: &CaseSpec, nu: &Rational, j: usize) -> Rational {
    -nu.clone() - case.p.clone() / int(2) + rat((j as i64 - 1) * case.d as i64, 2)
}

/// `nu - p/2 + (j-1) d/2`, the upper threshold for index `j`.
fn upper_offset(case: &CaseSpec, nu: &Rational, j: usize) -> Rational {
    nu.clone() - case.p.clone() / int(2) + rat((j as i64 - 1) * case.d as i64, 2)
}

fn witnesses_with(case: &CaseSpec, nu: &Rational, f: fn(&CaseSpec, &Rational, usize) -> Rational) -> Vec<Witness> {
    (1..=case.rank())
        .filter_map(|j| {
            let off = f(case, nu, j);
            is_nonneg_integer(&off).then(|| Witness { j, offset: off.to_integer().to_u64().expect("small offset") })
        })
        .collect()
}

/// Reducible iff some threshold `-nu - p/2 + (j-1)d/2` or
/// `nu - p/2 + (j-1)d/2` is a non-negative integer.
pub fn reducibility(case: &CaseSpec, nu: &SpectralParam) -> ReducibilityReport {
    let SpectralParam::RealRational(q) = nu else {
        return ReducibilityReport { nu: nu.clone(), reducible: false, kind: None, witnesses: vec![] };
    };
    let lower = witnesses_with(case, q, lower_offset);
    let upper = witnesses_with(case, q, upper_offset);
    assert!(
        lower.is_empty() || upper.is_empty(),
        "both threshold families witness reducibility of {case} at nu = {}",
        format_short(q)
    );
    let (kind, witnesses) = match (lower.is_empty(), upper.is_empty()) {
        (false, _) => (Some(ChainKind::Lower), lower),
        (_, false) => (Some(ChainKind::Upper), upper),
        _ => (None, vec![]),
    };
    ReducibilityReport { nu: nu.clone(), reducible: kind.is_some(), kind, witnesses }
}

/// All real reducibility points with `|nu| <= radius`, ascending.
pub fn reducibility_points(case: &CaseSpec, radius: &Rational) -> Vec<Rational> {
    let mut out = BTreeSet::new();
    for j in 1..=case.rank() {
        // lower family: nu = -p/2 + (j-1)d/2 - off <= 0, and mirrored for the upper one
        let start = case.p.clone() / int(2) - rat((j as i64 - 1) * case.d as i64, 2);
        let mut v = start;
        while &v <= radius {
            out.insert(-v.clone());
            out.insert(v.clone());
            v += int(1);
        }
    }
    out.into_iter().collect()
}

/// One member `L_j` or `R_j` of the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ChainTerm {
    pub critical_index: usize,
    /// `m_j <= bound` for [`ChainKind::Lower`], `m_j >= bound` for [`ChainKind::Upper`].
    pub bound: u64,
}

/// The chain `0 = U_0 ⊂ U_1 ⊂ ... ⊂ U_t ⊂ I(nu)` of proper members,
/// listed bottom-up. An empty chain means irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionSeries {
    #[serde(with = "serde_ratio")]
    pub nu: Rational,
    pub kind: Option<ChainKind>,
    pub terms: Vec<ChainTerm>,
}

impl CompositionSeries {
    pub fn is_irreducible(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of subquotients.
    pub fn length(&self) -> usize {
        self.terms.len() + 1
    }

    /// Whether `m` lies in the `i`-th member (0-based, bottom-up).
    pub fn member_contains(&self, i: usize, m: &KType) -> bool {
        let t = &self.terms[i];
        let mj = m.get(t.critical_index) as u64;
        match self.kind {
            Some(ChainKind::Lower) => mj <= t.bound,
            Some(ChainKind::Upper) => mj >= t.bound,
            None => unreachable!("irreducible series has no members"),
        }
    }

    /// Index of the subquotient containing `V^m`, 0 for the bottom and
    /// `terms.len()` for the top quotient.
    pub fn layer_of(&self, m: &KType) -> usize {
        (0..self.terms.len())
            .find(|&i| self.member_contains(i, m))
            .unwrap_or(self.terms.len())
    }

    /// `L_j(nu)` / `R_j(nu)` names of the members, bottom-up.
    pub fn member_names(&self) -> Vec<String> {
        let nu = format_short(&self.nu);
        self.terms
            .iter()
            .map(|t| match self.kind {
                Some(ChainKind::Lower) => format!("L{}({nu})", t.critical_index),
                _ => format!("R{}({nu})", t.critical_index),
            })
            .collect()
    }

    /// Human description of the `i`-th subquotient as a predicate on `m`.
    pub fn describe_layer(&self, i: usize) -> String {
        let mut parts = Vec::new();
        let rel = |t: &ChainTerm, inside: bool| match (self.kind, inside) {
            (Some(ChainKind::Lower), true) => format!("m{} <= {}", t.critical_index, t.bound),
            (Some(ChainKind::Lower), false) => format!("m{} > {}", t.critical_index, t.bound),
            (_, true) => format!("m{} >= {}", t.critical_index, t.bound),
            (_, false) => format!("m{} < {}", t.critical_index, t.bound),
        };
        if i < self.terms.len() {
            parts.push(rel(&self.terms[i], true));
        }
        if i > 0 {
            parts.push(rel(&self.terms[i - 1], false));
        }
        if parts.is_empty() {
            "all m".to_string()
        } else {
            parts.join(", ")
        }
    }

    /// `0 ⊂ L2(-3/2) ⊂ I(nu)`.
    pub fn chain_string(&self) -> String {
        let mut s = "0".to_string();
        for name in self.member_names() {
            s.push_str(" ⊂ ");
            s.push_str(&name);
        }
        s.push_str(" ⊂ I(nu)");
        s
    }
}

/// The chain read off from the thresholds.
pub fn composition_series_closed(case: &CaseSpec, nu: &SpectralParam) -> Result<CompositionSeries> {
    let report = reducibility(case, nu);
    let Some(kind) = report.kind else {
        return Err(Error::Irreducible(nu.to_string()));
    };
    let q = nu.as_real()?.clone();
    let mut terms: Vec<ChainTerm> = report
        .witnesses
        .iter()
        .map(|w| ChainTerm {
            critical_index: w.j,
            bound: match kind {
                ChainKind::Lower => w.offset,
                ChainKind::Upper => w.offset + 1,
            },
        })
        .collect();
    if kind == ChainKind::Upper {
        terms.reverse();
    }
    Ok(CompositionSeries { nu: q, kind: Some(kind), terms })
}

/// `floor(|nu| + p/2) + 3`, comfortably past the sufficiency bound.
pub fn default_bound(case: &CaseSpec, nu: &Rational) -> u32 {
    let need = nu.abs() + case.p.clone() / int(2);
    need.floor().to_integer().to_u32().expect("moderate nu") + 3
}

fn check_bound(case: &CaseSpec, nu: &Rational, bound: u32) -> Result<()> {
    let need = nu.abs() + case.p.clone() / int(2);
    if int(bound as i64) >= need {
        Ok(())
    } else {
        Err(Error::InsufficientBox { bound, needed: format_short(&need) })
    }
}

/// `A`, `B`, `C` for every K-type of a box; independent of `nu`, so one table
/// serves every graph over the same or a smaller box.
#[derive(Clone, Debug)]
pub struct CoeffTable {
    pub lattice: LatticeBox,
    triples: Vec<CoeffTriple<Rational>>,
}

impl CoeffTable {
    pub fn new(case: &CaseSpec, bound: u32) -> Result<Self> {
        let lattice = enumerate_box(case, bound);
        let members = lattice.members();
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(16);
        let chunk = members.len().div_ceil(workers).max(1);
        let triples = std::thread::scope(|s| {
            let handles: Vec<_> = members
                .chunks(chunk)
                .map(|part| s.spawn(move || part.iter().map(|m| coeff_triple::<Rational>(case, m)).collect::<Result<Vec<_>>>()))
                .collect();
            let mut out = Vec::with_capacity(members.len());
            for h in handles {
                out.extend(h.join().expect("coefficient worker panicked")?);
            }
            Ok::<_, Error>(out)
        })?;
        Ok(CoeffTable { lattice, triples })
    }

    pub fn get(&self, m: &KType) -> Option<&CoeffTriple<Rational>> {
        self.lattice.index_of(m).map(|i| &self.triples[i])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Up,
    Down,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub j: usize,
    pub kind: EdgeKind,
    pub weight: Rational,
}

/// Three-term action of the spectrum generating relation on a box of K-types.
#[derive(Clone, Debug)]
pub struct TransitionGraph {
    pub lattice: LatticeBox,
    pub nu: Rational,
    pub edges: Vec<Edge>,
    pub loops: Vec<Rational>,
}

/// Builds the graph on `{ m_1 <= bound }` with weights
/// `(2n/p) A(m,j) (nu + m+(j))` up, `(2n/p) B(m,j) (nu - m-(j))` down and
/// `(2n/p) C(m) nu` on the diagonal.
pub fn build_graph(case: &CaseSpec, nu: &SpectralParam, bound: u32) -> Result<TransitionGraph> {
    let q = nu.as_real()?;
    check_bound(case, q, bound)?;
    let table = CoeffTable::new(case, bound)?;
    build_graph_with(&table, nu, bound)
}

/// As [`build_graph`], reusing precomputed coefficients.
pub fn build_graph_with(table: &CoeffTable, nu: &SpectralParam, bound: u32) -> Result<TransitionGraph> {
    let case = &table.lattice.case;
    let q = nu.as_real()?.clone();
    check_bound(case, &q, bound)?;
    if bound > table.lattice.bound {
        return Err(Error::Internal(format!(
            "coefficient table covers m1 <= {} but the graph needs {bound}",
            table.lattice.bound
        )));
    }
    let lattice = enumerate_box(case, bound);
    let scale = case.two_n_over_p();
    let mut edges = Vec::new();
    let mut loops = Vec::with_capacity(lattice.len());
    for (i, m) in lattice.members().iter().enumerate() {
        let t = table.get(m).expect("sub-box of the table");
        loops.push(scale.clone() * t.c.clone() * q.clone());
        for j in 1..=case.rank() {
            if let Some(up) = m.raised(j) {
                if let Some(to) = lattice.index_of(&up) {
                    let w = scale.clone() * t.a[j - 1].clone() * (q.clone() + m_plus(case, m, j)?);
                    edges.push(Edge { from: i, to, j, kind: EdgeKind::Up, weight: w });
                }
            }
            if let Some(down) = m.lowered(j) {
                let to = lattice.index_of(&down).expect("box is closed under lowering");
                let w = scale.clone() * t.b[j - 1].clone() * (q.clone() - m_minus(case, m, j)?);
                edges.push(Edge { from: i, to, j, kind: EdgeKind::Down, weight: w });
            }
        }
    }
    Ok(TransitionGraph { lattice, nu: q, edges, loops })
}

impl TransitionGraph {
    /// The subgraph of nonzero edges.
    pub fn support(&self) -> DiGraph<usize, ()> {
        let mut g = DiGraph::with_capacity(self.lattice.len(), self.edges.len());
        for i in 0..self.lattice.len() {
            g.add_node(i);
        }
        for e in self.edges.iter().filter(|e| !e.weight.is_zero()) {
            g.add_edge(NodeIndex::new(e.from), NodeIndex::new(e.to), ());
        }
        g
    }

    /// Strongly connected components ordered bottom-up (sinks first).
    /// Fails unless reachability totally orders them.
    pub fn layers(&self) -> Result<Vec<Vec<KType>>> {
        let cond = condensation(self.support(), true);
        let order = toposort(&cond, None).map_err(|_| Error::Internal("condensation has a cycle".into()))?;
        for w in order.windows(2) {
            if cond.find_edge(w[0], w[1]).is_none() {
                return Err(Error::NotAChain(format!(
                    "{} components, no edge between consecutive ones in topological order",
                    order.len()
                )));
            }
        }
        let members = self.lattice.members();
        Ok(order
            .iter()
            .rev()
            .map(|&c| {
                let mut comp: Vec<KType> = cond[c].iter().map(|&i| members[i].clone()).collect();
                comp.sort();
                comp
            })
            .collect())
    }

    pub fn is_strongly_connected(&self) -> bool {
        petgraph::algo::kosaraju_scc(&self.support()).len() == 1
    }

    /// Whether no nonzero edge leaves `set`.
    pub fn is_closed(&self, set: &dyn Fn(&KType) -> bool) -> bool {
        let members = self.lattice.members();
        self.edges
            .iter()
            .filter(|e| !e.weight.is_zero())
            .all(|e| !set(&members[e.from]) || set(&members[e.to]))
    }

    /// Graphviz rendering: vanished edges dashed red, nodes colored by
    /// subquotient when a series is given.
    pub fn to_dot(&self, series: Option<&CompositionSeries>) -> String {
        const PALETTE: [&str; 8] = ["lightblue", "palegreen", "khaki", "lightpink", "plum", "lightsalmon", "lightgray", "aquamarine"];
        let members = self.lattice.members();
        let mut s = String::new();
        let _ = writeln!(s, "digraph transitions {{");
        let _ = writeln!(s, "  label=\"{} nu={}\";", self.lattice.case, format_short(&self.nu));
        let _ = writeln!(s, "  node [shape=box, style=filled];");
        for (i, m) in members.iter().enumerate() {
            let color = match series {
                Some(cs) if !cs.is_irreducible() => PALETTE[cs.layer_of(m) % PALETTE.len()],
                _ => "white",
            };
            let _ = writeln!(s, "  n{i} [label=\"{m}\", fillcolor={color}];");
        }
        for e in &self.edges {
            let attrs = if e.weight.is_zero() {
                "color=red, style=dashed".to_string()
            } else {
                format!("label=\"{}\"", format_short(&e.weight))
            };
            let _ = writeln!(s, "  n{} -> n{} [{attrs}];", e.from, e.to);
        }
        s.push_str("}\n");
        s
    }
}

/// Reads the chain descriptors off the graph's condensation.
pub fn composition_series_graph(case: &CaseSpec, nu: &SpectralParam, bound: u32) -> Result<CompositionSeries> {
    let graph = build_graph(case, nu, bound)?;
    series_from_graph(&graph)
}

/// As [`composition_series_graph`] on an already built graph.
pub fn series_from_graph(graph: &TransitionGraph) -> Result<CompositionSeries> {
    let layers = graph.layers()?;
    let nu = graph.nu.clone();
    if layers.len() == 1 {
        return Ok(CompositionSeries { nu, kind: None, terms: vec![] });
    }
    let rank = graph.lattice.case.rank();
    let kind = if layers[0].iter().any(KType::is_zero) { ChainKind::Lower } else { ChainKind::Upper };
    let all = graph.lattice.members();
    let mut member: BTreeSet<&KType> = BTreeSet::new();
    let mut terms = Vec::new();
    for layer in &layers[..layers.len() - 1] {
        member.extend(layer.iter());
        let term = (1..=rank).find_map(|j| {
            let vals = member.iter().map(|m| m.get(j) as u64);
            let bound = match kind {
                ChainKind::Lower => vals.max()?,
                ChainKind::Upper => vals.min()?,
            };
            let pred = |m: &KType| match kind {
                ChainKind::Lower => (m.get(j) as u64) <= bound,
                ChainKind::Upper => (m.get(j) as u64) >= bound,
            };
            all.iter()
                .all(|m| pred(m) == member.contains(m))
                .then_some(ChainTerm { critical_index: j, bound })
        });
        match term {
            Some(t) => terms.push(t),
            None => {
                return Err(Error::NotAChain(format!(
                    "a union of {} bottom components is not of threshold form",
                    terms.len() + 1
                )))
            }
        }
    }
    Ok(CompositionSeries { nu, kind: Some(kind), terms })
}

/// Subquotient index of every box member, as found by the graph.
pub fn graph_layer_map(graph: &TransitionGraph) -> Result<HashMap<KType, usize>> {
    Ok(graph
        .layers()?
        .into_iter()
        .enumerate()
        .flat_map(|(i, layer)| layer.into_iter().map(move |m| (m, i)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{make_case, Family};

    fn km(v: &[u32]) -> KType {
        KType::new(v.to_vec()).unwrap()
    }

    fn nu(s: &str) -> SpectralParam {
        s.parse().unwrap()
    }

    #[test]
    fn reducibility_examples() {
        let e66 = make_case(Family::E6Split).unwrap();
        let r = reducibility(&e66, &nu("-3/2"));
        assert!(r.reducible);
        assert_eq!(r.witnesses, vec![Witness { j: 2, offset: 0 }]);
        assert!(!reducibility(&e66, &nu("-2")).reducible);
        assert!(!reducibility(&e66, &nu("i")).reducible);
        assert!(!reducibility(&e66, &nu("complex")).reducible);
        let r = reducibility(&e66, &nu("-3"));
        assert_eq!(r.witnesses, vec![Witness { j: 1, offset: 0 }]);
    }

    #[test]
    fn points_are_exactly_the_reducible_values() {
        let e66 = make_case(Family::E6Split).unwrap();
        let pts = reducibility_points(&e66, &int(6));
        let strs: Vec<String> = pts.iter().map(format_short).collect();
        assert_eq!(
            strs,
            ["-6", "-11/2", "-5", "-9/2", "-4", "-7/2", "-3", "-5/2", "-3/2", "3/2", "5/2", "3", "7/2", "4", "9/2", "5", "11/2", "6"]
        );
        for k in -24..=24 {
            let q = rat(k, 4);
            let hit = pts.contains(&q);
            assert_eq!(hit, reducibility(&e66, &SpectralParam::real(q.clone())).reducible, "{q}");
        }
    }

    #[test]
    fn closed_chain_examples() {
        let e66 = make_case(Family::E6Split).unwrap();
        let cs = composition_series_closed(&e66, &nu("-3/2")).unwrap();
        assert_eq!(cs.terms, vec![ChainTerm { critical_index: 2, bound: 0 }]);
        assert_eq!(cs.chain_string(), "0 ⊂ L2(-3/2) ⊂ I(nu)");
        assert_eq!(cs.layer_of(&km(&[5, 0])), 0);
        assert_eq!(cs.layer_of(&km(&[5, 1])), 1);

        let cs = composition_series_closed(&e66, &nu("-3")).unwrap();
        assert_eq!(cs.terms, vec![ChainTerm { critical_index: 1, bound: 0 }]);

        let so2 = make_case(Family::SoSplit { r: 2 }).unwrap();
        let cs = composition_series_closed(&so2, &nu("2")).unwrap();
        assert_eq!(cs.kind, Some(ChainKind::Upper));
        // R2(2) = {m2 >= 2} ⊂ R1(2) = {m1 >= 1}
        assert_eq!(
            cs.terms,
            vec![ChainTerm { critical_index: 2, bound: 2 }, ChainTerm { critical_index: 1, bound: 1 }]
        );

        assert!(matches!(composition_series_closed(&e66, &nu("-2")), Err(Error::Irreducible(_))));
        assert!(matches!(composition_series_closed(&e66, &nu("i")), Err(Error::Irreducible(_))));
    }

    #[test]
    fn graph_examples() {
        let e66 = make_case(Family::E6Split).unwrap();
        let g = build_graph(&e66, &nu("-3"), 6).unwrap();
        for e in &g.edges {
            let from = &g.lattice.members()[e.from];
            if e.kind == EdgeKind::Up && e.j == 1 && from.get(1) == 0 {
                assert!(e.weight.is_zero());
            }
        }
        let g = build_graph(&e66, &nu("0"), 6).unwrap();
        assert!(g.edges.iter().all(|e| !e.weight.is_zero()));
        assert!(g.is_strongly_connected());
        assert!(g.loops.iter().all(Zero::is_zero));
        assert!(build_graph(&e66, &nu("-3"), 6).is_ok());
        assert!(matches!(build_graph(&e66, &nu("-3"), 5), Err(Error::InsufficientBox { .. })));
        assert!(matches!(build_graph(&e66, &nu("i"), 6), Err(Error::NotRealRational)));
    }

    #[test]
    fn graph_series_examples() {
        let e66 = make_case(Family::E6Split).unwrap();
        let g = build_graph(&e66, &nu("-3/2"), 6).unwrap();
        let layers = g.layers().unwrap();
        assert_eq!(layers.len(), 2);
        assert!(layers[0].iter().all(|m| m.get(2) == 0));
        assert_eq!(layers[0].len(), 7);
        assert_eq!(series_from_graph(&g).unwrap(), composition_series_closed(&e66, &nu("-3/2")).unwrap());

        let so2 = make_case(Family::SoSplit { r: 2 }).unwrap();
        let cs = composition_series_graph(&so2, &nu("-1"), 6).unwrap();
        assert_eq!(cs.terms, vec![ChainTerm { critical_index: 2, bound: 0 }]);
        assert!(composition_series_graph(&e66, &nu("0"), 6).unwrap().is_irreducible());
    }

    #[test]
    fn edge_vanishing_reciprocity() {
        let so3 = make_case(Family::SoComplex { r: 3 }).unwrap();
        for v in ["-5", "-4", "4", "7/2"] {
            let q = parse_rational(v).unwrap();
            let g = build_graph(&so3, &nu(v), default_bound(&so3, &q)).unwrap();
            let members = g.lattice.members();
            let mut up: HashMap<(usize, usize), bool> = HashMap::new();
            for e in &g.edges {
                let key = if e.kind == EdgeKind::Up { (e.from, e.to) } else { (e.to, e.from) };
                let zero = e.weight.is_zero();
                let lo = &members[key.0];
                let thr = m_plus(&so3, lo, e.j).unwrap();
                match e.kind {
                    EdgeKind::Up => assert_eq!(zero, q == -thr),
                    EdgeKind::Down => assert_eq!(zero, q == thr),
                }
                if let Some(other) = up.insert(key, zero) {
                    assert!(!(other && zero), "both directions vanish");
                }
            }
        }
    }

    #[test]
    fn upper_chain_is_closed() {
        let so3 = make_case(Family::SoSplit { r: 3 }).unwrap();
        let v = nu("3");
        let cs = composition_series_closed(&so3, &v).unwrap();
        assert_eq!(cs.length(), 4);
        let g = build_graph(&so3, &v, 9).unwrap();
        for i in 0..cs.terms.len() {
            assert!(g.is_closed(&|m| cs.member_contains(i, m)));
        }
        assert_eq!(series_from_graph(&g).unwrap(), cs);
        assert!(g.to_dot(Some(&cs)).contains("style=dashed"));
    }

    #[test]
    fn spectral_param_parsing() {
        assert_eq!(nu("-3/2"), SpectralParam::real(rat(-3, 2)));
        assert_eq!(nu("I"), SpectralParam::PureImaginary);
        assert!("1/0".parse::<SpectralParam>().is_err());
        let json = serde_json::to_string(&nu("-3/2")).unwrap();
        assert_eq!(json, r#""-3/2""#);
        assert_eq!(serde_json::to_string(&nu("i")).unwrap(), r#""i""#);
        assert_eq!(serde_json::from_str::<SpectralParam>(&json).unwrap(), nu("-3/2"));
    }
}
