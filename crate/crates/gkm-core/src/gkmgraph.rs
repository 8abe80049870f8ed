//! Labeled graphs of the classical families and of arbitrary integer root
//! lists: vertices are group elements, edges carry integer linear forms.

use std::collections::BTreeMap;
use std::fmt;



use crate::poly::Polynomial;
use crate::ring::{Coeff, Ring};
use crate::weyl::{
    enumerate, generate_from_reflections, GroupElement, OrthogonalMap, WeylFamily,
};
use crate::{Error, Limits, Result};

/// An integer linear form `c1 t1 + ... + cn tn`, used as an edge label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearForm(Vec<i64>);

impl LinearForm {
    pub fn new(coeffs: Vec<i64>) -> LinearForm {
        LinearForm(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> LinearForm {
        LinearForm(self.0.iter().map(|&c| -c).collect())
    }

    /// Sign-normalized copy: first nonzero coefficient positive.
    pub fn canonical(&self) -> LinearForm {
        match self.0.iter().find(|&&c| c != 0) {
            Some(&c) if c < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn is_parallel(&self, other: &LinearForm) -> bool {
        let n = self.0.len();
        assert_eq!(n, other.0.len());
        for i in 0..n {
            for j in i + 1..n {
                if self.0[i] as i128 * other.0[j] as i128
                    != self.0[j] as i128 * other.0[i] as i128
                {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_polynomial(&self, ring: Ring) -> Polynomial {
        let mut p = Polynomial::zero(ring, self.0.len());
        for (i, &c) in self.0.iter().enumerate() {
            if c != 0 {
                p = p.add(
                    &Polynomial::var(ring, self.0.len(), i)
                        .scale(&Coeff::from_i64(ring, c)),
                );
            }
        }
        p
    }

    /// Comma-separated integers, e.g. `1,-1,0`.
    pub fn parse(s: &str) -> Result<LinearForm> {
        let coeffs: Vec<i64> = s
            .split(',')
            .map(|tok| {
                tok.trim().parse::<i64>().map_err(|_| {
                    Error::Usage(format!("bad linear form coefficient {tok:?}"))
                })
            })
            .collect::<Result<_>>()?;
        if coeffs.is_empty() {
            return Err(Error::Usage("empty linear form".into()));
        }
        Ok(LinearForm(coeffs))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self.0)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LinearForm> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Usage("label must be an array".into()))?;
        let coeffs = arr
            .iter()
            .map(|x| {
                x.as_i64()
                    .ok_or_else(|| Error::Usage(format!("bad label entry {x}")))
            })
            .collect::<Result<Vec<i64>>>()?;
        Ok(LinearForm(coeffs))
    }
}

impl fmt::Display for LinearForm {
    /// Renders like `t1-t2`, `2t1`, `-t1+t2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                f.write_str(if c < 0 { "-" } else { "+" })?;
            }
            let a = c.unsigned_abs();
            if a != 1 {
                write!(f, "{a}")?;
            }
            write!(f, "t{}", i + 1)?;
        }
        Ok(())
    }
}

/// Graph families.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Family {
    A,
    B,
    C,
    D,
    Dminus,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::Dminus => "Dminus",
        }
    }

    pub fn parse(s: &str) -> Result<Family> {
        match s {
            "A" | "a" => Ok(Family::A),
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            "Dminus" | "dminus" | "D-" | "d-" => Ok(Family::Dminus),
            _ => Err(Error::Usage(format!(
                "unknown family {s:?}; expected A, B, C, D or Dminus"
            ))),
        }
    }

    pub fn weyl_family(self) -> WeylFamily {
        match self {
            Family::A => WeylFamily::A,
            Family::B | Family::C => WeylFamily::BC,
            Family::D => WeylFamily::Dplus,
            Family::Dminus => WeylFamily::Dminus,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A graph vertex: a (signed) permutation, or a general orthogonal map for
/// graphs built from exotic root lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Vertex {
    Perm(GroupElement),
    Map(OrthogonalMap),
}

impl Vertex {
    pub fn as_perm(&self) -> Option<&GroupElement> {
        match self {
            Vertex::Perm(w) => Some(w),
            Vertex::Map(_) => None,
        }
    }
}

/// An undirected labeled edge between vertex indices `a < b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label: LinearForm,
}

/// A finite graph with integer-linear-form edge labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledGraph {
    family: Option<(Family, usize)>,
    n_vars: usize,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    names: Vec<String>,
    index: BTreeMap<String, usize>,
}

impl LabeledGraph {
    fn assemble(
        family: Option<(Family, usize)>,
        n_vars: usize,
        vertices: Vec<Vertex>,
        mut edges: Vec<Edge>,
    ) -> Result<LabeledGraph> {
        let compact = matches!(family, Some((Family::A, _)));
        let names: Vec<String> = vertices
            .iter()
            .map(|v| match v {
                Vertex::Perm(w) => {
                    if compact {
                        w.one_line_compact()
                    } else {
                        w.one_line()
                    }
                }
                Vertex::Map(m) => {
                    let rows: Vec<String> = m
                        .rows()
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|x| x.to_string())
                                .collect::<Vec<_>>()
                                .join(",")
                        })
                        .collect();
                    rows.join(";")
                }
            })
            .collect();
        let mut index = BTreeMap::new();
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::Usage(format!("duplicate vertex {name:?}")));
            }
        }
        edges.sort_by(|x, y| (x.a, x.b).cmp(&(y.a, y.b)));
        for e in &edges {
            if e.a >= e.b || e.b >= vertices.len() {
                return Err(Error::Usage(format!(
                    "bad edge endpoints ({}, {})",
                    e.a, e.b
                )));
            }
            if e.label.is_zero() {
                return Err(Error::Usage("zero edge label".into()));
            }
            if e.label.n_vars() != n_vars {
                return Err(Error::Usage("edge label arity mismatch".into()));
            }
        }
        for w in edges.windows(2) {
            if (w[0].a, w[0].b) == (w[1].a, w[1].b) {
                return Err(Error::Usage(format!(
                    "duplicate edge ({}, {})",
                    w[0].a, w[0].b
                )));
            }
        }
        Ok(LabeledGraph { family, n_vars, vertices, edges, names, index })
    }

    pub fn family(&self) -> Option<(Family, usize)> {
        self.family
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn find_vertex_by_name(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn vertex_perm(&self, i: usize) -> Result<&GroupElement> {
        self.vertices[i].as_perm().ok_or_else(|| {
            Error::Usage("vertex is not a signed permutation".into())
        })
    }

    pub fn find_perm(&self, w: &GroupElement) -> Option<usize> {
        // perm vertex lists are sorted, so binary search works
        self.vertices
            .binary_search_by(|v| match v {
                Vertex::Perm(u) => u.cmp(w),
                Vertex::Map(_) => std::cmp::Ordering::Less,
            })
            .ok()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.vertices.len()];
        for e in &self.edges {
            d[e.a] += 1;
            d[e.b] += 1;
        }
        d
    }

    /// Common vertex degree, when the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        match d.first() {
            None => None,
            Some(&k) => d.iter().all(|&x| x == k).then_some(k),
        }
    }

    /// Copy with the labels of selected edges negated (used to confirm that
    /// results do not depend on the sign choices).
    pub fn negate_labels<F>(&self, mut flip: F) -> LabeledGraph
    where
        F: FnMut(&Edge) -> bool,
    {
        let mut g = self.clone();
        for e in g.edges.iter_mut() {
            if flip(e) {
                e.label = e.label.neg();
            }
        }
        g
    }

    /// Same vertices, edges and labels; the family tag may differ.
    pub fn same_graph(&self, other: &LabeledGraph) -> bool {
        self.n_vars == other.n_vars
            && self.vertices == other.vertices
            && self.edges == other.edges
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for name in &self.names {
            out.push_str(&format!("  \"{name}\";\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
                self.names[e.a], self.names[e.b], e.label
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let vertices: Vec<serde_json::Value> = self
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| match v {
                Vertex::Perm(_) => serde_json::json!(self.names[i]),
                Vertex::Map(m) => {
                    let rows: Vec<Vec<String>> = m
                        .rows()
                        .iter()
                        .map(|r| r.iter().map(|x| x.to_string()).collect())
                        .collect();
                    serde_json::json!({ "matrix": rows })
                }
            })
            .collect();
        let edges: Vec<serde_json::Value> = self
            .edges
            .iter()
            .map(|e| {
                serde_json::json!({
                    "a": e.a,
                    "b": e.b,
                    "label": e.label.to_json(),
                })
            })
            .collect();
        let mut obj = serde_json::Map::new();
        if let Some((fam, n)) = self.family {
            obj.insert("family".into(), serde_json::json!(fam.name()));
            obj.insert("n".into(), serde_json::json!(n));
        }
        obj.insert("n_vars".into(), serde_json::json!(self.n_vars));
        obj.insert("vertices".into(), serde_json::json!(vertices));
        obj.insert("edges".into(), serde_json::json!(edges));
        serde_json::Value::Object(obj)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<LabeledGraph> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Usage("graph must be an object".into()))?;
        let family = match (obj.get("family"), obj.get("n")) {
            (Some(f), Some(n)) => {
                let fam = Family::parse(f.as_str().ok_or_else(|| {
                    Error::Usage("family must be a string".into())
                })?)?;
                let n = n
                    .as_u64()
                    .ok_or_else(|| Error::Usage("n must be an integer".into()))?
                    as usize;
                Some((fam, n))
            }
            _ => None,
        };
        let n_vars = obj
            .get("n_vars")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Usage("graph needs integer n_vars".into()))?
            as usize;
        let vs = obj
            .get("vertices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Usage("graph needs a vertices array".into()))?;
        let mut vertices = Vec::with_capacity(vs.len());
        for x in vs {
            match x {
                serde_json::Value::String(s) => {
                    vertices.push(Vertex::Perm(GroupElement::parse(s)?));
                }
                _ => {
                    return Err(Error::Usage(format!("bad vertex entry {x}")));
                }
            }
        }
        let es = obj
            .get("edges")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Usage("graph needs an edges array".into()))?;
        let mut edges = Vec::with_capacity(es.len());
        for x in es {
            let a = x
                .get("a")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Usage("edge needs index a".into()))?
                as usize;
            let b = x
                .get("b")
                .and_then(|v| v.as_u64())
                .ok_or_else(|| Error::Usage("edge needs index b".into()))?
                as usize;
            let label = LinearForm::from_json(
                x.get("label")
                    .ok_or_else(|| Error::Usage("edge needs a label".into()))?,
            )?;
            edges.push(Edge { a: a.min(b), b: a.max(b), label });
        }
        LabeledGraph::assemble(family, n_vars, vertices, edges)
    }
}

// label t_{w(i)} - t_{w'(i)} assembled from signed positions
fn pair_label(n: usize, plus: i32, minus: i32) -> LinearForm {
    let mut c = vec![0i64; n];
    let add = |c: &mut Vec<i64>, v: i32, mult: i64| {
        let pos = v.unsigned_abs() as usize - 1;
        c[pos] += if v > 0 { mult } else { -mult };
    };
    add(&mut c, plus, 1);
    add(&mut c, minus, -1);
    LinearForm(c)
}

struct EdgeAccum {
    edges: BTreeMap<(usize, usize), LinearForm>,
}

impl EdgeAccum {
    fn new() -> EdgeAccum {
        EdgeAccum { edges: BTreeMap::new() }
    }

    fn add(&mut self, a: usize, b: usize, label: LinearForm) -> Result<()> {
        let key = (a.min(b), a.max(b));
        let label = label.canonical();
        if let Some(old) = self.edges.get(&key) {
            if *old != label {
                return Err(Error::Internal(format!(
                    "edge ({}, {}) received labels {} and {}",
                    key.0, key.1, old, label
                )));
            }
            return Ok(());
        }
        self.edges.insert(key, label);
        Ok(())
    }

    fn into_edges(self) -> Vec<Edge> {
        self.edges
            .into_iter()
            .map(|((a, b), label)| Edge { a, b, label })
            .collect()
    }
}

fn build_signed_family(family: Family, n: usize, limits: &Limits) -> Result<LabeledGraph> {
    let elements = enumerate(family.weyl_family(), n, limits)?;
    let lookup: BTreeMap<&GroupElement, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, w)| (w, i))
        .collect();
    let mut acc = EdgeAccum::new();
    let type1 = |w: &GroupElement, i: usize, j: usize, neg: bool| {
        let sigma = if neg {
            GroupElement::neg_transposition(n, i, j)
        } else {
            GroupElement::transposition(n, i, j)
        };
        let w2 = w.compose(&sigma);
        let label = pair_label(
            n,
            w.image(i as i32),
            if neg { -w.image(j as i32) } else { w.image(j as i32) },
        );
        (w2, label)
    };
    for (a, w) in elements.iter().enumerate() {
        match family {
            Family::A => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        let (w2, label) = type1(w, i, j, false);
                        let b = lookup[&w2];
                        acc.add(a, b, label)?;
                    }
                }
            }
            Family::B | Family::C | Family::D | Family::Dminus => {
                for i in 1..=n {
                    for j in i + 1..=n {
                        for neg in [false, true] {
                            let (w2, label) = type1(w, i, j, neg);
                            let b = *lookup.get(&w2).ok_or_else(|| {
                                Error::Internal("neighbor outside vertex set".into())
                            })?;
                            acc.add(a, b, label)?;
                        }
                    }
                }
                if matches!(family, Family::B | Family::C) {
                    let scale = if family == Family::B { 1 } else { 2 };
                    for k in 1..=n {
                        let w2 = w.compose(&GroupElement::sign_flip(n, k));
                        let b = lookup[&w2];
                        let mut c = vec![0i64; n];
                        let v = w.image(k as i32);
                        c[v.unsigned_abs() as usize - 1] =
                            if v > 0 { scale } else { -scale };
                        acc.add(a, b, LinearForm(c))?;
                    }
                }
            }
        }
    }
    LabeledGraph::assemble(
        Some((family, n)),
        n,
        elements.into_iter().map(Vertex::Perm).collect(),
        acc.into_edges(),
    )
}

/// Permutations of `n` letters with transposition edges labeled
/// `t_{w(i)} - t_{w(j)}`.
pub fn build_a(n: usize, limits: &Limits) -> Result<LabeledGraph> {
    build_signed_family(Family::A, n, limits)
}

/// Signed permutations; sign-flip edges are labeled `t_{w(k)}`.
pub fn build_b(n: usize, limits: &Limits) -> Result<LabeledGraph> {
    build_signed_family(Family::B, n, limits)
}

/// Signed permutations; sign-flip edges are labeled `2 t_{w(k)}`.
pub fn build_c(n: usize, limits: &Limits) -> Result<LabeledGraph> {
    build_signed_family(Family::C, n, limits)
}

/// Even signed permutations, transposition-type edges only.
pub fn build_d(n: usize, limits: &Limits) -> Result<LabeledGraph> {
    if n < 2 {
        return Err(Error::Usage("the D family needs rank at least 2".into()));
    }
    build_signed_family(Family::D, n, limits)
}

/// Odd signed permutations, transposition-type edges only.
pub fn build_d_minus(n: usize, limits: &Limits) -> Result<LabeledGraph> {
    if n < 2 {
        return Err(Error::Usage("the D family needs rank at least 2".into()));
    }
    build_signed_family(Family::Dminus, n, limits)
}

/// Rank-1 members of the D families (a single vertex, no edges); these arise
/// as restrictions of rank-2 graphs and are kept out of the public builders.
pub(crate) fn build_d_rank1(minus: bool) -> LabeledGraph {
    let fam = if minus { Family::Dminus } else { Family::D };
    build_signed_family(fam, 1, &Limits::default()).expect("rank-1 D graph")
}

/// Build a graph by family name, e.g. for command-line use.
pub fn build_family(family: Family, n: usize, limits: &Limits) -> Result<LabeledGraph> {
    match family {
        Family::A => build_a(n, limits),
        Family::B => build_b(n, limits),
        Family::C => build_c(n, limits),
        Family::D => build_d(n, limits),
        Family::Dminus => build_d_minus(n, limits),
    }
}

/// Graph of an arbitrary reduced list of integer roots: vertices are the
/// generated reflection group, and `w` joins `w σ_α` with label `w(α)`.
pub fn build_from_roots(roots: &[LinearForm], limits: &Limits) -> Result<LabeledGraph> {
    if roots.is_empty() {
        return Err(Error::Usage("need at least one root".into()));
    }
    let n = roots[0].n_vars();
    let mut positive: Vec<LinearForm> = Vec::new();
    for r in roots {
        if r.n_vars() != n {
            return Err(Error::Usage("roots of mixed dimensions".into()));
        }
        if r.is_zero() {
            return Err(Error::Usage("zero root".into()));
        }
        let c = r.canonical();
        if positive.contains(&c) {
            continue;
        }
        if let Some(p) = positive.iter().find(|p| p.is_parallel(&c)) {
            return Err(Error::Usage(format!(
                "root list is not reduced: {c} is parallel to {p}"
            )));
        }
        positive.push(c);
    }

    let root_vecs: Vec<Vec<i64>> = positive.iter().map(|r| r.coeffs().to_vec()).collect();
    let group = generate_from_reflections(&root_vecs, limits)?;

    // relabel as signed permutations when possible, for canonical order
    let perms: Option<Vec<GroupElement>> =
        group.iter().map(|m| m.as_signed_perm()).collect();
    let order: Vec<usize> = match &perms {
        Some(ps) => {
            let mut idx: Vec<usize> = (0..group.len()).collect();
            idx.sort_by(|&x, &y| ps[x].cmp(&ps[y]));
            idx
        }
        None => (0..group.len()).collect(),
    };
    let maps: Vec<OrthogonalMap> = order.iter().map(|&i| group[i].clone()).collect();
    let lookup: BTreeMap<&OrthogonalMap, usize> =
        maps.iter().enumerate().map(|(i, m)| (m, i)).collect();

    let reflections: Vec<OrthogonalMap> = root_vecs
        .iter()
        .map(|r| OrthogonalMap::reflection(r))
        .collect::<Result<_>>()?;
    let mut acc = EdgeAccum::new();
    for (a, w) in maps.iter().enumerate() {
        for (alpha, sigma) in root_vecs.iter().zip(&reflections) {
            let w2 = w.compose(sigma);
            let b = *lookup
                .get(&w2)
                .ok_or_else(|| Error::Internal("closure is not closed".into()))?;
            let image = w.apply_int(alpha).ok_or_else(|| {
                Error::Usage(format!(
                    "label for root {} is not integral",
                    LinearForm(alpha.clone())
                ))
            })?;
            let coeffs: Vec<i64> = image
                .iter()
                .map(|x| i64::try_from(x).map_err(|_| {
                    Error::Resource("label coefficient exceeds i64".into())
                }))
                .collect::<Result<_>>()?;
            acc.add(a, b, LinearForm(coeffs))?;
        }
    }
    let vertices: Vec<Vertex> = match perms {
        Some(ps) => {
            let mut ps: Vec<GroupElement> = ps;
            ps.sort();
            ps.into_iter().map(Vertex::Perm).collect()
        }
        None => maps.into_iter().map(Vertex::Map).collect(),
    };
    LabeledGraph::assemble(None, n, vertices, acc.into_edges())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn limits() -> Limits {
        Limits::default()
    }

    fn edge_label<'g>(g: &'g LabeledGraph, u: &str, v: &str) -> &'g LinearForm {
        let a = g.find_vertex_by_name(u).unwrap();
        let b = g.find_vertex_by_name(v).unwrap();
        let (a, b) = (a.min(b), a.max(b));
        &g.edges()
            .iter()
            .find(|e| e.a == a && e.b == b)
            .unwrap_or_else(|| panic!("no edge {u} -- {v}"))
            .label
    }

    #[test]
    fn linear_form_basics() {
        let f = LinearForm::parse("1,-1,0").unwrap();
        assert_eq!(f.to_string(), "t1-t2");
        assert_eq!(LinearForm::new(vec![2, 0]).to_string(), "2t1");
        assert_eq!(LinearForm::new(vec![-1, 1]).to_string(), "-t1+t2");
        assert_eq!(LinearForm::new(vec![-1, 1]).canonical().to_string(), "t1-t2");
        assert!(!LinearForm::new(vec![2, 2, 0]).is_parallel(&f));
        assert!(LinearForm::new(vec![2, -2, 0]).is_parallel(&f));
        assert!(LinearForm::new(vec![-2, 2, 0]).is_parallel(&f));
        let j = f.to_json();
        assert_eq!(LinearForm::from_json(&j).unwrap(), f);
    }

    #[test]
    fn a2_graph() {
        let g = build_a(2, &limits()).unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges().len(), 1);
        assert_eq!(g.edges()[0].label.to_string(), "t1-t2");
        assert_eq!(g.vertex_name(0), "12");
    }

    #[test]
    fn a3_graph_matches_hexagon() {
        let g = build_a(3, &limits()).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.edges().len(), 9);
        assert_eq!(g.regular_degree(), Some(3));
        assert_eq!(edge_label(&g, "123", "132").to_string(), "t2-t3");
        assert_eq!(edge_label(&g, "132", "312").to_string(), "t1-t3");
        assert_eq!(edge_label(&g, "312", "321").to_string(), "t1-t2");
        assert_eq!(edge_label(&g, "123", "213").to_string(), "t1-t2");
        assert_eq!(edge_label(&g, "123", "321").to_string(), "t1-t3");
    }

    #[test]
    fn c1_and_b1_graphs() {
        let c = build_c(1, &limits()).unwrap();
        assert_eq!(c.num_vertices(), 2);
        assert_eq!(c.edges().len(), 1);
        assert_eq!(c.edges()[0].label.to_string(), "2t1");
        let b = build_b(1, &limits()).unwrap();
        assert_eq!(b.edges()[0].label.to_string(), "t1");
        assert_eq!(b.vertex_name(0), "-1");
        assert_eq!(b.vertex_name(1), "1");
    }

    #[test]
    fn c2_and_b2_graphs() {
        let c = build_c(2, &limits()).unwrap();
        assert_eq!(c.num_vertices(), 8);
        assert_eq!(c.edges().len(), 16);
        assert_eq!(c.regular_degree(), Some(4));
        assert_eq!(edge_label(&c, "1 2", "-1 2").to_string(), "2t1");

        let b = build_b(2, &limits()).unwrap();
        assert_eq!(edge_label(&b, "1 2", "-1 2").to_string(), "t1");
        assert_eq!(edge_label(&b, "1 2", "1 -2").to_string(), "t2");

        // same underlying graph, labels differ exactly on the 8 flip edges
        assert_eq!(b.num_vertices(), c.num_vertices());
        assert_eq!(b.edges().len(), c.edges().len());
        let mut differ = 0;
        for (eb, ec) in b.edges().iter().zip(c.edges()) {
            assert_eq!((eb.a, eb.b), (ec.a, ec.b));
            if eb.label != ec.label {
                differ += 1;
                let doubled: Vec<i64> =
                    eb.label.coeffs().iter().map(|&x| 2 * x).collect();
                assert_eq!(ec.label, LinearForm::new(doubled));
            }
        }
        assert_eq!(differ, 8);
    }

    #[test]
    fn d2_graphs() {
        let d = build_d(2, &limits()).unwrap();
        assert_eq!(d.num_vertices(), 4);
        assert_eq!(d.edges().len(), 4);
        assert_eq!(d.regular_degree(), Some(2));
        assert_eq!(edge_label(&d, "1 2", "2 1").to_string(), "t1-t2");
        assert_eq!(edge_label(&d, "1 2", "-2 -1").to_string(), "t1+t2");

        let dm = build_d_minus(2, &limits()).unwrap();
        let names: Vec<&str> = (0..4).map(|i| dm.vertex_name(i)).collect();
        assert_eq!(names, ["-2 1", "-1 2", "1 -2", "2 -1"]);

        assert!(build_d(1, &limits()).is_err());
        assert!(build_d_minus(1, &limits()).is_err());
    }

    #[test]
    fn regularity_and_handshake() {
        for n in 1..=3 {
            let a = build_a(n, &limits()).unwrap();
            assert_eq!(a.regular_degree(), Some(n * (n - 1) / 2));
            let b = build_b(n, &limits()).unwrap();
            assert_eq!(b.regular_degree(), Some(n * n));
            let c = build_c(n, &limits()).unwrap();
            assert_eq!(c.regular_degree(), Some(n * n));
            assert_eq!(2 * c.edges().len(), c.num_vertices() * n * n);
            if n >= 2 {
                let d = build_d(n, &limits()).unwrap();
                assert_eq!(d.regular_degree(), Some(n * (n - 1)));
                let dm = build_d_minus(n, &limits()).unwrap();
                assert_eq!(dm.regular_degree(), Some(n * (n - 1)));
            }
        }
    }

    #[test]
    fn labels_match_vertex_images() {
        // at each position where an edge's endpoints disagree, the form
        // t_{w(i)} - t_{w'(i)} is the label up to sign (up to the factor 2
        // on sign-flip edges of the B family)
        let g = build_b(3, &limits()).unwrap();
        for e in g.edges() {
            let w = g.vertex_perm(e.a).unwrap();
            let w2 = g.vertex_perm(e.b).unwrap();
            let mut moved = 0;
            for i in 1..=3i32 {
                if w.image(i) == w2.image(i) {
                    continue;
                }
                moved += 1;
                let d = pair_label(3, w.image(i), w2.image(i)).canonical();
                let l = e.label.canonical();
                let double = LinearForm::new(
                    l.coeffs().iter().map(|&x| 2 * x).collect(),
                );
                assert!(
                    d == l || d == double,
                    "edge {} -- {} at position {}: difference {} vs label {}",
                    g.vertex_name(e.a),
                    g.vertex_name(e.b),
                    i,
                    d,
                    e.label
                );
            }
            assert!(moved > 0);
        }
    }

    #[test]
    fn roots_reproduce_families() {
        let phi_a = |n: usize| {
            let mut roots = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    let mut c = vec![0i64; n];
                    c[i] = 1;
                    c[j] = -1;
                    roots.push(LinearForm::new(c));
                }
            }
            roots
        };
        let g = build_from_roots(&phi_a(3), &limits()).unwrap();
        assert!(g.same_graph(&build_a(3, &limits()).unwrap()));

        let phi_c2 = vec![
            LinearForm::new(vec![1, -1]),
            LinearForm::new(vec![1, 1]),
            LinearForm::new(vec![2, 0]),
            LinearForm::new(vec![0, 2]),
        ];
        let g = build_from_roots(&phi_c2, &limits()).unwrap();
        assert!(g.same_graph(&build_c(2, &limits()).unwrap()));

        let phi_b2 = vec![
            LinearForm::new(vec![1, -1]),
            LinearForm::new(vec![1, 1]),
            LinearForm::new(vec![1, 0]),
            LinearForm::new(vec![0, 1]),
        ];
        let g = build_from_roots(&phi_b2, &limits()).unwrap();
        assert!(g.same_graph(&build_b(2, &limits()).unwrap()));

        let phi_d2 = vec![
            LinearForm::new(vec![1, -1]),
            LinearForm::new(vec![1, 1]),
        ];
        let g = build_from_roots(&phi_d2, &limits()).unwrap();
        assert!(g.same_graph(&build_d(2, &limits()).unwrap()));

        // negatives collapse onto their positive representatives
        let single = build_from_roots(
            &[LinearForm::new(vec![1, -1]), LinearForm::new(vec![-1, 1])],
            &limits(),
        )
        .unwrap();
        assert_eq!(single.num_vertices(), 2);
        assert_eq!(single.edges().len(), 1);
        assert_eq!(single.edges()[0].label.to_string(), "t1-t2");

        // non-reduced lists are rejected
        assert!(build_from_roots(
            &[LinearForm::new(vec![1, -1]), LinearForm::new(vec![2, -2])],
            &limits(),
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        for g in [
            build_a(3, &limits()).unwrap(),
            build_b(2, &limits()).unwrap(),
            build_d_minus(2, &limits()).unwrap(),
        ] {
            let j = g.to_json();
            let back = LabeledGraph::from_json(&j).unwrap();
            assert_eq!(back, g);
            let s1 = serde_json::to_string(&j).unwrap();
            let s2 = serde_json::to_string(&back.to_json()).unwrap();
            assert_eq!(s1, s2);
        }
    }

    #[test]
    fn dot_output() {
        let g = build_a(2, &limits()).unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph {"));
        assert!(dot.contains("\"12\" -- \"21\" [label=\"t1-t2\"]"));
        let c = build_c(1, &limits()).unwrap();
        assert!(c.to_dot().contains("[label=\"2t1\"]"));
    }

    #[test]
    fn label_negation_helper() {
        let g = build_a(2, &limits()).unwrap();
        let flipped = g.negate_labels(|_| true);
        assert_eq!(flipped.edges()[0].label.to_string(), "-t1+t2");
        assert!(!flipped.same_graph(&g));
    }

    #[test]
    fn rank1_d_graphs() {
        let d1 = build_d_rank1(false);
        assert_eq!(d1.num_vertices(), 1);
        assert_eq!(d1.vertex_name(0), "1");
        assert_eq!(d1.edges().len(), 0);
        let d1m = build_d_rank1(true);
        assert_eq!(d1m.vertex_name(0), "-1");
    }
}
