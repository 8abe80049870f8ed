//! Cohomology classes of labeled graphs.
//!
//! A class assigns to every vertex a polynomial in `t1..tN`; it is a member
//! of the graph's cohomology when for every edge the difference of endpoint
//! values is divisible by the edge label.  Values may use more variables
//! than the graph: trailing variables act as formal parameters (they appear
//! when a class is restricted to a smaller graph and the retired variable
//! stays behind as a coefficient).

pub mod graded;
pub mod hilbert;
pub mod restrict;

pub use graded::{graded_basis, GradedPiece};
pub use hilbert::{
    hilbert_closed_form, hilbert_computed, hilbert_recurrence_a, HilbertSeries,
};
pub use restrict::{restrict_class, transform_f_across_restriction, Restriction};

use std::sync::Arc;

use crate::gkmgraph::{Family, LabeledGraph};
use crate::poly::{elementary_symmetric, Monomial, Polynomial};
use crate::ring::{Coeff, Ring};
use crate::{Error, Result};

/// A vertex-indexed tuple of polynomials on a labeled graph.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    graph: Arc<LabeledGraph>,
    ring: Ring,
    /// cohomological degree is `2k`; values are homogeneous of degree `k`
    k: usize,
    values: Vec<Polynomial>,
    /// whether the divisibility conditions have been verified
    verified: bool,
}

impl CohomologyClass {
    /// Build a class from raw values without checking membership.
    pub fn from_values(
        graph: &Arc<LabeledGraph>,
        ring: Ring,
        k: usize,
        values: Vec<Polynomial>,
    ) -> Result<CohomologyClass> {
        if values.len() != graph.num_vertices() {
            return Err(Error::Usage(format!(
                "expected {} vertex values, got {}",
                graph.num_vertices(),
                values.len()
            )));
        }
        let mut nv = graph.n_vars();
        for p in &values {
            if p.ring() != ring {
                return Err(Error::Usage("value ring mismatch".into()));
            }
            nv = nv.max(p.n_vars());
            if !p.is_homogeneous_of_degree(k) {
                return Err(Error::Usage(format!(
                    "value {} is not homogeneous of degree {}",
                    p, k
                )));
            }
        }
        let values = values.into_iter().map(|p| p.extend_vars(nv)).collect();
        Ok(CohomologyClass {
            graph: graph.clone(),
            ring,
            k,
            values,
            verified: false,
        })
    }

    /// Build a class and verify membership; fails with `NotMember` otherwise.
    pub fn member(
        graph: &Arc<LabeledGraph>,
        ring: Ring,
        k: usize,
        values: Vec<Polynomial>,
    ) -> Result<CohomologyClass> {
        Self::from_values(graph, ring, k, values)?.into_checked()
    }

    /// The zero class of degree `2k`.
    pub fn zero(graph: &Arc<LabeledGraph>, ring: Ring, k: usize) -> CohomologyClass {
        CohomologyClass {
            graph: graph.clone(),
            ring,
            k,
            values: vec![
                Polynomial::zero(ring, graph.n_vars());
                graph.num_vertices()
            ],
            verified: true,
        }
    }

    /// The class with the same polynomial at every vertex.
    pub fn constant_class(graph: &Arc<LabeledGraph>, p: &Polynomial) -> Result<CohomologyClass> {
        let k = p.total_degree();
        if !p.is_homogeneous_of_degree(k) {
            return Err(Error::Usage("constant class value must be homogeneous".into()));
        }
        let mut c = Self::from_values(
            graph,
            p.ring(),
            k,
            vec![p.clone(); graph.num_vertices()],
        )?;
        // differences all vanish
        c.verified = true;
        Ok(c)
    }

    pub fn graph(&self) -> &Arc<LabeledGraph> {
        &self.graph
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> usize {
        2 * self.k
    }

    pub fn values(&self) -> &[Polynomial] {
        &self.values
    }

    pub fn value(&self, v: usize) -> &Polynomial {
        &self.values[v]
    }

    /// Number of variables the values are expressed in (at least the
    /// graph's; the excess variables are formal parameters).
    pub fn n_vars(&self) -> usize {
        self.values.first().map_or(self.graph.n_vars(), |p| p.n_vars())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|p| p.is_zero())
    }

    pub fn member_checked(&self) -> bool {
        self.verified
    }

    /// First edge whose divisibility condition fails, with a description.
    pub fn first_violation(&self) -> Option<(usize, String)> {
        let nv = self.n_vars();
        for (i, e) in self.graph.edges().iter().enumerate() {
            let diff = self.values[e.a].sub(&self.values[e.b]);
            let label = e.label.to_polynomial(self.ring).extend_vars(nv);
            let ok = if label.is_zero() {
                // a label vanishing in the coefficient ring (2t_i mod 2)
                // forces equality of the endpoint values
                diff.is_zero()
            } else {
                diff.divide_exact(&label).is_some()
            };
            if !ok {
                return Some((
                    i,
                    format!(
                        "edge {{{}, {}}} with label {}: difference {} is not divisible",
                        self.graph.vertex_name(e.a),
                        self.graph.vertex_name(e.b),
                        e.label,
                        diff
                    ),
                ));
            }
        }
        None
    }

    pub fn is_member(&self) -> bool {
        self.verified || self.first_violation().is_none()
    }

    /// Verify membership, recording the result in the class.
    pub fn into_checked(mut self) -> Result<CohomologyClass> {
        if !self.verified {
            if let Some((_, why)) = self.first_violation() {
                return Err(Error::NotMember(why));
            }
            self.verified = true;
        }
        Ok(self)
    }

    fn align(&self, other: &CohomologyClass) -> (Vec<Polynomial>, Vec<Polynomial>) {
        assert!(
            Arc::ptr_eq(&self.graph, &other.graph) || self.graph.same_graph(&other.graph),
            "classes live on different graphs"
        );
        assert_eq!(self.ring, other.ring, "class ring mismatch");
        let nv = self.n_vars().max(other.n_vars());
        (
            self.values.iter().map(|p| p.extend_vars(nv)).collect(),
            other.values.iter().map(|p| p.extend_vars(nv)).collect(),
        )
    }

    pub fn add(&self, other: &CohomologyClass) -> CohomologyClass {
        let k = if self.is_zero() { other.k } else { self.k };
        assert!(
            other.is_zero() || other.k == k,
            "degree mismatch: {} vs {}",
            self.k,
            other.k
        );
        let (a, b) = self.align(other);
        let values = a.iter().zip(&b).map(|(p, q)| p.add(q)).collect();
        CohomologyClass {
            graph: self.graph.clone(),
            ring: self.ring,
            k,
            values,
            verified: self.verified && other.verified,
        }
    }

    pub fn sub(&self, other: &CohomologyClass) -> CohomologyClass {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CohomologyClass {
        CohomologyClass {
            graph: self.graph.clone(),
            ring: self.ring,
            k: self.k,
            values: self.values.iter().map(|p| p.neg()).collect(),
            verified: self.verified,
        }
    }

    pub fn scale(&self, c: &Coeff) -> CohomologyClass {
        CohomologyClass {
            graph: self.graph.clone(),
            ring: self.ring,
            k: self.k,
            values: self.values.iter().map(|p| p.scale(c)).collect(),
            verified: self.verified,
        }
    }

    /// Pointwise product; degrees add.
    pub fn mul(&self, other: &CohomologyClass) -> CohomologyClass {
        let (a, b) = self.align(other);
        let values = a.iter().zip(&b).map(|(p, q)| p.mul(q)).collect();
        CohomologyClass {
            graph: self.graph.clone(),
            ring: self.ring,
            k: self.k + other.k,
            values,
            verified: self.verified && other.verified,
        }
    }

    /// Multiply every value by a fixed homogeneous polynomial.
    pub fn mul_poly(&self, p: &Polynomial) -> CohomologyClass {
        let d = p.total_degree();
        assert!(p.is_homogeneous_of_degree(d), "multiplier must be homogeneous");
        let nv = self.n_vars().max(p.n_vars());
        let p = p.extend_vars(nv);
        CohomologyClass {
            graph: self.graph.clone(),
            ring: self.ring,
            k: self.k + d,
            values: self
                .values
                .iter()
                .map(|v| v.extend_vars(nv).mul(&p))
                .collect(),
            verified: self.verified,
        }
    }

    pub fn convert(&self, ring: Ring) -> Result<CohomologyClass> {
        let values = self
            .values
            .iter()
            .map(|p| p.convert(ring))
            .collect::<Result<Vec<_>>>()?;
        Ok(CohomologyClass {
            graph: self.graph.clone(),
            ring,
            k: self.k,
            values,
            verified: false,
        })
    }

    /// Exact equality of values (after aligning variable counts).
    pub fn eq_values(&self, other: &CohomologyClass) -> bool {
        if self.values.len() != other.values.len() || self.ring != other.ring {
            return false;
        }
        let (a, b) = self.align(other);
        a == b
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut values = serde_json::Map::new();
        for (i, p) in self.values.iter().enumerate() {
            values.insert(self.graph.vertex_name(i).to_string(), p.to_json());
        }
        serde_json::json!({
            "degree": self.degree(),
            "ring": self.ring.name(),
            "values": values,
        })
    }

    /// Parse a class over the given graph; membership is not checked.
    pub fn from_json(graph: &Arc<LabeledGraph>, v: &serde_json::Value) -> Result<CohomologyClass> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Usage("class JSON must be an object".into()))?;
        let degree = obj
            .get("degree")
            .and_then(|d| d.as_u64())
            .ok_or_else(|| Error::Usage("class JSON needs a numeric degree".into()))?;
        if degree % 2 != 0 {
            return Err(Error::Usage("class degree must be even".into()));
        }
        let ring = Ring::parse(
            obj.get("ring")
                .and_then(|r| r.as_str())
                .ok_or_else(|| Error::Usage("class JSON needs a ring".into()))?,
        )?;
        let map = obj
            .get("values")
            .and_then(|m| m.as_object())
            .ok_or_else(|| Error::Usage("class JSON needs a values object".into()))?;
        let mut values = vec![None; graph.num_vertices()];
        for (name, pv) in map {
            let idx = graph
                .find_vertex_by_name(name)
                .ok_or_else(|| Error::Usage(format!("unknown vertex {:?}", name)))?;
            let p = Polynomial::from_json(pv)?;
            if p.ring() != ring {
                return Err(Error::Usage(format!("value at {:?} has wrong ring", name)));
            }
            values[idx] = Some(p);
        }
        let nv = values
            .iter()
            .flatten()
            .map(|p| p.n_vars())
            .max()
            .unwrap_or(graph.n_vars())
            .max(graph.n_vars());
        let values = values
            .into_iter()
            .enumerate()
            .map(|(i, p)| match p {
                Some(p) => Ok(p.extend_vars(nv)),
                None => Err(Error::Usage(format!(
                    "missing value for vertex {}",
                    graph.vertex_name(i)
                ))),
            })
            .collect::<Result<Vec<_>>>()?;
        CohomologyClass::from_values(graph, ring, (degree / 2) as usize, values)
    }
}

/// The constant class `t_i` (1-based).
pub fn class_t(graph: &Arc<LabeledGraph>, i: usize) -> Result<CohomologyClass> {
    let nv = graph.n_vars();
    if i == 0 || i > nv {
        return Err(Error::Usage(format!("t{} is out of range", i)));
    }
    let ring = Ring::Int;
    let p = Polynomial::var(ring, nv, i - 1);
    let mut c = CohomologyClass::from_values(
        graph,
        ring,
        1,
        vec![p; graph.num_vertices()],
    )?;
    c.verified = true;
    Ok(c)
}

/// The class `τ_i`: its value at `w` is `t_{w(i)}`, with `t_{-m} = -t_m`.
pub fn class_tau(graph: &Arc<LabeledGraph>, i: usize) -> Result<CohomologyClass> {
    let ring = Ring::Int;
    let nv = graph.n_vars();
    let mut values = Vec::with_capacity(graph.num_vertices());
    for v in 0..graph.num_vertices() {
        let w = graph.vertex_perm(v)?;
        if i == 0 || i > w.n() {
            return Err(Error::Usage(format!("τ{} is out of range", i)));
        }
        values.push(signed_var(ring, nv, w.image(i as i32)));
    }
    CohomologyClass::member(graph, ring, 1, values)
}

/// `±t_m` for a signed value `m`.
fn signed_var(ring: Ring, n_vars: usize, m: i32) -> Polynomial {
    let p = Polynomial::var(ring, n_vars, m.unsigned_abs() as usize - 1);
    if m < 0 {
        p.neg()
    } else {
        p
    }
}

/// Value of `e_i(τ_1,…,τ_n)` at a vertex.
pub(crate) fn e_tau_value(
    graph: &LabeledGraph,
    v: usize,
    i: usize,
    ring: Ring,
) -> Result<Polynomial> {
    let nv = graph.n_vars();
    let w = graph.vertex_perm(v)?;
    let taus: Vec<Polynomial> = (1..=w.n() as i32)
        .map(|p| signed_var(ring, nv, w.image(p)))
        .collect();
    Ok(elementary_symmetric(ring, nv, &taus, i))
}

/// The class `f_i = (e_i(τ) - e_i(t))/2` on the signed families.
///
/// Defined for `1 ≤ i ≤ n` on family B and for `1 ≤ i ≤ n` on the D
/// families, where `f_n` is identically zero on D; the returned flag is
/// true exactly in that degenerate case.  Every vertex value must be
/// divisible by 2; a failure is an internal error (the evenness is a
/// theorem for these families).
pub fn class_f_with_flag(
    graph: &Arc<LabeledGraph>,
    i: usize,
) -> Result<(CohomologyClass, bool)> {
    let (family, n) = graph
        .family()
        .ok_or_else(|| Error::Usage("f classes need a built family graph".into()))?;
    match family {
        Family::B | Family::D | Family::Dminus => {}
        _ => {
            return Err(Error::Usage(format!(
                "f classes are not integral on family {}",
                family
            )))
        }
    }
    if i == 0 || i > n {
        return Err(Error::Usage(format!("f{} is out of range", i)));
    }
    let ring = Ring::Int;
    if family == Family::D && i == n {
        return Ok((CohomologyClass::zero(graph, ring, i), true));
    }
    let nv = graph.n_vars();
    let t_vars: Vec<Polynomial> = (0..nv).map(|j| Polynomial::var(ring, nv, j)).collect();
    let e_t = elementary_symmetric(ring, nv, &t_vars[..n], i);
    let two = Coeff::from_i64(ring, 2);
    let mut values = Vec::with_capacity(graph.num_vertices());
    for v in 0..graph.num_vertices() {
        let diff = e_tau_value(graph, v, i, ring)?.sub(&e_t);
        let half = Polynomial::from_terms(
            ring,
            nv,
            diff.terms()
                .map(|(m, c)| {
                    c.div_exact(&two)
                        .map(|q| (m.clone(), q))
                        .ok_or_else(|| {
                            Error::Internal(format!(
                                "odd coefficient in f{} at vertex {}",
                                i,
                                graph.vertex_name(v)
                            ))
                        })
                })
                .collect::<Result<Vec<_>>>()?,
        );
        values.push(half);
    }
    CohomologyClass::member(graph, ring, i, values).map(|c| (c, false))
}

/// `class_f_with_flag` without the degeneracy flag.
pub fn class_f(graph: &Arc<LabeledGraph>, i: usize) -> Result<CohomologyClass> {
    class_f_with_flag(graph, i).map(|(c, _)| c)
}

/// The degree-`2(n-1)` class `P = Σ_{k=1}^{n-1} (-1)^{n-1-k} f_k t_n^{n-1-k}`
/// on family D, cross-checked against `-(1/2t_n) Π_k (τ_k - t_n)` by exact
/// division at every vertex.
pub fn class_p(graph: &Arc<LabeledGraph>) -> Result<CohomologyClass> {
    let (family, n) = graph
        .family()
        .ok_or_else(|| Error::Usage("P needs a built family graph".into()))?;
    if family != Family::D || n < 2 {
        return Err(Error::Usage("P is defined on family D at rank 2 or more".into()));
    }
    let ring = Ring::Int;
    let nv = graph.n_vars();
    let mut p = CohomologyClass::zero(graph, ring, n - 1);
    for k in 1..n {
        let mut tn_pow = Polynomial::var(ring, nv, n - 1).pow(n - 1 - k);
        if (n - 1 - k) % 2 == 1 {
            tn_pow = tn_pow.neg();
        }
        p = p.add(&class_f(graph, k)?.mul_poly(&tn_pow));
    }
    // the same class is -(1/2t_n) Π (τ_k - t_n); check by division
    let t_n = Polynomial::var(ring, nv, n - 1);
    let m2tn = t_n.scale(&Coeff::from_i64(ring, -2));
    for v in 0..graph.num_vertices() {
        let w = graph.vertex_perm(v)?;
        let mut prod = Polynomial::constant_i64(ring, nv, 1);
        for i in 1..=n {
            prod = prod.mul(&signed_var(ring, nv, w.image(i as i32)).sub(&t_n));
        }
        let quo = prod.divide_exact(&m2tn).ok_or_else(|| {
            Error::Internal(format!(
                "product form not divisible by -2t{} at {}",
                n,
                graph.vertex_name(v)
            ))
        })?;
        if quo != *p.value(v) {
            return Err(Error::Internal(format!(
                "P cross-check failed at {}",
                graph.vertex_name(v)
            )));
        }
    }
    Ok(p)
}

/// Value of `e_i(t_1,…,t_m)` as a polynomial in `n_vars` variables.
pub(crate) fn e_t_poly(ring: Ring, n_vars: usize, m: usize, i: usize) -> Polynomial {
    let t_vars: Vec<Polynomial> = (0..m).map(|j| Polynomial::var(ring, n_vars, j)).collect();
    elementary_symmetric(ring, n_vars, &t_vars, i)
}

/// Degree-`k` monomials of the graph's own variables, the coordinate order
/// shared by graded bases and generator lattices.
pub(crate) fn coordinate_monomials(graph: &LabeledGraph, k: usize) -> Vec<Monomial> {
    crate::poly::monomials_of_degree(graph.n_vars(), k)
}
