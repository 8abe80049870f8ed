//! Restriction of classes to the fixed subgraph where one position of the
//! one-line notation carries the extremal value `±n`.
//!
//! Fixing `w(q) = ±n` picks out a subgraph isomorphic to the canonical
//! rank-`(n-1)` graph of the (possibly toggled) family: the surviving
//! values `±1..±(n-1)` keep their names, surviving positions close the gap
//! at `q`, and the retired variable `t_n` stays behind as a formal
//! coefficient parameter of the restricted values.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::gkmgraph::{build_d_rank1, build_family, Family, LabeledGraph};
use crate::poly::Polynomial;
use crate::ring::Ring;
use crate::weyl::GroupElement;
use crate::{Error, Limits, Result};

use super::{class_f, e_t_poly, CohomologyClass};

/// A fixed-position subgraph `{w : w(q) = sign·n}` of a family graph,
/// presented as the canonical graph one rank down.
#[derive(Clone, Debug)]
pub struct Restriction {
    parent: Arc<LabeledGraph>,
    graph: Arc<LabeledGraph>,
    q: usize,
    sign: i64,
    /// index into the parent's vertices, per restricted vertex
    vertex_map: Vec<usize>,
}

impl Restriction {
    pub fn new(
        parent: &Arc<LabeledGraph>,
        q: usize,
        sign: i64,
        limits: &Limits,
    ) -> Result<Restriction> {
        let (family, n) = parent
            .family()
            .ok_or_else(|| Error::Usage("restriction needs a built family graph".into()))?;
        if q == 0 || q > n {
            return Err(Error::Usage(format!("position {} is out of range", q)));
        }
        if sign != 1 && sign != -1 {
            return Err(Error::Usage("sign must be +1 or -1".into()));
        }
        if family == Family::A && sign != 1 {
            return Err(Error::Usage("family A has no negative values".into()));
        }
        if n < 2 {
            return Err(Error::Usage("cannot restrict a rank-1 graph".into()));
        }
        let sub_family = match (family, sign) {
            (Family::D, -1) => Family::Dminus,
            (Family::Dminus, -1) => Family::D,
            (f, _) => f,
        };
        let graph = match sub_family {
            Family::D | Family::Dminus if n - 1 == 1 => {
                build_d_rank1(sub_family == Family::Dminus)
            }
            _ => build_family(sub_family, n - 1, limits)?,
        };
        let graph = Arc::new(graph);

        let mut vertex_map = Vec::with_capacity(graph.num_vertices());
        for vs in 0..graph.num_vertices() {
            let sub = graph.vertex_perm(vs)?;
            let mut images = Vec::with_capacity(n);
            for p in 1..=n {
                if p == q {
                    images.push(sign as i32 * n as i32);
                } else {
                    let p_sub = if p < q { p } else { p - 1 };
                    images.push(sub.image(p_sub as i32));
                }
            }
            let w = GroupElement::from_images(images)?;
            let vp = parent.find_perm(&w).ok_or_else(|| {
                Error::Internal(format!("restricted vertex {} not in parent", w))
            })?;
            vertex_map.push(vp);
        }

        let r = Restriction {
            parent: parent.clone(),
            graph,
            q,
            sign,
            vertex_map,
        };
        r.verify_edges()?;
        Ok(r)
    }

    /// Every edge of the restricted graph must appear in the parent between
    /// the corresponding vertices, with the same label (extended by a zero
    /// coefficient on the retired variable), and no parent edge within the
    /// restricted vertex set may be missed.
    fn verify_edges(&self) -> Result<()> {
        let mut parent_edges: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
        let in_set: BTreeMap<usize, usize> = self
            .vertex_map
            .iter()
            .enumerate()
            .map(|(vs, &vp)| (vp, vs))
            .collect();
        for e in self.parent.edges() {
            if in_set.contains_key(&e.a) && in_set.contains_key(&e.b) {
                parent_edges.insert((e.a, e.b), e.label.coeffs().to_vec());
            }
        }
        let mut seen = 0usize;
        for e in self.graph.edges() {
            let mut pair = (self.vertex_map[e.a], self.vertex_map[e.b]);
            if pair.0 > pair.1 {
                pair = (pair.1, pair.0);
            }
            let label = parent_edges.get(&pair).ok_or_else(|| {
                Error::Internal("restricted edge missing from parent".into())
            })?;
            let mut extended = e.label.coeffs().to_vec();
            extended.resize(self.parent.n_vars(), 0);
            if *label != extended {
                return Err(Error::Internal(format!(
                    "edge label changed under restriction: {:?} vs {:?}",
                    label, extended
                )));
            }
            seen += 1;
        }
        if seen != parent_edges.len() {
            return Err(Error::Internal(
                "parent has extra edges inside the restricted set".into(),
            ));
        }
        Ok(())
    }

    pub fn parent(&self) -> &Arc<LabeledGraph> {
        &self.parent
    }

    pub fn graph(&self) -> &Arc<LabeledGraph> {
        &self.graph
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn sign(&self) -> i64 {
        self.sign
    }

    /// Parent vertex index of a restricted vertex.
    pub fn parent_vertex(&self, vs: usize) -> usize {
        self.vertex_map[vs]
    }

    /// The restricted vertex set, as parent indices.
    pub fn parent_vertices(&self) -> &[usize] {
        &self.vertex_map
    }

    /// Parent position of a restricted position (both 1-based).
    pub fn parent_position(&self, p_sub: usize) -> usize {
        if p_sub < self.q {
            p_sub
        } else {
            p_sub + 1
        }
    }
}

/// Restrict a class to the subgraph; the result keeps the original
/// variables, with `t_n` now a formal parameter.
pub fn restrict_class(r: &Restriction, h: &CohomologyClass) -> Result<CohomologyClass> {
    if !Arc::ptr_eq(h.graph(), r.parent()) && !h.graph().same_graph(r.parent()) {
        return Err(Error::Usage("class does not live on the restricted graph's parent".into()));
    }
    let values: Vec<Polynomial> = r
        .vertex_map
        .iter()
        .map(|&vp| h.value(vp).clone())
        .collect();
    CohomologyClass::member(&r.graph, h.ring(), h.k(), values)
}

/// The restricted graph's `f_i`, rebuilt from the parent's `f` classes and
/// the retired variable: on the `w(q) = n` side
/// `f'_i = Σ_{j<i} f_{i-j} (-t_n)^j`, and on the `w(q) = -n` side
/// `f'_i = Σ_{j<i} f_{i-j} t_n^j + Σ_{j=1}^i e_{i-j}(t_1..t_{n-1}) t_n^j`.
/// The identity is checked pointwise against the restricted graph's own
/// `f_i`; a mismatch is an internal error.
pub fn transform_f_across_restriction(
    r: &Restriction,
    i: usize,
) -> Result<CohomologyClass> {
    let (family, n) = r.parent().family().expect("restriction keeps family graphs");
    match family {
        Family::B | Family::D | Family::Dminus => {}
        _ => {
            return Err(Error::Usage(format!(
                "f classes are not defined on family {}",
                family
            )))
        }
    }
    if i == 0 || i > n - 1 {
        return Err(Error::Usage(format!("f{} is out of range after restriction", i)));
    }
    let ring = Ring::Int;
    let nv = r.parent().n_vars();
    let t_n = Polynomial::var(ring, nv, n - 1);
    let parent_f: Vec<CohomologyClass> = (1..=i)
        .map(|m| class_f(r.parent(), m))
        .collect::<Result<Vec<_>>>()?;

    let mut values = Vec::with_capacity(r.graph().num_vertices());
    for vs in 0..r.graph().num_vertices() {
        let vp = r.parent_vertex(vs);
        let mut val = Polynomial::zero(ring, nv);
        for j in 0..i {
            let mut pow = t_n.pow(j);
            if r.sign() > 0 && j % 2 == 1 {
                pow = pow.neg();
            }
            val = val.add(&parent_f[i - j - 1].value(vp).extend_vars(nv).mul(&pow));
        }
        if r.sign() < 0 {
            for j in 1..=i {
                let e = e_t_poly(ring, nv, n - 1, i - j);
                val = val.add(&e.mul(&t_n.pow(j)));
            }
        }
        values.push(val);
    }
    let built = CohomologyClass::member(&r.graph, ring, i, values)?;
    let own = class_f(r.graph(), i)?;
    if !built.eq_values(&own) {
        return Err(Error::Internal(format!(
            "f{} does not satisfy the restriction formula at q = {}, sign {}",
            i,
            r.q(),
            r.sign()
        )));
    }
    Ok(built)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::class_tau;
    use crate::gkmgraph::{build_a, build_b, build_d, build_d_minus};

    fn arc(g: LabeledGraph) -> Arc<LabeledGraph> {
        Arc::new(g)
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn a3_restriction_relabels_positions() {
        let a3 = arc(build_a(3, &lim()).unwrap());
        let a2_tau1 = {
            let a2 = arc(build_a(2, &lim()).unwrap());
            class_tau(&a2, 1).unwrap()
        };

        // fixing w(3) = 3 keeps positions 1,2 in place
        let r3 = Restriction::new(&a3, 3, 1, &lim()).unwrap();
        let tau1 = class_tau(&a3, 1).unwrap();
        let res = restrict_class(&r3, &tau1).unwrap();
        assert!(res.eq_values(&a2_tau1));

        // fixing w(1) = 3 shifts position 2 down to 1
        let r1 = Restriction::new(&a3, 1, 1, &lim()).unwrap();
        let tau2 = class_tau(&a3, 2).unwrap();
        let res = restrict_class(&r1, &tau2).unwrap();
        assert!(res.eq_values(&a2_tau1));
        assert_eq!(r1.parent_position(1), 2);
    }

    #[test]
    fn b2_minus_restriction() {
        let b2 = arc(build_b(2, &lim()).unwrap());
        let r = Restriction::new(&b2, 2, -1, &lim()).unwrap();
        assert_eq!(r.graph().family(), Some((Family::B, 1)));
        let tau1 = class_tau(&b2, 1).unwrap();
        let res = restrict_class(&r, &tau1).unwrap();
        let b1 = arc(build_b(1, &lim()).unwrap());
        assert!(res.eq_values(&class_tau(&b1, 1).unwrap()));
        // the vertex map lands on {w : w(2) = -2}
        for vs in 0..r.graph().num_vertices() {
            let w = b2.vertex_perm(r.parent_vertex(vs)).unwrap();
            assert_eq!(w.image(2), -2);
        }
    }

    #[test]
    fn restricting_tau_q_leaves_the_parameter() {
        let b2 = arc(build_b(2, &lim()).unwrap());
        let r = Restriction::new(&b2, 2, -1, &lim()).unwrap();
        let tau2 = class_tau(&b2, 2).unwrap();
        let res = restrict_class(&r, &tau2).unwrap();
        // every value is -t2, a constant in the retired parameter
        let want = Polynomial::var(Ring::Int, 2, 1).neg();
        for v in 0..res.graph().num_vertices() {
            assert_eq!(*res.value(v), want);
        }
    }

    #[test]
    fn d_families_toggle_under_negative_restrictions() {
        let d2 = arc(build_d(2, &lim()).unwrap());
        let r = Restriction::new(&d2, 1, -1, &lim()).unwrap();
        assert_eq!(r.graph().family(), Some((Family::Dminus, 1)));
        assert_eq!(r.graph().num_vertices(), 1);

        let dm = arc(build_d_minus(2, &lim()).unwrap());
        let r = Restriction::new(&dm, 1, 1, &lim()).unwrap();
        assert_eq!(r.graph().family(), Some((Family::Dminus, 1)));
        let r = Restriction::new(&dm, 2, -1, &lim()).unwrap();
        assert_eq!(r.graph().family(), Some((Family::D, 1)));

        let d3 = arc(build_d(3, &lim()).unwrap());
        let r = Restriction::new(&d3, 2, -1, &lim()).unwrap();
        assert_eq!(r.graph().family(), Some((Family::Dminus, 2)));
    }

    #[test]
    fn f_transform_examples_at_rank_two() {
        let b2 = arc(build_b(2, &lim()).unwrap());
        // w(2) = +2 side: f'_1 equals f_1 at the preimage
        let plus = Restriction::new(&b2, 2, 1, &lim()).unwrap();
        let f1_plus = transform_f_across_restriction(&plus, 1).unwrap();
        let at = |c: &CohomologyClass, name: &str| {
            c.value(c.graph().find_vertex_by_name(name).unwrap()).clone()
        };
        assert!(at(&f1_plus, "1").is_zero());

        // w(2) = -2 side: f'_1(1) = f_1((1,-2)) + t2 = 0 and
        // f'_1(-1) = f_1((-1,-2)) + t2 = -t1
        let minus = Restriction::new(&b2, 2, -1, &lim()).unwrap();
        let f1_minus = transform_f_across_restriction(&minus, 1).unwrap();
        assert!(at(&f1_minus, "1").is_zero());
        assert_eq!(
            at(&f1_minus, "-1"),
            Polynomial::var(Ring::Int, 2, 0).neg()
        );
    }

    #[test]
    fn f_transform_holds_everywhere_on_b3() {
        let b3 = arc(build_b(3, &lim()).unwrap());
        for q in 1..=3 {
            for sign in [1, -1] {
                let r = Restriction::new(&b3, q, sign, &lim()).unwrap();
                for i in 1..=2 {
                    // the call itself checks the identity on every vertex
                    transform_f_across_restriction(&r, i).unwrap();
                }
            }
        }
    }

    #[test]
    fn f_transform_inverts_triangularly() {
        // f_i(w) = f'_i(w̄) ∓ t_n f'_{i-1}(w̄) - (minus side) e_{i-1} t_n
        let b2 = arc(build_b(2, &lim()).unwrap());
        for sign in [1i64, -1] {
            let r = Restriction::new(&b2, 2, sign, &lim()).unwrap();
            let f1_sub = transform_f_across_restriction(&r, 1).unwrap();
            let f1 = class_f(&b2, 1).unwrap();
            let t2 = Polynomial::var(Ring::Int, 2, 1);
            for vs in 0..r.graph().num_vertices() {
                let vp = r.parent_vertex(vs);
                let mut recovered = f1_sub.value(vs).clone();
                if sign < 0 {
                    // i = 1: correction term is e_0(t1) t2 = t2
                    recovered = recovered.sub(&t2);
                }
                assert_eq!(recovered, f1.value(vp).extend_vars(2).clone());
            }
        }
    }

    #[test]
    fn invalid_selectors_are_rejected() {
        let a3 = arc(build_a(3, &lim()).unwrap());
        assert!(Restriction::new(&a3, 0, 1, &lim()).is_err());
        assert!(Restriction::new(&a3, 4, 1, &lim()).is_err());
        assert!(Restriction::new(&a3, 1, -1, &lim()).is_err());
        let b1 = arc(build_b(1, &lim()).unwrap());
        assert!(Restriction::new(&b1, 1, 1, &lim()).is_err());
    }
}
