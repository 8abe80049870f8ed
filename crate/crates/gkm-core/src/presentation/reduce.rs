//! Constructive reduction: rewrite a cohomology class as a polynomial in
//! the canonical generators by peeling off, one vertex set at a time, the
//! sets where a chosen position carries the extremal value.
//!
//! Each stage divides the remainder by a polynomial that vanishes on every
//! previously handled set, restricts the quotient to the rank-(n-1) graph
//! (the removed variable survives as a parameter), reduces it recursively,
//! and maps the resulting expression back through the restriction.  The
//! output is not unique modulo the relation ideal; correctness is the
//! round-trip `evaluate(output) = input`, which is asserted.

use std::sync::Arc;

use crate::cohomology::{CohomologyClass, Restriction};
use crate::gkmgraph::{Family, LabeledGraph};
use crate::poly::Polynomial;
use crate::presentation::{theorem_ring, AbstractPolynomial};
use crate::ring::{Coeff, Ring};
use crate::{Error, Limits, Result};

/// The reduction result: an abstract polynomial whose evaluation
/// reproduces the input exactly, plus a log of the stages taken.
#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub family: Family,
    pub n: usize,
    pub ring: Ring,
    pub output: AbstractPolynomial,
    pub trace: Vec<String>,
}

impl ReductionCertificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "n": self.n,
            "ring": self.ring.name(),
            "output": self.output.to_json(),
            "trace": self.trace,
        })
    }
}

/// Turn a polynomial in the `t` variables only into an abstract polynomial
/// of the given generator arity.
fn t_poly_to_abstract(n: usize, p: &Polynomial) -> AbstractPolynomial {
    let n_t = p.n_vars();
    let mut out = AbstractPolynomial::zero(p.ring(), n, n_t);
    for (m, c) in p.terms() {
        let mut term = AbstractPolynomial::constant_i64(p.ring(), n, n_t, 1).scale(c);
        for (j, &e) in m.0.iter().enumerate() {
            if e > 0 {
                term = term.mul(
                    &AbstractPolynomial::t_gen(p.ring(), n, n_t, j + 1).pow(e as usize),
                );
            }
        }
        out = out.add(&term);
    }
    out
}

/// The polynomial subtracted at one stage.  It vanishes identically on all
/// previously handled vertex sets and is nonzero on the current one.
fn stage_poly(
    family: Family,
    ring: Ring,
    n: usize,
    n_t: usize,
    q: usize,
    sign: i64,
) -> AbstractPolynomial {
    let tau = |i: usize| AbstractPolynomial::tau(ring, n, n_t, i);
    let tn = AbstractPolynomial::t_gen(ring, n, n_t, n);
    let mut p = AbstractPolynomial::constant_i64(ring, n, n_t, 1);
    if sign > 0 {
        for i in 1..q {
            p = p.mul(&tau(i).sub(&tn));
        }
        return p;
    }
    for l in 1..q {
        p = p.mul(&tau(l).add(&tn));
    }
    let alternating_f_sum = |top: usize| {
        // sum over k of (-1)^(top-k) f_k t_n^(top-k)
        let mut acc = AbstractPolynomial::zero(ring, n, n_t);
        for k in 1..=top {
            let mut term = AbstractPolynomial::f_gen(ring, n, n_t, k).mul(&tn.pow(top - k));
            if (top - k) % 2 == 1 {
                term = term.neg();
            }
            acc = acc.add(&term);
        }
        acc
    };
    match family {
        Family::B => p.mul(&alternating_f_sum(n)),
        Family::C => {
            let mut prod = AbstractPolynomial::constant_i64(ring, n, n_t, 1);
            for k in 1..=n {
                prod = prod.mul(&tau(k).sub(&tn));
            }
            p.mul(&prod)
        }
        Family::D => p.mul(&alternating_f_sum(n - 1)),
        Family::Dminus => {
            let q_poly =
                alternating_f_sum(n - 1).add(&AbstractPolynomial::e_t(ring, n, n_t, n - 1, n - 1));
            p.mul(&q_poly)
        }
        Family::A => unreachable!("family A has no negative stages"),
    }
}

/// The image of the sub-level `f_i` in the parent generators, valid on the
/// handled vertex set (`w(q) = n` for positive sign, `w(q) = -n` for
/// negative).
fn f_lift_image(ring: Ring, n: usize, n_t: usize, i: usize, sign: i64) -> AbstractPolynomial {
    let tn = AbstractPolynomial::t_gen(ring, n, n_t, n);
    let mut acc = AbstractPolynomial::zero(ring, n, n_t);
    for j in 0..i {
        let mut term = AbstractPolynomial::f_gen(ring, n, n_t, i - j).mul(&tn.pow(j));
        if sign > 0 && j % 2 == 1 {
            term = term.neg();
        }
        acc = acc.add(&term);
    }
    if sign < 0 {
        for j in 1..=i {
            let e = AbstractPolynomial::e_t(ring, n, n_t, n - 1, i - j);
            acc = acc.add(&e.mul(&tn.pow(j)));
        }
    }
    acc
}

/// Substitute parent-level generators for the sub-level ones of a
/// recursively obtained expression.
fn lift(sub_out: &AbstractPolynomial, r: &Restriction, ring: Ring, n: usize) -> AbstractPolynomial {
    let m = sub_out.n();
    let n_t = sub_out.n_t();
    let mut images = Vec::with_capacity(2 * m + n_t);
    for i in 1..=m {
        images.push(AbstractPolynomial::tau(ring, n, n_t, r.parent_position(i)));
    }
    for i in 1..=m {
        images.push(f_lift_image(ring, n, n_t, i, r.sign()));
    }
    for j in 1..=n_t {
        images.push(AbstractPolynomial::t_gen(ring, n, n_t, j));
    }
    sub_out.substitute(&images)
}

fn reduce_values(
    graph: &Arc<LabeledGraph>,
    ring: Ring,
    k: usize,
    values: Vec<Polynomial>,
    limits: &Limits,
    trace: &mut Vec<String>,
    depth: usize,
) -> Result<AbstractPolynomial> {
    let (family, n) = graph
        .family()
        .ok_or_else(|| Error::Internal("reduction requires a built family graph".into()))?;
    let n_t = values
        .iter()
        .map(|p| p.n_vars())
        .max()
        .unwrap_or(graph.n_vars());
    let indent = "  ".repeat(depth);

    if values.iter().all(|p| p.is_zero()) {
        return Ok(AbstractPolynomial::zero(ring, n, n_t));
    }

    if graph.num_vertices() == 1 {
        trace.push(format!("{}{}{}: constant vertex", indent, family, n));
        return Ok(t_poly_to_abstract(n, &values[0].extend_vars(n_t)));
    }

    if n == 1 && (family == Family::B || family == Family::C) {
        let plus = graph
            .find_perm(&crate::weyl::GroupElement::from_images(vec![1])?)
            .ok_or_else(|| Error::Internal("missing identity vertex".into()))?;
        let minus = graph
            .find_perm(&crate::weyl::GroupElement::from_images(vec![-1])?)
            .ok_or_else(|| Error::Internal("missing flipped vertex".into()))?;
        let hp = values[plus].extend_vars(n_t);
        let hm = values[minus].extend_vars(n_t);
        let t1 = Polynomial::var(ring, n_t, 0);
        let divisor = if family == Family::B {
            t1.clone()
        } else {
            t1.scale(&Coeff::from_i64(ring, 2))
        };
        let g = hp.sub(&hm).divide_exact(&divisor).ok_or_else(|| {
            Error::Internal("rank-1 difference is not divisible by the edge label".into())
        })?;
        let head = t_poly_to_abstract(1, &hp);
        let cof = if family == Family::B {
            AbstractPolynomial::f_gen(ring, 1, n_t, 1)
        } else {
            AbstractPolynomial::tau(ring, 1, n_t, 1)
                .sub(&AbstractPolynomial::t_gen(ring, 1, n_t, 1))
        };
        trace.push(format!("{}{}1: two-vertex base case", indent, family));
        return Ok(head.add(&cof.mul(&t_poly_to_abstract(1, &g))));
    }

    let mut h: Vec<Polynomial> = values.iter().map(|p| p.extend_vars(n_t)).collect();
    let mut total = AbstractPolynomial::zero(ring, n, n_t);
    let signs: &[i64] = if family == Family::A { &[1] } else { &[1, -1] };

    for &sign in signs {
        for q in 1..=n {
            let target = sign * n as i64;
            let stage: Vec<usize> = (0..graph.num_vertices())
                .filter(|&v| {
                    graph
                        .vertex_perm(v)
                        .map(|w| w.images()[q - 1] as i64 == target)
                        .unwrap_or(false)
                })
                .collect();
            if stage.iter().all(|&v| h[v].is_zero()) {
                continue;
            }
            let stage_abs = stage_poly(family, ring, n, n_t, q, sign);
            let stage_deg = stage_abs.weighted_degree()?;
            let stage_class = stage_abs.evaluate(graph)?;

            let r = Restriction::new(graph, q, sign, limits)?;
            let sub = r.graph();
            let mut g_values = Vec::with_capacity(sub.num_vertices());
            for sv in 0..sub.num_vertices() {
                let pv = r.parent_vertex(sv);
                let g = h[pv].divide_exact(stage_class.value(pv)).ok_or_else(|| {
                    Error::Internal(format!(
                        "remainder at {} is not divisible by the stage polynomial",
                        graph.vertex_name(pv)
                    ))
                })?;
                g_values.push(g);
            }
            let k_g = k.checked_sub(stage_deg).ok_or_else(|| {
                Error::Internal("stage polynomial degree exceeds the class degree".into())
            })?;
            let g_class = CohomologyClass::member(sub, ring, k_g, g_values)?;
            trace.push(format!(
                "{}{}{}: V{}{} ({} vertices)",
                indent,
                family,
                n,
                q,
                if sign > 0 { "+" } else { "-" },
                stage.len()
            ));
            let sub_out = reduce_values(
                sub,
                ring,
                k_g,
                g_class.values().to_vec(),
                limits,
                trace,
                depth + 1,
            )?;
            let stage_total = lift(&sub_out, &r, ring, n).mul(&stage_abs);
            let subtract = stage_total.evaluate(graph)?;
            for v in 0..graph.num_vertices() {
                h[v] = h[v].sub(subtract.value(v));
            }
            for &v in &stage {
                if !h[v].is_zero() {
                    return Err(Error::Internal(format!(
                        "stage did not clear the remainder at {}",
                        graph.vertex_name(v)
                    )));
                }
            }
            total = total.add(&stage_total);
        }
    }
    if let Some(v) = (0..graph.num_vertices()).find(|&v| !h[v].is_zero()) {
        return Err(Error::Internal(format!(
            "reduction left a nonzero remainder at {}",
            graph.vertex_name(v)
        )));
    }
    Ok(total)
}

/// Express a class as a polynomial in the canonical generators of its
/// family's presentation.  Non-members are rejected up front; the result
/// is checked by evaluating it back.
pub fn reduce(h: &CohomologyClass, limits: &Limits) -> Result<ReductionCertificate> {
    let graph = h.graph().clone();
    let (family, n) = graph
        .family()
        .ok_or_else(|| Error::Usage("reduction requires a built family graph".into()))?;
    let ring = theorem_ring(family);
    let h = h.convert(ring)?.into_checked()?;

    let mut trace = Vec::new();
    let output = reduce_values(
        &graph,
        ring,
        h.k(),
        h.values().to_vec(),
        limits,
        &mut trace,
        0,
    )?;
    let back = output.evaluate(&graph)?;
    if !back.eq_values(&h) {
        return Err(Error::Internal(
            "round trip failed: the output does not evaluate to the input".into(),
        ));
    }
    Ok(ReductionCertificate {
        family,
        n,
        ring,
        output,
        trace,
    })
}
