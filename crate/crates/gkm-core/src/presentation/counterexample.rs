//! The explicit degree-6 class on the rank-2 long-root graph that is an
//! integral member but lies outside the integral span of the `τ`, `t`
//! monomials; doubling it lands back inside.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::cohomology::{graded_basis, CohomologyClass};
use crate::gkmgraph::{build_c, Family, LabeledGraph};
use crate::intlinalg::LatticeIndex;
use crate::poly::Polynomial;
use crate::presentation::{generator_lattice, AbstractPolynomial, GeneratorSet};
use crate::ring::{Coeff, Dyadic, Ring};
use crate::weyl::GroupElement;
use crate::{Error, Limits, Result};

/// The verified data around the class: every flag is asserted during
/// construction, so a returned value always carries the expected verdicts.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub graph: Arc<LabeledGraph>,
    pub class: CohomologyClass,
    pub member_over_int: bool,
    pub equals_half_product: bool,
    pub in_generator_lattice: bool,
    pub double_in_lattice: bool,
    pub index_at_k3: LatticeIndex,
}

fn t(nv: usize, j: usize) -> Polynomial {
    Polynomial::var(Ring::Int, nv, j - 1)
}

/// Build the class vertex by vertex and check all of its claims: integral
/// membership, agreement with half the product `(τ₁-t₂)(τ₂-t₂)(τ₁-τ₂+t₁+t₂)`,
/// exclusion from the degree-6 integral generator lattice with index
/// exactly 2, and containment of its double.
pub fn c2_counterexample(limits: &Limits) -> Result<Counterexample> {
    let graph = Arc::new(build_c(2, limits)?);
    let nv = graph.n_vars();
    let zero = Polynomial::zero(Ring::Int, nv);
    let two = Coeff::from_i64(Ring::Int, 2);

    // -2 t2 (t1 - t2)(t1 + t2)
    let at_1m2 = t(nv, 2)
        .mul(&t(nv, 1).sub(&t(nv, 2)))
        .mul(&t(nv, 1).add(&t(nv, 2)))
        .scale(&two)
        .neg();
    // 2 t2^2 (t1 + t2)
    let at_m1m2 = t(nv, 2)
        .mul(&t(nv, 2))
        .mul(&t(nv, 1).add(&t(nv, 2)))
        .scale(&two);
    // 2 t1 t2 (t1 + t2)
    let at_m2m1 = t(nv, 1)
        .mul(&t(nv, 2))
        .mul(&t(nv, 1).add(&t(nv, 2)))
        .scale(&two);

    let mut values = vec![zero; graph.num_vertices()];
    for (images, value) in [
        (vec![1, -2], at_1m2),
        (vec![-1, -2], at_m1m2),
        (vec![-2, -1], at_m2m1),
    ] {
        let w = GroupElement::from_images(images)?;
        let v = graph
            .find_perm(&w)
            .ok_or_else(|| Error::Internal("vertex lookup failed".into()))?;
        values[v] = value;
    }

    let class = CohomologyClass::member(&graph, Ring::Int, 3, values)?;
    let member_over_int = true;

    // 1/2 (tau1 - t2)(tau2 - t2)(tau1 - tau2 + t1 + t2) over the dyadic ring
    let r = Ring::Dyadic;
    let tau1 = AbstractPolynomial::tau(r, 2, 2, 1);
    let tau2 = AbstractPolynomial::tau(r, 2, 2, 2);
    let t1 = AbstractPolynomial::t_gen(r, 2, 2, 1);
    let t2 = AbstractPolynomial::t_gen(r, 2, 2, 2);
    let half = Coeff::from_dyadic(r, Dyadic::new(BigInt::one(), 1))?;
    let product = tau1
        .sub(&t2)
        .mul(&tau2.sub(&t2))
        .mul(&tau1.sub(&tau2).add(&t1).add(&t2))
        .scale(&half);
    let evaluated = product.evaluate(&graph)?;
    let equals_half_product = class.convert(Ring::Dyadic)?.eq_values(&evaluated);
    if !equals_half_product {
        return Err(Error::Internal(
            "class differs from half the product form".into(),
        ));
    }

    let graded = graded_basis(&graph, 3, Ring::Int, limits)?;
    let gen = generator_lattice(&graph, 3, GeneratorSet::TauT, Ring::Int, limits)?;
    let (vec, scale) = graded.encode(&class)?;
    debug_assert_eq!(scale, 0);
    let in_generator_lattice = gen.contains(&vec);
    if in_generator_lattice {
        return Err(Error::Internal(
            "class unexpectedly lies in the integral generator span".into(),
        ));
    }
    let doubled: Vec<BigInt> = vec.iter().map(|x| x * 2).collect();
    let double_in_lattice = gen.contains(&doubled);
    if !double_in_lattice {
        return Err(Error::Internal(
            "doubled class should lie in the integral generator span".into(),
        ));
    }

    let full = graded
        .lattice()
        .ok_or_else(|| Error::Internal("integral graded lattice missing".into()))?;
    let index_at_k3 = gen.index_in(full)?;
    if index_at_k3.to_string() != "2" {
        return Err(Error::Internal(format!(
            "degree-6 index is {}, expected 2",
            index_at_k3
        )));
    }

    debug_assert_eq!(graph.family(), Some((Family::C, 2)));
    Ok(Counterexample {
        graph,
        class,
        member_over_int,
        equals_half_product,
        in_generator_lattice,
        double_in_lattice,
        index_at_k3,
    })
}
