//! Ring presentations: abstract polynomials in the generators `τ_i`, `f_i`,
//! `t_j`, the per-family relation lists, and degree-by-degree certificates
//! comparing the lattice spanned by generator monomials with the full
//! cohomology lattice.

pub mod counterexample;
pub mod reduce;

pub use counterexample::{c2_counterexample, Counterexample};
pub use reduce::{reduce, ReductionCertificate};

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cohomology::{class_f, class_tau, coordinate_monomials, CohomologyClass};
use crate::gkmgraph::{Family, LabeledGraph};
use crate::intlinalg::{F2Matrix, IntMatrix, Lattice, LatticeIndex};
use crate::poly::{elementary_symmetric, Polynomial};
use crate::ring::{Coeff, Ring};
use crate::{Error, Limits, Result};

/// A polynomial in the abstract generators: `τ_1..τ_n`, `f_1..f_n`, and
/// `t_1..t_m` with `m ≥ n` (the excess `t` variables are parameters kept by
/// restrictions).  The grading weights are 1 for `τ_i` and `t_j` and `i`
/// for `f_i` (cohomological degrees are twice that).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractPolynomial {
    n: usize,
    poly: Polynomial,
}

impl AbstractPolynomial {
    fn tau_idx(n: usize, i: usize) -> usize {
        assert!((1..=n).contains(&i));
        i - 1
    }

    fn f_idx(n: usize, i: usize) -> usize {
        assert!((1..=n).contains(&i));
        n + i - 1
    }

    fn t_idx(n: usize, j: usize) -> usize {
        assert!(j >= 1);
        2 * n + j - 1
    }

    pub fn zero(ring: Ring, n: usize, n_t: usize) -> AbstractPolynomial {
        assert!(n_t >= n);
        AbstractPolynomial {
            n,
            poly: Polynomial::zero(ring, 2 * n + n_t),
        }
    }

    pub fn constant_i64(ring: Ring, n: usize, n_t: usize, c: i64) -> AbstractPolynomial {
        assert!(n_t >= n);
        AbstractPolynomial {
            n,
            poly: Polynomial::constant_i64(ring, 2 * n + n_t, c),
        }
    }

    pub fn tau(ring: Ring, n: usize, n_t: usize, i: usize) -> AbstractPolynomial {
        AbstractPolynomial {
            n,
            poly: Polynomial::var(ring, 2 * n + n_t, Self::tau_idx(n, i)),
        }
    }

    pub fn f_gen(ring: Ring, n: usize, n_t: usize, i: usize) -> AbstractPolynomial {
        AbstractPolynomial {
            n,
            poly: Polynomial::var(ring, 2 * n + n_t, Self::f_idx(n, i)),
        }
    }

    pub fn t_gen(ring: Ring, n: usize, n_t: usize, j: usize) -> AbstractPolynomial {
        assert!(j <= n_t);
        AbstractPolynomial {
            n,
            poly: Polynomial::var(ring, 2 * n + n_t, Self::t_idx(n, j)),
        }
    }

    /// `e_m(t_1..t_count)` as an abstract polynomial.
    pub fn e_t(ring: Ring, n: usize, n_t: usize, count: usize, m: usize) -> AbstractPolynomial {
        let total = 2 * n + n_t;
        let args: Vec<Polynomial> = (1..=count)
            .map(|j| Polynomial::var(ring, total, Self::t_idx(n, j)))
            .collect();
        AbstractPolynomial {
            n,
            poly: elementary_symmetric(ring, total, &args, m),
        }
    }

    /// `e_m` of the `τ` generators (optionally squared).
    pub fn e_tau(ring: Ring, n: usize, n_t: usize, m: usize, squared: bool) -> AbstractPolynomial {
        let total = 2 * n + n_t;
        let args: Vec<Polynomial> = (1..=n)
            .map(|i| {
                let v = Polynomial::var(ring, total, Self::tau_idx(n, i));
                if squared {
                    v.mul(&v)
                } else {
                    v
                }
            })
            .collect();
        AbstractPolynomial {
            n,
            poly: elementary_symmetric(ring, total, &args, m),
        }
    }

    /// `e_m` of the squared `t` generators.
    pub fn e_t_squared(ring: Ring, n: usize, n_t: usize, m: usize) -> AbstractPolynomial {
        let total = 2 * n + n_t;
        let args: Vec<Polynomial> = (1..=n)
            .map(|j| {
                let v = Polynomial::var(ring, total, Self::t_idx(n, j));
                v.mul(&v)
            })
            .collect();
        AbstractPolynomial {
            n,
            poly: elementary_symmetric(ring, total, &args, m),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn n_t(&self) -> usize {
        self.poly.n_vars() - 2 * self.n
    }

    pub fn ring(&self) -> Ring {
        self.poly.ring()
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Pad the `t` block (it sits last, so this is a plain extension).
    pub fn extend_t(&self, n_t: usize) -> AbstractPolynomial {
        assert!(n_t >= self.n_t());
        AbstractPolynomial {
            n: self.n,
            poly: self.poly.extend_vars(2 * self.n + n_t),
        }
    }

    fn align(&self, other: &AbstractPolynomial) -> (AbstractPolynomial, AbstractPolynomial) {
        assert_eq!(self.n, other.n, "generator arity mismatch");
        let n_t = self.n_t().max(other.n_t());
        (self.extend_t(n_t), other.extend_t(n_t))
    }

    pub fn add(&self, other: &AbstractPolynomial) -> AbstractPolynomial {
        let (a, b) = self.align(other);
        AbstractPolynomial {
            n: a.n,
            poly: a.poly.add(&b.poly),
        }
    }

    pub fn sub(&self, other: &AbstractPolynomial) -> AbstractPolynomial {
        let (a, b) = self.align(other);
        AbstractPolynomial {
            n: a.n,
            poly: a.poly.sub(&b.poly),
        }
    }

    pub fn neg(&self) -> AbstractPolynomial {
        AbstractPolynomial {
            n: self.n,
            poly: self.poly.neg(),
        }
    }

    pub fn mul(&self, other: &AbstractPolynomial) -> AbstractPolynomial {
        let (a, b) = self.align(other);
        AbstractPolynomial {
            n: a.n,
            poly: a.poly.mul(&b.poly),
        }
    }

    pub fn scale(&self, c: &Coeff) -> AbstractPolynomial {
        AbstractPolynomial {
            n: self.n,
            poly: self.poly.scale(c),
        }
    }

    pub fn pow(&self, e: usize) -> AbstractPolynomial {
        AbstractPolynomial {
            n: self.n,
            poly: self.poly.pow(e),
        }
    }

    pub fn convert(&self, ring: Ring) -> Result<AbstractPolynomial> {
        Ok(AbstractPolynomial {
            n: self.n,
            poly: self.poly.convert(ring)?,
        })
    }

    pub fn uses_f(&self) -> bool {
        self.max_f_used() > 0
    }

    /// Largest `i` with `f_i` occurring (0 when none do).
    pub fn max_f_used(&self) -> usize {
        let n = self.n;
        self.poly
            .terms()
            .flat_map(|(m, _)| {
                m.0[n..2 * n]
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, _)| i + 1)
            })
            .max()
            .unwrap_or(0)
    }

    /// The common weighted degree of all terms (`τ`, `t` weigh 1, `f_i`
    /// weighs `i`); cohomological degree is twice this.
    pub fn weighted_degree(&self) -> Result<usize> {
        let n = self.n;
        let mut degree = None;
        for (m, _) in self.poly.terms() {
            let mut d = 0usize;
            for (idx, &e) in m.0.iter().enumerate() {
                let w = if (n..2 * n).contains(&idx) { idx - n + 1 } else { 1 };
                d += w * e as usize;
            }
            match degree {
                None => degree = Some(d),
                Some(prev) if prev != d => {
                    return Err(Error::Usage(format!(
                        "mixed weighted degrees {} and {}",
                        prev, d
                    )))
                }
                _ => {}
            }
        }
        Ok(degree.unwrap_or(0))
    }

    /// Substitute every variable; `images` are indexed like the internal
    /// layout (`τ` block, `f` block, `t` block) and must share one arity.
    pub fn substitute(&self, images: &[AbstractPolynomial]) -> AbstractPolynomial {
        assert_eq!(images.len(), self.poly.n_vars());
        let n = images.first().map_or(self.n, |a| a.n);
        let n_t = images.iter().map(|a| a.n_t()).max().unwrap_or(0);
        let polys: Vec<Polynomial> = images
            .iter()
            .map(|a| {
                assert_eq!(a.n, n, "substitution images must share arity");
                a.extend_t(n_t).poly
            })
            .collect();
        AbstractPolynomial {
            n,
            poly: self.poly.substitute(&polys),
        }
    }

    /// Evaluate on a built family graph by substituting the canonical
    /// classes pointwise.
    pub fn evaluate(&self, graph: &Arc<LabeledGraph>) -> Result<CohomologyClass> {
        let (family, gn) = graph
            .family()
            .ok_or_else(|| Error::Usage("evaluation needs a built family graph".into()))?;
        if gn != self.n {
            return Err(Error::Usage(format!(
                "generator arity {} does not match the rank-{} graph",
                self.n, gn
            )));
        }
        let max_f = self.max_f_used();
        match family {
            Family::A | Family::C if max_f > 0 => {
                return Err(Error::Usage(format!(
                    "family {} has no f generators",
                    family
                )))
            }
            Family::Dminus if max_f >= gn => {
                return Err(Error::Usage(
                    "f_n is not a generator on the odd D component".into(),
                ))
            }
            _ => {}
        }
        let ring = self.ring();
        let n = self.n;
        let nv = graph.n_vars().max(self.n_t());
        let k = self.weighted_degree()?;

        let taus: Vec<CohomologyClass> = (1..=n)
            .map(|i| class_tau(graph, i))
            .collect::<Result<Vec<_>>>()?;
        let fs: Vec<CohomologyClass> = (1..=max_f)
            .map(|i| class_f(graph, i))
            .collect::<Result<Vec<_>>>()?;

        let mut values = Vec::with_capacity(graph.num_vertices());
        for v in 0..graph.num_vertices() {
            let mut images = Vec::with_capacity(self.poly.n_vars());
            for tau in &taus {
                images.push(tau.value(v).convert(ring)?.extend_vars(nv));
            }
            for i in 0..n {
                if i < max_f {
                    images.push(fs[i].value(v).convert(ring)?.extend_vars(nv));
                } else {
                    images.push(Polynomial::zero(ring, nv));
                }
            }
            for j in 0..self.n_t() {
                images.push(Polynomial::var(ring, nv, j));
            }
            values.push(self.poly.substitute(&images));
        }
        CohomologyClass::member(graph, ring, k, values)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n;
        let terms: Vec<serde_json::Value> = self
            .poly
            .terms()
            .map(|(m, c)| {
                serde_json::json!({
                    "tau": m.0[..n].iter().map(|&e| e as u64).collect::<Vec<_>>(),
                    "f": m.0[n..2 * n].iter().map(|&e| e as u64).collect::<Vec<_>>(),
                    "t": m.0[2 * n..].iter().map(|&e| e as u64).collect::<Vec<_>>(),
                    "coef": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "arity": n,
            "ring": self.ring().name(),
            "terms": terms,
            "pretty": self.to_string(),
        })
    }
}

impl std::fmt::Display for AbstractPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.n;
        self.poly.format_with(f, &|idx| {
            if idx < n {
                format!("tau{}", idx + 1)
            } else if idx < 2 * n {
                format!("f{}", idx - n + 1)
            } else {
                format!("t{}", idx - 2 * n + 1)
            }
        })
    }
}

/// Which canonical classes generate the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSet {
    TauT,
    TauTF,
}

/// A family presentation: generators and the relation list.
#[derive(Clone, Debug)]
pub struct PresentationSpec {
    pub family: Family,
    pub n: usize,
    pub ring: Ring,
    pub generators: GeneratorSet,
    /// number of `f` generators (0 unless the set is `TauTF`)
    pub num_f: usize,
    pub relations: Vec<(String, AbstractPolynomial)>,
}

/// `Σ_{j=1}^{2k} (-1)^j f_j (f_{2k-j} + e_{2k-j}(t))`, with the images of
/// the formal `f_j` supplied by the caller (so out-of-range indices can be
/// zeroed or substituted).
fn quadratic_relation(
    ring: Ring,
    n: usize,
    k: usize,
    f_image: &dyn Fn(usize) -> AbstractPolynomial,
) -> AbstractPolynomial {
    let mut acc = AbstractPolynomial::zero(ring, n, n);
    for j in 1..=2 * k {
        let e = AbstractPolynomial::e_t(ring, n, n, n, 2 * k - j);
        let term = f_image(j).mul(&f_image(2 * k - j).add(&e));
        acc = if j % 2 == 1 { acc.sub(&term) } else { acc.add(&term) };
    }
    acc
}

/// The presentation of each family's cohomology ring.
pub fn presentation_for(family: Family, n: usize) -> Result<PresentationSpec> {
    if n == 0 {
        return Err(Error::Usage("rank must be positive".into()));
    }
    let mut relations: Vec<(String, AbstractPolynomial)> = Vec::new();
    let (ring, generators, num_f);
    match family {
        Family::A => {
            ring = Ring::Int;
            generators = GeneratorSet::TauT;
            num_f = 0;
            for i in 1..=n {
                let rel = AbstractPolynomial::e_tau(ring, n, n, i, false)
                    .sub(&AbstractPolynomial::e_t(ring, n, n, n, i));
                relations.push((format!("e{}(tau)-e{}(t)", i, i), rel));
            }
        }
        Family::C => {
            ring = Ring::Dyadic;
            generators = GeneratorSet::TauT;
            num_f = 0;
            for i in 1..=n {
                let rel = AbstractPolynomial::e_tau(ring, n, n, i, true)
                    .sub(&AbstractPolynomial::e_t_squared(ring, n, n, i));
                relations.push((format!("e{}(tau^2)-e{}(t^2)", i, i), rel));
            }
        }
        Family::B | Family::D | Family::Dminus => {
            ring = Ring::Int;
            generators = GeneratorSet::TauTF;
            num_f = if family == Family::B { n } else { n - 1 };
            for i in 1..=num_f {
                let rel = AbstractPolynomial::f_gen(ring, n, n, i)
                    .scale(&Coeff::from_i64(ring, 2))
                    .sub(&AbstractPolynomial::e_tau(ring, n, n, i, false))
                    .add(&AbstractPolynomial::e_t(ring, n, n, n, i));
                relations.push((format!("2f{}-e{}(tau)+e{}(t)", i, i, i), rel));
            }
            let zero = AbstractPolynomial::zero(ring, n, n);
            let f_image: Box<dyn Fn(usize) -> AbstractPolynomial> = match family {
                Family::B => Box::new(move |j: usize| {
                    if (1..=n).contains(&j) {
                        AbstractPolynomial::f_gen(ring, n, n, j)
                    } else {
                        zero.clone()
                    }
                }),
                Family::D => Box::new(move |j: usize| {
                    if (1..n).contains(&j) {
                        AbstractPolynomial::f_gen(ring, n, n, j)
                    } else {
                        zero.clone()
                    }
                }),
                Family::Dminus => Box::new(move |j: usize| {
                    if (1..n).contains(&j) {
                        AbstractPolynomial::f_gen(ring, n, n, j)
                    } else if j == n {
                        AbstractPolynomial::e_t(ring, n, n, n, n).neg()
                    } else {
                        zero.clone()
                    }
                }),
                _ => unreachable!(),
            };
            for k in 1..=n {
                relations.push((format!("R{}", k), quadratic_relation(ring, n, k, &*f_image)));
            }
            if family == Family::D {
                let rel = AbstractPolynomial::e_tau(ring, n, n, n, false)
                    .sub(&AbstractPolynomial::e_t(ring, n, n, n, n));
                relations.push((format!("e{}(tau)-e{}(t)", n, n), rel));
            }
            if family == Family::Dminus {
                let rel = AbstractPolynomial::e_tau(ring, n, n, n, false)
                    .add(&AbstractPolynomial::e_t(ring, n, n, n, n));
                relations.push((format!("e{}(tau)+e{}(t)", n, n), rel));
            }
        }
    }
    Ok(PresentationSpec {
        family,
        n,
        ring,
        generators,
        num_f,
        relations,
    })
}

/// Per-relation evaluation results.
#[derive(Clone, Debug)]
pub struct RelationReport {
    pub items: Vec<(String, bool)>,
    pub all_pass: bool,
}

/// Evaluate every relation of the presentation on the graph; each must
/// vanish identically.
pub fn verify_relations(spec: &PresentationSpec, graph: &Arc<LabeledGraph>) -> Result<RelationReport> {
    let mut items = Vec::with_capacity(spec.relations.len());
    let mut all_pass = true;
    for (name, rel) in &spec.relations {
        let pass = rel.evaluate(graph)?.is_zero();
        all_pass &= pass;
        items.push((name.clone(), pass));
    }
    Ok(RelationReport { items, all_pass })
}

/// One generator with its weight, values, and optional exponent cap.
struct PoolEntry {
    weight: usize,
    cap: Option<usize>,
    values: Vec<Polynomial>,
}

/// Exponent caps for the bounded generation claims.
#[derive(Clone, Copy, Debug, Default)]
pub struct SpanCaps {
    /// cap on `τ_i`, as a function of `i` (1-based)
    pub tau: Option<fn(n: usize, i: usize) -> usize>,
    /// cap every `f` exponent at 1
    pub f_at_most_once: bool,
}

fn generator_pool(
    graph: &Arc<LabeledGraph>,
    gens: GeneratorSet,
    caps: &SpanCaps,
) -> Result<Vec<PoolEntry>> {
    let (_, n) = graph
        .family()
        .ok_or_else(|| Error::Usage("generator lattices need a built family graph".into()))?;
    let mut pool = Vec::new();
    for i in 1..=n {
        let tau = class_tau(graph, i)?;
        pool.push(PoolEntry {
            weight: 1,
            cap: caps.tau.map(|f| f(n, i)),
            values: tau.values().to_vec(),
        });
    }
    if gens == GeneratorSet::TauTF {
        let num_f = match graph.family().map(|(f, _)| f) {
            Some(Family::B) => n,
            Some(Family::D) | Some(Family::Dminus) => n - 1,
            _ => {
                return Err(Error::Usage(
                    "f generators exist only on the B and D families".into(),
                ))
            }
        };
        for i in 1..=num_f {
            let f = class_f(graph, i)?;
            pool.push(PoolEntry {
                weight: i,
                cap: if caps.f_at_most_once { Some(1) } else { None },
                values: f.values().to_vec(),
            });
        }
    }
    for j in 0..graph.n_vars() {
        let t = Polynomial::var(Ring::Int, graph.n_vars(), j);
        pool.push(PoolEntry {
            weight: 1,
            cap: None,
            values: vec![t; graph.num_vertices()],
        });
    }
    Ok(pool)
}

/// Rows of generator-monomial evaluations in the (vertex, monomial)
/// coordinates of degree `2k`.
fn span_rows(
    graph: &Arc<LabeledGraph>,
    k: usize,
    gens: GeneratorSet,
    caps: &SpanCaps,
    limits: &Limits,
) -> Result<Vec<Vec<BigInt>>> {
    let monomials = coordinate_monomials(graph, k);
    let index_of: BTreeMap<_, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let width = graph.num_vertices() * monomials.len();
    if width > limits.max_matrix_cols {
        return Err(Error::Resource(format!(
            "coordinate space needs {} columns (cap {})",
            width, limits.max_matrix_cols
        )));
    }
    let pool = generator_pool(graph, gens, caps)?;
    let nm = monomials.len();
    let one = vec![Polynomial::constant_i64(Ring::Int, graph.n_vars(), 1); graph.num_vertices()];
    let mut rows = Vec::new();

    fn recurse(
        pool: &[PoolEntry],
        idx: usize,
        rem: usize,
        cur: &[Polynomial],
        nm: usize,
        index_of: &BTreeMap<crate::poly::Monomial, usize>,
        width: usize,
        rows: &mut Vec<Vec<BigInt>>,
    ) {
        if idx == pool.len() {
            if rem == 0 {
                let mut row = vec![BigInt::zero(); width];
                for (v, p) in cur.iter().enumerate() {
                    for (m, c) in p.terms() {
                        let mi = index_of[m];
                        row[v * nm + mi] = match c {
                            Coeff::Int(z) => z.clone(),
                            _ => unreachable!("span rows are integral"),
                        };
                    }
                }
                rows.push(row);
            }
            return;
        }
        let entry = &pool[idx];
        let max_e = {
            let by_weight = rem / entry.weight;
            entry.cap.map_or(by_weight, |c| c.min(by_weight))
        };
        let mut acc: Vec<Polynomial> = cur.to_vec();
        for e in 0..=max_e {
            if e > 0 {
                acc = acc
                    .iter()
                    .zip(&entry.values)
                    .map(|(p, g)| p.mul(g))
                    .collect();
            }
            recurse(
                pool,
                idx + 1,
                rem - e * entry.weight,
                &acc,
                nm,
                index_of,
                width,
                rows,
            );
        }
    }

    recurse(&pool, 0, k, &one, nm, &index_of, width, &mut rows);
    Ok(rows)
}

/// The lattice spanned by all degree-`2k` generator monomials, in the same
/// coordinates as `graded_basis` (2-saturated when the ring is dyadic).
pub fn generator_lattice(
    graph: &Arc<LabeledGraph>,
    k: usize,
    gens: GeneratorSet,
    ring: Ring,
    limits: &Limits,
) -> Result<Lattice> {
    let rows = span_rows(graph, k, gens, &SpanCaps::default(), limits)?;
    let width = graph.num_vertices() * coordinate_monomials(graph, k).len();
    let lattice = Lattice::from_rows(width, rows);
    Ok(match ring {
        Ring::Int => lattice,
        Ring::Dyadic => lattice.saturate_at_2(),
        Ring::Mod2 => {
            return Err(Error::Usage(
                "use the mod-2 span routines for the 2-element field".into(),
            ))
        }
    })
}

fn row_space_mod2(
    graph: &Arc<LabeledGraph>,
    k: usize,
    gens: GeneratorSet,
    caps: &SpanCaps,
    limits: &Limits,
) -> Result<F2Matrix> {
    let rows = span_rows(graph, k, gens, caps, limits)?;
    let width = graph.num_vertices() * coordinate_monomials(graph, k).len();
    let m = IntMatrix::from_rows(width, rows);
    Ok(F2Matrix::from_int_matrix(&m).row_space())
}

fn lattice_eq(a: &Lattice, b: &Lattice) -> bool {
    a.ambient_dim() == b.ambient_dim()
        && a.rank() == b.rank()
        && a.basis().row_vecs() == b.basis().row_vecs()
}

fn f2_eq(a: &F2Matrix, b: &F2Matrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j) == b.get(i, j)))
}

/// Check the bounded-exponent generation claims at degree `2k`: capped
/// generator monomials span the same module as uncapped ones.  Family A
/// caps `τ_i` at `n-i` over the integers; family C caps at `2(n-i)+1` over
/// the dyadic ring (the relations only involve squares, so one odd factor
/// of each `τ_i` survives on top of the squared-variable caps); family B
/// caps `τ_i` at `n-i` and every `f` exponent at 1, over the 2-element
/// field.
pub fn bounded_monomial_span_check(
    family: Family,
    n: usize,
    k: usize,
    limits: &Limits,
) -> Result<bool> {
    let graph = Arc::new(crate::gkmgraph::build_family(family, n, limits)?);
    match family {
        Family::A => {
            let caps = SpanCaps {
                tau: Some(|n, i| n - i),
                f_at_most_once: false,
            };
            let full = generator_lattice(&graph, k, GeneratorSet::TauT, Ring::Int, limits)?;
            let capped_rows = span_rows(&graph, k, GeneratorSet::TauT, &caps, limits)?;
            let capped = Lattice::from_rows(full.ambient_dim(), capped_rows);
            Ok(lattice_eq(&full, &capped))
        }
        Family::C => {
            let caps = SpanCaps {
                tau: Some(|n, i| 2 * (n - i) + 1),
                f_at_most_once: false,
            };
            let full = generator_lattice(&graph, k, GeneratorSet::TauT, Ring::Dyadic, limits)?;
            let capped_rows = span_rows(&graph, k, GeneratorSet::TauT, &caps, limits)?;
            let capped = Lattice::from_rows(full.ambient_dim(), capped_rows).saturate_at_2();
            Ok(lattice_eq(&full, &capped))
        }
        Family::B => {
            let caps = SpanCaps {
                tau: Some(|n, i| n - i),
                f_at_most_once: true,
            };
            let full =
                row_space_mod2(&graph, k, GeneratorSet::TauTF, &SpanCaps::default(), limits)?;
            let capped = row_space_mod2(&graph, k, GeneratorSet::TauTF, &caps, limits)?;
            Ok(f2_eq(&full, &capped))
        }
        _ => Err(Error::Usage(format!(
            "no bounded generation claim for family {}",
            family
        ))),
    }
}

/// One degree of a presentation certificate.
#[derive(Clone, Debug)]
pub struct DegreeCertificate {
    pub k: usize,
    pub rank: usize,
    /// index of the generator lattice inside the cohomology lattice
    pub index: LatticeIndex,
    pub relations_pass: bool,
    /// bounded-exponent span check, where the family has one
    pub span_ok: Option<bool>,
}

/// A degree-by-degree verification up to a stated bound; not a proof for
/// all degrees.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub family: Family,
    pub n: usize,
    pub max_k: usize,
    pub ring: Ring,
    pub relations: Vec<(String, bool)>,
    pub per_degree: Vec<DegreeCertificate>,
    pub verified: bool,
}

impl Certificate {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "family": self.family.name(),
            "n": self.n,
            "K": self.max_k,
            "ring": self.ring.name(),
            "relations": self.relations.iter().map(|(name, ok)| {
                serde_json::json!({"relation": name, "vanishes": ok})
            }).collect::<Vec<_>>(),
            "per_degree": self.per_degree.iter().map(|d| {
                let mut obj = serde_json::json!({
                    "k": d.k,
                    "rank": d.rank,
                    "index": d.index.to_string(),
                    "relations_pass": d.relations_pass,
                });
                if let Some(ok) = d.span_ok {
                    obj["span_ok"] = serde_json::json!(ok);
                }
                obj
            }).collect::<Vec<_>>(),
            "verified": self.verified,
        })
    }
}

/// Default coefficient ring of each family's presentation.
pub fn theorem_ring(family: Family) -> Ring {
    match family {
        Family::C => Ring::Dyadic,
        _ => Ring::Int,
    }
}

/// Verify the presentation degree by degree up to `max_k`: the relations
/// vanish and the generator monomials span the full cohomology lattice
/// (index 1).  Over other rings the certificate still records ranks and
/// indices; `verified` is true only if every index is 1, every relation
/// vanishes, and the span checks pass.
pub fn verify_presentation(
    family: Family,
    n: usize,
    max_k: usize,
    ring: Ring,
    limits: &Limits,
) -> Result<Certificate> {
    if ring == Ring::Mod2 {
        return Err(Error::Usage(
            "presentation certificates are computed over Int or Dyadic".into(),
        ));
    }
    let graph = Arc::new(crate::gkmgraph::build_family(family, n, limits)?);
    let spec = presentation_for(family, n)?;
    let mut spec_ring = spec;
    // relations are checked over the requested ring
    if ring != spec_ring.ring {
        spec_ring.relations = spec_ring
            .relations
            .into_iter()
            .map(|(name, rel)| rel.convert(ring).map(|r| (name, r)))
            .collect::<Result<Vec<_>>>()?;
        spec_ring.ring = ring;
    }
    let relations = verify_relations(&spec_ring, &graph)?;

    let mut per_degree = Vec::with_capacity(max_k + 1);
    let mut verified = relations.all_pass;
    for k in 0..=max_k {
        let graded = crate::cohomology::graded_basis(&graph, k, ring, limits)?;
        let gen = generator_lattice(&graph, k, spec_ring.generators, ring, limits)?;
        let full = graded
            .lattice()
            .ok_or_else(|| Error::Internal("graded lattice missing".into()))?;
        let index = gen.index_in(full).map_err(|_| {
            Error::Internal("generator span escapes the cohomology lattice".into())
        })?;
        let span_ok = match family {
            Family::A | Family::B | Family::C => {
                Some(bounded_monomial_span_check(family, n, k, limits)?)
            }
            _ => None,
        };
        let ok_index = matches!(&index, LatticeIndex::Finite(v) if v.is_one());
        verified &= ok_index && span_ok != Some(false);
        per_degree.push(DegreeCertificate {
            k,
            rank: graded.rank(),
            index,
            relations_pass: relations.all_pass,
            span_ok,
        });
    }
    Ok(Certificate {
        family,
        n,
        max_k,
        ring,
        relations: relations.items,
        per_degree,
        verified,
    })
}
