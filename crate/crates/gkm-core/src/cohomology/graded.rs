//! Degree-by-degree computation of the cohomology of a labeled graph.
//!
//! Fix a degree `2k`.  A candidate class is a vector of degree-`k`
//! coefficients, one per (vertex, monomial) pair.  Divisibility along an
//! edge is encoded with explicit witness unknowns: `h(a) - h(b) = ℓ(e)·g_e`
//! with `g_e` an unknown polynomial of degree `k-1`.  The solution set is
//! the kernel of an integer matrix; projecting away the witnesses leaves
//! the cohomology lattice in the (vertex, monomial) coordinates.  This
//! uniform encoding stays correct over the integers even for labels like
//! `2t_i`, where quotient-by-label has 2-torsion, and it degrades cleanly
//! to the 2-element field (where such a label vanishes and the edge simply
//! forces equality).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::gkmgraph::LabeledGraph;
use crate::intlinalg::{F2Matrix, IntMatrix, Lattice};
use crate::poly::{Monomial, Polynomial};
use crate::ring::{Coeff, Ring};
use crate::{Error, Limits, Result};

use super::{coordinate_monomials, CohomologyClass};

/// The degree-`2k` piece of a graph's cohomology over a coefficient ring.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    graph: Arc<LabeledGraph>,
    k: usize,
    ring: Ring,
    monomials: Vec<Monomial>,
    index_of: BTreeMap<Monomial, usize>,
    repr: BasisRepr,
}

#[derive(Clone, Debug)]
enum BasisRepr {
    /// HNF-canonical lattice (2-saturated when the ring is dyadic)
    Lattice(Lattice),
    /// canonical RREF basis over the 2-element field
    F2(F2Matrix),
}

impl GradedPiece {
    pub fn graph(&self) -> &Arc<LabeledGraph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rank(&self) -> usize {
        match &self.repr {
            BasisRepr::Lattice(l) => l.rank(),
            BasisRepr::F2(m) => m.rows(),
        }
    }

    /// The coordinate monomials, shared with generator lattices.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// The integer coordinate lattice (absent over the 2-element field).
    pub fn lattice(&self) -> Option<&Lattice> {
        match &self.repr {
            BasisRepr::Lattice(l) => Some(l),
            BasisRepr::F2(_) => None,
        }
    }

    pub fn f2_basis(&self) -> Option<&F2Matrix> {
        match &self.repr {
            BasisRepr::F2(m) => Some(m),
            BasisRepr::Lattice(_) => None,
        }
    }

    fn coords_len(&self) -> usize {
        self.graph.num_vertices() * self.monomials.len()
    }

    /// Coordinates of a class, scaled integral: returns `(vector, e)` with
    /// the vector equal to `2^e` times the class.
    pub fn encode(&self, h: &CohomologyClass) -> Result<(Vec<BigInt>, u32)> {
        if h.k() != self.k && !h.is_zero() {
            return Err(Error::Usage(format!(
                "degree mismatch: class has 2k = {}, piece has {}",
                h.degree(),
                2 * self.k
            )));
        }
        if h.ring() != self.ring {
            return Err(Error::Usage("ring mismatch in encode".into()));
        }
        let nv = self.graph.n_vars();
        let mut scale = 0u32;
        if self.ring == Ring::Dyadic {
            for p in h.values() {
                for (_, c) in p.terms() {
                    if let Coeff::Dyadic(d) = c {
                        scale = scale.max(d.exp());
                    }
                }
            }
        }
        let mut out = vec![BigInt::zero(); self.coords_len()];
        for (v, p) in h.values().iter().enumerate() {
            let p = if p.n_vars() > nv {
                p.drop_trailing_vars(p.n_vars() - nv)?
            } else {
                p.clone()
            };
            for (m, c) in p.terms() {
                let mi = *self
                    .index_of
                    .get(m)
                    .ok_or_else(|| Error::Internal("monomial outside degree".into()))?;
                let val = match c {
                    Coeff::Int(z) => z.clone(),
                    Coeff::Dyadic(d) => d.num() << (scale - d.exp()),
                    Coeff::Mod2(b) => {
                        if *b {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    }
                };
                out[v * self.monomials.len() + mi] = val;
            }
        }
        Ok((out, scale))
    }

    /// Whether the class lies in this graded piece over its ring.
    pub fn contains(&self, h: &CohomologyClass) -> Result<bool> {
        let (vec, _scale) = self.encode(h)?;
        match &self.repr {
            // the lattice is 2-saturated in dyadic mode, so the scaled
            // vector is inside exactly when the class is
            BasisRepr::Lattice(l) => Ok(l.contains(&vec)),
            BasisRepr::F2(m) => {
                let bits: Vec<bool> = vec.iter().map(|z| z.bit(0)).collect();
                Ok(m.row_space_contains(&bits))
            }
        }
    }

    fn decode_int_row(&self, row: &[BigInt]) -> CohomologyClass {
        let nv = self.graph.n_vars();
        let nm = self.monomials.len();
        let values = (0..self.graph.num_vertices())
            .map(|v| {
                Polynomial::from_terms(
                    self.ring,
                    nv,
                    self.monomials.iter().enumerate().filter_map(|(mi, m)| {
                        let z = &row[v * nm + mi];
                        if z.is_zero() {
                            None
                        } else {
                            Some((m.clone(), Coeff::from_bigint(self.ring, z.clone())))
                        }
                    }),
                )
            })
            .collect();
        CohomologyClass::from_values(&self.graph, self.ring, self.k, values)
            .expect("decoded basis row is well formed")
    }

    /// The basis, decoded to classes (each one a member by construction).
    pub fn basis_classes(&self) -> Vec<CohomologyClass> {
        match &self.repr {
            BasisRepr::Lattice(l) => l
                .basis()
                .row_vecs()
                .iter()
                .map(|r| self.decode_int_row(r))
                .collect(),
            BasisRepr::F2(m) => (0..m.rows())
                .map(|i| {
                    let row: Vec<BigInt> = m
                        .row_bits(i)
                        .iter()
                        .map(|&b| if b { BigInt::one() } else { BigInt::zero() })
                        .collect();
                    self.decode_int_row(&row)
                })
                .collect(),
        }
    }
}

/// Compute the degree-`2k` cohomology of the graph over the ring.
pub fn graded_basis(
    graph: &Arc<LabeledGraph>,
    k: usize,
    ring: Ring,
    limits: &Limits,
) -> Result<GradedPiece> {
    let monomials = coordinate_monomials(graph, k);
    let index_of: BTreeMap<Monomial, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.clone(), i))
        .collect();
    let repr = match ring {
        Ring::Int => BasisRepr::Lattice(integer_lattice(graph, k, &monomials, &index_of, limits)?),
        Ring::Dyadic => BasisRepr::Lattice(
            integer_lattice(graph, k, &monomials, &index_of, limits)?.saturate_at_2(),
        ),
        Ring::Mod2 => BasisRepr::F2(mod2_basis(graph, k, &monomials, &index_of, limits)?),
    };
    Ok(GradedPiece {
        graph: graph.clone(),
        k,
        ring,
        monomials,
        index_of,
        repr,
    })
}

fn check_cols(cols: usize, limits: &Limits) -> Result<()> {
    if cols > limits.max_matrix_cols {
        return Err(Error::Resource(format!(
            "linear system needs {} columns (cap {})",
            cols, limits.max_matrix_cols
        )));
    }
    Ok(())
}

/// Positions and coefficients of `ℓ·m'` inside the degree-`k` monomials.
fn label_products(
    label: &[i64],
    lower: &[Monomial],
    index_of: &BTreeMap<Monomial, usize>,
) -> Vec<Vec<(usize, i64)>> {
    lower
        .iter()
        .map(|m| {
            label
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(j, &c)| {
                    let prod = m.mul(&Monomial::var(m.0.len(), j));
                    (index_of[&prod], c)
                })
                .collect()
        })
        .collect()
}

fn integer_lattice(
    graph: &LabeledGraph,
    k: usize,
    monomials: &[Monomial],
    index_of: &BTreeMap<Monomial, usize>,
    limits: &Limits,
) -> Result<Lattice> {
    let nm = monomials.len();
    let lower = if k == 0 {
        Vec::new()
    } else {
        coordinate_monomials(graph, k - 1)
    };
    let nl = lower.len();
    let nv_count = graph.num_vertices();
    let ne = graph.edges().len();
    let h_cols = nv_count * nm;
    let cols = h_cols + ne * nl;
    check_cols(cols, limits)?;

    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(ne * nm);
    for (ei, e) in graph.edges().iter().enumerate() {
        let prods = label_products(e.label.coeffs(), &lower, index_of);
        for mi in 0..nm {
            let mut row = vec![BigInt::zero(); cols];
            row[e.a * nm + mi] += 1;
            row[e.b * nm + mi] -= 1;
            for (li, hits) in prods.iter().enumerate() {
                for &(target, c) in hits {
                    if target == mi {
                        row[h_cols + ei * nl + li] -= c;
                    }
                }
            }
            rows.push(row);
        }
    }
    let a = IntMatrix::from_rows(cols, rows);
    let kernel = a.kernel_basis();
    let keep: Vec<usize> = (0..h_cols).collect();
    Ok(Lattice::from_matrix(kernel).project(&keep))
}

fn mod2_basis(
    graph: &LabeledGraph,
    k: usize,
    monomials: &[Monomial],
    index_of: &BTreeMap<Monomial, usize>,
    limits: &Limits,
) -> Result<F2Matrix> {
    let nm = monomials.len();
    let lower = if k == 0 {
        Vec::new()
    } else {
        coordinate_monomials(graph, k - 1)
    };
    let nl = lower.len();
    let h_cols = graph.num_vertices() * nm;

    // labels that vanish mod 2 carry no witnesses
    let live: Vec<Option<usize>> = {
        let mut offset = 0;
        graph
            .edges()
            .iter()
            .map(|e| {
                if e.label.coeffs().iter().all(|c| c % 2 == 0) {
                    None
                } else {
                    let o = offset;
                    offset += nl;
                    Some(o)
                }
            })
            .collect()
    };
    let witness_cols: usize = live.iter().flatten().count() * nl;
    let cols = h_cols + witness_cols;
    check_cols(cols, limits)?;

    let mut m = F2Matrix::zero(graph.edges().len() * nm, cols);
    for (ei, e) in graph.edges().iter().enumerate() {
        for mi in 0..nm {
            let r = ei * nm + mi;
            m.set(r, e.a * nm + mi, true);
            // -1 = 1 mod 2; a==b impossible (no self loops)
            m.set(r, e.b * nm + mi, true);
        }
        if let Some(off) = live[ei] {
            let label: Vec<i64> = e.label.coeffs().iter().map(|c| c.rem_euclid(2)).collect();
            let prods = label_products(&label, &lower, index_of);
            for (li, hits) in prods.iter().enumerate() {
                for &(target, c) in hits {
                    if c % 2 != 0 {
                        let r = ei * nm + target;
                        let col = h_cols + off + li;
                        m.set(r, col, !m.get(r, col));
                    }
                }
            }
        }
    }
    let kernel = m.kernel_basis();
    // project to the h block; the image is a subspace, not a coordinate
    // restriction, so canonicalize by row reduction
    let mut proj = F2Matrix::zero(kernel.rows(), h_cols);
    for i in 0..kernel.rows() {
        for j in 0..h_cols {
            proj.set(i, j, kernel.get(i, j));
        }
    }
    Ok(proj.row_space())
}
