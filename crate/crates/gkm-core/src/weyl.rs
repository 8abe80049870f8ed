//! Permutations and signed permutations in one-line notation, plus closure of
//! reflection sets into finite orthogonal groups.
//!
//! A signed permutation `w` sends `i` to `w(i)` with the sign rule
//! `w(-m) = -w(m)`; one-line notation lists `w(1) ... w(n)`.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Limits, Result};

/// A permutation or signed permutation, as its one-line image vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    images: Vec<i32>,
}

impl GroupElement {
    pub fn from_images(images: Vec<i32>) -> Result<GroupElement> {
        let n = images.len();
        if n == 0 {
            return Err(Error::Usage("empty one-line notation".into()));
        }
        let mut seen = vec![false; n];
        for &v in &images {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a - 1] {
                return Err(Error::Usage(format!(
                    "images {images:?} are not a signed permutation of 1..={n}"
                )));
            }
            seen[a - 1] = true;
        }
        Ok(GroupElement { images })
    }

    pub fn identity(n: usize) -> GroupElement {
        GroupElement { images: (1..=n as i32).collect() }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// `w(i)` for signed `i`.
    pub fn image(&self, i: i32) -> i32 {
        let a = i.unsigned_abs() as usize;
        assert!(a >= 1 && a <= self.images.len(), "index {i} out of range");
        if i > 0 {
            self.images[a - 1]
        } else {
            -self.images[a - 1]
        }
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        assert_eq!(self.n(), other.n(), "arity mismatch");
        GroupElement {
            images: (1..=self.n() as i32).map(|i| self.image(other.image(i))).collect(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        let mut images = vec![0; self.n()];
        for i in 1..=self.n() as i32 {
            let j = self.image(i);
            images[j.unsigned_abs() as usize - 1] = if j > 0 { i } else { -i };
        }
        GroupElement { images }
    }

    pub fn num_negative(&self) -> usize {
        self.images.iter().filter(|&&v| v < 0).count()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k as i32 + 1)
    }

    /// The transposition swapping `i` and `j` (one-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> GroupElement {
        assert!(i != j && i >= 1 && j >= 1 && i <= n && j <= n);
        let mut w = GroupElement::identity(n);
        w.images.swap(i - 1, j - 1);
        w
    }

    /// Sends `i` to `-j` and `j` to `-i`.
    pub fn neg_transposition(n: usize, i: usize, j: usize) -> GroupElement {
        let mut w = GroupElement::transposition(n, i, j);
        w.images[i - 1] = -w.images[i - 1];
        w.images[j - 1] = -w.images[j - 1];
        w
    }

    /// Sends `i` to `-i`.
    pub fn sign_flip(n: usize, i: usize) -> GroupElement {
        assert!(i >= 1 && i <= n);
        let mut w = GroupElement::identity(n);
        w.images[i - 1] = -w.images[i - 1];
        w
    }

    /// Space-separated signed one-line notation.
    pub fn one_line(&self) -> String {
        self.images.iter().map(|v| v.to_string()).join(" ")
    }

    /// Compact digit string when unambiguous (all images positive, n ≤ 9).
    pub fn one_line_compact(&self) -> String {
        if self.n() <= 9 && self.images.iter().all(|&v| v > 0) {
            self.images.iter().map(|v| v.to_string()).join("")
        } else {
            self.one_line()
        }
    }

    /// Accepts space-separated signed entries, or a compact digit string.
    pub fn parse(s: &str) -> Result<GroupElement> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Usage("empty one-line notation".into()));
        }
        let images: Vec<i32> = if s.contains(|c: char| c.is_whitespace()) || s.contains('-')
        {
            s.split_whitespace()
                .map(|tok| {
                    tok.parse::<i32>().map_err(|_| {
                        Error::Usage(format!("bad one-line entry {tok:?}"))
                    })
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d >= 1)
                        .map(|d| d as i32)
                        .ok_or_else(|| {
                            Error::Usage(format!("bad one-line digit {c:?} in {s:?}"))
                        })
                })
                .collect::<Result<_>>()?
        };
        GroupElement::from_images(images)
    }

    /// Push a linear form `sum c_i t_i` through `w`: `t_i -> t_{w(i)}` with
    /// `t_{-m} = -t_m`.
    pub fn apply_to_coeffs(&self, coeffs: &[i64]) -> Vec<i64> {
        assert_eq!(coeffs.len(), self.n());
        let mut out = vec![0i64; self.n()];
        for (idx, &c) in coeffs.iter().enumerate() {
            let w = self.images[idx];
            let pos = w.unsigned_abs() as usize - 1;
            out[pos] += if w > 0 { c } else { -c };
        }
        out
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.one_line())
    }
}

/// The four vertex families: permutations, signed permutations, and the even
/// and odd halves of the signed permutations (the odd half is a coset, not a
/// group).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WeylFamily {
    A,
    BC,
    Dplus,
    Dminus,
}

/// Number of elements, if it fits in a `u128`.
pub fn group_order(family: WeylFamily, n: usize) -> Option<u128> {
    let mut fact: u128 = 1;
    for k in 2..=n as u128 {
        fact = fact.checked_mul(k)?;
    }
    match family {
        WeylFamily::A => Some(fact),
        WeylFamily::BC => fact.checked_mul(1u128.checked_shl(n as u32)?),
        WeylFamily::Dplus | WeylFamily::Dminus => {
            fact.checked_mul(1u128.checked_shl(n as u32 - 1)?)
        }
    }
}

/// All elements of the family, sorted by one-line notation with the entry
/// order `-n < ... < -1 < 1 < ... < n`.
pub fn enumerate(family: WeylFamily, n: usize, limits: &Limits) -> Result<Vec<GroupElement>> {
    if n == 0 {
        return Err(Error::Usage("rank must be at least 1".into()));
    }
    let order = group_order(family, n)
        .filter(|&o| o <= limits.max_group_order as u128)
        .ok_or_else(|| {
            Error::Resource(format!(
                "group of rank {n} exceeds the {} element cap",
                limits.max_group_order
            ))
        })?;
    let mut out = Vec::with_capacity(order as usize);
    for perm in (1..=n as i32).permutations(n) {
        match family {
            WeylFamily::A => out.push(GroupElement { images: perm }),
            WeylFamily::BC | WeylFamily::Dplus | WeylFamily::Dminus => {
                for mask in 0u32..(1 << n) {
                    let negs = mask.count_ones() as usize;
                    let keep = match family {
                        WeylFamily::A => unreachable!(),
                        WeylFamily::BC => true,
                        WeylFamily::Dplus => negs % 2 == 0,
                        WeylFamily::Dminus => negs % 2 == 1,
                    };
                    if !keep {
                        continue;
                    }
                    let images: Vec<i32> = perm
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| if mask >> k & 1 == 1 { -v } else { v })
                        .collect();
                    out.push(GroupElement { images });
                }
            }
        }
    }
    debug_assert_eq!(out.len() as u128, order);
    out.sort();
    Ok(out)
}

/// An orthogonal linear map with rational entries, row-major.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct OrthogonalMap {
    rows: Vec<Vec<BigRational>>,
}

impl OrthogonalMap {
    pub fn identity(n: usize) -> OrthogonalMap {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        OrthogonalMap { rows }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// The reflection in the hyperplane orthogonal to `root`, for the
    /// standard inner product.
    pub fn reflection(root: &[i64]) -> Result<OrthogonalMap> {
        let n = root.len();
        let norm: i64 = root.iter().map(|&c| c * c).sum();
        if norm == 0 {
            return Err(Error::Usage("zero root".into()));
        }
        let mut m = OrthogonalMap::identity(n);
        for i in 0..n {
            for j in 0..n {
                // e_j -> e_j - 2 root_j / (root,root) * root
                let corr = BigRational::new(
                    BigInt::from(-2 * root[i] * root[j]),
                    BigInt::from(norm),
                );
                m.rows[i][j] += corr;
            }
        }
        Ok(m)
    }

    pub fn compose(&self, other: &OrthogonalMap) -> OrthogonalMap {
        let n = self.dim();
        assert_eq!(n, other.dim());
        let mut rows = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    if !other.rows[k][j].is_zero() {
                        let add = &self.rows[i][k] * &other.rows[k][j];
                        rows[i][j] += add;
                    }
                }
            }
        }
        OrthogonalMap { rows }
    }

    /// Image of an integer vector, if it is integral.
    pub fn apply_int(&self, v: &[i64]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim());
        self.rows
            .iter()
            .map(|row| {
                let s: BigRational = row
                    .iter()
                    .zip(v)
                    .map(|(a, &b)| a * BigRational::from(BigInt::from(b)))
                    .sum();
                if s.is_integer() {
                    Some(s.to_integer())
                } else {
                    None
                }
            })
            .collect()
    }

    /// Decode as a signed permutation when each column holds a single `±1`.
    pub fn as_signed_perm(&self) -> Option<GroupElement> {
        let n = self.dim();
        let mut images = vec![0i32; n];
        for j in 0..n {
            let mut found = 0i32;
            for i in 0..n {
                let v = &self.rows[i][j];
                if v.is_zero() {
                    continue;
                }
                if found != 0 || !v.is_integer() {
                    return None;
                }
                let x = v.to_integer();
                if x == BigInt::one() {
                    found = i as i32 + 1;
                } else if x == -BigInt::one() {
                    found = -(i as i32 + 1);
                } else {
                    return None;
                }
            }
            if found == 0 {
                return None;
            }
            images[j] = found;
        }
        GroupElement::from_images(images).ok()
    }
}

/// Closure of the reflections at the given roots under composition.
/// Deterministic order; errors out past `limits.max_group_order` elements.
pub fn generate_from_reflections(
    roots: &[Vec<i64>],
    limits: &Limits,
) -> Result<Vec<OrthogonalMap>> {
    let n = roots.first().map(|r| r.len()).ok_or_else(|| {
        Error::Usage("need at least one root".into())
    })?;
    if roots.iter().any(|r| r.len() != n) {
        return Err(Error::Usage("roots of mixed dimensions".into()));
    }
    let mut gens = Vec::new();
    for r in roots {
        let m = OrthogonalMap::reflection(r)?;
        if !gens.contains(&m) {
            gens.push(m);
        }
    }
    let mut seen: BTreeSet<OrthogonalMap> = BTreeSet::new();
    seen.insert(OrthogonalMap::identity(n));
    let mut frontier: Vec<OrthogonalMap> = vec![OrthogonalMap::identity(n)];
    while let Some(cur) = frontier.pop() {
        for g in &gens {
            let next = cur.compose(g);
            if seen.insert(next.clone()) {
                if seen.len() > limits.max_group_order {
                    return Err(Error::Resource(format!(
                        "reflection closure exceeds {} elements",
                        limits.max_group_order
                    )));
                }
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn el(s: &str) -> GroupElement {
        GroupElement::parse(s).unwrap()
    }

    #[test]
    fn family_sizes() {
        let limits = Limits::default();
        let a: Vec<usize> = (1..=5)
            .map(|n| enumerate(WeylFamily::A, n, &limits).unwrap().len())
            .collect();
        assert_eq!(a, [1, 2, 6, 24, 120]);
        let bc: Vec<usize> = (1..=5)
            .map(|n| enumerate(WeylFamily::BC, n, &limits).unwrap().len())
            .collect();
        assert_eq!(bc, [2, 8, 48, 384, 3840]);
        let dp: Vec<usize> = (1..=5)
            .map(|n| enumerate(WeylFamily::Dplus, n, &limits).unwrap().len())
            .collect();
        assert_eq!(dp, [1, 4, 24, 192, 1920]);
        let dm: Vec<usize> = (1..=5)
            .map(|n| enumerate(WeylFamily::Dminus, n, &limits).unwrap().len())
            .collect();
        assert_eq!(dm, [1, 4, 24, 192, 1920]);
    }

    #[test]
    fn enumeration_order_and_partition() {
        let limits = Limits::default();
        let a3: Vec<String> = enumerate(WeylFamily::A, 3, &limits)
            .unwrap()
            .iter()
            .map(|w| w.one_line_compact())
            .collect();
        assert_eq!(a3, ["123", "132", "213", "231", "312", "321"]);

        let bc1: Vec<String> = enumerate(WeylFamily::BC, 1, &limits)
            .unwrap()
            .iter()
            .map(|w| w.one_line())
            .collect();
        assert_eq!(bc1, ["-1", "1"]);

        // even/odd halves partition the signed permutations
        let bc = enumerate(WeylFamily::BC, 3, &limits).unwrap();
        let mut both = enumerate(WeylFamily::Dplus, 3, &limits).unwrap();
        both.extend(enumerate(WeylFamily::Dminus, 3, &limits).unwrap());
        both.sort();
        assert_eq!(both, bc);

        let dp2 = enumerate(WeylFamily::Dplus, 2, &limits).unwrap();
        let names: Vec<String> = dp2.iter().map(|w| w.one_line()).collect();
        assert_eq!(names, ["-2 -1", "-1 -2", "1 2", "2 1"]);

        assert!(enumerate(WeylFamily::A, 0, &limits).is_err());
        let tiny = Limits { max_group_order: 10, ..Limits::default() };
        assert!(matches!(
            enumerate(WeylFamily::BC, 3, &tiny),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn compose_and_sign_rule() {
        // right multiplication by a transposition swaps one-line values
        let w = el("213");
        let t = GroupElement::transposition(3, 1, 2);
        assert_eq!(w.compose(&t), el("123"));

        let id = GroupElement::identity(3);
        assert_eq!(w.compose(&id), w);

        // flipping the second position of (1,-2) restores (1,2)
        let v = el("1 -2");
        let f = GroupElement::sign_flip(2, 2);
        assert_eq!(v.compose(&f), el("1 2"));

        // sign rule w(-m) = -w(m)
        assert_eq!(v.image(-2), 2);
        assert_eq!(el("-2 1").image(1), -2);
    }

    #[test]
    fn inverse_and_associativity() {
        let limits = Limits::default();
        let all = enumerate(WeylFamily::BC, 3, &limits).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let w = all.choose(&mut rng).unwrap();
            let v = all.choose(&mut rng).unwrap();
            let u = all.choose(&mut rng).unwrap();
            assert_eq!(w.compose(&w.inverse()), GroupElement::identity(3));
            assert_eq!(w.inverse().compose(w), GroupElement::identity(3));
            assert_eq!(
                w.compose(v).compose(u),
                w.compose(&v.compose(u))
            );
        }
    }

    #[test]
    fn one_line_round_trips() {
        assert_eq!(el("213").one_line_compact(), "213");
        assert_eq!(el("2 -1 3").one_line(), "2 -1 3");
        assert_eq!(el("2 1 3"), el("213"));
        assert!(GroupElement::parse("11").is_err());
        assert!(GroupElement::parse("103").is_err());
        assert!(GroupElement::parse("1 3").is_err());
        assert!(GroupElement::parse("").is_err());
        // ten or more letters cannot print compactly
        let big = GroupElement::identity(10);
        assert_eq!(big.one_line(), "1 2 3 4 5 6 7 8 9 10");
    }

    #[test]
    fn action_on_forms() {
        // w = 21 sends t1 - t2 to its negative
        let w = el("21");
        assert_eq!(w.apply_to_coeffs(&[1, -1]), vec![-1, 1]);
        // identity fixes forms
        assert_eq!(GroupElement::identity(2).apply_to_coeffs(&[3, 5]), vec![3, 5]);
        // w = (-1, 2) sends t1 to -t1
        assert_eq!(el("-1 2").apply_to_coeffs(&[1, 0]), vec![-1, 0]);
    }

    #[test]
    fn reflection_closure_orders() {
        let limits = Limits::default();
        // single root: order 2
        let a1 = generate_from_reflections(&[vec![1, -1]], &limits).unwrap();
        assert_eq!(a1.len(), 2);

        // rank-2 classical root systems
        let c2 = generate_from_reflections(
            &[vec![1, -1], vec![1, 1], vec![2, 0], vec![0, 2]],
            &limits,
        )
        .unwrap();
        assert_eq!(c2.len(), 8);

        let b2 = generate_from_reflections(
            &[vec![1, -1], vec![1, 1], vec![1, 0], vec![0, 1]],
            &limits,
        )
        .unwrap();
        assert_eq!(b2.len(), 8);

        let d2 = generate_from_reflections(&[vec![1, -1], vec![1, 1]], &limits).unwrap();
        assert_eq!(d2.len(), 4);

        let a2 = generate_from_reflections(
            &[vec![1, -1, 0], vec![0, 1, -1], vec![1, 0, -1]],
            &limits,
        )
        .unwrap();
        assert_eq!(a2.len(), 6);

        // every element of a classical closure is a signed permutation
        assert!(c2.iter().all(|m| m.as_signed_perm().is_some()));

        // non-crystallographic data hits the resource cap instead of looping
        let tiny = Limits { max_group_order: 50, ..Limits::default() };
        assert!(matches!(
            generate_from_reflections(&[vec![1, 0], vec![1, 2]], &tiny),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn reflection_matrices() {
        let r = OrthogonalMap::reflection(&[1, -1]).unwrap();
        assert_eq!(r.as_signed_perm().unwrap(), GroupElement::transposition(2, 1, 2));
        let f = OrthogonalMap::reflection(&[2, 0]).unwrap();
        assert_eq!(f.as_signed_perm().unwrap(), GroupElement::sign_flip(2, 1));
        let nt = OrthogonalMap::reflection(&[1, 1]).unwrap();
        assert_eq!(nt.as_signed_perm().unwrap(), GroupElement::neg_transposition(2, 1, 2));
        // reflections square to the identity
        assert_eq!(r.compose(&r), OrthogonalMap::identity(2));
        // image of an integer vector
        assert_eq!(
            r.apply_int(&[1, 0]).unwrap(),
            vec![BigInt::from(0), BigInt::from(1)]
        );
        // a genuinely rational map has non-integral images
        let odd = OrthogonalMap::reflection(&[1, 2]).unwrap();
        assert!(odd.apply_int(&[1, 0]).is_none());
    }
}
