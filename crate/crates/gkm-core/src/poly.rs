//! Sparse multivariate polynomials with exact coefficients.
//!
//! Variables are indexed from zero internally and printed one-based as
//! `t1, t2, ...`.  Monomials are ordered graded-lexicographically with
//! `t1 > t2 > ...`, and serialized polynomials list terms with the leading
//! term first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::ring::{Coeff, Ring};
use crate::{Error, Result};

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(n_vars: usize) -> Monomial {
        Monomial(vec![0; n_vars])
    }

    pub fn var(n_vars: usize, idx: usize) -> Monomial {
        let mut e = vec![0; n_vars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must check `divides` first.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }
}

// graded-lex with earlier variables larger
impl Ord for Monomial {
    fn cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => self.0.cmp(&other.0),
            ord => ord,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Monomial) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    /// Write the monomial with caller-chosen variable names.
    pub fn format_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        namer: &dyn Fn(usize) -> String,
    ) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            f.write_str(&namer(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.format_with(f, &|i| format!("t{}", i + 1))
    }
}

/// All monomials of total degree `k` in `n_vars` variables, in descending
/// graded-lex order.
pub fn monomials_of_degree(n_vars: usize, k: usize) -> Vec<Monomial> {
    fn rec(out: &mut Vec<Vec<u16>>, prefix: &mut Vec<u16>, rest: usize, left: usize) {
        if rest == 0 {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        if rest == 1 {
            prefix.push(left as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=left).rev() {
            prefix.push(e as u16);
            rec(out, prefix, rest - 1, left - e);
            prefix.pop();
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut Vec::new(), n_vars, k);
    raw.into_iter().map(Monomial).collect()
}

/// A polynomial over one of the exact coefficient rings.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ring: Ring,
    n_vars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl Polynomial {
    pub fn zero(ring: Ring, n_vars: usize) -> Polynomial {
        Polynomial { ring, n_vars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: Ring, n_vars: usize, c: Coeff) -> Polynomial {
        assert_eq!(c.ring(), ring);
        let mut p = Polynomial::zero(ring, n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(n_vars), c);
        }
        p
    }

    pub fn constant_i64(ring: Ring, n_vars: usize, c: i64) -> Polynomial {
        Polynomial::constant(ring, n_vars, Coeff::from_i64(ring, c))
    }

    /// The variable with zero-based index `idx`.
    pub fn var(ring: Ring, n_vars: usize, idx: usize) -> Polynomial {
        assert!(idx < n_vars, "variable index {idx} out of range");
        let mut p = Polynomial::zero(ring, n_vars);
        p.terms.insert(Monomial::var(n_vars, idx), Coeff::one(ring));
        p
    }

    pub fn from_terms<I>(ring: Ring, n_vars: usize, terms: I) -> Polynomial
    where
        I: IntoIterator<Item = (Monomial, Coeff)>,
    {
        let mut p = Polynomial::zero(ring, n_vars);
        for (m, c) in terms {
            p.add_term(&m, &c);
        }
        p
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded-lex order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter().rev()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Coeff)> {
        self.terms.iter().next_back()
    }

    pub fn coeff(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(|| Coeff::zero(self.ring))
    }

    /// Total degree; zero for the zero polynomial.
    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous_of_degree(&self, k: usize) -> bool {
        self.terms.keys().all(|m| m.degree() == k)
    }

    fn check_compat(&self, other: &Polynomial) {
        assert_eq!(self.ring, other.ring, "polynomial ring mismatch");
        assert_eq!(self.n_vars, other.n_vars, "polynomial arity mismatch");
    }

    pub fn add_term(&mut self, m: &Monomial, c: &Coeff) {
        assert_eq!(m.0.len(), self.n_vars);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(m) {
            Some(old) => {
                let s = old.add(c);
                if s.is_zero() {
                    self.terms.remove(m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m.clone(), c.clone());
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.check_compat(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = c.neg();
        }
        out
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        assert_eq!(c.ring(), self.ring);
        if c.is_zero() {
            return Polynomial::zero(self.ring, self.n_vars);
        }
        Polynomial::from_terms(
            self.ring,
            self.n_vars,
            self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))),
        )
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.check_compat(other);
        let mut out = Polynomial::zero(self.ring, self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(&ma.mul(mb), &ca.mul(cb));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &Coeff) -> Polynomial {
        Polynomial::from_terms(
            self.ring,
            self.n_vars,
            self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc.mul(c))),
        )
    }

    pub fn pow(&self, k: usize) -> Polynomial {
        let mut out = Polynomial::constant_i64(self.ring, self.n_vars, 1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Exact division: `Some(q)` with `self == q * divisor`, else `None`.
    ///
    /// Repeatedly cancels leading terms; in graded-lex order the leading term
    /// of an exact product is the product of leading terms, so this finds the
    /// quotient exactly when one exists over any of the coefficient rings.
    pub fn divide_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        self.check_compat(divisor);
        if divisor.is_zero() {
            return None;
        }
        let (dm, dc) = divisor.leading().unwrap();
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.ring, self.n_vars);
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return None;
            }
            let qc = rc.div_exact(dc)?;
            let qm = dm.div_into(rm);
            quot.add_term(&qm, &qc);
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
        }
        Some(quot)
    }

    /// Substitute `images[i]` for variable `i`.  All images must share a ring
    /// and arity, which become those of the result.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.n_vars, "substitution arity mismatch");
        let (ring, n_out) = match images.first() {
            Some(p) => (p.ring, p.n_vars),
            // no variables: keep own ring, produce constants in 0 vars
            None => (self.ring, 0),
        };
        // cache powers of each image
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|p| vec![Polynomial::constant_i64(p.ring, p.n_vars, 1), p.clone()])
            .collect();
        let mut out = Polynomial::zero(ring, n_out);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(
                ring,
                n_out,
                c.convert(ring).expect("coefficient not convertible"),
            );
            for (i, &e) in m.0.iter().enumerate() {
                let e = e as usize;
                while powers[i].len() <= e {
                    let last = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(last);
                }
                if e > 0 {
                    term = term.mul(&powers[i][e]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Coefficients of the powers of variable `idx`: entry `r` is the
    /// coefficient of `t_{idx+1}^r`, with that variable's exponent cleared.
    pub fn coefficients_in(&self, idx: usize) -> Vec<Polynomial> {
        assert!(idx < self.n_vars);
        let top = self
            .terms
            .keys()
            .map(|m| m.0[idx] as usize)
            .max()
            .unwrap_or(0);
        let mut out = vec![Polynomial::zero(self.ring, self.n_vars); top + 1];
        for (m, c) in &self.terms {
            let r = m.0[idx] as usize;
            let mut e = m.0.clone();
            e[idx] = 0;
            out[r].add_term(&Monomial(e), c);
        }
        out
    }

    /// Pad with fresh trailing variables up to `n_vars`.
    pub fn extend_vars(&self, n_vars: usize) -> Polynomial {
        assert!(n_vars >= self.n_vars);
        Polynomial::from_terms(
            self.ring,
            n_vars,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(n_vars, 0);
                (Monomial(e), c.clone())
            }),
        )
    }

    /// Drop the last `count` variables; they must not occur.
    pub fn drop_trailing_vars(&self, count: usize) -> Result<Polynomial> {
        let keep = self.n_vars.checked_sub(count).ok_or_else(|| {
            Error::Usage("cannot drop more variables than present".into())
        })?;
        let mut out = Polynomial::zero(self.ring, keep);
        for (m, c) in &self.terms {
            if m.0[keep..].iter().any(|&e| e != 0) {
                return Err(Error::Usage(format!(
                    "variable t{} still occurs",
                    keep + 1 + m.0[keep..].iter().position(|&e| e != 0).unwrap()
                )));
            }
            out.add_term(&Monomial(m.0[..keep].to_vec()), c);
        }
        Ok(out)
    }

    /// Map coefficients into `ring` (e.g. reduce mod 2 or widen to dyadics).
    pub fn convert(&self, ring: Ring) -> Result<Polynomial> {
        let mut out = Polynomial::zero(ring, self.n_vars);
        for (m, c) in &self.terms {
            out.add_term(m, &c.convert(ring)?);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|(m, c)| {
                serde_json::json!({
                    "exp": m.0.iter().map(|&e| e as u64).collect::<Vec<_>>(),
                    "coef": c.to_json(),
                })
            })
            .collect();
        serde_json::json!({
            "n_vars": self.n_vars,
            "ring": self.ring.name(),
            "terms": terms,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Polynomial> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Usage("polynomial must be an object".into()))?;
        let n_vars = obj
            .get("n_vars")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Usage("polynomial needs integer n_vars".into()))?
            as usize;
        let ring = Ring::parse(
            obj.get("ring")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Usage("polynomial needs a ring".into()))?,
        )?;
        let mut p = Polynomial::zero(ring, n_vars);
        let terms = obj
            .get("terms")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Usage("polynomial needs a terms array".into()))?;
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Usage("term needs an exp array".into()))?;
            if exp.len() != n_vars {
                return Err(Error::Usage(format!(
                    "exponent vector of length {} in a polynomial with {} variables",
                    exp.len(),
                    n_vars
                )));
            }
            let mut e = Vec::with_capacity(n_vars);
            for x in exp {
                let val = x
                    .as_u64()
                    .filter(|&v| v <= u16::MAX as u64)
                    .ok_or_else(|| Error::Usage(format!("bad exponent {x}")))?;
                e.push(val as u16);
            }
            let coef = Coeff::from_json(
                ring,
                t.get("coef")
                    .ok_or_else(|| Error::Usage("term needs a coef".into()))?,
            )?;
            p.add_term(&Monomial(e), &coef);
        }
        Ok(p)
    }
}

impl Polynomial {
    /// Write the polynomial with caller-chosen variable names.
    pub fn format_with(
        &self,
        f: &mut fmt::Formatter<'_>,
        namer: &dyn Fn(usize) -> String,
    ) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let (neg, abs) = c.abs_string();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let trivial_mono = m.degree() == 0;
            let needs_paren = abs.contains('/');
            if abs == "1" && !trivial_mono {
                m.format_with(f, namer)?;
            } else if trivial_mono {
                write!(f, "{abs}")?;
            } else if needs_paren {
                write!(f, "({abs})*")?;
                m.format_with(f, namer)?;
            } else {
                write!(f, "{abs}*")?;
                m.format_with(f, namer)?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.format_with(f, &|i| format!("t{}", i + 1))
    }
}

/// Elementary symmetric polynomial `e_i` of the given arguments.
///
/// `e_0 = 1`; `e_i = 0` for `i` beyond the number of arguments.
pub fn elementary_symmetric(
    ring: Ring,
    n_vars: usize,
    args: &[Polynomial],
    i: usize,
) -> Polynomial {
    if i == 0 {
        return Polynomial::constant_i64(ring, n_vars, 1);
    }
    if i > args.len() {
        return Polynomial::zero(ring, n_vars);
    }
    // dp[j] = e_j of the arguments seen so far
    let mut dp = vec![Polynomial::zero(ring, n_vars); i + 1];
    dp[0] = Polynomial::constant_i64(ring, n_vars, 1);
    for (seen, p) in args.iter().enumerate() {
        let hi = i.min(seen + 1);
        for j in (1..=hi).rev() {
            let add = dp[j - 1].mul(p);
            dp[j] = dp[j].add(&add);
        }
    }
    dp.swap_remove(i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn t(n_vars: usize, idx: usize) -> Polynomial {
        Polynomial::var(Ring::Int, n_vars, idx)
    }

    #[test]
    fn graded_lex_order() {
        // degree dominates, then earlier variables
        let m = |e: &[u16]| Monomial(e.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
    }

    #[test]
    fn monomial_enumeration_descending() {
        let ms = monomials_of_degree(2, 2);
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["t1^2", "t1*t2", "t2^2"]);
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
        assert_eq!(monomials_of_degree(0, 1).len(), 0);
    }

    #[test]
    fn arithmetic_basics() {
        let a = t(2, 0).add(&t(2, 1)); // t1 + t2
        let b = t(2, 0).sub(&t(2, 1)); // t1 - t2
        let prod = a.mul(&b);
        let expect = t(2, 0).pow(2).sub(&t(2, 1).pow(2));
        assert_eq!(prod, expect);
        assert!(a.sub(&a).is_zero());
        assert_eq!(prod.total_degree(), 2);
        assert!(prod.is_homogeneous_of_degree(2));
    }

    #[test]
    fn exact_division() {
        let a = t(2, 0).pow(2).sub(&t(2, 1).pow(2));
        let d = t(2, 0).sub(&t(2, 1));
        let q = a.divide_exact(&d).unwrap();
        assert_eq!(q, t(2, 0).add(&t(2, 1)));

        // t1 is not divisible by 2*t1 over Z
        let two_t1 = t(2, 0).scale(&Coeff::from_i64(Ring::Int, 2));
        assert_eq!(t(2, 0).divide_exact(&two_t1), None);

        // but it is over the dyadics
        let td = t(2, 0).convert(Ring::Dyadic).unwrap();
        let two_td = two_t1.convert(Ring::Dyadic).unwrap();
        let half = td.divide_exact(&two_td).unwrap();
        assert_eq!(
            half,
            Polynomial::constant(
                Ring::Dyadic,
                2,
                Coeff::Dyadic(crate::ring::Dyadic::new(1.into(), 1))
            )
        );

        // non-multiples are rejected
        let off = a.add(&Polynomial::constant_i64(Ring::Int, 2, 1));
        assert_eq!(off.divide_exact(&d), None);
    }

    #[test]
    fn random_division_round_trip() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng, deg: usize| {
                let mut p = Polynomial::zero(Ring::Int, 3);
                for m in monomials_of_degree(3, deg) {
                    let c: i64 = rng.gen_range(-4..=4);
                    p.add_term(&m, &Coeff::from_i64(Ring::Int, c));
                }
                p
            };
            let q = rand_poly(&mut rng, 2);
            let d = rand_poly(&mut rng, 1);
            if d.is_zero() {
                continue;
            }
            let prod = q.mul(&d);
            assert_eq!(prod.divide_exact(&d), Some(q.clone()));
            let spoiled = prod.add(&Polynomial::constant_i64(Ring::Int, 3, 1));
            assert_eq!(spoiled.divide_exact(&d), None);
        }
    }

    #[test]
    fn substitution() {
        // (t1 + t2)^2 with t1 -> t1 - t3, t2 -> 2 t3 in 3 vars
        let p = t(2, 0).add(&t(2, 1)).pow(2);
        let img = [
            t(3, 0).sub(&t(3, 2)),
            t(3, 2).scale(&Coeff::from_i64(Ring::Int, 2)),
        ];
        let s = p.substitute(&img);
        let expect = t(3, 0).add(&t(3, 2)).pow(2);
        assert_eq!(s, expect);
    }

    #[test]
    fn coefficient_extraction() {
        // p = t1^2 t2 + 3 t2^2 + t1: coefficients in t2
        let p = t(2, 0)
            .pow(2)
            .mul(&t(2, 1))
            .add(&t(2, 1).pow(2).scale(&Coeff::from_i64(Ring::Int, 3)))
            .add(&t(2, 0));
        let cs = p.coefficients_in(1);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], t(2, 0));
        assert_eq!(cs[1], t(2, 0).pow(2));
        assert_eq!(cs[2], Polynomial::constant_i64(Ring::Int, 2, 3));
        // rebuild
        let mut back = Polynomial::zero(Ring::Int, 2);
        for (r, c) in cs.iter().enumerate() {
            back = back.add(&c.mul(&t(2, 1).pow(r)));
        }
        assert_eq!(back, p);
    }

    #[test]
    fn variable_extension() {
        let p = t(2, 0).mul(&t(2, 1));
        let q = p.extend_vars(4);
        assert_eq!(q.n_vars(), 4);
        assert_eq!(q.drop_trailing_vars(2).unwrap(), p);
        assert!(q.mul(&t(4, 3)).drop_trailing_vars(1).is_err());
    }

    #[test]
    fn elementary_symmetric_of_vars() {
        let vars: Vec<Polynomial> = (0..3).map(|i| t(3, i)).collect();
        let e2 = elementary_symmetric(Ring::Int, 3, &vars, 2);
        let expect = t(3, 0)
            .mul(&t(3, 1))
            .add(&t(3, 0).mul(&t(3, 2)))
            .add(&t(3, 1).mul(&t(3, 2)));
        assert_eq!(e2, expect);
        let e0 = elementary_symmetric(Ring::Int, 3, &vars, 0);
        assert_eq!(e0, Polynomial::constant_i64(Ring::Int, 3, 1));
        assert!(elementary_symmetric(Ring::Int, 3, &vars, 4).is_zero());
        // product over (x + t_i) expands through elementary symmetric terms
        let x = Polynomial::var(Ring::Int, 4, 3);
        let lifted: Vec<Polynomial> =
            vars.iter().map(|v| v.extend_vars(4).add(&x)).collect();
        let prod = lifted.iter().fold(
            Polynomial::constant_i64(Ring::Int, 4, 1),
            |acc, p| acc.mul(p),
        );
        let mut series = Polynomial::zero(Ring::Int, 4);
        for i in 0..=3 {
            let ei = elementary_symmetric(Ring::Int, 3, &vars, i).extend_vars(4);
            series = series.add(&ei.mul(&x.pow(3 - i)));
        }
        assert_eq!(prod, series);
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let p = t(2, 0)
            .pow(2)
            .sub(&t(2, 1).scale(&Coeff::from_i64(Ring::Int, 7)))
            .add(&Polynomial::constant_i64(Ring::Int, 2, -3));
        let s1 = serde_json::to_string(&p.to_json()).unwrap();
        let back = Polynomial::from_json(&serde_json::from_str(&s1).unwrap()).unwrap();
        assert_eq!(back, p);
        let s2 = serde_json::to_string(&back.to_json()).unwrap();
        assert_eq!(s1, s2);

        // leading term is serialized first
        let v = p.to_json();
        let first = &v["terms"][0]["exp"];
        assert_eq!(first.to_string(), "[2,0]");

        let d = p.convert(Ring::Dyadic).unwrap().scale(&Coeff::Dyadic(
            crate::ring::Dyadic::new(1.into(), 1),
        ));
        let s3 = serde_json::to_string(&d.to_json()).unwrap();
        let back3 = Polynomial::from_json(&serde_json::from_str(&s3).unwrap()).unwrap();
        assert_eq!(back3, d);
    }

    #[test]
    fn display_format() {
        let p = t(2, 0)
            .pow(2)
            .sub(&t(2, 0).mul(&t(2, 1)).scale(&Coeff::from_i64(Ring::Int, 2)))
            .add(&Polynomial::constant_i64(Ring::Int, 2, 5));
        assert_eq!(p.to_string(), "t1^2 - 2*t1*t2 + 5");
        assert_eq!(Polynomial::zero(Ring::Int, 2).to_string(), "0");
        let neg = t(2, 1).neg();
        assert_eq!(neg.to_string(), "-t2");
    }

    #[test]
    fn mod2_collapse() {
        let p = t(2, 0).scale(&Coeff::from_i64(Ring::Int, 2)).add(&t(2, 1));
        let q = p.convert(Ring::Mod2).unwrap();
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q, t(2, 1).convert(Ring::Mod2).unwrap());
    }
}
