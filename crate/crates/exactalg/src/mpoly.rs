//! Sparse multivariate polynomials with big-integer coefficients.
//!
//! Monomials are exponent vectors compared lexicographically, variable 0
//! being the most significant. That order drives exact division and the
//! exact square root.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::upoly::{RationalPoly, Q};

pub type Mono = Vec<u32>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigInt>,
}

impl ZPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigInt::one());
        p
    }

    /// `c * vars^exps`.
    pub fn monomial(exps: &[u32], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps.to_vec(), c.into());
        p
    }

    /// Build from `(coefficient, exponents)` pairs.
    pub fn from_terms(nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let mut p = Self::zero(nvars);
        for (c, e) in terms {
            assert_eq!(e.len(), nvars);
            p.add_term(e.to_vec(), BigInt::from(*c));
        }
        p
    }

    /// Embed an integer univariate polynomial (lowest degree first) in variable `v`.
    pub fn univariate(nvars: usize, v: usize, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let mut m = vec![0; nvars];
            m[v] = k as u32;
            p.add_term(m, BigInt::from(*c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Floating-point value at `point` (one entry per variable).
    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64().unwrap_or(f64::NAN);
                for (x, &e) in point.iter().zip(m) {
                    v *= x.powi(e as i32);
                }
                v
            })
            .sum()
    }

    /// Leading term in lex order.
    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn degree_in(&self, v: usize) -> Option<u32> {
        self.terms.keys().map(|m| m[v]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.nvars);
        let mut b = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = &r * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        r
    }

    pub fn derivative(&self, v: usize) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            if m[v] > 0 {
                let mut m2 = m.clone();
                m2[v] -= 1;
                p.add_term(m2, c * BigInt::from(m[v]));
            }
        }
        p
    }

    /// Coefficients with respect to variable `v`: `self = sum_k out[k] * v^k`.
    pub fn coeffs_in(&self, v: usize) -> Vec<ZPoly> {
        let d = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(self.nvars); d + 1];
        if self.is_zero() {
            return vec![];
        }
        for (m, c) in &self.terms {
            let k = m[v] as usize;
            let mut m2 = m.clone();
            m2[v] = 0;
            out[k].add_term(m2, c.clone());
        }
        out
    }

    /// Substitute the integer `val` for variable `v`.
    pub fn subs_int(&self, v: usize, val: &BigInt) -> Self {
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[v] = 0;
            p.add_term(m2, c * val.pow(m[v]));
        }
        p
    }

    /// Substitute `n/d` for variable `v` and multiply by `d^deg_v`, staying integral.
    /// Returns the scaled polynomial together with the scale `d^deg_v`.
    pub fn subs_rational(&self, v: usize, val: &Q) -> (Self, BigInt) {
        let deg = self.degree_in(v).unwrap_or(0);
        let (n, d) = (val.numer(), val.denom());
        let mut p = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2[v] = 0;
            p.add_term(m2, c * n.pow(m[v]) * d.pow(deg - m[v]));
        }
        (p, d.pow(deg))
    }

    /// Substitute another polynomial for variable `v`.
    pub fn compose(&self, v: usize, by: &ZPoly) -> Self {
        let cs = self.coeffs_in(v);
        let mut r = Self::zero(self.nvars);
        for c in cs.iter().rev() {
            r = &(&r * by) + c;
        }
        r
    }

    /// Rename variables: variable `i` of `self` becomes variable `map[i]` of a polynomial in `nvars` variables.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in &self.terms {
            let mut m2 = vec![0; nvars];
            for (i, e) in m.iter().enumerate() {
                m2[map[i]] += e;
            }
            p.add_term(m2, c.clone());
        }
        p
    }

    /// The univariate rational polynomial in variable `v`; `None` if other variables occur.
    pub fn to_upoly(&self, v: usize) -> Option<RationalPoly> {
        let mut cs = vec![Q::zero(); self.degree_in(v).unwrap_or(0) as usize + 1];
        for (m, c) in &self.terms {
            if m.iter().enumerate().any(|(i, e)| i != v && *e != 0) {
                return None;
            }
            cs[m[v] as usize] = BigRational::from_integer(c.clone());
        }
        Some(RationalPoly::new(cs))
    }

    /// Embed a rational univariate polynomial in variable `v`, after clearing denominators.
    /// Returns the polynomial and the positive multiplier used.
    pub fn from_upoly(nvars: usize, v: usize, p: &RationalPoly) -> (Self, BigInt) {
        let mut den = BigInt::one();
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
        let mut out = Self::zero(nvars);
        for (k, c) in p.coeffs().iter().enumerate() {
            let mut m = vec![0; nvars];
            m[v] = k as u32;
            out.add_term(m, (c * &den).to_integer());
        }
        (out, den)
    }

    /// Gcd of all integer coefficients (nonnegative).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Exact division; `None` when `d` does not divide `self` in Z[vars].
    pub fn exact_div(&self, d: &ZPoly) -> Option<ZPoly> {
        let (dm, dc) = d.leading()?;
        let (dm, dc) = (dm.clone(), dc.clone());
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((rm, rc)) = rem.leading() {
            if rm.iter().zip(&dm).any(|(a, b)| a < b) {
                return None;
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let qm: Mono = rm.iter().zip(&dm).map(|(a, b)| a - b).collect();
            let t = Self::monomial(&qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Exact square root with positive leading coefficient, if `self` is a perfect square.
    pub fn sqrt(&self) -> Option<ZPoly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = self.leading()?;
        if lc.is_negative() || lm.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let rc = lc.sqrt();
        if &rc * &rc != *lc {
            return None;
        }
        let rm: Mono = lm.iter().map(|e| e / 2).collect();
        let lead = Self::monomial(&rm, rc.clone());
        let two_lead_c = &rc * 2;
        let mut root = lead.clone();
        let mut rem = self - &(&lead * &lead);
        // each new term t satisfies LT(rem) = 2 * LT(root) * t
        while let Some((m, c)) = rem.leading() {
            if m.iter().zip(&rm).any(|(a, b)| a < b) {
                return None;
            }
            let (tc, r) = c.div_rem(&two_lead_c);
            if !r.is_zero() {
                return None;
            }
            let tm: Mono = m.iter().zip(&rm).map(|(a, b)| a - b).collect();
            if tm >= rm {
                return None;
            }
            let t = Self::monomial(&tm, tc);
            rem = &rem - &(&(&root.scale(&BigInt::from(2)) + &t) * &t);
            root = &root + &t;
        }
        Some(root)
    }

    /// Exact k-th root for k a power of two (2 or 4), by iterated square roots.
    pub fn kth_root(&self, k: u32) -> Option<ZPoly> {
        match k {
            1 => Some(self.clone()),
            2 => self.sqrt(),
            4 => self.sqrt()?.sqrt(),
            _ => None,
        }
    }
}

impl Add for &ZPoly {
    type Output = ZPoly;
    fn add(self, o: &ZPoly) -> ZPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

impl Sub for &ZPoly {
    type Output = ZPoly;
    fn sub(self, o: &ZPoly) -> ZPoly {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), -c);
        }
        p
    }
}

impl Neg for &ZPoly {
    type Output = ZPoly;
    fn neg(self) -> ZPoly {
        ZPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &ZPoly {
    type Output = ZPoly;
    fn mul(self, o: &ZPoly) -> ZPoly {
        let mut acc: BTreeMap<Mono, BigInt> = BTreeMap::new();
        let mut m = vec![0u32; self.nvars];
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                for i in 0..self.nvars {
                    m[i] = ma[i] + mb[i];
                }
                let prod = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m.clone(), prod);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        ZPoly { nvars: self.nvars, terms: acc }
    }
}

impl fmt::Display for ZPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            for (i, e) in m.iter().enumerate() {
                let n = names.get(i).copied().unwrap_or("v");
                match e {
                    0 => {}
                    1 => write!(f, "*{n}")?,
                    _ => write!(f, "*{n}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> (ZPoly, ZPoly) {
        (ZPoly::var(2, 0), ZPoly::var(2, 1))
    }

    #[test]
    fn exact_division_recovers_factor() {
        let (x, y) = xy();
        let a = &(&x + &y) * &(&x - &y.scale(&BigInt::from(3)));
        let b = &x + &y;
        assert_eq!(a.exact_div(&b).unwrap(), &x - &y.scale(&BigInt::from(3)));
        assert!(a.exact_div(&(&x + &ZPoly::one(2))).is_none());
    }

    #[test]
    fn fourth_root_of_power() {
        let (x, _) = xy();
        let p = (&x + &ZPoly::one(2)).pow(4);
        assert_eq!(p.kth_root(4).unwrap(), &x + &ZPoly::one(2));
    }

    #[test]
    fn non_square_has_no_root() {
        let (x, _) = xy();
        let p = &(&x * &x) + &ZPoly::one(2);
        assert!(p.kth_root(2).is_none());
    }

    #[test]
    fn sqrt_bivariate_with_negative_terms() {
        let (x, y) = xy();
        let r = &(&(&x * &x).scale(&BigInt::from(3)) - &(&x * &y)) + &y.scale(&BigInt::from(-5));
        let r = if r.leading().unwrap().1.is_negative() { -&r } else { r };
        assert_eq!((&r * &r).sqrt().unwrap(), r);
    }

    #[test]
    fn rational_substitution_scales() {
        let (x, _) = xy();
        let p = &(&x * &x) - &ZPoly::one(2);
        let (s, d) = p.subs_rational(0, &crate::upoly::q(1, 2));
        assert_eq!(d, BigInt::from(4));
        assert_eq!(s, ZPoly::constant(2, -3));
    }

    #[test]
    fn compose_shift() {
        let (x, _) = xy();
        let p = x.pow(2);
        let by = &x + &ZPoly::one(2);
        assert_eq!(p.compose(0, &by), &(&x.pow(2) + &x.scale(&BigInt::from(2))) + &ZPoly::one(2));
    }
}
