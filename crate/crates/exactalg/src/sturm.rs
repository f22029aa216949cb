//! Sturm sequences and exact real-root counting / isolation.

use serde::Serialize;

use crate::error::AlgError;
use num_traits::Zero;

use crate::upoly::{qi, sign, RationalPoly, Q};

/// Canonical Sturm chain p, p', -rem(p, p'), ...
///
/// Every element is replaced by its primitive part times a positive
/// constant, which keeps the sign pattern and the integers small.
pub fn sturm_chain(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut chain = vec![positive_primitive(p)];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(positive_primitive(&d));
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(positive_primitive(&-&r));
    }
    chain
}

// primitive() fixes the sign of the leading coefficient, so undo that.
fn positive_primitive(p: &RationalPoly) -> RationalPoly {
    let pp = p.primitive();
    if sign(&p.lead()) < 0 {
        -&pp
    } else {
        pp
    }
}

fn variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut v = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            v += 1;
        }
        last = s;
    }
    v
}

fn var_at(chain: &[RationalPoly], x: &Q) -> usize {
    variations(chain.iter().map(|p| p.sign_at(x)))
}

fn var_neg_inf(chain: &[RationalPoly]) -> usize {
    variations(chain.iter().map(|p| p.sign_at_neg_inf()))
}

fn var_pos_inf(chain: &[RationalPoly]) -> usize {
    variations(chain.iter().map(|p| p.sign_at_pos_inf()))
}

/// Result of an open-interval Sturm count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmCount {
    /// Distinct real roots in the open interval.
    pub count: usize,
    /// Multiplicity of a root sitting exactly on `lo` (divided out before counting).
    pub root_at_lo: u32,
    /// Same for `hi`.
    pub root_at_hi: u32,
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`.
///
/// Endpoint roots are divided out exactly before the chain is built, so
/// the count refers to the open interval regardless of endpoint values.
pub fn sturm_count(p: &RationalPoly, lo: &Q, hi: &Q) -> Result<SturmCount, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    if lo >= hi {
        return Ok(SturmCount { count: 0, root_at_lo: 0, root_at_hi: 0 });
    }
    let (p1, mlo) = p.deflate_root(lo);
    let (p2, mhi) = p1.deflate_root(hi);
    let chain = sturm_chain(&p2);
    let count = var_at(&chain, lo) - var_at(&chain, hi);
    Ok(SturmCount { count, root_at_lo: mlo, root_at_hi: mhi })
}

/// Distinct real roots on the whole line, counted via the Cauchy bound.
pub fn count_real_roots(p: &RationalPoly) -> Result<usize, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let chain = sturm_chain(p);
    Ok(var_neg_inf(&chain) - var_pos_inf(&chain))
}

/// Same count restricted to the Cauchy-bound box, reported with the bound.
pub fn count_in_cauchy_box(p: &RationalPoly) -> Result<(usize, Q), AlgError> {
    let b = p.cauchy_bound();
    let c = sturm_count(p, &-b.clone(), &b)?;
    Ok((c.count, b))
}

/// Interval with rational endpoints holding exactly one root (when isolating).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBox {
    pub lo: Q,
    pub hi: Q,
    pub multiplicity_free: bool,
}

impl RootBox {
    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }
    pub fn mid_f64(&self) -> f64 {
        crate::upoly::to_f64(&((&self.lo + &self.hi) / qi(2)))
    }
}

/// Isolate every real root of `p` in `(lo, hi)` into boxes of width at most `width`.
///
/// Works on the square-free part, so each box holds one distinct root.
/// Box endpoints are never roots.
pub fn isolate_roots(p: &RationalPoly, lo: &Q, hi: &Q, width: &Q) -> Result<Vec<RootBox>, AlgError> {
    if p.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let sf = p.square_free();
    let multiplicity_free = sf.degree() == p.degree();
    let sf = sf.deflate_root(lo).0.deflate_root(hi).0;
    let chain = sturm_chain(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = var_at(&chain, &a) - var_at(&chain, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && &b - &a <= *width {
            out.push(RootBox { lo: a, hi: b, multiplicity_free });
            continue;
        }
        let mut m = (&a + &b) / qi(2);
        let mut k = 3;
        while sf.eval(&m).is_zero() {
            // move the split point off the root
            m = (&a * qi(k) + &b * qi(k + 1)) / qi(2 * k + 1);
            k += 1;
        }
        stack.push((m.clone(), b));
        stack.push((a, m));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Shrink a box around a single simple root by bisection until its width is at most `width`.
pub fn refine(p: &RationalPoly, b: &RootBox, width: &Q) -> RootBox {
    let mut lo = b.lo.clone();
    let mut hi = b.hi.clone();
    let slo = p.sign_at(&lo);
    while &hi - &lo > *width {
        let m = (&lo + &hi) / qi(2);
        let s = p.sign_at(&m);
        if s == 0 {
            let eps = width / qi(4);
            return RootBox { lo: &m - &eps, hi: &m + eps, multiplicity_free: b.multiplicity_free };
        }
        if s == slo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RootBox { lo, hi, multiplicity_free: b.multiplicity_free }
}

/// True when `p` keeps one strict sign on the closed interval `[lo, hi]`.
pub fn no_root_closed(p: &RationalPoly, lo: &Q, hi: &Q) -> Result<bool, AlgError> {
    let c = sturm_count(p, lo, hi)?;
    Ok(c.count == 0 && c.root_at_lo == 0 && c.root_at_hi == 0)
}
