//! Certificates for the polynomial claims behind the period-function lemmas.
//!
//! Each claim rebuilds its polynomials from the closed forms of the
//! potential, runs exact eliminations and Sturm counts, and records every
//! sub-check as a witness. The first failing sub-check decides the status;
//! later sub-checks still run so the witnesses show the whole picture.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::AlgError;
use crate::mpoly::ZPoly;
use crate::resultant::{discriminant, resultant};
use crate::sturm::{count_in_cauchy_box, isolate_roots, sturm_count};
use crate::upoly::{q, qi, to_f64, RationalPoly, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
}

impl ClaimId {
    pub const ALL: [ClaimId; 9] = [
        ClaimId::C1,
        ClaimId::C2,
        ClaimId::C3,
        ClaimId::C4,
        ClaimId::C5,
        ClaimId::C6,
        ClaimId::C7,
        ClaimId::C8,
        ClaimId::C9,
    ];

    pub fn description(self) -> &'static str {
        match self {
            ClaimId::C1 => "W'' numerator identity for R_eta and the eta = 1 closed form",
            ClaimId::C2 => "Disc_x(R_eta) closed form and nonvanishing on (0,3) minus {1}",
            ClaimId::C3 => "Res_x(R_eta, V') closed form and nonvanishing on (0,3) minus {1}",
            ClaimId::C4 => "Res_x(R_eta, P_eta): degree-34 cofactor with one root in [277/256, 555/512]",
            ClaimId::C5 => "R_{1/2} root boxes and their exclusion from (x1, x2)",
            ClaimId::C6 => "dR/deta keeps its sign on (x1, x2) near eta1",
            ClaimId::C7 => "theta >= 1/2 pipeline: l1, L(x,y), T, calR, degree-10 R",
            ClaimId::C8 => "theta < 1/2: R(0) root at 1/5, R(theta) closed form, no zero on (0, 1/10)",
            ClaimId::C9 => "theta in (1/5, 1/2): second-stage l2 pipeline",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ClaimId {
    type Err = AlgError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches(['C', 'c']);
        match t {
            "1" => Ok(ClaimId::C1),
            "2" => Ok(ClaimId::C2),
            "3" => Ok(ClaimId::C3),
            "4" => Ok(ClaimId::C4),
            "5" => Ok(ClaimId::C5),
            "6" => Ok(ClaimId::C6),
            "7" => Ok(ClaimId::C7),
            "8" => Ok(ClaimId::C8),
            "9" => Ok(ClaimId::C9),
            _ => Err(AlgError::UnknownClaim(s.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Failed,
    OutOfScope,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub check: String,
    /// `None` for informational entries that do not gate the status.
    pub ok: Option<bool>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub claim_id: ClaimId,
    pub status: Status,
    pub failed_check: Option<String>,
    pub witnesses: Vec<Witness>,
    /// Seconds; only filled when timing was requested, so reports stay reproducible.
    pub wall_time: Option<f64>,
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn is_verified(&self) -> bool {
        self.status == Status::Verified
    }
}

struct Checks {
    witnesses: Vec<Witness>,
    failed: Option<String>,
}

impl Checks {
    fn new() -> Self {
        Self { witnesses: Vec::new(), failed: None }
    }

    fn check(&mut self, name: &str, ok: bool, value: impl fmt::Display) -> bool {
        if !ok && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
        self.witnesses.push(Witness { check: name.to_string(), ok: Some(ok), value: value.to_string() });
        ok
    }

    fn note(&mut self, name: &str, value: impl fmt::Display) {
        self.witnesses.push(Witness { check: name.to_string(), ok: None, value: value.to_string() });
    }

    fn finish(self, id: ClaimId) -> Certificate {
        let status = if self.failed.is_some() { Status::Failed } else { Status::Verified };
        Certificate { claim_id: id, status, failed_check: self.failed, witnesses: self.witnesses, wall_time: None }
    }
}

/// Run one claim. Deterministic: repeated runs give identical certificates.
pub fn certify(id: ClaimId) -> Result<Certificate, AlgError> {
    match id {
        ClaimId::C1 => c1(),
        ClaimId::C2 => c2(),
        ClaimId::C3 => c3(),
        ClaimId::C4 => c4(),
        ClaimId::C5 => c5(),
        ClaimId::C6 => c6(),
        ClaimId::C7 => c7(),
        ClaimId::C8 => c8(),
        ClaimId::C9 => Ok(Certificate {
            claim_id: ClaimId::C9,
            status: Status::OutOfScope,
            failed_check: None,
            witnesses: vec![Witness {
                check: "second-stage polynomials".into(),
                ok: None,
                value: "l2, P and L for theta in (1/5, 1/2) are not available in closed form".into(),
            }],
            wall_time: None,
        }),
    }
}

/// Like [`certify`] but records the elapsed wall time.
pub fn certify_timed(id: ClaimId) -> Result<Certificate, AlgError> {
    let t = Instant::now();
    let mut c = certify(id)?;
    c.wall_time = Some(t.elapsed().as_secs_f64());
    Ok(c)
}

pub fn certify_all(timed: bool) -> Result<Vec<Certificate>, AlgError> {
    ClaimId::ALL.iter().map(|&id| if timed { certify_timed(id) } else { certify(id) }).collect()
}

// ---------------------------------------------------------------------------
// polynomial building blocks; eta-claims use variables (x, eta)

const X: usize = 0;
const E: usize = 1;

fn k(n: i64, nv: usize) -> ZPoly {
    ZPoly::constant(nv, n)
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// R_eta(x) as printed.
pub fn r_eta() -> ZPoly {
    let t: &[(i64, &[u32])] = &[
        (1, &[6, 1]),
        (-1, &[6, 0]),
        (10, &[5, 1]),
        (-10, &[5, 2]),
        (35, &[4, 3]),
        (-45, &[4, 2]),
        (100, &[3, 3]),
        (-60, &[3, 4]),
        (55, &[2, 5]),
        (-110, &[2, 4]),
        (-5, &[2, 3]),
        (18, &[1, 4]),
        (56, &[1, 5]),
        (-26, &[1, 6]),
        (5, &[0, 7]),
        (-10, &[0, 6]),
        (-15, &[0, 5]),
    ];
    ZPoly::from_terms(2, t)
}

/// The cubic D(x) appearing in the denominator of W''.
pub fn d_eta() -> ZPoly {
    let t: &[(i64, &[u32])] =
        &[(3, &[0, 2]), (-1, &[0, 3]), (3, &[1, 2]), (-3, &[1, 1]), (1, &[2, 0]), (-3, &[2, 1]), (1, &[3, 0])];
    ZPoly::from_terms(2, t)
}

/// 2 (eta - x)^2 V(x) in variables (var, eta) of an `nv`-variable ring.
fn v_num(nv: usize, var: usize, eta: usize) -> ZPoly {
    let x = ZPoly::var(nv, var);
    let e = ZPoly::var(nv, eta);
    let a = &(&(-&x.pow(2)) - &x.scale(&big(2))) - &e;
    &(&a * &(&e - &x).pow(2)) + &e.pow(3)
}

/// (eta - x)^3 V'(x).
fn vp_num(nv: usize, var: usize, eta: usize) -> ZPoly {
    let x = ZPoly::var(nv, var);
    let e = ZPoly::var(nv, eta);
    &e.pow(3) - &(&(&x + &k(1, nv)) * &(&e - &x).pow(3))
}

/// Rational V(x) at rational x and eta.
fn v_value(x: &Q, eta: &Q) -> Q {
    let two = qi(2);
    -(x * x) / &two - x - eta / &two + eta * eta * eta / (&two * (eta - x) * (eta - x))
}

/// P_eta(x) = Res_y(V'(y), V(y) - V(x)) on numerators, as a polynomial in (x, eta).
pub fn p_eta() -> ZPoly {
    // variables (x, y, eta)
    let nv = 3;
    let x = ZPoly::var(nv, 0);
    let y = ZPoly::var(nv, 1);
    let e = ZPoly::var(nv, 2);
    let vy = v_num(nv, 1, 2);
    let vx = v_num(nv, 0, 2);
    let diff = &(&vy * &(&e - &x).pow(2)) - &(&vx * &(&e - &y).pow(2));
    let vp = vp_num(nv, 1, 2);
    let r = resultant(&vp, &diff, 1).expect("nonzero inputs");
    // drop y (absent now) -> (x, eta)
    r.remap(2, &[0, 0, 1])
}

fn eta_factor_product(c: i64, parts: &[(&[i64], u32)]) -> RationalPoly {
    let mut p = RationalPoly::from_ints(&[c]);
    for (coeffs, m) in parts {
        p = &p * &RationalPoly::from_ints(coeffs).pow(*m);
    }
    p
}

fn at_rational(p: &ZPoly, var: usize, val: &Q, keep: usize) -> RationalPoly {
    let (s, d) = p.subs_rational(var, val);
    let u = s.to_upoly(keep).expect("univariate after substitution");
    u.scale(&BigRational::new(BigInt::one(), d))
}

fn upoly_of(p: &ZPoly, v: usize) -> RationalPoly {
    p.to_upoly(v).expect("univariate polynomial")
}

fn show_opt(v: &Option<Q>) -> String {
    v.as_ref().map_or_else(|| "not proportional".to_string(), |r| r.to_string())
}

fn show_q(v: &Q) -> String {
    format!("{v} (~{:.6e})", to_f64(v))
}

// ---------------------------------------------------------------------------

fn c1() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let nv = 2;
    let x = ZPoly::var(nv, X);
    let e = ZPoly::var(nv, E);
    let r = r_eta();
    let dd = d_eta();
    let vn = v_num(nv, X, E);
    let vpn = vp_num(nv, X, E);
    ck.check("V' numerator equals x*D(x)", vpn == &x * &dd, "exact polynomial identity");

    // W = V / V'^2 = U / Dn with U = vn (eta-x)^4 and Dn = 2 vpn^2
    let ex = &e - &x;
    let u = &vn * &ex.pow(4);
    let dn = vpn.pow(2).scale(&big(2));
    let (u1, u2) = (u.derivative(X), u.derivative(X).derivative(X));
    let (d1, d2) = (dn.derivative(X), dn.derivative(X).derivative(X));
    // W'' = [(u2 Dn - u d2) Dn - 2 d1 (u1 Dn - u d1)] / Dn^3
    let num = &(&(&(&u2 * &dn) - &(&u * &d2)) * &dn) - &(&d1 * &(&(&u1 * &dn) - &(&u * &d1))).scale(&big(2));
    let lhs = &num * &dd.pow(4);
    let rhs = &(&ex.pow(2) * &r).scale(&big(-3)) * &dn.pow(3);
    ck.check("W'' = -3 (eta-x)^2 R_eta / D^4", lhs == rhs, format!("numerator terms compared: {}", lhs.len()));

    let r1 = at_rational(&r, E, &qi(1), X);
    let printed = &RationalPoly::from_ints(&[-1, 1]).pow(4).scale(&qi(-10))
        - &RationalPoly::from_ints(&[5, -4]).scale(&qi(2));
    ck.check("R_1(x) = -10(x-1)^4 - 2(5-4x)", r1 == printed, &r1);
    // -10(x-1)^4 - 2(5-4x) < 0 on (-inf, 1): no root below 1 and negative at 1
    let b = r1.cauchy_bound();
    let sc = sturm_count(&r1, &-b, &qi(1))?;
    ck.check(
        "R_1 < 0 on (-inf, 1)",
        sc.count == 0 && sc.root_at_hi == 0 && r1.sign_at(&qi(1)) < 0,
        format!("Sturm count {} on (-bound, 1), R_1(1) = {}", sc.count, r1.eval(&qi(1))),
    );
    Ok(ck.finish(ClaimId::C1))
}

fn c2() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let disc = discriminant(&r_eta(), X)?;
    let d = upoly_of(&disc.remap(2, &[0, 0]), 0);
    let printed = &eta_factor_product(
        -6_400_000,
        &[(&[0, 1], 23), (&[1, 1], 4), (&[-1, 1], 1), (&[3, 14, 27], 1), (&[1, 11, -5, 1], 1)],
    ) * &RationalPoly::one();
    let ratio = d.ratio_to(&printed);
    ck.check("Disc_x(R_eta) equals the printed closed form", d == printed, format!("ratio to printed: {}", show_opt(&ratio)));
    ck.note("discriminant normalization", "(-1)^(n(n-1)/2) Res(p, p') / lc(p), constant 1");
    let cubic = RationalPoly::from_ints(&[1, 11, -5, 1]);
    let c_cubic = sturm_count(&cubic, &qi(0), &qi(3))?;
    ck.check("eta^3-5eta^2+11eta+1 has no root on (0,3)", c_cubic.count == 0, format!("Sturm count {}", c_cubic.count));
    ck.note("eta^3-5eta^2+11eta+1 real roots", count_in_cauchy_box(&cubic)?.0);
    let quad = RationalPoly::from_ints(&[3, 14, 27]);
    let c_quad = count_in_cauchy_box(&quad)?.0;
    ck.check("27eta^2+14eta+3 has no real root", c_quad == 0, format!("Sturm count {c_quad}"));
    // whole discriminant: only eta = 1 inside (0,3)
    let (no1, m1) = d.deflate_root(&qi(1));
    let c_all = sturm_count(&no1, &qi(0), &qi(3))?;
    ck.check(
        "Disc_x(R_eta) vanishes on (0,3) only at eta = 1",
        c_all.count == 0 && m1 == 1,
        format!("root at 1 with multiplicity {m1}, other roots in (0,3): {}", c_all.count),
    );
    Ok(ck.finish(ClaimId::C2))
}

fn c3() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let vp = vp_num(2, X, E);
    let res = upoly_of(&resultant(&r_eta(), &vp, X)?.remap(2, &[0, 0]), 0);
    let printed = eta_factor_product(5, &[(&[0, 1], 15), (&[1, 1], 2), (&[-3, 1], 2), (&[3, 14, 27], 2)]);
    ck.check(
        "Res_x(R_eta, V') equals the printed closed form",
        res == printed,
        format!("ratio to printed: {}", show_opt(&res.ratio_to(&printed))),
    );
    let c = sturm_count(&res, &qi(0), &qi(3))?;
    ck.check("Res_x(R_eta, V') has no root on (0,3)", c.count == 0, format!("Sturm count {}", c.count));
    Ok(ck.finish(ClaimId::C3))
}

fn c4() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let p = p_eta();
    ck.note("P_eta degree in x", p.degree_in(X).unwrap_or(0));
    let res = upoly_of(&resultant(&r_eta(), &p, X)?.remap(2, &[0, 0]), 0);
    ck.note("Res_x(R_eta, P_eta) degree", res.degree().unwrap_or(0));
    let cof = eta_factor_product(
        25,
        &[(&[0, 1], 45), (&[1, 1], 7), (&[-3, 1], 6), (&[16, 21, 9], 1), (&[3, 14, 27], 2)],
    );
    let quotient = res.exact_div(&cof);
    ck.check("printed cofactor divides the resultant", quotient.is_some(), "exact division");
    let Some(qp) = quotient else {
        return Ok(ck.finish(ClaimId::C4));
    };
    let deg = qp.degree().unwrap_or(0);
    ck.check("quotient Q has degree 34", deg == 34, format!("degree {deg}"));
    let lo = q(277, 256);
    let hi = q(555, 512);
    let c = sturm_count(&qp, &lo, &hi)?;
    ck.check(
        "Q has exactly one root in [277/256, 555/512]",
        c.count == 1 && c.root_at_lo == 0 && c.root_at_hi == 0,
        format!("Sturm count {}", c.count),
    );
    let boxes = isolate_roots(&qp, &qi(0), &qi(3), &q(1, 1 << 20))?;
    let roots: Vec<String> = boxes.iter().map(|b| format!("{:.6}", b.mid_f64())).collect();
    ck.note("roots of Q on (0,3)", format!("[{}]", roots.join(", ")));
    Ok(ck.finish(ClaimId::C4))
}

fn c5() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let r = r_eta();
    let half = q(1, 2);
    let rh = at_rational(&r, E, &half, X);
    let printed = RationalPoly::from_ints(&[-75, 316, -740, 1120, -880, 320, -64]).scale(&q(1, 128));
    ck.check("R_{1/2} equals the printed polynomial", rh == printed, &rh);
    let (n_real, bound) = count_in_cauchy_box(&rh)?;
    ck.check("R_{1/2} has two real roots", n_real == 2, format!("Sturm count {n_real} on (-{bound}, {bound})"));
    let i1 = (q(327, 512), q(655, 1024));
    let i2 = (q(991, 1024), q(31, 32));
    let c1 = sturm_count(&rh, &i1.0, &i1.1)?;
    let c2 = sturm_count(&rh, &i2.0, &i2.1)?;
    ck.check("r1 in [327/512, 655/1024]", c1.count == 1 && c1.root_at_lo + c1.root_at_hi == 0, c1.count);
    ck.check("r2 in [991/1024, 31/32]", c2.count == 1 && c2.root_at_lo + c2.root_at_hi == 0, c2.count);

    let ph = at_rational(&p_eta(), E, &half, X);
    let xb = (q(94993, 131072), q(23749, 32768));
    let cx = sturm_count(&ph, &xb.0, &xb.1)?;
    ck.check(
        "P_{1/2} has one root in [94993/131072, 23749/32768]",
        cx.count == 1 && cx.root_at_lo + cx.root_at_hi == 0,
        cx.count,
    );
    let dv = v_value(&xb.1, &half) - v_value(&i1.0, &half);
    ck.check("V(xbar2) - V(rlow1) < 0", dv < Q::zero(), show_q(&dv));

    // Omega = (x1, x2): x1 < 0 is the root of D, x2 > 0 solves V(x2) = V(x1)
    let dh = at_rational(&d_eta(), E, &half, X);
    let x1 = isolate_roots(&dh, &qi(-1), &Q::zero(), &q(1, 1 << 30))?;
    let p_boxes = isolate_roots(&ph, &Q::zero(), &half, &q(1, 1 << 30))?;
    if let Some(b1) = x1.first() {
        ck.note("x1", format!("{:.6}", b1.mid_f64()));
        let v1 = v_value(&b1.lo, &half);
        let x2 = p_boxes.iter().find(|b| to_f64(&(v_value(&b.lo, &half) - &v1)).abs() < 1e-6);
        if let Some(b) = x2 {
            ck.note("x2", format!("{:.6}", b.mid_f64()));
            ck.note("x2 inside the printed box", b.lo >= xb.0 && b.hi <= xb.1);
        }
    }
    let in_box: Vec<String> = isolate_roots(&ph, &xb.0, &xb.1, &q(1, 1 << 30))?
        .iter()
        .map(|b| format!("{:.6}", b.mid_f64()))
        .collect();
    ck.note("root of P_{1/2} in the printed box", format!("[{}]", in_box.join(", ")));

    // Omega = (x1, x2) sits inside (-1, eta): no root of R_eta there for the three sample values
    for (name, eta) in [("1/2", half.clone()), ("277/256", q(277, 256)), ("2", qi(2))] {
        let re = at_rational(&r, E, &eta, X);
        let c = sturm_count(&re, &qi(-1), &eta)?;
        ck.check(&format!("R_eta has no root on (-1, eta) at eta = {name}"), c.count == 0, c.count);
    }
    Ok(ck.finish(ClaimId::C5))
}

fn c6() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let dr = r_eta().derivative(E);
    let disc = upoly_of(&discriminant(&dr, X)?.remap(2, &[0, 0]), 0);
    let lo = q(277, 256);
    let hi = q(555, 512);
    let c = sturm_count(&disc, &lo, &hi)?;
    ck.check(
        "Disc_x(dR/deta) has no root in [277/256, 555/512]",
        c.count == 0 && c.root_at_lo + c.root_at_hi == 0,
        format!("Sturm count {}", c.count),
    );
    let eta = q(1083, 1000);
    ck.check("1083/1000 lies in [277/256, 555/512]", lo < eta && eta < hi, &eta);
    let d = at_rational(&dr, E, &eta, X);
    let c = sturm_count(&d, &qi(-1), &eta)?;
    ck.check("dR/deta at eta = 1083/1000 has no root on (-1, eta)", c.count == 0, format!("Sturm count {}", c.count));
    Ok(ck.finish(ClaimId::C6))
}

// ---------------------------------------------------------------------------
// theta claims

/// The printed L(X, Y) with theta as an extra polynomial.
fn l_printed(xx: &ZPoly, yy: &ZPoly, t: &ZPoly) -> ZPoly {
    let nv = xx.nvars();
    let c = |n: i64| k(n, nv);
    let four_t1 = &t.scale(&big(4)) + &c(1);
    let a3 = &(&four_t1 * &(xx - yy)) * &(&xx.scale(&big(-8)) - &c(8));
    let x2 = xx.pow(2);
    let x3 = xx.pow(3);
    let a2 = &(&(&(&(xx * t).scale(&big(8)) - &x2.scale(&big(8))) + &t.scale(&big(8))) - &xx.scale(&big(20))) - &c(12);
    let a1 = &(&(&(&(&(&(&x2 * t).scale(&big(8)) - &x3.scale(&big(8))) + &(xx * t).scale(&big(20)))
        - &x2.scale(&big(20)))
        + &t.scale(&big(12)))
        - &xx.scale(&big(18)))
        - &c(6);
    let a0 = &(&(&(&(&(&(&x2 * t).scale(&big(8)) - &x3.scale(&big(8))) + &(xx * t).scale(&big(12)))
        - &x2.scale(&big(12)))
        + &t.scale(&big(5)))
        - &xx.scale(&big(6)))
        - &c(1);
    let y2 = yy.pow(2);
    &(&(&(&a3 * &yy.pow(3)) + &(&a2 * &y2)) + &(&a1 * yy)) + &a0
}

/// S(x, z) with A(x) - A(z) = -(x - z) S(x, z) / 6.
fn s_printed(nv: usize, xv: usize, zv: usize, tv: usize) -> ZPoly {
    let x = ZPoly::var(nv, xv);
    let z = ZPoly::var(nv, zv);
    let t = ZPoly::var(nv, tv);
    let c = |n: i64| k(n, nv);
    let b2 = &(&z.scale(&big(3)) + &c(2)) - &t.scale(&big(4));
    let b1 = &(&(&z.pow(2).scale(&big(3)) + &z.scale(&big(2))) - &(&t * &z).scale(&big(4))) - &t.scale(&big(3));
    let b0 = &(&(&z.pow(3).scale(&big(3)) + &z.pow(2).scale(&big(2))) - &(&t * &z.pow(2)).scale(&big(4)))
        - &(&t * &z).scale(&big(3));
    &(&(&x.pow(3).scale(&big(3)) + &(&b2 * &x.pow(2))) + &(&b1 * &x)) + &b0
}

/// 6 A(x).
fn six_a(nv: usize, xv: usize, tv: usize) -> ZPoly {
    let x = ZPoly::var(nv, xv);
    let t = ZPoly::var(nv, tv);
    let inner = &(&x.pow(2).scale(&big(3)) + &(&x * &(&k(1, nv) - &t.scale(&big(2)))).scale(&big(2))) - &t.scale(&big(3));
    -&(&x.pow(2) * &inner)
}

/// Degree-10 R(x; theta) obtained from l1 alone, as a polynomial in (x, theta).
///
/// T = numerator of (l1(x) - l1(y)) / (x - y), calR = Res_y(S(x,y), T),
/// R = primitive part of calR with all (2x+1) factors removed.
/// Also returns the power of (2x+1) removed.
pub fn theta_r() -> (ZPoly, u32) {
    let nv = 3; // x, y, theta
    let x = ZPoly::var(nv, 0);
    let y = ZPoly::var(nv, 1);
    let t = ZPoly::var(nv, 2);
    let one = k(1, nv);
    let nfun = |v: &ZPoly| v + &one;
    let dfun = |v: &ZPoly| &(&v.scale(&big(2)) + &one).pow(3) * &(v - &t);
    let num = &(&nfun(&x) * &dfun(&y)) - &(&nfun(&y) * &dfun(&x));
    let tt = num.exact_div(&(&x - &y)).expect("x - y divides the balance numerator");
    let s = s_printed(nv, 0, 1, 2);
    let cal_r = resultant(&s, &tt, 1).expect("nonzero").remap(2, &[0, 0, 1]);
    let two_x1 = &ZPoly::var(2, 0).scale(&big(2)) + &k(1, 2);
    let mut r = cal_r;
    let mut m = 0;
    while let Some(qt) = r.exact_div(&two_x1) {
        r = qt;
        m += 1;
    }
    let c = r.content();
    let r = r.exact_div(&ZPoly::constant(2, c)).expect("content divides");
    (r, m)
}

fn closed_forms_theta(r: &ZPoly) -> (RationalPoly, RationalPoly, RationalPoly) {
    let r0 = at_rational(r, 0, &Q::zero(), 1);
    let rh = at_rational(r, 0, &q(-1, 2), 1);
    // R(theta): substitute x = theta
    let rt = r.compose(0, &ZPoly::var(2, 1)).to_upoly(1).expect("univariate in theta");
    (r0, rh, rt)
}

fn printed_r0() -> RationalPoly {
    eta_factor_product(1, &[(&[-1, 5], 1), (&[1, 1], 1), (&[1, 21, 48, 64], 1)])
}

fn printed_rhalf() -> RationalPoly {
    eta_factor_product(1, &[(&[-1, 2], 1), (&[1, 2], 4)]).scale(&q(9, 2))
}

fn printed_rtheta() -> RationalPoly {
    eta_factor_product(1, &[(&[1, 1], 3), (&[-1, 2], 3), (&[1, 2], 4)])
}

fn c7() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    // printed pipeline in variables (x, y, z, theta)
    let nv = 4;
    let x = ZPoly::var(nv, 0);
    let y = ZPoly::var(nv, 1);
    let z = ZPoly::var(nv, 2);
    let t = ZPoly::var(nv, 3);
    let one = k(1, nv);

    // L(x, l1(x)) * (6 Dd)^4 = E + sqrt2 * O with l1 = sqrt2 N / (6 Dd)
    let n = &(&t.scale(&big(4)) + &one) * &(&x + &one);
    let dd = &(&x.scale(&big(2)) + &one).pow(3) * &(&x - &t);
    let six_dd = dd.scale(&big(6));
    let lxz = l_printed(&x, &z, &t);
    let cs = lxz.coeffs_in(2);
    let mut even = ZPoly::zero(nv);
    let mut odd = ZPoly::zero(nv);
    for (kk, c) in cs.iter().enumerate() {
        let two_pow = big(2).pow((kk / 2) as u32);
        let term = &(&c.scale(&two_pow) * &n.pow(kk as u32)) * &six_dd.pow((4 - kk) as u32);
        if kk % 2 == 0 {
            even = &even + &term;
        } else {
            odd = &odd + &term;
        }
    }
    ck.check(
        "L(x, l1(x)) vanishes identically",
        even.is_zero() && odd.is_zero(),
        format!("rational part terms {}, sqrt2 part terms {}", even.len(), odd.len()),
    );

    let lyz = l_printed(&y, &z, &t);
    let res = resultant(&lxz, &lyz, 2)?;
    ck.note("Res_z(L(x,z), L(y,z)) total degree", res.total_degree().unwrap_or(0));
    let xy4 = (&x - &y).pow(4);
    let cof = &(&(&(&t + &one) * &(&t.scale(&big(4)) + &one).pow(8)) * &xy4).scale(&big(8192));
    let tpow = res.exact_div(cof);
    ck.check("8192(theta+1)(4theta+1)^8(x-y)^4 divides Res_z", tpow.is_some(), "exact division");
    ck.note("(x-y)^4 divides Res_z", res.exact_div(&xy4).is_some());
    if let Some(t4) = tpow {
        let troot = t4.kth_root(4);
        ck.check("quotient is a perfect fourth power T^4", troot.is_some(), "exact 4th root");
    }

    // S(x,z) against A
    let nv2 = 3;
    let s = s_printed(nv2, 0, 1, 2);
    let xa = ZPoly::var(nv2, 0);
    let za = ZPoly::var(nv2, 1);
    let lhs = &six_a(nv2, 0, 2) - &six_a(nv2, 1, 2);
    let rhs = -&(&(&xa - &za) * &s);
    ck.check("6(A(x) - A(z)) = -(x - z) S(x, z)", lhs == rhs, "exact polynomial identity");

    // route from l1 alone
    let (r, m) = theta_r();
    ck.note("derived calR", format!("constant * (2x+1)^{m} * R(x)"));
    let deg = r.degree_in(0).unwrap_or(0);
    ck.check("R has degree 10 in x", deg == 10, deg);
    let (r0, rh, rt) = closed_forms_theta(&r);
    let k0 = r0.ratio_to(&printed_r0());
    let kh = rh.ratio_to(&printed_rhalf());
    let kt = rt.ratio_to(&printed_rtheta());
    let consistent = k0.is_some() && k0 == kh && kh == kt;
    ck.check(
        "R(0), R(-1/2), R(theta) match the printed closed forms up to one constant",
        consistent,
        format!("constants: {}, {}, {}", show_opt(&k0), show_opt(&kh), show_opt(&kt)),
    );
    let b = r0.cauchy_bound().max(rh.cauchy_bound()) + qi(1);
    let c0 = sturm_count(&r0, &half(), &b)?;
    let ch = sturm_count(&rh, &half(), &b)?;
    ck.check("R(0) has no root for theta > 1/2", c0.count == 0 && c0.root_at_hi == 0, c0.count);
    ck.check("R(-1/2) has no root for theta > 1/2", ch.count == 0 && ch.root_at_hi == 0, ch.count);

    let disc = upoly_of(&discriminant(&r, 0)?, 1);
    let dd_deg = disc.degree().unwrap_or(0);
    ck.check("Disc_x(R) has degree 70", dd_deg == 70, dd_deg);
    let bd = disc.cauchy_bound();
    let cd = sturm_count(&disc, &half(), &bd)?;
    ck.check("Disc_x(R) has no root in (1/2, inf)", cd.count == 0, format!("Sturm count {} on (1/2, {bd})", cd.count));

    for (name, th) in [("1/2", half()), ("3/5", q(3, 5))] {
        let rx = at_rational(&r, 1, &th, 0);
        let c = sturm_count(&rx, &q(-1, 2), &Q::zero())?;
        ck.check(&format!("R(x; {name}) has no root on (-1/2, 0)"), c.count == 0, format!("Sturm count {}", c.count));
    }
    Ok(ck.finish(ClaimId::C7))
}

fn half() -> Q {
    q(1, 2)
}

fn c8() -> Result<Certificate, AlgError> {
    let mut ck = Checks::new();
    let (r, _) = theta_r();
    let (r0, _, rt) = closed_forms_theta(&r);
    let fifth = q(1, 5);
    ck.check("R(0) vanishes at theta = 1/5", r0.eval(&fifth).is_zero(), r0.eval(&fifth));
    let kt = rt.ratio_to(&printed_rtheta());
    ck.check(
        "R(theta) = (theta+1)^3 (2theta-1)^3 (1+2theta)^4 up to a constant",
        kt.is_some(),
        format!("constant {}", show_opt(&kt)),
    );
    let ct = sturm_count(&rt, &Q::zero(), &half())?;
    ck.check("R(theta) has no root on (0, 1/2)", ct.count == 0, ct.count);
    let disc = upoly_of(&discriminant(&r, 0)?, 1);
    let cd = sturm_count(&disc, &Q::zero(), &half())?;
    ck.check(
        "Disc_x(R) has exactly one root on (0, 1/2), at theta = 1/5",
        cd.count == 1 && disc.eval(&fifth).is_zero(),
        format!("Sturm count {}", cd.count),
    );
    for (name, th, expect) in [("1/10", q(1, 10), 0usize), ("1/5", q(1, 5), 0), ("3/10", q(3, 10), 1)] {
        let rx = at_rational(&r, 1, &th, 0);
        let c = sturm_count(&rx, &Q::zero(), &th)?;
        ck.check(
            &format!("R(x; {name}) has {expect} root(s) on (0, {name})"),
            c.count == expect,
            format!("Sturm count {}", c.count),
        );
    }
    Ok(ck.finish(ClaimId::C8))
}
