//! Sylvester resultants and discriminants by fraction-free elimination.

use num_bigint::BigInt;

use crate::error::AlgError;
use crate::mpoly::ZPoly;

/// Sylvester matrix of `p` and `q` with respect to variable `v`.
///
/// Rows 0..deg q hold the shifted coefficients of `p`, the remaining rows those of `q`.
pub fn sylvester(p: &ZPoly, q: &ZPoly, v: usize) -> Vec<Vec<ZPoly>> {
    let nv = p.nvars();
    let pc = p.coeffs_in(v);
    let qc = q.coeffs_in(v);
    let m = pc.len() - 1;
    let n = qc.len() - 1;
    let size = m + n;
    let mut mat = vec![vec![ZPoly::zero(nv); size]; size];
    for i in 0..n {
        for (k, c) in pc.iter().enumerate() {
            // highest power first
            mat[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in qc.iter().enumerate() {
            mat[n + i][i + n - k] = c.clone();
        }
    }
    mat
}

/// Determinant by Bareiss fraction-free elimination with row pivoting.
pub fn bareiss_det(mut a: Vec<Vec<ZPoly>>, nvars: usize) -> ZPoly {
    let n = a.len();
    if n == 0 {
        return ZPoly::one(nvars);
    }
    let mut sign = 1i32;
    let mut prev = ZPoly::one(nvars);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            // pick the sparsest nonzero pivot below
            let pick = (k + 1..n).filter(|&i| !a[i][k].is_zero()).min_by_key(|&i| a[i][k].len());
            match pick {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return ZPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = t.exact_div(&prev).expect("Bareiss step must divide exactly");
            }
            a[i][k] = ZPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign < 0 {
        -&d
    } else {
        d
    }
}

/// Res_v(p, q) as the Sylvester determinant.
pub fn resultant(p: &ZPoly, q: &ZPoly, v: usize) -> Result<ZPoly, AlgError> {
    let nv = p.nvars();
    let (Some(dp), Some(dq)) = (p.degree_in(v), q.degree_in(v)) else {
        return Err(AlgError::ZeroPolynomial);
    };
    if dp == 0 && dq == 0 {
        return Ok(ZPoly::one(nv));
    }
    if dp == 0 {
        return Ok(p.pow(dq));
    }
    if dq == 0 {
        return Ok(q.pow(dp));
    }
    Ok(bareiss_det(sylvester(p, q, v), nv))
}

/// Disc_v(p) = (-1)^(n(n-1)/2) Res_v(p, dp/dv) / lc_v(p).
///
/// This normalization gives b^2 - 4ac for a quadratic and is the one used
/// throughout the certificates.
pub fn discriminant(p: &ZPoly, v: usize) -> Result<ZPoly, AlgError> {
    let n = p.degree_in(v).ok_or(AlgError::ZeroPolynomial)?;
    if n < 2 {
        return Err(AlgError::DegreeTooLow);
    }
    let r = resultant(p, &p.derivative(v), v)?;
    let lc = p.coeffs_in(v).pop().expect("nonzero");
    let d = r.exact_div(&lc).ok_or(AlgError::NotDivisible)?;
    let s = if (n * (n - 1) / 2) % 2 == 1 { BigInt::from(-1) } else { BigInt::from(1) };
    Ok(d.scale(&s))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shared_root_gives_zero() {
        let p = ZPoly::univariate(1, 0, &[-1, 0, 1]);
        let q = ZPoly::univariate(1, 0, &[-1, 1]);
        assert!(resultant(&p, &q, 0).unwrap().is_zero());
    }

    #[test]
    fn quadratic_discriminant() {
        // a x^2 + b x + c with symbolic a, b, c as variables 1..3
        let x = ZPoly::var(4, 0);
        let a = ZPoly::var(4, 1);
        let b = ZPoly::var(4, 2);
        let c = ZPoly::var(4, 3);
        let p = &(&(&a * &x.pow(2)) + &(&b * &x)) + &c;
        let d = discriminant(&p, 0).unwrap();
        let expect = &b.pow(2) - &(&a * &c).scale(&BigInt::from(4));
        assert_eq!(d, expect);
    }

    #[test]
    fn resultant_of_linear_factors() {
        // Res(x - 2, x^2 - 1) = (2^2 - 1) = 3
        let p = ZPoly::univariate(1, 0, &[-2, 1]);
        let q = ZPoly::univariate(1, 0, &[-1, 0, 1]);
        assert_eq!(resultant(&p, &q, 0).unwrap(), ZPoly::constant(1, 3));
    }
}
