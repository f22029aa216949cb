use exactalg::upoly::{q, qi};
use exactalg::{discriminant, resultant, sturm_count, RationalPoly, ZPoly, Q};
use num_bigint::BigInt;
use proptest::prelude::*;

fn from_roots(roots: &[i64]) -> RationalPoly {
    roots
        .iter()
        .fold(RationalPoly::one(), |acc, &r| &acc * &RationalPoly::from_ints(&[-r, 1]))
}

fn zfrom_roots(roots: &[i64]) -> ZPoly {
    roots
        .iter()
        .fold(ZPoly::one(1), |acc, &r| &acc * &ZPoly::univariate(1, 0, &[-r, 1]))
}

fn zconst(p: &ZPoly) -> BigInt {
    p.terms().map(|(_, c)| c.clone()).next().unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    // Res(prod (x - a_i), prod (x - b_j)) = prod (a_i - b_j)
    #[test]
    fn resultant_matches_root_products(
        a in prop::collection::vec(-6i64..6, 1..5),
        b in prop::collection::vec(-6i64..6, 1..5),
    ) {
        let r = resultant(&zfrom_roots(&a), &zfrom_roots(&b), 0).unwrap();
        let mut expect = BigInt::from(1);
        for x in &a {
            for y in &b {
                expect *= BigInt::from(x - y);
            }
        }
        prop_assert_eq!(zconst(&r), expect);
    }

    #[test]
    fn resultant_antisymmetry(
        a in prop::collection::vec(-5i64..5, 1..5),
        b in prop::collection::vec(-5i64..5, 1..5),
    ) {
        let p = zfrom_roots(&a);
        let s = zfrom_roots(&b);
        let r1 = zconst(&resultant(&p, &s, 0).unwrap());
        let r2 = zconst(&resultant(&s, &p, 0).unwrap());
        let sign = if (a.len() * b.len()) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(r1, r2 * BigInt::from(sign));
    }

    // monic: Disc = prod_{i<j} (a_i - a_j)^2
    #[test]
    fn discriminant_matches_root_differences(a in prop::collection::vec(-5i64..5, 2..6)) {
        let d = discriminant(&zfrom_roots(&a), 0).unwrap();
        let mut expect = BigInt::from(1);
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                expect *= BigInt::from((a[i] - a[j]).pow(2));
            }
        }
        prop_assert_eq!(zconst(&d), expect);
    }

    // counts distinct roots strictly inside (lo, hi), roots given as halves
    #[test]
    fn sturm_count_matches_known_roots(
        roots in prop::collection::vec(-20i64..20, 1..7),
        lo in -25i64..0,
        width in 1i64..30,
        scale in 1i64..4,
    ) {
        let hi = lo + width;
        let mut p = from_roots(&roots);
        p = p.scale(&qi(scale));
        let lo_q = q(lo, 2);
        let hi_q = q(hi, 2);
        // roots are r/2 after substituting x -> 2x
        let halved = {
            let mut acc = RationalPoly::one();
            for &r in &roots {
                acc = &acc * &RationalPoly::new(vec![q(-r, 2), Q::from_integer(1.into())]);
            }
            acc.scale(&qi(scale))
        };
        let mut distinct = roots.clone();
        distinct.sort();
        distinct.dedup();
        let inside = distinct.iter().filter(|&&r| lo < r && r < hi).count();
        let c = sturm_count(&halved, &lo_q, &hi_q).unwrap();
        prop_assert_eq!(c.count, inside);
        prop_assert_eq!(c.root_at_lo as usize, roots.iter().filter(|&&r| r == lo).count());
        prop_assert_eq!(c.root_at_hi as usize, roots.iter().filter(|&&r| r == hi).count());
        // integer-root version on the doubled interval agrees too
        let ci = sturm_count(&p, &qi(lo), &qi(hi)).unwrap();
        prop_assert_eq!(ci.count, inside);
    }

    #[test]
    fn division_reconstructs(
        a in prop::collection::vec(-9i64..9, 1..8),
        b in prop::collection::vec(-9i64..9, 1..5),
    ) {
        let pa = RationalPoly::from_ints(&a);
        let pb = RationalPoly::from_ints(&b);
        prop_assume!(!pb.is_zero());
        let (qt, r) = pa.div_rem(&pb);
        prop_assert_eq!(&(&qt * &pb) + &r, pa);
        if let (Some(dr), Some(db)) = (r.degree(), pb.degree()) {
            prop_assert!(dr < db);
        }
    }

    #[test]
    fn square_and_fourth_roots(c in prop::collection::vec(-4i64..4, 1..6), e in 0u32..3) {
        let x = ZPoly::var(2, 0);
        let y = ZPoly::var(2, 1);
        let mut p = ZPoly::zero(2);
        for (k, &ck) in c.iter().enumerate() {
            let t = &(&x.pow(k as u32) * &y.pow(e)).scale(&BigInt::from(ck));
            p = &p + t;
        }
        p = &p + &ZPoly::constant(2, 1);
        let s = p.pow(2).kth_root(2).expect("perfect square");
        prop_assert!(s == p || s == -&p);
        let f = p.pow(4).kth_root(4).expect("perfect fourth power");
        prop_assert!(f == p || f == -&p);
    }
}

#[test]
fn non_square_has_no_root() {
    let x = ZPoly::var(1, 0);
    let p = &x.pow(2) + &ZPoly::constant(1, 1);
    assert!(p.sqrt().is_none());
    assert!(x.pow(2).scale(&BigInt::from(2)).sqrt().is_none());
}
