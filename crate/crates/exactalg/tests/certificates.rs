use exactalg::{certify, certify_all, Certificate, ClaimId, Status};

fn witness_ok(c: &Certificate, name: &str) -> bool {
    c.witnesses.iter().any(|w| w.check == name && w.ok == Some(true))
}

#[test]
fn eta_identities_verify() {
    for id in [ClaimId::C1, ClaimId::C2, ClaimId::C3, ClaimId::C5, ClaimId::C6] {
        let c = certify(id).unwrap();
        assert_eq!(c.status, Status::Verified, "{id}: {:?}", c.failed_check);
    }
}

#[test]
fn theta_small_claims_verify() {
    let c = certify(ClaimId::C8).unwrap();
    assert_eq!(c.status, Status::Verified, "{:?}", c.failed_check);
}

#[test]
fn q_cofactor_divides_the_resultant() {
    let c = certify(ClaimId::C4).unwrap();
    assert!(witness_ok(&c, "printed cofactor divides the resultant"));
}

#[test]
fn theta_large_route_from_l1() {
    let c = certify(ClaimId::C7).unwrap();
    for name in [
        "6(A(x) - A(z)) = -(x - z) S(x, z)",
        "R has degree 10 in x",
        "R(0), R(-1/2), R(theta) match the printed closed forms up to one constant",
        "Disc_x(R) has degree 70",
        "Disc_x(R) has no root in (1/2, inf)",
        "R(x; 1/2) has no root on (-1/2, 0)",
    ] {
        assert!(witness_ok(&c, name), "{name}");
    }
}

#[test]
fn second_stage_is_out_of_scope() {
    assert_eq!(certify(ClaimId::C9).unwrap().status, Status::OutOfScope);
}

#[test]
fn reruns_are_bit_identical() {
    let a = certify_all(false).unwrap();
    let b = certify_all(false).unwrap();
    assert_eq!(a.len(), 9);
    let ja: Vec<String> = a.iter().map(|c| c.to_json()).collect();
    let jb: Vec<String> = b.iter().map(|c| c.to_json()).collect();
    assert_eq!(ja, jb);
    assert!(a.iter().all(|c| c.wall_time.is_none()));
}

#[test]
fn json_shape() {
    let c = certify(ClaimId::C2).unwrap();
    let v: serde_json::Value = serde_json::from_str(&c.to_json()).unwrap();
    assert_eq!(v["claim_id"], "C2");
    assert_eq!(v["status"], "verified");
    assert!(v["witnesses"].as_array().unwrap().len() >= 3);
}
