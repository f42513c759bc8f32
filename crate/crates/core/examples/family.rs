//! The closed form for pairs `(c1 x1^a + c2 x2^b + g1, c3 x1^c + c4 x2^d + g2)`.

use bernstein_sato::family::{generic_verify, FamilySpec, VerifyOptions};
use bernstein_sato::parse::parse_poly;
use bernstein_sato::scalars::ExactScalar;

fn main() {
    let mut spec = FamilySpec::new(2, 3, 3, 2);
    println!("N = ({}, {}), W1 = {:?}", spec.n1(), spec.n2(), spec.w1().unwrap());
    println!("b = {}", spec.explicit_b().unwrap());

    spec = FamilySpec::new(1, 2, 3, 1);
    spec.coeffs[0] = ExactScalar::param(0);
    spec.g1 = parse_poly("x1*x2^2").unwrap();
    let report = spec.validate();
    for c in &report.checks {
        println!("{}: {} ({})", c.name, c.passed, c.detail);
    }
    let v = generic_verify(&spec, &VerifyOptions { trials: 2, ..VerifyOptions::default() }).unwrap();
    for row in &v.rows {
        let point: Vec<String> = row.point.iter().map(|v| v.to_string()).collect();
        println!("trial {} at y1 = {}: member {}", row.trial, point.join(", "), row.member);
    }
}
