//! `b_L` along a few directions, checked against the linear-algebra oracle.

use bernstein_sato::bl::{b_l, b_l_oracle, OracleOutcome};
use bernstein_sato::malgrange::PolyPair;
use bernstein_sato::parse::parse_poly;

fn main() {
    let f = PolyPair::pair(parse_poly("x1^2 + x2^3").unwrap(), parse_poly("x2").unwrap()).unwrap();
    for l in [[1, 0], [0, 1], [1, 1], [2, 3]] {
        let r = b_l(&f, &l).unwrap();
        let oracle = match b_l_oracle(&f, &l, 8).unwrap() {
            OracleOutcome::Found(b) => format!("oracle agrees: {}", b == r.global),
            OracleOutcome::NoneBelow(d) => format!("oracle: nothing up to degree {d}"),
        };
        println!("L = {:?}: b_L = {}  ({oracle})", r.l, r.b);
    }
}
