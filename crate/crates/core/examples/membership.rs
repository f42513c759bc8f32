//! Deciding whether a polynomial in `s` lies in the Bernstein-Sato ideal.

use bernstein_sato::malgrange::{action_check, MembershipOracle, PolyPair};
use bernstein_sato::parse::{parse_poly, parse_s_poly};

fn main() {
    let f = PolyPair::pair(parse_poly("x1").unwrap(), parse_poly("x1 + x2^2").unwrap()).unwrap();
    let oracle = MembershipOracle::new(&f).unwrap();
    for text in [
        "s1 + 1",
        "(s1+1)*(s2+1)*(s1+s2+3/2)*(s1+s2+2)",
        "(s1+1)*(s2+1)*(s1+2)*(s1+s2+3/2)*(s1+s2+2)*(s1+s2+5/2)",
    ] {
        let b = parse_s_poly(text).unwrap();
        let r = oracle.contains(&b).unwrap();
        match &r.certificate {
            Some(c) => println!("{text}: member, certificate replays: {}", action_check(c, &f).unwrap()),
            None => match r.obstruction {
                Some(j) => println!("{text}: not a member, does not vanish on s{} = -1", j + 1),
                None => println!("{text}: not a member"),
            },
        }
    }
}
