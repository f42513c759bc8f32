//! Generators of the annihilator of `f1^s1 f2^s2` for a pair of cusps.

use bernstein_sato::malgrange::{s_annihilator, PolyPair};
use bernstein_sato::parse::parse_poly;

fn main() {
    let f1 = parse_poly("x1^2 + x2^3").unwrap();
    let f2 = parse_poly("x1 + x2").unwrap();
    let f = PolyPair::pair(f1, f2).unwrap();
    for g in s_annihilator(&f).unwrap() {
        println!("{}", g.render());
    }
}
