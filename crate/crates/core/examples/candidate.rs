//! The product of shifted `b_L` over the rays of the fan, and its membership.

use bernstein_sato::malgrange::PolyPair;
use bernstein_sato::parse::parse_poly;
use bernstein_sato::product::bernstein_candidate;

fn main() {
    let f = PolyPair::pair(parse_poly("x1").unwrap(), parse_poly("x1 + x2^2").unwrap()).unwrap();
    let p = bernstein_candidate(&f, true).unwrap();
    for blk in &p.blocks {
        println!("L = {:?}: b_L = {}, k from {:?} to 0", blk.l, blk.b_l, blk.shifts.last());
    }
    println!("candidate of degree {}: {}", p.product.degree(), p.product);
    let v = p.verification.unwrap();
    println!("member: {} (prefix {:?}), replayed: {:?}", v.member, v.prefix, v.replayed);
}
