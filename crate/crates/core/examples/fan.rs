//! The Gröbner fan over the quadrant of directions, its rays and κ.

use bernstein_sato::fan::{kappa, restricted_fan, skeleton};
use bernstein_sato::malgrange::PolyPair;
use bernstein_sato::parse::parse_poly;

fn main() {
    let f = PolyPair::pair(parse_poly("x1").unwrap(), parse_poly("x1 + x2^2").unwrap()).unwrap();
    let fan = restricted_fan(&f).unwrap();
    for c in &fan.cones {
        println!("cone {:?}, basis of {} elements", c.cone.rays(), c.basis.len());
    }
    println!("skeleton {:?}", skeleton(&fan).unwrap());
    println!("kappa {:?}", kappa(&fan).kappa);
}
