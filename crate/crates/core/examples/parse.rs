//! Reading and printing polynomials.

use bernstein_sato::parse::{parse_poly, render};

fn main() {
    for text in ["x1^2 + 3/2*x2", "y1*x1^2 - x2", "(x1 - x2)^3", "x1^"] {
        match parse_poly(text) {
            Ok(p) => println!("{text:>16}  ->  {}", render(&p, 'x')),
            Err(e) => println!("{text:>16}  ->  {e}"),
        }
    }
}
