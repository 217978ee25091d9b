//! Exact periodic points of the heterochaos baker map.

use dyck_shift::baker::{solve_periodic_point, BakerParams};
use dyck_shift::rational::{format_rational, ratio};
use dyck_shift::Alphabet;

fn main() -> dyck_shift::Result<()> {
    let p = BakerParams::new(2, ratio(1, 5), ratio(1, 5))?;
    let ab = Alphabet::new(2)?;
    for text in ["a1", "a2,a1", "a1,a2,b2", "b1,a1,b1", "b2,a1,b1,b1"] {
        let w = ab.parse_word(text)?;
        let sol = solve_periodic_point(&p, &w)?;
        println!(
            "{text:>16}  x = ({}, {}, {})  lambda_c = {}  dim_u = {}  in Lambda: {}",
            format_rational(&sol.point.xu),
            format_rational(&sol.point.xc),
            format_rational(&sol.point.xs),
            format_rational(&sol.lambda_c),
            sol.unstable_dim,
            sol.in_lambda,
        );
        if sol.in_lambda {
            assert_eq!(p.itinerary(&sol.point, w.len()), w);
        }
    }
    Ok(())
}
