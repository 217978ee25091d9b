//! Sampled pushforward of the uniform Bernoulli measure through the
//! decoration map, against the exact masses.

use dyck_shift::krieger::{mme_cylinder, Side};
use dyck_shift::oracle::{mc_cylinder_table, MonteCarloConfig};
use dyck_shift::rational::to_f64;
use dyck_shift::Alphabet;

fn main() -> dyck_shift::Result<()> {
    let ab = Alphabet::new(2)?;
    let cfg = MonteCarloConfig { samples: 200_000, ..Default::default() };
    let table = mc_cylinder_table(&ab, Side::Alpha, 2, &cfg)?;
    for text in ["a1", "b1", "a1,b1", "b1,a2", "a2,a1"] {
        let v = ab.parse_word(text)?;
        let est = table.estimate(&v);
        let exact = to_f64(mme_cylinder(&ab, Side::Alpha, &v).value());
        println!("{text:>6}  exact {exact:.5}  sampled {:.5} ± {:.5}", est.estimate, est.stderr);
    }
    println!("discarded {:.4}%", 100.0 * table.discarded_fraction());
    Ok(())
}
