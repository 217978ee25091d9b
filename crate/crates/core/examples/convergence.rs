//! Empirical measures of periodic-point ensembles converging to the measures
//! of maximal entropy, as the sup distance over cylinders.

use dyck_shift::measures::{convergence_series, Ensemble, Target};
use dyck_shift::rational::to_decimal;
use dyck_shift::Alphabet;

fn main() -> dyck_shift::Result<()> {
    let ab = Alphabet::new(2)?;
    let periods = [4, 6, 8, 10, 12];
    for (ensemble, target) in [(Ensemble::Alpha, Target::Alpha), (Ensemble::Beta, Target::Beta), (Ensemble::Union, Target::Mixture)] {
        for m in [1, 2] {
            let report = convergence_series(&ab, ensemble, m, &periods, target)?;
            let d: Vec<String> = report.rows.iter().map(|r| to_decimal(&r.sup_distance, 4)).collect();
            println!("{ensemble:>5} vs {target:<7} m={m}: {}", d.join("  "));
        }
    }
    Ok(())
}
