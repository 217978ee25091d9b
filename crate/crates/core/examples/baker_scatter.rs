//! Periodic points of the planar map projected to the (xu, xc) square, with
//! their first two moments.

use dyck_shift::baker::{scatter, BakerParams, Moments};
use dyck_shift::rational::ratio;
use dyck_shift::report::write_scatter_csv;
use dyck_shift::PeriodClass;

fn main() -> dyck_shift::Result<()> {
    let p = BakerParams::planar(2, ratio(1, 3))?;
    for class in [PeriodClass::Alpha, PeriodClass::Beta] {
        let rows = scatter(&p, &[9, 10], class, false)?;
        let m = Moments::of(&rows);
        println!(
            "{class}: {} points, mean ({:.3}, {:.3}), second moments ({:.3}, {:.3})",
            m.count, m.mean_u, m.mean_c, m.second_u, m.second_c
        );
        let path = std::env::temp_dir().join(format!("scatter_{class}.csv"));
        write_scatter_csv(std::fs::File::create(&path).map_err(|e| dyck_shift::Error::InvalidArgument(e.to_string()))?, &rows, 12)?;
        println!("  wrote {}", path.display());
    }
    Ok(())
}
