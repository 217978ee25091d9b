//! Closed-form periodic-point counts, checked against the pruned search, and
//! the two-sided bound on the signed classes.

use dyck_shift::enumeration::{count_closed_form, scan_count_bounds, ClassFilter, Enumerator, PeriodicSetQuery};
use dyck_shift::PeriodClass;

fn main() -> dyck_shift::Result<()> {
    println!("{:>3} {:>10} {:>10} {:>10}", "n", "alpha", "beta", "zero");
    for n in 1..=10 {
        let counts = Enumerator::new(PeriodicSetQuery::new(2, n, ClassFilter::All)?).par_fold(
            || [0u64; 3],
            |acc, _, c| acc[c as usize] += 1,
            |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
        )?;
        for c in PeriodClass::ALL {
            assert_eq!(count_closed_form(&PeriodicSetQuery::new(2, n, c)?), counts[c as usize].into());
        }
        println!("{n:>3} {:>10} {:>10} {:>10}", counts[0], counts[1], counts[2]);
    }

    let scan = scan_count_bounds(2, 1..=20);
    println!("(1/3)3^n <= #Per <= 3^n holds from n = {:?}", scan.holds_from);
    Ok(())
}
