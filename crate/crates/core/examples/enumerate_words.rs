//! Stream the periodic words of one class in canonical order and write them
//! as CSV.

use dyck_shift::enumeration::{Enumerator, PeriodicSetQuery};
use dyck_shift::report::write_words_csv;
use dyck_shift::PeriodClass;

fn main() -> dyck_shift::Result<()> {
    let e = Enumerator::new(PeriodicSetQuery::new(2, 3, PeriodClass::Alpha)?);
    for w in e.iter()?.take(5) {
        println!("{w}");
    }
    println!("... {} words in total, {} shards", e.count()?, e.shards().len());

    let mut out = Vec::new();
    write_words_csv(&mut out, e.collect()?)?;
    print!("{}", String::from_utf8_lossy(&out[..out.len().min(60)]));
    println!("...");
    Ok(())
}
