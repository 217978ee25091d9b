//! Collapse a periodic word to the (M+1)-letter full shift and decorate it
//! back.

use dyck_shift::krieger::{collapse, decorate_periodic, CollapsedWord, Side};
use dyck_shift::Alphabet;

fn main() -> dyck_shift::Result<()> {
    let ab = Alphabet::new(2)?;
    let w = ab.parse_word("a2,b2,a1,a1,b1,a2")?;
    let z = collapse(Side::Alpha, &w);
    println!("{w}  ->  {z}  ->  {}", decorate_periodic(&z)?);

    // The wildcard at position 0 is matched across the period boundary.
    let z = CollapsedWord::parse(Side::Alpha, &ab, "B,a1,a2,a2")?;
    println!("{z}  ->  {}", decorate_periodic(&z)?);

    let z = CollapsedWord::parse(Side::Beta, &ab, "b1,A,b2,b2")?;
    for k in 0..z.len() {
        println!("rotate {k}: {}  ->  {}", z.rotate(k), decorate_periodic(&z.rotate(k))?);
    }
    Ok(())
}
