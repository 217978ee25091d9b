//! Dyck monoid reduction and the periodic class of a word.

use dyck_shift::{h_value, periodic_class, reduce, Alphabet};

fn main() -> dyck_shift::Result<()> {
    let ab = Alphabet::new(2)?;
    for text in ["a1,b1", "a1,b2", "b2,a1,a2,b2", "a1,a2,b2", "b1,a2", "a1,b1,b2,a2"] {
        let w = ab.parse_word(text)?;
        let class = match periodic_class(&w)? {
            Some(c) => c.to_string(),
            None => "not periodic".into(),
        };
        println!("{text:>14}  red = {:<10}  H = {:>2}  {class}", reduce(&w).to_string(), h_value(&w));
    }
    Ok(())
}
