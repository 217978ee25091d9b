//! Exact cylinder masses of the two measures of maximal entropy.

use dyck_shift::krieger::{block_entropy, mixture_cylinder, mme_cylinder, Side};
use dyck_shift::rational::format_rational;
use dyck_shift::Alphabet;

fn main() -> dyck_shift::Result<()> {
    let ab = Alphabet::new(2)?;
    for text in ["a1", "b1", "a1,b1", "a1,b2", "b2,a1,a1", "a2,a2,b2"] {
        let v = ab.parse_word(text)?;
        println!(
            "{text:>9}  nu_alpha {:>6}  nu_beta {:>6}  mixture {:>6}",
            format_rational(mme_cylinder(&ab, Side::Alpha, &v).value()),
            format_rational(mme_cylinder(&ab, Side::Beta, &v).value()),
            format_rational(mixture_cylinder(&ab, &v).value()),
        );
    }
    for m in 1..=5 {
        println!("H_{m}/{m} = {:.5}  (log 3 = {:.5})", block_entropy(&ab, Side::Alpha, m), 3f64.ln());
    }
    Ok(())
}
