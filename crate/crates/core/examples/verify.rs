use dyck_shift::oracle::MonteCarloConfig;
use dyck_shift::verify::{run_suite, Suite};

fn main() -> dyck_shift::Result<()> {
    for r in run_suite(Suite::Core, &MonteCarloConfig::default())? {
        println!("{:<20} {:?}", r.check, r.status);
    }
    Ok(())
}
