//! Stabilizes every case and prints the regenerated table of stable
//! surfaces, with the stratum each case lands in.
//!
//! ```bash
//! cargo run --example stable_reduction_table
//! ```

use slq::stabilizer::table_mismatches;
use slq::{regenerate_table, stabilize, InputCase};

fn main() -> slq::Result<()> {
    for case in InputCase::all() {
        let rec = stabilize(&case)?;
        println!("{:<45} → row {} ({})", case.to_string(), rec.surface_row.number(), rec.stratum);
    }
    println!();
    let table = regenerate_table()?;
    for row in &table {
        println!("{row}");
    }
    println!("mismatches: {}", table_mismatches(&table).len());
    Ok(())
}
