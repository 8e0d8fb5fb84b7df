//! Print the closed-form contrast tables.
//!
//! `cargo run --example theory_tables -- csv` switches to CSV output.

use evcs::theory::tables::{render_csv, render_text, table_rows, Family, Table};

fn main() -> evcs::Result<()> {
    let csv = std::env::args().any(|a| a == "csv");
    let plan = [
        (Table::I, None),
        (Table::II, None),
        (Table::III, None),
        (Table::IV, Some(Family::Or)),
        (Table::IV, Some(Family::Xor)),
        (Table::IV, Some(Family::Better)),
    ];
    for (table, family) in plan {
        let rows = table_rows(table, table.default_kmax(), family)?;
        if csv {
            print!("{}", render_csv(&rows));
        } else {
            println!("{}", render_text(table, family, &rows));
        }
    }
    Ok(())
}
