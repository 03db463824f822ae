//! Reproduces the published tables: the Linear and Backward cost tables at
//! six decimals, the bucket-occupancy table with its flagged source
//! misprints, and the asymptotic Θ-exponent summaries.

use distinctseq::cli::tables::{compute_table, render, TableFormat};

fn main() {
    for id in 1..=5u8 {
        let table = compute_table(id, 1, 10).unwrap();
        println!("== table {id} ==");
        println!("{}", render(&table, TableFormat::Markdown));
    }
}
