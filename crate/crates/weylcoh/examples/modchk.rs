//! Scratch driver: compute one moduli table and print it.

use weylcoh::moduli::{compute_cohomology, Context};

fn main() {
    let id = std::env::args().nth(1).unwrap_or_else(|| "D4n".to_string());
    let mut ctx = Context::new();
    let t = compute_cohomology(&mut ctx, &id).expect("compute");
    println!("{id}:");
    for (i, row) in t.rows.iter().enumerate() {
        let terms: Vec<String> = row
            .iter()
            .zip(&t.irrep_labels)
            .filter(|(&m, _)| m != 0)
            .map(|(&m, l)| if m == 1 { l.clone() } else { format!("{m}*{l}") })
            .collect();
        println!("  H^{i} = {}", terms.join(" + "));
    }
}
