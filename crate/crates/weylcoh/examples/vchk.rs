//! Scratch driver: run the golden verification stages and print verdicts.

use weylcoh::moduli::{
    golden_d4_table, golden_s6_table, verify_d3_family, verify_d4_family, verify_sieve, Context,
};

fn main() {
    let stage = std::env::args().nth(1).unwrap_or_else(|| "d4".to_string());
    let mut ctx = Context::new();
    let verdicts = match stage.as_str() {
        "d4" => verify_d4_family(&mut ctx).expect("d4"),
        "d3" => verify_d3_family(&mut ctx).expect("d3"),
        "sieve" => {
            verify_sieve(&mut ctx, &golden_s6_table(), &golden_d4_table()).expect("sieve")
        }
        other => panic!("unknown stage {other}"),
    };
    for v in verdicts {
        println!("{} {}: {}", if v.pass { "PASS" } else { "FAIL" }, v.name, v.detail);
    }
}
