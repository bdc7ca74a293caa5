use weylcoh::chartab::*;
use weylcoh::weyl::*;
fn main() {
    let t0 = std::time::Instant::now();
    let g = weyl_group(root_system_e6());
    eprintln!("group {:?}", t0.elapsed());
    let mut table = character_table(&g).unwrap();
    eprintln!("table {:?}", t0.elapsed());
    assign_carter_labels(&g, &mut table);
    eprintln!("labels {:?}", t0.elapsed());
    let mut labs = table.labels.clone();
    labs.sort();
    println!("{}", labs.join(" "));
}
