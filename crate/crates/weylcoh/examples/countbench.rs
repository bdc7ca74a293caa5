use weylcoh::pointcount::*;
fn main() {
    for (ct, q) in [(vec![6], 5u64), (vec![5,1], 5), (vec![4,2], 5), (vec![3,2,1], 5), (vec![3,3], 5), (vec![4,1,1], 5), (vec![2,2,2], 5), (vec![2,2,1,1], 5)] {
        let t0 = std::time::Instant::now();
        let r = count_fixed(&TwistedCountTask { n: 6, cycle_type: ct.clone(), q }).unwrap();
        println!("{ct:?} q={q}: orbits={} raw={} in {:?}", r.orbits, r.raw, t0.elapsed());
    }
}
