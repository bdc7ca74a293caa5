use std::collections::HashSet;
use weylcoh::arrangements::*;
use weylcoh::intlin::IMat;
use weylcoh::weyl::root_system_e6;

fn main() {
    let rs = root_system_e6();
    let tor = toric_poset(&rs);
    let n = tor.layers.len();
    let nonzero_mu = tor.mobius.iter().filter(|&&m| m != 0).count();
    println!("total {} | mu!=0 {}", n, nonzero_mu);
    let minus = IMat::identity(6).neg();
    let (fixed, _) = fixed_subposet(&tor, &minus);
    println!("fixed by -id: {}", fixed.len());
    let saturations: HashSet<_> = tor.layers.iter().map(|l| l.basis.clone()).collect();
    println!("distinct saturations: {}", saturations.len());
    // layers whose values are all trivial (identity components)
    let trivial = tor.layers.iter().filter(|l| l.values.iter().all(|v| v.is_zero())).count();
    println!("identity-component layers: {}", trivial);
}
