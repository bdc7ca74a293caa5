use weylcoh::golden;
use weylcoh::moduli::{compute_cohomology, Context};
use weylcoh::pointcount::partition_label;

fn main() {
    let cols: Vec<String> = golden::S5_COLS.iter().map(|p| partition_label(p)).collect();
    let blocks: [(&str, Vec<&[i64]>); 9] = [
        ("D4n", golden::D4N.iter().map(|r| r.as_slice()).collect()),
        ("D4c", golden::D4C.iter().map(|r| r.as_slice()).collect()),
        ("D4_2n_A4", golden::D4_2N_A4.iter().map(|r| r.as_slice()).collect()),
        ("D4_tn_A4", golden::D4_TN_A4.iter().map(|r| r.as_slice()).collect()),
        ("D4_2n_D4", golden::D4_2N_D4.iter().map(|r| r.as_slice()).collect()),
        ("D4_tn_D4", golden::D4_TN_D4.iter().map(|r| r.as_slice()).collect()),
        ("D4_3n", golden::D4_3N.iter().map(|r| r.as_slice()).collect()),
        ("D4_tp", golden::D4_TP.iter().map(|r| r.as_slice()).collect()),
        ("D4_4n", golden::D4_4N.iter().map(|r| r.as_slice()).collect()),
    ];
    let mut ctx = Context::new();
    let mut total = 0;
    for (id, rows) in &blocks {
        let t = compute_cohomology(&mut ctx, id).expect(id);
        assert_eq!(t.rows.len(), rows.len(), "{id} row count");
        for (i, row) in rows.iter().enumerate() {
            // Check the deviation structure per degree: multisets within
            // each conjugate pair must agree; everything else exact.
            let g = |l: &str| t.multiplicity(i, l);
            let pairs = [("s_{4,1}", "s_{2,1,1,1}", 2usize, 3usize), ("s_{3,2}", "s_{2,2,1}", 4, 5)];
            for (a, b, ja, jb) in pairs {
                let (ca, cb, pa, pb) = (g(a), g(b), row[ja], row[jb]);
                if (ca, cb) == (pa, pb) {
                    continue;
                } else if (ca, cb) == (pb, pa) {
                    println!("{id} H^{i}: pair ({a},{b}) computed ({ca},{cb}) paper ({pa},{pb}) SWAP");
                    total += 1;
                } else {
                    println!("{id} H^{i}: pair ({a},{b}) computed ({ca},{cb}) paper ({pa},{pb}) OTHER");
                    total += 1;
                }
            }
            for (j, l) in cols.iter().enumerate() {
                if j >= 2 && j <= 5 {
                    continue;
                }
                if g(l) != row[j] {
                    println!("{id} H^{i} {l}: computed {} paper {} NONPAIR", g(l), row[j]);
                    total += 1;
                }
            }
        }
    }
    println!("total deviations: {total}");
}
