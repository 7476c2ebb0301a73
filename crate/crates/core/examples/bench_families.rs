use std::time::Instant;
fn main() {
    for (p, cap) in [(2u64, 5u32), (3, 3), (5, 2)] {
        let t0 = Instant::now();
        let s = witt_core::universal::sum_polys(p, cap).unwrap();
        let t1 = Instant::now();
        let pr = witt_core::universal::product_polys(p, cap).unwrap();
        let t2 = Instant::now();
        let _n = witt_core::universal::neg_polys(p, cap).unwrap();
        let f = witt_core::universal::frobenius_polys(p, cap + 1).unwrap();
        let t3 = Instant::now();
        let c = witt_core::universal::correction_poly(p, cap).unwrap();
        let t4 = Instant::now();
        println!(
            "p={p} cap={cap}: sum {:?} ({} terms), product {:?} ({} terms), neg+frob {:?} ({} terms), corr {:?} ({} terms)",
            t1 - t0, s[cap as usize].term_count(),
            t2 - t1, pr[cap as usize].term_count(),
            t3 - t2, f[cap as usize].term_count(),
            t4 - t3, c.term_count(),
        );
    }
}
