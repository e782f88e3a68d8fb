//! Fixed inputs shared by the benchmarks.

use zslab_core::{random_zero_sumfree, GroupSpec, Sequence};

/// A long zero-sumfree sequence over `C_p^2`, reproducible from `seed`.
pub fn zero_sumfree_fixture(p: u32, length: usize, seed: u64) -> Sequence {
    random_zero_sumfree(p, length, seed).expect("fixture generation")
}

/// `(1,0)^a (0,1)^b (1,1)^c` over `C_p^2`.
pub fn block_fixture(p: u64, a: u32, b: u32, c: u32) -> Sequence {
    let spec = GroupSpec::new(p, 2).unwrap();
    let rows = [([1, 0], a), ([0, 1], b), ([1, 1], c)];
    Sequence::from_pairs(&spec, rows.iter().filter(|(_, m)| *m > 0).map(|(g, m)| (spec.element(g).unwrap(), *m)))
        .unwrap()
}
