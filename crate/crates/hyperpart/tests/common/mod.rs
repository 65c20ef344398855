//! Shared test oracles, independent of the library's implementation paths.
#![allow(dead_code)] // each test binary uses its own subset

use num_bigint::BigUint;

/// Catalan numbers by the convolution recurrence:
/// C_0 = 1, C_{n+1} = sum C_i C_{n-i}.
pub fn catalan(upto: usize) -> Vec<BigUint> {
    let mut c = vec![BigUint::from(1u32)];
    for n in 0..upto {
        let next: BigUint = (0..=n).map(|i| &c[i] * &c[n - i]).sum();
        c.push(next);
    }
    c
}

/// Solid partition counts as published in the OEIS entry the literature
/// cites for third-dimensional partitions (A000293), volumes 0..=9.
pub const SOLID_PARTITIONS: [u64; 10] = [1, 1, 4, 10, 26, 59, 140, 307, 684, 1464];

pub fn big(n: u64) -> BigUint {
    BigUint::from(n)
}
