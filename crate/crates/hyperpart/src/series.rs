//! Arbitrary-precision truncated power series and partition generating
//! functions.
//!
//! The central constructor expands Euler-type products
//! `prod_{n>=1} (1 - x^n)^{-e(n)}` up to a truncation order; MacMahon's
//! numbers are the instance `e(n) = binomial(n + d - 2, d - 1)`. An
//! independent oracle computes ordinary partition numbers through the
//! classical pentagonal-number recurrence, so the two routes can be checked
//! against each other. Vector partition numbers are built by a bounded
//! dynamic program over the index box rather than by multivariate
//! polynomial arithmetic: only indices inside the caps matter, and each
//! positive vector acts as an unbounded knapsack item.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};

/// Exact binomial coefficient, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::from(1u32);
    for i in 0..k {
        r = r * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    r
}

/// Coefficients 0..=order of a univariate power series, all exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigUint>,
}

impl TruncatedSeries {
    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        assert!(!coeffs.is_empty(), "a truncated series carries order + 1 >= 1 coefficients");
        TruncatedSeries { coeffs }
    }

    pub fn order(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeff(&self, n: u64) -> &BigUint {
        &self.coeffs[n as usize]
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    /// Running sums: entry `n` of the result is the sum of entries `0..=n`.
    pub fn tilde(&self) -> TruncatedSeries {
        let mut acc = BigUint::zero();
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect();
        TruncatedSeries { coeffs }
    }
}

/// Expands `prod_{n=1}^{N} (1 - x^n)^{-e(n)}` modulo `x^{N+1}`.
///
/// Each factor contributes `binomial(e(n) + k - 1, k)` at `x^{nk}`; the
/// coefficients are computed incrementally per factor to avoid factorial
/// blowup.
pub fn euler_product(exponent: impl Fn(u64) -> BigUint, order: u64) -> TruncatedSeries {
    let n_terms = (order + 1) as usize;
    let mut coeffs = vec![BigUint::zero(); n_terms];
    coeffs[0] = BigUint::from(1u32);
    for n in 1..=order {
        let e = exponent(n);
        if e.is_zero() {
            continue;
        }
        // factor terms t_k = C(e + k - 1, k) at exponent n*k
        let kmax = order / n;
        let mut terms = Vec::with_capacity(kmax as usize + 1);
        terms.push(BigUint::from(1u32));
        let mut t = BigUint::from(1u32);
        for k in 1..=kmax {
            t = t * (&e + BigUint::from(k - 1)) / BigUint::from(k);
            terms.push(t.clone());
        }
        let mut next = vec![BigUint::zero(); n_terms];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut sum = BigUint::zero();
            for (k, term) in terms.iter().enumerate() {
                let offset = n as usize * k;
                if offset > j {
                    break;
                }
                sum += term * &coeffs[j - offset];
            }
            *slot = sum;
        }
        coeffs = next;
    }
    TruncatedSeries { coeffs }
}

/// MacMahon's numbers `m_d(n)` for `n <= order`:
/// the Euler product with exponents `binomial(n + d - 2, d - 1)`.
/// For d = 1 these are ordinary partition numbers, for d = 2 plane
/// partition numbers.
pub fn macmahon_numbers(d: u32, order: u64) -> TruncatedSeries {
    assert!(d >= 1, "MacMahon numbers need dimension >= 1");
    euler_product(|n| binomial(n + u64::from(d) - 2, u64::from(d) - 1), order)
}

/// Ordinary partition numbers through the pentagonal-number recurrence.
/// Independent of `euler_product`, and used to validate it.
pub fn partition_numbers_oracle(order: u64) -> TruncatedSeries {
    let len = (order + 1) as usize;
    let mut p: Vec<BigInt> = vec![BigInt::zero(); len];
    p[0] = BigInt::from(1);
    for i in 1..=order {
        let mut sum = BigInt::zero();
        let mut k = 1u64;
        loop {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > i {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            sum += sign * &p[(i - g1) as usize];
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= i {
                sum += sign * &p[(i - g2) as usize];
            }
            k += 1;
        }
        p[i as usize] = sum;
    }
    let coeffs = p
        .into_iter()
        .map(|v| v.to_biguint().expect("partition numbers are nonnegative"))
        .collect();
    TruncatedSeries { coeffs }
}

/// Dense table of vector partition numbers `p(n_1, ..., n_d)` for all
/// indices within the caps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorPartitionTable {
    caps: Vec<u64>,
    values: Vec<BigUint>, // row-major
}

impl VectorPartitionTable {
    pub fn dim(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u64] {
        &self.caps
    }

    fn offset(&self, index: &[u64]) -> usize {
        assert_eq!(index.len(), self.caps.len(), "index arity mismatch");
        let mut off = 0usize;
        for (i, (&x, &cap)) in index.iter().zip(&self.caps).enumerate() {
            assert!(x <= cap, "index {index:?} outside caps at axis {i}");
            off = off * (cap as usize + 1) + x as usize;
        }
        off
    }

    pub fn get(&self, index: &[u64]) -> &BigUint {
        &self.values[self.offset(index)]
    }

    /// All indices within caps, in row-major (lexicographic) order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<u64>> + '_ {
        let caps = self.caps.clone();
        let total = self.values.len();
        (0..total).map(move |mut off| {
            let mut idx = vec![0u64; caps.len()];
            for axis in (0..caps.len()).rev() {
                let side = caps[axis] as usize + 1;
                idx[axis] = (off % side) as u64;
                off /= side;
            }
            idx
        })
    }

    /// Prefix sums along every axis: entry `n` of the result is
    /// `sum_{i <= n componentwise} p(i)`.
    pub fn tilde(&self) -> VectorPartitionTable {
        let mut values = self.values.clone();
        let sides: Vec<usize> = self.caps.iter().map(|&c| c as usize + 1).collect();
        let mut stride = 1usize;
        for axis in (0..sides.len()).rev() {
            let side = sides[axis];
            let block = stride * side;
            for base in 0..values.len() / block {
                for rest in 0..stride {
                    let start = base * block + rest;
                    for step in 1..side {
                        let here = start + step * stride;
                        let prev = here - stride;
                        let add = values[prev].clone();
                        values[here] += add;
                    }
                }
            }
            stride *= side;
        }
        VectorPartitionTable { caps: self.caps.clone(), values }
    }
}

/// Builds the table of vector partition numbers within `caps` by a bounded
/// knapsack: every positive vector inside the caps is a part of unbounded
/// multiplicity, applied in increasing index order.
pub fn vector_partition_table(d: usize, caps: &[u64]) -> Result<VectorPartitionTable> {
    if caps.len() != d {
        return Err(Error::InvalidArgument(format!(
            "expected {d} caps, got {}",
            caps.len()
        )));
    }
    let sides: Vec<usize> = caps.iter().map(|&c| c as usize + 1).collect();
    let total: usize = sides.iter().product();
    let mut values = vec![BigUint::zero(); total];
    values[0] = BigUint::from(1u32);

    let mut parts: Vec<Vec<u64>> = Vec::new();
    if d > 0 && caps.iter().all(|&c| c >= 1) {
        let mut prefix = Vec::with_capacity(d);
        collect_parts(caps, &mut prefix, &mut parts);
    }
    parts.sort();

    // strides for linear offsets, row-major
    let mut strides = vec![1usize; d];
    for axis in (0..d.saturating_sub(1)).rev() {
        strides[axis] = strides[axis + 1] * sides[axis + 1];
    }
    let mut index = vec![0u64; d];
    for part in &parts {
        let part_offset: usize = part
            .iter()
            .zip(&strides)
            .map(|(&x, &s)| x as usize * s)
            .sum();
        index.iter_mut().for_each(|x| *x = 0);
        for off in 0..total {
            if index.iter().zip(part).all(|(&i, &p)| i >= p) {
                let add = values[off - part_offset].clone();
                values[off] += add;
            }
            // odometer step
            for axis in (0..d).rev() {
                index[axis] += 1;
                if index[axis] <= caps[axis] {
                    break;
                }
                index[axis] = 0;
            }
        }
    }
    Ok(VectorPartitionTable { caps: caps.to_vec(), values })
}

fn collect_parts(caps: &[u64], prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == caps.len() {
        out.push(prefix.clone());
        return;
    }
    for x in 1..=caps[prefix.len()] {
        prefix.push(x);
        collect_parts(caps, prefix, out);
        prefix.pop();
    }
}

/// The diagonal value `p(n, ..., n)` (d entries).
pub fn vector_partition_diagonal(d: usize, n: u64) -> Result<BigUint> {
    let caps = vec![n; d];
    let table = vector_partition_table(d, &caps)?;
    Ok(table.get(&caps).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    fn values(series: &TruncatedSeries) -> Vec<u64> {
        series
            .coeffs()
            .iter()
            .map(|c| c.to_u64_digits().first().copied().unwrap_or(0))
            .collect()
    }

    #[test]
    fn pentagonal_oracle_examples() {
        assert_eq!(values(&partition_numbers_oracle(0)), vec![1]);
        assert_eq!(values(&partition_numbers_oracle(6)), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(*partition_numbers_oracle(10).coeff(10), big(42));
    }

    #[test]
    fn euler_product_examples() {
        let ones = euler_product(|_| big(1), 6);
        assert_eq!(values(&ones), vec![1, 1, 2, 3, 5, 7, 11]);

        let linear = euler_product(big, 6);
        assert_eq!(values(&linear), vec![1, 1, 3, 6, 13, 24, 48]);

        let triangular = euler_product(|n| binomial(n + 1, 2), 6);
        assert_eq!(values(&triangular), vec![1, 1, 4, 10, 26, 59, 141]);
    }

    #[test]
    fn euler_product_matches_pentagonal_oracle() {
        let product = euler_product(|_| big(1), 50);
        assert_eq!(product, partition_numbers_oracle(50));
    }

    /// Independent coefficient oracle: the coefficient of x^m in
    /// `prod (1-x^n)^{-e(n)}` counts partitions of m with parts colored in
    /// e(part) colors, i.e. sums over partitions of products of
    /// multiset-coefficients.
    fn coefficient_by_partitions(e: &dyn Fn(u64) -> BigUint, m: u64) -> BigUint {
        fn rec(e: &dyn Fn(u64) -> BigUint, remaining: u64, max_part: u64) -> BigUint {
            if remaining == 0 {
                return BigUint::from(1u32);
            }
            let mut total = BigUint::zero();
            for part in 1..=max_part.min(remaining) {
                // choose the multiplicity of `part` as the largest part
                let mut mult = 1u64;
                while mult * part <= remaining {
                    let ways = {
                        let colors = e(part);
                        // multiset coefficient C(colors + mult - 1, mult)
                        let mut r = BigUint::from(1u32);
                        for i in 0..mult {
                            r = r * (&colors + BigUint::from(i)) / BigUint::from(i + 1);
                        }
                        r
                    };
                    total += ways * rec(e, remaining - mult * part, part - 1);
                    mult += 1;
                }
            }
            total
        }
        rec(e, m, m)
    }

    #[test]
    fn euler_product_matches_partition_sum_oracle() {
        for d in 1..=4u32 {
            let e = move |n: u64| binomial(n + u64::from(d) - 2, u64::from(d) - 1);
            let series = macmahon_numbers(d, 7);
            for m in 0..=7u64 {
                assert_eq!(
                    series.coeff(m),
                    &coefficient_by_partitions(&e, m),
                    "d={d} m={m}"
                );
            }
        }
    }

    #[test]
    fn macmahon_examples() {
        assert_eq!(values(&macmahon_numbers(1, 6)), vec![1, 1, 2, 3, 5, 7, 11]);
        assert_eq!(values(&macmahon_numbers(3, 6)), vec![1, 1, 4, 10, 26, 59, 141]);
        assert_eq!(values(&macmahon_numbers(2, 0)), vec![1]);
    }

    #[test]
    fn macmahon_monotone_in_dimension() {
        for d in 1..=5u32 {
            let lo = macmahon_numbers(d, 20);
            let hi = macmahon_numbers(d + 1, 20);
            for n in 0..=20u64 {
                assert!(hi.coeff(n) >= lo.coeff(n), "d={d} n={n}");
            }
        }
    }

    #[test]
    fn tilde_examples() {
        let s = TruncatedSeries::from_coeffs(vec![big(1), big(1), big(2), big(3), big(5)]);
        assert_eq!(values(&s.tilde()), vec![1, 2, 4, 7, 12]);
    }

    #[test]
    fn vector_table_examples() {
        let t = vector_partition_table(2, &[2, 2]).unwrap();
        assert_eq!(t.get(&[0, 0]), &big(1));
        assert_eq!(t.get(&[1, 0]), &big(0));
        assert_eq!(t.get(&[1, 1]), &big(1));
        assert_eq!(t.get(&[2, 1]), &big(1));
        assert_eq!(t.get(&[2, 2]), &big(2));

        // the tilde table sums every entry below the index
        assert_eq!(t.tilde().get(&[2, 2]), &big(6));

        let t0 = vector_partition_table(2, &[0, 0]).unwrap();
        assert_eq!(t0.get(&[0, 0]), &big(1));
        assert_eq!(t0.values.len(), 1);
    }

    #[test]
    fn vector_table_d1_is_partition_numbers() {
        let t = vector_partition_table(1, &[10]).unwrap();
        let oracle = partition_numbers_oracle(10);
        for n in 0..=10u64 {
            assert_eq!(t.get(&[n]), oracle.coeff(n), "n={n}");
        }
    }

    #[test]
    fn vector_table_is_symmetric() {
        let t = vector_partition_table(2, &[4, 4]).unwrap();
        for a in 0..=4u64 {
            for b in 0..=4u64 {
                assert_eq!(t.get(&[a, b]), t.get(&[b, a]));
            }
        }
        let t = vector_partition_table(3, &[3, 3, 3]).unwrap();
        for a in 0..=3u64 {
            for b in 0..=3u64 {
                for c in 0..=3u64 {
                    assert_eq!(t.get(&[a, b, c]), t.get(&[c, a, b]));
                }
            }
        }
    }

    #[test]
    fn part_order_is_irrelevant() {
        // same DP with the part loop in reversed order
        fn reversed_order_table(caps: &[u64]) -> Vec<BigUint> {
            let d = caps.len();
            let sides: Vec<usize> = caps.iter().map(|&c| c as usize + 1).collect();
            let total: usize = sides.iter().product();
            let mut values = vec![BigUint::zero(); total];
            values[0] = BigUint::from(1u32);
            let mut parts: Vec<Vec<u64>> = Vec::new();
            let mut prefix = Vec::new();
            collect_parts(caps, &mut prefix, &mut parts);
            parts.sort();
            parts.reverse();
            let mut strides = vec![1usize; d];
            for axis in (0..d - 1).rev() {
                strides[axis] = strides[axis + 1] * sides[axis + 1];
            }
            for part in &parts {
                let part_offset: usize =
                    part.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum();
                let mut index = vec![0u64; d];
                for off in 0..total {
                    if index.iter().zip(part).all(|(&i, &p)| i >= p) {
                        let add = values[off - part_offset].clone();
                        values[off] += add;
                    }
                    for axis in (0..d).rev() {
                        index[axis] += 1;
                        if index[axis] <= caps[axis] {
                            break;
                        }
                        index[axis] = 0;
                    }
                }
            }
            values
        }
        let caps = [3u64, 4u64];
        let t = vector_partition_table(2, &caps).unwrap();
        assert_eq!(t.values, reversed_order_table(&caps));
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(vector_partition_diagonal(2, 2).unwrap(), big(2));
        assert_eq!(vector_partition_diagonal(1, 5).unwrap(), big(7));
        assert_eq!(vector_partition_diagonal(3, 1).unwrap(), big(1));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 3), big(4));
        assert_eq!(binomial(3, 4), big(0));
        assert_eq!(binomial(8, 2), big(28));
        assert_eq!(binomial(0, 0), big(1));
    }
}
