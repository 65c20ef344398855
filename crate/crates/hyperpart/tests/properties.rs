//! Cross-module invariants: bijection round trips, downset
//! characterization, statistic pushforwards and the simplex counting
//! bounds.

mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

use common::{big, catalan};
use hyperpart::enumerate::{
    count_a, count_b, count_p_histogram, count_p_tilde, enumerate_downsets, RegionConstraint,
    SearchConfig,
};
use hyperpart::lattice::{
    diagram_from_partition, partition_from_diagram, simplex_diagram, validate_downset, Cell,
    Diagram, Hypermatrix, Partition,
};
use hyperpart::series::{binomial, macmahon_numbers, partition_numbers_oracle, vector_partition_table};
use hyperpart::stats::{c_statistic, corner_hook_volume, stat_vector};
use hyperpart::transform::{corners, phi, phi_inverse};
use hyperpart::Error;

fn cfg() -> SearchConfig {
    SearchConfig::default()
}

/// A sparse hypermatrix with up to `max_support` entries in `[max_coord]^d`.
fn arb_hypermatrix(dim: usize, max_coord: u32, max_entry: u64, max_support: usize)
    -> impl Strategy<Value = Hypermatrix>
{
    let position = prop::collection::vec(1..=max_coord, dim);
    prop::collection::btree_map(position, 1..=max_entry, 0..=max_support).prop_map(move |map| {
        Hypermatrix::new(
            dim,
            map.into_iter().map(|(coords, v)| (Cell::new(coords).unwrap(), v)),
        )
        .unwrap()
    })
}

fn arb_dim_hypermatrix() -> impl Strategy<Value = Hypermatrix> {
    (1usize..=3).prop_flat_map(|dim| arb_hypermatrix(dim, 4, 3, 5))
}

proptest! {
    #[test]
    fn phi_round_trips_on_random_hypermatrices(a in arb_dim_hypermatrix()) {
        let pi = phi(&a);
        prop_assert_eq!(phi_inverse(&pi), a);
    }

    #[test]
    fn partition_diagram_round_trip(a in arb_dim_hypermatrix()) {
        // phi(A) ranges over valid partitions
        let pi = phi(&a);
        let diagram = diagram_from_partition(&pi);
        prop_assert_eq!(partition_from_diagram(&diagram), pi.clone());
        prop_assert_eq!(BigUint::from(diagram.len()), pi.volume());
        prop_assert!(validate_downset(pi.dim(), diagram.cells()).unwrap());
    }

    #[test]
    fn statistic_pushforward(a in arb_dim_hypermatrix()) {
        // c_l(phi(A)) = sum_i a_i * i_l  and
        // |phi(A)|_ch = sum_i a_i * (i_1 + ... + i_d - d + 1)
        let dim = a.dim();
        let pi = phi(&a);
        let sv = stat_vector(&pi);
        for axis in 1..=dim {
            let direct: u64 = a
                .entries()
                .iter()
                .map(|(pos, &v)| v * u64::from(pos.coords()[axis - 1]))
                .sum();
            prop_assert_eq!(sv.values()[axis - 1], direct);
            prop_assert_eq!(c_statistic(&pi, axis).unwrap(), direct);
        }
        let ch_direct: u64 = a
            .entries()
            .iter()
            .map(|(pos, &v)| v * (pos.coord_sum() - dim as u64 + 1))
            .sum();
        prop_assert_eq!(corner_hook_volume(&pi), ch_direct);
    }
}

/// Exhaustive bijection check over a full box of hypermatrices.
#[test]
fn bijection_exhaustive_boxes() {
    for dim in 1..=2usize {
        let positions: Vec<Cell> = {
            let mut out = Vec::new();
            let side = 3u32;
            let total = side.pow(dim as u32);
            for mut idx in 0..total {
                let mut coords = Vec::with_capacity(dim);
                for _ in 0..dim {
                    coords.push(idx % side + 1);
                    idx /= side;
                }
                out.push(Cell::new(coords).unwrap());
            }
            out
        };
        // entries in {0, 1, 2} over up to 9 positions: 3^[box] matrices
        let total = 3u64.pow(positions.len() as u32);
        for mut mask in 0..total {
            let mut entries = Vec::new();
            for p in &positions {
                let v = mask % 3;
                mask /= 3;
                if v > 0 {
                    entries.push((p.clone(), v));
                }
            }
            let a = Hypermatrix::new(dim, entries).unwrap();
            assert_eq!(phi_inverse(&phi(&a)), a);
        }
    }
}

/// Every corner of phi(A) projects into the support of A.
#[test]
fn corners_project_into_support() {
    let a = Hypermatrix::new(
        2,
        [
            (Cell::new(vec![1, 2]).unwrap(), 2),
            (Cell::new(vec![3, 1]).unwrap(), 1),
        ],
    )
    .unwrap();
    let pi = phi(&a);
    for corner in corners(&pi).cells() {
        let head = Cell::new(corner.coords()[..2].to_vec()).unwrap();
        assert!(a.get(&head) > 0, "corner {corner:?} projects outside the support");
    }
}

fn subsets_are_characterized(dim: usize, cells: &[Cell], mask: u64) {
    let subset: BTreeSet<Cell> = cells
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, c)| c.clone())
        .collect();
    let is_downset = validate_downset(dim, &subset).unwrap();
    // reconstruct: fiber maxima must form a monotone map whose diagram is
    // exactly the subset
    let reconstructs = || -> bool {
        let mut entries: std::collections::BTreeMap<Vec<u32>, u64> = Default::default();
        for cell in &subset {
            let coords = cell.coords();
            let head = coords[..dim].to_vec();
            let h = u64::from(coords[dim]);
            let e = entries.entry(head).or_insert(0);
            *e = (*e).max(h);
        }
        let partition = Partition::new(
            dim,
            entries
                .into_iter()
                .map(|(coords, v)| (Cell::new(coords).unwrap(), v)),
        );
        match partition {
            Ok(p) => diagram_from_partition(&p).cells() == &subset,
            Err(_) => false,
        }
    };
    assert_eq!(is_downset, reconstructs(), "mask {mask:#b}");
    if is_downset {
        // and such a set must be accepted as a diagram
        assert!(Diagram::new(dim, subset).is_ok());
    }
}

#[test]
fn downset_characterization_exhaustive_small_box() {
    // every subset of the 2x2x2 cell box at d = 2
    let cells: Vec<Cell> = {
        let mut out = Vec::new();
        for x in 1..=2u32 {
            for y in 1..=2u32 {
                for z in 1..=2u32 {
                    out.push(Cell::new(vec![x, y, z]).unwrap());
                }
            }
        }
        out
    };
    for mask in 0..(1u64 << cells.len()) {
        subsets_are_characterized(2, &cells, mask);
    }
}

proptest! {
    #[test]
    fn downset_characterization_sampled_3x3x3(mask in 0u64..(1u64 << 27)) {
        // random subsets of the 3x3x3 cell box at d = 2
        let cells: Vec<Cell> = {
            let mut out = Vec::new();
            for x in 1..=3u32 {
                for y in 1..=3u32 {
                    for z in 1..=3u32 {
                        out.push(Cell::new(vec![x, y, z]).unwrap());
                    }
                }
            }
            out
        };
        subsets_are_characterized(2, &cells, mask);
    }
}

#[test]
fn volume_histograms_match_series() {
    // d = 1 against the pentagonal oracle
    let hist = count_p_histogram(1, 12, &cfg()).unwrap();
    let oracle = partition_numbers_oracle(12);
    for n in 0..=12u64 {
        assert_eq!(&hist[n as usize], oracle.coeff(n), "d=1 n={n}");
    }
    // d = 2 against MacMahon's series, exact for plane partitions
    let hist = count_p_histogram(2, 8, &cfg()).unwrap();
    let series = macmahon_numbers(2, 8);
    for n in 0..=8u64 {
        assert_eq!(&hist[n as usize], series.coeff(n), "d=2 n={n}");
    }
}

#[test]
fn catalan_alignment() {
    // a_1(k) is the k-th Catalan number, standard indexing
    let cats = catalan(10);
    for k in 0..=10u32 {
        assert_eq!(count_a(1, k, &cfg()).unwrap(), cats[k as usize], "k={k}");
    }
}

#[test]
fn a_dominates_b_where_computed() {
    // a budget small enough to keep this test quick: instances that give
    // up are skipped, everything computed must satisfy a >= b
    let tight = SearchConfig::with_budget(2_000_000);
    for dim in 1..=2usize {
        for k in 1..=9u32 {
            let a = match count_a(dim, k, &tight) {
                Ok(v) => Some(v),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => panic!("{e}"),
            };
            let b = match count_b(dim, k, &tight) {
                Ok(v) => Some(v),
                Err(Error::BudgetExceeded { .. }) => None,
                Err(e) => panic!("{e}"),
            };
            if let (Some(a), Some(b)) = (&a, &b) {
                assert!(a >= b, "a_{dim}({k}) = {a} < b = {b}");
            }
            if k <= 6 {
                assert!(a.is_some() && b.is_some(), "small instances must compute");
            }
        }
    }
}

#[test]
fn simplex_lower_bounds_hold() {
    // b_d(k) >= (3 * 2^(3^d - 1))^C(floor((k-1)/3), d) and >= 2^C(k-1, d)
    for (dim, k_max) in [(1usize, 9u32), (2, 7)] {
        for k in 1..=k_max {
            let b = count_b(dim, k, &cfg()).unwrap();
            let boxes = binomial(u64::from((k - 1) / 3), dim as u64)
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0) as u32;
            let base = BigUint::from(3u32) << (3u64.pow(dim as u32) - 1) as usize;
            assert!(b >= base.pow(boxes), "lemlb at d={dim} k={k}");
            let weak_exp = binomial(u64::from(k) - 1, dim as u64)
                .to_u64_digits()
                .first()
                .copied()
                .unwrap_or(0) as usize;
            assert!(b >= BigUint::one() << weak_exp, "weak bound at d={dim} k={k}");
        }
    }
}

#[test]
fn aup_recursion_holds() {
    // a_d(k) <= a_{d-1}(k-1) ... a_{d-1}(d) for k >= d
    for dim in 1..=3usize {
        for k in dim as u32..=6 {
            let a = count_a(dim, k, &cfg()).unwrap();
            let mut product = BigUint::one();
            for j in dim as u32..k {
                product *= count_a(dim - 1, j, &cfg()).unwrap();
            }
            assert!(a <= product, "d={dim} k={k}: {a} > {product}");
            let closed = BigUint::one()
                << (2 * binomial(u64::from(k) - 1, dim as u64)
                    .to_u64_digits()
                    .first()
                    .copied()
                    .unwrap_or(0)) as usize;
            assert!(a <= closed, "closed form at d={dim} k={k}");
        }
    }
}

#[test]
fn lempa_instances_hold() {
    // ptilde_d(n) >= a_d(k) at k = floor(((d+1)! n)^{1/(d+1)})
    for dim in 1..=2usize {
        let factorial: u64 = (1..=dim as u64 + 1).product();
        for n in 1..=20u64 {
            let mut k = 0u64;
            while (k + 1).pow(dim as u32 + 1) <= factorial * n {
                k += 1;
            }
            let ptilde = count_p_tilde(dim, n, &cfg()).unwrap();
            let a = count_a(dim, k as u32, &cfg()).unwrap();
            assert!(ptilde >= a, "d={dim} n={n} k={k}: {ptilde} < {a}");
        }
    }
}

#[test]
fn statistics_bounded_by_volume() {
    // c_l(pi) <= |pi| exhaustively at small volume
    for dim in 1..=3usize {
        for item in
            enumerate_downsets(dim, &RegionConstraint::VolumeBudget(8), &cfg()).unwrap()
        {
            let pi = partition_from_diagram(&item.unwrap());
            let volume = pi.volume_u64();
            let sv = stat_vector(&pi);
            for axis in 1..=dim {
                assert!(sv.values()[axis - 1] <= volume);
            }
            // corner-hook chain: ch <= d|pi| - (d-1)|Cor|, and for
            // nonempty pi also ch <= d|pi| - (d-1)
            let d64 = dim as u64;
            assert!(sv.corner_hook() <= d64 * volume - (d64 - 1) * sv.corner_count()
                || volume == 0);
            if volume > 0 {
                assert!(sv.corner_hook() <= d64 * volume - (d64 - 1));
            }
        }
    }
}

#[test]
fn d1_statistics_degenerate_to_volume() {
    for item in enumerate_downsets(1, &RegionConstraint::VolumeBudget(10), &cfg()).unwrap() {
        let pi = partition_from_diagram(&item.unwrap());
        let volume = pi.volume_u64();
        assert_eq!(c_statistic(&pi, 1).unwrap(), volume);
        assert_eq!(corner_hook_volume(&pi), volume);
    }
}

#[test]
fn box_constraint_counts_binomially() {
    // downsets of a 2x2 box of cells at d = 1: choose(4, 2) staircases
    let n = enumerate_downsets(1, &RegionConstraint::BoxBounds(vec![2, 2]), &cfg())
        .unwrap()
        .count();
    assert_eq!(n, 6);
}

#[test]
fn simplex_diagram_is_a_valid_region() {
    for dim in 1..=3usize {
        for k in 0..=7u32 {
            let sd = simplex_diagram(dim, k);
            assert_eq!(
                big(sd.len() as u64),
                binomial(u64::from(k), dim as u64 + 1),
            );
        }
    }
}

#[test]
fn tilde_bound_on_tables() {
    // ptilde(n_1..n_d) <= n_1 ... n_d p(n_1..n_d) whenever every index is
    // at least 2 (indices containing 1 violate it)
    let table = vector_partition_table(2, &[6, 6]).unwrap();
    let tilde = table.tilde();
    for index in table.indices() {
        if index.iter().all(|&x| x >= 2) {
            let prod: u64 = index.iter().product();
            assert!(
                tilde.get(&index) <= &(table.get(&index) * big(prod)),
                "index {index:?}"
            );
        }
    }
    // and a witness that the guard is needed
    assert!(tilde.get(&[1, 1]) > &(table.get(&[1, 1]) * big(1)));
}
