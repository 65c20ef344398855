//! Exhaustive, duplicate-free generation and exact counting of
//! d-dimensional partitions under volume, simplex and box constraints,
//! plus the statistic-constrained counts built on the corner transform.
//!
//! Generation is a DFS over downsets: a state is extended only by addable
//! cells (all predecessors present) strictly greater, lexicographically,
//! than the last added cell. Every prefix of the lex-sorted cell list of a
//! downset is itself a downset, so each downset is produced exactly once.
//!
//! All searches honor a node budget. Exceeding it is a clean, reported
//! failure, never a partial answer, and the verdict is deterministic: a
//! search fails if and only if its exact node count exceeds the budget.
//! Counting may split the DFS frontier among workers; totals do not depend
//! on the worker count.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::lattice::{Cell, Diagram, Hypermatrix};
use crate::stats::{corner_hook_volume, stat_vector};
use crate::transform::phi;

/// Default cap on DFS nodes per counting operation.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

/// Region families a generated diagram may be confined to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegionConstraint {
    /// Diagrams with at most `n` cells.
    VolumeBudget(u64),
    /// Diagrams inside the simplex `x_1 + ... + x_{d+1} <= k`.
    Simplex(u32),
    /// Diagrams inside the box with the given side bounds (one per axis).
    BoxBounds(Vec<u32>),
}

/// Search limits shared by all counting operations.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub jobs: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { node_budget: DEFAULT_NODE_BUDGET, jobs: 1 }
    }
}

impl SearchConfig {
    pub fn with_budget(node_budget: u64) -> Self {
        SearchConfig { node_budget, ..Self::default() }
    }

    pub fn unlimited() -> Self {
        Self::with_budget(u64::MAX)
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs.max(1);
        self
    }
}

const METER_BATCH: u64 = 1 << 12;

/// Batched node accounting against a shared counter. The final verdict is
/// exact: a run errors iff its true node total exceeds the budget.
struct Meter<'a> {
    shared: &'a AtomicU64,
    limit: u64,
    local: u64,
}

impl<'a> Meter<'a> {
    fn new(shared: &'a AtomicU64, limit: u64) -> Self {
        Meter { shared, limit, local: 0 }
    }

    #[inline]
    fn tick(&mut self) -> Result<()> {
        self.charge(1)
    }

    #[inline]
    fn charge(&mut self, n: u64) -> Result<()> {
        self.local += n;
        if self.local >= METER_BATCH {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<()> {
        if self.local > 0 {
            let total = self.shared.fetch_add(self.local, Ordering::Relaxed) + self.local;
            self.local = 0;
            if total > self.limit {
                return Err(Error::BudgetExceeded { budget: self.limit });
            }
        }
        Ok(())
    }
}

/// Precomputed candidate cells of a finite (or volume-capped) region,
/// lex sorted, with predecessor links resolved to indices.
struct DownsetSpace {
    dim: usize,
    cells: Vec<Vec<u32>>,
    preds: Vec<Vec<u32>>,
    size_cap: usize,
}

impl DownsetSpace {
    fn build(dim: usize, constraint: &RegionConstraint) -> Result<DownsetSpace> {
        let cells = match constraint {
            RegionConstraint::VolumeBudget(n) => {
                // a cell can belong to a diagram of volume <= n only if its
                // minimal downset, a box, fits: coordinate product <= n
                let mut cells = Vec::new();
                let mut prefix = Vec::with_capacity(dim + 1);
                if *n >= 1 {
                    collect_product_bounded(dim + 1, *n, 1, &mut prefix, &mut cells);
                }
                cells
            }
            RegionConstraint::Simplex(k) => {
                let mut cells = Vec::new();
                let mut prefix = Vec::with_capacity(dim + 1);
                collect_sum_bounded(dim + 1, *k, &mut prefix, &mut cells);
                cells
            }
            RegionConstraint::BoxBounds(bounds) => {
                if bounds.len() != dim + 1 {
                    return Err(Error::InvalidArgument(format!(
                        "box constraint needs {} side bounds, got {}",
                        dim + 1,
                        bounds.len()
                    )));
                }
                let mut cells = Vec::new();
                let mut prefix = Vec::with_capacity(dim + 1);
                collect_boxed(bounds, &mut prefix, &mut cells);
                cells
            }
        };
        let mut cells = cells;
        cells.sort();
        let index: HashMap<&[u32], u32> = cells
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_slice(), i as u32))
            .collect();
        let preds = cells
            .iter()
            .map(|c| {
                let mut ps = Vec::new();
                let mut lowered = c.clone();
                for axis in 0..c.len() {
                    if c[axis] >= 2 {
                        lowered[axis] -= 1;
                        ps.push(index[lowered.as_slice()]);
                        lowered[axis] += 1;
                    }
                }
                ps
            })
            .collect();
        let size_cap = match constraint {
            RegionConstraint::VolumeBudget(n) => (*n).min(cells.len() as u64) as usize,
            _ => cells.len(),
        };
        Ok(DownsetSpace { dim, cells, preds, size_cap })
    }

    #[inline]
    fn addable(&self, in_set: &[bool], j: usize) -> bool {
        self.preds[j].iter().all(|&p| in_set[p as usize])
    }
}

fn collect_product_bounded(
    arity: usize,
    n: u64,
    product: u64,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if prefix.len() == arity {
        out.push(prefix.clone());
        return;
    }
    let mut x = 1u64;
    while product * x <= n {
        prefix.push(x as u32);
        collect_product_bounded(arity, n, product * x, prefix, out);
        prefix.pop();
        x += 1;
    }
}

fn collect_sum_bounded(arity: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == arity {
        out.push(prefix.clone());
        return;
    }
    let used: u32 = prefix.iter().sum();
    let reserve = (arity - prefix.len() - 1) as u32;
    let mut x = 1;
    while used + x + reserve <= k {
        prefix.push(x);
        collect_sum_bounded(arity, k, prefix, out);
        prefix.pop();
        x += 1;
    }
}

fn collect_boxed(bounds: &[u32], prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() == bounds.len() {
        out.push(prefix.clone());
        return;
    }
    for x in 1..=bounds[prefix.len()] {
        prefix.push(x);
        collect_boxed(bounds, prefix, out);
        prefix.pop();
    }
}

fn count_rec(
    space: &DownsetSpace,
    in_set: &mut [bool],
    start: usize,
    size: usize,
    hist: &mut [u64],
    meter: &mut Meter<'_>,
) -> Result<()> {
    if size == space.size_cap {
        return Ok(());
    }
    for j in start..space.cells.len() {
        if space.addable(in_set, j) {
            meter.tick()?;
            hist[size + 1] += 1;
            in_set[j] = true;
            count_rec(space, in_set, j + 1, size + 1, hist, meter)?;
            in_set[j] = false;
        }
    }
    Ok(())
}

struct Seed {
    in_set: Vec<bool>,
    start: usize,
    size: usize,
}

fn collect_seeds(
    space: &DownsetSpace,
    in_set: &mut Vec<bool>,
    start: usize,
    size: usize,
    split_depth: usize,
    hist: &mut [u64],
    meter: &mut Meter<'_>,
    seeds: &mut Vec<Seed>,
) -> Result<()> {
    if size == split_depth || size == space.size_cap {
        if size < space.size_cap {
            seeds.push(Seed { in_set: in_set.clone(), start, size });
        }
        return Ok(());
    }
    for j in start..space.cells.len() {
        if space.addable(in_set, j) {
            meter.tick()?;
            hist[size + 1] += 1;
            in_set[j] = true;
            collect_seeds(space, in_set, j + 1, size + 1, split_depth, hist, meter, seeds)?;
            in_set[j] = false;
        }
    }
    Ok(())
}

/// Counts all downsets in the region, split by size. Entry `i` of the
/// result is the number of diagrams of cardinality `i`.
fn downset_histogram_u64(
    dim: usize,
    constraint: &RegionConstraint,
    config: &SearchConfig,
) -> Result<Vec<u64>> {
    let space = DownsetSpace::build(dim, constraint)?;
    let shared = AtomicU64::new(0);
    let mut hist = vec![0u64; space.size_cap + 1];
    hist[0] = 1; // the empty diagram
    let mut meter = Meter::new(&shared, config.node_budget);
    meter.tick()?; // root node

    let mut in_set = vec![false; space.cells.len()];
    if config.jobs <= 1 || space.size_cap < 3 {
        count_rec(&space, &mut in_set, 0, 0, &mut hist, &mut meter)?;
        meter.flush()?;
        return Ok(hist);
    }

    let mut seeds = Vec::new();
    collect_seeds(&space, &mut in_set, 0, 0, 2, &mut hist, &mut meter, &mut seeds)?;
    meter.flush()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?;
    let budget = config.node_budget;
    let partials: Result<Vec<Vec<u64>>> = pool.install(|| {
        use rayon::prelude::*;
        seeds
            .par_iter()
            .map(|seed| {
                let mut local_hist = vec![0u64; space.size_cap + 1];
                let mut local_set = seed.in_set.clone();
                let mut meter = Meter::new(&shared, budget);
                count_rec(
                    &space,
                    &mut local_set,
                    seed.start,
                    seed.size,
                    &mut local_hist,
                    &mut meter,
                )?;
                meter.flush()?;
                Ok(local_hist)
            })
            .collect()
    });
    for partial in partials? {
        for (h, p) in hist.iter_mut().zip(partial) {
            *h += p;
        }
    }
    if shared.load(Ordering::Relaxed) > config.node_budget {
        return Err(Error::BudgetExceeded { budget: config.node_budget });
    }
    Ok(hist)
}

/// Number of diagrams inside the region, split by cardinality.
pub fn count_downsets_by_size(
    dim: usize,
    constraint: &RegionConstraint,
    config: &SearchConfig,
) -> Result<Vec<BigUint>> {
    Ok(downset_histogram_u64(dim, constraint, config)?
        .into_iter()
        .map(BigUint::from)
        .collect())
}

/// Total number of diagrams inside the region.
pub fn count_downsets(
    dim: usize,
    constraint: &RegionConstraint,
    config: &SearchConfig,
) -> Result<BigUint> {
    let hist = downset_histogram_u64(dim, constraint, config)?;
    Ok(BigUint::from(hist.iter().sum::<u64>()))
}

/// `p_d(i)` for all `i <= n`, from one exhaustive run.
pub fn count_p_histogram(dim: usize, n: u64, config: &SearchConfig) -> Result<Vec<BigUint>> {
    let hist = downset_histogram_u64(dim, &RegionConstraint::VolumeBudget(n), config)?;
    let mut out: Vec<BigUint> = hist.into_iter().map(BigUint::from).collect();
    out.resize((n + 1) as usize, BigUint::from(0u32));
    Ok(out)
}

/// The number of d-dimensional partitions of volume exactly `n`.
pub fn count_p(dim: usize, n: u64, config: &SearchConfig) -> Result<BigUint> {
    Ok(count_p_histogram(dim, n, config)?.swap_remove(n as usize))
}

/// The number of d-dimensional partitions of volume at most `n`.
pub fn count_p_tilde(dim: usize, n: u64, config: &SearchConfig) -> Result<BigUint> {
    Ok(count_p_histogram(dim, n, config)?.into_iter().sum())
}

/// The number of partitions whose diagram lies inside the simplex
/// `x_1 + ... + x_{d+1} <= k`. For d = 1 these are the Catalan numbers.
pub fn count_a(dim: usize, k: u32, config: &SearchConfig) -> Result<BigUint> {
    count_downsets(dim, &RegionConstraint::Simplex(k), config)
}

/// The number of `{0,1,2}`-hypermatrices supported on the simplex
/// `x_1 + ... + x_d <= k - 1` in which every entry 2 has all of its
/// up-neighbours inside the support and equal to 0.
///
/// Counted by exhaustive generation: cells are assigned in lexicographic
/// order, and an assigned 2 marks its up-neighbours (which all come later
/// in that order) as forced zeros.
pub fn count_b(dim: usize, k: u32, config: &SearchConfig) -> Result<BigUint> {
    if dim < 1 {
        return Err(Error::InvalidArgument("count_b needs dimension >= 1".into()));
    }
    if k < 1 {
        return Err(Error::InvalidArgument("count_b needs k >= 1".into()));
    }
    let mut cells: Vec<Vec<u32>> = Vec::new();
    let mut prefix = Vec::with_capacity(dim);
    collect_sum_bounded(dim, k - 1, &mut prefix, &mut cells);
    cells.sort();
    let index: HashMap<&[u32], u32> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.as_slice(), i as u32))
        .collect();
    // up-neighbour indices; None when some neighbour leaves the support,
    // which rules out the value 2 at that cell
    let ups: Vec<Option<Vec<u32>>> = cells
        .iter()
        .map(|c| {
            let mut us = Vec::with_capacity(dim);
            let mut bumped = c.clone();
            for axis in 0..dim {
                bumped[axis] += 1;
                match index.get(bumped.as_slice()) {
                    Some(&u) => us.push(u),
                    None => return None,
                }
                bumped[axis] -= 1;
            }
            Some(us)
        })
        .collect();

    let shared = AtomicU64::new(0);
    let mut meter = Meter::new(&shared, config.node_budget);
    if cells.is_empty() {
        meter.tick()?;
        meter.flush()?;
        return Ok(BigUint::from(1u32));
    }

    let mut forced = vec![0u16; cells.len()];
    let total = if config.jobs <= 1 || cells.len() < 10 {
        let t = assignments_rec(&ups, &mut forced, 0, &mut meter)?;
        meter.flush()?;
        t
    } else {
        let split_depth = 6.min(cells.len() - 1);
        let mut seeds: Vec<Vec<u16>> = Vec::new();
        collect_assignment_seeds(&ups, &mut forced, 0, split_depth, &mut meter, &mut seeds)?;
        meter.flush()?;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidArgument(format!("cannot build thread pool: {e}")))?;
        let budget = config.node_budget;
        let partials: Result<Vec<u64>> = pool.install(|| {
            use rayon::prelude::*;
            seeds
                .par_iter()
                .map(|seed| {
                    let mut forced = seed.clone();
                    let mut meter = Meter::new(&shared, budget);
                    let t = assignments_rec(&ups, &mut forced, split_depth, &mut meter)?;
                    meter.flush()?;
                    Ok(t)
                })
                .collect()
        });
        partials?.into_iter().sum()
    };
    if shared.load(Ordering::Relaxed) > config.node_budget {
        return Err(Error::BudgetExceeded { budget: config.node_budget });
    }
    Ok(BigUint::from(total))
}

/// Completes assignments from cell `i` on; returns the number of full
/// assignments reached. Charges one node per assignment made (the last
/// cell's assignments are charged arithmetically: nothing after them can
/// constrain anything, so each allowed value is a completed leaf).
fn assignments_rec(
    ups: &[Option<Vec<u32>>],
    forced: &mut [u16],
    i: usize,
    meter: &mut Meter<'_>,
) -> Result<u64> {
    if i == ups.len() - 1 {
        let nvals: u64 = if forced[i] > 0 {
            1
        } else if ups[i].is_some() {
            3
        } else {
            2
        };
        meter.charge(nvals)?;
        return Ok(nvals);
    }
    // value 0
    meter.tick()?;
    let mut total = assignments_rec(ups, forced, i + 1, meter)?;
    if forced[i] == 0 {
        // value 1
        meter.tick()?;
        total += assignments_rec(ups, forced, i + 1, meter)?;
        // value 2: requires all up-neighbours in support; forces them to 0
        if let Some(us) = &ups[i] {
            meter.tick()?;
            for &u in us {
                forced[u as usize] += 1;
            }
            total += assignments_rec(ups, forced, i + 1, meter)?;
            for &u in us {
                forced[u as usize] -= 1;
            }
        }
    }
    Ok(total)
}

fn collect_assignment_seeds(
    ups: &[Option<Vec<u32>>],
    forced: &mut Vec<u16>,
    i: usize,
    split_depth: usize,
    meter: &mut Meter<'_>,
    seeds: &mut Vec<Vec<u16>>,
) -> Result<()> {
    if i == split_depth {
        seeds.push(forced.clone());
        return Ok(());
    }
    meter.tick()?;
    collect_assignment_seeds(ups, forced, i + 1, split_depth, meter, seeds)?;
    if forced[i] == 0 {
        meter.tick()?;
        collect_assignment_seeds(ups, forced, i + 1, split_depth, meter, seeds)?;
        if let Some(us) = &ups[i] {
            meter.tick()?;
            for &u in us {
                forced[u as usize] += 1;
            }
            collect_assignment_seeds(ups, forced, i + 1, split_depth, meter, seeds)?;
            for &u in us {
                forced[u as usize] -= 1;
            }
        }
    }
    Ok(())
}

/// The number of partitions with the given c-statistic vector, by
/// enumerating vector partitions of the target (multisets of positive
/// integer vectors summing to it, in nonincreasing lexicographic order)
/// and pushing each through the corner transform. Each image is checked
/// against the target; a failure there is a bug in the transform, not bad
/// input.
pub fn count_by_cvector(dim: usize, target: &[u64], config: &SearchConfig) -> Result<BigUint> {
    if dim < 1 || target.len() != dim {
        return Err(Error::InvalidArgument(format!(
            "target must have exactly dim = {dim} components"
        )));
    }
    // parts are positive vectors componentwise <= target
    let mut parts: Vec<Vec<u64>> = Vec::new();
    if target.iter().all(|&t| t >= 1) {
        let mut prefix = Vec::with_capacity(dim);
        collect_within_caps(target, &mut prefix, &mut parts);
    }
    parts.sort();
    parts.reverse();

    let shared = AtomicU64::new(0);
    let mut meter = Meter::new(&shared, config.node_budget);
    let mut multiplicity = vec![0u64; parts.len()];
    let mut remaining = target.to_vec();
    let count = multiset_rec(
        &parts,
        &mut multiplicity,
        &mut remaining,
        0,
        &mut meter,
        &mut |parts, multiplicity| {
            let pi = phi(&multiset_hypermatrix(dim, parts, multiplicity));
            let sv = stat_vector(&pi);
            assert_eq!(
                sv.values(),
                target,
                "corner transform pushed a vector partition to the wrong c-vector"
            );
        },
    )?;
    meter.flush()?;
    Ok(BigUint::from(count))
}

/// The number of partitions with corner-hook volume `n`, by enumerating
/// multisets of positions weighted by `i_1 + ... + i_d - d + 1` and pushing
/// each through the corner transform.
pub fn count_by_corner_hook(dim: usize, n: u64, config: &SearchConfig) -> Result<BigUint> {
    if dim < 1 {
        return Err(Error::InvalidArgument("dimension must be >= 1".into()));
    }
    // positions of weight <= n, i.e. coordinate sum <= n + d - 1
    let cap = n + dim as u64 - 1;
    let mut parts: Vec<Vec<u64>> = Vec::new();
    let mut prefix = Vec::with_capacity(dim);
    collect_sum_capped(dim, cap, &mut prefix, &mut parts);
    parts.sort();
    parts.reverse();
    let weight =
        |p: &[u64]| -> u64 { p.iter().sum::<u64>() - dim as u64 + 1 };

    let shared = AtomicU64::new(0);
    let mut meter = Meter::new(&shared, config.node_budget);
    let mut multiplicity = vec![0u64; parts.len()];
    let mut remaining = n;
    let count = multiset_weighted_rec(
        &parts,
        &weight,
        &mut multiplicity,
        &mut remaining,
        0,
        &mut meter,
        &mut |parts, multiplicity| {
            let pi = phi(&multiset_hypermatrix(dim, parts, multiplicity));
            assert_eq!(
                corner_hook_volume(&pi),
                n,
                "corner transform pushed a multiset to the wrong corner-hook volume"
            );
        },
    )?;
    meter.flush()?;
    Ok(BigUint::from(count))
}

fn collect_within_caps(caps: &[u64], prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == caps.len() {
        out.push(prefix.clone());
        return;
    }
    for x in 1..=caps[prefix.len()] {
        prefix.push(x);
        collect_within_caps(caps, prefix, out);
        prefix.pop();
    }
}

fn collect_sum_capped(arity: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if prefix.len() == arity {
        out.push(prefix.clone());
        return;
    }
    let used: u64 = prefix.iter().sum();
    let reserve = (arity - prefix.len() - 1) as u64;
    let mut x = 1;
    while used + x + reserve <= cap {
        prefix.push(x);
        collect_sum_capped(arity, cap, prefix, out);
        prefix.pop();
        x += 1;
    }
}

fn multiset_hypermatrix(dim: usize, parts: &[Vec<u64>], multiplicity: &[u64]) -> Hypermatrix {
    let entries = parts.iter().zip(multiplicity).filter(|&(_, &m)| m > 0).map(|(p, &m)| {
        let coords: Vec<u32> = p
            .iter()
            .map(|&x| u32::try_from(x).expect("part coordinate too large"))
            .collect();
        (Cell::new(coords).expect("parts are positive"), m)
    });
    Hypermatrix::new(dim, entries).expect("multiset positions are distinct")
}

fn multiset_rec(
    parts: &[Vec<u64>],
    multiplicity: &mut [u64],
    remaining: &mut [u64],
    from: usize,
    meter: &mut Meter<'_>,
    at_leaf: &mut impl FnMut(&[Vec<u64>], &[u64]),
) -> Result<u64> {
    if remaining.iter().all(|&r| r == 0) {
        at_leaf(parts, multiplicity);
        return Ok(1);
    }
    let mut total = 0;
    for j in from..parts.len() {
        if parts[j].iter().zip(remaining.iter()).all(|(p, r)| p <= r) {
            meter.tick()?;
            for (r, p) in remaining.iter_mut().zip(&parts[j]) {
                *r -= p;
            }
            multiplicity[j] += 1;
            total += multiset_rec(parts, multiplicity, remaining, j, meter, at_leaf)?;
            multiplicity[j] -= 1;
            for (r, p) in remaining.iter_mut().zip(&parts[j]) {
                *r += p;
            }
        }
    }
    Ok(total)
}

fn multiset_weighted_rec(
    parts: &[Vec<u64>],
    weight: &impl Fn(&[u64]) -> u64,
    multiplicity: &mut [u64],
    remaining: &mut u64,
    from: usize,
    meter: &mut Meter<'_>,
    at_leaf: &mut impl FnMut(&[Vec<u64>], &[u64]),
) -> Result<u64> {
    if *remaining == 0 {
        at_leaf(parts, multiplicity);
        return Ok(1);
    }
    let mut total = 0;
    for j in from..parts.len() {
        let w = weight(&parts[j]);
        if w <= *remaining {
            meter.tick()?;
            *remaining -= w;
            multiplicity[j] += 1;
            total +=
                multiset_weighted_rec(parts, weight, multiplicity, remaining, j, meter, at_leaf)?;
            multiplicity[j] -= 1;
            *remaining += w;
        }
    }
    Ok(total)
}

/// Lazily yields every diagram satisfying the constraint exactly once,
/// starting with the empty diagram, in DFS order. The stream is
/// single-consumer and sequential; the node budget still applies.
pub fn enumerate_downsets(
    dim: usize,
    constraint: &RegionConstraint,
    config: &SearchConfig,
) -> Result<DownsetIter> {
    let space = DownsetSpace::build(dim, constraint)?;
    Ok(DownsetIter {
        in_set: vec![false; space.cells.len()],
        space,
        chosen: Vec::new(),
        cursor: Vec::new(),
        nodes: 0,
        budget: config.node_budget,
        done: false,
    })
}

pub struct DownsetIter {
    space: DownsetSpace,
    in_set: Vec<bool>,
    chosen: Vec<usize>,
    cursor: Vec<usize>,
    nodes: u64,
    budget: u64,
    done: bool,
}

impl DownsetIter {
    fn current_diagram(&self) -> Diagram {
        let cells = self
            .chosen
            .iter()
            .map(|&j| Cell::new(self.space.cells[j].clone()).expect("candidate cells are valid"))
            .collect();
        Diagram::from_cells_unchecked(self.space.dim, cells)
    }

    fn budget_exceeded(&mut self) -> Option<Result<Diagram>> {
        self.done = true;
        Some(Err(Error::BudgetExceeded { budget: self.budget }))
    }
}

impl Iterator for DownsetIter {
    type Item = Result<Diagram>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        if self.cursor.is_empty() {
            self.cursor.push(0);
            self.nodes = 1;
            if self.nodes > self.budget {
                return self.budget_exceeded();
            }
            return Some(Ok(Diagram::empty(self.space.dim)));
        }
        loop {
            let depth = self.cursor.len() - 1;
            let mut j = self.cursor[depth];
            if self.chosen.len() < self.space.size_cap {
                while j < self.space.cells.len() && !self.space.addable(&self.in_set, j) {
                    j += 1;
                }
            } else {
                j = self.space.cells.len();
            }
            if j < self.space.cells.len() {
                self.cursor[depth] = j + 1;
                self.in_set[j] = true;
                self.chosen.push(j);
                self.cursor.push(j + 1);
                self.nodes += 1;
                if self.nodes > self.budget {
                    return self.budget_exceeded();
                }
                return Some(Ok(self.current_diagram()));
            }
            self.cursor.pop();
            match self.chosen.pop() {
                Some(done_j) => self.in_set[done_j] = false,
                None => {
                    self.done = true;
                    return None;
                }
            }
        }
    }
}
