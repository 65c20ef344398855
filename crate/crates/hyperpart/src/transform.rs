//! The bijection between N-hypermatrices and d-dimensional partitions.
//!
//! Forward direction: the entry of the image partition at a position is the
//! maximum, over directed lattice paths starting there, of the sum of
//! hypermatrix entries along the path. This is computed by the equivalent
//! recurrence `pi_i = a_i + max_l pi_{i + e_l}`, evaluated in reverse
//! lexicographic order (the recurrence only reads strictly larger
//! positions, so reverse lex order is a valid topological order).
//!
//! Inverse direction: project corners. The preimage entry at a position
//! counts the corners of the partition lying in the vertical fiber over it.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Result;
use crate::lattice::{Cell, Hypermatrix, Partition};

/// The corners of a partition: diagram cells that stay extremal in the
/// first d axes, i.e. cells `c` with `c + e_l` outside the diagram for
/// every `l` in `[d]`. The last axis is exempt.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CornerSet {
    dim: usize,
    cells: BTreeSet<Cell>,
}

impl CornerSet {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Largest entry of `pi` at any up-neighbour of `position` (zero when the
/// support ends there).
fn max_up_entry(pi: &BTreeMap<Cell, u64>, position: &Cell, dim: usize) -> u64 {
    (0..dim)
        .map(|axis| {
            let up = position.bumped(axis);
            pi.get(&up).copied().unwrap_or(0)
        })
        .max()
        .unwrap_or(0)
}

/// Applies the hypermatrix-to-partition map.
///
/// The support of the image is the downward closure (in `Z_+^d`) of the
/// support of `a`.
pub fn phi(a: &Hypermatrix) -> Partition {
    let dim = a.dim();
    let mut closure: BTreeSet<Cell> = BTreeSet::new();
    for position in a.entries().keys() {
        collect_downward(position.coords(), &mut Vec::with_capacity(dim), &mut closure);
    }
    let mut entries: BTreeMap<Cell, u64> = BTreeMap::new();
    for position in closure.iter().rev() {
        let value = a.get(position) + max_up_entry(&entries, position, dim);
        debug_assert!(value >= 1, "closure positions always get a positive entry");
        entries.insert(position.clone(), value);
    }
    Partition::from_entries_unchecked(dim, entries)
}

fn collect_downward(bound: &[u32], prefix: &mut Vec<u32>, out: &mut BTreeSet<Cell>) {
    if prefix.len() == bound.len() {
        out.insert(Cell::from_coords_unchecked(prefix.clone()));
        return;
    }
    for x in 1..=bound[prefix.len()] {
        prefix.push(x);
        collect_downward(bound, prefix, out);
        prefix.pop();
    }
}

/// The exact corner set of a partition.
///
/// Corners over the fiber at position `i` are the cells `(i, j)` with
/// `max_l pi_{i+e_l} < j <= pi_i`; this materializes them per fiber, which
/// is one pass over the support.
pub fn corners(pi: &Partition) -> CornerSet {
    let dim = pi.dim();
    let mut cells = BTreeSet::new();
    for (position, &value) in pi.entries() {
        let floor = max_up_entry(pi.entries(), position, dim);
        for height in (floor + 1)..=value {
            let mut coords = position.coords().to_vec();
            coords.push(u32::try_from(height).expect("entry too large to materialize corners"));
            cells.insert(Cell::from_coords_unchecked(coords));
        }
    }
    CornerSet { dim, cells }
}

/// Inverts `phi` by projecting corners: the preimage entry at a position is
/// the number of corners in the vertical fiber over it.
pub fn phi_inverse(pi: &Partition) -> Hypermatrix {
    let dim = pi.dim();
    let mut entries: Vec<(Cell, u64)> = Vec::new();
    for (position, &value) in pi.entries() {
        let floor = max_up_entry(pi.entries(), position, dim);
        if value > floor {
            entries.push((position.clone(), value - floor));
        }
    }
    Hypermatrix::new(dim, entries).expect("fiber counts form a valid hypermatrix")
}

/// Convenience check used by tests and the counting assertions.
pub fn is_corner(pi: &Partition, diagram_cells: &BTreeSet<Cell>, cell: &Cell) -> Result<bool> {
    let dim = pi.dim();
    if !diagram_cells.contains(cell) {
        return Ok(false);
    }
    Ok((0..dim).all(|axis| !diagram_cells.contains(&cell.bumped(axis))))
}
