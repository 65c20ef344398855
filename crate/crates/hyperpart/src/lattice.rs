//! Cells, diagrams, hypermatrices and d-dimensional partitions.
//!
//! A d-dimensional partition is a finitely supported array of nonnegative
//! integers indexed by `Z_+^d`, nonincreasing along every axis. It is
//! uniquely determined by its diagram: the set of lattice points
//! `(i_1, ..., i_d, i)` with `1 <= i <= pi_{i_1,...,i_d}`, which is exactly a
//! finite downset of `Z_+^{d+1}`. This module provides the two
//! representations plus sparse hypermatrices, and conversions among them.
//!
//! Coordinates are 1-based. Counts and volumes are arbitrary precision.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// A point of the positive integer lattice. The number of coordinates is
/// carried explicitly: diagram cells have `d + 1` coordinates, hypermatrix
/// and partition positions have `d`.
///
/// Cells order lexicographically by coordinates; this is the single
/// canonical order used everywhere (sorting a downset lexicographically
/// yields a build sequence whose every prefix is again a downset).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    coords: Vec<u32>,
}

impl Cell {
    pub fn new(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::MalformedInput("cell needs at least one coordinate".into()));
        }
        if coords.iter().any(|&c| c == 0) {
            return Err(Error::MalformedInput(format!(
                "cell coordinates must be positive, got {coords:?}"
            )));
        }
        Ok(Cell { coords })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a cell always has at least one coordinate
    }

    /// The neighbour one step up along `axis` (0-based).
    pub fn bumped(&self, axis: usize) -> Cell {
        let mut coords = self.coords.clone();
        coords[axis] += 1;
        Cell { coords }
    }

    /// The neighbour one step down along `axis` (0-based), if any.
    pub fn lowered(&self, axis: usize) -> Option<Cell> {
        if self.coords[axis] <= 1 {
            return None;
        }
        let mut coords = self.coords.clone();
        coords[axis] -= 1;
        Some(Cell { coords })
    }

    pub fn coord_sum(&self) -> u64 {
        self.coords.iter().map(|&c| u64::from(c)).sum()
    }

    pub(crate) fn from_coords_unchecked(coords: Vec<u32>) -> Cell {
        debug_assert!(!coords.is_empty() && coords.iter().all(|&c| c >= 1));
        Cell { coords }
    }
}

/// True iff `cells` is a finite downset of `Z_+^{d+1}`, i.e. the diagram of
/// some d-dimensional partition: whenever a cell has a coordinate `>= 2`,
/// the cell one step down along that axis is also present.
///
/// Mixed or wrong cell lengths are rejected as malformed input.
pub fn validate_downset(dim: usize, cells: &BTreeSet<Cell>) -> Result<bool> {
    let want = dim + 1;
    for cell in cells {
        if cell.len() != want {
            return Err(Error::MalformedInput(format!(
                "expected cells with {want} coordinates for dimension {dim}, got {:?}",
                cell.coords()
            )));
        }
    }
    for cell in cells {
        for axis in 0..want {
            if let Some(pred) = cell.lowered(axis) {
                if !cells.contains(&pred) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// A finite downset of `Z_+^{d+1}`: the canonical representation of a
/// d-dimensional partition as a set of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    dim: usize,
    cells: BTreeSet<Cell>,
}

impl Diagram {
    pub fn empty(dim: usize) -> Self {
        Diagram { dim, cells: BTreeSet::new() }
    }

    /// Builds a diagram after checking the downset property.
    pub fn new(dim: usize, cells: BTreeSet<Cell>) -> Result<Self> {
        if !validate_downset(dim, &cells)? {
            return Err(Error::MalformedInput(
                "cell set is not downward closed".into(),
            ));
        }
        Ok(Diagram { dim, cells })
    }

    pub(crate) fn from_cells_unchecked(dim: usize, cells: BTreeSet<Cell>) -> Self {
        debug_assert!(validate_downset(dim, &cells).unwrap_or(false));
        Diagram { dim, cells }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Cells in lexicographic order.
    pub fn cells(&self) -> &BTreeSet<Cell> {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: &Cell) -> bool {
        self.cells.contains(cell)
    }

    /// JSON form: `{"dim": d, "cells": [[i1, ..., id, i], ...]}` with cells
    /// in lexicographic order.
    pub fn to_json(&self) -> Value {
        json!({
            "dim": self.dim,
            "cells": self.cells.iter().map(|c| c.coords().to_vec()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::MalformedInput("diagram JSON needs a \"dim\" field".into()))?
            as usize;
        let rows = value
            .get("cells")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedInput("diagram JSON needs a \"cells\" array".into()))?;
        let mut cells = BTreeSet::new();
        for row in rows {
            cells.insert(parse_coords(row)?);
        }
        Diagram::new(dim, cells)
    }
}

fn parse_coords(row: &Value) -> Result<Cell> {
    let arr = row
        .as_array()
        .ok_or_else(|| Error::MalformedInput("cell must be an array of coordinates".into()))?;
    let mut coords = Vec::with_capacity(arr.len());
    for v in arr {
        let c = v
            .as_u64()
            .filter(|&c| c >= 1 && c <= u64::from(u32::MAX))
            .ok_or_else(|| Error::MalformedInput(format!("bad coordinate {v}")))?;
        coords.push(c as u32);
    }
    Cell::new(coords)
}

/// A finitely supported map `Z_+^d -> N`, stored sparsely: zero values are
/// never kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermatrix {
    dim: usize,
    entries: BTreeMap<Cell, u64>,
}

impl Hypermatrix {
    pub fn zero(dim: usize) -> Self {
        Hypermatrix { dim, entries: BTreeMap::new() }
    }

    pub fn new(dim: usize, entries: impl IntoIterator<Item = (Cell, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (cell, value) in entries {
            if cell.len() != dim {
                return Err(Error::MalformedInput(format!(
                    "hypermatrix position {:?} does not have {dim} coordinates",
                    cell.coords()
                )));
            }
            if value == 0 {
                continue;
            }
            if map.insert(cell.clone(), value).is_some() {
                return Err(Error::MalformedInput(format!(
                    "duplicate hypermatrix position {:?}",
                    cell.coords()
                )));
            }
        }
        Ok(Hypermatrix { dim, entries: map })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, position: &Cell) -> u64 {
        self.entries.get(position).copied().unwrap_or(0)
    }

    /// Nonzero entries in lexicographic position order.
    pub fn entries(&self) -> &BTreeMap<Cell, u64> {
        &self.entries
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// A d-dimensional partition as a sparse entry map: positions carry the
/// positive entries, absent positions read as zero. Construction checks
/// that entries are nonincreasing along every axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    dim: usize,
    entries: BTreeMap<Cell, u64>,
}

impl Partition {
    pub fn empty(dim: usize) -> Self {
        Partition { dim, entries: BTreeMap::new() }
    }

    pub fn new(dim: usize, entries: impl IntoIterator<Item = (Cell, u64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (cell, value) in entries {
            if cell.len() != dim {
                return Err(Error::MalformedInput(format!(
                    "partition position {:?} does not have {dim} coordinates",
                    cell.coords()
                )));
            }
            if value == 0 {
                continue;
            }
            if map.insert(cell.clone(), value).is_some() {
                return Err(Error::MalformedInput(format!(
                    "duplicate partition position {:?}",
                    cell.coords()
                )));
            }
        }
        let p = Partition { dim, entries: map };
        if let Some(cell) = p.monotonicity_violation() {
            return Err(Error::MalformedInput(format!(
                "entries increase along an axis at {:?}",
                cell.coords()
            )));
        }
        Ok(p)
    }

    pub(crate) fn from_entries_unchecked(dim: usize, entries: BTreeMap<Cell, u64>) -> Self {
        let p = Partition { dim, entries };
        debug_assert!(p.monotonicity_violation().is_none());
        p
    }

    fn monotonicity_violation(&self) -> Option<&Cell> {
        for (cell, &value) in &self.entries {
            for axis in 0..self.dim {
                if let Some(pred) = cell.lowered(axis) {
                    if self.entry(&pred) < value {
                        return Some(cell);
                    }
                }
            }
        }
        None
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The entry at `position` (zero when absent).
    pub fn entry(&self, position: &Cell) -> u64 {
        self.entries.get(position).copied().unwrap_or(0)
    }

    /// Nonzero entries in lexicographic position order.
    pub fn entries(&self) -> &BTreeMap<Cell, u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of all entries; equals the cardinality of the diagram.
    pub fn volume(&self) -> BigUint {
        self.entries.values().map(|&v| BigUint::from(v)).sum()
    }

    /// The volume as a machine word, for desk-scale partitions whose
    /// diagram could be materialized anyway.
    pub fn volume_u64(&self) -> u64 {
        self.entries
            .values()
            .fold(0u64, |acc, &v| acc.checked_add(v).expect("volume overflows u64"))
    }

    /// JSON form: `{"dim": d, "entries": [[i1, ..., id, value], ...]}`.
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .entries
            .iter()
            .map(|(cell, &v)| {
                let mut row: Vec<u64> =
                    cell.coords().iter().map(|&c| u64::from(c)).collect();
                row.push(v);
                json!(row)
            })
            .collect();
        json!({ "dim": self.dim, "entries": rows })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let dim = value
            .get("dim")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::MalformedInput("partition JSON needs a \"dim\" field".into()))?
            as usize;
        let rows = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedInput("partition JSON needs an \"entries\" array".into()))?;
        let mut entries = Vec::new();
        for row in rows {
            let arr = row
                .as_array()
                .filter(|a| a.len() == dim + 1)
                .ok_or_else(|| {
                    Error::MalformedInput(format!("entry row must be [coords..., value], got {row}"))
                })?;
            let cell = parse_coords(&Value::Array(arr[..dim].to_vec()))?;
            let value = arr[dim]
                .as_u64()
                .ok_or_else(|| Error::MalformedInput(format!("bad entry value {}", arr[dim])))?;
            entries.push((cell, value));
        }
        Partition::new(dim, entries)
    }
}

/// Volume of a partition: the sum of all entries.
pub fn volume(partition: &Partition) -> BigUint {
    partition.volume()
}

/// Reads a partition off a diagram: the entry at `(i_1, ..., i_d)` is the
/// largest `i` with `(i_1, ..., i_d, i)` in the diagram.
pub fn partition_from_diagram(diagram: &Diagram) -> Partition {
    let dim = diagram.dim();
    let mut entries: BTreeMap<Cell, u64> = BTreeMap::new();
    for cell in diagram.cells() {
        let coords = cell.coords();
        let position = Cell::from_coords_unchecked(coords[..dim].to_vec());
        let height = u64::from(coords[dim]);
        let entry = entries.entry(position).or_insert(0);
        *entry = (*entry).max(height);
    }
    Partition::from_entries_unchecked(dim, entries)
}

/// Materializes the diagram of a partition: each entry `v` at position
/// `(i_1, ..., i_d)` contributes the cells `(i_1, ..., i_d, 1..=v)`.
pub fn diagram_from_partition(partition: &Partition) -> Diagram {
    let dim = partition.dim();
    let mut cells = BTreeSet::new();
    for (position, &value) in partition.entries() {
        for height in 1..=value {
            let mut coords = position.coords().to_vec();
            coords.push(u32::try_from(height).expect("entry too large to materialize"));
            cells.insert(Cell::from_coords_unchecked(coords));
        }
    }
    Diagram::from_cells_unchecked(dim, cells)
}

/// The positive integer points of the simplex `x_1 + ... + x_{d+1} <= k`,
/// as a diagram. Its cardinality is `binomial(k, d + 1)`.
pub fn simplex_diagram(dim: usize, k: u32) -> Diagram {
    let mut cells = BTreeSet::new();
    let mut prefix = Vec::with_capacity(dim + 1);
    collect_simplex(dim + 1, k, &mut prefix, &mut cells);
    Diagram::from_cells_unchecked(dim, cells)
}

fn collect_simplex(arity: usize, k: u32, prefix: &mut Vec<u32>, out: &mut BTreeSet<Cell>) {
    if prefix.len() == arity {
        out.insert(Cell::from_coords_unchecked(prefix.clone()));
        return;
    }
    let used: u32 = prefix.iter().sum();
    let remaining_axes = (arity - prefix.len() - 1) as u32;
    // leave room for at least 1 in every later coordinate
    let mut x = 1;
    while used + x + remaining_axes <= k {
        prefix.push(x);
        collect_simplex(arity, k, prefix, out);
        prefix.pop();
        x += 1;
    }
}
