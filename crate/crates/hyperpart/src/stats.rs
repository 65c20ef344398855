//! Corner statistics: the c-statistics and the corner-hook volume.
//!
//! For a nonempty partition, `c_l` sums the l-th coordinate over all
//! corners (defined for `l` in `[d]` only; the vertical axis is not a
//! statistic). The corner-hook volume sums `i_1 + ... + i_d - d + 1` over
//! corners; its distribution over all d-dimensional partitions is generated
//! by MacMahon's product.

use crate::error::{Error, Result};
use crate::lattice::Partition;
use crate::transform::{corners, CornerSet};

/// All corner statistics of one partition, computed in a single pass over
/// its corner set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatVector {
    dim: usize,
    values: Vec<u64>,
    corner_count: u64,
    corner_hook: u64,
}

impl StatVector {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `(c_1, ..., c_d)`.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn corner_count(&self) -> u64 {
        self.corner_count
    }

    pub fn corner_hook(&self) -> u64 {
        self.corner_hook
    }
}

fn stats_from_corners(dim: usize, cs: &CornerSet) -> StatVector {
    let mut values = vec![0u64; dim];
    let mut corner_hook = 0u64;
    for cell in cs.cells() {
        let coords = cell.coords();
        let mut head_sum = 0u64;
        for (axis, v) in values.iter_mut().enumerate() {
            let c = u64::from(coords[axis]);
            *v += c;
            head_sum += c;
        }
        // every corner has i_1 + ... + i_d >= d, so the weight is >= 1
        corner_hook += head_sum - dim as u64 + 1;
    }
    StatVector {
        dim,
        values,
        corner_count: cs.len() as u64,
        corner_hook,
    }
}

/// Bundles `c_1..c_d`, the corner count and the corner-hook volume.
pub fn stat_vector(pi: &Partition) -> StatVector {
    stats_from_corners(pi.dim(), &corners(pi))
}

/// The statistic `c_l`: sum of l-th coordinates over all corners.
/// `axis` is 1-based and must lie in `[d]`.
pub fn c_statistic(pi: &Partition, axis: usize) -> Result<u64> {
    if axis == 0 || axis > pi.dim() {
        return Err(Error::InvalidArgument(format!(
            "axis {axis} outside [1, {}]; the vertical axis is not a statistic",
            pi.dim()
        )));
    }
    Ok(stat_vector(pi).values[axis - 1])
}

/// The corner-hook volume: sum over corners of `i_1 + ... + i_d - d + 1`.
pub fn corner_hook_volume(pi: &Partition) -> u64 {
    stat_vector(pi).corner_hook
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{partition_from_diagram, simplex_diagram, Cell};

    fn c(coords: &[u32]) -> Cell {
        Cell::new(coords.to_vec()).unwrap()
    }

    #[test]
    fn c_statistic_examples() {
        assert_eq!(c_statistic(&Partition::empty(1), 1).unwrap(), 0);

        let p = Partition::new(1, [(c(&[1]), 2), (c(&[2]), 1)]).unwrap();
        assert_eq!(c_statistic(&p, 1).unwrap(), 3);

        // axis out of range: the vertical axis d+1 is not a statistic
        assert!(c_statistic(&p, 2).is_err());
        assert!(c_statistic(&p, 0).is_err());
    }

    #[test]
    fn corner_hook_examples() {
        assert_eq!(corner_hook_volume(&Partition::empty(2)), 0);

        let p = Partition::new(1, [(c(&[1]), 2), (c(&[2]), 1)]).unwrap();
        assert_eq!(corner_hook_volume(&p), 3);

        let p = Partition::new(2, [(c(&[1, 1]), 1)]).unwrap();
        assert_eq!(corner_hook_volume(&p), 1);
    }

    #[test]
    fn stat_vector_examples() {
        let sv = stat_vector(&Partition::empty(2));
        assert_eq!(sv.values(), &[0, 0]);
        assert_eq!(sv.corner_count(), 0);
        assert_eq!(sv.corner_hook(), 0);

        let p = Partition::new(1, [(c(&[1]), 3), (c(&[2]), 2)]).unwrap();
        let sv = stat_vector(&p);
        assert_eq!(sv.values(), &[5]);
        assert_eq!(sv.corner_count(), 3);
        assert_eq!(sv.corner_hook(), 5);
    }

    #[test]
    fn simplex_partitions_are_sharp() {
        // on a simplex diagram every c-statistic equals the volume
        for dim in 1..=3usize {
            for k in 0..=6u32 {
                let p = partition_from_diagram(&simplex_diagram(dim, k));
                let volume = p.volume_u64();
                let sv = stat_vector(&p);
                for axis in 1..=dim {
                    assert_eq!(sv.values()[axis - 1], volume, "dim {dim} k {k} axis {axis}");
                }
            }
        }
    }

    #[test]
    fn corner_hook_consistency() {
        let p = Partition::new(2, [(c(&[1, 1]), 3), (c(&[1, 2]), 1), (c(&[2, 1]), 2)]).unwrap();
        let sv = stat_vector(&p);
        let sum: u64 = sv.values().iter().sum();
        assert_eq!(
            sv.corner_hook(),
            sum - (sv.dim() as u64 - 1) * sv.corner_count()
        );
        assert_eq!(corner_hook_volume(&p), sv.corner_hook());
        assert_eq!(c_statistic(&p, 1).unwrap(), sv.values()[0]);
        assert_eq!(c_statistic(&p, 2).unwrap(), sv.values()[1]);
    }
}
