//! Directed spanning tree (arborescence) counts for the wheel.
//!
//! Three routes: principal minors of the Laplacians (the Matrix-Tree
//! theorem), closed forms, and brute-force enumeration over edge choices.
//! In-trees pair with the out-degree Laplacian, out-trees with the
//! in-degree Laplacian; both take the principal minor at the root, so the
//! cofactor sign is +1.
//!
//! Counts are weighted: each tree contributes the product of its edge
//! weights, which reduces to plain cardinality at unit weights.

use num::{BigInt, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{to_integer, Integer};
use crate::sequences::lucas;
use crate::wheel::{DirectedWheel, VertexId};

/// Orientation of a spanning arborescence relative to its root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Every non-root vertex has a directed path to the root.
    In,
    /// Every vertex is reachable from the root.
    Out,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::In => write!(f, "in"),
            Direction::Out => write!(f, "out"),
        }
    }
}

/// Largest cycle size the brute-force enumerator accepts.
pub const ENUMERATION_MAX: usize = 10;

/// Weighted arborescence count as a principal minor of the matching
/// Laplacian at the root.
pub fn count_via_cofactor(
    wheel: &DirectedWheel,
    root: VertexId,
    direction: Direction,
) -> Result<Integer> {
    let laplacian = match direction {
        Direction::In => wheel.out_laplacian(),
        Direction::Out => wheel.in_laplacian(),
    };
    let idx = wheel.vertex_index(root);
    let minor = laplacian.minor_determinant(idx, idx)?;
    Ok(to_integer(&minor).expect("integer Laplacian has an integer minor"))
}

/// Closed form for the in-tree count rooted at the hub: `L_{2N} - 2`.
pub fn in_trees_closed_form(n: usize) -> Result<Integer> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    Ok(lucas(2 * n as u64) - BigInt::from(2))
}

/// Closed form for the out-tree count: 0 at the hub, `N^2` at any cycle root.
pub fn out_trees_closed_form(n: usize, root: VertexId) -> Result<Integer> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    Ok(match root {
        VertexId::Hub => Integer::zero(),
        VertexId::Cycle(_) => BigInt::from(n) * BigInt::from(n),
    })
}

/// Per-vertex parent candidates: choosing one entry for every non-root
/// vertex picks a candidate edge set for an arborescence.
struct ChoiceSpace {
    root: usize,
    vertex_count: usize,
    /// `choices[v]` lists `(parent_index, weight)`; the root's list is empty
    /// and never consulted.
    choices: Vec<Vec<(usize, Integer)>>,
}

impl ChoiceSpace {
    fn build(wheel: &DirectedWheel, root: VertexId, direction: Direction) -> Self {
        let root = wheel.vertex_index(root);
        let vertex_count = wheel.vertex_count();
        let choices = wheel
            .vertices()
            .map(|v| {
                if wheel.vertex_index(v) == root {
                    return Vec::new();
                }
                // a tree edge's other endpoint acts as the parent pointer
                // that must lead to the root
                let edges = match direction {
                    Direction::In => wheel.out_edges(v),
                    Direction::Out => wheel.in_edges(v),
                };
                edges
                    .into_iter()
                    .map(|(u, w)| (wheel.vertex_index(u), w))
                    .collect()
            })
            .collect();
        ChoiceSpace {
            root,
            vertex_count,
            choices,
        }
    }

    /// Number of raw edge selections (most are not trees).
    fn combinations(&self) -> u64 {
        let mut total = 1u64;
        for (v, c) in self.choices.iter().enumerate() {
            if v == self.root {
                continue;
            }
            total *= c.len() as u64;
        }
        total
    }

    /// Decodes one mixed-radix selection index and returns the weight
    /// product when the selected edges form an arborescence, zero otherwise.
    fn tree_weight(&self, mut index: u64) -> Integer {
        let mut parent = vec![usize::MAX; self.vertex_count];
        let mut weight = Integer::one();
        for (v, slot) in parent.iter_mut().enumerate() {
            if v == self.root {
                continue;
            }
            let options = &self.choices[v];
            let pick = (index % options.len() as u64) as usize;
            index /= options.len() as u64;
            let (p, w) = &options[pick];
            *slot = *p;
            weight *= w;
        }
        // every parent chain must reach the root without revisiting
        for start in 0..self.vertex_count {
            if start == self.root {
                continue;
            }
            let mut v = start;
            let mut steps = 0;
            while v != self.root {
                v = parent[v];
                steps += 1;
                if steps > self.vertex_count {
                    return Integer::zero();
                }
            }
        }
        weight
    }

    fn sum_range(&self, range: std::ops::Range<u64>) -> Integer {
        range.map(|i| self.tree_weight(i)).sum()
    }
}

const ENUM_CHUNK: u64 = 4096;

fn enumeration_space(
    wheel: &DirectedWheel,
    root: VertexId,
    direction: Direction,
) -> Result<(ChoiceSpace, u64)> {
    let n = wheel.cycle_len();
    if n > ENUMERATION_MAX {
        return Err(Error::ScaleExceeded {
            n,
            max: ENUMERATION_MAX,
        });
    }
    let space = ChoiceSpace::build(wheel, root, direction);
    let total = space.combinations();
    Ok((space, total))
}

fn chunk_ranges(total: u64) -> impl Iterator<Item = std::ops::Range<u64>> {
    (0..total.div_ceil(ENUM_CHUNK)).map(move |c| {
        let lo = c * ENUM_CHUNK;
        lo..(lo + ENUM_CHUNK).min(total)
    })
}

/// Brute-force weighted arborescence sum, sequentially.
pub fn enumerate_sequential(
    wheel: &DirectedWheel,
    root: VertexId,
    direction: Direction,
) -> Result<Integer> {
    let (space, total) = enumeration_space(wheel, root, direction)?;
    Ok(chunk_ranges(total).map(|r| space.sum_range(r)).sum())
}

/// Brute-force weighted arborescence sum with the choice space partitioned
/// across threads; partial sums combine in chunk order, so the result is
/// identical to the sequential one.
#[cfg(feature = "parallel")]
pub fn enumerate_parallel(
    wheel: &DirectedWheel,
    root: VertexId,
    direction: Direction,
) -> Result<Integer> {
    use rayon::prelude::*;
    let (space, total) = enumeration_space(wheel, root, direction)?;
    let ranges: Vec<_> = chunk_ranges(total).collect();
    Ok(ranges
        .into_par_iter()
        .map(|r| space.sum_range(r))
        .collect::<Vec<_>>()
        .into_iter()
        .sum())
}

/// Brute-force weighted arborescence sum; requires `N <= 10`.
pub fn enumerate(wheel: &DirectedWheel, root: VertexId, direction: Direction) -> Result<Integer> {
    #[cfg(feature = "parallel")]
    {
        enumerate_parallel(wheel, root, direction)
    }
    #[cfg(not(feature = "parallel"))]
    {
        enumerate_sequential(wheel, root, direction)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hub_in_trees_small_wheels() {
        let w3 = DirectedWheel::new(3).unwrap();
        assert_eq!(count_via_cofactor(&w3, VertexId::Hub, Direction::In).unwrap(), BigInt::from(16));
        assert_eq!(enumerate(&w3, VertexId::Hub, Direction::In).unwrap(), BigInt::from(16));

        let w4 = DirectedWheel::new(4).unwrap();
        assert_eq!(count_via_cofactor(&w4, VertexId::Hub, Direction::In).unwrap(), BigInt::from(45));
    }

    #[test]
    fn hub_has_no_out_trees() {
        let w4 = DirectedWheel::new(4).unwrap();
        assert_eq!(count_via_cofactor(&w4, VertexId::Hub, Direction::Out).unwrap(), BigInt::zero());
        let w3 = DirectedWheel::new(3).unwrap();
        assert_eq!(enumerate(&w3, VertexId::Hub, Direction::Out).unwrap(), BigInt::zero());
    }

    #[test]
    fn cycle_rooted_out_trees_are_n_squared() {
        let w3 = DirectedWheel::new(3).unwrap();
        assert_eq!(
            count_via_cofactor(&w3, VertexId::Cycle(0), Direction::Out).unwrap(),
            BigInt::from(9)
        );
        assert_eq!(enumerate(&w3, VertexId::Cycle(0), Direction::Out).unwrap(), BigInt::from(9));
    }

    #[test]
    fn cycle_rooted_in_trees_are_impossible() {
        // the hub cannot point anywhere, so nothing can reach a cycle root
        let w4 = DirectedWheel::new(4).unwrap();
        assert_eq!(count_via_cofactor(&w4, VertexId::Cycle(1), Direction::In).unwrap(), BigInt::zero());
        assert_eq!(enumerate(&w4, VertexId::Cycle(1), Direction::In).unwrap(), BigInt::zero());
    }

    #[test]
    fn closed_forms_spot_values() {
        assert_eq!(in_trees_closed_form(3).unwrap(), BigInt::from(16));
        assert_eq!(in_trees_closed_form(4).unwrap(), BigInt::from(45));
        assert_eq!(in_trees_closed_form(5).unwrap(), BigInt::from(121));
        assert_eq!(out_trees_closed_form(3, VertexId::Hub).unwrap(), BigInt::zero());
        assert_eq!(out_trees_closed_form(3, VertexId::Cycle(0)).unwrap(), BigInt::from(9));
        assert_eq!(out_trees_closed_form(4, VertexId::Cycle(2)).unwrap(), BigInt::from(16));
        assert!(in_trees_closed_form(2).is_err());
        assert!(out_trees_closed_form(2, VertexId::Hub).is_err());
    }

    #[test]
    fn weighted_spoke_doubles_trees_through_it() {
        // of the 9 unit-weight out-trees rooted at cycle:1, the 3 using the
        // edge cycle:0 -> hub double in weight: 6 + 3*2 = 12
        let mut w = DirectedWheel::new(3).unwrap();
        w.set_weight(VertexId::Cycle(0), VertexId::Hub, Integer::from(2)).unwrap();
        assert_eq!(enumerate(&w, VertexId::Cycle(1), Direction::Out).unwrap(), BigInt::from(12));
        assert_eq!(
            count_via_cofactor(&w, VertexId::Cycle(1), Direction::Out).unwrap(),
            BigInt::from(12)
        );
    }

    #[test]
    fn enumeration_matches_cofactor_on_unit_wheels() {
        for n in 3..=8usize {
            let w = DirectedWheel::new(n).unwrap();
            for root in w.vertices() {
                for direction in [Direction::In, Direction::Out] {
                    assert_eq!(
                        enumerate(&w, root, direction).unwrap(),
                        count_via_cofactor(&w, root, direction).unwrap(),
                        "N={n}, root={root}, direction={direction}"
                    );
                }
            }
        }
    }

    #[test]
    fn enumeration_rejects_large_wheels() {
        let w = DirectedWheel::new(11).unwrap();
        assert_eq!(
            enumerate(&w, VertexId::Hub, Direction::In),
            Err(Error::ScaleExceeded { n: 11, max: 10 })
        );
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_enumeration_matches_sequential() {
        let mut w = DirectedWheel::new(6).unwrap();
        w.set_weight(VertexId::Cycle(2), VertexId::Cycle(3), Integer::from(3)).unwrap();
        for root in [VertexId::Hub, VertexId::Cycle(4)] {
            for direction in [Direction::In, Direction::Out] {
                assert_eq!(
                    enumerate_parallel(&w, root, direction).unwrap(),
                    enumerate_sequential(&w, root, direction).unwrap()
                );
            }
        }
    }
}
