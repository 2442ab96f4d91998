//! The directed wheel graph and its matrices.
//!
//! `DirectedWheel` is an `N`-vertex bidirected cycle plus a hub vertex that
//! receives one edge from every cycle vertex and emits none, so the hub
//! absorbs the walk. All matrix representations order vertices as
//! `Cycle(0), ..., Cycle(N-1), Hub`.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{ExactMatrix, Integer, Rational};

/// A vertex of the wheel: a cycle position (taken mod `N`) or the hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexId {
    Cycle(usize),
    Hub,
}

impl std::fmt::Display for VertexId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexId::Cycle(k) => write!(f, "cycle:{k}"),
            VertexId::Hub => write!(f, "hub"),
        }
    }
}

/// The directed wheel with integer edge weights.
///
/// Every cycle vertex `k` has exactly three out-edges: to its cycle
/// neighbors `k+1` and `k-1` (mod `N`) and to the hub. The hub has none.
/// All weights default to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedWheel {
    n: usize,
    clockwise: Vec<Integer>,        // Cycle(k) -> Cycle(k+1)
    counterclockwise: Vec<Integer>, // Cycle(k) -> Cycle(k-1)
    spoke: Vec<Integer>,            // Cycle(k) -> Hub
}

impl DirectedWheel {
    /// Unit-weight wheel on an `n`-cycle; requires `n >= 3`.
    pub fn new(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
        }
        Ok(DirectedWheel {
            n,
            clockwise: vec![Integer::one(); n],
            counterclockwise: vec![Integer::one(); n],
            spoke: vec![Integer::one(); n],
        })
    }

    /// Number of cycle vertices `N`.
    pub fn cycle_len(&self) -> usize {
        self.n
    }

    /// Total number of vertices, `N + 1`.
    pub fn vertex_count(&self) -> usize {
        self.n + 1
    }

    /// Matrix row/column index of a vertex (cycle positions normalized mod `N`).
    pub fn vertex_index(&self, v: VertexId) -> usize {
        match v {
            VertexId::Cycle(k) => k % self.n,
            VertexId::Hub => self.n,
        }
    }

    /// All vertices in matrix order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.n).map(VertexId::Cycle).chain(std::iter::once(VertexId::Hub))
    }

    fn right(&self, k: usize) -> usize {
        (k + 1) % self.n
    }

    fn left(&self, k: usize) -> usize {
        (k + self.n - 1) % self.n
    }

    /// Sets the weight of an existing edge; the edge set itself is fixed.
    pub fn set_weight(&mut self, tail: VertexId, head: VertexId, weight: Integer) -> Result<()> {
        let k = match tail {
            VertexId::Cycle(k) => k % self.n,
            VertexId::Hub => {
                return Err(Error::domain("the hub has no outgoing edges".to_string()));
            }
        };
        match head {
            VertexId::Hub => self.spoke[k] = weight,
            VertexId::Cycle(h) => {
                let h = h % self.n;
                if h == self.right(k) {
                    self.clockwise[k] = weight;
                } else if h == self.left(k) {
                    self.counterclockwise[k] = weight;
                } else {
                    return Err(Error::domain(format!(
                        "no edge from cycle:{k} to cycle:{h} in a {}-cycle wheel",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Weight of the directed edge `tail -> head`, or 0 when absent.
    pub fn weight(&self, tail: VertexId, head: VertexId) -> Integer {
        let k = match tail {
            VertexId::Cycle(k) => k % self.n,
            VertexId::Hub => return Integer::zero(),
        };
        match head {
            VertexId::Hub => self.spoke[k].clone(),
            VertexId::Cycle(h) => {
                let h = h % self.n;
                if h == self.right(k) {
                    self.clockwise[k].clone()
                } else if h == self.left(k) {
                    self.counterclockwise[k].clone()
                } else {
                    Integer::zero()
                }
            }
        }
    }

    /// Out-edges of a vertex as `(head, weight)` pairs.
    pub fn out_edges(&self, v: VertexId) -> Vec<(VertexId, Integer)> {
        match v {
            VertexId::Hub => Vec::new(),
            VertexId::Cycle(k) => {
                let k = k % self.n;
                vec![
                    (VertexId::Cycle(self.right(k)), self.clockwise[k].clone()),
                    (VertexId::Cycle(self.left(k)), self.counterclockwise[k].clone()),
                    (VertexId::Hub, self.spoke[k].clone()),
                ]
            }
        }
    }

    /// In-edges of a vertex as `(tail, weight)` pairs.
    pub fn in_edges(&self, v: VertexId) -> Vec<(VertexId, Integer)> {
        match v {
            VertexId::Hub => (0..self.n)
                .map(|k| (VertexId::Cycle(k), self.spoke[k].clone()))
                .collect(),
            VertexId::Cycle(k) => {
                let k = k % self.n;
                vec![
                    (VertexId::Cycle(self.left(k)), self.clockwise[self.left(k)].clone()),
                    (VertexId::Cycle(self.right(k)), self.counterclockwise[self.right(k)].clone()),
                ]
            }
        }
    }

    /// Weighted adjacency entry `a_ij` by matrix index.
    fn adjacency(&self, i: usize, j: usize) -> Integer {
        let idx_to_vertex = |i: usize| {
            if i == self.n {
                VertexId::Hub
            } else {
                VertexId::Cycle(i)
            }
        };
        self.weight(idx_to_vertex(i), idx_to_vertex(j))
    }

    /// Out-degree Laplacian `L`: diagonal holds weighted out-degrees,
    /// off-diagonal `(i, j)` holds `-a_ij`. The hub row is identically zero.
    pub fn out_laplacian(&self) -> ExactMatrix {
        let size = self.vertex_count();
        let out_degree: Vec<Integer> = (0..size)
            .map(|i| (0..size).map(|j| self.adjacency(i, j)).sum())
            .collect();
        ExactMatrix::from_fn(size, size, |i, j| {
            if i == j {
                Rational::from_integer(out_degree[i].clone())
            } else {
                Rational::from_integer(-self.adjacency(i, j))
            }
        })
    }

    /// In-degree Laplacian: diagonal holds weighted in-degrees (column sums
    /// of the adjacency matrix), off-diagonal `(i, j)` holds `-a_ij`.
    pub fn in_laplacian(&self) -> ExactMatrix {
        let size = self.vertex_count();
        let in_degree: Vec<Integer> = (0..size)
            .map(|j| (0..size).map(|i| self.adjacency(i, j)).sum())
            .collect();
        ExactMatrix::from_fn(size, size, |i, j| {
            if i == j {
                Rational::from_integer(in_degree[j].clone())
            } else {
                Rational::from_integer(-self.adjacency(i, j))
            }
        })
    }
}

/// The `(N-1) x (N-1)` system matrix for the unit-weight walk: the
/// out-degree Laplacian with the hub's and the start vertex's rows and
/// columns removed. Tridiagonal with 3 on the diagonal and -1 beside it.
pub fn reduced_matrix(n: usize) -> Result<ExactMatrix> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    Ok(ExactMatrix::from_fn(n - 1, n - 1, |r, c| {
        if r == c {
            Rational::from_integer(Integer::from(3))
        } else if r.abs_diff(c) == 1 {
            -Rational::one()
        } else {
            Rational::zero()
        }
    }))
}

/// The folded `floor(N/2)`-sized system matrix obtained from the walk
/// symmetry `h(0, l) = h(0, N-l)`.
///
/// For odd `N` the last diagonal entry drops to 2; for even `N` the last
/// subdiagonal entry becomes -2. All other diagonal entries are 3 and the
/// remaining off-diagonal band is -1.
pub fn folded_matrix(n: usize) -> Result<ExactMatrix> {
    if n < 3 {
        return Err(Error::domain(format!("cycle size must be at least 3, got {n}")));
    }
    let m = n / 2;
    let odd = n % 2 == 1;
    Ok(ExactMatrix::from_fn(m, m, |r, c| {
        if r == c {
            if odd && r == m - 1 {
                Rational::from_integer(Integer::from(2))
            } else {
                Rational::from_integer(Integer::from(3))
            }
        } else if r.abs_diff(c) == 1 {
            if !odd && r == m - 1 && c == m - 2 {
                Rational::from_integer(Integer::from(-2))
            } else {
                -Rational::one()
            }
        } else {
            Rational::zero()
        }
    }))
}
