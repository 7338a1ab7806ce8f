//! Underlying digraph of a nonnegative matrix: strong connectivity, BFS
//! distances, diameter, distance-i matrices and walk counts.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::exact::{int, Rational};
use crate::matrix::RationalMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DigraphError {
    #[error("negative entry at ({x}, {y}); the underlying digraph needs a nonnegative matrix")]
    NegativeEntry { x: usize, y: usize },
    #[error("vertex {to} is unreachable from vertex {from}")]
    Unreachable { from: usize, to: usize },
}

/// Digraph on vertices `0..order`. `arcs[x*order + y]` counts the arcs `x → y`;
/// loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Digraph {
    order: usize,
    arcs: Vec<u32>,
}

impl Digraph {
    pub fn from_multiplicities(order: usize, arcs: Vec<u32>) -> Self {
        assert_eq!(arcs.len(), order * order, "arc table must be order²");
        Self { order, arcs }
    }

    pub fn from_arcs(order: usize, arcs: &[(usize, usize)]) -> Self {
        let mut table = vec![0; order * order];
        for &(x, y) in arcs {
            table[x * order + y] += 1;
        }
        Self { order, arcs: table }
    }

    /// The directed n-cycle `x → x+1 (mod n)`.
    pub fn cycle(order: usize) -> Self {
        let arcs: Vec<_> = (0..order).map(|x| (x, (x + 1) % order)).collect();
        Self::from_arcs(order, &arcs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn multiplicity(&self, x: usize, y: usize) -> u32 {
        self.arcs[x * self.order + y]
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.multiplicity(x, y) > 0
    }

    /// Total number of arcs, loops included, counted with multiplicity.
    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(|&m| m as usize).sum()
    }

    pub fn loop_count(&self) -> usize {
        (0..self.order).filter(|&x| self.has_arc(x, x)).count()
    }

    pub fn out_neighbors(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.order).filter(move |&y| self.has_arc(x, y))
    }

    pub fn adjacency_matrix(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.order, |x, y| int(self.multiplicity(x, y) as i64))
    }

    pub fn converse(&self) -> Self {
        let n = self.order;
        Self { order: n, arcs: (0..n * n).map(|k| self.arcs[(k % n) * n + k / n]).collect() }
    }
}

/// `(A)_{xy} = 1` exactly where `(B)_{xy} > 0`.
pub fn underlying_digraph(b: &RationalMatrix) -> Result<Digraph, DigraphError> {
    let n = b.order();
    let mut arcs = Vec::with_capacity(n * n);
    for (k, v) in b.entries().iter().enumerate() {
        if v.is_negative() {
            return Err(DigraphError::NegativeEntry { x: k / n, y: k % n });
        }
        arcs.push(u32::from(!v.is_zero()));
    }
    Ok(Digraph { order: n, arcs })
}

/// Digraph of the nonzero pattern, whatever the signs.
pub(crate) fn support_digraph(b: &RationalMatrix) -> Digraph {
    let n = b.order();
    Digraph { order: n, arcs: b.entries().iter().map(|v| u32::from(!v.is_zero())).collect() }
}

/// Strongly connected components by Tarjan's algorithm (iterative), each
/// listed in discovery order of its root. Components come out in reverse
/// topological order.
pub fn strongly_connected_components(g: &Digraph) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (vertex, next neighbor to inspect)
        let mut frames = vec![(root, 0usize)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut cursor)) = frames.last_mut() {
            if let Some(w) = (*cursor..n).find(|&w| g.has_arc(v, w)) {
                *cursor = w + 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                component.reverse();
                components.push(component);
            }
        }
    }
    components
}

pub fn is_strongly_connected(g: &Digraph) -> bool {
    strongly_connected_components(g).len() == 1
}

/// Directed BFS distances from `source`; `None` marks unreachable vertices.
pub fn bfs_distances(g: &Digraph, source: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let next = dist[x].expect("queued vertices are labelled") + 1;
        for y in g.out_neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(next);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// All-pairs directed distances of a strongly connected digraph, its
/// diameter `D`, and the distance-i matrices `A_0..A_D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceStructure {
    order: usize,
    dist: Vec<usize>,
    diameter: usize,
    classes: Vec<RationalMatrix>,
}

impl DistanceStructure {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn distance(&self, x: usize, y: usize) -> usize {
        self.dist[x * self.order + y]
    }

    pub fn diameter(&self) -> usize {
        self.diameter
    }

    /// `A_i`; `(A_i)_{xy} = 1` iff `∂(x, y) = i`.
    pub fn class(&self, i: usize) -> &RationalMatrix {
        &self.classes[i]
    }

    pub fn classes(&self) -> &[RationalMatrix] {
        &self.classes
    }
}

/// BFS from every vertex. Fails on the first unreachable ordered pair.
pub fn distance_structure(g: &Digraph) -> Result<DistanceStructure, DigraphError> {
    let n = g.order();
    let mut dist = Vec::with_capacity(n * n);
    for x in 0..n {
        for (y, d) in bfs_distances(g, x).into_iter().enumerate() {
            dist.push(d.ok_or(DigraphError::Unreachable { from: x, to: y })?);
        }
    }
    let diameter = dist.iter().copied().max().unwrap_or(0);
    let classes = (0..=diameter)
        .map(|i| RationalMatrix::from_fn(n, |x, y| int(i64::from(dist[x * n + y] == i))))
        .collect();
    Ok(DistanceStructure { order: n, dist, diameter, classes })
}

/// `A^ℓ`: entry `(x, y)` counts the directed walks of length `ℓ` from `x` to `y`.
pub fn walk_count(g: &Digraph, length: usize) -> RationalMatrix {
    g.adjacency_matrix().pow(length)
}

/// Support pattern of a matrix as booleans.
pub fn support(m: &RationalMatrix) -> Vec<bool> {
    m.entries().iter().map(|v: &Rational| !v.is_zero()).collect()
}
