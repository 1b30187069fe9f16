//! Standard graph families with unit edge weights.

use std::collections::HashSet;

use itertools::Itertools;
use rand::Rng;

use crate::convexity::VertexSet;
use crate::graph::{Graph, Vertex};
use crate::scalar::Scalar;

fn grid_id(i: usize, j: usize) -> String {
    format!("({i},{j})")
}

/// `C_n` on vertices `0..n`, with `i ~ i+1 mod n`.
pub fn cycle<S: Scalar>(n: usize) -> Graph<S> {
    let mut g = Graph::with_vertices(n);
    for i in 0..n {
        let j = (i + 1) % n;
        if i != j && !g.has_edge(Vertex(i), Vertex(j)) {
            g.add_edge(Vertex(i), Vertex(j), S::one()).expect("fresh edge");
        }
    }
    g
}

/// `P_n` on vertices `0..n`.
pub fn path<S: Scalar>(n: usize) -> Graph<S> {
    let mut g = Graph::with_vertices(n);
    for i in 1..n {
        g.add_edge(Vertex(i - 1), Vertex(i), S::one()).expect("fresh edge");
    }
    g
}

/// `K_n` on vertices `0..n`.
pub fn complete<S: Scalar>(n: usize) -> Graph<S> {
    let mut g = Graph::with_vertices(n);
    for (i, j) in (0..n).tuple_combinations() {
        g.add_edge(Vertex(i), Vertex(j), S::one()).expect("fresh edge");
    }
    g
}

fn planar_window<S: Scalar>(w: usize, h: usize, steps: &[(isize, isize)]) -> Graph<S> {
    let mut g = Graph::new();
    for i in 0..w {
        for j in 0..h {
            g.ensure_vertex(&grid_id(i, j));
        }
    }
    for i in 0..w {
        for j in 0..h {
            for &(di, dj) in steps {
                let (Some(a), Some(b)) = (i.checked_add_signed(di), j.checked_add_signed(dj)) else {
                    continue;
                };
                if a < w && b < h {
                    g.add_edge(Vertex(i * h + j), Vertex(a * h + b), S::one())
                        .expect("fresh edge");
                }
            }
        }
    }
    g
}

/// `w × h` window of the square lattice; vertices `(i,j)`.
pub fn grid<S: Scalar>(w: usize, h: usize) -> Graph<S> {
    planar_window(w, h, &[(1, 0), (0, 1)])
}

/// `w × h` king graph (square lattice plus diagonals), unit weights.
pub fn king<S: Scalar>(w: usize, h: usize) -> Graph<S> {
    planar_window(w, h, &[(1, 0), (0, 1), (1, 1), (1, -1)])
}

/// `w × h` parallelogram window of the triangular tiling, in axial
/// coordinates: `(i,j)` is adjacent to `(i±1,j)`, `(i,j±1)`, `(i+1,j−1)`
/// and `(i−1,j+1)`. Returns the graph and its interior (degree-6) vertices.
pub fn triangular_tiling<S: Scalar>(w: usize, h: usize) -> (Graph<S>, VertexSet) {
    let g: Graph<S> = planar_window(w, h, &[(1, 0), (0, 1), (1, -1)]);
    let interior = VertexSet::from_vertices(g.len(), g.vertices().filter(|&v| g.degree(v) == 6));
    (g, interior)
}

/// Graph on `0..n` whose edges are the one-bits of `mask` over the pairs
/// `(i, j)`, `i < j`, in lexicographic order.
pub fn from_edge_mask<S: Scalar>(n: usize, mask: u64) -> Graph<S> {
    let mut g = Graph::with_vertices(n);
    for (k, (i, j)) in (0..n).tuple_combinations().enumerate() {
        if mask >> k & 1 == 1 {
            g.add_edge(Vertex(i), Vertex(j), S::one()).expect("fresh edge");
        }
    }
    g
}

/// Connected Erdős–Rényi graph `G(n, p)`, resampled until connected.
pub fn random_connected<S: Scalar, R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Graph<S> {
    loop {
        let mut g = Graph::with_vertices(n);
        for (i, j) in (0..n).tuple_combinations() {
            if rng.gen_bool(p) {
                g.add_edge(Vertex(i), Vertex(j), S::one()).expect("fresh edge");
            }
        }
        if g.is_connected() {
            return g;
        }
    }
}

/// Canonical edge mask: the least mask over all relabelings that list
/// vertices by nondecreasing degree. Isomorphic graphs get equal keys.
fn canonical_mask(n: usize, adj: &[u32]) -> u64 {
    let pair_index = |i: usize, j: usize| -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    };
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| adj[v].count_ones());
    let blocks: Vec<Vec<usize>> = by_degree
        .iter()
        .copied()
        .chunk_by(|&v| adj[v].count_ones())
        .into_iter()
        .map(|(_, block)| block.collect())
        .collect();
    let orderings = blocks
        .iter()
        .map(|b| b.iter().copied().permutations(b.len()).collect::<Vec<_>>())
        .multi_cartesian_product();
    let mut best = u64::MAX;
    let mut pos = vec![0usize; n];
    for choice in orderings {
        for (new, &old) in choice.iter().flatten().enumerate() {
            pos[old] = new;
        }
        let mut mask = 0u64;
        for i in 0..n {
            for j in i + 1..n {
                if adj[i] >> j & 1 == 1 {
                    mask |= 1 << pair_index(pos[i], pos[j]);
                }
            }
        }
        best = best.min(mask);
    }
    best
}

/// Edge masks (see [`from_edge_mask`]) of all connected graphs on `n`
/// vertices, one per isomorphism class.
pub fn connected_graph_masks(n: usize) -> Vec<u64> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    if n <= 1 {
        return vec![0];
    }
    let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0..1u64 << pairs.len() {
        let mut adj = vec![0u32; n];
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
        let mut reach = 1u32;
        loop {
            let next = (0..n)
                .filter(|&v| reach >> v & 1 == 1)
                .fold(reach, |acc, v| acc | adj[v]);
            if next == reach {
                break;
            }
            reach = next;
        }
        if reach.count_ones() as usize != n {
            continue;
        }
        if seen.insert(canonical_mask(n, &adj)) {
            out.push(mask);
        }
    }
    out
}

/// All connected graphs on `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs<S: Scalar>(max_n: usize) -> Vec<Graph<S>> {
    (1..=max_n)
        .flat_map(|n| {
            connected_graph_masks(n)
                .into_iter()
                .map(move |m| from_edge_mask(n, m))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        // OEIS A001349
        let counts: Vec<usize> = (1..=6).map(|n| connected_graph_masks(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn grid_center_degree() {
        let g: Graph<i64> = grid(3, 3);
        assert_eq!(g.degree(g.vertex("(1,1)").unwrap()), 4);
        assert_eq!(g.edge_count(), 12);
    }

    #[test]
    fn king_center_degree() {
        let g: Graph<i64> = king(3, 3);
        assert_eq!(g.degree(g.vertex("(1,1)").unwrap()), 8);
    }

    #[test]
    fn triangular_interior_is_in_triangle() {
        let (g, interior) = triangular_tiling::<i64>(4, 4);
        assert_eq!(interior.len(), 4);
        assert!(interior.iter().all(|v| g.in_triangle(v)));
    }

    #[test]
    fn small_cycles() {
        let c4: Graph<i64> = cycle(4);
        assert_eq!(c4.edge_count(), 4);
        assert!(c4.vertices().all(|v| c4.degree(v) == 2));
        let p2: Graph<i64> = path(2);
        assert_eq!(p2.edge_count(), 1);
    }
}
