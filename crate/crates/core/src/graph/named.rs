//! Small named graphs on identifiers `1..=n`.

use super::Graph;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges_unchecked(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least three vertices");
    let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    Graph::from_edges_unchecked(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            edges.push((a, b));
        }
    }
    Graph::from_edges_unchecked(n, &edges)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..a {
        for j in 0..b {
            edges.push((i, a + j));
        }
    }
    Graph::from_edges_unchecked(a + b, &edges)
}

/// Star with one center (identifier 1) and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges_unchecked(leaves + 1, &edges)
}

/// `width × height` grid; vertex `(x, y)` has identifier `y * width + x + 1`.
pub fn grid(width: usize, height: usize) -> Graph {
    let mut edges = Vec::new();
    for y in 0..height {
        for x in 0..width {
            let v = y * width + x;
            if x + 1 < width {
                edges.push((v, v + 1));
            }
            if y + 1 < height {
                edges.push((v, v + width));
            }
        }
    }
    Graph::from_edges_unchecked(width * height, &edges)
}

/// Wheel with `rim` rim vertices and a hub (identifier `rim + 1`).
pub fn wheel(rim: usize) -> Graph {
    let mut edges: Vec<_> = (1..rim).map(|i| (i - 1, i)).collect();
    edges.push((0, rim - 1));
    edges.extend((0..rim).map(|i| (i, rim)));
    Graph::from_edges_unchecked(rim + 1, &edges)
}

pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges_unchecked(10, &edges)
}

/// `count` vertex-disjoint triangles.
pub fn disjoint_triangles(count: usize) -> Graph {
    let mut edges = Vec::new();
    for t in 0..count {
        let b = 3 * t;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
    }
    Graph::from_edges_unchecked(3 * count, &edges)
}
