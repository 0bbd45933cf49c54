//! Canned complexes: small fixtures used by tests and the command line.

use crate::complex::SimplicialPair;

/// Three vertices, two edges: 0–1–2.
pub fn path_graph() -> SimplicialPair {
    SimplicialPair::new(&[vec![0, 1], vec![1, 2]], &[]).unwrap()
}

/// The boundary of a hexagon: six vertices, six edges.
pub fn hexagon() -> SimplicialPair {
    let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
    SimplicialPair::new(&edges, &[]).unwrap()
}

/// Cone over the hexagon: a triangulated disk with center vertex 0.
pub fn triangulated_disk() -> SimplicialPair {
    let maximal: Vec<Vec<usize>> = (0..6)
        .map(|i| vec![0, 1 + i, 1 + (i + 1) % 6])
        .collect();
    SimplicialPair::new(&maximal, &[]).unwrap()
}

/// The tetrahedron boundary (a triangulated 2-sphere).
pub fn sphere_complex() -> SimplicialPair {
    SimplicialPair::new(
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        &[],
    )
    .unwrap()
}

/// The product of the tetrahedron boundary with an interval, triangulated by
/// the ordered prism rule; the subcomplex is the two boundary spheres.
/// Vertex v on the bottom pairs with v + 4 on the top.
pub fn prism_complex() -> SimplicialPair {
    let base = [
        [0usize, 1, 2],
        [0, 1, 3],
        [0, 2, 3],
        [1, 2, 3],
    ];
    let mut maximal: Vec<Vec<usize>> = Vec::new();
    for tri in base {
        let [a, b, c] = tri;
        let (a1, b1, c1) = (a + 4, b + 4, c + 4);
        // Ordered prism decomposition: compatible across shared faces.
        maximal.push(vec![a, b, c, c1]);
        maximal.push(vec![a, b, b1, c1]);
        maximal.push(vec![a, a1, b1, c1]);
    }
    let mut rel: Vec<Vec<usize>> = Vec::new();
    for tri in base {
        rel.push(tri.to_vec());
        rel.push(tri.iter().map(|v| v + 4).collect());
    }
    SimplicialPair::new(&maximal, &rel).unwrap()
}
