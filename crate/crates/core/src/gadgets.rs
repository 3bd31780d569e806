//! Small hand-built Tanner graphs with known structure, plus seeded random
//! column-weight-three graphs. Used as fixtures and for experiments.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::TannerGraph;

/// Three variables on a 6-cycle (checks 0..3); each variable's third edge
/// goes to a private degree-1 check (checks 3..6). A (3,3) trapping set.
pub fn isolated_six_cycle() -> TannerGraph {
    TannerGraph::from_edges(
        3,
        6,
        [
            (0, 0),
            (0, 2),
            (0, 3),
            (1, 0),
            (1, 1),
            (1, 4),
            (2, 1),
            (2, 2),
            (2, 5),
        ],
    )
    .expect("valid gadget")
}

/// Five variables whose induced subgraph has six degree-2 and three degree-1
/// checks at girth 8. Variables 0 and 1 share a check with each of 2, 3, 4;
/// checks 6, 7, 8 are the private odd checks of 2, 3, 4.
pub fn five_three() -> TannerGraph {
    TannerGraph::from_edges(
        5,
        9,
        [
            (0, 0),
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (2, 0),
            (2, 3),
            (2, 6),
            (3, 1),
            (3, 4),
            (3, 7),
            (4, 2),
            (4, 5),
            (4, 8),
        ],
    )
    .expect("valid gadget")
}

/// Weight-8 codeword: the variables are the corners of a cube and every cube
/// edge is a degree-2 check (12 checks). Girth 8.
pub fn eight_zero() -> TannerGraph {
    let mut edges = Vec::new();
    let mut check = 0;
    for v in 0..8usize {
        for bit in 0..3 {
            let u = v ^ (1 << bit);
            if u > v {
                edges.push((v, check));
                edges.push((u, check));
                check += 1;
            }
        }
    }
    TannerGraph::from_edges(8, 12, edges).expect("valid gadget")
}

/// Each variable joins three distinct checks drawn uniformly at random.
/// Column weight three; check degrees and girth are whatever falls out.
pub fn random_column_weight_three(n: usize, m: usize, seed: u64) -> TannerGraph {
    assert!(m >= 3, "need at least three checks");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = TannerGraph::new(n, m).expect("positive dimensions");
    for v in 0..n {
        for c in sample(&mut rng, m, 3) {
            g.add_edge(v, c).expect("distinct checks");
        }
    }
    g
}

/// Disjoint union of graphs: variables and checks of later graphs are
/// shifted past the earlier ones.
pub fn disjoint_union(parts: &[TannerGraph]) -> TannerGraph {
    let n = parts.iter().map(TannerGraph::n).sum();
    let m = parts.iter().map(TannerGraph::m).sum();
    let mut g = TannerGraph::new(n, m).expect("positive dimensions");
    let (mut dv, mut dc) = (0, 0);
    for p in parts {
        for (v, c) in p.edges() {
            g.add_edge(v + dv, c + dc).expect("disjoint copy");
        }
        dv += p.n();
        dc += p.m();
    }
    g
}
