#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::path::PathBuf;

use ldpc3::alist::read_alist;
use ldpc3::gadgets;
use ldpc3::TannerGraph;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> TannerGraph {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    read_alist(&text).expect("fixture parses")
}

/// Every fixture graph with at most 16 variables, plus seeded random ones
/// and unions of the gadgets.
pub fn small_corpus() -> Vec<(String, TannerGraph)> {
    let mut out: Vec<(String, TannerGraph)> = [
        "six_cycle.alist",
        "five_three.alist",
        "eight_zero.alist",
        "random16_0.alist",
        "random16_1.alist",
        "random16_2.alist",
    ]
    .iter()
    .map(|f| (f.to_string(), fixture(f)))
    .collect();
    for seed in 0..12 {
        let (n, m) = [(10, 6), (12, 8), (14, 10), (16, 12)][seed as usize % 4];
        out.push((
            format!("random {n}x{m} seed {seed}"),
            gadgets::random_column_weight_three(n, m, seed),
        ));
    }
    out.push((
        "six_cycle + five_three".into(),
        gadgets::disjoint_union(&[gadgets::isolated_six_cycle(), gadgets::five_three()]),
    ));
    out.push((
        "eight_zero + six_cycle".into(),
        gadgets::disjoint_union(&[gadgets::eight_zero(), gadgets::isolated_six_cycle()]),
    ));
    out
}

/// Visits every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] < n - k + i) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Shortest cycle by deleting each edge in turn and measuring the shortest
/// remaining path between its ends.
pub fn girth_oracle(g: &TannerGraph) -> Option<usize> {
    let n = g.n();
    let total = n + g.m();
    let mut best: Option<usize> = None;
    for (v, c) in g.edges() {
        let (src, dst) = (v, n + c);
        let mut dist = vec![usize::MAX; total];
        dist[src] = 0;
        let mut q = VecDeque::from([src]);
        while let Some(u) = q.pop_front() {
            let nbrs: Vec<usize> = if u < n {
                g.var_neighbors(u).iter().map(|&x| x + n).collect()
            } else {
                g.chk_neighbors(u - n).to_vec()
            };
            for w in nbrs {
                if (u, w) == (src, dst) || (u, w) == (dst, src) {
                    continue;
                }
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        if dist[dst] != usize::MAX {
            let len = dist[dst] + 1;
            best = Some(best.map_or(len, |b: usize| b.min(len)));
        }
    }
    best
}

/// Variable triples `a, b, c` joined pairwise through three distinct checks.
pub fn six_cycle_oracle(g: &TannerGraph) -> Vec<[usize; 3]> {
    let shared = |a: usize, b: usize| -> Vec<usize> {
        (0..g.m())
            .filter(|&c| g.has_edge(a, c) && g.has_edge(b, c))
            .collect()
    };
    let mut out = Vec::new();
    for_each_subset(g.n(), 3, |t| {
        let (ab, bc, ca) = (shared(t[0], t[1]), shared(t[1], t[2]), shared(t[2], t[0]));
        let hit = ab.iter().any(|&x| {
            bc.iter()
                .any(|&y| y != x && ca.iter().any(|&z| z != x && z != y))
        });
        if hit {
            out.push([t[0], t[1], t[2]]);
        }
    });
    out
}

pub fn induced_degrees(g: &TannerGraph, vars: &[usize]) -> BTreeMap<usize, usize> {
    let mut deg = BTreeMap::new();
    for c in 0..g.m() {
        let d = vars.iter().filter(|&&v| g.has_edge(v, c)).count();
        if d > 0 {
            deg.insert(c, d);
        }
    }
    deg
}

pub fn cond_a_oracle(g: &TannerGraph, vars: &[usize]) -> bool {
    let deg = induced_degrees(g, vars);
    vars.iter().all(|&v| {
        let odd = (0..g.m())
            .filter(|&c| g.has_edge(v, c) && deg[&c] % 2 == 1)
            .count();
        let even = (0..g.m())
            .filter(|&c| g.has_edge(v, c) && deg[&c].is_multiple_of(2))
            .count();
        even >= 2 && odd <= 1
    })
}

pub fn cond_b_oracle(g: &TannerGraph, vars: &[usize]) -> bool {
    let deg = induced_degrees(g, vars);
    (0..g.n()).filter(|u| !vars.contains(u)).all(|u| {
        let hits = (0..g.m())
            .filter(|&c| g.has_edge(u, c) && deg.get(&c).is_some_and(|d| d % 2 == 1))
            .count();
        hits < 2
    })
}

/// Five-subsets with three degree-1 and six degree-2 induced checks that
/// satisfy condition (a).
pub fn five_three_oracle(g: &TannerGraph) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(g.n(), 5, |s| {
        let deg = induced_degrees(g, s);
        let ones = deg.values().filter(|&&d| d == 1).count();
        let twos = deg.values().filter(|&&d| d == 2).count();
        if ones == 3 && twos == 6 && deg.len() == 9 && cond_a_oracle(g, s) {
            out.push(s.to_vec());
        }
    });
    out
}

pub fn is_codeword(g: &TannerGraph, vars: &[usize]) -> bool {
    induced_degrees(g, vars).values().all(|d| d % 2 == 0)
}

/// Members connected through shared checks.
pub fn is_connected(g: &TannerGraph, vars: &[usize]) -> bool {
    let mut seen = BTreeSet::from([vars[0]]);
    let mut stack = vec![vars[0]];
    while let Some(v) = stack.pop() {
        for &u in vars {
            if !seen.contains(&u) && g.var_neighbors(v).iter().any(|&c| g.has_edge(u, c)) {
                seen.insert(u);
                stack.push(u);
            }
        }
    }
    seen.len() == vars.len()
}

/// All weight-8 codeword supports, and the connected ones of weight 1..=7.
pub fn codeword_oracle(g: &TannerGraph) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut eight = Vec::new();
    let mut lighter = Vec::new();
    for k in 1..=8 {
        for_each_subset(g.n(), k, |s| {
            if is_codeword(g, s) {
                if k == 8 {
                    eight.push(s.to_vec());
                } else if is_connected(g, s) {
                    lighter.push(s.to_vec());
                }
            }
        });
    }
    (eight, lighter)
}
