//! Bipartite Tanner graph of a binary LDPC code.
//!
//! Variable nodes are indexed `0..n`, check nodes `0..m`. Both adjacency
//! views are stored and kept sorted ascending, so every set-valued query
//! returns indices in ascending order.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or querying a [`TannerGraph`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph dimensions must be positive (n = {n}, m = {m})")]
    EmptyDimension { n: usize, m: usize },
    #[error("variable index {index} out of range (n = {n})")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("check index {index} out of range (m = {m})")]
    CheckOutOfRange { index: usize, m: usize },
    #[error("duplicate edge (v{var}, c{check})")]
    DuplicateEdge { var: usize, check: usize },
    #[error("no edge (v{var}, c{check})")]
    MissingEdge { var: usize, check: usize },
    #[error("word length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("word is not a codeword (syndrome weight {syndrome_weight})")]
    NotACodeword { syndrome_weight: usize },
    #[error("bit value {0} is not binary")]
    NonBinary(u8),
}

/// Bipartite variable/check adjacency with sorted neighbor lists.
#[derive(Clone, PartialEq, Eq)]
pub struct TannerGraph {
    var_adj: Vec<Vec<usize>>,
    chk_adj: Vec<Vec<usize>>,
}

impl fmt::Debug for TannerGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TannerGraph")
            .field("n", &self.n())
            .field("m", &self.m())
            .field("edges", &self.num_edges())
            .finish()
    }
}

impl TannerGraph {
    /// Edgeless graph with `n` variable and `m` check nodes.
    pub fn new(n: usize, m: usize) -> Result<Self, GraphError> {
        if n == 0 || m == 0 {
            return Err(GraphError::EmptyDimension { n, m });
        }
        Ok(TannerGraph {
            var_adj: vec![Vec::new(); n],
            chk_adj: vec![Vec::new(); m],
        })
    }

    /// Builds a graph from `(variable, check)` pairs.
    pub fn from_edges<I>(n: usize, m: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = TannerGraph::new(n, m)?;
        for (v, c) in edges {
            g.add_edge(v, c)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.var_adj.len()
    }

    pub fn m(&self) -> usize {
        self.chk_adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.var_adj.iter().map(Vec::len).sum()
    }

    pub fn var_neighbors(&self, v: usize) -> &[usize] {
        &self.var_adj[v]
    }

    pub fn chk_neighbors(&self, c: usize) -> &[usize] {
        &self.chk_adj[c]
    }

    pub fn var_degree(&self, v: usize) -> usize {
        self.var_adj[v].len()
    }

    pub fn chk_degree(&self, c: usize) -> usize {
        self.chk_adj[c].len()
    }

    pub fn has_edge(&self, v: usize, c: usize) -> bool {
        v < self.n() && self.var_adj[v].binary_search(&c).is_ok()
    }

    /// All edges as `(variable, check)` in variable-major ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.var_adj
            .iter()
            .enumerate()
            .flat_map(|(v, cs)| cs.iter().map(move |&c| (v, c)))
    }

    /// True when every variable node has degree exactly `gamma`.
    pub fn is_column_regular(&self, gamma: usize) -> bool {
        self.var_adj.iter().all(|cs| cs.len() == gamma)
    }

    pub fn max_check_degree(&self) -> usize {
        self.chk_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_var_degree(&self) -> usize {
        self.var_adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Histogram of check degrees: `(degree, count)` ascending by degree.
    pub fn check_degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = BTreeMap::new();
        for cs in &self.chk_adj {
            *hist.entry(cs.len()).or_insert(0usize) += 1;
        }
        hist.into_iter().collect()
    }

    pub fn check_var(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VariableOutOfRange {
                index: v,
                n: self.n(),
            })
        }
    }

    pub fn check_chk(&self, c: usize) -> Result<(), GraphError> {
        if c < self.m() {
            Ok(())
        } else {
            Err(GraphError::CheckOutOfRange {
                index: c,
                m: self.m(),
            })
        }
    }

    pub fn add_edge(&mut self, v: usize, c: usize) -> Result<(), GraphError> {
        self.check_var(v)?;
        self.check_chk(c)?;
        match self.var_adj[v].binary_search(&c) {
            Ok(_) => Err(GraphError::DuplicateEdge { var: v, check: c }),
            Err(pos) => {
                self.var_adj[v].insert(pos, c);
                let cpos = self.chk_adj[c].binary_search(&v).unwrap_err();
                self.chk_adj[c].insert(cpos, v);
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, v: usize, c: usize) -> Result<(), GraphError> {
        self.check_var(v)?;
        self.check_chk(c)?;
        match self.var_adj[v].binary_search(&c) {
            Err(_) => Err(GraphError::MissingEdge { var: v, check: c }),
            Ok(pos) => {
                self.var_adj[v].remove(pos);
                let cpos = self.chk_adj[c]
                    .binary_search(&v)
                    .expect("adjacency views agree");
                self.chk_adj[c].remove(cpos);
                Ok(())
            }
        }
    }

    /// Length of the shortest cycle, or `None` when the graph is a forest.
    ///
    /// BFS from every variable node with parent exclusion; every cycle passes
    /// through a variable node, so those roots suffice.
    pub fn girth(&self) -> Option<usize> {
        self.girth_below(usize::MAX)
    }

    /// Shortest cycle length if it is strictly less than `limit`.
    pub fn girth_below(&self, limit: usize) -> Option<usize> {
        let n = self.n();
        let total = n + self.m();
        let mut best = limit;
        let mut dist = vec![usize::MAX; total];
        let mut parent = vec![usize::MAX; total];
        let mut touched = Vec::new();
        let mut queue = VecDeque::new();
        for root in 0..n {
            for &t in &touched {
                dist[t] = usize::MAX;
                parent[t] = usize::MAX;
            }
            touched.clear();
            queue.clear();
            dist[root] = 0;
            touched.push(root);
            queue.push_back(root);
            'bfs: while let Some(u) = queue.pop_front() {
                // Any cycle closed from here on is at least 2*dist[u] long.
                if 2 * dist[u] >= best {
                    break;
                }
                let (nbrs, offset) = if u < n {
                    (&self.var_adj[u][..], n)
                } else {
                    (&self.chk_adj[u - n][..], 0)
                };
                for &x in nbrs {
                    let w = x + offset;
                    if w == parent[u] {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        touched.push(w);
                        queue.push_back(w);
                    } else {
                        let len = dist[u] + dist[w] + 1;
                        if len < best {
                            best = len;
                            if best <= 4 {
                                break 'bfs;
                            }
                        }
                    }
                }
            }
        }
        (best < limit).then_some(best)
    }

    /// Edge count from `vars` into each adjacent check. Checks with no edge
    /// into `vars` are omitted.
    pub fn induced_check_degrees(
        &self,
        vars: &[usize],
    ) -> Result<BTreeMap<usize, usize>, GraphError> {
        let mut degrees = BTreeMap::new();
        for &v in vars {
            self.check_var(v)?;
            for &c in &self.var_adj[v] {
                *degrees.entry(c).or_insert(0) += 1;
            }
        }
        Ok(degrees)
    }

    /// Per-check modulo-2 sums of `word`.
    pub fn syndrome(&self, word: &[u8]) -> Result<Vec<u8>, GraphError> {
        self.check_word(word)?;
        Ok(self
            .chk_adj
            .iter()
            .map(|vs| vs.iter().fold(0u8, |acc, &v| acc ^ (word[v] & 1)))
            .collect())
    }

    pub fn is_codeword(&self, word: &[u8]) -> Result<bool, GraphError> {
        self.check_word(word)?;
        Ok(self
            .chk_adj
            .iter()
            .all(|vs| vs.iter().fold(0u8, |acc, &v| acc ^ word[v]) == 0))
    }

    /// Zero-syndrome test for the word whose ones are exactly `support`.
    pub fn support_is_codeword(&self, support: &[usize]) -> Result<bool, GraphError> {
        Ok(self
            .induced_check_degrees(support)?
            .values()
            .all(|d| d % 2 == 0))
    }

    fn check_word(&self, word: &[u8]) -> Result<(), GraphError> {
        if word.len() != self.n() {
            return Err(GraphError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        if let Some(&b) = word.iter().find(|&&b| b > 1) {
            return Err(GraphError::NonBinary(b));
        }
        Ok(())
    }

    /// Variables sharing at least one check with `v`, ascending, excluding `v`.
    pub fn var_var_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.var_adj[v]
            .iter()
            .flat_map(|&c| self.chk_adj[c].iter().copied())
            .filter(|&u| u != v)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Diagnostic edge list, one `v c` pair per line (0-based).
    pub fn to_edge_list(&self) -> String {
        let mut s = format!("# n={} m={}\n", self.n(), self.m());
        for (v, c) in self.edges() {
            s.push_str(&format!("{v} {c}\n"));
        }
        s
    }
}

/// Length-`n` binary vector that satisfies every parity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword(Vec<u8>);

impl Codeword {
    pub fn new(g: &TannerGraph, bits: Vec<u8>) -> Result<Self, GraphError> {
        let syndrome = g.syndrome(&bits)?;
        let weight = syndrome.iter().filter(|&&b| b == 1).count();
        if weight != 0 {
            return Err(GraphError::NotACodeword {
                syndrome_weight: weight,
            });
        }
        Ok(Codeword(bits))
    }

    pub fn zero(n: usize) -> Self {
        Codeword(vec![0; n])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b == 1).count()
    }
}

/// Set of variable positions in error, kept sorted and distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>")]
pub struct ErrorPattern(Vec<usize>);

impl From<Vec<usize>> for ErrorPattern {
    fn from(mut support: Vec<usize>) -> Self {
        support.sort_unstable();
        support.dedup();
        ErrorPattern(support)
    }
}

impl ErrorPattern {
    pub fn new(n: usize, mut support: Vec<usize>) -> Result<Self, GraphError> {
        support.sort_unstable();
        support.dedup();
        if let Some(&bad) = support.iter().find(|&&i| i >= n) {
            return Err(GraphError::VariableOutOfRange { index: bad, n });
        }
        Ok(ErrorPattern(support))
    }

    pub fn empty() -> Self {
        ErrorPattern(Vec::new())
    }

    pub fn from_word(word: &[u8]) -> Self {
        ErrorPattern(
            word.iter()
                .enumerate()
                .filter(|(_, &b)| b != 0)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn support(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn to_word(&self, n: usize) -> Vec<u8> {
        let mut w = vec![0u8; n];
        for &i in &self.0 {
            w[i] = 1;
        }
        w
    }
}

impl fmt::Display for ErrorPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn six_cycle() -> TannerGraph {
        // v0-c0-v1-c1-v2-c2-v0
        TannerGraph::from_edges(3, 3, [(0, 0), (1, 0), (1, 1), (2, 1), (2, 2), (0, 2)]).unwrap()
    }

    #[test]
    fn new_graph_dimensions() {
        let g = TannerGraph::new(4, 2).unwrap();
        assert_eq!((g.n(), g.m(), g.num_edges()), (4, 2, 0));
        let g = TannerGraph::new(504, 252).unwrap();
        assert_eq!((g.n(), g.m()), (504, 252));
        assert!(TannerGraph::new(1, 1).is_ok());
        assert_eq!(
            TannerGraph::new(0, 3),
            Err(GraphError::EmptyDimension { n: 0, m: 3 })
        );
        assert!(TannerGraph::new(3, 0).is_err());
    }

    #[test]
    fn add_edge_updates_both_views() {
        let mut g = TannerGraph::new(4, 2).unwrap();
        g.add_edge(0, 0).unwrap();
        assert_eq!(g.var_degree(0), 1);
        assert_eq!(g.chk_degree(0), 1);
        assert_eq!(
            g.add_edge(0, 0),
            Err(GraphError::DuplicateEdge { var: 0, check: 0 })
        );
        assert!(matches!(
            g.add_edge(4, 0),
            Err(GraphError::VariableOutOfRange { .. })
        ));
        assert!(matches!(
            g.add_edge(0, 2),
            Err(GraphError::CheckOutOfRange { .. })
        ));
    }

    #[test]
    fn neighbor_lists_stay_sorted() {
        let g = TannerGraph::from_edges(4, 4, [(3, 2), (0, 2), (2, 2), (3, 0), (3, 3)]).unwrap();
        assert_eq!(g.chk_neighbors(2), &[0, 2, 3]);
        assert_eq!(g.var_neighbors(3), &[0, 2, 3]);
    }

    #[test]
    fn remove_edge_roundtrip() {
        let mut g = six_cycle();
        g.remove_edge(1, 1).unwrap();
        assert_eq!(g.num_edges(), 5);
        assert_eq!(g.girth(), None);
        assert_eq!(
            g.remove_edge(1, 1),
            Err(GraphError::MissingEdge { var: 1, check: 1 })
        );
        g.add_edge(1, 1).unwrap();
        assert_eq!(g, six_cycle());
    }

    #[test]
    fn girth_of_six_cycle_and_tree() {
        assert_eq!(six_cycle().girth(), Some(6));
        let tree = TannerGraph::from_edges(3, 2, [(0, 0), (1, 0), (1, 1), (2, 1)]).unwrap();
        assert_eq!(tree.girth(), None);
        let four = TannerGraph::from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(four.girth(), Some(4));
        assert_eq!(six_cycle().girth_below(6), None);
    }

    #[test]
    fn induced_degrees() {
        let g = six_cycle();
        assert!(g.induced_check_degrees(&[]).unwrap().is_empty());
        let d = g.induced_check_degrees(&[0, 1, 2]).unwrap();
        assert_eq!(
            d.into_iter().collect::<Vec<_>>(),
            vec![(0, 2), (1, 2), (2, 2)]
        );
        let g = TannerGraph::from_edges(1, 3, [(0, 0), (0, 1), (0, 2)]).unwrap();
        let d = g.induced_check_degrees(&[0]).unwrap();
        assert_eq!(d.values().copied().collect::<Vec<_>>(), vec![1, 1, 1]);
        assert!(g.induced_check_degrees(&[1]).is_err());
    }

    #[test]
    fn syndrome_basics() {
        let g = TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (0, 2), (1, 0)]).unwrap();
        assert_eq!(g.syndrome(&[0, 0]).unwrap(), vec![0, 0, 0]);
        assert!(g.is_codeword(&[0, 0]).unwrap());
        assert_eq!(
            g.syndrome(&[1, 0])
                .unwrap()
                .iter()
                .filter(|&&b| b == 1)
                .count(),
            3
        );
        assert!(!g.is_codeword(&[1, 0]).unwrap());
        assert!(matches!(
            g.syndrome(&[0]),
            Err(GraphError::LengthMismatch { .. })
        ));
        assert!(matches!(g.syndrome(&[2, 0]), Err(GraphError::NonBinary(2))));
    }

    #[test]
    fn error_pattern_normalizes() {
        let p = ErrorPattern::new(10, vec![5, 1, 5]).unwrap();
        assert_eq!(p.support(), &[1, 5]);
        assert_eq!(p.to_word(6), vec![0, 1, 0, 0, 0, 1]);
        assert_eq!(ErrorPattern::from_word(&p.to_word(6)), p);
        assert!(ErrorPattern::new(3, vec![3]).is_err());
    }

    #[test]
    fn codeword_rejects_nonzero_syndrome() {
        let g = six_cycle();
        assert!(Codeword::new(&g, vec![1, 1, 1]).is_ok());
        assert!(matches!(
            Codeword::new(&g, vec![1, 0, 0]),
            Err(GraphError::NotACodeword { syndrome_weight: 2 })
        ));
    }
}
