//! Trapping-set classification and structure searches.
//!
//! A set of variables is classified by the checks its induced subgraph
//! touches: odd-degree checks `O` and even-degree checks `E`. The set is a
//! trapping set when (a) every member has at least two neighbors in `E` and
//! at most one in `O`, and (b) no outside variable touches two checks of `O`.
//!
//! Three structures decide whether a column-weight-three code corrects every
//! pattern of three errors: six-cycles (the (3,3) sets), (5,3) sets and
//! weight-8 codewords ((8,0) sets). Each has a dedicated local search here.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decoder::{DecodeError, DecoderConfig, GallagerA};
use crate::exec::Execution;
use crate::graph::{ErrorPattern, GraphError, TannerGraph};

/// Largest structure [`critical_number`] will search exhaustively.
pub const CRITICAL_NUMBER_MAX_VARS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrapError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("variable subset is empty")]
    EmptySubset,
    #[error("subset of {size} variables exceeds the exhaustive bound of {max}")]
    SubsetTooLarge { size: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgraphReport {
    pub vars: Vec<usize>,
    pub odd_checks: Vec<usize>,
    pub even_checks: Vec<usize>,
    pub cond_a: bool,
    pub cond_b: bool,
    pub is_trapping_set: bool,
}

impl SubgraphReport {
    /// `(V, C)`: set size and number of odd-degree induced checks.
    pub fn label(&self) -> (usize, usize) {
        (self.vars.len(), self.odd_checks.len())
    }
}

/// Classifies `vars` by its induced subgraph.
pub fn classify_subset(g: &TannerGraph, vars: &[usize]) -> Result<SubgraphReport, TrapError> {
    if vars.is_empty() {
        return Err(TrapError::EmptySubset);
    }
    let mut members: Vec<usize> = vars.to_vec();
    members.sort_unstable();
    members.dedup();
    let degrees = g.induced_check_degrees(&members)?;
    let (odd, even): (Vec<_>, Vec<_>) = degrees.iter().partition(|(_, &d)| d % 2 == 1);
    let odd_checks: Vec<usize> = odd.into_iter().map(|(&c, _)| c).collect();
    let even_checks: Vec<usize> = even.into_iter().map(|(&c, _)| c).collect();

    let cond_a = members.iter().all(|&v| {
        let odd_nbrs = g
            .var_neighbors(v)
            .iter()
            .filter(|&&c| degrees[&c] % 2 == 1)
            .count();
        let even_nbrs = g.var_degree(v) - odd_nbrs;
        even_nbrs >= 2 && odd_nbrs <= 1
    });

    let mut outside_hits = std::collections::BTreeMap::new();
    for &c in &odd_checks {
        for &u in g.chk_neighbors(c) {
            if members.binary_search(&u).is_err() {
                *outside_hits.entry(u).or_insert(0usize) += 1;
            }
        }
    }
    let cond_b = outside_hits.values().all(|&hits| hits < 2);

    Ok(SubgraphReport {
        vars: members,
        odd_checks,
        even_checks,
        cond_a,
        cond_b,
        is_trapping_set: cond_a && cond_b,
    })
}

/// Every variable triple lying on a 6-cycle, ascending and deduplicated.
pub fn find_three_three(g: &TannerGraph) -> Vec<[usize; 3]> {
    let mut found = BTreeSet::new();
    for v in 0..g.n() {
        let checks = g.var_neighbors(v);
        for (i, &c1) in checks.iter().enumerate() {
            for &c2 in &checks[i + 1..] {
                for &u in g.chk_neighbors(c1) {
                    if u == v {
                        continue;
                    }
                    for &w in g.chk_neighbors(c2) {
                        if w == v || w == u {
                            continue;
                        }
                        let closes = g
                            .var_neighbors(u)
                            .iter()
                            .any(|&c3| c3 != c1 && c3 != c2 && g.has_edge(w, c3));
                        if closes {
                            let mut t = [v, u, w];
                            t.sort_unstable();
                            found.insert(t);
                        }
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

/// Variable-to-variable adjacency (sharing a check), sorted, as `u32`.
fn var_graph(g: &TannerGraph) -> Vec<Vec<u32>> {
    (0..g.n())
        .map(|v| {
            g.var_var_neighbors(v)
                .into_iter()
                .map(|u| u as u32)
                .collect()
        })
        .collect()
}

fn sorted_intersect(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// Which variables may join a set grown from `root`.
#[derive(Debug, Clone, Copy)]
enum Universe {
    /// Members other than the root exceed it, so the root is the minimum.
    AboveRoot,
    /// Any variable; the set merely has to contain the root.
    AnyOther,
}

/// Incremental induced-degree bookkeeping for a growing variable set.
struct InducedState {
    members: Vec<usize>,
    in_set: Vec<bool>,
    degree: Vec<u8>,
    odd: usize,
    /// Checks with induced degree exactly 2.
    pairs: usize,
    /// Checks with induced degree 3 or more.
    heavy: usize,
}

impl InducedState {
    fn new(g: &TannerGraph) -> Self {
        InducedState {
            members: Vec::with_capacity(8),
            in_set: vec![false; g.n()],
            degree: vec![0; g.m()],
            odd: 0,
            pairs: 0,
            heavy: 0,
        }
    }

    fn push(&mut self, g: &TannerGraph, v: usize) {
        self.members.push(v);
        self.in_set[v] = true;
        for &c in g.var_neighbors(v) {
            let d = self.degree[c];
            match d {
                1 => self.pairs += 1,
                2 => {
                    self.pairs -= 1;
                    self.heavy += 1
                }
                _ => {}
            }
            self.degree[c] = d + 1;
            if d.is_multiple_of(2) {
                self.odd += 1;
            } else {
                self.odd -= 1;
            }
        }
    }

    fn pop(&mut self, g: &TannerGraph) {
        let v = self.members.pop().expect("nonempty");
        self.in_set[v] = false;
        for &c in g.var_neighbors(v) {
            let d = self.degree[c];
            match d {
                2 => self.pairs -= 1,
                3 => {
                    self.heavy -= 1;
                    self.pairs += 1
                }
                _ => {}
            }
            self.degree[c] = d - 1;
            if d % 2 == 1 {
                self.odd -= 1;
            } else {
                self.odd += 1;
            }
        }
    }
}

/// Enumerates connected 5-variable sets containing `root` (ESU growth over
/// the variable graph) and keeps those with the (5,3) degree profile.
struct FiveThreeSearch<'a> {
    g: &'a TannerGraph,
    vg: &'a [Vec<u32>],
    root: usize,
    universe: Universe,
    state: InducedState,
    /// Number of current members adjacent to each variable.
    adj_count: Vec<u16>,
    found: Vec<Vec<usize>>,
}

const FIVE: usize = 5;

impl<'a> FiveThreeSearch<'a> {
    fn allowed(&self, u: usize) -> bool {
        match self.universe {
            Universe::AboveRoot => u > self.root,
            Universe::AnyOther => u != self.root,
        }
    }

    fn within_two(&self, a: usize, b: usize) -> bool {
        self.vg[a].binary_search(&(b as u32)).is_ok() || sorted_intersect(&self.vg[a], &self.vg[b])
    }

    /// Hereditary and future-feasibility tests for the current set.
    fn viable(&self) -> bool {
        let s = self.state.members.len();
        self.state.heavy == 0 && self.state.odd <= 3 + 3 * (FIVE - s)
    }

    fn push(&mut self, v: usize) {
        self.state.push(self.g, v);
        for &u in &self.vg[v] {
            self.adj_count[u as usize] += 1;
        }
    }

    fn pop(&mut self) {
        let v = *self.state.members.last().expect("nonempty");
        for &u in &self.vg[v] {
            self.adj_count[u as usize] -= 1;
        }
        self.state.pop(self.g);
    }

    fn run(mut self) -> Vec<Vec<usize>> {
        self.push(self.root);
        let ext: Vec<usize> = self.vg[self.root]
            .iter()
            .map(|&u| u as usize)
            .filter(|&u| self.allowed(u))
            .collect();
        self.extend(ext);
        self.found
    }

    fn extend(&mut self, mut ext: Vec<usize>) {
        if self.state.members.len() == FIVE {
            let st = &self.state;
            if st.odd == 3 && st.pairs == 6 && st.heavy == 0 {
                let report = classify_subset(self.g, &st.members).expect("in range");
                if report.cond_a {
                    self.found.push(report.vars);
                }
            }
            return;
        }
        while let Some(w) = ext.pop() {
            // The structure has diameter two in the variable graph; any
            // member farther than that from w rules w out.
            if !self.state.members.iter().all(|&x| self.within_two(x, w)) {
                continue;
            }
            let mut next = ext.clone();
            for &u in &self.vg[w] {
                let u = u as usize;
                if self.allowed(u)
                    && !self.state.in_set[u]
                    && self.adj_count[u] == 0
                    && !next.contains(&u)
                {
                    next.push(u);
                }
            }
            self.push(w);
            if self.viable() {
                self.extend(next);
            }
            self.pop();
        }
    }
}

fn five_three_from_root(
    g: &TannerGraph,
    vg: &[Vec<u32>],
    root: usize,
    universe: Universe,
) -> Vec<Vec<usize>> {
    FiveThreeSearch {
        g,
        vg,
        root,
        universe,
        state: InducedState::new(g),
        adj_count: vec![0; g.n()],
        found: Vec::new(),
    }
    .run()
}

/// Five-variable sets whose induced subgraph has three degree-1 checks, six
/// degree-2 checks and satisfies condition (a). Condition (b) is reported
/// but not required. With `restrict_to_var`, only sets containing it.
///
/// Sets that are disconnected in the variable graph (possible only with
/// 4-cycles) are included.
///
/// The degree profile pins the (5,3) structure when the girth is at least 8;
/// on graphs with shorter cycles the result is the profile match only (see
/// [`five_three_is_exact`]).
pub fn find_53_structures(
    g: &TannerGraph,
    restrict_to_var: Option<usize>,
) -> Result<Vec<SubgraphReport>, TrapError> {
    find_53_structures_with(g, restrict_to_var, Execution::default())
}

pub fn find_53_structures_with(
    g: &TannerGraph,
    restrict_to_var: Option<usize>,
    exec: Execution,
) -> Result<Vec<SubgraphReport>, TrapError> {
    let vg = var_graph(g);
    let sets: Vec<Vec<usize>> = match restrict_to_var {
        Some(j) => {
            g.check_var(j)?;
            let mut sets = five_three_from_root(g, &vg, j, Universe::AnyOther);
            sets.sort();
            sets
        }
        None => exec
            .map_range(0..g.n(), |root| {
                five_three_from_root(g, &vg, root, Universe::AboveRoot)
            })
            .into_iter()
            .flatten()
            .collect(),
    };
    let mut unique: BTreeSet<Vec<usize>> = sets.into_iter().collect();
    unique.extend(
        split_five_three(g, &vg)
            .into_iter()
            .filter(|s| restrict_to_var.is_none_or(|j| s.contains(&j))),
    );
    unique.into_iter().map(|s| classify_subset(g, &s)).collect()
}

/// Profile matches that fall apart in the variable graph: a pair sharing at
/// least two checks next to a connected triple. Needs a 4-cycle, so this is
/// empty at girth 6 and above.
fn split_five_three(g: &TannerGraph, vg: &[Vec<u32>]) -> Vec<Vec<usize>> {
    let mut pairs = Vec::new();
    for (a, nb) in vg.iter().enumerate() {
        for &b in nb {
            let b = b as usize;
            let shared = g
                .var_neighbors(a)
                .iter()
                .filter(|&&c| g.has_edge(b, c))
                .count();
            if b > a && shared >= 2 {
                pairs.push([a, b]);
            }
        }
    }
    if pairs.is_empty() {
        return Vec::new();
    }
    let mut triples = BTreeSet::new();
    for (y, nb) in vg.iter().enumerate() {
        for (i, &x) in nb.iter().enumerate() {
            for &z in &nb[i + 1..] {
                let mut t = [x as usize, y, z as usize];
                t.sort_unstable();
                triples.insert(t);
            }
        }
    }
    let touches = |u: usize, p: &[usize; 2]| {
        p.iter()
            .any(|&a| a == u || vg[a].binary_search(&(u as u32)).is_ok())
    };
    let mut out = Vec::new();
    for p in &pairs {
        for t in &triples {
            if t.iter().any(|&u| touches(u, p)) {
                continue;
            }
            let mut s: Vec<usize> = p.iter().chain(t.iter()).copied().collect();
            s.sort_unstable();
            if has_five_three_profile(g, &s) {
                out.push(s);
            }
        }
    }
    out
}

fn has_five_three_profile(g: &TannerGraph, s: &[usize]) -> bool {
    let deg = g.induced_check_degrees(s).expect("in range");
    let ones = deg.values().filter(|&&d| d == 1).count();
    let twos = deg.values().filter(|&&d| d == 2).count();
    ones == 3 && twos == 6 && deg.len() == 9 && classify_subset(g, s).expect("in range").cond_a
}

/// Whether a (5,3) profile match identifies the structure exactly.
pub fn five_three_is_exact(g: &TannerGraph) -> bool {
    g.girth_below(8).is_none()
}

/// Result of [`find_80_codewords`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodewordSearch {
    /// Supports of all weight-8 codewords found, ascending.
    pub weight8: Vec<Vec<usize>>,
    /// Codeword supports of weight below 8 that are connected through shared
    /// checks.
    pub lighter: Vec<Vec<usize>>,
    /// False when some root hit the expansion budget.
    pub exhaustive: bool,
    /// Total search-tree nodes expanded.
    pub expansions: u64,
}

pub const CODEWORD_WEIGHT: usize = 8;

/// Codeword growth from a root: always branch on the lowest-index odd check
/// of the current set, since every codeword containing the set must put one
/// more variable on it.
struct CodewordGrowth<'a> {
    g: &'a TannerGraph,
    root: usize,
    state: InducedState,
    budget: u64,
    expansions: u64,
    exhausted: bool,
    found: BTreeSet<Vec<usize>>,
}

impl<'a> CodewordGrowth<'a> {
    fn grow(&mut self) {
        if self.expansions >= self.budget {
            self.exhausted = true;
            return;
        }
        self.expansions += 1;
        let s = self.state.members.len();
        if self.state.odd == 0 {
            let mut support = self.state.members.clone();
            support.sort_unstable();
            self.found.insert(support);
            return;
        }
        if s == CODEWORD_WEIGHT || self.state.odd > 3 * (CODEWORD_WEIGHT - s) {
            return;
        }
        let pivot = self
            .state
            .members
            .iter()
            .flat_map(|&v| self.g.var_neighbors(v).iter().copied())
            .filter(|&c| self.state.degree[c] % 2 == 1)
            .min()
            .expect("odd check exists");
        for &u in self.g.chk_neighbors(pivot) {
            if u <= self.root || self.state.in_set[u] {
                continue;
            }
            self.state.push(self.g, u);
            self.grow();
            self.state.pop(self.g);
            if self.exhausted {
                return;
            }
        }
    }
}

/// Codewords of weight at most 8 whose minimum variable is `root` and that
/// are reachable by odd-check growth (the connected ones).
fn codewords_from_root(g: &TannerGraph, root: usize, budget: u64) -> (Vec<Vec<usize>>, u64, bool) {
    let mut growth = CodewordGrowth {
        g,
        root,
        state: InducedState::new(g),
        budget,
        expansions: 0,
        exhausted: false,
        found: BTreeSet::new(),
    };
    growth.state.push(g, root);
    growth.grow();
    (
        growth.found.into_iter().collect(),
        growth.expansions,
        !growth.exhausted,
    )
}

/// Weight-8 codewords by local growth, `budget` search nodes per root
/// variable (`u64::MAX` for an exhaustive search).
///
/// Every codeword support is a disjoint union of codewords that contain no
/// smaller codeword. Growth finds all of those up to weight 8, and disjoint
/// unions of the lighter ones supply the rest.
pub fn find_80_codewords(g: &TannerGraph, budget: u64) -> CodewordSearch {
    find_80_codewords_with(g, budget, Execution::default())
}

pub fn find_80_codewords_with(g: &TannerGraph, budget: u64, exec: Execution) -> CodewordSearch {
    let per_root = exec.map_range(0..g.n(), |root| codewords_from_root(g, root, budget));
    let mut connected = BTreeSet::new();
    let mut expansions = 0;
    let mut exhaustive = true;
    for (sets, count, complete) in per_root {
        connected.extend(sets);
        expansions += count;
        exhaustive &= complete;
    }
    let parts: Vec<Vec<usize>> = connected
        .iter()
        .filter(|s| s.len() < CODEWORD_WEIGHT)
        .cloned()
        .collect();
    let mut unions = connected;
    combine_disjoint(&parts, 0, &mut Vec::new(), 0, &mut unions);
    let (weight8, lighter): (Vec<Vec<usize>>, Vec<Vec<usize>>) =
        unions.into_iter().partition(|s| s.len() == CODEWORD_WEIGHT);
    let lighter = lighter
        .into_iter()
        .filter(|s| check_connected(g, s))
        .collect();
    CodewordSearch {
        weight8,
        lighter,
        exhaustive,
        expansions,
    }
}

/// Whether the members of `s` form one piece through shared checks.
fn check_connected(g: &TannerGraph, s: &[usize]) -> bool {
    let mut seen = vec![false; s.len()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..s.len() {
            if !seen[j] && g.var_neighbors(s[i]).iter().any(|&c| g.has_edge(s[j], c)) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    seen.iter().all(|&x| x)
}

fn combine_disjoint(
    parts: &[Vec<usize>],
    start: usize,
    chosen: &mut Vec<usize>,
    weight: usize,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if weight > 0 {
        let mut s = chosen.clone();
        s.sort_unstable();
        out.insert(s);
    }
    for (i, p) in parts.iter().enumerate().skip(start) {
        if weight + p.len() > CODEWORD_WEIGHT || p.iter().any(|v| chosen.contains(v)) {
            continue;
        }
        let before = chosen.len();
        chosen.extend_from_slice(p);
        combine_disjoint(parts, i + 1, chosen, weight + p.len(), out);
        chosen.truncate(before);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalNumberResult {
    /// Smallest failing subset size, `None` if every subset decodes.
    pub value: Option<usize>,
    pub witness: Option<ErrorPattern>,
    pub search_bound: usize,
}

/// Smallest `k` such that some `k`-subset of `vars`, as the error pattern,
/// is not decoded to the all-zero word within the iteration limit.
pub fn critical_number(
    g: &TannerGraph,
    vars: &[usize],
    cfg: &DecoderConfig,
) -> Result<CriticalNumberResult, TrapError> {
    let mut members = vars.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(TrapError::EmptySubset);
    }
    if members.len() > CRITICAL_NUMBER_MAX_VARS {
        return Err(TrapError::SubsetTooLarge {
            size: members.len(),
            max: CRITICAL_NUMBER_MAX_VARS,
        });
    }
    for &v in &members {
        g.check_var(v)?;
    }
    let mut decoder = GallagerA::new(g, *cfg)?;
    let size = members.len();
    for k in 1..=size {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let support: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
            if decoder.run(&support)?.is_frame_error() {
                return Ok(CriticalNumberResult {
                    value: Some(k),
                    witness: Some(ErrorPattern::new(g.n(), support)?),
                    search_bound: size,
                });
            }
            if !next_combination(&mut idx, size) {
                break;
            }
        }
    }
    Ok(CriticalNumberResult {
        value: None,
        witness: None,
        search_bound: size,
    })
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
