//! Modified progressive edge growth.
//!
//! Edges are placed one variable at a time. The first edge of a variable
//! goes to the least-loaded check; every later edge goes to the least-loaded
//! check outside the variable's depth-`tree_depth` neighborhood, skipping
//! checks whose edge would complete a (5,3) structure. With the default
//! depth of 6 every new cycle has length at least 8. Weight-8 codewords are
//! removed afterwards by rewiring single edges ([`repair_weight8`]).

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::Execution;
use crate::graph::{GraphError, TannerGraph};
use crate::trapping::find_80_codewords_with;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub max_check_degree: usize,
    /// BFS depth in edges; checks within it are never candidates.
    pub tree_depth: usize,
    pub rng_seed: u64,
    /// Process variables in a seed-dependent order instead of `0..n`, and
    /// break degree ties between checks at random instead of by index.
    pub randomize: bool,
    /// Reject candidates that complete a (5,3) structure. Turning this off
    /// gives plain girth-8 PEG.
    pub avoid_five_three: bool,
    pub repair_attempts: usize,
    /// When a variable has no admissible check, force it onto the check
    /// with the fewest conflicting members and evict those members, at
    /// most this many evictions in total. Zero stops at the first dead end.
    pub max_evictions: usize,
}

impl ConstructionParams {
    pub fn new(n: usize, m: usize) -> Self {
        ConstructionParams {
            n,
            m,
            gamma: 3,
            max_check_degree: 7,
            tree_depth: 6,
            rng_seed: 0,
            randomize: false,
            avoid_five_three: true,
            repair_attempts: 100,
            max_evictions: 20_000,
        }
    }

    pub fn validate(&self) -> Result<(), ConstructError> {
        if self.n == 0 || self.m == 0 || self.gamma == 0 || self.max_check_degree == 0 {
            return Err(ConstructError::Infeasible(format!(
                "n, m, gamma and max_check_degree must be positive (n={}, m={}, gamma={}, max degree={})",
                self.n, self.m, self.gamma, self.max_check_degree
            )));
        }
        if self.gamma > self.m {
            return Err(ConstructError::Infeasible(format!(
                "gamma {} exceeds the number of checks {}",
                self.gamma, self.m
            )));
        }
        if self.n * self.gamma > self.m * self.max_check_degree {
            return Err(ConstructError::Infeasible(format!(
                "{} edges do not fit into {} checks of degree at most {}",
                self.n * self.gamma,
                self.m,
                self.max_check_degree
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RejectReason {
    FiveThree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rejection {
    pub check: usize,
    pub reason: RejectReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum LogRecord {
    /// Growth step: the `edge`-th edge of `var` went to `check`.
    Edge {
        var: usize,
        edge: usize,
        check: usize,
        candidates: usize,
        rejections: Vec<Rejection>,
    },
    /// Dead end: `var` joined `check` after the members `evicted` left it.
    Forced {
        var: usize,
        check: usize,
        evicted: Vec<usize>,
    },
    /// Repair: edge `(var, check)` removed to break `codeword`.
    RepairRemove {
        var: usize,
        check: usize,
        codeword: Vec<usize>,
    },
    /// Repair: replacement edge for `var`.
    RepairPlace {
        var: usize,
        check: usize,
        candidates: usize,
        rejections: Vec<Rejection>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
struct LogHeader {
    n: usize,
    m: usize,
}

/// Every edge decision of a construction, in order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConstructionLog {
    pub n: usize,
    pub m: usize,
    pub records: Vec<LogRecord>,
}

impl ConstructionLog {
    fn new(n: usize, m: usize) -> Self {
        ConstructionLog {
            n,
            m,
            records: Vec::new(),
        }
    }

    /// Applies the records to an empty graph.
    pub fn replay(&self) -> Result<TannerGraph, GraphError> {
        let mut g = TannerGraph::new(self.n, self.m)?;
        for r in &self.records {
            match *r {
                LogRecord::Edge { var, check, .. } | LogRecord::RepairPlace { var, check, .. } => {
                    g.add_edge(var, check)?
                }
                LogRecord::RepairRemove { var, check, .. } => g.remove_edge(var, check)?,
                LogRecord::Forced {
                    var,
                    check,
                    ref evicted,
                } => {
                    for &u in evicted {
                        g.remove_edge(u, check)?;
                    }
                    g.add_edge(var, check)?
                }
            }
        }
        Ok(g)
    }

    /// True when no decision picked a check it had already rejected.
    pub fn rejections_are_final(&self) -> bool {
        self.records.iter().all(|r| match r {
            LogRecord::Edge {
                check, rejections, ..
            }
            | LogRecord::RepairPlace {
                check, rejections, ..
            } => rejections.iter().all(|x| x.check != *check),
            LogRecord::RepairRemove { .. } | LogRecord::Forced { .. } => true,
        })
    }

    /// Number of rejected candidates while placing edges of `var`.
    pub fn rejections_for(&self, var: usize) -> usize {
        self.records
            .iter()
            .map(|r| match r {
                LogRecord::Edge {
                    var: v, rejections, ..
                }
                | LogRecord::RepairPlace {
                    var: v, rejections, ..
                } if *v == var => rejections.len(),
                _ => 0,
            })
            .sum()
    }

    pub fn repair_records(&self) -> impl Iterator<Item = &LogRecord> {
        self.records.iter().filter(|r| {
            matches!(
                r,
                LogRecord::RepairRemove { .. } | LogRecord::RepairPlace { .. }
            )
        })
    }

    /// Total number of evictions made at dead ends.
    pub fn evictions(&self) -> usize {
        self.records
            .iter()
            .map(|r| match r {
                LogRecord::Forced { evicted, .. } => evicted.len(),
                _ => 0,
            })
            .sum()
    }

    /// Header line `{"n":..,"m":..}` followed by one JSON record per line.
    pub fn to_json_lines(&self) -> String {
        let mut out = serde_json::to_string(&LogHeader {
            n: self.n,
            m: self.m,
        })
        .expect("header serializes");
        out.push('\n');
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("record serializes"));
            out.push('\n');
        }
        out
    }

    pub fn from_json_lines(text: &str) -> Result<Self, serde_json::Error> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: LogHeader = match lines.next() {
            Some(l) => serde_json::from_str(l)?,
            None => serde_json::from_str("")?,
        };
        let records = lines
            .map(serde_json::from_str)
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ConstructionLog {
            n: header.n,
            m: header.m,
            records,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("no admissible check for edge {edge} of variable {var}")]
    CandidateExhausted {
        var: usize,
        edge: usize,
        log: Box<ConstructionLog>,
    },
    #[error("{} codeword(s) of weight at most 8 survived repair", surviving.len())]
    RepairFailed {
        surviving: Vec<Vec<usize>>,
        log: Box<ConstructionLog>,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Checks farther than `depth` edges from `j`, below `max_check_degree`,
/// ordered by `(degree, index)`. Joining `j` to any of them closes only
/// cycles of length at least `depth + 2`.
pub fn candidate_checks(
    g: &TannerGraph,
    j: usize,
    depth: usize,
    max_check_degree: usize,
) -> Result<Vec<usize>, GraphError> {
    g.check_var(j)?;
    let n = g.n();
    let mut dist = vec![usize::MAX; n + g.m()];
    let mut queue = VecDeque::new();
    dist[j] = 0;
    queue.push_back(j);
    while let Some(u) = queue.pop_front() {
        if dist[u] == depth {
            continue;
        }
        let (nbrs, offset) = if u < n {
            (g.var_neighbors(u), n)
        } else {
            (g.chk_neighbors(u - n), 0)
        };
        for &x in nbrs {
            let w = x + offset;
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut out: Vec<usize> = (0..g.m())
        .filter(|&c| dist[n + c] == usize::MAX && g.chk_degree(c) < max_check_degree)
        .collect();
    out.sort_by_key(|&c| (g.chk_degree(c), c));
    Ok(out)
}

/// Order among checks of equal degree: by index, or by fresh seeded
/// random keys drawn at every placement.
enum Ties {
    Index,
    Seeded(Box<ChaCha8Rng>),
}

impl Ties {
    fn new(params: &ConstructionParams, stream: u64) -> Self {
        if params.randomize {
            let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
            rng.set_stream(stream);
            Ties::Seeded(Box::new(rng))
        } else {
            Ties::Index
        }
    }

    /// Sorts `checks` by `(degree, tie key)`.
    fn sort(&mut self, g: &TannerGraph, checks: &mut [usize]) {
        match self {
            Ties::Index => checks.sort_by_key(|&c| (g.chk_degree(c), c)),
            Ties::Seeded(rng) => {
                checks.shuffle(rng.as_mut());
                checks.sort_by_key(|&c| g.chk_degree(c));
            }
        }
    }
}

/// Variables in processing order: `0..n`, or a seeded permutation.
fn variable_order(params: &ConstructionParams) -> Vec<usize> {
    let mut order: Vec<usize> = (0..params.n).collect();
    if params.randomize {
        let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
        order.shuffle(&mut rng);
    }
    order
}

/// Least-loaded unsaturated check.
fn least_loaded_check(g: &TannerGraph, max_check_degree: usize, ties: &mut Ties) -> Option<usize> {
    let mut open: Vec<usize> = (0..g.m())
        .filter(|&c| g.chk_degree(c) < max_check_degree)
        .collect();
    ties.sort(g, &mut open);
    open.first().copied()
}

struct Placement {
    check: usize,
    candidates: usize,
    rejections: Vec<Rejection>,
}

/// Wires one more edge of `j` to the first admissible candidate.
fn place_edge(
    g: &mut TannerGraph,
    j: usize,
    params: &ConstructionParams,
    ties: &mut Ties,
    exclude: Option<usize>,
) -> Result<Option<Placement>, GraphError> {
    let mut candidates = candidate_checks(g, j, params.tree_depth, params.max_check_degree)?;
    ties.sort(g, &mut candidates);
    if let Some(x) = exclude {
        candidates.retain(|&c| c != x);
    }
    let mut rejections = Vec::new();
    for &c in &candidates {
        g.add_edge(j, c)?;
        if !(params.avoid_five_three && completes_five_three_core(g, j, c)) {
            return Ok(Some(Placement {
                check: c,
                candidates: candidates.len(),
                rejections,
            }));
        }
        g.remove_edge(j, c)?;
        rejections.push(Rejection {
            check: c,
            reason: RejectReason::FiveThree,
        });
    }
    Ok(None)
}

/// Whether the freshly added edge `(j, c)` completes two variables with
/// three common neighbours in the variable graph. Without 4- and 6-cycles
/// that configuration is exactly the six even checks of a (5,3) structure;
/// its three odd checks are whatever third edges the spokes end up with, so
/// the structure is unavoidable from this point on.
fn completes_five_three_core(g: &TannerGraph, j: usize, c: usize) -> bool {
    g.chk_neighbors(c)
        .iter()
        .any(|&u| u != j && core_through(g, j, u))
}

/// Whether some (5,3) core uses the adjacency `j`-`u`.
fn core_through(g: &TannerGraph, j: usize, u: usize) -> bool {
    let nj = g.var_var_neighbors(j);
    let nu = g.var_var_neighbors(u);
    // hub `x`, spoke `y`
    for (x, nx, y, ny) in [(j, &nj, u, &nu), (u, &nu, j, &nj)] {
        for &h in ny.iter() {
            if h == x {
                continue;
            }
            let nh = g.var_var_neighbors(h);
            let common: Vec<usize> = nx
                .iter()
                .copied()
                .filter(|&s| s != y && s != h && nh.binary_search(&s).is_ok())
                .collect();
            for (i, &s1) in common.iter().enumerate() {
                for &s2 in &common[i + 1..] {
                    if is_five_three_core(g, &[x, h, y, s1, s2]) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Six checks of induced degree two and none heavier.
fn is_five_three_core(g: &TannerGraph, vars: &[usize]) -> bool {
    let degrees = g.induced_check_degrees(vars).expect("variables in range");
    degrees.values().all(|&d| d <= 2) && degrees.values().filter(|&&d| d == 2).count() == 6
}

/// Grows the Tanner graph edge by edge. Deterministic for fixed parameters.
pub fn peg_construct(
    params: &ConstructionParams,
) -> Result<(TannerGraph, ConstructionLog), ConstructError> {
    params.validate()?;
    let mut g = TannerGraph::new(params.n, params.m)?;
    let mut log = ConstructionLog::new(params.n, params.m);
    let mut ties = Ties::new(params, 1);
    let mut evictions = 0usize;
    let mut pending = VecDeque::new();
    let mut recovery = Recovery::new(params);
    for j in variable_order(params) {
        pending.push_back(j);
        while let Some(v) = pending.pop_front() {
            while g.var_degree(v) < params.gamma {
                let k = g.var_degree(v);
                if k == 0 {
                    let c = least_loaded_check(&g, params.max_check_degree, &mut ties)
                        .expect("feasibility leaves an unsaturated check");
                    g.add_edge(v, c)?;
                    log.records.push(LogRecord::Edge {
                        var: v,
                        edge: 0,
                        check: c,
                        candidates: params.m,
                        rejections: Vec::new(),
                    });
                    continue;
                }
                if let Some(p) = place_edge(&mut g, v, params, &mut ties, None)? {
                    log.records.push(LogRecord::Edge {
                        var: v,
                        edge: k,
                        check: p.check,
                        candidates: p.candidates,
                        rejections: p.rejections,
                    });
                    continue;
                }
                let forced = if evictions < params.max_evictions {
                    force_edge(&mut g, v, params, &mut recovery)?
                } else {
                    None
                };
                let Some((check, evicted)) = forced else {
                    return Err(ConstructError::CandidateExhausted {
                        var: v,
                        edge: k,
                        log: Box::new(log),
                    });
                };
                evictions += evicted.len();
                recovery.record(check, &evicted);
                pending.extend(evicted.iter().copied());
                log.records.push(LogRecord::Forced {
                    var: v,
                    check,
                    evicted,
                });
            }
        }
    }
    Ok((g, log))
}

/// Dead-end recovery state: recent evictions are tabu for a while, and a
/// small fraction of forced placements pick a random check.
struct Recovery {
    rng: ChaCha8Rng,
    step: usize,
    evicted_at: HashMap<(usize, usize), usize>,
}

const TABU_TENURE: usize = 20;
const RANDOM_WALK: f64 = 0.1;

impl Recovery {
    fn new(params: &ConstructionParams) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(params.rng_seed);
        rng.set_stream(3);
        Recovery {
            rng,
            step: 0,
            evicted_at: HashMap::new(),
        }
    }

    fn is_tabu(&self, var: usize, check: usize) -> bool {
        self.evicted_at
            .get(&(var, check))
            .is_some_and(|&t| self.step - t < TABU_TENURE)
    }

    fn record(&mut self, check: usize, evicted: &[usize]) {
        self.step += 1;
        for &u in evicted {
            self.evicted_at.insert((u, check), self.step);
        }
    }
}

/// Joins `j` to the unsaturated check whose admission needs the fewest
/// evictions: members within `tree_depth - 1` of `j`, and members whose
/// new adjacency to `j` would complete a (5,3) core. Returns the check and
/// the evicted members, or `None` if no check is open to `j`.
fn force_edge(
    g: &mut TannerGraph,
    j: usize,
    params: &ConstructionParams,
    rec: &mut Recovery,
) -> Result<Option<(usize, Vec<usize>)>, GraphError> {
    let near = variables_within(g, j, params.tree_depth.saturating_sub(1));
    let mut checks: Vec<usize> = (0..g.m())
        .filter(|&c| {
            g.chk_degree(c) < params.max_check_degree && !g.has_edge(j, c) && !rec.is_tabu(j, c)
        })
        .collect();
    if checks.is_empty() {
        return Ok(None);
    }
    checks.shuffle(&mut rec.rng);
    if rec.rng.random::<f64>() < RANDOM_WALK {
        checks.truncate(1);
    }
    let mut best: Option<(usize, Vec<usize>)> = None;
    for c in checks {
        g.add_edge(j, c)?;
        let conflicts: Vec<usize> = g
            .chk_neighbors(c)
            .iter()
            .copied()
            .filter(|&u| u != j && (near[u] || (params.avoid_five_three && core_through(g, j, u))))
            .collect();
        g.remove_edge(j, c)?;
        if best.as_ref().is_none_or(|(_, b)| conflicts.len() < b.len()) {
            let done = conflicts.len() <= 1;
            best = Some((c, conflicts));
            if done {
                break;
            }
        }
    }
    let Some((c, evicted)) = best else {
        return Ok(None);
    };
    for &u in &evicted {
        g.remove_edge(u, c)?;
    }
    g.add_edge(j, c)?;
    Ok(Some((c, evicted)))
}

/// Marks the variables within `depth` edges of `j`.
fn variables_within(g: &TannerGraph, j: usize, depth: usize) -> Vec<bool> {
    let n = g.n();
    let mut dist = vec![usize::MAX; n + g.m()];
    let mut queue = VecDeque::new();
    dist[j] = 0;
    queue.push_back(j);
    while let Some(u) = queue.pop_front() {
        if dist[u] >= depth {
            continue;
        }
        let (nbrs, offset) = if u < n {
            (g.var_neighbors(u), n)
        } else {
            (g.chk_neighbors(u - n), 0)
        };
        for &x in nbrs {
            let w = x + offset;
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    dist[..n].iter().map(|&d| d != usize::MAX).collect()
}

/// Breaks every codeword of weight at most 8 by moving one of its edges.
///
/// For each codeword, the member with the fewest logged rejections gives up
/// its edge to the most loaded check of the codeword and is rewired with the
/// growth rule, excluding that check. Records are appended to `log`.
pub fn repair_weight8(
    g: &TannerGraph,
    params: &ConstructionParams,
    log: &mut ConstructionLog,
) -> Result<TannerGraph, ConstructError> {
    let mut g = g.clone();
    let mut ties = Ties::new(params, 2);
    for _ in 0..params.repair_attempts {
        let search = find_80_codewords_with(&g, u64::MAX, Execution::default());
        let mut targets = search.weight8;
        targets.extend(search.lighter);
        let Some(codeword) = targets.first() else {
            return Ok(g);
        };
        if !rewire_one(&mut g, codeword, params, &mut ties, log)? {
            return Err(ConstructError::RepairFailed {
                surviving: targets,
                log: Box::new(log.clone()),
            });
        }
    }
    let search = find_80_codewords_with(&g, u64::MAX, Execution::default());
    let mut surviving = search.weight8;
    surviving.extend(search.lighter);
    if surviving.is_empty() {
        Ok(g)
    } else {
        Err(ConstructError::RepairFailed {
            surviving,
            log: Box::new(log.clone()),
        })
    }
}

fn rewire_one(
    g: &mut TannerGraph,
    codeword: &[usize],
    params: &ConstructionParams,
    ties: &mut Ties,
    log: &mut ConstructionLog,
) -> Result<bool, ConstructError> {
    let mut order: Vec<usize> = codeword.to_vec();
    order.sort_by_key(|&v| (log.rejections_for(v), v));
    for v in order {
        let old = *g
            .var_neighbors(v)
            .iter()
            .max_by_key(|&&c| (g.chk_degree(c), std::cmp::Reverse(c)))
            .expect("variable has edges");
        g.remove_edge(v, old)?;
        match place_edge(g, v, params, ties, Some(old))? {
            Some(p) => {
                log.records.push(LogRecord::RepairRemove {
                    var: v,
                    check: old,
                    codeword: codeword.to_vec(),
                });
                log.records.push(LogRecord::RepairPlace {
                    var: v,
                    check: p.check,
                    candidates: p.candidates,
                    rejections: p.rejections,
                });
                return Ok(true);
            }
            None => g.add_edge(v, old)?,
        }
    }
    Ok(false)
}

/// Growth followed by weight-8 repair: the full construction pipeline.
pub fn build_code(
    params: &ConstructionParams,
) -> Result<(TannerGraph, ConstructionLog), ConstructError> {
    let (g, mut log) = peg_construct(params)?;
    let g = repair_weight8(&g, params, &mut log)?;
    Ok((g, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trapping::{find_53_structures, find_80_codewords, find_three_three};
    use proptest::prelude::*;

    #[test]
    fn rejects_infeasible_params() {
        let mut p = ConstructionParams::new(100, 40);
        assert!(matches!(p.validate(), Err(ConstructError::Infeasible(_))));
        p.m = 50;
        assert!(p.validate().is_ok());
        assert!(ConstructionParams::new(0, 5).validate().is_err());
        assert!(ConstructionParams::new(3, 2).validate().is_err());
    }

    #[test]
    fn candidates_in_empty_graph() {
        let mut g = TannerGraph::new(4, 6).unwrap();
        g.add_edge(0, 2).unwrap();
        assert_eq!(candidate_checks(&g, 0, 6, 7).unwrap(), vec![0, 1, 3, 4, 5]);
        // saturated checks are never returned
        g.add_edge(1, 0).unwrap();
        g.add_edge(2, 0).unwrap();
        assert_eq!(candidate_checks(&g, 0, 6, 2).unwrap(), vec![1, 3, 4, 5]);
    }

    #[test]
    fn candidates_ordered_by_load() {
        let mut g = TannerGraph::new(4, 4).unwrap();
        g.add_edge(0, 0).unwrap();
        g.add_edge(1, 3).unwrap();
        g.add_edge(2, 3).unwrap();
        g.add_edge(3, 1).unwrap();
        assert_eq!(candidate_checks(&g, 0, 6, 7).unwrap(), vec![2, 1, 3]);
    }

    #[test]
    fn small_code_has_structural_guarantees() {
        let params = ConstructionParams::new(200, 100);
        let (g, log) = peg_construct(&params).unwrap();
        assert!(g.is_column_regular(3));
        assert!(g.girth().unwrap_or(usize::MAX) >= 8);
        assert!(g.max_check_degree() <= 7);
        assert!(find_three_three(&g).is_empty());
        assert!(find_53_structures(&g, None).unwrap().is_empty());
        assert_eq!(log.replay().unwrap(), g);
        assert!(log.rejections_are_final());
    }

    #[test]
    fn construction_is_deterministic() {
        let mut params = ConstructionParams::new(200, 100);
        params.randomize = true;
        params.rng_seed = 1;
        let a = peg_construct(&params).unwrap();
        let b = peg_construct(&params).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn tiny_code_may_exhaust_candidates() {
        let mut params = ConstructionParams::new(15, 9);
        params.max_evictions = 0;
        match peg_construct(&params) {
            Ok((g, _)) => assert!(g.girth().unwrap_or(usize::MAX) >= 8),
            Err(ConstructError::CandidateExhausted { log, .. }) => {
                assert!(log.replay().is_ok());
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn repair_is_noop_on_clean_code() {
        let mut params = ConstructionParams::new(200, 100);
        params.randomize = true;
        params.rng_seed = 1;
        let (g, mut log) = peg_construct(&params).unwrap();
        let before = log.records.len();
        assert!(find_80_codewords(&g, u64::MAX).weight8.is_empty());
        assert_eq!(repair_weight8(&g, &params, &mut log).unwrap(), g);
        assert_eq!(log.records.len(), before);
    }

    #[test]
    fn log_serialization_roundtrip() {
        let (_, log) = peg_construct(&ConstructionParams::new(200, 100)).unwrap();
        assert!(log.evictions() > 0);
        let text = log.to_json_lines();
        assert_eq!(ConstructionLog::from_json_lines(&text).unwrap(), log);
        assert!(text.lines().nth(1).unwrap().contains("\"type\":\"edge\""));
        assert!(text.contains("\"type\":\"forced\""));
    }

    #[test]
    fn bounded_recovery_gives_up() {
        let mut params = ConstructionParams::new(60, 30);
        params.max_evictions = 50;
        match peg_construct(&params) {
            Err(ConstructError::CandidateExhausted { log, .. }) => {
                assert!(log.evictions() >= 50);
                assert!(log.replay().is_ok());
            }
            other => panic!("expected a dead end, got {other:?}"),
        }
    }

    #[test]
    fn core_test_matches_structure_search() {
        let g = crate::gadgets::five_three();
        // removing any core edge and re-adding it must be flagged
        for (v, c) in g.edges() {
            if g.chk_degree(c) != 2 {
                continue;
            }
            let mut h = g.clone();
            h.remove_edge(v, c).unwrap();
            assert!(
                !completes_five_three_core(&h, v, c)
                    || !find_53_structures(&h, None).unwrap().is_empty()
            );
            h.add_edge(v, c).unwrap();
            assert!(completes_five_three_core(&h, v, c), "edge ({v}, {c})");
        }
        let g = crate::gadgets::eight_zero();
        for (v, c) in g.edges() {
            assert!(!completes_five_three_core(&g, v, c));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        // Joining a variable to any candidate keeps the girth at 8 or more.
        #[test]
        fn candidates_preserve_girth(seed in any::<u64>(), partial in 10usize..40) {
            let mut params = ConstructionParams::new(40, 20);
            params.randomize = true;
            params.rng_seed = seed;
            params.avoid_five_three = false;
            params.max_evictions = 0;
            let Ok((full, log)) = peg_construct(&params) else { return Ok(()) };
            prop_assume!(full.girth().unwrap_or(usize::MAX) >= 8);
            let mut g = TannerGraph::new(40, 20).unwrap();
            for r in log.records.iter().take(partial) {
                if let LogRecord::Edge { var, check, .. } = r {
                    g.add_edge(*var, *check).unwrap();
                }
            }
            let j = match &log.records[partial.min(log.records.len() - 1)] {
                LogRecord::Edge { var, .. } => *var,
                _ => unreachable!(),
            };
            prop_assume!(g.var_degree(j) >= 1);
            for c in candidate_checks(&g, j, 6, 7).unwrap() {
                let mut h = g.clone();
                h.add_edge(j, c).unwrap();
                prop_assert!(h.girth().unwrap_or(usize::MAX) >= 8);
            }
        }
    }
}
