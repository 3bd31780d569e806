//! Gallager A hard-decision decoding for column-weight-three codes.
//!
//! Messages are single bits on directed edges. Edge `3v + k` joins variable
//! `v` to its `k`-th check (ascending). The engine only touches nodes that
//! carry a one somewhere in their neighborhood, so decoding a sparse error
//! pattern costs time proportional to the disturbed region, not to `n`.
//! Results are identical to a dense sweep over every edge.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{ErrorPattern, GraphError, TannerGraph};

/// Variable degree the decoder is defined for.
pub const COLUMN_WEIGHT: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecodeError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("variable {var} has degree {degree}; the decoder requires column weight three")]
    NotColumnWeightThree { var: usize, degree: usize },
    #[error("max_iterations must be at least 1")]
    ZeroIterations,
}

/// How a variable's bit is estimated at the end of an iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum DecisionRule {
    /// Unanimous check verdict, otherwise the received value.
    #[default]
    A,
    /// Majority of the three check messages.
    B,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecoderConfig {
    pub max_iterations: usize,
    pub decision_rule: DecisionRule,
    /// Capture full message state after every iteration.
    pub trace: bool,
}

impl Default for DecoderConfig {
    fn default() -> Self {
        DecoderConfig {
            max_iterations: 50,
            decision_rule: DecisionRule::A,
            trace: false,
        }
    }
}

impl DecoderConfig {
    pub fn with_max_iterations(max_iterations: usize) -> Self {
        DecoderConfig {
            max_iterations,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), DecodeError> {
        if self.max_iterations == 0 {
            return Err(DecodeError::ZeroIterations);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum DecodeStatus {
    Converged,
    FailedMaxIter,
    /// Variable-to-check messages equal the received bits in every iteration.
    FixedPoint,
}

/// Messages on every directed edge, indexed by edge id `3v + k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MessageState {
    pub var_to_chk: Vec<u8>,
    pub chk_to_var: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub iteration: usize,
    pub messages: MessageState,
    pub estimate: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecodeOutcome {
    pub status: DecodeStatus,
    /// Converged: the codeword found. FixedPoint: the received word.
    /// FailedMaxIter: the estimate after the last iteration.
    pub output: Vec<u8>,
    pub iterations_used: usize,
    /// Support of `output`; the residual errors under the all-zero convention.
    pub residual_error_support: ErrorPattern,
    /// Filled only when `DecoderConfig::trace` is set.
    pub trace: Vec<TraceStep>,
}

impl DecodeOutcome {
    /// True when the decoder returned the all-zero codeword.
    pub fn is_success(&self) -> bool {
        self.status == DecodeStatus::Converged && self.residual_error_support.weight() == 0
    }
}

/// Compact result of [`GallagerA::run`]; the output support stays in the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunSummary {
    pub status: DecodeStatus,
    pub iterations_used: usize,
    pub output_weight: usize,
}

impl RunSummary {
    /// Frame error under the all-zero convention: anything but the zero word.
    pub fn is_frame_error(&self) -> bool {
        self.output_weight != 0
    }
}

/// Check-to-variable messages: each edge gets the XOR of the other incoming bits.
pub fn check_node_messages(incoming: &[u8], outgoing: &mut [u8]) {
    let parity = incoming.iter().fold(0u8, |acc, &b| acc ^ b);
    for (o, &i) in outgoing.iter_mut().zip(incoming) {
        *o = parity ^ i;
    }
}

/// Variable-to-check messages for a degree-3 variable: along edge `k`, the
/// common value of the other two incoming bits if they agree, else `received`.
pub fn variable_node_messages(received: u8, incoming: [u8; 3]) -> [u8; 3] {
    let pick = |a: u8, b: u8| if a == b { a } else { received };
    [
        pick(incoming[1], incoming[2]),
        pick(incoming[0], incoming[2]),
        pick(incoming[0], incoming[1]),
    ]
}

pub fn decide(rule: DecisionRule, received: u8, incoming: [u8; 3]) -> u8 {
    match rule {
        DecisionRule::A => {
            if incoming[0] == incoming[1] && incoming[1] == incoming[2] {
                incoming[0]
            } else {
                received
            }
        }
        DecisionRule::B => u8::from(incoming[0] + incoming[1] + incoming[2] >= 2),
    }
}

fn require_column_weight_three(g: &TannerGraph) -> Result<(), DecodeError> {
    match (0..g.n()).find(|&v| g.var_degree(v) != COLUMN_WEIGHT) {
        Some(var) => Err(DecodeError::NotColumnWeightThree {
            var,
            degree: g.var_degree(var),
        }),
        None => Ok(()),
    }
}

/// Reusable decoding workspace bound to one graph.
#[derive(Debug, Clone)]
pub struct GallagerA<'g> {
    graph: &'g TannerGraph,
    cfg: DecoderConfig,
    edge_check: Vec<u32>,
    chk_start: Vec<u32>,
    chk_edges: Vec<u32>,

    received: Vec<u8>,
    recv_ones: Vec<u32>,
    v2c: Vec<u8>,
    c2v: Vec<u8>,
    v2c_ones: Vec<u32>,
    prev_v2c_ones: Vec<u32>,
    c2v_ones: Vec<u32>,
    estimate: Vec<u8>,
    est_ones: Vec<u32>,

    var_stamp: Vec<u32>,
    chk_stamp: Vec<u32>,
    parity: Vec<u8>,
    stamp: u32,
    scratch_vars: Vec<u32>,
    scratch_chks: Vec<u32>,
    output_is_received: bool,
}

impl<'g> GallagerA<'g> {
    pub fn new(graph: &'g TannerGraph, cfg: DecoderConfig) -> Result<Self, DecodeError> {
        cfg.validate()?;
        require_column_weight_three(graph)?;
        let n = graph.n();
        let m = graph.m();
        let edges = COLUMN_WEIGHT * n;
        let mut edge_check = Vec::with_capacity(edges);
        for v in 0..n {
            edge_check.extend(graph.var_neighbors(v).iter().map(|&c| c as u32));
        }
        let mut chk_start = vec![0u32; m + 1];
        for &c in &edge_check {
            chk_start[c as usize + 1] += 1;
        }
        for c in 0..m {
            chk_start[c + 1] += chk_start[c];
        }
        let mut fill = chk_start.clone();
        let mut chk_edges = vec![0u32; edges];
        for (e, &c) in edge_check.iter().enumerate() {
            chk_edges[fill[c as usize] as usize] = e as u32;
            fill[c as usize] += 1;
        }
        Ok(GallagerA {
            graph,
            cfg,
            edge_check,
            chk_start,
            chk_edges,
            received: vec![0; n],
            recv_ones: Vec::new(),
            v2c: vec![0; edges],
            c2v: vec![0; edges],
            v2c_ones: Vec::new(),
            prev_v2c_ones: Vec::new(),
            c2v_ones: Vec::new(),
            estimate: vec![0; n],
            est_ones: Vec::new(),
            var_stamp: vec![0; n],
            chk_stamp: vec![0; m],
            parity: vec![0; m],
            stamp: 0,
            scratch_vars: Vec::new(),
            scratch_chks: Vec::new(),
            output_is_received: false,
        })
    }

    pub fn graph(&self) -> &'g TannerGraph {
        self.graph
    }

    pub fn config(&self) -> &DecoderConfig {
        &self.cfg
    }

    fn next_stamp(&mut self) -> u32 {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.var_stamp.iter_mut().for_each(|s| *s = 0);
            self.chk_stamp.iter_mut().for_each(|s| *s = 0);
            self.stamp = 1;
        }
        self.stamp
    }

    fn check_edges(&self, c: usize) -> std::ops::Range<usize> {
        self.chk_start[c] as usize..self.chk_start[c + 1] as usize
    }

    fn load(&mut self, support: &[usize]) -> Result<(), DecodeError> {
        for &v in &self.recv_ones {
            self.received[v as usize] = 0;
        }
        self.recv_ones.clear();
        for &v in &self.v2c_ones {
            self.v2c[v as usize] = 0;
        }
        self.v2c_ones.clear();
        for &e in &self.c2v_ones {
            self.c2v[e as usize] = 0;
        }
        self.c2v_ones.clear();
        for &v in &self.est_ones {
            self.estimate[v as usize] = 0;
        }
        self.est_ones.clear();
        self.output_is_received = false;
        for &v in support {
            if v >= self.graph.n() {
                return Err(GraphError::VariableOutOfRange {
                    index: v,
                    n: self.graph.n(),
                }
                .into());
            }
            if self.received[v] == 0 {
                self.received[v] = 1;
                self.recv_ones.push(v as u32);
            }
        }
        self.recv_ones.sort_unstable();
        Ok(())
    }

    /// Zero-syndrome test of the word whose ones are `ones`.
    fn ones_form_codeword(&mut self, ones_from_estimate: bool) -> bool {
        let stamp = self.next_stamp();
        self.scratch_chks.clear();
        let ones = if ones_from_estimate {
            &self.est_ones
        } else {
            &self.recv_ones
        };
        for &v in ones {
            let base = COLUMN_WEIGHT * v as usize;
            for &c in &self.edge_check[base..base + COLUMN_WEIGHT] {
                let c = c as usize;
                if self.chk_stamp[c] != stamp {
                    self.chk_stamp[c] = stamp;
                    self.parity[c] = 0;
                    self.scratch_chks.push(c as u32);
                }
                self.parity[c] ^= 1;
            }
        }
        self.scratch_chks
            .iter()
            .all(|&c| self.parity[c as usize] == 0)
    }

    fn first_half_from_received(&mut self) {
        for &v in &self.recv_ones {
            let base = COLUMN_WEIGHT * v as usize;
            for e in base..base + COLUMN_WEIGHT {
                self.v2c[e] = 1;
                self.v2c_ones.push(e as u32);
            }
        }
    }

    /// Variables that may emit or estimate a one: received ones (ascending)
    /// followed by every other variable with an incoming one, stored in
    /// `scratch_vars`.
    fn collect_active_vars(&mut self) {
        let stamp = self.next_stamp();
        self.scratch_vars.clear();
        for &v in &self.recv_ones {
            if self.var_stamp[v as usize] != stamp {
                self.var_stamp[v as usize] = stamp;
                self.scratch_vars.push(v);
            }
        }
        for &e in &self.c2v_ones {
            let v = e as usize / COLUMN_WEIGHT;
            if self.var_stamp[v] != stamp {
                self.var_stamp[v] = stamp;
                self.scratch_vars.push(v as u32);
            }
        }
    }

    fn incoming(&self, v: usize) -> [u8; 3] {
        let base = COLUMN_WEIGHT * v;
        [self.c2v[base], self.c2v[base + 1], self.c2v[base + 2]]
    }

    fn variable_half(&mut self) {
        std::mem::swap(&mut self.v2c_ones, &mut self.prev_v2c_ones);
        for &e in &self.prev_v2c_ones {
            self.v2c[e as usize] = 0;
        }
        self.v2c_ones.clear();
        self.collect_active_vars();
        for i in 0..self.scratch_vars.len() {
            let v = self.scratch_vars[i] as usize;
            let out = variable_node_messages(self.received[v], self.incoming(v));
            for (k, &bit) in out.iter().enumerate() {
                if bit == 1 {
                    let e = COLUMN_WEIGHT * v + k;
                    self.v2c[e] = 1;
                    self.v2c_ones.push(e as u32);
                }
            }
        }
    }

    fn check_half(&mut self) {
        for &e in &self.c2v_ones {
            self.c2v[e as usize] = 0;
        }
        self.c2v_ones.clear();
        let stamp = self.next_stamp();
        self.scratch_chks.clear();
        for &e in &self.v2c_ones {
            let c = self.edge_check[e as usize] as usize;
            if self.chk_stamp[c] != stamp {
                self.chk_stamp[c] = stamp;
                self.scratch_chks.push(c as u32);
            }
        }
        for i in 0..self.scratch_chks.len() {
            let c = self.scratch_chks[i] as usize;
            let range = self.check_edges(c);
            let parity = self.chk_edges[range.clone()]
                .iter()
                .fold(0u8, |acc, &e| acc ^ self.v2c[e as usize]);
            for idx in range {
                let e = self.chk_edges[idx] as usize;
                let out = parity ^ self.v2c[e];
                if out == 1 {
                    self.c2v[e] = 1;
                    self.c2v_ones.push(e as u32);
                }
            }
        }
    }

    fn estimate_half(&mut self) {
        for &v in &self.est_ones {
            self.estimate[v as usize] = 0;
        }
        self.est_ones.clear();
        self.collect_active_vars();
        for i in 0..self.scratch_vars.len() {
            let v = self.scratch_vars[i] as usize;
            if decide(self.cfg.decision_rule, self.received[v], self.incoming(v)) == 1 {
                self.estimate[v] = 1;
                self.est_ones.push(v as u32);
            }
        }
    }

    fn snapshot(&self, iteration: usize) -> TraceStep {
        TraceStep {
            iteration,
            messages: MessageState {
                var_to_chk: self.v2c.clone(),
                chk_to_var: self.c2v.clone(),
            },
            estimate: self.estimate.clone(),
        }
    }

    fn run_inner(&mut self, mut trace: Option<&mut Vec<TraceStep>>) -> RunSummary {
        if self.ones_form_codeword(false) {
            self.output_is_received = true;
            return self.summary(DecodeStatus::Converged, 0);
        }
        self.first_half_from_received();
        for it in 1..=self.cfg.max_iterations {
            let mut repeated = false;
            if it >= 2 {
                self.variable_half();
                repeated = self.v2c_ones == self.prev_v2c_ones;
                if repeated && it == 2 {
                    // Messages equal the received bits: the input is a fixed point.
                    self.check_half();
                    self.estimate_half();
                    if let Some(t) = trace.as_deref_mut() {
                        t.push(self.snapshot(it));
                    }
                    self.output_is_received = true;
                    return self.summary(DecodeStatus::FixedPoint, it);
                }
            }
            self.check_half();
            self.estimate_half();
            if let Some(t) = trace.as_deref_mut() {
                t.push(self.snapshot(it));
            }
            if self.ones_form_codeword(true) {
                return self.summary(DecodeStatus::Converged, it);
            }
            if repeated {
                // The message map is deterministic; every later iteration repeats this one.
                return self.summary(DecodeStatus::FailedMaxIter, self.cfg.max_iterations);
            }
        }
        self.summary(DecodeStatus::FailedMaxIter, self.cfg.max_iterations)
    }

    fn summary(&self, status: DecodeStatus, iterations_used: usize) -> RunSummary {
        let output_weight = if self.output_is_received {
            self.recv_ones.len()
        } else {
            self.est_ones.len()
        };
        RunSummary {
            status,
            iterations_used,
            output_weight,
        }
    }

    /// Decodes the word whose ones are `support`; the output stays in the
    /// workspace (see [`GallagerA::output_support`]).
    pub fn run(&mut self, support: &[usize]) -> Result<RunSummary, DecodeError> {
        self.load(support)?;
        Ok(self.run_inner(None))
    }

    /// Output support of the last [`GallagerA::run`], ascending.
    pub fn output_support(&self) -> Vec<usize> {
        let ones = if self.output_is_received {
            &self.recv_ones
        } else {
            &self.est_ones
        };
        let mut out: Vec<usize> = ones.iter().map(|&v| v as usize).collect();
        out.sort_unstable();
        out
    }

    pub fn decode_support(&mut self, support: &[usize]) -> Result<DecodeOutcome, DecodeError> {
        self.load(support)?;
        let mut trace = Vec::new();
        let summary = if self.cfg.trace {
            self.run_inner(Some(&mut trace))
        } else {
            self.run_inner(None)
        };
        let residual = ErrorPattern::new(self.graph.n(), self.output_support())?;
        Ok(DecodeOutcome {
            status: summary.status,
            output: residual.to_word(self.graph.n()),
            iterations_used: summary.iterations_used,
            residual_error_support: residual,
            trace,
        })
    }

    pub fn decode_word(&mut self, received: &[u8]) -> Result<DecodeOutcome, DecodeError> {
        check_word(self.graph, received)?;
        let support = ErrorPattern::from_word(received);
        self.decode_support(support.support())
    }

    /// True iff the second iteration's variable-to-check messages equal the
    /// first iteration's (the received bits), so they stay equal forever.
    pub fn is_fixed_point(&mut self, support: &[usize]) -> Result<bool, DecodeError> {
        self.load(support)?;
        self.first_half_from_received();
        self.check_half();
        self.variable_half();
        if self.v2c_ones != self.prev_v2c_ones {
            return Ok(false);
        }
        self.estimate_half();
        Ok(self.est_ones == self.recv_ones)
    }
}

fn check_word(g: &TannerGraph, word: &[u8]) -> Result<(), DecodeError> {
    if word.len() != g.n() {
        return Err(GraphError::LengthMismatch {
            expected: g.n(),
            got: word.len(),
        }
        .into());
    }
    if let Some(&b) = word.iter().find(|&&b| b > 1) {
        return Err(GraphError::NonBinary(b).into());
    }
    Ok(())
}

/// Decodes `received` with Gallager A.
///
/// A received word that already satisfies every check is returned with zero
/// iterations. Otherwise iteration 1 sends the received bits, every later
/// iteration applies [`variable_node_messages`], and decoding stops as soon
/// as the estimate is a codeword.
pub fn gallager_a_decode(
    g: &TannerGraph,
    received: &[u8],
    cfg: &DecoderConfig,
) -> Result<DecodeOutcome, DecodeError> {
    GallagerA::new(g, *cfg)?.decode_word(received)
}

pub fn is_fixed_point(
    g: &TannerGraph,
    pattern: &ErrorPattern,
    cfg: &DecoderConfig,
) -> Result<bool, DecodeError> {
    GallagerA::new(g, *cfg)?.is_fixed_point(pattern.support())
}

/// Per-iteration message states and estimates. Empty when the received word
/// is already a codeword; ends early once the messages repeat.
pub fn decode_trace(
    g: &TannerGraph,
    received: &[u8],
    cfg: &DecoderConfig,
) -> Result<Vec<TraceStep>, DecodeError> {
    let cfg = DecoderConfig {
        trace: true,
        ..*cfg
    };
    Ok(GallagerA::new(g, cfg)?.decode_word(received)?.trace)
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::testgraphs;
    use proptest::prelude::*;

    #[test]
    fn zero_word_converges_without_iterating() {
        let g = testgraphs::isolated_six_cycle();
        let out = gallager_a_decode(&g, &vec![0; g.n()], &DecoderConfig::default()).unwrap();
        assert_eq!(out.status, DecodeStatus::Converged);
        assert_eq!(out.iterations_used, 0);
        assert!(out.is_success());
        assert!(decode_trace(&g, &vec![0; g.n()], &DecoderConfig::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn three_three_support_is_fixed_point() {
        let g = testgraphs::isolated_six_cycle();
        let pattern = ErrorPattern::new(g.n(), vec![0, 1, 2]).unwrap();
        let cfg = DecoderConfig::default();
        assert!(is_fixed_point(&g, &pattern, &cfg).unwrap());
        let out = gallager_a_decode(&g, &pattern.to_word(g.n()), &cfg).unwrap();
        assert_eq!(out.status, DecodeStatus::FixedPoint);
        assert_eq!(out.output, pattern.to_word(g.n()));
        assert!(!out.is_success());

        let trace = decode_trace(&g, &pattern.to_word(g.n()), &cfg).unwrap();
        assert_eq!(trace.len(), 2);
        assert_eq!(trace[0].messages, trace[1].messages);
        assert_eq!(trace[1].messages.var_to_chk, {
            let w = pattern.to_word(g.n());
            (0..3 * g.n()).map(|e| w[e / 3]).collect::<Vec<_>>()
        });
    }

    #[test]
    fn zero_pattern_is_fixed_point() {
        let g = testgraphs::isolated_six_cycle();
        assert!(is_fixed_point(&g, &ErrorPattern::empty(), &DecoderConfig::default()).unwrap());
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = testgraphs::isolated_six_cycle();
        let cfg = DecoderConfig::default();
        assert!(matches!(
            gallager_a_decode(&g, &[0, 1], &cfg),
            Err(DecodeError::Graph(GraphError::LengthMismatch { .. }))
        ));
        let irregular = TannerGraph::from_edges(2, 3, [(0, 0), (0, 1), (0, 2), (1, 0)]).unwrap();
        assert_eq!(
            gallager_a_decode(&irregular, &[0, 0], &cfg),
            Err(DecodeError::NotColumnWeightThree { var: 1, degree: 1 })
        );
        assert_eq!(
            GallagerA::new(&g, DecoderConfig::with_max_iterations(0)).unwrap_err(),
            DecodeError::ZeroIterations
        );
    }

    #[test]
    fn check_update_is_linear() {
        let incoming = [1, 0, 1, 1, 0, 0];
        let mut a = [0u8; 6];
        check_node_messages(&incoming, &mut a);
        for flip in 0..incoming.len() {
            let mut flipped = incoming;
            flipped[flip] ^= 1;
            let mut b = [0u8; 6];
            check_node_messages(&flipped, &mut b);
            for k in 0..incoming.len() {
                assert_eq!(a[k] ^ b[k], u8::from(k != flip), "flip {flip}, edge {k}");
            }
        }
    }

    #[test]
    fn variable_rule_table() {
        assert_eq!(variable_node_messages(0, [1, 1, 1]), [1, 1, 1]);
        assert_eq!(variable_node_messages(1, [0, 0, 0]), [0, 0, 0]);
        assert_eq!(variable_node_messages(1, [0, 1, 1]), [1, 1, 1]);
        assert_eq!(variable_node_messages(0, [0, 1, 1]), [1, 0, 0]);
        assert_eq!(decide(DecisionRule::A, 1, [0, 0, 1]), 1);
        assert_eq!(decide(DecisionRule::B, 1, [0, 0, 1]), 0);
        assert_eq!(decide(DecisionRule::A, 0, [1, 1, 1]), 1);
    }

    fn arb_case() -> impl Strategy<Value = (usize, u64, Vec<u8>, bool)> {
        (
            0usize..4,
            any::<u64>(),
            prop::collection::vec(0u8..2, 40),
            any::<bool>(),
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn engine_matches_dense_reference((which, seed, bits, rule_b) in arb_case()) {
            let g = testgraphs::corpus_graph(which, seed);
            let mut word = bits;
            word.resize(g.n(), 0);
            // keep the inputs sparse-ish so failures are varied
            for (i, b) in word.iter_mut().enumerate() {
                if (seed >> (i % 64)) & 3 != 0 { *b = 0; }
            }
            let cfg = DecoderConfig {
                max_iterations: 12,
                decision_rule: if rule_b { DecisionRule::B } else { DecisionRule::A },
                trace: false,
            };
            let got = gallager_a_decode(&g, &word, &cfg).unwrap();
            let (status, output, iters) = reference::decode(&g, &word, &cfg);
            prop_assert_eq!(got.status, status);
            prop_assert_eq!(&got.output, &output);
            prop_assert_eq!(got.iterations_used, iters);
            if got.status == DecodeStatus::Converged {
                prop_assert!(g.is_codeword(&got.output).unwrap());
            }
        }

        #[test]
        fn decoding_is_deterministic((which, seed, bits, _b) in arb_case()) {
            let g = testgraphs::corpus_graph(which, seed);
            let mut word = bits;
            word.resize(g.n(), 0);
            let cfg = DecoderConfig::default();
            let mut engine = GallagerA::new(&g, cfg).unwrap();
            let first = engine.decode_word(&word).unwrap();
            let second = gallager_a_decode(&g, &word, &cfg).unwrap();
            prop_assert_eq!(first.clone(), second);
            prop_assert_eq!(engine.decode_word(&word).unwrap(), first);
        }

        #[test]
        fn fixed_points_decode_to_themselves((which, seed, bits, _b) in arb_case()) {
            let g = testgraphs::corpus_graph(which, seed);
            let mut word = bits;
            word.resize(g.n(), 0);
            let pattern = ErrorPattern::from_word(&word);
            let cfg = DecoderConfig::default();
            if is_fixed_point(&g, &pattern, &cfg).unwrap() {
                let out = gallager_a_decode(&g, &word, &cfg).unwrap();
                prop_assert_eq!(out.output, word);
            }
        }
    }
}
