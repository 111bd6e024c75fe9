//! Hard-decision iterative decoders for LDPC and CH-GLDPC codes.
//!
//! Both decoders use a fully parallel schedule: all check messages in one
//! iteration are computed from the same variable snapshot.
//!
//! Parallel bit flipping: each super check runs the BDD on its neighbors'
//! current values and sends flip messages to the neighbors differing from
//! the found codeword (none on BDD failure); each single check with odd
//! parity sends flips to all neighbors; a variable flips when it receives
//! strictly more than half of its degree in flip messages.
//!
//! Gallager B: super checks either relay the BDD codeword values or echo
//! each variable's own message back on failure; single checks send extrinsic
//! parity; variables send the extrinsic majority, falling back to the
//! channel value on ties. The hard decision at a variable is the majority of
//! all incoming check messages together with the channel value, ties broken
//! toward the channel value.
//!
//! A check is satisfied when its restriction is a component codeword (super
//! checks) or has even parity (single checks); decoding stops at the first
//! all-satisfied state or after `max_iters` iterations.

use alloc::collections::BTreeMap;
use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::component::SuperCheckCode;
use crate::tanner::TannerGraph;

/// Which hard-decision decoder to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum DecoderKind {
    Pbf,
    #[cfg_attr(feature = "serde", serde(rename = "galb"))]
    GallagerB,
}

/// Errors from hybrid-code construction and decoding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HybridError {
    /// A super check's degree does not match the component length.
    DegreeMismatch { check: usize, degree: usize, expected: usize },
    /// Check index out of range.
    CheckOutOfRange { check: usize },
    /// Coordinate map is not a bijection on the check's degree.
    BadCoordMap { check: usize },
    /// Input vector length does not match the variable count.
    LengthMismatch { expected: usize, got: usize },
}

impl fmt::Display for HybridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HybridError::DegreeMismatch { check, degree, expected } => write!(
                f,
                "super check {check} has degree {degree} but the component code has length {expected}"
            ),
            HybridError::CheckOutOfRange { check } => write!(f, "check {check} out of range"),
            HybridError::BadCoordMap { check } => {
                write!(f, "coordinate map for check {check} is not a bijection")
            }
            HybridError::LengthMismatch { expected, got } => {
                write!(f, "expected {expected} bits, got {got}")
            }
        }
    }
}

impl core::error::Error for HybridError {}

/// A Tanner graph with a designated set of super checks and the component
/// code decoded at them.
///
/// With no super checks this degenerates to a plain LDPC code. Each super
/// check carries an ordered coordinate map from neighbor position (ascending
/// variable order) to component coordinate; the identity map is the default.
#[derive(Clone, Debug)]
pub struct HybridCode {
    graph: TannerGraph,
    is_super: Vec<bool>,
    super_list: Vec<usize>,
    code: SuperCheckCode,
    /// Non-identity coordinate maps: check -> (position -> coordinate,
    /// coordinate -> position).
    coord_maps: BTreeMap<usize, (Vec<u32>, Vec<u32>)>,
}

impl HybridCode {
    /// Builds a hybrid code, validating super-check degrees against the
    /// component length.
    pub fn new(
        graph: TannerGraph,
        super_checks: Vec<usize>,
        code: SuperCheckCode,
    ) -> Result<Self, HybridError> {
        let mut is_super = vec![false; graph.n_chk()];
        let mut super_list = super_checks;
        super_list.sort_unstable();
        super_list.dedup();
        for &c in &super_list {
            if c >= graph.n_chk() {
                return Err(HybridError::CheckOutOfRange { check: c });
            }
            if let Some(n) = code.required_len() {
                if graph.chk_degree(c) != n {
                    return Err(HybridError::DegreeMismatch {
                        check: c,
                        degree: graph.chk_degree(c),
                        expected: n,
                    });
                }
            }
            is_super[c] = true;
        }
        Ok(HybridCode { graph, is_super, super_list, code, coord_maps: BTreeMap::new() })
    }

    /// A plain LDPC code (no super checks).
    pub fn plain_ldpc(graph: TannerGraph) -> Self {
        Self::new(graph, Vec::new(), SuperCheckCode::Ideal { t: 2 }).expect("no supers")
    }

    pub fn graph(&self) -> &TannerGraph {
        &self.graph
    }

    pub fn code(&self) -> &SuperCheckCode {
        &self.code
    }

    /// Super checks in ascending order.
    pub fn super_checks(&self) -> &[usize] {
        &self.super_list
    }

    pub fn is_super(&self, check: usize) -> bool {
        self.is_super[check]
    }

    /// Installs a non-identity coordinate map for a super check.
    pub fn set_coord_map(&mut self, check: usize, map: Vec<u32>) -> Result<(), HybridError> {
        if check >= self.graph.n_chk() || !self.is_super[check] {
            return Err(HybridError::CheckOutOfRange { check });
        }
        let d = self.graph.chk_degree(check);
        let mut inv = vec![u32::MAX; d];
        if map.len() != d {
            return Err(HybridError::BadCoordMap { check });
        }
        for (pos, &coord) in map.iter().enumerate() {
            if coord as usize >= d || inv[coord as usize] != u32::MAX {
                return Err(HybridError::BadCoordMap { check });
            }
            inv[coord as usize] = pos as u32;
        }
        self.coord_maps.insert(check, (map, inv));
        Ok(())
    }

    /// The coordinate map of a super check (position -> coordinate), when it
    /// differs from the identity.
    pub fn coord_map(&self, check: usize) -> Option<&[u32]> {
        self.coord_maps.get(&check).map(|(fwd, _)| fwd.as_slice())
    }

    /// The component-code word currently seen by check `c`.
    fn restriction(&self, c: usize, state: &[u8]) -> u64 {
        let vars = self.graph.chk_vars(c);
        match self.coord_maps.get(&c) {
            None => {
                let mut w = 0;
                for (pos, &v) in vars.iter().enumerate() {
                    w |= u64::from(state[v]) << pos;
                }
                w
            }
            Some((fwd, _)) => {
                let mut w = 0;
                for (pos, &v) in vars.iter().enumerate() {
                    w |= u64::from(state[v]) << fwd[pos];
                }
                w
            }
        }
    }

    /// Neighbor position of component coordinate `coord` at check `c`.
    fn position_of(&self, c: usize, coord: usize) -> usize {
        match self.coord_maps.get(&c) {
            None => coord,
            Some((_, inv)) => inv[coord] as usize,
        }
    }

    /// Whether check `c` is satisfied by `state`.
    pub fn check_satisfied(&self, c: usize, state: &[u8]) -> bool {
        if self.is_super[c] {
            self.code.is_codeword(self.restriction(c, state))
        } else {
            self.graph.chk_vars(c).iter().fold(0u8, |acc, &v| acc ^ state[v]) == 0
        }
    }

    /// Whether every check is satisfied by `state`.
    pub fn word_satisfied(&self, state: &[u8]) -> bool {
        (0..self.graph.n_chk()).all(|c| self.check_satisfied(c, state))
    }
}

/// Outcome of a decoding run.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DecodeResult {
    /// All checks satisfied at termination.
    pub converged: bool,
    /// Iterations actually performed (0 when the input already satisfies
    /// every check).
    pub iterations_used: usize,
    /// Final hard decision.
    pub output: Vec<u8>,
    /// Support of the output; the still-flipped positions under the all-zero
    /// transmission convention.
    pub residual_support: Vec<usize>,
}

impl DecodeResult {
    fn from_state(code: &HybridCode, state: Vec<u8>, iterations: usize, converged: bool) -> Self {
        let _ = code;
        let residual_support =
            state.iter().enumerate().filter(|&(_, &b)| b != 0).map(|(i, _)| i).collect();
        DecodeResult { converged, iterations_used: iterations, output: state, residual_support }
    }
}

fn check_len(code: &HybridCode, y: &[u8]) -> Result<(), HybridError> {
    if y.len() != code.graph().n_var() {
        return Err(HybridError::LengthMismatch { expected: code.graph().n_var(), got: y.len() });
    }
    Ok(())
}

/// One parallel bit-flipping iteration in place. Returns true when any
/// variable flipped.
pub fn pbf_step(code: &HybridCode, state: &mut [u8], flips: &mut [u16]) -> bool {
    flips.fill(0);
    let g = code.graph();
    for c in 0..g.n_chk() {
        let vars = g.chk_vars(c);
        if code.is_super(c) {
            let word = code.restriction(c, state);
            if let Some(mask) = code.code().bdd_decode(word) {
                let mut rest = mask;
                while rest != 0 {
                    let coord = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    flips[vars[code.position_of(c, coord)]] += 1;
                }
            }
        } else {
            let parity = vars.iter().fold(0u8, |acc, &v| acc ^ state[v]);
            if parity != 0 {
                for &v in vars {
                    flips[v] += 1;
                }
            }
        }
    }
    let mut any = false;
    for (v, s) in state.iter_mut().enumerate() {
        // Flip on strictly more than deg/2 flip messages.
        if 2 * usize::from(flips[v]) > g.var_degree(v) {
            *s ^= 1;
            any = true;
        }
    }
    any
}

/// Parallel bit-flipping decoding of `y` for at most `max_iters` iterations.
pub fn pbf_decode(
    code: &HybridCode,
    y: &[u8],
    max_iters: usize,
) -> Result<DecodeResult, HybridError> {
    check_len(code, y)?;
    let mut state = y.to_vec();
    if code.word_satisfied(&state) {
        return Ok(DecodeResult::from_state(code, state, 0, true));
    }
    let mut flips = vec![0u16; state.len()];
    for iter in 1..=max_iters {
        pbf_step(code, &mut state, &mut flips);
        if code.word_satisfied(&state) {
            return Ok(DecodeResult::from_state(code, state, iter, true));
        }
    }
    Ok(DecodeResult::from_state(code, state, max_iters, false))
}

/// Exact bit-flipping failure test: runs until the all-zero word is reached,
/// a satisfied state halts the decoder, or the state trajectory repeats.
///
/// Returns true only when decoding ends in the all-zero word. The decoder is
/// memoryless, so a repeated state proves divergence without an iteration
/// cap.
pub fn pbf_reaches_zero(code: &HybridCode, y: &[u8]) -> Result<bool, HybridError> {
    check_len(code, y)?;
    let mut state = y.to_vec();
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut flips = vec![0u16; state.len()];
    loop {
        if code.word_satisfied(&state) {
            return Ok(state.iter().all(|&b| b == 0));
        }
        if !seen.insert(state.clone()) {
            return Ok(false);
        }
        pbf_step(code, &mut state, &mut flips);
    }
}

struct EdgeLayout {
    /// Edge ids grouped by check, in neighbor order.
    chk_edges: Vec<Vec<usize>>,
    /// `(check, edge)` pairs per variable, in check order.
    var_edges: Vec<Vec<(usize, usize)>>,
    edge_var: Vec<usize>,
}

impl EdgeLayout {
    fn new(g: &TannerGraph) -> Self {
        let mut chk_edges = vec![Vec::new(); g.n_chk()];
        let mut var_edges = vec![Vec::new(); g.n_var()];
        let mut edge_var = Vec::new();
        let mut next = 0;
        for c in 0..g.n_chk() {
            for &v in g.chk_vars(c) {
                chk_edges[c].push(next);
                var_edges[v].push((c, next));
                edge_var.push(v);
                next += 1;
            }
        }
        EdgeLayout { chk_edges, var_edges, edge_var }
    }
}

fn gallager_b_check_pass(code: &HybridCode, edges: &EdgeLayout, v2c: &[u8], c2v: &mut [u8]) {
    let g = code.graph();
    for c in 0..g.n_chk() {
        let es = &edges.chk_edges[c];
        if code.is_super(c) {
            let mut word = 0u64;
            for (pos, &e) in es.iter().enumerate() {
                let coord = match code.coord_maps.get(&c) {
                    None => pos,
                    Some((fwd, _)) => fwd[pos] as usize,
                };
                word |= u64::from(v2c[e]) << coord;
            }
            match code.code().bdd_decode(word) {
                Some(mask) => {
                    let cw = word ^ mask;
                    for (pos, &e) in es.iter().enumerate() {
                        let coord = match code.coord_maps.get(&c) {
                            None => pos,
                            Some((fwd, _)) => fwd[pos] as usize,
                        };
                        c2v[e] = (cw >> coord & 1) as u8;
                    }
                }
                // BDD failure: echo each variable's own value back.
                None => {
                    for &e in es {
                        c2v[e] = v2c[e];
                    }
                }
            }
        } else {
            let total = es.iter().fold(0u8, |acc, &e| acc ^ v2c[e]);
            for &e in es {
                c2v[e] = total ^ v2c[e];
            }
        }
    }
}

fn gallager_b_decision(edges: &EdgeLayout, c2v: &[u8], y: &[u8], decision: &mut [u8]) {
    for (v, d) in decision.iter_mut().enumerate() {
        let ones: usize =
            edges.var_edges[v].iter().map(|&(_, e)| usize::from(c2v[e])).sum::<usize>()
                + usize::from(y[v]);
        let votes = edges.var_edges[v].len() + 1;
        *d = match (2 * ones).cmp(&votes) {
            core::cmp::Ordering::Greater => 1,
            core::cmp::Ordering::Less => 0,
            core::cmp::Ordering::Equal => y[v],
        };
    }
}

fn gallager_b_var_pass(edges: &EdgeLayout, c2v: &[u8], y: &[u8], v2c: &mut [u8]) {
    for (v, ves) in edges.var_edges.iter().enumerate() {
        let total: usize = ves.iter().map(|&(_, e)| usize::from(c2v[e])).sum();
        for &(_, e) in ves {
            let ones = total - usize::from(c2v[e]);
            let votes = ves.len() - 1;
            v2c[e] = match (2 * ones).cmp(&votes) {
                core::cmp::Ordering::Greater => 1,
                core::cmp::Ordering::Less => 0,
                core::cmp::Ordering::Equal => y[v],
            };
        }
    }
}

/// Gallager B decoding of `y` for at most `max_iters` iterations.
pub fn gallager_b_decode(
    code: &HybridCode,
    y: &[u8],
    max_iters: usize,
) -> Result<DecodeResult, HybridError> {
    check_len(code, y)?;
    if code.word_satisfied(y) {
        return Ok(DecodeResult::from_state(code, y.to_vec(), 0, true));
    }
    let edges = EdgeLayout::new(code.graph());
    let n_edges = edges.edge_var.len();
    let mut v2c: Vec<u8> = (0..n_edges).map(|e| y[edges.edge_var[e]]).collect();
    let mut c2v = vec![0u8; n_edges];
    let mut decision = vec![0u8; y.len()];
    for iter in 1..=max_iters {
        gallager_b_check_pass(code, &edges, &v2c, &mut c2v);
        gallager_b_decision(&edges, &c2v, y, &mut decision);
        if code.word_satisfied(&decision) {
            return Ok(DecodeResult::from_state(code, decision, iter, true));
        }
        gallager_b_var_pass(&edges, &c2v, y, &mut v2c);
    }
    Ok(DecodeResult::from_state(code, decision, max_iters, false))
}

/// Gallager B failure test with message-state cycle detection: returns true
/// only when the hard decision reaches the all-zero word within `max_iters`.
pub fn gallager_b_reaches_zero(
    code: &HybridCode,
    y: &[u8],
    max_iters: usize,
) -> Result<bool, HybridError> {
    check_len(code, y)?;
    if code.word_satisfied(y) {
        return Ok(y.iter().all(|&b| b == 0));
    }
    let edges = EdgeLayout::new(code.graph());
    let n_edges = edges.edge_var.len();
    let mut v2c: Vec<u8> = (0..n_edges).map(|e| y[edges.edge_var[e]]).collect();
    let mut c2v = vec![0u8; n_edges];
    let mut decision = vec![0u8; y.len()];
    let mut seen: BTreeSet<Vec<u8>> = BTreeSet::new();
    for _ in 1..=max_iters {
        if !seen.insert(v2c.clone()) {
            return Ok(false);
        }
        gallager_b_check_pass(code, &edges, &v2c, &mut c2v);
        gallager_b_decision(&edges, &c2v, y, &mut decision);
        if code.word_satisfied(&decision) {
            return Ok(decision.iter().all(|&b| b == 0));
        }
        gallager_b_var_pass(&edges, &c2v, y, &mut v2c);
    }
    Ok(false)
}

/// Runs the chosen decoder.
pub fn decode(
    code: &HybridCode,
    kind: DecoderKind,
    y: &[u8],
    max_iters: usize,
) -> Result<DecodeResult, HybridError> {
    match kind {
        DecoderKind::Pbf => pbf_decode(code, y, max_iters),
        DecoderKind::GallagerB => gallager_b_decode(code, y, max_iters),
    }
}

/// Exact failure test for the chosen decoder (Gallager B capped at
/// `max_iters`).
pub fn reaches_zero(
    code: &HybridCode,
    kind: DecoderKind,
    y: &[u8],
    max_iters: usize,
) -> Result<bool, HybridError> {
    match kind {
        DecoderKind::Pbf => pbf_reaches_zero(code, y),
        DecoderKind::GallagerB => gallager_b_reaches_zero(code, y, max_iters),
    }
}

/// Whether the all-errors-on-`support` pattern is a PBF fixed point: the
/// state is unchanged by `iters` decoding iterations.
pub fn pbf_is_fixed_point(code: &HybridCode, support: &[usize], iters: usize) -> bool {
    let mut state = vec![0u8; code.graph().n_var()];
    for &v in support {
        state[v] = 1;
    }
    let reference = state.clone();
    let mut flips = vec![0u16; state.len()];
    for _ in 0..iters {
        pbf_step(code, &mut state, &mut flips);
        if state != reference {
            return false;
        }
    }
    true
}

/// Turns a support set into a 0/1 word of length `n`.
pub fn support_to_word(n: usize, support: &[usize]) -> Vec<u8> {
    let mut y = vec![0u8; n];
    for &v in support {
        y[v] = 1;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::component::ComponentCode;
    use crate::tanner::{search_shifts, QcLayout};

    fn small_ldpc() -> HybridCode {
        let layout = search_shifts(3, 5, 13, 6, 7, 50_000).expect("girth-6 (3,5,13)");
        HybridCode::plain_ldpc(layout.build())
    }

    #[test]
    fn zero_word_converges_in_zero_iterations() {
        let code = small_ldpc();
        let y = vec![0u8; code.graph().n_var()];
        for kind in [DecoderKind::Pbf, DecoderKind::GallagerB] {
            let r = decode(&code, kind, &y, 50).unwrap();
            assert!(r.converged);
            assert_eq!(r.iterations_used, 0);
            assert!(r.residual_support.is_empty());
        }
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let code = small_ldpc();
        let err = pbf_decode(&code, &[0, 1], 10).unwrap_err();
        assert!(matches!(err, HybridError::LengthMismatch { .. }));
    }

    #[test]
    fn every_single_error_corrected_on_plain_ldpc() {
        // Classical PBF on a column-weight-3 graph corrects any one error.
        let code = small_ldpc();
        let n = code.graph().n_var();
        for v in 0..n {
            let y = support_to_word(n, &[v]);
            let r = pbf_decode(&code, &y, 50).unwrap();
            assert!(r.converged && r.residual_support.is_empty(), "error at {v}");
        }
    }

    #[test]
    fn super_check_degree_must_match_component() {
        let layout = search_shifts(3, 5, 13, 6, 7, 50_000).unwrap();
        let bch = ComponentCode::bch_31_21();
        let err = HybridCode::new(layout.build(), vec![0], SuperCheckCode::Code(bch)).unwrap_err();
        assert!(matches!(err, HybridError::DegreeMismatch { check: 0, degree: 5, expected: 31 }));
    }

    #[test]
    fn rerunning_on_output_is_a_fixed_point() {
        let code = small_ldpc();
        let n = code.graph().n_var();
        let mut s = 0x1234_5678_9abc_def0u64;
        for _ in 0..50 {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            let y: Vec<u8> = (0..n).map(|i| (s >> (i % 60) & 1) as u8).collect();
            let r = pbf_decode(&code, &y, 50).unwrap();
            if r.converged {
                let again = pbf_decode(&code, &r.output, 50).unwrap();
                assert_eq!(again.iterations_used, 0);
                assert_eq!(again.output, r.output);
            }
        }
    }

    #[test]
    fn decoding_is_symmetric_under_codeword_translation() {
        // supp(decode(y + c) + c) equals supp(decode(y)) for codewords c.
        let code = small_ldpc();
        let h = code.graph().to_matrix();
        let basis = h.nullspace_basis();
        assert!(!basis.is_empty());
        let n = code.graph().n_var();
        let y = support_to_word(n, &[2, 11, 40]);
        for kind in [DecoderKind::Pbf, DecoderKind::GallagerB] {
            let base = decode(&code, kind, &y, 30).unwrap();
            for c in basis.iter().take(4) {
                let shifted: Vec<u8> = y.iter().zip(c).map(|(a, b)| a ^ b).collect();
                let r = decode(&code, kind, &shifted, 30).unwrap();
                assert_eq!(r.converged, base.converged);
                assert_eq!(r.iterations_used, base.iterations_used);
                let unshifted: Vec<u8> = r.output.iter().zip(c).map(|(a, b)| a ^ b).collect();
                assert_eq!(unshifted, base.output);
            }
        }
    }

    #[test]
    fn gallager_b_single_error_on_tree_neighborhood() {
        // Depth-2 regular tree around variable 0: three checks of degree 3,
        // each leaf with two private degree-1 checks. A single error at the
        // root clears within two iterations.
        let mut chk_adj = vec![vec![0, 1, 2], vec![0, 3, 4], vec![0, 5, 6]];
        for leaf in 1..7 {
            chk_adj.push(vec![leaf]);
            chk_adj.push(vec![leaf]);
        }
        let g = TannerGraph::from_check_adjacency(7, chk_adj);
        let code = HybridCode::plain_ldpc(g);
        let y = support_to_word(7, &[0]);
        let r = gallager_b_decode(&code, &y, 50).unwrap();
        assert!(r.converged);
        assert!(r.iterations_used <= 2, "used {}", r.iterations_used);
        assert!(r.residual_support.is_empty());
    }

    #[test]
    fn coord_map_permutes_component_coordinates() {
        // A degree-3 super check with an ideal component behaves identically
        // under any coordinate bijection.
        let g = TannerGraph::from_check_adjacency(3, vec![vec![0, 1, 2], vec![0], vec![1], vec![2]]);
        let mut code =
            HybridCode::new(g, vec![0], SuperCheckCode::Ideal { t: 2 }).unwrap();
        code.set_coord_map(0, vec![2, 0, 1]).unwrap();
        let y = support_to_word(3, &[0, 2]);
        let r = pbf_decode(&code, &y, 10).unwrap();
        assert!(r.converged && r.residual_support.is_empty());
        assert!(code.set_coord_map(0, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn qc_layout_block_structure_reaches_every_variable() {
        let layout = QcLayout::circulant(2, 3, 4, &[vec![1, 3]]);
        let g = layout.build();
        let code = HybridCode::plain_ldpc(g);
        let n = code.graph().n_var();
        let y = support_to_word(n, &[5]);
        let r = pbf_decode(&code, &y, 20).unwrap();
        // Degree-2 variables cannot self-correct a single error under the
        // strict majority rule, but the run must terminate cleanly.
        assert_eq!(r.output.len(), n);
    }
}
