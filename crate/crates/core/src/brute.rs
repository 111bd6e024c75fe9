//! Brute-force reference implementations.
//!
//! Everything in this module exists to double-check a production code path
//! by a slower, structurally different computation: naive boolean Gaussian
//! elimination for rank, exhaustive simple-cycle search for girth, sphere
//! search for bounded distance decoding, and a full subset scan for
//! trapping-set enumeration. Nothing here shares code with the paths it
//! verifies.

use alloc::vec;
use alloc::vec::Vec;

use crate::gf2::BinaryMatrix;
use crate::tanner::TannerGraph;

/// Rank over GF(2) by textbook row reduction on a `Vec<Vec<bool>>` copy.
pub fn rank(m: &BinaryMatrix) -> usize {
    let mut a: Vec<Vec<bool>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c)).collect())
        .collect();
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col]) else { continue };
        a.swap(p, rank);
        for r in 0..a.len() {
            if r != rank && a[r][col] {
                let (head, tail) = a.split_at_mut(rank.max(r));
                let (src, dst) = if r < rank {
                    (&tail[0], &mut head[r])
                } else {
                    (&head[rank], &mut tail[0])
                };
                for (d, s) in dst.iter_mut().zip(src) {
                    *d ^= s;
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Girth by exhaustive enumeration of simple cycles.
///
/// Walks every simple cycle of the (optionally check-restricted) graph by
/// depth-first search rooted at each node, pruning paths no shorter than the
/// best cycle found so far. Only suitable for small graphs.
pub fn girth(g: &TannerGraph, restrict_checks: Option<&[usize]>) -> Option<usize> {
    let n = g.n_var() + g.n_chk();
    let allowed = |node: usize| -> bool {
        if node < g.n_var() {
            return true;
        }
        match restrict_checks {
            None => true,
            Some(set) => set.contains(&(node - g.n_var())),
        }
    };
    let neighbors = |node: usize| -> Vec<usize> {
        if node < g.n_var() {
            g.var_checks(node).iter().map(|&c| g.n_var() + c).collect()
        } else {
            g.chk_vars(node - g.n_var()).to_vec()
        }
    };

    let mut best: Option<usize> = None;
    let mut on_path = vec![false; n];

    fn dfs(
        node: usize,
        root: usize,
        depth: usize,
        on_path: &mut [bool],
        best: &mut Option<usize>,
        allowed: &dyn Fn(usize) -> bool,
        neighbors: &dyn Fn(usize) -> Vec<usize>,
        prev: usize,
    ) {
        if let Some(b) = *best {
            if depth + 1 >= b {
                return;
            }
        }
        on_path[node] = true;
        for next in neighbors(node) {
            if next == prev || !allowed(next) {
                continue;
            }
            // Only close cycles at the root, and only count each once by
            // requiring intermediate nodes to be larger than the root.
            if next == root && depth >= 2 {
                let len = depth + 1;
                if best.map_or(true, |b| len < b) {
                    *best = Some(len);
                }
            } else if next > root && !on_path[next] {
                dfs(next, root, depth + 1, on_path, best, allowed, neighbors, node);
            }
        }
        on_path[node] = false;
    }

    for root in 0..n {
        if !allowed(root) {
            continue;
        }
        dfs(root, root, 0, &mut on_path, &mut best, &allowed, &neighbors, usize::MAX);
    }
    best
}

/// Nearest codeword within Hamming radius `t` by exhaustive sphere search.
///
/// Tries every error pattern of weight 0..=t in ascending weight and returns
/// the first one whose application yields a zero syndrome, as a flip mask.
pub fn sphere_decode(h: &BinaryMatrix, word: u64, t: usize) -> Option<u64> {
    let n = h.cols();
    let syndrome = |w: u64| -> u64 {
        let mut s = 0u64;
        for r in 0..h.rows() {
            let mut parity = 0u32;
            for c in 0..n {
                if h.get(r, c) {
                    parity ^= (w >> c) as u32 & 1;
                }
            }
            s |= u64::from(parity) << r;
        }
        s
    };
    for weight in 0..=t {
        let mut found: Option<u64> = None;
        for e in masks_of_weight(n, weight) {
            if syndrome(word ^ e) == 0 {
                assert!(found.is_none(), "two codewords within radius {t}");
                found = Some(e);
            }
        }
        if found.is_some() {
            return found;
        }
    }
    None
}

/// All `n`-bit masks of the given weight, in colexicographic order.
pub fn masks_of_weight(n: usize, weight: usize) -> Vec<u64> {
    assert!(n <= 64);
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..weight).collect();
    if weight > n {
        return out;
    }
    loop {
        out.push(idx.iter().fold(0u64, |m, &i| m | 1 << i));
        // Next combination in colex order.
        let mut k = 0;
        while k < weight {
            let limit = if k + 1 < weight { idx[k + 1] } else { n };
            if idx[k] + 1 < limit {
                idx[k] += 1;
                for (j, slot) in idx.iter_mut().enumerate().take(k) {
                    *slot = j;
                }
                break;
            }
            k += 1;
        }
        if k == weight {
            return out;
        }
    }
}

/// Exhaustive subset scan for elementary trapping sets.
///
/// Checks every variable subset of size 1..=`a_max` directly against the
/// instance predicate: all induced check degrees at most two, `b <= b_max`
/// odd checks, connected, and no variable with fewer than two degree-two
/// checks (every variable lies on a cycle structure).
pub fn scan_elementary_subsets(
    g: &TannerGraph,
    a_max: usize,
    b_max: usize,
) -> Vec<Vec<usize>> {
    let n = g.n_var();
    let mut out = Vec::new();
    let mut subset = Vec::new();
    scan_rec(g, n, a_max, b_max, 0, &mut subset, &mut out);
    out
}

fn scan_rec(
    g: &TannerGraph,
    n: usize,
    a_max: usize,
    b_max: usize,
    start: usize,
    subset: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if !subset.is_empty() && qualifies(g, subset, b_max) {
        out.push(subset.clone());
    }
    if subset.len() == a_max {
        return;
    }
    for v in start..n {
        subset.push(v);
        scan_rec(g, n, a_max, b_max, v + 1, subset, out);
        subset.pop();
    }
}

fn qualifies(g: &TannerGraph, vars: &[usize], b_max: usize) -> bool {
    let in_set = |v: usize| vars.contains(&v);
    // Induced check degrees.
    let mut checks: Vec<(usize, usize)> = Vec::new(); // (check, induced degree)
    for &v in vars {
        for &c in g.var_checks(v) {
            match checks.iter_mut().find(|(ci, _)| *ci == c) {
                Some((_, d)) => *d += 1,
                None => checks.push((c, 1)),
            }
        }
    }
    if checks.iter().any(|&(_, d)| d > 2) {
        return false;
    }
    let b = checks.iter().filter(|&&(_, d)| d == 1).count();
    if b > b_max {
        return false;
    }
    // Every variable needs at least two degree-2 checks.
    for &v in vars {
        let deg2 = g
            .var_checks(v)
            .iter()
            .filter(|&&c| {
                checks.iter().any(|&(ci, d)| ci == c && d == 2)
                    && g.chk_vars(c).iter().filter(|&&u| in_set(u)).count() == 2
            })
            .count();
        if deg2 < 2 {
            return false;
        }
    }
    // Connectivity over degree-2 checks.
    let mut seen = vec![false; vars.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        let v = vars[i];
        for &c in g.var_checks(v) {
            if g.chk_vars(c).iter().filter(|&&u| in_set(u)).count() != 2 {
                continue;
            }
            for &u in g.chk_vars(c) {
                if let Some(j) = vars.iter().position(|&x| x == u) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}
