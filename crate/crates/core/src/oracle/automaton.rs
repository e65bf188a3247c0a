use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use super::words::WordSet;
use super::DEFAULT_MAX_STATES;
use crate::error::{Error, Result};

pub const POWER_MAX_ITER: usize = 1000;
pub const POWER_REL_TOL: f64 = 1e-12;

/// Sliding-window automaton of a one-dimensional SFT.
///
/// States are the admissible words of length `m − 1`, where `m` is the
/// longest forbidden length; an edge `u → v` carries the letter appended to
/// `u` and exists iff the resulting `m`-window avoids every forbidden word.
/// With `m = 1` there is a single empty state with one loop per allowed letter.
#[derive(Debug, Clone)]
pub struct TransferAutomaton {
    alphabet_size: u32,
    window: usize,
    states: Vec<Vec<u8>>,
    successors: Vec<Vec<u32>>,
    forbidden: Vec<Vec<u8>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralEstimate {
    pub radius: f64,
    pub lower: f64,
    pub upper: f64,
    pub iterations: usize,
}

fn contains_forbidden(word: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().any(|f| f.len() <= word.len() && word.windows(f.len()).any(|w| w == f.as_slice()))
}

fn ends_with_forbidden(word: &[u8], forbidden: &[Vec<u8>]) -> bool {
    forbidden.iter().any(|f| word.ends_with(f))
}

fn decode(mut code: usize, q: usize, len: usize) -> Vec<u8> {
    let mut word = vec![0u8; len];
    for slot in word.iter_mut().rev() {
        *slot = (code % q) as u8;
        code /= q;
    }
    word
}

fn encode(word: &[u8], q: usize) -> usize {
    word.iter().fold(0, |acc, &c| acc * q + c as usize)
}

impl TransferAutomaton {
    pub fn build(ws: &WordSet) -> Result<Self> {
        Self::build_with_cap(ws, DEFAULT_MAX_STATES)
    }

    pub fn build_with_cap(ws: &WordSet, max_states: usize) -> Result<Self> {
        let q = ws.alphabet_size() as usize;
        let window = ws.max_length().max(1);
        let k = window - 1;
        let candidates = (q as f64).powi(k as i32);
        if candidates > max_states as f64 {
            return Err(Error::Resource(format!(
                "automaton would need {q}^{k} candidate states, above the cap {max_states}"
            )));
        }
        let candidates = q.pow(k as u32);
        let forbidden = ws.words().to_vec();

        let mut index = vec![u32::MAX; candidates];
        let mut states = Vec::new();
        for code in 0..candidates {
            let word = decode(code, q, k);
            if !contains_forbidden(&word, &forbidden) {
                index[code] = states.len() as u32;
                states.push(word);
            }
        }

        let mut successors = Vec::with_capacity(states.len());
        let mut buf = Vec::with_capacity(window);
        for state in &states {
            let mut out = Vec::new();
            for c in 0..q as u8 {
                buf.clear();
                buf.extend_from_slice(state);
                buf.push(c);
                if ends_with_forbidden(&buf, &forbidden) {
                    continue;
                }
                let target = index[encode(&buf[1..], q)];
                debug_assert_ne!(target, u32::MAX, "suffix of an admissible window is admissible");
                out.push(target);
            }
            successors.push(out);
        }

        Ok(TransferAutomaton { alphabet_size: q as u32, window, states, successors, forbidden })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn window(&self) -> usize {
        self.window
    }

    pub fn edge_count(&self) -> usize {
        self.successors.iter().map(Vec::len).sum()
    }

    /// `L(1), …, L(n_max)` by path counting, with direct checks below the
    /// state length.
    pub fn counts(&self, n_max: usize) -> Result<Vec<u128>> {
        let k = self.window - 1;
        let q = self.alphabet_size as usize;
        let mut out = Vec::with_capacity(n_max);
        for n in 1..k.min(n_max + 1) {
            let total = (0..q.pow(n as u32))
                .filter(|&code| !contains_forbidden(&decode(code, q, n), &self.forbidden))
                .count();
            out.push(total as u128);
        }
        if n_max < k {
            return Ok(out);
        }

        // ways[u] = number of admissible words of the current length ending in state u
        let mut ways = vec![1u128; self.states.len()];
        if k >= 1 {
            out.push(self.states.len() as u128);
        }
        for n in k + 1..=n_max {
            let mut next = vec![0u128; self.states.len()];
            for (u, succ) in self.successors.iter().enumerate() {
                if ways[u] == 0 {
                    continue;
                }
                for &v in succ {
                    let slot = &mut next[v as usize];
                    *slot = slot.checked_add(ways[u]).ok_or_else(|| overflow(n))?;
                }
            }
            let total = next
                .iter()
                .try_fold(0u128, |acc, &x| acc.checked_add(x))
                .ok_or_else(|| overflow(n))?;
            out.push(total);
            ways = next;
        }
        Ok(out)
    }

    /// Spectral radius of the adjacency matrix, the exact growth rate.
    pub fn spectral_radius(&self) -> SpectralEstimate {
        let n = self.states.len();
        let mut graph = DiGraph::<(), ()>::with_capacity(n, self.edge_count());
        let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
        for (u, succ) in self.successors.iter().enumerate() {
            for &v in succ {
                graph.add_edge(nodes[u], nodes[v as usize], ());
            }
        }

        let mut component = vec![usize::MAX; n];
        let mut best = SpectralEstimate { radius: 0.0, lower: 0.0, upper: 0.0, iterations: 0 };
        for (id, scc) in tarjan_scc(&graph).into_iter().enumerate() {
            for node in &scc {
                component[node.index()] = id;
            }
            let members: Vec<usize> = scc.iter().map(|x| x.index()).collect();
            let cyclic = members.len() > 1 || self.successors[members[0]].contains(&(members[0] as u32));
            if !cyclic {
                continue;
            }
            let est = self.component_radius(&members, &component, id);
            if est.radius > best.radius {
                best = est;
            }
        }
        best
    }

    /// Power iteration on `A + I` restricted to one strongly connected
    /// component. The shift makes the block primitive, so the
    /// Collatz–Wielandt bounds close even on periodic components.
    fn component_radius(&self, members: &[usize], component: &[usize], id: usize) -> SpectralEstimate {
        let local: std::collections::HashMap<usize, usize> =
            members.iter().enumerate().map(|(i, &u)| (u, i)).collect();
        let edges: Vec<Vec<usize>> = members
            .iter()
            .map(|&u| {
                self.successors[u]
                    .iter()
                    .filter(|&&v| component[v as usize] == id)
                    .map(|&v| local[&(v as usize)])
                    .collect()
            })
            .collect();

        let mut x = vec![1.0f64; members.len()];
        let mut lower = 0.0;
        let mut upper = f64::INFINITY;
        let mut iterations = 0;
        while iterations < POWER_MAX_ITER {
            iterations += 1;
            let y: Vec<f64> = edges
                .iter()
                .enumerate()
                .map(|(i, succ)| x[i] + succ.iter().map(|&j| x[j]).sum::<f64>())
                .collect();
            let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
            for (yi, xi) in y.iter().zip(&x) {
                let r = yi / xi;
                lo = lo.min(r);
                hi = hi.max(r);
            }
            lower = lo;
            upper = hi;
            let scale = y.iter().cloned().fold(0.0, f64::max);
            x = y.into_iter().map(|v| v / scale).collect();
            if upper - lower <= POWER_REL_TOL * upper {
                break;
            }
        }
        SpectralEstimate {
            radius: 0.5 * (lower + upper) - 1.0,
            lower: lower - 1.0,
            upper: upper - 1.0,
            iterations,
        }
    }
}

fn overflow(n: usize) -> Error {
    Error::Resource(format!("admissible word count overflows 128 bits at n = {n}"))
}

/// Spectral radius of the sliding-window automaton of `ws`.
pub fn growth_transfer_matrix(ws: &WordSet) -> Result<f64> {
    Ok(TransferAutomaton::build(ws)?.spectral_radius().radius)
}
