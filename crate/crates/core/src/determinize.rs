//! Subset construction with ε-closure.
//!
//! Subsets of NFA states are bit vectors interned in a hash-indexed arena.
//! NFAs with at most 64 states use single-word labels and byte-indexed
//! lookup tables for the successor computation; larger NFAs fall back to
//! multi-word labels.

use std::fmt::Write;

use rustc_hash::FxHashMap;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::EpsNfa;
use crate::transformation::Transformation;

/// Default bound on the number of subsets a construction may create.
pub const DEFAULT_SUBSET_CAP: usize = 2_000_000;

/// A DFA obtained by the subset construction, together with the set of
/// NFA states each DFA state stands for.
#[derive(Debug, Clone)]
pub struct SubsetDfa {
    dfa: Dfa,
    nfa_size: usize,
    words: usize,
    labels: Vec<u64>,
}

impl SubsetDfa {
    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn into_dfa(self) -> Dfa {
        self.dfa
    }

    pub fn len(&self) -> usize {
        self.dfa.size()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn label_words(&self, state: usize) -> &[u64] {
        &self.labels[state * self.words..(state + 1) * self.words]
    }

    /// NFA states in the subset of `state`, ascending.
    pub fn label(&self, state: usize) -> Vec<usize> {
        let words = self.label_words(state);
        (0..self.nfa_size)
            .filter(|&s| words[s / 64] >> (s % 64) & 1 == 1)
            .collect()
    }

    pub fn label_contains(&self, state: usize, nfa_state: usize) -> bool {
        self.label_words(state)[nfa_state / 64] >> (nfa_state % 64) & 1 == 1
    }

    /// DFA state whose label is exactly `nfa_states`, if reached.
    pub fn find_label(&self, nfa_states: &[usize]) -> Option<usize> {
        let mut key = vec![0u64; self.words];
        for &s in nfa_states {
            if s >= self.nfa_size {
                return None;
            }
            key[s / 64] |= 1 << (s % 64);
        }
        (0..self.len()).find(|&i| self.label_words(i) == key.as_slice())
    }

    /// Up to `limit` labels rendered as `state: {a,b,..}` lines.
    pub fn describe_labels(&self, limit: usize) -> String {
        let mut out = String::new();
        for i in 0..self.len().min(limit) {
            let label = self.label(i);
            let items: Vec<String> = label.iter().map(|s| s.to_string()).collect();
            let _ = writeln!(
                out,
                "{i}{}: {{{}}}",
                if self.dfa.is_final(i) { "*" } else { "" },
                items.join(",")
            );
        }
        out
    }
}

/// Subset construction without a cap.
pub fn determinize(nfa: &EpsNfa) -> SubsetDfa {
    determinize_capped(nfa, usize::MAX).expect("uncapped construction")
}

/// Subset construction that gives up once more than `cap` subsets exist.
///
/// States are numbered in BFS order from the ε-closure of the initial
/// states, expanding letters in alphabet order. The empty subset, when
/// reached, becomes an explicit dead state.
pub fn determinize_capped(nfa: &EpsNfa, cap: usize) -> Result<SubsetDfa> {
    if nfa.size() <= 64 {
        determinize_narrow(nfa, cap)
    } else {
        determinize_wide(nfa, cap)
    }
}

/// `closure(moves(p, x))` for every state `p` and letter `x`, as bit words.
fn closed_successors(nfa: &EpsNfa, words: usize) -> Vec<u64> {
    let n = nfa.size();
    let letters = nfa.alphabet().len();
    let mut out = vec![0u64; letters * n * words];
    let mut set = vec![false; n];
    for x in 0..letters {
        for p in 0..n {
            set.iter_mut().for_each(|b| *b = false);
            for t in nfa.moves(p, x) {
                set[t] = true;
            }
            nfa.close(&mut set);
            let base = (x * n + p) * words;
            for (s, _) in set.iter().enumerate().filter(|(_, &b)| b) {
                out[base + s / 64] |= 1 << (s % 64);
            }
        }
    }
    out
}

fn closed_initials(nfa: &EpsNfa, words: usize) -> Vec<u64> {
    let mut key = vec![0u64; words];
    for s in nfa.closure(nfa.initials()) {
        key[s / 64] |= 1 << (s % 64);
    }
    key
}

fn final_words(nfa: &EpsNfa, words: usize) -> Vec<u64> {
    let mut mask = vec![0u64; words];
    for f in nfa.finals() {
        mask[f / 64] |= 1 << (f % 64);
    }
    mask
}

fn determinize_narrow(nfa: &EpsNfa, cap: usize) -> Result<SubsetDfa> {
    let n = nfa.size();
    let letters = nfa.alphabet().len();
    let succ = closed_successors(nfa, 1);
    let chunks = n.div_ceil(8);

    // tables[(x * chunks + c) * 256 + byte] = union of successors of the
    // states 8c..8c+7 selected by `byte`
    let mut tables = vec![0u64; letters * chunks * 256];
    for x in 0..letters {
        for c in 0..chunks {
            let base = (x * chunks + c) * 256;
            for byte in 1..256usize {
                let low = byte.trailing_zeros() as usize;
                let state = c * 8 + low;
                let bit = if state < n { succ[x * n + state] } else { 0 };
                tables[base + byte] = tables[base + (byte & (byte - 1))] | bit;
            }
        }
    }

    let finals = final_words(nfa, 1)[0];
    let start = closed_initials(nfa, 1)[0];
    let mut index: FxHashMap<u64, u32> = FxHashMap::default();
    let mut labels: Vec<u64> = vec![start];
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); letters];
    index.insert(start, 0);

    let mut current = 0usize;
    while current < labels.len() {
        let set = labels[current];
        for (x, row) in rows.iter_mut().enumerate() {
            let mut next = 0u64;
            let mut rest = set;
            let mut c = 0;
            while rest != 0 {
                let byte = (rest & 0xff) as usize;
                if byte != 0 {
                    next |= tables[(x * chunks + c) * 256 + byte];
                }
                rest >>= 8;
                c += 1;
            }
            let id = match index.get(&next) {
                Some(&id) => id,
                None => {
                    if labels.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    let id = labels.len() as u32;
                    labels.push(next);
                    index.insert(next, id);
                    id
                }
            };
            row.push(id);
        }
        current += 1;
    }

    let final_mask = labels.iter().map(|&l| l & finals != 0).collect();
    let delta = rows.into_iter().map(Transformation::from_raw).collect();
    Ok(SubsetDfa {
        dfa: Dfa::from_parts(nfa.alphabet().to_vec(), delta, 0, final_mask),
        nfa_size: n,
        words: 1,
        labels,
    })
}

fn determinize_wide(nfa: &EpsNfa, cap: usize) -> Result<SubsetDfa> {
    let n = nfa.size();
    let words = n.div_ceil(64);
    let letters = nfa.alphabet().len();
    let succ = closed_successors(nfa, words);
    let finals = final_words(nfa, words);
    let start: Box<[u64]> = closed_initials(nfa, words).into();

    let mut index: FxHashMap<Box<[u64]>, u32> = FxHashMap::default();
    let mut labels: Vec<u64> = start.to_vec();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); letters];
    index.insert(start, 0);

    let mut next = vec![0u64; words];
    let mut current = 0usize;
    while current * words < labels.len() {
        for (x, row) in rows.iter_mut().enumerate() {
            next.iter_mut().for_each(|w| *w = 0);
            for wi in 0..words {
                let mut bits = labels[current * words + wi];
                while bits != 0 {
                    let p = wi * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let base = (x * n + p) * words;
                    for (acc, &s) in next.iter_mut().zip(&succ[base..base + words]) {
                        *acc |= s;
                    }
                }
            }
            let id = match index.get(next.as_slice()) {
                Some(&id) => id,
                None => {
                    let count = labels.len() / words;
                    if count >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    labels.extend_from_slice(&next);
                    index.insert(next.clone().into(), count as u32);
                    count as u32
                }
            };
            row.push(id);
        }
        current += 1;
    }

    let count = labels.len() / words;
    let final_mask = (0..count)
        .map(|i| {
            labels[i * words..(i + 1) * words]
                .iter()
                .zip(&finals)
                .any(|(l, f)| l & f != 0)
        })
        .collect();
    let delta = rows.into_iter().map(Transformation::from_raw).collect();
    Ok(SubsetDfa {
        dfa: Dfa::from_parts(nfa.alphabet().to_vec(), delta, 0, final_mask),
        nfa_size: n,
        words,
        labels,
    })
}
