//! Minimal complete DFAs by partition refinement.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use crate::constructions::{product_dfa, BooleanOp};
use crate::determinize::{determinize, determinize_capped};
use crate::dfa::Dfa;
use crate::error::Result;
use crate::nfa::EpsNfa;
use crate::transformation::Transformation;

/// The minimal complete DFA of `L(d)` in canonical numbering.
///
/// Unreachable states are dropped, indistinguishable states are merged by
/// Hopcroft-style worklist refinement, and the result is renumbered in BFS
/// order with alphabet-ordered expansion. Two DFAs accept the same language
/// iff their minimized forms are equal.
pub fn minimize(d: &Dfa) -> Dfa {
    let reachable = d.canonical();
    let classes = hopcroft_classes(&reachable);
    quotient(&reachable, &classes)
}

/// Same result as [`minimize`], computed by Moore's round-based refinement.
pub fn minimize_moore(d: &Dfa) -> Dfa {
    let reachable = d.canonical();
    let classes = moore_classes(&reachable);
    quotient(&reachable, &classes)
}

/// Number of states of the minimal DFA of `L(nfa)`.
pub fn state_complexity(nfa: &EpsNfa) -> usize {
    minimize(determinize(nfa).dfa()).size()
}

/// [`state_complexity`] with a bound on the subset construction.
pub fn state_complexity_capped(nfa: &EpsNfa, cap: usize) -> Result<usize> {
    Ok(minimize(determinize_capped(nfa, cap)?.dfa()).size())
}

/// Language equality, decided by emptiness of the symmetric-difference product.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> Result<bool> {
    let p = product_dfa(d1, d2, BooleanOp::SymmetricDifference)?;
    let empty = p.finals().next().is_none();
    Ok(empty)
}

/// A shortest word accepted by exactly one of the two DFAs, if any.
pub fn distinguishing_word(d1: &Dfa, d2: &Dfa) -> Result<Option<String>> {
    let p = product_dfa(d1, d2, BooleanOp::SymmetricDifference)?;
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; p.size()];
    let mut seen = vec![false; p.size()];
    let mut queue = VecDeque::from([p.initial()]);
    seen[p.initial()] = true;
    while let Some(s) = queue.pop_front() {
        if p.is_final(s) {
            let mut word = Vec::new();
            let mut cur = s;
            while let Some((prev, x)) = parent[cur] {
                word.push(x);
                cur = prev;
            }
            word.reverse();
            return Ok(Some(p.decode(&word)));
        }
        for x in 0..p.alphabet().len() {
            let t = p.step(s, x);
            if !std::mem::replace(&mut seen[t], true) {
                parent[t] = Some((s, x));
                queue.push_back(t);
            }
        }
    }
    Ok(None)
}

/// Collapses each class to one state and renumbers canonically.
fn quotient(d: &Dfa, classes: &[u32]) -> Dfa {
    let count = classes.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut repr = vec![usize::MAX; count];
    for (s, &c) in classes.iter().enumerate() {
        if repr[c as usize] == usize::MAX {
            repr[c as usize] = s;
        }
    }
    let delta = d
        .transformations()
        .iter()
        .map(|t| Transformation::from_raw(repr.iter().map(|&s| classes[t.apply(s)]).collect()))
        .collect();
    let finals = repr.iter().map(|&s| d.is_final(s)).collect();
    Dfa::from_parts(
        d.alphabet().to_vec(),
        delta,
        classes[d.initial()] as usize,
        finals,
    )
    .canonical()
}

/// Refinable partition of `0..n` with per-block marking.
struct Partition {
    elems: Vec<u32>,
    loc: Vec<u32>,
    block: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    marked: Vec<u32>,
    touched: Vec<u32>,
}

impl Partition {
    fn new(groups: &[Vec<u32>]) -> Self {
        let n: usize = groups.iter().map(Vec::len).sum();
        let mut p = Partition {
            elems: Vec::with_capacity(n),
            loc: vec![0; n],
            block: vec![0; n],
            start: Vec::new(),
            end: Vec::new(),
            marked: Vec::new(),
            touched: Vec::new(),
        };
        for g in groups.iter().filter(|g| !g.is_empty()) {
            let b = p.start.len() as u32;
            p.start.push(p.elems.len() as u32);
            for &s in g {
                p.loc[s as usize] = p.elems.len() as u32;
                p.block[s as usize] = b;
                p.elems.push(s);
            }
            p.end.push(p.elems.len() as u32);
            p.marked.push(0);
        }
        p
    }

    fn blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        (self.end[b] - self.start[b]) as usize
    }

    fn members(&self, b: usize) -> &[u32] {
        &self.elems[self.start[b] as usize..self.end[b] as usize]
    }

    fn mark(&mut self, s: u32) {
        let b = self.block[s as usize] as usize;
        let pos = self.loc[s as usize];
        let boundary = self.start[b] + self.marked[b];
        if pos < boundary {
            return;
        }
        if self.marked[b] == 0 {
            self.touched.push(b as u32);
        }
        let other = self.elems[boundary as usize];
        self.elems.swap(pos as usize, boundary as usize);
        self.loc[other as usize] = pos;
        self.loc[s as usize] = boundary;
        self.marked[b] += 1;
    }

    /// Splits every touched block into marked and unmarked parts. The
    /// smaller part becomes a new block; new block ids are returned.
    fn split_touched(&mut self, created: &mut Vec<u32>) {
        created.clear();
        while let Some(b) = self.touched.pop() {
            let b = b as usize;
            let k = std::mem::take(&mut self.marked[b]);
            let (lo, hi) = (self.start[b], self.end[b]);
            if k == hi - lo {
                continue;
            }
            let nb = self.start.len() as u32;
            let (ns, ne) = if k <= hi - lo - k {
                self.start[b] = lo + k;
                (lo, lo + k)
            } else {
                self.end[b] = lo + k;
                (lo + k, hi)
            };
            self.start.push(ns);
            self.end.push(ne);
            self.marked.push(0);
            for i in ns..ne {
                self.block[self.elems[i as usize] as usize] = nb;
            }
            created.push(nb);
        }
    }
}

/// Predecessor lists per letter in compressed-row form.
struct Inverse {
    offsets: Vec<u32>,
    sources: Vec<u32>,
    n: usize,
}

impl Inverse {
    fn new(d: &Dfa) -> Self {
        let n = d.size();
        let letters = d.alphabet().len();
        // offsets[x * (n + 1) + t] = first slot of the predecessors of t on x
        let mut offsets = vec![0u32; letters * (n + 1)];
        for (x, t) in d.transformations().iter().enumerate() {
            let row = &mut offsets[x * (n + 1)..(x + 1) * (n + 1)];
            for &target in t.raw() {
                row[target as usize + 1] += 1;
            }
            row[0] = (x * n) as u32;
            for i in 1..=n {
                row[i] += row[i - 1];
            }
        }
        let mut fill = offsets.clone();
        let mut sources = vec![0u32; letters * n];
        for (x, t) in d.transformations().iter().enumerate() {
            for (s, &target) in t.raw().iter().enumerate() {
                let slot = &mut fill[x * (n + 1) + target as usize];
                sources[*slot as usize] = s as u32;
                *slot += 1;
            }
        }
        Inverse {
            offsets,
            sources,
            n,
        }
    }

    fn preds(&self, x: usize, target: u32) -> &[u32] {
        let i = x * (self.n + 1) + target as usize;
        &self.sources[self.offsets[i] as usize..self.offsets[i + 1] as usize]
    }
}

/// Class index per state after Hopcroft refinement.
fn hopcroft_classes(d: &Dfa) -> Vec<u32> {
    let n = d.size();
    let letters = d.alphabet().len();
    let (finals, others): (Vec<u32>, Vec<u32>) =
        (0..n as u32).partition(|&s| d.is_final(s as usize));
    let mut part = Partition::new(&[finals, others]);
    let inverse = Inverse::new(d);

    let mut pending: Vec<(u32, u32)> = Vec::new();
    let mut queued: Vec<bool> = vec![false; part.blocks() * letters];
    if part.blocks() == 2 {
        let smaller = if part.size(0) <= part.size(1) { 0 } else { 1 };
        for x in 0..letters {
            pending.push((smaller, x as u32));
            queued[smaller as usize * letters + x] = true;
        }
    }

    let mut splitter: Vec<u32> = Vec::new();
    let mut created: Vec<u32> = Vec::new();
    while let Some((c, x)) = pending.pop() {
        queued[c as usize * letters + x as usize] = false;
        splitter.clear();
        splitter.extend_from_slice(part.members(c as usize));
        for &t in &splitter {
            for &s in inverse.preds(x as usize, t) {
                part.mark(s);
            }
        }
        part.split_touched(&mut created);
        queued.resize(part.blocks() * letters, false);
        // The new block is always the smaller half, so it is the one to
        // enqueue whether or not its parent was already pending.
        for &nb in &created {
            for y in 0..letters {
                queued[nb as usize * letters + y] = true;
                pending.push((nb, y as u32));
            }
        }
    }
    part.block
}

/// Class index per state after Moore refinement.
fn moore_classes(d: &Dfa) -> Vec<u32> {
    let n = d.size();
    let mut classes: Vec<u32> = (0..n).map(|s| d.is_final(s) as u32).collect();
    let mut count = classes.iter().collect::<std::collections::HashSet<_>>().len();
    loop {
        let mut ids: FxHashMap<Vec<u32>, u32> = FxHashMap::default();
        let next: Vec<u32> = (0..n)
            .map(|s| {
                let mut sig = Vec::with_capacity(d.alphabet().len() + 1);
                sig.push(classes[s]);
                sig.extend(d.transformations().iter().map(|t| classes[t.apply(s)]));
                let fresh = ids.len() as u32;
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let next_count = ids.len();
        classes = next;
        if next_count == count {
            return classes;
        }
        count = next_count;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{dfa_to_nfa, reverse_nfa, star_nfa};
    use crate::witness::{Family, WitnessSpec};

    fn w(family: Family, n: usize, order: &str) -> Dfa {
        WitnessSpec::new(family, n)
            .with_order(order)
            .unwrap()
            .build()
            .unwrap()
    }

    fn dfa(images: &[&[usize]], finals: &[usize]) -> Dfa {
        let alphabet = ('a'..).take(images.len()).collect();
        let delta = images
            .iter()
            .map(|i| Transformation::from_image(i.to_vec()).unwrap())
            .collect();
        Dfa::new(alphabet, delta, 0, finals.iter().copied()).unwrap()
    }

    #[test]
    fn witnesses_are_minimal() {
        for n in 3..=8 {
            assert_eq!(minimize(&w(Family::U3, n, "abc")).size(), n);
        }
    }

    #[test]
    fn duplicate_final_sinks_merge() {
        // 0 -a-> 1, 0 -b-> 2; 1 and 2 are accepting sinks
        let d = dfa(&[&[1, 1, 2], &[2, 1, 2]], &[1, 2]);
        assert_eq!(minimize(&d).size(), 2);
    }

    #[test]
    fn empty_language_is_one_state() {
        let d = w(Family::U3, 5, "abc");
        let p = product_dfa(&d, &d.complement(), BooleanOp::Intersection).unwrap();
        assert_eq!(minimize(&p).size(), 1);
        let p = product_dfa(&d, &d, BooleanOp::Difference).unwrap();
        assert_eq!(minimize(&p).size(), 1);
    }

    #[test]
    fn star_of_binary_restriction() {
        let d = w(Family::U3, 3, "abc").restrict(&['a', 'b']).unwrap();
        assert_eq!(state_complexity(&star_nfa(&d)), 6);
        let d = w(Family::U3, 4, "abc").restrict(&['a', 'b']).unwrap();
        assert_eq!(state_complexity(&star_nfa(&d)), 12);
    }

    #[test]
    fn complexity_examples() {
        assert_eq!(state_complexity(&dfa_to_nfa(&w(Family::U3, 5, "abc"))), 5);
        assert_eq!(state_complexity(&reverse_nfa(&w(Family::U3, 3, "abc"))), 8);
    }

    #[test]
    fn determinized_dfa_round_trips() {
        let d = w(Family::W4, 5, "dcba");
        let back = minimize(determinize(&dfa_to_nfa(&d)).dfa());
        assert_eq!(back, minimize(&d));
    }

    #[test]
    fn equivalence_examples() {
        let d = w(Family::U3, 4, "abc");
        assert!(equivalent(&d, &minimize(&d)).unwrap());
        assert!(!equivalent(&d, &d.complement()).unwrap());
        let e = w(Family::U3, 4, "bac");
        assert!(!equivalent(&d, &e).unwrap());
        let word = distinguishing_word(&d, &e).unwrap().unwrap();
        assert_ne!(d.run(&word).unwrap(), e.run(&word).unwrap());
        assert!(d.run("ab").unwrap() != e.run("ab").unwrap() || !word.is_empty());
        assert!(equivalent(&d, &w(Family::U4, 4, "abcd")).is_err());
    }

    #[test]
    fn moore_and_hopcroft_agree_on_witness_products() {
        let k = w(Family::U3, 4, "abc");
        for n in 3..6 {
            let l = minimize(determinize(&star_nfa(&w(Family::U3, n, "bac"))).dfa());
            for op in BooleanOp::ALL {
                let p = product_dfa(&k, &l, op).unwrap();
                assert_eq!(minimize(&p), minimize_moore(&p));
            }
        }
    }

    #[test]
    fn inverse_rows() {
        let d = dfa(&[&[1, 2, 0], &[0, 0, 2]], &[2]);
        let inv = Inverse::new(&d);
        assert_eq!(inv.preds(0, 0), [2]);
        assert_eq!(inv.preds(0, 1), [0]);
        assert_eq!(inv.preds(1, 0), [0, 1]);
        assert_eq!(inv.preds(1, 1), [] as [u32; 0]);
        assert_eq!(inv.preds(1, 2), [2]);
    }
}
