//! ε-NFA constructions for star, concatenation and reversal, and the
//! direct product of two DFAs under a boolean operation.

use std::collections::VecDeque;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::nfa::EpsNfa;
use crate::transformation::Transformation;

/// The four binary boolean operations. `Difference` is `left \ right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BooleanOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl BooleanOp {
    pub const ALL: [BooleanOp; 4] = [
        BooleanOp::Union,
        BooleanOp::Intersection,
        BooleanOp::Difference,
        BooleanOp::SymmetricDifference,
    ];

    #[inline]
    pub fn combine(self, left: bool, right: bool) -> bool {
        match self {
            BooleanOp::Union => left || right,
            BooleanOp::Intersection => left && right,
            BooleanOp::Difference => left && !right,
            BooleanOp::SymmetricDifference => left != right,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            BooleanOp::Union => '∪',
            BooleanOp::Intersection => '∩',
            BooleanOp::Difference => '\\',
            BooleanOp::SymmetricDifference => '⊕',
        }
    }
}

impl fmt::Display for BooleanOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BooleanOp::Union => "union",
            BooleanOp::Intersection => "intersection",
            BooleanOp::Difference => "difference",
            BooleanOp::SymmetricDifference => "symmetric-difference",
        })
    }
}

/// The DFA as an NFA without ε-edges.
pub fn dfa_to_nfa(d: &Dfa) -> EpsNfa {
    let mut nfa = EpsNfa::new(d.size(), d.alphabet().to_vec()).expect("dfa is valid");
    for s in 0..d.size() {
        for (x, t) in d.transformations().iter().enumerate() {
            nfa.add_move(s, x, t.apply(s)).expect("in range");
        }
        nfa.set_final(s, d.is_final(s)).expect("in range");
    }
    nfa.add_initial(d.initial()).expect("in range");
    nfa
}

/// NFA for `L(d)*`.
///
/// A fresh state `s` (index `d.size()`) is the only initial state; it is final
/// and copies the outgoing letter edges of the initial state. Every final
/// state of `d` gets an ε-edge back to the initial state of `d`.
pub fn star_nfa(d: &Dfa) -> EpsNfa {
    let n = d.size();
    let mut nfa = EpsNfa::new(n + 1, d.alphabet().to_vec()).expect("dfa is valid");
    for s in 0..n {
        for (x, t) in d.transformations().iter().enumerate() {
            nfa.add_move(s, x, t.apply(s)).expect("in range");
        }
        nfa.set_final(s, d.is_final(s)).expect("in range");
    }
    for (x, t) in d.transformations().iter().enumerate() {
        nfa.add_move(n, x, t.apply(d.initial())).expect("in range");
    }
    for f in d.finals() {
        nfa.add_epsilon(f, d.initial()).expect("in range");
    }
    nfa.set_final(n, true).expect("in range");
    nfa.add_initial(n).expect("in range");
    nfa
}

/// The star NFA of `d` read at the root: the fresh state and the initial
/// state of `d` are the only accepting states. It accepts `L(d)* R`, where
/// `R` is the set of words taking the initial state of `d` back to itself.
pub fn rooted_star_nfa(d: &Dfa) -> EpsNfa {
    let mut nfa = star_nfa(d);
    for f in d.finals() {
        nfa.set_final(f, false).expect("in range");
    }
    nfa.set_final(d.initial(), true).expect("in range");
    nfa
}

/// NFA for `L(nfa)*` built on an NFA: a fresh final initial state with
/// ε-edges to the old initials, and ε-edges from every final state back to
/// the old initials.
pub fn star_of_nfa(nfa: &EpsNfa) -> EpsNfa {
    let n = nfa.size();
    let mut out = EpsNfa::new(n + 1, nfa.alphabet().to_vec()).expect("nfa is valid");
    let initials: Vec<usize> = nfa.initials().collect();
    for s in 0..n {
        for x in 0..nfa.alphabet().len() {
            for t in nfa.moves(s, x) {
                out.add_move(s, x, t).expect("in range");
            }
        }
        for t in nfa.epsilon(s) {
            out.add_epsilon(s, t).expect("in range");
        }
        if nfa.is_final(s) {
            out.set_final(s, true).expect("in range");
            for &i in &initials {
                out.add_epsilon(s, i).expect("in range");
            }
        }
    }
    for &i in &initials {
        out.add_epsilon(n, i).expect("in range");
    }
    out.set_final(n, true).expect("in range");
    out.add_initial(n).expect("in range");
    out
}

/// NFA for `L(left) ∪ L(right)`: the disjoint sum of both automata, with
/// `right` shifted by `left.size()`.
pub fn union_nfa(left: &EpsNfa, right: &EpsNfa) -> Result<EpsNfa> {
    if left.alphabet() != right.alphabet() {
        return Err(alphabet_mismatch(left.alphabet(), right.alphabet()));
    }
    let shift = left.size();
    let mut nfa = EpsNfa::new(shift + right.size(), left.alphabet().to_vec())?;
    for (base, part) in [(0, left), (shift, right)] {
        for s in 0..part.size() {
            for x in 0..part.alphabet().len() {
                for t in part.moves(s, x) {
                    nfa.add_move(base + s, x, base + t)?;
                }
            }
            for t in part.epsilon(s) {
                nfa.add_epsilon(base + s, base + t)?;
            }
            nfa.set_final(base + s, part.is_final(s))?;
        }
        for i in part.initials() {
            nfa.add_initial(base + i)?;
        }
    }
    Ok(nfa)
}

/// NFA for `L(left) L(right)`.
///
/// States of `right` are shifted by `left.size()`. Finals of `left` lose
/// their final status and gain ε-edges to every initial state of `right`.
pub fn concat_nfa(left: &EpsNfa, right: &EpsNfa) -> Result<EpsNfa> {
    if left.alphabet() != right.alphabet() {
        return Err(alphabet_mismatch(left.alphabet(), right.alphabet()));
    }
    let shift = left.size();
    let mut nfa = EpsNfa::new(shift + right.size(), left.alphabet().to_vec())?;
    for (base, part) in [(0, left), (shift, right)] {
        for s in 0..part.size() {
            for x in 0..part.alphabet().len() {
                for t in part.moves(s, x) {
                    nfa.add_move(base + s, x, base + t)?;
                }
            }
            for t in part.epsilon(s) {
                nfa.add_epsilon(base + s, base + t)?;
            }
        }
    }
    for f in left.finals() {
        for i in right.initials() {
            nfa.add_epsilon(f, shift + i)?;
        }
    }
    for i in left.initials() {
        nfa.add_initial(i)?;
    }
    for f in right.finals() {
        nfa.set_final(shift + f, true)?;
    }
    Ok(nfa)
}

/// NFA for the reversal of `L(d)`: all edges flipped, the finals of `d`
/// become the initial states and the initial state the only final.
pub fn reverse_nfa(d: &Dfa) -> EpsNfa {
    let mut nfa = EpsNfa::new(d.size(), d.alphabet().to_vec()).expect("dfa is valid");
    for s in 0..d.size() {
        for (x, t) in d.transformations().iter().enumerate() {
            nfa.add_move(t.apply(s), x, s).expect("in range");
        }
    }
    for f in d.finals() {
        nfa.add_initial(f).expect("in range");
    }
    nfa.set_final(d.initial(), true).expect("in range");
    nfa
}

/// Direct product of two DFAs, restricted to pairs reachable from the
/// initial pair. States are numbered in BFS order with alphabet-ordered
/// expansion; a pair is final when `op` holds on its components.
pub fn product_dfa(d1: &Dfa, d2: &Dfa, op: BooleanOp) -> Result<Dfa> {
    if d1.alphabet() != d2.alphabet() {
        return Err(alphabet_mismatch(d1.alphabet(), d2.alphabet()));
    }
    let letters = d1.alphabet().len();
    let mut index: FxHashMap<(u32, u32), u32> = FxHashMap::default();
    let mut pairs: Vec<(u32, u32)> = Vec::new();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); letters];
    let mut queue = VecDeque::new();

    let start = (d1.initial() as u32, d2.initial() as u32);
    index.insert(start, 0);
    pairs.push(start);
    queue.push_back(0u32);
    while let Some(id) = queue.pop_front() {
        let (p, q) = pairs[id as usize];
        for (x, row) in rows.iter_mut().enumerate() {
            let next = (
                d1.step(p as usize, x) as u32,
                d2.step(q as usize, x) as u32,
            );
            let target = *index.entry(next).or_insert_with(|| {
                pairs.push(next);
                let t = (pairs.len() - 1) as u32;
                queue.push_back(t);
                t
            });
            debug_assert_eq!(row.len(), id as usize);
            row.push(target);
        }
    }
    let finals = pairs
        .iter()
        .map(|&(p, q)| op.combine(d1.is_final(p as usize), d2.is_final(q as usize)))
        .collect();
    let delta = rows.into_iter().map(Transformation::from_raw).collect();
    Ok(Dfa::from_parts(d1.alphabet().to_vec(), delta, 0, finals))
}

fn alphabet_mismatch(left: &[char], right: &[char]) -> Error {
    Error::AlphabetMismatch {
        left: left.iter().collect(),
        right: right.iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{Family, WitnessSpec};

    fn w(family: Family, n: usize, order: &str) -> Dfa {
        WitnessSpec::new(family, n)
            .with_order(order)
            .unwrap()
            .build()
            .unwrap()
    }

    #[test]
    fn dfa_embedding() {
        let d = w(Family::U3, 3, "abc");
        let n = dfa_to_nfa(&d);
        assert_eq!(n.size(), 3);
        assert_eq!(n.initials().collect::<Vec<_>>(), [0]);
        assert_eq!(n.finals().collect::<Vec<_>>(), [2]);
        assert!(!n.has_epsilon());
    }

    #[test]
    fn star_nfa_shape() {
        // U_5(b,a,c): b is the 5-cycle, a swaps 0 and 1, c sends 4 to 0.
        let d = w(Family::U3, 5, "bac");
        let n = star_nfa(&d);
        assert_eq!(n.size(), 6);
        assert_eq!(n.initials().collect::<Vec<_>>(), [5]);
        assert_eq!(n.finals().collect::<Vec<_>>(), [4, 5]);
        let (a, b, c) = (0, 1, 2);
        assert_eq!(n.moves(5, a).collect::<Vec<_>>(), [1]);
        assert_eq!(n.moves(5, b).collect::<Vec<_>>(), [1]);
        assert_eq!(n.moves(5, c).collect::<Vec<_>>(), [0]);
        assert_eq!(n.epsilon(4).collect::<Vec<_>>(), [0]);
        assert_eq!((0..4).map(|s| n.epsilon(s).len()).sum::<usize>(), 0);
        assert_eq!(n.epsilon(5).len(), 0);
        assert!(n.run("").unwrap());
    }

    #[test]
    fn concat_nfa_shape() {
        let k = w(Family::T3, 4, "abc");
        let l = w(Family::T3, 5, "bac");
        let n = concat_nfa(&dfa_to_nfa(&k), &star_nfa(&l)).unwrap();
        assert_eq!(n.size(), 10);
        assert_eq!(n.initials().collect::<Vec<_>>(), [0]);
        // finals of L* (shifted): 4+4 = 8 and s = 4+5 = 9; q_3 is not final
        assert_eq!(n.finals().collect::<Vec<_>>(), [8, 9]);
        assert_eq!(n.epsilon(3).collect::<Vec<_>>(), [9]);
        assert_eq!(n.epsilon(8).collect::<Vec<_>>(), [4]);
    }

    #[test]
    fn concat_with_epsilon_language() {
        let d = w(Family::U3, 3, "abc");
        let mut eps = EpsNfa::new(1, d.alphabet().to_vec()).unwrap();
        eps.add_initial(0).unwrap();
        eps.set_final(0, true).unwrap();
        let n = concat_nfa(&dfa_to_nfa(&d), &eps).unwrap();
        for word in ["", "a", "aa", "ab", "aab", "ca", "aaaaa", "bcaa"] {
            assert_eq!(n.run(word).unwrap(), d.run(word).unwrap(), "{word}");
        }
    }

    #[test]
    fn concat_rejects_alphabet_mismatch() {
        let k = dfa_to_nfa(&w(Family::U3, 3, "abc"));
        let l = dfa_to_nfa(&w(Family::U4, 3, "abcd"));
        assert!(matches!(concat_nfa(&k, &l), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn reverse_initials_are_finals() {
        let n = reverse_nfa(&w(Family::U3, 3, "abc"));
        assert_eq!(n.initials().collect::<Vec<_>>(), [2]);
        assert_eq!(n.finals().collect::<Vec<_>>(), [0]);
    }

    #[test]
    fn product_is_reachable_and_semantic() {
        let k = w(Family::U3, 4, "abc");
        let l = w(Family::U3, 5, "bac");
        let p = product_dfa(&k, &l, BooleanOp::Union).unwrap();
        assert_eq!(p.size(), 20);
        let q = product_dfa(&k, &k, BooleanOp::Intersection).unwrap();
        assert_eq!(q.size(), 4);
        assert!(product_dfa(&k, &w(Family::U4, 4, "abcd"), BooleanOp::Union).is_err());
    }

    #[test]
    fn rooted_star_accepts_star_then_return() {
        let w4 = w(Family::W4, 3, "abcd");
        let nfa = rooted_star_nfa(&w4);
        assert!(nfa.run("").unwrap());
        // "aa" ends in the final state 2, whose ε-edge leads back to 0
        assert!(nfa.run("aa").unwrap());
        assert!(nfa.run("aaa").unwrap());
        assert!(!nfa.run("a").unwrap());
        assert!(!nfa.run("ad").unwrap());
        // the plain star NFA rejects "aaa" but the rooted one accepts it
        assert!(!star_nfa(&w4).run("aaa").unwrap());
    }

    #[test]
    fn star_of_nfa_agrees_with_star_nfa() {
        let d = w(Family::U3, 4, "abc");
        let (a, b) = (star_nfa(&d), star_of_nfa(&dfa_to_nfa(&d)));
        for word in ["", "a", "aaa", "aaab", "aaaaaa", "cab", "aaacaaa", "baaa"] {
            assert_eq!(a.run(word).unwrap(), b.run(word).unwrap(), "{word:?}");
        }
    }

    #[test]
    fn union_nfa_is_disjoint_sum() {
        let k = w(Family::U3, 3, "abc");
        let l = w(Family::U3, 4, "bac");
        let u = union_nfa(&dfa_to_nfa(&k), &dfa_to_nfa(&l)).unwrap();
        assert_eq!(u.size(), 7);
        assert_eq!(u.initials().collect::<Vec<_>>(), [0, 3]);
        for word in ["", "aa", "aaa", "bbb", "abab", "cab", "bcb"] {
            assert_eq!(u.run(word).unwrap(), k.run(word).unwrap() || l.run(word).unwrap());
        }
    }

    #[test]
    fn inputs_are_untouched() {
        let d = w(Family::U3, 4, "abc");
        let copy = d.clone();
        let _ = star_nfa(&d);
        let _ = reverse_nfa(&d);
        let _ = product_dfa(&d, &d, BooleanOp::SymmetricDifference).unwrap();
        assert_eq!(d, copy);
    }
}
