//! Nondeterministic automata with ε-moves.

use crate::dfa::check_alphabet;
use crate::error::{Error, Result};

/// An NFA with ε-edges and a set of initial states.
///
/// Sets of targets are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsNfa {
    alphabet: Vec<char>,
    /// `moves[state][letter]`
    moves: Vec<Vec<Vec<u32>>>,
    epsilon: Vec<Vec<u32>>,
    initials: Vec<u32>,
    finals: Vec<bool>,
}

impl EpsNfa {
    /// An NFA with `size` states and no edges, initials or finals.
    pub fn new(size: usize, alphabet: Vec<char>) -> Result<Self> {
        check_alphabet(&alphabet)?;
        if size == 0 {
            return Err(Error::ZeroDegree);
        }
        Ok(Self {
            moves: vec![vec![Vec::new(); alphabet.len()]; size],
            epsilon: vec![Vec::new(); size],
            initials: Vec::new(),
            finals: vec![false; size],
            alphabet,
        })
    }

    pub fn size(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    fn check(&self, s: usize) -> Result<()> {
        if s < self.size() {
            Ok(())
        } else {
            Err(Error::StateOutOfRange {
                index: s,
                degree: self.size(),
            })
        }
    }

    pub fn add_move(&mut self, from: usize, letter: usize, to: usize) -> Result<()> {
        self.check(from)?;
        self.check(to)?;
        if letter >= self.alphabet.len() {
            return Err(Error::StateOutOfRange {
                index: letter,
                degree: self.alphabet.len(),
            });
        }
        insert_sorted(&mut self.moves[from][letter], to as u32);
        Ok(())
    }

    pub fn add_epsilon(&mut self, from: usize, to: usize) -> Result<()> {
        self.check(from)?;
        self.check(to)?;
        insert_sorted(&mut self.epsilon[from], to as u32);
        Ok(())
    }

    pub fn add_initial(&mut self, s: usize) -> Result<()> {
        self.check(s)?;
        insert_sorted(&mut self.initials, s as u32);
        Ok(())
    }

    pub fn set_final(&mut self, s: usize, is_final: bool) -> Result<()> {
        self.check(s)?;
        self.finals[s] = is_final;
        Ok(())
    }

    pub fn moves(&self, from: usize, letter: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.moves[from][letter].iter().map(|&t| t as usize)
    }

    pub fn epsilon(&self, from: usize) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.epsilon[from].iter().map(|&t| t as usize)
    }

    pub fn initials(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.initials.iter().map(|&t| t as usize)
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(s, &f)| f.then_some(s))
    }

    pub fn is_final(&self, s: usize) -> bool {
        self.finals[s]
    }

    pub fn has_epsilon(&self) -> bool {
        self.epsilon.iter().any(|e| !e.is_empty())
    }

    /// Marks every state reachable from `set` by ε-edges (including `set`).
    pub fn close(&self, set: &mut [bool]) {
        let mut stack: Vec<usize> = (0..set.len()).filter(|&s| set[s]).collect();
        while let Some(s) = stack.pop() {
            for t in self.epsilon(s) {
                if !std::mem::replace(&mut set[t], true) {
                    stack.push(t);
                }
            }
        }
    }

    /// ε-closure of the given states, sorted.
    pub fn closure(&self, states: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set = vec![false; self.size()];
        for s in states {
            set[s] = true;
        }
        self.close(&mut set);
        (0..set.len()).filter(|&s| set[s]).collect()
    }

    /// Direct set-based simulation; `word` holds letter indices.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut current = vec![false; self.size()];
        for s in self.initials() {
            current[s] = true;
        }
        self.close(&mut current);
        let mut next = vec![false; self.size()];
        for &x in word {
            next.iter_mut().for_each(|b| *b = false);
            for s in (0..current.len()).filter(|&s| current[s]) {
                for t in self.moves(s, x) {
                    next[t] = true;
                }
            }
            self.close(&mut next);
            std::mem::swap(&mut current, &mut next);
        }
        current.iter().zip(&self.finals).any(|(&c, &f)| c && f)
    }

    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| {
                self.alphabet
                    .iter()
                    .position(|&x| x == c)
                    .ok_or(Error::UnknownLetter(c))
            })
            .collect()
    }

    /// Simulates a word given as a string.
    pub fn run(&self, word: &str) -> Result<bool> {
        Ok(self.accepts(&self.encode(word)?))
    }
}

fn insert_sorted(v: &mut Vec<u32>, x: u32) {
    if let Err(pos) = v.binary_search(&x) {
        v.insert(pos, x);
    }
}
