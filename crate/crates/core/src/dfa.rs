//! Complete deterministic automata.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// A complete DFA: every letter acts on the states by a [`Transformation`].
///
/// Letters are single printable characters; the alphabet keeps its
/// declaration order, which fixes serialization and canonical numbering.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Dfa {
    alphabet: Vec<char>,
    delta: Vec<Transformation>,
    initial: usize,
    finals: Vec<bool>,
}

impl Dfa {
    pub fn new(
        alphabet: Vec<char>,
        delta: Vec<Transformation>,
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Self> {
        check_alphabet(&alphabet)?;
        if delta.len() != alphabet.len() {
            return Err(Error::InvalidAlphabet(format!(
                "{} letters but {} transformations",
                alphabet.len(),
                delta.len()
            )));
        }
        let size = match delta.first() {
            Some(t) => t.degree(),
            None => {
                return Err(Error::InvalidAlphabet(
                    "alphabet must contain at least one letter".into(),
                ))
            }
        };
        if let Some(t) = delta.iter().find(|t| t.degree() != size) {
            return Err(Error::DegreeMismatch {
                left: size,
                right: t.degree(),
            });
        }
        if initial >= size {
            return Err(Error::StateOutOfRange {
                index: initial,
                degree: size,
            });
        }
        let mut mask = vec![false; size];
        for f in finals {
            if f >= size {
                return Err(Error::StateOutOfRange {
                    index: f,
                    degree: size,
                });
            }
            mask[f] = true;
        }
        Ok(Self {
            alphabet,
            delta,
            initial,
            finals: mask,
        })
    }

    /// Trusted constructor for internal pipelines that already uphold the invariants.
    pub(crate) fn from_parts(
        alphabet: Vec<char>,
        delta: Vec<Transformation>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Self {
        debug_assert_eq!(alphabet.len(), delta.len());
        debug_assert!(delta.iter().all(|t| t.degree() == finals.len()));
        debug_assert!(initial < finals.len());
        Self {
            alphabet,
            delta,
            initial,
            finals,
        }
    }

    /// Number of states.
    pub fn size(&self) -> usize {
        self.finals.len()
    }

    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    pub fn initial(&self) -> usize {
        self.initial
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

    pub fn letter_index(&self, letter: char) -> Option<usize> {
        self.alphabet.iter().position(|&c| c == letter)
    }

    /// The transformation performed by `letter`.
    pub fn delta(&self, letter: char) -> Option<&Transformation> {
        self.letter_index(letter).map(|i| &self.delta[i])
    }

    /// Transformations in alphabet order.
    pub fn transformations(&self) -> &[Transformation] {
        &self.delta
    }

    #[inline]
    pub fn step(&self, state: usize, letter_index: usize) -> usize {
        self.delta[letter_index].apply(state)
    }

    /// Runs a word given as a string of letters.
    pub fn run(&self, word: &str) -> Result<bool> {
        let letters = self.encode(word)?;
        Ok(self.accepts(&letters))
    }

    /// Runs a word given as letter indices into [`Dfa::alphabet`].
    pub fn accepts(&self, word: &[usize]) -> bool {
        self.finals[self.state_after(self.initial, word)]
    }

    pub fn state_after(&self, from: usize, word: &[usize]) -> usize {
        word.iter().fold(from, |s, &x| self.step(s, x))
    }

    /// Translates a string into letter indices.
    pub fn encode(&self, word: &str) -> Result<Vec<usize>> {
        word.chars()
            .map(|c| self.letter_index(c).ok_or(Error::UnknownLetter(c)))
            .collect()
    }

    pub fn decode(&self, word: &[usize]) -> String {
        word.iter().map(|&i| self.alphabet[i]).collect()
    }

    /// Swaps final and non-final states.
    pub fn complement(&self) -> Dfa {
        Self {
            finals: self.finals.iter().map(|f| !f).collect(),
            ..self.clone()
        }
    }

    /// Same automaton with a different final-state set.
    pub fn with_finals(&self, finals: impl IntoIterator<Item = usize>) -> Result<Dfa> {
        Dfa::new(
            self.alphabet.clone(),
            self.delta.clone(),
            self.initial,
            finals,
        )
    }

    /// Renames letters: the returned automaton performs on `pi(x)` what
    /// `self` performs on `x`. The alphabet order is unchanged.
    pub fn permute_letters(&self, pi: &LetterPermutation) -> Result<Dfa> {
        let image = pi.total_on(&self.alphabet)?;
        let mut delta = self.delta.clone();
        for (from, &to) in image.iter().enumerate() {
            delta[to] = self.delta[from].clone();
        }
        Ok(Self {
            delta,
            ..self.clone()
        })
    }

    /// Projection onto a sub-alphabet: rows of all other letters are dropped.
    /// The kept letters retain their original relative order.
    pub fn restrict(&self, keep: &[char]) -> Result<Dfa> {
        for &c in keep {
            if self.letter_index(c).is_none() {
                return Err(Error::UnknownLetter(c));
            }
        }
        let (alphabet, delta): (Vec<char>, Vec<Transformation>) = self
            .alphabet
            .iter()
            .zip(&self.delta)
            .filter(|(c, _)| keep.contains(c))
            .map(|(&c, t)| (c, t.clone()))
            .unzip();
        if alphabet.is_empty() {
            return Err(Error::InvalidAlphabet("projection onto no letters".into()));
        }
        Ok(Self {
            alphabet,
            delta,
            ..self.clone()
        })
    }

    /// States reachable from the initial state, in BFS order with
    /// alphabet-ordered expansion.
    pub fn bfs_order(&self) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut order = Vec::with_capacity(self.size());
        let mut queue = VecDeque::new();
        seen[self.initial] = true;
        queue.push_back(self.initial);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for t in &self.delta {
                let next = t.apply(s);
                if !std::mem::replace(&mut seen[next], true) {
                    queue.push_back(next);
                }
            }
        }
        order
    }

    /// Drops unreachable states and renumbers the rest in BFS order.
    pub fn canonical(&self) -> Dfa {
        let order = self.bfs_order();
        let mut rename = vec![u32::MAX; self.size()];
        for (new, &old) in order.iter().enumerate() {
            rename[old] = new as u32;
        }
        let delta = self
            .delta
            .iter()
            .map(|t| {
                Transformation::from_raw(
                    order.iter().map(|&s| rename[t.apply(s)]).collect(),
                )
            })
            .collect();
        let finals = order.iter().map(|&s| self.finals[s]).collect();
        Dfa::from_parts(self.alphabet.clone(), delta, 0, finals)
    }

    /// Serializes to the line-oriented text format.
    pub fn to_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "dfa {}", self.size());
        out.push_str("alphabet");
        for c in &self.alphabet {
            let _ = write!(out, " {c}");
        }
        out.push('\n');
        let _ = writeln!(out, "initial {}", self.initial);
        out.push_str("finals");
        for f in self.finals() {
            let _ = write!(out, " {f}");
        }
        out.push('\n');
        for (c, t) in self.alphabet.iter().zip(&self.delta) {
            out.push(*c);
            for s in t.image() {
                let _ = write!(out, " {s}");
            }
            out.push('\n');
        }
        out
    }

    /// Parses the text format written by [`Dfa::to_text`].
    pub fn from_text(text: &str) -> Result<Dfa> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
            .filter(|(_, l)| !l.trim().is_empty());
        let mut last_line = 0;
        let mut next = |what: &str| -> Result<(usize, Vec<&str>)> {
            match lines.next() {
                Some((no, l)) => {
                    last_line = no;
                    Ok((no, l.split_whitespace().collect()))
                }
                None => Err(Error::Parse {
                    line: last_line + 1,
                    cause: format!("unexpected end of input, expected {what}"),
                }),
            }
        };

        let (no, words) = next("`dfa <n>`")?;
        let size = match words.as_slice() {
            ["dfa", n] => parse_index(n, no)?,
            _ => return Err(parse_err(no, "expected `dfa <n>`")),
        };
        if size == 0 {
            return Err(parse_err(no, "state count must be positive"));
        }

        let (no, words) = next("`alphabet` line")?;
        if words.first() != Some(&"alphabet") {
            return Err(parse_err(no, "expected `alphabet` line"));
        }
        let mut alphabet = Vec::new();
        for w in &words[1..] {
            let mut chars = w.chars();
            match (chars.next(), chars.next()) {
                (Some(c), None) => alphabet.push(c),
                _ => return Err(parse_err(no, format!("letter {w:?} is not a single symbol"))),
            }
        }
        check_alphabet(&alphabet).map_err(|e| parse_err(no, e.to_string()))?;

        let (no, words) = next("`initial` line")?;
        let initial = match words.as_slice() {
            ["initial", s] => parse_state(s, size, no)?,
            _ => return Err(parse_err(no, "expected `initial <state>`")),
        };

        let (no, words) = next("`finals` line")?;
        if words.first() != Some(&"finals") {
            return Err(parse_err(no, "expected `finals` line"));
        }
        let finals = words[1..]
            .iter()
            .map(|s| parse_state(s, size, no))
            .collect::<Result<Vec<_>>>()?;
        if finals.windows(2).any(|w| w[0] >= w[1]) {
            return Err(parse_err(no, "final states must be strictly ascending"));
        }

        let mut delta = Vec::with_capacity(alphabet.len());
        for &letter in &alphabet {
            let (no, words) = next("a transition row").map_err(|e| match e {
                Error::Parse { line, .. } => Error::Parse {
                    line,
                    cause: format!("incomplete delta: missing row for letter {letter:?}"),
                },
                e => e,
            })?;
            let expected = letter.to_string();
            if words.first().copied() != Some(expected.as_str()) {
                return Err(parse_err(
                    no,
                    format!("incomplete delta: expected row for letter {letter:?}"),
                ));
            }
            if words.len() != size + 1 {
                return Err(parse_err(
                    no,
                    format!(
                        "incomplete delta: row {letter:?} has {} targets, expected {size}",
                        words.len() - 1
                    ),
                ));
            }
            let image = words[1..]
                .iter()
                .map(|s| parse_state(s, size, no).map(|t| t as u32))
                .collect::<Result<Vec<_>>>()?;
            delta.push(Transformation::from_raw(image));
        }
        if let Some((no, _)) = lines.next() {
            return Err(parse_err(no, "unexpected trailing line"));
        }
        Dfa::new(alphabet, delta, initial, finals)
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Display for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Dfa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Dfa::from_text(s)
    }
}

/// A renaming of alphabet letters. Letters not mentioned map to themselves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LetterPermutation {
    pairs: Vec<(char, char)>,
}

impl LetterPermutation {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (char, char)>) -> Self {
        Self {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Maps `domain[i]` to `image[i]`, e.g. `("abc", "bac")` swaps `a` and `b`.
    pub fn from_orders(domain: &str, image: &str) -> Result<Self> {
        if domain.chars().count() != image.chars().count() {
            return Err(Error::NotBijective(format!(
                "{domain:?} and {image:?} differ in length"
            )));
        }
        Ok(Self::from_pairs(domain.chars().zip(image.chars())))
    }

    pub fn inverse(&self) -> Self {
        Self::from_pairs(self.pairs.iter().map(|&(a, b)| (b, a)))
    }

    pub fn apply(&self, letter: char) -> char {
        self.pairs
            .iter()
            .find(|(a, _)| *a == letter)
            .map_or(letter, |&(_, b)| b)
    }

    /// Image of every alphabet position, validated to be a bijection.
    fn total_on(&self, alphabet: &[char]) -> Result<Vec<usize>> {
        let index = |c: char| {
            alphabet
                .iter()
                .position(|&x| x == c)
                .ok_or(Error::UnknownLetter(c))
        };
        let mut seen_domain = vec![false; alphabet.len()];
        for &(a, b) in &self.pairs {
            let i = index(a)?;
            index(b)?;
            if std::mem::replace(&mut seen_domain[i], true) {
                return Err(Error::NotBijective(format!("{a:?} mapped twice")));
            }
        }
        let image: Vec<usize> = alphabet
            .iter()
            .map(|&c| index(self.apply(c)))
            .collect::<Result<_>>()?;
        let mut hit = vec![false; alphabet.len()];
        for &i in &image {
            if std::mem::replace(&mut hit[i], true) {
                return Err(Error::NotBijective(format!(
                    "{:?} is the image of two letters",
                    alphabet[i]
                )));
            }
        }
        Ok(image)
    }
}

pub(crate) fn check_alphabet(alphabet: &[char]) -> Result<()> {
    for (i, &c) in alphabet.iter().enumerate() {
        if c.is_whitespace() || c.is_control() {
            return Err(Error::InvalidAlphabet(format!(
                "letter {c:?} is not a printable symbol"
            )));
        }
        if alphabet[..i].contains(&c) {
            return Err(Error::InvalidAlphabet(format!("duplicate letter {c:?}")));
        }
    }
    Ok(())
}

fn parse_err(line: usize, cause: impl Into<String>) -> Error {
    Error::Parse {
        line,
        cause: cause.into(),
    }
}

fn parse_index(s: &str, line: usize) -> Result<usize> {
    s.parse()
        .map_err(|_| parse_err(line, format!("{s:?} is not a non-negative integer")))
}

fn parse_state(s: &str, size: usize, line: usize) -> Result<usize> {
    let v = parse_index(s, line)?;
    if v >= size {
        return Err(parse_err(line, format!("state {v} out of range 0..{size}")));
    }
    Ok(v)
}
