//! Declarative construction of the witness families and their dialects.
//!
//! A witness is named by a family, a state count `n`, and a letter order.
//! The order says which letter plays each canonical role: `U_5(d,c,b,a)`
//! is the family `U` at `n = 5` where `d` performs the cycle, `c` the
//! transposition `(0,1)`, `b` the singular map `n-1 -> 0`, and `a` the
//! identity.
//!
//! The textual spelling accepted by [`WitnessSpec::parse`] is
//! `FAMILY:n=N[:order=LETTERS][:finals=0|last][:keep=LETTERS][:complement]`,
//! for example `U:n=5:order=dcba`, `W0:n=4:order=abcd` or `JO6L:n=5`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use crate::dfa::{Dfa, LetterPermutation};
use crate::error::{Error, Result};
use crate::transformation::Transformation;

/// Witness families. The digit is the size of the canonical alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `U_n(a,b,c)`: cycle, transposition `(0,1)`, singular `n-1 -> 0`; finals `{n-1}`.
    U3,
    /// `U_n(a,b,c)` with finals `{0}`.
    UZero3,
    /// `T_n(a,b,c)`: cycle, transposition `(0,1)`, singular `1 -> 0`; finals `{n-1}`.
    T3,
    /// `S_n(a,b)`: cycle, singular `0 -> 1`; finals `{0}`.
    S2,
    /// `U_n(a,b,c,d)`: `U3` plus the identity `d`.
    U4,
    /// `U4` with finals `{0}`.
    UZero4,
    /// `W_n(a,b,c,d)`: cycle, transposition `(n-2,n-1)`, singular `1 -> 0`, identity.
    W4,
    /// `W4` with finals `{0}`.
    WZero4,
    /// `U_n(a,b,c,d,e)`: `U4` plus the subcycle `e = (1,..,n-1)`.
    U5,
    /// Left operand of the six-letter pair for the star of a difference.
    Jo6K,
    /// Right operand of the six-letter pair, used complemented.
    Jo6L,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::U3,
        Family::UZero3,
        Family::T3,
        Family::S2,
        Family::U4,
        Family::UZero4,
        Family::W4,
        Family::WZero4,
        Family::U5,
        Family::Jo6K,
        Family::Jo6L,
    ];

    pub fn arity(self) -> usize {
        match self {
            Family::S2 => 2,
            Family::U3 | Family::UZero3 | Family::T3 => 3,
            Family::U4 | Family::UZero4 | Family::W4 | Family::WZero4 => 4,
            Family::U5 => 5,
            Family::Jo6K | Family::Jo6L => 6,
        }
    }

    /// Canonical letters `a, b, ..` in role order.
    pub fn letters(self) -> Vec<char> {
        ('a'..).take(self.arity()).collect()
    }

    fn default_finals(self) -> Finals {
        match self {
            Family::UZero3 | Family::UZero4 | Family::WZero4 | Family::S2 => Finals::Zero,
            _ => Finals::Last,
        }
    }

    /// Transformations of the canonical letters, in role order.
    fn transformations(self, n: usize) -> Result<Vec<Transformation>> {
        use Transformation as T;
        Ok(match self {
            Family::U3 | Family::UZero3 => {
                vec![T::cycle(n)?, T::transposition(0, 1, n)?, T::singular(n - 1, 0, n)?]
            }
            Family::T3 => vec![T::cycle(n)?, T::transposition(0, 1, n)?, T::singular(1, 0, n)?],
            Family::S2 => vec![T::cycle(n)?, T::singular(0, 1, n)?],
            Family::U4 | Family::UZero4 => vec![
                T::cycle(n)?,
                T::transposition(0, 1, n)?,
                T::singular(n - 1, 0, n)?,
                T::identity(n)?,
            ],
            Family::W4 | Family::WZero4 => vec![
                T::cycle(n)?,
                T::transposition(n - 2, n - 1, n)?,
                T::singular(1, 0, n)?,
                T::identity(n)?,
            ],
            Family::U5 => vec![
                T::cycle(n)?,
                T::transposition(0, 1, n)?,
                T::singular(n - 1, 0, n)?,
                T::identity(n)?,
                T::subcycle(1, n - 1, n)?,
            ],
            Family::Jo6K => vec![
                T::cycle(n)?,
                T::identity(n)?,
                T::subcycle(1, n - 1, n)?,
                T::identity(n)?,
                T::singular(1, 0, n)?,
                T::identity(n)?,
            ],
            Family::Jo6L => vec![
                T::cycle(n)?,
                T::cycle(n)?,
                T::identity(n)?,
                T::subcycle(1, n - 1, n)?,
                T::identity(n)?,
                T::singular(1, 0, n)?,
            ],
        })
    }

    fn prefix(self) -> &'static str {
        match self {
            Family::U3 | Family::U4 => "U",
            Family::UZero3 | Family::UZero4 => "U0",
            Family::T3 => "T",
            Family::S2 => "S",
            Family::W4 => "W",
            Family::WZero4 => "W0",
            Family::U5 => "U5L",
            Family::Jo6K => "JO6K",
            Family::Jo6L => "JO6L",
        }
    }
}

/// Which final-state set a witness uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Finals {
    /// `{n-1}`
    Last,
    /// `{0}`
    Zero,
}

/// A fully determined witness automaton.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WitnessSpec {
    pub family: Family,
    pub n: usize,
    /// `letter_order[i]` is the letter that performs canonical role `i`.
    pub letter_order: Vec<char>,
    pub finals_override: Option<Finals>,
    /// Alphabet projection applied after renaming, e.g. `U_n(a,b,∅)`.
    pub keep: Option<Vec<char>>,
    /// Take the complement of the built automaton.
    pub complement: bool,
}

impl WitnessSpec {
    /// Canonical letter order, default finals.
    pub fn new(family: Family, n: usize) -> Self {
        Self {
            family,
            n,
            letter_order: family.letters(),
            finals_override: None,
            keep: None,
            complement: false,
        }
    }

    pub fn with_order(mut self, order: &str) -> Result<Self> {
        self.letter_order = order.chars().collect();
        self.check_order()?;
        Ok(self)
    }

    pub fn with_finals(mut self, finals: Finals) -> Self {
        self.finals_override = Some(finals);
        self
    }

    pub fn keep(mut self, letters: &str) -> Self {
        self.keep = Some(letters.chars().collect());
        self
    }

    pub fn complemented(mut self) -> Self {
        self.complement = !self.complement;
        self
    }

    fn check_order(&self) -> Result<()> {
        let canonical = self.family.letters();
        let set: HashSet<char> = self.letter_order.iter().copied().collect();
        if self.letter_order.len() != canonical.len()
            || set.len() != canonical.len()
            || !canonical.iter().all(|c| set.contains(c))
        {
            return Err(Error::Witness(format!(
                "order {:?} is not a permutation of {:?}",
                self.letter_order.iter().collect::<String>(),
                canonical.iter().collect::<String>()
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Witness(format!("n = {} but witnesses need n >= 3", self.n)));
        }
        self.check_order()?;
        if let Some(keep) = &self.keep {
            if keep.is_empty() || keep.iter().any(|c| !self.letter_order.contains(c)) {
                return Err(Error::Witness(format!(
                    "cannot keep letters {:?}",
                    keep.iter().collect::<String>()
                )));
            }
        }
        Ok(())
    }

    pub fn build(&self) -> Result<Dfa> {
        self.validate()?;
        let n = self.n;
        let finals = match self.finals_override.unwrap_or(self.family.default_finals()) {
            Finals::Last => n - 1,
            Finals::Zero => 0,
        };
        let canonical = self.family.letters();
        let base = Dfa::new(
            canonical.clone(),
            self.family.transformations(n)?,
            0,
            [finals],
        )?;
        let pi = LetterPermutation::from_pairs(
            canonical.iter().copied().zip(self.letter_order.iter().copied()),
        );
        let mut dfa = base.permute_letters(&pi)?;
        if let Some(keep) = &self.keep {
            dfa = dfa.restrict(keep)?;
        }
        if self.complement {
            dfa = dfa.complement();
        }
        Ok(dfa)
    }

    /// Parses the colon-separated spelling, e.g. `U:n=5:order=dcba`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = text.split(':');
        let prefix = parts.next().unwrap_or_default();
        let mut n = None;
        let mut order: Option<String> = None;
        let mut finals = None;
        let mut keep = None;
        let mut complement = false;
        for part in parts {
            match part.split_once('=') {
                Some(("n", v)) => {
                    n = Some(v.parse::<usize>().map_err(|_| {
                        Error::Witness(format!("bad state count {v:?}"))
                    })?)
                }
                Some(("order", v)) => order = Some(v.to_string()),
                Some(("finals", "0")) => finals = Some(Finals::Zero),
                Some(("finals", "last")) => finals = Some(Finals::Last),
                Some(("keep", v)) => keep = Some(v.to_string()),
                None if part == "complement" => complement = !complement,
                _ => return Err(Error::Witness(format!("unknown option {part:?} in {text:?}"))),
            }
        }
        let n = n.ok_or_else(|| Error::Witness(format!("{text:?} lacks n=<size>")))?;
        let arity = order.as_ref().map(|o| o.chars().count());
        let family = match (prefix, arity) {
            ("U" | "U3", None | Some(3)) => Family::U3,
            ("U" | "U4", Some(4)) | ("U4", None) => Family::U4,
            ("U" | "U5" | "U5L", Some(5)) | ("U5" | "U5L", None) => Family::U5,
            ("U0", None | Some(3)) => Family::UZero3,
            ("U0", Some(4)) => Family::UZero4,
            ("T", _) => Family::T3,
            ("S", _) => Family::S2,
            ("W", _) => Family::W4,
            ("W0", _) => Family::WZero4,
            ("JO6K", _) => Family::Jo6K,
            ("JO6L", _) => Family::Jo6L,
            _ => return Err(Error::Witness(format!("unknown witness family in {text:?}"))),
        };
        let mut spec = WitnessSpec::new(family, n);
        if let Some(order) = order {
            spec = spec.with_order(&order)?;
        }
        spec.finals_override = finals;
        if let Some(keep) = keep {
            spec = spec.keep(&keep);
        }
        spec.complement = complement;
        spec.validate()?;
        Ok(spec)
    }

    /// Mathematical-style name such as `U_5(d,c,b,a)` or `¬JO6L_4(a,b,c,d,e,f)`.
    pub fn display_name(&self) -> String {
        let base = match self.family {
            Family::U3 | Family::U4 | Family::U5 => "U".to_string(),
            Family::UZero3 | Family::UZero4 => "U{0}".to_string(),
            Family::T3 => "T".to_string(),
            Family::S2 => "S".to_string(),
            Family::W4 => "W".to_string(),
            Family::WZero4 => "W{0}".to_string(),
            Family::Jo6K => "JO6K".to_string(),
            Family::Jo6L => "JO6L".to_string(),
        };
        let letters: Vec<String> = self
            .letter_order
            .iter()
            .map(|c| match &self.keep {
                Some(keep) if !keep.contains(c) => "∅".to_string(),
                _ => c.to_string(),
            })
            .collect();
        let finals = match self.finals_override {
            Some(f) if f != self.family.default_finals() => match f {
                Finals::Zero => "[F={0}]",
                Finals::Last => "[F={n-1}]",
            },
            _ => "",
        };
        format!(
            "{}{base}_{}({}){finals}",
            if self.complement { "¬" } else { "" },
            self.n,
            letters.join(",")
        )
    }
}

impl fmt::Display for WitnessSpec {
    /// The parseable colon-separated spelling.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:n={}", self.family.prefix(), self.n)?;
        let order: String = self.letter_order.iter().collect();
        let canonical: String = self.family.letters().iter().collect();
        let implied_by_prefix = matches!(self.family, Family::U3 | Family::UZero3 | Family::U5
            | Family::T3 | Family::S2 | Family::W4 | Family::WZero4 | Family::Jo6K | Family::Jo6L);
        if order != canonical || !implied_by_prefix {
            write!(f, ":order={order}")?;
        }
        match self.finals_override {
            Some(Finals::Zero) => write!(f, ":finals=0")?,
            Some(Finals::Last) => write!(f, ":finals=last")?,
            None => {}
        }
        if let Some(keep) = &self.keep {
            write!(f, ":keep={}", keep.iter().collect::<String>())?;
        }
        if self.complement {
            write!(f, ":complement")?;
        }
        Ok(())
    }
}

impl FromStr for WitnessSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        WitnessSpec::parse(s)
    }
}

/// Size of the transition monoid generated by the given letters,
/// including the identity (the action of the empty word).
pub fn monoid_size(d: &Dfa, letters: &[char]) -> Result<usize> {
    let generators = letters
        .iter()
        .map(|&c| d.delta(c).cloned().ok_or(Error::UnknownLetter(c)))
        .collect::<Result<Vec<_>>>()?;
    let identity = Transformation::identity(d.size())?;
    let mut seen: HashSet<Transformation> = HashSet::from([identity.clone()]);
    let mut frontier = vec![identity];
    while let Some(t) = frontier.pop() {
        for g in &generators {
            let next = t.compose(g)?;
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(seen.len())
}
