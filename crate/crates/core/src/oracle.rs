//! Direct membership semantics for the measured operations, used to check
//! that a pipeline's minimal DFA accepts the intended language.
//!
//! Every evaluator answers the question "which `j` make `w[i..j]` a member?"
//! for a fixed start `i`, so star becomes a reachability sweep over prefix
//! positions and concatenation a split-point search.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{OperationId, Pipeline};
use crate::constructions::BooleanOp;
use crate::dfa::Dfa;
use crate::error::Result;
use crate::verify::run_recipe;

/// A language expression over operand DFAs sharing one alphabet.
#[derive(Debug, Clone)]
pub enum Lang {
    Atom(Dfa),
    Star(Box<Lang>),
    Concat(Box<Lang>, Box<Lang>),
    Bool(BooleanOp, Box<Lang>, Box<Lang>),
    Reverse(Box<Lang>),
}

impl Lang {
    pub fn star(self) -> Self {
        Lang::Star(Box::new(self))
    }

    pub fn concat(self, other: Lang) -> Self {
        Lang::Concat(Box::new(self), Box::new(other))
    }

    pub fn boolean(op: BooleanOp, left: Lang, right: Lang) -> Self {
        Lang::Bool(op, Box::new(left), Box::new(right))
    }

    pub fn reverse(self) -> Self {
        Lang::Reverse(Box::new(self))
    }

    /// The language a pipeline denotes, written from its definition rather
    /// than its construction.
    pub fn for_pipeline(pipeline: Pipeline, k: Option<&Dfa>, l: &Dfa) -> Self {
        use BooleanOp::*;
        let kd = || k.expect("binary pipeline needs a left operand");
        let k = || Lang::Atom(kd().clone());
        let l = Lang::Atom(l.clone());
        match pipeline {
            Pipeline::Star => l.star(),
            Pipeline::Reversal => l.reverse(),
            Pipeline::Product => k().concat(l),
            Pipeline::Boolean(op) => Lang::boolean(op, k(), l),
            Pipeline::StarRight(op) => Lang::boolean(op, k(), l.star()),
            Pipeline::StarRightMinusLeft => Lang::boolean(Difference, l.star(), k()),
            Pipeline::StarBoth(op) => Lang::boolean(op, k().star(), l.star()),
            Pipeline::RootedStarBoth(op) => {
                let d = kd();
                let root = Lang::Atom(d.with_finals([d.initial()]).expect("initial is a state"));
                Lang::boolean(op, k().star().concat(root), l.star())
            }
            Pipeline::ConcatStarRight => k().concat(l.star()),
            Pipeline::ConcatStarLeft => k().star().concat(l),
            Pipeline::ConcatStarBoth => k().star().concat(l.star()),
            Pipeline::StarOfConcat => k().concat(l).star(),
            Pipeline::StarOfBoolean(op) => Lang::boolean(op, k(), l).star(),
        }
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        self.ends(word, 0)[word.len()]
    }

    /// `out[j]` is true iff `word[start..j]` is in the language.
    fn ends(&self, word: &[usize], start: usize) -> Vec<bool> {
        let mut out = vec![false; word.len() + 1];
        match self {
            Lang::Atom(d) => {
                let mut s = d.initial();
                out[start] = d.is_final(s);
                for (j, &x) in word.iter().enumerate().skip(start) {
                    s = d.step(s, x);
                    out[j + 1] = d.is_final(s);
                }
            }
            Lang::Bool(op, a, b) => {
                let (ea, eb) = (a.ends(word, start), b.ends(word, start));
                for j in start..=word.len() {
                    out[j] = op.combine(ea[j], eb[j]);
                }
            }
            Lang::Concat(a, b) => {
                let ea = a.ends(word, start);
                for mid in (start..=word.len()).filter(|&mid| ea[mid]) {
                    let eb = b.ends(word, mid);
                    for (o, e) in out.iter_mut().zip(eb).skip(mid) {
                        *o |= e;
                    }
                }
            }
            Lang::Star(a) => {
                out[start] = true;
                for mid in start..word.len() {
                    if out[mid] {
                        let ea = a.ends(word, mid);
                        for j in mid + 1..=word.len() {
                            out[j] |= ea[j];
                        }
                    }
                }
            }
            Lang::Reverse(a) => {
                let mut piece = Vec::with_capacity(word.len());
                for j in start..=word.len() {
                    piece.clear();
                    piece.extend(word[start..j].iter().rev());
                    out[j] = a.contains(&piece);
                }
            }
        }
        out
    }
}

/// How words are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sampling {
    /// `count` words, lengths uniform in `0..=maxlen`, letters uniform.
    Random { count: usize, seed: u64 },
    /// Every word of length at most `maxlen`.
    Exhaustive,
}

/// Result of comparing a pipeline against direct semantics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub op: OperationId,
    pub m: Option<usize>,
    pub n: usize,
    pub words_tested: usize,
    pub max_length: usize,
    pub disagreements: usize,
    /// First disagreeing word, if any.
    pub sample: Option<String>,
    pub seed: Option<u64>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

/// Runs the recipe's pipeline and checks the resulting minimal DFA word by
/// word against [`Lang::for_pipeline`] built from the same operands.
pub fn membership_oracle(
    op: OperationId,
    m: usize,
    n: usize,
    maxlen: usize,
    sampling: Sampling,
    cap: usize,
) -> Result<OracleReport> {
    let recipe = op.recipe(m, n);
    let run = run_recipe(&recipe, cap)?;
    let lang = Lang::for_pipeline(recipe.pipeline, run.operands.0.as_ref(), &run.operands.1);
    let dfa = &run.minimal;
    let mut report = OracleReport {
        op,
        m: (op.arity() == 2).then_some(m),
        n,
        words_tested: 0,
        max_length: maxlen,
        disagreements: 0,
        sample: None,
        seed: None,
    };
    let mut check = |word: &[usize]| {
        report.words_tested += 1;
        if dfa.accepts(word) != lang.contains(word) {
            report.disagreements += 1;
            report.sample.get_or_insert_with(|| dfa.decode(word));
        }
    };
    let k = dfa.alphabet().len();
    match sampling {
        Sampling::Random { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut word = Vec::with_capacity(maxlen);
            for _ in 0..count {
                let len = rng.random_range(0..=maxlen);
                word.clear();
                word.extend((0..len).map(|_| rng.random_range(0..k)));
                check(&word);
            }
            report.seed = Some(seed);
        }
        Sampling::Exhaustive => {
            for len in 0..=maxlen {
                let mut word = vec![0; len];
                loop {
                    check(&word);
                    // odometer increment; stops after the all-last word
                    let Some(pos) = word.iter().rposition(|&x| x + 1 < k) else {
                        break;
                    };
                    word[pos] += 1;
                    word[pos + 1..].fill(0);
                }
            }
        }
    }
    Ok(report)
}
