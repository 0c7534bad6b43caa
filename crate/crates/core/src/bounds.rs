//! Closed-form state-complexity bounds and the witness recipes that meet them.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::constructions::BooleanOp;
use crate::error::{Error, Result};
use crate::witness::{Family, WitnessSpec};

/// Whether a bound is proved tight, conjectured, or unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Theorem,
    Conjecture,
    Open,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Theorem => "theorem",
            Status::Conjecture => "conjecture",
            Status::Open => "open",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Every operation with a tabulated bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperationId {
    Star,
    Reversal,
    Product,
    BoolUnion,
    BoolIntersection,
    BoolDifference,
    BoolSymDiff,
    UnionStarRight,
    IntersectionStarRight,
    SymDiffStarRight,
    DifferenceStarRight,
    StarRightMinusLeft,
    StarUnionStar,
    StarIntersectionStar,
    StarDifferenceStar,
    StarSymDiffStar,
    ConcatStarRight,
    ConcatStarLeft,
    ConcatStarBoth,
    StarOfConcat,
    StarOfUnion,
    StarOfIntersection,
    StarOfDifference,
    StarOfSymDiff,
}

use OperationId as Op;

impl OperationId {
    pub const ALL: [OperationId; 24] = [
        Op::Star,
        Op::Reversal,
        Op::Product,
        Op::BoolUnion,
        Op::BoolIntersection,
        Op::BoolDifference,
        Op::BoolSymDiff,
        Op::UnionStarRight,
        Op::IntersectionStarRight,
        Op::SymDiffStarRight,
        Op::DifferenceStarRight,
        Op::StarRightMinusLeft,
        Op::StarUnionStar,
        Op::StarIntersectionStar,
        Op::StarDifferenceStar,
        Op::StarSymDiffStar,
        Op::ConcatStarRight,
        Op::ConcatStarLeft,
        Op::ConcatStarBoth,
        Op::StarOfConcat,
        Op::StarOfUnion,
        Op::StarOfIntersection,
        Op::StarOfDifference,
        Op::StarOfSymDiff,
    ];

    /// The thirteen boolean and product operations combined with star.
    pub const COMBINED: [OperationId; 13] = [
        Op::UnionStarRight,
        Op::IntersectionStarRight,
        Op::SymDiffStarRight,
        Op::DifferenceStarRight,
        Op::StarRightMinusLeft,
        Op::StarUnionStar,
        Op::StarIntersectionStar,
        Op::StarSymDiffStar,
        Op::StarDifferenceStar,
        Op::ConcatStarRight,
        Op::ConcatStarLeft,
        Op::ConcatStarBoth,
        Op::StarOfConcat,
    ];

    /// ASCII name used on the command line and in CSV output.
    pub fn slug(self) -> &'static str {
        match self {
            Op::Star => "star",
            Op::Reversal => "reversal",
            Op::Product => "product",
            Op::BoolUnion => "union",
            Op::BoolIntersection => "intersection",
            Op::BoolDifference => "difference",
            Op::BoolSymDiff => "symdiff",
            Op::UnionStarRight => "k-union-lstar",
            Op::IntersectionStarRight => "k-inter-lstar",
            Op::SymDiffStarRight => "k-symdiff-lstar",
            Op::DifferenceStarRight => "k-diff-lstar",
            Op::StarRightMinusLeft => "lstar-diff-k",
            Op::StarUnionStar => "kstar-union-lstar",
            Op::StarIntersectionStar => "kstar-inter-lstar",
            Op::StarDifferenceStar => "kstar-diff-lstar",
            Op::StarSymDiffStar => "kstar-symdiff-lstar",
            Op::ConcatStarRight => "k-lstar",
            Op::ConcatStarLeft => "kstar-l",
            Op::ConcatStarBoth => "kstar-lstar",
            Op::StarOfConcat => "kl-star",
            Op::StarOfUnion => "union-star",
            Op::StarOfIntersection => "inter-star",
            Op::StarOfDifference => "diff-star",
            Op::StarOfSymDiff => "symdiff-star",
        }
    }

    /// Symbolic name such as `K∪L*` or `(KL)*`.
    pub fn symbol(self) -> &'static str {
        match self {
            Op::Star => "L*",
            Op::Reversal => "L^R",
            Op::Product => "KL",
            Op::BoolUnion => "K∪L",
            Op::BoolIntersection => "K∩L",
            Op::BoolDifference => "K\\L",
            Op::BoolSymDiff => "K⊕L",
            Op::UnionStarRight => "K∪L*",
            Op::IntersectionStarRight => "K∩L*",
            Op::SymDiffStarRight => "K⊕L*",
            Op::DifferenceStarRight => "K\\L*",
            Op::StarRightMinusLeft => "L*\\K",
            Op::StarUnionStar => "K*∪L*",
            Op::StarIntersectionStar => "K*∩L*",
            Op::StarDifferenceStar => "K*\\L*",
            Op::StarSymDiffStar => "K*⊕L*",
            Op::ConcatStarRight => "KL*",
            Op::ConcatStarLeft => "K*L",
            Op::ConcatStarBoth => "K*L*",
            Op::StarOfConcat => "(KL)*",
            Op::StarOfUnion => "(K∪L)*",
            Op::StarOfIntersection => "(K∩L)*",
            Op::StarOfDifference => "(K\\L)*",
            Op::StarOfSymDiff => "(K⊕L)*",
        }
    }

    pub fn status(self) -> Status {
        match self {
            Op::StarOfIntersection => Status::Conjecture,
            Op::StarOfSymDiff => Status::Open,
            _ => Status::Theorem,
        }
    }

    /// 1 for star and reversal, 2 otherwise.
    pub fn arity(self) -> usize {
        match self {
            Op::Star | Op::Reversal => 1,
            _ => 2,
        }
    }

    pub fn formula(self) -> Option<&'static str> {
        Some(match self {
            Op::Star => "2^(n-1)+2^(n-2)",
            Op::Reversal => "2^n",
            Op::Product => "(m-1)2^n+2^(n-1)",
            Op::BoolUnion | Op::BoolIntersection | Op::BoolDifference | Op::BoolSymDiff => "mn",
            Op::UnionStarRight
            | Op::IntersectionStarRight
            | Op::SymDiffStarRight
            | Op::DifferenceStarRight
            | Op::StarRightMinusLeft => "m(2^(n-1)+2^(n-2)-1)+1",
            Op::StarUnionStar
            | Op::StarIntersectionStar
            | Op::StarDifferenceStar
            | Op::StarSymDiffStar => "(2^(m-1)+2^(m-2)-1)(2^(n-1)+2^(n-2)-1)+1",
            Op::ConcatStarRight => "m(2^(n-1)+2^(n-2))-2^(n-2)",
            Op::ConcatStarLeft => "5*2^(m+n-3)-2^(m-1)-2^n+1",
            Op::ConcatStarBoth => "2^(m+n-1)-2^(m-1)-3*2^(n-2)+2",
            Op::StarOfConcat => "2^(m+n-1)+2^(m+n-4)-(2^(m-1)+2^(n-1)-m-1)",
            Op::StarOfUnion => "2^(m+n-1)-(2^(m-1)+2^(n-1)-1)",
            Op::StarOfIntersection | Op::StarOfDifference => "2^(mn-1)+2^(mn-2)",
            Op::StarOfSymDiff => return None,
        })
    }

    /// Whether the operation is symmetric in its two arguments.
    pub fn is_symmetric(self) -> bool {
        matches!(
            self,
            Op::BoolUnion
                | Op::BoolIntersection
                | Op::BoolSymDiff
                | Op::StarUnionStar
                | Op::StarIntersectionStar
                | Op::StarSymDiffStar
                | Op::StarOfUnion
                | Op::StarOfIntersection
                | Op::StarOfSymDiff
        )
    }

    /// Exact value of the bound at `(m, n)`; `m` is ignored for unary operations.
    pub fn evaluate(self, m: usize, n: usize) -> Result<u128> {
        let overflow = || Error::BoundOverflow(self.symbol().to_string());
        if n < 3 || (self.arity() == 2 && m < 3) {
            return Err(Error::InvalidArgument(format!(
                "bounds are tabulated for m, n >= 3, got m = {m}, n = {n}"
            )));
        }
        let pow = |e: usize| -> Result<i128> {
            if e > 125 {
                Err(overflow())
            } else {
                Ok(1i128 << e)
            }
        };
        let (mi, ni) = (m as i128, n as i128);
        let value: i128 = match self {
            Op::Star => pow(n - 1)? + pow(n - 2)?,
            Op::Reversal => pow(n)?,
            Op::Product => (mi - 1) * pow(n)? + pow(n - 1)?,
            Op::BoolUnion | Op::BoolIntersection | Op::BoolDifference | Op::BoolSymDiff => mi * ni,
            Op::UnionStarRight
            | Op::IntersectionStarRight
            | Op::SymDiffStarRight
            | Op::DifferenceStarRight
            | Op::StarRightMinusLeft => mi * (pow(n - 1)? + pow(n - 2)? - 1) + 1,
            Op::StarUnionStar
            | Op::StarIntersectionStar
            | Op::StarDifferenceStar
            | Op::StarSymDiffStar => {
                let left = pow(m - 1)? + pow(m - 2)? - 1;
                let right = pow(n - 1)? + pow(n - 2)? - 1;
                left.checked_mul(right).ok_or_else(overflow)? + 1
            }
            Op::ConcatStarRight => mi * (pow(n - 1)? + pow(n - 2)?) - pow(n - 2)?,
            Op::ConcatStarLeft => 5 * pow(m + n - 3)? - pow(m - 1)? - pow(n)? + 1,
            Op::ConcatStarBoth => pow(m + n - 1)? - pow(m - 1)? - 3 * pow(n - 2)? + 2,
            Op::StarOfConcat => {
                pow(m + n - 1)? + pow(m + n - 4)? - (pow(m - 1)? + pow(n - 1)? - mi - 1)
            }
            Op::StarOfUnion => pow(m + n - 1)? - (pow(m - 1)? + pow(n - 1)? - 1),
            Op::StarOfIntersection | Op::StarOfDifference => {
                let mn = m.checked_mul(n).ok_or_else(overflow)?;
                pow(mn - 1)? + pow(mn - 2)?
            }
            Op::StarOfSymDiff => return Err(Error::NoKnownBound(self.symbol().to_string())),
        };
        u128::try_from(value).map_err(|_| overflow())
    }

    /// The witness pair and construction pipeline for `(m, n)`.
    pub fn recipe(self, m: usize, n: usize) -> Recipe {
        use BooleanOp::*;
        let spec = |family, size, order: &str| {
            WitnessSpec::new(family, size)
                .with_order(order)
                .expect("tabulated orders are permutations")
        };
        let u = |size| spec(Family::U3, size, "abc");
        let u_swapped = |size| spec(Family::U3, size, "bac");
        let w_pair = |left: Family| (spec(left, m, "abcd"), spec(Family::W4, n, "dcba"));
        let u4_pair = || (spec(Family::U4, m, "abcd"), spec(Family::U4, n, "dcba"));
        let u5_pair = || (spec(Family::U5, m, "abcde"), spec(Family::U5, n, "ecbad"));

        let (left, right, pipeline) = match self {
            Op::Star => (None, u(n).keep("ab"), Pipeline::Star),
            Op::Reversal => (None, u(n), Pipeline::Reversal),
            Op::Product => (Some(u(m)), u(n), Pipeline::Product),
            Op::BoolUnion => (Some(u(m)), u_swapped(n), Pipeline::Boolean(Union)),
            Op::BoolIntersection => (Some(u(m)), u_swapped(n), Pipeline::Boolean(Intersection)),
            Op::BoolDifference => (Some(u(m)), u_swapped(n), Pipeline::Boolean(Difference)),
            Op::BoolSymDiff => (Some(u(m)), u_swapped(n), Pipeline::Boolean(SymmetricDifference)),
            Op::UnionStarRight => (Some(u(m)), u_swapped(n), Pipeline::StarRight(Union)),
            Op::SymDiffStarRight => {
                (Some(u(m)), u_swapped(n), Pipeline::StarRight(SymmetricDifference))
            }
            Op::StarRightMinusLeft => (Some(u(m)), u_swapped(n), Pipeline::StarRightMinusLeft),
            Op::IntersectionStarRight => (
                Some(spec(Family::UZero3, m, "abc")),
                u_swapped(n),
                Pipeline::StarRight(Intersection),
            ),
            Op::DifferenceStarRight => (
                Some(spec(Family::UZero3, m, "abc")),
                u_swapped(n),
                Pipeline::StarRight(Difference),
            ),
            Op::StarUnionStar => {
                let (k, l) = w_pair(Family::W4);
                (Some(k), l, Pipeline::StarBoth(Union))
            }
            Op::StarIntersectionStar => {
                let (k, l) = w_pair(Family::W4);
                (Some(k), l, Pipeline::StarBoth(Intersection))
            }
            Op::StarDifferenceStar => {
                let (k, l) = w_pair(Family::W4);
                (Some(k), l, Pipeline::RootedStarBoth(Difference))
            }
            Op::StarSymDiffStar => {
                let (k, l) = w_pair(Family::W4);
                (Some(k), l, Pipeline::RootedStarBoth(SymmetricDifference))
            }
            Op::ConcatStarRight => (
                Some(spec(Family::T3, m, "abc")),
                spec(Family::T3, n, "bac"),
                Pipeline::ConcatStarRight,
            ),
            Op::ConcatStarLeft => {
                let (k, l) = u4_pair();
                (Some(k), l, Pipeline::ConcatStarLeft)
            }
            Op::ConcatStarBoth => {
                let (k, l) = u4_pair();
                (Some(k), l, Pipeline::ConcatStarBoth)
            }
            Op::StarOfConcat => {
                let (k, l) = w_pair(Family::W4);
                (Some(k), l, Pipeline::StarOfConcat)
            }
            Op::StarOfUnion => (
                Some(spec(Family::S2, m, "ab")),
                spec(Family::S2, n, "ba"),
                Pipeline::StarOfBoolean(Union),
            ),
            Op::StarOfIntersection => {
                let (k, l) = u5_pair();
                (Some(k), l, Pipeline::StarOfBoolean(Intersection))
            }
            Op::StarOfDifference => (
                Some(WitnessSpec::new(Family::Jo6K, m)),
                WitnessSpec::new(Family::Jo6L, n).complemented(),
                Pipeline::StarOfBoolean(Difference),
            ),
            Op::StarOfSymDiff => {
                let (k, l) = u5_pair();
                (Some(k), l, Pipeline::StarOfBoolean(SymmetricDifference))
            }
        };
        Recipe {
            left,
            right,
            pipeline,
        }
    }
}

impl fmt::Display for OperationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for OperationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim();
        OperationId::ALL
            .into_iter()
            .find(|op| op.slug() == wanted || op.symbol() == wanted)
            .ok_or_else(|| Error::UnknownOperation(s.to_string()))
    }
}

impl Serialize for OperationId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.slug())
    }
}

/// How the operands are combined before the final measurement.
///
/// `det-min(N)` abbreviates `minimize(determinize(N))`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pipeline {
    /// det-min(star_nfa(L))
    Star,
    /// det-min(reverse_nfa(L))
    Reversal,
    /// det-min(concat_nfa(K, L))
    Product,
    /// minimize(product_dfa(K, L, op))
    Boolean(BooleanOp),
    /// product_dfa(K, det-min(star_nfa(L)), op)
    StarRight(BooleanOp),
    /// product_dfa(det-min(star_nfa(L)), K, difference)
    StarRightMinusLeft,
    /// product_dfa(det-min(star_nfa(K)), det-min(star_nfa(L)), op)
    StarBoth(BooleanOp),
    /// product_dfa(det-min(rooted_star_nfa(K)), det-min(star_nfa(L)), op)
    ///
    /// Star of the `{0}`-final dialect is taken as the star automaton of
    /// `K` accepting at state 0, i.e. the language `K* K0` where `K0` is `K`
    /// with `{0}` as its final set. Starring the dialect literally gives
    /// back the dialect itself, since it is closed under concatenation.
    RootedStarBoth(BooleanOp),
    /// det-min(concat_nfa(K, star_nfa(L)))
    ConcatStarRight,
    /// det-min(concat_nfa(star_nfa(K), L))
    ConcatStarLeft,
    /// det-min(concat_nfa(star_nfa(K), star_nfa(L)))
    ConcatStarBoth,
    /// det-min(star_of_nfa(concat_nfa(K, L)))
    ///
    /// The star is taken on the concatenation NFA rather than on its minimal
    /// DFA; the minimal result is the same and the subset construction stays
    /// small.
    StarOfConcat,
    /// det-min(star_nfa(minimize(product_dfa(K, L, op))))
    ///
    /// For union the star is taken on the disjoint-sum NFA instead, which
    /// keeps the subset construction small.
    StarOfBoolean(BooleanOp),
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = |o: &BooleanOp| match o {
            BooleanOp::Union => "union",
            BooleanOp::Intersection => "intersection",
            BooleanOp::Difference => "difference",
            BooleanOp::SymmetricDifference => "symdiff",
        };
        const DM_STAR_L: &str = "minimize(determinize(star_nfa(L)))";
        const DM_STAR_K: &str = "minimize(determinize(star_nfa(K)))";
        match self {
            Pipeline::Star => write!(f, "minimize(determinize(star_nfa(L)))"),
            Pipeline::Reversal => write!(f, "minimize(determinize(reverse_nfa(L)))"),
            Pipeline::Product => write!(
                f,
                "minimize(determinize(concat_nfa(dfa_to_nfa(K), dfa_to_nfa(L))))"
            ),
            Pipeline::Boolean(o) => write!(f, "minimize(product_dfa(K, L, {}))", op(o)),
            Pipeline::StarRight(o) => write!(f, "product_dfa(K, {DM_STAR_L}, {})", op(o)),
            Pipeline::StarRightMinusLeft => {
                write!(f, "product_dfa({DM_STAR_L}, K, difference)")
            }
            Pipeline::StarBoth(o) => {
                write!(f, "product_dfa({DM_STAR_K}, {DM_STAR_L}, {})", op(o))
            }
            Pipeline::RootedStarBoth(o) => write!(
                f,
                "product_dfa(minimize(determinize(rooted_star_nfa(K))), {DM_STAR_L}, {})",
                op(o)
            ),
            Pipeline::ConcatStarRight => write!(
                f,
                "minimize(determinize(concat_nfa(dfa_to_nfa(K), star_nfa(L))))"
            ),
            Pipeline::ConcatStarLeft => write!(
                f,
                "minimize(determinize(concat_nfa(star_nfa(K), dfa_to_nfa(L))))"
            ),
            Pipeline::ConcatStarBoth => write!(
                f,
                "minimize(determinize(concat_nfa(star_nfa(K), star_nfa(L))))"
            ),
            Pipeline::StarOfConcat => write!(
                f,
                "minimize(determinize(star_of_nfa(concat_nfa(dfa_to_nfa(K), dfa_to_nfa(L)))))"
            ),
            Pipeline::StarOfBoolean(BooleanOp::Union) => write!(
                f,
                "minimize(determinize(star_of_nfa(union_nfa(dfa_to_nfa(K), dfa_to_nfa(L)))))"
            ),
            Pipeline::StarOfBoolean(o) => write!(
                f,
                "minimize(determinize(star_nfa(minimize(product_dfa(K, L, {})))))",
                op(o)
            ),
        }
    }
}

/// Operands and construction for one measurement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recipe {
    /// `None` for unary operations.
    pub left: Option<WitnessSpec>,
    pub right: WitnessSpec,
    pub pipeline: Pipeline,
}

impl Recipe {
    /// Operand names, e.g. `K=U_4(a,b,c) L=U_5(b,a,c)`.
    pub fn witness_names(&self) -> String {
        let rooted = if matches!(self.pipeline, Pipeline::RootedStarBoth(_)) {
            " rooted"
        } else {
            ""
        };
        match &self.left {
            Some(k) => format!("K={}{rooted} L={}", k.display_name(), self.right.display_name()),
            None => format!("L={}", self.right.display_name()),
        }
    }
}

/// One row of the dumped bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundRow {
    pub op: OperationId,
    pub status: Status,
    pub formula: String,
    pub m: usize,
    pub n: usize,
    pub value: String,
}

/// Evaluates every operation over the given ranges. Unary operations get one
/// row per `n` with `m` equal to `n`; open entries carry an empty value.
pub fn bound_table(
    ops: &[OperationId],
    ms: std::ops::RangeInclusive<usize>,
    ns: std::ops::RangeInclusive<usize>,
) -> Vec<BoundRow> {
    let mut rows = Vec::new();
    for &op in ops {
        for m in ms.clone() {
            for n in ns.clone() {
                if op.arity() == 1 && m != *ms.start() {
                    continue;
                }
                let m = if op.arity() == 1 { n } else { m };
                rows.push(BoundRow {
                    op,
                    status: op.status(),
                    formula: op.formula().unwrap_or("").to_string(),
                    m,
                    n,
                    value: op.evaluate(m, n).map(|v| v.to_string()).unwrap_or_default(),
                });
            }
        }
    }
    rows
}
