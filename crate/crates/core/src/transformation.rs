//! Total self-maps of a finite state set `{0, .., n-1}`.
//!
//! Every letter of a [`Dfa`](crate::Dfa) acts on the states by one
//! transformation. Words act by composing the letters' transformations from
//! left to right, so the first letter of a word is applied first.

use std::fmt;

use crate::error::{Error, Result};

/// A total map from `{0, .., degree-1}` to itself, stored as its image vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Vec<u32>,
}

impl Transformation {
    /// Builds a transformation from an explicit image vector.
    ///
    /// `image[i]` is the target of state `i`.
    pub fn from_image(image: Vec<usize>) -> Result<Self> {
        let degree = image.len();
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        if let Some(&bad) = image.iter().find(|&&t| t >= degree) {
            return Err(Error::StateOutOfRange { index: bad, degree });
        }
        Ok(Self {
            image: image.into_iter().map(|t| t as u32).collect(),
        })
    }

    /// Builds from a raw image, skipping the range check.
    pub(crate) fn from_raw(image: Vec<u32>) -> Self {
        debug_assert!(image.iter().all(|&t| (t as usize) < image.len()));
        Self { image }
    }

    pub fn identity(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self::from_raw((0..degree as u32).collect()))
    }

    /// The cycle `(0, 1, .., n-1)`: `i -> i+1 mod n`.
    pub fn cycle(degree: usize) -> Result<Self> {
        Self::subcycle(0, degree.saturating_sub(1), degree)
    }

    /// Swaps `i` and `j`, fixing every other state. `i == j` gives the identity.
    pub fn transposition(i: usize, j: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        check_state(i, degree)?;
        check_state(j, degree)?;
        let mut image: Vec<u32> = (0..degree as u32).collect();
        image.swap(i, j);
        Ok(Self::from_raw(image))
    }

    /// The singular map sending `i` to `j` and fixing every other state.
    pub fn singular(i: usize, j: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        check_state(i, degree)?;
        check_state(j, degree)?;
        let mut image: Vec<u32> = (0..degree as u32).collect();
        image[i] = j as u32;
        Ok(Self::from_raw(image))
    }

    /// Sends every state to `k`.
    pub fn constant(k: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        check_state(k, degree)?;
        Ok(Self::from_raw(vec![k as u32; degree]))
    }

    /// Cyclically permutes `lo, lo+1, .., hi` and fixes all other states.
    pub fn subcycle(lo: usize, hi: usize, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        check_state(lo, degree)?;
        check_state(hi, degree)?;
        if lo > hi {
            return Err(Error::InvalidRange { lo, hi });
        }
        let mut image: Vec<u32> = (0..degree as u32).collect();
        for (s, slot) in image.iter_mut().enumerate().take(hi).skip(lo) {
            *slot = (s + 1) as u32;
        }
        image[hi] = lo as u32;
        Ok(Self::from_raw(image))
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Image of state `s`.
    ///
    /// # Panics
    ///
    /// Panics if `s >= self.degree()`.
    #[inline]
    pub fn apply(&self, s: usize) -> usize {
        self.image[s] as usize
    }

    pub fn image(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.image.iter().map(|&t| t as usize)
    }

    pub(crate) fn raw(&self) -> &[u32] {
        &self.image
    }

    /// `self` followed by `then`: the result maps `s` to `then(self(s))`.
    pub fn compose(&self, then: &Transformation) -> Result<Self> {
        if self.degree() != then.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: then.degree(),
            });
        }
        Ok(Self::from_raw(
            self.image.iter().map(|&t| then.image[t as usize]).collect(),
        ))
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &t)| i == t as usize)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        for &t in &self.image {
            if std::mem::replace(&mut seen[t as usize], true) {
                return false;
            }
        }
        true
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.image.iter()).finish()
    }
}

fn check_degree(degree: usize) -> Result<()> {
    if degree == 0 {
        Err(Error::ZeroDegree)
    } else if degree > u32::MAX as usize {
        Err(Error::StateOutOfRange {
            index: degree,
            degree: u32::MAX as usize,
        })
    } else {
        Ok(())
    }
}

fn check_state(index: usize, degree: usize) -> Result<()> {
    if index < degree {
        Ok(())
    } else {
        Err(Error::StateOutOfRange { index, degree })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn img(t: &Transformation) -> Vec<usize> {
        t.image().collect()
    }

    #[test]
    fn constructors() {
        assert_eq!(img(&Transformation::cycle(4).unwrap()), [1, 2, 3, 0]);
        assert_eq!(img(&Transformation::identity(5).unwrap()), [0, 1, 2, 3, 4]);
        assert_eq!(img(&Transformation::subcycle(1, 3, 4).unwrap()), [0, 2, 3, 1]);
        assert_eq!(img(&Transformation::transposition(0, 1, 4).unwrap()), [1, 0, 2, 3]);
        assert_eq!(img(&Transformation::singular(3, 0, 4).unwrap()), [0, 1, 2, 0]);
        assert_eq!(img(&Transformation::constant(2, 3).unwrap()), [2, 2, 2]);
        assert_eq!(img(&Transformation::cycle(1).unwrap()), [0]);
    }

    #[test]
    fn range_errors() {
        assert_eq!(
            Transformation::transposition(0, 4, 4),
            Err(Error::StateOutOfRange { index: 4, degree: 4 })
        );
        assert!(Transformation::singular(5, 0, 3).is_err());
        assert!(Transformation::constant(3, 3).is_err());
        assert_eq!(
            Transformation::subcycle(3, 1, 4),
            Err(Error::InvalidRange { lo: 3, hi: 1 })
        );
        assert_eq!(Transformation::identity(0), Err(Error::ZeroDegree));
        assert!(Transformation::from_image(vec![0, 3, 1]).is_err());
    }

    #[test]
    fn apply_examples() {
        let a = Transformation::cycle(4).unwrap();
        assert_eq!(a.apply(3), 0);
        let c = Transformation::singular(3, 0, 4).unwrap();
        assert_eq!(c.apply(3), 0);
        assert_eq!(c.apply(1), 1);
    }

    #[test]
    fn compose_examples() {
        let a = Transformation::cycle(3).unwrap();
        assert_eq!(img(&a.compose(&a).unwrap()), [2, 0, 1]);
        let b = Transformation::transposition(0, 1, 3).unwrap();
        assert!(b.compose(&b).unwrap().is_identity());
        let id = Transformation::identity(3).unwrap();
        assert_eq!(id.compose(&a).unwrap(), a);
        assert!(matches!(
            a.compose(&Transformation::identity(4).unwrap()),
            Err(Error::DegreeMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn compose_is_left_to_right() {
        // a then c on 4 states: 2 -a-> 3 -c-> 0
        let a = Transformation::cycle(4).unwrap();
        let c = Transformation::singular(3, 0, 4).unwrap();
        assert_eq!(a.compose(&c).unwrap().apply(2), 0);
        assert_eq!(c.compose(&a).unwrap().apply(2), 3);
    }

    fn arb_transformation(degree: usize) -> impl Strategy<Value = Transformation> {
        prop::collection::vec(0..degree, degree)
            .prop_map(|v| Transformation::from_image(v).unwrap())
    }

    proptest! {
        #[test]
        fn identity_is_neutral(t in (1usize..9).prop_flat_map(arb_transformation)) {
            let id = Transformation::identity(t.degree()).unwrap();
            prop_assert_eq!(&id.compose(&t).unwrap(), &t);
            prop_assert_eq!(&t.compose(&id).unwrap(), &t);
        }

        #[test]
        fn kind_shapes(n in 1usize..10, i in 0usize..10, j in 0usize..10) {
            let (i, j) = (i % n, j % n);
            prop_assert!(Transformation::cycle(n).unwrap().is_bijection());
            let t = Transformation::transposition(i, j, n).unwrap();
            let differs: Vec<usize> = (0..n).filter(|&s| t.apply(s) != s).collect();
            if i == j {
                prop_assert!(differs.is_empty());
            } else {
                prop_assert_eq!(differs, {
                    let mut v = vec![i, j];
                    v.sort();
                    v
                });
            }
            let s = Transformation::singular(i, j, n).unwrap();
            prop_assert!((0..n).filter(|&x| s.apply(x) != x).all(|x| x == i));
            let (lo, hi) = (i.min(j), i.max(j));
            let sc = Transformation::subcycle(lo, hi, n).unwrap();
            prop_assert!(sc.is_bijection());
            prop_assert!((0..n).filter(|&x| x < lo || x > hi).all(|x| sc.apply(x) == x));
        }

        #[test]
        fn compose_associative(
            (a, b, c) in (1usize..7).prop_flat_map(|n| (arb_transformation(n), arb_transformation(n), arb_transformation(n)))
        ) {
            let left = a.compose(&b).unwrap().compose(&c).unwrap();
            let right = a.compose(&b.compose(&c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
