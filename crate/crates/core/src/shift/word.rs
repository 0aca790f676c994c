use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite word over an alphabet, stored as symbol indices.
///
/// Ordering is lexicographic on the indices, shorter prefixes first.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<usize> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn with_last(&self, a: usize) -> Word {
        let mut v = self.0.clone();
        v.push(a);
        Word(v)
    }

    pub fn with_first(&self, a: usize) -> Word {
        let mut v = Vec::with_capacity(self.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n.min(self.len())].to_vec())
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word(self.0[self.len() - n.min(self.len())..].to_vec())
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn starts_with(&self, prefix: &Word) -> bool {
        self.0.starts_with(&prefix.0)
    }

    pub fn repeat(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    /// True when `w` occurs as a contiguous factor.
    pub fn contains_factor(&self, w: &Word) -> bool {
        w.is_empty() || self.0.windows(w.len()).any(|win| win == w.letters())
    }
}

impl Deref for Word {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

impl From<&[usize]> for Word {
    fn from(v: &[usize]) -> Self {
        Word(v.to_vec())
    }
}

impl FromIterator<usize> for Word {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// An eventually periodic point `pre · per^∞`, kept in normal form.
///
/// Normal form: `per` is primitive, and `pre` is as short as possible (its last
/// letter differs from the last letter of `per`). Two points are equal iff
/// their normal forms are equal, so the derived `Eq`/`Ord`/`Hash` are sound.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventuallyPeriodicPoint {
    pre: Word,
    per: Word,
}

impl EventuallyPeriodicPoint {
    pub fn new(pre: Word, per: Word) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidPoint("period must be nonempty".into()));
        }
        Ok(Self::normalized(pre.into_letters(), per.into_letters()))
    }

    pub fn periodic(per: Word) -> Result<Self> {
        Self::new(Word::empty(), per)
    }

    fn normalized(mut pre: Vec<usize>, mut per: Vec<usize>) -> Self {
        let n = per.len();
        if let Some(d) = (1..=n).find(|&d| n % d == 0 && (d..n).all(|i| per[i] == per[i - d])) {
            per.truncate(d);
        }
        while let (Some(&p), Some(&q)) = (pre.last(), per.last()) {
            if p != q {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        EventuallyPeriodicPoint {
            pre: Word(pre),
            per: Word(per),
        }
    }

    pub fn preperiod(&self) -> &Word {
        &self.pre
    }

    pub fn period(&self) -> &Word {
        &self.per
    }

    pub fn letter(&self, i: usize) -> usize {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        (0..n).map(|i| self.letter(i)).collect()
    }

    pub fn shift(&self) -> Self {
        self.shift_by(1)
    }

    pub fn shift_by(&self, n: usize) -> Self {
        if n <= self.pre.len() {
            return Self::normalized(self.pre[n..].to_vec(), self.per.to_vec());
        }
        let r = (n - self.pre.len()) % self.per.len();
        let mut per = self.per.to_vec();
        per.rotate_left(r);
        Self::normalized(Vec::new(), per)
    }

    /// `u · self`.
    pub fn prepend(&self, u: &Word) -> Self {
        Self::normalized(u.concat(&self.pre).into_letters(), self.per.to_vec())
    }

    /// `y` such that `self = v · y`, if `self` starts with `v`.
    pub fn strip_prefix(&self, v: &Word) -> Option<Self> {
        if self.prefix(v.len()) == *v {
            Some(self.shift_by(v.len()))
        } else {
            None
        }
    }

    pub fn max_letter(&self) -> usize {
        self.pre.iter().chain(self.per.iter()).copied().max().unwrap_or(0)
    }

    /// Applies a letter-to-word substitution (`x ↦ h(x₀)h(x₁)⋯`); every image must be nonempty.
    pub fn substitute(&self, image: impl Fn(usize) -> Word) -> Self {
        let map = |w: &Word| -> Vec<usize> { w.iter().flat_map(|&a| image(a).into_letters()).collect() };
        Self::normalized(map(&self.pre), map(&self.per))
    }
}

impl fmt::Debug for EventuallyPeriodicPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.pre.is_empty() {
            write!(f, "{:?}·", self.pre)?;
        }
        write!(f, "({:?})^∞", self.per)
    }
}
