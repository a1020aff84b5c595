use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::sign::{koszul_sign_of_sequence, ordered_splits, permutations};
use super::{GradedSpace, Letter, Scalar};

/// A word in the graded symmetric algebra: letters in canonical order.
///
/// An odd letter occurs at most once; the empty word is the unit.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymWord(SmallVec<[Letter; 8]>);

impl SymWord {
    pub fn empty() -> Self {
        SymWord(SmallVec::new())
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        SymWord(v)
    }

    /// Wrap letters that are already in canonical order.
    pub fn from_sorted(letters: &[Letter]) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] <= w[1]));
        SymWord(letters.iter().copied().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn degree(&self, space: &GradedSpace) -> i64 {
        self.0.iter().map(|&l| space.degree(l)).sum()
    }

    pub fn is_odd(&self, space: &GradedSpace) -> bool {
        self.degree(space).rem_euclid(2) == 1
    }

    /// Product in the symmetric algebra. Returns `None` when the product
    /// vanishes (a repeated odd letter), else the canonical word and the
    /// Koszul sign of merging `self` before `other`.
    pub fn mul(&self, other: &SymWord, space: &GradedSpace) -> Option<(SymWord, i8)> {
        let mut out = SmallVec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        // odd letters of `a` not yet emitted
        let mut odd_left: usize = a.iter().filter(|&&l| space.is_odd(l)).count();
        let mut flips = 0usize;
        while i < a.len() || j < b.len() {
            let take_a = j == b.len() || (i < a.len() && a[i] <= b[j]);
            if take_a {
                if space.is_odd(a[i]) {
                    odd_left -= 1;
                    if j < b.len() && a[i] == b[j] {
                        return None;
                    }
                }
                out.push(a[i]);
                i += 1;
            } else {
                if space.is_odd(b[j]) {
                    flips += odd_left;
                }
                out.push(b[j]);
                j += 1;
            }
        }
        Some((SymWord(out), if flips.is_multiple_of(2) { 1 } else { -1 }))
    }

    /// Word with the letter at `pos` removed, plus the Koszul sign of moving
    /// that letter to the front.
    pub fn remove_at(&self, pos: usize, space: &GradedSpace) -> (SymWord, i8) {
        let l = self.0[pos];
        let mut rest = self.0.clone();
        rest.remove(pos);
        let sign = if space.is_odd(l) {
            let passed = self.0[..pos].iter().filter(|&&x| space.is_odd(x)).count();
            if passed % 2 == 0 {
                1
            } else {
                -1
            }
        } else {
            1
        };
        (SymWord(rest), sign)
    }

    pub fn display<'a>(&'a self, space: &'a GradedSpace) -> impl fmt::Display + 'a {
        WordDisplay(self, space)
    }
}

struct WordDisplay<'a>(&'a SymWord, &'a GradedSpace);

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let names: Vec<&str> = self.0 .0.iter().map(|&l| self.1.name(l)).collect();
        write!(f, "{}", names.join("."))
    }
}

/// Sort letters into canonical order.
///
/// Returns the canonical word with the Koszul sign of the sorting
/// permutation, or `None` if an odd letter repeats (the word is zero).
pub fn sym_canonicalize(letters: &[Letter], space: &GradedSpace) -> Option<(SymWord, i8)> {
    let mut idx: Vec<usize> = (0..letters.len()).collect();
    idx.sort_by_key(|&i| (letters[i], i));
    for w in idx.windows(2) {
        if letters[w[0]] == letters[w[1]] && space.is_odd(letters[w[0]]) {
            return None;
        }
    }
    let sign = koszul_sign_of_sequence(&idx, |i| space.is_odd(letters[i]));
    Some((SymWord(idx.iter().map(|&i| letters[i]).collect()), sign))
}

/// Every nonzero symmetric word of length `min_len..=max_len`, ordered by
/// length and then lexicographically.
pub fn sym_words(space: &GradedSpace, min_len: usize, max_len: usize) -> Vec<SymWord> {
    let letters: Vec<Letter> = space.letters().collect();
    let mut out = Vec::new();
    for len in min_len..=max_len {
        let mut cur: SmallVec<[Letter; 8]> = SmallVec::new();
        fn rec(
            start: usize,
            len: usize,
            letters: &[Letter],
            space: &GradedSpace,
            cur: &mut SmallVec<[Letter; 8]>,
            out: &mut Vec<SymWord>,
        ) {
            if cur.len() == len {
                out.push(SymWord(cur.clone()));
                return;
            }
            for k in start..letters.len() {
                let l = letters[k];
                if space.is_odd(l) && cur.last() == Some(&l) {
                    continue;
                }
                cur.push(l);
                rec(k, len, letters, space, cur, out);
                cur.pop();
            }
        }
        rec(0, len, &letters, space, &mut cur, &mut out);
    }
    out
}

/// An ordered tensor of letters with a coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorWord {
    pub letters: Vec<Letter>,
    pub coeff: Scalar,
}

/// All `j!` signed orderings of a word of length `j`, before any cancellation.
pub fn desymmetrize(word: &SymWord, space: &GradedSpace) -> Vec<TensorWord> {
    let letters = word.letters();
    permutations(letters.len())
        .into_iter()
        .map(|perm| {
            let sign = koszul_sign_of_sequence(&perm, |i| space.is_odd(letters[i]));
            TensorWord {
                letters: perm.iter().map(|&i| letters[i]).collect(),
                coeff: Scalar::from_integer(sign.into()),
            }
        })
        .collect()
}

/// Shuffle comultiplication: every ordered split into two nonempty subwords,
/// signed by the shuffle of odd letters.
pub fn comultiply(word: &SymWord, space: &GradedSpace) -> Vec<(SymWord, SymWord, i8)> {
    let letters = word.letters();
    ordered_splits(letters.len())
        .map(|(left, right)| {
            let order: Vec<usize> = left.iter().chain(right.iter()).copied().collect();
            let sign = koszul_sign_of_sequence(&order, |i| space.is_odd(letters[i]));
            let pick = |ix: &[usize]| SymWord(ix.iter().map(|&i| letters[i]).collect());
            (pick(&left), pick(&right), sign)
        })
        .collect()
}
