//! Sort words: finite sequences of sort labels `1..=R`.
//!
//! Words index both the formal tensor space of the Young machinery and the
//! creation-operator monomials of the Fock layer, so they live in their own
//! small module.

use std::fmt;

/// A word over the sort alphabet; letters are 1-based sort labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Self {
        Word(letters.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    /// Largest letter in the word, or 0 for the empty word.
    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Swaps every occurrence of the two letters (used for mirror checks).
    pub fn relabeled(&self, a: u8, b: u8) -> Word {
        Word(self
            .0
            .iter()
            .map(|&x| {
                if x == a {
                    b
                } else if x == b {
                    a
                } else {
                    x
                }
            })
            .collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// All distinct rearrangements of a multiset of letters, in ascending order.
pub fn distinct_permutations(letters: &[u8]) -> Vec<Word> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(sorted.len());
    fn recurse(pool: &mut Vec<u8>, current: &mut Vec<u8>, out: &mut Vec<Word>) {
        if pool.is_empty() {
            out.push(Word(current.clone()));
            return;
        }
        let mut last = None;
        for k in 0..pool.len() {
            if last == Some(pool[k]) {
                continue;
            }
            last = Some(pool[k]);
            let letter = pool.remove(k);
            current.push(letter);
            recurse(pool, current, out);
            current.pop();
            pool.insert(k, letter);
        }
    }
    recurse(&mut sorted, &mut current, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_of_repeated_letters_are_distinct() {
        let words = distinct_permutations(&[1, 1, 2]);
        let expect: Vec<Word> =
            [vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]].into_iter().map(Word::new).collect();
        assert_eq!(words, expect);
    }

    #[test]
    fn permutations_of_distinct_letters_count_factorial() {
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn relabeling_swaps_letters() {
        let w = Word::new(vec![1, 2, 2, 3]);
        assert_eq!(w.relabeled(1, 2), Word::new(vec![2, 1, 1, 3]));
    }
}
