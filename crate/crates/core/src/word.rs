//! Words over a finite ordered alphabet, ordered graded-lexicographically.

use std::cmp::Ordering;
use std::fmt;

/// A word stored as letter indices into some alphabet.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: u8) -> Self {
        Word(vec![i])
    }

    pub fn from_indices(v: Vec<u8>) -> Self {
        Word(v)
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

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn sorted(mut self) -> Word {
        self.0.sort_unstable();
        self
    }

    /// Rotation moving the first `k` letters to the back.
    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        v.rotate_left(k);
        Word(v)
    }

    /// Least rotation together with the number of letters rotated from the
    /// front to obtain it (the smallest such count when the word is periodic).
    pub fn least_rotation(&self) -> (Word, usize) {
        let n = self.0.len();
        let mut best = self.clone();
        let mut shift = 0;
        for k in 1..n {
            let r = self.rotate(k);
            if r < best {
                best = r;
                shift = k;
            }
        }
        (best, shift)
    }

    pub fn render(&self, alphabet: &[char]) -> String {
        self.0.iter().map(|&i| alphabet[i as usize]).collect()
    }

    pub fn parse(s: &str, alphabet: &[char]) -> Option<Word> {
        s.chars()
            .map(|c| alphabet.iter().position(|&a| a == c).map(|i| i as u8))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// All words of length at most `max_len` over an alphabet of `k` letters,
    /// in graded-lex order.
    pub fn all_up_to(k: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * k);
            for w in &layer {
                for i in 0..k {
                    let mut v = w.0.clone();
                    v.push(i as u8);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{:?}", self.0)
    }
}
