//! Permutations of `S_n` in one-line notation.
//!
//! Composition is `(v*w)(i) = v(w(i))` and `w.transpose(i, j)` is `w t_ij`,
//! which swaps the entries in positions `i` and `j`.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    word: SmallVec<[u8; 16]>,
}

impl Permutation {
    /// Builds a permutation from one-line notation with values `1..=n`.
    pub fn new(word: &[usize]) -> Result<Permutation> {
        let n = word.len();
        if n == 0 || n > 255 {
            return Err(Error::Permutation(format!("size {n} not supported")));
        }
        let mut seen = vec![false; n + 1];
        for &v in word {
            if v == 0 || v > n || seen[v] {
                return Err(Error::Permutation(format!(
                    "{word:?} is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { word: word.iter().map(|&v| v as u8).collect() })
    }

    pub fn identity(n: usize) -> Permutation {
        Permutation { word: (1..=n as u8).collect() }
    }

    pub fn longest(n: usize) -> Permutation {
        Permutation { word: (1..=n as u8).rev().collect() }
    }

    /// The simple reflection `s_i = t_{i,i+1}`.
    pub fn simple(n: usize, i: usize) -> Permutation {
        Permutation::identity(n).transpose(i, i + 1)
    }

    /// Product `s_{i_1} s_{i_2} ... s_{i_l}` read left to right.
    pub fn from_word(n: usize, word: &[usize]) -> Result<Permutation> {
        let mut w = Permutation::identity(n);
        for &i in word {
            if i == 0 || i >= n {
                return Err(Error::IndexOutOfRange { index: i, n: n - 1 });
            }
            w = w.transpose(i, i + 1);
        }
        Ok(w)
    }

    /// Parses `"2,4,1,3"`, or `"s:3,4,5"` as a product of simple reflections in `S_n`.
    /// One-line input must have exactly `n` entries when `n` is given.
    pub fn parse(s: &str, n: Option<usize>) -> Result<Permutation> {
        let s = s.trim();
        let nums = |body: &str| -> Result<Vec<usize>> {
            if body.trim().is_empty() {
                return Ok(Vec::new());
            }
            body.split(',')
                .map(|p| {
                    p.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Permutation(format!("bad entry {p:?} in {s:?}")))
                })
                .collect()
        };
        if let Some(body) = s.strip_prefix("s:") {
            let n = n.ok_or_else(|| {
                Error::Permutation("a reduced word needs the rank n".to_string())
            })?;
            return Permutation::from_word(n, &nums(body)?)
                .map_err(|e| Error::Permutation(format!("{s:?}: {e}")));
        }
        let word = nums(s)?;
        if let Some(n) = n {
            if word.len() != n {
                return Err(Error::Permutation(format!(
                    "{s:?} has {} entries, expected {n}",
                    word.len()
                )));
            }
        }
        Permutation::new(&word)
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    /// `w(i)`, 1-based.
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.word.iter().map(|&v| v as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.word.iter().enumerate().all(|(k, &v)| v as usize == k + 1)
    }

    pub fn length(&self) -> usize {
        let w = &self.word;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// `self * other`, i.e. `i -> self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation { word: other.word.iter().map(|&v| self.word[v as usize - 1]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv: SmallVec<[u8; 16]> = SmallVec::from_elem(0, self.n());
        for (k, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (k + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// `w t_ij`, without range checks; panics on bad indices.
    pub fn transpose(&self, i: usize, j: usize) -> Permutation {
        let mut w = self.clone();
        w.word.swap(i - 1, j - 1);
        w
    }

    /// `w t_ij` for `1 <= i < j <= n`.
    pub fn apply_transposition(&self, i: usize, j: usize) -> Result<Permutation> {
        let n = self.n();
        for idx in [i, j] {
            if idx == 0 || idx > n {
                return Err(Error::IndexOutOfRange { index: idx, n });
            }
        }
        if i >= j {
            return Err(Error::InvalidParameters(format!("transposition needs i < j, got ({i},{j})")));
        }
        Ok(self.transpose(i, j))
    }

    /// Whether `l(w t_ij) = l(w) + 1`.
    pub fn is_bruhat_cover(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let (a, b) = (self.at(i), self.at(j));
        a < b && (i + 1..j).all(|k| {
            let c = self.at(k);
            c < a || c > b
        })
    }

    /// Whether `l(w t_ij) = l(w) - 2(j - i) + 1`.
    pub fn is_quantum_cover(&self, i: usize, j: usize) -> bool {
        let (i, j) = (i.min(j), i.max(j));
        let (a, b) = (self.at(i), self.at(j));
        a > b && (i + 1..j).all(|k| {
            let c = self.at(k);
            b < c && c < a
        })
    }

    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n()).filter(|&i| self.word[i - 1] > self.word[i])
    }

    /// Canonical reduced word: peel off the first descent on the right until
    /// the identity is reached.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::with_capacity(self.length());
        loop {
            let Some(i) = w.descents().next() else { break };
            rev.push(i);
            w.word.swap(i - 1, i);
        }
        rev.reverse();
        rev
    }

    /// Bruhat order by the tableau criterion.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        for i in 1..n {
            let mut a: Vec<u8> = self.word[..i].to_vec();
            let mut b: Vec<u8> = other.word[..i].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// The same permutation in `S_m`, `m >= n`, fixing `n+1..m`.
    pub fn embed(&self, m: usize) -> Permutation {
        assert!(m >= self.n());
        let mut word = self.word.clone();
        word.extend((self.n() + 1..=m).map(|v| v as u8));
        Permutation { word }
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Permutation { word: SmallVec::from_slice(&cur) });
            // next permutation
            let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}
