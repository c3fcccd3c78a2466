//! Integer partitions and block-preserving permutations.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<i64>,
}

impl Partition {
    /// Accepts weakly decreasing nonnegative parts; trailing zeros are dropped.
    pub fn new(mut parts: Vec<i64>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.iter().any(|&p| p < 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(alloc::format!(
                "{parts:?} is not a partition"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.parts.iter().sum()
    }

    /// The `i`-th part, 1-based; zero past the end.
    pub fn part(&self, i: usize) -> i64 {
        if i == 0 {
            return i64::MAX;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count() as i64)
            .collect();
        Partition { parts }
    }

    /// All partitions of `size`, in reverse lexicographic order.
    pub fn all_of_size(size: i64) -> Vec<Partition> {
        fn rec(rest: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(size, size, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `max_size`.
    pub fn all_up_to(max_size: i64) -> Vec<Partition> {
        (0..=max_size).flat_map(Partition::all_of_size).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `(3,1)`, `3,1`, `()` or an empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let mut parts = Vec::new();
        for piece in t.split(',') {
            let piece = piece.trim();
            if piece.is_empty() {
                continue;
            }
            parts.push(
                piece
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(alloc::format!("bad partition part {piece:?}")))?,
            );
        }
        Partition::new(parts)
    }
}

/// An element of `S_n x S_m` acting on the index set `0..n+m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    n: usize,
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(n: usize, m: usize, map: Vec<usize>) -> Result<Self> {
        let total = n + m;
        let mut seen = alloc::vec![false; total];
        if map.len() != total {
            return Err(Error::Domain(String::from("permutation has wrong length")));
        }
        for (i, &w) in map.iter().enumerate() {
            if w >= total || seen[w] || (i < n) != (w < n) {
                return Err(Error::Domain(String::from(
                    "not a block-preserving permutation",
                )));
            }
            seen[w] = true;
        }
        Ok(Permutation { n, map })
    }

    pub fn identity(n: usize, m: usize) -> Self {
        Permutation {
            n,
            map: (0..n + m).collect(),
        }
    }

    /// Transposition of two indices in the same block.
    pub fn transposition(n: usize, m: usize, i: usize, j: usize) -> Result<Self> {
        let mut map: Vec<usize> = (0..n + m).collect();
        map.swap(i, j);
        Self::new(n, m, map)
    }

    /// Adjacent transpositions generating `S_n x S_m`.
    pub fn generators(n: usize, m: usize) -> Vec<Permutation> {
        (0..(n + m).saturating_sub(1))
            .filter(|&i| i + 1 != n)
            .map(|i| Self::transposition(n, m, i, i + 1).expect("adjacent indices in one block"))
            .collect()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            n: self.n,
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
