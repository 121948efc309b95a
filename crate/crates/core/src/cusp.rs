//! Cyclic self-intersection sequences of cusp resolutions and their duals.

use std::fmt;

use crate::error::{Error, Result};
use crate::triple::Triple;

/// A cycle `(b_1, …, b_n)` of negated self-intersections, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleSeq {
    entries: Vec<u32>,
}

/// A block `(k+3, 2^l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Block {
    pub k: u32,
    pub l: u32,
}

fn canonical(entries: &[u32]) -> Vec<u32> {
    let n = entries.len();
    let mut best = entries.to_vec();
    let reversed: Vec<u32> = entries.iter().rev().copied().collect();
    for seq in [entries, &reversed[..]] {
        for s in 0..n {
            let rot: Vec<u32> = seq[s..].iter().chain(&seq[..s]).copied().collect();
            if rot < best {
                best = rot;
            }
        }
    }
    best
}

impl CycleSeq {
    pub fn new<T: Copy + Into<i64>>(entries: &[T]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyCycle);
        }
        let mut out = Vec::with_capacity(entries.len());
        for &e in entries {
            let e: i64 = e.into();
            if e < 2 {
                return Err(Error::NotACycleOfRationalCurves { entry: e });
            }
            out.push(u32::try_from(e).map_err(|_| Error::NotACycleOfRationalCurves { entry: e })?);
        }
        Ok(CycleSeq {
            entries: canonical(&out),
        })
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.entries.iter().any(|&b| b >= 3)
    }

    /// Unique decomposition into blocks, starting from the first entry `≥ 3` of the canonical form.
    pub fn blocks(&self) -> Result<Vec<Block>> {
        let start = self
            .entries
            .iter()
            .position(|&b| b >= 3)
            .ok_or(Error::NotHyperbolic { len: self.len() })?;
        let n = self.len();
        let mut blocks: Vec<Block> = Vec::new();
        for step in 0..n {
            let b = self.entries[(start + step) % n];
            if b >= 3 {
                blocks.push(Block { k: b - 3, l: 0 });
            } else if let Some(last) = blocks.last_mut() {
                last.l += 1;
            }
        }
        Ok(blocks)
    }

    pub fn from_blocks(blocks: &[Block]) -> Result<Self> {
        let mut entries = Vec::new();
        for b in blocks {
            entries.push(i64::from(b.k) + 3);
            entries.extend(std::iter::repeat_n(2i64, b.l as usize));
        }
        CycleSeq::new(&entries)
    }
}

impl fmt::Display for CycleSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `(p-1, q-1, r-1)`.
pub fn triangle_cycle(triple: Triple) -> Result<CycleSeq> {
    let entries = [triple.p, triple.q, triple.r].map(|x| i64::from(x) - 1);
    CycleSeq::new(&entries)
}

/// Blocks `(k+3, 2^l)` become `(l+3, 2^k)` in reversed cyclic order.
pub fn dual_cycle(c: &CycleSeq) -> Result<CycleSeq> {
    let blocks: Vec<Block> = c
        .blocks()?
        .into_iter()
        .rev()
        .map(|b| Block { k: b.l, l: b.k })
        .collect();
    CycleSeq::from_blocks(&blocks)
}

/// `Σ(b_i - 3) + n`.
pub fn charge(c: &CycleSeq) -> i64 {
    c.entries.iter().map(|&b| i64::from(b) - 3).sum::<i64>() + c.len() as i64
}
