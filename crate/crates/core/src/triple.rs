//! The triple `(p, q, r)` and the fixed object order shared by every model.
//!
//! Objects are ordered `P_1..P_p, Q_1..Q_q, R_1..R_r, E_1, E_2, E_3`; the
//! sheaf side uses the same positions for `D_{P,1}.., pi^*O, pi^*O(1), pi^*O(2)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chain {
    P,
    Q,
    R,
}

impl Chain {
    pub const ALL: [Chain; 3] = [Chain::P, Chain::Q, Chain::R];

    pub fn name(self) -> &'static str {
        match self {
            Chain::P => "P",
            Chain::Q => "Q",
            Chain::R => "R",
        }
    }

    /// Index of the anticanonical component `D_1, D_2, D_3` the chain sits on (0-based).
    pub fn component(self) -> usize {
        match self {
            Chain::P => 0,
            Chain::Q => 1,
            Chain::R => 2,
        }
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triple {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

impl Triple {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        if p == 0 || q == 0 || r == 0 {
            return Err(Error::InvalidTriple { p, q, r });
        }
        Ok(Triple { p, q, r })
    }

    pub fn chain_len(&self, chain: Chain) -> usize {
        (match chain {
            Chain::P => self.p,
            Chain::Q => self.q,
            Chain::R => self.r,
        }) as usize
    }

    /// Number of exceptional-collection objects, `p + q + r + 3`.
    pub fn num_objects(&self) -> usize {
        (self.p + self.q + self.r) as usize + 3
    }

    /// Position of the `index`-th (1-based) object of `chain`.
    pub fn chain_position(&self, chain: Chain, index: usize) -> usize {
        debug_assert!(index >= 1 && index <= self.chain_len(chain));
        let offset = match chain {
            Chain::P => 0,
            Chain::Q => self.p as usize,
            Chain::R => (self.p + self.q) as usize,
        };
        offset + index - 1
    }

    /// Position of `E_k` (k = 1, 2, 3), equivalently of `pi^*O(k-1)`.
    pub fn e_position(&self, k: usize) -> usize {
        debug_assert!((1..=3).contains(&k));
        (self.p + self.q + self.r) as usize + k - 1
    }

    /// Inverse of the position maps.
    pub fn slot(&self, position: usize) -> Slot {
        let n = (self.p + self.q + self.r) as usize;
        if position >= n {
            return Slot::E(position - n + 1);
        }
        let mut pos = position;
        for chain in Chain::ALL {
            let len = self.chain_len(chain);
            if pos < len {
                return Slot::Chain(chain, pos + 1);
            }
            pos -= len;
        }
        unreachable!()
    }

    pub fn slots(&self) -> Vec<Slot> {
        (0..self.num_objects()).map(|i| self.slot(i)).collect()
    }

    pub fn reciprocal_sum_cmp_one(&self) -> std::cmp::Ordering {
        // 1/p + 1/q + 1/r vs 1  <=>  qr + pr + pq vs pqr
        let (p, q, r) = (self.p as u64, self.q as u64, self.r as u64);
        (q * r + p * r + p * q).cmp(&(p * q * r))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.p, self.q, self.r)
    }
}

/// A position in the ordered collection, independent of which side labels it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Slot {
    Chain(Chain, usize),
    E(usize),
}

/// The test grid used throughout the acceptance criteria.
pub const GRID: [(u32, u32, u32); 8] = [
    (1, 1, 1),
    (2, 2, 2),
    (3, 3, 2),
    (3, 3, 3),
    (4, 4, 2),
    (6, 3, 2),
    (3, 4, 5),
    (5, 5, 5),
];
