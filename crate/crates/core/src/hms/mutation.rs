//! Mutations of exceptional collections at the level of K-classes.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::picard::{exceptional_characters, exceptional_objects, riemann_roch_matrix, ChernCharacter};
use crate::triple::Triple;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Left,
    Right,
}

/// A mutation at a 1-based slot `i`, acting on the pair `(X_i, X_{i+1})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub slot: usize,
    pub direction: Direction,
}

impl Move {
    pub fn left(slot: usize) -> Self {
        Move {
            slot,
            direction: Direction::Left,
        }
    }

    pub fn right(slot: usize) -> Self {
        Move {
            slot,
            direction: Direction::Right,
        }
    }

    pub fn inverse(self) -> Self {
        let direction = match self.direction {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
        };
        Move {
            slot: self.slot,
            direction,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.direction {
            Direction::Left => write!(f, "{}", self.slot),
            Direction::Right => write!(f, "-{}", self.slot),
        }
    }
}

/// Parses `"2,-1,3"`: positive entries are left mutations, negative ones right mutations.
pub fn parse_word(word: &str) -> Result<Vec<Move>> {
    if word.trim().is_empty() {
        return Ok(Vec::new());
    }
    word.split(',')
        .map(|tok| {
            let bad = || Error::InvalidWord { token: tok.to_string() };
            let n: i64 = tok.trim().parse().map_err(|_| bad())?;
            let slot = usize::try_from(n.unsigned_abs()).map_err(|_| bad())?;
            match n.signum() {
                1 => Ok(Move::left(slot)),
                -1 => Ok(Move::right(slot)),
                _ => Err(bad()),
            }
        })
        .collect()
}

/// Ordered K-classes, as coordinates against a fixed ambient basis with Euler form `ambient`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalCollectionState {
    ambient: IntMatrix,
    classes: Vec<Vec<BigInt>>,
    labels: Vec<String>,
    triple: Option<Triple>,
}

impl ExceptionalCollectionState {
    /// The standard basis of a lattice with Euler form `ambient`.
    pub fn from_euler(ambient: IntMatrix, labels: Vec<String>) -> Result<Self> {
        let n = ambient.rows();
        if !ambient.is_square() || labels.len() != n {
            return Err(Error::ShapeMismatch {
                expected: format!("{n}x{n} with {n} labels"),
                found: format!("{}x{} with {} labels", ambient.rows(), ambient.cols(), labels.len()),
            });
        }
        let classes = (0..n)
            .map(|i| (0..n).map(|k| BigInt::from(u8::from(i == k))).collect())
            .collect();
        Ok(ExceptionalCollectionState {
            ambient,
            classes,
            labels,
            triple: None,
        })
    }

    /// The exceptional sequence of `Y_{p,q,r}` with its Riemann–Roch pairing.
    pub fn for_triple(triple: Triple) -> Self {
        let labels = exceptional_objects(triple).iter().map(ToString::to_string).collect();
        let mut s = Self::from_euler(riemann_roch_matrix(triple), labels).expect("square");
        s.triple = Some(triple);
        s
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn ambient(&self) -> &IntMatrix {
        &self.ambient
    }

    pub fn classes(&self) -> &[Vec<BigInt>] {
        &self.classes
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn pairing(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        self.ambient.bilinear(x, y)
    }

    /// Gram matrix of the current classes under the ambient pairing.
    pub fn euler_matrix(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| self.pairing(&self.classes[i], &self.classes[j]))
    }

    pub fn is_exceptional(&self) -> bool {
        self.euler_matrix().is_upper_unitriangular()
    }

    /// Matrix whose columns are the current classes.
    pub fn basis_matrix(&self) -> IntMatrix {
        let n = self.len();
        IntMatrix::from_fn(n, n, |i, j| self.classes[j][i].clone())
    }

    /// Chern characters of the current classes, when the state came from a triple.
    pub fn chern_characters(&self) -> Option<Vec<ChernCharacter>> {
        let triple = self.triple?;
        let base = exceptional_characters(triple);
        Some(
            self.classes
                .iter()
                .map(|v| {
                    v.iter().zip(&base).fold(ChernCharacter::zero(triple), |acc, (k, ch)| {
                        acc.try_add(&ch.scale(k)).expect("same configuration")
                    })
                })
                .collect(),
        )
    }

    pub fn mutate(&self, slot: usize, direction: Direction) -> Result<Self> {
        if slot == 0 || slot >= self.len() {
            return Err(Error::PositionOutOfRange {
                position: slot,
                len: self.len(),
            });
        }
        let (i, j) = (slot - 1, slot);
        let (x, y) = (&self.classes[i], &self.classes[j]);
        let c = self.pairing(x, y);
        let combine =
            |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> { a.iter().zip(b).map(|(a, b)| a - &c * b).collect() };
        let mut next = self.clone();
        match direction {
            Direction::Left => {
                next.classes[i] = combine(y, x);
                next.classes[j] = x.clone();
                next.labels[i] = format!("L[{}]({})", self.labels[i], self.labels[j]);
                next.labels[j] = self.labels[i].clone();
            }
            Direction::Right => {
                next.classes[i] = y.clone();
                next.classes[j] = combine(x, y);
                next.labels[i] = self.labels[j].clone();
                next.labels[j] = format!("R[{}]({})", self.labels[j], self.labels[i]);
            }
        }
        Ok(next)
    }

    pub fn apply(&self, m: Move) -> Result<Self> {
        self.mutate(m.slot, m.direction)
    }

    pub fn apply_word(&self, word: &[Move]) -> Result<Self> {
        word.iter().try_fold(self.clone(), |s, &m| s.apply(m))
    }

    /// `true` iff the pair at `slot` is fully orthogonal, so mutating it only swaps.
    pub fn is_trivial_pair(&self, slot: usize) -> bool {
        slot >= 1
            && slot < self.len()
            && self.pairing(&self.classes[slot - 1], &self.classes[slot]).is_zero()
            && self.pairing(&self.classes[slot], &self.classes[slot - 1]).is_zero()
    }
}
