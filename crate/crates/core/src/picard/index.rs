use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(g, n)`: genus and number of markings of a stable moduli space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuliIndex {
    g: u32,
    n: u32,
}

impl ModuliIndex {
    pub fn new(g: u32, n: u32) -> Result<Self> {
        if 2 * g + n <= 2 {
            return Err(Error::UnstableIndex { g, n });
        }
        Ok(ModuliIndex { g, n })
    }

    pub fn genus(self) -> u32 {
        self.g
    }

    pub fn markings(self) -> u32 {
        self.n
    }

    /// The same genus with `extra` more markings.
    pub fn with_markings(self, n: u32) -> Result<Self> {
        ModuliIndex::new(self.g, n)
    }

    pub(crate) fn check_marking(self, j: u32) -> Result<()> {
        if j == 0 || j > self.n {
            return Err(Error::MarkingOutOfRange {
                marking: j,
                n: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn expect(self, other: ModuliIndex) -> Result<()> {
        if self != other {
            return Err(Error::IndexMismatch {
                expected: self.to_string(),
                found: other.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for ModuliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M_{},{}", self.g, self.n)
    }
}

impl fmt::Debug for ModuliIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
