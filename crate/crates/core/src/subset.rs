//! Subsets of the marking set `{1, ..., n}` packed into a bit mask.

use std::cmp::Ordering;
use std::fmt;

/// Largest marking index a [`Subset`] can hold.
pub const SUBSET_CAPACITY: u32 = 31;

/// A set of markings; bit `j - 1` stands for marking `j`.
///
/// Ordering is lexicographic on the ascending element lists, so `{}` <
/// `{1}` < `{1,2}` < `{1,3}` < `{2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_mask(mask: u32) -> Self {
        Subset(mask)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    /// The full set `{1, ..., n}`.
    pub fn full(n: u32) -> Self {
        assert!(n <= SUBSET_CAPACITY, "subset capacity exceeded");
        if n == 0 {
            Subset(0)
        } else {
            Subset(u32::MAX >> (32 - n))
        }
    }

    pub fn singleton(j: u32) -> Self {
        Subset::EMPTY.with(j)
    }

    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        elements.into_iter().fold(Subset::EMPTY, Subset::with)
    }

    pub fn with(self, j: u32) -> Self {
        assert!(
            (1..=SUBSET_CAPACITY).contains(&j),
            "marking {j} out of range"
        );
        Subset(self.0 | (1 << (j - 1)))
    }

    pub fn contains(self, j: u32) -> bool {
        (1..=SUBSET_CAPACITY).contains(&j) && self.0 & (1 << (j - 1)) != 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn max_element(self) -> Option<u32> {
        (self.0 != 0).then(|| 32 - self.0.leading_zeros())
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement inside `{1, ..., n}`.
    pub fn complement(self, n: u32) -> Self {
        Subset(Subset::full(n).0 & !self.0)
    }

    pub fn elements(self) -> impl Iterator<Item = u32> {
        let mask = self.0;
        (1..=SUBSET_CAPACITY).filter(move |j| mask & (1 << (j - 1)) != 0)
    }

    /// Image under a marking map `j -> image(j)`.
    pub fn map<F: Fn(u32) -> u32>(self, image: F) -> Self {
        Subset::from_elements(self.elements().map(image))
    }

    /// All subsets of `self` (including the empty set and `self`).
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == full {
                None
            } else {
                Some((current.wrapping_sub(full)) & full)
            };
            Some(Subset(current))
        })
    }

    /// All `k`-element subsets of `{1, ..., n}`, in increasing mask order.
    pub fn combinations(n: u32, k: u32) -> impl Iterator<Item = Subset> {
        assert!(n <= SUBSET_CAPACITY, "subset capacity exceeded");
        let limit: u64 = 1u64 << n;
        let mut next: Option<u64> = if k > n {
            None
        } else if k == 0 {
            Some(0)
        } else {
            Some((1u64 << k) - 1)
        };
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == 0 {
                None
            } else {
                // Gosper's hack
                let c = current & current.wrapping_neg();
                let r = current + c;
                let candidate = (((r ^ current) >> 2) / c) | r;
                (candidate < limit).then_some(candidate)
            };
            Some(Subset(current as u32))
        })
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, j) in self.elements().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{j}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
