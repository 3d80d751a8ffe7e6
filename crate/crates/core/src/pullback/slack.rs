use std::collections::BTreeSet;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::picard::{ClassKey, DivisorClass, LinearClass};
use crate::rational::Q;

use super::ForgetfulMap;

/// Where an unknown effective boundary combination may live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlackSupport<K: ClassKey> {
    AllBoundary,
    Elements(BTreeSet<K>),
}

impl<K: ClassKey> SlackSupport<K> {
    pub fn contains(&self, key: &K) -> bool {
        match self {
            SlackSupport::AllBoundary => key.is_boundary(),
            SlackSupport::Elements(set) => set.contains(key),
        }
    }
}

impl<K: ClassKey> Serialize for SlackSupport<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            SlackSupport::AllBoundary => serializer.serialize_str("all-boundary"),
            SlackSupport::Elements(set) => {
                serializer.collect_seq(set.iter().map(|k| k.to_string()))
            }
        }
    }
}

/// `known - E` with `E` an effective class supported on `support`.
///
/// `absorbed` is an explicit effective part that has already been moved out
/// of `known` into the slack, kept for auditing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WithSlack<K: ClassKey> {
    pub known: LinearClass<K>,
    pub support: SlackSupport<K>,
    pub absorbed: LinearClass<K>,
}

impl<K: ClassKey> WithSlack<K> {
    pub fn new(known: LinearClass<K>, support: SlackSupport<K>) -> Result<Self> {
        if let SlackSupport::Elements(set) = &support {
            for key in set {
                key.validate(known.index())?;
                if !key.is_boundary() {
                    return Err(Error::Inconsistent(format!(
                        "slack support may only contain boundary classes, got {key}"
                    )));
                }
            }
        }
        let absorbed = LinearClass::zero(known.index())?;
        Ok(WithSlack {
            known,
            support,
            absorbed,
        })
    }

    /// Moves the effective boundary class `part` into the slack:
    /// `known - E == (known + part) - (E + part)`.
    pub fn absorb(&mut self, part: &LinearClass<K>) -> Result<()> {
        self.known.index().expect(part.index())?;
        for (key, value) in part.iter() {
            if value.is_negative() || !self.support.contains(key) {
                return Err(Error::Inconsistent(format!(
                    "cannot absorb {value} * {key} into the slack"
                )));
            }
        }
        self.known = self.known.try_add(part)?;
        self.absorbed = self.absorbed.try_add(part)?;
        Ok(())
    }

    /// Scaling by a non-negative factor keeps the slack effective.
    pub fn scaled(&self, factor: &Q) -> Result<Self> {
        if factor.is_negative() {
            return Err(Error::Inconsistent(
                "a class with slack can only be scaled by a non-negative factor".into(),
            ));
        }
        Ok(WithSlack {
            known: self.known.scaled(factor),
            support: self.support.clone(),
            absorbed: self.absorbed.scaled(factor),
        })
    }

    /// Sum of two classes with slack; supports are united.
    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let support = match (&self.support, &other.support) {
            (SlackSupport::Elements(a), SlackSupport::Elements(b)) => {
                SlackSupport::Elements(a.union(b).copied().collect())
            }
            _ => SlackSupport::AllBoundary,
        };
        Ok(WithSlack {
            known: self.known.try_add(&other.known)?,
            support,
            absorbed: self.absorbed.try_add(&other.absorbed)?,
        })
    }
}

impl WithSlack<crate::picard::BasisElement> {
    /// The known part is pulled back exactly; the support is replaced by the
    /// support of the pulled-back generators.
    pub fn pullback(&self, map: &ForgetfulMap) -> Result<Self> {
        let support = match &self.support {
            SlackSupport::AllBoundary => SlackSupport::AllBoundary,
            SlackSupport::Elements(set) => {
                let mut images = BTreeSet::new();
                for elem in set {
                    for (image, _) in map.pull_generator(elem)? {
                        images.insert(image);
                    }
                }
                SlackSupport::Elements(images)
            }
        };
        Ok(WithSlack {
            known: super::pullback(&self.known, map)?,
            support,
            absorbed: super::pullback(&self.absorbed, map)?,
        })
    }
}

impl From<DivisorClass> for WithSlack<crate::picard::BasisElement> {
    fn from(known: DivisorClass) -> Self {
        WithSlack::new(known, SlackSupport::AllBoundary)
            .expect("all-boundary support is always valid")
    }
}
