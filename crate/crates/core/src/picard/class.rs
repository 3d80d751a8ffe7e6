//! Sparse exact linear combinations of basis classes.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;
use serde::de::Deserializer;
use serde::ser::{SerializeMap, SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::picard::ModuliIndex;
use crate::rational::{format_q, parse_q, Q};

/// A generator type for [`LinearClass`].
pub trait ClassKey: Copy + Ord + Hash + fmt::Display + fmt::Debug + Send + Sync {
    /// Upper bound on `n` for classes over this basis, if any.
    const MAX_MARKINGS: Option<u32>;

    fn is_boundary(&self) -> bool;
    fn validate(&self, index: ModuliIndex) -> Result<()>;
    fn parse_key(key: &str, index: ModuliIndex) -> Result<Self>;
}

/// A rational linear combination of generators on a fixed `M_{g,n}`.
///
/// Zero coefficients are never stored, so structural equality is equality of
/// classes.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearClass<K: ClassKey> {
    index: ModuliIndex,
    coeffs: BTreeMap<K, Q>,
}

impl<K: ClassKey> LinearClass<K> {
    pub fn zero(index: ModuliIndex) -> Result<Self> {
        if let Some(max) = K::MAX_MARKINGS {
            if index.markings() > max {
                return Err(Error::TooManyMarkings {
                    n: index.markings(),
                    max,
                });
            }
        }
        Ok(LinearClass {
            index,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a class from `(generator, coefficient)` pairs, validating each
    /// generator.
    pub fn from_terms<I: IntoIterator<Item = (K, Q)>>(
        index: ModuliIndex,
        terms: I,
    ) -> Result<Self> {
        let mut class = LinearClass::zero(index)?;
        for (key, value) in terms {
            class.add_term(key, &value)?;
        }
        Ok(class)
    }

    pub fn index(&self) -> ModuliIndex {
        self.index
    }

    pub fn coeff(&self, key: &K) -> Q {
        self.coeffs.get(key).cloned().unwrap_or_else(Q::zero)
    }

    pub fn coeffs(&self) -> &BTreeMap<K, Q> {
        &self.coeffs
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Q)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, key: K, value: &Q) -> Result<()> {
        key.validate(self.index)?;
        self.add_term_unchecked(key, value.clone());
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, key: K, value: Q) {
        if value.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += value;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, other: &Self, factor: &Q) -> Result<()> {
        self.index.expect(other.index)?;
        if factor.is_zero() {
            return Ok(());
        }
        for (key, value) in &other.coeffs {
            self.add_term_unchecked(*key, value * factor);
        }
        Ok(())
    }

    pub fn scaled(&self, factor: &Q) -> Self {
        if factor.is_zero() {
            return LinearClass {
                index: self.index,
                coeffs: BTreeMap::new(),
            };
        }
        LinearClass {
            index: self.index,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::from_integer(1.into()))?;
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &Q::from_integer((-1).into()))?;
        Ok(out)
    }

    /// Keeps only the terms whose generator satisfies `keep`.
    pub fn restricted<F: Fn(&K) -> bool>(&self, keep: F) -> Self {
        LinearClass {
            index: self.index,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        }
    }

    pub fn boundary_part(&self) -> Self {
        self.restricted(|k| k.is_boundary())
    }

    /// All coefficients non-negative and supported on boundary generators.
    pub fn is_effective_boundary(&self) -> bool {
        self.coeffs
            .iter()
            .all(|(k, v)| k.is_boundary() && *v > Q::zero())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl<K: ClassKey> Add for LinearClass<K> {
    type Output = LinearClass<K>;

    /// Panics when the two classes live on different moduli spaces.
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs)
            .expect("adding classes on different moduli spaces")
    }
}

impl<K: ClassKey> Sub for LinearClass<K> {
    type Output = LinearClass<K>;

    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs)
            .expect("subtracting classes on different moduli spaces")
    }
}

impl<K: ClassKey> Neg for LinearClass<K> {
    type Output = LinearClass<K>;

    fn neg(self) -> Self {
        self.scaled(&Q::from_integer((-1).into()))
    }
}

impl<K: ClassKey> Mul<&Q> for &LinearClass<K> {
    type Output = LinearClass<K>;

    fn mul(self, rhs: &Q) -> LinearClass<K> {
        self.scaled(rhs)
    }
}

impl<K: ClassKey> fmt::Display for LinearClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0 on {}", self.index);
        }
        for (idx, (key, value)) in self.coeffs.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}){}", format_q(value), key)?;
        }
        write!(f, " on {}", self.index)
    }
}

impl<K: ClassKey> fmt::Debug for LinearClass<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct OrderedCoeffs<'a, K: ClassKey>(&'a BTreeMap<K, Q>);

impl<K: ClassKey> Serialize for OrderedCoeffs<'_, K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (key, value) in self.0 {
            map.serialize_entry(&key.to_string(), &format_q(value))?;
        }
        map.end()
    }
}

impl<K: ClassKey> Serialize for LinearClass<K> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Class", 3)?;
        s.serialize_field("g", &self.index.genus())?;
        s.serialize_field("n", &self.index.markings())?;
        s.serialize_field("coeffs", &OrderedCoeffs(&self.coeffs))?;
        s.end()
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    g: u32,
    n: u32,
    coeffs: BTreeMap<String, String>,
}

impl<'de, K: ClassKey> Deserialize<'de> for LinearClass<K> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawClass::deserialize(deserializer)?;
        let build = || -> Result<Self> {
            let index = ModuliIndex::new(raw.g, raw.n)?;
            let mut class = LinearClass::zero(index)?;
            for (key, value) in &raw.coeffs {
                let key = K::parse_key(key, index)?;
                class.add_term(key, &parse_q(value)?)?;
            }
            Ok(class)
        };
        build().map_err(D::Error::custom)
    }
}
