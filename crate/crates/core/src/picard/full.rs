//! Full-basis specifics: enumeration of generators and marking relabelling.

use crate::error::{Error, Result};
use crate::picard::basis::{canonicalize, is_valid_boundary};
use crate::picard::{BasisElement, ClassKey, DivisorClass, ModuliIndex};
use crate::subset::Subset;

/// Full-basis classes are stored with one key per subset, so `n` is capped.
pub const MAX_FULL_MARKINGS: u32 = 20;

impl ClassKey for BasisElement {
    const MAX_MARKINGS: Option<u32> = Some(MAX_FULL_MARKINGS);

    fn is_boundary(&self) -> bool {
        BasisElement::is_boundary(self)
    }

    fn validate(&self, index: ModuliIndex) -> Result<()> {
        BasisElement::validate(self, index)
    }

    fn parse_key(key: &str, index: ModuliIndex) -> Result<Self> {
        BasisElement::parse(key, index)
    }
}

/// Every canonical separating boundary generator of `M_{g,n}`, in basis order.
pub fn separating_boundary(index: ModuliIndex) -> Result<Vec<BasisElement>> {
    let (g, n) = (index.genus(), index.markings());
    if n > MAX_FULL_MARKINGS {
        return Err(Error::TooManyMarkings {
            n,
            max: MAX_FULL_MARKINGS,
        });
    }
    let mut out = Vec::new();
    for i in (0..=g).filter(|i| 2 * i <= g) {
        for mask in 0..(1u32 << n) {
            let s = Subset::from_mask(mask);
            if !is_valid_boundary(i, s, index) {
                continue;
            }
            if 2 * i == g && n > 0 && s.contains(n) {
                continue;
            }
            out.push(BasisElement::DeltaSep {
                genus: i,
                markings: s,
            });
        }
    }
    out.sort();
    Ok(out)
}

/// All generators: `lambda`, the `psi_j`, `delta_irr` (for `g >= 1`) and the
/// separating boundary.
pub fn all_generators(index: ModuliIndex) -> Result<Vec<BasisElement>> {
    let mut out = vec![BasisElement::Lambda];
    out.extend((1..=index.markings()).map(BasisElement::Psi));
    if index.genus() >= 1 {
        out.push(BasisElement::DeltaIrr);
    }
    out.extend(separating_boundary(index)?);
    Ok(out)
}

impl DivisorClass {
    /// Renames markings: marking `j` becomes `sigma[j - 1]`, a permutation of
    /// `1..=n`.
    pub fn relabel(&self, sigma: &[u32]) -> Result<DivisorClass> {
        let index = self.index();
        let n = index.markings();
        let mut seen = Subset::EMPTY;
        if sigma.len() != n as usize {
            return Err(Error::InvalidForgetfulMap(format!(
                "relabelling has length {} but n = {n}",
                sigma.len()
            )));
        }
        for &image in sigma {
            index.check_marking(image)?;
            if seen.contains(image) {
                return Err(Error::InvalidForgetfulMap(format!(
                    "relabelling repeats marking {image}"
                )));
            }
            seen = seen.with(image);
        }
        let mut out = DivisorClass::zero(index)?;
        for (key, value) in self.iter() {
            let image = match *key {
                BasisElement::Psi(j) => BasisElement::Psi(sigma[j as usize - 1]),
                BasisElement::DeltaSep { genus, markings } => {
                    canonicalize(genus, markings.map(|j| sigma[j as usize - 1]), index)?
                }
                other => other,
            };
            out.add_term_unchecked(image, value.clone());
        }
        Ok(out)
    }
}
