//! Pull-back along forgetful maps `M_{g,n} -> M_{g,m}`.
//!
//! One step (forgetting the last marking) acts by
//! `lambda -> lambda`, `delta_irr -> delta_irr`,
//! `psi_j -> psi_j - delta_{0,{j,n+1}}` and
//! `delta_{i,S} -> delta_{i,S} + delta_{i,S+{n+1}}`, where the two terms
//! collapse to one when they name the same divisor (`n = 0`, `i = g/2`).
//! [`pullback`] applies the composite of such steps in one pass.

mod averaging;
mod farkas;
mod slack;

use crate::error::{Error, Result};
use crate::picard::{canonicalize, BasisElement, DivisorClass, ModuliIndex};
use crate::subset::Subset;

pub use averaging::{
    average_pullback_full, symmetric_pullback, BruteForceAveraging, ClosedFormAveraging,
    FarkasAveraging, HypergeometricAveraging, BRUTE_FORCE_LIMIT,
};
pub use farkas::{
    farkas_class, farkas_class_sym, farkas_markings, farkas_parts, farkas_parts_sym,
    symmetric_pullback_farkas, FarkasParts, FarkasSpec,
};
pub use slack::{SlackSupport, WithSlack};

/// A forgetful map `M_{g,source_n} -> M_{g,target_n}`; target marking `j` is
/// source marking `kept[j - 1]`, every other source marking is forgotten.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForgetfulMap {
    target: ModuliIndex,
    source: ModuliIndex,
    kept: Vec<u32>,
}

impl ForgetfulMap {
    /// `M_{g,n+1} -> M_{g,n}` forgetting marking `n + 1`.
    pub fn forget_last(target: ModuliIndex) -> Result<Self> {
        let n = target.markings();
        ForgetfulMap::keeping(target, n + 1, (1..=n).collect())
    }

    pub fn keeping(target: ModuliIndex, source_markings: u32, kept: Vec<u32>) -> Result<Self> {
        let source = target.with_markings(source_markings)?;
        if kept.len() != target.markings() as usize {
            return Err(Error::InvalidForgetfulMap(format!(
                "{} kept markings for a target with n = {}",
                kept.len(),
                target.markings()
            )));
        }
        let mut seen = Subset::EMPTY;
        for &j in &kept {
            source.check_marking(j)?;
            if seen.contains(j) {
                return Err(Error::InvalidForgetfulMap(format!(
                    "marking {j} is kept twice (map is not injective)"
                )));
            }
            seen = seen.with(j);
        }
        Ok(ForgetfulMap {
            target,
            source,
            kept,
        })
    }

    pub fn target(&self) -> ModuliIndex {
        self.target
    }

    pub fn source(&self) -> ModuliIndex {
        self.source
    }

    pub fn kept(&self) -> &[u32] {
        &self.kept
    }

    /// Source markings that are forgotten.
    pub fn forgotten(&self) -> Subset {
        let kept = Subset::from_elements(self.kept.iter().copied());
        kept.complement(self.source.markings())
    }

    fn image(&self, s: Subset) -> Subset {
        s.map(|j| self.kept[j as usize - 1])
    }

    /// Pull-back of a single generator, as `(generator, coefficient sign)`
    /// terms.
    pub(crate) fn pull_generator(&self, elem: &BasisElement) -> Result<Vec<(BasisElement, i64)>> {
        let forgotten = self.forgotten();
        Ok(match *elem {
            BasisElement::Lambda | BasisElement::DeltaIrr => vec![(*elem, 1)],
            BasisElement::Psi(j) => {
                let image = self.kept[j as usize - 1];
                let mut out = vec![(BasisElement::Psi(image), 1)];
                for extra in forgotten.subsets().filter(|u| !u.is_empty()) {
                    out.push((canonicalize(0, extra.with(image), self.source)?, -1));
                }
                out
            }
            BasisElement::DeltaSep { genus, markings } => {
                let image = self.image(markings);
                let mut targets: Vec<BasisElement> = forgotten
                    .subsets()
                    .map(|extra| canonicalize(genus, image.union(extra), self.source))
                    .collect::<Result<_>>()?;
                targets.sort();
                targets.dedup();
                targets.into_iter().map(|t| (t, 1)).collect()
            }
        })
    }
}

/// `pi^* c` for a forgetful map whose target carries `c`.
pub fn pullback(class: &DivisorClass, map: &ForgetfulMap) -> Result<DivisorClass> {
    map.target.expect(class.index())?;
    let mut out = DivisorClass::zero(map.source)?;
    for (elem, value) in class.iter() {
        for (image, sign) in map.pull_generator(elem)? {
            let term = if sign == 1 {
                value.clone()
            } else {
                -value.clone()
            };
            out.add_term_unchecked(image, term);
        }
    }
    Ok(out)
}

/// Single step: forget marking `n + 1`.
pub fn pullback_forget_last(class: &DivisorClass) -> Result<DivisorClass> {
    pullback(class, &ForgetfulMap::forget_last(class.index())?)
}

/// Pull-back from `M_{g,m}` to `M_{g,n}` along the map keeping marking
/// `kept[j - 1]` as marking `j`.
pub fn pullback_multi(class: &DivisorClass, kept: &[u32], n: u32) -> Result<DivisorClass> {
    pullback(
        class,
        &ForgetfulMap::keeping(class.index(), n, kept.to_vec())?,
    )
}

/// The same pull-back as [`pullback_multi`], computed as a chain of
/// single-point steps followed by a relabelling. `order` lists the forgotten
/// markings in the order they are introduced.
pub fn pullback_stepwise(
    class: &DivisorClass,
    kept: &[u32],
    n: u32,
    order: &[u32],
) -> Result<DivisorClass> {
    let map = ForgetfulMap::keeping(class.index(), n, kept.to_vec())?;
    let forgotten = map.forgotten();
    if order.len() != forgotten.len() as usize
        || Subset::from_elements(order.iter().copied()) != forgotten
    {
        return Err(Error::InvalidForgetfulMap(
            "introduction order must list every forgotten marking once".into(),
        ));
    }
    let mut current = class.clone();
    for _ in order {
        current = pullback_forget_last(&current)?;
    }
    let sigma: Vec<u32> = kept.iter().chain(order.iter()).copied().collect();
    current.relabel(&sigma)
}
