//! Complete lists of skew morphisms of `Z_n`, built recursively from the
//! censuses of the possible quotient groups `Z_m`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{euler_phi, gcd};
use crate::enumerate::{enumerate_coset_preserving, lift};
use crate::skew::{equivalence_classes, format_images, SkewMorphism};
use crate::store::{Store, StoreError};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("skew morphism {images} of Z_{n} was produced twice")]
    DuplicateFound { n: usize, images: String },
    #[error("census of Z_{n} is inconsistent: {reason}")]
    Inconsistent { n: usize, reason: String },
    #[error("group order must be at least 1, got {0}")]
    BadOrder(usize),
    #[error(transparent)]
    Store(#[from] StoreError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusEntry {
    pub phi: SkewMorphism,
    /// Equivalence class among the proper skew morphisms; `None` for automorphisms.
    pub class_id: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CensusCounts {
    pub proper: usize,
    pub automorphisms: usize,
    pub classes: usize,
}

impl CensusCounts {
    pub fn total(&self) -> usize {
        self.proper + self.automorphisms
    }
}

/// Every skew morphism of `Z_n`, sorted by image sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRecord {
    n: usize,
    entries: Vec<CensusEntry>,
    counts: CensusCounts,
}

impl CensusRecord {
    /// Sorts, rejects duplicates and assigns class ids to the proper part.
    pub fn from_list(n: usize, mut list: Vec<SkewMorphism>) -> Result<Self, CensusError> {
        list.sort();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(CensusError::DuplicateFound { n, images: w[0].to_string() });
        }
        if let Some(phi) = list.iter().find(|phi| phi.n() != n) {
            return Err(CensusError::Inconsistent { n, reason: format!("{phi} belongs to Z_{}", phi.n()) });
        }
        let proper: Vec<SkewMorphism> = list.iter().filter(|phi| phi.is_proper()).cloned().collect();
        let classes = equivalence_classes(&proper);
        let mut class_iter = classes.class_of.iter();
        let entries: Vec<CensusEntry> = list
            .into_iter()
            .map(|phi| {
                let class_id = if phi.is_proper() { class_iter.next().copied() } else { None };
                CensusEntry { phi, class_id }
            })
            .collect();
        let counts = CensusCounts { proper: proper.len(), automorphisms: entries.len() - proper.len(), classes: classes.len() };
        Ok(CensusRecord { n, entries, counts })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[CensusEntry] {
        &self.entries
    }

    pub fn counts(&self) -> CensusCounts {
        self.counts
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &SkewMorphism> + '_ {
        self.entries.iter().map(|e| &e.phi)
    }

    pub fn proper(&self) -> impl Iterator<Item = &SkewMorphism> + '_ {
        self.morphisms().filter(|phi| phi.is_proper())
    }

    pub fn image_sequences(&self) -> Vec<Vec<usize>> {
        self.morphisms().map(|phi| phi.images().to_vec()).collect()
    }

    pub fn contains(&self, images: &[usize]) -> bool {
        self.entries.binary_search_by(|e| e.phi.images().cmp(images)).is_ok()
    }
}

/// Orders `m` of the groups whose proper skew morphisms can be quotients of
/// a non-coset-preserving skew morphism of `Z_n`.
pub fn quotient_orders(n: usize) -> Vec<usize> {
    let bound = n as u64 * euler_phi(n as u64).unwrap_or(0);
    (2..n).filter(|&m| bound.is_multiple_of(m as u64) && gcd(m as u64, n as u64) > 1).collect()
}

/// Computes the census of `Z_n` from the censuses of smaller groups.
/// `lower(m)` must return the census of `Z_m` for every `m` in
/// [`quotient_orders`]`(n)`.
pub fn census_from<'a, F>(n: usize, lower: F) -> Result<CensusRecord, CensusError>
where
    F: Fn(usize) -> &'a CensusRecord,
{
    if n == 0 {
        return Err(CensusError::BadOrder(n));
    }
    let cp = enumerate_coset_preserving(n);
    let quotients: Vec<&SkewMorphism> = quotient_orders(n)
        .into_iter()
        .flat_map(|m| lower(m).proper().filter(|rho| n.is_multiple_of(rho.order())))
        .collect();
    let lifted: Vec<SkewMorphism> = quotients.into_par_iter().flat_map_iter(|rho| lift(rho, n, &cp)).collect();
    let mut list = cp;
    list.extend(lifted);
    CensusRecord::from_list(n, list)
}

/// Memoized censuses, optionally backed by an on-disk [`Store`].
#[derive(Debug, Default)]
pub struct Census {
    store: Option<Store>,
    records: BTreeMap<usize, Arc<CensusRecord>>,
}

impl Census {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_store(dir: impl Into<PathBuf>) -> Result<Self, CensusError> {
        Ok(Census { store: Some(Store::open(dir)?), records: BTreeMap::new() })
    }

    pub fn store(&self) -> Option<&Store> {
        self.store.as_ref()
    }

    /// Census of `Z_n`, loading or computing (and persisting) every level it
    /// depends on first.
    pub fn get(&mut self, n: usize) -> Result<Arc<CensusRecord>, CensusError> {
        if n == 0 {
            return Err(CensusError::BadOrder(n));
        }
        if let Some(rec) = self.records.get(&n) {
            return Ok(rec.clone());
        }
        if let Some(store) = &self.store {
            if store.contains(n) {
                let rec = Arc::new(store.load(n)?);
                self.records.insert(n, rec.clone());
                return Ok(rec);
            }
        }
        let needed = quotient_orders(n);
        for &m in &needed {
            self.get(m)?;
        }
        let records = &self.records;
        let rec = census_from(n, |m| records[&m].as_ref())?;
        if let Some(store) = &self.store {
            store.save(&rec)?;
        }
        let rec = Arc::new(rec);
        self.records.insert(n, rec.clone());
        Ok(rec)
    }

    /// Computes every census for `1..=max` in ascending order.
    pub fn compute_up_to(&mut self, max: usize) -> Result<(), CensusError> {
        for n in 1..=max {
            self.get(n)?;
        }
        Ok(())
    }
}

/// Describes the first difference between two image-sequence sets.
pub fn first_difference(expected: &[Vec<usize>], actual: &[Vec<usize>]) -> Option<String> {
    let missing = expected.iter().find(|v| actual.binary_search(v).is_err());
    let extra = actual.iter().find(|v| expected.binary_search(v).is_err());
    match (missing, extra) {
        (Some(v), _) => Some(format!("missing {}", format_images(v))),
        (None, Some(v)) => Some(format!("unexpected {}", format_images(v))),
        (None, None) => None,
    }
}
