//! Reversible partition of the incomparable pairs from a centered coloring.
//!
//! Pipeline: refine the coloring by element heights, tabulate the
//! signatures of covering chains with their upsets and downsets, group
//! points by intersecting upsets, build one laminar family per fingerprint
//! and read a left-to-right order off its tree, then key every incomparable
//! pair `(x, y)` by the fingerprint of `x` and one bit per signature telling
//! whether the signature's downset of `y` has a point right of `x`.
//!
//! Each structural fact the construction relies on is checked as it is
//! used. With a `2h`-centered input coloring none of the checks can fail; a
//! failure means the coloring was not centered enough.

mod laminar;
mod signature;

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

pub use laminar::{build_laminar_index, FingerprintBlock, LaminarChecks, LaminarIndex};
pub use signature::{
    compute_signature_table, sigma_classes, star_coloring, SigId, SigmaClasses, Signature,
    SignatureTable, StarredColor,
};

use crate::coloring::{is_p_centered, CenteredVerdict, Coloring, SUBSET_CHECK_MAX_COLORS};
use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset};
use crate::reversal::{extend_reversed, find_alternating_cycle, is_reversible, AlternatingCycle};

/// Largest exponent for which [`dimension_bound`] materializes `2^e`.
pub const DIMENSION_BOUND_MAX_EXPONENT: u64 = 1 << 20;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CertificationError {
    #[error("coloring is not {p}-centered: connected set {witness:?} has no unique color and fewer than {p} colors")]
    NotCentered { p: usize, witness: Vec<usize> },

    #[error("coloring is not 2h-centered: {sigma}-upsets of {x} and {other} share {common} but differ")]
    UpsetMismatch {
        sigma: SigId,
        x: usize,
        other: usize,
        common: usize,
    },

    #[error("coloring is not 2h-centered: family for fingerprint {fingerprint:?} is not laminar ({first:?} vs {second:?})")]
    NotLaminar {
        fingerprint: Vec<SigId>,
        first: Vec<usize>,
        second: Vec<usize>,
    },

    #[error("coloring is not 2h-centered: class {class:?} of signature {sigma} is not an interval for fingerprint {fingerprint:?}")]
    NotInterval {
        fingerprint: Vec<SigId>,
        sigma: SigId,
        class: Vec<usize>,
    },

    #[error("coloring is not 2h-centered: {sigma}-downset of {y} has {left} left and {right} right of {x}")]
    DownsetStraddle {
        sigma: SigId,
        x: usize,
        y: usize,
        left: usize,
        right: usize,
    },

    #[error("class {key} is not reversible: alternating cycle {cycle}")]
    NonReversibleClass {
        key: ClassKey,
        cycle: AlternatingCycle,
    },
}

impl CertificationError {
    /// Short name of the failed check.
    pub fn check_name(&self) -> &'static str {
        match self {
            CertificationError::NotCentered { .. } => "coloring",
            CertificationError::UpsetMismatch { .. } => "upset-equality",
            CertificationError::NotLaminar { .. } => "laminarity",
            CertificationError::NotInterval { .. } => "interval",
            CertificationError::DownsetStraddle { .. } => "downset-side",
            CertificationError::NonReversibleClass { .. } => "reversibility",
        }
    }
}

/// Identifies one class: the fingerprint of the pairs' first points and the
/// left/right vector, one bit per fingerprint signature.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassKey {
    pub signatures: Vec<SigId>,
    pub vector: Vec<bool>,
}

impl fmt::Display for ClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("sigma-set=")?;
        for (i, s) in self.signatures.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(" v=")?;
        for &b in &self.vector {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IncPartition {
    classes: BTreeMap<ClassKey, Vec<(usize, usize)>>,
}

impl IncPartition {
    pub fn from_classes(classes: BTreeMap<ClassKey, Vec<(usize, usize)>>) -> Self {
        IncPartition { classes }
    }

    pub fn classes(&self) -> &BTreeMap<ClassKey, Vec<(usize, usize)>> {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn pair_count(&self) -> usize {
        self.classes.values().map(Vec::len).sum()
    }

    /// Classes are pairwise disjoint, nonempty, and cover exactly the
    /// incomparable pairs of `p`.
    pub fn covers_exactly(&self, p: &Poset) -> bool {
        let mut all: Vec<(usize, usize)> = self.classes.values().flatten().copied().collect();
        let total = all.len();
        all.sort_unstable();
        all.dedup();
        all.len() == total
            && self.classes.values().all(|c| !c.is_empty())
            && all == p.incomparable_pairs()
    }
}

/// Left/right vector of the incomparable pair `(x, y)`: for each signature of
/// the block containing `x`, whether its downset of `y` has a ground point
/// strictly right of `x`. Fails if such a downset has points on both sides.
pub fn inc_vector(
    index: &LaminarIndex,
    table: &SignatureTable,
    fingerprint: &[SigId],
    x: usize,
    y: usize,
) -> Result<Vec<bool>> {
    let block = index
        .block_for(fingerprint)
        .ok_or_else(|| Error::arg(format!("no block for fingerprint {fingerprint:?}")))?;
    let pos_x = block
        .position(x)
        .ok_or_else(|| Error::arg(format!("{x} is not in the ground set of {fingerprint:?}")))?;
    Ok(vector_in_block(block, table, pos_x, x, y)?)
}

fn vector_in_block(
    block: &FingerprintBlock,
    table: &SignatureTable,
    pos_x: usize,
    x: usize,
    y: usize,
) -> std::result::Result<Vec<bool>, CertificationError> {
    block
        .signatures()
        .iter()
        .map(|&sigma| {
            let Some(down) = table.downset(y, sigma) else {
                return Ok(false);
            };
            let mut left = None;
            let mut right = None;
            for z in down.ones() {
                match block.position(z) {
                    Some(pz) if pz < pos_x => left = left.or(Some(z)),
                    Some(pz) if pz > pos_x => right = right.or(Some(z)),
                    _ => {}
                }
            }
            match (left, right) {
                (Some(left), Some(right)) => Err(CertificationError::DownsetStraddle {
                    sigma,
                    x,
                    y,
                    left,
                    right,
                }),
                (_, r) => Ok(r.is_some()),
            }
        })
        .collect()
}

/// Whether the input coloring was checked to be `2h`-centered before the
/// construction ran.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpfrontCheck {
    Verified,
    Skipped(String),
}

/// Number of times each runtime check fired without failing.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CertificationCounts {
    pub upset_equality: usize,
    pub laminar_pairs: usize,
    pub intervals: usize,
    pub downset_sides: usize,
    pub reversible_classes: usize,
}

#[derive(Clone, Debug, Default)]
pub struct StageTimings {
    pub verify: Duration,
    pub signatures: Duration,
    pub classes: Duration,
    pub laminar: Duration,
    pub vectors: Duration,
    pub reversibility: Duration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionOptions {
    /// Check the coloring with the subset method first when it has at most
    /// [`SUBSET_CHECK_MAX_COLORS`] colors.
    pub verify_coloring: bool,
}

impl Default for PartitionOptions {
    fn default() -> Self {
        PartitionOptions {
            verify_coloring: true,
        }
    }
}

/// The partition together with every intermediate structure.
#[derive(Clone, Debug)]
pub struct PartitionRun {
    pub height: usize,
    pub colors: usize,
    pub star: Vec<StarredColor>,
    pub table: SignatureTable,
    pub classes: Vec<SigmaClasses>,
    pub index: LaminarIndex,
    pub partition: IncPartition,
    pub upfront: UpfrontCheck,
    pub counts: CertificationCounts,
    pub timings: StageTimings,
}

/// Partitions the incomparable pairs of `p` into reversible classes using
/// `col`, which must be `2h`-centered on the cover graph (`h` the height).
pub fn partition_inc(p: &Poset, col: &Coloring) -> Result<IncPartition> {
    Ok(run_partition(p, col, PartitionOptions::default())?.partition)
}

pub fn run_partition(p: &Poset, col: &Coloring, opts: PartitionOptions) -> Result<PartitionRun> {
    let mut timings = StageTimings::default();
    let mut counts = CertificationCounts::default();
    let h = p.height();
    let star = star_coloring(p, col)?;

    let t = Instant::now();
    let upfront = if !opts.verify_coloring {
        UpfrontCheck::Skipped("disabled".into())
    } else if h == 0 {
        UpfrontCheck::Verified
    } else if col.color_count() > SUBSET_CHECK_MAX_COLORS {
        UpfrontCheck::Skipped(format!(
            "{} colors exceed the subset-check limit {SUBSET_CHECK_MAX_COLORS}",
            col.color_count()
        ))
    } else {
        let g = p.cover_graph();
        match is_p_centered(&g, col, 2 * h)? {
            CenteredVerdict::Centered => UpfrontCheck::Verified,
            CenteredVerdict::Violation(witness) => {
                return Err(CertificationError::NotCentered { p: 2 * h, witness }.into())
            }
        }
    };
    timings.verify = t.elapsed();

    let t = Instant::now();
    let table = compute_signature_table(p, &star);
    timings.signatures = t.elapsed();

    let t = Instant::now();
    let mut classes = Vec::with_capacity(table.signatures().len());
    for sigma in 0..table.signatures().len() {
        classes.push(sigma_classes(&table, sigma)?);
        counts.upset_equality += table.ends(sigma).len();
    }
    timings.classes = t.elapsed();

    let t = Instant::now();
    let (index, lam) = build_laminar_index(&table, &classes)?;
    counts.laminar_pairs = lam.laminar_pairs;
    counts.intervals = lam.intervals;
    timings.laminar = t.elapsed();

    let t = Instant::now();
    let mut grouped: BTreeMap<ClassKey, Vec<(usize, usize)>> = BTreeMap::new();
    for (x, y) in p.incomparable_pairs() {
        let block = index.block_of(x);
        let pos_x = block.position(x).expect("x lies in its own block");
        let vector = vector_in_block(block, &table, pos_x, x, y)?;
        counts.downset_sides += vector.len();
        let key = ClassKey {
            signatures: block.signatures().to_vec(),
            vector,
        };
        grouped.entry(key).or_default().push((x, y));
    }
    timings.vectors = t.elapsed();

    let t = Instant::now();
    for (key, pairs) in &grouped {
        if !is_reversible(p, pairs)? {
            let cycle = find_alternating_cycle(p, pairs)?
                .expect("non-reversible set has an alternating cycle");
            return Err(CertificationError::NonReversibleClass {
                key: key.clone(),
                cycle,
            }
            .into());
        }
        counts.reversible_classes += 1;
    }
    timings.reversibility = t.elapsed();

    Ok(PartitionRun {
        height: h,
        colors: col.color_count(),
        star,
        table,
        classes,
        index,
        partition: IncPartition::from_classes(grouped),
        upfront,
        counts,
        timings,
    })
}

/// One linear extension per class, reversing that class; a single
/// extension when there are no incomparable pairs.
pub fn build_realizer_from_partition(p: &Poset, part: &IncPartition) -> Result<Vec<LinearExtension>> {
    if part.is_empty() {
        return Ok(vec![p.default_extension()]);
    }
    part.classes()
        .values()
        .map(|pairs| extend_reversed(p, pairs))
        .collect()
}

/// Exponent `2 h^(h+1) c^h` of the dimension bound for height `h` and `c`
/// colors.
pub fn dimension_bound_exponent(h: u32, c: u32) -> BigUint {
    let h_big = BigUint::from(h);
    let c_big = BigUint::from(c);
    BigUint::from(2u32) * h_big.pow(h + 1) * c_big.pow(h)
}

/// `2^(2 h^(h+1) c^h)` exactly. Refuses exponents above
/// [`DIMENSION_BOUND_MAX_EXPONENT`].
pub fn dimension_bound(h: u32, c: u32) -> Result<BigUint> {
    if h == 0 || c == 0 {
        return Err(Error::arg("height and color count must be at least 1"));
    }
    let e = dimension_bound_exponent(h, c);
    match e.to_u64() {
        Some(e) if e <= DIMENSION_BOUND_MAX_EXPONENT => Ok(BigUint::one() << e),
        _ => Err(Error::Capacity {
            what: "dimension bound exponent",
            limit: DIMENSION_BOUND_MAX_EXPONENT as usize,
            got: e.to_usize().unwrap_or(usize::MAX),
        }),
    }
}

/// `count <= 2^(2 h^(h+1) c^h)`, decided without materializing the power.
pub fn within_dimension_bound(count: usize, h: u32, c: u32) -> bool {
    let e = dimension_bound_exponent(h, c);
    match e.to_u32() {
        Some(e) if e < 64 => (count as u128) <= (1u128 << e),
        _ => true,
    }
}

/// The bound as decimal when it fits [`DIMENSION_BOUND_MAX_EXPONENT`],
/// otherwise as `2^<exponent>`.
pub fn dimension_bound_display(h: u32, c: u32) -> String {
    match dimension_bound(h, c) {
        Ok(b) => b.to_str_radix(10),
        Err(_) => format!("2^{}", dimension_bound_exponent(h, c)),
    }
}

/// `h (h c)^h`, the cap on the number of distinct signatures.
pub fn signature_count_bound(h: u32, c: u32) -> BigUint {
    BigUint::from(h) * (BigUint::from(h) * BigUint::from(c)).pow(h)
}
