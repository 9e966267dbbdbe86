//! Starred colors, covering-chain signatures, and sigma-upsets/downsets.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use super::CertificationError;
use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::poset::Poset;

/// A base color paired with the height of the element carrying it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StarredColor {
    pub base: usize,
    pub level: usize,
}

impl fmt::Display for StarredColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.base, self.level)
    }
}

/// Refines `col` by element heights.
pub fn star_coloring(p: &Poset, col: &Coloring) -> Result<Vec<StarredColor>> {
    if col.len() != p.len() {
        return Err(Error::arg(format!(
            "coloring has {} entries for a poset on {} elements",
            col.len(),
            p.len()
        )));
    }
    Ok((0..p.len())
        .map(|x| StarredColor {
            base: col.color(x),
            level: p.heights()[x],
        })
        .collect())
}

/// Starred colors along a covering chain, bottom first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub Vec<StarredColor>);

impl Signature {
    pub fn colors(&self) -> &[StarredColor] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// No starred color repeats and levels strictly increase.
    pub fn is_proper(&self) -> bool {
        !self.0.is_empty() && self.0.windows(2).all(|w| w[0].level < w[1].level)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// Index into [`SignatureTable::signatures`]; ids follow the lexicographic
/// order of the signatures.
pub type SigId = usize;

#[derive(Clone, Debug)]
pub struct SignatureTable {
    signatures: Vec<Signature>,
    upsets: Vec<BTreeMap<SigId, FixedBitSet>>,
    downsets: Vec<BTreeMap<SigId, FixedBitSet>>,
    fingerprints: Vec<Vec<SigId>>,
}

impl SignatureTable {
    pub fn signatures(&self) -> &[Signature] {
        &self.signatures
    }

    pub fn signature(&self, id: SigId) -> &Signature {
        &self.signatures[id]
    }

    pub fn len(&self) -> usize {
        self.upsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.upsets.is_empty()
    }

    /// Endpoints of `sigma`-covering chains starting at `x`.
    pub fn upset(&self, x: usize, sigma: SigId) -> Option<&FixedBitSet> {
        self.upsets[x].get(&sigma)
    }

    /// Starting points of `sigma`-covering chains ending at `y`.
    pub fn downset(&self, y: usize, sigma: SigId) -> Option<&FixedBitSet> {
        self.downsets[y].get(&sigma)
    }

    pub fn upsets_of(&self, x: usize) -> &BTreeMap<SigId, FixedBitSet> {
        &self.upsets[x]
    }

    pub fn downsets_of(&self, y: usize) -> &BTreeMap<SigId, FixedBitSet> {
        &self.downsets[y]
    }

    /// Signatures with a nonempty upset at `x`, sorted.
    pub fn fingerprint(&self, x: usize) -> &[SigId] {
        &self.fingerprints[x]
    }

    /// Elements starting at least one `sigma`-covering chain.
    pub fn starts(&self, sigma: SigId) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| self.upsets[x].contains_key(&sigma))
            .collect()
    }

    /// Elements ending at least one `sigma`-covering chain.
    pub fn ends(&self, sigma: SigId) -> Vec<usize> {
        (0..self.len())
            .filter(|&y| self.downsets[y].contains_key(&sigma))
            .collect()
    }

    /// Structural self-check: upsets and downsets mirror each other,
    /// fingerprints list exactly the nonempty upsets, and every signature is
    /// proper.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        for (x, ups) in self.upsets.iter().enumerate() {
            for (&s, set) in ups {
                if set.is_clear() {
                    return Err(format!("empty upset stored for {x} under {s}"));
                }
                for y in set.ones() {
                    if !self.downsets[y].get(&s).is_some_and(|d| d.contains(x)) {
                        return Err(format!("{y} in upset of {x} but not the converse"));
                    }
                }
            }
            if !ups.keys().copied().eq(self.fingerprints[x].iter().copied()) {
                return Err(format!("fingerprint of {x} disagrees with its upsets"));
            }
        }
        for (y, downs) in self.downsets.iter().enumerate() {
            for (&s, set) in downs {
                for x in set.ones() {
                    if !self.upsets[x].get(&s).is_some_and(|u| u.contains(y)) {
                        return Err(format!("{x} in downset of {y} but not the converse"));
                    }
                }
            }
        }
        if let Some(bad) = self.signatures.iter().find(|s| !s.is_proper()) {
            return Err(format!("improper signature {bad}"));
        }
        Ok(())
    }
}

/// Dynamic program over the cover DAG from the top down: the chains starting
/// at `x` are `(x)` and `x` followed by a chain starting at an upper cover.
pub fn compute_signature_table(p: &Poset, star: &[StarredColor]) -> SignatureTable {
    let n = p.len();
    let mut by_seq: Vec<BTreeMap<Vec<StarredColor>, FixedBitSet>> = vec![BTreeMap::new(); n];
    let order = p.default_extension();
    for &x in order.order().iter().rev() {
        let mut map: BTreeMap<Vec<StarredColor>, FixedBitSet> = BTreeMap::new();
        let mut own = FixedBitSet::with_capacity(n);
        own.insert(x);
        map.insert(vec![star[x]], own);
        for &z in p.upper_covers(x) {
            for (tail, ends) in &by_seq[z] {
                let mut seq = Vec::with_capacity(tail.len() + 1);
                seq.push(star[x]);
                seq.extend_from_slice(tail);
                map.entry(seq)
                    .or_insert_with(|| FixedBitSet::with_capacity(n))
                    .union_with(ends);
            }
        }
        by_seq[x] = map;
    }

    let mut all: Vec<Vec<StarredColor>> = by_seq.iter().flat_map(|m| m.keys().cloned()).collect();
    all.sort();
    all.dedup();
    let id_of: BTreeMap<&[StarredColor], SigId> =
        all.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();

    let mut upsets = vec![BTreeMap::new(); n];
    let mut downsets: Vec<BTreeMap<SigId, FixedBitSet>> = vec![BTreeMap::new(); n];
    for (x, map) in by_seq.iter().enumerate() {
        for (seq, ends) in map {
            let id = id_of[seq.as_slice()];
            for y in ends.ones() {
                downsets[y]
                    .entry(id)
                    .or_insert_with(|| FixedBitSet::with_capacity(n))
                    .insert(x);
            }
            upsets[x].insert(id, ends.clone());
        }
    }
    let fingerprints = upsets
        .iter()
        .map(|m: &BTreeMap<SigId, FixedBitSet>| m.keys().copied().collect())
        .collect();
    SignatureTable {
        signatures: all.into_iter().map(Signature).collect(),
        upsets,
        downsets,
        fingerprints,
    }
}

/// Classes of `x ~ x'` (intersecting `sigma`-upsets) over the elements with a
/// nonempty `sigma`-upset.
#[derive(Clone, Debug)]
pub struct SigmaClasses {
    pub sigma: SigId,
    class_of: BTreeMap<usize, usize>,
    classes: Vec<Vec<usize>>,
}

impl SigmaClasses {
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Class index of `x`, if `x` has a nonempty upset.
    pub fn class_of(&self, x: usize) -> Option<usize> {
        self.class_of.get(&x).copied()
    }

    pub fn class_members(&self, x: usize) -> Option<&[usize]> {
        self.class_of(x).map(|c| self.classes[c].as_slice())
    }
}

/// Groups the starts of `sigma`-chains by intersecting upsets and certifies
/// that intersecting upsets are equal, which holds for every `2h`-centered
/// coloring. Classes are ordered by their smallest element.
pub fn sigma_classes(
    table: &SignatureTable,
    sigma: SigId,
) -> std::result::Result<SigmaClasses, CertificationError> {
    for y in table.ends(sigma) {
        let starts = table.downset(y, sigma).unwrap();
        let mut it = starts.ones();
        let first = it.next().expect("stored downsets are nonempty");
        let reference = table.upset(first, sigma).unwrap();
        if let Some(other) = it.find(|&x| table.upset(x, sigma).unwrap() != reference) {
            return Err(CertificationError::UpsetMismatch {
                sigma,
                x: first,
                other,
                common: y,
            });
        }
    }
    // equal upsets now coincide with the transitive closure of intersection
    let mut groups: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for x in table.starts(sigma) {
        let key: Vec<usize> = table.upset(x, sigma).unwrap().ones().collect();
        groups.entry(key).or_default().push(x);
    }
    let mut classes: Vec<Vec<usize>> = groups.into_values().collect();
    classes.sort();
    let class_of = classes
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.iter().map(move |&x| (x, i)))
        .collect();
    Ok(SigmaClasses {
        sigma,
        class_of,
        classes,
    })
}
