//! Per-fingerprint laminar families, their inclusion trees, and the left to
//! right order read off a preorder traversal.

use std::collections::{BTreeMap, BTreeSet};

use fixedbitset::FixedBitSet;

use super::signature::{SigId, SigmaClasses, SignatureTable};
use super::CertificationError;

/// Everything attached to one realized fingerprint: its ground set (the
/// elements whose nonempty upsets are exactly `signatures`), the laminar
/// family over it, the family's inclusion tree, and the induced order.
#[derive(Clone, Debug)]
pub struct FingerprintBlock {
    signatures: Vec<SigId>,
    ground: Vec<usize>,
    /// Sorted member lists; index 0 is the ground set.
    family: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    order: Vec<usize>,
    position: BTreeMap<usize, usize>,
}

impl FingerprintBlock {
    pub fn signatures(&self) -> &[SigId] {
        &self.signatures
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn family(&self) -> &[Vec<usize>] {
        &self.family
    }

    pub fn parent(&self, set: usize) -> Option<usize> {
        self.parent[set]
    }

    pub fn children(&self, set: usize) -> &[usize] {
        &self.children[set]
    }

    /// Ground elements from left to right.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, x: usize) -> Option<usize> {
        self.position.get(&x).copied()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.position.contains_key(&x)
    }

    /// Singletons among the leaves below `set`.
    pub fn leaves_under(&self, set: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![set];
        while let Some(s) = stack.pop() {
            if self.children[s].is_empty() {
                out.extend_from_slice(&self.family[s]);
            }
            stack.extend_from_slice(&self.children[s]);
        }
        out.sort_unstable();
        out
    }
}

#[derive(Clone, Debug)]
pub struct LaminarIndex {
    blocks: Vec<FingerprintBlock>,
    block_of: Vec<usize>,
}

impl LaminarIndex {
    /// Blocks ordered by fingerprint.
    pub fn blocks(&self) -> &[FingerprintBlock] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> &FingerprintBlock {
        &self.blocks[self.block_of[x]]
    }

    pub fn block_index_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_for(&self, fingerprint: &[SigId]) -> Option<&FingerprintBlock> {
        self.blocks
            .binary_search_by(|b| b.signatures.as_slice().cmp(fingerprint))
            .ok()
            .map(|i| &self.blocks[i])
    }
}

/// Counts of the checks run while building the index.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LaminarChecks {
    pub laminar_pairs: usize,
    pub intervals: usize,
}

fn to_bits(n: usize, members: &[usize]) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(n);
    members.iter().for_each(|&x| b.insert(x));
    b
}

/// Builds one block per realized fingerprint, certifying laminarity of each
/// family and that every restricted class is an interval of the order.
/// `classes[s]` must hold the certified classes of signature `s`.
pub fn build_laminar_index(
    table: &SignatureTable,
    classes: &[SigmaClasses],
) -> Result<(LaminarIndex, LaminarChecks), CertificationError> {
    let n = table.len();
    let mut grouped: BTreeMap<&[SigId], Vec<usize>> = BTreeMap::new();
    for x in 0..n {
        grouped.entry(table.fingerprint(x)).or_default().push(x);
    }
    let mut checks = LaminarChecks::default();
    let mut blocks = Vec::with_capacity(grouped.len());
    let mut block_of = vec![usize::MAX; n];
    for (fingerprint, ground) in grouped {
        for &x in &ground {
            block_of[x] = blocks.len();
        }
        blocks.push(build_block(n, fingerprint, ground, classes, &mut checks)?);
    }
    Ok((LaminarIndex { blocks, block_of }, checks))
}

fn build_block(
    n: usize,
    fingerprint: &[SigId],
    ground: Vec<usize>,
    classes: &[SigmaClasses],
    checks: &mut LaminarChecks,
) -> Result<FingerprintBlock, CertificationError> {
    let ground_bits = to_bits(n, &ground);
    let restrict = |sigma: SigId, x: usize| -> Vec<usize> {
        classes[sigma]
            .class_members(x)
            .expect("ground elements have nonempty upsets for their fingerprint")
            .iter()
            .copied()
            .filter(|&z| ground_bits.contains(z))
            .collect()
    };

    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    sets.insert(ground.clone());
    for &x in &ground {
        sets.insert(vec![x]);
        for &sigma in fingerprint {
            sets.insert(restrict(sigma, x));
        }
    }
    // largest first so the ground set lands at index 0
    let mut family: Vec<Vec<usize>> = sets.into_iter().collect();
    family.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let bits: Vec<FixedBitSet> = family.iter().map(|s| to_bits(n, s)).collect();

    for i in 0..family.len() {
        for j in i + 1..family.len() {
            checks.laminar_pairs += 1;
            let common = bits[i].intersection_count(&bits[j]);
            if common != 0 && common != family[i].len() && common != family[j].len() {
                return Err(CertificationError::NotLaminar {
                    fingerprint: fingerprint.to_vec(),
                    first: family[i].clone(),
                    second: family[j].clone(),
                });
            }
        }
    }

    // with laminarity the strict supersets of a set form a chain; the parent
    // is the smallest of them
    let mut parent = vec![None; family.len()];
    for i in 1..family.len() {
        parent[i] = (0..i)
            .rev()
            .find(|&j| family[j].len() > family[i].len() && bits[i].is_subset(&bits[j]));
        debug_assert!(parent[i].is_some());
    }
    let mut children = vec![Vec::new(); family.len()];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = *p {
            children[p].push(i);
        }
    }
    for ch in &mut children {
        ch.sort_by_key(|&c| family[c][0]);
    }

    let mut order = Vec::with_capacity(ground.len());
    let mut stack = vec![0usize];
    while let Some(s) = stack.pop() {
        if family[s].len() == 1 && children[s].is_empty() {
            order.push(family[s][0]);
        }
        stack.extend(children[s].iter().rev());
    }
    let position: BTreeMap<usize, usize> =
        order.iter().enumerate().map(|(i, &x)| (x, i)).collect();

    for &sigma in fingerprint {
        let mut seen = BTreeSet::new();
        for &x in &ground {
            let class = restrict(sigma, x);
            if !seen.insert(class[0]) {
                continue;
            }
            checks.intervals += 1;
            let pos: Vec<usize> = class.iter().map(|z| position[z]).collect();
            let lo = *pos.iter().min().unwrap();
            let hi = *pos.iter().max().unwrap();
            if hi - lo + 1 != class.len() {
                return Err(CertificationError::NotInterval {
                    fingerprint: fingerprint.to_vec(),
                    sigma,
                    class,
                });
            }
        }
    }

    Ok(FingerprintBlock {
        signatures: fingerprint.to_vec(),
        ground,
        family,
        parent,
        children,
        order,
        position,
    })
}
