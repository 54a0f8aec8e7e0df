//! Finite Boolean set algebras.
//!
//! A Boolean ring is represented by an explicit finite ground set together
//! with a partition of a subset of it; the ring consists of all unions of
//! blocks. The full power set is the partition into singletons.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Debug)]
struct GroundData {
    owner: String,
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered finite set of atom labels. The position of a label is its bit index.
///
/// Ground sets carry an owner name (usually an object label) so that ground
/// sets attached to different objects never compare equal.
#[derive(Clone, Debug)]
pub struct GroundSet(Arc<GroundData>);

impl GroundSet {
    pub fn new<S: Into<String>>(
        owner: impl Into<String>,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet(Arc::new(GroundData {
            owner: owner.into(),
            labels,
            index,
        })))
    }

    pub fn owner(&self) -> &str {
        &self.0.owner
    }

    pub fn len(&self) -> usize {
        self.0.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.0.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.0.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.0.index.get(label).copied()
    }

    /// The same labels under a different owner.
    pub fn with_owner(&self, owner: impl Into<String>) -> GroundSet {
        GroundSet(Arc::new(GroundData {
            owner: owner.into(),
            labels: self.0.labels.clone(),
            index: self.0.index.clone(),
        }))
    }

    pub fn empty_elem(&self) -> SetElem {
        SetElem {
            ground: self.clone(),
            bits: FixedBitSet::with_capacity(self.len()),
        }
    }

    pub fn full_elem(&self) -> SetElem {
        let mut bits = FixedBitSet::with_capacity(self.len());
        bits.insert_range(..);
        SetElem {
            ground: self.clone(),
            bits,
        }
    }

    pub fn singleton(&self, i: usize) -> SetElem {
        let mut e = self.empty_elem();
        e.bits.insert(i);
        e
    }

    pub fn elem_from_indices(&self, indices: impl IntoIterator<Item = usize>) -> Result<SetElem> {
        let mut e = self.empty_elem();
        for i in indices {
            if i >= self.len() {
                return Err(Error::UnknownLabel(format!("#{i}")));
            }
            e.bits.insert(i);
        }
        Ok(e)
    }

    pub fn elem_from_labels<S: AsRef<str>>(
        &self,
        labels: impl IntoIterator<Item = S>,
    ) -> Result<SetElem> {
        let mut e = self.empty_elem();
        for l in labels {
            let l = l.as_ref();
            let i = self
                .index_of(l)
                .ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            e.bits.insert(i);
        }
        Ok(e)
    }

    pub(crate) fn elem_from_bits(&self, bits: FixedBitSet) -> SetElem {
        debug_assert_eq!(bits.len(), self.len());
        SetElem {
            ground: self.clone(),
            bits,
        }
    }
}

impl PartialEq for GroundSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.owner == other.0.owner && self.0.labels == other.0.labels)
    }
}

impl Eq for GroundSet {}

/// An element of the power set of a ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetElem {
    ground: GroundSet,
    bits: FixedBitSet,
}

impl Hash for SetElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl SetElem {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    fn same_ground(&self, other: &SetElem) -> Result<()> {
        if self.ground == other.ground {
            Ok(())
        } else {
            Err(Error::GroundMismatch(
                self.ground.owner().to_string(),
                other.ground.owner().to_string(),
            ))
        }
    }

    /// Ring addition: symmetric difference.
    pub fn sum(&self, other: &SetElem) -> Result<SetElem> {
        self.same_ground(other)?;
        let mut bits = self.bits.clone();
        bits.symmetric_difference_with(&other.bits);
        Ok(self.ground.elem_from_bits(bits))
    }

    /// Ring multiplication: intersection.
    pub fn intersection(&self, other: &SetElem) -> Result<SetElem> {
        self.same_ground(other)?;
        let mut bits = self.bits.clone();
        bits.intersect_with(&other.bits);
        Ok(self.ground.elem_from_bits(bits))
    }

    pub fn union(&self, other: &SetElem) -> Result<SetElem> {
        self.same_ground(other)?;
        let mut bits = self.bits.clone();
        bits.union_with(&other.bits);
        Ok(self.ground.elem_from_bits(bits))
    }

    pub fn is_subset(&self, other: &SetElem) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.bits.is_subset(&other.bits))
    }

    pub fn is_disjoint(&self, other: &SetElem) -> Result<bool> {
        self.same_ground(other)?;
        Ok(self.bits.is_disjoint(&other.bits))
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    /// Cardinality, which is the rank in the full power set.
    pub fn rank(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits.contains(i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.bits.ones().map(|i| self.ground.label(i)).collect()
    }

    /// Labels in lexicographic order.
    pub fn sorted_labels(&self) -> Vec<&str> {
        let mut l = self.labels();
        l.sort_unstable();
        l
    }

    /// The element with the same bit pattern over a ground set of equal size.
    pub fn transport(&self, ground: &GroundSet) -> Result<SetElem> {
        if ground.len() != self.ground.len() {
            return Err(Error::GroundMismatch(
                self.ground.owner().to_string(),
                ground.owner().to_string(),
            ));
        }
        Ok(ground.elem_from_bits(self.bits.clone()))
    }

    /// Key for deterministic ordering: by cardinality, then by bit indices.
    pub fn sort_key(&self) -> (usize, Vec<usize>) {
        (self.rank(), self.bits.ones().collect())
    }
}

impl fmt::Display for SetElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.sorted_labels().join(","))
    }
}

/// A ring homomorphism `P(X) -> P(Y)` encoded as a partial map `Y -> X`;
/// `A` is sent to the set of `y` whose image lies in `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialMap {
    source: GroundSet,
    target: GroundSet,
    map: Vec<Option<u32>>,
}

impl PartialMap {
    /// `source` is the ground of the codomain ring, `target` that of the domain ring.
    pub fn new(source: GroundSet, target: GroundSet, map: Vec<Option<usize>>) -> Result<Self> {
        if map.len() != source.len() {
            return Err(Error::InvalidRepresentation(format!(
                "partial map on `{}` has {} entries, expected {}",
                source.owner(),
                map.len(),
                source.len()
            )));
        }
        let mut out = Vec::with_capacity(map.len());
        for m in map {
            match m {
                Some(x) if x >= target.len() => {
                    return Err(Error::UnknownLabel(format!("#{x} in `{}`", target.owner())))
                }
                _ => out.push(m.map(|x| x as u32)),
            }
        }
        Ok(PartialMap {
            source,
            target,
            map: out,
        })
    }

    /// Map given by label pairs `(y, x)`; unlisted `y` are undefined.
    pub fn from_label_pairs<A: AsRef<str>, B: AsRef<str>>(
        source: GroundSet,
        target: GroundSet,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut map = vec![None; source.len()];
        for (y, x) in pairs {
            let (y, x) = (y.as_ref(), x.as_ref());
            let yi = source
                .index_of(y)
                .ok_or_else(|| Error::UnknownLabel(y.to_string()))?;
            let xi = target
                .index_of(x)
                .ok_or_else(|| Error::UnknownLabel(x.to_string()))?;
            map[yi] = Some(xi);
        }
        PartialMap::new(source, target, map)
    }

    /// Identity between two ground sets with the same labels in the same order.
    pub fn identity_between(source: GroundSet, target: GroundSet) -> Result<Self> {
        if source.labels() != target.labels() {
            return Err(Error::GroundMismatch(
                source.owner().to_string(),
                target.owner().to_string(),
            ));
        }
        let n = source.len();
        PartialMap::new(source, target, (0..n).map(Some).collect())
    }

    pub fn identity(ground: &GroundSet) -> Self {
        PartialMap {
            source: ground.clone(),
            target: ground.clone(),
            map: (0..ground.len() as u32).map(Some).collect(),
        }
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn get(&self, y: usize) -> Option<usize> {
        self.map[y].map(|x| x as usize)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, Option<usize>)> + '_ {
        self.map
            .iter()
            .enumerate()
            .map(|(y, x)| (y, x.map(|x| x as usize)))
    }

    pub fn apply(&self, a: &SetElem) -> Result<SetElem> {
        if a.ground != self.target {
            return Err(Error::GroundMismatch(
                a.ground.owner().to_string(),
                self.target.owner().to_string(),
            ));
        }
        let mut bits = FixedBitSet::with_capacity(self.source.len());
        for (y, x) in self.map.iter().enumerate() {
            if let Some(x) = x {
                if a.bits.contains(*x as usize) {
                    bits.insert(y);
                }
            }
        }
        Ok(self.source.elem_from_bits(bits))
    }

    /// The homomorphism "apply `self`, then `next`".
    pub fn then(&self, next: &PartialMap) -> Result<PartialMap> {
        if next.target != self.source {
            return Err(Error::GroundMismatch(
                next.target.owner().to_string(),
                self.source.owner().to_string(),
            ));
        }
        let map = next
            .map
            .iter()
            .map(|y| y.and_then(|y| self.map[y as usize]))
            .collect();
        Ok(PartialMap {
            source: next.source.clone(),
            target: self.target.clone(),
            map,
        })
    }

    pub fn is_total(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn is_bijective(&self) -> bool {
        if !self.is_total() || self.source.len() != self.target.len() {
            return false;
        }
        let mut seen = FixedBitSet::with_capacity(self.target.len());
        self.map.iter().all(|x| {
            let x = x.unwrap() as usize;
            let fresh = !seen.contains(x);
            seen.insert(x);
            fresh
        })
    }

    pub fn is_identity(&self) -> bool {
        self.source.labels() == self.target.labels()
            && self
                .map
                .iter()
                .enumerate()
                .all(|(y, x)| *x == Some(y as u32))
    }
}

/// `apply_hom(h, a)`: the image of `a` under the homomorphism encoded by `h`.
pub fn apply_hom(h: &PartialMap, a: &SetElem) -> Result<SetElem> {
    h.apply(a)
}

/// A finite subring of a power set: all unions of the blocks of a partition
/// of `support`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubringPartition {
    ambient: GroundSet,
    support: SetElem,
    blocks: Vec<SetElem>,
    block_of: Vec<Option<u32>>,
}

impl SubringPartition {
    pub fn new(ambient: &GroundSet, blocks: Vec<SetElem>) -> Result<Self> {
        let mut support = ambient.empty_elem();
        for b in &blocks {
            if b.ground != *ambient {
                return Err(Error::GroundMismatch(
                    b.ground.owner().to_string(),
                    ambient.owner().to_string(),
                ));
            }
            if b.is_empty() {
                return Err(Error::InvalidRepresentation("empty block".into()));
            }
            if !b.bits.is_disjoint(&support.bits) {
                return Err(Error::InvalidRepresentation(format!(
                    "overlapping blocks in `{}`",
                    ambient.owner()
                )));
            }
            support.bits.union_with(&b.bits);
        }
        Ok(Self::from_disjoint_blocks(ambient, blocks, support))
    }

    fn from_disjoint_blocks(
        ambient: &GroundSet,
        mut blocks: Vec<SetElem>,
        support: SetElem,
    ) -> Self {
        blocks.sort_by_key(|b| b.bits.minimum());
        let mut block_of = vec![None; ambient.len()];
        for (k, b) in blocks.iter().enumerate() {
            for i in b.bits.ones() {
                block_of[i] = Some(k as u32);
            }
        }
        SubringPartition {
            ambient: ambient.clone(),
            support,
            blocks,
            block_of,
        }
    }

    /// The whole power set, as the partition into singletons.
    pub fn power_set(ground: &GroundSet) -> Self {
        let blocks = (0..ground.len()).map(|i| ground.singleton(i)).collect();
        Self::from_disjoint_blocks(ground, blocks, ground.full_elem())
    }

    pub fn ambient(&self) -> &GroundSet {
        &self.ambient
    }

    /// The identity element of the subring.
    pub fn support(&self) -> &SetElem {
        &self.support
    }

    /// The atoms of the subring.
    pub fn blocks(&self) -> &[SetElem] {
        &self.blocks
    }

    pub fn block_of(&self, i: usize) -> Option<usize> {
        self.block_of[i].map(|k| k as usize)
    }

    pub fn is_power_set(&self) -> bool {
        self.blocks.len() == self.ambient.len()
    }

    /// Whether `x` is a union of blocks.
    pub fn contains(&self, x: &SetElem) -> bool {
        if x.ground != self.ambient || !x.bits.is_subset(&self.support.bits) {
            return false;
        }
        let mut touched = FixedBitSet::with_capacity(self.blocks.len());
        for i in x.bits.ones() {
            touched.insert(self.block_of[i].unwrap() as usize);
        }
        touched
            .ones()
            .all(|k| self.blocks[k].bits.is_subset(&x.bits))
    }

    /// Number of blocks contained in `x`; the ring rank for members of the subring.
    pub fn rank(&self, x: &SetElem) -> usize {
        let mut touched = FixedBitSet::with_capacity(self.blocks.len());
        for i in x.bits.ones() {
            if let Some(k) = self.block_of[i] {
                touched.insert(k as usize);
            }
        }
        touched
            .ones()
            .filter(|&k| self.blocks[k].bits.is_subset(&x.bits))
            .count()
    }

    pub fn is_atom(&self, x: &SetElem) -> bool {
        self.blocks.iter().any(|b| b == x)
    }

    /// Relative complement `1 + x` inside the subring.
    pub fn complement(&self, x: &SetElem) -> Result<SetElem> {
        self.support.sum(x)
    }
}

/// The smallest subring of `P(ground)` containing `gens`: blocks are the
/// classes of points of the union of `gens` with equal membership signature.
pub fn generated_subring(ground: &GroundSet, gens: &[SetElem]) -> Result<SubringPartition> {
    let mut support = ground.empty_elem();
    for g in gens {
        if g.ground != *ground {
            return Err(Error::GroundMismatch(
                g.ground.owner().to_string(),
                ground.owner().to_string(),
            ));
        }
        support.bits.union_with(&g.bits);
    }
    let mut classes: HashMap<Vec<bool>, FixedBitSet> = HashMap::new();
    for p in support.bits.ones() {
        let sig: Vec<bool> = gens.iter().map(|g| g.bits.contains(p)).collect();
        classes
            .entry(sig)
            .or_insert_with(|| FixedBitSet::with_capacity(ground.len()))
            .insert(p);
    }
    let blocks = classes
        .into_values()
        .map(|b| ground.elem_from_bits(b))
        .collect();
    Ok(SubringPartition::from_disjoint_blocks(
        ground, blocks, support,
    ))
}
