//! Finite posets stored as up-set and down-set bit matrices.

use fixedbitset::FixedBitSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl FinitePoset {
    /// Builds the poset on `0..n` from a relation assumed to be a partial order.
    pub fn from_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        FinitePoset { up, down }
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    fn all(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    pub fn minimum(&self) -> Option<usize> {
        self.least_in(&self.all())
    }

    pub fn maximum(&self) -> Option<usize> {
        self.greatest_in(&self.all())
    }

    /// The greatest element of `set`, if any.
    pub fn greatest_in(&self, set: &FixedBitSet) -> Option<usize> {
        set.ones().find(|&m| set.is_subset(&self.down[m]))
    }

    /// The least element of `set`, if any.
    pub fn least_in(&self, set: &FixedBitSet) -> Option<usize> {
        set.ones().find(|&m| set.is_subset(&self.up[m]))
    }

    pub fn lower_bounds(&self, elems: &[usize]) -> FixedBitSet {
        let mut s = self.all();
        for &e in elems {
            s.intersect_with(&self.down[e]);
        }
        s
    }

    pub fn upper_bounds(&self, elems: &[usize]) -> FixedBitSet {
        let mut s = self.all();
        for &e in elems {
            s.intersect_with(&self.up[e]);
        }
        s
    }

    /// Greatest lower bound of `elems`; the maximum for an empty family.
    pub fn meet_of(&self, elems: &[usize]) -> Option<usize> {
        self.greatest_in(&self.lower_bounds(elems))
    }

    /// Least upper bound of `elems`; the minimum for an empty family.
    pub fn join_of(&self, elems: &[usize]) -> Option<usize> {
        self.least_in(&self.upper_bounds(elems))
    }

    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.meet_of(&[i, j])
    }

    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.join_of(&[i, j])
    }

    /// A pair without a meet, if one exists.
    pub fn missing_meet(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.meet(i, j).is_none())
    }

    /// A pair without a join, if one exists.
    pub fn missing_join(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.join(i, j).is_none())
    }

    /// Nonempty with a minimum and all pairwise meets: the finite form of a
    /// complete meet semilattice.
    pub fn is_meet_semilattice(&self) -> bool {
        self.minimum().is_some() && self.missing_meet().is_none()
    }

    /// A finite complete lattice: a meet semilattice with a maximum.
    pub fn is_lattice(&self) -> bool {
        self.is_meet_semilattice() && self.maximum().is_some()
    }

    pub fn is_cover(&self, i: usize, j: usize) -> bool {
        if i == j || !self.leq(i, j) {
            return false;
        }
        let mut between = self.up[i].clone();
        between.intersect_with(&self.down[j]);
        between.count_ones(..) == 2
    }

    /// Cover pairs `(lower, upper)` in lexicographic order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in self.up[i].ones() {
                if self.is_cover(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Elements covering the minimum.
    pub fn atoms(&self) -> Vec<usize> {
        match self.minimum() {
            Some(m) => self.up[m].ones().filter(|&j| self.is_cover(m, j)).collect(),
            None => Vec::new(),
        }
    }

    /// Length of the longest chain (number of cover steps).
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.down[i].count_ones(..));
        let mut best = vec![0usize; n];
        for &j in &order {
            for i in self.down[j].ones() {
                if i != j {
                    best[j] = best[j].max(best[i] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// All maximal chains of the interval `[lo, hi]`.
    pub fn maximal_chains(&self, lo: usize, hi: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        if !self.leq(lo, hi) {
            return out;
        }
        let mut stack = vec![lo];
        self.chains_from(hi, &mut stack, &mut out);
        out
    }

    fn chains_from(&self, hi: usize, stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let cur = *stack.last().unwrap();
        if cur == hi {
            out.push(stack.clone());
            return;
        }
        for j in self.up[cur].ones() {
            if self.leq(j, hi) && self.is_cover(cur, j) {
                stack.push(j);
                self.chains_from(hi, stack, out);
                stack.pop();
            }
        }
    }

    /// An order isomorphism `self -> other` as an index map, if one exists.
    pub fn isomorphism(&self, other: &FinitePoset) -> Option<Vec<usize>> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        let sig = |p: &FinitePoset, i: usize| (p.down[i].count_ones(..), p.up[i].count_ones(..));
        let mut mine: Vec<usize> = (0..n).collect();
        mine.sort_by_key(|&i| (sig(self, i), i));
        let mut a: Vec<_> = (0..n).map(|i| sig(self, i)).collect();
        let mut b: Vec<_> = (0..n).map(|i| sig(other, i)).collect();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &mine, 0, &mut map, &mut used) {
            Some(map)
        } else {
            None
        }
    }

    fn extend_iso(
        &self,
        other: &FinitePoset,
        order: &[usize],
        k: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let i = order[k];
        let si = (self.down[i].count_ones(..), self.up[i].count_ones(..));
        for c in 0..other.len() {
            if used[c] || (other.down[c].count_ones(..), other.up[c].count_ones(..)) != si {
                continue;
            }
            let consistent = order[..k].iter().all(|&j| {
                self.leq(i, j) == other.leq(c, map[j]) && self.leq(j, i) == other.leq(map[j], c)
            });
            if !consistent {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if self.extend_iso(other, order, k + 1, map, used) {
                return true;
            }
            used[c] = false;
            map[i] = usize::MAX;
        }
        false
    }
}
