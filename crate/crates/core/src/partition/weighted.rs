use std::collections::BTreeMap;
use std::fmt;

use super::{
    block_count, canonical, check_ground, join_codes, lift_code, merge_sets, Element, Partition,
};
use crate::error::{Error, Result};

/// Largest ground set accepted by [`WeightedPartitionSet::reduce`]; the cut
/// matrix has `2^(|U|-1)` columns.
pub const MAX_REDUCE_WIDTH: usize = 30;

/// A set of (partition, weight) pairs over a common ground set, keeping at
/// most one (the minimum) weight per partition.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedPartitionSet {
    ground: Vec<Element>,
    entries: BTreeMap<Vec<u8>, u64>,
}

impl fmt::Debug for WeightedPartitionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl WeightedPartitionSet {
    pub fn empty(ground: &[Element]) -> Result<Self> {
        check_ground(ground)?;
        Ok(Self::empty_unchecked(ground.to_vec()))
    }

    pub(crate) fn empty_unchecked(ground: Vec<Element>) -> Self {
        WeightedPartitionSet {
            ground,
            entries: BTreeMap::new(),
        }
    }

    pub fn singleton(p: Partition, weight: u64) -> Self {
        let mut out = Self::empty_unchecked(p.ground.clone());
        out.entries.insert(p.code, weight);
        out
    }

    pub fn from_entries<I>(ground: &[Element], entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, u64)>,
    {
        let mut out = Self::empty(ground)?;
        for (p, w) in entries {
            out.add(&p, w)?;
        }
        Ok(out)
    }

    /// Adds `(p, w)`, keeping the smaller weight if `p` is already present.
    pub fn add(&mut self, p: &Partition, weight: u64) -> Result<()> {
        if p.ground != self.ground {
            return Err(Error::contract("partition over a different ground set"));
        }
        self.add_code(p.code.clone(), weight);
        Ok(())
    }

    pub(crate) fn add_code(&mut self, code: Vec<u8>, weight: u64) {
        self.entries
            .entry(code)
            .and_modify(|w| *w = (*w).min(weight))
            .or_insert(weight);
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Partition, u64)> + '_ {
        self.entries
            .iter()
            .map(|(c, &w)| (Partition::from_code(self.ground.clone(), c.clone()), w))
    }

    pub fn weight_of(&self, p: &Partition) -> Option<u64> {
        if p.ground != self.ground {
            return None;
        }
        self.entries.get(&p.code).copied()
    }

    /// Minimum weight among entries whose join with `q` is a single block;
    /// `None` stands for an infinite optimum.
    pub fn opt(&self, q: &Partition) -> Result<Option<u64>> {
        if q.ground != self.ground {
            return Err(Error::contract(
                "query partition over a different ground set",
            ));
        }
        Ok(self
            .entries
            .iter()
            .filter(|(p, _)| join_codes(p, &q.code).iter().all(|&l| l == 0))
            .map(|(_, &w)| w)
            .min())
    }

    fn same_ground(&self, other: &Self) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::contract("weighted sets over different ground sets"));
        }
        Ok(())
    }

    /// Union keeping the minimum weight per partition.
    pub fn union(&self, other: &Self) -> Result<Self> {
        self.same_ground(other)?;
        let mut out = self.clone();
        out.absorb(other.clone());
        Ok(out)
    }

    /// In-place union with a set over the same ground.
    pub(crate) fn absorb(&mut self, other: Self) {
        debug_assert_eq!(self.ground, other.ground);
        if self.entries.is_empty() {
            self.entries = other.entries;
            return;
        }
        for (c, w) in other.entries {
            self.add_code(c, w);
        }
    }

    /// Extends the ground set by `x` (disjoint from it) as singletons.
    pub fn insert(&self, x: &[Element]) -> Result<Self> {
        check_ground(x)?;
        let ground = merge_sets(&self.ground, x);
        if ground.len() != self.ground.len() + x.len() {
            return Err(Error::contract(
                "inserted elements already in the ground set",
            ));
        }
        check_ground(&ground)?;
        let mut out = Self::empty_unchecked(ground);
        for (c, &w) in &self.entries {
            out.add_code(lift_code(c, &self.ground, &out.ground), w);
        }
        Ok(out)
    }

    pub fn shift(&self, by: u64) -> Self {
        WeightedPartitionSet {
            ground: self.ground.clone(),
            entries: self
                .entries
                .iter()
                .map(|(c, &w)| (c.clone(), w + by))
                .collect(),
        }
    }

    /// Extends the ground set by `x`, merges all of `x` into one block and
    /// adds `extra` to every weight.
    pub fn glue(&self, x: &[Element], extra: u64) -> Result<Self> {
        check_ground(x)?;
        let ground = merge_sets(&self.ground, x);
        check_ground(&ground)?;
        let mut out = Self::empty_unchecked(ground);
        let xpos: Vec<usize> = x
            .iter()
            .map(|e| {
                out.ground
                    .binary_search(e)
                    .expect("x is part of the new ground")
            })
            .collect();
        for (c, &w) in &self.entries {
            let lifted = lift_code(c, &self.ground, &out.ground);
            let code = match xpos.first() {
                None => lifted,
                Some(&first) => {
                    let target = lifted[first];
                    let merging: Vec<u8> = xpos.iter().map(|&i| lifted[i]).collect();
                    canonical(lifted.iter().map(|&l| {
                        if merging.contains(&l) {
                            target as usize
                        } else {
                            l as usize
                        }
                    }))
                }
            };
            out.add_code(code, w + extra);
        }
        Ok(out)
    }

    /// Removes `x ⊆ U` from the ground set. Entries in which some removed
    /// element shares its block with no surviving element are discarded:
    /// that component can no longer be connected to anything.
    pub fn project(&self, x: &[Element]) -> Result<Self> {
        check_ground(x)?;
        let mut removed = vec![false; self.ground.len()];
        for e in x {
            let i = self
                .ground
                .binary_search(e)
                .map_err(|_| Error::contract(format!("element {e} not in ground set")))?;
            removed[i] = true;
        }
        let ground: Vec<Element> = self
            .ground
            .iter()
            .zip(&removed)
            .filter(|(_, &r)| !r)
            .map(|(&e, _)| e)
            .collect();
        let mut out = Self::empty_unchecked(ground);
        for (c, &w) in &self.entries {
            let mut survives = [false; 256];
            for (i, &l) in c.iter().enumerate() {
                if !removed[i] {
                    survives[l as usize] = true;
                }
            }
            if c.iter()
                .zip(&removed)
                .any(|(&l, &r)| r && !survives[l as usize])
            {
                continue;
            }
            let code = canonical(
                c.iter()
                    .zip(&removed)
                    .filter(|(_, &r)| !r)
                    .map(|(&l, _)| l as usize),
            );
            out.add_code(code, w);
        }
        Ok(out)
    }

    /// Pairwise joins over `U ∪ U'` with weights added.
    pub fn join(&self, other: &Self) -> Result<Self> {
        let ground = merge_sets(&self.ground, &other.ground);
        check_ground(&ground)?;
        let mut out = Self::empty_unchecked(ground);
        let left: Vec<(Vec<u8>, u64)> = self
            .entries
            .iter()
            .map(|(c, &w)| (lift_code(c, &self.ground, &out.ground), w))
            .collect();
        let right: Vec<(Vec<u8>, u64)> = other
            .entries
            .iter()
            .map(|(c, &w)| (lift_code(c, &other.ground, &out.ground), w))
            .collect();
        for (a, wa) in &left {
            for (b, wb) in &right {
                out.add_code(join_codes(a, b), wa + wb);
            }
        }
        Ok(out)
    }

    /// A subset of at most `2^(|U|-1)` entries with the same `opt` value as
    /// `self` for every partition of `U`.
    ///
    /// Rows of the cut matrix (one column per bipartition of `U` whose first
    /// side holds the smallest element; entry 1 iff every block lies on one
    /// side) are scanned by ascending (weight, code) and an entry is kept iff
    /// its row is independent over GF(2) of the rows kept so far.
    pub fn reduce(&self) -> Result<Self> {
        let u = self.ground.len();
        if u > MAX_REDUCE_WIDTH {
            return Err(Error::Capacity(format!(
                "reduce on a ground set of {u} elements (limit {MAX_REDUCE_WIDTH})"
            )));
        }
        if self.entries.len() <= 1 {
            return Ok(self.clone());
        }
        if u == 0 {
            // a single partition exists; rmc already kept one entry
            return Ok(self.clone());
        }
        let cols = 1usize << (u - 1);
        let words = cols.div_ceil(64);
        let mut order: Vec<(&Vec<u8>, u64)> = self.entries.iter().map(|(c, &w)| (c, w)).collect();
        order.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| a.0.cmp(b.0)));

        let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
        let mut out = Self::empty_unchecked(self.ground.clone());
        for (code, w) in order {
            if basis.len() == cols {
                break;
            }
            let mut row = cut_row(code, cols, words);
            for (pivot, b) in &basis {
                if row[pivot / 64] >> (pivot % 64) & 1 == 1 {
                    for (x, y) in row.iter_mut().zip(b) {
                        *x ^= y;
                    }
                }
            }
            if let Some(pivot) = lowest_bit(&row) {
                basis.push((pivot, row));
                out.entries.insert(code.clone(), w);
            }
        }
        Ok(out)
    }
}

fn cut_row(code: &[u8], cols: usize, words: usize) -> Vec<u64> {
    let mut blocks = vec![0u32; block_count(code)];
    for (i, &l) in code.iter().enumerate() {
        blocks[l as usize] |= 1 << i;
    }
    let mut row = vec![0u64; words];
    for c in 0..cols {
        let side = ((c as u32) << 1) | 1;
        if blocks.iter().all(|&b| b & side == 0 || b & side == b) {
            row[c / 64] |= 1 << (c % 64);
        }
    }
    row
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}
