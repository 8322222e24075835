//! Set partitions of a finite ground set and weighted partition sets.
//!
//! A partition is stored as a restricted-growth code over a sorted ground
//! set: the first element has label 0 and every later label is at most one
//! more than the largest label seen so far. Equal partitions therefore have
//! equal codes, which makes them usable as map keys.

mod weighted;

pub use weighted::{WeightedPartitionSet, MAX_REDUCE_WIDTH};

use std::fmt;

use crate::error::{Error, Result};

pub type Element = usize;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    ground: Vec<Element>,
    code: Vec<u8>,
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, b) in self.blocks().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "}}")
    }
}

pub(crate) fn check_ground(ground: &[Element]) -> Result<()> {
    if ground.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::contract(
            "ground set must be sorted and duplicate-free",
        ));
    }
    if ground.len() > u8::MAX as usize {
        return Err(Error::Capacity(format!(
            "ground set of {} elements",
            ground.len()
        )));
    }
    Ok(())
}

/// Relabels arbitrary block labels into restricted-growth form.
pub(crate) fn canonical<I: IntoIterator<Item = usize>>(labels: I) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    labels
        .into_iter()
        .map(|l| match map.iter().find(|&&(from, _)| from == l) {
            Some(&(_, to)) => to,
            None => {
                let to = map.len() as u8;
                map.push((l, to));
                to
            }
        })
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Finest common coarsening of two codes over the same ground set.
pub(crate) fn join_codes(a: &[u8], b: &[u8]) -> Vec<u8> {
    debug_assert_eq!(a.len(), b.len());
    let n = a.len();
    let mut parent: Vec<usize> = (0..n).collect();
    let mut first_a = [usize::MAX; 256];
    let mut first_b = [usize::MAX; 256];
    for i in 0..n {
        for (code, first) in [(a, &mut first_a), (b, &mut first_b)] {
            let l = code[i] as usize;
            if first[l] == usize::MAX {
                first[l] = i;
            } else {
                let (x, y) = (find(&mut parent, first[l]), find(&mut parent, i));
                if x != y {
                    parent[x.max(y)] = x.min(y);
                }
            }
        }
    }
    canonical((0..n).map(|i| find(&mut parent, i)))
}

/// Number of blocks of a canonical code.
pub(crate) fn block_count(code: &[u8]) -> usize {
    code.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
}

/// Re-expresses `code` over `from` on the superset `to`, adding singletons.
pub(crate) fn lift_code(code: &[u8], from: &[Element], to: &[Element]) -> Vec<u8> {
    let fresh = block_count(code);
    let mut j = 0;
    let mut extra = 0;
    canonical(to.iter().map(|e| {
        if j < from.len() && from[j] == *e {
            j += 1;
            code[j - 1] as usize
        } else {
            extra += 1;
            fresh + extra - 1
        }
    }))
}

/// Sorted union of two sorted sets.
pub(crate) fn merge_sets(a: &[Element], b: &[Element]) -> Vec<Element> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            out.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            out.push(b[j]);
            j += 1;
        } else {
            out.push(a[i]);
            i += 1;
            j += 1;
        }
    }
    out
}

impl Partition {
    /// Builds a partition from explicit blocks; the ground set is their union.
    pub fn from_blocks(blocks: &[Vec<Element>]) -> Result<Self> {
        let mut ground: Vec<Element> = blocks.iter().flatten().copied().collect();
        ground.sort_unstable();
        let before = ground.len();
        ground.dedup();
        if ground.len() != before {
            return Err(Error::contract("blocks overlap"));
        }
        if blocks.iter().any(Vec::is_empty) {
            return Err(Error::contract("empty block"));
        }
        check_ground(&ground)?;
        let code = canonical(ground.iter().map(|e| {
            blocks
                .iter()
                .position(|b| b.contains(e))
                .expect("element comes from a block")
        }));
        Ok(Partition { ground, code })
    }

    /// Every element in its own block.
    pub fn bottom(ground: &[Element]) -> Result<Self> {
        check_ground(ground)?;
        Ok(Partition {
            ground: ground.to_vec(),
            code: (0..ground.len()).map(|i| i as u8).collect(),
        })
    }

    /// A single block `{U}`.
    pub fn top(ground: &[Element]) -> Result<Self> {
        check_ground(ground)?;
        Ok(Partition {
            ground: ground.to_vec(),
            code: vec![0; ground.len()],
        })
    }

    /// `U[X]`: `x` merged into one block, every other element a singleton.
    pub fn merged(ground: &[Element], x: &[Element]) -> Result<Self> {
        check_ground(ground)?;
        let code =
            canonical(ground.iter().enumerate().map(
                |(i, e)| {
                    if x.contains(e) {
                        usize::MAX
                    } else {
                        i
                    }
                },
            ));
        Ok(Partition {
            ground: ground.to_vec(),
            code,
        })
    }

    pub(crate) fn from_code(ground: Vec<Element>, code: Vec<u8>) -> Self {
        debug_assert_eq!(ground.len(), code.len());
        Partition { ground, code }
    }

    pub fn ground(&self) -> &[Element] {
        &self.ground
    }

    pub fn code(&self) -> &[u8] {
        &self.code
    }

    pub fn block_count(&self) -> usize {
        block_count(&self.code)
    }

    pub fn is_single_block(&self) -> bool {
        self.code.iter().all(|&l| l == 0)
    }

    /// Blocks in order of their smallest element, each sorted.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (e, &l) in self.ground.iter().zip(&self.code) {
            out[l as usize].push(*e);
        }
        out
    }

    fn same_ground(&self, other: &Partition) -> Result<()> {
        if self.ground != other.ground {
            return Err(Error::contract("partitions over different ground sets"));
        }
        Ok(())
    }

    /// `self ⊑ other`: every block of `other` lies inside a block of `self`.
    pub fn coarsens(&self, other: &Partition) -> Result<bool> {
        self.same_ground(other)?;
        let mut map = [u8::MAX; 256];
        for (&p, &q) in self.code.iter().zip(&other.code) {
            let slot = &mut map[q as usize];
            if *slot == u8::MAX {
                *slot = p;
            } else if *slot != p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        Ok(Partition {
            ground: self.ground.clone(),
            code: join_codes(&self.code, &other.code),
        })
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.same_ground(other)?;
        let code = canonical(
            self.code
                .iter()
                .zip(&other.code)
                .map(|(&p, &q)| p as usize * 256 + q as usize),
        );
        Ok(Partition {
            ground: self.ground.clone(),
            code,
        })
    }

    /// Restriction to `x ⊆ U`.
    pub fn project_down(&self, x: &[Element]) -> Result<Partition> {
        check_ground(x)?;
        let mut code = Vec::with_capacity(x.len());
        let mut i = 0;
        for e in x {
            while i < self.ground.len() && self.ground[i] < *e {
                i += 1;
            }
            if i == self.ground.len() || self.ground[i] != *e {
                return Err(Error::contract(format!("element {e} not in ground set")));
            }
            code.push(self.code[i] as usize);
        }
        Ok(Partition {
            ground: x.to_vec(),
            code: canonical(code),
        })
    }

    /// Extension to `y ⊇ U` with every new element a singleton.
    pub fn lift_up(&self, y: &[Element]) -> Result<Partition> {
        check_ground(y)?;
        if merge_sets(&self.ground, y).len() != y.len() {
            return Err(Error::contract(
                "lift target does not contain the ground set",
            ));
        }
        Ok(Partition {
            ground: y.to_vec(),
            code: lift_code(&self.code, &self.ground, y),
        })
    }

    /// All partitions of `ground` in restricted-growth order.
    pub fn enumerate(ground: &[Element]) -> Result<Vec<Partition>> {
        check_ground(ground)?;
        let n = ground.len();
        let mut out = Vec::new();
        let mut code = vec![0u8; n];
        fn rec(
            i: usize,
            max: u8,
            code: &mut Vec<u8>,
            ground: &[Element],
            out: &mut Vec<Partition>,
        ) {
            if i == code.len() {
                out.push(Partition {
                    ground: ground.to_vec(),
                    code: code.clone(),
                });
                return;
            }
            for l in 0..=max + 1 {
                code[i] = l;
                rec(i + 1, max.max(l), code, ground, out);
            }
        }
        if n == 0 {
            out.push(Partition {
                ground: Vec::new(),
                code: Vec::new(),
            });
        } else {
            rec(1, 0, &mut code, ground, &mut out);
        }
        Ok(out)
    }
}
