//! Blocks of a tolerance and the lattice they form.
//!
//! A block is a maximal set `X` with `X x X` inside the tolerance, i.e. a
//! maximal clique of the tolerance viewed as a graph. The join of two blocks
//! `A`, `B` is the single block including `{a v b : a in A, b in B}`, and
//! dually for meets. Both uniqueness and lattice-hood are checked, never
//! assumed.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{ElementId, Lattice};
use crate::relations::{is_tolerance, BinaryRelation};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    members: Vec<ElementId>,
}

impl Block {
    /// Wraps a member list, sorting and deduplicating it.
    pub fn new(mut members: Vec<ElementId>) -> Self {
        members.sort_unstable();
        members.dedup();
        Block { members }
    }

    pub fn members(&self) -> &[ElementId] {
        &self.members
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn includes(&self, set: &[ElementId]) -> bool {
        set.iter().all(|&x| self.contains(x))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `{x,y,...}` using the lattice's labels.
    pub fn display<'a>(&'a self, l: &'a Lattice) -> impl fmt::Display + 'a {
        BlockLabel {
            block: self,
            lattice: l,
        }
    }
}

struct BlockLabel<'a> {
    block: &'a Block,
    lattice: &'a Lattice,
}

impl fmt::Display for BlockLabel<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, &x) in self.block.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(self.lattice.label(x))?;
        }
        f.write_str("}")
    }
}

/// All blocks of `rho`, sorted lexicographically by member list.
pub fn blocks_of(l: &Lattice, rho: &BinaryRelation) -> Result<Vec<Block>> {
    if !is_tolerance(l, rho)? {
        return Err(Error::NotATolerance);
    }
    Ok(maximal_cliques(rho))
}

/// Bron-Kerbosch with pivoting over the loop-free graph of `rel`.
pub(crate) fn maximal_cliques(rel: &BinaryRelation) -> Vec<Block> {
    let n = rel.size();
    let neighbours: Vec<Vec<ElementId>> = (0..n)
        .map(|x| (0..n).filter(|&y| y != x && rel.contains(x, y)).collect())
        .collect();
    let mut out = Vec::new();
    let candidates: Vec<ElementId> = (0..n).collect();
    expand(&neighbours, &mut Vec::new(), candidates, Vec::new(), &mut out);
    out.sort_unstable();
    out
}

fn expand(
    neighbours: &[Vec<ElementId>],
    clique: &mut Vec<ElementId>,
    mut candidates: Vec<ElementId>,
    mut excluded: Vec<ElementId>,
    out: &mut Vec<Block>,
) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            out.push(Block::new(clique.clone()));
        }
        return;
    }
    let adjacent = |u: ElementId, v: ElementId| neighbours[u].binary_search(&v).is_ok();
    let pivot = candidates
        .iter()
        .chain(&excluded)
        .copied()
        .max_by_key(|&u| candidates.iter().filter(|&&v| adjacent(u, v)).count())
        .expect("candidates is nonempty");
    let branch: Vec<ElementId> = candidates.iter().copied().filter(|&v| !adjacent(pivot, v)).collect();
    for v in branch {
        clique.push(v);
        expand(
            neighbours,
            clique,
            candidates.iter().copied().filter(|&w| adjacent(v, w)).collect(),
            excluded.iter().copied().filter(|&w| adjacent(v, w)).collect(),
            out,
        );
        clique.pop();
        candidates.retain(|&w| w != v);
        excluded.push(v);
    }
}

/// The blocks of a tolerance together with the lattice structure on them.
#[derive(Debug, Clone)]
pub struct BlockLattice {
    base: Lattice,
    rho: BinaryRelation,
    blocks: Vec<Block>,
    lattice: Lattice,
}

#[derive(Clone, Copy)]
enum Op {
    Join,
    Meet,
}

impl BlockLattice {
    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn rho(&self) -> &BinaryRelation {
        &self.rho
    }

    /// Blocks in canonical order; a block's id is its position here.
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, id: usize) -> &Block {
        &self.blocks[id]
    }

    /// The lattice on block ids.
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn block_id(&self, block: &Block) -> Result<usize> {
        self.blocks
            .binary_search(block)
            .map_err(|_| Error::NotABlock(block.members.clone()))
    }

    pub fn block_join(&self, a: &Block, b: &Block) -> Result<Block> {
        let (i, j) = (self.block_id(a)?, self.block_id(b)?);
        Ok(self.blocks[self.lattice.join(i, j)].clone())
    }

    pub fn block_meet(&self, a: &Block, b: &Block) -> Result<Block> {
        let (i, j) = (self.block_id(a)?, self.block_id(b)?);
        Ok(self.blocks[self.lattice.meet(i, j)].clone())
    }

    /// Ids of the blocks containing `x`.
    pub fn blocks_containing(&self, x: ElementId) -> Vec<usize> {
        (0..self.blocks.len()).filter(|&i| self.blocks[i].contains(x)).collect()
    }

    /// Whether some block contains both `x` and `y`.
    pub fn share_block(&self, x: ElementId, y: ElementId) -> bool {
        self.blocks.iter().any(|b| b.contains(x) && b.contains(y))
    }

    pub fn label(&self, id: usize) -> String {
        self.blocks[id].display(&self.base).to_string()
    }
}

/// Combines blocks `a` and `b` elementwise and returns the unique block including the result.
fn combine(base: &Lattice, blocks: &[Block], a: &Block, b: &Block, op: Op) -> Result<usize> {
    let mut set: Vec<ElementId> = a
        .members()
        .iter()
        .flat_map(|&x| {
            b.members().iter().map(move |&y| match op {
                Op::Join => base.join(x, y),
                Op::Meet => base.meet(x, y),
            })
        })
        .collect();
    set.sort_unstable();
    set.dedup();
    let including: Vec<usize> = (0..blocks.len()).filter(|&k| blocks[k].includes(&set)).collect();
    match including.as_slice() {
        [only] => Ok(*only),
        _ => Err(Error::UniquenessViolation {
            set,
            candidates: including.iter().map(|&k| blocks[k].members.clone()).collect(),
        }),
    }
}

/// Builds `L / rho`: the blocks of `rho` with block-level join and meet.
pub fn block_lattice(l: &Lattice, rho: &BinaryRelation) -> Result<BlockLattice> {
    let blocks = blocks_of(l, rho)?;
    let m = blocks.len();
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            join[i * m + j] = combine(l, &blocks, &blocks[i], &blocks[j], Op::Join)?;
            meet[i * m + j] = combine(l, &blocks, &blocks[i], &blocks[j], Op::Meet)?;
        }
    }
    let labels = blocks.iter().map(|b| b.display(l).to_string()).collect();
    let lattice = Lattice::from_tables(labels, join, meet)?;
    Ok(BlockLattice {
        base: l.clone(),
        rho: rho.clone(),
        blocks,
        lattice,
    })
}
