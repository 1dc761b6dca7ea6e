//! Realizing a tolerance as the image of a congruence.
//!
//! Given a tolerance `rho` of `L`, the lattice `K` has as elements the pairs
//! `(A, x)` with `A` a block of `rho` and `x` in `A`, ordered so that
//! `(A, x) v (B, y) = (A v B, x v y)` and dually. Relating pairs with the same
//! block gives a congruence `theta` of `K`, and the projection
//! `phi(A, x) = x` is a homomorphism of `K` onto `L` with `phi(theta) = rho`.

use crate::blocks::{block_lattice, BlockLattice};
use crate::error::{Error, Result};
use crate::lattice::{ElementId, Lattice};
use crate::relations::{image_relation, is_congruence, is_homomorphism, BinaryRelation, Homomorphism};
use crate::report::VerificationReport;

#[derive(Debug, Clone)]
pub struct PairedLattice {
    blocks: BlockLattice,
    k: Lattice,
    /// `pairs[id] = (block id, element)`, block-major.
    pairs: Vec<(usize, ElementId)>,
    /// Id of the first pair of each block.
    offsets: Vec<usize>,
    theta: BinaryRelation,
    phi: Homomorphism,
}

impl PairedLattice {
    pub fn base(&self) -> &Lattice {
        self.blocks.base()
    }

    pub fn rho(&self) -> &BinaryRelation {
        self.blocks.rho()
    }

    pub fn block_lattice(&self) -> &BlockLattice {
        &self.blocks
    }

    /// The lattice `K`.
    pub fn k(&self) -> &Lattice {
        &self.k
    }

    pub fn theta(&self) -> &BinaryRelation {
        &self.theta
    }

    pub fn phi(&self) -> &Homomorphism {
        &self.phi
    }

    /// The `(block id, element)` pair behind an element of `K`.
    pub fn pair(&self, id: ElementId) -> (usize, ElementId) {
        self.pairs[id]
    }

    pub fn pairs(&self) -> &[(usize, ElementId)] {
        &self.pairs
    }

    /// The element of `K` for `(block, x)`, if `x` lies in that block.
    pub fn id_of(&self, block: usize, x: ElementId) -> Option<ElementId> {
        let members = self.blocks.block(block).members();
        members.binary_search(&x).ok().map(|pos| self.offsets[block] + pos)
    }
}

/// Builds `K`, `theta` and `phi` for a tolerance `rho` of `l`.
pub fn build_k(l: &Lattice, rho: &BinaryRelation) -> Result<PairedLattice> {
    let bl = block_lattice(l, rho)?;
    let mut pairs = Vec::new();
    let mut offsets = Vec::with_capacity(bl.blocks().len());
    for (a, block) in bl.blocks().iter().enumerate() {
        offsets.push(pairs.len());
        pairs.extend(block.members().iter().map(|&x| (a, x)));
    }
    let size = pairs.len();
    let id_of = |block: usize, x: ElementId| {
        bl.block(block)
            .members()
            .binary_search(&x)
            .ok()
            .map(|pos| offsets[block] + pos)
    };

    let mut join = vec![0; size * size];
    let mut meet = vec![0; size * size];
    for (p, &(a, x)) in pairs.iter().enumerate() {
        for (q, &(b, y)) in pairs.iter().enumerate() {
            let escaped = Error::ClosureViolation { a, x, b, y };
            join[p * size + q] = id_of(bl.lattice().join(a, b), l.join(x, y)).ok_or_else(|| escaped.clone())?;
            meet[p * size + q] = id_of(bl.lattice().meet(a, b), l.meet(x, y)).ok_or(escaped)?;
        }
    }
    let labels = pairs
        .iter()
        .map(|&(a, x)| format!("{}:{}", bl.label(a), l.label(x)))
        .collect();
    let k = Lattice::from_tables(labels, join, meet)?;

    let classes: Vec<Vec<ElementId>> = (0..bl.blocks().len())
        .map(|a| (offsets[a]..offsets[a] + bl.block(a).len()).collect())
        .collect();
    let theta = BinaryRelation::from_partition(size, &classes)?;
    if !is_congruence(&k, &theta)? {
        return Err(Error::NotACongruence);
    }
    let phi = Homomorphism::new(k.clone(), l.clone(), pairs.iter().map(|&(_, x)| x).collect())?;
    if !phi.is_surjective() {
        return Err(Error::NotAHomomorphism);
    }
    Ok(PairedLattice {
        blocks: bl,
        k,
        pairs,
        offsets,
        theta,
        phi,
    })
}

/// Labelled pairs in exactly one of the two relations.
pub(crate) fn difference_witnesses(
    l: &Lattice,
    left: &BinaryRelation,
    right: &BinaryRelation,
) -> Vec<(String, String)> {
    left.pairs()
        .filter(|&(x, y)| !right.contains(x, y))
        .chain(right.pairs().filter(|&(x, y)| !left.contains(x, y)))
        .map(|(x, y)| (l.label(x).to_owned(), l.label(y).to_owned()))
        .collect()
}

/// Builds `K` for `rho` and checks every claim made about it.
///
/// Only `NotATolerance` (and a size mismatch) is returned as an error; a
/// construction step that fails is recorded as a failed check.
pub fn verify_theorem1(l: &Lattice, rho: &BinaryRelation) -> Result<VerificationReport> {
    if !crate::relations::is_tolerance(l, rho)? {
        return Err(Error::NotATolerance);
    }
    let mut report = VerificationReport::new("tolerance is the image of a congruence");
    let pk = match build_k(l, rho) {
        Ok(pk) => pk,
        Err(e) => {
            report.fail_with("construction", e.to_string());
            return Ok(report);
        }
    };
    let k = pk.k();
    report
        .fact("blocks", pk.block_lattice().blocks().len())
        .fact("|K|", k.len());
    report.check("K is a lattice", k.check_invariants().is_ok());
    report.check("theta is a congruence of K", is_congruence(k, pk.theta())?);
    report.check("phi is a homomorphism", is_homomorphism(k, l, pk.phi().map())?);
    report.check("phi is onto L", pk.phi().is_surjective());
    let image = image_relation(pk.phi(), pk.theta())?;
    report.check_witnesses("phi(theta) = rho", difference_witnesses(l, &image, rho));
    Ok(report)
}
