//! Binary relations on lattice elements, tolerances, congruences and homomorphisms.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{ElementId, Lattice};

/// Default bound on the number of unordered non-diagonal pairs an
/// exhaustive enumeration will search over (`2^cap` candidates).
pub const DEFAULT_ENUMERATION_CAP: usize = 24;

/// A relation on `0..n` stored as an `n * n` bit matrix.
///
/// Bits are packed row-major, most significant bit first, so the derived
/// ordering is the lexicographic order of the matrix read row by row.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryRelation {
    n: usize,
    words: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> Self {
        BinaryRelation {
            n,
            words: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn diagonal(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.insert(x, x);
        }
        r
    }

    pub fn full(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            for y in 0..n {
                r.insert(x, y);
            }
        }
        r
    }

    /// The relation containing exactly the given ordered pairs.
    pub fn from_pairs(n: usize, pairs: &[(ElementId, ElementId)]) -> Result<Self> {
        let mut r = Self::empty(n);
        for &(x, y) in pairs {
            for index in [x, y] {
                if index >= n {
                    return Err(Error::IndexOutOfRange { index, n });
                }
            }
            r.insert(x, y);
        }
        Ok(r)
    }

    /// Diagonal plus each pair and its mirror image.
    pub fn symmetric_from_pairs(n: usize, pairs: &[(ElementId, ElementId)]) -> Result<Self> {
        let mut r = Self::from_pairs(n, pairs)?;
        for &(x, y) in pairs {
            r.insert(y, x);
        }
        for x in 0..n {
            r.insert(x, x);
        }
        Ok(r)
    }

    /// The equivalence relation whose classes are `classes`.
    pub fn from_partition(n: usize, classes: &[Vec<ElementId>]) -> Result<Self> {
        let mut r = Self::diagonal(n);
        for class in classes {
            for &x in class {
                for &y in class {
                    if x >= n || y >= n {
                        return Err(Error::IndexOutOfRange { index: x.max(y), n });
                    }
                    r.insert(x, y);
                }
            }
        }
        Ok(r)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn bit(&self, x: ElementId, y: ElementId) -> (usize, u64) {
        let k = x * self.n + y;
        (k / 64, 1u64 << (63 - k % 64))
    }

    #[inline]
    pub fn contains(&self, x: ElementId, y: ElementId) -> bool {
        let (w, mask) = self.bit(x, y);
        self.words[w] & mask != 0
    }

    /// Inserts `(x, y)`, returning whether it was absent.
    #[inline]
    pub fn insert(&mut self, x: ElementId, y: ElementId) -> bool {
        let (w, mask) = self.bit(x, y);
        let fresh = self.words[w] & mask == 0;
        self.words[w] |= mask;
        fresh
    }

    pub fn pairs(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        (0..self.n)
            .flat_map(move |x| (0..self.n).map(move |y| (x, y)))
            .filter(move |&(x, y)| self.contains(x, y))
    }

    /// Pairs `(x, y)` with `x < y`, in row-major order.
    pub fn upper_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.pairs().filter(|&(x, y)| x < y).collect()
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.n == other.n && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "relations on different carriers");
        BinaryRelation {
            n: self.n,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|x| self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        self.pairs()
            .all(|(x, y)| (0..self.n).all(|z| !self.contains(y, z) || self.contains(x, z)))
    }

    /// The elements related to `x`.
    pub fn related(&self, x: ElementId) -> Vec<ElementId> {
        (0..self.n).filter(|&y| self.contains(x, y)).collect()
    }

    /// Classes of an equivalence relation, each sorted, ordered by least member.
    pub fn classes(&self) -> Vec<Vec<ElementId>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for x in 0..self.n {
            if seen[x] {
                continue;
            }
            let class = self.related(x);
            for &y in &class {
                seen[y] = true;
            }
            out.push(class);
        }
        out
    }
}

fn check_size(l: &Lattice, r: &BinaryRelation) -> Result<()> {
    if l.len() != r.size() {
        return Err(Error::SizeMismatch {
            expected: l.len(),
            found: r.size(),
        });
    }
    Ok(())
}

/// Whether `r` is reflexive, symmetric and compatible with join and meet.
pub fn is_tolerance(l: &Lattice, r: &BinaryRelation) -> Result<bool> {
    check_size(l, r)?;
    Ok(satisfies_tolerance(l, r))
}

fn satisfies_tolerance(l: &Lattice, r: &BinaryRelation) -> bool {
    if !r.is_reflexive() || !r.is_symmetric() {
        return false;
    }
    let pairs: Vec<_> = r.pairs().filter(|(a, b)| a != b).collect();
    // pairs on the diagonal combine with (c, c) into (a v c, a v c), always present
    pairs.iter().all(|&(a, b)| {
        l.elements()
            .all(|c| r.contains(l.join(a, c), l.join(b, c)) && r.contains(l.meet(a, c), l.meet(b, c)))
            && pairs
                .iter()
                .all(|&(c, d)| r.contains(l.join(a, c), l.join(b, d)) && r.contains(l.meet(a, c), l.meet(b, d)))
    })
}

/// A transitive tolerance.
pub fn is_congruence(l: &Lattice, r: &BinaryRelation) -> Result<bool> {
    Ok(is_tolerance(l, r)? && r.is_transitive())
}

/// The least tolerance containing every given pair.
pub fn tolerance_generated_by(l: &Lattice, pairs: &[(ElementId, ElementId)]) -> Result<BinaryRelation> {
    let n = l.len();
    let mut rel = BinaryRelation::symmetric_from_pairs(n, pairs)?;
    let mut members: Vec<(ElementId, ElementId)> = rel.pairs().collect();
    let mut work = members.clone();
    while let Some((a, b)) = work.pop() {
        let mut found = Vec::new();
        for &(c, d) in &members {
            for (x, y) in [(l.join(a, c), l.join(b, d)), (l.meet(a, c), l.meet(b, d))] {
                for (p, q) in [(x, y), (y, x)] {
                    if rel.insert(p, q) {
                        found.push((p, q));
                    }
                }
            }
        }
        members.extend_from_slice(&found);
        work.extend(found);
    }
    debug_assert!(satisfies_tolerance(l, &rel));
    Ok(rel)
}

pub fn enumerate_tolerances(l: &Lattice) -> Result<Vec<BinaryRelation>> {
    enumerate_tolerances_with_cap(l, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_congruences(l: &Lattice) -> Result<Vec<BinaryRelation>> {
    enumerate_congruences_with_cap(l, DEFAULT_ENUMERATION_CAP)
}

/// Every tolerance of `l`, by filtering all reflexive symmetric relations.
pub fn enumerate_tolerances_with_cap(l: &Lattice, cap: usize) -> Result<Vec<BinaryRelation>> {
    enumerate_filtered(l, cap, |_| true)
}

pub fn enumerate_congruences_with_cap(l: &Lattice, cap: usize) -> Result<Vec<BinaryRelation>> {
    enumerate_filtered(l, cap, BinaryRelation::is_transitive)
}

fn enumerate_filtered(
    l: &Lattice,
    cap: usize,
    extra: impl Fn(&BinaryRelation) -> bool + Sync,
) -> Result<Vec<BinaryRelation>> {
    let n = l.len();
    let slots: Vec<(ElementId, ElementId)> = (0..n).flat_map(|x| ((x + 1)..n).map(move |y| (x, y))).collect();
    let p = slots.len();
    if p > cap || p >= 64 {
        return Err(Error::TooLarge { pairs: p, cap });
    }
    let candidate = |mask: u64| {
        let mut r = BinaryRelation::diagonal(n);
        for (k, &(x, y)) in slots.iter().enumerate() {
            if mask >> k & 1 == 1 {
                r.insert(x, y);
                r.insert(y, x);
            }
        }
        r
    };
    const CHUNK: u64 = 1 << 10;
    let total = 1u64 << p;
    let mut found: Vec<BinaryRelation> = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|chunk| {
            let start = chunk * CHUNK;
            (start..(start + CHUNK).min(total))
                .map(candidate)
                .filter(|r| satisfies_tolerance(l, r) && extra(r))
        })
        .collect();
    found.sort_unstable();
    Ok(found)
}

/// A lattice homomorphism, validated on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    dom: Lattice,
    cod: Lattice,
    map: Vec<ElementId>,
}

impl Homomorphism {
    pub fn new(dom: Lattice, cod: Lattice, map: Vec<ElementId>) -> Result<Self> {
        if !is_homomorphism(&dom, &cod, &map)? {
            return Err(Error::NotAHomomorphism);
        }
        Ok(Homomorphism { dom, cod, map })
    }

    pub fn identity(l: &Lattice) -> Self {
        Homomorphism {
            dom: l.clone(),
            cod: l.clone(),
            map: l.elements().collect(),
        }
    }

    pub fn dom(&self) -> &Lattice {
        &self.dom
    }

    pub fn cod(&self) -> &Lattice {
        &self.cod
    }

    pub fn map(&self) -> &[ElementId] {
        &self.map
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &y in &self.map {
            hit[y] = true;
        }
        hit.into_iter().all(|h| h)
    }
}

/// Whether `map` sends joins to joins and meets to meets.
pub fn is_homomorphism(dom: &Lattice, cod: &Lattice, map: &[ElementId]) -> Result<bool> {
    if map.len() != dom.len() {
        return Err(Error::SizeMismatch {
            expected: dom.len(),
            found: map.len(),
        });
    }
    if let Some(&index) = map.iter().find(|&&y| y >= cod.len()) {
        return Err(Error::IndexOutOfRange { index, n: cod.len() });
    }
    Ok(dom.elements().all(|x| {
        dom.elements()
            .all(|y| map[dom.join(x, y)] == cod.join(map[x], map[y]) && map[dom.meet(x, y)] == cod.meet(map[x], map[y]))
    }))
}

/// `{(phi(x), phi(y)) : (x, y) in theta}` as a relation on the codomain.
pub fn image_relation(phi: &Homomorphism, theta: &BinaryRelation) -> Result<BinaryRelation> {
    check_size(phi.dom(), theta)?;
    let mut out = BinaryRelation::empty(phi.cod().len());
    for (x, y) in theta.pairs() {
        out.insert(phi.apply(x), phi.apply(y));
    }
    Ok(out)
}
