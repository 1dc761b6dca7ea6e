//! Finite lattices stored as an order matrix plus join and meet tables.
//!
//! Elements are dense indices `0..n`; labels are carried for display only.
//! Every constructor validates the result, so a `Lattice` value always
//! satisfies the lattice laws.

use std::collections::HashMap;

use crate::error::{Error, LatticeDefect, Result};

pub type ElementId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lattice {
    labels: Vec<String>,
    leq: Vec<bool>,
    join: Vec<ElementId>,
    meet: Vec<ElementId>,
}

impl Lattice {
    /// Builds a lattice from its cover relation, given as `(lower, upper)` label pairs.
    pub fn from_covers<S: AsRef<str>>(labels: &[S], covers: &[(S, S)]) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_owned()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (lo, hi) in covers {
            let lo = lookup(&index, lo.as_ref())?;
            let hi = lookup(&index, hi.as_ref())?;
            if lo == hi {
                return Err(Error::CycleDetected(labels[lo].clone()));
            }
            leq[lo * n + hi] = true;
        }
        Self::from_order(labels, leq)
    }

    /// Builds a lattice from a relation whose reflexive-transitive closure is the order.
    ///
    /// `leq` is an `n * n` row-major matrix; it is closed in place before the
    /// tables are computed.
    pub fn from_order(labels: Vec<String>, mut leq: Vec<bool>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        label_index(&labels)?;
        if leq.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                found: leq.len(),
            });
        }
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::CycleDetected(labels[i].clone()));
                }
            }
        }

        let le = |a: usize, b: usize| leq[a * n + b];
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let witness = |defect| Error::NotALattice {
                    x: labels[x].clone(),
                    y: labels[y].clone(),
                    defect,
                };
                let uppers: Vec<usize> = (0..n).filter(|&z| le(x, z) && le(y, z)).collect();
                if uppers.is_empty() {
                    return Err(witness(LatticeDefect::NoUpperBound));
                }
                let lub = uppers
                    .iter()
                    .copied()
                    .find(|&z| uppers.iter().all(|&w| le(z, w)))
                    .ok_or_else(|| witness(LatticeDefect::NoLeastUpperBound))?;
                let lowers: Vec<usize> = (0..n).filter(|&z| le(z, x) && le(z, y)).collect();
                if lowers.is_empty() {
                    return Err(witness(LatticeDefect::NoLowerBound));
                }
                let glb = lowers
                    .iter()
                    .copied()
                    .find(|&z| lowers.iter().all(|&w| le(w, z)))
                    .ok_or_else(|| witness(LatticeDefect::NoGreatestLowerBound))?;
                join[x * n + y] = lub;
                join[y * n + x] = lub;
                meet[x * n + y] = glb;
                meet[y * n + x] = glb;
            }
        }
        Ok(Lattice {
            labels,
            leq,
            join,
            meet,
        })
    }

    /// Builds a lattice from join and meet tables, checking every lattice law.
    ///
    /// The order is recovered as `x <= y` iff `x v y = y`, then checked to be a
    /// partial order in which the tables really are least upper and greatest
    /// lower bounds.
    pub fn from_tables(labels: Vec<String>, join: Vec<ElementId>, meet: Vec<ElementId>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyLattice);
        }
        label_index(&labels)?;
        for table in [&join, &meet] {
            if table.len() != n * n {
                return Err(Error::SizeMismatch {
                    expected: n * n,
                    found: table.len(),
                });
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= n) {
                return Err(Error::IndexOutOfRange { index: bad, n });
            }
        }
        let j = |a: usize, b: usize| join[a * n + b];
        let m = |a: usize, b: usize| meet[a * n + b];
        let violated = |x: usize, y: usize, law| Error::NotALattice {
            x: labels[x].clone(),
            y: labels[y].clone(),
            defect: LatticeDefect::LawViolated(law),
        };
        for x in 0..n {
            if j(x, x) != x || m(x, x) != x {
                return Err(violated(x, x, "idempotence"));
            }
            for y in 0..n {
                if j(x, y) != j(y, x) || m(x, y) != m(y, x) {
                    return Err(violated(x, y, "commutativity"));
                }
                if m(x, j(x, y)) != x || j(x, m(x, y)) != x {
                    return Err(violated(x, y, "absorption"));
                }
                for z in 0..n {
                    if j(j(x, y), z) != j(x, j(y, z)) || m(m(x, y), z) != m(x, m(y, z)) {
                        return Err(violated(x, y, "associativity"));
                    }
                }
            }
        }
        let leq = (0..n * n).map(|i| join[i] == i % n).collect();
        let lattice = Lattice {
            labels,
            leq,
            join,
            meet,
        };
        lattice.check_invariants()?;
        Ok(lattice)
    }

    /// Re-checks that the order is a partial order and that the tables are its bounds.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.len();
        let fail = |x: usize, y: usize, defect| Error::NotALattice {
            x: self.labels[x].clone(),
            y: self.labels[y].clone(),
            defect,
        };
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(fail(x, x, LatticeDefect::LawViolated("reflexivity")));
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(fail(x, y, LatticeDefect::LawViolated("antisymmetry")));
                }
                for z in 0..n {
                    if self.leq(x, y) && self.leq(y, z) && !self.leq(x, z) {
                        return Err(fail(x, z, LatticeDefect::LawViolated("transitivity")));
                    }
                }
                let (lub, glb) = (self.join(x, y), self.meet(x, y));
                if !(self.leq(x, lub) && self.leq(y, lub)) {
                    return Err(fail(x, y, LatticeDefect::NoUpperBound));
                }
                if !(self.leq(glb, x) && self.leq(glb, y)) {
                    return Err(fail(x, y, LatticeDefect::NoLowerBound));
                }
                for z in 0..n {
                    if self.leq(x, z) && self.leq(y, z) && !self.leq(lub, z) {
                        return Err(fail(x, y, LatticeDefect::NoLeastUpperBound));
                    }
                    if self.leq(z, x) && self.leq(z, y) && !self.leq(z, glb) {
                        return Err(fail(x, y, LatticeDefect::NoGreatestLowerBound));
                    }
                }
            }
        }
        Ok(())
    }

    /// The `n`-element chain labelled `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Result<Self> {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let leq = (0..n * n).map(|i| i / n <= i % n).collect();
        Self::from_order(labels, leq)
    }

    /// The Boolean lattice of subsets of a `k`-element set, labelled by bit strings.
    pub fn boolean_cube(k: usize) -> Result<Self> {
        let n = 1usize << k;
        let labels = (0..n)
            .map(|s| if k == 0 { "0".to_owned() } else { format!("{s:0k$b}") })
            .collect();
        let leq = (0..n * n).map(|i| (i / n) & (i % n) == i / n).collect();
        Self::from_order(labels, leq)
    }

    /// `M3` (the diamond) or `N5` (the pentagon), both on labels `o, a, b, c, i`.
    pub fn named(name: &str) -> Result<Self> {
        let labels = ["o", "a", "b", "c", "i"];
        let covers: &[(&str, &str)] = match name.to_ascii_uppercase().as_str() {
            "M3" => &[("o", "a"), ("o", "b"), ("o", "c"), ("a", "i"), ("b", "i"), ("c", "i")],
            "N5" => &[("o", "a"), ("a", "b"), ("b", "i"), ("o", "c"), ("c", "i")],
            _ => return Err(Error::UnknownName(name.to_owned())),
        };
        Self::from_covers(&labels, covers)
    }

    /// Cartesian product with componentwise order; `(x, y)` gets index `x * |other| + y`.
    pub fn direct_product(&self, other: &Lattice) -> Result<Self> {
        let (n1, n2) = (self.len(), other.len());
        let n = n1 * n2;
        let labels = (0..n)
            .map(|i| format!("({},{})", self.label(i / n2), other.label(i % n2)))
            .collect();
        let combine = |f: &dyn Fn(usize, usize) -> usize| -> Vec<ElementId> {
            (0..n * n)
                .map(|k| {
                    let (a, b) = (k / n, k % n);
                    f(a, b)
                })
                .collect()
        };
        let join = combine(&|a, b| self.join(a / n2, b / n2) * n2 + other.join(a % n2, b % n2));
        let meet = combine(&|a, b| self.meet(a / n2, b / n2) * n2 + other.meet(a % n2, b % n2));
        Self::from_tables(labels, join, meet)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: ElementId) -> &str {
        &self.labels[x]
    }

    pub fn index_of(&self, label: &str) -> Option<ElementId> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: ElementId, y: ElementId) -> ElementId {
        self.join[x * self.len() + y]
    }

    #[inline]
    pub fn meet(&self, x: ElementId, y: ElementId) -> ElementId {
        self.meet[x * self.len() + y]
    }

    pub fn elements(&self) -> std::ops::Range<ElementId> {
        0..self.len()
    }

    pub fn bottom(&self) -> ElementId {
        self.elements().fold(0, |acc, x| self.meet(acc, x))
    }

    pub fn top(&self) -> ElementId {
        self.elements().fold(0, |acc, x| self.join(acc, x))
    }

    /// Whether `y` covers `x`.
    pub fn covers(&self, x: ElementId, y: ElementId) -> bool {
        x != y
            && self.leq(x, y)
            && !self
                .elements()
                .any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
    }

    /// All cover pairs `(lower, upper)`, sorted.
    pub fn cover_pairs(&self) -> Vec<(ElementId, ElementId)> {
        self.elements()
            .flat_map(|x| self.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| self.covers(x, y))
            .collect()
    }

    pub fn lower_covers(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.covers(y, x)).collect()
    }

    pub fn upper_covers(&self, x: ElementId) -> Vec<ElementId> {
        self.elements().filter(|&y| self.covers(x, y)).collect()
    }

    /// Length of the longest chain from the bottom up to each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut order: Vec<ElementId> = self.elements().collect();
        // a linear extension: strictly larger elements have strictly larger down-sets
        order.sort_by_key(|&x| self.elements().filter(|&z| self.leq(z, x)).count());
        let mut rank = vec![0; self.len()];
        for &x in &order {
            rank[x] = self.lower_covers(x).into_iter().map(|y| rank[y] + 1).max().unwrap_or(0);
        }
        rank
    }

    /// Length (in covers) of the longest chain in the lattice.
    pub fn height(&self) -> usize {
        self.ranks()[self.top()]
    }

    pub fn is_chain(&self) -> bool {
        self.elements()
            .all(|x| self.elements().all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    pub fn is_distributive(&self) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.elements()
                    .all(|z| self.meet(x, self.join(y, z)) == self.join(self.meet(x, y), self.meet(x, z)))
            })
        })
    }
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    if labels.is_empty() {
        return Err(Error::EmptyLattice);
    }
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, usize>, label: &str) -> Result<usize> {
    index
        .get(label)
        .copied()
        .ok_or_else(|| Error::UnknownLabel(label.to_owned()))
}

/// A join- and meet-preserving bijection, `forward[x]` being the image of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoMap {
    pub forward: Vec<ElementId>,
}

impl IsoMap {
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.forward[x]
    }

    pub fn inverse(&self) -> IsoMap {
        let mut back = vec![0; self.forward.len()];
        for (x, &y) in self.forward.iter().enumerate() {
            back[y] = x;
        }
        IsoMap { forward: back }
    }
}

/// Checks that `map` is a bijection from `from` onto `to` preserving join and meet.
pub fn is_isomorphism(from: &Lattice, to: &Lattice, map: &[ElementId]) -> bool {
    let n = from.len();
    if to.len() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &y in map {
        if y >= n || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    from.elements().all(|x| {
        from.elements()
            .all(|y| map[from.join(x, y)] == to.join(map[x], map[y]) && map[from.meet(x, y)] == to.meet(map[x], map[y]))
    })
}

/// Finds the first isomorphism in lexicographic backtracking order, if any.
///
/// Candidates for each element are restricted to targets with the same
/// (rank, lower cover count, upper cover count) profile.
pub fn find_isomorphism(from: &Lattice, to: &Lattice) -> Option<IsoMap> {
    let n = from.len();
    if to.len() != n {
        return None;
    }
    let profiles = |l: &Lattice| -> Vec<(usize, usize, usize)> {
        let ranks = l.ranks();
        l.elements()
            .map(|x| (ranks[x], l.lower_covers(x).len(), l.upper_covers(x).len()))
            .collect()
    };
    let (pf, pt) = (profiles(from), profiles(to));
    let mut sorted_f = pf.clone();
    let mut sorted_t = pt.clone();
    sorted_f.sort_unstable();
    sorted_t.sort_unstable();
    if sorted_f != sorted_t {
        return None;
    }

    struct Search<'a> {
        from: &'a Lattice,
        to: &'a Lattice,
        pf: &'a [(usize, usize, usize)],
        pt: &'a [(usize, usize, usize)],
        map: Vec<ElementId>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        fn extend(&mut self, x: ElementId) -> bool {
            let n = self.from.len();
            if x == n {
                return true;
            }
            for y in 0..n {
                if self.used[y] || self.pf[x] != self.pt[y] {
                    continue;
                }
                let consistent = (0..x).all(|u| {
                    let v = self.map[u];
                    self.from.leq(u, x) == self.to.leq(v, y) && self.from.leq(x, u) == self.to.leq(y, v)
                });
                if !consistent {
                    continue;
                }
                self.map[x] = y;
                self.used[y] = true;
                if self.extend(x + 1) {
                    return true;
                }
                self.used[y] = false;
            }
            false
        }
    }

    let mut search = Search {
        from,
        to,
        pf: &pf,
        pt: &pt,
        map: vec![0; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        debug_assert!(is_isomorphism(from, to, &search.map));
        Some(IsoMap { forward: search.map })
    } else {
        None
    }
}
