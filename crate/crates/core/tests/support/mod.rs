//! Shared corpus and independent oracles for the integration tests.
//!
//! The oracles only use the order relation of a lattice (`leq`) and plain
//! sets; they never call the relation, block, or construction code they are
//! used to check.

#![allow(dead_code)]

pub mod dot_grammar;

use std::collections::BTreeSet;

use tolerance_lattice::{BinaryRelation, Lattice};

pub type Pairs = BTreeSet<(usize, usize)>;

/// The acceptance corpus, by name.
pub fn corpus() -> Vec<(String, Lattice)> {
    let mut out: Vec<(String, Lattice)> = (1..=6)
        .map(|n| (format!("chain{n}"), Lattice::chain(n).unwrap()))
        .collect();
    out.push(("cube2".into(), Lattice::boolean_cube(2).unwrap()));
    out.push(("cube3".into(), Lattice::boolean_cube(3).unwrap()));
    out.push(("M3".into(), Lattice::named("M3").unwrap()));
    out.push(("N5".into(), Lattice::named("N5").unwrap()));
    let c2 = Lattice::chain(2).unwrap();
    let c3 = Lattice::chain(3).unwrap();
    out.push(("chain2xchain3".into(), c2.direct_product(&c3).unwrap()));
    out
}

/// Corpus members small enough to enumerate under the default cap.
pub fn enumerable_corpus() -> Vec<(String, Lattice)> {
    corpus().into_iter().filter(|(_, l)| l.len() <= 7).collect()
}

/// Least upper bound found by scanning the order.
pub fn lub(l: &Lattice, x: usize, y: usize) -> usize {
    let ups: Vec<usize> = l.elements().filter(|&z| l.leq(x, z) && l.leq(y, z)).collect();
    *ups.iter().find(|&&z| ups.iter().all(|&w| l.leq(z, w))).unwrap()
}

pub fn glb(l: &Lattice, x: usize, y: usize) -> usize {
    let downs: Vec<usize> = l.elements().filter(|&z| l.leq(z, x) && l.leq(z, y)).collect();
    *downs.iter().find(|&&z| downs.iter().all(|&w| l.leq(w, z))).unwrap()
}

pub fn to_pairs(r: &BinaryRelation) -> Pairs {
    let n = r.size();
    (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| r.contains(x, y))
        .collect()
}

pub fn to_relation(n: usize, pairs: &Pairs) -> BinaryRelation {
    BinaryRelation::from_pairs(n, &pairs.iter().copied().collect::<Vec<_>>()).unwrap()
}

pub fn oracle_is_tolerance(l: &Lattice, r: &Pairs) -> bool {
    let n = l.len();
    (0..n).all(|x| r.contains(&(x, x)))
        && r.iter().all(|&(x, y)| r.contains(&(y, x)))
        && r.iter().all(|&(a, b)| {
            r.iter()
                .all(|&(c, d)| r.contains(&(lub(l, a, c), lub(l, b, d))) && r.contains(&(glb(l, a, c), glb(l, b, d))))
        })
}

pub fn oracle_is_transitive(r: &Pairs) -> bool {
    r.iter()
        .all(|&(a, b)| r.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| r.contains(&(a, d))))
}

/// Every reflexive symmetric relation, as pair sets, in no particular order.
pub fn oracle_reflexive_symmetric(n: usize) -> Vec<Pairs> {
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect();
    (0..1u64 << slots.len())
        .map(|mask| {
            let mut r: Pairs = (0..n).map(|x| (x, x)).collect();
            for (k, &(x, y)) in slots.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    r.insert((x, y));
                    r.insert((y, x));
                }
            }
            r
        })
        .collect()
}

/// (tolerances, congruences) by brute force.
pub fn oracle_counts(l: &Lattice) -> (usize, usize) {
    let mut t = 0;
    let mut c = 0;
    for r in oracle_reflexive_symmetric(l.len()) {
        if oracle_is_tolerance(l, &r) {
            t += 1;
            if oracle_is_transitive(&r) {
                c += 1;
            }
        }
    }
    (t, c)
}

/// Maximal cliques by checking every subset of the carrier.
pub fn oracle_blocks(n: usize, r: &Pairs) -> Vec<Vec<usize>> {
    let is_clique = |s: u32| (0..n).all(|x| s >> x & 1 == 0 || (0..n).all(|y| s >> y & 1 == 0 || r.contains(&(x, y))));
    let cliques: Vec<u32> = (1..1u32 << n).filter(|&s| is_clique(s)).collect();
    let mut out: Vec<Vec<usize>> = cliques
        .iter()
        .filter(|&&s| !cliques.iter().any(|&t| t != s && t & s == s))
        .map(|&s| (0..n).filter(|&x| s >> x & 1 == 1).collect())
        .collect();
    out.sort();
    out
}

/// Surjective homomorphisms out of `l` that are easy to build without the
/// quotient module: identity, the constant map onto a point, and for
/// products the two projections.
pub fn known_surjections(name: &str, l: &Lattice) -> Vec<tolerance_lattice::Homomorphism> {
    use tolerance_lattice::Homomorphism;
    let mut out = vec![
        Homomorphism::identity(l),
        Homomorphism::new(l.clone(), Lattice::chain(1).unwrap(), vec![0; l.len()]).unwrap(),
    ];
    if name == "chain2xchain3" {
        let c2 = Lattice::chain(2).unwrap();
        let c3 = Lattice::chain(3).unwrap();
        out.push(Homomorphism::new(l.clone(), c2, (0..6).map(|i| i / 3).collect()).unwrap());
        out.push(Homomorphism::new(l.clone(), c3, (0..6).map(|i| i % 3).collect()).unwrap());
    }
    if name.starts_with("chain") && !name.contains('x') && l.len() >= 2 {
        // collapse the bottom two elements
        let n = l.len();
        let target = Lattice::chain(n - 1).unwrap();
        out.push(Homomorphism::new(l.clone(), target, (0..n).map(|i| i.saturating_sub(1)).collect()).unwrap());
    }
    out
}
