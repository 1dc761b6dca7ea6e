//! Quotient lattices, kernels, and the relation `alpha / gamma` induced on
//! `L / gamma` by a second congruence `alpha`.

use crate::construction::{build_k, difference_witnesses};
use crate::error::{Error, Result};
use crate::lattice::{find_isomorphism, is_isomorphism, ElementId, Lattice};
use crate::relations::{image_relation, is_congruence, is_tolerance, BinaryRelation, Homomorphism};
use crate::report::VerificationReport;

#[derive(Debug, Clone)]
pub struct QuotientLattice {
    base: Lattice,
    gamma: BinaryRelation,
    classes: Vec<Vec<ElementId>>,
    lattice: Lattice,
    proj: Homomorphism,
}

impl QuotientLattice {
    pub fn base(&self) -> &Lattice {
        &self.base
    }

    pub fn gamma(&self) -> &BinaryRelation {
        &self.gamma
    }

    /// Classes sorted by least member; a class id is its position here.
    pub fn classes(&self) -> &[Vec<ElementId>] {
        &self.classes
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// The canonical map `x -> [x]`.
    pub fn proj(&self) -> &Homomorphism {
        &self.proj
    }

    pub fn class_of(&self, x: ElementId) -> usize {
        self.proj.apply(x)
    }
}

fn set_label(l: &Lattice, members: &[ElementId]) -> String {
    let names: Vec<&str> = members.iter().map(|&x| l.label(x)).collect();
    format!("[{}]", names.join(","))
}

/// `L / gamma` for a congruence `gamma`.
pub fn quotient(l: &Lattice, gamma: &BinaryRelation) -> Result<QuotientLattice> {
    if !is_congruence(l, gamma)? {
        return Err(Error::NotACongruence);
    }
    let classes = gamma.classes();
    let mut class_of = vec![0; l.len()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let m = classes.len();
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    for c in 0..m {
        for d in 0..m {
            let (u, v) = (classes[c][0], classes[d][0]);
            join[c * m + d] = class_of[l.join(u, v)];
            meet[c * m + d] = class_of[l.meet(u, v)];
        }
    }
    let labels = classes.iter().map(|c| set_label(l, c)).collect();
    let lattice = Lattice::from_tables(labels, join, meet)?;
    let proj = Homomorphism::new(l.clone(), lattice.clone(), class_of)?;
    Ok(QuotientLattice {
        base: l.clone(),
        gamma: gamma.clone(),
        classes,
        lattice,
        proj,
    })
}

/// `{(x, y) : phi(x) = phi(y)}`, a congruence of the domain.
pub fn kernel(phi: &Homomorphism) -> BinaryRelation {
    let n = phi.dom().len();
    let mut out = BinaryRelation::empty(n);
    for x in 0..n {
        for y in 0..n {
            if phi.apply(x) == phi.apply(y) {
                out.insert(x, y);
            }
        }
    }
    debug_assert!(is_congruence(phi.dom(), &out).unwrap_or(false));
    out
}

/// Relates classes `X`, `Y` of `gamma` iff some `u` in `X` and `v` in `Y` have `(u, v)` in `alpha`.
pub fn alpha_over_gamma(l: &Lattice, alpha: &BinaryRelation, gamma: &BinaryRelation) -> Result<BinaryRelation> {
    let q = quotient(l, gamma)?;
    alpha_over_quotient(&q, alpha)
}

/// As [`alpha_over_gamma`], reusing an already built quotient.
pub fn alpha_over_quotient(q: &QuotientLattice, alpha: &BinaryRelation) -> Result<BinaryRelation> {
    if !is_congruence(q.base(), alpha)? {
        return Err(Error::NotACongruence);
    }
    let classes = q.classes();
    let m = classes.len();
    let mut out = BinaryRelation::empty(m);
    for (c, xs) in classes.iter().enumerate() {
        for (d, ys) in classes.iter().enumerate() {
            if xs.iter().any(|&u| ys.iter().any(|&v| alpha.contains(u, v))) {
                out.insert(c, d);
            }
        }
    }
    Ok(out)
}

/// Checks that `alpha / gamma` is a tolerance of `L / gamma` and equals the image of `alpha`.
pub fn verify_theorem2_forward(
    l: &Lattice,
    alpha: &BinaryRelation,
    gamma: &BinaryRelation,
) -> Result<VerificationReport> {
    let q = quotient(l, gamma)?;
    let rel = alpha_over_quotient(&q, alpha)?;
    let image = image_relation(q.proj(), alpha)?;
    let mut report = VerificationReport::new("alpha/gamma is a tolerance of L/gamma");
    report
        .fact("|L/gamma|", q.lattice().len())
        .fact("transitive", rel.is_transitive());
    report.check("alpha/gamma is a tolerance", is_tolerance(q.lattice(), &rel)?);
    report.check_witnesses(
        "alpha/gamma = proj(alpha)",
        difference_witnesses(q.lattice(), &rel, &image),
    );
    Ok(report)
}

/// Realizes `tau` as `psi(alpha / gamma)` for the lattice built from its blocks.
///
/// `L` is the paired lattice of `tau`, `alpha` its block congruence and
/// `gamma` the kernel of the projection onto `k`. The isomorphism
/// `psi: L / gamma -> k` is the one induced by the projection; a search is
/// only attempted if that map fails.
pub fn verify_theorem2_converse(k: &Lattice, tau: &BinaryRelation) -> Result<VerificationReport> {
    if !is_tolerance(k, tau)? {
        return Err(Error::NotATolerance);
    }
    let mut report = VerificationReport::new("tolerance is psi(alpha/gamma)");
    let pk = match build_k(k, tau) {
        Ok(pk) => pk,
        Err(e) => {
            report.fail_with("construction", e.to_string());
            return Ok(report);
        }
    };
    let big = pk.k();
    let alpha = pk.theta();
    let gamma = kernel(pk.phi());
    report.check("alpha is a congruence of L", is_congruence(big, alpha)?);
    report.check("gamma is a congruence of L", is_congruence(big, &gamma)?);
    let q = quotient(big, &gamma)?;
    report.fact("|L|", big.len()).fact("|L/gamma|", q.lattice().len());

    let induced: Vec<ElementId> = q.classes().iter().map(|c| pk.phi().apply(c[0])).collect();
    let induced_ok = is_isomorphism(q.lattice(), k, &induced);
    report.check("induced map L/gamma -> K is an isomorphism", induced_ok);
    let psi = if induced_ok {
        induced
    } else {
        find_isomorphism(q.lattice(), k)
            .ok_or(Error::IsomorphismNotFound)?
            .forward
    };

    let rel = alpha_over_quotient(&q, alpha)?;
    let mut transported = BinaryRelation::empty(k.len());
    for (x, y) in rel.pairs() {
        transported.insert(psi[x], psi[y]);
    }
    report.check_witnesses("psi(alpha/gamma) = tau", difference_witnesses(k, &transported, tau));
    Ok(report)
}
