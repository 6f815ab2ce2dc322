//! The `A_*`-comodule structure dual to a module action.
//!
//! Convention: `psi(x) = sum_{R, y} xi^R (x) y` over pairs with `x` appearing
//! in `Sq(R) y`. Terms therefore run downward in degree, e.g. the top class of
//! the Joker picks up `xi_1 (x) x3` from `Sq^1 x3 = x4`.

use std::collections::BTreeMap;

use super::{FiniteModule, ModuleError};
use crate::gf2::F2Vector;
use crate::milnor::{enumerate_basis, DualMonomial, DualPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoactionTerm {
    pub monomial: DualMonomial,
    pub class: String,
}

/// `psi(x)` as a list of `xi^R (x) y` terms, ordered by `y` then `R`.
pub fn coaction(m: &FiniteModule, x: &F2Vector) -> Result<Vec<CoactionTerm>, ModuleError> {
    Ok(coaction_by_class(m, x)?
        .into_iter()
        .flat_map(|(class, poly)| {
            poly.xi_terms()
                .map(|e| CoactionTerm {
                    monomial: DualMonomial::xi(e.clone()),
                    class: class.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect())
}

/// `psi(x)` grouped by the module class: `(y, sum of xi^R)`. Each coefficient
/// can be rendered in the conjugate basis with [`DualPoly::render`].
pub fn coaction_by_class(m: &FiniteModule, x: &F2Vector) -> Result<Vec<(String, DualPoly)>, ModuleError> {
    m.require_validated()?;
    let mut out: BTreeMap<usize, DualPoly> = BTreeMap::new();
    for y in 0..m.dim() {
        let mut coefficient = DualPoly::zero();
        for xi in x.ones() {
            let gap = m.degree_of(xi) - m.degree_of(y);
            if gap < 0 {
                continue;
            }
            for r in enumerate_basis(&m.algebra(), gap as u32)?.iter() {
                let image = m.act(&r.clone().into(), &F2Vector::unit(m.dim(), y))?;
                if image.get(xi) {
                    coefficient.add_assign(&DualPoly::from_xi_terms([r.exponents().to_vec()]));
                }
            }
        }
        if !coefficient.is_zero() {
            out.insert(y, coefficient);
        }
    }
    // highest classes first, matching how coactions are usually written
    Ok(out
        .into_iter()
        .rev()
        .map(|(y, p)| (m.basis()[y].id.clone(), p))
        .collect())
}
