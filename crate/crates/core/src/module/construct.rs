//! Modules built from presentations: cyclic quotients and cell complexes.

use std::collections::HashMap;

use super::{BasisElement, FiniteModule, ModuleError};
use crate::gf2::{Echelon, F2Vector};
use crate::milnor::{enumerate_basis, milnor_product, AlgebraElement, AlgebraError, MilnorMonomial, SubalgebraSpec};

/// One degree of `B / B{relations}`: the reduced ideal and the surviving
/// Milnor monomials (the echelon's free columns).
struct QuotientDegree {
    milnor_index: HashMap<MilnorMonomial, usize>,
    ideal: Echelon,
    free: Vec<usize>,
    first_class: usize,
}

impl QuotientDegree {
    fn coordinates(&self, a: &AlgebraElement, total: usize) -> F2Vector {
        let mut v = F2Vector::zero(self.ideal.columns());
        for m in a.terms() {
            v.flip(self.milnor_index[m]);
        }
        self.ideal.reduce_fully(&mut v);
        let mut out = F2Vector::zero(total);
        for (j, &c) in self.free.iter().enumerate() {
            if v.get(c) {
                out.flip(self.first_class + j);
            }
        }
        out
    }
}

/// The cyclic module `B / B{relations}` for `B = spec`, with classes named
/// `x<degree>` (primed when a degree holds several), represented by the
/// Milnor monomials outside the leading terms of the ideal.
///
/// Over a capped `A` the quotient is computed through the cap and must vanish
/// there.
pub fn cyclic_quotient(
    name: &str,
    spec: SubalgebraSpec,
    relations: &[AlgebraElement],
) -> Result<FiniteModule, ModuleError> {
    let mut rel_degrees = Vec::new();
    for r in relations {
        if r.is_zero() {
            continue;
        }
        let d = r.degree().ok_or(AlgebraError::NotHomogeneous)?;
        if !spec.contains_element(r) {
            return Err(AlgebraError::NotInAlgebra {
                element: r.to_string(),
                algebra: spec.to_string(),
            }
            .into());
        }
        rel_degrees.push((r, d));
    }
    let top = spec.max_degree();
    let mut degrees: Vec<QuotientDegree> = Vec::new();
    let mut basis = Vec::new();
    for d in 0..=top {
        let milnor = enumerate_basis(&spec, d)?;
        let milnor_index: HashMap<MilnorMonomial, usize> =
            milnor.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut ideal = Echelon::new(milnor.len());
        for &(r, rd) in &rel_degrees {
            if rd > d {
                continue;
            }
            for b in enumerate_basis(&spec, d - rd)?.iter() {
                let p = milnor_product(&b.clone().into(), r);
                ideal.insert(F2Vector::from_indices(milnor.len(), p.terms().map(|m| milnor_index[m])));
            }
        }
        ideal.fully_reduce();
        let free = ideal.free_columns();
        let first_class = basis.len();
        for (j, _) in free.iter().enumerate() {
            basis.push(BasisElement {
                id: format!("x{d}{}", "'".repeat(j)),
                degree: d as i32,
            });
        }
        degrees.push(QuotientDegree {
            milnor_index,
            ideal,
            free,
            first_class,
        });
    }
    if spec.is_full() && !degrees[top as usize].free.is_empty() {
        return Err(ModuleError::TooLarge(format!(
            "quotient does not vanish at the degree cap {top}"
        )));
    }
    let n = basis.len();
    let mut module = FiniteModule::with_basis(name, spec, basis)?;
    for (d, q) in degrees.iter().enumerate() {
        let milnor = enumerate_basis(&spec, d as u32)?;
        for (j, &c) in q.free.iter().enumerate() {
            let rep: AlgebraElement = milnor[c].clone().into();
            for k in 1..=(top - d as u32) {
                if !spec.contains_sq(k) {
                    continue;
                }
                let target = &degrees[d + k as usize];
                if target.free.is_empty() {
                    continue;
                }
                let image = milnor_product(&AlgebraElement::sq(k), &rep);
                module.set_image(k, q.first_class + j, target.coordinates(&image, n))?;
            }
        }
    }
    module.validated()
}

/// A cell-complex module: one class per cell, attaching maps given as
/// `Sq^{2^i}` edges (`2 -> Sq^1`, `eta -> Sq^2`, `nu -> Sq^4`, `sigma -> Sq^8`).
pub fn cell_module(
    name: &str,
    spec: SubalgebraSpec,
    cells: &[(&str, i32)],
    attachments: &[(u32, &str, &str)],
) -> Result<FiniteModule, ModuleError> {
    let edges: Vec<(u32, &str, Vec<&str>)> = attachments.iter().map(|&(k, a, b)| (k, a, vec![b])).collect();
    FiniteModule::from_generators(name, spec, cells, &edges)?.validated()
}

/// A single class in degree `degree`.
pub fn trivial_module(spec: SubalgebraSpec, degree: i32) -> FiniteModule {
    let id = format!("x{degree}");
    FiniteModule::from_tables::<&str>("F2", spec, &[(id.as_str(), degree)], &[])
        .and_then(FiniteModule::validated)
        .expect("one class is always a module")
}
