//! Enumerating the ways a module over a subalgebra extends to a larger one.

use rayon::prelude::*;

use super::{FiniteModule, ModuleError};
use crate::milnor::SubalgebraSpec;

/// Default bound on the number of free `(Sq^{2^m}, x, y)` slots (2^limit candidates).
pub const DEFAULT_FREE_SLOT_LIMIT: usize = 20;

/// Every module over `target` whose `Sq^{2^i}` tables agree with `M` on the
/// generators of `M`'s algebra. New generators `Sq^{2^m}` may send each class
/// `x` to any combination of classes `y` with `deg y = deg x + 2^m`; each
/// candidate is validated and kept if it is a module. Results are distinct as
/// tables, in the order of the binary assignment counter.
pub fn extension_enumerate(
    m: &FiniteModule,
    target: SubalgebraSpec,
    slot_limit: usize,
) -> Result<Vec<FiniteModule>, ModuleError> {
    m.require_validated()?;
    if !m.algebra().is_subalgebra_of(&target) || target == m.algebra() {
        return Err(ModuleError::IncompatibleAlgebras {
            left: m.algebra().to_string(),
            right: target.to_string(),
        });
    }
    target.check_degree(m.span())?;

    let mut old_edges = Vec::new();
    let mut slots = Vec::new();
    for i in target.generator_exponents(m.span()) {
        let g = 1u32 << i;
        for x in 0..m.dim() {
            if m.algebra().contains_sq(g) {
                for y in m.sq_image(g, x).ones() {
                    old_edges.push((g, x, y));
                }
            } else {
                for y in m.classes_in_degree(m.degree_of(x) + g as i32) {
                    slots.push((g, x, y));
                }
            }
        }
    }
    if slots.len() > slot_limit {
        return Err(ModuleError::TooLarge(format!(
            "{} free slots exceed the limit of {slot_limit}",
            slots.len()
        )));
    }

    let classes: Vec<(String, i32)> = m.basis().iter().map(|b| (b.id.clone(), b.degree)).collect();
    let id = |i: usize| m.basis()[i].id.clone();
    let candidates: Vec<Option<FiniteModule>> = (0u64..1 << slots.len())
        .into_par_iter()
        .map(|mask| -> Result<Option<FiniteModule>, ModuleError> {
            let mut edges: Vec<(u32, String, Vec<String>)> = Vec::new();
            let mut push = |g: u32, x: usize, y: usize| match edges.iter_mut().find(|e| e.0 == g && e.1 == id(x)) {
                Some(e) => e.2.push(id(y)),
                None => edges.push((g, id(x), vec![id(y)])),
            };
            for &(g, x, y) in &old_edges {
                push(g, x, y);
            }
            for (bit, &(g, x, y)) in slots.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    push(g, x, y);
                }
            }
            let name = format!("{}#{mask}", m.name());
            let candidate = FiniteModule::from_generators(&name, target, &classes, &edges)?;
            Ok(candidate.validate().valid.then(|| {
                let mut c = candidate;
                c.set_validated(true);
                c
            }))
        })
        .collect::<Result<_, _>>()?;
    Ok(candidates.into_iter().flatten().collect())
}
