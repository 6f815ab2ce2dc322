//! Exhaustive search for module isomorphisms, and range-limited comparison.

use std::fmt;

use super::{common_algebra, BasisElement, FiniteModule, ModuleError};
use crate::gf2::{F2Matrix, F2Vector};

/// Largest single-degree block the search will enumerate (2^{d^2} candidates).
const MAX_BLOCK: usize = 4;

/// A degree-preserving linear map; row `i` is the image of source class `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    pub source: String,
    pub target: String,
    pub matrix: F2Matrix,
}

impl ModuleMap {
    pub fn apply(&self, v: &F2Vector) -> F2Vector {
        self.matrix.apply_row(v)
    }

    /// `f(Sq^k x) = Sq^k f(x)` for every stored `Sq^k` and every class.
    pub fn commutes(&self, m: &FiniteModule, n: &FiniteModule) -> bool {
        let span = m.span().max(n.span());
        (1..=span).all(|k| {
            let lhs = m.sq_matrix(k).mul(&self.matrix);
            let rhs = self.matrix.mul(&n.sq_matrix(k));
            lhs == rhs
        })
    }
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} -> {}", self.source, self.target)?;
        for (i, r) in self.matrix.rows().iter().enumerate() {
            writeln!(f, "  {i}: {r:?}")?;
        }
        Ok(())
    }
}

/// Searches degree by degree, bottom up, over invertible blocks, checking
/// commutation with every algebra generator `Sq^{2^i}` that lands in the
/// degree just assigned. Exhaustive, so `Ok(None)` certifies that no
/// isomorphism exists.
pub fn find_isomorphism(m: &FiniteModule, n: &FiniteModule) -> Result<Option<ModuleMap>, ModuleError> {
    m.require_validated()?;
    n.require_validated()?;
    let algebra = common_algebra(m.algebra(), n.algebra(), true)?;
    if m.graded_dimensions() != n.graded_dimensions() {
        return Ok(None);
    }
    let degrees = m.degrees();
    for d in &degrees {
        let size = m.classes_in_degree(*d).len();
        if size > MAX_BLOCK {
            return Err(ModuleError::TooLarge(format!(
                "degree {d} has {size} classes; isomorphism search is limited to {MAX_BLOCK}"
            )));
        }
    }
    let generators: Vec<u32> = algebra
        .generator_exponents(m.span())
        .into_iter()
        .map(|i| 1 << i)
        .collect();
    let mut rows = vec![F2Vector::zero(n.dim()); m.dim()];
    let found = search(m, n, &degrees, 0, &generators, &mut rows);
    Ok(found.then(|| ModuleMap {
        source: m.name().to_string(),
        target: n.name().to_string(),
        matrix: F2Matrix::from_rows(n.dim(), rows),
    }))
}

fn search(
    m: &FiniteModule,
    n: &FiniteModule,
    degrees: &[i32],
    level: usize,
    generators: &[u32],
    rows: &mut Vec<F2Vector>,
) -> bool {
    let Some(&d) = degrees.get(level) else {
        return true;
    };
    let src = m.classes_in_degree(d);
    let tgt = n.classes_in_degree(d);
    let k = src.len();
    for block in invertible_blocks(k) {
        for (a, &i) in src.iter().enumerate() {
            rows[i] = F2Vector::from_indices(n.dim(), (0..k).filter(|&b| block[a] >> b & 1 == 1).map(|b| tgt[b]));
        }
        if consistent_at(m, n, d, generators, rows) && search(m, n, degrees, level + 1, generators, rows) {
            return true;
        }
    }
    for &i in &src {
        rows[i] = F2Vector::zero(n.dim());
    }
    false
}

/// Checks `f(Sq^g x) = Sq^g f(x)` for classes `x` with `deg x + g = d`.
fn consistent_at(m: &FiniteModule, n: &FiniteModule, d: i32, generators: &[u32], rows: &[F2Vector]) -> bool {
    let apply = |v: &F2Vector| {
        let mut out = F2Vector::zero(n.dim());
        for i in v.ones() {
            out.add_assign(&rows[i]);
        }
        out
    };
    generators.iter().all(|&g| {
        m.classes_in_degree(d - g as i32).into_iter().all(|x| {
            let lhs = apply(&m.sq_image(g, x));
            let fx = apply(&F2Vector::unit(m.dim(), x));
            let mut rhs = F2Vector::zero(n.dim());
            for y in fx.ones() {
                rhs.add_assign(&n.sq_image(g, y));
            }
            lhs == rhs
        })
    })
}

/// All invertible `k x k` matrices over GF(2), rows as bitmasks, identity first.
fn invertible_blocks(k: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn extend(k: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if current.len() == k {
            let rows: Vec<F2Vector> = current
                .iter()
                .map(|&r| F2Vector::from_indices(k, (0..k).filter(|&b| r >> b & 1 == 1)))
                .collect();
            if F2Matrix::from_rows(k, rows).rank() == k {
                out.push(current.clone());
            }
            return;
        }
        for r in 0..(1u32 << k) {
            current.push(r);
            extend(k, current, out);
            current.pop();
        }
    }
    extend(k, &mut current, &mut out);
    let identity: Vec<u32> = (0..k).map(|i| 1 << i).collect();
    if let Some(p) = out.iter().position(|b| *b == identity) {
        out.swap(0, p);
    }
    out
}

/// The subquotient `M_{>=lo} / M_{>hi}`: classes with degree in `[lo, hi]`,
/// actions landing outside the range dropped.
pub fn truncate(m: &FiniteModule, lo: i32, hi: i32) -> Result<FiniteModule, ModuleError> {
    let keep: Vec<usize> = (0..m.dim()).filter(|&i| (lo..=hi).contains(&m.degree_of(i))).collect();
    let basis: Vec<BasisElement> = keep.iter().map(|&i| m.basis()[i].clone()).collect();
    let position = |i: usize| keep.iter().position(|&j| j == i);
    let mut out = FiniteModule::with_basis(&format!("{}[{lo},{hi}]", m.name()), m.algebra(), basis)?;
    for k in 1..=out.span() {
        for (p, &i) in keep.iter().enumerate() {
            let image = F2Vector::from_indices(out.dim(), m.sq_image(k, i).ones().filter_map(position));
            out.set_image(k, p, image)?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub enum RangeVerdict {
    Isomorphic(ModuleMap),
    NotIsomorphic,
}

impl RangeVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, RangeVerdict::Isomorphic(_))
    }
}

/// Compares `M` and `N` on degrees `[lo, hi]` over the smaller of their two
/// algebras, ignoring classes and actions outside the range.
pub fn compare_range(m: &FiniteModule, n: &FiniteModule, lo: i32, hi: i32) -> Result<RangeVerdict, ModuleError> {
    m.require_validated()?;
    n.require_validated()?;
    let algebra = common_algebra(m.algebra(), n.algebra(), false)?;
    let restrict = |x: &FiniteModule| -> Result<FiniteModule, ModuleError> {
        let t = truncate(x, lo, hi)?;
        let t = if common_algebra(t.algebra(), algebra, true).is_ok() { t } else { t.restrict(algebra)? };
        t.validated()
    };
    let (a, b) = (restrict(m)?, restrict(n)?);
    Ok(match find_isomorphism(&a, &b)? {
        Some(f) => RangeVerdict::Isomorphic(f),
        None => RangeVerdict::NotIsomorphic,
    })
}
