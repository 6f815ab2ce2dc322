//! Minimal free resolutions over `A(n)` or a capped `A`, and the `Ext`
//! groups read off from them.
//!
//! Generators are added degree by degree (outer loop over internal degree
//! `t`, inner loop over homological degree `s`). In each bidegree the new
//! generators cover the part of `ker d` not hit by the generators already
//! present; since those are all of lower degree the result is minimal.

mod chart;

use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::{Echelon, F2Matrix, F2Vector};
use crate::milnor::{enumerate_basis, milnor_product, AlgebraElement, AlgebraError, MilnorMonomial, SubalgebraSpec};
use crate::module::{FiniteModule, ModuleError};

pub use chart::{emit_chart, ext_chart, ChartFormat, ExtChart, HLine};

/// Largest homological degree accepted.
pub const MAX_S: u32 = 16;
/// Largest internal-degree window above the module's bottom class.
pub const MAX_T_SPAN: i32 = 40;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResolutionError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("resolution range too large: {0}")]
    Guard(String),
}

/// Where a generator of `F_s` is sent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Image {
    /// `s = 0`: a vector of the module.
    Class(F2Vector),
    /// `s > 0`: coefficient of each generator of `F_{s-1}` (trailing zeros
    /// omitted).
    Combination(Vec<AlgebraElement>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub degree: i32,
    pub image: Image,
}

#[derive(Clone)]
pub struct Resolution {
    algebra: SubalgebraSpec,
    module: FiniteModule,
    s_max: u32,
    t_max: i32,
    stages: Vec<Vec<Generator>>,
}

/// Basis of `(F_s)_t`: pairs (generator, Milnor monomial).
struct FreeBasis {
    elements: Vec<(usize, MilnorMonomial)>,
    index: HashMap<(usize, MilnorMonomial), usize>,
}

impl Resolution {
    pub fn algebra(&self) -> SubalgebraSpec {
        self.algebra
    }

    pub fn module(&self) -> &FiniteModule {
        &self.module
    }

    pub fn s_max(&self) -> u32 {
        self.s_max
    }

    pub fn t_max(&self) -> i32 {
        self.t_max
    }

    /// Bottom degree of the module (0 for the zero module).
    pub fn bottom(&self) -> i32 {
        self.module.min_degree().unwrap_or(0)
    }

    pub fn stage(&self, s: u32) -> &[Generator] {
        self.stages.get(s as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Degrees of the generators of `F_s`, ascending.
    pub fn generator_degrees(&self, s: u32) -> Vec<i32> {
        self.stage(s).iter().map(|g| g.degree).collect()
    }

    /// `dim Ext^{s,t}`, the number of generators of `F_s` in degree `t`.
    pub fn rank(&self, s: u32, t: i32) -> usize {
        self.stage(s).iter().filter(|g| g.degree == t).count()
    }

    fn free_basis(&self, s: usize, t: i32) -> Result<FreeBasis, ResolutionError> {
        let mut elements = Vec::new();
        for (j, g) in self.stages[s].iter().enumerate() {
            let d = t - g.degree;
            if d < 0 || d as u32 > self.algebra.max_degree() {
                continue;
            }
            for m in enumerate_basis(&self.algebra, d as u32)?.iter() {
                elements.push((j, m.clone()));
            }
        }
        let index = elements.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        Ok(FreeBasis { elements, index })
    }

    /// Rows of `d_s` on `(F_s)_t` in the basis of the target: the classes of
    /// `M_t` for `s = 0`, otherwise `target` = `(F_{s-1})_t`.
    fn differential_rows(
        &self,
        s: usize,
        source: &[(usize, MilnorMonomial)],
        t: i32,
        target: Option<&FreeBasis>,
    ) -> Result<Vec<F2Vector>, ResolutionError> {
        source
            .par_iter()
            .map(|(j, m)| -> Result<F2Vector, ResolutionError> {
                let g = &self.stages[s][*j];
                match (&g.image, target) {
                    (Image::Class(v), _) => {
                        let image = self.module.act(&m.clone().into(), v)?;
                        let classes = self.module.classes_in_degree(t);
                        Ok(F2Vector::from_indices(
                            classes.len(),
                            classes.iter().enumerate().filter(|(_, &c)| image.get(c)).map(|(p, _)| p),
                        ))
                    }
                    (Image::Combination(coeffs), Some(target)) => {
                        let mut row = F2Vector::zero(target.elements.len());
                        let a: AlgebraElement = m.clone().into();
                        for (k, c) in coeffs.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            for term in milnor_product(&a, c).terms() {
                                row.flip(target.index[&(k, term.clone())]);
                            }
                        }
                        Ok(row)
                    }
                    (Image::Combination(_), None) => unreachable!("positive stages have a free target"),
                }
            })
            .collect()
    }

    /// `d(d(g)) = 0` for every generator.
    pub fn d_squared_vanishes(&self) -> Result<bool, ResolutionError> {
        for s in 1..self.stages.len() {
            for g in &self.stages[s] {
                let Image::Combination(coeffs) = &g.image else {
                    return Ok(false);
                };
                if s == 1 {
                    let mut total = F2Vector::zero(self.module.dim());
                    for (k, c) in coeffs.iter().enumerate() {
                        if let Image::Class(v) = &self.stages[0][k].image {
                            total.add_assign(&self.module.act(c, v)?);
                        }
                    }
                    if !total.is_zero() {
                        return Ok(false);
                    }
                } else {
                    let mut total: Vec<AlgebraElement> = Vec::new();
                    for (k, c) in coeffs.iter().enumerate() {
                        if let Image::Combination(inner) = &self.stages[s - 1][k].image {
                            for (l, e) in inner.iter().enumerate() {
                                if total.len() <= l {
                                    total.resize(l + 1, AlgebraElement::zero());
                                }
                                total[l].add_assign(&milnor_product(c, e));
                            }
                        }
                    }
                    if total.iter().any(|e| !e.is_zero()) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// No differential coefficient contains the unit.
    pub fn is_minimal(&self) -> bool {
        let unit = MilnorMonomial::unit();
        self.stages.iter().skip(1).flatten().all(|g| match &g.image {
            Image::Combination(cs) => cs.iter().all(|c| !c.contains(&unit)),
            Image::Class(_) => false,
        })
    }

    /// One line per generator: `d <s> g<s>_<j> = <coef> g<s-1>_<k> + ...`,
    /// with a bracketed coefficient when it has several terms; for `s = 0`
    /// the right side lists module classes.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# resolution of {} over {}, s <= {}, t <= {}",
            self.module.name(),
            self.algebra,
            self.s_max,
            self.t_max
        );
        for (s, stage) in self.stages.iter().enumerate() {
            let _ = writeln!(out, "# stage {s}: {} generators", stage.len());
            for (j, g) in stage.iter().enumerate() {
                let rhs = match &g.image {
                    Image::Class(v) => self.module.format_vector(v),
                    Image::Combination(cs) => {
                        let terms: Vec<String> = cs
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| {
                                if c.len() > 1 {
                                    format!("({c}) g{}_{k}", s - 1)
                                } else {
                                    format!("{c} g{}_{k}", s - 1)
                                }
                            })
                            .collect();
                        if terms.is_empty() {
                            "0".into()
                        } else {
                            terms.join(" + ")
                        }
                    }
                };
                let _ = writeln!(out, "d {s} g{s}_{j} = {rhs}    # t = {}", g.degree);
            }
        }
        out
    }
}

/// Resolves `M` over `spec` through homological degree `s_max` and internal
/// degree `t_max`. `M` is restricted to `spec` when its own algebra is larger.
pub fn minimal_resolution(
    spec: SubalgebraSpec,
    module: &FiniteModule,
    s_max: u32,
    t_max: i32,
) -> Result<Resolution, ResolutionError> {
    module.require_validated()?;
    let bottom = module.min_degree().unwrap_or(0);
    if s_max > MAX_S {
        return Err(ResolutionError::Guard(format!("s_max {s_max} exceeds {MAX_S}")));
    }
    if t_max - bottom > MAX_T_SPAN {
        return Err(ResolutionError::Guard(format!(
            "t_max {t_max} is more than {MAX_T_SPAN} above the bottom degree {bottom}"
        )));
    }
    if !spec.is_subalgebra_of(&module.algebra()) {
        return Err(ModuleError::IncompatibleAlgebras {
            left: module.algebra().to_string(),
            right: spec.to_string(),
        }
        .into());
    }
    if spec.is_full() {
        spec.check_degree((t_max - bottom).max(0) as u32)?;
    }
    let module = if spec == module.algebra() || (spec.is_full() && module.algebra().is_full()) {
        module.clone()
    } else {
        module.restrict(spec)?
    };
    let mut r = Resolution {
        algebra: spec,
        module,
        s_max,
        t_max,
        stages: vec![Vec::new(); s_max as usize + 1],
    };
    if r.module.dim() == 0 {
        return Ok(r);
    }
    for t in bottom..=t_max {
        for s in 0..=s_max as usize {
            add_generators(&mut r, s, t)?;
        }
    }
    Ok(r)
}

/// Adds the generators of `F_s` in degree `t`.
fn add_generators(r: &mut Resolution, s: usize, t: i32) -> Result<(), ResolutionError> {
    // the space being covered: M_t, or ker(d_{s-1}) inside (F_{s-1})_t
    let (target, wanted): (Option<FreeBasis>, Vec<F2Vector>) = if s == 0 {
        let n = r.module.classes_in_degree(t).len();
        (None, (0..n).map(|i| F2Vector::unit(n, i)).collect())
    } else {
        let prev = r.free_basis(s - 1, t)?;
        if prev.elements.is_empty() {
            return Ok(());
        }
        let below = if s >= 2 { Some(r.free_basis(s - 2, t)?) } else { None };
        let rows = r.differential_rows(s - 1, &prev.elements, t, below.as_ref())?;
        let columns = match (&below, s) {
            (Some(b), _) => b.elements.len(),
            (None, _) => r.module.classes_in_degree(t).len(),
        };
        let kernel = F2Matrix::from_rows(columns, rows).left_kernel();
        let mut ech = Echelon::from_rows(prev.elements.len(), kernel);
        ech.fully_reduce();
        let mut basis: Vec<(usize, F2Vector)> =
            ech.rows().iter().cloned().zip(ech.pivots().iter().copied()).map(|(v, p)| (p, v)).collect();
        basis.sort_by_key(|(p, _)| *p);
        (Some(prev), basis.into_iter().map(|(_, v)| v).collect())
    };
    if wanted.is_empty() {
        return Ok(());
    }
    let width = wanted[0].len();
    let current = r.free_basis(s, t)?;
    let image_rows = r.differential_rows(s, &current.elements, t, target.as_ref())?;
    let mut image = Echelon::from_rows(width, image_rows);
    for v in wanted {
        let mut w = v.clone();
        image.reduce_fully(&mut w);
        if w.is_zero() {
            continue;
        }
        image.insert(w.clone());
        let generator_image = match &target {
            None => {
                let classes = r.module.classes_in_degree(t);
                Image::Class(F2Vector::from_indices(r.module.dim(), w.ones().map(|p| classes[p])))
            }
            Some(prev) => {
                let mut coeffs = vec![AlgebraElement::zero(); r.stages[s - 1].len()];
                for p in w.ones() {
                    let (k, m) = &prev.elements[p];
                    coeffs[*k].add_monomial(m.clone());
                }
                while coeffs.last().is_some_and(AlgebraElement::is_zero) {
                    coeffs.pop();
                }
                Image::Combination(coeffs)
            }
        };
        r.stages[s].push(Generator {
            degree: t,
            image: generator_image,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::trivial_module;

    #[test]
    fn sphere_low_stages() {
        let f2 = trivial_module(SubalgebraSpec::full(), 0);
        let r = minimal_resolution(SubalgebraSpec::full(), &f2, 1, 1).unwrap();
        assert_eq!(r.generator_degrees(0), vec![0]);
        assert_eq!(r.generator_degrees(1), vec![1]);
        let r = minimal_resolution(SubalgebraSpec::full(), &f2, 1, 16).unwrap();
        assert_eq!(r.generator_degrees(1), vec![1, 2, 4, 8, 16]);
        assert!(r.d_squared_vanishes().unwrap());
        assert!(r.is_minimal());
    }

    #[test]
    fn guards() {
        let f2 = trivial_module(SubalgebraSpec::full(), 0);
        assert!(matches!(
            minimal_resolution(SubalgebraSpec::full(), &f2, 17, 4),
            Err(ResolutionError::Guard(_))
        ));
        assert!(matches!(
            minimal_resolution(SubalgebraSpec::full(), &f2, 2, 41),
            Err(ResolutionError::Guard(_))
        ));
    }
}
