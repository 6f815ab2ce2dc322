//! Finite graded modules over `A(n)` or a degree-capped `A`.
//!
//! A [`FiniteModule`] stores a table for every `Sq^k` that lies in its
//! algebra. Arbitrary algebra elements act through words in the algebra
//! generators `Sq^{2^i}` (see [`word_basis`]), so the generator tables
//! determine everything and [`FiniteModule::validate`] checks that the
//! resulting map `A -> End(M)` is multiplicative and agrees with the stored
//! tables.

mod coaction;
mod construct;
mod extension;
mod format;
mod iso;
mod validate;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gf2::{F2Matrix, F2Vector};
use crate::milnor::{
    verschiebung_monomial, word_basis, AlgebraElement, AlgebraError, MilnorMonomial,
    SubalgebraSpec,
};

pub use coaction::{coaction, coaction_by_class, CoactionTerm};
pub use construct::{cell_module, cyclic_quotient, trivial_module};
pub use extension::{extension_enumerate, DEFAULT_FREE_SLOT_LIMIT};
pub use format::{from_json, parse_module, to_json, write_module};
pub use iso::{compare_range, find_isomorphism, truncate, ModuleMap, RangeVerdict};
pub use validate::{ValidationMethod, ValidationReport, Witness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("duplicate class `{0}`")]
    DuplicateClass(String),
    #[error("Sq^{k} on {from} cannot reach {to}: degrees differ by the wrong amount")]
    DegreeMismatch { k: u32, from: String, to: String },
    #[error("Sq^{k} is not in {algebra}")]
    OperationNotInAlgebra { k: u32, algebra: String },
    #[error("module `{0}` has not been validated")]
    NotValidated(String),
    #[error("module `{name}` is not a module: {reason}")]
    Invalid { name: String, reason: String },
    #[error("incompatible algebras {left} and {right}")]
    IncompatibleAlgebras { left: String, right: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    TooLarge(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisElement {
    pub id: String,
    pub degree: i32,
}

/// Records that a module is `Delta^{(k)}` of `base`, shifted by `offset`:
/// class `i` has degree `2^k deg_base(i) + offset`, and `theta` acts as
/// `V^k(theta)` acts on `base`.
#[derive(Clone)]
pub(crate) struct Doubling {
    pub(crate) base: FiniteModule,
    pub(crate) k: u32,
    pub(crate) offset: i32,
}

#[derive(Clone)]
pub struct FiniteModule {
    name: String,
    algebra: SubalgebraSpec,
    basis: Vec<BasisElement>,
    index: HashMap<String, usize>,
    // sq[k - 1][i] = Sq^k applied to class i
    sq: Vec<Vec<F2Vector>>,
    validated: bool,
    doubling: Option<Arc<Doubling>>,
}

impl FiniteModule {
    /// Builds a module from explicit tables for every `Sq^k` (omitted entries
    /// are zero). Classes are reordered by degree, keeping the given order
    /// within a degree.
    pub fn from_tables<S: AsRef<str>>(
        name: &str,
        algebra: SubalgebraSpec,
        classes: &[(S, i32)],
        entries: &[(u32, S, Vec<S>)],
    ) -> Result<Self, ModuleError> {
        let mut m = FiniteModule::empty(name, algebra, classes)?;
        for (k, source, targets) in entries {
            m.set_entry(*k, source.as_ref(), targets)?;
        }
        Ok(m)
    }

    /// Builds a module from tables for the generators `Sq^{2^i}` only; every
    /// other `Sq^k` is evaluated through generator words. The result still
    /// has to be validated.
    pub fn from_generators<S: AsRef<str>>(
        name: &str,
        algebra: SubalgebraSpec,
        classes: &[(S, i32)],
        edges: &[(u32, S, Vec<S>)],
    ) -> Result<Self, ModuleError> {
        let mut m = FiniteModule::empty(name, algebra, classes)?;
        for (k, source, targets) in edges {
            if !k.is_power_of_two() {
                return Err(ModuleError::Invalid {
                    name: name.to_string(),
                    reason: format!("Sq^{k} is not an algebra generator"),
                });
            }
            m.set_entry(*k, source.as_ref(), targets)?;
        }
        m.derive_composite_tables()?;
        Ok(m)
    }

    fn empty<S: AsRef<str>>(
        name: &str,
        algebra: SubalgebraSpec,
        classes: &[(S, i32)],
    ) -> Result<Self, ModuleError> {
        let mut basis: Vec<BasisElement> = classes
            .iter()
            .map(|(id, d)| BasisElement {
                id: id.as_ref().to_string(),
                degree: *d,
            })
            .collect();
        basis.sort_by_key(|b| b.degree);
        FiniteModule::with_basis(name, algebra, basis)
    }

    pub(crate) fn with_basis(
        name: &str,
        algebra: SubalgebraSpec,
        basis: Vec<BasisElement>,
    ) -> Result<Self, ModuleError> {
        debug_assert!(basis.windows(2).all(|w| w[0].degree <= w[1].degree));
        let mut index = HashMap::new();
        for (i, b) in basis.iter().enumerate() {
            if index.insert(b.id.clone(), i).is_some() {
                return Err(ModuleError::DuplicateClass(b.id.clone()));
            }
        }
        let n = basis.len();
        let span = span_of(&basis);
        algebra.check_degree(span)?;
        Ok(FiniteModule {
            name: name.to_string(),
            algebra,
            basis,
            index,
            sq: vec![vec![F2Vector::zero(n); n]; span as usize],
            validated: false,
            doubling: None,
        })
    }

    fn set_entry<S: AsRef<str>>(&mut self, k: u32, source: &str, targets: &[S]) -> Result<(), ModuleError> {
        let i = self.class_index(source)?;
        let mut image = F2Vector::zero(self.dim());
        for t in targets {
            let j = self.class_index(t.as_ref())?;
            if self.basis[j].degree != self.basis[i].degree + k as i32 || k == 0 {
                return Err(ModuleError::DegreeMismatch {
                    k,
                    from: source.to_string(),
                    to: t.as_ref().to_string(),
                });
            }
            image.flip(j);
        }
        self.set_image(k, i, image)
    }

    pub(crate) fn set_image(&mut self, k: u32, i: usize, image: F2Vector) -> Result<(), ModuleError> {
        if image.is_zero() {
            if let Some(table) = self.sq.get_mut(k as usize - 1) {
                table[i] = image;
            }
            return Ok(());
        }
        if !self.algebra.contains_sq(k) {
            return Err(ModuleError::OperationNotInAlgebra {
                k,
                algebra: self.algebra.to_string(),
            });
        }
        self.sq[k as usize - 1][i] = image;
        self.validated = false;
        Ok(())
    }

    /// Overwrites one table entry, e.g. to break a module on purpose.
    pub fn with_action(mut self, k: u32, source: &str, targets: &[&str]) -> Result<Self, ModuleError> {
        let i = self.class_index(source)?;
        self.sq[k as usize - 1][i] = F2Vector::zero(self.dim());
        self.set_entry(k, source, targets)?;
        self.validated = false;
        self.doubling = None;
        Ok(self)
    }

    /// Fills the non-generator tables by evaluating `Sq(k)` on generator words.
    fn derive_composite_tables(&mut self) -> Result<(), ModuleError> {
        for k in 1..=self.span() {
            if k.is_power_of_two() || !self.algebra.contains_sq(k) {
                continue;
            }
            let m = self.monomial_matrix(&MilnorMonomial::sq(k))?;
            self.sq[k as usize - 1] = m.rows().to_vec();
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn algebra(&self) -> SubalgebraSpec {
        self.algebra
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    pub fn class_index(&self, id: &str) -> Result<usize, ModuleError> {
        self.index
            .get(id)
            .copied()
            .ok_or_else(|| ModuleError::UnknownClass(id.to_string()))
    }

    pub fn class(&self, id: &str) -> Result<F2Vector, ModuleError> {
        Ok(F2Vector::unit(self.dim(), self.class_index(id)?))
    }

    pub fn degree_of(&self, i: usize) -> i32 {
        self.basis[i].degree
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.basis.first().map(|b| b.degree)
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.basis.last().map(|b| b.degree)
    }

    /// Difference between top and bottom degrees.
    pub fn span(&self) -> u32 {
        span_of(&self.basis)
    }

    /// Class indices in degree `d`.
    pub fn classes_in_degree(&self, d: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.basis[i].degree == d).collect()
    }

    /// Distinct degrees, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut ds: Vec<i32> = self.basis.iter().map(|b| b.degree).collect();
        ds.dedup();
        ds
    }

    /// Number of classes in each degree from the bottom to the top.
    pub fn graded_dimensions(&self) -> Vec<(i32, usize)> {
        self.degrees()
            .into_iter()
            .map(|d| (d, self.classes_in_degree(d).len()))
            .collect()
    }

    /// Stored image of class `i` under `Sq^k`.
    pub fn sq_image(&self, k: u32, i: usize) -> F2Vector {
        match k {
            0 => F2Vector::unit(self.dim(), i),
            _ => self
                .sq
                .get(k as usize - 1)
                .map(|t| t[i].clone())
                .unwrap_or_else(|| F2Vector::zero(self.dim())),
        }
    }

    /// `Sq^k` from the stored table as a matrix whose rows are images.
    pub fn sq_matrix(&self, k: u32) -> F2Matrix {
        let n = self.dim();
        match k {
            0 => F2Matrix::identity(n),
            _ => match self.sq.get(k as usize - 1) {
                Some(rows) => F2Matrix::from_rows(n, rows.clone()),
                None => F2Matrix::from_rows(n, vec![F2Vector::zero(n); n]),
            },
        }
    }

    fn zero_matrix(&self) -> F2Matrix {
        let n = self.dim();
        F2Matrix::from_rows(n, vec![F2Vector::zero(n); n])
    }

    /// Action of a Milnor basis element, rows are images of the classes.
    pub fn monomial_matrix(&self, m: &MilnorMonomial) -> Result<F2Matrix, ModuleError> {
        if m.is_unit() {
            return Ok(F2Matrix::identity(self.dim()));
        }
        if !self.algebra.is_full() && !self.algebra.contains(m) {
            return Err(AlgebraError::NotInAlgebra {
                element: m.to_string(),
                algebra: self.algebra.to_string(),
            }
            .into());
        }
        if m.degree() > self.span() {
            return Ok(self.zero_matrix());
        }
        if let Some(d) = &self.doubling {
            return match verschiebung_monomial(d.k, m) {
                Some(v) => d.base.monomial_matrix(&v),
                None => Ok(self.zero_matrix()),
            };
        }
        let wb = word_basis(&self.algebra, m.degree())?;
        let mut out = self.zero_matrix();
        for w in wb.express(&m.clone().into())? {
            let mut acc = F2Matrix::identity(self.dim());
            for &g in wb.words[w].iter().rev() {
                acc = acc.mul(&self.sq_matrix(g));
            }
            for (r, row) in acc.rows().iter().enumerate() {
                let mut sum = out.row(r).clone();
                sum.add_assign(row);
                out = replace_row(out, r, sum);
            }
        }
        Ok(out)
    }

    /// `Sq(exponents)` kills every class in `degree`. Doubled modules answer
    /// through the Verschiebung without building the monomial, which keeps
    /// sweeps over large Milnor bases cheap.
    pub fn monomial_kills_degree(&self, exponents: &[u32], degree: i32) -> Result<bool, ModuleError> {
        let classes = self.classes_in_degree(degree);
        if classes.is_empty() {
            return Ok(true);
        }
        if let Some(d) = &self.doubling {
            let mask = (1u32 << d.k) - 1;
            if exponents.iter().any(|&r| r & mask != 0) {
                return Ok(true);
            }
            let lowered: Vec<u32> = exponents.iter().map(|&r| r >> d.k).collect();
            let rel = degree - d.offset;
            if rel % (1 << d.k) != 0 {
                return Ok(true);
            }
            return d.base.monomial_kills_degree(&lowered, rel >> d.k);
        }
        let matrix = self.monomial_matrix(&MilnorMonomial::new(exponents.to_vec()))?;
        Ok(classes.iter().all(|&c| matrix.row(c).is_zero()))
    }

    /// Action of an arbitrary element of the algebra.
    pub fn element_matrix(&self, a: &AlgebraElement) -> Result<F2Matrix, ModuleError> {
        let mut rows = vec![F2Vector::zero(self.dim()); self.dim()];
        for m in a.terms() {
            let mm = self.monomial_matrix(m)?;
            for (r, row) in mm.rows().iter().enumerate() {
                rows[r].add_assign(row);
            }
        }
        Ok(F2Matrix::from_rows(self.dim(), rows))
    }

    /// `a . x`.
    pub fn act(&self, a: &AlgebraElement, x: &F2Vector) -> Result<F2Vector, ModuleError> {
        Ok(self.element_matrix(a)?.apply_row(x))
    }

    /// Renders a vector as a sum of class ids.
    pub fn format_vector(&self, v: &F2Vector) -> String {
        if v.is_zero() {
            return "0".to_string();
        }
        v.ones().map(|i| self.basis[i].id.clone()).collect::<Vec<_>>().join(" + ")
    }

    pub(crate) fn set_validated(&mut self, v: bool) {
        self.validated = v;
    }

    pub(crate) fn doubling(&self) -> Option<&Doubling> {
        self.doubling.as_deref()
    }

    /// Runs [`FiniteModule::validate`] and keeps the module only if it passes.
    pub fn validated(mut self) -> Result<Self, ModuleError> {
        let report = self.validate();
        if !report.valid {
            return Err(ModuleError::Invalid {
                name: self.name.clone(),
                reason: report.to_string(),
            });
        }
        self.validated = true;
        Ok(self)
    }

    pub(crate) fn require_validated(&self) -> Result<(), ModuleError> {
        if self.validated {
            Ok(())
        } else {
            Err(ModuleError::NotValidated(self.name.clone()))
        }
    }

    // ------------------------------------------------------------ operations

    /// All degrees raised by `m`; actions unchanged.
    pub fn shift(&self, m: i32) -> FiniteModule {
        let mut out = self.clone();
        for b in &mut out.basis {
            b.degree += m;
        }
        if let Some(d) = &self.doubling {
            out.doubling = Some(Arc::new(Doubling {
                base: d.base.clone(),
                k: d.k,
                offset: d.offset + m,
            }));
        }
        out
    }

    /// The linear dual with `(theta f)(x) = f(chi(theta) x)`, degrees negated.
    /// Class `id` becomes `id*`.
    pub fn dualize(&self) -> Result<FiniteModule, ModuleError> {
        self.require_validated()?;
        let n = self.dim();
        let rev = |i: usize| n - 1 - i;
        if let Some(d) = &self.doubling {
            let base_dual = d.base.dualize()?;
            let mut out = base_dual.double(d.k)?.shift(-d.offset);
            for (i, b) in out.basis.iter_mut().enumerate() {
                b.id = format!("{}*", self.basis[rev(i)].id);
            }
            out.index = out.basis.iter().enumerate().map(|(i, b)| (b.id.clone(), i)).collect();
            out.name = format!("D({})", self.name);
            return Ok(out);
        }
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .rev()
            .map(|b| BasisElement {
                id: format!("{}*", b.id),
                degree: -b.degree,
            })
            .collect();
        let mut out = FiniteModule::with_basis(&format!("D({})", self.name), self.algebra, basis)?;
        for k in 1..=self.span() {
            if !self.algebra.contains_sq(k) {
                continue;
            }
            let chi = self.element_matrix(&crate::milnor::antipode_sq(k)?)?;
            // Sq^k e_i^* = sum_j [e_i in chi(Sq^k) e_j] e_j^*
            let t = chi.transpose();
            for i in 0..n {
                let mut image = F2Vector::zero(n);
                for j in t.row(i).ones() {
                    image.flip(rev(j));
                }
                out.sq[k as usize - 1][rev(i)] = image;
            }
        }
        out.validated()
    }

    /// `Delta^{(k)}`: degrees multiplied by `2^k`, acting through `V^k`.
    pub fn double(&self, k: u32) -> Result<FiniteModule, ModuleError> {
        self.require_validated()?;
        let algebra = match self.algebra {
            SubalgebraSpec::An(n) => SubalgebraSpec::An(n + k),
            full @ SubalgebraSpec::FullA { .. } => full,
        };
        let basis: Vec<BasisElement> = self
            .basis
            .iter()
            .map(|b| BasisElement {
                id: scale_id(&b.id, 1 << k),
                degree: b.degree << k,
            })
            .collect();
        let mut out = FiniteModule::with_basis(&format!("Delta^{k}({})", self.name), algebra, basis)?;
        for kk in 1..=self.span() {
            let rows = self.sq[kk as usize - 1].clone();
            out.sq[((kk << k) - 1) as usize] = rows;
        }
        let provenance = match &self.doubling {
            Some(d) => Doubling {
                base: d.base.clone(),
                k: d.k + k,
                offset: d.offset << k,
            },
            None => Doubling {
                base: self.clone(),
                k,
                offset: 0,
            },
        };
        out.doubling = Some(Arc::new(provenance));
        out.validated()
    }

    /// Same classes, viewed as a module over the subalgebra `spec`.
    pub fn restrict(&self, spec: SubalgebraSpec) -> Result<FiniteModule, ModuleError> {
        if !spec.is_subalgebra_of(&self.algebra) {
            return Err(ModuleError::IncompatibleAlgebras {
                left: self.algebra.to_string(),
                right: spec.to_string(),
            });
        }
        let mut out = FiniteModule::with_basis(&self.name, spec, self.basis.clone())?;
        for k in 1..=self.span() {
            if spec.contains_sq(k) {
                out.sq[k as usize - 1] = self.sq[k as usize - 1].clone();
            }
        }
        if self.validated {
            out = out.validated()?;
        }
        Ok(out)
    }

    /// `M (x) N` with the Cartan formula. Class ids are `a.b`.
    pub fn tensor(&self, other: &FiniteModule) -> Result<FiniteModule, ModuleError> {
        self.require_validated()?;
        other.require_validated()?;
        let algebra = common_algebra(self.algebra, other.algebra, true)?;
        let mut pairs: Vec<(usize, usize)> = (0..self.dim())
            .flat_map(|i| (0..other.dim()).map(move |j| (i, j)))
            .collect();
        pairs.sort_by_key(|&(i, j)| self.basis[i].degree + other.basis[j].degree);
        let basis: Vec<BasisElement> = pairs
            .iter()
            .map(|&(i, j)| BasisElement {
                id: format!("{}.{}", self.basis[i].id, other.basis[j].id),
                degree: self.basis[i].degree + other.basis[j].degree,
            })
            .collect();
        let position: HashMap<(usize, usize), usize> =
            pairs.iter().enumerate().map(|(p, &ij)| (ij, p)).collect();
        let name = format!("{} (x) {}", self.name, other.name);
        let mut out = FiniteModule::with_basis(&name, algebra, basis)?;
        let n = out.dim();
        for k in 1..=out.span() {
            if !algebra.contains_sq(k) {
                continue;
            }
            for (p, &(i, j)) in pairs.iter().enumerate() {
                let mut image = F2Vector::zero(n);
                for a in 0..=k {
                    let left = self.sq_image(a, i);
                    let right = other.sq_image(k - a, j);
                    for x in left.ones() {
                        for y in right.ones() {
                            image.flip(position[&(x, y)]);
                        }
                    }
                }
                out.sq[k as usize - 1][p] = image;
            }
        }
        out.validated()
    }
}

fn replace_row(m: F2Matrix, r: usize, row: F2Vector) -> F2Matrix {
    let cols = m.columns();
    let mut rows = m.rows().to_vec();
    rows[r] = row;
    F2Matrix::from_rows(cols, rows)
}

fn span_of(basis: &[BasisElement]) -> u32 {
    match (basis.first(), basis.last()) {
        (Some(a), Some(b)) => (b.degree - a.degree) as u32,
        _ => 0,
    }
}

/// `x3` -> `x6` when scaling by 2; ids not of the form `x<digits>'...` are kept.
fn scale_id(id: &str, factor: i32) -> String {
    let Some(rest) = id.strip_prefix('x') else {
        return id.to_string();
    };
    let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
    let tail = &rest[digits.len()..];
    if digits.is_empty() || !tail.chars().all(|c| c == '\'') {
        return id.to_string();
    }
    match digits.parse::<i32>() {
        Ok(d) => format!("x{}{}", d * factor, tail),
        Err(_) => id.to_string(),
    }
}

/// The algebra two modules share. With `exact`, the algebras must agree
/// (capped copies of `A` count as equal); otherwise the smaller one is used.
pub(crate) fn common_algebra(
    a: SubalgebraSpec,
    b: SubalgebraSpec,
    exact: bool,
) -> Result<SubalgebraSpec, ModuleError> {
    let err = || ModuleError::IncompatibleAlgebras {
        left: a.to_string(),
        right: b.to_string(),
    };
    match (a, b) {
        (SubalgebraSpec::FullA { degree_cap: x }, SubalgebraSpec::FullA { degree_cap: y }) => {
            Ok(SubalgebraSpec::FullA { degree_cap: x.max(y) })
        }
        _ if a == b => Ok(a),
        _ if exact => Err(err()),
        _ if a.is_subalgebra_of(&b) => Ok(a),
        _ if b.is_subalgebra_of(&a) => Ok(b),
        _ => Err(err()),
    }
}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", write_module(self))
    }
}

impl fmt::Display for FiniteModule {
    /// A human-readable table: one line per class listing nonzero `Sq^k`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {} ({} classes)", self.name, self.algebra, self.dim())?;
        for (i, b) in self.basis.iter().enumerate() {
            write!(f, "  {:>4}  {}", b.degree, b.id)?;
            let mut first = true;
            for k in 1..=self.span() {
                let img = self.sq_image(k, i);
                if !img.is_zero() {
                    write!(f, "{}Sq^{k} -> {}", if first { "    " } else { ", " }, self.format_vector(&img))?;
                    first = false;
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn joker() -> FiniteModule {
        FiniteModule::from_generators(
            "joker",
            SubalgebraSpec::An(1),
            &[("x0", 0), ("x1", 1), ("x2", 2), ("x3", 3), ("x4", 4)],
            &[
                (1, "x0", vec!["x1"]),
                (1, "x3", vec!["x4"]),
                (2, "x0", vec!["x2"]),
                (2, "x1", vec!["x3"]),
                (2, "x2", vec!["x4"]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn composite_tables_are_derived() {
        let j = joker();
        // Sq^3 = Sq^1 Sq^2 kills x0 (Sq^1 x2 = 0) and sends x1 to x4
        assert!(j.sq_image(3, 0).is_zero());
        assert_eq!(j.format_vector(&j.sq_image(3, 1)), "x4");
        let a: AlgebraElement = "Sq(1,1)".parse().unwrap();
        assert_eq!(j.format_vector(&j.act(&a, &j.class("x0").unwrap()).unwrap()), "x4");
        assert_eq!(j.act(&AlgebraElement::one(), &j.class("x2").unwrap()).unwrap(), j.class("x2").unwrap());
    }

    #[test]
    fn rejects_bad_tables() {
        let e = FiniteModule::from_tables(
            "bad",
            SubalgebraSpec::An(1),
            &[("a", 0), ("b", 2)],
            &[(1, "a", vec!["b"])],
        );
        assert!(matches!(e, Err(ModuleError::DegreeMismatch { .. })));
        let e = FiniteModule::from_tables(
            "bad",
            SubalgebraSpec::An(1),
            &[("a", 0), ("b", 4)],
            &[(4, "a", vec!["b"])],
        );
        assert!(matches!(e, Err(ModuleError::OperationNotInAlgebra { .. })));
        let e = FiniteModule::from_tables::<&str>("bad", SubalgebraSpec::An(1), &[("a", 0), ("a", 1)], &[]);
        assert!(matches!(e, Err(ModuleError::DuplicateClass(_))));
    }

    #[test]
    fn id_scaling() {
        assert_eq!(scale_id("x3'", 4), "x12'");
        assert_eq!(scale_id("x3*", 4), "x3*");
        assert_eq!(scale_id("w2", 4), "w2");
    }
}
