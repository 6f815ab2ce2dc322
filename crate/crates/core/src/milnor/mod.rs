//! The mod 2 Steenrod algebra in the Milnor basis.
//!
//! A [`MilnorMonomial`] is a basis element `Sq(r_1, ..., r_l)` and an
//! [`AlgebraElement`] is a finite GF(2) sum of them. Subalgebras are
//! described by a [`SubalgebraSpec`]: either all of `A` (with a degree cap
//! that computations refuse to cross) or one of the finite `A(n)`.

mod admissible;
mod antipode;
mod basis;
mod dual;
mod product;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU32, Ordering};

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use admissible::{is_admissible, to_admissible, word_basis, AdmissibleWord, WordBasis};
pub use antipode::{antipode, antipode_sq};
pub use basis::{
    basis_count, enumerate_basis, for_each_basis, milnor_primitive, verschiebung,
    verschiebung_monomial,
};
pub use dual::{dual_antipode, DualBasis, DualMonomial, DualPoly};
pub use product::{coproduct, milnor_product, monomial_product, monomial_product_uncached, sq_word};

/// Degree cap used by operations that are not handed an explicit one.
pub const DEFAULT_DEGREE_CAP: u32 = 64;

static DEGREE_CAP: AtomicU32 = AtomicU32::new(DEFAULT_DEGREE_CAP);

/// Process-wide cap for admissible conversion and the antipode.
pub fn degree_cap() -> u32 {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub fn set_degree_cap(cap: u32) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("degree {degree} exceeds the configured cap {cap}")]
    DegreeCap { degree: u32, cap: u32 },
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("{element} does not lie in {algebra}")]
    NotInAlgebra { element: String, algebra: String },
    #[error("cannot parse `{0}`")]
    Parse(String),
}

/// Milnor basis element `Sq(r_1, ..., r_l)` with trailing zeros removed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MilnorMonomial {
    exponents: Vec<u32>,
}

impl MilnorMonomial {
    pub fn unit() -> Self {
        MilnorMonomial {
            exponents: Vec::new(),
        }
    }

    pub fn new(exponents: impl Into<Vec<u32>>) -> Self {
        let mut exponents = exponents.into();
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        MilnorMonomial { exponents }
    }

    /// `Sq^k = Sq(k)`.
    pub fn sq(k: u32) -> Self {
        MilnorMonomial::new(vec![k])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &r)| r * ((1u32 << (i + 1)) - 1))
            .sum()
    }
}

impl fmt::Display for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "1");
        }
        write!(f, "Sq(")?;
        for (i, r) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MilnorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for MilnorMonomial {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "1" {
            return Ok(MilnorMonomial::unit());
        }
        let inner = s
            .strip_prefix("Sq(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| AlgebraError::Parse(s.to_string()))?;
        if inner.trim().is_empty() {
            return Ok(MilnorMonomial::unit());
        }
        let exps = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| AlgebraError::Parse(s.to_string()))?;
        Ok(MilnorMonomial::new(exps))
    }
}

/// GF(2) sum of Milnor basis elements.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct AlgebraElement {
    terms: BTreeSet<MilnorMonomial>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn one() -> Self {
        MilnorMonomial::unit().into()
    }

    pub fn sq(k: u32) -> Self {
        MilnorMonomial::sq(k).into()
    }

    /// Builds a sum, cancelling repeated terms in pairs.
    pub fn from_terms(terms: impl IntoIterator<Item = MilnorMonomial>) -> Self {
        let mut e = AlgebraElement::zero();
        for t in terms {
            e.add_monomial(t);
        }
        e
    }

    pub fn terms(&self) -> impl Iterator<Item = &MilnorMonomial> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        self.terms.contains(m)
    }

    pub fn add_monomial(&mut self, m: MilnorMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for t in &other.terms {
            self.add_monomial(t.clone());
        }
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous sums.
    pub fn degree(&self) -> Option<u32> {
        let mut degrees = self.terms.iter().map(MilnorMonomial::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }
}

impl From<MilnorMonomial> for AlgebraElement {
    fn from(m: MilnorMonomial) -> Self {
        AlgebraElement {
            terms: BTreeSet::from([m]),
        }
    }
}

impl std::ops::Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }
}

impl std::ops::Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        milnor_product(self, rhs)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for AlgebraElement {
    type Err = AlgebraError;

    /// Parses `Sq(1,2) + Sq(3)`, `0` and `1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "0" {
            return Ok(AlgebraElement::zero());
        }
        s.split('+')
            .map(str::parse::<MilnorMonomial>)
            .collect::<Result<Vec<_>, _>>()
            .map(AlgebraElement::from_terms)
    }
}

/// Which algebra a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SubalgebraSpec {
    /// The whole Steenrod algebra, truncated at `degree_cap`.
    FullA { degree_cap: u32 },
    /// The finite sub-Hopf algebra generated by `Sq^1, ..., Sq^{2^n}`.
    An(u32),
}

impl SubalgebraSpec {
    pub fn full() -> Self {
        SubalgebraSpec::FullA {
            degree_cap: degree_cap(),
        }
    }

    /// Profile membership: `r_i < 2^{n+2-i}` and at most `n + 1` slots.
    pub fn contains(&self, m: &MilnorMonomial) -> bool {
        match *self {
            SubalgebraSpec::FullA { degree_cap } => m.degree() <= degree_cap,
            SubalgebraSpec::An(n) => {
                let n = n as usize;
                m.exponents.len() <= n + 1
                    && m.exponents
                        .iter()
                        .enumerate()
                        .all(|(i, &r)| u64::from(r) < (1u64 << (n + 1 - i)))
            }
        }
    }

    pub fn contains_element(&self, a: &AlgebraElement) -> bool {
        a.terms().all(|m| self.contains(m))
    }

    /// `Sq^k` lies in the algebra.
    pub fn contains_sq(&self, k: u32) -> bool {
        self.contains(&MilnorMonomial::sq(k))
    }

    /// Exponents `i` with `Sq^{2^i}` an algebra generator of degree at most `degree`.
    pub fn generator_exponents(&self, degree: u32) -> Vec<u32> {
        (0..32)
            .take_while(|&i| (1u64 << i) <= u64::from(degree))
            .filter(|&i| self.contains_sq(1 << i))
            .collect()
    }

    /// Top nonzero degree, when finite.
    pub fn top_degree(&self) -> Option<u32> {
        match *self {
            SubalgebraSpec::FullA { .. } => None,
            SubalgebraSpec::An(n) => Some(
                (1..=n + 1)
                    .map(|i| ((1u32 << (n + 2 - i)) - 1) * ((1u32 << i) - 1))
                    .sum(),
            ),
        }
    }

    /// Largest degree in which computations may take place.
    pub fn max_degree(&self) -> u32 {
        match *self {
            SubalgebraSpec::FullA { degree_cap } => degree_cap,
            SubalgebraSpec::An(_) => self.top_degree().unwrap_or(0),
        }
    }

    /// `2^{(n+1)(n+2)/2}` for `A(n)`.
    pub fn dimension(&self) -> Option<u128> {
        match *self {
            SubalgebraSpec::FullA { .. } => None,
            SubalgebraSpec::An(n) => Some(1u128 << ((n + 1) * (n + 2) / 2)),
        }
    }

    /// `self` is contained in `other` as an algebra (ignoring caps).
    pub fn is_subalgebra_of(&self, other: &SubalgebraSpec) -> bool {
        match (*self, *other) {
            (_, SubalgebraSpec::FullA { .. }) => true,
            (SubalgebraSpec::An(m), SubalgebraSpec::An(n)) => m <= n,
            (SubalgebraSpec::FullA { .. }, SubalgebraSpec::An(_)) => false,
        }
    }

    pub fn is_full(&self) -> bool {
        matches!(self, SubalgebraSpec::FullA { .. })
    }

    pub fn check_degree(&self, degree: u32) -> Result<(), AlgebraError> {
        match *self {
            SubalgebraSpec::FullA { degree_cap } if degree > degree_cap => {
                Err(AlgebraError::DegreeCap {
                    degree,
                    cap: degree_cap,
                })
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for SubalgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubalgebraSpec::FullA { .. } => write!(f, "A"),
            SubalgebraSpec::An(n) => write!(f, "A({n})"),
        }
    }
}

impl FromStr for SubalgebraSpec {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "A" {
            return Ok(SubalgebraSpec::full());
        }
        s.strip_prefix("A(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|n| n.trim().parse().ok())
            .map(SubalgebraSpec::An)
            .ok_or_else(|| AlgebraError::Parse(s.to_string()))
    }
}

/// Binomial coefficient mod 2 (Lucas): `C(n, k)` is odd iff `k & !n == 0`.
#[inline]
pub fn binomial_mod2(n: u64, k: u64) -> bool {
    k <= n && (k & !n) == 0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_trims_and_degrees() {
        let m = MilnorMonomial::new(vec![2, 1, 0, 0]);
        assert_eq!(m.exponents(), &[2, 1]);
        assert_eq!(m.degree(), 5);
        assert_eq!(MilnorMonomial::new(vec![0, 0]), MilnorMonomial::unit());
        assert_eq!(MilnorMonomial::new(vec![1, 0, 1]).degree(), 8);
    }

    #[test]
    fn display_and_parse() {
        let a: AlgebraElement = "Sq(4) + Sq(1,1)".parse().unwrap();
        assert_eq!(a.to_string(), "Sq(1,1) + Sq(4)");
        assert_eq!(a.degree(), Some(4));
        assert_eq!("1".parse::<AlgebraElement>().unwrap(), AlgebraElement::one());
        assert_eq!("Sq(3)+Sq(3)".parse::<AlgebraElement>().unwrap(), AlgebraElement::zero());
        assert!("Sq(x)".parse::<AlgebraElement>().is_err());
        assert_eq!(AlgebraElement::zero().to_string(), "0");
    }

    #[test]
    fn profile_membership() {
        let a1 = SubalgebraSpec::An(1);
        assert!(a1.contains(&MilnorMonomial::new(vec![3, 1])));
        assert!(!a1.contains(&MilnorMonomial::new(vec![4])));
        assert!(!a1.contains(&MilnorMonomial::new(vec![0, 2])));
        assert!(!a1.contains(&MilnorMonomial::new(vec![0, 0, 1])));
        assert_eq!(a1.top_degree(), Some(6));
        assert_eq!(SubalgebraSpec::An(2).top_degree(), Some(23));
        assert_eq!(SubalgebraSpec::An(3).dimension(), Some(1024));
        assert_eq!(SubalgebraSpec::An(2).generator_exponents(100), vec![0, 1, 2]);
    }

    #[test]
    fn spec_parse() {
        assert_eq!("A(2)".parse::<SubalgebraSpec>().unwrap(), SubalgebraSpec::An(2));
        assert!("A".parse::<SubalgebraSpec>().unwrap().is_full());
        assert!("B".parse::<SubalgebraSpec>().is_err());
    }

    #[test]
    fn lucas() {
        assert!(binomial_mod2(5, 1));
        assert!(!binomial_mod2(4, 2));
        assert!(binomial_mod2(7, 3));
        assert!(!binomial_mod2(2, 3));
    }
}
