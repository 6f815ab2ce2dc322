//! Checks that the action tables of a module define an algebra map.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;

use super::FiniteModule;
use crate::gf2::F2Matrix;
use crate::milnor::{enumerate_basis, milnor_product, AlgebraElement, MilnorMonomial};

/// Pairs up to this total degree are checked exhaustively.
const EXHAUSTIVE_SPAN: u32 = 24;
/// Doubled modules larger than this rely on the validated base.
const DOUBLED_EXHAUSTIVE_SPAN: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationMethod {
    /// `act(ab) = act(a) act(b)` for all Milnor basis pairs.
    Exhaustive,
    /// The same with `a` running over the algebra generators `Sq^{2^i}` only,
    /// which is sufficient because generator words span the algebra.
    LeftGenerators,
    /// Doubled module: the action factors through the Verschiebung, an algebra
    /// map, so it is multiplicative because the base module is.
    Inherited,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub a: MilnorMonomial,
    pub b: MilnorMonomial,
    pub class: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub method: ValidationMethod,
    /// Number of `(a, b)` pairs (or table entries) compared.
    pub checked: usize,
    pub witness: Option<Witness>,
    pub detail: Option<String>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.valid {
            write!(f, "valid ({:?}, {} checks)", self.method, self.checked)
        } else {
            write!(f, "invalid")?;
            if let Some(w) = &self.witness {
                if w.b.is_unit() {
                    write!(f, ": stored {} disagrees with its evaluation on {}", w.a, w.class)?;
                } else {
                    write!(f, ": {} {} {} != ({} * {}) {}", w.a, w.b, w.class, w.a, w.b, w.class)?;
                }
            }
            if let Some(d) = &self.detail {
                write!(f, ": {d}")?;
            }
            Ok(())
        }
    }
}

impl FiniteModule {
    /// Checks `act(a, act(b, x)) = act(a b, x)` for Milnor basis elements
    /// `a`, `b` of positive degree, then that each stored `Sq^k` table agrees
    /// with the evaluated action of `Sq(k)`. Failures are reported, not raised.
    ///
    /// The first failing triple is reported, ordered by total degree, then
    /// `a`, then `b`, then class.
    pub fn validate(&self) -> ValidationReport {
        let span = self.span();
        let report = |method, checked, witness: Option<Witness>, detail: Option<String>| ValidationReport {
            valid: witness.is_none() && detail.is_none(),
            method,
            checked,
            witness,
            detail,
        };

        if let Some(d) = self.doubling() {
            if span > DOUBLED_EXHAUSTIVE_SPAN {
                if !d.base.is_validated() && !d.base.validate().valid {
                    return report(
                        ValidationMethod::Inherited,
                        0,
                        None,
                        Some(format!("base module {} is not valid", d.base.name())),
                    );
                }
                return report(ValidationMethod::Inherited, 0, None, None);
            }
        }

        let method = if span <= EXHAUSTIVE_SPAN {
            ValidationMethod::Exhaustive
        } else {
            ValidationMethod::LeftGenerators
        };

        let basis: Vec<MilnorMonomial> = match (1..=span)
            .map(|d| enumerate_basis(&self.algebra(), d).map(|b| b.as_ref().clone()))
            .collect::<Result<Vec<_>, _>>()
        {
            Ok(v) => v.into_iter().flatten().collect(),
            Err(e) => return report(method, 0, None, Some(e.to_string())),
        };
        let matrices: Result<HashMap<MilnorMonomial, F2Matrix>, _> = basis
            .par_iter()
            .map(|m| self.monomial_matrix(m).map(|mm| (m.clone(), mm)))
            .collect();
        let matrices = match matrices {
            Ok(m) => m,
            Err(e) => return report(method, 0, None, Some(e.to_string())),
        };

        let mut pairs: Vec<(&MilnorMonomial, &MilnorMonomial)> = Vec::new();
        for a in &basis {
            if method == ValidationMethod::LeftGenerators
                && !(a.exponents().len() == 1 && a.exponents()[0].is_power_of_two())
            {
                continue;
            }
            for b in &basis {
                if a.degree() + b.degree() <= span {
                    pairs.push((a, b));
                }
            }
        }
        pairs.sort_by(|x, y| (x.0.degree() + x.1.degree(), x.0, x.1).cmp(&(y.0.degree() + y.1.degree(), y.0, y.1)));

        let failure = pairs.par_iter().find_map_first(|&(a, b)| {
            let product = milnor_product(&a.clone().into(), &b.clone().into());
            let lhs = self.element_matrix(&product).ok()?;
            // act(a, act(b, x)) in row-vector convention is x M_b M_a
            let rhs = matrices[b].mul(&matrices[a]);
            (0..self.dim()).find(|&i| lhs.row(i) != rhs.row(i)).map(|i| Witness {
                a: a.clone(),
                b: b.clone(),
                class: self.basis()[i].id.clone(),
            })
        });
        if failure.is_some() {
            return report(method, pairs.len(), failure, None);
        }

        for k in 1..=span {
            if !self.algebra().contains_sq(k) {
                continue;
            }
            let sq = MilnorMonomial::sq(k);
            let evaluated = &matrices[&sq];
            let stored = self.sq_matrix(k);
            if let Some(i) = (0..self.dim()).find(|&i| evaluated.row(i) != stored.row(i)) {
                let w = Witness {
                    a: sq,
                    b: MilnorMonomial::unit(),
                    class: self.basis()[i].id.clone(),
                };
                return report(method, pairs.len() + k as usize, Some(w), None);
            }
        }
        report(method, pairs.len() + span as usize, None, None)
    }

    /// Checks the action of one algebra element against a claimed value on
    /// every class; convenience for relation checks.
    pub fn annihilates(&self, a: &AlgebraElement) -> Result<bool, super::ModuleError> {
        Ok(self.element_matrix(a)?.rows().iter().all(|r| r.is_zero()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::SubalgebraSpec;

    fn joker0() -> FiniteModule {
        FiniteModule::from_generators(
            "joker0",
            SubalgebraSpec::full(),
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
    fn joker_is_valid() {
        let r = joker0().validate();
        assert!(r.valid, "{r}");
        assert_eq!(r.method, ValidationMethod::Exhaustive);
    }

    #[test]
    fn broken_joker_reports_witness() {
        let broken = joker0().with_action(2, "x0", &[]).unwrap();
        let r = broken.validate();
        assert!(!r.valid);
        assert_eq!(
            r.witness,
            Some(Witness {
                a: MilnorMonomial::sq(2),
                b: MilnorMonomial::sq(2),
                class: "x0".into()
            })
        );
    }

    #[test]
    fn inconsistent_stored_table_is_caught() {
        // Sq^3 x1 should be x4
        let m = joker0().with_action(3, "x1", &[]).unwrap();
        let r = m.validate();
        assert!(!r.valid);
        assert_eq!(r.witness.unwrap().a, MilnorMonomial::sq(3));
    }

    #[test]
    fn zero_module_is_valid() {
        let z = FiniteModule::from_tables::<&str>("zero", SubalgebraSpec::An(1), &[], &[]).unwrap();
        assert!(z.validate().valid);
    }
}
