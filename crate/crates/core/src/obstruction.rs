//! Why `Joker(n)` has no realization for `n >= 4`.
//!
//! Write `u` for the class of `Joker(n)` in degree `2^{n-1}` and `k = n - 1`.
//! Every `Sq^{2^r} u` with `r <= k` vanishes, so Adams' factorization
//! through secondary operations applies:
//!
//! ```text
//! Sq^{2^{k+1}} u = sum over 0 <= i <= j <= k, j != i + 1 of  a_{ij} Phi_{ij}(u)
//! ```
//!
//! with `deg a_{ij} = 2^{k+1} - 2^i - 2^j + 1`. The values `Phi_{ij}(u)` are
//! unknown, but they live in degree `deg u + 2^i + 2^j - 1`; if every element
//! of `A` in the degree of `a_{ij}` kills that whole degree, the term (and its
//! indeterminacy, which is of the same shape) is zero. When all terms vanish
//! while `Sq^{2^n} u` does not, no space or spectrum can carry the module.

use std::fmt;

use thiserror::Error;

use crate::catalogue::{get_module, CatalogueError};
use crate::milnor::{basis_count, for_each_basis, AlgebraElement, AlgebraError, SubalgebraSpec};
use crate::module::{FiniteModule, ModuleError};

/// Largest `n` accepted; the sweep in degree `2^{n-1}` grows quickly.
pub const MAX_N: u32 = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("n = {0}: the factorization needs k = n - 1 >= 3, so n >= 4")]
    TooSmall(u32),
    #[error("n = {0} is above the supported range (n <= {MAX_N})")]
    TooLarge(u32),
    #[error(transparent)]
    Catalogue(#[from] CatalogueError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Pairs `(i, j)` with `0 <= i <= j <= k` and `j != i + 1`, sorted.
pub fn admissible_pairs(k: u32) -> Vec<(u32, u32)> {
    (0..=k)
        .flat_map(|i| (i..=k).filter(move |&j| j != i + 1).map(move |j| (i, j)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisCheck {
    pub r: u32,
    /// `deg u + 2^r`.
    pub degree: i32,
    /// Dimension of the module there.
    pub rank: usize,
    /// `Sq^{2^r} u = 0`.
    pub vanishes: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermVerdict {
    /// Nothing lives in the degree of `Phi_{ij} u`.
    ZeroRank,
    /// Every Milnor basis element of the coefficient degree (this many) kills
    /// that degree.
    ActionsVanish(u64),
    /// This basis element acts nontrivially; the term may survive.
    Survives(String),
}

impl TermVerdict {
    pub fn vanishes(&self) -> bool {
        !matches!(self, TermVerdict::Survives(_))
    }

    fn token(&self) -> String {
        match self {
            TermVerdict::ZeroRank => "vanishes:rank0".into(),
            TermVerdict::ActionsVanish(n) => format!("vanishes:alpha{n}"),
            TermVerdict::Survives(a) => format!("survives:{a}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermCheck {
    pub i: u32,
    pub j: u32,
    /// `deg u + 2^i + 2^j - 1`.
    pub deg_phi_u: i32,
    pub rank: usize,
    /// `2^{k+1} - 2^i - 2^j + 1`.
    pub deg_alpha: u32,
    /// Whether `A` and `A(n)` have the same basis in `deg_alpha`; only
    /// checked when actions are evaluated (`None` otherwise).
    pub profile_stable: Option<bool>,
    pub verdict: TermVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Conclusion {
    NonRealizable,
    Inconclusive,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::NonRealizable => "NonRealizable",
            Conclusion::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionReport {
    pub n: u32,
    pub k: u32,
    /// Id of the class `u`.
    pub u: String,
    pub hypothesis_checks: Vec<HypothesisCheck>,
    pub terms: Vec<TermCheck>,
    /// `Sq^{2^n} u`, rendered.
    pub target: String,
    pub target_nonzero: bool,
    pub conclusion: Conclusion,
}

impl ObstructionReport {
    /// One line per term: `n i j degPhiU rank degAlpha verdict`.
    pub fn records(&self) -> String {
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{} {} {} {} {} {} {}\n",
                    self.n,
                    t.i,
                    t.j,
                    t.deg_phi_u,
                    t.rank,
                    t.deg_alpha,
                    t.verdict.token()
                )
            })
            .collect()
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_checks.iter().all(|h| h.vanishes)
    }

    pub fn soundness_gate_passes(&self) -> bool {
        self.terms.iter().all(|t| t.profile_stable != Some(false))
    }
}

impl fmt::Display for ObstructionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Joker({}): u = {} in degree {}, k = {}", self.n, self.u, 1 << (self.n - 1), self.k)?;
        writeln!(f, "hypotheses Sq^(2^r) u = 0:")?;
        writeln!(f, "  {:>2} {:>6} {:>4}  verdict", "r", "degree", "rank")?;
        for h in &self.hypothesis_checks {
            writeln!(
                f,
                "  {:>2} {:>6} {:>4}  {}",
                h.r,
                h.degree,
                h.rank,
                if h.vanishes { "zero" } else { "NONZERO" }
            )?;
        }
        writeln!(f, "terms alpha_ij Phi_ij(u):")?;
        writeln!(
            f,
            "  {:>2} {:>2} {:>8} {:>4} {:>8} {:>7}  verdict",
            "i", "j", "degPhiU", "rank", "degAlpha", "stable"
        )?;
        for t in &self.terms {
            let stable = match t.profile_stable {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            };
            writeln!(
                f,
                "  {:>2} {:>2} {:>8} {:>4} {:>8} {:>7}  {}",
                t.i,
                t.j,
                t.deg_phi_u,
                t.rank,
                t.deg_alpha,
                stable,
                t.verdict.token()
            )?;
        }
        writeln!(f, "Sq^{} u = {}", 1u64 << self.n, self.target)?;
        writeln!(f, "conclusion: {}", self.conclusion)
    }
}

/// `Joker(n)`, built by doubling the Joker `n - 1` times.
pub fn joker_module(n: u32) -> Result<FiniteModule, ObstructionError> {
    let joker = get_module("joker")?;
    Ok(joker.double(n - 1)?.renamed(&format!("joker({n})")))
}

fn check_range(n: u32) -> Result<(), ObstructionError> {
    if n < 4 {
        return Err(ObstructionError::TooSmall(n));
    }
    if n > MAX_N {
        return Err(ObstructionError::TooLarge(n));
    }
    Ok(())
}

fn bottom_interesting_class(m: &FiniteModule, n: u32) -> usize {
    m.classes_in_degree(1 << (n - 1))[0]
}

/// `Sq^{2^r} u = 0` for `0 <= r <= n - 1`.
pub fn check_hypotheses(n: u32) -> Result<Vec<HypothesisCheck>, ObstructionError> {
    check_range(n)?;
    let m = joker_module(n)?;
    hypotheses(&m, n)
}

fn hypotheses(m: &FiniteModule, n: u32) -> Result<Vec<HypothesisCheck>, ObstructionError> {
    let u = bottom_interesting_class(m, n);
    let unit = crate::gf2::F2Vector::unit(m.dim(), u);
    let du = m.degree_of(u);
    (0..n)
        .map(|r| {
            let image = m.act(&AlgebraElement::sq(1 << r), &unit)?;
            Ok(HypothesisCheck {
                r,
                degree: du + (1 << r),
                rank: m.classes_in_degree(du + (1 << r)).len(),
                vanishes: image.is_zero(),
            })
        })
        .collect()
}

/// Sweeps the Milnor basis of `A` in `deg_alpha`, checking that each element
/// lies in `A(n)` and kills `degree` of `m`.
fn sweep(m: &FiniteModule, n: u32, deg_alpha: u32, degree: i32) -> Result<(bool, TermVerdict), ObstructionError> {
    let full = SubalgebraSpec::FullA { degree_cap: deg_alpha };
    let an = SubalgebraSpec::An(n);
    let mut stable = true;
    let mut survivor = None;
    let mut error = None;
    let mut count = 0u64;
    for_each_basis(&full, deg_alpha, |e| {
        count += 1;
        if survivor.is_some() || error.is_some() {
            return;
        }
        // A(n) bounds slot s (1-based) by 2^{n+2-s} - 1
        let inside = e.iter().enumerate().all(|(s, &r)| {
            let slot = s as u32 + 1;
            slot <= n + 1 && u64::from(r) < 1u64 << (n + 2 - slot)
        });
        if !inside {
            stable = false;
            return;
        }
        match m.monomial_kills_degree(e, degree) {
            Ok(true) => {}
            Ok(false) => survivor = Some(crate::milnor::MilnorMonomial::new(e.to_vec()).to_string()),
            Err(err) => error = Some(err),
        }
    })?;
    if let Some(err) = error {
        return Err(err.into());
    }
    let stable = stable && count == basis_count(&an, deg_alpha)?;
    Ok((
        stable,
        match survivor {
            Some(a) => TermVerdict::Survives(a),
            None => TermVerdict::ActionsVanish(count),
        },
    ))
}

pub fn obstruction_report(n: u32) -> Result<ObstructionReport, ObstructionError> {
    check_range(n)?;
    let m = joker_module(n)?;
    let k = n - 1;
    let u = bottom_interesting_class(&m, n);
    let du = m.degree_of(u);
    let hypothesis_checks = hypotheses(&m, n)?;
    let mut terms = Vec::new();
    for (i, j) in admissible_pairs(k) {
        let deg_phi_u = du + (1 << i) + (1 << j) - 1;
        let deg_alpha = (1u32 << (k + 1)) - (1 << i) - (1 << j) + 1;
        debug_assert!((1..(1 << (k + 1))).contains(&deg_alpha));
        debug_assert_eq!(deg_phi_u + deg_alpha as i32, du + (1 << (k + 1)));
        let rank = m.classes_in_degree(deg_phi_u).len();
        let (profile_stable, verdict) = if rank == 0 {
            (None, TermVerdict::ZeroRank)
        } else {
            let (stable, verdict) = sweep(&m, n, deg_alpha, deg_phi_u)?;
            (Some(stable), verdict)
        };
        terms.push(TermCheck {
            i,
            j,
            deg_phi_u,
            rank,
            deg_alpha,
            profile_stable,
            verdict,
        });
    }
    let target = m.act(&AlgebraElement::sq(1 << n), &crate::gf2::F2Vector::unit(m.dim(), u))?;
    let target_nonzero = !target.is_zero();
    let mut report = ObstructionReport {
        n,
        k,
        u: m.basis()[u].id.clone(),
        hypothesis_checks,
        terms,
        target: m.format_vector(&target),
        target_nonzero,
        conclusion: Conclusion::Inconclusive,
    };
    if report.hypotheses_hold()
        && report.soundness_gate_passes()
        && report.terms.iter().all(|t| t.verdict.vanishes())
        && target_nonzero
    {
        report.conclusion = Conclusion::NonRealizable;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairs() {
        assert_eq!(admissible_pairs(0), vec![(0, 0)]);
        assert_eq!(admissible_pairs(2), vec![(0, 0), (0, 2), (1, 1), (2, 2)]);
        assert_eq!(
            admissible_pairs(3),
            vec![(0, 0), (0, 2), (0, 3), (1, 1), (1, 3), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn small_n_is_rejected() {
        assert_eq!(check_hypotheses(3), Err(ObstructionError::TooSmall(3)));
        assert_eq!(obstruction_report(3).unwrap_err(), ObstructionError::TooSmall(3));
        assert_eq!(obstruction_report(13).unwrap_err(), ObstructionError::TooLarge(13));
    }
}
