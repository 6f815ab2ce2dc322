//! Polynomial algebras on Stiefel–Whitney and Chern classes with the Steenrod
//! action from the Wu formula, and their truncated quotients as finite
//! modules.
//!
//! On a real class `w_m`
//!
//! ```text
//! Sq^r w_m = sum_{0 <= i <= r} binom(r - m, i) w_{r-i} w_{m+i}
//! ```
//!
//! with `binom(-a, i) = binom(a + i - 1, i)` mod 2 and `w_j = 0` when the
//! algebra has no generator of index `j` (`w_0 = 1`). Complex classes `c_m`
//! (degree `2m`) use the same rule for `Sq^{2r}`; odd squares vanish on them.
//! Monomials go through the Cartan formula.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::milnor::{binomial_mod2, SubalgebraSpec};
use crate::module::{FiniteModule, ModuleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UnstableError {
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("unknown generator in monomial `{0}`")]
    UnknownMonomial(String),
    #[error("monomial of degree {degree} is above the cap {cap}")]
    CapExceeded { degree: u32, cap: u32 },
    #[error("quotient is not closed under the action: Sq^{k} {monomial} = {image} is nonzero modulo the relations")]
    NotClosed { monomial: String, k: u32, image: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    /// Stiefel–Whitney class `w_m`, degree `m`.
    Real,
    /// Chern class `c_m`, degree `2m`.
    Complex,
}

impl Flavor {
    fn index(self, degree: u32) -> u32 {
        match self {
            Flavor::Real => degree,
            Flavor::Complex => degree / 2,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flavor::Real => "real",
            Flavor::Complex => "complex",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyGenerator {
    pub name: String,
    pub degree: u32,
    pub flavor: Flavor,
}

/// Exponent vector, one entry per generator.
pub type Monomial = Vec<u32>;

/// A polynomial over GF(2): the set of monomials with coefficient 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeSet<Monomial>);

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn monomial(m: Monomial) -> Self {
        Poly([m].into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_monomial(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for m in &other.0 {
            self.add_monomial(m.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.add_monomial(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }
}

#[derive(Clone)]
pub struct PolyModule {
    name: String,
    generators: Vec<PolyGenerator>,
    relations: Vec<Monomial>,
    degree_cap: u32,
    cache: Arc<Mutex<HashMap<(u32, Monomial), Poly>>>,
}

impl fmt::Debug for PolyModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolyModule")
            .field("name", &self.name)
            .field("generators", &self.generators)
            .field("relations", &self.relations)
            .field("degree_cap", &self.degree_cap)
            .finish()
    }
}

impl PolyModule {
    pub fn new(name: &str, generators: Vec<PolyGenerator>, degree_cap: u32) -> Result<Self, UnstableError> {
        for g in &generators {
            if g.degree == 0 || (g.flavor == Flavor::Complex && g.degree % 2 == 1) {
                return Err(UnstableError::Invalid(format!(
                    "{} class {} cannot have degree {}",
                    g.flavor, g.name, g.degree
                )));
            }
        }
        let mut names = BTreeSet::new();
        for g in &generators {
            if !names.insert(g.name.as_str()) {
                return Err(UnstableError::Invalid(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(PolyModule {
            name: name.to_string(),
            generators,
            relations: Vec::new(),
            degree_cap,
            cache: Arc::default(),
        })
    }

    /// Adds a monomial relation, e.g. `"w2^3"`.
    pub fn with_relation(mut self, monomial: &str) -> Result<Self, UnstableError> {
        let m = self.parse_monomial(monomial)?;
        self.relations.push(m);
        Ok(self)
    }

    pub fn with_cap(mut self, cap: u32) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[PolyGenerator] {
        &self.generators
    }

    pub fn relations(&self) -> &[Monomial] {
        &self.relations
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    pub fn generator(&self, i: usize) -> Monomial {
        let mut m = vec![0; self.generators.len()];
        m[i] = 1;
        m
    }

    /// Parses `w2^2w3`, `w2^2 w3` or `w2^2*w3`; `1` is the unit.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial, UnstableError> {
        let mut m = vec![0; self.generators.len()];
        let compact: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if compact == "1" {
            return Ok(m);
        }
        let mut rest = compact.as_str();
        if rest.is_empty() {
            return Err(UnstableError::UnknownMonomial(text.to_string()));
        }
        while !rest.is_empty() {
            // longest generator name that prefixes the rest
            let (i, g) = self
                .generators
                .iter()
                .enumerate()
                .filter(|(_, g)| rest.starts_with(g.name.as_str()))
                .max_by_key(|(_, g)| g.name.len())
                .ok_or_else(|| UnstableError::UnknownMonomial(text.to_string()))?;
            rest = &rest[g.name.len()..];
            let mut e = 1;
            if let Some(after) = rest.strip_prefix('^') {
                let digits: String = after.chars().take_while(char::is_ascii_digit).collect();
                e = digits.parse().map_err(|_| UnstableError::UnknownMonomial(text.to_string()))?;
                rest = &after[digits.len()..];
            }
            m[i] += e;
        }
        Ok(m)
    }

    pub fn format_monomial(&self, m: &[u32]) -> String {
        let mut out = String::new();
        for (e, g) in m.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => out.push_str(&g.name),
                e => out.push_str(&format!("{}^{e}", g.name)),
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        // highest powers of the first generators first
        let mut terms: Vec<&Monomial> = p.0.iter().collect();
        terms.sort_by(|a, b| b.cmp(a));
        terms.iter().map(|m| self.format_monomial(m)).collect::<Vec<_>>().join(" + ")
    }

    /// Divisible by some relation.
    pub fn in_ideal(&self, m: &[u32]) -> bool {
        self.relations.iter().any(|r| r.iter().zip(m).all(|(a, b)| a <= b))
    }

    pub fn reduce(&self, p: &Poly) -> Poly {
        Poly(p.0.iter().filter(|m| !self.in_ideal(m)).cloned().collect())
    }

    /// `Sq^r` on a monomial of degree at most the cap (computed in the
    /// polynomial ring, before any quotient).
    pub fn wu_action(&self, r: u32, m: &[u32]) -> Result<Poly, UnstableError> {
        let degree = self.degree(m);
        if degree > self.degree_cap {
            return Err(UnstableError::CapExceeded {
                degree,
                cap: self.degree_cap,
            });
        }
        Ok(self.square(r, m))
    }

    fn square(&self, r: u32, m: &[u32]) -> Poly {
        if r == 0 {
            return Poly::monomial(m.to_vec());
        }
        let degree = self.degree(m);
        if r > degree {
            return Poly::zero();
        }
        let key = (r, m.to_vec());
        if let Some(p) = self.cache.lock().expect("cache poisoned").get(&key) {
            return p.clone();
        }
        let Some(first) = m.iter().position(|&e| e > 0) else {
            return Poly::zero();
        };
        let g = self.generator(first);
        let result = if m.iter().sum::<u32>() == 1 {
            self.square_generator(r, first)
        } else {
            // Cartan: Sq^r(g * rest) = sum Sq^a g * Sq^{r-a} rest
            let mut rest = m.to_vec();
            rest[first] -= 1;
            let mut out = Poly::zero();
            for a in 0..=r.min(self.generators[first].degree) {
                let left = self.square(a, &g);
                if left.is_zero() {
                    continue;
                }
                let right = self.square(r - a, &rest);
                out.add_assign(&left.mul(&right));
            }
            out
        };
        self.cache.lock().expect("cache poisoned").entry(key).or_insert(result).clone()
    }

    /// The class of the given flavor and index, `None` when it is zero.
    fn class(&self, flavor: Flavor, index: u32) -> Option<Monomial> {
        if index == 0 {
            return Some(vec![0; self.generators.len()]);
        }
        self.generators
            .iter()
            .position(|g| g.flavor == flavor && flavor.index(g.degree) == index)
            .map(|i| self.generator(i))
    }

    fn square_generator(&self, r: u32, i: usize) -> Poly {
        let g = &self.generators[i];
        let r = match g.flavor {
            Flavor::Real => r,
            Flavor::Complex if r % 2 == 1 => return Poly::zero(),
            Flavor::Complex => r / 2,
        };
        let m = g.flavor.index(g.degree);
        let mut out = Poly::zero();
        for j in 0..=r {
            if !negative_binomial_mod2(r as i64 - m as i64, j as u64) {
                continue;
            }
            if let (Some(a), Some(b)) = (self.class(g.flavor, r - j), self.class(g.flavor, m + j)) {
                out.add_monomial(a.iter().zip(&b).map(|(x, y)| x + y).collect());
            }
        }
        out
    }

    /// Monomials of degree `1..=cap` outside the relation ideal, by degree
    /// and then with higher powers of earlier generators first.
    pub fn quotient_basis(&self, cap: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self.monomials_up_to(cap).into_iter().filter(|m| !self.in_ideal(m)).collect();
        out.sort_by(|a, b| self.degree(a).cmp(&self.degree(b)).then(b.cmp(a)));
        out
    }

    fn monomials_up_to(&self, cap: u32) -> Vec<Monomial> {
        let mut out = vec![vec![]];
        for g in &self.generators {
            out = out
                .into_iter()
                .flat_map(|m: Monomial| {
                    let used: u32 = m.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum();
                    (0..=(cap - used) / g.degree).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        out.retain(|m| self.degree(m) > 0);
        out
    }
}

/// `binom(n, k)` mod 2 for any integer `n`, with
/// `binom(-a, k) = binom(a + k - 1, k)`.
pub fn negative_binomial_mod2(n: i64, k: u64) -> bool {
    if n >= 0 {
        binomial_mod2(n as u64, k)
    } else {
        binomial_mod2((-n) as u64 + k - 1, k)
    }
}

/// The reduced quotient in degrees `1..=cap` as a module over `spec`, with
/// every `Sq^k` of `spec` tabulated from the Wu formula. Fails if the
/// relations are not closed under the action inside the cap, or if the
/// tables do not define a module.
pub fn truncate_quotient(p: &PolyModule, spec: SubalgebraSpec, cap: u32) -> Result<FiniteModule, UnstableError> {
    let p = p.clone().with_cap(cap.max(p.degree_cap));
    for m in p.monomials_up_to(cap) {
        if !p.in_ideal(&m) {
            continue;
        }
        for k in 1..=cap - p.degree(&m) {
            let image = p.reduce(&p.square(k, &m));
            if !image.is_zero() {
                return Err(UnstableError::NotClosed {
                    monomial: p.format_monomial(&m),
                    k,
                    image: p.format_poly(&image),
                });
            }
        }
    }
    let basis = p.quotient_basis(cap);
    let names: Vec<String> = basis.iter().map(|m| p.format_monomial(m)).collect();
    let classes: Vec<(&str, i32)> = basis
        .iter()
        .zip(&names)
        .map(|(m, n)| (n.as_str(), p.degree(m) as i32))
        .collect();
    let mut entries = Vec::new();
    for (m, name) in basis.iter().zip(&names) {
        for k in 1..=cap - p.degree(m) {
            if !spec.contains_sq(k) {
                continue;
            }
            let image = p.reduce(&p.square(k, m));
            if image.is_zero() {
                continue;
            }
            let targets: Vec<String> = image.0.iter().map(|t| p.format_monomial(t)).collect();
            entries.push((k, name.clone(), targets));
        }
    }
    let relations: Vec<String> = p.relations.iter().map(|r| p.format_monomial(r)).collect();
    let title = format!("{}/({}) to degree {cap}", p.name, relations.join(", "));
    let owned: Vec<(u32, &str, Vec<&str>)> = entries
        .iter()
        .map(|(k, s, t)| (*k, s.as_str(), t.iter().map(String::as_str).collect()))
        .collect();
    let module = FiniteModule::from_tables(&title, spec, &classes, &owned)?;
    Ok(module.validated()?)
}

/// `H^*(BSO(3)) = F2[w2, w3]` with `w2^3` killed.
pub fn bso3() -> PolyModule {
    PolyModule::new(
        "F2[w2,w3]",
        vec![
            PolyGenerator { name: "w2".into(), degree: 2, flavor: Flavor::Real },
            PolyGenerator { name: "w3".into(), degree: 3, flavor: Flavor::Real },
        ],
        6,
    )
    .and_then(|p| p.with_relation("w2^3"))
    .expect("fixed presentation")
}

/// `H^*(BSU(3)) = F2[c2, c3]` with `c2^3` killed.
pub fn bsu3() -> PolyModule {
    PolyModule::new(
        "F2[c2,c3]",
        vec![
            PolyGenerator { name: "c2".into(), degree: 4, flavor: Flavor::Complex },
            PolyGenerator { name: "c3".into(), degree: 6, flavor: Flavor::Complex },
        ],
        12,
    )
    .and_then(|p| p.with_relation("c2^3"))
    .expect("fixed presentation")
}

/// Parses
///
/// ```text
/// module bso3
/// polygen w2 2 real
/// polygen w3 3 real
/// rel w2^3
/// cap 6
/// ```
pub fn parse_poly_module(text: &str) -> Result<PolyModule, UnstableError> {
    let mut name = String::from("poly");
    let mut gens = Vec::new();
    let mut rels: Vec<(usize, String)> = Vec::new();
    let mut cap = None;
    let err = |line: usize, message: String| UnstableError::Parse { line, message };
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        let words: Vec<&str> = content.split_whitespace().collect();
        match words.as_slice() {
            [] => {}
            ["module", rest @ ..] if !rest.is_empty() => name = rest[0].to_string(),
            ["polygen", g, d, flavor] => {
                let degree = d.parse().map_err(|_| err(line, format!("bad degree `{d}`")))?;
                let flavor = match *flavor {
                    "real" => Flavor::Real,
                    "complex" => Flavor::Complex,
                    other => return Err(err(line, format!("flavor must be real or complex, not `{other}`"))),
                };
                gens.push(PolyGenerator { name: g.to_string(), degree, flavor });
            }
            ["rel", ..] => rels.push((line, content["rel".len()..].trim().to_string())),
            ["cap", c] => cap = Some(c.parse().map_err(|_| err(line, format!("bad cap `{c}`")))?),
            _ => return Err(err(line, format!("cannot parse `{content}`"))),
        }
    }
    let mut p = PolyModule::new(&name, gens, cap.unwrap_or(32))?;
    for (line, r) in rels {
        p = p.with_relation(&r).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_binomials() {
        // binom(-1, i) = 1, binom(-2, i) = i + 1
        assert!((0..6).all(|i| negative_binomial_mod2(-1, i)));
        assert_eq!((0..4).map(|i| negative_binomial_mod2(-2, i)).collect::<Vec<_>>(), [true, false, true, false]);
        assert!(negative_binomial_mod2(3, 1));
        assert!(!negative_binomial_mod2(2, 1));
    }

    #[test]
    fn monomial_round_trip() {
        let p = bso3();
        for text in ["w2", "w2^2w3", "w3^2", "1"] {
            assert_eq!(p.format_monomial(&p.parse_monomial(text).unwrap()), text);
        }
        assert_eq!(p.parse_monomial("w2 * w3").unwrap(), vec![1, 1]);
        assert!(p.parse_monomial("w4").is_err());
    }

    #[test]
    fn parse_file() {
        let p = parse_poly_module("module bso3\npolygen w2 2 real\npolygen w3 3 real\nrel w2^3 # kill\ncap 6\n").unwrap();
        assert_eq!(p.relations(), &[vec![3, 0]]);
        assert_eq!(p.degree_cap(), 6);
        assert!(matches!(
            parse_poly_module("polygen w2 2 imaginary"),
            Err(UnstableError::Parse { line: 1, .. })
        ));
    }
}
