//! Admissible Sq-words and generator-word bases, both obtained from the
//! Milnor basis by per-degree linear algebra.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, LazyLock, RwLock};

use super::basis::enumerate_basis;
use super::product::{milnor_product, sq_word};
use super::{degree_cap, AlgebraElement, AlgebraError, MilnorMonomial, SubalgebraSpec};
use crate::gf2::{Echelon, F2Matrix, F2Vector};

/// A word `Sq^{k_1} Sq^{k_2} ... Sq^{k_m}` with every `k_i >= 1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissibleWord(pub Vec<u32>);

impl AdmissibleWord {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn evaluate(&self) -> AlgebraElement {
        sq_word(&self.0)
    }
}

impl fmt::Display for AdmissibleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|k| format!("Sq^{k}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for AdmissibleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `k_i >= 2 k_{i+1}` and no zero entries.
pub fn is_admissible(ks: &[u32]) -> bool {
    ks.iter().all(|&k| k > 0) && ks.windows(2).all(|w| w[0] >= 2 * w[1])
}

fn admissible_words(d: u32, max_first: u32, prefix: &mut Vec<u32>, out: &mut Vec<AdmissibleWord>) {
    if d == 0 {
        out.push(AdmissibleWord(prefix.clone()));
        return;
    }
    for k in 1..=d.min(max_first) {
        prefix.push(k);
        admissible_words(d - k, k / 2, prefix, out);
        prefix.pop();
    }
}

/// Change of basis data for one degree: admissible words and Milnor monomials.
struct AdmissibleDegree {
    words: Vec<AdmissibleWord>,
    milnor_index: HashMap<MilnorMonomial, usize>,
    // rows: Milnor coordinates -> admissible coordinates
    inverse: F2Matrix,
}

static ADMISSIBLE: LazyLock<RwLock<HashMap<u32, Arc<AdmissibleDegree>>>> = LazyLock::new(Default::default);

fn admissible_degree(d: u32) -> Result<Arc<AdmissibleDegree>, AlgebraError> {
    let cap = degree_cap();
    if d > cap {
        return Err(AlgebraError::DegreeCap { degree: d, cap });
    }
    if let Some(hit) = ADMISSIBLE.read().expect("admissible cache poisoned").get(&d) {
        return Ok(Arc::clone(hit));
    }
    let spec = SubalgebraSpec::FullA { degree_cap: cap };
    let milnor = enumerate_basis(&spec, d)?;
    let milnor_index: HashMap<MilnorMonomial, usize> =
        milnor.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut words = Vec::new();
    admissible_words(d, d, &mut Vec::new(), &mut words);
    let rows = words
        .iter()
        .map(|w| {
            let e = w.evaluate();
            F2Vector::from_indices(milnor.len(), e.terms().map(|m| milnor_index[m]))
        })
        .collect();
    let inverse = F2Matrix::from_rows(milnor.len(), rows)
        .inverse()
        .expect("admissible words form a basis");
    let entry = Arc::new(AdmissibleDegree {
        words,
        milnor_index,
        inverse,
    });
    ADMISSIBLE
        .write()
        .expect("admissible cache poisoned")
        .entry(d)
        .or_insert_with(|| Arc::clone(&entry));
    Ok(entry)
}

/// Writes a homogeneous element as a sum of admissible words.
pub fn to_admissible(a: &AlgebraElement) -> Result<Vec<AdmissibleWord>, AlgebraError> {
    if a.is_zero() {
        return Ok(Vec::new());
    }
    let d = a.degree().ok_or(AlgebraError::NotHomogeneous)?;
    let data = admissible_degree(d)?;
    let v = F2Vector::from_indices(data.words.len(), a.terms().map(|m| data.milnor_index[m]));
    let coords = data.inverse.apply_row(&v);
    Ok(coords.ones().map(|i| data.words[i].clone()).collect())
}

/// A basis of one degree of a subalgebra made of words in its algebra
/// generators `Sq^{2^i}`, with the inverse change of basis.
///
/// Unlike admissible words, these stay inside `A(n)`, so module actions can
/// be evaluated one generator at a time.
pub struct WordBasis {
    pub spec: SubalgebraSpec,
    pub degree: u32,
    /// Each word lists `Sq^k` exponents, leftmost factor first.
    pub words: Vec<Vec<u32>>,
    pub milnor: Arc<Vec<MilnorMonomial>>,
    milnor_index: HashMap<MilnorMonomial, usize>,
    expansions: Vec<AlgebraElement>,
    inverse: F2Matrix,
}

impl WordBasis {
    pub fn milnor_coordinates(&self, a: &AlgebraElement) -> Result<F2Vector, AlgebraError> {
        let mut v = F2Vector::zero(self.milnor.len());
        for m in a.terms() {
            let i = self.milnor_index.get(m).ok_or_else(|| AlgebraError::NotInAlgebra {
                element: m.to_string(),
                algebra: self.spec.to_string(),
            })?;
            v.flip(*i);
        }
        Ok(v)
    }

    /// Indices of the words summing to `a`.
    pub fn express(&self, a: &AlgebraElement) -> Result<Vec<usize>, AlgebraError> {
        let v = self.milnor_coordinates(a)?;
        Ok(self.inverse.apply_row(&v).ones().collect())
    }

    pub fn expansion(&self, word: usize) -> &AlgebraElement {
        &self.expansions[word]
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

static WORD_BASES: LazyLock<RwLock<HashMap<(SubalgebraSpec, u32), Arc<WordBasis>>>> =
    LazyLock::new(Default::default);

/// Generator-word basis of `spec` in degree `d`. Built greedily from
/// `Sq^{2^i} * w` over basis words `w` of lower degree; cached.
pub fn word_basis(spec: &SubalgebraSpec, d: u32) -> Result<Arc<WordBasis>, AlgebraError> {
    spec.check_degree(d)?;
    if let Some(hit) = WORD_BASES.read().expect("word basis cache poisoned").get(&(*spec, d)) {
        return Ok(Arc::clone(hit));
    }
    let milnor = enumerate_basis(spec, d)?;
    let milnor_index: HashMap<MilnorMonomial, usize> =
        milnor.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut words = Vec::new();
    let mut expansions = Vec::new();
    let mut rows = Vec::new();
    if d == 0 {
        words.push(Vec::new());
        expansions.push(AlgebraElement::one());
        rows.push(F2Vector::unit(1, 0));
    } else {
        let mut echelon = Echelon::new(milnor.len());
        'outer: for i in spec.generator_exponents(d) {
            let g = 1u32 << i;
            let lower = word_basis(spec, d - g)?;
            let gen = AlgebraElement::sq(g);
            for (w, e) in lower.words.iter().zip(&lower.expansions) {
                let product = milnor_product(&gen, e);
                let row = F2Vector::from_indices(milnor.len(), product.terms().map(|m| milnor_index[m]));
                if echelon.insert(row.clone()) {
                    let mut word = vec![g];
                    word.extend_from_slice(w);
                    words.push(word);
                    expansions.push(product);
                    rows.push(row);
                    if rows.len() == milnor.len() {
                        break 'outer;
                    }
                }
            }
        }
    }
    assert_eq!(rows.len(), milnor.len(), "generator words must span {spec} in degree {d}");
    let inverse = F2Matrix::from_rows(milnor.len(), rows)
        .inverse()
        .expect("independent words form a basis");
    let entry = Arc::new(WordBasis {
        spec: *spec,
        degree: d,
        words,
        milnor,
        milnor_index,
        expansions,
        inverse,
    });
    WORD_BASES
        .write()
        .expect("word basis cache poisoned")
        .entry((*spec, d))
        .or_insert_with(|| Arc::clone(&entry));
    Ok(entry)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> AlgebraElement {
        MilnorMonomial::new(e.to_vec()).into()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(&[4, 2, 1]));
        assert!(is_admissible(&[]));
        assert!(!is_admissible(&[2, 2]));
        assert!(!is_admissible(&[3, 0]));
    }

    #[test]
    fn small_conversions() {
        assert_eq!(to_admissible(&m(&[3])).unwrap(), vec![AdmissibleWord(vec![3])]);
        assert_eq!(to_admissible(&m(&[1, 1])).unwrap(), vec![AdmissibleWord(vec![3, 1])]);
        let mut q1 = to_admissible(&m(&[0, 1])).unwrap();
        q1.sort();
        assert_eq!(q1, vec![AdmissibleWord(vec![2, 1]), AdmissibleWord(vec![3])]);
        assert!(to_admissible(&AlgebraElement::zero()).unwrap().is_empty());
        assert_eq!(to_admissible(&AlgebraElement::one()).unwrap(), vec![AdmissibleWord(vec![])]);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let a = &m(&[1]) + &m(&[2]);
        assert_eq!(to_admissible(&a), Err(AlgebraError::NotHomogeneous));
    }

    #[test]
    fn word_basis_spans_subalgebras() {
        for n in 0..=2 {
            let spec = SubalgebraSpec::An(n);
            for d in 0..=spec.top_degree().unwrap() {
                let wb = word_basis(&spec, d).unwrap();
                assert_eq!(wb.len(), wb.milnor.len());
                for (i, w) in wb.words.iter().enumerate() {
                    assert!(w.iter().all(|k| k.is_power_of_two() && spec.contains_sq(*k)));
                    assert_eq!(&sq_word(w), wb.expansion(i));
                }
                for (j, b) in wb.milnor.iter().enumerate() {
                    let idx = wb.express(&b.clone().into()).unwrap();
                    let sum = AlgebraElement::from_terms(
                        idx.iter().flat_map(|&i| wb.expansion(i).terms().cloned().collect::<Vec<_>>()),
                    );
                    assert_eq!(sum, b.clone().into(), "basis element {j} in degree {d}");
                }
            }
        }
    }

    #[test]
    fn word_basis_rejects_outside_elements() {
        let wb = word_basis(&SubalgebraSpec::An(1), 4).unwrap();
        assert!(matches!(
            wb.express(&AlgebraElement::sq(4)),
            Err(AlgebraError::NotInAlgebra { .. })
        ));
    }
}
