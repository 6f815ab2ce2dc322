//! Milnor's product formula and the coproduct on the Milnor basis.

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use super::{AlgebraElement, MilnorMonomial};

type ProductCache = HashMap<(MilnorMonomial, MilnorMonomial), Arc<Vec<MilnorMonomial>>>;

static PRODUCTS: LazyLock<RwLock<ProductCache>> = LazyLock::new(Default::default);

/// Product of two basis elements as a list of distinct monomials.
///
/// Enumerates the matrices `(x_{ij})` with `sum_j 2^j x_{ij} = r_i` and
/// `sum_i x_{ij} = s_j`; each contributes `Sq(t_1, t_2, ...)` with
/// `t_n = sum_{i+j=n} x_{ij}` when every diagonal multinomial is odd.
pub fn monomial_product(a: &MilnorMonomial, b: &MilnorMonomial) -> Arc<Vec<MilnorMonomial>> {
    if a.is_unit() {
        return Arc::new(vec![b.clone()]);
    }
    if b.is_unit() {
        return Arc::new(vec![a.clone()]);
    }
    let key = (a.clone(), b.clone());
    if let Some(hit) = PRODUCTS.read().expect("product cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let result = Arc::new(compute_product(a.exponents(), b.exponents()));
    PRODUCTS
        .write()
        .expect("product cache poisoned")
        .entry(key)
        .or_insert_with(|| Arc::clone(&result));
    result
}

/// Same as [`monomial_product`] but bypasses the shared cache; for bulk
/// one-off checks that would otherwise bloat it.
pub fn monomial_product_uncached(a: &MilnorMonomial, b: &MilnorMonomial) -> Vec<MilnorMonomial> {
    compute_product(a.exponents(), b.exponents())
}

fn compute_product(r: &[u32], s: &[u32]) -> Vec<MilnorMonomial> {
    let rows = r.len();
    let cols = s.len();
    let mut search = MatrixSearch {
        rows,
        cols,
        x: vec![vec![0u32; cols + 1]; rows + 1],
        row_left: r.to_vec(),
        col_left: s.to_vec(),
        found: HashMap::new(),
    };
    search.cell(1, 1);
    let mut out: Vec<MilnorMonomial> = search
        .found
        .into_iter()
        .filter_map(|(t, odd)| odd.then(|| MilnorMonomial::new(t)))
        .collect();
    out.sort();
    out
}

struct MatrixSearch {
    rows: usize,
    cols: usize,
    x: Vec<Vec<u32>>,
    // r_i - sum_j 2^j x_{ij} so far (index i-1)
    row_left: Vec<u32>,
    // s_j - sum_i x_{ij} so far (index j-1)
    col_left: Vec<u32>,
    found: HashMap<Vec<u32>, bool>,
}

impl MatrixSearch {
    fn cell(&mut self, i: usize, j: usize) {
        if i > self.rows {
            self.finish();
            return;
        }
        if j > self.cols {
            self.x[i][0] = self.row_left[i - 1];
            self.cell(i + 1, 1);
            return;
        }
        let weight = 1u32 << j;
        let max = (self.row_left[i - 1] / weight).min(self.col_left[j - 1]);
        for v in 0..=max {
            self.x[i][j] = v;
            self.row_left[i - 1] -= v * weight;
            self.col_left[j - 1] -= v;
            self.cell(i, j + 1);
            self.row_left[i - 1] += v * weight;
            self.col_left[j - 1] += v;
        }
        self.x[i][j] = 0;
    }

    fn finish(&mut self) {
        for j in 1..=self.cols {
            self.x[0][j] = self.col_left[j - 1];
        }
        let diags = self.rows + self.cols;
        let mut t = vec![0u32; diags];
        for (n, slot) in t.iter_mut().enumerate() {
            let n = n + 1;
            let mut bits = 0u32;
            for i in 0..=n.min(self.rows) {
                let j = n - i;
                if j > self.cols {
                    continue;
                }
                let v = self.x[i][j];
                if bits & v != 0 {
                    return;
                }
                bits |= v;
            }
            *slot = bits;
        }
        let entry = self.found.entry(t).or_insert(false);
        *entry = !*entry;
    }
}

/// Bilinear extension of the Milnor product.
pub fn milnor_product(a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for x in a.terms() {
        for y in b.terms() {
            for t in monomial_product(x, y).iter() {
                out.add_monomial(t.clone());
            }
        }
    }
    out
}

/// `Sq^{k_1} Sq^{k_2} ...` in the Milnor basis; the empty word is the unit.
pub fn sq_word(ks: &[u32]) -> AlgebraElement {
    let mut out = AlgebraElement::one();
    for &k in ks.iter().rev() {
        out = milnor_product(&AlgebraElement::sq(k), &out);
    }
    out
}

/// `psi Sq(R) = sum_{R' + R'' = R} Sq(R') (x) Sq(R'')`.
pub fn coproduct(m: &MilnorMonomial) -> Vec<(MilnorMonomial, MilnorMonomial)> {
    let exps = m.exponents();
    let mut out = Vec::new();
    let mut left = vec![0u32; exps.len()];
    loop {
        let right: Vec<u32> = exps.iter().zip(&left).map(|(r, l)| r - l).collect();
        out.push((MilnorMonomial::new(left.clone()), MilnorMonomial::new(right)));
        // odometer over 0..=r_i
        let mut i = 0;
        loop {
            if i == exps.len() {
                return out;
            }
            if left[i] < exps[i] {
                left[i] += 1;
                break;
            }
            left[i] = 0;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sq(e: &[u32]) -> AlgebraElement {
        MilnorMonomial::new(e.to_vec()).into()
    }

    #[test]
    fn small_products() {
        assert_eq!(milnor_product(&sq(&[1]), &sq(&[2])), sq(&[3]));
        assert_eq!(milnor_product(&sq(&[2]), &sq(&[2])), sq(&[1, 1]));
        assert_eq!(milnor_product(&sq(&[1]), &sq(&[1])), AlgebraElement::zero());
        assert_eq!(milnor_product(&AlgebraElement::one(), &sq(&[2, 1])), sq(&[2, 1]));
        // Sq^2 Sq^1 = Sq(3) + Sq(0,1)
        assert_eq!(
            milnor_product(&sq(&[2]), &sq(&[1])),
            &sq(&[3]) + &sq(&[0, 1])
        );
    }

    #[test]
    fn words() {
        assert_eq!(sq_word(&[1, 2]), sq(&[3]));
        assert_eq!(sq_word(&[]), AlgebraElement::one());
        assert_eq!(sq_word(&[1, 2, 1]), sq(&[1, 1]));
    }

    #[test]
    fn coproduct_splittings() {
        let c = coproduct(&MilnorMonomial::sq(2));
        assert_eq!(c.len(), 3);
        assert!(c.contains(&(MilnorMonomial::unit(), MilnorMonomial::sq(2))));
        assert!(c.contains(&(MilnorMonomial::sq(1), MilnorMonomial::sq(1))));
        assert!(c.contains(&(MilnorMonomial::sq(2), MilnorMonomial::unit())));
        let q1 = MilnorMonomial::new(vec![0, 1]);
        let c = coproduct(&q1);
        assert_eq!(c, vec![(MilnorMonomial::unit(), q1.clone()), (q1, MilnorMonomial::unit())]);
        assert_eq!(coproduct(&MilnorMonomial::unit()), vec![(MilnorMonomial::unit(), MilnorMonomial::unit())]);
        assert_eq!(coproduct(&MilnorMonomial::new(vec![2, 3])).len(), 12);
    }
}
