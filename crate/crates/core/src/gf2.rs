//! Dense bit-packed linear algebra over GF(2).
//!
//! Vectors are packed 64 entries per word. Matrices are stored as a list of
//! row vectors; all reductions operate on rows.

use std::fmt;

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Vector {
    len: usize,
    words: Vec<u64>,
}

impl F2Vector {
    pub fn zero(len: usize) -> Self {
        F2Vector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zero(len);
        v.set(index, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zero(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// `self += other`.
    pub fn add_assign(&mut self, other: &F2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &F2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    pub fn first_one(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * WORD + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let tz = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * WORD + tz)
                }
            })
        })
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &F2Vector) -> F2Vector {
        let mut v = F2Vector::zero(self.len + other.len);
        for i in self.ones() {
            v.set(i, true);
        }
        for i in other.ones() {
            v.set(self.len + i, true);
        }
        v
    }

    /// Entries `[start, start + len)` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> F2Vector {
        let mut v = F2Vector::zero(len);
        for i in self.ones() {
            if i >= start && i < start + len {
                v.set(i - start, true);
            }
        }
        v
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        write!(f, "]")
    }
}

/// Row-major GF(2) matrix with a fixed number of columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Matrix {
    columns: usize,
    rows: Vec<F2Vector>,
}

impl F2Matrix {
    pub fn new(columns: usize) -> Self {
        F2Matrix {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn from_rows(columns: usize, rows: Vec<F2Vector>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), columns, "row length mismatch");
        }
        F2Matrix { columns, rows }
    }

    pub fn identity(n: usize) -> Self {
        F2Matrix {
            columns: n,
            rows: (0..n).map(|i| F2Vector::unit(n, i)).collect(),
        }
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &F2Vector {
        &self.rows[i]
    }

    pub fn push(&mut self, row: F2Vector) {
        assert_eq!(row.len(), self.columns, "row length mismatch");
        self.rows.push(row);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    /// `v · self`, treating `v` as a row vector indexed by rows.
    pub fn apply_row(&self, v: &F2Vector) -> F2Vector {
        assert_eq!(v.len(), self.rows.len(), "vector length mismatch");
        let mut out = F2Vector::zero(self.columns);
        for i in v.ones() {
            out.add_assign(&self.rows[i]);
        }
        out
    }

    /// Product `self · other` (rows of `self` combine rows of `other`).
    pub fn mul(&self, other: &F2Matrix) -> F2Matrix {
        assert_eq!(self.columns, other.rows.len(), "dimension mismatch");
        F2Matrix {
            columns: other.columns,
            rows: self.rows.iter().map(|r| other.apply_row(r)).collect(),
        }
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut out: Vec<F2Vector> = (0..self.columns)
            .map(|_| F2Vector::zero(self.rows.len()))
            .collect();
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.ones() {
                out[j].set(i, true);
            }
        }
        F2Matrix {
            columns: self.rows.len(),
            rows: out,
        }
    }

    pub fn rank(&self) -> usize {
        Echelon::from_rows(self.columns, self.rows.iter().cloned()).rank()
    }

    /// Basis of the left kernel `{v : v · self = 0}`.
    pub fn left_kernel(&self) -> Vec<F2Vector> {
        let n = self.rows.len();
        let augmented = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&F2Vector::unit(n, i)));
        let ech = Echelon::from_rows(self.columns + n, augmented);
        ech.rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(_, &p)| p >= self.columns)
            .map(|(r, _)| r.slice(self.columns, n))
            .collect()
    }

    pub fn inverse(&self) -> Option<F2Matrix> {
        let n = self.rows.len();
        if n != self.columns {
            return None;
        }
        let augmented = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| r.concat(&F2Vector::unit(n, i)));
        let mut ech = Echelon::from_rows(2 * n, augmented);
        if ech.rank() != n || ech.pivots.iter().any(|&p| p >= n) {
            return None;
        }
        ech.fully_reduce();
        let mut rows = vec![F2Vector::zero(n); n];
        for (r, &p) in ech.rows.iter().zip(&ech.pivots) {
            rows[p] = r.slice(n, n);
        }
        Some(F2Matrix { columns: n, rows })
    }
}

/// Incrementally maintained row echelon form.
///
/// Each stored row has a distinct pivot (its first nonzero column) and no
/// other stored row has a nonzero entry in a row's pivot column once
/// [`Echelon::fully_reduce`] has run. Insertion keeps rows reduced against
/// earlier pivots only.
#[derive(Clone, Debug)]
pub struct Echelon {
    columns: usize,
    rows: Vec<F2Vector>,
    pivots: Vec<usize>,
    pivot_of_column: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(columns: usize) -> Self {
        Echelon {
            columns,
            rows: Vec::new(),
            pivots: Vec::new(),
            pivot_of_column: vec![None; columns],
        }
    }

    pub fn from_rows(columns: usize, rows: impl IntoIterator<Item = F2Vector>) -> Self {
        let mut e = Echelon::new(columns);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[F2Vector] {
        &self.rows
    }

    pub fn is_pivot(&self, column: usize) -> bool {
        self.pivot_of_column[column].is_some()
    }

    /// Reduces `v` completely: no entry in any pivot column survives.
    pub fn reduce_fully(&self, v: &mut F2Vector) {
        loop {
            let hit = v.ones().find_map(|c| self.pivot_of_column[c]);
            match hit {
                Some(r) => v.add_assign(&self.rows[r]),
                None => return,
            }
        }
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        let mut w = v.clone();
        self.reduce_fully(&mut w);
        w.is_zero()
    }

    /// Inserts a row; returns `true` when it increased the rank.
    pub fn insert(&mut self, mut v: F2Vector) -> bool {
        assert_eq!(v.len(), self.columns, "row length mismatch");
        self.reduce_fully(&mut v);
        match v.first_one() {
            None => false,
            Some(p) => {
                self.pivot_of_column[p] = Some(self.rows.len());
                self.pivots.push(p);
                self.rows.push(v);
                true
            }
        }
    }

    /// Clears every pivot column in every other row.
    pub fn fully_reduce(&mut self) {
        for i in 0..self.rows.len() {
            let p = self.pivots[i];
            let pivot_row = self.rows[i].clone();
            for j in 0..self.rows.len() {
                if j != i && self.rows[j].get(p) {
                    self.rows[j].add_assign(&pivot_row);
                }
            }
        }
    }

    /// Columns that carry no pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.columns)
            .filter(|&c| self.pivot_of_column[c].is_none())
            .collect()
    }
}

/// Writes `target` as a combination of `rows` (returning row coefficients),
/// or `None` if it is not in their span.
pub fn solve(columns: usize, rows: &[F2Vector], target: &F2Vector) -> Option<F2Vector> {
    let n = rows.len();
    let augmented = rows
        .iter()
        .enumerate()
        .map(|(i, r)| r.concat(&F2Vector::unit(n, i)));
    let ech = Echelon::from_rows(columns + n, augmented);
    let mut t = target.concat(&F2Vector::zero(n));
    // only pivots inside the first `columns` entries express `target`
    loop {
        let hit = t
            .ones()
            .take_while(|&c| c < columns)
            .find_map(|c| ech.pivot_of_column[c]);
        match hit {
            Some(r) => t.add_assign(&ech.rows[r]),
            None => break,
        }
    }
    if t.ones().any(|c| c < columns) {
        None
    } else {
        Some(t.slice(columns, n))
    }
}
