//! Dense bit-packed GF(2) linear algebra.
//!
//! Rows are vectors over GF(2) packed into `u64` words. This is the engine
//! behind stabilizer-group membership, rank checks, group intersections and
//! the symplectic bookkeeping in [`crate::pauli`].

/// A single GF(2) row vector of fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Parity of the AND of two vectors (the GF(2) inner product).
    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (a, b) in self.words.iter().zip(other.words.iter()) {
            acc ^= (a & b).count_ones() & 1;
        }
        acc & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    fn leading_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }
}

/// A list of GF(2) rows with shared length, supporting elimination queries.
#[derive(Debug, Clone, Default)]
pub struct BitMatrix {
    pub cols: usize,
    pub rows: Vec<BitVec>,
}

impl BitMatrix {
    pub fn new(cols: usize) -> Self {
        BitMatrix { cols, rows: Vec::new() }
    }

    pub fn push(&mut self, row: BitVec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        Eliminator::from_rows(self.cols, self.rows.iter().cloned()).rank()
    }
}

/// Incremental Gaussian eliminator over GF(2).
///
/// Keeps a row-echelon basis plus, optionally, the combination of input rows
/// that produced each basis row (for expressing solutions in terms of the
/// original generators).
#[derive(Debug, Clone)]
pub struct Eliminator {
    cols: usize,
    /// (pivot column, reduced row, combination over original inputs)
    basis: Vec<(usize, BitVec, BitVec)>,
    n_inputs: usize,
    track: bool,
}

impl Eliminator {
    pub fn new(cols: usize, track_combinations: bool) -> Self {
        Eliminator {
            cols,
            basis: Vec::new(),
            n_inputs: 0,
            track: track_combinations,
        }
    }

    pub fn from_rows<I: IntoIterator<Item = BitVec>>(cols: usize, rows: I) -> Self {
        let mut e = Eliminator::new(cols, false);
        for r in rows {
            e.add_row(&r);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Insert a row; returns true if it increased the rank.
    pub fn add_row(&mut self, row: &BitVec) -> bool {
        let idx = self.n_inputs;
        self.n_inputs += 1;
        let mut r = row.clone();
        let mut comb = if self.track {
            let mut c = BitVec::zeros(idx + 1);
            c.set(idx, true);
            c
        } else {
            BitVec::zeros(0)
        };
        for (pivot, brow, bcomb) in &self.basis {
            if r.get(*pivot) {
                r.xor_assign(brow);
                if self.track {
                    grow_xor(&mut comb, bcomb);
                }
            }
        }
        match r.leading_one() {
            Some(p) => {
                self.basis.push((p, r, comb));
                true
            }
            None => false,
        }
    }

    /// Reduce `row` against the basis; returns the residual and, when
    /// combination tracking is on, the input combination that was subtracted.
    pub fn reduce(&self, row: &BitVec) -> (BitVec, BitVec) {
        let mut r = row.clone();
        let mut comb = BitVec::zeros(self.n_inputs);
        for (pivot, brow, bcomb) in &self.basis {
            if r.get(*pivot) {
                r.xor_assign(brow);
                if self.track {
                    grow_xor(&mut comb, bcomb);
                }
            }
        }
        (r, comb)
    }

    /// Whether `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &BitVec) -> bool {
        self.reduce(row).0.is_zero()
    }

    /// Express `row` as a combination of the inserted rows, if possible.
    pub fn solve(&self, row: &BitVec) -> Option<BitVec> {
        assert!(self.track, "solve requires combination tracking");
        let (res, mut comb) = self.reduce(row);
        if res.is_zero() {
            if comb.len() < self.n_inputs {
                let mut full = BitVec::zeros(self.n_inputs);
                for i in comb.iter_ones() {
                    full.set(i, true);
                }
                comb = full;
            }
            Some(comb)
        } else {
            None
        }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }
}

fn grow_xor(target: &mut BitVec, other: &BitVec) {
    if target.len() < other.len() {
        let mut grown = BitVec::zeros(other.len());
        for i in target.iter_ones() {
            grown.set(i, true);
        }
        *target = grown;
    }
    for i in other.iter_ones() {
        target.set(i, true);
    }
}

/// Basis of the kernel {v : Mv = 0} of an m x n matrix given by rows.
///
/// Columns are fed through an eliminator with combination tracking; each
/// dependent column yields one kernel vector.
pub fn kernel_basis(m: &BitMatrix) -> Vec<BitVec> {
    let nrows = m.rows.len();
    let ncols = m.cols;
    let mut elim = Eliminator::new(nrows, true);
    let mut kernel = Vec::new();
    for c in 0..ncols {
        let mut col = BitVec::zeros(nrows);
        for (r, row) in m.rows.iter().enumerate() {
            if row.get(c) {
                col.set(r, true);
            }
        }
        let (res, comb) = elim.reduce(&col);
        if res.is_zero() {
            let mut k = BitVec::zeros(ncols);
            for i in comb.iter_ones() {
                k.set(i, true);
            }
            k.set(c, true);
            kernel.push(k);
        }
        elim.add_row(&col);
    }
    kernel
}

/// Basis of the intersection of two row spaces, by the kernel method:
/// kernel vectors of the stacked matrix [A; B] restricted to the A-block
/// give exactly the combinations xA with xA = yB.
pub fn row_space_intersection_kernel(a: &BitMatrix, b: &BitMatrix) -> Vec<BitVec> {
    assert_eq!(a.cols, b.cols);
    let na = a.rows.len();
    let nb = b.rows.len();
    // Stack rows of A and B as columns of an augmented system: we eliminate
    // [row | indicator] where the indicator tracks which inputs were combined.
    let mut elim = Eliminator::new(a.cols, true);
    let mut kernel_combos: Vec<BitVec> = Vec::new();
    for row in a.rows.iter().chain(b.rows.iter()) {
        let before = elim.rank();
        let (res, comb) = elim.reduce(row);
        if res.is_zero() {
            // row is dependent: comb (plus itself) is a kernel vector
            let mut k = BitVec::zeros(na + nb);
            for i in comb.iter_ones() {
                k.set(i, true);
            }
            k.set(elim_input_index(&elim), true);
            kernel_combos.push(k);
            // still record it as an input so indices stay aligned
            elim.add_row(row);
            debug_assert_eq!(elim.rank(), before);
        } else {
            elim.add_row(row);
        }
    }
    // Each kernel combo yields an intersection element: the A-part of the combo.
    let mut result_basis = Eliminator::new(a.cols, false);
    let mut out = Vec::new();
    for k in kernel_combos {
        let mut v = BitVec::zeros(a.cols);
        for i in k.iter_ones() {
            if i < na {
                v.xor_assign(&a.rows[i]);
            }
        }
        if !v.is_zero() && result_basis.add_row(&v) {
            out.push(v);
        }
    }
    out
}

fn elim_input_index(e: &Eliminator) -> usize {
    e.n_inputs
}

/// Intersection of two row spaces by pairwise elimination (Zassenhaus-style):
/// reduce B's rows against A ∪ (accumulated residuals); whenever a B-row is
/// fully reducible using A-rows and previously-consumed B-rows, extract the
/// B-side combination, which lies in both spans.
pub fn row_space_intersection_zassenhaus(a: &BitMatrix, b: &BitMatrix) -> Vec<BitVec> {
    assert_eq!(a.cols, b.cols);
    // Work on doubled-width rows: [v | v] for B, [v | 0] for A. Echelon on the
    // left block; rows whose left block vanishes have right block in A∩B span.
    let w = a.cols;
    let mut elim = Eliminator::new(2 * w, false);
    for row in &a.rows {
        let mut d = BitVec::zeros(2 * w);
        for i in row.iter_ones() {
            d.set(i, true);
        }
        elim.add_row(&d);
    }
    let mut out_basis = Eliminator::new(w, false);
    let mut out = Vec::new();
    for row in &b.rows {
        let mut d = BitVec::zeros(2 * w);
        for i in row.iter_ones() {
            d.set(i, true);
            d.set(w + i, true);
        }
        let (res, _) = elim.reduce(&d);
        // Left block zero => the right block is a combination of B-rows equal
        // to a combination of A-rows.
        let left_zero = (0..w).all(|i| !res.get(i));
        if left_zero {
            let mut v = BitVec::zeros(w);
            for i in 0..w {
                if res.get(w + i) {
                    v.set(i, true);
                }
            }
            if !v.is_zero() && out_basis.add_row(&v) {
                out.push(v);
            }
        }
        elim.add_row(&d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bv(bits: &[usize], len: usize) -> BitVec {
        let mut v = BitVec::zeros(len);
        for &b in bits {
            v.set(b, true);
        }
        v
    }

    #[test]
    fn rank_and_membership() {
        let mut m = BitMatrix::new(4);
        m.push(bv(&[0, 1], 4));
        m.push(bv(&[1, 2], 4));
        m.push(bv(&[0, 2], 4)); // dependent
        assert_eq!(m.rank(), 2);
        let e = Eliminator::from_rows(4, m.rows.iter().cloned());
        assert!(e.contains(&bv(&[0, 2], 4)));
        assert!(!e.contains(&bv(&[3], 4)));
    }

    #[test]
    fn solve_tracks_combination() {
        let mut e = Eliminator::new(4, true);
        e.add_row(&bv(&[0, 1], 4));
        e.add_row(&bv(&[1, 2], 4));
        let sol = e.solve(&bv(&[0, 2], 4)).unwrap();
        // x0 + x1 reproduces the target
        assert!(sol.get(0) && sol.get(1));
        assert!(e.solve(&bv(&[3], 4)).is_none());
    }

    #[test]
    fn kernel_of_small_matrix() {
        // rows: 110, 011 -> kernel spanned by 111
        let mut m = BitMatrix::new(3);
        m.push(bv(&[0, 1], 3));
        m.push(bv(&[1, 2], 3));
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], bv(&[0, 1, 2], 3));
        // verify Mv = 0 for all basis vectors on a random matrix
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let mut m = BitMatrix::new(20);
        for _ in 0..12 {
            let mut r = BitVec::zeros(20);
            for i in 0..20 {
                r.set(i, rng.gen_bool(0.4));
            }
            m.push(r);
        }
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 20 - m.rank());
        for v in &k {
            for row in &m.rows {
                assert!(!row.dot(v));
            }
        }
    }

    #[test]
    fn intersections_agree() {
        // span A = {1100, 0110}, span B = {0110, 0011}; A∩B = {0110}
        let mut a = BitMatrix::new(4);
        a.push(bv(&[0, 1], 4));
        a.push(bv(&[1, 2], 4));
        let mut b = BitMatrix::new(4);
        b.push(bv(&[1, 2], 4));
        b.push(bv(&[2, 3], 4));
        let k = row_space_intersection_kernel(&a, &b);
        let z = row_space_intersection_zassenhaus(&a, &b);
        assert_eq!(k.len(), 1);
        assert_eq!(z.len(), 1);
        assert_eq!(k[0], bv(&[1, 2], 4));
        assert_eq!(z[0], bv(&[1, 2], 4));
    }

    #[test]
    fn intersections_agree_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let cols = 24;
            let mut a = BitMatrix::new(cols);
            let mut b = BitMatrix::new(cols);
            for _ in 0..8 {
                let mut r = BitVec::zeros(cols);
                for i in 0..cols {
                    r.set(i, rng.gen_bool(0.3));
                }
                a.push(r);
                let mut r = BitVec::zeros(cols);
                for i in 0..cols {
                    r.set(i, rng.gen_bool(0.3));
                }
                b.push(r);
            }
            let k = row_space_intersection_kernel(&a, &b);
            let z = row_space_intersection_zassenhaus(&a, &b);
            assert_eq!(k.len(), z.len());
            // same span
            let ek = Eliminator::from_rows(cols, k.iter().cloned());
            for v in &z {
                assert!(ek.contains(v));
            }
        }
    }
}
