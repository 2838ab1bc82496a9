//! Sparse matrices over an exact field and their rank.
//!
//! Everything homological in this crate reduces to the `rank` function below.
//! Matrices here are incidence-like: entries are small integers (mostly 0 and
//! ±1), shapes are a few thousand at most.
//!
//! Two elimination paths:
//! * over `F_p`, plain sparse Gaussian elimination with Markowitz pivoting;
//! * over the rationals, rows are cleared to integers and updated by integer
//!   cross-multiplication with content stripping, so no rational arithmetic
//!   (and no rounding) happens inside the loop.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::field::{Field, PrimeField, Rationals};

/// Coordinate-list sparse matrix: no duplicate coordinates, no stored zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F: Field> {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, F::Elem)>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: Vec::new() }
    }

    /// Build from coordinate triplets; duplicates are summed in the field and
    /// resulting zeros dropped.
    pub fn from_triplets(
        field: &F,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F::Elem)>,
    ) -> Self {
        let mut map: std::collections::BTreeMap<(usize, usize), F::Elem> =
            std::collections::BTreeMap::new();
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of shape {rows}x{cols}");
            match map.entry((r, c)) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(v);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    field.add_assign(e.get_mut(), &v);
                }
            }
        }
        let entries = map
            .into_iter()
            .filter(|(_, v)| !field.is_zero(v))
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix { rows, cols, entries }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, field.one())).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
    pub fn entries(&self) -> &[(usize, usize, F::Elem)] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(r, c, v)| (*c, *r, v.clone())).collect(),
        }
    }

    /// Matrix product, used by the chain-complex composition checks.
    pub fn mul(&self, field: &F, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        // rhs rows indexed for access
        let mut rhs_rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); rhs.rows];
        for (r, c, v) in &rhs.entries {
            rhs_rows[*r].push((*c, v.clone()));
        }
        let mut triplets = Vec::new();
        for (r, k, v) in &self.entries {
            for (c, w) in &rhs_rows[*k] {
                triplets.push((*r, *c, field.mul(v, w)));
            }
        }
        SparseMatrix::from_triplets(field, self.rows, rhs.cols, triplets)
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.is_empty()
    }

    fn row_lists(&self) -> Vec<Vec<(usize, F::Elem)>> {
        let mut rows: Vec<Vec<(usize, F::Elem)>> = vec![Vec::new(); self.rows];
        for (r, c, v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }
}

/// Exact rank over the field. Deterministic for a fixed input.
pub fn rank<F: Field>(matrix: &SparseMatrix<F>, field: &F) -> usize {
    field.matrix_rank(matrix)
}

/// Dimension of the middle homology of a two-step complex
/// `C^{k-1} --d_in--> C^k --d_out--> C^{k+1}`:
/// `dim C^k - rank d_out - rank d_in`.
///
/// Composition `d_out . d_in = 0` is asserted in debug builds; a nonzero
/// composite signals an orientation bug in the caller.
pub fn homology_dims<F: Field>(
    d_in: &SparseMatrix<F>,
    d_out: &SparseMatrix<F>,
    field: &F,
) -> usize {
    assert_eq!(
        d_in.rows(),
        d_out.cols(),
        "chain maps do not compose: d_in lands in dim {}, d_out starts in dim {}",
        d_in.rows(),
        d_out.cols()
    );
    debug_assert!(
        d_out.mul(field, d_in).is_zero_matrix(),
        "d_out . d_in != 0: not a complex"
    );
    let middle = d_in.rows();
    let r_in = rank(d_in, field);
    let r_out = rank(d_out, field);
    assert!(
        r_in + r_out <= middle,
        "rank sum exceeds middle dimension; composition cannot be zero"
    );
    middle - r_in - r_out
}

/// Generic sparse elimination with Markowitz-style pivot selection.
pub(crate) fn rank_generic<F: Field>(matrix: &SparseMatrix<F>, field: &F) -> usize {
    let mut rows = matrix.row_lists();
    let mut col_count = vec![0usize; matrix.cols];
    for row in &rows {
        for (c, _) in row {
            col_count[*c] += 1;
        }
    }
    let mut row_alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut rank = 0usize;

    loop {
        // Markowitz: minimize (row_nnz - 1) * (col_nnz - 1).
        let mut best: Option<(usize, usize, usize)> = None; // (score, row, col)
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] || row.is_empty() {
                continue;
            }
            let rn = row.len() - 1;
            for (c, _) in row {
                let score = rn * (col_count[*c] - 1);
                if best.map_or(true, |(s, br, bc)| {
                    score < s || (score == s && (r, *c) < (br, bc))
                }) {
                    best = Some((score, r, *c));
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        rank += 1;

        let pivot_row = std::mem::take(&mut rows[pr]);
        row_alive[pr] = false;
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let pivot_val = pivot_row
            .iter()
            .find(|(c, _)| *c == pc)
            .map(|(_, v)| v.clone())
            .expect("pivot entry present");
        let pivot_inv = field.inv(&pivot_val);

        for r in 0..rows.len() {
            if !row_alive[r] {
                continue;
            }
            let Some(pos) = rows[r].iter().position(|(c, _)| *c == pc) else {
                continue;
            };
            let factor = field.mul(&rows[r][pos].1, &pivot_inv);
            let old = std::mem::take(&mut rows[r]);
            for (c, _) in &old {
                col_count[*c] -= 1;
            }
            let merged = axpy(field, &old, &pivot_row, &field.neg(&factor));
            for (c, _) in &merged {
                col_count[*c] += 1;
            }
            if merged.is_empty() {
                row_alive[r] = false;
            }
            rows[r] = merged;
        }
    }
    rank
}

/// `a + factor * b` on sorted sparse rows, dropping zeros.
fn axpy<F: Field>(
    field: &F,
    a: &[(usize, F::Elem)],
    b: &[(usize, F::Elem)],
    factor: &F::Elem,
) -> Vec<(usize, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, field.mul(&b[j].1, factor)));
            j += 1;
        } else {
            let v = field.add(&a[i].1, &field.mul(&b[j].1, factor));
            if !field.is_zero(&v) {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over the rationals by integer-preserving elimination.
///
/// Each row is scaled to integers (rank is invariant under row scaling), then
/// updates are integer cross-multiplications `pv * row - rv * pivot_row`
/// followed by division by the row content, so entries stay reduced integers
/// throughout.
pub(crate) fn rank_rational(matrix: &SparseMatrix<Rationals>) -> usize {
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(matrix.rows);
    {
        let lists = matrix.row_lists();
        for list in lists {
            let mut lcm = BigInt::from(1);
            for (_, v) in &list {
                lcm = lcm.lcm(v.denom());
            }
            let mut row: Vec<(usize, BigInt)> =
                list.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
            row.sort_by_key(|(c, _)| *c);
            strip_content(&mut row);
            rows.push(row);
        }
    }

    let mut col_count = vec![0usize; matrix.cols];
    for row in &rows {
        for (c, _) in row {
            col_count[*c] += 1;
        }
    }
    let mut row_alive: Vec<bool> = rows.iter().map(|r| !r.is_empty()).collect();
    let mut rank = 0usize;

    loop {
        // Markowitz score, tie-broken toward unit pivots to limit growth.
        let mut best: Option<(usize, u64, usize, usize)> = None; // (score, |v| bits, row, col)
        for (r, row) in rows.iter().enumerate() {
            if !row_alive[r] || row.is_empty() {
                continue;
            }
            let rn = row.len() - 1;
            for (c, v) in row {
                let score = rn * (col_count[*c] - 1);
                let bits = v.bits();
                if best.map_or(true, |(s, b, br, bc)| {
                    (score, bits, r, *c) < (s, b, br, bc)
                }) {
                    best = Some((score, bits, r, *c));
                }
            }
        }
        let Some((_, _, pr, pc)) = best else { break };
        rank += 1;

        let pivot_row = std::mem::take(&mut rows[pr]);
        row_alive[pr] = false;
        for (c, _) in &pivot_row {
            col_count[*c] -= 1;
        }
        let pivot_val =
            pivot_row.iter().find(|(c, _)| *c == pc).map(|(_, v)| v.clone()).unwrap();

        for r in 0..rows.len() {
            if !row_alive[r] {
                continue;
            }
            let Some(pos) = rows[r].iter().position(|(c, _)| *c == pc) else {
                continue;
            };
            let rv = rows[r][pos].1.clone();
            let old = std::mem::take(&mut rows[r]);
            for (c, _) in &old {
                col_count[*c] -= 1;
            }
            let mut merged = int_axpy(&old, &pivot_val, &pivot_row, &(-&rv));
            strip_content(&mut merged);
            for (c, _) in &merged {
                col_count[*c] += 1;
            }
            if merged.is_empty() {
                row_alive[r] = false;
            }
            rows[r] = merged;
        }
    }
    rank
}

/// `pv * a + rv * b` on sorted integer rows, dropping zeros.
fn int_axpy(
    a: &[(usize, BigInt)],
    pv: &BigInt,
    b: &[(usize, BigInt)],
    rv: &BigInt,
) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push((a[i].0, pv * &a[i].1));
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, rv * &b[j].1));
            j += 1;
        } else {
            let v = pv * &a[i].1 + rv * &b[j].1;
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn strip_content(row: &mut [(usize, BigInt)]) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, v) in row.iter() {
        g = g.gcd(v);
        if g.abs() == BigInt::from(1) {
            return;
        }
    }
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
    }
}

/// Convenience: assemble a matrix over any field from signed-integer triplets.
pub fn matrix_from_int_triplets<F: Field>(
    field: &F,
    rows: usize,
    cols: usize,
    triplets: impl IntoIterator<Item = (usize, usize, i64)>,
) -> SparseMatrix<F> {
    SparseMatrix::from_triplets(
        field,
        rows,
        cols,
        triplets.into_iter().map(|(r, c, v)| (r, c, field.from_i64(v))),
    )
}

/// Rank over both field flavors from one integer matrix, used by tests and by
/// CLI dispatch.
pub fn rank_over(spec: crate::field::FieldSpec, m_int: &[(usize, usize, i64)], rows: usize, cols: usize) -> usize {
    match spec {
        crate::field::FieldSpec::Rationals => {
            let f = Rationals;
            rank(&matrix_from_int_triplets(&f, rows, cols, m_int.iter().copied()), &f)
        }
        crate::field::FieldSpec::Prime(p) => {
            let f = PrimeField::new(p).expect("prime");
            rank(&matrix_from_int_triplets(&f, rows, cols, m_int.iter().copied()), &f)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, PrimeField, Rationals};
    use proptest::prelude::*;

    /// Dense fraction-free (Bareiss) elimination over the integers: the
    /// independent rank oracle. Deliberately separate from the sparse path.
    pub(crate) fn dense_bareiss_rank(rows: usize, cols: usize, entries: &[(usize, usize, i64)]) -> usize {
        let mut m = vec![vec![BigInt::zero(); cols]; rows];
        for (r, c, v) in entries {
            m[*r][*c] += BigInt::from(*v);
        }
        let mut prev = BigInt::from(1);
        let mut rank = 0;
        let mut used_rows = vec![false; rows];
        for col in 0..cols {
            let Some(pr) = (0..rows).find(|&r| !used_rows[r] && !m[r][col].is_zero()) else {
                continue;
            };
            used_rows[pr] = true;
            rank += 1;
            let pv = m[pr][col].clone();
            for r in 0..rows {
                if used_rows[r] || m[r][col].is_zero() {
                    // Bareiss scaling applies to every active row, including
                    // those with a zero in the pivot column.
                    if !used_rows[r] {
                        for c in 0..cols {
                            m[r][c] = &m[r][c] * &pv / &prev;
                        }
                    }
                    continue;
                }
                let rv = m[r][col].clone();
                for c in 0..cols {
                    m[r][c] = (&m[r][c] * &pv - &rv * &m[pr][c]) / &prev;
                }
            }
            prev = pv;
        }
        rank
    }

    #[test]
    fn zero_and_identity() {
        let f = Rationals;
        let z: SparseMatrix<Rationals> = SparseMatrix::zero(4, 5);
        assert_eq!(rank(&z, &f), 0);
        let id = SparseMatrix::identity(&f, 6);
        assert_eq!(rank(&id, &f), 6);
        let fp = PrimeField::new(2).unwrap();
        assert_eq!(rank(&SparseMatrix::identity(&fp, 3), &fp), 3);
    }

    #[test]
    fn four_cycle_coboundary_rank() {
        // delta^0 of the 4-cycle 1-2-3-4-1: rows = edges, cols = vertices.
        let edges = [(0usize, 1usize), (1, 2), (2, 3), (0, 3)];
        let mut trip = Vec::new();
        for (i, (a, b)) in edges.iter().enumerate() {
            trip.push((i, *a, -1i64));
            trip.push((i, *b, 1));
        }
        assert_eq!(rank_over(FieldSpec::Rationals, &trip, 4, 4), 3);
        assert_eq!(rank_over(FieldSpec::Prime(2), &trip, 4, 4), 3);
        assert_eq!(dense_bareiss_rank(4, 4, &trip), 3);
    }

    #[test]
    fn homology_of_zero_maps() {
        let f = Rationals;
        let d_in: SparseMatrix<Rationals> = SparseMatrix::zero(5, 2);
        let d_out: SparseMatrix<Rationals> = SparseMatrix::zero(3, 5);
        assert_eq!(homology_dims(&d_in, &d_out, &f), 5);
    }

    #[test]
    fn characteristic_matters() {
        // [[1,1],[1,-1]] has rank 2 over QQ, rank 1 over F_2.
        let trip = vec![(0, 0, 1i64), (0, 1, 1), (1, 0, 1), (1, 1, -1)];
        assert_eq!(rank_over(FieldSpec::Rationals, &trip, 2, 2), 2);
        assert_eq!(rank_over(FieldSpec::Prime(2), &trip, 2, 2), 1);
        assert_eq!(rank_over(FieldSpec::Prime(3), &trip, 2, 2), 2);
    }

    proptest! {
        // Random 0/±1 matrices: sparse rational rank agrees with the dense
        // fraction-free oracle, transposition preserves rank, and F_p rank
        // never exceeds the rational rank.
        #[test]
        fn rank_matches_dense_oracle(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let rows = rng.gen_range(1..8usize);
            let cols = rng.gen_range(1..8usize);
            let mut trip = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v: i64 = [0, 0, 1, -1][rng.gen_range(0..4)];
                    if v != 0 { trip.push((r, c, v)); }
                }
            }
            let oracle = dense_bareiss_rank(rows, cols, &trip);
            let rq = rank_over(FieldSpec::Rationals, &trip, rows, cols);
            prop_assert_eq!(rq, oracle);

            let transposed: Vec<_> = trip.iter().map(|(r, c, v)| (*c, *r, *v)).collect();
            prop_assert_eq!(rank_over(FieldSpec::Rationals, &transposed, cols, rows), rq);

            for p in [2u64, 3, 32003] {
                let rp = rank_over(FieldSpec::Prime(p), &trip, rows, cols);
                prop_assert!(rp <= rq);
                if p == 32003 {
                    // 0/±1 matrices this small cannot have a minor divisible by 32003.
                    prop_assert_eq!(rp, rq);
                }
            }
        }
    }
}
