//! Reduced simplicial cohomology over an exact field, and Cohen-Macaulayness
//! via the Reisner criterion.

use rayon::prelude::*;

use crate::complex::{Face, SimplicialComplex};
use crate::field::Field;
use crate::sparse::{homology_dims, SparseMatrix};
use crate::Error;

/// The augmented cochain complex of a simplicial complex: ordered face bases
/// per dimension and coboundary matrices with signs from the global vertex
/// order.
pub struct CochainComplexData<F: Field> {
    /// bases[k] lists the faces of dimension k-1 (index 0 holds the empty face).
    pub bases: Vec<Vec<Face>>,
    /// coboundaries[k]: C^{k-1} -> C^k as a matrix (rows = dim-(k-1) faces... rows
    /// index the target basis `bases[k+1]`? see `new`); one matrix per adjacent pair.
    pub coboundaries: Vec<SparseMatrix<F>>,
}

impl<F: Field> CochainComplexData<F> {
    /// Assemble bases and coboundary matrices. `bases[j]` holds faces of
    /// dimension `j-1`; `coboundaries[j]` is the map from cochains on
    /// `bases[j]` to cochains on `bases[j+1]`, with rows indexed by the target
    /// basis. The sign of the pair (G, F = G minus vertex v) is `(-1)^pos`
    /// where `pos` is the index of `v` in the sorted list `G`.
    pub fn new(complex: &SimplicialComplex, field: &F) -> Self {
        if complex.is_void() {
            return CochainComplexData { bases: Vec::new(), coboundaries: Vec::new() };
        }
        let top = complex.dim();
        let bases: Vec<Vec<Face>> = (-1..=top).map(|i| complex.faces_of_dim(i)).collect();
        let mut coboundaries = Vec::new();
        for j in 0..bases.len().saturating_sub(1) {
            let source = &bases[j];
            let target = &bases[j + 1];
            let index: std::collections::HashMap<&Face, usize> =
                source.iter().enumerate().map(|(i, f)| (f, i)).collect();
            let mut triplets: Vec<(usize, usize, F::Elem)> = Vec::new();
            for (row, g) in target.iter().enumerate() {
                for (pos, _) in g.iter().enumerate() {
                    let mut f = g.clone();
                    f.remove(pos);
                    if let Some(&col) = index.get(&f) {
                        let sign = if pos % 2 == 0 { 1 } else { -1 };
                        triplets.push((row, col, field.from_i64(sign)));
                    }
                }
            }
            coboundaries.push(SparseMatrix::from_triplets(
                field,
                target.len(),
                source.len(),
                triplets,
            ));
        }
        CochainComplexData { bases, coboundaries }
    }
}

/// Dimensions `[H̃^{-1}, H̃^0, ..., H̃^dim]` of reduced cohomology.
///
/// The void complex returns an empty list (all groups vanish); `{∅}` returns
/// `[1]`.
pub fn reduced_cohomology<F: Field>(complex: &SimplicialComplex, field: &F) -> Vec<usize> {
    let data = CochainComplexData::new(complex, field);
    let levels = data.bases.len();
    (0..levels)
        .map(|j| {
            let zero_in = SparseMatrix::zero(data.bases[j].len(), 0);
            let zero_out = SparseMatrix::zero(0, data.bases[j].len());
            let d_in = if j == 0 { &zero_in } else { &data.coboundaries[j - 1] };
            let d_out = if j + 1 < levels { &data.coboundaries[j] } else { &zero_out };
            homology_dims(d_in, d_out, field)
        })
        .collect()
}

/// Reisner criterion: Cohen-Macaulay over the field iff for every face F
/// (including ∅), `H̃^i(link F) = 0` for all `i < dim link F`.
pub fn is_cohen_macaulay<F: Field>(
    complex: &SimplicialComplex,
    field: &F,
) -> Result<bool, Error> {
    if complex.is_void() {
        return Err(Error::InvalidInput("void complex has no face ring".into()));
    }
    let faces = complex.all_faces();
    Ok(faces.par_iter().all(|f| {
        let link = complex.link(f).expect("face of the complex");
        let dims = reduced_cohomology(&link, field);
        let top = link.dim(); // link is never void: it contains ∅
        dims.iter()
            .enumerate()
            .all(|(idx, &d)| (idx as isize - 1) >= top || d == 0)
    }))
}

/// Cohen-Macaulayness of the cell complex of a simplicial poset, computed on
/// its barycentric subdivision. CM-ness over a field depends only on the
/// geometric realization, which subdivision preserves, so this is taken as the
/// operational definition for cell complexes.
pub fn poset_is_cohen_macaulay<F: Field>(
    poset: &crate::poset::SimplicialPoset,
    field: &F,
) -> Result<bool, Error> {
    let (sd, _) = poset.barycentric_subdivision();
    is_cohen_macaulay(&sd, field)
}
