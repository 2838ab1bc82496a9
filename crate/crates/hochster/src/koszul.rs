//! Koszul-strand computation of Tor for both parameter systems:
//! the colorful parameters Γ acting on a colored Stanley-Reisner ring
//! (multigraded, exact) and the universal parameters Θ acting on the face
//! ring of a simplicial poset (N-graded, degree-bounded).

use std::collections::HashMap;

use rayon::prelude::*;

use crate::betti::{BettiTable, Degree, ParamSystem};
use crate::cohomology::reduced_cohomology;
use crate::complex::{ColorSet, Coloring, Face, SimplicialComplex};
use crate::facering::{FaceRing, StdMonomial};
use crate::field::Field;
use crate::poset::SimplicialPoset;
use crate::sparse::SparseMatrix;
use crate::Error;

/// Default degree bound for Theta-side tables: the conjectured support bound
/// d(d+1)/2 plus a margin of d to surface stray entries ("excess").
pub fn default_theta_bound(d: usize) -> usize {
    d * (d + 1) / 2 + d
}

/// The conjectured support cutoff for Theta tables.
pub fn theta_support_cutoff(d: usize) -> usize {
    d * (d + 1) / 2
}

/// Direct Koszul-strand computation of `Tor_m(k[Δ], k)` over the colorful
/// parameter ring, in a single multidegree `b`, for m = 0..=d.
///
/// The strand basis in homological degree m consists of pairs (x^a, e_J) with
/// supp(a) ∈ Δ, #J = m and deg(x^a) + ε_J = b; since the coloring is proper,
/// monomials of multidegree c correspond bijectively to faces F with
/// κ(F) = supp(c). This is the independent oracle for the Hochster-style
/// formula implemented in `gamma_tor_hochster`.
pub fn gamma_tor_strand<F: Field>(
    complex: &SimplicialComplex,
    coloring: &Coloring,
    b: &[u32],
    field: &F,
) -> Result<Vec<usize>, Error> {
    coloring.validate_for(complex)?;
    let d = coloring.num_colors();
    if b.len() != d {
        return Err(Error::InvalidInput(format!(
            "multidegree has {} components for {d} colors",
            b.len()
        )));
    }
    if complex.is_void() {
        return Ok(vec![0; d + 1]);
    }

    // basis of homological level m: (face, J) with κ(F) = supp(b - ε_J)
    let faces = complex.all_faces();
    let level_basis = |m: usize| -> Vec<(Face, Vec<usize>)> {
        let mut out = Vec::new();
        for j_set in subsets_of_size(d, m) {
            let mut c = b.to_vec();
            let mut ok = true;
            for &j in &j_set {
                if c[j - 1] == 0 {
                    ok = false;
                    break;
                }
                c[j - 1] -= 1;
            }
            if !ok {
                continue;
            }
            let support = ColorSet::from_iter(
                (1..=d).filter(|&j| c[j - 1] > 0),
            );
            for f in &faces {
                if coloring.color_set(f) == support {
                    out.push((f.clone(), j_set.clone()));
                }
            }
        }
        out.sort();
        out
    };

    let bases: Vec<Vec<(Face, Vec<usize>)>> = (0..=d).map(level_basis).collect();
    let index: Vec<HashMap<(Face, Vec<usize>), usize>> = bases
        .iter()
        .map(|basis| {
            basis.iter().enumerate().map(|(i, k)| (k.clone(), i)).collect()
        })
        .collect();

    // ∂_m : level m -> level m-1
    let differential = |m: usize| -> SparseMatrix<F> {
        if m == 0 || bases[m].is_empty() {
            return SparseMatrix::zero(
                if m == 0 { 0 } else { bases[m - 1].len() },
                bases[m].len(),
            );
        }
        let mut triplets = Vec::new();
        for (col, (face, j_set)) in bases[m].iter().enumerate() {
            for (pos, &j) in j_set.iter().enumerate() {
                let sign = if pos % 2 == 0 { 1i64 } else { -1 };
                let rest: Vec<usize> =
                    j_set.iter().copied().filter(|&x| x != j).collect();
                // γ_j · x^a: if color j already appears in the face's support,
                // the exponent bumps (same face); otherwise sum over the
                // vertices of color j extending the face.
                if coloring.color_set(face).contains(j) {
                    let key = (face.clone(), rest.clone());
                    if let Some(&row) = index[m - 1].get(&key) {
                        triplets.push((row, col, field.from_i64(sign)));
                    }
                } else {
                    for v in 1..=complex.vertex_count() {
                        if coloring.color_of(v) != j || face.contains(&v) {
                            continue;
                        }
                        let mut bigger = face.clone();
                        bigger.push(v);
                        bigger.sort_unstable();
                        if !complex.is_face(&bigger) {
                            continue;
                        }
                        let key = (bigger, rest.clone());
                        if let Some(&row) = index[m - 1].get(&key) {
                            triplets.push((row, col, field.from_i64(sign)));
                        }
                    }
                }
            }
        }
        SparseMatrix::from_triplets(field, bases[m - 1].len(), bases[m].len(), triplets)
    };

    let diffs: Vec<SparseMatrix<F>> = (0..=d).map(differential).collect();
    for m in 1..=d {
        debug_assert!(
            m + 1 > d || diffs[m].mul(field, &diffs[m + 1]).is_zero_matrix(),
            "Koszul strand differential does not square to zero"
        );
    }

    let mut dims = Vec::with_capacity(d + 1);
    for m in 0..=d {
        let zero_in = SparseMatrix::zero(bases[m].len(), 0);
        let d_in = if m < d { &diffs[m + 1] } else { &zero_in };
        let dim = crate::sparse::homology_dims(d_in, &diffs[m], field);
        dims.push(dim);
    }
    Ok(dims)
}

/// The full multigraded Betti table of `k[Δ]` over the colorful parameters,
/// via the cohomology of color-selected subcomplexes: entry (m, Σ_{j∈S} ε_j)
/// is `dim H̃^{#S-m-1}(Δ|_S)`; every other multidegree is zero.
pub fn gamma_tor_hochster<F: Field>(
    complex: &SimplicialComplex,
    coloring: &Coloring,
    field: &F,
) -> Result<BettiTable, Error> {
    coloring.validate_for(complex)?;
    let d = coloring.num_colors();
    let mut table =
        BettiTable::new(d, field.spec(), ParamSystem::Gamma, None);
    if complex.is_void() {
        return Ok(table);
    }
    let subsets: Vec<ColorSet> = ColorSet::all_subsets(d).collect();
    let per_subset: Vec<(ColorSet, Vec<usize>)> = subsets
        .par_iter()
        .map(|&s| {
            let sub = complex.restrict_colors(coloring, s).expect("validated coloring");
            (s, reduced_cohomology(&sub, field))
        })
        .collect();
    for (s, dims) in per_subset {
        let b: Vec<u32> = (1..=d).map(|j| if s.contains(j) { 1 } else { 0 }).collect();
        for m in 0..=d {
            // H̃^{#S-m-1} sits at index #S - m of the dims list (index 0 is H̃^{-1})
            let Some(idx) = s.len().checked_sub(m) else { continue };
            let dim = dims.get(idx).copied().unwrap_or(0);
            if dim > 0 {
                table.set(m, Degree::Multi(b.clone()), dim);
            }
        }
    }
    Ok(table)
}

/// Per-degree actions of the θ_j, stored column-wise: for each basis monomial
/// of k[Δ]_deg, the expansion of θ_j times it in the basis of k[Δ]_{deg+j}.
/// Shared by the Theta-side strand assembly and the regular-sequence checks.
pub struct ThetaMatrices<F: Field> {
    /// bases[deg] is the ordered standard-monomial basis of k[Δ]_deg.
    pub bases: Vec<Vec<StdMonomial>>,
    /// action[j-1][deg][col] lists (row, coefficient) pairs of θ_j applied to
    /// the col-th basis monomial of degree deg; present when deg + j <= bound.
    pub action: Vec<Vec<Option<Vec<Vec<(usize, F::Elem)>>>>>,
    pub bound: usize,
    pub d: usize,
}

impl<F: Field> ThetaMatrices<F> {
    pub fn build(ring: &FaceRing<'_, F>, params: usize, bound: usize) -> Self {
        let poset = ring.poset();
        let bases: Vec<Vec<StdMonomial>> =
            (0..=bound).map(|deg| ring.standard_monomials_of_degree(deg)).collect();
        let index: Vec<HashMap<&StdMonomial, usize>> = bases
            .iter()
            .map(|basis| basis.iter().enumerate().map(|(i, m)| (m, i)).collect())
            .collect();
        let action: Vec<Vec<Option<Vec<Vec<(usize, F::Elem)>>>>> = (1..=params)
            .into_par_iter()
            .map(|j| {
                (0..=bound)
                    .map(|deg| {
                        if deg + j > bound {
                            return None;
                        }
                        let cols: Vec<Vec<(usize, F::Elem)>> = bases[deg]
                            .iter()
                            .map(|mono| {
                                let image = ring
                                    .theta_action(j, mono)
                                    .expect("j within rank range");
                                image
                                    .terms()
                                    .map(|(m, c)| {
                                        debug_assert_eq!(m.degree(poset), deg + j);
                                        (index[deg + j][m], c.clone())
                                    })
                                    .collect()
                            })
                            .collect();
                        Some(cols)
                    })
                    .collect()
            })
            .collect();
        ThetaMatrices { bases, action, bound, d: params }
    }
}

/// N-graded Betti table of the face ring over the universal parameters
/// `(θ_1, .., θ_δ)` (all d of them for `theta_tor`), computed as Koszul
/// homology degree by degree up to `bound`.
///
/// The Koszul generator e_j carries degree j; the strand of total degree D in
/// homological index m has basis {m̂ ⊗ e_J : #J = m, deg m̂ + Σ J = D}.
pub fn theta_koszul_homology<F: Field>(
    ring: &FaceRing<'_, F>,
    params: usize,
    bound: usize,
    matrices: &ThetaMatrices<F>,
) -> Result<BettiTable, Error> {
    let field = ring.field();
    let d_poset = ring.poset().max_rank();
    assert!(params <= d_poset);

    let j_sets: Vec<Vec<Vec<usize>>> =
        (0..=params).map(|m| subsets_of_size(params, m)).collect();

    // level basis at (degree D, hom index m): pairs (monomial index, J)
    let level = |total: usize, m: usize| -> Vec<(usize, Vec<usize>)> {
        let mut out = Vec::new();
        for j_set in &j_sets[m] {
            let weight: usize = j_set.iter().sum();
            if weight > total {
                continue;
            }
            let deg = total - weight;
            for i in 0..matrices.bases[deg].len() {
                out.push((i, j_set.clone()));
            }
        }
        out.sort();
        out
    };

    let degrees: Vec<usize> = (0..=bound).collect();
    let results: Vec<Vec<(usize, usize)>> = degrees
        .par_iter()
        .map(|&total| {
            let bases: Vec<Vec<(usize, Vec<usize>)>> =
                (0..=params).map(|m| level(total, m)).collect();
            let index: Vec<HashMap<&(usize, Vec<usize>), usize>> = bases
                .iter()
                .map(|b| b.iter().enumerate().map(|(i, k)| (k, i)).collect())
                .collect();
            let differential = |m: usize| -> SparseMatrix<F> {
                if m == 0 || bases[m].is_empty() {
                    return SparseMatrix::zero(
                        if m == 0 { 0 } else { bases[m - 1].len() },
                        bases[m].len(),
                    );
                }
                let mut triplets = Vec::new();
                for (col, (mono_idx, j_set)) in bases[m].iter().enumerate() {
                    let weight: usize = j_set.iter().sum();
                    let deg = total - weight;
                    for (pos, &j) in j_set.iter().enumerate() {
                        let sign = if pos % 2 == 0 { 1i64 } else { -1 };
                        let sign_elem = field.from_i64(sign);
                        let rest: Vec<usize> =
                            j_set.iter().copied().filter(|&x| x != j).collect();
                        let cols = matrices.action[j - 1][deg]
                            .as_ref()
                            .expect("within bound");
                        for (row_mono, value) in &cols[*mono_idx] {
                            let key = (*row_mono, rest.clone());
                            let row = index[m - 1][&key];
                            triplets.push((
                                row,
                                col,
                                field.mul(value, &sign_elem),
                            ));
                        }
                    }
                }
                SparseMatrix::from_triplets(
                    field,
                    bases[m - 1].len(),
                    bases[m].len(),
                    triplets,
                )
            };
            let diffs: Vec<SparseMatrix<F>> = (0..=params).map(differential).collect();
            for m in 1..params {
                debug_assert!(
                    diffs[m].mul(field, &diffs[m + 1]).is_zero_matrix(),
                    "Theta Koszul differential does not square to zero at degree {total}"
                );
            }
            let mut dims = Vec::new();
            for m in 0..=params {
                let zero_in = SparseMatrix::zero(bases[m].len(), 0);
                let d_in = if m < params { &diffs[m + 1] } else { &zero_in };
                let dim = crate::sparse::homology_dims(d_in, &diffs[m], field);
                if dim > 0 {
                    dims.push((m, dim));
                }
            }
            dims
        })
        .collect();

    let mut table = BettiTable::new(
        params,
        field.spec(),
        ParamSystem::Theta,
        Some(bound),
    );
    for (total, dims) in degrees.iter().zip(results) {
        for (m, dim) in dims {
            table.set(m, Degree::Total(*total), dim);
        }
    }
    Ok(table)
}

/// The Theta-side Betti table with the full parameter sequence and default
/// indexing by total degree.
pub fn theta_tor<F: Field>(
    poset: &SimplicialPoset,
    field: &F,
    max_degree: usize,
) -> Result<BettiTable, Error> {
    let ring = FaceRing::new(poset, field.clone());
    let d = poset.max_rank();
    let matrices = ThetaMatrices::build(&ring, d, max_degree);
    theta_koszul_homology(&ring, d, max_degree, &matrices)
}

/// All m-subsets of {1..d} in lexicographic order.
pub(crate) fn subsets_of_size(d: usize, m: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (1..=d).combinations(m).collect()
}
