//! The headline experiment: compare the Theta-side Betti table of a face ring
//! k[Δ] with the specialized colorful-Hochster table of k[Sd Δ], entry by
//! entry.
//!
//! The two tables are proved equal when k[Δ] is Cohen-Macaulay or Δ is at most
//! one-dimensional, and the Theta entries are proved bounded above by the
//! Gamma entries in general; beyond that the equality is a conjecture and a
//! run that finds unequal cells (with all consistency checks green) is a
//! genuine discovery, dumped in full for audit.

use rand::Rng;
use rayon::prelude::*;

use crate::betti::{euler_consistency, euler_consistency_multigraded, BettiTable, Degree};
use crate::complex::SimplicialComplex;
use crate::facering::FaceRing;
use crate::field::{Field, FieldSpec};
use crate::flags;
use crate::koszul::{default_theta_bound, gamma_tor_hochster, theta_support_cutoff, theta_tor};
use crate::poset::SimplicialPoset;
use crate::Error;

/// One mismatched cell: homological index, total degree, and the two
/// dimensions.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CellMismatch {
    pub m: usize,
    pub degree: usize,
    pub theta_dim: usize,
    pub gamma_dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Verdict {
    Equal,
    /// Every consistency check passed and these cells still differ: a genuine
    /// discrepancy candidate.
    UnequalWithCells(Vec<CellMismatch>),
    /// Cells differ but a consistency check failed, pointing at truncation
    /// (or a bug) rather than a counterexample; carries the bound used.
    Inconclusive(usize),
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub instance: String,
    pub field: FieldSpec,
    pub bound: usize,
    pub table_theta: BettiTable,
    pub table_gamma_specialized: BettiTable,
    pub verdict: Verdict,
    /// Theta entry <= specialized Gamma entry everywhere (a proved theorem: a
    /// violation is an implementation bug, never a finding).
    pub inequality_ok: bool,
    /// Degreewise dimensions of k[Δ] and k[Sd Δ] agree up to the bound — the
    /// necessary condition for the graded-module isomorphism question.
    pub murai_dims_ok: bool,
    pub euler_theta_ok: bool,
    pub euler_gamma_ok: bool,
}

impl ConjectureReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Equal)
            && self.inequality_ok
            && self.murai_dims_ok
            && self.euler_theta_ok
            && self.euler_gamma_ok
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "instance": self.instance,
            "field": self.field.to_string(),
            "bound": self.bound,
            "verdict": match &self.verdict {
                Verdict::Equal => serde_json::json!("equal"),
                Verdict::UnequalWithCells(cells) => serde_json::json!({
                    "unequal": cells,
                }),
                Verdict::Inconclusive(b) => serde_json::json!({"inconclusive_bound": b}),
            },
            "inequality_ok": self.inequality_ok,
            "murai_dims_ok": self.murai_dims_ok,
            "euler_theta_ok": self.euler_theta_ok,
            "euler_gamma_ok": self.euler_gamma_ok,
            "table_theta": self.table_theta.to_json(),
            "table_gamma_specialized": self.table_gamma_specialized.to_json(),
        })
    }
}

/// Compare Tor over the universal parameters with the specialized colorful
/// table of the barycentric subdivision.
pub fn check_conjecture<F: Field>(
    instance: &str,
    poset: &SimplicialPoset,
    field: &F,
    max_degree: Option<usize>,
) -> Result<ConjectureReport, Error> {
    let d = poset.max_rank();
    let bound = max_degree.unwrap_or_else(|| default_theta_bound(d));

    let table_theta = theta_tor(poset, field, bound)?;
    let (sd, coloring) = poset.barycentric_subdivision();
    let gamma = gamma_tor_hochster(&sd, &coloring, field)?;
    let table_gamma = gamma.specialize_multigraded();

    // the Gamma side is supported in degrees <= d(d+1)/2, inside the bound
    debug_assert!(table_gamma
        .iter()
        .all(|(_, deg, _)| deg.specialized_weight() <= theta_support_cutoff(d)));

    let mut mismatches = Vec::new();
    let mut inequality_ok = true;
    for m in 0..=d {
        for degree in 0..=bound {
            let td = table_theta.get(m, &Degree::Total(degree));
            let gd = table_gamma.get(m, &Degree::Total(degree));
            if td != gd {
                mismatches.push(CellMismatch { m, degree, theta_dim: td, gamma_dim: gd });
            }
            if td > gd {
                inequality_ok = false;
            }
        }
    }

    let numerator = flags::hilbert_numerator_face_ring(poset)?;
    let euler_theta_ok = euler_consistency(&table_theta, &numerator)?;
    let euler_gamma_ok = euler_consistency_multigraded(
        &gamma,
        &flags::hilbert_numerator_sr(&sd, &coloring)?,
    )? && euler_consistency(&table_gamma, &numerator)?;

    let murai_dims_ok = murai_dimension_check(poset, &sd, &coloring, bound);

    let verdict = if mismatches.is_empty() {
        if euler_theta_ok && euler_gamma_ok {
            Verdict::Equal
        } else {
            Verdict::Inconclusive(bound)
        }
    } else if euler_theta_ok && euler_gamma_ok && inequality_ok {
        Verdict::UnequalWithCells(mismatches)
    } else {
        Verdict::Inconclusive(bound)
    };

    Ok(ConjectureReport {
        instance: instance.to_string(),
        field: field.spec(),
        bound,
        table_theta,
        table_gamma_specialized: table_gamma,
        verdict,
        inequality_ok,
        murai_dims_ok,
        euler_theta_ok,
        euler_gamma_ok,
    })
}

/// Necessary condition for the graded-module isomorphism question: the face
/// ring and the Stanley-Reisner ring of the subdivision have the same graded
/// dimensions. The left side counts standard monomials; the right side counts
/// monomials supported on faces of Sd Δ with deg x_F = ρ(F), by an
/// independent per-face enumeration.
fn murai_dimension_check(
    poset: &SimplicialPoset,
    sd: &SimplicialComplex,
    coloring: &crate::complex::Coloring,
    bound: usize,
) -> bool {
    let ring = FaceRing::new(poset, crate::field::Rationals);
    for degree in 0..=bound {
        let left = ring.graded_dimension(degree);
        let mut right = 0usize;
        for face in sd.all_faces() {
            // count exponent vectors on this support with weighted degree
            let weights: Vec<usize> = face.iter().map(|&v| coloring.color_of(v)).collect();
            right += count_positive_solutions(&weights, degree);
        }
        if left != right {
            return false;
        }
    }
    true
}

/// Number of ways to write `target` as Σ a_i w_i with all a_i >= 1.
fn count_positive_solutions(weights: &[usize], target: usize) -> usize {
    let base: usize = weights.iter().sum();
    if base > target {
        return 0;
    }
    if weights.is_empty() {
        return usize::from(target == 0);
    }
    // shift a_i -> a_i - 1: count nonnegative solutions of Σ a_i w_i = target - base
    let remaining = target - base;
    let mut ways = vec![0usize; remaining + 1];
    ways[0] = 1;
    for &w in weights {
        for t in w..=remaining {
            ways[t] += ways[t - w];
        }
    }
    ways[remaining]
}

#[derive(Clone, Debug, Default)]
pub struct BatchSummary {
    pub reports: Vec<ConjectureReport>,
    pub equal: usize,
    pub unequal: usize,
    pub inconclusive: usize,
    pub inequality_violations: usize,
}

impl BatchSummary {
    pub fn all_equal(&self) -> bool {
        self.unequal == 0 && self.inconclusive == 0 && self.inequality_violations == 0
    }
}

/// Run the conjecture check over many instances and fields, in parallel.
/// Individual mismatches are recorded, not fatal; the run continues.
pub fn batch(
    instances: &[(String, SimplicialPoset)],
    fields: &[FieldSpec],
    max_degree: Option<usize>,
) -> Result<BatchSummary, Error> {
    let jobs: Vec<(usize, &(String, SimplicialPoset), FieldSpec)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, inst)| fields.iter().map(move |f| (i, inst, *f)))
        .collect();
    let reports: Result<Vec<ConjectureReport>, Error> = jobs
        .par_iter()
        .map(|(_, (name, poset), spec)| match spec {
            FieldSpec::Rationals => {
                check_conjecture(name, poset, &crate::field::Rationals, max_degree)
            }
            FieldSpec::Prime(p) => {
                let field = crate::field::PrimeField::new(*p)?;
                check_conjecture(name, poset, &field, max_degree)
            }
        })
        .collect();
    let reports = reports?;
    let mut summary = BatchSummary::default();
    for r in &reports {
        match &r.verdict {
            Verdict::Equal => summary.equal += 1,
            Verdict::UnequalWithCells(_) => summary.unequal += 1,
            Verdict::Inconclusive(_) => summary.inconclusive += 1,
        }
        if !r.inequality_ok {
            summary.inequality_violations += 1;
        }
    }
    summary.reports = reports;
    Ok(summary)
}

/// Random non-void simplicial complex on at most `max_vertices` vertices.
/// Facet count and sizes are kept small so barycentric subdivisions stay at
/// desk scale.
pub fn random_complex(rng: &mut impl Rng, max_vertices: usize) -> SimplicialComplex {
    let n = rng.gen_range(3..=max_vertices);
    let facet_count = rng.gen_range(1..=5usize);
    let mut facets = Vec::new();
    for _ in 0..facet_count {
        let size = rng.gen_range(1..=4usize.min(n));
        let mut facet: Vec<usize> = Vec::new();
        while facet.len() < size {
            let v = rng.gen_range(1..=n);
            if !facet.contains(&v) {
                facet.push(v);
            }
        }
        facets.push(facet);
    }
    SimplicialComplex::new(n, facets).expect("random faces are valid")
}

/// Random proper coloring of a complex: a random palette size between the
/// balanced minimum (dim + 1) and the vertex count, assigned by rejection with
/// a greedy fallback. Falls back to the trivial coloring if the complex is
/// void.
pub fn random_proper_coloring(rng: &mut impl Rng, complex: &SimplicialComplex) -> crate::complex::Coloring {
    use crate::complex::Coloring;
    let n = complex.vertex_count();
    if complex.is_void() || n == 0 {
        return Coloring::trivial(n);
    }
    let min_colors = (complex.dim().max(0) as usize) + 1;
    let d = rng.gen_range(min_colors..=n);
    for _ in 0..200 {
        let colors: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=d)).collect();
        let candidate = Coloring::new(d, colors).expect("colors in range");
        if candidate.validate_for(complex).is_ok() {
            return candidate;
        }
    }
    // greedy: color vertices in order with the smallest color unused by
    // their neighbours
    let mut colors = vec![0usize; n];
    for v in 1..=n {
        let mut used = vec![false; n + 2];
        for facet in complex.facets() {
            if facet.contains(&v) {
                for &w in facet {
                    if w < v {
                        used[colors[w - 1]] = true;
                    }
                }
            }
        }
        colors[v - 1] = (1..=n).find(|&c| !used[c]).expect("n colors always suffice");
    }
    let d = colors.iter().copied().max().unwrap_or(1);
    let coloring = Coloring::new(d, colors).expect("greedy coloring is valid");
    coloring.validate_for(complex).expect("greedy coloring is proper");
    coloring
}

/// Random simplicial poset: the face poset of a random complex with some
/// maximal cells doubled (glued copies sharing the full boundary), which is
/// exactly the kind of non-meet-semilattice example the face-ring relations
/// care about.
pub fn random_simplicial_poset(rng: &mut impl Rng, max_vertices: usize) -> SimplicialPoset {
    let complex = random_complex(rng, max_vertices);
    let poset = SimplicialPoset::from_facets(&complex).expect("non-void");
    let mut data = poset.to_data();
    let maximal: Vec<String> = poset
        .faces()
        .filter(|&e| poset.covers().iter().all(|&(a, _)| a != e.0))
        .map(|e| poset.id(e).to_string())
        .collect();
    let mut dup = 0usize;
    for id in maximal {
        if rng.gen_bool(0.4) {
            let elt = poset.element_by_id(&id).unwrap();
            let rank = poset.rank(elt);
            if rank == 0 {
                continue;
            }
            let lower: Vec<String> = poset
                .covers()
                .iter()
                .filter(|&&(_, b)| b == elt.0)
                .map(|&(a, _)| poset.id(crate::poset::PosetElt(a)).to_string())
                .collect();
            let new_id = format!("{id}'{dup}");
            dup += 1;
            data.elements.push((new_id.clone(), rank));
            for lo in lower {
                data.covers.push((lo, new_id.clone()));
            }
        }
    }
    data.into_poset().expect("doubled cells keep intervals Boolean")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::Rationals;
    use rand::SeedableRng;

    #[test]
    fn running_example_verdict_equal() {
        let p = catalog::running_example_poset();
        let report = check_conjecture("running_example", &p, &Rationals, None).unwrap();
        assert_eq!(report.verdict, Verdict::Equal);
        assert!(report.passed());
        // both tables: Tor_0 dims (1,2,3,2) in degrees 0-3, Tor_1 (1,1) in 5,6
        assert_eq!(report.table_theta.totals(), vec![8, 2]);
        assert_eq!(report.table_gamma_specialized.totals(), vec![8, 2]);
    }

    #[test]
    fn cm_instances_verdict_equal() {
        for entry in [
            catalog::get("simplex", Some(3), None, None).unwrap(),
            catalog::get("cross_polytope_boundary", Some(2), None, None).unwrap(),
            catalog::get("injective_words", Some(2), None, None).unwrap(),
        ] {
            let report =
                check_conjecture(&entry.name, &entry.poset, &Rationals, None).unwrap();
            assert_eq!(report.verdict, Verdict::Equal, "{}", entry.name);
            assert!(report.passed(), "{}", entry.name);
        }
    }

    #[test]
    fn one_dimensional_instances_verdict_equal() {
        // graphs with doubled edges: the proved 1-dimensional case
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let complex = {
                let c = random_complex(&mut rng, 5);
                c.skeleton(1)
            };
            let poset = SimplicialPoset::from_facets(&complex).unwrap();
            let report = check_conjecture("random graph", &poset, &Rationals, None).unwrap();
            assert_eq!(report.verdict, Verdict::Equal);
        }
    }

    #[test]
    fn batch_over_empty_and_corrupted() {
        let summary = batch(&[], &[FieldSpec::Rationals], None).unwrap();
        assert!(summary.all_equal());
        assert_eq!(summary.reports.len(), 0);
    }

    #[test]
    fn doubled_cells_make_valid_posets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..20 {
            let p = random_simplicial_poset(&mut rng, 6);
            assert!(p.to_data().validate().is_empty());
        }
    }

    #[test]
    fn counting_positive_solutions() {
        assert_eq!(count_positive_solutions(&[], 0), 1);
        assert_eq!(count_positive_solutions(&[], 3), 0);
        assert_eq!(count_positive_solutions(&[1], 4), 1);
        assert_eq!(count_positive_solutions(&[1, 2], 5), 2); // (1,2),(3,1)
        assert_eq!(count_positive_solutions(&[2, 3], 4), 0);
    }
}
