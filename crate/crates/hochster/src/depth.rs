//! Three independent depth computations for face rings and their
//! cross-validation.
//!
//! * Duval's criterion: depth = max{δ : the (δ-1)-skeleton is Cohen-Macaulay}.
//!   Exact, no degree bound; this is the authoritative value.
//! * Regular sequences: the largest δ with vanishing positive Koszul homology
//!   of (θ_1,..,θ_δ) in all degrees up to a bound. A nonzero class is a
//!   definitive disproof of regularity (witness recorded); all-zero is only
//!   "regular up to the bound".
//! * Auslander-Buchsbaum: d minus the projective dimension read off a Betti
//!   table.

use crate::betti::BettiTable;
use crate::cohomology::poset_is_cohen_macaulay;
use crate::facering::FaceRing;
use crate::field::{Field, FieldSpec};
use crate::koszul::{default_theta_bound, theta_koszul_homology, ThetaMatrices};
use crate::poset::SimplicialPoset;
use crate::Error;

/// Outcome of the regular-sequence check for one prefix (θ_1,..,θ_δ).
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum PrefixStatus {
    /// No positive Koszul homology in any degree <= the bound (semi-decision).
    RegularUpToBound,
    /// Nonzero Koszul homology: a zero-divisor witness. `m` is the homological
    /// index, `degree` the smallest total degree where it appears.
    Fails { m: usize, degree: usize, dim: usize },
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct DepthReport {
    pub field: FieldSpec,
    /// Number of parameters = max rank = Krull dimension of the face ring.
    pub d: usize,
    pub duval_depth: usize,
    pub regseq_depth: usize,
    /// statuses[δ-1] is the status of the prefix (θ_1,..,θ_δ).
    pub prefix_statuses: Vec<PrefixStatus>,
    pub ab_depth: usize,
    /// Degree bound the regular-sequence check ran at (after any automatic
    /// increase).
    pub bound: usize,
    pub agreement: bool,
}

/// Duval's criterion: the largest δ such that the (δ-1)-skeleton of the cell
/// complex is Cohen-Macaulay over the field.
pub fn depth_duval<F: Field>(poset: &SimplicialPoset, field: &F) -> Result<usize, Error> {
    if poset.len() <= 1 {
        return Err(Error::InvalidInput(
            "depth of the empty poset's face ring is out of scope".into(),
        ));
    }
    let d = poset.max_rank();
    for delta in (1..=d).rev() {
        let skeleton = poset.skeleton(delta as isize - 1);
        if poset_is_cohen_macaulay(&skeleton, field)? {
            return Ok(delta);
        }
    }
    // cannot happen: the 0-skeleton (points) is always Cohen-Macaulay
    unreachable!("0-skeleton of a nonempty complex is Cohen-Macaulay")
}

/// Regular-sequence statuses for all prefixes (θ_1,..,θ_δ), δ = 1..=d, each
/// checked in every degree <= `max_degree`.
pub fn depth_regseq<F: Field>(
    poset: &SimplicialPoset,
    field: &F,
    max_degree: usize,
) -> Result<(usize, Vec<PrefixStatus>), Error> {
    if poset.len() <= 1 {
        return Err(Error::InvalidInput(
            "depth of the empty poset's face ring is out of scope".into(),
        ));
    }
    let d = poset.max_rank();
    let ring = FaceRing::new(poset, field.clone());
    let matrices = ThetaMatrices::build(&ring, d, max_degree);
    let mut statuses = Vec::with_capacity(d);
    for delta in 1..=d {
        let table = theta_koszul_homology(&ring, delta, max_degree, &matrices)?;
        let failure = table
            .iter()
            .filter(|(m, _, _)| *m >= 1)
            .map(|(m, deg, dim)| (deg.specialized_weight(), m, dim))
            .min();
        statuses.push(match failure {
            None => PrefixStatus::RegularUpToBound,
            Some((degree, m, dim)) => PrefixStatus::Fails { m, degree, dim },
        });
    }
    // regular sequences are prefix-closed in this graded setting: report the
    // statuses monotonically even if truncation were to hide a tail witness
    let mut failed = false;
    for status in statuses.iter_mut() {
        if matches!(status, PrefixStatus::Fails { .. }) {
            failed = true;
        } else if failed {
            *status = PrefixStatus::Fails { m: 1, degree: max_degree + 1, dim: 0 };
        }
    }
    let depth = statuses
        .iter()
        .take_while(|s| matches!(s, PrefixStatus::RegularUpToBound))
        .count();
    Ok((depth, statuses))
}

/// Auslander-Buchsbaum: d - max{m : Tor_m != 0} for a parameter-ring Betti
/// table carrying its own d.
pub fn depth_ab(table: &BettiTable) -> Result<usize, Error> {
    let Some(pd) = table.projective_dimension() else {
        return Err(Error::InvalidInput("empty Betti table has no projective dimension".into()));
    };
    Ok(table.d - pd)
}

/// Run all three computations and cross-validate.
///
/// The Auslander-Buchsbaum value is read from the exact colorful-parameter
/// table of the barycentric subdivision (depth is a topological invariant, so
/// it computes the same number). If the regular-sequence semi-decision comes
/// back *larger* than Duval's exact value, the witness lies above the bound;
/// the bound is doubled a few times before giving up.
pub fn depth_report<F: Field>(
    poset: &SimplicialPoset,
    field: &F,
    max_degree: Option<usize>,
) -> Result<DepthReport, Error> {
    let d = poset.max_rank();
    let duval = depth_duval(poset, field)?;

    let (sd, coloring) = poset.barycentric_subdivision();
    let gamma = crate::koszul::gamma_tor_hochster(&sd, &coloring, field)?;
    let ab = depth_ab(&gamma)?;

    let mut bound = max_degree.unwrap_or_else(|| default_theta_bound(d));
    let (mut regseq, mut statuses) = depth_regseq(poset, field, bound)?;
    for _ in 0..3 {
        if regseq <= duval {
            break;
        }
        bound *= 2;
        (regseq, statuses) = depth_regseq(poset, field, bound)?;
    }

    let agreement = duval == ab && duval == regseq;
    Ok(DepthReport {
        field: field.spec(),
        d,
        duval_depth: duval,
        regseq_depth: regseq,
        prefix_statuses: statuses,
        ab_depth: ab,
        bound,
        agreement,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::field::{PrimeField, Rationals};

    #[test]
    fn duval_depth_of_running_example() {
        let p = catalog::running_example_poset();
        assert_eq!(depth_duval(&p, &Rationals).unwrap(), 2);
        // face poset of the subdivision computes the same depth
        let fp = crate::poset::SimplicialPoset::from_facets(
            &catalog::running_example_complex(),
        )
        .unwrap();
        assert_eq!(depth_duval(&fp, &Rationals).unwrap(), 2);
    }

    #[test]
    fn duval_depth_of_delta_family() {
        for (d, delta) in [(2, 1), (3, 1), (3, 2), (3, 3), (4, 2)] {
            let c = catalog::delta_family(d, delta).unwrap();
            let p = crate::poset::SimplicialPoset::from_facets(&c).unwrap();
            assert_eq!(
                depth_duval(&p, &Rationals).unwrap(),
                delta,
                "delta_family({d},{delta})"
            );
        }
    }

    #[test]
    fn cm_posets_have_full_depth() {
        for n in 1..=3 {
            let p = catalog::injective_words(n);
            assert_eq!(depth_duval(&p, &Rationals).unwrap(), n);
        }
    }

    #[test]
    fn regseq_statuses_of_running_example() {
        let p = catalog::running_example_poset();
        let (depth, statuses) = depth_regseq(&p, &Rationals, 9).unwrap();
        assert_eq!(depth, 2);
        assert_eq!(statuses[0], PrefixStatus::RegularUpToBound);
        assert_eq!(statuses[1], PrefixStatus::RegularUpToBound);
        // prefix 3 fails: Koszul H_1 of (θ_1,θ_2,θ_3) is nonzero first in degree 5
        assert_eq!(statuses[2], PrefixStatus::Fails { m: 1, degree: 5, dim: 1 });
    }

    #[test]
    fn regseq_witness_for_delta_family() {
        // θ_{δ+1} is a zero-divisor killed by x_0: the Koszul cycle
        // y_{x_0} ⊗ e_{δ+1} lives in degree 1 + (δ+1)
        let (d, delta) = (3usize, 1usize);
        let c = catalog::delta_family(d, delta).unwrap();
        let p = crate::poset::SimplicialPoset::from_facets(&c).unwrap();
        let (depth, statuses) = depth_regseq(&p, &Rationals, 9).unwrap();
        assert_eq!(depth, delta);
        match statuses[delta] {
            PrefixStatus::Fails { m: 1, degree, dim } => {
                assert!(dim >= 1);
                assert!(degree <= 1 + (delta + 1), "witness degree {degree}");
            }
            ref other => panic!("prefix {} should fail: {other:?}", delta + 1),
        }
    }

    #[test]
    fn ab_depth_from_tables() {
        // trivial-coloring table of the running example: pd 6 on 8 colors
        let c = catalog::running_example_complex();
        let k = crate::complex::Coloring::trivial(8);
        let t = crate::koszul::gamma_tor_hochster(&c, &k, &Rationals).unwrap();
        assert_eq!(depth_ab(&t).unwrap(), 2);
        // Theta table of the running-example poset: pd 1 on 3 parameters
        let p = catalog::running_example_poset();
        let tt = crate::koszul::theta_tor(&p, &Rationals, 9).unwrap();
        assert_eq!(depth_ab(&tt).unwrap(), 2);
        let empty = BettiTable::new(3, FieldSpec::Rationals, crate::betti::ParamSystem::Theta, None);
        assert!(depth_ab(&empty).is_err());
    }

    #[test]
    fn three_way_agreement_on_catalog() {
        for entry in catalog::standard_batch() {
            if entry.poset.len() <= 1 {
                continue;
            }
            let report = depth_report(&entry.poset, &Rationals, None).unwrap();
            assert!(
                report.agreement,
                "{}: duval {} regseq {} ab {}",
                entry.name, report.duval_depth, report.regseq_depth, report.ab_depth
            );
            let report2 = depth_report(&entry.poset, &PrimeField::new(2).unwrap(), None).unwrap();
            assert!(report2.agreement, "{} over F2", entry.name);
        }
    }

    #[test]
    fn depth_rejects_empty_poset() {
        let p = crate::poset::SimplicialPoset::from_facets(
            &crate::complex::SimplicialComplex::empty_complex(0),
        )
        .unwrap();
        assert!(depth_duval(&p, &Rationals).is_err());
        assert!(depth_regseq(&p, &Rationals, 5).is_err());
    }
}
