//! Simplicial posets: ranked posets with a unique bottom element whose lower
//! intervals are all Boolean algebras. Cells are identified by opaque string
//! ids, not vertex sets — distinct cells may share a vertex set (two parallel
//! edges between the same endpoints, say), which is exactly what makes these
//! more general than simplicial complexes.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Coloring, SimplicialComplex};
use crate::Error;

/// Handle to a poset element. Index 0 is always the bottom element ∅.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PosetElt(pub usize);

/// Raw poset data as it arrives from JSON or a generator, prior to validation.
///
/// The bottom element may be omitted: it is synthesized with covers to every
/// rank-1 element.
#[derive(Clone, Debug)]
pub struct PosetData {
    pub elements: Vec<(String, usize)>,
    pub covers: Vec<(String, String)>,
}

impl PosetData {
    /// Check all simplicial-poset invariants, returning human-readable
    /// violations (empty means valid). Callers must gate on emptiness.
    pub fn validate(&self) -> Vec<String> {
        match Indexed::build(self) {
            Err(v) => v,
            Ok(ix) => ix.violations(),
        }
    }

    pub fn into_poset(self) -> Result<SimplicialPoset, Error> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidPoset(violations.join("; ")));
        }
        let ix = Indexed::build(&self).expect("validated");
        Ok(SimplicialPoset::from_indexed(ix))
    }
}

/// Index-resolved poset with the order closure, shared by validation and the
/// final structure.
struct Indexed {
    ids: Vec<String>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    /// leq[a][b] == true iff a <= b.
    leq: Vec<Vec<bool>>,
}

impl Indexed {
    fn build(data: &PosetData) -> Result<Indexed, Vec<String>> {
        let mut ids: Vec<String> = Vec::new();
        let mut ranks: Vec<usize> = Vec::new();

        let has_bottom = data.elements.iter().any(|(_, r)| *r == 0);
        if !has_bottom {
            ids.push("∅".to_string());
            ranks.push(0);
        }
        for (id, r) in &data.elements {
            if ids.contains(id) {
                return Err(vec![format!("duplicate element id `{id}`")]);
            }
            ids.push(id.clone());
            ranks.push(*r);
        }
        let index: BTreeMap<&str, usize> =
            ids.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();

        let mut covers: Vec<(usize, usize)> = Vec::new();
        for (lo, hi) in &data.covers {
            let (Some(&a), Some(&b)) = (index.get(lo.as_str()), index.get(hi.as_str())) else {
                return Err(vec![format!("cover ({lo},{hi}) names an unknown element")]);
            };
            covers.push((a, b));
        }
        // synthesized bottom covers every rank-1 element
        if !has_bottom {
            for (i, &r) in ranks.iter().enumerate() {
                if r == 1 {
                    covers.push((0, i));
                }
            }
        }

        // order elements so the bottom is index 0 and ranks are nondecreasing,
        // keeping the original relative order within a rank for stable ids
        let mut perm: Vec<usize> = (0..ids.len()).collect();
        perm.sort_by_key(|&i| (ranks[i], i));
        let inv: BTreeMap<usize, usize> =
            perm.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let ids: Vec<String> = perm.iter().map(|&i| ids[i].clone()).collect();
        let ranks: Vec<usize> = perm.iter().map(|&i| ranks[i]).collect();
        let covers: Vec<(usize, usize)> =
            covers.iter().map(|(a, b)| (inv[a], inv[b])).collect();

        let n = ids.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        // transitive closure in rank order
        let mut by_upper: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(a, b) in &covers {
            by_upper[b].push(a);
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| ranks[i]);
        for &b in &order {
            for &a in &by_upper[b].clone() {
                for x in 0..n {
                    if leq[x][a] {
                        leq[x][b] = true;
                    }
                }
            }
        }
        Ok(Indexed { ids, ranks, covers, leq })
    }

    fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let n = self.ids.len();
        let bottoms: Vec<usize> = (0..n).filter(|&i| self.ranks[i] == 0).collect();
        if bottoms.len() != 1 {
            out.push(format!("expected exactly one rank-0 element, found {}", bottoms.len()));
            return out;
        }
        let bottom = bottoms[0];
        for &(a, b) in &self.covers {
            if self.ranks[b] != self.ranks[a] + 1 {
                out.push(format!(
                    "cover ({}, {}) does not raise rank by one ({} -> {})",
                    self.ids[a], self.ids[b], self.ranks[a], self.ranks[b]
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for x in 0..n {
            if !self.leq[bottom][x] {
                out.push(format!("element {} is not above the bottom", self.ids[x]));
            }
        }
        if !out.is_empty() {
            return out;
        }

        let atoms: Vec<BTreeSet<usize>> = (0..n)
            .map(|x| (0..n).filter(|&a| self.ranks[a] == 1 && self.leq[a][x]).collect())
            .collect();
        for x in 0..n {
            let interval: Vec<usize> = (0..n).filter(|&y| self.leq[y][x]).collect();
            let expected = 1usize << self.ranks[x].min(62);
            if interval.len() != expected {
                out.push(format!(
                    "interval [∅,{}] has {} elements, expected 2^{} = {}",
                    self.ids[x],
                    interval.len(),
                    self.ranks[x],
                    expected
                ));
                continue;
            }
            if atoms[x].len() != self.ranks[x] {
                out.push(format!(
                    "element {} of rank {} has {} atoms below it",
                    self.ids[x],
                    self.ranks[x],
                    atoms[x].len()
                ));
                continue;
            }
            for &y in &interval {
                for &z in &interval {
                    let by_order = self.leq[y][z];
                    let by_atoms = atoms[y].is_subset(&atoms[z]);
                    if by_order != by_atoms {
                        out.push(format!(
                            "interval [∅,{}] is not Boolean: {} vs {} (order {} but atom containment {})",
                            self.ids[x], self.ids[y], self.ids[z], by_order, by_atoms
                        ));
                    }
                }
            }
        }
        out
    }
}

/// How a pair of elements multiplies in the face ring: either they have no
/// common upper bound (relation (a): the product is zero) or they have a meet
/// and a nonempty antichain of minimal upper bounds (relation (b)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairRule {
    NoUpperBound,
    MeetAndJoins { meet: PosetElt, mubs: Vec<PosetElt> },
}

/// A validated simplicial poset with precomputed order, meet, and
/// minimal-upper-bound tables. Immutable after construction; all queries are
/// pure and safe to call from many threads.
#[derive(Clone, Debug)]
pub struct SimplicialPoset {
    ids: Vec<String>,
    ranks: Vec<usize>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
    atoms: Vec<Vec<usize>>,
    /// pair_rules[a * n + b] for a <= b indices, only for incomparable pairs;
    /// comparable pairs are None.
    pair_rules: Vec<Option<PairRule>>,
}

impl SimplicialPoset {
    pub fn new(
        elements: Vec<(String, usize)>,
        covers: Vec<(String, String)>,
    ) -> Result<Self, Error> {
        PosetData { elements, covers }.into_poset()
    }

    fn from_indexed(ix: Indexed) -> Self {
        let n = ix.ids.len();
        let atoms: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).filter(|&a| ix.ranks[a] == 1 && ix.leq[a][x]).collect())
            .collect();
        let mut pair_rules = vec![None; n * n];
        for a in 0..n {
            for b in 0..n {
                if ix.leq[a][b] || ix.leq[b][a] {
                    continue; // comparable: no rewriting needed
                }
                let uppers: Vec<usize> =
                    (0..n).filter(|&g| ix.leq[a][g] && ix.leq[b][g]).collect();
                let rule = if uppers.is_empty() {
                    PairRule::NoUpperBound
                } else {
                    let mubs: Vec<PosetElt> = uppers
                        .iter()
                        .copied()
                        .filter(|&g| !uppers.iter().any(|&h| h != g && ix.leq[h][g]))
                        .map(PosetElt)
                        .collect();
                    // the meet is the common lower bound whose atoms are the
                    // intersection; it exists inside any Boolean interval
                    // containing both
                    let meet_atoms: BTreeSet<usize> = atoms[a]
                        .iter()
                        .copied()
                        .filter(|v| atoms[b].contains(v))
                        .collect();
                    let meet = (0..n)
                        .find(|&m| {
                            ix.leq[m][a]
                                && ix.leq[m][b]
                                && atoms[m].len() == meet_atoms.len()
                                && atoms[m].iter().all(|v| meet_atoms.contains(v))
                        })
                        .expect("meet exists below a common upper bound");
                    PairRule::MeetAndJoins { meet: PosetElt(meet), mubs }
                };
                pair_rules[a * n + b] = Some(rule);
            }
        }
        SimplicialPoset {
            ids: ix.ids,
            ranks: ix.ranks,
            covers: ix.covers,
            leq: ix.leq,
            atoms,
            pair_rules,
        }
    }

    /// Face poset of a simplicial complex, ordered by inclusion; ρ(F) = #F.
    /// The void complex is rejected (there is no bottom face).
    pub fn from_facets(complex: &SimplicialComplex) -> Result<Self, Error> {
        if complex.is_void() {
            return Err(Error::InvalidInput(
                "void complex has no face poset (no bottom element)".into(),
            ));
        }
        let faces = complex.all_faces();
        let id_of = |f: &[usize]| -> String {
            if f.is_empty() {
                "∅".to_string()
            } else if complex.vertex_count() <= 9 {
                f.iter().map(|v| v.to_string()).collect()
            } else {
                f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")
            }
        };
        let elements: Vec<(String, usize)> =
            faces.iter().map(|f| (id_of(f), f.len())).collect();
        let mut covers = Vec::new();
        for f in &faces {
            if f.is_empty() {
                continue;
            }
            for pos in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(pos);
                covers.push((id_of(&sub), id_of(f)));
            }
        }
        SimplicialPoset::new(elements, covers)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn bottom(&self) -> PosetElt {
        PosetElt(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = PosetElt> + '_ {
        (0..self.len()).map(PosetElt)
    }

    /// Elements above the bottom, i.e. the nonempty faces.
    pub fn faces(&self) -> impl Iterator<Item = PosetElt> + '_ {
        (1..self.len()).map(PosetElt)
    }

    pub fn id(&self, e: PosetElt) -> &str {
        &self.ids[e.0]
    }

    pub fn rank(&self, e: PosetElt) -> usize {
        self.ranks[e.0]
    }

    /// d = max rank = 1 + dimension of the cell complex. 0 for the poset {∅}.
    pub fn max_rank(&self) -> usize {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn element_by_id(&self, id: &str) -> Result<PosetElt, Error> {
        self.ids
            .iter()
            .position(|s| s == id)
            .map(PosetElt)
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    pub fn leq(&self, a: PosetElt, b: PosetElt) -> bool {
        self.leq[a.0][b.0]
    }

    pub fn comparable(&self, a: PosetElt, b: PosetElt) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Rank-1 elements below `e`.
    pub fn atoms(&self, e: PosetElt) -> Vec<PosetElt> {
        self.atoms[e.0].iter().map(|&i| PosetElt(i)).collect()
    }

    /// The straightening rule for an incomparable pair, `None` when the pair is
    /// comparable (no rewriting applies).
    pub fn pair_rule(&self, a: PosetElt, b: PosetElt) -> Option<&PairRule> {
        self.pair_rules[a.0 * self.len() + b.0].as_ref()
    }

    /// Meet of two elements: `None` when they have no common upper bound,
    /// otherwise the greatest common lower bound (possibly the bottom ∅, which
    /// is a legitimate value distinct from "no upper bound").
    pub fn meet(&self, a: PosetElt, b: PosetElt) -> Option<PosetElt> {
        if self.leq(a, b) {
            return Some(a);
        }
        if self.leq(b, a) {
            return Some(b);
        }
        match self.pair_rule(a, b) {
            Some(PairRule::NoUpperBound) => None,
            Some(PairRule::MeetAndJoins { meet, .. }) => Some(*meet),
            None => unreachable!("incomparable pair must have a rule"),
        }
    }

    /// The antichain of minimal common upper bounds; empty iff relation (a)
    /// applies.
    pub fn minimal_upper_bounds(&self, a: PosetElt, b: PosetElt) -> Vec<PosetElt> {
        if self.leq(a, b) {
            return vec![b];
        }
        if self.leq(b, a) {
            return vec![a];
        }
        match self.pair_rule(a, b) {
            Some(PairRule::NoUpperBound) => Vec::new(),
            Some(PairRule::MeetAndJoins { mubs, .. }) => mubs.clone(),
            None => unreachable!("incomparable pair must have a rule"),
        }
    }

    /// Restriction to elements of rank <= i+1.
    pub fn skeleton(&self, i: isize) -> SimplicialPoset {
        assert!(i >= -1);
        let keep: Vec<bool> =
            self.ranks.iter().map(|&r| (r as isize) <= i + 1).collect();
        let elements: Vec<(String, usize)> = self
            .ids
            .iter()
            .zip(&self.ranks)
            .enumerate()
            .filter(|(idx, _)| keep[*idx])
            .map(|(_, (id, r))| (id.clone(), *r))
            .collect();
        let covers: Vec<(String, String)> = self
            .covers
            .iter()
            .filter(|(a, b)| keep[*a] && keep[*b])
            .map(|(a, b)| (self.ids[*a].clone(), self.ids[*b].clone()))
            .collect();
        SimplicialPoset::new(elements, covers).expect("skeleton of a valid poset is valid")
    }

    /// The barycentric subdivision: the order complex of P \ {∅}, whose
    /// vertices are the nonempty cells (vertex i = poset index i) and whose
    /// faces are the chains, together with the rank coloring κ(F) = ρ(F).
    ///
    /// The coloring is automatically proper and balanced.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Coloring) {
        let n = self.len() - 1; // nonbottom elements, poset index i <-> vertex i
        let d = self.max_rank();
        let colors: Vec<usize> = (1..=n).map(|i| self.ranks[i]).collect();
        let coloring = Coloring::new(d.max(1), colors).expect("ranks are valid colors");

        // facets = maximal chains, built by ascending through covers from atoms
        let mut upper: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for &(a, b) in &self.covers {
            upper[a].push(b);
        }
        for u in upper.iter_mut() {
            u.sort_unstable();
        }
        let mut facets: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = self
            .faces()
            .filter(|&e| self.rank(e) == 1)
            .map(|e| vec![e.0])
            .collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().unwrap();
            if upper[last].is_empty() {
                facets.push(chain);
            } else {
                for &nxt in &upper[last] {
                    let mut c = chain.clone();
                    c.push(nxt);
                    stack.push(c);
                }
            }
        }
        if n == 0 {
            // the poset {∅} subdivides to the empty complex {∅}
            return (
                SimplicialComplex::empty_complex(0),
                Coloring::new(1, Vec::new()).expect("empty coloring"),
            );
        }
        let complex = SimplicialComplex::new(n, facets).expect("chains are valid faces");
        (complex, coloring)
    }

    /// The id strings of a chain of elements, for rendering monomials.
    pub fn chain_ids(&self, chain: &[PosetElt]) -> Vec<String> {
        chain.iter().map(|e| self.id(*e).to_string()).collect()
    }

    pub fn to_data(&self) -> PosetData {
        PosetData {
            elements: self
                .ids
                .iter()
                .zip(&self.ranks)
                .map(|(id, r)| (id.clone(), *r))
                .collect(),
            covers: self
                .covers
                .iter()
                .map(|(a, b)| (self.ids[*a].clone(), self.ids[*b].clone()))
                .collect(),
        }
    }
}

impl PartialEq for SimplicialPoset {
    fn eq(&self, other: &Self) -> bool {
        self.ids == other.ids && self.ranks == other.ranks && {
            let mut a = self.covers.clone();
            let mut b = other.covers.clone();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn face_poset_of_complex_is_valid() {
        let c = catalog::running_example_complex();
        let p = SimplicialPoset::from_facets(&c).unwrap();
        assert_eq!(p.len(), 1 + 8 + 14 + 6);
        assert_eq!(p.max_rank(), 3);
    }

    #[test]
    fn boolean_algebra_from_simplex() {
        let c = SimplicialComplex::new(3, vec![vec![1, 2, 3]]).unwrap();
        let p = SimplicialPoset::from_facets(&c).unwrap();
        assert_eq!(p.len(), 8);
        let triangle =
            SimplicialComplex::new(3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        assert_eq!(SimplicialPoset::from_facets(&triangle).unwrap().len(), 7);
    }

    #[test]
    fn void_complex_rejected() {
        assert!(SimplicialPoset::from_facets(&SimplicialComplex::void(3)).is_err());
    }

    #[test]
    fn broken_interval_is_flagged() {
        // ∅ < a < t with ρ(t) = 2: interval [∅,t] has 3 elements, not 4
        let data = PosetData {
            elements: vec![("a".into(), 1), ("t".into(), 2)],
            covers: vec![("a".into(), "t".into())],
        };
        let violations = data.validate();
        assert!(violations.iter().any(|v| v.contains("expected 2^2")), "{violations:?}");
    }

    #[test]
    fn cover_rank_jump_is_flagged() {
        let data = PosetData {
            elements: vec![("a".into(), 1), ("t".into(), 3)],
            covers: vec![("a".into(), "t".into())],
        };
        assert!(!data.validate().is_empty());
    }

    #[test]
    fn injective_words_two() {
        let p = catalog::injective_words(2);
        assert_eq!(p.len(), 5);
        let e1 = p.element_by_id("1").unwrap();
        let e2 = p.element_by_id("2").unwrap();
        let e12 = p.element_by_id("12").unwrap();
        let e21 = p.element_by_id("21").unwrap();
        // 1 and 2 lie under both 12 and 21: meet ∅, two minimal upper bounds
        assert_eq!(p.meet(e1, e2), Some(p.bottom()));
        assert_eq!(p.minimal_upper_bounds(e1, e2), vec![e12, e21]);
        // 12 and 21 have no common upper bound at all
        assert_eq!(p.meet(e12, e21), None);
        assert!(p.minimal_upper_bounds(e12, e21).is_empty());
        // comparable pairs
        assert_eq!(p.meet(e1, e1), Some(e1));
        assert_eq!(p.minimal_upper_bounds(e1, e12), vec![e12]);
        assert!(p.element_by_id("99").is_err());
    }

    #[test]
    fn injective_words_has_factorial_top_cells() {
        for n in 1..=4usize {
            let p = catalog::injective_words(n);
            let top: Vec<_> = p.faces().filter(|&e| p.rank(e) == n).collect();
            let factorial: usize = (1..=n).product();
            assert_eq!(top.len(), factorial);
        }
    }

    #[test]
    fn rank_additivity_for_mubs() {
        let p = catalog::running_example_poset();
        for a in p.faces() {
            for b in p.faces() {
                if p.comparable(a, b) {
                    continue;
                }
                if let Some(PairRule::MeetAndJoins { meet, mubs }) =
                    p.pair_rule(a, b)
                {
                    for g in mubs {
                        assert_eq!(
                            p.rank(a) + p.rank(b),
                            p.rank(*meet) + p.rank(*g),
                            "rank additivity fails at ({}, {})",
                            p.id(a),
                            p.id(b)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn skeleton_restricts_ranks() {
        let p = catalog::injective_words(2);
        let sk = p.skeleton(0);
        assert_eq!(sk.len(), 3); // ∅ plus the two letters
        assert_eq!(p.skeleton((p.max_rank() as isize) - 1), p);
    }

    #[test]
    fn subdivision_of_injective_words_two_is_a_square() {
        let (sd, coloring) = catalog::injective_words(2).barycentric_subdivision();
        // 4 vertices, 4 edges: the boundary of a square
        assert_eq!(sd.faces_of_dim(0).len(), 4);
        assert_eq!(sd.faces_of_dim(1).len(), 4);
        assert_eq!(sd.dim(), 1);
        assert_eq!(coloring.num_colors(), 2);
        coloring.validate_for(&sd).unwrap();
    }

    #[test]
    fn subdivision_of_segment_poset_is_path() {
        let c = SimplicialComplex::new(2, vec![vec![1, 2]]).unwrap();
        let p = SimplicialPoset::from_facets(&c).unwrap();
        let (sd, _) = p.barycentric_subdivision();
        // vertices 1, 2, 12; edges {1,12} and {2,12}
        assert_eq!(sd.faces_of_dim(0).len(), 3);
        assert_eq!(sd.faces_of_dim(1).len(), 2);
    }

    #[test]
    fn subdivision_matches_order_complex_of_face_poset() {
        let c = catalog::delta_family(3, 2).unwrap();
        let p = SimplicialPoset::from_facets(&c).unwrap();
        let (sd, coloring) = p.barycentric_subdivision();
        coloring.validate_for(&sd).unwrap();
        // chain count check: faces of sd = chains in P minus bottom
        let mut chains = 0usize;
        let n = p.len();
        // count chains by DFS over the order relation
        fn count_chains(p: &SimplicialPoset, last: usize, n: usize) -> usize {
            let mut total = 1; // the chain ending here
            for next in last + 1..n {
                if p.leq(PosetElt(last), PosetElt(next)) && last != next {
                    total += count_chains(p, next, n);
                }
            }
            total
        }
        for start in 1..n {
            chains += count_chains(&p, start, n);
        }
        assert_eq!(sd.face_count(), chains + 1); // plus the empty face
    }

    #[test]
    fn running_example_poset_subdivides_to_running_example_complex() {
        let p = catalog::running_example_poset();
        let (sd, coloring) = p.barycentric_subdivision();
        assert_eq!(sd, catalog::running_example_complex());
        assert_eq!(coloring, catalog::running_example_coloring());
    }
}
