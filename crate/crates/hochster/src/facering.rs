//! Arithmetic in the face ring k[Δ] of a simplicial poset: standard monomials,
//! the straightening rewriting system, the universal parameters Θ, and
//! graded-component enumeration.
//!
//! The relations are quadratic: y_F y_F' = 0 when F, F' have no common upper
//! bound, and otherwise y_F y_F' = y_{F∧F'} Σ_G y_G over the minimal upper
//! bounds G, with y_∅ = 1 applied eagerly. Products of variables supported on
//! a chain need no rewriting; those are the standard monomials, a k-basis.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::poset::{PairRule, PosetElt, SimplicialPoset};
use crate::Error;

/// A standard monomial `y_{F_1}^{a_1} ... y_{F_l}^{a_l}` with
/// `F_1 < ... < F_l` a strict chain in P \ {∅} and all exponents >= 1.
/// The empty chain is the monomial 1.
///
/// Chains have strictly increasing rank, and element indices are sorted by
/// rank, so the factor list is strictly increasing by index; lexicographic
/// order on the factor list is the canonical term order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct StdMonomial {
    factors: Vec<(usize, u32)>,
}

impl StdMonomial {
    pub fn one() -> Self {
        StdMonomial { factors: Vec::new() }
    }

    pub fn variable(e: PosetElt) -> Self {
        StdMonomial { factors: vec![(e.0, 1)] }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (PosetElt, u32)> + '_ {
        self.factors.iter().map(|&(e, a)| (PosetElt(e), a))
    }

    /// The N-degree Σ a_i ρ(F_i).
    pub fn degree(&self, poset: &SimplicialPoset) -> usize {
        self.factors
            .iter()
            .map(|&(e, a)| a as usize * poset.rank(PosetElt(e)))
            .sum()
    }

    /// The N^d multidegree Σ a_i ε_{ρ(F_i)}, as a vector indexed by rank-1.
    pub fn multidegree(&self, poset: &SimplicialPoset) -> Vec<u32> {
        let mut b = vec![0u32; poset.max_rank()];
        for &(e, a) in &self.factors {
            b[poset.rank(PosetElt(e)) - 1] += a;
        }
        b
    }

    /// The underlying multiset of elements, exponents expanded.
    fn expand(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(e, a) in &self.factors {
            for _ in 0..a {
                out.push(e);
            }
        }
        out
    }

    fn from_sorted_multiset(ms: &[usize]) -> Self {
        let mut factors: Vec<(usize, u32)> = Vec::new();
        for &e in ms {
            match factors.last_mut() {
                Some((last, a)) if *last == e => *a += 1,
                _ => factors.push((e, 1)),
            }
        }
        StdMonomial { factors }
    }

    pub fn render(&self, poset: &SimplicialPoset) -> String {
        if self.is_one() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|&(e, a)| {
                let id = poset.id(PosetElt(e));
                if a == 1 {
                    format!("y_{id}")
                } else {
                    format!("y_{id}^{a}")
                }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A canonical-form polynomial: standard monomials with nonzero field
/// coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct FacePolynomial<F: Field> {
    terms: BTreeMap<StdMonomial, F::Elem>,
}

impl<F: Field> FacePolynomial<F> {
    pub fn zero() -> Self {
        FacePolynomial { terms: BTreeMap::new() }
    }

    pub fn one(field: &F) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(StdMonomial::one(), field.one());
        FacePolynomial { terms }
    }

    pub fn monomial(field: &F, m: StdMonomial) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, field.one());
        FacePolynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&StdMonomial, &F::Elem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &StdMonomial) -> Option<&F::Elem> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, field: &F, m: StdMonomial, c: F::Elem) {
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                if !field.is_zero(&c) {
                    e.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                field.add_assign(e.get_mut(), &c);
                if field.is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, field: &F, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, field: &F, c: &F::Elem) -> Self {
        if field.is_zero(c) {
            return Self::zero();
        }
        FacePolynomial {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), field.mul(v, c))).collect(),
        }
    }

    pub fn render(&self, poset: &SimplicialPoset) -> String
    where
        F::Elem: std::fmt::Display,
    {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms
            .iter()
            .map(|(m, c)| {
                let cs = c.to_string();
                if cs == "1" {
                    m.render(poset)
                } else if m.is_one() {
                    cs
                } else {
                    format!("{cs}*{}", m.render(poset))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Which incomparable pair to rewrite first. Confluence makes the choice
/// semantically irrelevant; two fixed strategies are kept around so tests can
/// compare their outputs on random inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewriteStrategy {
    /// The lexicographically smallest incomparable pair by (rank, id) — the
    /// production strategy.
    LexSmallestPair,
    /// The pair with the largest combined rank, ties toward lexicographically
    /// larger ids.
    HighestRankPair,
}

/// The face ring of a simplicial poset over a field: a thin context pairing
/// the poset's precomputed meet/join tables with coefficient arithmetic.
pub struct FaceRing<'a, F: Field> {
    poset: &'a SimplicialPoset,
    field: F,
}

impl<'a, F: Field> FaceRing<'a, F> {
    pub fn new(poset: &'a SimplicialPoset, field: F) -> Self {
        FaceRing { poset, field }
    }

    pub fn poset(&self) -> &SimplicialPoset {
        self.poset
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Canonical standard-monomial expansion of the product Π y_F over a
    /// multiset of nonempty faces.
    pub fn straighten(&self, faces: &[PosetElt]) -> Result<FacePolynomial<F>, Error> {
        self.straighten_with(faces, RewriteStrategy::LexSmallestPair)
    }

    pub fn straighten_with(
        &self,
        faces: &[PosetElt],
        strategy: RewriteStrategy,
    ) -> Result<FacePolynomial<F>, Error> {
        for f in faces {
            if f.0 >= self.poset.len() {
                return Err(Error::UnknownElement(format!("#{}", f.0)));
            }
            if *f == self.poset.bottom() {
                return Err(Error::InvalidInput(
                    "y_∅ = 1 is not a face-ring variable; drop it from the product".into(),
                ));
            }
        }
        let mut start: Vec<usize> = faces.iter().map(|f| f.0).collect();
        start.sort_unstable();
        let total_rank: usize =
            start.iter().map(|&e| self.poset.rank(PosetElt(e))).sum();

        // Each rule-(b) rewrite strictly increases Σ ρ(F)^2 while preserving
        // Σ ρ(F), so runs terminate; the fuel bound is a loud guard against a
        // broken poset table.
        let mut fuel: u64 =
            1_000 + 64 * (total_rank as u64 + 1).pow(2) * (self.poset.len() as u64 + 1);

        let mut work: BTreeMap<Vec<usize>, F::Elem> = BTreeMap::new();
        work.insert(start, self.field.one());
        let mut result = FacePolynomial::zero();

        while let Some((ms, coeff)) = pop_first(&mut work) {
            match self.find_pair(&ms, strategy) {
                None => {
                    let m = StdMonomial::from_sorted_multiset(&ms);
                    debug_assert_eq!(m.degree(self.poset), total_rank, "straightening must be N-homogeneous");
                    result.add_term(&self.field, m, coeff);
                }
                Some((a, b)) => {
                    assert!(fuel > 0, "straightening fuel exhausted: rewriting does not terminate");
                    fuel -= 1;
                    let rule = self
                        .poset
                        .pair_rule(PosetElt(a), PosetElt(b))
                        .expect("pair chosen incomparable");
                    match rule {
                        PairRule::NoUpperBound => {} // relation (a): the term dies
                        PairRule::MeetAndJoins { meet, mubs } => {
                            for g in mubs {
                                let mut next: Vec<usize> = Vec::with_capacity(ms.len() + 1);
                                let (mut dropped_a, mut dropped_b) = (false, false);
                                for &e in &ms {
                                    if e == a && !dropped_a {
                                        dropped_a = true;
                                    } else if e == b && !dropped_b {
                                        dropped_b = true;
                                    } else {
                                        next.push(e);
                                    }
                                }
                                if *meet != self.poset.bottom() {
                                    next.push(meet.0); // relation (c) drops y_∅
                                }
                                next.push(g.0);
                                next.sort_unstable();
                                match work.entry(next) {
                                    std::collections::btree_map::Entry::Vacant(e) => {
                                        e.insert(coeff.clone());
                                    }
                                    std::collections::btree_map::Entry::Occupied(mut e) => {
                                        self.field.add_assign(e.get_mut(), &coeff);
                                        if self.field.is_zero(e.get()) {
                                            e.remove();
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(result)
    }

    /// The incomparable pair the strategy selects, or None when the multiset
    /// is supported on a chain.
    fn find_pair(&self, ms: &[usize], strategy: RewriteStrategy) -> Option<(usize, usize)> {
        let mut distinct: Vec<usize> = ms.to_vec();
        distinct.dedup();
        let mut best: Option<(usize, usize)> = None;
        for (i, &a) in distinct.iter().enumerate() {
            for &b in &distinct[i + 1..] {
                if self.poset.comparable(PosetElt(a), PosetElt(b)) {
                    continue;
                }
                let better = match (strategy, best) {
                    (_, None) => true,
                    (RewriteStrategy::LexSmallestPair, Some((x, y))) => {
                        self.pair_key(a, b) < self.pair_key(x, y)
                    }
                    (RewriteStrategy::HighestRankPair, Some((x, y))) => {
                        let rank = |e: usize| self.poset.rank(PosetElt(e));
                        let cand = (rank(a) + rank(b), self.pair_key(a, b));
                        let cur = (rank(x) + rank(y), self.pair_key(x, y));
                        cand.0 > cur.0 || (cand.0 == cur.0 && cand.1 > cur.1)
                    }
                };
                if better {
                    best = Some((a, b));
                }
            }
        }
        best
    }

    fn pair_key(&self, a: usize, b: usize) -> ((usize, String), (usize, String)) {
        let key = |e: usize| {
            (self.poset.rank(PosetElt(e)), self.poset.id(PosetElt(e)).to_string())
        };
        let (ka, kb) = (key(a), key(b));
        if ka <= kb {
            (ka, kb)
        } else {
            (kb, ka)
        }
    }

    /// Bilinear extension of straightening to canonical polynomials.
    pub fn multiply(
        &self,
        p: &FacePolynomial<F>,
        q: &FacePolynomial<F>,
    ) -> Result<FacePolynomial<F>, Error> {
        let mut out = FacePolynomial::zero();
        for (m1, c1) in p.terms() {
            for (m2, c2) in q.terms() {
                let mut ms: Vec<PosetElt> =
                    m1.expand().into_iter().map(PosetElt).collect();
                ms.extend(m2.expand().into_iter().map(PosetElt));
                let expanded = self.straighten(&ms)?;
                let scaled = expanded.scale(&self.field, &self.field.mul(c1, c2));
                out = out.add(&self.field, &scaled);
            }
        }
        Ok(out)
    }

    /// The universal parameter θ_j = Σ_{ρ(F)=j} y_F.
    pub fn theta(&self, j: usize) -> Result<FacePolynomial<F>, Error> {
        if !(1..=self.poset.max_rank()).contains(&j) {
            return Err(Error::InvalidInput(format!(
                "θ_{j} undefined: rank must lie in 1..={}",
                self.poset.max_rank()
            )));
        }
        let mut out = FacePolynomial::zero();
        for e in self.poset.faces() {
            if self.poset.rank(e) == j {
                out.add_term(&self.field, StdMonomial::variable(e), self.field.one());
            }
        }
        Ok(out)
    }

    /// The whole sequence Θ = (θ_1, ..., θ_d).
    pub fn universal_parameters(&self) -> Vec<FacePolynomial<F>> {
        (1..=self.poset.max_rank()).map(|j| self.theta(j).expect("j in range")).collect()
    }

    /// straighten(θ_j · m); raises degree by j.
    pub fn theta_action(
        &self,
        j: usize,
        m: &StdMonomial,
    ) -> Result<FacePolynomial<F>, Error> {
        let theta = self.theta(j)?;
        self.multiply(&theta, &FacePolynomial::monomial(&self.field, m.clone()))
    }

    /// All standard monomials of N-degree exactly `degree`, in canonical
    /// order.
    pub fn standard_monomials_of_degree(&self, degree: usize) -> Vec<StdMonomial> {
        let mut out = Vec::new();
        let mut current: Vec<(usize, u32)> = Vec::new();
        self.enumerate_monomials(degree, None, &mut current, &mut out);
        out.sort();
        out
    }

    fn enumerate_monomials(
        &self,
        remaining: usize,
        last: Option<usize>,
        current: &mut Vec<(usize, u32)>,
        out: &mut Vec<StdMonomial>,
    ) {
        if remaining == 0 {
            out.push(StdMonomial { factors: current.clone() });
            return;
        }
        let start = last.map_or(1, |e| e + 1);
        for e in start..self.poset.len() {
            let elt = PosetElt(e);
            let r = self.poset.rank(elt);
            if r == 0 || r > remaining {
                continue;
            }
            if let Some(prev) = last {
                // strict chain: the next factor must lie strictly above
                if !(self.poset.leq(PosetElt(prev), elt) && prev != e) {
                    continue;
                }
            }
            for exp in 1..=(remaining / r) as u32 {
                current.push((e, exp));
                self.enumerate_monomials(remaining - exp as usize * r, Some(e), current, out);
                current.pop();
            }
        }
    }

    /// Dimension of the graded piece k[Δ]_D.
    pub fn graded_dimension(&self, degree: usize) -> usize {
        self.standard_monomials_of_degree(degree).len()
    }
}

fn pop_first<K: Ord + Clone, V>(map: &mut BTreeMap<K, V>) -> Option<(K, V)> {
    let key = map.keys().next()?.clone();
    let value = map.remove(&key)?;
    Some((key, value))
}
