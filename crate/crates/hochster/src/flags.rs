//! Flag f- and h-vectors of colored complexes, and Hilbert-series numerators
//! for Stanley-Reisner rings and face rings.
//!
//! For a proper d-coloring κ, the Hilbert series of k[Δ] is
//! `Σ_S h^κ_S t^S / Π_j (1 - t_j)`; the numerators computed here feed the
//! Euler-characteristic consistency checks on every Betti table.

use std::collections::BTreeMap;

use crate::complex::{ColorSet, Coloring, SimplicialComplex};
use crate::poset::SimplicialPoset;
use crate::Error;

/// Entries indexed by color sets S ⊆ [d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    pub d: usize,
    entries: BTreeMap<ColorSet, i64>,
}

impl FlagVector {
    pub fn get(&self, s: ColorSet) -> i64 {
        *self.entries.get(&s).unwrap_or(&0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (ColorSet, i64)> + '_ {
        self.entries.iter().map(|(s, v)| (*s, *v))
    }
}

/// The κ-flag f-vector: f_S = #{F ∈ Δ : κ(F) = S}.
pub fn flag_f(complex: &SimplicialComplex, coloring: &Coloring) -> Result<FlagVector, Error> {
    coloring.validate_for(complex)?;
    let d = coloring.num_colors();
    let mut entries: BTreeMap<ColorSet, i64> = BTreeMap::new();
    for face in complex.all_faces() {
        *entries.entry(coloring.color_set(&face)).or_insert(0) += 1;
    }
    entries.retain(|_, v| *v != 0);
    Ok(FlagVector { d, entries })
}

/// The κ-flag h-vector: h_S = Σ_{T ⊆ S} (-1)^{#S - #T} f_T.
pub fn flag_h(complex: &SimplicialComplex, coloring: &Coloring) -> Result<FlagVector, Error> {
    let f = flag_f(complex, coloring)?;
    let d = f.d;
    let mut entries = BTreeMap::new();
    for s in ColorSet::all_subsets(d) {
        let mut h = 0i64;
        // sum over subsets T of S
        let s_bits = s.0;
        let mut t_bits = s_bits;
        loop {
            let t = ColorSet(t_bits);
            let sign = if (s.len() - t.len()) % 2 == 0 { 1 } else { -1 };
            h += sign * f.get(t);
            if t_bits == 0 {
                break;
            }
            t_bits = (t_bits - 1) & s_bits;
        }
        if h != 0 {
            entries.insert(s, h);
        }
    }
    Ok(FlagVector { d, entries })
}

/// A multigraded numerator: integer polynomial supported on squarefree
/// monomials t^S, S ⊆ [d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagNumerator {
    pub d: usize,
    pub terms: BTreeMap<ColorSet, i64>,
}

impl FlagNumerator {
    pub fn coefficient(&self, s: ColorSet) -> i64 {
        *self.terms.get(&s).unwrap_or(&0)
    }

    /// Specialize t_j -> t^w(j). `weight(j) = 1` gives the standard grading,
    /// `weight(j) = j` the grading specialization for face rings.
    pub fn specialize(&self, weight: impl Fn(usize) -> usize) -> UniPoly {
        let mut coeffs = BTreeMap::new();
        for (s, c) in &self.terms {
            let deg: usize = s.iter().map(&weight).sum();
            *coeffs.entry(deg).or_insert(0) += c;
        }
        UniPoly::from_map(coeffs)
    }

    pub fn render(&self, vars: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (s, c) in &self.terms {
            let mono: String = s.iter().map(|j| format!("{vars}{j}")).collect::<Vec<_>>().join("*");
            let term = if s.is_empty() {
                format!("{c}")
            } else if *c == 1 {
                mono
            } else if *c == -1 {
                format!("-{mono}")
            } else {
                format!("{c}*{mono}")
            };
            if out.is_empty() {
                out = term;
            } else if term.starts_with('-') {
                out = format!("{out} - {}", &term[1..]);
            } else {
                out = format!("{out} + {term}");
            }
        }
        out
    }
}

/// Numerator of Hilb(k[Δ], t) over Π_j (1 - t_j): `Σ_S h^κ_S t^S`.
pub fn hilbert_numerator_sr(
    complex: &SimplicialComplex,
    coloring: &Coloring,
) -> Result<FlagNumerator, Error> {
    let h = flag_h(complex, coloring)?;
    Ok(FlagNumerator { d: h.d, terms: h.entries })
}

/// Numerator of the N-graded Hilbert series of the face ring k[Δ] of a
/// simplicial poset, over the denominator Π_{j=1}^d (1 - t^j): the flag-h
/// numerator of the barycentric subdivision specialized via t_j -> t^j.
pub fn hilbert_numerator_face_ring(poset: &SimplicialPoset) -> Result<UniPoly, Error> {
    let (sd, coloring) = poset.barycentric_subdivision();
    let numerator = hilbert_numerator_sr(&sd, &coloring)?;
    Ok(numerator.specialize(|j| j))
}

/// Dense univariate integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    /// coeffs[i] is the coefficient of t^i; no trailing zeros.
    pub coeffs: Vec<i64>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    fn from_map(map: BTreeMap<usize, i64>) -> Self {
        let deg = map.keys().max().copied().unwrap_or(0);
        let mut coeffs = vec![0i64; deg + 1];
        for (k, v) in map {
            coeffs[k] += v;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coefficient(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Power-series coefficients of `self / Π_j (1 - t^{w_j})` up to degree
    /// `bound` inclusive, by repeated truncated division.
    pub fn expand_over_denominator(&self, weights: &[usize], bound: usize) -> Vec<i64> {
        let mut c = vec![0i64; bound + 1];
        for (i, v) in self.coeffs.iter().enumerate() {
            if i <= bound {
                c[i] = *v;
            }
        }
        for &w in weights {
            assert!(w >= 1);
            for i in w..=bound {
                c[i] += c[i - w];
            }
        }
        c
    }

    pub fn render(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let abs = c.abs();
            let body = if mono.is_empty() {
                format!("{abs}")
            } else if abs == 1 {
                mono
            } else {
                format!("{abs}*{mono}")
            };
            if out.is_empty() {
                out = if c < 0 { format!("-{body}") } else { body };
            } else {
                out = format!("{out} {} {body}", if c < 0 { "-" } else { "+" });
            }
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}
