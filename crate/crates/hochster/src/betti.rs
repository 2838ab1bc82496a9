//! Graded Betti tables: maps (homological index, degree) -> dimension, with
//! the Macaulay2-style aligned text layout and the Euler-characteristic
//! consistency checks used to validate every table the crate produces.

use std::collections::BTreeMap;

use crate::complex::ColorSet;
use crate::field::FieldSpec;
use crate::flags::{FlagNumerator, UniPoly};
use crate::Error;

/// A degree: total (N-graded) or a multidegree in N^d.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Degree {
    Total(usize),
    Multi(Vec<u32>),
}

impl Degree {
    pub fn multi(b: impl IntoIterator<Item = u32>) -> Self {
        Degree::Multi(b.into_iter().collect())
    }

    /// Σ_j j * b_j, the grading specialization ε_j -> j.
    pub fn specialized_weight(&self) -> usize {
        match self {
            Degree::Total(d) => *d,
            Degree::Multi(b) => b.iter().enumerate().map(|(i, &v)| (i + 1) * v as usize).sum(),
        }
    }

    /// Σ_j b_j, the standard total degree ε_j -> 1.
    pub fn standard_weight(&self) -> usize {
        match self {
            Degree::Total(d) => *d,
            Degree::Multi(b) => b.iter().map(|&v| v as usize).sum(),
        }
    }
}

impl std::fmt::Display for Degree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Degree::Total(d) => write!(f, "{d}"),
            Degree::Multi(b) => {
                write!(f, "(")?;
                for (i, v) in b.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Which parameter subalgebra the table resolves over.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub enum ParamSystem {
    /// Colorful parameters γ_j = Σ_{κ(i)=j} x_i in a Stanley-Reisner ring.
    Gamma,
    /// Universal parameters θ_j = Σ_{ρ(F)=j} y_F in a face ring.
    Theta,
}

/// A graded Betti table. Absent entries are zero within the computed bound.
#[derive(Clone, Debug, PartialEq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Degree), usize>,
    /// Number of parameters (the homological index ranges over 0..=d).
    pub d: usize,
    pub field: FieldSpec,
    pub system: ParamSystem,
    /// Degree bound for truncated (Theta-side) computations; None means the
    /// table is exact.
    pub bound: Option<usize>,
}

impl BettiTable {
    pub fn new(d: usize, field: FieldSpec, system: ParamSystem, bound: Option<usize>) -> Self {
        BettiTable { entries: BTreeMap::new(), d, field, system, bound }
    }

    pub fn set(&mut self, m: usize, degree: Degree, dim: usize) {
        if dim > 0 {
            self.entries.insert((m, degree), dim);
        }
    }

    pub fn get(&self, m: usize, degree: &Degree) -> usize {
        *self.entries.get(&(m, degree.clone())).unwrap_or(&0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Degree, usize)> {
        self.entries.iter().map(|((m, deg), dim)| (*m, deg, *dim))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological index with a nonzero entry (projective dimension
    /// within the bound).
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|(m, _)| *m).max()
    }

    /// Column totals Σ_D entry(m, D) for m = 0..=pd.
    pub fn totals(&self) -> Vec<usize> {
        let pd = self.projective_dimension().map_or(0, |m| m);
        let mut out = vec![0usize; pd + 1];
        for ((m, _), dim) in &self.entries {
            out[*m] += dim;
        }
        out
    }

    pub fn is_multigraded(&self) -> bool {
        self.entries.keys().any(|(_, deg)| matches!(deg, Degree::Multi(_)))
    }

    /// Collapse multidegrees along a weight map, e.g. ε_j -> j for the face
    /// ring comparison or ε_j -> 1 for the singly-graded display.
    pub fn specialize(&self, weight: impl Fn(&Degree) -> usize) -> BettiTable {
        let mut out = BettiTable::new(self.d, self.field, self.system, self.bound);
        let mut acc: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for ((m, deg), dim) in &self.entries {
            *acc.entry((*m, weight(deg))).or_insert(0) += dim;
        }
        for ((m, d), dim) in acc {
            out.set(m, Degree::Total(d), dim);
        }
        out
    }

    /// The grading specialization ε_j -> j.
    pub fn specialize_multigraded(&self) -> BettiTable {
        self.specialize(Degree::specialized_weight)
    }

    /// Entries in total degree above `cutoff` (the conjectured support bound
    /// d(d+1)/2 for Theta tables); nonzero ones must cancel in the alternating
    /// sum, and their presence downgrades any "zero within bound" claim.
    pub fn entries_above(&self, cutoff: usize) -> Vec<(usize, Degree, usize)> {
        self.iter()
            .filter(|(_, deg, _)| deg.specialized_weight() > cutoff)
            .map(|(m, deg, dim)| (m, deg.clone(), dim))
            .collect()
    }

    /// Macaulay2 `betti` layout: rows labeled by i = degree - m, columns by m,
    /// "." for zero, plus a total row. Requires an N-graded table.
    pub fn render(&self) -> Result<String, Error> {
        if self.is_multigraded() {
            return Err(Error::InvalidInput(
                "multigraded table: specialize before rendering".into(),
            ));
        }
        let pd = self.projective_dimension().unwrap_or(0);
        let totals = {
            let mut t = vec![0usize; pd + 1];
            for ((m, _), dim) in &self.entries {
                t[*m] += dim;
            }
            t
        };
        let max_row = self
            .entries
            .keys()
            .map(|(m, deg)| match deg {
                Degree::Total(d) => *d as isize - *m as isize,
                Degree::Multi(_) => unreachable!(),
            })
            .max()
            .unwrap_or(0)
            .max(0) as usize;

        // cell text per (row, col)
        let cell = |i: usize, m: usize| -> String {
            let dim = self.get(m, &Degree::Total(i + m));
            if dim == 0 {
                ".".to_string()
            } else {
                dim.to_string()
            }
        };
        let mut widths = vec![1usize; pd + 1];
        for (m, w) in widths.iter_mut().enumerate() {
            *w = (*w)
                .max(totals[m].to_string().len())
                .max(m.to_string().len());
            for i in 0..=max_row {
                *w = (*w).max(cell(i, m).len());
            }
        }
        let label_width = "total:".len().max(format!("{max_row}:").len());

        let mut out = String::new();
        // header
        out.push_str(&" ".repeat(label_width));
        for (m, w) in widths.iter().enumerate() {
            out.push(' ');
            out.push_str(&format!("{m:>w$}"));
        }
        out.push('\n');
        // totals
        out.push_str(&format!("{:>label_width$}", "total:"));
        for (m, w) in widths.iter().enumerate() {
            out.push(' ');
            out.push_str(&format!("{:>w$}", totals[m]));
        }
        out.push('\n');
        if self.is_empty() {
            return Ok(out);
        }
        for i in 0..=max_row {
            out.push_str(&format!("{:>label_width$}", format!("{i}:")));
            for (m, w) in widths.iter().enumerate() {
                out.push(' ');
                out.push_str(&format!("{:>w$}", cell(i, m)));
            }
            out.push('\n');
        }
        Ok(out)
    }

    /// Listing of multigraded entries, one line per (m, b).
    pub fn render_multigraded(&self) -> String {
        let mut out = String::new();
        for (m, deg, dim) in self.iter() {
            out.push_str(&format!("Tor_{m} at {deg}: {dim}\n"));
        }
        if out.is_empty() {
            out.push_str("(zero table)\n");
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .iter()
            .map(|(m, deg, dim)| {
                let degree = match deg {
                    Degree::Total(d) => serde_json::json!(d),
                    Degree::Multi(b) => serde_json::json!(b),
                };
                serde_json::json!({"m": m, "degree": degree, "dim": dim})
            })
            .collect();
        serde_json::json!({
            "entries": entries,
            "field": self.field.to_string(),
            "bound": self.bound,
            "system": self.system,
            "d": self.d,
        })
    }
}

/// Does the alternating sum Σ_m (-1)^m Hilb(Tor_m) equal the numerator
/// polynomial, coefficient by coefficient? For truncated tables the comparison
/// runs over degrees within the bound.
pub fn euler_consistency(table: &BettiTable, numerator: &UniPoly) -> Result<bool, Error> {
    if table.is_multigraded() {
        return Err(Error::InvalidInput(
            "multigraded table: use euler_consistency_multigraded".into(),
        ));
    }
    let bound = table.bound;
    let mut alternating: BTreeMap<usize, i64> = BTreeMap::new();
    for (m, deg, dim) in table.iter() {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        *alternating.entry(deg.specialized_weight()).or_insert(0) += sign * dim as i64;
    }
    let top = numerator
        .degree()
        .unwrap_or(0)
        .max(alternating.keys().max().copied().unwrap_or(0));
    for deg in 0..=top {
        if let Some(b) = bound {
            if deg > b {
                continue;
            }
        }
        if alternating.get(&deg).copied().unwrap_or(0) != numerator.coefficient(deg) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Multigraded flavor: Σ_m (-1)^m entry(m, b_S) must equal the flag-h
/// coefficient h_S for every S ⊆ [d].
pub fn euler_consistency_multigraded(
    table: &BettiTable,
    numerator: &FlagNumerator,
) -> Result<bool, Error> {
    let d = numerator.d;
    for s in ColorSet::all_subsets(d) {
        let b: Vec<u32> = (1..=d).map(|j| if s.contains(j) { 1 } else { 0 }).collect();
        let degree = Degree::Multi(b);
        let mut alt = 0i64;
        for m in 0..=table.d {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            alt += sign * table.get(m, &degree) as i64;
        }
        if alt != numerator.coefficient(s) {
            return Ok(false);
        }
    }
    // nothing may live outside {0,1}^d
    for (_, deg, dim) in table.iter() {
        if let Degree::Multi(b) = deg {
            if b.iter().any(|&v| v > 1) && dim > 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
