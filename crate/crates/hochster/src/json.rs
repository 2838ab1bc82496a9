//! JSON input/output for complexes, colorings, and posets.
//!
//! Schemas:
//! * complex: `{"n": <int>, "facets": [[ints]...]}`
//! * coloring: `{"d": <int>, "colors": [c_1,...,c_n]}` (entry i colors vertex i)
//! * poset: `{"elements": [{"id": "...", "rank": r},...],
//!   "covers": [["idLow","idHigh"],...]}` — the bottom may be omitted and is
//!   synthesized with covers to all rank-1 elements.
//!
//! `parse_input` auto-detects the object kind and also accepts a wrapper
//! `{"complex": {...}, "coloring": {...}}`.

use serde::{Deserialize, Serialize};

use crate::complex::{Coloring, SimplicialComplex};
use crate::poset::{PosetData, SimplicialPoset};
use crate::Error;

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ComplexJson {
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ColoringJson {
    pub d: usize,
    pub colors: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PosetElementJson {
    pub id: String,
    pub rank: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct PosetJson {
    pub elements: Vec<PosetElementJson>,
    pub covers: Vec<(String, String)>,
}

/// A parsed input object.
#[derive(Debug, Clone)]
pub enum InputObject {
    Complex(SimplicialComplex, Option<Coloring>),
    Poset(SimplicialPoset),
}

pub fn complex_to_json(c: &SimplicialComplex) -> ComplexJson {
    ComplexJson { n: c.vertex_count(), facets: c.facets().to_vec() }
}

pub fn complex_from_json(j: &ComplexJson) -> Result<SimplicialComplex, Error> {
    SimplicialComplex::new(j.n, j.facets.iter().cloned())
}

pub fn coloring_to_json(k: &Coloring) -> ColoringJson {
    ColoringJson { d: k.num_colors(), colors: k.colors().to_vec() }
}

pub fn coloring_from_json(j: &ColoringJson) -> Result<Coloring, Error> {
    Coloring::new(j.d, j.colors.clone())
}

pub fn poset_to_json(p: &SimplicialPoset) -> PosetJson {
    let data = p.to_data();
    PosetJson {
        elements: data
            .elements
            .into_iter()
            .map(|(id, rank)| PosetElementJson { id, rank })
            .collect(),
        covers: data.covers,
    }
}

/// Validates on load: invalid posets are reported with the violation list.
pub fn poset_from_json(j: &PosetJson) -> Result<SimplicialPoset, Error> {
    let data = PosetData {
        elements: j.elements.iter().map(|e| (e.id.clone(), e.rank)).collect(),
        covers: j.covers.clone(),
    };
    data.into_poset()
}

#[derive(Deserialize)]
struct WrapperJson {
    complex: ComplexJson,
    coloring: Option<ColoringJson>,
}

/// Parse a JSON input file: a complex, a poset, or a {complex, coloring}
/// wrapper.
pub fn parse_input(text: &str) -> Result<InputObject, Error> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    let obj = value
        .as_object()
        .ok_or_else(|| Error::Json("expected a JSON object".into()))?;
    if obj.contains_key("elements") {
        let poset: PosetJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        return Ok(InputObject::Poset(poset_from_json(&poset)?));
    }
    if obj.contains_key("complex") {
        let wrapper: WrapperJson =
            serde_json::from_value(value.clone()).map_err(|e| Error::Json(e.to_string()))?;
        let complex = complex_from_json(&wrapper.complex)?;
        let coloring = match wrapper.coloring {
            Some(c) => {
                let coloring = coloring_from_json(&c)?;
                coloring.validate_for(&complex)?;
                Some(coloring)
            }
            None => None,
        };
        return Ok(InputObject::Complex(complex, coloring));
    }
    if obj.contains_key("facets") {
        let complex: ComplexJson =
            serde_json::from_value(value).map_err(|e| Error::Json(e.to_string()))?;
        return Ok(InputObject::Complex(complex_from_json(&complex)?, None));
    }
    Err(Error::Json(
        "unrecognized input: expected keys `facets`, `elements`, or `complex`".into(),
    ))
}
