//! Built-in test objects: simplices, cross-polytope boundaries, injective-word
//! complexes, the two-facet depth family, and the running example used
//! throughout the test suites.

use crate::complex::{Coloring, SimplicialComplex};
use crate::poset::SimplicialPoset;
use crate::Error;

/// A catalog object, viewable as a simplicial poset (always) and, when the
/// object is an honest simplicial complex, as that complex together with a
/// distinguished coloring if it has one.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub poset: SimplicialPoset,
    pub complex: Option<(SimplicialComplex, Option<Coloring>)>,
}

impl CatalogEntry {
    fn from_complex(name: String, complex: SimplicialComplex) -> Result<Self, Error> {
        let poset = SimplicialPoset::from_facets(&complex)?;
        Ok(CatalogEntry { name, poset, complex: Some((complex, None)) })
    }
}

/// The full simplex on n vertices.
pub fn simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::new(n, vec![(1..=n).collect()]).expect("simplex is valid")
}

/// Boundary of the n-dimensional cross-polytope on 2n vertices: vertex 2i-1 is
/// the positive pole in coordinate i and vertex 2i the negative one; faces
/// never contain both poles of a coordinate.
pub fn cross_polytope_boundary(n: usize) -> SimplicialComplex {
    assert!(n >= 1);
    let mut facets = Vec::with_capacity(1 << n);
    for signs in 0u64..(1 << n) {
        let facet: Vec<usize> = (0..n)
            .map(|i| if signs >> i & 1 == 0 { 2 * i + 1 } else { 2 * i + 2 })
            .collect();
        facets.push(facet);
    }
    SimplicialComplex::new(2 * n, facets).expect("cross polytope is valid")
}

/// The two-facet complex with Krull dimension d and depth δ: the larger facet
/// {x_1,..,x_d} and the smaller {x_0,..,x_{δ-1}}, glued along
/// {x_1,..,x_{δ-1}}. Vertex x_i is numbered i+1 here.
pub fn delta_family(d: usize, delta: usize) -> Result<SimplicialComplex, Error> {
    if !(1..=d).contains(&delta) {
        return Err(Error::InvalidInput(format!(
            "delta_family needs 1 <= delta <= d, got d={d}, delta={delta}"
        )));
    }
    let large: Vec<usize> = (2..=d + 1).collect();
    let small: Vec<usize> = (1..=delta).collect();
    SimplicialComplex::new(d + 1, vec![large, small])
}

/// The poset of injective words on [n]: all words with distinct letters,
/// ordered by (not necessarily contiguous) subword. Element ids are the words
/// themselves.
pub fn injective_words(n: usize) -> SimplicialPoset {
    assert!(n <= 6, "injective words catalog supports n <= 6");
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &frontier {
            for letter in 1..=n {
                if !w.contains(&letter) {
                    let mut v = w.clone();
                    v.push(letter);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    words.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    words.dedup();

    let id_of = |w: &[usize]| -> String {
        if w.is_empty() {
            "∅".to_string()
        } else {
            w.iter().map(|c| c.to_string()).collect()
        }
    };
    let elements: Vec<(String, usize)> = words.iter().map(|w| (id_of(w), w.len())).collect();
    let mut covers = Vec::new();
    for w in &words {
        for v in &words {
            if v.len() == w.len() + 1 && is_subword(w, v) {
                covers.push((id_of(w), id_of(v)));
            }
        }
    }
    SimplicialPoset::new(elements, covers).expect("injective words form a simplicial poset")
}

fn is_subword(u: &[usize], v: &[usize]) -> bool {
    let mut it = v.iter();
    u.iter().all(|c| it.any(|d| d == c))
}

/// The running example: the two-dimensional complex on 8 vertices with six
/// triangles through vertex 8 and two extra edges at vertex 7.
pub fn running_example_complex() -> SimplicialComplex {
    SimplicialComplex::new(
        8,
        vec![
            vec![1, 5, 8],
            vec![1, 6, 8],
            vec![2, 4, 8],
            vec![2, 6, 8],
            vec![3, 4, 8],
            vec![3, 5, 8],
            vec![2, 7],
            vec![3, 7],
        ],
    )
    .expect("running example is valid")
}

/// Its proper 3-coloring: 1,2,3 -> color 1; 4,5,6,7 -> color 2; 8 -> color 3.
pub fn running_example_coloring() -> Coloring {
    Coloring::new(3, vec![1, 1, 1, 2, 2, 2, 2, 3]).expect("valid coloring")
}

/// The 9-element simplicial poset (one 2-cell, four edges, three vertices)
/// whose barycentric subdivision is `running_example_complex` with the rank
/// coloring equal to `running_example_coloring`.
///
/// Cells: vertices 1,2,3; edges 4 = {2,3}, 5 = {1,3}, 6 = {1,2}, and a second
/// parallel edge 7 = {2,3}; the 2-cell 8 is bounded by edges 4,5,6.
pub fn running_example_poset() -> SimplicialPoset {
    let elements: Vec<(String, usize)> = [
        ("∅", 0),
        ("1", 1),
        ("2", 1),
        ("3", 1),
        ("4", 2),
        ("5", 2),
        ("6", 2),
        ("7", 2),
        ("8", 3),
    ]
    .iter()
    .map(|(s, r)| (s.to_string(), *r))
    .collect();
    let covers: Vec<(String, String)> = [
        ("∅", "1"),
        ("∅", "2"),
        ("∅", "3"),
        ("2", "4"),
        ("3", "4"),
        ("1", "5"),
        ("3", "5"),
        ("1", "6"),
        ("2", "6"),
        ("2", "7"),
        ("3", "7"),
        ("4", "8"),
        ("5", "8"),
        ("6", "8"),
    ]
    .iter()
    .map(|(a, b)| (a.to_string(), b.to_string()))
    .collect();
    SimplicialPoset::new(elements, covers).expect("running example poset is valid")
}

/// Look up a catalog object by name and parameters.
pub fn get(
    name: &str,
    n: Option<usize>,
    d: Option<usize>,
    delta: Option<usize>,
) -> Result<CatalogEntry, Error> {
    let need_n = || n.ok_or_else(|| Error::InvalidInput(format!("{name} requires --n")));
    match name {
        "simplex" => {
            let n = need_n()?;
            CatalogEntry::from_complex(format!("simplex({n})"), simplex(n))
        }
        "cross_polytope_boundary" => {
            let n = need_n()?;
            if n == 0 {
                return Err(Error::InvalidInput("cross_polytope_boundary requires n >= 1".into()));
            }
            CatalogEntry::from_complex(
                format!("cross_polytope_boundary({n})"),
                cross_polytope_boundary(n),
            )
        }
        "injective_words" => {
            let n = need_n()?;
            Ok(CatalogEntry {
                name: format!("injective_words({n})"),
                poset: injective_words(n),
                complex: None,
            })
        }
        "delta_family" => {
            let d = d.ok_or_else(|| Error::InvalidInput("delta_family requires --d".into()))?;
            let delta = delta
                .ok_or_else(|| Error::InvalidInput("delta_family requires --delta".into()))?;
            CatalogEntry::from_complex(
                format!("delta_family({d},{delta})"),
                delta_family(d, delta)?,
            )
        }
        "running_example" => Ok(CatalogEntry {
            name: "running_example".into(),
            poset: running_example_poset(),
            complex: Some((running_example_complex(), Some(running_example_coloring()))),
        }),
        _ => Err(Error::InvalidInput(format!(
            "unknown catalog name `{name}` (try: simplex, cross_polytope_boundary, \
             injective_words, delta_family, running_example)"
        ))),
    }
}

/// The standard verification batch: the running example, simplex(n <= 4),
/// cross_polytope_boundary(n <= 3), injective_words(n <= 3), and
/// delta_family(d, δ) for d <= 4.
pub fn standard_batch() -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    out.push(get("running_example", None, None, None).unwrap());
    for n in 1..=4 {
        out.push(get("simplex", Some(n), None, None).unwrap());
    }
    for n in 1..=3 {
        out.push(get("cross_polytope_boundary", Some(n), None, None).unwrap());
    }
    for n in 1..=3 {
        out.push(get("injective_words", Some(n), None, None).unwrap());
    }
    for d in 1..=4 {
        for delta in 1..=d {
            out.push(get("delta_family", None, Some(d), Some(delta)).unwrap());
        }
    }
    out
}

/// Names accepted by `get`, for CLI help and the `catalog` subcommand.
pub fn names() -> &'static [&'static str] {
    &["simplex", "cross_polytope_boundary", "injective_words", "delta_family", "running_example"]
}
