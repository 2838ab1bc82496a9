//! Simplicial complexes on vertex set `{1, .., n}`, proper vertex colorings,
//! and the color-selected subcomplex / link / skeleton constructions.
//!
//! Two degenerate complexes are distinguished throughout the crate:
//! the *void* complex (no faces at all, encoded by an empty facet list) and
//! the *empty* complex `{∅}` (a single empty facet). The empty complex has a
//! one-dimensional reduced cohomology group in degree -1; the void complex has
//! none. Conflating them would silently corrupt the degree-0 column of every
//! Betti table downstream.

use std::collections::BTreeSet;

use crate::Error;

/// A face: a sorted list of vertices from `1..=n`. The empty face is `[]`.
pub type Face = Vec<usize>;

/// An abstract simplicial complex, stored by its facets (maximal faces).
///
/// Invariants established at construction: every facet is a subset of
/// `{1,..,n}`, facets are sorted vertex lists, and no facet contains another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
}

impl SimplicialComplex {
    /// Build from an arbitrary family of faces; non-maximal ones are dropped.
    ///
    /// `new(n, [])` is the void complex; `new(n, [vec![]])` is `{∅}`.
    pub fn new(n: usize, faces: impl IntoIterator<Item = Face>) -> Result<Self, Error> {
        let mut cleaned: Vec<Face> = Vec::new();
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if f.iter().any(|&v| v < 1 || v > n) {
                return Err(Error::InvalidInput(format!(
                    "face {f:?} has a vertex outside 1..={n}"
                )));
            }
            cleaned.push(f);
        }
        // keep only maximal faces
        let mut facets: Vec<Face> = Vec::new();
        for f in &cleaned {
            if !cleaned.iter().any(|g| g.len() > f.len() && is_subset(f, g)) && !facets.contains(f)
            {
                facets.push(f.clone());
            }
        }
        facets.sort();
        Ok(SimplicialComplex { n, facets })
    }

    /// The void complex: no faces, not even the empty one.
    pub fn void(n: usize) -> Self {
        SimplicialComplex { n, facets: Vec::new() }
    }

    /// The empty complex `{∅}`.
    pub fn empty_complex(n: usize) -> Self {
        SimplicialComplex { n, facets: vec![Vec::new()] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    /// Dimension: -1 for `{∅}`. Panics on the void complex (it has no faces).
    pub fn dim(&self) -> isize {
        assert!(!self.is_void(), "the void complex has no dimension");
        self.facets.iter().map(|f| f.len() as isize - 1).max().unwrap()
    }

    pub fn is_face(&self, face: &[usize]) -> bool {
        if self.is_void() {
            return false;
        }
        self.facets.iter().any(|f| is_subset(face, f))
    }

    /// All faces of dimension `i` (so with `i+1` vertices), in lexicographic
    /// order. `i = -1` yields `[∅]` for any non-void complex.
    pub fn faces_of_dim(&self, i: isize) -> Vec<Face> {
        assert!(i >= -1, "dimension must be >= -1");
        if self.is_void() {
            return Vec::new();
        }
        if i == -1 {
            return vec![Vec::new()];
        }
        let k = (i + 1) as usize;
        let mut out: BTreeSet<Face> = BTreeSet::new();
        for facet in &self.facets {
            if facet.len() < k {
                continue;
            }
            for comb in combinations(facet, k) {
                out.insert(comb);
            }
        }
        out.into_iter().collect()
    }

    /// Every face, the empty one first, then by (dimension, lex).
    pub fn all_faces(&self) -> Vec<Face> {
        let mut out = Vec::new();
        if self.is_void() {
            return out;
        }
        let top = self.dim();
        for i in -1..=top {
            out.extend(self.faces_of_dim(i));
        }
        out
    }

    pub fn face_count(&self) -> usize {
        self.all_faces().len()
    }

    /// f-vector indexed from dimension -1.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.is_void() {
            return Vec::new();
        }
        (-1..=self.dim()).map(|i| self.faces_of_dim(i).len()).collect()
    }

    /// Σ_{i >= -1} (-1)^i #{faces of dim i}, the empty face counted at i = -1.
    /// The void complex has reduced Euler characteristic 0.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        let mut chi = 0i64;
        for (idx, count) in self.f_vector().iter().enumerate() {
            // idx 0 is dimension -1
            let sign = if idx % 2 == 0 { -1 } else { 1 };
            chi += sign * *count as i64;
        }
        chi
    }

    /// The subcomplex Δ|_S of faces whose colors all lie in `S`.
    ///
    /// Validates the coloring against this complex. `Δ|_∅ = {∅}` whenever the
    /// complex is non-void.
    pub fn restrict_colors(
        &self,
        coloring: &Coloring,
        s: ColorSet,
    ) -> Result<SimplicialComplex, Error> {
        coloring.validate_for(self)?;
        if self.is_void() {
            return Ok(SimplicialComplex::void(self.n));
        }
        let mut faces: Vec<Face> = Vec::new();
        for facet in &self.facets {
            let kept: Face = facet
                .iter()
                .copied()
                .filter(|&v| s.contains(coloring.color_of(v)))
                .collect();
            faces.push(kept);
        }
        SimplicialComplex::new(self.n, faces)
    }

    /// link(F) = { G : G ∩ F = ∅, G ∪ F ∈ Δ }, on the same ambient vertex set.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex, Error> {
        if !self.is_face(face) {
            return Err(Error::InvalidInput(format!("{face:?} is not a face")));
        }
        let mut faces = Vec::new();
        for facet in &self.facets {
            if is_subset(face, facet) {
                let rest: Face = facet.iter().copied().filter(|v| !face.contains(v)).collect();
                faces.push(rest);
            }
        }
        SimplicialComplex::new(self.n, faces)
    }

    /// All faces of dimension <= i.
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        assert!(i >= -1, "dimension must be >= -1");
        if self.is_void() {
            return self.clone();
        }
        let mut faces: Vec<Face> = vec![Vec::new()];
        for facet in &self.facets {
            if facet.len() as isize <= i + 1 {
                faces.push(facet.clone());
            } else {
                faces.extend(combinations(facet, (i + 1) as usize));
            }
        }
        SimplicialComplex::new(self.n, faces).expect("skeleton faces are valid")
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

fn combinations(set: &[usize], k: usize) -> Vec<Face> {
    use itertools::Itertools;
    set.iter().copied().combinations(k).collect()
}

/// A vertex coloring `κ: {1..n} -> {1..d}`.
///
/// Properness is a property of a (complex, coloring) pair; it is checked when
/// the two are brought together, not at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    d: usize,
    colors: Vec<usize>, // colors[i] is the color of vertex i+1
}

impl Coloring {
    pub fn new(d: usize, colors: Vec<usize>) -> Result<Self, Error> {
        if let Some(c) = colors.iter().find(|&&c| c < 1 || c > d) {
            return Err(Error::InvalidInput(format!("color {c} outside 1..={d}")));
        }
        Ok(Coloring { d, colors })
    }

    /// The trivial coloring: vertex i gets color i.
    pub fn trivial(n: usize) -> Self {
        Coloring { d: n, colors: (1..=n).collect() }
    }

    pub fn num_colors(&self) -> usize {
        self.d
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_of(&self, vertex: usize) -> usize {
        self.colors[vertex - 1]
    }

    /// The color set κ(F) of a face.
    pub fn color_set(&self, face: &[usize]) -> ColorSet {
        let mut s = ColorSet::empty();
        for &v in face {
            s = s.with(self.color_of(v));
        }
        s
    }

    /// Properness: every edge of the complex is bichromatic (equivalently,
    /// every face has all-distinct colors).
    pub fn validate_for(&self, complex: &SimplicialComplex) -> Result<(), Error> {
        if self.colors.len() != complex.vertex_count() {
            return Err(Error::InvalidInput(format!(
                "coloring has {} entries for a complex on {} vertices",
                self.colors.len(),
                complex.vertex_count()
            )));
        }
        for facet in complex.facets() {
            for (idx, &v) in facet.iter().enumerate() {
                for &w in &facet[idx + 1..] {
                    if self.color_of(v) == self.color_of(w) {
                        return Err(Error::ImproperColoring {
                            v,
                            w,
                            color: self.color_of(v),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

/// A subset of the color set `{1..d}`, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ColorSet(pub u64);

impl ColorSet {
    pub fn empty() -> Self {
        ColorSet(0)
    }

    pub fn full(d: usize) -> Self {
        assert!(d <= 63, "color sets support at most 63 colors");
        ColorSet((1u64 << d) - 1)
    }

    pub fn from_iter(colors: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ColorSet::empty();
        for c in colors {
            s = s.with(c);
        }
        s
    }

    pub fn with(self, color: usize) -> Self {
        assert!((1..=63).contains(&color));
        ColorSet(self.0 | 1u64 << (color - 1))
    }

    pub fn contains(self, color: usize) -> bool {
        color >= 1 && color <= 63 && self.0 & (1u64 << (color - 1)) != 0
    }

    pub fn is_subset_of(self, other: ColorSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (1..=63usize).filter(move |&c| self.contains(c))
    }

    /// All subsets of `{1..d}` in increasing bitmask order.
    pub fn all_subsets(d: usize) -> impl Iterator<Item = ColorSet> {
        assert!(d <= 24, "refusing to enumerate 2^{d} color sets");
        (0u64..(1u64 << d)).map(ColorSet)
    }

    /// Sum of the member colors, the grading specialization ε_j -> j.
    pub fn weight(self) -> usize {
        self.iter().sum()
    }
}

impl std::fmt::Display for ColorSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn running_example() -> SimplicialComplex {
        crate::catalog::running_example_complex()
    }

    fn running_coloring() -> Coloring {
        crate::catalog::running_example_coloring()
    }

    #[test]
    fn faces_of_dim_full_simplex() {
        let c = SimplicialComplex::new(3, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(c.faces_of_dim(1), vec![vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(c.faces_of_dim(-1), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn faces_of_dim_running_example_triangles() {
        let c = running_example();
        assert_eq!(
            c.faces_of_dim(2),
            vec![
                vec![1, 5, 8],
                vec![1, 6, 8],
                vec![2, 4, 8],
                vec![2, 6, 8],
                vec![3, 4, 8],
                vec![3, 5, 8]
            ]
        );
        assert_eq!(c.faces_of_dim(1).len(), 14);
        assert_eq!(c.face_count(), 1 + 8 + 14 + 6);
    }

    #[test]
    fn void_complex_has_no_faces() {
        let v = SimplicialComplex::void(4);
        assert_eq!(v.faces_of_dim(-1), Vec::<Face>::new());
        assert!(v.is_void());
        assert_ne!(v, SimplicialComplex::empty_complex(4));
    }

    #[test]
    fn restrict_colors_identity_and_empty() {
        let c = running_example();
        let k = running_coloring();
        let full = c.restrict_colors(&k, ColorSet::full(3)).unwrap();
        assert_eq!(full, c);
        let none = c.restrict_colors(&k, ColorSet::empty()).unwrap();
        assert_eq!(none, SimplicialComplex::empty_complex(8));
    }

    #[test]
    fn restrict_colors_23_is_disconnected_forest() {
        let c = running_example();
        let k = running_coloring();
        let s = ColorSet::from_iter([2, 3]);
        let sub = c.restrict_colors(&k, s).unwrap();
        // vertices 4,5,6,7,8 with edges 48,58,68: two components, no cycle
        assert_eq!(sub.faces_of_dim(0).len(), 5);
        assert_eq!(sub.faces_of_dim(1), vec![vec![4, 8], vec![5, 8], vec![6, 8]]);
    }

    #[test]
    fn improper_coloring_rejected() {
        let c = SimplicialComplex::new(2, vec![vec![1, 2]]).unwrap();
        let k = Coloring::new(1, vec![1, 1]).unwrap();
        assert!(matches!(
            c.restrict_colors(&k, ColorSet::full(1)),
            Err(Error::ImproperColoring { .. })
        ));
    }

    #[test]
    fn link_of_empty_face_is_whole_complex() {
        let c = running_example();
        assert_eq!(c.link(&[]).unwrap(), c);
    }

    #[test]
    fn link_in_triangle_boundary() {
        let c = SimplicialComplex::new(3, vec![vec![1, 2], vec![1, 3], vec![2, 3]]).unwrap();
        let l = c.link(&[1]).unwrap();
        assert_eq!(l.facets(), &[vec![2], vec![3]]);
        assert!(c.link(&[1, 2, 3]).is_err());
    }

    #[test]
    fn link_of_vertex_8_is_six_cycle() {
        // derived by enumerating cofaces of 8 in the facet list
        let c = running_example();
        let l = c.link(&[8]).unwrap();
        assert_eq!(
            l.facets(),
            &[vec![1, 5], vec![1, 6], vec![2, 4], vec![2, 6], vec![3, 4], vec![3, 5]]
        );
    }

    #[test]
    fn skeleton_basics() {
        let c = running_example();
        assert_eq!(c.skeleton(c.dim()), c);
        let simplex = SimplicialComplex::new(3, vec![vec![1, 2, 3]]).unwrap();
        let sk0 = simplex.skeleton(0);
        assert_eq!(sk0.facets(), &[vec![1], vec![2], vec![3]]);
        // skeleton(skeleton(Δ,i),j) = skeleton(Δ,min(i,j))
        assert_eq!(c.skeleton(1).skeleton(0), c.skeleton(0));
        assert_eq!(c.skeleton(0).skeleton(1), c.skeleton(0));
    }

    #[test]
    fn euler_characteristics() {
        assert_eq!(SimplicialComplex::empty_complex(0).reduced_euler_characteristic(), -1);
        // a circle has reduced Euler characteristic -1: 4 vertices, 4 edges, one empty face
        let circle =
            SimplicialComplex::new(4, vec![vec![1, 2], vec![2, 3], vec![3, 4], vec![1, 4]])
                .unwrap();
        assert_eq!(circle.reduced_euler_characteristic(), -1);
        // Δ|_{1,2} of the running example: connected graph with two independent
        // cycles, so χ̃ = -2 (this pairs with flag h_{1,2} = 2 via the sign
        // (-1)^{#S-1})
        let c = running_example();
        let sub = c.restrict_colors(&running_coloring(), ColorSet::from_iter([1, 2])).unwrap();
        assert_eq!(sub.reduced_euler_characteristic(), -2);
    }

    #[test]
    fn restriction_is_monotone_in_s() {
        let c = running_example();
        let k = running_coloring();
        for s_bits in 0u64..8 {
            for t_bits in 0u64..8 {
                if s_bits & !t_bits != 0 {
                    continue;
                }
                let small = c.restrict_colors(&k, ColorSet(s_bits)).unwrap();
                let large = c.restrict_colors(&k, ColorSet(t_bits)).unwrap();
                for f in small.all_faces() {
                    assert!(large.is_face(&f) || f.is_empty());
                }
            }
        }
    }

    #[test]
    fn restrict_and_link_commute() {
        let c = running_example();
        let k = running_coloring();
        let s = ColorSet::from_iter([1, 3]);
        for f in c.all_faces() {
            if !k.color_set(&f).is_subset_of(s) {
                continue;
            }
            let lhs = c.restrict_colors(&k, s).unwrap().link(&f).unwrap();
            let rhs = c.link(&f).unwrap().restrict_colors(&k, s).unwrap();
            assert_eq!(lhs, rhs, "face {f:?}");
        }
    }
}
