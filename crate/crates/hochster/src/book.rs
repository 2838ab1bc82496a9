// The guide chapters in book/src contain runnable snippets; including them
// here as doc comments lets `cargo test --doc` keep the book in sync with the
// library. Only compiled when rustdoc collects doctests.

#[doc = include_str!("../../../book/src/complexes.md")]
mod complexes {}

#[doc = include_str!("../../../book/src/flag-vectors.md")]
mod flag_vectors {}

#[doc = include_str!("../../../book/src/colorful-betti.md")]
mod colorful_betti {}

#[doc = include_str!("../../../book/src/face-rings.md")]
mod face_rings {}

#[doc = include_str!("../../../book/src/depth.md")]
mod depth {}

#[doc = include_str!("../../../book/src/conjecture.md")]
mod conjecture {}
