//! Shared fixtures for the benchmarks.

use semifree_core::{parse_presentation, GroupPresentation, NcPoly, Presentation, RingSpec, Signature, Word};

/// Trivial group presentations of increasing search depth, with the bound that certifies them.
pub const TRIVIAL_GROUPS: &[(&str, usize)] = &[
    ("group T = < g | g >", 1),
    ("group U = < a, b | a*b, a*b^2 >", 1),
    ("group P = < a, b, c | a*b^-1, b*c^-1, c >", 2),
];

pub fn group(text: &str, ring: RingSpec) -> GroupPresentation {
    match parse_presentation(text, ring).expect("fixture parses") {
        Presentation::Group(p) => p,
        Presentation::Algebra(_) => panic!("not a group presentation: {text}"),
    }
}

/// Deterministic dense-ish polynomial: every word of length `len` over `n` letters,
/// coefficients cycling through 1..=7.
pub fn dense_poly(sig: &Signature, len: usize) -> NcPoly {
    let n = sig.len() as u32;
    let ring = sig.ring();
    let words = Word::enumerate(&(0..n).collect::<Vec<_>>(), len);
    let terms = words.into_iter().enumerate().map(|(i, w)| (w, ring.from_int(i as i64 % 7 + 1)));
    NcPoly::from_terms(ring, terms.collect::<Vec<_>>()).expect("fixture polynomial")
}
