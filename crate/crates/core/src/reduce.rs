//! Presentations and the two compilers that turn them into DGA pairs (𝒜, ℬ).
//!
//! From an algebra presentation ⟨x | f₁…f_m⟩: degree-0 generators `x` and
//! degree-1 generators `r#j`, with ∂r_j = f_j in 𝒜 and ∂r_j = 1 in ℬ.
//!
//! From a group presentation ⟨g | r₁…r_m⟩: degree-0 generators `X = g, g_inv`,
//! degree-1 generators `y#1…y#N` for the N = m + 2n relation polynomials and
//! `z#x` for each `x ∈ X`. Both DGAs have ∂y_j = f_j; 𝒜 has ∂z_x = 0 while ℬ
//! has ∂z_x = x − 1.

use std::fmt;

use crate::coeff::RingSpec;
use crate::dga::{Augmentation, SemifreeDga};
use crate::error::Error;
use crate::tensor::{Generator, NcPoly, Signature, Word};

/// One letter of a group word: `g_i` or `g_i^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn inverted(self) -> Letter {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// Cancels adjacent `g g^-1` and `g^-1 g` pairs.
pub fn freely_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPresentation {
    name: String,
    generators: Vec<String>,
    relators: Vec<Vec<Letter>>,
}

/// Name of the formal inverse of a group generator.
pub fn inverse_name(generator: &str) -> String {
    format!("{generator}_inv")
}

impl GroupPresentation {
    /// Validates names and freely reduces the relators.
    pub fn new(name: impl Into<String>, generators: Vec<String>, relators: Vec<Vec<Letter>>) -> Result<Self, Error> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for g in &generators {
            let inv = inverse_name(g);
            if generators.contains(&inv) {
                return Err(Error::DuplicateGenerator(inv));
            }
        }
        for l in relators.iter().flatten() {
            if l.generator as usize >= generators.len() {
                return Err(Error::UnknownGenerator(format!("#{}", l.generator)));
            }
        }
        Ok(GroupPresentation {
            name: name.into(),
            generators,
            relators: relators.iter().map(|r| freely_reduce(r)).collect(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Vec<Letter>] {
        &self.relators
    }

    /// X = g₁…g_n, g₁_inv…g_n_inv, all in degree 0.
    pub fn x_signature(&self, ring: RingSpec) -> Signature {
        let names = self.generators.iter().cloned().chain(self.generators.iter().map(|g| inverse_name(g)));
        Signature::new(ring, names.map(|n| Generator::new(n, 0)).collect()).expect("names validated on construction")
    }

    /// N = m + 2n.
    pub fn relation_count(&self) -> usize {
        self.relators.len() + 2 * self.generators.len()
    }

    fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.generators[word[i].generator as usize];
            let exp = (j - i) as i64 * if word[i].inverse { -1 } else { 1 };
            parts.push(if exp == 1 { name.clone() } else { format!("{name}^{exp}") });
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "group {} = {}", self.name, angle(&self.generators.join(", "), &rels.join(", ")))
    }
}

/// Finitely presented algebra R⟨x₁…x_n⟩ / (f₁…f_m); every generator has degree 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraPresentation {
    name: String,
    signature: Signature,
    relations: Vec<NcPoly>,
}

impl AlgebraPresentation {
    pub fn new(name: impl Into<String>, signature: Signature, relations: Vec<NcPoly>) -> Result<Self, Error> {
        if let Some(g) = signature.generators().iter().find(|g| g.degree != 0) {
            return Err(Error::SignatureMismatch(format!("presentation generator {} has degree {}", g.name, g.degree)));
        }
        for r in &relations {
            signature.check(r)?;
        }
        Ok(AlgebraPresentation { name: name.into(), signature, relations })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> RingSpec {
        self.signature.ring()
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn relations(&self) -> &[NcPoly] {
        &self.relations
    }
}

impl fmt::Display for AlgebraPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.signature.generators().iter().map(|g| g.name.as_str()).collect();
        let rels: Vec<String> = self.relations.iter().map(|r| self.signature.format_poly(r)).collect();
        write!(f, "algebra {} = {}", self.name, angle(&gens.join(", "), &rels.join(", ")))
    }
}

fn angle(gens: &str, rels: &str) -> String {
    let pad = |s: &str| if s.is_empty() { " ".to_string() } else { format!(" {s} ") };
    format!("<{}|{}>", pad(gens), pad(rels))
}

pub fn relation_generator_name(j: usize) -> String {
    format!("r#{}", j + 1)
}

pub fn y_name(j: usize) -> String {
    format!("y#{}", j + 1)
}

pub fn z_name(x: &str) -> String {
    format!("z#{x}")
}

/// The DGA pair for an algebra presentation; requires n, m ≥ 1.
pub fn algebra_to_dgas(p: &AlgebraPresentation) -> Result<(SemifreeDga, SemifreeDga), Error> {
    let n = p.signature.len();
    let m = p.relations.len();
    if n == 0 || m == 0 {
        return Err(Error::EmptyPresentation);
    }
    let ring = p.ring();
    let mut sig = p.signature.clone();
    for j in 0..m {
        sig.push(Generator::new(relation_generator_name(j), 1))?;
    }
    let zeros = vec![NcPoly::zero(ring); n];
    let da = zeros.iter().cloned().chain(p.relations.iter().cloned()).collect();
    let db = zeros.into_iter().chain(std::iter::repeat_n(NcPoly::one(ring), m)).collect();
    Ok((SemifreeDga::new(sig.clone(), da)?, SemifreeDga::new(sig, db)?))
}

/// f₁…f_N over X: first r_j − 1 (inverse letters replaced by `_inv` generators),
/// then g_i·g_i_inv − 1 and g_i_inv·g_i − 1 for each i.
pub fn group_relation_polys(p: &GroupPresentation, ring: RingSpec) -> Vec<NcPoly> {
    let n = p.generators.len() as u32;
    let index = |l: &Letter| if l.inverse { l.generator + n } else { l.generator };
    let one = NcPoly::one(ring);
    let mut out: Vec<NcPoly> = p
        .relators
        .iter()
        .map(|r| &NcPoly::monomial(ring.one(), Word(r.iter().map(index).collect())) - &one)
        .collect();
    for i in 0..n {
        out.push(&NcPoly::monomial(ring.one(), Word(vec![i, i + n])) - &one);
        out.push(&NcPoly::monomial(ring.one(), Word(vec![i + n, i])) - &one);
    }
    out
}

/// Generator index layout of a group reduction: X, then Y, then Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupLayout {
    pub x_count: usize,
    pub y_count: usize,
}

impl GroupLayout {
    pub fn of(p: &GroupPresentation) -> Self {
        GroupLayout { x_count: 2 * p.generators.len(), y_count: p.relation_count() }
    }

    pub fn y(&self, j: usize) -> u32 {
        (self.x_count + j) as u32
    }

    pub fn z(&self, x: usize) -> u32 {
        (self.x_count + self.y_count + x) as u32
    }

    pub fn total(&self) -> usize {
        2 * self.x_count + self.y_count
    }
}

pub fn group_signature(p: &GroupPresentation, ring: RingSpec) -> Signature {
    let mut sig = p.x_signature(ring);
    let xs: Vec<String> = sig.generators().iter().map(|g| g.name.clone()).collect();
    for j in 0..p.relation_count() {
        sig.push(Generator::new(y_name(j), 1)).expect("generated names are fresh");
    }
    for x in &xs {
        sig.push(Generator::new(z_name(x), 1)).expect("generated names are fresh");
    }
    sig
}

pub fn group_to_dgas(p: &GroupPresentation, ring: RingSpec) -> (SemifreeDga, SemifreeDga) {
    let sig = group_signature(p, ring);
    let layout = GroupLayout::of(p);
    let zero = NcPoly::zero(ring);
    let fs = group_relation_polys(p, ring);
    let mut da = vec![zero.clone(); layout.x_count];
    da.extend(fs);
    let mut db = da.clone();
    for x in 0..layout.x_count as u32 {
        da.push(zero.clone());
        db.push(&NcPoly::generator(ring, x) - &NcPoly::one(ring));
    }
    (
        SemifreeDga::new(sig.clone(), da).expect("well-formed construction"),
        SemifreeDga::new(sig, db).expect("well-formed construction"),
    )
}

/// ε(x) = 1 on degree-0 generators, 0 elsewhere, for both DGAs of a group reduction.
pub fn canonical_augmentations(a: &SemifreeDga, b: &SemifreeDga) -> Result<(Augmentation, Augmentation), Error> {
    let sig = a.signature();
    if sig != b.signature() {
        return Err(Error::NotGroupReduction("the two DGAs have different signatures".into()));
    }
    if let Some(g) = sig.generators().iter().find(|g| g.degree != 0 && g.degree != 1) {
        return Err(Error::NotGroupReduction(format!("generator {} in degree {}", g.name, g.degree)));
    }
    let xs = sig.indices_of_degree(0);
    let zs: Vec<&str> = sig.generators().iter().filter(|g| g.name.starts_with("z#")).map(|g| g.name.as_str()).collect();
    let expected: Vec<String> = xs.iter().map(|&x| z_name(sig.name(x))).collect();
    if zs != expected.iter().map(String::as_str).collect::<Vec<_>>() {
        return Err(Error::NotGroupReduction("degree-1 z generators do not match the degree-0 generators".into()));
    }
    let ring = sig.ring();
    let eps: Augmentation = sig
        .generators()
        .iter()
        .map(|g| (g.name.clone(), if g.degree == 0 { ring.one() } else { ring.zero() }))
        .collect();
    Ok((eps.clone(), eps))
}
