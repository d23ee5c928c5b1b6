//! The free graded algebra T(x₁,…,x_n) over a coefficient ring.
//!
//! Generators are referred to by their index in a [`Signature`]. A [`Word`] is
//! a sequence of indices and an [`NcPoly`] a sparse map from words to nonzero
//! coefficients. Words are ordered by length first, then lexicographically on
//! indices; polynomials keep their terms in that order, which makes printing
//! and every downstream search deterministic.

use std::cmp::Ordering;
use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, RingSpec};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(index: u32) -> Self {
        Word(vec![index])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// All words of length at most `max_len` over `alphabet`, in word order.
    pub fn enumerate(alphabet: &[u32], max_len: usize) -> Vec<Word> {
        let mut alphabet = alphabet.to_vec();
        alphabet.sort_unstable();
        alphabet.dedup();
        let mut out = vec![Word::empty()];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for w in &layer {
                for &a in &alphabet {
                    let mut v = w.0.clone();
                    v.push(a);
                    next.push(Word(v));
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for Word {
    fn from(v: Vec<u32>) -> Self {
        Word(v)
    }
}

/// A noncommutative polynomial in canonical sparse form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NcPoly {
    ring: RingSpec,
    terms: BTreeMap<Word, Coefficient>,
}

impl NcPoly {
    pub fn zero(ring: RingSpec) -> Self {
        NcPoly { ring, terms: BTreeMap::new() }
    }

    pub fn one(ring: RingSpec) -> Self {
        Self::constant(ring.one())
    }

    pub fn constant(c: Coefficient) -> Self {
        Self::monomial(c, Word::empty())
    }

    pub fn generator(ring: RingSpec, index: u32) -> Self {
        Self::monomial(ring.one(), Word::letter(index))
    }

    pub fn monomial(c: Coefficient, word: Word) -> Self {
        let mut p = NcPoly::zero(c.ring());
        p.add_term(word, c);
        p
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms(ring: RingSpec, terms: impl IntoIterator<Item = (Word, Coefficient)>) -> Result<Self, Error> {
        let mut p = NcPoly::zero(ring);
        for (w, c) in terms {
            if c.ring() != ring {
                return Err(Error::SignatureMismatch(format!("coefficient in {} for a polynomial over {ring}", c.ring())));
            }
            p.add_term(w, c);
        }
        Ok(p)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending word order.
    pub fn terms(&self) -> btree_map::Iter<'_, Word, Coefficient> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &Word) -> Coefficient {
        self.terms.get(word).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Coefficient {
        self.coeff(&Word::empty())
    }

    /// Largest word in the monomial order, if nonzero.
    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    /// Highest generator index occurring, if any.
    pub fn max_generator(&self) -> Option<u32> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).max()
    }

    pub fn contains_generator(&self, index: u32) -> bool {
        self.terms.keys().any(|w| w.0.contains(&index))
    }

    /// Adds `c·word` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, word: Word, c: Coefficient) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(c.ring(), self.ring);
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += c · left · p · right`.
    pub fn add_sandwich(&mut self, c: &Coefficient, left: &Word, p: &NcPoly, right: &Word) {
        if c.is_zero() {
            return;
        }
        for (w, d) in &p.terms {
            let mut v = Vec::with_capacity(left.len() + w.len() + right.len());
            v.extend_from_slice(&left.0);
            v.extend_from_slice(&w.0);
            v.extend_from_slice(&right.0);
            self.add_term(Word(v), c * d);
        }
    }

    pub fn scale(&self, c: &Coefficient) -> NcPoly {
        let mut out = NcPoly::zero(self.ring);
        if c.is_zero() {
            return out;
        }
        for (w, d) in &self.terms {
            out.add_term(w.clone(), c * d);
        }
        out
    }

    fn check_ring(&self, other: &NcPoly) -> Result<(), Error> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::SignatureMismatch(format!("polynomials over {} and {}", self.ring, other.ring)))
        }
    }

    pub fn checked_add(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &NcPoly) -> Result<NcPoly, Error> {
        self.check_ring(other)?;
        let mut out = NcPoly::zero(self.ring);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> NcPoly {
        (0..exp).fold(NcPoly::one(self.ring), |acc, _| &acc * self)
    }

    /// Renames generator indices; `map[i]` is the new index of generator `i`.
    pub fn reindex(&self, map: &[u32]) -> NcPoly {
        let mut out = NcPoly::zero(self.ring);
        for (w, c) in &self.terms {
            out.add_term(Word(w.0.iter().map(|&i| map[i as usize]).collect()), c.clone());
        }
        out
    }

    /// The algebra-homomorphism image of `self` under `images[i]` for generator `i`.
    ///
    /// Every image must be over the same ring; generators without an image cause
    /// [`Error::MissingImage`] only if they actually occur.
    pub fn substitute(&self, images: &[Option<NcPoly>], target_ring: RingSpec) -> Result<NcPoly, Error> {
        if self.ring != target_ring {
            return Err(Error::SignatureMismatch(format!("substituting from {} into {target_ring}", self.ring)));
        }
        let mut out = NcPoly::zero(target_ring);
        for (w, c) in &self.terms {
            let mut prod = NcPoly::constant(c.clone());
            for &letter in &w.0 {
                let image = images
                    .get(letter as usize)
                    .and_then(|i| i.as_ref())
                    .ok_or(Error::MissingImage(letter))?;
                prod = prod.checked_mul(image)?;
                if prod.is_zero() {
                    break;
                }
            }
            for (w, c) in prod.terms {
                out.add_term(w, c);
            }
        }
        Ok(out)
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;

    fn add(self, rhs: &NcPoly) -> NcPoly {
        self.checked_add(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;

    fn sub(self, rhs: &NcPoly) -> NcPoly {
        self.checked_sub(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;

    fn mul(self, rhs: &NcPoly) -> NcPoly {
        self.checked_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;

    fn neg(self) -> NcPoly {
        NcPoly {
            ring: self.ring,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }
}

/// Result of [`Signature::homogeneous_degree`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial, homogeneous of every degree.
    Any,
    Degree(i64),
    Mixed,
}

impl Homogeneity {
    pub fn admits(&self, degree: i64) -> bool {
        match self {
            Homogeneity::Any => true,
            Homogeneity::Degree(d) => *d == degree,
            Homogeneity::Mixed => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// Ring plus ordered, uniquely named, graded generators.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    ring: RingSpec,
    generators: Vec<Generator>,
}

impl Signature {
    pub fn new(ring: RingSpec, generators: Vec<Generator>) -> Result<Self, Error> {
        for (i, g) in generators.iter().enumerate() {
            if g.name.is_empty() {
                return Err(Error::InvalidName(String::new()));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Signature { ring, generators })
    }

    pub fn empty(ring: RingSpec) -> Self {
        Signature { ring, generators: Vec::new() }
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn name(&self, index: u32) -> &str {
        &self.generators[index as usize].name
    }

    pub fn degree(&self, index: u32) -> i64 {
        self.generators[index as usize].degree
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u32)
    }

    /// Appends a generator, returning its index.
    pub fn push(&mut self, generator: Generator) -> Result<u32, Error> {
        if self.index_of(&generator.name).is_some() {
            return Err(Error::DuplicateGenerator(generator.name));
        }
        self.generators.push(generator);
        Ok(self.generators.len() as u32 - 1)
    }

    pub fn word_degree(&self, word: &Word) -> i64 {
        word.0.iter().map(|&i| self.degree(i)).sum()
    }

    pub fn homogeneous_degree(&self, p: &NcPoly) -> Homogeneity {
        let mut degrees = p.terms().map(|(w, _)| self.word_degree(w));
        match degrees.next() {
            None => Homogeneity::Any,
            Some(d) if degrees.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Mixed,
        }
    }

    /// Checks that `p` is over this ring and only uses declared generators.
    pub fn check(&self, p: &NcPoly) -> Result<(), Error> {
        if p.ring() != self.ring {
            return Err(Error::SignatureMismatch(format!("polynomial over {}, signature over {}", p.ring(), self.ring)));
        }
        if let Some(m) = p.max_generator() {
            if m as usize >= self.len() {
                return Err(Error::SignatureMismatch(format!("generator index {m} out of range for {} generators", self.len())));
            }
        }
        Ok(())
    }

    pub fn poly_add(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, Error> {
        self.check(a)?;
        self.check(b)?;
        a.checked_add(b)
    }

    pub fn poly_mul(&self, a: &NcPoly, b: &NcPoly) -> Result<NcPoly, Error> {
        self.check(a)?;
        self.check(b)?;
        a.checked_mul(b)
    }

    pub fn gen(&self, name: &str) -> Result<NcPoly, Error> {
        let i = self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(NcPoly::generator(self.ring, i))
    }

    pub fn one(&self) -> NcPoly {
        NcPoly::one(self.ring)
    }

    pub fn zero(&self) -> NcPoly {
        NcPoly::zero(self.ring)
    }

    /// Indices of generators with the given degree, in order.
    pub fn indices_of_degree(&self, degree: i64) -> Vec<u32> {
        (0..self.len() as u32).filter(|&i| self.degree(i) == degree).collect()
    }

    /// Canonical text form of a word: letters joined by `*`, runs collapsed to `x^k`.
    pub fn format_word(&self, word: &Word) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        let letters = word.letters();
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            let name = self.name(letters[i]);
            if j - i == 1 {
                parts.push(name.to_string());
            } else {
                parts.push(format!("{name}^{}", j - i));
            }
            i = j;
        }
        parts.join("*")
    }

    /// Canonical printing: leading (largest) word first, no zero terms, `0` for zero.
    pub fn format_poly(&self, p: &NcPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in p.terms().rev().enumerate() {
            let negative = c.is_negative();
            let mag = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let word = self.format_word(w);
            match (mag.is_one(), word.is_empty()) {
                (_, true) => out.push_str(&mag.to_string()),
                (true, false) => out.push_str(&word),
                (false, false) => {
                    out.push_str(&mag.to_string());
                    out.push('*');
                    out.push_str(&word);
                }
            }
        }
        out
    }

    pub fn display<'a>(&'a self, p: &'a NcPoly) -> PolyDisplay<'a> {
        PolyDisplay { sig: self, poly: p }
    }
}

pub struct PolyDisplay<'a> {
    sig: &'a Signature,
    poly: &'a NcPoly,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sig.format_poly(self.poly))
    }
}
