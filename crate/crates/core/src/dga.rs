//! Semifree DGAs: a signature plus the differential of each generator.
//!
//! The differential is extended to all of T(x₁,…,x_n) by the graded Leibniz
//! rule with the sign on the right factor:
//!
//! ```text
//! ∂(ab) = ∂(a)·b + (-1)^|a| · a·∂(b)
//! ```

use std::collections::BTreeMap;
use std::fmt;

use crate::coeff::Coefficient;
use crate::error::Error;
use crate::reduce::AlgebraPresentation;
use crate::tensor::{Generator, Homogeneity, NcPoly, Signature, Word};

/// Stamp written into certificate files.
pub const LEIBNIZ_CONVENTION: &str = "d(a*b) = d(a)*b + (-1)^|a| * a*d(b)";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemifreeDga {
    signature: Signature,
    differential: Vec<NcPoly>,
}

impl SemifreeDga {
    /// Pairs a signature with one differential value per generator.
    ///
    /// Only shape is checked here; grading and ∂² = 0 are reported by [`SemifreeDga::validate`].
    pub fn new(signature: Signature, differential: Vec<NcPoly>) -> Result<Self, Error> {
        if differential.len() != signature.len() {
            return Err(Error::SignatureMismatch(format!(
                "{} differential values for {} generators",
                differential.len(),
                signature.len()
            )));
        }
        for d in &differential {
            signature.check(d)?;
        }
        Ok(SemifreeDga { signature, differential })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn differential(&self, generator: u32) -> &NcPoly {
        &self.differential[generator as usize]
    }

    pub fn differentials(&self) -> &[NcPoly] {
        &self.differential
    }

    /// ∂p, the unique degree −1 derivation extending the generator values.
    pub fn leibniz_extend(&self, p: &NcPoly) -> Result<NcPoly, Error> {
        self.signature.check(p)?;
        Ok(self.d(p))
    }

    pub(crate) fn d(&self, p: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero(p.ring());
        for (w, c) in p.terms() {
            let letters = w.letters();
            let mut prefix_degree = 0i64;
            for (i, &g) in letters.iter().enumerate() {
                let dg = &self.differential[g as usize];
                if !dg.is_zero() {
                    let signed = if prefix_degree.rem_euclid(2) == 1 { -c } else { c.clone() };
                    out.add_sandwich(&signed, &Word(letters[..i].to_vec()), dg, &Word(letters[i + 1..].to_vec()));
                }
                prefix_degree += self.signature.degree(g);
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let checks = (0..self.signature.len() as u32)
            .map(|g| {
                let dg = &self.differential[g as usize];
                let degree = self.signature.degree(g);
                let homogeneity = self.signature.homogeneous_degree(dg);
                let d_squared = self.d(dg);
                GeneratorCheck {
                    name: self.signature.name(g).to_string(),
                    degree,
                    homogeneity,
                    degree_ok: homogeneity.admits(degree - 1),
                    square_zero: d_squared.is_zero(),
                    d_squared: self.signature.format_poly(&d_squared),
                }
            })
            .collect();
        ValidationReport { checks }
    }

    /// Adjoins `e` in degree `k+1` and `f` in degree `k` with ∂e = f, ∂f = 0.
    ///
    /// The new generators are named `e#i`, `f#i` for the smallest `i >= 1` with both names free.
    pub fn stabilize(&self, k: i64) -> SemifreeDga {
        let mut i = 1;
        while self.signature.index_of(&format!("e#{i}")).is_some() || self.signature.index_of(&format!("f#{i}")).is_some() {
            i += 1;
        }
        let ring = self.signature.ring();
        let mut signature = self.signature.clone();
        signature.push(Generator::new(format!("e#{i}"), k + 1)).expect("fresh name");
        let f = signature.push(Generator::new(format!("f#{i}"), k)).expect("fresh name");
        let mut differential = self.differential.clone();
        differential.push(NcPoly::generator(ring, f));
        differential.push(NcPoly::zero(ring));
        SemifreeDga { signature, differential }
    }

    pub fn stabilize_all(&self, ks: &[i64]) -> SemifreeDga {
        ks.iter().fold(self.clone(), |a, &k| a.stabilize(k))
    }

    /// H₀ as ⟨degree-0 generators | ∂y for y of degree 1⟩, skipping ∂y = 0.
    pub fn h0_presentation(&self) -> Result<AlgebraPresentation, Error> {
        let sig = &self.signature;
        if let Some(g) = sig.generators().iter().find(|g| g.degree < 0) {
            return Err(Error::NegativeDegreeGenerator(g.name.clone()));
        }
        let zeros = sig.indices_of_degree(0);
        let mut map = vec![u32::MAX; sig.len()];
        for (k, &g) in zeros.iter().enumerate() {
            map[g as usize] = k as u32;
        }
        let sub = Signature::new(sig.ring(), zeros.iter().map(|&g| sig.generators()[g as usize].clone()).collect())?;
        let mut relations = Vec::new();
        for y in sig.indices_of_degree(1) {
            let dy = &self.differential[y as usize];
            if dy.is_zero() {
                continue;
            }
            if dy.terms().any(|(w, _)| w.letters().iter().any(|&l| map[l as usize] == u32::MAX)) {
                return Err(Error::SignatureMismatch(format!(
                    "differential of {} is not supported on degree-0 generators",
                    sig.name(y)
                )));
            }
            relations.push(dy.reindex(&map));
        }
        AlgebraPresentation::new("H0", sub, relations)
    }

    /// True iff ε vanishes off degree 0 and ε(∂g) = 0 for every generator.
    pub fn check_augmentation(&self, eps: &Augmentation) -> Result<bool, Error> {
        let sig = &self.signature;
        for g in sig.generators() {
            let v = eps.get(&g.name).ok_or_else(|| Error::MissingValue(g.name.clone()))?;
            if v.ring() != sig.ring() {
                return Err(Error::RingMismatch { expected: sig.ring(), found: v.ring() });
            }
            if g.degree != 0 && !v.is_zero() {
                return Ok(false);
            }
        }
        for d in &self.differential {
            if !eps.evaluate(sig, d)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorCheck {
    pub name: String,
    pub degree: i64,
    pub homogeneity: Homogeneity,
    pub degree_ok: bool,
    pub square_zero: bool,
    /// Printed ∂(∂g).
    pub d_squared: String,
}

impl GeneratorCheck {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.square_zero
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<GeneratorCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(GeneratorCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &GeneratorCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let deg = match c.homogeneity {
                Homogeneity::Any => "any".to_string(),
                Homogeneity::Degree(d) => d.to_string(),
                Homogeneity::Mixed => "mixed".to_string(),
            };
            writeln!(
                f,
                "{:<4} {} (degree {}): |d| = {} [{}], d^2 = {} [{}]",
                if c.passed() { "ok" } else { "FAIL" },
                c.name,
                c.degree,
                deg,
                if c.degree_ok { "ok" } else { "expected degree - 1" },
                c.d_squared,
                if c.square_zero { "ok" } else { "nonzero" },
            )?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// A candidate DG map ε: 𝒜 → R, given by its values on generators.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Augmentation {
    values: BTreeMap<String, Coefficient>,
}

impl Augmentation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, generator: impl Into<String>, value: Coefficient) {
        self.values.insert(generator.into(), value);
    }

    pub fn get(&self, generator: &str) -> Option<&Coefficient> {
        self.values.get(generator)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Coefficient)> {
        self.values.iter()
    }

    /// ε(p), extending multiplicatively with ε(1) = 1.
    pub fn evaluate(&self, sig: &Signature, p: &NcPoly) -> Result<Coefficient, Error> {
        let values = sig
            .generators()
            .iter()
            .map(|g| self.get(&g.name).cloned())
            .collect::<Vec<_>>();
        let mut acc = sig.ring().zero();
        for (w, c) in p.terms() {
            let mut prod = c.clone();
            for &l in w.letters() {
                let v = values[l as usize].as_ref().ok_or_else(|| Error::MissingValue(sig.name(l).to_string()))?;
                prod = prod.checked_mul(v)?;
            }
            acc = acc.checked_add(&prod)?;
        }
        Ok(acc)
    }
}

impl FromIterator<(String, Coefficient)> for Augmentation {
    fn from_iter<I: IntoIterator<Item = (String, Coefficient)>>(iter: I) -> Self {
        Augmentation { values: iter.into_iter().collect() }
    }
}
