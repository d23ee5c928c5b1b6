//! Elementary automorphisms, tame isomorphisms and their verification as DGA maps.

use std::fmt;

use crate::coeff::Coefficient;
use crate::dga::SemifreeDga;
use crate::error::Error;
use crate::tensor::{NcPoly, Signature};

/// x_i ↦ α·x_i + P, every other generator fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryAuto {
    pub target: u32,
    pub scalar: Coefficient,
    pub shift: NcPoly,
}

impl ElementaryAuto {
    pub fn new(target: u32, scalar: Coefficient, shift: NcPoly) -> Self {
        ElementaryAuto { target, scalar, shift }
    }

    /// α a unit, P free of x_i and homogeneous of degree |x_i|.
    pub fn check(&self, sig: &Signature) -> Result<(), Error> {
        let ill = |m: String| Err(Error::IllFormedAuto(m));
        if self.target as usize >= sig.len() {
            return ill(format!("generator index {} out of range", self.target));
        }
        let name = sig.name(self.target);
        if self.scalar.ring() != sig.ring() || self.shift.ring() != sig.ring() {
            return ill(format!("step on {name} is not over {}", sig.ring()));
        }
        if !self.scalar.is_unit() {
            return ill(format!("scalar {} on {name} is not a unit", self.scalar));
        }
        sig.check(&self.shift).map_err(|e| Error::IllFormedAuto(e.to_string()))?;
        if self.shift.contains_generator(self.target) {
            return ill(format!("shift for {name} contains {name}"));
        }
        if !sig.homogeneous_degree(&self.shift).admits(sig.degree(self.target)) {
            return ill(format!("shift for {name} is not homogeneous of degree {}", sig.degree(self.target)));
        }
        Ok(())
    }

    pub fn apply(&self, sig: &Signature, p: &NcPoly) -> Result<NcPoly, Error> {
        self.check(sig)?;
        sig.check(p)?;
        Ok(self.apply_unchecked(sig, p))
    }

    fn apply_unchecked(&self, sig: &Signature, p: &NcPoly) -> NcPoly {
        if !p.contains_generator(self.target) {
            return p.clone();
        }
        let ring = sig.ring();
        let image = &NcPoly::generator(ring, self.target).scale(&self.scalar) + &self.shift;
        let images: Vec<Option<NcPoly>> = (0..sig.len() as u32)
            .map(|g| Some(if g == self.target { image.clone() } else { NcPoly::generator(ring, g) }))
            .collect();
        p.substitute(&images, ring).expect("images cover the signature")
    }

    /// x_i ↦ α⁻¹·x_i − α⁻¹·P.
    pub fn inverse(&self, sig: &Signature) -> Result<ElementaryAuto, Error> {
        self.check(sig)?;
        let inv = self.scalar.unit_inverse()?;
        Ok(ElementaryAuto { target: self.target, shift: -&self.shift.scale(&inv), scalar: inv })
    }
}

/// A sequence of elementary automorphisms on `source` followed by a
/// degree-preserving bijection of generators onto `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameIso {
    source: Signature,
    target: Signature,
    steps: Vec<ElementaryAuto>,
    relabel: Vec<u32>,
}

impl TameIso {
    pub fn new(source: Signature, target: Signature, steps: Vec<ElementaryAuto>, relabel: Vec<u32>) -> Result<Self, Error> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch { expected: source.ring(), found: target.ring() });
        }
        if source.len() != target.len() || relabel.len() != source.len() {
            return Err(Error::NoRelabelPossible(format!(
                "{} source generators, {} target generators, {} relabel entries",
                source.len(),
                target.len(),
                relabel.len()
            )));
        }
        let mut seen = vec![false; target.len()];
        for (i, &j) in relabel.iter().enumerate() {
            if j as usize >= target.len() || std::mem::replace(&mut seen[j as usize], true) {
                return Err(Error::NoRelabelPossible("relabel is not a bijection".into()));
            }
            if source.degree(i as u32) != target.degree(j) {
                return Err(Error::NoRelabelPossible(format!(
                    "{} (degree {}) relabeled to {} (degree {})",
                    source.name(i as u32),
                    source.degree(i as u32),
                    target.name(j),
                    target.degree(j)
                )));
            }
        }
        for s in &steps {
            s.check(&source)?;
        }
        Ok(TameIso { source, target, steps, relabel })
    }

    pub fn identity(sig: &Signature) -> Self {
        TameIso {
            source: sig.clone(),
            target: sig.clone(),
            steps: Vec::new(),
            relabel: (0..sig.len() as u32).collect(),
        }
    }

    /// Relabels by generator name; `steps` act on `source`.
    pub fn by_names(source: Signature, target: Signature, steps: Vec<ElementaryAuto>) -> Result<Self, Error> {
        let relabel = source
            .generators()
            .iter()
            .map(|g| target.index_of(&g.name).ok_or_else(|| Error::NoRelabelPossible(format!("{} missing from target", g.name))))
            .collect::<Result<_, _>>()?;
        TameIso::new(source, target, steps, relabel)
    }

    pub fn source(&self) -> &Signature {
        &self.source
    }

    pub fn target(&self) -> &Signature {
        &self.target
    }

    pub fn steps(&self) -> &[ElementaryAuto] {
        &self.steps
    }

    pub fn relabel(&self) -> &[u32] {
        &self.relabel
    }

    /// Applies the steps left to right, then the relabeling.
    pub fn apply(&self, p: &NcPoly) -> Result<NcPoly, Error> {
        self.source.check(p)?;
        let mut q = p.clone();
        for s in &self.steps {
            q = s.apply_unchecked(&self.source, &q);
        }
        Ok(q.reindex(&self.relabel))
    }

    /// Image of the source generator `g`.
    pub fn image_of(&self, g: u32) -> NcPoly {
        self.apply(&NcPoly::generator(self.source.ring(), g)).expect("generator of the source")
    }

    pub fn inverse(&self) -> TameIso {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| {
                let inv = s.inverse(&self.source).expect("steps checked on construction");
                ElementaryAuto {
                    target: self.relabel[inv.target as usize],
                    scalar: inv.scalar,
                    shift: inv.shift.reindex(&self.relabel),
                }
            })
            .collect();
        let mut relabel = vec![0; self.relabel.len()];
        for (i, &j) in self.relabel.iter().enumerate() {
            relabel[j as usize] = i as u32;
        }
        TameIso { source: self.target.clone(), target: self.source.clone(), steps, relabel }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residual {
    pub generator: String,
    /// Printed T(∂_A g) − ∂_B(T g); `0` when the square commutes.
    pub residual: String,
    pub ok: bool,
}

/// Outcome of checking that a tame isomorphism is a chain map.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MapReport {
    /// Structural problems that prevent or invalidate the check.
    pub problems: Vec<String>,
    pub residuals: Vec<Residual>,
}

impl MapReport {
    pub fn passed(&self) -> bool {
        self.problems.is_empty() && self.residuals.iter().all(|r| r.ok)
    }

    pub fn failing_generators(&self) -> Vec<&str> {
        self.residuals.iter().filter(|r| !r.ok).map(|r| r.generator.as_str()).collect()
    }
}

impl fmt::Display for MapReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.problems {
            writeln!(f, "FAIL {p}")?;
        }
        for r in &self.residuals {
            if r.ok {
                writeln!(f, "ok   {}", r.generator)?;
            } else {
                writeln!(f, "FAIL {}: T(dA g) - dB(T g) = {}", r.generator, r.residual)?;
            }
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Checks T ∘ ∂_A = ∂_B ∘ T on every generator of A.
pub fn verify_dga_map(t: &TameIso, a: &SemifreeDga, b: &SemifreeDga) -> MapReport {
    let mut report = MapReport::default();
    if t.source() != a.signature() {
        report.problems.push("source signature of the map differs from the first DGA".into());
    }
    if t.target() != b.signature() {
        report.problems.push("target signature of the map differs from the second DGA".into());
    }
    if !report.problems.is_empty() {
        return report;
    }
    for g in 0..a.signature().len() as u32 {
        let lhs = t.apply(a.differential(g)).expect("differential lies in the source");
        let rhs = b.d(&t.image_of(g));
        let diff = &lhs - &rhs;
        report.residuals.push(Residual {
            generator: a.signature().name(g).to_string(),
            residual: b.signature().format_poly(&diff),
            ok: diff.is_zero(),
        });
    }
    report
}

/// A tame isomorphism between stabilizations of two DGAs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableTameCertificate {
    pub stabilizations_source: Vec<i64>,
    pub stabilizations_target: Vec<i64>,
    pub iso: TameIso,
}

fn degree_multiset(sig: &Signature) -> Vec<i64> {
    let mut d: Vec<i64> = sig.generators().iter().map(|g| g.degree).collect();
    d.sort_unstable();
    d
}

pub fn verify_stable_tame(c: &StableTameCertificate, a: &SemifreeDga, b: &SemifreeDga) -> MapReport {
    let sa = a.stabilize_all(&c.stabilizations_source);
    let sb = b.stabilize_all(&c.stabilizations_target);
    if degree_multiset(sa.signature()) != degree_multiset(sb.signature()) {
        return MapReport {
            problems: vec![Error::NoRelabelPossible("stabilized algebras have different generator degrees".into()).to_string()],
            residuals: Vec::new(),
        };
    }
    verify_dga_map(&c.iso, &sa, &sb)
}

/// The DGA on T's target with ∂' = T ∘ ∂_A ∘ T⁻¹.
pub fn transport_dga(a: &SemifreeDga, t: &TameIso) -> Result<SemifreeDga, Error> {
    if t.source() != a.signature() {
        return Err(Error::SignatureMismatch("map source differs from the DGA signature".into()));
    }
    let inv = t.inverse();
    let target = t.target().clone();
    let differential = (0..target.len() as u32)
        .map(|h| t.apply(&a.d(&inv.image_of(h))))
        .collect::<Result<Vec<_>, _>>()?;
    SemifreeDga::new(target, differential)
}
