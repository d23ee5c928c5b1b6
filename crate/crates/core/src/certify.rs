//! Triviality certificates.
//!
//! For a group presentation, a cofactor representation of every `x − 1` in
//! the ideal of the relation polynomials gives degree-1 elements
//! `w_x = Σ p·y_j·q` with `∂w_x = x − 1`, and the tame map
//! `Φ: z_x ↦ z_x + w_x` from ℬ to 𝒜. For an algebra presentation the
//! certificate stops at a representation of 1 and the induced acyclicity
//! witnesses.

use std::fmt;
use rayon::prelude::*;

use crate::coeff::RingSpec;
use crate::dga::{SemifreeDga, LEIBNIZ_CONVENTION};
use crate::error::Error;
use crate::ideal::{lift_cofactors, verify_cofactors, CofactorRep, MembershipEngine, SearchBound, SearchLimits};
use crate::reduce::{
    algebra_to_dgas, canonical_augmentations, group_relation_polys, group_to_dgas, AlgebraPresentation,
    GroupLayout, GroupPresentation,
};
use crate::tame::{verify_dga_map, ElementaryAuto, TameIso};
use crate::tensor::{NcPoly, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub presentation: GroupPresentation,
    pub ring: RingSpec,
    pub convention: String,
    pub bound: SearchBound,
    /// One representation of `x − 1` per degree-0 generator, in generator order.
    pub reps: Vec<CofactorRep>,
    /// Φ: ℬ → 𝒜.
    pub phi: TameIso,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraCertificate {
    pub presentation: AlgebraPresentation,
    pub convention: String,
    pub bound: SearchBound,
    /// Representation of 1 in the ideal of the relations.
    pub rep: CofactorRep,
    /// `u_𝒜 = Σ p·r_j·q` with `∂u_𝒜 = 1`.
    pub witness_a: NcPoly,
    /// `u_ℬ = r#1` with `∂u_ℬ = 1`.
    pub witness_b: NcPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Group(TrivialityCertificate),
    Algebra(AlgebraCertificate),
}

impl Certificate {
    pub fn ring(&self) -> RingSpec {
        match self {
            Certificate::Group(c) => c.ring,
            Certificate::Algebra(c) => c.presentation.ring(),
        }
    }

    pub fn bound(&self) -> SearchBound {
        match self {
            Certificate::Group(c) => c.bound,
            Certificate::Algebra(c) => c.bound,
        }
    }
}

/// Representations of `x − 1` for every x, in generator order; `None` if any target fails at this bound.
pub fn find_triviality_reps(
    p: &GroupPresentation,
    ring: RingSpec,
    bound: SearchBound,
    limits: SearchLimits,
) -> Result<Option<Vec<CofactorRep>>, Error> {
    let relations = group_relation_polys(p, ring);
    let x_count = GroupLayout::of(p).x_count as u32;
    let alphabet: Vec<u32> = (0..x_count).collect();
    let engine = MembershipEngine::with_limits(ring, &relations, &alphabet, bound, limits)?;
    let one = NcPoly::one(ring);
    let found: Vec<Option<CofactorRep>> = alphabet
        .par_iter()
        .map(|&x| engine.solve(&(&NcPoly::generator(ring, x) - &one)))
        .collect::<Result<_, _>>()?;
    Ok(found.into_iter().collect())
}

/// `w = Σ p·y_j·q` in the full signature of the group reduction.
pub fn build_w(rep: &CofactorRep, layout: GroupLayout, ring: RingSpec) -> Result<NcPoly, Error> {
    if let Some(t) = rep.triples.iter().find(|t| t.relation >= layout.y_count) {
        return Err(Error::IndexOutOfRange { index: t.relation, len: layout.y_count });
    }
    let xs: Vec<u32> = (0..layout.x_count as u32).collect();
    let ys: Vec<u32> = (0..layout.y_count).map(|j| layout.y(j)).collect();
    lift_cofactors(rep, &xs, &ys, ring)
}

/// Φ with one step `z_x ↦ z_x + w_x` per x, relabeling by name.
pub fn build_phi(p: &GroupPresentation, ring: RingSpec, reps: &[CofactorRep]) -> Result<TameIso, Error> {
    let layout = GroupLayout::of(p);
    if reps.len() != layout.x_count {
        return Err(Error::IndexOutOfRange { index: reps.len(), len: layout.x_count });
    }
    let (a, _) = group_to_dgas(p, ring);
    let sig = a.signature().clone();
    let mut steps = Vec::with_capacity(reps.len());
    for (x, rep) in reps.iter().enumerate() {
        let w = build_w(rep, layout, ring)?;
        if !w.is_zero() && sig.homogeneous_degree(&w) != crate::tensor::Homogeneity::Degree(1) {
            return Err(Error::InvalidShift(format!("w for {} is not homogeneous of degree 1", sig.name(x as u32))));
        }
        steps.push(ElementaryAuto::new(layout.z(x), ring.one(), w));
    }
    TameIso::by_names(sig.clone(), sig, steps)
}

/// Searches at a single bound and returns a certificate that has passed [`verify_group`].
pub fn certify_trivial_group(
    p: &GroupPresentation,
    ring: RingSpec,
    bound: SearchBound,
) -> Result<Option<TrivialityCertificate>, Error> {
    certify_trivial_group_until(p, ring, bound, SearchLimits::default())
}

/// [`certify_trivial_group`] that stops at the given [`SearchLimits`].
pub fn certify_trivial_group_until(
    p: &GroupPresentation,
    ring: RingSpec,
    bound: SearchBound,
    limits: SearchLimits,
) -> Result<Option<TrivialityCertificate>, Error> {
    let Some(reps) = find_triviality_reps(p, ring, bound, limits)? else {
        return Ok(None);
    };
    let phi = build_phi(p, ring, &reps)?;
    let cert = TrivialityCertificate {
        presentation: p.clone(),
        ring,
        convention: LEIBNIZ_CONVENTION.to_string(),
        bound,
        reps,
        phi,
    };
    let (a, b) = group_to_dgas(p, ring);
    let report = verify_group(&cert, &a, &b);
    if !report.passed() {
        return Err(Error::InternalVerificationFailure(report.to_string()));
    }
    Ok(Some(cert))
}

/// Searches for 1 in the ideal of the relations at a single bound.
pub fn certify_trivial_algebra(p: &AlgebraPresentation, bound: SearchBound) -> Result<Option<AlgebraCertificate>, Error> {
    certify_trivial_algebra_until(p, bound, SearchLimits::default())
}

/// [`certify_trivial_algebra`] that stops at the given [`SearchLimits`].
pub fn certify_trivial_algebra_until(
    p: &AlgebraPresentation,
    bound: SearchBound,
    limits: SearchLimits,
) -> Result<Option<AlgebraCertificate>, Error> {
    let (a, b) = algebra_to_dgas(p)?;
    let sig = p.signature();
    let alphabet: Vec<u32> = (0..sig.len() as u32).collect();
    let engine = MembershipEngine::with_limits(p.ring(), p.relations(), &alphabet, bound, limits)?;
    let Some(rep) = engine.solve(&sig.one())? else {
        return Ok(None);
    };
    let cert = AlgebraCertificate {
        presentation: p.clone(),
        convention: LEIBNIZ_CONVENTION.to_string(),
        bound,
        witness_a: algebra_witness(&rep, sig.len(), p.relations().len(), p.ring())?,
        witness_b: NcPoly::generator(p.ring(), sig.len() as u32),
        rep,
    };
    let report = verify_algebra(&cert, &a, &b);
    if !report.passed() {
        return Err(Error::InternalVerificationFailure(report.to_string()));
    }
    Ok(Some(cert))
}

fn algebra_witness(rep: &CofactorRep, n: usize, m: usize, ring: RingSpec) -> Result<NcPoly, Error> {
    let xs: Vec<u32> = (0..n as u32).collect();
    let rs: Vec<u32> = (n as u32..(n + m) as u32).collect();
    lift_cofactors(rep, &xs, &rs, ring)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{} {}", if c.passed { "ok  " } else { "FAIL" }, c.name)?;
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        for n in &self.notes {
            writeln!(f, "note {n}")?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

pub fn verify_certificate(cert: &Certificate, a: &SemifreeDga, b: &SemifreeDga) -> VerificationReport {
    match cert {
        Certificate::Group(c) => verify_group(c, a, b),
        Certificate::Algebra(c) => verify_algebra(c, a, b),
    }
}

/// Returns false if the ring or convention stamps disagree; later checks would be meaningless.
fn check_stamps(r: &mut VerificationReport, ring: RingSpec, convention: &str, a: &SemifreeDga, b: &SemifreeDga) -> bool {
    let mut ok = true;
    if convention != LEIBNIZ_CONVENTION {
        r.push("convention", false, format!("certificate uses {convention:?}, expected {LEIBNIZ_CONVENTION:?}"));
        ok = false;
    } else {
        r.push("convention", true, "");
    }
    for (label, d) in [("A", a), ("B", b)] {
        let found = d.signature().ring();
        if found != ring {
            r.push(format!("ring {label}"), false, Error::RingMismatch { expected: ring, found }.to_string());
            ok = false;
        } else {
            r.push(format!("ring {label}"), true, ring.to_string());
        }
    }
    ok
}

fn check_dgas(r: &mut VerificationReport, expected: (SemifreeDga, SemifreeDga), a: &SemifreeDga, b: &SemifreeDga) -> bool {
    let mut ok = true;
    for (label, want, got) in [("A", &expected.0, a), ("B", &expected.1, b)] {
        let same = want == got;
        r.push(
            format!("dga {label} matches presentation"),
            same,
            if same { "" } else { "generators or differentials differ from the reduction of the presentation" },
        );
        ok &= same;
    }
    ok
}

/// Every cofactor word must fit the recorded search bound.
fn check_bound<'a>(r: &mut VerificationReport, bound: SearchBound, reps: impl IntoIterator<Item = &'a CofactorRep>) {
    let longest = reps
        .into_iter()
        .flat_map(|rep| rep.triples.iter())
        .flat_map(|t| t.left.terms().chain(t.right.terms()))
        .map(|(w, _)| w.len())
        .max()
        .unwrap_or(0);
    let ok = longest <= bound.0;
    r.push("bound", ok, format!("longest cofactor word {longest}, bound {}", bound.0));
}

pub fn verify_group(c: &TrivialityCertificate, a: &SemifreeDga, b: &SemifreeDga) -> VerificationReport {
    let mut r = VerificationReport::default();
    if !check_stamps(&mut r, c.ring, &c.convention, a, b) {
        return r;
    }
    let p = &c.presentation;
    if !check_dgas(&mut r, group_to_dgas(p, c.ring), a, b) {
        return r;
    }
    let sig: &Signature = a.signature();
    let layout = GroupLayout::of(p);
    let relations = group_relation_polys(p, c.ring);
    let one = NcPoly::one(c.ring);

    if c.reps.len() != layout.x_count {
        r.push("cofactors", false, format!("{} representations for {} generators", c.reps.len(), layout.x_count));
        return r;
    }
    check_bound(&mut r, c.bound, &c.reps);
    for (x, rep) in c.reps.iter().enumerate() {
        let target = &NcPoly::generator(c.ring, x as u32) - &one;
        let name = format!("cofactors {}", sig.name(x as u32));
        match verify_cofactors(rep, &target, &relations) {
            Ok(true) => r.push(name, true, format!("{} terms", rep.triples.len())),
            Ok(false) => r.push(name, false, format!("sum does not equal {}", sig.format_poly(&target))),
            Err(e) => r.push(name, false, e.to_string()),
        }
    }

    let phi = &c.phi;
    if phi.source() != sig || phi.target() != sig {
        r.push("phi signature", false, "source or target differs from the DGA signature");
        return r;
    }
    let identity: Vec<u32> = (0..sig.len() as u32).collect();
    r.push(
        "phi relabel",
        phi.relabel() == identity,
        if phi.relabel() == identity { "identity".to_string() } else { "relabel must be the identity on names".to_string() },
    );
    let steps_ok = phi.steps().len() == layout.x_count
        && phi.steps().iter().enumerate().all(|(x, s)| s.target == layout.z(x) && s.scalar.is_one());
    r.push("phi steps", steps_ok, if steps_ok { "one unit shift per z, in order" } else { "steps must be z_x -> z_x + w_x in order" });
    if steps_ok {
        for (x, (s, rep)) in phi.steps().iter().zip(&c.reps).enumerate() {
            let name = format!("shift {}", sig.name(layout.z(x)));
            match build_w(rep, layout, c.ring) {
                Ok(w) if w == s.shift => r.push(name, true, ""),
                Ok(w) => r.push(name, false, format!("expected {}, found {}", sig.format_poly(&w), sig.format_poly(&s.shift))),
                Err(e) => r.push(name, false, e.to_string()),
            }
        }
    }

    let map = verify_dga_map(phi, b, a);
    if map.passed() {
        r.push("chain map B -> A", true, "");
    } else {
        let mut detail: Vec<String> = map.problems.clone();
        detail.extend(map.failing_generators().iter().map(|g| format!("fails on {g}")));
        r.push("chain map B -> A", false, detail.join("; "));
    }

    match canonical_augmentations(a, b) {
        Ok((ea, eb)) => {
            let mut bad = Vec::new();
            for g in 0..sig.len() as u32 {
                let lhs = ea.evaluate(sig, &phi.image_of(g));
                let rhs = eb.evaluate(sig, &NcPoly::generator(c.ring, g));
                if !matches!((lhs, rhs), (Ok(l), Ok(r)) if l == r) {
                    bad.push(sig.name(g).to_string());
                }
            }
            let ok = bad.is_empty()
                && a.check_augmentation(&ea).unwrap_or(false)
                && b.check_augmentation(&eb).unwrap_or(false);
            r.push("augmentations", ok, if bad.is_empty() { String::new() } else { format!("incompatible on {}", bad.join(", ")) });
        }
        Err(e) => r.push("augmentations", false, e.to_string()),
    }
    r
}

pub fn verify_algebra(c: &AlgebraCertificate, a: &SemifreeDga, b: &SemifreeDga) -> VerificationReport {
    let mut r = VerificationReport::default();
    let ring = c.presentation.ring();
    if !check_stamps(&mut r, ring, &c.convention, a, b) {
        return r;
    }
    let expected = match algebra_to_dgas(&c.presentation) {
        Ok(pair) => pair,
        Err(e) => {
            r.push("presentation", false, e.to_string());
            return r;
        }
    };
    if !check_dgas(&mut r, expected, a, b) {
        return r;
    }
    let sig = c.presentation.signature();
    check_bound(&mut r, c.bound, [&c.rep]);
    match verify_cofactors(&c.rep, &sig.one(), c.presentation.relations()) {
        Ok(ok) => r.push("cofactors 1", ok, if ok { String::new() } else { "sum does not equal 1".to_string() }),
        Err(e) => r.push("cofactors 1", false, e.to_string()),
    }
    match algebra_witness(&c.rep, sig.len(), c.presentation.relations().len(), ring) {
        Ok(lifted) if lifted == c.witness_a => r.push("witness A from cofactors", true, String::new()),
        Ok(lifted) => r.push("witness A from cofactors", false, format!("expected {}", a.signature().format_poly(&lifted))),
        Err(e) => r.push("witness A from cofactors", false, e.to_string()),
    }
    for (label, d, u) in [("A", a, &c.witness_a), ("B", b, &c.witness_b)] {
        let name = format!("witness {label}");
        match d.leibniz_extend(u) {
            Ok(du) if du == d.signature().one() => r.push(name, true, "d(u) = 1"),
            Ok(du) => r.push(name, false, format!("d(u) = {}", d.signature().format_poly(&du))),
            Err(e) => r.push(name, false, e.to_string()),
        }
    }
    r.notes.push(
        "both DGAs are acyclic; they are stable tame isomorphic by the classification of acyclic semifree DGAs with equal generator counts, no isomorphism is constructed"
            .to_string(),
    );
    r
}
