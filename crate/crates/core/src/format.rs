//! JSON files: DGAs, stable tame certificates and triviality certificates.
//!
//! Polynomials are stored in canonical printed form, so writing a parsed
//! file reproduces it byte for byte.

use serde::{Deserialize, Serialize};

use crate::certify::{AlgebraCertificate, Certificate, TrivialityCertificate};
use crate::coeff::RingSpec;
use crate::dga::SemifreeDga;
use crate::error::Error;
use crate::ideal::{CofactorRep, SearchBound, Triple};
use crate::reduce::{algebra_to_dgas, group_signature};
use crate::syntax::{parse_coefficient, parse_poly, parse_presentation, Presentation};
use crate::tame::{ElementaryAuto, StableTameCertificate, TameIso};
use crate::tensor::{Generator, NcPoly, Signature};

pub const CERTIFICATE_FORMAT: &str = "semifree-certificate/1";

fn pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DgaFile {
    ring: RingSpec,
    generators: Vec<Generator>,
    differential: Vec<String>,
}

pub fn dga_to_json(a: &SemifreeDga) -> String {
    let sig = a.signature();
    pretty(&DgaFile {
        ring: sig.ring(),
        generators: sig.generators().to_vec(),
        differential: a.differentials().iter().map(|d| sig.format_poly(d)).collect(),
    })
}

pub fn dga_from_json(text: &str) -> Result<SemifreeDga, Error> {
    let file: DgaFile = serde_json::from_str(text).map_err(|e| Error::MalformedDga(e.to_string()))?;
    let sig = Signature::new(file.ring, file.generators).map_err(|e| Error::MalformedDga(e.to_string()))?;
    if file.differential.len() != sig.len() {
        return Err(Error::MalformedDga(format!(
            "{} differentials for {} generators",
            file.differential.len(),
            sig.len()
        )));
    }
    let differential = file
        .differential
        .iter()
        .zip(sig.generators())
        .map(|(d, g)| parse_poly(d, &sig).map_err(|e| Error::MalformedDga(format!("differential of {}: {e}", g.name))))
        .collect::<Result<Vec<_>, _>>()?;
    SemifreeDga::new(sig, differential).map_err(|e| Error::MalformedDga(e.to_string()))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StepFile {
    generator: String,
    scalar: String,
    shift: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TameFile {
    ring: RingSpec,
    source: Vec<Generator>,
    target: Vec<Generator>,
    stabilizations_source: Vec<i64>,
    stabilizations_target: Vec<i64>,
    steps: Vec<StepFile>,
    relabel: Vec<(String, String)>,
}

fn tame_file(t: &TameIso, stab_source: &[i64], stab_target: &[i64]) -> TameFile {
    let src = t.source();
    TameFile {
        ring: src.ring(),
        source: src.generators().to_vec(),
        target: t.target().generators().to_vec(),
        stabilizations_source: stab_source.to_vec(),
        stabilizations_target: stab_target.to_vec(),
        steps: t
            .steps()
            .iter()
            .map(|s| StepFile {
                generator: src.name(s.target).to_string(),
                scalar: s.scalar.to_string(),
                shift: src.format_poly(&s.shift),
            })
            .collect(),
        relabel: t
            .relabel()
            .iter()
            .enumerate()
            .map(|(i, &j)| (src.name(i as u32).to_string(), t.target().name(j).to_string()))
            .collect(),
    }
}

fn tame_from_file(file: TameFile) -> Result<(TameIso, Vec<i64>, Vec<i64>), Error> {
    let source = Signature::new(file.ring, file.source)?;
    let target = Signature::new(file.ring, file.target)?;
    let steps = file
        .steps
        .iter()
        .map(|s| {
            let g = source.index_of(&s.generator).ok_or_else(|| Error::UnknownGenerator(s.generator.clone()))?;
            Ok(ElementaryAuto::new(g, parse_coefficient(&s.scalar, file.ring)?, parse_poly(&s.shift, &source)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut relabel = vec![None; source.len()];
    if file.relabel.len() != source.len() {
        return Err(Error::NoRelabelPossible(format!("{} relabel pairs for {} generators", file.relabel.len(), source.len())));
    }
    for (a, b) in &file.relabel {
        let i = source.index_of(a).ok_or_else(|| Error::UnknownGenerator(a.clone()))?;
        let j = target.index_of(b).ok_or_else(|| Error::UnknownGenerator(b.clone()))?;
        if relabel[i as usize].replace(j).is_some() {
            return Err(Error::NoRelabelPossible(format!("{a} relabeled twice")));
        }
    }
    let relabel = relabel.into_iter().map(|j| j.expect("every source generator listed once")).collect();
    Ok((TameIso::new(source, target, steps, relabel)?, file.stabilizations_source, file.stabilizations_target))
}

pub fn stable_tame_to_json(c: &StableTameCertificate) -> String {
    pretty(&tame_file(&c.iso, &c.stabilizations_source, &c.stabilizations_target))
}

pub fn stable_tame_from_json(text: &str) -> Result<StableTameCertificate, Error> {
    let file: TameFile = serde_json::from_str(text)?;
    let (iso, stabilizations_source, stabilizations_target) = tame_from_file(file)?;
    Ok(StableTameCertificate { stabilizations_source, stabilizations_target, iso })
}

/// `relation` is 1-based in files.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleFile {
    left: String,
    relation: usize,
    right: String,
}

fn rep_file(rep: &CofactorRep, sig: &Signature) -> Vec<TripleFile> {
    rep.triples
        .iter()
        .map(|t| TripleFile {
            left: sig.format_poly(&t.left),
            relation: t.relation + 1,
            right: sig.format_poly(&t.right),
        })
        .collect()
}

fn rep_from_file(file: &[TripleFile], sig: &Signature) -> Result<CofactorRep, Error> {
    let triples = file
        .iter()
        .map(|t| {
            if t.relation == 0 {
                return Err(Error::MalformedCertificate("relation indices start at 1".into()));
            }
            Ok(Triple { left: parse_poly(&t.left, sig)?, relation: t.relation - 1, right: parse_poly(&t.right, sig)? })
        })
        .collect::<Result<_, _>>()?;
    Ok(CofactorRep { triples })
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepEntry {
    generator: String,
    triples: Vec<TripleFile>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Witnesses {
    a: String,
    b: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Body {
    Group { reps: Vec<RepEntry>, phi: TameFile },
    Algebra { rep: Vec<TripleFile>, witnesses: Witnesses },
}

#[derive(Debug, Serialize, Deserialize)]
struct CertificateFile {
    format: String,
    ring: RingSpec,
    leibniz_convention: String,
    presentation: String,
    bound: usize,
    #[serde(flatten)]
    body: Body,
}

pub fn certificate_to_json(cert: &Certificate) -> String {
    let file = match cert {
        Certificate::Group(c) => {
            let xsig = c.presentation.x_signature(c.ring);
            CertificateFile {
                format: CERTIFICATE_FORMAT.into(),
                ring: c.ring,
                leibniz_convention: c.convention.clone(),
                presentation: c.presentation.to_string(),
                bound: c.bound.0,
                body: Body::Group {
                    reps: c
                        .reps
                        .iter()
                        .enumerate()
                        .map(|(x, r)| RepEntry { generator: xsig.name(x as u32).to_string(), triples: rep_file(r, &xsig) })
                        .collect(),
                    phi: tame_file(&c.phi, &[], &[]),
                },
            }
        }
        Certificate::Algebra(c) => {
            let p = &c.presentation;
            let (a, _) = algebra_to_dgas(p).expect("certified presentations are nonempty");
            CertificateFile {
                format: CERTIFICATE_FORMAT.into(),
                ring: p.ring(),
                leibniz_convention: c.convention.clone(),
                presentation: p.to_string(),
                bound: c.bound.0,
                body: Body::Algebra {
                    rep: rep_file(&c.rep, p.signature()),
                    witnesses: Witnesses {
                        a: a.signature().format_poly(&c.witness_a),
                        b: a.signature().format_poly(&c.witness_b),
                    },
                },
            }
        }
    };
    pretty(&file)
}

fn malformed(e: impl std::fmt::Display) -> Error {
    Error::MalformedCertificate(e.to_string())
}

pub fn certificate_from_json(text: &str) -> Result<Certificate, Error> {
    let file: CertificateFile = serde_json::from_str(text).map_err(malformed)?;
    if file.format != CERTIFICATE_FORMAT {
        return Err(malformed(format!("unknown format {:?}", file.format)));
    }
    let ring = file.ring;
    let presentation = parse_presentation(&file.presentation, ring).map_err(malformed)?;
    let bound = SearchBound(file.bound);
    match (presentation, file.body) {
        (Presentation::Group(p), Body::Group { reps, phi }) => {
            let xsig = p.x_signature(ring);
            if reps.len() != xsig.len() {
                return Err(malformed(format!("{} representations for {} generators", reps.len(), xsig.len())));
            }
            let reps = reps
                .iter()
                .enumerate()
                .map(|(x, e)| {
                    if e.generator != xsig.name(x as u32) {
                        return Err(malformed(format!("representation {} is for {:?}", x + 1, e.generator)));
                    }
                    rep_from_file(&e.triples, &xsig).map_err(malformed)
                })
                .collect::<Result<Vec<_>, _>>()?;
            if phi.ring != ring {
                return Err(malformed(Error::RingMismatch { expected: ring, found: phi.ring }));
            }
            if !phi.stabilizations_source.is_empty() || !phi.stabilizations_target.is_empty() {
                return Err(malformed("phi must not stabilize"));
            }
            if phi.source != group_signature(&p, ring).generators() {
                return Err(malformed("phi source is not the signature of the presentation"));
            }
            let (phi, _, _) = tame_from_file(phi).map_err(malformed)?;
            Ok(Certificate::Group(TrivialityCertificate {
                presentation: p,
                ring,
                convention: file.leibniz_convention,
                bound,
                reps,
                phi,
            }))
        }
        (Presentation::Algebra(p), Body::Algebra { rep, witnesses }) => {
            let (a, _) = algebra_to_dgas(&p).map_err(malformed)?;
            let rep = rep_from_file(&rep, p.signature()).map_err(malformed)?;
            let parse = |s: &str| -> Result<NcPoly, Error> { parse_poly(s, a.signature()).map_err(malformed) };
            Ok(Certificate::Algebra(AlgebraCertificate {
                convention: file.leibniz_convention,
                bound,
                rep,
                witness_a: parse(&witnesses.a)?,
                witness_b: parse(&witnesses.b)?,
                presentation: p,
            }))
        }
        _ => Err(malformed("certificate kind does not match the presentation")),
    }
}
