//! Bounded two-sided ideal membership in the free algebra, with cofactors.
//!
//! For a bound `D` the engine spans the finite set `{u·f_j·v : |u|, |v| ≤ D}`
//! (u, v words) and decides whether a target lies in its span, returning the
//! combination as a [`CofactorRep`]. The linear algebra is exact:
//!
//! * over ℚ and ℤ/p, sparse Gaussian elimination with unit pivots (machine
//!   words for ℤ/p);
//! * over ℤ, an incremental Hermite-style echelon form built with
//!   extended-gcd row operations, so membership is decided in the lattice and
//!   never in its rationalization;
//! * over ℤ/n with n composite, the same integer echelon form of the lattice
//!   spanned by the products together with `n·e_c` for every monomial `c`.
//!
//! Rows are inserted in a fixed order (shorter cofactors first, then relation
//! index, then right word, then left word), so results are deterministic.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::Range;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::{smallvec, Array, SmallVec};

use crate::coeff::{Coefficient, RingSpec};
use crate::dga::SemifreeDga;
use crate::error::Error;
use crate::tensor::{NcPoly, Signature, Word};

/// Maximum length of the cofactor words `u`, `v` in `u·f_j·v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchBound(pub usize);

/// One summand `left · f_relation · right`; `relation` is 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple {
    pub left: NcPoly,
    pub relation: usize,
    pub right: NcPoly,
}

/// A representation `target = Σ left_l · f_{j_l} · right_l`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CofactorRep {
    pub triples: Vec<Triple>,
}

impl CofactorRep {
    pub fn evaluate(&self, relations: &[NcPoly], ring: RingSpec) -> Result<NcPoly, Error> {
        let mut acc = NcPoly::zero(ring);
        for t in &self.triples {
            let f = relations
                .get(t.relation)
                .ok_or(Error::IndexOutOfRange { index: t.relation, len: relations.len() })?;
            let term = t.left.checked_mul(f)?.checked_mul(&t.right)?;
            acc = acc.checked_add(&term)?;
        }
        Ok(acc)
    }
}

/// Exact check of `Σ p_l f_{j_l} q_l = target`.
pub fn verify_cofactors(rep: &CofactorRep, target: &NcPoly, relations: &[NcPoly]) -> Result<bool, Error> {
    Ok(rep.evaluate(relations, target.ring())? == *target)
}

trait Domain {
    type E: Clone + fmt::Debug + Send + Sync;

    fn lift(&self, c: &Coefficient) -> Self::E;
    fn lower(&self, e: &Self::E) -> Coefficient;
    fn is_zero(&self, e: &Self::E) -> bool;
    fn one(&self) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// `x·a + y·b`, reduced.
    fn axpby(&self, x: &Self::E, a: &Self::E, y: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `q` with `a = q·b`, when `b` divides `a`.
    fn quotient(&self, a: &Self::E, b: &Self::E) -> Option<Self::E>;
    /// For a pivot lead `b` and incoming lead `a` that `b` does not divide:
    /// `(s, t, u, v)` with `s·b + t·a = gcd` and `u·b + v·a = 0`, unimodular.
    fn combine(&self, b: &Self::E, a: &Self::E) -> (Self::E, Self::E, Self::E, Self::E);
    /// Factor that puts a new pivot lead into canonical form.
    fn normalizer(&self, lead: &Self::E) -> Option<Self::E>;
    /// Generator of the modulus lattice, if elimination runs modulo `n`.
    fn modulus(&self) -> Option<Self::E> {
        None
    }
}

struct FieldDomain {
    ring: RingSpec,
}

impl Domain for FieldDomain {
    type E = Coefficient;

    fn lift(&self, c: &Coefficient) -> Coefficient {
        c.clone()
    }
    fn lower(&self, e: &Coefficient) -> Coefficient {
        e.clone()
    }
    fn is_zero(&self, e: &Coefficient) -> bool {
        e.is_zero()
    }
    fn one(&self) -> Coefficient {
        self.ring.one()
    }
    fn neg(&self, a: &Coefficient) -> Coefficient {
        -a
    }
    fn axpby(&self, x: &Coefficient, a: &Coefficient, y: &Coefficient, b: &Coefficient) -> Coefficient {
        &(x * a) + &(y * b)
    }
    fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        a * b
    }
    fn quotient(&self, a: &Coefficient, b: &Coefficient) -> Option<Coefficient> {
        Some(a * &b.unit_inverse().ok()?)
    }
    fn combine(&self, _: &Coefficient, _: &Coefficient) -> (Coefficient, Coefficient, Coefficient, Coefficient) {
        unreachable!("nonzero field elements always divide each other")
    }
    fn normalizer(&self, lead: &Coefficient) -> Option<Coefficient> {
        if lead.is_one() {
            None
        } else {
            Some(lead.unit_inverse().expect("nonzero element of a field"))
        }
    }
}

/// ℤ/p with machine-word residues.
struct PrimeField {
    p: u64,
}

impl PrimeField {
    fn reduce(&self, x: u128) -> u64 {
        (x % self.p as u128) as u64
    }

    fn inverse(&self, a: u64) -> u64 {
        let (mut base, mut exp, mut acc) = (a, self.p - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.reduce(acc as u128 * base as u128);
            }
            base = self.reduce(base as u128 * base as u128);
            exp >>= 1;
        }
        acc
    }
}

impl Domain for PrimeField {
    type E = u64;

    fn lift(&self, c: &Coefficient) -> u64 {
        match c {
            Coefficient::Mod { value, .. } => *value,
            _ => unreachable!("residue expected"),
        }
    }
    fn lower(&self, e: &u64) -> Coefficient {
        Coefficient::Mod { value: *e, modulus: self.p }
    }
    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }
    fn one(&self) -> u64 {
        1
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn axpby(&self, x: &u64, a: &u64, y: &u64, b: &u64) -> u64 {
        self.reduce(*x as u128 * *a as u128 + *y as u128 * *b as u128)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(*a as u128 * *b as u128)
    }
    fn quotient(&self, a: &u64, b: &u64) -> Option<u64> {
        Some(self.mul(a, &self.inverse(*b)))
    }
    fn combine(&self, _: &u64, _: &u64) -> (u64, u64, u64, u64) {
        unreachable!("nonzero field elements always divide each other")
    }
    fn normalizer(&self, lead: &u64) -> Option<u64> {
        (*lead != 1).then(|| self.inverse(*lead))
    }
}

/// ℤ, or ℤ/n realised as the lattice ℤ^M + n·ℤ^M with entries kept in `[0, n)`.
struct IntegerDomain {
    ring: RingSpec,
    modulus: Option<BigInt>,
}

impl IntegerDomain {
    fn reduce(&self, e: BigInt) -> BigInt {
        match &self.modulus {
            Some(n) => e.mod_floor(n),
            None => e,
        }
    }
}

impl Domain for IntegerDomain {
    type E = BigInt;

    fn lift(&self, c: &Coefficient) -> BigInt {
        c.to_bigint().expect("integral coefficient")
    }
    fn lower(&self, e: &BigInt) -> Coefficient {
        self.ring.from_bigint(e)
    }
    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }
    fn axpby(&self, x: &BigInt, a: &BigInt, y: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(x * a + y * b)
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }
    fn quotient(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn combine(&self, b: &BigInt, a: &BigInt) -> (BigInt, BigInt, BigInt, BigInt) {
        let e = b.extended_gcd(a);
        let (g, s, t) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        (s, t, a / &g, -(b / &g))
    }
    fn normalizer(&self, lead: &BigInt) -> Option<BigInt> {
        lead.is_negative().then(|| -BigInt::one())
    }
    fn modulus(&self) -> Option<BigInt> {
        self.modulus.clone()
    }
}

/// Sparse row: entries by column key (ascending key is descending word order)
/// and the combination of input rows it equals. Most rows are short, so both
/// lists are stored inline.
#[derive(Debug, Clone)]
struct Row<E> {
    entries: SmallVec<[(u64, E); 2]>,
    combo: SmallVec<[(u32, E); 1]>,
}

fn merge<D: Domain, K: Ord + Copy, A: Array<Item = (K, D::E)>>(
    d: &D,
    x: &D::E,
    a: &[(K, D::E)],
    y: &D::E,
    b: &[(K, D::E)],
) -> SmallVec<A> {
    let zero_a = d.is_zero(x);
    let zero_b = d.is_zero(y);
    let mut out = SmallVec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (key, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let r = (a[i].0, (!zero_a).then(|| d.mul(x, &a[i].1)));
            i += 1;
            r
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let r = (b[j].0, (!zero_b).then(|| d.mul(y, &b[j].1)));
            j += 1;
            r
        } else {
            let r = (a[i].0, Some(d.axpby(x, &a[i].1, y, &b[j].1)));
            i += 1;
            j += 1;
            r
        };
        if let Some(v) = v {
            if !d.is_zero(&v) {
                out.push((key, v));
            }
        }
    }
    out
}

fn lincomb<D: Domain>(d: &D, x: &D::E, a: &Row<D::E>, y: &D::E, b: &Row<D::E>) -> Row<D::E> {
    Row {
        entries: merge(d, x, &a.entries, y, &b.entries),
        combo: merge(d, x, &a.combo, y, &b.combo),
    }
}

fn scale_row<D: Domain>(d: &D, k: &D::E, r: &Row<D::E>) -> Row<D::E> {
    let zero = Row { entries: SmallVec::new(), combo: SmallVec::new() };
    lincomb(d, k, r, &d.one(), &zero)
}

struct Echelon<D: Domain> {
    domain: D,
    pivots: HashMap<u64, Row<D::E>>,
    /// Columns whose modulus row `n·e_c` has been inserted.
    covered: HashSet<u64>,
}

impl<D: Domain> Echelon<D> {
    /// `rows` pre-sizes the pivot table so it never rehashes while full.
    fn new(domain: D, rows: usize) -> Self {
        Echelon { domain, pivots: HashMap::with_capacity(rows), covered: HashSet::new() }
    }

    fn insert(&mut self, row: Row<D::E>) {
        if let Some(n) = self.domain.modulus() {
            let fresh: Vec<u64> = row.entries.iter().map(|(c, _)| *c).filter(|c| !self.covered.contains(c)).collect();
            for c in fresh {
                self.covered.insert(c);
                self.reduce_into(Row { entries: smallvec![(c, n.clone())], combo: SmallVec::new() });
            }
        }
        self.reduce_into(row);
    }

    fn reduce_into(&mut self, mut row: Row<D::E>) {
        let d = &self.domain;
        let one = d.one();
        loop {
            let Some((col, lead)) = row.entries.first().cloned() else {
                return;
            };
            match self.pivots.get_mut(&col) {
                None => {
                    if let Some(k) = d.normalizer(&lead) {
                        row = scale_row(d, &k, &row);
                    }
                    self.pivots.insert(col, row);
                    return;
                }
                Some(pivot) => {
                    let plead = &pivot.entries[0].1;
                    if let Some(q) = d.quotient(&lead, plead) {
                        row = lincomb(d, &one, &row, &d.neg(&q), pivot);
                    } else {
                        let (s, t, u, v) = d.combine(plead, &lead);
                        let mut fresh = lincomb(d, &s, pivot, &t, &row);
                        if let Some(k) = d.normalizer(&fresh.entries[0].1) {
                            fresh = scale_row(d, &k, &fresh);
                        }
                        let rest = lincomb(d, &u, pivot, &v, &row);
                        *pivot = fresh;
                        row = rest;
                    }
                }
            }
        }
    }

    /// Combination of input rows equal to `target`, if `target` is in the span.
    fn express(&self, target: SmallVec<[(u64, D::E); 2]>) -> Option<Vec<(u32, D::E)>> {
        let d = &self.domain;
        let one = d.one();
        let mut row = Row { entries: target, combo: SmallVec::new() };
        while let Some((col, lead)) = row.entries.first().cloned() {
            let pivot = self.pivots.get(&col)?;
            let q = d.quotient(&lead, &pivot.entries[0].1)?;
            row = lincomb(d, &one, &row, &d.neg(&q), pivot);
        }
        Some(row.combo.iter().map(|(i, e)| (*i, d.neg(e))).filter(|(_, e)| !d.is_zero(e)).collect())
    }
}

enum Solver {
    Prime(Echelon<PrimeField>),
    Field(Echelon<FieldDomain>),
    Integer(Echelon<IntegerDomain>),
}

/// Column keys: `u64::MAX − shortlex rank`, so ascending keys run from the largest word down.
struct Ranker {
    digit: Vec<Option<u64>>,
    base: u64,
    /// `offsets[l]` = number of words of length < l.
    offsets: Vec<u64>,
}

impl Ranker {
    fn new(letters: &[u32], max_len: usize) -> Result<Self, Error> {
        let mut letters = letters.to_vec();
        letters.sort_unstable();
        letters.dedup();
        let size = letters.last().map_or(0, |&l| l as usize + 1);
        let mut digit = vec![None; size];
        for (i, &l) in letters.iter().enumerate() {
            digit[l as usize] = Some(i as u64);
        }
        let base = letters.len() as u64;
        let mut offsets = vec![0u64];
        let mut layer = 1u64;
        for _ in 0..=max_len {
            let next = offsets.last().and_then(|o| o.checked_add(layer));
            let Some(next) = next else {
                return Err(Error::SearchTooLarge(format!("words of length {max_len} over {base} letters")));
            };
            offsets.push(next);
            layer = layer.saturating_mul(base);
        }
        Ok(Ranker { digit, base, offsets })
    }

    fn key(&self, parts: &[&[u32]]) -> Option<u64> {
        let len: usize = parts.iter().map(|p| p.len()).sum();
        if len + 1 >= self.offsets.len() {
            return None;
        }
        let mut rank = 0u64;
        for &l in parts.iter().flat_map(|p| p.iter()) {
            rank = rank * self.base + (*self.digit.get(l as usize)?)?;
        }
        Some(u64::MAX - (self.offsets[len] + rank))
    }
}

/// Resource limits for building a [`MembershipEngine`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub deadline: Option<Instant>,
    /// Largest number of spanning products `u·f_j·v` to eliminate.
    pub max_products: Option<u64>,
}

/// The truncated ideal `span{u·f_j·v : |u|, |v| ≤ D}` in echelon form, reusable across targets.
pub struct MembershipEngine {
    ring: RingSpec,
    relations: Vec<NcPoly>,
    bound: SearchBound,
    /// All cofactor words, in word order.
    words: Vec<Word>,
    /// `by_length[l]` = index range of the words of length l.
    by_length: Vec<Range<usize>>,
    active: Vec<usize>,
    ranker: Ranker,
    solver: Solver,
}

impl MembershipEngine {
    /// `alphabet` lists the generator indices cofactor words may use.
    pub fn new(ring: RingSpec, relations: &[NcPoly], alphabet: &[u32], bound: SearchBound) -> Result<Self, Error> {
        Self::with_limits(ring, relations, alphabet, bound, SearchLimits::default())
    }

    /// Like [`MembershipEngine::new`], giving up with [`Error::TimeBudgetExhausted`] once the deadline
    /// passes and with [`Error::SearchTooLarge`] before building more than `max_products` rows.
    pub fn with_limits(
        ring: RingSpec,
        relations: &[NcPoly],
        alphabet: &[u32],
        bound: SearchBound,
        limits: SearchLimits,
    ) -> Result<Self, Error> {
        for r in relations {
            if r.ring() != ring {
                return Err(Error::SignatureMismatch(format!("relation over {}, engine over {ring}", r.ring())));
            }
        }
        let words = Word::enumerate(alphabet, bound.0);
        let mut by_length = Vec::with_capacity(bound.0 + 1);
        let mut start = 0;
        for l in 0..=bound.0 {
            let end = start + words[start..].iter().take_while(|w| w.len() == l).count();
            by_length.push(start..end);
            start = end;
        }
        let mut letters = alphabet.to_vec();
        let mut longest = 0;
        for r in relations {
            for (w, _) in r.terms() {
                letters.extend_from_slice(w.letters());
                longest = longest.max(w.len());
            }
        }
        let ranker = Ranker::new(&letters, 2 * bound.0 + longest)?;
        let active: Vec<usize> = (0..relations.len()).filter(|&j| !relations[j].is_zero()).collect();
        let count = (words.len() as u64).checked_mul(words.len() as u64).and_then(|w| w.checked_mul(active.len() as u64));
        let cap = limits.max_products.unwrap_or(u64::MAX).min(u32::MAX as u64);
        let count = match count {
            Some(c) if c <= cap => c as usize,
            _ => {
                return Err(Error::SearchTooLarge(format!(
                    "{} relations times {}^2 cofactor words exceeds {cap} products",
                    active.len(),
                    words.len()
                )))
            }
        };

        let mut solver = if let (RingSpec::IntegersMod(p), true) = (ring, ring.is_field()) {
            Solver::Prime(Echelon::new(PrimeField { p }, count))
        } else if ring.is_field() {
            Solver::Field(Echelon::new(FieldDomain { ring }, count))
        } else {
            let modulus = match ring {
                RingSpec::IntegersMod(n) => Some(BigInt::from(n)),
                _ => None,
            };
            Solver::Integer(Echelon::new(IntegerDomain { ring, modulus }, count))
        };
        for (id, (u, j, v)) in products(&by_length, &active, bound.0).enumerate() {
            if id % 256 == 0 && limits.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(Error::TimeBudgetExhausted);
            }
            let (u, f, v) = (words[u].letters(), &relations[j], words[v].letters());
            match &mut solver {
                Solver::Prime(e) => {
                    let row = product_row(&e.domain, &ranker, u, f, v, id as u32);
                    e.insert(row);
                }
                Solver::Field(e) => {
                    let row = product_row(&e.domain, &ranker, u, f, v, id as u32);
                    e.insert(row);
                }
                Solver::Integer(e) => {
                    let row = product_row(&e.domain, &ranker, u, f, v, id as u32);
                    e.insert(row);
                }
            }
        }
        Ok(MembershipEngine { ring, relations: relations.to_vec(), bound, words, by_length, active, ranker, solver })
    }

    fn products(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        products(&self.by_length, &self.active, self.bound.0)
    }

    pub fn bound(&self) -> SearchBound {
        self.bound
    }

    /// Number of spanning products.
    pub fn product_count(&self) -> usize {
        self.products().count()
    }

    fn target_row<D: Domain>(&self, d: &D, target: &NcPoly) -> Option<SmallVec<[(u64, D::E); 2]>> {
        let mut entries = target
            .terms()
            .map(|(w, c)| self.ranker.key(&[w.letters()]).map(|k| (k, d.lift(c))))
            .collect::<Option<SmallVec<_>>>()?;
        entries.sort_unstable_by_key(|(k, _)| *k);
        Some(entries)
    }

    fn coefficients(&self, target: &NcPoly) -> Option<Vec<(u32, Coefficient)>> {
        if target.is_zero() {
            return Some(Vec::new());
        }
        match &self.solver {
            Solver::Prime(e) => {
                let row = self.target_row(&e.domain, target)?;
                e.express(row).map(|c| c.into_iter().map(|(i, v)| (i, e.domain.lower(&v))).collect())
            }
            Solver::Field(e) => {
                let row = self.target_row(&e.domain, target)?;
                e.express(row).map(|c| c.into_iter().map(|(i, v)| (i, e.domain.lower(&v))).collect())
            }
            Solver::Integer(e) => {
                let row = self.target_row(&e.domain, target)?;
                e.express(row).map(|c| c.into_iter().map(|(i, v)| (i, e.domain.lower(&v))).collect())
            }
        }
    }

    pub fn contains(&self, target: &NcPoly) -> bool {
        self.coefficients(target).is_some()
    }

    /// A verified cofactor representation of `target`, or `None` if it is not in the truncated span.
    pub fn solve(&self, target: &NcPoly) -> Result<Option<CofactorRep>, Error> {
        if target.ring() != self.ring {
            return Err(Error::SignatureMismatch(format!("target over {}, engine over {}", target.ring(), self.ring)));
        }
        let Some(coefficients) = self.coefficients(target) else {
            return Ok(None);
        };
        let mut wanted: Vec<(u32, Coefficient)> = coefficients.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        wanted.sort_unstable_by_key(|(i, _)| *i);
        let mut next = wanted.iter().peekable();
        let mut picked = Vec::with_capacity(wanted.len());
        for (id, p) in self.products().enumerate() {
            let Some((i, c)) = next.peek() else {
                break;
            };
            if *i as usize == id {
                picked.push((p, c.clone()));
                next.next();
            }
        }
        picked.sort_by(|((ua, ja, va), _), ((ub, jb, vb), _)| ja.cmp(jb).then(ua.cmp(ub)).then(va.cmp(vb)));
        let rep = CofactorRep {
            triples: picked
                .into_iter()
                .map(|((u, j, v), c)| Triple {
                    left: NcPoly::monomial(c, self.words[u].clone()),
                    relation: j,
                    right: NcPoly::monomial(self.ring.one(), self.words[v].clone()),
                })
                .collect(),
        };
        if !verify_cofactors(&rep, target, &self.relations)? {
            return Err(Error::InternalVerificationFailure("cofactor representation does not expand to the target".into()));
        }
        Ok(Some(rep))
    }
}

/// `(left word, relation, right word)` indices in insertion order: by |u| + |v|,
/// then relation, then right word, then left word.
fn products<'a>(
    by_length: &'a [Range<usize>],
    active: &'a [usize],
    d: usize,
) -> impl Iterator<Item = (usize, usize, usize)> + 'a {
    (0..=2 * d).flat_map(move |total| {
        active.iter().flat_map(move |&j| {
            (total.saturating_sub(d)..=total.min(d)).flat_map(move |lv| {
                by_length[lv].clone().flat_map(move |v| by_length[total - lv].clone().map(move |u| (u, j, v)))
            })
        })
    })
}

fn product_row<D: Domain>(d: &D, ranker: &Ranker, u: &[u32], f: &NcPoly, v: &[u32], id: u32) -> Row<D::E> {
    let mut entries: SmallVec<[(u64, D::E); 2]> = f
        .terms()
        .map(|(w, c)| (ranker.key(&[u, w.letters(), v]).expect("product words are ranked"), d.lift(c)))
        .collect();
    entries.sort_unstable_by_key(|(k, _)| *k);
    Row { entries, combo: smallvec![(id, d.one())] }
}

/// Searches for `target = Σ p_l f_{j_l} q_l` with every `p_l`, `q_l` supported on words of length ≤ D.
pub fn member_with_cofactors(
    sig: &Signature,
    target: &NcPoly,
    relations: &[NcPoly],
    bound: SearchBound,
) -> Result<Option<CofactorRep>, Error> {
    sig.check(target)?;
    for r in relations {
        sig.check(r)?;
    }
    let alphabet: Vec<u32> = (0..sig.len() as u32).collect();
    MembershipEngine::new(sig.ring(), relations, &alphabet, bound)?.solve(target)
}

/// Looks for `u = Σ p·y·q` (y of degree 1, p and q in degree-0 generators) with ∂u = 1.
///
/// Requires every generator to have degree ≥ 0.
pub fn acyclicity_witness(a: &SemifreeDga, bound: SearchBound) -> Result<Option<NcPoly>, Error> {
    let h0 = a.h0_presentation()?;
    let sig = a.signature();
    let zeros = sig.indices_of_degree(0);
    let ones: Vec<u32> = sig.indices_of_degree(1).into_iter().filter(|&y| !a.differential(y).is_zero()).collect();
    let Some(rep) = member_with_cofactors(h0.signature(), &h0.signature().one(), h0.relations(), bound)? else {
        return Ok(None);
    };
    let witness = lift_cofactors(&rep, &zeros, &ones, sig.ring())?;
    debug_assert!(a.d(&witness).is_one_poly());
    Ok(Some(witness))
}

/// `Σ p·y_{j}·q` in the full signature, where `p`, `q` are over the degree-0
/// generators `zeros` (by position) and relation `j` corresponds to `ys[j]`.
pub fn lift_cofactors(rep: &CofactorRep, zeros: &[u32], ys: &[u32], ring: RingSpec) -> Result<NcPoly, Error> {
    let mut out = NcPoly::zero(ring);
    for t in &rep.triples {
        let y = *ys.get(t.relation).ok_or(Error::IndexOutOfRange { index: t.relation, len: ys.len() })?;
        let middle = NcPoly::generator(ring, y);
        let term = &(&t.left.reindex(zeros) * &middle) * &t.right.reindex(zeros);
        out = &out + &term;
    }
    Ok(out)
}

impl NcPoly {
    fn is_one_poly(&self) -> bool {
        self.len() == 1 && self.max_generator().is_none() && self.constant_term().is_one()
    }
}
