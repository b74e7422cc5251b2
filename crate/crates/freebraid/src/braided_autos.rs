//! Compatibility of free-algebra automorphisms with a diagonal braiding,
//! and the classification of the resulting automorphism groups for two
//! generators.
//!
//! An automorphism `phi` is *braided* when `tau'(phi (x) phi)` equals
//! `(phi (x) phi) tau'` on the braided tensor square. Two decision
//! procedures are provided: a bicharacter condition on the multidegrees
//! of the images (fast, exact), and a truncated oracle that checks the
//! commutation equation verbatim on all split tensors up to a degree
//! bound. The two agree on every input either can see; the suite keeps
//! them side by side as mutual guards.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::autos::{compose, random_member, tame_decompose, Endomorphism, Group};
use crate::braiding::{
    bicharacter_scalar, extend_braiding, extend_braiding_poly, DiagonalBraiding, ExtensionMethod,
    TensorElement,
};
use crate::freealg::{Multidegree, Polynomial, Word};
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// The scalar-valued form `c(a, b) = prod q_ij^(a_i b_j)` attached to a
/// two-generator diagonal braiding, memoized per multidegree pair.
#[derive(Clone, Debug)]
pub struct Bicharacter {
    q: DiagonalBraiding,
    cache: RefCell<HashMap<(Multidegree, Multidegree), Scalar>>,
}

impl Bicharacter {
    pub fn new(q: &DiagonalBraiding) -> Result<Self> {
        if q.n() != 2 {
            return Err(Error::ArityMismatch);
        }
        Ok(Bicharacter { q: q.clone(), cache: RefCell::new(HashMap::new()) })
    }

    pub fn braiding(&self) -> &DiagonalBraiding {
        &self.q
    }

    /// Multiplicative in each argument; `eval(0, b) = 1`.
    pub fn eval(&self, a: &Multidegree, b: &Multidegree) -> Scalar {
        let key = (a.clone(), b.clone());
        if let Some(hit) = self.cache.borrow().get(&key) {
            return hit.clone();
        }
        let val = bicharacter_scalar(&self.q, a, b);
        self.cache.borrow_mut().insert(key, val.clone());
        val
    }
}

/// How to decide braided compatibility: the multidegree bicharacter
/// condition, or direct verification of the commutation equation on all
/// split tensors of total degree at most `D` (`None` picks
/// `deg f1 + deg f2 + 2`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMethod {
    Bicharacter,
    TruncatedOracle(Option<usize>),
}

fn automorphism_gate(phi: &Endomorphism) -> Result<()> {
    match tame_decompose(phi) {
        Ok(Some(_)) => Ok(()),
        Ok(None) | Err(Error::ZeroImage) => Err(Error::NotAnAutomorphism),
        Err(e) => Err(e),
    }
}

fn mdeg_support(p: &Polynomial) -> Vec<Multidegree> {
    p.mdeg_components().into_keys().collect()
}

fn bicharacter_condition(phi: &Endomorphism, q: &DiagonalBraiding) -> Result<bool> {
    let c = Bicharacter::new(q)?;
    let supports = [mdeg_support(phi.f1()), mdeg_support(phi.f2())];
    for i in 0..2 {
        for j in 0..2 {
            let target = q.q(i as u8 + 1, j as u8 + 1);
            for a in &supports[i] {
                for b in &supports[j] {
                    if c.eval(a, b) != *target {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

fn binary_words(len: usize) -> Vec<Word> {
    (0..(1usize << len))
        .map(|bits| {
            Word::from_letters(
                (0..len).map(|k| if bits >> k & 1 == 0 { 1 } else { 2 }).collect(),
            )
        })
        .collect()
}

fn oracle_condition(phi: &Endomorphism, q: &DiagonalBraiding, bound: usize) -> Result<bool> {
    let field = phi.field();
    let mut images: BTreeMap<Word, Polynomial> = BTreeMap::new();
    images.insert(Word::one(), Polynomial::one(2, field));
    for len in 1..=bound {
        for w in binary_words(len) {
            let mut letters = w.letters().to_vec();
            let last = letters.pop().expect("nonempty word");
            let prefix = Word::from_letters(letters);
            let tail = if last == 1 { phi.f1() } else { phi.f2() };
            let img = images[&prefix].multiply(tail)?;
            images.insert(w, img);
        }
    }

    for total in 0..=bound {
        for left_len in 0..=total {
            for u in binary_words(left_len) {
                for v in binary_words(total - left_len) {
                    let mut lhs = TensorElement::zero(2, field);
                    let swapped = extend_braiding(&u, &v, q, ExtensionMethod::ClosedForm)?;
                    for ((a, b), coeff) in swapped.terms() {
                        let piece = TensorElement::from_split(&images[a], &images[b])?;
                        lhs = lhs.add(&piece.scale(coeff));
                    }
                    let moved = TensorElement::from_split(&images[&u], &images[&v])?;
                    let rhs = extend_braiding_poly(&moved, q)?;
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Whether the automorphism commutes with the braiding extension on the
/// tensor square. Rejects non-automorphisms outright.
pub fn is_braided_automorphism(
    phi: &Endomorphism,
    q: &DiagonalBraiding,
    method: CheckMethod,
) -> Result<bool> {
    if q.n() != 2 {
        return Err(Error::ArityMismatch);
    }
    if q.field() != phi.field() {
        return Err(Error::FieldMismatch);
    }
    automorphism_gate(phi)?;
    match method {
        CheckMethod::Bicharacter => bicharacter_condition(phi, q),
        CheckMethod::TruncatedOracle(limit) => {
            let bound = limit.unwrap_or_else(|| {
                let d1 = phi.f1().deg().finite().unwrap_or(0);
                let d2 = phi.f2().deg().finite().unwrap_or(0);
                d1 + d2 + 2
            });
            oracle_condition(phi, q, bound)
        }
    }
}

/// Isomorphism type of the braided automorphism group of an involutive
/// two-generator diagonal braiding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AutGroupKind {
    FullAut,
    OddAut,
    ToricSemidirectZ2,
    TriangularEvenSquares,
    Toric,
}

impl AutGroupKind {
    pub fn name(self) -> &'static str {
        match self {
            AutGroupKind::FullAut => "FullAut",
            AutGroupKind::OddAut => "OddAut",
            AutGroupKind::ToricSemidirectZ2 => "ToricSemidirectZ2",
            AutGroupKind::TriangularEvenSquares => "TriangularEvenSquares",
            AutGroupKind::Toric => "Toric",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            AutGroupKind::FullAut => "the full automorphism group of K<x1,x2>",
            AutGroupKind::OddAut => "automorphisms with images in the odd-length part",
            AutGroupKind::ToricSemidirectZ2 => {
                "(K* x K*) semidirect Z2, with Z2 generated by (x2 ; x1)"
            }
            AutGroupKind::TriangularEvenSquares => "maps (a*x1 + g(x2^2) ; b*x2)",
            AutGroupKind::Toric => "K* x K*",
        }
    }

    /// The concrete subgroup family realizing this kind.
    pub fn group(self) -> Group {
        match self {
            AutGroupKind::FullAut => Group::G1,
            AutGroupKind::OddAut => Group::G2,
            AutGroupKind::ToricSemidirectZ2 => Group::G3,
            AutGroupKind::TriangularEvenSquares => Group::G4,
            AutGroupKind::Toric => Group::G5,
        }
    }
}

impl std::fmt::Display for AutGroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Sorts an involutive two-generator braiding into one of the five group
/// kinds. The five conditions partition all involutive diagonal
/// braidings on two generators.
pub fn classify_aut_group(q: &DiagonalBraiding) -> Result<AutGroupKind> {
    if q.n() != 2 {
        return Err(Error::ArityMismatch);
    }
    if !q.is_involutive() {
        return Err(Error::NotInvolutive);
    }
    let [a, b, c, d] = q.two_var_entries().expect("two generators");
    let one = Scalar::one(q.field());
    let minus = one.neg();
    let all = |v: &Scalar| *a == *v && *b == *v && *c == *v && *d == *v;
    Ok(if all(&one) {
        AutGroupKind::FullAut
    } else if all(&minus) {
        AutGroupKind::OddAut
    } else if a == d && b == c && a.mul(b) == minus {
        AutGroupKind::ToricSemidirectZ2
    } else if *b == one && a.mul(d) == minus {
        AutGroupKind::TriangularEvenSquares
    } else {
        AutGroupKind::Toric
    })
}

/// One checked endomorphism inside a witness report.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessCase {
    pub phi: String,
    pub expected: bool,
    pub bicharacter: bool,
    pub oracle: bool,
    pub ok: bool,
}

/// Outcome of a witness run: random members of the classified group must
/// pass both checks, designated non-members must fail both.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessReport {
    pub schema: u32,
    pub tau: Vec<String>,
    pub group: String,
    pub seed: u64,
    pub truncation: Option<usize>,
    pub cases: Vec<WitnessCase>,
    pub passed: bool,
}

fn swap_conjugate(phi: &Endomorphism) -> Result<Endomorphism> {
    let field = phi.field();
    let swap = Endomorphism::new(
        Polynomial::generator(2, 2, field)?,
        Polynomial::generator(1, 2, field)?,
    )?;
    compose(&compose(&swap, phi)?, &swap)
}

fn non_members(kind: AutGroupKind, field: FieldSpec) -> Vec<Endomorphism> {
    let gen = |i: u8| Polynomial::generator(i, 2, field).expect("two generators");
    let mono = |letters: &[u8]| {
        Polynomial::monomial(
            Word::from_letters(letters.to_vec()),
            Scalar::one(field),
            2,
        )
    };
    let unit = Polynomial::one(2, field);
    let endo = |f1: Polynomial, f2: Polynomial| Endomorphism::new(f1, f2).expect("two variables");
    match kind {
        AutGroupKind::FullAut => vec![],
        AutGroupKind::OddAut => vec![
            endo(gen(1), gen(2).add(&mono(&[1, 1]))),
            endo(gen(1).add(&unit), gen(2)),
        ],
        AutGroupKind::ToricSemidirectZ2 => vec![
            endo(gen(1).add(&gen(2)), gen(2)),
            endo(gen(1).add(&mono(&[2, 2])), gen(2)),
        ],
        AutGroupKind::TriangularEvenSquares => vec![
            endo(gen(2), gen(1)),
            endo(gen(1).add(&mono(&[2, 2, 2])), gen(2)),
        ],
        AutGroupKind::Toric => vec![
            endo(gen(2), gen(1)),
            endo(gen(1).add(&gen(2)), gen(2)),
            endo(gen(1).add(&unit), gen(2)),
        ],
    }
}

/// Classifies the braiding, draws `members` random members of the
/// classified group, pairs them with that kind's standard non-members,
/// and checks every case under both methods. Deterministic in `seed`.
pub fn witness_suite(
    q: &DiagonalBraiding,
    seed: u64,
    members: usize,
    truncation: Option<usize>,
) -> Result<WitnessReport> {
    let kind = classify_aut_group(q)?;
    let field = q.field();
    let minus_one = Scalar::one(field).neg();
    // The triangular family attaches the even squares to whichever
    // generator braids trivially with itself; conjugating by the swap
    // moves the standard members to the mirrored orientation.
    let mirrored =
        kind == AutGroupKind::TriangularEvenSquares && *q.q(1, 1) == minus_one;

    let degree_bound = match kind {
        AutGroupKind::TriangularEvenSquares => 4,
        _ => 3,
    };

    let mut queue: Vec<(Endomorphism, bool)> = Vec::new();
    for m in 0..members {
        let sub = seed ^ ((m as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut member = random_member(kind.group(), degree_bound, sub, field);
        if mirrored {
            member = swap_conjugate(&member)?;
        }
        queue.push((member, true));
    }
    for nm in non_members(kind, field) {
        queue.push((nm, false));
    }

    let mut cases = Vec::with_capacity(queue.len());
    let mut passed = true;
    for (phi, expected) in queue {
        let bicharacter = is_braided_automorphism(&phi, q, CheckMethod::Bicharacter)?;
        let oracle =
            is_braided_automorphism(&phi, q, CheckMethod::TruncatedOracle(truncation))?;
        let ok = bicharacter == expected && oracle == expected;
        passed &= ok;
        cases.push(WitnessCase { phi: phi.to_string(), expected, bicharacter, oracle, ok });
    }

    let tau = q
        .two_var_entries()
        .expect("two generators")
        .iter()
        .map(|s| s.to_string())
        .collect();
    Ok(WitnessReport {
        schema: 1,
        tau,
        group: kind.name().to_string(),
        seed,
        truncation,
        cases,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braiding::dual_braiding;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(v, Q)
    }

    fn signs(v: [i64; 4]) -> DiagonalBraiding {
        DiagonalBraiding::from_signs(v, Q).unwrap()
    }

    fn md(a: usize, b: usize) -> Multidegree {
        Multidegree(vec![a, b])
    }

    fn poly(terms: &[(&[u8], i64)]) -> Polynomial {
        Polynomial::from_terms(
            terms.iter().map(|(ls, c)| (Word::from_letters(ls.to_vec()), s(*c))),
            2,
            Q,
        )
    }

    fn endo(f1: &[(&[u8], i64)], f2: &[(&[u8], i64)]) -> Endomorphism {
        Endomorphism::new(poly(f1), poly(f2)).unwrap()
    }

    fn check_both(phi: &Endomorphism, q: &DiagonalBraiding) -> (bool, bool) {
        (
            is_braided_automorphism(phi, q, CheckMethod::Bicharacter).unwrap(),
            is_braided_automorphism(phi, q, CheckMethod::TruncatedOracle(None)).unwrap(),
        )
    }

    #[test]
    fn bicharacter_on_generator_multidegrees_returns_entries() {
        let q = DiagonalBraiding::two_var([s(2), s(3), s(5), s(7)]).unwrap();
        let c = Bicharacter::new(&q).unwrap();
        assert_eq!(c.eval(&md(1, 0), &md(0, 1)), s(3));
        assert_eq!(c.eval(&md(1, 0), &md(1, 0)), s(2));
        assert_eq!(c.eval(&md(0, 1), &md(1, 0)), s(5));
        assert_eq!(c.eval(&md(0, 0), &md(9, 4)), s(1));
        // repeated lookup hits the cache and stays consistent
        assert_eq!(c.eval(&md(1, 0), &md(0, 1)), s(3));
    }

    #[test]
    fn bicharacter_of_all_minus_one_depends_on_total_degrees() {
        let q = signs([-1, -1, -1, -1]);
        let c = Bicharacter::new(&q).unwrap();
        for (a, b) in [((1, 0), (0, 1)), ((2, 1), (1, 1)), ((1, 2), (0, 2)), ((3, 0), (2, 2))] {
            let total = (a.0 + a.1) * (b.0 + b.1);
            let expected = if total % 2 == 0 { s(1) } else { s(-1) };
            assert_eq!(c.eval(&md(a.0, a.1), &md(b.0, b.1)), expected);
        }
    }

    #[test]
    fn bicharacter_requires_two_generators() {
        let rows = vec![
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
        ];
        let q3 = DiagonalBraiding::new(rows).unwrap();
        assert_eq!(Bicharacter::new(&q3).err(), Some(Error::ArityMismatch));
    }

    #[test]
    fn trivial_braiding_accepts_any_automorphism() {
        let q = signs([1, 1, 1, 1]);
        for phi in [
            endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2], 1)]),
            endo(&[(&[2], 3)], &[(&[1], 1), (&[2, 2, 2], 2)]),
            endo(&[(&[1], 1), (&[], 5)], &[(&[2], -2)]),
        ] {
            assert_eq!(check_both(&phi, &q), (true, true), "phi = {phi}");
        }
    }

    #[test]
    fn triangular_braiding_accepts_even_squares_and_rejects_the_swap() {
        let q = signs([1, 1, 1, -1]);
        let member = endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2], 1)]);
        assert_eq!(check_both(&member, &q), (true, true));
        let swap = endo(&[(&[2], 1)], &[(&[1], 1)]);
        assert_eq!(check_both(&swap, &q), (false, false));
    }

    #[test]
    fn semidirect_braiding_accepts_the_swap_and_rejects_the_shear() {
        let q = signs([1, -1, -1, 1]);
        let swap = endo(&[(&[2], 1)], &[(&[1], 1)]);
        assert_eq!(check_both(&swap, &q), (true, true));
        let shear = endo(&[(&[1], 1), (&[2], 1)], &[(&[2], 1)]);
        assert_eq!(check_both(&shear, &q), (false, false));
    }

    #[test]
    fn odd_braiding_accepts_odd_cubes_and_rejects_even_addends() {
        let q = signs([-1, -1, -1, -1]);
        let odd = endo(&[(&[1], 1)], &[(&[2], 1), (&[1, 1, 1], 1)]);
        assert_eq!(check_both(&odd, &q), (true, true));
        let even = endo(&[(&[1], 1)], &[(&[2], 1), (&[1, 1], 1)]);
        assert_eq!(check_both(&even, &q), (false, false));
    }

    #[test]
    fn toric_braiding_and_its_mirror_accept_scalings_and_reject_shifts() {
        for v in [[1, -1, -1, -1], [-1, -1, -1, 1]] {
            let q = signs(v);
            let scaling = endo(&[(&[1], 2)], &[(&[2], 3)]);
            assert_eq!(check_both(&scaling, &q), (true, true), "tau = {q}");
            let shifted = endo(&[(&[1], 1), (&[], 1)], &[(&[2], 1)]);
            assert_eq!(check_both(&shifted, &q), (false, false), "tau = {q}");
        }
    }

    #[test]
    fn non_automorphisms_are_rejected_with_an_error() {
        let q = signs([1, 1, 1, 1]);
        let commutator = endo(&[(&[1], 1), (&[1, 2], 1), (&[2, 1], -1)], &[(&[2], 1)]);
        for method in [CheckMethod::Bicharacter, CheckMethod::TruncatedOracle(Some(3))] {
            assert_eq!(
                is_braided_automorphism(&commutator, &q, method).err(),
                Some(Error::NotAnAutomorphism)
            );
        }
        let zero = Endomorphism::new(Polynomial::zero(2, Q), poly(&[(&[2], 1)])).unwrap();
        assert_eq!(
            is_braided_automorphism(&zero, &q, CheckMethod::Bicharacter).err(),
            Some(Error::NotAnAutomorphism)
        );
    }

    #[test]
    fn mismatched_inputs_are_errors() {
        let phi = endo(&[(&[1], 1)], &[(&[2], 1)]);
        let rows3 = vec![
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
        ];
        let q3 = DiagonalBraiding::new(rows3).unwrap();
        assert_eq!(
            is_braided_automorphism(&phi, &q3, CheckMethod::Bicharacter).err(),
            Some(Error::ArityMismatch)
        );
        let f5 = FieldSpec::prime_field(5).unwrap();
        let qf5 = DiagonalBraiding::from_signs([1, 1, 1, 1], f5).unwrap();
        assert_eq!(
            is_braided_automorphism(&phi, &qf5, CheckMethod::Bicharacter).err(),
            Some(Error::FieldMismatch)
        );
    }

    #[test]
    fn classification_of_the_eight_sign_vectors() {
        let table: [([i64; 4], AutGroupKind); 8] = [
            ([1, 1, 1, 1], AutGroupKind::FullAut),
            ([-1, -1, -1, -1], AutGroupKind::OddAut),
            ([-1, 1, 1, -1], AutGroupKind::ToricSemidirectZ2),
            ([1, -1, -1, 1], AutGroupKind::ToricSemidirectZ2),
            ([1, 1, 1, -1], AutGroupKind::TriangularEvenSquares),
            ([-1, 1, 1, 1], AutGroupKind::TriangularEvenSquares),
            ([1, -1, -1, -1], AutGroupKind::Toric),
            ([-1, -1, -1, 1], AutGroupKind::Toric),
        ];
        for (v, want) in table {
            assert_eq!(classify_aut_group(&signs(v)).unwrap(), want, "tau = {v:?}");
        }
    }

    #[test]
    fn generic_entries_classify_as_toric() {
        let q = DiagonalBraiding::two_var([
            s(1),
            s(5),
            Scalar::rational(1, 5).unwrap(),
            s(1),
        ])
        .unwrap();
        assert_eq!(classify_aut_group(&q).unwrap(), AutGroupKind::Toric);
        let q2 = DiagonalBraiding::two_var([
            s(1),
            s(-2),
            Scalar::rational(-1, 2).unwrap(),
            s(-1),
        ])
        .unwrap();
        assert_eq!(classify_aut_group(&q2).unwrap(), AutGroupKind::Toric);
    }

    #[test]
    fn classification_refuses_bad_inputs() {
        let q = DiagonalBraiding::two_var([s(2), s(1), s(1), s(1)]).unwrap();
        assert_eq!(classify_aut_group(&q).err(), Some(Error::NotInvolutive));
        let rows3 = vec![
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
            vec![s(1), s(1), s(1)],
        ];
        let q3 = DiagonalBraiding::new(rows3).unwrap();
        assert_eq!(classify_aut_group(&q3).err(), Some(Error::ArityMismatch));
    }

    #[test]
    fn kind_labels_and_families_line_up() {
        let pairs = [
            (AutGroupKind::FullAut, Group::G1, "FullAut"),
            (AutGroupKind::OddAut, Group::G2, "OddAut"),
            (AutGroupKind::ToricSemidirectZ2, Group::G3, "ToricSemidirectZ2"),
            (AutGroupKind::TriangularEvenSquares, Group::G4, "TriangularEvenSquares"),
            (AutGroupKind::Toric, Group::G5, "Toric"),
        ];
        for (kind, family, label) in pairs {
            assert_eq!(kind.group(), family);
            assert_eq!(kind.name(), label);
            assert_eq!(kind.to_string(), label);
            assert!(!kind.description().is_empty());
        }
        assert_eq!(AutGroupKind::Toric.description(), "K* x K*");
    }

    #[test]
    fn witness_suite_passes_on_every_sign_vector() {
        for v in [
            [1, 1, 1, 1],
            [-1, -1, -1, -1],
            [-1, 1, 1, -1],
            [1, -1, -1, 1],
            [1, 1, 1, -1],
            [-1, 1, 1, 1],
            [1, -1, -1, -1],
            [-1, -1, -1, 1],
        ] {
            let report = witness_suite(&signs(v), 11, 3, Some(5)).unwrap();
            assert!(report.passed, "tau = {v:?}");
            let expected_cases = 3 + non_members(
                classify_aut_group(&signs(v)).unwrap(),
                Q,
            )
            .len();
            assert_eq!(report.cases.len(), expected_cases);
            assert!(report.cases.iter().all(|c| c.bicharacter == c.oracle));
        }
    }

    #[test]
    fn witness_suite_report_serializes_with_schema_field() {
        let report = witness_suite(&signs([1, -1, -1, 1]), 3, 2, Some(4)).unwrap();
        let text = serde_json::to_string(&report).unwrap();
        assert!(text.starts_with("{\"schema\":1,"));
        assert!(text.contains("\"group\":\"ToricSemidirectZ2\""));
        assert!(text.contains("\"passed\":true"));
    }

    #[test]
    fn witness_suite_requires_involutivity() {
        let q = DiagonalBraiding::two_var([s(1), s(3), s(1), s(1)]).unwrap();
        assert_eq!(witness_suite(&q, 0, 2, None).err(), Some(Error::NotInvolutive));
    }

    #[test]
    fn witness_suite_handles_the_mirrored_triangular_orientation() {
        let report = witness_suite(&signs([-1, 1, 1, 1]), 5, 4, Some(5)).unwrap();
        assert!(report.passed);
        assert_eq!(report.group, "TriangularEvenSquares");
    }

    #[test]
    fn lemma_examples_for_both_toric_representatives() {
        for v in [[1, -1, -1, -1], [-1, -1, -1, 1]] {
            let q = signs(v);
            let member = endo(&[(&[1], 2)], &[(&[2], 3)]);
            assert_eq!(check_both(&member, &q), (true, true));
            let shifted = endo(&[(&[1], 1), (&[], 1)], &[(&[2], 1)]);
            assert_eq!(check_both(&shifted, &q), (false, false));
        }
    }

    fn pool_scalar(rng: &mut ChaCha8Rng) -> Scalar {
        let vals = [1i64, -1, 2, -2, 3];
        s(vals[rng.random_range(0..vals.len())])
    }

    fn capped_random_automorphism(seed: u64) -> Endomorphism {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = Endomorphism::identity(Q);
        for _ in 0..rng.random_range(1..=3usize) {
            let target: u8 = if rng.random_bool(0.5) { 1 } else { 2 };
            let deg = rng.random_range(0..=3usize);
            let addend = if deg == 0 && rng.random_bool(0.4) {
                Polynomial::zero(2, Q)
            } else {
                Polynomial::monomial(
                    Word::from_letters(vec![3 - target; deg]),
                    pool_scalar(&mut rng),
                    2,
                )
            };
            let e = crate::autos::ElementaryAuto::new(target, pool_scalar(&mut rng), addend)
                .unwrap()
                .to_endomorphism();
            let next = if rng.random_bool(0.5) {
                compose(&acc, &e).unwrap()
            } else {
                compose(&e, &acc).unwrap()
            };
            let small = |p: &Polynomial| {
                p.term_count() <= 3
                    && matches!(p.deg(), crate::freealg::Degree::Finite(d) if d <= 3)
            };
            let total = next.f1().deg().finite().unwrap_or(9)
                + next.f2().deg().finite().unwrap_or(9);
            if small(next.f1()) && small(next.f2()) && total <= 4 {
                acc = next;
            }
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn methods_agree_on_capped_automorphisms(
            seed in 0u64..100_000,
            vector in prop::sample::select(vec![
                [1i64, 1, 1, 1], [-1, -1, -1, -1], [-1, 1, 1, -1], [1, -1, -1, 1],
                [1, 1, 1, -1], [-1, 1, 1, 1], [1, -1, -1, -1], [-1, -1, -1, 1],
            ]),
        ) {
            let q = signs(vector);
            let phi = capped_random_automorphism(seed);
            let fast = is_braided_automorphism(&phi, &q, CheckMethod::Bicharacter).unwrap();
            let slow = is_braided_automorphism(&phi, &q, CheckMethod::TruncatedOracle(None)).unwrap();
            prop_assert_eq!(fast, slow, "phi = {}, tau = {}", phi, q);
        }

        #[test]
        fn passers_compose_to_passers(
            seed in 0u64..100_000,
            vector in prop::sample::select(vec![
                [1i64, 1, 1, 1], [-1, -1, -1, -1], [-1, 1, 1, -1], [1, -1, -1, 1],
                [1, 1, 1, -1], [-1, 1, 1, 1], [1, -1, -1, -1], [-1, -1, -1, 1],
            ]),
        ) {
            let q = signs(vector);
            let a = capped_random_automorphism(seed);
            let b = capped_random_automorphism(seed ^ 0xABCD_EF01);
            let pass = |phi: &Endomorphism| {
                is_braided_automorphism(phi, &q, CheckMethod::Bicharacter).unwrap()
            };
            if pass(&a) && pass(&b) {
                prop_assert!(pass(&compose(&a, &b).unwrap()));
            }
        }

        #[test]
        fn classification_is_dual_invariant(
            vector in prop::sample::select(vec![
                [1i64, 1, 1, 1], [-1, -1, -1, -1], [-1, 1, 1, -1], [1, -1, -1, 1],
                [1, 1, 1, -1], [-1, 1, 1, 1], [1, -1, -1, -1], [-1, -1, -1, 1],
            ]),
            num in 1i64..=9,
            s1 in prop::sample::select(vec![1i64, -1]),
            s2 in prop::sample::select(vec![1i64, -1]),
        ) {
            let q = signs(vector);
            prop_assert_eq!(
                classify_aut_group(&q).unwrap(),
                classify_aut_group(&dual_braiding(&q).unwrap()).unwrap()
            );
            // also a non-sign involutive instance
            let b = Scalar::from_i64(num, Q);
            let generic = DiagonalBraiding::two_var([
                s(s1),
                b.clone(),
                b.inv().unwrap(),
                s(s2),
            ]).unwrap();
            prop_assert_eq!(
                classify_aut_group(&generic).unwrap(),
                classify_aut_group(&dual_braiding(&generic).unwrap()).unwrap()
            );
        }

        #[test]
        fn involutive_bicharacters_pair_to_one(
            s1 in prop::sample::select(vec![1i64, -1]),
            s2 in prop::sample::select(vec![1i64, -1]),
            num in 1i64..=7,
            a1 in 0usize..4, a2 in 0usize..4, b1 in 0usize..4, b2 in 0usize..4,
        ) {
            let b = Scalar::from_i64(num, Q);
            let q = DiagonalBraiding::two_var([
                s(s1),
                b.clone(),
                b.inv().unwrap(),
                s(s2),
            ]).unwrap();
            prop_assert!(q.is_involutive());
            let c = Bicharacter::new(&q).unwrap();
            let x = md(a1, a2);
            let y = md(b1, b2);
            prop_assert!(c.eval(&x, &y).mul(&c.eval(&y, &x)).is_one());
        }
    }
}
