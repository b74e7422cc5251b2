//! Endomorphisms and automorphisms of the two-generated free algebra:
//! composition, elementary automorphisms, decomposition into elementary
//! factors, and the subgroup membership predicates used by the braided
//! classification.
//!
//! Composition follows the left-to-right action convention: in
//! `compose(phi, psi)` the map `phi` acts first, so the images of the
//! composite are `phi`'s images with `psi` substituted into them.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::freealg::{Degree, Grading, Parity, Polynomial, Word};
use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// An algebra endomorphism of `K<x1,x2>`, given by the images of the two
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    f1: Polynomial,
    f2: Polynomial,
}

impl Endomorphism {
    pub fn new(f1: Polynomial, f2: Polynomial) -> Result<Self> {
        if f1.n_vars() != 2 || f2.n_vars() != 2 {
            return Err(Error::ArityMismatch);
        }
        if f1.field() != f2.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(Endomorphism { f1, f2 })
    }

    pub fn identity(field: FieldSpec) -> Self {
        Endomorphism {
            f1: Polynomial::generator(1, 2, field).expect("two generators"),
            f2: Polynomial::generator(2, 2, field).expect("two generators"),
        }
    }

    pub fn f1(&self) -> &Polynomial {
        &self.f1
    }

    pub fn f2(&self) -> &Polynomial {
        &self.f2
    }

    pub fn field(&self) -> FieldSpec {
        self.f1.field()
    }

    pub fn is_identity(&self) -> bool {
        self == &Endomorphism::identity(self.field())
    }

    /// Total degree `deg f1 + deg f2`; minus infinity if an image is zero.
    pub fn deg(&self) -> Degree {
        match (self.f1.deg().finite(), self.f2.deg().finite()) {
            (Some(a), Some(b)) => Degree::Finite(a + b),
            _ => Degree::MinusInfinity,
        }
    }

    /// The image of an arbitrary polynomial under the induced algebra map.
    pub fn apply(&self, p: &Polynomial) -> Result<Polynomial> {
        p.substitute(&[self.f1.clone(), self.f2.clone()])
    }

    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        compose(self, other)
    }

    /// Degree-1 coefficients as `[a11, a12, a21, a22]` with `f_i = a_i1 x1 +
    /// a_i2 x2 + ...`.
    pub fn linear_part(&self) -> [Scalar; 4] {
        let x1 = Word::generator(1);
        let x2 = Word::generator(2);
        [
            self.f1.coeff(&x1),
            self.f1.coeff(&x2),
            self.f2.coeff(&x1),
            self.f2.coeff(&x2),
        ]
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} ; {})", self.f1, self.f2)
    }
}

/// `compose(phi, psi)` is the map "phi then psi": generator images of `phi`
/// with `psi` substituted into them. Associative.
pub fn compose(phi: &Endomorphism, psi: &Endomorphism) -> Result<Endomorphism> {
    if phi.field() != psi.field() {
        return Err(Error::FieldMismatch);
    }
    Endomorphism::new(psi.apply(&phi.f1)?, psi.apply(&phi.f2)?)
}

/// Whether the 2x2 matrix of degree-1 coefficients is invertible.
pub fn linear_part_invertible(phi: &Endomorphism) -> bool {
    let [a, b, c, d] = phi.linear_part();
    !a.mul(&d).sub(&b.mul(&c)).is_zero()
}

/// An automorphism fixing one generator and mapping the other to
/// `scale * x_target + addend`, with the addend free of the target
/// generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryAuto {
    target: u8,
    scale: Scalar,
    addend: Polynomial,
}

impl ElementaryAuto {
    pub fn new(target: u8, scale: Scalar, addend: Polynomial) -> Result<Self> {
        if target != 1 && target != 2 {
            return Err(Error::IndexOutOfRange { pos: target as usize, len: 2 });
        }
        if scale.is_zero() {
            return Err(Error::NonInvertible);
        }
        if addend.n_vars() != 2 {
            return Err(Error::ArityMismatch);
        }
        if addend.field() != scale.field() {
            return Err(Error::FieldMismatch);
        }
        if addend.terms().any(|(w, _)| w.count(target) > 0) {
            return Err(Error::AddendUsesTarget);
        }
        Ok(ElementaryAuto { target, scale, addend })
    }

    pub fn target(&self) -> u8 {
        self.target
    }

    pub fn scale(&self) -> &Scalar {
        &self.scale
    }

    pub fn addend(&self) -> &Polynomial {
        &self.addend
    }

    pub fn field(&self) -> FieldSpec {
        self.scale.field()
    }

    pub fn to_endomorphism(&self) -> Endomorphism {
        let field = self.field();
        let moved = Polynomial::generator(self.target, 2, field)
            .expect("target validated")
            .scale(&self.scale)
            .add(&self.addend);
        let other = Polynomial::generator(3 - self.target, 2, field).expect("target validated");
        if self.target == 1 {
            Endomorphism { f1: moved, f2: other }
        } else {
            Endomorphism { f1: other, f2: moved }
        }
    }

    fn is_identity(&self) -> bool {
        self.scale.is_one() && self.addend.is_zero()
    }
}

impl fmt::Display for ElementaryAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_endomorphism())
    }
}

/// A factorization of an automorphism into elementary automorphisms,
/// applied left to right. The affine tail always factors completely here,
/// so `residual_affine` is retained only as a witness slot and stays empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameDecomposition {
    pub factors: Vec<ElementaryAuto>,
    pub residual_affine: Option<Endomorphism>,
    field: FieldSpec,
}

impl TameDecomposition {
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn recompose(&self) -> Result<Endomorphism> {
        let mut acc = Endomorphism::identity(self.field);
        for e in &self.factors {
            acc = compose(&acc, &e.to_endomorphism())?;
        }
        if let Some(res) = &self.residual_affine {
            acc = compose(&acc, res)?;
        }
        Ok(acc)
    }
}

fn linear_power_of_highest_part(f: &Polynomial) -> Option<(Scalar, Scalar, Scalar, usize)> {
    let top = f.highest_part().ok()?;
    top.match_linear_power().expect("highest part is homogeneous and nonzero")
}

/// One step of degree reduction: if the highest parts of the images are
/// powers of one shared linear form with divisible exponents, subtracts
/// the matching power of the shorter image from the longer one. Returns
/// the peeled elementary factor `e` and the reduced map `psi` with
/// `phi = compose(e, psi)` and `deg psi < deg phi`; `None` when the
/// pattern fails, which certifies the input is not an automorphism.
pub fn elementary_reduce(phi: &Endomorphism) -> Option<(ElementaryAuto, Endomorphism)> {
    let d1 = phi.f1.deg().finite()?;
    let d2 = phi.f2.deg().finite()?;
    if d1 + d2 < 3 {
        return None;
    }
    let (alpha, a1, b1, _) = linear_power_of_highest_part(&phi.f1)?;
    let (beta, a2, b2, _) = linear_power_of_highest_part(&phi.f2)?;
    if (a1, b1) != (a2, b2) {
        return None;
    }

    let reduce_second = |(): ()| -> Option<(ElementaryAuto, Endomorphism)> {
        if d1 == 0 || d2 % d1 != 0 {
            return None;
        }
        let t = d2 / d1;
        let gamma = beta.div(&alpha.pow(t as i64).ok()?).ok()?;
        let new_f2 = phi.f2.sub(&phi.f1.pow(t).ok()?.scale(&gamma));
        if new_f2.is_zero() {
            return None;
        }
        let addend = Polynomial::monomial(
            Word::from_letters(vec![1; t]),
            gamma,
            2,
        );
        let e = ElementaryAuto::new(2, Scalar::one(phi.field()), addend).ok()?;
        Some((e, Endomorphism { f1: phi.f1.clone(), f2: new_f2 }))
    };
    let reduce_first = |(): ()| -> Option<(ElementaryAuto, Endomorphism)> {
        if d2 == 0 || d1 % d2 != 0 {
            return None;
        }
        let t = d1 / d2;
        let gamma = alpha.div(&beta.pow(t as i64).ok()?).ok()?;
        let new_f1 = phi.f1.sub(&phi.f2.pow(t).ok()?.scale(&gamma));
        if new_f1.is_zero() {
            return None;
        }
        let addend = Polynomial::monomial(
            Word::from_letters(vec![2; t]),
            gamma,
            2,
        );
        let e = ElementaryAuto::new(1, Scalar::one(phi.field()), addend).ok()?;
        Some((e, Endomorphism { f1: new_f1, f2: phi.f2.clone() }))
    };

    if d2 >= d1 {
        if let Some(hit) = reduce_second(()) {
            return Some(hit);
        }
    }
    if d1 >= d2 {
        if let Some(hit) = reduce_first(()) {
            return Some(hit);
        }
    }
    None
}

/// Full decomposition into elementary factors: degree reduction down to
/// the affine range, then exact elimination of the affine part. `None`
/// certifies a non-automorphism; the factor product always recomposes to
/// the input exactly.
pub fn tame_decompose(phi: &Endomorphism) -> Result<Option<TameDecomposition>> {
    if phi.f1.is_zero() || phi.f2.is_zero() {
        return Err(Error::ZeroImage);
    }
    let field = phi.field();
    let mut factors = Vec::new();
    let mut cur = phi.clone();
    loop {
        match cur.deg() {
            Degree::MinusInfinity => return Ok(None),
            Degree::Finite(d) if d >= 3 => match elementary_reduce(&cur) {
                Some((e, psi)) => {
                    factors.push(e);
                    cur = psi;
                }
                None => return Ok(None),
            },
            Degree::Finite(_) => break,
        }
    }

    let affine_range = |p: &Polynomial| matches!(p.deg(), Degree::Finite(d) if d <= 1);
    if !affine_range(&cur.f1) || !affine_range(&cur.f2) {
        return Ok(None);
    }
    let [a1, a2, b1, b2] = cur.linear_part();
    let det = a1.mul(&b2).sub(&a2.mul(&b1));
    if det.is_zero() {
        return Ok(None);
    }
    let g1 = cur.f1.coeff(&Word::one());
    let g2 = cur.f2.coeff(&Word::one());

    let one = Scalar::one(field);
    let push = |factors: &mut Vec<ElementaryAuto>, e: ElementaryAuto| {
        if !e.is_identity() {
            factors.push(e);
        }
    };

    if !g1.is_zero() {
        let shift = ElementaryAuto::new(1, one.clone(), Polynomial::constant(g1, 2))?;
        push(&mut factors, shift);
    }
    if !g2.is_zero() {
        let shift = ElementaryAuto::new(2, one.clone(), Polynomial::constant(g2, 2))?;
        push(&mut factors, shift);
    }

    let x1 = |c: &Scalar| Polynomial::monomial(Word::generator(1), c.clone(), 2);
    let x2 = |c: &Scalar| Polynomial::monomial(Word::generator(2), c.clone(), 2);

    let (a1, a2, b1) = if a1.is_zero() {
        // Shear first so that the x1 coefficient of the first image is
        // nonzero; the remaining matrix has the same determinant.
        let shear = ElementaryAuto::new(1, one.clone(), x2(&one))?;
        push(&mut factors, shear);
        (a1.sub(&b1), a2.sub(&b2), b1)
    } else {
        (a1, a2, b1)
    };

    let c = b1.div(&a1)?;
    let d = det.div(&a1)?;
    push(
        &mut factors,
        ElementaryAuto::new(2, d, x1(&c))?,
    );
    push(
        &mut factors,
        ElementaryAuto::new(1, a1, x2(&a2))?,
    );

    Ok(Some(TameDecomposition { factors, residual_affine: None, field }))
}

/// The nested automorphism families: the full group, the odd-image
/// subgroup, monomial maps, triangular maps with even squares added to the
/// first generator, and diagonal scalings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    G1,
    G2,
    G3,
    G4,
    G5,
}

fn single_generator_term(f: &Polynomial, i: u8) -> bool {
    f.term_count() == 1 && !f.coeff(&Word::generator(i)).is_zero()
}

/// Membership in the requested family. `G1` and `G2` go through the
/// decomposition algorithm; the others are shape checks.
pub fn group_membership(phi: &Endomorphism, g: Group) -> bool {
    let is_auto = || matches!(tame_decompose(phi), Ok(Some(_)));
    match g {
        Group::G1 => is_auto(),
        Group::G2 => {
            phi.f1.grade_parity(Grading::WordLength) == Ok(Parity::Odd)
                && phi.f2.grade_parity(Grading::WordLength) == Ok(Parity::Odd)
                && is_auto()
        }
        Group::G3 => {
            (single_generator_term(&phi.f1, 1) && single_generator_term(&phi.f2, 2))
                || (single_generator_term(&phi.f1, 2) && single_generator_term(&phi.f2, 1))
        }
        Group::G4 => {
            if !single_generator_term(&phi.f2, 2) {
                return false;
            }
            if phi.f1.coeff(&Word::generator(1)).is_zero() {
                return false;
            }
            phi.f1.terms().all(|(w, _)| {
                w.letters() == [1] || (w.count(1) == 0 && w.len() % 2 == 0)
            })
        }
        Group::G5 => {
            single_generator_term(&phi.f1, 1) && single_generator_term(&phi.f2, 2)
        }
    }
}

fn coefficient_pool(field: FieldSpec) -> Vec<Scalar> {
    let mut pool: Vec<Scalar> = Vec::new();
    for v in [1i64, -1, 2, -2, 3] {
        let s = Scalar::from_i64(v, field);
        if !s.is_zero() && !pool.contains(&s) {
            pool.push(s);
        }
    }
    if field == FieldSpec::Rationals {
        pool.push(Scalar::rational(1, 2).expect("nonzero denominator"));
        pool.push(Scalar::rational(-1, 2).expect("nonzero denominator"));
    }
    pool
}

/// A deterministic pseudo-random member of the requested family. Sizes are
/// kept small on purpose: image term counts and degrees stay bounded so
/// that oracle-style checks over these members remain exact and fast.
pub fn random_member(g: Group, degree_bound: usize, seed: u64, field: FieldSpec) -> Endomorphism {
    assert!(degree_bound >= 1, "degree bound must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = coefficient_pool(field);
    let pick = |rng: &mut ChaCha8Rng| pool[rng.random_range(0..pool.len())].clone();

    let diag = |a: Scalar, b: Scalar| Endomorphism {
        f1: Polynomial::monomial(Word::generator(1), a, 2),
        f2: Polynomial::monomial(Word::generator(2), b, 2),
    };
    let anti = |a: Scalar, b: Scalar| Endomorphism {
        f1: Polynomial::monomial(Word::generator(2), a, 2),
        f2: Polynomial::monomial(Word::generator(1), b, 2),
    };

    match g {
        Group::G5 => diag(pick(&mut rng), pick(&mut rng)),
        Group::G3 => {
            let (a, b) = (pick(&mut rng), pick(&mut rng));
            if rng.random_bool(0.5) {
                diag(a, b)
            } else {
                anti(a, b)
            }
        }
        Group::G4 => {
            let mut f1 = Polynomial::monomial(Word::generator(1), pick(&mut rng), 2);
            let k_max = (degree_bound / 2).min(3);
            if k_max >= 1 && rng.random_bool(0.7) {
                let k = rng.random_range(1..=k_max);
                let term = Polynomial::monomial(
                    Word::from_letters(vec![2; 2 * k]),
                    pick(&mut rng),
                    2,
                );
                f1 = f1.add(&term);
            }
            if rng.random_bool(0.25) {
                f1 = f1.add(&Polynomial::constant(pick(&mut rng), 2));
            }
            let f2 = Polynomial::monomial(Word::generator(2), pick(&mut rng), 2);
            Endomorphism { f1, f2 }
        }
        Group::G2 | Group::G1 => {
            let mut phi = if rng.random_bool(0.7) {
                diag(pick(&mut rng), pick(&mut rng))
            } else {
                anti(pick(&mut rng), pick(&mut rng))
            };
            let twists = rng.random_range(0..=2);
            for _ in 0..twists {
                let target: u8 = if rng.random_bool(0.5) { 1 } else { 2 };
                let t = match g {
                    Group::G2 => {
                        if degree_bound >= 3 && rng.random_bool(0.5) {
                            3
                        } else {
                            1
                        }
                    }
                    _ => rng.random_range(1..=degree_bound.min(3)),
                };
                let addend = Polynomial::monomial(
                    Word::from_letters(vec![3 - target; t]),
                    pick(&mut rng),
                    2,
                );
                let e = ElementaryAuto::new(target, pick(&mut rng), addend)
                    .expect("addend avoids target")
                    .to_endomorphism();
                let next = if rng.random_bool(0.5) {
                    compose(&e, &phi)
                } else {
                    compose(&phi, &e)
                }
                .expect("same field");
                let small = |p: &Polynomial| {
                    p.term_count() <= 3
                        && matches!(p.deg(), Degree::Finite(d) if d <= degree_bound.max(3))
                };
                if small(&next.f1) && small(&next.f2) {
                    phi = next;
                }
            }
            if g == Group::G1 && rng.random_bool(0.3) {
                let shift = Endomorphism {
                    f1: Polynomial::generator(1, 2, field)
                        .expect("two generators")
                        .add(&Polynomial::constant(pick(&mut rng), 2)),
                    f2: Polynomial::generator(2, 2, field).expect("two generators"),
                };
                let shifted = compose(&shift, &phi).expect("same field");
                if shifted.f1.term_count() <= 3 {
                    phi = shifted;
                }
            }
            phi
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn s(v: i64) -> Scalar {
        Scalar::from_i64(v, Q)
    }

    fn w(letters: &[u8]) -> Word {
        Word::from_letters(letters.to_vec())
    }

    fn poly(terms: &[(&[u8], i64)]) -> Polynomial {
        Polynomial::from_terms(terms.iter().map(|(ls, c)| (w(ls), s(*c))), 2, Q)
    }

    fn endo(f1: &[(&[u8], i64)], f2: &[(&[u8], i64)]) -> Endomorphism {
        Endomorphism::new(poly(f1), poly(f2)).unwrap()
    }

    fn naive_substitute(p: &Polynomial, images: &[Polynomial; 2]) -> Polynomial {
        let mut out = Polynomial::zero(2, Q);
        for (word, c) in p.terms() {
            let mut term = Polynomial::constant(c.clone(), 2);
            for &l in word.letters() {
                term = term.multiply(&images[(l - 1) as usize]).unwrap();
            }
            out = out.add(&term);
        }
        out
    }

    #[test]
    fn compose_with_identity_is_neutral() {
        let phi = endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2], 1)]);
        let id = Endomorphism::identity(Q);
        assert_eq!(compose(&phi, &id).unwrap(), phi);
        assert_eq!(compose(&id, &phi).unwrap(), phi);
    }

    #[test]
    fn swap_is_an_involution() {
        let swap = endo(&[(&[2], 1)], &[(&[1], 1)]);
        assert!(compose(&swap, &swap).unwrap().is_identity());
    }

    #[test]
    fn composition_matches_brute_force_substitution() {
        let phi = endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2], 1)]);
        let psi = endo(&[(&[1], 1)], &[(&[2], 1), (&[1], 1)]);
        let got = compose(&phi, &psi).unwrap();
        let images = [psi.f1().clone(), psi.f2().clone()];
        assert_eq!(*got.f1(), naive_substitute(phi.f1(), &images));
        assert_eq!(*got.f2(), naive_substitute(phi.f2(), &images));
    }

    #[test]
    fn linear_part_examples() {
        assert!(linear_part_invertible(&Endomorphism::identity(Q)));
        let degenerate = endo(&[(&[1], 1), (&[2], 1)], &[(&[1], 1), (&[2], 1), (&[], 1)]);
        assert!(!linear_part_invertible(&degenerate));
        let skew = endo(&[(&[2], 1)], &[(&[1], 1), (&[2, 2, 2], 1)]);
        assert!(linear_part_invertible(&skew));
    }

    #[test]
    fn single_cubic_shear_reduces_in_one_step() {
        let phi = endo(&[(&[1], 1)], &[(&[2], 1), (&[1, 1, 1], 1)]);
        let (e, psi) = elementary_reduce(&phi).unwrap();
        assert_eq!(e.target(), 2);
        assert_eq!(*e.scale(), s(1));
        assert_eq!(*e.addend(), poly(&[(&[1, 1, 1], 1)]));
        assert!(psi.is_identity());
        assert_eq!(compose(&e.to_endomorphism(), &psi).unwrap(), phi);
    }

    #[test]
    fn reduction_peels_the_outermost_factor() {
        let outer = endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2], 1)]);
        let inner = endo(&[(&[1], 1)], &[(&[2], 1), (&[1, 1, 1], 1)]);
        let phi = compose(&outer, &inner).unwrap();
        assert_eq!(phi.deg(), Degree::Finite(9));

        let (e, psi) = elementary_reduce(&phi).unwrap();
        assert_eq!(psi, inner);
        assert_eq!(e.to_endomorphism(), outer);
        assert!(psi.deg() < phi.deg());
    }

    #[test]
    fn commutator_highest_part_blocks_reduction() {
        let phi = endo(&[(&[1], 1), (&[1, 2], 1), (&[2, 1], -1)], &[(&[2], 1)]);
        assert!(elementary_reduce(&phi).is_none());
        assert_eq!(tame_decompose(&phi).unwrap(), None);
    }

    #[test]
    fn identity_decomposes_to_nothing() {
        let d = tame_decompose(&Endomorphism::identity(Q)).unwrap().unwrap();
        assert!(d.factors.is_empty());
        assert!(d.residual_affine.is_none());
        assert!(d.recompose().unwrap().is_identity());
    }

    #[test]
    fn diagonal_scaling_yields_two_scaling_factors() {
        let phi = endo(&[(&[1], 2)], &[(&[2], 3)]);
        let d = tame_decompose(&phi).unwrap().unwrap();
        assert_eq!(d.factors.len(), 2);
        assert!(d.factors.iter().all(|e| e.addend().is_zero()));
        assert_eq!(d.recompose().unwrap(), phi);
    }

    #[test]
    fn affine_with_shifts_round_trips() {
        let phi = endo(
            &[(&[1], 2), (&[2], 3), (&[], 7)],
            &[(&[1], 4), (&[2], 5), (&[], -1)],
        );
        let d = tame_decompose(&phi).unwrap().unwrap();
        assert!(d.residual_affine.is_none());
        assert_eq!(d.recompose().unwrap(), phi);
    }

    #[test]
    fn antidiagonal_affine_round_trips() {
        let phi = endo(&[(&[2], 3)], &[(&[1], -2), (&[2], 1)]);
        let d = tame_decompose(&phi).unwrap().unwrap();
        assert_eq!(d.recompose().unwrap(), phi);
    }

    #[test]
    fn singular_affine_is_rejected() {
        let phi = endo(&[(&[1], 1), (&[2], 1)], &[(&[1], 1), (&[2], 1), (&[], 1)]);
        assert_eq!(tame_decompose(&phi).unwrap(), None);
        let quadratic_over_constant = endo(&[(&[1, 1], 1)], &[(&[], 1)]);
        assert_eq!(tame_decompose(&quadratic_over_constant).unwrap(), None);
    }

    #[test]
    fn zero_image_is_an_error() {
        let phi = Endomorphism::new(Polynomial::zero(2, Q), poly(&[(&[2], 1)])).unwrap();
        assert_eq!(tame_decompose(&phi), Err(Error::ZeroImage));
    }

    #[test]
    fn mismatched_linear_powers_are_rejected() {
        // Images x1^2 and x2 have different underlying linear forms.
        let phi = endo(&[(&[1, 1], 1)], &[(&[2], 1)]);
        assert_eq!(tame_decompose(&phi).unwrap(), None);
        // Equal images cancel to zero in either direction, so no step exists.
        let dependent = endo(&[(&[1], 1), (&[2, 2], 1)], &[(&[2, 2], 1), (&[1], 1)]);
        assert_eq!(tame_decompose(&dependent).unwrap(), None);
    }

    #[test]
    fn membership_examples() {
        let swap = endo(&[(&[2], 1)], &[(&[1], 1)]);
        assert!(group_membership(&swap, Group::G3));
        assert!(!group_membership(&swap, Group::G5));
        assert!(group_membership(&swap, Group::G1));

        let g4 = endo(&[(&[1], 2), (&[2, 2, 2, 2], 1), (&[], 3)], &[(&[2], 1)]);
        assert!(group_membership(&g4, Group::G4));
        assert!(!group_membership(&g4, Group::G2));

        let odd = endo(&[(&[1], 1)], &[(&[2], 1), (&[1, 1, 1], 1)]);
        assert!(group_membership(&odd, Group::G2));
        assert!(!group_membership(&odd, Group::G4));

        let odd_power_shear = endo(&[(&[1], 1), (&[2, 2, 2], 1)], &[(&[2], 1)]);
        assert!(!group_membership(&odd_power_shear, Group::G4));
        assert!(group_membership(&odd_power_shear, Group::G1));
    }

    fn random_elementary(rng: &mut ChaCha8Rng, max_addend_deg: usize) -> ElementaryAuto {
        let pool = coefficient_pool(Q);
        let target: u8 = if rng.random_bool(0.5) { 1 } else { 2 };
        let scale = pool[rng.random_range(0..pool.len())].clone();
        let deg = rng.random_range(0..=max_addend_deg);
        let addend = if deg == 0 && rng.random_bool(0.5) {
            Polynomial::zero(2, Q)
        } else {
            Polynomial::monomial(
                Word::from_letters(vec![3 - target; deg]),
                pool[rng.random_range(0..pool.len())].clone(),
                2,
            )
        };
        ElementaryAuto::new(target, scale, addend).unwrap()
    }

    fn random_elementary_product(seed: u64, max_factors: usize) -> Endomorphism {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut acc = Endomorphism::identity(Q);
        let wanted = rng.random_range(1..=max_factors);
        for _ in 0..wanted {
            let e = random_elementary(&mut rng, 3);
            let next = compose(&acc, &e.to_endomorphism()).unwrap();
            let ok = |p: &Polynomial| {
                p.term_count() <= 150 && matches!(p.deg(), Degree::Finite(d) if d <= 12)
            };
            if ok(next.f1()) && ok(next.f2()) {
                acc = next;
            }
        }
        acc
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn elementary_products_decompose_and_round_trip(seed in 0u64..10_000) {
            let phi = random_elementary_product(seed, 6);
            let d = tame_decompose(&phi).unwrap().expect("product of elementaries");
            prop_assert_eq!(d.recompose().unwrap(), phi);
        }

        #[test]
        fn accepted_high_degree_maps_obey_the_shared_power_shape(seed in 0u64..5_000) {
            let phi = random_elementary_product(seed, 4);
            if phi.deg() >= Degree::Finite(3) && tame_decompose(&phi).unwrap().is_some() {
                let (_, a1, b1, r) = linear_power_of_highest_part(phi.f1()).expect("shape");
                let (_, a2, b2, t) = linear_power_of_highest_part(phi.f2()).expect("shape");
                prop_assert_eq!((a1, b1), (a2, b2));
                prop_assert!(r % t == 0 || t % r == 0);
            }
        }

        #[test]
        fn reduction_strictly_decreases_degree(seed in 0u64..5_000) {
            let phi = random_elementary_product(seed, 5);
            if let Some((_, psi)) = elementary_reduce(&phi) {
                prop_assert!(psi.deg() < phi.deg());
            }
        }

        #[test]
        fn random_members_land_in_their_groups(seed in 0u64..2_000, bound in 1usize..=6) {
            for g in [Group::G1, Group::G2, Group::G3, Group::G4, Group::G5] {
                let m = random_member(g, bound, seed, Q);
                prop_assert!(group_membership(&m, g), "group {:?} seed {} got {}", g, seed, m);
            }
        }

        #[test]
        fn subgroup_inclusions_hold_on_random_members(seed in 0u64..2_000) {
            let m5 = random_member(Group::G5, 4, seed, Q);
            for g in [Group::G2, Group::G3, Group::G4, Group::G1] {
                prop_assert!(group_membership(&m5, g));
            }
            let m4 = random_member(Group::G4, 6, seed, Q);
            prop_assert!(group_membership(&m4, Group::G1));
            let m3 = random_member(Group::G3, 4, seed, Q);
            prop_assert!(group_membership(&m3, Group::G1));
        }

        #[test]
        fn families_are_closed_under_composition(seed in 0u64..1_000) {
            for g in [Group::G2, Group::G3, Group::G4, Group::G5] {
                let a = random_member(g, 4, seed, Q);
                let b = random_member(g, 4, seed ^ 0x9e37_79b9, Q);
                let ab = compose(&a, &b).unwrap();
                prop_assert!(group_membership(&ab, g), "group {:?}: {} . {} = {}", g, a, b, ab);
            }
        }

        #[test]
        fn prime_field_members_stay_members(seed in 0u64..500) {
            let f5 = FieldSpec::prime_field(5).unwrap();
            for g in [Group::G1, Group::G2, Group::G3, Group::G4, Group::G5] {
                let m = random_member(g, 4, seed, f5);
                prop_assert!(group_membership(&m, g));
            }
        }
    }
}
