//! The free associative algebra `K<x_1,...,x_n>`: words, polynomials,
//! noncommutative products, gradings, multidegrees, and the recognition of
//! powers of linear forms used by the tame-decomposition machinery.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{FieldSpec, Scalar};
use crate::{Error, Result};

/// An associative word in the generators: a finite sequence of 1-based
/// generator indices. The empty word is the unit monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    letters: Vec<u8>,
}

impl Word {
    pub fn one() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn generator(i: u8) -> Self {
        assert!(i >= 1, "generator indices are 1-based");
        Word { letters: vec![i] }
    }

    pub fn from_letters(letters: Vec<u8>) -> Self {
        assert!(letters.iter().all(|&l| l >= 1), "generator indices are 1-based");
        Word { letters }
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Splits into (prefix of length `at`, remainder).
    pub fn split_at(&self, at: usize) -> (Word, Word) {
        let (a, b) = self.letters.split_at(at);
        (Word { letters: a.to_vec() }, Word { letters: b.to_vec() })
    }

    pub fn mdeg(&self, n_vars: usize) -> Multidegree {
        let mut exps = vec![0usize; n_vars];
        for &l in &self.letters {
            exps[(l - 1) as usize] += 1;
        }
        Multidegree(exps)
    }

    /// Number of occurrences of generator `i`.
    pub fn count(&self, i: u8) -> usize {
        self.letters.iter().filter(|&&l| l == i).count()
    }
}

/// Degree-lexicographic order with `x1 < x2 < ...`; shorter words come first.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run == 1 {
                write!(f, "x{l}")?;
            } else {
                write!(f, "x{l}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Componentwise multidegree in `Z_{>=0}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multidegree(pub Vec<usize>);

impl Multidegree {
    pub fn zero(n_vars: usize) -> Self {
        Multidegree(vec![0; n_vars])
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        assert_eq!(self.0.len(), other.0.len());
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Total degree of a polynomial; the zero polynomial gets a marker below
/// every finite degree rather than a sentinel integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    WordLength,
    X2Degree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

/// A noncommutative polynomial: a finite word-to-coefficient map with no
/// stored zeros, over a fixed generator count and coefficient field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Word, Scalar>,
    n_vars: usize,
    field: FieldSpec,
}

impl Polynomial {
    pub fn zero(n_vars: usize, field: FieldSpec) -> Self {
        Polynomial { terms: BTreeMap::new(), n_vars, field }
    }

    pub fn one(n_vars: usize, field: FieldSpec) -> Self {
        Self::constant(Scalar::one(field), n_vars)
    }

    pub fn constant(c: Scalar, n_vars: usize) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Word::one(), c);
        }
        Polynomial { terms, n_vars, field }
    }

    pub fn generator(i: u8, n_vars: usize, field: FieldSpec) -> Result<Self> {
        if i < 1 || i as usize > n_vars {
            return Err(Error::IndexOutOfRange { pos: i as usize, len: n_vars });
        }
        Ok(Self::monomial(Word::generator(i), Scalar::one(field), n_vars))
    }

    pub fn monomial(word: Word, coeff: Scalar, n_vars: usize) -> Self {
        let field = coeff.field();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Polynomial { terms, n_vars, field }
    }

    pub fn from_terms<I>(terms: I, n_vars: usize, field: FieldSpec) -> Self
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut p = Polynomial::zero(n_vars, field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in deglex order, coefficients nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| Scalar::zero(self.field))
    }

    fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&c);
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, other.n_vars, "polynomial arity mismatch");
        assert_eq!(self.field, other.field, "polynomial field mismatch");
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect();
        Polynomial { terms, n_vars: self.n_vars, field: self.field }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        assert_eq!(self.field, c.field(), "polynomial field mismatch");
        if c.is_zero() {
            return Polynomial::zero(self.n_vars, self.field);
        }
        let terms = self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect();
        Polynomial { terms, n_vars: self.n_vars, field: self.field }
    }

    /// Noncommutative product: bilinear extension of word concatenation.
    pub fn multiply(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.n_vars != other.n_vars {
            return Err(Error::ArityMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Polynomial::zero(self.n_vars, self.field);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.concat(w2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: usize) -> Result<Polynomial> {
        let mut acc = Polynomial::one(self.n_vars, self.field);
        for _ in 0..exp {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn deg(&self) -> Degree {
        match self.terms.keys().next_back() {
            None => Degree::MinusInfinity,
            Some(w) => Degree::Finite(w.len()),
        }
    }

    /// Splits into multidegree-homogeneous parts; the parts sum back to `self`.
    pub fn mdeg_components(&self) -> BTreeMap<Multidegree, Polynomial> {
        let mut out: BTreeMap<Multidegree, Polynomial> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.mdeg(self.n_vars))
                .or_insert_with(|| Polynomial::zero(self.n_vars, self.field))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    /// The homogeneous component of top degree.
    pub fn highest_part(&self) -> Result<Polynomial> {
        let top = match self.deg() {
            Degree::MinusInfinity => return Err(Error::ZeroPolynomial),
            Degree::Finite(d) => d,
        };
        let terms = self
            .terms
            .iter()
            .filter(|(w, _)| w.len() == top)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        Ok(Polynomial { terms, n_vars: self.n_vars, field: self.field })
    }

    /// `Some(d)` if every term has the same total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys();
        let d = it.next()?.len();
        if it.all(|w| w.len() == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Whether all terms sit in the even part, the odd part, or neither, for
    /// the length grading or the `x2`-degree grading.
    pub fn grade_parity(&self, grading: Grading) -> Result<Parity> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if grading == Grading::X2Degree && self.n_vars != 2 {
            return Err(Error::ArityMismatch);
        }
        let measure = |w: &Word| match grading {
            Grading::WordLength => w.len(),
            Grading::X2Degree => w.count(2),
        };
        let mut seen_even = false;
        let mut seen_odd = false;
        for w in self.terms.keys() {
            if measure(w) % 2 == 0 {
                seen_even = true;
            } else {
                seen_odd = true;
            }
        }
        Ok(match (seen_even, seen_odd) {
            (true, false) => Parity::Even,
            (false, true) => Parity::Odd,
            _ => Parity::Mixed,
        })
    }

    /// Recognizes `h = alpha * (a*x1 + b*x2)^r` for homogeneous `h` of degree
    /// `r >= 1` in two generators, returning the normalized witness with
    /// `a = 1` when `a != 0` and `(a, b) = (0, 1)` otherwise.
    ///
    /// In the free algebra the expansion of `(a*x1 + b*x2)^r` contains every
    /// length-`r` word over `{x1, x2}` exactly once, with coefficient
    /// `a^(count of 1s) * b^(count of 2s)`; the candidate is read off two
    /// coefficients and then verified term by term, so no division by `r`
    /// (and hence no characteristic guard) is ever needed.
    pub fn match_linear_power(&self) -> Result<Option<(Scalar, Scalar, Scalar, usize)>> {
        if self.n_vars != 2 {
            return Err(Error::ArityMismatch);
        }
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let r = match self.homogeneous_degree() {
            Some(d) => d,
            None => return Err(Error::NotHomogeneous),
        };
        if r == 0 {
            return Ok(None);
        }
        let one = Scalar::one(self.field);
        let zero = Scalar::zero(self.field);

        let top = self.coeff(&Word::from_letters(vec![1; r]));
        if top.is_zero() {
            // Only alpha * x2^r remains possible.
            if self.terms.len() != 1 {
                return Ok(None);
            }
            let (w, alpha) = self.terms.iter().next().expect("nonzero");
            if w.letters() == vec![2; r] {
                return Ok(Some((alpha.clone(), zero, one, r)));
            }
            return Ok(None);
        }

        let alpha = top;
        let mut probe = vec![1u8; r];
        probe[r - 1] = 2;
        let b = self.coeff(&Word::from_letters(probe)).div(&alpha).expect("alpha nonzero");

        let expected_count = if b.is_zero() {
            1
        } else {
            1usize.checked_shl(r as u32).unwrap_or(usize::MAX)
        };
        if self.terms.len() != expected_count {
            return Ok(None);
        }
        for (w, c) in &self.terms {
            let want = alpha.mul(&b.pow(w.count(2) as i64).expect("b power"));
            if *c != want {
                return Ok(None);
            }
        }
        Ok(Some((alpha, one, b, r)))
    }

    /// Replaces each generator `x_i` by `images[i-1]` and expands.
    pub fn substitute(&self, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.n_vars {
            return Err(Error::ArityMismatch);
        }
        let (m, field) = match images.first() {
            Some(p) => (p.n_vars, p.field),
            None => (self.n_vars, self.field),
        };
        for p in images {
            if p.n_vars != m {
                return Err(Error::ArityMismatch);
            }
            if p.field != field {
                return Err(Error::FieldMismatch);
            }
        }
        if field != self.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Polynomial::zero(m, field);
        for (w, c) in &self.terms {
            let mut term = Polynomial::constant(c.clone(), m);
            for &l in w.letters() {
                term = term.multiply(&images[(l - 1) as usize])?;
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}
