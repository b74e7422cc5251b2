//! Diagonal braidings on `V = span(x1..xn)`, the braid-monoid operator
//! calculus, the canonical extension of a braiding to the whole tensor
//! algebra, and the isomorphism classification of two-variable involutive
//! diagonal braidings.
//!
//! Superposed operators act left to right: in a factor sequence the first
//! factor is applied first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::freealg::{Multidegree, Polynomial, Word};
use crate::scalar::{FieldSpec, Scalar, Sign};
use crate::{Error, Result};

/// The braiding `x_i (x) x_s |-> q_is * x_s (x) x_i` given by an `n x n`
/// array of nonzero parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalBraiding {
    q: Vec<Scalar>,
    n: usize,
    field: FieldSpec,
}

impl DiagonalBraiding {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::DimensionMismatch { side: 0, n: 1 });
        }
        let field = rows[0][0].field();
        let mut q = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch { side: row.len(), n });
            }
            for entry in row {
                if entry.field() != field {
                    return Err(Error::FieldMismatch);
                }
                if entry.is_zero() {
                    return Err(Error::ZeroBraidingEntry);
                }
                q.push(entry.clone());
            }
        }
        Ok(DiagonalBraiding { q, n, field })
    }

    /// The two-variable braiding `(q11, q12, q21, q22)`.
    pub fn two_var(entries: [Scalar; 4]) -> Result<Self> {
        let [a, b, c, d] = entries;
        DiagonalBraiding::new(vec![vec![a, b], vec![c, d]])
    }

    /// Two-variable braiding from integer parameters (handy for the eight
    /// sign vectors).
    pub fn from_signs(signs: [i64; 4], field: FieldSpec) -> Result<Self> {
        let e = signs.map(|v| Scalar::from_i64(v, field));
        DiagonalBraiding::two_var(e)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Parameter `q_ij`, 1-based.
    pub fn q(&self, i: u8, j: u8) -> &Scalar {
        assert!(i >= 1 && (i as usize) <= self.n && j >= 1 && (j as usize) <= self.n);
        &self.q[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    pub fn two_var_entries(&self) -> Option<[&Scalar; 4]> {
        (self.n == 2).then(|| [&self.q[0], &self.q[1], &self.q[2], &self.q[3]])
    }

    pub fn is_involutive(&self) -> bool {
        is_involutive(self)
    }

    pub fn to_matrix(&self) -> MatrixBraiding {
        let n = self.n;
        let side = n * n;
        let zero = Scalar::zero(self.field);
        let mut entries = vec![zero; side * side];
        for i in 1..=n as u8 {
            for s in 1..=n as u8 {
                let col = (i as usize - 1) * n + (s as usize - 1);
                let row = (s as usize - 1) * n + (i as usize - 1);
                entries[row * side + col] = self.q(i, s).clone();
            }
        }
        MatrixBraiding { entries, side, n, field: self.field }
    }
}

impl fmt::Display for DiagonalBraiding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 2 {
            let [a, b, c, d] = self.two_var_entries().expect("n = 2");
            write!(f, "({a},{b},{c},{d})")
        } else {
            write!(f, "[")?;
            for i in 0..self.n {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "[")?;
                for j in 0..self.n {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", self.q[i * self.n + j])?;
                }
                write!(f, "]")?;
            }
            write!(f, "]")
        }
    }
}

/// An arbitrary linear operator on `V (x) V`, stored as an `n^2 x n^2`
/// matrix over the basis `x_i (x) x_j |-> (i-1)*n + (j-1)`. Used to verify
/// the braid relation for maps that are not diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixBraiding {
    entries: Vec<Scalar>,
    side: usize,
    n: usize,
    field: FieldSpec,
}

impl MatrixBraiding {
    pub fn new(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let side = rows.len();
        let n = (1..).find(|k| k * k >= side).unwrap_or(0);
        if side == 0 || n * n != side {
            return Err(Error::DimensionMismatch { side, n });
        }
        let field = rows[0][0].field();
        let mut entries = Vec::with_capacity(side * side);
        for row in &rows {
            if row.len() != side {
                return Err(Error::DimensionMismatch { side: row.len(), n });
            }
            for e in row {
                if e.field() != field {
                    return Err(Error::FieldMismatch);
                }
                entries.push(e.clone());
            }
        }
        Ok(MatrixBraiding { entries, side, n, field })
    }

    /// The ordinary flip `x (x) y |-> y (x) x`.
    pub fn flip(n: usize, field: FieldSpec) -> Self {
        let side = n * n;
        let mut entries = vec![Scalar::zero(field); side * side];
        for i in 0..n {
            for j in 0..n {
                let col = i * n + j;
                let row = j * n + i;
                entries[row * side + col] = Scalar::one(field);
            }
        }
        MatrixBraiding { entries, side, n, field }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn entry(&self, row: usize, col: usize) -> &Scalar {
        &self.entries[row * self.side + col]
    }

    /// Applies the operator to tensor slots (`slot`, `slot+1`) of a linear
    /// combination of equal-length words.
    fn apply_slot(
        &self,
        state: &BTreeMap<Word, Scalar>,
        slot: usize,
    ) -> Result<BTreeMap<Word, Scalar>> {
        let mut out: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in state {
            let letters = w.letters();
            let a = letters[slot - 1] as usize;
            let b = letters[slot] as usize;
            if a > self.n || b > self.n {
                return Err(Error::IndexOutOfRange { pos: a.max(b), len: self.n });
            }
            let col = (a - 1) * self.n + (b - 1);
            for row in 0..self.side {
                let t = self.entry(row, col);
                if t.is_zero() {
                    continue;
                }
                let mut ls = letters.to_vec();
                ls[slot - 1] = (row / self.n + 1) as u8;
                ls[slot] = (row % self.n + 1) as u8;
                let coeff = c.mul(t);
                let word = Word::from_letters(ls);
                match out.entry(word) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(coeff);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().add(&coeff);
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            e.insert(sum);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Applies `tau_i` to the letters at positions `i`, `i+1` of `w` (1-based):
/// returns the diagonal parameter picked up and the swapped word.
pub fn apply_tau_i(w: &Word, i: usize, q: &DiagonalBraiding) -> Result<(Scalar, Word)> {
    if i < 1 || i >= w.len() {
        return Err(Error::IndexOutOfRange { pos: i, len: w.len().saturating_sub(1) });
    }
    let letters = w.letters();
    let a = letters[i - 1];
    let b = letters[i];
    if a as usize > q.n() || b as usize > q.n() {
        return Err(Error::IndexOutOfRange { pos: a.max(b) as usize, len: q.n() });
    }
    let mut swapped = letters.to_vec();
    swapped.swap(i - 1, i);
    Ok((q.q(a, b).clone(), Word::from_letters(swapped)))
}

/// A product of `tau_i` factors on a fixed tensor power, applied left to
/// right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorWord {
    factors: Vec<usize>,
    ambient: usize,
}

impl OperatorWord {
    pub fn identity(ambient: usize) -> Self {
        OperatorWord { factors: Vec::new(), ambient }
    }

    pub fn tau(i: usize, ambient: usize) -> Result<Self> {
        if i < 1 || i >= ambient {
            return Err(Error::BadIndices { k: i, r: i, m: ambient });
        }
        Ok(OperatorWord { factors: vec![i], ambient })
    }

    /// The bracket operator: `[a;b] = tau_{b-1} ... tau_a` for `a < b`
    /// (descending), `[a;b] = tau_b ... tau_{a-1}` for `a > b` (ascending),
    /// and the identity for `a = b`.
    pub fn bracket(a: usize, b: usize, ambient: usize) -> Result<Self> {
        let (lo, hi) = (a.min(b), a.max(b));
        if a != b && (lo < 1 || hi > ambient) {
            return Err(Error::BadIndices { k: a, r: b, m: ambient });
        }
        let factors: Vec<usize> = match a.cmp(&b) {
            Ordering::Equal => Vec::new(),
            Ordering::Less => (a..b).rev().collect(),
            Ordering::Greater => (b..a).collect(),
        };
        Ok(OperatorWord { factors, ambient })
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    fn concat(mut self, other: OperatorWord) -> OperatorWord {
        assert_eq!(self.ambient, other.ambient, "operator words on different tensor powers");
        self.factors.extend(other.factors);
        self
    }

    /// Evaluates the operator word on a basis word for a diagonal braiding.
    pub fn apply_to_word(&self, w: &Word, q: &DiagonalBraiding) -> Result<(Scalar, Word)> {
        if w.len() != self.ambient {
            return Err(Error::DimensionMismatch { side: w.len(), n: self.ambient });
        }
        let mut scalar = Scalar::one(q.field());
        let mut word = w.clone();
        for &i in &self.factors {
            let (c, next) = apply_tau_i(&word, i, q)?;
            scalar = scalar.mul(&c);
            word = next;
        }
        Ok((scalar, word))
    }

    /// Evaluates the operator word on a linear combination of equal-length
    /// words for an arbitrary matrix operator.
    pub fn apply_to_state(
        &self,
        state: BTreeMap<Word, Scalar>,
        t: &MatrixBraiding,
    ) -> Result<BTreeMap<Word, Scalar>> {
        let mut cur = state;
        for &i in &self.factors {
            cur = t.apply_slot(&cur, i)?;
        }
        Ok(cur)
    }
}

/// The operator word moving the first `r` tensor slots past the remaining
/// `m - r`: the product of brackets `[k;r+1][k+1;r+2]...[k+m-r-1;m]`.
pub fn nu_operator(r: usize, k: usize, m: usize) -> Result<OperatorWord> {
    if k < 1 || k > r || r >= m {
        return Err(Error::BadIndices { k, r, m });
    }
    let mut word = OperatorWord::identity(m);
    for j in 0..(m - r) {
        word = word.concat(OperatorWord::bracket(k + j, r + 1 + j, m)?);
    }
    Ok(word)
}

/// The provably equal reversed factorization `[m;r][m-1;r-1]...[m-r+k;k]`.
pub fn nu_operator_reversed(r: usize, k: usize, m: usize) -> Result<OperatorWord> {
    if k < 1 || k > r || r >= m {
        return Err(Error::BadIndices { k, r, m });
    }
    let mut word = OperatorWord::identity(m);
    for i in 0..=(r - k) {
        word = word.concat(OperatorWord::bracket(m - i, r - i, m)?);
    }
    Ok(word)
}

/// A finite linear combination of split tensors `u (x)' v`. The split
/// position is semantic: `u (x)' v` and `uv (x)' 1` are different elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    terms: BTreeMap<(Word, Word), Scalar>,
    n_vars: usize,
    field: FieldSpec,
}

impl TensorElement {
    pub fn zero(n_vars: usize, field: FieldSpec) -> Self {
        TensorElement { terms: BTreeMap::new(), n_vars, field }
    }

    pub fn from_pair(u: Word, v: Word, c: Scalar, n_vars: usize) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((u, v), c);
        }
        TensorElement { terms, n_vars, field }
    }

    /// The split tensor of two polynomials, expanded term by term.
    pub fn from_split(left: &Polynomial, right: &Polynomial) -> Result<Self> {
        if left.n_vars() != right.n_vars() {
            return Err(Error::ArityMismatch);
        }
        if left.field() != right.field() {
            return Err(Error::FieldMismatch);
        }
        let mut out = TensorElement::zero(left.n_vars(), left.field());
        for (u, a) in left.terms() {
            for (v, b) in right.terms() {
                out.add_term(u.clone(), v.clone(), a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((u, v)) {
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

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        assert_eq!(self.n_vars, other.n_vars);
        assert_eq!(self.field, other.field);
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        if c.is_zero() {
            return TensorElement::zero(self.n_vars, self.field);
        }
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), v.mul(c)))
            .collect();
        TensorElement { terms, n_vars: self.n_vars, field: self.field }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((u, v), c) in &self.terms {
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
            if mag.is_one() {
                write!(f, "({u} # {v})")?;
            } else {
                write!(f, "{mag}*({u} # {v})")?;
            }
        }
        Ok(())
    }
}

/// How to evaluate the extension of a diagonal braiding to split tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtensionMethod {
    /// Evaluate the defining braid-monoid operator word, then re-split.
    Operator,
    /// Multiply out the product-of-powers scalar directly.
    ClosedForm,
}

/// `prod_{i,j} q_ij^(s_i * t_j)` for multidegrees `s`, `t`.
pub fn bicharacter_scalar(q: &DiagonalBraiding, s: &Multidegree, t: &Multidegree) -> Scalar {
    let mut acc = Scalar::one(q.field());
    for i in 1..=q.n() as u8 {
        let si = s.0[(i - 1) as usize];
        if si == 0 {
            continue;
        }
        for j in 1..=q.n() as u8 {
            let tj = t.0[(j - 1) as usize];
            if tj == 0 {
                continue;
            }
            let power = q.q(i, j).pow((si * tj) as i64).expect("nonzero parameter");
            acc = acc.mul(&power);
        }
    }
    acc
}

/// Braids a split pair `u (x)' v` past itself: both methods return
/// `scalar * (v (x)' u)`, with empty halves passing through at scalar 1.
pub fn extend_braiding(
    u: &Word,
    v: &Word,
    q: &DiagonalBraiding,
    method: ExtensionMethod,
) -> Result<TensorElement> {
    let n_vars = q.n();
    for &l in u.letters().iter().chain(v.letters()) {
        if l as usize > n_vars {
            return Err(Error::IndexOutOfRange { pos: l as usize, len: n_vars });
        }
    }
    if u.is_empty() || v.is_empty() {
        return Ok(TensorElement::from_pair(
            v.clone(),
            u.clone(),
            Scalar::one(q.field()),
            n_vars,
        ));
    }
    match method {
        ExtensionMethod::ClosedForm => {
            let c = bicharacter_scalar(q, &u.mdeg(n_vars), &v.mdeg(n_vars));
            Ok(TensorElement::from_pair(v.clone(), u.clone(), c, n_vars))
        }
        ExtensionMethod::Operator => {
            let r = u.len();
            let m = r + v.len();
            let nu = nu_operator(r, 1, m)?;
            let (c, moved) = nu.apply_to_word(&u.concat(v), q)?;
            let (left, right) = moved.split_at(m - r);
            Ok(TensorElement::from_pair(left, right, c, n_vars))
        }
    }
}

/// Linear extension of [`extend_braiding`] over the terms of a tensor
/// element.
pub fn extend_braiding_poly(f: &TensorElement, q: &DiagonalBraiding) -> Result<TensorElement> {
    let mut out = TensorElement::zero(f.n_vars(), f.field());
    for ((u, v), c) in f.terms() {
        let piece = extend_braiding(u, v, q, ExtensionMethod::ClosedForm)?;
        out = out.add(&piece.scale(c));
    }
    Ok(out)
}

/// Extension of a general matrix braiding via the same operator words; no
/// closed form exists for non-diagonal input.
pub fn extend_braiding_matrix(u: &Word, v: &Word, t: &MatrixBraiding) -> Result<TensorElement> {
    let n_vars = t.n();
    for &l in u.letters().iter().chain(v.letters()) {
        if l as usize > n_vars {
            return Err(Error::IndexOutOfRange { pos: l as usize, len: n_vars });
        }
    }
    if u.is_empty() || v.is_empty() {
        return Ok(TensorElement::from_pair(
            v.clone(),
            u.clone(),
            Scalar::one(t.field()),
            n_vars,
        ));
    }
    let r = u.len();
    let m = r + v.len();
    let nu = nu_operator(r, 1, m)?;
    let mut state = BTreeMap::new();
    state.insert(u.concat(v), Scalar::one(t.field()));
    let moved = nu.apply_to_state(state, t)?;
    let mut out = TensorElement::zero(n_vars, t.field());
    for (w, c) in moved {
        let (left, right) = w.split_at(m - r);
        out.add_term(left, right, c);
    }
    Ok(out)
}

/// The braid relation checked exactly on every length-3 basis word.
pub fn yang_baxter_check(q: &DiagonalBraiding) -> bool {
    let n = q.n() as u8;
    let mut stack = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                stack.push(Word::from_letters(vec![a, b, c]));
            }
        }
    }
    for w in stack {
        let lhs = eval_factor_chain(&w, &[1, 2, 1], q);
        let rhs = eval_factor_chain(&w, &[2, 1, 2], q);
        if lhs != rhs {
            return false;
        }
    }
    true
}

fn eval_factor_chain(w: &Word, chain: &[usize], q: &DiagonalBraiding) -> (Scalar, Word) {
    let mut scalar = Scalar::one(q.field());
    let mut word = w.clone();
    for &i in chain {
        let (c, next) = apply_tau_i(&word, i, q).expect("indices fixed");
        scalar = scalar.mul(&c);
        word = next;
    }
    (scalar, word)
}

/// The braid relation for an arbitrary operator on `V (x) V`, checked on
/// every length-3 basis word of `V^(x3)`.
pub fn yang_baxter_check_matrix(t: &MatrixBraiding) -> bool {
    let n = t.n() as u8;
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                let mut start = BTreeMap::new();
                start.insert(Word::from_letters(vec![a, b, c]), Scalar::one(t.field()));
                let lhs = chain_state(start.clone(), &[1, 2, 1], t);
                let rhs = chain_state(start, &[2, 1, 2], t);
                if lhs != rhs {
                    return false;
                }
            }
        }
    }
    true
}

fn chain_state(
    state: BTreeMap<Word, Scalar>,
    chain: &[usize],
    t: &MatrixBraiding,
) -> BTreeMap<Word, Scalar> {
    let mut cur = state;
    for &i in chain {
        cur = t.apply_slot(&cur, i).expect("indices fixed");
    }
    cur
}

/// `q_ij * q_ji = 1` for all pairs; equivalent to the extension squaring to
/// the identity.
pub fn is_involutive(q: &DiagonalBraiding) -> bool {
    let one = Scalar::one(q.field());
    for i in 1..=q.n() as u8 {
        for j in 1..=q.n() as u8 {
            if q.q(i, j).mul(q.q(j, i)) != one {
                return false;
            }
        }
    }
    true
}

/// The braiding obtained by swapping the two generators:
/// `(q22, q21, q12, q11)`.
pub fn dual_braiding(q: &DiagonalBraiding) -> Result<DiagonalBraiding> {
    let [a, b, c, d] = q.two_var_entries().ok_or(Error::ArityMismatch)?;
    DiagonalBraiding::two_var([d.clone(), c.clone(), b.clone(), a.clone()])
}

/// Two two-variable diagonal braidings give isomorphic braided algebras
/// exactly when they are equal or dual.
pub fn braided_isomorphic(t: &DiagonalBraiding, s: &DiagonalBraiding) -> Result<bool> {
    if t.n() != 2 || s.n() != 2 {
        return Err(Error::ArityMismatch);
    }
    Ok(t == s || dual_braiding(t)? == *s)
}

fn six_canonical(field: FieldSpec) -> Vec<DiagonalBraiding> {
    [
        [1, 1, 1, 1],
        [-1, -1, -1, -1],
        [1, 1, 1, -1],
        [-1, 1, 1, -1],
        [1, -1, -1, 1],
        [1, -1, -1, -1],
    ]
    .into_iter()
    .map(|signs| DiagonalBraiding::from_signs(signs, field).expect("signs nonzero"))
    .collect()
}

fn scalar_class_order(a: &Scalar, b: &Scalar) -> Ordering {
    let rank = |s: &Scalar| match s.is_sign() {
        Sign::Plus => 0u8,
        Sign::Minus => 1,
        Sign::Neither => 2,
    };
    rank(a).cmp(&rank(b)).then_with(|| match (a, b) {
        (Scalar::Rat(x), Scalar::Rat(y)) => x.cmp(y),
        (Scalar::Mod { value: x, .. }, Scalar::Mod { value: y, .. }) => x.cmp(y),
        _ => unreachable!("same field"),
    })
}

/// A deterministic representative of the isomorphism class `{t, t*}` of an
/// involutive two-variable braiding: one of the six listed sign vectors
/// when `q12 = +-1`, otherwise the smaller of the pair under the component
/// order `1 < -1 < everything else`.
pub fn canonical_form(t: &DiagonalBraiding) -> Result<DiagonalBraiding> {
    if t.n() != 2 {
        return Err(Error::ArityMismatch);
    }
    if !is_involutive(t) {
        return Err(Error::NotInvolutive);
    }
    let dual = dual_braiding(t)?;
    if t.q(1, 2).is_sign() != Sign::Neither {
        let list = six_canonical(t.field());
        if list.contains(t) {
            return Ok(t.clone());
        }
        debug_assert!(list.contains(&dual));
        return Ok(dual);
    }
    let pick_dual = {
        let a = t.two_var_entries().expect("n = 2");
        let b = dual.two_var_entries().expect("n = 2");
        let mut verdict = false;
        for (x, y) in a.iter().zip(b.iter()) {
            match scalar_class_order(x, y) {
                Ordering::Less => break,
                Ordering::Greater => {
                    verdict = true;
                    break;
                }
                Ordering::Equal => continue,
            }
        }
        verdict
    };
    Ok(if pick_dual { dual } else { t.clone() })
}
