//! Sparse polynomials in `x_0, …, x_{n-1}` over Q(ζ_r), the action of
//! G(r,1,n) on them, multi-index sorting data (`w_μ`, `v_μ`) and the
//! partial order used for leading terms.
//!
//! Variables and positions are 0-based throughout the library.

use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::{CyclotomicField, CyclotomicNumber};
use crate::reflgroup::{ColoredPermutation, Permutation};

/// Exponent vector `(μ_0, …, μ_{n-1})`.
///
/// Ordered by total degree first and lexicographically within a degree, so
/// the terms of a [`Polynomial`] are bucketed by degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiIndex(Vec<u32>);

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        MultiIndex(v)
    }
}

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zeros(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// `w.μ`, with `(w.μ)_{w(j)} = μ_j` (so that `w·x^μ = x^{w.μ}`).
    pub fn permuted(&self, w: &Permutation) -> MultiIndex {
        let mut out = vec![0; self.len()];
        for (j, &e) in self.0.iter().enumerate() {
            out[w.apply(j)] = e;
        }
        MultiIndex(out)
    }

    /// `s_i.μ`: entries `i` and `i+1` exchanged.
    pub fn swapped(&self, i: usize) -> MultiIndex {
        let mut out = self.0.clone();
        out.swap(i, i + 1);
        MultiIndex(out)
    }

    pub fn is_partition(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn is_weakly_increasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    /// Entries sorted into weakly decreasing order.
    pub fn sorted(&self) -> Vec<u32> {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Number of pairs `i < j` with `μ_i > μ_j`.
    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// All exponent vectors of length `n` and total degree `d`, in increasing order.
    pub fn all_of_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == n {
                prefix.push(d);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=d {
                prefix.push(e);
                rec(n, d - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if n == 0 {
            if d == 0 {
                out.push(MultiIndex(Vec::new()));
            }
            return out;
        }
        rec(n, d, &mut Vec::new(), &mut out);
        out
    }

    /// All exponent vectors of length `n` with degree at most `d`.
    pub fn all_up_to_degree(n: usize, d: u32) -> Vec<MultiIndex> {
        (0..=d).flat_map(|k| Self::all_of_degree(n, k)).collect()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for MultiIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MultiIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Vec::<u32>::deserialize(d).map(MultiIndex)
    }
}

/// Sparse polynomial over Q(ζ_r); never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    field: CyclotomicField,
    terms: BTreeMap<MultiIndex, CyclotomicNumber>,
}

/// Ring operations selectable at runtime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

fn check_ring(f: &Polynomial, g: &Polynomial) -> Result<()> {
    if f.n != g.n || f.field != g.field {
        return Err(Error::IncompatibleRing { n1: f.n, r1: f.order(), n2: g.n, r2: g.order() });
    }
    Ok(())
}

/// Checked ring arithmetic.
pub fn poly_arith(f: &Polynomial, g: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    check_ring(f, g)?;
    Ok(match op {
        PolyOp::Add => f + g,
        PolyOp::Sub => f - g,
        PolyOp::Mul => f * g,
    })
}

impl Polynomial {
    pub fn zero(n: usize, field: &CyclotomicField) -> Self {
        Polynomial { n, field: field.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: CyclotomicNumber) -> Self {
        let field = c.field().clone();
        Self::monomial(n, &field, MultiIndex::zeros(n), c)
    }

    pub fn one(n: usize, field: &CyclotomicField) -> Self {
        Self::constant(n, field.one())
    }

    pub fn monomial(n: usize, field: &CyclotomicField, mu: MultiIndex, c: CyclotomicNumber) -> Self {
        assert_eq!(mu.len(), n, "exponent vector length");
        let mut f = Self::zero(n, field);
        f.add_term(mu, &c);
        f
    }

    /// The monomial `x^μ` with coefficient 1.
    pub fn x_pow(field: &CyclotomicField, mu: &MultiIndex) -> Self {
        Self::monomial(mu.len(), field, mu.clone(), field.one())
    }

    /// The variable `x_i`.
    pub fn var(n: usize, field: &CyclotomicField, i: usize) -> Self {
        Self::x_pow(field, &MultiIndex::unit(n, i))
    }

    /// The linear form `Σ coeffs[i] x_i`.
    pub fn linear(field: &CyclotomicField, coeffs: &[CyclotomicNumber]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, field);
        for (i, c) in coeffs.iter().enumerate() {
            f.add_term(MultiIndex::unit(n, i), c);
        }
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &CyclotomicNumber)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.terms.keys()
    }

    pub fn coeff(&self, mu: &MultiIndex) -> Option<&CyclotomicNumber> {
        self.terms.get(mu)
    }

    /// Highest total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(MultiIndex::degree)
    }

    pub fn is_homogeneous(&self) -> bool {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(a), Some(b)) => a.degree() == b.degree(),
            _ => true,
        }
    }

    /// The degree-`d` component.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        // smallest index of degree d in the graded order is (0, …, 0, d)
        let mut lo = vec![0; self.n];
        if let Some(last) = lo.last_mut() {
            *last = d;
        }
        let terms = self
            .terms
            .range(MultiIndex(lo)..)
            .take_while(|(m, _)| m.degree() == d)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Polynomial { n: self.n, field: self.field.clone(), terms }
    }

    /// Adds `c·x^μ` in place.
    pub fn add_term(&mut self, mu: MultiIndex, c: &CyclotomicNumber) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mu) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c·g`.
    pub fn add_scaled(&mut self, c: &CyclotomicNumber, g: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &g.terms {
            self.add_term(m.clone(), &(c * a));
        }
    }

    pub fn scale(&self, c: &CyclotomicNumber) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n, &self.field);
        }
        let terms = self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect();
        Polynomial { n: self.n, field: self.field.clone(), terms }
    }

    pub fn scale_rational(&self, q: &BigRational) -> Polynomial {
        self.scale(&self.field.rational(q.clone()))
    }

    /// Multiplication by `x_i`.
    pub fn mul_var(&self, i: usize) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[i] += 1;
                (MultiIndex(e), c.clone())
            })
            .collect();
        Polynomial { n: self.n, field: self.field.clone(), terms }
    }

    /// `∂f/∂x_i`.
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.n, &self.field);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(MultiIndex(exps), &c.scale(&BigRational::from_integer(e.into())));
        }
        out
    }

    /// `v·f` for `v ∈ G(r,1,n)`; panics on a ring mismatch (see [`group_action`]).
    pub fn act(&self, v: &ColoredPermutation) -> Polynomial {
        assert!(v.n() == self.n && v.r() == self.order(), "group/ring mismatch");
        let mut out = Polynomial::zero(self.n, &self.field);
        for (m, c) in &self.terms {
            // v·x^μ = ζ^{-Σ k_j μ_j} x^{w.μ}
            let twist: i64 = m.0.iter().zip(v.k()).map(|(&e, &k)| e as i64 * k as i64).sum();
            let image = m.permuted(v.w());
            let coeff = if twist % self.order() as i64 == 0 { c.clone() } else { c * &self.field.zeta_pow(-twist) };
            out.add_term(image, &coeff);
        }
        out
    }

    /// If `g = λ·self` for a scalar λ, returns λ.
    pub fn eigen_ratio(&self, g: &Polynomial) -> Option<CyclotomicNumber> {
        let (m, c) = self.terms.iter().next()?;
        let lambda = match g.coeff(m) {
            Some(gc) => gc * &c.inverse().ok()?,
            None => self.field.zero(),
        };
        (self.scale(&lambda) == *g).then_some(lambda)
    }
}

/// `v·f`, the ring automorphism with `v·x_j = ζ^{-k_j} x_{w(j)}` for `v = w ζ^k`.
pub fn group_action(v: &ColoredPermutation, f: &Polynomial) -> Result<Polynomial> {
    if v.n() != f.n || v.r() != f.order() {
        return Err(Error::IncompatibleRing { n1: v.n(), r1: v.r(), n2: f.n, r2: f.order() });
    }
    Ok(f.act(v))
}

/// Exact quotient `f / L` for a nonzero linear form `L`.
///
/// Fails with [`Error::NotDivisible`] when the remainder is nonzero.
pub fn exact_divide_linear(f: &Polynomial, divisor: &Polynomial) -> Result<Polynomial> {
    check_ring(f, divisor)?;
    let not_linear = || Error::InvalidInput(format!("{divisor} is not a nonzero linear form"));
    if divisor.is_zero() || divisor.terms.keys().any(|m| m.degree() != 1) {
        return Err(not_linear());
    }
    // lead variable: smallest index present in the divisor
    let (lead_idx, lead_coeff) = divisor
        .terms
        .iter()
        .map(|(m, c)| (m.0.iter().position(|&e| e == 1).unwrap(), c))
        .min_by_key(|(i, _)| *i)
        .ok_or_else(not_linear)?;
    let lead_inv = lead_coeff.inverse()?;
    let rest: Vec<(usize, CyclotomicNumber)> = divisor
        .terms
        .iter()
        .map(|(m, c)| (m.0.iter().position(|&e| e == 1).unwrap(), c.clone()))
        .filter(|(i, _)| *i != lead_idx)
        .collect();

    // Bucket the dividend by the exponent of the lead variable and peel off the
    // top bucket repeatedly; each step moves terms to a strictly lower bucket.
    let mut buckets: BTreeMap<u32, BTreeMap<MultiIndex, CyclotomicNumber>> = BTreeMap::new();
    for (m, c) in &f.terms {
        buckets.entry(m.0[lead_idx]).or_default().insert(m.clone(), c.clone());
    }
    let mut quotient = Polynomial::zero(f.n, &f.field);
    while let Some((&e, _)) = buckets.iter().next_back() {
        if e == 0 {
            break;
        }
        let top = buckets.remove(&e).unwrap();
        for (m, c) in top {
            let q = &c * &lead_inv;
            let mut qm = m.0.clone();
            qm[lead_idx] -= 1;
            for (j, a) in &rest {
                let mut t = qm.clone();
                t[*j] += 1;
                let bucket = buckets.entry(e - 1).or_default();
                let delta = -(&(&q * a));
                use std::collections::btree_map::Entry;
                match bucket.entry(MultiIndex(t)) {
                    Entry::Vacant(v) => {
                        v.insert(delta);
                    }
                    Entry::Occupied(mut o) => {
                        *o.get_mut() += &delta;
                        if o.get().is_zero() {
                            o.remove();
                        }
                    }
                }
            }
            quotient.add_term(MultiIndex(qm), &q);
        }
    }
    let remainder_nonzero = buckets.values().any(|b| !b.is_empty());
    if remainder_nonzero {
        return Err(Error::NotDivisible { divisor: divisor.to_string() });
    }
    debug_assert_eq!(&quotient * divisor, *f);
    Ok(quotient)
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.n == rhs.n && self.field == rhs.field, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.n == rhs.n && self.field == rhs.field, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(self.n == rhs.n && self.field == rhs.field, "ring mismatch");
        let mut out = Polynomial::zero(self.n, &self.field);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m = MultiIndex(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect());
                out.add_term(m, &(ca * cb));
            }
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect();
        Polynomial { n: self.n, field: self.field.clone(), terms }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Human-readable form, highest terms first: `x1^2*x2 - (1/3)*x2^3`.
/// Variables print 1-based.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{e}", i + 1) })
                .collect();
            let mono = mono.join("*");
            let (neg, coeff_text) = match c.as_rational() {
                Some(q) => (q.is_negative(), if q.abs().is_one() { String::new() } else { q.abs().to_string() }),
                None => (false, format!("({c})")),
            };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            match (coeff_text.is_empty(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{coeff_text}")?,
                (false, false) => write!(f, "{coeff_text}*{mono}")?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermWire {
    exps: Vec<u32>,
    coeff: CyclotomicNumber,
}

#[derive(Serialize, Deserialize)]
struct PolynomialWire {
    n: usize,
    r: u32,
    terms: Vec<TermWire>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut terms: Vec<TermWire> =
            self.terms.iter().map(|(m, c)| TermWire { exps: m.0.clone(), coeff: c.clone() }).collect();
        terms.sort_by(|a, b| a.exps.cmp(&b.exps));
        PolynomialWire { n: self.n, r: self.order(), terms }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = PolynomialWire::deserialize(d)?;
        if wire.r == 0 {
            return Err(D::Error::custom("r must be positive"));
        }
        let field = CyclotomicField::new(wire.r);
        let mut f = Polynomial::zero(wire.n, &field);
        for t in wire.terms {
            if t.exps.len() != wire.n {
                return Err(D::Error::custom("exponent vector length differs from n"));
            }
            if t.coeff.order() != wire.r {
                return Err(D::Error::custom("coefficient field differs from r"));
            }
            f.add_term(MultiIndex(t.exps), &t.coeff);
        }
        Ok(f)
    }
}

/// The permutations `w_μ` and `v_μ` attached to a multi-index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortData {
    pub mu: MultiIndex,
    /// Shortest permutation with `w_μ^{-1}.μ` weakly decreasing.
    pub w_mu: Permutation,
    /// `w_0 w_μ^{-1}`, the longest permutation with `v_μ.μ` weakly increasing.
    pub v_mu: Permutation,
}

impl SortData {
    /// `v_μ(i)` in the 1-based convention of the eigenvalue formulas.
    pub fn v_one_based(&self, i: usize) -> u32 {
        self.v_mu.apply(i) as u32 + 1
    }
}

/// Computes `w_μ` (a stable sort into weakly decreasing order) and `v_μ`.
pub fn sort_data(mu: &MultiIndex) -> SortData {
    let n = mu.len();
    let mut positions: Vec<usize> = (0..n).collect();
    // w(i) = position holding the i-th largest entry, ties by position
    positions.sort_by_key(|&j| (Reverse(mu.get(j)), j));
    let w_mu = Permutation::from_images(positions).expect("sorting yields a permutation");
    let v_mu = Permutation::longest(n).compose(&w_mu.inverse());
    SortData { mu: mu.clone(), w_mu, v_mu }
}

fn dominated_by(a: &[u32], b: &[u32]) -> bool {
    let (mut sa, mut sb) = (0u32, 0u32);
    for (x, y) in a.iter().zip(b) {
        sa += x;
        sb += y;
        if sa > sb {
            return false;
        }
    }
    true
}

/// The leading-term order: `ν ≺ μ` iff `sort(ν)` is strictly dominated by
/// `sort(μ)`, or the sorts agree and `w_ν > w_μ` in Bruhat order.
pub fn order_less(nu: &MultiIndex, mu: &MultiIndex) -> Result<bool> {
    if nu.degree() != mu.degree() {
        return Err(Error::DegreeMismatch { left: nu.degree(), right: mu.degree() });
    }
    let (sn, sm) = (nu.sorted(), mu.sorted());
    if sn != sm {
        return Ok(dominated_by(&sn, &sm));
    }
    let (wn, wm) = (sort_data(nu).w_mu, sort_data(mu).w_mu);
    Ok(wn != wm && wm.bruhat_le(&wn))
}

/// A total-order key compatible with [`order_less`]: `ν ≺ μ` implies
/// `order_key(ν) < order_key(μ)`.
pub fn order_key(mu: &MultiIndex) -> (Vec<u32>, Reverse<usize>) {
    (mu.sorted(), Reverse(sort_data(mu).w_mu.length()))
}
