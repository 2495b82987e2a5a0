//! Exact arithmetic in Q and in the cyclotomic field Q(ζ_r).
//!
//! Elements of Q(ζ_r) are stored in the power basis `1, ζ, …, ζ^{φ(r)-1}`
//! modulo the cyclotomic polynomial Φ_r, so an element is zero exactly when
//! every coefficient is zero. The [`ParameterSet`] carries the specialized
//! rational values of κ and the reflection parameters together with the
//! derived values `d_j = Σ_l c_{lp} ζ^{lpj}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Parses `"num/den"` or `"num"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::InvalidInput(format!("malformed rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Formats a rational as `"num/den"` (always with a denominator).
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ipoly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by the monic polynomial `b`; panics on a nonzero remainder.
fn ipoly_div_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![0i64; rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = rem[k + db];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact cyclotomic division");
    q
}

/// The cyclotomic polynomial Φ_r, coefficients from the constant term up.
///
/// Computed as the exact quotient of `x^r - 1` by `Π_{d | r, d < r} Φ_d`.
pub fn cyclotomic_polynomial(r: u32) -> Vec<i64> {
    assert!(r >= 1, "cyclotomic order must be positive");
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<i64>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&r) {
        return hit.clone();
    }
    let mut divisor = vec![1i64];
    for d in 1..r {
        if r.is_multiple_of(d) {
            divisor = ipoly_mul(&divisor, &cyclotomic_polynomial(d));
        }
    }
    let mut xr_minus_one = vec![0i64; r as usize + 1];
    xr_minus_one[0] = -1;
    xr_minus_one[r as usize] = 1;
    let phi = ipoly_div_monic(&xr_minus_one, &divisor);
    cache.lock().unwrap().insert(r, phi.clone());
    phi
}

#[derive(Debug)]
struct FieldData {
    r: u32,
    degree: usize,
    /// `x^k mod Φ_r` for `k < max(r, 2·degree - 1)`.
    powers: Vec<Vec<BigRational>>,
}

/// Handle to the field Q(ζ_r); cheap to clone, shared between elements.
#[derive(Clone)]
pub struct CyclotomicField(Arc<FieldData>);

impl fmt::Debug for CyclotomicField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.0.r)
    }
}

impl PartialEq for CyclotomicField {
    fn eq(&self, other: &Self) -> bool {
        self.0.r == other.0.r
    }
}

impl Eq for CyclotomicField {}

impl CyclotomicField {
    pub fn new(r: u32) -> Self {
        assert!(r >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<Mutex<HashMap<u32, CyclotomicField>>> = OnceLock::new();
        let fields = FIELDS.get_or_init(Default::default);
        if let Some(hit) = fields.lock().unwrap().get(&r) {
            return hit.clone();
        }
        let modulus = cyclotomic_polynomial(r);
        let degree = modulus.len() - 1;
        let len = (r as usize).max(2 * degree - 1);
        let mut powers = Vec::with_capacity(len);
        // current = x^k reduced, as integers
        let mut current = vec![0i64; degree];
        current[0] = 1;
        for _ in 0..len {
            powers.push(current.iter().map(|&c| rat(c)).collect());
            // multiply by x and reduce x^degree = -(lower terms of Φ_r)
            let top = current[degree - 1];
            for j in (1..degree).rev() {
                current[j] = current[j - 1] - top * modulus[j];
            }
            current[0] = -top * modulus[0];
        }
        let field = CyclotomicField(Arc::new(FieldData { r, degree, powers }));
        fields.lock().unwrap().insert(r, field.clone());
        field
    }

    pub fn order(&self) -> u32 {
        self.0.r
    }

    /// φ(r), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> CyclotomicNumber {
        self.rational(BigRational::one())
    }

    pub fn rational(&self, q: BigRational) -> CyclotomicNumber {
        let mut out = self.zero();
        out.coeffs[0] = q;
        out
    }

    pub fn integer(&self, n: i64) -> CyclotomicNumber {
        self.rational(rat(n))
    }

    pub fn zeta(&self) -> CyclotomicNumber {
        self.zeta_pow(1)
    }

    /// ζ^m for any integer `m`.
    pub fn zeta_pow(&self, m: i64) -> CyclotomicNumber {
        let idx = m.rem_euclid(self.0.r as i64) as usize;
        CyclotomicNumber {
            field: self.clone(),
            coeffs: self.0.powers[idx].clone(),
        }
    }

    /// Builds an element from power-basis coefficients.
    pub fn element(&self, coeffs: Vec<BigRational>) -> Result<CyclotomicNumber> {
        if coeffs.len() != self.degree() {
            return Err(Error::InvalidInput(format!(
                "Q(zeta_{}) elements need {} coefficients, got {}",
                self.order(),
                self.degree(),
                coeffs.len()
            )));
        }
        Ok(CyclotomicNumber { field: self.clone(), coeffs })
    }

    fn reduce(&self, mut long: Vec<BigRational>) -> Vec<BigRational> {
        let d = self.degree();
        if long.len() <= d {
            long.resize(d, BigRational::zero());
            return long;
        }
        let mut out: Vec<BigRational> = long.drain(..d).collect();
        for (offset, c) in long.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = d + offset;
            let reduced = if k < self.0.powers.len() {
                self.0.powers[k].clone()
            } else {
                self.zeta_pow(k as i64).coeffs
            };
            for (slot, p) in out.iter_mut().zip(reduced.iter()) {
                if !p.is_zero() {
                    *slot += &c * p;
                }
            }
        }
        out
    }
}

/// Element of Q(ζ_r) in the power basis modulo Φ_r.
#[derive(Clone, PartialEq, Eq)]
pub struct CyclotomicNumber {
    field: CyclotomicField,
    coeffs: Vec<BigRational>,
}

impl std::hash::Hash for CyclotomicNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.coeffs.hash(state);
    }
}

/// Field operations selectable at runtime (used by the checked entry point).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked field arithmetic: mismatched fields and division by zero are errors.
pub fn cyclo_arith(a: &CyclotomicNumber, b: &CyclotomicNumber, op: ArithOp) -> Result<CyclotomicNumber> {
    if a.field != b.field {
        return Err(Error::IncompatibleField { left: a.order(), right: b.order() });
    }
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => a * &b.inverse()?,
    })
}

// Dense Q[x] helpers for the extended Euclidean algorithm.
fn qtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn qdivrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    qtrim(&mut rem);
    let db = b.len() - 1;
    let lead = &b[db];
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut q = vec![BigRational::zero(); rem.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] / lead;
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                rem[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    qtrim(&mut rem);
    qtrim(&mut q);
    (q, rem)
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    qtrim(&mut out);
    out
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qtrim(&mut out);
    out
}

impl CyclotomicNumber {
    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn order(&self) -> u32 {
        self.field.order()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then_some(&self.coeffs[0])
    }

    pub fn scale(&self, q: &BigRational) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_r.
    pub fn inverse(&self) -> Result<CyclotomicNumber> {
        if self.is_zero() {
            return Err(Error::DivisionByZero { r: self.order() });
        }
        let modulus: Vec<BigRational> = cyclotomic_polynomial(self.order()).into_iter().map(rat).collect();
        let mut a = self.coeffs.clone();
        qtrim(&mut a);
        // invariant: s_k · a ≡ r_k (mod Φ_r)
        let (mut r0, mut r1) = (modulus.clone(), a);
        let (mut s0, mut s1) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, rem) = qdivrem(&r0, &r1);
            let s_next = qsub(&s0, &qmul(&q, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s_next);
        }
        // Φ_r is irreducible, so the gcd is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let g = r0[0].clone();
        let (_, s) = qdivrem(&s0, &modulus);
        let mut coeffs: Vec<BigRational> = s.iter().map(|c| c / &g).collect();
        coeffs.resize(self.field.degree(), BigRational::zero());
        Ok(CyclotomicNumber { field: self.field.clone(), coeffs })
    }

    pub fn pow(&self, mut e: u32) -> CyclotomicNumber {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Applies the Galois automorphism ζ ↦ ζ^j (j coprime to r).
    pub fn galois(&self, j: i64) -> CyclotomicNumber {
        let mut out = self.field.zero();
        for (m, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out += &self.field.zeta_pow(j * m as i64).scale(c);
            }
        }
        out
    }

    /// Complex conjugation, ζ ↦ ζ^{-1}.
    pub fn conjugate(&self) -> CyclotomicNumber {
        self.galois(-1)
    }

    /// The exponent `m ∈ [0, r)` with `self = ζ^m`, if this is an r-th root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        (0..self.order()).find(|&m| *self == self.field.zeta_pow(m as i64))
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = abs.is_one();
            match (m, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{abs}*z")?,
                (_, true) => write!(f, "z^{m}")?,
                (_, false) => write!(f, "{abs}*z^{m}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field, rhs.field, "mixed cyclotomic fields");
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field, rhs.field, "mixed cyclotomic fields");
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        assert_eq!(self.field, rhs.field, "mixed cyclotomic fields");
        let d = self.field.degree();
        if d == 1 {
            return CyclotomicNumber {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        CyclotomicNumber { field: self.field.clone(), coeffs: self.field.reduce(prod) }
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        assert_eq!(self.field, rhs.field, "mixed cyclotomic fields");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn sub_assign(&mut self, rhs: &CyclotomicNumber) {
        assert_eq!(self.field, rhs.field, "mixed cyclotomic fields");
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

#[derive(Serialize, Deserialize)]
struct CyclotomicWire {
    r: u32,
    coeffs: Vec<String>,
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CyclotomicWire {
            r: self.order(),
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CyclotomicNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = CyclotomicWire::deserialize(d)?;
        if wire.r == 0 {
            return Err(D::Error::custom("r must be positive"));
        }
        let coeffs = wire
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        CyclotomicField::new(wire.r).element(coeffs).map_err(D::Error::custom)
    }
}

/// Specialized parameters κ, c_0 and c_{lp} (1 ≤ l < r/p) with cached `d_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParameterSet {
    r: u32,
    p: u32,
    kappa: BigRational,
    c0: BigRational,
    c: BTreeMap<u32, BigRational>,
    d: Vec<CyclotomicNumber>,
}

impl fmt::Debug for ParameterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParameterSet")
            .field("r", &self.r)
            .field("p", &self.p)
            .field("kappa", &format_rational(&self.kappa))
            .field("c0", &format_rational(&self.c0))
            .field("c", &self.c.iter().map(|(k, v)| (*k, format_rational(v))).collect::<Vec<_>>())
            .finish()
    }
}

impl ParameterSet {
    pub fn new(r: u32, p: u32, kappa: BigRational, c0: BigRational, c: BTreeMap<u32, BigRational>) -> Result<Self> {
        if r == 0 || p == 0 || !r.is_multiple_of(p) {
            return Err(Error::InvalidParameters(format!("p={p} must divide r={r}")));
        }
        let expected: Vec<u32> = (1..r / p).map(|l| l * p).collect();
        let keys: Vec<u32> = c.keys().copied().collect();
        if keys != expected {
            return Err(Error::InvalidParameters(format!(
                "c must be given exactly on the multiples of p below r {expected:?}, got {keys:?}"
            )));
        }
        let field = CyclotomicField::new(r);
        let d = (0..r as i64)
            .map(|j| {
                let mut acc = field.zero();
                for (&m, cm) in &c {
                    acc += &field.zeta_pow(m as i64 * j).scale(cm);
                }
                acc
            })
            .collect();
        Ok(ParameterSet { r, p, kappa, c0, c, d })
    }

    /// Default generic parameters: κ = 0, c_0 = 1/3, c_{lp} = 1/(3+l).
    pub fn generic(r: u32, p: u32) -> Result<Self> {
        if p == 0 || r == 0 || !r.is_multiple_of(p) {
            return Err(Error::InvalidParameters(format!("p={p} must divide r={r}")));
        }
        let c = (1..r / p).map(|l| (l * p, BigRational::new(1.into(), (3 + l as i64).into()))).collect();
        Self::new(r, p, BigRational::zero(), BigRational::new(1.into(), 3.into()), c)
    }

    /// Positive random rationals for c_0 and the c_{lp}, reproducible from `seed`; κ = 0.
    pub fn random_generic(r: u32, p: u32, seed: u64) -> Result<Self> {
        if p == 0 || r == 0 || !r.is_multiple_of(p) {
            return Err(Error::InvalidParameters(format!("p={p} must divide r={r}")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            let den: i64 = rng.random_range(2..=29);
            let num: i64 = rng.random_range(1..den);
            BigRational::new(num.into(), den.into())
        };
        let c0 = draw();
        let c = (1..r / p).map(|l| (l * p, draw())).collect();
        Self::new(r, p, BigRational::zero(), c0, c)
    }

    pub fn with_kappa(&self, kappa: BigRational) -> Self {
        ParameterSet { kappa, ..self.clone() }
    }

    pub fn with_c0(&self, c0: BigRational) -> Self {
        ParameterSet { c0, ..self.clone() }
    }

    /// Replaces c_m; `m` must be a multiple of p strictly between 0 and r.
    pub fn with_c(&self, m: u32, value: BigRational) -> Result<Self> {
        let mut c = self.c.clone();
        if !c.contains_key(&m) {
            return Err(Error::InvalidParameters(format!(
                "c_{m} is not a parameter of G({},{},n)",
                self.r, self.p
            )));
        }
        c.insert(m, value);
        Self::new(self.r, self.p, self.kappa.clone(), self.c0.clone(), c)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn kappa(&self) -> &BigRational {
        &self.kappa
    }

    pub fn c0(&self) -> &BigRational {
        &self.c0
    }

    pub fn c(&self) -> &BTreeMap<u32, BigRational> {
        &self.c
    }

    /// Parameter of the diagonal reflection ζ_i^m (zero when p ∤ m).
    pub fn c_diag(&self, m: u32) -> BigRational {
        self.c.get(&(m % self.r)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn field(&self) -> CyclotomicField {
        CyclotomicField::new(self.r)
    }

    /// d_j, with j taken mod r.
    pub fn d(&self, j: i64) -> &CyclotomicNumber {
        &self.d[j.rem_euclid(self.r as i64) as usize]
    }
}

/// `d_j = Σ_{l=1}^{r/p-1} c_{lp} ζ^{lpj}`.
pub fn d_param(params: &ParameterSet, j: i64) -> CyclotomicNumber {
    params.d(j).clone()
}

#[derive(Serialize, Deserialize)]
struct ParameterWire {
    r: u32,
    p: u32,
    kappa: String,
    c0: String,
    c: BTreeMap<String, String>,
}

impl Serialize for ParameterSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ParameterWire {
            r: self.r,
            p: self.p,
            kappa: format_rational(&self.kappa),
            c0: format_rational(&self.c0),
            c: self.c.iter().map(|(k, v)| (k.to_string(), format_rational(v))).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParameterSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = ParameterWire::deserialize(d)?;
        let parse = |s: &str| parse_rational(s).map_err(D::Error::custom);
        let mut c = BTreeMap::new();
        for (k, v) in &wire.c {
            let key: u32 = k.parse().map_err(|_| D::Error::custom(format!("bad c index {k:?}")))?;
            c.insert(key, parse(v)?);
        }
        ParameterSet::new(wire.r, wire.p, parse(&wire.kappa)?, parse(&wire.c0)?, c).map_err(D::Error::custom)
    }
}
