//! The rational Cherednik algebra of G(r,p,n) acting on the polynomial
//! representation: Dunkl operators, multiplication and group operators, the
//! commuting elements `z_i`, and the Casimir element `h`.

use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactfield::{CyclotomicField, CyclotomicNumber, ParameterSet};
use crate::polyring::{MultiIndex, Polynomial};
use crate::reflgroup::{enumerate_reflections, validate_group, ColoredPermutation, Reflection, ReflectionClass};

/// One summand `weight · (f - s f)/α_s` of a Dunkl operator.
#[derive(Clone, Debug)]
struct DunklTerm {
    class: ReflectionClass,
    /// `c_s ⟨α_s, y_i⟩`.
    weight: CyclotomicNumber,
}

/// Everything needed to apply the algebra to polynomials in `n` variables.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    n: usize,
    params: ParameterSet,
    field: CyclotomicField,
    reflections: Vec<Reflection>,
    dunkl_terms: Vec<Vec<DunklTerm>>,
    /// The group elements summed in `φ_i`.
    phi_elements: Vec<Vec<ColoredPermutation>>,
    /// `ζ^0, …, ζ^{r-1}`.
    zeta_powers: Vec<CyclotomicNumber>,
}

impl AlgebraContext {
    pub fn new(params: ParameterSet, n: usize) -> Result<Self> {
        let (r, p) = (params.r(), params.p());
        validate_group(r, p, n)?;
        let field = params.field();
        let reflections = enumerate_reflections(r, p, n)?;
        let c0 = field.rational(params.c0().clone());
        let dunkl_terms = (0..n)
            .map(|i| {
                reflections
                    .iter()
                    .filter(|s| !s.root[i].is_zero())
                    .filter_map(|s| {
                        let c = match s.class {
                            ReflectionClass::OrderTwo { .. } => c0.clone(),
                            ReflectionClass::Diagonal { power, .. } => field.rational(params.c_diag(power)),
                        };
                        let weight = &c * &s.root[i];
                        (!weight.is_zero()).then_some(DunklTerm { class: s.class, weight })
                    })
                    .collect()
            })
            .collect();
        let phi_elements = (0..n)
            .map(|i| {
                let mut elems = Vec::new();
                for j in 0..i {
                    for l in 0..r as i64 {
                        let zl = ColoredPermutation::zeta(n, r, i, l);
                        let s = ColoredPermutation::transposition(n, r, i, j);
                        let zinv = ColoredPermutation::zeta(n, r, i, -l);
                        elems.push(zl.compose(&s).and_then(|g| g.compose(&zinv)).expect("same group"));
                    }
                }
                elems
            })
            .collect();
        let zeta_powers = (0..r as i64).map(|m| field.zeta_pow(m)).collect();
        Ok(AlgebraContext { n, params, field, reflections, dunkl_terms, phi_elements, zeta_powers })
    }

    /// Context with the default generic parameters and the given κ.
    pub fn generic(r: u32, p: u32, n: usize, kappa: BigRational) -> Result<Self> {
        Self::new(ParameterSet::generic(r, p)?.with_kappa(kappa), n)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.params.r()
    }

    pub fn p(&self) -> u32 {
        self.params.p()
    }

    pub fn params(&self) -> &ParameterSet {
        &self.params
    }

    pub fn field(&self) -> &CyclotomicField {
        &self.field
    }

    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    /// Parameter `c_s` of a reflection.
    pub fn reflection_parameter(&self, s: &Reflection) -> BigRational {
        match s.class {
            ReflectionClass::OrderTwo { .. } => self.params.c0().clone(),
            ReflectionClass::Diagonal { power, .. } => self.params.c_diag(power),
        }
    }

    fn zeta(&self, m: i64) -> &CyclotomicNumber {
        &self.zeta_powers[m.rem_euclid(self.r() as i64) as usize]
    }

    fn check(&self, f: &Polynomial) -> Result<()> {
        if f.n() != self.n || f.order() != self.r() {
            return Err(Error::IncompatibleRing { n1: self.n, r1: self.r(), n2: f.n(), r2: f.order() });
        }
        Ok(())
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::InvalidInput(format!("index {} out of range 1..={}", i + 1, self.n)));
        }
        Ok(())
    }

    /// The zero polynomial of this ring.
    pub fn zero(&self) -> Polynomial {
        Polynomial::zero(self.n, &self.field)
    }

    pub fn one(&self) -> Polynomial {
        Polynomial::one(self.n, &self.field)
    }

    pub fn monomial(&self, mu: &MultiIndex) -> Polynomial {
        Polynomial::x_pow(&self.field, mu)
    }

    /// Accumulates `coeff · (x^μ - s x^μ)/α_s` into `out`.
    fn add_divided_difference(&self, out: &mut Polynomial, class: ReflectionClass, mu: &MultiIndex, coeff: &CyclotomicNumber) {
        match class {
            ReflectionClass::Diagonal { i, power } => {
                let a = mu.get(i);
                if a == 0 {
                    return;
                }
                let factor = &self.field.one() - self.zeta(-(power as i64) * a as i64);
                let mut e = mu.entries().to_vec();
                e[i] -= 1;
                out.add_term(MultiIndex::new(e), &(coeff * &factor));
            }
            ReflectionClass::OrderTwo { i, j, l } => {
                // with u = x_i, v = ζ^l x_j the reflection swaps u and v
                let (a, b) = (mu.get(i), mu.get(j));
                let l = l as i64;
                let mut e = mu.entries().to_vec();
                if a > b {
                    for k in 0..a - b {
                        e[i] = a - 1 - k;
                        e[j] = b + k;
                        out.add_term(MultiIndex::new(e.clone()), &(coeff * self.zeta(l * k as i64)));
                    }
                } else if b > a {
                    for k in 0..b - a {
                        e[i] = b - 1 - k;
                        e[j] = a + k;
                        let z = self.zeta(l * (a as i64 + k as i64 - b as i64));
                        out.add_term(MultiIndex::new(e.clone()), &-&(coeff * z));
                    }
                }
            }
        }
    }

    fn dunkl_unchecked(&self, i: usize, f: &Polynomial) -> Polynomial {
        let mut out = if self.params.kappa().is_zero() {
            self.zero()
        } else {
            f.derivative(i).scale_rational(self.params.kappa())
        };
        for (mu, c) in f.terms() {
            for term in &self.dunkl_terms[i] {
                self.add_divided_difference(&mut out, term.class, mu, &-&(c * &term.weight));
            }
        }
        out
    }

    /// `y_i·f = κ ∂_i f - Σ_s c_s ⟨α_s, y_i⟩ (f - s f)/α_s` (0-based `i`).
    pub fn dunkl(&self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check_index(i)?;
        Ok(self.dunkl_unchecked(i, f))
    }

    /// Multiplication by `x_i`.
    pub fn x_op(&self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check_index(i)?;
        Ok(f.mul_var(i))
    }

    /// `t_v·f`.
    pub fn t_op(&self, v: &ColoredPermutation, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        if v.n() != self.n || v.r() != self.r() {
            return Err(Error::IncompatibleGroup { n1: self.n, r1: self.r(), n2: v.n(), r2: v.r() });
        }
        Ok(f.act(v))
    }

    /// The elements `ζ_i^l s_{ij} ζ_i^{-l}` (`j < i`, all `l`) summed in `φ_i`.
    pub fn phi_elements(&self, i: usize) -> &[ColoredPermutation] {
        &self.phi_elements[i]
    }

    fn z_unchecked(&self, i: usize, f: &Polynomial) -> Polynomial {
        let mut out = self.dunkl_unchecked(i, &f.mul_var(i));
        let c0 = self.field.rational(self.params.c0().clone());
        if !c0.is_zero() {
            for g in &self.phi_elements[i] {
                out.add_scaled(&c0, &f.act(g));
            }
        }
        out
    }

    /// `z_i = y_i x_i + c_0 φ_i`.
    pub fn z_op(&self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        self.check_index(i)?;
        Ok(self.z_unchecked(i, f))
    }

    /// `π_i = Σ_l t_{ζ_i ζ_{i+1}^{-1}}^l`.
    pub fn pi_op(&self, i: usize, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        if i + 1 >= self.n {
            return Err(Error::InvalidInput(format!("π_{} needs i < n", i + 1)));
        }
        let mut out = self.zero();
        let one = self.field.one();
        for l in 0..self.r() as i64 {
            let g = ColoredPermutation::zeta(self.n, self.r(), i, l)
                .compose(&ColoredPermutation::zeta(self.n, self.r(), i + 1, -l))
                .expect("same group");
            out.add_scaled(&one, &f.act(&g));
        }
        Ok(out)
    }

    /// `h = Σ x_i y_i + Σ_s c_s (1 - t_s)`.
    pub fn casimir_h(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check(f)?;
        let mut out = self.zero();
        let one = self.field.one();
        for i in 0..self.n {
            out.add_scaled(&one, &self.dunkl_unchecked(i, f).mul_var(i));
        }
        for s in &self.reflections {
            let c = self.reflection_parameter(s);
            if c.is_zero() {
                continue;
            }
            let c = self.field.rational(c);
            out.add_scaled(&c, f);
            out.add_scaled(&-&c, &f.act(&s.element));
        }
        Ok(out)
    }

    /// Joint eigenvalues of `f` under `z_i`, `t_{ζ_i^p}` and `t_{ζ_i^{-1} ζ_{i+1}}`.
    pub fn tweight_of(&self, f: &Polynomial) -> Result<TWeight> {
        self.check(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (n, r, p) = (self.n, self.r(), self.p());
        let mut alpha = Vec::with_capacity(n);
        for i in 0..n {
            let zf = self.z_unchecked(i, f);
            alpha.push(f.eigen_ratio(&zf).ok_or_else(|| Error::NotEigenvector { operator: format!("z_{}", i + 1) })?);
        }
        let root_exponent = |g: &ColoredPermutation, name: String| -> Result<u32> {
            f.eigen_ratio(&f.act(g))
                .and_then(|c| c.root_of_unity_exponent())
                .ok_or(Error::NotEigenvector { operator: name })
        };
        // ζ^{p β_i}
        let mut diag = Vec::with_capacity(n);
        for i in 0..n {
            let g = ColoredPermutation::zeta(n, r, i, p as i64);
            diag.push(root_exponent(&g, format!("t_{{zeta_{}^{p}}}", i + 1))?);
        }
        // ζ^{β_{i+1} - β_i}
        let mut steps = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n.saturating_sub(1) {
            let g = ColoredPermutation::zeta(n, r, i, -1)
                .compose(&ColoredPermutation::zeta(n, r, i + 1, 1))
                .expect("same group");
            steps.push(root_exponent(&g, format!("t_{{zeta_{}^-1 zeta_{}}}", i + 1, i + 2))?);
        }
        let q = r / p;
        let mut beta = vec![0u32; n];
        beta[n - 1] = (diag[n - 1] / p) % q;
        for i in (0..n - 1).rev() {
            beta[i] = (beta[i + 1] + r - steps[i]) % r;
        }
        for i in 0..n {
            if (p * beta[i]) % r != diag[i] {
                return Err(Error::NotEigenvector { operator: format!("t_{{zeta_{}^{p}}}", i + 1) });
            }
        }
        Ok(TWeight::new(alpha, beta, r, p))
    }

    /// Applies one named operator.
    pub fn apply(&self, op: &Operator, f: &Polynomial) -> Result<Polynomial> {
        match op {
            Operator::Dunkl(i) => self.dunkl(*i, f),
            Operator::X(i) => self.x_op(*i, f),
            Operator::Z(i) => self.z_op(*i, f),
            Operator::Pi(i) => self.pi_op(*i, f),
            Operator::Casimir => self.casimir_h(f),
            Operator::Group(v) => self.t_op(v, f),
        }
    }
}

/// Operators exposed by name (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Operator {
    Dunkl(usize),
    X(usize),
    Z(usize),
    Pi(usize),
    Casimir,
    Group(ColoredPermutation),
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Dunkl(i) => write!(f, "y{}", i + 1),
            Operator::X(i) => write!(f, "x{}", i + 1),
            Operator::Z(i) => write!(f, "z{}", i + 1),
            Operator::Pi(i) => write!(f, "pi{}", i + 1),
            Operator::Casimir => write!(f, "h"),
            Operator::Group(v) => write!(f, "t{v}"),
        }
    }
}

/// A t-weight `(α_1..α_n; ζ^{β_1}..ζ^{β_n})`, with the β's shifted by a
/// multiple of r/p so that `0 ≤ β_n < r/p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TWeight {
    pub alpha: Vec<CyclotomicNumber>,
    pub beta: Vec<u32>,
}

impl TWeight {
    /// Canonicalizes `beta` (entries read mod r).
    pub fn new(alpha: Vec<CyclotomicNumber>, beta: Vec<u32>, r: u32, p: u32) -> Self {
        let q = r / p;
        let mut beta: Vec<u32> = beta.into_iter().map(|b| b % r).collect();
        if let Some(&last) = beta.last() {
            let shift = last - last % q;
            for b in &mut beta {
                *b = (*b + r - shift) % r;
            }
        }
        TWeight { alpha, beta }
    }
}

impl fmt::Display for TWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: Vec<String> = self.alpha.iter().map(|x| x.to_string()).collect();
        let b: Vec<String> = self.beta.iter().map(|x| x.to_string()).collect();
        write!(f, "alpha = ({}); beta = ({})", a.join(", "), b.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::exact_divide_linear;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    /// Dunkl operator straight from the reflection sum, dividing by the root.
    fn reference_dunkl(ctx: &AlgebraContext, i: usize, f: &Polynomial) -> Polynomial {
        let mut out = f.derivative(i).scale_rational(ctx.params().kappa());
        for s in ctx.reflections() {
            let c = ctx.field().rational(ctx.reflection_parameter(s));
            let root = Polynomial::linear(ctx.field(), &s.root);
            let quotient = exact_divide_linear(&(f - &f.act(&s.element)), &root).unwrap();
            out = &out - &quotient.scale(&(&c * &s.root[i]));
        }
        out
    }

    #[test]
    fn closed_form_matches_division() {
        for (r, p, n) in [(1, 1, 3), (2, 1, 2), (3, 1, 2), (4, 2, 2), (3, 3, 3)] {
            let ctx = AlgebraContext::generic(r, p, n, q(1, 1)).unwrap();
            for mu in MultiIndex::all_up_to_degree(n, 3) {
                let f = ctx.monomial(&mu);
                for i in 0..n {
                    assert_eq!(ctx.dunkl(i, &f).unwrap(), reference_dunkl(&ctx, i, &f), "({r},{p},{n}) y{i} x^{mu}");
                }
            }
        }
    }

    #[test]
    fn dunkl_on_low_degree() {
        for (r, p, n) in [(1, 1, 2), (2, 1, 2), (3, 1, 3), (4, 2, 2)] {
            let ctx = AlgebraContext::generic(r, p, n, q(1, 1)).unwrap();
            let k = ctx.field().clone();
            let c0 = k.rational(ctx.params().c0().clone());
            for i in 0..n {
                assert!(ctx.dunkl(i, &ctx.one()).unwrap().is_zero());
                for j in 0..n {
                    let got = ctx.dunkl(i, &Polynomial::var(n, &k, j)).unwrap();
                    let expected = if i != j {
                        // c_0 Σ_l ζ^{-l}
                        let mut acc = k.zero();
                        for l in 0..r as i64 {
                            acc += &k.zeta_pow(-l);
                        }
                        &c0 * &acc
                    } else {
                        let mut acc = k.one();
                        for l in 1..r {
                            let cl = k.rational(ctx.params().c_diag(l));
                            acc -= &(&cl * &(&k.one() - &k.zeta_pow(-(l as i64))));
                        }
                        acc -= &(&c0 * &k.integer((r as i64) * (n as i64 - 1)));
                        acc
                    };
                    assert_eq!(got, Polynomial::constant(n, expected), "y{i} x{j}");
                }
            }
        }
    }

    #[test]
    fn z_on_constants() {
        for (r, p, n) in [(1, 1, 3), (2, 1, 2), (3, 1, 3), (4, 2, 2), (3, 3, 2)] {
            let ctx = AlgebraContext::generic(r, p, n, BigRational::zero()).unwrap();
            let k = ctx.field().clone();
            let params = ctx.params();
            let c0 = k.rational(params.c0().clone());
            for i in 0..n {
                // v_0 = w_0, so v_0(i) - 1 = n - 1 - i (0-based i)
                let mut expected = params.d(-1) - params.d(0);
                expected -= &(&c0 * &k.integer(r as i64 * (n - 1 - i) as i64));
                assert_eq!(ctx.z_op(i, &ctx.one()).unwrap(), Polynomial::constant(n, expected));
            }
        }
        let ctx = AlgebraContext::generic(3, 1, 1, q(2, 1)).unwrap();
        let p = ctx.params();
        let expected = &ctx.field().rational(q(2, 1)) - &(p.d(0) - p.d(-1));
        assert_eq!(ctx.z_op(0, &ctx.one()).unwrap(), Polynomial::constant(1, expected));
    }

    #[test]
    fn z_operators_commute() {
        for (r, p, n) in [(2, 1, 3), (3, 1, 2), (4, 2, 2)] {
            let ctx = AlgebraContext::generic(r, p, n, q(1, 1)).unwrap();
            for mu in MultiIndex::all_up_to_degree(n, 3) {
                let f = ctx.monomial(&mu);
                for i in 0..n {
                    for j in i + 1..n {
                        let a = ctx.z_op(i, &ctx.z_op(j, &f).unwrap()).unwrap();
                        let b = ctx.z_op(j, &ctx.z_op(i, &f).unwrap()).unwrap();
                        assert_eq!(a, b);
                    }
                }
            }
        }
    }

    #[test]
    fn covariance() {
        // t_v y_i = ζ^{k_i} y_{w(i)} t_v
        for (r, p, n) in [(2, 1, 2), (3, 1, 2), (2, 2, 3)] {
            let ctx = AlgebraContext::generic(r, p, n, q(1, 1)).unwrap();
            let k = ctx.field().clone();
            for v in crate::reflgroup::enumerate_group(r, n) {
                for mu in MultiIndex::all_up_to_degree(n, 2) {
                    let f = ctx.monomial(&mu);
                    for i in 0..n {
                        let lhs = ctx.dunkl(i, &f).unwrap().act(&v);
                        let rhs = ctx.dunkl(v.w().apply(i), &f.act(&v)).unwrap().scale(&k.zeta_pow(v.k()[i] as i64));
                        assert_eq!(lhs, rhs, "{v} y{i} x^{mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn casimir() {
        for (r, p, n) in [(1, 1, 3), (2, 1, 2), (3, 3, 2)] {
            let ctx = AlgebraContext::generic(r, p, n, BigRational::zero()).unwrap();
            assert!(ctx.casimir_h(&ctx.one()).unwrap().is_zero());
            for mu in MultiIndex::all_up_to_degree(n, 3) {
                assert!(ctx.casimir_h(&ctx.monomial(&mu)).unwrap().is_zero(), "h x^{mu}");
            }
            let ctx = AlgebraContext::generic(r, p, n, q(1, 1)).unwrap();
            for mu in MultiIndex::all_up_to_degree(n, 2) {
                let f = ctx.monomial(&mu);
                for i in 0..n {
                    let comm = &ctx.casimir_h(&f.mul_var(i)).unwrap() - &ctx.casimir_h(&f).unwrap().mul_var(i);
                    assert_eq!(comm, f.mul_var(i));
                }
            }
        }
    }

    #[test]
    fn tweight_examples() {
        let ctx = AlgebraContext::generic(3, 1, 2, BigRational::zero()).unwrap();
        let w = ctx.tweight_of(&ctx.one()).unwrap();
        assert_eq!(w.beta, vec![0, 0]);
        assert_eq!(Polynomial::constant(2, w.alpha[0].clone()), ctx.z_op(0, &ctx.one()).unwrap());
        let k = ctx.field();
        let f = &Polynomial::var(2, k, 0) + &Polynomial::var(2, k, 1);
        assert!(matches!(ctx.tweight_of(&f), Err(Error::NotEigenvector { .. })));
        assert_eq!(ctx.tweight_of(&ctx.zero()), Err(Error::ZeroPolynomial));
        // x_2 is a t-eigenvector: β = (0, -1) = (0, 2) before shifting
        let w = ctx.tweight_of(&Polynomial::var(2, k, 1)).unwrap();
        assert_eq!(w.beta, vec![0, 2]);
    }

    #[test]
    fn tweight_canonical_shift() {
        let k = CyclotomicField::new(4);
        let w = TWeight::new(vec![k.one(), k.one()], vec![1, 3], 4, 2);
        assert_eq!(w.beta, vec![3, 1]);
        let w = TWeight::new(vec![k.one(), k.one()], vec![1, 3], 4, 4);
        assert_eq!(w.beta, vec![2, 0]);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let ctx = AlgebraContext::generic(2, 1, 2, BigRational::zero()).unwrap();
        let wrong = Polynomial::one(3, ctx.field());
        assert!(matches!(ctx.dunkl(0, &wrong), Err(Error::IncompatibleRing { .. })));
        assert!(ctx.dunkl(5, &ctx.one()).is_err());
        assert!(AlgebraContext::generic(4, 3, 2, BigRational::zero()).is_err());
    }
}
