//! Non-symmetric Jack polynomials `f_μ`, built from `1` by the intertwiners
//! `Φ` and `σ_i`, together with their predicted t-weights.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::Rng;
use serde::Serialize;

use crate::cherednik::{AlgebraContext, TWeight};
use crate::error::{Error, Result};
use crate::exactfield::{CyclotomicNumber, ParameterSet};
use crate::polyring::{sort_data, MultiIndex, Polynomial};
use crate::reflgroup::ColoredPermutation;

/// `φ·μ = (μ_2, …, μ_n, μ_1 + 1)`.
pub fn phi_index(mu: &MultiIndex) -> MultiIndex {
    let e = mu.entries();
    let mut out: Vec<u32> = e[1..].to_vec();
    out.push(e[0] + 1);
    MultiIndex::new(out)
}

/// `ψ·μ = (μ_n - 1, μ_1, …, μ_{n-1})`, undefined when `μ_n = 0`.
pub fn psi_index(mu: &MultiIndex) -> Option<MultiIndex> {
    let e = mu.entries();
    let last = *e.last()?;
    if last == 0 {
        return None;
    }
    let mut out = vec![last - 1];
    out.extend_from_slice(&e[..e.len() - 1]);
    Some(MultiIndex::new(out))
}

/// `(μ_i + 1)κ - (d_0 - d_{-μ_i-1}) - r(v_μ(i) - 1)c_0` for 0-based `i`.
fn alpha_formula(params: &ParameterSet, mu: &MultiIndex, v_i: u32, i: usize) -> CyclotomicNumber {
    let k = params.field();
    let m = mu.get(i) as i64;
    let mut a = k.rational(params.kappa() * num_rational::BigRational::from_integer((m + 1).into()));
    a -= &(params.d(0) - params.d(-m - 1));
    let c0 = k.rational(params.c0().clone());
    a -= &(&c0 * &k.integer(params.r() as i64 * (v_i as i64 - 1)));
    a
}

/// The t-weight predicted for `f_μ`: α from the z-eigenvalue formula, `β_i ≡ -μ_i`.
pub fn expected_weight(mu: &MultiIndex, params: &ParameterSet) -> TWeight {
    let sd = sort_data(mu);
    let r = params.r();
    let alpha = (0..mu.len()).map(|i| alpha_formula(params, mu, sd.v_one_based(i), i)).collect();
    let beta = mu.entries().iter().map(|&m| (r - m % r) % r).collect();
    TWeight::new(alpha, beta, r, params.p())
}

/// `f_μ` with its weight and the parameters it was computed at.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JackRecord {
    pub mu: MultiIndex,
    pub f: Polynomial,
    pub weight: TWeight,
    pub params: ParameterSet,
}

/// Result of applying an intertwiner to some `f_μ`.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug, PartialEq)]
pub enum Intertwined {
    /// `scalar · f_ν` with the record of `f_ν`.
    Multiple { scalar: CyclotomicNumber, record: JackRecord },
    Zero,
}

impl Intertwined {
    pub fn is_zero(&self) -> bool {
        matches!(self, Intertwined::Zero)
    }
}

fn product_of_simples(n: usize, r: u32, indices: impl Iterator<Item = usize>) -> ColoredPermutation {
    let mut g = ColoredPermutation::identity(n, r);
    for i in indices {
        g = g.compose(&ColoredPermutation::simple(n, r, i)).expect("same group");
    }
    g
}

/// `Φ·f = x_n t_{s_{n-1}⋯s_1} f`.
pub fn raw_phi(ctx: &AlgebraContext, f: &Polynomial) -> Result<Polynomial> {
    let n = ctx.n();
    let g = product_of_simples(n, ctx.r(), (0..n - 1).rev());
    ctx.x_op(n - 1, &ctx.t_op(&g, f)?)
}

/// `Ψ·f = y_1 t_{s_1⋯s_{n-1}} f`.
pub fn raw_psi(ctx: &AlgebraContext, f: &Polynomial) -> Result<Polynomial> {
    let n = ctx.n();
    let g = product_of_simples(n, ctx.r(), 0..n - 1);
    ctx.dunkl(0, &ctx.t_op(&g, f)?)
}

/// `σ_i·f = t_{s_i} f + c_0 (z_i - z_{i+1})^{-1} π_i f` for a t-eigenvector `f`,
/// with the z-eigenvalues read off `π_i f` by applying `z_i`, `z_{i+1}`.
pub fn raw_sigma(ctx: &AlgebraContext, i: usize, f: &Polynomial) -> Result<Polynomial> {
    let n = ctx.n();
    if i + 1 >= n {
        return Err(Error::InvalidInput(format!("sigma_{} needs i < n", i + 1)));
    }
    let swapped = ctx.t_op(&ColoredPermutation::simple(n, ctx.r(), i), f)?;
    let pi_f = ctx.pi_op(i, f)?;
    if pi_f.is_zero() {
        return Ok(swapped);
    }
    let eig = |j: usize| -> Result<CyclotomicNumber> {
        pi_f.eigen_ratio(&ctx.z_op(j, &pi_f)?)
            .ok_or_else(|| Error::NotEigenvector { operator: format!("z_{}", j + 1) })
    };
    let gap = &eig(i)? - &eig(i + 1)?;
    if gap.is_zero() {
        return Err(Error::GenericityFailure { expression: format!("z_{} - z_{}", i + 1, i + 2) });
    }
    let c0 = ctx.field().rational(ctx.params().c0().clone());
    let mut out = swapped;
    out.add_scaled(&(&c0 * &gap.inverse()?), &pi_f);
    Ok(out)
}

/// Which case of the intertwiner action applies to `σ_i f_μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SigmaCase {
    /// `μ_i < μ_{i+1}` or `μ_i ≢ μ_{i+1} (mod r)`: `σ_i f_μ = f_{s_i μ}`.
    Plain,
    /// `μ_i > μ_{i+1}`, `μ_i ≡ μ_{i+1} (mod r)`: scaled by `(δ - rc_0)(δ + rc_0)/δ²`.
    Scaled,
    /// `μ_i = μ_{i+1}`: `σ_i f_μ = 0`.
    Equal,
}

pub fn sigma_case(mu: &MultiIndex, i: usize, r: u32) -> SigmaCase {
    let (a, b) = (mu.get(i), mu.get(i + 1));
    if a == b {
        SigmaCase::Equal
    } else if a < b || (a - b) % r != 0 {
        SigmaCase::Plain
    } else {
        SigmaCase::Scaled
    }
}

/// `δ = κ(μ_i - μ_{i+1}) - c_0 r (v_μ(i) - v_μ(i+1))`.
pub fn sigma_delta(params: &ParameterSet, mu: &MultiIndex, i: usize) -> CyclotomicNumber {
    let k = params.field();
    let sd = sort_data(mu);
    let diff = mu.get(i) as i64 - mu.get(i + 1) as i64;
    let dv = sd.v_one_based(i) as i64 - sd.v_one_based(i + 1) as i64;
    let mut delta = k.rational(params.kappa() * num_rational::BigRational::from_integer(diff.into()));
    delta -= &k.rational(params.c0() * num_rational::BigRational::from_integer((params.r() as i64 * dv).into()));
    delta
}

/// The scalar `c` with `σ_i f_μ = c f_{s_i μ}`.
pub fn sigma_scalar(params: &ParameterSet, mu: &MultiIndex, i: usize) -> Result<CyclotomicNumber> {
    let k = params.field();
    match sigma_case(mu, i, params.r()) {
        SigmaCase::Plain => Ok(k.one()),
        SigmaCase::Equal => Ok(k.zero()),
        SigmaCase::Scaled => {
            let delta = sigma_delta(params, mu, i);
            if delta.is_zero() {
                return Err(Error::GenericityFailure { expression: format!("delta for sigma_{} at {mu}", i + 1) });
            }
            let rc0 = k.rational(params.c0() * num_rational::BigRational::from_integer(params.r().into()));
            let num = &(&delta - &rc0) * &(&delta + &rc0);
            Ok(&num * &(&delta * &delta).inverse()?)
        }
    }
}

/// The scalar `c` with `Ψ f_μ = c f_{ψ·μ}` (zero when `μ_n = 0`).
pub fn psi_scalar(params: &ParameterSet, mu: &MultiIndex) -> CyclotomicNumber {
    let k = params.field();
    let n = mu.len();
    let m = mu.get(n - 1) as i64;
    if m == 0 {
        return k.zero();
    }
    let v_n = sort_data(mu).v_one_based(n - 1) as i64;
    let mut s = k.rational(params.kappa() * num_rational::BigRational::from_integer(m.into()));
    s -= &(params.d(0) - params.d(-m));
    s -= &k.rational(params.c0() * num_rational::BigRational::from_integer((params.r() as i64 * (v_n - 1)).into()));
    s
}

fn record(ctx: &AlgebraContext, mu: MultiIndex, f: Polynomial) -> JackRecord {
    let weight = expected_weight(&mu, ctx.params());
    JackRecord { mu, f, weight, params: ctx.params().clone() }
}

fn check_record(ctx: &AlgebraContext, rec: &JackRecord) -> Result<()> {
    if rec.f.n() != ctx.n() || rec.f.order() != ctx.r() || &rec.params != ctx.params() {
        return Err(Error::InvalidInput(format!("record for {} belongs to another context", rec.mu)));
    }
    Ok(())
}

/// `Φ f_μ = f_{φ·μ}`.
pub fn apply_phi(ctx: &AlgebraContext, rec: &JackRecord) -> Result<JackRecord> {
    check_record(ctx, rec)?;
    Ok(record(ctx, phi_index(&rec.mu), raw_phi(ctx, &rec.f)?))
}

/// `Ψ f_μ`, normalized by the predicted scalar.
///
/// A vanishing scalar yields [`Intertwined::Zero`] when the image really is
/// zero, and [`Error::GenericityFailure`] otherwise.
pub fn apply_psi(ctx: &AlgebraContext, rec: &JackRecord) -> Result<Intertwined> {
    check_record(ctx, rec)?;
    let Some(target) = psi_index(&rec.mu) else {
        return Ok(Intertwined::Zero);
    };
    let image = raw_psi(ctx, &rec.f)?;
    let scalar = psi_scalar(ctx.params(), &rec.mu);
    if scalar.is_zero() {
        if image.is_zero() {
            return Ok(Intertwined::Zero);
        }
        return Err(Error::GenericityFailure { expression: format!("Psi scalar at {}", rec.mu) });
    }
    let f = image.scale(&scalar.inverse()?);
    Ok(Intertwined::Multiple { scalar, record: record(ctx, target, f) })
}

/// `σ_i f_μ` computed from the stored eigenvalues of the record: `π_i f` is
/// `r f` when `μ_i ≡ μ_{i+1} (mod r)` and `0` otherwise.
pub fn apply_sigma(ctx: &AlgebraContext, i: usize, rec: &JackRecord) -> Result<Intertwined> {
    check_record(ctx, rec)?;
    let (n, r) = (ctx.n(), ctx.r());
    if i + 1 >= n {
        return Err(Error::InvalidInput(format!("sigma_{} needs i < n", i + 1)));
    }
    let mu = &rec.mu;
    let mut image = rec.f.act(&ColoredPermutation::simple(n, r, i));
    if (mu.get(i) as i64 - mu.get(i + 1) as i64) % r as i64 == 0 {
        let gap = &rec.weight.alpha[i] - &rec.weight.alpha[i + 1];
        if gap.is_zero() {
            return Err(Error::GenericityFailure { expression: format!("alpha_{} - alpha_{} at {mu}", i + 1, i + 2) });
        }
        let c0r = ctx.field().rational(ctx.params().c0() * num_rational::BigRational::from_integer(r.into()));
        image.add_scaled(&(&c0r * &gap.inverse()?), &rec.f);
    }
    let scalar = sigma_scalar(ctx.params(), mu, i)?;
    if scalar.is_zero() {
        if image.is_zero() {
            return Ok(Intertwined::Zero);
        }
        return Err(Error::LemmaViolation(format!("sigma_{} f_{mu} should vanish but is {image}", i + 1)));
    }
    let f = image.scale(&scalar.inverse()?);
    Ok(Intertwined::Multiple { scalar, record: record(ctx, mu.swapped(i), f) })
}

/// One step of a construction path for `f_μ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Step {
    /// `f_μ = Φ f_{ψ·μ}`.
    Raise,
    /// `f_μ = σ_i f_{s_i μ}` with `μ_i > μ_{i+1}`.
    Sigma(usize),
}

fn predecessor(mu: &MultiIndex, step: Step) -> MultiIndex {
    match step {
        Step::Raise => psi_index(mu).expect("raise needs a positive last entry"),
        Step::Sigma(i) => mu.swapped(i),
    }
}

fn descents(mu: &MultiIndex) -> Vec<usize> {
    (0..mu.len().saturating_sub(1)).filter(|&i| mu.get(i) > mu.get(i + 1)).collect()
}

fn deterministic_step(mu: &MultiIndex) -> Option<Step> {
    if mu.degree() == 0 {
        None
    } else if let Some(&i) = descents(mu).last() {
        Some(Step::Sigma(i))
    } else {
        Some(Step::Raise)
    }
}

/// Memoized constructor of the `f_μ` for one algebra context.
///
/// The memo is safe to share between threads; concurrent requests for the same
/// `μ` may both compute it, and the results agree.
#[derive(Debug)]
pub struct JackEngine {
    ctx: Arc<AlgebraContext>,
    memo: RwLock<HashMap<MultiIndex, Arc<JackRecord>>>,
    verify_weights: bool,
}

impl JackEngine {
    pub fn new(ctx: Arc<AlgebraContext>) -> Self {
        JackEngine { ctx, memo: RwLock::new(HashMap::new()), verify_weights: false }
    }

    /// Re-derives every constructed weight with `tweight_of` (slow).
    pub fn with_weight_check(mut self, on: bool) -> Self {
        self.verify_weights = on;
        self
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn cached(&self) -> usize {
        self.memo.read().expect("memo lock").len()
    }

    fn lookup(&self, mu: &MultiIndex) -> Option<Arc<JackRecord>> {
        self.memo.read().expect("memo lock").get(mu).cloned()
    }

    fn base(&self) -> JackRecord {
        record(&self.ctx, MultiIndex::zeros(self.ctx.n()), self.ctx.one())
    }

    fn step(&self, step: Step, from: &JackRecord) -> Result<JackRecord> {
        let rec = match step {
            Step::Raise => apply_phi(&self.ctx, from)?,
            Step::Sigma(i) => match apply_sigma(&self.ctx, i, from)? {
                Intertwined::Multiple { record, .. } => record,
                Intertwined::Zero => {
                    return Err(Error::LemmaViolation(format!("sigma_{} killed f_{}", i + 1, from.mu)));
                }
            },
        };
        if self.verify_weights {
            let actual = self.ctx.tweight_of(&rec.f)?;
            if actual != rec.weight {
                return Err(Error::LemmaViolation(format!(
                    "f_{} has weight {actual}, expected {}",
                    rec.mu, rec.weight
                )));
            }
        }
        Ok(rec)
    }

    /// `f_μ` by the deterministic recursion: `Φ` when `μ` is weakly increasing,
    /// otherwise `σ_i` at the largest descent `i`.
    pub fn jack_f(&self, mu: &MultiIndex) -> Result<Arc<JackRecord>> {
        if mu.len() != self.ctx.n() {
            return Err(Error::InvalidInput(format!("{mu} has length {}, expected {}", mu.len(), self.ctx.n())));
        }
        // walk down to something cached (or the base case), then back up
        let mut chain = Vec::new();
        let mut current = mu.clone();
        let mut rec = loop {
            if let Some(hit) = self.lookup(&current) {
                break hit;
            }
            match deterministic_step(&current) {
                None => break Arc::new(self.base()),
                Some(step) => {
                    let prev = predecessor(&current, step);
                    chain.push(step);
                    current = prev;
                }
            }
        };
        self.memo.write().expect("memo lock").entry(rec.mu.clone()).or_insert_with(|| rec.clone());
        for step in chain.into_iter().rev() {
            let next = Arc::new(self.step(step, &rec)?);
            rec = self
                .memo
                .write()
                .expect("memo lock")
                .entry(next.mu.clone())
                .or_insert(next)
                .clone();
        }
        Ok(rec)
    }

    /// `f_μ` along a random admissible path (any descent may be resolved
    /// first); bypasses the memo.
    pub fn jack_f_random_path<R: Rng>(&self, mu: &MultiIndex, rng: &mut R) -> Result<JackRecord> {
        let mut chain = Vec::new();
        let mut current = mu.clone();
        while current.degree() > 0 {
            let d = descents(&current);
            let step = if d.is_empty() { Step::Raise } else { Step::Sigma(d[rng.random_range(0..d.len())]) };
            current = predecessor(&current, step);
            chain.push(step);
        }
        let mut rec = self.base();
        for step in chain.into_iter().rev() {
            rec = self.step(step, &rec)?;
        }
        Ok(rec)
    }
}
