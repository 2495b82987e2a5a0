//! The coinvariant ring S/I of G(r,p,n): invariant generators, graded pieces
//! of the ideal, the basis of Jack polynomials indexed by colored descents,
//! and the checks of its decomposition under the graded Hecke subalgebra.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::cherednik::{AlgebraContext, TWeight};
use crate::error::{Error, Result};
use crate::exactfield::{CyclotomicField, ParameterSet};
use crate::exec::{self, Execution};
use crate::jack::{raw_phi, raw_psi, raw_sigma, JackEngine, JackRecord};
use crate::polyring::{order_key, MultiIndex, Polynomial};
use crate::reflgroup::{
    chains_witness, descent_class, enumerate_gr1np, steinberg_weight, validate_group, ColoredPermutation,
    DescentClassKey,
};

/// Degrees of the fundamental invariants: `r, 2r, …, (n-1)r, nr/p`.
pub fn invariant_degrees(r: u32, p: u32, n: usize) -> Result<Vec<u32>> {
    validate_group(r, p, n)?;
    let mut degrees: Vec<u32> = (1..n as u32).map(|j| j * r).collect();
    degrees.push(n as u32 * r / p);
    Ok(degrees)
}

fn group_generators(r: u32, p: u32, n: usize) -> Vec<ColoredPermutation> {
    let mut gens: Vec<ColoredPermutation> = (0..n - 1).map(|i| ColoredPermutation::simple(n, r, i)).collect();
    gens.push(ColoredPermutation::zeta(n, r, 0, p as i64));
    if n > 1 {
        gens.push(
            ColoredPermutation::zeta(n, r, 0, 1)
                .compose(&ColoredPermutation::zeta(n, r, 1, -1))
                .expect("same group"),
        );
    }
    gens
}

/// `e_j(x_1^r, …, x_n^r)` for `j < n`, and `(x_1⋯x_n)^{r/p}`; each is checked
/// invariant under generators of G(r,p,n).
pub fn invariant_generators(r: u32, p: u32, n: usize) -> Result<Vec<Polynomial>> {
    validate_group(r, p, n)?;
    let field = CyclotomicField::new(r);
    let one = field.one();
    let mut out = Vec::with_capacity(n);
    for j in 1..n {
        let mut e = Polynomial::zero(n, &field);
        for subset in subsets(n, j) {
            let mut exps = vec![0u32; n];
            for &i in &subset {
                exps[i] = r;
            }
            e.add_term(MultiIndex::new(exps), &one);
        }
        out.push(e);
    }
    out.push(Polynomial::monomial(n, &field, MultiIndex::new(vec![r / p; n]), one));
    for g in &out {
        for s in group_generators(r, p, n) {
            if &g.act(&s) != g {
                return Err(Error::LemmaViolation(format!("{g} is not fixed by {s}")));
            }
        }
    }
    Ok(out)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Coefficients of `Π_i (1 - t^{d_i})/(1 - t)` over the invariant degrees.
pub fn hilbert_series(r: u32, p: u32, n: usize) -> Result<Vec<u64>> {
    let mut series = vec![1u64];
    for d in invariant_degrees(r, p, n)? {
        let d = d as usize;
        let mut next = vec![0u64; series.len() + d - 1];
        for (a, &c) in series.iter().enumerate() {
            for b in 0..d {
                next[a + b] += c;
            }
        }
        series = next;
    }
    Ok(series)
}

/// `Σ_{v ∈ G(r,1,n)_p} t^{|λ_v|}`.
pub fn flag_major_genfun(r: u32, p: u32, n: usize) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for v in enumerate_gr1np(r, p, n)? {
        let d = steinberg_weight(&v).degree() as usize;
        if out.len() <= d {
            out.resize(d + 1, 0);
        }
        out[d] += 1;
    }
    Ok(out)
}

/// Reduced row echelon form over Q(ζ_r): every row has leading coefficient 1
/// at its pivot and no other row touches that pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<(MultiIndex, Polynomial)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Polynomial> {
        self.rows.iter().map(|(_, row)| row)
    }

    /// `f` minus its projection onto the row space along the pivot monomials.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut g = f.clone();
        for (pivot, row) in &self.rows {
            if let Some(c) = g.coeff(pivot).cloned() {
                g.add_scaled(&-&c, row);
            }
        }
        g
    }

    /// Adds `f` to the span; returns false when `f` was already in it.
    pub fn insert(&mut self, f: &Polynomial) -> bool {
        let g = self.reduce(f);
        let Some((pivot, lead)) = g.terms().next_back().map(|(m, c)| (m.clone(), c.clone())) else {
            return false;
        };
        let g = g.scale(&lead.inverse().expect("nonzero leading coefficient"));
        for (_, row) in &mut self.rows {
            if let Some(c) = row.coeff(&pivot).cloned() {
                row.add_scaled(&-&c, &g);
            }
        }
        self.rows.push((pivot, g));
        true
    }
}

impl Default for Echelon {
    fn default() -> Self {
        Self::new()
    }
}

/// Echelonized basis of the degree-`d` piece `I_d` of the ideal.
#[derive(Clone, Debug)]
pub struct GradedIdealBasis {
    pub degree: u32,
    /// `dim S_d`.
    pub ambient_dim: usize,
    echelon: Echelon,
}

impl GradedIdealBasis {
    /// Spans `g_j x^ν` over generators and monomials of complementary degree.
    pub fn new(generators: &[Polynomial], n: usize, d: u32) -> Self {
        let mut echelon = Echelon::new();
        for g in generators {
            let Some(gd) = g.degree() else { continue };
            if gd > d {
                continue;
            }
            for nu in MultiIndex::all_of_degree(n, d - gd) {
                let mut prod = g.clone();
                for (i, &e) in nu.entries().iter().enumerate() {
                    for _ in 0..e {
                        prod = prod.mul_var(i);
                    }
                }
                echelon.insert(&prod);
            }
        }
        GradedIdealBasis { degree: d, ambient_dim: MultiIndex::all_of_degree(n, d).len(), echelon }
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    /// `dim S_d / I_d`.
    pub fn quotient_dim(&self) -> usize {
        self.ambient_dim - self.rank()
    }

    pub fn rows(&self) -> impl Iterator<Item = &Polynomial> {
        self.echelon.rows()
    }

    /// Normal form of a homogeneous degree-`d` polynomial.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.echelon.reduce(f)
    }
}

/// One named check with its first counterexample.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub counterexample: Option<String>,
}

impl ClauseResult {
    pub fn from_checks(name: &str, checks: Vec<std::result::Result<(), String>>) -> Self {
        let checked = checks.len();
        let counterexample = checks.into_iter().find_map(|c| c.err());
        ClauseResult { name: name.into(), passed: counterexample.is_none(), checked, counterexample }
    }

    fn single(name: &str, outcome: std::result::Result<(), String>) -> Self {
        Self::from_checks(name, vec![outcome])
    }
}

/// Ideal-stability outcome for one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub degree: u32,
    pub rows_checked: usize,
    pub passed: bool,
    pub counterexample: Option<String>,
}

/// One colored descent class of `G(r,1,n)_p` and its span.
#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    pub key: DescentClassKey,
    pub members: Vec<ColoredPermutation>,
    pub steinberg: Vec<MultiIndex>,
    pub connected: bool,
    pub fingerprint: Vec<TWeight>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupLabel {
    pub r: u32,
    pub p: u32,
    pub n: usize,
}

/// Everything checked about the basis and its decomposition.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub group: GroupLabel,
    pub params: ParameterSet,
    pub cardinality: usize,
    pub expected_cardinality: usize,
    pub hilbert: Vec<u64>,
    pub steinberg_degree_counts: Vec<u64>,
    pub quotient_dims: Vec<u64>,
    pub classes: Vec<ClassReport>,
    pub clauses: Vec<ClauseResult>,
    pub passed: bool,
}

impl DecompositionReport {
    pub fn clause(&self, name: &str) -> Option<&ClauseResult> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

/// A basis element `f_{λ_v}`.
#[derive(Clone, Debug)]
pub struct DescentElement {
    pub v: ColoredPermutation,
    pub record: Arc<JackRecord>,
}

/// The coinvariant ring of G(r,p,n) at κ = 0 with graded ideal data cached.
pub struct Coinvariants {
    engine: Arc<JackEngine>,
    generators: Vec<Polynomial>,
    bases: Vec<GradedIdealBasis>,
    hilbert: Vec<u64>,
    mode: Execution,
}

impl Coinvariants {
    /// Requires κ = 0.
    pub fn new(params: ParameterSet, n: usize, mode: Execution) -> Result<Self> {
        if !params.kappa().is_zero() {
            return Err(Error::InvalidParameters("the coinvariant ring is an H-module only at kappa = 0".into()));
        }
        let (r, p) = (params.r(), params.p());
        let ctx = Arc::new(AlgebraContext::new(params, n)?);
        let generators = invariant_generators(r, p, n)?;
        let hilbert = hilbert_series(r, p, n)?;
        let degrees: Vec<u32> = (0..hilbert.len() as u32).collect();
        let bases = exec::map(mode, &degrees, |&d| GradedIdealBasis::new(&generators, n, d));
        Ok(Coinvariants { engine: Arc::new(JackEngine::new(ctx)), generators, bases, hilbert, mode })
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        self.engine.context()
    }

    pub fn engine(&self) -> &Arc<JackEngine> {
        &self.engine
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn hilbert(&self) -> &[u64] {
        &self.hilbert
    }

    pub fn top_degree(&self) -> u32 {
        self.hilbert.len() as u32 - 1
    }

    /// `I_d` for `d` up to the top degree.
    pub fn ideal_basis(&self, d: u32) -> &GradedIdealBasis {
        &self.bases[d as usize]
    }

    /// Normal form modulo `I`; every monomial above the top degree lies in `I`.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(f.n(), f.field());
        let degrees: BTreeSet<u32> = f.support().map(MultiIndex::degree).collect();
        let one = f.field().one();
        for d in degrees {
            if let Some(basis) = self.bases.get(d as usize) {
                out.add_scaled(&one, &basis.normal_form(&f.homogeneous_part(d)));
            }
        }
        out
    }

    /// `f_{λ_v}` for every `v ∈ G(r,1,n)_p`, in enumeration order.
    pub fn descent_basis(&self) -> Result<Vec<DescentElement>> {
        let ctx = self.context();
        let elems = enumerate_gr1np(ctx.r(), ctx.p(), ctx.n())?;
        exec::try_map(self.mode, &elems, |v| {
            let record = self.engine.jack_f(&steinberg_weight(v))?;
            Ok(DescentElement { v: v.clone(), record })
        })
    }

    /// `y_i b ∈ I_{d-1}` for every echelon row `b` of `I_d` and every `i`.
    pub fn ideal_stability_check(&self, d: u32) -> Result<StabilityReport> {
        let ctx = self.context();
        let basis = self.ideal_basis(d);
        let mut rows_checked = 0;
        let mut counterexample = None;
        if d > 0 {
            let lower = self.ideal_basis(d - 1);
            'rows: for row in basis.rows() {
                rows_checked += 1;
                for i in 0..ctx.n() {
                    let image = ctx.dunkl(i, row)?;
                    let nf = lower.normal_form(&image);
                    if !nf.is_zero() {
                        counterexample = Some(format!("y{} ({row}) has normal form {nf}", i + 1));
                        break 'rows;
                    }
                }
            }
        }
        Ok(StabilityReport { degree: d, rows_checked, passed: counterexample.is_none(), counterexample })
    }

    /// Expands a homogeneous polynomial in the `f_μ` basis by peeling off
    /// leading terms.
    pub fn expand_in_jack_basis(&self, f: &Polynomial) -> Result<BTreeMap<MultiIndex, crate::exactfield::CyclotomicNumber>> {
        let mut residual = f.clone();
        let mut out = BTreeMap::new();
        while let Some(lead) = residual.support().max_by_key(|m| order_key(m)).cloned() {
            let c = residual.coeff(&lead).cloned().expect("support term");
            let rec = self.engine.jack_f(&lead)?;
            residual.add_scaled(&-&c, &rec.f);
            if residual.coeff(&lead).is_some() {
                return Err(Error::LemmaViolation(format!("f_{lead} is not monic at x^{lead}")));
            }
            out.insert(lead, c);
        }
        Ok(out)
    }

    /// Runs every check of the basis theorem and its decomposition.
    pub fn verify_decomposition(&self) -> Result<DecompositionReport> {
        let ctx = self.context().clone();
        let (r, p, n) = (ctx.r(), ctx.p(), ctx.n());
        let basis = self.descent_basis()?;
        let mut clauses = Vec::new();

        let mut expected_cardinality = (r as usize).pow(n as u32) / p as usize;
        expected_cardinality *= (1..=n).product::<usize>();
        clauses.push(ClauseResult::single(
            "cardinality",
            if basis.len() == expected_cardinality {
                Ok(())
            } else {
                Err(format!("{} elements, expected {expected_cardinality}", basis.len()))
            },
        ));

        let top = self.top_degree() as usize;
        let mut counts = vec![0u64; top + 1];
        let mut over_top = Vec::new();
        for e in &basis {
            let d = e.record.mu.degree() as usize;
            if d <= top {
                counts[d] += 1;
            } else {
                over_top.push(e.record.mu.clone());
            }
        }
        clauses.push(ClauseResult::single(
            "hilbert_counts",
            if counts == self.hilbert && over_top.is_empty() {
                Ok(())
            } else {
                Err(format!("steinberg degrees {counts:?} vs hilbert {:?}", self.hilbert))
            },
        ));

        let quotient_dims: Vec<u64> = self.bases.iter().map(|b| b.quotient_dim() as u64).collect();
        clauses.push(ClauseResult::single(
            "quotient_dims",
            if quotient_dims == self.hilbert {
                Ok(())
            } else {
                Err(format!("dim S_d/I_d = {quotient_dims:?} vs hilbert {:?}", self.hilbert))
            },
        ));

        // leading monomials distinct and normal forms independent per degree
        let mut leads = HashSet::new();
        let mut independence = Vec::new();
        for e in &basis {
            if !leads.insert(e.record.mu.clone()) {
                independence.push(Err(format!("repeated leading monomial {}", e.record.mu)));
            }
        }
        let degrees: Vec<u32> = (0..=top as u32).collect();
        let per_degree = exec::map(self.mode, &degrees, |&d| {
            let mut ech = Echelon::new();
            for e in basis.iter().filter(|e| e.record.mu.degree() == d) {
                let nf = self.bases[d as usize].normal_form(&e.record.f);
                if !ech.insert(&nf) {
                    return Err(format!("normal form of f_{} depends on lower elements in degree {d}", e.record.mu));
                }
            }
            Ok(())
        });
        independence.extend(per_degree);
        clauses.push(ClauseResult::from_checks("independence", independence));

        let index: HashMap<ColoredPermutation, usize> = basis.iter().enumerate().map(|(k, e)| (e.v.clone(), k)).collect();
        let steinberg_set: HashSet<MultiIndex> = basis.iter().map(|e| e.record.mu.clone()).collect();

        // (i) and (ii): σ_i on each basis element
        let sigma_checks = exec::try_map(self.mode, &basis, |e| -> Result<Vec<(bool, std::result::Result<(), String>)>> {
            let mut out = Vec::new();
            for i in 0..n - 1 {
                let u = e.v.left_simple(i);
                let same_class = descent_class(&u) == descent_class(&e.v);
                let once = raw_sigma(&ctx, i, &e.record.f)?;
                if same_class {
                    let target = &basis[index[&u]].record;
                    let clause_i = if e.record.mu.swapped(i) != target.mu {
                        Err(format!("s_{} λ_{} != λ_{}", i + 1, e.v, u))
                    } else {
                        match target.f.eigen_ratio(&once) {
                            Some(c) if !c.is_zero() => Ok(()),
                            _ => Err(format!("sigma_{} f_{} is not a nonzero multiple of f_{}", i + 1, e.record.mu, target.mu)),
                        }
                    };
                    out.push((true, clause_i));
                }
                let twice = if once.is_zero() { once } else { raw_sigma(&ctx, i, &once)? };
                let w_inv = e.v.w().inverse();
                let (pa, pb) = (w_inv.apply(i), w_inv.apply(i + 1));
                let positional = e.v.k()[pa] == e.v.k()[pb] && pa.abs_diff(pb) == 1;
                let clause_ii = if twice.is_zero() == positional && positional == !same_class {
                    Ok(())
                } else {
                    Err(format!(
                        "v = {}, i = {}: sigma^2 zero {}, colors/positions {}, class changes {}",
                        e.v,
                        i + 1,
                        twice.is_zero(),
                        positional,
                        !same_class
                    ))
                };
                out.push((false, clause_ii));
            }
            Ok(out)
        })?;
        let (mut clause_i, mut clause_ii) = (Vec::new(), Vec::new());
        for (is_i, check) in sigma_checks.into_iter().flatten() {
            if is_i {
                clause_i.push(check);
            } else {
                clause_ii.push(check);
            }
        }
        clauses.push(ClauseResult::from_checks("i_sigma_within_class", clause_i));
        clauses.push(ClauseResult::from_checks("ii_sigma_square", clause_ii));

        // classes in key order
        let mut by_class: BTreeMap<DescentClassKey, Vec<usize>> = BTreeMap::new();
        for (k, e) in basis.iter().enumerate() {
            by_class.entry(descent_class(&e.v)).or_default().push(k);
        }
        let class_list: Vec<(DescentClassKey, Vec<usize>)> = by_class.into_iter().collect();

        // (iii): lift chains witnesses through σ's
        let chain_checks = exec::try_map(self.mode, &class_list, |(_, members)| -> Result<Vec<std::result::Result<(), String>>> {
            let start = &basis[members[0]];
            let mut out = Vec::new();
            for &m in &members[1..] {
                let goal = &basis[m];
                let word = match chains_witness(&start.v, &goal.v) {
                    Ok(word) => word,
                    Err(err) => {
                        out.push(Err(err.to_string()));
                        continue;
                    }
                };
                let mut f = start.record.f.clone();
                let mut v = start.v.clone();
                let mut ok = Ok(());
                for &i in &word {
                    f = raw_sigma(&ctx, i, &f)?;
                    v = v.left_simple(i);
                    let expected = &basis[index[&v]].record;
                    if !matches!(expected.f.eigen_ratio(&f), Some(c) if !c.is_zero()) {
                        ok = Err(format!("chain from {} to {} breaks at {}", start.v, goal.v, v));
                        break;
                    }
                }
                out.push(ok);
            }
            Ok(out)
        })?;
        let connected: Vec<bool> = chain_checks.iter().map(|c| c.iter().all(|x| x.is_ok())).collect();
        clauses.push(ClauseResult::from_checks("iii_connected", chain_checks.into_iter().flatten().collect()));

        // (iv): t_{s_i} f_{λ_v} expanded in the f-basis stays in the class modulo I
        let basis_ref = &basis;
        let class_of: HashMap<MultiIndex, usize> = class_list
            .iter()
            .enumerate()
            .flat_map(|(c, (_, members))| members.iter().map(move |&m| (basis_ref[m].record.mu.clone(), c)))
            .collect();
        let stability_checks = exec::try_map(self.mode, &basis, |e| -> Result<Vec<std::result::Result<(), String>>> {
            let mut out = Vec::new();
            let own = class_of[&e.record.mu];
            for i in 0..n - 1 {
                let image = e.record.f.act(&ColoredPermutation::simple(n, r, i));
                let expansion = self.expand_in_jack_basis(&image)?;
                let mut check = Ok(());
                for nu in expansion.keys() {
                    if steinberg_set.contains(nu) {
                        if class_of[nu] != own {
                            check = Err(format!("t_s{} f_{} involves f_{nu} from another class", i + 1, e.record.mu));
                            break;
                        }
                    } else {
                        let f_nu = self.engine.jack_f(nu)?;
                        if !self.normal_form(&f_nu.f).is_zero() {
                            check = Err(format!("f_{nu} (not a Steinberg weight) is not in the ideal"));
                            break;
                        }
                    }
                }
                out.push(check);
            }
            Ok(out)
        })?;
        clauses.push(ClauseResult::from_checks("iv_hecke_stable", stability_checks.into_iter().flatten().collect()));

        // (v): t-weights, measured
        let weights = exec::try_map(self.mode, &basis, |e| ctx.tweight_of(&e.record.f))?;
        let mut spectra_checks = Vec::new();
        let mut seen = HashMap::new();
        for (e, w) in basis.iter().zip(&weights) {
            if let Some(prev) = seen.insert(w.clone(), e.v.clone()) {
                spectra_checks.push(Err(format!("f_{{λ_{prev}}} and f_{{λ_{}}} share the weight {w}", e.v)));
            } else {
                spectra_checks.push(Ok(()));
            }
        }
        let mut fingerprints: Vec<Vec<String>> = class_list
            .iter()
            .map(|(_, members)| {
                let mut fp: Vec<String> = members.iter().map(|&m| weights[m].to_string()).collect();
                fp.sort();
                fp
            })
            .collect();
        let total = fingerprints.len();
        fingerprints.sort();
        fingerprints.dedup();
        spectra_checks.push(if fingerprints.len() == total {
            Ok(())
        } else {
            Err("two classes share a weight multiset".into())
        });
        clauses.push(ClauseResult::from_checks("v_spectra_distinct", spectra_checks));

        // ΨΦ annihilation
        let psi_phi = exec::try_map(self.mode, &basis, |e| -> Result<std::result::Result<(), String>> {
            let image = raw_psi(&ctx, &raw_phi(&ctx, &e.record.f)?)?;
            let predicted = e.v.w().inverse().apply(0) == n - 1 && e.v.k()[n - 1] == r / p - 1;
            Ok(if image.is_zero() == predicted {
                Ok(())
            } else {
                Err(format!("Psi Phi f_{{λ_{}}} zero = {}, predicted {predicted}", e.v, image.is_zero()))
            })
        })?;
        clauses.push(ClauseResult::from_checks("psi_phi_scalar", psi_phi));

        let casimir = exec::try_map(self.mode, &basis, |e| -> Result<std::result::Result<(), String>> {
            let h = ctx.casimir_h(&e.record.f)?;
            Ok(if h.is_zero() { Ok(()) } else { Err(format!("h f_{} = {h}", e.record.mu)) })
        })?;
        clauses.push(ClauseResult::from_checks("casimir_kills_basis", casimir));

        let classes = class_list
            .iter()
            .zip(&connected)
            .map(|((key, members), &connected)| ClassReport {
                key: key.clone(),
                members: members.iter().map(|&m| basis[m].v.clone()).collect(),
                steinberg: members.iter().map(|&m| basis[m].record.mu.clone()).collect(),
                connected,
                fingerprint: members.iter().map(|&m| weights[m].clone()).collect(),
            })
            .collect();
        let passed = clauses.iter().all(|c| c.passed);
        Ok(DecompositionReport {
            group: GroupLabel { r, p, n },
            params: ctx.params().clone(),
            cardinality: basis.len(),
            expected_cardinality,
            hilbert: self.hilbert.clone(),
            steinberg_degree_counts: counts,
            quotient_dims,
            classes,
            clauses,
            passed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(r: u32, p: u32, n: usize) -> Coinvariants {
        Coinvariants::new(ParameterSet::generic(r, p).unwrap(), n, Execution::Sequential).unwrap()
    }

    #[test]
    fn generators_and_degrees() {
        let g = invariant_generators(1, 1, 2).unwrap();
        let k = CyclotomicField::new(1);
        assert_eq!(g[0], &Polynomial::var(2, &k, 0) + &Polynomial::var(2, &k, 1));
        assert_eq!(g[1], &Polynomial::var(2, &k, 0) * &Polynomial::var(2, &k, 1));
        assert_eq!(invariant_degrees(2, 1, 2).unwrap(), vec![2, 4]);
        assert_eq!(invariant_degrees(3, 3, 3).unwrap(), vec![3, 6, 3]);
        for (r, p, n) in [(2, 1, 2), (3, 3, 3), (4, 2, 3), (1, 1, 4)] {
            let prod: u64 = invariant_degrees(r, p, n).unwrap().iter().map(|&d| d as u64).product();
            let order = (r as u64).pow(n as u32) * (1..=n as u64).product::<u64>() / p as u64;
            assert_eq!(prod, order);
            invariant_generators(r, p, n).unwrap();
        }
        assert!(invariant_generators(4, 3, 2).is_err());
    }

    #[test]
    fn hilbert_examples() {
        assert_eq!(hilbert_series(2, 1, 2).unwrap(), vec![1, 2, 2, 2, 1]);
        assert_eq!(hilbert_series(2, 2, 2).unwrap(), vec![1, 2, 1]);
        assert_eq!(hilbert_series(3, 1, 2).unwrap().iter().sum::<u64>(), 18);
        assert_eq!(hilbert_series(1, 1, 3).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn flag_major_examples() {
        assert_eq!(flag_major_genfun(2, 1, 2).unwrap(), vec![1, 2, 2, 2, 1]);
        assert_eq!(flag_major_genfun(2, 2, 2).unwrap(), vec![1, 2, 1]);
        for n in 1..=5 {
            assert_eq!(flag_major_genfun(1, 1, n).unwrap(), crate::reflgroup::maj_generating_function(n));
        }
    }

    #[test]
    fn echelon_basics() {
        let k = CyclotomicField::new(3);
        let x = |i| Polynomial::var(2, &k, i);
        let mut e = Echelon::new();
        assert!(e.insert(&(&x(0) + &x(1))));
        assert!(!e.insert(&(&x(0) + &x(1)).scale(&k.zeta())));
        assert!(e.insert(&x(1)));
        assert_eq!(e.rank(), 2);
        assert!(e.reduce(&x(0)).is_zero());
        let f = &x(0) - &x(1).scale(&k.zeta());
        let nf = e.reduce(&f);
        assert_eq!(e.reduce(&nf), nf);
    }

    #[test]
    fn ideal_pieces() {
        let c = ring(1, 1, 2);
        assert_eq!(c.ideal_basis(0).rank(), 0);
        assert_eq!(c.ideal_basis(1).rank(), 1);
        assert_eq!(c.ideal_basis(1).quotient_dim(), 1);
        let k = c.context().field().clone();
        let f = Polynomial::var(2, &k, 0);
        assert_eq!(c.normal_form(&c.normal_form(&f)), c.normal_form(&f));
        for g in c.generators() {
            assert!(c.normal_form(g).is_zero());
            assert!(c.normal_form(&g.mul_var(1)).is_zero());
        }
    }

    #[test]
    fn descent_basis_small() {
        let c = ring(1, 1, 2);
        let b = c.descent_basis().unwrap();
        let leads: Vec<MultiIndex> = b.iter().map(|e| e.record.mu.clone()).collect();
        assert_eq!(leads, vec![MultiIndex::new(vec![0, 0]), MultiIndex::new(vec![0, 1])]);
        let c = ring(2, 1, 2);
        let mut degrees = vec![0u64; 5];
        for e in c.descent_basis().unwrap() {
            degrees[e.record.mu.degree() as usize] += 1;
        }
        assert_eq!(degrees, vec![1, 2, 2, 2, 1]);
        let top = c.ideal_basis(4);
        assert_eq!(top.quotient_dim(), 1);
    }

    #[test]
    fn stability_small() {
        let c = ring(1, 1, 2);
        assert!(c.ideal_stability_check(0).unwrap().passed);
        assert!(c.ideal_stability_check(1).unwrap().passed);
        let c = ring(2, 1, 2);
        let k = c.context().field().clone();
        let g = &Polynomial::x_pow(&k, &MultiIndex::new(vec![2, 0])) + &Polynomial::x_pow(&k, &MultiIndex::new(vec![0, 2]));
        for i in 0..2 {
            assert!(c.context().dunkl(i, &g).unwrap().is_zero());
        }
        for d in 0..=c.top_degree() {
            assert!(c.ideal_stability_check(d).unwrap().passed);
        }
    }

    #[test]
    fn decomposition_small_groups() {
        for (r, p, n) in [(1, 1, 2), (1, 1, 3), (2, 1, 2), (2, 2, 2)] {
            let report = ring(r, p, n).verify_decomposition().unwrap();
            for clause in &report.clauses {
                assert!(clause.passed, "({r},{p},{n}) {}: {:?}", clause.name, clause.counterexample);
            }
        }
        let report = ring(1, 1, 2).verify_decomposition().unwrap();
        assert_eq!(report.classes.len(), 2);
        let report = ring(2, 2, 2).verify_decomposition().unwrap();
        assert_eq!(report.cardinality, 4);
    }

    #[test]
    fn requires_kappa_zero() {
        let params = ParameterSet::generic(2, 1).unwrap().with_kappa(num_rational::BigRational::from_integer(1.into()));
        assert!(Coinvariants::new(params, 2, Execution::Sequential).is_err());
    }
}
