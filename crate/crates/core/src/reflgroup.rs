//! The groups G(r,p,n) as colored permutations, their reflections with root
//! data, and the descent combinatorics (Steinberg weights, colored descent
//! classes, connectivity of classes under simple transpositions).

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactfield::{CyclotomicField, CyclotomicNumber};
use crate::polyring::MultiIndex;

/// A permutation of `{0, …, n-1}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidInput(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    /// `w_0`, the longest element.
    pub fn longest(n: usize) -> Self {
        Permutation((0..n).rev().collect())
    }

    /// The simple transposition `s_i` exchanging `i` and `i+1`.
    pub fn simple(n: usize, i: usize) -> Self {
        Self::transposition(n, i, i + 1)
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut v: Vec<usize> = (0..n).collect();
        v.swap(i, j);
        Permutation(v)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&j| self.0[j]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.n()];
        for (i, &wi) in self.0.iter().enumerate() {
            inv[wi] = i;
        }
        Permutation(inv)
    }

    /// Coxeter length (number of inversions).
    pub fn length(&self) -> usize {
        let mut count = 0;
        for i in 0..self.n() {
            for j in i + 1..self.n() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// 0-based positions `i` with `w(i) > w(i+1)`.
    pub fn descents(&self) -> Vec<usize> {
        (0..self.n().saturating_sub(1)).filter(|&i| self.0[i] > self.0[i + 1]).collect()
    }

    /// Major index: sum of the 1-based descent positions.
    pub fn maj(&self) -> usize {
        self.descents().iter().map(|i| i + 1).sum()
    }

    /// Bruhat order `self ≤ other`, by the tableau criterion on sorted prefixes.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        assert_eq!(self.n(), other.n());
        for k in 1..self.n() {
            let mut a = self.0[..k].to_vec();
            let mut b = other.0[..k].to_vec();
            a.sort_unstable();
            b.sort_unstable();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return false;
            }
        }
        true
    }

    /// All permutations of `{0, …, n-1}`, in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (0..n).collect();
        loop {
            out.push(Permutation(current.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
                break;
            };
            let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
            current.swap(i, j);
            current[i + 1..].reverse();
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// `(length, maj)` of a permutation.
pub fn word_stats(w: &Permutation) -> (usize, usize) {
    (w.length(), w.maj())
}

/// Coefficients of `Σ_{w ∈ S_n} t^{l(w)}`.
pub fn length_generating_function(n: usize) -> Vec<u64> {
    stat_generating_function(n, |w| w.length())
}

/// Coefficients of `Σ_{w ∈ S_n} t^{maj(w)}`.
pub fn maj_generating_function(n: usize) -> Vec<u64> {
    stat_generating_function(n, |w| w.maj())
}

fn stat_generating_function(n: usize, stat: impl Fn(&Permutation) -> usize) -> Vec<u64> {
    let mut out = vec![0u64; n * n.saturating_sub(1) / 2 + 1];
    for w in Permutation::all(n) {
        out[stat(&w)] += 1;
    }
    out
}

/// Element `v = w ζ_1^{k_1} ⋯ ζ_n^{k_n}` of G(r,1,n), acting on `𝔥 = C^n` by
/// `v y_j = ζ^{k_j} y_{w(j)}`.
///
/// Window notation: `[ζ^{k_1} w(1), …, ζ^{k_n} w(n)]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ColoredPermutation {
    r: u32,
    w: Permutation,
    k: Vec<u32>,
}

impl ColoredPermutation {
    pub fn new(r: u32, w: Permutation, k: Vec<u32>) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("r must be positive".into()));
        }
        if k.len() != w.n() {
            return Err(Error::InvalidInput("color vector length differs from n".into()));
        }
        let k = k.into_iter().map(|c| c % r).collect();
        Ok(ColoredPermutation { r, w, k })
    }

    pub fn identity(n: usize, r: u32) -> Self {
        ColoredPermutation { r, w: Permutation::identity(n), k: vec![0; n] }
    }

    /// The simple transposition `s_i` (0-based, swaps `i` and `i+1`).
    pub fn simple(n: usize, r: u32, i: usize) -> Self {
        ColoredPermutation { r, w: Permutation::simple(n, i), k: vec![0; n] }
    }

    /// The transposition matrix `s_{ij}`.
    pub fn transposition(n: usize, r: u32, i: usize, j: usize) -> Self {
        ColoredPermutation { r, w: Permutation::transposition(n, i, j), k: vec![0; n] }
    }

    /// The diagonal matrix `ζ_i^power`.
    pub fn zeta(n: usize, r: u32, i: usize, power: i64) -> Self {
        let mut k = vec![0; n];
        k[i] = power.rem_euclid(r as i64) as u32;
        ColoredPermutation { r, w: Permutation::identity(n), k }
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn w(&self) -> &Permutation {
        &self.w
    }

    pub fn k(&self) -> &[u32] {
        &self.k
    }

    /// Membership in G(r,p,n): `Σ k_i ≡ 0 (mod p)`.
    pub fn in_group(&self, p: u32) -> bool {
        self.k.iter().map(|&c| c as u64).sum::<u64>() % p as u64 == 0
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &ColoredPermutation) -> Result<ColoredPermutation> {
        if self.n() != other.n() || self.r != other.r {
            return Err(Error::IncompatibleGroup { n1: self.n(), r1: self.r, n2: other.n(), r2: other.r });
        }
        Ok(self.mul(other))
    }

    fn mul(&self, other: &ColoredPermutation) -> ColoredPermutation {
        let w = self.w.compose(&other.w);
        let k = (0..self.n()).map(|j| (other.k[j] + self.k[other.w.apply(j)]) % self.r).collect();
        ColoredPermutation { r: self.r, w, k }
    }

    pub fn inverse(&self) -> ColoredPermutation {
        let w = self.w.inverse();
        let mut k = vec![0; self.n()];
        for j in 0..self.n() {
            k[self.w.apply(j)] = (self.r - self.k[j]) % self.r;
        }
        ColoredPermutation { r: self.r, w, k }
    }

    /// `s_i v` (left multiplication by a simple transposition); colors are unchanged.
    pub fn left_simple(&self, i: usize) -> ColoredPermutation {
        ColoredPermutation { r: self.r, w: Permutation::simple(self.n(), i).compose(&self.w), k: self.k.clone() }
    }

    pub fn is_identity(&self) -> bool {
        self.w == Permutation::identity(self.n()) && self.k.iter().all(|&c| c == 0)
    }

    /// Entry `(row, col)` of the monomial matrix.
    pub fn matrix_entry(&self, field: &CyclotomicField, row: usize, col: usize) -> CyclotomicNumber {
        if self.w.apply(col) == row {
            field.zeta_pow(self.k[col] as i64)
        } else {
            field.zero()
        }
    }
}

impl fmt::Display for ColoredPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..self.n())
            .map(|j| {
                let img = self.w.apply(j) + 1;
                match self.k[j] {
                    0 => format!("{img}"),
                    c => format!("z^{c} {img}"),
                }
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct ColoredWire {
    w: Vec<usize>,
    k: Vec<u32>,
    r: u32,
}

impl Serialize for ColoredPermutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoredWire { w: self.w.0.iter().map(|i| i + 1).collect(), k: self.k.clone(), r: self.r }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ColoredPermutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = ColoredWire::deserialize(d)?;
        if wire.w.contains(&0) {
            return Err(D::Error::custom("w images are 1-based"));
        }
        let w = Permutation::from_images(wire.w.iter().map(|i| i - 1).collect()).map_err(D::Error::custom)?;
        if wire.k.iter().any(|&c| c >= wire.r) {
            return Err(D::Error::custom("colors must lie in [0, r)"));
        }
        ColoredPermutation::new(wire.r, w, wire.k).map_err(D::Error::custom)
    }
}

/// Checked composition / inversion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Compose,
    Inverse,
}

pub fn group_ops(u: &ColoredPermutation, v: &ColoredPermutation, op: GroupOp) -> Result<ColoredPermutation> {
    match op {
        GroupOp::Compose => u.compose(v),
        GroupOp::Inverse => Ok(u.inverse()),
    }
}

pub(crate) fn validate_group(r: u32, p: u32, n: usize) -> Result<()> {
    let reason = if r == 0 || p == 0 {
        Some("r and p must be positive")
    } else if !r.is_multiple_of(p) {
        Some("p must divide r")
    } else if n == 0 {
        Some("n must be positive")
    } else {
        None
    };
    match reason {
        Some(reason) => Err(Error::InvalidGroup { r, p, n, reason: reason.into() }),
        None => Ok(()),
    }
}

/// All of G(r,1,n), ordered by (w, k).
pub fn enumerate_group(r: u32, n: usize) -> Vec<ColoredPermutation> {
    let mut out = Vec::new();
    for w in Permutation::all(n) {
        for code in 0..(r as u64).pow(n as u32) {
            let mut k = vec![0; n];
            let mut c = code;
            for slot in k.iter_mut().rev() {
                *slot = (c % r as u64) as u32;
                c /= r as u64;
            }
            out.push(ColoredPermutation { r, w: w.clone(), k });
        }
    }
    out
}

/// The elements of G(r,p,n) itself.
pub fn enumerate_subgroup(r: u32, p: u32, n: usize) -> Result<Vec<ColoredPermutation>> {
    validate_group(r, p, n)?;
    Ok(enumerate_group(r, n).into_iter().filter(|v| v.in_group(p)).collect())
}

/// `G(r,1,n)_p`: elements of G(r,1,n) with `0 ≤ k_n ≤ r/p - 1`.
pub fn enumerate_gr1np(r: u32, p: u32, n: usize) -> Result<Vec<ColoredPermutation>> {
    validate_group(r, p, n)?;
    let bound = r / p;
    Ok(enumerate_group(r, n).into_iter().filter(|v| v.k[n - 1] < bound).collect())
}

/// Conjugacy-class label of a reflection.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum ReflectionClass {
    /// `ζ_i^l s_{ij} ζ_i^{-l}` with `i < j`.
    OrderTwo { i: usize, j: usize, l: u32 },
    /// `ζ_i^power` with `power = p·l`.
    Diagonal { i: usize, power: u32 },
}

/// A reflection `s` with root `α_s ∈ 𝔥*` and coroot `α_s^∨ ∈ 𝔥`, normalized so
/// that `s·x = x - ⟨x, α_s^∨⟩ α_s` on `𝔥*`.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub element: ColoredPermutation,
    pub class: ReflectionClass,
    /// Coefficients of `α_s` on `x_0, …, x_{n-1}`; entry `i` is `⟨α_s, y_i⟩`.
    pub root: Vec<CyclotomicNumber>,
    /// Coordinates of `α_s^∨` on `y_0, …, y_{n-1}`; entry `j` is `⟨x_j, α_s^∨⟩`.
    pub coroot: Vec<CyclotomicNumber>,
}

impl Reflection {
    /// Power `m` of the diagonal class (parameter `c_m`), or `None` for order two (`c_0`).
    pub fn diagonal_power(&self) -> Option<u32> {
        match self.class {
            ReflectionClass::Diagonal { power, .. } => Some(power),
            ReflectionClass::OrderTwo { .. } => None,
        }
    }
}

/// All reflections of G(r,p,n): `r·n(n-1)/2` of order two and `n(r/p - 1)` diagonal.
pub fn enumerate_reflections(r: u32, p: u32, n: usize) -> Result<Vec<Reflection>> {
    validate_group(r, p, n)?;
    let field = CyclotomicField::new(r);
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for l in 0..r {
                let zl = ColoredPermutation::zeta(n, r, i, l as i64);
                let zl_inv = ColoredPermutation::zeta(n, r, i, -(l as i64));
                let element = zl.mul(&ColoredPermutation::transposition(n, r, i, j)).mul(&zl_inv);
                // s·x_i = ζ^l x_j, s·x_j = ζ^{-l} x_i: α = x_i - ζ^l x_j, α^∨ = y_i - ζ^{-l} y_j
                let mut root = vec![field.zero(); n];
                root[i] = field.one();
                root[j] = -&field.zeta_pow(l as i64);
                let mut coroot = vec![field.zero(); n];
                coroot[i] = field.one();
                coroot[j] = -&field.zeta_pow(-(l as i64));
                out.push(Reflection { element, class: ReflectionClass::OrderTwo { i, j, l }, root, coroot });
            }
        }
    }
    for i in 0..n {
        for l in 1..r / p {
            let power = l * p;
            let element = ColoredPermutation::zeta(n, r, i, power as i64);
            // s·x_i = ζ^{-m} x_i: α = x_i, α^∨ = (1 - ζ^{-m}) y_i
            let mut root = vec![field.zero(); n];
            root[i] = field.one();
            let mut coroot = vec![field.zero(); n];
            coroot[i] = &field.one() - &field.zeta_pow(-(power as i64));
            out.push(Reflection { element, class: ReflectionClass::Diagonal { i, power }, root, coroot });
        }
    }
    Ok(out)
}

/// Colored descent class `des(v) = (descent set, color vector)`.
///
/// Descent positions are 0-based here (`i` compares positions `i` and `i+1`);
/// JSON output reports them 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct DescentClassKey {
    pub descents: Vec<usize>,
    pub colors: Vec<u32>,
}

impl Serialize for DescentClassKey {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            descents: Vec<usize>,
            colors: &'a [u32],
        }
        Wire { descents: self.descents.iter().map(|i| i + 1).collect(), colors: &self.colors }.serialize(s)
    }
}

impl fmt::Display for DescentClassKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: Vec<String> = self.descents.iter().map(|i| (i + 1).to_string()).collect();
        let c: Vec<String> = self.colors.iter().map(|c| c.to_string()).collect();
        write!(f, "({{{}}}, ({}))", d.join(","), c.join(","))
    }
}

/// Descent set, colors and Steinberg weight of a colored permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DescentData {
    pub v: ColoredPermutation,
    pub class: DescentClassKey,
    /// `λ_v`, the exponent of the colored descent monomial.
    pub steinberg: MultiIndex,
}

/// 0-based descent positions: `k_i < k_{i+1}`, or equal colors and `w(i) > w(i+1)`.
pub fn descent_set(v: &ColoredPermutation) -> Vec<usize> {
    let (w, k) = (&v.w, &v.k);
    (0..v.n().saturating_sub(1))
        .filter(|&i| k[i] < k[i + 1] || (k[i] == k[i + 1] && w.apply(i) > w.apply(i + 1)))
        .collect()
}

pub fn descent_class(v: &ColoredPermutation) -> DescentClassKey {
    DescentClassKey { descents: descent_set(v), colors: v.k.clone() }
}

/// `λ_v` with `d_i(v) = r·|{descents j ≥ w^{-1}(i)}| + k_{w^{-1}(i)}`.
pub fn steinberg_weight(v: &ColoredPermutation) -> MultiIndex {
    let descents = descent_set(v);
    let winv = v.w.inverse();
    let entries = (0..v.n())
        .map(|i| {
            let pos = winv.apply(i);
            let after = descents.iter().filter(|&&j| j >= pos).count() as u32;
            v.r * after + v.k[pos]
        })
        .collect();
    MultiIndex::new(entries)
}

pub fn descent_data(v: &ColoredPermutation) -> DescentData {
    DescentData { v: v.clone(), class: descent_class(v), steinberg: steinberg_weight(v) }
}

/// Partition of G(r,1,n)_p by colored descent class, keyed by `des(v)`.
pub fn descent_classes(r: u32, p: u32, n: usize) -> Result<BTreeMap<DescentClassKey, Vec<ColoredPermutation>>> {
    let mut classes: BTreeMap<DescentClassKey, Vec<ColoredPermutation>> = BTreeMap::new();
    for v in enumerate_gr1np(r, p, n)? {
        classes.entry(descent_class(&v)).or_default().push(v);
    }
    Ok(classes)
}

/// Breadth-first search from `v` over left multiplications by simple
/// transpositions that stay in the descent class. Returns each reached element
/// with the word (first letter applied first) reaching it.
pub fn class_component(v: &ColoredPermutation) -> Vec<(ColoredPermutation, Vec<usize>)> {
    let key = descent_class(v);
    let mut words: HashMap<ColoredPermutation, Vec<usize>> = HashMap::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    words.insert(v.clone(), Vec::new());
    order.push(v.clone());
    queue.push_back(v.clone());
    while let Some(u) = queue.pop_front() {
        for i in 0..u.n().saturating_sub(1) {
            let next = u.left_simple(i);
            if words.contains_key(&next) || descent_class(&next) != key {
                continue;
            }
            let mut word = words[&u].clone();
            word.push(i);
            words.insert(next.clone(), word);
            order.push(next.clone());
            queue.push_back(next);
        }
    }
    order
        .into_iter()
        .map(|u| {
            let w = words.remove(&u).unwrap();
            (u, w)
        })
        .collect()
}

/// Simple transpositions `s_{i_1}, …, s_{i_q}` (0-based indices) with
/// `v2 = s_{i_q} ⋯ s_{i_1} v`, every intermediate product in the class of `v`.
pub fn chains_witness(v: &ColoredPermutation, v2: &ColoredPermutation) -> Result<Vec<usize>> {
    if v.n() != v2.n() || v.r() != v2.r() {
        return Err(Error::IncompatibleGroup { n1: v.n(), r1: v.r(), n2: v2.n(), r2: v2.r() });
    }
    if descent_class(v) != descent_class(v2) {
        return Err(Error::InvalidInput(format!("{v} and {v2} lie in different descent classes")));
    }
    class_component(v)
        .into_iter()
        .find(|(u, _)| u == v2)
        .map(|(_, word)| word)
        .ok_or_else(|| Error::NotConnected { from: v.to_string(), to: v2.to_string() })
}

/// The minimal-length element of `v`'s class, built directly: positions are
/// grouped into chains linked by descents with equal colors, each chain takes
/// a block of consecutive values in decreasing order, and blocks increase from
/// left to right.
pub fn canonical_representative(v: &ColoredPermutation) -> ColoredPermutation {
    let n = v.n();
    let descents = descent_set(v);
    let linked = |i: usize| descents.contains(&i) && v.k[i] == v.k[i + 1];
    let mut w = vec![0usize; n];
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && linked(end) {
            end += 1;
        }
        for (offset, pos) in (start..=end).enumerate() {
            w[pos] = end - offset;
        }
        start = end + 1;
    }
    ColoredPermutation { r: v.r, w: Permutation(w), k: v.k.clone() }
}
