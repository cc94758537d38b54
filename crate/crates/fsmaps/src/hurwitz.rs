//! Symmetric-group computations: characters, content functions, monotone
//! double Hurwitz numbers, Weingarten functions, and the transition between
//! ordinary moments `⟨p_μ(M)⟩` and fully simple moments `⟨P_λ(M)⟩` of
//! unitarily invariant matrix models.
//!
//! Double Hurwitz numbers for a symmetric function `r` are
//! `R_{μ,λ} = (1/(|Aut λ||Aut μ|)) Σ_ν χ_ν(C_μ) r(cont ν) χ_ν(C_λ)`, with
//! `r = e_k` (strictly monotone, `E_k`), `r = h_k` (weakly monotone, `H_k`)
//! or `r = p_1^k` (unconstrained transposition paths).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exact::{factorial, rat_to_string, Rat};
use crate::oracle;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum HurwitzError {
    #[error("partition size {size} exceeds the cap {cap}")]
    Cap { size: u32, cap: u32 },
    #[error("partitions of different sizes: {0} and {1}")]
    SizeMismatch(u32, u32),
    #[error("N = {0} is a pole of the Weingarten function (N + content = 0)")]
    Pole(String),
    #[error("outside the enumeration guard: {0}")]
    Guard(String),
    #[error("invalid partition: {0}")]
    Invalid(String),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
}

/// Default size cap for character tables.
pub const CHAR_CAP: u32 = 10;

/// A partition with weakly decreasing positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, HurwitzError> {
        if parts.contains(&0) {
            return Err(HurwitzError::Invalid("parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }
    /// Parses a comma-separated list of parts.
    pub fn parse(s: &str) -> Result<Self, HurwitzError> {
        let parts: Result<Vec<u32>, _> = s
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse())
            .collect();
        Partition::new(parts.map_err(|e| HurwitzError::Invalid(format!("{s}: {e}")))?)
    }
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    /// `|Aut λ| = Π_i i^{m_i} m_i!`.
    pub fn aut(&self) -> BigInt {
        let mut mult: BTreeMap<u32, u64> = BTreeMap::new();
        for &p in &self.0 {
            *mult.entry(p).or_default() += 1;
        }
        mult.iter().fold(BigInt::one(), |acc, (&p, &m)| {
            acc * BigInt::from(p).pow(m as u32) * factorial(m)
        })
    }
    /// `|C_λ| = L!/|Aut λ|`.
    pub fn class_size(&self) -> BigInt {
        factorial(self.size() as u64) / self.aut()
    }
    /// Contents `j − i` of the cells of the Young diagram.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = vec![];
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as i64 {
                out.push(j - i as i64);
            }
        }
        out
    }
    /// Hook lengths of all cells.
    pub fn hooks(&self) -> Vec<u64> {
        let mut out = vec![];
        for (i, &row) in self.0.iter().enumerate() {
            for j in 0..row as usize {
                let arm = row as usize - j - 1;
                let leg = self.0[i + 1..].iter().filter(|&&r| r as usize > j).count();
                out.push((arm + leg + 1) as u64);
            }
        }
        out
    }
    /// Hook-length dimension `L!/Π hooks`.
    pub fn dimension(&self) -> BigInt {
        let prod = self.hooks().iter().fold(BigInt::one(), |a, &h| a * BigInt::from(h));
        factorial(self.size() as u64) / prod
    }
    /// Cycle type `(2,…,2)` of size `2m`.
    pub fn twos(m: usize) -> Self {
        Partition(vec![2; m])
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = vec![];
    rec(n, n, &mut vec![], &mut out);
    out
}

/// Character `χ_λ(C_μ)` by the Murnaghan–Nakayama rule on beta-sets.
fn mn_char(beta: &mut [i64], mu: &[u32], memo: &mut HashMap<(Vec<i64>, Vec<u32>), i64>) -> i64 {
    if mu.is_empty() {
        return 1;
    }
    let key = (beta.to_vec(), mu.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = mu[0] as i64;
    let mut total = 0;
    for idx in 0..beta.len() {
        let b = beta[idx];
        let nb = b - r;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > nb && x < b).count();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        beta[idx] = nb;
        let mut sorted = beta.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let v = mn_char(&mut sorted, &mu[1..], memo);
        beta[idx] = b;
        total += sign * v;
    }
    memo.insert(key, total);
    total
}

/// The character table of `S_L`.
#[derive(Clone, Debug)]
pub struct CharTable {
    pub size: u32,
    pub partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    /// `values[λ][μ] = χ_λ(C_μ)`.
    pub values: Vec<Vec<i64>>,
}

impl CharTable {
    pub fn new(size: u32, cap: u32) -> Result<Self, HurwitzError> {
        if size > cap {
            return Err(HurwitzError::Cap { size, cap });
        }
        let parts = partitions(size);
        let index: HashMap<Partition, usize> = parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let values = parts
            .par_iter()
            .map(|lam| {
                let l = lam.len();
                let beta: Vec<i64> = lam
                    .0
                    .iter()
                    .enumerate()
                    .map(|(i, &p)| p as i64 + (l - 1 - i) as i64)
                    .collect();
                let mut memo = HashMap::new();
                parts
                    .iter()
                    .map(|mu| mn_char(&mut beta.clone(), &mu.0, &mut memo))
                    .collect()
            })
            .collect();
        Ok(CharTable {
            size,
            partitions: parts,
            index,
            values,
        })
    }
    pub fn chi(&self, lam: &Partition, mu: &Partition) -> i64 {
        self.values[self.index[lam]][self.index[mu]]
    }
    /// Row orthogonality `Σ_μ |C_μ| χ_λ χ_λ' = L! δ` and column orthogonality
    /// `Σ_λ χ_λ(C_μ) χ_λ(C_ν) = |Aut μ| δ`.
    pub fn check_orthogonality(&self) -> bool {
        let lf = factorial(self.size as u64);
        let n = self.partitions.len();
        for a in 0..n {
            for b in 0..n {
                let row: BigInt = (0..n)
                    .map(|m| self.partitions[m].class_size() * BigInt::from(self.values[a][m] * self.values[b][m]))
                    .sum();
                let want = if a == b { lf.clone() } else { BigInt::zero() };
                if row != want {
                    return false;
                }
                let col: i64 = (0..n).map(|l| self.values[l][a] * self.values[l][b]).sum();
                let want = if a == b {
                    self.partitions[a].aut()
                } else {
                    BigInt::zero()
                };
                if BigInt::from(col) != want {
                    return false;
                }
            }
        }
        // dimensions
        let id = Partition(vec![1; self.size as usize]);
        self.partitions
            .iter()
            .all(|lam| BigInt::from(self.chi(lam, &id)) == lam.dimension())
    }
}

fn table_cache() -> &'static Mutex<HashMap<u32, Arc<CharTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CharTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared character table of `S_L` (default cap).
pub fn char_table(size: u32) -> Result<Arc<CharTable>, HurwitzError> {
    if let Some(t) = table_cache().lock().unwrap().get(&size) {
        return Ok(t.clone());
    }
    let t = Arc::new(CharTable::new(size, CHAR_CAP)?);
    table_cache().lock().unwrap().insert(size, t.clone());
    Ok(t)
}

/// Symmetric functions evaluated on contents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ContentKind {
    /// Elementary symmetric `e_k`.
    E,
    /// Complete homogeneous `h_k`.
    H,
    /// Power sum `p_k`.
    P,
}

/// `e_k`, `h_k` or `p_k` of the content multiset of `ν`.
pub fn content_eval(kind: ContentKind, k: u32, nu: &Partition) -> BigInt {
    let cs = nu.contents();
    let k = k as usize;
    match kind {
        ContentKind::P => cs.iter().map(|&c| BigInt::from(c).pow(k as u32)).sum(),
        ContentKind::E => {
            let mut e = vec![BigInt::zero(); k + 1];
            e[0] = BigInt::one();
            for &c in &cs {
                for j in (1..=k).rev() {
                    let add = &e[j - 1] * c;
                    e[j] += add;
                }
            }
            e[k].clone()
        }
        ContentKind::H => {
            let mut h = vec![BigInt::zero(); k + 1];
            h[0] = BigInt::one();
            for &c in &cs {
                for j in 1..=k {
                    let add = &h[j - 1] * c;
                    h[j] += add;
                }
            }
            h[k].clone()
        }
    }
}

/// Families of double Hurwitz numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum HurwitzKind {
    /// Strictly monotone paths, `r = e_k`.
    Strict,
    /// Weakly monotone paths, `r = h_k`.
    Weak,
    /// Unconstrained paths, `r = p_1^k`.
    Simple,
}

fn content_fn(kind: HurwitzKind, k: u32, nu: &Partition) -> BigInt {
    match kind {
        HurwitzKind::Strict => content_eval(ContentKind::E, k, nu),
        HurwitzKind::Weak => content_eval(ContentKind::H, k, nu),
        HurwitzKind::Simple => content_eval(ContentKind::P, 1, nu).pow(k),
    }
}

/// `R_{μ,λ}` from the character formula.
pub fn hurwitz_number(kind: HurwitzKind, k: u32, mu: &Partition, lam: &Partition) -> Result<Rat, HurwitzError> {
    if mu.size() != lam.size() {
        return Err(HurwitzError::SizeMismatch(mu.size(), lam.size()));
    }
    let ct = char_table(mu.size())?;
    let mut acc = BigInt::zero();
    for nu in &ct.partitions {
        let r = content_fn(kind, k, nu);
        if r.is_zero() {
            continue;
        }
        acc += BigInt::from(ct.chi(nu, mu)) * r * BigInt::from(ct.chi(nu, lam));
    }
    Ok(Rat::new(acc, lam.aut() * mu.aut()))
}

type Perm = Vec<usize>;

fn cycle_type(p: &Perm) -> Partition {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut parts = vec![];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition(parts)
}

/// A fixed permutation of cycle type `λ` (consecutive cycles).
pub fn representative(lam: &Partition) -> Perm {
    let mut p = vec![];
    let mut start = 0;
    for &len in &lam.0 {
        let len = len as usize;
        for j in 0..len {
            p.push(start + (j + 1) % len);
        }
        start += len;
    }
    p
}

struct CayleySearch<'a> {
    kind: HurwitzKind,
    transpositions: Vec<(usize, usize)>,
    rho: Perm,
    mu: &'a Partition,
    count: u64,
}

impl CayleySearch<'_> {
    fn run(&mut self, left: u32, last_max: Option<usize>, prod: &Perm) {
        if left == 0 {
            // σ = prod^{-1} ∘ ρ
            let mut inv = vec![0; prod.len()];
            for (i, &j) in prod.iter().enumerate() {
                inv[j] = i;
            }
            let sigma: Perm = self.rho.iter().map(|&x| inv[x]).collect();
            if &cycle_type(&sigma) == self.mu {
                self.count += 1;
            }
            return;
        }
        for idx in 0..self.transpositions.len() {
            let (a, b) = self.transpositions[idx];
            let ok = match (self.kind, last_max) {
                (_, None) | (HurwitzKind::Simple, _) => true,
                (HurwitzKind::Strict, Some(m)) => b > m,
                (HurwitzKind::Weak, Some(m)) => b >= m,
            };
            if !ok {
                continue;
            }
            // prod ∘ τ
            let mut next = prod.clone();
            next.swap(a, b);
            self.run(left - 1, Some(b), &next);
        }
    }
}

/// Counts transposition paths directly: sequences `(τ_1, …, τ_k, σ)` with
/// `σ ∈ C_μ` and `τ_1∘…∘τ_k∘σ = ρ` for a fixed `ρ ∈ C_λ`, with the monotonicity
/// constraint of `kind` on the larger elements of the `τ_i`; divided by `|Aut λ|`.
pub fn cayley_oracle(kind: HurwitzKind, k: u32, mu: &Partition, lam: &Partition) -> Result<Rat, HurwitzError> {
    if mu.size() != lam.size() {
        return Err(HurwitzError::SizeMismatch(mu.size(), lam.size()));
    }
    let n = mu.size() as usize;
    if n > 6 || k > 5 {
        return Err(HurwitzError::Guard(format!("size {n} > 6 or k = {k} > 5")));
    }
    let mut search = CayleySearch {
        kind,
        transpositions: (1..n).flat_map(|b| (0..b).map(move |a| (a, b))).collect(),
        rho: representative(lam),
        mu,
        count: 0,
    };
    search.run(k, None, &(0..n).collect());
    let count = search.count;
    Ok(Rat::new(BigInt::from(count), lam.aut()))
}

/// Schur polynomial at the identity, `s_λ(1_N) = Π (N + c)/hook`.
pub fn schur_at_identity(lam: &Partition, n: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (c, h) in lam.contents().iter().zip(lam.hooks()) {
        acc = acc * (n + Rat::from_integer(BigInt::from(*c))) / Rat::from_integer(BigInt::from(h));
    }
    acc
}

fn check_pole(size: u32, n: &Rat) -> Result<(), HurwitzError> {
    for c in -(size as i64 - 1)..=(size as i64 - 1) {
        if (n + Rat::from_integer(BigInt::from(c))).is_zero() {
            return Err(HurwitzError::Pole(rat_to_string(n)));
        }
    }
    Ok(())
}

/// Weingarten function `G_{N,L}(β) = (1/L!²) Σ_λ χ_λ(id)² χ_λ(β)/s_λ(1_N)`.
pub fn weingarten(size: u32, beta: &Partition, n: &Rat) -> Result<Rat, HurwitzError> {
    if beta.size() != size {
        return Err(HurwitzError::SizeMismatch(size, beta.size()));
    }
    check_pole(size, n)?;
    let ct = char_table(size)?;
    let id = Partition(vec![1; size as usize]);
    let mut acc = Rat::zero();
    for lam in &ct.partitions {
        let d = Rat::from_integer(BigInt::from(ct.chi(lam, &id)));
        let x = Rat::from_integer(BigInt::from(ct.chi(lam, beta)));
        acc += &d * &d * x / schur_at_identity(lam, n);
    }
    let lf = Rat::from_integer(factorial(size as u64));
    Ok(acc / (&lf * &lf))
}

/// `G̃_{N,L}(C_μ, β) = (1/L!²) Σ_λ |C_μ| χ_λ(C_μ) χ_λ(β) χ_λ(id)/s_λ(1_N)`.
pub fn weingarten_class(mu: &Partition, beta: &Partition, n: &Rat) -> Result<Rat, HurwitzError> {
    let size = mu.size();
    check_pole(size, n)?;
    let ct = char_table(size)?;
    let id = Partition(vec![1; size as usize]);
    let mut acc = Rat::zero();
    for lam in &ct.partitions {
        let v = BigInt::from(ct.chi(lam, mu) * ct.chi(lam, beta) * ct.chi(lam, &id));
        acc += Rat::from_integer(v) / schur_at_identity(lam, n);
    }
    let lf = Rat::from_integer(factorial(size as u64));
    Ok(acc * Rat::from_integer(mu.class_size()) / (&lf * &lf))
}

/// Truncated Laurent series in `N`: coefficients of `N^e` for `e ≥ min_power`
/// are exact, lower powers are unknown.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NLaurent {
    #[serde(serialize_with = "ser_powers")]
    pub coeffs: BTreeMap<i64, Rat>,
    pub min_power: i64,
}

fn ser_powers<S: serde::Serializer>(m: &BTreeMap<i64, Rat>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for (e, c) in m {
        map.serialize_entry(&e.to_string(), &rat_to_string(c))?;
    }
    map.end()
}

impl NLaurent {
    pub fn zero(min_power: i64) -> Self {
        NLaurent {
            coeffs: BTreeMap::new(),
            min_power,
        }
    }
    pub fn monomial(c: Rat, e: i64, min_power: i64) -> Self {
        let mut s = NLaurent::zero(min_power);
        s.add_term(e, c);
        s
    }
    fn add_term(&mut self, e: i64, c: Rat) {
        if e < self.min_power || c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }
    pub fn coeff(&self, e: i64) -> Rat {
        self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero)
    }
    pub fn top(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
    pub fn add(&self, o: &NLaurent) -> NLaurent {
        let mut out = NLaurent::zero(self.min_power.max(o.min_power));
        for (e, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            out.add_term(*e, c.clone());
        }
        out
    }
    pub fn scale(&self, r: &Rat) -> NLaurent {
        let mut out = NLaurent::zero(self.min_power);
        for (e, c) in &self.coeffs {
            out.add_term(*e, c * r);
        }
        out
    }
    /// Multiplication by `N^k`.
    pub fn shift(&self, k: i64) -> NLaurent {
        NLaurent {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
            min_power: self.min_power + k,
        }
    }
    pub fn mul(&self, o: &NLaurent) -> NLaurent {
        let ta = self.top().unwrap_or(self.min_power);
        let tb = o.top().unwrap_or(o.min_power);
        let mut out = NLaurent::zero((self.min_power + tb).max(o.min_power + ta));
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &o.coeffs {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
    pub fn truncate(&self, min_power: i64) -> NLaurent {
        let mp = self.min_power.max(min_power);
        NLaurent {
            coeffs: self.coeffs.range(mp..).map(|(e, c)| (*e, c.clone())).collect(),
            min_power: mp,
        }
    }
    /// Agreement on the powers known in both.
    pub fn agrees(&self, o: &NLaurent) -> bool {
        let mp = self.min_power.max(o.min_power);
        self.truncate(mp).coeffs == o.truncate(mp).coeffs
    }
}

impl fmt::Display for NLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(e, c)| format!("{}*N^{e}", rat_to_string(c)))
            .collect();
        write!(
            f,
            "{} + O(N^{})",
            if terms.is_empty() {
                "0".into()
            } else {
                terms.join(" + ")
            },
            self.min_power - 1
        )
    }
}

/// Moments indexed by partitions of a fixed size.
pub type MomentVector = BTreeMap<Partition, NLaurent>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `⟨P_λ⟩/|Aut λ| = Σ_μ N^{−|μ|} Σ_k (−N)^{−k} [H_k]_{λ,μ} ⟨p_μ⟩`.
    FsFromOrdinary,
    /// `⟨p_μ⟩/|Aut μ| = Σ_λ N^{|λ|} Σ_k N^{−k} [E_k]_{μ,λ} ⟨P_λ⟩`.
    OrdinaryFromFs,
}

/// Applies the transition matrix to a complete moment vector of size `L`.
/// Output coefficients are exact for powers `≥ cutoff`.
pub fn transition(
    dir: Direction,
    moments: &MomentVector,
    size: u32,
    cutoff: i64,
) -> Result<MomentVector, HurwitzError> {
    let parts = partitions(size);
    for p in &parts {
        if !moments.contains_key(p) {
            return Err(HurwitzError::Invalid(format!("missing moment for {p}")));
        }
    }
    let l = size as i64;
    let top = moments.values().filter_map(|m| m.top()).max().unwrap_or(cutoff);
    let mut out = MomentVector::new();
    for a in &parts {
        let mut acc = NLaurent::zero(cutoff);
        for b in &parts {
            let m = &moments[b];
            match dir {
                Direction::FsFromOrdinary => {
                    // output power = power − L − k ≥ cutoff
                    let kmax = (top - l - cutoff).max(-1);
                    for k in 0..=kmax {
                        let hk = hurwitz_number(HurwitzKind::Weak, k as u32, a, b)?;
                        if hk.is_zero() {
                            continue;
                        }
                        let sign = if k % 2 == 0 { Rat::one() } else { -Rat::one() };
                        acc = acc.add(&m.shift(-l - k).scale(&(hk * sign)));
                    }
                }
                Direction::OrdinaryFromFs => {
                    for k in 0..l {
                        let ek = hurwitz_number(HurwitzKind::Strict, k as u32, a, b)?;
                        if ek.is_zero() {
                            continue;
                        }
                        acc = acc.add(&m.shift(l - k).scale(&ek));
                    }
                }
            }
        }
        let acc = acc.scale(&Rat::from_integer(a.aut()));
        // unknown input powers below min_power propagate
        let known = match dir {
            Direction::FsFromOrdinary => moments.values().map(|m| m.min_power).max().unwrap_or(cutoff) - l,
            Direction::OrdinaryFromFs => moments.values().map(|m| m.min_power).max().unwrap_or(cutoff) + l,
        };
        out.insert(a.clone(), acc.truncate(cutoff.max(known)));
    }
    Ok(out)
}

/// `Σ_k N^{−k} e_k(cont ν) · Σ_k (−N)^{−k} h_k(cont ν)` truncated below `N^{−depth}`;
/// equals `1` exactly (`r_N·s_N = 1` with the `N^{±|ν|}` prefactors cancelled).
pub fn content_inverse_product(nu: &Partition, depth: i64) -> NLaurent {
    let mut s = NLaurent::zero(-depth);
    let mut r = NLaurent::zero(-depth);
    for k in 0..=depth {
        s.add_term(-k, Rat::from_integer(content_eval(ContentKind::E, k as u32, nu)));
        let sign: BigInt = if k % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        r.add_term(-k, Rat::from_integer(sign * content_eval(ContentKind::H, k as u32, nu)));
    }
    s.mul(&r)
}

/// Wick pairing sum: `⟨Π Tr M^{μ_i}⟩ = Σ_α N^{#cycles(α∘φ) − L/2}` as a Laurent polynomial.
pub fn gue_moment_laurent(mu: &Partition) -> Result<NLaurent, HurwitzError> {
    let l = mu.size() as usize;
    if l > 12 {
        return Err(HurwitzError::Guard(format!("Wick sum over {l} half-edges")));
    }
    let mut out = NLaurent::zero(i64::MIN / 4);
    if l % 2 == 1 {
        return Ok(out);
    }
    let he = oracle::HalfEdgeSet::new(&mu.0, &[])?;
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    fn walk(he: &oracle::HalfEdgeSet, alpha: &mut Vec<usize>, counts: &mut BTreeMap<usize, u64>) {
        let Some(i) = alpha.iter().position(|&a| a == usize::MAX) else {
            let m = oracle::CombMap {
                half_edges: he,
                alpha: alpha.clone(),
            };
            *counts.entry(m.vertices().1).or_default() += 1;
            return;
        };
        for j in i + 1..alpha.len() {
            if alpha[j] == usize::MAX {
                alpha[i] = j;
                alpha[j] = i;
                walk(he, alpha, counts);
                alpha[i] = usize::MAX;
                alpha[j] = usize::MAX;
            }
        }
    }
    walk(&he, &mut vec![usize::MAX; l], &mut counts);
    for (v, c) in counts {
        out.add_term(v as i64 - l as i64 / 2, Rat::from_integer(BigInt::from(c)));
    }
    Ok(out)
}

/// `⟨Π Tr M^{μ_i}⟩` for the GUE at a rational `N`.
pub fn gue_moment(mu: &Partition, n: &Rat) -> Result<Rat, HurwitzError> {
    let lp = gue_moment_laurent(mu)?;
    let mut acc = Rat::zero();
    for (e, c) in &lp.coeffs {
        acc += c * n.pow(*e as i32);
    }
    Ok(acc)
}

/// Connected GUE counts per genus for boundaries `μ` (from the map oracle).
pub fn gue_cumulant_genus(mu: &Partition) -> Result<BTreeMap<u32, Rat>, HurwitzError> {
    Ok(oracle::gue_census(&mu.0, oracle::DEFAULT_CAP)?)
}

/// Fully simple GUE moment `⟨P_λ⟩ = Π δ_{λ_i,2}/N` as a Laurent monomial.
pub fn gue_fully_simple(lam: &Partition, min_power: i64) -> NLaurent {
    if lam.0.iter().all(|&p| p == 2) {
        NLaurent::monomial(Rat::one(), -(lam.len() as i64), min_power)
    } else {
        NLaurent::zero(min_power)
    }
}

/// Direct Weingarten evaluation `⟨P_λ⟩ = Σ_μ G̃_{N,L}(C_μ, φ^∂) ⟨p_μ⟩` for the GUE at rational `N`.
pub fn gue_fully_simple_weingarten(lam: &Partition, n: &Rat) -> Result<Rat, HurwitzError> {
    let mut acc = Rat::zero();
    for mu in partitions(lam.size()) {
        acc += weingarten_class(&mu, lam, n)? * gue_moment(&mu, n)?;
    }
    Ok(acc)
}

/// Sub-multisets of a sorted multiset, each listed once.
fn sub_multisets(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut groups: Vec<(u32, usize)> = vec![];
    for &p in parts {
        match groups.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![vec![]];
    for (p, m) in groups {
        let mut next = vec![];
        for base in &out {
            for c in 0..=m {
                let mut v = base.clone();
                v.extend(std::iter::repeat_n(p, c));
                next.push(v);
            }
        }
        out = next;
    }
    for v in out.iter_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
    }
    out
}

fn remove_multiset(from: &[u32], sub: &[u32]) -> Vec<u32> {
    let mut rest = from.to_vec();
    for s in sub {
        let i = rest.iter().position(|x| x == s).expect("sub-multiset");
        rest.remove(i);
    }
    rest
}

/// Connected 2-orbifold numbers `[E°_k]_{μ,(2,…,2)}` for all sub-multisets of `μ`
/// and all `k`, by inclusion–exclusion over ordered splittings with `1/s!`.
pub struct ConnectedHurwitz {
    kind: HurwitzKind,
    memo: HashMap<(Vec<u32>, u32), Rat>,
}

impl ConnectedHurwitz {
    pub fn new(kind: HurwitzKind) -> Self {
        ConnectedHurwitz {
            kind,
            memo: HashMap::new(),
        }
    }

    fn disconnected(&self, mu: &[u32], k: u32) -> Result<Rat, HurwitzError> {
        let p = Partition(mu.to_vec());
        let size = p.size();
        if size % 2 == 1 {
            return Ok(Rat::zero());
        }
        hurwitz_number(self.kind, k, &p, &Partition::twos(size as usize / 2))
    }

    /// `Σ_{s ≥ 1} (1/s!) Σ_{ordered (μ¹,…,μˢ), k_1+…+k_s = k} Π E°` restricted to
    /// tuples with exactly `s` blocks, computed from connected values.
    fn ordered_products(&mut self, mu: &[u32], k: u32, s: usize) -> Result<Rat, HurwitzError> {
        if s == 0 {
            return Ok(if mu.is_empty() && k == 0 {
                Rat::one()
            } else {
                Rat::zero()
            });
        }
        if mu.is_empty() {
            return Ok(Rat::zero());
        }
        let mut acc = Rat::zero();
        for first in sub_multisets(mu) {
            if first.is_empty() || first.iter().sum::<u32>() % 2 == 1 {
                continue;
            }
            let rest = remove_multiset(mu, &first);
            if (s == 1) != rest.is_empty() {
                continue;
            }
            for k1 in 0..=k {
                let c = self.connected(&first, k1)?;
                if c.is_zero() {
                    continue;
                }
                let r = self.ordered_products(&rest, k - k1, s - 1)?;
                acc += c * r;
            }
        }
        Ok(acc)
    }

    /// `[E°_k]_{μ,(2,…,2)}`.
    pub fn connected(&mut self, mu: &[u32], k: u32) -> Result<Rat, HurwitzError> {
        let mut key = mu.to_vec();
        key.sort_unstable_by(|a, b| b.cmp(a));
        if let Some(v) = self.memo.get(&(key.clone(), k)) {
            return Ok(v.clone());
        }
        let total = self.disconnected(&key, k)?;
        let mut sub = Rat::zero();
        let mut fact = BigInt::one();
        for s in 2..=key.len() {
            fact *= BigInt::from(s);
            let p = self.ordered_products(&key, k, s)?;
            sub += p / Rat::from_integer(fact.clone());
        }
        let v = total - sub;
        self.memo.insert((key, k), v.clone());
        Ok(v)
    }

    /// Genus-indexed value, `k = 2g − 2 + ℓ(μ) + |μ|/2`; zero when `k < 0`.
    pub fn genus(&mut self, mu: &Partition, g: u32) -> Result<Rat, HurwitzError> {
        let k = 2 * g as i64 - 2 + mu.len() as i64 + mu.size() as i64 / 2;
        if k < 0 || mu.size() % 2 == 1 {
            return Ok(Rat::zero());
        }
        self.connected(&mu.0, k as u32)
    }
}

/// `[E°_g]_{μ,(2,…,2)}` for one partition.
pub fn connected_hurwitz(kind: HurwitzKind, mu: &Partition, g: u32) -> Result<Rat, HurwitzError> {
    ConnectedHurwitz::new(kind).genus(mu, g)
}

/// True when a rational is a nonnegative integer.
pub fn is_nonneg_integer(r: &Rat) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn characters() {
        let t = CharTable::new(2, CHAR_CAP).unwrap();
        assert_eq!(t.chi(&p("2"), &p("2")), 1);
        assert_eq!(t.chi(&p("1,1"), &p("2")), -1);
        let t3 = CharTable::new(3, CHAR_CAP).unwrap();
        assert_eq!(t3.chi(&p("2,1"), &p("3")), -1);
        let t4 = CharTable::new(4, CHAR_CAP).unwrap();
        assert_eq!(t4.chi(&p("2,2"), &p("1,1,1,1")), 2);
        for l in 1..=6 {
            assert!(CharTable::new(l, CHAR_CAP).unwrap().check_orthogonality());
        }
        assert!(CharTable::new(11, CHAR_CAP).is_err());
    }

    #[test]
    fn contents() {
        assert_eq!(content_eval(ContentKind::E, 1, &p("2")), BigInt::from(1));
        assert_eq!(content_eval(ContentKind::E, 1, &p("1,1")), BigInt::from(-1));
        assert_eq!(content_eval(ContentKind::E, 2, &p("2")), BigInt::from(0));
        for k in 0..6 {
            assert_eq!(content_eval(ContentKind::H, k, &p("2")), BigInt::from(1));
        }
    }

    #[test]
    fn hurwitz_small() {
        assert_eq!(
            hurwitz_number(HurwitzKind::Strict, 0, &p("2"), &p("2")).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            hurwitz_number(HurwitzKind::Strict, 1, &p("1,1"), &p("2")).unwrap(),
            rat(1, 2)
        );
        for k in 0..5 {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(
                hurwitz_number(HurwitzKind::Weak, k, &p("2"), &p("1,1")).unwrap(),
                rat(1 - sign, 4)
            );
        }
        assert_eq!(
            cayley_oracle(HurwitzKind::Strict, 0, &p("2"), &p("2")).unwrap(),
            rat(1, 2)
        );
        assert_eq!(
            cayley_oracle(HurwitzKind::Strict, 1, &p("1,1"), &p("2")).unwrap(),
            rat(1, 2)
        );
    }

    #[test]
    fn weingarten_values() {
        let n = rat_int(3);
        assert_eq!(weingarten(1, &p("1"), &n).unwrap(), rat(1, 3));
        assert_eq!(weingarten(2, &p("1,1"), &n).unwrap(), rat(1, 8));
        assert_eq!(weingarten(2, &p("2"), &n).unwrap(), rat(-1, 24));
        assert!(matches!(
            weingarten(2, &p("1,1"), &rat_int(1)),
            Err(HurwitzError::Pole(_))
        ));
    }

    #[test]
    fn gue_moments() {
        assert_eq!(gue_moment(&p("2"), &rat_int(5)).unwrap(), rat_int(5));
        assert_eq!(gue_moment(&p("1,1"), &rat_int(5)).unwrap(), rat_int(1));
        let g = gue_cumulant_genus(&p("6")).unwrap();
        assert_eq!(g[&0], rat_int(5));
        assert_eq!(g[&1], rat_int(10));
    }

    #[test]
    fn gue_l2_transition() {
        let mut m = MomentVector::new();
        m.insert(p("2"), gue_moment_laurent(&p("2")).unwrap());
        m.insert(p("1,1"), gue_moment_laurent(&p("1,1")).unwrap());
        let fs = transition(Direction::FsFromOrdinary, &m, 2, -12).unwrap();
        assert!(fs[&p("2")].agrees(&NLaurent::monomial(rat_int(1), -1, -12)));
        assert!(fs[&p("1,1")].coeffs.is_empty());
        let one = NLaurent::monomial(rat_int(1), -1, -12);
        assert_eq!(fs[&p("2")], one.truncate(fs[&p("2")].min_power));
    }

    #[test]
    fn connected_small() {
        assert_eq!(connected_hurwitz(HurwitzKind::Strict, &p("2"), 0).unwrap(), rat(1, 2));
        let c = connected_hurwitz(HurwitzKind::Strict, &p("2,2"), 0).unwrap();
        assert_eq!(c * Rat::from_integer(p("2,2").aut()), rat_int(2));
    }

    #[test]
    fn content_inverse() {
        for nu in partitions(4) {
            let prod = content_inverse_product(&nu, 8);
            assert!(prod.agrees(&NLaurent::monomial(rat_int(1), 0, -8)), "{nu}");
        }
    }
}
