//! Topological recursion on the disk spectral curve.
//!
//! Two families of multidifferentials are produced from the same curve:
//!
//! * ordinary amplitudes `ω_{g,n}` for the projection `x`, with residues at the
//!   zeros `z = ±1` of `dx` and global deck map `z ↦ 1/z`;
//! * exchanged amplitudes `ω̌_{g,n}` for the projection `w` (the roles of `x`
//!   and `w` swapped), with residues at the zeros of `dw` and local deck maps.
//!
//! Stable amplitudes are stored in a pole basis: a finite combination of
//! `Π_i dz_i/(z_i − p_{a_i})^{k_i}` over branch points `p_a`.  Every residue is
//! evaluated from local expansions in `ζ = z − p_a`.
//!
//! Generating series of maps are extracted by iterated residues at `z_i → ∞`:
//! `F_{ℓ_1…ℓ_n} = (−1)ⁿ Res…Res Π x(z_i)^{ℓ_i} ω_{g,n}` and
//! `F̌_{k_1…k_n} = Res…Res Π w(z_i)^{−k_i} ω̌_{g,n}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::curve::DiskCurve;
use crate::exact::{self, ExactError, Laurent, Rat, RationalForm, USeries, ZPoly, INF, Q3};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Role {
    Ordinary,
    Exchanged,
}

#[derive(Debug, Clone, Error)]
pub enum TrError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("pole order {found} exceeds the cap {cap} for (g,n) = ({g},{n})")]
    PoleCap {
        g: usize,
        n: usize,
        found: usize,
        cap: usize,
    },
    #[error("(g,n) = ({0},{1}) is not a stable amplitude")]
    Unstable(usize, usize),
    #[error("coefficient is not a rational series in t: {0}")]
    Irrational(String),
    #[error("insufficient precision: need u-order {need}, have {have}")]
    Precision { need: i64, have: i64 },
}

/// Pole-basis index `(branch point, pole order)`.
pub type Basis = (u8, u8);
pub type Key = Vec<Basis>;

/// A stable amplitude in the pole basis.
#[derive(Clone, Debug)]
pub struct Amplitude {
    pub g: usize,
    pub n: usize,
    pub terms: BTreeMap<Key, USeries>,
}

impl Amplitude {
    pub fn max_order(&self) -> usize {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|b| b.1 as usize))
            .max()
            .unwrap_or(0)
    }
    /// Smallest `u`-precision among the coefficients.
    pub fn min_prec(&self) -> i64 {
        self.terms.values().map(|c| c.prec()).min().unwrap_or(INF)
    }
    /// Exact symmetry under permutations of variable slots: for every term the
    /// coefficient of each permuted key agrees (to common precision).
    pub fn is_symmetric(&self) -> bool {
        let perms = permutations(self.n);
        for (key, c) in &self.terms {
            for p in &perms {
                let pk: Key = p.iter().map(|&i| key[i]).collect();
                let other = self.terms.get(&pk).cloned().unwrap_or_else(USeries::zero);
                if !c.sub(&other).is_zero() {
                    return false;
                }
            }
        }
        true
    }
    /// For one-point amplitudes: the rational function `f(z)` with `ω = f(z)dz`.
    pub fn to_rational_form(&self, points: &[USeries]) -> Result<RationalForm, ExactError> {
        assert_eq!(self.n, 1, "only one-point amplitudes convert to a single-variable form");
        let mut acc = RationalForm::poly(ZPoly::zero());
        for (key, c) in &self.terms {
            let (a, k) = key[0];
            let lin = ZPoly::exact(0, vec![points[a as usize].neg(), USeries::one()]);
            let f = RationalForm::new(ZPoly::constant(c.clone()), lin.pow(k as i64)?)?;
            acc = acc.add(&f);
        }
        Ok(acc)
    }
    /// Coefficients of the principal part at branch point `a` (pole order → coefficient).
    pub fn principal_part(&self, a: u8) -> BTreeMap<u8, USeries> {
        assert_eq!(self.n, 1);
        self.terms
            .iter()
            .filter(|(k, _)| k[0].0 == a)
            .map(|(k, c)| (k[0].1, c.clone()))
            .collect()
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Pole-order cap `6g − 4 + 2n + 2`.
pub fn pole_cap(g: usize, n: usize) -> usize {
    6 * g + 2 * n - 2
}

type Partial = BTreeMap<Key, Laurent<USeries>>;

struct Branch {
    deck: Laurent<USeries>,
    deck_d: Laurent<USeries>,
    kernel: Vec<Laurent<USeries>>,
    b_self: Laurent<USeries>,
}

/// Recursion engine for one curve and one role, with memoized amplitudes.
pub struct TrEngine {
    pub curve: DiskCurve,
    pub role: Role,
    pub points: Vec<USeries>,
    branches: Vec<Branch>,
    zp: i64,
    kmax: usize,
    ex: Vec<Vec<Vec<Laurent<USeries>>>>,
    ex_sigma: Vec<Vec<Vec<Laurent<USeries>>>>,
    cache: Mutex<HashMap<(usize, usize), Arc<Amplitude>>>,
}

fn add_into(map: &mut Partial, key: Key, s: Laurent<USeries>) {
    match map.get_mut(&key) {
        Some(acc) => *acc = acc.add(&s),
        None => {
            map.insert(key, s);
        }
    }
}

fn partial_pole(p: &Partial) -> i64 {
    p.values().map(|s| -s.valuation().min(0)).max().unwrap_or(0)
}

impl TrEngine {
    /// Builds the local data at every branch point; `kmax` bounds the pole
    /// orders of the amplitudes that will be fed back into the recursion.
    pub fn new(curve: DiskCurve, role: Role, kmax: usize) -> Result<Self, TrError> {
        let zp = 2 * kmax as i64 + 4;
        let points = match role {
            Role::Ordinary => vec![USeries::one(), USeries::from_int(-1)],
            Role::Exchanged => curve.w_branch_points()?,
        };
        let (xx, yy) = match role {
            Role::Ordinary => (curve.x.clone(), curve.w.clone()),
            Role::Exchanged => (curve.w.clone(), curve.x.clone()),
        };
        let xd = xx.derivative();
        let mmax = 2 * kmax + 2;
        let zeta = Laurent::<USeries>::var();
        let mut branches = vec![];
        for p in &points {
            let deck = match role {
                Role::Ordinary => {
                    let base = Laurent::new(0, vec![p.clone(), USeries::one()], zp + 3);
                    base.inv()?.sub(&Laurent::constant(p.clone()))
                }
                Role::Exchanged => curve.local_deck(p, zp + 2)?.series,
            };
            let deck = deck.truncate(zp + 3);
            let deck_d = deck.derivative();
            let yz = exact::zpoly_at(&yy, p, zp + 6)?;
            let ys = yz.compose(&deck)?;
            let diff = yz.sub(&ys).assume_valuation(1)?;
            let xdz = exact::zpoly_at(&xd, p, zp + 6)?.assume_valuation(1)?;
            let d2 = diff.mul(&xdz).scale_int(2);
            let dinv = d2.truncate(zp + 4).inv()?;
            let mut kernel = vec![Laurent::zero()];
            for m in 1..=mmax as i64 {
                let num = zeta.pow(m)?.sub(&deck.pow(m)?).truncate(zp + 4);
                kernel.push(num.mul(&dinv));
            }
            let sep = zeta.sub(&deck).truncate(zp + 4);
            let b_self = deck_d.mul(&sep.mul(&sep).inv()?);
            branches.push(Branch {
                deck,
                deck_d,
                kernel,
                b_self,
            });
        }
        let np = points.len();
        let mut ex = vec![vec![vec![]; np]; np];
        let mut ex_sigma = vec![vec![vec![]; np]; np];
        for i in 0..np {
            let br = &branches[i];
            for q in 0..np {
                let mut e = vec![Laurent::zero()];
                let mut es = vec![Laurent::zero()];
                let base_inv = if q == i {
                    None
                } else {
                    let base = Laurent::new(0, vec![points[i].sub(&points[q]), USeries::one()], zp + 2);
                    Some(base.inv()?)
                };
                let deck_inv = br.deck.inv()?;
                for k in 1..=kmax as i64 {
                    match &base_inv {
                        None => {
                            e.push(Laurent::monomial(USeries::one(), -k));
                            es.push(deck_inv.pow(k)?.mul(&br.deck_d));
                        }
                        Some(bi) => {
                            let s = bi.pow(k)?;
                            es.push(s.compose(&br.deck)?.mul(&br.deck_d));
                            e.push(s);
                        }
                    }
                }
                ex[i][q] = e;
                ex_sigma[i][q] = es;
            }
        }
        Ok(TrEngine {
            curve,
            role,
            points,
            branches,
            zp,
            kmax,
            ex,
            ex_sigma,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn zeta_prec(&self) -> i64 {
        self.zp
    }

    /// Memoized amplitude `ω_{g,n}` (or `ω̌_{g,n}`), `2g − 2 + n > 0`.
    pub fn amplitude(&self, g: usize, n: usize) -> Result<Arc<Amplitude>, TrError> {
        if 2 * g + n <= 2 || n == 0 {
            return Err(TrError::Unstable(g, n));
        }
        if let Some(a) = self.cache.lock().unwrap().get(&(g, n)) {
            return Ok(a.clone());
        }
        // fill dependencies in increasing 2g − 2 + n
        if g >= 1 && 2 * (g - 1) + n + 1 > 2 {
            self.amplitude(g - 1, n + 1)?;
        }
        for h in 0..=g {
            for k in 1..n {
                if 2 * h + k > 2 && (h, k) != (g, n) {
                    self.amplitude(h, k)?;
                }
            }
        }
        let a = Arc::new(self.compute(g, n)?);
        self.cache.lock().unwrap().insert((g, n), a.clone());
        Ok(a)
    }

    /// `ω_{g',n'}` evaluated in its first slot at `z = p_i + ζ` (or at the deck
    /// image, including the factor `ι̂'(ζ)`), keyed by the remaining slots.
    fn eval_slot(&self, amp: &Amplitude, i: usize, sigma: bool) -> Partial {
        let tab = if sigma { &self.ex_sigma } else { &self.ex };
        let mut out = Partial::new();
        for (key, c) in &amp.terms {
            let (q, k) = key[0];
            let s = tab[i][q as usize][k as usize].scale(c);
            add_into(&mut out, key[1..].to_vec(), s);
        }
        out
    }

    /// `B(z, z_j)` evaluated at `z = p_i + ζ` (or at the deck image), as a
    /// partial in `z_j`, to `ζ`-precision `trunc`.
    fn b_partial(&self, i: usize, sigma: bool, trunc: i64) -> Partial {
        let br = &self.branches[i];
        let mut out = Partial::new();
        let mut pw = Laurent::<USeries>::one();
        let step = if sigma { br.deck.clone() } else { Laurent::var() };
        for m in 0..trunc.max(0) {
            let s = if sigma { pw.mul(&br.deck_d) } else { pw.clone() };
            let s = s.scale_int(m + 1).truncate(trunc);
            out.insert(vec![(i as u8, (m + 2) as u8)], s);
            pw = pw.mul(&step).truncate(trunc);
        }
        out
    }

    fn factor(&self, g: usize, n: usize, i: usize, sigma: bool, trunc_if_b: i64) -> Result<Partial, TrError> {
        if (g, n) == (0, 2) {
            Ok(self.b_partial(i, sigma, trunc_if_b))
        } else {
            let a = self.amplitude(g, n)?;
            Ok(self.eval_slot(&a, i, sigma))
        }
    }

    fn compute(&self, g: usize, n: usize) -> Result<Amplitude, TrError> {
        let r = n - 1; // remaining variables
        let cap = pole_cap(g, n);
        let mut terms: BTreeMap<Key, USeries> = BTreeMap::new();
        for i in 0..self.points.len() {
            let mut integrand = Partial::new();
            // ω_{g−1,n+1}(z, σz, z_J)
            if g >= 1 {
                if (g - 1, n + 1) == (0, 2) {
                    integrand.insert(vec![], self.branches[i].b_self.truncate(1));
                } else {
                    let a = self.amplitude(g - 1, n + 1)?;
                    let mut pair_cache: HashMap<(Basis, Basis), Laurent<USeries>> = HashMap::new();
                    for (key, c) in &a.terms {
                        let (q0, k0) = key[0];
                        let (q1, k1) = key[1];
                        let prod = pair_cache
                            .entry((key[0], key[1]))
                            .or_insert_with(|| {
                                let e0 = &self.ex[i][q0 as usize][k0 as usize];
                                let e1 = &self.ex_sigma[i][q1 as usize][k1 as usize];
                                let p0 = -e0.valuation().min(0);
                                let p1 = -e1.valuation().min(0);
                                e0.truncate(1 + p1).mul(&e1.truncate(1 + p0))
                            })
                            .clone();
                        add_into(&mut integrand, key[2..].to_vec(), prod.scale(c));
                    }
                }
            }
            // Σ' ω_{h,1+|I|}(z, z_I) ω_{g−h,1+|J∖I|}(σz, z_{J∖I})
            for h in 0..=g {
                for mask in 0u32..(1 << r) {
                    let ni = mask.count_ones() as usize;
                    let (n1, n2) = (1 + ni, 1 + r - ni);
                    if (h, ni) == (0, 0) || (h, ni) == (g, r) {
                        continue;
                    }
                    if 2 * h + n1 <= 2 && (h, n1) != (0, 2) {
                        continue;
                    }
                    if 2 * (g - h) + n2 <= 2 && (g - h, n2) != (0, 2) {
                        continue;
                    }
                    // the regular factor's truncation depends on the other's pole order
                    let (fa, fb) = if (h, n1) == (0, 2) {
                        let fb = self.factor(g - h, n2, i, true, 1)?;
                        let fa = self.factor(h, n1, i, false, 1 + partial_pole(&fb))?;
                        (fa, fb)
                    } else {
                        let fa = self.factor(h, n1, i, false, 0)?;
                        let fb = self.factor(g - h, n2, i, true, 1 + partial_pole(&fa))?;
                        (fa, fb)
                    };
                    let pa = partial_pole(&fa);
                    let pb = partial_pole(&fb);
                    let fb_t: Vec<(Key, Laurent<USeries>)> =
                        fb.into_iter().map(|(k, s)| (k, s.truncate(1 + pa))).collect();
                    for (ka, sa) in &fa {
                        let sa = sa.truncate(1 + pb);
                        for (kb, sb) in &fb_t {
                            let key = merge_key(mask, r, ka, kb);
                            add_into(&mut integrand, key, sa.mul(sb));
                        }
                    }
                }
            }
            // residues against the kernel
            for (rest, ser) in integrand {
                if ser.is_zero() {
                    continue;
                }
                let v = ser.valuation();
                if ser.prec() < 1 {
                    return Err(ExactError::Precision {
                        needed: 0,
                        known: ser.prec(),
                    }
                    .into());
                }
                for m in 1..=(1 - v) {
                    let kern = self.branches[i].kernel.get(m as usize).ok_or(TrError::PoleCap {
                        g,
                        n,
                        found: (m + 1) as usize,
                        cap,
                    })?;
                    let mut acc = USeries::zero();
                    for j in v..=0 {
                        let sj = ser.coeff(j);
                        if sj.is_zero() {
                            continue;
                        }
                        let kc = kern.try_coeff(-1 - j)?;
                        acc = acc.add(&kc.mul(&sj));
                    }
                    if acc.is_zero() {
                        continue;
                    }
                    let order = (m + 1) as usize;
                    if order > cap {
                        return Err(TrError::PoleCap {
                            g,
                            n,
                            found: order,
                            cap,
                        });
                    }
                    let mut key = vec![(i as u8, order as u8)];
                    key.extend_from_slice(&rest);
                    match terms.get_mut(&key) {
                        Some(x) => *x = x.add(&acc),
                        None => {
                            terms.insert(key, acc);
                        }
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let amp = Amplitude { g, n, terms };
        let mo = amp.max_order();
        if mo > cap {
            return Err(TrError::PoleCap { g, n, found: mo, cap });
        }
        if mo > self.kmax && 2 * g + n < 2 * self.kmax {
            // amplitudes with larger poles can still be extracted, but not fed
            // back into the recursion with the precomputed expansions
        }
        Ok(amp)
    }

    /// `Res_{z→∞} f(z) dz/(z − p_a)^k` for a Laurent polynomial-at-∞ `f` given
    /// by its coefficients `f_e` (`e ≥ k − 1` are needed).
    fn res_inf_basis(f: &dyn Fn(i64) -> USeries, top: i64, p: &USeries, k: i64) -> USeries {
        // Res = −Σ_{i ≥ 0} C(k+i−1, i) p^i f_{k+i−1}
        let mut acc = USeries::zero();
        let mut ppow = USeries::one();
        let mut i = 0;
        while k + i - 1 <= top {
            let f_e = f(k + i - 1);
            if !f_e.is_zero() {
                let c = exact::binomial(k + i - 1, i);
                acc = acc.add(&f_e.mul(&ppow).scale_rat(&Rat::from_integer(c)));
            }
            ppow = ppow.mul(p);
            i += 1;
        }
        acc.neg()
    }

    /// Coefficients of the test function at infinity: `x(z)^ℓ` (ordinary) or
    /// `w(z)^{−k}` (exchanged), as a map exponent ↦ coefficient for exponents ≥ 0.
    fn test_function(&self, len: u32) -> Result<(BTreeMap<i64, USeries>, i64), ExactError> {
        let mut out = BTreeMap::new();
        match self.role {
            Role::Ordinary => {
                let p = self.curve.x.pow(len as i64)?;
                for (e, c) in p.iter() {
                    if e >= 0 {
                        out.insert(e, c.clone());
                    }
                }
                Ok((out, len as i64))
            }
            Role::Exchanged => {
                // w = y·(w_1 + w_2 y + …) in y = 1/z
                let wy: Vec<USeries> = (1..=(-self.curve.w.valuation()))
                    .map(|j| self.curve.w.coeff(-j))
                    .collect();
                let s = Laurent::new(0, wy, len as i64 + 2);
                let sk = s.inv()?.pow(len as i64)?;
                // w^{-k} = y^{-k}·sk(y): coefficient of z^e is [y^{k−e}] sk
                for e in 0..=len as i64 {
                    out.insert(e, sk.try_coeff(len as i64 - e)?);
                }
                Ok((out, len as i64))
            }
        }
    }

    /// Generating series `F^{[g]}_{lengths}` (ordinary) or `F̌^{[g]}_{lengths}`
    /// (exchanged) as a `u`-series, for stable `(g, n)`.
    pub fn extract_series(&self, g: usize, lengths: &[u32]) -> Result<USeries, TrError> {
        let n = lengths.len();
        let amp = self.amplitude(g, n)?;
        let mut tabs: Vec<HashMap<Basis, USeries>> = vec![];
        for &len in lengths {
            let (f, top) = self.test_function(len)?;
            let getf = |e: i64| f.get(&e).cloned().unwrap_or_else(USeries::zero);
            let mut tab = HashMap::new();
            for a in 0..self.points.len() {
                for k in 1..=amp.max_order() {
                    tab.insert(
                        (a as u8, k as u8),
                        Self::res_inf_basis(&getf, top, &self.points[a], k as i64),
                    );
                }
            }
            tabs.push(tab);
        }
        let mut acc = USeries::zero();
        for (key, c) in &amp.terms {
            let mut prod = c.clone();
            for (v, b) in key.iter().enumerate() {
                prod = prod.mul(&tabs[v][b]);
                if prod.is_zero() {
                    break;
                }
            }
            acc = acc.add(&prod);
        }
        if self.role == Role::Ordinary && n % 2 == 1 {
            acc = acc.neg();
        }
        Ok(acc)
    }
}

fn merge_key(mask: u32, r: usize, ka: &Key, kb: &Key) -> Key {
    let mut out = Vec::with_capacity(r);
    let (mut ia, mut ib) = (0, 0);
    for v in 0..r {
        if mask & (1 << v) != 0 {
            out.push(ka[ia]);
            ia += 1;
        } else {
            out.push(kb[ib]);
            ib += 1;
        }
    }
    out
}

/// Ordinary disk series `F_ℓ = [z^{−1}](x^ℓ · w · x')`.
pub fn ordinary_disk_series(curve: &DiskCurve, len: u32) -> Result<USeries, ExactError> {
    let f = curve.x.pow(len as i64)?.mul(&curve.w).mul(&curve.dx());
    Ok(f.coeff(-1))
}

/// Ordinary cylinder series from the regularized `(0,2)` form.
///
/// With `x(z) = α + γ(z + 1/z)` one has exactly
/// `B(z₁,z₂) − dx(z₁)dx(z₂)/(x(z₁) − x(z₂))² = dz₁dz₂/(z₁z₂ − 1)²`, whose
/// expansion at `(∞,∞)` is `Σ_{m≥1} m (z₁z₂)^{−m−1}`; hence
/// `F_{ℓ₁,ℓ₂} = Σ_{m≥1} m [z^m]x^{ℓ₁} [z^m]x^{ℓ₂}`.
pub fn ordinary_cylinder_series(curve: &DiskCurve, l1: u32, l2: u32) -> Result<USeries, ExactError> {
    let p1 = curve.x.pow(l1 as i64)?;
    let p2 = curve.x.pow(l2 as i64)?;
    let mut acc = USeries::zero();
    for m in 1..=(l1.min(l2) as i64) {
        acc = acc.add(&p1.coeff(m).mul(&p2.coeff(m)).scale_int(m));
    }
    Ok(acc)
}

/// A table of exact rationals, one row per length tuple, columns `Q = 0…q_max`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct TableRow {
    pub lengths: Vec<u32>,
    #[serde(serialize_with = "ser_rats")]
    pub coeffs: Vec<Rat>,
    /// Entries that are negative or non-integral (never silently dropped).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

fn ser_rats<S: serde::Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&exact::rat_to_string(r))?;
    }
    seq.end()
}

/// Converts a count series into a row of `t`-coefficients, flagging negative or
/// non-integral entries.
pub fn series_row(lengths: &[u32], s: &USeries, q_max: usize) -> Result<TableRow, TrError> {
    s.assert_rational_in_t()
        .map_err(|e| TrError::Irrational(e.to_string()))?;
    if (2 * q_max as i64) >= s.prec() {
        return Err(TrError::Precision {
            need: 2 * q_max as i64 + 1,
            have: s.prec(),
        });
    }
    let coeffs = s.t_coeffs(q_max)?;
    let mut flags = vec![];
    for (q, c) in coeffs.iter().enumerate() {
        if c.is_negative() {
            flags.push(format!("Q={q}: negative entry {}", exact::rat_to_string(c)));
        } else if !c.is_integer() {
            flags.push(format!("Q={q}: non-integral entry {}", exact::rat_to_string(c)));
        }
    }
    Ok(TableRow {
        lengths: lengths.to_vec(),
        coeffs,
        flags,
    })
}

/// Convenience: integer value of a table entry (panics on non-integers; for tests).
pub fn as_int(r: &Rat) -> BigInt {
    assert!(r.is_integer(), "non-integer {r}");
    r.to_integer()
}

/// Evaluates a pole-basis one-point amplitude minus a rational form at a
/// rational point `z0`; used for closed-form comparisons.
pub fn eval_amplitude_1(amp: &Amplitude, points: &[USeries], z0: &USeries) -> Result<USeries, ExactError> {
    let mut acc = USeries::zero();
    for (key, c) in &amp.terms {
        let (a, k) = key[0];
        let d = z0.sub(&points[a as usize]).pow(-(k as i64))?;
        acc = acc.add(&c.mul(&d));
    }
    Ok(acc)
}

/// Evaluates a pole-basis amplitude at a point `(z_1, …, z_n)`.
pub fn eval_amplitude(amp: &Amplitude, points: &[USeries], zs: &[USeries]) -> Result<USeries, ExactError> {
    let mut inv_cache: HashMap<(usize, u8, u8), USeries> = HashMap::new();
    let mut acc = USeries::zero();
    for (key, c) in &amp.terms {
        let mut prod = c.clone();
        for (v, &(a, k)) in key.iter().enumerate() {
            let e = match inv_cache.get(&(v, a, k)) {
                Some(e) => e.clone(),
                None => {
                    let e = zs[v].sub(&points[a as usize]).pow(-(k as i64))?;
                    inv_cache.insert((v, a, k), e.clone());
                    e
                }
            };
            prod = prod.mul(&e);
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}

#[allow(dead_code)]
fn q3(n: i64) -> Q3 {
    Q3::from_int(n)
}

#[allow(dead_code)]
fn is_zero_rat(r: &Rat) -> bool {
    r.is_zero()
}
