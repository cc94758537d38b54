//! Exact coefficient arithmetic.
//!
//! Everything downstream is built on three layers:
//!
//! * [`Q3`] — elements `a + b·√3` of the quadratic field ℚ(√3);
//! * [`USeries`] — truncated Laurent series in `u` (with `t = u²`) over ℚ(√3),
//!   carrying an explicit absolute precision: terms of degree `≥ prec` are unknown;
//! * [`Laurent<C>`] — a generic truncated Laurent series in one more variable with
//!   coefficients in any [`Coeff`] ring; used for local coordinates `ζ` at branch
//!   points, for the curve coordinate `z` ([`ZPoly`]) and for boundary variables.
//!
//! Precision is never padded silently: every product and quotient propagates the
//! smallest precision that is actually known.  Valuations in `u` may be negative
//! (local expansions near branch points of valuation one need inverse powers);
//! quantities that represent counts are checked for non-negative valuation when
//! they are turned into tables.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational number.
pub type Rat = BigRational;

/// Sentinel for "known to all orders".
pub const INF: i64 = i64::MAX / 4;

#[inline]
pub(crate) fn sat_add(a: i64, b: i64) -> i64 {
    if a >= INF || b >= INF {
        INF
    } else {
        (a + b).min(INF)
    }
}

#[inline]
fn sat_mul(a: i64, k: i64) -> i64 {
    if a >= INF {
        INF
    } else {
        a.saturating_mul(k).min(INF)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by a series that vanishes to its known precision")]
    DivisionByZero,
    #[error("leading coefficient {0} is not a square in Q(sqrt3)")]
    NotASquare(String),
    #[error("precision exhausted: exponent {needed} requested, only known below {known}")]
    Precision { needed: i64, known: i64 },
    #[error("pole order exceeds the supplied bound {bound}")]
    PoleOrder { bound: usize },
    #[error("{0}")]
    Domain(String),
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Renders `p` or `p/q`.
pub fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

fn rat_sqrt(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rat::new(n, d))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Q3
// ---------------------------------------------------------------------------

/// An element `rational_part + surd_part·√3` of ℚ(√3).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Q3 {
    pub rational_part: Rat,
    pub surd_part: Rat,
}

impl Q3 {
    pub fn new(rational_part: Rat, surd_part: Rat) -> Self {
        Q3 {
            rational_part,
            surd_part,
        }
    }
    pub fn from_rat(r: Rat) -> Self {
        Q3::new(r, Rat::zero())
    }
    pub fn from_int(n: i64) -> Self {
        Q3::from_rat(rat_int(n))
    }
    pub fn zero() -> Self {
        Q3::from_int(0)
    }
    pub fn one() -> Self {
        Q3::from_int(1)
    }
    pub fn sqrt3() -> Self {
        Q3::new(Rat::zero(), Rat::one())
    }
    pub fn is_zero(&self) -> bool {
        self.rational_part.is_zero() && self.surd_part.is_zero()
    }
    pub fn is_rational(&self) -> bool {
        self.surd_part.is_zero()
    }
    pub fn conj(&self) -> Q3 {
        Q3::new(self.rational_part.clone(), -self.surd_part.clone())
    }
    /// Field norm `a² − 3b²`.
    pub fn norm(&self) -> Rat {
        &self.rational_part * &self.rational_part - rat_int(3) * &self.surd_part * &self.surd_part
    }
    pub fn inv(&self) -> Result<Q3, ExactError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Q3::new(&self.rational_part / &n, -&self.surd_part / &n))
    }

    /// Principal square root: positive rational part, or positive surd part when
    /// the rational part vanishes.
    pub fn sqrt(&self) -> Result<Q3, ExactError> {
        let fail = || ExactError::NotASquare(self.to_string());
        if self.is_zero() {
            return Ok(Q3::zero());
        }
        let a = &self.rational_part;
        let b = &self.surd_part;
        // (x + y√3)² = x² + 3y² + 2xy√3
        if b.is_zero() {
            if let Some(x) = rat_sqrt(a) {
                return Ok(Q3::from_rat(x));
            }
            if let Some(y) = rat_sqrt(&(a / rat_int(3))) {
                return Ok(Q3::new(Rat::zero(), y));
            }
            return Err(fail());
        }
        // x² is a root of X² − aX + 3b²/4.
        let disc = a * a - rat_int(3) * b * b;
        let s = rat_sqrt(&disc).ok_or_else(fail)?;
        for cand in [(a + &s) / rat_int(2), (a - &s) / rat_int(2)] {
            if let Some(x) = rat_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = b / (rat_int(2) * &x);
                let r = Q3::new(x, y);
                if &(&r * &r) == self {
                    return Ok(r);
                }
            }
        }
        Err(fail())
    }
}

impl fmt::Display for Q3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd_part.is_zero() {
            write!(f, "{}", rat_to_string(&self.rational_part))
        } else {
            write!(
                f,
                "{} + {}*sqrt3",
                rat_to_string(&self.rational_part),
                rat_to_string(&self.surd_part)
            )
        }
    }
}

impl<'a> std::ops::Add<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn add(self, o: &Q3) -> Q3 {
        Q3::new(&self.rational_part + &o.rational_part, &self.surd_part + &o.surd_part)
    }
}
impl<'a> std::ops::Sub<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn sub(self, o: &Q3) -> Q3 {
        Q3::new(&self.rational_part - &o.rational_part, &self.surd_part - &o.surd_part)
    }
}
impl<'a> std::ops::Mul<&'a Q3> for &'a Q3 {
    type Output = Q3;
    fn mul(self, o: &Q3) -> Q3 {
        Q3::new(
            &self.rational_part * &o.rational_part + rat_int(3) * &self.surd_part * &o.surd_part,
            &self.rational_part * &o.surd_part + &self.surd_part * &o.rational_part,
        )
    }
}
impl std::ops::Neg for &Q3 {
    type Output = Q3;
    fn neg(self) -> Q3 {
        Q3::new(-&self.rational_part, -&self.surd_part)
    }
}

// ---------------------------------------------------------------------------
// Coefficient rings
// ---------------------------------------------------------------------------

/// Ring operations needed by [`Laurent`].  `cinv` may fail (non-units, or
/// coefficients known only to vanish up to their precision).
pub trait Coeff: Clone + fmt::Debug + Send + Sync + 'static {
    fn czero() -> Self;
    fn cone() -> Self;
    fn cfrom_rat(r: &Rat) -> Self;
    /// Exactly zero (to all orders).
    fn is_exact_zero(&self) -> bool;
    /// Zero as far as it is known.
    fn is_known_zero(&self) -> bool;
    fn cadd(&self, o: &Self) -> Self;
    fn csub(&self, o: &Self) -> Self;
    fn cmul(&self, o: &Self) -> Self;
    fn cneg(&self) -> Self;
    fn cinv(&self) -> Result<Self, ExactError>;
    fn csqrt(&self) -> Result<Self, ExactError>;
}

impl Coeff for Q3 {
    fn czero() -> Self {
        Q3::zero()
    }
    fn cone() -> Self {
        Q3::one()
    }
    fn cfrom_rat(r: &Rat) -> Self {
        Q3::from_rat(r.clone())
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn is_known_zero(&self) -> bool {
        self.is_zero()
    }
    fn cadd(&self, o: &Self) -> Self {
        self + o
    }
    fn csub(&self, o: &Self) -> Self {
        self - o
    }
    fn cmul(&self, o: &Self) -> Self {
        self * o
    }
    fn cneg(&self) -> Self {
        -self
    }
    fn cinv(&self) -> Result<Self, ExactError> {
        self.inv()
    }
    fn csqrt(&self) -> Result<Self, ExactError> {
        self.sqrt()
    }
}

// ---------------------------------------------------------------------------
// USeries
// ---------------------------------------------------------------------------

/// Truncated Laurent series in `u` over ℚ(√3), `t = u²`.
///
/// Stored as integer pairs over a common positive denominator:
/// the coefficient of `u^(val+i)` is `(num[i].0 + num[i].1·√3) / den`.
/// Terms between the stored ones and `prec` are known zeros; terms of degree
/// `≥ prec` are unknown.  `prec == INF` marks an exact (finite) series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct USeries {
    val: i64,
    num: Vec<(BigInt, BigInt)>,
    den: BigInt,
    prec: i64,
}

impl USeries {
    pub fn zero() -> Self {
        USeries {
            val: 0,
            num: vec![],
            den: BigInt::one(),
            prec: INF,
        }
    }
    /// `O(u^prec)`.
    pub fn zero_to(prec: i64) -> Self {
        USeries {
            val: 0,
            num: vec![],
            den: BigInt::one(),
            prec,
        }
    }
    pub fn one() -> Self {
        USeries::from_int(1)
    }
    pub fn from_int(n: i64) -> Self {
        USeries::constant(&Q3::from_int(n))
    }
    pub fn from_rat(r: &Rat) -> Self {
        USeries::constant(&Q3::from_rat(r.clone()))
    }
    pub fn constant(q: &Q3) -> Self {
        USeries::monomial(q, 0)
    }
    /// `q·u^e`, exact.
    pub fn monomial(q: &Q3, e: i64) -> Self {
        USeries::from_coeffs(e, std::slice::from_ref(q), INF)
    }
    /// The formal variable `t = u²`.
    pub fn t() -> Self {
        USeries::monomial(&Q3::one(), 2)
    }
    pub fn u() -> Self {
        USeries::monomial(&Q3::one(), 1)
    }

    /// Series `Σ coeffs[i]·u^(val+i) + O(u^prec)`.
    pub fn from_coeffs(val: i64, coeffs: &[Q3], prec: i64) -> Self {
        let mut den = BigInt::one();
        for q in coeffs {
            den = den.lcm(q.rational_part.denom());
            den = den.lcm(q.surd_part.denom());
        }
        let dr = Rat::from_integer(den.clone());
        let num = coeffs
            .iter()
            .map(|q| {
                let a = &q.rational_part * &dr;
                let b = &q.surd_part * &dr;
                (a.to_integer(), b.to_integer())
            })
            .collect();
        let mut s = USeries { val, num, den, prec };
        s.normalize();
        s
    }

    /// Series in `t` with rational coefficients: `Σ c_q t^q + O(t^prec_t)`.
    pub fn from_t_coeffs(coeffs: &[Rat], prec_t: i64) -> Self {
        let mut q3 = Vec::with_capacity(2 * coeffs.len());
        for (i, c) in coeffs.iter().enumerate() {
            q3.push(Q3::from_rat(c.clone()));
            if i + 1 < coeffs.len() {
                q3.push(Q3::zero());
            }
        }
        USeries::from_coeffs(0, &q3, sat_mul(prec_t, 2))
    }

    fn normalize(&mut self) {
        let p = self.prec;
        if p < INF {
            let keep = (p - self.val).max(0) as usize;
            if self.num.len() > keep {
                self.num.truncate(keep);
            }
        }
        while let Some(l) = self.num.last() {
            if l.0.is_zero() && l.1.is_zero() {
                self.num.pop();
            } else {
                break;
            }
        }
        let lead = self.num.iter().take_while(|c| c.0.is_zero() && c.1.is_zero()).count();
        if lead > 0 {
            self.num.drain(..lead);
            self.val += lead as i64;
        }
        if self.num.is_empty() {
            self.val = 0;
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for (a, b) in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(a);
            g = g.gcd(b);
        }
        if !g.is_one() {
            for (a, b) in self.num.iter_mut() {
                *a = &*a / &g;
                *b = &*b / &g;
            }
            self.den = &self.den / &g;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }
    /// Lowest exponent with a nonzero coefficient; `prec` for a series that is
    /// zero as far as known.
    pub fn valuation(&self) -> i64 {
        if self.num.is_empty() {
            self.prec
        } else {
            self.val
        }
    }
    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
    pub fn is_exact(&self) -> bool {
        self.prec >= INF
    }
    /// Highest stored exponent + 1 (or the valuation for zero).
    pub fn end(&self) -> i64 {
        self.val + self.num.len() as i64
    }

    pub fn coeff(&self, e: i64) -> Q3 {
        if e < self.val || e >= self.end() {
            return Q3::zero();
        }
        let (a, b) = &self.num[(e - self.val) as usize];
        let d = Rat::from_integer(self.den.clone());
        Q3::new(Rat::from_integer(a.clone()) / &d, Rat::from_integer(b.clone()) / &d)
    }

    /// Coefficient of `u^e`, erroring when it is not known.
    pub fn try_coeff(&self, e: i64) -> Result<Q3, ExactError> {
        if e >= self.prec {
            Err(ExactError::Precision {
                needed: e,
                known: self.prec,
            })
        } else {
            Ok(self.coeff(e))
        }
    }

    /// Nonzero terms `(exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(i64, Q3)> {
        (self.val..self.end())
            .map(|e| (e, self.coeff(e)))
            .filter(|(_, q)| !q.is_zero())
            .collect()
    }

    /// Lower the precision to `p` (no-op if already lower).
    pub fn truncate(&self, p: i64) -> USeries {
        let mut s = self.clone();
        s.prec = s.prec.min(p);
        s.normalize();
        s
    }

    /// Forget the precision bound (treat the stored terms as exact).
    fn as_exact(&self) -> USeries {
        let mut s = self.clone();
        s.prec = INF;
        s
    }

    pub fn neg(&self) -> USeries {
        let mut s = self.clone();
        for (a, b) in s.num.iter_mut() {
            *a = -&*a;
            *b = -&*b;
        }
        s
    }

    /// Galois conjugation `√3 ↦ −√3`.
    pub fn conj(&self) -> USeries {
        let mut s = self.clone();
        for (_, b) in s.num.iter_mut() {
            *b = -&*b;
        }
        s
    }

    /// Substitution `u ↦ −u`.
    pub fn flip_u(&self) -> USeries {
        let mut s = self.clone();
        for (i, (a, b)) in s.num.iter_mut().enumerate() {
            if (s.val + i as i64).rem_euclid(2) == 1 {
                *a = -&*a;
                *b = -&*b;
            }
        }
        s
    }

    fn add_sub(&self, o: &USeries, sign: bool) -> USeries {
        let prec = self.prec.min(o.prec);
        if o.num.is_empty() {
            return self.truncate(prec);
        }
        if self.num.is_empty() {
            let r = if sign { o.clone() } else { o.neg() };
            return r.truncate(prec);
        }
        let den = self.den.lcm(&o.den);
        let m1 = &den / &self.den;
        let m2 = &den / &o.den;
        let lo = self.val.min(o.val);
        let hi = self.end().max(o.end()).min(prec);
        if hi <= lo {
            return USeries::zero_to(prec);
        }
        let mut num = Vec::with_capacity((hi - lo) as usize);
        for e in lo..hi {
            let mut a = BigInt::zero();
            let mut b = BigInt::zero();
            if e >= self.val && e < self.end() {
                let (x, y) = &self.num[(e - self.val) as usize];
                a += x * &m1;
                b += y * &m1;
            }
            if e >= o.val && e < o.end() {
                let (x, y) = &o.num[(e - o.val) as usize];
                if sign {
                    a += x * &m2;
                    b += y * &m2;
                } else {
                    a -= x * &m2;
                    b -= y * &m2;
                }
            }
            num.push((a, b));
        }
        let mut s = USeries {
            val: lo,
            num,
            den,
            prec,
        };
        s.normalize();
        s
    }

    pub fn add(&self, o: &USeries) -> USeries {
        self.add_sub(o, true)
    }
    pub fn sub(&self, o: &USeries) -> USeries {
        self.add_sub(o, false)
    }

    pub fn mul(&self, o: &USeries) -> USeries {
        let va = self.valuation();
        let vb = o.valuation();
        let prec = sat_add(va, o.prec).min(sat_add(vb, self.prec));
        if self.num.is_empty() || o.num.is_empty() {
            return USeries::zero_to(prec);
        }
        let val = self.val + o.val;
        let len = (self.num.len() + o.num.len() - 1) as i64;
        let len = if prec < INF { len.min(prec - val).max(0) } else { len } as usize;
        let mut num = vec![(BigInt::zero(), BigInt::zero()); len];
        let three = BigInt::from(3);
        for (i, (a1, b1)) in self.num.iter().enumerate() {
            if i >= len {
                break;
            }
            let b1z = b1.is_zero();
            for (j, (a2, b2)) in o.num.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                let slot = &mut num[k];
                slot.0 += a1 * a2;
                if !b1z && !b2.is_zero() {
                    slot.0 += &three * b1 * b2;
                }
                if !b2.is_zero() {
                    slot.1 += a1 * b2;
                }
                if !b1z {
                    slot.1 += b1 * a2;
                }
            }
        }
        let mut s = USeries {
            val,
            num,
            den: &self.den * &o.den,
            prec,
        };
        s.normalize();
        s
    }

    pub fn scale(&self, q: &Q3) -> USeries {
        self.mul(&USeries::constant(q))
    }
    pub fn scale_rat(&self, r: &Rat) -> USeries {
        self.mul(&USeries::from_rat(r))
    }
    pub fn scale_int(&self, n: i64) -> USeries {
        self.mul(&USeries::from_int(n))
    }
    /// Multiply by `u^k`.
    pub fn shift(&self, k: i64) -> USeries {
        let mut s = self.clone();
        if !s.num.is_empty() {
            s.val += k;
        }
        s.prec = sat_add(s.prec, k);
        s
    }

    /// Multiplicative inverse.  The relative precision is preserved; an exact
    /// series with more than one term has no finite inverse and must be
    /// truncated first.
    pub fn inv(&self) -> Result<USeries, ExactError> {
        if self.num.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let v = self.val;
        let a0 = self.coeff(v).inv()?;
        if self.num.len() == 1 && self.is_exact() {
            return Ok(USeries::monomial(&a0, -v));
        }
        if self.is_exact() {
            return Err(ExactError::Domain(
                "inverse of an exact non-monomial series needs a truncation order".into(),
            ));
        }
        let r = self.prec - v;
        // Newton iteration b ← b(2 − ab) on the normalized series u^{-v}·self.
        let a = self.shift(-v).as_exact();
        let mut b = USeries::constant(&a0);
        let mut k = 1i64;
        let two = USeries::from_int(2);
        while k < r {
            k = (2 * k).min(r);
            let ab = a.truncate(k).mul(&b).as_exact().truncate(k).as_exact();
            b = b.mul(&two.sub(&ab)).truncate(k).as_exact();
        }
        let mut res = b.shift(-v);
        res.prec = r - v;
        res.normalize();
        Ok(res)
    }

    pub fn div(&self, o: &USeries) -> Result<USeries, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Principal square root (leading coefficient with positive rational part).
    pub fn sqrt(&self) -> Result<USeries, ExactError> {
        if self.num.is_empty() {
            if self.prec >= INF {
                return Ok(USeries::zero());
            }
            return Err(ExactError::NotASquare("O(u^p)".into()));
        }
        let v = self.val;
        if v.rem_euclid(2) != 0 {
            return Err(ExactError::NotASquare(format!("u^{v}")));
        }
        let s0 = self.coeff(v).sqrt()?;
        if self.num.len() == 1 && self.is_exact() {
            return Ok(USeries::monomial(&s0, v / 2));
        }
        if self.is_exact() {
            return Err(ExactError::Domain(
                "square root of an exact non-monomial series needs a truncation order".into(),
            ));
        }
        let r = self.prec - v;
        let a = self.shift(-v).as_exact();
        let mut s = USeries::constant(&s0);
        let half = USeries::from_rat(&rat(1, 2));
        let mut k = 1i64;
        while k < r {
            k = (2 * k).min(r);
            let sk = s.truncate(k);
            let q = a.truncate(k).mul(&sk.inv()?).as_exact();
            s = s.as_exact().add(&q).mul(&half).truncate(k).as_exact();
        }
        let mut res = s.shift(v / 2);
        res.prec = r + v / 2;
        res.normalize();
        Ok(res)
    }

    pub fn pow(&self, n: i64) -> Result<USeries, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut base = self.clone();
        let mut acc = USeries::one();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// All coefficients have zero surd part.
    pub fn is_surd_free(&self) -> bool {
        self.num.iter().all(|(_, b)| b.is_zero())
    }
    /// No odd powers of `u`.
    pub fn is_even_in_u(&self) -> bool {
        self.num
            .iter()
            .enumerate()
            .all(|(i, c)| (self.val + i as i64).rem_euclid(2) == 0 || (c.0.is_zero() && c.1.is_zero()))
    }

    /// Checks that the series is a rational power series in `t` (surd-free,
    /// even in `u`, no negative powers).
    pub fn assert_rational_in_t(&self) -> Result<(), ExactError> {
        if !self.is_surd_free() {
            return Err(ExactError::Domain(format!("series has a sqrt3 part: {self}")));
        }
        if !self.is_even_in_u() {
            return Err(ExactError::Domain(format!("series has odd powers of u: {self}")));
        }
        if !self.num.is_empty() && self.val < 0 {
            return Err(ExactError::Domain(format!("series has negative powers of u: {self}")));
        }
        Ok(())
    }

    /// Rational coefficients of `t^0 … t^q_max` after checking rationality.
    pub fn t_coeffs(&self, q_max: usize) -> Result<Vec<Rat>, ExactError> {
        self.assert_rational_in_t()?;
        let need = 2 * q_max as i64;
        if need >= self.prec {
            return Err(ExactError::Precision {
                needed: need,
                known: self.prec,
            });
        }
        Ok((0..=q_max).map(|q| self.coeff(2 * q as i64).rational_part).collect())
    }

    /// Coefficient strings `"p/q"` (or `"p/q + r/s*sqrt3"`) for `u^0 … u^(prec−1)`
    /// (at most `max_len` of them), starting at `min(valuation, 0)`.
    pub fn coeff_strings(&self, max_len: usize) -> Vec<String> {
        let lo = self.valuation().min(0);
        let hi = self.prec.min(lo + max_len as i64);
        (lo..hi).map(|e| self.coeff(e).to_string()).collect()
    }
}

impl fmt::Display for USeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (e, q)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if q.is_rational() {
                write!(f, "{q}")?;
            } else {
                write!(f, "({q})")?;
            }
            match e {
                0 => {}
                1 => write!(f, "*u")?,
                _ => write!(f, "*u^{e}")?,
            }
        }
        if self.prec < INF {
            write!(f, " + O(u^{})", self.prec)?;
        }
        Ok(())
    }
}

impl Coeff for USeries {
    fn czero() -> Self {
        USeries::zero()
    }
    fn cone() -> Self {
        USeries::one()
    }
    fn cfrom_rat(r: &Rat) -> Self {
        USeries::from_rat(r)
    }
    fn is_exact_zero(&self) -> bool {
        self.num.is_empty() && self.prec >= INF
    }
    fn is_known_zero(&self) -> bool {
        self.num.is_empty()
    }
    fn cadd(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn csub(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn cmul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn cneg(&self) -> Self {
        self.neg()
    }
    fn cinv(&self) -> Result<Self, ExactError> {
        self.inv()
    }
    fn csqrt(&self) -> Result<Self, ExactError> {
        self.sqrt()
    }
}

// ---------------------------------------------------------------------------
// Generic Laurent series
// ---------------------------------------------------------------------------

/// Truncated Laurent series `Σ_{e ≥ val} c_e v^e + O(v^prec)` with coefficients
/// in a [`Coeff`] ring.  Coefficients between the stored ones and `prec` are
/// known zeros.  Only *exact* zeros are stripped during normalization; a
/// coefficient that merely vanishes to its own precision is kept (use
/// [`Laurent::assume_valuation`] to discard structurally vanishing terms).
#[derive(Clone, Debug)]
pub struct Laurent<C> {
    val: i64,
    coeffs: Vec<C>,
    prec: i64,
}

impl<C: Coeff> Laurent<C> {
    pub fn new(val: i64, coeffs: Vec<C>, prec: i64) -> Self {
        let mut s = Laurent { val, coeffs, prec };
        s.normalize();
        s
    }
    pub fn exact(val: i64, coeffs: Vec<C>) -> Self {
        Laurent::new(val, coeffs, INF)
    }
    pub fn zero() -> Self {
        Laurent {
            val: 0,
            coeffs: vec![],
            prec: INF,
        }
    }
    pub fn zero_to(prec: i64) -> Self {
        Laurent {
            val: 0,
            coeffs: vec![],
            prec,
        }
    }
    pub fn one() -> Self {
        Laurent::monomial(C::cone(), 0)
    }
    pub fn constant(c: C) -> Self {
        Laurent::monomial(c, 0)
    }
    pub fn monomial(c: C, e: i64) -> Self {
        Laurent::exact(e, vec![c])
    }
    /// The variable itself.
    pub fn var() -> Self {
        Laurent::monomial(C::cone(), 1)
    }

    fn normalize(&mut self) {
        if self.prec < INF {
            let keep = (self.prec - self.val).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_exact_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.val += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }
    pub fn valuation(&self) -> i64 {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            self.val
        }
    }
    pub fn end(&self) -> i64 {
        self.val + self.coeffs.len() as i64
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn coeff(&self, e: i64) -> C {
        if e < self.val || e >= self.end() {
            C::czero()
        } else {
            self.coeffs[(e - self.val) as usize].clone()
        }
    }
    pub fn coeff_ref(&self, e: i64) -> Option<&C> {
        if e < self.val || e >= self.end() {
            None
        } else {
            Some(&self.coeffs[(e - self.val) as usize])
        }
    }
    pub fn try_coeff(&self, e: i64) -> Result<C, ExactError> {
        if e >= self.prec {
            Err(ExactError::Precision {
                needed: e,
                known: self.prec,
            })
        } else {
            Ok(self.coeff(e))
        }
    }
    /// Stored terms `(exponent, coefficient)` (including known-zero ones).
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn truncate(&self, p: i64) -> Self {
        let mut s = self.clone();
        s.prec = s.prec.min(p);
        s.normalize();
        s
    }

    /// Declares that every coefficient below `v` vanishes (as is known for
    /// structural reasons); errors if a stored coefficient below `v` is not
    /// zero to its known precision.
    pub fn assume_valuation(&self, v: i64) -> Result<Self, ExactError> {
        let mut s = self.clone();
        while !s.coeffs.is_empty() && s.val < v {
            if !s.coeffs[0].is_known_zero() {
                return Err(ExactError::Domain(format!(
                    "coefficient of degree {} does not vanish",
                    s.val
                )));
            }
            s.coeffs.remove(0);
            s.val += 1;
        }
        if s.coeffs.is_empty() {
            s.val = 0;
        }
        Ok(s)
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Laurent<D> {
        Laurent::new(self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }

    pub fn neg(&self) -> Self {
        Laurent {
            val: self.val,
            coeffs: self.coeffs.iter().map(|c| c.cneg()).collect(),
            prec: self.prec,
        }
    }

    fn add_sub(&self, o: &Self, sign: bool) -> Self {
        let prec = self.prec.min(o.prec);
        if o.coeffs.is_empty() {
            return self.truncate(prec);
        }
        if self.coeffs.is_empty() {
            let r = if sign { o.clone() } else { o.neg() };
            return r.truncate(prec);
        }
        let lo = self.val.min(o.val);
        let hi = self.end().max(o.end()).min(prec);
        let mut coeffs = Vec::with_capacity((hi - lo).max(0) as usize);
        for e in lo..hi {
            let a = self.coeff_ref(e);
            let b = o.coeff_ref(e);
            let c = match (a, b) {
                (Some(a), Some(b)) => {
                    if sign {
                        a.cadd(b)
                    } else {
                        a.csub(b)
                    }
                }
                (Some(a), None) => a.clone(),
                (None, Some(b)) => {
                    if sign {
                        b.clone()
                    } else {
                        b.cneg()
                    }
                }
                (None, None) => C::czero(),
            };
            coeffs.push(c);
        }
        Laurent::new(lo, coeffs, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        self.add_sub(o, true)
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add_sub(o, false)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let va = self.valuation();
        let vb = o.valuation();
        let prec = sat_add(va, o.prec).min(sat_add(vb, self.prec));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Laurent::zero_to(prec);
        }
        let val = self.val + o.val;
        let len = (self.coeffs.len() + o.coeffs.len() - 1) as i64;
        let len = if prec < INF { len.min(prec - val).max(0) } else { len } as usize;
        let mut coeffs: Vec<Option<C>> = vec![None; len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let k = i + j;
                if k >= len {
                    break;
                }
                if b.is_exact_zero() {
                    continue;
                }
                let p = a.cmul(b);
                coeffs[k] = Some(match coeffs[k].take() {
                    Some(acc) => acc.cadd(&p),
                    None => p,
                });
            }
        }
        Laurent::new(
            val,
            coeffs.into_iter().map(|c| c.unwrap_or_else(C::czero)).collect(),
            prec,
        )
    }

    pub fn scale(&self, c: &C) -> Self {
        Laurent::new(self.val, self.coeffs.iter().map(|x| x.cmul(c)).collect(), self.prec)
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        let mut s = self.clone();
        if !s.coeffs.is_empty() {
            s.val += k;
        }
        s.prec = sat_add(s.prec, k);
        s
    }

    /// Inverse, requiring an invertible leading coefficient.  Exact series with
    /// more than one term must be truncated first.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.coeffs.is_empty() {
            return Err(ExactError::DivisionByZero);
        }
        let v = self.val;
        let a0inv = self.coeffs[0].cinv()?;
        if self.coeffs.len() == 1 && self.prec >= INF {
            return Ok(Laurent::monomial(a0inv, -v));
        }
        if self.prec >= INF {
            return Err(ExactError::Domain(
                "inverse of an exact non-monomial series needs a truncation order".into(),
            ));
        }
        let r = (self.prec - v) as usize;
        let mut b: Vec<C> = Vec::with_capacity(r);
        b.push(a0inv.clone());
        for n in 1..r {
            let mut acc: Option<C> = None;
            for i in 1..=n.min(self.coeffs.len() - 1) {
                let a = &self.coeffs[i];
                if a.is_exact_zero() || b[n - i].is_exact_zero() {
                    continue;
                }
                let p = a.cmul(&b[n - i]);
                acc = Some(match acc {
                    Some(x) => x.cadd(&p),
                    None => p,
                });
            }
            b.push(match acc {
                Some(x) => x.cmul(&a0inv).cneg(),
                None => C::czero(),
            });
        }
        Ok(Laurent::new(-v, b, self.prec - 2 * v))
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    /// Square root with leading coefficient given by the coefficient ring's
    /// principal square root.
    pub fn sqrt(&self) -> Result<Self, ExactError> {
        if self.coeffs.is_empty() {
            return Ok(Laurent::zero_to(self.prec / 2));
        }
        let v = self.val;
        if v.rem_euclid(2) != 0 {
            return Err(ExactError::NotASquare(format!("odd valuation {v}")));
        }
        let s0 = self.coeffs[0].csqrt()?;
        if self.coeffs.len() == 1 && self.prec >= INF {
            return Ok(Laurent::monomial(s0, v / 2));
        }
        if self.prec >= INF {
            return Err(ExactError::Domain(
                "square root of an exact non-monomial series needs a truncation order".into(),
            ));
        }
        let r = (self.prec - v) as usize;
        let inv2s0 = s0.cadd(&s0).cinv()?;
        let mut s: Vec<C> = vec![s0];
        for n in 1..r {
            let mut acc = self.coeff(v + n as i64);
            for i in 1..n {
                acc = acc.csub(&s[i].cmul(&s[n - i]));
            }
            s.push(acc.cmul(&inv2s0));
        }
        Ok(Laurent::new(v / 2, s, v / 2 + r as i64))
    }

    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = Laurent::one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .iter()
            .map(|(e, c)| c.cmul(&C::cfrom_rat(&rat_int(e))))
            .collect::<Vec<_>>();
        let prec = if self.prec >= INF { INF } else { self.prec - 1 };
        if coeffs.is_empty() {
            return Laurent::zero_to(prec);
        }
        Laurent::new(self.val - 1, coeffs, prec)
    }

    /// Composition `self(g)` for `g` of positive valuation.
    pub fn compose(&self, g: &Self) -> Result<Self, ExactError> {
        let vg = g.valuation();
        if g.coeffs.is_empty() || vg < 1 {
            return Err(ExactError::Domain("inner series must have positive valuation".into()));
        }
        if self.coeffs.is_empty() {
            return Ok(Laurent::zero_to(sat_mul(self.prec, vg)));
        }
        let fv = self.val;
        let grel = if g.prec >= INF { INF } else { g.prec - vg };
        let target = sat_mul(self.prec, vg).min(sat_add(sat_mul(fv, vg), grel));
        let gt = if target < INF {
            g.truncate(target + vg)
        } else {
            g.clone()
        };
        // Horner on Σ f_{fv+i} g^i, then multiply by g^fv.
        let mut acc: Laurent<C> = Laurent::zero();
        let top = if target < INF {
            // terms with (fv+i)·vg ≥ target do not contribute
            let max_i = ((target - fv * vg) + vg - 1) / vg;
            (self.coeffs.len() as i64).min(max_i.max(0)) as usize
        } else {
            self.coeffs.len()
        };
        for i in (0..top).rev() {
            acc = acc.mul(&gt).add(&Laurent::constant(self.coeffs[i].clone()));
            if target < INF {
                acc = acc.truncate(target - fv * vg);
            }
        }
        let mut res = acc.mul(&gt.pow(fv)?);
        let tp = if self.prec < INF { sat_mul(self.prec, vg) } else { INF };
        res = res.truncate(target.min(tp));
        Ok(res)
    }

    /// Compositional inverse of a series `g = g₁v + g₂v² + …` with invertible
    /// `g₁`, to the relative precision of `g`.
    pub fn reversion(&self) -> Result<Self, ExactError> {
        if self.valuation() != 1 {
            return Err(ExactError::Domain("reversion needs valuation one".into()));
        }
        let g1inv = self.coeffs[0].cinv()?;
        let p = self.prec;
        if p >= INF {
            return Err(ExactError::Domain(
                "reversion of an exact series needs a truncation order".into(),
            ));
        }
        let v = Laurent::<C>::var();
        let mut h = v.scale(&g1inv).truncate(p);
        for _ in 1..p {
            let gh = self.compose(&h)?;
            let corr = gh.sub(&v).scale(&g1inv);
            h = h.sub(&corr).truncate(p);
        }
        Ok(h)
    }
}

impl Laurent<USeries> {
    /// Smallest `u`-precision among the coefficients of degree `< up_to`.
    pub fn min_coeff_prec(&self, up_to: i64) -> i64 {
        self.iter()
            .filter(|(e, _)| *e < up_to)
            .map(|(_, c)| c.prec())
            .min()
            .unwrap_or(INF)
    }
    /// Truncate every coefficient to `u`-precision `p`.
    pub fn truncate_coeffs(&self, p: i64) -> Self {
        self.map(|c| c.truncate(p))
    }
    pub fn scale_int(&self, n: i64) -> Self {
        self.scale(&USeries::from_int(n))
    }
}

/// Laurent polynomial in the curve coordinate `z` with [`USeries`] coefficients.
pub type ZPoly = Laurent<USeries>;

/// Where a residue is taken.
#[derive(Clone, Debug)]
pub enum Point {
    Infinity,
    /// A finite point together with the maximal pole order to expect there.
    Finite(USeries, usize),
}

/// A rational function of `z` with [`USeries`] coefficients: `num(z)/den(z)`.
#[derive(Clone, Debug)]
pub struct RationalForm {
    pub num: ZPoly,
    pub den: ZPoly,
}

impl RationalForm {
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(RationalForm { num, den })
    }
    pub fn poly(p: ZPoly) -> Self {
        RationalForm {
            num: p,
            den: ZPoly::one(),
        }
    }
    pub fn add(&self, o: &Self) -> Self {
        RationalForm {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        RationalForm {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    pub fn mul(&self, o: &Self) -> Self {
        RationalForm {
            num: self.num.mul(&o.num),
            den: self.den.mul(&o.den),
        }
    }
    /// `d/dz`.
    pub fn derivative(&self) -> Self {
        RationalForm {
            num: self
                .num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            den: self.den.mul(&self.den),
        }
    }

    /// Value at a point `z0` (a series in `u`), requiring `den(z0)` invertible.
    pub fn eval(&self, z0: &USeries) -> Result<USeries, ExactError> {
        let n = eval_zpoly(&self.num, z0)?;
        let d = eval_zpoly(&self.den, z0)?;
        n.div(&d)
    }

    /// Laurent expansion at `z = p + ζ` to `ζ`-precision `zeta_prec`, allowing a
    /// pole of order at most `pole_bound` (vanishing leading terms of the
    /// denominator up to that order are discarded as structural zeros).
    pub fn expand_at(&self, p: &USeries, zeta_prec: i64, pole_bound: usize) -> Result<Laurent<USeries>, ExactError> {
        let margin = pole_bound as i64 + 1;
        let n = zpoly_at(&self.num, p, zeta_prec + margin + self.den.end())?;
        let d = zpoly_at(&self.den, p, zeta_prec + margin + self.den.end())?;
        let dv = d.iter().take_while(|(_, c)| c.is_known_zero()).count();
        if dv > pole_bound {
            return Err(ExactError::PoleOrder { bound: pole_bound });
        }
        let d = d.assume_valuation(d.val + dv as i64)?;
        let d = d.truncate(d.valuation() + zeta_prec + margin);
        Ok(n.div(&d)?.truncate(zeta_prec))
    }

    /// Expansion at `z = ∞` in the variable `y = 1/z`, to `y`-precision `y_prec`.
    pub fn expand_at_infinity(&self, y_prec: i64) -> Result<Laurent<USeries>, ExactError> {
        let n = reflect(&self.num);
        let d = reflect(&self.den);
        let dlen = (d.end() - d.valuation()).max(1);
        let d = d.truncate(d.valuation() + y_prec + dlen + n.end().abs() + 2);
        Ok(n.div(&d)?.truncate(y_prec))
    }

    /// Residue of `multiplier(z)·f(z)·dz` at the given point.  At infinity the
    /// convention is `Res_{z=∞} g dz = −[z^{-1}] g`.
    pub fn z_residue(&self, point: &Point, multiplier: &ZPoly) -> Result<USeries, ExactError> {
        let g = RationalForm {
            num: self.num.mul(multiplier),
            den: self.den.clone(),
        };
        match point {
            Point::Infinity => {
                let e = g.expand_at_infinity(2)?;
                Ok(e.coeff(1).neg())
            }
            Point::Finite(p, bound) => {
                let e = g.expand_at(p, 0, *bound)?;
                Ok(e.coeff(-1))
            }
        }
    }
}

/// `z ↦ 1/z` on exponents: a Laurent polynomial in `z` becomes one in `y`.
fn reflect(p: &ZPoly) -> ZPoly {
    if p.is_zero() {
        return ZPoly::zero();
    }
    let mut coeffs: Vec<USeries> = p.iter().map(|(_, c)| c.clone()).collect();
    coeffs.reverse();
    ZPoly::exact(-(p.end() - 1), coeffs)
}

/// Evaluates a Laurent polynomial in `z` at `z0`.
pub fn eval_zpoly(p: &ZPoly, z0: &USeries) -> Result<USeries, ExactError> {
    let mut acc = USeries::zero();
    let mut have_neg = false;
    for (e, _) in p.iter() {
        if e < 0 {
            have_neg = true;
        }
    }
    let zinv = if have_neg { Some(z0.inv()?) } else { None };
    for (e, c) in p.iter() {
        if c.is_exact_zero() {
            continue;
        }
        let pw = if e >= 0 {
            z0.pow(e)?
        } else {
            zinv.as_ref().unwrap().pow(-e)?
        };
        acc = acc.add(&c.mul(&pw));
    }
    Ok(acc)
}

/// Expansion of a Laurent polynomial in `z` at `z = p + ζ`, to `ζ`-precision `zp`.
pub fn zpoly_at(poly: &ZPoly, p: &USeries, zp: i64) -> Result<Laurent<USeries>, ExactError> {
    let shifted = Laurent::new(0, vec![p.clone(), USeries::one()], INF);
    let mut acc: Laurent<USeries> = Laurent::zero();
    let mut inv: Option<Laurent<USeries>> = None;
    for (e, c) in poly.iter() {
        if c.is_exact_zero() {
            continue;
        }
        let pw = if e >= 0 {
            shifted.pow(e)?.truncate(zp)
        } else {
            if inv.is_none() {
                inv = Some(shifted.truncate(zp.max(1) + 1).inv()?);
            }
            inv.as_ref().unwrap().pow(-e)?.truncate(zp)
        };
        acc = acc.add(&pw.scale(c));
    }
    Ok(acc.truncate(zp))
}

/// Binomial coefficient `C(n, k)` as a big integer (0 outside `0 ≤ k ≤ n`).
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, b| a * BigInt::from(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> USeries {
        USeries::t()
    }

    /// Binomial series (1 + x)^(1/2) coefficients, independent of `sqrt`.
    fn binom_half(n: usize) -> Vec<Rat> {
        let mut out = vec![Rat::one()];
        let mut c = Rat::one();
        for k in 1..n {
            c = c * (rat(1, 2) - rat_int(k as i64 - 1)) / rat_int(k as i64);
            out.push(c.clone());
        }
        out
    }

    #[test]
    fn q3_field_ops() {
        let a = Q3::new(rat(1, 2), rat(3, 1));
        let b = Q3::new(rat(-2, 3), rat(1, 5));
        let prod = &a * &b;
        assert_eq!(&(&prod * &b.inv().unwrap()), &a);
        let s = Q3::from_int(3).sqrt().unwrap();
        assert_eq!(s, Q3::sqrt3());
        let sq = &a * &a;
        assert_eq!(sq.sqrt().unwrap(), a);
        assert!(Q3::from_int(2).sqrt().is_err());
        assert_eq!(Q3::new(rat(1, 2), rat(-1, 3)).to_string(), "1/2 + -1/3*sqrt3");
    }

    #[test]
    fn inverse_of_one_minus_12t() {
        let a = USeries::one().sub(&t().scale_int(12)).truncate(20);
        let p = a.mul(&a.inv().unwrap());
        assert_eq!(p, USeries::one().truncate(20));
    }

    #[test]
    fn sqrt_one_minus_12t_matches_binomial_series() {
        let a = USeries::one().sub(&t().scale_int(12)).truncate(10);
        let s = a.sqrt().unwrap();
        let expect: Vec<Rat> = binom_half(5)
            .into_iter()
            .enumerate()
            .map(|(k, c)| c * rat_int(-12).pow(k as i32))
            .collect();
        assert_eq!(s.t_coeffs(4).unwrap(), expect);
        assert_eq!(
            expect,
            vec![rat_int(1), rat_int(-6), rat_int(-18), rat_int(-108), rat_int(-810)]
        );
    }

    #[test]
    fn division_shifting_valuation() {
        // (1 − √(1−12t))/(6t) = 1 + 3t + 18t² + 135t³ + …
        let s = USeries::one().sub(&t().scale_int(12)).truncate(12).sqrt().unwrap();
        let q = USeries::one().sub(&s).div(&t().scale_int(6)).unwrap();
        assert_eq!(q.prec(), 10);
        let got = q.t_coeffs(3).unwrap();
        assert_eq!(got, vec![rat_int(1), rat_int(3), rat_int(18), rat_int(135)]);
    }

    #[test]
    fn negative_valuation_roundtrip() {
        let b = USeries::monomial(&Q3::sqrt3(), 1)
            .add(&USeries::monomial(&Q3::from_int(2), 3))
            .truncate(12);
        let bi = b.inv().unwrap();
        assert_eq!(bi.valuation(), -1);
        assert_eq!(bi.prec(), 10);
        assert_eq!(b.mul(&bi), USeries::one().truncate(11));
    }

    #[test]
    fn residue_at_infinity_sign() {
        let f = RationalForm::new(ZPoly::one(), ZPoly::var()).unwrap();
        let r = f.z_residue(&Point::Infinity, &ZPoly::one()).unwrap();
        assert_eq!(r, USeries::from_int(-1));
        let g = RationalForm::new(
            ZPoly::one(),
            ZPoly::exact(0, vec![USeries::from_int(-1), USeries::one()])
                .pow(2)
                .unwrap(),
        )
        .unwrap();
        let r = g.z_residue(&Point::Finite(USeries::one(), 2), &ZPoly::one()).unwrap();
        assert!(r.is_zero());
        let h = RationalForm::new(
            ZPoly::one(),
            ZPoly::exact(0, vec![USeries::from_int(-1), USeries::one()]),
        )
        .unwrap();
        let r = h.z_residue(&Point::Finite(USeries::one(), 1), &ZPoly::var()).unwrap();
        assert_eq!(r, USeries::one());
    }

    #[test]
    fn reversion_of_reversion() {
        let g: Laurent<Q3> = Laurent::new(
            1,
            vec![Q3::from_int(2), Q3::from_int(1), Q3::new(rat(1, 3), rat(1, 1))],
            9,
        );
        let h = g.reversion().unwrap();
        let id = g.compose(&h).unwrap();
        assert_eq!(id.truncate(9).coeff(1), Q3::one());
        for e in 2..9 {
            assert!(id.coeff(e).is_zero(), "e={e}");
        }
        let back = h.reversion().unwrap();
        for e in 1..9 {
            assert_eq!(back.coeff(e), g.coeff(e));
        }
    }

    #[test]
    fn laurent_sqrt_and_inverse() {
        let a: Laurent<Q3> = Laurent::new(2, vec![Q3::from_int(4), Q3::from_int(1), Q3::from_int(7)], 12);
        let s = a.sqrt().unwrap();
        let sq = s.mul(&s);
        for e in 2..12 {
            assert_eq!(sq.coeff(e), a.coeff(e), "e={e}");
        }
        let i = a.inv().unwrap();
        let one = a.mul(&i);
        assert_eq!(one.coeff(0), Q3::one());
        for e in 1..10 {
            assert!(one.coeff(e).is_zero());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
