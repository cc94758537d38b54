//! Closed formulas for quadrangulations used as independent cross-checks.
//!
//! * `φ_m = c^{2m}(1 + (m−1)√(1−12t))/(1−12t)` and the genus-one series
//!   `F^{[1]}_{2m+2} = (2m+1)!/(6·m!²)·φ_m`,
//!   `F̌^{[1]}_{2m} = (3m)!·t^{m+1}/(4·m!(2m−1)!)·φ_{3m+1}`;
//! * the one-point genus-one forms of both curves as rational functions of `z`;
//! * the planar fully simple count `α(Q,L,n)·Π ε(k_i)`;
//! * `H_{1,1} = c⁶t`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::curve::c_series;
use crate::exact::{binomial, factorial, rat_to_string, ExactError, Rat, RationalForm, USeries, ZPoly, Q3};

/// Outcome of comparing a closed formula with another computation.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormReport {
    pub formula: String,
    pub target: String,
    /// `u`-order to which the two sides agree (`prec` of the comparison on success).
    pub agreement_order: i64,
    pub passed: bool,
    pub note: Option<String>,
}

fn sqrt_1_12t(order: i64) -> Result<USeries, ExactError> {
    USeries::one().sub(&USeries::t().scale_int(12)).truncate(order).sqrt()
}

/// `c²` to `u`-precision `order`.
pub fn c_squared(order: i64) -> Result<USeries, ExactError> {
    let c = c_series(order)?;
    Ok(c.mul(&c).truncate(order))
}

/// `φ_m` to `u`-precision `order`.
pub fn phi(m: u32, order: i64) -> Result<USeries, ExactError> {
    let s = sqrt_1_12t(order)?;
    let c2m = c_squared(order)?.pow(m as i64)?;
    let num = USeries::one().add(&s.scale_int(m as i64 - 1));
    let den = USeries::one().sub(&USeries::t().scale_int(12)).truncate(order);
    Ok(c2m.mul(&num).div(&den)?.truncate(order))
}

/// `F^{[1]}_{2(m+1)} = (2m+1)!/(6·m!²)·φ_m`.
pub fn genus1_ordinary(m: u32, order: i64) -> Result<USeries, ExactError> {
    let num = factorial(2 * m as u64 + 1);
    let den = BigInt::from(6) * factorial(m as u64).pow(2);
    Ok(phi(m, order)?.scale_rat(&Rat::new(num, den)))
}

/// `F̌^{[1]}_{2m} = (3m)!·t^{m+1}/(4·m!(2m−1)!)·φ_{3m+1}`, `m ≥ 1`.
pub fn genus1_fullysimple(m: u32, order: i64) -> Result<USeries, ExactError> {
    if m == 0 {
        return Err(ExactError::Domain(
            "the fully simple genus-one formula needs m ≥ 1".into(),
        ));
    }
    let num = factorial(3 * m as u64);
    let den = BigInt::from(4) * factorial(m as u64) * factorial(2 * m as u64 - 1);
    let p = phi(3 * m + 1, order)?;
    Ok(p.shift(2 * (m as i64 + 1))
        .truncate(order)
        .scale_rat(&Rat::new(num, den)))
}

/// `H_{1,1} = c⁶ t`.
pub fn h11_closed(order: i64) -> Result<USeries, ExactError> {
    let c = c_series(order)?;
    Ok(c.pow(6)?.mul(&USeries::t()).truncate(order))
}

/// Coefficients `r_{m,i}` of `c^{2m}/(1−12t) = Σ_i r_{m,i}(3t)^i`, read off the series.
pub fn r_series(m: u32, i_max: usize) -> Result<Vec<Rat>, ExactError> {
    let order = 2 * i_max as i64 + 2;
    let den = USeries::one().sub(&USeries::t().scale_int(12)).truncate(order);
    let s = c_squared(order)?.pow(m as i64)?.div(&den)?;
    let tc = s.t_coeffs(i_max)?;
    Ok(tc
        .into_iter()
        .enumerate()
        .map(|(i, c)| c / Rat::from_integer(BigInt::from(3).pow(i as u32)))
        .collect())
}

/// The printed explicit formula
/// `r_{m,i} = 2^{m+2i} − ½ Σ_{j=0}^{m/2} (−1)^j C(m−j−1, j) C(2(m+i−j), m+i−j)`.
pub fn r_explicit(m: u32, i: u32) -> Rat {
    let (m, i) = (m as i64, i as i64);
    let mut sum = BigInt::zero();
    for j in 0..=(m / 2) {
        let term = binomial(m - j - 1, j) * binomial(2 * (m + i - j), m + i - j);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Rat::from_integer(BigInt::from(2).pow((m + 2 * i) as u32)) - Rat::new(sum, BigInt::from(2))
}

/// Compares the printed `r_{m,i}` formula with the series coefficients; any
/// discrepancy is reported, not asserted.
pub fn r_report(m_max: u32, i_max: usize) -> Result<Vec<ClosedFormReport>, ExactError> {
    let mut out = vec![];
    for m in 0..=m_max {
        let direct = r_series(m, i_max)?;
        let mut bad = vec![];
        for (i, d) in direct.iter().enumerate() {
            let e = r_explicit(m, i as u32);
            if &e != d {
                bad.push(format!(
                    "i={i}: formula {} vs series {}",
                    rat_to_string(&e),
                    rat_to_string(d)
                ));
            }
        }
        out.push(ClosedFormReport {
            formula: format!("r_{{{m},i}} explicit binomial sum"),
            target: "coefficients of c^{2m}/(1-12t)".into(),
            agreement_order: if bad.is_empty() { 2 * i_max as i64 + 2 } else { 0 },
            passed: bad.is_empty(),
            note: if bad.is_empty() { None } else { Some(bad.join("; ")) },
        });
    }
    Ok(out)
}

/// `ε(k)`: `(3l)!/(l!(2l−1)!)` for `k = 2l`, `√3·(3l+1)!/(l!(2l)!)` for `k = 2l+1`.
pub fn epsilon(k: u32) -> Q3 {
    let l = (k / 2) as u64;
    if k.is_multiple_of(2) {
        let r = Rat::new(factorial(3 * l), factorial(l) * factorial(2 * l - 1));
        Q3::from_rat(r)
    } else {
        let r = Rat::new(factorial(3 * l + 1), factorial(l) * factorial(2 * l));
        Q3::new(Rat::zero(), r)
    }
}

/// `α(Q, L, n) = 3^{Q−L/2}(e−1)!/(v!(L+Q)!)` with `e = L/2 + 2Q` edges and
/// `v = Q − L/2 − n + 2` internal vertices; `None` when `v < 0`.
pub fn alpha(q: u32, total: u32, n: u32) -> Option<Rat> {
    debug_assert!(total.is_multiple_of(2));
    let half = total as i64 / 2;
    let v = q as i64 - half - n as i64 + 2;
    if v < 0 {
        return None;
    }
    let e = half + 2 * q as i64;
    let p = q as i64 - half;
    let three = if p >= 0 {
        Rat::from_integer(BigInt::from(3).pow(p as u32))
    } else {
        Rat::new(BigInt::one(), BigInt::from(3).pow((-p) as u32))
    };
    Some(
        three
            * Rat::new(
                factorial((e - 1) as u64),
                factorial(v as u64) * factorial((total + q) as u64),
            ),
    )
}

/// The printed internal-vertex count `2Q − L − n + 2`, kept for the erratum note.
pub fn printed_vertex_count(q: u32, total: u32, n: u32) -> i64 {
    2 * q as i64 - total as i64 - n as i64 + 2
}

/// Planar fully simple quadrangulations with `Q` quadrangles and the given
/// boundary lengths: `α(Q,L,n)·Π ε(k_i)` (zero for odd `L` or `v < 0`).
pub fn bernardi_fusy(q: u32, lengths: &[u32]) -> Q3 {
    let total: u32 = lengths.iter().sum();
    if total % 2 == 1 || lengths.is_empty() {
        return Q3::zero();
    }
    let Some(a) = alpha(q, total, lengths.len() as u32) else {
        return Q3::zero();
    };
    let mut acc = Q3::from_rat(a);
    for &k in lengths {
        acc = &acc * &epsilon(k);
    }
    assert!(
        acc.is_rational(),
        "an even number of odd lengths gives a rational count"
    );
    acc
}

/// Erratum note on the internal-vertex count, for reports.
pub fn vertex_count_erratum() -> String {
    "internal vertices are v = Q - L/2 - n + 2 (Euler: V = 2 + E - F with E = L/2 + 2Q, F = n + Q, \
     minus L boundary vertices); the printed 2Q - L - n + 2 does not reproduce the tables"
        .to_string()
}

fn zp(coeffs: &[USeries]) -> ZPoly {
    ZPoly::exact(0, coeffs.to_vec())
}

/// `ω_{1,1}/dx` for quadrangulations:
/// `z³(tc⁴z⁴ + (1−5tc⁴)z² + tc⁴) / (c(z²−1)⁵(1−3tc⁴)²)`.
pub fn tori1(order: i64) -> Result<RationalForm, ExactError> {
    let c = c_series(order)?;
    let t = USeries::t();
    let tc4 = t.mul(&c.pow(4)?).truncate(order);
    let z = USeries::zero;
    let num = zp(&[
        z(),
        z(),
        z(),
        tc4.clone(),
        z(),
        USeries::one().sub(&tc4.scale_int(5)),
        z(),
        tc4.clone(),
    ]);
    let k = USeries::one().sub(&tc4.scale_int(3));
    let lead = c.mul(&k).mul(&k).truncate(order);
    let den = zp(&[USeries::from_int(-1), z(), USeries::one()]).pow(5)?.scale(&lead);
    RationalForm::new(num, den)
}

/// `ω̌_{1,1}/dw` for quadrangulations:
/// `3t²c⁹z⁵[(3tc⁴−2)z⁴ + 3tc⁴(9tc⁴−1)z² − 27t³c¹²] / ((3tc⁴ − z²)⁵(1−3tc⁴)²)`.
pub fn tori2(order: i64) -> Result<RationalForm, ExactError> {
    let c = c_series(order)?;
    let t = USeries::t();
    let tc4 = t.mul(&c.pow(4)?).truncate(order);
    let z = USeries::zero;
    let pref = t.mul(&t).mul(&c.pow(9)?).scale_int(3).truncate(order);
    let a4 = tc4.scale_int(3).sub(&USeries::from_int(2));
    let a2 = tc4.scale_int(3).mul(&tc4.scale_int(9).sub(&USeries::one()));
    let a0 = t.pow(3)?.mul(&c.pow(12)?).scale_int(-27).truncate(order);
    let inner = zp(&[a0, z(), a2, z(), a4]);
    let num = inner.mul(&ZPoly::monomial(pref, 5));
    let k = USeries::one().sub(&tc4.scale_int(3));
    let lead = k.mul(&k).truncate(order);
    let den = zp(&[tc4.scale_int(3), z(), USeries::from_int(-1)]).pow(5)?.scale(&lead);
    RationalForm::new(num, den)
}

/// True when every coefficient of the Laurent polynomial vanishes to its known precision.
pub fn zpoly_vanishes(p: &ZPoly) -> bool {
    p.iter().all(|(_, c)| c.is_zero())
}

/// Smallest `u`-precision among the coefficients of a Laurent polynomial in `z`.
pub fn zpoly_prec(p: &ZPoly) -> i64 {
    p.iter()
        .map(|(_, c)| c.prec())
        .min()
        .unwrap_or(crate::exact::INF)
        .min(p.prec())
}

/// Compares two rational forms by cross-multiplication.
pub fn forms_agree(a: &RationalForm, b: &RationalForm) -> (bool, i64) {
    let d = a.num.mul(&b.den).sub(&b.num.mul(&a.den));
    (zpoly_vanishes(&d), zpoly_prec(&d))
}
