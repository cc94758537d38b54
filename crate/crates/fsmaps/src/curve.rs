//! Genus-zero disk spectral curves.
//!
//! For a polynomial potential `V(x) = x²/2 − Σ_d t_d x^d/d` the disk generating
//! function is uniformized by `x(z) = α + γ(z + 1/z)`, where `α, γ` are fixed by
//! `[ζ⁰] V'(x(ζ)) = 0` and `[ζ⁻¹] V'(x(ζ)) = 1/γ`, and `w(z)` is the part of
//! `V'(x(z))` with negative powers of `z`.  The projection `x` is ramified at
//! `z = ±1` with global deck map `z ↦ 1/z`; the projection `w` is ramified at
//! the zeros of `dw`, where only a local deck transformation is available.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{ExactError, Laurent, RationalForm, USeries, ZPoly, INF, Q3};

/// Potential weights `d ↦ t_d`.
#[derive(Clone, Debug, Default)]
pub struct Potential {
    pub weights: BTreeMap<u32, USeries>,
}

impl Potential {
    pub fn gaussian() -> Self {
        Potential::default()
    }
    /// Quadrangulations: `t_4 = t`.
    pub fn quadrangulations() -> Self {
        let mut weights = BTreeMap::new();
        weights.insert(4, USeries::t());
        Potential { weights }
    }
    /// `t_d = r_d · t` for rational `r_d`.
    pub fn scaled(rs: &[(u32, crate::exact::Rat)]) -> Self {
        let weights = rs
            .iter()
            .filter(|(_, r)| !num_traits::Zero::is_zero(r))
            .map(|(d, r)| (*d, USeries::t().scale_rat(r)))
            .collect();
        Potential { weights }
    }
    pub fn is_even(&self) -> bool {
        self.weights.keys().all(|d| d % 2 == 0)
    }
    pub fn max_degree(&self) -> u32 {
        self.weights.keys().copied().max().unwrap_or(2)
    }
}

/// Local deck transformation `ι̂(ζ) = −ζ + Σ_{k≥2} d_k ζ^k` around a branch point.
#[derive(Clone, Debug)]
pub struct LocalDeck {
    pub center: USeries,
    pub series: Laurent<USeries>,
    pub order: i64,
}

/// The solved curve.  `x` and `w` are Laurent polynomials in `z` with
/// coefficients known to `u`-precision `prec`.
#[derive(Clone, Debug)]
pub struct DiskCurve {
    pub potential: Potential,
    pub prec: i64,
    pub alpha: USeries,
    pub gamma: USeries,
    pub x: ZPoly,
    pub w: ZPoly,
}

#[derive(Serialize)]
pub struct CurveJson {
    pub potential: BTreeMap<u32, Vec<String>>,
    pub alpha: Vec<String>,
    pub gamma: Vec<String>,
    pub w_branch: Vec<Vec<String>>,
}

fn x_poly(alpha: &USeries, gamma: &USeries) -> ZPoly {
    ZPoly::exact(-1, vec![gamma.clone(), alpha.clone(), gamma.clone()])
}

/// `V'(x(ζ))` as a Laurent polynomial in `ζ`.
fn vprime(pot: &Potential, x: &ZPoly) -> Result<ZPoly, ExactError> {
    let mut acc = x.clone();
    for (d, td) in &pot.weights {
        acc = acc.sub(&x.pow(*d as i64 - 1)?.scale(td));
    }
    Ok(acc)
}

/// Solves for `α`, `γ` and `w(z)` to `u`-precision `order`.
pub fn solve_disk_curve(potential: &Potential, order: i64) -> Result<DiskCurve, ExactError> {
    if order < 1 {
        return Err(ExactError::Domain("order must be positive".into()));
    }
    for (d, td) in &potential.weights {
        if *d == 0 || td.valuation() < 1 {
            return Err(ExactError::Domain(format!(
                "weight t_{d} must be formal (positive u-valuation)"
            )));
        }
    }
    let mut alpha = USeries::zero_to(order);
    let mut gamma = USeries::one().truncate(order);
    // Each pass gains at least one order in u.
    for _ in 0..=order {
        let x = x_poly(&alpha, &gamma);
        let mut a_new = USeries::zero_to(order);
        let mut s = USeries::zero_to(order);
        for (d, td) in &potential.weights {
            let p = x.pow(*d as i64 - 1)?;
            a_new = a_new.add(&td.mul(&p.coeff(0)));
            s = s.add(&td.mul(&p.coeff(-1)));
        }
        let g_new = USeries::one().add(&gamma.mul(&s)).truncate(order).sqrt()?;
        let done = a_new == alpha && g_new == gamma;
        alpha = a_new.truncate(order);
        gamma = g_new.truncate(order);
        if done {
            break;
        }
    }
    let x = x_poly(&alpha, &gamma);
    let v = vprime(potential, &x)?;
    let wcoeffs: Vec<USeries> = (v.valuation().min(-1)..0).map(|e| v.coeff(e)).collect();
    let w = ZPoly::exact(v.valuation().min(-1), wcoeffs);
    Ok(DiskCurve {
        potential: potential.clone(),
        prec: order,
        alpha,
        gamma,
        x,
        w,
    })
}

impl DiskCurve {
    pub fn quadrangulations(order: i64) -> Result<DiskCurve, ExactError> {
        solve_disk_curve(&Potential::quadrangulations(), order)
    }

    pub fn x_form(&self) -> RationalForm {
        RationalForm::poly(self.x.clone())
    }
    pub fn w_form(&self) -> RationalForm {
        RationalForm::poly(self.w.clone())
    }
    pub fn dx(&self) -> ZPoly {
        self.x.derivative()
    }
    pub fn dw(&self) -> ZPoly {
        self.w.derivative()
    }

    /// Zeros of `dw/dz` at finite nonzero `z`, found from the Newton polygon of
    /// `z^{J+1}·dw/dz` and refined by Newton iteration in `u`.
    pub fn w_branch_points(&self) -> Result<Vec<USeries>, ExactError> {
        let dw = self.dw();
        if dw.is_zero() {
            return Ok(vec![]);
        }
        let lo = dw.valuation();
        // P(z) = z^{-lo}·dw(z): an ordinary polynomial with P(0) ≠ 0.
        let p = dw.shift(-lo);
        let deg = p.end() - 1;
        if deg < 1 {
            return Ok(vec![]);
        }
        let coeffs: Vec<USeries> = (0..=deg).map(|k| p.coeff(k)).collect();
        let vals: Vec<i64> = coeffs
            .iter()
            .map(|c| if c.is_zero() { INF } else { c.valuation() })
            .collect();
        // lower convex hull of (k, v_k)
        let pts: Vec<(i64, i64)> = (0..=deg)
            .filter(|&k| vals[k as usize] < INF)
            .map(|k| (k, vals[k as usize]))
            .collect();
        let mut hull: Vec<(i64, i64)> = vec![];
        for &pt in &pts {
            while hull.len() >= 2 {
                let (x1, y1) = hull[hull.len() - 2];
                let (x2, y2) = hull[hull.len() - 1];
                // remove middle point if it lies on or above the segment
                if (y2 - y1) * (pt.0 - x1) >= (pt.1 - y1) * (x2 - x1) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut roots = vec![];
        for seg in hull.windows(2) {
            let ((k0, v0), (k1, v1)) = (seg[0], seg[1]);
            let dk = k1 - k0;
            if (v0 - v1) % dk != 0 {
                return Err(ExactError::Domain(
                    "branch point of dw with fractional u-valuation".into(),
                ));
            }
            let lam = (v0 - v1) / dk;
            // characteristic polynomial: Σ_{k on segment} lead(a_k) ρ^{k−k0}
            let mut ch = vec![Q3::zero(); (dk + 1) as usize];
            for k in k0..=k1 {
                if vals[k as usize] < INF && vals[k as usize] + lam * k == v0 + lam * k0 {
                    ch[(k - k0) as usize] = coeffs[k as usize].coeff(vals[k as usize]);
                }
            }
            let seeds = solve_small(&ch)?;
            for rho in seeds {
                roots.push(self.newton_root(&coeffs, &USeries::monomial(&rho, lam))?);
            }
        }
        Ok(roots)
    }

    fn newton_root(&self, coeffs: &[USeries], seed: &USeries) -> Result<USeries, ExactError> {
        let poly = ZPoly::exact(0, coeffs.to_vec());
        let dpoly = poly.derivative();
        let eval = |z: &USeries| -> USeries {
            let mut acc = USeries::zero();
            for e in (0..poly.end()).rev() {
                acc = acc.mul(z).add(&poly.coeff(e));
            }
            acc
        };
        let deval = |z: &USeries| -> USeries {
            let mut acc = USeries::zero();
            let top = dpoly.end() - 1;
            for e in (0..=top).rev() {
                acc = acc.mul(z).add(&dpoly.coeff(e));
            }
            acc
        };
        let target = self.prec + 4;
        let mut z = seed.clone();
        let mut iters = 0;
        loop {
            let pz = eval(&z);
            let dz = deval(&z);
            let step = pz.div(&dz)?;
            // treat the iterate as exact (truncated), the final precision is
            // derived from the residual below
            let znew = strip_prec(&z.sub(&step).truncate(target));
            iters += 1;
            if znew == z || iters > 64 {
                z = znew;
                break;
            }
            z = znew;
        }
        let pz = eval(&z);
        let dz = deval(&z);
        if !pz.is_zero() {
            return Err(ExactError::Domain(
                "Newton iteration for a branch point did not converge".into(),
            ));
        }
        let p = pz.prec() - dz.valuation();
        Ok(z.truncate(p))
    }

    /// Local deck transformation of `w` at the simple branch point `b`, to
    /// `ζ`-precision `zeta_order`.  Built as `ι̂ = φ⁻¹(−φ(ζ))` with
    /// `w(b+ζ) − w(b) = (w''(b)/2)·φ(ζ)²`.
    pub fn local_deck(&self, b: &USeries, zeta_order: i64) -> Result<LocalDeck, ExactError> {
        if zeta_order < 2 {
            return Err(ExactError::Domain("zeta_order must be at least 2".into()));
        }
        let we = crate::exact::zpoly_at(&self.w, b, zeta_order + 2)?;
        let g = we.sub(&Laurent::constant(we.coeff(0))).assume_valuation(2)?;
        let g2 = g.coeff(2);
        if g2.is_zero() {
            return Err(ExactError::Domain("w''(b) vanishes to known precision".into()));
        }
        let h = g.shift(-2).scale(&g2.inv()?);
        let phi = h.sqrt()?.shift(1);
        let phi = phi.truncate(zeta_order + 1);
        let phinv = phi.reversion()?;
        let deck = phinv.compose(&phi.neg())?.truncate(zeta_order + 1);
        Ok(LocalDeck {
            center: b.clone(),
            series: deck,
            order: zeta_order,
        })
    }

    pub fn to_json(&self) -> CurveJson {
        let n = self.prec.max(0) as usize;
        CurveJson {
            potential: self
                .potential
                .weights
                .iter()
                .map(|(d, s)| (*d, s.coeff_strings(n)))
                .collect(),
            alpha: self.alpha.coeff_strings(n),
            gamma: self.gamma.coeff_strings(n),
            w_branch: self
                .w_branch_points()
                .unwrap_or_default()
                .iter()
                .map(|b| b.coeff_strings(n))
                .collect(),
        }
    }
}

fn strip_prec(s: &USeries) -> USeries {
    let terms = s.terms();
    let mut acc = USeries::zero();
    for (e, q) in terms {
        acc = acc.add(&USeries::monomial(&q, e));
    }
    acc
}

/// Roots in ℚ(√3) of a polynomial of degree 1 or 2 (coefficients low→high).
fn solve_small(ch: &[Q3]) -> Result<Vec<Q3>, ExactError> {
    let mut c: Vec<Q3> = ch.to_vec();
    while c.last().is_some_and(|q| q.is_zero()) {
        c.pop();
    }
    match c.len() {
        0 | 1 => Ok(vec![]),
        2 => Ok(vec![-&(&c[0] * &c[1].inv()?)]),
        3 => {
            let (a0, a1, a2) = (&c[0], &c[1], &c[2]);
            let disc = &(a1 * a1) - &(&Q3::from_int(4) * &(a0 * a2));
            let s = disc.sqrt()?;
            let inv2a = (&Q3::from_int(2) * a2).inv()?;
            let mut r1 = &(&(-a1) + &s) * &inv2a;
            let mut r2 = &(&(-a1) - &s) * &inv2a;
            // deterministic order: positive surd part first
            if r1.surd_part < r2.surd_part || (r1.surd_part == r2.surd_part && r1.rational_part < r2.rational_part) {
                std::mem::swap(&mut r1, &mut r2);
            }
            Ok(vec![r1, r2])
        }
        _ => Err(ExactError::Domain(
            "branch points from a characteristic polynomial of degree > 2".into(),
        )),
    }
}

/// The series `c(t)` with `3tc⁴ − c² + 1 = 0`, from `c² = (1 − √(1−12t))/(6t)`.
pub fn c_series(order: i64) -> Result<USeries, ExactError> {
    let t = USeries::t();
    let s = USeries::one().sub(&t.scale_int(12)).truncate(order + 2).sqrt()?;
    let c2 = USeries::one().sub(&s).div(&t.scale_int(6))?;
    c2.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, Rat};

    #[test]
    fn quadrangulation_curve_matches_c_series() {
        let cv = DiskCurve::quadrangulations(12).unwrap();
        assert!(cv.alpha.is_zero());
        let c = c_series(12).unwrap();
        assert_eq!(cv.gamma, c);
        let want: Vec<Rat> = vec![rat(1, 1), rat(3, 2), rat(63, 8), rat(891, 16), rat(57915, 128)];
        assert_eq!(cv.gamma.t_coeffs(4).unwrap(), want);
        // w = 1/(cz) − t c³/z³
        let w1 = cv.w.coeff(-1);
        assert_eq!(w1.mul(&c), USeries::one().truncate(12));
        let w3 = cv.w.coeff(-3);
        assert_eq!(w3, USeries::t().mul(&c.pow(3).unwrap()).neg());
        assert!(cv.w.coeff(-2).is_zero());
    }

    #[test]
    fn gaussian_curve() {
        let cv = solve_disk_curve(&Potential::gaussian(), 8).unwrap();
        assert!(cv.alpha.is_zero());
        assert_eq!(cv.gamma, USeries::one().truncate(8));
        assert_eq!(cv.w.valuation(), -1);
        assert_eq!(cv.w.end(), 0);
        assert!(cv.w_branch_points().unwrap().is_empty());
    }

    #[test]
    fn tutte_constraints_hold_for_general_potential() {
        let pot = Potential::scaled(&[(3, rat(1, 2)), (4, rat(-1, 3)), (5, rat(2, 7))]);
        let cv = solve_disk_curve(&pot, 10).unwrap();
        let v = vprime(&pot, &cv.x).unwrap();
        assert!(v.coeff(0).is_zero());
        assert_eq!(v.coeff(-1).mul(&cv.gamma), USeries::one().truncate(10));
    }

    #[test]
    fn quadrangulation_branch_points() {
        let cv = DiskCurve::quadrangulations(12).unwrap();
        let bs = cv.w_branch_points().unwrap();
        assert_eq!(bs.len(), 2);
        let c = c_series(14).unwrap();
        let expect = c.pow(2).unwrap().mul(&USeries::monomial(&Q3::sqrt3(), 1));
        let b = &bs[0];
        let p = b.prec().min(expect.prec());
        assert_eq!(b.truncate(p), expect.truncate(p));
        assert_eq!(bs[1], b.neg());
        // w(b+) + w(b-) = 0
        let wf = cv.w_form();
        let s = wf.eval(&bs[0]).unwrap().add(&wf.eval(&bs[1]).unwrap());
        assert!(s.is_zero());
    }

    #[test]
    fn local_deck_properties() {
        let cv = DiskCurve::quadrangulations(10).unwrap();
        let b = cv.w_branch_points().unwrap()[0].clone();
        let d = cv.local_deck(&b, 8).unwrap();
        assert!(d.series.coeff(1).add(&USeries::one()).is_zero());
        // d2 = −w'''(b)/(3 w''(b))
        let we = crate::exact::zpoly_at(&cv.w, &b, 6).unwrap();
        let d2 = we.coeff(3).div(&we.coeff(2)).unwrap().neg();
        let got = d.series.coeff(2);
        let p = got.prec().min(d2.prec());
        assert_eq!(got.truncate(p), d2.truncate(p));
        // involution
        let ii = d.series.compose(&d.series).unwrap();
        assert!(ii.coeff(1).sub(&USeries::one()).is_zero());
        for e in 2..ii.prec().min(8) {
            assert!(ii.coeff(e).is_zero(), "e={e}");
        }
        // w-invariance
        let wz = crate::exact::zpoly_at(&cv.w, &b, 8).unwrap();
        let lhs = wz.compose(&d.series).unwrap();
        for e in 0..lhs.prec().min(7) {
            assert!(lhs.coeff(e).sub(&wz.coeff(e)).is_zero(), "e={e}");
        }
    }
}
