//! Ordinary ↔ simple ↔ fully simple transforms of generating series.
//!
//! With the disk resolvent `W(x) = Σ_{ℓ≥0} F_ℓ x^{−ℓ−1}` (`F_0 = 1`) and the
//! fully simple disk series `X(w) = 1/w + Σ_{k≥1} H_k w^{k−1}`, the two are
//! functional inverses, `X(W(x)) = x`.  Writing `y(w) = 1/X(w)` this is a plain
//! series reversion of `ξ ↦ W(1/ξ)`.
//!
//! Cylinders follow by changes of variables and one logarithmic correction:
//!
//! * simple:       `Y₂(w₁,w₂) = W₂(X(w₁),X(w₂))·X'(w₁)·X'(w₂)`;
//! * mixed:        `Y_{1|1}(w|x) = −W₂(X(w),x)·X'(w)`;
//! * fully simple: `X₂(w₁,w₂) = Y₂(w₁,w₂) + ∂_{w₁}∂_{w₂} ln Φ(w₁,w₂)` with
//!   `(w₁ − w₂)/(X(w₁) − X(w₂)) = −w₁w₂/Φ`,
//!   `Φ = 1 − w₁w₂ Σ_{ℓ≥2} H_ℓ h_{ℓ−2}(w₁,w₂)`.
//!
//! The genus-zero three-point forms of both curves satisfy
//! `ω_{0,3} + ω̌_{0,3} = Σ_i d_i[B(z_i,z_j)B(z_i,z_k)/(dx(z_i)dw(z_i))]`, checked
//! here at sample points together with the residue-sum certificate.

use rayon::prelude::*;
use serde::Serialize;

use crate::curve::DiskCurve;
use crate::exact::{ExactError, Laurent, Point, Rat, RationalForm, USeries, ZPoly};
use crate::toprec::{self, eval_amplitude, Role, TrEngine, TrError};

/// `W` as a series in `ξ = 1/x`: `Σ_ℓ F_ℓ ξ^{ℓ+1}`.
pub fn resolvent_series(f: &[USeries]) -> Laurent<USeries> {
    let prec = f.len() as i64 + 1;
    Laurent::new(1, f.to_vec(), prec)
}

/// Ordinary disk counts `F_0 … F_{ℓmax}` of a curve.
pub fn ordinary_disks(curve: &DiskCurve, lmax: usize) -> Result<Vec<USeries>, ExactError> {
    (0..=lmax)
        .map(|l| toprec::ordinary_disk_series(curve, l as u32))
        .collect()
}

/// Ordinary cylinder counts `F_{ℓ₁,ℓ₂}` for `1 ≤ ℓ_i ≤ ℓmax` (index 0 unused).
pub fn ordinary_cylinders(curve: &DiskCurve, lmax: usize) -> Result<Vec<Vec<USeries>>, ExactError> {
    let mut out = vec![vec![USeries::zero(); lmax + 1]; lmax + 1];
    for l1 in 1..=lmax {
        for l2 in l1..=lmax {
            let s = toprec::ordinary_cylinder_series(curve, l1 as u32, l2 as u32)?;
            out[l1][l2] = s.clone();
            out[l2][l1] = s;
        }
    }
    Ok(out)
}

/// `y(w) = 1/X(w)`, the compositional inverse of `ξ ↦ W(1/ξ)`, to `w`-precision `F.len()+1`.
pub fn inverse_resolvent(f: &[USeries]) -> Result<Laurent<USeries>, ExactError> {
    resolvent_series(f).reversion()
}

/// Fully simple disk counts `H_0 … H_{kmax}` (`H_0 = 0` by convention) from
/// ordinary disk counts `F_0 … F_{kmax}`.
pub fn fully_simple_disks(f: &[USeries], kmax: usize) -> Result<Vec<USeries>, ExactError> {
    if f.len() < kmax + 1 {
        return Err(ExactError::Precision {
            needed: kmax as i64 + 1,
            known: f.len() as i64,
        });
    }
    let y = inverse_resolvent(&f[..=kmax])?;
    // w/y = 1 + Σ H_k w^k
    let q = y.shift(-1).inv()?;
    let mut out = vec![USeries::zero()];
    for k in 1..=kmax as i64 {
        out.push(q.try_coeff(k)?);
    }
    Ok(out)
}

/// `X(w) = 1/w + Σ_{k≥1} H_k w^{k−1}` as a Laurent series in `w`.
pub fn x_series(h: &[USeries]) -> Laurent<USeries> {
    let mut coeffs = vec![USeries::one()];
    coeffs.extend(h.iter().skip(1).cloned());
    Laurent::new(-1, coeffs, h.len() as i64 - 1)
}

/// Outcome of an inversion check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InversionCheck {
    pub identical: bool,
    /// `ξ`-order to which the identity is verified.
    pub xi_order: i64,
    /// Smallest `u`-precision among the verified coefficients.
    pub u_order: i64,
}

/// Checks `X(W(x)) = x`, i.e. `X(W(1/ξ))·ξ = 1`, to the common cutoff.
pub fn check_inversion(f: &[USeries], h: &[USeries]) -> Result<InversionCheck, ExactError> {
    let w = resolvent_series(f);
    let x = x_series(h);
    // X(W) with W of valuation one: X = w^{-1}·(1 + Σ H_k w^k)
    let poly = x.shift(1);
    let comp = poly.compose(&w)?.mul(&w.inv()?);
    let lhs = comp.shift(1);
    let diff = lhs.sub(&Laurent::one());
    let identical = diff.iter().all(|(_, c)| c.is_zero());
    let u_order = diff.iter().map(|(_, c)| c.prec()).min().unwrap_or(crate::exact::INF);
    Ok(InversionCheck {
        identical,
        xi_order: diff.prec(),
        u_order,
    })
}

/// Fully simple disks computed independently from the curve: `X = x ∘ w^{−1}`
/// with the inverse taken near `z = ∞`.
pub fn fully_simple_disks_from_curve(curve: &DiskCurve, kmax: usize) -> Result<Vec<USeries>, ExactError> {
    // w = Σ_{j≥1} w_j y^j in y = 1/z
    let wv = curve.w.valuation();
    let top = -wv;
    let coeffs: Vec<USeries> = (1..=top).map(|j| curve.w.coeff(-j)).collect();
    let wy = Laurent::new(1, coeffs, kmax as i64 + 3);
    let yw = wy.reversion()?;
    // x = α + γ(1/y + y)
    let inv = yw.inv()?;
    let x = inv
        .add(&yw)
        .scale(&curve.gamma)
        .add(&Laurent::constant(curve.alpha.clone()));
    // X(w) = 1/w + Σ H_k w^{k−1}
    let lead = x.try_coeff(-1)?;
    if !lead.sub(&USeries::one()).is_zero() {
        return Err(ExactError::Domain("X(w) does not start with 1/w".into()));
    }
    let mut out = vec![USeries::zero()];
    for k in 1..=kmax as i64 {
        out.push(x.try_coeff(k - 1)?);
    }
    Ok(out)
}

/// The cylinder transforms for one curve, up to a length cutoff.
pub struct CylinderTransforms {
    pub kmax: usize,
    /// `F_0 … F_{2·kmax}`.
    pub disks: Vec<USeries>,
    /// `H_0 … H_{2·kmax}`.
    pub fs_disks: Vec<USeries>,
    /// `F_{ℓ₁,ℓ₂}`, `1 ≤ ℓ_i ≤ kmax`.
    pub cylinders: Vec<Vec<USeries>>,
    /// `A_ℓ(w) = y(w)^{ℓ+1} X'(w)`, `1 ≤ ℓ ≤ kmax`.
    a: Vec<Laurent<USeries>>,
}

impl CylinderTransforms {
    pub fn new(curve: &DiskCurve, kmax: usize) -> Result<Self, ExactError> {
        let disks = ordinary_disks(curve, 2 * kmax)?;
        let fs_disks = fully_simple_disks(&disks, 2 * kmax)?;
        let cylinders = ordinary_cylinders(curve, kmax)?;
        let y = inverse_resolvent(&disks[..=kmax])?.truncate(kmax as i64 + 2);
        let x = x_series(&fs_disks[..=kmax + 1]);
        let xd = x.derivative();
        let mut a = vec![Laurent::zero()];
        for l in 1..=kmax as i64 {
            a.push(y.pow(l + 1)?.mul(&xd).truncate(kmax as i64));
        }
        Ok(CylinderTransforms {
            kmax,
            disks,
            fs_disks,
            cylinders,
            a,
        })
    }

    fn a_coeff(&self, l: usize, k: usize) -> USeries {
        self.a[l].coeff(k as i64 - 1)
    }

    /// Simple cylinders `G_{k₁,k₂}`.
    pub fn simple(&self, k1: usize, k2: usize) -> USeries {
        let mut acc = USeries::zero();
        for l1 in 1..=k1 {
            let a1 = self.a_coeff(l1, k1);
            if a1.is_zero() {
                continue;
            }
            for l2 in 1..=k2 {
                let a2 = self.a_coeff(l2, k2);
                if a2.is_zero() {
                    continue;
                }
                acc = acc.add(&self.cylinders[l1][l2].mul(&a1).mul(&a2));
            }
        }
        acc
    }

    /// Mixed cylinders `G_{k|ℓ}`: first boundary simple of length `k`, second ordinary of length `ℓ`.
    pub fn mixed(&self, k: usize, l: usize) -> USeries {
        let mut acc = USeries::zero();
        for l1 in 1..=k {
            let a1 = self.a_coeff(l1, k);
            if a1.is_zero() {
                continue;
            }
            acc = acc.add(&self.cylinders[l1][l].mul(&a1));
        }
        acc.neg()
    }

    /// `[w₁^a w₂^b] ln Φ` for `0 ≤ a, b ≤ kmax`.
    fn log_phi(&self) -> Vec<Vec<USeries>> {
        let k = self.kmax;
        let zero = || vec![vec![USeries::zero(); k + 1]; k + 1];
        // P = w₁w₂ Σ_{ℓ≥2} H_ℓ h_{ℓ−2}
        let mut p = zero();
        for (a, row) in p.iter_mut().enumerate().skip(1) {
            for (b, cell) in row.iter_mut().enumerate().skip(1) {
                let l = a + b; // ℓ − 2 = (a−1) + (b−1)
                if l < self.fs_disks.len() {
                    *cell = self.fs_disks[l].clone();
                }
            }
        }
        let mul = |x: &Vec<Vec<USeries>>, y: &Vec<Vec<USeries>>| {
            let mut out = zero();
            for a1 in 0..=k {
                for b1 in 0..=k {
                    if x[a1][b1].is_zero() {
                        continue;
                    }
                    for a2 in 0..=(k - a1) {
                        for b2 in 0..=(k - b1) {
                            if y[a2][b2].is_zero() {
                                continue;
                            }
                            out[a1 + a2][b1 + b2] = out[a1 + a2][b1 + b2].add(&x[a1][b1].mul(&y[a2][b2]));
                        }
                    }
                }
            }
            out
        };
        // ln(1 − P) = −Σ_j P^j / j
        let mut acc = zero();
        let mut pw = p.clone();
        for j in 1..=k {
            let inv = Rat::new((-1).into(), (j as i64).into());
            for a in 0..=k {
                for b in 0..=k {
                    if !pw[a][b].is_zero() {
                        acc[a][b] = acc[a][b].add(&pw[a][b].scale_rat(&inv));
                    }
                }
            }
            pw = mul(&pw, &p);
        }
        acc
    }

    /// Fully simple cylinders `H_{k₁,k₂}` for `1 ≤ k_i ≤ kmax` (index 0 unused).
    pub fn fully_simple(&self) -> Vec<Vec<USeries>> {
        let k = self.kmax;
        let lp = self.log_phi();
        let cells: Vec<(usize, usize)> = (1..=k).flat_map(|a| (1..=k).map(move |b| (a, b))).collect();
        let vals: Vec<USeries> = cells
            .par_iter()
            .map(|&(a, b)| self.simple(a, b).add(&lp[a][b].scale_int((a * b) as i64)))
            .collect();
        let mut out = vec![vec![USeries::zero(); k + 1]; k + 1];
        for ((a, b), v) in cells.into_iter().zip(vals) {
            out[a][b] = v;
        }
        out
    }
}

/// Outcome of the three-point identity check.
#[derive(Clone, Debug, Serialize)]
pub struct PantsReport {
    pub sample_points: usize,
    /// Smallest `u`-order to which both sides agree over all samples
    /// (equal to the working precision when the identity holds).
    pub agreement_order: i64,
    pub identical: bool,
    /// Largest `u`-order of a nonzero residue sum (absent when all sums vanish).
    pub residue_sum_ok: bool,
    pub first_discrepancy: Option<String>,
}

fn rform_const(c: USeries) -> ZPoly {
    ZPoly::constant(c)
}

/// `1/((z − a)²(z − b)² x'(z) w'(z))` as a rational function of `z`.
fn pants_term(curve: &DiskCurve, a: &USeries, b: &USeries) -> Result<RationalForm, ExactError> {
    let la = ZPoly::exact(0, vec![a.neg(), USeries::one()]);
    let lb = ZPoly::exact(0, vec![b.neg(), USeries::one()]);
    let den = la.mul(&la).mul(&lb).mul(&lb).mul(&curve.dx()).mul(&curve.dw());
    RationalForm::new(rform_const(USeries::one()), den)
}

/// Right-hand side `Σ_i ∂_{z_i}[1/((z_i−z_j)²(z_i−z_k)² x'(z_i) w'(z_i))]`.
pub fn pants_rhs(curve: &DiskCurve, zs: &[USeries; 3]) -> Result<USeries, ExactError> {
    let mut acc = USeries::zero();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let f = pants_term(curve, &zs[j], &zs[k])?;
        acc = acc.add(&f.derivative().eval(&zs[i])?);
    }
    Ok(acc)
}

/// Sum of the residues of `B(z,z₁)B(z,z₂)B(z,z₃)/(dx dw)` over all its poles
/// (branch points of both projections, the `z_i`, and `∞`).
pub fn residue_sum(curve: &DiskCurve, zs: &[USeries; 3], wb: &[USeries]) -> Result<USeries, ExactError> {
    let mut den = curve.dx().mul(&curve.dw());
    for z in zs {
        let l = ZPoly::exact(0, vec![z.neg(), USeries::one()]);
        den = den.mul(&l).mul(&l);
    }
    let f = RationalForm::new(rform_const(USeries::one()), den)?;
    let one = ZPoly::one();
    let mut acc = f.z_residue(&Point::Infinity, &one)?;
    let mut pts: Vec<USeries> = vec![USeries::one(), USeries::from_int(-1)];
    pts.extend(wb.iter().cloned());
    pts.extend(zs.iter().cloned());
    for p in pts {
        acc = acc.add(&f.z_residue(&Point::Finite(p, 8), &one)?);
    }
    Ok(acc)
}

/// Checks `ω_{0,3} + ω̌_{0,3} = RHS` at a grid of rational sample points.
pub fn pants_identity_check(curve: &DiskCurve, samples_per_axis: usize) -> Result<PantsReport, TrError> {
    let ord = TrEngine::new(curve.clone(), Role::Ordinary, 4)?;
    let exc = TrEngine::new(curve.clone(), Role::Exchanged, 4)?;
    let a = ord.amplitude(0, 3)?;
    let b = exc.amplitude(0, 3)?;
    let values: Vec<Rat> = (0..samples_per_axis)
        .map(|i| Rat::new((2 + 3 * i as i64).into(), (1 + (i as i64 % 3)).into()))
        .collect();
    let mut triples = vec![];
    for x in &values {
        for y in &values {
            for z in &values {
                if x != y && y != z && x != z {
                    triples.push([x.clone(), y.clone(), z.clone()]);
                }
            }
        }
    }
    let results: Vec<Result<(i64, bool, Option<String>), TrError>> = triples
        .par_iter()
        .map(|t| {
            let zs = [
                USeries::from_rat(&t[0]),
                USeries::from_rat(&t[1]),
                USeries::from_rat(&t[2]),
            ];
            let lhs = eval_amplitude(&a, &ord.points, &zs)?.add(&eval_amplitude(&b, &exc.points, &zs)?);
            let rhs = pants_rhs(curve, &zs)?;
            let d = lhs.sub(&rhs);
            let ok = d.is_zero();
            let msg = if ok {
                None
            } else {
                Some(format!("at ({}, {}, {}): difference {}", t[0], t[1], t[2], d))
            };
            Ok((d.prec(), ok, msg))
        })
        .collect();
    let mut order = i64::MAX;
    let mut identical = true;
    let mut first = None;
    for r in results {
        let (p, ok, msg) = r?;
        order = order.min(p);
        if !ok {
            identical = false;
            if first.is_none() {
                first = msg;
            }
        }
    }
    let zs = [USeries::from_int(2), USeries::from_int(3), USeries::from_int(5)];
    let rs = residue_sum(curve, &zs, &exc.points)?;
    Ok(PantsReport {
        sample_points: triples.len(),
        agreement_order: order,
        identical,
        residue_sum_ok: rs.is_zero(),
        first_discrepancy: first,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{solve_disk_curve, Potential};
    use crate::exact::rat;

    fn row(s: &USeries, q: usize) -> Vec<i64> {
        s.t_coeffs(q)
            .unwrap()
            .iter()
            .map(|r| i64::try_from(r.to_integer()).unwrap())
            .collect()
    }

    #[test]
    fn fully_simple_disks_of_quadrangulations() {
        let cv = DiskCurve::quadrangulations(10).unwrap();
        let f = ordinary_disks(&cv, 8).unwrap();
        let h = fully_simple_disks(&f, 8).unwrap();
        assert_eq!(row(&h[2], 4), row(&f[2], 4));
        assert_eq!(row(&h[4], 4), vec![0, 1, 10, 90, 810]);
        assert_eq!(row(&h[6], 2)[2], 3);
        let hc = fully_simple_disks_from_curve(&cv, 8).unwrap();
        for k in 1..=8 {
            assert!(h[k].sub(&hc[k]).is_zero(), "k={k}");
        }
        assert!(check_inversion(&f, &h).unwrap().identical);
    }

    #[test]
    fn gaussian_fully_simple_disks() {
        let cv = solve_disk_curve(&Potential::gaussian(), 6).unwrap();
        let f = ordinary_disks(&cv, 8).unwrap();
        let h = fully_simple_disks(&f, 8).unwrap();
        for (k, hk) in h.iter().enumerate() {
            let expect = if k == 2 { USeries::one() } else { USeries::zero() };
            assert!(hk.sub(&expect).is_zero(), "k={k}");
        }
    }

    #[test]
    fn cylinder_transforms_small_cells() {
        let cv = DiskCurve::quadrangulations(10).unwrap();
        let ct = CylinderTransforms::new(&cv, 4).unwrap();
        assert_eq!(row(&ct.simple(1, 1), 4), vec![1, 3, 18, 135, 1134]);
        assert_eq!(row(&ct.simple(3, 3), 1)[1], 27);
        assert_eq!(row(&ct.mixed(4, 2), 1)[1], 8);
        let h = ct.fully_simple();
        assert_eq!(row(&h[1][1], 4), vec![0, 1, 9, 81, 756]);
        assert_eq!(row(&h[2][4], 3)[3], 40);
        assert_eq!(row(&h[2][2], 2)[2], 6);
    }

    #[test]
    fn inversion_for_a_general_potential() {
        let pot = Potential::scaled(&[(3, rat(1, 2)), (4, rat(-1, 3)), (5, rat(2, 1))]);
        let cv = solve_disk_curve(&pot, 10).unwrap();
        let f = ordinary_disks(&cv, 8).unwrap();
        let h = fully_simple_disks(&f, 8).unwrap();
        assert!(check_inversion(&f, &h).unwrap().identical);
        let hc = fully_simple_disks_from_curve(&cv, 8).unwrap();
        for k in 1..=8 {
            assert!(h[k].sub(&hc[k]).is_zero(), "k={k}");
        }
    }

    #[test]
    fn pants_identity_low_order() {
        let cv = DiskCurve::quadrangulations(8).unwrap();
        let rep = pants_identity_check(&cv, 3).unwrap();
        assert!(rep.identical, "{:?}", rep.first_discrepancy);
        assert!(rep.residue_sum_ok);
    }
}
