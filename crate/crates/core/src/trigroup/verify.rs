use serde::Serialize;

use super::{symmetry_s, Generators, Group};
use crate::error::{Error, Result};
use crate::exact::{AComplex, Cyclo};
use crate::linalg::{eigenvalues3, hausdorff, projective_equal, projective_residual, Mat3, Scalar};

/// Inverse of a determinant-one matrix.
pub(crate) fn inv1<T: Scalar>(m: &Mat3<T>) -> Mat3<T> {
    m.adjugate()
}

/// One checked relation: float residual plus, on the exact path, exact truth.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub residual: f64,
    pub exact: Option<bool>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SymmetryReport {
    pub identities: Vec<IdentityCheck>,
    pub vectors: Vec<IdentityCheck>,
    /// Max-norm of `S*HS − H`.
    pub s_form_residual: f64,
    pub tol: f64,
    pub pass: bool,
}

type Pairs<T> = Vec<(&'static str, Mat3<T>, Mat3<T>)>;

fn symmetry_pairs<T: Scalar>(g: &Generators<T>, s: &Mat3<T>) -> Pairs<T> {
    let (r1, r2, r3) = (&g.r1, &g.r2, &g.r3);
    let si = inv1(s);
    let (r1i, r3i) = (inv1(r1), inv1(r3));
    let conj = |m: &Mat3<T>| s.mul(m).mul(&si);
    vec![
        ("S^2 = R1R2R3", s.mul(s), r1.mul(r2).mul(r3)),
        ("S R1 S^-1 = R1R2R1^-1", conj(r1), r1.mul(r2).mul(&r1i)),
        ("S R2 S^-1 = R1R3R1R3^-1R1^-1", conj(r2), r1.mul(r3).mul(r1).mul(&r3i).mul(&r1i)),
        ("S R3 S^-1 = R1R3R1^-1", conj(r3), r1.mul(r3).mul(&r1i)),
        ("S (R2R3) S^-1 = R1R3", conj(&r2.mul(r3)), r1.mul(r3)),
        ("S (R1R3^-1R2R3) S^-1 = R1R2", conj(&r1.mul(&r3i).mul(r2).mul(r3)), r1.mul(r2)),
    ]
}

/// Columns compared as vectors: `S e1 = R1 e2`, `S e2 = R1R3 e1`, `S e3 = −u R1 e3`.
fn vector_pairs<T: Scalar>(g: &Generators<T>, s: &Mat3<T>, u: &T) -> Vec<(&'static str, [T; 3], [T; 3])> {
    let col = |m: &Mat3<T>, j: usize| [m.m[0][j].clone(), m.m[1][j].clone(), m.m[2][j].clone()];
    let r1r3 = g.r1.mul(&g.r3);
    let neg_u = u.neg();
    let c3 = col(&g.r1, 2).map(|x| neg_u.mul(&x));
    vec![
        ("S v1 = R1 v2", col(s, 0), col(&g.r1, 1)),
        ("S v2 = R1R3 v1", col(s, 1), col(&r1r3, 0)),
        ("S v3 = -u R1 v3", col(s, 2), c3),
    ]
}

fn vec_residual<T: Scalar>(a: &[T; 3], b: &[T; 3]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x.sub(y).magnitude()).fold(0.0, f64::max)
}

/// Check the relations satisfied by the symmetry `S`.
pub fn verify_symmetry(g: &Group, tol: f64) -> Result<SymmetryReport> {
    let sf = symmetry_s(g)?;
    let prec = g.prec();
    let uf = g.units.u.to_float(prec);
    let fp = symmetry_pairs(&g.float, sf);
    let fv = vector_pairs(&g.float, sf, &uf);
    let (xp, xv) = match &g.exact {
        Some(x) => {
            let s = x.s.as_ref().expect("exact symmetric group carries S");
            (Some(symmetry_pairs(x, s)), Some(vector_pairs(x, s, &g.units.u)))
        }
        None => (None, None),
    };
    let mut identities = Vec::new();
    for (k, (name, a, b)) in fp.iter().enumerate() {
        let residual = projective_residual(a, b);
        let exact = xp.as_ref().map(|v| projective_equal(&v[k].1, &v[k].2, 0.0));
        let pass = residual <= tol && exact.unwrap_or(true);
        identities.push(IdentityCheck { name: name.to_string(), residual, exact, pass });
    }
    let mut vectors = Vec::new();
    for (k, (name, a, b)) in fv.iter().enumerate() {
        let residual = vec_residual(a, b);
        let exact = xv.as_ref().map(|v| v[k].1 == v[k].2);
        let pass = residual <= tol && exact.unwrap_or(true);
        vectors.push(IdentityCheck { name: name.to_string(), residual, exact, pass });
    }
    let s_form_residual = crate::linalg::form_residual(sf, &g.float.h);
    let pass = identities.iter().chain(&vectors).all(|c| c.pass) && s_form_residual <= tol;
    Ok(SymmetryReport { identities, vectors, s_form_residual, tol, pass })
}

/// The four traces, by matrix product and by closed form.
#[derive(Clone, Debug)]
pub struct TraceCheck {
    pub names: [&'static str; 4],
    pub by_matrix: [AComplex; 4],
    pub closed_form: [AComplex; 4],
    pub residual: f64,
    /// Exact agreement on the exact path.
    pub exact: Option<bool>,
}

fn traces<T: Scalar>(g: &Generators<T>, u: &T, rho: &T, sigma: &T, tau: &T) -> ([T; 4], [T; 4]) {
    let (r1, r2, r3) = (&g.r1, &g.r2, &g.r3);
    let by_matrix = [
        r1.mul(r2).trace(),
        r2.mul(r3).trace(),
        r1.mul(r3).trace(),
        r1.mul(&inv1(r3)).mul(r2).mul(r3).trace(),
    ];
    // u(2 − |x|²) + ū²
    let ub = u.conj();
    let two = T::one().add(&T::one());
    let closed = |x: &T| u.mul(&two.sub(&x.mul(&x.conj()))).add(&ub.mul(&ub));
    let st_minus_rho_bar = sigma.mul(tau).sub(&rho.conj());
    let closed_form = [closed(rho), closed(sigma), closed(tau), closed(&st_minus_rho_bar)];
    (by_matrix, closed_form)
}

pub fn trace_invariants(g: &Group, tol: f64) -> Result<TraceCheck> {
    let prec = g.prec();
    let p = &g.params;
    let (rf, sf, tf) = (p.rho.to_float(prec), p.sigma.to_float(prec), p.tau.to_float(prec));
    let (by_matrix, closed_form) = traces(&g.float, &g.units.u.to_float(prec), &rf, &sf, &tf);
    let residual = by_matrix.iter().zip(&closed_form).map(|(a, b)| a.dist(b)).fold(0.0, f64::max);
    let exact = g.exact.as_ref().map(|x| {
        let (r, s, t) = (p.rho.exact().unwrap(), p.sigma.exact().unwrap(), p.tau.exact().unwrap());
        let (a, b) = traces(x, &g.units.u, r, s, t);
        a == b
    });
    if residual > tol || exact == Some(false) {
        return Err(Error::Inconsistent(format!("trace closed forms disagree with matrix traces (residual {residual:e})")));
    }
    Ok(TraceCheck {
        names: ["tr(R1R2)", "tr(R2R3)", "tr(R1R3)", "tr(R1R3^-1R2R3)"],
        by_matrix,
        closed_form,
        residual,
        exact,
    })
}

/// Least `l` in `2..=max_l` with the alternating products of `l` factors
/// `ABA…` and `BAB…` projectively equal; `None` means "> max_l".
pub fn braid_length<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>, max_l: u32, tol: f64) -> Option<u32> {
    let mut ab = a.clone();
    let mut ba = b.clone();
    for l in 2..=max_l {
        let (x, y) = if l % 2 == 0 { (b, a) } else { (a, b) };
        ab = ab.mul(x);
        ba = ba.mul(y);
        if projective_equal(&ab, &ba, tol) {
            return Some(l);
        }
    }
    None
}

/// `(br(R2,R3), br(R1,R3), br(R1,R2); br(R1, R3⁻¹R2R3))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub l1: Option<u32>,
    pub l2: Option<u32>,
    pub l3: Option<u32>,
    pub l4: Option<u32>,
}

impl BraidReport {
    pub fn compute(g: &Group, max_l: u32, tol: f64) -> BraidReport {
        let f = &g.float;
        let conj = inv1(&f.r3).mul(&f.r2).mul(&f.r3);
        BraidReport {
            l1: braid_length(&f.r2, &f.r3, max_l, tol),
            l2: braid_length(&f.r1, &f.r3, max_l, tol),
            l3: braid_length(&f.r1, &f.r2, max_l, tol),
            l4: braid_length(&f.r1, &conj, max_l, tol),
        }
    }

    pub fn as_tuple(&self) -> [Option<u32>; 4] {
        [self.l1, self.l2, self.l3, self.l4]
    }
}

impl std::fmt::Display for BraidReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |x: Option<u32>| x.map_or(">max".to_string(), |v| v.to_string());
        write!(f, "({},{},{};{})", s(self.l1), s(self.l2), s(self.l3), s(self.l4))
    }
}

/// Hausdorff distance between the eigenvalues of `R1R2` and the predicted
/// `{ū², −u e^{2iζ}, −u e^{−2iζ}}` where `|ρ| = 2cos ζ`.
pub fn eigen_relation_residual(g: &Group, _tol: f64) -> Result<f64> {
    let prec = g.prec();
    let w = prec + 64;
    let rho = g.params.rho.to_float(w);
    let abs2 = AComplex::real(rho.abs2(), w);
    let slack = 2f64.powi(-(prec as i32) / 2);
    if abs2.re_f64() > 4.0 + slack {
        return Err(Error::LemmaHypothesis(format!(
            "|rho| = {:.6} exceeds 2, so R1R2 is loxodromic",
            abs2.re_f64().sqrt()
        )));
    }
    // cos 2ζ = |ρ|²/2 − 1, sin 2ζ = √(1 − cos² 2ζ) ≥ 0.
    let c = abs2.div(&AComplex::from_i64(2, w)).sub(&AComplex::one(w));
    let s2 = AComplex::one(w).sub(&c.mul(&c));
    let s = if s2.re_f64() <= 0.0 || abs2.re_f64() >= 4.0 { AComplex::zero(w) } else { s2.sqrt() };
    let e = c.add(&s.mul_i());
    let u = g.units.u.to_float(w);
    let ub2 = u.conj().mul(&u.conj());
    let mut predicted = [ub2, u.mul(&e).neg(), u.mul(&e.conj()).neg()];
    for z in predicted.iter_mut() {
        z.set_prec(prec);
    }
    let r12 = g.float.r1.mul(&g.float.r2);
    let ev = eigenvalues3(&r12, prec);
    Ok(hausdorff(&ev, &predicted))
}

/// Exact `tr(R1R2)` for the exact path.
pub fn trace_r1r2_exact(g: &Group) -> Option<Cyclo> {
    g.exact.as_ref().map(|x| x.r1.mul(&x.r2).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trigroup::{build_group, build_symmetric, Value};

    #[test]
    fn symmetry_holds_exactly() {
        for (n, m) in [(3, 4), (4, 3), (5, 4), (3, 5), (8, 6), (5, 5)] {
            for p in [2, 3, 5] {
                let g = build_symmetric(p, n, m, 1, 256).unwrap();
                let r = verify_symmetry(&g, 1e-30).unwrap();
                assert!(r.pass, "({n},{m}) p={p}: {r:?}");
                assert!(r.identities.iter().all(|c| c.exact == Some(true)));
            }
        }
    }

    #[test]
    fn perturbed_rho_breaks_symmetry() {
        let g = build_symmetric(5, 3, 4, 1, 256).unwrap();
        let rho = g.rho_float().add(&AComplex::from_f64(1e-6, 0.0, 256));
        let p = &g.params;
        let mut h = build_group(5, Value::Float(rho), p.sigma.clone(), p.tau.clone(), 256).unwrap();
        assert!(!h.symmetric);
        h.float.s = g.float.s.clone();
        let r = verify_symmetry(&h, 1e-30).unwrap();
        assert!(r.identities[0].residual > 1e-8);
        assert!(!r.pass);
    }

    #[test]
    fn nonsymmetric_group_is_rejected() {
        let z = Value::Exact(Cyclo::zero());
        let g = build_group(3, z.clone(), z.clone(), z, 256).unwrap();
        assert!(matches!(verify_symmetry(&g, 1e-30), Err(Error::NotSymmetric(_))));
    }

    #[test]
    fn trace_closed_forms() {
        let g = build_symmetric(4, 4, 3, 1, 256).unwrap();
        let t = trace_invariants(&g, 1e-60).unwrap();
        assert_eq!(t.exact, Some(true));
        let want = Cyclo::root(-1, 6).to_float(256);
        assert!(t.by_matrix[1].dist(&want) < 1e-70);
        assert!(t.by_matrix[3].dist(&t.by_matrix[0]) < 1e-70);
        let z = Value::Exact(Cyclo::zero());
        let g0 = build_group(7, z.clone(), Value::Exact(Cyclo::one()), z, 256).unwrap();
        let t0 = trace_invariants(&g0, 1e-60).unwrap();
        let u = g0.units.u.clone();
        let want = &(&u + &u) + &u.conj().pow(2);
        assert!(t0.by_matrix[0].dist(&want.to_float(256)) < 1e-70);
        // (p=2, ρ=1, σ=τ=√2)
        let g = build_symmetric(2, 4, 3, 1, 256).unwrap();
        assert_eq!(trace_r1r2_exact(&g), Some(Cyclo::zero()));
    }

    #[test]
    fn braid_lengths_of_rows() {
        let g = build_symmetric(5, 3, 4, 1, 256).unwrap();
        let b = BraidReport::compute(&g, 24, 1e-30);
        assert_eq!(b.as_tuple(), [Some(3), Some(3), Some(4), Some(4)]);
        let g = build_symmetric(5, 8, 6, 1, 256).unwrap();
        assert_eq!(braid_length(&g.float.r1, &g.float.r3, 24, 1e-30), Some(8));
        assert_eq!(braid_length(&g.float.r1, &g.float.r1, 24, 1e-30), Some(2));
        let x = g.exact.as_ref().unwrap();
        assert_eq!(braid_length(&x.r1, &x.r2, 24, 0.0), Some(6));
    }

    #[test]
    fn eigen_relation() {
        for (n, m, p) in [(4, 3, 4), (8, 6, 5), (5, 5, 7)] {
            let g = build_symmetric(p, n, m, 1, 256).unwrap();
            assert!(eigen_relation_residual(&g, 1e-30).unwrap() < 1e-30, "({n},{m})");
        }
        let two = Value::Exact(Cyclo::from_int(2));
        let g = build_group(5, two.clone(), two.clone(), two, 256).unwrap();
        assert!(eigen_relation_residual(&g, 1e-30).unwrap() < 1e-30);
        let three = Value::Exact(Cyclo::from_int(3));
        let g = build_group(5, three.clone(), three.clone(), three, 256).unwrap();
        assert!(matches!(eigen_relation_residual(&g, 1e-30), Err(Error::LemmaHypothesis(_))));
    }
}
