//! The triangle groups: generators, Hermitian form, the symmetry `S`, and
//! verification of the relations they satisfy.

mod verify;
mod word;

use std::cmp::Ordering;

use crate::cosearch;
use crate::error::{Error, Result};
use crate::exact::{cos_exact, root_of_unity, sin_exact, AComplex, Angle, Cyclo, Rational};
use crate::linalg::{hermitian_signature, hermitian_signature_float, Mat3, MatF, MatX, Scalar, Signature};

pub use verify::{
    braid_length, eigen_relation_residual, trace_invariants, trace_r1r2_exact, verify_symmetry, BraidReport, IdentityCheck,
    SymmetryReport, TraceCheck,
};
pub use word::{evaluate_word, evaluate_word_exact, Word};

/// Zero tolerance used when deciding a float signature.
pub const FLOAT_ZERO_TOL: f64 = 1e-30;

/// A parameter value: exact when possible, otherwise high-precision float.
#[derive(Clone, Debug)]
pub enum Value {
    Exact(Cyclo),
    Float(AComplex),
}

impl Value {
    pub fn to_float(&self, prec: usize) -> AComplex {
        match self {
            Value::Exact(c) => c.to_float(prec),
            Value::Float(z) => {
                let mut z = z.clone();
                z.set_prec(prec);
                z
            }
        }
    }

    pub fn exact(&self) -> Option<&Cyclo> {
        match self {
            Value::Exact(c) => Some(c),
            Value::Float(_) => None,
        }
    }
}

impl From<Cyclo> for Value {
    fn from(c: Cyclo) -> Self {
        Value::Exact(c)
    }
}

impl From<AComplex> for Value {
    fn from(z: AComplex) -> Self {
        Value::Float(z)
    }
}

/// Parameters `(p, ρ, σ, τ)`; `u = e^{2πi/3p}` is derived from `p`.
#[derive(Clone, Debug)]
pub struct GroupParams {
    pub p: u32,
    pub rho: Value,
    pub sigma: Value,
    pub tau: Value,
    pub prec: usize,
}

/// The constants `u`, `ū^{1/2} = e^{-πi/3p}` and `α = √(2 − u³ − ū³) = 2 sin(π/p)`.
#[derive(Clone, Debug)]
pub struct Units {
    pub u: Cyclo,
    pub u_half_bar: Cyclo,
    pub alpha: Cyclo,
}

impl Units {
    pub fn new(p: u32) -> Units {
        Units {
            u: Cyclo::root(1, 3 * p),
            u_half_bar: Cyclo::root(-1, 6 * p),
            alpha: sin_exact(Angle::pi_over(p as i64)).scale(Rational::from_integer(2)),
        }
    }
}

/// The matrices of a group over one scalar type.
#[derive(Clone, Debug)]
pub struct Generators<T> {
    pub r1: Mat3<T>,
    pub r2: Mat3<T>,
    pub r3: Mat3<T>,
    pub h: Mat3<T>,
    /// The symmetry; present only in symmetric mode.
    pub s: Option<Mat3<T>>,
}

impl<T: Scalar> Generators<T> {
    pub fn gen(&self, i: u8) -> &Mat3<T> {
        match i {
            1 => &self.r1,
            2 => &self.r2,
            3 => &self.r3,
            _ => panic!("generator index {i} out of range"),
        }
    }
}

impl Generators<Cyclo> {
    pub fn to_float(&self, prec: usize) -> Generators<AComplex> {
        Generators {
            r1: self.r1.to_float(prec),
            r2: self.r2.to_float(prec),
            r3: self.r3.to_float(prec),
            h: self.h.to_float(prec),
            s: self.s.as_ref().map(|s| s.to_float(prec)),
        }
    }
}

fn assemble<T: Scalar>(units: [&T; 4], rho: &T, sigma: &T, tau: &T, with_s: bool) -> Generators<T> {
    let [u, uhb, alpha, i] = units;
    let ub = u.conj();
    let u2 = u.mul(u);
    let z = T::zero();
    let r1 = Mat3::new([
        [u2.clone(), rho.clone(), u.mul(&tau.conj()).neg()],
        [z.clone(), ub.clone(), z.clone()],
        [z.clone(), z.clone(), ub.clone()],
    ]);
    let r2 = Mat3::new([
        [ub.clone(), z.clone(), z.clone()],
        [u.mul(&rho.conj()).neg(), u2.clone(), sigma.clone()],
        [z.clone(), z.clone(), ub.clone()],
    ]);
    let r3 = Mat3::new([
        [ub.clone(), z.clone(), z.clone()],
        [z.clone(), ub.clone(), z.clone()],
        [tau.clone(), u.mul(&sigma.conj()).neg(), u2.clone()],
    ]);
    let minus_i_uhb = i.mul(uhb).neg();
    let b1 = minus_i_uhb.mul(rho);
    let b2 = minus_i_uhb.mul(sigma);
    let b3 = minus_i_uhb.mul(tau);
    let h = Mat3::new([
        [alpha.clone(), b1.clone(), b3.conj()],
        [b1.conj(), alpha.clone(), b2.clone()],
        [b3, b2.conj(), alpha.clone()],
    ]);
    let s = with_s.then(|| {
        let re2 = rho.add(&rho.conj());
        Mat3::new([
            [rho.clone(), u.mul(&T::one().sub(&re2)), u2.mul(sigma)],
            [ub.clone(), z.clone(), z.clone()],
            [z.clone(), ub.mul(sigma), T::one().neg()],
        ])
    });
    Generators { r1, r2, r3, h, s }
}

/// Identification of a symmetric group by its braid data.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymLabel {
    pub n: u32,
    pub m: u32,
    pub im_sign: i8,
}

/// A constructed group.
#[derive(Clone, Debug)]
pub struct Group {
    pub params: GroupParams,
    pub units: Units,
    pub exact: Option<Generators<Cyclo>>,
    pub float: Generators<AComplex>,
    pub symmetric: bool,
    pub label: Option<SymLabel>,
    pub signature: Signature,
    /// Set when the form is not of signature (2,1), or for other caveats.
    pub warning: Option<String>,
}

impl Group {
    pub fn p(&self) -> u32 {
        self.params.p
    }

    pub fn prec(&self) -> usize {
        self.params.prec
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    /// `det H`, exactly when the parameters are exact.
    pub fn det_h_exact(&self) -> Option<Cyclo> {
        self.exact.as_ref().map(|g| g.h.det())
    }

    pub fn det_h_float(&self) -> AComplex {
        self.float.h.det()
    }

    pub fn rho_float(&self) -> AComplex {
        self.params.rho.to_float(self.prec())
    }
}

fn exact_symmetric(rho: &Cyclo, sigma: &Cyclo, tau: &Cyclo) -> Result<bool> {
    if sigma != tau || !sigma.is_real() || sigma.real_sign()? == Ordering::Less {
        return Ok(false);
    }
    let re2 = rho + &rho.conj();
    Ok(sigma * sigma == re2 && re2.real_sign()? == Ordering::Greater)
}

fn float_symmetric(rho: &AComplex, sigma: &AComplex, tau: &AComplex, tol: f64) -> bool {
    let re2 = rho.add(&rho.conj());
    sigma.dist(tau) <= tol
        && sigma.im_f64().abs() <= tol
        && sigma.re_f64() >= -tol
        && sigma.mul(sigma).dist(&re2) <= tol
        && re2.re_f64() > tol
}

/// Build the group with generators as printed and Hermitian form `H`.
///
/// All-exact parameters give an exact group (with float images at `prec`);
/// any float parameter makes the whole construction float.
pub fn build_group(p: u32, rho: Value, sigma: Value, tau: Value, prec: usize) -> Result<Group> {
    if p < 2 {
        return Err(Error::Config(format!("reflection order p = {p} must be at least 2")));
    }
    let prec = prec.max(53);
    let units = Units::new(p);
    let params = GroupParams { p, rho, sigma, tau, prec };
    let (exact, float, symmetric, signature) = match (&params.rho, &params.sigma, &params.tau) {
        (Value::Exact(r), Value::Exact(s), Value::Exact(t)) => {
            let sym = exact_symmetric(r, s, t)?;
            let i = Cyclo::i();
            let gx = assemble([&units.u, &units.u_half_bar, &units.alpha, &i], r, s, t, sym);
            let sig = hermitian_signature(&gx.h)?;
            let gf = gx.to_float(prec);
            (Some(gx), gf, sym, sig)
        }
        _ => {
            let (r, s, t) = (params.rho.to_float(prec), params.sigma.to_float(prec), params.tau.to_float(prec));
            let tol = 2f64.powi(-(prec as i32) / 2);
            let sym = float_symmetric(&r, &s, &t, tol);
            let uf = [&units.u, &units.u_half_bar, &units.alpha, &Cyclo::i()].map(|c| c.to_float(prec));
            let gf = assemble([&uf[0], &uf[1], &uf[2], &uf[3]], &r, &s, &t, sym);
            let sig = hermitian_signature_float(&gf.h, FLOAT_ZERO_TOL)?;
            (None, gf, sym, sig)
        }
    };
    let warning = (signature.verdict() != "(2,1)")
        .then(|| format!("Hermitian form has signature {} (verdict {}), not (2,1)", signature, signature.verdict()));
    Ok(Group { params, units, exact, float, symmetric, label: None, signature, warning })
}

/// `2cos(π/k)` exactly.
pub fn two_cos_pi_over(k: u32) -> Cyclo {
    cos_exact(Angle::pi_over(k as i64)).scale(Rational::from_integer(2))
}

/// Check `2cos(π/m) ≥ 2cos²(π/n)`, i.e. `|ρ| ≥ Re ρ` is attainable.
pub fn symmetric_feasible(n: u32, m: u32) -> Result<bool> {
    let c = cos_exact(Angle::pi_over(n as i64));
    let diff = &two_cos_pi_over(m) - &(&c * &c).scale(Rational::from_integer(2));
    Ok(diff.real_sign()? != Ordering::Less)
}

/// The symmetric group with `br(R1,R3) = n`, `br(R1,R2) = m`.
///
/// `Re ρ = 2cos²(π/n)`, `|ρ| = 2cos(π/m)`, `Im ρ` has sign `im_sign`, and
/// `σ = τ = 2cos(π/n)`. Parameters are exact whenever a trace angle pair is
/// known for `(n, m)`; otherwise `Im ρ` is computed in floating point.
pub fn build_symmetric(p: u32, n: u32, m: u32, im_sign: i8, prec: usize) -> Result<Group> {
    if n < 3 || m < 3 {
        return Err(Error::Config(format!("braid lengths must be at least 3, got n = {n}, m = {m}")));
    }
    if !symmetric_feasible(n, m)? {
        return Err(Error::NoSuchSymmetricGroup { n, m });
    }
    let sign = if im_sign < 0 { -1 } else { 1 };
    let sigma = two_cos_pi_over(n);
    let re_rho = (&sigma * &sigma).scale(Rational::new(1, 2));
    let abs_rho = two_cos_pi_over(m);
    let rho: Value = match cosearch::known_ab(n, m) {
        Some((a, b)) => {
            let s = cosearch::trace_s(a, b);
            let mut rho = &Cyclo::one() + &s;
            if sign < 0 {
                rho = rho.conj();
            }
            if rho.re() != re_rho || rho.norm_sq() != &abs_rho * &abs_rho {
                return Err(Error::Inconsistent(format!("trace table entry for ({n}, {m}) does not match")));
            }
            Value::Exact(rho)
        }
        None => {
            let im2 = &(&abs_rho * &abs_rho) - &(&re_rho * &re_rho);
            if im2.is_zero() {
                Value::Exact(re_rho.clone())
            } else {
                let w = prec.max(53) + 32;
                let im = im2.to_float(w).sqrt();
                let im = if sign < 0 { im.neg() } else { im };
                let z = re_rho.to_float(w).add(&im.mul_i());
                Value::Float(z)
            }
        }
    };
    let mut g = build_group(p, rho, Value::Exact(sigma.clone()), Value::Exact(sigma), prec)?;
    if !g.symmetric {
        return Err(Error::Inconsistent(format!("({n}, {m}) parameters failed the symmetric-mode check")));
    }
    g.label = Some(SymLabel { n, m, im_sign: sign });
    Ok(g)
}

/// Symmetric group built from an exact `ρ` and `σ = τ` (checked: `σ² = ρ + ρ̄`).
pub fn build_from_rho(p: u32, rho: Cyclo, sigma: Cyclo, prec: usize) -> Result<Group> {
    let g = build_group(p, Value::Exact(rho), Value::Exact(sigma.clone()), Value::Exact(sigma), prec)?;
    if !g.symmetric {
        return Err(Error::NotSymmetric("σ = τ = √(ρ + ρ̄) with Re ρ > 0 is required".into()));
    }
    Ok(g)
}

/// The symmetry `S` (exact when available).
pub fn symmetry_s(g: &Group) -> Result<&MatF> {
    g.float.s.as_ref().ok_or_else(|| Error::NotSymmetric("group was not built in symmetric mode".into()))
}

pub fn symmetry_s_exact(g: &Group) -> Result<&MatX> {
    match &g.exact {
        Some(x) => x.s.as_ref().ok_or_else(|| Error::NotSymmetric("group was not built in symmetric mode".into())),
        None => Err(Error::NotSymmetric("group has no exact matrices".into())),
    }
}

/// The complex reflection of angle `φ` with polar vector `v`, normalised to
/// determinant one: `e^{-iφ/3}(I + (e^{iφ} − 1) v v* H / ⟨v, v⟩)`.
pub fn reflection_matrix<T: Scalar>(phi: Angle, v: &[T; 3], h: &Mat3<T>, prec: usize) -> Result<Mat3<T>> {
    // Row vector v* H.
    let vh: [T; 3] = [0, 1, 2].map(|j| {
        (0..3).fold(T::zero(), |acc, i| acc.add(&v[i].conj().mul(&h.m[i][j])))
    });
    let vv = (0..3).fold(T::zero(), |acc, j| acc.add(&vh[j].mul(&v[j])));
    if vv.sign_re()? != Ordering::Greater {
        return Err(Error::PolarNotPositive);
    }
    let e = T::from_cyclo(&root_of_unity(phi), prec);
    let scale = T::from_cyclo(&root_of_unity(Angle::from_ratio(-phi.ratio() / Rational::from_integer(3))), prec);
    let coef = e.sub(&T::one()).mul(&vv.try_inv()?);
    let proj = Mat3::from_fn(|i, j| v[i].mul(&vh[j]).mul(&coef));
    Ok(Mat3::<T>::identity().add(&proj).scale(&scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::form_residual;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn alpha_matches_definition() {
        for p in 2..=12 {
            let un = Units::new(p);
            let u3 = un.u.pow(3);
            let want = &(&Cyclo::from_int(2) - &u3) - &u3.conj();
            assert_eq!(&un.alpha * &un.alpha, want, "p={p}");
            assert_eq!(un.alpha.real_sign().unwrap(), Ordering::Greater);
        }
    }

    #[test]
    fn generators_have_det_one_and_preserve_h() {
        let rho = Cyclo::from_rational(q(1, 2)) + Cyclo::root(1, 5).scale(q(1, 3));
        let sigma = Cyclo::from_int(1) + Cyclo::root(1, 7);
        let tau = Cyclo::from_rational(q(3, 4));
        for p in [2, 3, 5] {
            let g = build_group(p, rho.clone().into(), sigma.clone().into(), tau.clone().into(), 256).unwrap();
            let x = g.exact.as_ref().unwrap();
            for r in [&x.r1, &x.r2, &x.r3] {
                assert_eq!(r.det(), Cyclo::one());
                assert_eq!(form_residual(r, &x.h), 0.0);
            }
            assert!(x.h.is_hermitian());
            assert!(!g.symmetric);
        }
    }

    #[test]
    fn degenerate_parameters_give_scalar_form() {
        let g = build_group(5, Cyclo::zero().into(), Cyclo::zero().into(), Cyclo::zero().into(), 256).unwrap();
        let x = g.exact.as_ref().unwrap();
        assert!(x.h.exact_eq(&MatX::scalar(&g.units.alpha)));
        assert_eq!(g.signature.verdict(), "(3,0)");
        assert!(g.warning.is_some());
    }

    #[test]
    fn reflection_formula_reproduces_generators() {
        let rho = Cyclo::one() + Cyclo::root(1, 5);
        let sigma = Cyclo::from_int(1);
        for p in [2, 3, 4, 7] {
            let g = build_group(p, rho.clone().into(), sigma.clone().into(), sigma.clone().into(), 256).unwrap();
            let x = g.exact.as_ref().unwrap();
            let phi = Angle::two_pi_over(p as i64);
            let e = |k: usize| [0, 1, 2].map(|i| if i == k { Cyclo::one() } else { Cyclo::zero() });
            for (k, r) in [&x.r1, &x.r2, &x.r3].into_iter().enumerate() {
                let m = reflection_matrix(phi, &e(k), &x.h, 256).unwrap();
                assert!(m.exact_eq(r), "p={p} k={k}");
            }
            // Applying the reflection p times gives the scalar e^{-2πi/3}.
            let rp = x.r1.pow(p);
            assert!(rp.exact_eq(&MatX::scalar(&Cyclo::root(-1, 3))));
        }
    }

    #[test]
    fn reflection_fixes_orthogonal_vectors() {
        let g = build_symmetric(4, 4, 3, 1, 256).unwrap();
        let x = g.exact.as_ref().unwrap();
        let phi = Angle::two_pi_over(4);
        let v = [Cyclo::one(), Cyclo::zero(), Cyclo::zero()];
        let r = reflection_matrix(phi, &v, &x.h, 256).unwrap();
        // w = (−β1/α, 1, 0) satisfies ⟨w, v⟩ = 0.
        let w = [-(&x.h.m[0][1] * &x.h.m[0][0].inverse()), Cyclo::one(), Cyclo::zero()];
        let inner = (0..3).fold(Cyclo::zero(), |acc, j| &acc + &(&x.h.m[0][j] * &w[j]));
        assert!(inner.is_zero());
        let rw: Vec<Cyclo> = (0..3).map(|i| (0..3).fold(Cyclo::zero(), |acc, j| &acc + &(&r.m[i][j] * &w[j]))).collect();
        let scale = root_of_unity(Angle::new(-1, 6).unwrap());
        for i in 0..3 {
            assert_eq!(rw[i], &w[i] * &scale);
        }
    }

    #[test]
    fn negative_polar_vector_rejected() {
        let mut h = MatX::identity();
        h.m[2][2] = Cyclo::from_int(-1);
        let v = [Cyclo::zero(), Cyclo::zero(), Cyclo::one()];
        assert_eq!(reflection_matrix(Angle::pi(), &v, &h, 256).unwrap_err(), Error::PolarNotPositive);
    }

    #[test]
    fn symmetric_rows_match_table() {
        let g = build_symmetric(3, 3, 4, 1, 256).unwrap();
        let rho = g.params.rho.exact().unwrap().clone();
        // (1 + i√7)/2 as 1 + ζ7 + ζ7² + ζ7⁴.
        let want = Cyclo::one() + Cyclo::root(1, 7) + Cyclo::root(2, 7) + Cyclo::root(4, 7);
        assert_eq!(rho, want);
        assert_eq!(g.params.sigma.exact().unwrap(), &Cyclo::one());
        let g = build_symmetric(4, 4, 3, 1, 256).unwrap();
        assert_eq!(g.params.rho.exact().unwrap(), &Cyclo::one());
        assert_eq!(&(g.params.sigma.exact().unwrap().pow(2)), &Cyclo::from_int(2));
        for k in 3..=12u32 {
            let g = build_symmetric(2, k, k, 1, 256).unwrap();
            let want = &root_of_unity(Angle::pi_over(k as i64)) * &two_cos_pi_over(k);
            assert_eq!(g.params.rho.exact().unwrap(), &want, "k={k}");
        }
        let c = build_symmetric(3, 3, 4, -1, 256).unwrap();
        assert_eq!(c.params.rho.exact().unwrap(), &want.conj());
    }

    #[test]
    fn infeasible_pair_is_rejected() {
        let err = build_symmetric(2, 6, 3, 1, 256).unwrap_err();
        assert!(err.to_string().contains("no such symmetric group"));
        assert!(symmetric_feasible(3, 9).unwrap());
    }

    #[test]
    fn float_path_for_unlisted_pairs() {
        let g = build_symmetric(5, 3, 7, 1, 256).unwrap();
        assert!(!g.is_exact());
        assert!(g.symmetric);
        let rho = g.rho_float();
        let c7 = 2.0 * (std::f64::consts::PI / 7.0).cos();
        assert!((rho.abs_f64() - c7).abs() < 1e-15);
        assert!((rho.re_f64() - 0.5).abs() < 1e-15);
        assert!(form_residual(&g.float.r2, &g.float.h) < 1e-60);
    }
}
