//! 3×3 complex linear algebra over exact cyclotomic or high-precision
//! floating entries.

mod eigen;
mod signature;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{AComplex, Cyclo};

pub use eigen::{char_poly, eigenvalues3, hausdorff};
pub use signature::{hermitian_signature, hermitian_signature_float, Signature};

/// Entry type of a [`Mat3`].
pub trait Scalar: Clone + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn conj(&self) -> Self;
    /// Lossless embedding of an exact value (rounded for floats).
    fn from_cyclo(c: &Cyclo, prec: usize) -> Self;
    /// Magnitude used for residual reporting; exactly 0 for exact zeros.
    fn magnitude(&self) -> f64;
    /// Working precision, or 0 for exact values.
    fn precision(&self) -> usize;
    fn try_inv(&self) -> Result<Self>;
    /// Sign of the real part (exact for cyclotomic values, which must be real).
    fn sign_re(&self) -> Result<std::cmp::Ordering>;
}

impl Scalar for Cyclo {
    fn zero() -> Self {
        Cyclo::zero()
    }
    fn one() -> Self {
        Cyclo::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        Cyclo::conj(self)
    }
    fn from_cyclo(c: &Cyclo, _prec: usize) -> Self {
        c.clone()
    }
    fn magnitude(&self) -> f64 {
        if self.is_zero() {
            0.0
        } else {
            let (r, i) = self.to_f64();
            r.hypot(i)
        }
    }
    fn precision(&self) -> usize {
        0
    }
    fn try_inv(&self) -> Result<Self> {
        self.try_inverse()
    }
    fn sign_re(&self) -> Result<std::cmp::Ordering> {
        self.real_sign()
    }
}

impl Scalar for AComplex {
    fn zero() -> Self {
        AComplex::zero(53)
    }
    fn one() -> Self {
        AComplex::one(53)
    }
    fn add(&self, o: &Self) -> Self {
        AComplex::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        AComplex::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        AComplex::mul(self, o)
    }
    fn neg(&self) -> Self {
        AComplex::neg(self)
    }
    fn conj(&self) -> Self {
        AComplex::conj(self)
    }
    fn from_cyclo(c: &Cyclo, prec: usize) -> Self {
        c.to_float(prec)
    }
    fn magnitude(&self) -> f64 {
        self.abs_f64()
    }
    fn precision(&self) -> usize {
        self.prec()
    }
    fn try_inv(&self) -> Result<Self> {
        if self.abs_f64() <= 2f64.powi(-(self.prec() as i32) / 2) {
            return Err(Error::DivisionByZero);
        }
        Ok(AComplex::one(self.prec()).div(self))
    }
    fn sign_re(&self) -> Result<std::cmp::Ordering> {
        let v = self.re_f64();
        Ok(if v.abs() <= 2f64.powi(-(self.prec() as i32) / 2) {
            std::cmp::Ordering::Equal
        } else if v > 0.0 {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Less
        })
    }
}

/// A 3×3 matrix, row-major.
#[derive(Clone, Debug)]
pub struct Mat3<T> {
    pub m: [[T; 3]; 3],
}

/// Exact matrix.
pub type MatX = Mat3<Cyclo>;
/// Floating matrix.
pub type MatF = Mat3<AComplex>;

impl<T: Scalar> Mat3<T> {
    pub fn new(m: [[T; 3]; 3]) -> Self {
        Mat3 { m }
    }

    pub fn from_fn(f: impl Fn(usize, usize) -> T) -> Self {
        Mat3 { m: [0, 1, 2].map(|i| [0, 1, 2].map(|j| f(i, j))) }
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn scalar(c: &T) -> Self {
        Self::from_fn(|i, j| if i == j { c.clone() } else { T::zero() })
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.m[i][j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| {
            let a = self.m[i][0].mul(&o.m[0][j]);
            let b = self.m[i][1].mul(&o.m[1][j]);
            let c = self.m[i][2].mul(&o.m[2][j]);
            a.add(&b).add(&c)
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j].add(&o.m[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(|i, j| self.m[i][j].sub(&o.m[i][j]))
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_fn(|i, j| self.m[i][j].mul(c))
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.m[j][i].clone())
    }

    pub fn trace(&self) -> T {
        self.m[0][0].add(&self.m[1][1]).add(&self.m[2][2])
    }

    pub fn det(&self) -> T {
        let m = &self.m;
        let t1 = m[0][0].mul(&m[1][1].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][1])));
        let t2 = m[0][1].mul(&m[1][0].mul(&m[2][2]).sub(&m[1][2].mul(&m[2][0])));
        let t3 = m[0][2].mul(&m[1][0].mul(&m[2][1]).sub(&m[1][1].mul(&m[2][0])));
        t1.sub(&t2).add(&t3)
    }

    /// Classical adjugate: `M · adj(M) = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.m;
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0].mul(&m[r1][c1]).sub(&m[r0][c1].mul(&m[r1][c0]));
        // Cofactor matrix, transposed.
        Mat3::new([
            [cof(1, 2, 1, 2), cof(1, 2, 0, 2).neg(), cof(1, 2, 0, 1)],
            [cof(0, 2, 1, 2).neg(), cof(0, 2, 0, 2), cof(0, 2, 0, 1).neg()],
            [cof(0, 1, 1, 2), cof(0, 1, 0, 2).neg(), cof(0, 1, 0, 1)],
        ])
        .transpose()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.m.iter().flatten().map(Scalar::magnitude).fold(0.0, f64::max)
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Mat3<U> {
        Mat3 { m: [0, 1, 2].map(|i| [0, 1, 2].map(|j| f(&self.m[i][j]))) }
    }

    pub fn precision(&self) -> usize {
        self.m.iter().flatten().map(Scalar::precision).max().unwrap_or(0)
    }
}

impl MatX {
    pub fn to_float(&self, prec: usize) -> MatF {
        self.map(|c| c.to_float(prec))
    }

    /// Exact inverse. Determinant-1 matrices invert by their adjugate alone.
    pub fn inverse(&self) -> Result<MatX> {
        let d = self.det();
        if d.is_zero() {
            return Err(Error::SingularMatrix);
        }
        let adj = self.adjugate();
        if d == Cyclo::one() {
            return Ok(adj);
        }
        let inv = d.try_inverse()?;
        Ok(adj.scale(&inv))
    }

    pub fn is_hermitian(&self) -> bool {
        self.m.iter().flatten().zip(self.adjoint().m.iter().flatten()).all(|(a, b)| a == b)
    }

    pub fn exact_eq(&self, o: &MatX) -> bool {
        self.m.iter().flatten().zip(o.m.iter().flatten()).all(|(a, b)| a == b)
    }
}

impl MatF {
    /// Float inverse; refuses when `|det| ≤ 2^{-prec/2}`.
    pub fn inverse(&self) -> Result<MatF> {
        let d = self.det();
        let prec = self.precision().max(53);
        if d.abs_f64() <= 2f64.powi(-(prec as i32) / 2) {
            return Err(Error::SingularMatrix);
        }
        let inv = AComplex::one(prec).div(&d);
        Ok(self.adjugate().scale(&inv))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.sub(&self.adjoint()).max_abs() <= tol
    }
}

/// Max-norm of `M*·H·M − H`: zero when `M` preserves the form.
pub fn form_residual<T: Scalar>(m: &Mat3<T>, h: &Mat3<T>) -> f64 {
    m.adjoint().mul(h).mul(m).sub(h).max_abs()
}

fn omegas<T: Scalar>(prec: usize) -> [T; 3] {
    [T::one(), T::from_cyclo(&Cyclo::root(1, 3), prec), T::from_cyclo(&Cyclo::root(2, 3), prec)]
}

/// `min_{λ ∈ {1,ω,ω²}} max|A − λB|`.
pub fn projective_residual<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>) -> f64 {
    let prec = a.precision().max(b.precision()).max(53);
    omegas::<T>(prec).iter().map(|l| a.sub(&b.scale(l)).max_abs()).fold(f64::INFINITY, f64::min)
}

/// True iff `A = λB` for a cube root of unity `λ`, entrywise within `tol`.
///
/// For exact matrices the comparison is exact and `tol` is ignored.
pub fn projective_equal<T: Scalar>(a: &Mat3<T>, b: &Mat3<T>, tol: f64) -> bool {
    let exact = a.precision() == 0 && b.precision() == 0;
    let r = projective_residual(a, b);
    if exact {
        r == 0.0
    } else {
        r <= tol
    }
}

/// Least `k ≤ max_order` with `M^k` projectively equal to the identity.
pub fn projective_order<T: Scalar>(m: &Mat3<T>, max_order: u32, tol: f64) -> Option<u32> {
    let id = Mat3::<T>::identity();
    let mut acc = m.clone();
    for k in 1..=max_order {
        if projective_equal(&acc, &id, tol) {
            return Some(k);
        }
        acc = acc.mul(m);
    }
    None
}

/// Isometry type of a determinant-1 form-preserving matrix, read off its trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementType {
    RegularElliptic,
    Loxodromic,
    Boundary,
}

impl fmt::Display for ElementType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementType::RegularElliptic => "regular-elliptic",
            ElementType::Loxodromic => "loxodromic",
            ElementType::Boundary => "boundary",
        })
    }
}

/// `f(τ) = |τ|⁴ − 8 Re(τ³) + 18|τ|² − 27`.
pub fn trace_discriminant(tr: &AComplex) -> AComplex {
    let prec = tr.prec();
    let a2 = AComplex::real(tr.abs2(), prec);
    let t3 = tr.powi(3);
    let re3 = AComplex::real(t3.re.clone(), prec);
    a2.mul(&a2)
        .sub(&re3.mul(&AComplex::from_i64(8, prec)))
        .add(&a2.mul(&AComplex::from_i64(18, prec)))
        .sub(&AComplex::from_i64(27, prec))
}

pub fn classify_isometry(tr: &AComplex, tol: f64) -> ElementType {
    let f = trace_discriminant(tr).re_f64();
    if f.abs() <= tol {
        ElementType::Boundary
    } else if f > 0.0 {
        ElementType::Loxodromic
    } else {
        ElementType::RegularElliptic
    }
}

/// Exact variant of [`classify_isometry`] for cyclotomic traces.
pub fn classify_isometry_exact(tr: &Cyclo) -> Result<ElementType> {
    let a2 = tr.norm_sq();
    let t3 = tr.pow(3).re();
    let f = &(&(&a2 * &a2) - &t3.scale(8.into())) + &a2.scale(18.into()) - Cyclo::from_int(27);
    Ok(match f.real_sign()? {
        std::cmp::Ordering::Equal => ElementType::Boundary,
        std::cmp::Ordering::Greater => ElementType::Loxodromic,
        std::cmp::Ordering::Less => ElementType::RegularElliptic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{Angle, Rational};

    fn cm(rows: [[(i64, u32); 3]; 3]) -> MatX {
        // (k, n) ↦ ζ_n^k, with n = 0 meaning the integer k.
        Mat3::from_fn(|i, j| {
            let (k, n) = rows[i][j];
            if n == 0 {
                Cyclo::from_int(k)
            } else {
                Cyclo::root(k, n)
            }
        })
    }

    #[test]
    fn exact_inverse_and_det() {
        let m = cm([[(1, 0), (1, 3), (0, 0)], [(0, 0), (1, 7), (2, 0)], [(1, 4), (0, 0), (3, 0)]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).exact_eq(&MatX::identity()));
        let sing = cm([[(1, 0), (2, 0), (3, 0)], [(2, 0), (4, 0), (6, 0)], [(1, 5), (0, 0), (1, 0)]]);
        assert_eq!(sing.inverse().unwrap_err(), Error::SingularMatrix);
        assert!(sing.det().is_zero());
    }

    #[test]
    fn float_inverse() {
        let m = cm([[(2, 0), (1, 3), (0, 0)], [(0, 0), (1, 7), (2, 0)], [(1, 4), (0, 0), (3, 0)]]).to_float(256);
        let id = m.mul(&m.inverse().unwrap());
        assert!(id.sub(&MatF::identity()).max_abs() < 2f64.powi(-246));
    }

    #[test]
    fn projective_helpers() {
        let m = cm([[(1, 0), (1, 3), (0, 0)], [(0, 0), (1, 7), (2, 0)], [(1, 4), (0, 0), (3, 0)]]);
        let w = Cyclo::root(1, 3);
        assert!(projective_equal(&m, &m.scale(&w), 0.0));
        assert!(!projective_equal(&m, &m.scale(&Cyclo::i()), 0.0));
        let mf = m.to_float(256);
        assert!(projective_equal(&mf, &mf.scale(&w.to_float(256)), 1e-60));
        assert_eq!(projective_order(&MatX::identity(), 5, 0.0), Some(1));
        let rot = MatX::scalar(&Cyclo::root(1, 9));
        // ζ_9^3 = ω, so the third power is projectively trivial.
        assert_eq!(projective_order(&rot, 10, 0.0), Some(3));
    }

    #[test]
    fn form_residual_scalar_cases() {
        let h = cm([[(2, 0), (1, 0), (0, 0)], [(1, 0), (-1, 0), (0, 0)], [(0, 0), (0, 0), (5, 0)]]);
        assert_eq!(form_residual(&MatX::identity(), &h), 0.0);
        let two = MatX::scalar(&Cyclo::from_int(2));
        assert_eq!(form_residual(&two, &h), 3.0 * h.max_abs());
    }

    #[test]
    fn discriminant_classification() {
        let p = 256;
        assert_eq!(classify_isometry(&AComplex::from_i64(3, p), 1e-30), ElementType::Boundary);
        assert_eq!(classify_isometry(&AComplex::from_i64(0, p), 1e-30), ElementType::RegularElliptic);
        assert_eq!(classify_isometry(&AComplex::from_i64(4, p), 1e-30), ElementType::Loxodromic);
        assert_eq!(classify_isometry_exact(&Cyclo::from_int(3)).unwrap(), ElementType::Boundary);
        let tr = crate::exact::cos_exact(Angle::new(1, 5).unwrap()).scale(Rational::from_integer(2));
        assert_eq!(classify_isometry_exact(&tr).unwrap(), ElementType::RegularElliptic);
    }
}
