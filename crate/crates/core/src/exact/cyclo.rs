//! Exact arithmetic in cyclotomic fields.
//!
//! A [`Cyclo`] is stored as a rational combination of roots of unity of a
//! fixed conductor `N`, written in the Zumbroich basis: the subset of powers
//! `ζ_N^j` that forms a Q-basis of `Q(ζ_N)`. Because the basis is a basis,
//! the representation is canonical for a fixed `N`, which makes the zero test
//! and equality purely structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use astro_float::BigFloat;
use num_integer::Integer;

use super::acomplex::{self, AComplex};
use super::{Angle, Rational};
use crate::error::{Error, Result};

/// Upper bound on conductors created by arithmetic.
pub const CONDUCTOR_BOUND: u64 = 1_000_000;

/// Above this conductor, results are reduced to their minimal conductor.
const LAZY_REDUCE_ABOVE: u32 = 5000;

#[derive(Clone, PartialEq, Eq)]
struct Raw {
    n: u32,
    den: i128,
    terms: Vec<(u32, i128)>,
}

/// An exact element of a cyclotomic field.
#[derive(Clone)]
pub struct Cyclo {
    raw: Raw,
}

fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn checked_lcm(a: u32, b: u32) -> Result<u32> {
    let l = (a as u64).lcm(&(b as u64));
    if l > CONDUCTOR_BOUND {
        return Err(Error::ConductorTooLarge { conductor: l, bound: CONDUCTOR_BOUND });
    }
    Ok(l as u32)
}

/// Rewrite a dense coefficient vector of length `n` into the Zumbroich basis.
fn canonicalize(n: u32, dense: &mut [i128]) -> Result<()> {
    let nn = n as usize;
    for (p, e) in factor(n) {
        let q = p.pow(e) as usize;
        let top = q / p as usize;
        let step = nn / p as usize;
        for j in 0..nn {
            let c = dense[j];
            if c == 0 {
                continue;
            }
            let digit = (j % q) / top;
            if p == 2 {
                if digit == 1 {
                    dense[j] = 0;
                    let k = (j + step) % nn;
                    dense[k] = dense[k].checked_sub(c).ok_or(Error::CoefficientOverflow)?;
                }
            } else if digit == 0 {
                dense[j] = 0;
                for t in 1..p as usize {
                    let k = (j + t * step) % nn;
                    dense[k] = dense[k].checked_sub(c).ok_or(Error::CoefficientOverflow)?;
                }
            }
        }
    }
    Ok(())
}

impl Raw {
    fn from_dense(n: u32, den: i128, mut dense: Vec<i128>) -> Result<Raw> {
        canonicalize(n, &mut dense)?;
        let mut terms: Vec<(u32, i128)> =
            dense.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(j, c)| (j as u32, c)).collect();
        let mut den = den;
        if den < 0 {
            den = den.checked_neg().ok_or(Error::CoefficientOverflow)?;
            for t in terms.iter_mut() {
                t.1 = t.1.checked_neg().ok_or(Error::CoefficientOverflow)?;
            }
        }
        if terms.is_empty() {
            return Ok(Raw { n: 1, den: 1, terms });
        }
        let g = terms.iter().fold(den, |g, t| g.gcd(&t.1));
        if g > 1 {
            den /= g;
            for t in terms.iter_mut() {
                t.1 /= g;
            }
        }
        // Q(ζ_2m) = Q(ζ_m) for odd m, and canonical exponents are then all even.
        let mut raw = halve_if_twice_odd(Raw { n, den, terms })?;
        if raw.n > LAZY_REDUCE_ABOVE {
            raw = reduce_raw(raw)?;
        }
        Ok(raw)
    }

    fn dense(&self) -> Vec<i128> {
        let mut d = vec![0i128; self.n as usize];
        for &(j, c) in &self.terms {
            d[j as usize] = c;
        }
        d
    }

    fn lift(&self, m: u32) -> Result<Raw> {
        if m == self.n {
            return Ok(self.clone());
        }
        debug_assert!(m.is_multiple_of(self.n));
        let f = m / self.n;
        let mut d = vec![0i128; m as usize];
        for &(j, c) in &self.terms {
            d[(j * f) as usize] = c;
        }
        let mut dense = d;
        canonicalize(m, &mut dense)?;
        let terms = dense.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(j, c)| (j as u32, c)).collect();
        Ok(Raw { n: m, den: self.den, terms })
    }

    /// Projection onto `Q(ζ_{N/p})` by the normalised relative trace.
    fn project(&self, p: u32) -> Result<Raw> {
        let n = self.n;
        let np = n / p;
        let mut dense = vec![0i128; np as usize];
        let mut den = self.den;
        if np.is_multiple_of(p) {
            for &(j, c) in &self.terms {
                if j % p == 0 {
                    dense[(j / p) as usize] += c;
                }
            }
        } else {
            // ζ_N^j = ζ_{N'}^{jx}·ζ_p^{jy} with x = p^{-1} mod N'.
            let x = if np == 1 { 0 } else { modinv(p as i64, np as i64) as u64 };
            let pm1 = (p - 1) as i128;
            den = den.checked_mul(pm1).ok_or(Error::CoefficientOverflow)?;
            for &(j, c) in &self.terms {
                let k = ((j as u64 * x) % np as u64) as usize;
                let v = if j % p == 0 { c.checked_mul(pm1).ok_or(Error::CoefficientOverflow)? } else { -c };
                dense[k] = dense[k].checked_add(v).ok_or(Error::CoefficientOverflow)?;
            }
        }
        Raw::from_dense_plain(np, den, dense)
    }

    fn from_dense_plain(n: u32, den: i128, mut dense: Vec<i128>) -> Result<Raw> {
        canonicalize(n, &mut dense)?;
        let mut terms: Vec<(u32, i128)> =
            dense.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(j, c)| (j as u32, c)).collect();
        if terms.is_empty() {
            return Ok(Raw { n, den: 1, terms });
        }
        let mut den = den;
        let g = terms.iter().fold(den, |g, t| g.gcd(&t.1));
        if g > 1 {
            den /= g;
            for t in terms.iter_mut() {
                t.1 /= g;
            }
        }
        Ok(Raw { n, den, terms })
    }

    /// Value equality for two representations at the same conductor.
    fn same_value_at(&self, other: &Raw) -> bool {
        if self.den == other.den {
            return self.terms == other.terms;
        }
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|(a, b)| {
                a.0 == b.0 && a.1.checked_mul(other.den).is_some_and(|l| Some(l) == b.1.checked_mul(self.den))
            })
    }
}

fn modinv(a: i64, m: i64) -> i64 {
    let e = a.extended_gcd(&m);
    debug_assert_eq!(e.gcd, 1);
    e.x.mod_floor(&m)
}

fn reduce_raw(mut raw: Raw) -> Result<Raw> {
    if raw.terms.is_empty() {
        return Ok(Raw { n: 1, den: 1, terms: Vec::new() });
    }
    loop {
        let mut changed = false;
        for (p, _) in factor(raw.n) {
            let cand = raw.project(p)?;
            let back = cand.lift(raw.n)?;
            if back.same_value_at(&raw) {
                raw = cand;
                changed = true;
                break;
            }
        }
        if !changed {
            return halve_if_twice_odd(raw);
        }
    }
}

/// `Q(ζ_2m) = Q(ζ_m)` for odd `m`: canonical exponents at `2m` are even, and
/// halving them needs a fresh reduction because `j ↦ j/2` moves the leading
/// `p`-adic digit whenever `p² | m`.
fn halve_if_twice_odd(raw: Raw) -> Result<Raw> {
    if raw.n % 4 != 2 {
        return Ok(raw);
    }
    let m = raw.n / 2;
    let mut dense = vec![0i128; m as usize];
    for &(j, c) in &raw.terms {
        debug_assert!(j % 2 == 0);
        dense[(j / 2) as usize] = c;
    }
    Raw::from_dense_plain(m, raw.den, dense)
}

fn common(a: &Raw, b: &Raw) -> Result<(Raw, Raw)> {
    let n = checked_lcm(a.n, b.n)?;
    Ok((a.lift(n)?, b.lift(n)?))
}

impl Cyclo {
    pub fn zero() -> Self {
        Cyclo { raw: Raw { n: 1, den: 1, terms: Vec::new() } }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rational(Rational::from_integer(k as i128))
    }

    pub fn from_rational(r: Rational) -> Self {
        if *r.numer() == 0 {
            return Self::zero();
        }
        Cyclo { raw: Raw { n: 1, den: *r.denom(), terms: vec![(0, *r.numer())] } }
    }

    /// `ζ_n^k = e^{2πik/n}`.
    pub fn root(k: i64, n: u32) -> Self {
        assert!(n >= 1, "root of unity needs a positive order");
        let j = k.rem_euclid(n as i64) as usize;
        let mut dense = vec![0i128; n as usize];
        dense[j] = 1;
        Cyclo { raw: Raw::from_dense(n, 1, dense).expect("a single root of unity cannot overflow") }
    }

    /// `i = ζ_4`.
    pub fn i() -> Self {
        Self::root(1, 4)
    }

    /// Build from a rational combination `Σ c_j ζ_n^j` in any (not necessarily canonical) form.
    pub fn from_coeffs(n: u32, coeffs: &[(i64, Rational)]) -> Result<Self> {
        if n as u64 > CONDUCTOR_BOUND {
            return Err(Error::ConductorTooLarge { conductor: n as u64, bound: CONDUCTOR_BOUND });
        }
        let mut acc = Cyclo::zero();
        for (j, c) in coeffs {
            acc = acc.try_add(&Cyclo::root(*j, n).scale(*c))?;
        }
        Ok(acc)
    }

    pub fn conductor(&self) -> u32 {
        self.raw.n
    }

    /// Coefficients over the Zumbroich basis of the stored conductor.
    pub fn coefficients(&self) -> Vec<(u32, Rational)> {
        self.raw.terms.iter().map(|&(j, c)| (j, Rational::new(c, self.raw.den))).collect()
    }

    /// Sum of absolute values of the coefficients, as a float (used in error bounds).
    pub fn coeff_l1(&self) -> f64 {
        self.raw.terms.iter().map(|t| (t.1 as f64).abs()).sum::<f64>() / self.raw.den as f64
    }

    pub fn is_zero(&self) -> bool {
        self.raw.terms.is_empty()
    }

    pub fn try_add(&self, other: &Cyclo) -> Result<Cyclo> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = common(&self.raw, &other.raw)?;
        let l = a.den.lcm(&b.den);
        let fa = l / a.den;
        let fb = l / b.den;
        let mut dense = vec![0i128; a.n as usize];
        for &(j, c) in &a.terms {
            dense[j as usize] = c.checked_mul(fa).ok_or(Error::CoefficientOverflow)?;
        }
        for &(j, c) in &b.terms {
            let v = c.checked_mul(fb).ok_or(Error::CoefficientOverflow)?;
            dense[j as usize] = dense[j as usize].checked_add(v).ok_or(Error::CoefficientOverflow)?;
        }
        Ok(Cyclo { raw: Raw::from_dense(a.n, l, dense)? })
    }

    pub fn try_sub(&self, other: &Cyclo) -> Result<Cyclo> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Cyclo) -> Result<Cyclo> {
        if self.is_zero() || other.is_zero() {
            return Ok(Cyclo::zero());
        }
        let n = checked_lcm(self.raw.n, other.raw.n)?;
        let (fa, fb) = (n / self.raw.n, n / other.raw.n);
        let mut dense = vec![0i128; n as usize];
        for &(j1, c1) in &self.raw.terms {
            for &(j2, c2) in &other.raw.terms {
                let k = ((j1 * fa + j2 * fb) % n) as usize;
                let v = c1.checked_mul(c2).ok_or(Error::CoefficientOverflow)?;
                dense[k] = dense[k].checked_add(v).ok_or(Error::CoefficientOverflow)?;
            }
        }
        let den = self.raw.den.checked_mul(other.raw.den).ok_or(Error::CoefficientOverflow)?;
        Ok(Cyclo { raw: Raw::from_dense(n, den, dense)? })
    }

    pub fn scale(&self, r: Rational) -> Cyclo {
        self.try_scale(r).expect("coefficient overflow in Cyclo::scale")
    }

    pub fn try_scale(&self, r: Rational) -> Result<Cyclo> {
        if *r.numer() == 0 || self.is_zero() {
            return Ok(Cyclo::zero());
        }
        let dense = {
            let mut d = self.raw.dense();
            for c in d.iter_mut() {
                *c = c.checked_mul(*r.numer()).ok_or(Error::CoefficientOverflow)?;
            }
            d
        };
        let den = self.raw.den.checked_mul(*r.denom()).ok_or(Error::CoefficientOverflow)?;
        Ok(Cyclo { raw: Raw::from_dense(self.raw.n, den, dense)? })
    }

    fn neg_ref(&self) -> Cyclo {
        let mut raw = self.raw.clone();
        for t in raw.terms.iter_mut() {
            t.1 = -t.1;
        }
        Cyclo { raw }
    }

    /// Apply the Galois automorphism `ζ ↦ ζ^k` (`k` coprime to the conductor).
    pub fn galois(&self, k: i64) -> Cyclo {
        let n = self.raw.n;
        if n <= 2 {
            return self.clone();
        }
        let k = k.rem_euclid(n as i64) as u64;
        assert_eq!(k.gcd(&(n as u64)), 1, "Galois exponent must be coprime to the conductor");
        let mut dense = vec![0i128; n as usize];
        for &(j, c) in &self.raw.terms {
            dense[((j as u64 * k) % n as u64) as usize] = c;
        }
        Cyclo { raw: Raw::from_dense(n, self.raw.den, dense).expect("Galois action permutes coefficients") }
    }

    /// Complex conjugate: coefficient of `ζ^j` moves to `ζ^{N-j}`.
    pub fn conj(&self) -> Cyclo {
        self.galois(-1)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    /// Real part `(x + x̄)/2`.
    pub fn re(&self) -> Cyclo {
        (self + &self.conj()).scale(Rational::new(1, 2))
    }

    /// Imaginary part `(x − x̄)/(2i)`.
    pub fn im(&self) -> Cyclo {
        let d = self - &self.conj();
        (&d * &Cyclo::i()).scale(Rational::new(-1, 2))
    }

    /// `|x|²` as a real cyclotomic number.
    pub fn norm_sq(&self) -> Cyclo {
        self * &self.conj()
    }

    /// The value as a rational number, if it is one.
    pub fn is_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::from_integer(0));
        }
        if self.raw.n == 1 {
            return Some(Rational::new(self.raw.terms[0].1, self.raw.den));
        }
        // Compare against the canonical expansion of 1 at the same conductor.
        let one = Raw { n: 1, den: 1, terms: vec![(0, 1)] }.lift(self.raw.n).ok()?;
        if one.terms.len() != self.raw.terms.len() {
            return None;
        }
        let (j0, c0) = self.raw.terms[0];
        if one.terms[0].0 != j0 {
            return None;
        }
        let ratio = Rational::new(c0, one.terms[0].1);
        for (a, b) in self.raw.terms.iter().zip(one.terms.iter()) {
            if a.0 != b.0 || Rational::from_integer(a.1) != ratio * Rational::from_integer(b.1) {
                return None;
            }
        }
        Some(ratio / Rational::from_integer(self.raw.den))
    }

    /// Rewrite at the smallest conductor whose field contains the value.
    pub fn reduce_conductor(&self) -> Cyclo {
        Cyclo { raw: reduce_raw(self.raw.clone()).expect("projection cannot overflow after canonicalisation") }
    }

    pub fn try_inverse(&self) -> Result<Cyclo> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.is_rational() {
            return Ok(Cyclo::from_rational(Rational::from_integer(1) / r));
        }
        let x = self.reduce_conductor();
        let n = x.raw.n as i64;
        // x · Π_{k≠1} σ_k(x) is the (rational) field norm.
        let mut others = Cyclo::one();
        for k in 2..n {
            if k.gcd(&n) == 1 {
                others = others.try_mul(&x.galois(k))?;
            }
        }
        let norm = x.try_mul(&others)?;
        let r = norm
            .is_rational()
            .ok_or_else(|| Error::Inconsistent("field norm is not rational".into()))?;
        others.try_scale(Rational::from_integer(1) / r)
    }

    pub fn inverse(&self) -> Cyclo {
        self.try_inverse().expect("inverse of a nonzero cyclotomic number")
    }

    pub fn try_div(&self, other: &Cyclo) -> Result<Cyclo> {
        self.try_mul(&other.try_inverse()?)
    }

    pub fn pow(&self, k: u32) -> Cyclo {
        let mut acc = Cyclo::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact sign of a real cyclotomic number.
    ///
    /// Zero is decided exactly; otherwise the value is evaluated at increasing
    /// precision until it clears the rigorous evaluation error bound.
    pub fn real_sign(&self) -> Result<Ordering> {
        if self.is_zero() {
            return Ok(Ordering::Equal);
        }
        if let Some(r) = self.is_rational() {
            return Ok(r.cmp(&Rational::from_integer(0)));
        }
        if !self.is_real() {
            return Err(Error::NotReal);
        }
        let l1 = self.coeff_l1();
        let mut prec = 128usize;
        loop {
            let v = self.to_float(prec);
            let bound = BigFloat::from_f64(1.0 + l1, 128).mul(
                &BigFloat::from_f64(2f64.powi(3 - prec as i32), 128),
                128,
                acomplex::RM,
            );
            if acomplex::abs_cmp(&v.re, &bound) == Ordering::Greater {
                return Ok(if v.re.is_positive() { Ordering::Greater } else { Ordering::Less });
            }
            if prec >= 1 << 16 {
                return Err(Error::Inconsistent("sign undecided at 65536 bits".into()));
            }
            prec *= 2;
        }
    }

    /// Numeric value at `prec` bits; error at most `2^{3-prec}·(1 + Σ|c|)`.
    pub fn to_float(&self, prec: usize) -> AComplex {
        let prec = prec.max(53);
        let work = acomplex::bits(prec) + 32;
        let n = self.raw.n;
        let mut re = BigFloat::from_i32(0, work);
        let mut im = BigFloat::from_i32(0, work);
        for &(j, c) in &self.raw.terms {
            let (cr, ci) = acomplex::root_of_unity_parts(j, n, work);
            let cf = BigFloat::from_i128(c, work);
            re = re.add(&cr.mul(&cf, work, acomplex::RM), work, acomplex::RM);
            im = im.add(&ci.mul(&cf, work, acomplex::RM), work, acomplex::RM);
        }
        let d = BigFloat::from_i128(self.raw.den, work);
        let mut out = AComplex::from_parts(re.div(&d, work, acomplex::RM), im.div(&d, work, acomplex::RM), work);
        out.set_prec(prec);
        out
    }

    /// Quick double-precision evaluation (not error controlled).
    pub fn to_f64(&self) -> (f64, f64) {
        let n = self.raw.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for &(j, c) in &self.raw.terms {
            let t = std::f64::consts::TAU * j as f64 / n;
            re += c as f64 * t.cos();
            im += c as f64 * t.sin();
        }
        (re / self.raw.den as f64, im / self.raw.den as f64)
    }
}

/// `e^{iθ}` for a rational multiple of π: `ζ_{2·den}^{num}`.
pub fn root_of_unity(t: Angle) -> Cyclo {
    Cyclo::root(t.num(), (2 * t.den()) as u32)
}

/// `cos θ = (ζ + ζ^{-1})/2`.
pub fn cos_exact(t: Angle) -> Cyclo {
    let z = root_of_unity(t);
    (&z + &z.conj()).scale(Rational::new(1, 2))
}

/// `sin θ = cos(π/2 − θ)`.
pub fn sin_exact(t: Angle) -> Cyclo {
    cos_exact(Angle::new(1, 2).expect("valid").sub(t))
}

impl PartialEq for Cyclo {
    fn eq(&self, other: &Self) -> bool {
        if self.raw.n == other.raw.n {
            return self.raw.same_value_at(&other.raw);
        }
        match common(&self.raw, &other.raw) {
            Ok((a, b)) => a.same_value_at(&b),
            Err(_) => self.try_sub(other).map(|d| d.is_zero()).unwrap_or(false),
        }
    }
}

impl Eq for Cyclo {}

impl From<i64> for Cyclo {
    fn from(k: i64) -> Self {
        Cyclo::from_int(k)
    }
}

impl From<Rational> for Cyclo {
    fn from(r: Rational) -> Self {
        Cyclo::from_rational(r)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident, $what:literal) => {
        impl $tr<&Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                self.$f(rhs).expect(concat!("exact ", $what, " failed"))
            }
        }
        impl $tr<Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclo> for Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: &Cyclo) -> Cyclo {
                (&self).$m(rhs)
            }
        }
        impl $tr<Cyclo> for &Cyclo {
            type Output = Cyclo;
            fn $m(self, rhs: Cyclo) -> Cyclo {
                self.$m(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add, "addition");
binop!(Sub, sub, try_sub, "subtraction");
binop!(Mul, mul, try_mul, "multiplication");

impl Neg for Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl Neg for &Cyclo {
    type Output = Cyclo;
    fn neg(self) -> Cyclo {
        self.neg_ref()
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclo({self})")
    }
}

/// GAP-style rendering, e.g. `(1+2*E(7)^3)/2`.
impl fmt::Display for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.is_rational() {
            return write!(f, "{r}");
        }
        let n = self.raw.n;
        let mut s = String::new();
        for (idx, &(j, c)) in self.raw.terms.iter().enumerate() {
            let base = match j {
                0 => "1".to_string(),
                1 => format!("E({n})"),
                _ => format!("E({n})^{j}"),
            };
            let sign = if c < 0 { "-" } else if idx > 0 { "+" } else { "" };
            let mag = c.unsigned_abs();
            if j == 0 {
                s.push_str(&format!("{sign}{mag}"));
            } else if mag == 1 {
                s.push_str(&format!("{sign}{base}"));
            } else {
                s.push_str(&format!("{sign}{mag}*{base}"));
            }
        }
        if self.raw.den == 1 {
            write!(f, "{s}")
        } else {
            write!(f, "({s})/{}", self.raw.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    #[test]
    fn halving_recanonicalizes() {
        // ζ_150^128 = ζ_75^64, and the four-term form is the same number.
        let a = Cyclo::root(128, 150);
        let b = -(&(&(&Cyclo::root(4, 75) + &Cyclo::root(19, 75)) + &Cyclo::root(34, 75)) + &Cyclo::root(49, 75));
        assert_eq!(a, Cyclo::root(64, 75));
        assert_eq!(a, b);
        for (k, n) in [(7, 18), (11, 50), (3, 98), (13, 250), (5, 450)] {
            assert_eq!(Cyclo::root(2 * k, n), Cyclo::root(k, n / 2), "{k}/{n}");
            assert!((&Cyclo::root(2 * k, n) - &Cyclo::root(k, n / 2)).is_zero());
        }
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn basis_has_euler_phi_elements() {
        // A generic element touching every power spans φ(N) basis coordinates.
        for n in [1u32, 3, 4, 5, 8, 9, 12, 15, 16, 20, 27, 30, 36, 45, 60, 72, 90, 105] {
            let mut dense = vec![0i128; n as usize];
            for (j, c) in dense.iter_mut().enumerate() {
                *c = (j as i128 * 7919) % 13 + 1;
            }
            let raw = Raw::from_dense_plain(n, 1, dense).unwrap();
            let phi = (1..=n).filter(|k| k.gcd(&n) == 1).count();
            assert!(raw.terms.len() <= phi, "n={n}");
        }
    }

    #[test]
    fn roots_of_unity_basics() {
        assert_eq!(root_of_unity(Angle::pi()), Cyclo::from_int(-1));
        let z3 = root_of_unity(ang(2, 3));
        assert_eq!(&z3 + &(&z3 * &z3), Cyclo::from_int(-1));
        assert_eq!(Cyclo::root(1, 3) + Cyclo::root(2, 3), Cyclo::from_int(-1));
        let z8 = Cyclo::root(1, 8);
        let i = &z8 * &z8;
        assert_eq!(i, Cyclo::i());
        assert_eq!(i.reduce_conductor().conductor(), 4);
        assert_eq!(Cyclo::root(1, 7).conj(), Cyclo::root(6, 7));
    }

    #[test]
    fn heptagonal_trace() {
        let s = root_of_unity(ang(2, 7)) + root_of_unity(ang(4, 7)) + root_of_unity(ang(-6, 7));
        assert_eq!(s.re().is_rational(), Some(q(-1, 2)));
        // Independent oracle: (Im s)^2 = 7/4.
        let im = s.im();
        assert_eq!((&im * &im).is_rational(), Some(q(7, 4)));
        assert_eq!(im.real_sign().unwrap(), Ordering::Greater);
    }

    #[test]
    fn cosine_values() {
        assert_eq!(cos_exact(ang(1, 3)).is_rational(), Some(q(1, 2)));
        let e = cos_exact(ang(1, 5)) - cos_exact(ang(2, 5));
        assert_eq!(e.is_rational(), Some(q(1, 2)));
        let i = cos_exact(ang(1, 7)) - cos_exact(ang(2, 7)) + cos_exact(ang(3, 7));
        assert_eq!(i.is_rational(), Some(q(1, 2)));
        assert_eq!((cos_exact(ang(2, 5)) + cos_exact(ang(4, 5))).is_rational(), Some(q(-1, 2)));
        assert_eq!(cos_exact(ang(1, 7)).is_rational(), None);
        assert_eq!(cos_exact(ang(1, 2)).is_rational(), Some(q(0, 1)));
        assert!(cos_exact(ang(1, 2)).is_zero());
    }

    #[test]
    fn pythagoras_and_euler() {
        for d in 1..=24 {
            for n in 0..2 * d {
                let t = ang(n, d);
                let c = cos_exact(t);
                let s = sin_exact(t);
                assert_eq!(&c * &c + &s * &s, Cyclo::one(), "t={t}");
                assert_eq!(root_of_unity(t), &c + &(&Cyclo::i() * &s), "t={t}");
            }
        }
    }

    #[test]
    fn inverse_and_division() {
        let x = Cyclo::one() + Cyclo::root(1, 7) + Cyclo::root(3, 15).scale(q(2, 3));
        let y = x.inverse();
        assert_eq!(&x * &y, Cyclo::one());
        assert_eq!(Cyclo::zero().try_inverse(), Err(Error::DivisionByZero));
        let half = Cyclo::from_rational(q(1, 2));
        assert_eq!(half.inverse(), Cyclo::from_int(2));
    }

    #[test]
    fn conductor_reduction_is_value_preserving() {
        let x = &Cyclo::root(3, 45) * &Cyclo::root(12, 45);
        let r = x.reduce_conductor();
        assert_eq!(r, x);
        assert_eq!(r.conductor(), 3);
        let sqrt2 = Cyclo::root(1, 8) + Cyclo::root(-1, 8);
        let two = &sqrt2 * &sqrt2;
        assert_eq!(two.reduce_conductor().conductor(), 1);
        let c = cos_exact(ang(2, 9)).reduce_conductor();
        assert_eq!(c.conductor(), 9);
    }

    #[test]
    fn conductor_bound_enforced() {
        let a = Cyclo::root(1, 999_983);
        let b = Cyclo::root(1, 7);
        let err = a.try_add(&b).unwrap_err();
        assert!(err.to_string().contains("conductor too large"));
    }

    #[test]
    fn to_float_accuracy() {
        let half = Cyclo::from_rational(q(1, 2)).to_float(53);
        assert_eq!(half.re_f64(), 0.5);
        assert_eq!(half.im_f64(), 0.0);
        let i = Cyclo::i().to_float(256);
        assert!(i.re_f64().abs() < 1e-70);
        assert_eq!(i.im_f64(), 1.0);
        let s = root_of_unity(ang(2, 7)) + root_of_unity(ang(4, 7)) + root_of_unity(ang(-6, 7));
        let v = s.to_float(256);
        let want_im = BigFloat::from_i32(7, 300).sqrt(300, acomplex::RM).div(&BigFloat::from_i32(2, 300), 300, acomplex::RM);
        let err_im = v.im.sub(&want_im, 300, acomplex::RM);
        let half = BigFloat::from_f64(0.5, 300);
        let err_re = v.re.add(&half, 300, acomplex::RM);
        let tol = BigFloat::from_f64(2f64.powi(-250), 128);
        assert_eq!(acomplex::abs_cmp(&err_im, &tol), Ordering::Less);
        assert_eq!(acomplex::abs_cmp(&err_re, &tol), Ordering::Less);
    }

    #[test]
    fn real_sign_of_near_cancellation() {
        // cos(π/7) − cos(2π/7) + cos(3π/7) − 1/2 is exactly zero; perturb it slightly.
        let z = cos_exact(ang(1, 7)) - cos_exact(ang(2, 7)) + cos_exact(ang(3, 7)) - Cyclo::from_rational(q(1, 2));
        assert_eq!(z.real_sign().unwrap(), Ordering::Equal);
        let tiny = Cyclo::from_rational(q(1, 1 << 100));
        let w = &cos_exact(ang(1, 9)) - &tiny;
        assert_eq!(w.real_sign().unwrap(), Ordering::Greater);
        assert_eq!(Cyclo::i().real_sign(), Err(Error::NotReal));
        let neg = &(cos_exact(ang(2, 5)) + cos_exact(ang(4, 5))) + &Cyclo::from_rational(q(1, 2)) - tiny;
        assert_eq!(neg.real_sign().unwrap(), Ordering::Less);
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(Cyclo::from_rational(q(-3, 4)).to_string(), "-3/4");
        assert_eq!(Cyclo::root(1, 3).to_string(), "E(3)");
        assert_eq!(Cyclo::root(2, 5).scale(q(1, 2)).to_string(), "(E(5)^2)/2");
    }
}
