//! Arbitrary-precision complex numbers on top of `astro-float`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_integer::Integer;

use super::Angle;

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Default working precision in bits.
pub const DEFAULT_PREC: usize = 256;

/// Storage precision: the backend needs at least 128 bits to hold any `i128`.
pub(crate) fn bits(prec: usize) -> usize {
    prec.max(128)
}

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constant cache allocation"));
    static ROOTS: RefCell<HashMap<(u32, u32, usize), (BigFloat, BigFloat)>> = RefCell::new(HashMap::new());
}

pub(crate) fn with_consts<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

pub(crate) fn pi(prec: usize) -> BigFloat {
    with_consts(|cc| cc.pi(prec, RM))
}

/// `(cos 2πj/n, sin 2πj/n)` at `prec` bits, memoised per thread.
pub(crate) fn root_of_unity_parts(j: u32, n: u32, prec: usize) -> (BigFloat, BigFloat) {
    let g = j.gcd(&n).max(1);
    let key = (j / g, n / g, prec);
    if let Some(v) = ROOTS.with(|r| r.borrow().get(&key).cloned()) {
        return v;
    }
    let (j, n) = (key.0, key.1);
    let v = match (j, n) {
        (0, _) => (BigFloat::from_i32(1, prec), BigFloat::from_i32(0, prec)),
        (1, 2) => (BigFloat::from_i32(-1, prec), BigFloat::from_i32(0, prec)),
        (1, 4) => (BigFloat::from_i32(0, prec), BigFloat::from_i32(1, prec)),
        (3, 4) => (BigFloat::from_i32(0, prec), BigFloat::from_i32(-1, prec)),
        _ => {
            let w = prec + 64;
            let t = pi(w)
                .mul(&BigFloat::from_u64(2 * j as u64, w), w, RM)
                .div(&BigFloat::from_u64(n as u64, w), w, RM);
            with_consts(|cc| (t.cos(prec, RM, cc), t.sin(prec, RM, cc)))
        }
    };
    ROOTS.with(|r| r.borrow_mut().insert(key, v.clone()));
    v
}

/// Convert to the nearest-below `f64` (truncating the mantissa); exact for
/// values representable in 53 bits.
pub fn bf_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf() {
        return if x.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY };
    }
    let Some((m, _, s, e, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    // Value is 0.m × 2^e with the top mantissa word holding the leading bits.
    let top = *m.last().expect("nonzero mantissa");
    let mut v = top as f64 / 18446744073709551616.0;
    let mut e = e as i64;
    while e > 512 {
        v *= 2f64.powi(512);
        e -= 512;
    }
    while e < -512 {
        v *= 2f64.powi(-512);
        e += 512;
    }
    v *= 2f64.powi(e as i32);
    if s == Sign::Neg {
        -v
    } else {
        v
    }
}

/// Decimal rendering with `sig` significant digits.
///
/// Uses plain positional notation for moderate exponents and `d.ddde±X`
/// otherwise. Zero renders as `"0"`.
pub fn bf_to_decimal(x: &BigFloat, sig: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let sig = sig.max(1);
    let parsed = with_consts(|cc| x.convert_to_radix(Radix::Dec, RM, cc));
    let Ok((sign, digits, exp)) = parsed else {
        return "NaN".to_string();
    };
    // value = 0.d1 d2 ... × 10^exp
    let mut d: Vec<u8> = digits.iter().copied().take(sig).collect();
    while d.len() < sig {
        d.push(0);
    }
    let mut exp = exp as i64;
    if digits.len() > sig && digits[sig] >= 5 {
        let mut i = sig;
        loop {
            if i == 0 {
                d.insert(0, 1);
                d.pop();
                exp += 1;
                break;
            }
            i -= 1;
            if d[i] == 9 {
                d[i] = 0;
            } else {
                d[i] += 1;
                break;
            }
        }
    }
    let neg = sign == Sign::Neg;
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    let ds: String = d.iter().map(|c| char::from(b'0' + c)).collect();
    if (-20..=40).contains(&exp) {
        if exp <= 0 {
            out.push_str("0.");
            for _ in 0..(-exp) {
                out.push('0');
            }
            out.push_str(&ds);
        } else if exp as usize >= ds.len() {
            out.push_str(&ds);
            for _ in 0..(exp as usize - ds.len()) {
                out.push('0');
            }
        } else {
            out.push_str(&ds[..exp as usize]);
            out.push('.');
            out.push_str(&ds[exp as usize..]);
        }
    } else {
        out.push_str(&ds[..1]);
        if ds.len() > 1 {
            out.push('.');
            out.push_str(&ds[1..]);
        }
        out.push_str(&format!("e{}", exp - 1));
    }
    out
}

/// `|x|` compared with `|y|`. (The backend's own `abs_cmp` compares signed values.)
pub(crate) fn abs_cmp(x: &BigFloat, y: &BigFloat) -> std::cmp::Ordering {
    match x.abs().cmp(&y.abs()) {
        Some(c) if c > 0 => std::cmp::Ordering::Greater,
        Some(c) if c < 0 => std::cmp::Ordering::Less,
        _ => std::cmp::Ordering::Equal,
    }
}

fn atan2(y: &BigFloat, x: &BigFloat, p: usize) -> BigFloat {
    let w = p + 16;
    if x.is_zero() {
        if y.is_zero() {
            return BigFloat::from_i32(0, p);
        }
        let h = pi(w).div(&BigFloat::from_i32(2, w), w, RM);
        return if y.is_negative() { h.neg() } else { h };
    }
    // Evaluate atan on the ratio with magnitude ≤ 1 for accuracy.
    if abs_cmp(x, y) != std::cmp::Ordering::Less {
        let a = with_consts(|cc| y.div(x, w, RM).atan(w, RM, cc));
        if x.is_positive() {
            a
        } else if y.is_negative() {
            a.sub(&pi(w), w, RM)
        } else {
            a.add(&pi(w), w, RM)
        }
    } else {
        let a = with_consts(|cc| x.div(y, w, RM).atan(w, RM, cc));
        let h = pi(w).div(&BigFloat::from_i32(2, w), w, RM);
        if y.is_positive() {
            h.sub(&a, w, RM)
        } else {
            h.neg().sub(&a, w, RM)
        }
    }
}

/// A complex number with arbitrary-precision real and imaginary parts.
#[derive(Clone)]
pub struct AComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

impl AComplex {
    pub fn from_parts(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        AComplex { re, im, prec: prec.max(53) }
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        let b = bits(prec);
        Self::from_parts(BigFloat::from_f64(re, b), BigFloat::from_f64(im, b), prec)
    }

    pub fn from_i64(k: i64, prec: usize) -> Self {
        let b = bits(prec);
        Self::from_parts(BigFloat::from_i64(k, b), BigFloat::from_i32(0, b), prec)
    }

    pub fn real(x: BigFloat, prec: usize) -> Self {
        Self::from_parts(x, BigFloat::from_i32(0, bits(prec)), prec)
    }

    pub fn zero(prec: usize) -> Self {
        Self::from_i64(0, prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    /// `e^{iθ}` for a rational multiple of π.
    pub fn expi(t: Angle, prec: usize) -> Self {
        let (c, s) = root_of_unity_parts(t.num() as u32, (2 * t.den()) as u32, bits(prec));
        Self::from_parts(c, s, prec)
    }

    /// `e^{iθ}` for a real θ.
    pub fn expi_real(theta: &BigFloat, prec: usize) -> Self {
        let b = bits(prec);
        let (c, s) = with_consts(|cc| (theta.cos(b, RM, cc), theta.sin(b, RM, cc)));
        Self::from_parts(c, s, prec)
    }

    /// Precision (bits) this value was computed at.
    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn set_prec(&mut self, prec: usize) {
        let prec = prec.max(53);
        self.prec = prec;
        let _ = self.re.set_precision(bits(prec), RM);
        let _ = self.im.set_precision(bits(prec), RM);
    }

    fn p2(&self, o: &AComplex) -> usize {
        self.prec.max(o.prec)
    }

    fn b(&self) -> usize {
        bits(self.prec)
    }

    pub fn add(&self, o: &AComplex) -> AComplex {
        let p = self.p2(o);
        let b = bits(p);
        Self::from_parts(self.re.add(&o.re, b, RM), self.im.add(&o.im, b, RM), p)
    }

    pub fn sub(&self, o: &AComplex) -> AComplex {
        let p = self.p2(o);
        let b = bits(p);
        Self::from_parts(self.re.sub(&o.re, b, RM), self.im.sub(&o.im, b, RM), p)
    }

    pub fn mul(&self, o: &AComplex) -> AComplex {
        let p = self.p2(o);
        let b = bits(p);
        let w = b + 8;
        let rr = self.re.mul(&o.re, w, RM).sub(&self.im.mul(&o.im, w, RM), b, RM);
        let ii = self.re.mul(&o.im, w, RM).add(&self.im.mul(&o.re, w, RM), b, RM);
        Self::from_parts(rr, ii, p)
    }

    pub fn mul_real(&self, r: &BigFloat) -> AComplex {
        let b = self.b();
        Self::from_parts(self.re.mul(r, b, RM), self.im.mul(r, b, RM), self.prec)
    }

    pub fn div(&self, o: &AComplex) -> AComplex {
        let p = self.p2(o);
        let b = bits(p);
        let d = o.abs2_at(b + 16);
        let mut num = self.mul(&o.conj());
        num.prec = p;
        Self::from_parts(num.re.div(&d, b, RM), num.im.div(&d, b, RM), p)
    }

    pub fn neg(&self) -> AComplex {
        Self::from_parts(self.re.neg(), self.im.neg(), self.prec)
    }

    pub fn conj(&self) -> AComplex {
        Self::from_parts(self.re.clone(), self.im.neg(), self.prec)
    }

    /// Multiply by `i`.
    pub fn mul_i(&self) -> AComplex {
        Self::from_parts(self.im.neg(), self.re.clone(), self.prec)
    }

    fn abs2_at(&self, w: usize) -> BigFloat {
        self.re.mul(&self.re, w, RM).add(&self.im.mul(&self.im, w, RM), w, RM)
    }

    /// `|z|²`.
    pub fn abs2(&self) -> BigFloat {
        self.abs2_at(self.b())
    }

    /// `|z|`.
    pub fn abs(&self) -> BigFloat {
        self.abs2_at(self.b() + 8).sqrt(self.b(), RM)
    }

    /// Principal argument in `(-π, π]`.
    pub fn arg(&self) -> BigFloat {
        atan2(&self.im, &self.re, self.b())
    }

    /// Principal square root (branch cut on the negative real axis).
    pub fn sqrt(&self) -> AComplex {
        let p = self.prec;
        let w = self.b() + 16;
        if self.re.is_zero() && self.im.is_zero() {
            return AComplex::zero(p);
        }
        let r = self.abs2_at(w).sqrt(w, RM);
        let two = BigFloat::from_i32(2, w);
        if !self.re.is_negative() {
            let t = r.add(&self.re, w, RM).div(&two, w, RM).sqrt(w, RM);
            let im = self.im.div(&t.mul(&two, w, RM), w, RM);
            AComplex::from_parts(t, im, p).rounded(p)
        } else {
            let t = r.sub(&self.re, w, RM).div(&two, w, RM).sqrt(w, RM);
            let re = self.im.abs().div(&t.mul(&two, w, RM), w, RM);
            let im = if self.im.is_negative() { t.neg() } else { t };
            AComplex::from_parts(re, im, p).rounded(p)
        }
    }

    /// Principal cube root, via polar form.
    pub fn cbrt(&self) -> AComplex {
        let p = self.prec;
        let w = self.b() + 16;
        if self.re.is_zero() && self.im.is_zero() {
            return AComplex::zero(p);
        }
        let r = self.abs2_at(w).sqrt(w, RM).cbrt(w, RM);
        let mut z = self.clone();
        z.set_prec(w);
        let th = z.arg().div(&BigFloat::from_i32(3, w), w, RM);
        AComplex::expi_real(&th, w).mul_real(&r).rounded(p)
    }

    pub fn powi(&self, k: u32) -> AComplex {
        let mut acc = AComplex::one(self.prec);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    fn rounded(mut self, p: usize) -> AComplex {
        self.set_prec(p);
        self
    }

    pub fn re_f64(&self) -> f64 {
        bf_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        bf_to_f64(&self.im)
    }

    /// `|z|` as an `f64`; adequate for reporting residual magnitudes.
    pub fn abs_f64(&self) -> f64 {
        bf_to_f64(&self.abs())
    }

    /// `|self − o|` as an `f64`.
    pub fn dist(&self, o: &AComplex) -> f64 {
        self.sub(o).abs_f64()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    /// Real and imaginary parts as decimal strings with `sig` significant digits.
    pub fn to_decimal(&self, sig: usize) -> (String, String) {
        (bf_to_decimal(&self.re, sig), bf_to_decimal(&self.im, sig))
    }
}

impl fmt::Debug for AComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AComplex({self})")
    }
}

impl fmt::Display for AComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, i) = self.to_decimal(20);
        if let Some(mag) = i.strip_prefix('-') {
            write!(f, "{r} - {mag}i")
        } else {
            write!(f, "{r} + {i}i")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f64_conversion_round_trips() {
        for v in [1.0, -1.0, 0.5, 3.25, -1234.5678, 1e-30, 6.02e23, std::f64::consts::PI] {
            assert_eq!(bf_to_f64(&BigFloat::from_f64(v, 128)), v, "{v}");
        }
        assert_eq!(bf_to_f64(&BigFloat::from_i32(0, 128)), 0.0);
    }

    #[test]
    fn decimal_rendering() {
        let p = 256;
        let third = BigFloat::from_i32(1, p).div(&BigFloat::from_i32(3, p), p, RM);
        assert_eq!(bf_to_decimal(&third, 5), "0.33333");
        let two_thirds = BigFloat::from_i32(-2, p).div(&BigFloat::from_i32(3, p), p, RM);
        assert_eq!(bf_to_decimal(&two_thirds, 4), "-0.6667");
        assert_eq!(bf_to_decimal(&BigFloat::from_i32(-1, p), 3), "-1.00");
        assert_eq!(bf_to_decimal(&BigFloat::from_f64(0.5, p), 3), "0.500");
        assert_eq!(bf_to_decimal(&BigFloat::from_f64(99.96, p), 3), "100");
        assert_eq!(bf_to_decimal(&BigFloat::from_f64(1.5e-30, p), 2), "1.5e-30");
        let sqrt7 = BigFloat::from_i32(7, p).sqrt(p, RM);
        assert_eq!(bf_to_decimal(&sqrt7, 12), "2.64575131106");
    }

    #[test]
    fn complex_roots() {
        let p = 256;
        let z = AComplex::from_f64(-4.0, 0.0, p);
        let r = z.sqrt();
        assert!(r.re_f64().abs() < 1e-70 && (r.im_f64() - 2.0).abs() < 1e-70);
        let w = AComplex::from_f64(3.0, -4.0, p);
        let s = w.sqrt();
        assert!(s.mul(&s).dist(&w) < 1e-70);
        let c = w.cbrt();
        assert!(c.powi(3).dist(&w) < 1e-70);
        let m = AComplex::from_f64(-8.0, 0.0, p).cbrt();
        // Principal cube root of −8 is 1 + i√3.
        assert!((m.re_f64() - 1.0).abs() < 1e-60);
        assert!((m.im_f64() - 3f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn arithmetic_and_args() {
        let p = 256;
        let a = AComplex::from_f64(1.0, 2.0, p);
        let b = AComplex::from_f64(-3.0, 0.5, p);
        assert!(a.mul(&b).div(&b).dist(&a) < 1e-70);
        let e = AComplex::expi(Angle::new(2, 3).unwrap(), p);
        assert!((e.re_f64() + 0.5).abs() < 1e-70);
        assert!((bf_to_f64(&e.arg()) - 2.0 * std::f64::consts::PI / 3.0).abs() < 1e-15);
        let back = AComplex::from_f64(-1.0, -1e-40, p).arg();
        assert!((bf_to_f64(&back) + std::f64::consts::PI).abs() < 1e-15);
    }
}
