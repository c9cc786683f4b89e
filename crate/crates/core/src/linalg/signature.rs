use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use super::{eigenvalues3, MatF, MatX, Scalar};
use crate::error::{Error, Result};

/// Inertia of a Hermitian 3×3 matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Signature {
    pub n_pos: u8,
    pub n_neg: u8,
    pub n_zero: u8,
}

impl Signature {
    pub fn is_degenerate(&self) -> bool {
        self.n_zero > 0
    }

    /// Short verdict label: `(2,1)`, `(3,0)`, `degenerate`, or the raw inertia.
    pub fn verdict(&self) -> String {
        match (self.n_pos, self.n_neg, self.n_zero) {
            (_, _, z) if z > 0 => "degenerate".to_string(),
            (2, 1, 0) => "(2,1)".to_string(),
            (3, 0, 0) => "(3,0)".to_string(),
            (p, n, _) => format!("({p},{n})"),
        }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n_pos, self.n_neg, self.n_zero)
    }
}

/// Inertia from the signs of the characteristic polynomial coefficients.
///
/// For a polynomial with only real roots, Descartes' rule of signs is exact,
/// so the count of sign changes equals the number of positive eigenvalues.
fn inertia_from_coeffs(c2: Ordering, c1: Ordering, c0: Ordering) -> Signature {
    let n_zero = if c0 != Ordering::Equal {
        0
    } else if c1 != Ordering::Equal {
        1
    } else if c2 != Ordering::Equal {
        2
    } else {
        3
    };
    // λ³ − c2 λ² + c1 λ − c0
    let signs = [Ordering::Greater, c2.reverse(), c1, c0.reverse()];
    let nz: Vec<Ordering> = signs.into_iter().filter(|s| *s != Ordering::Equal).collect();
    let n_pos = nz.windows(2).filter(|w| w[0] != w[1]).count() as u8;
    Signature { n_pos, n_neg: 3 - n_zero - n_pos, n_zero }
}

/// Exact signature of a Hermitian matrix with cyclotomic entries.
pub fn hermitian_signature(h: &MatX) -> Result<Signature> {
    if !h.is_hermitian() {
        let r = h.sub(&h.adjoint()).max_abs();
        return Err(Error::NotHermitian(format!("{r:e}")));
    }
    let m = &h.m;
    let c2 = h.trace();
    let minor = |i: usize, j: usize| m[i][i].mul(&m[j][j]).sub(&m[i][j].mul(&m[j][i]));
    let c1 = minor(0, 1).add(&minor(0, 2)).add(&minor(1, 2));
    let c0 = h.det();
    Ok(inertia_from_coeffs(c2.real_sign()?, c1.real_sign()?, c0.real_sign()?))
}

/// Float signature; eigenvalues with `|λ| < zero_tol` count as zero.
pub fn hermitian_signature_float(h: &MatF, zero_tol: f64) -> Result<Signature> {
    let prec = h.precision().max(53);
    let herm_tol = 2f64.powi(-(prec as i32) / 2) * (1.0 + h.max_abs());
    let r = h.sub(&h.adjoint()).max_abs();
    if r > herm_tol {
        return Err(Error::NotHermitian(format!("{r:e}")));
    }
    let mut s = Signature { n_pos: 0, n_neg: 0, n_zero: 0 };
    for l in eigenvalues3(h, prec) {
        let v = l.re_f64();
        if v.abs() < zero_tol {
            s.n_zero += 1;
        } else if v > 0.0 {
            s.n_pos += 1;
        } else {
            s.n_neg += 1;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Cyclo;
    use crate::linalg::Mat3;

    fn diag(a: i64, b: i64, c: i64) -> MatX {
        Mat3::from_fn(|i, j| if i != j { Cyclo::zero() } else { Cyclo::from_int([a, b, c][i]) })
    }

    #[test]
    fn diagonal_inertia() {
        assert_eq!(hermitian_signature(&diag(1, 2, -3)).unwrap().verdict(), "(2,1)");
        assert_eq!(hermitian_signature(&diag(1, 2, 3)).unwrap().verdict(), "(3,0)");
        let d = hermitian_signature(&diag(1, 0, -3)).unwrap();
        assert_eq!((d.n_pos, d.n_neg, d.n_zero), (1, 1, 1));
        assert_eq!(d.verdict(), "degenerate");
        let z = hermitian_signature(&diag(0, 0, -2)).unwrap();
        assert_eq!((z.n_pos, z.n_neg, z.n_zero), (0, 1, 2));
        assert_eq!(hermitian_signature(&diag(-1, -1, -1)).unwrap().verdict(), "(0,3)");
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = diag(1, 1, 1);
        m.m[0][1] = Cyclo::i();
        assert!(matches!(hermitian_signature(&m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn float_agrees_with_exact() {
        let mut h = diag(2, 1, -1);
        h.m[0][1] = Cyclo::i();
        h.m[1][0] = -Cyclo::i();
        let e = hermitian_signature(&h).unwrap();
        let f = hermitian_signature_float(&h.to_float(256), 1e-30).unwrap();
        assert_eq!(e, f);
    }
}
