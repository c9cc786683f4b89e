use super::{Mat3, MatF, Scalar};
use crate::exact::{AComplex, Angle};

/// `(c2, c1, c0)` with `det(λI − M) = λ³ − c2 λ² + c1 λ − c0`.
pub fn char_poly<T: Scalar>(m: &Mat3<T>) -> (T, T, T) {
    let a = &m.m;
    let minor = |i: usize, j: usize| a[i][i].mul(&a[j][j]).sub(&a[i][j].mul(&a[j][i]));
    (m.trace(), minor(0, 1).add(&minor(0, 2)).add(&minor(1, 2)), m.det())
}

fn horner(coeffs: &[AComplex; 4], x: &AComplex) -> (AComplex, AComplex) {
    // value and derivative of c[0] x³ + c[1] x² + c[2] x + c[3]
    let mut v = coeffs[0].clone();
    let mut d = AComplex::zero(x.prec());
    for c in &coeffs[1..] {
        d = d.mul(x).add(&v);
        v = v.mul(x).add(c);
    }
    (v, d)
}

/// Roots of the characteristic cubic by Cardano's formula, evaluated at
/// roughly twice the requested precision and then polished by Newton steps
/// where the root is simple.
pub fn eigenvalues3(m: &MatF, prec: usize) -> [AComplex; 3] {
    let w = 2 * prec + 64;
    let lift = |z: &AComplex| {
        let mut z = z.clone();
        z.set_prec(w);
        z
    };
    let (c2, c1, c0) = char_poly(m);
    // Monic λ³ + aλ² + bλ + c.
    let a = lift(&c2).neg();
    let b = lift(&c1);
    let c = lift(&c0).neg();
    let k = |v: i64| AComplex::from_i64(v, w);
    let a_over_3 = a.div(&k(3));
    let p = b.sub(&a.mul(&a).div(&k(3)));
    let q = a.powi(3).mul(&k(2)).div(&k(27)).sub(&a.mul(&b).div(&k(3))).add(&c);
    let disc = q.mul(&q).div(&k(4)).add(&p.powi(3).div(&k(27)));
    let sq = disc.sqrt();
    let half_q = q.div(&k(2)).neg();
    let (u1, u2) = (half_q.add(&sq), half_q.sub(&sq));
    let big = if bf_ge(&u1, &u2) { u1 } else { u2 };
    let cc = big.cbrt();
    let omega = AComplex::expi(Angle::new(2, 3).expect("valid"), w);
    let mut roots: Vec<AComplex> = Vec::with_capacity(3);
    let tiny = 2f64.powi(-(w as i32) + 8);
    for j in 0..3 {
        let t = if cc.abs_f64() <= tiny {
            AComplex::zero(w)
        } else {
            let cw = cc.mul(&omega.powi(j));
            cw.sub(&p.div(&cw.mul(&k(3))))
        };
        roots.push(t.sub(&a_over_3));
    }
    let coeffs = [k(1), a.clone(), b.clone(), c.clone()];
    let scale = 1.0 + [&a, &b, &c].iter().map(|z| z.abs_f64()).fold(0.0, f64::max);
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (v, d) = horner(&coeffs, r);
            if d.abs_f64() <= scale * 2f64.powi(-(prec as i32) / 4) {
                break;
            }
            let next = r.sub(&v.div(&d));
            let (v2, _) = horner(&coeffs, &next);
            if v2.abs_f64() < v.abs_f64() {
                *r = next;
            } else {
                break;
            }
        }
        r.set_prec(prec);
    }
    let [x, y, z]: [AComplex; 3] = roots.try_into().expect("three roots");
    [x, y, z]
}

fn bf_ge(x: &AComplex, y: &AComplex) -> bool {
    x.abs2().cmp(&y.abs2()).map(|c| c >= 0).unwrap_or(true)
}

/// Hausdorff distance between two finite multisets of complex numbers.
pub fn hausdorff(a: &[AComplex], b: &[AComplex]) -> f64 {
    let one_way = |x: &[AComplex], y: &[AComplex]| {
        x.iter().map(|p| y.iter().map(|q| p.dist(q)).fold(f64::INFINITY, f64::min)).fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
