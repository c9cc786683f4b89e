//! The trace equations, their symmetry group, the bounded search that
//! recovers the candidate list, and exact checks of the cosine identities
//! used along the way.

mod identities;
mod search;

use std::cmp::Ordering;

use serde::Serialize;

use crate::exact::{cos_exact, root_of_unity, Angle, Cyclo, Rational};

pub use identities::{
    half_angle_solutions, identity_ids, is_parametric, solution_ab, random_angle, run_suite, validate_identity, IdentityResult,
    IdentitySuite,
};
pub use search::{enumerate_angles, search, Candidate, SearchConfig, SearchOutcome};

/// `s = e^{ia} + e^{ib} + e^{−i(a+b)}`, the trace of `S` plus one.
pub fn trace_s(a: Angle, b: Angle) -> Cyclo {
    let c = a.add(b).neg();
    &(&root_of_unity(a) + &root_of_unity(b)) + &root_of_unity(c)
}

/// `cos(2π/n) − cos a − cos b − cos(a+b)`.
pub fn minor_residual(n: u32, a: Angle, b: Angle) -> Cyclo {
    let lhs = cos_exact(Angle::two_pi_over(n as i64));
    &(&(&lhs - &cos_exact(a)) - &cos_exact(b)) - &cos_exact(a.add(b))
}

/// `cos(2π/m) − cos(2π/n) − cos(a−b) − cos(a+2b) − cos(2a+b) − 1`.
pub fn main_residual(m: u32, n: u32, a: Angle, b: Angle) -> Cyclo {
    let terms = [
        cos_exact(Angle::two_pi_over(n as i64)),
        cos_exact(a.sub(b)),
        cos_exact(Angle::combo(1, a, 2, b)),
        cos_exact(Angle::combo(2, a, 1, b)),
        Cyclo::one(),
    ];
    terms.iter().fold(cos_exact(Angle::two_pi_over(m as i64)), |acc, t| &acc - t)
}

/// Canonical representative of an `(a, b)` orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AbOrbit {
    pub a: Angle,
    pub b: Angle,
}

fn lex(x: &(Angle, Angle), y: &(Angle, Angle)) -> Ordering {
    x.0.ratio().cmp(&y.0.ratio()).then(x.1.ratio().cmp(&y.1.ratio()))
}

/// The images of `(a, b)` under permutations of `{a, b, −a−b}` and global
/// negation: 12 pairs, under which both residuals are invariant.
pub fn sign_perm_images(a: Angle, b: Angle) -> Vec<(Angle, Angle)> {
    let c = a.add(b).neg();
    let t = [a, b, c];
    let mut out = Vec::with_capacity(12);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                out.push((t[i], t[j]));
                out.push((t[i].neg(), t[j].neg()));
            }
        }
    }
    out
}

/// All 36 images: the 12 above, each also shifted by `0, 2π/3, 4π/3`.
pub fn orbit_images(a: Angle, b: Angle) -> Vec<(Angle, Angle)> {
    let mut out = Vec::with_capacity(36);
    for k in 0..3 {
        let shift = Angle::two_pi_over(3).mul_int(k);
        for (x, y) in sign_perm_images(a, b) {
            out.push((x.add(shift), y.add(shift)));
        }
    }
    out
}

/// Lexicographically least image (by value in `[0, 2π)`) over the 36-element set.
pub fn canonicalize_ab(a: Angle, b: Angle) -> AbOrbit {
    let (a, b) = orbit_images(a, b).into_iter().min_by(lex).expect("nonempty orbit");
    AbOrbit { a, b }
}

/// A row of the classification: `(n, m)` with a representative `(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremRow {
    pub n: u32,
    pub m: u32,
    pub a: Angle,
    pub b: Angle,
    /// True for the `(k, k)` family.
    pub diagonal: bool,
}

fn ang(num: i64, den: i64) -> Angle {
    Angle::new(num, den).expect("nonzero denominator")
}

/// The sporadic rows: `(3,4)`, `(3,5)`, `(4,3)`, `(5,4)`, `(8,6)`.
pub fn sporadic_rows() -> Vec<TheoremRow> {
    [
        (3, 4, ang(2, 7), ang(4, 7)),
        (3, 5, ang(2, 5), ang(7, 15)),
        (4, 3, ang(0, 1), ang(2, 3)),
        (5, 4, ang(2, 15), ang(8, 15)),
        (8, 6, ang(1, 2), ang(1, 12)),
    ]
    .into_iter()
    .map(|(n, m, a, b)| TheoremRow { n, m, a, b, diagonal: false })
    .collect()
}

/// The diagonal row `(k, k)`: `a = 2π/k`, `b = π/2 − π/k`, so `s = e^{2πi/k}`.
pub fn diagonal_row(k: u32) -> TheoremRow {
    let k = k as i64;
    TheoremRow { n: k as u32, m: k as u32, a: ang(2, k), b: ang(k - 2, 2 * k), diagonal: true }
}

/// Every row with `n, m ≤ bound` (diagonal rows from `k = 3`).
pub fn theorem_rows(bound: u32) -> Vec<TheoremRow> {
    let mut rows: Vec<TheoremRow> = sporadic_rows().into_iter().filter(|r| r.n <= bound && r.m <= bound).collect();
    rows.extend((3..=bound).map(diagonal_row));
    rows.sort_by_key(|r| (r.n, r.m));
    rows
}

/// A known `(a, b)` for `(n, m)`, if it is a row of the classification.
pub fn known_ab(n: u32, m: u32) -> Option<(Angle, Angle)> {
    if n == m && n >= 3 {
        let r = diagonal_row(n);
        return Some((r.a, r.b));
    }
    sporadic_rows().into_iter().find(|r| r.n == n && r.m == m).map(|r| (r.a, r.b))
}

/// `1 + cos(a−b) + cos(a+2b) + cos(2a+b)` and the product
/// `4 cos((a−b)/2) cos((a+2b)/2) cos((2a+b)/2)`, both exact.
pub fn diagonal_factorization(a: Angle, b: Angle) -> (Cyclo, Cyclo) {
    let (ra, rb) = (a.ratio(), b.ratio());
    let half = Rational::new(1, 2);
    let lhs = [a.sub(b), Angle::combo(1, a, 2, b), Angle::combo(2, a, 1, b)]
        .iter()
        .fold(Cyclo::one(), |acc, t| &acc + &cos_exact(*t));
    let halves = [(ra - rb) * half, (ra + rb * 2) * half, (ra * 2 + rb) * half];
    let rhs = halves
        .iter()
        .fold(Cyclo::from_int(4), |acc, h| &acc * &cos_exact(Angle::from_ratio(*h)));
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::sin_exact;

    #[test]
    fn trace_s_examples() {
        let want = Cyclo::root(1, 7) + Cyclo::root(2, 7) + Cyclo::root(4, 7);
        assert_eq!(trace_s(ang(2, 7), ang(4, 7)), want);
        assert_eq!(trace_s(ang(2, 7), ang(4, 7)).re(), Cyclo::from_rational(Rational::new(-1, 2)));
        let s = trace_s(ang(8, 15), ang(2, 15));
        let want = &(&root_of_unity(ang(8, 15)) + &root_of_unity(ang(2, 15))) + &root_of_unity(ang(-2, 3));
        assert_eq!(s, want);
        assert_eq!(trace_s(Angle::zero(), Angle::zero()), Cyclo::from_int(3));
    }

    #[test]
    fn residual_examples() {
        assert!(minor_residual(3, ang(2, 7), ang(4, 7)).is_zero());
        assert!(minor_residual(5, ang(8, 15), ang(2, 15)).is_zero());
        assert_eq!(minor_residual(4, Angle::zero(), ang(1, 2)), Cyclo::from_int(-1));
        assert!(main_residual(4, 3, ang(2, 7), ang(4, 7)).is_zero());
        assert_eq!(main_residual(3, 3, Angle::zero(), Angle::zero()), Cyclo::from_int(-4));
        // a + 2b ≡ π makes the diagonal residual vanish.
        for k in 3..=12i64 {
            let a = ang(2, k);
            let b = Angle::from_ratio((Rational::from_integer(1) - a.ratio()) / Rational::from_integer(2));
            assert!(main_residual(k as u32, k as u32, a, b).is_zero(), "k={k}");
        }
    }

    #[test]
    fn rows_solve_both_equations() {
        for r in theorem_rows(12) {
            assert!(minor_residual(r.n, r.a, r.b).is_zero(), "{r:?}");
            assert!(main_residual(r.m, r.n, r.a, r.b).is_zero(), "{r:?}");
        }
        let k = 9;
        let r = diagonal_row(k);
        assert_eq!(trace_s(r.a, r.b), Cyclo::root(1, k));
    }

    #[test]
    fn canonical_orbits() {
        let (a, b) = (ang(2, 7), ang(4, 7));
        assert_eq!(canonicalize_ab(a, b), canonicalize_ab(b, a));
        let w = ang(2, 3);
        assert_eq!(canonicalize_ab(a, b), canonicalize_ab(a.add(w), b.add(w)));
        assert_eq!(canonicalize_ab(a, b), canonicalize_ab(a.neg(), b.neg()));
        assert_ne!(canonicalize_ab(a, b), canonicalize_ab(ang(2, 5), ang(7, 15)));
        assert_eq!(orbit_images(a, b).len(), 36);
    }

    #[test]
    fn main_residual_is_orbit_invariant() {
        let (a, b) = (ang(3, 11), ang(5, 13));
        let r = main_residual(5, 7, a, b);
        for (x, y) in orbit_images(a, b) {
            assert_eq!(main_residual(5, 7, x, y), r);
        }
        let r = minor_residual(7, a, b);
        for (x, y) in sign_perm_images(a, b) {
            assert_eq!(minor_residual(7, x, y), r);
        }
        // The shift by 2π/3 moves cos a + cos b + cos(a+b).
        let w = ang(2, 3);
        assert_ne!(minor_residual(3, Angle::zero(), Angle::zero()), minor_residual(3, w, w));
    }

    #[test]
    fn factorization_examples() {
        let (l, r) = diagonal_factorization(ang(2, 5), ang(2, 5));
        assert_eq!(l, r);
        let (l, r) = diagonal_factorization(ang(7, 4), ang(11, 6));
        assert_eq!(l, r);
        assert_eq!(sin_exact(ang(1, 2)), Cyclo::one());
    }
}
