//! Printed closed forms for `det H`, evaluated exactly, and the printed
//! parameter table with its re-validation.

use serde::Serialize;

use super::{det_h, CandidateId};
use crate::cosearch::{known_ab, trace_s};
use crate::error::{Error, Result};
use crate::exact::{cos_exact, root_of_unity, sin_exact, Angle, Cyclo, Rational, DEFAULT_PREC};
use crate::trigroup::build_symmetric;

fn ang(num: i64, den: i64) -> Angle {
    Angle::new(num, den).expect("nonzero denominator")
}

fn int(k: i64) -> Cyclo {
    Cyclo::from_int(k)
}

fn half(x: &Cyclo) -> Cyclo {
    x.scale(Rational::new(1, 2))
}

fn sqrt3() -> Cyclo {
    cos_exact(ang(1, 6)).scale(Rational::from_integer(2))
}

fn sqrt5() -> Cyclo {
    &cos_exact(ang(1, 5)).scale(Rational::from_integer(4)) - &int(1)
}

/// `√(5+2√5) = tan(2π/5)`.
fn sqrt_5_2sqrt5() -> Cyclo {
    sin_exact(ang(2, 5)).try_div(&cos_exact(ang(2, 5))).expect("cos(2π/5) ≠ 0")
}

fn i_sqrt7() -> Cyclo {
    let z = |k| Cyclo::root(k, 7);
    [(1, 1), (2, 1), (4, 1), (3, -1), (5, -1), (6, -1)]
        .iter()
        .fold(Cyclo::zero(), |acc, &(k, c)| &acc + &z(k).scale(Rational::from_integer(c)))
}

fn i_sqrt3() -> Cyclo {
    &Cyclo::root(1, 3) - &Cyclo::root(2, 3)
}

/// Which printed formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Formula {
    /// `−2 sin(3φ/2)`.
    FourThree,
    /// `∓√3 cos(φ/2) + sin(φ/2) − 2 sin(3φ/2)`; `upper` selects the minus sign.
    ThreeThree { upper: bool },
    /// `∓√(5+2√5) cos(φ/2) − (2+√5+4cos φ) sin(φ/2)`.
    ThreeFive { upper: bool },
    /// `(1/2)(1 − 8 cos φ) sin(φ/2)`.
    ThreeFour,
    /// `−2 cos φ (1 + 2 sin φ)`.
    EightSix,
    /// `i e^{−(4θ+3φ)i/2} (−1 + e^{(2θ+φ)i}) (e^{iθ} + e^{iφ})²` with `θ = arg s`.
    Diagonal { k: u32, conj: bool },
}

/// A registered closed form with its source text.
#[derive(Clone, Debug, Serialize)]
pub struct ClosedForm {
    pub id: String,
    pub candidate: CandidateId,
    pub formula: Formula,
    pub quote: &'static str,
}

const Q43: &str = "\\textrm{Det}(H)=-2\\sin\\frac{3\\phi}{2}=-2\\sin\\frac{3\\pi}{p},";
const Q33: &str = "\\textrm{Det}(H)=\\mp \\sqrt{3}\\cos(\\phi/2)+\\sin(\\phi/2)-2\\sin(3\\phi/2).";
const Q35_POS: &str =
    "\\textrm{Det}(H)&=-\\sqrt{5+2\\sqrt{5}}\\cos{\\frac{\\phi}{2}}-(2+\\sqrt{5}+4\\cos{\\phi})\\sin{\\frac{\\phi}{2}},";
const Q35_NEG: &str =
    "\\textrm{Det}(H)&=\\sqrt{5+2\\sqrt{5}}\\cos{\\frac{\\phi}{2}}-(2+\\sqrt{5}+4\\cos{\\phi})\\sin{\\frac{\\phi}{2}}.";
const Q34: &str = "\\textrm{Det}(H)=\\frac{1}{2}(1-8\\cos\\phi)\\sin\\frac{\\phi}{2}";
const Q86: &str = "\\textrm{Det}(H)=-2\\cos(\\phi)(1+2\\sin\\phi)";
const QKK: &str = "\\textrm{Det}(H)=ie^{-\\frac{4\\theta+3\\phi}{2}i}(-1+e^{(2\\theta+\\phi)i})(e^{i\\theta}+e^{i\\phi})^2.";

impl ClosedForm {
    /// Exact value at `φ = 2π/p`.
    pub fn eval(&self, p: u32) -> Cyclo {
        let p = p as i64;
        let cos_h = cos_exact(ang(1, p));
        let sin_h = sin_exact(ang(1, p));
        let cos_f = cos_exact(ang(2, p));
        let sin_f = sin_exact(ang(2, p));
        let sin_3h = sin_exact(ang(3, p));
        match self.formula {
            Formula::FourThree => -&(&sin_3h + &sin_3h),
            Formula::ThreeThree { upper } => {
                let t = &sqrt3() * &cos_h;
                let t = if upper { -&t } else { t };
                &(&t + &sin_h) - &(&sin_3h + &sin_3h)
            }
            Formula::ThreeFive { upper } => {
                let t = &sqrt_5_2sqrt5() * &cos_h;
                let t = if upper { -&t } else { t };
                let k = &(&int(2) + &sqrt5()) + &cos_f.scale(Rational::from_integer(4));
                &t - &(&k * &sin_h)
            }
            Formula::ThreeFour => half(&(&(&int(1) - &cos_f.scale(Rational::from_integer(8))) * &sin_h)),
            Formula::EightSix => -&(&cos_f.scale(Rational::from_integer(2)) * &(&int(1) + &(&sin_f + &sin_f))),
            Formula::Diagonal { k, conj } => {
                let theta = if conj { ang(-2, k as i64) } else { ang(2, k as i64) };
                let phi = ang(2, p);
                // −(4θ + 3φ)/2 as a multiple of π
                let e = Angle::from_ratio(-(theta.signed_ratio() * 4 + phi.signed_ratio() * 3) / 2);
                let a = &Cyclo::i() * &root_of_unity(e);
                let b = &root_of_unity(Angle::combo(2, theta, 1, phi)) - &int(1);
                let c = &root_of_unity(theta) + &root_of_unity(phi);
                &(&a * &b) * &(&c * &c)
            }
        }
    }
}

/// Every registered closed form, the diagonal one for `3 ≤ k ≤ k_max`.
pub fn closed_forms(k_max: u32) -> Vec<ClosedForm> {
    let c = |n, m, conj| CandidateId { n, m, conj };
    let mut out = vec![
        ClosedForm { id: "4,3".into(), candidate: c(4, 3, false), formula: Formula::FourThree, quote: Q43 },
        ClosedForm { id: "3,3".into(), candidate: c(3, 3, false), formula: Formula::ThreeThree { upper: true }, quote: Q33 },
        ClosedForm { id: "3,3*".into(), candidate: c(3, 3, true), formula: Formula::ThreeThree { upper: false }, quote: Q33 },
        ClosedForm { id: "3,5".into(), candidate: c(3, 5, false), formula: Formula::ThreeFive { upper: true }, quote: Q35_POS },
        ClosedForm { id: "3,5*".into(), candidate: c(3, 5, true), formula: Formula::ThreeFive { upper: false }, quote: Q35_NEG },
        ClosedForm { id: "3,4".into(), candidate: c(3, 4, false), formula: Formula::ThreeFour, quote: Q34 },
        ClosedForm { id: "8,6".into(), candidate: c(8, 6, false), formula: Formula::EightSix, quote: Q86 },
    ];
    for k in 3..=k_max {
        for conj in [false, true] {
            out.push(ClosedForm {
                id: format!("k={k}{}", if conj { "*" } else { "" }),
                candidate: c(k, k, conj),
                formula: Formula::Diagonal { k, conj },
                quote: QKK,
            });
        }
    }
    out
}

/// Look up a closed form by id: `4,3`, `3,5*`, `k=7`, ...
pub fn find_closed_form(id: &str) -> Result<ClosedForm> {
    let id = id.trim().trim_start_matches('(').replace(')', "");
    let k_max = id
        .strip_prefix("k=")
        .and_then(|k| k.trim_end_matches('*').parse::<u32>().ok())
        .unwrap_or(3)
        .max(3);
    closed_forms(k_max).into_iter().find(|f| f.id == id).ok_or(Error::UnknownCandidate(id))
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedFormComparison {
    pub id: String,
    pub candidate: CandidateId,
    pub p: u32,
    pub closed_form: String,
    pub matrix_det: String,
    pub abs_difference: String,
    /// Exact equality of the two cyclotomic numbers.
    pub agree: bool,
}

/// The printed closed form next to the exact matrix determinant.
#[allow(non_snake_case)]
pub fn detH_closed_form(form: &ClosedForm, p: u32) -> Result<ClosedFormComparison> {
    let closed = form.eval(p);
    let det = det_h(form.candidate, p)?;
    let diff = &closed - &det;
    let dec = |x: &Cyclo| {
        let (re, im) = x.to_float(DEFAULT_PREC).to_decimal(30);
        if x.is_real() {
            re
        } else {
            format!("{re} + {im}i")
        }
    };
    Ok(ClosedFormComparison {
        id: form.id.clone(),
        candidate: form.candidate,
        p,
        closed_form: dec(&closed),
        matrix_det: dec(&det),
        abs_difference: crate::exact::bf_to_decimal(&diff.to_float(DEFAULT_PREC).abs(), 6),
        agree: diff.is_zero(),
    })
}

/// A row of the printed parameter table, re-derived and checked.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremTableRow {
    pub n: u32,
    pub m: u32,
    pub rho: String,
    pub s: String,
    pub sigma: String,
    /// Our `ρ` is the conjugate of the printed one.
    pub conjugated: bool,
    /// `|ρ| = 2cos(π/m)`, `ρ + ρ̄ = σ²` and `σ = 2cos(π/n)`.
    pub form_ok: bool,
    /// Printed `s` equals printed `ρ − 1`.
    pub printed_s_ok: bool,
    /// `trace_S(a, b)` of the stored angles equals `ρ − 1` of the constructed group.
    pub trace_ok: bool,
}

impl TheoremTableRow {
    pub fn pass(&self) -> bool {
        self.form_ok && self.printed_s_ok && self.trace_ok
    }
}

/// `(n, m, ρ, s, σ)` as printed; the `(k, k)` row instantiated at `k`.
pub fn printed_rows(k: u32) -> Vec<(u32, u32, Cyclo, Cyclo, Cyclo)> {
    let e = |num, den| root_of_unity(ang(num, den));
    let two_cos = |den| cos_exact(ang(1, den)).scale(Rational::from_integer(2));
    let sqrt2 = two_cos(4);
    let kk = k as i64;
    vec![
        (3, 4, half(&(&int(1) + &i_sqrt7())), &(&e(2, 7) + &e(4, 7)) + &e(-6, 7), int(1)),
        (3, 5, &e(2, 5) * &two_cos(5), &(&e(2, 5) + &e(7, 15)) + &e(-13, 15), int(1)),
        (4, 3, int(1), int(0), sqrt2.clone()),
        (
            5,
            4,
            (&(&int(1) + &i_sqrt3()) * &(&sqrt5() - &i_sqrt3())).scale(Rational::new(1, 4)),
            &(&e(-2, 3) + &e(2, 15)) + &e(8, 15),
            half(&(&int(1) + &sqrt5())),
        ),
        (
            8,
            6,
            &(&int(1) + &Cyclo::i()) * &(&int(1) - &(&Cyclo::i() * &sqrt2.inverse())),
            &(&e(1, 2) + &e(1, 12)) + &e(-7, 12),
            two_cos(8),
        ),
        (k, k, &e(1, kk) * &two_cos(kk), e(2, kk), two_cos(kk)),
    ]
}

/// The six rows of the parameter table, checked against the constructed groups.
pub fn theorem_table(k: u32) -> Result<Vec<TheoremTableRow>> {
    if k < 3 {
        return Err(Error::Config(format!("diagonal row needs k ≥ 3, got {k}")));
    }
    printed_rows(k)
        .into_iter()
        .map(|(n, m, rho_p, s_p, sigma_p)| {
            let g = build_symmetric(5, n, m, 1, DEFAULT_PREC)?;
            let rho = g.params.rho.exact().cloned().ok_or_else(|| Error::Inconsistent(format!("({n},{m}) not exact")))?;
            let sigma = g.params.sigma.exact().cloned().ok_or_else(|| Error::Inconsistent(format!("({n},{m}) not exact")))?;
            let conjugated = rho != rho_p;
            let want = if conjugated { rho_p.conj() } else { rho_p.clone() };
            let two_cos_m = cos_exact(ang(1, m as i64)).scale(Rational::from_integer(2));
            let form_ok = rho == want
                && sigma == sigma_p
                && rho.norm_sq() == &two_cos_m * &two_cos_m
                && &rho + &rho.conj() == &sigma * &sigma;
            let printed_s_ok = s_p == &rho_p - &int(1);
            let (a, b) = known_ab(n, m).ok_or(Error::NoSuchSymmetricGroup { n, m })?;
            let trace_ok = trace_s(a, b) == &rho - &int(1);
            Ok(TheoremTableRow {
                n,
                m,
                rho: rho_p.to_string(),
                s: s_p.to_string(),
                sigma: sigma_p.to_string(),
                conjugated,
                form_ok,
                printed_s_ok,
                trace_ok,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cmp(id: &str, p: u32) -> ClosedFormComparison {
        detH_closed_form(&find_closed_form(id).unwrap(), p).unwrap()
    }

    #[test]
    fn four_three_at_p4() {
        let c = cmp("4,3", 4);
        assert!(c.agree);
        assert!(c.closed_form.starts_with("-1.41421356237309504880168872"));
    }

    #[test]
    fn three_three_vanishes_at_p3() {
        let f = find_closed_form("3,3").unwrap();
        assert!(f.eval(3).is_zero());
        assert!(cmp("3,3", 3).agree);
    }

    #[test]
    fn eight_six_sign_at_p3() {
        // −2cos(2π/3)(1 + 2sin(2π/3)) = 1 + √3
        let f = find_closed_form("8,6").unwrap();
        assert_eq!(f.eval(3), &int(1) + &sqrt3());
        assert!(!cmp("8,6", 3).agree);
    }

    #[test]
    fn radicals() {
        assert_eq!(&sqrt5() * &sqrt5(), int(5));
        assert_eq!(&sqrt3() * &sqrt3(), int(3));
        assert_eq!(&i_sqrt7() * &i_sqrt7(), int(-7));
        let r = sqrt_5_2sqrt5();
        assert_eq!(&r * &r, &int(5) + &(&sqrt5() + &sqrt5()));
    }

    #[test]
    fn unknown_form() {
        assert!(find_closed_form("6,3").is_err());
        assert_eq!(find_closed_form("k=9*").unwrap().candidate, CandidateId { n: 9, m: 9, conj: true });
    }

    #[test]
    fn table_rows_validate() {
        let rows = theorem_table(6).unwrap();
        assert_eq!(rows.len(), 6);
        for r in &rows {
            assert!(r.pass(), "{r:?}");
        }
        // (k,k) at k = 6: σ = √3
        assert_eq!(printed_rows(6)[5].4, sqrt3());
    }
}
