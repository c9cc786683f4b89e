use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{diagonal_factorization, trace_s};
use crate::error::{Error, Result};
use crate::exact::{cos_exact, root_of_unity, Angle, Cyclo, Rational};

/// The families of trigonometric identities that can be checked exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IdentitySuite {
    /// Minimal rational cosine relations, ids `a`–`o`.
    Monaghan,
    /// Solutions of the reduced trace equation, ids `i`–`xiii`.
    Solutions,
    /// The product formula behind the `n = m` family.
    LemmaNm,
    /// Half-angle rewrites used when `cos 2η = 1/2`.
    HalfAngle,
}

impl IdentitySuite {
    pub const ALL: [IdentitySuite; 4] =
        [IdentitySuite::Monaghan, IdentitySuite::Solutions, IdentitySuite::LemmaNm, IdentitySuite::HalfAngle];
}

impl FromStr for IdentitySuite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monaghan" => Ok(IdentitySuite::Monaghan),
            "solutions" => Ok(IdentitySuite::Solutions),
            "lemma-nm" => Ok(IdentitySuite::LemmaNm),
            "half-angle" => Ok(IdentitySuite::HalfAngle),
            other => Err(Error::Config(format!("unknown identity suite {other:?}"))),
        }
    }
}

impl fmt::Display for IdentitySuite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdentitySuite::Monaghan => "monaghan",
            IdentitySuite::Solutions => "solutions",
            IdentitySuite::LemmaNm => "lemma-nm",
            IdentitySuite::HalfAngle => "half-angle",
        })
    }
}

const MONAGHAN: [&str; 15] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l", "m", "n", "o"];
const SOLUTIONS: [&str; 13] = ["i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii"];

pub fn identity_ids(suite: IdentitySuite) -> &'static [&'static str] {
    match suite {
        IdentitySuite::Monaghan => &MONAGHAN,
        IdentitySuite::Solutions => &SOLUTIONS,
        IdentitySuite::LemmaNm => &["factorization"],
        IdentitySuite::HalfAngle => &["1", "2", "3"],
    }
}

/// Whether the identity needs an angle argument.
pub fn is_parametric(suite: IdentitySuite, id: &str) -> bool {
    match suite {
        IdentitySuite::Monaghan => matches!(id, "a" | "b" | "c"),
        IdentitySuite::Solutions => matches!(id, "i" | "ii"),
        IdentitySuite::LemmaNm => true,
        IdentitySuite::HalfAngle => false,
    }
}

fn ang(num: i64, den: i64) -> Angle {
    Angle::new(num, den).expect("nonzero denominator")
}

fn cos_sum(terms: &[(i64, Angle)]) -> Cyclo {
    terms.iter().fold(Cyclo::zero(), |acc, (c, t)| &acc + &cos_exact(*t).scale(Rational::from_integer(*c as i128)))
}

fn need(phi: Option<Angle>, suite: IdentitySuite, id: &str) -> Result<Angle> {
    phi.ok_or_else(|| Error::MissingArgument(format!("{suite} identity {id:?} needs an angle")))
}

fn monaghan(id: &str, phi: Option<Angle>) -> Result<bool> {
    let half = Cyclo::from_rational(Rational::new(1, 2));
    let fixed = |t: &[(i64, (i64, i64))]| {
        let terms: Vec<(i64, Angle)> = t.iter().map(|&(c, (n, d))| (c, ang(n, d))).collect();
        cos_sum(&terms) == half
    };
    // "cos(φ ± x)" stands for the sum of both signs.
    let both = |phi: Angle, parts: &[(i64, (i64, i64))]| {
        let mut terms = vec![(1, phi)];
        for &(c, (n, d)) in parts {
            terms.push((c, phi.add(ang(n, d))));
            terms.push((c, phi.sub(ang(n, d))));
        }
        cos_sum(&terms).is_zero()
    };
    Ok(match id {
        "a" => {
            let p = need(phi, IdentitySuite::Monaghan, id)?;
            cos_sum(&[(1, p), (1, p.add(ang(2, 3))), (1, p.add(ang(4, 3)))]).is_zero()
        }
        "b" => both(need(phi, IdentitySuite::Monaghan, id)?, &[(1, (2, 5)), (-1, (2, 15)), (1, (7, 15))]),
        "c" => both(need(phi, IdentitySuite::Monaghan, id)?, &[(-1, (1, 5)), (1, (1, 15)), (-1, (4, 15))]),
        "d" => fixed(&[(1, (1, 3))]),
        "e" => fixed(&[(1, (1, 5)), (-1, (2, 5))]),
        "f" => fixed(&[(1, (1, 5)), (-1, (1, 15)), (1, (4, 15))]),
        "g" => fixed(&[(-1, (2, 5)), (1, (2, 15)), (-1, (7, 15))]),
        "h" => fixed(&[(-1, (1, 15)), (1, (2, 15)), (1, (4, 15)), (-1, (7, 15))]),
        "i" => fixed(&[(1, (1, 7)), (-1, (2, 7)), (1, (3, 7))]),
        "j" => fixed(&[(1, (1, 7)), (-1, (2, 7)), (1, (2, 21)), (-1, (5, 21))]),
        "k" => fixed(&[(1, (1, 7)), (1, (3, 7)), (-1, (1, 21)), (1, (8, 21))]),
        "l" => fixed(&[(-1, (2, 7)), (1, (3, 7)), (1, (4, 21)), (1, (10, 21))]),
        "m" => fixed(&[(1, (1, 7)), (-1, (1, 21)), (1, (2, 21)), (-1, (5, 21)), (1, (8, 21))]),
        "n" => fixed(&[(-1, (2, 7)), (1, (2, 21)), (1, (4, 21)), (-1, (5, 21)), (1, (10, 21))]),
        "o" => fixed(&[(1, (3, 7)), (-1, (1, 21)), (1, (4, 21)), (1, (8, 21)), (1, (10, 21))]),
        _ => return Err(unknown(IdentitySuite::Monaghan, id)),
    })
}

fn unknown(suite: IdentitySuite, id: &str) -> Error {
    Error::UnknownIdentity { suite: suite.to_string(), id: id.to_string() }
}

/// `(2θ, α, β, γ)` with the listed `s = e^{iα} + e^{iβ}·2cos γ`, `α + 2β = 0`,
/// so that `a = α`, `b = β + γ`, `−(a+b) = β − γ`.
fn solution_entry(id: &str, psi: Option<Angle>) -> Result<(Angle, Angle, Angle, Angle)> {
    let r = |x: Rational| Angle::from_ratio(x);
    let q = |n: i128, d: i128| Rational::new(n, d);
    Ok(match id {
        "i" => {
            let p = need(psi, IdentitySuite::Solutions, id)?.ratio();
            (ang(2, 3), r(q(1, 1) - p / 3), r(p / 6 - q(1, 2)), ang(1, 2))
        }
        "ii" => {
            let p = need(psi, IdentitySuite::Solutions, id)?.ratio();
            (r(p), r(p * 2 / 3), r(-p / 3), ang(1, 3))
        }
        "iii" => (ang(1, 3), ang(1, 3), ang(-1, 6), ang(1, 4)),
        "iv" => (ang(1, 5), ang(1, 3), ang(-1, 6), ang(1, 5)),
        "v" => (ang(3, 5), ang(1, 3), ang(-1, 6), ang(2, 5)),
        "vi" => (ang(1, 2), ang(2, 7), ang(-1, 7), ang(5, 7)),
        "vii" => (ang(1, 2), ang(2, 9), ang(-1, 9), ang(2, 5)),
        "viii" => (ang(1, 2), ang(2, 9), ang(-1, 9), ang(4, 5)),
        "ix" => (ang(1, 7), ang(2, 9), ang(-1, 9), ang(2, 7)),
        "x" => (ang(5, 7), ang(2, 9), ang(-1, 9), ang(4, 7)),
        "xi" => (ang(3, 7), ang(2, 9), ang(-1, 9), ang(6, 7)),
        "xii" => (ang(2, 5), Angle::zero(), Angle::zero(), ang(2, 5)),
        "xiii" => (ang(4, 5), Angle::zero(), Angle::zero(), ang(4, 5)),
        _ => return Err(unknown(IdentitySuite::Solutions, id)),
    })
}

/// The `s` exactly as listed for an entry.
fn listed_s(id: &str, alpha: Angle, beta: Angle, gamma: Angle) -> Cyclo {
    match id {
        "vi" => &(&root_of_unity(ang(2, 7)) + &root_of_unity(ang(4, 7))) + &root_of_unity(ang(-6, 7)),
        "i" => -root_of_unity(alpha.sub(Angle::pi())),
        _ => &root_of_unity(alpha) + &(&root_of_unity(beta) * &cos_exact(gamma).scale(Rational::from_integer(2))),
    }
}

fn solutions(id: &str, psi: Option<Angle>) -> Result<bool> {
    let (two_theta, alpha, beta, gamma) = solution_entry(id, psi)?;
    let (a, b) = (alpha, beta.add(gamma));
    if trace_s(a, b) != listed_s(id, alpha, beta, gamma) {
        return Ok(false);
    }
    let lhs = cos_sum(&[
        (1, two_theta),
        (-1, a.sub(b)),
        (-1, Angle::combo(1, a, 2, b)),
        (-1, Angle::combo(2, a, 1, b)),
    ]);
    Ok(lhs == Cyclo::from_rational(Rational::new(1, 2)))
}

/// The `(a, b)` of a solution-list entry.
pub fn solution_ab(id: &str, psi: Option<Angle>) -> Result<(Angle, Angle)> {
    let (_, alpha, beta, gamma) = solution_entry(id, psi)?;
    Ok((alpha, beta.add(gamma)))
}

fn half_angle_at(id: &str, a: Angle, b: Angle) -> Result<bool> {
    let (ra, rb) = (a.ratio(), b.ratio());
    let c = |x: Rational| cos_exact(Angle::from_ratio(x));
    let two = Rational::from_integer(2);
    let half = Rational::new(1, 2);
    let ca = cos_exact(a);
    let x = c(ra * half + rb);
    let constrained = &(&ca + &cos_exact(b)) + &cos_exact(a.add(b)) == Cyclo::from_rational(half);
    let d = &Cyclo::from_rational(half) - &ca;
    let (lhs, rhs, target) = match id {
        "1" => (&cos_exact(b) + &cos_exact(a.add(b)), (&c(ra * half) * &x).scale(two), d.clone()),
        "2" => {
            let one_plus = &Cyclo::one() + &ca;
            let target = if one_plus.is_zero() { None } else { Some(&(&d * &d) * &one_plus.inverse()) };
            let lhs = &cos_exact(Angle::combo(1, a, 2, b)) + &Cyclo::one();
            let rhs = (&x * &x).scale(two);
            return Ok(lhs == rhs && (!constrained || target.is_some_and(|t| t == lhs)));
        }
        "3" => (
            &cos_exact(a.sub(b)) + &cos_exact(Angle::combo(2, a, 1, b)),
            (&c(ra * Rational::new(3, 2)) * &x).scale(two),
            (&d * &d).scale(-two),
        ),
        _ => return Err(unknown(IdentitySuite::HalfAngle, id)),
    };
    Ok(lhs == rhs && (!constrained || lhs == target))
}

/// Pairs with `cos a + cos b + cos(a+b) = 1/2` and rational `cos a`.
pub fn half_angle_solutions() -> [(Angle, Angle); 2] {
    [(ang(1, 3), ang(1, 3)), (ang(2, 3), ang(5, 3))]
}

/// Exact check of one identity.
///
/// `phi` is the free angle of parametric identities (`ψ` for the solution
/// list). `lemma-nm` and `half-angle` read `(a, b) = (phi, psi)`, with `psi`
/// defaulting to `phi`; `half-angle` without angles checks both rational
/// solutions of `cos a + cos b + cos(a+b) = 1/2`.
pub fn validate_identity(suite: IdentitySuite, id: &str, phi: Option<Angle>, psi: Option<Angle>) -> Result<bool> {
    match suite {
        IdentitySuite::Monaghan => monaghan(id, phi),
        IdentitySuite::Solutions => solutions(id, phi),
        IdentitySuite::LemmaNm => {
            if id != "factorization" {
                return Err(unknown(suite, id));
            }
            let a = need(phi, suite, id)?;
            let (l, r) = diagonal_factorization(a, psi.unwrap_or(a));
            Ok(l == r)
        }
        IdentitySuite::HalfAngle => match phi {
            Some(a) => half_angle_at(id, a, psi.unwrap_or(a)),
            None => {
                let mut ok = true;
                for (a, b) in half_angle_solutions() {
                    ok &= half_angle_at(id, a, b)?;
                }
                Ok(ok)
            }
        },
    }
}

/// Outcome of one identity evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub suite: String,
    pub id: String,
    pub phi: Option<Angle>,
    pub psi: Option<Angle>,
    pub pass: bool,
}

/// A uniformly drawn rational angle `kπ/d` with `1 ≤ d ≤ den_max`, `0 ≤ k < 2d`.
pub fn random_angle<R: Rng>(rng: &mut R, den_max: i64) -> Angle {
    let d = rng.gen_range(1..=den_max);
    let k = rng.gen_range(0..2 * d);
    ang(k, d)
}

/// Every identity of a suite; parametric ones at `trials` seeded random angles.
pub fn run_suite(suite: IdentitySuite, trials: usize, den_max: i64, seed: u64) -> Result<Vec<IdentityResult>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for id in identity_ids(suite) {
        let args: Vec<(Option<Angle>, Option<Angle>)> = if is_parametric(suite, id) {
            (0..trials).map(|_| (Some(random_angle(&mut rng, den_max)), Some(random_angle(&mut rng, den_max)))).collect()
        } else {
            vec![(None, None)]
        };
        for (phi, psi) in args {
            let psi = if suite == IdentitySuite::LemmaNm { psi } else { None };
            let pass = validate_identity(suite, id, phi, psi)?;
            out.push(IdentityResult { suite: suite.to_string(), id: id.to_string(), phi, psi, pass });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_suites_pass() {
        for suite in IdentitySuite::ALL {
            let a = run_suite(suite, 20, 60, 7).unwrap();
            assert!(a.iter().all(|r| r.pass), "{suite}");
            let b = run_suite(suite, 20, 60, 7).unwrap();
            assert_eq!(a.iter().map(|r| r.phi).collect::<Vec<_>>(), b.iter().map(|r| r.phi).collect::<Vec<_>>());
        }
        assert_eq!(run_suite(IdentitySuite::Monaghan, 5, 60, 1).unwrap().len(), 12 + 3 * 5);
    }

    #[test]
    fn fixed_monaghan_identities() {
        for id in "defghijklmno".chars() {
            assert!(validate_identity(IdentitySuite::Monaghan, &id.to_string(), None, None).unwrap(), "{id}");
        }
    }

    #[test]
    fn parametric_need_angle() {
        let e = validate_identity(IdentitySuite::Monaghan, "b", None, None).unwrap_err();
        assert!(matches!(e, Error::MissingArgument(_)));
        for id in ["a", "b", "c"] {
            assert!(validate_identity(IdentitySuite::Monaghan, id, Some(ang(3, 17)), None).unwrap());
        }
    }

    #[test]
    fn solution_list_entries() {
        for id in &SOLUTIONS[2..] {
            assert!(validate_identity(IdentitySuite::Solutions, id, None, None).unwrap(), "{id}");
        }
        for id in ["i", "ii"] {
            assert!(validate_identity(IdentitySuite::Solutions, id, Some(ang(5, 11)), None).unwrap());
        }
        assert_eq!(solution_ab("vi", None).unwrap(), (ang(2, 7), ang(4, 7)));
    }

    #[test]
    fn wrong_value_is_rejected() {
        // Changing one cosine breaks the relation.
        let bad = cos_sum(&[(1, ang(1, 5)), (-1, ang(3, 5))]);
        assert_ne!(bad, Cyclo::from_rational(Rational::new(1, 2)));
        assert!(validate_identity(IdentitySuite::Monaghan, "z", None, None).is_err());
    }

    #[test]
    fn lemma_and_half_angle() {
        assert!(validate_identity(IdentitySuite::LemmaNm, "factorization", Some(ang(2, 5)), None).unwrap());
        for id in ["1", "2", "3"] {
            assert!(validate_identity(IdentitySuite::HalfAngle, id, None, None).unwrap());
            assert!(validate_identity(IdentitySuite::HalfAngle, id, Some(ang(3, 7)), Some(ang(9, 5))).unwrap());
        }
        assert_eq!("lemma-nm".parse::<IdentitySuite>().unwrap(), IdentitySuite::LemmaNm);
    }
}
