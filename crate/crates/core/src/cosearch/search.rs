use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use super::{canonicalize_ab, main_residual, minor_residual, trace_s, AbOrbit};
use crate::error::{Error, Result};
use crate::exact::{cos_exact, Angle, Cyclo};
use crate::trigroup::{symmetric_feasible, two_cos_pi_over};

/// Bounds and options for [`search`].
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub m_max: u32,
    pub n_max: u32,
    /// Largest denominator of `a/π`, `b/π`.
    pub den_max: u32,
    /// Tolerance of the double-precision prefilter.
    pub prefilter_tol: f64,
    /// Decide every pair exactly instead of prefiltering (slow; for audits).
    pub audit: bool,
    /// Worker threads; `None` uses the rayon default.
    pub workers: Option<usize>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { m_max: 12, n_max: 12, den_max: 90, prefilter_tol: 1e-9, audit: false, workers: None }
    }
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.m_max < 3 || self.n_max < 3 {
            return Err(Error::Config("m_max and n_max must be at least 3".into()));
        }
        if self.den_max < 2 {
            return Err(Error::Config("den_max must be at least 2".into()));
        }
        if self.workers == Some(0) {
            return Err(Error::Config("worker count must be at least 1".into()));
        }
        Ok(())
    }
}

/// A solution `(n, m, a, b)` of both trace equations.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub n: u32,
    pub m: u32,
    pub a: Angle,
    pub b: Angle,
    pub s: Cyclo,
    pub rho: Cyclo,
    pub sigma: Cyclo,
    pub exact_confirmed: bool,
    pub parameter_feasible: bool,
    /// Grid pairs that fell into this candidate's orbit.
    pub multiplicity: usize,
}

impl Candidate {
    pub fn orbit(&self) -> AbOrbit {
        canonicalize_ab(self.a, self.b)
    }
}

#[derive(Serialize)]
struct AngleJson {
    num: i64,
    den: i64,
}

#[derive(Serialize)]
struct ComplexJson {
    re: String,
    im: String,
}

#[derive(Serialize)]
struct CandidateJson {
    n: u32,
    m: u32,
    a: AngleJson,
    b: AngleJson,
    s: ComplexJson,
    exact_confirmed: bool,
    parameter_feasible: bool,
}

impl Serialize for Candidate {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let (re, im) = self.s.to_float(256).to_decimal(50);
        CandidateJson {
            n: self.n,
            m: self.m,
            a: AngleJson { num: self.a.num(), den: self.a.den() },
            b: AngleJson { num: self.b.num(), den: self.b.den() },
            s: ComplexJson { re, im },
            exact_confirmed: self.exact_confirmed,
            parameter_feasible: self.parameter_feasible,
        }
        .serialize(ser)
    }
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub candidates: Vec<Candidate>,
    pub angles: usize,
    pub pairs_scanned: u64,
    pub prefilter_hits: u64,
    /// Prefilter hits whose orbit failed exact confirmation.
    pub refuted: u64,
    /// True when the scan was interrupted before completion.
    pub cancelled: bool,
}

impl SearchOutcome {
    /// The distinct `(n, m)` among exactly confirmed candidates.
    pub fn nm_pairs(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> =
            self.candidates.iter().filter(|c| c.exact_confirmed).map(|c| (c.n, c.m)).collect();
        v.sort();
        v.dedup();
        v
    }
}

/// All angles `πk/d` in `[0, 2π)` with `d ≤ den_max`, in increasing order.
pub fn enumerate_angles(den_max: u32) -> Vec<Angle> {
    let mut v = Vec::new();
    for d in 1..=den_max as i64 {
        for k in 0..2 * d {
            if k.gcd(&d) == 1 {
                v.push(Angle::new(k, d).expect("positive denominator"));
            }
        }
    }
    v.sort_by_key(|a| a.ratio());
    v
}

struct Hit {
    n: u32,
    m: u32,
    a: Angle,
    b: Angle,
}

fn prefilter_row(
    i: usize,
    angles: &[Angle],
    cs: &[(f64, f64)],
    cn: &[f64],
    cm: &[f64],
    tol: f64,
) -> Vec<Hit> {
    let (ca, sa) = cs[i];
    let (c2a, s2a) = (2.0 * ca * ca - 1.0, 2.0 * sa * ca);
    let mut out = Vec::new();
    for (j, &(cb, sb)) in cs.iter().enumerate() {
        let cab = ca * cb - sa * sb;
        let v = ca + cb + cab;
        let Some(ni) = cn.iter().position(|c| (v - c).abs() <= tol) else { continue };
        let (c2b, s2b) = (2.0 * cb * cb - 1.0, 2.0 * sb * cb);
        let c_amb = ca * cb + sa * sb;
        let c_a2b = ca * c2b - sa * s2b;
        let c_2ab = c2a * cb - s2a * sb;
        let rest = cn[ni] + c_amb + c_a2b + c_2ab + 1.0;
        for (mi, c) in cm.iter().enumerate() {
            if (c - rest).abs() <= tol {
                out.push(Hit { n: ni as u32 + 3, m: mi as u32 + 3, a: angles[i], b: angles[j] });
            }
        }
    }
    out
}

fn exact_row(i: usize, angles: &[Angle], cos_n: &[Cyclo], m_max: u32) -> Vec<Hit> {
    let a = angles[i];
    let mut out = Vec::new();
    for &b in angles {
        let v = &(&cos_exact(a) + &cos_exact(b)) + &cos_exact(a.add(b));
        let Some(ni) = cos_n.iter().position(|c| *c == v) else { continue };
        let n = ni as u32 + 3;
        for m in 3..=m_max {
            if main_residual(m, n, a, b).is_zero() {
                out.push(Hit { n, m, a, b });
            }
        }
    }
    out
}

/// Enumerate `(a, b)` on the grid, solve the minor equation for `n` and the
/// main equation for `m`, confirm exactly, and deduplicate by orbit.
///
/// Setting `stop` aborts the scan; partial results are returned with
/// `cancelled = true`.
pub fn search(cfg: &SearchConfig, stop: Option<&AtomicBool>) -> Result<SearchOutcome> {
    cfg.validate()?;
    let run = || search_inner(cfg, stop);
    match cfg.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(run),
        None => run(),
    }
}

fn search_inner(cfg: &SearchConfig, stop: Option<&AtomicBool>) -> Result<SearchOutcome> {
    let angles = enumerate_angles(cfg.den_max);
    let cs: Vec<(f64, f64)> = angles.iter().map(|a| (a.radians().cos(), a.radians().sin())).collect();
    let cn: Vec<f64> = (3..=cfg.n_max).map(|n| (2.0 * PI / n as f64).cos()).collect();
    let cm: Vec<f64> = (3..=cfg.m_max).map(|m| (2.0 * PI / m as f64).cos()).collect();
    let cos_n: Vec<Cyclo> = (3..=cfg.n_max).map(|n| cos_exact(Angle::two_pi_over(n as i64))).collect();
    let stopped = || stop.is_some_and(|s| s.load(AtomicOrdering::Relaxed));

    let rows: Vec<Option<Vec<Hit>>> = (0..angles.len())
        .into_par_iter()
        .map(|i| {
            if stopped() {
                return None;
            }
            Some(if cfg.audit {
                exact_row(i, &angles, &cos_n, cfg.m_max)
            } else {
                prefilter_row(i, &angles, &cs, &cn, &cm, cfg.prefilter_tol)
            })
        })
        .collect();
    let cancelled = rows.iter().any(Option::is_none);
    let done = rows.iter().filter(|r| r.is_some()).count() as u64;
    let hits: Vec<Hit> = rows.into_iter().flatten().flatten().collect();

    // Group by (n, m, orbit); keep the least (a, b) actually hit.
    let mut groups: BTreeMap<(u32, u32, AbOrbit), (Angle, Angle, usize)> = BTreeMap::new();
    for h in &hits {
        let key = (h.n, h.m, canonicalize_ab(h.a, h.b));
        groups
            .entry(key)
            .and_modify(|e| {
                if (h.a.ratio(), h.b.ratio()) < (e.0.ratio(), e.1.ratio()) {
                    e.0 = h.a;
                    e.1 = h.b;
                }
                e.2 += 1;
            })
            .or_insert((h.a, h.b, 1));
    }
    let entries: Vec<_> = groups.into_iter().collect();
    let mut candidates: Vec<Candidate> = entries
        .into_par_iter()
        .map(|((n, m, _), (a, b, mult))| {
            let confirmed = minor_residual(n, a, b).is_zero() && main_residual(m, n, a, b).is_zero();
            let s = trace_s(a, b);
            Ok(Candidate {
                n,
                m,
                a,
                b,
                rho: &Cyclo::one() + &s,
                s,
                sigma: two_cos_pi_over(n),
                exact_confirmed: confirmed,
                parameter_feasible: symmetric_feasible(n, m)?,
                multiplicity: mult,
            })
        })
        .collect::<Result<_>>()?;
    let refuted = candidates.iter().filter(|c| !c.exact_confirmed).count() as u64;
    candidates.sort_by_key(|x| (x.n, x.m, x.a.ratio(), x.b.ratio()));
    Ok(SearchOutcome {
        candidates,
        angles: angles.len(),
        pairs_scanned: done * angles.len() as u64,
        prefilter_hits: hits.len() as u64,
        refuted,
        cancelled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angle_grid() {
        let a = enumerate_angles(3);
        // 0, π, π/2, 3π/2, π/3, 2π/3, 4π/3, 5π/3
        assert_eq!(a.len(), 8);
        assert!(a.windows(2).all(|w| w[0].ratio() < w[1].ratio()));
    }

    #[test]
    fn small_search_restricts_to_small_denominators() {
        let cfg = SearchConfig { den_max: 7, ..SearchConfig::default() };
        let out = search(&cfg, None).unwrap();
        assert!(!out.cancelled);
        for c in &out.candidates {
            assert!(c.exact_confirmed);
            assert!(c.a.den() <= 7 && c.b.den() <= 7);
            // Off the diagonal only (3,4) at (2π/7, 4π/7) and (4,3) at (0, 2π/3) fit.
            assert!(c.n == c.m || [(3, 4), (4, 3)].contains(&(c.n, c.m)), "{c:?}");
        }
        assert!(out.nm_pairs().contains(&(3, 4)));
        assert!(out.nm_pairs().contains(&(4, 3)));
    }

    #[test]
    fn audit_agrees_with_prefilter() {
        let base = SearchConfig { den_max: 12, m_max: 8, n_max: 8, ..SearchConfig::default() };
        let fast = search(&base, None).unwrap();
        let audit = search(&SearchConfig { audit: true, ..base }, None).unwrap();
        let key = |o: &SearchOutcome| o.candidates.iter().map(|c| (c.n, c.m, c.a, c.b)).collect::<Vec<_>>();
        assert_eq!(key(&fast), key(&audit));
        assert_eq!(fast.prefilter_hits, audit.prefilter_hits);
    }

    #[test]
    fn stop_flag_cancels() {
        let flag = AtomicBool::new(true);
        let out = search(&SearchConfig { den_max: 10, ..SearchConfig::default() }, Some(&flag)).unwrap();
        assert!(out.cancelled);
        assert!(out.candidates.is_empty());
    }

    #[test]
    fn candidate_json_field_order() {
        let cfg = SearchConfig { den_max: 6, m_max: 6, n_max: 6, ..SearchConfig::default() };
        let out = search(&cfg, None).unwrap();
        let js = serde_json::to_string(&out.candidates[0]).unwrap();
        let order = ["\"n\"", "\"m\"", "\"a\"", "\"b\"", "\"s\"", "\"exact_confirmed\"", "\"parameter_feasible\""];
        let pos: Vec<usize> = order.iter().map(|k| js.find(k).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{js}");
    }
}
