//! Signature tables, determinant closed forms and the parameter table,
//! each recomputed from the exact group and compared with the stated values.

mod claims;
mod closed;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cosearch::known_ab;
use crate::error::{Error, Result};
use crate::exact::{Cyclo, DEFAULT_PREC};
use crate::linalg::Signature;
use crate::trigroup::build_symmetric;

pub use claims::{check_claims, claims, Claim, ClaimCheck, PRange};
pub use closed::{
    closed_forms, detH_closed_form, find_closed_form, theorem_table, ClosedForm, ClosedFormComparison,
    TheoremTableRow,
};

/// A row of the classification, optionally with `ρ` conjugated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CandidateId {
    pub n: u32,
    pub m: u32,
    pub conj: bool,
}

impl CandidateId {
    pub fn new(n: u32, m: u32, conj: bool) -> Result<CandidateId> {
        if known_ab(n, m).is_none() {
            return Err(Error::UnknownCandidate(format!("({n},{m})")));
        }
        Ok(CandidateId { n, m, conj })
    }

    pub fn im_sign(&self) -> i8 {
        if self.conj {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}){}", self.n, self.m, if self.conj { "*" } else { "" })
    }
}

impl FromStr for CandidateId {
    type Err = Error;

    /// `3,4`, `(3,4)`, or with a trailing `*` for the conjugate variant.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (t, conj) = match t.strip_suffix('*') {
            Some(r) => (r, true),
            None => (t, false),
        };
        let t = t.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = t.split(',').map(str::trim).collect();
        let bad = || Error::UnknownCandidate(s.to_string());
        if parts.len() != 2 {
            return Err(bad());
        }
        let n = parts[0].parse().map_err(|_| bad())?;
        let m = parts[1].parse().map_err(|_| bad())?;
        CandidateId::new(n, m, conj)
    }
}

/// Table column decided by the sign of `det H`.
pub fn det_column(sign: Ordering) -> &'static str {
    match sign {
        Ordering::Less => "(2,1)",
        Ordering::Equal => "degenerate",
        Ordering::Greater => "(3,0)",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureRow {
    pub p: u32,
    /// Exact `det H`.
    pub det_h: String,
    /// `det H` to 30 significant digits.
    pub det_decimal: String,
    /// Column by the sign of `det H`: `(2,1)`, `degenerate` or `(3,0)`.
    pub verdict: &'static str,
    /// Full inertia of `H`.
    pub inertia: Signature,
}

#[derive(Clone, Debug, Serialize)]
pub struct SignatureReport {
    pub candidate: CandidateId,
    pub rows: Vec<SignatureRow>,
}

impl SignatureReport {
    pub fn verdict_at(&self, p: u32) -> Option<&'static str> {
        self.rows.iter().find(|r| r.p == p).map(|r| r.verdict)
    }
}

fn signature_row(c: CandidateId, p: u32) -> Result<SignatureRow> {
    let g = build_symmetric(p, c.n, c.m, c.im_sign(), DEFAULT_PREC)?;
    let det = g.det_h_exact().ok_or_else(|| Error::Inconsistent(format!("{c} has no exact matrices")))?;
    let sign = det.real_sign()?;
    Ok(SignatureRow {
        p,
        det_decimal: det.to_float(DEFAULT_PREC).to_decimal(30).0,
        det_h: det.to_string(),
        verdict: det_column(sign),
        inertia: g.signature,
    })
}

/// Exact `det H` and signature for `p_min ≤ p ≤ p_max`.
pub fn signature_scan(c: CandidateId, p_min: u32, p_max: u32) -> Result<SignatureReport> {
    if p_min < 2 || p_min > p_max {
        return Err(Error::Config(format!("invalid p range {p_min}..={p_max}")));
    }
    let rows = (p_min..=p_max).into_par_iter().map(|p| signature_row(c, p)).collect::<Result<Vec<_>>>()?;
    Ok(SignatureReport { candidate: c, rows })
}

/// Exact `det H` of a candidate group.
pub fn det_h(c: CandidateId, p: u32) -> Result<Cyclo> {
    let g = build_symmetric(p, c.n, c.m, c.im_sign(), DEFAULT_PREC)?;
    g.det_h_exact().ok_or_else(|| Error::Inconsistent(format!("{c} has no exact matrices")))
}

/// CSV with header `candidate,p,detH,verdict`.
pub fn signature_csv(reports: &[SignatureReport]) -> String {
    let mut out = String::from("candidate,p,detH,verdict\n");
    for r in reports {
        for row in &r.rows {
            out += &format!("\"{}\",{},{},{}\n", r.candidate, row.p, row.det_decimal, row.verdict);
        }
    }
    out
}

/// Aligned text table.
pub fn signature_text(reports: &[SignatureReport]) -> String {
    let mut out = format!("{:<10} {:>3}  {:<38} {:<11} {}\n", "candidate", "p", "detH", "verdict", "inertia");
    for r in reports {
        for row in &r.rows {
            out += &format!(
                "{:<10} {:>3}  {:<38} {:<11} {}\n",
                r.candidate.to_string(),
                row.p,
                row.det_decimal,
                row.verdict,
                row.inertia
            );
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_candidate_ids() {
        assert_eq!("3,4".parse::<CandidateId>().unwrap(), CandidateId { n: 3, m: 4, conj: false });
        assert_eq!("(3,5)*".parse::<CandidateId>().unwrap(), CandidateId { n: 3, m: 5, conj: true });
        assert_eq!("(7,7)".parse::<CandidateId>().unwrap().to_string(), "(7,7)");
        assert!(matches!("6,3".parse::<CandidateId>(), Err(Error::UnknownCandidate(_))));
        assert!("x".parse::<CandidateId>().is_err());
    }

    #[test]
    fn table_one_first_row() {
        let r = signature_scan("3,3".parse().unwrap(), 2, 6).unwrap();
        assert_eq!(r.verdict_at(2), Some("(3,0)"));
        assert_eq!(r.verdict_at(3), Some("degenerate"));
        for p in 4..=6 {
            assert_eq!(r.verdict_at(p), Some("(2,1)"));
        }
        assert_eq!(r.rows[1].det_h, "0");
    }

    #[test]
    fn csv_layout() {
        let r = signature_scan("4,3".parse().unwrap(), 2, 4).unwrap();
        let csv = signature_csv(&[r]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "candidate,p,detH,verdict");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("\"(4,3)\",3,0,degenerate"));
        // −2 sin(3π/4) = −√2
        assert!(lines[3].contains("-1.41421356237309504880168872421"), "{}", lines[3]);
    }
}
