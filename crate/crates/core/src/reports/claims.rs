//! Stated signature ranges, with their wording kept verbatim so that a
//! disagreement can be reported against the exact text.

use serde::Serialize;

use super::{signature_scan, CandidateId};
use crate::error::Result;

/// A range of `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PRange {
    AtLeast(u32),
    AtMost(u32),
    Exactly(u32),
    Except(u32),
}

impl PRange {
    pub fn contains(&self, p: u32) -> bool {
        match *self {
            PRange::AtLeast(k) => p >= k,
            PRange::AtMost(k) => p <= k,
            PRange::Exactly(k) => p == k,
            PRange::Except(k) => p != k,
        }
    }
}

/// A stated verdict for a candidate over a range of `p`.
#[derive(Clone, Debug, Serialize)]
pub struct Claim {
    pub candidate: CandidateId,
    pub source: &'static str,
    pub quote: &'static str,
    pub range: PRange,
    pub verdict: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimCheck {
    pub candidate: CandidateId,
    pub source: &'static str,
    pub quote: &'static str,
    pub p: u32,
    pub expected: &'static str,
    pub got: &'static str,
    /// Inertia of `H`, which can be `(1,2)` when `det H > 0`.
    pub inertia: String,
    pub matches: bool,
}

const DIAG_K3: &str = "$e^{\\frac{2 \\pi i}{3}}$ ($m=n=3$) &$p\\geqslant4$& $p=3$ & $p=2$";
const DIAG_K4: &str = "$e^{\\frac{2 \\pi i}{4}}$ ($m=n=4$) &$p\\geqslant3$& $p=2$ & none";
const DIAG_K5: &str = "$e^{\\frac{2 \\pi i}{k}}$ ($m=n=k\\geqslant5$)&$p\\geqslant2$& none & none";
const S_MINUS: &str = "$-e^{-i\\pi/3}$&$p\\geqslant4$& $p=3$& $p=2$";
const S_PLUS: &str = "$-e^{i\\pi/3}$&none& $p=6$& $p\\neq6$";
const F_NEG: &str = "$e^{-\\frac{2\\pi i}{5}}+e^{-\\frac{4\\pi i}{5}}$&$p\\leqslant7$& none & $p\\geqslant8$";
const F_POS: &str = "$e^{\\frac{2\\pi i}{5}}+e^{\\frac{4\\pi i}{5}}$&$p\\geqslant2$& none& none";
const TXT_34: &str = "the signature of the Hermitian form will be of $(2, 1)$ for $p\\geqslant5$, otherwise it will be positive.";
const TXT_43: &str = "the signature of the Hermitian form will be positive if $p=2$, degenerate if $p=3$, negative (of signature (2,1)) if $p\\geqslant4.$";
const TXT_54: &str = "We see that $H$ is of signature $(3, 0)$ for $p=2$ and is of signature $(2, 1)$ for any $p\\geqslant 3$.";
const TXT_86: &str = "we see that $H$ is of signature $(3, 0)$ for $p=2$ and is of signature $(2, 1)$ for any $p\\geqslant3$.";

/// Every stated verdict, for the diagonal family up to `k = 12`.
pub fn claims() -> Vec<Claim> {
    use PRange::*;
    let c = |n, m, conj| CandidateId { n, m, conj };
    let mut out = Vec::new();
    let mut push = |cand, source, quote, range, verdict| out.push(Claim { candidate: cand, source, quote, range, verdict });

    push(c(3, 3, false), "diagonal table", DIAG_K3, AtLeast(4), "(2,1)");
    push(c(3, 3, false), "diagonal table", DIAG_K3, Exactly(3), "degenerate");
    push(c(3, 3, false), "diagonal table", DIAG_K3, Exactly(2), "(3,0)");
    push(c(4, 4, false), "diagonal table", DIAG_K4, AtLeast(3), "(2,1)");
    push(c(4, 4, false), "diagonal table", DIAG_K4, Exactly(2), "degenerate");
    for k in 5..=12 {
        push(c(k, k, false), "diagonal table", DIAG_K5, AtLeast(2), "(2,1)");
    }
    push(c(3, 3, false), "s table", S_MINUS, AtLeast(4), "(2,1)");
    push(c(3, 3, false), "s table", S_MINUS, Exactly(3), "degenerate");
    push(c(3, 3, false), "s table", S_MINUS, Exactly(2), "(3,0)");
    push(c(3, 3, true), "s table", S_PLUS, Exactly(6), "degenerate");
    push(c(3, 3, true), "s table", S_PLUS, Except(6), "(3,0)");
    push(c(3, 5, true), "(3,5) table", F_NEG, AtMost(7), "(2,1)");
    push(c(3, 5, true), "(3,5) table", F_NEG, AtLeast(8), "(3,0)");
    push(c(3, 5, false), "(3,5) table", F_POS, AtLeast(2), "(2,1)");
    push(c(3, 4, false), "text", TXT_34, AtLeast(5), "(2,1)");
    push(c(3, 4, false), "text", TXT_34, AtMost(4), "(3,0)");
    push(c(4, 3, false), "text", TXT_43, AtLeast(4), "(2,1)");
    push(c(4, 3, false), "text", TXT_43, Exactly(3), "degenerate");
    push(c(4, 3, false), "text", TXT_43, Exactly(2), "(3,0)");
    push(c(5, 4, false), "text", TXT_54, AtLeast(3), "(2,1)");
    push(c(5, 4, false), "text", TXT_54, Exactly(2), "(3,0)");
    push(c(8, 6, false), "text", TXT_86, AtLeast(3), "(2,1)");
    push(c(8, 6, false), "text", TXT_86, Exactly(2), "(3,0)");
    out
}

/// Compare every claim with the exact verdict for `p_min ≤ p ≤ p_max`.
pub fn check_claims(p_min: u32, p_max: u32) -> Result<Vec<ClaimCheck>> {
    let all = claims();
    let mut cands: Vec<CandidateId> = all.iter().map(|c| c.candidate).collect();
    cands.sort();
    cands.dedup();
    let mut out = Vec::new();
    for cand in cands {
        let report = signature_scan(cand, p_min, p_max)?;
        for claim in all.iter().filter(|c| c.candidate == cand) {
            for row in report.rows.iter().filter(|r| claim.range.contains(r.p)) {
                out.push(ClaimCheck {
                    candidate: cand,
                    source: claim.source,
                    quote: claim.quote,
                    p: row.p,
                    expected: claim.verdict,
                    got: row.verdict,
                    inertia: row.inertia.verdict(),
                    matches: claim.verdict == row.verdict,
                });
            }
        }
    }
    Ok(out)
}
