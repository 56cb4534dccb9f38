use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::qrac::{required_copies, CopiesBound};

/// Largest `m` for which the running maximum over smaller lengths is
/// evaluated.
pub const REPORT_LIMIT: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Quantum,
    Serial,
}

/// The numeric chain from a hypothetical `(m, n, p)` code to a lower
/// bound on `n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub m: usize,
    pub n: usize,
    pub p: f64,
    /// Target per-bit error `1/(64 m²)` after amplification.
    pub epsilon: f64,
    /// Copies needed to reach `epsilon` (Hoeffding).
    pub copies: usize,
    /// `1 − 4m√ε`, at least 1/2.
    pub extraction_success: f64,
    /// Information the amplified code must carry, `m/2 − 1` bits.
    pub information: f64,
    /// `ceil((m/2 − 1)/t)` at this `m`.
    pub chain_min_n: usize,
    /// Largest `chain_min_n` over all lengths up to `m`: fixing the extra
    /// bits of an `m`-bit code gives a code for any shorter length.
    pub implied_min_n: usize,
    pub infeasible: bool,
    pub notes: Vec<String>,
}

fn chain(m: usize, p: f64) -> Result<(f64, usize, usize)> {
    let eps = 1.0 / (64.0 * (m as f64) * (m as f64));
    let t = required_copies(p, eps, CopiesBound::Hoeffding)?;
    let info = m as f64 / 2.0 - 1.0;
    Ok((eps, t, (info / t as f64).ceil().max(0.0) as usize))
}

fn build(kind: BoundKind, m: usize, n: usize, p: f64) -> Result<BoundReport> {
    if !(p > 0.5 && p <= 1.0) {
        return Err(Error::InvalidParameter(format!("the chain needs 1/2 < p ≤ 1, got {p}")));
    }
    if m == 0 || m > REPORT_LIMIT {
        return Err(Error::TooLarge { what: format!("bound report for m = {m}"), limit: REPORT_LIMIT });
    }
    let (epsilon, copies, chain_min_n) = chain(m, p)?;
    let mut implied_min_n = chain_min_n;
    // the chain value is piecewise increasing; only lengths just before a
    // jump in the copy count can beat the current one
    let mut k = m;
    while k > 1 {
        let (_, t, v) = chain(k - 1, p)?;
        implied_min_n = implied_min_n.max(v);
        // skip to the last length that still needs t copies
        let mut lo = 1;
        let mut hi = k - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if chain(mid, p)?.1 >= t {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        if lo <= 1 {
            break;
        }
        k = lo;
    }
    let mut notes = vec![
        "information floor m/2 - 1 is Fano's inequality at decoding error 1/2 over 2^m strings".to_string(),
        "copies from the Hoeffding bound exp(-2t(p-1/2)^2) <= 1/(64 m^2)".to_string(),
    ];
    if implied_min_n > chain_min_n {
        notes.push(format!("bound inherited from a shorter length (value at m itself: {chain_min_n})"));
    }
    if implied_min_n <= 1 {
        notes.push("the chain is vacuous at this length; the Omega(m / log m) content only bites for large m".into());
    }
    if kind == BoundKind::Serial {
        notes.push("serial codes: decoders may depend on the later bits; the same chain applies".into());
    }
    Ok(BoundReport {
        kind,
        m,
        n,
        p,
        epsilon,
        copies,
        extraction_success: 1.0 - 4.0 * m as f64 * epsilon.sqrt(),
        information: m as f64 / 2.0 - 1.0,
        chain_min_n,
        implied_min_n,
        infeasible: n < implied_min_n,
        notes,
    })
}

pub fn quantum_bound_report(m: usize, n: usize, p: f64) -> Result<BoundReport> {
    build(BoundKind::Quantum, m, n, p)
}

pub fn serial_bound_report(m: usize, n: usize, p: f64) -> Result<BoundReport> {
    build(BoundKind::Serial, m, n, p)
}

impl BoundReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let kind = match self.kind {
            BoundKind::Quantum => "quantum",
            BoundKind::Serial => "serial",
        };
        let _ = writeln!(out, "{kind} random access code bound for m = {}, n = {}, p = {}", self.m, self.n, self.p);
        let _ = writeln!(out, "  target error 1/(64 m^2)    {:.6e}", self.epsilon);
        let _ = writeln!(out, "  copies t                   {}", self.copies);
        let _ = writeln!(out, "  extraction success >=      {:.6}", self.extraction_success);
        let _ = writeln!(out, "  information >= m/2 - 1     {}", self.information);
        let _ = writeln!(out, "  ceil((m/2 - 1)/t)          {}", self.chain_min_n);
        let _ = writeln!(out, "  implied min n              {}", self.implied_min_n);
        let _ = writeln!(out, "  verdict                    {}", if self.infeasible { "INFEASIBLE" } else { "consistent" });
        for note in &self.notes {
            let _ = writeln!(out, "  note: {note}");
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// One CSV row per report.
pub fn bound_sweep_csv(reports: &[BoundReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["kind", "m", "n", "p", "epsilon", "copies", "chain_min_n", "implied_min_n", "infeasible"])?;
    for r in reports {
        let kind = match r.kind {
            BoundKind::Quantum => "quantum",
            BoundKind::Serial => "serial",
        };
        w.write_record([
            kind.to_string(),
            r.m.to_string(),
            r.n.to_string(),
            r.p.to_string(),
            format!("{:e}", r.epsilon),
            r.copies.to_string(),
            r.chain_min_n.to_string(),
            r.implied_min_n.to_string(),
            r.infeasible.to_string(),
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hundred_bits_at_085() {
        let r = quantum_bound_report(100, 1, 0.85).unwrap();
        assert_eq!(r.copies, 55);
        assert_eq!(r.implied_min_n, 1);
        assert!(!r.infeasible);
        assert!((r.extraction_success - 0.5).abs() < 1e-12);
    }

    #[test]
    fn perfect_codes_need_t_equal_one() {
        for m in [2, 7, 100] {
            let r = quantum_bound_report(m, 0, 1.0).unwrap();
            assert_eq!(r.copies, 1);
            assert_eq!(r.implied_min_n, (m as f64 / 2.0 - 1.0).ceil() as usize);
        }
        assert!(quantum_bound_report(10, 3, 1.0).unwrap().infeasible);
    }

    #[test]
    fn running_maximum_matches_brute_force() {
        for p in [0.6, 0.85, 0.95] {
            let mut best = 0;
            for m in 1..=1500 {
                best = best.max(chain(m, p).unwrap().2);
                assert_eq!(quantum_bound_report(m, 0, p).unwrap().implied_min_n, best, "m = {m}, p = {p}");
            }
        }
    }

    #[test]
    fn serial_mirrors_quantum() {
        let q = quantum_bound_report(1 << 16, 10, 0.85).unwrap();
        let s = serial_bound_report(1 << 16, 10, 0.85).unwrap();
        assert_eq!(q.implied_min_n, s.implied_min_n);
        assert_eq!(s.kind, BoundKind::Serial);
        assert!(s.infeasible);
        assert!(quantum_bound_report(10, 1, 0.5).is_err());
    }
}
