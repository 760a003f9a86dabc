//! Serialized command reports. Field names are camelCase; every report ends
//! with a `timing` object, the only field that varies between runs.

use std::fmt::Write as _;

use cstar_frames::decomposition::{
    EhCertificate, LowerBoundPrediction, PartCheck, PerturbedBounds,
};
use cstar_frames::BoundsReport;
use serde::Serialize;

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Timing {
    pub elapsed_ms: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
    pub tight: bool,
    pub is_frame: bool,
}

impl Bounds {
    pub fn new(b: &BoundsReport, tol: f64) -> Self {
        Self {
            lower: b.lower,
            upper: b.upper,
            tight: b.is_tight(tol),
            is_frame: b.is_frame,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Shape {
    pub d: usize,
    pub n: usize,
    pub vectors: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LowerBound {
    pub rho: f64,
    pub eta: f64,
    pub value: f64,
    pub t_positive: bool,
    pub formula_only: bool,
}

impl From<LowerBoundPrediction> for LowerBound {
    fn from(p: LowerBoundPrediction) -> Self {
        Self {
            rho: p.rho,
            eta: p.eta,
            value: p.value,
            t_positive: p.t_positive,
            formula_only: p.formula_only,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EhReport {
    pub alpha: f64,
    pub eta: f64,
    pub holds: bool,
    pub slack: f64,
}

impl From<EhCertificate> for EhReport {
    fn from(c: EhCertificate) -> Self {
        Self {
            alpha: c.alpha,
            eta: c.eta,
            holds: c.holds,
            slack: c.slack,
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Decomposition {
    pub xi: f64,
    pub t_lambda_min: f64,
    pub t_norm: f64,
    pub part1: PartCheck,
    pub part2: PartCheck,
    pub part3: PartCheck,
    pub all_hold: bool,
    pub lower_bound: LowerBound,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eh: Option<EhReport>,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualResiduals {
    pub identity_residual: f64,
    pub inverse_residual: f64,
    pub product_residual: f64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateSummary {
    pub kind: String,
    pub xi: f64,
    pub inverted: bool,
    pub residual: f64,
    pub k_rank: usize,
    /// Present when `S = K + ξI` holds on the whole module.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualResiduals>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AnalysisReport {
    pub shape: Shape,
    pub bounds: Bounds,
    pub bessel_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    pub certificates: Vec<CertificateSummary>,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum Prediction {
    #[serde(rename_all = "camelCase")]
    Applicable {
        low: f64,
        high: f64,
        low_alt: f64,
        lower_bound: LowerBound,
    },
    #[serde(rename_all = "camelCase")]
    NotApplicable { threshold: f64 },
}

impl From<PerturbedBounds> for Prediction {
    fn from(p: PerturbedBounds) -> Self {
        match p {
            PerturbedBounds::Applicable {
                low,
                high,
                low_alt,
                lower,
                ..
            } => Prediction::Applicable {
                low,
                high,
                low_alt,
                lower_bound: lower.into(),
            },
            PerturbedBounds::NotApplicable { threshold, .. } => {
                Prediction::NotApplicable { threshold }
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerturbReport {
    pub mu: f64,
    pub xi: f64,
    pub eta: f64,
    pub prediction: Prediction,
    pub actual: Bounds,
    pub sandwich: Verdict,
    pub timing: Timing,
}

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepRow {
    pub n: usize,
    pub adversarial_lambda_min: f64,
    pub envelope: f64,
    pub universal_lower: f64,
    pub is_woven: bool,
    pub partitions_checked: u64,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct WeaveReport {
    pub families: usize,
    pub vectors: usize,
    pub tol: f64,
    pub universal_lower: f64,
    pub universal_upper: f64,
    /// 1-based family label per vector index.
    pub worst_partition: Vec<usize>,
    pub is_woven: bool,
    pub partitions_checked: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_decreasing: Option<bool>,
    pub timing: Timing,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DualReport {
    pub output: String,
    pub original: Bounds,
    pub dual: Bounds,
    pub timing: Timing,
}

/// Shortest round-trip decimal, switching to exponent form at extreme magnitudes.
pub struct Num(pub f64);

impl std::fmt::Display for Num {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let a = self.0.abs();
        if a != 0.0 && a.is_finite() && !(1e-4..1e16).contains(&a) {
            write!(f, "{:e}", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

fn part_line(out: &mut String, name: &str, p: &PartCheck) {
    let _ = writeln!(
        out,
        "  {name}: {} (applicable={}, slack={})",
        if p.holds { "holds" } else { "FAILS" },
        p.applicable,
        Num(p.slack)
    );
}

fn bounds_line(out: &mut String, label: &str, b: &Bounds) {
    let _ = writeln!(
        out,
        "{label}: lower={} upper={} tight={} frame={}",
        Num(b.lower),
        Num(b.upper),
        b.tight,
        b.is_frame
    );
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let s = &self.shape;
        let _ = writeln!(out, "module: d={} n={}, {} vectors", s.d, s.n, s.vectors);
        bounds_line(&mut out, "bounds", &self.bounds);
        let _ = writeln!(out, "bessel bound: {}", Num(self.bessel_bound));
        if let Some(dec) = &self.decomposition {
            let _ = writeln!(out, "decomposition S = T + {}·I:", Num(dec.xi));
            let _ = writeln!(
                out,
                "  T: lambda_min={} norm={}",
                Num(dec.t_lambda_min),
                Num(dec.t_norm)
            );
            part_line(&mut out, "part1", &dec.part1);
            part_line(&mut out, "part2", &dec.part2);
            part_line(&mut out, "part3", &dec.part3);
            let lb = &dec.lower_bound;
            let _ = writeln!(
                out,
                "  lower bound L={} (rho={}, eta={}{})",
                Num(lb.value),
                Num(lb.rho),
                Num(lb.eta),
                if lb.formula_only {
                    ", formula only"
                } else {
                    ""
                }
            );
            if let Some(eh) = &dec.eh {
                let _ = writeln!(
                    out,
                    "  eh(alpha={}, eta={}): {} (slack={})",
                    Num(eh.alpha),
                    Num(eh.eta),
                    if eh.holds { "holds" } else { "fails" },
                    Num(eh.slack)
                );
            }
        }
        for c in &self.certificates {
            let _ = write!(
                out,
                "certificate {}{} xi={}: residual={} K rank={}",
                c.kind,
                if c.inverted { " (inverted)" } else { "" },
                Num(c.xi),
                Num(c.residual),
                c.k_rank
            );
            if let Some(d) = &c.dual {
                let _ = write!(
                    out,
                    ", dual residuals {} / {} / {}",
                    Num(d.identity_residual),
                    Num(d.inverse_residual),
                    Num(d.product_residual)
                );
            }
            out.push('\n');
        }
        let _ = writeln!(out, "time: {:.3} ms", self.timing.elapsed_ms);
        out
    }
}

impl PerturbReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "mu: {}", Num(self.mu));
        let _ = writeln!(
            out,
            "decomposition: xi={} eta={}",
            Num(self.xi),
            Num(self.eta)
        );
        match &self.prediction {
            Prediction::Applicable {
                low,
                high,
                low_alt,
                lower_bound,
            } => {
                let _ = writeln!(
                    out,
                    "predicted: [{}, {}] (L={}, alt low={})",
                    Num(*low),
                    Num(*high),
                    Num(lower_bound.value),
                    Num(*low_alt)
                );
            }
            Prediction::NotApplicable { threshold } => {
                let _ = writeln!(
                    out,
                    "predicted: NotApplicable (mu >= sqrt(L) = {})",
                    Num(*threshold)
                );
            }
        }
        bounds_line(&mut out, "actual", &self.actual);
        let verdict = match self.sandwich {
            Verdict::Pass => "pass",
            Verdict::Fail => "FAIL",
            Verdict::NotApplicable => "not applicable",
        };
        let _ = writeln!(out, "sandwich: {verdict}");
        let _ = writeln!(out, "time: {:.3} ms", self.timing.elapsed_ms);
        out
    }
}

impl WeaveReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{} families of {} vectors, {} partitions checked",
            self.families, self.vectors, self.partitions_checked
        );
        let _ = writeln!(
            out,
            "universal bounds: lower={} upper={}",
            Num(self.universal_lower),
            Num(self.universal_upper)
        );
        let labels: Vec<String> = self.worst_partition.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "worst partition: [{}]", labels.join(","));
        let _ = writeln!(out, "woven: {} (tol {})", self.is_woven, Num(self.tol));
        if let Some(rows) = &self.sweep {
            let _ = writeln!(
                out,
                "n,adversarial_lambda_min,envelope,universal_lower,is_woven"
            );
            for r in rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    Num(r.adversarial_lambda_min),
                    Num(r.envelope),
                    Num(r.universal_lower),
                    r.is_woven
                );
            }
            if let Some(dec) = self.sweep_decreasing {
                let _ = writeln!(out, "strictly decreasing: {dec}");
            }
        }
        let _ = writeln!(out, "time: {:.3} ms", self.timing.elapsed_ms);
        out
    }
}

impl DualReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "wrote {}", self.output);
        bounds_line(&mut out, "original", &self.original);
        bounds_line(&mut out, "dual", &self.dual);
        let _ = writeln!(out, "time: {:.3} ms", self.timing.elapsed_ms);
        out
    }
}
