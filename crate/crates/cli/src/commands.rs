use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use cstar_frames::constructors::{profile_frame, repetition_frame};
use cstar_frames::decomposition::{
    check_shift, dual_decomposition, eh_check, perturbed_bounds, shift_decompose,
    shifted_bessel_bound, shifted_lower_bound,
};
use cstar_frames::frames::perturbation_distance;
use cstar_frames::linalg;
use cstar_frames::weaving::{decaying_weave_scenario, universal_bounds};
use cstar_frames::{Execution, FrameSystem, ModuleShape, ProfileKind, ScalarProfile};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::format::{Certificate, CertificateKind, FrameFile};
use crate::report::*;

fn elapsed(start: Instant) -> Timing {
    Timing {
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    }
}

fn check_tol(tol: f64) -> CliResult<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(CliError::Flags(format!(
            "--tol must be positive and finite, got {tol}"
        )))
    }
}

fn check_finite(name: &str, x: f64) -> CliResult<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(CliError::Flags(format!("--{name} must be finite, got {x}")))
    }
}

fn shape_summary(frame: &FrameSystem) -> Shape {
    Shape {
        d: frame.shape().d,
        n: frame.shape().n,
        vectors: frame.len(),
    }
}

pub struct AnalyzeOptions {
    pub xi: Option<f64>,
    pub eta: Option<f64>,
    pub alpha: Option<f64>,
    pub tol: f64,
}

fn certificate_summary(
    cert: &Certificate,
    frame: &FrameSystem,
    tol: f64,
) -> CliResult<CertificateSummary> {
    let shape = frame.shape();
    let s = frame.frame_operator();
    let claimed = cert.claimed_operator(shape).map_err(CliError::Other)?;
    let k = cert.k_operator(shape).map_err(CliError::Other)?;
    let dual = if cert.spans_module(shape.n) {
        let d = dual_decomposition(cert.xi, &k, s, tol)?;
        Some(DualResiduals {
            identity_residual: d.identity_residual,
            inverse_residual: d.inverse_residual,
            product_residual: d.product_residual,
        })
    } else {
        None
    };
    let k_rank = linalg::hermitian_spectrum(k.mat())
        .iter()
        .filter(|l| l.abs() > tol)
        .count();
    Ok(CertificateSummary {
        kind: match cert.kind {
            CertificateKind::Profile => "profile".into(),
            CertificateKind::Repetition => "repetition".into(),
        },
        xi: cert.xi,
        inverted: cert.inverted,
        residual: s.mat().distance(claimed.mat()),
        k_rank,
        dual,
    })
}

pub fn analyze_frame(
    frame: &FrameSystem,
    certificate: Option<&Certificate>,
    opts: &AnalyzeOptions,
) -> CliResult<AnalysisReport> {
    let start = Instant::now();
    check_tol(opts.tol)?;
    let eta = opts.eta.unwrap_or(0.0);
    if eta < 0.0 || !eta.is_finite() {
        return Err(CliError::Flags(format!(
            "--eta must be non-negative, got {eta}"
        )));
    }
    if opts.xi.is_none() && (opts.alpha.is_some() || opts.eta.is_some()) {
        return Err(CliError::Flags("--alpha and --eta need --xi".into()));
    }
    let bounds = frame.optimal_bounds(opts.tol);
    let dec = shift_decompose(frame, opts.xi.unwrap_or(0.0));
    let decomposition = match opts.xi {
        None => None,
        Some(xi) => {
            check_finite("xi", xi)?;
            let shift = check_shift(frame, xi, opts.tol);
            let eh = match opts.alpha {
                Some(alpha) => {
                    check_finite("alpha", alpha)?;
                    Some(eh_check(dec.t(), alpha, eta)?.into())
                }
                None => None,
            };
            Some(Decomposition {
                xi,
                t_lambda_min: shift.t_lambda_min,
                t_norm: dec.t().norm(),
                part1: shift.part1,
                part2: shift.part2,
                part3: shift.part3,
                all_hold: shift.all_hold(),
                lower_bound: shifted_lower_bound(&dec, eta).into(),
                eh,
            })
        }
    };
    let certificates = certificate
        .map(|c| certificate_summary(c, frame, opts.tol))
        .transpose()?
        .into_iter()
        .collect();
    Ok(AnalysisReport {
        shape: shape_summary(frame),
        bounds: Bounds::new(&bounds, opts.tol),
        bessel_bound: shifted_bessel_bound(&dec),
        decomposition,
        certificates,
        timing: elapsed(start),
    })
}

pub fn analyze(path: &Path, opts: &AnalyzeOptions) -> CliResult<AnalysisReport> {
    let (file, frame) = FrameFile::load(path)?;
    analyze_frame(&frame, file.certificate.as_ref(), opts)
}

/// A constructed family together with the bounds its certificate claims.
pub struct Constructed {
    pub file: FrameFile,
    pub frame: FrameSystem,
    pub claimed: (f64, f64),
}

pub fn profile_from_flags(
    kind: &str,
    xi: f64,
    c: f64,
    r: Option<f64>,
    p: Option<f64>,
) -> CliResult<ScalarProfile> {
    let need = |name: &str, v: Option<f64>| {
        v.ok_or_else(|| CliError::Flags(format!("--kind {kind} needs --{name}")))
    };
    let kind = match kind {
        "constant" => ProfileKind::Constant,
        "gaussian" => ProfileKind::Gaussian,
        "geometric" => ProfileKind::Geometric { r: need("r", r)? },
        "power" => ProfileKind::Power { p: need("p", p)? },
        other => return Err(CliError::Flags(format!("unknown profile kind {other:?}"))),
    };
    let c = if kind == ProfileKind::Constant {
        0.0
    } else {
        c
    };
    ScalarProfile::new(kind, xi, c).map_err(|e| CliError::Flags(e.to_string()))
}

/// Parses `kind:c[:r|p]` with limit 0, e.g. `gaussian:1` or `geometric:1:0.5`.
pub fn parse_vanishing_profile(spec: &str) -> CliResult<ScalarProfile> {
    let bad = || CliError::Flags(format!("profile {spec:?} is not kind:c[:r|p]"));
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> CliResult<Option<f64>> {
        parts
            .get(i)
            .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
            .transpose()
    };
    if parts.len() < 2 || parts.len() > 3 {
        return Err(bad());
    }
    let c = num(1)?.ok_or_else(bad)?;
    let extra = num(2)?;
    if parts.len() == 3 && !matches!(parts[0], "geometric" | "power") {
        return Err(bad());
    }
    profile_from_flags(parts[0], 0.0, c, extra, extra)
}

pub fn construct_profile(
    profile: &ScalarProfile,
    d: usize,
    n: usize,
    truncation: Option<usize>,
) -> CliResult<Constructed> {
    let shape = ModuleShape::new(d, n).map_err(|e| CliError::Flags(e.to_string()))?;
    let truncation = truncation.unwrap_or(n);
    let (frame, _) = profile_frame(profile, shape, truncation)?;
    let cert = Certificate {
        kind: CertificateKind::Profile,
        xi: profile.xi(),
        inverted: false,
        profile: Some(*profile),
        permutation: (1..=truncation).collect(),
        indices: None,
        multiplicities: None,
    };
    let claimed = if truncation < n {
        (0.0, profile.prefix_max(truncation))
    } else {
        (
            profile.prefix_min(truncation),
            profile.prefix_max(truncation),
        )
    };
    Ok(Constructed {
        file: FrameFile::from_frame(&frame, Some(cert)),
        frame,
        claimed,
    })
}

/// `repeats` holds 1-based `(direction, θ)` pairs.
pub fn construct_repetition(
    d: usize,
    n: usize,
    repeats: &[(usize, usize)],
) -> CliResult<Constructed> {
    let shape = ModuleShape::new(d, n).map_err(|e| CliError::Flags(e.to_string()))?;
    let mut map = BTreeMap::new();
    for &(i, theta) in repeats {
        if i == 0 || i > n {
            return Err(CliError::Flags(format!(
                "--repeat index {i} outside 1..={n}"
            )));
        }
        if map.insert(i - 1, theta).is_some() {
            return Err(CliError::Flags(format!("--repeat index {i} given twice")));
        }
    }
    let (frame, _) = repetition_frame(shape, &map)?;
    let cert = Certificate {
        kind: CertificateKind::Repetition,
        xi: 1.0,
        inverted: false,
        profile: None,
        permutation: map
            .iter()
            .filter(|(_, &t)| t > 1)
            .map(|(&i, _)| i + 1)
            .collect(),
        indices: None,
        multiplicities: Some(map.iter().map(|(&i, &t)| [i + 1, t]).collect()),
    };
    let thetas = (0..n).map(|i| *map.get(&i).unwrap_or(&1) as f64);
    let claimed = (
        thetas.clone().fold(f64::INFINITY, f64::min),
        thetas.fold(0.0, f64::max),
    );
    Ok(Constructed {
        file: FrameFile::from_frame(&frame, Some(cert)),
        frame,
        claimed,
    })
}

pub fn parse_repeat(spec: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Flags(format!("--repeat {spec:?} is not index:multiplicity"));
    let (i, t) = spec.split_once(':').ok_or_else(bad)?;
    Ok((
        i.trim().parse().map_err(|_| bad())?,
        t.trim().parse().map_err(|_| bad())?,
    ))
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PartitionFile {
    pub schema: u32,
    pub families: [String; 2],
    /// 1-based family label per vector index.
    pub assignment: Vec<usize>,
    /// 1-based vector indices where the first family carries the basis.
    pub sigma: Vec<usize>,
    pub adversarial_lambda_min: f64,
    pub k_sum_residual: f64,
}

pub struct ScenarioFiles {
    pub f: Constructed,
    pub g: Constructed,
    pub partition: PartitionFile,
}

/// The two-family decaying scenario; `len` counts vectors per family.
pub fn construct_scenario(
    len: usize,
    p1: &ScalarProfile,
    p2: &ScalarProfile,
    d: usize,
    names: [String; 2],
) -> CliResult<ScenarioFiles> {
    let sc = decaying_weave_scenario(len, p1, p2, d)?;
    let n = sc.f.shape().n;
    let cert = |p: &ScalarProfile, first: usize| Certificate {
        kind: CertificateKind::Profile,
        xi: 1.0,
        inverted: false,
        profile: Some(*p),
        permutation: (1..=n).collect(),
        indices: Some((0..n).map(|j| 2 * j + first).collect()),
        multiplicities: None,
    };
    let family = |frame: &FrameSystem, c: Certificate| {
        let b = frame.optimal_bounds(linalg::DEFAULT_TOL);
        Constructed {
            file: FrameFile::from_frame(frame, Some(c)),
            frame: frame.clone(),
            claimed: (b.lower, b.upper),
        }
    };
    let adversarial = sc.adversarial_operator();
    let partition = PartitionFile {
        schema: crate::format::SCHEMA_VERSION,
        families: names,
        assignment: sc.adversarial.assignment().iter().map(|x| x + 1).collect(),
        sigma: sc.sigma.iter().map(|x| x + 1).collect(),
        adversarial_lambda_min: linalg::lambda_min(adversarial.mat()),
        k_sum_residual: adversarial.mat().distance(sc.k_sum().mat()),
    };
    Ok(ScenarioFiles {
        f: family(&sc.f, cert(p1, 2)),
        g: family(&sc.g, cert(p2, 1)),
        partition,
    })
}

pub fn perturb(
    f_path: &Path,
    g_path: &Path,
    xi: f64,
    eta: f64,
    tol: f64,
) -> CliResult<PerturbReport> {
    let start = Instant::now();
    check_tol(tol)?;
    check_finite("xi", xi)?;
    if eta < 0.0 || !eta.is_finite() {
        return Err(CliError::Flags(format!(
            "--eta must be non-negative, got {eta}"
        )));
    }
    let (_, f) = FrameFile::load(f_path)?;
    let (_, g) = FrameFile::load(g_path)?;
    perturb_frames(&f, &g, xi, eta, tol, start)
}

pub fn perturb_frames(
    f: &FrameSystem,
    g: &FrameSystem,
    xi: f64,
    eta: f64,
    tol: f64,
    start: Instant,
) -> CliResult<PerturbReport> {
    let mu = perturbation_distance(f, g)?;
    let dec = shift_decompose(f, xi);
    let prediction = perturbed_bounds(&dec, eta, mu)?;
    let actual = g.optimal_bounds(tol);
    let sandwich = match prediction {
        cstar_frames::decomposition::PerturbedBounds::Applicable { low, high, .. } => {
            if actual.lower >= low - tol && actual.upper <= high + tol {
                Verdict::Pass
            } else {
                Verdict::Fail
            }
        }
        _ => Verdict::NotApplicable,
    };
    Ok(PerturbReport {
        mu,
        xi,
        eta,
        prediction: prediction.into(),
        actual: Bounds::new(&actual, tol),
        sandwich,
        timing: elapsed(start),
    })
}

pub struct WeaveOptions {
    pub max_partitions: u64,
    pub tol: f64,
    pub sweep: Option<Vec<usize>>,
    pub exec: Execution,
}

fn scenario_profiles(files: &[FrameFile]) -> CliResult<(ScalarProfile, ScalarProfile, usize)> {
    let profile = |f: &FrameFile| {
        f.certificate
            .as_ref()
            .filter(|c| c.kind == CertificateKind::Profile && !c.inverted)
            .and_then(|c| c.profile)
    };
    match files {
        [a, b] => match (profile(a), profile(b)) {
            (Some(p1), Some(p2)) => Ok((p1, p2, a.algebra.d)),
            _ => Err(CliError::Flags(
                "--sweep needs two files carrying profile certificates".into(),
            )),
        },
        _ => Err(CliError::Flags("--sweep needs exactly two files".into())),
    }
}

pub fn weave_frames(
    families: &[FrameSystem],
    files: &[FrameFile],
    opts: &WeaveOptions,
    start: Instant,
) -> CliResult<WeaveReport> {
    check_tol(opts.tol)?;
    let sweep = match &opts.sweep {
        None => None,
        Some(sizes) => {
            let (p1, p2, d) = scenario_profiles(files)?;
            let mut rows = Vec::with_capacity(sizes.len());
            for &len in sizes {
                let sc = decaying_weave_scenario(len, &p1, &p2, d)?;
                let r = universal_bounds(&sc.families(), opts.tol, opts.max_partitions, opts.exec)?;
                rows.push(SweepRow {
                    n: len,
                    adversarial_lambda_min: linalg::lambda_min(sc.adversarial_operator().mat()),
                    envelope: sc.decay_envelope(),
                    universal_lower: r.universal_lower,
                    is_woven: r.is_woven,
                    partitions_checked: r.partitions_checked,
                });
            }
            Some(rows)
        }
    };
    let report = universal_bounds(families, opts.tol, opts.max_partitions, opts.exec)?;
    let sweep_decreasing = sweep.as_ref().map(|rows| {
        rows.windows(2)
            .all(|w| w[1].adversarial_lambda_min < w[0].adversarial_lambda_min)
    });
    Ok(WeaveReport {
        families: families.len(),
        vectors: families[0].len(),
        tol: opts.tol,
        universal_lower: report.universal_lower,
        universal_upper: report.universal_upper,
        worst_partition: report
            .worst_partition
            .assignment()
            .iter()
            .map(|x| x + 1)
            .collect(),
        is_woven: report.is_woven,
        partitions_checked: report.partitions_checked,
        sweep,
        sweep_decreasing,
        timing: elapsed(start),
    })
}

pub fn weave(paths: &[PathBuf], opts: &WeaveOptions) -> CliResult<WeaveReport> {
    let start = Instant::now();
    if paths.len() < 2 || paths.len() > cstar_frames::weaving::MAX_FAMILIES {
        return Err(CliError::Flags(format!(
            "weave takes 2 to {} files, got {}",
            cstar_frames::weaving::MAX_FAMILIES,
            paths.len()
        )));
    }
    let mut files = Vec::with_capacity(paths.len());
    let mut frames = Vec::with_capacity(paths.len());
    for p in paths {
        let (file, frame) = FrameFile::load(p)?;
        files.push(file);
        frames.push(frame);
    }
    weave_frames(&frames, &files, opts, start)
}

pub fn dual_file(
    file: &FrameFile,
    frame: &FrameSystem,
    tol: f64,
) -> CliResult<(FrameFile, FrameSystem)> {
    check_tol(tol)?;
    let dual = frame.dual_frame(tol)?;
    Ok((
        FrameFile::from_frame(&dual, file.certificate.as_ref().map(Certificate::dual)),
        dual,
    ))
}

pub fn dual(path: &Path, out: &Path, tol: f64) -> CliResult<DualReport> {
    let start = Instant::now();
    let (file, frame) = FrameFile::load(path)?;
    let (dual_file, dual) = dual_file(&file, &frame, tol)?;
    dual_file.save(out)?;
    Ok(DualReport {
        output: out.display().to_string(),
        original: Bounds::new(&frame.optimal_bounds(tol), tol),
        dual: Bounds::new(&dual.optimal_bounds(tol), tol),
        timing: elapsed(start),
    })
}
