//! Acceptance suite: one PASS/FAIL line per criterion. Every tolerance is
//! pinned below; the process exits non-zero when any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use cstar_frames::constructors::{eigenprofile_operator, profile_frame, repetition_frame};
use cstar_frames::decomposition::{
    dual_decomposition, eh_check, perturbed_bounds, shift_decompose, shifted_bessel_bound,
    shifted_lower_bound, PerturbedBounds, ShiftDecomposition,
};
use cstar_frames::frames::perturbation_distance;
use cstar_frames::linalg::{self, ComplexMatrix};
use cstar_frames::module::{cauchy_schwarz_probe, standard_basis, ModuleOperator};
use cstar_frames::weaving::{decaying_weave_scenario, universal_bounds, DEFAULT_MAX_PARTITIONS};
use cstar_frames::{sample, Execution, FrameSystem, ModuleShape, ModuleVector, ScalarProfile};
use cstar_frames_cli::format::FrameFile;
use rand::Rng;
use serde_json::Value;

const BOUND_TOL: f64 = 1e-9;
const RUNTIME_LIMIT: Duration = Duration::from_secs(1);
const PSD_TOL: f64 = 1e-9;
const EXACT_TOL: f64 = 1e-10;
const SPECTRUM_TOL: f64 = 1e-12;
const WEAVE_IDENTITY_TOL: f64 = 1e-12;
const ORACLE_TOL: f64 = 1e-10;
const PROBE_TOL: f64 = 1e-9;
const WEAVE_BOUND_TOL: f64 = 1e-10;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_shape<R: Rng>(rng: &mut R) -> ModuleShape {
    loop {
        let d = rng.gen_range(1..=3);
        let n = rng.gen_range(1..=4);
        if d * n <= 12 {
            return ModuleShape::new(d, n).unwrap();
        }
    }
}

/// A frame with operator exactly `mat`: blocks of rows of `mat^{1/2}`.
fn frame_with_operator(shape: ModuleShape, mat: &ComplexMatrix) -> FrameSystem {
    let root = linalg::psd_sqrt(mat, 1e-9).unwrap();
    let d = shape.d;
    let vectors = (0..shape.n)
        .map(|i| ModuleVector::new(shape, root.block(i * d, 0, d, shape.rep_cols())).unwrap())
        .collect();
    FrameSystem::new(shape, vectors).unwrap()
}

fn onb(d: usize, n: usize) -> FrameSystem {
    let shape = ModuleShape::new(d, n).unwrap();
    FrameSystem::new(shape, standard_basis(shape)).unwrap()
}

fn gaussian_example() -> (FrameSystem, cstar_frames::constructors::CompactTightCert) {
    let p = ScalarProfile::gaussian(1.0, 1.0).unwrap();
    profile_frame(&p, ModuleShape::new(1, 8).unwrap(), 8).unwrap()
}

fn repetition_example(d: usize) -> (FrameSystem, cstar_frames::constructors::CompactTightCert) {
    // 1-based {1:3, 4:2}
    let reps = BTreeMap::from([(0, 3), (3, 2)]);
    repetition_frame(ModuleShape::new(d, 5).unwrap(), &reps).unwrap()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (frame, _) = gaussian_example();
    let b = frame.optimal_bounds(BOUND_TOL);
    let elapsed = start.elapsed();
    let expected_lower = 1.0 + (-32.0f64).exp();
    let detail = format!(
        "lower={} upper={} (expected {} and 2), {:.2?}",
        b.lower, b.upper, expected_lower, elapsed
    );
    ensure((b.lower - expected_lower).abs() <= BOUND_TOL, || {
        format!("lower off: {detail}")
    })?;
    ensure(elapsed < RUNTIME_LIMIT, || format!("too slow: {detail}"))?;
    ensure((b.upper - 2.0).abs() <= BOUND_TOL, || {
        format!("upper off by {:e}: {detail}", b.upper - 2.0)
    })?;
    Ok(detail)
}

fn criterion_2() -> Outcome {
    let mut rng = sample::rng(2002);
    let mut worst = f64::INFINITY;
    for i in 0..200 {
        let shape = random_shape(&mut rng);
        let g = sample::matrix(&mut rng, shape.rep_cols(), shape.rep_cols());
        let t = ModuleOperator::new(shape, g.gram()).unwrap();
        let xi = 2.0 - rng.gen_range(0.0..2.0);
        let s = ShiftDecomposition::from_parts(t, xi).reconstruct();
        let margin = linalg::lambda_min(s.mat()) - xi;
        worst = worst.min(margin);
        ensure(margin >= -PSD_TOL, || {
            format!("instance {i}: λ_min − ξ = {margin:e}")
        })?;
    }
    Ok(format!("200 instances, min(λ_min(T + ξI) − ξ) = {worst:e}"))
}

fn criterion_3() -> Outcome {
    let mut rng = sample::rng(3003);
    let mut checked = 0;
    while checked < 100 {
        let shape = random_shape(&mut rng);
        let count = shape.n + rng.gen_range(0..=3);
        let frame = sample::frame(&mut rng, shape, count);
        let a = frame.optimal_bounds(PSD_TOL).lower;
        if a <= PSD_TOL {
            continue;
        }
        for xi in [a, a * rng.gen_range(0.0..1.0), -rng.gen_range(0.0..2.0)] {
            let t = frame.frame_operator().add_scalar(-xi);
            let psd = linalg::psd_check(t.mat(), PSD_TOL).map_err(|e| e.to_string())?;
            ensure(psd, || {
                format!("frame {checked}: S − {xi}·I not PSD (A = {a})")
            })?;
        }
        checked += 1;
    }
    Ok("100 frames × 3 shifts ξ ≤ A (including ξ = A)".into())
}

fn criterion_4() -> Outcome {
    let mut rng = sample::rng(4004);
    for i in 0..100 {
        let shape = random_shape(&mut rng);
        let alpha = rng.gen_range(0.05..3.0);
        let xi = rng.gen_range(-alpha * 0.9..2.0);
        let t = ModuleOperator::scalar(shape, alpha);
        let eh = eh_check(&t, alpha, 0.0).map_err(|e| e.to_string())?;
        ensure(eh.holds, || format!("instance {i}: eh fails at η = 0"))?;
        let s = t.add_scalar(xi);
        let frame = frame_with_operator(shape, s.mat());
        let dec = shift_decompose(&frame, xi);
        let l = shifted_lower_bound(&dec, 0.0).value;
        let bessel = shifted_bessel_bound(&dec);
        let b = frame.optimal_bounds(BOUND_TOL);
        ensure(l <= b.lower + BOUND_TOL, || {
            format!("instance {i}: L = {l} > λ_min = {}", b.lower)
        })?;
        ensure(b.upper <= bessel + BOUND_TOL, || {
            format!("instance {i}: λ_max = {} > {bessel}", b.upper)
        })?;
    }
    Ok("100 instances: L ≤ λ_min(S) and λ_max(S) ≤ ‖T‖ + |ξ|".into())
}

fn criterion_5() -> Outcome {
    let f = onb(1, 4);
    let mut lines = Vec::new();
    for eps in [0.01, 0.1, 0.3] {
        let mut vectors = f.vectors().to_vec();
        vectors[0] = vectors[0].scale(1.0 + eps);
        let g = FrameSystem::new(f.shape(), vectors).unwrap();
        let mu = perturbation_distance(&f, &g).map_err(|e| e.to_string())?;
        ensure((mu - eps).abs() <= EXACT_TOL, || {
            format!("ε = {eps}: μ = {mu}")
        })?;
        let pred =
            perturbed_bounds(&shift_decompose(&f, 0.0), 0.0, mu).map_err(|e| e.to_string())?;
        let PerturbedBounds::Applicable { low, high, .. } = pred else {
            return Err(format!("ε = {eps}: prediction not applicable"));
        };
        let (lo, hi) = ((1.0 - eps).powi(2), (1.0 + eps).powi(2));
        ensure(
            (low - lo).abs() <= EXACT_TOL && (high - hi).abs() <= EXACT_TOL,
            || format!("ε = {eps}: predicted [{low}, {high}]"),
        )?;
        let b = g.optimal_bounds(BOUND_TOL);
        ensure(
            b.lower >= lo - BOUND_TOL && b.upper <= hi + BOUND_TOL,
            || {
                format!(
                    "ε = {eps}: actual [{}, {}] outside [{lo}, {hi}]",
                    b.lower, b.upper
                )
            },
        )?;
        lines.push(format!("ε={eps}: [{}, {}]", b.lower, b.upper));
    }
    Ok(lines.join("; "))
}

fn criterion_6() -> Outcome {
    let mut rng = sample::rng(6006);
    let mut count = 0;
    let mut worst: f64 = 0.0;
    while count < 50 {
        let shape = random_shape(&mut rng);
        let alphas: Vec<f64> = (0..shape.n).map(|_| rng.gen_range(-1.0..3.0)).collect();
        let xi = 2.0 - rng.gen_range(0.0..2.0);
        let min = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
        if min + xi <= 0.0 {
            continue;
        }
        let s = eigenprofile_operator(&alphas, shape)
            .unwrap()
            .add_scalar(xi);
        let op_err = (linalg::lambda_min(s.mat()) - (min + xi)).abs();
        let basis = standard_basis(shape);
        let vectors = basis
            .iter()
            .zip(&alphas)
            .map(|(e, a)| e.scale((a + xi).sqrt()))
            .collect();
        let frame = FrameSystem::new(shape, vectors).unwrap();
        let frame_err = (frame.optimal_bounds(BOUND_TOL).lower - (min + xi)).abs();
        worst = worst.max(op_err).max(frame_err);
        ensure(op_err <= EXACT_TOL && frame_err <= EXACT_TOL, || {
            format!("profile {count}: errors {op_err:e}, {frame_err:e}")
        })?;
        count += 1;
    }
    Ok(format!(
        "50 profiles, worst |λ_min − (min α + ξ)| = {worst:e}"
    ))
}

fn criterion_7() -> Outcome {
    for d in [1, 2] {
        let (frame, cert) = repetition_example(d);
        let spec = linalg::hermitian_spectrum(frame.frame_operator().mat());
        let mut expected: Vec<f64> = [3.0, 2.0, 1.0, 1.0, 1.0]
            .iter()
            .flat_map(|&x| std::iter::repeat_n(x, d))
            .collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in spec.iter().zip(&expected) {
            ensure((a - b).abs() <= SPECTRUM_TOL, || {
                format!("d = {d}: spectrum {spec:?}")
            })?;
        }
        let rank = cert.k_rank(SPECTRUM_TOL);
        ensure(rank == 2 * d, || format!("d = {d}: K rank {rank}"))?;
    }
    Ok("spectrum {3, 2, 1, 1, 1} and rank K = 2d for d = 1, 2".into())
}

fn criterion_8() -> Outcome {
    let mut rng = sample::rng(8008);
    let mut worst: f64 = 0.0;
    let cases = [
        ("gaussian", gaussian_example()),
        ("repetition", repetition_example(2)),
    ];
    for (name, (frame, cert)) in cases {
        let dd = dual_decomposition(cert.xi, &cert.k, frame.frame_operator(), BOUND_TOL)
            .map_err(|e| format!("{name}: {e}"))?;
        ensure(
            dd.identity_residual <= BOUND_TOL && dd.product_residual <= BOUND_TOL,
            || {
                format!(
                    "{name}: residuals {:e}, {:e}",
                    dd.identity_residual, dd.product_residual
                )
            },
        )?;
        let dual = frame.dual_frame(BOUND_TOL).map_err(|e| e.to_string())?;
        for _ in 0..50 {
            let f = sample::module_vector(&mut rng, frame.shape());
            let coeffs = dual.analysis(&f).map_err(|e| e.to_string())?;
            let back = frame.synthesis(&coeffs).map_err(|e| e.to_string())?;
            let err = back.rep().distance(f.rep());
            worst = worst.max(err);
            ensure(err <= BOUND_TOL, || {
                format!("{name}: reconstruction error {err:e}")
            })?;
        }
    }
    Ok(format!(
        "identities hold; worst reconstruction error {worst:e}"
    ))
}

fn criterion_9() -> Outcome {
    let p = ScalarProfile::gaussian(0.0, 1.0).unwrap();
    let mut prev = f64::INFINITY;
    let mut table = Vec::new();
    for len in [4, 8, 12] {
        let sc = decaying_weave_scenario(len, &p, &p, 1).map_err(|e| e.to_string())?;
        let adv = sc.adversarial_operator();
        let gap = adv.mat().distance(sc.k_sum().mat());
        ensure(gap <= WEAVE_IDENTITY_TOL, || {
            format!("N = {len}: ‖S_adv − (K₁ + K₂)‖ = {gap:e}")
        })?;
        let lmin = linalg::lambda_min(adv.mat());
        ensure(lmin < prev, || {
            format!("N = {len}: λ_min {lmin} not below {prev}")
        })?;
        let env = sc.decay_envelope();
        ensure(lmin <= env, || {
            format!("N = {len}: λ_min {lmin} above envelope {env}")
        })?;
        for (name, fam) in [("F", &sc.f), ("G", &sc.g)] {
            let l = linalg::lambda_min(fam.frame_operator().mat());
            ensure(l >= 1.0 - BOUND_TOL, || {
                format!("N = {len}: λ_min({name}) = {l}")
            })?;
        }
        table.push(format!("N={len}: {lmin:e}"));
        prev = lmin;
    }
    Ok(format!("adversarial λ_min {}", table.join(", ")))
}

fn criterion_10() -> Outcome {
    let mut rng = sample::rng(1010);
    let mut worst: f64 = 0.0;
    let mut corpus: Vec<ComplexMatrix> = vec![
        ComplexMatrix::identity(2),
        ComplexMatrix::from_real(2, 2, &[2.0, 1.0, 1.0, 2.0]).unwrap(),
    ];
    while corpus.len() < 20 {
        corpus.push(sample::hermitian(&mut rng, 2));
    }
    corpus.push(
        ComplexMatrix::from_real(3, 3, &[2.0, -1.0, 0.0, -1.0, 2.0, -1.0, 0.0, -1.0, 2.0]).unwrap(),
    );
    while corpus.len() < 30 {
        corpus.push(sample::hermitian(&mut rng, 3));
    }
    for (i, m) in corpus.iter().enumerate() {
        let got = linalg::hermitian_eigen(m)
            .map_err(|e| e.to_string())?
            .eigenvalues;
        let want: Vec<f64> = if m.rows() == 2 {
            common::roots_2x2(m).to_vec()
        } else {
            common::roots_3x3(m).to_vec()
        };
        for (a, b) in got.iter().zip(&want) {
            worst = worst.max((a - b).abs());
            ensure((a - b).abs() <= ORACLE_TOL, || {
                format!("matrix {i}: {got:?} vs {want:?}")
            })?;
        }
    }
    let mut probe_worst = f64::NEG_INFINITY;
    for i in 0..100 {
        let shape = random_shape(&mut rng);
        let t = ModuleOperator::new(
            shape,
            sample::matrix(&mut rng, shape.rep_cols(), shape.rep_cols()),
        )
        .unwrap();
        let out = cauchy_schwarz_probe(&t, 100, 10_000 + i, Execution::Parallel);
        probe_worst = probe_worst.max(out.worst);
    }
    ensure(probe_worst <= PROBE_TOL, || {
        format!("probe violation {probe_worst:e}")
    })?;
    Ok(format!(
        "oracle error {worst:e}; probe worst {probe_worst:e}"
    ))
}

fn criterion_11() -> Outcome {
    let f = onb(1, 3);
    let g = f.scaled(2f64.sqrt());
    let fams = [f, g];
    let reference = universal_bounds(
        &fams,
        BOUND_TOL,
        DEFAULT_MAX_PARTITIONS,
        Execution::Sequential,
    )
    .map_err(|e| e.to_string())?;
    ensure(reference.partitions_checked == 8, || {
        format!("{} partitions", reference.partitions_checked)
    })?;
    ensure(
        (reference.universal_lower - 1.0).abs() <= WEAVE_BOUND_TOL
            && (reference.universal_upper - 2.0).abs() <= WEAVE_BOUND_TOL,
        || {
            format!(
                "bounds ({}, {})",
                reference.universal_lower, reference.universal_upper
            )
        },
    )?;
    for n in [1, 2, 8] {
        let r = universal_bounds(
            &fams,
            BOUND_TOL,
            DEFAULT_MAX_PARTITIONS,
            Execution::Threads(n),
        )
        .map_err(|e| e.to_string())?;
        ensure(r == reference, || format!("{n} threads differ: {r:?}"))?;
    }
    Ok(format!(
        "bounds ({}, {}) over 8 partitions, identical on 1/2/8 threads",
        reference.universal_lower, reference.universal_upper
    ))
}

/// Runs the command-line front end in-process.
fn cli(args: &[&str]) -> Result<String, String> {
    cstar_frames_cli::run(std::iter::once("cstar-frames").chain(args.iter().copied()))
        .map_err(|e| format!("{args:?}: {e} (exit {})", e.exit_code()))
}

fn round_trip(path: &Path, in_memory: &FrameSystem) -> Result<(), String> {
    let name = path.display().to_string();
    let (file, parsed) = FrameFile::load(path).map_err(|e| e.to_string())?;
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    ensure(file.to_json() == text, || {
        format!("{name}: serialization not stable")
    })?;
    for (a, b) in in_memory.vectors().iter().zip(parsed.vectors()) {
        let same = a
            .rep()
            .as_slice()
            .iter()
            .zip(b.rep().as_slice())
            .all(|(x, y)| x.re.to_bits() == y.re.to_bits() && x.im.to_bits() == y.im.to_bits());
        ensure(same, || format!("{name}: vectors changed"))?;
    }
    let report: Value = serde_json::from_str(&cli(&["analyze", &name, "--format", "json"])?)
        .map_err(|e| e.to_string())?;
    let b = in_memory.optimal_bounds(BOUND_TOL);
    for (key, want) in [("lower", b.lower), ("upper", b.upper)] {
        let got = report["bounds"][key].as_f64().ok_or("missing bound")?;
        ensure(got.to_bits() == want.to_bits(), || {
            format!("{name}: {key} {got} vs {want}")
        })?;
    }
    Ok(())
}

fn criterion_12() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let path = |s: &str| dir.path().join(s);
    let mut files = 0;

    let g = path("gaussian.json");
    cli(&[
        "construct",
        "profile",
        "--kind",
        "gaussian",
        "--xi",
        "1",
        "--c",
        "1",
        "--n",
        "8",
        "--out",
        g.to_str().unwrap(),
    ])?;
    round_trip(&g, &gaussian_example().0)?;
    files += 1;

    let r = path("repetition.json");
    cli(&[
        "construct",
        "repetition",
        "--n",
        "5",
        "--repeat",
        "1:3",
        "--repeat",
        "4:2",
        "--out",
        r.to_str().unwrap(),
    ])?;
    round_trip(&r, &repetition_example(1).0)?;
    files += 1;

    let p = ScalarProfile::gaussian(0.0, 1.0).unwrap();
    for len in [4, 8, 12] {
        let prefix = path(&format!("sc{len}"));
        let n = len.to_string();
        cli(&[
            "construct",
            "scenario",
            "--n",
            &n,
            "--out",
            prefix.to_str().unwrap(),
        ])?;
        let sc = decaying_weave_scenario(len, &p, &p, 1).map_err(|e| e.to_string())?;
        round_trip(&path(&format!("sc{len}.f.json")), &sc.f)?;
        round_trip(&path(&format!("sc{len}.g.json")), &sc.g)?;
        files += 2;
    }
    Ok(format!(
        "{files} files reproduce in-memory bounds bit-for-bit"
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "gaussian profile frame, N = 8: bounds (1 + e^-32, 2)",
            criterion_1,
        ),
        ("T + ξI ⪰ ξ for PSD T, ξ > 0", criterion_2),
        ("S − ξI ⪰ 0 for ξ ≤ A", criterion_3),
        (
            "L ≤ λ_min(S), λ_max(S) ≤ ‖T‖ + |ξ| under eh at η = 0",
            criterion_4,
        ),
        ("perturbation sandwich for scaled ONB vector", criterion_5),
        ("λ_min(T + ξI) = min α + ξ for eigen-profiles", criterion_6),
        ("repetition frame spectrum and K rank", criterion_7),
        (
            "dual decomposition identities and reconstruction",
            criterion_8,
        ),
        ("decaying weaving scenario at N = 4, 8, 12", criterion_9),
        (
            "eigensolver vs characteristic roots; Cauchy-Schwarz probe",
            criterion_10,
        ),
        (
            "exhaustive weaving ONB vs √2·ONB, thread-independent",
            criterion_11,
        ),
        (
            "CLI construct/serialize/parse/analyze round-trip",
            criterion_12,
        ),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(format!(
                "panicked: {:?}",
                e.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(e.downcast_ref::<&str>().copied())
            ))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
