//! Writing a frame operator as `S = T + ξI` and the bounds that follow.
//!
//! The sampling-free checks here reduce each "for all f" statement to one
//! spectral test on the representing matrix; see the module-level notes in
//! [`crate::module`] for why PSD-ness of the matrix is the right criterion.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::frames::FrameSystem;
use crate::linalg::{self, ComplexMatrix};
use crate::module::{inner_product, module_norm, ModuleOperator, ModuleShape, ModuleVector};
use crate::sample;

/// Tolerance on the Hermitian defect of `T` accepted as self-adjoint.
pub const SELF_ADJOINT_TOL: f64 = 1e-10;

/// Slack below which an (eh) witness is still accepted as PSD.
pub const EH_TOL: f64 = 1e-9;

/// `S = T + ξI` with `T = S − ξI`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftDecomposition {
    xi: f64,
    t: ModuleOperator,
    source: ModuleOperator,
}

impl ShiftDecomposition {
    pub fn new(source: &ModuleOperator, xi: f64) -> Self {
        Self {
            xi,
            t: source.add_scalar(-xi),
            source: source.clone(),
        }
    }

    /// Decomposition of an operator given directly as `T` and `ξ`.
    pub fn from_parts(t: ModuleOperator, xi: f64) -> Self {
        let source = t.add_scalar(xi);
        Self { xi, t, source }
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn t(&self) -> &ModuleOperator {
        &self.t
    }

    pub fn source(&self) -> &ModuleOperator {
        &self.source
    }

    /// `T + ξI`.
    pub fn reconstruct(&self) -> ModuleOperator {
        self.t.add_scalar(self.xi)
    }
}

pub fn shift_decompose(frame: &FrameSystem, xi: f64) -> ShiftDecomposition {
    ShiftDecomposition::new(frame.frame_operator(), xi)
}

/// One claim of the three-part shift proposition.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartCheck {
    /// Whether the claim's hypothesis is met.
    pub applicable: bool,
    /// Conclusion verified (vacuously true when not applicable).
    pub holds: bool,
    /// Margin of the conclusion; negative means violated.
    pub slack: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub xi: f64,
    pub lower: f64,
    pub upper: f64,
    pub bessel_bound: f64,
    pub t_lambda_min: f64,
    /// `T ⪰ 0` and `ξ > 0` imply `A ≥ ξ` and `B ≤ ‖T‖ + |ξ|`.
    pub part1: PartCheck,
    /// `T` is self-adjoint and bounded.
    pub part2: PartCheck,
    /// A frame with lower bound `A ≥ ξ` has `T ⪰ 0`.
    pub part3: PartCheck,
}

impl ShiftReport {
    pub fn all_hold(&self) -> bool {
        self.part1.holds && self.part2.holds && self.part3.holds
    }
}

/// Verifies the three claims about `S = T + ξI` on `frame`.
pub fn check_shift(frame: &FrameSystem, xi: f64, tol: f64) -> ShiftReport {
    let dec = shift_decompose(frame, xi);
    let bounds = frame.optimal_bounds(tol);
    let t_mat = dec.t().mat();
    let t_lambda_min = linalg::lambda_min(t_mat);
    let bessel_bound = shifted_bessel_bound(&dec);
    let t_positive = t_lambda_min >= -tol;

    let applicable = t_positive && xi > 0.0;
    let slack = (bounds.lower - xi).min(bessel_bound - bounds.upper);
    let part1 = PartCheck {
        applicable,
        holds: !applicable || slack >= -tol,
        slack,
    };

    let defect = t_mat.hermitian_defect();
    let norm = dec.t().norm();
    let part2 = PartCheck {
        applicable: true,
        holds: defect <= SELF_ADJOINT_TOL * t_mat.frobenius_norm().max(1.0) && norm.is_finite(),
        slack: -defect,
    };

    let applicable = bounds.is_frame && bounds.lower >= xi - tol;
    let part3 = PartCheck {
        applicable,
        holds: !applicable || t_positive,
        slack: t_lambda_min,
    };

    ShiftReport {
        xi,
        lower: bounds.lower,
        upper: bounds.upper,
        bessel_bound,
        t_lambda_min,
        part1,
        part2,
        part3,
    }
}

/// Verdict on `‖αf − Tf‖ ≤ sqrt(η²/(1+η²))·‖Tf‖` for all `f`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EhCertificate {
    pub alpha: f64,
    pub eta: f64,
    pub holds: bool,
    /// `λ_min` of the witness `c²·M·M* − (αI − M)(αI − M)*`.
    pub slack: f64,
}

/// Decides the (eh) inequality with one PSD test.
///
/// With `c = η/√(1+η²)` and `M = mat(T)`, the inequality holds for every `f`
/// iff `c²·M·M* − (αI − M)(αI − M)* ⪰ 0`: congruence by `rep(f)` gives
/// sufficiency, rank-one rows give necessity.
pub fn eh_check(t: &ModuleOperator, alpha: f64, eta: f64) -> Result<EhCertificate> {
    if eta < 0.0 || eta.is_nan() {
        return Err(Error::NegativeEta(eta));
    }
    let c_sq = eta * eta / (1.0 + eta * eta);
    let m = t.mat();
    let shifted = (-m).add_diagonal(alpha);
    let witness = &m.outer_gram().scale(c_sq) - &shifted.outer_gram();
    let slack = linalg::lambda_min(&witness);
    Ok(EhCertificate {
        alpha,
        eta,
        holds: slack >= -EH_TOL,
        slack,
    })
}

/// Evaluates [`eh_check`] over a grid of `(α, η)`. No optimality claim.
pub fn eh_grid_probe(
    t: &ModuleOperator,
    alphas: &[f64],
    etas: &[f64],
) -> Result<Vec<EhCertificate>> {
    let mut out = Vec::with_capacity(alphas.len() * etas.len());
    for &alpha in alphas {
        for &eta in etas {
            out.push(eh_check(t, alpha, eta)?);
        }
    }
    Ok(out)
}

/// Relative slack granted to both sides of [`ordering_predicates`], so that
/// equality cases survive rounding.
pub const PREDICATE_RTOL: f64 = 1e-12;

/// The two sides of the angle-type hypothesis relating `f` and `g`:
/// `‖f‖‖g‖ ≤ √(1+η²)‖⟨f,g⟩‖` and `‖αf − g‖ ≤ sqrt(η²/(1+η²))‖g‖`.
///
/// They are evaluated independently; no equivalence is assumed.
pub fn ordering_predicates(
    f: &ModuleVector,
    g: &ModuleVector,
    alpha: f64,
    eta: f64,
) -> Result<(bool, bool)> {
    let ip = inner_product(f, g)?;
    let nf = module_norm(f);
    let ng = module_norm(g);
    let slack = PREDICATE_RTOL * (nf * ng).max(f64::MIN_POSITIVE);
    let lhs = nf * ng <= (1.0 + eta * eta).sqrt() * linalg::operator_norm(&ip) + slack;
    let diff = f.scale(alpha).sub(g)?;
    let rhs =
        module_norm(&diff) <= (eta * eta / (1.0 + eta * eta)).sqrt() * ng + PREDICATE_RTOL * ng;
    Ok((lhs, rhs))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AgreementTally {
    pub evaluated: u64,
    pub both_true: u64,
    pub both_false: u64,
    pub lhs_only: u64,
    pub rhs_only: u64,
}

impl AgreementTally {
    pub fn rate(&self) -> f64 {
        if self.evaluated == 0 {
            return f64::NAN;
        }
        (self.both_true + self.both_false) as f64 / self.evaluated as f64
    }

    fn merge(self, o: Self) -> Self {
        Self {
            evaluated: self.evaluated + o.evaluated,
            both_true: self.both_true + o.both_true,
            both_false: self.both_false + o.both_false,
            lhs_only: self.lhs_only + o.lhs_only,
            rhs_only: self.rhs_only + o.rhs_only,
        }
    }
}

/// Empirical agreement of the two [`ordering_predicates`] over seeded pairs
/// `g = s·f + t·noise` with `s ∈ [−2, 2]`, `t ∈ [0, 1]`, across the
/// `(α, η)` grid.
pub fn ordering_agreement_probe(
    shape: ModuleShape,
    alphas: &[f64],
    etas: &[f64],
    samples: usize,
    seed: u64,
    exec: Execution,
) -> AgreementTally {
    use rand::Rng;
    exec.map_reduce(
        0..samples as u64,
        AgreementTally::default(),
        |i| {
            let mut rng = sample::stream(seed, i);
            let f = sample::module_vector(&mut rng, shape);
            let noise = sample::module_vector(&mut rng, shape);
            let s: f64 = rng.gen_range(-2.0..=2.0);
            let t: f64 = rng.gen_range(0.0..=1.0);
            let g = f.scale(s).add(&noise.scale(t)).expect("same shape");
            let mut tally = AgreementTally::default();
            for &alpha in alphas {
                for &eta in etas {
                    let (l, r) = ordering_predicates(&f, &g, alpha, eta).expect("same shape");
                    tally.evaluated += 1;
                    match (l, r) {
                        (true, true) => tally.both_true += 1,
                        (false, false) => tally.both_false += 1,
                        (true, false) => tally.lhs_only += 1,
                        (false, true) => tally.rhs_only += 1,
                    }
                }
            }
            tally
        },
        AgreementTally::merge,
    )
}

/// Bessel bound `‖T‖ + |ξ|`.
pub fn shifted_bessel_bound(dec: &ShiftDecomposition) -> f64 {
    dec.t().norm() + dec.xi().abs()
}

/// Predicted frame lower bound `L = ρ/√(1+η²) − |ξ|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LowerBoundPrediction {
    pub rho: f64,
    pub eta: f64,
    pub value: f64,
    /// `mat(T) ⪰ 0`.
    pub t_positive: bool,
    /// `T` has negative spectrum, so `σ_min` measures `‖Tf‖ ≥ ρ‖f‖` but not
    /// lower-boundedness in the order sense; the value is formula-only.
    pub formula_only: bool,
}

impl LowerBoundPrediction {
    /// `L > 0`, so the family is predicted to be a frame.
    pub fn predicts_frame(&self) -> bool {
        self.value > 0.0
    }
}

/// Lower bound with the optimal `ρ = σ_min(mat(T))`.
pub fn shifted_lower_bound(dec: &ShiftDecomposition, eta: f64) -> LowerBoundPrediction {
    let rho = linalg::sigma_min(dec.t().mat());
    lower_bound_with(dec, eta, rho)
}

/// Lower bound with a caller-supplied `ρ ≤ σ_min(mat(T))`.
pub fn shifted_lower_bound_with_rho(
    dec: &ShiftDecomposition,
    eta: f64,
    rho: f64,
) -> Result<LowerBoundPrediction> {
    let sigma_min = linalg::sigma_min(dec.t().mat());
    if rho > sigma_min + 1e-12 * sigma_min.max(1.0) {
        return Err(Error::RhoTooLarge { rho, sigma_min });
    }
    Ok(lower_bound_with(dec, eta, rho))
}

fn lower_bound_with(dec: &ShiftDecomposition, eta: f64, rho: f64) -> LowerBoundPrediction {
    let t_positive = linalg::lambda_min(dec.t().mat()) >= -linalg::DEFAULT_TOL;
    LowerBoundPrediction {
        rho,
        eta,
        value: rho / (1.0 + eta * eta).sqrt() - dec.xi().abs(),
        t_positive,
        formula_only: !t_positive,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PerturbedBounds {
    Applicable {
        mu: f64,
        /// `(√L − μ)²`.
        low: f64,
        /// `(μ + √(‖T‖ + |ξ|))²`.
        high: f64,
        /// `(L − μ)²`, an alternative form of the lower estimate;
        /// reported for comparison only.
        low_alt: f64,
        lower: LowerBoundPrediction,
    },
    NotApplicable {
        mu: f64,
        /// `√max(L, 0)`; the prediction needs `μ` strictly below it.
        threshold: f64,
    },
}

/// Frame bounds predicted for any `μ`-perturbation of the decomposed frame.
pub fn perturbed_bounds(dec: &ShiftDecomposition, eta: f64, mu: f64) -> Result<PerturbedBounds> {
    if mu < 0.0 || mu.is_nan() {
        return Err(Error::NegativeMu(mu));
    }
    let lower = shifted_lower_bound(dec, eta);
    let threshold = lower.value.max(0.0).sqrt();
    if mu >= threshold {
        return Ok(PerturbedBounds::NotApplicable { mu, threshold });
    }
    let bessel = shifted_bessel_bound(dec);
    Ok(PerturbedBounds::Applicable {
        mu,
        low: (threshold - mu).powi(2),
        high: (mu + bessel.sqrt()).powi(2),
        low_alt: (lower.value - mu).powi(2),
        lower,
    })
}

/// `S⁻¹ = T + ξ⁻¹I` for a compact-tight `S = K + ξI`, with `T·S = −ξ⁻¹K`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualDecomposition {
    pub xi_inv: f64,
    pub t: ModuleOperator,
    pub s_inv: ModuleOperator,
    /// `‖(T + ξ⁻¹I)·S − I‖_F`.
    pub identity_residual: f64,
    /// `‖S⁻¹ − ξ⁻¹I − T‖_F`.
    pub inverse_residual: f64,
    /// `‖T·S + ξ⁻¹K‖_F`.
    pub product_residual: f64,
}

/// Builds `T = −ξ⁻¹·K·S⁻¹` and measures the identities it must satisfy.
pub fn dual_decomposition(
    xi: f64,
    k: &ModuleOperator,
    s: &ModuleOperator,
    tol: f64,
) -> Result<DualDecomposition> {
    if xi == 0.0 {
        return Err(Error::XiZero);
    }
    if k.shape() != s.shape() {
        return Err(Error::ShapeMismatch {
            left: k.shape(),
            right: s.shape(),
        });
    }
    let s_mat = s.mat();
    let residual = s_mat.distance(&k.mat().add_diagonal(xi));
    if residual > 1e-10 * s_mat.frobenius_norm().max(1.0) {
        return Err(Error::InconsistentDecomposition { residual });
    }
    let lambda_min = linalg::lambda_min(s_mat);
    if lambda_min <= tol {
        return Err(Error::SingularS { lambda_min });
    }
    let s_inv_mat = linalg::hermitian_inverse(s_mat, tol)?;
    let xi_inv = 1.0 / xi;
    let t_mat = (k.mat() * &s_inv_mat).scale(-xi_inv);

    let n = s_mat.rows();
    let id = ComplexMatrix::identity(n);
    let identity_residual = (&t_mat.add_diagonal(xi_inv) * s_mat).distance(&id);
    let inverse_residual = s_inv_mat.add_diagonal(-xi_inv).distance(&t_mat);
    let product_residual = (&t_mat * s_mat).distance(&k.mat().scale(-xi_inv));

    let shape = s.shape();
    Ok(DualDecomposition {
        xi_inv,
        t: ModuleOperator::new(shape, t_mat)?,
        s_inv: ModuleOperator::new(shape, s_inv_mat)?,
        identity_residual,
        inverse_residual,
        product_residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::standard_basis;

    fn shape(d: usize, n: usize) -> ModuleShape {
        ModuleShape::new(d, n).unwrap()
    }

    fn doubled_first() -> FrameSystem {
        let s = shape(1, 2);
        let e = standard_basis(s);
        FrameSystem::new(s, vec![e[0].clone(), e[0].clone(), e[1].clone()]).unwrap()
    }

    fn diag1(values: &[f64]) -> ModuleOperator {
        ModuleOperator::block_diagonal(shape(1, values.len()), values).unwrap()
    }

    #[test]
    fn shift_examples() {
        let s = shape(2, 2);
        let onb = FrameSystem::new(s, standard_basis(s)).unwrap();
        assert_eq!(shift_decompose(&onb, 1.0).t(), &ModuleOperator::zero(s));

        let f = doubled_first();
        let dec = shift_decompose(&f, 1.0);
        assert_eq!(dec.t(), &diag1(&[1.0, 0.0]));
        assert!(crate::module::operator_positive(dec.t(), 1e-9));
        assert_eq!(dec.reconstruct(), *f.frame_operator());

        let dec = shift_decompose(&f, 1.5);
        assert_eq!(dec.t(), &diag1(&[0.5, -0.5]));
        assert!(!crate::module::operator_positive(dec.t(), 1e-9));
    }

    #[test]
    fn shift_check_on_basis_and_boundary() {
        let s = shape(1, 3);
        let onb = FrameSystem::new(s, standard_basis(s)).unwrap();
        let r = check_shift(&onb, 1.0, 1e-9);
        assert!(r.part1.applicable && r.part2.applicable && r.part3.applicable);
        assert!(r.all_hold());

        let r = check_shift(&doubled_first(), 1.0, 1e-9);
        assert!(r.part3.applicable && r.part3.holds);
        assert!(r.t_lambda_min.abs() < 1e-12);

        // ξ above A: part 3 not applicable, T indefinite
        let r = check_shift(&doubled_first(), 1.5, 1e-9);
        assert!(!r.part3.applicable && !r.part1.applicable);
        assert!(r.all_hold());
    }

    #[test]
    fn eh_examples() {
        let id = ModuleOperator::identity(shape(1, 2));
        let c = eh_check(&id, 1.0, 0.0).unwrap();
        assert!(c.holds && c.slack.abs() < 1e-15);
        let c = eh_check(&id, 2.0, 1.0).unwrap();
        assert!(!c.holds);
        assert!((c.slack + 0.5).abs() < 1e-14);
        let c = eh_check(&diag1(&[1.0, 2.0]), 1.5, 1.0).unwrap();
        assert!(c.holds);
        assert!((c.slack - 0.25).abs() < 1e-14);
        assert_eq!(eh_check(&id, 1.0, -0.1), Err(Error::NegativeEta(-0.1)));
    }

    #[test]
    fn eh_matches_scalar_inequality_for_diagonal() {
        let values = [-1.5, -0.3, 0.0, 0.4, 1.0, 2.5];
        let grid = [-1.0, 0.0, 0.5, 1.0, 2.0];
        for &a in &values {
            for &b in &values {
                let t = diag1(&[a, b]);
                for &alpha in &grid {
                    for &eta in &[0.0, 0.5, 1.0, 3.0] {
                        let c = eta / f64::sqrt(1.0 + eta * eta);
                        let scalar = [a, b]
                            .iter()
                            .all(|&x: &f64| (alpha - x).abs() <= c * x.abs() + 1e-12);
                        assert_eq!(
                            eh_check(&t, alpha, eta).unwrap().holds,
                            scalar,
                            "t=({a},{b}) α={alpha} η={eta}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn ordering_examples() {
        let s = shape(1, 2);
        let f = sample::module_vector(&mut sample::rng(5), s);
        for eta in [0.0, 0.5, 2.0] {
            assert_eq!(ordering_predicates(&f, &f, 1.0, eta).unwrap(), (true, true));
        }
        let e = standard_basis(s);
        let (lhs, _) = ordering_predicates(&e[0], &e[1], 1.0, 0.0).unwrap();
        assert!(!lhs);
    }

    #[test]
    fn agreement_probe_is_schedule_independent() {
        let s = shape(2, 2);
        let alphas = [0.5, 1.0, 1.5];
        let etas = [0.0, 0.5, 1.0, 2.0];
        let a = ordering_agreement_probe(s, &alphas, &etas, 64, 3, Execution::Sequential);
        let b = ordering_agreement_probe(s, &alphas, &etas, 64, 3, Execution::Threads(4));
        assert_eq!(a, b);
        assert_eq!(a.evaluated, 64 * 12);
        assert!((0.0..=1.0).contains(&a.rate()));
    }

    #[test]
    fn bessel_bound_examples() {
        let s = shape(1, 2);
        let onb = FrameSystem::new(s, standard_basis(s)).unwrap();
        assert!((shifted_bessel_bound(&shift_decompose(&onb, 1.0)) - 1.0).abs() < 1e-15);
        let dec = shift_decompose(&doubled_first(), 1.0);
        assert!((shifted_bessel_bound(&dec) - 2.0).abs() < 1e-14);
        assert!((linalg::lambda_max(dec.source().mat()) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn lower_bound_examples() {
        let s = shape(1, 2);
        let l = shifted_lower_bound(
            &ShiftDecomposition::from_parts(ModuleOperator::identity(s), 0.0),
            0.0,
        );
        assert!((l.value - 1.0).abs() < 1e-14 && l.t_positive && !l.formula_only);

        let dec = ShiftDecomposition::from_parts(diag1(&[2.0, 3.0]), 0.5);
        let l = shifted_lower_bound(&dec, 0.0);
        assert!((l.value - 1.5).abs() < 1e-14);
        assert!((linalg::lambda_min(dec.source().mat()) - 2.5).abs() < 1e-14);

        let l = shifted_lower_bound(
            &ShiftDecomposition::from_parts(ModuleOperator::identity(s), 0.0),
            1.0,
        );
        assert!((l.value - 0.5f64.sqrt()).abs() < 1e-14);

        let l = shifted_lower_bound(
            &ShiftDecomposition::from_parts(diag1(&[-2.0, 3.0]), 0.0),
            0.0,
        );
        assert!(l.formula_only && (l.rho - 2.0).abs() < 1e-14);

        let dec = ShiftDecomposition::from_parts(diag1(&[2.0, 3.0]), 0.0);
        assert!(shifted_lower_bound_with_rho(&dec, 0.0, 1.0).is_ok());
        assert!(matches!(
            shifted_lower_bound_with_rho(&dec, 0.0, 2.5),
            Err(Error::RhoTooLarge { .. })
        ));
    }

    #[test]
    fn perturbed_bounds_examples() {
        let s = shape(1, 2);
        let dec = ShiftDecomposition::from_parts(ModuleOperator::identity(s), 0.0);
        match perturbed_bounds(&dec, 0.0, 0.1).unwrap() {
            PerturbedBounds::Applicable {
                low, high, low_alt, ..
            } => {
                assert!((low - 0.81).abs() < 1e-14);
                assert!((high - 1.21).abs() < 1e-14);
                assert!((low_alt - 0.81).abs() < 1e-14);
            }
            other => panic!("unexpected {other:?}"),
        }
        match perturbed_bounds(&dec, 0.0, 0.0).unwrap() {
            PerturbedBounds::Applicable { low, high, .. } => {
                assert!((low - 1.0).abs() < 1e-14 && (high - 1.0).abs() < 1e-14)
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            perturbed_bounds(&dec, 0.0, 1.0).unwrap(),
            PerturbedBounds::NotApplicable { threshold, .. } if (threshold - 1.0).abs() < 1e-14
        ));
        assert_eq!(
            perturbed_bounds(&dec, 0.0, -1.0),
            Err(Error::NegativeMu(-1.0))
        );
    }

    #[test]
    fn dual_decomposition_examples() {
        let s = shape(2, 2);
        let k0 = ModuleOperator::zero(s);
        let s_op = ModuleOperator::scalar(s, 2.0);
        let dd = dual_decomposition(2.0, &k0, &s_op, 1e-9).unwrap();
        assert!(dd.t.mat().frobenius_norm() < 1e-15);
        assert!(
            dd.s_inv
                .mat()
                .max_abs_diff(&ComplexMatrix::identity(4).scale(0.5))
                < 1e-15
        );

        let dd = dual_decomposition(1.0, &diag1(&[1.0, 0.0]), &diag1(&[2.0, 1.0]), 1e-9).unwrap();
        assert!(dd.t.mat().max_abs_diff(diag1(&[-0.5, 0.0]).mat()) < 1e-15);
        assert!(dd.s_inv.mat().max_abs_diff(diag1(&[0.5, 1.0]).mat()) < 1e-15);
        assert!(
            dd.identity_residual < 1e-12
                && dd.inverse_residual < 1e-12
                && dd.product_residual < 1e-12
        );

        assert_eq!(
            dual_decomposition(0.0, &k0, &s_op, 1e-9),
            Err(Error::XiZero)
        );
        assert!(matches!(
            dual_decomposition(1.0, &k0, &s_op, 1e-9),
            Err(Error::InconsistentDecomposition { .. })
        ));
        assert!(matches!(
            dual_decomposition(1.0, &diag1(&[-1.0, 0.0]), &diag1(&[0.0, 1.0]), 1e-9),
            Err(Error::SingularS { .. })
        ));
    }
}
