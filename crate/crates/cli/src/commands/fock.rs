use luders_core::algebra::{luders_symbolic, normal_order, parse_expression, to_matrix, NormalPolynomial, Scalar};
use luders_core::fock::{
    default_xi_points, fock_coherent_state, guard_dimension, plane_quadrature, position_commutator_closed_form,
    position_commutator_expectation, verify_damping, FockSpace, PlanePoint,
};
use luders_core::linalg::{identity, max_abs_diff_block, projector};
use num_complex::Complex64;
use num_traits::One;

use crate::report::CheckResult;
use crate::tolerance::Tolerances;
use crate::CliError;

pub const TOLERANCES: &[(&str, f64)] = &[
    ("guard_unity", 1e-8),
    ("grid_vs_symbolic", 1e-6),
    ("lambda_Q2", 1e-6),
    ("commutator_formula", 1e-8),
    ("Q_projector_symbol", 1e-8),
    ("damping_ratio", 1e-4),
];

pub const MIN_DIM: usize = 8;
pub const MAX_DIM: usize = 200;
pub const MIN_GUARD: usize = 2;
pub const MAX_NODES: usize = 1024;

#[derive(Debug, Clone, Copy)]
pub struct FockArgs {
    pub dim: usize,
    pub radius: Option<f64>,
    pub radial: usize,
    pub angular: usize,
}

/// Validated sizing: `(dim, radius, guard)`.
pub fn validate(args: &FockArgs) -> Result<(usize, f64, usize), CliError> {
    if !(MIN_DIM..=MAX_DIM).contains(&args.dim) {
        return Err(CliError::Invalid(format!(
            "--dim {} outside {MIN_DIM}..={MAX_DIM}",
            args.dim
        )));
    }
    if !(1..=MAX_NODES).contains(&args.radial) || !(1..=MAX_NODES).contains(&args.angular) {
        return Err(CliError::Invalid(format!("node counts must lie in 1..={MAX_NODES}")));
    }
    let radius = args.radius.unwrap_or_else(|| (args.dim as f64).sqrt() / 2.0);
    if !(radius.is_finite() && radius > 0.0) {
        return Err(CliError::Invalid(format!("--radius {radius} must be positive")));
    }
    let guard = guard_dimension(args.dim, radius);
    if guard < MIN_GUARD {
        return Err(CliError::Invalid(format!(
            "dimension {} with radius {radius:.4} leaves a guard block of {guard} levels (need {MIN_GUARD}); \
             raise --dim or --radius",
            args.dim
        )));
    }
    Ok((args.dim, radius, guard))
}

const SAMPLE_POINTS: [(f64, f64); 5] = [(0.0, 0.0), (0.6, -0.4), (1.5, 0.5), (-1.0, 1.2), (-0.3, -0.9)];

pub fn run(args: &FockArgs, tol: &Tolerances) -> Result<Vec<CheckResult>, CliError> {
    let (dim, radius, guard) = validate(args)?;
    let space = FockSpace::new(dim);
    let grid = plane_quadrature(&space, radius, args.radial, args.angular)?;
    let mut results = Vec::new();

    let chan = match grid.channel(&space) {
        Ok(c) => c,
        Err(luders_core::Error::ResolutionOfUnity { deviation, .. }) => {
            results.push(CheckResult::close("guard_unity", 0.0, deviation, tol.get("guard_unity")));
            return Ok(results);
        }
        Err(e) => return Err(e.into()),
    };
    results.push(CheckResult::close(
        "guard_unity",
        0.0,
        chan.resolution_defect(guard),
        tol.get("guard_unity"),
    ));

    for m in 0..=4u32 {
        for n in 0..=4 - m {
            let p = NormalPolynomial::monomial(m, n, Scalar::one());
            let out = chan.apply(&to_matrix(&p, &space)?)?;
            let exact = to_matrix(&luders_symbolic(&p), &space)?;
            results.push(CheckResult::close(
                format!("grid_vs_symbolic_ad{m}_a{n}"),
                0.0,
                max_abs_diff_block(&out, &exact, guard),
                tol.get("grid_vs_symbolic"),
            ));
        }
    }

    let q2 = normal_order(&parse_expression("q^2").expect("literal parses"));
    let q2_shifted = normal_order(&parse_expression("q^2 + 1/2").expect("literal parses"));
    results.push(CheckResult::same_text(
        "lambda_Q2_symbolic",
        q2_shifted.to_string(),
        luders_symbolic(&q2).to_string(),
    ));
    let out = chan.apply(&to_matrix(&q2, &space)?)?;
    let expected = to_matrix(&q2, &space)? + identity(dim) * Complex64::new(0.5, 0.0);
    results.push(CheckResult::close(
        "lambda_Q2",
        0.0,
        max_abs_diff_block(&out, &expected, guard),
        tol.get("lambda_Q2"),
    ));

    let mut worst = 0.0f64;
    for &(ar, ai) in &SAMPLE_POINTS {
        for &(br, bi) in &SAMPLE_POINTS {
            let (al, be) = (PlanePoint::new(ar, ai), PlanePoint::new(br, bi));
            let got = position_commutator_expectation(&space, al, be)?;
            worst = worst.max((got - position_commutator_closed_form(al, be)).norm());
        }
    }
    results.push(CheckResult::close("commutator_formula", 0.0, worst, tol.get("commutator_formula")));

    let beta = PlanePoint::new(0.6, -0.4);
    let proj = projector(&fock_coherent_state(&space, beta)?);
    let damped = chan.apply(&proj)?;
    let q_tol = tol.get("Q_projector_symbol");
    for (k, &(x, y)) in SAMPLE_POINTS.iter().enumerate() {
        let alpha = PlanePoint::new(x, y);
        let psi = fock_coherent_state(&space, alpha)?;
        let q = psi.dotc(&(&damped * &psi));
        let expected = 0.5 * (-(alpha.alpha - beta.alpha).norm_sqr() / 2.0).exp();
        let mut check = CheckResult::close(format!("Q_projector_symbol_{k}"), expected, q.re, q_tol);
        check.pass &= q.im.abs() <= q_tol;
        results.push(check);
    }

    let report = verify_damping(&space, &proj, &grid, &default_xi_points())?;
    let mut ratio = CheckResult::close("damping_ratio", 0.0, report.max_deviation, tol.get("damping_ratio"));
    ratio.pass &= report.decayed;
    results.push(ratio);
    results.push(CheckResult::close("damping_flagged", 0.0, report.flagged as f64, 0.0));
    Ok(results)
}
