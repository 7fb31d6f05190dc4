use luders_core::channel::{channel_spectrum, choi_min_eigenvalue, SpectralReport};
use luders_core::linalg::{identity, max_abs_diff, ComplexMatrix};
use luders_core::spin::{harmonic_damping_deviation, spectrum_law, spin_channel, spin_family, SpinSpace};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::CheckResult;
use crate::tolerance::Tolerances;
use crate::CliError;

pub const TOLERANCES: &[(&str, f64)] = &[
    ("resolution_of_unity", 1e-10),
    ("spectrum", 1e-9),
    ("fixed_basis", 1e-9),
    ("harmonic_damping", 1e-9),
    ("choi_positivity", 1e-10),
];

const DAMPING_SAMPLES: usize = 20;

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn spectrum_checks(space: &SpinSpace, report: &SpectralReport, tol: f64) -> Vec<CheckResult> {
    let mut out = Vec::new();
    let mut start = 0;
    for (l, (tau, mult)) in spectrum_law(space).into_iter().enumerate() {
        let block = &report.eigenvalues[start..(start + mult).min(report.eigenvalues.len())];
        let worst = block
            .iter()
            .map(|z| z.re)
            .max_by(|a, b| (a - tau).abs().total_cmp(&(b - tau).abs()))
            .unwrap_or(f64::NAN);
        out.push(CheckResult::close(format!("tau_l{l}"), tau, worst, tol));
        let count = report.eigenvalues.iter().filter(|z| (z.re - tau).abs() <= tol).count();
        out.push(CheckResult::close(format!("multiplicity_l{l}"), mult as f64, count as f64, 0.0));
        start += mult;
    }
    out
}

pub fn run(two_s: u32, tol: &Tolerances) -> Result<Vec<CheckResult>, CliError> {
    let space = SpinSpace::new(two_s)?;
    let dim = space.dim();
    let mut results = Vec::new();

    let family = spin_family(&space)?;
    results.push(CheckResult::close(
        "resolution_of_unity",
        0.0,
        family.resolution_defect(dim),
        tol.get("resolution_of_unity"),
    ));

    let chan = spin_channel(&space)?;
    let report = channel_spectrum(&chan)?;
    results.extend(spectrum_checks(&space, &report, tol.get("spectrum")));

    results.push(CheckResult::close("fixed_space_dim", 1.0, report.fixed_space_dim as f64, 0.0));
    let identity_dev = report
        .fixed_basis
        .first()
        .map(|f| {
            let sign = f[(0, 0)].re.signum();
            let target = identity(dim) * Complex64::new(sign / (dim as f64).sqrt(), 0.0);
            max_abs_diff(f, &target)
        })
        .unwrap_or(f64::NAN);
    results.push(CheckResult::close("fixed_basis_identity", 0.0, identity_dev, tol.get("fixed_basis")));

    let mut rng = ChaCha8Rng::seed_from_u64(u64::from(two_s));
    let mut worst = 0.0f64;
    for _ in 0..DAMPING_SAMPLES {
        let b = random_hermitian(&mut rng, dim);
        worst = worst.max(harmonic_damping_deviation(&space, &chan, &b)?);
    }
    results.push(CheckResult::close("harmonic_damping", 0.0, worst, tol.get("harmonic_damping")));

    results.push(CheckResult::at_least(
        "choi_min_eigenvalue",
        0.0,
        choi_min_eigenvalue(&chan)?,
        tol.get("choi_positivity"),
    ));
    Ok(results)
}
