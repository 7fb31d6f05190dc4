//! Acceptance criteria, one line per criterion.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use luders_cli::report::ReportDocument;
use luders_core::algebra::{
    family_p, family_q, is_well_ordered, luders_fixed_space, luders_symbolic, normal_order, parse_expression,
    scalar, to_matrix, Monomial, NormalPolynomial, Scalar,
};
use luders_core::channel::{apply_channel, channel_spectrum, WeightedProjectorFamily};
use luders_core::fock::{
    default_xi_points, fock_coherent_state, guard_dimension, plane_quadrature, position_commutator_expectation,
    verify_damping, xi_transform, FockSpace, PlanePoint, DEFAULT_ANGULAR, DEFAULT_DIM, DEFAULT_RADIAL,
    DEFAULT_RADIUS,
};
use luders_core::linalg::{identity, max_abs_diff, max_abs_diff_block, projector, ComplexMatrix};
use luders_core::spin::{
    harmonic_coefficients, overlap_squared_from_states, q_symbol_spin, sphere_quadrature, spin_channel,
    SpherePoint, SpinSpace,
};
use num_complex::Complex64;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SPINS: [u32; 5] = [1, 2, 3, 4, 5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn tau_oracle(two_s: u32, l: u32) -> f64 {
    factorial(two_s) * factorial(two_s + 1) / (factorial(two_s - l) * factorial(two_s + 1 + l))
}

fn random_hermitian(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
    let m = ComplexMatrix::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    });
    (&m + m.adjoint()) * Complex64::new(0.5, 0.0)
}

fn spin_spectrum_law() -> Outcome {
    let mut worst = 0.0f64;
    let mut slowest = Duration::ZERO;
    for two_s in SPINS {
        let start = Instant::now();
        let sp = SpinSpace::new(two_s).unwrap();
        let report = channel_spectrum(&spin_channel(&sp).unwrap()).unwrap();
        let mut expected: Vec<f64> = (0..=two_s)
            .flat_map(|l| std::iter::repeat(tau_oracle(two_s, l)).take(2 * l as usize + 1))
            .collect();
        expected.sort_by(|a, b| b.total_cmp(a));
        if expected.len() != report.eigenvalues.len() {
            return Outcome {
                pass: false,
                detail: format!("2s={two_s}: {} eigenvalues", report.eigenvalues.len()),
            };
        }
        for (z, e) in report.eigenvalues.iter().zip(&expected) {
            worst = worst.max((z - e).norm());
        }
        slowest = slowest.max(start.elapsed());
    }
    Outcome {
        pass: worst <= 1e-9 && slowest < Duration::from_secs(5),
        detail: format!("max |λ − τ| = {worst:.2e} (tol 1e-9), slowest spin {slowest:.2?} (< 5 s)"),
    }
}

fn spin_fixed_point() -> Outcome {
    let mut worst = 0.0f64;
    let mut dims = Vec::new();
    for two_s in SPINS {
        let sp = SpinSpace::new(two_s).unwrap();
        let report = channel_spectrum(&spin_channel(&sp).unwrap()).unwrap();
        dims.push(report.fixed_space_dim);
        if let Some(f) = report.fixed_basis.first() {
            let d = sp.dim() as f64;
            let target = identity(sp.dim()) * Complex64::new(f[(0, 0)].re.signum() / d.sqrt(), 0.0);
            worst = worst.max(max_abs_diff(f, &target));
        }
    }
    Outcome {
        pass: dims.iter().all(|&d| d == 1) && worst <= 1e-9,
        detail: format!("fixed dims {dims:?}, max |F − I/√d| = {worst:.2e} (tol 1e-9)"),
    }
}

fn harmonic_damping() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0f64;
    for two_s in SPINS {
        let sp = SpinSpace::new(two_s).unwrap();
        let grid = sphere_quadrature(&sp);
        let chan = spin_channel(&sp).unwrap();
        for _ in 0..20 {
            let b = random_hermitian(&mut rng, sp.dim());
            let out = apply_channel(&chan, &b).unwrap();
            let before = harmonic_coefficients(&q_symbol_spin(&sp, &b, &grid).unwrap(), &grid, &sp).unwrap();
            let after = harmonic_coefficients(&q_symbol_spin(&sp, &out, &grid).unwrap(), &grid, &sp).unwrap();
            for (&(l, m), c) in &before.coeffs {
                worst = worst.max((after.get(l, m) - c * tau_oracle(two_s, l)).norm());
            }
        }
    }
    Outcome {
        pass: worst <= 1e-9,
        detail: format!("100 operators, max |B'_lm − τ_l B_lm| = {worst:.2e} (tol 1e-9)"),
    }
}

fn overlap_law() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut worst = 0.0f64;
    for two_s in SPINS {
        let sp = SpinSpace::new(two_s).unwrap();
        for _ in 0..100 {
            let mut point = || {
                let c: f64 = rng.gen_range(-1.0..1.0);
                SpherePoint::new(c.acos(), rng.gen_range(0.0..2.0 * PI)).unwrap()
            };
            let (p, q) = (point(), point());
            let [x1, y1, z1] = p.unit_vector();
            let [x2, y2, z2] = q.unit_vector();
            let law = ((1.0 + x1 * x2 + y1 * y2 + z1 * z2) / 2.0).powi(two_s as i32);
            worst = worst.max((overlap_squared_from_states(&sp, p, q) - law).abs());
        }
    }
    Outcome {
        pass: worst <= 1e-12,
        detail: format!("500 pairs, max deviation {worst:.2e} (tol 1e-12)"),
    }
}

fn nf(text: &str) -> NormalPolynomial {
    normal_order(&parse_expression(text).unwrap())
}

/// Leftmost `a a†` → `a† a + 1` until the word is normal ordered.
fn commute_word(word: Vec<bool>, out: &mut BTreeMap<(u32, u32), i64>) {
    match word.windows(2).position(|w| !w[0] && w[1]) {
        None => {
            let adag = word.iter().filter(|&&x| x).count() as u32;
            *out.entry((adag, word.len() as u32 - adag)).or_default() += 1;
        }
        Some(i) => {
            let mut swapped = word.clone();
            swapped.swap(i, i + 1);
            commute_word(swapped, out);
            let mut contracted = word;
            contracted.drain(i..i + 2);
            commute_word(contracted, out);
        }
    }
}

/// Normal form of `a^m a†^n` by iterated commutation.
fn commutation_oracle(m: u32, n: u32) -> NormalPolynomial {
    let mut word = vec![false; m as usize];
    word.extend(std::iter::repeat(true).take(n as usize));
    let mut out = BTreeMap::new();
    commute_word(word, &mut out);
    NormalPolynomial::from_terms(
        out.into_iter()
            .map(|((adag, a), c)| (Monomial::new(adag, a), scalar::real(c, 1))),
    )
}

fn symbolic_identities() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |label: &str, ok: bool| {
        if !ok {
            failures.push(label.to_string());
        }
    };
    check("Λ(Q) = Q", luders_symbolic(&nf("q")) == nf("q"));
    check("Λ(P) = P", luders_symbolic(&nf("p")) == nf("p"));
    check("Λ(Q²) = Q² + I/2", luders_symbolic(&nf("q^2")) == nf("q^2 + 1/2*id"));
    check("Λ(P²) = P² + I/2", luders_symbolic(&nf("p^2")) == nf("p^2 + 1/2*id"));
    check("Λ(Q² − P²)", luders_symbolic(&nf("q^2 - p^2")) == nf("q^2 - p^2"));
    check("QP + PQ well ordered", is_well_ordered(&nf("q*p + p*q")));
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let lhs = luders_symbolic(&NormalPolynomial::monomial(m, n, Scalar::one()));
            let rhs = nf(&format!("a^{n}*ad^{m}"));
            check(&format!("Λ(ad^{m} a^{n})"), lhs == rhs);
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: if failures.is_empty() {
            "6 identities and 49 monomials exact".to_string()
        } else {
            format!("failed: {}", failures.join(", "))
        },
    }
}

fn fixed_space_dimension() -> Outcome {
    let mut dims = Vec::new();
    let mut members = true;
    let mut at_six = Duration::ZERO;
    for n in 0..=6u32 {
        let start = Instant::now();
        let k = luders_fixed_space(n).unwrap();
        if n == 6 {
            at_six = start.elapsed();
        }
        dims.push(k.dim());
        members &= k.contains(&NormalPolynomial::identity())
            && (1..=n).all(|j| k.contains(&family_q(j)) && k.contains(&family_p(j)));
    }
    let dims_ok = dims.iter().enumerate().all(|(n, &d)| d == 2 * n + 1);
    Outcome {
        pass: dims_ok && members && at_six < Duration::from_secs(10),
        detail: format!("dims {dims:?}, family members {members}, N=6 in {at_six:.2?} (< 10 s)"),
    }
}

fn reordering_identity() -> Outcome {
    let mut bad = Vec::new();
    for m in 0..=6u32 {
        for n in 0..=6u32 {
            let closed = NormalPolynomial::from_terms((0..=m.min(n)).map(|s| {
                let c = factorial(s) * binom(m, s) * binom(n, s);
                (Monomial::new(n - s, m - s), scalar::real(c as i64, 1))
            }));
            if closed != commutation_oracle(m, n) {
                bad.push((m, n));
            }
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("49 pairs, mismatches {bad:?}"),
    }
}

fn binom(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

struct GridFindings {
    symbolic: f64,
    /// Deviation on the vacuum entry alone.
    symbolic_vacuum: f64,
    commutator: f64,
    damping: f64,
    flagged: usize,
}

fn commutator_deviation(space: &FockSpace) -> f64 {
    let pts = [(0.0, 0.0), (0.5, -0.3), (-0.8, 0.6), (1.1, 1.0), (0.2, -1.4)];
    let mut worst = 0.0f64;
    for &(ar, ai) in &pts {
        for &(br, bi) in &pts {
            let (a, b) = (Complex64::new(ar, ai), Complex64::new(br, bi));
            let expected = 0.5 * ((a - a.conj()) - (b - b.conj())) * (-(a - b).norm_sqr()).exp();
            let got = position_commutator_expectation(space, PlanePoint::from(a), PlanePoint::from(b)).unwrap();
            worst = worst.max((got - expected).norm());
        }
    }
    worst
}

/// Grid checks with the projector sum taken as is, on the `dim − 8` block.
fn grid_findings_as_stated() -> GridFindings {
    let space = FockSpace::new(40);
    let grid = plane_quadrature(&space, 3.0, 40, 64).unwrap();
    let states = grid
        .points()
        .iter()
        .map(|p| fock_coherent_state(&space, *p).unwrap())
        .collect();
    let family = WeightedProjectorFamily::with_guard(states, grid.weights().to_vec(), 32, f64::INFINITY).unwrap();
    let mut symbolic = 0.0f64;
    let mut symbolic_vacuum = 0.0f64;
    for m in 0..=4u32 {
        for n in 0..=4 - m {
            let p = NormalPolynomial::monomial(m, n, Scalar::one());
            let out = family.apply(&to_matrix(&p, &space).unwrap()).unwrap();
            let exact = to_matrix(&luders_symbolic(&p), &space).unwrap();
            symbolic = symbolic.max(max_abs_diff_block(&out, &exact, 32));
            symbolic_vacuum = symbolic_vacuum.max(max_abs_diff_block(&out, &exact, 1));
        }
    }
    let proj = projector(&fock_coherent_state(&space, PlanePoint::new(0.3, 0.2)).unwrap());
    let xi = default_xi_points();
    let before = xi_transform(&grid, &family.q_symbol(&proj).unwrap(), &xi);
    let after = xi_transform(&grid, &family.q_symbol(&family.apply(&proj).unwrap()).unwrap(), &xi);
    let mut damping = 0.0f64;
    for ((x, s), d) in xi.iter().zip(&before.coeffs).zip(&after.coeffs) {
        damping = damping.max((d / s - (-x.alpha.norm_sqr()).exp()).norm());
    }
    GridFindings {
        symbolic,
        symbolic_vacuum,
        commutator: commutator_deviation(&space),
        damping,
        flagged: 0,
    }
}

fn grid_findings_defaults() -> GridFindings {
    let space = FockSpace::new(DEFAULT_DIM);
    let grid = plane_quadrature(&space, DEFAULT_RADIUS, DEFAULT_RADIAL, DEFAULT_ANGULAR).unwrap();
    let guard = guard_dimension(DEFAULT_DIM, DEFAULT_RADIUS);
    let chan = grid.channel(&space).unwrap();
    let mut symbolic = 0.0f64;
    let mut symbolic_vacuum = 0.0f64;
    for m in 0..=4u32 {
        for n in 0..=4 - m {
            let p = NormalPolynomial::monomial(m, n, Scalar::one());
            let out = chan.apply(&to_matrix(&p, &space).unwrap()).unwrap();
            let exact = to_matrix(&luders_symbolic(&p), &space).unwrap();
            symbolic = symbolic.max(max_abs_diff_block(&out, &exact, guard));
            symbolic_vacuum = symbolic_vacuum.max(max_abs_diff_block(&out, &exact, 1));
        }
    }
    let proj = projector(&fock_coherent_state(&space, PlanePoint::new(0.3, 0.2)).unwrap());
    let report = verify_damping(&space, &proj, &grid, &default_xi_points()).unwrap();
    GridFindings {
        symbolic,
        symbolic_vacuum,
        commutator: commutator_deviation(&space),
        damping: if report.decayed { report.max_deviation } else { f64::INFINITY },
        flagged: report.flagged,
    }
}

fn judge(f: &GridFindings, elapsed: Duration) -> bool {
    f.symbolic <= 1e-6 && f.commutator <= 1e-8 && f.damping <= 1e-4 && f.flagged == 0 && elapsed < Duration::from_secs(60)
}

fn describe(f: &GridFindings, elapsed: Duration) -> String {
    format!(
        "grid vs symbolic {:.2e} (1e-6; vacuum entry alone {:.2e}), commutator {:.2e} (1e-8), \
         damping {:.2e} (1e-4), flagged {}, {elapsed:.2?}",
        f.symbolic, f.symbolic_vacuum, f.commutator, f.damping, f.flagged
    )
}

fn grid_agreement_as_stated() -> Outcome {
    let start = Instant::now();
    let f = grid_findings_as_stated();
    let elapsed = start.elapsed();
    Outcome {
        pass: judge(&f, elapsed),
        detail: format!("D=40, R=3, block 32: {}", describe(&f, elapsed)),
    }
}

fn grid_agreement_defaults() -> Outcome {
    let start = Instant::now();
    let f = grid_findings_defaults();
    let elapsed = start.elapsed();
    Outcome {
        pass: judge(&f, elapsed),
        detail: format!(
            "D={DEFAULT_DIM}, R=√{}, block {}: {}",
            DEFAULT_DIM / 4,
            guard_dimension(DEFAULT_DIM, DEFAULT_RADIUS),
            describe(&f, elapsed)
        ),
    }
}

fn cli_runs() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut notes = Vec::new();
    let mut ok = true;
    let runs: [(&str, Vec<&str>); 3] = [
        ("spin", vec!["spin", "--two-s", "2"]),
        ("fock", vec!["fock"]),
        ("order", vec!["order", "q^2-p^2"]),
    ];
    for (label, args) in runs {
        let path = dir.path().join(format!("{label}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_luders"))
            .args(&args)
            .arg("--json")
            .arg(&path)
            .output()
            .unwrap()
            .status
            .code();
        let valid = std::fs::read_to_string(&path)
            .ok()
            .and_then(|t| ReportDocument::from_json(&t).ok())
            .is_some();
        ok &= status == Some(0) && valid;
        notes.push(format!("{label} exit {status:?} schema-valid {valid}"));
    }
    let corrupted = Command::new(env!("CARGO_BIN_EXE_luders"))
        .args(["spin", "--two-s", "2", "--tol-override", "spectrum=not-a-number"])
        .output()
        .unwrap()
        .status
        .code();
    ok &= corrupted.is_some_and(|c| c != 0);
    notes.push(format!("corrupted override exit {corrupted:?}"));
    Outcome {
        pass: ok,
        detail: notes.join(", "),
    }
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, &str, fn() -> Outcome); 10] = [
        ("1", "spin spectrum law", spin_spectrum_law),
        ("2", "spin fixed point", spin_fixed_point),
        ("3", "harmonic damping", harmonic_damping),
        ("4", "overlap law", overlap_law),
        ("5", "symbolic Lüders identities", symbolic_identities),
        ("6", "fixed-space dimension", fixed_space_dimension),
        ("7", "reordering identity", reordering_identity),
        ("8", "grid/symbolic agreement, parameters as stated", grid_agreement_as_stated),
        ("8", "grid/symbolic agreement, default grid", grid_agreement_defaults),
        ("9", "command line", cli_runs),
    ];
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        let outcome = run();
        let verdict = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {id} {verdict}: {title}: {}", outcome.detail);
        if !outcome.pass {
            failed.push(format!("{id} ({title})"));
        }
    }
    assert!(failed.is_empty(), "failed criteria: {}", failed.join(", "));
}
