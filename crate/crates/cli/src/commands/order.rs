use luders_core::algebra::{
    anti_normal_order, family_p, family_q, is_well_ordered, luders_fixed_space, luders_symbolic, normal_order,
    parse_expression, AntiNormalPolynomial, NormalPolynomial,
};

use crate::report::CheckResult;
use crate::CliError;

/// Largest degree bound accepted for an input expression.
pub const MAX_ORDER_DEGREE: u64 = 64;

/// Rendered forms of the input operator.
#[derive(Debug, Clone)]
pub struct OrderSummary {
    pub normal: String,
    pub anti_normal: String,
    pub luders: String,
    pub well_ordered: bool,
    pub fixed_basis: Vec<String>,
}

fn reorder(text: &str) -> Result<NormalPolynomial, CliError> {
    Ok(normal_order(&parse_expression(text)?))
}

pub fn run(expression: &str, fixed_space: Option<u32>) -> Result<(OrderSummary, Vec<CheckResult>), CliError> {
    let expr = parse_expression(expression)?;
    if expr.degree_bound() > MAX_ORDER_DEGREE {
        return Err(CliError::Invalid(format!(
            "expression degree may reach {}, above the limit {MAX_ORDER_DEGREE}",
            expr.degree_bound()
        )));
    }
    let p = normal_order(&expr);
    let anti = anti_normal_order(&p);
    let lam = luders_symbolic(&p);
    let mut results = vec![
        CheckResult::same_text("print_parse_round_trip", p.to_string(), reorder(&p.to_string())?.to_string()),
        CheckResult::same_text("anti_normal_round_trip", p.to_string(), reorder(&anti.to_string())?.to_string()),
    ];
    // Λ read as "rewrite every a†^m a^n as a^n a†^m", then reordered through the parser.
    let swapped = AntiNormalPolynomial::from_terms(p.terms().iter().map(|(k, c)| (*k, c.clone())));
    results.push(CheckResult::same_text(
        "luders_map",
        lam.to_string(),
        reorder(&swapped.to_string())?.to_string(),
    ));
    let by_coefficients = is_well_ordered(&p);
    results.push(CheckResult::same_text(
        "well_ordered",
        by_coefficients.to_string(),
        (lam == p).to_string(),
    ));
    if p.is_hermitian() {
        results.push(CheckResult::same_text("luders_hermitian", "true", lam.is_hermitian().to_string()));
    }

    let mut fixed_basis = Vec::new();
    if let Some(n) = fixed_space {
        let space = luders_fixed_space(n)?;
        results.push(CheckResult::close("fixed_space_dim", f64::from(2 * n + 1), space.dim() as f64, 0.0));
        let family_inside = space.contains(&NormalPolynomial::identity())
            && (1..=n).all(|j| space.contains(&family_q(j)) && space.contains(&family_p(j)));
        results.push(CheckResult::same_text("fixed_space_family", "true", family_inside.to_string()));
        fixed_basis = space.basis.iter().map(ToString::to_string).collect();
    }

    let summary = OrderSummary {
        normal: p.to_string(),
        anti_normal: anti.to_string(),
        luders: lam.to_string(),
        well_ordered: by_coefficients,
        fixed_basis,
    };
    Ok((summary, results))
}
