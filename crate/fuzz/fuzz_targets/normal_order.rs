#![no_main]

use libfuzzer_sys::fuzz_target;
use luders_core::algebra::{anti_normal_order, luders_symbolic, normal_order, parse_expression};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(expr) = parse_expression(text) else {
        return;
    };
    // Keep exact arithmetic bounded.
    if expr.degree_bound() > 16 {
        return;
    }
    let p = normal_order(&expr);
    assert_eq!(anti_normal_order(&p).to_normal(), p);
    let printed = p.to_string();
    assert_eq!(normal_order(&parse_expression(&printed).unwrap()), p);
    let lam = luders_symbolic(&p);
    assert_eq!(lam.degree(), p.degree());
    if p.is_hermitian() {
        assert!(lam.is_hermitian());
    }
});
