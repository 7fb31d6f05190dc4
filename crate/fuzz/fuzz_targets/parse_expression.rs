#![no_main]

use libfuzzer_sys::fuzz_target;
use luders_core::algebra::parse_expression;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(expr) = parse_expression(text) {
        // Printed trees read back to themselves.
        let printed = expr.to_string();
        assert_eq!(parse_expression(&printed).as_ref(), Ok(&expr), "{printed}");
    }
});
