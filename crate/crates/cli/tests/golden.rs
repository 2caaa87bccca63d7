mod common;

#[test]
fn golden_reports_match() {
    let bless = std::env::var("MRB_BLESS").is_ok_and(|v| v == "1");
    let cases = common::cases();
    assert!(cases.len() >= 20, "only {} golden cases", cases.len());
    let mut failures = Vec::new();
    for case in &cases {
        let first = common::run(case);
        let second = common::run(case);
        assert_eq!(first, second, "{} is not deterministic", case.name);
        if bless {
            std::fs::write(&case.expected, &first).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&case.expected).unwrap_or_default();
        if expected != first {
            failures.push(format!("{}:\n--- expected\n{expected}--- actual\n{first}", case.name));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
