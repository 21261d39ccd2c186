//! Golden-report cases shared by the golden and acceptance targets.

/// (golden name, arguments with `@` standing for the fixture path, expected exit code)
pub const CASES: &[(&str, &str, &[&str], i32)] = &[
    ("chain.solve", "chain", &["solve", "@", "--oracle"], 0),
    ("chain.solve-root2", "chain", &["solve", "@", "--root", "2", "--query", "X Y"], 0),
    ("chain.check-tree", "chain", &["check", "tree", "@"], 0),
    ("chain.check-sequence", "chain", &["check", "sequence", "@"], 0),
    ("chain.evidence-combine", "chain", &["evidence", "combine", "@"], 0),
    ("chain.evidence-support", "chain", &["evidence", "support", "@"], 0),
    ("constraints.solve", "constraints", &["solve", "@", "--oracle", "--heuristic", "min-fill"], 0),
    ("constraints.check-sequence", "constraints", &["check", "sequence", "@"], 1),
    ("constraints.check-qseparoid", "constraints", &["check", "qseparoid", "@"], 0),
    ("constraints.evidence-plausibility", "constraints", &["evidence", "plausibility", "@"], 0),
    ("constraints.evidence-combine", "constraints", &["evidence", "combine", "@"], 0),
    ("tropical.solve", "tropical", &["solve", "@", "--oracle"], 0),
    ("tropical.check-semiring", "tropical", &["check", "semiring", "@", "--samples", "2000"], 0),
    ("tropical.check-valuation-axioms", "tropical", &["check", "valuation-axioms", "@", "--samples", "100", "--seed", "3"], 0),
    ("tropical.check-qseparoid", "tropical", &["check", "qseparoid", "@"], 0),
    ("tropical.evidence-support", "tropical", &["evidence", "support", "@"], 0),
    ("tropical.evidence-moebius", "tropical", &["evidence", "moebius", "@"], 0),
];
