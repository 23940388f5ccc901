use grammarcalc::identities::{run_all, run_check, ProfileName, CHECK_KEYS};

#[test]
fn quick_profile_passes_with_full_coverage() {
    let report = run_all(ProfileName::Quick);
    for r in &report.results {
        println!("{} {:?} {} {:?}", r.key, r.range, r.status, r.witness);
    }
    assert!(
        report.uncovered_entries.is_empty(),
        "{:?}",
        report.uncovered_entries
    );
    assert!(report.passed());
    assert_eq!(report.results.len(), CHECK_KEYS.len());
}

#[test]
fn unknown_check_is_an_error() {
    assert!(run_check("no-such-check", 4).is_err());
}

mod fault_injection {
    use grammarcalc::identities::{run_all_with, Context, Profile, SuiteReport};
    use grammarcalc::recurrences::TriangleName;
    use num_bigint::BigInt;

    const ROW: usize = 5;

    fn failing(report: &SuiteReport) -> Vec<&str> {
        report
            .results
            .iter()
            .filter(|r| !r.passed())
            .map(|r| r.key.as_str())
            .collect()
    }

    fn assert_localized(report: &SuiteReport, allowed: &[&str]) {
        let failed = failing(report);
        assert!(failed.contains(&"table-marginals"), "{failed:?}");
        for key in &failed {
            assert!(
                allowed.contains(key),
                "unexpected failure {key} in {failed:?}"
            );
        }
        let marginals = report
            .results
            .iter()
            .find(|r| r.key == "table-marginals")
            .unwrap();
        let witness = marginals.witness.as_ref().unwrap();
        assert_eq!(witness.n, ROW);
        assert_ne!(witness.lhs, witness.rhs);
    }

    fn dependents(name: TriangleName) -> &'static [&'static str] {
        match name {
            TriangleName::EulerA => &[
                "cor-2-2",
                "symmetry-A",
                "cor-4-2-poly",
                "egf-dA",
                "rundef-w-A",
                "grammar-claims",
                "table-marginals",
            ],
            TriangleName::EulerB => &[
                "wexc-vs-des",
                "egf-dB",
                "rundef-w-B",
                "grammar-claims",
                "table-marginals",
            ],
            TriangleName::RunsR => &[
                "prop-3-4",
                "R-convolution",
                "bona",
                "rundef-w-A",
                "grammar-claims",
                "table-marginals",
            ],
            TriangleName::UpDownM => &[
                "cor-3-3",
                "R-convolution",
                "bona",
                "M-convolution",
                "grammar-claims",
                "table-marginals",
            ],
            TriangleName::LeftPeakP => &[
                "R-convolution",
                "M-convolution",
                "grammar-claims",
                "table-marginals",
            ],
            TriangleName::RunsT => &[
                "cor-3-3",
                "prop-3-4",
                "rundef-w-B",
                "grammar-claims",
                "table-marginals",
            ],
        }
    }

    #[test]
    fn corrupted_triangle_entries_are_localized() {
        for name in TriangleName::ALL {
            for k in name.k_range(ROW) {
                let mut ctx = Context::new(Profile::quick());
                let t = ctx.tables.triangle_mut(name);
                let old = t.get(ROW, k);
                t.set(ROW, k, old + BigInt::from(1));
                let report = run_all_with(&ctx);
                println!("{} k={k}: {:?}", name.name(), failing(&report));
                assert_localized(&report, dependents(name));
            }
        }
    }

    #[test]
    fn corrupted_derangement_entry_is_localized() {
        let mut ctx = Context::new(Profile::quick());
        let d = ctx.tables.derangements_mut();
        let old = d.get(ROW, 2, 1);
        d.set(ROW, 2, 1, old + BigInt::from(3));
        let report = run_all_with(&ctx);
        println!("{:?}", failing(&report));
        assert_localized(
            &report,
            &["cor-4-2-num", "egf-G", "grammar-claims", "table-marginals"],
        );
    }
}
