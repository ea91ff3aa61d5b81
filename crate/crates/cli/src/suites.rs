//! Batch verification suites behind `verify` and `report`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use semigroup_forge::classify::{diff_catalog, enumerate_value_semigroups, Catalog, MAX_BRANCHES};
use semigroup_forge::condcount::{
    case_genus, check_heuristic, confluent_vandermonde_check, designated_minors, ledger_for_case, mt_gluing_net,
    mt_gluing_target, node_ledger, rank_sweep, simultaneous_vanishing_excluded,
};
use semigroup_forge::gapseries::cases::{run_case, CASE_IDS};
use semigroup_forge::gapseries::poly::rat;
use semigroup_forge::gapseries::Polynomial;
use semigroup_forge::ramif::{check_unibranch_bound, hyperelliptic_threshold, least_genus_below_threshold, N_R};
use semigroup_forge::sgptree::{enumerate, weight_outliers};
use semigroup_forge::valsgp::{minimal_generators, same_up_to_symmetry, span, GeneratorTuple, ValueTruncation};
use semigroup_forge::NumericalSemigroup;

/// Semigroup counts by genus, 0 through 15.
const CENSUS: [usize; 16] = [1, 1, 2, 4, 7, 12, 23, 39, 67, 118, 204, 343, 592, 1001, 1693, 2857];

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: Value,
}

fn check(suite: &'static str, name: impl Into<String>, passed: bool, detail: Value) -> Check {
    Check {
        suite,
        name: name.into(),
        passed,
        detail,
    }
}

fn gens(g: &[u32]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(g).expect("fixed generators")
}

/// Unibranch results: census, weight outliers, Dyck boxes, the ramification
/// bound, hyperelliptic formulas and the gap-condition cases.
pub fn thm1(max_genus: u32, seed: u64) -> Vec<Check> {
    const S: &str = "thm1";
    let mut out = Vec::new();
    let tree = enumerate(max_genus).expect("genus checked by the caller");

    let counts: Vec<usize> = (0..=max_genus).map(|g| tree.of_genus(g).count()).collect();
    let known: Vec<usize> = CENSUS.iter().copied().take(counts.len()).collect();
    out.push(check(
        S,
        "census",
        counts[..known.len()] == known[..],
        json!({ "counts": counts }),
    ));

    let mut outliers = Vec::new();
    for g in 1..=max_genus {
        for s in weight_outliers(g).expect("genus checked by the caller") {
            outliers.push((g, s.to_string()));
        }
    }
    let expected: Vec<(u32, String)> = vec![
        (7, "<3,8>".into()),
        (8, "<3,10,17>".into()),
        (8, "<4,6,13>".into()),
    ];
    let low: Vec<(u32, String)> = outliers.iter().filter(|(g, _)| *g <= 8).cloned().collect();
    let want: Vec<(u32, String)> = expected.into_iter().filter(|(g, _)| *g <= max_genus).collect();
    out.push(check(
        S,
        "weight outliers",
        low == want,
        json!(outliers.iter().map(|(g, s)| json!({"genus": g, "semigroup": s})).collect::<Vec<_>>()),
    ));

    let dyck_bad: Vec<String> = tree
        .iter()
        .filter(|(_, s)| s.dyck().box_count() != s.weight())
        .map(|(_, s)| s.to_string())
        .collect();
    let figures: Vec<u64> = [&[3, 8][..], &[3, 10, 17], &[4, 6, 13]]
        .iter()
        .map(|g| gens(g).dyck().box_count())
        .collect();
    out.push(check(
        S,
        "dyck boxes equal weight",
        dyck_bad.is_empty() && figures == [14, 16, 17],
        json!({ "mismatches": dyck_bad, "figures": figures }),
    ));

    let mut pairs = 0u64;
    let mut violations = Vec::new();
    for (_, s) in tree.iter() {
        let g = s.genus();
        if g == 0 || s.weight() > u64::from(2 * g - 1) {
            continue;
        }
        for n in 3..=2 * g {
            pairs += 1;
            if !check_unibranch_bound(s, n) {
                violations.push(json!({"semigroup": s.to_string(), "n": n}));
            }
        }
    }
    out.push(check(
        S,
        "unibranch bound",
        violations.is_empty(),
        json!({ "pairs": pairs, "violations": violations }),
    ));

    let weights = (1..=30).all(|g| gens(&[2, 2 * g + 1]).weight() == u64::from(g * (g - 1) / 2));
    let nr: Vec<i64> = (5..=8).map(N_R).collect();
    out.push(check(
        S,
        "hyperelliptic weight and N_R",
        weights && nr == [1, 4, 8, 13],
        json!({ "N_R(5..=8)": nr }),
    ));
    let disagreements: Vec<Value> = (3..=20)
        .filter_map(|i| {
            let formula = hyperelliptic_threshold(i);
            let direct = least_genus_below_threshold(i, 30);
            (direct != Some(formula)).then(|| json!({"i": i, "formula": formula, "direct": direct}))
        })
        .collect();
    out.push(check(
        S,
        "hyperelliptic threshold formula",
        disagreements.is_empty(),
        json!({ "disagreements": disagreements }),
    ));

    for id in CASE_IDS {
        match run_case(id, seed) {
            Ok(r) => {
                let passed = r.all_match() && r.certificate.independent;
                out.push(check(S, format!("gap conditions {id}"), passed, r.to_json()));
            }
            Err(e) => out.push(check(S, format!("gap conditions {id}"), false, json!(e.to_string()))),
        }
    }
    out
}

fn vt(elems: &[&[u32]]) -> ValueTruncation {
    ValueTruncation::from_elements(elems.iter().map(|e| e.to_vec()).collect()).expect("fixed elements")
}

fn tuples(s: &[&str]) -> Vec<GeneratorTuple> {
    s.iter().map(|g| g.parse().expect("fixed tuple")).collect()
}

/// Multibranch results: classification against the catalog, fixture
/// validity, minimal generators, condition ledgers and the exact rank checks.
pub fn thm2(max_genus: u32, samples: usize, seed: u64) -> Vec<Check> {
    const S: &str = "thm2";
    let mut out = Vec::new();
    let catalog = Catalog::builtin();

    for g in 1..=max_genus {
        for r in 1..=MAX_BRANCHES {
            let found = enumerate_value_semigroups(g, r).expect("bounds checked by the caller");
            let expected = catalog.truncations(g, r).expect("built-in catalog");
            let diff = diff_catalog(&found, &expected);
            out.push(check(
                S,
                format!("classification g={g} r={r}"),
                diff.is_empty(),
                json!({ "found": found.len(), "missing": diff.missing, "extra": diff.extra }),
            ));
        }
    }

    let invalid: Vec<Value> = catalog
        .entries
        .iter()
        .filter(|e| e.genus <= max_genus)
        .filter_map(|e| {
            let t = e.truncation().ok()?;
            let failures: Vec<String> = t.validate().failures().map(|f| f.axiom.to_string()).collect();
            (!failures.is_empty() || t.genus() != e.genus)
                .then(|| json!({"label": e.label, "truncation": t.to_string(), "failed": failures}))
        })
        .collect();
    out.push(check(S, "catalog fixtures validate", invalid.is_empty(), json!(invalid)));

    let fixtures: [(&str, ValueTruncation, Option<&[&str]>); 7] = [
        ("case 1", vt(&[&[0, 0], &[1, 1], &[2, 2]]), Some(&["(1,1)", "(2,∞)"])),
        ("case 2", vt(&[&[0, 0], &[1, 2], &[2, 3]]), Some(&["(1,2)", "(2,∞)", "(∞,3)"])),
        ("case 3", vt(&[&[0, 0], &[1, 1], &[2, 2], &[3, 3]]), Some(&["(1,1)", "(∞,3)"])),
        ("case 4", vt(&[&[0, 0], &[1, 2], &[1, 3], &[2, 2], &[2, 4]]), Some(&["(∞,2)", "(1,3)"])),
        ("case 5", vt(&[&[0, 0, 0], &[1, 1, 1], &[2, 2, 1]]), None),
        (
            "case 6",
            vt(&[&[0, 0, 0], &[1, 1, 1], &[2, 1, 1], &[1, 2, 1], &[1, 1, 2], &[2, 2, 2]]),
            None,
        ),
        ("case 7", vt(&[&[0, 0], &[1, 3], &[2, 4]]), Some(&["(1,3)", "(2,∞)", "(∞,4)", "(∞,5)"])),
    ];
    for (name, t, expected) in fixtures {
        let result = minimal_generators(&t);
        let passed = match (&result, expected) {
            (Ok(got), exp) => {
                let bound = 2 * t.conductor().iter().max().copied().unwrap_or(0) + 4;
                let round_trip = span(got, t.r(), bound).is_ok_and(|s| s == t);
                round_trip && exp.is_none_or(|e| same_up_to_symmetry(&t, got, &tuples(e)))
            }
            (Err(_), _) => false,
        };
        let shown: Value = match &result {
            Ok(g) => json!(g.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            Err(e) => json!(e.to_string()),
        };
        out.push(check(
            S,
            format!("minimal generators {name}"),
            passed,
            json!({"truncation": t.to_string(), "generators": shown}),
        ));
    }

    let mut ledger_problems = Vec::new();
    for n in 3..=12u32 {
        for k in 1..=7 {
            let l = ledger_for_case(k, n).expect("valid case");
            if !check_heuristic(&l, case_genus(k).expect("valid case")) {
                ledger_problems.push(json!({"case": k, "n": n, "net": l.net}));
            }
        }
        if !check_heuristic(&node_ledger(n), 1) {
            ledger_problems.push(json!({"case": "node", "n": n}));
        }
        for genera in [&[0u32, 0][..], &[1, 0], &[2, 0, 0], &[1, 1, 0, 0]] {
            if mt_gluing_net(genera, n) != mt_gluing_target(genera, n) {
                ledger_problems.push(json!({"gluing": genera, "n": n}));
            }
        }
    }
    out.push(check(S, "condition ledgers", ledger_problems.is_empty(), json!(ledger_problems)));

    let cert = simultaneous_vanishing_excluded();
    out.push(check(S, "no common zero of the 3x3 minors", cert.verified, json!(cert)));
    let a1 = Polynomial::parse("x*y*(x-y)*(x*y-2*x-2*y+3)").expect("literal");
    let a2 = Polynomial::parse("x^2*y^2*(x-y)*(2*x*y-3*x-3*y+4)").expect("literal");
    let m = designated_minors(10);
    out.push(check(
        S,
        "determinant identities",
        m.a1.det().eq_up_to_sign(&a1) && m.a2.det().eq_up_to_sign(&a2),
        json!({"det A1": m.a1.det().to_string(), "det A2": m.a2.det().to_string()}),
    ));
    let sweep = rank_sweep(samples, 10, seed);
    out.push(check(
        S,
        "rank at random points",
        sweep.three_cusp_rank5 == samples && sweep.two_two_full == samples,
        json!(sweep),
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for ms in [&[2usize, 2, 2, 2][..], &[2, 2, 1, 1, 1], &[2, 2, 2, 1]] {
        let mut nodes = BTreeSet::new();
        while nodes.len() < ms.len() {
            nodes.insert(rng.gen_range(-20i64..=20));
        }
        let nodes: Vec<_> = nodes.into_iter().map(rat).collect();
        let passed;
        let detail = match confluent_vandermonde_check(&nodes, ms) {
            Ok(r) => {
                passed = r.nonzero && r.matches_oracle && r.matches_closed_form;
                json!(r)
            }
            Err(e) => {
                passed = false;
                json!(e.to_string())
            }
        };
        out.push(check(S, format!("confluent vandermonde {ms:?}"), passed, detail));
    }
    out
}
