//! Verification suites runnable from the CLI and from tests. Every check
//! produces one pass/fail line; any failure makes the run exit nonzero.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::{BigUint, One, Zero};

use crate::bounds::{self, LedgerSpec};
use crate::census::{fold_census, CensusFilter, EdgeCatalog, GraphClass};
use crate::charging::{
    self, apply_transfers, route_to_x, seven_sum_hits, seven_sums_check, ChargeLedger, ChargeRule,
    TransferPolicy, TransferStep, XVingKey,
};
use crate::ratio;
use crate::vings;

use super::io::{CheckResult, SuiteReport};
use super::HarnessError;

fn check(name: &str, pass: bool, lhs: String, rhs: String, note: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        pass,
        lhs,
        rhs,
        note: note.to_string(),
    }
}

/// Counting identity: the x-ving sum of the census of S against the class
/// counts of the one-point deletions; exact equality for unfiltered classes,
/// `<=` under filters.
pub fn identity_suite(
    cat: &EdgeCatalog,
    class: GraphClass,
    filter: CensusFilter,
    budget: u64,
    workers: usize,
) -> Result<SuiteReport, HarnessError> {
    let report = charging::verify_identity(cat, class, filter, budget, workers)
        .map_err(HarnessError::from_charging)?;
    let per_q: Vec<String> = report.per_q.iter().map(|c| c.to_string()).collect();
    let relation = if report.expects_equality { "=" } else { "<=" };
    let name = format!("identity[{}]", class.name());
    let note = format!(
        "sum_G v_x(G) {relation} sum_q count(S\\q); per-q counts [{}]",
        per_q.join(", ")
    );
    Ok(SuiteReport {
        suite: "identity".into(),
        checks: vec![check(
            &name,
            report.holds,
            report.sum_vx.to_string(),
            report.sum_deleted_counts.to_string(),
            &note,
        )],
    })
}

/// Per-graph charge laws, routing conservation, and the per-entry closed
/// form on the unfiltered plane census.
pub fn charge_law_suite(
    cat: &EdgeCatalog,
    budget: u64,
    workers: usize,
) -> Result<SuiteReport, HarnessError> {
    let mut checks = Vec::new();
    let n = cat.n();

    // binomial summation vs closed form across offsets
    let mut closed_ok = true;
    for alpha in [7i64, 14, 73] {
        for d in 0..=60u32 {
            let (sum, closed) = charging::xving_aggregate_routes(d, alpha);
            closed_ok &= sum == closed;
        }
    }
    checks.push(check(
        "aggregate-closed-form",
        closed_ok,
        "sum C(d,i)(alpha-i)".into(),
        "2^(d-1)(2*alpha-d)".into(),
        "all d <= 60, alpha in {7, 14, 73}",
    ));

    // constant-offset per-graph law: total = 7N - 2m >= N + 12
    let rule7 = ChargeRule::constant(7, GraphClass::Plane);
    let law = fold_census(
        cat,
        GraphClass::Plane,
        CensusFilter::NONE,
        budget,
        workers,
        || (true, 0u64),
        |acc, edges| {
            let total = charging::per_graph_total(cat, edges, &rule7);
            let m = edges.len() as i64;
            let expect = ratio::int(7 * n as i64 - 2 * m);
            acc.0 &= total == expect && total >= ratio::int(n as i64 + 12);
            acc.1 += 1;
        },
        |a, b| (a.0 && b.0, a.1 + b.1),
    )
    .map_err(HarnessError::from_census)?;
    checks.push(check(
        "per-graph-total[7-i]",
        law.0,
        "7N - 2m".into(),
        ">= N + 12".into(),
        &format!("checked on {} graphs", law.1),
    ));

    // edge-linked law: total is exactly aN for every graph
    let a = (ratio::int(9) - ratio::int(4) * ratio::dec("1.968549")) / ratio::int(2);
    let rule_a = ChargeRule::edge_linked(a.clone(), GraphClass::Plane);
    let aN = a.clone() * ratio::int(n as i64);
    let law = fold_census(
        cat,
        GraphClass::Plane,
        CensusFilter::NONE,
        budget,
        workers,
        || true,
        |acc, edges| {
            *acc &= charging::per_graph_total(cat, edges, &rule_a) == aN;
        },
        |x, y| x && y,
    )
    .map_err(HarnessError::from_census)?;
    checks.push(check(
        "per-graph-total[edge-linked]",
        law,
        "sum of charges".into(),
        format!("aN = {}", ratio::render(&aN)),
        "independent of m",
    ));

    // routing: conservation plus the per-entry closed form
    let ledger = route_to_x(cat, CensusFilter::NONE, &rule7, budget, workers)
        .map_err(HarnessError::from_charging)?;
    let entry_total = ledger.total_of_entries();
    checks.push(check(
        "routing-conservation",
        entry_total == ledger.total,
        ratio::render(&entry_total),
        ratio::render(&ledger.total),
        "ledger total equals summed per-graph totals",
    ));
    let mut law_ok = true;
    let mut entries = 0u64;
    for (key, charge) in &ledger.entries {
        let d = cat.degree(key.0, key.1);
        if *charge != charging::xving_aggregate_charge(d, 7) {
            law_ok = false;
        }
        entries += 1;
    }
    checks.push(check(
        "routed-entry-closed-form",
        law_ok,
        "every routed entry".into(),
        "2^(d-1)(14-d)".into(),
        &format!("{entries} x-ving entries"),
    ));

    Ok(SuiteReport {
        suite: "charge-law".into(),
        checks,
    })
}

/// The seven-sums case analysis for both target pairs, reporting the classic
/// witness.
pub fn seven_sums_suite() -> SuiteReport {
    let mut checks = Vec::new();
    let r = seven_sums_check(30, 12);
    checks.push(check(
        "seven-sums{12,13}",
        r.max_hits == 4,
        format!("max hits {}", r.max_hits),
        "4".into(),
        &format!("first witness {:?}", r.first_witness),
    ));
    let w = seven_sum_hits(9, 1, 0, 12);
    checks.push(check(
        "seven-sums{12,13}-witness(9,1,0)",
        w == 4,
        format!("hits {w}"),
        "4".into(),
        "witness (9,1,0) attains the maximum",
    ));
    let r = seven_sums_check(30, 7);
    checks.push(check(
        "seven-sums{7,8}",
        r.max_hits == 4,
        format!("max hits {}", r.max_hits),
        "4".into(),
        &format!("first witness {:?}", r.first_witness),
    ));
    SuiteReport {
        suite: "seven-sums".into(),
        checks,
    }
}

fn close_to(v: &BigRational, quoted: &str, tol: &str) -> bool {
    let diff = v.clone() - ratio::dec(quoted);
    let tol = ratio::dec(tol);
    diff.clone().abs() <= tol
}

/// Transfer arithmetic and the mu pipelines, plus a desk-scale no-op replay
/// on the input census when one is provided.
pub fn ledger_suite(
    cat: Option<&EdgeCatalog>,
    budget: u64,
    workers: usize,
) -> Result<SuiteReport, HarnessError> {
    let mut checks = Vec::new();

    let t = bounds::solve_transfer(&ratio::int(128), &ratio::int(24), 4);
    checks.push(check(
        "solve-transfer-20.8",
        t.amount == ratio::dec("20.8") && t.level == ratio::dec("107.2"),
        format!("t = {}, level = {}", ratio::render(&t.amount), ratio::render(&t.level)),
        "t = 20.8, level = 107.2".into(),
        "",
    ));
    let t = bounds::solve_transfer(&ratio::int(4096), &ratio::int(44), 4);
    checks.push(check(
        "solve-transfer-810.4",
        t.amount == ratio::dec("810.4") && t.level == ratio::dec("3285.6"),
        format!("t = {}, level = {}", ratio::render(&t.amount), ratio::render(&t.level)),
        "t = 810.4, level = 3285.6".into(),
        "",
    ));

    let mu = bounds::mu_ledger(&LedgerSpec::unrestricted()).expect("consistent spec");
    checks.push(check(
        "mu-unrestricted",
        close_to(&mu.mu, "105.561", "0.002"),
        ratio::render(&mu.mu),
        "105.561 +/- 0.002".into(),
        "",
    ));
    let mu = bounds::mu_ledger(&LedgerSpec::min_degree_one()).expect("consistent spec");
    checks.push(check(
        "mu-min-degree-1",
        close_to(&mu.mu, "101.061", "0.002"),
        ratio::render(&mu.mu),
        "101.061 +/- 0.002".into(),
        "",
    ));
    let mu = bounds::mu_ledger(&LedgerSpec::min_degree_two()).expect("consistent spec");
    checks.push(check(
        "mu-min-degree-2",
        close_to(&mu.mu, "82.16", "0.002"),
        ratio::render(&mu.mu),
        "82.16 +/- 0.002".into(),
        "",
    ));
    let rounded_cap = ratio::dec("3285.6") - ratio::dec("78.18");
    let exact_cap = bounds::solve_transfer(&ratio::dec("3285.6"), &ratio::int(80), 40).level;
    checks.push(check(
        "direct-final-cap",
        close_to(&rounded_cap, "3207.42", "0.01"),
        ratio::render(&rounded_cap),
        "3207.42 +/- 0.01".into(),
        &format!("exact optimum {} ~ 3207.4146", ratio::render(&exact_cap)),
    ));

    // synthetic single-source arithmetic
    let src: XVingKey = (crate::census::SegSet::EMPTY.with(0), 0);
    let dst: XVingKey = (crate::census::SegSet::EMPTY.with(1), 1);
    let mut entries = BTreeMap::new();
    entries.insert(src, ratio::int(4096));
    entries.insert(dst, ratio::int(44));
    let synthetic = ChargeLedger {
        rule: ChargeRule::constant(7, GraphClass::Plane),
        total: ratio::int(4140),
        graphs: BigUint::one(),
        entries,
    };
    let mut map = BTreeMap::new();
    map.insert(src, dst);
    let dummy_cat = EdgeCatalog::from_points(vec![
        crate::geom::Point::new(0, 0),
        crate::geom::Point::new(10, 1),
        crate::geom::Point::new(4, 9),
    ])
    .expect("fixture");
    let steps = [TransferStep {
        amount: ratio::dec("810.4"),
        from_degrees: vec![dummy_cat.degree(src.0, src.1)],
        to_degree: 3,
        fan_in_bound: 4,
    }];
    let rep = apply_transfers(&dummy_cat, &synthetic, &steps, &TransferPolicy::Explicit(&map))
        .map_err(HarnessError::from_charging)?;
    let got_src = rep.ledger.entries[&src].clone();
    let got_dst = rep.ledger.entries[&dst].clone();
    checks.push(check(
        "synthetic-transfer",
        got_src == ratio::dec("3285.6")
            && got_dst == ratio::dec("854.4")
            && rep.ledger.total_of_entries() == ratio::int(4140),
        format!("{} / {}", ratio::render(&got_src), ratio::render(&got_dst)),
        "3285.6 / 854.4".into(),
        "4096 - 810.4 and 44 + 810.4; conservation exact",
    ));

    // real census: the from-classes are empty at desk scale, so the replay
    // must change nothing
    if let Some(cat) = cat {
        let rule = ChargeRule::constant(7, GraphClass::Plane);
        let ledger = route_to_x(cat, CensusFilter::NONE, &rule, budget, workers)
            .map_err(HarnessError::from_charging)?;
        let steps = [
            TransferStep {
                amount: ratio::dec("810.4"),
                from_degrees: vec![12, 13],
                to_degree: 3,
                fan_in_bound: 4,
            },
            TransferStep {
                amount: ratio::dec("78.18"),
                from_degrees: vec![12, 13],
                to_degree: 4,
                fan_in_bound: 40,
            },
        ];
        let rep = apply_transfers(cat, &ledger, &steps, &TransferPolicy::Canonical(cat))
            .map_err(HarnessError::from_charging)?;
        let unchanged = rep.moved_sources == 0
            && rep.max_before == rep.max_after
            && rep.ledger.total_of_entries() == ledger.total;
        checks.push(check(
            "census-transfer-noop",
            unchanged,
            format!("{} sources moved", rep.moved_sources),
            "0".into(),
            "no x12/x13-vings exist at desk scale",
        ));
    }

    Ok(SuiteReport {
        suite: "ledger".into(),
        checks,
    })
}

/// Expected-degree lower bounds and the 0-ving/x-ving bijection on the
/// unfiltered plane census, compared exactly in cross-multiplied integers.
pub fn lower_bounds_suite(
    cat: &EdgeCatalog,
    budget: u64,
    workers: usize,
) -> Result<SuiteReport, HarnessError> {
    let n = cat.n();
    let acc = fold_census(
        cat,
        GraphClass::Plane,
        CensusFilter::NONE,
        budget,
        workers,
        || (vec![0u64; n.max(1)], 0u64, 0u64),
        |acc, edges| {
            let h = vings::histogram(cat, edges, GraphClass::Plane);
            for (i, c) in h.v.iter().enumerate() {
                acc.0[i] += c;
            }
            acc.1 += h.v_x;
            acc.2 += 1;
        },
        |mut a, b| {
            for (x, y) in a.0.iter_mut().zip(b.0) {
                *x += y;
            }
            a.1 += b.1;
            a.2 += b.2;
            a
        },
    )
    .map_err(HarnessError::from_census)?;
    let (sum_v, sum_vx, count) = acc;
    let count_b = BigUint::from(count);
    let nb = BigUint::from(n);

    let mut checks = Vec::new();
    checks.push(check(
        "bijection-v0-eq-vx",
        sum_v[0] == sum_vx,
        sum_v[0].to_string(),
        sum_vx.to_string(),
        "strip/complete bijection between 0-vings and x-vings",
    ));

    // v_hat_i >= coeff * N  <=>  den * sum_v_i >= num * N * count
    let mut bound = |name: &str, sum: BigUint, num: u64, den: u64| {
        let lhs = BigUint::from(den) * &sum;
        let rhs = BigUint::from(num) * &nb * &count_b;
        let v_hat = BigRational::new(sum.clone().into(), count_b.clone().into());
        checks.push(check(
            name,
            lhs >= rhs,
            format!("{} (= {})", ratio::render(&v_hat), ratio::to_f64(&v_hat)),
            format!("{num}N/{den} = {}", num as f64 * n as f64 / den as f64),
            "exact rational comparison",
        ));
    };
    bound("v-hat-0 >= N/4096", BigUint::from(sum_v[0]), 1, 4096);
    bound("v-hat-x >= N/4096", BigUint::from(sum_vx), 1, 4096);
    bound(
        "v-hat-1 >= 3N/1024",
        BigUint::from(*sum_v.get(1).unwrap_or(&0)),
        3,
        1024,
    );
    bound(
        "v-hat-2 >= 33N/2048",
        BigUint::from(*sum_v.get(2).unwrap_or(&0)),
        33,
        2048,
    );
    let v23 = sum_v.get(2).unwrap_or(&0) + sum_v.get(3).unwrap_or(&0);
    bound("v-hat-2+3 >= N/24", BigUint::from(v23), 1, 24);

    Ok(SuiteReport {
        suite: "lower-bounds".into(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Point;

    fn convex6() -> EdgeCatalog {
        EdgeCatalog::from_points(vec![
            Point::new(0, 0),
            Point::new(8, -2),
            Point::new(15, 3),
            Point::new(14, 11),
            Point::new(5, 14),
            Point::new(-3, 7),
        ])
        .unwrap()
    }

    #[test]
    fn suites_pass_on_convex_six() {
        let cat = convex6();
        let budget = crate::census::DEFAULT_BUDGET;
        assert!(identity_suite(&cat, GraphClass::Plane, CensusFilter::NONE, budget, 1)
            .unwrap()
            .all_pass());
        assert!(charge_law_suite(&cat, budget, 1).unwrap().all_pass());
        assert!(seven_sums_suite().all_pass());
        assert!(ledger_suite(Some(&cat), budget, 1).unwrap().all_pass());
        assert!(lower_bounds_suite(&cat, budget, 1).unwrap().all_pass());
    }

    #[test]
    fn identity_suite_detects_injected_fault() {
        // flip one crossing bit: the census of S changes while the deleted
        // subsets are rebuilt clean, so the identity must break
        let mut cat = convex6();
        let budget = crate::census::DEFAULT_BUDGET;
        // pick a crossing pair to flip
        let (i, j) = (0..cat.seg_count())
            .flat_map(|i| {
                cat.crossing_row(i)
                    .iter()
                    .map(move |j| (i, j))
                    .collect::<Vec<_>>()
            })
            .next()
            .expect("some crossing pair");
        cat.toggle_crossing(i, j);
        let rep = identity_suite(&cat, GraphClass::Plane, CensusFilter::NONE, budget, 1).unwrap();
        assert!(!rep.all_pass(), "fault must be detected");
    }
}
