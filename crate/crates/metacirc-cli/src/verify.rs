//! One-shot fixture verification. Every check prints a PASS or FAIL line
//! with a stable anchor; flagged reference cells print a NOTE with the
//! computed value instead of failing. Exit is nonzero iff any check failed.

use std::collections::BTreeMap;
use std::time::Instant;

use metacirc::{
    build_graph, classify_type, code_from_graph, derive_q78_family, graph_invariants,
    is_symplectic_self_dual, low_support_min_weight, symplectic_form, trace_hermitian,
    valence, AutMode, AutOutcome, BitGraph, Diameter, Girth, SearchMode, SearchTask, TypeClass,
    WeightDistribution, GF4,
};

use metacirc_cli::fixtures::{self, GraphReference, WdReference};

use crate::{budget, mismatch, usage, CliFailure};

/// Node budget for the automorphism backtracking on the small graphs.
const AUT_NODES: u64 = 200_000_000;
/// Automorphism counting stays exact only up to this many vertices.
const AUT_VERTEX_CAP: usize = 27;

struct Report {
    checks: u32,
    failed: u32,
}

impl Report {
    fn new() -> Report {
        Report { checks: 0, failed: 0 }
    }

    fn check(&mut self, anchor: &str, ok: bool, detail: String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
        }
        println!("{} {anchor} {detail}", if ok { "PASS" } else { "FAIL" });
    }

    fn note(&mut self, anchor: &str, detail: String) {
        println!("NOTE {anchor} {detail}");
    }
}

pub fn cmd_verify(scope: String) -> Result<(), CliFailure> {
    let full = match scope.as_str() {
        "quick" => false,
        "full" => true,
        other => return Err(usage(format!("unknown scope '{other}' (use quick or full)"))),
    };
    let budget = budget()?;
    let started = Instant::now();
    let mut report = Report::new();

    check_forms(&mut report);
    check_petersen(&mut report);
    for gr in &fixtures::GRAPHS {
        check_graph(&mut report, gr, full, &budget)?;
    }
    check_q78(&mut report);
    check_tiny_search(&mut report, &budget)?;
    if full {
        check_l27_search(&mut report, &budget)?;
    }

    println!(
        "{} checks, {} failed ({:.1}s)",
        report.checks,
        report.failed,
        started.elapsed().as_secs_f64()
    );
    if report.failed > 0 {
        Err(mismatch(format!("{} verification check(s) failed", report.failed)))
    } else {
        Ok(())
    }
}

/// The two inner-product implementations must agree on every symbol pair.
fn check_forms(report: &mut Report) {
    let disagree = GF4::ALL
        .iter()
        .flat_map(|&x| GF4::ALL.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| {
            let lhs = symplectic_form(&one_symbol(x), &one_symbol(y)).unwrap();
            let rhs = trace_hermitian(&one_symbol(x), &one_symbol(y)).unwrap();
            lhs != rhs
        })
        .count();
    report.check(
        "check:form-agreement",
        disagree == 0,
        format!("{disagree} of 16 single-symbol pairs disagree"),
    );
}

fn one_symbol(x: GF4) -> metacirc::F4Vector {
    let mut v = metacirc::F4Vector::zeros(1);
    v.set(0, x);
    v
}

fn check_petersen(report: &mut Report) {
    let spec = fixtures::preset("petersen").expect("bundled preset");
    let graph = build_graph(&spec).expect("petersen builds");
    let got = graph.edges();
    let want: Vec<(usize, usize)> = fixtures::PETERSEN_EDGES.to_vec();
    report.check(
        "reference:petersen-edges",
        got == want,
        format!("{} edges built, expected the bundled 15", got.len()),
    );
}

fn check_graph(
    report: &mut Report,
    gr: &GraphReference,
    full: bool,
    budget: &metacirc::SweepBudget,
) -> Result<(), CliFailure> {
    let name = gr.name;
    let spec = fixtures::preset(name).expect("every reference row has a preset");
    let graph = build_graph(&spec).map_err(CliFailure::from)?;

    if let Some(text) = gr.edge_fixture {
        let anchor = format!("fixture:{name}-edges");
        match edge_set_diff(&graph, text) {
            Ok(None) => report.check(&anchor, true, format!("{} edges match", graph.edge_count())),
            Ok(Some(diff)) => report.check(&anchor, false, diff),
            Err(e) => report.check(&anchor, false, format!("fixture unreadable: {e}")),
        }
    }

    let v = valence(&spec).map_err(CliFailure::from)?;
    let measured = graph.is_regular();
    report.check(
        &format!("reference:{name}-valence"),
        v == gr.valence && measured == Some(gr.valence),
        format!("formula {v}, measured {measured:?}, expected {}", gr.valence),
    );

    let code = code_from_graph(&graph).map_err(CliFailure::from)?;
    report.check(
        &format!("check:{name}-self-dual"),
        is_symplectic_self_dual(&code),
        format!("length {}", code.len()),
    );

    let t = classify_type(&spec, &code).map_err(CliFailure::from)?;
    let want = if gr.type_two { TypeClass::TypeII } else { TypeClass::TypeI };
    report.check(
        &format!("reference:{name}-type"),
        t.class == want,
        format!("classified {} (delta_s {}), expected {want}", t.class, t.delta_s),
    );

    let aut_feasible = graph.vertex_count() <= AUT_VERTEX_CAP;
    let inv = graph_invariants(
        &graph,
        Some((spec.m(), spec.n())),
        if aut_feasible { AutMode::Budgeted(AUT_NODES) } else { AutMode::Skip },
    );
    report.check(
        &format!("reference:{name}-diameter"),
        inv.diameter == Diameter::Finite(2),
        format!("{:?}, expected Finite(2)", inv.diameter),
    );
    report.check(
        &format!("reference:{name}-girth"),
        inv.girth == Girth::Finite(3),
        format!("{:?}, expected Finite(3)", inv.girth),
    );
    report.check(
        &format!("reference:{name}-clique"),
        inv.clique_number == gr.clique,
        format!("{}, expected {}", inv.clique_number, gr.clique),
    );
    if aut_feasible {
        let anchor = format!("reference:{name}-aut");
        match inv.automorphism_order {
            Some(AutOutcome::Exact(order)) => report.check(
                &anchor,
                order == gr.aut_order as u128,
                format!("{order}, expected {}", gr.aut_order),
            ),
            Some(AutOutcome::BudgetExhausted { nodes }) => {
                report.note(&anchor, format!("search budget exhausted after {nodes} nodes"));
            }
            None => unreachable!("aut mode was budgeted"),
        }
    }

    // Full sweeps only where the reference carries a distribution; the
    // 2^36 pair waits for full scope. Beyond that, the claimed distance
    // gets the affordable consistency check: no light codeword on up to
    // three generator rows.
    let sweep_now = gr.wd.is_some() && (code.len() < 30 || full);
    if sweep_now {
        let wd = metacirc::weight_distribution(&code, budget).map_err(CliFailure::from)?;
        compare_wd(report, &format!("reference:{name}-wd"), &wd, gr.wd.expect("checked"));
        let d = wd.min_positive_weight();
        report.check(
            &format!("reference:{name}-distance"),
            d == Some(gr.claimed_d),
            format!("{d:?}, expected Some({})", gr.claimed_d),
        );
    } else {
        let w = low_support_min_weight(&code, 3);
        report.check(
            &format!("check:{name}-low-support"),
            w >= gr.claimed_d,
            format!("lightest 3-row codeword has weight {w}, claimed distance {}", gr.claimed_d),
        );
    }
    Ok(())
}

/// Compares built edges against a fixture file, reporting the first
/// offending pairs on each side if the sets differ.
fn edge_set_diff(graph: &BitGraph, fixture_text: &str) -> Result<Option<String>, metacirc::Error> {
    let fixture_edges = BitGraph::parse_edge_list(fixture_text)?;
    let built = graph.edges();
    let fixture: std::collections::BTreeSet<(usize, usize)> = fixture_edges.into_iter().collect();
    let built_set: std::collections::BTreeSet<(usize, usize)> = built.into_iter().collect();
    if fixture == built_set {
        return Ok(None);
    }
    let missing: Vec<_> = fixture.difference(&built_set).take(3).collect();
    let extra: Vec<_> = built_set.difference(&fixture).take(3).collect();
    Ok(Some(format!(
        "edge sets differ: fixture-only {missing:?}, built-only {extra:?} (showing up to 3 each)"
    )))
}

fn compare_wd(report: &mut Report, anchor: &str, computed: &WeightDistribution, reference: &WdReference) {
    let got: BTreeMap<u32, u64> = computed.to_pairs().into_iter().collect();
    let want: BTreeMap<u32, u64> = reference.pairs.iter().copied().collect();
    let mut wrong = Vec::new();
    for (&w, &count) in &want {
        if reference.anomalous_weights.contains(&w) {
            report.note(
                anchor,
                format!(
                    "documented discrepancy: source cell at weight {w} is garbled; computed \
                     count is {}",
                    got.get(&w).copied().unwrap_or(0)
                ),
            );
            continue;
        }
        if got.get(&w).copied().unwrap_or(0) != count {
            wrong.push(w);
        }
    }
    for &w in got.keys() {
        if !want.contains_key(&w) {
            wrong.push(w);
        }
    }
    report.check(
        anchor,
        wrong.is_empty(),
        if wrong.is_empty() {
            format!("{} cells match", want.len() - reference.anomalous_weights.len())
        } else {
            format!("mismatched weights {wrong:?}")
        },
    );
}

fn check_q78(report: &mut Report) {
    let family = derive_q78_family();
    let got: Vec<(u32, u32, u32)> = family.iter().map(|p| p.triple()).collect();
    report.check(
        "reference:q78-family",
        got == fixtures::Q78_TRIPLES,
        format!("{} derived rows, expected the bundled 9", got.len()),
    );
}

/// A search small enough for every run: scanning (2, 6) with alpha = 5 at
/// distance target 6 must rediscover the g12 spec with d exactly 6.
fn check_tiny_search(report: &mut Report, budget: &metacirc::SweepBudget) -> Result<(), CliFailure> {
    let task = SearchTask {
        m: 2,
        n: 6,
        alphas: Some(vec![5]),
        d_target: 6,
        mode: SearchMode::Exhaustive,
        type_filter: None,
        valence_min: None,
        valence_max: None,
    };
    let hits = metacirc::exhaustive_search(&task, budget).map_err(CliFailure::from)?;
    let g12 = fixtures::preset("g12").expect("bundled preset");
    let found = hits.iter().any(|h| h.spec.to_json() == g12.to_json());
    let all_exact = hits.iter().all(|h| h.exact && h.distance >= 6);
    report.check(
        "search:g12-rediscovered",
        found && all_exact && !hits.is_empty(),
        format!("{} hits, bundled spec present: {found}", hits.len()),
    );
    Ok(())
}

/// Full scan of (3, 9) over all units with distance target 9. The hit list
/// must split into exactly two distribution classes of 108 specs, and those
/// distributions must be the two bundled length-27 references.
fn check_l27_search(report: &mut Report, budget: &metacirc::SweepBudget) -> Result<(), CliFailure> {
    let task = SearchTask {
        m: 3,
        n: 9,
        alphas: None,
        d_target: 9,
        mode: SearchMode::Exhaustive,
        type_filter: None,
        valence_min: None,
        valence_max: None,
    };
    let hits = metacirc::exhaustive_search(&task, budget).map_err(CliFailure::from)?;
    report.check(
        "search:l27-hit-count",
        hits.len() == 216,
        format!("{} hits, expected 216", hits.len()),
    );
    let classes = metacirc::class_by_enumerator(&hits).map_err(CliFailure::from)?;
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.members.len()).collect();
    sizes.sort_unstable();
    report.check(
        "search:l27-classes",
        sizes == [108, 108],
        format!("class sizes {sizes:?}, expected [108, 108]"),
    );
    let mut matched = [false; 2];
    for class in &classes {
        let rep = &hits[class.members[0]];
        let Some(wd) = &rep.weight_distribution else { continue };
        let pairs: Vec<(u32, u64)> = wd.to_pairs();
        for (slot, reference) in [&fixtures::WD_G27_1, &fixtures::WD_G27_2].iter().enumerate() {
            if pairs == reference.pairs {
                matched[slot] = true;
            }
        }
    }
    report.check(
        "search:l27-class-distributions",
        matched == [true, true],
        format!("bundled distributions found: {matched:?}"),
    );
    Ok(())
}
